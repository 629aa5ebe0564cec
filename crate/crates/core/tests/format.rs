mod common;

use std::path::Path;

use maxcut_core::format::{format_weight, parse_instance, serialize_instance, ParseErrorKind};
use maxcut_core::graph::{parse_decimal, rescale, Value};
use maxcut_core::oracle::brute_force_maxcut;
use maxcut_core::solver::solve;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn decimal(rng: &mut ChaCha8Rng) -> String {
    let digits = rng.gen_range(0..=3);
    let mantissa: i64 = rng.gen_range(-2000..=2000);
    if digits == 0 {
        return mantissa.to_string();
    }
    let sign = if mantissa < 0 { "-" } else { "" };
    let abs = mantissa.unsigned_abs().to_string();
    let padded = format!("{abs:0>width$}", width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    format!("{sign}{int}.{frac}")
}

fn drawing_text(rng: &mut ChaCha8Rng, n: usize, k: usize) -> (String, common::Drawing) {
    let d = common::random_drawing(rng, n, 0.6, k);
    let mut text = format!("# random\nnodes {n}\n");
    // shuffled, sparse file ids
    let mut ids: Vec<usize> = (0..d.edges.len()).map(|i| 3 * i + 1).collect();
    ids.reverse();
    for (i, &(a, b)) in d.edges.iter().enumerate() {
        text.push_str(&format!("edge {} {a} {b} {}\n", ids[i], decimal(rng)));
    }
    for (c, &(e, f)) in d.crossings.iter().enumerate() {
        text.push_str(&format!("crossing {} {} {}\n", 10 * c, ids[e], ids[f]));
    }
    for (e, order) in d.orders() {
        let list: Vec<String> = order.iter().map(|c| (10 * c.0).to_string()).collect();
        text.push_str(&format!("order {} {}\n", ids[e], list.join(" ")));
    }
    (text, d)
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_a_fixed_point(seed in any::<u64>(), n in 1usize..12, k in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (text, d) = drawing_text(&mut rng, n, k);
        let first = parse_instance(&text).unwrap();
        prop_assert_eq!(first.graph.edge_count(), d.edges.len());
        prop_assert_eq!(first.config.len(), d.crossings.len());
        let again = serialize_instance(&first);
        let second = parse_instance(&again).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(serialize_instance(&second), again);
    }

    #[test]
    fn decimal_weights_are_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (text, _) = drawing_text(&mut rng, 7, 2);
        let inst = parse_instance(&text).unwrap();
        let r = solve(&inst.graph, &inst.config).unwrap();
        let expected = brute_force_maxcut(&inst.graph).unwrap().value;
        prop_assert_eq!(r.value, Value::Finite(expected));
        let shown = format_weight(expected, inst.graph.scale());
        let (mantissa, digits) = parse_decimal(&shown).unwrap();
        prop_assert_eq!(rescale(mantissa, digits, inst.graph.scale()).unwrap(), expected);
    }
}

#[test]
fn fixtures_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let inst = parse_instance(&text).unwrap();
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
        seen += 1;
    }
    assert!(seen >= 8);
}

#[test]
fn error_kinds_and_lines() {
    let cases = [
        ("nodes 2\nedge 0 0 1\n", 2, ParseErrorKind::Syntax),
        ("nodes 2\nnodes 3\n", 2, ParseErrorKind::Duplicate),
        ("nodes 2\nedge 0 0 5 1\n", 2, ParseErrorKind::Dangling),
        ("nodes 3\nedge 0 0 1 1\nedge 1 1 2 1\n\ncrossing 0 0 9\n", 5, ParseErrorKind::Dangling),
        ("nodes 2\nedge 0 0 1 1\nedge 0 0 1 2\n", 3, ParseErrorKind::Duplicate),
        ("frobnicate\n", 1, ParseErrorKind::Syntax),
    ];
    for (text, line, kind) in cases {
        let e = parse_instance(text).unwrap_err();
        assert_eq!((e.line, e.kind), (Some(line), kind), "{text:?}: {e}");
        assert!(e.to_string().starts_with(&format!("line {line}:")));
    }
}
