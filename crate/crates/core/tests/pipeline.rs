use std::process::Command;

use frobenius::homology::{local_betti_with, reduced_betti, FieldSpec, HomologyOptions};
use frobenius::poincare::{default_box, series_computed, BettiMode};
use frobenius::transition::verify_closure;
use frobenius::{order_complex, ClosureOp, Element, IntervalPoset, MonoidSpec};

fn nonzero(spec: MonoidSpec, bound: &[u64]) -> Vec<Element> {
    spec.normal_forms_in_box(bound)
        .unwrap()
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect()
}

const FULL: HomologyOptions = HomologyOptions {
    field: FieldSpec::Gf2,
    core: false,
};

#[test]
fn core_and_full_interval_agree() {
    let cases = [
        (MonoidSpec::two(2, 2).unwrap(), vec![1, 9]),
        (MonoidSpec::two(3, 5).unwrap(), vec![2, 7]),
        (MonoidSpec::three(1, 1, 2).unwrap(), vec![1, 1, 6]),
        (MonoidSpec::three(1, 2, 2).unwrap(), vec![3, 3, 5]),
        (MonoidSpec::three(2, 2, 2).unwrap(), vec![2, 2, 3]),
        (MonoidSpec::three(2, 3, 4).unwrap(), vec![3, 4, 5]),
        (MonoidSpec::three(2, 3, 1).unwrap(), vec![2, 2, 1]),
        (MonoidSpec::numerical(3, 5).unwrap(), vec![30]),
    ];
    for (spec, bound) in cases {
        for lam in nonzero(spec, &bound) {
            let full = local_betti_with(&lam, &FULL, None).unwrap();
            let core = local_betti_with(&lam, &HomologyOptions::default(), None).unwrap();
            assert_eq!(core, full, "{spec} {lam}");
        }
    }
}

#[test]
fn truncated_series_matches_full_homology() {
    let spec = MonoidSpec::three(1, 2, 2).unwrap();
    let bound = default_box(spec, 4);
    let series = series_computed(spec, 4, &bound, BettiMode::Homology(FieldSpec::Gf2)).unwrap();
    for lam in spec.normal_forms_in_box(&bound).unwrap() {
        let full = local_betti_with(&lam, &FULL, None).unwrap().truncated(4);
        for i in 0..=4 {
            assert_eq!(series.coeff(i, &lam), full.get(i), "{lam} at i = {i}");
        }
    }
}

#[test]
fn euler_characteristic_matches_betti_numbers() {
    for spec in [
        MonoidSpec::three(2, 3, 2).unwrap(),
        MonoidSpec::two(3, 4).unwrap(),
    ] {
        let bound = vec![3; spec.arity()];
        for lam in nonzero(spec, &bound) {
            let c = order_complex(&IntervalPoset::open(&lam).unwrap());
            for field in [FieldSpec::Gf2, FieldSpec::Prime(5), FieldSpec::Rational] {
                assert_eq!(
                    reduced_betti(&c, field).euler(),
                    c.reduced_euler(),
                    "{spec} {lam}"
                );
            }
        }
    }
}

/// Retracting onto the fixed points of a downward closure operator does not
/// change homology, and intervals below non-fixed points are acyclic.
#[test]
fn fixed_point_retraction_at_homology_level() {
    let ops = [
        ClosureOp::F112,
        ClosureOp::G122,
        ClosureOp::H222,
        ClosureOp::FreeClamp { dim: 2 },
        ClosureOp::ComposedT {
            source: MonoidSpec::two(3, 5).unwrap(),
            via: MonoidSpec::two(2, 2).unwrap(),
        },
        ClosureOp::ComposedT {
            source: MonoidSpec::three(2, 3, 4).unwrap(),
            via: MonoidSpec::three(2, 2, 2).unwrap(),
        },
        ClosureOp::ComposedT {
            source: MonoidSpec::three(1, 3, 2).unwrap(),
            via: MonoidSpec::three(1, 2, 2).unwrap(),
        },
    ];
    for op in ops {
        assert!(verify_closure(op, 8).unwrap().passed(), "{op}");
        let spec = op.domain();
        for lam in nonzero(spec, &vec![3; spec.arity()]) {
            let interval = IntervalPoset::open(&lam).unwrap();
            let whole = reduced_betti(&order_complex(&interval), FieldSpec::Gf2);
            if op.is_fixed(&lam).unwrap() {
                let fixed = interval.restrict_to(|x| op.is_fixed(x).unwrap());
                let retract = reduced_betti(&order_complex(&fixed), FieldSpec::Gf2);
                assert_eq!(whole, retract, "{op} at {lam}");
            } else {
                assert!(whole.is_acyclic(), "{op} at {lam}: {whole:?}");
            }
        }
    }
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_frobenius"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn cli_betti_and_predict_agree() {
    for (monoid, lambda) in [
        ("three:1,1,2", "0,0,4"),
        ("two:2,2", "1,3"),
        ("three:2,3,4", "0,2,0"),
    ] {
        let (code, betti, _) = cli(&["betti", "--monoid", monoid, "--lambda", lambda]);
        assert_eq!(code, 0);
        let (code, predict, _) = cli(&["predict", "--monoid", monoid, "--lambda", lambda]);
        assert_eq!(code, 0);
        let betti: serde_json::Value = serde_json::from_str(&betti).unwrap();
        let predict: serde_json::Value = serde_json::from_str(&predict).unwrap();
        assert_eq!(betti, predict["betti"], "{monoid} {lambda}");
    }
    let (_, out, _) = cli(&["betti", "--monoid", "three:1,1,2", "--lambda", "0,0,4"]);
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&out).unwrap(),
        serde_json::json!({"4": 2})
    );
}

#[test]
fn cli_exit_codes() {
    let (code, _, err) = cli(&["betti", "--monoid", "three:1,1", "--lambda", "0,0,4"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1, "{err}");
    let (code, _, _) = cli(&["interval", "--monoid", "two:2,2", "--lambda", "0,0"]);
    assert_eq!(code, 2);
    let (code, _, _) = cli(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(code, 2);
    let (code, out, _) = cli(&["--format", "text", "verify", "--suite", "wedge"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("[PASS] 3. wedge"), "{out}");
}

#[test]
fn cli_recognize_interval_and_complex() {
    let (code, out, _) = cli(&["recognize", "2,1", "1,2", "1,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["p"].as_u64(), v["q"].as_u64(), v["r"].as_u64()),
        (Some(1), Some(1), Some(3))
    );

    let (_, out, _) = cli(&["interval", "--monoid", "two:2,2", "--lambda", "1,2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    assert_eq!(v["lt"].as_array().unwrap().len(), 4);

    let (_, out, _) = cli(&[
        "--format", "text", "complex", "--monoid", "two:2,2", "--lambda", "1,2",
    ]);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn cli_poincare_writes_output_file() {
    let path = std::env::temp_dir().join(format!("frobenius-series-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = cli(&[
        "poincare",
        "--monoid",
        "three:1,1,2",
        "--i-max",
        "4",
        "--output",
        p,
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["diff"], serde_json::json!([]));
    assert_eq!(v["computed"], v["closed_form"]);
    assert_eq!(v["computed"]["i_max"], 4);
    assert_eq!(
        v["computed"]["terms"][0],
        serde_json::json!({"i": 0, "lambda": [0, 0, 0], "coeff": 1})
    );
}
