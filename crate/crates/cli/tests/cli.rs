use std::process::{Command, Output};

use deprit_cli::report::{blocks_to_series, Report, BENCH_HEADER};
use deprit_core::algebra::{parse_series, VarFrame};
use deprit_core::ExtScalar;

fn deprit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deprit")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = deprit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Report {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn pendulum_action_table() {
    let text = stdout(&["run", "--model", "pendulum", "--order", "6"]);
    for line in [
        "eps^1 k=2: -1/64",
        "eps^2 k=3: -1/2048",
        "eps^3 k=4: -5/131072",
        "eps^4 k=5: -33/8388608",
        "eps^5 k=6: -63/134217728",
    ] {
        assert!(text.contains(line), "missing '{line}' in\n{text}");
    }
}

#[test]
fn output_is_deterministic() {
    for format in ["text", "json", "csv"] {
        let args = [
            "run", "--model", "hh", "--order", "3", "--method", "all", "--outputs", "generator,normalized,hori,gustavson",
            "--format", format,
        ];
        assert_eq!(stdout(&args), stdout(&args), "{format}");
    }
}

#[test]
fn toda_hori_leading_block() {
    let r = json(&["run", "--model", "toda2d", "--order", "4", "--outputs", "hori", "--format", "json"]);
    assert_eq!(r.hori_power, 2);
    let pq = VarFrame::pq(2);
    let ih = blocks_to_series(r.runs[0].hori.as_ref().unwrap(), pq).unwrap();
    let expect = parse_series(
        "1/12 * q2^4 + 1/6 * p2^2*q2^2 + 1/12 * p2^4 + 1/6 * q1^2*q2^2 + 1/2 * q1^2*p2^2 + 1/12 * q1^4 \
         + -2/3 * p1*q1*p2*q2 + 1/2 * p1^2*q2^2 + 1/6 * p1^2*p2^2 + 1/6 * p1^2*q1^2 + 1/12 * p1^4",
        pq,
    )
    .unwrap();
    assert_eq!(ih.coeff_of_eps(0), expect);
}

#[test]
fn json_coefficients_round_trip() {
    let r = json(&[
        "run", "--model", "toda2d", "--order", "3", "--method", "all", "--outputs", "generator,normalized,hori,gustavson",
        "--frame", "birkhoff", "--format", "json",
    ]);
    assert_eq!(r.runs.len(), 3);
    let mut seen = 0;
    for run in &r.runs {
        let mut all = vec![run.generator.as_ref().unwrap(), run.normalized.as_ref().unwrap(), run.hori.as_ref().unwrap()];
        all.extend(run.gustavson.as_ref().unwrap());
        for blocks in all {
            for b in blocks {
                for t in &b.terms {
                    let c: ExtScalar = t.coeff.parse().unwrap();
                    assert_eq!(c.to_string(), t.coeff);
                    seen += 1;
                }
            }
            blocks_to_series(blocks, VarFrame::birkhoff(2)).unwrap();
        }
    }
    assert!(seen > 50);
    let back = serde_json::to_string_pretty(&r).unwrap();
    assert_eq!(serde_json::from_str::<Report>(&back).unwrap(), r);
}

#[test]
fn bench_csv_shape() {
    let text = stdout(&["run", "--model", "hh", "--order", "5", "--method", "all", "--bench", "--bench-min-order", "2"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(BENCH_HEADER));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3 * 4);
    for (i, m) in ["explicit", "deprit", "henrard"].iter().enumerate() {
        for (j, order) in (2..=5).enumerate() {
            let row = &rows[4 * i + j];
            assert_eq!(row.len(), 5);
            assert_eq!((row[0], row[1]), ("henon-heiles", *m));
            assert_eq!(row[2].parse::<u32>().unwrap(), order);
            assert!(row[3].parse::<f64>().unwrap() >= 0.0);
            assert!(row[4].parse::<usize>().unwrap() > 0);
        }
    }
}

#[test]
fn model_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hh.model");
    std::fs::write(&path, "# cubic\nname: henon-heiles\ndim: 2\nomega: 1 1\nH1: 1 * q1^2*q2 + -1/3 * q2^3\n").unwrap();
    let file = stdout(&["run", "--model", path.to_str().unwrap(), "--order", "4", "--format", "json"]);
    let builtin = stdout(&["run", "--model", "henon-heiles", "--order", "4", "--format", "json"]);
    assert_eq!(file, builtin);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let printed = stdout(&["run", "--model", "pendulum", "--order", "3", "--format", "csv"]);
    stdout(&["run", "--model", "pendulum", "--order", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, printed);
    assert!(written.starts_with("method,series,eps,monomial,coeff\n"));
    assert!(written.contains("explicit,normalized,1,q1^4,-1/64"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.model");
    std::fs::write(&bad, "dim: 1\nomega: 1\nH1: 1/ * q1^4\n").unwrap();
    let out = deprit(&["run", "--model", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.model:3:5"), "{err}");

    assert_eq!(deprit(&["run", "--model", "nope"]).status.code(), Some(1));
    assert_eq!(deprit(&["run", "--model", "hh", "--order", "0"]).status.code(), Some(1));
    assert_eq!(deprit(&["run", "--model", "hh", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(deprit(&["words", "Q", "2"]).status.code(), Some(1));
    // the pendulum's averaged H1 is nonzero, so s = 2 breaks the leading-power invariant
    let out = deprit(&["run", "--model", "pendulum", "--order", "3", "--outputs", "hori", "--hori-power", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(deprit(&["--help"]).status.code(), Some(0));
}

#[test]
fn words_listing() {
    assert_eq!(stdout(&["words", "S", "1"]), "+ S^2 L1 P\n- S L1 S\n+ P L1 S^2\n");
    assert_eq!(stdout(&["words", "S", "2"]).lines().count(), 13);
    assert_eq!(stdout(&["models"]), "pendulum\nhenon-heiles\ntoda2d\n");
}
