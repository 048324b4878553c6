use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn citepr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_citepr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn table_prints_all_columns() {
    let input = fixture("sample_21.csv");
    let out = citepr(&[
        "table",
        "--input",
        &input,
        "--cell",
        "2000:PHYS",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "cc,count,mean_rank,hazen,rank_k,incites,rank_i,p100,rank_j,p100_prime,cp_in,cp_ex"
    );
    let top: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(&top[..3], ["20", "2", "20.5"]);
    assert_eq!(top[10], "100");
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn table_json() {
    let input = fixture("sample_21.csv");
    let out = citepr(&[
        "table",
        "--input",
        &input,
        "--cell",
        "2000:PHYS",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
    assert_eq!(v["category"], "PHYS");
}

#[test]
fn estimate_worked_examples() {
    let input = fixture("sample_21.csv");
    let run = |args: &[&str]| {
        let mut all = vec!["estimate", "--input", input.as_str()];
        all.extend_from_slice(args);
        let out = citepr(&all);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        stdout(&out).trim().to_string()
    };
    assert_eq!(run(&["--variant", "cp-in", "--pr", "90"]), "13.45");
    assert_eq!(run(&["--pr", "75"]), "9.25");
    assert_eq!(run(&["--pr", "50"]), "6.875");
    assert_eq!(run(&["--variant", "cp-ex", "--pr", "90"]), "14.45");
    assert_eq!(run(&["--variant", "cp-in", "--cc", "6.875"]), "50");
    assert_eq!(
        run(&["--variant", "cp-ex", "--method", "interp", "--pr", "80"]),
        "12.4"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(citepr(&["bogus"]).status.code(), Some(1));
    assert_eq!(citepr(&[]).status.code(), Some(1));
    assert_eq!(citepr(&["--help"]).status.code(), Some(0));

    let input = fixture("sample_21.csv");
    let out = citepr(&["estimate", "--input", &input, "--pr", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot be estimated"));
    assert!(out.stdout.is_empty());

    let out = citepr(&[
        "table",
        "--input",
        "/nonexistent.csv",
        "--cell",
        "2000:PHYS",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Bad cell syntax is rejected by argument parsing.
    let out = citepr(&["table", "--input", &input, "--cell", "PHYS"]);
    assert_eq!(out.status.code(), Some(1));

    // Several cells and no --cell is a usage error that prints the subcommand help.
    let corpus = fixture("two_cells_one_unit.csv");
    let out = citepr(&["estimate", "--input", &corpus, "--pr", "50"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--variant"));
}

#[test]
fn aggregate_unit_and_i3() {
    let input = fixture("two_cells_one_unit.csv");
    let out = citepr(&["aggregate", "--input", &input, "--i3", "I3(99-100, 90-10)"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "unit,indicator,papers,mwpr,mwpr_f,fraction_sum,i3"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "UNIT-X");
    let mwpr: f64 = row[3].parse().unwrap();
    assert!((mwpr - 84.655).abs() <= 0.005);
    // A is at 91.86, B at 77.45: one paper in the 90-99 class.
    assert_eq!(row[6], "10");

    let out = citepr(&["aggregate", "--input", &input, "--i3", "I3()"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 3"));
}

#[test]
fn aggregate_top_x() {
    let input = fixture("sample_21.csv");
    let out = citepr(&[
        "aggregate",
        "--input",
        &input,
        "--top-x",
        "10",
        "--cell",
        "2000:PHYS",
    ]);
    assert!(out.status.success());
    let total = stdout(&out).lines().last().unwrap().to_string();
    let total: f64 = total.rsplit(',').next().unwrap().parse().unwrap();
    assert!((total - 2.1).abs() < 1e-9);
}

#[test]
fn figures_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("two_cells_one_unit.csv");
    let svg = dir.path().join("beam.svg");
    let json = dir.path().join("beam.json");
    let out = citepr(&[
        "beamplot",
        "--input",
        &input,
        "--unit",
        "UNIT-X",
        "--svg",
        svg.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<?xml"));
    assert!(svg_text.contains(">84.66<"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["kind"], "beamplot");

    let out = citepr(&[
        "bargraph",
        "--input",
        &input,
        "--units",
        "UNIT-X",
        "--fractional",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "bargraph");
    assert_eq!(v["series"].as_array().unwrap().len(), 1);

    let out = citepr(&["beamplot", "--input", &input, "--unit", "NOBODY"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qq_and_summary() {
    let input = fixture("two_cells_one_unit.csv");
    let out = citepr(&["qq", "--input", &input, "--positions", "1", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["series"].as_array().unwrap().len(), 2);

    let out = citepr(&["qq", "--input", &input, "--min-categories", "6"]);
    assert_eq!(out.status.code(), Some(2));

    let out = citepr(&["summary", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "summary");
    assert_eq!(v["series"][0]["year"], 2000);
}

#[test]
fn ingest_writes_deterministic_store() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("two_cells_one_unit.csv");
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out_dir in [&a, &b] {
        let out = citepr(&[
            "ingest",
            "--input",
            &input,
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let mut names: Vec<_> = std::fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() >= 6);
    for name in names {
        assert_eq!(
            std::fs::read(a.join(&name)).unwrap(),
            std::fs::read(b.join(&name)).unwrap()
        );
    }
}

#[test]
fn ingest_reports_bad_records_with_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    std::fs::write(
        &input,
        "paper_id,year,citations,categories,units\na,2000,3,X,\nb,2000,-1,X,\na,2000,4,X,\n",
    )
    .unwrap();
    let out = citepr(&[
        "ingest",
        "--input",
        input.to_str().unwrap(),
        "--out",
        dir.path().join("s").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("line 4"), "{err}");
}
