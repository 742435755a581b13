use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idcodes"))
        .args(args)
        .output()
        .expect("spawn idcodes")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("idcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn field_info() {
    let v = json(&["field", "info", "--p", "2", "--m", "4"]);
    assert_eq!(v["q"], 16);
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
    assert_eq!(v["alpha"], 2);
    let v = json(&["field", "info", "--p", "7"]);
    assert_eq!(v["alpha"], 3);
    assert!(!run(&["field", "info", "--p", "6"]).status.success());
}

#[test]
fn construct_then_verify() {
    let fam = scratch("c2.json");
    let f = fam.to_str().unwrap();
    assert!(run(&[
        "construct",
        "--scheme",
        "construction2",
        "--p",
        "3",
        "--m",
        "2",
        "--out",
        f
    ])
    .status
    .success());
    let v = json(&["verify", "--in", f, "--cyclic"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["warnings"], 0);
    assert_eq!(v["k_actual"], 0);
    assert_eq!(v["n"], 7);
    assert!(v["cyclic"]["max_cross"].as_u64().unwrap() <= 2);

    // claim a smaller overlap than the family has: still exit 0, with warnings
    let prime = scratch("prime.json");
    let p = prime.to_str().unwrap();
    assert!(
        run(&["construct", "--scheme", "prime", "--p", "5", "--out", p])
            .status
            .success()
    );
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&prime).unwrap()).unwrap();
    file["claimed"]["K"] = 0.into();
    std::fs::write(&prime, file.to_string()).unwrap();
    let v = json(&["verify", "--in", p]);
    assert_eq!(v["pass"], false);
    assert!(v["warnings"].as_u64().unwrap() > 0);

    assert!(!run(&[
        "construct",
        "--scheme",
        "prime",
        "--p",
        "5",
        "--truncate",
        "2"
    ])
    .status
    .success());
}

#[test]
fn rs_encode() {
    let v = json(&[
        "rs",
        "encode",
        "--q",
        "5",
        "--k",
        "2",
        "--variant",
        "dext",
        "--message",
        "1,1",
    ]);
    assert_eq!(v["codeword"], serde_json::json!([2, 3, 0, 4, 1, 1]));
    assert_eq!(v["d"], 5);
    assert!(
        !run(&["rs", "encode", "--q", "5", "--k", "2", "--message", "1"])
            .status
            .success()
    );
}

#[test]
fn params_closed_form() {
    let v = json(&[
        "params",
        "--scheme",
        "c1",
        "--p",
        "5",
        "--ko",
        "2",
        "--koo",
        "2",
        "--variant",
        "dext",
    ]);
    assert_eq!(v["params"]["S"], 3120);
    assert_eq!(v["params"]["W"], 624);
    assert_eq!(v["params"]["K"], 128);
    assert_eq!(v["params"]["N"], "625");
    assert_eq!(v["metrics"]["optimality"]["overlap_fraction"], "8/39");
    assert_eq!(v["warnings"], 0);
    let v = json(&[
        "params",
        "--scheme",
        "ppm-bench",
        "--p",
        "23",
        "--ko",
        "1",
        "--koo",
        "1",
    ]);
    assert_eq!(v["variant"], "extended");
    assert_eq!(v["metrics"]["id"]["e2"], "+inf");
    assert_eq!(v["metrics"]["id"]["tradeoff_gap"], "-inf");
}

#[test]
fn codeword_support() {
    let v = json(&[
        "codeword", "--scheme", "c1", "--p", "5", "--ko", "1", "--koo", "2", "--id", "7",
    ]);
    let sup = v["support"].as_array().unwrap();
    assert_eq!(sup.len() as u64, v["W"].as_u64().unwrap());
    assert!(sup.windows(2).all(|w| w[0].as_u64() < w[1].as_u64()));
    assert!(!run(&[
        "codeword", "--scheme", "c1", "--p", "5", "--ko", "1", "--koo", "2", "--id", "25"
    ])
    .status
    .success());
}

#[test]
fn bound_both_directions() {
    let v = json(&["bound", "--S", "7", "--W", "3", "--K", "1"]);
    assert_eq!(v["johnson"], "7");
    assert_eq!(v["n_id_bound"], "7");
    let v = json(&["bound", "--S", "10", "--W", "4", "--K", "0"]);
    assert_eq!(v["johnson"], "2");
    assert_eq!(v["correlation"], Value::Null);
    let v = json(&["bound", "--S", "5", "--W", "2", "--K", "2"]);
    assert_eq!(v["warnings"], 1);
    let v = json(&["bound", "--invert", "--S", "25", "--N", "5^2", "--W", "5"]);
    assert_eq!(v["N"], "25");
    assert_eq!(v["k_star"], 1);
    assert_eq!(v["d_min"], 8);
}

#[test]
fn metrics_direct_params() {
    let v = json(&[
        "metrics", "--S", "1920", "--N", "5^4", "--W", "384", "--K", "112",
    ]);
    let id = &v["metrics"]["id"];
    for (k, want) in [("n_id", 10.9069), ("r_id", 0.2948), ("e2", 0.1630)] {
        assert!((id[k].as_f64().unwrap() - want).abs() < 1e-3, "{k}");
    }
    let v = json(&["metrics", "--S", "8", "--N", "3", "--W", "2", "--K", "0"]);
    assert_eq!(v["warnings"], 1);
    assert!(!run(&["metrics", "--S", "8"]).status.success());
}

#[test]
fn simulate_pair() {
    let args = [
        "simulate", "--scheme", "c1", "--p", "5", "--ko", "1", "--koo", "2", "--i", "0",
        "--iprime", "7",
    ];
    let v = json(&[&args[..], &["--trials", "2000", "--seed", "9"]].concat());
    assert_eq!(v["type1_errors"], 0);
    assert_eq!(v["trials"], 2000);
    assert!(v["exact_type2"].is_string());
    assert!(!run(&[
        "simulate", "--scheme", "c1", "--p", "5", "--ko", "1", "--koo", "2", "--i", "3",
        "--iprime", "3"
    ])
    .status
    .success());
}

#[test]
fn sweep_writes_table_and_manifest() {
    let csv = scratch("fig.csv");
    let out = run(&["sweep", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let rows = idcodes::sweep::read_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 84);
    let man: Value = serde_json::from_str(
        &std::fs::read_to_string(csv.with_extension("manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(man["bound_line"].as_array().unwrap().len(), 21);
    assert_eq!(man["warnings"], 6);
    assert_eq!(man["schemes"], serde_json::json!(["c1", "c2", "ppm-bench"]));

    let out = run(&[
        "sweep",
        "--schemes",
        "c2",
        "--c2-p",
        "2",
        "--c2-m",
        "3",
        "--ko",
        "1",
        "--koo",
        "1",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 warnings"));
    assert!(!run(&["sweep", "--schemes", "c9"]).status.success());
}

#[test]
fn precision_changes_only_low_digits() {
    let a = json(&[
        "--precision-bits",
        "64",
        "metrics",
        "--S",
        "1920",
        "--N",
        "5^4",
        "--W",
        "384",
        "--K",
        "112",
    ]);
    let b = json(&[
        "--precision-bits",
        "200",
        "metrics",
        "--S",
        "1920",
        "--N",
        "5^4",
        "--W",
        "384",
        "--K",
        "112",
    ]);
    let (x, y) = (
        a["metrics"]["id"]["r_id"].as_f64().unwrap(),
        b["metrics"]["id"]["r_id"].as_f64().unwrap(),
    );
    assert!((x - y).abs() < 1e-11);
}
