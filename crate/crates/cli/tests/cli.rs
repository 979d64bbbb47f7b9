use std::process::{Command, Output};

fn ringspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringspec"))
        .args(args)
        .env_remove("RINGSPEC_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn closed_spectrum_json() {
    let out = ringspec(&[
        "spectrum", "--n", "2", "--q", "2", "--method", "closed", "--format", "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "ringspec/1");
    assert_eq!(v["method"], "closed-form");
    assert_eq!(v["v"], "16");
    assert_eq!(v["lambda_max"], "12");
    let pairs: Vec<(String, String)> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["value"].as_str().unwrap().into(),
                e["multiplicity"].as_str().unwrap().into(),
            )
        })
        .collect();
    let expected = [("0", "1"), ("8", "9"), ("12", "6")].map(|(a, b)| (a.to_string(), b.to_string()));
    assert_eq!(pairs, expected);
}

#[test]
fn large_closed_spectrum_needs_no_graph() {
    let out = ringspec(&["spectrum", "--n", "5", "--q", "7"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["eigenvalues"].as_array().unwrap().len(), 11);
}

#[test]
fn spectrum_methods_agree_in_csv() {
    let closed = ringspec(&[
        "spectrum", "--n", "2", "--q", "3", "--method", "closed", "--format", "csv",
    ]);
    let chars = ringspec(&[
        "spectrum",
        "--n",
        "2",
        "--q",
        "3",
        "--method",
        "character",
        "--format",
        "csv",
    ]);
    let values = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .skip(1)
            .map(|l| l.split(',').skip(3).collect::<Vec<_>>().join(","))
            .collect()
    };
    assert_eq!(values(&closed), values(&chars));
    assert!(stdout(&closed).starts_with("n,q,method,value,multiplicity\n2,3,closed-form,0,1\n"));
    let brute = ringspec(&[
        "spectrum", "--n", "2", "--q", "2", "--method", "brute", "--format", "table",
    ]);
    assert!(brute.status.success());
    assert!(stdout(&brute).contains("brute-force"));
}

#[test]
fn n_below_two_is_a_usage_error() {
    let out = ringspec(&["spectrum", "--n", "1", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 2 required"));
    assert_eq!(ringspec(&["bounds", "--n", "1", "--q", "2"]).status.code(), Some(2));
    assert_eq!(ringspec(&["spectrum", "--n", "2", "--q", "6"]).status.code(), Some(2));
    assert_eq!(
        ringspec(&["spectrum", "--n", "2", "--q", "2", "--method", "nope"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bounds_rows() {
    let out = ringspec(&["bounds", "--n", "2", "--q", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("target,quantity,formula,value_rational,value_int,v,delta_or_d,lambda_max_or_theta_min\n"));
    assert!(text.contains("T_2(3),alpha_upper,uniform-power,27,27,,,"));
    assert!(text.contains("Gamma_2(3),chi_lower,chi-closed,5/3,2,,,"));

    let v = json(&ringspec(&["bounds", "--n", "2", "--q", "2"]));
    let rows = v["rows"].as_array().unwrap();
    let find = |formula: &str| {
        rows.iter()
            .find(|r| r["formula"] == formula && r["target"] == "T_2(2)")
            .unwrap()["value_int"]
            .clone()
    };
    assert_eq!(find("hoffman-type-exact"), "4");
    assert_eq!(find("uniform-power"), "8");

    let v = json(&ringspec(&["bounds", "--n", "4", "--q", "9"]));
    let rows = v["rows"].as_array().unwrap();
    let closed = rows.iter().find(|r| r["formula"] == "chi-closed").unwrap();
    assert_eq!(closed["value_rational"], "639");
    let tomon = rows.iter().find(|r| r["formula"] == "tomon").unwrap();
    assert_eq!(tomon["value_rational"], "81/16");
    assert!(tomon["notes"].to_string().contains("improves"));
}

#[test]
fn oracle_values_with_witnesses() {
    let alpha = json(&ringspec(&[
        "oracle", "alpha", "--graph", "regular", "--n", "2", "--q", "2",
    ]));
    assert_eq!(alpha["quantity"], "alpha");
    assert_eq!(alpha["graph"], "Gamma_2(2)");
    let a = alpha["value"].as_u64().unwrap();
    assert!(a <= 8);
    assert_eq!(alpha["witness"].as_array().unwrap().len() as u64, a);

    let chi = json(&ringspec(&[
        "oracle", "chi", "--graph", "regular", "--n", "2", "--q", "2",
    ]));
    let c = chi["value"].as_u64().unwrap();
    assert_eq!(chi["witness"].as_array().unwrap().len(), 6);
    assert!(a * c >= 6);

    let out = ringspec(&["oracle", "alpha", "--graph", "total", "--n", "3", "--q", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("19683"));
}

#[test]
fn canonical_witness_is_stable() {
    let args = [
        "oracle",
        "omega",
        "--graph",
        "regular",
        "--n",
        "2",
        "--q",
        "3",
        "--canonical-witness",
    ];
    let a = ringspec(&args);
    let b = ringspec(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["value"].as_u64().unwrap() <= 7);
}

#[test]
fn verify_subset_and_rejection_policy() {
    let out = ringspec(&["verify", "--grid", "2,2", "--seed", "7", "--random-graphs", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["grid"], serde_json::json!([[2, 2]]));

    let lenient = ringspec(&["verify", "--grid", "1,2", "--random-graphs", "0"]);
    assert_eq!(lenient.status.code(), Some(0));
    let v = json(&lenient);
    assert_eq!(v["rows"][0]["status"], "rejected");
    assert_eq!(v["rows"][0]["actual"], "n >= 2 required (got n = 1)");
    let strict = ringspec(&["verify", "--grid", "1,2", "--random-graphs", "0", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));

    let empty = ringspec(&["verify", "--random-graphs", "0"]);
    assert!(empty.status.success());
    assert_eq!(json(&empty)["rows"], serde_json::json!([]));
}

#[test]
fn verify_default_grid_is_deterministic() {
    let args = ["verify", "--default-grid", "--seed", "42"];
    let a = ringspec(&args);
    let b = ringspec(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn budget_overrides() {
    let out = ringspec(&[
        "--budget",
        "adjacency=10",
        "spectrum",
        "--n",
        "2",
        "--q",
        "2",
        "--method",
        "brute",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_ringspec"))
        .args(["spectrum", "--n", "2", "--q", "2", "--method", "character"])
        .env("RINGSPEC_BUDGET", "characters=4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = ringspec(&["--budget", "bogus", "bounds", "--n", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counts_with_census() {
    let v = json(&ringspec(&["counts", "--n", "2", "--q", "2", "--census"]));
    assert_eq!(
        v["formulas"],
        serde_json::json!({"n":2,"q":2,"gl_order":"6","c":"3/8","rank_counts":{"0":"1","1":"9","2":"6"}})
    );
    assert_eq!(v["census"], v["formulas"]);
    let out = ringspec(&["counts", "--n", "3", "--q", "2", "--format", "csv"]);
    assert!(stdout(&out).contains("3,2,gl_order,,168"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("ringspec-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = ringspec(&["spectrum", "--n", "2", "--q", "3", "--output", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"lambda_max\": \"39\""));
    std::fs::remove_file(path).unwrap();
}
