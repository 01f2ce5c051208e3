use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega-nerve"))
        .args(args)
        .env_remove("OMEGA_NERVE_JOBS")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn homology_strings(report: &Value) -> Vec<String> {
    report["data"]["homology"]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| {
            let rank = g["rank"].as_u64().unwrap();
            // torsion coefficients are arbitrary-precision, written as strings
            let torsion: Vec<u64> = g["torsion"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| t.as_str().unwrap().parse().unwrap())
                .collect();
            format!("{rank}{torsion:?}")
        })
        .collect()
}

#[test]
fn appendix_passes_and_rejects_bad_input() {
    assert_eq!(
        code(&["verify", "appendix", "--m", "4", "--degree", "4"]),
        0
    );
    assert_eq!(code(&["verify", "appendix", "--m", "-1"]), 2);
    assert_eq!(code(&["verify", "appendix", "--m", "x"]), 2);
    assert_eq!(code(&["verify", "appendix", "--m", "7"]), 3);
}

#[test]
fn tampered_homotopy_fails_with_a_witness() {
    let out = run(&["verify", "appendix", "--m", "3", "--tamper-homotopy"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&["verify", "appendix", "--m", "3", "--tamper-homotopy"]);
    assert_eq!(r["passed"], false);
    let failing: Vec<&Value> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["witness"]["element"], "(0)");
}

#[test]
fn single_checks() {
    assert_eq!(code(&["verify", "contraction", "--m", "5"]), 0);
    assert_eq!(code(&["verify", "square", "--m", "3", "--degree", "3"]), 0);
    assert_eq!(code(&["verify", "square", "--m", "3", "--degree", "5"]), 3);
    assert_eq!(code(&["verify", "sdr", "--count", "20", "--seed", "3"]), 0);
}

#[test]
fn eilenberg_mac_lane_homology() {
    let r = json(&[
        "nerve",
        "kmn",
        "--monoid",
        "z2",
        "--level",
        "2",
        "--degree",
        "5",
        "--homology",
        "3",
    ]);
    assert_eq!(homology_strings(&r), ["1[]", "0[]", "0[2]", "0[]"]);
    assert_eq!(
        r["data"]["counts"],
        serde_json::json!([1, 1, 2, 8, 64, 1024])
    );
}

#[test]
fn window_slice_is_a_point() {
    let r = json(&[
        "nerve",
        "slice",
        "--group",
        "z",
        "--window",
        "0:2",
        "--level",
        "1",
        "--degree",
        "4",
        "--homology",
        "2",
    ]);
    assert_eq!(homology_strings(&r), ["1[]", "0[]", "0[]"]);
    assert_eq!(
        code(&["nerve", "slice", "--group", "q", "--window", "0:2"]),
        2
    );
    assert_eq!(code(&["nerve", "slice", "--monoid", "z2"]), 2);
}

#[test]
fn size_guard_and_force() {
    assert_eq!(
        code(&["nerve", "kmn", "--monoid", "z2", "--level", "2", "--degree", "9"]),
        3
    );
    // within the degree bound but over the size estimate
    assert_eq!(
        code(&["nerve", "kmn", "--monoid", "z9", "--level", "2", "--degree", "6"]),
        3
    );
    assert_eq!(
        code(&["nerve", "kmn", "--monoid", "z2", "--level", "1", "--degree", "7", "--force"]),
        0
    );
}

#[test]
fn comparisons() {
    assert_eq!(
        code(&[
            "compare",
            "kmn-vs-classical",
            "--monoid",
            "z3",
            "--degree",
            "4"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "compare",
            "kmn-vs-doldkan",
            "--monoid",
            "z2",
            "--level",
            "2",
            "--hdeg",
            "3"
        ]),
        0
    );
    assert_eq!(
        code(&["compare", "--against", "classical", "--monoid", "z4"]),
        0
    );
    let r = json(&[
        "compare",
        "kmn-vs-point",
        "--monoid",
        "z2",
        "--degree",
        "3",
        "--hdeg",
        "2",
    ]);
    assert_eq!(r["passed"], false);
    assert_eq!(r["checks"][0]["witness"]["degree"], 1);
    assert_eq!(r["checks"][0]["witness"]["source"], "Z/2");
    assert_eq!(
        code(&[
            "compare",
            "kmn-vs-point",
            "--monoid",
            "trivial",
            "--degree",
            "3"
        ]),
        0
    );
}

#[test]
fn emitted_nerves_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let p = path.to_str().unwrap();
    let built = json(&[
        "nerve",
        "kmn",
        "--monoid",
        "z3",
        "--level",
        "2",
        "--degree",
        "4",
        "--homology",
        "3",
        "--emit",
        p,
    ]);
    let read = json(&["homology", "--input", p, "--degree", "3"]);
    assert_eq!(homology_strings(&built), homology_strings(&read));
    assert_eq!(built["data"]["counts"], read["data"]["counts"]);
}

#[test]
fn schema_violations_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"schema":"sset/v1","truncation":1}"#).unwrap();
    assert_eq!(code(&["homology", "--input", bad.to_str().unwrap()]), 2);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&["homology", "--input", bad.to_str().unwrap()]), 2);
    let monoid = dir.path().join("m.json");
    std::fs::write(&monoid, r#"{"schema":"monoid/v1","kind":"table","elements":["e","a"],"unit":0,"add":[[0,1],[0,0]]}"#)
        .unwrap();
    assert_eq!(
        code(&["nerve", "kmn", "--monoid-file", monoid.to_str().unwrap()]),
        2
    );
    assert_eq!(code(&["schema", "nope"]), 2);
    assert_eq!(code(&["schema", "monoid/v1"]), 0);
}

#[test]
fn monoid_files_drive_nerves() {
    let dir = tempfile::tempdir().unwrap();
    let monoid = dir.path().join("m.json");
    // the idempotent monoid {e, a}, a + a = a
    std::fs::write(&monoid, r#"{"schema":"monoid/v1","kind":"table","elements":["e","a"],"unit":0,"add":[[0,1],[1,1]]}"#)
        .unwrap();
    let r = json(&[
        "nerve",
        "kmn",
        "--monoid-file",
        monoid.to_str().unwrap(),
        "--degree",
        "3",
        "--homology",
        "2",
    ]);
    assert_eq!(r["data"]["counts"], serde_json::json!([1, 2, 4, 8]));
    // the nerve of a monoid with a zero-like element is contractible
    assert_eq!(homology_strings(&r), ["1[]", "0[]", "0[]"]);
}

#[test]
fn cylinders_and_commas() {
    let r = json(&["nerve", "cylinder", "--monoid", "z2", "--degree", "3"]);
    assert_eq!(r["data"]["base_counts"], serde_json::json!([1, 2, 4, 8]));
    let r = json(&[
        "nerve",
        "comma",
        "--monoid",
        "z3",
        "--degree",
        "3",
        "--homology",
        "2",
    ]);
    assert_eq!(r["data"]["counts"], serde_json::json!([3, 9, 27, 81]));
    assert_eq!(homology_strings(&r), ["1[]", "0[]", "0[]"]);
    let r = json(&[
        "nerve", "comma", "--monoid", "z3", "--degree", "2", "--left", "id", "--right", "id",
    ]);
    assert_eq!(r["data"]["counts"][0], 3);
    assert_eq!(
        code(&["nerve", "comma", "--monoid", "z3", "--left", "hom:0,1"]),
        2
    );
    assert_eq!(
        code(&["nerve", "comma", "--monoid", "z3", "--left", "sideways"]),
        2
    );
}

#[test]
fn oriental_atoms() {
    let out = run(&["oriental", "atoms", "--n", "3", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["atom_counts"], serde_json::json!([4, 6, 4, 1]));
    assert_eq!(code(&["oriental", "atoms", "--n", "9"]), 3);
}

#[test]
fn reports_are_deterministic_and_jobs_are_honoured() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let args = ["verify", "appendix", "--m", "3", "--degree", "3"];
    let a = strip(json(&args));
    let with_jobs: Vec<&str> = args.iter().copied().chain(["--jobs", "1"]).collect();
    let b = strip(json(&with_jobs));
    assert_eq!(a["checks"], b["checks"]);
    let out = Command::new(env!("CARGO_BIN_EXE_omega-nerve"))
        .args(args)
        .env("OMEGA_NERVE_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(code(&["--jobs", "0", "schema"]), 2);
}

#[test]
fn output_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "compare",
        "kmn-vs-classical",
        "--monoid",
        "z2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "report/v1");
    assert_eq!(v["passed"], true);
}
