//! End-to-end tests of the command-line surface: exit-code contract,
//! format shapes, determinism, and the lattice cache.

use assert_cmd::Command;

fn cmd() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sylow2"));
    c.env_remove("SYLOW2_CACHE_DIR");
    c
}

#[test]
fn group_info_json_matches_closed_forms() {
    let out = cmd()
        .args(["--format", "json", "group-info", "-p", "3", "-n", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["all_match"], true);
    let groups = v["groups"].as_array().unwrap();
    assert_eq!(groups[0]["label"], "sylow-sl");
    assert_eq!(groups[0]["enumerated"], 81);
    assert_eq!(groups[1]["enumerated"], 27);
    assert_eq!(groups[2]["label"], "sl");
    assert_eq!(groups[2]["enumerated"], 648);
}

#[test]
fn group_info_n1_and_gl() {
    let out = cmd()
        .args(["--format", "json", "group-info", "-p", "3", "-n", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["groups"][0]["enumerated"], 3);
    assert_eq!(v["groups"][1]["enumerated"], 1); // trivial kernel at n=1

    let out = cmd()
        .args([
            "--format", "json", "group-info", "-p", "5", "-n", "2", "--kind", "gl",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["groups"][0]["enumerated"], 3125); // 5^5
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["--format", "json", "group-info", "-p", "3", "-n", "2"],
        vec!["--format", "json", "e2", "-p", "3", "-n", "2"],
        vec!["--format", "json", "fusion", "-p", "3", "-n", "2"],
    ] {
        let a = cmd().args(&args).output().unwrap();
        let b = cmd().args(&args).output().unwrap();
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    // holds: exit 0
    cmd()
        .args(["verify", "powerful", "-p", "3", "-n", "3"])
        .assert()
        .success();
    // fails with witness: exit 1
    let out = cmd()
        .args([
            "--format", "json", "verify", "elementary-abelian", "--group", "k", "-p", "3",
            "-n", "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["kind"], "pair");
    // the property does hold on the top kernel
    cmd()
        .args([
            "verify", "elementary-abelian", "--group", "k", "--level", "2", "-p", "3", "-n",
            "3",
        ])
        .assert()
        .success();
    cmd()
        .args(["verify", "omega-extendable", "-p", "5", "-n", "2"])
        .assert()
        .success();
    cmd()
        .args(["verify", "pth-roots", "-p", "3", "-n", "3"])
        .assert()
        .success();
    cmd()
        .args(["verify", "theta", "-p", "3", "-n", "3"])
        .assert()
        .success();
}

#[test]
fn e2_csv_shape_and_compare() {
    let out = cmd()
        .args([
            "--format", "csv", "e2", "-p", "3", "-n", "2", "--cap-i", "3", "--cap-j", "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j\\i,0,1,2,3");
    assert_eq!(lines.len(), 4); // header + j = 2, 1, 0
    assert!(lines[3].starts_with("0,1,1,1,1"));

    let out = cmd()
        .args(["--format", "json", "e2", "-p", "3", "--compare", "2", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["differences"].as_array().unwrap().len(), 0);

    // caps (0,0): a single cell of dimension 1
    let out = cmd()
        .args([
            "--format", "json", "e2", "-p", "3", "-n", "2", "--cap-i", "0", "--cap-j", "0",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dims"][0][0], 1);
}

#[test]
fn fusion_report_shape() {
    let out = cmd()
        .args(["--format", "json", "fusion", "-p", "3", "-n", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["class_count_sylow_ambient"], 20);
    assert_eq!(v["class_count_full_ambient"], 16);
    assert_eq!(v["classes"].as_array().unwrap().len(), 20);
    let cr = v["centric_radical"].as_array().unwrap();
    assert_eq!(cr.len(), 2);
    let orders: Vec<u64> = cr
        .iter()
        .map(|i| v["classes"][i.as_u64().unwrap() as usize]["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![27, 81]);
    assert_eq!(v["kernel_invariant_dims"]["degrees"][0][1], 1);
    // the explicit statement that the Sylow-side invariants are absent
    assert!(v["notes"][0]
        .as_str()
        .unwrap()
        .contains("not computed"));
}

#[test]
fn fusion_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--format",
        "json",
        "--cache-dir",
        dir.path().to_str().unwrap(),
        "fusion",
        "-p",
        "3",
        "-n",
        "2",
    ];
    let first = cmd().args(args).output().unwrap();
    assert!(first.status.success());
    let cache_files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(cache_files.len(), 1);
    let second = cmd().args(args).output().unwrap();
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn cache_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_sylow2"))
        .env("SYLOW2_CACHE_DIR", dir.path())
        .args(["--format", "json", "fusion", "-p", "3", "-n", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn budget_and_usage_errors_exit_2() {
    // enumeration budget too small
    let out = cmd()
        .args(["--budget", "10", "fusion", "-p", "3", "-n", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // p = 2 rejected
    let out = cmd().args(["group-info", "-p", "2", "-n", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // unknown property name
    let out = cmd()
        .args(["verify", "frobnicate", "-p", "3", "-n", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // lattice budget too small
    let out = cmd()
        .args(["--lattice-budget", "10", "fusion", "-p", "3", "-n", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
