//! Runs the binary on the fixture corpus and compares stdout and exit status with golden
//! files. `UPDATE_GOLDEN=1` rewrites them.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &[&str], i32)] = &[
    ("scl_commutator", &["scl", "[a,b]", "--basis", "a,b"], 0),
    ("scl_genus_two", &["scl", "[a,b][c,d]"], 0),
    ("scl_not_boundary", &["scl", "a + b"], 0),
    ("scl_sequential", &["scl", "[aa,b]", "--policy", "sequential"], 0),
    ("scl_compare", &["scl", "[a,b]", "--basis", "a,b", "--compare", "a,b,c,d"], 0),
    ("scl_json", &["--out", "json", "scl", "a + b + BA"], 0),
    ("scl_parse_error", &["scl", "[a,"], 2),
    ("sandwich_g2", &["scl", "--sandwich", "sg1b-2.2cx", "--witness", "identity-sg1b-2.adm"], 0),
    ("sandwich_lower_only", &["scl", "--sandwich", "sg1b-3.2cx", "--loop", "c"], 0),
    ("homology_rel", &["homology", "--rel", "closed-s3.2cx", "closed-s3-t.cells", "--ring", "q"], 0),
    ("homology_rp2_z", &["homology", "rp2.2cx"], 0),
    ("homology_rp2_q", &["homology", "rp2.2cx", "--ring", "q"], 0),
    ("homology_cone", &["homology", "closed-s3.2cx", "--loop", "c-", "--ring", "q"], 0),
    ("homology_json", &["--out", "json", "homology", "torus.2cx"], 0),
    ("check_closed", &["check", "closed-s3.2cx"], 0),
    ("check_rp2", &["check", "rp2.2cx"], 1),
    ("adm_validate", &["adm", "validate", "closed-s3.2cx", "t-itself.adm"], 0),
    ("adm_validate_wrong_target", &["adm", "validate", "torus.2cx", "t-itself.adm"], 2),
    ("adm_report", &["adm", "report", "closed-s3.2cx", "t-and-sigma.adm"], 0),
    ("adm_normalize_fold", &["adm", "normalize", "torus.2cx", "fold.adm"], 0),
    ("adm_promote", &["adm", "promote", "grid-torus-2x2.2cx", "grid-annulus-reversed-torus.adm", "--eps", "1/3"], 0),
    ("adm_promote_bad_eps", &["adm", "promote", "grid-torus-2x2.2cx", "grid-annulus-reversed-torus.adm", "--eps", "x"], 2),
    ("verify_fold_precondition", &["verify-main", "torus.2cx", "--surface", "fold.adm", "--sub", "torus-all.cells", "--mode", "standard"], 2),
    ("verify_closed_standard", &["verify-main", "closed-s3.2cx", "--surface", "t-itself.adm", "--sub", "closed-s3-t.cells", "--mode", "standard"], 1),
    ("verify_closed_sigma", &["verify-main", "closed-s3.2cx", "--surface", "sigma-genus-1.adm", "--sub", "closed-s3-t.cells", "--mode", "perfect"], 1),
    ("verify_ambient", &["verify-main", "sg1b-ambient-2.2cx", "--surface", "t-itself-ambient.adm", "--sub", "sg1b-ambient-2-t.cells"], 0),
    ("harness_a", &["harness", "a", "sg1b-ambient-1.2cx", "sg1b-ambient-1-t.cells"], 0),
    ("harness_b", &["harness", "b", "closed-s3.2cx", "closed-s3-t.cells", "--witness", "t-itself.adm"], 0),
    ("fixtures_list", &["fixtures", "list"], 0),
    ("fixtures_dump", &["fixtures", "dump", "closed-s3"], 0),
    ("fixtures_unknown", &["fixtures", "dump", "nope"], 2),
    ("usage_error", &["frobnicate"], 2),
];

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sclcx")).args(args).current_dir(fixtures()).output().expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf8"), out.status.code().expect("exit code"))
}

#[test]
fn golden_outputs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, args, code) in CASES {
        let (stdout, status) = run(args);
        let again = run(args);
        assert_eq!(again, (stdout.clone(), status), "{name}: output is not stable across runs");
        if status != *code {
            failures.push(format!("{name}: exit {status}, expected {code}"));
        }
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &stdout).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(stdout.as_str()) {
            failures.push(format!("{name}: stdout differs from {}", path.display()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn pinned_lines() {
    assert_eq!(run(&["scl", "[a,b]", "--basis", "a,b"]), ("1/2\n".to_string(), 0));
    assert_eq!(run(&["scl", "[a,b][c,d]"]).0, "3/2\n");
    let (rel, _) = run(&["homology", "--rel", "closed-s3.2cx", "closed-s3-t.cells", "--ring", "q"]);
    assert!(rel.lines().any(|l| l == "H2 rank 1"));
    let (rp2, _) = run(&["homology", "rp2.2cx"]);
    assert!(rp2.lines().any(|l| l == "H1 rank 0 torsion 2"));
    let (sw, _) = run(&["scl", "--sandwich", "sg1b-2.2cx", "--witness", "identity-sg1b-2.adm"]);
    assert!(sw.lines().any(|l| l == "exact 3/2"));
}

#[test]
fn policies_agree() {
    for chain in ["[a,b]^2", "abAAB + a", "[a,b][a,B]"] {
        let seq = run(&["scl", chain, "--policy", "sequential"]);
        let par = run(&["scl", chain, "--policy", "parallel"]);
        assert_eq!(seq, par, "{chain}");
    }
}

#[test]
fn dumped_fixtures_match_files() {
    for (name, ext) in [("closed-s3", "2cx"), ("torus", "2cx"), ("t-itself", "adm"), ("fold", "adm")] {
        let (dump, code) = run(&["fixtures", "dump", name]);
        assert_eq!(code, 0);
        assert_eq!(dump, std::fs::read_to_string(fixtures().join(format!("{name}.{ext}"))).unwrap(), "{name}");
    }
}
