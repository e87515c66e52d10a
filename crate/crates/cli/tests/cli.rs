use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use triality::format::parse_fock;
use triality_core::vertex::{CosetVector, FockVector, Lattice};

fn run_env(args: &[&str], env: &[(&str, &Path)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_triality"));
    cmd.args(args).env_remove("TRIALITY_CONFIG");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    (status.code().expect("exit code"), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

#[test]
fn tables_with_verification() {
    let (code, out, _) = run(&["tables", "B_ext", "--verify"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ring B_ext\n"));
    assert!(out.contains("fuse W(2/3)+ W(2/3)+ -> W(2/3)-*1\n"), "{out}");
    assert!(out.ends_with("axioms: pass\n"));
}

#[test]
fn tables_as_json() {
    let (code, out, _) = run(&["tables", "C_full", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 10);
    assert_eq!(v["products"].as_array().unwrap().len(), 100);
    assert_eq!(v["identity"], "0");
}

#[test]
fn unknown_table_is_a_usage_error() {
    let (code, out, err) = run(&["tables", "bogus"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("unknown table `bogus`"));
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn derive_reproduces_the_extension_table() {
    let (code, out, _) = run(&["derive-table-b"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("derived ring == B_ext: PASS"));
    assert_eq!(out.lines().filter(|l| l.ends_with("nonzero")).count(), 16);
}

#[test]
fn dropping_e7_reports_ambiguity() {
    let (code, out, _) = run(&["derive-table-b", "--drop-evidence", "E7"]);
    assert_eq!(code, 1);
    assert!(out.contains("derived ring: ambiguous, 2 entries open"), "{out}");
    assert!(out.contains("N^W(2/3)-_{W(2/3)+,W(2/3)+} in [0, 1]"));
    let (code, out, _) = run(&["derive-table-b", "--drop-evidence", "E7", "--associativity"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(run(&["derive-table-b", "--drop-evidence", "E42"]).0, 2);
}

#[test]
fn small_cutoff_is_a_truncation() {
    let (code, _, err) = run(&["derive-table-b", "--cutoff", "1/3"]);
    assert_eq!(code, 3);
    assert!(err.contains("beyond the cutoff 1/3"), "{err}");
    assert_eq!(run(&["conformal", "--cutoff", "1"]).0, 3);
    assert_eq!(run(&["characters", "--branching-cutoff", "2"]).0, 3);
}

#[test]
fn gradings_mark_the_known_assignments() {
    let (code, out, _) = run(&["gradings", "B_ext"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("table B_ext: 3 gradings, group Z3\n"));
    assert_eq!(out.matches("[triality]").count(), 1);
    let (_, out, _) = run(&["gradings", "sigma_fixed_sub"]);
    assert!(out.starts_with("table sigma_fixed_sub: 2 gradings, group Z2\n"));
    assert!(out.contains("3:1/2 2/5:1/2 7/5:0  [mu_T]"), "{out}");
    let (_, out, _) = run(&["gradings", "C_full"]);
    assert!(out.contains("[sigma]"));
    let (code, out, _) = run(&["gradings", "A_sub", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["group"], "trivial");
}

#[test]
fn conformal_charges() {
    let (code, out, _) = run(&["conformal"]);
    assert_eq!(code, 0);
    let charges: Vec<&str> = out.lines().filter(|l| l.starts_with('w') && l.contains("central charge")).collect();
    assert_eq!(charges, ["w1  central charge 1/2", "w2  central charge 7/10", "w3  central charge 4/5"]);
    assert!(out.contains("pairwise orthogonal: PASS"));
}

#[test]
fn characters_of_m1() {
    let (code, out, _) = run(&["characters", "--coset", "M1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("lowest term: 3q^{2/3}\n"));
    assert!(out.contains("branching at cutoff 6: unique"));
    assert_eq!(run(&["characters", "--coset", "M9"]).0, 2);
}

#[test]
fn characters_json_lists_every_coset() {
    let (code, out, _) = run(&["characters", "--format", "json", "--cutoff", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let lowest: Vec<&str> = v["cosets"].as_array().unwrap().iter().map(|c| c["lowest"].as_str().unwrap()).collect();
    assert_eq!(lowest, ["1q^{0}", "3q^{2/3}", "3q^{2/3}"]);
}

#[test]
fn fock_mode_reads_vector_files() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.txt");
    std::fs::write(&u, "# a lowest vector of M1\n1  1  exp(1/3,2/3)\n-2  1  exp(1/3,-1/3)\n").unwrap();
    let (code, out, _) = run(&["fock-mode", "--u", u.to_str().unwrap(), "--n", "-1", "--v", "vacuum"]);
    assert_eq!(code, 0);
    let body: String = out.lines().skip(1).map(|l| format!("{l}\n")).collect();
    let lat = Lattice::sqrt2_a2();
    let mut expected = FockVector::exponential(CosetVector::from_fracs(&[(1, 3), (2, 3)]));
    expected.add_scaled(
        &FockVector::exponential(CosetVector::from_fracs(&[(1, 3), (-1, 3)])),
        &triality_core::scalar::int(-2),
    );
    assert_eq!(parse_fock(&lat, &body).unwrap(), expected);

    let (code, out, _) = run(&["fock-mode", "--u", "omega", "--n", "0", "--v", "vacuum"]);
    assert_eq!((code, out.lines().nth(1)), (0, Some("0")));

    std::fs::write(&u, "1  z(-1)  exp(0,0)\n").unwrap();
    assert_eq!(run(&["fock-mode", "--u", u.to_str().unwrap(), "--n", "0", "--v", "vacuum"]).0, 2);
    assert_eq!(run(&["fock-mode", "--u", "missing.txt", "--n", "0", "--v", "vacuum"]).0, 2);
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "cutoff = 1/3\nformat = json\n[lattice]\ngram = [[4,-2],[-2,4]]\n\
         coset M0 = 0,0\ncoset M1 = 1/3,2/3\ncoset M2 = 2/3,1/3\n",
    )
    .unwrap();
    let (code, _, _) = run_env(&["derive-table-b"], &[("TRIALITY_CONFIG", &cfg)]);
    assert_eq!(code, 3);
    let (code, out, _) = run_env(&["gradings", "B_ext"], &[("TRIALITY_CONFIG", &cfg)]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<Value>(&out).is_ok());
    // flags win over the file
    let (code, out, _) = run(&["--config", cfg.to_str().unwrap(), "--format", "text", "--cutoff", "3", "conformal"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("w1  central charge 1/2"));

    std::fs::write(&cfg, "cutoff = 2\nscale = 7\n").unwrap();
    let (code, _, err) = run(&["--config", cfg.to_str().unwrap(), "characters"]);
    assert_eq!(code, 2);
    assert!(err.contains("scale 7"), "{err}");
}

#[test]
fn other_lattices_work_where_the_computation_is_generic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("a1.cfg");
    std::fs::write(&cfg, "cutoff = 2\nscale = 4\n[lattice]\ngram = [[2]]\ncoset L = 0\ncoset L' = 1/2\n").unwrap();
    let c = cfg.to_str().unwrap();
    let (code, out, _) = run(&["--config", c, "characters", "--coset", "L'"]);
    assert_eq!(code, 0, "{out}");
    // 2 q^{1/4} from +-1/2, one Heisenberg colour
    assert!(out.contains("lowest term: 2q^{1/4}"), "{out}");
    assert!(!out.contains("branching"));
    assert_eq!(run(&["--config", c, "conformal"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [&["conformal", "--format", "json"][..], &["gradings", "C_full"], &["characters", "--coset", "M2"]] {
        assert_eq!(run(args).1, run(args).1);
    }
}

#[test]
fn verify_all_passes() {
    let (code, out, _) = run(&["verify-all"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    assert!(out.ends_with("verify-all: PASS\n"));
    let (code, out, _) = run(&["verify-all", "--cutoff", "1/3"]);
    assert_eq!(code, 3);
    assert!(out.contains("ERROR"));
}
