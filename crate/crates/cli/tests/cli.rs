use std::path::Path;
use std::process::Command;

use matchmanip_cli::{run, EXIT_BUDGET, EXIT_OK, EXIT_UNVERIFIED, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["matchmanip"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn single_solver_agrees_with_oracle_on_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let mut yes = 0;
    for seed in 0..40 {
        let f = dir.path().join(format!("r{seed}.json"));
        let side = if seed % 2 == 0 { "men" } else { "women" };
        let (code, _, _) = call(&["gen-random", "--k", "4", "--voters", "3", "--side", side, "--seed", &seed.to_string(), "--out", p(&f)]);
        assert_eq!(code, EXIT_OK);
        for t in 0..4 {
            let t = t.to_string();
            let (c1, solver, _) = call(&["solve-single", "--instance", p(&f), "--target", &t, "--side", side]);
            let (c2, oracle, _) = call(&["oracle", "--instance", p(&f), "--target", &t, "--manipulators", "1"]);
            assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
            assert_eq!(solver.starts_with("YES"), oracle.starts_with("YES"), "{solver}\n{oracle}");
            yes += solver.starts_with("YES") as usize;
        }
    }
    assert!(yes > 0);
}

#[test]
fn witness_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let w = dir.path().join("w.json");
    assert_eq!(call(&["gen-reduction", "--X", "3,3", "--side", "men", "--out", p(&g)]).0, EXIT_OK);
    let (code, out, _) = call(&["solve-coalition", "--instance", p(&g), "--manipulators", "2", "--out", p(&w)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("YES\n"), "{out}");
    assert!(out.contains("aggregate: 0 "), "{out}");
    let (code, out, _) = call(&["verify", "--instance", p(&g), "--witness", p(&w)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("OK\n"));

    // a ballot that ranks the target last
    let bad = "{\"target\": 0, \"ballots\": [[4,3,2,1,0],[4,3,2,1,0]]}";
    std::fs::write(&w, bad).unwrap();
    let (code, out, _) = call(&["verify", "--instance", p(&g), "--witness", p(&w)]);
    assert_eq!(code, EXIT_UNVERIFIED);
    assert!(out.starts_with("FAILED\n"), "{out}");
    assert!(out.contains("spouse: "), "{out}");
}

#[test]
fn women_gadget_with_two_voters() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    call(&["gen-reduction", "--X", "3,3", "--side", "women", "--out", p(&g)]);
    let (code, out, _) = call(&["oracle", "--instance", p(&g), "--manipulators", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("YES\n"), "{out}");
    let (code, out, _) = call(&["solve-coalition", "--instance", p(&g), "--manipulators", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("YES\n"), "{out}");
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    call(&["gen-reduction", "--X", "3,3", "--side", "men", "--out", p(&g)]);
    assert_eq!(call(&["oracle", "--instance", p(&g), "--budget", "10"]).0, EXIT_BUDGET);
    assert_eq!(call(&["solve-single", "--instance", p(&g), "--side", "women"]).0, EXIT_USAGE);
    assert_eq!(call(&["solve-single", "--instance", p(&g), "--target", "9"]).0, EXIT_USAGE);
    assert_eq!(call(&["solve-single"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["gen-reduction", "--X", "1,2", "--side", "men"]).0, EXIT_USAGE);
    let missing = dir.path().join("nope.json");
    let (code, _, err) = call(&["solve-single", "--instance", p(&missing)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot read"));
    std::fs::write(&missing, "{\"version\": 1}").unwrap();
    assert_eq!(call(&["solve-single", "--instance", p(&missing)]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn experiment_reports_no_single_disagreements() {
    let (code, out, _) = call(&["experiment", "--trials", "10", "--manipulators", "1"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), matchmanip::experiment::CSV_HEADER);
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3 * 2 * 2);
    for row in rows {
        assert!(row.ends_with(",0"), "{row}");
    }
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_matchmanip");
    let go = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let a = go(&["gen-random", "--k", "5", "--voters", "4", "--side", "women", "--seed", "77"]);
    let b = go(&["gen-random", "--k", "5", "--voters", "4", "--side", "women", "--seed", "77"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = go(&["gen-random", "--k", "5", "--voters", "4", "--side", "women", "--seed", "78"]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(go(&["nope"]).status.code(), Some(2));
}
