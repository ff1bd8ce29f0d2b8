//! Command-line contract: exit codes, output stability, formats.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let output = run(args);
    assert!(
        output.status.success(),
        "`permlab {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8_lossy(&output.stdout).trim_end().to_string()
}

#[test]
fn exit_codes() {
    // 0: success
    assert_eq!(run(&["stats", "1 2 3"]).status.code(), Some(0));
    // 1: parse and domain errors
    assert_eq!(run(&["stats", "4 4"]).status.code(), Some(1));
    assert_eq!(run(&["stats", "1 3"]).status.code(), Some(1));
    assert_eq!(run(&["apply", "theta", "3 2 1"]).status.code(), Some(1));
    assert_eq!(run(&["apply", "theta-inv", "1 3 2"]).status.code(), Some(1));
    assert_eq!(run(&["dyck", "tunnels", "du"]).status.code(), Some(1));
    assert_eq!(run(&["dyck", "from-perm", "3 2 1"]).status.code(), Some(1));
    // 2: usage errors
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["stats", "1 2 3", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["dist", "--n", "3", "--stats", "foo"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["dist", "--n", "3", "--stats", "crs", "--vars", "crs"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["dist", "--n", "3", "--stats", "crs", "--jobs", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["wilf", "--n-max", "3", "--patterns", "", "--stats", "nes"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["dist", "--n", "5", "--avoid", "321", "--stats", "exc,crs"],
        vec!["wilf", "--n-max", "5", "--patterns", "123,132,213,231,312,321", "--stats", "nes"],
        vec!["stats", "4 6 2 9 8 1 7 10 3 5"],
        vec!["dyck", "multitunnels", "ududuuuddudduudd"],
    ] {
        let first = stdout_of(&args);
        let second = stdout_of(&args);
        assert_eq!(first, second, "unstable output for {args:?}");
    }
}

#[test]
fn jobs_do_not_change_output() {
    let single = stdout_of(&["dist", "--n", "7", "--stats", "crs,nes", "--jobs", "1"]);
    let parallel = stdout_of(&["dist", "--n", "7", "--stats", "crs,nes", "--jobs", "4"]);
    assert_eq!(single, parallel);
}

#[test]
fn jobs_env_variable() {
    let output = bin()
        .args(["dist", "--n", "4", "--stats", "crs", "--pretty"])
        .env("PERMLAB_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));

    let output = bin()
        .args(["dist", "--n", "4", "--stats", "crs"])
        .env("PERMLAB_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    // explicit flag wins over a bad environment value
    let output = bin()
        .args(["dist", "--n", "4", "--stats", "crs", "--jobs", "1"])
        .env("PERMLAB_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn csv_formats() {
    assert_eq!(
        stdout_of(&["stats", "3 2 1", "--format", "csv"]),
        "fp,exc,crs,nes,inv,maj\n1,1,0,1,3,3"
    );
    assert_eq!(
        stdout_of(&["dist", "--n", "4", "--avoid", "123", "--stats", "crs", "--format", "csv"]),
        "x,coeff\n0,7\n1,6\n2,1"
    );
    assert_eq!(
        stdout_of(&["apply", "r", "1 2 3", "--format", "csv"]),
        "output\n3 2 1"
    );
    let wilf = stdout_of(&[
        "wilf", "--n-max", "4", "--patterns", "132,213,321", "--stats", "nes", "--format", "csv",
    ]);
    assert_eq!(wilf, "class,pattern\n1,1 3 2\n1,2 1 3\n2,3 2 1");
}

#[test]
fn pretty_and_edge_cases() {
    assert_eq!(stdout_of(&["dist", "--n", "0", "--stats", "crs", "--pretty"]), "1");
    assert_eq!(
        stdout_of(&["dist", "--n", "3", "--avoid", "321", "--stats", "exc,crs", "--pretty"]),
        "1+2q+q^2+qp"
    );
    assert_eq!(stdout_of(&["catalan", "--n", "1", "--pretty"]), "1");
    assert_eq!(stdout_of(&["catalan", "--n", "2", "--pretty"]), "1+q");
}

#[test]
fn catalan_modes_agree() {
    for n in 0..=10 {
        let n_text = n.to_string();
        let recurrence = stdout_of(&["catalan", "--n", &n_text, "--pretty"]);
        let cfrac = stdout_of(&["catalan", "--n", &n_text, "--mode", "cfrac", "--pretty"]);
        let enumerated = stdout_of(&["catalan", "--n", &n_text, "--mode", "enumerate", "--pretty"]);
        assert_eq!(recurrence, cfrac, "modes differ at n={n}");
        assert_eq!(recurrence, enumerated, "modes differ at n={n}");
    }
}

#[test]
fn apply_identities() {
    // rci then theta equals gamma
    let rci = stdout_of(&["apply", "rci", "4 1 6 2 7 3 5"]);
    let rci_value: serde_json::Value = serde_json::from_str(&rci).unwrap();
    let via_theta = stdout_of(&["apply", "theta", rci_value["output"].as_str().unwrap()]);
    let gamma = stdout_of(&["apply", "gamma", "4 1 6 2 7 3 5"]);
    let via_theta: serde_json::Value = serde_json::from_str(&via_theta).unwrap();
    let gamma: serde_json::Value = serde_json::from_str(&gamma).unwrap();
    assert_eq!(via_theta["output"], gamma["output"]);

    // theta-inv ∘ theta is the identity
    let theta = stdout_of(&["apply", "theta", "2 4 1 3 5 8 6 7"]);
    let theta: serde_json::Value = serde_json::from_str(&theta).unwrap();
    let back = stdout_of(&["apply", "theta-inv", theta["output"].as_str().unwrap()]);
    let back: serde_json::Value = serde_json::from_str(&back).unwrap();
    assert_eq!(back["output"], "2 4 1 3 5 8 6 7");

    // psi emits its tableau pair as the trace
    let psi = stdout_of(&["apply", "psi", "2 4 1 3 5 8 6 7", "--trace"]);
    let psi: serde_json::Value = serde_json::from_str(&psi).unwrap();
    assert_eq!(psi["output"], "ududuuuddudduudd");
    assert_eq!(psi["trace"]["p"], serde_json::json!([[1, 3, 5, 6, 7], [2, 4, 8]]));
}

#[test]
fn verify_command_small_bound() {
    let output = run(&["verify", "--n-max", "4", "--jobs", "4"]);
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("PASS stat-identity-inv"));
    assert!(text.contains("0 failed"));

    let csv = stdout_of(&["verify", "--n-max", "3", "--format", "csv"]);
    assert!(csv.starts_with("check,pass"));
    assert!(csv.contains("\ntheta-routes-agree,true"));
}
