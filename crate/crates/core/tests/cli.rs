mod common;

use common::*;

fn path(name: &str) -> String {
    program_path(name).to_str().unwrap().to_string()
}

#[test]
fn help_and_version_succeed() {
    let (code, stdout, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("translate"));
    let (code, stdout, _) = run_cli(&["translate", "--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("--no-simplify"));
    let (code, stdout, _) = run_cli(&["--version"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("anthem "));
}

#[test]
fn input_errors_exit_with_one() {
    let (code, stdout, stderr) = run_cli(&["translate", "--frobnicate", &path("union")]);
    assert_eq!((code, stdout.as_str()), (1, ""));
    assert!(stderr.contains("--frobnicate"));

    let (code, stdout, stderr) = run_cli(&["translate", "/nonexistent/input.lp"]);
    assert_eq!((code, stdout.as_str()), (1, ""));
    assert!(
        stderr.starts_with("error: cannot read /nonexistent/input.lp"),
        "{stderr}"
    );

    let dir = std::env::temp_dir().join(format!("anthem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.lp");
    std::fs::write(&broken, "p(X :- q.").unwrap();
    let (code, _, stderr) = run_cli(&["translate", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("broken.lp"), "{stderr}");

    let unsafe_rule = dir.join("unsafe.lp");
    std::fs::write(&unsafe_rule, "p(X) :- not q(X).").unwrap();
    let (code, _, stderr) = run_cli(&["translate", unsafe_rule.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.starts_with("error:"), "{stderr}");

    let (code, _, _) = run_cli(&[]);
    assert_eq!(code, 1);
}

#[test]
fn warnings_go_to_the_diagnostic_stream() {
    let (code, stdout, stderr) = run_cli(&["translate", &path("cycle")]);
    assert_eq!(code, 0);
    assert_eq!(
        stderr,
        "warning: cannot hide predicate \u{201c}q/0\u{201d} due to circular dependency\n"
    );
    assert!(!stdout.contains("warning"));
    assert!(stdout.contains("r <-> "));
}

#[test]
fn several_files_are_concatenated() {
    let dir = std::env::temp_dir().join(format!("anthem-concat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("first.lp");
    let second = dir.join("second.lp");
    std::fs::write(&first, "s(X) :- p(X).\n#external p(1).\n").unwrap();
    std::fs::write(&second, "s(X) :- q(X).\n#external q(1).\n").unwrap();
    let (code, stdout, _) = run_cli(&[
        "translate",
        first.to_str().unwrap(),
        second.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(normalize(&stdout), normalize(&expected_output("union")));
}

#[test]
fn rule_by_rule_output() {
    let (code, stdout, stderr) = run_cli(&["translate", "--no-complete", &path("choice")]);
    assert_eq!(code, 0);
    assert_eq!(stderr, "");
    assert_eq!(
        stdout,
        "forall V1 (V1 = a -> p(V1))\nforall V2 (q(V2) -> V2 = a)\n"
    );
}

#[test]
fn switches_change_the_output() {
    let default = run_cli(&["translate", &path("primes")]).1;
    let plain = run_cli(&[
        "translate",
        "--no-simplify",
        "--no-detect-integers",
        &path("primes"),
    ])
    .1;
    assert_ne!(default, plain);
    assert!(!plain.contains("int("));
    let no_integers = run_cli(&["translate", "--no-detect-integers", &path("primes")]).1;
    assert!(!no_integers.contains("int(") && !no_integers.contains("N1"));
}

#[test]
fn verify_reports_verdicts() {
    let (code, stdout, _) = run_cli(&[
        "verify",
        &path("union"),
        "--domain",
        "a,b",
        "--int-window",
        "0..0",
        "--external",
        "p=a",
        "--external",
        "q=a;b",
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert_eq!(stdout, "holds: 1 model(s) on both sides\n");

    let (code, stdout, _) = run_cli(&[
        "verify",
        &path("primes"),
        "--const",
        "n=10",
        "--domain",
        "",
        "--int-window",
        "0..12",
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert_eq!(stdout, "holds: 1 model(s) on both sides\n");

    let dir = std::env::temp_dir().join(format!("anthem-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let loop_file = dir.join("loop.lp");
    std::fs::write(&loop_file, "p :- p.").unwrap();
    let (code, stdout, _) = run_cli(&[
        "verify",
        loop_file.to_str().unwrap(),
        "--int-window",
        "0..0",
    ]);
    assert_eq!(code, 2);
    assert_eq!(stdout, "not tight: p -> p\n");
}
