//! End-to-end checks of the command-line contract: subcommands, exit codes,
//! and export stability.

use std::process::Command;

fn mcg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcg"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = mcg().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
    )
}

#[test]
fn verify_default_genus_three_passes() {
    let (code, stdout, _) = run(&["--genus", "3", "verify"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("ok   lantern relation"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn verify_injected_flip_fails_with_one() {
    let (code, stdout, _) = run(&["--genus", "3", "verify", "--inject-flip", "x1"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL"));
}

#[test]
fn verify_neutralized_j3_fails() {
    let (code, stdout, _) = run(&["--genus", "3", "verify", "--neutralize", "J3"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL beta twist from involutions"));
}

#[test]
fn involution_suite_needs_genus_three() {
    let (code, _, stderr) = run(&["--genus", "2", "verify", "--suite", "involutions"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("genus >= 3"), "stderr: {stderr}");
}

#[test]
fn basic_suite_at_genus_two_passes() {
    let (code, stdout, _) = run(&["--genus", "2", "verify", "--suite", "basic"]);
    assert_eq!(code, 0, "stdout: {stdout}");
}

#[test]
fn orders_pass_and_report_divisibility() {
    let (code, stdout, _) = run(&["--genus", "2,3", "orders"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("divides 8"));
    assert!(stdout.contains("divides 14"));
    assert!(stdout.contains("equals 3"));
}

#[test]
fn generate_small_battery() {
    let (code, stdout, _) = run(&[
        "--genus", "3", "--primes", "2,3", "generate", "--sets", "wajnryb_pair,three_torsion",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert_eq!(stdout.matches("generates").count(), 4);
}

#[test]
fn generate_unknown_set_is_config_error() {
    let (code, _, _) = run(&["--genus", "3", "generate", "--sets", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn generate_budget_exceeded_is_exit_three() {
    let (code, _, stderr) = run(&[
        "--genus", "3", "--primes", "3", "--orbit-budget", "100", "generate", "--sets",
        "wajnryb_pair",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("orbit budget"), "stderr: {stderr}");
}

#[test]
fn nonprime_is_config_error() {
    let (code, _, stderr) = run(&["--genus", "3", "--primes", "6", "generate"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not prime"));
}

#[test]
fn coxeter_prints_rotation_order() {
    let (code, stdout, _) = run(&["--genus", "3", "coxeter", "--json"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(
        stdout.lines().skip_while(|l| !l.starts_with('[')).collect::<Vec<_>>().join("\n").as_str(),
    )
    .expect("json output");
    let entries = parsed[0]["entries"].as_array().unwrap();
    // rho1, rho2 are the first two names; their product is the rotation
    assert_eq!(entries[0][1].as_str().unwrap(), "3");
    assert_eq!(entries[0][0].as_str().unwrap(), "1");
}

#[test]
fn export_is_bit_stable_and_reimportable() {
    let dir = std::env::temp_dir().join(format!("mcg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p1 = dir.join("bundle1.json");
    let p2 = dir.join("bundle2.json");
    let (c1, _, _) = run(&["--genus", "3", "--seed", "5", "export", "--out", p1.to_str().unwrap()]);
    let (c2, _, _) = run(&["--genus", "3", "--seed", "5", "export", "--out", p2.to_str().unwrap()]);
    assert_eq!((c1, c2), (0, 0));
    let b1 = std::fs::read(&p1).unwrap();
    let b2 = std::fs::read(&p2).unwrap();
    assert_eq!(b1, b2, "export must be byte-identical for a fixed config");

    // re-import reproduces every stored verdict
    let bundle = mcg_core::export::bundle_from_str(std::str::from_utf8(&b1).unwrap()).unwrap();
    for (name, held, stored) in mcg_core::export::reverify_bundle(&bundle).unwrap() {
        assert!(held && stored, "verdict drift for {name}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_json_mode_emits_parseable_checks() {
    let (code, stdout, _) = run(&["--genus", "3", "--json", "verify"]);
    assert_eq!(code, 0);
    let start = stdout.find('[').expect("json array");
    let parsed: serde_json::Value = serde_json::from_str(&stdout[start..]).unwrap();
    let checks = parsed[0]["checks"].as_array().unwrap();
    assert!(checks.len() >= 14);
    assert!(checks.iter().all(|c| c["verdict"]["status"] == "holds"));
}
