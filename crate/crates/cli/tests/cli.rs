use assert_cmd::Command;

fn siegel() -> Command {
    let mut cmd = Command::cargo_bin("siegel").expect("binary built");
    cmd.env_remove("SIEGEL_CACHE_DIR");
    cmd
}

fn stdout(cmd: &mut Command) -> String {
    String::from_utf8(cmd.assert().success().get_output().stdout.clone()).expect("utf8")
}

#[test]
fn covariant_a_prints_the_quadratic_invariant() {
    let out = stdout(siegel().args(["covariant", "A"]));
    assert_eq!(out, "120*a0*a6 - 20*a1*a5 + 8*a2*a4 - 3*a3^2\n");
}

#[test]
fn covariant_mod_three() {
    let out = stdout(siegel().args(["covariant", "A", "--prime", "3"]));
    assert_eq!(out, "a1*a5 + 2*a2*a4\n");
}

#[test]
fn covariant_c20_is_an_invariant_of_degree_two() {
    let out = stdout(siegel().args(["covariant", "C2,0", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["order"], 0);
}

#[test]
fn inline_polynomials_are_parsed() {
    let out = stdout(siegel().args(["covariant", "a0*x1^6 + a1*x1^5*x2 + a2*x1^4*x2^2 + a3*x1^3*x2^3 + a4*x1^2*x2^4 + a5*x1*x2^5 + a6*x2^6"]));
    assert!(out.starts_with("a0*x1^6"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    siegel().args(["covariant", "a0*+"]).assert().code(2);
}

#[test]
fn non_prime_modulus_is_a_usage_error() {
    siegel().args(["covariant", "A", "--prime", "4"]).assert().code(2);
}

#[test]
fn expand_chi68_matches_golden_file() {
    let out = stdout(siegel().args(["expand", "chi6_8", "--order", "2"]));
    assert_eq!(out, include_str!("../golden/chi6_8_N2.txt"));
}

#[test]
fn expand_defaults_to_order_two() {
    let out = stdout(siegel().args(["expand", "chi6_8"]));
    assert_eq!(out, include_str!("../golden/chi6_8_N2.txt"));
}

#[test]
fn expand_chi10_normalization() {
    let out = stdout(siegel().args(["expand", "chi10", "--order", "2"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("weight (0, 10), truncation 2"));
    assert_eq!(lines.next(), Some("q1*q2:"));
    assert_eq!(lines.next(), Some("  r^-1 - 2 + r"));
}

#[test]
fn expand_unknown_name_exits_2() {
    siegel().args(["expand", "nosuch"]).assert().code(2);
}

#[test]
fn expand_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = stdout(siegel().args(["expand", "psi4", "--order", "2", "--json", "--cache", d]));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 1);
    let second = stdout(siegel().args(["expand", "psi4", "--order", "2", "--json"]).env("SIEGEL_CACHE_DIR", d));
    let third = stdout(siegel().args(["expand", "psi4", "--order", "2", "--json", "--no-cache"]));
    assert_eq!(first, second);
    assert_eq!(first, third);
}

#[test]
fn verify_chi68_block_passes() {
    let out = stdout(siegel().args(["verify", "chi68-block"]));
    assert!(out.contains("PASS"));
}

#[test]
fn verify_even_ring_small() {
    let out = stdout(siegel().args(["verify", "even-ring", "--kmax", "20", "--json"]));
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r["status"] == "PASS"));
    assert_eq!(rows[10]["detail"]["dim"], 5);
}

#[test]
fn verify_char2_k_passes() {
    let out = stdout(siegel().args(["verify", "char2-K"]));
    assert!(out.contains("K2 = K1^2: PASS"));
    assert!(out.contains("K1 divides K4: PASS"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_char3_passes() {
    let out = stdout(siegel().args(["verify", "char3"]));
    assert!(out.contains("PASS"));
}

#[test]
fn nu_of_a_has_one_power() {
    let out = stdout(siegel().args(["nu", "A", "--order", "2"]));
    assert!(out.starts_with("chi10 power 1, holomorphic: true\nweight (0, 12)"));
}

#[test]
fn nu_power_above_degree_is_a_usage_error() {
    siegel().args(["nu", "A", "--power", "5"]).assert().code(2);
}
