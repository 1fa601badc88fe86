use std::io::Write;

use toric_gw::cli::run;

fn spec_path(name: &str) -> String {
    format!("{}/specs/{name}.geom", env!("CARGO_MANIFEST_DIR"))
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toric-gw").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn p1_recursion_matches_golden() {
    let p1 = spec_path("p1");
    let args = ["verify-recursion", "--geometry", &p1, "--kmax", "2", "--cutoff", "3", "--t-order", "0"];
    let (code, text, _) = invoke(&args);
    assert_eq!(code, 0);
    assert!(text.contains("checked 16, passed 16, skipped 6 (cutoff)"));
    let (code, machine, _) = invoke(&[&args[..], &["--format", "machine"]].concat());
    assert_eq!(code, 0);
    let golden = std::fs::read_to_string(format!("{}/tests/golden/cli_recursion_p1.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
    assert_eq!(machine, golden);
}

#[test]
fn gamma_terms() {
    let (code, text, _) = invoke(&["gamma", "--terms", "3"]);
    assert_eq!(code, 0);
    assert_eq!(text, "1 + 1/12*u + 1/288*u^2 - 139/51840*u^3\n");
    let (_, machine, _) = invoke(&["gamma", "--terms", "1", "--format", "machine"]);
    assert_eq!(machine, "k=0 coeff=1\nk=1 coeff=1/12\n");
}

#[test]
fn malformed_geometry_exits_2_with_position() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "K = 1\nN = 2\nm = 1 x").unwrap();
    let path = f.path().to_str().unwrap();
    let (code, _, err) = invoke(&["edges", "--geometry", path]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    let p1 = spec_path("p1");
    assert_eq!(invoke(&["edges"]).0, 2);
    assert_eq!(invoke(&["no-such-command"]).0, 2);
    assert_eq!(invoke(&["edges", "--geometry", &p1, "--lambda-line", "1,1"]).0, 2);
    assert_eq!(invoke(&["edges", "--geometry", &p1, "--lambda-line", "1,2,3"]).0, 2);
    assert_eq!(invoke(&["edges", "--geometry", &p1, "--cutoff", "-1"]).0, 2);
    assert_eq!(invoke(&["edges", "--geometry", &p1, "--kmax", "0"]).0, 2);
    // l1 - l2 and l1 - l3 are proportional on this line
    let p2 = spec_path("p2");
    let (code, _, err) = invoke(&["verify-recursion", "--geometry", &p2, "--lambda-line", "1,2,3"]);
    assert_eq!(code, 2);
    assert!(err.contains("lambda line"), "{err}");
}

#[test]
fn machine_output_is_deterministic() {
    for name in ["p2", "f1_bundle"] {
        let p = spec_path(name);
        let args = ["i-function", "--geometry", &p, "--cutoff", "2", "--t-order", "1", "--format", "machine"];
        let (c1, a, _) = invoke(&args);
        let (c2, b, _) = invoke(&args);
        assert_eq!((c1, c2), (0, 0));
        assert!(!a.is_empty());
        assert_eq!(a, b);
        assert!(a.lines().all(|l| l.split(' ').all(|f| f.contains('='))));
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("edges.txt");
    let p1 = spec_path("p1");
    let (code, stdout, _) = invoke(&["edges", "--geometry", &p1, "--out", target.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    assert_eq!(text, "edge {1} -> {2} j+=2 j-=1 chi=l1 - l2 d=(1)\nedge {2} -> {1} j+=1 j-=2 chi=-l1 + l2 d=(1)\n");
}

#[test]
fn stationary_phase_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# -x^2/2 + x^3\nsigma_sq = 1\nphase = 1\namplitude = 1\norder = 2").unwrap();
    let (code, text, _) = invoke(&["stationary-phase", "--input", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    // A_k = E[y^{6k}] / k!
    assert_eq!(text, "A0 = 1\nA1 = 15/2\nA2 = 3465/8\n");
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "sigma_sq = 1\nphase = 1 q").unwrap();
    let (code, _, err) = invoke(&["stationary-phase", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn quantum_and_mirror_map() {
    let p2 = spec_path("p2");
    let (code, text, _) = invoke(&["quantum", "--geometry", &p2]);
    assert_eq!(code, 0);
    assert!(text.contains("p1 * p1^2 = (q)*1"), "{text}");
    assert!(text.contains("checks: ok"));
    let bundle = spec_path("f1_bundle");
    let (code, text, _) = invoke(&["mirror-map", "--geometry", &bundle, "--format", "machine"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("mode=Nef conditions_met=true leading_ok=true trivial=true"), "{text}");
}

#[test]
fn unsupported_quantum_request_is_nonzero() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "name = F2\nK = 2\nN = 4\nm = 1 1 0 0; 0 -2 1 1\nomega = 1 1\ncutoff = 1\nlambda_line = 1 4 2 5").unwrap();
    let (code, _, err) = invoke(&["quantum", "--geometry", f.path().to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn all_passes_on_p1() {
    let p1 = spec_path("p1");
    let (code, text, _) = invoke(&["all", "--geometry", &p1, "--cutoff", "2", "--kmax", "2"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.ends_with("overall: ok\n"));
}
