use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn sigmod8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmod8")).args(args).output().expect("binary runs")
}

fn invariants(name: &str) -> (String, i32) {
    let out = sigmod8(&["invariants", fixture(name).to_str().unwrap()]);
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn has_line(text: &str, line: &str) -> bool {
    text.lines().any(|l| l == line)
}

#[test]
fn four_ones_report() {
    let (out, code) = invariants("four_ones.intform");
    assert_eq!(code, 0);
    for line in ["sigma = 4", "sigma mod 8 = 4", "BK = 4", "Arf(subquotient) = 1", "characteristic vector = (1 1 1 1)"] {
        assert!(has_line(&out, line), "missing `{line}` in\n{out}");
    }
}

#[test]
fn rank_one_enhancement_report() {
    let (out, code) = invariants("p1.z4q");
    assert_eq!(code, 0);
    assert!(has_line(&out, "BK = 1"), "{out}");
    assert!(has_line(&out, "wu-sublagrangian: undefined (q(v)=1)"), "{out}");
}

#[test]
fn hyperbolic_form_report() {
    let (out, code) = invariants("h.z2form");
    assert_eq!(code, 0);
    assert!(has_line(&out, "decomposition: 0·P + 1·H"), "{out}");
    assert!(has_line(&out, "witt = 0"), "{out}");
}

#[test]
fn other_kinds() {
    let (out, _) = invariants("arf_one.z2q");
    assert!(has_line(&out, "Arf = 1") && has_line(&out, "BK(2h) = 4"), "{out}");
    let (out, _) = invariants("e8.intform");
    assert!(has_line(&out, "sigma = 8") && has_line(&out, "BK = 0") && has_line(&out, "even = true"), "{out}");
    let (out, _) = invariants("four.intform");
    assert!(has_line(&out, "boundary group = Z/4") && has_line(&out, "BK(boundary) = 1"), "{out}");
    let (out, _) = invariants("wall.ratform");
    assert!(has_line(&out, "sigma = 2"), "{out}");
    let (out, code) = invariants("two_degree.symcomplex");
    assert_eq!(code, 0);
    assert!(has_line(&out, "P2(x1) = 3") && has_line(&out, "structure valid = true"), "{out}");
}

#[test]
fn kind_flag_overrides_and_mismatches() {
    let path = fixture("h.z2form");
    let out = sigmod8(&["invariants", "--kind", "z2form", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = sigmod8(&["invariants", "--kind", "intform", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("h.z2form:1: expected `intform` header"), "{err}");
}

#[test]
fn parse_errors_exit_2_with_location() {
    let out = sigmod8(&["invariants", fixture("bad_token.intform").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad_token.intform:3: expected integers, found `x`"), "{err}");
    let out = sigmod8(&["invariants", fixture("missing.intform").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundle_reports() {
    let out = sigmod8(&["bundle", fixture("example1.monodromy").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(has_line(&text, "handle 1: +2") && has_line(&text, "handle 2: -2"), "{text}");
    assert!(has_line(&text, "z4-trivial = false"), "{text}");

    let out = sigmod8(&["bundle", fixture("identity.monodromy").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(has_line(&text, "total = 0") && has_line(&text, "z4-trivial = true"), "{text}");
}

#[test]
fn commutator_violation_exits_3() {
    let out = sigmod8(&["bundle", fixture("bad_relation.monodromy").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("[[3, -1], [1, 0]]"), "{err}");
}

#[test]
fn selfcheck_passes_and_is_deterministic() {
    let a = sigmod8(&["selfcheck"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let b = sigmod8(&["selfcheck", "--max-dim", "5", "--trials", "50", "--seed", "0"]);
    assert_eq!(a.stdout, b.stdout);
    let small = sigmod8(&["selfcheck", "--max-dim", "3"]);
    assert_eq!(small.status.code(), Some(0));
}

#[test]
fn reports_are_byte_deterministic() {
    let path = fixture("example2.monodromy");
    let a = sigmod8(&["bundle", path.to_str().unwrap()]);
    let b = sigmod8(&["bundle", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}
