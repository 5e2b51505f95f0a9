use sigmod8::fibration::wall_matrix_closed;
use sigmod8::{RatMatrix, Symplectic};
use sigmod8_cli::selfcheck::{run, Config, Hooks};
use sigmod8_cli::{EXIT_IDENTITY_FAILURE, EXIT_OK};

fn flipped(f: &Symplectic, g: &Symplectic) -> sigmod8::Result<RatMatrix> {
    wall_matrix_closed(f, g).map(|s| s.neg())
}

#[test]
fn default_hooks_pass() {
    let out = run(&Config { max_dim: 4, trials: 20, seed: 7 }, &Hooks::default());
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
}

#[test]
fn sign_flipped_closed_form_is_caught() {
    let out = run(&Config { max_dim: 5, trials: 50, seed: 0 }, &Hooks { closed: flipped });
    assert_eq!(out.code, EXIT_IDENTITY_FAILURE);
    assert!(out.stdout.contains("FAIL wall-closed-vs-general"), "{}", out.stdout);
    assert!(out.stdout.contains("counterexample: f = "), "{}", out.stdout);
    assert_eq!(out.stdout.matches("FAIL").count(), 1, "{}", out.stdout);
}
