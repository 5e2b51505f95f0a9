//! Identity suites run by `sigmod8 selfcheck`. Inputs are visited in
//! increasing size, so the first failure printed is a smallest one found.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sigmod8::fibration::{wall_form_general, wall_matrix_closed};
use sigmod8::random::{random_symplectic, random_unimodular, random_z4_quadratic};
use sigmod8::z2::nonsingular_forms;
use sigmod8::{IntForm, RatForm, RatMatrix, Symplectic, Z2Quadratic, Z4Quadratic, Z8};

use crate::{Outcome, EXIT_IDENTITY_FAILURE, EXIT_OK};

/// Dimension up to which the Z₂ suites enumerate every input.
const EXHAUSTIVE_DIM: usize = 3;
/// Largest fibre genus used by the Wall suite.
const MAX_GENUS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_dim: usize,
    pub trials: usize,
    pub seed: u64,
}

pub type ClosedForm = fn(&Symplectic, &Symplectic) -> sigmod8::Result<RatMatrix>;

/// Replaceable pieces, so a test can run the suites against a broken build.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub closed: ClosedForm,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks { closed: wall_matrix_closed }
    }
}

/// Cases checked, or the first counterexample.
type SuiteResult = Result<usize, String>;
type Suite<'a> = (&'static str, Box<dyn Fn() -> SuiteResult + 'a>);

fn suite_rng(config: &Config, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(index.wrapping_mul(0x9e37_79b9)))
}

fn z4_inputs(config: &Config, rng: &mut ChaCha8Rng, dim: usize) -> Vec<Z4Quadratic> {
    if dim <= EXHAUSTIVE_DIM {
        nonsingular_forms(dim).flat_map(|f| Z4Quadratic::all_on(&f).expect("small dimension")).collect()
    } else {
        (0..config.trials).map(|_| random_z4_quadratic(rng, dim)).collect()
    }
}

fn gauss_vs_classify(config: &Config) -> SuiteResult {
    let mut rng = suite_rng(config, 1);
    let mut cases = 0;
    for dim in 0..=config.max_dim {
        for q in z4_inputs(config, &mut rng, dim) {
            cases += 1;
            let gauss = q.bk_gauss().map_err(|e| format!("{q}: {e}"))?;
            let c = q.bk_classify().map_err(|e| format!("{q}: {e}"))?;
            if c.value() != gauss {
                return Err(format!("{q}: Gauss sum gives {gauss}, 4n + p+ - p- gives {}", c.value()));
            }
        }
    }
    Ok(cases)
}

fn bk_four_arf(config: &Config) -> SuiteResult {
    let mut rng = suite_rng(config, 2);
    let mut cases = 0;
    for dim in 0..=config.max_dim {
        if dim <= EXHAUSTIVE_DIM + 1 {
            for form in nonsingular_forms(dim).filter(|f| f.is_isotropic()) {
                for h in Z2Quadratic::all_on(&form).expect("isotropic") {
                    cases += 1;
                    let arf = h.arf().map_err(|e| format!("{h}: {e}"))?;
                    let bk = h.double().bk_gauss().map_err(|e| format!("{h}: {e}"))?;
                    if bk != arf.times_four() {
                        return Err(format!("{h}: BK(2h) = {bk}, 4 Arf = {}", arf.times_four()));
                    }
                }
            }
        }
        for q in z4_inputs(config, &mut rng, dim) {
            let Ok(sq) = q.isotropic_subquotient() else { continue };
            cases += 1;
            let bk = q.bk_gauss().map_err(|e| format!("{q}: {e}"))?;
            let arf = sq.quadratic.arf().map_err(|e| format!("{q}: {e}"))?;
            if bk != arf.times_four() {
                return Err(format!("{q}: BK = {bk}, 4 Arf(subquotient) = {}", arf.times_four()));
            }
        }
    }
    Ok(cases)
}

fn unimodular_inputs(config: &Config, index: u64) -> Vec<IntForm> {
    let mut rng = suite_rng(config, index);
    let max = config.max_dim + 3;
    let mut forms: Vec<IntForm> = (0..config.trials)
        .map(|_| {
            let dim = rng.gen_range(1..=max);
            random_unimodular(&mut rng, dim)
        })
        .collect();
    forms.sort_by_key(IntForm::dim);
    forms
}

fn van_der_blij(config: &Config) -> SuiteResult {
    let forms = unimodular_inputs(config, 3);
    for f in &forms {
        let sigma = Z8::new(f.signature_exact());
        let vv = f.van_der_blij_residue().map_err(|e| format!("{f}: {e}"))?;
        if sigma != vv {
            return Err(format!("form {f}: sigma = {sigma}, v·v = {vv} mod 8"));
        }
    }
    Ok(forms.len())
}

fn morita(config: &Config) -> SuiteResult {
    let forms = unimodular_inputs(config, 4);
    for f in &forms {
        let sigma = Z8::new(f.signature_exact());
        let q = f.reduce_to_enhanced().map_err(|e| format!("{f}: {e}"))?;
        let bk = q.bk_gauss().map_err(|e| format!("{f}: {e}"))?;
        if sigma != bk {
            return Err(format!("form {f}: sigma = {sigma}, BK = {bk} mod 8"));
        }
        if let Ok(sq) = q.isotropic_subquotient() {
            let four_arf = sq.quadratic.arf().map_err(|e| format!("{f}: {e}"))?.times_four();
            if four_arf != sigma {
                return Err(format!("form {f}: sigma = {sigma}, 4 Arf(subquotient) = {four_arf}"));
            }
        }
    }
    Ok(forms.len())
}

fn closed_vs_general(config: &Config, hooks: &Hooks) -> SuiteResult {
    let mut rng = suite_rng(config, 5);
    let max_h = config.max_dim.div_ceil(2).clamp(1, MAX_GENUS);
    let mut cases = 0;
    for h in 1..=max_h {
        let mut found = 0;
        let mut attempts = 0;
        while found < config.trials && attempts < 20 * config.trials.max(1) {
            attempts += 1;
            let f: Symplectic = random_symplectic(&mut rng, h, 4 * h + 4);
            let g: Symplectic = random_symplectic(&mut rng, h, 4 * h + 4);
            let Ok(s) = (hooks.closed)(&f, &g) else { continue };
            found += 1;
            let pair = || format!("f = {f}, g = {g}");
            let closed = RatForm::new(s).map_err(|e| format!("{}: closed form {e}", pair()))?.signature_exact();
            let general = wall_form_general(&f, &g).signature;
            if closed != general {
                return Err(format!("{}: closed form signature {closed}, general {general}", pair()));
            }
        }
        cases += found;
    }
    Ok(cases)
}

pub fn run(config: &Config, hooks: &Hooks) -> Outcome {
    let suites: [Suite; 5] = [
        ("gauss-vs-classify", Box::new(|| gauss_vs_classify(config))),
        ("bk-equals-4arf", Box::new(|| bk_four_arf(config))),
        ("van-der-blij", Box::new(|| van_der_blij(config))),
        ("morita", Box::new(|| morita(config))),
        ("wall-closed-vs-general", Box::new(|| closed_vs_general(config, hooks))),
    ];
    let mut out = String::new();
    writeln!(out, "selfcheck: max-dim {}, trials {}, seed {}", config.max_dim, config.trials, config.seed).unwrap();
    let mut failed = 0;
    for (name, suite) in &suites {
        match suite() {
            Ok(cases) => writeln!(out, "PASS {name} ({cases} cases)").unwrap(),
            Err(counterexample) => {
                failed += 1;
                writeln!(out, "FAIL {name}").unwrap();
                writeln!(out, "  counterexample: {counterexample}").unwrap();
            }
        }
    }
    writeln!(out, "{} of {} suites passed", suites.len() - failed, suites.len()).unwrap();
    Outcome { stdout: out, stderr: String::new(), code: if failed == 0 { EXIT_OK } else { EXIT_IDENTITY_FAILURE } }
}
