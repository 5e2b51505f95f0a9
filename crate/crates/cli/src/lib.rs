//! Batch front end: invariant reports for input files, bundle signatures,
//! and the randomized identity suites.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use sigmod8::text::{self, Document, TextError};
use sigmod8::{Complex, Error, IntForm, Monodromy, RatForm, Z2Quadratic, Z2SymForm, Z4Quadratic};

pub mod selfcheck;

pub const EXIT_OK: u8 = 0;
pub const EXIT_IDENTITY_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "sigmod8", version, about = "Signature invariants modulo 8")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the invariants of a form, enhancement or complex file.
    Invariants {
        path: PathBuf,
        /// Input format; defaults to the header keyword.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Signature of a surface bundle given by monodromy.
    Bundle { path: PathBuf },
    /// Run the identity suites on seeded random input.
    Selfcheck {
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Z2form,
    Z4q,
    Z2q,
    Intform,
    Ratform,
    Symcomplex,
}

impl Kind {
    fn keyword(self) -> &'static str {
        match self {
            Kind::Z2form => "z2form",
            Kind::Z4q => "z4q",
            Kind::Z2q => "z2q",
            Kind::Intform => "intform",
            Kind::Ratform => "ratform",
            Kind::Symcomplex => "symcomplex",
        }
    }
}

/// Text for stdout, text for stderr, exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn error(code: u8, message: String) -> Self {
        Outcome { stdout: String::new(), stderr: message + "\n", code }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Invariants { path, kind } => invariants(path, *kind),
        Command::Bundle { path } => bundle(path),
        Command::Selfcheck { max_dim, trials, seed } => {
            let config = selfcheck::Config { max_dim: *max_dim, trials: *trials, seed: *seed };
            selfcheck::run(&config, &selfcheck::Hooks::default())
        }
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome::error(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn text_error(path: &Path, e: TextError) -> Outcome {
    match e {
        TextError::Parse(p) => Outcome::error(EXIT_PARSE, format!("parse error: {p}")),
        TextError::Invalid(err) => Outcome::error(EXIT_PRECONDITION, format!("{}: {err}", path.display())),
    }
}

fn invariants(path: &Path, kind: Option<Kind>) -> Outcome {
    let text = match read(path) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let name = path.display().to_string();
    let doc = match text::parse_document(&name, &text, kind.map(Kind::keyword)) {
        Ok(d) => d,
        Err(e) => return text_error(path, e),
    };
    let mut out = String::new();
    writeln!(out, "file = {name}").unwrap();
    writeln!(out, "kind = {}", doc.kind()).unwrap();
    let result = match &doc {
        Document::Z2Form(f) => z2form_report(f, &mut out),
        Document::Z2Q(h) => z2q_report(h, &mut out),
        Document::Z4Q(q) => z4q_report(q, &mut out),
        Document::IntForm(f) => intform_report(f, &mut out),
        Document::RatForm(f) => ratform_report(f, &mut out),
        Document::Complex(c) => complex_report(c, &mut out),
        Document::Monodromy(_) => Err(Error::ShapeMismatch("monodromy files are read by the bundle command".into())),
    };
    match result {
        Ok(()) => Outcome::ok(out),
        Err(e) => Outcome { stdout: out, stderr: format!("{name}: {e}\n"), code: EXIT_PRECONDITION },
    }
}

fn bits(v: &sigmod8::Z2Vec) -> String {
    format!("({})", v.to_bits().iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" "))
}

fn z2form_report(f: &Z2SymForm, out: &mut String) -> sigmod8::Result<()> {
    writeln!(out, "dim = {}", f.dim()).unwrap();
    writeln!(out, "nonsingular = {}", f.is_nonsingular()).unwrap();
    writeln!(out, "isotropic = {}", f.is_isotropic()).unwrap();
    if !f.is_nonsingular() {
        return Err(Error::SingularForm);
    }
    writeln!(out, "wu class = {}", bits(&f.wu_class()?)).unwrap();
    let (p, h) = f.decompose()?;
    writeln!(out, "decomposition: {p}·P + {h}·H").unwrap();
    writeln!(out, "witt = {}", f.witt_class_sym()?).unwrap();
    Ok(())
}

fn z2q_report(h: &Z2Quadratic, out: &mut String) -> sigmod8::Result<()> {
    writeln!(out, "dim = {}", h.dim()).unwrap();
    let arf = h.arf()?;
    writeln!(out, "Arf = {arf}").unwrap();
    writeln!(out, "BK(2h) = {}", h.double().bk_gauss()?).unwrap();
    writeln!(out, "4·Arf = {}", arf.times_four()).unwrap();
    Ok(())
}

fn z4q_report(q: &Z4Quadratic, out: &mut String) -> sigmod8::Result<()> {
    writeln!(out, "dim = {}", q.dim()).unwrap();
    let c = q.bk_classify()?;
    writeln!(out, "BK = {}", q.witt_class()?.value).unwrap();
    writeln!(out, "classification: m = {}, n = {}, p+ = {}, p- = {}, 4n + p+ - p- = {}", c.m, c.n, c.p_plus, c.p_minus, c.value()).unwrap();
    let v = q.form().wu_class()?;
    writeln!(out, "wu class = {}", bits(&v)).unwrap();
    match q.isotropic_subquotient() {
        Ok(sq) => {
            writeln!(out, "wu-sublagrangian: span {}", bits(&v)).unwrap();
            writeln!(out, "subquotient dim = {}", sq.quadratic.dim()).unwrap();
            writeln!(out, "Arf(subquotient) = {}", sq.quadratic.arf()?).unwrap();
        }
        Err(Error::NotDivisibleBy4 { qv }) => writeln!(out, "wu-sublagrangian: undefined (q(v)={qv})").unwrap(),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn intform_report(f: &IntForm, out: &mut String) -> sigmod8::Result<()> {
    writeln!(out, "dim = {}", f.dim()).unwrap();
    writeln!(out, "det = {}", f.det()).unwrap();
    let sigma = f.signature_exact();
    writeln!(out, "sigma = {sigma}").unwrap();
    writeln!(out, "sigma mod 8 = {}", sigma.rem_euclid(8)).unwrap();
    writeln!(out, "even = {}", f.is_even()).unwrap();
    writeln!(out, "unimodular = {}", f.is_unimodular()).unwrap();
    if f.is_unimodular() {
        let v: Vec<String> = f.characteristic_vector()?.iter().map(ToString::to_string).collect();
        writeln!(out, "characteristic vector = ({})", v.join(" ")).unwrap();
        writeln!(out, "v·v mod 8 = {}", f.van_der_blij_residue()?).unwrap();
        let q = f.reduce_to_enhanced()?;
        writeln!(out, "BK = {}", q.witt_class()?.value).unwrap();
        match q.isotropic_subquotient() {
            Ok(sq) => {
                writeln!(out, "subquotient dim = {}", sq.quadratic.dim()).unwrap();
                writeln!(out, "Arf(subquotient) = {}", sq.quadratic.arf()?).unwrap();
            }
            Err(Error::NotDivisibleBy4 { qv }) => writeln!(out, "Arf(subquotient): undefined (q(v)={qv})").unwrap(),
            Err(e) => return Err(e),
        }
    } else if f.is_even() && !f.det().is_zero() {
        let lf = f.boundary_linking_form()?;
        let orders: Vec<String> = lf.orders().iter().map(|d| format!("Z/{d}")).collect();
        writeln!(out, "boundary group = {}", if orders.is_empty() { "0".to_string() } else { orders.join(" + ") }).unwrap();
        let qs: Vec<String> = lf.q().iter().map(ToString::to_string).collect();
        writeln!(out, "boundary q = ({})", qs.join(" ")).unwrap();
        writeln!(out, "BK(boundary) = {}", lf.bk_linking()?).unwrap();
    }
    Ok(())
}

fn ratform_report(f: &RatForm, out: &mut String) -> sigmod8::Result<()> {
    let (pos, neg, zero) = f.inertia();
    writeln!(out, "dim = {}", f.dim()).unwrap();
    writeln!(out, "inertia = ({pos}, {neg}, {zero})").unwrap();
    writeln!(out, "sigma = {}", f.signature_exact()).unwrap();
    Ok(())
}

fn complex_report(c: &Complex, out: &mut String) -> sigmod8::Result<()> {
    writeln!(out, "dim = {}", c.dim()).unwrap();
    let report = c.validate_structure();
    writeln!(out, "structure valid = {}", report.is_valid()).unwrap();
    if !report.is_valid() {
        return Err(Error::InvalidClass(report.to_string()));
    }
    let ranks: Vec<String> = (0..=c.dim()).map(|m| c.cohomology_mod2(m).len().to_string()).collect();
    writeln!(out, "H^*(C; Z2) ranks = ({})", ranks.join(" ")).unwrap();
    if c.dim().is_multiple_of(4) {
        let k2 = c.dim() / 2;
        for (i, x) in c.cohomology_mod2(k2).iter().enumerate() {
            writeln!(out, "P2(x{}) = {}", i + 1, c.pontryagin_square(x)?).unwrap();
        }
        match c.wu_and_mod4_signature() {
            Ok(w) => {
                writeln!(out, "sigma = {}", w.signature).unwrap();
                writeln!(out, "P2(v) = {}", w.pontryagin).unwrap();
                writeln!(out, "sigma = P2(v) mod 4: {}", w.is_consistent()).unwrap();
            }
            Err(Error::NotMiddleConcentrated) => writeln!(out, "sigma = P2(v) mod 4: not checked (complex is not middle-concentrated)").unwrap(),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn bundle(path: &Path) -> Outcome {
    let text = match read(path) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let name = path.display().to_string();
    let m: Monodromy = match text::parse_monodromy(&name, &text) {
        Ok(m) => m,
        Err(e) => return text_error(path, e),
    };
    let report = m.bundle_report();
    let mut out = String::new();
    writeln!(out, "file = {name}").unwrap();
    writeln!(out, "fibre genus = {}", m.fibre_genus()).unwrap();
    writeln!(out, "base genus = {}", m.base_genus()).unwrap();
    for (i, s) in report.handles.iter().enumerate() {
        writeln!(out, "handle {}: {s:+}", i + 1).unwrap();
    }
    writeln!(out, "handle sum = {}", report.handle_total).unwrap();
    writeln!(out, "total = {}", report.signature).unwrap();
    writeln!(out, "z4-trivial = {}", report.z4_trivial).unwrap();
    writeln!(out, "z2-trivial = {}", report.z2_trivial).unwrap();
    if report.signature.rem_euclid(4) != 0 {
        writeln!(out, "warning: total is not 0 mod 4").unwrap();
    }
    Outcome::ok(out)
}
