//! Line-oriented text formats for forms, enhancements, complexes and
//! monodromy. `#` starts a comment; blank lines are ignored.
//!
//! ```text
//! z2form <dim>        dim rows of 0/1
//! z2q <dim>           form rows, then dim values in {0,1}
//! z4q <dim>           form rows, then dim values in {0,1,2,3}
//! intform <dim>       dim rows of integers
//! ratform <dim>       dim rows of rationals p/q
//! symcomplex <n>      n+1 ranks, then blocks `d r`, `phi0 r`, `phi1 r`
//! monodromy <h> <g>   2g matrices of size 2h, ordered f1 g1 f2 g2 ...
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::enhancements::{Z2Quadratic, Z4Quadratic};
use crate::error::Error;
use crate::fibration::{MonodromyData, SymplecticMatrix};
use crate::intforms::{IntSymForm, RatSymForm};
use crate::matrix::Matrix;
use crate::residue::{Z2, Z4};
use crate::symcomplex::SymComplex;
use crate::z2::Z2SymForm;

/// Syntax error with its location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected {}, found {}", self.file, self.line, self.expected, self.found)
    }
}

impl std::error::Error for ParseError {}

/// Either the text is malformed or it describes an invalid object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TextError {
    Parse(ParseError),
    Invalid(Error),
}

impl fmt::Display for TextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TextError::Parse(e) => write!(f, "{e}"),
            TextError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for TextError {}

impl From<ParseError> for TextError {
    fn from(e: ParseError) -> Self {
        TextError::Parse(e)
    }
}

impl From<Error> for TextError {
    fn from(e: Error) -> Self {
        TextError::Invalid(e)
    }
}

type TextResult<T> = std::result::Result<T, TextError>;

/// Any of the supported inputs.
#[derive(Clone, Debug)]
pub enum Document {
    Z2Form(Z2SymForm),
    Z2Q(Z2Quadratic),
    Z4Q(Z4Quadratic),
    IntForm(IntSymForm<BigInt>),
    RatForm(RatSymForm<BigRational>),
    Complex(SymComplex<BigInt>),
    Monodromy(MonodromyData<BigInt>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Z2Form(_) => "z2form",
            Document::Z2Q(_) => "z2q",
            Document::Z4Q(_) => "z4q",
            Document::IntForm(_) => "intform",
            Document::RatForm(_) => "ratform",
            Document::Complex(_) => "symcomplex",
            Document::Monodromy(_) => "monodromy",
        }
    }
}

struct Lines<'a> {
    file: &'a str,
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(file: &'a str, text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                let toks: Vec<&str> = l.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        Lines { file, lines, pos: 0 }
    }

    fn error(&self, line: usize, expected: impl Into<String>, found: impl Into<String>) -> ParseError {
        ParseError { file: self.file.to_string(), line, expected: expected.into(), found: found.into() }
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }

    fn next(&mut self, expected: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l.clone())
            }
            None => Err(self.error(self.last_line(), expected, "end of file")),
        }
    }

    fn peek_line(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek_line() {
            Some((n, toks)) => Err(self.error(*n, "end of file", toks.join(" "))),
            None => Ok(()),
        }
    }

    /// A line of exactly `width` values.
    fn row<V>(&mut self, width: usize, what: &str, parse: impl Fn(&str) -> Option<V>) -> Result<Vec<V>, ParseError> {
        let expected = format!("{width} {what}");
        let (n, toks) = self.next(&expected)?;
        if toks.len() != width {
            return Err(self.error(n, expected, format!("{} tokens", toks.len())));
        }
        toks.iter().map(|t| parse(t).ok_or_else(|| self.error(n, what.to_string(), format!("`{t}`")))).collect()
    }

    fn matrix<V>(&mut self, rows: usize, cols: usize, what: &str, parse: impl Fn(&str) -> Option<V> + Copy) -> Result<Vec<Vec<V>>, ParseError> {
        (0..rows).map(|_| self.row(cols, what, parse)).collect()
    }

    /// Header line `keyword a b ...` with `arity` non-negative integers.
    fn header(&mut self, keyword: &str, arity: usize) -> Result<Vec<usize>, ParseError> {
        let expected = format!("`{keyword}` header with {arity} size(s)");
        let (n, toks) = self.next(&expected)?;
        if toks[0] != keyword || toks.len() != arity + 1 {
            return Err(self.error(n, expected, format!("`{}`", toks.join(" "))));
        }
        toks[1..].iter().map(|t| t.parse::<usize>().map_err(|_| self.error(n, "non-negative integer", format!("`{t}`")))).collect()
    }
}

fn parse_bit(t: &str) -> Option<i64> {
    match t {
        "0" => Some(0),
        "1" => Some(1),
        _ => None,
    }
}

fn parse_z4(t: &str) -> Option<Z4> {
    t.parse::<u8>().ok().filter(|&v| v < 4).map(|v| Z4::new(v as i64))
}

fn parse_int(t: &str) -> Option<BigInt> {
    BigInt::from_str(t).ok()
}

fn parse_rational(t: &str) -> Option<BigRational> {
    match t.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (parse_int(p)?, parse_int(q)?);
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => parse_int(t).map(BigRational::from_integer),
    }
}

fn int_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> Matrix<BigInt> {
    Matrix::from_fn(r, c, |i, j| rows[i][j].clone())
}

fn z2_form(lines: &mut Lines, dim: usize) -> TextResult<Z2SymForm> {
    let rows = lines.matrix(dim, dim, "0/1 entries", parse_bit)?;
    Ok(Z2SymForm::from_rows(&rows)?)
}

pub fn parse_z2form(file: &str, text: &str) -> TextResult<Z2SymForm> {
    let mut lines = Lines::new(file, text);
    let dim = lines.header("z2form", 1)?[0];
    let form = z2_form(&mut lines, dim)?;
    lines.finish()?;
    Ok(form)
}

pub fn parse_z2q(file: &str, text: &str) -> TextResult<Z2Quadratic> {
    let mut lines = Lines::new(file, text);
    let dim = lines.header("z2q", 1)?[0];
    let form = z2_form(&mut lines, dim)?;
    let values = if dim == 0 { Vec::new() } else { lines.row(dim, "values in {0,1}", parse_bit)? };
    lines.finish()?;
    Ok(Z2Quadratic::new(form, values.into_iter().map(Z2::new).collect())?)
}

pub fn parse_z4q(file: &str, text: &str) -> TextResult<Z4Quadratic> {
    let mut lines = Lines::new(file, text);
    let dim = lines.header("z4q", 1)?[0];
    let form = z2_form(&mut lines, dim)?;
    let values = if dim == 0 { Vec::new() } else { lines.row(dim, "values in {0,1,2,3}", parse_z4)? };
    lines.finish()?;
    Ok(Z4Quadratic::new(form, values)?)
}

pub fn parse_intform(file: &str, text: &str) -> TextResult<IntSymForm<BigInt>> {
    let mut lines = Lines::new(file, text);
    let dim = lines.header("intform", 1)?[0];
    let rows = lines.matrix(dim, dim, "integers", parse_int)?;
    lines.finish()?;
    Ok(IntSymForm::new(int_matrix(rows, dim, dim))?)
}

pub fn parse_ratform(file: &str, text: &str) -> TextResult<RatSymForm<BigRational>> {
    let mut lines = Lines::new(file, text);
    let dim = lines.header("ratform", 1)?[0];
    let rows = lines.matrix(dim, dim, "rationals p/q", parse_rational)?;
    lines.finish()?;
    Ok(RatSymForm::new(Matrix::from_fn(dim, dim, |i, j| rows[i][j].clone()))?)
}

pub fn parse_symcomplex(file: &str, text: &str) -> TextResult<SymComplex<BigInt>> {
    let mut lines = Lines::new(file, text);
    let n = lines.header("symcomplex", 1)?[0];
    let ranks = lines.row(n + 1, "ranks", |t| t.parse::<usize>().ok())?;
    let mut c = SymComplex::zero(n, ranks)?;
    while let Some((line, toks)) = lines.peek_line().cloned() {
        let label = toks[0];
        let r = match (toks.len(), toks.get(1).and_then(|t| t.parse::<usize>().ok())) {
            (2, Some(r)) if matches!(label, "d" | "phi0" | "phi1") && r <= n => r,
            _ => return Err(lines.error(line, "block label `d r`, `phi0 r` or `phi1 r`", format!("`{}`", toks.join(" "))).into()),
        };
        lines.pos += 1;
        let ri = r as i64;
        let ni = n as i64;
        let (rows, cols) = match label {
            "d" => (c.rank(ri - 1), c.rank(ri)),
            "phi0" => (c.rank(ri), c.rank(ni - ri)),
            _ => (c.rank(ri), c.rank(ni - ri + 1)),
        };
        let m = int_matrix(lines.matrix(rows, cols, "integers", parse_int)?, rows, cols);
        c = match label {
            "d" => c.with_d(r, m)?,
            "phi0" => c.with_phi0(r, m)?,
            _ => c.with_phi1(r, m)?,
        };
    }
    Ok(c)
}

pub fn parse_monodromy(file: &str, text: &str) -> TextResult<MonodromyData<BigInt>> {
    let mut lines = Lines::new(file, text);
    let hg = lines.header("monodromy", 2)?;
    let (h, g) = (hg[0], hg[1]);
    let mut mats = Vec::with_capacity(2 * g);
    for _ in 0..2 * g {
        let rows = lines.matrix(2 * h, 2 * h, "integers", parse_int)?;
        mats.push(SymplecticMatrix::new(int_matrix(rows, 2 * h, 2 * h))?);
    }
    lines.finish()?;
    let mut it = mats.into_iter();
    let pairs = (0..g).map(|_| (it.next().expect("counted"), it.next().expect("counted"))).collect();
    Ok(MonodromyData::new(h, pairs)?)
}

/// Parses according to the header keyword, or `kind` when given.
pub fn parse_document(file: &str, text: &str, kind: Option<&str>) -> TextResult<Document> {
    let detected = Lines::new(file, text).peek_line().map(|l| l.1[0].to_string());
    let kind = match (kind, detected) {
        (Some(k), _) => k.to_string(),
        (None, Some(k)) => k,
        (None, None) => return Err(ParseError { file: file.into(), line: 1, expected: "header line".into(), found: "end of file".into() }.into()),
    };
    Ok(match kind.as_str() {
        "z2form" => Document::Z2Form(parse_z2form(file, text)?),
        "z2q" => Document::Z2Q(parse_z2q(file, text)?),
        "z4q" => Document::Z4Q(parse_z4q(file, text)?),
        "intform" => Document::IntForm(parse_intform(file, text)?),
        "ratform" => Document::RatForm(parse_ratform(file, text)?),
        "symcomplex" => Document::Complex(parse_symcomplex(file, text)?),
        "monodromy" => Document::Monodromy(parse_monodromy(file, text)?),
        other => {
            let line = Lines::new(file, text).peek_line().map_or(1, |l| l.0);
            return Err(ParseError { file: file.into(), line, expected: "known format keyword".into(), found: format!("`{other}`") }.into());
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_format() {
        let h = parse_z2form("h.txt", "# hyperbolic\nz2form 2\n0 1\n1 0\n").unwrap();
        assert_eq!(h, Z2SymForm::h());
        let q = parse_z4q("p1.txt", "z4q 1\n1\n1  # value\n").unwrap();
        assert_eq!(q.bk_gauss().unwrap().value(), 1);
        let z2q = parse_z2q("x", "z2q 2\n0 1\n1 0\n1 1\n").unwrap();
        assert_eq!(z2q.arf().unwrap(), Z2::new(1));
        let f = parse_intform("x", "intform 2\n2 -1\n-1 2\n").unwrap();
        assert_eq!(f.signature_exact(), 2);
        let r = parse_ratform("x", "ratform 2\n7/2 -3\n-3 4\n").unwrap();
        assert_eq!(r.signature_exact(), 2);
        let c = parse_symcomplex("x", "symcomplex 4\n0 0 1 1 0\nd 3\n2\nphi0 2\n1\nphi1 2\n1\nphi1 3\n-1\n").unwrap();
        assert!(c.validate_structure().is_valid());
        let m = parse_monodromy("x", "monodromy 1 2\n0 1\n-1 0\n0 1\n-1 1\n0 -1\n1 -1\n0 1\n-1 0\n").unwrap();
        assert_eq!(m.handle_signatures(), vec![2, -2]);
        assert_eq!(parse_document("x", "intform 0\n", None).unwrap().kind(), "intform");
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_intform("f.txt", "intform 2\n1 0\n0 x\n").unwrap_err();
        assert_eq!(e, TextError::Parse(ParseError { file: "f.txt".into(), line: 3, expected: "integers".into(), found: "`x`".into() }));
        let e = parse_z2form("g.txt", "\n# c\nz2form 2\n0 1\n").unwrap_err();
        assert!(matches!(e, TextError::Parse(ParseError { line: 4, .. })), "{e}");
        let e = parse_z2form("g.txt", "z2form 1\n0\n0\n").unwrap_err();
        assert!(e.to_string().contains("g.txt:3: expected end of file"), "{e}");
        assert!(matches!(parse_document("k", "foo 1\n", None), Err(TextError::Parse(ParseError { line: 1, .. }))));
        assert!(matches!(parse_ratform("r", "ratform 1\n1/0\n"), Err(TextError::Parse(_))));
        assert!(matches!(parse_z4q("q", "z4q 1\n1\n4\n"), Err(TextError::Parse(_))));
    }

    #[test]
    fn semantic_errors_are_separate() {
        assert_eq!(parse_intform("x", "intform 2\n1 2\n0 1\n").unwrap_err(), TextError::Invalid(Error::NotSymmetric { row: 0, col: 1 }));
        assert_eq!(parse_z4q("x", "z4q 1\n1\n2\n").unwrap_err(), TextError::Invalid(Error::InvalidEnhancement { index: 0 }));
        assert!(matches!(parse_monodromy("x", "monodromy 1 1\n1 1\n0 1\n1 0\n1 1\n"), Err(TextError::Invalid(Error::CommutatorRelationViolated { .. }))));
        assert_eq!(parse_monodromy("x", "monodromy 1 1\n2 0\n0 1\n1 0\n0 1\n").unwrap_err(), TextError::Invalid(Error::NotSymplectic));
    }
}
