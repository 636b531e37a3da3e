//! Ordinates of nontrivial zeros and the zero sums of the explicit formulas.
//!
//! Zeros are stored in RH form: an ordinate `γ` stands for `ρ = 1/2 + iγ`.

mod critical;
mod scan;
mod sum;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

pub use critical::{riemann_siegel_theta, DirichletLine, HurwitzLine, ZetaLine};
pub use scan::{
    compute_dirichlet_zeros, compute_dirichlet_zeros_with, compute_zeta_zeros, compute_zeta_zeros_with,
    dirichlet_zero_count, riemann_von_mangoldt, ScanConfig, MAX_L_HEIGHT, MAX_SCAN_MODULUS, MAX_ZETA_HEIGHT,
};
pub use sum::{zero_sum, zero_sum_at, Truncation, ZeroSum, PHASE_LIMIT};

/// Default per-ordinate precision of a file without a header.
pub const DEFAULT_PRECISION: f64 = 1e-9;

const BUNDLED_ZETA: &str = include_str!("../../data/zeta_zeros.txt");
const BUNDLED_CHI4: &str = include_str!("../../data/chi4_zeros.txt");

/// Which function the zeros belong to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZeroLabel {
    Zeta,
    /// Primitive character given by modulus and exponent vector.
    Dirichlet {
        modulus: u64,
        exponents: Vec<u32>,
    },
}

impl ZeroLabel {
    /// Conductor entering the zero density, 1 for ζ.
    pub fn conductor(&self) -> u64 {
        match self {
            ZeroLabel::Zeta => 1,
            ZeroLabel::Dirichlet { modulus, .. } => *modulus,
        }
    }
}

impl fmt::Display for ZeroLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroLabel::Zeta => write!(f, "zeta"),
            ZeroLabel::Dirichlet { modulus, exponents } => {
                let e: Vec<String> = exponents.iter().map(u32::to_string).collect();
                write!(f, "L({modulus};{})", e.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZeroSource {
    File { path: PathBuf },
    Bundled { name: &'static str },
    Computed { t_max: f64 },
}

/// Ordered ordinates of nontrivial zeros.
///
/// `ordinates` holds `γ > 0` in increasing order. For ζ and real characters
/// the zeros with `γ < 0` are the conjugates and are implied; for complex
/// characters they are listed separately in `negative` as increasing `|γ|`.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroSet {
    label: ZeroLabel,
    ordinates: Vec<f64>,
    negative: Vec<f64>,
    precision: f64,
    source: ZeroSource,
    assumes_rh: bool,
}

impl ZeroSet {
    pub(crate) fn new(
        label: ZeroLabel,
        ordinates: Vec<f64>,
        negative: Vec<f64>,
        precision: f64,
        source: ZeroSource,
    ) -> Self {
        Self {
            label,
            ordinates,
            negative,
            precision,
            source,
            assumes_rh: true,
        }
    }

    pub fn label(&self) -> &ZeroLabel {
        &self.label
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    /// `|γ|` of zeros below the real axis; empty when conjugation supplies them.
    pub fn negative_ordinates(&self) -> &[f64] {
        &self.negative
    }

    /// Whether the negative ordinates are the mirror images of the positive ones.
    pub fn self_conjugate(&self) -> bool {
        self.negative.is_empty()
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    pub fn source(&self) -> &ZeroSource {
        &self.source
    }

    pub fn assumes_rh(&self) -> bool {
        self.assumes_rh
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn max_ordinate(&self) -> f64 {
        let p = self.ordinates.last().copied().unwrap_or(0.0);
        p.max(self.negative.last().copied().unwrap_or(0.0))
    }

    /// The first `n` positive (and, if listed, negative) ordinates.
    pub fn truncated(&self, n: usize) -> ZeroSet {
        let mut out = self.clone();
        out.ordinates.truncate(n);
        out.negative.truncate(n);
        out
    }

    /// Parses the text format: one ordinate per line, `#` comments, an
    /// optional `# precision: <real>` header, and `-γ` lines for the
    /// separately listed negative ordinates of a complex character.
    pub fn parse(text: &str, path: &Path, label: ZeroLabel) -> Result<ZeroSet> {
        let err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut precision = DEFAULT_PRECISION;
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("precision:") {
                    precision = v
                        .trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|p| *p > 0.0)
                        .ok_or_else(|| err(line_no, format!("bad precision header {v:?}")))?;
                }
                continue;
            }
            let v: f64 = line
                .parse()
                .map_err(|_| err(line_no, format!("not a number: {line:?}")))?;
            let (list, g) = if line.starts_with('-') {
                (&mut neg, -v)
            } else {
                (&mut pos, v)
            };
            if !(g > 0.0) || !g.is_finite() {
                return Err(err(
                    line_no,
                    format!("ordinate must be a nonzero finite real, got {line}"),
                ));
            }
            if list.last().is_some_and(|&last: &f64| g <= last) {
                return Err(err(line_no, format!("ordinates not strictly increasing at {line}")));
            }
            list.push(g);
        }
        Ok(ZeroSet::new(
            label,
            pos,
            neg,
            precision,
            ZeroSource::File {
                path: path.to_path_buf(),
            },
        ))
    }

    pub fn load(path: &Path, label: ZeroLabel) -> Result<ZeroSet> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, path, label)
    }

    /// Writes the text format read by [`ZeroSet::load`].
    pub fn write_to<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# zeros of {}", self.label)?;
        match &self.source {
            ZeroSource::Computed { t_max } => writeln!(out, "# computed up to t = {t_max}")?,
            ZeroSource::File { path } => writeln!(out, "# from {}", path.display())?,
            ZeroSource::Bundled { name } => writeln!(out, "# bundled {name}")?,
        }
        writeln!(out, "# precision: {:e}", self.precision)?;
        for g in &self.ordinates {
            writeln!(out, "{g:.15}")?;
        }
        for g in &self.negative {
            writeln!(out, "-{g:.15}")?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut file = std::io::BufWriter::new(fs::File::create(path)?);
        self.write_to(&mut file)?;
        file.flush()?;
        Ok(())
    }
}

/// The first 2000 zeros of `ζ(s)` shipped with the crate.
pub fn bundled_zeta_zeros() -> ZeroSet {
    let mut z = ZeroSet::parse(BUNDLED_ZETA, Path::new("data/zeta_zeros.txt"), ZeroLabel::Zeta)
        .expect("bundled zeta zeros parse");
    z.source = ZeroSource::Bundled { name: "zeta_zeros.txt" };
    z
}

/// Zeros of `L(s, χ₄)` up to height 1000 shipped with the crate.
pub fn bundled_chi4_zeros() -> ZeroSet {
    let label = ZeroLabel::Dirichlet {
        modulus: 4,
        exponents: crate::characters::chi4().exponent_vector().to_vec(),
    };
    let mut z =
        ZeroSet::parse(BUNDLED_CHI4, Path::new("data/chi4_zeros.txt"), label).expect("bundled chi4 zeros parse");
    z.source = ZeroSource::Bundled { name: "chi4_zeros.txt" };
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ZeroSet> {
        ZeroSet::parse(text, Path::new("test.txt"), ZeroLabel::Zeta)
    }

    #[test]
    fn parses_two_lines() {
        let z = parse("14.134725142\n21.022039639\n").unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.precision(), DEFAULT_PRECISION);
    }

    #[test]
    fn monotonicity_error_names_line() {
        match parse("21.0\n14.1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("0.0\n").is_err());
        assert!(parse("abc\n").is_err());
    }

    #[test]
    fn empty_file_is_valid() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn precision_header() {
        let z = parse("# precision: 1e-12\n14.1\n").unwrap();
        assert_eq!(z.precision(), 1e-12);
        assert!(parse("# precision: -1\n").is_err());
    }

    #[test]
    fn roundtrip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z.txt");
        let z = ZeroSet::new(
            ZeroLabel::Zeta,
            vec![1.5, 2.25],
            vec![0.75],
            1e-11,
            ZeroSource::Computed { t_max: 3.0 },
        );
        z.save(&path).unwrap();
        let back = ZeroSet::load(&path, ZeroLabel::Zeta).unwrap();
        assert_eq!(back.ordinates(), z.ordinates());
        assert_eq!(back.negative_ordinates(), z.negative_ordinates());
        assert_eq!(back.precision(), 1e-11);
    }

    #[test]
    fn bundled_sets_load() {
        let z = bundled_zeta_zeros();
        assert_eq!(z.len(), 2000);
        assert!((z.ordinates()[0] - 14.134_725_141_734_695).abs() < 1e-9);
        let c = bundled_chi4_zeros();
        assert!((c.ordinates()[0] - 6.020_948_904_697_597).abs() < 1e-9);
        assert!(c.max_ordinate() <= 1000.0);
    }
}
