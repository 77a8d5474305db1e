//! The `starspec` command line: decompose, verify, spectrum and probe.
//!
//! Exit codes: 0 success, 2 parse or I/O error, 3 violated precondition,
//! 4 numerical failure (including a residual above tolerance).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classic::{self, describe_blocks};
use crate::error::{Error, Result};
use crate::infinitesimal::{spectral_cl101_neg, spectral_quatdual, spectral_skewtakagi_alg, spectral_svdalg, spectral_takagi_alg};
use crate::matrix::StarMatrix;
use crate::monoid::{probe_conjecture, spectrum_of, spectrum_of_bracket};
use crate::rational::{format_rational, parse_rational, QMatrix};
use crate::scalars::{
    Algebra, Scalar, COMPLEX, DUAL, QUATERNION, QUAT_DUAL, REAL, SKEW_TAKAGI, SPLIT_STERILE, SPLIT_SWAP, SVD, SVD_NEG, TAKAGI,
};
use crate::spectral::{eig_complex_hermitian, eig_dual_selfadjoint, eig_quaternion_hermitian, eig_real_symmetric};

/// Tag of exact rational real matrices.
pub const RATIONAL_TAG: &str = "real-rational";

/// Largest accepted dimension.
pub const MAX_DIM: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "starspec", about = "Spectral decompositions over *-algebras with nilpotent elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Spectral,
    Svd,
    Takagi,
    SkewTakagi,
    Jordan,
    QuatSkew,
    PairDiag,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Spectral => "spectral",
            Kind::Svd => "svd",
            Kind::Takagi => "takagi",
            Kind::SkewTakagi => "skew-takagi",
            Kind::Jordan => "jordan",
            Kind::QuatSkew => "quat-skew",
            Kind::PairDiag => "pair-diag",
        }
    }

    fn from_name(s: &str) -> Result<Kind> {
        <Kind as ValueEnum>::from_str(s, false).map_err(|_| Error::Parse(format!("unknown decomposition kind {s:?}")))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a matrix file and write the factors.
    Decompose {
        /// Algebra tag the input must carry; defaults to the file's own tag.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Recompute reconstruction and unitarity residuals of stored factors.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        factors: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Print the canonical spectrum of a self-adjoint matrix.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run the additivity, cancellation and invariance probe.
    Probe {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// JSON matrix file: per-entry component tuples, row-major.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub algebra: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub exact: bool,
}

/// A parsed matrix file.
#[derive(Clone, Debug)]
pub enum Loaded {
    Float(StarMatrix),
    Exact(QMatrix),
}

impl MatrixFile {
    pub fn from_star(m: &StarMatrix) -> MatrixFile {
        let entries = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).components().iter().map(|&x| json!(x)).collect()).collect())
            .collect();
        MatrixFile { algebra: m.algebra().tag().unwrap_or("custom").to_string(), rows: m.rows(), cols: m.cols(), entries, exact: false }
    }

    pub fn from_rational(m: &QMatrix) -> MatrixFile {
        let entries = m.to_rows().iter().map(|r| r.iter().map(|x| vec![json!(format_rational(x))]).collect()).collect();
        MatrixFile { algebra: RATIONAL_TAG.to_string(), rows: m.rows(), cols: m.cols(), entries, exact: true }
    }

    fn check_shape(&self, k: usize) -> Result<()> {
        if self.rows > MAX_DIM || self.cols > MAX_DIM {
            return Err(Error::Dimension(format!("{}x{} exceeds the {MAX_DIM}x{MAX_DIM} limit", self.rows, self.cols)));
        }
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Parse(format!("entries do not form a {}x{} array", self.rows, self.cols)));
        }
        if let Some(t) = self.entries.iter().flatten().find(|t| t.len() != k) {
            return Err(Error::Parse(format!("entry tuple has {} components, {} expects {k}", t.len(), self.algebra)));
        }
        Ok(())
    }

    pub fn load(&self) -> Result<Loaded> {
        if self.algebra == RATIONAL_TAG {
            self.check_shape(1)?;
            let rows = self
                .entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|t| match &t[0] {
                            Value::String(s) => parse_rational(s),
                            Value::Number(n) => parse_rational(&n.to_string()),
                            other => Err(Error::Parse(format!("not a rational entry: {other}"))),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let q = if self.rows == 0 { QMatrix::zeros(0, self.cols) } else { QMatrix::from_rows(rows)? };
            return Ok(Loaded::Exact(q));
        }
        if self.exact {
            return Err(Error::Parse(format!("exact entries are only valid with algebra {RATIONAL_TAG:?}")));
        }
        let alg = Algebra::from_tag(&self.algebra).ok_or_else(|| Error::Parse(format!("unknown algebra tag {:?}", self.algebra)))?;
        self.check_shape(alg.component_count())?;
        let mut comps = Vec::with_capacity(self.rows * self.cols * alg.component_count());
        for x in self.entries.iter().flatten().flatten() {
            comps.push(x.as_f64().ok_or_else(|| Error::Parse(format!("not a number: {x}")))?);
        }
        Ok(Loaded::Float(StarMatrix::from_components(alg, self.rows, self.cols, &comps)?))
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

/// Stored factors plus a summary.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct Bundle {
    pub kind: String,
    pub algebra: String,
    pub factors: serde_json::Map<String, Value>,
    pub summary: Value,
}

/// Residuals of a factorisation against its input.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Residuals {
    pub reconstruction: f64,
    pub unitarity: f64,
    /// Scale factor `1 + ‖input‖_F` for the reconstruction bound.
    pub scale: f64,
    pub dim: usize,
}

impl Residuals {
    pub fn within(&self, tol: f64) -> bool {
        self.reconstruction <= tol * self.scale && self.unitarity <= tol * (1.0 + (self.dim as f64).sqrt())
    }
}

fn float_factors(kind: Kind, h: &StarMatrix, tol: f64) -> Result<Vec<(&'static str, StarMatrix)>> {
    let alg = h.algebra();
    let wrong = || Error::Unsupported(format!("--kind {} does not apply to {alg}", kind.name()));
    Ok(match kind {
        Kind::Spectral => {
            let (u, d) = match alg {
                a if a == REAL => eig_real_symmetric(h, tol).map(|e| (e.u, e.d))?,
                a if a == COMPLEX => eig_complex_hermitian(h, tol).map(|e| (e.u, e.d))?,
                a if a == QUATERNION => eig_quaternion_hermitian(h, tol).map(|e| (e.u, e.d))?,
                a if a == DUAL => eig_dual_selfadjoint(h, tol).map(|e| (e.u, e.d))?,
                a if a == SVD => spectral_svdalg(h, tol).map(|e| (e.u, e.d))?,
                a if a == SVD_NEG => spectral_cl101_neg(h, tol).map(|e| (e.u, e.d))?,
                a if a == TAKAGI => spectral_takagi_alg(h, tol).map(|e| (e.u, e.d))?,
                a if a == SKEW_TAKAGI => spectral_skewtakagi_alg(h, tol).map(|e| (e.u, e.d))?,
                a if a == QUAT_DUAL => spectral_quatdual(h, tol).map(|e| (e.u, e.d))?,
                a if a == SPLIT_STERILE => return float_factors(Kind::PairDiag, h, tol),
                _ => return Err(wrong()),
            };
            vec![("U", u), ("D", d)]
        }
        Kind::PairDiag if alg == SPLIT_STERILE => {
            let half = |k: usize| StarMatrix::from_fn(REAL, h.rows(), h.cols(), |i, j| Scalar::from_real(REAL, h.get(i, j).components()[k]));
            let p = classic::pair_diag(&half(0), &half(1), tol)?;
            vec![("U", p.unitary), ("D", p.diagonal)]
        }
        Kind::Svd if alg == REAL => {
            let r = classic::svd(h, tol)?;
            vec![("U", r.u.clone()), ("S", r.sigma_matrix()), ("V", r.v)]
        }
        Kind::Takagi if alg == COMPLEX => {
            let (u, d) = classic::takagi(h, tol)?;
            let d: Vec<Scalar> = d.iter().map(|&x| Scalar::from_real(COMPLEX, x)).collect();
            vec![("U", u), ("D", StarMatrix::diagonal(COMPLEX, &d))]
        }
        Kind::SkewTakagi if alg == COMPLEX => {
            let (u, d, _) = classic::skew_takagi(h, tol)?;
            vec![("U", u), ("D", d)]
        }
        Kind::QuatSkew if alg == QUATERNION => {
            let e = classic::quaternion_skew_spectral(h, tol)?;
            vec![("U", e.u), ("D", e.d)]
        }
        _ => return Err(wrong()),
    })
}

/// Reconstruction and unitarity residuals of float factors.
pub fn float_residuals(kind: Kind, h: &StarMatrix, f: &[(String, StarMatrix)]) -> Result<Residuals> {
    let get = |name: &str| {
        f.iter().find(|(n, _)| n == name).map(|(_, m)| m).ok_or_else(|| Error::Parse(format!("factor {name} missing")))
    };
    let u = get("U")?;
    let (recon, unit) = match kind {
        Kind::Svd => {
            let v = get("V")?;
            let r = u.matmul(get("S")?)?.matmul(&v.transpose())?;
            (r, u.orthonormality_defect().max(v.orthonormality_defect()))
        }
        Kind::Takagi | Kind::SkewTakagi => (u.matmul(get("D")?)?.matmul(&u.transpose())?, u.orthonormality_defect()),
        _ => (u.matmul(get("D")?)?.matmul(&u.adjoint())?, u.orthonormality_defect()),
    };
    Ok(Residuals { reconstruction: recon.try_sub(h)?.frobenius_norm(), unitarity: unit, scale: 1.0 + h.frobenius_norm(), dim: h.rows() })
}

fn summary_json(r: &Residuals, tol: f64) -> Value {
    json!({ "residual": r.reconstruction, "unitarity": r.unitarity, "tolerance": tol, "within_tolerance": r.within(tol) })
}

fn print_residuals(out: &mut dyn Write, reconstruction: f64, unitarity: f64) {
    let _ = writeln!(out, "residual {reconstruction:e}");
    let _ = writeln!(out, "unitarity {unitarity:e}");
}

fn decompose(algebra: Option<&str>, kind: Kind, input: &Path, output: &Path, tol: f64, out: &mut dyn Write) -> Result<()> {
    let file: MatrixFile = read_json(input)?;
    if let Some(tag) = algebra {
        if tag != file.algebra {
            if tag != RATIONAL_TAG && Algebra::from_tag(tag).is_none() {
                return Err(Error::Parse(format!("unknown algebra tag {tag:?}")));
            }
            return Err(Error::Unsupported(format!("--algebra {tag} but the input is {}", file.algebra)));
        }
    }
    match (kind, file.load()?) {
        (Kind::Jordan, Loaded::Exact(m)) => {
            let r = classic::jordan(&m)?;
            let ok = classic::bracket_identity_holds(&m, &r)?;
            let mut factors = serde_json::Map::new();
            factors.insert("P".into(), serde_json::to_value(MatrixFile::from_rational(&r.p)).expect("json"));
            factors.insert("J".into(), serde_json::to_value(MatrixFile::from_rational(&r.j)).expect("json"));
            let summary = json!({ "residual": 0.0, "unitarity": 0.0, "exact": true, "bracket_identity": ok, "blocks": describe_blocks(&r.blocks) });
            let bundle = Bundle { kind: kind.name().into(), algebra: RATIONAL_TAG.into(), factors, summary };
            write_atomic(output, &pretty(&serde_json::to_value(bundle).expect("json")))?;
            let _ = writeln!(out, "blocks {}", describe_blocks(&r.blocks));
            print_residuals(out, 0.0, 0.0);
            Ok(())
        }
        (Kind::Jordan, Loaded::Float(m)) => {
            Err(Error::Unsupported(format!("--kind jordan needs {RATIONAL_TAG} input, got {}", m.algebra())))
        }
        (_, Loaded::Exact(_)) => Err(Error::Unsupported(format!("--kind {} needs floating-point input", kind.name()))),
        (_, Loaded::Float(h)) => {
            let f: Vec<(String, StarMatrix)> =
                float_factors(kind, &h, tol)?.into_iter().map(|(n, m)| (n.to_string(), m)).collect();
            let r = float_residuals(kind, &h, &f)?;
            let mut factors = serde_json::Map::new();
            for (n, m) in &f {
                factors.insert(n.clone(), serde_json::to_value(MatrixFile::from_star(m)).expect("json"));
            }
            let bundle = Bundle { kind: kind.name().into(), algebra: file.algebra.clone(), factors, summary: summary_json(&r, tol) };
            write_atomic(output, &pretty(&serde_json::to_value(bundle).expect("json")))?;
            print_residuals(out, r.reconstruction, r.unitarity);
            if r.within(tol) {
                Ok(())
            } else {
                Err(Error::Numerical(format!("residuals above tolerance {tol:e}")))
            }
        }
    }
}

fn exact_factor(b: &Bundle, name: &str) -> Result<QMatrix> {
    let v = b.factors.get(name).ok_or_else(|| Error::Parse(format!("factor {name} missing")))?;
    let f: MatrixFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    match f.load()? {
        Loaded::Exact(q) => Ok(q),
        Loaded::Float(_) => Err(Error::Parse(format!("factor {name} is not exact"))),
    }
}

fn verify(input: &Path, factors: &Path, tol: f64, out: &mut dyn Write) -> Result<()> {
    let file: MatrixFile = read_json(input)?;
    let bundle: Bundle = read_json(factors)?;
    let kind = Kind::from_name(&bundle.kind)?;
    match file.load()? {
        Loaded::Exact(m) => {
            if kind != Kind::Jordan {
                return Err(Error::Unsupported(format!("exact input with --kind {}", kind.name())));
            }
            let p = exact_factor(&bundle, "P")?;
            let j = exact_factor(&bundle, "J")?;
            if p.rows() != m.rows() || j.rows() != m.rows() || p.cols() != m.cols() || j.cols() != m.cols() {
                return Err(Error::Dimension("factor shapes do not match the input".into()));
            }
            let exact = p.rank() == m.rows() && m.mul(&p) == p.mul(&j) && classic::is_jordan_shape(&j);
            let r = if exact { 0.0 } else { 1.0 };
            print_residuals(out, r, r);
            if exact {
                Ok(())
            } else {
                Err(Error::Numerical("P J P⁻¹ differs from the input".into()))
            }
        }
        Loaded::Float(h) => {
            let mut f = Vec::new();
            for (name, v) in &bundle.factors {
                let mf: MatrixFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                match mf.load()? {
                    Loaded::Float(m) => f.push((name.clone(), m)),
                    Loaded::Exact(_) => return Err(Error::Parse(format!("factor {name} is exact"))),
                }
            }
            let r = float_residuals(kind, &h, &f)?;
            print_residuals(out, r.reconstruction, r.unitarity);
            if r.within(tol) {
                Ok(())
            } else {
                Err(Error::Numerical(format!("residuals above tolerance {tol:e}")))
            }
        }
    }
}

fn spectrum(input: &Path, tol: f64, out: &mut dyn Write) -> Result<()> {
    let file: MatrixFile = read_json(input)?;
    let class = match file.load()? {
        Loaded::Exact(m) => spectrum_of_bracket(&m)?,
        Loaded::Float(h) => spectrum_of(&h, tol)?,
    };
    let _ = out.write_all(pretty(&class.to_json()).as_bytes());
    Ok(())
}

/// Algebras whose spectra are known to be unique, so that a probe
/// violation is reported as a failure.
fn proven(alg: Algebra) -> bool {
    [REAL, COMPLEX, QUATERNION, DUAL, SPLIT_STERILE, SPLIT_SWAP, SVD, SVD_NEG].contains(&alg)
}

fn probe(algebra: &str, dim: usize, trials: usize, seed: u64, out: &mut dyn Write) -> Result<()> {
    let alg = Algebra::from_tag(algebra).ok_or_else(|| Error::Parse(format!("unknown algebra tag {algebra:?}")))?;
    if dim > MAX_DIM {
        return Err(Error::Dimension(format!("dimension {dim} exceeds {MAX_DIM}")));
    }
    let report = probe_conjecture(alg, dim, trials, seed).map_err(|e| match e {
        Error::Unsupported(m) => Error::Parse(m),
        other => other,
    })?;
    let _ = out.write_all(report.render().as_bytes());
    if proven(alg) && report.violations() > 0 {
        return Err(Error::Numerical(format!("{} violations on {algebra}", report.violations())));
    }
    Ok(())
}

/// Runs the command line with `args` (program name first), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Decompose { algebra, kind, input, output, tol } => decompose(algebra.as_deref(), *kind, input, output, *tol, out),
        Command::Verify { input, factors, tol } => verify(input, factors, *tol, out),
        Command::Spectrum { input, tol } => spectrum(input, *tol, out),
        Command::Probe { algebra, dim, trials, seed } => probe(algebra, *dim, *trials, *seed, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
