//! Spectra as elements of the monoid of self-adjoint matrices modulo
//! unitary similarity, with direct sum as the operation, and desk-scale
//! probes of its structure.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::classic::{jordan, pair_diag, JordanBlock};
use crate::error::{Error, Result};
use crate::infinitesimal::{
    spectral_cl101_neg, spectral_quatdual, spectral_skewtakagi_alg, spectral_svdalg, spectral_takagi_alg, BlockDecomp,
    SvdAlgSpectrum,
};
use crate::matrix::{BracketMatrix, StarMatrix};
use crate::random;
use crate::rational::{format_rational, QMatrix, Rational};
use crate::scalars::{
    Algebra, COMPLEX, DUAL, QUATERNION, QUAT_DUAL, REAL, SKEW_TAKAGI, SPLIT_STERILE, SPLIT_SWAP, SVD, SVD_NEG, TAKAGI,
};
use crate::spectral::{eig_complex_hermitian, eig_dual_selfadjoint, eig_quaternion_hermitian, eig_real_symmetric};

/// Grid on which eigenvalue components are compared.
pub const QUANTUM: f64 = 1e-7;
const STEPS_PER_UNIT: f64 = 1e7;

pub fn quantize(x: f64) -> i64 {
    (x * STEPS_PER_UNIT).round() as i64
}

fn unquantize(k: i64) -> f64 {
    // dividing keeps grid points short in decimal
    k as f64 / STEPS_PER_UNIT
}

/// Canonical multiset payload, each list sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    /// Real eigenvalues (ℝ, ℂ, ℍ Hermitian).
    Reals(Vec<i64>),
    /// `(st, nst)` eigenvalues over (𝔻, id).
    Duals(Vec<(i64, i64)>),
    /// Independent real spectra of the two halves over (ℝ⊕ℝ, *₁).
    Halves { left: Vec<i64>, right: Vec<i64> },
    /// `(C, L, R)` over the SVD algebras.
    Svd { c: Vec<(i64, i64)>, l: Vec<i64>, r: Vec<i64> },
    /// `(size, λ, λ′)` canonical blocks.
    Blocks(Vec<(usize, i64, i64)>),
    /// Jordan blocks `(eigenvalue, size)` over (ℝ⊕ℝ, *₋₁).
    Jordan(Vec<(Rational, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumClass {
    pub algebra: Algebra,
    pub payload: Payload,
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn svd_payload(s: &SvdAlgSpectrum) -> Payload {
    Payload::Svd {
        c: sorted(s.c.iter().map(|x| (quantize(x.st), quantize(x.nst))).collect()),
        l: sorted(s.l.iter().map(|&x| quantize(x)).collect()),
        r: sorted(s.r.iter().map(|&x| quantize(x)).collect()),
    }
}

fn block_payload(d: &BlockDecomp) -> Payload {
    Payload::Blocks(sorted(d.blocks.iter().map(|b| (b.size(), quantize(b.value()), quantize(b.coupling()))).collect()))
}

fn jordan_payload(blocks: &[JordanBlock]) -> Payload {
    Payload::Jordan(canonical_jordan(blocks.iter().map(|b| (b.value.clone(), b.size)).collect()))
}

fn canonical_jordan(mut v: Vec<(Rational, usize)>) -> Vec<(Rational, usize)> {
    v.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    v
}

impl SpectrumClass {
    /// The unit: the class of the 0×0 matrix.
    pub fn empty(algebra: Algebra) -> Result<SpectrumClass> {
        let payload = match algebra {
            a if a == REAL || a == COMPLEX || a == QUATERNION => Payload::Reals(Vec::new()),
            a if a == DUAL => Payload::Duals(Vec::new()),
            a if a == SPLIT_STERILE => Payload::Halves { left: Vec::new(), right: Vec::new() },
            a if a == SVD || a == SVD_NEG => Payload::Svd { c: Vec::new(), l: Vec::new(), r: Vec::new() },
            a if a == TAKAGI || a == SKEW_TAKAGI || a == QUAT_DUAL => Payload::Blocks(Vec::new()),
            a if a == SPLIT_SWAP => Payload::Jordan(Vec::new()),
            other => return Err(Error::Unsupported(format!("spectra over {other}"))),
        };
        Ok(SpectrumClass { algebra, payload })
    }

    /// Multiset union.
    pub fn add(&self, o: &SpectrumClass) -> Result<SpectrumClass> {
        if self.algebra != o.algebra {
            return Err(Error::AlgebraMismatch { left: self.algebra, right: o.algebra });
        }
        fn cat<T: Ord + Clone>(a: &[T], b: &[T]) -> Vec<T> {
            sorted(a.iter().chain(b).cloned().collect())
        }
        let payload = match (&self.payload, &o.payload) {
            (Payload::Reals(a), Payload::Reals(b)) => Payload::Reals(cat(a, b)),
            (Payload::Duals(a), Payload::Duals(b)) => Payload::Duals(cat(a, b)),
            (Payload::Halves { left: a, right: b }, Payload::Halves { left: c, right: d }) => {
                Payload::Halves { left: cat(a, c), right: cat(b, d) }
            }
            (Payload::Svd { c, l, r }, Payload::Svd { c: c2, l: l2, r: r2 }) => {
                Payload::Svd { c: cat(c, c2), l: cat(l, l2), r: cat(r, r2) }
            }
            (Payload::Blocks(a), Payload::Blocks(b)) => Payload::Blocks(cat(a, b)),
            (Payload::Jordan(a), Payload::Jordan(b)) => Payload::Jordan(canonical_jordan([a.clone(), b.clone()].concat())),
            _ => return Err(Error::AlgebraMismatch { left: self.algebra, right: o.algebra }),
        };
        Ok(SpectrumClass { algebra: self.algebra, payload })
    }

    /// Matrix size the class describes.
    pub fn dimension(&self) -> usize {
        match &self.payload {
            Payload::Reals(v) => v.len(),
            Payload::Duals(v) => v.len(),
            Payload::Halves { left, .. } => left.len(),
            Payload::Svd { c, l, .. } => c.len() + l.len(),
            Payload::Blocks(v) => v.iter().map(|b| b.0).sum(),
            Payload::Jordan(v) => v.iter().map(|b| b.1).sum(),
        }
    }

    /// Canonical JSON, values on the quantisation grid.
    pub fn to_json(&self) -> Value {
        let reals = |v: &[i64]| Value::from(v.iter().map(|&k| unquantize(k)).collect::<Vec<_>>());
        let pairs = |v: &[(i64, i64)]| Value::from(v.iter().map(|&(a, b)| json!([unquantize(a), unquantize(b)])).collect::<Vec<_>>());
        let body = match &self.payload {
            Payload::Reals(v) => json!({ "eigenvalues": reals(v) }),
            Payload::Duals(v) => json!({ "eigenvalues": pairs(v) }),
            Payload::Halves { left, right } => json!({ "left": reals(left), "right": reals(right) }),
            Payload::Svd { c, l, r } => json!({ "C": pairs(c), "L": reals(l), "R": reals(r) }),
            Payload::Blocks(v) => json!({
                "blocks": v.iter().map(|&(s, a, b)| json!({ "size": s, "value": unquantize(a), "coupling": unquantize(b) })).collect::<Vec<_>>()
            }),
            Payload::Jordan(v) => json!({
                "jordan_blocks": v.iter().map(|(x, s)| json!({ "value": format_rational(x), "size": s })).collect::<Vec<_>>()
            }),
        };
        json!({ "algebra": self.algebra.tag().unwrap_or("custom"), "spectrum": body })
    }
}

fn reals(d: &StarMatrix) -> Payload {
    Payload::Reals(sorted((0..d.rows()).map(|i| quantize(d.get(i, i).re())).collect()))
}

/// Canonical class of a self-adjoint matrix.
pub fn spectrum_of(h: &StarMatrix, tol: f64) -> Result<SpectrumClass> {
    let alg = h.algebra();
    let payload = match alg {
        a if a == REAL => reals(&eig_real_symmetric(h, tol)?.d),
        a if a == COMPLEX => reals(&eig_complex_hermitian(h, tol)?.d),
        a if a == QUATERNION => reals(&eig_quaternion_hermitian(h, tol)?.d),
        a if a == DUAL => {
            let e = eig_dual_selfadjoint(h, tol)?;
            Payload::Duals(sorted(e.diagonal().iter().map(|x| (quantize(x.components()[0]), quantize(x.components()[1]))).collect()))
        }
        a if a == SPLIT_STERILE => {
            let half = |k: usize| StarMatrix::from_fn(REAL, h.rows(), h.cols(), |i, j| {
                crate::scalars::Scalar::from_real(REAL, h.get(i, j).components()[k])
            });
            let p = pair_diag(&half(0), &half(1), tol)?;
            let side = |k: usize| sorted((0..h.rows()).map(|i| quantize(p.diagonal.get(i, i).components()[k])).collect());
            Payload::Halves { left: side(0), right: side(1) }
        }
        a if a == SVD => svd_payload(&SvdAlgSpectrum::from_eigenvalues(&spectral_svdalg(h, tol)?.eigenvalues)),
        a if a == SVD_NEG => svd_payload(&SvdAlgSpectrum::from_eigenvalues(&spectral_cl101_neg(h, tol)?.eigenvalues)),
        a if a == TAKAGI => block_payload(&spectral_takagi_alg(h, tol)?),
        a if a == SKEW_TAKAGI => block_payload(&spectral_skewtakagi_alg(h, tol)?),
        a if a == QUAT_DUAL => block_payload(&spectral_quatdual(h, tol)?),
        a if a == SPLIT_SWAP => {
            let b = BracketMatrix::from_star(h)?;
            let defect = b.left.try_sub(&b.right)?.frobenius_norm();
            if defect > tol * (1.0 + h.frobenius_norm()) {
                return Err(Error::precondition("matrix is self-adjoint ([M, M] form)", defect, tol));
            }
            let exact = exact_rational(&b.left)?;
            jordan_payload(&jordan(&exact)?.blocks)
        }
        other => return Err(Error::Unsupported(format!("spectra over {other}"))),
    };
    Ok(SpectrumClass { algebra: alg, payload })
}

/// Class of `[M, M]` over (ℝ⊕ℝ, *₋₁) for an exact rational `M`.
pub fn spectrum_of_bracket(m: &QMatrix) -> Result<SpectrumClass> {
    Ok(SpectrumClass { algebra: SPLIT_SWAP, payload: jordan_payload(&jordan(m)?.blocks) })
}

fn exact_rational(m: &StarMatrix) -> Result<QMatrix> {
    let rows = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    BigRational::from_float(m.get(i, j).re())
                        .ok_or_else(|| Error::Parse("non-finite entry".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    QMatrix::from_rows(rows)
}

/// Outcome counts of one probe check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckCounts {
    pub passed: usize,
    pub failed: usize,
    /// Trials whose hypothesis did not apply.
    pub vacuous: usize,
    pub failing_trials: Vec<usize>,
}

impl CheckCounts {
    fn record(&mut self, trial: usize, ok: Option<bool>) {
        match ok {
            Some(true) => self.passed += 1,
            Some(false) => {
                self.failed += 1;
                self.failing_trials.push(trial);
            }
            None => self.vacuous += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub algebra: Algebra,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub additivity: CheckCounts,
    pub cancellation: CheckCounts,
    pub invariance: CheckCounts,
    /// Trials where a spectral routine returned an error.
    pub errors: CheckCounts,
}

impl ProbeReport {
    pub fn violations(&self) -> usize {
        self.additivity.failed + self.cancellation.failed + self.invariance.failed + self.errors.failed
    }

    pub fn render(&self) -> String {
        let line = |name: &str, c: &CheckCounts| {
            let seeds: Vec<String> = c.failing_trials.iter().map(|t| trial_seed(self.seed, *t).to_string()).collect();
            format!(
                "{name:<13} passed {:>5}  failed {:>5}  vacuous {:>5}  failing seeds [{}]\n",
                c.passed,
                c.failed,
                c.vacuous,
                seeds.join(", ")
            )
        };
        let mut s = format!(
            "probe algebra={} dim={} trials={} seed={}\n",
            self.algebra.tag().unwrap_or("custom"),
            self.dim,
            self.trials,
            self.seed
        );
        s += &line("additivity", &self.additivity);
        s += &line("cancellation", &self.cancellation);
        s += &line("invariance", &self.invariance);
        s += &line("errors", &self.errors);
        s += &format!("violations {}\n", self.violations());
        s
    }
}

/// Seed of trial `t`, independent of how trials are scheduled.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed ^ (t as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn sample(alg: Algebra, n: usize, rng: &mut random::StarRng, structured: bool) -> StarMatrix {
    if structured {
        random::clustered_self_adjoint(alg, n, rng)
    } else {
        random::self_adjoint(alg, n, rng)
    }
}

fn conjugate(alg: Algebra, h: &StarMatrix, rng: &mut random::StarRng) -> StarMatrix {
    let v = random::unitary(alg, h.rows(), rng);
    let c = v.matmul(h).and_then(|x| x.matmul(&v.adjoint())).expect("conforming");
    c.try_add(&c.adjoint()).expect("shape").scale(0.5)
}

struct TrialOutcome {
    additivity: Option<bool>,
    cancellation: Option<bool>,
    invariance: Option<bool>,
}

fn float_trial(alg: Algebra, dim: usize, rng: &mut random::StarRng, t: usize, tol: f64) -> Result<TrialOutcome> {
    use rand::Rng;
    let structured = t % 2 == 1;
    let na = rng.gen_range(1..=dim.max(1));
    let nc = rng.gen_range(1..=dim.max(1));
    let a = sample(alg, na, rng, structured);
    let c = sample(alg, nc, rng, structured);
    let b = if rng.gen_bool(0.5) { conjugate(alg, &a, rng) } else { sample(alg, na, rng, structured) };
    let sa = spectrum_of(&a, tol)?;
    let sb = spectrum_of(&b, tol)?;
    let sc = spectrum_of(&c, tol)?;
    let sac = spectrum_of(&a.direct_sum(&c)?, tol)?;
    let sbc = spectrum_of(&b.direct_sum(&c)?, tol)?;
    let sv = spectrum_of(&conjugate(alg, &a, rng), tol)?;
    Ok(TrialOutcome {
        additivity: Some(sac == sa.add(&sc)?),
        cancellation: if sac == sbc { Some(sa == sb) } else { None },
        invariance: Some(sv == sa),
    })
}

fn jordan_trial(dim: usize, rng: &mut random::StarRng) -> Result<TrialOutcome> {
    use rand::Rng;
    let na = rng.gen_range(1..=dim.max(1));
    let nc = rng.gen_range(1..=dim.max(1));
    let (a, _, _) = random::rational_jordan_case(na, rng);
    let (c, _, _) = random::rational_jordan_case(nc, rng);
    let (q, _, _) = random::rational_jordan_case(na, rng);
    // q is invertible only when 0 is not an eigenvalue; fall back to a shift
    let q = if q.rank() == na { q } else { QMatrix::identity(na) };
    let b = if rng.gen_bool(0.5) { q.mul(&a).mul(&q.inverse()?) } else { random::rational_jordan_case(na, rng).0 };
    let sum = |x: &QMatrix, y: &QMatrix| {
        let n = x.rows() + y.rows();
        let mut m = QMatrix::zeros(n, n);
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                m.set(i, j, x.get(i, j).clone());
            }
        }
        for i in 0..y.rows() {
            for j in 0..y.cols() {
                m.set(x.rows() + i, x.cols() + j, y.get(i, j).clone());
            }
        }
        m
    };
    let sa = spectrum_of_bracket(&a)?;
    let sb = spectrum_of_bracket(&b)?;
    let sc = spectrum_of_bracket(&c)?;
    let sac = spectrum_of_bracket(&sum(&a, &c))?;
    let sbc = spectrum_of_bracket(&sum(&b, &c))?;
    let sv = spectrum_of_bracket(&q.mul(&a).mul(&q.inverse()?))?;
    Ok(TrialOutcome {
        additivity: Some(sac == sa.add(&sc)?),
        cancellation: if sac == sbc { Some(sa == sb) } else { None },
        invariance: Some(sv == sa),
    })
}

/// Empirical checks of additivity, cancellation and conjugation invariance
/// of spectral classes. Trial `t` draws from [`trial_seed`]`(seed, t)`.
pub fn probe_conjecture(alg: Algebra, dim: usize, trials: usize, seed: u64) -> Result<ProbeReport> {
    SpectrumClass::empty(alg)?;
    let tol = 1e-8;
    let mut report = ProbeReport {
        algebra: alg,
        dim,
        trials,
        seed,
        additivity: CheckCounts::default(),
        cancellation: CheckCounts::default(),
        invariance: CheckCounts::default(),
        errors: CheckCounts::default(),
    };
    for t in 0..trials {
        let mut rng = random::rng(trial_seed(seed, t));
        let outcome = if alg == SPLIT_SWAP { jordan_trial(dim, &mut rng) } else { float_trial(alg, dim, &mut rng, t, tol) };
        match outcome {
            Ok(o) => {
                report.errors.record(t, Some(true));
                report.additivity.record(t, o.additivity);
                report.cancellation.record(t, o.cancellation);
                report.invariance.record(t, o.invariance);
            }
            Err(_) => report.errors.record(t, Some(false)),
        }
    }
    Ok(report)
}

/// `([nst…], …)` convenience for building SVD classes directly.
pub fn svd_class(c: &[(f64, f64)], l: &[f64], r: &[f64]) -> SpectrumClass {
    SpectrumClass {
        algebra: SVD,
        payload: Payload::Svd {
            c: sorted(c.iter().map(|&(a, b)| (quantize(a), quantize(b))).collect()),
            l: sorted(l.iter().map(|&x| quantize(x)).collect()),
            r: sorted(r.iter().map(|&x| quantize(x)).collect()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_classes() {
        for alg in [REAL, COMPLEX, QUATERNION, DUAL, SVD, TAKAGI, SKEW_TAKAGI, QUAT_DUAL, SPLIT_STERILE] {
            let s = spectrum_of(&StarMatrix::zeros(alg, 2, 2), 1e-10).unwrap();
            assert_eq!(s.dimension(), 2, "{alg}");
            let unit = SpectrumClass::empty(alg).unwrap();
            assert_eq!(s.add(&unit).unwrap(), s);
        }
    }

    #[test]
    fn svd_classes_add() {
        let a = svd_class(&[(0.0, 3.0)], &[], &[]);
        let b = svd_class(&[(0.0, 2.0)], &[], &[]);
        assert_eq!(a.add(&b).unwrap(), svd_class(&[(0.0, 3.0), (0.0, 2.0)], &[], &[]));
    }

    #[test]
    fn jordan_class_of_bracket() {
        let m = QMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let s = spectrum_of_bracket(&m).unwrap();
        assert_eq!(s.payload, Payload::Jordan(vec![(crate::rational::rat(1, 1), 2)]));
        let h = BracketMatrix::new(
            StarMatrix::from_real(REAL, 2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap(),
            StarMatrix::from_real(REAL, 2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap(),
        )
        .unwrap()
        .to_star();
        assert_eq!(spectrum_of(&h, 1e-10).unwrap(), s);
    }

    #[test]
    fn small_probes_clean() {
        for alg in [SVD, REAL, SPLIT_SWAP] {
            let r = probe_conjecture(alg, 3, 10, 7).unwrap();
            assert_eq!(r.violations(), 0, "{}", r.render());
        }
    }
}
