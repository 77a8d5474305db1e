//! Scalars of the finite-dimensional *-algebras used throughout the crate.
//!
//! Every algebra here is either a *base* algebra (ℝ, ℂ, ℍ, or ℝ⊕ℝ with one
//! of its two involutions) or a base algebra with a nilsquare element δ
//! adjoined, written `w + zδ` with `δ² = 0` and `δ z = φ(z) δ`. The
//! involution of an adjoined algebra is `(w + zδ)* = w* + s·φ(z*)δ`.
//!
//! Component layout of a [`Scalar`] is fixed:
//!
//! | algebra            | components                    |
//! |--------------------|-------------------------------|
//! | ℝ                  | `(a)`                         |
//! | ℂ                  | `(re, im)`                    |
//! | ℍ                  | `(a, b, c, d)` = a+bi+cj+dk   |
//! | ℝ⊕ℝ                | `(a, b)`                      |
//! | base `[[δ]]`       | `(w…, z…)` = w + zδ           |
//!
//! so for example an SVD-algebra scalar `(a, b, a', b')` is `(a,b) + (a',b')δ`
//! and a Takagi-algebra scalar is `(Re w, Im w, Re z, Im z)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest component count of any algebra (ℍ⊗𝔻).
pub const MAX_COMPONENTS: usize = 8;

/// The δ-free algebras.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Real,
    Complex,
    Quaternion,
    /// ℝ⊕ℝ with the identity involution `*_1`.
    SplitSterile,
    /// ℝ⊕ℝ with the swap involution `*_{-1}`.
    SplitSwap,
}

impl Base {
    pub fn dim(self) -> usize {
        match self {
            Base::Real => 1,
            Base::Complex | Base::SplitSterile | Base::SplitSwap => 2,
            Base::Quaternion => 4,
        }
    }

    fn one(self, out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        match self {
            Base::SplitSterile | Base::SplitSwap => {
                out[0] = 1.0;
                out[1] = 1.0;
            }
            _ => out[0] = 1.0,
        }
    }

    fn mul(self, a: &[f64], b: &[f64], out: &mut [f64]) {
        match self {
            Base::Real => out[0] = a[0] * b[0],
            Base::Complex => {
                out[0] = a[0] * b[0] - a[1] * b[1];
                out[1] = a[0] * b[1] + a[1] * b[0];
            }
            Base::Quaternion => {
                let (a1, b1, c1, d1) = (a[0], a[1], a[2], a[3]);
                let (a2, b2, c2, d2) = (b[0], b[1], b[2], b[3]);
                out[0] = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2;
                out[1] = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2;
                out[2] = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2;
                out[3] = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2;
            }
            Base::SplitSterile | Base::SplitSwap => {
                out[0] = a[0] * b[0];
                out[1] = a[1] * b[1];
            }
        }
    }

    fn involute(self, a: &[f64], out: &mut [f64]) {
        match self {
            Base::Real | Base::SplitSterile => out[..self.dim()].copy_from_slice(&a[..self.dim()]),
            Base::Complex => {
                out[0] = a[0];
                out[1] = -a[1];
            }
            Base::Quaternion => {
                out[0] = a[0];
                out[1] = -a[1];
                out[2] = -a[2];
                out[3] = -a[3];
            }
            Base::SplitSwap => {
                out[0] = a[1];
                out[1] = a[0];
            }
        }
    }

    fn invert(self, a: &[f64], out: &mut [f64]) -> Result<()> {
        match self {
            Base::Real => {
                if a[0] == 0.0 {
                    return Err(Error::ZeroDivisor("0 in ℝ".into()));
                }
                out[0] = 1.0 / a[0];
            }
            Base::Complex | Base::Quaternion => {
                let n: f64 = a[..self.dim()].iter().map(|x| x * x).sum();
                if n == 0.0 {
                    return Err(Error::ZeroDivisor(format!("0 in {self:?}")));
                }
                self.involute(a, out);
                out[..self.dim()].iter_mut().for_each(|x| *x /= n);
            }
            Base::SplitSterile | Base::SplitSwap => {
                if a[0] == 0.0 || a[1] == 0.0 {
                    return Err(Error::ZeroDivisor(format!("({}, {}) in ℝ⊕ℝ", a[0], a[1])));
                }
                out[0] = 1.0 / a[0];
                out[1] = 1.0 / a[1];
            }
        }
        Ok(())
    }

    fn name(self) -> &'static str {
        match self {
            Base::Real => "real",
            Base::Complex => "complex",
            Base::Quaternion => "quaternion",
            Base::SplitSterile => "split-sterile",
            Base::SplitSwap => "split-swap",
        }
    }
}

/// Candidate δ-commutation maps, acting linearly on base components.
///
/// Only some (base, map) combinations are automorphisms; [`adjoin_delta`]
/// checks this exactly.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phi {
    Identity,
    /// Negates every non-leading component: complex conjugation on ℂ,
    /// quaternion conjugation on ℍ.
    Conjugate,
    /// Exchanges the first two components.
    Swap,
    Negate,
}

impl Phi {
    fn apply(self, base: Base, a: &[f64], out: &mut [f64]) {
        let d = base.dim();
        out[..d].copy_from_slice(&a[..d]);
        match self {
            Phi::Identity => {}
            Phi::Conjugate => out[1..d].iter_mut().for_each(|x| *x = -*x),
            Phi::Swap => {
                if d >= 2 {
                    out.swap(0, 1);
                }
            }
            Phi::Negate => out[..d].iter_mut().for_each(|x| *x = -*x),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Delta {
    phi: Phi,
    sign: Sign,
}

/// Descriptor of a *-algebra: its base, and the `(φ, s)` data of an adjoined δ.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Algebra {
    base: Base,
    delta: Option<Delta>,
}

const fn plain(base: Base) -> Algebra {
    Algebra { base, delta: None }
}

const fn with_delta(base: Base, phi: Phi, sign: Sign) -> Algebra {
    Algebra { base, delta: Some(Delta { phi, sign }) }
}

pub const REAL: Algebra = plain(Base::Real);
pub const COMPLEX: Algebra = plain(Base::Complex);
pub const QUATERNION: Algebra = plain(Base::Quaternion);
/// (ℝ⊕ℝ, *_1).
pub const SPLIT_STERILE: Algebra = plain(Base::SplitSterile);
/// (ℝ⊕ℝ, *_{-1}).
pub const SPLIT_SWAP: Algebra = plain(Base::SplitSwap);
/// Dual numbers with the trivial involution.
pub const DUAL: Algebra = with_delta(Base::Real, Phi::Identity, Sign::Plus);
/// Dual numbers with `ε* = -ε`; used only as an unpacking target.
pub const DUAL_CONJ: Algebra = with_delta(Base::Real, Phi::Identity, Sign::Minus);
/// (Cl_{1,0,1}, *_1), the SVD algebra.
pub const SVD: Algebra = with_delta(Base::SplitSterile, Phi::Swap, Sign::Plus);
/// (Cl_{1,0,1}, *_{-1}).
pub const SVD_NEG: Algebra = with_delta(Base::SplitSterile, Phi::Swap, Sign::Minus);
/// (Cl_{0,1,1}, *_1), the Takagi algebra.
pub const TAKAGI: Algebra = with_delta(Base::Complex, Phi::Conjugate, Sign::Plus);
/// (Cl_{0,1,1}, *_{-1}), the skew-Takagi algebra.
pub const SKEW_TAKAGI: Algebra = with_delta(Base::Complex, Phi::Conjugate, Sign::Minus);
/// ℍ⊗𝔻 with `(w + zδ)* = w* - z*δ`.
pub const QUAT_DUAL: Algebra = with_delta(Base::Quaternion, Phi::Identity, Sign::Minus);

const SHIPPED: [(&str, Algebra); 12] = [
    ("real", REAL),
    ("complex", COMPLEX),
    ("quaternion", QUATERNION),
    ("split-sterile", SPLIT_STERILE),
    ("split-swap", SPLIT_SWAP),
    ("dual", DUAL),
    ("dual-conj", DUAL_CONJ),
    ("svd-algebra", SVD),
    ("svd-algebra-neg", SVD_NEG),
    ("takagi-algebra", TAKAGI),
    ("skew-takagi-algebra", SKEW_TAKAGI),
    ("quaternion-dual", QUAT_DUAL),
];

impl Algebra {
    /// All algebras with a registered tag.
    pub fn shipped() -> impl Iterator<Item = Algebra> {
        SHIPPED.iter().map(|(_, a)| *a)
    }

    pub fn from_tag(tag: &str) -> Option<Algebra> {
        SHIPPED.iter().find(|(t, _)| *t == tag).map(|(_, a)| *a)
    }

    pub fn tag(&self) -> Option<&'static str> {
        SHIPPED.iter().find(|(_, a)| a == self).map(|(t, _)| *t)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// The δ-free subalgebra `w + 0δ` (the algebra itself when there is no δ).
    pub fn base_algebra(&self) -> Algebra {
        plain(self.base)
    }

    pub fn has_delta(&self) -> bool {
        self.delta.is_some()
    }

    pub fn phi(&self) -> Option<Phi> {
        self.delta.map(|d| d.phi)
    }

    /// Involution sign on δ; `None` for δ-free algebras.
    pub fn sign(&self) -> Option<Sign> {
        self.delta.map(|d| d.sign)
    }

    pub fn component_count(&self) -> usize {
        self.base.dim() * if self.has_delta() { 2 } else { 1 }
    }

    pub fn name(&self) -> String {
        match (self.tag(), self.delta) {
            (Some(t), _) => t.to_string(),
            (None, None) => self.base.name().to_string(),
            (None, Some(d)) => {
                format!("{}[[δ; φ={:?}, s={:+}]]", self.base.name(), d.phi, d.sign.value())
            }
        }
    }

    /// Applies φ to the components of a base element.
    pub(crate) fn apply_phi(&self, a: &[f64], out: &mut [f64]) {
        match self.delta {
            Some(d) => d.phi.apply(self.base, a, out),
            None => out[..self.base.dim()].copy_from_slice(&a[..self.base.dim()]),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.name())
    }
}

/// Builds `base[[δ]]` with `δ z = φ(z) δ` and `(w + zδ)* = w* + s·φ(z*)δ`.
///
/// φ is checked exactly on every ordered pair of basis elements: it must fix
/// the unit, be multiplicative, square to the identity, and commute with the
/// base involution. Anti-automorphisms such as quaternion conjugation fail the
/// multiplicativity check.
pub fn adjoin_delta(base: Algebra, phi: Phi, sign: Sign) -> Result<Algebra> {
    if base.has_delta() {
        return Err(Error::Unsupported(format!("{base} already contains δ")));
    }
    let b = base.base;
    let d = b.dim();
    let basis = |i: usize| {
        let mut e = [0.0; 4];
        e[i] = 1.0;
        e
    };
    let ap = |x: &[f64]| {
        let mut o = [0.0; 4];
        phi.apply(b, x, &mut o);
        o
    };
    let mut one = [0.0; 4];
    b.one(&mut one);
    if ap(&one) != one {
        return Err(Error::NotAutomorphism(format!("{phi:?} does not fix 1 in {base}")));
    }
    for i in 0..d {
        let ei = basis(i);
        if ap(&ap(&ei)) != ei {
            return Err(Error::NotAutomorphism(format!("{phi:?} is not an involution on {base}")));
        }
        let mut star = [0.0; 4];
        b.involute(&ei, &mut star);
        let mut lhs = [0.0; 4];
        b.involute(&ap(&ei), &mut lhs);
        if ap(&star) != lhs {
            return Err(Error::NotAutomorphism(format!(
                "{phi:?} does not commute with the involution of {base}"
            )));
        }
        for j in 0..d {
            let ej = basis(j);
            let mut prod = [0.0; 4];
            b.mul(&ei, &ej, &mut prod);
            let mut rhs = [0.0; 4];
            b.mul(&ap(&ei), &ap(&ej), &mut rhs);
            if ap(&prod) != rhs {
                return Err(Error::NotAutomorphism(format!(
                    "{phi:?} is not multiplicative on {base} (basis pair {i},{j})"
                )));
            }
        }
    }
    Ok(with_delta(b, phi, sign))
}

/// An element of one of the algebras, stored as a fixed component tuple.
#[derive(Copy, Clone, PartialEq)]
pub struct Scalar {
    alg: Algebra,
    c: [f64; MAX_COMPONENTS],
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.alg.name(), self.components())
    }
}

impl Scalar {
    pub fn new(alg: Algebra, components: &[f64]) -> Result<Scalar> {
        let n = alg.component_count();
        if components.len() != n {
            return Err(Error::ComponentCount { algebra: alg, expected: n, got: components.len() });
        }
        let mut c = [0.0; MAX_COMPONENTS];
        c[..n].copy_from_slice(components);
        Ok(Scalar { alg, c })
    }

    pub fn zero(alg: Algebra) -> Scalar {
        Scalar { alg, c: [0.0; MAX_COMPONENTS] }
    }

    pub fn one(alg: Algebra) -> Scalar {
        Scalar::from_real(alg, 1.0)
    }

    /// `x·1`.
    pub fn from_real(alg: Algebra, x: f64) -> Scalar {
        let mut s = Scalar::zero(alg);
        alg.base.one(&mut s.c[..alg.base.dim()]);
        s.c[..alg.base.dim()].iter_mut().for_each(|v| *v *= x);
        s
    }

    /// The adjoined δ itself.
    pub fn delta(alg: Algebra) -> Result<Scalar> {
        if !alg.has_delta() {
            return Err(Error::Unsupported(format!("{alg} has no δ")));
        }
        let mut s = Scalar::zero(alg);
        let d = alg.base.dim();
        alg.base.one(&mut s.c[d..2 * d]);
        Ok(s)
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn components(&self) -> &[f64] {
        &self.c[..self.alg.component_count()]
    }

    pub(crate) fn components_mut(&mut self) -> &mut [f64] {
        let n = self.alg.component_count();
        &mut self.c[..n]
    }

    /// Leading real component.
    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// The `w` of `w + zδ`, as an element of the base algebra.
    pub fn std_part(&self) -> Scalar {
        let d = self.alg.base.dim();
        let mut s = Scalar::zero(self.alg.base_algebra());
        s.c[..d].copy_from_slice(&self.c[..d]);
        s
    }

    /// The `z` of `w + zδ`; zero for δ-free algebras.
    pub fn delta_part(&self) -> Scalar {
        let d = self.alg.base.dim();
        let mut s = Scalar::zero(self.alg.base_algebra());
        if self.alg.has_delta() {
            s.c[..d].copy_from_slice(&self.c[d..2 * d]);
        }
        s
    }

    /// `w + zδ` from two base elements.
    pub fn from_parts(alg: Algebra, w: Scalar, z: Scalar) -> Result<Scalar> {
        let b = alg.base_algebra();
        if w.alg != b || z.alg != b {
            return Err(Error::AlgebraMismatch { left: w.alg, right: b });
        }
        if !alg.has_delta() {
            if z.components().iter().any(|&x| x != 0.0) {
                return Err(Error::Unsupported(format!("{alg} has no δ")));
            }
            return Ok(Scalar { alg, c: w.c });
        }
        let d = alg.base.dim();
        let mut s = Scalar::zero(alg);
        s.c[..d].copy_from_slice(&w.c[..d]);
        s.c[d..2 * d].copy_from_slice(&z.c[..d]);
        Ok(s)
    }

    /// Embeds a base element as `w + 0δ`.
    pub fn embed(alg: Algebra, w: Scalar) -> Result<Scalar> {
        Scalar::from_parts(alg, w, Scalar::zero(alg.base_algebra()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch { left: self.alg, right: other.alg });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, o: &Scalar) -> Scalar {
        let alg = self.alg;
        let b = alg.base;
        let d = b.dim();
        let mut out = Scalar::zero(alg);
        if alg.delta.is_none() {
            b.mul(&self.c, &o.c, &mut out.c);
            return out;
        }
        let (w1, z1) = (&self.c[..d], &self.c[d..2 * d]);
        let (w2, z2) = (&o.c[..d], &o.c[d..2 * d]);
        let mut t = [0.0; 4];
        b.mul(w1, w2, &mut out.c[..d]);
        b.mul(w1, z2, &mut t);
        let mut pw2 = [0.0; 4];
        alg.apply_phi(w2, &mut pw2);
        let mut u = [0.0; 4];
        b.mul(z1, &pw2, &mut u);
        for k in 0..d {
            out.c[d + k] = t[k] + u[k];
        }
        out
    }

    pub fn involute(&self) -> Scalar {
        let alg = self.alg;
        let b = alg.base;
        let d = b.dim();
        let mut out = Scalar::zero(alg);
        b.involute(&self.c[..d], &mut out.c[..d]);
        if let Some(delta) = alg.delta {
            let mut zs = [0.0; 4];
            b.involute(&self.c[d..2 * d], &mut zs);
            let mut p = [0.0; 4];
            alg.apply_phi(&zs, &mut p);
            let s = delta.sign.value();
            for k in 0..d {
                out.c[d + k] = s * p[k];
            }
        }
        out
    }

    /// Two-sided inverse. A zero divisor (exactly zero base component where
    /// the base needs it non-zero) is an error.
    pub fn invert(&self) -> Result<Scalar> {
        let alg = self.alg;
        let b = alg.base;
        let d = b.dim();
        let mut winv = Scalar::zero(alg.base_algebra());
        b.invert(&self.c[..d], &mut winv.c[..d]).map_err(|e| match e {
            Error::ZeroDivisor(m) => Error::ZeroDivisor(format!("{m} (in {alg})")),
            other => other,
        })?;
        if !alg.has_delta() {
            return Ok(Scalar { alg, c: winv.c });
        }
        // (w + zδ)⁻¹ = w⁻¹ − w⁻¹ z φ(w⁻¹) δ
        let z = self.delta_part();
        let mut pw = Scalar::zero(alg.base_algebra());
        alg.apply_phi(&winv.c, &mut pw.c);
        let corr = -(winv * z * pw);
        Scalar::from_parts(alg, winv, corr)
    }

    /// Square root of a "positive" element: the standard part must be a
    /// positive multiple of 1 (componentwise positive for ℝ⊕ℝ bases), and the
    /// root is taken as `σ + tδ` with `σ t + t φ(σ) = z`.
    pub fn sqrt_positive(&self) -> Result<Scalar> {
        let alg = self.alg;
        let b = alg.base;
        let d = b.dim();
        let w = &self.c[..d];
        let mut sigma = Scalar::zero(alg.base_algebra());
        match b {
            Base::SplitSterile | Base::SplitSwap => {
                if !(w[0] > 0.0 && w[1] > 0.0) {
                    return Err(Error::DegenerateNorm(format!("({}, {}) is not positive", w[0], w[1])));
                }
                sigma.c[0] = w[0].sqrt();
                sigma.c[1] = w[1].sqrt();
            }
            _ => {
                let r = w[0];
                let imag: f64 = w[1..d].iter().map(|x| x.abs()).fold(0.0, f64::max);
                if !(r > 0.0) || imag > 1e-12 * r {
                    return Err(Error::DegenerateNorm(format!("{:?} is not a positive real", w)));
                }
                sigma.c[0] = r.sqrt();
            }
        }
        if !alg.has_delta() {
            return Ok(Scalar { alg, c: sigma.c });
        }
        let mut ps = Scalar::zero(alg.base_algebra());
        alg.apply_phi(&sigma.c, &mut ps.c);
        // base parts involved are central or componentwise, so t = z (σ + φ(σ))⁻¹
        let psi = (sigma + ps).invert()?;
        let t = self.delta_part() * psi;
        Scalar::from_parts(alg, sigma, t)
    }

    /// `x^{-1/2}` for positive `x` (see [`Scalar::sqrt_positive`]).
    pub fn inv_sqrt_positive(&self) -> Result<Scalar> {
        self.sqrt_positive()?.invert()
    }

    pub fn scale(&self, k: f64) -> Scalar {
        let mut out = *self;
        out.components_mut().iter_mut().for_each(|x| *x *= k);
        out
    }

    /// Sum of squared components.
    pub fn norm_sqr(&self) -> f64 {
        self.components().iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|&x| x == 0.0)
    }

    /// Largest componentwise difference; infinite on algebra mismatch.
    pub fn max_diff(&self, other: &Scalar) -> f64 {
        if self.alg != other.alg {
            return f64::INFINITY;
        }
        self.components()
            .iter()
            .zip(other.components())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

fn assert_same(a: &Scalar, b: &Scalar) {
    assert!(a.alg == b.alg, "scalar algebra mismatch: {} vs {}", a.alg, b.alg);
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        assert_same(&self, &o);
        let mut out = self;
        out.c.iter_mut().zip(o.c.iter()).for_each(|(x, y)| *x += y);
        out
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = *self + o;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        assert_same(&self, &o);
        let mut out = self;
        out.c.iter_mut().zip(o.c.iter()).for_each(|(x, y)| *x -= y);
        out
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(-1.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    /// Panics on algebra mismatch; use [`Scalar::checked_mul`] for a `Result`.
    fn mul(self, o: Scalar) -> Scalar {
        assert_same(&self, &o);
        self.mul_unchecked(&o)
    }
}

/// The isomorphism `(a,b) + (a',b')δ ↦ (a,b) + (a',-b')δ` between
/// `(Cl_{1,0,1}, *_{-1})` and `(Cl_{1,0,1}, *_1)`. It is its own inverse, so
/// it maps either algebra onto the other.
pub fn iso_cl101(x: &Scalar) -> Result<Scalar> {
    let target = match x.alg {
        a if a == SVD_NEG => SVD,
        a if a == SVD => SVD_NEG,
        other => return Err(Error::AlgebraMismatch { left: other, right: SVD_NEG }),
    };
    let c = x.components();
    Scalar::new(target, &[c[0], c[1], c[2], -c[3]])
}

/// A dual number `st + nst·ε`.
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct DualScalar {
    pub st: f64,
    pub nst: f64,
}

impl DualScalar {
    pub fn new(st: f64, nst: f64) -> Self {
        DualScalar { st, nst }
    }

    pub fn is_invertible(&self) -> bool {
        self.st != 0.0
    }

    pub fn invert(&self) -> Result<DualScalar> {
        if self.st == 0.0 {
            return Err(Error::ZeroDivisor(format!("{}ε in 𝔻", self.nst)));
        }
        Ok(DualScalar { st: 1.0 / self.st, nst: -self.nst / (self.st * self.st) })
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar { alg: DUAL, c: [self.st, self.nst, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0] }
    }

    pub fn from_scalar(x: &Scalar) -> Result<DualScalar> {
        if x.alg.base != Base::Real || !x.alg.has_delta() {
            return Err(Error::AlgebraMismatch { left: x.alg, right: DUAL });
        }
        Ok(DualScalar { st: x.c[0], nst: x.c[1] })
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    fn mul(self, o: DualScalar) -> DualScalar {
        DualScalar { st: self.st * o.st, nst: self.st * o.nst + self.nst * o.st }
    }
}

impl Add for DualScalar {
    type Output = DualScalar;
    fn add(self, o: DualScalar) -> DualScalar {
        DualScalar { st: self.st + o.st, nst: self.nst + o.nst }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(alg: Algebra, c: &[f64]) -> Scalar {
        Scalar::new(alg, c).unwrap()
    }

    #[test]
    fn split_product_is_componentwise() {
        let x = s(SPLIT_STERILE, &[2.0, 3.0]);
        let y = s(SPLIT_STERILE, &[5.0, 7.0]);
        assert_eq!((x * y).components(), &[10.0, 21.0]);
    }

    #[test]
    fn delta_anticommutes_with_i_in_takagi_algebra() {
        let d = Scalar::delta(TAKAGI).unwrap();
        let i = s(TAKAGI, &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!((d * i).components(), (-(i * d)).components());
        assert_eq!((d * i).components(), &[0.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn delta_squares_to_zero() {
        for alg in Algebra::shipped().filter(|a| a.has_delta()) {
            let d = Scalar::delta(alg).unwrap();
            assert!((d * d).is_zero(), "{alg}");
        }
    }

    #[test]
    fn swap_involution_on_split() {
        let x = s(SPLIT_SWAP, &[1.5, -2.0]);
        assert_eq!(x.involute().components(), &[-2.0, 1.5]);
    }

    #[test]
    fn skew_takagi_involution() {
        // (w + zδ)* = w̄ + s·φ(z̄)δ with φ = conj, s = -1, i.e. w̄ - zδ
        let x = s(SKEW_TAKAGI, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(x.involute().components(), &[1.0, -2.0, -3.0, -4.0]);
    }

    #[test]
    fn unit_is_fixed_by_every_involution() {
        for alg in Algebra::shipped() {
            let one = Scalar::one(alg);
            assert_eq!(one.involute(), one, "{alg}");
        }
    }

    #[test]
    fn adjoin_delta_reproduces_shipped_algebras() {
        assert_eq!(adjoin_delta(COMPLEX, Phi::Conjugate, Sign::Plus).unwrap(), TAKAGI);
        assert_eq!(adjoin_delta(SPLIT_STERILE, Phi::Swap, Sign::Plus).unwrap(), SVD);
        assert_eq!(adjoin_delta(REAL, Phi::Identity, Sign::Plus).unwrap(), DUAL);
        assert_eq!(adjoin_delta(QUATERNION, Phi::Identity, Sign::Minus).unwrap(), QUAT_DUAL);
    }

    #[test]
    fn adjoin_delta_rejects_non_automorphisms() {
        // quaternion conjugation is an anti-automorphism
        assert!(matches!(
            adjoin_delta(QUATERNION, Phi::Conjugate, Sign::Plus),
            Err(Error::NotAutomorphism(_))
        ));
        assert!(adjoin_delta(COMPLEX, Phi::Swap, Sign::Plus).is_err());
        assert!(adjoin_delta(REAL, Phi::Negate, Sign::Plus).is_err());
        assert!(adjoin_delta(SPLIT_STERILE, Phi::Conjugate, Sign::Plus).is_err());
        assert!(adjoin_delta(DUAL, Phi::Identity, Sign::Plus).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(Scalar::one(SVD).invert().unwrap(), Scalar::one(SVD));
        let x = s(SPLIT_STERILE, &[2.0, 4.0]).invert().unwrap();
        assert_eq!(x.components(), &[0.5, 0.25]);
        let (a, b) = (3.0, 5.0);
        let d = s(DUAL, &[a, b]).invert().unwrap();
        assert!(d.max_diff(&s(DUAL, &[1.0 / a, -b / (a * a)])) < 1e-15);
        assert!(matches!(s(SPLIT_STERILE, &[1.0, 0.0]).invert(), Err(Error::ZeroDivisor(_))));
        assert!(Scalar::delta(TAKAGI).unwrap().invert().is_err());
    }

    #[test]
    fn inverse_in_noncommutative_delta_algebra() {
        let x = s(TAKAGI, &[1.0, 2.0, -0.5, 3.0]);
        let y = x.invert().unwrap();
        assert!((x * y).max_diff(&Scalar::one(TAKAGI)) < 1e-15);
        assert!((y * x).max_diff(&Scalar::one(TAKAGI)) < 1e-15);
        let q = s(QUAT_DUAL, &[1.0, 0.5, -1.0, 2.0, 0.3, 0.1, -0.7, 0.2]);
        assert!((q * q.invert().unwrap()).max_diff(&Scalar::one(QUAT_DUAL)) < 1e-15);
    }

    #[test]
    fn sqrt_of_positive_elements() {
        let x = s(SVD, &[0.5, 0.5, 0.3, 0.3]);
        let r = x.sqrt_positive().unwrap();
        assert!((r * r).max_diff(&x) < 1e-15);
        let x = s(SVD, &[0.25, 4.0, 1.0, -2.0]);
        let r = x.sqrt_positive().unwrap();
        assert!((r * r).max_diff(&x) < 1e-15);
        let x = s(QUAT_DUAL, &[2.0, 0.0, 0.0, 0.0, 0.0, 0.3, -0.1, 0.2]);
        let r = x.inv_sqrt_positive().unwrap();
        assert!((r * r * x).max_diff(&Scalar::one(QUAT_DUAL)) < 1e-15);
        assert!(Scalar::delta(DUAL).unwrap().sqrt_positive().is_err());
    }

    #[test]
    fn iso_cl101_examples() {
        let x = s(SVD_NEG, &[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(iso_cl101(&x).unwrap().components(), &[1.0, 2.0, 0.0, 0.0]);
        let x = s(SVD_NEG, &[0.0, 0.0, 1.0, 1.0]);
        assert_eq!(iso_cl101(&x).unwrap().components(), &[0.0, 0.0, 1.0, -1.0]);
        assert_eq!(iso_cl101(&x).unwrap().algebra(), SVD);
        assert_eq!(iso_cl101(&iso_cl101(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn mismatched_product_is_an_error() {
        let a = Scalar::one(REAL);
        let b = Scalar::one(COMPLEX);
        assert!(matches!(a.checked_mul(&b), Err(Error::AlgebraMismatch { .. })));
    }
}
