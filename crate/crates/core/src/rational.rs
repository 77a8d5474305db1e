//! Exact rational matrices and polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(digits, scale));
    }
    Ok(Rational::from_integer(s.parse().map_err(|_| bad())?))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<QMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: usize, cols: usize, v: &[i64]) -> QMatrix {
        assert_eq!(v.len(), rows * cols);
        QMatrix { rows, cols, data: v.iter().map(|&x| rat(x, 1)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "inner dimensions");
        let mut out = QMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `self − λI`.
    pub fn shift(&self, lam: &Rational) -> QMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let x = m.get(i, i) - lam;
            m.set(i, i, x);
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> QMatrix {
        let mut m = QMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|i| (0..self.cols).map(|k| self.get(i, k) * &v[k]).sum()).collect()
    }

    /// Reduced row echelon form and pivot columns.
    fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else { continue };
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, row * a.cols + j);
            }
            let inv = a.get(row, col).recip();
            for j in 0..a.cols {
                let x = a.get(row, j) * &inv;
                a.set(row, j, x);
            }
            for r in 0..a.rows {
                if r != row && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    for j in 0..a.cols {
                        let x = a.get(r, j) - &f * a.get(row, j);
                        a.set(r, j, x);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(QMatrix::zeros(0, 0));
        }
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::ZeroDivisor("singular rational matrix".into()));
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Determinant by fraction-free (Bareiss) elimination on the cleared
    /// integer matrix.
    pub fn determinant(&self) -> Rational {
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let den = self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut a: Vec<BigInt> = self.data.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Rational::zero();
                };
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        let det = sign * &a[n * n - 1];
        Rational::new(det, num_traits::pow(den, n))
    }

    /// Characteristic polynomial `det(xI − M)`, coefficients low to high,
    /// from exact determinants at `x = 0..n` and Lagrange interpolation.
    pub fn characteristic_polynomial(&self) -> Poly {
        let n = self.rows;
        let pts: Vec<(Rational, Rational)> = (0..=n)
            .map(|k| {
                let x = rat(k as i64, 1);
                let mut m = self.shift(&x);
                m.data.iter_mut().for_each(|v| *v = -v.clone());
                (x, m.determinant())
            })
            .collect();
        Poly::interpolate(&pts)
    }
}

/// Dense polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    fn trim(mut self) -> Poly {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn mul_linear(&self, root: &Rational) -> Poly {
        // (x − root)·p
        let mut out = vec![Rational::zero(); self.0.len() + 1];
        for (i, c) in self.0.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Poly(out).trim()
    }

    fn interpolate(pts: &[(Rational, Rational)]) -> Poly {
        let mut acc = vec![Rational::zero(); pts.len()];
        for (i, (xi, yi)) in pts.iter().enumerate() {
            let mut basis = Poly(vec![Rational::one()]);
            let mut den = Rational::one();
            for (j, (xj, _)) in pts.iter().enumerate() {
                if i != j {
                    basis = basis.mul_linear(xj);
                    den *= xi - xj;
                }
            }
            let f = yi / den;
            for (k, c) in basis.0.iter().enumerate() {
                acc[k] += c * &f;
            }
        }
        Poly(acc).trim()
    }

    /// Synthetic division by `x − root`, assuming it divides exactly.
    fn deflate(&self, root: &Rational) -> Poly {
        let d = self.degree();
        let mut q = vec![Rational::zero(); d];
        let mut carry = Rational::zero();
        for k in (0..d).rev() {
            carry = &self.0[k + 1] + carry * root;
            q[k] = carry.clone();
        }
        Poly(q).trim()
    }

    /// Rational roots with multiplicity, ascending, and the cofactor that
    /// has none.
    pub fn rational_roots(&self) -> Result<(Vec<(Rational, usize)>, Poly)> {
        let mut p = self.clone().trim();
        let mut roots: Vec<(Rational, usize)> = Vec::new();
        let push = |r: Rational, roots: &mut Vec<(Rational, usize)>| match roots.iter_mut().find(|(x, _)| *x == r) {
            Some(e) => e.1 += 1,
            None => roots.push((r, 1)),
        };
        while p.degree() > 0 && p.0[0].is_zero() {
            p = Poly(p.0[1..].to_vec());
            push(Rational::zero(), &mut roots);
        }
        'outer: while p.degree() > 0 {
            let ints = p.integer_coefficients();
            let lead = ints.last().expect("non-empty").abs();
            let constant = ints[0].abs();
            for q in divisors(&lead)? {
                for pnum in divisors(&constant)? {
                    for s in [1i64, -1] {
                        let cand = Rational::new(BigInt::from(s) * &pnum, q.clone());
                        if p.eval(&cand).is_zero() {
                            p = p.deflate(&cand);
                            push(cand, &mut roots);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((roots, p))
    }

    /// Primitive integer multiple of the polynomial.
    fn integer_coefficients(&self) -> Vec<BigInt> {
        let den = self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|x| x / &g).collect()
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = format_rational(&mag);
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coeff}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{coeff}x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Positive divisors by trial division; refuses integers with more than
/// 18 digits.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let Some(v) = n.to_u64().filter(|&v| v < 1_000_000_000_000_000_000) else {
        return Err(Error::Unsupported(format!("rational root search on a coefficient of size {n}")));
    };
    if v == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small.into_iter().map(BigInt::from).collect())
}
