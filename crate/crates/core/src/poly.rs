//! Complex polynomials, rational maps f = f₂/f₁, coprimality via the
//! resultant, and root finding (Durand–Kerner) for ramification points and
//! singular sets.

use crate::scalar::{Cx, Real};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("polynomials are not coprime: normalized resultant {0:.3e}")]
    NotCoprime(f64),
    #[error("rational map is constant")]
    ConstantMap,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
}

/// Complex polynomial with coefficients in ascending degree order.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<Cx<f64>>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Cx<f64>>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.abs() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Cx::zero());
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Cx<f64>) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn one() -> Self {
        Polynomial::constant(Cx::one())
    }

    /// z^n
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Cx::zero(); n + 1];
        coeffs[n] = Cx::one();
        Polynomial::new(coeffs)
    }

    pub fn from_real_coeffs(c: &[f64]) -> Self {
        Polynomial::new(c.iter().map(|&x| Cx::real(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs() == 0.0
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation, generic over the AD scalar.
    pub fn eval<T: Real>(&self, z: Cx<T>) -> Cx<T> {
        let mut acc = Cx::<T>::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Cx::lift(*c);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::constant(Cx::zero());
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale((i + 1) as f64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::constant(Cx::zero());
        }
        let mut out = vec![Cx::<f64>::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(Cx::zero());
        Polynomial::new((0..n).map(|i| get(self, i) - get(other, i)).collect())
    }

    fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// All roots with Durand–Kerner iteration; returns (root, multiplicity)
    /// after clustering. Adequate for the low degrees used here.
    pub fn roots(&self) -> Vec<(Cx<f64>, usize)> {
        let n = self.degree();
        if n == 0 {
            return vec![];
        }
        let lead = *self.coeffs.last().unwrap();
        let monic: Vec<Cx<f64>> = self.coeffs.iter().map(|c| *c / lead).collect();
        let eval = |z: Cx<f64>| -> Cx<f64> {
            let mut acc = Cx::<f64>::zero();
            for c in monic.iter().rev() {
                acc = acc * z + *c;
            }
            acc
        };
        let seed = Cx::new(0.4, 0.9);
        let mut zs: Vec<Cx<f64>> = (0..n)
            .map(|k| {
                let mut w = Cx::one();
                for _ in 0..=k {
                    w = w * seed;
                }
                w
            })
            .collect();
        for _ in 0..500 {
            let mut shift = 0.0f64;
            let prev = zs.clone();
            for i in 0..n {
                let mut denom = Cx::one();
                for (j, zj) in prev.iter().enumerate() {
                    if j != i {
                        denom = denom * (prev[i] - *zj);
                    }
                }
                let delta = eval(prev[i]) / denom;
                zs[i] = prev[i] - delta;
                shift = shift.max(delta.abs());
            }
            if shift < 1e-14 {
                break;
            }
        }
        // cluster nearby roots into multiplicities
        let mut clusters: Vec<(Cx<f64>, usize)> = Vec::new();
        for z in zs {
            if let Some((c, m)) = clusters.iter_mut().find(|(c, _)| (*c - z).abs() < 1e-5) {
                let mm = *m as f64;
                *c = (c.scale(mm) + z).scale(1.0 / (mm + 1.0));
                *m += 1;
            } else {
                clusters.push((z, 1));
            }
        }
        clusters
    }
}

/// Resultant of two polynomials via the Sylvester determinant.
pub fn resultant(a: &Polynomial, b: &Polynomial) -> Cx<f64> {
    let m = a.degree();
    let n = b.degree();
    if m == 0 && n == 0 {
        return Cx::one();
    }
    if m == 0 {
        // res(const, b) = a0^n
        let mut r = Cx::one();
        for _ in 0..n {
            r = r * a.coeffs[0];
        }
        return r;
    }
    if n == 0 {
        let mut r = Cx::one();
        for _ in 0..m {
            r = r * b.coeffs[0];
        }
        return r;
    }
    let size = m + n;
    let mut s = vec![vec![Cx::<f64>::zero(); size]; size];
    // rows of a-coefficients (descending), n of them
    for row in 0..n {
        for (k, c) in a.coeffs.iter().rev().enumerate() {
            s[row][row + k] = *c;
        }
    }
    for row in 0..m {
        for (k, c) in b.coeffs.iter().rev().enumerate() {
            s[n + row][row + k] = *c;
        }
    }
    // LU with partial pivoting
    let mut det = Cx::<f64>::one();
    for col in 0..size {
        let mut piv = col;
        let mut best = s[col][col].abs();
        for row in (col + 1)..size {
            if s[row][col].abs() > best {
                best = s[row][col].abs();
                piv = row;
            }
        }
        if best == 0.0 {
            return Cx::zero();
        }
        if piv != col {
            s.swap(col, piv);
            det = -det;
        }
        det = det * s[col][col];
        let inv = Cx::one() / s[col][col];
        for row in (col + 1)..size {
            let f = s[row][col] * inv;
            for k in col..size {
                let sub = f * s[col][k];
                s[row][k] = s[row][k] - sub;
            }
        }
    }
    det
}

/// Rational map f = f₂/f₁ between surface charts, as a pair of coprime
/// polynomials.
#[derive(Clone, Debug)]
pub struct RationalMap {
    pub f1: Polynomial,
    pub f2: Polynomial,
}

impl RationalMap {
    pub fn new(f1: Polynomial, f2: Polynomial) -> Result<Self, PolyError> {
        if f1.is_zero() && f2.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if f1.degree() == 0 && f2.degree() == 0 {
            return Err(PolyError::ConstantMap);
        }
        let norm = f1.max_coeff().max(1e-300) * f2.max_coeff().max(1e-300);
        let scale = {
            let d = f1.degree().max(f2.degree()) as i32;
            norm.powi(d.max(1))
        };
        let res = resultant(&f1, &f2).abs() / scale;
        if res < 1e-10 {
            return Err(PolyError::NotCoprime(res));
        }
        Ok(RationalMap { f1, f2 })
    }

    /// f(z) = p(z) for polynomial p.
    pub fn from_polynomial(p: Polynomial) -> Result<Self, PolyError> {
        RationalMap::new(Polynomial::one(), p)
    }

    /// The axial map f = 1/z^n.
    pub fn axial_inverse_power(n: usize) -> Self {
        RationalMap {
            f1: Polynomial::monomial(n),
            f2: Polynomial::one(),
        }
    }

    /// Blaschke-product map with the given zeros and poles (all inside the
    /// unit disk): f₂ = Π(z−cᵢ)·Π(1−d̄ⱼz), f₁ = Π(1−c̄ᵢz)·Π(z−dⱼ).
    pub fn blaschke(zeros: &[Cx<f64>], poles: &[Cx<f64>]) -> Result<Self, PolyError> {
        let mut f2 = Polynomial::one();
        let mut f1 = Polynomial::one();
        for c in zeros {
            f2 = f2.mul(&Polynomial::new(vec![-*c, Cx::one()]));
            f1 = f1.mul(&Polynomial::new(vec![Cx::one(), -c.conj()]));
        }
        for d in poles {
            f2 = f2.mul(&Polynomial::new(vec![Cx::one(), -d.conj()]));
            f1 = f1.mul(&Polynomial::new(vec![-*d, Cx::one()]));
        }
        RationalMap::new(f1, f2)
    }

    /// Common homogenization degree N = max(deg f₁, deg f₂).
    pub fn degree(&self) -> usize {
        self.f1.degree().max(self.f2.degree())
    }

    pub fn eval<T: Real>(&self, z: Cx<T>) -> Cx<T> {
        self.f2.eval(z) / self.f1.eval(z)
    }

    /// Wronskian W = f₂′f₁ − f₁′f₂; its zeros are the ramification points.
    pub fn wronskian(&self) -> Polynomial {
        self.f2.derivative().mul(&self.f1).sub(&self.f1.derivative().mul(&self.f2))
    }

    /// Ramification points in the chart, with multiplicities.
    pub fn ramification_points(&self) -> Vec<(Cx<f64>, usize)> {
        let w = self.wronskian();
        if w.is_zero() {
            return vec![];
        }
        w.roots()
    }

    /// Zeros of f₁ (the singular set of the pulled-back geometry).
    pub fn singular_points(&self) -> Vec<(Cx<f64>, usize)> {
        if self.f1.degree() == 0 {
            return vec![];
        }
        self.f1.roots()
    }
}
