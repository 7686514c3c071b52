//! Forward-mode dual numbers and complex arithmetic generic over the scalar.
//!
//! Every field and differential form in this crate evaluates over a scalar
//! type `T: Real`, which is either `f64` or a nested dual number. Seeding a
//! chart coordinate with `Dual { re, eps }` and reading back `eps` gives the
//! exact derivative of the evaluation, with no truncation error. Nesting
//! duals gives exact second derivatives. Complex chart values are represented
//! as `Cx<T>` with independent real and imaginary parts, so conjugation of
//! point-dependent values differentiates correctly along real chart
//! directions (complex-step differentiation would not, since the fields here
//! are real-analytic but not holomorphic).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar arithmetic shared by `f64` and nested duals.
pub trait Real:
    Copy
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    /// Value part with all derivative slots stripped.
    fn val(self) -> f64;
    /// True only for the structural zero (value and all derivative slots).
    fn is_structural_zero(self) -> bool;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn val(self) -> f64 {
        self
    }
    fn is_structural_zero(self) -> bool {
        self == 0.0
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
}

/// Dual number `re + eps·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T: Real> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }
    pub fn constant(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}
impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}
impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}
impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = T::one() / o.re;
        Dual::new(
            self.re * inv,
            (self.eps * o.re - self.re * o.eps) * inv * inv,
        )
    }
}
impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Real> Real for Dual<T> {
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }
    fn val(self) -> f64 {
        self.re.val()
    }
    fn is_structural_zero(self) -> bool {
        self.re.is_structural_zero() && self.eps.is_structural_zero()
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.eps / (T::from_f64(2.0) * s))
    }
    fn ln(self) -> Self {
        Dual::new(self.re.ln(), self.eps / self.re)
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, self.eps * e)
    }
    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.eps * self.re.cos())
    }
    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -(self.eps * self.re.sin()))
    }
}

/// First, second and third AD levels. Depth two is the deepest the library
/// uses (curvature of forms whose evaluation already differentiates once);
/// `D3` exists so depth-two code can still seed a direction.
pub type D1 = Dual<f64>;
pub type D2 = Dual<D1>;
pub type D3 = Dual<D2>;

/// Complex number over any `Real` scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx<T: Real> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }
    pub fn real(re: T) -> Self {
        Cx {
            re,
            im: T::zero(),
        }
    }
    pub fn zero() -> Self {
        Cx::real(T::zero())
    }
    pub fn one() -> Self {
        Cx::real(T::one())
    }
    pub fn i() -> Self {
        Cx::new(T::zero(), T::one())
    }
    pub fn from_f64(re: f64, im: f64) -> Self {
        Cx::new(T::from_f64(re), T::from_f64(im))
    }
    /// Lift a plain complex number into the scalar level `T`.
    pub fn lift(z: Cx<f64>) -> Self {
        Cx::from_f64(z.re, z.im)
    }
    pub fn conj(self) -> Self {
        Cx::new(self.re, -self.im)
    }
    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }
    pub fn scale(self, s: T) -> Self {
        Cx::new(self.re * s, self.im * s)
    }
    pub fn val(self) -> Cx<f64> {
        Cx::new(self.re.val(), self.im.val())
    }
    pub fn is_structural_zero(self) -> bool {
        self.re.is_structural_zero() && self.im.is_structural_zero()
    }
    pub fn abs(self) -> T {
        self.norm_sqr().sqrt()
    }
}

impl Cx<f64> {
    /// Principal square root; only needed at the plain-f64 level
    /// (matrix exponentials in the path-ordered integrator).
    pub fn sqrt_f64(self) -> Cx<f64> {
        let r = self.abs();
        let theta = self.im.atan2(self.re) / 2.0;
        Cx::new(r.sqrt() * theta.cos(), r.sqrt() * theta.sin())
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}
impl<T: Real> Sub for Cx<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}
impl<T: Real> Mul for Cx<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}
impl<T: Real> Div for Cx<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = T::one() / o.norm_sqr();
        Cx::new(
            (self.re * o.re + self.im * o.im) * inv,
            (self.im * o.re - self.re * o.im) * inv,
        )
    }
}
impl<T: Real> Neg for Cx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx::new(-self.re, -self.im)
    }
}

/// 2×2 complex matrix over the scalar `T`, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T: Real> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub c: Cx<T>,
    pub d: Cx<T>,
}

impl<T: Real> Mat2<T> {
    pub fn new(a: Cx<T>, b: Cx<T>, c: Cx<T>, d: Cx<T>) -> Self {
        Mat2 { a, b, c, d }
    }
    pub fn zero() -> Self {
        Mat2::new(Cx::zero(), Cx::zero(), Cx::zero(), Cx::zero())
    }
    pub fn identity() -> Self {
        Mat2::new(Cx::one(), Cx::zero(), Cx::zero(), Cx::one())
    }
    pub fn det(self) -> Cx<T> {
        self.a * self.d - self.b * self.c
    }
    pub fn trace(self) -> Cx<T> {
        self.a + self.d
    }
    pub fn mul(self, o: Self) -> Self {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
    pub fn add(self, o: Self) -> Self {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
    pub fn sub(self, o: Self) -> Self {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
    pub fn scale(self, s: Cx<T>) -> Self {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
    /// Inverse; caller must ensure the matrix is nonsingular.
    pub fn inverse(self) -> Self {
        let inv = Cx::one() / self.det();
        Mat2::new(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)
    }
    pub fn commutator(self, o: Self) -> Self {
        self.mul(o).sub(o.mul(self))
    }
    /// Largest entry modulus of the value part.
    pub fn sup_abs(self) -> f64 {
        let m = |z: Cx<T>| z.val().abs();
        m(self.a).max(m(self.b)).max(m(self.c)).max(m(self.d))
    }
}

impl Mat2<f64> {
    /// Matrix exponential via the closed form for 2×2 matrices:
    /// exp(M) = e^{t/2} ( cosh(q) I + sinh(q)/q (M - (t/2) I) ),
    /// t = tr M, q = sqrt((t/2)^2 - det M).
    pub fn exp(self) -> Self {
        let half_tr = self.trace().scale(0.5);
        let m0 = self.sub(Mat2::identity().scale(half_tr));
        let q2 = half_tr * half_tr - self.det();
        let q = q2.sqrt_f64();
        let (ch, shq) = if q.abs() < 1e-12 {
            // cosh q -> 1, sinh q / q -> 1
            (Cx::one(), Cx::one())
        } else {
            let eq = cx_exp(q);
            let emq = cx_exp(-q);
            let ch = (eq + emq).scale(0.5);
            let sh = (eq - emq).scale(0.5);
            (ch, sh / q)
        };
        let scale = cx_exp(half_tr);
        Mat2::identity()
            .scale(ch)
            .add(m0.scale(shq))
            .scale(scale)
    }
}

/// Complex exponential at the plain-f64 level.
pub fn cx_exp(z: Cx<f64>) -> Cx<f64> {
    let e = z.re.exp();
    Cx::new(e * z.im.cos(), e * z.im.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_product_rule() {
        // d/dx (x^2 sin x) at x = 1.3
        let x = D1::new(1.3, 1.0);
        let y = x * x * x.sin();
        let expect = 2.0 * 1.3 * 1.3f64.sin() + 1.3 * 1.3 * 1.3f64.cos();
        assert!((y.eps - expect).abs() < 1e-14);
    }

    #[test]
    fn nested_dual_second_derivative() {
        // d^2/dx^2 ln(x) = -1/x^2 at x = 2
        let x = D2::new(D1::new(2.0, 1.0), D1::new(1.0, 0.0));
        let y = x.ln();
        assert!((y.eps.eps - (-0.25)).abs() < 1e-15);
    }

    #[test]
    fn complex_division() {
        let a = Cx::<f64>::new(1.0, 2.0);
        let b = Cx::<f64>::new(3.0, -1.0);
        let q = a / b;
        let back = q * b;
        assert!((back.re - a.re).abs() < 1e-14 && (back.im - a.im).abs() < 1e-14);
    }

    #[test]
    fn mat2_exp_rotation() {
        // exp(theta (i t0-like)) on a diagonal traceless generator
        let t = Mat2::new(
            Cx::new(0.0, -0.5),
            Cx::zero(),
            Cx::zero(),
            Cx::new(0.0, 0.5),
        );
        let theta = 1.1f64;
        let e = t.scale(Cx::real(theta)).exp();
        assert!((e.a.re - (theta / 2.0).cos()).abs() < 1e-12);
        assert!((e.a.im + (theta / 2.0).sin()).abs() < 1e-12);
        assert!((e.det().re - 1.0).abs() < 1e-12);
    }
}
