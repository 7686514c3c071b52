//! Exterior calculus over real coordinate charts.
//!
//! Fields and forms are evaluation procedures, not coefficient arrays: every
//! geometric object in this crate is closed-form, so lazy pointwise
//! evaluation avoids committing to a mesh. Differentiation is forward-mode
//! dual arithmetic over the real chart coordinates; tangents carry complex
//! components so the complexified frame fields X± can be fed to any form.
//!
//! The exterior derivative is defined against constant coordinate tangents
//! (coordinate frames commute, so there is no bracket term) and extends to
//! general tangents by bilinearity.

use crate::liealg::{AlgebraElement, bracket_coeffs};
use crate::scalar::{Cx, D1, D2, D3, Dual, Mat2, Real};
use std::sync::Arc;

/// AD-level dispatch: connects a generic scalar `T` to the trait-object
/// entry point of matching depth, and provides seeding into the next level.
pub trait Ad: Real {
    type Up: Ad;
    fn up(val: Self, eps: Self) -> Self::Up;
    fn up_val(u: Self::Up) -> Self;
    fn up_eps(u: Self::Up) -> Self;
    fn scalar_at(f: &dyn ScalarField, p: &[Self]) -> Cx<Self>;
    fn one_at(f: &dyn OneForm, p: &[Self], v: &[Cx<Self>]) -> Cx<Self>;
    fn two_at(f: &dyn TwoForm, p: &[Self], u: &[Cx<Self>], v: &[Cx<Self>]) -> Cx<Self>;
    fn map_at(f: &dyn ChartMap, p: &[Self]) -> Vec<Self>;
    fn mat_at(f: &dyn MatrixMap, p: &[Self]) -> Mat2<Self>;
    fn mat_one_at(f: &dyn MatrixOneForm, p: &[Self], v: &[Cx<Self>]) -> Mat2<Self>;
}

macro_rules! ad_impl {
    ($ty:ty, $up:ty, $s:ident, $w:ident, $t:ident, $m:ident, $u:ident, $mo:ident) => {
        impl Ad for $ty {
            type Up = $up;
            fn up(val: Self, eps: Self) -> Self::Up {
                Dual::new(val, eps)
            }
            fn up_val(u: Self::Up) -> Self {
                u.re
            }
            fn up_eps(u: Self::Up) -> Self {
                u.eps
            }
            fn scalar_at(f: &dyn ScalarField, p: &[Self]) -> Cx<Self> {
                f.$s(p)
            }
            fn one_at(f: &dyn OneForm, p: &[Self], v: &[Cx<Self>]) -> Cx<Self> {
                f.$w(p, v)
            }
            fn two_at(f: &dyn TwoForm, p: &[Self], u: &[Cx<Self>], v: &[Cx<Self>]) -> Cx<Self> {
                f.$t(p, u, v)
            }
            fn map_at(f: &dyn ChartMap, p: &[Self]) -> Vec<Self> {
                f.$m(p)
            }
            fn mat_at(f: &dyn MatrixMap, p: &[Self]) -> Mat2<Self> {
                f.$u(p)
            }
            fn mat_one_at(f: &dyn MatrixOneForm, p: &[Self], v: &[Cx<Self>]) -> Mat2<Self> {
                f.$mo(p, v)
            }
        }
    };
}

ad_impl!(f64, D1, s0, w0, t0, m0, u0, o0);
ad_impl!(D1, D2, s1, w1, t1, m1, u1, o1);
ad_impl!(D2, D3, s2, w2, t2, m2, u2, o2);

impl Ad for D3 {
    type Up = D3;
    fn up(_: Self, _: Self) -> Self::Up {
        panic!("AD depth exceeded: differentiation past level three is not supported")
    }
    fn up_val(u: Self::Up) -> Self {
        u
    }
    fn up_eps(_: Self::Up) -> Self {
        panic!("AD depth exceeded")
    }
    fn scalar_at(f: &dyn ScalarField, p: &[Self]) -> Cx<Self> {
        f.s3(p)
    }
    fn one_at(f: &dyn OneForm, p: &[Self], v: &[Cx<Self>]) -> Cx<Self> {
        f.w3(p, v)
    }
    fn two_at(f: &dyn TwoForm, p: &[Self], u: &[Cx<Self>], v: &[Cx<Self>]) -> Cx<Self> {
        f.t3(p, u, v)
    }
    fn map_at(f: &dyn ChartMap, p: &[Self]) -> Vec<Self> {
        f.m3(p)
    }
    fn mat_at(f: &dyn MatrixMap, p: &[Self]) -> Mat2<Self> {
        f.u3(p)
    }
    fn mat_one_at(f: &dyn MatrixOneForm, p: &[Self], v: &[Cx<Self>]) -> Mat2<Self> {
        f.o3(p, v)
    }
}

/// Complex scalar field on a chart, evaluable at any AD level.
pub trait ScalarField: Send + Sync {
    fn s0(&self, p: &[f64]) -> Cx<f64>;
    fn s1(&self, p: &[D1]) -> Cx<D1>;
    fn s2(&self, p: &[D2]) -> Cx<D2>;
    fn s3(&self, p: &[D3]) -> Cx<D3>;
}

/// Complex-valued one-form: multilinear in the (complexified) tangent.
pub trait OneForm: Send + Sync {
    fn w0(&self, p: &[f64], v: &[Cx<f64>]) -> Cx<f64>;
    fn w1(&self, p: &[D1], v: &[Cx<D1>]) -> Cx<D1>;
    fn w2(&self, p: &[D2], v: &[Cx<D2>]) -> Cx<D2>;
    fn w3(&self, p: &[D3], v: &[Cx<D3>]) -> Cx<D3>;
}

/// Complex-valued two-form; antisymmetry holds by construction for forms
/// produced by `d` and `wedge`.
pub trait TwoForm: Send + Sync {
    fn t0(&self, p: &[f64], u: &[Cx<f64>], v: &[Cx<f64>]) -> Cx<f64>;
    fn t1(&self, p: &[D1], u: &[Cx<D1>], v: &[Cx<D1>]) -> Cx<D1>;
    fn t2(&self, p: &[D2], u: &[Cx<D2>], v: &[Cx<D2>]) -> Cx<D2>;
    fn t3(&self, p: &[D3], u: &[Cx<D3>], v: &[Cx<D3>]) -> Cx<D3>;
}

/// Differentiable map between real coordinate charts.
pub trait ChartMap: Send + Sync {
    fn dim_out(&self) -> usize;
    fn m0(&self, p: &[f64]) -> Vec<f64>;
    fn m1(&self, p: &[D1]) -> Vec<D1>;
    fn m2(&self, p: &[D2]) -> Vec<D2>;
    fn m3(&self, p: &[D3]) -> Vec<D3>;
}

/// 2×2-matrix-valued map on a chart (bundle maps, group embeddings).
pub trait MatrixMap: Send + Sync {
    fn u0(&self, p: &[f64]) -> Mat2<f64>;
    fn u1(&self, p: &[D1]) -> Mat2<D1>;
    fn u2(&self, p: &[D2]) -> Mat2<D2>;
    fn u3(&self, p: &[D3]) -> Mat2<D3>;
}

/// 2×2-matrix-valued one-form (Maurer–Cartan forms, U⁻¹dU).
pub trait MatrixOneForm: Send + Sync {
    fn o0(&self, p: &[f64], v: &[Cx<f64>]) -> Mat2<f64>;
    fn o1(&self, p: &[D1], v: &[Cx<D1>]) -> Mat2<D1>;
    fn o2(&self, p: &[D2], v: &[Cx<D2>]) -> Mat2<D2>;
    fn o3(&self, p: &[D3], v: &[Cx<D3>]) -> Mat2<D3>;
}

macro_rules! scalar_field_impl {
    ($ty:ty) => {
        impl $crate::forms::ScalarField for $ty {
            fn s0(&self, p: &[f64]) -> $crate::scalar::Cx<f64> {
                self.ev(p)
            }
            fn s1(&self, p: &[$crate::scalar::D1]) -> $crate::scalar::Cx<$crate::scalar::D1> {
                self.ev(p)
            }
            fn s2(&self, p: &[$crate::scalar::D2]) -> $crate::scalar::Cx<$crate::scalar::D2> {
                self.ev(p)
            }
            fn s3(&self, p: &[$crate::scalar::D3]) -> $crate::scalar::Cx<$crate::scalar::D3> {
                self.ev(p)
            }
        }
    };
}

macro_rules! one_form_impl {
    ($ty:ty) => {
        impl $crate::forms::OneForm for $ty {
            fn w0(&self, p: &[f64], v: &[$crate::scalar::Cx<f64>]) -> $crate::scalar::Cx<f64> {
                self.ev(p, v)
            }
            fn w1(
                &self,
                p: &[$crate::scalar::D1],
                v: &[$crate::scalar::Cx<$crate::scalar::D1>],
            ) -> $crate::scalar::Cx<$crate::scalar::D1> {
                self.ev(p, v)
            }
            fn w2(
                &self,
                p: &[$crate::scalar::D2],
                v: &[$crate::scalar::Cx<$crate::scalar::D2>],
            ) -> $crate::scalar::Cx<$crate::scalar::D2> {
                self.ev(p, v)
            }
            fn w3(
                &self,
                p: &[$crate::scalar::D3],
                v: &[$crate::scalar::Cx<$crate::scalar::D3>],
            ) -> $crate::scalar::Cx<$crate::scalar::D3> {
                self.ev(p, v)
            }
        }
    };
}

macro_rules! two_form_impl {
    ($ty:ty) => {
        impl $crate::forms::TwoForm for $ty {
            fn t0(
                &self,
                p: &[f64],
                u: &[$crate::scalar::Cx<f64>],
                v: &[$crate::scalar::Cx<f64>],
            ) -> $crate::scalar::Cx<f64> {
                self.ev(p, u, v)
            }
            fn t1(
                &self,
                p: &[$crate::scalar::D1],
                u: &[$crate::scalar::Cx<$crate::scalar::D1>],
                v: &[$crate::scalar::Cx<$crate::scalar::D1>],
            ) -> $crate::scalar::Cx<$crate::scalar::D1> {
                self.ev(p, u, v)
            }
            fn t2(
                &self,
                p: &[$crate::scalar::D2],
                u: &[$crate::scalar::Cx<$crate::scalar::D2>],
                v: &[$crate::scalar::Cx<$crate::scalar::D2>],
            ) -> $crate::scalar::Cx<$crate::scalar::D2> {
                self.ev(p, u, v)
            }
            fn t3(
                &self,
                p: &[$crate::scalar::D3],
                u: &[$crate::scalar::Cx<$crate::scalar::D3>],
                v: &[$crate::scalar::Cx<$crate::scalar::D3>],
            ) -> $crate::scalar::Cx<$crate::scalar::D3> {
                self.ev(p, u, v)
            }
        }
    };
}

macro_rules! chart_map_impl {
    ($ty:ty) => {
        impl $crate::forms::ChartMap for $ty {
            fn dim_out(&self) -> usize {
                self.dim()
            }
            fn m0(&self, p: &[f64]) -> Vec<f64> {
                self.ev(p)
            }
            fn m1(&self, p: &[$crate::scalar::D1]) -> Vec<$crate::scalar::D1> {
                self.ev(p)
            }
            fn m2(&self, p: &[$crate::scalar::D2]) -> Vec<$crate::scalar::D2> {
                self.ev(p)
            }
            fn m3(&self, p: &[$crate::scalar::D3]) -> Vec<$crate::scalar::D3> {
                self.ev(p)
            }
        }
    };
}

macro_rules! matrix_map_impl {
    ($ty:ty) => {
        impl $crate::forms::MatrixMap for $ty {
            fn u0(&self, p: &[f64]) -> $crate::scalar::Mat2<f64> {
                self.ev(p)
            }
            fn u1(&self, p: &[$crate::scalar::D1]) -> $crate::scalar::Mat2<$crate::scalar::D1> {
                self.ev(p)
            }
            fn u2(&self, p: &[$crate::scalar::D2]) -> $crate::scalar::Mat2<$crate::scalar::D2> {
                self.ev(p)
            }
            fn u3(&self, p: &[$crate::scalar::D3]) -> $crate::scalar::Mat2<$crate::scalar::D3> {
                self.ev(p)
            }
        }
    };
}

macro_rules! matrix_one_form_impl {
    ($ty:ty) => {
        impl $crate::forms::MatrixOneForm for $ty {
            fn o0(
                &self,
                p: &[f64],
                v: &[$crate::scalar::Cx<f64>],
            ) -> $crate::scalar::Mat2<f64> {
                self.ev(p, v)
            }
            fn o1(
                &self,
                p: &[$crate::scalar::D1],
                v: &[$crate::scalar::Cx<$crate::scalar::D1>],
            ) -> $crate::scalar::Mat2<$crate::scalar::D1> {
                self.ev(p, v)
            }
            fn o2(
                &self,
                p: &[$crate::scalar::D2],
                v: &[$crate::scalar::Cx<$crate::scalar::D2>],
            ) -> $crate::scalar::Mat2<$crate::scalar::D2> {
                self.ev(p, v)
            }
            fn o3(
                &self,
                p: &[$crate::scalar::D3],
                v: &[$crate::scalar::Cx<$crate::scalar::D3>],
            ) -> $crate::scalar::Mat2<$crate::scalar::D3> {
                self.ev(p, v)
            }
        }
    };
}

pub(crate) use {
    chart_map_impl, matrix_map_impl, matrix_one_form_impl, one_form_impl, scalar_field_impl,
    two_form_impl,
};

pub type SField = Arc<dyn ScalarField>;
pub type SOneForm = Arc<dyn OneForm>;
pub type STwoForm = Arc<dyn TwoForm>;

/// Coordinate basis tangent e_i of a d-dimensional chart.
pub fn basis_tangent<T: Real>(dim: usize, i: usize) -> Vec<Cx<T>> {
    let mut v = vec![Cx::<T>::zero(); dim];
    v[i] = Cx::one();
    v
}

/// Lift tangent components one AD level, as constants.
fn lift_tangent<T: Ad>(v: &[Cx<T>]) -> Vec<Cx<T::Up>> {
    v.iter()
        .map(|c| {
            Cx::new(
                T::up(c.re, T::zero()),
                T::up(c.im, T::zero()),
            )
        })
        .collect()
}

fn seed_point<T: Ad>(p: &[T], dir: &[T]) -> Vec<T::Up> {
    p.iter()
        .zip(dir.iter())
        .map(|(&x, &e)| T::up(x, e))
        .collect()
}

/// Exact directional derivative of a scalar field along a complexified
/// tangent: ∂_v f = ∂_{Re v} f + i ∂_{Im v} f.
pub fn dir_scalar<T: Ad>(f: &dyn ScalarField, p: &[T], v: &[Cx<T>]) -> Cx<T> {
    let re_dir: Vec<T> = v.iter().map(|c| c.re).collect();
    let out = T::Up::scalar_at(f, &seed_point(p, &re_dir));
    let mut d = Cx::new(T::up_eps(out.re), T::up_eps(out.im));
    if !v.iter().all(|c| c.im.is_structural_zero()) {
        let im_dir: Vec<T> = v.iter().map(|c| c.im).collect();
        let out = T::Up::scalar_at(f, &seed_point(p, &im_dir));
        d = d + Cx::i() * Cx::new(T::up_eps(out.re), T::up_eps(out.im));
    }
    d
}

/// Value and exact second directional derivative v^T H v of a scalar field
/// along a real tangent (both dual layers seeded with the same direction).
pub fn second_dir_scalar(f: &dyn ScalarField, p: &[f64], v: &[f64]) -> (Cx<f64>, Cx<f64>) {
    let seeded: Vec<D2> = p
        .iter()
        .zip(v.iter())
        .map(|(&x, &e)| D2::new(D1::new(x, e), D1::new(e, 0.0)))
        .collect();
    let out = D2::scalar_at(f, &seeded);
    (
        Cx::new(out.re.re.re, out.im.re.re),
        Cx::new(out.re.eps.eps, out.im.eps.eps),
    )
}

/// Image point and pushed-forward tangent of a chart map.
pub fn pushforward<T: Ad>(m: &dyn ChartMap, p: &[T], v: &[Cx<T>]) -> (Vec<T>, Vec<Cx<T>>) {
    let re_dir: Vec<T> = v.iter().map(|c| c.re).collect();
    let out = T::Up::map_at(m, &seed_point(p, &re_dir));
    let q: Vec<T> = out.iter().map(|&x| T::up_val(x)).collect();
    let mut w: Vec<Cx<T>> = out
        .iter()
        .map(|&x| Cx::new(T::up_eps(x), T::zero()))
        .collect();
    if !v.iter().all(|c| c.im.is_structural_zero()) {
        let im_dir: Vec<T> = v.iter().map(|c| c.im).collect();
        let out = T::Up::map_at(m, &seed_point(p, &im_dir));
        for (wi, &x) in w.iter_mut().zip(out.iter()) {
            *wi = *wi + Cx::i().scale(T::up_eps(x));
        }
    }
    (q, w)
}

/// Value and directional derivative of a matrix map.
pub fn dir_matrix<T: Ad>(m: &dyn MatrixMap, p: &[T], v: &[Cx<T>]) -> (Mat2<T>, Mat2<T>) {
    let re_dir: Vec<T> = v.iter().map(|c| c.re).collect();
    let out = T::Up::mat_at(m, &seed_point(p, &re_dir));
    let down = |z: Cx<T::Up>| Cx::new(T::up_val(z.re), T::up_val(z.im));
    let deps = |z: Cx<T::Up>| Cx::new(T::up_eps(z.re), T::up_eps(z.im));
    let value = Mat2::new(down(out.a), down(out.b), down(out.c), down(out.d));
    let mut deriv = Mat2::new(deps(out.a), deps(out.b), deps(out.c), deps(out.d));
    if !v.iter().all(|c| c.im.is_structural_zero()) {
        let im_dir: Vec<T> = v.iter().map(|c| c.im).collect();
        let out = T::Up::mat_at(m, &seed_point(p, &im_dir));
        let di = Mat2::new(deps(out.a), deps(out.b), deps(out.c), deps(out.d));
        deriv = deriv.add(di.scale(Cx::i()));
    }
    (value, deriv)
}

// ---------------------------------------------------------------------------
// scalar field combinators
// ---------------------------------------------------------------------------

pub struct ConstField(pub Cx<f64>);
impl ConstField {
    fn ev<T: Ad>(&self, _p: &[T]) -> Cx<T> {
        Cx::lift(self.0)
    }
}
scalar_field_impl!(ConstField);

pub struct SumField(pub Vec<SField>);
impl SumField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        self.0
            .iter()
            .fold(Cx::zero(), |acc, f| acc + T::scalar_at(&**f, p))
    }
}
scalar_field_impl!(SumField);

pub struct ProductField(pub SField, pub SField);
impl ProductField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        T::scalar_at(&*self.0, p) * T::scalar_at(&*self.1, p)
    }
}
scalar_field_impl!(ProductField);

pub struct ScaleField(pub Cx<f64>, pub SField);
impl ScaleField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        Cx::lift(self.0) * T::scalar_at(&*self.1, p)
    }
}
scalar_field_impl!(ScaleField);

pub struct ConjField(pub SField);
impl ConjField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        T::scalar_at(&*self.0, p).conj()
    }
}
scalar_field_impl!(ConjField);

/// |f|² as a (real-valued) scalar field.
pub struct NormSqField(pub SField);
impl NormSqField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        Cx::real(T::scalar_at(&*self.0, p).norm_sqr())
    }
}
scalar_field_impl!(NormSqField);

/// ln|f| = ½ ln|f|², defined away from the zeros of f.
pub struct LnModulusField(pub SField);
impl LnModulusField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        Cx::real(T::scalar_at(&*self.0, p).norm_sqr().ln() * T::from_f64(0.5))
    }
}
scalar_field_impl!(LnModulusField);

/// e^{iβ} for a real-valued field β.
pub struct PhaseField(pub SField);
impl PhaseField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let b = T::scalar_at(&*self.0, p).re;
        Cx::new(b.cos(), b.sin())
    }
}
scalar_field_impl!(PhaseField);

/// Real polynomial Σ c_{jk} x^j y^k in the first two chart coordinates
/// (gauge parameters for invariance tests).
pub struct RealPoly2 {
    pub terms: Vec<(u32, u32, f64)>,
}
impl RealPoly2 {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let mut acc = T::zero();
        for &(j, k, c) in &self.terms {
            let mut t = T::from_f64(c);
            for _ in 0..j {
                t = t * p[0];
            }
            for _ in 0..k {
                t = t * p[1];
            }
            acc = acc + t;
        }
        Cx::real(acc)
    }
}
scalar_field_impl!(RealPoly2);

// ---------------------------------------------------------------------------
// one-form combinators
// ---------------------------------------------------------------------------

/// c · dx_i on any chart.
pub struct CoordForm {
    pub index: usize,
    pub coeff: Cx<f64>,
}
impl CoordForm {
    fn ev<T: Ad>(&self, _p: &[T], v: &[Cx<T>]) -> Cx<T> {
        Cx::lift(self.coeff) * v[self.index]
    }
}
one_form_impl!(CoordForm);

pub struct OneFormSum(pub Vec<SOneForm>);
impl OneFormSum {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        self.0
            .iter()
            .fold(Cx::zero(), |acc, w| acc + T::one_at(&**w, p, v))
    }
}
one_form_impl!(OneFormSum);

pub struct ScaleOneForm(pub Cx<f64>, pub SOneForm);
impl ScaleOneForm {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        Cx::lift(self.0) * T::one_at(&*self.1, p, v)
    }
}
one_form_impl!(ScaleOneForm);

/// f · ω for a scalar field f.
pub struct FieldTimesOneForm(pub SField, pub SOneForm);
impl FieldTimesOneForm {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        T::scalar_at(&*self.0, p) * T::one_at(&*self.1, p, v)
    }
}
one_form_impl!(FieldTimesOneForm);

/// df of a scalar field.
pub struct DScalar(pub SField);
impl DScalar {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        dir_scalar(&*self.0, p, v)
    }
}
one_form_impl!(DScalar);

/// φ*ω of a one-form through a chart map.
pub struct PullbackOneForm {
    pub map: Arc<dyn ChartMap>,
    pub form: SOneForm,
}
impl PullbackOneForm {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let (q, w) = pushforward(&*self.map, p, v);
        T::one_at(&*self.form, &q, &w)
    }
}
one_form_impl!(PullbackOneForm);

// ---------------------------------------------------------------------------
// two-form combinators
// ---------------------------------------------------------------------------

/// dω of a one-form against constant coordinate tangents:
/// dω(u,v) = ∂_u[ω(·)(v)] − ∂_v[ω(·)(u)].
pub struct DOneForm(pub SOneForm);
impl DOneForm {
    fn ev<T: Ad>(&self, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
        dir_one_form(&*self.0, p, u, v) - dir_one_form(&*self.0, p, v, u)
    }
}
two_form_impl!(DOneForm);

/// ∂_u [ω(·, v)] with v held constant.
fn dir_one_form<T: Ad>(w: &dyn OneForm, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
    let v_up = lift_tangent(v);
    let re_dir: Vec<T> = u.iter().map(|c| c.re).collect();
    let out = T::Up::one_at(w, &seed_point(p, &re_dir), &v_up);
    let mut d = Cx::new(T::up_eps(out.re), T::up_eps(out.im));
    if !u.iter().all(|c| c.im.is_structural_zero()) {
        let im_dir: Vec<T> = u.iter().map(|c| c.im).collect();
        let out = T::Up::one_at(w, &seed_point(p, &im_dir), &v_up);
        d = d + Cx::i() * Cx::new(T::up_eps(out.re), T::up_eps(out.im));
    }
    d
}

/// α ∧ β of two scalar-valued one-forms.
pub struct Wedge(pub SOneForm, pub SOneForm);
impl Wedge {
    fn ev<T: Ad>(&self, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
        let au = T::one_at(&*self.0, p, u);
        let av = T::one_at(&*self.0, p, v);
        let bu = T::one_at(&*self.1, p, u);
        let bv = T::one_at(&*self.1, p, v);
        au * bv - av * bu
    }
}
two_form_impl!(Wedge);

pub struct TwoFormSum(pub Vec<STwoForm>);
impl TwoFormSum {
    fn ev<T: Ad>(&self, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
        self.0
            .iter()
            .fold(Cx::zero(), |acc, f| acc + T::two_at(&**f, p, u, v))
    }
}
two_form_impl!(TwoFormSum);

pub struct ScaleTwoForm(pub Cx<f64>, pub STwoForm);
impl ScaleTwoForm {
    fn ev<T: Ad>(&self, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
        Cx::lift(self.0) * T::two_at(&*self.1, p, u, v)
    }
}
two_form_impl!(ScaleTwoForm);

pub struct FieldTimesTwoForm(pub SField, pub STwoForm);
impl FieldTimesTwoForm {
    fn ev<T: Ad>(&self, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
        T::scalar_at(&*self.0, p) * T::two_at(&*self.1, p, u, v)
    }
}
two_form_impl!(FieldTimesTwoForm);

pub struct PullbackTwoForm {
    pub map: Arc<dyn ChartMap>,
    pub form: STwoForm,
}
impl PullbackTwoForm {
    fn ev<T: Ad>(&self, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
        let (q, pu) = pushforward(&*self.map, p, u);
        let (_, pv) = pushforward(&*self.map, p, v);
        T::two_at(&*self.form, &q, &pu, &pv)
    }
}
two_form_impl!(PullbackTwoForm);

// ---------------------------------------------------------------------------
// algebra-valued forms
// ---------------------------------------------------------------------------

/// Lie(H¹_λ)-valued one-form, stored as component scalar one-forms on the
/// basis (t₀, t₊, t₋).
#[derive(Clone)]
pub struct AlgOneForm {
    pub lambda: f64,
    pub c0: SOneForm,
    pub cplus: SOneForm,
    pub cminus: SOneForm,
}

impl AlgOneForm {
    pub fn eval<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> AlgebraElement<T> {
        AlgebraElement::new(
            self.lambda,
            T::one_at(&*self.c0, p, v),
            T::one_at(&*self.cplus, p, v),
            T::one_at(&*self.cminus, p, v),
        )
    }

    /// F = dA + ½[A, A] componentwise:
    /// F⁰ = dc0 + 2iλ c₊∧c₋, F± = dc± ∓ i c0∧c±.
    pub fn curvature(&self) -> AlgTwoForm {
        let lam = self.lambda;
        let f0: STwoForm = Arc::new(TwoFormSum(vec![
            Arc::new(DOneForm(self.c0.clone())),
            Arc::new(ScaleTwoForm(
                Cx::new(0.0, 2.0 * lam),
                Arc::new(Wedge(self.cplus.clone(), self.cminus.clone())),
            )),
        ]));
        let fp: STwoForm = Arc::new(TwoFormSum(vec![
            Arc::new(DOneForm(self.cplus.clone())),
            Arc::new(ScaleTwoForm(
                Cx::new(0.0, -1.0),
                Arc::new(Wedge(self.c0.clone(), self.cplus.clone())),
            )),
        ]));
        let fm: STwoForm = Arc::new(TwoFormSum(vec![
            Arc::new(DOneForm(self.cminus.clone())),
            Arc::new(ScaleTwoForm(
                Cx::new(0.0, 1.0),
                Arc::new(Wedge(self.c0.clone(), self.cminus.clone())),
            )),
        ]));
        AlgTwoForm {
            lambda: lam,
            f0,
            fplus: fp,
            fminus: fm,
        }
    }

    pub fn pullback(&self, map: Arc<dyn ChartMap>) -> AlgOneForm {
        AlgOneForm {
            lambda: self.lambda,
            c0: Arc::new(PullbackOneForm {
                map: map.clone(),
                form: self.c0.clone(),
            }),
            cplus: Arc::new(PullbackOneForm {
                map: map.clone(),
                form: self.cplus.clone(),
            }),
            cminus: Arc::new(PullbackOneForm {
                map,
                form: self.cminus.clone(),
            }),
        }
    }

    /// Componentwise sup (value level) of the difference with another form,
    /// over a set of points and coordinate tangents.
    pub fn sup_difference(&self, other: &AlgOneForm, points: &[Vec<f64>], dim: usize) -> f64 {
        let mut sup: f64 = 0.0;
        for p in points {
            for i in 0..dim {
                let v = basis_tangent::<f64>(dim, i);
                let d = self.eval(p, &v).sub(other.eval(p, &v));
                sup = sup.max(d.sup_abs());
            }
        }
        sup
    }
}

/// Lie-algebra-valued two-form (curvatures).
#[derive(Clone)]
pub struct AlgTwoForm {
    pub lambda: f64,
    pub f0: STwoForm,
    pub fplus: STwoForm,
    pub fminus: STwoForm,
}

impl AlgTwoForm {
    pub fn eval<T: Ad>(&self, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> AlgebraElement<T> {
        AlgebraElement::new(
            self.lambda,
            T::two_at(&*self.f0, p, u, v),
            T::two_at(&*self.fplus, p, u, v),
            T::two_at(&*self.fminus, p, u, v),
        )
    }

    /// Sup of all components over points and all coordinate bivectors.
    pub fn sup_on_coordinate_bivectors(&self, points: &[Vec<f64>], dim: usize) -> f64 {
        let mut sup: f64 = 0.0;
        for p in points {
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let u = basis_tangent::<f64>(dim, i);
                    let v = basis_tangent::<f64>(dim, j);
                    sup = sup.max(self.eval(p, &u, &v).sup_abs());
                }
            }
        }
        sup
    }
}

/// Verify the bracket identity A∧A = ½[A,A] used throughout: for
/// algebra-valued forms the wedge with matrix product is
/// (A∧A)(u,v) = [A(u), A(v)].
pub fn alg_wedge_value<T: Ad>(
    a: &AlgOneForm,
    p: &[T],
    u: &[Cx<T>],
    v: &[Cx<T>],
) -> AlgebraElement<T> {
    bracket_coeffs(a.eval(p, u), a.eval(p, v))
}

// ---------------------------------------------------------------------------
// matrix-form calculus
// ---------------------------------------------------------------------------

/// U⁻¹ dU for a matrix map U.
pub struct MatLogDeriv(pub Arc<dyn MatrixMap>);
impl MatLogDeriv {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Mat2<T> {
        let (value, deriv) = dir_matrix(&*self.0, p, v);
        value.inverse().mul(deriv)
    }
}
matrix_one_form_impl!(MatLogDeriv);

/// dω(u,v) for a matrix-valued one-form, constant coordinate tangents.
pub fn matrix_exterior<T: Ad>(
    w: &dyn MatrixOneForm,
    p: &[T],
    u: &[Cx<T>],
    v: &[Cx<T>],
) -> Mat2<T> {
    matrix_dir(w, p, u, v).sub(matrix_dir(w, p, v, u))
}

fn matrix_dir<T: Ad>(w: &dyn MatrixOneForm, p: &[T], u: &[Cx<T>], v: &[Cx<T>]) -> Mat2<T> {
    let v_up = lift_tangent(v);
    let deps = |m: Mat2<T::Up>| {
        let e = |z: Cx<T::Up>| Cx::new(T::up_eps(z.re), T::up_eps(z.im));
        Mat2::new(e(m.a), e(m.b), e(m.c), e(m.d))
    };
    let re_dir: Vec<T> = u.iter().map(|c| c.re).collect();
    let out = T::Up::mat_one_at(w, &seed_point(p, &re_dir), &v_up);
    let mut d = deps(out);
    if !u.iter().all(|c| c.im.is_structural_zero()) {
        let im_dir: Vec<T> = u.iter().map(|c| c.im).collect();
        let out = T::Up::mat_one_at(w, &seed_point(p, &im_dir), &v_up);
        d = d.add(deps(out).scale(Cx::i()));
    }
    d
}

/// Curvature F(u,v) = dω(u,v) + [ω(u), ω(v)] of a matrix one-form.
pub fn matrix_curvature<T: Ad>(
    w: &dyn MatrixOneForm,
    p: &[T],
    u: &[Cx<T>],
    v: &[Cx<T>],
) -> Mat2<T> {
    let wu = T::mat_one_at(w, p, u);
    let wv = T::mat_one_at(w, p, v);
    matrix_exterior(w, p, u, v).add(wu.commutator(wv))
}

/// Sup of the matrix curvature over points and coordinate bivectors.
pub fn matrix_flatness_sup(w: &dyn MatrixOneForm, points: &[Vec<f64>], dim: usize) -> f64 {
    let mut sup: f64 = 0.0;
    for p in points {
        for i in 0..dim {
            for j in (i + 1)..dim {
                let u = basis_tangent::<f64>(dim, i);
                let v = basis_tangent::<f64>(dim, j);
                sup = sup.max(matrix_curvature(w, p, &u, &v).sup_abs());
            }
        }
    }
    sup
}
