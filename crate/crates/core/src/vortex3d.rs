//! Vortex configurations (Φ, A) on the group manifold H¹_{λ₀}.
//!
//! A rational map lifts to a pair of homogeneous polynomials (F₁, F₂) on ℂ²,
//! which parameterises a bundle map U: H¹_{λ₀} → H¹_λ. The flat connection
//! 𝒜 = U⁻¹dU is in the vortex gauge
//! 𝒜 = (A+σ⁰)t₀ + ½Φσ t₋ + ½Φ̄σ̄ t₊, from which (Φ, A) are extracted. The
//! module verifies the 3D vortex equations, the closed-form expressions for
//! homogeneous lifts, holonomy quantization along the fibre generator, gauge
//! coherence at the level of fields and of U, and descent back to the 2D
//! vortex connection through the singular gauge transformation r_{f₁}.

use crate::forms::{
    basis_tangent, chart_map_impl, dir_scalar, matrix_flatness_sup, matrix_map_impl,
    one_form_impl, scalar_field_impl, Ad, AlgOneForm, ChartMap, ConjField, DOneForm, DScalar,
    FieldTimesOneForm, MatLogDeriv, MatrixMap, MatrixOneForm, OneForm, OneFormSum, PhaseField,
    ProductField, PullbackOneForm, ScaleField, SField, SOneForm, TwoForm, TwoFormSum, Wedge,
    ScaleTwoForm, FieldTimesTwoForm,
};
use crate::group::{FibrePath, GroupGeometry, SectionInclusion};
use crate::liealg::AlgebraElement;
use crate::poly::{Polynomial, RationalMap};
use crate::quad::{integrate_alg_along_path, path_ordered_exp};
use crate::report::ResidualReport;
use crate::sample;
use crate::scalar::{Cx, Mat2, Real};
use crate::vortex2d::VortexSolution;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("trivial lift is unavailable for λ = −1 (the target bundle is non-trivial)")]
    TrivialLiftUnavailable,
    #[error("pair degenerates: |F₁|² − λ|F₂|² = {value:.3e} at a sample point")]
    PairDegenerate { value: f64 },
    #[error("connection is not in the vortex gauge: residual {0:.3e}")]
    NotVortexGauge(f64),
    #[error("holonomy is not quantized: t± component {tpm:.3e}, t₀/2π = {n:.6}")]
    NonQuantized { tpm: f64, n: f64 },
}

/// Homogeneous polynomial Σ_k c_k z₁^{N−k} z₂^k of degree N.
#[derive(Clone, Debug)]
pub struct HomogeneousPoly {
    pub coeffs: Vec<Cx<f64>>,
}

impl HomogeneousPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Homogenize a univariate polynomial to total degree n.
    pub fn homogenize(p: &Polynomial, n: usize) -> Self {
        let mut coeffs = vec![Cx::zero(); n + 1];
        for (k, c) in p.coeffs.iter().enumerate() {
            coeffs[k] = *c;
        }
        HomogeneousPoly { coeffs }
    }

    pub fn eval<T: Real>(&self, z1: Cx<T>, z2: Cx<T>) -> Cx<T> {
        let n = self.degree();
        let mut acc = Cx::<T>::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut term = Cx::lift(*c);
            for _ in 0..(n - k) {
                term = term * z1;
            }
            for _ in 0..k {
                term = term * z2;
            }
            acc = acc + term;
        }
        acc
    }

    /// ∂F/∂z₁ as a degree N−1 homogeneous polynomial.
    pub fn d1(&self) -> HomogeneousPoly {
        let n = self.degree();
        if n == 0 {
            return HomogeneousPoly {
                coeffs: vec![Cx::zero()],
            };
        }
        HomogeneousPoly {
            coeffs: (0..n)
                .map(|k| self.coeffs[k].scale((n - k) as f64))
                .collect(),
        }
    }

    /// ∂F/∂z₂ as a degree N−1 homogeneous polynomial.
    pub fn d2(&self) -> HomogeneousPoly {
        let n = self.degree();
        if n == 0 {
            return HomogeneousPoly {
                coeffs: vec![Cx::zero()],
            };
        }
        HomogeneousPoly {
            coeffs: (1..=n).map(|k| self.coeffs[k].scale(k as f64)).collect(),
        }
    }
}

/// A pair (F₁, F₂) of common-degree homogeneous polynomials lifting a
/// rational map: Fᵢ(z₁,z₂) = z₁^N fᵢ(z₂/z₁).
#[derive(Clone, Debug)]
pub struct HomogeneousPair {
    pub f1: HomogeneousPoly,
    pub f2: HomogeneousPoly,
    pub lambda0: f64,
    pub lambda: f64,
}

impl HomogeneousPair {
    pub fn from_rational_map(map: &RationalMap, lambda0: f64, lambda: f64) -> Self {
        let n = map.degree();
        HomogeneousPair {
            f1: HomogeneousPoly::homogenize(&map.f1, n),
            f2: HomogeneousPoly::homogenize(&map.f2, n),
            lambda0,
            lambda,
        }
    }

    pub fn degree(&self) -> usize {
        self.f1.degree()
    }

    /// D² = |F₁|² − λ|F₂|² at embedded coordinates.
    pub fn d_squared<T: Ad>(&self, z1: Cx<T>, z2: Cx<T>) -> T {
        let f1 = self.f1.eval(z1, z2);
        let f2 = self.f2.eval(z1, z2);
        f1.norm_sqr() - T::from_f64(self.lambda) * f2.norm_sqr()
    }
}

// ---------------------------------------------------------------------------
// bundle maps
// ---------------------------------------------------------------------------

/// U = (|F₁|²−λ|F₂|²)^{−1/2} [[F₁, λF̄₂], [F₂, F̄₁]] on the source chart.
pub struct PairBundleMap {
    pub pair: HomogeneousPair,
}
impl PairBundleMap {
    fn ev<T: Ad>(&self, p: &[T]) -> Mat2<T> {
        let embed = crate::group::EmbedMap {
            lambda: self.pair.lambda0,
        };
        let out = embed.ev(p);
        let z1 = Cx::new(out[0], out[1]);
        let z2 = Cx::new(out[2], out[3]);
        let f1 = self.pair.f1.eval(z1, z2);
        let f2 = self.pair.f2.eval(z1, z2);
        let d2 = f1.norm_sqr() - T::from_f64(self.pair.lambda) * f2.norm_sqr();
        let inv_d = T::one() / d2.sqrt();
        let lam = Cx::from_f64(self.pair.lambda, 0.0);
        Mat2::new(f1, lam * f2.conj(), f2, f1.conj()).scale(Cx::real(inv_d))
    }
}
matrix_map_impl!(PairBundleMap);

/// The trivial lift U = s_λ(f(z)): constant along the fibres, available for
/// λ ≠ −1.
pub struct TrivialLiftMap {
    pub map: RationalMap,
    pub lambda: f64,
}
impl TrivialLiftMap {
    fn ev<T: Ad>(&self, p: &[T]) -> Mat2<T> {
        let z = Cx::new(p[0], p[1]);
        let f = self.map.eval(z);
        let q = T::one() - T::from_f64(self.lambda) * f.norm_sqr();
        let inv = T::one() / q.sqrt();
        let lam = Cx::from_f64(self.lambda, 0.0);
        Mat2::new(Cx::one(), lam * f.conj(), f, Cx::one()).scale(Cx::real(inv))
    }
}
matrix_map_impl!(TrivialLiftMap);

/// U · e^{β t₀} = U · diag(e^{−iβ/2}, e^{iβ/2}) for a real field β.
pub struct GaugeTwistedMap {
    pub base: Arc<dyn MatrixMap>,
    pub beta: SField,
}
impl GaugeTwistedMap {
    fn ev<T: Ad>(&self, p: &[T]) -> Mat2<T> {
        let u = T::mat_at(&*self.base, p);
        let b = T::scalar_at(&*self.beta, p).re * T::from_f64(0.5);
        let e_minus = Cx::new(b.cos(), -b.sin());
        let e_plus = Cx::new(b.cos(), b.sin());
        Mat2::new(u.a * e_minus, u.b * e_plus, u.c * e_minus, u.d * e_plus)
    }
}
matrix_map_impl!(GaugeTwistedMap);

// ---------------------------------------------------------------------------
// algebra components of U⁻¹dU
// ---------------------------------------------------------------------------

/// t₀ coefficient of a matrix one-form in span{t₀,t₊,t₋}: c0 = 2i m₁₁.
pub struct MatC0 {
    pub m: Arc<dyn MatrixOneForm>,
}
impl MatC0 {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let m = T::mat_one_at(&*self.m, p, v);
        Cx::from_f64(0.0, 2.0) * m.a
    }
}
one_form_impl!(MatC0);

/// t₋ coefficient: c₋ = i m₂₁.
pub struct MatCMinus {
    pub m: Arc<dyn MatrixOneForm>,
}
impl MatCMinus {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let m = T::mat_one_at(&*self.m, p, v);
        Cx::i() * m.c
    }
}
one_form_impl!(MatCMinus);

/// t₊ coefficient: c₊ = m₁₂/(iλ) for λ ≠ 0. The 2×2 representation of
/// Lie(SE₂) collapses t₊, so at λ = 0 the coefficient is reconstructed from
/// the reality of U⁻¹dU (c₊ = conj(c₋) on real tangents, extended
/// ℂ-linearly).
pub struct MatCPlus {
    pub m: Arc<dyn MatrixOneForm>,
    pub lambda: f64,
}
impl MatCPlus {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        if self.lambda != 0.0 {
            let m = T::mat_one_at(&*self.m, p, v);
            return m.b / Cx::from_f64(0.0, self.lambda);
        }
        let cp_real = |w: &[Cx<T>]| -> Cx<T> {
            let m = T::mat_one_at(&*self.m, p, w);
            (Cx::i() * m.c).conj()
        };
        let v_re: Vec<Cx<T>> = v.iter().map(|c| Cx::new(c.re, T::zero())).collect();
        let mut out = cp_real(&v_re);
        if !v.iter().all(|c| c.im.is_structural_zero()) {
            let v_im: Vec<Cx<T>> = v.iter().map(|c| Cx::new(c.im, T::zero())).collect();
            out = out + Cx::i() * cp_real(&v_im);
        }
        out
    }
}
one_form_impl!(MatCPlus);

/// Algebra components of U⁻¹dU for a bundle map U.
pub fn connection_from_bundle_map(u: Arc<dyn MatrixMap>, lambda: f64) -> AlgOneForm {
    let m: Arc<dyn MatrixOneForm> = Arc::new(MatLogDeriv(u));
    AlgOneForm {
        lambda,
        c0: Arc::new(MatC0 { m: m.clone() }),
        cplus: Arc::new(MatCPlus {
            m: m.clone(),
            lambda,
        }),
        cminus: Arc::new(MatCMinus { m }),
    }
}

// ---------------------------------------------------------------------------
// extracted fields
// ---------------------------------------------------------------------------

/// Φ = t₋ coefficient of 𝒜(X₋).
pub struct ExtractedPhi {
    pub cminus: SOneForm,
    pub lambda0: f64,
}
impl ExtractedPhi {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let frame = GroupGeometry::new(self.lambda0).frame_at(p);
        T::one_at(&*self.cminus, p, &frame.xminus)
    }
}
scalar_field_impl!(ExtractedPhi);

/// A = (t₀ coefficient of 𝒜) − σ⁰.
pub struct ExtractedA {
    pub c0: SOneForm,
    pub lambda0: f64,
}
impl ExtractedA {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let s0 = crate::group::Sigma0 {
            lambda: self.lambda0,
        };
        T::one_at(&*self.c0, p, v) - s0.ev(p, v)
    }
}
one_form_impl!(ExtractedA);

/// Φ of Cor 4.4: (F₁∂₂F₂ − F₂∂₂F₁) / (z₁ D²) with D² = |F₁|² − λ|F₂|².
pub struct ClosedFormPhi {
    pub pair: HomogeneousPair,
}
impl ClosedFormPhi {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let embed = crate::group::EmbedMap {
            lambda: self.pair.lambda0,
        };
        let out = embed.ev(p);
        let z1 = Cx::new(out[0], out[1]);
        let z2 = Cx::new(out[2], out[3]);
        let f1 = self.pair.f1.eval(z1, z2);
        let f2 = self.pair.f2.eval(z1, z2);
        let num = f1 * self.pair.f2.d2().eval(z1, z2) - f2 * self.pair.f1.d2().eval(z1, z2);
        let d2 = f1.norm_sqr() - T::from_f64(self.pair.lambda) * f2.norm_sqr();
        num / (z1.scale(d2))
    }
}
scalar_field_impl!(ClosedFormPhi);

/// ln D² on the group chart.
pub struct LnDSquared {
    pub pair: HomogeneousPair,
}
impl LnDSquared {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let embed = crate::group::EmbedMap {
            lambda: self.pair.lambda0,
        };
        let out = embed.ev(p);
        let z1 = Cx::new(out[0], out[1]);
        let z2 = Cx::new(out[2], out[3]);
        Cx::real(self.pair.d_squared(z1, z2).ln())
    }
}
scalar_field_impl!(LnDSquared);

// ---------------------------------------------------------------------------
// vortex configurations
// ---------------------------------------------------------------------------

/// How a rational map is lifted to the group manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    Homogeneous,
    Trivial,
}

/// A vortex configuration (Φ, A) on H¹_{λ₀}, together with the bundle map
/// and flat connection that generate it.
pub struct VortexConfiguration {
    pub lambda0: f64,
    pub lambda: f64,
    pub bundle_map: Arc<dyn MatrixMap>,
    pub connection: AlgOneForm,
    pub phi: SField,
    pub a: SOneForm,
    /// Equivariant degree N of the pair (N−1 normalisation for A);
    /// the trivial lift behaves as the degenerate case N = 0.
    pub degree: i64,
    pub pair: Option<HomogeneousPair>,
    pub rational_map: RationalMap,
    /// Base excisions: zeros of f₁ (fibres where the 2D connection is
    /// singular; U itself is smooth there).
    pub base_excisions: Vec<(f64, f64)>,
}

impl VortexConfiguration {
    /// Lift a rational map. Homogeneous mode uses the pair
    /// Fᵢ = z₁^N fᵢ(z₂/z₁); trivial mode uses (1, f∘π) and requires λ ≠ −1.
    pub fn lift(
        map: RationalMap,
        mode: LiftMode,
        lambda0: f64,
        lambda: f64,
    ) -> Result<Self, LiftError> {
        let base_excisions: Vec<(f64, f64)> = map
            .singular_points()
            .iter()
            .map(|(z, _)| (z.re, z.im))
            .collect();
        let (u, degree, pair): (Arc<dyn MatrixMap>, i64, Option<HomogeneousPair>) = match mode {
            LiftMode::Homogeneous => {
                let pair = HomogeneousPair::from_rational_map(&map, lambda0, lambda);
                let n = pair.degree() as i64;
                let u = Arc::new(PairBundleMap { pair: pair.clone() });
                // positivity of D² on a sample of the chart
                for p in sample::group_points(lambda0, 100, 0, &base_excisions, 1e-3) {
                    let g = GroupGeometry::new(lambda0);
                    let (z1, z2) = g.embed(&p).map_err(|_| LiftError::PairDegenerate {
                        value: 0.0,
                    })?;
                    let d2 = pair.d_squared::<f64>(z1, z2);
                    if d2 <= 0.0 {
                        return Err(LiftError::PairDegenerate { value: d2 });
                    }
                }
                (u, n, Some(pair))
            }
            LiftMode::Trivial => {
                if lambda == -1.0 {
                    return Err(LiftError::TrivialLiftUnavailable);
                }
                let u = Arc::new(TrivialLiftMap {
                    map: map.clone(),
                    lambda,
                });
                (u, 0, None)
            }
        };
        Ok(Self::from_bundle_map(
            u,
            lambda0,
            lambda,
            degree,
            pair,
            map,
            base_excisions,
        ))
    }

    fn from_bundle_map(
        u: Arc<dyn MatrixMap>,
        lambda0: f64,
        lambda: f64,
        degree: i64,
        pair: Option<HomogeneousPair>,
        rational_map: RationalMap,
        base_excisions: Vec<(f64, f64)>,
    ) -> Self {
        let connection = connection_from_bundle_map(u.clone(), lambda);
        let phi: SField = Arc::new(ExtractedPhi {
            cminus: connection.cminus.clone(),
            lambda0,
        });
        let a: SOneForm = Arc::new(ExtractedA {
            c0: connection.c0.clone(),
            lambda0,
        });
        VortexConfiguration {
            lambda0,
            lambda,
            bundle_map: u,
            connection,
            phi,
            a,
            degree,
            pair,
            rational_map,
            base_excisions,
        }
    }

    pub fn group(&self) -> GroupGeometry {
        GroupGeometry::new(self.lambda0)
    }

    pub fn sample_points(&self, n: usize, seed: u64) -> Vec<Vec<f64>> {
        sample::group_points(
            self.lambda0,
            n,
            seed,
            &self.base_excisions,
            sample::DEFAULT_EXCISION,
        )
    }

    /// Residual of the vortex-gauge coefficient conditions at the given
    /// points: t± components of 𝒜(X₀), Im of its t₀ component, and the t₋
    /// component of 𝒜(X₊) (the reality-mirror of the t₊ condition, visible
    /// at every λ).
    pub fn vortex_gauge_residual(&self, points: &[Vec<f64>]) -> f64 {
        let g = self.group();
        let mut sup: f64 = 0.0;
        for p in points {
            let frame = g.frame_at(p);
            let on_x0 = self.connection.eval(p, &frame.x0);
            let on_xp = self.connection.eval(p, &frame.xplus);
            sup = sup
                .max(on_x0.cplus.abs())
                .max(on_x0.cminus.abs())
                .max(on_x0.c0.im.abs())
                .max(on_xp.cminus.abs());
            if self.lambda != 0.0 {
                let on_xm = self.connection.eval(p, &frame.xminus);
                sup = sup.max(on_xm.cplus.abs());
            }
        }
        sup
    }

    /// Guarded extraction per Theorem 4.3: errors if the coefficient
    /// conditions fail on the probe points.
    pub fn extract_checked(
        &self,
        probe_points: &[Vec<f64>],
    ) -> Result<(SField, SOneForm), LiftError> {
        let res = self.vortex_gauge_residual(probe_points);
        if res > 1e-8 {
            return Err(LiftError::NotVortexGauge(res));
        }
        Ok((self.phi.clone(), self.a.clone()))
    }

    /// Flatness sup of 𝒜 (matrix route) over points.
    pub fn flatness_sup(&self, points: &[Vec<f64>]) -> f64 {
        let m = MatLogDeriv(self.bundle_map.clone());
        matrix_flatness_sup(&m, points, 3)
    }

    /// Bundle-map health: embedding constraint |U₁₁|² − λ|U₂₁|² − 1 and
    /// det U − 1.
    pub fn bundle_map_residual(&self, points: &[Vec<f64>]) -> f64 {
        let mut sup: f64 = 0.0;
        for p in points {
            let u = f64::mat_at(&*self.bundle_map, p);
            let c = (u.a.norm_sqr() - self.lambda * u.c.norm_sqr() - 1.0).abs();
            let d = (u.det() - Cx::one()).abs();
            sup = sup.max(c).max(d);
        }
        sup
    }

    /// Def 4.2 residuals plus the equivariance conditions.
    pub fn residuals(&self, points: &[Vec<f64>]) -> ResidualReport {
        config_residuals_of_fields(
            self.phi.clone(),
            self.a.clone(),
            self.lambda0,
            self.lambda,
            points,
            format!("lift N={} λ₀={} λ={}", self.degree, self.lambda0, self.lambda),
        )
    }

    /// Consistency of the vortex-gauge expansion: reassembling
    /// (A+σ⁰)t₀ + ½Φσt₋ + ½Φ̄σ̄t₊ from the extracted fields reproduces 𝒜 on
    /// the frame.
    pub fn expansion_consistency_sup(&self, points: &[Vec<f64>]) -> f64 {
        let assembled = vortex_gauge_assembled(
            self.phi.clone(),
            self.a.clone(),
            self.lambda0,
            self.lambda,
        );
        let g = self.group();
        let mut sup: f64 = 0.0;
        for p in points {
            let frame = g.frame_at(p);
            for v in [&frame.x0, &frame.xplus, &frame.xminus] {
                let d = self.connection.eval(p, v).sub(assembled.eval(p, v));
                // at λ=0 the matrix route reconstructs c₊ from reality, so
                // compare the observable components
                sup = sup.max(d.c0.abs()).max(d.cminus.abs());
                if self.lambda != 0.0 {
                    sup = sup.max(d.cplus.abs());
                }
            }
        }
        sup
    }

    /// Closed-form check of Cor 4.4 for homogeneous lifts: Φ against
    /// (F₁∂₂F₂−F₂∂₂F₁)/(z₁D²), A(X₀) against N−1, A(X₋) against i X₋ ln D².
    pub fn closed_form_check(&self, points: &[Vec<f64>]) -> Option<ResidualReport> {
        let pair = self.pair.as_ref()?;
        let phi_closed = ClosedFormPhi { pair: pair.clone() };
        let ln_d2 = LnDSquared { pair: pair.clone() };
        let g = self.group();
        let n = self.degree as f64;
        let mut d_phi = Vec::new();
        let mut d_a0 = Vec::new();
        let mut d_am = Vec::new();
        for p in points {
            let frame = g.frame_at(p);
            let phi_e = f64::scalar_at(&*self.phi, p);
            let phi_c = phi_closed.ev(p);
            d_phi.push((phi_e - phi_c).abs());
            let a0 = f64::one_at(&*self.a, p, &frame.x0);
            d_a0.push((a0 - Cx::real(n - 1.0)).abs());
            let am = f64::one_at(&*self.a, p, &frame.xminus);
            let xm_ln = dir_scalar(&ln_d2, p, &frame.xminus);
            d_am.push((am - Cx::i() * xm_ln).abs());
        }
        let mut rep = ResidualReport::new(format!("closed form N={}", self.degree), 0);
        rep.push_samples("Φ − closed form", &d_phi, 1e-10);
        rep.push_samples("A(X₀) − (N−1)", &d_a0, 1e-10);
        rep.push_samples("A(X₋) − iX₋lnD²", &d_am, 1e-9);
        Some(rep)
    }

    /// ∫_γ 𝒜 along the fibre generator; must equal 2πn t₀ with integer n.
    pub fn holonomy(&self) -> Result<(AlgebraElement<f64>, i64), LiftError> {
        let path: Arc<dyn ChartMap> = Arc::new(FibrePath);
        let hol = integrate_alg_along_path(
            &self.connection,
            &path,
            0.0,
            4.0 * std::f64::consts::PI,
            1e-10,
        );
        let tpm = hol.cplus.abs().max(hol.cminus.abs());
        let n_real = hol.c0.re / (2.0 * std::f64::consts::PI);
        let n = n_real.round();
        if tpm > 1e-8 || (n_real - n).abs() > 1e-6 || hol.c0.im.abs() > 1e-8 {
            return Err(LiftError::NonQuantized { tpm, n: n_real });
        }
        Ok((hol, n as i64))
    }

    /// Path-ordered exponential of 𝒜 between two chart points along a given
    /// path, with the bundle map's own increment P = U(start)⁻¹U(end) as
    /// reference.
    pub fn path_ordered(&self, path: &Arc<dyn ChartMap>, t0: f64, t1: f64, steps: usize) -> Mat2<f64> {
        let m = MatLogDeriv(self.bundle_map.clone());
        let omega = move |p: &[f64], v: &[Cx<f64>]| -> Mat2<f64> { m.o0(p, v) };
        path_ordered_exp(&omega, path, t0, t1, steps)
    }

    /// Gauge transformation (Φ, A) → (e^{−iβ}Φ, A + dβ) at the field level.
    pub fn gauge_transformed_fields(&self, beta: SField) -> (SField, SOneForm) {
        let minus_beta: SField = Arc::new(ScaleField(Cx::real(-1.0), beta.clone()));
        let phi: SField = Arc::new(ProductField(
            Arc::new(PhaseField(minus_beta)),
            self.phi.clone(),
        ));
        let a: SOneForm = Arc::new(OneFormSum(vec![self.a.clone(), Arc::new(DScalar(beta))]));
        (phi, a)
    }

    /// Gauge transformation at the bundle-map level: U → U e^{βt₀},
    /// re-extracted.
    pub fn gauge_transformed_map(&self, beta: SField) -> VortexConfiguration {
        let u: Arc<dyn MatrixMap> = Arc::new(GaugeTwistedMap {
            base: self.bundle_map.clone(),
            beta,
        });
        Self::from_bundle_map(
            u,
            self.lambda0,
            self.lambda,
            self.degree,
            self.pair.clone(),
            self.rational_map.clone(),
            self.base_excisions.clone(),
        )
    }

    /// Cor 4.5: f*Â = r_{f₁}⁻¹ (s*𝒜) r_{f₁} + r_{f₁}⁻¹ dr_{f₁} on the base,
    /// away from the zeros of f₁. Returns the sup componentwise difference.
    pub fn descend_check(&self, points2d: &[Vec<f64>]) -> Result<ResidualReport, crate::vortex2d::VortexError> {
        let vs = VortexSolution::build(self.rational_map.clone(), self.lambda0, self.lambda)?;
        let two_d = vs.cartan_connection();
        let incl: Arc<dyn ChartMap> = Arc::new(SectionInclusion);
        let pulled = self.connection.pullback(incl);
        let f1 = self.rational_map.f1.clone();
        let descended = conjugate_by_phase_gauge(&pulled, &f1);
        let sup = two_d.sup_difference(&descended, points2d, 2);
        let mut rep = ResidualReport::new(
            format!("descent λ₀={} λ={}", self.lambda0, self.lambda),
            0,
        );
        rep.push("f*Â − r⁻¹(s*𝒜)r − r⁻¹dr", sup, sup, points2d.len(), 1e-8);
        Ok(rep)
    }
}

/// e^{2iθ} = f₁/f̄₁ on the base chart (θ = arg f₁).
pub struct PhaseSquared {
    pub f1: Polynomial,
}
impl PhaseSquared {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let z = Cx::new(p[0], p[1]);
        let v = self.f1.eval(z);
        v / v.conj()
    }
}
scalar_field_impl!(PhaseSquared);

/// dθ = Im(f₁′ dz / f₁) on the base chart.
pub struct DTheta {
    pub f1: Polynomial,
}
impl DTheta {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let z = Cx::new(p[0], p[1]);
        let dz = v[0] + Cx::i() * v[1];
        let val = self.f1.derivative().eval(z) * dz / self.f1.eval(z);
        Cx::real(val.im)
    }
}
one_form_impl!(DTheta);

/// Conjugation of an algebra-valued one-form by r = diag(f̄₁/|f₁|, f₁/|f₁|)
/// = e^{2θt₀}: c₀ ↦ c₀ + 2dθ, c₋ ↦ e^{−2iθ}c₋, c₊ ↦ e^{2iθ}c₊.
pub fn conjugate_by_phase_gauge(a: &AlgOneForm, f1: &Polynomial) -> AlgOneForm {
    let phase: SField = Arc::new(PhaseSquared { f1: f1.clone() });
    let phase_conj: SField = Arc::new(ConjField(phase.clone()));
    let dtheta: SOneForm = Arc::new(DTheta { f1: f1.clone() });
    AlgOneForm {
        lambda: a.lambda,
        c0: Arc::new(OneFormSum(vec![
            a.c0.clone(),
            Arc::new(crate::forms::ScaleOneForm(Cx::real(2.0), dtheta)),
        ])),
        cplus: Arc::new(FieldTimesOneForm(phase, a.cplus.clone())),
        cminus: Arc::new(FieldTimesOneForm(phase_conj, a.cminus.clone())),
    }
}

/// The vortex-gauge expansion 𝒜 = (A+σ⁰)t₀ + ½Φσt₋ + ½Φ̄σ̄t₊ from the
/// fields.
pub fn vortex_gauge_assembled(phi: SField, a: SOneForm, lambda0: f64, lambda: f64) -> AlgOneForm {
    let g = GroupGeometry::new(lambda0);
    let half = Cx::real(0.5);
    AlgOneForm {
        lambda,
        c0: Arc::new(OneFormSum(vec![a, g.sigma0()])),
        cminus: Arc::new(FieldTimesOneForm(
            Arc::new(ScaleField(half, phi.clone())),
            g.sigma(),
        )),
        cplus: Arc::new(FieldTimesOneForm(
            Arc::new(ScaleField(half, Arc::new(ConjField(phi)))),
            g.sigma_bar(),
        )),
    }
}

/// Def 4.2 residuals for arbitrary fields (Φ, A) on H¹_{λ₀}:
/// (dΦ + iAΦ)∧σ and F_A − (i/2)(λ₀ − λ|Φ|²)σ̄∧σ on the frame bivectors,
/// plus the equivariance residuals ι_{X₀}dA and 𝓛_{X₀}Φ + iA(X₀)Φ.
pub fn config_residuals_of_fields(
    phi: SField,
    a: SOneForm,
    lambda0: f64,
    lambda: f64,
    points: &[Vec<f64>],
    label: String,
) -> ResidualReport {
    let g = GroupGeometry::new(lambda0);
    let sigma = g.sigma();
    let sigma_bar = g.sigma_bar();
    // dΦ + i A Φ
    let covariant: SOneForm = Arc::new(OneFormSum(vec![
        Arc::new(DScalar(phi.clone())),
        Arc::new(FieldTimesOneForm(
            Arc::new(ScaleField(Cx::new(0.0, 1.0), phi.clone())),
            a.clone(),
        )),
    ]));
    let first = Wedge(covariant, sigma);
    // F_A − (i/2)(λ₀ − λ|Φ|²) σ̄∧σ
    let coef: SField = Arc::new(crate::forms::SumField(vec![
        Arc::new(crate::forms::ConstField(Cx::real(lambda0))),
        Arc::new(ScaleField(
            Cx::real(-lambda),
            Arc::new(crate::forms::NormSqField(phi.clone())),
        )),
    ]));
    let da = DOneForm(a.clone());
    let second = TwoFormSum(vec![
        Arc::new(DOneForm(a.clone())),
        Arc::new(ScaleTwoForm(
            Cx::real(-1.0),
            Arc::new(FieldTimesTwoForm(
                coef,
                Arc::new(ScaleTwoForm(
                    Cx::new(0.0, 0.5),
                    Arc::new(Wedge(sigma_bar, g.sigma())),
                )),
            )),
        )),
    ]);
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut req_a = Vec::new();
    let mut req_phi = Vec::new();
    for p in points {
        let frame = g.frame_at(p);
        let pairs = [
            (&frame.x0, &frame.xplus),
            (&frame.x0, &frame.xminus),
            (&frame.xplus, &frame.xminus),
        ];
        for (u, v) in pairs {
            r1.push(first.t0(p, u, v).abs());
            r2.push(second.t0(p, u, v).abs());
        }
        // ι_{X₀} dA = 𝓛_{X₀}A − d(A(X₀)) must vanish
        req_a.push(da.t0(p, &frame.x0, &frame.xplus).abs());
        req_a.push(da.t0(p, &frame.x0, &frame.xminus).abs());
        // 𝓛_{X₀}Φ + iA(X₀)Φ = 0
        let x0phi = dir_scalar(&*phi, p, &frame.x0);
        let a0 = f64::one_at(&*a, p, &frame.x0);
        let phi_v = f64::scalar_at(&*phi, p);
        req_phi.push((x0phi + Cx::i() * a0 * phi_v).abs());
    }
    let mut rep = ResidualReport::new(label, 0);
    rep.push_samples("config |(dΦ + iAΦ)∧σ|", &r1, 1e-8);
    rep.push_samples("config |F_A − (i/2)(λ₀−λ|Φ|²)σ̄∧σ|", &r2, 1e-8);
    rep.push_samples("equivariance |ι_{X₀}dA|", &req_a, 1e-9);
    rep.push_samples("equivariance |𝓛_{X₀}Φ + iA(X₀)Φ|", &req_phi, 1e-9);
    rep
}

/// Straight-line path between two chart points, t ∈ [0, 1].
pub struct LinePath {
    pub from: [f64; 3],
    pub to: [f64; 3],
}
impl LinePath {
    fn dim(&self) -> usize {
        3
    }
    fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
        let t = p[0];
        (0..3)
            .map(|i| {
                T::from_f64(self.from[i]) + t * T::from_f64(self.to[i] - self.from[i])
            })
            .collect()
    }
}
chart_map_impl!(LinePath);

/// The same endpoints along a bowed route (sinusoidal transverse bump).
pub struct BowedPath {
    pub from: [f64; 3],
    pub to: [f64; 3],
    pub bump: [f64; 3],
}
impl BowedPath {
    fn dim(&self) -> usize {
        3
    }
    fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
        let t = p[0];
        let s = (t * T::from_f64(std::f64::consts::PI)).sin();
        (0..3)
            .map(|i| {
                T::from_f64(self.from[i])
                    + t * T::from_f64(self.to[i] - self.from[i])
                    + s * T::from_f64(self.bump[i])
            })
            .collect()
    }
}
chart_map_impl!(BowedPath);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn jp_axial(n: usize) -> VortexConfiguration {
        VortexConfiguration::lift(
            RationalMap::axial_inverse_power(n),
            LiftMode::Homogeneous,
            0.0,
            -1.0,
        )
        .unwrap()
    }

    fn popov_z2() -> VortexConfiguration {
        let map = RationalMap::from_polynomial(Polynomial::monomial(2)).unwrap();
        VortexConfiguration::lift(map, LiftMode::Homogeneous, -1.0, -1.0).unwrap()
    }

    fn hyperbolic_z2(mode: LiftMode) -> VortexConfiguration {
        let map = RationalMap::from_polynomial(Polynomial::monomial(2)).unwrap();
        VortexConfiguration::lift(map, mode, 1.0, 1.0).unwrap()
    }

    fn ao_lift() -> VortexConfiguration {
        let map = RationalMap::blaschke(&[Cx::real(0.3)], &[Cx::real(-0.4)]).unwrap();
        VortexConfiguration::lift(map, LiftMode::Homogeneous, 1.0, -1.0).unwrap()
    }

    #[test]
    fn axial_pair_shape() {
        // f = 1/z^N homogenizes to F₁ = z₂^N, F₂ = z₁^N
        let vc = jp_axial(2);
        let pair = vc.pair.as_ref().unwrap();
        assert_eq!(pair.degree(), 2);
        assert!((pair.f1.coeffs[2] - Cx::one()).abs() < 1e-15);
        assert!(pair.f1.coeffs[0].abs() < 1e-15);
        assert!((pair.f2.coeffs[0] - Cx::one()).abs() < 1e-15);
    }

    #[test]
    fn trivial_lift_unavailable_for_sphere_target() {
        let map = RationalMap::axial_inverse_power(1);
        assert!(matches!(
            VortexConfiguration::lift(map, LiftMode::Trivial, 0.0, -1.0),
            Err(LiftError::TrivialLiftUnavailable)
        ));
    }

    #[test]
    fn bundle_map_values() {
        // identity pair (1, 0): U = identity
        let pair = HomogeneousPair {
            f1: HomogeneousPoly {
                coeffs: vec![Cx::one()],
            },
            f2: HomogeneousPoly {
                coeffs: vec![Cx::zero()],
            },
            lambda0: 0.0,
            lambda: -1.0,
        };
        let u = PairBundleMap { pair };
        let m = u.ev(&[0.7, -0.3, 1.1]);
        assert!(m.sub(Mat2::identity()).sup_abs() < 1e-14);

        // JP N=1 pair at z=1, χ=0: D² = 2, U = (1/√2)[[1,−1],[1,1]]
        let vc = jp_axial(1);
        let m = f64::mat_at(&*vc.bundle_map, &[1.0, 0.0, 0.0]);
        let s = 1.0 / 2.0f64.sqrt();
        assert!((m.a - Cx::real(s)).abs() < 1e-14);
        assert!((m.b - Cx::real(-s)).abs() < 1e-14);
        assert!((m.c - Cx::real(s)).abs() < 1e-14);
        assert!((m.d - Cx::real(s)).abs() < 1e-14);
    }

    #[test]
    fn bundle_map_normalisation() {
        for vc in [jp_axial(1), popov_z2(), ao_lift()] {
            let pts = vc.sample_points(100, 21);
            assert!(vc.bundle_map_residual(&pts) < 1e-12);
        }
    }

    #[test]
    fn connection_is_flat() {
        for vc in [
            jp_axial(1),
            jp_axial(2),
            popov_z2(),
            hyperbolic_z2(LiftMode::Homogeneous),
            hyperbolic_z2(LiftMode::Trivial),
            ao_lift(),
        ] {
            let pts = vc.sample_points(60, 31);
            let sup = vc.flatness_sup(&pts);
            assert!(sup < 1e-8, "flatness {sup}");
        }
    }

    #[test]
    fn vortex_gauge_and_extraction() {
        let vc = jp_axial(1);
        let pts = vc.sample_points(40, 41);
        assert!(vc.vortex_gauge_residual(&pts) < 1e-10);
        assert!(vc.extract_checked(&pts).is_ok());
        // U = identity: Φ = 0, A = −σ⁰
        let pair = HomogeneousPair {
            f1: HomogeneousPoly {
                coeffs: vec![Cx::one()],
            },
            f2: HomogeneousPoly {
                coeffs: vec![Cx::zero()],
            },
            lambda0: 0.0,
            lambda: -1.0,
        };
        let u: Arc<dyn MatrixMap> = Arc::new(PairBundleMap { pair });
        let conn = connection_from_bundle_map(u, -1.0);
        let g = GroupGeometry::new(0.0);
        let p = [0.4, 0.2, 2.5];
        let frame = g.frame_at(&p);
        let val = conn.eval(&p, &frame.xminus);
        assert!(val.cminus.abs() < 1e-13 && val.c0.abs() < 1e-13);
    }

    #[test]
    fn not_vortex_gauge_detected() {
        // an antiholomorphic "lift" U = s(conj 1/z̄ ... ) built by conjugating
        // the chart coordinate violates the coefficient conditions
        struct AntiMap;
        impl AntiMap {
            fn ev<T: Ad>(&self, p: &[T]) -> Mat2<T> {
                let z = Cx::new(p[0], -p[1]); // z̄ in place of z
                let f = z; // "f" = z̄, not holomorphic
                let q = T::one() + f.norm_sqr();
                let inv = T::one() / q.sqrt();
                Mat2::new(Cx::one(), -f.conj(), f, Cx::one()).scale(Cx::real(inv))
            }
        }
        matrix_map_impl!(AntiMap);
        let u: Arc<dyn MatrixMap> = Arc::new(AntiMap);
        let map = RationalMap::axial_inverse_power(1);
        let vc = VortexConfiguration::from_bundle_map(
            u,
            0.0,
            -1.0,
            0,
            None,
            map,
            vec![],
        );
        let pts = vc.sample_points(20, 43);
        assert!(vc.vortex_gauge_residual(&pts) > 1e-3);
        assert!(matches!(
            vc.extract_checked(&pts),
            Err(LiftError::NotVortexGauge(_))
        ));
    }

    #[test]
    fn jp_axial_phi_matches_paper_closed_form() {
        // Φ = −N z₁^{N−1} z₂^{N−1} / (|z₁|^{2N} + |z₂|^{2N})
        for n in [1usize, 2, 3] {
            let vc = jp_axial(n);
            for p in vc.sample_points(25, 47) {
                let g = GroupGeometry::new(0.0);
                let (z1, z2) = g.embed(&p).unwrap();
                let mut num = Cx::<f64>::real(-(n as f64));
                for _ in 0..(n - 1) {
                    num = num * z1;
                }
                for _ in 0..(n - 1) {
                    num = num * z2;
                }
                let den = z1.norm_sqr().powi(n as i32) + z2.norm_sqr().powi(n as i32);
                let expect = num.scale(1.0 / den);
                let got = f64::scalar_at(&*vc.phi, &p);
                assert!((got - expect).abs() < 1e-10, "N={n} got {got:?} expect {expect:?}");
            }
        }
        // Φ at (z=1, χ=0) for N=1 is −1/2
        let vc = jp_axial(1);
        let phi = f64::scalar_at(&*vc.phi, &[1.0, 0.0, 0.0]);
        assert!((phi - Cx::real(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn normalisation_and_equivariant_degree() {
        for (vc, n) in [
            (jp_axial(1), 1),
            (jp_axial(3), 3),
            (popov_z2(), 2),
            (ao_lift(), 2),
        ] {
            let g = vc.group();
            let pts = vc.sample_points(15, 53);
            // A(X₀) = N−1
            for p in &pts {
                let frame = g.frame_at(p);
                let a0 = f64::one_at(&*vc.a, p, &frame.x0);
                assert!((a0 - Cx::real(n as f64 - 1.0)).abs() < 1e-10);
            }
            // equivariant degree of Φ = 2N−2
            let deg = g.equivariant_degree(&*vc.phi, &pts).unwrap();
            assert_eq!(deg, 2 * n - 2);
        }
        // trivial lift: A(X₀) = −1 (N = 0 normalisation)
        let vc = hyperbolic_z2(LiftMode::Trivial);
        let g = vc.group();
        for p in vc.sample_points(10, 57) {
            let frame = g.frame_at(&p);
            let a0 = f64::one_at(&*vc.a, &p, &frame.x0);
            assert!((a0 - Cx::real(-1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_check_passes() {
        for vc in [jp_axial(1), jp_axial(2), popov_z2(), ao_lift()] {
            let pts = vc.sample_points(30, 59);
            let rep = vc.closed_form_check(&pts).unwrap();
            assert!(rep.pass(), "{rep}");
        }
    }

    #[test]
    fn config_residuals_hold() {
        for vc in [
            jp_axial(1),
            jp_axial(2),
            popov_z2(),
            hyperbolic_z2(LiftMode::Homogeneous),
            hyperbolic_z2(LiftMode::Trivial),
            ao_lift(),
        ] {
            let pts = vc.sample_points(60, 61);
            let rep = vc.residuals(&pts);
            assert!(rep.pass(), "{rep}");
            assert!(vc.expansion_consistency_sup(&pts) < 1e-10,
                "expansion inconsistency for N={}", vc.degree);
        }
    }

    #[test]
    fn perturbed_phi_fails() {
        let vc = jp_axial(1);
        // Φ → Φ(1 + 0.1|z₂|²)
        struct Bump;
        impl Bump {
            fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
                let embed = crate::group::EmbedMap { lambda: 0.0 };
                let out = embed.ev(p);
                let z2 = Cx::new(out[2], out[3]);
                Cx::real(T::one() + T::from_f64(0.1) * z2.norm_sqr())
            }
        }
        scalar_field_impl!(Bump);
        let phi: SField = Arc::new(ProductField(Arc::new(Bump), vc.phi.clone()));
        let pts = vc.sample_points(40, 63);
        let rep = config_residuals_of_fields(
            phi,
            vc.a.clone(),
            vc.lambda0,
            vc.lambda,
            &pts,
            "perturbed".into(),
        );
        assert!(rep.sup("config |(dΦ + iAΦ)∧σ|").unwrap() >= 1e-3);
        assert!(!rep.pass());
    }

    #[test]
    fn holonomy_quantized() {
        for (vc, n) in [(jp_axial(1), 1i64), (jp_axial(2), 2), (popov_z2(), 2)] {
            let (hol, hn) = vc.holonomy().unwrap();
            assert_eq!(hn, 2 * n, "holonomy integer");
            let expect = 4.0 * std::f64::consts::PI * n as f64;
            assert!((hol.c0.re - expect).abs() / expect < 1e-6);
        }
    }

    #[test]
    fn path_ordered_exponential_path_independent() {
        let vc = jp_axial(1);
        let from = [0.5, 0.2, 0.3];
        let to = [1.2, -0.4, 5.0];
        let line: Arc<dyn ChartMap> = Arc::new(LinePath { from, to });
        let bowed: Arc<dyn ChartMap> = Arc::new(BowedPath {
            from,
            to,
            bump: [0.3, 0.5, 1.0],
        });
        let pa = vc.path_ordered(&line, 0.0, 1.0, 1000);
        let pb = vc.path_ordered(&bowed, 0.0, 1.0, 1000);
        assert!(pa.sub(pb).sup_abs() < 1e-6);
        // and both equal U(start)⁻¹ U(end)
        let us = f64::mat_at(&*vc.bundle_map, &from);
        let ue = f64::mat_at(&*vc.bundle_map, &to);
        let expect = us.inverse().mul(ue);
        assert!(pa.sub(expect).sup_abs() < 1e-6);
        // holonomy loop: path-ordered exponential around γ is the identity
        let gamma: Arc<dyn ChartMap> = Arc::new(FibrePath);
        let pg = vc.path_ordered(&gamma, 0.0, 4.0 * std::f64::consts::PI, 2000);
        assert!(pg.sub(Mat2::identity()).sup_abs() < 1e-6);
    }

    #[test]
    fn gauge_two_routes_agree() {
        let vc = jp_axial(1);
        let beta: SField = Arc::new(crate::forms::RealPoly2 {
            terms: vec![(1, 0, 0.4), (0, 1, -0.7), (2, 0, 0.15)],
        });
        let (phi_f, a_f) = vc.gauge_transformed_fields(beta.clone());
        let vc2 = vc.gauge_transformed_map(beta);
        let pts = vc.sample_points(25, 67);
        let g = vc.group();
        for p in &pts {
            let frame = g.frame_at(p);
            let d_phi = (f64::scalar_at(&*phi_f, p) - f64::scalar_at(&*vc2.phi, p)).abs();
            assert!(d_phi < 1e-10, "phi routes differ by {d_phi}");
            for v in [&frame.x0, &frame.xplus, &frame.xminus] {
                let d_a = (f64::one_at(&*a_f, p, v) - f64::one_at(&*vc2.a, p, v)).abs();
                assert!(d_a < 1e-10, "a routes differ by {d_a}");
            }
            // |Φ| is gauge invariant
            let m0 = f64::scalar_at(&*vc.phi, p).abs();
            let m1 = f64::scalar_at(&*vc2.phi, p).abs();
            assert!((m0 - m1).abs() < 1e-12);
        }
        // residual sup norms unchanged
        let base = vc.residuals(&pts);
        let gauged = config_residuals_of_fields(
            phi_f,
            a_f,
            vc.lambda0,
            vc.lambda,
            &pts,
            "gauged".into(),
        );
        for (b, g) in base.entries.iter().zip(gauged.entries.iter()) {
            assert!((b.sup - g.sup).abs() < 1e-9);
        }
    }

    #[test]
    fn descent_matches_2d_connection() {
        // JP N=1 homogeneous lift: points away from the f₁ zero at origin
        let vc = jp_axial(1);
        let pts: Vec<Vec<f64>> = (0..30)
            .map(|i| {
                let t = 0.21 * i as f64;
                let r = 0.5 + 2.5 * ((i as f64) * 0.37).fract();
                vec![r * t.cos(), r * t.sin()]
            })
            .collect();
        let rep = vc.descend_check(&pts).unwrap();
        assert!(rep.pass(), "{rep}");

        // popov f=z² homogeneous lift: f₁ = 1 so r = I
        let vc = popov_z2();
        let rep = vc.descend_check(&pts).unwrap();
        assert!(rep.pass(), "{rep}");

        // trivial lift: r = I and f*Â = s*𝒜 directly
        let vc = hyperbolic_z2(LiftMode::Trivial);
        let pts_disk: Vec<Vec<f64>> = (0..30)
            .map(|i| {
                let t = 0.31 * i as f64;
                let r = 0.15 + 0.7 * ((i as f64) * 0.53).fract();
                vec![r * t.cos(), r * t.sin()]
            })
            .collect();
        let rep = vc.descend_check(&pts_disk).unwrap();
        assert!(rep.pass(), "{rep}");

        // AO lift with nontrivial r
        let vc = ao_lift();
        let pts_ao: Vec<Vec<f64>> = pts_disk
            .iter()
            .filter(|p| {
                let d = ((p[0] + 0.4).powi(2) + p[1].powi(2)).sqrt();
                d > 0.05
            })
            .cloned()
            .collect();
        let rep = vc.descend_check(&pts_ao).unwrap();
        assert!(rep.pass(), "{rep}");
    }
}
