//! The integrable (λ₀, λ) vortex families built from rational maps.
//!
//! A holomorphic f = f₂/f₁ between surfaces of curvature K₀ = −λ₀ and
//! K = −λ solves the vortex equations through f*e = φ e₀, a = f*Γ − Γ₀.
//! This module constructs (φ, a), verifies the first-order equations and the
//! generalized Taubes equation, computes the Baptista conformal factor, flux
//! and energy integrals, and assembles the flat vortex Cartan connection
//! f*Â = −(a+Γ₀)t₀ + (i/2)(φe₀ t₋ − φ̄ē₀ t₊).

use crate::forms::{
    basis_tangent, chart_map_impl, scalar_field_impl, second_dir_scalar, Ad, AlgOneForm,
    ConjField, CoordForm, DOneForm, DScalar, FieldTimesOneForm, FieldTimesTwoForm, OneFormSum,
    PhaseField, PullbackOneForm, ScaleField, ScaleOneForm, ScaleTwoForm, SField, SOneForm,
    TwoForm, TwoFormSum, Wedge,
};
use crate::poly::{PolyError, RationalMap};
use crate::quad::{integrate_rect, QuadError, QuadOptions};
use crate::report::ResidualReport;
use crate::sample;
use crate::scalar::{Cx, Real};
use crate::surface::SurfaceGeometry;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VortexError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("map image leaves the target chart: |f| = {modulus:.4} at sample point")]
    DomainViolation { modulus: f64 },
    #[error("operation requires the ({expect0}, {expect1}) family, got ({got0}, {got1})")]
    WrongFamily {
        expect0: f64,
        expect1: f64,
        got0: f64,
        got1: f64,
    },
    #[error("integral tail diverges: fitted exponent {exponent:.3} at cutoff")]
    TailDivergence { exponent: f64 },
}

/// The named integrable families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum VortexFamily {
    Hyperbolic,
    Popov,
    JackiwPi,
    AmbjornOlesen,
    Bradlow,
    Laplace,
    Unnamed,
}

pub fn classify_family(lambda0: f64, lambda: f64) -> VortexFamily {
    match (lambda0 as i8, lambda as i8) {
        (1, 1) => VortexFamily::Hyperbolic,
        (-1, -1) => VortexFamily::Popov,
        (0, -1) => VortexFamily::JackiwPi,
        (1, -1) => VortexFamily::AmbjornOlesen,
        (1, 0) => VortexFamily::Bradlow,
        (0, 0) => VortexFamily::Laplace,
        _ => VortexFamily::Unnamed,
    }
}

impl std::fmt::Display for VortexFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            VortexFamily::Hyperbolic => "hyperbolic",
            VortexFamily::Popov => "popov",
            VortexFamily::JackiwPi => "jackiw-pi",
            VortexFamily::AmbjornOlesen => "ambjorn-olesen",
            VortexFamily::Bradlow => "bradlow",
            VortexFamily::Laplace => "laplace",
            VortexFamily::Unnamed => "unnamed",
        };
        f.write_str(s)
    }
}

/// The Higgs field φ = W · (f̄₁/f₁) · (1 + K₀|z|²) / (|f₁|² + K|f₂|²),
/// W = f₂′f₁ − f₁′f₂.
pub struct PhiField {
    map: RationalMap,
    wronskian: crate::poly::Polynomial,
    k0: f64,
    k: f64,
}
impl PhiField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let z = Cx::new(p[0], p[1]);
        let f1 = self.map.f1.eval(z);
        let f2 = self.map.f2.eval(z);
        let w = self.wronskian.eval(z);
        let zsq = z.norm_sqr();
        let conf = T::one() + T::from_f64(self.k0) * zsq;
        let den_real = f1.norm_sqr() + T::from_f64(self.k) * f2.norm_sqr();
        let num = w * f1.conj();
        let den = f1.scale(den_real);
        (num / den).scale(conf)
    }
}
scalar_field_impl!(PhiField);

/// The rational map as a chart map z ↦ f(z) for pullbacks.
pub struct RationalChartMap {
    pub map: RationalMap,
}
impl RationalChartMap {
    fn dim(&self) -> usize {
        2
    }
    fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
        let z = Cx::new(p[0], p[1]);
        let w = self.map.eval(z);
        vec![w.re, w.im]
    }
}
chart_map_impl!(RationalChartMap);

/// A vortex solution (φ, a) for parameters (λ₀, λ), constructed from a
/// rational map.
pub struct VortexSolution {
    pub lambda0: f64,
    pub lambda: f64,
    pub map: RationalMap,
    pub phi: SField,
    pub a: SOneForm,
    /// Zeros of f₁ with multiplicity: the singular set of f*Â.
    pub singular_points: Vec<(Cx<f64>, usize)>,
    /// Ramification points of f with multiplicity: the Higgs zeros in the
    /// chart.
    pub higgs_zeros: Vec<(Cx<f64>, usize)>,
}

impl VortexSolution {
    pub fn k0(&self) -> f64 {
        -self.lambda0
    }
    pub fn k(&self) -> f64 {
        -self.lambda
    }
    pub fn family(&self) -> VortexFamily {
        classify_family(self.lambda0, self.lambda)
    }
    pub fn source_geometry(&self) -> SurfaceGeometry {
        SurfaceGeometry::new(self.k0())
    }
    pub fn target_geometry(&self) -> SurfaceGeometry {
        SurfaceGeometry::new(self.k())
    }

    pub fn build(map: RationalMap, lambda0: f64, lambda: f64) -> Result<Self, VortexError> {
        let wronskian = map.wronskian();
        if wronskian.is_zero() {
            return Err(VortexError::Poly(PolyError::ConstantMap));
        }
        let k0 = -lambda0;
        let k = -lambda;
        // image must stay inside the target chart; for a hyperbolic target
        // (λ=1, K=−1) this means |f| < 1 on the sampled source domain
        if k < 0.0 {
            let pts =
                sample::surface_points(k0, 200, 0, &excision_list(&map), sample::DEFAULT_EXCISION);
            for p in &pts {
                let modulus = map.eval(Cx::new(p[0], p[1])).abs();
                if modulus >= 1.0 {
                    return Err(VortexError::DomainViolation { modulus });
                }
            }
        }
        let singular_points = map.singular_points();
        let higgs_zeros = map.ramification_points();
        let phi: SField = Arc::new(PhiField {
            map: map.clone(),
            wronskian,
            k0,
            k,
        });
        let target = SurfaceGeometry::new(k);
        let source = SurfaceGeometry::new(k0);
        let fmap: Arc<dyn crate::forms::ChartMap> = Arc::new(RationalChartMap { map: map.clone() });
        let a: SOneForm = Arc::new(OneFormSum(vec![
            Arc::new(PullbackOneForm {
                map: fmap,
                form: target.spin_connection(),
            }),
            Arc::new(ScaleOneForm(Cx::real(-1.0), source.spin_connection())),
        ]));
        Ok(VortexSolution {
            lambda0,
            lambda,
            map,
            phi,
            a,
            singular_points,
            higgs_zeros,
        })
    }

    /// Admissible sample points: inside the source domain, away from the
    /// chart boundary and the excised disks around singular points.
    pub fn admissible_points(&self, n: usize, seed: u64) -> Vec<Vec<f64>> {
        sample::surface_points(
            self.k0(),
            n,
            seed,
            &excision_list(&self.map),
            sample::DEFAULT_EXCISION,
        )
    }

    /// Def 3.1 residuals of this solution's own fields.
    pub fn residuals(&self, points: &[Vec<f64>]) -> ResidualReport {
        residuals_of_fields(
            self.phi.clone(),
            self.a.clone(),
            self.lambda0,
            self.lambda,
            points,
            format!("{} Def 3.1", self.family()),
        )
    }

    /// Gauge-transformed pair (e^{iβ}φ, a + dβ) for a real field β.
    pub fn gauge_transformed(&self, beta: SField) -> (SField, SOneForm) {
        let phi: SField = Arc::new(crate::forms::ProductField(
            Arc::new(PhaseField(beta.clone())),
            self.phi.clone(),
        ));
        let a: SOneForm = Arc::new(OneFormSum(vec![self.a.clone(), Arc::new(DScalar(beta))]));
        (phi, a)
    }

    /// Generalized Taubes residual −(4/Ω₀)∂z∂z̄u − (λ₀ − λe^{2u}), u = ln|φ|,
    /// sampled away from Higgs zeros. `u_shift` adds a constant to u
    /// (negative control).
    pub fn taubes_residual(&self, points: &[Vec<f64>], u_shift: f64) -> ResidualReport {
        let u: SField = Arc::new(crate::forms::SumField(vec![
            Arc::new(crate::forms::LnModulusField(self.phi.clone())),
            Arc::new(crate::forms::ConstField(Cx::real(u_shift))),
        ]));
        let geom = self.source_geometry();
        let mut res = Vec::with_capacity(points.len());
        for p in points {
            let omega0 = geom.conformal_factor(p);
            // −(4/Ω₀)∂z∂z̄ = −(1/Ω₀)(∂x² + ∂y²)
            let (_, dxx) = second_dir_scalar(&*u, p, &[1.0, 0.0]);
            let (uval, dyy) = second_dir_scalar(&*u, p, &[0.0, 1.0]);
            let lap = dxx.re + dyy.re;
            let e2u = (2.0 * uval.re).exp();
            let lhs = -lap / omega0;
            let rhs = self.lambda0 - self.lambda * e2u;
            res.push((lhs - rhs).abs());
        }
        let mut rep = ResidualReport::new(format!("{} taubes", self.family()), 0);
        rep.push_samples("taubes |−(4/Ω₀)∂∂̄u − (λ₀−λe²ᵘ)|", &res, 1e-6);
        rep
    }

    /// |φ|² through the modulus formula |W|²(1+K₀|z|²)²/(|f₁|²+K|f₂|²)²:
    /// the f̄₁/f₁ phase drops out, so this extends across the phase
    /// singularities at the zeros of f₁.
    pub fn phi_modulus_sq(&self, p: &[f64]) -> f64 {
        let z = Cx::new(p[0], p[1]);
        let w = self.map.wronskian().eval(z).norm_sqr();
        let f1 = self.map.f1.eval(z).norm_sqr();
        let f2 = self.map.f2.eval(z).norm_sqr();
        let conf = 1.0 + self.k0() * z.norm_sqr();
        w * conf * conf / (f1 + self.k() * f2).powi(2)
    }

    /// Baptista conformal factor |φ|²Ω₀ at a point.
    pub fn baptista_factor(&self, p: &[f64]) -> f64 {
        self.phi_modulus_sq(p) * self.source_geometry().conformal_factor(p)
    }

    /// ∫ (λ₀ − λ|φ|²) Ω₀ dx dy over the source surface.
    pub fn flux_integral(&self) -> Result<FluxResult, VortexError> {
        let phi = self.phi.clone();
        let (l0, l, k0) = (self.lambda0, self.lambda, self.k0());
        let geom = self.source_geometry();
        let integrand = move |x: f64, y: f64| -> f64 {
            let p = [x, y];
            let m = f64::scalar_at(&*phi, &p).norm_sqr();
            (l0 - l * m) * geom.conformal_factor(&p)
        };
        integrate_radial(&integrand, k0)
    }

    /// Critical Abelian-Higgs energy for the (1,1) family, normalized so
    /// Bogomol'nyi saturation gives E = πN on these solutions:
    /// E = ½∫ [B²/(2Ω₀) + |Dφ|² + (Ω₀/2)(1−|φ|²)²] dx dy.
    pub fn energy_integral(&self) -> Result<f64, VortexError> {
        if self.lambda0 != 1.0 || self.lambda != 1.0 {
            return Err(VortexError::WrongFamily {
                expect0: 1.0,
                expect1: 1.0,
                got0: self.lambda0,
                got1: self.lambda,
            });
        }
        energy_of_fields(&self.phi, &self.a, self.k0())
    }

    /// The flat vortex Cartan connection
    /// f*Â = −(a+Γ₀)t₀ + (i/2)(φe₀ t₋ − φ̄ē₀ t₊), valued in Lie(H¹_λ).
    pub fn cartan_connection(&self) -> AlgOneForm {
        vortex_cartan_connection(self.phi.clone(), self.a.clone(), self.lambda0, self.lambda)
    }
}

/// ε·dx, the one-form used by negative controls.
pub fn dx_perturbation(epsilon: f64) -> SOneForm {
    Arc::new(CoordForm {
        index: 0,
        coeff: Cx::real(epsilon),
    })
}

fn excision_list(map: &RationalMap) -> Vec<(f64, f64)> {
    map.singular_points()
        .iter()
        .map(|(z, _)| (z.re, z.im))
        .collect()
}

/// Def 3.1 residuals for an arbitrary field pair (φ, a):
/// |(dφ − iaφ)∧e₀| and |da − (λ₀−λ|φ|²)ω₀| on (∂x, ∂y).
pub fn residuals_of_fields(
    phi: SField,
    a: SOneForm,
    lambda0: f64,
    lambda: f64,
    points: &[Vec<f64>],
    label: String,
) -> ResidualReport {
    let source = SurfaceGeometry::new(-lambda0);
    let e0 = source.coframe();
    // dφ − i a φ
    let covariant: SOneForm = Arc::new(OneFormSum(vec![
        Arc::new(DScalar(phi.clone())),
        Arc::new(FieldTimesOneForm(
            Arc::new(ScaleField(Cx::new(0.0, -1.0), phi.clone())),
            a.clone(),
        )),
    ]));
    let first = Wedge(covariant, e0);
    // da − (λ₀ − λ|φ|²) ω₀
    let coef: SField = Arc::new(crate::forms::SumField(vec![
        Arc::new(crate::forms::ConstField(Cx::real(lambda0))),
        Arc::new(ScaleField(
            Cx::real(-lambda),
            Arc::new(crate::forms::NormSqField(phi)),
        )),
    ]));
    let second = TwoFormSum(vec![
        Arc::new(DOneForm(a)),
        Arc::new(ScaleTwoForm(
            Cx::real(-1.0),
            Arc::new(FieldTimesTwoForm(coef, source.kahler_form())),
        )),
    ]);
    let u = basis_tangent::<f64>(2, 0);
    let v = basis_tangent::<f64>(2, 1);
    let mut r1 = Vec::with_capacity(points.len());
    let mut r2 = Vec::with_capacity(points.len());
    for p in points {
        r1.push(first.t0(p, &u, &v).abs());
        r2.push(second.t0(p, &u, &v).abs());
    }
    let mut rep = ResidualReport::new(label, 0);
    rep.push_samples("vortex |(dφ − iaφ)∧e₀|", &r1, 1e-8);
    rep.push_samples("vortex |da − (λ₀−λ|φ|²)ω₀|", &r2, 1e-8);
    rep
}

/// The flat connection of Cor 3.2 for an arbitrary pair (φ, a).
pub fn vortex_cartan_connection(
    phi: SField,
    a: SOneForm,
    lambda0: f64,
    lambda: f64,
) -> AlgOneForm {
    let source = SurfaceGeometry::new(-lambda0);
    let c0: SOneForm = Arc::new(ScaleOneForm(
        Cx::real(-1.0),
        Arc::new(OneFormSum(vec![a, source.spin_connection()])),
    ));
    let cminus: SOneForm = Arc::new(FieldTimesOneForm(
        Arc::new(ScaleField(Cx::new(0.0, 0.5), phi.clone())),
        source.coframe(),
    ));
    let cplus: SOneForm = Arc::new(FieldTimesOneForm(
        Arc::new(ScaleField(Cx::new(0.0, -0.5), Arc::new(ConjField(phi)))),
        source.coframe_bar(),
    ));
    AlgOneForm {
        lambda,
        c0,
        cplus,
        cminus,
    }
}

/// Flatness sup of the vortex Cartan connection over admissible points.
pub fn cartan_flatness_sup(vs: &VortexSolution, points: &[Vec<f64>]) -> f64 {
    vs.cartan_connection()
        .curvature()
        .sup_on_coordinate_bivectors(points, 2)
}

/// Flux/energy integral result with tail diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct FluxResult {
    pub value: f64,
    pub error: f64,
    /// Extrapolated tail contribution beyond the cutoff (0 for compact).
    pub tail: f64,
    /// Fitted decay exponent at the cutoff, when a cutoff was used.
    pub exponent: Option<f64>,
}

/// Radial integration of a smooth integrand g(x, y) over the source surface
/// of curvature k0: the whole sphere via r = tan(s/2) when k0 = 1; cutoff
/// R = 50 plus power-law tail extrapolation on the plane; cutoff plus
/// edge-exponent diagnostics on the disk.
pub fn integrate_radial(g: &dyn Fn(f64, f64) -> f64, k0: f64) -> Result<FluxResult, VortexError> {
    let opts = QuadOptions {
        rel_tol: 1e-9,
        abs_tol: 1e-12,
        max_panels: 40_000,
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    let polar = |r: f64, th: f64| -> f64 { g(r * th.cos(), r * th.sin()) };
    let angular_mean = |r: f64| -> f64 {
        let n = 64;
        (0..n)
            .map(|i| polar(r, two_pi * (i as f64 + 0.5) / n as f64))
            .sum::<f64>()
            / n as f64
            * two_pi
            * r
    };
    if k0 > 0.0 {
        // compact: substitute r = tan(s/2), s ∈ [0, π]
        let f = |s: f64, th: f64| {
            let half = s / 2.0;
            let r = half.tan();
            let dr_ds = 0.5 / (half.cos() * half.cos());
            Cx::real(polar(r, th) * r * dr_ds)
        };
        let res = integrate_rect(&f, 0.0, std::f64::consts::PI, 0.0, two_pi, opts)?;
        return Ok(FluxResult {
            value: res.value.re,
            error: res.error,
            tail: 0.0,
            exponent: None,
        });
    }
    if k0 == 0.0 {
        // plane: the radial profile must decay like r^q with q < −1.5
        let cutoff = 50.0;
        let f = |r: f64, th: f64| Cx::real(polar(r, th) * r);
        let ga = angular_mean(cutoff / 2.0);
        let gb = angular_mean(cutoff);
        if ga.abs() < 1e-12 && gb.abs() < 1e-12 {
            // vanishing tail (e.g. a flat connection); nothing to extrapolate
            let res = integrate_rect(&f, 0.0, cutoff, 0.0, two_pi, opts)?;
            return Ok(FluxResult {
                value: res.value.re,
                error: res.error,
                tail: 0.0,
                exponent: None,
            });
        }
        let exponent = (gb.abs().max(1e-300) / ga.abs().max(1e-300)).ln() / 2.0f64.ln();
        if exponent >= -1.5 {
            return Err(VortexError::TailDivergence { exponent });
        }
        let res = integrate_rect(&f, 0.0, cutoff, 0.0, two_pi, opts)?;
        // ∫_R^∞ C r^q dr with C fixed by the cutoff value
        let tail = gb * cutoff / (-exponent - 1.0);
        return Ok(FluxResult {
            value: res.value.re + tail,
            error: res.error + tail.abs() * 0.1,
            tail,
            exponent: Some(exponent),
        });
    }
    // disk: edge behaviour (1−r)^q needs q > −0.5 for a trustworthy total
    let delta = 1e-4;
    let cutoff = 1.0 - delta;
    let f = |r: f64, th: f64| Cx::real(polar(r, th) * r);
    let ga = angular_mean(1.0 - 2.0 * delta);
    let gb = angular_mean(cutoff);
    if ga.abs() < 1e-12 && gb.abs() < 1e-12 {
        let res = integrate_rect(&f, 0.0, cutoff, 0.0, two_pi, opts)?;
        return Ok(FluxResult {
            value: res.value.re,
            error: res.error,
            tail: 0.0,
            exponent: None,
        });
    }
    let exponent = (gb.abs().max(1e-300) / ga.abs().max(1e-300)).ln() / 0.5f64.ln();
    if exponent <= -0.5 {
        return Err(VortexError::TailDivergence { exponent });
    }
    let res = integrate_rect(&f, 0.0, cutoff, 0.0, two_pi, opts)?;
    let tail = gb * delta / (exponent + 1.0);
    Ok(FluxResult {
        value: res.value.re + tail,
        error: res.error + tail.abs() * 0.1,
        tail,
        exponent: Some(exponent),
    })
}

/// E = ½∫ [B²/(2Ω₀) + |D₁φ|² + |D₂φ|² + (Ω₀/2)(1−|φ|²)²] dx dy on the
/// hyperbolic disk, for arbitrary fields.
pub fn energy_of_fields(phi: &SField, a: &SOneForm, k0: f64) -> Result<f64, VortexError> {
    let geom = SurfaceGeometry::new(k0);
    let da = DOneForm(a.clone());
    let phi = phi.clone();
    let a = a.clone();
    let ex = basis_tangent::<f64>(2, 0);
    let ey = basis_tangent::<f64>(2, 1);
    let integrand = move |x: f64, y: f64| -> f64 {
        let p = [x, y];
        let omega0 = geom.conformal_factor(&p);
        let b = da.t0(&p, &ex, &ey).re;
        let phi_v = f64::scalar_at(&*phi, &p);
        let dphi_x = crate::forms::dir_scalar(&*phi, &p, &ex);
        let dphi_y = crate::forms::dir_scalar(&*phi, &p, &ey);
        let ax = f64::one_at(&*a, &p, &ex);
        let ay = f64::one_at(&*a, &p, &ey);
        let dx = dphi_x - Cx::i() * ax * phi_v;
        let dy = dphi_y - Cx::i() * ay * phi_v;
        let pot = 1.0 - phi_v.norm_sqr();
        0.5 * (b * b / (2.0 * omega0) + dx.norm_sqr() + dy.norm_sqr() + 0.5 * omega0 * pot * pot)
    };
    let res = integrate_radial(&integrand, k0)?;
    Ok(res.value)
}
