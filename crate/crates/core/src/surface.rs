//! Constant-curvature Riemann surface geometry: the conformal metric
//! Ω = 4/(1+K|z|²)², the complexified coframe e = 2dz/(1+K|z|²), the spin
//! connection Γ, and the flat Lie(H¹_λ)-valued Cartan connection
//! Â = −Γ t₀ + (i/2)(e t₋ − ē t₊) with λ = −K, whose flatness encodes the
//! structure and Gauss equations.

use crate::forms::{
    basis_tangent, one_form_impl, scalar_field_impl, Ad, AlgOneForm, DOneForm, FieldTimesTwoForm,
    OneForm, OneFormSum, ScaleOneForm, ScaleTwoForm, SField, SOneForm, TwoFormSum, Wedge,
};
use crate::group::{GroupGeometry, SectionInclusion};
use crate::report::ResidualReport;
use crate::scalar::Cx;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("point lies outside the chart domain (K = {k}, |z|² = {zsq:.4})")]
    OutsideDomain { k: f64, zsq: f64 },
    #[error("point too close to the chart boundary (1 - λ|z|² = {q:.3e})")]
    ChartBoundary { q: f64 },
}

/// Surface of constant Gauss curvature K in the stereographic-style chart.
/// K = 1 covers the sphere minus a point, K = −1 the unit disk, K = 0 the
/// plane (with ds² = 4 dz dz̄ so the same formulas serve all three).
#[derive(Clone, Copy, Debug)]
pub struct SurfaceGeometry {
    pub k: f64,
}

impl SurfaceGeometry {
    pub fn new(k: f64) -> Self {
        SurfaceGeometry { k }
    }

    pub fn in_domain(&self, p: &[f64]) -> bool {
        let zsq = p[0] * p[0] + p[1] * p[1];
        1.0 + self.k * zsq > 0.0
    }

    pub fn check_domain(&self, p: &[f64]) -> Result<(), SurfaceError> {
        if self.in_domain(p) {
            Ok(())
        } else {
            Err(SurfaceError::OutsideDomain {
                k: self.k,
                zsq: p[0] * p[0] + p[1] * p[1],
            })
        }
    }

    /// Conformal factor Ω(z) = 4/(1+K|z|²)².
    pub fn conformal_factor(&self, p: &[f64]) -> f64 {
        let zsq = p[0] * p[0] + p[1] * p[1];
        4.0 / (1.0 + self.k * zsq).powi(2)
    }

    pub fn coframe(&self) -> SOneForm {
        Arc::new(Coframe { k: self.k })
    }

    pub fn coframe_bar(&self) -> SOneForm {
        Arc::new(CoframeBar { k: self.k })
    }

    pub fn spin_connection(&self) -> SOneForm {
        Arc::new(SpinConnection { k: self.k })
    }

    /// Kähler form ω = (i/2) e ∧ ē = Ω dx ∧ dy.
    pub fn kahler_form(&self) -> crate::forms::STwoForm {
        Arc::new(ScaleTwoForm(
            Cx::new(0.0, 0.5),
            Arc::new(Wedge(self.coframe(), self.coframe_bar())),
        ))
    }

    /// Curvature two-form ℛ = (i/2) K e ∧ ē.
    pub fn curvature_two_form(&self) -> crate::forms::STwoForm {
        Arc::new(ScaleTwoForm(
            Cx::new(0.0, 0.5 * self.k),
            Arc::new(Wedge(self.coframe(), self.coframe_bar())),
        ))
    }

    /// Sup residuals of the structure equation de − i e∧Γ = 0 and the Gauss
    /// equation dΓ − (i/2)K e∧ē = 0 over the given points.
    pub fn structure_gauss_residuals(&self, points: &[Vec<f64>]) -> ResidualReport {
        self.structure_gauss_residuals_perturbed(points, None)
    }

    /// Same, with an optional perturbation Γ → Γ + c·dx (negative control).
    pub fn structure_gauss_residuals_perturbed(
        &self,
        points: &[Vec<f64>],
        gamma_perturbation: Option<f64>,
    ) -> ResidualReport {
        let e = self.coframe();
        let gamma: SOneForm = match gamma_perturbation {
            None => self.spin_connection(),
            Some(c) => Arc::new(OneFormSum(vec![
                self.spin_connection(),
                Arc::new(crate::forms::CoordForm {
                    index: 0,
                    coeff: Cx::real(c),
                }),
            ])),
        };
        // de - i Γ∧e (the t₋ coefficient of the flat Cartan connection's
        // curvature; equals de + i e∧Γ)
        let structure = TwoFormSum(vec![
            Arc::new(DOneForm(e.clone())),
            Arc::new(ScaleTwoForm(
                Cx::new(0.0, -1.0),
                Arc::new(Wedge(gamma.clone(), e.clone())),
            )),
        ]);
        // dΓ - (i/2) K e∧ē
        let gauss = TwoFormSum(vec![
            Arc::new(DOneForm(gamma)),
            Arc::new(ScaleTwoForm(
                Cx::new(0.0, -0.5 * self.k),
                Arc::new(Wedge(e, self.coframe_bar())),
            )),
        ]);
        let u = basis_tangent::<f64>(2, 0);
        let v = basis_tangent::<f64>(2, 1);
        let mut s_res = Vec::with_capacity(points.len());
        let mut g_res = Vec::with_capacity(points.len());
        for p in points {
            s_res.push(crate::forms::TwoForm::t0(&structure, p, &u, &v).abs());
            g_res.push(crate::forms::TwoForm::t0(&gauss, p, &u, &v).abs());
        }
        let mut rep = ResidualReport::new(format!("surface K={}", self.k), 0);
        rep.push_samples("structure |de - i Γ∧e|", &s_res, 1e-10);
        rep.push_samples("gauss |dΓ - (i/2)K e∧ē|", &g_res, 1e-10);
        rep
    }

    /// The flat Cartan connection Â = −Γ t₀ + (i/2)(e t₋ − ē t₊), valued in
    /// Lie(H¹_λ) with λ = −K.
    pub fn cartan_connection(&self) -> AlgOneForm {
        AlgOneForm {
            lambda: -self.k,
            c0: Arc::new(ScaleOneForm(Cx::real(-1.0), self.spin_connection())),
            cplus: Arc::new(ScaleOneForm(Cx::new(0.0, -0.5), self.coframe_bar())),
            cminus: Arc::new(ScaleOneForm(Cx::new(0.0, 0.5), self.coframe())),
        }
    }

    /// Prop 2.2: the section s (group chart inclusion at χ = 0) pulls the
    /// Maurer–Cartan form back to Â. Reports sup differences of s*σ − i e,
    /// s*σ̄ + i ē, s*σ⁰ + Γ, and the matrix-level comparison of
    /// s*(h⁻¹dh) with Â.
    pub fn section_pullback_check(&self, points: &[Vec<f64>]) -> Result<ResidualReport, SurfaceError> {
        let lambda = -self.k;
        for p in points {
            let q = 1.0 - lambda * (p[0] * p[0] + p[1] * p[1]);
            if q <= 1e-6 {
                return Err(SurfaceError::ChartBoundary { q });
            }
        }
        let group = GroupGeometry::new(lambda);
        let incl: Arc<dyn crate::forms::ChartMap> = Arc::new(SectionInclusion);
        let s_sigma = crate::forms::PullbackOneForm {
            map: incl.clone(),
            form: group.sigma(),
        };
        let s_sigma_bar = crate::forms::PullbackOneForm {
            map: incl.clone(),
            form: group.sigma_bar(),
        };
        let s_sigma0 = crate::forms::PullbackOneForm {
            map: incl.clone(),
            form: group.sigma0(),
        };
        let e = self.coframe();
        let ebar = self.coframe_bar();
        let gamma = self.spin_connection();
        let mc = group.maurer_cartan_matrix_form();
        let ahat = self.cartan_connection();

        let mut d_sigma = Vec::new();
        let mut d_sigma_bar = Vec::new();
        let mut d_sigma0 = Vec::new();
        let mut d_matrix = Vec::new();
        let i = Cx::<f64>::i();
        for p in points {
            for idx in 0..2 {
                let v = basis_tangent::<f64>(2, idx);
                let ev = crate::forms::OneForm::w0(&*e, p, &v);
                let ebv = crate::forms::OneForm::w0(&*ebar, p, &v);
                let gv = crate::forms::OneForm::w0(&*gamma, p, &v);
                d_sigma.push((s_sigma.w0(p, &v) - i * ev).abs());
                d_sigma_bar.push((s_sigma_bar.w0(p, &v) + i * ebv).abs());
                d_sigma0.push((s_sigma0.w0(p, &v) + gv).abs());
                // matrix-level: s*(h⁻¹dh) vs Â as matrices
                let p3 = vec![p[0], p[1], 0.0];
                let v3 = vec![v[0], v[1], Cx::zero()];
                let lhs = crate::forms::MatrixOneForm::o0(&*mc, &p3, &v3);
                let rhs = ahat.eval(p, &v).to_matrix();
                d_matrix.push(lhs.sub(rhs).sup_abs());
            }
        }
        let mut rep = ResidualReport::new(format!("section pullback K={}", self.k), 0);
        rep.push_samples("s*σ − i e", &d_sigma, 1e-10);
        rep.push_samples("s*σ̄ + i ē", &d_sigma_bar, 1e-10);
        rep.push_samples("s*σ⁰ + Γ", &d_sigma0, 1e-10);
        rep.push_samples("s*(h⁻¹dh) − Â (matrix)", &d_matrix, 1e-10);
        Ok(rep)
    }
}

/// e = 2 dz / (1 + K|z|²).
pub struct Coframe {
    pub k: f64,
}
impl Coframe {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let zsq = p[0] * p[0] + p[1] * p[1];
        let denom = T::one() + T::from_f64(self.k) * zsq;
        let dz = v[0] + Cx::i() * v[1];
        dz.scale(T::from_f64(2.0) / denom)
    }
}
one_form_impl!(Coframe);

/// ē = 2 dz̄ / (1 + K|z|²).
pub struct CoframeBar {
    pub k: f64,
}
impl CoframeBar {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let zsq = p[0] * p[0] + p[1] * p[1];
        let denom = T::one() + T::from_f64(self.k) * zsq;
        let dzbar = v[0] - Cx::i() * v[1];
        dzbar.scale(T::from_f64(2.0) / denom)
    }
}
one_form_impl!(CoframeBar);

/// Γ = iK (z dz̄ − z̄ dz) / (1 + K|z|²); real-valued on real tangents.
pub struct SpinConnection {
    pub k: f64,
}
impl SpinConnection {
    fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let z = Cx::new(p[0], p[1]);
        let zbar = z.conj();
        let zsq = z.norm_sqr();
        let denom = T::one() + T::from_f64(self.k) * zsq;
        let dz = v[0] + Cx::i() * v[1];
        let dzbar = v[0] - Cx::i() * v[1];
        (Cx::i() * (z * dzbar - zbar * dz)).scale(T::from_f64(self.k) / denom)
    }
}
one_form_impl!(SpinConnection);

/// Ω as a scalar field (used in integrands and grid output).
pub struct ConformalFactorField {
    pub k: f64,
}
impl ConformalFactorField {
    fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let zsq = p[0] * p[0] + p[1] * p[1];
        let d = T::one() + T::from_f64(self.k) * zsq;
        Cx::real(T::from_f64(4.0) / (d * d))
    }
}
scalar_field_impl!(ConformalFactorField);

/// ω₀ = Ω dx∧dy as a two-form built from the field (equivalent to the
/// Kähler-form wedge construction; kept as an independent route for
/// cross-checks).
pub fn kahler_via_conformal(k: f64) -> crate::forms::STwoForm {
    let dx: SOneForm = Arc::new(crate::forms::CoordForm {
        index: 0,
        coeff: Cx::one(),
    });
    let dy: SOneForm = Arc::new(crate::forms::CoordForm {
        index: 1,
        coeff: Cx::one(),
    });
    let omega_field: SField = Arc::new(ConformalFactorField { k });
    Arc::new(FieldTimesTwoForm(omega_field, Arc::new(Wedge(dx, dy))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{OneForm, TwoForm};

    #[test]
    fn coframe_values() {
        // K=0: e(∂x) = 2 anywhere
        let g = SurfaceGeometry::new(0.0);
        let e = g.coframe();
        let v = basis_tangent::<f64>(2, 0);
        assert!((e.w0(&[0.7, -1.2], &v) - Cx::real(2.0)).abs() < 1e-15);
        // K=1 at z=0: e(∂x) = 2
        let g = SurfaceGeometry::new(1.0);
        let e = g.coframe();
        assert!((e.w0(&[0.0, 0.0], &v) - Cx::real(2.0)).abs() < 1e-15);
        // K=1 at z=1: e(∂y) = i
        let vy = basis_tangent::<f64>(2, 1);
        assert!((e.w0(&[1.0, 0.0], &vy) - Cx::i()).abs() < 1e-15);
    }

    #[test]
    fn spin_connection_values() {
        // vanishes at the origin for any K
        for k in [-1.0, 0.0, 1.0] {
            let g = SurfaceGeometry::new(k);
            let gam = g.spin_connection();
            for idx in 0..2 {
                let v = basis_tangent::<f64>(2, idx);
                assert!(gam.w0(&[0.0, 0.0], &v).abs() < 1e-15);
            }
        }
        // K=1, z=1: Γ(∂y) = 1, Γ(∂x) = 0
        let g = SurfaceGeometry::new(1.0);
        let gam = g.spin_connection();
        let vx = basis_tangent::<f64>(2, 0);
        let vy = basis_tangent::<f64>(2, 1);
        assert!((gam.w0(&[1.0, 0.0], &vy) - Cx::real(1.0)).abs() < 1e-14);
        assert!(gam.w0(&[1.0, 0.0], &vx).abs() < 1e-14);
    }

    #[test]
    fn spin_connection_real_on_real_tangents() {
        let g = SurfaceGeometry::new(-1.0);
        let gam = g.spin_connection();
        let v = basis_tangent::<f64>(2, 1);
        let val = gam.w0(&[0.3, -0.4], &v);
        assert!(val.im.abs() < 1e-15);
    }

    #[test]
    fn d_gamma_matches_curvature_form_at_origin() {
        // dΓ(∂x,∂y) at z=0 equals K·Ω(0) = 4K, cross-checked against
        // (i/2) K e∧ē
        for k in [1.0, -1.0] {
            let g = SurfaceGeometry::new(k);
            let dgamma = DOneForm(g.spin_connection());
            let u = basis_tangent::<f64>(2, 0);
            let v = basis_tangent::<f64>(2, 1);
            let lhs = dgamma.t0(&[0.0, 0.0], &u, &v);
            let rhs = g.curvature_two_form().t0(&[0.0, 0.0], &u, &v);
            assert!((lhs - rhs).abs() < 1e-13);
            assert!((lhs.re - 4.0 * k).abs() < 1e-13);
        }
    }

    #[test]
    fn structure_gauss_hold() {
        for (k, pts_r) in [(1.0, 3.0), (-1.0, 0.9), (0.0, 3.0)] {
            let g = SurfaceGeometry::new(k);
            let points: Vec<Vec<f64>> = (0..100)
                .map(|i| {
                    let t = i as f64 * 0.37;
                    let r = pts_r * (0.1 + 0.85 * ((i as f64 * 0.613).fract()));
                    vec![r * t.cos(), r * t.sin()]
                })
                .collect();
            let rep = g.structure_gauss_residuals(&points);
            assert!(rep.pass(), "{rep}");
        }
    }

    #[test]
    fn perturbed_gamma_fails_gauss() {
        let g = SurfaceGeometry::new(1.0);
        let points: Vec<Vec<f64>> = (0..50)
            .map(|i| {
                let t = i as f64 * 0.61;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let rep = g.structure_gauss_residuals_perturbed(&points, Some(0.1));
        // adding the exact form 0.1 dx leaves dΓ unchanged but breaks the
        // structure equation; the report as a whole must fail
        let sup = rep
            .entries
            .iter()
            .map(|e| e.sup)
            .fold(0.0f64, f64::max);
        assert!(sup >= 0.05, "perturbed residual {sup}");
        assert!(!rep.pass());
    }

    #[test]
    fn cartan_connection_values_at_origin() {
        // K=1, z=0, v=∂x: Â(v) = i(t₋ − t₊), and the t₀ coefficient vanishes
        let g = SurfaceGeometry::new(1.0);
        let a = g.cartan_connection();
        let v = basis_tangent::<f64>(2, 0);
        let val = a.eval(&[0.0, 0.0], &v);
        assert!(val.c0.abs() < 1e-15);
        assert!((val.cminus - Cx::i()).abs() < 1e-15);
        assert!((val.cplus + Cx::i()).abs() < 1e-15);
        assert_eq!(val.lambda, -1.0);
    }

    #[test]
    fn cartan_connection_reality() {
        let g = SurfaceGeometry::new(-1.0);
        let a = g.cartan_connection();
        for idx in 0..2 {
            let v = basis_tangent::<f64>(2, idx);
            let val = a.eval(&[0.2, 0.5], &v);
            assert!(val.reality_residual() < 1e-12);
        }
    }
}
