//! The group manifold H¹_λ as a 3D chart (z, χ): h = s(z)·e^{χ t₀} with
//! s the familiar section and χ ∈ [0, 4π) the fibre coordinate. Provides the
//! embedding into ℂ², the left-invariant coframe σ⁰, σ, σ̄ and frame fields
//! X₀, X₊, X₋, the Maurer–Cartan structure equations, metric and
//! orientation, and equivariant-degree computation.

use crate::forms::{
    basis_tangent, chart_map_impl, dir_scalar, matrix_flatness_sup, one_form_impl, pushforward,
    scalar_field_impl, Ad, DOneForm, MatLogDeriv, MatrixOneForm, ScalarField, ScaleTwoForm,
    SOneForm, TwoForm, TwoFormSum, Wedge,
};
use crate::report::ResidualReport;
use crate::scalar::{Cx, Mat2, Real};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("chart boundary: 1 - λ|z|² = {q:.3e} must stay positive")]
    ChartBoundary { q: f64 },
    #[error("field is not equivariant: degree spread {spread:.3e} around {value:.6}")]
    NotEquivariant { value: f64, spread: f64 },
    #[error("metric is degenerate for λ = 0")]
    DegenerateMetric,
}

/// Embedding (z, χ) ↦ (z₁, z₂) = (e^{−iχ/2}, z e^{−iχ/2})/√(1−λ|z|²) as a
/// chart map onto the four real coordinates (Re z₁, Im z₁, Re z₂, Im z₂).
pub struct EmbedMap {
    pub lambda: f64,
}
impl EmbedMap {
    fn dim(&self) -> usize {
        4
    }
    pub(crate) fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
        let half = T::from_f64(0.5);
        let (x, y, chi) = (p[0], p[1], p[2]);
        let q = T::one() - T::from_f64(self.lambda) * (x * x + y * y);
        let s = T::one() / q.sqrt();
        let (c, sn) = ((chi * half).cos(), (chi * half).sin());
        // z1 = s e^{-i chi/2}
        let z1 = Cx::new(s * c, -(s * sn));
        // z2 = s z e^{-i chi/2}
        let z2 = Cx::new(x, y) * Cx::new(c, -sn);
        let z2 = z2.scale(s);
        vec![z1.re, z1.im, z2.re, z2.im]
    }
}
chart_map_impl!(EmbedMap);

/// The section s: M → H¹_λ as the chart inclusion χ = 0.
pub struct SectionInclusion;
impl SectionInclusion {
    fn dim(&self) -> usize {
        3
    }
    pub(crate) fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
        vec![p[0], p[1], T::zero()]
    }
}
chart_map_impl!(SectionInclusion);

/// The fundamental-group generator γ(t) = e^{t t₀}: z = 0, χ = t.
pub struct FibrePath;
impl FibrePath {
    fn dim(&self) -> usize {
        3
    }
    pub(crate) fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
        vec![T::zero(), T::zero(), p[0]]
    }
}
chart_map_impl!(FibrePath);

fn embed_values<T: Ad>(lambda: f64, p: &[T]) -> (Cx<T>, Cx<T>) {
    let out = EmbedMap { lambda }.ev(p);
    (Cx::new(out[0], out[1]), Cx::new(out[2], out[3]))
}

/// σ = 2i (z₁ dz₂ − z₂ dz₁).
pub struct Sigma {
    pub lambda: f64,
}
impl Sigma {
    pub(crate) fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let embed = EmbedMap {
            lambda: self.lambda,
        };
        let (q, w) = pushforward(&embed, p, v);
        let z1 = Cx::new(q[0], q[1]);
        let z2 = Cx::new(q[2], q[3]);
        let dz1 = w[0] + Cx::i() * w[1];
        let dz2 = w[2] + Cx::i() * w[3];
        Cx::i() * (z1 * dz2 - z2 * dz1) * Cx::from_f64(2.0, 0.0)
    }
}
one_form_impl!(Sigma);

/// σ̄ = −2i (z̄₁ dz̄₂ − z̄₂ dz̄₁).
pub struct SigmaBar {
    pub lambda: f64,
}
impl SigmaBar {
    pub(crate) fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let embed = EmbedMap {
            lambda: self.lambda,
        };
        let (q, w) = pushforward(&embed, p, v);
        let z1b = Cx::new(q[0], -q[1]);
        let z2b = Cx::new(q[2], -q[3]);
        let dz1b = w[0] - Cx::i() * w[1];
        let dz2b = w[2] - Cx::i() * w[3];
        -(Cx::i() * (z1b * dz2b - z2b * dz1b)) * Cx::from_f64(2.0, 0.0)
    }
}
one_form_impl!(SigmaBar);

/// σ⁰ = i (z̄₁ dz₁ − λ z̄₂ dz₂ − z₁ dz̄₁ + λ z₂ dz̄₂).
pub struct Sigma0 {
    pub lambda: f64,
}
impl Sigma0 {
    pub(crate) fn ev<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> Cx<T> {
        let embed = EmbedMap {
            lambda: self.lambda,
        };
        let (q, w) = pushforward(&embed, p, v);
        let z1 = Cx::new(q[0], q[1]);
        let z2 = Cx::new(q[2], q[3]);
        let dz1 = w[0] + Cx::i() * w[1];
        let dz2 = w[2] + Cx::i() * w[3];
        let dz1b = w[0] - Cx::i() * w[1];
        let dz2b = w[2] - Cx::i() * w[3];
        let lam = Cx::from_f64(self.lambda, 0.0);
        Cx::i() * (z1.conj() * dz1 - lam * z2.conj() * dz2 - z1 * dz1b + lam * z2 * dz2b)
    }
}
one_form_impl!(Sigma0);

/// h = [[z₁, λ z̄₂], [z₂, z̄₁]] as a matrix map on the group chart.
pub struct GroupElementMap {
    pub lambda: f64,
}
impl GroupElementMap {
    pub(crate) fn ev<T: Ad>(&self, p: &[T]) -> Mat2<T> {
        let (z1, z2) = embed_values(self.lambda, p);
        let lam = Cx::from_f64(self.lambda, 0.0);
        Mat2::new(z1, lam * z2.conj(), z2, z1.conj())
    }
}
crate::forms::matrix_map_impl!(GroupElementMap);

/// Monomial z₁^a z₂^b z̄₁^c z̄₂^d on the group chart; equivariant of degree
/// a + b − c − d.
pub struct MonomialField {
    pub lambda: f64,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}
impl MonomialField {
    pub(crate) fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
        let (z1, z2) = embed_values(self.lambda, p);
        let mut acc = Cx::<T>::one();
        for _ in 0..self.a {
            acc = acc * z1;
        }
        for _ in 0..self.b {
            acc = acc * z2;
        }
        for _ in 0..self.c {
            acc = acc * z1.conj();
        }
        for _ in 0..self.d {
            acc = acc * z2.conj();
        }
        acc
    }
}
scalar_field_impl!(MonomialField);

/// The left-invariant frame at a point: X₀, X₊, X₋ as complexified chart
/// tangents, obtained by solving the pairing conditions
/// σ⁰(X₀)=1, σ(X₋)=σ̄(X₊)=2, all other pairings zero.
pub struct Frame<T: Real> {
    pub x0: Vec<Cx<T>>,
    pub xplus: Vec<Cx<T>>,
    pub xminus: Vec<Cx<T>>,
}

/// Solve the 3×3 complex linear system M x = b by Gaussian elimination with
/// value-level partial pivoting.
fn solve3<T: Real>(m: [[Cx<T>; 3]; 3], b: [Cx<T>; 3]) -> [Cx<T>; 3] {
    let mut a = [
        [m[0][0], m[0][1], m[0][2], b[0]],
        [m[1][0], m[1][1], m[1][2], b[1]],
        [m[2][0], m[2][1], m[2][2], b[2]],
    ];
    for col in 0..3 {
        let mut piv = col;
        let mut best = a[col][col].val().abs();
        for row in (col + 1)..3 {
            let mag = a[row][col].val().abs();
            if mag > best {
                best = mag;
                piv = row;
            }
        }
        a.swap(col, piv);
        let inv = Cx::<T>::one() / a[col][col];
        for row in 0..3 {
            if row == col {
                continue;
            }
            let factor = a[row][col] * inv;
            for k in col..4 {
                let sub = factor * a[col][k];
                a[row][k] = a[row][k] - sub;
            }
        }
    }
    [
        a[0][3] / a[0][0],
        a[1][3] / a[1][1],
        a[2][3] / a[2][2],
    ]
}

/// Geometry of the group manifold H¹_λ.
#[derive(Clone, Copy, Debug)]
pub struct GroupGeometry {
    pub lambda: f64,
}

impl GroupGeometry {
    pub fn new(lambda: f64) -> Self {
        GroupGeometry { lambda }
    }

    pub fn in_chart(&self, p: &[f64]) -> bool {
        1.0 - self.lambda * (p[0] * p[0] + p[1] * p[1]) > 0.0
    }

    /// Embedding values (z₁, z₂); errors at the chart boundary.
    pub fn embed(&self, p: &[f64]) -> Result<(Cx<f64>, Cx<f64>), GroupError> {
        let q = 1.0 - self.lambda * (p[0] * p[0] + p[1] * p[1]);
        if q <= 0.0 {
            return Err(GroupError::ChartBoundary { q });
        }
        Ok(embed_values(self.lambda, p))
    }

    /// Constraint residual | |z₁|² − λ|z₂|² − 1 |.
    pub fn constraint_residual(&self, p: &[f64]) -> f64 {
        let (z1, z2) = embed_values::<f64>(self.lambda, p);
        (z1.norm_sqr() - self.lambda * z2.norm_sqr() - 1.0).abs()
    }

    /// Projection π ∘ embed: h ↦ z₂/z₁; equals the chart coordinate z.
    pub fn project(&self, p: &[f64]) -> Cx<f64> {
        let (z1, z2) = embed_values::<f64>(self.lambda, p);
        z2 / z1
    }

    pub fn sigma(&self) -> SOneForm {
        Arc::new(Sigma {
            lambda: self.lambda,
        })
    }
    pub fn sigma_bar(&self) -> SOneForm {
        Arc::new(SigmaBar {
            lambda: self.lambda,
        })
    }
    pub fn sigma0(&self) -> SOneForm {
        Arc::new(Sigma0 {
            lambda: self.lambda,
        })
    }

    /// σ¹ = (σ+σ̄)/2 and σ² = (σ−σ̄)/(2i) evaluated at a point/tangent.
    pub fn sigma12<T: Ad>(&self, p: &[T], v: &[Cx<T>]) -> (Cx<T>, Cx<T>) {
        let s = Sigma {
            lambda: self.lambda,
        }
        .ev(p, v);
        let sb = SigmaBar {
            lambda: self.lambda,
        }
        .ev(p, v);
        let half = Cx::from_f64(0.5, 0.0);
        let two_i = Cx::from_f64(0.0, 2.0);
        ((s + sb) * half, (s - sb) / two_i)
    }

    /// The Maurer–Cartan form h⁻¹dh as a matrix-valued one-form.
    pub fn maurer_cartan_matrix_form(&self) -> Arc<dyn MatrixOneForm> {
        Arc::new(MatLogDeriv(Arc::new(GroupElementMap {
            lambda: self.lambda,
        })))
    }

    /// Left-invariant frame at a point, generic over the AD level.
    pub fn frame_at<T: Ad>(&self, p: &[T]) -> Frame<T> {
        let s0 = Sigma0 {
            lambda: self.lambda,
        };
        let s = Sigma {
            lambda: self.lambda,
        };
        let sb = SigmaBar {
            lambda: self.lambda,
        };
        let mut m = [[Cx::<T>::zero(); 3]; 3];
        for (j, mj) in m.iter_mut().enumerate() {
            *mj = {
                let v = basis_tangent::<T>(3, j);
                [s0.ev(p, &v), s.ev(p, &v), sb.ev(p, &v)]
            };
        }
        // rows of the solve are forms, columns are coordinate directions
        let mt = |i: usize, j: usize| m[j][i];
        let mat = [
            [mt(0, 0), mt(0, 1), mt(0, 2)],
            [mt(1, 0), mt(1, 1), mt(1, 2)],
            [mt(2, 0), mt(2, 1), mt(2, 2)],
        ];
        let two = Cx::from_f64(2.0, 0.0);
        let x0 = solve3(mat, [Cx::one(), Cx::zero(), Cx::zero()]);
        let xminus = solve3(mat, [Cx::zero(), two, Cx::zero()]);
        let xplus = solve3(mat, [Cx::zero(), Cx::zero(), two]);
        Frame {
            x0: x0.to_vec(),
            xplus: xplus.to_vec(),
            xminus: xminus.to_vec(),
        }
    }

    /// Apply a frame field (as returned by `frame_at`) to a scalar field.
    pub fn frame_derivative<T: Ad>(
        &self,
        f: &dyn ScalarField,
        p: &[T],
        which: FrameVector,
    ) -> Cx<T> {
        let frame = self.frame_at(p);
        let v = match which {
            FrameVector::X0 => frame.x0,
            FrameVector::XPlus => frame.xplus,
            FrameVector::XMinus => frame.xminus,
        };
        dir_scalar(f, p, &v)
    }

    /// Maurer–Cartan structure-equation residuals over sample points:
    /// dσ − iσ∧σ⁰, dσ⁰ − (iλ/2)σ∧σ̄, and the full matrix check
    /// d(h⁻¹dh) + (h⁻¹dh)∧(h⁻¹dh) = 0.
    pub fn maurer_cartan_residuals(&self, points: &[Vec<f64>]) -> ResidualReport {
        self.maurer_cartan_residuals_inner(points, false)
    }

    /// Negative control: drop the iσ∧σ⁰ term from the first structure
    /// equation; the residual must become O(1).
    pub fn maurer_cartan_residuals_dropped_term(&self, points: &[Vec<f64>]) -> ResidualReport {
        self.maurer_cartan_residuals_inner(points, true)
    }

    fn maurer_cartan_residuals_inner(&self, points: &[Vec<f64>], drop_term: bool) -> ResidualReport {
        let sigma = self.sigma();
        let sigma_bar = self.sigma_bar();
        let sigma0 = self.sigma0();
        let mut terms: Vec<crate::forms::STwoForm> = vec![Arc::new(DOneForm(sigma.clone()))];
        if !drop_term {
            terms.push(Arc::new(ScaleTwoForm(
                Cx::new(0.0, -1.0),
                Arc::new(Wedge(sigma.clone(), sigma0.clone())),
            )));
        }
        let eq1 = TwoFormSum(terms);
        let eq2 = TwoFormSum(vec![
            Arc::new(DOneForm(sigma0)),
            Arc::new(ScaleTwoForm(
                Cx::new(0.0, -0.5 * self.lambda),
                Arc::new(Wedge(sigma, sigma_bar)),
            )),
        ]);
        let mc = self.maurer_cartan_matrix_form();
        let mut r1 = Vec::new();
        let mut r2 = Vec::new();
        let mut rm = Vec::new();
        for p in points {
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let u = basis_tangent::<f64>(3, i);
                    let v = basis_tangent::<f64>(3, j);
                    r1.push(eq1.t0(p, &u, &v).abs());
                    r2.push(eq2.t0(p, &u, &v).abs());
                }
            }
            rm.push(matrix_flatness_sup(&*mc, std::slice::from_ref(p), 3));
        }
        let mut rep = ResidualReport::new(format!("maurer-cartan λ={}", self.lambda), 0);
        let tol = if drop_term { f64::INFINITY } else { 1e-9 };
        rep.push_samples("dσ − iσ∧σ⁰", &r1, tol);
        rep.push_samples("dσ⁰ − (iλ/2)σ∧σ̄", &r2, 1e-9);
        rep.push_samples("d(h⁻¹dh) + (h⁻¹dh)∧(h⁻¹dh)", &rm, 1e-9);
        rep
    }

    /// Equivariant degree N with 2i X₀ F = N F: computes 2i(X₀F)/F at each
    /// point and requires agreement with a common integer.
    pub fn equivariant_degree(
        &self,
        f: &dyn ScalarField,
        points: &[Vec<f64>],
    ) -> Result<i64, GroupError> {
        let mut values = Vec::with_capacity(points.len());
        for p in points {
            let val = f64::scalar_at(f, p);
            let x0 = basis_tangent::<f64>(3, 2); // X₀ = ∂χ
            let d = dir_scalar(f, p, &x0);
            let ratio = (Cx::from_f64(0.0, 2.0) * d) / val;
            values.push(ratio);
        }
        let first = values[0];
        let n = first.re.round();
        let spread = values
            .iter()
            .map(|v| (v.re - n).abs().max(v.im.abs()))
            .fold(0.0f64, f64::max);
        if spread > 1e-8 {
            return Err(GroupError::NotEquivariant {
                value: first.re,
                spread,
            });
        }
        Ok(n as i64)
    }

    /// ds² = ¼(−(1/λ)(σ⁰)² + (σ¹)² + (σ²)²) evaluated on two tangents.
    pub fn metric(&self, p: &[f64], u: &[Cx<f64>], v: &[Cx<f64>]) -> Result<Cx<f64>, GroupError> {
        if self.lambda == 0.0 {
            return Err(GroupError::DegenerateMetric);
        }
        let s0 = Sigma0 {
            lambda: self.lambda,
        };
        let (s1u, s2u) = self.sigma12(p, u);
        let (s1v, s2v) = self.sigma12(p, v);
        let s0u = s0.ev(p, u);
        let s0v = s0.ev(p, v);
        let quarter = Cx::from_f64(0.25, 0.0);
        let inv_lam = Cx::from_f64(-1.0 / self.lambda, 0.0);
        Ok(quarter * (inv_lam * s0u * s0v + s1u * s1v + s2u * s2v))
    }

    /// Vol = (1/8) σ¹∧σ⁰∧σ² evaluated on three tangents.
    pub fn volume(&self, p: &[f64], u: &[Cx<f64>], v: &[Cx<f64>], w: &[Cx<f64>]) -> Cx<f64> {
        let s0 = Sigma0 {
            lambda: self.lambda,
        };
        let row = |t: &[Cx<f64>]| {
            let (s1, s2) = self.sigma12(p, t);
            [s1, s0.ev(p, t), s2]
        };
        let m = [row(u), row(v), row(w)];
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        // rows are forms, columns tangents: transpose leaves det unchanged
        det.scale(0.125)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum FrameVector {
    X0,
    XPlus,
    XMinus,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::group_points;

    #[test]
    fn embed_examples() {
        // identity element
        for lam in [-1.0, 0.0, 1.0] {
            let g = GroupGeometry::new(lam);
            let (z1, z2) = g.embed(&[0.0, 0.0, 0.0]).unwrap();
            assert!((z1 - Cx::one()).abs() < 1e-15 && z2.abs() < 1e-15);
        }
        // λ=0, z=1, χ=0 -> (1, 1)
        let g = GroupGeometry::new(0.0);
        let (z1, z2) = g.embed(&[1.0, 0.0, 0.0]).unwrap();
        assert!((z1 - Cx::one()).abs() < 1e-15 && (z2 - Cx::one()).abs() < 1e-15);
        // λ=-1, z=1, χ=0 -> (1/√2, 1/√2)
        let g = GroupGeometry::new(-1.0);
        let (z1, z2) = g.embed(&[1.0, 0.0, 0.0]).unwrap();
        let r = 1.0 / 2.0f64.sqrt();
        assert!((z1 - Cx::real(r)).abs() < 1e-15 && (z2 - Cx::real(r)).abs() < 1e-15);
    }

    #[test]
    fn constraint_and_projection() {
        for lam in [-1.0, 0.0, 1.0] {
            let g = GroupGeometry::new(lam);
            for p in group_points(lam, 50, 7, &[], 0.0) {
                assert!(g.constraint_residual(&p) < 1e-12);
                let z = g.project(&p);
                assert!((z - Cx::new(p[0], p[1])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fibre_closes_at_4pi() {
        for lam in [-1.0, 0.0, 1.0] {
            let g = GroupGeometry::new(lam);
            let (a1, a2) = g.embed(&[0.0, 0.0, 0.0]).unwrap();
            let (b1, b2) = g.embed(&[0.0, 0.0, 4.0 * std::f64::consts::PI]).unwrap();
            assert!((a1 - b1).abs() < 1e-12 && (a2 - b2).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_values_at_identity() {
        let g = GroupGeometry::new(-1.0);
        let vx = basis_tangent::<f64>(3, 0);
        let vchi = basis_tangent::<f64>(3, 2);
        let s = Sigma { lambda: -1.0 };
        // σ(∂x) = 2i at the identity
        assert!((s.ev(&[0.0, 0.0, 0.0], &vx) - Cx::new(0.0, 2.0)).abs() < 1e-14);
        // σ(∂χ) = 0 at the identity
        assert!(s.ev(&[0.0, 0.0, 0.0], &vchi).abs() < 1e-14);
        // σ⁰(∂χ) = 1 anywhere
        let s0 = Sigma0 { lambda: -1.0 };
        for p in group_points(-1.0, 20, 3, &[], 0.0) {
            assert!((s0.ev(&p, &vchi) - Cx::one()).abs() < 1e-12);
        }
    }

    #[test]
    fn pairing_matrix() {
        for lam in [-1.0, 0.0, 1.0] {
            let g = GroupGeometry::new(lam);
            let s = Sigma { lambda: lam };
            let sb = SigmaBar { lambda: lam };
            let s0 = Sigma0 { lambda: lam };
            for p in group_points(lam, 25, 11, &[], 0.0) {
                let fr = g.frame_at(&p);
                let near = |a: Cx<f64>, b: Cx<f64>| (a - b).abs() < 1e-10;
                assert!(near(s0.ev(&p, &fr.x0), Cx::one()));
                assert!(near(s.ev(&p, &fr.x0), Cx::zero()));
                assert!(near(sb.ev(&p, &fr.x0), Cx::zero()));
                assert!(near(s0.ev(&p, &fr.xminus), Cx::zero()));
                assert!(near(s.ev(&p, &fr.xminus), Cx::real(2.0)));
                assert!(near(sb.ev(&p, &fr.xminus), Cx::zero()));
                assert!(near(s0.ev(&p, &fr.xplus), Cx::zero()));
                assert!(near(s.ev(&p, &fr.xplus), Cx::zero()));
                assert!(near(sb.ev(&p, &fr.xplus), Cx::real(2.0)));
                // X₀ is ∂χ in this chart
                assert!(near(fr.x0[0], Cx::zero()) && near(fr.x0[1], Cx::zero()));
                assert!(near(fr.x0[2], Cx::one()));
            }
        }
    }

    #[test]
    fn frame_commutator() {
        // [X₊, X₋] = 2λi X₀, tested through AD on a generic scalar field
        struct Probe {
            lambda: f64,
        }
        impl Probe {
            fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
                let (z1, z2) = embed_values(self.lambda, p);
                z1 * z1 * z2.conj() + z2 * Cx::from_f64(0.3, -0.8)
            }
        }
        scalar_field_impl!(Probe);

        struct FrameDeriv {
            lambda: f64,
            which: FrameVector,
            inner: Arc<dyn ScalarField>,
        }
        impl FrameDeriv {
            fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
                GroupGeometry::new(self.lambda).frame_derivative(&*self.inner, p, self.which)
            }
        }
        scalar_field_impl!(FrameDeriv);

        for lam in [1.0, -1.0, 0.0] {
            let probe: Arc<dyn ScalarField> = Arc::new(Probe { lambda: lam });
            let xp_f: Arc<dyn ScalarField> = Arc::new(FrameDeriv {
                lambda: lam,
                which: FrameVector::XPlus,
                inner: probe.clone(),
            });
            let xm_f: Arc<dyn ScalarField> = Arc::new(FrameDeriv {
                lambda: lam,
                which: FrameVector::XMinus,
                inner: probe.clone(),
            });
            let g = GroupGeometry::new(lam);
            for p in group_points(lam, 5, 23, &[], 0.0) {
                // [X+,X-]f = X+(X- f) - X-(X+ f)
                let lhs = g.frame_derivative(&*xm_f, &p, FrameVector::XPlus)
                    - g.frame_derivative(&*xp_f, &p, FrameVector::XMinus);
                let x0f = g.frame_derivative(&*probe, &p, FrameVector::X0);
                let rhs = Cx::from_f64(0.0, 2.0 * lam) * x0f;
                assert!(
                    (lhs - rhs).abs() < 1e-9,
                    "lambda={lam} point={p:?} lhs={lhs:?} rhs={rhs:?}"
                );
            }
        }
    }

    #[test]
    fn x0_applied_to_chi() {
        struct Chi;
        impl Chi {
            fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
                Cx::real(p[2])
            }
        }
        scalar_field_impl!(Chi);
        let g = GroupGeometry::new(1.0);
        let d = g.frame_derivative(&Chi, &[0.1, 0.2, 1.0], FrameVector::X0);
        assert!((d - Cx::one()).abs() < 1e-12);
    }

    #[test]
    fn structure_equations_hold() {
        for lam in [-1.0, 0.0, 1.0] {
            let g = GroupGeometry::new(lam);
            let pts = group_points(lam, 100, 5, &[], 0.0);
            let rep = g.maurer_cartan_residuals(&pts);
            assert!(rep.pass(), "{rep}");
        }
    }

    #[test]
    fn dropped_term_is_large() {
        let g = GroupGeometry::new(-1.0);
        let pts = group_points(-1.0, 20, 9, &[], 0.0);
        let rep = g.maurer_cartan_residuals_dropped_term(&pts);
        assert!(rep.sup("dσ − iσ∧σ⁰").unwrap() >= 0.1);
    }

    #[test]
    fn equivariant_degrees() {
        let g = GroupGeometry::new(-1.0);
        let pts = group_points(-1.0, 12, 13, &[], 0.0);
        // z1 z2 -> 2
        let f = MonomialField {
            lambda: -1.0,
            a: 1,
            b: 1,
            c: 0,
            d: 0,
        };
        assert_eq!(g.equivariant_degree(&f, &pts).unwrap(), 2);
        // z̄1 -> -1
        let f = MonomialField {
            lambda: -1.0,
            a: 0,
            b: 0,
            c: 1,
            d: 0,
        };
        assert_eq!(g.equivariant_degree(&f, &pts).unwrap(), -1);
        // constant -> 0
        let f = MonomialField {
            lambda: -1.0,
            a: 0,
            b: 0,
            c: 0,
            d: 0,
        };
        assert_eq!(g.equivariant_degree(&f, &pts).unwrap(), 0);
    }

    #[test]
    fn equivariant_degree_random_monomials() {
        let g = GroupGeometry::new(1.0);
        let pts = group_points(1.0, 10, 17, &[], 0.0);
        for (a, b, c, d) in [(2, 1, 0, 3), (0, 4, 2, 0), (3, 3, 1, 1), (4, 0, 0, 4)] {
            let f = MonomialField {
                lambda: 1.0,
                a,
                b,
                c,
                d,
            };
            let expect = a as i64 + b as i64 - c as i64 - d as i64;
            assert_eq!(g.equivariant_degree(&f, &pts).unwrap(), expect);
        }
    }

    #[test]
    fn non_equivariant_rejected() {
        struct Bad;
        impl Bad {
            fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
                Cx::real(T::one() + p[2] * p[2])
            }
        }
        scalar_field_impl!(Bad);
        let g = GroupGeometry::new(0.0);
        let pts = group_points(0.0, 10, 19, &[], 0.0);
        assert!(matches!(
            g.equivariant_degree(&Bad, &pts),
            Err(GroupError::NotEquivariant { .. })
        ));
    }

    #[test]
    fn metric_and_volume_values() {
        // λ=1: ds²(X₀,X₀) = −1/4
        let g = GroupGeometry::new(1.0);
        let p = [0.2, -0.1, 0.9];
        let fr = g.frame_at(&p);
        let m = g.metric(&p, &fr.x0, &fr.x0).unwrap();
        assert!((m - Cx::real(-0.25)).abs() < 1e-11);

        // λ=−1: ds²(X₁,X₁) = 1/4 with X₁=(X₊+X₋)/2
        let g = GroupGeometry::new(-1.0);
        let p = [0.4, 0.3, 2.0];
        let fr = g.frame_at(&p);
        let x1: Vec<Cx<f64>> = fr
            .xplus
            .iter()
            .zip(fr.xminus.iter())
            .map(|(a, b)| (*a + *b).scale(0.5))
            .collect();
        let m = g.metric(&p, &x1, &x1).unwrap();
        assert!((m - Cx::real(0.25)).abs() < 1e-11);

        // Vol(X₁, X₀, X₂) = 1/8
        let x2: Vec<Cx<f64>> = fr
            .xplus
            .iter()
            .zip(fr.xminus.iter())
            .map(|(a, b)| (*a - *b) / Cx::new(0.0, 2.0))
            .collect();
        let vol = g.volume(&p, &x1, &fr.x0, &x2);
        assert!((vol - Cx::real(0.125)).abs() < 1e-11);

        // λ=0: metric is degenerate
        let g = GroupGeometry::new(0.0);
        assert!(matches!(
            g.metric(&[0.0, 0.0, 0.0], &basis_tangent(3, 0), &basis_tangent(3, 0)),
            Err(GroupError::DegenerateMetric)
        ));
    }
}
