//! Adaptive quadrature: 2D integration of two-forms over parameter
//! rectangles, 1D integration of one-forms along parameterised curves, and a
//! fourth-order path-ordered exponential for holonomy verification.
//!
//! The 2D engine compares tensor Gauss–Legendre rules of order 8 and 16 on
//! each panel and splits the panel with the largest error estimate, with a
//! fixed refinement budget. Subdivision order is deterministic, so results
//! are reproducible bit-for-bit for a given integrand.

use crate::forms::{pushforward, ChartMap, TwoForm};
use crate::liealg::AlgebraElement;
use crate::scalar::{Cx, Mat2};
use std::collections::BinaryHeap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: error estimate {err:.3e} after {panels} panels")]
    NonConvergence { err: f64, panels: usize },
}

/// 8-point Gauss–Legendre nodes/weights on [-1, 1].
const GL8_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_W: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// 16-point Gauss–Legendre nodes/weights on [-1, 1].
const GL16_X: [f64; 16] = [
    -0.989_400_934_991_649_9,
    -0.944_575_023_073_232_6,
    -0.865_631_202_387_831_7,
    -0.755_404_408_355_003,
    -0.617_876_244_402_643_7,
    -0.458_016_777_657_227_4,
    -0.281_603_550_779_258_9,
    -0.095_012_509_837_637_44,
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_W: [f64; 16] = [
    0.027_152_459_411_754_096,
    0.062_253_523_938_647_894,
    0.095_158_511_682_492_79,
    0.124_628_971_255_533_88,
    0.149_595_988_816_576_73,
    0.169_156_519_395_002_54,
    0.182_603_415_044_923_59,
    0.189_450_610_455_068_5,
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_59,
    0.169_156_519_395_002_54,
    0.149_595_988_816_576_73,
    0.124_628_971_255_533_88,
    0.095_158_511_682_492_79,
    0.062_253_523_938_647_894,
    0.027_152_459_411_754_096,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    value: Cx<f64>,
    err: f64,
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error, deterministic tie-break on insertion order
        self.err
            .total_cmp(&other.err)
            .then(other.seq.cmp(&self.seq))
    }
}

/// Options for the adaptive 2D integrator.
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-6,
            abs_tol: 1e-12,
            max_panels: 20_000,
        }
    }
}

/// Integral value with its error estimate.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Cx<f64>,
    pub error: f64,
    pub panels: usize,
}

fn panel_estimate(f: &dyn Fn(f64, f64) -> Cx<f64>, x0: f64, x1: f64, y0: f64, y1: f64) -> (Cx<f64>, f64) {
    let jac = 0.25 * (x1 - x0) * (y1 - y0);
    let mut lo = Cx::<f64>::zero();
    for (xi, wx) in GL8_X.iter().zip(GL8_W.iter()) {
        let x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * xi;
        for (yi, wy) in GL8_X.iter().zip(GL8_W.iter()) {
            let y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * yi;
            lo = lo + f(x, y).scale(wx * wy);
        }
    }
    let mut hi = Cx::<f64>::zero();
    for (xi, wx) in GL16_X.iter().zip(GL16_W.iter()) {
        let x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * xi;
        for (yi, wy) in GL16_X.iter().zip(GL16_W.iter()) {
            let y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * yi;
            hi = hi + f(x, y).scale(wx * wy);
        }
    }
    let value = hi.scale(jac);
    let err = (hi - lo).scale(jac).abs();
    (value, err)
}

/// Adaptive 2D quadrature of a complex-valued function over a rectangle.
pub fn integrate_rect(
    f: &dyn Fn(f64, f64) -> Cx<f64>,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    opts: QuadOptions,
) -> Result<QuadResult, QuadError> {
    let mut heap = BinaryHeap::new();
    let mut seq = 0usize;
    let (value, err) = panel_estimate(f, x0, x1, y0, y1);
    heap.push(Panel {
        x0,
        x1,
        y0,
        y1,
        value,
        err,
        seq,
    });
    let mut total = value;
    let mut total_err = err;
    while total_err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if heap.len() >= opts.max_panels {
            return Err(QuadError::NonConvergence {
                err: total_err,
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        total = total - worst.value;
        total_err -= worst.err;
        let xm = 0.5 * (worst.x0 + worst.x1);
        let ym = 0.5 * (worst.y0 + worst.y1);
        for (a, b, c, d) in [
            (worst.x0, xm, worst.y0, ym),
            (xm, worst.x1, worst.y0, ym),
            (worst.x0, xm, ym, worst.y1),
            (xm, worst.x1, ym, worst.y1),
        ] {
            seq += 1;
            let (v, e) = panel_estimate(f, a, b, c, d);
            total = total + v;
            total_err += e;
            heap.push(Panel {
                x0: a,
                x1: b,
                y0: c,
                y1: d,
                value: v,
                err: e,
                seq,
            });
        }
    }
    Ok(QuadResult {
        value: total,
        error: total_err,
        panels: heap.len(),
    })
}

/// Integration domain: a parameter rectangle mapped into a chart, with
/// optional punctures (ε-disks around singular chart points, where the
/// integrand is treated as zero).
pub struct Domain2 {
    pub chart: Arc<dyn ChartMap>,
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
    pub punctures: Vec<(f64, f64)>,
    pub epsilon: f64,
}

/// ∫ ω over the domain: the two-form is evaluated on the pushed-forward
/// parameter tangents, which supplies the Jacobian.
pub fn integrate_two_form(
    omega: &Arc<dyn TwoForm>,
    domain: &Domain2,
    opts: QuadOptions,
) -> Result<QuadResult, QuadError> {
    let chart = domain.chart.clone();
    let omega = omega.clone();
    let punctures = domain.punctures.clone();
    let eps = domain.epsilon;
    let f = move |u: f64, v: f64| -> Cx<f64> {
        let du = [Cx::one(), Cx::zero()];
        let dv = [Cx::zero(), Cx::one()];
        let (q, tu) = pushforward(&*chart, &[u, v], &du);
        let (_, tv) = pushforward(&*chart, &[u, v], &dv);
        if punctures
            .iter()
            .any(|&(px, py)| ((q[0] - px).powi(2) + (q[1] - py).powi(2)).sqrt() < eps)
        {
            return Cx::zero();
        }
        omega.t0(&q, &tu, &tv)
    };
    integrate_rect(&f, domain.u0, domain.u1, domain.v0, domain.v1, opts)
}

/// Adaptive 1D Gauss quadrature of a complex function on [a, b].
pub fn integrate_1d(
    f: &dyn Fn(f64) -> Cx<f64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Cx<f64> {
    fn gl(f: &dyn Fn(f64) -> Cx<f64>, a: f64, b: f64, x: &[f64], w: &[f64]) -> Cx<f64> {
        let mut acc = Cx::<f64>::zero();
        for (xi, wi) in x.iter().zip(w.iter()) {
            let t = 0.5 * (a + b) + 0.5 * (b - a) * xi;
            acc = acc + f(t).scale(*wi);
        }
        acc.scale(0.5 * (b - a))
    }
    fn rec(f: &dyn Fn(f64) -> Cx<f64>, a: f64, b: f64, tol: f64, depth: usize) -> Cx<f64> {
        let lo = gl(f, a, b, &GL8_X, &GL8_W);
        let hi = gl(f, a, b, &GL16_X, &GL16_W);
        if (hi - lo).abs() < tol || depth >= 24 {
            hi
        } else {
            let m = 0.5 * (a + b);
            rec(f, a, m, tol / 2.0, depth + 1) + rec(f, m, b, tol / 2.0, depth + 1)
        }
    }
    rec(f, a, b, tol, 0)
}

/// Componentwise line integral of an algebra-valued one-form along a
/// parameterised curve, via the curve's exact tangent.
pub fn integrate_alg_along_path(
    omega: &crate::forms::AlgOneForm,
    path: &Arc<dyn ChartMap>,
    t0: f64,
    t1: f64,
    tol: f64,
) -> AlgebraElement<f64> {
    let lambda = omega.lambda;
    let comp = |pick: &dyn Fn(AlgebraElement<f64>) -> Cx<f64>| -> Cx<f64> {
        let f = |t: f64| -> Cx<f64> {
            let (q, w) = pushforward(&**path, &[t], &[Cx::one()]);
            pick(omega.eval(&q, &w))
        };
        integrate_1d(&f, t0, t1, tol)
    };
    AlgebraElement::new(
        lambda,
        comp(&|e| e.c0),
        comp(&|e| e.cplus),
        comp(&|e| e.cminus),
    )
}

/// Scalar line integral of a one-form along a parameterised curve.
pub fn integrate_one_form_along_path(
    omega: &Arc<dyn crate::forms::OneForm>,
    path: &Arc<dyn ChartMap>,
    t0: f64,
    t1: f64,
    tol: f64,
) -> Cx<f64> {
    let f = |t: f64| -> Cx<f64> {
        let (q, w) = pushforward(&**path, &[t], &[Cx::one()]);
        omega.w0(&q, &w)
    };
    integrate_1d(&f, t0, t1, tol)
}

/// Path-ordered exponential of a matrix-valued one-form along a curve,
/// solving dU/dt = U·ω(γ'(t)) with a fourth-order two-node Magnus stepper.
pub fn path_ordered_exp(
    omega: &dyn Fn(&[f64], &[Cx<f64>]) -> Mat2<f64>,
    path: &Arc<dyn ChartMap>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Mat2<f64> {
    let h = (t1 - t0) / steps as f64;
    let c = 0.5 * (3.0f64).sqrt() / 3.0; // Gauss node offset sqrt(3)/6 * 2
    let mut u = Mat2::<f64>::identity();
    for k in 0..steps {
        let ta = t0 + h * (k as f64 + 0.5 - c);
        let tb = t0 + h * (k as f64 + 0.5 + c);
        let eval = |t: f64| -> Mat2<f64> {
            let (q, w) = pushforward(&**path, &[t], &[Cx::one()]);
            omega(&q, &w)
        };
        let a1 = eval(ta);
        let a2 = eval(tb);
        let s3 = (3.0f64).sqrt();
        // fourth-order Magnus for the right-multiplication convention
        // dU = U·ω: Ω = h/2 (A1 + A2) + h²√3/12 [A1, A2]
        let omega_step = a1
            .add(a2)
            .scale(Cx::real(0.5 * h))
            .add(a1.commutator(a2).scale(Cx::real(h * h * s3 / 12.0)));
        u = u.mul(omega_step.exp());
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{chart_map_impl, Ad, CoordForm, Wedge};
    use crate::scalar::Real;

    struct IdentityChart;
    impl IdentityChart {
        fn dim(&self) -> usize {
            2
        }
        fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
            p.to_vec()
        }
    }
    chart_map_impl!(IdentityChart);

    struct PolarChart;
    impl PolarChart {
        fn dim(&self) -> usize {
            2
        }
        fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
            vec![p[0] * p[1].cos(), p[0] * p[1].sin()]
        }
    }
    chart_map_impl!(PolarChart);

    #[test]
    fn unit_square_dx_dy() {
        let dx: crate::forms::SOneForm = Arc::new(CoordForm {
            index: 0,
            coeff: Cx::one(),
        });
        let dy: crate::forms::SOneForm = Arc::new(CoordForm {
            index: 1,
            coeff: Cx::one(),
        });
        let omega: Arc<dyn TwoForm> = Arc::new(Wedge(dx, dy));
        let dom = Domain2 {
            chart: Arc::new(IdentityChart),
            u0: 0.0,
            u1: 1.0,
            v0: 0.0,
            v1: 1.0,
            punctures: vec![],
            epsilon: 0.0,
        };
        let r = integrate_two_form(&omega, &dom, QuadOptions::default()).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn radial_bump_integral() {
        // ∫ 4r/(1+r²)² dr dθ over r ∈ [0,1], θ ∈ [0,2π] = 2π
        let f = |r: f64, _th: f64| Cx::real(4.0 * r / (1.0 + r * r).powi(2));
        let r = integrate_rect(&f, 0.0, 1.0, 0.0, 2.0 * std::f64::consts::PI, QuadOptions::default())
            .unwrap();
        assert!((r.value.re - 2.0 * std::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn sphere_area_via_conformal_factor() {
        // Ω₀ dx∧dy for K=1 over the compactified plane: substitute
        // r = tan(s/2): area of the unit round sphere = 4π.
        let f = |s: f64, _th: f64| {
            let r = (s / 2.0).tan();
            let dr_ds = 0.5 / (s / 2.0).cos().powi(2);
            let omega = 4.0 / (1.0 + r * r).powi(2);
            Cx::real(omega * r * dr_ds)
        };
        let r = integrate_rect(
            &f,
            0.0,
            std::f64::consts::PI,
            0.0,
            2.0 * std::f64::consts::PI,
            QuadOptions::default(),
        )
        .unwrap();
        assert!((r.value.re - 4.0 * std::f64::consts::PI).abs() / (4.0 * std::f64::consts::PI) < 1e-8);
    }

    #[test]
    fn quadrature_convergence_tightening() {
        // halving the tolerance keeps results within the reported error
        let exact = 2.0 * std::f64::consts::PI;
        let f = |r: f64, _th: f64| Cx::real(4.0 * r / (1.0 + r * r).powi(2));
        for tol in [1e-4, 1e-6, 1e-8] {
            let opts = QuadOptions {
                rel_tol: tol,
                ..Default::default()
            };
            let r = integrate_rect(&f, 0.0, 1.0, 0.0, 2.0 * std::f64::consts::PI, opts).unwrap();
            assert!((r.value.re - exact).abs() <= r.error.max(tol * exact));
        }
    }

    #[test]
    fn line_integral_exact_form_closed_loop() {
        // circle of radius 2: ∮ d(x²+y) = 0
        struct Circle;
        impl Circle {
            fn dim(&self) -> usize {
                2
            }
            fn ev<T: Ad>(&self, p: &[T]) -> Vec<T> {
                let two = T::from_f64(2.0);
                vec![two * p[0].cos(), two * p[0].sin()]
            }
        }
        chart_map_impl!(Circle);
        struct F;
        impl F {
            fn ev<T: Ad>(&self, p: &[T]) -> Cx<T> {
                Cx::real(p[0] * p[0] + p[1])
            }
        }
        crate::forms::scalar_field_impl!(F);
        let omega: Arc<dyn crate::forms::OneForm> =
            Arc::new(crate::forms::DScalar(Arc::new(F)));
        let path: Arc<dyn ChartMap> = Arc::new(Circle);
        let val = integrate_one_form_along_path(&omega, &path, 0.0, 2.0 * std::f64::consts::PI, 1e-10);
        assert!(val.abs() < 1e-9);
    }
}
