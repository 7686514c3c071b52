//! The one-parameter family of Lie algebras Lie(H¹_λ) as concrete 2×2
//! matrices, with the complex basis (t₀, t₊, t₋) and coefficient extraction.
//!
//! λ = −1 gives su(2), λ = 0 gives se(2), λ = 1 gives su(1,1). The matrix
//! realisation collapses t₊ to the zero matrix at λ = 0, so coefficient
//! extraction from matrices is lossy there; the abstract coefficient
//! representation used throughout the crate is not.

use crate::scalar::{Cx, Mat2, Real};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    #[error("matrix is outside the span of (t0, t+, t-): residual {0:.3e}")]
    OutOfSpan(f64),
    #[error("algebra elements carry different lambda values: {0} vs {1}")]
    MixedLambda(f64, f64),
}

/// Group-family parameter λ. The named groups are λ = −1 (SU(2)),
/// λ = 0 (SE₂) and λ = 1 (SU(1,1)); the algebra is defined for any real λ.
pub type GroupParameter = f64;

/// The generators t₀, t₁, t₂ of Lie(H¹_λ).
pub fn generators(lambda: GroupParameter) -> (Mat2<f64>, Mat2<f64>, Mat2<f64>) {
    let t0 = Mat2::new(
        Cx::new(0.0, -0.5),
        Cx::zero(),
        Cx::zero(),
        Cx::new(0.0, 0.5),
    );
    let t1 = Mat2::new(
        Cx::zero(),
        Cx::new(0.0, 0.5 * lambda),
        Cx::new(0.0, -0.5),
        Cx::zero(),
    );
    let t2 = Mat2::new(
        Cx::zero(),
        Cx::new(0.5 * lambda, 0.0),
        Cx::new(0.5, 0.0),
        Cx::zero(),
    );
    (t0, t1, t2)
}

/// t₊ = t₁ + i t₂ = [[0, iλ], [0, 0]].
pub fn t_plus(lambda: GroupParameter) -> Mat2<f64> {
    Mat2::new(
        Cx::zero(),
        Cx::new(0.0, lambda),
        Cx::zero(),
        Cx::zero(),
    )
}

/// t₋ = t₁ − i t₂ = [[0, 0], [−i, 0]].
pub fn t_minus(_lambda: GroupParameter) -> Mat2<f64> {
    Mat2::new(Cx::zero(), Cx::zero(), Cx::new(0.0, -1.0), Cx::zero())
}

/// Inverse metric g^{ab} = diag(−λ, 1, 1) on the algebra, used to raise and
/// lower group indices. Degenerate in the λ = 0 case.
pub struct InverseMetric {
    pub diag: [f64; 3],
    pub is_degenerate: bool,
}

pub fn inverse_metric(lambda: GroupParameter) -> InverseMetric {
    InverseMetric {
        diag: [-lambda, 1.0, 1.0],
        is_degenerate: lambda == 0.0,
    }
}

/// Element of the complexified Lie(H¹_λ) in the basis (t₀, t₊, t₋).
///
/// An element is *real* (exponentiates into the real group) iff c0 is real
/// and cplus = conj(cminus).
#[derive(Clone, Copy, Debug)]
pub struct AlgebraElement<T: Real = f64> {
    pub lambda: GroupParameter,
    pub c0: Cx<T>,
    pub cplus: Cx<T>,
    pub cminus: Cx<T>,
}

impl<T: Real> AlgebraElement<T> {
    pub fn new(lambda: f64, c0: Cx<T>, cplus: Cx<T>, cminus: Cx<T>) -> Self {
        AlgebraElement {
            lambda,
            c0,
            cplus,
            cminus,
        }
    }

    pub fn zero(lambda: f64) -> Self {
        AlgebraElement::new(lambda, Cx::zero(), Cx::zero(), Cx::zero())
    }

    pub fn add(self, o: Self) -> Self {
        AlgebraElement::new(
            self.lambda,
            self.c0 + o.c0,
            self.cplus + o.cplus,
            self.cminus + o.cminus,
        )
    }

    pub fn sub(self, o: Self) -> Self {
        AlgebraElement::new(
            self.lambda,
            self.c0 - o.c0,
            self.cplus - o.cplus,
            self.cminus - o.cminus,
        )
    }

    pub fn scale(self, s: Cx<T>) -> Self {
        AlgebraElement::new(self.lambda, self.c0 * s, self.cplus * s, self.cminus * s)
    }

    /// Matrix image c0·t₀ + cplus·t₊ + cminus·t₋.
    pub fn to_matrix(self) -> Mat2<T> {
        let lam = Cx::from_f64(self.lambda, 0.0);
        let i = Cx::<T>::i();
        let half = Cx::from_f64(0.5, 0.0);
        Mat2::new(
            -(i * half * self.c0),
            i * lam * self.cplus,
            -(i * self.cminus),
            i * half * self.c0,
        )
    }

    /// Largest coefficient modulus of the value part.
    pub fn sup_abs(self) -> f64 {
        self.c0
            .val()
            .abs()
            .max(self.cplus.val().abs())
            .max(self.cminus.val().abs())
    }

    /// Deviation from the reality predicate: c0 real, cplus = conj(cminus).
    pub fn reality_residual(self) -> f64 {
        let c0_im = self.c0.val().im.abs();
        let diff = self.cplus.val() - self.cminus.val().conj();
        c0_im.max(diff.abs())
    }
}

impl AlgebraElement<f64> {
    /// Bracket via the structure constants: [t₀,t±] = ∓ i t±,
    /// [t₊,t₋] = 2iλ t₀. Mixed-λ inputs are rejected.
    pub fn bracket(self, o: Self) -> Result<Self, LieError> {
        if self.lambda != o.lambda {
            return Err(LieError::MixedLambda(self.lambda, o.lambda));
        }
        Ok(bracket_coeffs(self, o))
    }
}

/// Coefficient-level bracket, generic over the scalar.
pub fn bracket_coeffs<T: Real>(a: AlgebraElement<T>, b: AlgebraElement<T>) -> AlgebraElement<T> {
    let i = Cx::<T>::i();
    let two_lam = Cx::from_f64(2.0 * a.lambda, 0.0);
    AlgebraElement::new(
        a.lambda,
        i * two_lam * (a.cplus * b.cminus - a.cminus * b.cplus),
        -(i * (a.c0 * b.cplus - a.cplus * b.c0)),
        i * (a.c0 * b.cminus - a.cminus * b.c0),
    )
}

/// Recover coefficients on (t₀, t₊, t₋) from a matrix, generic over the
/// scalar. At λ = 0 the t₊ slot is not observable (its matrix is zero) and
/// the returned cplus is zero.
pub fn coeffs_from_matrix<T: Real>(m: Mat2<T>, lambda: f64) -> AlgebraElement<T> {
    let i = Cx::<T>::i();
    let two = Cx::from_f64(2.0, 0.0);
    let c0 = i * two * m.a;
    let cminus = i * m.c;
    let cplus = if lambda != 0.0 {
        m.b / Cx::from_f64(0.0, lambda)
    } else {
        Cx::zero()
    };
    AlgebraElement::new(lambda, c0, cplus, cminus)
}

/// fromMatrix with the span check: the round-trip residual must stay below
/// 1e−10, otherwise the matrix is outside span{t₀, t₊, t₋}.
pub fn from_matrix(m: Mat2<f64>, lambda: f64) -> Result<AlgebraElement<f64>, LieError> {
    let elt = coeffs_from_matrix(m, lambda);
    let back = elt.to_matrix();
    let residual = back.sub(m).sup_abs();
    if residual > 1e-10 {
        return Err(LieError::OutOfSpan(residual));
    }
    Ok(elt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(lambda: f64, c0: Cx<f64>, cp: Cx<f64>, cm: Cx<f64>) -> AlgebraElement<f64> {
        AlgebraElement::new(lambda, c0, cp, cm)
    }

    fn mat_close(a: Mat2<f64>, b: Mat2<f64>, tol: f64) -> bool {
        a.sub(b).sup_abs() < tol
    }

    #[test]
    fn generator_matrices() {
        for lam in [-1.0, 0.0, 1.0] {
            let (t0, t1, _t2) = generators(lam);
            // t0 = -(i/2) diag(1,-1), independent of lambda
            assert_eq!(t0.a, Cx::new(0.0, -0.5));
            assert_eq!(t0.d, Cx::new(0.0, 0.5));
            // lambda = 0: t1 has zero upper-right entry, lower-left -i/2
            if lam == 0.0 {
                assert_eq!(t1.b, Cx::zero());
                assert_eq!(t1.c, Cx::new(0.0, -0.5));
            }
        }
    }

    #[test]
    fn bracket_table_matches_structure_constants() {
        // C01^2 = 1, C02^1 = -1, C12^0 = -lambda, matrix commutators
        for lam in [-1.0, 0.0, 1.0] {
            let (t0, t1, t2) = generators(lam);
            assert!(mat_close(t0.commutator(t1), t2, 1e-15));
            assert!(mat_close(t0.commutator(t2), t1.scale(Cx::real(-1.0)), 1e-15));
            assert!(mat_close(t1.commutator(t2), t0.scale(Cx::real(-lam)), 1e-15));
        }
    }

    #[test]
    fn su2_case_t1_t2_bracket() {
        // lambda = -1: [t1, t2] = +t0
        let (t0, t1, t2) = generators(-1.0);
        assert!(mat_close(t1.commutator(t2), t0, 1e-15));
    }

    #[test]
    fn complex_basis_brackets() {
        for lam in [-1.0, 0.3, 1.0] {
            let t0 = alg(lam, Cx::one(), Cx::zero(), Cx::zero());
            let tp = alg(lam, Cx::zero(), Cx::one(), Cx::zero());
            let tm = alg(lam, Cx::zero(), Cx::zero(), Cx::one());
            // [t0, t+] = -i t+
            let b = t0.bracket(tp).unwrap();
            assert!((b.cplus - -Cx::i()).abs() < 1e-15 && b.c0.abs() < 1e-15);
            // [t0, t-] = +i t-
            let b = t0.bracket(tm).unwrap();
            assert!((b.cminus - Cx::i()).abs() < 1e-15);
            // [t+, t-] = 2 i lambda t0
            let b = tp.bracket(tm).unwrap();
            assert!((b.c0 - Cx::new(0.0, 2.0 * lam)).abs() < 1e-15);
            // [t0, t0] = 0
            let b = t0.bracket(t0).unwrap();
            assert!(b.sup_abs() < 1e-15);
        }
    }

    #[test]
    fn bracket_t0_t1_gives_t2() {
        // t1 = (t+ + t-)/2, t2 = (t+ - t-)/(2i)
        let lam = -1.0;
        let t0 = alg(lam, Cx::one(), Cx::zero(), Cx::zero());
        let t1 = alg(lam, Cx::zero(), Cx::real(0.5), Cx::real(0.5));
        let b = t0.bracket(t1).unwrap();
        // expect t2: cplus = 1/(2i) = -i/2, cminus = +i/2
        assert!((b.cplus - Cx::new(0.0, -0.5)).abs() < 1e-15);
        assert!((b.cminus - Cx::new(0.0, 0.5)).abs() < 1e-15);
    }

    #[test]
    fn mixed_lambda_rejected() {
        let a = alg(1.0, Cx::one(), Cx::zero(), Cx::zero());
        let b = alg(-1.0, Cx::one(), Cx::zero(), Cx::zero());
        assert!(matches!(a.bracket(b), Err(LieError::MixedLambda(_, _))));
    }

    #[test]
    fn from_matrix_examples() {
        // m = t2 matrix: coefficients (0, -i/2, i/2)
        let (_, _, t2) = generators(1.0);
        let e = from_matrix(t2, 1.0).unwrap();
        assert!(e.c0.abs() < 1e-15);
        assert!((e.cplus - Cx::new(0.0, -0.5)).abs() < 1e-15);
        assert!((e.cminus - Cx::new(0.0, 0.5)).abs() < 1e-15);

        // m = t0 -> (1, 0, 0)
        let (t0, _, _) = generators(1.0);
        let e = from_matrix(t0, 1.0).unwrap();
        assert!((e.c0 - Cx::one()).abs() < 1e-15);
        assert!(e.cplus.abs() < 1e-15 && e.cminus.abs() < 1e-15);

        // identity is not trace-free: OutOfSpan
        assert!(matches!(
            from_matrix(Mat2::identity(), 1.0),
            Err(LieError::OutOfSpan(_))
        ));
    }

    #[test]
    fn jacobi_identity_on_basis() {
        for lam in [-1.0, 0.0, 1.0, 0.7] {
            let basis = [
                alg(lam, Cx::one(), Cx::zero(), Cx::zero()),
                alg(lam, Cx::zero(), Cx::one(), Cx::zero()),
                alg(lam, Cx::zero(), Cx::zero(), Cx::one()),
            ];
            for a in basis {
                for b in basis {
                    for c in basis {
                        let s = a
                            .bracket(b.bracket(c).unwrap())
                            .unwrap()
                            .add(b.bracket(c.bracket(a).unwrap()).unwrap())
                            .add(c.bracket(a.bracket(b).unwrap()).unwrap());
                        assert!(s.sup_abs() <= 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_agrees_with_matrix_commutator() {
        for lam in [-1.0, 1.0, 0.42] {
            let a = alg(lam, Cx::new(0.3, -0.2), Cx::new(1.1, 0.4), Cx::new(-0.6, 0.9));
            let b = alg(lam, Cx::new(-0.8, 0.1), Cx::new(0.2, -1.3), Cx::new(0.5, 0.7));
            let via_alg = a.bracket(b).unwrap().to_matrix();
            let via_mat = a.to_matrix().commutator(b.to_matrix());
            assert!(mat_close(via_alg, via_mat, 1e-13));
        }
    }

    #[test]
    fn degenerate_inverse_metric_flagged() {
        assert!(inverse_metric(0.0).is_degenerate);
        assert_eq!(inverse_metric(0.0).diag, [0.0, 1.0, 1.0]);
        assert!(!inverse_metric(1.0).is_degenerate);
        assert_eq!(inverse_metric(-1.0).diag, [1.0, 1.0, 1.0]);
    }
}
