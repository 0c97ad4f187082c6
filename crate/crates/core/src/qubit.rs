//! Group structure on the sphere of qubits.
//!
//! A qubit `x = (x₀, x₁)` is identified with the SU(2) matrix
//!
//! ```text
//! Ψ₁(x) = [ x₀  −x̄₁ ]
//!         [ x₁   x̄₀ ]
//! ```
//!
//! and the matrix product is pulled back to the product `⋆` on qubits.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{c, det2, CMat2, CVec2, C64};
use crate::sampling::{random_qubit, seeded_rng};

/// Norm deviation tolerated by the strict constructors.
pub const QUBIT_NORM_TOL: f64 = 1e-12;
/// Inputs at or below this norm are treated as the zero vector.
pub const ZERO_NORM: f64 = 1e-12;
pub const SU2_TOL: f64 = 1e-10;
pub const UNITARY_TOL: f64 = 1e-10;
pub const ORDER_MAX_N: u64 = 1_000_000;
pub const ORDER_TOL: f64 = 1e-9;

/// A unit vector in ℂ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qubit(CVec2);

impl Qubit {
    /// Strict constructor: rejects vectors whose norm is off by more than 1e-12.
    pub fn new(x0: C64, x1: C64) -> Result<Self> {
        Self::from_vec(CVec2::from_components(x0, x1))
    }

    pub fn from_vec(v: CVec2) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = v.norm();
        if (n - 1.0).abs() > QUBIT_NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self(v))
    }

    /// Normalizing constructor: divides by the norm, rejecting only the zero vector.
    pub fn normalized(x0: C64, x1: C64) -> Result<Self> {
        let v = CVec2::from_components(x0, x1);
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = v.norm();
        if n <= ZERO_NORM {
            return Err(Error::ZeroVector);
        }
        Ok(Self(v.scale(c(1.0 / n, 0.0))))
    }

    /// Wraps a vector already known to be unit, renormalizing away rounding drift.
    pub(crate) fn from_unit(v: CVec2) -> Self {
        let n = v.norm();
        Self(v.scale(c(1.0 / n, 0.0)))
    }

    /// The group identity `(1, 0)`.
    pub fn identity() -> Self {
        Self(CVec2::from_components(c(1.0, 0.0), c(0.0, 0.0)))
    }

    pub fn vec(&self) -> &CVec2 {
        &self.0
    }

    pub fn x0(&self) -> C64 {
        self.0[0]
    }

    pub fn x1(&self) -> C64 {
        self.0[1]
    }

    pub fn distance(&self, other: &Qubit) -> f64 {
        self.0.distance(&other.0)
    }

    /// `self ⋆ other = (a₀b₀ − ā₁b₁, a₁b₀ + ā₀b₁)`, renormalized.
    pub fn star(&self, other: &Qubit) -> Qubit {
        let (a0, a1) = (self.x0(), self.x1());
        let (b0, b1) = (other.x0(), other.x1());
        Self::from_unit(CVec2::from_components(
            a0 * b0 - a1.conj() * b1,
            a1 * b0 + a0.conj() * b1,
        ))
    }

    /// Inverse under `⋆`: the first column of `Ψ₁(x)ᴴ`, i.e. `(x̄₀, −x₁)`.
    pub fn star_inverse(&self) -> Qubit {
        Self(CVec2::from_components(self.x0().conj(), -self.x1()))
    }

    /// `x^{⋆n}` by iterated `⋆`, renormalizing after every step.
    pub fn star_pow(&self, n: i64) -> Qubit {
        let base = if n < 0 { self.star_inverse() } else { *self };
        let mut acc = Qubit::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.star(&base);
        }
        acc
    }

    /// Smallest `n ≤ max_n` with `‖x^{⋆n} − (1,0)‖ < tol`.
    pub fn order(&self, max_n: u64, tol: f64) -> Option<u64> {
        let id = Qubit::identity();
        let mut p = *self;
        for n in 1..=max_n {
            if p.distance(&id) < tol {
                return Some(n);
            }
            p = p.star(self);
        }
        None
    }

    /// `(x^{⋆1}, …, x^{⋆count})`.
    pub fn orbit(&self, count: usize) -> Vec<Qubit> {
        let mut out = Vec::with_capacity(count);
        let mut p = *self;
        for _ in 0..count {
            out.push(p);
            p = p.star(self);
        }
        out
    }

    /// Applies a gate to the qubit.
    pub fn apply(&self, gate: &Gate2) -> Qubit {
        Self::from_unit(gate.matrix().matvec(&self.0))
    }
}

/// A matrix in SU(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Matrix(CMat2);

impl SU2Matrix {
    pub fn try_new(m: CMat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let unitarity = m.unitarity_defect();
        let det = (det2(&m) - c(1.0, 0.0)).norm();
        if !(unitarity <= SU2_TOL && det <= SU2_TOL) {
            return Err(Error::NotSpecialUnitary { unitarity, det });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &CMat2 {
        &self.0
    }
}

impl std::ops::Mul for SU2Matrix {
    type Output = SU2Matrix;
    fn mul(self, rhs: SU2Matrix) -> SU2Matrix {
        SU2Matrix(self.0 * rhs.0)
    }
}

/// A single-qubit quantum gate (any unitary, determinant unconstrained).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2(CMat2);

impl Gate2 {
    pub fn try_new(m: CMat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let d = m.unitarity_defect();
        if !(d <= UNITARY_TOL) {
            return Err(Error::NotUnitary(d));
        }
        Ok(Self(m))
    }

    pub(crate) fn from_unitary(m: CMat2) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &CMat2 {
        &self.0
    }

    pub fn det(&self) -> C64 {
        det2(&self.0)
    }
}

/// `Ψ₁(x)`: columns `(x₀, x₁)` and `(−x̄₁, x̄₀)`.
pub fn embed_psi1(x: &Qubit) -> SU2Matrix {
    let (x0, x1) = (x.x0(), x.x1());
    SU2Matrix(crate::linalg::CMat([[x0, -x1.conj()], [x1, x0.conj()]]))
}

/// Inverse of [`embed_psi1`]: the first column.
pub fn invert_psi1(m: &SU2Matrix) -> Qubit {
    Qubit::from_unit(m.0.column(0))
}

/// Outcome of sampling `‖Ψ₁(Ux) − U·Ψ₁(x)‖_F` over random qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutationCheck {
    pub commutes: bool,
    pub max_deviation: f64,
    pub worst_input: Qubit,
}

/// Deviation `‖Ψ₁(Ux) − U·Ψ₁(x)‖_F` at a single qubit.
pub fn commutation_deviation(gate: &Gate2, x: &Qubit) -> f64 {
    let lhs = *embed_psi1(&x.apply(gate)).matrix();
    let rhs = *gate.matrix() * *embed_psi1(x).matrix();
    (lhs - rhs).frobenius_norm()
}

/// Samples qubits and reports whether the gate commutes with `Ψ₁`.
pub fn gate_commutes_with_embedding(
    gate: &Gate2,
    samples: usize,
    tol: f64,
    seed: u64,
) -> CommutationCheck {
    let mut rng = seeded_rng(seed);
    gate_commutes_with_rng(gate, samples, tol, &mut rng)
}

pub fn gate_commutes_with_rng<R: Rng + ?Sized>(
    gate: &Gate2,
    samples: usize,
    tol: f64,
    rng: &mut R,
) -> CommutationCheck {
    let mut worst = (0.0, Qubit::identity());
    for _ in 0..samples.max(1) {
        let x = random_qubit(rng);
        let d = commutation_deviation(gate, &x);
        if d > worst.0 {
            worst = (d, x);
        }
    }
    CommutationCheck {
        commutes: worst.0 < tol,
        max_deviation: worst.0,
        worst_input: worst.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cr;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn q(x0: C64, x1: C64) -> Qubit {
        Qubit::new(x0, x1).unwrap()
    }

    #[test]
    fn strict_and_normalizing_constructors() {
        assert!(matches!(
            Qubit::new(cr(1.0), cr(1.0)),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            Qubit::normalized(cr(0.0), cr(0.0)),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            Qubit::new(c(f64::NAN, 0.0), cr(0.0)),
            Err(Error::NonFinite)
        ));
        let x = Qubit::normalized(cr(3.0), c(0.0, 4.0)).unwrap();
        assert!((x.x0() - cr(0.6)).norm() < 1e-15);
        assert!((x.x1() - c(0.0, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn psi1_examples() {
        assert_eq!(*embed_psi1(&Qubit::identity()).matrix(), CMat2::identity());
        let m = embed_psi1(&q(cr(0.0), cr(1.0)));
        assert_eq!(*m.matrix(), crate::linalg::CMat([[cr(0.0), cr(-1.0)], [cr(1.0), cr(0.0)]]));
        let s = FRAC_1_SQRT_2;
        let m = embed_psi1(&q(cr(s), cr(s)));
        assert_eq!(*m.matrix(), crate::linalg::CMat([[cr(s), cr(-s)], [cr(s), cr(s)]]));
    }

    #[test]
    fn invert_psi1_examples() {
        let id = SU2Matrix::try_new(CMat2::identity()).unwrap();
        assert_eq!(invert_psi1(&id), Qubit::identity());
        let m = SU2Matrix::try_new(crate::linalg::CMat([[cr(0.0), cr(-1.0)], [cr(1.0), cr(0.0)]])).unwrap();
        assert_eq!(invert_psi1(&m), q(cr(0.0), cr(1.0)));
    }

    #[test]
    fn su2_rejects_bad_matrices() {
        let flip = crate::linalg::CMat([[cr(0.0), cr(1.0)], [cr(1.0), cr(0.0)]]);
        assert!(matches!(
            SU2Matrix::try_new(flip),
            Err(Error::NotSpecialUnitary { .. })
        ));
        assert!(SU2Matrix::try_new(CMat2::identity().scale(cr(2.0))).is_err());
        assert!(matches!(
            Gate2::try_new(CMat2::identity().scale(cr(1.5))),
            Err(Error::NotUnitary(_))
        ));
        assert!(Gate2::try_new(flip).is_ok());
    }

    #[test]
    fn star_identity_inverse_and_square() {
        let b = q(c(0.6, 0.0), c(0.0, 0.8));
        assert!(Qubit::identity().star(&b).distance(&b) < 1e-15);
        assert!(b.star(&b.star_inverse()).distance(&Qubit::identity()) < 1e-15);

        let x = Qubit::normalized(c(0.3, -0.4), c(0.5, 0.7)).unwrap();
        let (x0, x1) = (x.x0(), x.x1());
        let want = CVec2::from_components(x0 * x0 - x1 * x1.conj(), x1 * (2.0 * x0.re));
        assert!(x.star(&x).vec().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn star_inverse_examples() {
        assert_eq!(Qubit::identity().star_inverse(), Qubit::identity());
        let inv = q(cr(0.0), cr(1.0)).star_inverse();
        assert!(inv.distance(&q(cr(0.0), cr(-1.0))) < 1e-16);
    }

    #[test]
    fn star_power_closed_forms() {
        let x = Qubit::normalized(c(0.2, 0.5), c(-0.6, 0.3)).unwrap();
        let (x0, x1) = (x.x0(), x.x1());
        let re = x0.re;
        let cube = CVec2::from_components(
            x0.powi(3) - x1 * (2.0 * re + x0) * x1.conj(),
            x1 * (x0.conj().powi(2) + x0 * (2.0 * re) - x1 * x1.conj()),
        );
        assert!(x.star_pow(3).vec().max_abs_diff(&cube) < 1e-14);

        let sq = x0 * x0 - x1 * x1.conj();
        let fourth = CVec2::from_components(
            sq * sq - x1 * (4.0 * re * re) * x1.conj(),
            x1 * (x0.powi(3)
                + x0 * x0.norm_sqr()
                + (2.0 * re) * (x0.conj().powi(2) - 2.0 * x1 * x1.conj())),
        );
        assert!(x.star_pow(4).vec().max_abs_diff(&fourth) < 1e-14);

        assert_eq!(x.star_pow(0), Qubit::identity());
        assert!(x.star_pow(-3).star(&x.star_pow(3)).distance(&Qubit::identity()) < 1e-14);

        let s = FRAC_1_SQRT_2;
        let h = q(cr(s), cr(s));
        assert!(h.star_pow(4).distance(&q(cr(-1.0), cr(0.0))) < 1e-14);
    }

    #[test]
    fn order_table() {
        let o = |x: Qubit| x.order(ORDER_MAX_N, ORDER_TOL);
        assert_eq!(o(Qubit::identity()), Some(1));
        assert_eq!(o(q(cr(-1.0), cr(0.0))), Some(2));
        assert_eq!(o(q(cr(0.0), cr(1.0))), Some(4));
        assert_eq!(o(q(cr(0.0), cr(-1.0))), Some(4));
        let s = FRAC_1_SQRT_2;
        for (e0, e1) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            assert_eq!(o(q(cr(e0 * s), cr(e1 * s))), Some(8));
        }
    }

    #[test]
    fn irrational_phases_have_no_small_order() {
        let s = FRAC_1_SQRT_2;
        let x = q(C64::from_polar(s, 1.0), C64::from_polar(s, 2f64.sqrt()));
        assert_eq!(x.order(1000, ORDER_TOL), None);
    }

    #[test]
    fn orbit_examples() {
        assert!(Qubit::identity()
            .orbit(5)
            .iter()
            .all(|p| *p == Qubit::identity()));
        let s = FRAC_1_SQRT_2;
        let x = q(cr(s), cr(-s));
        let orb = x.orbit(16);
        for i in 0..8 {
            assert!(orb[i].distance(&orb[i + 8]) < 1e-12);
        }
        assert!(orb[7].distance(&Qubit::identity()) < 1e-12);
    }

    #[test]
    fn commutation_dichotomy_examples() {
        let id = Gate2::try_new(CMat2::identity()).unwrap();
        let chk = gate_commutes_with_embedding(&id, 50, 1e-10, 3);
        assert!(chk.commutes);
        assert!(chk.max_deviation < 1e-15);

        let phase = Gate2::try_new(CMat2::from_diagonal([
            cr(1.0),
            C64::from_polar(1.0, PI / 3.0),
        ]))
        .unwrap();
        let chk = gate_commutes_with_embedding(&phase, 50, 1e-10, 3);
        assert!(!chk.commutes);
        assert!(chk.max_deviation > 1e-3);
    }
}
