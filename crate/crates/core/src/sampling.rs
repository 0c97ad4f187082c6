//! Seeded random states, gates and matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::charts::Quregister2;
use crate::linalg::{c, kron_vec, CMat2, CVec, CVec2};
use crate::qubit::{embed_psi1, Gate2, Qubit};

/// Identifier of the generator behind [`seeded_rng`], reported alongside results.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.9, seed_from_u64)";

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Gaussian vector in ℂᴺ, not normalized.
pub fn gaussian_vec<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> CVec<N> {
    let mut v = CVec::<N>::zeros();
    for z in v.0.iter_mut() {
        *z = c(gaussian(rng), gaussian(rng));
    }
    v
}

fn unit_vec<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> CVec<N> {
    loop {
        let v = gaussian_vec::<N, _>(rng);
        let n = v.norm();
        if n > 1e-8 {
            return v.scale(c(1.0 / n, 0.0));
        }
    }
}

/// Uniform on S₁(ℂ) ≅ S³(ℝ).
pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> Qubit {
    Qubit::from_unit(unit_vec::<2, _>(rng))
}

/// Uniform on S₃(ℂ).
pub fn random_quregister<R: Rng + ?Sized>(rng: &mut R) -> Quregister2 {
    Quregister2::from_unit(unit_vec::<4, _>(rng))
}

/// A random product state together with its factors.
pub fn random_product_state<R: Rng + ?Sized>(rng: &mut R) -> (Quregister2, Qubit, Qubit) {
    let c0 = random_qubit(rng);
    let c1 = random_qubit(rng);
    let x = Quregister2::from_unit(kron_vec(c0.vec(), c1.vec()));
    (x, c0, c1)
}

/// Random element of SU(2), as the image of a random qubit.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Gate2 {
    Gate2::from_unitary(*embed_psi1(&random_qubit(rng)).matrix())
}

/// Random element of U(2) with `det = e^{iθ}`, θ uniform in `[0.2, 2π − 0.2]`.
pub fn random_non_special_unitary<R: Rng + ?Sized>(rng: &mut R) -> Gate2 {
    let theta = rng.random_range(0.2..(2.0 * std::f64::consts::PI - 0.2));
    let phase = CMat2::from_diagonal([c(1.0, 0.0), num_complex::Complex64::from_polar(1.0, theta)]);
    Gate2::from_unitary(*embed_psi1(&random_qubit(rng)).matrix() * phase)
}

/// Random 2×2 complex matrix with i.i.d. Gaussian entries.
pub fn random_matrix2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    let a = gaussian_vec::<2, _>(rng);
    let b = gaussian_vec::<2, _>(rng);
    CMat2::from_columns([a, b])
}

/// Random qubit as a raw vector, for tests that need unnormalized input.
pub fn random_cvec2<R: Rng + ?Sized>(rng: &mut R) -> CVec2 {
    gaussian_vec::<2, _>(rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_are_reproducible() {
        let a: Vec<Qubit> = {
            let mut rng = seeded_rng(9);
            (0..5).map(|_| random_qubit(&mut rng)).collect()
        };
        let b: Vec<Qubit> = {
            let mut rng = seeded_rng(9);
            (0..5).map(|_| random_qubit(&mut rng)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn non_special_unitaries_stay_away_from_det_one() {
        let mut rng = seeded_rng(1);
        for _ in 0..200 {
            let g = random_non_special_unitary(&mut rng);
            assert!(g.matrix().unitarity_defect() < 1e-12);
            assert!((crate::linalg::det2(g.matrix()) - c(1.0, 0.0)).norm() > 0.19);
        }
    }
}
