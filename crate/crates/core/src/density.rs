//! Density matrices, partial traces and von Neumann entropies.

use crate::charts::{s_from_t_abs, Quregister2};
use crate::error::{Error, Result};
use crate::linalg::{cr, hermitian_eigenvalues, jacobi_eigenvalues, CMat, CMat2, CMat4};
use crate::qubit::Qubit;

pub const DENSITY_TOL: f64 = 1e-10;
/// Eigenvalues within this of `[0, 1]` are clamped before taking logs.
pub const ENTROPY_CLAMP: f64 = 1e-10;
pub const PURITY_TOL: f64 = 1e-9;
pub const WEIGHT_TOL: f64 = 1e-12;

/// Hermitian, positive semidefinite, trace-one matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<const N: usize>(CMat<N>);

pub type DensityMatrix2 = DensityMatrix<2>;
pub type DensityMatrix4 = DensityMatrix<4>;

impl<const N: usize> DensityMatrix<N> {
    pub fn try_new(m: CMat<N>) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let herm = m.hermitian_defect();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr - cr(1.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} ≠ 1")));
        }
        let min = hermitian_eigenvalues(&m)?[0];
        if min < -DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self(m))
    }

    /// The maximally mixed state `I/N`.
    pub fn maximally_mixed() -> Self {
        Self(CMat::identity().scale(cr(1.0 / N as f64)))
    }

    pub fn matrix(&self) -> &CMat<N> {
        &self.0
    }

    pub fn eigenvalues(&self) -> [f64; N] {
        jacobi_eigenvalues(&self.0)
    }

    /// `Tr(m²)`
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }
}

/// `ρ₂(x) = x xᴴ`
pub fn rho2(x: &Quregister2) -> DensityMatrix4 {
    DensityMatrix(x.vec().outer(x.vec()))
}

/// `ρ₁(z) = z zᴴ`
pub fn rho1(z: &Qubit) -> DensityMatrix2 {
    DensityMatrix(z.vec().outer(z.vec()))
}

/// Which tensor factor a marginal keeps. `First` is the left (most significant) factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl Subsystem {
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Self::First),
            1 => Ok(Self::Second),
            _ => Err(Error::IndexOutOfRange { index: i, bound: 2 }),
        }
    }
}

/// Reduced matrix on one subsystem.
///
/// `First`:  `(Tr₀Q)ᵢⱼ = q₂ᵢ,₂ⱼ + q₂ᵢ₊₁,₂ⱼ₊₁`
/// `Second`: `(Tr₁Q)ᵢⱼ = qᵢ,ⱼ + q₂₊ᵢ,₂₊ⱼ`
pub fn partial_trace(m: &DensityMatrix4, subsystem: Subsystem) -> DensityMatrix2 {
    let q = &m.0;
    let mut out = CMat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match subsystem {
                Subsystem::First => q[(2 * i, 2 * j)] + q[(2 * i + 1, 2 * j + 1)],
                Subsystem::Second => q[(i, j)] + q[(2 + i, 2 + j)],
            };
        }
    }
    DensityMatrix(out)
}

/// `(λ₀, λ₁) = ((1 − s)/2, (1 + s)/2)` with `s = √(1 − 4|t|²)`.
pub fn lambda_pair(x: &Quregister2) -> (f64, f64) {
    let s = x.s();
    (0.5 * (1.0 - s), 0.5 * (1.0 + s))
}

fn entropy_term(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// `−Σ λ log₂ λ` over the spectrum, with `0·log₂0 = 0`.
pub fn von_neumann_entropy<const N: usize>(m: &DensityMatrix<N>) -> f64 {
    m.eigenvalues()
        .iter()
        .map(|&l| {
            let l = if (-ENTROPY_CLAMP..0.0).contains(&l) {
                0.0
            } else if l > 1.0 && l <= 1.0 + ENTROPY_CLAMP {
                1.0
            } else {
                l
            };
            entropy_term(l)
        })
        .sum::<f64>()
        .max(0.0)
}

pub fn reduced_entropy(m: &DensityMatrix4, subsystem: Subsystem) -> f64 {
    von_neumann_entropy(&partial_trace(m, subsystem))
}

/// Shannon entropy `H(p) = −p log₂p − (1−p) log₂(1−p)`.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_term(p) + entropy_term(1.0 - p)
}

/// `−½((1−s)log₂(1−s) + (1+s)log₂(1+s)) + 1`
pub fn entropy_from_s(s: f64) -> f64 {
    let term = |v: f64| if v <= 0.0 { 0.0 } else { v * v.log2() };
    (1.0 - 0.5 * (term(1.0 - s) + term(1.0 + s))).max(0.0)
}

pub fn entropy_closed_form(x: &Quregister2) -> f64 {
    entropy_from_s(s_from_t_abs(x.t().norm()))
}

/// A convex combination `Σ pᵢ ρ₂(xᵢ)`, kept as its decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    components: Vec<(f64, Quregister2)>,
}

impl MixedState {
    pub fn try_new(components: Vec<(f64, Quregister2)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeights("no components".into()));
        }
        if let Some((w, _)) = components.iter().find(|(w, _)| !(*w >= 0.0 && *w <= 1.0)) {
            return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(f64, Quregister2)] {
        &self.components
    }

    /// True when every component is a product state.
    pub fn is_separable_decomposition(&self, tol: f64) -> bool {
        self.components.iter().all(|(_, x)| x.t().norm() < tol)
    }
}

pub fn mix(state: &MixedState) -> DensityMatrix4 {
    let m = state
        .components
        .iter()
        .fold(CMat4::zeros(), |acc, (w, x)| acc + rho2(x).0.scale(cr(*w)));
    DensityMatrix(m)
}

/// `|Tr(m²) − 1| < tol`
pub fn is_pure(m: &DensityMatrix4, tol: f64) -> bool {
    (m.purity() - 1.0).abs() < tol
}
