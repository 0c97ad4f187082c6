//! Two-qubit states: charts, tensor splitting, the chart embeddings `Φ₂ₖᵤ`
//! into 4×4 matrices, and the spectral-norm entanglement measure built on them.
//!
//! Basis order is big-endian, `e_{2i₁+i₀} = e_{i₁} ⊗ e_{i₀}`, so a product
//! `c₀ ⊗ c₁` has coordinates `(c₀₀c₀₁, c₀₀c₁₁, c₁₀c₀₁, c₁₀c₁₁)` where
//! `c₀ = (c₀₀, c₁₀)` and `c₁ = (c₀₁, c₁₁)`.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;

use crate::density;
use crate::error::{Error, Result};
use crate::linalg::{
    cholesky, cr, jacobi_eigenvalues, kron_mat, kron_vec, lower_triangular_inverse,
    spectral_norm, xi, CMat, CMat2, CMat4, CVec4, UnitComplex, C64,
};
use crate::qubit::{Qubit, ZERO_NORM};

pub const QUREGISTER_NORM_TOL: f64 = 1e-12;
/// `x ∈ C_k` requires `|x_k|` above this.
pub const CHART_TOL: f64 = 1e-12;
/// `|t|` below this is accepted by [`tensor_split`].
pub const SPLIT_SEPARABILITY_TOL: f64 = 1e-8;
/// `|t|` below this is reported as separable.
pub const REPORT_SEPARABLE_TOL: f64 = 1e-10;
/// [`z_matrix`] refuses `|t| ≥ 1/2 − BELL_MARGIN`.
pub const BELL_MARGIN: f64 = 1e-8;

/// A unit vector in ℂ⁴ = ℂ² ⊗ ℂ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quregister2(CVec4);

impl Quregister2 {
    pub fn new(v: CVec4) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = v.norm();
        if (n - 1.0).abs() > QUREGISTER_NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self(v))
    }

    pub fn from_components(x: [C64; 4]) -> Result<Self> {
        Self::new(CVec4::from_array(x))
    }

    /// Divides by the norm; rejects only the zero vector.
    pub fn normalized(v: CVec4) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = v.norm();
        if n <= ZERO_NORM {
            return Err(Error::ZeroVector);
        }
        Ok(Self(v.scale(cr(1.0 / n))))
    }

    pub(crate) fn from_unit(v: CVec4) -> Self {
        Self(v.scale(cr(1.0 / v.norm())))
    }

    /// `c₀ ⊗ c₁`.
    pub fn from_product(c0: &Qubit, c1: &Qubit) -> Self {
        Self::from_unit(kron_vec(c0.vec(), c1.vec()))
    }

    pub fn vec(&self) -> &CVec4 {
        &self.0
    }

    pub fn coord(&self, i: usize) -> C64 {
        self.0[i]
    }

    pub fn t(&self) -> C64 {
        t_of_vec(&self.0)
    }

    /// `s(x) = √(1 − 4|t|²)`, clamped at 0.
    pub fn s(&self) -> f64 {
        s_from_t_abs(self.t().norm())
    }
}

pub(crate) fn s_from_t_abs(t_abs: f64) -> f64 {
    (1.0 - 4.0 * t_abs * t_abs).max(0.0).sqrt()
}

/// Index of one of the four charts `C_k = {x : x_k ≠ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartIndex(usize);

impl ChartIndex {
    pub const ALL: [ChartIndex; 4] = [ChartIndex(0), ChartIndex(1), ChartIndex(2), ChartIndex(3)];

    pub fn new(k: usize) -> Result<Self> {
        if k > 3 {
            return Err(Error::IndexOutOfRange { index: k, bound: 4 });
        }
        Ok(Self(k))
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ChartIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `Φ₂ₖᵤ(x)` together with the chart and gauge it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartEmbedding {
    pub matrix: CMat4,
    pub chart: ChartIndex,
    pub gauge: UnitComplex,
}

impl ChartEmbedding {
    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(&self.matrix)
    }
}

/// A factorisation `x = c₀ ⊗ c₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorSplit {
    pub c0: Qubit,
    pub c1: Qubit,
    pub chart: ChartIndex,
    pub gauge: UnitComplex,
}

impl TensorSplit {
    pub fn product(&self) -> CVec4 {
        kron_vec(self.c0.vec(), self.c1.vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub nu: f64,
    pub nu_scaled: f64,
    pub t_abs: f64,
    pub s: f64,
    pub lambda0: f64,
    pub lambda1: f64,
    pub entropy: f64,
    pub separable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `A ⊗ I₂`
    Left,
    /// `I₂ ⊗ A`
    Right,
}

/// `t = x₀x₃ − x₁x₂` on a raw 4-vector.
pub fn t_of_vec(v: &CVec4) -> C64 {
    v[0] * v[3] - v[1] * v[2]
}

pub fn t_invariant(x: &Quregister2) -> C64 {
    x.t()
}

pub fn is_separable(x: &Quregister2, tol: f64) -> bool {
    x.t().norm() < tol
}

pub fn charts_containing(x: &Quregister2, tol: f64) -> Vec<ChartIndex> {
    ChartIndex::ALL
        .into_iter()
        .filter(|k| x.coord(k.0).norm() > tol)
        .collect()
}

/// The chart of the largest coordinate, smallest index on ties.
pub fn canonical_chart(x: &Quregister2) -> ChartIndex {
    let mut best = 0;
    for j in 1..4 {
        if x.coord(j).norm() > x.coord(best).norm() {
            best = j;
        }
    }
    ChartIndex(best)
}

fn require_chart(x: &Quregister2, k: ChartIndex) -> Result<()> {
    let modulus = x.coord(k.0).norm();
    if modulus > CHART_TOL {
        Ok(())
    } else {
        Err(Error::NotInChart {
            chart: k.0,
            modulus,
        })
    }
}

/// Splits a separable state as `(u⁻¹c₀) ⊗ (u c₁)` using the chart-`k` formulas.
pub fn tensor_split(x: &Quregister2, k: ChartIndex, u: UnitComplex) -> Result<TensorSplit> {
    require_chart(x, k)?;
    let t_abs = x.t().norm();
    if t_abs >= SPLIT_SEPARABILITY_TOL {
        return Err(Error::NotSeparable(t_abs));
    }
    let [x0, x1, x2, x3] = x.0 .0;
    let r02 = (x0.norm_sqr() + x2.norm_sqr()).sqrt();
    let r13 = (x1.norm_sqr() + x3.norm_sqr()).sqrt();
    let one = cr(1.0);
    let (c0, c1) = match k.0 {
        0 => ([x0 / r02, x2 / r02], [cr(r02), x1 / x0 * r02]),
        1 => ([x1 / r13, x3 / r13], [x0 / x1 * r13, one * r13]),
        2 => ([x0 / r02, x2 / r02], [cr(r02), x3 / x2 * r02]),
        _ => ([x1 / r13, x3 / r13], [x2 / x3 * r13, one * r13]),
    };
    let uv = u.value();
    let uinv = u.inv().value();
    let c0 = Qubit::normalized(c0[0] * uinv, c0[1] * uinv)?;
    let c1 = Qubit::normalized(c1[0] * uv, c1[1] * uv)?;
    Ok(TensorSplit {
        c0,
        c1,
        chart: k,
        gauge: u,
    })
}

/// Coordinates of a factor pair in the flat labelling
/// `c₀ = c₀₀, c₁ = c₁₀, c₂ = c₀₁, c₃ = c₁₁`.
pub fn factor_coordinate(c0: &Qubit, c1: &Qubit, j: usize) -> C64 {
    match j {
        0 => c0.x0(),
        1 => c0.x1(),
        2 => c1.x0(),
        _ => c1.x1(),
    }
}

/// The gauge `u` under which `Φ₂ₖᵤ(c₀ ⊗ c₁) = Ψ₁(c₀) ⊗ Ψ₁(c₁)`.
///
/// Column 1 of `Φ₂ₖᵤ` carries a factor `u⁻²` against `c₀₁` (charts 0, 2) or
/// `c₁₁` (charts 1, 3), so `u` has to be the phase of that coordinate of `c₁`.
pub fn product_gauge(c0: &Qubit, c1: &Qubit, k: ChartIndex) -> UnitComplex {
    match k.0 {
        0 | 2 => xi(factor_coordinate(c0, c1, 2)),
        _ => xi(factor_coordinate(c0, c1, 3)),
    }
}

/// `ξ(z)²`
fn xi_sq(z: C64) -> C64 {
    let w = xi(z).value();
    w * w
}

/// `ξ(z)⁻²`
fn xi_sq_inv(z: C64) -> C64 {
    xi_sq(z).conj()
}

/// The chart embedding `Φ₂ₖᵤ(x)`; column 0 is `x` itself.
pub fn phi(x: &Quregister2, k: ChartIndex, u: UnitComplex) -> Result<ChartEmbedding> {
    require_chart(x, k)?;
    let [x0, x1, x2, x3] = x.0 .0;
    let a = u.inv().value() * u.inv().value();
    let b = u.value() * u.value();
    let cj = |z: C64| z.conj();

    let rows = match k.0 {
        0 => [
            [x0, -a * xi_sq(x0) * cj(x1), -b * cj(x2), cj(x3)],
            [x1, a * x0, -b * xi_sq_inv(x2) * x3, -cj(x2)],
            [x2, -a * xi_sq_inv(x1 / x0) * x3, b * cj(x0), -cj(x1)],
            [x3, a * x2, b * xi_sq_inv(x0) * x1, cj(x0)],
        ],
        1 => [
            [x0, -a * x1, -b * xi_sq_inv(x3) * x2, cj(x3)],
            [x1, a * xi_sq(x1) * cj(x0), -b * cj(x3), -cj(x2)],
            [x2, -a * x3, b * xi_sq_inv(x1) * x0, -cj(x1)],
            [x3, a * xi_sq_inv(x0 / x1) * x2, b * cj(x1), cj(x0)],
        ],
        2 => [
            [x0, -a * xi_sq_inv(x3 / x2) * x1, -b * cj(x2), cj(x3)],
            [x1, a * x0, -b * xi_sq_inv(x2) * x3, -cj(x2)],
            [x2, -a * xi_sq(x2) * cj(x3), b * cj(x0), -cj(x1)],
            [x3, a * x2, b * xi_sq_inv(x0) * x1, cj(x0)],
        ],
        _ => [
            [x0, -a * x1, -b * xi_sq_inv(x3) * x2, cj(x3)],
            [x1, a * xi_sq_inv(x2 / x3) * x0, -b * cj(x3), -cj(x2)],
            [x2, -a * x3, b * xi_sq_inv(x1) * x0, -cj(x1)],
            [x3, a * xi_sq(x3) * cj(x2), b * cj(x1), cj(x0)],
        ],
    };
    Ok(ChartEmbedding {
        matrix: CMat(rows),
        chart: k,
        gauge: u,
    })
}

/// `ν_k(x) = ‖Φ₂ₖᵤ(x)‖₂ − 1`, through the spectral norm.
pub fn nu(x: &Quregister2, k: ChartIndex, u: UnitComplex) -> Result<f64> {
    Ok(phi(x, k, u)?.spectral_norm() - 1.0)
}

/// `√(1 + 2|t(x)|) − 1`.
pub fn nu_closed_form(x: &Quregister2) -> f64 {
    nu_from_t_abs(x.t().norm())
}

pub(crate) fn nu_from_t_abs(t_abs: f64) -> f64 {
    (1.0 + 2.0 * t_abs).sqrt() - 1.0
}

/// Rescales `ν` so that its maximum `√2 − 1` maps to `2 = log₂ 4`.
pub fn nu_scaled(nu: f64) -> f64 {
    2.0 / (SQRT_2 - 1.0) * nu
}

/// `C(t)`: the identity with `2t̄` at (0,3) and `2t` at (3,0).
pub fn correction_matrix(t: C64) -> CMat4 {
    let mut m = CMat4::identity();
    m[(0, 3)] = t.conj() * 2.0;
    m[(3, 0)] = t * 2.0;
    m
}

/// `C(t)⁻¹` for `|t| < 1/2`.
pub fn correction_matrix_inverse(t: C64) -> CMat4 {
    let d = 1.0 / (1.0 - 4.0 * t.norm_sqr());
    let mut m = CMat4::identity();
    m[(0, 0)] = cr(d);
    m[(3, 3)] = cr(d);
    m[(0, 3)] = t.conj() * (-2.0 * d);
    m[(3, 0)] = t * (-2.0 * d);
    m
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZAnalysis {
    /// `Z = ΦᴴΦ · C(t)⁻¹`
    pub z: CMat4,
    /// Eigenvalues of `Z`, nondecreasing.
    pub spectrum: [f64; 4],
}

/// `Z = Φ₂ₖᵤ(x)ᴴ Φ₂ₖᵤ(x) · C(t)⁻¹` and its spectrum.
///
/// `Z` is not Hermitian in general, but with `C = L·Lᴴ` it is similar to the
/// Hermitian `L⁻¹ ΦᴴΦ L⁻ᴴ`, whose eigenvalues are returned.
pub fn z_matrix(x: &Quregister2, k: ChartIndex, u: UnitComplex) -> Result<ZAnalysis> {
    let emb = phi(x, k, u)?;
    let t = x.t();
    if t.norm() >= 0.5 - BELL_MARGIN {
        return Err(Error::BellSingularity(t.norm()));
    }
    let gram = emb.matrix.adjoint() * emb.matrix;
    let z = gram * correction_matrix_inverse(t);
    let l_inv = lower_triangular_inverse(&cholesky(&correction_matrix(t))?);
    let similar = l_inv * gram * l_inv.adjoint();
    Ok(ZAnalysis {
        z,
        spectrum: jacobi_eigenvalues(&similar),
    })
}

/// `(A ⊗ I₂)·x` or `(I₂ ⊗ A)·x`, not renormalized.
pub fn local_transform(x: &CVec4, a: &CMat2, side: Side) -> CVec4 {
    let op = match side {
        Side::Left => kron_mat(a, &CMat2::identity()),
        Side::Right => kron_mat(&CMat2::identity(), a),
    };
    op.matvec(x)
}

/// `b_{2i₁+i₀} = (e₀⊗e_{i₁} + (−1)^{i₀} e₁⊗e_{1+i₁}) / √2`, index `1+i₁` taken mod 2.
pub fn bell_vector(i: usize) -> Result<Quregister2> {
    if i > 3 {
        return Err(Error::IndexOutOfRange { index: i, bound: 4 });
    }
    let (i1, i0) = (i >> 1, i & 1);
    let sign = if i0 == 0 { 1.0 } else { -1.0 };
    let mut v = CVec4::zeros();
    v[i1] = cr(FRAC_1_SQRT_2);
    v[2 + (1 - i1)] = cr(sign * FRAC_1_SQRT_2);
    Ok(Quregister2(v))
}

pub fn canonical_vector(i: usize) -> Result<Quregister2> {
    Ok(Quregister2(CVec4::basis(i)?))
}

/// `x_p = (√p, 0, 0, √(1−p))`.
pub fn x_p_family(p: f64) -> Result<Quregister2> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { name: "p", value: p });
    }
    Ok(Quregister2(CVec4::from_array([
        cr(p.sqrt()),
        cr(0.0),
        cr(0.0),
        cr((1.0 - p).sqrt()),
    ])))
}

pub fn report(x: &Quregister2) -> EntanglementReport {
    let t_abs = x.t().norm();
    let s = s_from_t_abs(t_abs);
    let nu = nu_from_t_abs(t_abs);
    EntanglementReport {
        nu,
        nu_scaled: nu_scaled(nu),
        t_abs,
        s,
        lambda0: 0.5 * (1.0 - s),
        lambda1: 0.5 * (1.0 + s),
        entropy: density::entropy_from_s(s),
        separable: t_abs < REPORT_SEPARABLE_TOL,
    }
}

/// Complex unit `e^{iπ/7}`, the third gauge sampled alongside 1 and i.
pub fn gauge_pi_over_7() -> UnitComplex {
    UnitComplex::from_angle(std::f64::consts::PI / 7.0)
}

/// The gauges every u-dependent check runs over.
pub fn standard_gauges() -> [UnitComplex; 3] {
    [UnitComplex::ONE, UnitComplex::I, gauge_pi_over_7()]
}
