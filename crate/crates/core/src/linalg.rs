//! Small dense complex linear algebra on fixed-size vectors and matrices.
//!
//! Everything here is sized at compile time (`N` is 2 or 4 in practice) and
//! stored inline, so values are `Copy` and cheap to pass around. The
//! eigenvalue routine is a cyclic complex Jacobi iteration, which stays
//! accurate on the degenerate spectra that show up for Bell states.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Hermiticity tolerance accepted by [`hermitian_eigenvalues`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Jacobi stops once every off-diagonal modulus is below this.
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;
/// `xi` treats anything at or below this modulus as zero.
pub const XI_ZERO_THRESHOLD: f64 = 1e-14;
/// Allowed deviation of `|u|` from 1 for a [`UnitComplex`].
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Column vector in ℂᴺ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec<const N: usize>(pub [C64; N]);

pub type CVec2 = CVec<2>;
pub type CVec4 = CVec<4>;

/// Square matrix over ℂ, indexed `m[(row, col)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

impl<const N: usize> CVec<N> {
    pub fn zeros() -> Self {
        Self([C64::new(0.0, 0.0); N])
    }

    /// The canonical basis vector `eᵢ`.
    pub fn basis(i: usize) -> Result<Self> {
        if i >= N {
            return Err(Error::IndexOutOfRange { index: i, bound: N });
        }
        let mut v = Self::zeros();
        v.0[i] = cr(1.0);
        Ok(v)
    }

    pub fn from_reals(re: [f64; N], im: [f64; N]) -> Self {
        let mut v = Self::zeros();
        for i in 0..N {
            v.0[i] = c(re[i], im[i]);
        }
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Hermitian inner product `⟨self, other⟩ = selfᴴ·other`.
    pub fn dot(&self, other: &Self) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Outer product `self·otherᴴ`.
    pub fn outer(&self, other: &Self) -> CMat<N> {
        let mut m = CMat::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[i] * other.0[j].conj();
            }
        }
        m
    }
}

impl CVec2 {
    pub fn from_components(x0: C64, x1: C64) -> Self {
        Self([x0, x1])
    }
}

impl CVec4 {
    pub fn from_array(x: [C64; 4]) -> Self {
        Self(x)
    }
}

impl<const N: usize> Index<usize> for CVec<N> {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for CVec<N> {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl<const N: usize> Add for CVec<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            out.0[i] += rhs.0[i];
        }
        out
    }
}

impl<const N: usize> Sub for CVec<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            out.0[i] -= rhs.0[i];
        }
        out
    }
}

impl<const N: usize> Neg for CVec<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|z| -z))
    }
}

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        Self([[C64::new(0.0, 0.0); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = cr(1.0);
        }
        m
    }

    pub fn from_diagonal(d: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn from_columns(cols: [CVec<N>; N]) -> Self {
        let mut m = Self::zeros();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..N {
                m.0[i][j] = col.0[i];
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> CVec<N> {
        let mut v = CVec::zeros();
        for i in 0..N {
            v.0[i] = self.0[i][j];
        }
        v
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[j][i] = self.0[i][j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|row| row.map(|z| z * s)))
    }

    pub fn matvec(&self, v: &CVec<N>) -> CVec<N> {
        let mut out = CVec::zeros();
        for i in 0..N {
            out.0[i] = (0..N).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// `‖M − Mᴴ‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        (*self - self.adjoint()).frobenius_norm()
    }

    /// `‖MᴴM − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).frobenius_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Determinant by LU factorisation with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut a = self.0;
        let mut det = cr(1.0);
        for k in 0..N {
            let pivot = (k..N)
                .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
                .unwrap_or(k);
            if a[pivot][k].norm() == 0.0 {
                return cr(0.0);
            }
            if pivot != k {
                a.swap(pivot, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..N {
                let f = a[i][k] / a[k][k];
                for j in k..N {
                    let akj = a[k][j];
                    a[i][j] -= f * akj;
                }
            }
        }
        det
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let aik = self.0[i][k];
                for j in 0..N {
                    out.0[i][j] += aik * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<CVec<N>> for CMat<N> {
    type Output = CVec<N>;
    fn mul(self, rhs: CVec<N>) -> CVec<N> {
        self.matvec(&rhs)
    }
}

pub fn det2(m: &CMat2) -> C64 {
    m.0[0][0] * m.0[1][1] - m.0[0][1] * m.0[1][0]
}

pub fn det4(m: &CMat4) -> C64 {
    m.det()
}

/// `a ⊗ b` with the big-endian convention `result[2i + j] = a[i]·b[j]`.
pub fn kron_vec(a: &CVec2, b: &CVec2) -> CVec4 {
    let mut out = CVec4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out.0[2 * i + j] = a.0[i] * b.0[j];
        }
    }
    out
}

/// `A ⊗ B` with `result[2i + k, 2j + l] = A[i,j]·B[k,l]`.
pub fn kron_mat(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut out = CMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// Sorted (nondecreasing) eigenvalues of a Hermitian matrix.
///
/// Rejects inputs with `‖M − Mᴴ‖_F > 1e-10`. The matrix is symmetrised
/// before iterating so that rounding-level asymmetry does not leak into the
/// rotations.
pub fn hermitian_eigenvalues<const N: usize>(m: &CMat<N>) -> Result<[f64; N]> {
    let defect = m.hermitian_defect();
    if !(defect <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian(defect));
    }
    Ok(jacobi_eigenvalues(m))
}

pub(crate) fn jacobi_eigenvalues<const N: usize>(m: &CMat<N>) -> [f64; N] {
    let mut a = (*m + m.adjoint()).scale(cr(0.5)).0;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..N {
            for q in p + 1..N {
                off = off.max(a[p][q].norm());
            }
        }
        if off < JACOBI_OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut eig = [0.0; N];
    for (i, e) in eig.iter_mut().enumerate() {
        *e = a[i][i].re;
    }
    eig.sort_by(f64::total_cmp);
    eig
}

/// One Jacobi rotation annihilating `a[p][q]`.
///
/// The unitary is `G = D·R`, where `D = diag(.., 1 @p, e^{-iφ} @q, ..)`
/// makes the pivot real and `R` is the usual real Jacobi rotation.
fn rotate<const N: usize>(a: &mut [[C64; N]; N], p: usize, q: usize) {
    let apq = a[p][q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase_conj = (apq / r).conj();
    let theta = (a[q][q].re - a[p][p].re) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    let g_pp = cr(cs);
    let g_pq = cr(sn);
    let g_qp = phase_conj * (-sn);
    let g_qq = phase_conj * cs;

    // A ← A·G
    for row in a.iter_mut() {
        let (akp, akq) = (row[p], row[q]);
        row[p] = akp * g_pp + akq * g_qp;
        row[q] = akp * g_pq + akq * g_qq;
    }
    // A ← Gᴴ·A
    for k in 0..N {
        let (apk, aqk) = (a[p][k], a[q][k]);
        a[p][k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[q][k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[p][q] = cr(0.0);
    a[q][p] = cr(0.0);
    a[p][p].im = 0.0;
    a[q][q].im = 0.0;
}

/// Largest singular value, as `sqrt(λ_max(MᴴM))`.
pub fn spectral_norm<const N: usize>(m: &CMat<N>) -> f64 {
    let gram = m.adjoint() * *m;
    let eig = jacobi_eigenvalues(&gram);
    eig[N - 1].max(0.0).sqrt()
}

/// Cholesky factor `L` with `M = L·Lᴴ` for a Hermitian positive definite `M`.
pub fn cholesky<const N: usize>(m: &CMat<N>) -> Result<CMat<N>> {
    let mut l = CMat::<N>::zeros();
    for j in 0..N {
        let mut d = m.0[j][j].re;
        for k in 0..j {
            d -= l.0[j][k].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::InvalidDensity(format!(
                "matrix is not positive definite (pivot {j} = {d:e})"
            )));
        }
        let ljj = d.sqrt();
        l.0[j][j] = cr(ljj);
        for i in j + 1..N {
            let mut s = m.0[i][j];
            for k in 0..j {
                s -= l.0[i][k] * l.0[j][k].conj();
            }
            l.0[i][j] = s / ljj;
        }
    }
    Ok(l)
}

/// Inverse of a nonsingular lower-triangular matrix by forward substitution.
pub fn lower_triangular_inverse<const N: usize>(l: &CMat<N>) -> CMat<N> {
    let mut inv = CMat::<N>::zeros();
    for col in 0..N {
        for i in col..N {
            let mut s = if i == col { cr(1.0) } else { cr(0.0) };
            for k in col..i {
                s -= l.0[i][k] * inv.0[k][col];
            }
            inv.0[i][col] = s / l.0[i][i];
        }
    }
    inv
}

/// A complex number of unit modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitComplex(C64);

impl UnitComplex {
    pub const ONE: UnitComplex = UnitComplex(C64::new(1.0, 0.0));
    pub const I: UnitComplex = UnitComplex(C64::new(0.0, 1.0));

    pub fn new(z: C64) -> Result<Self> {
        Self::with_tolerance(z, UNIT_MODULUS_TOL)
    }

    pub fn with_tolerance(z: C64, tol: f64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let r = z.norm();
        if (r - 1.0).abs() > tol {
            return Err(Error::NotUnitModulus(r));
        }
        Ok(Self(z))
    }

    /// `e^{iθ}`.
    pub fn from_angle(theta: f64) -> Self {
        Self(C64::from_polar(1.0, theta))
    }

    pub fn value(self) -> C64 {
        self.0
    }

    pub fn inv(self) -> Self {
        Self(self.0.conj())
    }

    pub fn powi(self, n: i32) -> C64 {
        self.0.powi(n)
    }
}

/// Projects `z` onto the unit circle along its own direction; `0 ↦ 1`.
pub fn xi(z: C64) -> UnitComplex {
    let r = z.norm();
    if r <= XI_ZERO_THRESHOLD {
        UnitComplex::ONE
    } else {
        UnitComplex(z / r)
    }
}
