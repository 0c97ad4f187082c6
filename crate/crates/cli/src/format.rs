//! Parsing of state arguments and text rendering of matrices and reports.

use std::fmt::Write as _;

use qubit_charts::linalg::{c, CMat4, CVec, C64};
use qubit_charts::EntanglementReport;

use crate::CliError;

/// Norm corrections larger than this are reported on ingestion.
pub const NORMALIZATION_WARN: f64 = 1e-9;
pub const ZERO_INPUT_NORM: f64 = 1e-12;

/// A parsed vector together with the norm it had before normalization.
#[derive(Debug, Clone, Copy)]
pub struct Ingested<const N: usize> {
    pub vec: CVec<N>,
    pub input_norm: f64,
}

impl<const N: usize> Ingested<N> {
    pub fn warning(&self) -> Option<String> {
        let corr = (self.input_norm - 1.0).abs();
        (corr > NORMALIZATION_WARN).then(|| {
            format!(
                "warning: input norm {} differs from 1 by {corr:e}; state renormalized",
                self.input_norm
            )
        })
    }
}

/// Reads `2N` reals as interleaved `(re, im)` pairs and normalizes.
pub fn ingest<const N: usize>(reals: &[f64]) -> Result<Ingested<N>, CliError> {
    if reals.len() != 2 * N {
        return Err(CliError::Usage(format!(
            "expected {} reals (re im pairs), got {}",
            2 * N,
            reals.len()
        )));
    }
    if reals.iter().any(|r| !r.is_finite()) {
        return Err(qubit_charts::Error::NonFinite.into());
    }
    let mut v = CVec::<N>::zeros();
    for (i, z) in v.0.iter_mut().enumerate() {
        *z = c(reals[2 * i], reals[2 * i + 1]);
    }
    let n = v.norm();
    if n <= ZERO_INPUT_NORM {
        return Err(qubit_charts::Error::ZeroVector.into());
    }
    Ok(Ingested {
        vec: v.scale(c(1.0 / n, 0.0)),
        input_norm: n,
    })
}

/// Shortest round-trip representation.
pub fn real(x: f64) -> String {
    format!("{x:e}")
}

/// 17 significant digits, as written to CSV.
pub fn csv_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex(z: C64) -> String {
    format!("{}{:+e}i", real(z.re), z.im)
}

/// Space-separated interleaved reals, in the form `measure`/`split` accept.
pub fn reals<const N: usize>(v: &CVec<N>) -> String {
    v.0.iter()
        .flat_map(|z| [z.re, z.im])
        .map(|x| format!("{x:.17e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn entry(z: C64) -> String {
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    format!("{:+.14e} {:+.14e}i", clean(z.re), clean(z.im))
}

/// Rows of a 4×4 matrix with every entry to 15 significant digits.
pub fn matrix(m: &CMat4) -> String {
    let cells: Vec<Vec<String>> = (0..4)
        .map(|i| (0..4).map(|j| entry(m[(i, j)])).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", line.join("  "));
    }
    out
}

pub fn report(r: &EntanglementReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nu: {}", real(r.nu));
    let _ = writeln!(out, "nu_scaled: {}", real(r.nu_scaled));
    let _ = writeln!(out, "t_abs: {}", real(r.t_abs));
    let _ = writeln!(out, "s: {}", real(r.s));
    let _ = writeln!(out, "lambda0: {}", real(r.lambda0));
    let _ = writeln!(out, "lambda1: {}", real(r.lambda1));
    let _ = writeln!(out, "entropy: {}", real(r.entropy));
    let _ = writeln!(out, "separable: {}", r.separable);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_normalizes_and_warns() {
        let s = ingest::<2>(&[3.0, 0.0, 0.0, 4.0]).unwrap();
        assert!((s.vec.norm() - 1.0).abs() < 1e-15);
        assert!(s.warning().is_some());
        let s = ingest::<2>(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(s.warning().is_none());
    }

    #[test]
    fn ingest_rejects_bad_input() {
        assert!(matches!(ingest::<4>(&[0.0; 8]), Err(CliError::Core(_))));
        assert!(matches!(ingest::<4>(&[1.0; 7]), Err(CliError::Usage(_))));
        assert!(ingest::<2>(&[f64::NAN, 0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn entries_have_fifteen_significant_digits() {
        assert_eq!(entry(c(1.0, 0.0)), "+1.00000000000000e0 +0.00000000000000e0i");
        assert_eq!(entry(c(-0.0, -0.5)), "+0.00000000000000e0 -5.00000000000000e-1i");
    }

    #[test]
    fn reals_round_trip() {
        let v = CVec::<2>([c(0.1, -1.0 / 3.0), c(2f64.sqrt(), 1e-300)]);
        let back: Vec<f64> = reals(&v).split(' ').map(|s| s.parse().unwrap()).collect();
        assert_eq!(back, vec![0.1, -1.0 / 3.0, 2f64.sqrt(), 1e-300]);
    }
}
