//! Sweeps over the family `x_p = (√p, 0, 0, √(1−p))`.

use crate::charts::{canonical_chart, nu_closed_form, phi, x_p_family};
use crate::density::{reduced_entropy, rho2, Subsystem};
use crate::error::{Error, Result};
use crate::linalg::UnitComplex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub nu: f64,
    /// `‖Φ(x_p)‖₂ − 1` in the canonical chart with `u = 1`.
    pub spectral_norm_minus_1: f64,
    pub entropy: f64,
}

/// `steps` evenly spaced values `p = i/(steps − 1)`, endpoints included.
pub fn sweep_xp(steps: usize) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "steps",
            value: steps as f64,
        });
    }
    (0..steps)
        .map(|i| {
            let p = i as f64 / (steps - 1) as f64;
            let x = x_p_family(p)?;
            let emb = phi(&x, canonical_chart(&x), UnitComplex::ONE)?;
            Ok(SweepRow {
                p,
                nu: nu_closed_form(&x),
                spectral_norm_minus_1: emb.spectral_norm() - 1.0,
                entropy: reduced_entropy(&rho2(&x), Subsystem::First),
            })
        })
        .collect()
}
