//! Fusion rings of the Virasoro minimal models from the Verlinde formula.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use super::ring::{Flavor, FusionRing, Label};
use crate::error::{Error, Result};
use crate::scalar::{rat, Scalar};

/// Largest accepted distance between a Verlinde sum and its nearest integer.
pub const RESIDUAL_GATE: f64 = 1e-6;

/// `h_{r,s} = ((q r - p s)^2 - (p - q)^2) / (4 p q)`.
pub fn kac_weight(p: i64, q: i64, r: i64, s: i64) -> Scalar {
    let a = q * r - p * s;
    rat(a * a - (p - q) * (p - q), 4 * p * q)
}

/// Kac labels `(r, s)`, one representative per class `(r,s) ~ (p-r, q-s)`,
/// ordered by `r` then `s`.
pub fn kac_table(p: i64, q: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for r in 1..p {
        for s in 1..q {
            let mirror = (p - r, q - s);
            if (r, s) <= mirror {
                out.push((r, s));
            }
        }
    }
    out
}

fn check_params(p: i64, q: i64) -> Result<()> {
    if p < 2 || q <= p || p.gcd(&q) != 1 {
        return Err(Error::InvalidParameter(format!("minimal model needs coprime 2 <= p < q, got ({p}, {q})")));
    }
    Ok(())
}

fn s_entry(p: i64, q: i64, (r, s): (i64, i64), (rho, sigma): (i64, i64)) -> f64 {
    let (pf, qf) = (p as f64, q as f64);
    let sign = if (1 + s * rho + r * sigma) % 2 == 0 { 1.0 } else { -1.0 };
    let pi = core::f64::consts::PI;
    2.0 * libm::sqrt(2.0 / (pf * qf))
        * sign
        * libm::sin(pi * qf / pf * (r * rho) as f64)
        * libm::sin(pi * pf / qf * (s * sigma) as f64)
}

/// Fusion ring of the `(p, q)` minimal model. Labels are named by their
/// weights and ordered as in [`kac_table`]. The floating-point Verlinde sums
/// are rounded, gated by [`RESIDUAL_GATE`], and the rounded table must pass
/// every ring axiom.
pub fn verlinde_minimal(p: i64, q: i64) -> Result<FusionRing> {
    check_params(p, q)?;
    let kac = kac_table(p, q);
    let len = kac.len();
    let s: Vec<Vec<f64>> = kac.iter().map(|&a| kac.iter().map(|&b| s_entry(p, q, a, b)).collect()).collect();
    let mut entries = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 0..len {
        for j in 0..len {
            for k in 0..len {
                let v: f64 = (0..len).map(|m| s[i][m] * s[j][m] * s[k][m] / s[0][m]).sum();
                let rounded = libm::round(v);
                worst = worst.max(libm::fabs(v - rounded));
                if rounded < -0.5 {
                    return Err(Error::Verlinde(format!("negative fusion coefficient {v} at ({i}, {j}, {k})")));
                }
                if rounded > 0.5 {
                    entries.push((i, j, k, rounded as u32));
                }
            }
        }
    }
    if worst >= RESIDUAL_GATE {
        return Err(Error::Verlinde(format!("rounding residual {worst:e} exceeds the gate")));
    }
    let labels = kac
        .iter()
        .map(|&(r, s)| {
            let h = kac_weight(p, q, r, s);
            Label::new(format!("{h}"), h, Flavor::None)
        })
        .collect();
    let ring = FusionRing::new(format!("M({p},{q})"), labels, &entries).map_err(|e| Error::Verlinde(format!("{e}")))?;
    let report = ring.check_axioms();
    if !report.passed() {
        return Err(Error::Verlinde(format!("axioms fail: {report:?}")));
    }
    Ok(ring)
}

/// Central charge `1 - 6 (p - q)^2 / (p q)`.
pub fn central_charge(p: i64, q: i64) -> Scalar {
    rat(p * q - 6 * (p - q) * (p - q), p * q)
}

/// Unitary model `(m, m + 1)` with central charge `c`, searched up to `m_max`.
pub fn unitary_model_for(c: &Scalar, m_max: i64) -> Option<(i64, i64)> {
    (3..=m_max).map(|m| (m, m + 1)).find(|&(p, q)| &central_charge(p, q) == c)
}
