//! Inverse-power-series coefficients near the complex pole of the `phi^4` kink.
//!
//! The leading inner solution `sum a_m / z^m` of `psi'''' + psi'' - psi^3 = 0`
//! satisfies
//!
//! ```text
//! m(m+1)(m+2)(m+3) a_m + (m+2)(m+3) a_{m+2} = sum_{l+k<=m+3} a_l a_k a_{m+4-l-k}
//! ```
//!
//! With `a_{2n} = 0` and `a_{2n+1} = (-1)^n (2n)! b_n` this becomes the diagonal
//! recurrence
//!
//! ```text
//! b_{n+1} = b_n + sum_{l+k<=n+1} (2l)!(2k)!(2n+2-2l-2k)!/(2n+4)! b_l b_k b_{n+1-l-k}
//! ```
//!
//! which is implicit: the three terms with one index equal to `n+1` carry
//! `b_{n+1} b_0^2`. Collecting them gives
//! `b_{n+1} (1 - 6/((2n+4)(2n+3))) = b_n + (remaining terms)`.
//! A positive, increasing `b_n` means the Stokes constant does not vanish.

use std::f64::consts::SQRT_2;

use crate::{Error, Result};

/// `b_0 .. b_{n_max}` of the diagonal recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesSequence {
    b: Vec<f64>,
}

impl StokesSequence {
    /// Wrap externally computed values. The first entry must be `sqrt(2)`,
    /// which fixes `a_1`.
    pub fn from_values(b: Vec<f64>) -> Result<Self> {
        match b.first() {
            Some(&b0) if (b0 - SQRT_2).abs() <= 4.0 * f64::EPSILON => {}
            _ => {
                return Err(Error::invalid(
                    "a Stokes sequence must start at b_0 = sqrt(2)",
                ))
            }
        }
        if b.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("Stokes sequence entries must be finite"));
        }
        Ok(Self { b })
    }

    pub fn values(&self) -> &[f64] {
        &self.b
    }

    pub fn n_max(&self) -> usize {
        self.b.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        self.b.get(n).copied()
    }

    /// True if `b_{n+1} >= b_n` throughout.
    pub fn is_monotone(&self) -> bool {
        self.b.windows(2).all(|w| w[1] >= w[0])
    }
}

/// `1 / C(m, r)` for `r = 0..=m`, built as running products of ratios.
fn inverse_binomial_row(m: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(m + 1);
    let mut v = 1.0;
    row.push(v);
    for r in 1..=m {
        v *= r as f64 / (m - r + 1) as f64;
        row.push(v);
    }
    row
}

/// Sum over `l + k + j = n + 1` of
/// `(2l)!(2k)!(2j)!/(2n+4)! b_l b_k b_j`, skipping the terms that contain
/// `b_{n+1}` when `skip_implicit` is set.
fn cubic_sum(b: &[f64], n: usize, skip_implicit: bool) -> f64 {
    let top = n + 1;
    let big = 2 * top;
    // (2l)!(2k)!(2j)!/(2n+2)! = 1/C(2n+2, 2l) * 1/C(2n+2-2l, 2k)
    let outer = inverse_binomial_row(big);
    let tail = 1.0 / ((2 * n + 3) as f64 * (2 * n + 4) as f64);
    let mut sum = 0.0;
    for l in 0..=top {
        let inner = inverse_binomial_row(big - 2 * l);
        for k in 0..=(top - l) {
            let j = top - l - k;
            if skip_implicit && (l == top || k == top || j == top) {
                continue;
            }
            sum += outer[2 * l] * inner[2 * k] * b[l] * b[k] * b[j];
        }
    }
    sum * tail
}

/// `b_0 = sqrt(2)`, then the implicit diagonal recurrence up to `n_max`.
pub fn b_sequence(n_max: usize) -> StokesSequence {
    let mut b = Vec::with_capacity(n_max + 1);
    b.push(SQRT_2);
    for n in 0..n_max {
        let explicit = cubic_sum(&b, n, true);
        let denom = 1.0 - 6.0 / ((2 * n + 4) as f64 * (2 * n + 3) as f64);
        b.push((b[n] + explicit) / denom);
    }
    StokesSequence { b }
}

/// `|b_{n+1} - b_n - sum(all terms)|` relative to `b_{n+1}`, with `b_{n+1}`
/// substituted back into the full (implicit) sum.
pub fn diagonal_residual(seq: &StokesSequence, n: usize) -> Result<f64> {
    if n + 1 > seq.n_max() {
        return Err(Error::InvalidIndex {
            index: n + 1,
            max: seq.n_max(),
        });
    }
    let b = &seq.b;
    let full = cubic_sum(b, n, false);
    Ok((b[n + 1] - b[n] - full).abs() / b[n + 1].abs())
}

/// `a_m`: zero for even `m`, `(-1)^n (2n)! b_n` for `m = 2n + 1`.
pub fn a_from_b(seq: &StokesSequence, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidIndex {
            index: 0,
            max: 2 * seq.n_max() + 1,
        });
    }
    if m.is_multiple_of(2) {
        return Ok(0.0);
    }
    let n = (m - 1) / 2;
    let bn = seq.get(n).ok_or(Error::InvalidIndex {
        index: m,
        max: 2 * seq.n_max() + 1,
    })?;
    let fact: f64 = (1..=2 * n).map(|i| i as f64).product();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * fact * bn)
}

/// Largest residual of the `a_m` recurrence over `1 <= m <= m_max`.
///
/// Each residual is divided by the sum of the magnitudes of its terms, which
/// grow like `(m+3)!`; even `m` have all terms zero and contribute nothing.
pub fn verify_a_recurrence(seq: &StokesSequence, m_max: usize) -> Result<f64> {
    let top = 2 * seq.n_max() + 1;
    if m_max + 2 > top {
        return Err(Error::InvalidIndex {
            index: m_max + 2,
            max: top,
        });
    }
    let a: Vec<f64> = (0..=m_max + 3)
        .map(|m| {
            if m == 0 || m > top {
                Ok(0.0)
            } else {
                a_from_b(seq, m)
            }
        })
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for m in 1..=m_max {
        let mf = m as f64;
        let lin4 = mf * (mf + 1.0) * (mf + 2.0) * (mf + 3.0) * a[m];
        let lin2 = (mf + 2.0) * (mf + 3.0) * a[m + 2];
        let (mut cubic, mut cubic_abs) = (0.0, 0.0);
        for l in 1..=m + 2 {
            for k in 1..=(m + 3 - l) {
                let j = m + 4 - l - k;
                let t = a[l] * a[k] * a[j];
                cubic += t;
                cubic_abs += t.abs();
            }
        }
        let scale = lin4.abs() + lin2.abs() + cubic_abs;
        if scale > 0.0 {
            worst = worst.max((lin4 + lin2 - cubic).abs() / scale);
        }
    }
    Ok(worst)
}
