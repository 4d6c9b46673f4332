//! Exact periodic correlation: integer-valued for binary sequences, and
//! Gaussian-integer-valued for quaternary sequences.
//!
//! Periods are tiny, so everything is the plain O(n^2) double loop; there is
//! no rounding anywhere.

use std::fmt;

use crate::error::{Error, Result};
use crate::interleave::QuaternarySequence;
use crate::seqgen::BinarySequence;

/// An exact Gaussian integer, the value of a quaternary correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub fn conj(self) -> Self {
        GaussianInt { re: self.re, im: -self.im }
    }

    /// Squared modulus |re + im*i|^2, exact.
    pub fn norm_sq(self) -> u64 {
        (self.re * self.re + self.im * self.im) as u64
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// Cross-correlation of two equal-period binary sequences at shift `tau`:
/// `sum_i (-1)^(s(i+tau) - t(i))` with all indices mod the period.
pub fn binary_crosscorr(s: &BinarySequence, t: &BinarySequence, tau: usize) -> Result<i64> {
    if s.period() != t.period() {
        return Err(Error::ShapeError(format!(
            "periods differ: {} vs {}",
            s.period(),
            t.period()
        )));
    }
    let n = s.period();
    let mut acc = 0i64;
    for i in 0..n {
        acc += if s.bit(i + tau) == t.bit(i) { 1 } else { -1 };
    }
    Ok(acc)
}

/// Full autocorrelation profile `[R(0), ..., R(n-1)]`.
pub fn binary_autocorr_profile(s: &BinarySequence) -> Vec<i64> {
    (0..s.period())
        .map(|tau| binary_crosscorr(s, s, tau).expect("same sequence"))
        .collect()
}

const UNIT_POWERS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// Quaternary autocorrelation at shift `tau`, as an exact Gaussian integer:
/// `sum_i xi^(s(i+tau) - s(i))` for `xi` the primitive fourth root of unity.
pub fn quaternary_autocorr(s: &QuaternarySequence, tau: usize) -> GaussianInt {
    let n = s.period();
    let mut re = 0i64;
    let mut im = 0i64;
    for i in 0..n {
        let k = (4 + s.symbol(i + tau) - s.symbol(i)) % 4;
        let (dr, di) = UNIT_POWERS[k as usize];
        re += dr;
        im += di;
    }
    GaussianInt { re, im }
}

/// Full quaternary autocorrelation profile `[R(0), ..., R(n-1)]`.
pub fn quaternary_autocorr_profile(s: &QuaternarySequence) -> Vec<GaussianInt> {
    (0..s.period()).map(|tau| quaternary_autocorr(s, tau)).collect()
}

/// Maximum out-of-phase autocorrelation magnitude, reported as the exact
/// squared modulus max |R(tau)|^2 over 1 <= tau < period.
pub fn rmax(s: &QuaternarySequence) -> u64 {
    assert!(s.period() >= 2, "period must be at least 2");
    (1..s.period())
        .map(|tau| quaternary_autocorr(s, tau).norm_sq())
        .max()
        .expect("non-empty range")
}

/// Expected out-of-phase correlation table for a base/modified sequence pair
/// whose exceptional shifts are the multiples of `exceptional_step`:
///
/// * base autocorrelation: -1 off-phase (ideal);
/// * modified autocorrelation: -1 on exceptional shifts, 3 elsewhere;
/// * cross-correlation (both orders): `cross_in_phase` at 0,
///   `cross_exceptional` on exceptional shifts, 1 elsewhere.
#[derive(Debug, Clone, Copy)]
pub struct PairTableSpec {
    pub exceptional_step: usize,
    pub cross_in_phase: i64,
    pub cross_exceptional: i64,
}

/// Check a pair against its full correlation table for every shift.
/// Returns the first violation, if any.
pub fn check_pair_tables(
    t0: &BinarySequence,
    t1: &BinarySequence,
    table: &PairTableSpec,
) -> Option<String> {
    let n = t0.period();
    let ni = n as i64;
    for tau in 0..n {
        let exceptional = tau % table.exceptional_step == 0;
        let want0 = if tau == 0 { ni } else { -1 };
        let want1 = if tau == 0 {
            ni
        } else if exceptional {
            -1
        } else {
            3
        };
        let wantc = if tau == 0 {
            table.cross_in_phase
        } else if exceptional {
            table.cross_exceptional
        } else {
            1
        };
        let r0 = binary_crosscorr(t0, t0, tau).ok()?;
        let r1 = binary_crosscorr(t1, t1, tau).ok()?;
        let c01 = binary_crosscorr(t0, t1, tau).ok()?;
        let c10 = binary_crosscorr(t1, t0, tau).ok()?;
        if r0 != want0 {
            return Some(format!("base autocorrelation at {tau}: {r0} != {want0}"));
        }
        if r1 != want1 {
            return Some(format!("modified autocorrelation at {tau}: {r1} != {want1}"));
        }
        if c01 != wantc || c10 != wantc {
            return Some(format!(
                "cross-correlation at {tau}: ({c01}, {c10}) != {wantc}"
            ));
        }
    }
    None
}
