//! Closed-form entropic uncertainty lower bounds.
//!
//! Every bound here depends only on the dimension `n`, the number of
//! mutually unbiased bases `m` (or the overlap `c` for two-basis bounds)
//! and the logarithm base. Nothing touches a basis vector, so evaluating a
//! whole `m = 1..=n+1` sweep costs `O(n)`.
//!
//! `m` is always the basis count. The integer that selects a chord of the
//! convex entropy floor is called `q`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Result};
use crate::measure::LogBase;
use crate::scalar::{snapped_ceil, Real};

/// The lower bounds and caps this module evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    /// `-2 log((1 + c) / 2)` for two bases.
    Deutsch,
    /// `-2 log c` for two bases.
    MaassenUffink,
    /// `(n + 1) log((n + 1) / 2)` for a complete set.
    SanchezComplete,
    /// `(m / 2) log n`.
    PairwiseWeak,
    /// `(n + 1) log((n + 1) / (2n)) + m log n`.
    SubtractionWeak,
    /// `m log(n m / (n - 1 + m))`.
    Intermediate,
    /// `m` times the convex entropy floor at the capped average purity.
    RefinedIntermediate,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::Deutsch,
        BoundKind::MaassenUffink,
        BoundKind::SanchezComplete,
        BoundKind::PairwiseWeak,
        BoundKind::SubtractionWeak,
        BoundKind::Intermediate,
        BoundKind::RefinedIntermediate,
    ];

    /// Short machine name, as used in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Deutsch => "deutsch",
            BoundKind::MaassenUffink => "maassen_uffink",
            BoundKind::SanchezComplete => "sanchez_complete",
            BoundKind::PairwiseWeak => "weak_pairwise",
            BoundKind::SubtractionWeak => "weak_subtraction",
            BoundKind::Intermediate => "intermediate",
            BoundKind::RefinedIntermediate => "refined",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_overlap<T: Real>(c: T) -> Result<T> {
    if c > T::zero() && c <= T::one() + T::lit(T::ROUNDOFF) {
        Ok(c.min(T::one()))
    } else {
        Err(domain(format!("overlap {c} outside (0, 1]")))
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(domain(format!("dimension {n} must be at least 2")))
    }
}

fn check_dim_count(n: usize, m: usize) -> Result<()> {
    check_dim(n)?;
    if m >= 1 && m <= n + 1 {
        Ok(())
    } else {
        Err(domain(format!("basis count {m} outside 1..={}", n + 1)))
    }
}

fn int<T: Real>(n: usize) -> T {
    T::from_usize_lossy(n)
}

pub fn deutsch_bound<T: Real>(c: T, base: LogBase<T>) -> Result<T> {
    let c = check_overlap(c)?;
    Ok(-T::lit(2.0) * base.log((T::one() + c) / T::lit(2.0)))
}

pub fn maassen_uffink_bound<T: Real>(c: T, base: LogBase<T>) -> Result<T> {
    let c = check_overlap(c)?;
    Ok(-T::lit(2.0) * base.log(c))
}

pub fn sanchez_complete_bound<T: Real>(n: usize, base: LogBase<T>) -> Result<T> {
    check_dim(n)?;
    let n1 = int::<T>(n + 1);
    Ok(n1 * base.log(n1 / T::lit(2.0)))
}

pub fn pairwise_weak_bound<T: Real>(n: usize, m: usize, base: LogBase<T>) -> Result<T> {
    check_dim_count(n, m)?;
    Ok(int::<T>(m) / T::lit(2.0) * base.log(int(n)))
}

/// May be negative for small `m`; reported as computed.
pub fn subtraction_weak_bound<T: Real>(n: usize, m: usize, base: LogBase<T>) -> Result<T> {
    check_dim_count(n, m)?;
    let (nf, n1) = (int::<T>(n), int::<T>(n + 1));
    Ok(n1 * base.log(n1 / (T::lit(2.0) * nf)) + int::<T>(m) * base.log(nf))
}

/// `Pi + 1 - (n + 1 - m) / n`, the cap on the partial purity sum.
///
/// Passing `state_purity = 1` gives the pure-state cap `(n - 1 + m) / n`.
pub fn purity_sum_cap<T: Real>(n: usize, m: usize, state_purity: T) -> Result<T> {
    check_dim_count(n, m)?;
    let nf = int::<T>(n);
    let slack = T::lit(T::LOOSE);
    if !(state_purity >= T::one() / nf - slack && state_purity <= T::one() + slack) {
        return Err(domain(format!(
            "state purity {state_purity} outside [1/{n}, 1]"
        )));
    }
    Ok(state_purity + T::one() - int::<T>(n + 1 - m) / nf)
}

/// `((n - 1 + m) / (n m))^m`, the cap on the product of purities.
pub fn purity_product_cap<T: Real>(n: usize, m: usize) -> Result<T> {
    check_dim_count(n, m)?;
    let per_basis = int::<T>(n - 1 + m) / int::<T>(n * m);
    Ok(per_basis.powi(m as i32))
}

pub fn intermediate_bound<T: Real>(n: usize, m: usize, base: LogBase<T>) -> Result<T> {
    check_dim_count(n, m)?;
    Ok(int::<T>(m) * base.log(int::<T>(n * m) / int::<T>(n - 1 + m)))
}

/// Chord `q` of the convex entropy floor evaluated at purity `pi`:
/// `log q - (q - 1)(q pi - 1) log(q / (q - 1))`, and `0` for `q = 1`.
///
/// It is the line through `(1/q, log q)` and `(1/(q-1), log(q-1))`, which is
/// a valid entropy floor for `pi` in `[1/q, 1/(q-1)]`.
pub fn convex_floor_chord<T: Real>(pi: T, q: usize, base: LogBase<T>) -> T {
    if q <= 1 {
        return T::zero();
    }
    let qf = int::<T>(q);
    let q1 = int::<T>(q - 1);
    base.log(qf) - q1 * (qf * pi - T::one()) * base.log(qf / q1)
}

/// Piecewise-linear floor under the Shannon entropy of any distribution
/// with index purity `pi`, using the chord selected by `q = ceil(1/pi)`.
pub fn sanchez_convex_entropy_floor<T: Real>(pi: T, base: LogBase<T>) -> Result<T> {
    if !(pi > T::zero()) || pi > T::one() + T::lit(T::ROUNDOFF) {
        return Err(domain(format!("purity {pi} outside (0, 1]")));
    }
    let pi = pi.min(T::one());
    let q = snapped_ceil(T::one() / pi)
        .to_usize()
        .ok_or_else(|| domain("purity too small"))?;
    Ok(convex_floor_chord(pi, q, base))
}

/// `m` times the convex floor at the average purity cap `(n + m - 1) / (n m)`,
/// with `q = ceil(n m / (n + m - 1))`.
pub fn refined_intermediate_bound<T: Real>(n: usize, m: usize, base: LogBase<T>) -> Result<T> {
    check_dim_count(n, m)?;
    let num = int::<T>(n * m);
    let den = int::<T>(n + m - 1);
    let q = snapped_ceil(num / den)
        .to_usize()
        .expect("q is a small positive integer");
    Ok(int::<T>(m) * convex_floor_chord(den / num, q, base))
}

/// Every applicable bound for `(n, m)` together with the strongest one.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub dim: usize,
    pub count: usize,
    pub base: LogBase<T>,
    pub values: BTreeMap<BoundKind, T>,
    pub best: BoundKind,
    pub best_value: T,
}

impl<T: Real> BoundReport<T> {
    pub fn get(&self, kind: BoundKind) -> Option<T> {
        self.values.get(&kind).copied()
    }
}

/// Evaluates the weak, intermediate and refined bounds, plus the complete-set
/// bound when `m = n + 1` and the two-basis bounds at `c = 1/sqrt(n)` when
/// `m = 2`. Ties for the best value go to the kind listed first in
/// [`BoundKind`].
pub fn bound_report<T: Real>(n: usize, m: usize, base: LogBase<T>) -> Result<BoundReport<T>> {
    check_dim_count(n, m)?;
    let mut values = BTreeMap::new();
    values.insert(BoundKind::PairwiseWeak, pairwise_weak_bound(n, m, base)?);
    values.insert(
        BoundKind::SubtractionWeak,
        subtraction_weak_bound(n, m, base)?,
    );
    values.insert(BoundKind::Intermediate, intermediate_bound(n, m, base)?);
    values.insert(
        BoundKind::RefinedIntermediate,
        refined_intermediate_bound(n, m, base)?,
    );
    if m == n + 1 {
        values.insert(BoundKind::SanchezComplete, sanchez_complete_bound(n, base)?);
    }
    if m == 2 {
        let c = T::one() / int::<T>(n).sqrt();
        values.insert(BoundKind::MaassenUffink, maassen_uffink_bound(c, base)?);
        values.insert(BoundKind::Deutsch, deutsch_bound(c, base)?);
    }
    let mut best = None::<(BoundKind, T)>;
    for (&kind, &v) in &values {
        if !v.is_finite() {
            return Err(domain(format!("{kind} evaluated to {v}")));
        }
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((kind, v));
        }
    }
    let (best, best_value) = best.expect("at least four bounds");
    Ok(BoundReport {
        dim: n,
        count: m,
        base,
        values,
        best,
        best_value,
    })
}
