//! Born-rule statistics: outcome distributions, Shannon entropy, purities.

use crate::error::{Error, Result};
use crate::mub::{Basis, MubSet};
use crate::qstate::QuantumState;
use crate::scalar::Real;

/// Logarithm base used by every entropy and bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase<T> {
    base: T,
}

impl<T: Real> LogBase<T> {
    pub fn new(base: T) -> Result<Self> {
        if base.is_finite() && base > T::one() {
            Ok(Self { base })
        } else {
            Err(Error::InvalidLogBase(base.to_f64_lossy()))
        }
    }

    /// Bits.
    pub fn two() -> Self {
        Self { base: T::lit(2.0) }
    }

    /// Nats.
    pub fn e() -> Self {
        Self { base: T::E() }
    }

    pub fn base(&self) -> T {
        self.base
    }

    pub fn log(&self, x: T) -> T {
        if self.base == T::lit(2.0) {
            x.log2()
        } else if self.base == T::E() {
            x.ln()
        } else {
            x.ln() / self.base.ln()
        }
    }
}

impl<T: Real> Default for LogBase<T> {
    fn default() -> Self {
        Self::two()
    }
}

/// Outcome distribution of one projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution<T> {
    probs: Vec<T>,
}

impl<T: Real> ProbabilityDistribution<T> {
    /// Clamps roundoff into `[0, 1]`; anything further out is an error.
    pub fn new(mut probs: Vec<T>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let slack = T::lit(T::ROUNDOFF);
        for p in probs.iter_mut() {
            if !p.is_finite() {
                return Err(Error::NonFinite("probability"));
            }
            if *p < -slack {
                return Err(Error::NegativeProbability(p.to_f64_lossy()));
            }
            if *p > T::one() + slack {
                return Err(Error::ProbabilityAboveOne(p.to_f64_lossy()));
            }
            *p = p.max(T::zero()).min(T::one());
        }
        let total: T = probs.iter().copied().sum();
        if (total - T::one()).abs() > T::lit(T::LOOSE) {
            return Err(Error::NotNormalizedDistribution(total.to_f64_lossy()));
        }
        Ok(Self { probs })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self {
            probs: vec![T::one() / T::from_usize_lossy(dim); dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }
}

/// `p_i = |<a_i|psi>|^2` for pure states, `<a_i|rho|a_i>` for mixed ones.
pub fn born_probabilities<T: Real, S: QuantumState<T> + ?Sized>(
    state: &S,
    basis: &Basis<T>,
) -> Result<ProbabilityDistribution<T>> {
    if state.dim() != basis.dim() {
        return Err(Error::DimMismatch(state.dim(), basis.dim()));
    }
    ProbabilityDistribution::new(
        basis
            .vectors()
            .iter()
            .map(|v| state.outcome_probability(v))
            .collect(),
    )
}

/// `-sum p_i log p_i`, with `0 log 0 = 0`.
pub fn shannon_entropy<T: Real>(dist: &ProbabilityDistribution<T>, base: LogBase<T>) -> T {
    entropy_of(dist.probs(), base)
}

pub(crate) fn entropy_of<T: Real>(probs: &[T], base: LogBase<T>) -> T {
    let tiny = T::lit(T::TINY);
    let h: T = probs
        .iter()
        .filter(|&&p| p > tiny)
        .map(|&p| -p * base.log(p))
        .sum();
    h.max(T::zero())
}

/// `sum p_i^2`.
pub fn index_purity<T: Real>(dist: &ProbabilityDistribution<T>) -> T {
    dist.probs.iter().map(|&p| p * p).sum()
}

/// `-log pi`, the collision entropy, which never exceeds the Shannon entropy.
pub fn min_entropy_from_purity<T: Real>(pi: T, base: LogBase<T>) -> Result<T> {
    if !(pi > T::zero()) || pi > T::one() + T::lit(T::ROUNDOFF) {
        return Err(Error::Domain(format!("purity {pi} outside (0, 1]")));
    }
    Ok(-base.log(pi.min(T::one())))
}

fn check_dims<T: Real, S: QuantumState<T> + ?Sized>(state: &S, mubs: &MubSet<T>) -> Result<()> {
    if state.dim() == mubs.dim() {
        Ok(())
    } else {
        Err(Error::DimMismatch(state.dim(), mubs.dim()))
    }
}

/// Outcome distribution in each basis of the set, in set order.
pub fn measure_all<T: Real, S: QuantumState<T> + ?Sized>(
    state: &S,
    mubs: &MubSet<T>,
) -> Result<Vec<ProbabilityDistribution<T>>> {
    check_dims(state, mubs)?;
    mubs.bases()
        .iter()
        .map(|b| born_probabilities(state, b))
        .collect()
}

/// `sum_k H_k` over the bases of `mubs`.
pub fn entropy_sum<T: Real, S: QuantumState<T> + ?Sized>(
    state: &S,
    mubs: &MubSet<T>,
    base: LogBase<T>,
) -> Result<T> {
    Ok(measure_all(state, mubs)?
        .iter()
        .map(|d| shannon_entropy(d, base))
        .sum())
}

/// `sum_k pi_k` over the bases of `mubs`.
pub fn purity_sum<T: Real, S: QuantumState<T> + ?Sized>(state: &S, mubs: &MubSet<T>) -> Result<T> {
    Ok(measure_all(state, mubs)?.iter().map(index_purity).sum())
}

/// Residual of `sum_k pi_k = Tr(rho^2) + 1` over a complete set.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<T> {
    pub purity_sum: T,
    pub state_purity: T,
    pub residual: T,
    pub passed: bool,
}

pub fn check_larsen_identity<T: Real, S: QuantumState<T> + ?Sized>(
    state: &S,
    full_mubs: &MubSet<T>,
    tol: T,
) -> Result<IdentityReport<T>> {
    if !full_mubs.is_complete() {
        return Err(Error::IncompleteSet {
            expected: full_mubs.dim() + 1,
            found: full_mubs.len(),
        });
    }
    let purity_sum = purity_sum(state, full_mubs)?;
    let state_purity = state.purity();
    let residual = (purity_sum - (state_purity + T::one())).abs();
    Ok(IdentityReport {
        purity_sum,
        state_purity,
        residual,
        passed: residual <= tol,
    })
}
