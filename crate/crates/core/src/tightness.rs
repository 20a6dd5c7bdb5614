//! Numerical minimization of the entropy sum over pure states.
//!
//! A state is parametrized by `2N` reals (real and imaginary parts) and the
//! objective is the entropy sum of the normalized vector. Each restart runs
//! plain gradient descent with central-difference gradients and a
//! backtracking line search that halves from `step_init` until the Armijo
//! condition holds, renormalizing the parameters after every accepted step.

use num_complex::Complex;
use rayon::prelude::*;

use crate::bounds::{intermediate_bound, refined_intermediate_bound};
use crate::error::{Error, Result};
use crate::measure::{entropy_of, LogBase};
use crate::mub::{generate_mub_set, MubSet};
use crate::qstate::{haar_random_state, PureState, Seed};
use crate::scalar::Real;

/// Maximum number of step halvings per line search.
const MAX_HALVINGS: usize = 60;
/// Armijo sufficient-decrease constant.
const ARMIJO: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub converge_tol: f64,
    pub seed: Seed,
    /// Refuse dimensions above this; the cost grows as `restarts * iters * M * N^3`.
    pub max_dim: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 2000,
            step_init: 0.1,
            converge_tol: 1e-10,
            seed: Seed(0),
            max_dim: 31,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(format!("{what} must be positive")));
        if self.restarts == 0 {
            return bad("restarts");
        }
        if self.max_iters == 0 {
            return bad("max_iters");
        }
        if !(self.step_init > 0.0 && self.step_init.is_finite()) {
            return bad("step_init");
        }
        if !(self.converge_tol > 0.0 && self.converge_tol.is_finite()) {
            return bad("converge_tol");
        }
        if self.max_dim == 0 {
            return bad("max_dim");
        }
        Ok(())
    }
}

/// Best minimum found and its comparison with the intermediate bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessResult<T> {
    pub min_value: T,
    pub argmin: PureState<T>,
    pub intermediate: T,
    pub refined: T,
    /// `max(intermediate, refined)`.
    pub bound_value: T,
    /// `min_value - bound_value`.
    pub gap: T,
    pub iterations_used: usize,
    pub restart: usize,
}

/// Result of one descent run.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome<T> {
    pub value: T,
    pub state: PureState<T>,
    pub iterations: usize,
}

/// Entropy sum as a function of an unnormalized real parameter vector.
struct Objective<T> {
    dim: usize,
    /// Conjugated basis vectors, one row of `dim` per outcome, bases in order.
    rows: Vec<Complex<T>>,
    base: LogBase<T>,
    probs: Vec<T>,
}

impl<T: Real> Objective<T> {
    fn new(mubs: &MubSet<T>, base: LogBase<T>) -> Self {
        let rows = mubs
            .bases()
            .iter()
            .flat_map(|b| b.vectors().iter())
            .flat_map(|v| v.amplitudes().iter().map(|a| a.conj()))
            .collect();
        Self {
            dim: mubs.dim(),
            rows,
            base,
            probs: vec![T::zero(); mubs.dim()],
        }
    }

    fn eval(&mut self, x: &[T]) -> T {
        let n = self.dim;
        let norm_sqr: T = x.iter().map(|&v| v * v).sum();
        let mut total = T::zero();
        for basis in self.rows.chunks(n * n) {
            for (p, row) in self.probs.iter_mut().zip(basis.chunks(n)) {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (a, xy) in row.iter().zip(x.chunks(2)) {
                    acc = acc + a * Complex::new(xy[0], xy[1]);
                }
                *p = acc.norm_sqr() / norm_sqr;
            }
            total = total + entropy_of(&self.probs, self.base);
        }
        total
    }

    fn gradient(&mut self, x: &mut [T], grad: &mut [T]) {
        let h = T::lit(T::FD_STEP);
        for c in 0..x.len() {
            let orig = x[c];
            x[c] = orig + h;
            let up = self.eval(x);
            x[c] = orig - h;
            let down = self.eval(x);
            x[c] = orig;
            grad[c] = (up - down) / (h + h);
        }
    }
}

fn renormalize<T: Real>(x: &mut [T]) {
    let norm = x.iter().map(|&v| v * v).sum::<T>().sqrt();
    x.iter_mut().for_each(|v| *v = *v / norm);
}

fn check_inputs<T: Real>(mubs: &MubSet<T>, cfg: &OptimizerConfig) -> Result<()> {
    cfg.validate()?;
    if mubs.dim() > cfg.max_dim {
        return Err(Error::DimTooLarge {
            dim: mubs.dim(),
            max: cfg.max_dim,
        });
    }
    Ok(())
}

/// Runs restart `index` alone. Its start state is the Haar state drawn
/// from `cfg.seed.child(index)`.
pub fn run_restart<T: Real>(
    mubs: &MubSet<T>,
    base: LogBase<T>,
    cfg: &OptimizerConfig,
    index: usize,
) -> Result<RestartOutcome<T>> {
    check_inputs(mubs, cfg)?;
    let start: PureState<T> = haar_random_state(mubs.dim(), cfg.seed.child(index as u64))?;
    let mut x: Vec<T> = start
        .amplitudes()
        .iter()
        .flat_map(|a| [a.re, a.im])
        .collect();
    let mut objective = Objective::new(mubs, base);
    let mut value = objective.eval(&x);
    let mut grad = vec![T::zero(); x.len()];
    let mut trial = vec![T::zero(); x.len()];
    let step_init = T::lit(cfg.step_init);
    let tol = T::lit(cfg.converge_tol);
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        iterations += 1;
        objective.gradient(&mut x, &mut grad);
        if grad.iter().all(|g| *g == T::zero()) {
            break;
        }
        let slope: T = grad.iter().map(|g| *g * *g).sum::<T>() * T::lit(ARMIJO);
        let mut step = step_init;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            for ((t, xi), gi) in trial.iter_mut().zip(&x).zip(&grad) {
                *t = *xi - step * *gi;
            }
            renormalize(&mut trial);
            let candidate = objective.eval(&trial);
            if candidate < value && value - candidate >= step * slope {
                accepted = Some(candidate);
                break;
            }
            step = step / T::lit(2.0);
        }
        let Some(candidate) = accepted else { break };
        let improvement = value - candidate;
        std::mem::swap(&mut x, &mut trial);
        value = candidate;
        if improvement < tol {
            break;
        }
    }

    let amplitudes = x.chunks(2).map(|c| Complex::new(c[0], c[1])).collect();
    Ok(RestartOutcome {
        value,
        state: PureState::normalize(amplitudes)?,
        iterations,
    })
}

/// Minimizes the entropy sum over `mubs` with `cfg.restarts` independent
/// restarts (run in parallel) and returns the best, lowest index on ties.
///
/// Fails with [`Error::BoundViolation`] if the minimum falls below the
/// intermediate bounds by more than the scalar's bound slack.
pub fn minimize_entropy_sum<T: Real>(
    mubs: &MubSet<T>,
    base: LogBase<T>,
    cfg: &OptimizerConfig,
) -> Result<TightnessResult<T>> {
    check_inputs(mubs, cfg)?;
    let outcomes = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(mubs, base, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    let (restart, best) = outcomes
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.value < a.1.value { b } else { a })
        .expect("at least one restart");

    let (n, m) = (mubs.dim(), mubs.len());
    let intermediate = intermediate_bound(n, m, base)?;
    let refined = refined_intermediate_bound(n, m, base)?;
    let bound_value = intermediate.max(refined);
    if best.value < bound_value - T::lit(T::BOUND_SLACK) {
        return Err(Error::BoundViolation {
            min_value: best.value.to_f64_lossy(),
            bound_value: bound_value.to_f64_lossy(),
        });
    }
    Ok(TightnessResult {
        min_value: best.value,
        argmin: best.state,
        intermediate,
        refined,
        bound_value,
        gap: best.value - bound_value,
        iterations_used: best.iterations,
        restart,
    })
}

/// [`minimize_entropy_sum`] over the first `m` standard bases in dimension
/// `p`, for each `m` in `m_values`, in input order.
pub fn gap_sweep<T: Real>(
    p: usize,
    m_values: &[usize],
    base: LogBase<T>,
    cfg: &OptimizerConfig,
) -> Result<Vec<TightnessResult<T>>> {
    let Some(&largest) = m_values.iter().max() else {
        return Ok(Vec::new());
    };
    if let Some(&bad) = m_values.iter().find(|&&m| m == 0 || m > p + 1) {
        return Err(Error::CountOutOfRange {
            count: bad,
            max: p + 1,
        });
    }
    let full = generate_mub_set::<T>(p, largest)?;
    m_values
        .iter()
        .map(|&m| minimize_entropy_sum(&full.prefix(m)?, base, cfg))
        .collect()
}
