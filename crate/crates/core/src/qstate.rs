//! Pure and mixed state representations and seeded random sampling.
//!
//! Sampling uses ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded through
//! `SeedableRng::seed_from_u64`, and standard normals from
//! `rand_distr::StandardNormal`. A Haar state of dimension `N` consumes
//! `2N` normals in the order `re_0, im_0, re_1, im_1, ...` before
//! normalization, so a seed fully determines the amplitudes.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Seed for every randomized routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl Seed {
    /// Derives an independent seed for stream `index` (splitmix64 finalizer
    /// over `seed + (index + 1) * golden_gamma`).
    pub fn child(self, index: u64) -> Seed {
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Seed(z ^ (z >> 31))
    }

    pub fn rng(self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}

/// Anything that can be measured in an orthonormal basis.
pub trait QuantumState<T: Real> {
    fn dim(&self) -> usize;

    /// Born probability of the outcome associated with the unit vector `v`.
    fn outcome_probability(&self, v: &PureState<T>) -> T;

    /// `Tr(rho^2)`.
    fn purity(&self) -> T;
}

/// Unit-norm vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> PureState<T> {
    /// Wraps amplitudes that are already normalized.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyDimension);
        }
        check_finite(&amplitudes)?;
        let norm_sqr: T = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - T::one()).abs() > T::lit(T::ROUNDOFF) {
            return Err(Error::NotNormalized(norm_sqr.to_f64_lossy()));
        }
        Ok(Self { amplitudes })
    }

    /// Skips validation; callers guarantee the norm invariant.
    pub(crate) fn from_normalized_unchecked(amplitudes: Vec<Complex<T>>) -> Self {
        Self { amplitudes }
    }

    /// Scales `raw` to unit norm, preserving its direction.
    pub fn normalize(raw: Vec<Complex<T>>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyDimension);
        }
        check_finite(&raw)?;
        let tiny = T::lit(1e-300);
        let scale = raw.iter().map(|a| a.norm()).fold(T::zero(), T::max);
        if !(scale > tiny) {
            return Err(Error::ZeroVector);
        }
        // Rescale first so the squared norm cannot overflow or underflow.
        let norm = raw.iter().map(|a| (a / scale).norm_sqr()).sum::<T>().sqrt() * scale;
        let amplitudes = raw.into_iter().map(|a| a / norm).collect();
        Ok(Self { amplitudes })
    }

    /// Computational basis vector `|index>`.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); dim];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState<T>) -> Complex<T> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

impl<T: Real> QuantumState<T> for PureState<T> {
    fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    fn outcome_probability(&self, v: &PureState<T>) -> T {
        v.inner(self).norm_sqr()
    }

    fn purity(&self) -> T {
        T::one()
    }
}

pub(crate) fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
            acc + x.conj() * y
        })
}

fn check_finite<T: Real>(values: &[Complex<T>]) -> Result<()> {
    if values.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("amplitude"))
    }
}

/// Draws a Haar-random pure state of dimension `dim` from `seed`.
pub fn haar_random_state<T: Real>(dim: usize, seed: Seed) -> Result<PureState<T>> {
    haar_random_state_with(dim, &mut seed.rng())
}

/// Haar sampling from an existing generator, advancing it by `2 * dim` normals.
pub fn haar_random_state_with<T: Real, R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
) -> Result<PureState<T>> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    loop {
        let raw: Vec<Complex<T>> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(T::lit(re), T::lit(im))
            })
            .collect();
        match PureState::normalize(raw) {
            Err(Error::ZeroVector) => continue,
            other => return other,
        }
    }
}

/// Dense `N x N` density operator, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        check_finite(&entries)?;
        let rho = Self { dim, entries };
        let mut herm = T::zero();
        for i in 0..dim {
            for j in i..dim {
                herm = herm.max((rho.get(i, j) - rho.get(j, i).conj()).norm());
            }
        }
        if herm > T::lit(T::ROUNDOFF) {
            return Err(Error::NotHermitian(herm.to_f64_lossy()));
        }
        let trace: T = (0..dim).map(|i| rho.get(i, i).re).sum();
        if (trace - T::one()).abs() > T::lit(T::ROUNDOFF) {
            return Err(Error::TraceNotOne(trace.to_f64_lossy()));
        }
        if !rho.shifted_cholesky_succeeds(T::lit(T::LOOSE)) {
            return Err(Error::NotPositive);
        }
        Ok(rho)
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::ShapeMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::new(dim, entries)
    }

    /// `I / N`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        let w = T::one() / T::from_usize_lossy(dim);
        for i in 0..dim {
            entries[i * dim + i] = Complex::new(w, T::zero());
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex<T>]> {
        self.entries.chunks(self.dim)
    }

    /// `<v|rho|v>` evaluated as a quadratic form.
    pub fn expectation(&self, v: &[Complex<T>]) -> T {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, row) in self.rows().enumerate() {
            acc = acc + v[i].conj() * inner_unconj(row, v);
        }
        acc.re
    }

    /// Eigenvalues are all `>= -shift` iff `rho + shift * I` admits a Cholesky factor.
    fn shifted_cholesky_succeeds(&self, shift: T) -> bool {
        let n = self.dim;
        let mut l = vec![Complex::new(T::zero(), T::zero()); n * n];
        for j in 0..n {
            let mut d = self.get(j, j).re + shift;
            for k in 0..j {
                d = d - l[j * n + k].norm_sqr();
            }
            if !(d > T::zero()) {
                return false;
            }
            let ljj = d.sqrt();
            l[j * n + j] = Complex::new(ljj, T::zero());
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s = s - l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / ljj;
            }
        }
        true
    }
}

fn inner_unconj<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
            acc + x * y
        })
}

impl<T: Real> QuantumState<T> for DensityMatrix<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn outcome_probability(&self, v: &PureState<T>) -> T {
        self.expectation(v.amplitudes())
    }

    fn purity(&self) -> T {
        state_purity(self)
    }
}

/// `Tr(rho^2)`, which for Hermitian `rho` is the squared Frobenius norm.
pub fn state_purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.entries.iter().map(|e| e.norm_sqr()).sum()
}

/// Projector `|psi><psi|`.
pub fn density_from_pure<T: Real>(psi: &PureState<T>) -> DensityMatrix<T> {
    let a = psi.amplitudes();
    let dim = a.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for x in a {
        for y in a {
            entries.push(x * y.conj());
        }
    }
    DensityMatrix { dim, entries }
}

/// `sum_r w_r |psi_r><psi_r|` with weights renormalized to sum to one.
pub fn density_from_mixture<T: Real>(
    states: &[PureState<T>],
    weights: &[T],
) -> Result<DensityMatrix<T>> {
    if states.is_empty() {
        return Err(Error::EmptyDimension);
    }
    if states.len() != weights.len() {
        return Err(Error::ShapeMismatch {
            expected: states.len(),
            found: weights.len(),
        });
    }
    if weights.iter().any(|w| !w.is_finite() || *w < T::zero()) {
        return Err(crate::error::domain(
            "mixture weights must be finite and nonnegative",
        ));
    }
    let total: T = weights.iter().copied().sum();
    if !(total > T::zero()) {
        return Err(crate::error::domain("mixture weights sum to zero"));
    }
    let dim = states[0].dim();
    let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for (psi, &w) in states.iter().zip(weights) {
        if psi.dim() != dim {
            return Err(Error::DimMismatch(dim, psi.dim()));
        }
        let w = w / total;
        let a = psi.amplitudes();
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = entries[i * dim + j] + a[i] * a[j].conj() * w;
            }
        }
    }
    Ok(DensityMatrix { dim, entries })
}

/// Random rank-`rank` mixture of Haar states with uniform, renormalized weights.
///
/// The generator first draws the `rank` states, then the `rank` weights.
pub fn random_density_matrix<T: Real>(
    dim: usize,
    rank: usize,
    seed: Seed,
) -> Result<DensityMatrix<T>> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    if rank == 0 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    let mut rng = seed.rng();
    let states = (0..rank)
        .map(|_| haar_random_state_with(dim, &mut rng))
        .collect::<Result<Vec<PureState<T>>>>()?;
    let mut weights: Vec<T> = (0..rank).map(|_| T::lit(rng.random::<f64>())).collect();
    if weights.iter().all(|w| *w == T::zero()) {
        weights.iter_mut().for_each(|w| *w = T::one());
    }
    density_from_mixture(&states, &weights)
}
