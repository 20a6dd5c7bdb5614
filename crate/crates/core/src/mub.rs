//! Mutually unbiased bases in prime dimension.
//!
//! Basis 0 is the computational basis. For odd prime `p`, basis `k >= 1`
//! has vectors `v_{k,j}` whose component `i` is
//! `omega^((k-1) i^2 + j i) / sqrt(p)` with `omega = exp(2 pi i / p)`.
//! Dimension 2 uses the computational, `(1, +-1)/sqrt 2` and
//! `(1, +-i)/sqrt 2` bases, since `i^2 = i (mod 2)` degenerates the
//! quadratic phase.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qstate::PureState;
use crate::scalar::Real;

/// Trial-division primality test.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime_count(p: usize, count: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if count < 1 || count > p + 1 {
        return Err(Error::CountOutOfRange { count, max: p + 1 });
    }
    Ok(())
}

/// Vector `j` of basis `k` of the standard complete set in dimension `p`.
///
/// Costs `O(p)`; nothing is cached.
pub fn basis_vector<T: Real>(p: usize, k: usize, j: usize) -> Result<PureState<T>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k > p {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: p + 1,
        });
    }
    if j >= p {
        return Err(Error::IndexOutOfRange { index: j, len: p });
    }
    Ok(PureState::from_normalized_unchecked(raw_basis_vector(
        p, k, j,
    )))
}

fn raw_basis_vector<T: Real>(p: usize, k: usize, j: usize) -> Vec<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    if k == 0 {
        let mut v = vec![zero; p];
        v[j] = Complex::new(T::one(), T::zero());
        return v;
    }
    let s = T::one() / T::from_usize_lossy(p).sqrt();
    if p == 2 {
        let sign = if j == 0 { s } else { -s };
        return match k {
            1 => vec![Complex::new(s, T::zero()), Complex::new(sign, T::zero())],
            _ => vec![Complex::new(s, T::zero()), Complex::new(T::zero(), sign)],
        };
    }
    let pu = p as u64;
    let (ku, ju) = ((k - 1) as u64, j as u64);
    let step = T::TAU() / T::from_usize_lossy(p);
    (0..pu)
        .map(|i| {
            let e = (ku * ((i * i) % pu) + ju * i) % pu;
            let theta = step * T::from_u64(e).expect("small integer");
            Complex::new(s * theta.cos(), s * theta.sin())
        })
        .collect()
}

/// One orthonormal measurement basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis<T> {
    label: usize,
    vectors: Vec<PureState<T>>,
}

impl<T: Real> Basis<T> {
    /// Validates that `vectors` are `N` orthonormal vectors of dimension `N`.
    pub fn new(label: usize, vectors: Vec<PureState<T>>) -> Result<Self> {
        let dim = vectors
            .first()
            .map(PureState::dim)
            .ok_or(Error::EmptyDimension)?;
        if vectors.len() != dim {
            return Err(Error::ShapeMismatch {
                expected: dim,
                found: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimMismatch(dim, v.dim()));
        }
        let basis = Self { label, vectors };
        let err = basis.orthonormality_error().0;
        if err > T::lit(T::LOOSE) {
            return Err(Error::NotOrthonormal(err.to_f64_lossy()));
        }
        Ok(basis)
    }

    pub(crate) fn from_vectors_unchecked(label: usize, vectors: Vec<PureState<T>>) -> Self {
        Self { label, vectors }
    }

    /// Computational basis.
    pub fn computational(dim: usize) -> Result<Self> {
        let vectors = (0..dim)
            .map(|i| PureState::basis_state(dim, i))
            .collect::<Result<Vec<_>>>()?;
        if vectors.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(Self { label: 0, vectors })
    }

    pub fn label(&self) -> usize {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[PureState<T>] {
        &self.vectors
    }

    /// Largest `|<v_i|v_j> - delta_ij|`, with the offending pair.
    fn orthonormality_error(&self) -> (T, (usize, usize)) {
        let mut worst = (T::zero(), (0, 0));
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let target = if i == j { T::one() } else { T::zero() };
                let dev = (a.inner(b) - Complex::new(target, T::zero())).norm();
                if dev > worst.0 {
                    worst = (dev, (i, j));
                }
            }
        }
        worst
    }
}

/// Collection of pairwise mutually unbiased bases sharing a dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MubSet<T> {
    dim: usize,
    bases: Vec<Basis<T>>,
}

impl<T: Real> MubSet<T> {
    /// Validates the basis count and unbiasedness at the default tolerance.
    pub fn new(bases: Vec<Basis<T>>) -> Result<Self> {
        let report = verify_mub_set(&bases, T::lit(T::LOOSE))?;
        let dim = bases[0].dim();
        if bases.len() > dim + 1 {
            return Err(Error::CountOutOfRange {
                count: bases.len(),
                max: dim + 1,
            });
        }
        if !report.passed {
            return Err(Error::Domain(format!(
                "bases are not mutually unbiased: {report}"
            )));
        }
        Ok(Self { dim, bases })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.bases.len() == self.dim + 1
    }

    pub fn bases(&self) -> &[Basis<T>] {
        &self.bases
    }

    /// The first `count` bases, which are again mutually unbiased.
    pub fn prefix(&self, count: usize) -> Result<Self> {
        if count < 1 || count > self.bases.len() {
            return Err(Error::CountOutOfRange {
                count,
                max: self.bases.len(),
            });
        }
        Ok(Self {
            dim: self.dim,
            bases: self.bases[..count].to_vec(),
        })
    }

    /// Reorders the bases; `order` must be a permutation of `0..len`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.bases.len()];
        if order.len() != self.bases.len() {
            return Err(Error::ShapeMismatch {
                expected: self.bases.len(),
                found: order.len(),
            });
        }
        for &i in order {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(crate::error::domain("not a permutation"));
            }
        }
        Ok(Self {
            dim: self.dim,
            bases: order.iter().map(|&i| self.bases[i].clone()).collect(),
        })
    }
}

/// First `count` bases of the standard complete set in prime dimension `p`.
pub fn generate_mub_set<T: Real>(p: usize, count: usize) -> Result<MubSet<T>> {
    check_prime_count(p, count)?;
    let bases = (0..count)
        .map(|k| {
            let vectors = (0..p)
                .map(|j| PureState::from_normalized_unchecked(raw_basis_vector(p, k, j)))
                .collect();
            Basis::from_vectors_unchecked(k, vectors)
        })
        .collect();
    Ok(MubSet { dim: p, bases })
}

/// `c = max_{j,k} |<a_j|b_k>|`.
pub fn max_overlap<T: Real>(a: &Basis<T>, b: &Basis<T>) -> Result<T> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    Ok(a.vectors
        .iter()
        .flat_map(|x| b.vectors.iter().map(move |y| x.inner(y).norm()))
        .fold(T::zero(), T::max))
}

/// Outcome of [`verify_mub_set`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnbiasednessReport<T> {
    pub max_orthonormality_error: T,
    pub max_unbiasedness_error: T,
    /// `(k, l, i, j)`: list positions of the two bases and the vector indices
    /// of the worst cross overlap. `None` when there is only one basis.
    pub worst_pair: Option<(usize, usize, usize, usize)>,
    pub tol: T,
    pub passed: bool,
}

impl<T: Real> fmt::Display for UnbiasednessReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "orthonormality error {:e}, unbiasedness error {:e}",
            self.max_orthonormality_error, self.max_unbiasedness_error
        )?;
        if let Some((k, l, i, j)) = self.worst_pair {
            write!(f, " (bases {k},{l} vectors {i},{j})")?;
        }
        write!(
            f,
            ", tol {:e}: {}",
            self.tol,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Measures orthonormality within each basis and `|<a|b>|^2 = 1/N` across bases.
pub fn verify_mub_set<T: Real>(bases: &[Basis<T>], tol: T) -> Result<UnbiasednessReport<T>> {
    let dim = bases.first().map(Basis::dim).ok_or(Error::EmptyDimension)?;
    if let Some(b) = bases.iter().find(|b| b.dim() != dim) {
        return Err(Error::DimMismatch(dim, b.dim()));
    }
    let max_orthonormality_error = bases
        .iter()
        .map(|b| b.orthonormality_error().0)
        .fold(T::zero(), T::max);
    let target = T::one() / T::from_usize_lossy(dim);
    let mut max_unbiasedness_error = T::zero();
    let mut worst_pair = None;
    for (k, a) in bases.iter().enumerate() {
        for (l, b) in bases.iter().enumerate().skip(k + 1) {
            for (i, x) in a.vectors.iter().enumerate() {
                for (j, y) in b.vectors.iter().enumerate() {
                    let dev = (x.inner(y).norm_sqr() - target).abs();
                    if worst_pair.is_none() || dev > max_unbiasedness_error {
                        max_unbiasedness_error = dev;
                        worst_pair = Some((k, l, i, j));
                    }
                }
            }
        }
    }
    Ok(UnbiasednessReport {
        max_orthonormality_error,
        max_unbiasedness_error,
        worst_pair,
        tol,
        passed: max_orthonormality_error <= tol && max_unbiasedness_error <= tol,
    })
}
