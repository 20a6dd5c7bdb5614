//! JSON file formats for states and basis sets.
//!
//! - pure state: `{ "dim": N, "amplitudes": [[re, im], ...] }`
//! - density matrix: `{ "dim": N, "rows": [[[re, im], ...], ...] }`
//! - basis set: `{ "dim": N, "bases": [{ "label": k, "vectors": [[[re, im], ...], ...] }, ...] }`
//!
//! Numbers are written at full double precision.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mub::{Basis, MubSet};
use crate::qstate::{DensityMatrix, PureState, QuantumState};
use crate::scalar::Real;

pub type ComplexPair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PureStateJson {
    pub dim: usize,
    pub amplitudes: Vec<ComplexPair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityMatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<ComplexPair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub label: usize,
    pub vectors: Vec<Vec<ComplexPair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSetJson {
    pub dim: usize,
    pub bases: Vec<BasisJson>,
}

/// Either state file layout, distinguished by its field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateJson {
    Pure(PureStateJson),
    Density(DensityMatrixJson),
}

/// A state loaded from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyState<T> {
    Pure(PureState<T>),
    Density(DensityMatrix<T>),
}

impl<T: Real> AnyState<T> {
    pub fn as_state(&self) -> &dyn QuantumState<T> {
        match self {
            AnyState::Pure(p) => p,
            AnyState::Density(d) => d,
        }
    }
}

fn pair<T: Real>(c: &Complex<T>) -> ComplexPair {
    [c.re.to_f64_lossy(), c.im.to_f64_lossy()]
}

fn complex<T: Real>(p: &ComplexPair) -> Complex<T> {
    Complex::new(T::lit(p[0]), T::lit(p[1]))
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { expected, found })
    }
}

impl<T: Real> From<&PureState<T>> for PureStateJson {
    fn from(s: &PureState<T>) -> Self {
        Self {
            dim: s.dim(),
            amplitudes: s.amplitudes().iter().map(pair).collect(),
        }
    }
}

impl PureStateJson {
    pub fn to_state<T: Real>(&self) -> Result<PureState<T>> {
        check_len(self.dim, self.amplitudes.len())?;
        PureState::new(self.amplitudes.iter().map(complex).collect())
    }
}

impl<T: Real> From<&DensityMatrix<T>> for DensityMatrixJson {
    fn from(rho: &DensityMatrix<T>) -> Self {
        Self {
            dim: rho.dim(),
            rows: rho.rows().map(|r| r.iter().map(pair).collect()).collect(),
        }
    }
}

impl DensityMatrixJson {
    pub fn to_state<T: Real>(&self) -> Result<DensityMatrix<T>> {
        check_len(self.dim, self.rows.len())?;
        DensityMatrix::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(complex).collect())
                .collect(),
        )
    }
}

impl StateJson {
    pub fn to_state<T: Real>(&self) -> Result<AnyState<T>> {
        Ok(match self {
            StateJson::Pure(p) => AnyState::Pure(p.to_state()?),
            StateJson::Density(d) => AnyState::Density(d.to_state()?),
        })
    }
}

impl<T: Real> From<&MubSet<T>> for BasisSetJson {
    fn from(set: &MubSet<T>) -> Self {
        Self {
            dim: set.dim(),
            bases: set
                .bases()
                .iter()
                .map(|b| BasisJson {
                    label: b.label(),
                    vectors: b
                        .vectors()
                        .iter()
                        .map(|v| v.amplitudes().iter().map(pair).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

impl BasisSetJson {
    /// Loads the bases without checking orthonormality, so that a faulty
    /// file can still be measured by `verify_mub_set`. Shapes and finiteness
    /// are checked.
    pub fn to_bases<T: Real>(&self) -> Result<Vec<Basis<T>>> {
        if self.bases.is_empty() {
            return Err(Error::EmptyDimension);
        }
        self.bases
            .iter()
            .map(|b| {
                check_len(self.dim, b.vectors.len())?;
                let vectors = b
                    .vectors
                    .iter()
                    .map(|v| {
                        check_len(self.dim, v.len())?;
                        if v.iter().flatten().any(|x| !x.is_finite()) {
                            return Err(Error::NonFinite("basis amplitude"));
                        }
                        Ok(PureState::from_normalized_unchecked(
                            v.iter().map(complex).collect(),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Basis::from_vectors_unchecked(b.label, vectors))
            })
            .collect()
    }

    /// Loads and validates a set of mutually unbiased bases.
    pub fn to_mub_set<T: Real>(&self) -> Result<MubSet<T>> {
        let bases = self
            .to_bases::<T>()?
            .into_iter()
            .map(|b| Basis::new(b.label(), b.vectors().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        MubSet::new(bases)
    }
}
