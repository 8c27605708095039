//! JSON wire formats.
//!
//! One encoding is used everywhere: a complex scalar is a two-element
//! array `[re, im]`, a vector is an array of scalars, a matrix is an
//! array of row arrays. Reals in emitted reports are printed as plain
//! decimals with twelve significant digits, so identical inputs produce
//! byte-identical documents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::matrix::{CMatrix, CVector};
use crate::quasiprob::DensityMatrix;
use crate::subspace::Subspace;
use crate::tolerance::TolerancePolicy;
use num_complex::Complex64;

pub type WireComplex = [f64; 2];
pub type WireVector = Vec<WireComplex>;
pub type WireMatrix = Vec<WireVector>;

pub fn vector_to_wire(v: &CVector) -> WireVector {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn matrix_to_wire(m: &CMatrix) -> WireMatrix {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

pub fn wire_to_vector(w: &[WireComplex], expected_len: usize) -> Result<CVector> {
    if w.len() != expected_len {
        return Err(Error::DimensionMismatch {
            context: "wire vector",
            expected: expected_len,
            found: w.len(),
        });
    }
    let v = CVector::from_iterator(w.len(), w.iter().map(|&[re, im]| Complex64::new(re, im)));
    crate::matrix::ensure_finite_vector(&v)?;
    Ok(v)
}

pub fn wire_to_matrix(w: &WireMatrix, rows: usize, cols: usize) -> Result<CMatrix> {
    if w.len() != rows {
        return Err(Error::DimensionMismatch {
            context: "wire matrix rows",
            expected: rows,
            found: w.len(),
        });
    }
    let mut m = CMatrix::zeros(rows, cols);
    for (r, row) in w.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                context: "wire matrix columns",
                expected: cols,
                found: row.len(),
            });
        }
        for (c, &[re, im]) in row.iter().enumerate() {
            m[(r, c)] = Complex64::new(re, im);
        }
    }
    crate::matrix::ensure_finite(&m)?;
    Ok(m)
}

/// A subspace given by spanning vectors; the loader orthonormalizes them
/// and the numerical rank becomes the dimension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub ambient_dim: usize,
    pub spanning_vectors: Vec<WireVector>,
}

impl SubspaceDoc {
    pub fn from_subspace(s: &Subspace) -> Self {
        Self {
            ambient_dim: s.ambient_dim(),
            spanning_vectors: (0..s.dim())
                .map(|j| vector_to_wire(&s.basis().column(j).into_owned()))
                .collect(),
        }
    }

    pub fn to_subspace(&self, tol: &TolerancePolicy) -> Result<Subspace> {
        if self.spanning_vectors.is_empty() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let vectors = self
            .spanning_vectors
            .iter()
            .map(|w| wire_to_vector(w, self.ambient_dim))
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_spanning(&vectors, tol)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyMemberDoc {
    pub spanning_vectors: Vec<WireVector>,
}

/// An ordered subspace family document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub ambient_dim: usize,
    pub members: Vec<FamilyMemberDoc>,
}

impl FamilyDoc {
    pub fn from_family(family: &SubspaceFamily) -> Self {
        Self {
            ambient_dim: family.ambient_dim(),
            members: family
                .members()
                .iter()
                .map(|m| FamilyMemberDoc {
                    spanning_vectors: (0..m.dim())
                        .map(|j| vector_to_wire(&m.basis().column(j).into_owned()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_family(&self, tol: &TolerancePolicy) -> Result<SubspaceFamily> {
        let members = self
            .members
            .iter()
            .map(|member| {
                let vectors = member
                    .spanning_vectors
                    .iter()
                    .map(|w| wire_to_vector(w, self.ambient_dim))
                    .collect::<Result<Vec<_>>>()?;
                if vectors.is_empty() {
                    return Ok(Subspace::zero(self.ambient_dim));
                }
                Subspace::from_spanning(&vectors, tol)
            })
            .collect::<Result<Vec<_>>>()?;
        SubspaceFamily::new(members, *tol)
    }
}

/// A density matrix document: exactly one of `matrix` (full matrix) or
/// `pure_state` (state vector, normalized by the loader) must be present.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityDoc {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<WireMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure_state: Option<WireVector>,
}

impl DensityDoc {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self {
            dim: rho.dim(),
            matrix: Some(matrix_to_wire(rho.matrix())),
            pure_state: None,
        }
    }

    pub fn to_density(&self, tol: &TolerancePolicy) -> Result<DensityMatrix> {
        match (&self.matrix, &self.pure_state) {
            (Some(matrix), None) => {
                let m = wire_to_matrix(matrix, self.dim, self.dim)?;
                DensityMatrix::new(m, tol)
            }
            (None, Some(state)) => {
                let v = wire_to_vector(state, self.dim)?;
                DensityMatrix::pure(&v, tol)
            }
            _ => Err(Error::InvalidDensityMatrix {
                reason: "document must carry exactly one of 'matrix' or 'pure_state'".to_string(),
            }),
        }
    }
}

/// Serialize any value as JSON with twelve-significant-digit reals.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, TwelveDigitFormatter);
    value
        .serialize(&mut serializer)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

/// Twelve significant digits, plain decimal notation, no trailing zeros.
pub fn format_real(x: f64) -> String {
    assert!(x.is_finite(), "reports must not carry non-finite reals");
    if x == 0.0 {
        return "0.0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (11 - exponent).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.push('0');
        }
    } else {
        s.push_str(".0");
    }
    s
}

struct TwelveDigitFormatter;

impl serde_json::ser::Formatter for TwelveDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        writer.write_all(format_real(value).as_bytes())
    }
}
