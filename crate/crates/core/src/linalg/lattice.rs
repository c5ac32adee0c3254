use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{diagonalize, hermite_rows, integer_kernel_basis, is_zero_vector, primitive_part};
use super::{IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Which lattice the monoid lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeMode {
    /// `Z^d` intersected with the linear span of the cone.
    AmbientLattice,
    /// The lattice generated by the input generators.
    GeneratedLattice,
}

/// Coordinates on a sublattice `L` of `Z^d` with basis `b_1, ..., b_r`.
///
/// `backward` has the basis vectors as rows, so `c -> c * backward` maps
/// lattice coordinates to ambient ones. `forward / denominator` is a left
/// inverse on `L`.
#[derive(Clone, Debug)]
pub struct LatticeEmbedding {
    pub forward: IntMatrix,
    pub denominator: BigInt,
    pub backward: IntMatrix,
    pub rank: usize,
    pub lattice_mode: LatticeMode,
}

impl LatticeEmbedding {
    pub fn identity(dim: usize) -> Self {
        LatticeEmbedding {
            forward: IntMatrix::identity(dim),
            denominator: BigInt::one(),
            backward: IntMatrix::identity(dim),
            rank: dim,
            lattice_mode: LatticeMode::AmbientLattice,
        }
    }

    /// Embedding for the lattice with the given basis (rows, linearly
    /// independent).
    pub fn from_basis(basis: Vec<IntVector>, dim: usize, lattice_mode: LatticeMode) -> Self {
        let rank = basis.len();
        let backward = IntMatrix::new(basis, dim).expect("basis rows have ambient length");
        let form = diagonalize(&backward);
        assert_eq!(form.rank, rank, "lattice basis must be linearly independent");
        let denominator = form.diagonal[..rank]
            .iter()
            .fold(BigInt::one(), |acc, d| acc.lcm(d));
        // forward = W[:, ..r] * diag(denominator / d_i) * U
        let mut scaled = IntMatrix::zeros(dim, rank);
        for i in 0..dim {
            for j in 0..rank {
                let v = form.w.get(i, j) * (&denominator / &form.diagonal[j]);
                scaled.set(i, j, v);
            }
        }
        let forward = scaled.mul(&form.u);
        LatticeEmbedding {
            forward,
            denominator,
            backward,
            rank,
            lattice_mode,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.backward.ncols()
    }

    /// Index of the working lattice in its saturation `Z^d ∩ span`.
    pub fn index(&self) -> BigInt {
        let form = diagonalize(&self.backward);
        form.diagonal[..self.rank].iter().product()
    }

    pub fn is_identity(&self) -> bool {
        self.rank == self.ambient_dim() && self.backward == IntMatrix::identity(self.rank)
    }

    /// Lattice coordinates of an ambient vector.
    pub fn to_lattice(&self, z: &[BigInt]) -> Result<IntVector> {
        if z.len() != self.ambient_dim() {
            return Err(Error::DimMismatch {
                expected: self.ambient_dim(),
                got: z.len(),
            });
        }
        let scaled = self.forward.vec_mul(z);
        let mut c = Vec::with_capacity(self.rank);
        for x in scaled {
            let (q, r) = x.div_rem(&self.denominator);
            if !r.is_zero() {
                return Err(Error::NotInLattice);
            }
            c.push(q);
        }
        if self.from_lattice(&c) != z {
            return Err(Error::NotInLattice);
        }
        Ok(c)
    }

    pub fn from_lattice(&self, c: &[BigInt]) -> IntVector {
        self.backward.vec_mul(c)
    }

    /// Restriction of an ambient linear form to the lattice, made primitive.
    /// `None` if the form vanishes on the lattice.
    pub fn form_to_lattice(&self, form: &[BigInt]) -> Option<IntVector> {
        let restricted = self.backward.mul_vec(form);
        primitive_part(&restricted).ok()
    }

    /// An ambient primitive form that agrees (up to a positive factor) with
    /// the lattice form on the working lattice.
    pub fn form_from_lattice(&self, form: &[BigInt]) -> IntVector {
        primitive_part(&self.forward.mul_vec(form)).expect("nonzero lattice form")
    }
}

/// Passes to coordinates in which the generators span a full-dimensional
/// cone.
pub fn to_full_dimensional(
    generators: &[IntVector],
    lattice_mode: LatticeMode,
) -> Result<(LatticeEmbedding, Vec<IntVector>)> {
    let dim = generators.first().map_or(0, Vec::len);
    if let Some(bad) = generators.iter().find(|g| g.len() != dim) {
        return Err(Error::DimMismatch {
            expected: dim,
            got: bad.len(),
        });
    }
    let nonzero: Vec<IntVector> = generators
        .iter()
        .filter(|g| !is_zero_vector(g))
        .cloned()
        .collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroCone);
    }
    let embedding = match lattice_mode {
        LatticeMode::GeneratedLattice => {
            LatticeEmbedding::from_basis(hermite_rows(&nonzero), dim, lattice_mode)
        }
        LatticeMode::AmbientLattice => {
            let annihilator = integer_kernel_basis(&IntMatrix::new(nonzero.clone(), dim)?);
            if annihilator.is_empty() {
                LatticeEmbedding::identity(dim)
            } else {
                let basis = integer_kernel_basis(&IntMatrix::new(annihilator, dim)?);
                LatticeEmbedding::from_basis(basis, dim, lattice_mode)
            }
        }
    };
    let transformed = generators
        .iter()
        .map(|g| embedding.to_lattice(g))
        .collect::<Result<Vec<_>>>()?;
    Ok((embedding, transformed))
}
