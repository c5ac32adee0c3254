//! Hilbert bases by triangulation and enumeration of fundamental
//! parallelotopes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{ingest, standard_map, Cone};
use crate::error::{Error, Result};
use crate::fm::{FacetRecord, FmOptions, Hull};
use crate::linalg::{
    adjugate, diagonalize, is_zero_vector, to_full_dimensional, IntMatrix, IntVector, LatticeMode,
};
use crate::reduction::{reduce_to_hilbert_basis, Candidate};

/// A simplicial cone spanned by linearly independent generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCell {
    pub generator_indices: Vec<usize>,
    pub multiplicity: BigInt,
}

impl SimplicialCell {
    pub fn new(mut generator_indices: Vec<usize>, generators: &[IntVector]) -> Self {
        generator_indices.sort_unstable();
        let m = cell_matrix(&generator_indices, generators);
        let multiplicity = crate::linalg::determinant_abs(&m).expect("cell matrix is square");
        SimplicialCell {
            generator_indices,
            multiplicity,
        }
    }

    pub fn vectors(&self, generators: &[IntVector]) -> Vec<IntVector> {
        self.generator_indices
            .iter()
            .map(|&i| generators[i].clone())
            .collect()
    }
}

fn cell_matrix(indices: &[usize], generators: &[IntVector]) -> IntMatrix {
    IntMatrix::from_rows(indices.iter().map(|&i| generators[i].clone()).collect())
}

/// A lattice point of the semi-open parallelotope of a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParPoint {
    pub vector: IntVector,
    /// Generators (global indices) with nonzero coefficient.
    pub barycentric_support: Vec<usize>,
    /// Degree under a grading, filled in by the h-vector computation.
    pub degree: Option<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Lexicographic,
    Shelling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub cells: Vec<SimplicialCell>,
    pub order_kind: OrderKind,
}

impl Triangulation {
    /// The single cell over the starting simplex.
    pub fn simplex(basis: &[usize], generators: &[IntVector]) -> Self {
        Triangulation {
            cells: vec![SimplicialCell::new(basis.to_vec(), generators)],
            order_kind: OrderKind::Lexicographic,
        }
    }

    pub fn total_multiplicity(&self) -> BigInt {
        self.cells.iter().map(|c| &c.multiplicity).sum()
    }
}

/// Adds the cells `F + R_+ x_new` for every facet `F` of an existing cell
/// that lies in a facet of the old cone visible from `x_new`.
pub fn extend_lex_triangulation(
    tri: &mut Triangulation,
    generators: &[IntVector],
    x_new: usize,
    visible: &[FacetRecord],
) {
    let Some(d) = generators.first().map(Vec::len) else {
        return;
    };
    let mut added = Vec::new();
    for cell in &tri.cells {
        for facet in visible {
            let on: Vec<usize> = cell
                .generator_indices
                .iter()
                .copied()
                .filter(|&g| facet.incidence.contains(g))
                .collect();
            if on.len() + 1 == d {
                let mut idx = on;
                idx.push(x_new);
                added.push(SimplicialCell::new(idx, generators));
            }
        }
    }
    tri.cells.extend(added);
}

/// One representative of each class of `Z^d` modulo the lattice spanned by
/// the cell generators, reduced into the semi-open parallelotope. The zero
/// vector is included.
pub fn enumerate_par_points(cell: &SimplicialCell, generators: &[IntVector]) -> Vec<ParPoint> {
    let v = cell_matrix(&cell.generator_indices, generators);
    let d = v.nrows();
    let (adj, det) = adjugate(&v).expect("cell matrix is square");
    // rows of V span the same lattice as the rows of D * W^{-1}
    let form = diagonalize(&v);
    let elementary: Vec<BigInt> = form.diagonal.clone();
    let mut out = Vec::new();
    let mut y = vec![BigInt::zero(); d];
    loop {
        let z = form.w_inv.vec_mul(&y);
        let numerators = adj.vec_mul(&z);
        let mut x = z;
        let mut support = Vec::new();
        for (k, n) in numerators.iter().enumerate() {
            let q = n.div_floor(&det);
            if !q.is_zero() {
                for (xi, vi) in x.iter_mut().zip(v.row(k)) {
                    *xi -= &q * vi;
                }
            }
            if !(n - &q * &det).is_zero() {
                support.push(cell.generator_indices[k]);
            }
        }
        out.push(ParPoint {
            vector: x,
            barycentric_support: support,
            degree: None,
        });
        // odometer over the box 0 <= y_i < d_i
        let mut k = 0;
        loop {
            if k == d {
                return out;
            }
            y[k] += 1;
            if y[k] < elementary[k] {
                break;
            }
            y[k] = BigInt::zero();
            k += 1;
        }
    }
}

/// Everything the primal algorithm computes about a cone.
#[derive(Clone, Debug)]
pub struct HilbertResult {
    pub cone: Cone,
    /// Hilbert basis in ambient coordinates, sorted lexicographically.
    pub hilbert_basis: Vec<IntVector>,
    pub support_forms: Vec<IntVector>,
    pub extreme_rays: Vec<IntVector>,
    /// Cells refer to `cone.lattice_generators`.
    pub triangulation: Triangulation,
    pub total_multiplicity: BigInt,
}

/// Builds the cone and its lexicographic triangulation in lattice
/// coordinates, inserting generators in list order.
pub fn triangulated_cone(
    generators: &[IntVector],
    lattice_mode: LatticeMode,
    options: FmOptions,
) -> Result<(Cone, Triangulation)> {
    let generators = ingest(generators);
    let (embedding, lattice) = to_full_dimensional(&generators, lattice_mode)?;
    let mut hull = Hull::new(embedding.rank, lattice.clone(), options)?;
    let basis = hull.independent_prefix();
    hull.start_simplex(&basis)?;
    let mut tri = Triangulation::simplex(&basis, &lattice);
    for i in 0..lattice.len() {
        if basis.contains(&i) {
            continue;
        }
        let ins = hull.insert_generator(i);
        extend_lex_triangulation(&mut tri, &lattice, i, &ins.visible);
    }
    let cone = Cone::assemble(generators, lattice, embedding, &hull);
    Ok((cone, tri))
}

pub fn primal_hilbert_basis(
    generators: &[IntVector],
    lattice_mode: LatticeMode,
) -> Result<HilbertResult> {
    primal_hilbert_basis_with(generators, lattice_mode, FmOptions::default())
}

pub fn primal_hilbert_basis_with(
    generators: &[IntVector],
    lattice_mode: LatticeMode,
    options: FmOptions,
) -> Result<HilbertResult> {
    let (cone, triangulation) = triangulated_cone(generators, lattice_mode, options)?;
    if !cone.is_pointed() {
        return Err(Error::NotPointed);
    }
    let lattice = &cone.lattice_generators;
    let mut pool: BTreeSet<IntVector> = BTreeSet::new();
    for cell in &triangulation.cells {
        for p in enumerate_par_points(cell, lattice) {
            if !is_zero_vector(&p.vector) {
                pool.insert(p.vector);
            }
        }
        for &g in &cell.generator_indices {
            pool.insert(lattice[g].clone());
        }
    }
    let mut candidates = pool
        .into_iter()
        .map(|x| standard_map(&x, &cone.support_forms).map(Candidate::new))
        .collect::<Result<Vec<_>>>()?;
    candidates.sort_by(|a, b| (&a.value.tdeg, &a.value.vector).cmp(&(&b.value.tdeg, &b.value.vector)));
    let reduced = reduce_to_hilbert_basis(candidates)?;
    debug_assert!(reduced.iter().all(|g| g.tdeg.is_positive()));
    let mut hilbert_basis: Vec<IntVector> = reduced
        .iter()
        .map(|g| cone.embedding.from_lattice(&g.vector))
        .collect();
    hilbert_basis.sort();
    let total_multiplicity = triangulation.total_multiplicity();
    Ok(HilbertResult {
        support_forms: cone.ambient_support_forms(),
        extreme_rays: cone.extreme_rays(),
        hilbert_basis,
        triangulation,
        total_multiplicity,
        cone,
    })
}
