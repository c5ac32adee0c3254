//! Running a problem end to end.

use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Number, Value};

use crate::cone::Cone;
use crate::dual::{dual_hilbert_basis, dual_in_lattice, OrderStrategy};
use crate::error::{Error, Result};
use crate::fm::dual_cone;
use crate::io::{Algorithm, InputMode, ProblemInput};
use crate::linalg::{
    integer_kernel_basis, is_zero_vector, neg, primitive_part, rank_of_rows, IntMatrix, IntVector,
    LatticeMode,
};
use crate::primal::primal_hilbert_basis;
use crate::shelling::{hilbert_series, LiftOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationSummary {
    pub cells: usize,
    pub total_multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVectorReport {
    pub coefficients: Vec<BigInt>,
    /// Ascending coefficients of the Hilbert polynomial.
    pub polynomial: Vec<BigRational>,
    /// Grading in lattice coordinates.
    pub grading: IntVector,
    pub shelling_cells: usize,
}

/// Everything computed for one problem. All row lists are sorted
/// lexicographically.
#[derive(Clone, Debug)]
pub struct Report {
    pub input_mode: InputMode,
    pub algorithm: Algorithm,
    pub lattice_mode: LatticeMode,
    pub ambient_dim: usize,
    /// Dimension of the cone.
    pub dim: usize,
    pub pointed: bool,
    pub hilbert_basis: Vec<IntVector>,
    pub extreme_rays: Vec<IntVector>,
    /// Facets of the cone as primitive ambient forms.
    pub support_hyperplanes: Vec<IntVector>,
    /// Size of the inequality system the cone was given by or computed as:
    /// the facets for generator input, the input rows for hyperplane input,
    /// and the sign conditions plus both halves of every equation for
    /// equation input.
    pub num_inequalities: usize,
    pub unit_basis: Vec<IntVector>,
    pub triangulation: Option<TriangulationSummary>,
    pub h_vector: Option<HVectorReport>,
    /// Why the h-vector is missing when it was requested.
    pub h_vector_note: Option<String>,
    /// Wall-clock time per phase; not written to result files.
    pub timings: Vec<(&'static str, Duration)>,
}

fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

fn rows(m: &[IntVector]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(int).collect())).collect())
}

impl Report {
    /// The machine-readable report (timings excluded, so identical runs
    /// give identical output).
    pub fn to_json(&self) -> Value {
        json!({
            "input_mode": self.input_mode,
            "algorithm": self.algorithm,
            "lattice_mode": self.lattice_mode,
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "pointed": self.pointed,
            "num_hilbert_basis": self.hilbert_basis.len(),
            "num_extreme_rays": self.extreme_rays.len(),
            "num_support_hyperplanes": self.support_hyperplanes.len(),
            "num_inequalities": self.num_inequalities,
            "hilbert_basis": rows(&self.hilbert_basis),
            "extreme_rays": rows(&self.extreme_rays),
            "support_hyperplanes": rows(&self.support_hyperplanes),
            "unit_basis": rows(&self.unit_basis),
            "triangulation": self.triangulation.as_ref().map(|t| json!({
                "cells": t.cells,
                "total_multiplicity": int(&t.total_multiplicity),
            })),
            "h_vector": self.h_vector.as_ref().map(|h| Value::Array(h.coefficients.iter().map(int).collect())),
            "hilbert_polynomial": self.h_vector.as_ref().map(|h| {
                h.polynomial.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect::<Vec<_>>()
            }),
            "grading": self.h_vector.as_ref().map(|h| Value::Array(h.grading.iter().map(int).collect())),
            "h_vector_note": self.h_vector_note,
        })
    }
}

struct Timer {
    start: Instant,
    laps: Vec<(&'static str, Duration)>,
}

impl Timer {
    fn new() -> Self {
        Timer {
            start: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, name: &'static str) {
        let now = Instant::now();
        self.laps.push((name, now - self.start));
        self.start = now;
    }
}

/// Extreme rays (ambient) of `{x : equations(x) = 0, forms(x) >= 0}`.
pub fn generators_from_inequalities(
    forms: &[IntVector],
    equations: &[IntVector],
    dim: usize,
) -> Result<Vec<IntVector>> {
    let basis = if equations.is_empty() {
        IntMatrix::identity(dim)
    } else {
        IntMatrix::new(integer_kernel_basis(&IntMatrix::new(equations.to_vec(), dim)?), dim)?
    };
    let rank = basis.nrows();
    if rank == 0 {
        return Err(Error::ZeroCone);
    }
    let restricted: Vec<IntVector> = forms
        .iter()
        .map(|f| basis.mul_vec(f))
        .filter(|f| !is_zero_vector(f))
        .map(|f| primitive_part(&f))
        .collect::<Result<_>>()?;
    if rank_of_rows(&restricted) < rank {
        return Err(Error::NotPointed);
    }
    let rays = dual_cone(&restricted)?;
    if rays.is_empty() {
        return Err(Error::ZeroCone);
    }
    Ok(rays.iter().map(|r| basis.vec_mul(&r.coeffs)).collect())
}

fn coordinate_forms(dim: usize) -> Vec<IntVector> {
    IntMatrix::identity(dim).into_rows()
}

pub fn run(problem: &ProblemInput) -> Result<Report> {
    let mut timer = Timer::new();
    let dim = problem.matrix.ncols();
    let input = problem.matrix.rows().to_vec();
    let lattice_mode = problem.effective_lattice_mode();
    let algorithm = problem.options.algorithm;

    let num_inequalities_input = match problem.mode {
        InputMode::Generators => None,
        InputMode::Hyperplanes => Some(input.len()),
        InputMode::Equations => Some(dim + 2 * input.len()),
    };

    let mut triangulation = None;
    let mut unit_basis = Vec::new();
    let (cone, hilbert_basis): (Option<Cone>, Vec<IntVector>) = match algorithm {
        Algorithm::Primal => {
            let generators = match problem.mode {
                InputMode::Generators => input.clone(),
                InputMode::Hyperplanes => generators_from_inequalities(&input, &[], dim)?,
                InputMode::Equations => {
                    generators_from_inequalities(&coordinate_forms(dim), &input, dim)?
                }
            };
            timer.lap("generators");
            let res = primal_hilbert_basis(&generators, lattice_mode)?;
            timer.lap("primal");
            triangulation = Some(TriangulationSummary {
                cells: res.triangulation.cells.len(),
                total_multiplicity: res.total_multiplicity.clone(),
            });
            (Some(res.cone), res.hilbert_basis)
        }
        Algorithm::Dual => match problem.mode {
            InputMode::Generators => {
                let cone = Cone::from_generators(&input, lattice_mode)?;
                timer.lap("support forms");
                let forms: Vec<IntVector> =
                    cone.support_forms.iter().map(|f| f.coeffs.clone()).collect();
                let res = dual_in_lattice(&forms, cone.rank(), OrderStrategy::Heuristic)?;
                timer.lap("dual");
                let mut hb: Vec<IntVector> = res
                    .hilbert_basis
                    .iter()
                    .map(|c| cone.embedding.from_lattice(c))
                    .collect();
                hb.sort();
                unit_basis = res
                    .unit_basis
                    .iter()
                    .map(|c| cone.embedding.from_lattice(c))
                    .collect();
                (Some(cone), hb)
            }
            InputMode::Hyperplanes | InputMode::Equations => {
                let (forms, equations) = if problem.mode == InputMode::Hyperplanes {
                    (input.clone(), Vec::new())
                } else {
                    (coordinate_forms(dim), input.clone())
                };
                let res = dual_hilbert_basis(&forms, &equations, dim, OrderStrategy::Heuristic)?;
                timer.lap("dual");
                unit_basis = res.unit_basis.clone();
                // the cone is generated by the basis together with ± the units
                let mut gens = res.hilbert_basis.clone();
                for u in &res.unit_basis {
                    gens.push(u.clone());
                    gens.push(neg(u));
                }
                let cone = if gens.is_empty() {
                    None
                } else {
                    Some(Cone::from_generators(&gens, LatticeMode::AmbientLattice)?)
                };
                timer.lap("support forms");
                (cone, res.hilbert_basis)
            }
        },
    };

    let (dim_c, pointed, extreme_rays, support_hyperplanes) = match &cone {
        Some(c) => (c.rank(), c.is_pointed(), c.extreme_rays(), c.ambient_support_forms()),
        None => (0, true, Vec::new(), Vec::new()),
    };
    let num_inequalities = num_inequalities_input.unwrap_or(support_hyperplanes.len());

    let mut h_vector = None;
    let mut h_vector_note = None;
    if problem.options.compute_hvector {
        match cone.as_ref().map(|c| hilbert_series(c, &LiftOptions::default())) {
            Some(Ok(s)) => {
                h_vector = Some(HVectorReport {
                    coefficients: s.h_vector.coefficients.clone(),
                    polynomial: s.polynomial.clone(),
                    grading: s.h_vector.grading.clone(),
                    shelling_cells: s.triangulation.cells.len(),
                });
            }
            Some(Err(Error::NotHomogeneous)) => {
                h_vector_note = Some("not homogeneous: no grading gives all generators degree 1".into());
            }
            Some(Err(Error::NotPointed)) => {
                h_vector_note = Some("cone is not pointed".into());
            }
            Some(Err(e)) => return Err(e),
            None => h_vector_note = Some("zero cone".into()),
        }
        timer.lap("h-vector");
    }

    let mut unit_basis = unit_basis;
    unit_basis.sort();
    Ok(Report {
        input_mode: problem.mode,
        algorithm,
        lattice_mode,
        ambient_dim: dim,
        dim: dim_c,
        pointed,
        hilbert_basis,
        extreme_rays,
        support_hyperplanes,
        num_inequalities,
        unit_basis,
        triangulation,
        h_vector,
        h_vector_note,
        timings: timer.laps,
    })
}
