//! h-vectors and Hilbert polynomials of homogeneous cones.
//!
//! The cone is lifted into one more dimension by positive weights; the
//! facets of the lifted cone seen from below project to a regular
//! triangulation. Ordering them by the time at which a downward ray from an
//! interior point crosses their hyperplanes gives a shelling, and each cell
//! then contributes its parallelotope points in shifted degrees.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fm::{FmOptions, Hull};
use crate::linalg::{dot, rank_of_rows, solve_integer_system, IntMatrix, IntVector};
use crate::primal::{enumerate_par_points, OrderKind, SimplicialCell, Triangulation};

const WEIGHT_BUMPS: usize = 24;
const WEIGHT_ATTEMPTS: u64 = 8;

/// An integral form with value 1 on every generator, if one exists.
pub fn find_grading(generators: &[IntVector]) -> Option<IntVector> {
    let dim = generators.first()?.len();
    let m = IntMatrix::new(generators.to_vec(), dim).ok()?;
    let ones = vec![BigInt::one(); generators.len()];
    solve_integer_system(&m, &ones)
}

/// Generators extended by weights, plus the upward ray, with the hull of
/// the resulting cone.
#[derive(Clone, Debug)]
pub struct LiftedCone {
    /// `(v_i, w_i)`; the upward ray `(0, ..., 0, 1)` is hull generator
    /// `lifted_generators.len()`.
    pub lifted_generators: Vec<IntVector>,
    pub weights: Vec<BigInt>,
    pub hull: Hull,
}

impl LiftedCone {
    fn upward(&self) -> usize {
        self.lifted_generators.len()
    }

    /// Facets whose form has positive last coordinate.
    pub fn bottom_facets(&self) -> Vec<BottomFacet> {
        let up = self.upward();
        let d = self.hull.dim();
        self.hull
            .facets()
            .iter()
            .filter(|f| f.form[d - 1].is_positive())
            .map(|f| BottomFacet {
                support_form: f.form.clone(),
                generator_indices: f.incidence.ones().filter(|&g| g != up).collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct LiftOptions {
    /// Starting weights (default all 1); must be positive.
    pub initial_weights: Option<Vec<BigInt>>,
    /// Interior point given by positive coefficients on the lifted
    /// generators followed by one for the upward ray (default all 1).
    pub interior_coefficients: Option<Vec<BigInt>>,
    pub fm: FmOptions,
}

fn lift(v: &[BigInt], w: &BigInt) -> IntVector {
    let mut out = v.to_vec();
    out.push(w.clone());
    out
}

/// Lifts the (extreme) generators and computes the hull, raising weights
/// whenever a new lifted generator would land on the hyperplane of a
/// current bottom facet.
pub fn lift_and_hull(generators: &[IntVector], options: &LiftOptions) -> Result<LiftedCone> {
    let dim = generators.first().map_or(0, Vec::len);
    let m = generators.len();
    let base = match &options.initial_weights {
        Some(w) => {
            if w.len() != m {
                return Err(Error::DimMismatch {
                    expected: m,
                    got: w.len(),
                });
            }
            w.clone()
        }
        None => vec![BigInt::one(); m],
    };
    for attempt in 0..WEIGHT_ATTEMPTS {
        let weights: Vec<BigInt> = base
            .iter()
            .enumerate()
            .map(|(i, w)| w + perturbation(attempt, i))
            .collect();
        if let Some(lifted) = try_lift(generators, dim, weights, options)? {
            return Ok(lifted);
        }
    }
    Err(Error::WeightSearchExhausted)
}

/// Deterministic weight offsets for retries after a failed attempt.
fn perturbation(attempt: u64, i: usize) -> BigInt {
    if attempt == 0 {
        return BigInt::zero();
    }
    let i = i as u64 + 1;
    BigInt::from((i * i * (2 * attempt + 1) + i * attempt * 7) % 101)
}

fn try_lift(
    generators: &[IntVector],
    dim: usize,
    mut weights: Vec<BigInt>,
    options: &LiftOptions,
) -> Result<Option<LiftedCone>> {
    let m = generators.len();
    let mut hull_gens: Vec<IntVector> = generators
        .iter()
        .zip(&weights)
        .map(|(v, w)| lift(v, w))
        .collect();
    let mut up = vec![BigInt::zero(); dim + 1];
    up[dim] = BigInt::one();
    hull_gens.push(up);
    let mut hull = Hull::new(dim + 1, hull_gens, options.fm.clone())?;

    let mut basis = vec![m];
    let mut rows: Vec<IntVector> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        rows.push(g.clone());
        if rank_of_rows(&rows) == rows.len() {
            basis.push(i);
        } else {
            rows.pop();
        }
    }
    hull.start_simplex(&basis)?;
    for i in 0..m {
        if basis.contains(&i) {
            continue;
        }
        let mut bump = BigInt::one();
        let mut placed = false;
        for _ in 0..WEIGHT_BUMPS {
            let candidate = lift(&generators[i], &weights[i]);
            let on_bottom = hull
                .facets()
                .iter()
                .any(|f| f.form[dim].is_positive() && dot(&f.form, &candidate).is_zero());
            if !on_bottom {
                hull.set_pending_generator(i, candidate);
                placed = true;
                break;
            }
            weights[i] += &bump;
            bump *= 2;
        }
        if !placed {
            return Ok(None);
        }
        hull.insert_generator(i);
    }
    let lifted = LiftedCone {
        lifted_generators: hull.generators()[..m].to_vec(),
        weights,
        hull,
    };
    if lifted
        .bottom_facets()
        .iter()
        .any(|b| b.generator_indices.len() != dim)
    {
        return Ok(None);
    }
    Ok(Some(lifted))
}

/// A facet of the lifted cone visible from below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottomFacet {
    /// Integral form with positive last coordinate.
    pub support_form: IntVector,
    /// Indices of the lifted generators on the facet.
    pub generator_indices: Vec<usize>,
}

/// The default interior point: sum of all lifted generators and the upward
/// ray, or the combination given in the options.
pub fn interior_point(lifted: &LiftedCone, options: &LiftOptions) -> Result<IntVector> {
    let gens = lifted.hull.generators();
    let coeffs = match &options.interior_coefficients {
        Some(c) => {
            if c.len() != gens.len() {
                return Err(Error::DimMismatch {
                    expected: gens.len(),
                    got: c.len(),
                });
            }
            c.clone()
        }
        None => vec![BigInt::one(); gens.len()],
    };
    let mut x = vec![BigInt::zero(); lifted.hull.dim()];
    for (c, g) in coeffs.iter().zip(gens) {
        for (xi, gi) in x.iter_mut().zip(g) {
            *xi += c * gi;
        }
    }
    Ok(x)
}

/// Sorts bottom facets by the height at which the downward ray from `x`
/// crosses them, ties broken by the lexicographic order of the normalized
/// forms. Comparisons are exact cross-multiplications.
pub fn shelling_order(
    lifted: &LiftedCone,
    bottom: &[BottomFacet],
    x: &[BigInt],
) -> Result<Vec<usize>> {
    if lifted
        .hull
        .facets()
        .iter()
        .any(|f| !dot(&f.form, x).is_positive())
    {
        return Err(Error::NotInterior);
    }
    let last = x.len() - 1;
    let mut order: Vec<usize> = (0..bottom.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = &bottom[a].support_form;
        let fb = &bottom[b].support_form;
        // ρ_F(x) = σ_F(x) / σ_F[last], with σ_F[last] > 0
        let lhs = dot(fa, x) * &fb[last];
        let rhs = dot(fb, x) * &fa[last];
        lhs.cmp(&rhs).then_with(|| {
            fa.iter()
                .zip(fb)
                .map(|(p, q)| (p * &fb[last]).cmp(&(q * &fa[last])))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Ok(order)
}

/// A cell of a shelling with the vertices opposite to its facets already
/// covered by earlier cells.
#[derive(Clone, Debug)]
pub struct ShelledCell {
    pub cell: SimplicialCell,
    pub w: Vec<usize>,
}

/// Inserts the facets of each cell into a set in order; a facet met for the
/// second time is removed and contributes its opposite vertex to `W`.
pub fn compute_w_sets(cells: &[SimplicialCell]) -> Vec<ShelledCell> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    cells
        .iter()
        .map(|cell| {
            let mut w = Vec::new();
            for (k, &v) in cell.generator_indices.iter().enumerate() {
                let mut key = cell.generator_indices.clone();
                key.remove(k);
                if !seen.remove(&key) {
                    seen.insert(key);
                } else {
                    w.push(v);
                }
            }
            ShelledCell {
                cell: cell.clone(),
                w,
            }
        })
        .collect()
}

/// Checks that each cell meets the union of the earlier ones in a nonempty
/// union of its facets (cells are given by sorted generator indices of a
/// triangulation).
pub fn is_shelling(cells: &[SimplicialCell], dim: usize) -> bool {
    for (i, cell) in cells.iter().enumerate().skip(1) {
        let mine: BTreeSet<usize> = cell.generator_indices.iter().copied().collect();
        let meets: Vec<BTreeSet<usize>> = cells[..i]
            .iter()
            .map(|c| {
                c.generator_indices
                    .iter()
                    .copied()
                    .filter(|g| mine.contains(g))
                    .collect()
            })
            .collect();
        let facets: Vec<&BTreeSet<usize>> = meets.iter().filter(|s| s.len() + 1 == dim).collect();
        if facets.is_empty() {
            return false;
        }
        if !meets
            .iter()
            .all(|s| facets.iter().any(|f| s.is_subset(f)))
        {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub coefficients: Vec<BigInt>,
    pub dim: usize,
    pub grading: IntVector,
}

impl HVector {
    pub fn sum(&self) -> BigInt {
        self.coefficients.iter().sum()
    }
}

/// Which of the two equivalent exponent formulas to use per point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountingFormula {
    /// `|W ∪ [x]| - deg(x)` over the points of the parallelotope.
    Union,
    /// `|W \ [x]| + deg(x)`.
    Difference,
}

/// Counts the parallelotope points of every shelled cell in shifted degree.
pub fn h_vector(
    shelled: &[ShelledCell],
    generators: &[IntVector],
    grading: &[BigInt],
    formula: CountingFormula,
) -> HVector {
    let dim = grading.len();
    let mut coefficients = vec![BigInt::zero(); dim];
    for sc in shelled {
        for p in enumerate_par_points(&sc.cell, generators) {
            let deg = dot(grading, &p.vector);
            let in_x = |g: &usize| p.barycentric_support.contains(g);
            let exponent = match formula {
                CountingFormula::Difference => {
                    BigInt::from(sc.w.iter().filter(|g| !in_x(g)).count()) + deg
                }
                CountingFormula::Union => {
                    let extra = sc.w.iter().filter(|g| !in_x(g)).count();
                    BigInt::from(p.barycentric_support.len() + extra) - deg
                }
            };
            let k = usize::try_from(&exponent).expect("exponent is a small nonnegative integer");
            if k >= coefficients.len() {
                coefficients.resize(k + 1, BigInt::zero());
            }
            coefficients[k] += 1;
        }
    }
    HVector {
        coefficients,
        dim,
        grading: grading.to_vec(),
    }
}

/// Coefficients (constant term first) of `P(k) = Σ h_i C(k - i + d - 1, d - 1)`.
pub fn hilbert_polynomial(h: &HVector) -> Vec<BigRational> {
    let d = h.dim;
    if d == 0 {
        return Vec::new();
    }
    let mut factorial = BigInt::one();
    for j in 1..d {
        factorial *= j;
    }
    let mut total = vec![BigRational::zero(); d];
    for (i, hi) in h.coefficients.iter().enumerate() {
        if hi.is_zero() {
            continue;
        }
        // Π_{j=1}^{d-1} (k - i + j)
        let mut poly = vec![BigRational::one()];
        for j in 1..d {
            let c = BigRational::from_integer(BigInt::from(j as i64 - i as i64));
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (e, a) in poly.iter().enumerate() {
                next[e + 1] += a;
                next[e] += a * &c;
            }
            poly = next;
        }
        for (e, a) in poly.into_iter().enumerate() {
            total[e] += a * BigRational::from_integer(hi.clone()) / BigRational::from_integer(factorial.clone());
        }
    }
    total
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn eval_polynomial(coeffs: &[BigRational], k: i64) -> BigRational {
    let k = BigRational::from_integer(BigInt::from(k));
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &k + c)
}

/// Result of the h-vector computation for a cone.
#[derive(Clone, Debug)]
pub struct HilbertSeries {
    pub h_vector: HVector,
    pub polynomial: Vec<BigRational>,
    /// Cells in shelling order; indices refer to `generators`.
    pub triangulation: Triangulation,
    /// Extreme generators in lattice coordinates.
    pub generators: Vec<IntVector>,
    pub weights: Vec<BigInt>,
}

impl HilbertSeries {
    pub fn total_multiplicity(&self) -> BigInt {
        self.triangulation.total_multiplicity()
    }
}

/// The shelled triangulation of the extreme generators of a pointed
/// full-dimensional cone (lattice coordinates).
pub fn shelled_triangulation(
    generators: &[IntVector],
    options: &LiftOptions,
) -> Result<(Triangulation, Vec<BigInt>)> {
    let lifted = lift_and_hull(generators, options)?;
    let bottom = lifted.bottom_facets();
    let x = interior_point(&lifted, options)?;
    let order = shelling_order(&lifted, &bottom, &x)?;
    let cells = order
        .into_iter()
        .map(|i| SimplicialCell::new(bottom[i].generator_indices.clone(), generators))
        .collect();
    Ok((
        Triangulation {
            cells,
            order_kind: OrderKind::Shelling,
        },
        lifted.weights,
    ))
}

pub fn hilbert_series(cone: &Cone, options: &LiftOptions) -> Result<HilbertSeries> {
    if !cone.is_pointed() {
        return Err(Error::NotPointed);
    }
    let grading = find_grading(&cone.lattice_generators).ok_or(Error::NotHomogeneous)?;
    let generators: Vec<IntVector> = cone
        .extreme_generator_indices()
        .into_iter()
        .map(|i| cone.lattice_generators[i].clone())
        .collect();
    let (triangulation, weights) = shelled_triangulation(&generators, options)?;
    let shelled = compute_w_sets(&triangulation.cells);
    let h = h_vector(&shelled, &generators, &grading, CountingFormula::Difference);
    let polynomial = hilbert_polynomial(&h);
    Ok(HilbertSeries {
        h_vector: h,
        polynomial,
        triangulation,
        generators,
        weights,
    })
}
