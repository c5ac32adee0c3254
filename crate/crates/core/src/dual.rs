//! Hilbert bases by successive cuts with halfspaces.
//!
//! Starting from the whole lattice (Hilbert basis empty, unit group
//! everything) the cone is cut by one inequality at a time. For each cut the
//! Hilbert bases of both halves are grown by forming sums of elements on
//! opposite sides until auto-reduction stabilizes.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::SupportForm;
use crate::error::Result;
use crate::linalg::{
    add, dot, extended_gcd, integer_kernel_basis, is_zero_vector, neg, primitive_part, IntMatrix,
    IntVector,
};

/// An element of a working Hilbert basis with its cached form values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub vector: IntVector,
    /// Values of the forms inserted so far.
    pub sigma: Vec<BigInt>,
}

/// Hilbert basis (modulo units) and unit group of the current monoid.
#[derive(Clone, Debug)]
pub struct DualState {
    pub hilbert_basis: Vec<BasisElement>,
    pub unit_basis: Vec<IntVector>,
    pub inserted_forms: Vec<SupportForm>,
}

impl DualState {
    /// The whole lattice `Z^rank`.
    pub fn full_lattice(rank: usize) -> Self {
        let unit_basis = (0..rank)
            .map(|i| {
                let mut e = vec![BigInt::zero(); rank];
                e[i] = BigInt::one();
                e
            })
            .collect();
        DualState {
            hilbert_basis: Vec::new(),
            unit_basis,
            inserted_forms: Vec::new(),
        }
    }

    pub fn vectors(&self) -> Vec<IntVector> {
        self.hilbert_basis.iter().map(|b| b.vector.clone()).collect()
    }
}

/// Result of one cut.
#[derive(Clone, Debug)]
pub struct CutOutcome {
    pub plus_state: DualState,
    /// Hilbert basis of the negative half.
    pub minus_basis: Vec<IntVector>,
    /// The unit `h` with positive value, when the form did not vanish on the
    /// unit group.
    pub h_element: Option<IntVector>,
    /// Number of sum-forming rounds until stabilization.
    pub rounds: usize,
}

#[derive(Clone, Debug)]
struct Work {
    vector: IntVector,
    sigma: Vec<BigInt>,
    lambda: BigInt,
    /// Total degree in the half containing the element. Elements with
    /// `lambda = 0` lie in both halves with the same value.
    tdeg: BigInt,
    /// `[tdeg, lambda, sigma...]` as machine integers when they fit; the
    /// reduction tests run on these whenever both sides have them.
    small: Option<Box<[i64]>>,
    generation: usize,
    /// Value on the form of the summand on the same side, for sums.
    hint: Option<BigInt>,
}

impl Work {
    fn new(vector: IntVector, sigma: Vec<BigInt>, lambda: BigInt, generation: usize, hint: Option<BigInt>) -> Self {
        let tdeg = sigma.iter().sum::<BigInt>() + lambda.abs();
        let small = std::iter::once(&tdeg)
            .chain(std::iter::once(&lambda))
            .chain(&sigma)
            .map(|v| v.to_i64().filter(|x| x.unsigned_abs() < 1 << 62))
            .collect::<Option<Box<[i64]>>>();
        Work {
            vector,
            sigma,
            lambda,
            tdeg,
            small,
            generation,
            hint,
        }
    }
}

/// `x - y` lies in the half selected by `side`.
fn reduces_in(y: &Work, x: &Work, side: i32) -> bool {
    if let (Some(ys), Some(xs)) = (&y.small, &x.small) {
        let ok = ys[0] <= xs[0]
            && if side > 0 { xs[1] >= ys[1] } else { xs[1] <= ys[1] }
            && xs[2..].iter().zip(&ys[2..]).all(|(a, b)| a >= b);
        return ok && x.vector != y.vector;
    }
    if y.tdeg > x.tdeg {
        return false;
    }
    let ok = if side > 0 {
        x.lambda >= y.lambda
    } else {
        x.lambda <= y.lambda
    };
    ok && x.sigma.iter().zip(&y.sigma).all(|(a, b)| a >= b) && x.vector != y.vector
}

/// Some element of `list` (sorted by total degree) reduces `x`.
fn reducible_by(list: &[Work], x: &Work, side: i32) -> bool {
    list.iter()
        .take_while(|y| match (&y.small, &x.small) {
            (Some(a), Some(b)) => a[0] <= b[0],
            _ => y.tdeg <= x.tdeg,
        })
        .any(|y| reduces_in(y, x, side))
}

fn auto_reduce_side(mut elems: Vec<Work>, side: i32) -> Vec<Work> {
    elems.retain(|e| !e.tdeg.is_zero());
    elems.sort_by(|a, b| (&a.tdeg, &a.vector).cmp(&(&b.tdeg, &b.vector)));
    elems.dedup_by(|a, b| a.vector == b.vector);
    let mut kept: Vec<Work> = Vec::with_capacity(elems.len());
    for e in elems {
        if !reducible_by(&kept, &e, side) {
            kept.push(e);
        }
    }
    kept
}

/// Adds the survivors of the immediate test to an already reduced list.
/// Old elements only need to be checked against the new ones. Returns
/// whether anything was added.
fn merge_side(list: &mut Vec<Work>, new: Vec<Work>, side: i32) -> bool {
    let new = auto_reduce_side(new, side);
    if new.is_empty() {
        return false;
    }
    list.retain(|old| !reducible_by(&new, old, side));
    list.extend(new);
    // stable, and cheap on the two sorted runs
    list.sort_by(|a, b| a.tdeg.cmp(&b.tdeg));
    true
}

/// Cuts the monoid of `state` by the halfspace `lambda >= 0`.
pub fn cut_by_halfspace(state: &DualState, lambda: &SupportForm) -> CutOutcome {
    let lam = &lambda.coeffs;
    let values: Vec<BigInt> = state.unit_basis.iter().map(|u| dot(lam, u)).collect();

    // units of the cut monoid and the complementary unit h
    let (unit_basis, h) = if values.iter().all(Zero::is_zero) {
        (state.unit_basis.clone(), None)
    } else {
        let row = IntMatrix::from_rows(vec![values.clone()]);
        let kernel = integer_kernel_basis(&row);
        let combine = |coeffs: &[BigInt]| -> IntVector {
            let mut v = vec![BigInt::zero(); lam.len()];
            for (c, u) in coeffs.iter().zip(&state.unit_basis) {
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi += c * ui;
                }
            }
            v
        };
        let units: Vec<IntVector> = kernel.iter().map(|c| combine(c)).collect();
        let coeffs = gcd_coefficients(&values);
        let h = combine(&coeffs);
        (units, Some(h))
    };
    let h_value = h.as_ref().map(|h| dot(lam, h));

    let mut plus: Vec<Work> = Vec::new();
    let mut minus: Vec<Work> = Vec::new();
    let push = |w: Work, plus: &mut Vec<Work>, minus: &mut Vec<Work>| {
        if !w.lambda.is_negative() {
            plus.push(w.clone());
        }
        if !w.lambda.is_positive() {
            minus.push(w);
        }
    };
    for b in &state.hilbert_basis {
        let mut vector = b.vector.clone();
        let mut value = dot(lam, &vector);
        if let (Some(h), Some(hv)) = (&h, &h_value) {
            // bring |λ(x)| below λ(h)
            let a = if value.is_negative() {
                -((-&value).div_floor(hv))
            } else {
                value.div_floor(hv)
            };
            if !a.is_zero() {
                for (x, y) in vector.iter_mut().zip(h) {
                    *x -= &a * y;
                }
                value -= &a * hv;
            }
        }
        push(
            Work::new(vector, b.sigma.clone(), value, 0, None),
            &mut plus,
            &mut minus,
        );
    }
    if let (Some(h), Some(hv)) = (&h, &h_value) {
        let zeros = vec![BigInt::zero(); state.inserted_forms.len()];
        plus.push(Work::new(h.clone(), zeros.clone(), hv.clone(), 0, None));
        minus.push(Work::new(neg(h), zeros, -hv, 0, None));
    }

    let mut plus = auto_reduce_side(plus, 1);
    let mut minus = auto_reduce_side(minus, -1);
    // a sum equal to a listed element must not enter a second time
    let mut seen: HashSet<IntVector> = plus.iter().chain(&minus).map(|w| w.vector.clone()).collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut new_plus: Vec<Work> = Vec::new();
        let mut new_minus: Vec<Work> = Vec::new();
        // only pairs with a member from the previous round are new
        let fresh = |w: &&Work| w.generation + 1 == rounds;
        let (fresh_pos, old_pos): (Vec<&Work>, Vec<&Work>) =
            plus.iter().filter(|x| x.lambda.is_positive()).partition(fresh);
        let negative: Vec<&Work> = minus.iter().filter(|y| y.lambda.is_negative()).collect();
        let fresh_neg: Vec<&Work> = negative.iter().copied().filter(fresh).collect();
        let pairs = fresh_pos
            .iter()
            .flat_map(|x| negative.iter().map(move |y| (*x, *y)))
            .chain(old_pos.iter().flat_map(|x| fresh_neg.iter().map(move |y| (*x, *y))));
        for (x, y) in pairs {
            if x.hint.as_ref().is_some_and(|hx| y.lambda < -hx) {
                continue;
            }
            if y.hint.as_ref().is_some_and(|hy| x.lambda > -hy) {
                continue;
            }
            let vector = add(&x.vector, &y.vector);
            if is_zero_vector(&vector) || !seen.insert(vector.clone()) {
                continue;
            }
            let lambda = &x.lambda + &y.lambda;
            let hint = if lambda.is_positive() {
                Some(x.lambda.clone())
            } else if lambda.is_negative() {
                Some(y.lambda.clone())
            } else {
                None
            };
            let sigma = x.sigma.iter().zip(&y.sigma).map(|(a, b)| a + b).collect();
            let sum = Work::new(vector, sigma, lambda, rounds, hint);
            if !sum.lambda.is_negative() && !reducible_by(&plus, &sum, 1) {
                new_plus.push(sum.clone());
            }
            if !sum.lambda.is_positive() && !reducible_by(&minus, &sum, -1) {
                new_minus.push(sum);
            }
        }
        let grew_plus = merge_side(&mut plus, new_plus, 1);
        let grew_minus = merge_side(&mut minus, new_minus, -1);
        if !grew_plus && !grew_minus {
            break;
        }
    }

    let mut inserted_forms = state.inserted_forms.clone();
    inserted_forms.push(lambda.clone());
    let hilbert_basis = plus
        .into_iter()
        .map(|w| {
            let mut sigma = w.sigma;
            sigma.push(w.lambda);
            BasisElement {
                vector: w.vector,
                sigma,
            }
        })
        .collect();
    CutOutcome {
        plus_state: DualState {
            hilbert_basis,
            unit_basis,
            inserted_forms,
        },
        minus_basis: minus.into_iter().map(|w| w.vector).collect(),
        h_element: h,
        rounds,
    }
}

/// Coefficients `a` with `Σ a_k v_k = gcd(v)`.
fn gcd_coefficients(values: &[BigInt]) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); values.len()];
    let mut g = BigInt::zero();
    for (k, v) in values.iter().enumerate() {
        let (g2, s, t) = extended_gcd(&g, v);
        for c in coeffs[..k].iter_mut() {
            *c *= &s;
        }
        coeffs[k] = t;
        g = g2;
    }
    coeffs
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderStrategy {
    /// Prefer forms that are negative on few basis elements and vanish on
    /// many units.
    #[default]
    Heuristic,
    InputOrder,
}

/// Orders the forms for insertion into the given state. The heuristic
/// scores a form by the number of basis elements on which it is negative
/// plus the number of unit basis vectors on which it does not vanish;
/// lower scores go first, ties keep input order.
pub fn order_hyperplanes(
    state: &DualState,
    forms: &[SupportForm],
    strategy: OrderStrategy,
) -> Vec<usize> {
    let mut order: Vec<usize> = (0..forms.len()).collect();
    if strategy == OrderStrategy::Heuristic {
        let score = |f: &SupportForm| {
            state
                .hilbert_basis
                .iter()
                .filter(|b| f.eval(&b.vector).is_negative())
                .count()
                + state
                    .unit_basis
                    .iter()
                    .filter(|u| !f.eval(u).is_zero())
                    .count()
        };
        let scores: Vec<usize> = forms.iter().map(score).collect();
        order.sort_by_key(|&i| scores[i]);
    }
    order
}

/// Output of the dual algorithm.
#[derive(Clone, Debug)]
pub struct DualResult {
    /// Hilbert basis modulo units, sorted lexicographically.
    pub hilbert_basis: Vec<IntVector>,
    /// Basis of the unit group; empty iff the cone is pointed.
    pub unit_basis: Vec<IntVector>,
    /// Indices of the inequalities in the order they were used.
    pub order: Vec<usize>,
    /// Rounds needed by each cut.
    pub rounds: Vec<usize>,
}

/// Runs the cuts in lattice coordinates of rank `rank`.
pub fn dual_in_lattice(
    forms: &[IntVector],
    rank: usize,
    strategy: OrderStrategy,
) -> Result<DualResult> {
    let forms: Vec<SupportForm> = forms
        .iter()
        .filter(|f| !is_zero_vector(f))
        .map(|f| SupportForm::new(f))
        .collect::<Result<_>>()?;
    let mut state = DualState::full_lattice(rank);
    let mut remaining: Vec<usize> = (0..forms.len()).collect();
    let mut order = Vec::new();
    let mut rounds = Vec::new();
    while !remaining.is_empty() {
        let candidates: Vec<SupportForm> = remaining.iter().map(|&i| forms[i].clone()).collect();
        let pick = order_hyperplanes(&state, &candidates, strategy)[0];
        let idx = remaining.remove(pick);
        let outcome = cut_by_halfspace(&state, &forms[idx]);
        rounds.push(outcome.rounds);
        order.push(idx);
        state = outcome.plus_state;
    }
    let mut hilbert_basis = state.vectors();
    hilbert_basis.sort();
    Ok(DualResult {
        hilbert_basis,
        unit_basis: state.unit_basis,
        order,
        rounds,
    })
}

/// Hilbert basis of `{x in Z^d : equations(x) = 0, forms(x) >= 0}`.
pub fn dual_hilbert_basis(
    forms: &[IntVector],
    equations: &[IntVector],
    dim: usize,
    strategy: OrderStrategy,
) -> Result<DualResult> {
    if equations.is_empty() {
        return dual_in_lattice(forms, dim, strategy);
    }
    let kernel = integer_kernel_basis(&IntMatrix::new(equations.to_vec(), dim)?);
    let basis = IntMatrix::new(kernel, dim)?;
    let restricted: Vec<IntVector> = forms
        .iter()
        .map(|f| {
            let r = basis.mul_vec(f);
            primitive_part(&r).unwrap_or(r)
        })
        .collect();
    let inner = dual_in_lattice(&restricted, basis.nrows(), strategy)?;
    let mut hilbert_basis: Vec<IntVector> =
        inner.hilbert_basis.iter().map(|c| basis.vec_mul(c)).collect();
    hilbert_basis.sort();
    Ok(DualResult {
        hilbert_basis,
        unit_basis: inner.unit_basis.iter().map(|c| basis.vec_mul(c)).collect(),
        order: inner.order,
        rounds: inner.rounds,
    })
}
