//! Reduction of candidate sets to Hilbert bases.

use std::collections::VecDeque;

use num_bigint::BigInt;

use crate::cone::GradedValue;
use crate::error::{Error, Result};

/// An element awaiting reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub value: GradedValue,
    /// Round in which the element was produced (used by the dual algorithm).
    pub generation: usize,
    /// Cached value of the form currently being processed.
    pub reducer_hint: Option<BigInt>,
}

impl Candidate {
    pub fn new(value: GradedValue) -> Self {
        Candidate {
            value,
            generation: 0,
            reducer_hint: None,
        }
    }
}

/// Whether `x - y` lies in the monoid, judged on cached form values only.
pub fn reduces(y: &GradedValue, x: &GradedValue) -> bool {
    x.vector != y.vector
        && x
            .sigma_values
            .iter()
            .zip(&y.sigma_values)
            .all(|(a, b)| a >= b)
}

/// Extracts the Hilbert basis from a generating set sorted by ascending
/// total degree, holding one element per residue class and no units.
///
/// Successful reducers move to the head of the working list.
pub fn reduce_to_hilbert_basis(candidates: Vec<Candidate>) -> Result<Vec<GradedValue>> {
    if candidates
        .windows(2)
        .any(|w| w[0].value.tdeg > w[1].value.tdeg)
    {
        return Err(Error::UnsortedInput);
    }
    let mut stream = candidates
        .into_iter()
        .map(|c| c.value)
        .filter(|v| !v.is_unit())
        .peekable();
    let mut basis: VecDeque<GradedValue> = VecDeque::new();
    if let Some(first) = stream.next() {
        let min = first.tdeg.clone();
        basis.push_back(first);
        while let Some(v) = stream.next_if(|v| v.tdeg == min) {
            basis.push_back(v);
        }
    }
    'outer: for x in stream {
        for j in 0..basis.len() {
            let y = &basis[j];
            if &x.tdeg < &(&y.tdeg * 2u32) {
                break;
            }
            if reduces(y, &x) {
                let y = basis.remove(j).expect("index in range");
                basis.push_front(y);
                continue 'outer;
            }
        }
        basis.push_back(x);
    }
    Ok(basis.into())
}

/// A maximal subset with no element reducing another, units removed.
/// Lower total degree wins, ties broken by the lexicographic order of the
/// vectors.
pub fn auto_reduce(candidates: Vec<Candidate>) -> Vec<Candidate> {
    let mut sorted: Vec<Candidate> = candidates
        .into_iter()
        .filter(|c| !c.value.is_unit())
        .collect();
    sorted.sort_by(|a, b| {
        (&a.value.tdeg, &a.value.vector).cmp(&(&b.value.tdeg, &b.value.vector))
    });
    let mut kept: Vec<Candidate> = Vec::with_capacity(sorted.len());
    for c in sorted {
        if !kept.iter().any(|k| reduces(&k.value, &c.value)) {
            kept.push(c);
        }
    }
    kept
}
