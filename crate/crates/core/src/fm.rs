//! Support hyperplanes by Fourier–Motzkin elimination.
//!
//! The hull is built incrementally: an initial simplicial cone over the
//! first linearly independent generators, then one generator at a time. Each
//! insertion pairs positive and negative facets through the subfacets on the
//! boundary of the visible region, with separate treatment of simplicial
//! facets (ordered subfacet table) and nonsimplicial ones (containment or
//! rank tests).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, Sign};
use num_traits::Signed;

use crate::cone::SupportForm;
use crate::error::{Error, Result};
use crate::linalg::{adjugate, dot, primitive_part, rank_of_rows, IntMatrix, IntVector};

/// Sorted indices of `d - 2` generators spanning a subfacet.
pub type SubfacetKey = Vec<usize>;

#[derive(Clone, Debug, Default)]
pub struct FmOptions {
    /// Use the containment test for nonsimplicial pairs while the number of
    /// nonsimplicial facets is below this bound, the rank test otherwise.
    /// Defaults to `d^3`.
    pub nonsimplicial_threshold: Option<usize>,
}

/// A facet of the current cone with the generators lying on it.
#[derive(Clone, Debug)]
pub struct FacetRecord {
    pub form: IntVector,
    pub incidence: FixedBitSet,
    pub simplicial: bool,
}

impl FacetRecord {
    fn new(form: IntVector, incidence: FixedBitSet, dim: usize) -> Self {
        let simplicial = incidence.count_ones(..) + 1 == dim;
        FacetRecord {
            form,
            incidence,
            simplicial,
        }
    }

    pub fn generators(&self) -> Vec<usize> {
        self.incidence.ones().collect()
    }

    fn add_incident(&mut self, g: usize, dim: usize) {
        self.incidence.insert(g);
        self.simplicial = self.incidence.count_ones(..) + 1 == dim;
    }
}

/// Counters describing how new facets were found, for diagnostics and tests.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HullStats {
    pub from_simplicial_pairs: usize,
    pub from_table_leftovers: usize,
    pub from_nonsimplicial_pairs: usize,
    pub rank_tests: usize,
    pub containment_tests: usize,
}

/// Result of inserting one generator.
#[derive(Clone, Debug, Default)]
pub struct Insertion {
    /// Facets of the previous cone strictly negative on the new generator.
    pub visible: Vec<FacetRecord>,
    pub new_facets: usize,
}

/// Incremental hull state over a fixed list of generators.
#[derive(Clone, Debug)]
pub struct Hull {
    dim: usize,
    generators: Vec<IntVector>,
    inserted: Vec<usize>,
    facets: Vec<FacetRecord>,
    options: FmOptions,
    pub stats: HullStats,
}

impl Hull {
    pub fn new(dim: usize, generators: Vec<IntVector>, options: FmOptions) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::DimMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        Ok(Hull {
            dim,
            generators,
            inserted: Vec::new(),
            facets: Vec::new(),
            options,
            stats: HullStats::default(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &IntVector {
        &self.generators[i]
    }

    pub fn inserted(&self) -> &[usize] {
        &self.inserted
    }

    pub fn facets(&self) -> &[FacetRecord] {
        &self.facets
    }

    pub fn forms(&self) -> Vec<IntVector> {
        self.facets.iter().map(|f| f.form.clone()).collect()
    }

    /// Replaces a generator that has not been inserted yet.
    pub fn set_pending_generator(&mut self, i: usize, v: IntVector) {
        assert!(!self.inserted.contains(&i), "generator {i} already inserted");
        assert_eq!(v.len(), self.dim);
        self.generators[i] = v;
    }

    /// Greedy choice of the first linearly independent generators, in list
    /// order.
    pub fn independent_prefix(&self) -> Vec<usize> {
        let mut basis = Vec::new();
        let mut rows: Vec<IntVector> = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            rows.push(g.clone());
            if rank_of_rows(&rows) == rows.len() {
                basis.push(i);
                if basis.len() == self.dim {
                    break;
                }
            } else {
                rows.pop();
            }
        }
        basis
    }

    /// Starts from the simplicial cone over `basis` (d independent
    /// generators).
    pub fn start_simplex(&mut self, basis: &[usize]) -> Result<()> {
        let d = self.dim;
        if basis.len() != d {
            return Err(Error::NotFullDim {
                rank: basis.len(),
                dim: d,
            });
        }
        let v = IntMatrix::from_rows(basis.iter().map(|&i| self.generators[i].clone()).collect());
        let (adj, det) = adjugate(&v)?;
        if det.sign() == Sign::NoSign {
            return Err(Error::NotFullDim {
                rank: rank_of_rows(v.rows()),
                dim: d,
            });
        }
        let n = self.generators.len();
        self.facets.clear();
        for k in 0..d {
            // column k of adj(V) is orthogonal to every basis vector but the k-th
            let mut form = adj.column(k);
            if det.is_negative() {
                form = form.iter().map(|x| -x).collect();
            }
            let form = primitive_part(&form)?;
            let mut incidence = FixedBitSet::with_capacity(n);
            for (j, &g) in basis.iter().enumerate() {
                if j != k {
                    incidence.insert(g);
                }
            }
            self.facets.push(FacetRecord::new(form, incidence, d));
        }
        self.inserted = basis.to_vec();
        Ok(())
    }

    /// Values of all current facet forms on `x`.
    pub fn evaluate(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.facets.iter().map(|f| dot(&f.form, x)).collect()
    }

    /// Extends the cone by generator `n`.
    pub fn insert_generator(&mut self, n: usize) -> Insertion {
        let d = self.dim;
        let x = self.generators[n].clone();
        let values = self.evaluate(&x);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for (i, v) in values.iter().enumerate() {
            match v.sign() {
                Sign::Plus => pos.push(i),
                Sign::Minus => neg.push(i),
                Sign::NoSign => zero.push(i),
            }
        }
        self.inserted.push(n);
        if neg.is_empty() {
            for &z in &zero {
                self.facets[z].add_incident(n, d);
            }
            return Insertion::default();
        }

        let cap = self.generators.len();
        let mut on_pos = FixedBitSet::with_capacity(cap);
        for &p in &pos {
            on_pos.union_with(&self.facets[p].incidence);
        }
        let mut eprime = FixedBitSet::with_capacity(cap);
        for &q in &neg {
            eprime.union_with(&self.facets[q].incidence);
        }
        eprime.intersect_with(&on_pos);

        // (D1) split by simpliciality, dropping facets that cannot meet the
        // boundary of the visible region in a subfacet
        let facets = &self.facets;
        let relevant = |i: &usize| facets[*i].incidence.intersection_count(&eprime) + 2 >= d;
        let (psimp, pnon): (Vec<usize>, Vec<usize>) =
            pos.iter().copied().filter(relevant).partition(|&i| facets[i].simplicial);
        let (nsimp, nnon): (Vec<usize>, Vec<usize>) =
            neg.iter().copied().filter(relevant).partition(|&i| facets[i].simplicial);

        let mut created: Vec<(usize, usize, FixedBitSet)> = Vec::new();

        // (D2) subfacets of negative simplicial facets; a key met twice lies
        // between two negative facets
        let mut table: BTreeMap<SubfacetKey, usize> = BTreeMap::new();
        for &ni in &nsimp {
            let gens = facets[ni].generators();
            for key in drop_one(&gens) {
                if !key.iter().all(|&g| eprime.contains(g)) {
                    continue;
                }
                match table.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(ni);
                    }
                    Entry::Occupied(e) => {
                        e.remove();
                    }
                }
            }
        }
        // (D3) partner is a nonsimplicial negative facet or a zero facet
        table.retain(|key, _| {
            !nnon
                .iter()
                .chain(&zero)
                .any(|&g| key.iter().all(|&k| facets[g].incidence.contains(k)))
        });
        // (D5) partners among positive simplicial facets
        for &pi in &psimp {
            let gens = facets[pi].generators();
            for key in drop_one(&gens) {
                if let Some(ni) = table.remove(&key) {
                    created.push((pi, ni, key_bits(&key, cap)));
                    self.stats.from_simplicial_pairs += 1;
                }
            }
        }
        // (D6) remaining partners are nonsimplicial positive facets
        for (key, ni) in std::mem::take(&mut table) {
            let bits = key_bits(&key, cap);
            if let Some(&pi) = pnon.iter().find(|&&pi| bits.is_subset(&facets[pi].incidence)) {
                created.push((pi, ni, bits));
                self.stats.from_table_leftovers += 1;
            }
        }
        // (D7) nonsimplicial negative facets against all positive facets
        let nonsimplicial: Vec<usize> = (0..facets.len()).filter(|&i| !facets[i].simplicial).collect();
        let threshold = self
            .options
            .nonsimplicial_threshold
            .unwrap_or(d.saturating_mul(d).saturating_mul(d));
        let containment_rule = nonsimplicial.len() < threshold;
        for &ni in &nnon {
            for &pi in psimp.iter().chain(&pnon) {
                let mut common = facets[ni].incidence.clone();
                common.intersect_with(&facets[pi].incidence);
                let c = common.count_ones(..);
                if c + 2 < d {
                    continue;
                }
                let is_new = if c + 2 == d && facets[pi].simplicial {
                    true
                } else if facets[pi].simplicial {
                    false
                } else if containment_rule {
                    self.stats.containment_tests += 1;
                    !nonsimplicial
                        .iter()
                        .any(|&g| g != ni && g != pi && common.is_subset(&facets[g].incidence))
                } else {
                    self.stats.rank_tests += 1;
                    let rows: Vec<IntVector> =
                        common.ones().map(|g| self.generators[g].clone()).collect();
                    rank_of_rows(&rows) + 2 == d
                };
                if is_new {
                    created.push((pi, ni, common));
                    self.stats.from_nonsimplicial_pairs += 1;
                }
            }
        }

        let visible: Vec<FacetRecord> = neg.iter().map(|&i| self.facets[i].clone()).collect();
        let mut next: Vec<FacetRecord> = Vec::with_capacity(pos.len() + zero.len() + created.len());
        for (i, facet) in self.facets.iter().enumerate() {
            match values[i].sign() {
                Sign::Plus => next.push(facet.clone()),
                Sign::NoSign => {
                    let mut f = facet.clone();
                    f.add_incident(n, d);
                    next.push(f);
                }
                Sign::Minus => {}
            }
        }
        let new_facets = created.len();
        for (pi, ni, mut incidence) in created {
            let vp = &values[pi];
            let vn = &values[ni];
            let form: IntVector = self.facets[ni]
                .form
                .iter()
                .zip(&self.facets[pi].form)
                .map(|(a, b)| vp * a - vn * b)
                .collect();
            let form = primitive_part(&form).expect("combined form is nonzero");
            incidence.insert(n);
            next.push(FacetRecord::new(form, incidence, d));
        }
        self.facets = next;
        Insertion {
            visible,
            new_facets,
        }
    }
}

fn drop_one(gens: &[usize]) -> impl Iterator<Item = SubfacetKey> + '_ {
    (0..gens.len()).map(move |skip| {
        gens.iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, &g)| g)
            .collect()
    })
}

fn key_bits(key: &[usize], cap: usize) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(cap);
    for &k in key {
        bits.insert(k);
    }
    bits
}

/// Builds the hull of `generators` (which must span `Z^d` rationally),
/// inserting them in list order after the initial simplex.
pub fn build_hull(generators: &[IntVector], options: FmOptions) -> Result<Hull> {
    let dim = generators.first().map_or(0, Vec::len);
    let mut hull = Hull::new(dim, generators.to_vec(), options)?;
    let basis = hull.independent_prefix();
    hull.start_simplex(&basis)?;
    for i in 0..generators.len() {
        if !basis.contains(&i) {
            hull.insert_generator(i);
        }
    }
    Ok(hull)
}

/// The irredundant primitive support forms of the cone generated by
/// `generators`.
pub fn dual_cone(generators: &[IntVector]) -> Result<Vec<SupportForm>> {
    dual_cone_with(generators, FmOptions::default())
}

pub fn dual_cone_with(generators: &[IntVector], options: FmOptions) -> Result<Vec<SupportForm>> {
    let dim = generators.first().map_or(0, Vec::len);
    let rank = rank_of_rows(generators);
    if rank < dim || dim == 0 {
        return Err(Error::NotFullDim { rank, dim });
    }
    let hull = build_hull(generators, options)?;
    let mut forms: Vec<SupportForm> = hull
        .facets()
        .iter()
        .map(|f| SupportForm::support(f.form.clone()))
        .collect();
    forms.sort();
    Ok(forms)
}

/// One unrefined elimination step: the sign partition of `forms` on `x` and
/// all combinations of a positive with a negative form.
#[derive(Clone, Debug)]
pub struct RawStep {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub zero: Vec<usize>,
    pub combined: Vec<IntVector>,
}

impl RawStep {
    /// All forms cutting out the extended cone (possibly redundant).
    pub fn candidate_forms(&self, forms: &[IntVector]) -> Vec<IntVector> {
        self.positive
            .iter()
            .chain(&self.zero)
            .map(|&i| forms[i].clone())
            .chain(self.combined.iter().cloned())
            .collect()
    }
}

pub fn raw_fm_step(forms: &[IntVector], x: &[BigInt]) -> RawStep {
    let values: Vec<BigInt> = forms.iter().map(|f| dot(f, x)).collect();
    let mut step = RawStep {
        positive: Vec::new(),
        negative: Vec::new(),
        zero: Vec::new(),
        combined: Vec::new(),
    };
    for (i, v) in values.iter().enumerate() {
        match v.sign() {
            Sign::Plus => step.positive.push(i),
            Sign::Minus => step.negative.push(i),
            Sign::NoSign => step.zero.push(i),
        }
    }
    for &i in &step.positive {
        for &j in &step.negative {
            let form: IntVector = forms[j]
                .iter()
                .zip(&forms[i])
                .map(|(a, b)| &values[i] * a - &values[j] * b)
                .collect();
            if let Ok(p) = primitive_part(&form) {
                step.combined.push(p);
            }
        }
    }
    step
}

/// Keeps the candidate forms that are facets of the cone generated by
/// `generators`: nonnegative on all of them and vanishing on a subset of
/// rank `d - 1`. Sorted and deduplicated.
pub fn naive_facets(candidates: &[IntVector], generators: &[IntVector]) -> Vec<IntVector> {
    let Some(d) = generators.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut out: Vec<IntVector> = candidates
        .iter()
        .filter(|c| {
            let mut zeros = Vec::new();
            for g in generators {
                let v = dot(c, g);
                if v.is_negative() {
                    return false;
                }
                if v.sign() == Sign::NoSign {
                    zeros.push(g.clone());
                }
            }
            rank_of_rows(&zeros) + 1 == d
        })
        .filter_map(|c| primitive_part(c).ok())
        .collect();
    out.sort();
    out.dedup();
    out
}
