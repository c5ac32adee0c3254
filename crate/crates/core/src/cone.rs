//! Cones, support forms and the standard map.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fm::{build_hull, FmOptions, Hull};
use crate::linalg::{
    dot, is_zero_vector, primitive_part, rank_of_rows, to_full_dimensional, IntVector,
    LatticeEmbedding, LatticeMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormRole {
    Support,
    Equation,
}

/// A primitive integral linear form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportForm {
    pub coeffs: IntVector,
    pub role: FormRole,
}

impl SupportForm {
    /// Wraps a form that is already primitive.
    pub fn support(coeffs: IntVector) -> Self {
        SupportForm {
            coeffs,
            role: FormRole::Support,
        }
    }

    /// The primitive part of `coeffs` as a support form.
    pub fn new(coeffs: &[BigInt]) -> Result<Self> {
        Ok(Self::support(primitive_part(coeffs)?))
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        dot(&self.coeffs, x)
    }
}

/// A vector together with its values under the support forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedValue {
    pub vector: IntVector,
    pub sigma_values: Vec<BigInt>,
    pub tdeg: BigInt,
}

impl GradedValue {
    pub fn is_unit(&self) -> bool {
        self.sigma_values.iter().all(Zero::is_zero)
    }
}

/// `x -> (σ_1(x), ..., σ_s(x))` together with the total degree.
pub fn standard_map(x: &[BigInt], forms: &[SupportForm]) -> Result<GradedValue> {
    if let Some(f) = forms.iter().find(|f| f.coeffs.len() != x.len()) {
        return Err(Error::DimMismatch {
            expected: f.coeffs.len(),
            got: x.len(),
        });
    }
    let sigma_values: Vec<BigInt> = forms.iter().map(|f| f.eval(x)).collect();
    let tdeg = sigma_values.iter().sum();
    Ok(GradedValue {
        vector: x.to_vec(),
        sigma_values,
        tdeg,
    })
}

/// Drops zero and repeated generators, keeping the first occurrence.
pub fn ingest(generators: &[IntVector]) -> Vec<IntVector> {
    let mut seen = std::collections::HashSet::new();
    generators
        .iter()
        .filter(|g| !is_zero_vector(g) && seen.insert((*g).clone()))
        .cloned()
        .collect()
}

/// A cone given by generators, with its support forms computed in the
/// coordinates of the working lattice.
#[derive(Clone, Debug)]
pub struct Cone {
    /// Ambient dimension.
    pub dim: usize,
    /// Generators in ambient coordinates, after ingestion.
    pub generators: Vec<IntVector>,
    /// The same generators in lattice coordinates.
    pub lattice_generators: Vec<IntVector>,
    /// Facet forms in lattice coordinates.
    pub support_forms: Vec<SupportForm>,
    pub embedding: LatticeEmbedding,
    pub pointed: bool,
    pub extreme_ray_flags: Vec<bool>,
}

impl Cone {
    pub fn from_generators(generators: &[IntVector], lattice_mode: LatticeMode) -> Result<Self> {
        Self::from_generators_with(generators, lattice_mode, FmOptions::default())
    }

    pub fn from_generators_with(
        generators: &[IntVector],
        lattice_mode: LatticeMode,
        options: FmOptions,
    ) -> Result<Self> {
        let generators = ingest(generators);
        let (embedding, lattice_generators) = to_full_dimensional(&generators, lattice_mode)?;
        let hull = build_hull(&lattice_generators, options)?;
        Ok(Self::assemble(generators, lattice_generators, embedding, &hull))
    }

    pub(crate) fn assemble(
        generators: Vec<IntVector>,
        lattice_generators: Vec<IntVector>,
        embedding: LatticeEmbedding,
        hull: &Hull,
    ) -> Self {
        let support_forms: Vec<SupportForm> = hull
            .facets()
            .iter()
            .map(|f| SupportForm::support(f.form.clone()))
            .collect();
        let mut cone = Cone {
            dim: embedding.ambient_dim(),
            generators,
            lattice_generators,
            support_forms,
            embedding,
            pointed: false,
            extreme_ray_flags: Vec::new(),
        };
        cone.refresh();
        cone
    }

    /// Recomputes pointedness and extreme ray flags from the support forms.
    pub(crate) fn refresh(&mut self) {
        let r = self.embedding.rank;
        let coeffs: Vec<IntVector> = self.support_forms.iter().map(|f| f.coeffs.clone()).collect();
        self.pointed = rank_of_rows(&coeffs) == r;
        self.extreme_ray_flags = self
            .lattice_generators
            .iter()
            .map(|g| {
                if !self.pointed {
                    return false;
                }
                let vanishing: Vec<IntVector> = coeffs
                    .iter()
                    .filter(|f| dot(f, g).is_zero())
                    .cloned()
                    .collect();
                rank_of_rows(&vanishing) + 1 == r
            })
            .collect();
    }

    /// Rank of the working lattice, the dimension of the cone.
    pub fn rank(&self) -> usize {
        self.embedding.rank
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    /// Indices of generators spanning extreme rays, one per ray.
    pub fn extreme_generator_indices(&self) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        (0..self.lattice_generators.len())
            .filter(|&i| self.extreme_ray_flags[i])
            .filter(|&i| {
                seen.insert(primitive_part(&self.lattice_generators[i]).expect("nonzero generator"))
            })
            .collect()
    }

    /// Primitive generators of the extreme rays in ambient coordinates,
    /// sorted lexicographically.
    pub fn extreme_rays(&self) -> Vec<IntVector> {
        let mut rays: Vec<IntVector> = self
            .extreme_generator_indices()
            .into_iter()
            .map(|i| {
                let p = primitive_part(&self.lattice_generators[i]).expect("nonzero generator");
                self.embedding.from_lattice(&p)
            })
            .collect();
        rays.sort();
        rays
    }

    /// Support forms as ambient forms (agreeing with the lattice forms up to
    /// a positive factor on the working lattice), sorted lexicographically.
    pub fn ambient_support_forms(&self) -> Vec<IntVector> {
        let mut forms: Vec<IntVector> = self
            .support_forms
            .iter()
            .map(|f| self.embedding.form_from_lattice(&f.coeffs))
            .collect();
        forms.sort();
        forms
    }

    /// Standard map of an ambient vector of the working lattice.
    pub fn standard_map(&self, x: &[BigInt]) -> Result<GradedValue> {
        let c = self.embedding.to_lattice(x)?;
        let mut g = standard_map(&c, &self.support_forms)?;
        g.vector = x.to_vec();
        Ok(g)
    }

    /// Whether an ambient vector lies in the cone (and its linear span).
    pub fn contains(&self, x: &[BigInt]) -> bool {
        match self.embedding.to_lattice(x) {
            Ok(c) => self.support_forms.iter().all(|f| !f.eval(&c).is_negative()),
            Err(_) => false,
        }
    }
}
