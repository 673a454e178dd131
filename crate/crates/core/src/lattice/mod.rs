//! Integer lattice checks for characteristic and isotropy functions.
//!
//! A [`VectorAssignment`] attaches a vector of `Z^rank` to facets of a
//! [`SimplePolytope`]. On a polytope of dimension `rank` it is a
//! characteristic function when the vectors at every vertex form a basis. On a
//! polytope of dimension `rank + 1` with an [`ExceptionalMarking`] it is an
//! isotropy function when the vectors of unmarked facets through any vertex
//! are independent (or, for smoothness, part of a basis).
//!
//! Face conditions are only checked at vertices: every nonempty face contains
//! a vertex, and sub-collections of independent sets or of basis parts keep
//! the property.

mod catalog;
mod glequiv;
pub mod matrix;
pub mod snf;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::intser;
use crate::polytope::{ExceptionalMarking, SimplePolytope};

pub use catalog::{bundle_polytope, characteristic_matrix, fiber_facets, BASE_FACETS};
pub use glequiv::{gl_equivalent, verify_witness, GlWitness, MAX_BLOCK};
pub use matrix::IntMatrix;
pub use snf::{check_smith, smith_normal_form, SmithForm};

/// Facet id → vector in `Z^rank`.
///
/// Wire format: `{ "rank": int, "vectors": { facet_id: [int, …] } }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AssignmentJson")]
pub struct VectorAssignment {
    rank: usize,
    #[serde(with = "intser::vecmap")]
    vectors: IndexMap<String, Vec<BigInt>>,
}

#[derive(Deserialize)]
struct AssignmentJson {
    rank: usize,
    #[serde(with = "intser::vecmap")]
    vectors: IndexMap<String, Vec<BigInt>>,
}

impl TryFrom<AssignmentJson> for VectorAssignment {
    type Error = Error;

    fn try_from(j: AssignmentJson) -> Result<Self> {
        VectorAssignment::new(j.rank, j.vectors)
    }
}

impl VectorAssignment {
    pub fn new(rank: usize, vectors: IndexMap<String, Vec<BigInt>>) -> Result<Self> {
        for (facet, v) in &vectors {
            if v.len() != rank {
                return Err(Error::VectorLength {
                    facet: facet.clone(),
                    len: v.len(),
                    rank,
                });
            }
        }
        Ok(VectorAssignment { rank, vectors })
    }

    pub fn empty(rank: usize) -> Self {
        VectorAssignment {
            rank,
            vectors: IndexMap::new(),
        }
    }

    /// Convenience constructor from small integer vectors.
    pub fn from_i64<S: Into<String>>(
        rank: usize,
        entries: impl IntoIterator<Item = (S, Vec<i64>)>,
    ) -> Result<Self> {
        let vectors = entries
            .into_iter()
            .map(|(k, v)| (k.into(), v.into_iter().map(BigInt::from).collect()))
            .collect();
        Self::new(rank, vectors)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, facet: &str) -> Option<&Vec<BigInt>> {
        self.vectors.get(facet)
    }

    pub fn insert(&mut self, facet: impl Into<String>, v: Vec<BigInt>) -> Result<()> {
        let facet = facet.into();
        if v.len() != self.rank {
            return Err(Error::VectorLength {
                facet,
                len: v.len(),
                rank: self.rank,
            });
        }
        self.vectors.insert(facet, v);
        Ok(())
    }

    pub fn facets(&self) -> impl Iterator<Item = &String> {
        self.vectors.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Vec<BigInt>)> {
        self.vectors.iter()
    }

    fn require(&self, facet: &str) -> Result<&Vec<BigInt>> {
        self.vectors
            .get(facet)
            .ok_or_else(|| Error::MissingVector(facet.to_string()))
    }

    /// The vectors as columns of a `rank × len` matrix, in insertion order.
    pub fn to_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.vectors.values().cloned().collect();
        IntMatrix::from_columns(self.rank, &cols).expect("lengths checked on insert")
    }
}

/// Whether `vectors` extend to a basis of `Z^rank`.
///
/// True iff the Smith normal form of the `rank × r` matrix with these columns
/// has `r` unit invariant factors. More than `rank` vectors never qualify.
pub fn is_part_of_basis(rank: usize, vectors: &[Vec<BigInt>]) -> Result<bool> {
    if vectors.iter().any(|v| v.len() != rank) {
        return Err(domain(format!("every vector must have length {rank}")));
    }
    if vectors.len() > rank {
        return Ok(false);
    }
    if vectors.is_empty() {
        return Ok(true);
    }
    let m = IntMatrix::from_columns(rank, vectors)?;
    Ok(smith_normal_form(&m).unit_count() == vectors.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexFailure {
    pub vertex: Vec<String>,
    /// Determinant (characteristic check) or the last invariant factor
    /// (isotropy check) that failed to be a unit.
    #[serde(with = "intser")]
    pub value: BigInt,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicReport {
    pub passed: bool,
    pub vertices_checked: usize,
    pub failure: Option<VertexFailure>,
}

fn check_assignment_facets(
    polytope: &SimplePolytope,
    assignment: &VectorAssignment,
    skip: impl Fn(&str) -> bool,
) -> Result<()> {
    for f in assignment.facets() {
        polytope.facet_index(f)?;
        if skip(f) {
            return Err(Error::MarkedFacetHasVector(f.clone()));
        }
    }
    for f in polytope.facets() {
        if !skip(f) {
            assignment.require(f)?;
        }
    }
    Ok(())
}

/// Determinant `±1` at every vertex.
pub fn is_characteristic(
    polytope: &SimplePolytope,
    chi: &VectorAssignment,
) -> Result<CharacteristicReport> {
    if chi.rank() != polytope.dim() {
        return Err(domain(format!(
            "assignment rank {} differs from polytope dimension {}",
            chi.rank(),
            polytope.dim()
        )));
    }
    check_assignment_facets(polytope, chi, |_| false)?;
    let mut failure = None;
    for v in polytope.vertices() {
        let cols: Vec<Vec<BigInt>> = v
            .iter()
            .map(|&i| chi.require(&polytope.facets()[i]).cloned())
            .collect::<Result<_>>()?;
        let det = IntMatrix::from_columns(chi.rank(), &cols)?.det();
        if !det.abs().is_one() {
            failure = Some(VertexFailure {
                vertex: polytope.vertex_names(v),
                value: det,
                reason: "vertex determinant is not ±1".into(),
            });
            break;
        }
    }
    Ok(CharacteristicReport {
        passed: failure.is_none(),
        vertices_checked: polytope.vertices().len(),
        failure,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotropyMode {
    /// Linear independence over the rationals.
    IndependenceOnly,
    /// Part of a basis of `Z^rank` (smooth case).
    SarkarCondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub mode: IsotropyMode,
    pub passed: bool,
    pub vertices_checked: usize,
    pub failure: Option<VertexFailure>,
}

fn check_isotropy_shape(
    polytope: &SimplePolytope,
    marking: &ExceptionalMarking,
    lambda: &VectorAssignment,
) -> Result<()> {
    if polytope.dim() != lambda.rank() + 1 {
        return Err(domain(format!(
            "isotropy data needs polytope dimension {} = rank {} + 1",
            polytope.dim(),
            lambda.rank()
        )));
    }
    for m in marking.marked() {
        polytope.facet_index(m)?;
    }
    check_assignment_facets(polytope, lambda, |f| marking.contains(f))
}

pub fn validate_isotropy(
    polytope: &SimplePolytope,
    marking: &ExceptionalMarking,
    lambda: &VectorAssignment,
    mode: IsotropyMode,
) -> Result<IsotropyReport> {
    check_isotropy_shape(polytope, marking, lambda)?;
    let rank = lambda.rank();
    let mut failure = None;
    for v in polytope.vertices() {
        let vectors: Vec<Vec<BigInt>> = v
            .iter()
            .map(|&i| &polytope.facets()[i])
            .filter(|f| !marking.contains(f))
            .map(|f| lambda.require(f).cloned())
            .collect::<Result<_>>()?;
        let m = IntMatrix::from_columns(rank, &vectors)?;
        let bad = match mode {
            IsotropyMode::IndependenceOnly => {
                let r = m.rank();
                (r != vectors.len()).then(|| VertexFailure {
                    vertex: polytope.vertex_names(v),
                    value: BigInt::from(r),
                    reason: format!("{} vectors span a rank-{r} lattice", vectors.len()),
                })
            }
            IsotropyMode::SarkarCondition => {
                if vectors.len() > rank {
                    Some(VertexFailure {
                        vertex: polytope.vertex_names(v),
                        value: BigInt::from(vectors.len()),
                        reason: format!(
                            "{} vectors cannot be part of a basis of Z^{rank}",
                            vectors.len()
                        ),
                    })
                } else if vectors.is_empty() {
                    None
                } else {
                    let snf = smith_normal_form(&m);
                    let factors = snf.invariant_factors();
                    (snf.unit_count() != vectors.len()).then(|| VertexFailure {
                        vertex: polytope.vertex_names(v),
                        value: factors.last().cloned().unwrap_or_default(),
                        reason: format!(
                            "invariant factors {:?} are not all 1",
                            factors.iter().map(ToString::to_string).collect::<Vec<_>>()
                        ),
                    })
                }
            }
        };
        if bad.is_some() {
            failure = bad;
            break;
        }
    }
    Ok(IsotropyReport {
        mode,
        passed: failure.is_none(),
        vertices_checked: polytope.vertices().len(),
        failure,
    })
}

/// Restricts `lambda` to the marked facet `q`: the facet `q ∩ F_j` of `q`
/// receives `lambda(F_j)`.
pub fn restriction(
    polytope: &SimplePolytope,
    marking: &ExceptionalMarking,
    lambda: &VectorAssignment,
    q: &str,
) -> Result<(SimplePolytope, VectorAssignment)> {
    polytope.facet_index(q)?;
    if !marking.contains(q) {
        return Err(domain(format!("facet `{q}` is not marked exceptional")));
    }
    check_isotropy_shape(polytope, marking, lambda)?;
    let (sub, map) = polytope.facet_subpolytope(q)?;
    let mut xi = VectorAssignment::empty(lambda.rank());
    for &g in &map {
        let name = &polytope.facets()[g];
        if marking.contains(name) {
            return Err(domain(format!(
                "marked facets `{q}` and `{name}` intersect"
            )));
        }
        xi.insert(name.clone(), lambda.require(name)?.clone())?;
    }
    Ok((sub, xi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionCheck {
    pub facet: String,
    pub report: CharacteristicReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    /// Every restriction is a characteristic function.
    pub restrictions_characteristic: bool,
    /// `lambda` satisfies the part-of-basis condition at every vertex.
    pub sarkar_condition: bool,
    pub agree: bool,
    pub restrictions: Vec<RestrictionCheck>,
    pub isotropy: IsotropyReport,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.agree && self.restrictions_characteristic && self.sarkar_condition
    }
}

/// Compares the two sides of the restriction criterion: all restrictions
/// characteristic versus the part-of-basis condition on `lambda`.
pub fn check_lemma_equivalence(
    polytope: &SimplePolytope,
    marking: &ExceptionalMarking,
    lambda: &VectorAssignment,
) -> Result<LemmaReport> {
    let isotropy = validate_isotropy(polytope, marking, lambda, IsotropyMode::SarkarCondition)?;
    let restrictions = marking
        .marked()
        .iter()
        .map(|q| {
            let (sub, xi) = restriction(polytope, marking, lambda, q)?;
            Ok(RestrictionCheck {
                facet: q.clone(),
                report: is_characteristic(&sub, &xi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let restrictions_characteristic = restrictions.iter().all(|r| r.report.passed);
    Ok(LemmaReport {
        restrictions_characteristic,
        sarkar_condition: isotropy.passed,
        agree: restrictions_characteristic == isotropy.passed,
        restrictions,
        isotropy,
    })
}
