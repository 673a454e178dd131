//! Combinatorial simple polytopes described by vertex–facet incidence.
//!
//! A vertex is identified with the set of facets that contain it. In a simple
//! polytope of dimension `d` each such set has exactly `d` elements, and a
//! collection of facets has nonempty intersection iff it lies inside some
//! vertex set.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Canonical {
    /// The `m`-simplex: `m + 1` facets `D1, …, D{m+1}`.
    Simplex(usize),
    /// The `k`-gon: edges `H1, …, Hk` in cyclic order.
    Polygon(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson", into = "PolytopeJson")]
pub struct SimplePolytope {
    dim: usize,
    facets: Vec<String>,
    /// Sorted facet indices per vertex; the list itself is sorted.
    vertices: Vec<Vec<usize>>,
}

/// Wire format: `{ "dim": int, "facets": [string], "vertices": [[string]] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<String>>,
}

impl TryFrom<PolytopeJson> for SimplePolytope {
    type Error = Error;

    fn try_from(j: PolytopeJson) -> Result<Self> {
        SimplePolytope::new(j.dim, j.facets, j.vertices)
    }
}

impl From<SimplePolytope> for PolytopeJson {
    fn from(p: SimplePolytope) -> Self {
        let vertices = p
            .vertices
            .iter()
            .map(|v| v.iter().map(|&i| p.facets[i].clone()).collect())
            .collect();
        PolytopeJson {
            dim: p.dim,
            facets: p.facets,
            vertices,
        }
    }
}

impl SimplePolytope {
    /// Builds a polytope from facet names and vertices given as facet-name sets.
    pub fn new(dim: usize, facets: Vec<String>, vertices: Vec<Vec<String>>) -> Result<Self> {
        let index_of = |name: &str| {
            facets
                .iter()
                .position(|f| f == name)
                .ok_or_else(|| Error::UnknownFacet(name.to_string()))
        };
        let vertices = vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|name| index_of(name))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(dim, facets, vertices)
    }

    /// Builds a polytope from vertices given as facet-index sets.
    pub fn from_indices(
        dim: usize,
        facets: Vec<String>,
        vertices: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for f in &facets {
            if !seen.insert(f.as_str()) {
                return Err(domain(format!("duplicate facet id `{f}`")));
            }
        }
        if vertices.is_empty() {
            return Err(domain("a polytope needs at least one vertex"));
        }
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(vertices.len());
        for v in vertices {
            let set: BTreeSet<usize> = v.iter().copied().collect();
            if set.len() != v.len() {
                return Err(domain(format!("vertex {v:?} repeats a facet")));
            }
            if set.len() != dim {
                return Err(domain(format!(
                    "vertex {v:?} lies on {} facets; a simple {dim}-polytope needs {dim}",
                    set.len()
                )));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= facets.len()) {
                return Err(domain(format!("vertex refers to facet index {bad}")));
            }
            canon.push(set.into_iter().collect());
        }
        canon.sort();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain("duplicate vertex"));
        }
        for (i, f) in facets.iter().enumerate() {
            if !canon.iter().any(|v| v.contains(&i)) {
                return Err(domain(format!("facet `{f}` contains no vertex")));
            }
        }
        Ok(SimplePolytope {
            dim,
            facets,
            vertices: canon,
        })
    }

    pub fn canonical(kind: Canonical) -> Result<Self> {
        match kind {
            Canonical::Simplex(m) => {
                if m < 1 {
                    return Err(domain("simplex dimension must be at least 1"));
                }
                let facets = (1..=m + 1).map(|i| format!("D{i}")).collect();
                // Vertex j is opposite facet j: it lies on every other facet.
                let vertices = (0..=m)
                    .map(|skip| (0..=m).filter(|&i| i != skip).collect())
                    .collect();
                Self::from_indices(m, facets, vertices)
            }
            Canonical::Polygon(k) => {
                if k < 3 {
                    return Err(domain("a polygon needs at least 3 edges"));
                }
                let facets = (1..=k).map(|i| format!("H{i}")).collect();
                let vertices = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
                Self::from_indices(2, facets, vertices)
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[String] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Vertices as sorted facet-index lists, in canonical (sorted) order.
    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn vertex_names(&self, vertex: &[usize]) -> Vec<String> {
        vertex.iter().map(|&i| self.facets[i].clone()).collect()
    }

    pub fn facet_index(&self, name: &str) -> Result<usize> {
        self.facets
            .iter()
            .position(|f| f == name)
            .ok_or_else(|| Error::UnknownFacet(name.to_string()))
    }

    /// Whether the given facets have a common point.
    pub fn intersects(&self, facets: &[usize]) -> bool {
        self.vertices
            .iter()
            .any(|v| facets.iter().all(|f| v.binary_search(f).is_ok()))
    }

    /// Same polytope with new facet names, given in facet order.
    pub fn with_facet_names(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.facets.len() {
            return Err(domain(format!(
                "expected {} facet names, got {}",
                self.facets.len(),
                names.len()
            )));
        }
        Self::from_indices(self.dim, names, self.vertices.clone())
    }

    /// Whether `other` has the same incidence under the positional facet
    /// correspondence (names are ignored).
    pub fn same_incidence(&self, other: &SimplePolytope) -> bool {
        self.dim == other.dim
            && self.facets.len() == other.facets.len()
            && self.vertices == other.vertices
    }

    /// Cartesian product. Facets of `self` come first. If the two facet name
    /// sets overlap, names are prefixed with `1:` and `2:`.
    pub fn product(&self, other: &SimplePolytope) -> SimplePolytope {
        let clash = self.facets.iter().any(|f| other.facets.contains(f));
        let facets: Vec<String> = if clash {
            self.facets
                .iter()
                .map(|f| format!("1:{f}"))
                .chain(other.facets.iter().map(|f| format!("2:{f}")))
                .collect()
        } else {
            self.facets.iter().chain(&other.facets).cloned().collect()
        };
        let offset = self.facets.len();
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                let mut joined = v.clone();
                joined.extend(w.iter().map(|i| i + offset));
                vertices.push(joined);
            }
        }
        Self::from_indices(self.dim + other.dim, facets, vertices)
            .expect("product of simple polytopes is simple")
    }

    /// The facet `name` as a polytope of one dimension less.
    ///
    /// Its facets are the intersections `name ∩ g` for the facets `g` adjacent
    /// to `name`, labelled by `g` and kept in the order of `self`. The returned
    /// map sends each sub-facet index to the index of `g` in `self`.
    pub fn facet_subpolytope(&self, name: &str) -> Result<(SimplePolytope, Vec<usize>)> {
        let f = self.facet_index(name)?;
        let on_facet: Vec<&Vec<usize>> = self
            .vertices
            .iter()
            .filter(|v| v.binary_search(&f).is_ok())
            .collect();
        let adjacent: BTreeSet<usize> = on_facet
            .iter()
            .flat_map(|v| v.iter().copied())
            .filter(|&g| g != f)
            .collect();
        let map: Vec<usize> = adjacent.into_iter().collect();
        let facets = map.iter().map(|&g| self.facets[g].clone()).collect();
        let vertices = on_facet
            .iter()
            .map(|v| {
                v.iter()
                    .filter(|&&g| g != f)
                    .map(|g| map.binary_search(g).expect("adjacent facet"))
                    .collect()
            })
            .collect();
        let sub = Self::from_indices(self.dim - 1, facets, vertices)?;
        Ok((sub, map))
    }
}

/// A set of pairwise disjoint facets whose vertices cover the polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalMarking {
    marked: Vec<String>,
}

impl ExceptionalMarking {
    /// Validates the marking against `polytope`; fails with a domain error
    /// naming the violated condition.
    pub fn new(polytope: &SimplePolytope, marked: &[&str]) -> Result<Self> {
        let report = check_exceptional(polytope, marked)?;
        if let Some(v) = report.violation {
            return Err(domain(format!("not an exceptional marking: {v:?}")));
        }
        let mut idx: Vec<usize> = marked
            .iter()
            .map(|m| polytope.facet_index(m))
            .collect::<Result<_>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(ExceptionalMarking {
            marked: idx
                .into_iter()
                .map(|i| polytope.facets[i].clone())
                .collect(),
        })
    }

    /// Marked facet ids in polytope order.
    pub fn marked(&self) -> &[String] {
        &self.marked
    }

    pub fn contains(&self, name: &str) -> bool {
        self.marked.iter().any(|m| m == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ExceptionalViolation {
    /// Two or more marked facets meet at this vertex.
    NotDisjoint {
        vertex: Vec<String>,
        marked: Vec<String>,
    },
    /// No marked facet contains this vertex.
    Uncovered { vertex: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    pub valid: bool,
    pub violation: Option<ExceptionalViolation>,
}

/// Checks pairwise disjointness first, then the vertex cover, scanning
/// vertices in canonical order.
pub fn check_exceptional(polytope: &SimplePolytope, marked: &[&str]) -> Result<ExceptionalReport> {
    let idx: BTreeSet<usize> = marked
        .iter()
        .map(|m| polytope.facet_index(m))
        .collect::<Result<_>>()?;
    let hits = |v: &Vec<usize>| {
        v.iter()
            .filter(|i| idx.contains(i))
            .copied()
            .collect::<Vec<_>>()
    };
    let mut violation = None;
    for v in &polytope.vertices {
        let h = hits(v);
        if h.len() > 1 {
            violation = Some(ExceptionalViolation::NotDisjoint {
                vertex: polytope.vertex_names(v),
                marked: polytope.vertex_names(&h),
            });
            break;
        }
    }
    if violation.is_none() {
        if let Some(v) = polytope.vertices.iter().find(|v| hits(v).is_empty()) {
            violation = Some(ExceptionalViolation::Uncovered {
                vertex: polytope.vertex_names(v),
            });
        }
    }
    Ok(ExceptionalReport {
        valid: violation.is_none(),
        violation,
    })
}

/// `H² × Δⁿ⁻¹` with facets renamed `F1, …, F{n+6}`: the six hexagon edges
/// first, then the simplex facets.
pub fn hexagon_prism(n: usize) -> Result<SimplePolytope> {
    if n < 2 {
        return Err(domain("the hexagon prism needs n >= 2"));
    }
    let hex = SimplePolytope::canonical(Canonical::Polygon(6))?;
    let simplex = SimplePolytope::canonical(Canonical::Simplex(n - 1))?;
    let q = hex.product(&simplex);
    q.with_facet_names((1..=n + 6).map(|i| format!("F{i}")).collect())
}
