//! JSON input documents for `charfun validate` and `glequiv`.

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context};
use cobordkit::lattice::{IsotropyMode, VectorAssignment};
use cobordkit::polytope::{hexagon_prism, Canonical, SimplePolytope};
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// Either an explicit incidence description or a named construction:
/// `{"simplex": m}`, `{"polygon": k}`, `{"hexagon_prism": n}`,
/// `{"product": [p, q, …]}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PolytopeSpec {
    Explicit(SimplePolytope),
    Named(Shape),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    Simplex(usize),
    Polygon(usize),
    HexagonPrism(usize),
    Product(Vec<PolytopeSpec>),
}

impl PolytopeSpec {
    pub fn build(&self) -> anyhow::Result<SimplePolytope> {
        Ok(match self {
            PolytopeSpec::Explicit(p) => p.clone(),
            PolytopeSpec::Named(Shape::Simplex(m)) => {
                SimplePolytope::canonical(Canonical::Simplex(*m))?
            }
            PolytopeSpec::Named(Shape::Polygon(k)) => {
                SimplePolytope::canonical(Canonical::Polygon(*k))?
            }
            PolytopeSpec::Named(Shape::HexagonPrism(n)) => hexagon_prism(*n)?,
            PolytopeSpec::Named(Shape::Product(parts)) => {
                let mut iter = parts.iter();
                let Some(first) = iter.next() else {
                    bail!("an empty product has no polytope");
                };
                let mut acc = first.build()?;
                for p in iter {
                    acc = acc.product(&p.build()?);
                }
                acc
            }
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharfunInput {
    pub polytope: PolytopeSpec,
    /// Renames the facets, in facet order.
    #[serde(default)]
    pub facet_names: Option<Vec<String>>,
    pub assignment: VectorAssignment,
    /// Marked facets; when present the assignment is checked as an isotropy
    /// function.
    #[serde(default)]
    pub marked: Option<Vec<String>>,
    #[serde(default)]
    pub mode: Option<IsotropyMode>,
}

impl CharfunInput {
    pub fn polytope(&self) -> anyhow::Result<SimplePolytope> {
        let p = self.polytope.build()?;
        Ok(match &self.facet_names {
            Some(names) => p.with_facet_names(names.clone())?,
            None => p,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlequivInput {
    pub a: VectorAssignment,
    pub b: VectorAssignment,
    #[serde(default)]
    pub perm_blocks: Vec<Vec<String>>,
    #[serde(default)]
    pub allow_sign: bool,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
