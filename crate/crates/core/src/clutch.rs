//! Clutching isomorphisms over `S¹ × CPⁿ⁻¹`, tracked by their degrees.
//!
//! A [`ClutchSpec`] with degrees `(d, e)` stands for
//! `Id ⊗ F_n(d) ⊕ F_2(e)`, where `F_k(d) = f^d ⊕ Id` and `f^d(z, w) = (z, z^d·w)`.
//! Composition adds degrees. The glued bundles recognised here are
//!
//! | degrees     | glued manifold                     |
//! |-------------|------------------------------------|
//! | `(−a, 2)`   | `P^n(a)`, standard structure        |
//! | `(−a, 0)`   | `(P^n(a), c_T(a))`                  |
//! | `(a, −2)`   | conjugate of `P^n(a)`               |

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::chern::{all_chern_numbers, ChernData, StructureKind};
use crate::error::{domain, Error, Result};
use crate::exactring::Partition;
use crate::intser;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClutchSpec {
    pub n: usize,
    #[serde(with = "intser")]
    pub d: BigInt,
    #[serde(with = "intser")]
    pub e: BigInt,
}

impl ClutchSpec {
    pub fn new(n: usize, d: impl Into<BigInt>, e: impl Into<BigInt>) -> Self {
        ClutchSpec {
            n,
            d: d.into(),
            e: e.into(),
        }
    }

    pub fn identity(n: usize) -> Self {
        ClutchSpec::new(n, 0, 0)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ClutchSpec) -> Result<ClutchSpec> {
        if self.n != other.n {
            return Err(domain(format!(
                "cannot compose clutching functions of rank {} and {}",
                self.n, other.n
            )));
        }
        Ok(ClutchSpec {
            n: self.n,
            d: &self.d + &other.d,
            e: &self.e + &other.e,
        })
    }

    pub fn inverse(&self) -> ClutchSpec {
        ClutchSpec {
            n: self.n,
            d: -&self.d,
            e: -&self.e,
        }
    }

    pub fn classify(&self) -> BoundaryLabel {
        classify(self)
    }
}

impl fmt::Display for ClutchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Id⊗F_{}({}) ⊕ F_2({})", self.n, self.d, self.e)
    }
}

/// The manifold obtained by gluing two copies of `D² × CPⁿ⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "a")]
pub enum BoundaryLabel {
    Standard(#[serde(with = "intser")] BigInt),
    ConjStandard(#[serde(with = "intser")] BigInt),
    Twisted(#[serde(with = "intser")] BigInt),
    Unclassified,
}

impl BoundaryLabel {
    /// Sign with which the label enters a bordism relation.
    pub fn sign(&self) -> i8 {
        match self {
            BoundaryLabel::ConjStandard(_) => -1,
            _ => 1,
        }
    }

    /// Chern numbers of the underlying manifold, before the sign is applied.
    pub fn chern_data(&self, n: usize) -> Result<ChernData> {
        match self {
            BoundaryLabel::Standard(a) | BoundaryLabel::ConjStandard(a) => {
                all_chern_numbers(n, a, StructureKind::Standard)
            }
            BoundaryLabel::Twisted(a) => all_chern_numbers(n, a, StructureKind::Twisted),
            BoundaryLabel::Unclassified => Err(Error::Inconsistent(
                "an unclassified clutching has no Chern numbers".into(),
            )),
        }
    }
}

impl fmt::Display for BoundaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryLabel::Standard(a) => write!(f, "Standard({a})"),
            BoundaryLabel::ConjStandard(a) => write!(f, "ConjStandard({a})"),
            BoundaryLabel::Twisted(a) => write!(f, "Twisted({a})"),
            BoundaryLabel::Unclassified => f.write_str("Unclassified"),
        }
    }
}

pub fn classify(c: &ClutchSpec) -> BoundaryLabel {
    if c.e == BigInt::from(2) {
        BoundaryLabel::Standard(-&c.d)
    } else if c.e.is_zero() {
        BoundaryLabel::Twisted(-&c.d)
    } else if c.e == BigInt::from(-2) {
        BoundaryLabel::ConjStandard(c.d.clone())
    } else {
        BoundaryLabel::Unclassified
    }
}

/// The three pairwise gluings of `A`, `B`, `C` and their labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingTriple {
    pub f_a: ClutchSpec,
    pub f_b: ClutchSpec,
    pub f_c: ClutchSpec,
    /// `f_{A,B}`, `f_{B,C}`, `f_{C,A}` in that order.
    pub pairs: [ClutchSpec; 3],
    pub labels: [BoundaryLabel; 3],
}

/// Glues three copies of `D² × CPⁿ⁻¹` with boundary clutchings
/// `f_A = (0, 1)`, `f_B = (a, −1)`, `f_C = (b, −1)`.
///
/// The pairwise clutching is `f_{X,Y} = f_Y⁻¹ ∘ f_X`.
pub fn gluing_triple(n: usize, a: &BigInt, b: &BigInt) -> Result<GluingTriple> {
    if n < 1 {
        return Err(domain("gluing needs n >= 1"));
    }
    let f_a = ClutchSpec::new(n, 0, 1);
    let f_b = ClutchSpec::new(n, a.clone(), -1);
    let f_c = ClutchSpec::new(n, b.clone(), -1);
    let ab = f_b.inverse().compose(&f_a)?;
    let bc = f_c.inverse().compose(&f_b)?;
    let ca = f_a.inverse().compose(&f_c)?;
    let labels = [classify(&ab), classify(&bc), classify(&ca)];
    Ok(GluingTriple {
        f_a,
        f_b,
        f_c,
        pairs: [ab, bc, ca],
        labels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingRow {
    pub partition: Partition,
    /// Signed contributions, one per boundary component.
    #[serde(with = "intser::vec")]
    pub terms: Vec<BigInt>,
    #[serde(with = "intser")]
    pub sum: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub n: usize,
    #[serde(with = "intser")]
    pub a: BigInt,
    #[serde(with = "intser")]
    pub b: BigInt,
    pub triple: GluingTriple,
    /// Labels are exactly `{Standard(a), Twisted(b−a), ConjStandard(b)}`.
    pub labels_match: bool,
    pub rows: Vec<GluingRow>,
    pub passed: bool,
    pub counterexample: Option<Partition>,
}

/// Checks that the signed Chern numbers of the three glued boundaries cancel.
pub fn verify_gluing_bordism(n: usize, a: &BigInt, b: &BigInt) -> Result<GluingReport> {
    let triple = gluing_triple(n, a, b)?;
    let expected = [
        BoundaryLabel::Standard(a.clone()),
        BoundaryLabel::Twisted(b - a),
        BoundaryLabel::ConjStandard(b.clone()),
    ];
    let labels_match = triple.labels == expected;

    let mut rows = Vec::new();
    let mut counterexample = None;
    if triple
        .labels
        .iter()
        .all(|l| *l != BoundaryLabel::Unclassified)
    {
        let tables = triple
            .labels
            .iter()
            .map(|l| l.chern_data(n))
            .collect::<Result<Vec<_>>>()?;
        for (idx, entry) in tables[0].numbers.iter().enumerate() {
            let terms: Vec<BigInt> = triple
                .labels
                .iter()
                .zip(&tables)
                .map(|(label, table)| {
                    let v = table.numbers[idx].value.clone();
                    if label.sign() < 0 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            let sum: BigInt = terms.iter().sum();
            if !sum.is_zero() && counterexample.is_none() {
                counterexample = Some(entry.partition.clone());
            }
            rows.push(GluingRow {
                partition: entry.partition.clone(),
                terms,
                sum,
            });
        }
    }
    let passed = labels_match && counterexample.is_none() && !rows.is_empty();
    Ok(GluingReport {
        n,
        a: a.clone(),
        b: b.clone(),
        triple,
        labels_match,
        rows,
        passed,
        counterexample,
    })
}
