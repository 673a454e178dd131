//! Isotropy data on the hexagon prism `H² × Δⁿ⁻¹` with the alternate edges
//! `F2, F4, F6` marked, and the bordism certificate it yields.
//!
//! Facets are `F1, …, F6` (hexagon edges in cyclic order) followed by
//! `F7, …, F{n+6}` (simplex facets). The three marked facets restrict the
//! isotropy function to characteristic functions on `Δ¹ × Δⁿ⁻¹`, which are
//! matched against [`crate::lattice::characteristic_matrix`].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::chern::{verify_identity, ChernData, Identity, IdentityReport, StructureKind};
use crate::clutch::{verify_gluing_bordism, BoundaryLabel, GluingReport, GluingRow};
use crate::error::{domain, Error, Result};
use crate::exactring::partitions;
use crate::intser;
use crate::lattice::{
    bundle_polytope, characteristic_matrix, check_lemma_equivalence, fiber_facets, gl_equivalent,
    restriction, validate_isotropy, GlWitness, IsotropyMode, IsotropyReport, LemmaReport,
    VectorAssignment, VertexFailure, BASE_FACETS, MAX_BLOCK,
};
use crate::polytope::{
    check_exceptional, hexagon_prism, ExceptionalMarking, ExceptionalReport, SimplePolytope,
};

pub const MARKED: [&str; 3] = ["F2", "F4", "F6"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HexPrismData {
    pub n: usize,
    #[serde(with = "intser")]
    pub a: BigInt,
    #[serde(with = "intser")]
    pub b: BigInt,
    pub q: SimplePolytope,
    pub marking: ExceptionalMarking,
    pub lambda: VectorAssignment,
}

fn unit(n: usize, k: usize) -> Vec<BigInt> {
    (0..n).map(|i| BigInt::from(u8::from(i == k))).collect()
}

/// Columns `F1 = e₁`, `F3 = −e₁ − a·e₂`, `F5 = −e₁ − b·e₂`,
/// `F{6+j} = e_{j+1}` for `j < n`, `F{n+6} = −(e₂ + ⋯ + eₙ)`.
pub fn build(n: usize, a: &BigInt, b: &BigInt) -> Result<HexPrismData> {
    if n < 2 {
        return Err(domain("the hexagon prism construction needs n >= 2"));
    }
    let q = hexagon_prism(n)?;
    let marking = ExceptionalMarking::new(&q, &MARKED)?;
    let slanted = |t: &BigInt| {
        let mut v = vec![BigInt::zero(); n];
        v[0] = -BigInt::one();
        v[1] = -t;
        v
    };
    let mut lambda = VectorAssignment::empty(n);
    lambda.insert("F1", unit(n, 0))?;
    lambda.insert("F3", slanted(a))?;
    lambda.insert("F5", slanted(b))?;
    for j in 1..n {
        lambda.insert(format!("F{}", 6 + j), unit(n, j))?;
    }
    let mut last = vec![-BigInt::one(); n];
    last[0] = BigInt::zero();
    lambda.insert(format!("F{}", n + 6), last)?;
    Ok(HexPrismData {
        n,
        a: a.clone(),
        b: b.clone(),
        q,
        marking,
        lambda,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub exceptional: ExceptionalReport,
    pub isotropy: IsotropyReport,
    pub lemma: LemmaReport,
    pub passed: bool,
    /// First failing vertex, if any.
    pub witness: Option<VertexFailure>,
}

pub fn validate(d: &HexPrismData) -> Result<ValidationReport> {
    let marked: Vec<&str> = d.marking.marked().iter().map(String::as_str).collect();
    let exceptional = check_exceptional(&d.q, &marked)?;
    let isotropy = validate_isotropy(&d.q, &d.marking, &d.lambda, IsotropyMode::SarkarCondition)?;
    let lemma = check_lemma_equivalence(&d.q, &d.marking, &d.lambda)?;
    let passed = exceptional.valid && isotropy.passed && lemma.passed();
    let witness = isotropy.failure.clone().or_else(|| {
        lemma
            .restrictions
            .iter()
            .find_map(|r| r.report.failure.clone())
    });
    Ok(ValidationReport {
        exceptional,
        isotropy,
        lemma,
        passed,
        witness,
    })
}

fn serialize_sign<S: Serializer>(s: &i8, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_i8(*s)
}

/// One boundary piece `(Q_i, ξ_i)` identified with a catalog bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub facet: String,
    pub polytope: SimplePolytope,
    pub xi: VectorAssignment,
    pub label: BoundaryLabel,
    pub kind: StructureKind,
    #[serde(with = "intser")]
    pub a_parameter: BigInt,
    #[serde(with = "intser")]
    pub b_parameter: BigInt,
    #[serde(serialize_with = "serialize_sign")]
    pub orientation_sign: i8,
    /// Equivalence between `ξ_i` (in catalog facet names) and the catalog matrix.
    pub witness: GlWitness,
}

impl BoundaryComponent {
    /// The label with orientation folded in, as produced by the clutching
    /// classification.
    pub fn signed_label(&self) -> BoundaryLabel {
        match (&self.label, self.orientation_sign) {
            (BoundaryLabel::Standard(a), -1) => BoundaryLabel::ConjStandard(a.clone()),
            (l, _) => l.clone(),
        }
    }

    pub fn chern_data(&self) -> Result<ChernData> {
        self.label.chern_data(self.xi.rank())
    }
}

/// Facets `F1, F3, F5` of the hexagon that border each marked facet, in the
/// order they appear as `base1, base2`.
fn expected_bases(facet: &str) -> Option<(&'static str, &'static str)> {
    match facet {
        "F2" => Some(("F1", "F3")),
        "F4" => Some(("F3", "F5")),
        "F6" => Some(("F1", "F5")),
        _ => None,
    }
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::Inconsistent(msg.into())
}

fn identify(d: &HexPrismData, facet: &str) -> Result<BoundaryComponent> {
    let n = d.n;
    let (sub, xi) = restriction(&d.q, &d.marking, &d.lambda, facet)?;
    let (base1, base2) = expected_bases(facet)
        .ok_or_else(|| inconsistent(format!("`{facet}` is not one of {MARKED:?}")))?;

    let mut renamed = vec![base1.to_string(), base2.to_string()];
    renamed.extend((1..=n).map(|j| format!("F{}", 6 + j)));
    if sub.facets() != &renamed[..] {
        return Err(inconsistent(format!(
            "restriction to `{facet}` has facets {:?}",
            sub.facets()
        )));
    }
    let catalog = bundle_polytope(n)?;
    let catalog_names: Vec<String> = catalog.facets().to_vec();
    if !sub
        .with_facet_names(catalog_names.clone())?
        .same_incidence(&catalog)
    {
        return Err(inconsistent(format!(
            "restriction to `{facet}` is not combinatorially Δ¹ × Δ^{}",
            n - 1
        )));
    }
    let mut xi_cat = VectorAssignment::empty(n);
    for (old, new) in renamed.iter().zip(&catalog_names) {
        xi_cat.insert(
            new.clone(),
            xi.get(old).expect("restriction covers facets").clone(),
        )?;
    }

    // Read the catalog parameters off the two base columns.
    let v1 = xi_cat.get(BASE_FACETS[0]).unwrap();
    let v2 = xi_cat.get(BASE_FACETS[1]).unwrap();
    let kind = if v1[0].is_one() {
        StructureKind::Standard
    } else if (-&v1[0]).is_one() {
        StructureKind::Twisted
    } else {
        return Err(inconsistent(format!("`{base1}` leads with {}", v1[0])));
    };
    let b_parameter = v1[1].clone();
    let a_parameter = &b_parameter - &v2[1];

    let target = characteristic_matrix(n, kind, &a_parameter, &b_parameter)?;
    let blocks = if n <= MAX_BLOCK {
        vec![fiber_facets(n)]
    } else {
        Vec::new()
    };
    let witness = gl_equivalent(&xi_cat, &target, &blocks, false)?.ok_or_else(|| {
        inconsistent(format!(
            "restriction to `{facet}` is not equivalent to the {kind} catalog matrix with a = {a_parameter}, b = {b_parameter}"
        ))
    })?;

    let label = match kind {
        StructureKind::Standard => BoundaryLabel::Standard(a_parameter.clone()),
        StructureKind::Twisted => BoundaryLabel::Twisted(a_parameter.clone()),
    };
    Ok(BoundaryComponent {
        facet: facet.to_string(),
        polytope: sub,
        xi,
        label,
        kind,
        a_parameter,
        b_parameter,
        orientation_sign: if facet == "F6" { -1 } else { 1 },
        witness,
    })
}

/// Identifies the restrictions to `F2`, `F4`, `F6` and checks them against
/// `Standard(a)`, `Twisted(b − a)` and `Standard(b)` with b-parameters
/// `0`, `−a`, `0`. The `F6` component carries orientation `−1`.
pub fn boundary_components(d: &HexPrismData) -> Result<Vec<BoundaryComponent>> {
    if !validate(d)?.passed {
        return Err(domain("the isotropy data does not validate"));
    }
    let expected = [
        ("F2", BoundaryLabel::Standard(d.a.clone()), BigInt::zero()),
        ("F4", BoundaryLabel::Twisted(&d.b - &d.a), -&d.a),
        ("F6", BoundaryLabel::Standard(d.b.clone()), BigInt::zero()),
    ];
    expected
        .into_iter()
        .map(|(facet, label, b_param)| {
            let c = identify(d, facet)?;
            if c.label != label || c.b_parameter != b_param {
                return Err(inconsistent(format!(
                    "`{facet}` matched {} with b-parameter {}, expected {label} with b-parameter {b_param}",
                    c.label, c.b_parameter
                )));
            }
            Ok(c)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: usize,
    #[serde(with = "intser")]
    pub a: BigInt,
    #[serde(with = "intser")]
    pub b: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernTables {
    /// One table per boundary component, in `F2, F4, F6` order.
    pub components: Vec<ComponentTable>,
    /// Signed sums over the boundary components.
    pub rows: Vec<GluingRow>,
    pub sums_vanish: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentTable {
    pub facet: String,
    pub label: BoundaryLabel,
    #[serde(serialize_with = "serialize_sign")]
    pub orientation_sign: i8,
    pub data: ChernData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub params: Params,
    pub isotropy_valid: bool,
    pub validation: ValidationReport,
    pub boundaries: Vec<BoundaryComponent>,
    pub chern_tables: Option<ChernTables>,
    pub triple: IdentityReport,
    pub gluing: GluingReport,
    pub verdict: Verdict,
    /// Description of the first failed sub-check.
    pub witness: Option<String>,
}

fn chern_tables(components: &[BoundaryComponent], n: usize) -> Result<ChernTables> {
    let tables = components
        .iter()
        .map(|c| {
            Ok(ComponentTable {
                facet: c.facet.clone(),
                label: c.label.clone(),
                orientation_sign: c.orientation_sign,
                data: c.chern_data()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<GluingRow> = partitions(n)?
        .into_iter()
        .map(|p| {
            let terms: Vec<BigInt> = tables
                .iter()
                .map(|t| {
                    t.data.get(&p).cloned().unwrap_or_default() * BigInt::from(t.orientation_sign)
                })
                .collect();
            let sum = terms.iter().sum();
            GluingRow {
                partition: p,
                terms,
                sum,
            }
        })
        .collect();
    let sums_vanish = rows.iter().all(|r| r.sum.is_zero());
    Ok(ChernTables {
        components: tables,
        rows,
        sums_vanish,
    })
}

/// Runs every check for the given parameters and collects the results.
pub fn certificate(n: usize, a: &BigInt, b: &BigInt) -> Result<Certificate> {
    let d = build(n, a, b)?;
    let validation = validate(&d)?;
    let (boundaries, tables) = if validation.passed {
        let boundaries = boundary_components(&d)?;
        let tables = chern_tables(&boundaries, n)?;
        (boundaries, Some(tables))
    } else {
        (Vec::new(), None)
    };
    let triple = verify_identity(n, &Identity::Triple(a.clone(), b.clone()))?;
    let gluing = verify_gluing_bordism(n, a, b)?;

    let mut witness = None;
    if !validation.passed {
        witness = Some(match &validation.witness {
            Some(v) => format!("vertex {:?}: {}", v.vertex, v.reason),
            None => "the exceptional marking is invalid".to_string(),
        });
    } else if let Some(t) = tables.as_ref().filter(|t| !t.sums_vanish) {
        let row = t.rows.iter().find(|r| !r.sum.is_zero()).unwrap();
        witness = Some(format!(
            "boundary Chern numbers for {} sum to {}",
            row.partition, row.sum
        ));
    } else if !triple.passed {
        witness = Some(match &triple.counterexample {
            Some(c) => format!("triple relation fails at {}: {}", c.partition, c.detail),
            None => "triple relation fails".to_string(),
        });
    } else if !gluing.passed {
        witness = Some(match &gluing.counterexample {
            Some(p) => format!("gluing relation fails at {p}"),
            None => "gluing labels do not match".to_string(),
        });
    }
    Ok(Certificate {
        params: Params {
            n,
            a: a.clone(),
            b: b.clone(),
        },
        isotropy_valid: validation.isotropy.passed,
        verdict: if witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        validation,
        boundaries,
        chern_tables: tables,
        triple,
        gluing,
        witness,
    })
}

/// Exposed for callers that corrupt the data on purpose.
pub fn set_vector(d: &mut HexPrismData, facet: &str, v: Vec<BigInt>) -> Result<()> {
    d.q.facet_index(facet)?;
    d.lambda.insert(facet, v)
}
