//! Chern classes and Chern numbers of `P^n(a)`.
//!
//! Two stably complex structures are modelled:
//!
//! - [`StructureKind::Standard`]: the complex structure, stably isomorphic to
//!   `ζ̄ ⊗ (p*η^a ⊕ Cⁿ⁻¹) ⊕ 2 p*η̄`, with total Chern class
//!   `(1+x)²(1+y−a·x)(1+y)ⁿ⁻¹`.
//! - [`StructureKind::Twisted`]: the structure `c_T(a)` where the last summand
//!   is replaced by a trivial `C²`, with total Chern class
//!   `(1+y−a·x)(1+y)ⁿ⁻¹`.
//!
//! Chern numbers are computed in the cohomology ring and, independently, by
//! the closed binomial formula; the two routes are kept separate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exactring::{binomial, partitions, CohomRing, Partition, RingElement};
use crate::intser;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Standard,
    Twisted,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureKind::Standard => f.write_str("standard"),
            StructureKind::Twisted => f.write_str("twisted"),
        }
    }
}

/// Total Chern class of `P^n(a)` with the given structure, reduced.
pub fn total_chern_class(n: usize, a: &BigInt, kind: StructureKind) -> Result<RingElement> {
    if n < 1 {
        return Err(domain("total Chern class needs n >= 1"));
    }
    let ring = CohomRing::new(n, a.clone())?;
    let one = ring.one();
    let x = ring.x();
    let y = ring.y();
    let one_plus_y = one.add(&y)?;
    // 1 + y - a·x
    let mut c = one_plus_y.sub(&x.scale(a))?;
    c = c.mul(&one_plus_y.pow(n - 1))?;
    if kind == StructureKind::Standard {
        let one_plus_x = one.add(&x)?;
        c = c.mul(&one_plus_x.mul(&one_plus_x)?)?;
    }
    Ok(c)
}

fn check_partition(n: usize, partition: &Partition) -> Result<()> {
    if partition.weight() != n {
        return Err(domain(format!(
            "partition {partition} has weight {}, expected {n}",
            partition.weight()
        )));
    }
    Ok(())
}

fn number_from_class(total: &RingElement, partition: &Partition) -> BigInt {
    let ring = total.ring();
    let mut product = ring.one();
    for &part in partition.parts() {
        product = product
            .mul(&total.homogeneous_component(part))
            .expect("components share the ring");
    }
    product.fundamental_pairing()
}

/// `c_I` computed as the pairing of `c_{i₁}⋯c_{i_r}` with the fundamental class.
pub fn chern_number(
    n: usize,
    a: &BigInt,
    kind: StructureKind,
    partition: &Partition,
) -> Result<BigInt> {
    check_partition(n, partition)?;
    let total = total_chern_class(n, a, kind)?;
    Ok(number_from_class(&total, partition))
}

/// The closed form `2·Σ_q C(n, i_q − 1)·Π_{s≠q} C(n, i_s)` for the standard
/// structure. It does not depend on `a`.
pub fn chern_number_closed(n: usize, partition: &Partition) -> Result<BigInt> {
    check_partition(n, partition)?;
    let n = n as i64;
    let parts: Vec<i64> = partition.parts().iter().map(|&p| p as i64).collect();
    let mut sum = BigInt::zero();
    for q in 0..parts.len() {
        let mut term = binomial(n, parts[q] - 1);
        for (s, &p) in parts.iter().enumerate() {
            if s != q {
                term *= binomial(n, p);
            }
        }
        sum += term;
    }
    Ok(sum * 2)
}

/// Chern numbers for every partition of `n`, in reverse-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub n: usize,
    #[serde(with = "intser")]
    pub a: BigInt,
    pub kind: StructureKind,
    pub numbers: Vec<ChernEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernEntry {
    pub partition: Partition,
    #[serde(with = "intser")]
    pub value: BigInt,
}

impl ChernData {
    pub fn get(&self, partition: &Partition) -> Option<&BigInt> {
        self.numbers
            .iter()
            .find(|e| &e.partition == partition)
            .map(|e| &e.value)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.numbers.iter().map(|e| (&e.partition, &e.value))
    }

    pub fn all_zero(&self) -> bool {
        self.numbers.iter().all(|e| e.value.is_zero())
    }
}

pub fn all_chern_numbers(n: usize, a: &BigInt, kind: StructureKind) -> Result<ChernData> {
    let total = total_chern_class(n, a, kind)?;
    let numbers = partitions(n)?
        .into_iter()
        .map(|partition| {
            let value = number_from_class(&total, &partition);
            ChernEntry { partition, value }
        })
        .collect();
    Ok(ChernData {
        n,
        a: a.clone(),
        kind,
        numbers,
    })
}

/// Which bordism identity to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identity {
    /// Standard Chern numbers agree for all listed `a` and with the closed form.
    AIndependence(Vec<BigInt>),
    /// Every Chern number of `(P^n(a), c_T(a))` vanishes.
    TwistedNull(BigInt),
    /// `c_I(P^n(a)) − c_I(P^n(b)) + c_I(P^n(b−a), c_T(b−a)) = 0`.
    Triple(BigInt, BigInt),
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::AIndependence(list) => {
                let items: Vec<String> = list.iter().map(ToString::to_string).collect();
                write!(f, "a-independence over a in {{{}}}", items.join(","))
            }
            Identity::TwistedNull(a) => write!(f, "twisted-null for a = {a}"),
            Identity::Triple(a, b) => write!(f, "triple relation for a = {a}, b = {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub partition: Partition,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub identity: String,
    pub passed: bool,
    /// Number of (parameter, partition) cases that were compared.
    pub cases: usize,
    pub counterexample: Option<Counterexample>,
}

pub fn verify_identity(n: usize, identity: &Identity) -> Result<IdentityReport> {
    if n < 1 {
        return Err(domain("identities are checked for n >= 1"));
    }
    let mut cases = 0usize;
    let mut counterexample = None;
    match identity {
        Identity::AIndependence(list) => {
            let closed: Vec<(Partition, BigInt)> = partitions(n)?
                .into_iter()
                .map(|p| {
                    let v = chern_number_closed(n, &p)?;
                    Ok((p, v))
                })
                .collect::<Result<_>>()?;
            'outer: for a in list {
                let data = all_chern_numbers(n, a, StructureKind::Standard)?;
                for ((p, expected), entry) in closed.iter().zip(&data.numbers) {
                    cases += 1;
                    if &entry.value != expected {
                        counterexample = Some(Counterexample {
                            partition: p.clone(),
                            detail: format!(
                                "a = {a}: ring value {} differs from closed form {expected}",
                                entry.value
                            ),
                        });
                        break 'outer;
                    }
                }
            }
        }
        Identity::TwistedNull(a) => {
            let data = all_chern_numbers(n, a, StructureKind::Twisted)?;
            for entry in &data.numbers {
                cases += 1;
                if !entry.value.is_zero() {
                    counterexample = Some(Counterexample {
                        partition: entry.partition.clone(),
                        detail: format!("twisted Chern number is {}", entry.value),
                    });
                    break;
                }
            }
        }
        Identity::Triple(a, b) => {
            let std_a = all_chern_numbers(n, a, StructureKind::Standard)?;
            let std_b = all_chern_numbers(n, b, StructureKind::Standard)?;
            let tw = all_chern_numbers(n, &(b - a), StructureKind::Twisted)?;
            for ((ea, eb), et) in std_a.numbers.iter().zip(&std_b.numbers).zip(&tw.numbers) {
                cases += 1;
                let sum = &ea.value - &eb.value + &et.value;
                if !sum.is_zero() {
                    counterexample = Some(Counterexample {
                        partition: ea.partition.clone(),
                        detail: format!("{} - {} + {} = {sum}", ea.value, eb.value, et.value),
                    });
                    break;
                }
            }
        }
    }
    Ok(IdentityReport {
        n,
        identity: identity.to_string(),
        passed: counterexample.is_none(),
        cases,
        counterexample,
    })
}

/// Sign-weighted sum of Chern numbers `Σ sign·c_I` over several manifolds.
pub fn signed_sum(terms: &[(i8, &ChernData)]) -> Vec<(Partition, BigInt)> {
    let Some((_, first)) = terms.first() else {
        return Vec::new();
    };
    first
        .numbers
        .iter()
        .enumerate()
        .map(|(idx, entry)| {
            let total = terms.iter().fold(BigInt::zero(), |acc, (sign, data)| {
                let v = &data.numbers[idx].value;
                if *sign < 0 {
                    acc - v
                } else {
                    acc + v
                }
            });
            (entry.partition.clone(), total)
        })
        .collect()
}

/// Euler characteristic of `CP¹ × CPⁿ⁻¹`, which equals `c_n`.
pub fn euler_characteristic(n: usize) -> BigInt {
    BigInt::from(n) * 2
}
