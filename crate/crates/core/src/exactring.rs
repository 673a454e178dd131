//! Exact integers, partitions, binomials and the cohomology ring of `P^n(a)`.
//!
//! `H*(P^n(a); Z) = Z[x,y] / (x², yⁿ − a·x·yⁿ⁻¹)` has the additive basis
//! `{1, y, …, yⁿ⁻¹, x, x·y, …, x·yⁿ⁻¹}`. Here `x` is the pull-back of the
//! first Chern class of the conjugate tautological bundle over `CP¹` and `y`
//! is the first Chern class of the conjugate tautological bundle of the
//! projectivisation. The top class is `x·yⁿ⁻¹`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub type ExactInt = BigInt;

/// A partition of `n`: positive parts in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition from parts in any order. Parts are sorted into
    /// weakly decreasing order; zero parts and empty input are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(domain("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The integer being partitioned.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Parses `3,1`, `[3,1]` or `3 1`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| domain(format!("`{t}` is not a positive integer part")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting with `[n]`
/// and ending with `[1, …, 1]`.
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    if n < 1 {
        return Err(domain("partitions are enumerated for n >= 1"));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill_partitions(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(
    rest: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, out);
        current.pop();
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `H*(P^n(a); Z)` for a fixed complex dimension `n >= 1` and twist `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomRing {
    n: usize,
    a: BigInt,
}

impl CohomRing {
    pub fn new(n: usize, a: impl Into<BigInt>) -> Result<Self> {
        if n < 1 {
            return Err(domain("the cohomology ring needs n >= 1"));
        }
        Ok(CohomRing { n, a: a.into() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Rank of the ring as a free abelian group (`2n`).
    pub fn rank(&self) -> usize {
        2 * self.n
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            ycoef: vec![BigInt::zero(); self.n],
            xycoef: vec![BigInt::zero(); self.n],
        }
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> RingElement {
        let mut e = self.zero();
        e.ycoef[0] = c.into();
        e
    }

    pub fn one(&self) -> RingElement {
        self.constant(1)
    }

    pub fn x(&self) -> RingElement {
        self.x_y_pow(0)
    }

    pub fn y(&self) -> RingElement {
        self.y_pow(1)
    }

    /// `y^j`, reduced.
    pub fn y_pow(&self, j: usize) -> RingElement {
        let mut e = self.zero();
        if j < self.n {
            e.ycoef[j] = BigInt::one();
        } else if j == self.n {
            e.xycoef[self.n - 1] = self.a.clone();
        }
        e
    }

    /// `x·y^j`, reduced.
    pub fn x_y_pow(&self, j: usize) -> RingElement {
        let mut e = self.zero();
        if j < self.n {
            e.xycoef[j] = BigInt::one();
        }
        e
    }

    /// Builds an element from its two coefficient lists, each of length `n`.
    pub fn element(&self, ycoef: Vec<BigInt>, xycoef: Vec<BigInt>) -> Result<RingElement> {
        if ycoef.len() != self.n || xycoef.len() != self.n {
            return Err(domain(format!(
                "coefficient lists must both have length {}, got {} and {}",
                self.n,
                ycoef.len(),
                xycoef.len()
            )));
        }
        Ok(RingElement {
            ring: self.clone(),
            ycoef,
            xycoef,
        })
    }
}

impl fmt::Display for CohomRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H*(P^{}({}))", self.n, self.a)
    }
}

/// An element of [`CohomRing`] stored in the canonical monomial basis.
///
/// `ycoef[j]` is the coefficient of `y^j` and `xycoef[j]` the coefficient of
/// `x·y^j`, for `0 <= j < n`. Nothing outside this basis is ever stored, so
/// equality is coefficient-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: CohomRing,
    ycoef: Vec<BigInt>,
    xycoef: Vec<BigInt>,
}

impl RingElement {
    pub fn ring(&self) -> &CohomRing {
        &self.ring
    }

    pub fn ycoef(&self) -> &[BigInt] {
        &self.ycoef
    }

    pub fn xycoef(&self) -> &[BigInt] {
        &self.xycoef
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DistinctRings {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            ycoef: zip_with(&self.ycoef, &other.ycoef, |a, b| a + b),
            xycoef: zip_with(&self.xycoef, &other.xycoef, |a, b| a + b),
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            ycoef: zip_with(&self.ycoef, &other.ycoef, |a, b| a - b),
            xycoef: zip_with(&self.xycoef, &other.xycoef, |a, b| a - b),
        })
    }

    pub fn neg(&self) -> RingElement {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            ycoef: self.ycoef.iter().map(|v| v * c).collect(),
            xycoef: self.xycoef.iter().map(|v| v * c).collect(),
        }
    }

    /// Product in the ring, reduced by `x² = 0` and `yⁿ = a·x·yⁿ⁻¹`.
    ///
    /// The second relation forces `x·yⁿ = 0` and `y^{n+1} = 0`.
    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        let n = self.ring.n;
        let mut out = self.ring.zero();
        for (j, p) in self.ycoef.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for k in 0..n {
                let deg = j + k;
                let r = &other.ycoef[k];
                let s = &other.xycoef[k];
                if !r.is_zero() {
                    let t = p * r;
                    if deg < n {
                        out.ycoef[deg] += t;
                    } else if deg == n {
                        out.xycoef[n - 1] += &self.ring.a * t;
                    }
                }
                if !s.is_zero() && deg < n {
                    out.xycoef[deg] += p * s;
                }
            }
        }
        for (j, q) in self.xycoef.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            // x·y^j · y^k only; x·y^j · x·y^k vanishes.
            for k in 0..n - j {
                let r = &other.ycoef[k];
                if !r.is_zero() {
                    out.xycoef[j + k] += q * r;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Coefficient of the top class `x·yⁿ⁻¹`.
    pub fn fundamental_pairing(&self) -> BigInt {
        self.xycoef[self.ring.n - 1].clone()
    }

    /// The part of complex degree `q` (`deg y^j = j`, `deg x·y^j = j + 1`).
    pub fn homogeneous_component(&self, q: usize) -> RingElement {
        let mut out = self.ring.zero();
        if q < self.ring.n {
            out.ycoef[q] = self.ycoef[q].clone();
        }
        if q >= 1 && q <= self.ring.n {
            out.xycoef[q - 1] = self.xycoef[q - 1].clone();
        }
        out
    }

    /// Complex degrees of the monomials with nonzero coefficient.
    pub fn support_degrees(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self
            .ycoef
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| j)
            .chain(
                self.xycoef
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, _)| j + 1),
            )
            .collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    pub fn is_zero(&self) -> bool {
        self.ycoef.iter().chain(&self.xycoef).all(Zero::is_zero)
    }
}

fn zip_with(a: &[BigInt], b: &[BigInt], f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(BigInt, String)> = Vec::new();
        // Ordered by complex degree: y^q before x·y^{q-1}.
        for q in 0..=self.ring.n {
            if q < self.ring.n && !self.ycoef[q].is_zero() {
                let mono = match q {
                    0 => String::new(),
                    1 => "y".to_string(),
                    _ => format!("y^{q}"),
                };
                terms.push((self.ycoef[q].clone(), mono));
            }
            if q >= 1 && !self.xycoef[q - 1].is_zero() {
                let mono = match q - 1 {
                    0 => "x".to_string(),
                    1 => "x*y".to_string(),
                    j => format!("x*y^{j}"),
                };
                terms.push((self.xycoef[q - 1].clone(), mono));
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, mono)) in terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
