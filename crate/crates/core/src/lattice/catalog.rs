//! Characteristic matrices of the projective bundles over `Δ¹ × Δⁿ⁻¹`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::VectorAssignment;
use crate::chern::StructureKind;
use crate::error::{domain, Result};
use crate::polytope::{Canonical, SimplePolytope};

pub const BASE_FACETS: [&str; 2] = ["base1", "base2"];

/// Fiber facet names `fiber1, …, fibern`.
pub fn fiber_facets(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("fiber{j}")).collect()
}

/// `Δ¹ × Δⁿ⁻¹` with facets `base1, base2, fiber1, …, fibern`.
pub fn bundle_polytope(n: usize) -> Result<SimplePolytope> {
    if n < 2 {
        return Err(domain("the bundle polytope needs n >= 2"));
    }
    let base = SimplePolytope::canonical(Canonical::Simplex(1))?;
    let fiber = SimplePolytope::canonical(Canonical::Simplex(n - 1))?;
    let names = BASE_FACETS
        .iter()
        .map(|s| s.to_string())
        .chain(fiber_facets(n))
        .collect();
    base.product(&fiber).with_facet_names(names)
}

/// Columns `(±1, b, 0, …)`, `(−1, b − a, 0, …)`, `e₂, …, eₙ`,
/// `−(e₂ + ⋯ + eₙ)` on [`bundle_polytope`]; the first entry is `+1` for the
/// standard structure and `−1` for the twisted one.
pub fn characteristic_matrix(
    n: usize,
    kind: StructureKind,
    a: &BigInt,
    b: &BigInt,
) -> Result<VectorAssignment> {
    if n < 2 {
        return Err(domain("the bundle polytope needs n >= 2"));
    }
    let head = |first: BigInt, second: BigInt| {
        let mut v = vec![BigInt::zero(); n];
        v[0] = first;
        v[1] = second;
        v
    };
    let lead = match kind {
        StructureKind::Standard => BigInt::one(),
        StructureKind::Twisted => -BigInt::one(),
    };
    let mut chi = VectorAssignment::empty(n);
    chi.insert(BASE_FACETS[0], head(lead, b.clone()))?;
    chi.insert(BASE_FACETS[1], head(-BigInt::one(), b - a))?;
    for (j, name) in fiber_facets(n).into_iter().enumerate().take(n - 1) {
        let mut e = vec![BigInt::zero(); n];
        e[j + 1] = BigInt::one();
        chi.insert(name, e)?;
    }
    let mut last = vec![-BigInt::one(); n];
    last[0] = BigInt::zero();
    chi.insert(format!("fiber{n}"), last)?;
    Ok(chi)
}
