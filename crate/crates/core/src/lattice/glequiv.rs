//! Search for `GL_n(Z)` equivalences between vector assignments.

use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::matrix::IntMatrix;
use super::VectorAssignment;
use crate::error::{domain, Error, Result};

/// Largest permutation block the search accepts.
pub const MAX_BLOCK: usize = 8;

/// `U · A(F) = signs[F] · B(sigma[F])` for every facet `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlWitness {
    pub u: IntMatrix,
    pub sigma: IndexMap<String, String>,
    pub signs: IndexMap<String, i8>,
}

impl GlWitness {
    pub fn is_identity_permutation(&self) -> bool {
        self.sigma.iter().all(|(f, g)| f == g)
    }
}

/// Checks a witness from scratch.
pub fn verify_witness(
    a: &VectorAssignment,
    b: &VectorAssignment,
    w: &GlWitness,
) -> std::result::Result<(), String> {
    if !w.u.is_unimodular() || w.u.rows() != a.rank() {
        return Err(format!(
            "U = {} is not a unimodular {}×{} matrix",
            w.u,
            a.rank(),
            a.rank()
        ));
    }
    if w.sigma.len() != a.len() || a.len() != b.len() {
        return Err("sigma does not cover every facet".into());
    }
    let images: HashSet<&String> = w.sigma.values().collect();
    if images.len() != w.sigma.len() {
        return Err("sigma is not injective".into());
    }
    for (f, va) in a.iter() {
        let g = w
            .sigma
            .get(f)
            .ok_or_else(|| format!("sigma misses `{f}`"))?;
        let vb = b
            .get(g)
            .ok_or_else(|| format!("`{g}` is not a facet of B"))?;
        let s = *w.signs.get(f).ok_or_else(|| format!("no sign for `{f}`"))?;
        if s != 1 && s != -1 {
            return Err(format!("sign {s} for `{f}` is not ±1"));
        }
        let lhs = w.u.mul_vec(va);
        let rhs: Vec<BigInt> = vb.iter().map(|x| x * BigInt::from(s)).collect();
        if lhs != rhs {
            return Err(format!("U·A({f}) ≠ {s}·B({g})"));
        }
    }
    Ok(())
}

struct Search<'a> {
    a: &'a VectorAssignment,
    b: &'a VectorAssignment,
    facets: Vec<String>,
    candidates: Vec<Vec<usize>>,
    pivots: Vec<usize>,
    a_sel_adj: IntMatrix,
    a_sel_det: BigInt,
    signs: Vec<i8>,
}

/// Looks for a unimodular `U` and a permutation `σ` of facets, moving facets
/// only inside `perm_blocks`, with `U · A(F) = ±B(σ(F))`. Signs other than
/// `+1` are used only when `allow_sign` is set.
///
/// Every returned witness has passed [`verify_witness`]. Errors are raised
/// for malformed input: differing ranks or facet sets, unknown or repeated
/// block members, oversized blocks, or an `A` whose vectors do not span.
pub fn gl_equivalent(
    a: &VectorAssignment,
    b: &VectorAssignment,
    perm_blocks: &[Vec<String>],
    allow_sign: bool,
) -> Result<Option<GlWitness>> {
    let rank = a.rank();
    if rank != b.rank() {
        return Err(domain(format!("ranks differ: {} and {}", rank, b.rank())));
    }
    let facets: Vec<String> = a.facets().cloned().collect();
    let b_set: HashSet<&String> = b.facets().collect();
    if facets.len() != b_set.len() || facets.iter().any(|f| !b_set.contains(f)) {
        return Err(domain("the two assignments have different facet sets"));
    }
    let index: HashMap<&str, usize> = facets
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_str(), i))
        .collect();

    let mut block_of: Vec<Option<usize>> = vec![None; facets.len()];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for block in perm_blocks {
        if block.len() > MAX_BLOCK {
            return Err(domain(format!(
                "permutation block of size {} exceeds {MAX_BLOCK}",
                block.len()
            )));
        }
        let mut members = Vec::new();
        for f in block {
            let &i = index
                .get(f.as_str())
                .ok_or_else(|| Error::UnknownFacet(f.clone()))?;
            if block_of[i].is_some() {
                return Err(domain(format!(
                    "facet `{f}` appears in more than one block position"
                )));
            }
            block_of[i] = Some(blocks.len());
            members.push(i);
        }
        blocks.push(members);
    }
    // Identity first, then the rest of the block in facet order.
    let candidates: Vec<Vec<usize>> = (0..facets.len())
        .map(|i| match block_of[i] {
            None => vec![i],
            Some(k) => {
                let mut c = vec![i];
                let mut rest: Vec<usize> = blocks[k].iter().copied().filter(|&j| j != i).collect();
                rest.sort_unstable();
                c.extend(rest);
                c
            }
        })
        .collect();

    let mut pivots = Vec::with_capacity(rank);
    for (i, f) in facets.iter().enumerate() {
        if pivots.len() == rank {
            break;
        }
        let mut cols: Vec<Vec<BigInt>> = pivots
            .iter()
            .map(|&p: &usize| a.get(&facets[p]).unwrap().clone())
            .collect();
        cols.push(a.get(f).unwrap().clone());
        if IntMatrix::from_columns(rank, &cols)?.rank() == cols.len() {
            pivots.push(i);
        }
    }
    if pivots.len() < rank {
        return Err(domain("the vectors of A do not span a full-rank lattice"));
    }
    let a_sel_cols: Vec<Vec<BigInt>> = pivots
        .iter()
        .map(|&p| a.get(&facets[p]).unwrap().clone())
        .collect();
    let a_sel = IntMatrix::from_columns(rank, &a_sel_cols)?;

    let mut search = Search {
        a,
        b,
        facets,
        candidates,
        pivots,
        a_sel_adj: a_sel.adjugate(),
        a_sel_det: a_sel.det(),
        signs: if allow_sign { vec![1, -1] } else { vec![1] },
    };
    let mut chosen = Vec::with_capacity(rank);
    let mut used = vec![false; search.facets.len()];
    let found = search.dfs(&mut chosen, &mut used);
    if let Some(w) = &found {
        if let Err(msg) = verify_witness(a, b, w) {
            return Err(Error::Inconsistent(format!(
                "witness failed verification: {msg}"
            )));
        }
    }
    Ok(found)
}

impl Search<'_> {
    fn dfs(&mut self, chosen: &mut Vec<(usize, i8)>, used: &mut [bool]) -> Option<GlWitness> {
        let k = chosen.len();
        if k == self.pivots.len() {
            return self.complete(chosen, used);
        }
        let p = self.pivots[k];
        let options = self.candidates[p].clone();
        let signs = self.signs.clone();
        for g in options {
            if used[g] {
                continue;
            }
            for &s in &signs {
                used[g] = true;
                chosen.push((g, s));
                let r = self.dfs(chosen, used);
                chosen.pop();
                used[g] = false;
                if r.is_some() {
                    return r;
                }
            }
        }
        None
    }

    fn vec_b(&self, g: usize, s: i8) -> Vec<BigInt> {
        let v = self.b.get(&self.facets[g]).unwrap();
        if s == 1 {
            v.clone()
        } else {
            v.iter().map(|x| -x).collect()
        }
    }

    /// Solves for `U` from the pivot images, then matches the remaining
    /// facets greedily. Candidate sets are whole blocks and equal images are
    /// interchangeable, so greedy matching finds a completion when one exists.
    fn complete(&self, chosen: &[(usize, i8)], used: &[bool]) -> Option<GlWitness> {
        let rank = self.a.rank();
        let b_cols: Vec<Vec<BigInt>> = chosen.iter().map(|&(g, s)| self.vec_b(g, s)).collect();
        let b_sel = IntMatrix::from_columns(rank, &b_cols).ok()?;
        let num = b_sel.mul(&self.a_sel_adj).ok()?;
        let mut rows = num.to_rows();
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                let (q, r) = x.div_rem(&self.a_sel_det);
                if !r.is_zero() {
                    return None;
                }
                *x = q;
            }
        }
        let u = IntMatrix::from_rows(rows).ok()?;
        if !u.is_unimodular() {
            return None;
        }

        let n = self.facets.len();
        let mut target: Vec<Option<(usize, i8)>> = vec![None; n];
        for (&p, &c) in self.pivots.iter().zip(chosen) {
            target[p] = Some(c);
        }
        let mut used = used.to_vec();
        for (f, slot) in target.iter_mut().enumerate() {
            if slot.is_some() {
                continue;
            }
            let image = u.mul_vec(self.a.get(&self.facets[f]).unwrap());
            let hit = self.candidates[f].iter().find_map(|&g| {
                if used[g] {
                    return None;
                }
                self.signs
                    .iter()
                    .find(|&&s| self.vec_b(g, s) == image)
                    .map(|&s| (g, s))
            })?;
            used[hit.0] = true;
            *slot = Some(hit);
        }

        let mut sigma = IndexMap::new();
        let mut signs = IndexMap::new();
        for (f, t) in target.iter().enumerate() {
            let (g, s) = t.expect("every facet matched");
            sigma.insert(self.facets[f].clone(), self.facets[g].clone());
            signs.insert(self.facets[f].clone(), s);
        }
        Some(GlWitness { u, sigma, signs })
    }
}
