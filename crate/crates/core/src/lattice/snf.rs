//! Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d₁ | d₂ | …`, all `dᵢ >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    /// Number of diagonal entries equal to one.
    pub fn unit_count(&self) -> usize {
        self.d.diagonal().iter().filter(|x| x.is_one()).count()
    }
}

/// Computes the Smith normal form. The postconditions are verified before
/// returning; a violation is a bug and panics.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                let form = SmithForm { u, d, v };
                assert_smith(m, &form);
                return form;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest; otherwise pull an offending row
            // up and reduce again with a smaller remainder.
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offending {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let form = SmithForm { u, d, v };
    assert_smith(m, &form);
    form
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Checks every Smith normal form postcondition; returns the first failure.
pub fn check_smith(m: &IntMatrix, form: &SmithForm) -> Result<(), String> {
    let prod = form
        .u
        .mul(m)
        .and_then(|um| um.mul(&form.v))
        .map_err(|e| e.to_string())?;
    if prod != form.d {
        return Err(format!("u·m·v = {prod} but d = {}", form.d));
    }
    if !form.u.is_unimodular() {
        return Err(format!("u = {} is not unimodular", form.u));
    }
    if !form.v.is_unimodular() {
        return Err(format!("v = {} is not unimodular", form.v));
    }
    if !form.d.is_diagonal() {
        return Err(format!("d = {} is not diagonal", form.d));
    }
    let diag = form.d.diagonal();
    if let Some(neg) = diag.iter().find(|x| x.is_negative()) {
        return Err(format!("negative invariant factor {neg}"));
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    Ok(())
}

fn assert_smith(m: &IntMatrix, form: &SmithForm) {
    if let Err(msg) = check_smith(m, form) {
        panic!("Smith normal form postcondition violated for {m}: {msg}");
    }
}
