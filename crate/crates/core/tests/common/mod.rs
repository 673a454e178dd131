//! Independent reference computations shared by the integration tests.
//! Everything here uses plain `i128` arithmetic and its own algorithms.

#![allow(dead_code)]

/// Pascal-triangle binomial; zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut row = vec![1i128];
    for _ in 0..n {
        let mut next = vec![1i128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

/// `2 · Σ_q C(n, i_q − 1) · Π_{s≠q} C(n, i_s)`.
pub fn closed_form(n: usize, parts: &[usize]) -> i128 {
    let n = n as i64;
    let mut sum = 0i128;
    for q in 0..parts.len() {
        let mut term = binom(n, parts[q] as i64 - 1);
        for (s, &p) in parts.iter().enumerate() {
            if s != q {
                term *= binom(n, p as i64);
            }
        }
        sum += term;
    }
    2 * sum
}

/// Dense polynomials in `x, y` truncated at `x² = 0`: index `[e][j]` is the
/// coefficient of `x^e y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub c: [Vec<i128>; 2],
}

impl Dense {
    pub fn zero(len: usize) -> Self {
        Dense {
            c: [vec![0; len], vec![0; len]],
        }
    }

    pub fn term(len: usize, e: usize, j: usize, coef: i128) -> Self {
        let mut d = Self::zero(len);
        if j < len {
            d.c[e][j] = coef;
        }
        d
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut r = self.clone();
        for e in 0..2 {
            for j in 0..r.c[e].len() {
                r.c[e][j] += o.c[e][j];
            }
        }
        r
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let len = self.c[0].len();
        let mut r = Self::zero(len);
        for e1 in 0..2 {
            for e2 in 0..2 - e1 {
                for j1 in 0..len {
                    if self.c[e1][j1] == 0 {
                        continue;
                    }
                    for j2 in 0..len - j1 {
                        r.c[e1 + e2][j1 + j2] += self.c[e1][j1] * o.c[e2][j2];
                    }
                }
            }
        }
        r
    }

    /// Homogeneous part of degree `q`, where `deg x = deg y = 1`.
    pub fn degree(&self, q: usize) -> Dense {
        let len = self.c[0].len();
        let mut r = Self::zero(len);
        if q < len {
            r.c[0][q] = self.c[0][q];
        }
        if q >= 1 && q - 1 < len {
            r.c[1][q - 1] = self.c[1][q - 1];
        }
        r
    }
}

/// Reduces modulo `yⁿ = a·x·yⁿ⁻¹` (so `yⁿ⁺¹ = 0`, `x·yⁿ = 0`) and reads off
/// the coefficient of `x·yⁿ⁻¹`.
pub fn pair_projective(p: &Dense, n: usize, a: i128) -> i128 {
    let mut top = p.c[1][n - 1];
    if n < p.c[0].len() {
        top += a * p.c[0][n];
    }
    top
}

fn power(base: &Dense, e: usize) -> Dense {
    let len = base.c[0].len();
    let mut r = Dense::term(len, 0, 0, 1);
    for _ in 0..e {
        r = r.mul(base);
    }
    r
}

/// Chern number from the total class by brute-force expansion in the free
/// truncated ring; the relation is applied only when pairing.
fn number_from_total(total: &Dense, parts: &[usize], pair: impl Fn(&Dense) -> i128) -> i128 {
    let len = total.c[0].len();
    let mut prod = Dense::term(len, 0, 0, 1);
    for &i in parts {
        prod = prod.mul(&total.degree(i));
    }
    let top: usize = parts.iter().sum();
    pair(&prod.degree(top))
}

/// `(1+x)²(1+y−ax)(1+y)ⁿ⁻¹` or `(1+y−ax)(1+y)ⁿ⁻¹`, then the Chern number.
///
/// The product is expanded in `Z[x,y]/(x²)` up to `y^(n+1)` and only then
/// reduced, which is legitimate because the relation ideal is homogeneous.
pub fn chern_oracle(n: usize, a: i128, twisted: bool, parts: &[usize]) -> i128 {
    let len = n + 2;
    let one = Dense::term(len, 0, 0, 1);
    let x = Dense::term(len, 1, 0, 1);
    let y = Dense::term(len, 0, 1, 1);
    let one_plus_y = one.add(&y);
    let line = one_plus_y.add(&Dense::term(len, 1, 0, -a));
    let mut total = line.mul(&power(&one_plus_y, n - 1));
    if !twisted {
        let one_plus_x = one.add(&x);
        total = total.mul(&one_plus_x).mul(&one_plus_x);
    }
    number_from_total(&total, parts, |p| pair_projective(p, n, a))
}

/// Chern numbers of `CP¹ × CPⁿ⁻¹` from `(1+u)²(1+v)ⁿ` with `u² = vⁿ = 0`.
pub fn product_oracle(n: usize, parts: &[usize]) -> i128 {
    let len = n + 2;
    let one = Dense::term(len, 0, 0, 1);
    let u = Dense::term(len, 1, 0, 1);
    let v = Dense::term(len, 0, 1, 1);
    let total = one.add(&u).mul(&one.add(&u)).mul(&power(&one.add(&v), n));
    number_from_total(&total, parts, |p| p.c[1][n - 1])
}

/// Partitions of `n` by a separate recursive generator, parts descending.
pub fn partitions_oracle(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut total = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * m[0][j] * det(&minor);
            }
            total
        }
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Columns extend to a basis of `Z^rank` iff the gcd of their maximal minors is 1.
pub fn part_of_basis_oracle(rank: usize, cols: &[Vec<i128>]) -> bool {
    let r = cols.len();
    if r == 0 {
        return true;
    }
    if r > rank {
        return false;
    }
    let mut g = 0;
    for rows in subsets(rank, r) {
        let m: Vec<Vec<i128>> = rows
            .iter()
            .map(|&i| cols.iter().map(|c| c[i]).collect())
            .collect();
        g = gcd(g, det(&m));
    }
    g == 1
}

/// Vectors of the hexagon-prism isotropy matrix, by facet number `1..=n+6`
/// (marked facets `2, 4, 6` have none).
pub fn hex_columns(n: usize, a: i128, b: i128) -> Vec<(usize, Vec<i128>)> {
    let e = |k: usize| (0..n).map(|i| i128::from(i == k)).collect::<Vec<_>>();
    let slanted = |t: i128| {
        (0..n)
            .map(|i| [-1, -t].get(i).copied().unwrap_or(0))
            .collect::<Vec<_>>()
    };
    let mut cols = vec![(1, e(0)), (3, slanted(a)), (5, slanted(b))];
    for j in 1..n {
        cols.push((6 + j, e(j)));
    }
    cols.push((n + 6, (0..n).map(|i| if i == 0 { 0 } else { -1 }).collect()));
    cols
}

/// Vertices of `H² × Δⁿ⁻¹` as facet numbers: an adjacent pair of hexagon
/// edges together with all simplex facets but one.
pub fn hex_vertices(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 1..=6 {
        let next = i % 6 + 1;
        for skip in 7..=n + 6 {
            let mut v = vec![i, next];
            v.extend((7..=n + 6).filter(|&f| f != skip));
            v.sort_unstable();
            out.push(v);
        }
    }
    out
}
