//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each,
//! then fails if any criterion failed.

mod common;

use std::time::Instant;

use cobordkit::chern::{all_chern_numbers, chern_number, StructureKind};
use cobordkit::clutch::{gluing_triple, verify_gluing_bordism, BoundaryLabel};
use cobordkit::exactring::{partitions, CohomRing, RingElement};
use cobordkit::hexprism::{boundary_components, build, validate};
use cobordkit::lattice::{
    bundle_polytope, characteristic_matrix, check_lemma_equivalence, check_smith, fiber_facets,
    gl_equivalent, is_characteristic, is_part_of_basis, restriction, smith_normal_form,
    verify_witness, IntMatrix, VectorAssignment,
};
use cobordkit::polytope::{hexagon_prism, ExceptionalMarking};
use common::*;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Spot = (&'static [usize], i128);
type Criterion = (&'static str, fn() -> Outcome);

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn to_i128(x: &BigInt) -> i128 {
    i128::try_from(x).expect("value fits in i128")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut cases = 0;
    for n in 1..=8 {
        let parts_oracle = partitions_oracle(n);
        let parts = partitions(n).map_err(|e| e.to_string())?;
        ensure(
            parts.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>() == parts_oracle,
            || format!("partition list for n={n} differs from the oracle"),
        )?;
        for a in -5..=5 {
            let data = all_chern_numbers(n, &big(a), StructureKind::Standard)
                .map_err(|e| e.to_string())?;
            for (p, v) in data.iter() {
                let expect = closed_form(n, p.parts());
                ensure(to_i128(v) == expect, || {
                    format!("n={n} a={a} {p}: ring {v}, closed form {expect}")
                })?;
                let ring_oracle = chern_oracle(n, a.into(), false, p.parts());
                ensure(ring_oracle == expect, || {
                    format!("n={n} a={a} {p}: oracle ring {ring_oracle}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, a, I) cases"))
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for n in 1..=8 {
        for a in -5..=5 {
            let data =
                all_chern_numbers(n, &big(a), StructureKind::Twisted).map_err(|e| e.to_string())?;
            for (p, v) in data.iter() {
                ensure(v == &big(0), || format!("n={n} a={a} {p}: {v}"))?;
                ensure(chern_oracle(n, a.into(), true, p.parts()) == 0, || {
                    format!("oracle nonzero at n={n} a={a} {p}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases all zero"))
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for n in 1..=6 {
        let ps = partitions(n).map_err(|e| e.to_string())?;
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                for p in &ps {
                    let f =
                        |t: i64, kind| chern_number(n, &big(t), kind, p).map_err(|e| e.to_string());
                    let sum = f(a, StructureKind::Standard)? - f(b, StructureKind::Standard)?
                        + f(b - a, StructureKind::Twisted)?;
                    ensure(sum == big(0), || {
                        format!("n={n} a={a} b={b} {p}: sum {sum}")
                    })?;
                    let o = chern_oracle(n, a.into(), false, p.parts())
                        - chern_oracle(n, b.into(), false, p.parts())
                        + chern_oracle(n, (b - a).into(), true, p.parts());
                    ensure(o == 0, || {
                        format!("oracle sum {o} at n={n} a={a} b={b} {p}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn criterion_4() -> Outcome {
    let spots: [(usize, &[Spot]); 2] = [
        (2, &[(&[2], 4), (&[1, 1], 8)]),
        (3, &[(&[3], 6), (&[2, 1], 24), (&[1, 1, 1], 54)]),
    ];
    for (n, list) in spots {
        for &(parts, expect) in list {
            ensure(product_oracle(n, parts) == expect, || {
                format!("product oracle n={n} {parts:?}")
            })?;
            ensure(closed_form(n, parts) == expect, || {
                format!("closed form n={n} {parts:?}")
            })?;
            for a in -2..=2 {
                let p = cobordkit::Partition::new(parts.to_vec()).map_err(|e| e.to_string())?;
                let v = chern_number(n, &big(a), StructureKind::Standard, &p)
                    .map_err(|e| e.to_string())?;
                ensure(v == BigInt::from(expect), || {
                    format!("n={n} a={a} {p}: {v}, expected {expect}")
                })?;
            }
        }
    }
    for n in 1..=8 {
        for p in partitions_oracle(n) {
            ensure(product_oracle(n, &p) == closed_form(n, &p), || {
                format!("product vs closed form n={n} {p:?}")
            })?;
        }
    }
    Ok("c2=4 c1^2=8; c3=6 c1c2=24 c1^3=54".into())
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for n in 1..=6 {
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                // f_{X,Y} = f_Y^{-1} f_X adds degrees, so pairs are differences.
                let f = [(0i64, 1i64), (a, -1), (b, -1)];
                let pair = |x: usize, y: usize| (f[x].0 - f[y].0, f[x].1 - f[y].1);
                let label = |(d, e): (i64, i64)| match e {
                    2 => BoundaryLabel::Standard(big(-d)),
                    0 => BoundaryLabel::Twisted(big(-d)),
                    -2 => BoundaryLabel::ConjStandard(big(d)),
                    _ => BoundaryLabel::Unclassified,
                };
                let oracle_labels = [label(pair(0, 1)), label(pair(1, 2)), label(pair(2, 0))];
                let expected = [
                    BoundaryLabel::Standard(big(a)),
                    BoundaryLabel::Twisted(big(b - a)),
                    BoundaryLabel::ConjStandard(big(b)),
                ];
                ensure(oracle_labels == expected, || {
                    format!("oracle labels at a={a} b={b}: {oracle_labels:?}")
                })?;
                let t = gluing_triple(n, &big(a), &big(b)).map_err(|e| e.to_string())?;
                ensure(t.labels == expected, || {
                    format!("n={n} a={a} b={b}: labels {:?}", t.labels)
                })?;
                let r = verify_gluing_bordism(n, &big(a), &big(b)).map_err(|e| e.to_string())?;
                ensure(r.passed && r.labels_match, || {
                    format!("n={n} a={a} b={b}: gluing report failed")
                })?;
                for row in &r.rows {
                    let parts = row.partition.parts();
                    let o = chern_oracle(n, a.into(), false, parts)
                        + chern_oracle(n, (b - a).into(), true, parts)
                        - chern_oracle(n, b.into(), false, parts);
                    ensure(o == 0 && row.sum == big(0), || {
                        format!("n={n} a={a} b={b} {}: sum {}", row.partition, row.sum)
                    })?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, a, b) triples"))
}

fn criterion_6() -> Outcome {
    let mut dets = 0;
    for n in 2..=8 {
        let p = bundle_polytope(n).map_err(|e| e.to_string())?;
        ensure(p.vertices().len() == 2 * n, || {
            format!("n={n}: {} vertices", p.vertices().len())
        })?;
        for a in -5..=5i64 {
            for b in -5..=5i64 {
                for kind in [StructureKind::Standard, StructureKind::Twisted] {
                    let chi = characteristic_matrix(n, kind, &big(a), &big(b))
                        .map_err(|e| e.to_string())?;
                    let r = is_characteristic(&p, &chi).map_err(|e| e.to_string())?;
                    ensure(r.passed && r.vertices_checked == 2 * n, || {
                        format!("n={n} a={a} b={b} {kind}: {r:?}")
                    })?;
                    // Oracle: base column i with all fiber columns but one.
                    let lead: i128 = if kind == StructureKind::Standard {
                        1
                    } else {
                        -1
                    };
                    let mut base = [vec![0i128; n], vec![0i128; n]];
                    base[0][0] = lead;
                    base[0][1] = b.into();
                    base[1][0] = -1;
                    base[1][1] = (b - a).into();
                    let mut fibers: Vec<Vec<i128>> = (1..n)
                        .map(|j| (0..n).map(|i| i128::from(i == j)).collect())
                        .collect();
                    fibers.push((0..n).map(|i| if i == 0 { 0 } else { -1 }).collect());
                    for bcol in &base {
                        for skip in 0..n {
                            let mut cols = vec![bcol.clone()];
                            cols.extend(
                                fibers
                                    .iter()
                                    .enumerate()
                                    .filter(|&(k, _)| k != skip)
                                    .map(|(_, c)| c.clone()),
                            );
                            let m: Vec<Vec<i128>> = (0..n)
                                .map(|i| cols.iter().map(|c| c[i]).collect())
                                .collect();
                            let d = det(&m);
                            ensure(d.abs() == 1, || {
                                format!("oracle det {d} at n={n} a={a} b={b} {kind}")
                            })?;
                            dets += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{dets} vertex determinants all ±1"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 2..=6usize {
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                let d = build(n, &big(a), &big(b)).map_err(|e| e.to_string())?;
                let v = validate(&d).map_err(|e| e.to_string())?;
                ensure(v.passed && v.exceptional.valid && v.isotropy.passed, || {
                    format!("n={n} a={a} b={b}: validation failed")
                })?;
                let comps = boundary_components(&d).map_err(|e| e.to_string())?;
                let expected = [
                    ("F2", BoundaryLabel::Standard(big(a)), big(0), 1i8),
                    ("F4", BoundaryLabel::Twisted(big(b - a)), big(-a), 1),
                    ("F6", BoundaryLabel::Standard(big(b)), big(0), -1),
                ];
                ensure(comps.len() == 3, || format!("{} components", comps.len()))?;
                for (c, (facet, label, bp, sign)) in comps.iter().zip(expected) {
                    ensure(
                        c.facet == facet
                            && c.label == label
                            && c.b_parameter == bp
                            && c.orientation_sign == sign,
                        || {
                            format!(
                                "n={n} a={a} b={b}: {} matched {} b={} sign {}",
                                c.facet, c.label, c.b_parameter, c.orientation_sign
                            )
                        },
                    )?;
                    // Re-verify the witness against the catalog matrix in catalog names.
                    let kind = c.kind;
                    let target = characteristic_matrix(n, kind, &c.a_parameter, &c.b_parameter)
                        .map_err(|e| e.to_string())?;
                    let names = bundle_polytope(n)
                        .map_err(|e| e.to_string())?
                        .facets()
                        .to_vec();
                    let mut xi = VectorAssignment::empty(n);
                    for (old, new) in c.polytope.facets().iter().zip(&names) {
                        xi.insert(new.clone(), c.xi.get(old).unwrap().clone())
                            .map_err(|e| e.to_string())?;
                    }
                    verify_witness(&xi, &target, &c.witness)
                        .map_err(|e| format!("n={n} a={a} b={b} {facet}: {e}"))?;
                    ensure(c.witness.u.is_unimodular(), || {
                        "witness not unimodular".into()
                    })?;
                }
                cases += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{cases} parameter sets in {secs:.2}s"))
}

/// Random isotropy data on the hexagon prism with entries in [−4, 4].
fn random_lambda(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, Vec<i128>)> {
    match rng.gen_range(0..3) {
        0 => hex_columns(n, 0, 0)
            .into_iter()
            .map(|(f, _)| (f, (0..n).map(|_| rng.gen_range(-4..=4)).collect()))
            .collect(),
        1 => hex_columns(n, rng.gen_range(-4..=4), rng.gen_range(-4..=4)),
        _ => {
            let mut cols = hex_columns(n, rng.gen_range(-4..=4), rng.gen_range(-4..=4));
            let k = rng.gen_range(0..cols.len());
            let i = rng.gen_range(0..n);
            cols[k].1[i] = rng.gen_range(-4..=4);
            cols
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut trials = 0;
    let (mut both_true, mut both_false) = (0, 0);
    for n in [2usize, 3] {
        let q = hexagon_prism(n).map_err(|e| e.to_string())?;
        let marking =
            ExceptionalMarking::new(&q, &["F2", "F4", "F6"]).map_err(|e| e.to_string())?;
        let vertices = hex_vertices(n);
        for _ in 0..1000 {
            let cols = random_lambda(&mut rng, n);
            let lambda = VectorAssignment::new(
                n,
                cols.iter()
                    .map(|(f, v)| {
                        (
                            format!("F{f}"),
                            v.iter().map(|&x| BigInt::from(x)).collect(),
                        )
                    })
                    .collect(),
            )
            .map_err(|e| e.to_string())?;
            let report =
                check_lemma_equivalence(&q, &marking, &lambda).map_err(|e| e.to_string())?;
            ensure(report.agree, || {
                format!("n={n}: sides disagree for {cols:?}")
            })?;

            // Oracle sides: basis-part at every vertex, and determinant ±1 on
            // every restriction vertex.
            let vec_of = |f: usize| cols.iter().find(|(g, _)| *g == f).map(|(_, v)| v.clone());
            let sarkar = vertices.iter().all(|v| {
                let vs: Vec<Vec<i128>> = v.iter().filter_map(|&f| vec_of(f)).collect();
                part_of_basis_oracle(n, &vs)
            });
            let restrictions = vertices
                .iter()
                .filter(|v| v.iter().any(|f| [2, 4, 6].contains(f)))
                .all(|v| {
                    let vs: Vec<Vec<i128>> = v.iter().filter_map(|&f| vec_of(f)).collect();
                    let m: Vec<Vec<i128>> =
                        (0..n).map(|i| vs.iter().map(|c| c[i]).collect()).collect();
                    det(&m).abs() == 1
                });
            ensure(sarkar == restrictions, || {
                format!("oracle sides disagree for {cols:?}")
            })?;
            ensure(
                report.sarkar_condition == sarkar
                    && report.restrictions_characteristic == restrictions,
                || format!("library and oracle differ for {cols:?}"),
            )?;
            if sarkar {
                both_true += 1;
            } else {
                both_false += 1;
            }
            trials += 1;
        }
    }
    ensure(both_true > 0 && both_false > 0, || {
        "randomized inputs did not exercise both outcomes".into()
    })?;
    Ok(format!(
        "{trials} trials, 0 discrepancies ({both_true} valid, {both_false} invalid)"
    ))
}

fn random_element(rng: &mut ChaCha8Rng, r: &CohomRing) -> RingElement {
    let n = r.n();
    let mut coef = |_| BigInt::from(rng.gen_range(-9i64..=9));
    let y: Vec<BigInt> = (0..n).map(&mut coef).collect();
    let xy: Vec<BigInt> = (0..n).map(&mut coef).collect();
    r.element(y, xy).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(data).unwrap()
}

/// Product of random elementary operations: unimodular by construction.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 if i != j => u.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-2i64..=2))),
            1 => u.swap_rows(i, j),
            _ => u.negate_row(i),
        }
    }
    u
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);

    // Ring axioms.
    for trial in 0..500 {
        let r = CohomRing::new(rng.gen_range(1..=6), rng.gen_range(-9i64..=9)).unwrap();
        let (x, y, z) = (
            random_element(&mut rng, &r),
            random_element(&mut rng, &r),
            random_element(&mut rng, &r),
        );
        let m = |p: &RingElement, q: &RingElement| p.mul(q).unwrap();
        let s = |p: &RingElement, q: &RingElement| p.add(q).unwrap();
        ensure(m(&x, &y) == m(&y, &x), || {
            format!("trial {trial}: commutativity")
        })?;
        ensure(m(&m(&x, &y), &z) == m(&x, &m(&y, &z)), || {
            format!("trial {trial}: associativity")
        })?;
        ensure(m(&x, &s(&y, &z)) == s(&m(&x, &y), &m(&x, &z)), || {
            format!("trial {trial}: distributivity")
        })?;
        ensure(m(&x, &r.one()) == x && s(&x, &r.zero()) == x, || {
            format!("trial {trial}: identities")
        })?;
        ensure(s(&x, &x.neg()).is_zero(), || {
            format!("trial {trial}: additive inverse")
        })?;
    }

    // Smith normal form postconditions.
    for trial in 0..500 {
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = random_matrix(&mut rng, rows, cols, 20);
        let form = smith_normal_form(&m);
        check_smith(&m, &form).map_err(|e| format!("trial {trial}: {e}"))?;
    }

    // Downward closure of basis parts.
    let mut closed_sets = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=n);
        let u = random_unimodular(&mut rng, n);
        let vectors: Vec<Vec<BigInt>> = (0..r).map(|j| u.column(j)).collect();
        ensure(is_part_of_basis(n, &vectors).unwrap(), || {
            format!("columns of a unimodular matrix rejected: {u}")
        })?;
        for k in 0..=r {
            for sub in subsets(r, k) {
                let s: Vec<Vec<BigInt>> = sub.iter().map(|&i| vectors[i].clone()).collect();
                ensure(is_part_of_basis(n, &s).unwrap(), || {
                    format!("subset {sub:?} of {u} rejected")
                })?;
                closed_sets += 1;
            }
        }
        let noisy: Vec<Vec<BigInt>> = (0..r)
            .map(|_| {
                (0..n)
                    .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                    .collect()
            })
            .collect();
        let oracle = part_of_basis_oracle(
            n,
            &noisy
                .iter()
                .map(|v| v.iter().map(to_i128).collect())
                .collect::<Vec<_>>(),
        );
        ensure(is_part_of_basis(n, &noisy).unwrap() == oracle, || {
            format!("part-of-basis differs from minors oracle on {noisy:?}")
        })?;
        if oracle {
            for k in 0..r {
                for sub in subsets(r, k) {
                    let s: Vec<Vec<BigInt>> = sub.iter().map(|&i| noisy[i].clone()).collect();
                    ensure(is_part_of_basis(n, &s).unwrap(), || {
                        format!("subset {sub:?} of {noisy:?} rejected")
                    })?;
                }
            }
        }
    }

    // GL equivalence witnesses.
    let mut found = 0;
    for trial in 0..200 {
        let n = rng.gen_range(2..=4);
        let kind = if rng.gen_bool(0.5) {
            StructureKind::Standard
        } else {
            StructureKind::Twisted
        };
        let a = characteristic_matrix(
            n,
            kind,
            &big(rng.gen_range(-5..=5)),
            &big(rng.gen_range(-5..=5)),
        )
        .unwrap();
        let w = gl_equivalent(&a, &a, &[], false).map_err(|e| e.to_string())?;
        let w = w.ok_or_else(|| format!("trial {trial}: A is not equivalent to itself"))?;
        verify_witness(&a, &a, &w).map_err(|e| format!("trial {trial}: {e}"))?;

        let u = random_unimodular(&mut rng, n);
        let mut fibers = fiber_facets(n);
        let names: Vec<String> = a.facets().cloned().collect();
        let mut perm = fibers.clone();
        perm.shuffle(&mut rng);
        let allow_sign = rng.gen_bool(0.5);
        let mut b = VectorAssignment::empty(n);
        for f in &names {
            let image_of = match fibers.iter().position(|g| g == f) {
                Some(k) => &perm[k],
                None => f,
            };
            let mut v = u.mul_vec(a.get(f).unwrap());
            if allow_sign && rng.gen_bool(0.3) {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            b.insert(image_of.clone(), v).unwrap();
        }
        fibers.sort();
        let w = gl_equivalent(&a, &b, &[fibers], allow_sign).map_err(|e| e.to_string())?;
        let w = w.ok_or_else(|| format!("trial {trial}: transformed matrix not recognised"))?;
        verify_witness(&a, &b, &w).map_err(|e| format!("trial {trial}: {e}"))?;
        found += 1;
    }

    // Restriction of a random valid datum keeps the restriction shape.
    let d = build(3, &big(2), &big(-1)).unwrap();
    let (sub, xi) = restriction(&d.q, &d.marking, &d.lambda, "F4").map_err(|e| e.to_string())?;
    ensure(sub.facet_count() == 5 && xi.len() == 5, || {
        "restriction shape".into()
    })?;

    Ok(format!(
        "500 ring trials, 500 SNF checks, {closed_sets} closed subsets, {found} verified witnesses"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("a-independence of standard Chern numbers", criterion_1),
        ("twisted Chern numbers vanish", criterion_2),
        ("triple relation", criterion_3),
        ("spot values", criterion_4),
        ("gluing construction", criterion_5),
        ("bundle characteristic matrices", criterion_6),
        ("hexagon-prism boundaries", criterion_7),
        ("restriction criterion equivalence", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(detail) => println!("PASS  criterion {}: {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                println!("FAIL  criterion {}: {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
