//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every expected value comes from an oracle computed here
//! independently of the code path under test.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use mtakit::coeffs::{rat, Coefficient};
use mtakit::liealg::{AlgebraSpec, LieElement, Mode};
use mtakit::mta::{
    contraction_norms, find_identity, star, verify_splitting, verify_strong_identity, IdentityOutcome, MtaElement,
};
use mtakit::partition::{norm_coefficient, partition_count, partitions};
use mtakit::pbw::{ModeWord, Pbw};
use mtakit::verma::{Param, VermaModule};
use mtakit::zhu::{verify_heisenberg_structure, verify_virasoro_level1, zhu_class};
use rand::Rng;

const H: AlgebraSpec = AlgebraSpec::HEISENBERG;
const V: AlgebraSpec = AlgebraSpec::VIRASORO;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn norm(p: &mtakit::partition::Partition) -> Coefficient {
    Coefficient::constant(norm_coefficient(p).into())
}

/// Closed-form table `e_{r',s} e_{r,s'} = ||r|| delta_{s,r} e_{r',s'}` and
/// matrix-unit relations of `e_{rs} / ||s||`, for `d <= 5`.
fn criterion_1() -> Outcome {
    let pbw = Pbw::new(H);
    for d in 0..=5 {
        let ps = partitions(d);
        for r1 in &ps {
            for s in &ps {
                let a = MtaElement::epsilon(H, r1, s);
                for r in &ps {
                    for s1 in &ps {
                        let b = MtaElement::epsilon(H, r, s1);
                        let got = star(&pbw, &a, &b).map_err(|e| e.to_string())?;
                        let want = if s == r {
                            MtaElement::epsilon(H, r1, s1).scale(&norm(r))
                        } else {
                            MtaElement::zero(H)
                        };
                        ensure(got == want, || format!("d={d}: e[{r1}|{s}] * e[{r}|{s1}] = {got}"))?;

                        // matrix units e_{rs} = eps_{rs} / ||s||
                        let unit = |x: &mtakit::partition::Partition, y: &mtakit::partition::Partition| {
                            MtaElement::epsilon(H, x, y).scale(&Coefficient::constant(
                                rat(1, 1) / mtakit::coeffs::Rational::from(norm_coefficient(y)),
                            ))
                        };
                        let got = star(&pbw, &unit(r1, s), &unit(r, s1)).map_err(|e| e.to_string())?;
                        let want = if s == r { unit(r1, s1) } else { MtaElement::zero(H) };
                        ensure(got == want, || {
                            format!("d={d}: unit relation fails at [{r1}|{s}][{r}|{s1}]")
                        })?;
                    }
                }
            }
        }
        let mut sum_units = MtaElement::zero(H);
        for r in &ps {
            sum_units.add_scaled(
                &MtaElement::epsilon(H, r, r),
                &Coefficient::constant(rat(1, 1) / mtakit::coeffs::Rational::from(norm_coefficient(r))),
            );
        }
        let ident = find_identity(&pbw, d).map_err(|e| e.to_string())?;
        ensure(ident.element() == Some(&sum_units), || {
            format!("d={d}: identity {ident:?} is not the sum of diagonal units")
        })?;
    }
    Ok(())
}

/// `rank A_d = sum_{j<=d} p(j)^2` and the splitting `A_d = M_d x A_{d-1}`.
fn criterion_2() -> Outcome {
    let pbw = Pbw::new(H);
    for d in 0..=4 {
        let expected: u64 = (0..=d).map(|j| partition_count(j).pow(2)).sum();
        let rep = verify_heisenberg_structure(&pbw, d).map_err(|e| e.to_string())?;
        ensure(rep.rank as u64 == expected && rep.ok, || {
            format!("d={d}: rank {} (want {expected}), structure ok = {}", rep.rank, rep.ok)
        })?;
        let split = verify_splitting(&pbw, d).map_err(|e| e.to_string())?;
        ensure(split.ok && split.split.is_some(), || {
            format!("d={d}: splitting {split:?}")
        })?;
    }
    ensure((0..=4).map(|j| partition_count(j).pow(2)).sum::<u64>() == 40, || {
        "rank at d = 4 is not 40".into()
    })
}

/// `||r||` closed form against the contraction `v_r * u_r` for `d <= 8`.
fn criterion_3() -> Outcome {
    let pbw = Pbw::new(H);
    let mut count = 0;
    for d in 1..=8 {
        for (r, k) in contraction_norms(&pbw, d).map_err(|e| e.to_string())? {
            count += 1;
            ensure(k == norm(&r), || {
                format!("{r}: contraction {k} vs closed form {}", norm(&r))
            })?;
        }
    }
    ensure(count == 66, || format!("checked {count} partitions, expected 66"))
}

fn criterion_4() -> Outcome {
    let rep = verify_strong_identity(&Pbw::new(H), 4, 4).map_err(|e| e.to_string())?;
    let expected_pairs: usize = (-4i32..=4).map(|n| (n.max(0)..=4).count()).sum();
    ensure(rep.checks.len() == expected_pairs, || {
        format!("{} transport checks, expected {expected_pairs}", rep.checks.len())
    })?;
    ensure(rep.unit_checks.len() == 25, || {
        format!("{} unit checks", rep.unit_checks.len())
    })?;
    let bad: Vec<_> = rep.checks.iter().filter(|c| !c.ok).collect();
    let bad_units: Vec<_> = rep.unit_checks.iter().filter(|c| !c.ok).collect();
    ensure(rep.ok, || format!("failures: {bad:?} {bad_units:?}"))
}

fn criterion_5() -> Outcome {
    match find_identity(&Pbw::new(V), 1).map_err(|e| e.to_string())? {
        IdentityOutcome::NotPolynomial {
            numerator,
            denominator,
            unique,
            ..
        } => ensure(
            unique && numerator == Coefficient::one() && denominator == Coefficient::x().scale(&rat(2, 1)),
            || format!("certificate {numerator} / ({denominator}), unique = {unique}"),
        ),
        other => Err(format!("expected a non-existence certificate, got {other:?}")),
    }
}

fn criterion_6() -> Outcome {
    let br = V.bracket(Mode::new(1), Mode::new(-1));
    let mut want = LieElement::mode(Mode::new(0));
    want = want.scaled(&Coefficient::from_int(2));
    ensure(br == want, || format!("[L1, L-1] = {br:?}"))?;
    let rep = verify_virasoro_level1(8).map_err(|e| e.to_string())?;
    ensure(rep.product_law.len() == 28, || {
        format!("{} product-law checks", rep.product_law.len())
    })?;
    ensure(rep.ok, || format!("{rep:?}"))
}

fn criterion_7() -> Outcome {
    let h = Pbw::new(H);
    for d in 0..=4 {
        let rep = verify_splitting(&h, d).map_err(|e| e.to_string())?;
        ensure(rep.exact, || format!("heisenberg d={d}: {rep:?}"))?;
    }
    let rep = verify_splitting(&Pbw::new(V), 1).map_err(|e| e.to_string())?;
    ensure(rep.exact, || format!("virasoro d=1: {rep:?}"))
}

fn criterion_8() -> Outcome {
    let heis = VermaModule::heisenberg(Param::Formal);
    let vir = VermaModule::virasoro(Param::Formal, Param::Formal);
    for d in 0..=8 {
        let p = partition_count(d) as usize;
        ensure(heis.dimension(d) == p && vir.dimension(d) == p, || {
            format!("dim at degree {d}")
        })?;
    }
    let pbw = Pbw::new(H);
    for d in 0..=4 {
        let ident = find_identity(&pbw, d).map_err(|e| e.to_string())?;
        let ident = ident.element().ok_or(format!("no identity at {d}"))?;
        for w in heis.basis(d) {
            let v = heis.basis_vector(w);
            let got = heis.mta_act(ident, &v).map_err(|e| e.to_string())?;
            ensure(got == v, || format!("I_{d} * {v} = {got}"))?;
        }
    }
    for d in 1..=5 {
        let k = heis.singular_vectors(d).map_err(|e| e.to_string())?;
        ensure(k.is_empty(), || format!("heisenberg kernel at degree {d}: {k:?}"))?;
    }
    let vir0 = VermaModule::virasoro(Param::Rational(rat(0, 1)), Param::Formal);
    let k = vir0.singular_vectors(1).map_err(|e| e.to_string())?;
    let l_minus_1 = vir0.basis_vector(ModeWord::new(vec![-1]));
    ensure(
        k.len() == 1 && k[0].terms().len() == 1 && k[0].terms().contains_key(&ModeWord::new(vec![-1])),
        || format!("virasoro h=0 kernel {k:?}"),
    )?;
    let image = vir0
        .act(&mtakit::pbw::EnvElement::mode(V, 1), &l_minus_1)
        .map_err(|e| e.to_string())?;
    ensure(image.is_zero(), || format!("L1 L-1 w0 = {image}"))
}

fn criterion_9() -> Outcome {
    // bracket antisymmetry and Jacobi, |index| <= 8
    for alg in [H, V] {
        for a in -8..=8 {
            for b in -8..=8 {
                let ab = alg.bracket(Mode::new(a), Mode::new(b));
                let ba = alg.bracket(Mode::new(b), Mode::new(a));
                let mut sum = ab.clone();
                sum.add_scaled(&ba, &Coefficient::one());
                ensure(sum.is_zero(), || format!("antisymmetry {a} {b}"))?;
                for c in -8..=8 {
                    let (la, lb, lc) = (
                        LieElement::mode(Mode::new(a)),
                        LieElement::mode(Mode::new(b)),
                        LieElement::mode(Mode::new(c)),
                    );
                    let mut j = LieElement::bracket(&alg, &la, &LieElement::bracket(&alg, &lb, &lc));
                    j.add_scaled(
                        &LieElement::bracket(&alg, &lb, &LieElement::bracket(&alg, &lc, &la)),
                        &Coefficient::one(),
                    );
                    j.add_scaled(
                        &LieElement::bracket(&alg, &lc, &LieElement::bracket(&alg, &la, &lb)),
                        &Coefficient::one(),
                    );
                    ensure(j.is_zero(), || format!("jacobi {alg:?} {a} {b} {c}"))?;
                }
            }
        }
    }

    // normal-order associativity, 200 triples
    for case in 0..200u64 {
        let mut rng = common::rng(0x5eed_0000 + case);
        let (alg, len, idx) = if case % 2 == 0 { (H, 4, 5) } else { (V, 3, 3) };
        let pbw = common::unbounded(alg);
        let a = common::random_env(&mut rng, &pbw, len, idx);
        let b = common::random_env(&mut rng, &pbw, len, idx);
        let c = common::random_env(&mut rng, &pbw, len, idx);
        let lhs = pbw.multiply(&pbw.multiply(&a, &b).unwrap(), &c).unwrap();
        let rhs = pbw.multiply(&a, &pbw.multiply(&b, &c).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("normal-order associativity, case {case}"))?;
    }

    // star associativity, 200 homogeneous triples with degrees <= 4
    let pbw = Pbw::new(H);
    for case in 0..200u64 {
        let mut rng = common::rng(0x57a2_0000 + case);
        let d: Vec<u32> = (0..4).map(|_| rng.gen_range(0..=4)).collect();
        let a = common::random_mta(&mut rng, H, d[0], d[1]);
        let b = common::random_mta(&mut rng, H, d[1], d[2]);
        let c = common::random_mta(&mut rng, H, d[2], d[3]);
        let lhs = star(&pbw, &star(&pbw, &a, &b).unwrap(), &c).unwrap();
        let rhs = star(&pbw, &a, &star(&pbw, &b, &c).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("star associativity, case {case}"))?;
    }

    // Zhu products are blind to perturbations by N^{d+1} U_0, 100 cases
    for case in 0..100u64 {
        let mut rng = common::rng(0x2e0_0000 + case);
        let alg = if case % 2 == 0 { H } else { V };
        let d = rng.gen_range(0..=4);
        let pbw = Pbw::new(alg);
        let a = common::random_degree_zero(&mut rng, &pbw, 3);
        let b = common::random_degree_zero(&mut rng, &pbw, 3);
        let p = common::random_perturbation(&mut rng, &pbw, d);
        let a2 = &a + &p;
        let cls = |e: &mtakit::pbw::EnvElement| zhu_class(e, d).unwrap();
        ensure(cls(&p).is_zero(), || {
            format!("perturbation visible at level {d}, case {case}")
        })?;
        ensure(
            cls(&pbw.multiply(&a2, &b).unwrap()) == cls(&pbw.multiply(&a, &b).unwrap()),
            || format!("left perturbation changes product, case {case}"),
        )?;
        ensure(
            cls(&pbw.multiply(&b, &a2).unwrap()) == cls(&pbw.multiply(&b, &a).unwrap()),
            || format!("right perturbation changes product, case {case}"),
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("heisenberg mode transition algebra structure, d <= 5", criterion_1),
        ("zhu algebra rank and central splitting, d <= 4", criterion_2),
        ("contraction norms against closed form, d <= 8", criterion_3),
        ("strong identity equations, -4 <= n <= d <= 4", criterion_4),
        ("virasoro degree-1 algebra has no identity", criterion_5),
        ("virasoro level-1 kernel data, window 8", criterion_6),
        ("exactness of the mu / pi sequence", criterion_7),
        ("verma module dimensions, unitality, singular vectors", criterion_8),
        ("engine soundness property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
