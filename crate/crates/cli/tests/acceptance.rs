//! Acceptance gate: one line per criterion, nonzero exit if any criterion fails.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use vosa_core::fermion::{build_fermion_vosa, FermionSpace};
use vosa_core::kernel::{
    rat, HermitianMatrix, Matrix, PsdVerdict, Rational, Scalar, SparseVector, Weight,
};
use vosa_core::lattice::{build_lattice_vosa, IntegralLattice};
use vosa_core::ns::{
    build_ns_vosa, discrete_series, shapovalov_gram, unitarity_check, verma_basis, NsParams,
};
use vosa_core::structure::{
    conformal_comparison, decompose, direct_sum, weight_one_algebra, ConformalKind,
};
use vosa_core::vosa::{
    invariance_check, invariance_check_all, random_commutator_checks, TruncatedVosa,
};

// Pinned tolerances. All arithmetic is exact, so every numeric comparison is
// equality; only wall-clock budgets carry slack.
const EXACT_TOLERANCE: i64 = 0;
const BUDGET_GRAM: Duration = Duration::from_secs(1);
const BUDGET_DISCRETE: Duration = Duration::from_secs(60);
const BUDGET_FERMION: Duration = Duration::from_secs(10);
const BUDGET_LATTICE: Duration = Duration::from_secs(30);
const BUDGET_COMMUTATOR_PER_ENGINE: Duration = Duration::from_secs(60);
const COMMUTATOR_SAMPLES: usize = 200;
const COMMUTATOR_SEED: u64 = 20_240_601;
/// First weight at which the exact Gram scan at (7/20, 0) is indefinite.
const FROZEN_FIRST_INDEFINITE: Weight = Weight::int(4);

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, budget: Duration) -> Result<(), String> {
    let e = t.elapsed();
    check(e <= budget, format!("took {e:.2?}, budget {budget:.0?}"))
}

fn ns(c: Rational, h: Rational) -> NsParams {
    NsParams::new(c, h)
}

fn lattice(g: Vec<Vec<i64>>, cutoff: i64) -> TruncatedVosa {
    let l = IntegralLattice::new(g).expect("lattice");
    build_lattice_vosa(&l, Weight::int(cutoff), &[])
        .expect("build")
        .into_vosa()
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let labels: Vec<String> = verma_basis(Weight::int(2))
        .iter()
        .map(|m| m.to_string())
        .collect();
    check(
        labels == ["L(-2)", "L(-1)L(-1)", "G(-3/2)G(-1/2)"],
        format!("weight-2 basis order {labels:?}"),
    )?;
    let g =
        shapovalov_gram(&ns(rat(7, 10), rat(0, 1)), Weight::int(2)).map_err(|e| e.to_string())?;
    // hand oracle: <L(-2)v, L(-2)v> = 4h + c/2 and every other pairing carries a factor h
    let want = Matrix::diagonal(&[Scalar::frac(7, 20), Scalar::zero(), Scalar::zero()]);
    check(*g.matrix() == want, format!("weight 2 gram {}", g.matrix()))?;
    let g = shapovalov_gram(&ns(rat(7, 10), rat(1, 10)), Weight::from_twice(3))
        .map_err(|e| e.to_string())?;
    // <G(-3/2)v,G(-3/2)v> = 2h + 2c/3, <G(-3/2)v,L(-1)G(-1/2)v> = 4h, <L(-1)G(-1/2)v, same> = 2h(2h + 1)
    let (h, c) = (Scalar::frac(1, 10), Scalar::frac(7, 10));
    let two = Scalar::int(2);
    let a = &(&two * &h) + &(&(&two * &c) / &Scalar::int(3));
    let b = &Scalar::int(4) * &h;
    let d = &(&two * &h) * &(&(&two * &h) + &Scalar::one());
    let want =
        HermitianMatrix::new(Matrix::from_rows(vec![vec![a, b.clone()], vec![b, d]]).unwrap())
            .unwrap();
    check(g == want, format!("weight 3/2 gram {}", g.matrix()))?;
    let m = g.matrix();
    let det = &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0));
    check(det.is_zero(), format!("determinant {det}"))?;
    check(
        g.psd_verdict() == PsdVerdict::PositiveSemidefinite { rank: 1 },
        format!("verdict {:?}", g.psd_verdict()),
    )?;
    within(t, BUDGET_GRAM)?;
    Ok(format!("diag(7/20,0,0) and {} exact", g.matrix()))
}

fn criterion_2() -> Verdict {
    let t = Instant::now();
    let top = Weight::from_twice(9);
    let mut points: Vec<NsParams> = Vec::new();
    for m in [1, 2] {
        points.extend(
            discrete_series(m)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|p| p.params()),
        );
    }
    check(
        points.contains(&ns(rat(7, 10), rat(0, 1))),
        "(7/10, 0) missing from level 1",
    )?;
    check(
        points.contains(&ns(rat(7, 10), rat(1, 10))),
        "(7/10, 1/10) missing from level 1",
    )?;
    points.push(ns(rat(3, 2), rat(0, 1)));
    points.push(ns(rat(15, 2), rat(0, 1)));
    for p in &points {
        let r = unitarity_check(p, top);
        check(
            r.consistent_with_unitary(),
            format!(
                "({}, {}) indefinite at {:?}",
                p.c,
                p.h,
                r.first_indefinite()
            ),
        )?;
    }
    within(t, BUDGET_DISCRETE)?;
    Ok(format!("{} points PSD through weight 9/2", points.len()))
}

fn criterion_3() -> Verdict {
    let r = unitarity_check(&ns(rat(7, 20), rat(0, 1)), Weight::int(4));
    let first = r.first_indefinite().ok_or("no indefinite weight found")?;
    check(
        first == FROZEN_FIRST_INDEFINITE,
        format!("first indefinite weight {first}, frozen {FROZEN_FIRST_INDEFINITE}"),
    )?;
    Ok(format!("first indefinite weight {first}"))
}

fn criterion_4() -> Verdict {
    let t = Instant::now();
    let v = build_fermion_vosa(
        &FermionSpace::orthonormal(1).unwrap(),
        Weight::from_twice(9),
    )
    .map_err(|e| e.to_string())?;
    for g in v.grams() {
        check(
            *g == HermitianMatrix::identity(g.dim()),
            format!("gram not identity: {}", g.matrix()),
        )?;
    }
    let dims: Vec<usize> = v.graded_dims().iter().take(9).map(|(_, d)| *d).collect();
    check(
        dims == [1, 1, 0, 1, 1, 1, 1, 1, 2],
        format!("dims {dims:?}"),
    )?;
    let vac = v.vacuum().clone();
    let l2 = v
        .virasoro(2, &v.virasoro(-2, &vac).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    check(
        l2 == vac.scaled(&Scalar::frac(1, 4)),
        format!("L(2)L(-2)1 = {}", v.describe(&l2)),
    )?;
    let inv = invariance_check_all(&v, None).map_err(|e| e.to_string())?;
    check(inv.iter().all(|r| r.passed()), "invariance failure")?;
    within(t, BUDGET_FERMION)?;
    Ok("identity grams, dims 1,1,0,1,1,1,1,1,2, c = 1/2, invariance".into())
}

fn criterion_5() -> Verdict {
    let t = Instant::now();
    let v = lattice(vec![vec![2]], 3);
    for name in ["a1", "e^(1)", "e^(-1)"] {
        let g = v
            .generator_by_name(name)
            .ok_or(format!("generator {name} missing"))?;
        let top = v.cutoff() - v.generators()[g].weight;
        let r = invariance_check(&v, g, top).map_err(|e| e.to_string())?;
        check(r.passed(), format!("invariance fails for {name}"))?;
    }
    let alg = weight_one_algebra(&v).map_err(|e| e.to_string())?;
    check(alg.dim() == 3, format!("weight-one dim {}", alg.dim()))?;
    let pos = |l: &str| {
        alg.labels
            .iter()
            .position(|x| x == l)
            .ok_or(format!("{l} missing"))
    };
    let (h, e, f) = (pos("a1(-1)1")?, pos("e^(1)")?, pos("e^(-1)")?);
    let unit = |i: usize| -> Vec<Scalar> {
        (0..3)
            .map(|k| {
                if k == i {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect()
    };
    let scaled =
        |i: usize, c: i64| -> Vec<Scalar> { unit(i).iter().map(|x| x * &Scalar::int(c)).collect() };
    // with this cocycle the standard triple is (h, e^α, -e^{-α})
    let fneg = scaled(f, -1);
    check(
        alg.bracket_of(&unit(h), &unit(e)) == scaled(e, 2),
        "[h,e] != 2e",
    )?;
    check(
        alg.bracket_of(&unit(h), &fneg) == scaled(f, 2),
        "[h,f] != -2f",
    )?;
    check(alg.bracket_of(&unit(e), &fneg) == unit(h), "[e,f] != h")?;
    check(alg.passed(), "weight-one structure checks fail")?;
    check(
        *alg.form.get(h, h) == Scalar::int(2),
        format!("<h,h> = {}", alg.form.get(h, h)),
    )?;
    let c = conformal_comparison(
        &v,
        ConformalKind::Sugawara {
            level: Scalar::int(1),
            dual_coxeter: Scalar::int(2),
        },
    )
    .map_err(|e| e.to_string())?;
    check(
        c.passed() && c.difference_norm.is_zero(),
        format!("difference {}", v.describe(&c.difference)),
    )?;
    within(t, BUDGET_LATTICE)?;
    Ok("invariance, sl2 table, <h,h> = 2, Sugawara difference 0".into())
}

fn criterion_6() -> Verdict {
    let z = lattice(vec![vec![1]], 4);
    let f = build_fermion_vosa(&FermionSpace::orthonormal(2).unwrap(), Weight::int(4))
        .map_err(|e| e.to_string())?;
    check(
        z.graded_dims() == f.graded_dims(),
        format!("{:?} vs {:?}", z.graded_dims(), f.graded_dims()),
    )?;
    let dims: Vec<String> = z.graded_dims().iter().map(|(_, d)| d.to_string()).collect();
    Ok(format!("dims {}", dims.join(",")))
}

fn criterion_7() -> Verdict {
    let a1 = lattice(vec![vec![2]], 2);
    let z = lattice(vec![vec![1]], 2);
    let s = direct_sum(&[&a1, &z]).map_err(|e| e.to_string())?;
    let r = decompose(&s).map_err(|e| e.to_string())?;
    check(
        r.summands.len() == 2,
        format!("{} summands", r.summands.len()),
    )?;
    let mut got: Vec<_> = r.summands.iter().map(|x| x.graded_dims()).collect();
    let mut want = vec![a1.graded_dims(), z.graded_dims()];
    got.sort();
    want.sort();
    check(got == want, format!("summand dims {got:?}"))?;
    for x in &r.summands {
        check(
            x.flags.weight_zero_one_dimensional,
            "weight-zero space not one-dimensional",
        )?;
        check(x.flags.l1_kills_weight_one, "L(1) does not kill weight one")?;
        check(x.flags.no_negative_weights, "negative weight present")?;
    }
    let mut total = SparseVector::new();
    for x in &r.summands {
        total.add(&x.idempotent);
    }
    check(total == *s.vacuum(), "idempotents do not sum to the vacuum")?;
    Ok("2 summands, flags hold, idempotents sum to vacuum".into())
}

fn criterion_8() -> Verdict {
    let engines: Vec<(&str, Box<dyn Fn() -> TruncatedVosa>)> = vec![
        (
            "ns",
            Box::new(|| build_ns_vosa(&rat(7, 10), Weight::int(3)).unwrap()),
        ),
        (
            "fermion",
            Box::new(|| {
                build_fermion_vosa(&FermionSpace::orthonormal(2).unwrap(), Weight::int(3)).unwrap()
            }),
        ),
        ("lattice", Box::new(|| lattice(vec![vec![2]], 3))),
    ];
    let mut notes = Vec::new();
    for (name, build) in engines {
        let t = Instant::now();
        let v = build();
        let s = random_commutator_checks(&v, COMMUTATOR_SAMPLES, COMMUTATOR_SEED)
            .map_err(|e| format!("{name}: {e}"))?;
        check(
            s.len() == COMMUTATOR_SAMPLES,
            format!("{name}: {} samples", s.len()),
        )?;
        let bad = s.iter().filter(|x| !x.outcome.passed()).count();
        check(bad == 0, format!("{name}: {bad} failing tuples"))?;
        within(t, BUDGET_COMMUTATOR_PER_ENGINE).map_err(|e| format!("{name}: {e}"))?;
        notes.push(format!("{name} {:.1?}", t.elapsed()));
    }
    Ok(format!(
        "{COMMUTATOR_SAMPLES} tuples each ({})",
        notes.join(", ")
    ))
}

fn criterion_9() -> Verdict {
    let job = r#"{"construction":"lattice","parameters":{"gram":[[2]]},"cutoff":"3","checks":["invariance"]}"#;
    let run = |extra: &[&str]| -> Result<(i32, serde_json::Value), String> {
        let mut child = Command::new(env!("CARGO_BIN_EXE_vosa"))
            .args(extra)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| e.to_string())?;
        child
            .stdin
            .take()
            .unwrap()
            .write_all(job.as_bytes())
            .map_err(|e| e.to_string())?;
        let out = child.wait_with_output().map_err(|e| e.to_string())?;
        let json = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        Ok((out.status.code().unwrap_or(-1), json))
    };
    let (clean, _) = run(&[])?;
    check(clean == 0, format!("clean run exit {clean}"))?;
    let (code, report) = run(&["--corrupt-form"])?;
    check(code == 1, format!("corrupted run exit {code}"))?;
    let w = &report["checks"][0]["witnesses"][0];
    for key in ["a", "m", "u", "v"] {
        check(!w[key].is_null(), format!("witness lacks {key}"))?;
    }
    Ok(format!(
        "exit 0 -> 1, witness (a={}, m={}, u={}, v={})",
        w["a"], w["m"], w["u"], w["v"]
    ))
}

fn main() {
    println!("acceptance: exact tolerance {EXACT_TOLERANCE}, commutator seed {COMMUTATOR_SEED}");
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("NS Gram exactness", criterion_1),
        ("discrete-series positivity", criterion_2),
        ("non-unitary detection", criterion_3),
        ("fermion construction", criterion_4),
        ("lattice construction", criterion_5),
        ("odd lattice vs fermion dims", criterion_6),
        ("structure round trip", criterion_7),
        ("commutator formula", criterion_8),
        ("failure-path integrity", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} [{secs:.2}s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
