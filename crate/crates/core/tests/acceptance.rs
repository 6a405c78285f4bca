//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::*;
use ellbundle_core::bundles::*;
use ellbundle_core::elliptic::{Divisor, Place, Point};
use ellbundle_core::funcspace::{principal_divisor, rr_basis, CurveFunction};
use ellbundle_core::galois::{Fe, Matrix, Poly};
use ellbundle_core::stability::*;
use rand::seq::SliceRandom;
use rand::Rng;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn report(&mut self, n: usize, name: &str, ok: bool, detail: String, elapsed: Duration, limit: Option<u64>) {
        let in_time = limit.map_or(true, |l| elapsed.as_secs_f64() < l as f64);
        let pass = ok && in_time;
        let limit_txt = limit.map_or(String::new(), |l| format!(" (limit {l} s)"));
        println!(
            "{} criterion {n:>2} {name}: {detail}; {:.2} s{limit_txt}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !pass {
            self.failures.push(format!("criterion {n}"));
        }
    }
}

struct Fixture {
    ss: SectionSystem,
    qs: Vec<Point>,
}

fn main() {
    let mut gate = Gate { failures: Vec::new() };
    let mut rng = rng(0xacce);
    let mut semistable: Vec<(usize, Divisor)> = Vec::new();
    let mut audit = SlopeAudit::default();
    let note = |rep: &StabilityReport, audit: &mut SlopeAudit, sink: &mut Vec<(usize, Divisor)>| {
        if let Some(rec) = rep.record() {
            sink.push((rep.rank, rec.spectral_divisor.clone()));
            audit.checks += rec.audit.checks;
            audit.violations += rec.audit.violations;
        }
    };

    // 1. section count
    let start = Instant::now();
    let primes = [5u64, 7, 11, 13];
    let mut fixtures = Vec::new();
    let mut bad = 0;
    for i in 0..120 {
        let mc = random_marked(primes[i % 4], &mut rng);
        let r = 1 + i % 4;
        let (ds, qs) = random_direct_sum(&mc, r, &mut rng);
        let ss = sections_direct_sum(&ds, &mc.mark_divisor()).unwrap();
        if ss.count() != r {
            bad += 1;
        }
        fixtures.push(Fixture { ss, qs });
    }
    gate.report(1, "section count", bad == 0, format!("{} direct sums, {bad} mismatches", fixtures.len()), start.elapsed(), Some(10));

    // 2. round trip
    let start = Instant::now();
    let mut bad = 0;
    for fx in &fixtures {
        let rep = splitting_type(&fx.ss).unwrap();
        note(&rep, &mut audit, &mut semistable);
        let want: Vec<(Point, usize)> = fx.qs.iter().map(|q| (q.clone(), 1)).collect();
        let got: Option<Vec<(Point, usize)>> =
            rep.record().map(|r| r.splitting.factors.iter().map(|f| (f.point.clone(), f.rank)).collect());
        let concur = match fully_split_test(&fx.ss).unwrap() {
            FullySplitOutcome::FullySplit { points, .. } => {
                let mut pts: Vec<(Point, usize)> =
                    points.iter().flat_map(|(q, d)| std::iter::repeat((q.clone(), 1)).take(*d)).collect();
                pts.sort();
                pts == want
            }
            _ => false,
        };
        if got.as_ref() != Some(&want) || !concur {
            bad += 1;
        }
    }
    gate.report(2, "round-trip splitting", bad == 0, format!("{} fixtures, {bad} disagreements", fixtures.len()), start.elapsed(), Some(30));

    // 3. instability
    let start = Instant::now();
    let mut bad = 0;
    for i in 0..60 {
        let mc = random_marked(primes[i % 4], &mut rng);
        let kp = unstable_pair(&mc, &mut rng);
        let ss = sections_kernel(&kp, &mc.mark_divisor()).unwrap();
        let rep = splitting_type(&ss).unwrap();
        if !matches!(
            rep.verdict,
            Verdict::NotSemistable(NotSemistableReason::TopWedgeVanishes | NotSemistableReason::SectionCountMismatch { .. })
        ) {
            bad += 1;
        }
    }
    gate.report(3, "instability detection", bad == 0, format!("60 fixtures, {bad} missed"), start.elapsed(), Some(10));

    // 4. basis invariance
    let start = Instant::now();
    let mut bad = 0;
    let mut changes = 0;
    for fx in &fixtures {
        let sigma = spectral_divisor(&fx.ss).unwrap();
        for _ in 0..10 {
            let g = Matrix::random_invertible(fx.ss.field(), fx.ss.count(), &mut rng);
            changes += 1;
            if spectral_divisor(&fx.ss.change_basis(&g).unwrap()).ok() != Some(sigma.clone()) {
                bad += 1;
            }
        }
    }
    gate.report(4, "basis invariance", bad == 0, format!("{changes} basis changes, {bad} differences"), start.elapsed(), Some(20));

    // 6. monad shift
    let start = Instant::now();
    let mut valid = 0;
    let mut bad = 0;
    let mut attempts = 0;
    while valid < 30 && attempts < 2000 {
        attempts += 1;
        let mc = random_marked(if attempts % 2 == 0 { 5 } else { 7 }, &mut rng);
        let s = 1 + attempts % 2;
        let r = rng.gen_range(1..=2);
        let Some(mp) = random_monad(&mc, s, r, &mut rng) else { continue };
        let t = mc.mark_divisor();
        let monad = sections_monad(&mp, &t).unwrap();
        let rep = splitting_type(&monad).unwrap();
        let Some(rec) = rep.record() else { continue };
        note(&rep, &mut audit, &mut semistable);
        valid += 1;
        let kernel = sections_kernel(&mp.kernel, &t).unwrap();
        match spectral_divisor(&kernel) {
            Ok(sk) if sk == rec.spectral_divisor.add(&t.scale(s as i64)) => {}
            _ => bad += 1,
        }
    }
    gate.report(6, "monad shift", valid >= 25 && bad == 0, format!("{valid} monads, {bad} mismatches"), start.elapsed(), Some(30));

    // 7. oracle equivalence on kernel presentations
    let start = Instant::now();
    let mut used = 0;
    let mut bad = 0;
    let mut f_rows = 0;
    let mut attempts = 0;
    while used < 60 && attempts < 2000 {
        attempts += 1;
        let mc = random_marked(primes[attempts % 3], &mut rng);
        let m = if attempts % 3 == 0 { 4 } else { 3 };
        let Some(kp) = random_kernel(&mc, m, &mut rng) else { continue };
        let ss = sections_kernel(&kp, &mc.mark_divisor()).unwrap();
        let rep = splitting_type(&ss).unwrap();
        let Some(rec) = rep.record() else { continue };
        note(&rep, &mut audit, &mut semistable);
        used += 1;
        let fs = matches!(fully_split_test(&ss).unwrap(), FullySplitOutcome::FullySplit { .. });
        let ranks_one = rec.splitting.factors.iter().all(|f| f.rank == 1);
        if fs != ranks_one {
            bad += 1;
        }
        if !ranks_one {
            f_rows += 1;
            // independent oracle: fewer kernel sections than the multiplicity
            let bc = ellbundle_core::elliptic::BaseChange::new(ss.curve(), rec.spectral_divisor.splitting_degree());
            let ssl = ss.base_change(&bc);
            for (t, mult) in bc.divisor(&rec.spectral_divisor).terms() {
                let ranks: Vec<usize> =
                    rec.splitting.factors.iter().filter(|f| Place::from_point(&rec.split_curve, &f.point) == *t).map(|f| f.rank).collect();
                if ranks.iter().any(|&r| r > 1) && kernel_dimension(&ssl, t).unwrap().d as i64 >= mult {
                    bad += 1;
                }
            }
        }
    }
    gate.report(
        7,
        "oracle equivalence",
        used >= 50 && bad == 0,
        format!("{used} kernel presentations, {f_rows} with F-type factors, {bad} disagreements"),
        start.elapsed(),
        None,
    );

    // 8. general twist
    let start = Instant::now();
    let mut bad = 0;
    let mut done = 0;
    for i in 0..30 {
        let mc = random_marked(primes[1 + i % 3], &mut rng);
        let (ds, _) = random_direct_sum(&mc, 1 + i % 3, &mut rng);
        let e = mc.curve();
        let mut others: Vec<Point> = e.points().into_iter().filter(|q| q != mc.mark()).collect();
        others.shuffle(&mut rng);
        let d = mc.mark_divisor().add(&point_divisor(e, &others[0], 1)).add(&point_divisor(e, &others[1], 1));
        let sigma = spectral_divisor(&sections_direct_sum(&ds, &mc.mark_divisor()).unwrap()).unwrap();
        match general_twist_spectral(&ds, &d) {
            Ok(g) if g.spectral_divisor == sigma && g.dim_g == ds.rank() => {}
            _ => bad += 1,
        }
        done += 1;
    }
    gate.report(8, "general twist", bad == 0, format!("{done} fixtures, {bad} mismatches"), start.elapsed(), None);

    // 9. slope bound
    gate.report(
        9,
        "slope bound",
        audit.violations == 0 && audit.checks > 0,
        format!("{} checks, {} violations", audit.checks, audit.violations),
        Duration::ZERO,
        None,
    );

    // 10. function-field substrate
    let start = Instant::now();
    let mut bad = 0;
    for i in 0..100 {
        let e = random_curve(primes[i % 4], &mut rng);
        let f = e.field();
        let pts = e.points();
        let deg = 1 + (i % 6) as i64;
        let mut d = Divisor::zero();
        let extra = rng.gen_range(0..3);
        for _ in 0..deg + extra {
            d.add_term(Place::from_point(&e, pts.choose(&mut rng).unwrap()), 1);
        }
        for _ in 0..extra {
            d.add_term(Place::from_point(&e, pts.choose(&mut rng).unwrap()), -1);
        }
        if rr_basis(&e, &d).unwrap().dim() as i64 != deg {
            bad += 1;
        }
        let coeffs = |n: usize, rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Fe> { (0..n).map(|_| f.random(rng)).collect() };
        let a = Poly::new(f, coeffs(4, &mut rng));
        let b = Poly::new(f, coeffs(3, &mut rng));
        let h = Poly::new(f, coeffs(3, &mut rng));
        if h.is_zero() || (a.is_zero() && b.is_zero()) {
            continue;
        }
        let g = CurveFunction::from_polys(&e, a, b).div(&CurveFunction::from_poly(&e, h)).unwrap();
        if principal_divisor(&g).unwrap().degree() != 0 {
            bad += 1;
        }
    }
    gate.report(10, "function-field substrate", bad == 0, format!("100 divisors and functions, {bad} failures"), start.elapsed(), None);

    // 5. degree law, over every semistable outcome above
    let bad = semistable.iter().filter(|(r, d)| d.degree() != *r as i64).count();
    gate.report(5, "degree law", bad == 0, format!("{} semistable verdicts, {bad} violations", semistable.len()), Duration::ZERO, None);

    if !gate.failures.is_empty() {
        eprintln!("acceptance failed: {}", gate.failures.join(", "));
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
