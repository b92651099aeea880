//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phi_dynamics::coding::{cylinder, periodic_point, CodeStream, FareyInterval, Word};
use phi_dynamics::conjugacy::{conjugacy_check, farey_level, farey_properties_report};
use phi_dynamics::entropy::{
    dense_periodic_witness, entropy_lap_count, entropy_polynomial_root, entropy_word_growth,
    factorization_holds, golden_entropy, mixing_certificate, transition_spectral_radius,
    transitivity_check,
};
use phi_dynamics::numeric::{ExactPoint, ExtendedRational, QuadraticSurd};
use phi_dynamics::scrambled::{
    alpha_transitive, beta_from_word, default_tracked, g_map, mu_code, rational_vs_tau,
    schedule_events, tau_code, verify_scrambling, within_theorem1_bound, AlphaSchedule,
    ScheduleKind, ScrambleReport, DEFAULT_MAX_K,
};

type Outcome = (bool, String);

fn q(n: u64, d: u64) -> ExtendedRational {
    ExtendedRational::frac(n, d)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn iv(a: ExtendedRational, b: ExtendedRational) -> FareyInterval {
    FareyInterval::new(a, b).unwrap()
}

fn criterion_1() -> Outcome {
    let expected = [
        ("0", iv(q(0, 1), q(1, 1))),
        ("1", iv(q(1, 1), q(1, 0))),
        ("00", iv(q(1, 2), q(1, 1))),
        ("01", iv(q(0, 1), q(1, 2))),
        ("000", iv(q(1, 2), q(2, 3))),
        ("001", iv(q(2, 3), q(1, 1))),
        ("0100", iv(q(0, 1), q(1, 3))),
        ("1000", iv(q(2, 1), q(3, 1))),
    ];
    let mut bad = Vec::new();
    for (w, want) in &expected {
        if cylinder(&word(w)).unwrap() != *want {
            bad.push(*w);
        }
    }
    let union = phi_dynamics::entropy::merge_union(
        ["000", "001", "0100", "1000"].iter().map(|w| cylinder(&word(w)).unwrap()).collect(),
    );
    let want_union = vec![iv(q(0, 1), q(1, 3)), iv(q(1, 2), q(1, 1)), iv(q(2, 1), q(3, 1))];
    let ok = bad.is_empty() && union == want_union;
    (ok, format!("mismatches {bad:?}, union {} pieces", union.len()))
}

fn criterion_2() -> Outcome {
    let mut points = 0;
    let mut failures = 0;
    let mut reports = true;
    for n in 0..=12 {
        let level = farey_level(n).unwrap();
        for x in level.entries() {
            points += 1;
            if !conjugacy_check(x) {
                failures += 1;
            }
        }
        if n >= 1 {
            reports &= farey_properties_report(n).unwrap().all_passed();
        }
    }
    (
        failures == 0 && reports,
        format!("{points} points checked, {failures} conjugacy failures, properties (a)-(d) ok: {reports}"),
    )
}

fn criterion_3() -> Outcome {
    let target = golden_entropy();
    let poly = entropy_polynomial_root(1e-12).unwrap().value;
    let growth = entropy_word_growth(40).unwrap().value;
    let spectral = transition_spectral_radius(60).unwrap().value;
    let laps: Vec<f64> = (1..=20).map(|n| entropy_lap_count(n).unwrap().value).collect();
    let lap_err: Vec<f64> = laps.iter().map(|v| (v - target).abs()).collect();
    let monotone = lap_err.windows(2).all(|w| w[1] <= w[0]);
    let ok = (poly - target).abs() < 1e-6
        && (growth - target).abs() < 1e-6
        && (spectral - target).abs() < 1e-6
        && lap_err[19] < 2e-2
        && monotone
        && factorization_holds();
    (
        ok,
        format!(
            "poly {poly:.10} growth {growth:.10} spectral {spectral:.10} lap(20) {:.6} (err {:.2e}, monotone {monotone})",
            laps[19], lap_err[19]
        ),
    )
}

fn all_words(max_len: usize) -> Vec<Word> {
    (1..=max_len).flat_map(Word::admissible_of_len).collect()
}

fn criterion_4() -> Outcome {
    let words = all_words(8);
    let mut bad = 0;
    for w in &words {
        let ok = match mixing_certificate(w) {
            Ok(c) => {
                c.n_cover <= w.len() + 2
                    && c.steps.windows(2).all(|s| phi_dynamics::entropy::phi_union_image(&s[0]) == s[1])
            }
            Err(_) => false,
        };
        if !ok {
            bad += 1;
        }
    }
    (bad == 0, format!("{} words, {bad} failures", words.len()))
}

fn criterion_5() -> Outcome {
    let z = periodic_point(&Word::empty(), &word("0")).unwrap();
    let z1 = periodic_point(&word("1"), &word("0")).unwrap();
    let exact = z == ExactPoint::Surd(QuadraticSurd::new(-1, 1, 5, 2).unwrap())
        && z1 == ExactPoint::Surd(QuadraticSurd::new(3, 1, 5, 2).unwrap());
    let words = all_words(8);
    let mut bad = 0;
    for w in &words {
        let ok = dense_periodic_witness(w).is_ok_and(|s| {
            let x = ExactPoint::Surd(s);
            cylinder(w).unwrap().contains_point(&x)
                && x.phi_iter(w.len() as u64 + 3).is_ok_and(|y| y == x)
        });
        if !ok {
            bad += 1;
        }
    }
    (exact && bad == 0, format!("fixed points exact: {exact}, {} witnesses, {bad} failures", words.len()))
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    Word::new((0..len).map(|_| rng.random_range(0..2u8)).collect()).unwrap()
}

fn beta_pair(rng: &mut ChaCha8Rng) -> (CodeStream, CodeStream) {
    let a = random_word(rng, 16);
    let mut b = random_word(rng, 16).symbols().to_vec();
    b[0] = 1 - a.symbols()[0];
    let b = Word::new(b).unwrap();
    (beta_from_word(&a).unwrap(), beta_from_word(&b).unwrap())
}

fn tally(reports: &[ScrambleReport]) -> (usize, usize, usize) {
    reports.iter().fold((0, 0, 0), |(p, f, i), r| (p + r.passed, f + r.failed, i + r.inconclusive))
}

const BUDGET: usize = 1 << 14;

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut reports = Vec::new();
    let mut bounded = 0;
    for pair in 0..20 {
        let (b, x) = beta_pair(&mut rng);
        let (s, t0) = (mu_code(&b), mu_code(&x));
        for shift in [0, 1] {
            let kind = ScheduleKind::Theorem1 { shift, beta: b.clone(), xi: x.clone() };
            let events = schedule_events(&kind, 5..=7, DEFAULT_MAX_K).unwrap();
            let t = t0.shift(shift);
            reports.push(verify_scrambling(&s, &t, &events, &rat(1, 100), &rat(3, 2), BUDGET).unwrap());
        }
        for _ in 0..5 {
            let n = rng.random_range(0..=40_320u64);
            let code = if pair % 2 == 0 { &s } else { &t0 };
            if within_theorem1_bound(code, n, 4096).unwrap() {
                bounded += 1;
            }
        }
    }
    let (p, f, i) = tally(&reports);
    let min_far = reports.iter().filter_map(|r| r.limsup_proxy.clone()).min().unwrap();
    (
        f == 0 && i == 0 && bounded == 100,
        format!("{p} pass, {f} fail, {i} inconclusive; smallest far margin {min_far}; bounded {bounded}/100"),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alpha = alpha_transitive(&AlphaSchedule::minimal());
    let tracked = default_tracked();
    let (eps, m_big) = (rat(1, 100), rat(1000, 1));
    let mut reports = Vec::new();
    let mut first_tau = None;
    for _ in 0..10 {
        let (b, e) = beta_pair(&mut rng);
        let s = tau_code(&b, &alpha, &tracked).unwrap();
        let te = tau_code(&e, &alpha, &tracked).unwrap();
        for shift in 0..4 {
            let kind = ScheduleKind::Theorem2 { shift, beta: b.clone(), eta: e.clone() };
            let events = schedule_events(&kind, 5..=7, DEFAULT_MAX_K).unwrap();
            reports.push(verify_scrambling(&s, &te.shift(shift), &events, &eps, &m_big, BUDGET).unwrap());
        }
        first_tau.get_or_insert(s);
    }
    let tau = first_tau.unwrap();
    let mut rational = Vec::new();
    for r in [q(1, 1), q(0, 1), q(3, 5), q(7, 3)] {
        rational.push(rational_vs_tau(&r, &tau, 5..=7, DEFAULT_MAX_K, &eps, &m_big, BUDGET).unwrap());
    }
    let (p, f, i) = tally(&reports);
    let (rp, rf, ri) = tally(&rational);
    let total = p + f + i + rp + rf + ri;
    let decided = (p + f + rp + rf) as f64 / total as f64;
    let max_far = reports.iter().filter_map(|r| r.limsup_proxy.clone()).max().unwrap();
    let worst_close = rational.iter().filter_map(|r| r.liminf_proxy.clone()).max().unwrap();
    (
        decided >= 0.9 && f + rf == 0,
        format!(
            "pairs: {p} pass, {f} fail, {i} inconclusive (largest far lower bound {max_far}); \
             rational: {rp} pass, {rf} fail, {ri} inconclusive (worst close upper bound {worst_close}); \
             decided {:.1}%",
            100.0 * decided
        ),
    )
}

fn criterion_8() -> Outcome {
    let alpha = alpha_transitive(&AlphaSchedule::minimal());
    let mut missing = Vec::new();
    for len in 1..=4 {
        for stride in 1..=3 {
            let rep = transitivity_check(&alpha, len, stride, 1_000_000).unwrap();
            for occ in rep.words.iter().filter(|o| o.first_index.is_none()) {
                missing.push(format!("{}@stride{stride}", occ.word));
            }
        }
    }
    (missing.is_empty(), format!("missing words: {missing:?}"))
}

fn criterion_9() -> Outcome {
    let g = |x: &BigRational| g_map(x).unwrap();
    let nodes = [((0, 1), (1, 1)), ((1, 6), (1, 3)), ((1, 3), (1, 6)), ((1, 2), (0, 1)), ((1, 1), (1, 2))];
    let nodes_ok = nodes.iter().all(|&((a, b), (c, d))| g(&rat(a, b)) == rat(c, d));
    let cycle_ok = [rat(0, 1), rat(1, 2), rat(1, 1)].iter().all(|x| g(&g(&g(x))) == *x);
    let fixed_ok = g(&rat(1, 4)) == rat(1, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut period2 = 0;
    while period2 < 50 {
        let d = rng.random_range(13..10_000i64);
        let n = rng.random_range(d / 6 + 1..=d / 3);
        let x = rat(n, d);
        if x <= rat(1, 6) || x >= rat(1, 3) || x == rat(1, 4) {
            continue;
        }
        if g(&g(&x)) != x {
            return (false, format!("g^2({x}) != {x}"));
        }
        period2 += 1;
    }
    (nodes_ok && cycle_ok && fixed_ok, format!("nodes {nodes_ok}, 3-cycle {cycle_ok}, fixed 1/4 {fixed_ok}, 50 period-2 points"))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    let mut longest = 0;
    for d in 1..=200u64 {
        for n in 0..=200u64 {
            if n.gcd(&d) != 1 {
                continue;
            }
            let x = q(n, d);
            let e = x.escape_time();
            if !x.phi_iter(e).is_zero() {
                return (false, format!("phi^{e}({x}) != 0"));
            }
            longest = longest.max(e);
            count += 1;
        }
    }
    (true, format!("{count} rationals, longest escape {longest}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("reference cylinders exact", criterion_1),
        ("conjugacy on F_n, n <= 12", criterion_2),
        ("entropy estimators", criterion_3),
        ("mixing certificates, |w| <= 8", criterion_4),
        ("periodic points", criterion_5),
        ("mu pairs bounded and scrambled", criterion_6),
        ("tau pairs unbounded and scrambled", criterion_7),
        ("transitivity proxy", criterion_8),
        ("g counterexample", criterion_9),
        ("escape times, p, q <= 200", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {:>2} {}: {name} ({secs:.2}s)", i + 1, if ok { "PASS" } else { "FAIL" });
        println!("    {detail}");
        if !ok {
            failed += 1;
        }
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
