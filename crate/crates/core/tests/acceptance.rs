//! Acceptance gate. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use subshift::agler::{
    certified_epsilon, certify_sum, integral_moment, p_n_bruteforce, p_n_closed, TailBound,
};
use subshift::lubin::{self, LubinFamily};
use subshift::measures::marginal_reciprocal_identity;
use subshift::numerics::{
    arcsine_moment_quadrature, central_binomial, chu_vandermonde_check, int, pow, rat, to_f64,
};
use subshift::report::lubin_report;
use subshift::shift1d::{berger_fit, weights_from_measure, WeightSequence1D};
use subshift::shift2d::{
    backward_extension_2d, check_berger_2d, path_independence_check, Direction, Window,
};
use subshift::{AtomicMeasure1D, AtomicMeasure2D, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{:.2}s", took.as_secs_f64()))
}

fn moment_identity() -> Outcome {
    let start = Instant::now();
    let w = WeightSequence1D::from_measure(&lubin::xi_a()).map_err(|e| e.to_string())?;
    for l in 0..=64u64 {
        let closed = rat(2, 11) * pow(&rat(1, 4), l) + rat(1, 22) * pow(&rat(1, 2), l) + rat(1, 44);
        let expected = if l == 0 { int(1) } else { closed };
        let product: Rational = (0..l).map(|n| w.squared_weight(n)).product();
        ensure(product == expected, format!("l = {l}: {product} != {expected}"))?;
    }
    Ok(format!("l <= 64 exact, {}", within(Duration::from_secs(1), start)?))
}

fn golden_weights() -> Outcome {
    let a: Vec<_> = (0..3).map(lubin::weight_a).collect();
    ensure(a == [rat(1, 11), rat(1, 2), rat(11, 16)], format!("a^2 = {a:?}"))?;
    let c: Vec<_> = (0..3).map(lubin::weight_c).collect();
    ensure(c == [rat(3, 8), rat(5, 12), rat(9, 20)], format!("c^2 = {c:?}"))?;
    for x in [rat(1, 10), rat(2, 11), rat(1, 4), rat(7, 3)] {
        let d = LubinFamily::new(x.clone()).map_err(|e| e.to_string())?.diagram();
        ensure(d.alpha_sq(0, 1) == rat(1, 8), "alpha^2_(0,1)")?;
        ensure(d.alpha_sq(0, 2) == rat(1, 16), "alpha^2_(0,2)")?;
        ensure(d.beta_sq(1, 0) == rat(11, 8) * &x, format!("beta^2_(1,0) at x = {x}"))?;
        ensure(d.beta_sq(2, 0) == rat(33, 32) * &x, format!("beta^2_(2,0) at x = {x}"))?;
        // figure value 44/48 disagrees with the measure; see the b-weight note in lubin
        ensure(d.beta_sq(0, 2) == rat(43, 48), "beta^2_(0,2) = 43/48")?;
    }
    Ok("a^2, c^2, alpha^2, beta^2 exact; beta^2_(0,2) = 43/48 (printed 44/48)".into())
}

fn berger_measures() -> Outcome {
    let window = Window::square(8);
    for x in [rat(1, 10), rat(2, 11), rat(1, 5), rat(1, 2)] {
        let d = LubinFamily::new(x.clone()).map_err(|e| e.to_string())?.diagram();
        let core = check_berger_2d(&d.restrict((1, 1)), &lubin::mu_m_cap_n(), window);
        ensure(core.passed(), format!("mu_(M cap N) at x = {x}: {}", core.to_json()))?;
        let m = check_berger_2d(&d.restrict((0, 1)), &lubin::mu_m(), window);
        ensure(m.passed(), format!("mu_M at x = {x}: {}", m.to_json()))?;
    }
    let r = backward_extension_2d(
        &rat(1, 8),
        &lubin::mu_m_cap_n(),
        &lubin::xi_b_l1(),
        Direction::Horizontal,
    );
    let expected = AtomicMeasure2D::new([
        ((rat(1, 4), rat(1, 4)), rat(1, 4)),
        ((rat(1, 2), rat(1, 2)), rat(1, 8)),
        ((int(0), int(1)), rat(5, 8)),
    ])
    .map_err(|e| e.to_string())?;
    ensure(r.new_measure.as_ref() == Some(&expected), "reconstructed measure")?;
    Ok("8x8 Berger checks pass; backward extension yields 1/4, 1/8, 5/8 atoms".into())
}

fn thresholds() -> Outcome {
    let start = Instant::now();
    let t2 = lubin::threshold_t2();
    ensure(t2 == rat(8, 33), format!("t2 = {t2}"))?;
    let bump = rat(1, 1_000_000);
    ensure(lubin::is_t2_subnormal(&t2), "T2 at 8/33")?;
    ensure(!lubin::is_t2_subnormal(&(&t2 + &bump)), "T2 above 8/33")?;
    let t2_time = within(Duration::from_secs(1), start)?;

    let start = Instant::now();
    let pair = lubin::threshold_pair();
    ensure(pair == rat(2, 11), format!("pair = {pair}"))?;
    ensure(lubin::is_pair_subnormal(&pair), "pair at 2/11")?;
    ensure(!lubin::is_pair_subnormal(&(&pair + &bump)), "pair above 2/11")?;
    let pair_time = within(Duration::from_secs(1), start)?;
    Ok(format!("8/33 ({t2_time}), 2/11 ({pair_time}), both flip at +1e-6"))
}

fn chu_vandermonde() -> Outcome {
    for n in 0..=64 {
        ensure(chu_vandermonde_check(n), format!("identity at n = {n}"))?;
    }
    for l in 1..=64u64 {
        let inner: num_bigint::BigInt = (1..l)
            .map(|i| {
                let c = subshift::numerics::binomial(l, i);
                &c * &c
            })
            .sum();
        ensure(inner + 1 == central_binomial(l) - 1, format!("interior sum at l = {l}"))?;
    }
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 0..=15u32 {
        let q = arcsine_moment_quadrature(n, 1e-12).map_err(|e| e.to_string())?;
        let exact = to_f64(&Rational::from_integer(central_binomial(n as u64)));
        let rel = ((q - exact) / exact).abs();
        worst = worst.max(rel);
        ensure(rel <= 1e-8, format!("quadrature n = {n}: relative error {rel:e}"))?;
    }
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!("exact for n <= 64; quadrature worst relative error {worst:.1e} ({t})"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for x in [rat(1, 10), rat(2, 11), rat(1, 4)] {
        for n in 1..=10 {
            for k in 0..=5 {
                let closed = p_n_closed(&x, k, n);
                let brute = p_n_bruteforce(&x, k, n);
                ensure(closed == brute, format!("x = {x}, n = {n}, k = {k}: {closed} != {brute}"))?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells equal, {}", within(Duration::from_secs(10), start)?))
}

fn sum_certificate() -> Outcome {
    let start = Instant::now();
    let eps = certified_epsilon();
    ensure(eps.is_positive(), format!("epsilon = {eps}"))?;
    let x = rat(2, 11) + &eps;
    let cert = certify_sum(&x);
    ensure(cert.passed(), format!("certify_sum(2/11 + eps) failed: {:?}", cert.witness))?;
    ensure(cert.per_n.len() as u64 == cert.n_tail, "per-n rows cover 1..=n_tail")?;
    ensure(cert.per_n.iter().all(|p| p.pass), "every per-n decision passes")?;
    let tail = TailBound::derive();
    ensure(tail.n_tail == cert.n_tail, "tail index")?;
    ensure(tail.six_pi_sqrt2_upper < int(27), "6 pi sqrt2 < 27")?;
    ensure(
        pow(&rat(31, 30), tail.n16) >= int(27) && pow(&rat(15, 14), tail.n8) >= int(27),
        "analytic stopping index",
    )?;
    for n in tail.onset16.max(tail.onset8)..=tail.n_tail {
        ensure(
            integral_moment(&rat(1, 16), n) >= pow(&rat(15, 16), n),
            format!("I_n(1/16) at n = {n}"),
        )?;
        ensure(
            integral_moment(&rat(1, 8), n) >= pow(&rat(7, 8), n),
            format!("I_n(1/8) at n = {n}"),
        )?;
    }
    // the bound is sharp for the per-n decision: just above it some P_n(k,0) < 0
    let above = certify_sum(&(&cert.certified_x_max + rat(1, 1_000_000_000)));
    ensure(!above.passed(), "certificate is not vacuous")?;
    if let Some((n, k)) = above.witness {
        let v = p_n_bruteforce(&above.x, k, n);
        ensure(v.is_negative(), format!("brute-force value at witness ({n},{k}) is {v}"))?;
    }
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!(
        "epsilon = {eps} (~{:.4}), n_tail = {}, tail checked from n = {} ({t})",
        to_f64(&eps),
        tail.n_tail,
        tail.onset16.max(tail.onset8)
    ))
}

fn counterexample() -> Outcome {
    let eps = certified_epsilon();
    let mut lines = Vec::new();
    for x in [rat(1, 5), rat(2, 11) + &eps] {
        ensure(x > rat(2, 11) && x <= rat(2, 11) + &eps, format!("{x} outside (2/11, 2/11 + eps]"))?;
        let r = lubin_report(&x).map_err(|e| e.to_string())?;
        let v = &r.verdicts;
        let t2_expected = x <= rat(8, 33);
        ensure(v.t1.is_pass(), format!("T1 at {x}"))?;
        ensure(v.t2.is_pass() == t2_expected, format!("T2 at {x}"))?;
        ensure(v.sum.is_pass(), format!("T1 + T2 at {x}"))?;
        ensure(!v.pair.is_pass(), format!("pair at {x}"))?;
        if t2_expected {
            ensure(r.counterexample, "report flags the counterexample")?;
            lines.push(x);
        }
    }
    ensure(!lines.is_empty(), "no counterexample found")?;
    Ok(format!(
        "x = {}: T1, T2, T1 + T2 subnormal; (T1, T2) not jointly subnormal",
        lines.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    ))
}

fn random_measure_2d(rng: &mut StdRng) -> AtomicMeasure2D {
    let atoms = rng.random_range(1..=6);
    let mut points = std::collections::BTreeMap::new();
    while points.len() < atoms {
        let s = rat(rng.random_range(0..=12), rng.random_range(1..=12));
        let t = rat(rng.random_range(1..=12), rng.random_range(1..=12));
        points.insert((s, t), rat(rng.random_range(1..=20), 1));
    }
    let total: Rational = points.values().sum();
    AtomicMeasure2D::new(points.into_iter().map(|(p, m)| (p, m / &total))).expect("valid")
}

fn properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_240_601);
    for i in 0..100 {
        let mu = random_measure_2d(&mut rng);
        let ok = marginal_reciprocal_identity(&mu).map_err(|e| e.to_string())?;
        ensure(ok, format!("marginal identity, measure {i}"))?;
    }

    let d = LubinFamily::new(rat(1, 5)).map_err(|e| e.to_string())?.diagram();
    for _ in 0..50 {
        let k = (rng.random_range(0..12u64), rng.random_range(0..12u64));
        let cert = path_independence_check(&d, k);
        ensure(cert.passed(), format!("path independence at {k:?}"))?;
        ensure(
            cert.value("gamma") == Some(&lubin::moment2d(k.0, k.1, &rat(1, 5)).to_string()),
            format!("gamma at {k:?}"),
        )?;
    }

    let b = lubin::xi_b(&rat(1, 5)).map_err(|e| e.to_string())?;
    let measures: [(&str, AtomicMeasure1D); 3] =
        [("xi_a", lubin::xi_a()), ("xi_b(1/5)", b), ("xi_c", lubin::xi_c())];
    for (name, xi) in &measures {
        let w = WeightSequence1D::from_measure(xi).map_err(|e| e.to_string())?;
        for i in 0..6 {
            let restricted = xi.restrict_density(i).map_err(|e| e.to_string())?;
            let shifted = w.restrict(i);
            for n in 0..12 {
                let lhs = weights_from_measure(&restricted, n).map_err(|e| e.to_string())?;
                ensure(lhs == shifted.squared_weight(n), format!("{name}: restrict {i}, n = {n}"))?;
            }
        }
        let moments: Vec<Rational> = (0..=2 * xi.len() as u64 + 2).map(|k| xi.moment(k)).collect();
        let fitted = berger_fit(&moments, xi.len()).map_err(|e| format!("{name}: {e}"))?;
        ensure(fitted == *xi, format!("{name}: fit round trip"))?;
    }
    Ok("100 marginal identities, 50 paths, restriction commutes, 3 fits recovered".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("moment identity for a", moment_identity),
        ("golden weights", golden_weights),
        ("Berger measures and backward extension", berger_measures),
        ("thresholds 8/33 and 2/11", thresholds),
        ("Chu-Vandermonde and quadrature", chu_vandermonde),
        ("closed form vs brute force", oracle_equivalence),
        ("sum certificate and tail", sum_certificate),
        ("counterexample", counterexample),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
