//! Acceptance gate. Prints one `criterion N: PASS|FAIL` line per criterion
//! and exits non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use maslov::bridge::{roundtrip_gap, to_classical, to_idempotent};
use maslov::counterexample::{verify_counterexample, RANDOM_PAIRS};
use maslov::density::{convergence_report, ContinuousTestFunction, DensityMeasure};
use maslov::functor::indicators::{read_back, reconstruct_product};
use maslov::functor::{
    product_classical, product_idempotent, pushforward_classical, pushforward_idempotent, PointMap,
    ProductSpace,
};
use maslov::geometry::{
    approx_coefficients, approx_toward_point, is_in_si, segment_distance, SegmentPoint,
};
use maslov::json::piecewise_from_json;
use maslov::maxplus::{Bottom, Finite};
use maslov::{
    dirac, maxplus_combine, ClassicalMeasure, FiniteSpace, IdempotentMeasure, MaxPlus, Measure,
    TestFunction,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const AXIOM_TOL: f64 = 1e-9;
const ROUNDTRIP_TOL: f64 = 1e-9;
const WORKED_TOL: f64 = 1e-12;
const FUBINI_TOL: f64 = 1e-12;
const DISTANCE_TOL: f64 = 1e-12;
const PUSH_TOL: f64 = 1e-12;
const CASES: usize = 1000;

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check {
            ok,
            detail: detail.into(),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn space(n: usize) -> FiniteSpace {
    FiniteSpace::new((0..n).map(|i| format!("x{i}"))).unwrap()
}

fn random_idempotent(r: &mut ChaCha8Rng, sp: &FiniteSpace) -> IdempotentMeasure {
    let n = sp.len();
    let top = r.gen_range(0..n);
    let weights = (0..n)
        .map(|i| match i {
            _ if i == top => Finite(0.0),
            _ if r.gen_bool(0.25) => Bottom,
            _ => Finite(r.gen_range(-6.0..0.0)),
        })
        .collect();
    IdempotentMeasure::new(sp.clone(), weights).unwrap()
}

fn random_classical(r: &mut ChaCha8Rng, sp: &FiniteSpace) -> ClassicalMeasure {
    let n = sp.len();
    let top = r.gen_range(0..n);
    let raw = (0..n)
        .map(|i| {
            if i != top && r.gen_bool(0.25) {
                0.0
            } else {
                r.gen_range(0.01..1.0)
            }
        })
        .collect();
    ClassicalMeasure::renormalized(sp.clone(), raw).unwrap()
}

fn random_function(r: &mut ChaCha8Rng, sp: &FiniteSpace, scale: f64) -> TestFunction {
    TestFunction::from_fn(sp.clone(), |_| r.gen_range(-scale..=scale)).unwrap()
}

fn random_map(r: &mut ChaCha8Rng, from: &FiniteSpace, to: &FiniteSpace) -> PointMap {
    let image = (0..from.len()).map(|_| r.gen_range(0..to.len())).collect();
    PointMap::new(from.clone(), to.clone(), image).unwrap()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn criterion_1() -> Check {
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let sp = space(r.gen_range(1..=8));
        let mu = random_idempotent(&mut r, &sp);
        let phi = random_function(&mut r, &sp, 10.0);
        let psi = random_function(&mut r, &sp, 10.0);
        let c: f64 = r.gen_range(-10.0..10.0);

        let normality = mu
            .evaluate(&TestFunction::constant(sp.clone(), c).unwrap())
            .unwrap()
            - c;
        let homogeneity = mu.evaluate(&phi.shifted(c)).unwrap() - (mu.evaluate(&phi).unwrap() + c);
        let additivity = mu.evaluate(&phi.pointwise_max(&psi).unwrap()).unwrap()
            - mu.evaluate(&phi).unwrap().max(mu.evaluate(&psi).unwrap());
        worst = worst
            .max(normality.abs())
            .max(homogeneity.abs())
            .max(additivity.abs());
    }
    Check::new(
        worst <= AXIOM_TOL,
        format!("{CASES} triples, max deviation {worst:e}"),
    )
}

fn criterion_2() -> Check {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let sp = space(r.gen_range(1..=8));
        let idem = Measure::Idempotent(random_idempotent(&mut r, &sp));
        let classical = Measure::Classical(random_classical(&mut r, &sp));
        worst = worst
            .max(roundtrip_gap(&idem))
            .max(roundtrip_gap(&classical));
    }

    let mut dirac_exact = true;
    for n in 1..=8 {
        let sp = space(n);
        for label in sp.labels() {
            let d = dirac(&sp, label).unwrap();
            let p = ClassicalMeasure::point_mass(&sp, label).unwrap();
            dirac_exact &= to_classical(&d) == p && to_idempotent(&p) == d;
            dirac_exact &= roundtrip_gap(&d.into()) == 0.0 && roundtrip_gap(&p.into()) == 0.0;
        }
    }

    let sp = space(3);
    let worked = ClassicalMeasure::new(sp.clone(), vec![0.5, 0.3, 0.2]).unwrap();
    let expected = [0.0, 0.6f64.ln(), 0.4f64.ln()];
    let forward: Vec<f64> = to_idempotent(&worked)
        .weights()
        .iter()
        .map(|w| w.to_f64())
        .collect();
    let back = to_classical(
        &IdempotentMeasure::new(sp, expected.iter().map(|&x| Finite(x)).collect()).unwrap(),
    );
    let worked_err =
        max_abs_diff(&forward, &expected).max(max_abs_diff(back.weights(), &[0.5, 0.3, 0.2]));

    Check::new(
        worst <= ROUNDTRIP_TOL && dirac_exact && worked_err <= WORKED_TOL,
        format!("max roundtrip gap {worst:e}, dirac exact {dirac_exact}, worked triple error {worked_err:e}"),
    )
}

fn criterion_3() -> Check {
    let report = match verify_counterexample() {
        Ok(r) => r,
        Err(e) => return Check::new(false, format!("error: {e}")),
    };
    let w = &report.idempotent_witness;
    let weights = |m: &IdempotentMeasure| m.weights().to_vec();
    let witness_ok = weights(&w.mu) == [Finite(-1.0), Finite(0.0), Finite(0.0)]
        && weights(&w.nu) == [Finite(-2.0), Finite(0.0), Finite(0.0)]
        && report.witness_images_equal
        && w.mu != w.nu;
    let ok = report.classical_injective
        && report.random_pairs == RANDOM_PAIRS
        && report.system_rank == 3
        && witness_ok
        && report.naturality_gap > 0.0;
    Check::new(
        ok,
        format!(
            "classical injective {} over {} random + {} grid pairs, rank {}, witness {}, naturality gap {:.6}",
            report.classical_injective,
            report.random_pairs,
            report.grid_pairs,
            report.system_rank,
            witness_ok,
            report.naturality_gap
        ),
    )
}

fn criterion_4() -> Check {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    let mut classical_worst = 0.0f64;
    for _ in 0..CASES {
        let (x, y) = (space(r.gen_range(1..=5)), space(r.gen_range(1..=5)));
        let prod = ProductSpace::new(&x, &y).unwrap();
        let (phi, psi) = (
            random_function(&mut r, &x, 10.0),
            random_function(&mut r, &y, 10.0),
        );
        let tensor = prod.tensor(&phi, &psi).unwrap();

        let (mu, nu) = (random_idempotent(&mut r, &x), random_idempotent(&mut r, &y));
        let lhs = product_idempotent(&mu, &nu)
            .unwrap()
            .evaluate(&tensor)
            .unwrap();
        worst = worst.max((lhs - (mu.evaluate(&phi).unwrap() + nu.evaluate(&psi).unwrap())).abs());

        // classical marginals of the product are the factors
        let (p, q) = (random_classical(&mut r, &x), random_classical(&mut r, &y));
        let pq = product_classical(&p, &q).unwrap();
        let first = PointMap::new(
            prod.space().clone(),
            x.clone(),
            (0..x.len() * y.len()).map(|k| k / y.len()).collect(),
        )
        .unwrap();
        classical_worst = classical_worst.max(max_abs_diff(
            pushforward_classical(&first, &pq).unwrap().weights(),
            p.weights(),
        ));
    }

    let mut exact = true;
    let mut checked = 0;
    for n in 1..=4 {
        for m in 1..=4 {
            for _ in 0..20 {
                let (x, y) = (space(n), space(m));
                let (mu, nu) = (random_idempotent(&mut r, &x), random_idempotent(&mut r, &y));
                let direct = product_idempotent(&mu, &nu).unwrap();
                let rebuilt = reconstruct_product(&mu, &nu).unwrap();
                let prod = ProductSpace::new(&x, &y).unwrap();
                exact &=
                    rebuilt == direct && read_back(&direct, &prod).unwrap() == direct.weights();
                checked += 1;
            }
        }
    }
    Check::new(
        worst <= FUBINI_TOL && classical_worst <= FUBINI_TOL && exact,
        format!(
            "{CASES} cases, max Fubini deviation {worst:e}, classical marginal deviation {classical_worst:e}, {checked} indicator reconstructions exact {exact}"
        ),
    )
}

/// Distance from `μ` to `f_ε(μ)` as stated in the reference closed form.
fn stated_distance(eps: f64) -> f64 {
    if eps <= 0.5 {
        eps / (1.0 - eps)
    } else {
        1.0 / eps
    }
}

fn criterion_5() -> Check {
    let mut r = rng(5);
    let mut low_worst = 0.0f64;
    let mut high_worst = 0.0f64;
    let mut corrected_worst = 0.0f64;
    let mut off_segment = 0usize;
    let mut exactness_cases = 0usize;
    let mut exactness_failures = 0usize;
    let mut failing_eps = Vec::new();

    let instances: Vec<_> = (0..100)
        .map(|_| {
            let sp = space(r.gen_range(1..=8));
            let mu = random_idempotent(&mut r, &sp);
            let x0 = sp.labels().choose(&mut r).unwrap().clone();
            let scale = r.gen_range(0.0..2.5);
            let phi = random_function(&mut r, &sp, scale);
            (mu, x0, phi)
        })
        .collect();

    for k in 1..=99 {
        let eps = k as f64 / 100.0;
        let c = approx_coefficients(eps).unwrap();
        let mut eps_failed = false;
        for (mu, x0, phi) in &instances {
            let image = approx_toward_point(mu, x0, eps).unwrap();
            let target = dirac(mu.space(), x0).unwrap();
            // f_ε(μ) sits at segment coordinate c on [μ, δ_x0]
            if maxplus_combine(c.alpha(), mu, c.beta(), &target).unwrap() != image {
                off_segment += 1;
            }
            let d = segment_distance(SegmentPoint::start(), c);
            let dev = (d - stated_distance(eps)).abs();
            if eps <= 0.5 {
                low_worst = low_worst.max(dev);
            } else {
                high_worst = high_worst.max(dev);
                corrected_worst = corrected_worst.max((d - (3.0 * eps - 1.0) / eps).abs());
            }
            eps_failed |= dev > DISTANCE_TOL;

            if eps < 1.0 / (1.0 + (2.0 * phi.sup_norm()).exp()) {
                exactness_cases += 1;
                if image.evaluate(phi).unwrap() != mu.evaluate(phi).unwrap() {
                    exactness_failures += 1;
                }
            }
        }
        if eps_failed {
            failing_eps.push(eps);
        }
    }

    let ok = failing_eps.is_empty()
        && off_segment == 0
        && exactness_failures == 0
        && exactness_cases > 0;
    let failing = match (failing_eps.first(), failing_eps.last()) {
        (Some(a), Some(b)) => format!("{} ε values fail ({a}..={b})", failing_eps.len()),
        _ => "no ε fails".into(),
    };
    Check::new(
        ok,
        format!(
            "{failing}; max deviation ε≤1/2 {low_worst:e}, ε>1/2 {high_worst:.6} \
             (distance vs (3ε−1)/ε: {corrected_worst:e}); off-segment images {off_segment}; \
             exactness {}/{exactness_cases} exact",
            exactness_cases - exactness_failures
        ),
    )
}

fn criterion_6() -> Check {
    let mut r = rng(6);
    let mut union_ok = true;
    let mut monotone_ok = true;
    for _ in 0..CASES {
        let sp = space(r.gen_range(1..=8));
        let (mu, nu) = (
            random_idempotent(&mut r, &sp),
            random_idempotent(&mut r, &sp),
        );
        let t = Finite(r.gen_range(-8.0..0.0));
        let (alpha, beta) = if r.gen_bool(0.5) {
            (MaxPlus::ONE, t)
        } else {
            (t, MaxPlus::ONE)
        };
        let combined = maxplus_combine(alpha, &mu, beta, &nu).unwrap();
        let expected: std::collections::BTreeSet<usize> =
            mu.support().union(&nu.support()).copied().collect();
        union_ok &= combined.support() == expected;

        let labels = sp.labels();
        let a: Vec<&String> = labels.iter().filter(|_| r.gen_bool(0.4)).collect();
        let bigger: Vec<&String> = labels
            .iter()
            .filter(|l| a.contains(l) || r.gen_bool(0.4))
            .collect();
        if is_in_si(&mu, &a).unwrap() && !is_in_si(&mu, &bigger).unwrap() {
            monotone_ok = false;
        }
    }

    let sp = FiniteSpace::new(["0", "1", "2", "3"]).unwrap();
    let mu = IdempotentMeasure::new(sp, vec![Finite(0.0), Bottom, Bottom, Finite(-1.0)]).unwrap();
    let (a, b, ab) = (["0", "1", "2"], ["1", "2", "3"], ["1", "2"]);
    let intersection_ok =
        is_in_si(&mu, &a).unwrap() && is_in_si(&mu, &b).unwrap() && !is_in_si(&mu, &ab).unwrap();
    Check::new(
        union_ok && monotone_ok && intersection_ok,
        format!("support union {union_ok}, S_I monotone {monotone_ok}, A/B intersection example {intersection_ok}"),
    )
}

fn criterion_7() -> Check {
    let mut r = rng(7);
    let mut idem_exact = true;
    let mut classical_worst = 0.0f64;
    let mut char_worst = 0.0f64;
    for _ in 0..CASES {
        let (x, y, z) = (
            space(r.gen_range(1..=6)),
            space(r.gen_range(1..=6)),
            space(r.gen_range(1..=6)),
        );
        let (f, g) = (random_map(&mut r, &x, &y), random_map(&mut r, &y, &z));
        let gf = f.then(&g).unwrap();

        let mu = random_idempotent(&mut r, &x);
        idem_exact &= pushforward_idempotent(&gf, &mu).unwrap()
            == pushforward_idempotent(&g, &pushforward_idempotent(&f, &mu).unwrap()).unwrap();
        let p = random_classical(&mut r, &x);
        classical_worst = classical_worst.max(max_abs_diff(
            pushforward_classical(&gf, &p).unwrap().weights(),
            pushforward_classical(&g, &pushforward_classical(&f, &p).unwrap())
                .unwrap()
                .weights(),
        ));
    }
    for _ in 0..CASES {
        let (x, y) = (space(r.gen_range(1..=6)), space(r.gen_range(1..=6)));
        let f = random_map(&mut r, &x, &y);
        let psi = random_function(&mut r, &y, 10.0);
        let pulled = f.pull_back(&psi).unwrap();
        let mu = random_idempotent(&mut r, &x);
        let p = random_classical(&mut r, &x);
        let d1 = pushforward_idempotent(&f, &mu)
            .unwrap()
            .evaluate(&psi)
            .unwrap()
            - mu.evaluate(&pulled).unwrap();
        let d2 = pushforward_classical(&f, &p)
            .unwrap()
            .evaluate(&psi)
            .unwrap()
            - p.evaluate(&pulled).unwrap();
        char_worst = char_worst.max(d1.abs()).max(d2.abs());
    }
    Check::new(
        idem_exact && classical_worst <= PUSH_TOL && char_worst <= PUSH_TOL,
        format!(
            "composition exact (idempotent) {idem_exact}, classical deviation {classical_worst:e}, characterization deviation {char_worst:e}"
        ),
    )
}

const DENSITY_FIXTURES: [&str; 5] = [
    "aligned_peak",
    "aligned_flat",
    "third_peak",
    "offgrid_tent",
    "zigzag",
];
const GRID_ALIGNED: [&str; 2] = ["aligned_peak", "aligned_flat"];

fn load_piecewise(path: &Path) -> maslov::Result<maslov::density::PiecewiseLinear> {
    let text = fs::read_to_string(path).expect("fixture readable");
    piecewise_from_json(&serde_json::from_str(&text).expect("fixture is JSON"))
}

fn criterion_8() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/density");
    let mut ok = true;
    let mut notes = Vec::new();
    for name in DENSITY_FIXTURES {
        let d =
            DensityMeasure::new(load_piecewise(&dir.join(format!("{name}.density.json"))).unwrap())
                .unwrap();
        let phi = ContinuousTestFunction::new(
            load_piecewise(&dir.join(format!("{name}.function.json"))).unwrap(),
        );
        let report = convergence_report(&d, &phi, &[10, 100, 1000, 10_000]).unwrap();
        let aligned_zero =
            !GRID_ALIGNED.contains(&name) || report.rows.iter().all(|row| row.error == 0.0);
        let this = report.within_bound && report.non_increasing && aligned_zero;
        ok &= this;
        let errors: Vec<String> = report
            .rows
            .iter()
            .map(|row| format!("{:.2e}", row.error))
            .collect();
        notes.push(format!(
            "{name} [{}]{}",
            errors.join(", "),
            if this { "" } else { " FAIL" }
        ));
    }
    Check::new(ok, notes.join("; "))
}

fn criterion_9() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/cli");
    let p = |f: &str| dir.join(f).display().to_string();
    let cases: [(Vec<String>, &str); 3] = [
        (
            vec![
                "eval".into(),
                "--measure".into(),
                p("m.json"),
                "--function".into(),
                p("f.json"),
            ],
            "eval.golden.json",
        ),
        (
            vec![
                "convert".into(),
                "--measure".into(),
                p("u.json"),
                "--to".into(),
                "classical".into(),
            ],
            "convert.golden.json",
        ),
        (
            vec!["verify-counterexample".into()],
            "verify-counterexample.golden.json",
        ),
    ];
    let mut mismatched = Vec::new();
    for (args, golden) in cases {
        let out = maslov::cli::run(std::iter::once("maslov".to_string()).chain(args));
        let want = fs::read_to_string(dir.join(golden)).expect("golden readable");
        if out.code != 0 || out.output != want {
            mismatched.push(golden);
        }
    }
    Check::new(
        mismatched.is_empty(),
        format!("3 goldens, mismatched {mismatched:?}"),
    )
}

type Criterion = (u32, fn() -> Check, Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(1)),
        (3, criterion_3, Duration::from_secs(1)),
        (4, criterion_4, Duration::from_secs(2)),
        (5, criterion_5, Duration::from_secs(1)),
        (6, criterion_6, Duration::from_secs(1)),
        (7, criterion_7, Duration::from_secs(1)),
        (8, criterion_8, Duration::from_secs(10)),
        (9, criterion_9, Duration::from_secs(1)),
    ];
    let mut failures = 0;
    for (n, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.ok && elapsed < budget;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {n}: {} ({}; {:.3}s of {}s)",
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
