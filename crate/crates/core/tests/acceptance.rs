use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use heyde::dist::{grid_distributions, random_dominant_dist, random_grid_dist, random_supported_dist};
use heyde::heyde::{check_unimodular_on_h_with_tol, second_proof_reduction_with_tol, SymmetryContext};
use heyde::rg::{rg_symmetry_certificate, DensityGrid, RgPoint};
use heyde::{
    decompose, enumerate_automorphisms, make_remark_family, rg_decompose,
    rg_positive_definite_check,
    symmetry_direct, Dist, Elem, FinGroup, GroupMap, RGCharFn, RGInstance, RemarkKappa,
    RgDecomposition, SymmetryInstance, Q,
};
use num_complex::Complex64;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn g(s: &str) -> FinGroup {
    s.parse().unwrap()
}

fn auts(x: &FinGroup) -> Vec<GroupMap> {
    enumerate_automorphisms(x, 1000).unwrap()
}

/// Joint law of `(ξ₁ + ξ₂, ξ₁ + αξ₂)` tested for `(a, b) ↦ (a, −b)` invariance.
fn joint_law_symmetric(alpha: &GroupMap, mu1: &Dist, mu2: &Dist) -> bool {
    let x = alpha.domain();
    let mut joint: BTreeMap<(Elem, Elem), Q> = BTreeMap::new();
    for u in mu1.support() {
        for v in mu2.support() {
            let key = (x.add(&u, &v), x.add(&u, &alpha.apply(&v).unwrap()));
            *joint.entry(key).or_insert_with(Q::zero) += mu1.mass(&u) * mu2.mass(&v);
        }
    }
    joint
        .iter()
        .all(|((a, b), p)| joint.get(&(a.clone(), x.neg(b))).copied().unwrap_or_else(Q::zero) == *p)
}

fn criterion_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut pairs, mut mismatches, mut symmetric) = (0u64, 0u64, 0u64);
    for s in ["Z3", "Z5"] {
        let x = g(s);
        let dists = grid_distributions(&x, 6);
        let fts: Vec<_> = dists.iter().map(Dist::fourier).collect();
        for alpha in auts(&x) {
            let ctx = SymmetryContext::new(&alpha);
            for i in 0..dists.len() {
                for j in 0..dists.len() {
                    pairs += 1;
                    let d = ctx.direct(&dists[i], &dists[j]);
                    symmetric += u64::from(d);
                    if d != ctx.fourier(&fts[i], &fts[j], TOL) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 120.0,
        format!("{pairs} pairs, {symmetric} symmetric, {mismatches} mismatches, {secs:.1}s"),
    )
}

/// Criteria 2 and 5 share one sweep over the grid suites.
fn forward_sweep() -> (Outcome, Outcome) {
    let suites: [(&str, u32); 4] = [("Z3", 6), ("Z5", 6), ("Z3xZ3", 3), ("Z15", 3)];
    let (mut checked, mut failures) = (0u64, Vec::new());
    let (mut unimodular_checked, mut unimodular_failures) = (0u64, 0u64);
    for (s, d) in suites {
        let x = g(s);
        let dists = grid_distributions(&x, d);
        let nonvanishing: Vec<bool> = dists.iter().map(|m| m.is_nonvanishing_with_tol(TOL)).collect();
        let alphas = auts(&x);
        for alpha in &alphas {
            let ctx = SymmetryContext::new(alpha);
            let k = alpha.plus_identity(true).kernel();
            for i in 0..dists.len() {
                if !nonvanishing[i] {
                    continue;
                }
                for j in 0..dists.len() {
                    if !nonvanishing[j] || !ctx.direct(&dists[i], &dists[j]) {
                        continue;
                    }
                    let inst =
                        SymmetryInstance::new(alpha.clone(), dists[i].clone(), dists[j].clone())
                            .unwrap();
                    checked += 1;
                    let ok = match decompose(&inst) {
                        Ok(dec) => {
                            dec.omega.is_supported_in(&k)
                                && dec.omega.shift(&dec.x1).unwrap() == dists[i]
                                && dec.omega.shift(&dec.x2).unwrap() == dists[j]
                        }
                        Err(_) => false,
                    };
                    if !ok {
                        failures.push(format!("{s} α={alpha}"));
                    }
                    unimodular_checked += 1;
                    if !check_unimodular_on_h_with_tol(&inst, TOL) {
                        unimodular_failures += 1;
                    }
                }
            }
        }
    }
    let forward = outcome(
        failures.is_empty(),
        format!(
            "{checked} symmetric nonvanishing instances over Z3, Z5 (D=6), Z3xZ3 (all 48 α, D=3), Z15 (D=3); {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    );
    let unimodular = outcome(
        unimodular_failures == 0,
        format!("{unimodular_checked} instances, {unimodular_failures} failures"),
    );
    (forward, unimodular)
}

fn criterion_converse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let groups: Vec<(FinGroup, Vec<GroupMap>)> = ["Z3", "Z9", "Z15", "Z3xZ3", "Z3xZ9", "Z5xZ5"]
        .iter()
        .map(|s| {
            let x = g(s);
            let a = auts(&x);
            (x, a)
        })
        .collect();
    let (mut failures, mut oracle_disagreements) = (0, 0);
    for _ in 0..1000 {
        let (x, alphas) = groups.choose(&mut rng).unwrap();
        let alpha = alphas.choose(&mut rng).unwrap();
        let k = alpha.plus_identity(true).kernel();
        let omega = random_supported_dist(&k, rng.gen_range(1..7), &mut rng);
        let x2 = x.elem_at(rng.gen_range(0..x.order()));
        let x1 = x.neg(&alpha.apply(&x2).unwrap());
        let (mu1, mu2) = (omega.shift(&x1).unwrap(), omega.shift(&x2).unwrap());
        let inst = SymmetryInstance::new(alpha.clone(), mu1.clone(), mu2.clone()).unwrap();
        if !symmetry_direct(&inst) {
            failures += 1;
        }
        if !joint_law_symmetric(alpha, &mu1, &mu2) {
            oracle_disagreements += 1;
        }
    }
    outcome(
        failures == 0 && oracle_disagreements == 0,
        format!("1000 instances, {failures} failures, {oracle_disagreements} joint-law oracle failures"),
    )
}

fn criterion_neg_identity() -> Outcome {
    let (mut pairs, mut exceptions) = (0u64, 0u64);
    for s in ["Z3", "Z5"] {
        let x = g(s);
        let ctx = SymmetryContext::new(&GroupMap::neg_identity(&x));
        let dists = grid_distributions(&x, 6);
        for a in &dists {
            for b in &dists {
                pairs += 1;
                if ctx.direct(a, b) != (a == b) {
                    exceptions += 1;
                }
            }
        }
    }
    outcome(exceptions == 0, format!("{pairs} pairs, {exceptions} exceptions"))
}

fn criterion_transcript() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let groups: Vec<(FinGroup, Vec<GroupMap>)> = ["Z5", "Z9", "Z15", "Z3xZ3", "Z5xZ5"]
        .iter()
        .map(|s| {
            let x = g(s);
            let a = auts(&x)
                .into_iter()
                .filter(|a| a.identity_minus().is_automorphism())
                .collect();
            (x, a)
        })
        .collect();
    let (mut failures, mut worst, mut nontrivial_k) = (0, 0.0f64, 0);
    for _ in 0..100 {
        let (x, alphas) = groups.choose(&mut rng).unwrap();
        let alpha = alphas.choose(&mut rng).unwrap();
        let k = alpha.plus_identity(true).kernel();
        nontrivial_k += usize::from(!k.is_trivial());
        let omega = random_dominant_dist(&k, 8, &mut rng);
        let x2 = x.elem_at(rng.gen_range(0..x.order()));
        let x1 = x.neg(&alpha.apply(&x2).unwrap());
        let inst = SymmetryInstance::new(
            alpha.clone(),
            omega.shift(&x1).unwrap(),
            omega.shift(&x2).unwrap(),
        )
        .unwrap();
        match second_proof_reduction_with_tol(&inst, TOL) {
            Ok(r) => {
                for s in &r.steps {
                    worst = worst.max(s.max_residual);
                }
                let zero_on_h = r.max_abs_p_on_h <= TOL && r.max_abs_q_on_h <= TOL;
                if !(r.concluded && zero_on_h && r.steps.iter().all(|s| s.passed)) {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    outcome(
        failures == 0,
        format!("100 instances ({nontrivial_k} with nontrivial kernel), {failures} failures, worst residual {worst:.1e}"),
    )
}

fn criterion_counterexample() -> Outcome {
    let mut params = vec![(Q::from_integer(2), Q::from_integer(1), RemarkKappa::Boundary, Q::from_integer(-2))];
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    while params.len() < 10 {
        let sigma1 = Q::new(rng.gen_range(2..20), rng.gen_range(1..4));
        let sigma1p = sigma1 * Q::new(rng.gen_range(1..10), 10);
        let a = Q::new(-rng.gen_range(1..12), rng.gen_range(1..5));
        if a == Q::from_integer(-1) {
            continue;
        }
        let kappa = if rng.gen_bool(0.5) {
            RemarkKappa::Boundary
        } else {
            RemarkKappa::Rational(Q::new(1, rng.gen_range(4..10)))
        };
        params.push((sigma1, sigma1p, kappa, a));
    }
    let mut failures = Vec::new();
    let mut min_density = f64::INFINITY;
    for (i, (s, sp, k, a)) in params.into_iter().enumerate() {
        let inst = match make_remark_family(s, sp, k, a) {
            Ok(inst) => inst,
            Err(e) => {
                failures.push(format!("draw {i}: {e}"));
                continue;
            }
        };
        let symmetric = rg_symmetry_certificate(&inst).symmetric;
        let irreducible = rg_decompose(&inst).map(|d| d.is_irreducible()).unwrap_or(false);
        let mut positive = true;
        for f in [&inst.f1, &inst.f2] {
            let r = rg_positive_definite_check(f, &DensityGrid::default()).unwrap();
            min_density = min_density.min(r.min_density);
            positive &= r.passed && r.min_density >= -TOL;
        }
        if !(symmetric && irreducible && positive) {
            failures.push(format!("draw {i}: sym={symmetric} irr={irreducible} pos={positive}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "10 parameter sets, grid minimum {min_density:.2e}, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let groups: Vec<(FinGroup, Vec<GroupMap>)> = ["Z3", "Z9"]
        .iter()
        .map(|s| {
            let x = g(s);
            let a = auts(&x);
            (x, a)
        })
        .collect();
    let mut failures = 0;
    for i in 0..100 {
        let (x, alphas) = &groups[i % 2];
        let alpha = alphas.choose(&mut rng).unwrap();
        let a = loop {
            let a = Q::new(-rng.gen_range(1..8), rng.gen_range(1..4));
            if a != Q::from_integer(-1) {
                break a;
            }
        };
        let sigma2 = Q::new(rng.gen_range(0..10), rng.gen_range(1..4));
        let sigma1 = -a * sigma2;
        let k = alpha.plus_identity(true).kernel();
        // mass above 1/2 at 0 keeps ω̂ nonvanishing
        let omega = random_dominant_dist(&k, rng.gen_range(2..8), &mut rng);
        let x2 = RgPoint {
            t: Q::new(rng.gen_range(-6..=6), 3),
            g: x.elem_at(rng.gen_range(0..x.order())),
        };
        let x1 = RgPoint {
            t: -a * x2.t,
            g: x.neg(&alpha.apply(&x2.g).unwrap()),
        };
        let inst = RGInstance::new(
            RGCharFn::gaussian_times(sigma1, &omega, &x1).unwrap(),
            RGCharFn::gaussian_times(sigma2, &omega, &x2).unwrap(),
            a,
            alpha.clone(),
        )
        .unwrap();
        let ok = match rg_decompose(&inst) {
            Ok(RgDecomposition::Gaussian {
                sigma1: r1,
                sigma2: r2,
                omega: w,
                ..
            }) => {
                r1 == sigma1
                    && r2 == sigma2
                    && k.elements().iter().any(|e| omega.shift(e).unwrap() == w)
            }
            _ => false,
        };
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("100 instances on Z3 and Z9, {failures} failures"))
}

/// Inverse transform by the defining sum, without rational snapping.
fn raw_inverse(mu: &Dist) -> Vec<f64> {
    let x = mu.group();
    let f = mu.fourier();
    x.elements()
        .map(|e| {
            let mut acc = Complex64::zero();
            for y in x.elements() {
                let theta: f64 = (0..x.rank())
                    .map(|i| (e.coords()[i] * y.coords()[i]) as f64 / x.orders()[i] as f64)
                    .sum();
                acc += f.at(&y) * Complex64::from_polar(1.0, -2.0 * PI * theta);
            }
            acc.re / x.order() as f64
        })
        .collect()
}

fn criterion_fourier() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let groups = ["Z3", "Z5", "Z9", "Z15", "Z2xZ4", "Z3xZ3", "Z3xZ9"];
    let (mut inverse_worst, mut conv_worst, mut snapped_failures) = (0.0f64, 0.0f64, 0);
    for s in groups {
        let x = g(s);
        for _ in 0..200 {
            let mu = random_grid_dist(&x, rng.gen_range(1..13), &mut rng);
            for (m, r) in mu.masses().iter().zip(raw_inverse(&mu)) {
                inverse_worst = inverse_worst.max((*m.numer() as f64 / *m.denom() as f64 - r).abs());
            }
            if mu.fourier().inverse_fourier().ok().as_ref() != Some(&mu) {
                snapped_failures += 1;
            }
            let nu = random_grid_dist(&x, rng.gen_range(1..13), &mut rng);
            let lhs = mu.convolve(&nu).unwrap().fourier();
            let rhs = mu.fourier().mul(&nu.fourier()).unwrap();
            conv_worst = conv_worst.max(lhs.max_distance(&rhs));
        }
    }
    outcome(
        inverse_worst <= TOL && conv_worst <= TOL && snapped_failures == 0,
        format!(
            "200 draws on each of {} groups; inverse error {inverse_worst:.1e}, exact recovery failures {snapped_failures}, convolution error {conv_worst:.1e}",
            groups.len()
        ),
    )
}

fn main() {
    let (forward, unimodular) = forward_sweep();
    let results = [
        ("criterion equivalence", criterion_equivalence()),
        ("theorem forward", forward),
        ("theorem converse", criterion_converse()),
        ("negation equality", criterion_neg_identity()),
        ("unimodularity on H", unimodular),
        ("finite-difference transcript", criterion_transcript()),
        ("order-two counterexample", criterion_counterexample()),
        ("real-line round trip", criterion_round_trip()),
        ("fourier layer", criterion_fourier()),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        all &= o.passed;
    }
    if !all {
        std::process::exit(1);
    }
}
