//! End-to-end acceptance checks with pinned tolerances and runtime budgets.
//! Each check prints one `PASS <name> (<elapsed>)` line on success and
//! fails its budget assertion if it runs over.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdist_core::bounds::{check_identities, compute_bounds, subspace_dimensions};
use sdist_core::certificate::{build_certificate, BoundComparison, GapCheck};
use sdist_core::config::{known_configuration, rational_sphere_point, PointConfiguration, PointSet};
use sdist_core::poly::{enumerate_basis, BasisMode, Monomial, Polynomial};
use sdist_core::scalar::{rat, Rational};
use sdist_core::search::{refine, search, RefineOptions, SearchOptions};

fn finish(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(elapsed < budget, "{name} took {elapsed:?}, budget {budget:?}");
    println!("PASS {name} ({elapsed:.2?})");
}

/// Counts exponent vectors with first entry <= 1 one by one, the
/// independent oracle for the closed-form dimension counts.
fn brute_force_counts(n: usize, d: u32) -> (u64, u64) {
    fn visit(var: usize, n: usize, used: u32, d: u32, le: &mut u64, eq: &mut u64) {
        if var == n {
            *le += 1;
            if used == d {
                *eq += 1;
            }
            return;
        }
        let cap = if var == 0 { (d - used).min(1) } else { d - used };
        for e in 0..=cap {
            visit(var + 1, n, used + e, d, le, eq);
        }
    }
    let mut le = 0;
    let mut eq = 0;
    visit(0, n, 0, d, &mut le, &mut eq);
    (le, eq)
}

#[test]
fn dimension_formulas_match_brute_force_enumeration() {
    let start = Instant::now();
    for n in 2..=8usize {
        for d in 0..=8u32 {
            let (le, eq) = brute_force_counts(n, d);
            let (m_le, m_eq) = subspace_dimensions(n as i64, d as i64).unwrap();
            assert_eq!(BigInt::from(le), m_le, "counting degree <= {d} in {n} variables");
            assert_eq!(BigInt::from(eq), m_eq, "counting degree == {d} in {n} variables");
            let up_to = enumerate_basis(n, d, BasisMode::UpToDegree).unwrap();
            let exact = enumerate_basis(n, d, BasisMode::ExactDegree).unwrap();
            assert_eq!(up_to.len() as u64, le);
            assert_eq!(exact.len() as u64, eq);
        }
    }
    finish("dimension formulas vs brute force", start, Duration::from_secs(5));
}

#[test]
fn binomial_identities_hold_exactly() {
    let start = Instant::now();
    // Pascal rule across every row up to 60 (s = 1 skips the rational part).
    for n in 2..=60 {
        assert!(check_identities(n, 1), "pascal row n = {n}");
    }
    // Rational collapse identity and dm == barg_musin across the grid.
    for n in 2..=50 {
        for s in 2..=20 {
            assert!(check_identities(n, s), "identity at n = {n}, s = {s}");
        }
    }
    finish("binomial identities", start, Duration::from_secs(5));
}

#[test]
fn bound_coincidences_are_exact() {
    let start = Instant::now();
    for n in 2..=50 {
        let r = compute_bounds(n, 2).unwrap();
        assert_eq!(r.dm, r.gerzon, "two-distance collapse at n = {n}");
    }
    for n in 2..=50 {
        for s in 2..=20 {
            let r = compute_bounds(n, s).unwrap();
            assert_eq!(
                Rational::from(r.dm.clone()),
                r.barg_musin,
                "rational agreement at n = {n}, s = {s}"
            );
        }
    }
    finish("bound coincidences", start, Duration::from_secs(5));
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Monomial {
    let degree = rng.random_range(0..=max_degree);
    let mut exps = vec![0u32; n];
    for _ in 0..degree {
        exps[rng.random_range(0..n)] += 1;
    }
    Monomial::new(exps)
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Polynomial<Rational> {
    let terms = rng.random_range(1..=12);
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let m = random_monomial(rng, n, 6);
        let c = rat(rng.random_range(-20..=20), rng.random_range(1..=10));
        p.add_term(m, c);
    }
    p
}

#[test]
fn reduction_is_sound_on_random_inputs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let n = rng.random_range(2..=5);
        let p = random_poly(&mut rng, n);
        let r = p.canonical_reduce();
        assert!(r.is_reduced(), "trial {trial}");
        assert_eq!(r.canonical_reduce(), r, "idempotence, trial {trial}");
        for _ in 0..20 {
            let t: Vec<Rational> = (0..n - 1)
                .map(|_| rat(rng.random_range(-12..=12), rng.random_range(1..=9)))
                .collect();
            let x = rational_sphere_point(&t);
            assert_eq!(
                p.evaluate(&x).unwrap(),
                r.evaluate(&x).unwrap(),
                "sphere value diverged on trial {trial}"
            );
        }
    }
    for n in 2..=5 {
        let rel = Polynomial::<Rational>::sphere_relation(n);
        assert!(rel.canonical_reduce().is_zero(), "relation must reduce to zero, n = {n}");
    }
    // A reduced degree-d monomial only sheds degree in steps of two and
    // keeps its top layer.
    for trial in 0..500 {
        let n = rng.random_range(2..=5);
        let m = random_monomial(&mut rng, n, 8);
        let d = m.degree();
        let r = Polynomial::from_terms(n, [(m, Rational::one())]).canonical_reduce();
        assert_eq!(r.degree(), Some(d), "top degree lost on trial {trial}");
        for (mm, _) in r.iter() {
            assert_eq!((d - mm.degree()) % 2, 0, "odd degree drop on trial {trial}");
        }
    }
    finish("reduction soundness", start, Duration::from_secs(30));
}

#[test]
fn exact_certificates_for_orthonormal_bases_are_tight() {
    let start = Instant::now();
    for n in 2..=8usize {
        let config = known_configuration("orthonormal", n).unwrap();
        let cert = build_certificate(&config).unwrap();
        let checks = cert.checks();
        assert!(checks.delta, "delta must hold exactly at n = {n}");
        assert_eq!(checks.delta_max_deviation, 0.0, "exact mode deviation at n = {n}");
        assert!(checks.independent, "independence at n = {n}");
        assert_eq!(cert.rank(), n, "rank at n = {n}");
        assert_eq!(
            checks.sum_zero_bound,
            BoundComparison::Attained { m: n, bound: BigInt::from(n) },
            "bound attainment at n = {n}"
        );
        assert!(checks.passed);
    }
    finish("exact certificates (orthonormal)", start, Duration::from_secs(10));
}

#[test]
fn float_certificates_for_line_systems_are_tight() {
    let start = Instant::now();
    let hexagon = known_configuration("hexagon_lines", 2).unwrap();
    let cert = build_certificate(&hexagon).unwrap();
    let checks = cert.checks();
    assert!(checks.delta);
    assert!(checks.delta_max_deviation <= 1e-8, "hexagon delta {}", checks.delta_max_deviation);
    assert_eq!(checks.degree_gap, GapCheck::Pass);
    assert!(checks.independent);
    assert_eq!(cert.rank(), 3);
    assert_eq!(checks.sum_zero_bound, BoundComparison::Attained { m: 3, bound: BigInt::from(3) });
    assert!(checks.passed);

    let icosahedron = known_configuration("icosahedron_lines", 3).unwrap();
    if let PointConfiguration::Float(set) = &icosahedron {
        let profile = set.profile().unwrap();
        let alpha = 1.0 / 5f64.sqrt();
        assert_eq!(profile.s, 2);
        assert!((profile.values[0] + alpha).abs() <= 1e-9);
        assert!((profile.values[1] - alpha).abs() <= 1e-9);
    } else {
        panic!("icosahedron fixture must be float");
    }
    let cert = build_certificate(&icosahedron).unwrap();
    let checks = cert.checks();
    assert!(checks.delta);
    assert_eq!(checks.degree_gap, GapCheck::Pass, "no degree-1 terms may survive");
    assert!(checks.independent);
    assert_eq!(cert.rank(), 6);
    assert_eq!(checks.sum_zero_bound, BoundComparison::Attained { m: 6, bound: BigInt::from(6) });
    assert!(checks.passed);
    finish("float certificates (hexagon, icosahedron)", start, Duration::from_secs(10));
}

#[test]
fn gating_excludes_simplex_and_cross_polytope() {
    let start = Instant::now();
    for n in 2..=6usize {
        for name in ["simplex", "cross_polytope"] {
            let config = known_configuration(name, n).unwrap();
            let cert = build_certificate(&config).unwrap();
            let checks = cert.checks();
            assert!(!checks.sum_zero, "{name}({n}) must not be sum-zero");
            assert_eq!(checks.sum_zero_bound, BoundComparison::NotApplicable, "{name}({n})");
            assert_eq!(checks.degree_gap, GapCheck::NotApplicable, "{name}({n})");
            assert_eq!(checks.dimension_argument, None, "{name}({n})");
            assert!(checks.delta, "delta still holds for {name}({n})");
            assert!(checks.independent, "independence still holds for {name}({n})");
            assert!(checks.passed, "{name}({n}) report must pass");
        }
    }
    finish("hypothesis gating (simplex, cross-polytope)", start, Duration::from_secs(5));
}

#[test]
fn seeded_searches_never_beat_the_bound() {
    let start = Instant::now();
    // Ten (n, s, m_goal) shapes with m_goal <= the sum-zero bound, two
    // seeds each: twenty searches.
    let shapes: [(usize, usize, usize); 10] = [
        (2, 1, 2),
        (3, 1, 3),
        (4, 1, 4),
        (2, 2, 3),
        (3, 2, 4),
        (3, 2, 6),
        (4, 2, 6),
        (2, 3, 4),
        (3, 3, 5),
        (5, 2, 8),
    ];
    for &(n, s, m_goal) in &shapes {
        let dm = compute_bounds(n as i64, s as i64).unwrap().dm;
        assert!(BigInt::from(m_goal) <= dm, "shape ({n},{s},{m_goal}) beats the setup");
        for seed in [0u64, 1] {
            let mut opts = SearchOptions::new(m_goal);
            opts.seed = seed;
            opts.restarts = 3;
            let result = search(n, s, &opts).unwrap();
            assert!(BigInt::from(result.m) <= result.target_bound);
            if !result.converged {
                continue;
            }
            // A converged run only counts as a verified configuration if
            // its profile resolves to a sum-zero s-distance set and the
            // certificate passes; even then it must respect the bound.
            let Ok(set) = PointSet::float(n, result.best.points().to_vec(), 1e-6) else {
                continue;
            };
            let Ok(profile) = set.profile() else { continue };
            if profile.s != s || !profile.sum_zero {
                continue;
            }
            let Ok(cert) = build_certificate(&PointConfiguration::Float(set)) else {
                continue;
            };
            if cert.checks().passed {
                assert!(
                    BigInt::from(result.m) <= dm,
                    "verified configuration beats the bound at ({n},{s}), seed {seed}"
                );
            }
        }
    }

    // Gradient refinement pulls a perturbed three-line system back onto
    // its targets.
    let hexagon = match known_configuration("hexagon_lines", 2).unwrap() {
        PointConfiguration::Float(set) => set,
        PointConfiguration::Exact(_) => unreachable!("fixture is float"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let noisy: Vec<Vec<f64>> = hexagon
        .points()
        .iter()
        .map(|p| {
            let moved: Vec<f64> = p.iter().map(|c| c + rng.random_range(-1e-2..1e-2)).collect();
            let norm = moved.iter().map(|v| v * v).sum::<f64>().sqrt();
            moved.into_iter().map(|v| v / norm).collect()
        })
        .collect();
    let f0 = PointSet::float(2, noisy, 1e-7).unwrap();
    let refined = refine(&f0, &[-0.5, 0.5], &RefineOptions::default()).unwrap();
    assert!(refined.iterations <= 500);
    for i in 0..refined.config.len() {
        for j in i + 1..refined.config.len() {
            let t = refined.config.inner_product(i, j);
            assert!(
                (t.abs() - 0.5).abs() <= 1e-6,
                "pair ({i},{j}) ended at {t}, not within 1e-6 of a target"
            );
        }
    }
    finish("search consistency with the bound", start, Duration::from_secs(60));
}
