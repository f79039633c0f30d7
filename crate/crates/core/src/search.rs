//! Multi-start projected gradient search for sum-zero s-distance
//! configurations — an empirical probe of whether the cardinality bound is
//! attained. Results are candidates, never (non)existence claims.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::bounds::{compute_bounds, BoundsError};
use crate::config::{ConfigError, PointSet};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("need at least one target")]
    NoTargets,
    #[error("targets must be finite")]
    TargetNotFinite,
    #[error("targets must be strictly increasing, got {left} then {right}")]
    TargetsNotIncreasing { left: f64, right: f64 },
    #[error("target {value} is not below 1")]
    TargetTooLarge { value: f64 },
    #[error("expected {expected} targets, got {found}")]
    TargetCount { expected: usize, found: usize },
    #[error("targets must sum to zero, got {sum:e}")]
    TargetsNotSumZero { sum: f64 },
    #[error("search requires n >= 2, s >= 1, m_goal >= 2 and restarts >= 1")]
    InvalidParameters,
    #[error("every restart collapsed to an invalid configuration")]
    AllRestartsFailed,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Debug, Clone)]
pub struct RefineOptions {
    pub max_iterations: usize,
    pub step: f64,
    /// Convergence threshold: refinement stops once the objective falls to
    /// `tolerance^2`, i.e. every pair residual is below `tolerance`.
    pub tolerance: f64,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions { max_iterations: 500, step: 0.05, tolerance: 1e-7 }
    }
}

/// Outcome of one gradient refinement.
#[derive(Debug, Clone)]
pub struct Refined {
    pub config: PointSet<f64>,
    pub penalty: f64,
    /// Accepted steps taken.
    pub iterations: usize,
    /// Objective after the initial state and each accepted step;
    /// non-increasing by construction.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub m_goal: usize,
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub step: f64,
    pub tolerance: f64,
    /// Fixed sum-zero targets; sampled per restart when absent.
    pub targets: Option<Vec<f64>>,
    /// Worker threads; 1 is the sequential determinism reference, and any
    /// thread count visits identical restarts.
    pub threads: usize,
}

impl SearchOptions {
    pub fn new(m_goal: usize) -> Self {
        SearchOptions {
            m_goal,
            restarts: 8,
            seed: 0,
            max_iterations: 500,
            step: 0.05,
            tolerance: 1e-7,
            targets: None,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best: PointSet<f64>,
    /// Distinct-value count of the best configuration, when its profile is
    /// unambiguous at 10x the search tolerance.
    pub achieved_s: Option<usize>,
    /// The sum-zero bound M_{<=s}(n) - M_{s-1}(n) the search probes.
    pub target_bound: BigInt,
    pub m: usize,
    pub penalty: f64,
    pub seed: u64,
    /// Accepted steps used by the winning restart.
    pub iterations: usize,
    pub restarts_used: usize,
    /// Index of the winning restart (lowest penalty, ties to the lowest
    /// index).
    pub best_restart: usize,
    /// Targets the winning restart refined toward.
    pub targets: Vec<f64>,
    pub converged: bool,
}

fn validate_targets(targets: &[f64]) -> Result<(), SearchError> {
    if targets.is_empty() {
        return Err(SearchError::NoTargets);
    }
    for pair in targets.windows(2) {
        if !(pair[0].is_finite() && pair[1].is_finite()) {
            return Err(SearchError::TargetNotFinite);
        }
        if pair[1] <= pair[0] {
            return Err(SearchError::TargetsNotIncreasing { left: pair[0], right: pair[1] });
        }
    }
    let last = *targets.last().expect("non-empty");
    if !last.is_finite() {
        return Err(SearchError::TargetNotFinite);
    }
    if last >= 1.0 {
        return Err(SearchError::TargetTooLarge { value: last });
    }
    Ok(())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Target closest to `t`; ties resolve to the smaller target.
fn nearest(targets: &[f64], t: f64) -> f64 {
    let mut best = targets[0];
    for &candidate in &targets[1..] {
        if (t - candidate).abs() < (t - best).abs() {
            best = candidate;
        }
    }
    best
}

fn objective(points: &[Vec<f64>], targets: &[f64]) -> f64 {
    let mut e = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let r = dot(&points[i], &points[j]);
            let r = r - nearest(targets, r);
            e += r * r;
        }
    }
    e
}

fn gradient(points: &[Vec<f64>], targets: &[f64]) -> Vec<Vec<f64>> {
    let m = points.len();
    let n = points[0].len();
    let mut grad = vec![vec![0.0; n]; m];
    for i in 0..m {
        for j in i + 1..m {
            let t = dot(&points[i], &points[j]);
            let r = t - nearest(targets, t);
            for k in 0..n {
                grad[i][k] += 2.0 * r * points[j][k];
                grad[j][k] += 2.0 * r * points[i][k];
            }
        }
    }
    grad
}

/// Euclidean step followed by renormalization of every point.
fn retract(points: &[Vec<f64>], grad: &[Vec<f64>], step: f64) -> Vec<Vec<f64>> {
    points
        .iter()
        .zip(grad)
        .map(|(p, g)| {
            let moved: Vec<f64> = p.iter().zip(g).map(|(a, b)| a - step * b).collect();
            let norm = moved.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-12 {
                p.clone()
            } else {
                moved.into_iter().map(|v| v / norm).collect()
            }
        })
        .collect()
}

/// Projected gradient descent toward the given strictly increasing targets.
/// The objective sum of (t_ij - nearest target)^2 never increases across
/// accepted steps; each step backtracks by halving up to 30 times and the
/// refinement terminates early when no decrease is found.
pub fn refine(
    f0: &PointSet<f64>,
    targets: &[f64],
    opts: &RefineOptions,
) -> Result<Refined, SearchError> {
    validate_targets(targets)?;
    let mut points: Vec<Vec<f64>> = f0.points().to_vec();
    let stop = opts.tolerance * opts.tolerance;
    let mut penalty = objective(&points, targets);
    let mut trace = vec![penalty];
    let mut iterations = 0;
    'descent: while iterations < opts.max_iterations && penalty > stop {
        let grad = gradient(&points, targets);
        let mut step = opts.step;
        let mut halvings = 0;
        loop {
            let candidate = retract(&points, &grad, step);
            let improved = objective(&candidate, targets);
            if improved <= penalty {
                points = candidate;
                penalty = improved;
                break;
            }
            if halvings == 30 {
                break 'descent;
            }
            step /= 2.0;
            halvings += 1;
        }
        iterations += 1;
        trace.push(penalty);
    }
    let config = PointSet::float(f0.dim(), points, f0.tolerance())?;
    Ok(Refined { config, penalty, iterations, trace })
}

/// Sum-zero targets: s - 1 uniform draws in (-0.9, 0.9) plus the negated
/// sum, rejected until all |t| < 0.95 and pairwise gaps are at least 0.05.
fn sample_targets(rng: &mut ChaCha8Rng, s: usize) -> Vec<f64> {
    if s == 1 {
        return vec![0.0];
    }
    loop {
        let mut t: Vec<f64> = (0..s - 1).map(|_| rng.random_range(-0.9..0.9)).collect();
        let last = -t.iter().sum::<f64>();
        t.push(last);
        t.sort_by(f64::total_cmp);
        if t.iter().any(|v| v.abs() >= 0.95) {
            continue;
        }
        if t.windows(2).any(|w| w[1] - w[0] < 0.05) {
            continue;
        }
        return t;
    }
}

/// Uniform points on S^{n-1} via normalized standard-normal vectors.
fn sample_sphere_points(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|_| loop {
            let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        })
        .collect()
}

type RestartOutcome = (Vec<f64>, Refined);

/// One restart's deterministic stream is (seed, restart index); restarts
/// that collapse to an invalid configuration are skipped.
fn run_restart(n: usize, s: usize, opts: &SearchOptions, restart: usize) -> Option<RestartOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart as u64);
    let targets = match &opts.targets {
        Some(t) => t.clone(),
        None => sample_targets(&mut rng, s),
    };
    let start = sample_sphere_points(&mut rng, n, opts.m_goal);
    let f0 = PointSet::float(n, start, opts.tolerance).ok()?;
    let refine_opts = RefineOptions {
        max_iterations: opts.max_iterations,
        step: opts.step,
        tolerance: opts.tolerance,
    };
    let refined = refine(&f0, &targets, &refine_opts).ok()?;
    Some((targets, refined))
}

/// Multi-start search for an s-distance configuration of `opts.m_goal`
/// points in R^n with sum-zero inner products. Deterministic for a given
/// (seed, options); the thread count never changes the outcome.
pub fn search(n: usize, s: usize, opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    if n < 2 || s < 1 || opts.m_goal < 2 || opts.restarts < 1 {
        return Err(SearchError::InvalidParameters);
    }
    if let Some(targets) = &opts.targets {
        if targets.len() != s {
            return Err(SearchError::TargetCount { expected: s, found: targets.len() });
        }
        validate_targets(targets)?;
        let sum: f64 = targets.iter().sum();
        if sum.abs() > 1e-9 {
            return Err(SearchError::TargetsNotSumZero { sum });
        }
    }
    let target_bound = compute_bounds(n as i64, s as i64)?.dm;

    let outcomes: Vec<Option<RestartOutcome>> = if opts.threads <= 1 {
        (0..opts.restarts).map(|r| run_restart(n, s, opts, r)).collect()
    } else {
        let mut slots: Vec<Option<RestartOutcome>> = Vec::new();
        slots.resize_with(opts.restarts, || None);
        let next = AtomicUsize::new(0);
        let collected: Mutex<Vec<(usize, Option<RestartOutcome>)>> = Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..opts.threads.min(opts.restarts) {
                scope.spawn(|| loop {
                    let r = next.fetch_add(1, Ordering::Relaxed);
                    if r >= opts.restarts {
                        break;
                    }
                    let outcome = run_restart(n, s, opts, r);
                    collected.lock().expect("no panics hold the lock").push((r, outcome));
                });
            }
        });
        for (r, outcome) in collected.into_inner().expect("threads joined") {
            slots[r] = outcome;
        }
        slots
    };

    // Lowest penalty wins; the index order of the scan breaks ties toward
    // the lowest restart index, keeping parallel runs identical.
    let mut best: Option<(usize, RestartOutcome)> = None;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        let Some(outcome) = outcome else { continue };
        let better = match &best {
            None => true,
            Some((_, incumbent)) => outcome.1.penalty < incumbent.1.penalty,
        };
        if better {
            best = Some((index, outcome));
        }
    }
    let (best_restart, (targets, refined)) = best.ok_or(SearchError::AllRestartsFailed)?;

    // Cluster at 10x the step tolerance: converged runs can leave residuals
    // just under `tolerance`, which single-linkage at the raw tolerance
    // could split ambiguously.
    let achieved_s = PointSet::float(n, refined.config.points().to_vec(), 10.0 * opts.tolerance)
        .ok()
        .and_then(|loose| loose.profile().ok())
        .map(|p| p.s);
    let converged = refined.penalty <= opts.tolerance * opts.tolerance;
    Ok(SearchResult {
        m: refined.config.len(),
        best: refined.config,
        achieved_s,
        target_bound,
        penalty: refined.penalty,
        seed: opts.seed,
        iterations: refined.iterations,
        restarts_used: opts.restarts,
        best_restart,
        targets,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{known_configuration, PointConfiguration};

    fn hexagon_float() -> PointSet<f64> {
        match known_configuration("hexagon_lines", 2).unwrap() {
            PointConfiguration::Float(set) => set,
            PointConfiguration::Exact(_) => unreachable!(),
        }
    }

    #[test]
    fn refine_recovers_perturbed_hexagon() {
        let clean = hexagon_float();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let noisy: Vec<Vec<f64>> = clean
            .points()
            .iter()
            .map(|p| {
                let moved: Vec<f64> =
                    p.iter().map(|c| c + rng.random_range(-1e-2..1e-2)).collect();
                let norm = moved.iter().map(|v| v * v).sum::<f64>().sqrt();
                moved.into_iter().map(|v| v / norm).collect()
            })
            .collect();
        let f0 = PointSet::float(2, noisy, 1e-7).unwrap();
        let refined = refine(&f0, &[-0.5, 0.5], &RefineOptions::default()).unwrap();
        assert!(refined.iterations <= 500);
        assert!(refined.penalty <= 1e-14, "penalty {}", refined.penalty);
        for i in 0..refined.config.len() {
            for j in i + 1..refined.config.len() {
                let t = refined.config.inner_product(i, j);
                let closest = nearest(&[-0.5, 0.5], t);
                assert!((t - closest).abs() <= 1e-6, "pair ({i},{j}): {t}");
            }
        }
    }

    #[test]
    fn refine_leaves_stationary_points_alone() {
        let clean = hexagon_float();
        let refined = refine(&clean, &[-0.5, 0.5], &RefineOptions::default()).unwrap();
        assert_eq!(refined.iterations, 0);
        assert_eq!(refined.config.points(), clean.points());
    }

    #[test]
    fn refine_objective_is_non_increasing() {
        let clean = hexagon_float();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let noisy: Vec<Vec<f64>> = clean
            .points()
            .iter()
            .map(|p| {
                let moved: Vec<f64> =
                    p.iter().map(|c| c + rng.random_range(-0.3..0.3)).collect();
                let norm = moved.iter().map(|v| v * v).sum::<f64>().sqrt();
                moved.into_iter().map(|v| v / norm).collect()
            })
            .collect();
        let f0 = PointSet::float(2, noisy, 1e-7).unwrap();
        let refined = refine(&f0, &[-0.5, 0.5], &RefineOptions::default()).unwrap();
        for pair in refined.trace.windows(2) {
            assert!(pair[1] <= pair[0], "objective increased: {} -> {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn refine_validates_targets() {
        let clean = hexagon_float();
        assert!(matches!(
            refine(&clean, &[0.5, 0.4], &RefineOptions::default()),
            Err(SearchError::TargetsNotIncreasing { .. })
        ));
        assert!(matches!(
            refine(&clean, &[0.5, 1.0], &RefineOptions::default()),
            Err(SearchError::TargetTooLarge { .. })
        ));
        assert!(matches!(
            refine(&clean, &[], &RefineOptions::default()),
            Err(SearchError::NoTargets)
        ));
        assert!(matches!(
            refine(&clean, &[0.2, 0.2], &RefineOptions::default()),
            Err(SearchError::TargetsNotIncreasing { .. })
        ));
    }

    #[test]
    fn search_recovers_three_lines_from_fixed_targets() {
        // Targets {-1/2, 1/2} are the only symmetric pair three circle
        // points can realize exactly, so fix them rather than sample.
        let mut opts = SearchOptions::new(3);
        opts.seed = 42;
        opts.targets = Some(vec![-0.5, 0.5]);
        let result = search(2, 2, &opts).unwrap();
        assert!(result.converged, "penalty {}", result.penalty);
        assert!(result.penalty < 1e-12);
        assert_eq!(result.m, 3);
        assert_eq!(result.target_bound, BigInt::from(3));
        for i in 0..3 {
            for j in i + 1..3 {
                let t = result.best.inner_product(i, j);
                assert!((t.abs() - 0.5).abs() < 1e-6, "pair ({i},{j}): {t}");
            }
        }
        // The equilateral triple (all products -1/2) and the three-line
        // triple (products +-1/2) are both zero-penalty basins.
        let s = result.achieved_s.expect("profile resolves");
        assert!(s == 1 || s == 2, "achieved_s {s}");
    }

    #[test]
    fn sampled_target_search_reports_a_consistent_outcome() {
        let mut opts = SearchOptions::new(3);
        opts.seed = 42;
        let result = search(2, 2, &opts).unwrap();
        assert_eq!(result.m, 3);
        assert_eq!(result.restarts_used, 8);
        assert!(result.best_restart < 8);
        assert!(result.penalty.is_finite() && result.penalty >= 0.0);
        // A convergence claim must never beat the bound.
        if result.converged {
            if let Some(s) = result.achieved_s {
                assert!(s <= 2);
                assert!(BigInt::from(result.m) <= result.target_bound);
            }
        }
        // Winning targets are a strictly increasing sum-zero pair.
        assert_eq!(result.targets.len(), 2);
        assert!(result.targets[0] < result.targets[1]);
        assert!((result.targets[0] + result.targets[1]).abs() < 1e-9);
    }

    #[test]
    fn search_with_fixed_zero_target_finds_an_orthonormal_triple() {
        let mut opts = SearchOptions::new(3);
        opts.seed = 7;
        opts.targets = Some(vec![0.0]);
        let result = search(3, 1, &opts).unwrap();
        assert!(result.converged);
        assert!(result.penalty < 1e-12);
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(result.best.inner_product(i, j).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn overfull_goal_reports_nonzero_floor() {
        let mut opts = SearchOptions::new(4);
        opts.seed = 1;
        let result = search(2, 2, &opts).unwrap();
        assert_eq!(result.m, 4);
        assert!(BigInt::from(result.m) > result.target_bound);
        assert!(!result.converged);
        assert!(result.penalty > 1e-9, "penalty {}", result.penalty);
    }

    #[test]
    fn search_is_deterministic_and_thread_invariant() {
        let mut opts = SearchOptions::new(3);
        opts.seed = 42;
        let a = search(2, 2, &opts).unwrap();
        let b = search(2, 2, &opts).unwrap();
        assert_eq!(a.best.points(), b.best.points());
        assert_eq!(a.penalty.to_bits(), b.penalty.to_bits());
        assert_eq!(a.best_restart, b.best_restart);
        opts.threads = 3;
        let c = search(2, 2, &opts).unwrap();
        assert_eq!(a.best.points(), c.best.points());
        assert_eq!(a.penalty.to_bits(), c.penalty.to_bits());
        assert_eq!(a.best_restart, c.best_restart);
    }

    #[test]
    fn search_validates_parameters_and_targets() {
        assert!(matches!(
            search(1, 2, &SearchOptions::new(3)),
            Err(SearchError::InvalidParameters)
        ));
        assert!(matches!(
            search(2, 0, &SearchOptions::new(3)),
            Err(SearchError::InvalidParameters)
        ));
        assert!(matches!(
            search(2, 2, &SearchOptions::new(1)),
            Err(SearchError::InvalidParameters)
        ));
        let mut opts = SearchOptions::new(3);
        opts.targets = Some(vec![0.0]);
        assert!(matches!(
            search(2, 2, &opts),
            Err(SearchError::TargetCount { expected: 2, found: 1 })
        ));
        let mut opts = SearchOptions::new(3);
        opts.targets = Some(vec![-0.2, 0.3]);
        assert!(matches!(search(2, 2, &opts), Err(SearchError::TargetsNotSumZero { .. })));
    }
}
