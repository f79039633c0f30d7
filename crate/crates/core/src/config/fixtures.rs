//! Reference configurations with known inner-product profiles.

use num_traits::{One, Zero};

use super::{ConfigError, PointConfiguration, PointSet, DEFAULT_TOLERANCE};
use crate::scalar::Rational;

/// Builds a named reference configuration in R^n.
///
/// Names: `orthonormal` (n points, P = {0}), `simplex` (n+1 points,
/// P = {-1/n}), `cross_polytope` (2n points, P = {0, -1}), `hexagon_lines`
/// (n = 2, three lines at 60 degrees, P = {-1/2, 1/2}), and
/// `icosahedron_lines` (n = 3, one unit vector per diagonal of the
/// icosahedron, P = {-1/sqrt 5, 1/sqrt 5}).
pub fn known_configuration(name: &str, n: usize) -> Result<PointConfiguration, ConfigError> {
    match name {
        "orthonormal" => orthonormal(n),
        "simplex" => simplex(n),
        "cross_polytope" => cross_polytope(n),
        "hexagon_lines" => {
            require_dim("hexagon_lines", 2, n)?;
            hexagon_lines()
        }
        "icosahedron_lines" => {
            require_dim("icosahedron_lines", 3, n)?;
            icosahedron_lines()
        }
        _ => Err(ConfigError::UnknownConfiguration { name: name.to_owned() }),
    }
}

fn require_dim(name: &'static str, expected: usize, found: usize) -> Result<(), ConfigError> {
    if expected == found {
        Ok(())
    } else {
        Err(ConfigError::FixtureDimension { name, expected, found })
    }
}

fn unit_vector(n: usize, index: usize) -> Vec<Rational> {
    (0..n)
        .map(|j| if j == index { Rational::one() } else { Rational::zero() })
        .collect()
}

fn orthonormal(n: usize) -> Result<PointConfiguration, ConfigError> {
    let points = (0..n).map(|i| unit_vector(n, i)).collect();
    Ok(PointConfiguration::Exact(PointSet::exact(n, points)?))
}

fn cross_polytope(n: usize) -> Result<PointConfiguration, ConfigError> {
    let mut points: Vec<Vec<Rational>> = (0..n).map(|i| unit_vector(n, i)).collect();
    points.extend((0..n).map(|i| unit_vector(n, i).into_iter().map(|c| -c).collect::<Vec<_>>()));
    Ok(PointConfiguration::Exact(PointSet::exact(n, points)?))
}

/// Regular simplex: vertex i is the i-th row of the Helmert basis of the
/// hyperplane x_1 + ... + x_{n+1} = 0, rescaled to unit norm. Pairwise inner
/// products are all -1/n; the coordinates are irrational, so the fixture is
/// built in float mode.
fn simplex(n: usize) -> Result<PointConfiguration, ConfigError> {
    if n < 2 {
        return Err(ConfigError::InvalidDimension { n });
    }
    // helmert[k][i] for k in 1..=n: k ones, then -k, then zeros, normalized.
    let scale = (n as f64 / (n as f64 + 1.0)).sqrt();
    let points: Vec<Vec<f64>> = (0..=n)
        .map(|i| {
            (1..=n)
                .map(|k| {
                    let raw = if i < k {
                        1.0
                    } else if i == k {
                        -(k as f64)
                    } else {
                        0.0
                    };
                    raw / (k as f64 * (k as f64 + 1.0)).sqrt() / scale
                })
                .collect()
        })
        .collect();
    Ok(PointConfiguration::Float(PointSet::float(n, points, DEFAULT_TOLERANCE)?))
}

fn hexagon_lines() -> Result<PointConfiguration, ConfigError> {
    let half_sqrt3 = 3.0f64.sqrt() / 2.0;
    let points = vec![
        vec![1.0, 0.0],
        vec![0.5, half_sqrt3],
        vec![-0.5, half_sqrt3],
    ];
    Ok(PointConfiguration::Float(PointSet::float(2, points, DEFAULT_TOLERANCE)?))
}

fn icosahedron_lines() -> Result<PointConfiguration, ConfigError> {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let norm = (1.0 + phi * phi).sqrt();
    let raw = [
        [0.0, 1.0, phi],
        [0.0, 1.0, -phi],
        [1.0, phi, 0.0],
        [1.0, -phi, 0.0],
        [phi, 0.0, 1.0],
        [phi, 0.0, -1.0],
    ];
    let points = raw
        .iter()
        .map(|p| p.iter().map(|c| c / norm).collect())
        .collect();
    Ok(PointConfiguration::Float(PointSet::float(3, points, DEFAULT_TOLERANCE)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn float_profile(config: &PointConfiguration) -> (usize, Vec<f64>, bool, bool) {
        match config {
            PointConfiguration::Float(set) => {
                let p = set.profile().unwrap();
                (p.s, p.values.clone(), p.sum_zero, p.symmetric_pm)
            }
            PointConfiguration::Exact(_) => panic!("expected float fixture"),
        }
    }

    #[test]
    fn orthonormal_fixture() {
        let config = known_configuration("orthonormal", 4).unwrap();
        assert_eq!(config.len(), 4);
        match &config {
            PointConfiguration::Exact(set) => {
                let p = set.profile().unwrap();
                assert_eq!(p.values, vec![rat(0, 1)]);
                assert!(p.sum_zero);
            }
            PointConfiguration::Float(_) => panic!("expected exact fixture"),
        }
    }

    #[test]
    fn simplex_fixture() {
        for n in 2..=6 {
            let config = known_configuration("simplex", n).unwrap();
            assert_eq!(config.len(), n + 1);
            let (s, values, sum_zero, _) = float_profile(&config);
            assert_eq!(s, 1);
            assert!((values[0] + 1.0 / n as f64).abs() < 1e-12);
            assert!(!sum_zero);
        }
    }

    #[test]
    fn cross_polytope_fixture() {
        let config = known_configuration("cross_polytope", 3).unwrap();
        assert_eq!(config.len(), 6);
        match &config {
            PointConfiguration::Exact(set) => {
                let p = set.profile().unwrap();
                assert_eq!(p.values, vec![rat(-1, 1), rat(0, 1)]);
                assert_eq!(p.sum, rat(-1, 1));
                assert!(!p.sum_zero);
                assert!(!p.symmetric_pm);
            }
            PointConfiguration::Float(_) => panic!("expected exact fixture"),
        }
    }

    #[test]
    fn hexagon_fixture() {
        let config = known_configuration("hexagon_lines", 2).unwrap();
        let (s, values, sum_zero, symmetric) = float_profile(&config);
        assert_eq!(s, 2);
        assert!((values[0] + 0.5).abs() < 1e-12);
        assert!((values[1] - 0.5).abs() < 1e-12);
        assert!(sum_zero);
        assert!(symmetric);
    }

    #[test]
    fn icosahedron_fixture() {
        let config = known_configuration("icosahedron_lines", 3).unwrap();
        assert_eq!(config.len(), 6);
        let (s, values, sum_zero, symmetric) = float_profile(&config);
        let alpha = 1.0 / 5.0f64.sqrt();
        assert_eq!(s, 2);
        assert!((values[0] + alpha).abs() < 1e-9);
        assert!((values[1] - alpha).abs() < 1e-9);
        assert!(sum_zero);
        assert!(symmetric);
        // Every pair is equiangular: |t| = 1/sqrt(5) within 1e-9.
        match &config {
            PointConfiguration::Float(set) => {
                for i in 0..set.len() {
                    for j in i + 1..set.len() {
                        let t = set.inner_product(i, j);
                        assert!((t.abs() - alpha).abs() < 1e-9, "pair ({i},{j}) has t = {t}");
                    }
                }
            }
            PointConfiguration::Exact(_) => unreachable!(),
        }
    }

    #[test]
    fn unknown_names_and_bad_dimensions_error() {
        assert!(matches!(
            known_configuration("dodecahedron", 3),
            Err(ConfigError::UnknownConfiguration { .. })
        ));
        assert!(matches!(
            known_configuration("hexagon_lines", 3),
            Err(ConfigError::FixtureDimension { expected: 2, found: 3, .. })
        ));
        assert!(matches!(
            known_configuration("icosahedron_lines", 2),
            Err(ConfigError::FixtureDimension { expected: 3, found: 2, .. })
        ));
        assert!(matches!(
            known_configuration("simplex", 1),
            Err(ConfigError::InvalidDimension { n: 1 })
        ));
    }

    #[test]
    fn simplex_gram_matrix_oracle() {
        // Direct Gram-matrix check of the Helmert construction.
        let config = known_configuration("simplex", 4).unwrap();
        let set = match &config {
            PointConfiguration::Float(set) => set,
            PointConfiguration::Exact(_) => unreachable!(),
        };
        for i in 0..set.len() {
            for j in 0..set.len() {
                let t = set.inner_product(i, j);
                let expect = if i == j { 1.0 } else { -0.25 };
                assert!((t - expect).abs() < 1e-12, "gram[{i}][{j}] = {t}");
            }
        }
    }
}
