//! Geometric sorting networks of planar point sets, Archimedes-distributed
//! points, and the integrals behind the limiting swap expectations.
//!
//! Points are labeled `1..=m` by increasing horizontal coordinate. As the
//! projection direction `(cos θ, sin θ)` turns from `θ = 0` to `θ = π`, the
//! projection order changes by one adjacent swap each time the direction
//! becomes perpendicular to the segment joining two points; the sequence of
//! swap locations is the geometric sorting network.

pub mod quadrature;

use std::f64::consts::{FRAC_PI_2, PI};

use num_traits::ToPrimitive;
use rand::Rng;
use rand_distr::{Distribution, UnitSphere};
use serde::Serialize;
use thiserror::Error;

use crate::exact::binomial;
use crate::montecarlo::{run_accumulate, Estimate, McConfig, McError};
use crate::network::{pair_count, SortingNetwork};

/// Swap angles closer than this are treated as simultaneous.
pub const ANGLE_TIE_TOLERANCE: f64 = 1e-12;
/// Absolute tolerance used for the expectation integral.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("point ({x}, {y}) is not inside the open unit disc")]
    OutsideDisc { x: f64, y: f64 },
    #[error("points are not in general position: {0}")]
    Degenerate(String),
    #[error("point label {0} out of range")]
    BadLabel(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse points: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn minus(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

/// Points in general position inside the unit disc, sorted by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Sorts by `x` and checks that the points lie in the open unit disc,
    /// have distinct `x`, and that no three are collinear (within
    /// [`ANGLE_TIE_TOLERANCE`] on the cross product).
    pub fn new(mut points: Vec<Point>) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::TooFewPoints {
                min: 2,
                got: points.len(),
            });
        }
        if let Some(p) = points
            .iter()
            .find(|p| !p.x.is_finite() || !p.y.is_finite() || p.x * p.x + p.y * p.y >= 1.0)
        {
            return Err(GeometryError::OutsideDisc { x: p.x, y: p.y });
        }
        points.sort_by(|a, b| a.x.total_cmp(&b.x));
        if points.windows(2).any(|w| w[0].x == w[1].x) {
            return Err(GeometryError::Degenerate(
                "two points on a vertical line".into(),
            ));
        }
        let m = points.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let c = points[j].minus(points[i]).cross(points[k].minus(points[i]));
                    if c.abs() <= ANGLE_TIE_TOLERANCE {
                        return Err(GeometryError::Degenerate(format!(
                            "points {}, {}, {} are collinear",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Point with 1-based label `label`.
    pub fn point(&self, label: usize) -> Result<Point, GeometryError> {
        label
            .checked_sub(1)
            .and_then(|i| self.points.get(i))
            .copied()
            .ok_or(GeometryError::BadLabel(label))
    }

    /// `x,y` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for p in &self.points {
            out.push_str(&format!("{},{}\n", p.x, p.y));
        }
        out
    }

    /// Parses `x,y` rows; a non-numeric first line is taken as a header.
    pub fn from_csv(text: &str) -> Result<Self, GeometryError> {
        let mut points = Vec::new();
        for (i, line) in text.lines().map(str::trim).enumerate() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let parsed = match fields.as_slice() {
                [x, y] => x.parse::<f64>().ok().zip(y.parse::<f64>().ok()),
                _ => None,
            };
            match parsed {
                Some((x, y)) => points.push(Point::new(x, y)),
                None if i == 0 => continue,
                None => return Err(GeometryError::Parse(format!("line {}: {line:?}", i + 1))),
            }
        }
        PointSet::new(points)
    }
}

/// Draws `m` i.i.d. points with the Archimedes density
/// `1 / (2π sqrt(1 - x² - y²))` by projecting uniform points on the unit
/// sphere to the plane. Draws that are not in general position are
/// discarded; the number of discarded draws is returned alongside.
pub fn sample_archimedes<R: Rng + ?Sized>(m: usize, rng: &mut R) -> (PointSet, u32) {
    assert!(m >= 2, "need at least two points");
    let mut resamples = 0;
    loop {
        let points: Vec<Point> = (0..m).map(|_| archimedes_point(rng)).collect();
        match PointSet::new(points) {
            Ok(set) => return (set, resamples),
            Err(_) => resamples += 1,
        }
    }
}

/// One Archimedes point, strictly inside the disc.
pub fn archimedes_point<R: Rng + ?Sized>(rng: &mut R) -> Point {
    loop {
        let [x, y, _]: [f64; 3] = UnitSphere.sample(rng);
        if x * x + y * y < 1.0 {
            return Point::new(x, y);
        }
    }
}

/// The direction at which labels `i < j` swap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapAngle {
    pub theta: f64,
    pub i: usize,
    pub j: usize,
}

/// For every pair, the angle `θ ∈ (0, π)` at which the two projections
/// coincide, sorted ascending.
pub fn swap_angles(points: &PointSet) -> Vec<SwapAngle> {
    let p = points.points();
    let m = p.len();
    let mut out = Vec::with_capacity(pair_count(m));
    for i in 0..m {
        for j in i + 1..m {
            let d = p[j].minus(p[i]);
            // d.x > 0, so atan2 lies in (-π/2, π/2)
            out.push(SwapAngle {
                theta: d.y.atan2(d.x) + FRAC_PI_2,
                i: i + 1,
                j: j + 1,
            });
        }
    }
    out.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    out
}

/// The geometric sorting network of `points`.
pub fn geometric_network(points: &PointSet) -> Result<SortingNetwork, GeometryError> {
    let m = points.len();
    let angles = swap_angles(points);
    if let Some(w) = angles
        .windows(2)
        .find(|w| w[1].theta - w[0].theta < ANGLE_TIE_TOLERANCE)
    {
        return Err(GeometryError::Degenerate(format!(
            "pairs ({}, {}) and ({}, {}) swap at the same angle",
            w[0].i, w[0].j, w[1].i, w[1].j
        )));
    }
    if angles
        .first()
        .is_some_and(|a| a.theta < ANGLE_TIE_TOLERANCE)
        || angles
            .last()
            .is_some_and(|a| PI - a.theta < ANGLE_TIE_TOLERANCE)
    {
        return Err(GeometryError::Degenerate("a pair swaps at θ = 0".into()));
    }
    // position[label] is the 1-based position in the current order
    let mut position: Vec<usize> = (0..=m).collect();
    let mut swaps = Vec::with_capacity(angles.len());
    for a in &angles {
        let (pi, pj) = (position[a.i], position[a.j]);
        if pj != pi + 1 {
            return Err(GeometryError::Degenerate(format!(
                "pair ({}, {}) is not adjacent when it swaps",
                a.i, a.j
            )));
        }
        swaps.push(pi as u32);
        position[a.i] = pj;
        position[a.j] = pi;
    }
    SortingNetwork::new(m, swaps).map_err(|e| GeometryError::Degenerate(e.to_string()))
}

/// Draws Archimedes points until their geometric network is well defined.
pub fn sample_geometric_network<R: Rng + ?Sized>(
    m: usize,
    rng: &mut R,
) -> (PointSet, SortingNetwork) {
    loop {
        let (points, _) = sample_archimedes(m, rng);
        if let Ok(net) = geometric_network(&points) {
            return (points, net);
        }
    }
}

/// Signed distance from the origin to the line through points `i` and `j`,
/// positive when the origin lies to the left of the segment directed from
/// the lower label to the higher one.
pub fn pair_projection_distance(
    points: &PointSet,
    i: usize,
    j: usize,
) -> Result<f64, GeometryError> {
    if i == j {
        return Err(GeometryError::Precondition(
            "need two distinct labels".into(),
        ));
    }
    let (lo, hi) = (points.point(i.min(j))?, points.point(i.max(j))?);
    let d = hi.minus(lo);
    let len = d.x.hypot(d.y);
    if len == 0.0 {
        return Err(GeometryError::Degenerate("coincident points".into()));
    }
    Ok(d.cross(Point::new(-lo.x, -lo.y)) / len)
}

/// For four points, whether one of them lies inside the triangle formed by
/// the other three.
pub fn has_point_inside_triangle(points: &PointSet) -> Result<bool, GeometryError> {
    let p = points.points();
    if p.len() != 4 {
        return Err(GeometryError::Precondition(format!(
            "need exactly 4 points, got {}",
            p.len()
        )));
    }
    let orient = |a: Point, b: Point, c: Point| b.minus(a).cross(c.minus(a)).signum();
    Ok((0..4).any(|k| {
        let others: Vec<Point> = (0..4).filter(|&i| i != k).map(|i| p[i]).collect();
        let (a, b, c) = (others[0], others[1], others[2]);
        let s1 = orient(a, b, p[k]);
        s1 == orient(b, c, p[k]) && s1 == orient(c, a, p[k])
    }))
}

fn check_location(m: usize, j: usize) -> Result<(), GeometryError> {
    if m >= 2 && (1..m).contains(&j) {
        Ok(())
    } else {
        Err(GeometryError::Precondition(format!(
            "need m >= 2 and 1 <= j <= m-1, got m={m}, j={j}"
        )))
    }
}

/// `C(m,2) ∫ C(m-2,j-1) ((1+r)/2)^(j-1) ((1-r)/2)^(m-j-1) (2/π) sqrt(1-r²) dr`
/// over `[-1, 1]`, evaluated with `r = cos φ` so the square-root endpoint
/// behaviour becomes a smooth `sin² φ` factor.
pub fn archimedes_expected_swaps(m: usize, j: usize) -> Result<f64, GeometryError> {
    check_location(m, j)?;
    let ways = binomial(m as i64 - 2, j as i64 - 1)
        .to_f64()
        .expect("small binomial");
    let (a, b) = ((j - 1) as i32, (m - j - 1) as i32);
    let integrand = |phi: f64| {
        let (s, r) = phi.sin_cos();
        ((1.0 + r) / 2.0).powi(a) * ((1.0 - r) / 2.0).powi(b) * s * s
    };
    let integral = quadrature::integrate(integrand, 0.0, PI, QUADRATURE_TOLERANCE, 0.0);
    Ok(pair_count(m) as f64 * ways * (2.0 / PI) * integral)
}

/// The two evaluations of `∫₀¹ t^(j-1/2) (1-t)^(m-j-1/2) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaCheck {
    pub quadrature: f64,
    pub gamma: f64,
}

impl BetaCheck {
    pub fn relative_difference(&self) -> f64 {
        (self.quadrature - self.gamma).abs() / self.gamma.abs()
    }
}

/// `Γ(k + 1/2) = sqrt(π) (1/2)(3/2)...(k - 1/2)`.
fn gamma_half_integer(k: usize) -> f64 {
    (1..=k).fold(PI.sqrt(), |acc, i| acc * (i as f64 - 0.5))
}

/// Evaluates the Beta integral by quadrature (with `t = sin² u`) and by
/// `Γ(j+1/2) Γ(m-j+1/2) / Γ(m+1)`.
pub fn beta_integral(j: usize, m: usize) -> Result<BetaCheck, GeometryError> {
    check_location(m, j)?;
    let (a, b) = ((2 * j) as i32, (2 * (m - j)) as i32);
    let quadrature = quadrature::integrate(
        |u: f64| {
            let (s, c) = u.sin_cos();
            2.0 * s.powi(a) * c.powi(b)
        },
        0.0,
        FRAC_PI_2,
        0.0,
        1e-14,
    );
    let factorial_m: f64 = (1..=m).map(|i| i as f64).product();
    let gamma = gamma_half_integer(j) * gamma_half_integer(m - j) / factorial_m;
    Ok(BetaCheck { quadrature, gamma })
}

/// Monte Carlo estimate of the expected number of location-`j` swaps in the
/// geometric network of `m` Archimedes points.
pub fn mc_geometric_swap_expectation(
    m: usize,
    j: usize,
    cfg: &McConfig,
) -> Result<Estimate, McError> {
    check_location(m, j).map_err(|e| McError::Precondition(e.to_string()))?;
    let acc = run_accumulate(cfg, |rng| {
        let (_, net) = sample_geometric_network(m, rng);
        net.count_at(j as u32) as f64
    })?;
    Ok(acc.estimate())
}
