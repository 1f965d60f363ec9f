//! Stokes sector geometry and the cubic level-curve regions.
//!
//! The critical rays `arg z = theta_j` split the plane into `2n+3` sectors;
//! every solution of the ODE either decays or blows up uniformly in each
//! shrunk sector. For the cubic case the level curves `Re(iz^3 - lambda) = 0`
//! and `Im(iz^3 - lambda) = 0` decompose the plane into the regions
//! `A1..A4` and `B1..B4` used by the zero-free-region theorems:
//!
//! * `Re(iz^3 - lambda) = y^3 - 3x^2 y - alpha`, positive in `A1` (up),
//!   `A2` (lower left), `A3` (lower right), negative in the connected
//!   component `A4` containing the origin;
//! * `Im(iz^3 - lambda) = x^3 - 3x y^2 - beta`, positive in `B1` (right),
//!   `B2` (upper left), `B3` (lower left), negative in `B4`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::C64;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Critical angles `theta_j = (2 pi j -+ pi/2) / (2n+3)` (sign by parity of
/// `n`), normalized to `[0, 2pi)` and sorted ascending.
pub fn critical_angles(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("Stokes geometry requires n >= 1"));
    }
    let m = 2 * n + 3;
    let offset = if n % 2 == 0 { -0.5 } else { 0.5 } * std::f64::consts::PI;
    let mut thetas: Vec<f64> = (0..m)
        .map(|j| {
            let mut t = (TAU * j as f64 + offset) / m as f64;
            if t < 0.0 {
                t += TAU;
            }
            t
        })
        .collect();
    thetas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(thetas)
}

/// Sector classification of one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionIndex {
    /// `j` such that `theta_j <= arg z < theta_{j+1}` (indices into the
    /// sorted angle list, wrapping at the end).
    pub index: usize,
    /// Whether the point lies in the shrunk sector `S_{j,eps}`.
    pub in_shrunk: bool,
    /// Set when `arg z` coincides with a critical ray to within 1e-12.
    pub on_critical_ray: bool,
}

/// The `2n+3` critical rays together with the shrink margin `eps` used for
/// the `S_{j,eps}` membership test.
#[derive(Debug, Clone)]
pub struct StokesChart {
    n: usize,
    thetas: Vec<f64>,
    epsilon: f64,
}

impl StokesChart {
    pub fn new(n: usize, epsilon: f64) -> Result<Self> {
        let thetas = critical_angles(n)?;
        let gap = TAU / (2 * n + 3) as f64;
        if !(epsilon > 0.0 && epsilon < gap / 2.0) {
            return Err(Error::invalid(format!(
                "epsilon must be in (0, {:.6}) for n = {}",
                gap / 2.0,
                n
            )));
        }
        Ok(StokesChart { n, thetas, epsilon })
    }

    /// Chart with margin `pi / (6(2n+3))`, a quarter of the half-sector.
    pub fn with_default_margin(n: usize) -> Result<Self> {
        let eps = std::f64::consts::PI / (6.0 * (2 * n + 3) as f64);
        StokesChart::new(n, eps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn sector_count(&self) -> usize {
        self.thetas.len()
    }

    pub fn sector_width(&self) -> f64 {
        TAU / self.sector_count() as f64
    }

    /// Sector index of `z`, with the shrunk-sector and critical-ray flags.
    /// Sectors use the half-open convention `[theta_j, theta_{j+1})`.
    pub fn region_index(&self, z: C64) -> Result<RegionIndex> {
        if z == C64::new(0.0, 0.0) {
            return Err(Error::invalid("sector membership is undefined at z = 0"));
        }
        let mut t = z.arg();
        if t < 0.0 {
            t += TAU;
        }
        let pos = self.thetas.partition_point(|&th| th <= t);
        let index = if pos == 0 {
            self.thetas.len() - 1
        } else {
            pos - 1
        };
        let gap = self.sector_width();
        let mut offset = t - self.thetas[index];
        if offset < 0.0 {
            offset += TAU;
        }
        let ray_dist = offset.min(gap - offset);
        Ok(RegionIndex {
            index,
            in_shrunk: offset > self.epsilon && gap - offset > self.epsilon,
            on_critical_ray: ray_dist <= 1e-12,
        })
    }

    /// Index of the sector containing the positive real axis.
    pub fn right_region(&self) -> usize {
        self.region_index(C64::new(1.0, 0.0)).expect("nonzero").index
    }

    /// Index of the sector containing the negative real axis.
    pub fn left_region(&self) -> usize {
        self.region_index(C64::new(-1.0, 0.0)).expect("nonzero").index
    }
}

/// Connected component of `{Re(iz^3 - lambda) != 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ARegion {
    A1,
    A2,
    A3,
    A4,
    Boundary,
}

/// Connected component of `{Im(iz^3 - lambda) != 0}` (for `beta >= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BRegion {
    B1,
    B2,
    B3,
    B4,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CubicRegionLabel {
    pub a_region: ARegion,
    pub b_region: BRegion,
}

fn in_open_sector(theta: f64, lo: f64, hi: f64) -> bool {
    // lo < theta < hi modulo 2 pi
    let mut t = theta - lo;
    while t < 0.0 {
        t += TAU;
    }
    while t >= TAU {
        t -= TAU;
    }
    let mut span = hi - lo;
    while span < 0.0 {
        span += TAU;
    }
    t > 0.0 && t < span
}

/// Classify `z` into the cubic regions for eigenvalue `lambda = alpha + i beta`
/// with `alpha > 0`. Points with `|Re w|` or `|Im w|` below
/// `1e-9 (1 + |z|^3 + |lambda|)` are reported as boundary.
pub fn classify_cubic_regions(z: C64, lambda: C64) -> Result<CubicRegionLabel> {
    if !(lambda.re > 0.0) {
        return Err(Error::invalid(
            "cubic region classification requires Re lambda > 0",
        ));
    }
    let w = C64::i() * z * z * z - lambda;
    let tol = 1e-9 * (1.0 + z.norm().powi(3) + lambda.norm());
    let theta = z.arg(); // (-pi, pi]
    use std::f64::consts::PI;

    let a_region = if w.re.abs() < tol {
        ARegion::Boundary
    } else if w.re < 0.0 {
        ARegion::A4
    } else if in_open_sector(theta, PI / 3.0, 2.0 * PI / 3.0) {
        ARegion::A1
    } else if in_open_sector(theta, PI, 4.0 * PI / 3.0) {
        ARegion::A2
    } else if in_open_sector(theta, 5.0 * PI / 3.0, TAU) {
        ARegion::A3
    } else {
        // Re w > 0 with alpha > 0 forces sin(3 arg z) < 0, i.e. one of the
        // three sectors above; reaching here means theta sits on a sector
        // edge to rounding error.
        ARegion::Boundary
    };

    let b_region = if w.im.abs() < tol {
        BRegion::Boundary
    } else if w.im < 0.0 {
        BRegion::B4
    } else if in_open_sector(theta, -PI / 6.0, PI / 6.0) {
        BRegion::B1
    } else if in_open_sector(theta, PI / 2.0, 5.0 * PI / 6.0) {
        BRegion::B2
    } else if in_open_sector(theta, 7.0 * PI / 6.0, 3.0 * PI / 2.0) {
        BRegion::B3
    } else {
        // Only reachable when beta < 0, where the positive set is connected
        // through the origin; label by the nearest positive sector.
        let centers = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];
        let labels = [BRegion::B1, BRegion::B2, BRegion::B3];
        let mut best = 0;
        let mut best_d = f64::MAX;
        for (i, &c) in centers.iter().enumerate() {
            let mut d = (theta - c).rem_euclid(TAU);
            if d > PI {
                d = TAU - d;
            }
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        labels[best]
    };

    Ok(CubicRegionLabel { a_region, b_region })
}

/// The three roots of `iz^3 = lambda`, i.e. the cube roots of `-i lambda`,
/// sorted by principal argument. These are the points where the `A` and `B`
/// region boundaries intersect.
pub fn cubic_turning_points(lambda: C64) -> Result<[C64; 3]> {
    if lambda == C64::new(0.0, 0.0) {
        return Err(Error::invalid("turning points require lambda != 0"));
    }
    let w = -C64::i() * lambda;
    let r = w.norm().cbrt();
    let base = w.arg() / 3.0;
    let mut roots = [C64::new(0.0, 0.0); 3];
    for (k, root) in roots.iter_mut().enumerate() {
        let phi = base + TAU * k as f64 / 3.0;
        *root = Complex64::from_polar(r, phi);
    }
    roots.sort_by(|p, q| p.arg().partial_cmp(&q.arg()).unwrap());
    Ok(roots)
}
