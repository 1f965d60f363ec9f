//! Piecewise-linear integration paths in the complex plane.

use crate::error::{Error, Result};
use crate::C64;

/// An ordered polyline; the integration parameter increases from the first
/// waypoint to the last. Consecutive waypoints must be distinct so the curve
/// has `z'(t) != 0` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPath {
    waypoints: Vec<C64>,
}

impl ComplexPath {
    pub fn new(waypoints: Vec<C64>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::invalid("a path needs at least two waypoints"));
        }
        if !waypoints.iter().all(|w| w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::invalid("path waypoints must be finite"));
        }
        for pair in waypoints.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::invalid("consecutive waypoints must be distinct"));
            }
        }
        Ok(ComplexPath { waypoints })
    }

    pub fn line(from: C64, to: C64) -> Result<Self> {
        ComplexPath::new(vec![from, to])
    }

    pub fn waypoints(&self) -> &[C64] {
        &self.waypoints
    }

    pub fn start(&self) -> C64 {
        self.waypoints[0]
    }

    pub fn end(&self) -> C64 {
        *self.waypoints.last().unwrap()
    }

    pub fn total_length(&self) -> f64 {
        self.waypoints
            .windows(2)
            .map(|p| (p[1] - p[0]).norm())
            .sum()
    }

    pub fn reversed(&self) -> Self {
        let mut w = self.waypoints.clone();
        w.reverse();
        ComplexPath { waypoints: w }
    }

    pub fn segments(&self) -> impl Iterator<Item = (C64, C64)> + '_ {
        self.waypoints.windows(2).map(|p| (p[0], p[1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_paths() {
        assert!(ComplexPath::new(vec![C64::new(0.0, 0.0)]).is_err());
        assert!(ComplexPath::new(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn length_and_reversal() {
        let p = ComplexPath::new(vec![
            C64::new(0.0, 0.0),
            C64::new(3.0, 0.0),
            C64::new(3.0, 4.0),
        ])
        .unwrap();
        assert!((p.total_length() - 7.0).abs() < 1e-15);
        assert_eq!(p.reversed().start(), p.end());
    }
}
