//! Potential family `V(z) = P((z-xi)^2) + g i (z-xi) Q((z-xi)^2)`.
//!
//! `P` and `Q` are real polynomials of degree at most `n`. With `Q(s) = s^n`
//! up to sign and `P = 0` this is the canonical `-(iz)^{2n+1}` oscillator;
//! the sign of the top coefficient is chosen so that `g i z Q(z^2)` equals
//! `-g (iz)^{2n+1}` for the canonical spec.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Defining data of one oscillator: degree index, even part `P`, odd part
/// `Q`, real scaling `g` of the odd part, and a complex shift `xi`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    g: f64,
    xi: C64,
}

impl PotentialSpec {
    /// Build a spec, validating the shape of the coefficient lists and the
    /// nonzero top odd coefficient `g * b_n`.
    pub fn new(n: usize, a: Vec<f64>, b: Vec<f64>, g: f64, xi: C64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("degree index n must be >= 1"));
        }
        if a.len() != n + 1 || b.len() != n + 1 {
            return Err(Error::invalid(format!(
                "coefficient lists must have n+1 = {} entries (got {} and {})",
                n + 1,
                a.len(),
                b.len()
            )));
        }
        if !a.iter().chain(b.iter()).all(|c| c.is_finite()) || !g.is_finite() {
            return Err(Error::invalid("coefficients must be finite"));
        }
        if g == 0.0 {
            return Err(Error::invalid("scaling g must be nonzero"));
        }
        if b[n] == 0.0 {
            return Err(Error::invalid("top odd coefficient b_n must be nonzero"));
        }
        Ok(PotentialSpec { n, a, b, g, xi })
    }

    /// The canonical oscillator `-u'' + [P(z^2) - (iz)^{2n+1}] u = lambda u`
    /// with `P = 0`: only the top odd coefficient is set, to `(-1)^{n+1}`.
    pub fn canonical(n: usize) -> Result<Self> {
        let mut b = vec![0.0; n + 1];
        b[n] = if n % 2 == 1 { 1.0 } else { -1.0 };
        PotentialSpec::new(n, vec![0.0; n + 1], b, 1.0, C64::new(0.0, 0.0))
    }

    /// A purely even potential `V = P(z^2)`, outside the PT family proper.
    ///
    /// Only used to validate the shooting pipeline against closed-form
    /// spectra (e.g. the harmonic oscillator); bypasses the `b_n != 0`
    /// requirement of the main constructor.
    pub fn real_even(n: usize, a: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("degree index n must be >= 1"));
        }
        if a.len() != n + 1 {
            return Err(Error::invalid("coefficient list must have n+1 entries"));
        }
        if a[n] <= 0.0 {
            return Err(Error::invalid("top even coefficient must be positive"));
        }
        Ok(PotentialSpec {
            n,
            a,
            b: vec![0.0; n + 1],
            g: 1.0,
            xi: C64::new(0.0, 0.0),
        })
    }

    /// Spec of the vertically shifted cubic: if `u` solves
    /// `u'' - iz^3 u = -lambda u` then `v(z) = u(z + ai)` solves
    /// `v'' + [(3az^2 - a^3) - iz(z^2 - 3a^2)] v = -lambda v`, i.e. sees the
    /// potential `V(z) = (a^3 - 3az^2) + iz(z^2 - 3a^2)`. Eigenvalues are
    /// unchanged.
    pub fn shifted_cubic(a: f64) -> Result<Self> {
        PotentialSpec::new(
            1,
            vec![a * a * a, -3.0 * a],
            vec![-3.0 * a * a, 1.0],
            1.0,
            C64::new(0.0, 0.0),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn xi(&self) -> C64 {
        self.xi
    }

    /// Whether the odd part carries the full degree `2n+1`; this is what the
    /// Stokes geometry and the asymptotic initialization assume.
    pub fn has_odd_top(&self) -> bool {
        self.b[self.n] != 0.0 && self.g != 0.0
    }

    /// PT symmetry holds when the shift is purely imaginary (coefficients
    /// are real by construction).
    pub fn is_pt_symmetric(&self) -> bool {
        self.xi.re == 0.0
    }

    /// Evaluate `V(z) = P(w^2) + g i w Q(w^2)` with `w = z - xi`.
    pub fn eval(&self, z: C64) -> C64 {
        let w = z - self.xi;
        let s = w * w;
        let mut p = C64::new(0.0, 0.0);
        let mut q = C64::new(0.0, 0.0);
        for k in (0..=self.n).rev() {
            p = p * s + self.a[k];
            q = q * s + self.b[k];
        }
        p + C64::i() * w * q * self.g
    }

    /// `V'(z) = 2w P'(w^2) + g i [Q(w^2) + 2 w^2 Q'(w^2)]`.
    pub fn eval_deriv(&self, z: C64) -> C64 {
        let w = z - self.xi;
        let s = w * w;
        let mut p1 = C64::new(0.0, 0.0);
        let mut q = C64::new(0.0, 0.0);
        let mut q1 = C64::new(0.0, 0.0);
        for k in (1..=self.n).rev() {
            p1 = p1 * s + self.a[k] * k as f64;
            q1 = q1 * s + self.b[k] * k as f64;
        }
        for k in (0..=self.n).rev() {
            q = q * s + self.b[k];
        }
        2.0 * w * p1 + C64::i() * self.g * (q + 2.0 * s * q1)
    }

    /// Magnitude of the top-degree coefficient (odd part when present,
    /// otherwise the even part).
    pub(crate) fn top_coeff(&self) -> f64 {
        if self.has_odd_top() {
            (self.g * self.b[self.n]).abs()
        } else {
            self.a[self.n].abs()
        }
    }

    /// Degree of the dominant term at infinity.
    pub(crate) fn top_degree(&self) -> usize {
        if self.has_odd_top() {
            2 * self.n + 1
        } else {
            2 * self.n
        }
    }

    pub fn params(&self) -> PotentialParams {
        PotentialParams {
            n: self.n,
            a: self.a.clone(),
            b: self.b.clone(),
            g: self.g,
            xi_re: self.xi.re,
            xi_im: self.xi.im,
        }
    }
}

/// Plain serializable mirror of [`PotentialSpec`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PotentialParams {
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub g: f64,
    pub xi_re: f64,
    pub xi_im: f64,
}

impl TryFrom<PotentialParams> for PotentialSpec {
    type Error = Error;

    fn try_from(p: PotentialParams) -> Result<Self> {
        let xi = Complex64::new(p.xi_re, p.xi_im);
        if p.b.last().copied().unwrap_or(0.0) == 0.0 {
            // Round-trip of a real_even test spec.
            if p.b.iter().all(|&c| c == 0.0) {
                return PotentialSpec::real_even(p.n, p.a);
            }
        }
        PotentialSpec::new(p.n, p.a, p.b, p.g, xi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn canonical_cubic_on_real_axis_is_i_x_cubed() {
        // -(ix)^3 = i x^3
        let spec = PotentialSpec::canonical(1).unwrap();
        for &x in &[-2.5, -1.0, 0.3, 1.7, 4.0] {
            let v = spec.eval(C64::new(x, 0.0));
            assert_relative_eq!(v.re, 0.0, epsilon = 1e-15);
            assert_relative_eq!(v.im, x * x * x, max_relative = 1e-15);
        }
    }

    #[test]
    fn canonical_matches_minus_iz_pow() {
        for n in 1..=4 {
            let spec = PotentialSpec::canonical(n).unwrap();
            for &z in &[C64::new(0.7, -0.3), C64::new(-1.2, 2.0), C64::new(3.0, 0.1)] {
                let direct = -(C64::i() * z).powu(2 * n as u32 + 1);
                let v = spec.eval(z);
                assert_relative_eq!(v.re, direct.re, max_relative = 1e-12, epsilon = 1e-12);
                assert_relative_eq!(v.im, direct.im, max_relative = 1e-12, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn shifted_cubic_satisfies_translation_identity() {
        // V_shift(z) = V(z + ai) exactly, and the bracket printed in the
        // shifted ODE is -V_shift.
        let a = 0.8;
        let canon = PotentialSpec::canonical(1).unwrap();
        let shifted = PotentialSpec::shifted_cubic(a).unwrap();
        for &z in &[C64::new(0.4, 0.2), C64::new(-1.3, 1.0), C64::new(2.2, -0.7)] {
            let lhs = shifted.eval(z);
            let rhs = canon.eval(z + C64::new(0.0, a));
            assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(lhs.im, rhs.im, max_relative = 1e-12, epsilon = 1e-12);

            // (3az^2 - a^3) - iz(z^2 - 3a^2) == -V_shift(z)
            let bracket = (3.0 * a * z * z - a * a * a)
                - C64::i() * z * (z * z - 3.0 * a * a);
            assert_relative_eq!(bracket.re, -lhs.re, max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(bracket.im, -lhs.im, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn shifted_cubic_at_zero_is_identity() {
        let shifted = PotentialSpec::shifted_cubic(0.0).unwrap();
        let canon = PotentialSpec::canonical(1).unwrap();
        assert_eq!(shifted, canon);
    }

    #[test]
    fn harmonic_plus_cubic_family() {
        // n = 1, P(s) = s gives V = x^2 + i g x^3 on the real axis.
        let g = 1.0;
        let spec = PotentialSpec::new(1, vec![0.0, 1.0], vec![0.0, 1.0], g, C64::new(0.0, 0.0))
            .unwrap();
        for &x in &[0.5, -1.5, 2.0] {
            let v = spec.eval(C64::new(x, 0.0));
            assert_relative_eq!(v.re, x * x, max_relative = 1e-15);
            assert_relative_eq!(v.im, g * x * x * x, max_relative = 1e-15);
        }
    }

    #[test]
    fn constructor_rejections() {
        assert!(PotentialSpec::new(0, vec![0.0], vec![1.0], 1.0, C64::new(0.0, 0.0)).is_err());
        assert!(
            PotentialSpec::new(1, vec![0.0, 0.0], vec![0.0, 0.0], 1.0, C64::new(0.0, 0.0))
                .is_err()
        );
        assert!(
            PotentialSpec::new(1, vec![0.0, 0.0], vec![0.0, 1.0], 0.0, C64::new(0.0, 0.0))
                .is_err()
        );
        assert!(PotentialSpec::new(1, vec![0.0], vec![0.0, 1.0], 1.0, C64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn params_round_trip() {
        let spec = PotentialSpec::shifted_cubic(0.5).unwrap();
        let back = PotentialSpec::try_from(spec.params()).unwrap();
        assert_eq!(spec, back);
        let even = PotentialSpec::real_even(1, vec![0.0, 1.0]).unwrap();
        let back = PotentialSpec::try_from(even.params()).unwrap();
        assert_eq!(even, back);
    }
}
