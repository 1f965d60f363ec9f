//! Eigenfunction fields on complex-plane rectangles.
//!
//! The real axis is the best-conditioned anchor: both shooting solutions
//! grow while marching inward, so their matched combination gives `u` on
//! the axis to full tolerance. Every vertical grid line is then filled by
//! integrating the ODE from its axis point upward and downward - one solve
//! per column, with the log scale tracked per sample.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ode::{self, boundary_init, InitMode, IntegratorOptions, SolutionState};
use crate::path::ComplexPath;
use crate::potential::PotentialSpec;
use crate::spectrum::EigenvalueRecord;
use crate::C64;

/// Rectangle in the `z` plane.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GridRect {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl GridRect {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        if !(x_lo < x_hi && y_lo < y_hi)
            || ![x_lo, x_hi, y_lo, y_hi].iter().all(|v| v.is_finite())
        {
            return Err(Error::invalid(
                "grid rectangle corners must be ordered and finite",
            ));
        }
        Ok(GridRect { x_lo, x_hi, y_lo, y_hi })
    }
}

/// One stored sample; `u e^{log_scale}` and `du e^{log_scale}` are the true
/// values.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub z: C64,
    pub u: C64,
    pub du: C64,
    pub log_scale: f64,
}

impl Sample {
    /// `q = u' conj(u)` in working scale; the true value is `q e^{2 log_scale}`.
    pub fn q(&self) -> C64 {
        self.du * self.u.conj()
    }

    pub fn re_q(&self) -> f64 {
        self.q().re
    }

    pub fn im_q(&self) -> f64 {
        self.q().im
    }

    /// Scale `|u| (|u| + |u'|)` of `q` in working units, for sign tolerances.
    pub fn q_scale(&self) -> f64 {
        self.u.norm() * (self.u.norm() + self.du.norm())
    }

    pub fn abs_u_ln(&self) -> f64 {
        self.u.norm().max(f64::MIN_POSITIVE).ln() + self.log_scale
    }
}

/// Samples of one eigenfunction on a rectangular grid, column-major.
#[derive(Debug, Clone)]
pub struct FieldGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    lambda: C64,
    u: Vec<C64>,
    du: Vec<C64>,
    ls: Vec<f64>,
}

impl FieldGrid {
    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn ny(&self) -> usize {
        self.ys.len()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    pub fn dx(&self) -> f64 {
        (self.xs[self.nx() - 1] - self.xs[0]) / (self.nx() - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.ys[self.ny() - 1] - self.ys[0]) / (self.ny() - 1) as f64
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.ny() + j
    }

    pub fn at(&self, i: usize, j: usize) -> Sample {
        let k = self.idx(i, j);
        Sample {
            z: C64::new(self.xs[i], self.ys[j]),
            u: self.u[k],
            du: self.du[k],
            log_scale: self.ls[k],
        }
    }

    /// Row index whose `y` matches the requested value to 1e-9.
    pub fn find_row(&self, y: f64) -> Result<usize> {
        self.ys
            .iter()
            .position(|&v| (v - y).abs() <= 1e-9)
            .ok_or(Error::OutsideGrid(y))
    }

    /// Largest `log_scale` in a row.
    pub fn row_max_ls(&self, j: usize) -> f64 {
        (0..self.nx())
            .map(|i| self.ls[self.idx(i, j)])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `|u|^2 e^{2(ls - ls_ref)}` along a row.
    pub fn row_abs2(&self, j: usize, ls_ref: f64) -> Vec<f64> {
        (0..self.nx())
            .map(|i| {
                let s = self.at(i, j);
                s.u.norm_sqr() * (2.0 * (s.log_scale - ls_ref)).exp()
            })
            .collect()
    }

    /// `|u'|^2 e^{2(ls - ls_ref)}` along a row.
    pub fn row_dabs2(&self, j: usize, ls_ref: f64) -> Vec<f64> {
        (0..self.nx())
            .map(|i| {
                let s = self.at(i, j);
                s.du.norm_sqr() * (2.0 * (s.log_scale - ls_ref)).exp()
            })
            .collect()
    }
}

const MATCH_TOL: f64 = 1e-6;

/// Evaluates one eigenfunction anywhere in the strip covered by the shooting
/// radius, normalized so that `u(0) = 1` (or `u'(0) = 1` when `u(0)`
/// vanishes). Values left of the matching point come from the left-decaying
/// shot, values right of it from the right-decaying shot, glued at 0.
#[derive(Debug, Clone)]
pub struct FieldEvaluator {
    spec: PotentialSpec,
    lambda: C64,
    tol: f64,
    radius: f64,
    /// (complex factor, log-scale shift) applied to left-shot states.
    f_left: (C64, f64),
    /// Same for right-shot states.
    f_right: (C64, f64),
}

impl FieldEvaluator {
    pub fn new(spec: &PotentialSpec, record: &EigenvalueRecord, tol: f64) -> Result<Self> {
        Self::with_radius_floor(spec, record, tol, 0.0)
    }

    /// Construct with a minimum shooting radius (the grid half-width plus
    /// margin when building wide grids).
    pub fn with_radius_floor(
        spec: &PotentialSpec,
        record: &EigenvalueRecord,
        tol: f64,
        radius_floor: f64,
    ) -> Result<Self> {
        let lambda = record.lambda();
        let radius = ode::default_radius(spec, lambda).max(radius_floor);
        let opts = IntegratorOptions::with_tol(tol);
        let za = C64::new(-radius, 0.0);
        let zb = C64::new(radius, 0.0);
        let origin = C64::new(0.0, 0.0);
        let init_l = boundary_init(spec, lambda, za, InitMode::Decaying)?;
        let init_r = boundary_init(spec, lambda, zb, InitMode::Decaying)?;
        let left = ode::integrate(spec, lambda, &ComplexPath::line(za, origin)?, &init_l, opts)?;
        let right = ode::integrate(spec, lambda, &ComplexPath::line(zb, origin)?, &init_r, opts)?;

        // the two shots must be dependent here, or lambda is not an eigenvalue
        let w = left.u * right.du - left.du * right.u;
        let mismatch =
            w.norm() / ((left.u.norm() + left.du.norm()) * (right.u.norm() + right.du.norm()));
        if mismatch > MATCH_TOL || record.wronskian_residual > MATCH_TOL {
            return Err(Error::NotAnEigenvalue { lambda, mismatch });
        }

        // normalize u(0) = 1, falling back to u'(0) = 1 at an axis zero
        let by_value = left.u.norm() > 1e-8 * (left.u.norm() + left.du.norm());
        let f_left = if by_value {
            (1.0 / left.u, -left.log_scale)
        } else {
            (1.0 / left.du, -left.log_scale)
        };
        let f_right = if by_value {
            (left.u / right.u * f_left.0, -right.log_scale)
        } else {
            (left.du / right.du * f_left.0, -right.log_scale)
        };
        Ok(FieldEvaluator {
            spec: spec.clone(),
            lambda,
            tol,
            radius,
            f_left,
            f_right,
        })
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn apply(&self, st: &SolutionState, left: bool) -> SolutionState {
        let (f, dls) = if left { self.f_left } else { self.f_right };
        SolutionState {
            z: st.z,
            u: st.u * f,
            du: st.du * f,
            log_scale: st.log_scale + dls,
        }
    }

    /// Normalized eigenfunction states on the real axis at the given
    /// abscissas (any order). `|x|` must stay below the shooting radius.
    pub fn axis_states(&self, xs: &[f64]) -> Result<Vec<SolutionState>> {
        if let Some(&bad) = xs.iter().find(|&&x| x.abs() >= self.radius - 1e-9) {
            return Err(Error::OutsideGrid(bad));
        }
        let opts = IntegratorOptions::with_tol(self.tol);
        let lambda = self.lambda;
        let mut order: Vec<usize> = (0..xs.len()).collect();
        order.sort_by(|&i, &j| xs[i].partial_cmp(&xs[j]).unwrap());
        let placeholder = SolutionState {
            z: C64::new(0.0, 0.0),
            u: C64::new(1.0, 0.0),
            du: C64::new(0.0, 0.0),
            log_scale: 0.0,
        };
        let mut out = vec![placeholder; xs.len()];

        // left sweep covers xs <= 0 in ascending order
        let left_targets: Vec<usize> = order.iter().copied().filter(|&i| xs[i] <= 0.0).collect();
        if !left_targets.is_empty() {
            let za = C64::new(-self.radius, 0.0);
            let mut wps = vec![za];
            for &i in &left_targets {
                let z = C64::new(xs[i], 0.0);
                let prev = *wps.last().unwrap();
                wps.push(if (z - prev).norm() > 1e-14 {
                    z
                } else {
                    prev + C64::new(5e-14, 0.0)
                });
            }
            let init = boundary_init(&self.spec, lambda, za, InitMode::Decaying)?;
            let path = ComplexPath::new(wps)?;
            let states = ode::integrate_through(&self.spec, lambda, &path, &init, opts)?;
            for (k, &i) in left_targets.iter().enumerate() {
                out[i] = self.apply(&states[k + 1], true);
            }
        }

        // right sweep covers xs > 0 in descending order
        let right_targets: Vec<usize> =
            order.iter().rev().copied().filter(|&i| xs[i] > 0.0).collect();
        if !right_targets.is_empty() {
            let zb = C64::new(self.radius, 0.0);
            let mut wps = vec![zb];
            for &i in &right_targets {
                let z = C64::new(xs[i], 0.0);
                let prev = *wps.last().unwrap();
                wps.push(if (z - prev).norm() > 1e-14 {
                    z
                } else {
                    prev - C64::new(5e-14, 0.0)
                });
            }
            let init = boundary_init(&self.spec, lambda, zb, InitMode::Decaying)?;
            let path = ComplexPath::new(wps)?;
            let states = ode::integrate_through(&self.spec, lambda, &path, &init, opts)?;
            for (k, &i) in right_targets.iter().enumerate() {
                out[i] = self.apply(&states[k + 1], false);
            }
        }
        Ok(out)
    }

    /// States along one vertical line through an axis anchor, at the given
    /// ordinates (any order).
    pub fn column_states(
        &self,
        anchor: &SolutionState,
        ys: &[f64],
    ) -> Result<Vec<SolutionState>> {
        let opts = IntegratorOptions::with_tol(self.tol);
        let x = anchor.z.re;
        let mut out = vec![*anchor; ys.len()];
        let mut up: Vec<usize> = (0..ys.len()).filter(|&j| ys[j] > 0.0).collect();
        up.sort_by(|&a, &b| ys[a].partial_cmp(&ys[b]).unwrap());
        let mut down: Vec<usize> = (0..ys.len()).filter(|&j| ys[j] < 0.0).collect();
        down.sort_by(|&a, &b| ys[b].partial_cmp(&ys[a]).unwrap());

        for targets in [up, down] {
            if targets.is_empty() {
                continue;
            }
            let mut wps = vec![anchor.z];
            for &j in &targets {
                let z = C64::new(x, ys[j]);
                let prev = *wps.last().unwrap();
                wps.push(if (z - prev).norm() > 1e-14 {
                    z
                } else {
                    prev + C64::new(0.0, 5e-14 * ys[j].signum())
                });
            }
            let path = ComplexPath::new(wps)?;
            let states = ode::integrate_through(&self.spec, self.lambda, &path, anchor, opts)?;
            for (k, &j) in targets.iter().enumerate() {
                out[j] = states[k + 1];
            }
        }
        Ok(out)
    }

    /// Evaluate at arbitrary points: one axis sweep for the distinct
    /// abscissas, one vertical solve per distinct abscissa.
    pub fn eval_many(&self, pts: &[C64]) -> Result<Vec<SolutionState>> {
        let mut xs: Vec<f64> = pts.iter().map(|p| p.re).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        let anchors = self.axis_states(&xs)?;
        let placeholder = SolutionState {
            z: C64::new(0.0, 0.0),
            u: C64::new(1.0, 0.0),
            du: C64::new(0.0, 0.0),
            log_scale: 0.0,
        };
        let mut out = vec![placeholder; pts.len()];
        let groups: Vec<(usize, Vec<usize>)> = xs
            .iter()
            .enumerate()
            .map(|(gi, &x)| {
                (
                    gi,
                    (0..pts.len()).filter(|&k| pts[k].re == x).collect::<Vec<_>>(),
                )
            })
            .collect();
        let results: Vec<Result<Vec<(usize, SolutionState)>>> = groups
            .par_iter()
            .map(|(gi, members)| {
                let ys: Vec<f64> = members.iter().map(|&k| pts[k].im).collect();
                let states = self.column_states(&anchors[*gi], &ys)?;
                Ok(members.iter().copied().zip(states).collect())
            })
            .collect();
        for r in results {
            for (k, st) in r? {
                out[k] = st;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, z: C64) -> Result<SolutionState> {
        Ok(self.eval_many(&[z])?[0])
    }
}

/// Build the full rectangular field of one eigenfunction.
pub fn build_grid(
    spec: &PotentialSpec,
    record: &EigenvalueRecord,
    rect: GridRect,
    nx: usize,
    ny: usize,
    tol: f64,
) -> Result<FieldGrid> {
    if nx < 2 || ny < 2 {
        return Err(Error::invalid("grid needs at least 2x2 samples"));
    }
    let ev = FieldEvaluator::with_radius_floor(
        spec,
        record,
        tol,
        rect.x_lo.abs().max(rect.x_hi.abs()) + 1.0,
    )?;
    let xs: Vec<f64> = (0..nx)
        .map(|i| rect.x_lo + (rect.x_hi - rect.x_lo) * i as f64 / (nx - 1) as f64)
        .collect();
    let ys: Vec<f64> = (0..ny)
        .map(|j| rect.y_lo + (rect.y_hi - rect.y_lo) * j as f64 / (ny - 1) as f64)
        .collect();
    let anchors = ev.axis_states(&xs)?;

    let columns: Vec<Result<Vec<SolutionState>>> = anchors
        .par_iter()
        .map(|anchor| ev.column_states(anchor, &ys))
        .collect();

    let mut u = Vec::with_capacity(nx * ny);
    let mut du = Vec::with_capacity(nx * ny);
    let mut ls = Vec::with_capacity(nx * ny);
    for col in columns {
        for st in col? {
            u.push(st.u);
            du.push(st.du);
            ls.push(st.log_scale);
        }
    }
    Ok(FieldGrid {
        xs,
        ys,
        lambda: record.lambda(),
        u,
        du,
        ls,
    })
}

/// Residual of the PT symmetry `u(z) = e^{i phi} conj(u(-conj z))` over a
/// grid with mirror-symmetric abscissas; returns `(max relative deviation,
/// fitted phi)`.
pub fn pt_symmetry_residual(grid: &FieldGrid) -> Result<(f64, f64)> {
    let nx = grid.nx();
    for i in 0..nx {
        if (grid.xs()[i] + grid.xs()[nx - 1 - i]).abs() > 1e-9 {
            return Err(Error::invalid(
                "PT symmetry check needs mirror-symmetric grid abscissas",
            ));
        }
    }
    // fit the global phase from scale-weighted samples
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..grid.ny() {
        let ls_ref = grid.row_max_ls(j);
        for i in 0..nx {
            let a = grid.at(i, j);
            let b = grid.at(nx - 1 - i, j);
            let w = ((a.log_scale - ls_ref) + (b.log_scale - ls_ref)).exp();
            acc += a.u * b.u * w;
        }
    }
    let phi = acc.arg();
    let rot = C64::from_polar(1.0, phi);

    let mut worst = 0.0_f64;
    for j in 0..grid.ny() {
        let ls_ref = grid.row_max_ls(j);
        let mut row_mag = 0.0_f64;
        for i in 0..nx {
            let s = grid.at(i, j);
            row_mag = row_mag.max(s.u.norm() * (s.log_scale - ls_ref).exp());
        }
        for i in 0..nx {
            let a = grid.at(i, j);
            let b = grid.at(nx - 1 - i, j);
            let va = a.u * (a.log_scale - ls_ref).exp();
            let vb = rot * b.u.conj() * (b.log_scale - ls_ref).exp();
            let d = (va - vb).norm();
            let denom = va.norm().max(vb.norm()).max(1e-9 * row_mag);
            worst = worst.max(d / denom);
        }
    }
    Ok((worst, phi))
}
