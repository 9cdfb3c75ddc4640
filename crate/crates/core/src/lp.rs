//! Largest inscribed ball of a polyhedron given by half-spaces.
//!
//! Solves `max r  s.t.  n_i·x + r ≤ b_i` with a dense tableau simplex and
//! Bland's rule. The origin is first moved to a strictly interior point so
//! the all-slack basis is feasible and no phase one is needed.

use crate::error::GeometryError;
use crate::halfspace::{HalfSpace, Vec3};

const PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InscribedBall {
    pub center: Vec3,
    pub radius: f64,
}

/// Chebyshev center of `{x : h.normal·x ≤ h.offset}` for unit normals.
/// `interior` must satisfy every constraint strictly.
pub fn chebyshev_center(hs: &[HalfSpace], interior: &Vec3) -> Result<InscribedBall, GeometryError> {
    let m = hs.len();
    // columns: x+ (0..3), x- (3..6), r (6), slacks (7..7+m), rhs (last)
    let cols = 7 + m + 1;
    let rhs = cols - 1;
    let mut t = vec![0.0; (m + 1) * cols];
    let mut basis: Vec<usize> = (0..m).map(|i| 7 + i).collect();
    for (i, h) in hs.iter().enumerate() {
        let row = &mut t[i * cols..(i + 1) * cols];
        for k in 0..3 {
            row[k] = h.normal[k];
            row[3 + k] = -h.normal[k];
        }
        row[6] = 1.0;
        row[7 + i] = 1.0;
        row[rhs] = h.offset - h.normal.dot(interior);
        if row[rhs] <= 0.0 {
            return Err(GeometryError::LinearProgram("start point is not strictly interior".into()));
        }
    }
    // objective row holds reduced costs of "maximize r"
    t[m * cols + 6] = -1.0;

    let max_iter = 50 * (m + 8);
    for _ in 0..max_iter {
        let obj = &t[m * cols..];
        let Some(enter) = (0..rhs).find(|&j| obj[j] < -PIVOT_TOL) else {
            let mut y = [0.0; 7];
            for (i, &b) in basis.iter().enumerate() {
                if b < 7 {
                    y[b] = t[i * cols + rhs];
                }
            }
            let center = Vec3::new(y[0] - y[3], y[1] - y[4], y[2] - y[5]) + interior;
            return Ok(InscribedBall { center, radius: y[6] });
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i * cols + enter];
            if a > PIVOT_TOL {
                let ratio = t[i * cols + rhs] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - PIVOT_TOL || (ratio <= lr + PIVOT_TOL && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        let Some((pr, _)) = leave else {
            return Err(GeometryError::LinearProgram("unbounded: region is not bounded".into()));
        };
        pivot(&mut t, cols, m + 1, pr, enter);
        basis[pr] = enter;
    }
    Err(GeometryError::LinearProgram("iteration limit reached".into()))
}

fn pivot(t: &mut [f64], cols: usize, rows: usize, pr: usize, pc: usize) {
    let p = t[pr * cols + pc];
    for j in 0..cols {
        t[pr * cols + j] /= p;
    }
    let prow: Vec<f64> = t[pr * cols..(pr + 1) * cols].to_vec();
    for i in 0..rows {
        if i == pr {
            continue;
        }
        let f = t[i * cols + pc];
        if f != 0.0 {
            for j in 0..cols {
                t[i * cols + j] -= f * prow[j];
            }
        }
    }
}
