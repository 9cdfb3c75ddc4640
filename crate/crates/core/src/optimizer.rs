//! Minimum-area polytopes circumscribed about the unit ball.
//!
//! A candidate is a set of `N` unit normals; the polytope is
//! `∩ {x : n_j·x ≤ 1}`, so every face plane touches the unit ball. Each
//! normal is parameterized by its polar and azimuthal angle and the area is
//! minimized with Nelder–Mead from several starts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::OptimizeError;
use crate::halfspace::Vec3;
use crate::metrics::surface_area;
use crate::nelder_mead::{minimize, NelderMeadOptions};
use crate::polyhedron::ConvexPolyhedron;
use crate::shapes::{symmetric_normal_sets, tangent_polytope};

/// Face normals of a tangent polytope (all offsets are 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentPolytopeParams {
    pub normals: Vec<[f64; 3]>,
}

impl TangentPolytopeParams {
    /// Requires at least four normals that positively span 3-space.
    pub fn new(normals: &[Vec3]) -> Result<Self, OptimizeError> {
        if normals.len() < 4 {
            return Err(OptimizeError::TooFewFaces(normals.len()));
        }
        let p = Self::unchecked(normals);
        if p.polytope().is_err() {
            return Err(OptimizeError::NotSpanning);
        }
        Ok(p)
    }

    fn unchecked(normals: &[Vec3]) -> Self {
        Self {
            normals: normals
                .iter()
                .map(|n| {
                    let n = n.normalize();
                    [n.x, n.y, n.z]
                })
                .collect(),
        }
    }

    pub fn from_angles(angles: &[f64]) -> Self {
        let normals: Vec<Vec3> = angles
            .chunks_exact(2)
            .map(|a| {
                let (theta, phi) = (a[0], a[1]);
                Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
            })
            .collect();
        Self::unchecked(&normals)
    }

    pub fn to_angles(&self) -> Vec<f64> {
        self.normals
            .iter()
            .flat_map(|n| [n[2].clamp(-1.0, 1.0).acos(), n[1].atan2(n[0])])
            .collect()
    }

    pub fn normal_vectors(&self) -> Vec<Vec3> {
        self.normals.iter().map(|n| Vec3::new(n[0], n[1], n[2])).collect()
    }

    pub fn polytope(&self) -> Result<ConvexPolyhedron, crate::error::GeometryError> {
        tangent_polytope(&self.normal_vectors())
    }
}

/// Surface area of the tangent polytope, or `+∞` when it is unbounded.
pub fn area_objective(params: &TangentPolytopeParams) -> f64 {
    match params.polytope() {
        Ok(p) => surface_area(&p),
        Err(_) => f64::INFINITY,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartKind {
    Symmetric,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub faces: usize,
    pub best_params: TangentPolytopeParams,
    pub best_area: f64,
    /// (iteration, area) improvements of the winning restart.
    pub history: Vec<(usize, f64)>,
    pub restarts_used: usize,
    pub best_restart: usize,
    pub best_start: StartKind,
    pub iterations: usize,
    pub converged: bool,
    /// Best area reached by each restart, in restart order.
    pub restart_areas: Vec<f64>,
}

struct RestartOutcome {
    params: TangentPolytopeParams,
    area: f64,
    history: Vec<(usize, f64)>,
    iterations: usize,
    converged: bool,
    kind: StartKind,
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (restart as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Uniform random unit vector.
pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

/// `n` random normals whose tangent polytope is bounded (up to `tries` draws).
pub fn random_bounded_normals<R: Rng>(rng: &mut R, n: usize, tries: usize) -> Option<Vec<Vec3>> {
    (0..tries).find_map(|_| {
        let normals: Vec<Vec3> = (0..n).map(|_| random_unit(rng)).collect();
        tangent_polytope(&normals).is_ok().then_some(normals)
    })
}

/// Searches for the minimum-area tangent polytope with `n` faces.
///
/// The first restarts start from the exact symmetric configurations with `n`
/// faces (if any); the rest start from random bounded configurations. The
/// result is deterministic for a fixed `seed`.
pub fn minimize_area(n: usize, restarts: usize, seed: u64) -> Result<OptimizationResult, OptimizeError> {
    minimize_area_with(n, restarts, seed, &NelderMeadOptions::default())
}

pub fn minimize_area_with(
    n: usize,
    restarts: usize,
    seed: u64,
    opts: &NelderMeadOptions,
) -> Result<OptimizationResult, OptimizeError> {
    if n < 4 {
        return Err(OptimizeError::TooFewFaces(n));
    }
    if restarts == 0 {
        return Err(OptimizeError::NoRestarts);
    }
    let symmetric = symmetric_normal_sets(n);
    let outcomes: Vec<Option<RestartOutcome>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let (start, kind) = match symmetric.get(r) {
                Some(s) => (s.clone(), StartKind::Symmetric),
                None => {
                    let mut rng = restart_rng(seed, r);
                    (random_bounded_normals(&mut rng, n, 1000)?, StartKind::Random)
                }
            };
            let x0 = TangentPolytopeParams::unchecked(&start).to_angles();
            let res = minimize(|x| area_objective(&TangentPolytopeParams::from_angles(x)), &x0, opts);
            res.value.is_finite().then(|| RestartOutcome {
                params: TangentPolytopeParams::from_angles(&res.x),
                area: res.value,
                history: res.history,
                iterations: res.iterations,
                converged: res.converged,
                kind,
            })
        })
        .collect();

    let restart_areas: Vec<f64> = outcomes
        .iter()
        .map(|o| o.as_ref().map_or(f64::INFINITY, |o| o.area))
        .collect();
    let (best_restart, best) = outcomes
        .into_iter()
        .enumerate()
        .filter_map(|(i, o)| o.map(|o| (i, o)))
        .min_by(|a, b| a.1.area.total_cmp(&b.1.area).then(a.0.cmp(&b.0)))
        .ok_or(OptimizeError::NoBoundedCandidate)?;

    Ok(OptimizationResult {
        faces: n,
        best_area: best.area,
        best_params: best.params,
        history: best.history,
        restarts_used: restarts,
        best_restart,
        best_start: best.kind,
        iterations: best.iterations,
        converged: best.converged,
        restart_areas,
    })
}
