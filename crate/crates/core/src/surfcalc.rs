//! Numerical check of the commutator pairing by integrating the cocycle
//! 2-form over the closed torus.
//!
//! Gauge maps into the maximal torus are represented by their logarithm
//!
//! ```text
//! (u₁, u₂) ↦ u₁·a + u₂·b + p(u₁, u₂)
//! ```
//!
//! where `a, b ∈ Λ′` are the windings and `p` is a finite Fourier series
//! with values in the Cartan subalgebra. The Maurer–Cartan pullback is then
//! `(a + ∂₁p) du₁ + (b + ∂₂p) du₂`, which is differentiated analytically.
//! The integrals use the midpoint rule on a uniform `N × N` grid; for
//! unperturbed maps the integrand is constant.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::extensions::{GammaElement, Level};
use crate::lattices::{minimal_dominant_rep, CenterGroup, Lattice};
use crate::linalg::{fmt_qvec, Q};
use crate::rootsys::RootSystem;

pub const MIN_GRID: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    grid: usize,
    tolerance: f64,
}

impl QuadratureConfig {
    pub fn new(grid: usize, tolerance: f64) -> Result<Self> {
        if grid < MIN_GRID {
            return Err(Error::GridTooSmall {
                min: MIN_GRID,
                got: grid,
            });
        }
        Ok(QuadratureConfig { grid, tolerance })
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// `amplitude · coeff · sin(2π(m u₁ + n u₂) + phase)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierMode {
    pub freq: (i32, i32),
    pub coeff: Vec<f64>,
    pub amplitude: f64,
    pub phase: f64,
}

impl FourierMode {
    fn angle(&self, u: (f64, f64)) -> f64 {
        2.0 * PI * (self.freq.0 as f64 * u.0 + self.freq.1 as f64 * u.1) + self.phase
    }
}

#[derive(Clone, Debug)]
pub struct TorusMap<'a> {
    root_system: &'a RootSystem,
    winding: (Vec<Q>, Vec<Q>),
    perturbation: Vec<FourierMode>,
}

impl<'a> TorusMap<'a> {
    /// Checks that both windings lie in `lattice` so the map closes up.
    pub fn new(
        rs: &'a RootSystem,
        lattice: &Lattice,
        winding: (Vec<Q>, Vec<Q>),
        perturbation: Vec<FourierMode>,
    ) -> Result<Self> {
        for w in [&winding.0, &winding.1] {
            if !lattice.contains(w) {
                return Err(Error::NotInLattice(fmt_qvec(w)));
            }
        }
        for mode in &perturbation {
            if mode.coeff.len() != rs.rank() {
                return Err(Error::DimensionMismatch {
                    expected: rs.rank(),
                    got: mode.coeff.len(),
                });
            }
            if mode.freq == (0, 0) {
                return Err(Error::Inconsistent("perturbation mode with zero frequency".into()));
            }
        }
        Ok(TorusMap {
            root_system: rs,
            winding,
            perturbation,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        self.root_system
    }

    pub fn winding(&self) -> &(Vec<Q>, Vec<Q>) {
        &self.winding
    }

    pub fn perturbation(&self) -> &[FourierMode] {
        &self.perturbation
    }

    pub fn is_constant(&self) -> bool {
        self.perturbation.is_empty()
            && self.winding.0.iter().chain(&self.winding.1).all(|x| *x == Q::from_integer(0))
    }

    pub fn with_perturbation(mut self, modes: Vec<FourierMode>) -> Self {
        self.perturbation = modes;
        self
    }

    /// Pointwise product: windings add, perturbations concatenate.
    pub fn product(&self, other: &TorusMap<'a>) -> Result<TorusMap<'a>> {
        if self.root_system != other.root_system {
            return Err(Error::RootSystemMismatch);
        }
        let add = |x: &[Q], y: &[Q]| x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<Q>>();
        Ok(TorusMap {
            root_system: self.root_system,
            winding: (
                add(&self.winding.0, &other.winding.0),
                add(&self.winding.1, &other.winding.1),
            ),
            perturbation: self
                .perturbation
                .iter()
                .chain(&other.perturbation)
                .cloned()
                .collect(),
        })
    }

    /// `g*θ` at `u`: the coefficients of `du₁` and `du₂`.
    pub fn maurer_cartan(&self, u: (f64, f64)) -> (Vec<f64>, Vec<f64>) {
        let to_f = |v: &[Q]| -> Vec<f64> {
            v.iter()
                .map(|x| *x.numer() as f64 / *x.denom() as f64)
                .collect()
        };
        let mut d1 = to_f(&self.winding.0);
        let mut d2 = to_f(&self.winding.1);
        for mode in &self.perturbation {
            let c = mode.amplitude * mode.angle(u).cos() * 2.0 * PI;
            for (k, coeff) in mode.coeff.iter().enumerate() {
                d1[k] += c * mode.freq.0 as f64 * coeff;
                d2[k] += c * mode.freq.1 as f64 * coeff;
            }
        }
        (d1, d2)
    }

    /// The logarithm `u₁a + u₂b + p(u)`.
    pub fn log_value(&self, u: (f64, f64)) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .winding
            .0
            .iter()
            .zip(&self.winding.1)
            .map(|(a, b)| {
                u.0 * (*a.numer() as f64 / *a.denom() as f64)
                    + u.1 * (*b.numer() as f64 / *b.denom() as f64)
            })
            .collect();
        for mode in &self.perturbation {
            let s = mode.amplitude * mode.angle(u).sin();
            for (vk, c) in v.iter_mut().zip(&mode.coeff) {
                *vk += s * c;
            }
        }
        v
    }
}

/// `g_z` for `z = (z₁, z₂)`: windings `(ζ_{z₁}, ζ_{z₂})`, no perturbation.
pub fn build_torus_map<'a>(
    rs: &'a RootSystem,
    cg: &CenterGroup,
    lattice: &Lattice,
    z: &GammaElement,
) -> Result<TorusMap<'a>> {
    let a = minimal_dominant_rep(rs, cg, &z.first)?;
    let b = minimal_dominant_rep(rs, cg, &z.second)?;
    TorusMap::new(rs, lattice, (a, b), Vec::new())
}

fn gram_f64(rs: &RootSystem) -> Vec<Vec<f64>> {
    rs.coroot_gram()
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as f64).collect())
        .collect()
}

fn bilinear(gram: &[Vec<f64>], x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            s += xi * gram[i][j] * yj;
        }
    }
    s
}

/// `∫_{T²} l·B(g*θ ∧ h*θ)`, with the 2-form coefficient
/// `l·B(∂₁g, ∂₂h) − l·B(∂₂g, ∂₁h)` averaged over midpoints.
pub fn integrate_pairing_form(
    g: &TorusMap,
    h: &TorusMap,
    level: Level,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if g.root_system != h.root_system {
        return Err(Error::RootSystemMismatch);
    }
    let gram = gram_f64(g.root_system);
    let n = cfg.grid;
    let step = 1.0 / n as f64;
    let mut total = 0.0;
    // Fixed row-major order for reproducible sums.
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            let u = ((i as f64 + 0.5) * step, (j as f64 + 0.5) * step);
            let (g1, g2) = g.maurer_cartan(u);
            let (h1, h2) = h.maurer_cartan(u);
            row += bilinear(&gram, &g1, &h2) - bilinear(&gram, &g2, &h1);
        }
        total += row;
    }
    Ok(level.get() as f64 * total * step * step)
}

/// `c(g, h) = exp(iπ ∫ l·B(g*θ ∧ h*θ))`.
pub fn cocycle_value(
    g: &TorusMap,
    h: &TorusMap,
    level: Level,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let integral = integrate_pairing_form(g, h, level, cfg)?;
    Ok(Complex64::from_polar(1.0, PI * integral))
}

/// `c(g, h) / c(h, g)`.
pub fn numeric_commutator(
    g: &TorusMap,
    h: &TorusMap,
    level: Level,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    Ok(cocycle_value(g, h, level, cfg)? / cocycle_value(h, g, level, cfg)?)
}

/// Lie bracket on the Cartan subalgebra, which is abelian.
pub fn torus_bracket(x: &[f64], y: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), y.len());
    vec![0.0; x.len()]
}

/// Coefficient of the pulled-back invariant 3-form `B(θ, [θ, θ])` on the
/// triple of tangent directions `(X, Y, W)`, antisymmetrized. For maps into
/// the torus each bracket lies in the abelian Cartan subalgebra, so this is
/// identically zero.
pub fn wz_three_form(gram: &[Vec<f64>], x: &[f64], y: &[f64], w: &[f64]) -> f64 {
    let term = |a: &[f64], b: &[f64], c: &[f64]| bilinear(gram, a, &torus_bracket(b, c));
    term(x, y, w) + term(y, w, x) + term(w, x, y) - term(y, x, w) - term(x, w, y) - term(w, y, x)
}

/// Checks that the Wess–Zumino density of a torus-valued homotopy vanishes
/// at every grid point, using `θ(∂₁)`, `θ(∂₂)` of `g` and a third direction
/// given by `h`'s first component.
pub fn wz_term_vanishes(g: &TorusMap, h: &TorusMap, cfg: &QuadratureConfig) -> bool {
    let gram = gram_f64(g.root_system);
    let n = cfg.grid;
    (0..n).all(|i| {
        (0..n).all(|j| {
            let u = ((i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64);
            let (g1, g2) = g.maurer_cartan(u);
            let (h1, _) = h.maurer_cartan(u);
            wz_three_form(&gram, &g1, &g2, &h1) == 0.0
        })
    })
}

/// Up to `max_modes` random modes with frequencies in `[-max_freq, max_freq]²`
/// and amplitudes at most `max_amplitude`.
pub fn random_perturbation<R: Rng>(
    rng: &mut R,
    rank: usize,
    max_modes: usize,
    max_freq: i32,
    max_amplitude: f64,
) -> Vec<FourierMode> {
    let count = rng.gen_range(1..=max_modes.max(1));
    (0..count)
        .map(|_| {
            let freq = loop {
                let f = (
                    rng.gen_range(-max_freq..=max_freq),
                    rng.gen_range(-max_freq..=max_freq),
                );
                if f != (0, 0) {
                    break f;
                }
            };
            FourierMode {
                freq,
                coeff: (0..rank).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
                amplitude: rng.gen_range(0.0..=max_amplitude),
                phase: rng.gen_range(0.0..2.0 * PI),
            }
        })
        .collect()
}
