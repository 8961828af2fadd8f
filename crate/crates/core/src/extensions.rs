//! The commutator pairing of the finite central extension over `Γ = Z × Z`
//! and the resulting classification of pre-quantum line bundles.
//!
//! For `z = (z₁, z₂)` and `w = (w₁, w₂)` in `Γ` the pairing is the phase
//!
//! ```text
//! q(z, w) = l·B(ζ_{z₁}, ζ_{w₂}) − l·B(ζ_{w₁}, ζ_{z₂})   (mod 1)
//! ```
//!
//! where `ζ_x` is a coweight representing `x`. Since `B(Q^∨, P^∨) ⊆ ℤ`,
//! the value does not depend on the representatives when `l` is an integer.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattices::{representatives, CenterElement, CenterSubgroup};
use crate::levels::basic_level;
use crate::linalg::{q, Q};
use crate::rootsys::RootSystem;

/// An element `exp(2πi·t)` of `U(1)`, stored as `t ∈ [0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPhase(Q);

impl RationalPhase {
    pub fn new(t: Q) -> Self {
        RationalPhase(t - t.floor())
    }

    pub fn zero() -> Self {
        RationalPhase(Q::zero())
    }

    pub fn value(&self) -> Q {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(cos 2πt, sin 2πt)`.
    pub fn to_unit_complex(&self) -> num_complex::Complex64 {
        let t = *self.0.numer() as f64 / *self.0.denom() as f64;
        num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
    }
}

impl Add for RationalPhase {
    type Output = RationalPhase;
    fn add(self, rhs: Self) -> Self {
        RationalPhase::new(self.0 + rhs.0)
    }
}

impl Sub for RationalPhase {
    type Output = RationalPhase;
    fn sub(self, rhs: Self) -> Self {
        RationalPhase::new(self.0 - rhs.0)
    }
}

impl Neg for RationalPhase {
    type Output = RationalPhase;
    fn neg(self) -> Self {
        RationalPhase::new(-self.0)
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A positive integer level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u64);

impl Level {
    pub fn new(l: i64) -> Result<Self> {
        if l <= 0 {
            return Err(Error::InvalidLevel(l.to_string()));
        }
        Ok(Level(l as u64))
    }

    pub fn get(&self) -> u64 {
        self.0
    }
}

impl TryFrom<Q> for Level {
    type Error = Error;
    fn try_from(l: Q) -> Result<Self> {
        if !l.is_integer() {
            return Err(Error::InvalidLevel(l.to_string()));
        }
        Level::new(l.to_integer())
    }
}

/// An element `(z₁, z₂)` of `Γ = Z × Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaElement {
    pub first: CenterElement,
    pub second: CenterElement,
}

impl GammaElement {
    /// Order used for enumeration and witnesses: colexicographic, i.e. by
    /// `second` and then `first`.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        (&self.second, &self.first).cmp(&(&other.second, &other.first))
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// All elements of `Z × Z` in canonical order.
pub fn gamma_elements(z: &CenterSubgroup) -> Vec<GammaElement> {
    let mut out: Vec<GammaElement> = z
        .elements()
        .iter()
        .flat_map(|a| {
            z.elements().iter().map(move |b| GammaElement {
                first: a.clone(),
                second: b.clone(),
            })
        })
        .collect();
    out.sort_by(GammaElement::canonical_cmp);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    subgroup: CenterSubgroup,
    level: Level,
    gamma: Vec<GammaElement>,
    /// Row-major over `gamma × gamma`.
    entries: Vec<RationalPhase>,
}

impl PairingMatrix {
    pub fn subgroup(&self) -> &CenterSubgroup {
        &self.subgroup
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Index set of rows and columns.
    pub fn gamma(&self) -> &[GammaElement] {
        &self.gamma
    }

    pub fn at(&self, i: usize, j: usize) -> RationalPhase {
        self.entries[i * self.gamma.len() + j]
    }

    pub fn get(&self, z: &GammaElement, w: &GammaElement) -> Option<RationalPhase> {
        let find = |g: &GammaElement| {
            self.gamma
                .binary_search_by(|x| x.canonical_cmp(g))
                .ok()
        };
        Some(self.at(find(z)?, find(w)?))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&GammaElement, &GammaElement, RationalPhase)> {
        let n = self.gamma.len();
        (0..n * n).map(move |k| (&self.gamma[k / n], &self.gamma[k % n], self.entries[k]))
    }
}

/// The pairing using minimal dominant representatives.
pub fn commutator_pairing(rs: &RootSystem, z: &CenterSubgroup, level: Level) -> Result<PairingMatrix> {
    let reps = representatives(rs, z)?;
    build_pairing(rs, z, level, &reps)
}

/// The pairing using caller-supplied representatives, one per element of
/// `z` in its element order. Each must be a coweight in the right class.
pub fn commutator_pairing_with_reps(
    rs: &RootSystem,
    z: &CenterSubgroup,
    level: Level,
    reps: &[Vec<Q>],
) -> Result<PairingMatrix> {
    if reps.len() != z.order() {
        return Err(Error::DimensionMismatch {
            expected: z.order(),
            got: reps.len(),
        });
    }
    for (e, r) in z.elements().iter().zip(reps) {
        if z.ambient().class_of(r)? != *e {
            return Err(Error::Inconsistent(format!(
                "representative does not lie in the class {e}"
            )));
        }
    }
    build_pairing(rs, z, level, reps)
}

fn build_pairing(
    rs: &RootSystem,
    z: &CenterSubgroup,
    level: Level,
    reps: &[Vec<Q>],
) -> Result<PairingMatrix> {
    let m = z.order();
    let mut gram = vec![Q::zero(); m * m];
    for i in 0..m {
        for j in 0..m {
            gram[i * m + j] = rs.pair(&reps[i], &reps[j])?;
        }
    }
    let index = |e: &CenterElement| {
        z.elements()
            .binary_search(e)
            .expect("element of the subgroup")
    };
    let l = q(level.get() as i64);
    let gamma = gamma_elements(z);
    let idx: Vec<(usize, usize)> = gamma
        .iter()
        .map(|g| (index(&g.first), index(&g.second)))
        .collect();
    let mut entries = Vec::with_capacity(gamma.len() * gamma.len());
    for &(z1, z2) in &idx {
        for &(w1, w2) in &idx {
            let t = l * (gram[z1 * m + w2] - gram[w1 * m + z2]);
            entries.push(RationalPhase::new(t));
        }
    }
    Ok(PairingMatrix {
        subgroup: z.clone(),
        level,
        gamma,
        entries,
    })
}

/// Whether every phase vanishes; otherwise the first nonzero entry in
/// canonical order.
pub fn pairing_is_trivial(p: &PairingMatrix) -> (bool, Option<(GammaElement, GammaElement)>) {
    match p.entries().find(|(_, _, ph)| !ph.is_zero()) {
        None => (true, None),
        Some((z, w, _)) => (false, Some((z.clone(), w.clone()))),
    }
}

/// A homomorphism `Z × Z → ℚ/ℤ`, given by its values on the subgroup's
/// generators in each factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub first: Vec<RationalPhase>,
    pub second: Vec<RationalPhase>,
    /// Ambient dual coordinates `(c, c′)`: the value on `(x, y)` is
    /// `Σ cᵢxᵢ/dᵢ + Σ c′ᵢyᵢ/dᵢ`.
    dual: (Vec<i64>, Vec<i64>),
}

impl Character {
    pub fn eval(&self, z: &CenterSubgroup, g: &GammaElement) -> RationalPhase {
        let factors = z.ambient().invariant_factors();
        let part = |c: &[i64], x: &CenterElement| {
            c.iter()
                .zip(x.coeffs())
                .zip(factors)
                .fold(RationalPhase::zero(), |acc, ((ci, xi), d)| {
                    acc + RationalPhase::new(Q::new(ci * xi, *d))
                })
        };
        part(&self.dual.0, &g.first) + part(&self.dual.1, &g.second)
    }

    /// Pointwise sum, as a phase assignment on generators.
    pub fn add_values(&self, other: &Character) -> (Vec<RationalPhase>, Vec<RationalPhase>) {
        let add = |a: &[RationalPhase], b: &[RationalPhase]| {
            a.iter().zip(b).map(|(x, y)| *x + *y).collect()
        };
        (add(&self.first, &other.first), add(&self.second, &other.second))
    }
}

/// All characters of `Z × Z`, sorted by their generator values.
///
/// Every character of a subgroup extends to the ambient group `⊕ ℤ/dᵢ`,
/// whose characters are `x ↦ Σ cᵢxᵢ/dᵢ`; restricting those and removing
/// duplicates gives each character exactly once.
pub fn enumerate_characters(z: &CenterSubgroup) -> Vec<Character> {
    let cg = z.ambient();
    let factors = cg.invariant_factors();
    let on_gens = |c: &[i64]| -> Vec<RationalPhase> {
        z.generators()
            .iter()
            .map(|g| {
                c.iter()
                    .zip(g.coeffs())
                    .zip(factors)
                    .fold(RationalPhase::zero(), |acc, ((ci, xi), d)| {
                        acc + RationalPhase::new(Q::new(ci * xi, *d))
                    })
            })
            .collect()
    };
    // Dual coordinates range over the same shape as the group itself.
    let duals: Vec<Vec<i64>> = cg.elements().iter().map(|e| e.coeffs().to_vec()).collect();
    let mut single: Vec<(Vec<RationalPhase>, Vec<i64>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for c in &duals {
        let vals = on_gens(c);
        if seen.insert(vals.clone()) {
            single.push((vals, c.clone()));
        }
    }
    let mut out: Vec<Character> = single
        .iter()
        .flat_map(|(v1, c1)| {
            single.iter().map(move |(v2, c2)| Character {
                first: v1.clone(),
                second: v2.clone(),
                dual: (c1.clone(), c2.clone()),
            })
        })
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub group: String,
    pub level: u64,
    pub basic_level: u64,
    pub splits: bool,
    pub witness: Option<(GammaElement, GammaElement)>,
    pub line_bundle_count: u64,
}

pub fn classify(
    rs: &RootSystem,
    z: &CenterSubgroup,
    level: Level,
    group: impl Into<String>,
) -> Result<ClassificationReport> {
    let lb = basic_level(rs, z)?.basic_level;
    let pairing = commutator_pairing(rs, z, level)?;
    let (splits, witness) = pairing_is_trivial(&pairing);
    if splits != (level.get() % lb == 0) {
        return Err(Error::Inconsistent(format!(
            "pairing triviality {splits} disagrees with divisibility of level {} by {lb}",
            level.get()
        )));
    }
    let line_bundle_count = if splits {
        enumerate_characters(z).len() as u64
    } else {
        0
    };
    Ok(ClassificationReport {
        group: group.into(),
        level: level.get(),
        basic_level: lb,
        splits,
        witness,
        line_bundle_count,
    })
}
