//! Basic levels: the smallest `l` making `l·B` integral on `Λ′`, computed
//! from lattice data and from the closed forms for the named groups.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattices::{
    center, full_subgroup, intermediate_lattice, subgroup_from_generators, trivial_subgroup,
    CenterSubgroup,
};
use crate::linalg::{q, Matrix, Q};
use crate::rootsys::{Family, LieType, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub basic_level: u64,
    /// `B` on the Hermite basis of `Λ′`.
    pub gram_on_lambda_prime: Matrix<Q>,
}

impl LevelReport {
    /// Checks integrality at `basic_level` and non-integrality below it by
    /// direct scan.
    pub fn verify_minimality(&self) -> bool {
        let integral_at = |l: u64| self.gram_on_lambda_prime.scale(q(l as i64)).is_integral();
        integral_at(self.basic_level) && (1..self.basic_level).all(|l| !integral_at(l))
    }
}

pub fn basic_level(rs: &RootSystem, z: &CenterSubgroup) -> Result<LevelReport> {
    let lattice = intermediate_lattice(rs, z)?;
    let gram = lattice.gram(rs);
    let report = LevelReport {
        basic_level: gram.denominator_lcm() as u64,
        gram_on_lambda_prime: gram,
    };
    if !report.verify_minimality() {
        return Err(Error::Inconsistent(format!(
            "basic level {} failed the minimality scan",
            report.basic_level
        )));
    }
    Ok(report)
}

/// Additive order of `x` in `ℤ/k`.
pub fn ord_mod(x: i64, k: u64) -> u64 {
    assert!(k >= 1, "modulus must be positive");
    let k = k as i64;
    let r = x.rem_euclid(k);
    let g = if r == 0 { k } else { r.gcd(&k) };
    (k / g) as u64
}

/// The named non-simply-connected groups with a closed-form level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableGroup {
    /// `SU(n)/ℤ_k`, `k | n`.
    SuModK { n: u32, k: u32 },
    /// `PSp(n)`.
    PSp { n: u32 },
    /// `SO(n)`, `n ≥ 7`.
    So { n: u32 },
    /// `PO(2n)`, `n ≥ 4`.
    Po { n: u32 },
    /// `Ss(4n)`, `n ≥ 2`.
    Ss { n: u32 },
    PE6,
    PE7,
}

/// Which order-2 subgroup of a type `D` center is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DSubgroup {
    /// Generated by the class of `ω_1^∨` (quotient `SO(2n)`).
    Vector,
    /// Generated by the class of `ω_n^∨` (quotient `Ss(2n)`, `n` even).
    Spinor,
}

fn invalid(family: &'static str, constraint: impl Into<String>) -> Error {
    Error::InvalidTableParams {
        family,
        constraint: constraint.into(),
    }
}

impl TableGroup {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TableGroup::SuModK { n, k } => {
                if n < 2 {
                    return Err(invalid("SU(n)/Z_k", "n >= 2"));
                }
                if k == 0 || n % k != 0 {
                    return Err(invalid("SU(n)/Z_k", format!("k to divide n (n={n}, k={k})")));
                }
            }
            TableGroup::PSp { n } if n < 1 => return Err(invalid("PSp(n)", "n >= 1")),
            TableGroup::So { n } if n < 7 => return Err(invalid("SO(n)", "n >= 7")),
            TableGroup::Po { n } if n < 4 => return Err(invalid("PO(2n)", "n >= 4")),
            TableGroup::Ss { n } if n < 2 => return Err(invalid("Ss(4n)", "n >= 2")),
            _ => {}
        }
        Ok(())
    }

    /// Rank of the simply connected cover.
    pub fn rank(&self) -> usize {
        match *self {
            TableGroup::SuModK { n, .. } => n as usize - 1,
            TableGroup::PSp { n } => n as usize,
            TableGroup::So { n } => n as usize / 2,
            TableGroup::Po { n } => n as usize,
            TableGroup::Ss { n } => 2 * n as usize,
            TableGroup::PE6 => 6,
            TableGroup::PE7 => 7,
        }
    }

    /// The (simply connected type, subgroup) pair this group is a quotient by.
    pub fn realize(&self) -> Result<(RootSystem, CenterSubgroup)> {
        self.validate()?;
        let ty = |f: Family, r: usize| LieType::new(f, r).map(RootSystem::new);
        let full = |rs: RootSystem| {
            let cg = center(&rs);
            let z = full_subgroup(&cg);
            (rs, z)
        };
        Ok(match *self {
            TableGroup::SuModK { n, k } => {
                let rs = ty(Family::A, n as usize - 1)?;
                let cg = center(&rs);
                let z = if k == 1 {
                    trivial_subgroup(&cg)
                } else {
                    let gen = cg.scale(&cg.element(vec![1])?, (n / k) as i64);
                    subgroup_from_generators(&cg, vec![gen])?
                };
                (rs, z)
            }
            // PSp(1) = SO(3).
            TableGroup::PSp { n: 1 } => full(ty(Family::A, 1)?),
            TableGroup::PSp { n } => full(ty(Family::C, n as usize)?),
            TableGroup::So { n } if n % 2 == 1 => full(ty(Family::B, n as usize / 2)?),
            TableGroup::So { n } => d_quotient(n as usize / 2, DSubgroup::Vector)?,
            TableGroup::Po { n } => full(ty(Family::D, n as usize)?),
            TableGroup::Ss { n } => d_quotient(2 * n as usize, DSubgroup::Spinor)?,
            TableGroup::PE6 => full(ty(Family::E, 6)?),
            TableGroup::PE7 => full(ty(Family::E, 7)?),
        })
    }

    /// Every instance whose simply connected cover has rank at most `max_rank`.
    pub fn instances(max_rank: usize) -> Vec<TableGroup> {
        let r = max_rank as u32;
        let mut out = Vec::new();
        for n in 2..=r + 1 {
            for k in (1..=n).filter(|k| n % k == 0) {
                out.push(TableGroup::SuModK { n, k });
            }
        }
        out.extend((1..=r).map(|n| TableGroup::PSp { n }));
        out.extend((7..=2 * r + 1).map(|n| TableGroup::So { n }));
        out.extend((4..=r).map(|n| TableGroup::Po { n }));
        out.extend((2..=r / 2).map(|n| TableGroup::Ss { n }));
        if r >= 6 {
            out.push(TableGroup::PE6);
        }
        if r >= 7 {
            out.push(TableGroup::PE7);
        }
        out
    }
}

fn d_quotient(rank: usize, which: DSubgroup) -> Result<(RootSystem, CenterSubgroup)> {
    let rs = RootSystem::new(LieType::new(Family::D, rank)?);
    let cg = center(&rs);
    let node = match which {
        DSubgroup::Vector => 0,
        DSubgroup::Spinor => rank - 1,
    };
    let gen = cg.class_of(&rs.fundamental_coweight(node))?;
    let z = subgroup_from_generators(&cg, vec![gen])?;
    Ok((rs, z))
}

impl fmt::Display for TableGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TableGroup::SuModK { n, k } => write!(f, "SU({n})/Z{k}"),
            TableGroup::PSp { n } => write!(f, "PSp({n})"),
            TableGroup::So { n } => write!(f, "SO({n})"),
            TableGroup::Po { n } => write!(f, "PO({})", 2 * n),
            TableGroup::Ss { n } => write!(f, "Ss({})", 4 * n),
            TableGroup::PE6 => write!(f, "PE6"),
            TableGroup::PE7 => write!(f, "PE7"),
        }
    }
}

/// Closed-form basic level for a named group.
pub fn table_formula(g: &TableGroup) -> Result<u64> {
    g.validate()?;
    let parity = |n: u32, even: u64, odd: u64| if n % 2 == 0 { even } else { odd };
    Ok(match *g {
        TableGroup::SuModK { n, k } => ord_mod((n / k) as i64, k as u64),
        TableGroup::PSp { n } => parity(n, 1, 2),
        TableGroup::So { .. } => 1,
        TableGroup::Po { n } => parity(n, 2, 4),
        TableGroup::Ss { n } => parity(n, 1, 2),
        TableGroup::PE6 => 3,
        TableGroup::PE7 => 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub group: TableGroup,
    pub from_table: u64,
    pub from_lattice: u64,
}

impl TableRow {
    pub fn agrees(&self) -> bool {
        self.from_table == self.from_lattice
    }
}

pub fn table_row(g: TableGroup) -> Result<TableRow> {
    let (rs, z) = g.realize()?;
    Ok(TableRow {
        group: g,
        from_table: table_formula(&g)?,
        from_lattice: basic_level(&rs, &z)?.basic_level,
    })
}

pub fn table_rows(max_rank: usize) -> Result<Vec<TableRow>> {
    TableGroup::instances(max_rank)
        .into_iter()
        .map(table_row)
        .collect()
}

/// Whether `l` is a multiple of the basic level.
pub fn level_is_multiple(basic: u64, l: u64) -> bool {
    !l.is_zero() && l % basic == 0
}
