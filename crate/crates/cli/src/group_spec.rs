//! Text names for groups `G′ = G / Z`.
//!
//! ```text
//! group    := alias | explicit
//! alias    := "SU(" n ")/Z" k | "PSp(" n ")" | "SO(" n ")" | "PO(" 2n ")"
//!           | "Ss(" 4n ")" | "PE6" | "PE7"
//! explicit := TYPE "/" sub            e.g. A3/Z2, D4/full, E6/triv
//! sub      := "triv" | "full" | "Z" k | "SO" | "Ss" | "PO"
//!           | "gen=(" c,c,... { ";" c,c,... } ")"
//! ```
//!
//! `Z<k>` is the order-`k` subgroup of a cyclic center. For type `D`, `SO`
//! is the subgroup generated by the class of `ω_1^∨`, `Ss` the one generated
//! by `ω_n^∨` (even rank only) and `PO` the full center. `gen=` lists
//! generators in the coordinates of the center's invariant factors, as
//! printed by `basic-level`.

use std::fmt;
use std::str::FromStr;

use prequant_core::{
    center, full_subgroup, subgroup_from_generators, trivial_subgroup, CenterSubgroup, Family,
    LieType, RootSystem, TableGroup,
};
use thiserror::Error;

pub const GRAMMAR: &str = "expected SU(n)/Zk, PSp(n), SO(n), PO(2n), Ss(4n), PE6, PE7, \
or TYPE/SUB with TYPE like A3 and SUB one of triv, full, Z<k>, SO, Ss, PO, gen=(c,..;c,..)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cannot parse group '{0}': {GRAMMAR}")]
    Syntax(String),
    #[error("invalid group '{spec}': {reason}")]
    Invalid { spec: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    Trivial,
    Full,
    Cyclic(i64),
    /// Type `D` names.
    So,
    Ss,
    Po,
    Generators(Vec<Vec<i64>>),
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::Trivial => write!(f, "triv"),
            Subgroup::Full => write!(f, "full"),
            Subgroup::Cyclic(k) => write!(f, "Z{k}"),
            Subgroup::So => write!(f, "SO"),
            Subgroup::Ss => write!(f, "Ss"),
            Subgroup::Po => write!(f, "PO"),
            Subgroup::Generators(gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|g| g.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "gen=({})", parts.join(";"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Table(TableGroup),
    /// `SO(n)` for `n ∈ {3, 5, 6}`, outside the closed-form table.
    SmallSo(u32),
    Explicit { ty: LieType, sub: Subgroup },
}

impl GroupSpec {
    pub fn table_group(&self) -> Option<TableGroup> {
        match self {
            GroupSpec::Table(g) => Some(*g),
            _ => None,
        }
    }

    pub fn resolve(&self) -> Result<(RootSystem, CenterSubgroup), SpecError> {
        let invalid = |reason: String| SpecError::Invalid {
            spec: self.to_string(),
            reason,
        };
        match self {
            GroupSpec::Table(g) => g.realize().map_err(|e| invalid(e.to_string())),
            GroupSpec::SmallSo(n) => {
                let (ty, sub) = match n {
                    3 => ("A1", Subgroup::Full),
                    5 => ("B2", Subgroup::Full),
                    6 => ("D3", Subgroup::So),
                    _ => return Err(invalid("SO(n) needs n = 3 or n >= 5".into())),
                };
                GroupSpec::Explicit {
                    ty: ty.parse().expect("valid type"),
                    sub,
                }
                .resolve()
            }
            GroupSpec::Explicit { ty, sub } => {
                let rs = RootSystem::new(*ty);
                let cg = center(&rs);
                let d_node = |node: usize| -> Result<CenterSubgroup, SpecError> {
                    if ty.family() != Family::D {
                        return Err(invalid(format!("subgroup '{sub}' is only defined for type D")));
                    }
                    let gen = cg
                        .class_of(&rs.fundamental_coweight(node))
                        .map_err(|e| invalid(e.to_string()))?;
                    subgroup_from_generators(&cg, vec![gen]).map_err(|e| invalid(e.to_string()))
                };
                let z = match sub {
                    Subgroup::Trivial => trivial_subgroup(&cg),
                    Subgroup::Full => full_subgroup(&cg),
                    Subgroup::Po => {
                        if ty.family() != Family::D {
                            return Err(invalid("subgroup 'PO' is only defined for type D".into()));
                        }
                        full_subgroup(&cg)
                    }
                    Subgroup::So => d_node(0)?,
                    Subgroup::Ss => {
                        if ty.rank() % 2 != 0 {
                            return Err(invalid("subgroup 'Ss' needs even rank".into()));
                        }
                        d_node(ty.rank() - 1)?
                    }
                    Subgroup::Cyclic(k) => {
                        let factors = cg.invariant_factors();
                        let d = match factors {
                            [] => 1,
                            [d] => *d,
                            _ => {
                                return Err(invalid(format!(
                                    "center {factors:?} is not cyclic; use SO, Ss, PO or gen="
                                )))
                            }
                        };
                        if *k < 1 || d % k != 0 {
                            return Err(invalid(format!("Z{k} is not a subgroup of Z{d}")));
                        }
                        if *k == 1 {
                            trivial_subgroup(&cg)
                        } else {
                            let gen = cg.scale(&cg.element(vec![1]).expect("generator"), d / k);
                            subgroup_from_generators(&cg, vec![gen])
                                .map_err(|e| invalid(e.to_string()))?
                        }
                    }
                    Subgroup::Generators(gens) => {
                        let elems = gens
                            .iter()
                            .map(|g| cg.element(g.clone()))
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| invalid(e.to_string()))?;
                        subgroup_from_generators(&cg, elems).map_err(|e| invalid(e.to_string()))?
                    }
                };
                Ok((rs, z))
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Table(g) => write!(f, "{g}"),
            GroupSpec::SmallSo(n) => write!(f, "SO({n})"),
            GroupSpec::Explicit { ty, sub } => write!(f, "{ty}/{sub}"),
        }
    }
}

fn parse_paren_num(s: &str, prefix: &str) -> Option<u32> {
    s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
}

fn parse_subgroup(s: &str) -> Option<Subgroup> {
    Some(match s {
        "triv" => Subgroup::Trivial,
        "full" => Subgroup::Full,
        "SO" => Subgroup::So,
        "Ss" => Subgroup::Ss,
        "PO" => Subgroup::Po,
        _ => {
            if let Some(k) = s.strip_prefix('Z') {
                Subgroup::Cyclic(k.parse().ok()?)
            } else {
                let body = s.strip_prefix("gen=(")?.strip_suffix(')')?;
                let gens = body
                    .split(';')
                    .map(|g| {
                        g.split(',')
                            .map(|c| c.trim().parse::<i64>())
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .ok()?;
                Subgroup::Generators(gens)
            }
        }
    })
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(raw: &str) -> Result<Self, SpecError> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let syntax = || SpecError::Syntax(raw.to_string());
        let invalid = |reason: &str| SpecError::Invalid {
            spec: raw.to_string(),
            reason: reason.to_string(),
        };
        let table = |g: TableGroup| -> Result<GroupSpec, SpecError> {
            g.validate().map_err(|e| invalid(&e.to_string()))?;
            Ok(GroupSpec::Table(g))
        };

        match s.as_str() {
            "PE6" => return Ok(GroupSpec::Table(TableGroup::PE6)),
            "PE7" => return Ok(GroupSpec::Table(TableGroup::PE7)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("SU(") {
            let (n, k) = rest.split_once(")/Z").ok_or_else(syntax)?;
            let n: u32 = n.parse().map_err(|_| syntax())?;
            let k: u32 = k.parse().map_err(|_| syntax())?;
            return table(TableGroup::SuModK { n, k });
        }
        if let Some(n) = parse_paren_num(&s, "PSp(") {
            return table(TableGroup::PSp { n });
        }
        if let Some(n) = parse_paren_num(&s, "SO(") {
            return match n {
                3 | 5 | 6 => Ok(GroupSpec::SmallSo(n)),
                n if n < 7 => Err(invalid("SO(n) needs n = 3, 5, 6 or n >= 7")),
                _ => table(TableGroup::So { n }),
            };
        }
        if let Some(m) = parse_paren_num(&s, "PO(") {
            if m % 2 != 0 {
                return Err(invalid("PO(m) needs m even"));
            }
            return table(TableGroup::Po { n: m / 2 });
        }
        if let Some(m) = parse_paren_num(&s, "Ss(") {
            if m % 4 != 0 {
                return Err(invalid("Ss(m) needs m divisible by 4"));
            }
            return table(TableGroup::Ss { n: m / 4 });
        }
        let (ty, sub) = s.split_once('/').ok_or_else(syntax)?;
        let ty: LieType = ty.parse().map_err(|e: prequant_core::Error| match e {
            prequant_core::Error::InvalidRank { .. } => invalid(&e.to_string()),
            _ => syntax(),
        })?;
        let sub = parse_subgroup(sub).ok_or_else(syntax)?;
        Ok(GroupSpec::Explicit { ty, sub })
    }
}
