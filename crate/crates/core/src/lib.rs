//! Exact computation of basic levels and commutator pairings for
//! non-simply-connected compact simple Lie groups `G′ = G / Z`, deciding
//! when the moduli space of flat `G′`-bundles over a genus-one surface with
//! one boundary component carries a pre-quantum line bundle.
//!
//! * [`rootsys`]: Cartan matrices and the basic inner product.
//! * [`lattices`]: the center as `P^∨/Q^∨`, its subgroups and the lattices `Λ′`.
//! * [`levels`]: the basic level `l_b(G′)` and the closed forms for named groups.
//! * [`extensions`]: the commutator pairing on `Z × Z`, splitting and characters.
//! * [`surfcalc`]: a floating-point quadrature cross-check of the pairing.

pub mod error;
pub mod extensions;
pub mod lattices;
pub mod levels;
pub mod linalg;
pub mod rootsys;
pub mod surfcalc;

pub use error::{Error, Result};
pub use extensions::{
    classify, commutator_pairing, commutator_pairing_with_reps, enumerate_characters,
    gamma_elements, pairing_is_trivial, Character, ClassificationReport, GammaElement, Level,
    PairingMatrix, RationalPhase,
};
pub use lattices::{
    all_subgroups, center, full_subgroup, intermediate_lattice, minimal_dominant_rep,
    subgroup_from_generators, trivial_subgroup, CenterElement, CenterGroup, CenterSubgroup,
    Lattice,
};
pub use levels::{basic_level, ord_mod, table_formula, LevelReport, TableGroup, TableRow};
pub use linalg::{Matrix, Q};
pub use rootsys::{build_root_system, Family, LieType, RootSystem};
pub use surfcalc::{
    build_torus_map, cocycle_value, integrate_pairing_form, numeric_commutator, FourierMode,
    QuadratureConfig, TorusMap,
};
