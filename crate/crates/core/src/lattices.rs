//! Coroot lattice, coweight lattice, the center `Z(G) ≅ P^∨/Q^∨`, its
//! subgroups, and the intermediate lattices `Q^∨ ⊆ Λ′ ⊆ P^∨`.
//!
//! The center is computed from the Smith normal form of `Aᵀ`, the matrix
//! whose columns are the simple coroots written in the fundamental coweight
//! basis. If `U Aᵀ V = diag(s)`, a coweight with fundamental-coweight
//! coordinates `y` has class `(U y)_i mod s_i`. Only factors with `s_i > 1`
//! are kept.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{column_hermite_basis, fmt_qvec, q, smith_normal_form, Matrix, Q};
use crate::rootsys::RootSystem;

/// Coefficient bound for the dominant representative search, in the
/// fundamental coweight basis.
pub const REP_SEARCH_RADIUS: i64 = 3;

/// An element of a finite abelian group `⊕ ℤ/d_i`, one coordinate per
/// invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CenterElement {
    coeffs: Vec<i64>,
}

impl CenterElement {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for CenterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterGroup {
    invariant_factors: Vec<i64>,
    /// Coweights (coroot coordinates) lifting the canonical generators.
    generators: Vec<Vec<Q>>,
    /// Rows of `U Aᵀ` for the nontrivial factors: applied to a coweight in
    /// coroot coordinates they give its class before reduction.
    class_map: Matrix<i64>,
}

impl CenterGroup {
    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.invariant_factors.iter().product::<i64>() as usize
    }

    pub fn identity(&self) -> CenterElement {
        CenterElement {
            coeffs: vec![0; self.invariant_factors.len()],
        }
    }

    /// Validates coordinates against the invariant factors.
    pub fn element(&self, coeffs: Vec<i64>) -> Result<CenterElement> {
        let ok = coeffs.len() == self.invariant_factors.len()
            && coeffs
                .iter()
                .zip(&self.invariant_factors)
                .all(|(&c, &d)| (0..d).contains(&c));
        if !ok {
            return Err(Error::ElementOutOfRange {
                coeffs,
                factors: self.invariant_factors.clone(),
            });
        }
        Ok(CenterElement { coeffs })
    }

    fn reduce(&self, coeffs: impl IntoIterator<Item = i64>) -> CenterElement {
        CenterElement {
            coeffs: coeffs
                .into_iter()
                .zip(&self.invariant_factors)
                .map(|(c, &d)| c.rem_euclid(d))
                .collect(),
        }
    }

    pub fn add(&self, a: &CenterElement, b: &CenterElement) -> CenterElement {
        self.reduce(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y))
    }

    pub fn neg(&self, a: &CenterElement) -> CenterElement {
        self.reduce(a.coeffs.iter().map(|x| -x))
    }

    pub fn scale(&self, a: &CenterElement, k: i64) -> CenterElement {
        self.reduce(a.coeffs.iter().map(|x| x * k))
    }

    /// All elements, lexicographic in the coordinates.
    pub fn elements(&self) -> Vec<CenterElement> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|coeffs| CenterElement { coeffs }).collect()
    }

    /// Class of a coweight (coroot coordinates) modulo the coroot lattice.
    pub fn class_of(&self, x: &[Q]) -> Result<CenterElement> {
        let n = self.class_map.cols();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let raw = self.class_map.to_rational().mul_vec(x);
        if raw.iter().any(|c| !c.is_integer()) {
            return Err(Error::NotACoweight(fmt_qvec(x)));
        }
        Ok(self.reduce(raw.into_iter().map(|c| c.to_integer())))
    }

    /// A coweight in the class `e`: `Σ e_i · generator_i`.
    pub fn lift(&self, e: &CenterElement) -> Vec<Q> {
        let n = self.class_map.cols();
        let mut v = vec![Q::zero(); n];
        for (c, g) in e.coeffs.iter().zip(&self.generators) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += q(*c) * gi;
            }
        }
        v
    }
}

pub fn center(rs: &RootSystem) -> CenterGroup {
    let n = rs.rank();
    let at = rs.cartan().transpose();
    let snf = smith_normal_form(&at);
    let u_inv = snf
        .left
        .to_rational()
        .inverse()
        .expect("unimodular transform");
    let weights = rs.fundamental_coweights();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    let mut class_rows = Vec::new();
    let u_at = snf.left.mul(&at);
    for (i, &s) in snf.diagonal.iter().enumerate() {
        if s == 1 {
            continue;
        }
        invariant_factors.push(s);
        // Fundamental-coweight coordinates U⁻¹ e_i, mapped to coroot coordinates.
        generators.push(weights.mul_vec(&u_inv.column(i)));
        class_rows.push(u_at.row(i).to_vec());
    }
    let class_map = if class_rows.is_empty() {
        Matrix::zeros(0, n)
    } else {
        Matrix::from_rows(class_rows)
    };
    CenterGroup {
        invariant_factors,
        generators,
        class_map,
    }
}

/// A subgroup of the center, with its elements enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSubgroup {
    ambient: CenterGroup,
    generators: Vec<CenterElement>,
    elements: Vec<CenterElement>,
}

impl CenterSubgroup {
    pub fn ambient(&self) -> &CenterGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[CenterElement] {
        &self.generators
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[CenterElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: &CenterElement) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &CenterSubgroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }
}

pub fn subgroup_from_generators(
    cg: &CenterGroup,
    gens: Vec<CenterElement>,
) -> Result<CenterSubgroup> {
    for g in &gens {
        cg.element(g.coeffs.clone())?;
    }
    let mut seen: BTreeSet<CenterElement> = BTreeSet::new();
    let mut frontier = vec![cg.identity()];
    seen.insert(cg.identity());
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = cg.add(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(CenterSubgroup {
        ambient: cg.clone(),
        generators: gens,
        elements: seen.into_iter().collect(),
    })
}

pub fn trivial_subgroup(cg: &CenterGroup) -> CenterSubgroup {
    subgroup_from_generators(cg, Vec::new()).expect("no generators to validate")
}

pub fn full_subgroup(cg: &CenterGroup) -> CenterSubgroup {
    let gens = (0..cg.invariant_factors.len())
        .map(|i| {
            let mut c = vec![0; cg.invariant_factors.len()];
            c[i] = 1;
            CenterElement { coeffs: c }
        })
        .collect();
    subgroup_from_generators(cg, gens).expect("unit vectors are in range")
}

/// Every subgroup of the center, each generated by at most two elements
/// (the center has at most two invariant factors). Ordered by order, then
/// by element list.
pub fn all_subgroups(cg: &CenterGroup) -> Vec<CenterSubgroup> {
    let elems = cg.elements();
    let mut found: BTreeSet<(usize, Vec<CenterElement>)> = BTreeSet::new();
    let mut out = Vec::new();
    let mut consider = |gens: Vec<CenterElement>| {
        let sub = subgroup_from_generators(cg, gens).expect("elements are in range");
        if found.insert((sub.order(), sub.elements.clone())) {
            out.push(sub);
        }
    };
    consider(Vec::new());
    for (i, a) in elems.iter().enumerate() {
        if a.is_identity() {
            continue;
        }
        consider(vec![a.clone()]);
        for b in elems.iter().skip(i + 1) {
            if !b.is_identity() {
                consider(vec![a.clone(), b.clone()]);
            }
        }
    }
    out.sort_by(|x, y| (x.order(), &x.elements).cmp(&(y.order(), &y.elements)));
    out
}

/// A full-rank lattice in the Cartan subalgebra, columns in coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: Matrix<Q>,
    inverse: Matrix<Q>,
}

impl Lattice {
    pub fn from_basis(basis: Matrix<Q>) -> Result<Self> {
        let inverse = basis
            .inverse()
            .ok_or_else(|| Error::Inconsistent("singular lattice basis".into()))?;
        Ok(Lattice { basis, inverse })
    }

    pub fn coroot(rank: usize) -> Self {
        Lattice::from_basis(Matrix::identity(rank)).expect("identity is invertible")
    }

    pub fn basis(&self) -> &Matrix<Q> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Q>> {
        self.basis.columns()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.rank() && self.inverse.mul_vec(x).iter().all(|c| c.is_integer())
    }

    /// `[Λ′ : Q^∨] = 1 / |det basis|`.
    pub fn index_over_coroot(&self) -> Q {
        q(1) / self.basis.determinant().abs()
    }

    /// Gram matrix of `B` on this basis.
    pub fn gram(&self, rs: &RootSystem) -> Matrix<Q> {
        self.basis
            .transpose()
            .mul(&rs.coroot_gram().to_rational())
            .mul(&self.basis)
    }
}

/// Lattice spanned by a set of rational generators (which must span the space).
pub fn lattice_spanned_by(generators: &[Vec<Q>]) -> Result<Lattice> {
    let m = Matrix::from_columns(generators);
    let den = m.denominator_lcm();
    let int = m
        .scale(q(den))
        .to_integer()
        .expect("cleared denominators");
    let h = column_hermite_basis(&int);
    if h.cols() != h.rows() {
        return Err(Error::Inconsistent("generators do not span".into()));
    }
    Lattice::from_basis(h.to_rational().scale(Q::new(1, den)))
}

/// The preimage of `z` in the coweight lattice: `Q^∨` together with one
/// coweight for each generator of `z`.
pub fn intermediate_lattice(rs: &RootSystem, z: &CenterSubgroup) -> Result<Lattice> {
    let n = rs.rank();
    let mut gens: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| q((i == j) as i64)).collect())
        .collect();
    gens.extend(z.generators.iter().map(|g| z.ambient.lift(g)));
    let lat = lattice_spanned_by(&gens)?;
    if lat.index_over_coroot() != q(z.order() as i64) {
        return Err(Error::Inconsistent(format!(
            "index {} differs from subgroup order {}",
            lat.index_over_coroot(),
            z.order()
        )));
    }
    Ok(lat)
}

pub fn coweight_lattice(rs: &RootSystem) -> Lattice {
    Lattice::from_basis(rs.fundamental_coweights().clone()).expect("invertible")
}

/// The dominant coweight of least `B`-norm in the class `e`.
///
/// Searches fundamental-coweight coefficients in `[0, REP_SEARCH_RADIUS]`.
/// Ties go to the lexicographically smallest coefficient vector. The
/// coweight Gram matrix has nonnegative entries, so the norm only grows as
/// coefficients grow and partial sums can be pruned against the best so far.
pub fn minimal_dominant_rep(rs: &RootSystem, cg: &CenterGroup, e: &CenterElement) -> Result<Vec<Q>> {
    cg.element(e.coeffs.clone())?;
    let n = rs.rank();
    if e.is_identity() {
        return Ok(vec![Q::zero(); n]);
    }
    let w = rs.coweight_gram();
    debug_assert!(w.entries().all(|x| !x.is_negative()));
    let classes: Vec<CenterElement> = (0..n)
        .map(|j| cg.class_of(&rs.fundamental_coweight(j)).expect("coweight"))
        .collect();

    struct Search<'a> {
        w: &'a Matrix<Q>,
        cg: &'a CenterGroup,
        classes: &'a [CenterElement],
        target: &'a CenterElement,
        best: Option<(Q, Vec<i64>)>,
    }

    impl Search<'_> {
        fn better(&self, norm: Q, coeffs: &[i64]) -> bool {
            match &self.best {
                None => true,
                Some((bn, bc)) => norm < *bn || (norm == *bn && coeffs < bc.as_slice()),
            }
        }

        fn dfs(&mut self, coeffs: &mut Vec<i64>, norm: Q, class: CenterElement) {
            if let Some((bn, _)) = &self.best {
                if norm > *bn {
                    return;
                }
            }
            let i = coeffs.len();
            if i == self.classes.len() {
                if class == *self.target && self.better(norm, coeffs) {
                    self.best = Some((norm, coeffs.clone()));
                }
                return;
            }
            for c in 0..=REP_SEARCH_RADIUS {
                // norm of (prefix, c, 0...) from norm of (prefix, 0, 0...).
                let mut cross = Q::zero();
                for (j, &cj) in coeffs.iter().enumerate() {
                    cross += q(cj) * self.w[(j, i)];
                }
                let next = norm + q(2 * c) * cross + q(c * c) * self.w[(i, i)];
                let next_class = self.cg.add(&class, &self.cg.scale(&self.classes[i], c));
                coeffs.push(c);
                self.dfs(coeffs, next, next_class);
                coeffs.pop();
            }
        }
    }

    let mut search = Search {
        w,
        cg,
        classes: &classes,
        target: e,
        best: None,
    };
    // Seed the bound with single fundamental coweights; nontrivial classes
    // are normally represented by a minuscule one.
    for (j, cls) in classes.iter().enumerate() {
        if cls == e {
            let mut coeffs = vec![0; n];
            coeffs[j] = 1;
            let norm = w[(j, j)];
            if search.better(norm, &coeffs) {
                search.best = Some((norm, coeffs));
            }
        }
    }
    search.dfs(&mut Vec::with_capacity(n), Q::zero(), cg.identity());
    let (_, coeffs) = search.best.ok_or(Error::NoDominantRepresentative {
        radius: REP_SEARCH_RADIUS,
    })?;
    let y: Vec<Q> = coeffs.into_iter().map(q).collect();
    Ok(rs.fundamental_coweights().mul_vec(&y))
}

/// Minimal dominant representatives for every element of a subgroup, in
/// the subgroup's element order.
pub fn representatives(rs: &RootSystem, z: &CenterSubgroup) -> Result<Vec<Vec<Q>>> {
    z.elements
        .iter()
        .map(|e| minimal_dominant_rep(rs, &z.ambient, e))
        .collect()
}
