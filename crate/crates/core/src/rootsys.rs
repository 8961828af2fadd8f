//! Cartan data and the basic inner product for the simple Lie types.
//!
//! Conventions used throughout the crate:
//!
//! * Simple roots are numbered as in Bourbaki.
//! * `cartan[(i, j)] = ⟨α_j, α_i^∨⟩`, so row `i` belongs to the coroot `α_i^∨`.
//! * Vectors in the Cartan subalgebra are written in the coroot basis, so the
//!   coroot lattice is exactly `ℤ^rank`.
//! * The basic inner product `B` is normalized so that short coroots have
//!   `B(α^∨, α^∨) = 2`. Its Gram matrix on the coroot basis is
//!   `G = A · D` with `D = diag(B(α_j^∨, α_j^∨) / 2)`, which gives back the
//!   Cartan matrix as `A[i][j] = 2 G[i][j] / G[j][j]`.
//! * Column `j` of `fundamental_coweights` is `ω_j^∨`, defined by
//!   `⟨α_i, ω_j^∨⟩ = δ_ij`; the matrix is `(Aᵀ)⁻¹`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot, q, Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn valid_ranks(self) -> &'static str {
        match self {
            Family::A => "rank >= 1",
            Family::B | Family::C => "rank >= 2",
            Family::D => "rank >= 3",
            Family::E => "rank in {6, 7, 8}",
            Family::F => "rank = 4",
            Family::G => "rank = 2",
        }
    }

    fn admits(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A simple Lie type such as `A3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.admits(rank) {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                valid: family.valid_ranks(),
            });
        }
        Ok(LieType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every valid type of rank at most `max_rank`, ordered by family then rank.
    pub fn all_up_to(max_rank: usize) -> Vec<LieType> {
        Family::ALL
            .iter()
            .flat_map(|&f| (1..=max_rank).filter_map(move |r| LieType::new(f, r).ok()))
            .collect()
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::UnknownFamily(String::new()))?;
        let family: Family = letter.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownFamily(s.to_string()))?;
        LieType::new(family, rank)
    }
}

/// Bourbaki Cartan matrix with `A[i][j] = ⟨α_j, α_i^∨⟩`.
fn cartan_matrix(t: LieType) -> Matrix<i64> {
    let n = t.rank;
    let mut a = Matrix::<i64>::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[(i, j)] = -1;
        a[(j, i)] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            // 1-3-4-5-6(-7-8) with 2 attached to 4 (0-based: 0-2-3-4..., 1-3).
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    match t.family {
        // α_n short.
        Family::B => a[(n - 1, n - 2)] = -2,
        // α_n long.
        Family::C => a[(n - 2, n - 1)] = -2,
        // α_1, α_2 long; α_3, α_4 short.
        Family::F => a[(2, 1)] = -2,
        // α_1 short, α_2 long.
        Family::G => a[(0, 1)] = -3,
        _ => {}
    }
    a
}

/// Squared coroot lengths `B(α_j^∨, α_j^∨)`, normalized so the shortest is 2.
///
/// Solved from the symmetry of `A · D` by walking the Dynkin diagram.
fn coroot_square_lengths(a: &Matrix<i64>) -> Vec<Q> {
    let n = a.rows();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(q(1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let di = d[i].expect("visited");
        for j in 0..n {
            if j != i && a[(i, j)] != 0 && d[j].is_none() {
                // A[i][j] d_j = A[j][i] d_i
                d[j] = Some(di * q(a[(j, i)]) / q(a[(i, j)]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let min = *d.iter().min().expect("nonempty");
    d.into_iter().map(|x| x / min * q(2)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Matrix<i64>,
    coroot_gram: Matrix<i64>,
    fundamental_coweights: Matrix<Q>,
    coweight_gram: Matrix<Q>,
}

impl RootSystem {
    pub fn new(t: LieType) -> Self {
        build_root_system(t)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn cartan(&self) -> &Matrix<i64> {
        &self.cartan
    }

    /// `B(α_i^∨, α_j^∨)`.
    pub fn coroot_gram(&self) -> &Matrix<i64> {
        &self.coroot_gram
    }

    /// Columns are the fundamental coweights in coroot coordinates.
    pub fn fundamental_coweights(&self) -> &Matrix<Q> {
        &self.fundamental_coweights
    }

    pub fn fundamental_coweight(&self, j: usize) -> Vec<Q> {
        self.fundamental_coweights.column(j)
    }

    /// `B(ω_i^∨, ω_j^∨)`.
    pub fn coweight_gram(&self) -> &Matrix<Q> {
        &self.coweight_gram
    }

    /// `B(x, y)` for vectors in coroot coordinates.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        let n = self.rank();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let gy = self.coroot_gram.to_rational().mul_vec(y);
        Ok(dot(x, &gy))
    }

    /// The values `⟨α_i, x⟩`, i.e. coordinates of `x` in the fundamental
    /// coweight basis.
    pub fn root_pairings(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: x.len(),
            });
        }
        Ok(self.cartan.transpose().to_rational().mul_vec(x))
    }

    pub fn is_coweight(&self, x: &[Q]) -> bool {
        self.root_pairings(x)
            .map(|p| p.iter().all(|c| c.is_integer()))
            .unwrap_or(false)
    }

    pub fn is_dominant(&self, x: &[Q]) -> bool {
        self.root_pairings(x)
            .map(|p| p.iter().all(|c| *c >= Q::zero()))
            .unwrap_or(false)
    }

    /// Recovers `2 G[i][j] / G[j][j]`, which must equal the Cartan matrix.
    pub fn recovered_cartan(&self) -> Option<Matrix<i64>> {
        let g = &self.coroot_gram;
        let n = self.rank();
        let mut out = Matrix::<i64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (num, den) = (2 * g[(i, j)], g[(j, j)]);
                if !num.is_multiple_of(&den) {
                    return None;
                }
                out[(i, j)] = num / den;
            }
        }
        Some(out)
    }
}

pub fn build_root_system(t: LieType) -> RootSystem {
    let cartan = cartan_matrix(t);
    let d = coroot_square_lengths(&cartan);
    let n = t.rank;
    let gram_q = Matrix::from_fn(n, n, |i, j| q(cartan[(i, j)]) * d[j] / q(2));
    let coroot_gram = gram_q
        .to_integer()
        .expect("basic inner product is integral on the coroot lattice");
    debug_assert!(gram_q.is_symmetric());
    let fundamental_coweights = cartan
        .transpose()
        .to_rational()
        .inverse()
        .expect("Cartan matrices are invertible");
    let coweight_gram = fundamental_coweights
        .transpose()
        .mul(&gram_q)
        .mul(&fundamental_coweights);
    RootSystem {
        lie_type: t,
        cartan,
        coroot_gram,
        fundamental_coweights,
        coweight_gram,
    }
}
