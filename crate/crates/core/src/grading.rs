//! The monomial model of the special modules.
//!
//! A special module `S_{i_p}` is represented only through the character of its
//! monomials: `x^p y^q` lies in `S_t` iff `p + a·q ≡ t (mod r)`. Every
//! homomorphism `S_{i_p} → S_{i_q}` between specials is multiplication by a
//! polynomial of weight `i_q − i_p`, and conversely every such monomial gives
//! one, so the bigraded Hom-space is one-dimensional exactly in those
//! bidegrees. No roots of unity are ever materialised.

use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use crate::cfrac::{GroupParams, IJSeries};
use crate::quiver::{ArrowLabel, Quiver, Vertex};
use crate::relations::Relation;

/// `x^ex y^ey`. Also used as the bidegree of arrows and paths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub ex: u64,
    pub ey: u64,
}

pub type Bidegree = Monomial;

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0 };

    pub const fn new(ex: u64, ey: u64) -> Self {
        Self { ex, ey }
    }

    pub fn total(&self) -> u64 {
        self.ex + self.ey
    }

    /// Componentwise `self − other`, if nonnegative.
    pub fn checked_div(&self, other: Monomial) -> Option<Monomial> {
        Some(Monomial::new(self.ex.checked_sub(other.ex)?, self.ey.checked_sub(other.ey)?))
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.ex + rhs.ex, self.ey + rhs.ey)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, var: &str, e: u64| match e {
            0 => Ok(()),
            1 => f.write_str(var),
            e => write!(f, "{var}^{e}"),
        };
        if self.ex == 0 && self.ey == 0 {
            return f.write_str("1");
        }
        part(f, "x", self.ex)?;
        part(f, "y", self.ey)
    }
}

/// Arrow id → `φ(arrow)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiTable {
    pub monomials: Vec<Monomial>,
}

impl PhiTable {
    pub fn get(&self, arrow: usize) -> Monomial {
        self.monomials[arrow]
    }

    pub fn of_path(&self, arrows: &[usize]) -> Monomial {
        arrows.iter().fold(Monomial::ONE, |acc, &a| acc * self.monomials[a])
    }
}

/// The labelling map on arrows.
///
/// Clockwise arrows carry powers of `x`, anticlockwise arrows powers of `y`,
/// and the `s`-th arrow of the `k`-sequence (which starts with `c_{1,0}` and
/// ends with `a_{n,0}`) carries
/// `x^{i_{l−1} − (s−V_l+1)·i_l} y^{(s−V_l)·j_l − j_{l−1}}` with `l = l_s`.
pub fn phi(q: &Quiver, series: &IJSeries) -> PhiTable {
    let n = q.n();
    let (i, j) = (&series.i, &series.j);
    let layout = q.layout();
    let k_mono = |s: usize| {
        let l = layout.l[s];
        let m = (s - layout.big_v[l]) as u64;
        Monomial::new(i[l - 1] - (m + 1) * i[l], m * j[l] - j[l - 1])
    };
    let monomials = q
        .arrows()
        .iter()
        .map(|arrow| match arrow.label {
            ArrowLabel::Cl { tail: 0, .. } => Monomial::new(i[n] - i[n + 1], 0),
            ArrowLabel::Cl { tail, .. } => Monomial::new(i[tail - 1] - i[tail], 0),
            ArrowLabel::An { tail, .. } if tail == n => Monomial::new(0, j[n + 1] - j[n]),
            ArrowLabel::An { tail, .. } => Monomial::new(0, j[tail + 1] - j[tail]),
            ArrowLabel::A1 => Monomial::new(1, 0),
            ArrowLabel::A2 => Monomial::new(0, 1),
            ArrowLabel::K { .. } | ArrowLabel::C1 | ArrowLabel::C2 | ArrowLabel::SmallK { .. } => {
                k_mono(arrow.k_index.expect("k-sequence arrow"))
            }
        })
        .collect();
    PhiTable { monomials }
}

/// `a·j_p ≡ i_p (mod r)` for every `p`: the generators `x^{i_p}` and `y^{j_p}`
/// of `S_{i_p}` have the same weight.
pub fn weights_consistent(series: &IJSeries) -> bool {
    let (r, a) = (series.r() as u128, series.a() as u128);
    series
        .i
        .iter()
        .zip(&series.j)
        .all(|(&ip, &jp)| (a * jp as u128) % r == ip as u128 % r)
}

/// Dimension (0 or 1) of `Hom(S_{i_p}, S_{i_q})` in bidegree `(z1, z2)`.
pub fn hom_indicator(
    params: GroupParams,
    series: &IJSeries,
    p: Vertex,
    q: Vertex,
    z1: u64,
    z2: u64,
) -> u8 {
    let r = params.r();
    let w = params.weight(Monomial::new(z1, z2));
    let target = (series.i[q] % r + r - series.i[p] % r) % r;
    u8::from(w == target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub index: usize,
    pub lhs: Monomial,
    pub rhs: Monomial,
    pub bidegrees_equal: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub checks: Vec<RelationCheck>,
}

impl HomogeneityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Both sides of each relation must have equal bidegree and equal image
/// under `φ`.
pub fn check_homogeneity(q: &Quiver, rels: &[Relation], phi: &PhiTable) -> HomogeneityReport {
    let checks = rels
        .iter()
        .enumerate()
        .map(|(index, rel)| {
            let lhs = phi.of_path(&rel.lhs.arrows);
            let rhs = phi.of_path(&rel.rhs.arrows);
            let valid = rel.lhs.is_valid(q) && rel.rhs.is_valid(q);
            let bidegrees_equal = rel.lhs.bidegree == rel.rhs.bidegree;
            RelationCheck {
                index,
                lhs,
                rhs,
                bidegrees_equal,
                passed: valid && bidegrees_equal && lhs == rhs && rel.lhs.bidegree == lhs,
            }
        })
        .collect();
    HomogeneityReport { checks }
}
