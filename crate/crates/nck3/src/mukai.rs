//! The algebraic Mukai lattice of a polarized K3 surface.
//!
//! A class of rank `r`, first Chern class `c`, and second Chern number
//! `c2` has Mukai vector `(r, c, r + c^2/2 - c2)`: the product of the
//! Chern character with the square root `(1, 0, 1)` of the Todd class.
//! The Mukai pairing is normalized so that it equals minus the Euler
//! pairing of the underlying classes, which the tests cross-check against
//! Riemann-Roch.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, Matrix};
use crate::ratio::serde_rat;
use crate::{jsonio, Error, Int, Rat, Result};

/// A projective K3 surface presented by the Gram matrix of its
/// Neron-Severi lattice (even, signature `(1, rank-1)` for honest
/// surfaces; only symmetry and evenness are enforced here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedK3Model {
    ns_gram: Matrix,
}

impl PolarizedK3Model {
    pub fn new(ns_gram: Matrix) -> Result<Self> {
        let n = ns_gram.len();
        for row in &ns_gram {
            if row.len() != n {
                return Err(Error::InvalidLattice("NS gram matrix is not square".into()));
            }
        }
        for i in 0..n {
            if ns_gram[i][i].is_odd() {
                return Err(Error::InvalidLattice("NS lattice must be even".into()));
            }
            for j in 0..i {
                if ns_gram[i][j] != ns_gram[j][i] {
                    return Err(Error::InvalidLattice("NS gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(PolarizedK3Model { ns_gram })
    }

    pub fn from_i64(gram: &[&[i64]]) -> Result<Self> {
        PolarizedK3Model::new(
            gram.iter().map(|r| r.iter().map(|&e| Int::from(e)).collect()).collect(),
        )
    }

    pub fn ns_rank(&self) -> usize {
        self.ns_gram.len()
    }

    pub fn ns_gram(&self) -> &Matrix {
        &self.ns_gram
    }

    /// Intersection number `a . b` on the surface.
    pub fn ns_pair(&self, a: &[Int], b: &[Int]) -> Result<Int> {
        if a.len() != self.ns_rank() || b.len() != self.ns_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ns_rank(),
                got: if a.len() != self.ns_rank() { a.len() } else { b.len() },
            });
        }
        Ok(linalg::dot(&linalg::mat_vec(&self.ns_gram, b), a))
    }
}

/// A class `(r, c, s)` in the extended Neron-Severi lattice
/// `Z + NS(S) + Z`. For classes of actual objects `s` is an integer;
/// raw lattice arithmetic permits half-integers, so `s` is carried as
/// a rational with `2s` integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiVector {
    #[serde(with = "jsonio::int_scalar")]
    pub r: Int,
    #[serde(with = "jsonio::int_vec")]
    pub c: Vec<Int>,
    #[serde(with = "serde_rat")]
    pub s: Rat,
}

impl MukaiVector {
    /// Builds a raw lattice element; `2s` must be an integer.
    pub fn new(r: Int, c: Vec<Int>, s: Rat) -> Result<Self> {
        if !(Rat::from(Int::from(2)) * &s).is_integer() {
            return Err(Error::InvalidRational(format!(
                "degree-4 component {s} is not a half-integer"
            )));
        }
        Ok(MukaiVector { r, c, s })
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero() && self.c.iter().all(Int::is_zero)
    }

    pub fn add(&self, other: &MukaiVector) -> MukaiVector {
        assert_eq!(self.c.len(), other.c.len());
        MukaiVector {
            r: &self.r + &other.r,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
            s: &self.s + &other.s,
        }
    }

    pub fn neg(&self) -> MukaiVector {
        MukaiVector {
            r: -self.r.clone(),
            c: self.c.iter().map(|x| -x.clone()).collect(),
            s: -self.s.clone(),
        }
    }
}

impl std::fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, (", self.r)?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "), {})", crate::ratio::rat_to_string(&self.s))
    }
}

/// Coarse position of a class in the Mukai lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MukaiClass {
    /// Square `-2`: the class of a rigid, spherical object.
    Spherical,
    /// Square `0`: signals a (possibly twisted) K3 partner.
    Isotropic,
    /// Positive square: positive-dimensional moduli.
    Positive,
    /// Negative square other than `-2`.
    NegativeOther,
}

/// Mukai vector `(r, c, r + c^2/2 - c2)` of a class with Chern data
/// `(r, c, c2)`; the degree-4 component is always integral here.
pub fn mukai_vector(surface: &PolarizedK3Model, r: &Int, c: &[Int], c2: &Int) -> Result<MukaiVector> {
    let csq = surface.ns_pair(c, c)?;
    let s = Rat::from(r.clone()) + Rat::new(csq, Int::from(2)) - Rat::from(c2.clone());
    assert!(s.is_integer(), "even NS lattice forces an integral Mukai vector");
    MukaiVector::new(r.clone(), c.to_vec(), s)
}

/// The Mukai pairing `c_v . c_w - r_v s_w - s_v r_w`.
///
/// On classes of objects this equals minus the Euler pairing.
pub fn mukai_pairing(surface: &PolarizedK3Model, v: &MukaiVector, w: &MukaiVector) -> Result<Rat> {
    let cc = surface.ns_pair(&v.c, &w.c)?;
    Ok(Rat::from(cc) - Rat::from(v.r.clone()) * &w.s - &v.s * Rat::from(w.r.clone()))
}

/// Square of a class under the Mukai pairing.
pub fn mukai_square(surface: &PolarizedK3Model, v: &MukaiVector) -> Result<Rat> {
    mukai_pairing(surface, v, v)
}

/// Classifies a nonzero class by the sign of its Mukai square.
pub fn classify(surface: &PolarizedK3Model, v: &MukaiVector) -> Result<MukaiClass> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let sq = mukai_square(surface, v)?;
    let minus_two = -Rat::from(Int::from(2));
    Ok(if sq == minus_two {
        MukaiClass::Spherical
    } else if sq.is_zero() {
        MukaiClass::Isotropic
    } else if sq.is_positive() {
        MukaiClass::Positive
    } else {
        MukaiClass::NegativeOther
    })
}

/// Euler characteristic of a pair of line bundles by Riemann-Roch:
/// `chi(L1, L2) = 2 + (c1(L2) - c1(L1))^2 / 2`. Used as the independent
/// oracle for the pairing.
pub fn euler_line_bundles(surface: &PolarizedK3Model, c1: &[Int], c2: &[Int]) -> Result<Rat> {
    let diff: Vec<Int> = c2.iter().zip(c1).map(|(a, b)| a - b).collect();
    let sq = surface.ns_pair(&diff, &diff)?;
    Ok(Rat::from(Int::from(2)) + Rat::new(sq, Int::from(2)))
}
