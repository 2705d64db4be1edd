//! The Mukai lattice of the Kuznetsov component of a cubic fourfold.
//!
//! The algebraic lattice carries a distinguished positive definite `A2`
//! spanned by two marked classes. This module implements the two lattice
//! isometries that every such lattice carries (the order-3 degree-shift
//! action and an orientation-reversing involution), the associated-K3
//! search, moduli-space numerology, the invariants of the 20-dimensional
//! locally complete families, and the rank-24 reference embedding.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::lattice::{catalog, LatticeModel, LatticeVector, Sublattice};
use crate::linalg::{self, Matrix};
use crate::{jsonio, Error, Int, Rat, Result};

/// An even lattice with a marked saturated `A2` sublattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "KuznetsovWire", into = "KuznetsovWire")]
pub struct KuznetsovLattice {
    full: LatticeModel,
    lambda1: LatticeVector,
    lambda2: LatticeVector,
}

#[derive(Serialize, Deserialize)]
struct KuznetsovWire {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
    #[serde(with = "jsonio::int_matrix")]
    gram: Matrix,
    #[serde(with = "jsonio::int_vec")]
    lambda1: Vec<Int>,
    #[serde(with = "jsonio::int_vec")]
    lambda2: Vec<Int>,
}

impl TryFrom<KuznetsovWire> for KuznetsovLattice {
    type Error = Error;
    fn try_from(w: KuznetsovWire) -> Result<Self> {
        let mut full = LatticeModel::new(w.gram)?;
        if let Some(label) = w.label {
            full = full.with_label(label);
        }
        KuznetsovLattice::new(full, LatticeVector::new(w.lambda1), LatticeVector::new(w.lambda2))
    }
}

impl From<KuznetsovLattice> for KuznetsovWire {
    fn from(k: KuznetsovLattice) -> Self {
        KuznetsovWire {
            label: k.full.label().map(str::to_owned),
            gram: k.full.gram().clone(),
            lambda1: k.lambda1.coords().to_vec(),
            lambda2: k.lambda2.coords().to_vec(),
        }
    }
}

impl KuznetsovLattice {
    /// Marks an `A2` inside `full`. The marked pair must have Gram
    /// `(2 -1; -1 2)` and span a saturated rank-2 subgroup.
    pub fn new(full: LatticeModel, lambda1: LatticeVector, lambda2: LatticeVector) -> Result<Self> {
        let p11 = full.pair(&lambda1, &lambda1)?;
        let p12 = full.pair(&lambda1, &lambda2)?;
        let p22 = full.pair(&lambda2, &lambda2)?;
        if p11 != Int::from(2) || p22 != Int::from(2) || p12 != Int::from(-1) {
            return Err(Error::InvalidLattice(format!(
                "marked pair has Gram ({p11} {p12}; {p12} {p22}), expected (2 -1; -1 2)"
            )));
        }
        let rows: Matrix = vec![lambda1.coords().to_vec(), lambda2.coords().to_vec()];
        let sat = linalg::saturation(&rows, full.rank());
        let (canon, _) = linalg::row_hnf(&rows);
        let canon: Matrix = canon.into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
        if sat != canon {
            return Err(Error::InvalidLattice("marked A2 span is not saturated".into()));
        }
        Ok(KuznetsovLattice { full, lambda1, lambda2 })
    }

    /// The smallest model: the `A2` lattice itself, marked tautologically.
    pub fn a2_only() -> Self {
        let full = catalog("A2").expect("catalog");
        KuznetsovLattice::new(full, LatticeVector::from_i64(&[1, 0]), LatticeVector::from_i64(&[0, 1]))
            .expect("A2 marks itself")
    }

    /// Marks the first two coordinates of any lattice of the form
    /// `A2 + M`, given by a catalog-style name.
    pub fn from_a2_plus(name: &str) -> Result<Self> {
        let full = catalog(name)?;
        if full.rank() < 2 {
            return Err(Error::InvalidLattice(format!("`{name}` has rank < 2")));
        }
        let mut l1 = vec![0i64; full.rank()];
        let mut l2 = vec![0i64; full.rank()];
        l1[0] = 1;
        l2[1] = 1;
        KuznetsovLattice::new(full, LatticeVector::from_i64(&l1), LatticeVector::from_i64(&l2))
    }

    pub fn full(&self) -> &LatticeModel {
        &self.full
    }

    pub fn lambda1(&self) -> &LatticeVector {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &LatticeVector {
        &self.lambda2
    }

    /// The class `a*lambda1 + b*lambda2` in full coordinates.
    pub fn lambda_class(&self, a: &Int, b: &Int) -> LatticeVector {
        self.lambda1.scaled(a).add(&self.lambda2.scaled(b))
    }

    /// Rational coefficients `(a, b)` of the orthogonal projection of `v`
    /// onto the marked `A2` plane.
    pub fn a2_coefficients(&self, v: &LatticeVector) -> Result<(Rat, Rat)> {
        let p1 = Rat::from(self.full.pair(v, &self.lambda1)?);
        let p2 = Rat::from(self.full.pair(v, &self.lambda2)?);
        // inverse of (2 -1; -1 2) is (2 1; 1 2)/3
        let third = Rat::new(Int::one(), Int::from(3));
        let a = &third * (Rat::from(Int::from(2)) * &p1 + &p2);
        let b = &third * (&p1 + Rat::from(Int::from(2)) * &p2);
        Ok((a, b))
    }

    fn shift_by_lambdas(&self, v: &LatticeVector, c1: &Rat, c2: &Rat) -> LatticeVector {
        assert!(c1.is_integer() && c2.is_integer(), "isometry must stay integral on a saturated A2");
        v.add(&self.lambda1.scaled(&c1.to_integer())).add(&self.lambda2.scaled(&c2.to_integer()))
    }

    /// The order-3 isometry sending `lambda1 -> lambda2 -> -lambda1-lambda2`
    /// and fixing the orthogonal complement of the marked plane pointwise.
    pub fn degree_shift(&self, v: &LatticeVector) -> Result<LatticeVector> {
        let (a, b) = self.a2_coefficients(v)?;
        // v = a l1 + b l2 + u maps to a l2 + b (-l1-l2) + u
        let c1 = -(&a + &b);
        let c2 = &a - Rat::from(Int::from(2)) * &b;
        Ok(self.shift_by_lambdas(v, &c1, &c2))
    }

    /// The involution sending `lambda1 -> -lambda1`, `lambda2 -> lambda1+lambda2`
    /// and fixing the complement; its restriction to `A2` has determinant -1.
    pub fn orientation_reversal(&self, v: &LatticeVector) -> Result<LatticeVector> {
        let (a, b) = self.a2_coefficients(v)?;
        let c1 = &b - Rat::from(Int::from(2)) * &a;
        Ok(self.shift_by_lambdas(v, &c1, &Rat::zero()))
    }
}

/// Numerical conclusions about a moduli space of stable objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliReport {
    pub nonempty: bool,
    #[serde(with = "jsonio::int_scalar")]
    pub dim: Int,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deformation_class: Option<String>,
}

/// Dimension and non-emptiness for a primitive class `v`: the space is
/// non-empty exactly when `v^2 + 2 >= 0`, of dimension `v^2 + 2`, and a
/// deformation of a Hilbert scheme of `(v^2+2)/2` points when `v^2 >= 0`.
pub fn moduli_info(k: &KuznetsovLattice, v: &LatticeVector) -> Result<ModuliReport> {
    if v.len() != k.full().rank() {
        return Err(Error::DimensionMismatch { expected: k.full().rank(), got: v.len() });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !k.full().is_primitive(v)? {
        return Err(Error::Imprimitive);
    }
    let square = k.full().norm(v)?;
    let dim = &square + Int::from(2);
    let nonempty = !dim.is_negative();
    let deformation_class = if !square.is_negative() {
        let points = &dim / Int::from(2);
        Some(format!("K3^[{points}]"))
    } else {
        None
    };
    Ok(ModuliReport { nonempty, dim, deformation_class })
}

/// Invariants of the locally complete 20-dimensional family attached to a
/// coprime pair `(a, b)`, with both computation paths recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInvariants {
    pub n: Int,
    pub dim: Int,
    /// Polarization degree from the closed form: `6n` when `3` does not
    /// divide `n`, `2n/3` otherwise.
    pub degree: Rat,
    /// Polarization divisibility; always 2 for these families.
    pub divisibility: Int,
    /// Degree recomputed as the square of the canonical generator of the
    /// orthogonal complement of `a*lambda1 + b*lambda2` inside `A2`.
    pub degree_lattice_check: Int,
    /// Divisibility of that generator inside `v^perp` of the rank-24 model.
    pub divisibility_lattice_check: Int,
}

impl FamilyInvariants {
    /// Whether both closed forms agree with the lattice recomputations.
    pub fn consistent(&self) -> bool {
        self.degree == Rat::from(self.degree_lattice_check.clone())
            && self.divisibility == self.divisibility_lattice_check
    }
}

fn int_json(v: &Int) -> serde_json::Value {
    match i64::try_from(v.clone()) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::String(v.to_string()),
    }
}

impl Serialize for FamilyInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Paths {
            formula: String,
            #[serde(rename = "lattice-check")]
            lattice_check: String,
        }
        let mut map = s.serialize_map(Some(6))?;
        map.serialize_entry("n", &int_json(&self.n))?;
        map.serialize_entry("dim", &int_json(&self.dim))?;
        map.serialize_entry("degree", &crate::ratio::rat_to_string(&self.degree))?;
        map.serialize_entry("divisibility", &int_json(&self.divisibility))?;
        map.serialize_entry(
            "degree_paths",
            &Paths {
                formula: crate::ratio::rat_to_string(&self.degree),
                lattice_check: self.degree_lattice_check.to_string(),
            },
        )?;
        map.serialize_entry(
            "divisibility_paths",
            &Paths {
                formula: self.divisibility.to_string(),
                lattice_check: self.divisibility_lattice_check.to_string(),
            },
        )?;
        map.end()
    }
}

/// Closed-form family invariants for coprime `(a, b)`, cross-checked
/// against the orthogonal-generator computation in `A2` and against the
/// divisibility of that generator inside `v^perp` of the rank-24 model.
pub fn family_invariants(a: &Int, b: &Int) -> Result<FamilyInvariants> {
    if (a.is_zero() && b.is_zero()) || !a.gcd(b).is_one() {
        return Err(Error::NotCoprime(a.to_string(), b.to_string()));
    }
    let n = a * a - a * b + b * b;
    let dim = Int::from(2) * &n + Int::from(2);
    let degree = if (&n % Int::from(3)).is_zero() {
        Rat::new(Int::from(2) * &n, Int::from(3))
    } else {
        Rat::from(Int::from(6) * &n)
    };

    // lattice path inside A2: generator of the complement of (a, b)
    let a2 = catalog("A2")?;
    let v2 = LatticeVector::new(vec![a.clone(), b.clone()]);
    let comp2 = a2.orthogonal_complement(&[v2])?;
    assert_eq!(comp2.rank(), 1);
    let gen2 = comp2.basis()[0].sign_normalized();
    let degree_lattice_check = comp2.induced_gram()[0][0].clone();

    // divisibility path inside the rank-24 model
    let k = embed_a2_in_mukai();
    let v24 = k.lambda_class(a, b);
    let comp24 = k.full().orthogonal_complement(&[v24])?;
    let h = k.lambda_class(&gen2.coords()[0], &gen2.coords()[1]);
    let mut div = Int::zero();
    for w in comp24.basis() {
        div = div.gcd(&k.full().pair(&h, w)?);
    }
    Ok(FamilyInvariants {
        n,
        dim,
        degree,
        divisibility: Int::from(2),
        degree_lattice_check,
        divisibility_lattice_check: div,
    })
}

/// The reference model: the rank-24 Mukai lattice `E8(-1)^2 + U^4` with
/// `lambda1 = e1 + f1` in the first hyperbolic plane and
/// `lambda2 = -f1 + e2 + f2` across the first two.
pub fn embed_a2_in_mukai() -> KuznetsovLattice {
    let full = catalog("mukai").expect("catalog");
    let mut l1 = vec![0i64; 24];
    let mut l2 = vec![0i64; 24];
    l1[16] = 1;
    l1[17] = 1;
    l2[17] = -1;
    l2[18] = 1;
    l2[19] = 1;
    KuznetsovLattice::new(full, LatticeVector::from_i64(&l1), LatticeVector::from_i64(&l2))
        .expect("the standard A2 embedding is primitive")
}

/// Outcome of the bounded search for an associated (twisted) K3 surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssociatedK3 {
    /// A primitive isotropic class of divisibility 1 exists; `e, f` span a
    /// copy of the hyperbolic plane `U` with Gram `(0 1; 1 0)`.
    Yes { e: LatticeVector, f: LatticeVector },
    /// Isotropic classes exist but all found ones have divisibility > 1:
    /// the K3 partner is twisted. `divisibility` is the minimum found.
    TwistedOnly { witness: LatticeVector, divisibility: Int },
    /// No isotropic vector with coordinates within the bound. This proves
    /// nonexistence only when `exhaustive` is set (definite form).
    NoneWithinBound { exhaustive: bool },
}

impl Serialize for AssociatedK3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self {
            AssociatedK3::Yes { e, f } => {
                map.serialize_entry("kind", "yes")?;
                map.serialize_entry("e", &e)?;
                map.serialize_entry("f", &f)?;
            }
            AssociatedK3::TwistedOnly { witness, divisibility } => {
                map.serialize_entry("kind", "twisted_only")?;
                map.serialize_entry("witness", &witness)?;
                map.serialize_entry("divisibility", &int_json(divisibility))?;
            }
            AssociatedK3::NoneWithinBound { exhaustive } => {
                map.serialize_entry("kind", "none_within_bound")?;
                map.serialize_entry("exhaustive", exhaustive)?;
            }
        }
        map.end()
    }
}

/// Searches primitive isotropic vectors with coordinates bounded by
/// `bound` and reports the strongest conclusion found.
///
/// Definite forms are decided outright (no nonzero isotropic vectors), and
/// a syntactically visible hyperbolic summand short-circuits the scan; in
/// both cases the verdict is exhaustive. Otherwise `none_within_bound` is
/// explicitly not a proof of nonexistence.
pub fn has_associated_k3(k: &KuznetsovLattice, bound: u32) -> Result<AssociatedK3> {
    let full = k.full();
    if full.determinant().is_zero() {
        return Err(Error::DegenerateGram);
    }
    if full.is_definite() {
        return Ok(AssociatedK3::NoneWithinBound { exhaustive: true });
    }
    if let Some((i, j, sign_flip)) = hyperbolic_summand(full.gram()) {
        let e = full.basis_vector(i);
        let f = if sign_flip { full.basis_vector(j).neg() } else { full.basis_vector(j) };
        return Ok(AssociatedK3::Yes { e, f });
    }

    let mut best_twisted: Option<(Int, LatticeVector)> = None;
    let mut emit = |w: LatticeVector| -> Result<Option<AssociatedK3>> {
        if !full.is_primitive(&w)? {
            return Ok(None);
        }
        let div = full.divisibility(&w)?;
        if div.is_one() {
            let f = hyperbolic_partner(full, &w)?;
            return Ok(Some(AssociatedK3::Yes { e: w, f }));
        }
        if best_twisted.as_ref().map_or(true, |(d, _)| div < *d) {
            best_twisted = Some((div, w));
        }
        Ok(None)
    };

    // scan sign-normalized representatives in lexicographic order
    let verdict = isotropic_scan(full, bound, &mut emit)?;
    if let Some(yes) = verdict {
        return Ok(yes);
    }
    Ok(match best_twisted {
        Some((divisibility, witness)) => AssociatedK3::TwistedOnly { witness, divisibility },
        None => AssociatedK3::NoneWithinBound { exhaustive: false },
    })
}

/// Finds basis indices `(i, j)` carrying an orthogonal direct summand with
/// Gram `(0 ±1; ±1 0)`; the boolean asks for `f` to be negated.
fn hyperbolic_summand(gram: &Matrix) -> Option<(usize, usize, bool)> {
    let n = gram.len();
    for i in 0..n {
        for j in 0..n {
            if i == j || !gram[i][i].is_zero() || !gram[j][j].is_zero() {
                continue;
            }
            if gram[i][j].abs() != Int::one() {
                continue;
            }
            let isolated =
                (0..n).all(|t| t == i || t == j || (gram[i][t].is_zero() && gram[j][t].is_zero()));
            if isolated {
                return Some((i, j, gram[i][j].is_negative()));
            }
        }
    }
    None
}

/// Given primitive isotropic `w` of divisibility 1, produces `f` with
/// `(f, f) = 0` and `(w, f) = 1` by the standard hyperbolic normalization
/// `f = u - (u^2/2) w` for any `u` with `(u, w) = 1`.
fn hyperbolic_partner(full: &LatticeModel, w: &LatticeVector) -> Result<LatticeVector> {
    let pairings = linalg::mat_vec(full.gram(), w.coords());
    let (g, coeffs) = gcd_combination(&pairings);
    assert!(g.is_one());
    let u = LatticeVector::new(coeffs);
    debug_assert_eq!(full.pair(&u, w)?, Int::one());
    let usq = full.norm(&u)?;
    let half: Int = usq / Int::from(2);
    let f = u.sub(&w.scaled(&half));
    debug_assert!(full.norm(&f)?.is_zero());
    debug_assert!(full.pair(&f, w)?.is_one());
    Ok(f)
}

/// Bezout coefficients expressing `gcd(values)` as an integer combination.
fn gcd_combination(values: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut coeffs: Vec<Int> = Vec::with_capacity(values.len());
    for v in values {
        if g.is_zero() && v.is_zero() {
            coeffs.push(Int::zero());
            continue;
        }
        let ext = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= &ext.x;
        }
        coeffs.push(ext.y.clone());
        g = ext.gcd;
    }
    (g, coeffs)
}

/// Lexicographic scan over sign-normalized nonzero vectors with
/// `|coord| <= bound`, invoking `emit` on each isotropic one. Uses an
/// `i128` fast path when the Gram entries allow it.
fn isotropic_scan<F>(full: &LatticeModel, bound: u32, emit: &mut F) -> Result<Option<AssociatedK3>>
where
    F: FnMut(LatticeVector) -> Result<Option<AssociatedK3>>,
{
    let n = full.rank();
    let b = bound as i64;
    let small: Option<Vec<Vec<i128>>> = full
        .gram()
        .iter()
        .map(|row| row.iter().map(|e| i128::try_from(e.clone()).ok()).collect())
        .collect();

    let mut coords = vec![-b; n];
    // first nonzero coordinate positive: skip the mirror representatives
    loop {
        let leading = coords.iter().find(|&&c| c != 0);
        if let Some(&lead) = leading {
            if lead > 0 {
                let isotropic = match &small {
                    Some(g) => {
                        let mut acc: i128 = 0;
                        for i in 0..n {
                            for j in 0..n {
                                acc += g[i][j] * coords[i] as i128 * coords[j] as i128;
                            }
                        }
                        acc == 0
                    }
                    None => {
                        let v = LatticeVector::new(coords.iter().map(|&c| Int::from(c)).collect());
                        full.norm(&v)?.is_zero()
                    }
                };
                if isotropic {
                    let v = LatticeVector::new(coords.iter().map(|&c| Int::from(c)).collect());
                    if let Some(found) = emit(v)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        // odometer increment, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            coords[k] += 1;
            if coords[k] <= b {
                break;
            }
            coords[k] = -b;
        }
    }
}

/// The lattice carrying the second cohomology of a moduli space: the full
/// orthogonal complement for positive squares, its quotient by the class
/// itself for isotropic ones.
#[derive(Debug, Clone)]
pub enum SecondCohomology {
    /// `v^2 > 0`: the complement `v^perp` with its induced form.
    Complement(Sublattice),
    /// `v^2 = 0`: the induced form on `v^perp / Z v`.
    Quotient(LatticeModel),
}

/// Computes `v^perp` (or `v^perp / Z v` when `v` is isotropic) for a
/// primitive class of nonnegative square.
pub fn second_cohomology_model(k: &KuznetsovLattice, v: &LatticeVector) -> Result<SecondCohomology> {
    let full = k.full();
    if v.len() != full.rank() {
        return Err(Error::DimensionMismatch { expected: full.rank(), got: v.len() });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !full.is_primitive(v)? {
        return Err(Error::Imprimitive);
    }
    let square = full.norm(v)?;
    if square.is_negative() {
        return Err(Error::Precondition(format!("v^2 = {square} must be nonnegative")));
    }
    let comp = full.orthogonal_complement(&[v.clone()])?;
    if square.is_positive() {
        return Ok(SecondCohomology::Complement(comp));
    }
    // isotropic case: v lies in its own complement; quotient by it
    let coords = coords_in_echelon_basis(&comp, v)?;
    let basis_change = linalg::complete_primitive_to_basis(coords.coords());
    let rows: Matrix = basis_change
        .iter()
        .map(|brow| {
            let mut acc = LatticeVector::zero(full.rank());
            for (c, bas) in brow.iter().zip(comp.basis()) {
                acc = acc.add(&bas.scaled(c));
            }
            acc.coords().to_vec()
        })
        .collect();
    debug_assert_eq!(rows[0], v.coords().to_vec());
    let quotient_rows: Matrix = rows[1..].to_vec();
    let gram = crate::lattice::induced_gram(full.gram(), &quotient_rows);
    Ok(SecondCohomology::Quotient(LatticeModel::new(gram)?))
}

/// Coordinates of an ambient vector with respect to the Hermite-form basis
/// of a sublattice containing it.
fn coords_in_echelon_basis(sub: &Sublattice, v: &LatticeVector) -> Result<LatticeVector> {
    let basis = sub.basis();
    let mut coords: Vec<Int> = Vec::with_capacity(basis.len());
    let mut residue = v.clone();
    for row in basis {
        let pivot_col = row
            .coords()
            .iter()
            .position(|e| !e.is_zero())
            .ok_or_else(|| Error::Precondition("zero basis row".into()))?;
        let (q, r) = residue.coords()[pivot_col].div_rem(&row.coords()[pivot_col]);
        if !r.is_zero() {
            return Err(Error::Precondition("vector does not lie in the sublattice".into()));
        }
        residue = residue.sub(&row.scaled(&q));
        coords.push(q);
    }
    if !residue.is_zero() {
        return Err(Error::Precondition("vector does not lie in the sublattice".into()));
    }
    Ok(LatticeVector::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use rand::{Rng, SeedableRng};

    fn v(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    #[test]
    fn reference_embedding_is_a_marked_a2() {
        let k = embed_a2_in_mukai();
        assert_eq!(k.full().rank(), 24);
        assert_eq!(k.full().pair(k.lambda1(), k.lambda1()).unwrap(), int(2));
        assert_eq!(k.full().pair(k.lambda1(), k.lambda2()).unwrap(), int(-1));
        assert_eq!(k.full().pair(k.lambda2(), k.lambda2()).unwrap(), int(2));
        assert!(k.full().is_primitive(k.lambda1()).unwrap());
        assert!(k.full().is_primitive(k.lambda2()).unwrap());
        let comp = k.full().orthogonal_complement(&[k.lambda1().clone()]).unwrap();
        assert_eq!(comp.rank(), 23);
    }

    #[test]
    fn degree_shift_cycles_the_lambdas() {
        let k = embed_a2_in_mukai();
        let l1 = k.lambda1().clone();
        let l2 = k.lambda2().clone();
        assert_eq!(k.degree_shift(&l1).unwrap(), l2);
        assert_eq!(k.degree_shift(&l2).unwrap(), l1.neg().sub(&l2));
        let minus_both = l1.neg().sub(&l2);
        assert_eq!(k.degree_shift(&minus_both).unwrap(), l1);
    }

    #[test]
    fn degree_shift_fixes_the_complement_and_has_order_three() {
        let k = embed_a2_in_mukai();
        let comp =
            k.full().orthogonal_complement(&[k.lambda1().clone(), k.lambda2().clone()]).unwrap();
        for u in comp.basis().iter().take(5) {
            assert_eq!(k.degree_shift(u).unwrap(), u.clone());
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let w = LatticeVector::new((0..24).map(|_| int(rng.gen_range(-6i64..=6))).collect());
            let once = k.degree_shift(&w).unwrap();
            let twice = k.degree_shift(&once).unwrap();
            let thrice = k.degree_shift(&twice).unwrap();
            assert_eq!(thrice, w);
        }
    }

    #[test]
    fn degree_shift_preserves_the_pairing() {
        let k = embed_a2_in_mukai();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = LatticeVector::new((0..24).map(|_| int(rng.gen_range(-5i64..=5))).collect());
            let y = LatticeVector::new((0..24).map(|_| int(rng.gen_range(-5i64..=5))).collect());
            let gx = k.degree_shift(&x).unwrap();
            let gy = k.degree_shift(&y).unwrap();
            assert_eq!(k.full().pair(&gx, &gy).unwrap(), k.full().pair(&x, &y).unwrap());
        }
    }

    #[test]
    fn orientation_reversal_acts_as_stated() {
        let k = embed_a2_in_mukai();
        let l1 = k.lambda1().clone();
        let l2 = k.lambda2().clone();
        assert_eq!(k.orientation_reversal(&l1).unwrap(), l1.neg());
        assert_eq!(k.orientation_reversal(&l2).unwrap(), l1.add(&l2));
        // involution, pairing-preserving
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let x = LatticeVector::new((0..24).map(|_| int(rng.gen_range(-5i64..=5))).collect());
            let y = LatticeVector::new((0..24).map(|_| int(rng.gen_range(-5i64..=5))).collect());
            let rx = k.orientation_reversal(&x).unwrap();
            let ry = k.orientation_reversal(&y).unwrap();
            assert_eq!(k.full().pair(&rx, &ry).unwrap(), k.full().pair(&x, &y).unwrap());
            assert_eq!(k.orientation_reversal(&rx).unwrap(), x);
        }
    }

    #[test]
    fn induced_a2_matrices_have_the_right_determinants() {
        // images of (l1, l2) expressed in the (l1, l2) basis
        let k = KuznetsovLattice::a2_only();
        let shift_cols =
            [k.degree_shift(k.lambda1()).unwrap(), k.degree_shift(k.lambda2()).unwrap()];
        let shift_det = &shift_cols[0].coords()[0] * &shift_cols[1].coords()[1]
            - &shift_cols[0].coords()[1] * &shift_cols[1].coords()[0];
        assert_eq!(shift_det, int(1));
        let rev_cols = [
            k.orientation_reversal(k.lambda1()).unwrap(),
            k.orientation_reversal(k.lambda2()).unwrap(),
        ];
        let rev_det = &rev_cols[0].coords()[0] * &rev_cols[1].coords()[1]
            - &rev_cols[0].coords()[1] * &rev_cols[1].coords()[0];
        assert_eq!(rev_det, int(-1));
    }

    #[test]
    fn moduli_numerology() {
        let k = embed_a2_in_mukai();
        let fano = moduli_info(&k, k.lambda1()).unwrap();
        assert!(fano.nonempty);
        assert_eq!(fano.dim, int(4));
        assert_eq!(fano.deformation_class.as_deref(), Some("K3^[2]"));

        let llsvs_class = k.lambda_class(&int(2), &int(1));
        let eightfold = moduli_info(&k, &llsvs_class).unwrap();
        assert_eq!(eightfold.dim, int(8));
        assert_eq!(eightfold.deformation_class.as_deref(), Some("K3^[4]"));

        let k2 = KuznetsovLattice::from_a2_plus("A2+<-6>").unwrap();
        let w2 = v(&[1, 0, 1]); // square 2 - 6 = -4
        assert_eq!(k2.full().norm(&w2).unwrap(), int(-4));
        let report = moduli_info(&k2, &w2).unwrap();
        assert!(!report.nonempty);
        assert_eq!(report.dim, int(-2));
        assert_eq!(report.deformation_class, None);

        assert!(matches!(moduli_info(&k2, &v(&[0, 0, 0])), Err(Error::ZeroVector)));
        assert!(matches!(moduli_info(&k2, &v(&[2, 0, 2])), Err(Error::Imprimitive)));
    }

    #[test]
    fn family_invariants_closed_forms() {
        let f10 = family_invariants(&int(1), &int(0)).unwrap();
        assert_eq!((f10.n.clone(), f10.dim.clone()), (int(1), int(4)));
        assert_eq!(f10.degree, crate::rat(6, 1));
        assert_eq!(f10.divisibility, int(2));
        assert!(f10.consistent());

        let f21 = family_invariants(&int(2), &int(1)).unwrap();
        assert_eq!((f21.n.clone(), f21.dim.clone()), (int(3), int(8)));
        assert_eq!(f21.degree, crate::rat(2, 1));
        assert!(f21.consistent());

        let f31 = family_invariants(&int(3), &int(1)).unwrap();
        assert_eq!((f31.n.clone(), f31.dim.clone()), (int(7), int(16)));
        assert_eq!(f31.degree, crate::rat(42, 1));
        assert!(f31.consistent());

        assert!(matches!(family_invariants(&int(2), &int(4)), Err(Error::NotCoprime(..))));
        assert!(matches!(family_invariants(&int(0), &int(0)), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn associated_k3_fixtures() {
        let a2 = KuznetsovLattice::a2_only();
        assert_eq!(
            has_associated_k3(&a2, 50).unwrap(),
            AssociatedK3::NoneWithinBound { exhaustive: true }
        );

        let with_u = KuznetsovLattice::from_a2_plus("A2+U").unwrap();
        match has_associated_k3(&with_u, 50).unwrap() {
            AssociatedK3::Yes { e, f } => {
                let full = with_u.full();
                assert!(full.norm(&e).unwrap().is_zero());
                assert!(full.norm(&f).unwrap().is_zero());
                assert_eq!(full.pair(&e, &f).unwrap(), int(1));
            }
            other => panic!("expected yes, got {other:?}"),
        }

        let twisted = KuznetsovLattice::from_a2_plus("A2+<-6>").unwrap();
        match has_associated_k3(&twisted, 50).unwrap() {
            AssociatedK3::TwistedOnly { witness, divisibility } => {
                assert_eq!(divisibility, int(3));
                let full = twisted.full();
                assert!(full.norm(&witness).unwrap().is_zero());
                assert!(full.is_primitive(&witness).unwrap());
                assert_eq!(full.divisibility(&witness).unwrap(), int(3));
            }
            other => panic!("expected twisted_only, got {other:?}"),
        }
    }

    #[test]
    fn associated_k3_finds_hidden_hyperbolic_planes() {
        // (e3, e4) block has gram (2 1; 1 0): e4 is isotropic with
        // divisibility 1 but no syntactic U summand exists
        let block = LatticeModel::new(vec![
            vec![int(2), int(1)],
            vec![int(1), int(0)],
        ])
        .unwrap();
        let full = catalog("A2").unwrap().direct_sum(&block);
        let k = KuznetsovLattice::new(full, v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])).unwrap();
        match has_associated_k3(&k, 4).unwrap() {
            AssociatedK3::Yes { e, f } => {
                let l = k.full();
                assert!(l.norm(&e).unwrap().is_zero());
                assert!(l.norm(&f).unwrap().is_zero());
                assert_eq!(l.pair(&e, &f).unwrap(), int(1));
                let gram_ef = crate::lattice::induced_gram(
                    l.gram(),
                    &vec![e.coords().to_vec(), f.coords().to_vec()],
                );
                assert_eq!(crate::linalg::det(&gram_ef), int(-1));
            }
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn second_cohomology_positive_square() {
        let k = embed_a2_in_mukai();
        match second_cohomology_model(&k, k.lambda1()).unwrap() {
            SecondCohomology::Complement(sub) => {
                assert_eq!(sub.rank(), 23);
                let model = sub.as_model().unwrap();
                assert_eq!(model.signature(), (3, 20, 0));
            }
            _ => panic!("expected complement"),
        }
    }

    #[test]
    fn second_cohomology_isotropic_gives_the_k3_lattice() {
        let k = embed_a2_in_mukai();
        // e3: a primitive isotropic generator of the third hyperbolic plane
        let mut coords = vec![0i64; 24];
        coords[20] = 1;
        let w = v(&coords);
        match second_cohomology_model(&k, &w).unwrap() {
            SecondCohomology::Quotient(model) => {
                assert_eq!(model.rank(), 22);
                assert_eq!(model.determinant().abs(), int(1));
                assert_eq!(model.signature(), (3, 19, 0));
            }
            _ => panic!("expected quotient"),
        }
        let zero = LatticeVector::zero(24);
        assert!(matches!(second_cohomology_model(&k, &zero), Err(Error::ZeroVector)));
        let minus_two = {
            let mut c = vec![0i64; 24];
            c[0] = 1; // an E8(-1) root has square -2
            v(&c)
        };
        assert!(matches!(second_cohomology_model(&k, &minus_two), Err(Error::Precondition(_))));
    }

    #[test]
    fn kuznetsov_json_round_trip() {
        let k = KuznetsovLattice::from_a2_plus("A2+<-6>").unwrap();
        let s = serde_json::to_string(&k).unwrap();
        let back: KuznetsovLattice = serde_json::from_str(&s).unwrap();
        assert_eq!(k, back);
        // constructor validation applies on the way in
        let bad = r#"{"gram": [[2,-1],[-1,2]], "lambda1": [1,0], "lambda2": [1,0]}"#;
        assert!(serde_json::from_str::<KuznetsovLattice>(bad).is_err());
    }

    #[test]
    fn constructor_rejects_wrong_gram() {
        let bad = KuznetsovLattice::new(catalog("U").unwrap(), v(&[1, 0]), v(&[0, 1]));
        assert!(matches!(bad, Err(Error::InvalidLattice(_))));
    }
}
