//! Exact integer-lattice arithmetic.
//!
//! A [`LatticeModel`] is a finite-rank even lattice given by an integer
//! Gram matrix. On top of it sit the pairing, direct sums, saturated
//! orthogonal complements, divisibility and primitivity tests, exact
//! short-vector enumeration on negative definite lattices, and a catalog
//! of the named lattices (`U`, `U(n)`, `A2`, `E8(-1)`, `<k>`, and the
//! rank-24 Mukai lattice).
//!
//! All values are immutable after construction and every operation is a
//! pure function, so the types are safe to share across threads.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, Matrix};
use crate::{jsonio, Error, Int, Rat, Result};

/// A finite-rank even integer lattice with a fixed ordered basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeWire", into = "LatticeWire")]
pub struct LatticeModel {
    gram: Matrix,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct LatticeWire {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
    #[serde(with = "jsonio::int_matrix")]
    gram: Matrix,
}

impl TryFrom<LatticeWire> for LatticeModel {
    type Error = Error;
    fn try_from(w: LatticeWire) -> Result<Self> {
        let mut model = LatticeModel::new(w.gram)?;
        model.label = w.label;
        Ok(model)
    }
}

impl From<LatticeModel> for LatticeWire {
    fn from(m: LatticeModel) -> Self {
        LatticeWire { label: m.label, gram: m.gram }
    }
}

/// A vector written in the coordinates of some ambient [`LatticeModel`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    #[serde(with = "jsonio::int_vec")]
    coords: Vec<Int>,
}

/// A saturated subgroup of an ambient lattice, with its induced Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    ambient: LatticeModel,
    basis: Vec<LatticeVector>,
    induced_gram: Matrix,
}

impl LatticeModel {
    /// Builds a lattice from its Gram matrix, checking that the matrix is
    /// square, symmetric, and has even diagonal.
    pub fn new(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::InvalidLattice("gram matrix is not square".into()));
            }
        }
        for i in 0..n {
            if gram[i][i].is_odd() {
                return Err(Error::InvalidLattice(format!(
                    "diagonal entry {} at ({i},{i}) is odd; only even lattices are supported",
                    gram[i][i]
                )));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice("gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(LatticeModel { gram, label: None })
    }

    pub fn from_i64(gram: &[&[i64]]) -> Result<Self> {
        LatticeModel::new(gram.iter().map(|r| r.iter().map(|&e| Int::from(e)).collect()).collect())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        assert!(i < self.rank());
        let mut coords = vec![Int::zero(); self.rank()];
        coords[i] = Int::one();
        LatticeVector::new(coords)
    }

    fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    /// The bilinear pairing `x^T * gram * y`.
    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        self.check(x)?;
        self.check(y)?;
        Ok(linalg::dot(&linalg::mat_vec(&self.gram, y.coords()), x.coords()))
    }

    /// The pairing extended to rational coordinate vectors.
    pub fn pair_rational(&self, x: &[Rat], y: &[Rat]) -> Result<Rat> {
        if x.len() != self.rank() || y.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: if x.len() != self.rank() { x.len() } else { y.len() },
            });
        }
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += xi * yj * Rat::from(self.gram[i][j].clone());
            }
        }
        Ok(acc)
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<Int> {
        self.pair(v, v)
    }

    /// Block-diagonal direct sum. Determinants multiply and signatures add.
    pub fn direct_sum(&self, other: &LatticeModel) -> LatticeModel {
        let n1 = self.rank();
        let n2 = other.rank();
        let mut gram = vec![vec![Int::zero(); n1 + n2]; n1 + n2];
        for i in 0..n1 {
            gram[i][..n1].clone_from_slice(&self.gram[i]);
        }
        for i in 0..n2 {
            for j in 0..n2 {
                gram[n1 + i][n1 + j] = other.gram[i][j].clone();
            }
        }
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        LatticeModel { gram, label }
    }

    pub fn determinant(&self) -> Int {
        linalg::det(&self.gram)
    }

    /// Order of the discriminant group, `|det(gram)|`.
    pub fn discriminant_group_order(&self) -> Result<Int> {
        let d = self.determinant();
        if d.is_zero() {
            return Err(Error::DegenerateGram);
        }
        Ok(d.abs())
    }

    /// Signature `(positive, negative, zero)` of the form.
    pub fn signature(&self) -> (usize, usize, usize) {
        linalg::signature(&self.gram)
    }

    pub fn is_negative_definite(&self) -> bool {
        let (p, n, z) = self.signature();
        p == 0 && z == 0 && n == self.rank()
    }

    pub fn is_positive_definite(&self) -> bool {
        let (p, n, z) = self.signature();
        n == 0 && z == 0 && p == self.rank()
    }

    pub fn is_definite(&self) -> bool {
        self.is_negative_definite() || self.is_positive_definite()
    }

    /// Saturated orthogonal complement of a nonempty family of vectors.
    ///
    /// Every vector of the returned sublattice pairs to zero with every
    /// input; the basis is canonical (Hermite form of the integer kernel),
    /// so equal inputs give byte-identical outputs.
    pub fn orthogonal_complement(&self, vs: &[LatticeVector]) -> Result<Sublattice> {
        if vs.is_empty() {
            return Err(Error::Precondition("orthogonal complement of an empty family".into()));
        }
        for v in vs {
            self.check(v)?;
        }
        let rows: Matrix = vs.iter().map(|v| linalg::mat_vec(&self.gram, v.coords())).collect();
        let kernel = linalg::right_kernel(&rows);
        Ok(self.sublattice_from_rows(kernel))
    }

    fn sublattice_from_rows(&self, rows: Matrix) -> Sublattice {
        let induced_gram = induced_gram(&self.gram, &rows);
        Sublattice {
            ambient: self.clone(),
            basis: rows.into_iter().map(LatticeVector::new).collect(),
            induced_gram,
        }
    }

    /// Positive generator of the pairing ideal `{(v, x) : x in L}`.
    pub fn divisibility(&self, v: &LatticeVector) -> Result<Int> {
        self.check(v)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let pairings = linalg::mat_vec(&self.gram, v.coords());
        Ok(pairings.iter().fold(Int::zero(), |acc, p| acc.gcd(p)))
    }

    /// True when the coordinate gcd is 1.
    pub fn is_primitive(&self, v: &LatticeVector) -> Result<bool> {
        self.check(v)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(v.coords.iter().fold(Int::zero(), |acc, c| acc.gcd(c)).is_one())
    }

    /// Complete list of vectors of the given negative norm, canonically
    /// sorted (lexicographic on coordinates).
    ///
    /// Requires the lattice to be negative definite, which bounds the
    /// enumeration ellipsoid; completeness is exact.
    pub fn short_vectors(&self, norm: &Int) -> Result<Vec<LatticeVector>> {
        if !norm.is_negative() {
            return Err(Error::Precondition(format!("norm {norm} must be negative")));
        }
        if !self.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        let target = Rat::from(-norm.clone());
        let mut found = enumerate_by_norm(&self.gram, &target);
        found.sort();
        Ok(found.into_iter().map(LatticeVector::new).collect())
    }
}

/// Gram matrix induced on the span of `rows` (rows are ambient coordinates).
pub(crate) fn induced_gram(gram: &Matrix, rows: &Matrix) -> Matrix {
    rows.iter()
        .map(|a| {
            let ga = linalg::mat_vec(gram, a);
            rows.iter().map(|b| linalg::dot(&ga, b)).collect()
        })
        .collect()
}

/// All integer `x` with `x^T * (-gram) * x = target`, for `-gram` positive
/// definite. Fincke–Pohst recursion with exact rational bounds.
fn enumerate_by_norm(gram: &Matrix, target: &Rat) -> Vec<Vec<Int>> {
    let n = gram.len();
    if n == 0 {
        return Vec::new();
    }
    // rational LDL^T of the positive definite form -gram:
    // q(x) = sum_i d[i] * (x_i + sum_{j>i} l[i][j] x_j)^2
    let mut q: Vec<Vec<Rat>> = gram
        .iter()
        .map(|row| row.iter().map(|e| Rat::from(-e.clone())).collect())
        .collect();
    let mut d = vec![Rat::zero(); n];
    let mut l = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        d[i] = q[i][i].clone();
        assert!(d[i].is_positive(), "form must be positive definite");
        for j in i + 1..n {
            l[i][j] = &q[i][j] / &d[i];
        }
        for r in i + 1..n {
            for c in i + 1..n {
                let upd = &q[i][r] * &q[i][c] / &d[i];
                let v = &q[r][c] - upd;
                q[r][c] = v;
            }
        }
    }

    let mut out: Vec<Vec<Int>> = Vec::new();
    let mut x = vec![Int::zero(); n];
    fn descend(
        level: usize,
        budget: &Rat,
        x: &mut Vec<Int>,
        d: &[Rat],
        l: &[Vec<Rat>],
        out: &mut Vec<Vec<Int>>,
    ) {
        // levels run from n-1 down to 0; `budget` is what remains of the target
        let shift: Rat = (level + 1..x.len())
            .map(|j| &l[level][j] * Rat::from(x[j].clone()))
            .fold(Rat::zero(), |a, b| a + b);
        let bound = budget / &d[level];
        let lo = crate::ratio::min_int_in_sqrt_interval(&shift, &bound);
        let hi = crate::ratio::max_int_in_sqrt_interval(&shift, &bound);
        let mut t = lo;
        while t <= hi {
            x[level] = t.clone();
            let inner = Rat::from(t.clone()) + &shift;
            let used = &d[level] * &inner * &inner;
            let remaining = budget - &used;
            if level == 0 {
                if remaining.is_zero() && x.iter().any(|c| !c.is_zero()) {
                    out.push(x.clone());
                }
            } else {
                descend(level - 1, &remaining, x, d, l, out);
            }
            t += 1;
        }
        x[level] = Int::zero();
    }
    descend(n - 1, target, &mut x, &d, &l, &mut out);
    out
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector { coords: coords.iter().map(|&c| Int::from(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector { coords: vec![Int::zero(); rank] }
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Int::is_zero)
    }

    pub fn scaled(&self, k: &Int) -> LatticeVector {
        LatticeVector { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), other.len());
        LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), other.len());
        LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector { coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }

    /// Copy with the first nonzero coordinate made positive.
    pub fn sign_normalized(&self) -> LatticeVector {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(first) if first.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn to_rational(&self) -> Vec<Rat> {
        self.coords.iter().map(|c| Rat::from(c.clone())).collect()
    }
}

impl std::fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Sublattice {
    pub fn ambient(&self) -> &LatticeModel {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    pub fn induced_gram(&self) -> &Matrix {
        &self.induced_gram
    }

    /// The induced form packaged as a standalone lattice model.
    pub fn as_model(&self) -> Result<LatticeModel> {
        LatticeModel::new(self.induced_gram.clone())
    }

    /// Ambient coordinates of a vector given in the sublattice basis.
    pub fn to_ambient(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        let mut out = LatticeVector::zero(self.ambient.rank());
        for (c, b) in v.coords().iter().zip(&self.basis) {
            out = out.add(&b.scaled(c));
        }
        Ok(out)
    }

    /// True when re-saturating the spanned subgroup changes nothing.
    pub fn is_saturated(&self) -> bool {
        let rows: Matrix = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        let sat = linalg::saturation(&rows, self.ambient.rank());
        let (canon, _) = linalg::row_hnf(&rows);
        let canon: Matrix =
            canon.into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
        sat == canon
    }
}

/// Looks up a named lattice. Atoms may be combined with `+` for direct sums:
/// `"A2+<-6>"` is the rank-3 lattice used in the twisted associated-K3 test.
///
/// Recognized atoms: `U`, `U(n)`, `A2`, `A2(-1)` (alias `A2neg`), `E8`,
/// `E8(-1)` (alias `E8neg`), `<k>` for the rank-1 lattice of even square `k`,
/// and `mukai` for `E8(-1)^2 + U^4` in that basis order.
pub fn catalog(name: &str) -> Result<LatticeModel> {
    let trimmed = name.trim();
    if trimmed.is_empty() {
        return Err(Error::UnknownLattice(name.to_string()));
    }
    let mut parts = split_atoms(trimmed);
    let first = atom(&parts.remove(0))?;
    let mut acc = first;
    for p in parts {
        acc = acc.direct_sum(&atom(&p)?);
    }
    Ok(acc.with_label(trimmed.to_string()))
}

/// Splits on `+` except inside `<...>`, so `"A2+<-6>"` parses as two atoms.
fn split_atoms(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '<' => {
                depth += 1;
                cur.push(ch);
            }
            '>' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    parts.push(cur);
    parts
}

fn atom(name: &str) -> Result<LatticeModel> {
    let name = name.trim();
    match name {
        "U" => return LatticeModel::from_i64(&[&[0, 1], &[1, 0]]),
        "A2" => return LatticeModel::from_i64(&[&[2, -1], &[-1, 2]]),
        "A2(-1)" | "A2neg" => return LatticeModel::from_i64(&[&[-2, 1], &[1, -2]]),
        "E8" => return LatticeModel::new(e8_gram(false)),
        "E8(-1)" | "E8neg" => return LatticeModel::new(e8_gram(true)),
        "mukai" => return mukai_lattice(),
        _ => {}
    }
    if let Some(inner) = name.strip_prefix("U(").and_then(|r| r.strip_suffix(')')) {
        let n: Int = inner
            .trim()
            .parse()
            .map_err(|_| Error::UnknownLattice(name.to_string()))?;
        if n.is_zero() {
            return Err(Error::UnknownLattice(name.to_string()));
        }
        return LatticeModel::new(vec![
            vec![Int::zero(), n.clone()],
            vec![n, Int::zero()],
        ]);
    }
    if let Some(inner) = name.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        let k: Int = inner
            .trim()
            .parse()
            .map_err(|_| Error::UnknownLattice(name.to_string()))?;
        if k.is_odd() {
            return Err(Error::InvalidLattice(format!("<{k}> is not an even lattice")));
        }
        return LatticeModel::new(vec![vec![k]]);
    }
    Err(Error::UnknownLattice(name.to_string()))
}

/// Gram matrix of `E8` in the standard simple-root order: the chain
/// 1-3-4-5-6-7-8 with node 2 attached to node 4.
fn e8_gram(negated: bool) -> Matrix {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let diag = if negated { -2i64 } else { 2 };
    let off = if negated { 1i64 } else { -1 };
    let mut g = vec![vec![Int::zero(); 8]; 8];
    for i in 0..8 {
        g[i][i] = Int::from(diag);
    }
    for (a, b) in edges {
        g[a][b] = Int::from(off);
        g[b][a] = Int::from(off);
    }
    g
}

/// The rank-24 Mukai lattice `E8(-1)^2 + U^4`. Basis order: the two `E8(-1)`
/// blocks on coordinates 0..16, then four hyperbolic planes, each on a
/// consecutive coordinate pair `(e_i, f_i)`.
fn mukai_lattice() -> Result<LatticeModel> {
    let e8 = LatticeModel::new(e8_gram(true))?;
    let u = atom("U")?;
    Ok(e8
        .direct_sum(&LatticeModel::new(e8_gram(true))?)
        .direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&u)
        .with_label("mukai"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn v(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    #[test]
    fn pairing_on_named_lattices() {
        let a2 = catalog("A2").unwrap();
        assert_eq!(a2.pair(&v(&[1, 0]), &v(&[0, 1])).unwrap(), int(-1));
        let u = catalog("U").unwrap();
        assert_eq!(u.pair(&v(&[1, 0]), &v(&[0, 1])).unwrap(), int(1));
        // (1,2) against itself in A2: expanded by hand, 1*2 + 2*2*(-1) + 4*2 = 6
        assert_eq!(a2.pair(&v(&[1, 2]), &v(&[1, 2])).unwrap(), int(6));
        assert!(matches!(
            a2.pair(&v(&[1, 0, 0]), &v(&[0, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pairing_is_bilinear_on_samples() {
        let l = catalog("A2+U").unwrap();
        let xs = [v(&[1, 0, 0, 0]), v(&[0, 1, -2, 3]), v(&[2, -1, 1, 1])];
        for x in &xs {
            for y in &xs {
                for z in &xs {
                    let lhs = l.pair(&x.add(y), z).unwrap();
                    let rhs = l.pair(x, z).unwrap() + l.pair(y, z).unwrap();
                    assert_eq!(lhs, rhs);
                    assert_eq!(l.pair(x, y).unwrap(), l.pair(y, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn direct_sums_multiply_determinants() {
        let u = catalog("U").unwrap();
        let a2 = catalog("A2").unwrap();
        let s = u.direct_sum(&a2);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.determinant(), int(-3));
        let spans = catalog("<2>+<-2>").unwrap();
        assert_eq!(spans.determinant(), int(-4));
    }

    #[test]
    fn mukai_lattice_shape() {
        let m = catalog("mukai").unwrap();
        assert_eq!(m.rank(), 24);
        assert_eq!(m.determinant().abs(), int(1));
        assert_eq!(m.signature(), (4, 20, 0));
    }

    #[test]
    fn complements_are_saturated() {
        let a2 = catalog("A2").unwrap();
        let c = a2.orthogonal_complement(&[v(&[1, 0])]).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.basis()[0].sign_normalized(), v(&[1, 2]));
        assert_eq!(c.induced_gram()[0][0], int(6));
        assert!(c.is_saturated());

        let u = catalog("U").unwrap();
        let cu = u.orthogonal_complement(&[v(&[1, 0])]).unwrap();
        assert_eq!(cu.rank(), 1);
        assert_eq!(cu.basis()[0].sign_normalized(), v(&[1, 0]));
        assert_eq!(cu.induced_gram()[0][0], int(0));

        let c2 = a2.orthogonal_complement(&[v(&[2, 1])]).unwrap();
        assert_eq!(c2.basis()[0].sign_normalized(), v(&[0, 1]));
        assert_eq!(c2.induced_gram()[0][0], int(2));

        // every returned vector pairs to zero with every input
        let l = catalog("A2+U").unwrap();
        let inputs = [v(&[1, 1, 0, 2]), v(&[0, 1, 1, 0])];
        let comp = l.orthogonal_complement(&inputs).unwrap();
        for b in comp.basis() {
            for i in &inputs {
                assert!(l.pair(b, i).unwrap().is_zero());
            }
        }
        assert!(comp.is_saturated());
    }

    #[test]
    fn divisibility_values() {
        let a2 = catalog("A2").unwrap();
        assert_eq!(a2.divisibility(&v(&[1, 0])).unwrap(), int(1));
        let u3 = catalog("U(3)").unwrap();
        assert_eq!(u3.divisibility(&v(&[1, 0])).unwrap(), int(3));
        let l = catalog("A2+<-6>").unwrap();
        assert_eq!(l.divisibility(&v(&[1, 2, 1])).unwrap(), int(3));
        assert!(matches!(a2.divisibility(&v(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn divisibility_divides_norm() {
        let l = catalog("A2+U+<-6>").unwrap();
        for coords in [[1i64, 2, 1, 0, 1], [3, 0, 1, 1, 2], [0, 0, 2, 4, 2]] {
            let w = v(&coords);
            let d = l.divisibility(&w).unwrap();
            let n = l.norm(&w).unwrap();
            assert!((n % d).is_zero());
        }
    }

    #[test]
    fn primitivity() {
        let a2 = catalog("A2").unwrap();
        assert!(!a2.is_primitive(&v(&[2, 0])).unwrap());
        assert!(a2.is_primitive(&v(&[1, 2])).unwrap());
        let m = catalog("mukai").unwrap();
        let mut coords = vec![0i64; 24];
        coords[16] = 3;
        coords[17] = 3;
        assert!(!m.is_primitive(&v(&coords)).unwrap());
        assert!(matches!(a2.is_primitive(&v(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn short_vectors_on_a2_neg() {
        let l = catalog("A2neg").unwrap();
        let roots = l.short_vectors(&int(-2)).unwrap();
        let expected: Vec<LatticeVector> = [
            [-1, -1],
            [-1, 0],
            [0, -1],
            [0, 1],
            [1, 0],
            [1, 1],
        ]
        .iter()
        .map(|c| v(c))
        .collect();
        assert_eq!(roots, expected);
    }

    #[test]
    fn short_vectors_none_in_minus_four(){
        let l = catalog("<-4>").unwrap();
        assert!(l.short_vectors(&int(-2)).unwrap().is_empty());
    }

    #[test]
    fn e8_has_240_roots() {
        let l = catalog("E8(-1)").unwrap();
        assert_eq!(l.determinant(), int(1));
        let roots = l.short_vectors(&int(-2)).unwrap();
        assert_eq!(roots.len(), 240);
        // output is sorted and free of duplicates
        for w in roots.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn short_vectors_match_box_scan_on_small_lattices() {
        for name in ["A2neg", "<-2>+<-6>", "A2neg+<-4>"] {
            let l = catalog(name).unwrap();
            for norm in [-2i64, -4, -6, -8] {
                let fast = l.short_vectors(&int(norm)).unwrap();
                let mut slow = Vec::new();
                let n = l.rank();
                let bound = 4i64;
                let mut idx = vec![-bound; n];
                loop {
                    let cand = LatticeVector::new(idx.iter().map(|&c| int(c)).collect());
                    if !cand.is_zero() && l.norm(&cand).unwrap() == int(norm) {
                        slow.push(cand);
                    }
                    let mut k = 0;
                    loop {
                        if k == n {
                            break;
                        }
                        idx[k] += 1;
                        if idx[k] <= bound {
                            break;
                        }
                        idx[k] = -bound;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                }
                slow.sort();
                assert_eq!(fast, slow, "mismatch on {name} at norm {norm}");
            }
        }
    }

    #[test]
    fn short_vectors_rejects_indefinite() {
        let u = catalog("U").unwrap();
        assert!(matches!(u.short_vectors(&int(-2)), Err(Error::NotNegativeDefinite)));
        let a2neg = catalog("A2neg").unwrap();
        assert!(matches!(a2neg.short_vectors(&int(2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn discriminant_orders() {
        assert_eq!(catalog("A2").unwrap().discriminant_group_order().unwrap(), int(3));
        assert_eq!(catalog("U").unwrap().discriminant_group_order().unwrap(), int(1));
        assert_eq!(catalog("mukai").unwrap().discriminant_group_order().unwrap(), int(1));
        let degenerate = LatticeModel::from_i64(&[&[0, 0], &[0, 2]]).unwrap();
        assert!(matches!(degenerate.discriminant_group_order(), Err(Error::DegenerateGram)));
    }

    #[test]
    fn discriminant_order_multiplies_over_sums() {
        let pairs = [("A2", "U(3)"), ("E8(-1)", "A2"), ("<4>", "<-6>")];
        for (a, b) in pairs {
            let la = catalog(a).unwrap();
            let lb = catalog(b).unwrap();
            let lhs = la.direct_sum(&lb).discriminant_group_order().unwrap();
            let rhs = la.discriminant_group_order().unwrap() * lb.discriminant_group_order().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn catalog_rejects_unknown_and_odd() {
        assert!(matches!(catalog("F4"), Err(Error::UnknownLattice(_))));
        assert!(matches!(catalog("<3>"), Err(Error::InvalidLattice(_))));
        assert!(matches!(catalog("U(0)"), Err(Error::UnknownLattice(_))));
    }

    #[test]
    fn lattice_json_round_trip() {
        let l = catalog("A2+<-6>").unwrap();
        let s = serde_json::to_string(&l).unwrap();
        let back: LatticeModel = serde_json::from_str(&s).unwrap();
        assert_eq!(l, back);
        // validation applies on the way in
        let bad = r#"{"gram": [[1, 0], [0, 2]]}"#;
        assert!(serde_json::from_str::<LatticeModel>(bad).is_err());
        let asym = r#"{"gram": [[2, 1], [0, 2]]}"#;
        assert!(serde_json::from_str::<LatticeModel>(asym).is_err());
    }
}
