//! Finite group representations over finite fields and the
//! characteristic-polynomial fingerprint that classifies them up to
//! semisimplification.
//!
//! Two representations of the same finite group have isomorphic
//! semisimplifications exactly when every group element has the same
//! characteristic polynomial in both — the fingerprint comparison
//! implemented by [`brauer_nesbitt_equal`].  Traces alone decide the same
//! question only below the characteristic ([`trace_equal_criterion`] refuses
//! to answer otherwise: in dimension `>= p` distinct fingerprints can share
//! every trace).  For small dimensions [`semisimplification_oracle`] checks
//! the classification from first principles by scanning for invariant lines
//! and hyperplanes and splitting recursively; in dimension at most three a
//! reducible representation always has one of the two, so the scan is a
//! genuine decision procedure there, and the oracle refuses larger inputs
//! rather than guess.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{FFElem, FiniteField};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::Poly;
use crate::algebra::{Ring, Var};

#[derive(Debug, Clone, PartialEq)]
pub enum ReprError {
    BadTable(String),
    NotHomomorphism(String),
    DimensionMismatch(String),
    TooLarge(String),
}

impl fmt::Display for ReprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReprError::BadTable(msg) => write!(f, "not a group table: {msg}"),
            ReprError::NotHomomorphism(msg) => write!(f, "not a homomorphism: {msg}"),
            ReprError::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            ReprError::TooLarge(msg) => write!(f, "input too large: {msg}"),
        }
    }
}

impl std::error::Error for ReprError {}

pub type ReprResult<T> = Result<T, ReprError>;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    /// row-major: `table[a * n + b] = a * b`
    table: Vec<usize>,
    order: usize,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    /// Validate a multiplication table: closure (entries in range), a
    /// two-sided identity, two-sided inverses, and associativity (checked
    /// on all triples).
    pub fn from_table(rows: Vec<Vec<usize>>) -> ReprResult<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(ReprError::BadTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ReprError::BadTable(format!(
                    "row {i} has length {} in a table of size {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(ReprError::BadTable(format!(
                        "entry {v} out of range in row {i}"
                    )));
                }
                table.push(v);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| ReprError::BadTable("no two-sided identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or_else(|| ReprError::BadTable(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(ReprError::BadTable(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Group {
            table,
            order: n,
            identity,
            inverse,
        })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rows = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Group::from_table(rows).expect("cyclic tables are groups")
    }

    /// The symmetric group on three letters; element `g` is the permutation
    /// of `(0, 1, 2)` with index `g` in lexicographic order, and
    /// multiplication is composition `(a * b)(i) = a(b(i))`.
    pub fn symmetric3() -> Self {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index_of = |p: [usize; 3]| PERMS.iter().position(|&q| q == p).unwrap();
        let rows = PERMS
            .iter()
            .map(|a| {
                PERMS
                    .iter()
                    .map(|b| index_of([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Group::from_table(rows).expect("permutation composition is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A representation: one invertible matrix per group element, validated to
/// respect the table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroupRep {
    group: Group,
    mats: Vec<Matrix<FFElem>>,
}

impl FiniteGroupRep {
    pub fn new(group: Group, mats: Vec<Matrix<FFElem>>) -> ReprResult<Self> {
        if mats.len() != group.order() {
            return Err(ReprError::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                mats.len(),
                group.order()
            )));
        }
        let dim = mats[0].rows();
        for (g, m) in mats.iter().enumerate() {
            if !m.is_square() || m.rows() != dim {
                return Err(ReprError::DimensionMismatch(format!(
                    "matrix of element {g} is not {dim} x {dim}"
                )));
            }
        }
        let id = Matrix::identity(dim, mats[0].sample());
        if mats[group.identity()] != id {
            return Err(ReprError::NotHomomorphism(
                "the identity element must act as the identity matrix".into(),
            ));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if mats[a].mul(&mats[b]) != mats[group.mul(a, b)] {
                    return Err(ReprError::NotHomomorphism(format!(
                        "rho({a}) rho({b}) differs from rho({a} * {b})"
                    )));
                }
            }
        }
        // rho(g) rho(g^-1) = rho(e) = I, so every matrix is invertible
        Ok(FiniteGroupRep { group, mats })
    }

    /// Generate a matrix group from the given invertible generators by
    /// closing under multiplication, and return it together with its
    /// tautological representation.  Refuses to enumerate past `max_order`
    /// elements.
    pub fn from_matrix_closure(
        gens: Vec<Matrix<FFElem>>,
        max_order: usize,
    ) -> ReprResult<Self> {
        if gens.is_empty() {
            return Err(ReprError::DimensionMismatch("no generators".into()));
        }
        let dim = gens[0].rows();
        for g in &gens {
            if !g.is_square() || g.rows() != dim {
                return Err(ReprError::DimensionMismatch(
                    "generators must be square matrices of one size".into(),
                ));
            }
        }
        let id = Matrix::identity(dim, gens[0].sample());
        let mut mats = vec![id];
        let mut cursor = 0;
        while cursor < mats.len() {
            let current = mats[cursor].clone();
            for g in &gens {
                let next = current.mul(g);
                if !mats.contains(&next) {
                    if mats.len() >= max_order {
                        return Err(ReprError::TooLarge(format!(
                            "closure exceeds {max_order} elements"
                        )));
                    }
                    mats.push(next);
                }
            }
            cursor += 1;
        }
        let n = mats.len();
        let mut rows = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let prod = mats[a].mul(&mats[b]);
                let idx = mats.iter().position(|m| *m == prod).ok_or_else(|| {
                    ReprError::BadTable(
                        "closure is not multiplicatively closed; a generator must be singular"
                            .into(),
                    )
                })?;
                row.push(idx);
            }
            rows.push(row);
        }
        let group = Group::from_table(rows)?;
        FiniteGroupRep::new(group, mats)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.mats[0].sample().field()
    }

    pub fn matrix(&self, g: usize) -> &Matrix<FFElem> {
        &self.mats[g]
    }

    /// Traces, one per group element.
    pub fn character(&self) -> Vec<FFElem> {
        self.mats.iter().map(|m| m.trace()).collect()
    }

    /// Characteristic polynomials of every element: the complete invariant
    /// of the semisimplification.
    pub fn charpoly_fingerprint(&self) -> Vec<Poly<FFElem>> {
        self.mats.iter().map(charpoly_ff).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> ReprResult<Self> {
        if self.group != other.group {
            return Err(ReprError::DimensionMismatch(
                "direct sum needs representations of the same group".into(),
            ));
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        FiniteGroupRep::new(self.group.clone(), mats)
    }
}

/// `det(X I - M)` over `F_q[X]`.
fn charpoly_ff(m: &Matrix<FFElem>) -> Poly<FFElem> {
    let n = m.rows();
    let sample = m.sample();
    let lifted = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            Poly::new(Var::X, vec![m.at(i, j).neg(), sample.one_like()])
        } else {
            Poly::constant(Var::X, m.at(i, j).neg())
        }
    });
    lifted.det()
}

fn same_group(a: &FiniteGroupRep, b: &FiniteGroupRep) -> ReprResult<()> {
    if a.group() != b.group() {
        return Err(ReprError::DimensionMismatch(
            "representations of different groups cannot be compared".into(),
        ));
    }
    Ok(())
}

/// Semisimplifications agree if and only if every element has the same
/// characteristic polynomial in both representations.
pub fn brauer_nesbitt_equal(a: &FiniteGroupRep, b: &FiniteGroupRep) -> ReprResult<bool> {
    same_group(a, b)?;
    Ok(a.charpoly_fingerprint() == b.charpoly_fingerprint())
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceVerdict {
    /// Below the characteristic, equal characters are equivalent to equal
    /// fingerprints, so the traces decide.
    Decides(bool),
    /// At or above the characteristic the trace comparison is not a valid
    /// criterion; the message explains why it was refused.
    DoesNotApply(String),
}

/// The cheap trace-only comparison, valid only in dimension strictly below
/// the characteristic.
pub fn trace_equal_criterion(a: &FiniteGroupRep, b: &FiniteGroupRep) -> ReprResult<TraceVerdict> {
    same_group(a, b)?;
    let p = a.field().characteristic() as usize;
    if a.dim() >= p || b.dim() >= p {
        return Ok(TraceVerdict::DoesNotApply(format!(
            "dimensions {} and {} are not below the characteristic {p}; \
             distinct semisimplifications can share all traces",
            a.dim(),
            b.dim()
        )));
    }
    Ok(TraceVerdict::Decides(a.character() == b.character()))
}

/// Canonical nonzero vectors of `F_q^dim` up to scalar: first nonzero
/// coordinate normalized to one.
fn projective_points(field: &Arc<FiniteField>, dim: usize) -> Vec<Vec<FFElem>> {
    let q = field.order();
    let mut points = Vec::new();
    // pivot position: coordinates before it are zero, pivot is one, the
    // rest range over the field
    for pivot in 0..dim {
        let free = dim - pivot - 1;
        let count = q.pow(free as u32);
        for idx in 0..count {
            let mut v = vec![FFElem::zero(field); dim];
            v[pivot] = FFElem::one(field);
            let mut rest = idx;
            for slot in 0..free {
                v[pivot + 1 + slot] = FFElem::from_index(field, rest % q);
                rest /= q;
            }
            points.push(v);
        }
    }
    points
}

fn mat_vec(m: &Matrix<FFElem>, v: &[FFElem]) -> Vec<FFElem> {
    let n = m.rows();
    (0..n)
        .map(|i| {
            let mut acc = v[0].zero_like();
            for j in 0..n {
                acc = acc.add(&m.at(i, j).mul(&v[j]));
            }
            acc
        })
        .collect()
}

/// Is `w` a scalar multiple of the canonical vector `v` (first nonzero
/// coordinate of `v` is one)?  Returns the scalar when it is.
fn proportional_to(v: &[FFElem], w: &[FFElem]) -> Option<FFElem> {
    let pivot = v.iter().position(|c| !c.is_zero()).expect("nonzero");
    let scalar = w[pivot].clone();
    for (a, b) in v.iter().zip(w) {
        if a.mul(&scalar) != *b {
            return None;
        }
    }
    Some(scalar)
}

/// A line spanned by a canonical vector fixed by every matrix, together
/// with the scalars of the action on it.
fn invariant_line(mats: &[Matrix<FFElem>]) -> Option<(Vec<FFElem>, Vec<FFElem>)> {
    let field = mats[0].sample().field();
    let dim = mats[0].rows();
    'point: for v in projective_points(field, dim) {
        let mut scalars = Vec::with_capacity(mats.len());
        for m in mats {
            match proportional_to(&v, &mat_vec(m, &v)) {
                Some(s) => scalars.push(s),
                None => continue 'point,
            }
        }
        return Some((v, scalars));
    }
    None
}

fn mat_inv(m: &Matrix<FFElem>) -> Option<Matrix<FFElem>> {
    let det = m.det();
    let inv = det.try_inv()?;
    Some(m.adjugate().scale(&inv))
}

/// Conjugate every matrix by the basis `b`: `b^-1 m b`.
fn conjugate(mats: &[Matrix<FFElem>], b: &Matrix<FFElem>) -> Vec<Matrix<FFElem>> {
    let b_inv = mat_inv(b).expect("change of basis must be invertible");
    mats.iter().map(|m| b_inv.mul(m).mul(b)).collect()
}

/// Complete the canonical vector `v` to a basis by appending the standard
/// vectors away from its pivot; columns of the result are the new basis.
fn basis_through(v: &[FFElem]) -> Matrix<FFElem> {
    let dim = v.len();
    let field = v[0].field();
    let pivot = v.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut cols: Vec<Vec<FFElem>> = vec![v.to_vec()];
    for j in 0..dim {
        if j != pivot {
            let mut e = vec![FFElem::zero(field); dim];
            e[j] = FFElem::one(field);
            cols.push(e);
        }
    }
    Matrix::from_fn(dim, dim, |i, j| cols[j][i].clone())
}

/// Decompose into irreducible constituents by scanning for invariant lines
/// (sub in dimension one) and invariant hyperplanes (quotient in dimension
/// one, found as an invariant line of the dual).  Complete for dimension at
/// most three — a reducible representation there always has an invariant
/// line or hyperplane — and refused above that.
pub fn semisimplification_oracle(rep: &FiniteGroupRep) -> ReprResult<Vec<FiniteGroupRep>> {
    if rep.dim() > 3 {
        return Err(ReprError::TooLarge(format!(
            "the line/hyperplane scan is only decisive up to dimension 3, got {}",
            rep.dim()
        )));
    }
    let mut constituents = Vec::new();
    split_into(rep.group.clone(), rep.mats.clone(), &mut constituents)?;
    Ok(constituents)
}

fn split_into(
    group: Group,
    mats: Vec<Matrix<FFElem>>,
    out: &mut Vec<FiniteGroupRep>,
) -> ReprResult<()> {
    let dim = mats[0].rows();
    if dim == 1 {
        out.push(FiniteGroupRep::new(group, mats)?);
        return Ok(());
    }

    if let Some((v, scalars)) = invariant_line(&mats) {
        // sub on the line; quotient in the complementary coordinates of a
        // basis through v
        let line_mats = scalars
            .iter()
            .map(|s| Matrix::new(1, 1, vec![s.clone()]))
            .collect();
        out.push(FiniteGroupRep::new(group.clone(), line_mats)?);
        let conj = conjugate(&mats, &basis_through(&v));
        let rows: Vec<usize> = (1..dim).collect();
        let quotient = conj
            .iter()
            .map(|m| m.submatrix(&rows, &rows))
            .collect::<Vec<_>>();
        return split_into(group, quotient, out);
    }

    // invariant hyperplane = invariant line of the dual rho*(g) = rho(g)^-T
    let duals: Vec<Matrix<FFElem>> = mats
        .iter()
        .map(|m| mat_inv(m).expect("representation matrices are invertible").transpose())
        .collect();
    if let Some((v, scalars)) = invariant_line(&duals) {
        // the hyperplane v-perp is spanned by the non-pivot basis columns
        // of basis_through(v^T-adapted coordinates): conjugating by a basis
        // whose first vector is dual-adapted puts the quotient line first
        let b = basis_through(&v).transpose();
        let b_inv = mat_inv(&b).expect("invertible");
        // in the basis with rows of b as coordinates, the hyperplane is
        // coordinates 1..dim; the action matrix is b m b^-1
        let conj: Vec<Matrix<FFElem>> = mats.iter().map(|m| b.mul(m).mul(&b_inv)).collect();
        let rows: Vec<usize> = (1..dim).collect();
        let sub = conj
            .iter()
            .map(|m| m.submatrix(&rows, &rows))
            .collect::<Vec<_>>();
        split_into(group.clone(), sub, out)?;
        // quotient by the hyperplane: scalars are the duals' line scalars
        // inverted (rho* on the dual line acts by the inverse transpose)
        let line_mats = scalars
            .iter()
            .map(|s| Matrix::new(1, 1, vec![s.try_inv().expect("nonzero scalar")]))
            .collect();
        out.push(FiniteGroupRep::new(group, line_mats)?);
        return Ok(());
    }

    out.push(FiniteGroupRep::new(group, mats)?);
    Ok(())
}

/// Sort key of a fingerprint: dimensions first, then the coefficient index
/// vectors of every charpoly.
fn fingerprint_key(rep: &FiniteGroupRep) -> (usize, Vec<Vec<u64>>) {
    let polys = rep.charpoly_fingerprint();
    (
        rep.dim(),
        polys
            .iter()
            .map(|p| p.coeffs().iter().map(|c| c.index()).collect())
            .collect(),
    )
}

/// The multiset of constituent fingerprints, canonically sorted — equal
/// exactly for isomorphic semisimplifications.
pub fn constituent_keys(rep: &FiniteGroupRep) -> ReprResult<Vec<(usize, Vec<Vec<u64>>)>> {
    let mut keys: Vec<_> = semisimplification_oracle(rep)?
        .iter()
        .map(fingerprint_key)
        .collect();
    keys.sort();
    Ok(keys)
}

/// Partition representations of one group into Brauer–Nesbitt classes with
/// one fingerprint computation each (instead of all pairs).
pub fn partition_by_fingerprint(reps: &[FiniteGroupRep]) -> ReprResult<Vec<Vec<usize>>> {
    for pair in reps.windows(2) {
        same_group(&pair[0], &pair[1])?;
    }
    let mut classes: Vec<(Vec<Poly<FFElem>>, Vec<usize>)> = Vec::new();
    for (i, rep) in reps.iter().enumerate() {
        let fp = rep.charpoly_fingerprint();
        match classes.iter_mut().find(|(key, _)| *key == fp) {
            Some((_, members)) => members.push(i),
            None => classes.push((fp, vec![i])),
        }
    }
    Ok(classes.into_iter().map(|(_, members)| members).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: &Arc<FiniteField>, dim: usize, entries: &[u64]) -> Matrix<FFElem> {
        Matrix::new(
            dim,
            dim,
            entries.iter().map(|&e| FFElem::from_u64(field, e)).collect(),
        )
    }

    fn scalar_rep(group: &Group, field: &Arc<FiniteField>, scalars: &[u64]) -> FiniteGroupRep {
        let mats = scalars
            .iter()
            .map(|&s| mat(field, 1, &[s]))
            .collect();
        FiniteGroupRep::new(group.clone(), mats).unwrap()
    }

    #[test]
    fn group_tables_are_validated() {
        let c6 = Group::cyclic(6);
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        assert_eq!(c6.inverse(2), 4);

        let s3 = Group::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());

        // left-translation table of C3 with one entry doctored: breaks
        // associativity or the identity, never silently accepted
        let broken = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(matches!(
            Group::from_table(broken),
            Err(ReprError::BadTable(_))
        ));
    }

    #[test]
    fn homomorphism_violations_are_rejected() {
        let c2 = Group::cyclic(2);
        let f5 = FiniteField::prime(5).unwrap();
        // 2 has order 4 in F_5^x, not 2
        let bad = vec![mat(&f5, 1, &[1]), mat(&f5, 1, &[2])];
        assert!(matches!(
            FiniteGroupRep::new(c2.clone(), bad),
            Err(ReprError::NotHomomorphism(_))
        ));
        let good = vec![mat(&f5, 1, &[1]), mat(&f5, 1, &[4])];
        assert!(FiniteGroupRep::new(c2, good).is_ok());
    }

    #[test]
    fn matrix_closure_generates_s3_in_gl2() {
        let f7 = FiniteField::prime(7).unwrap();
        // r of order 3 and s of order 2 with s r s = r^2
        let r = mat(&f7, 2, &[0, 6, 1, 6]);
        let s = mat(&f7, 2, &[0, 1, 1, 0]);
        let rep = FiniteGroupRep::from_matrix_closure(vec![r, s], 64).unwrap();
        assert_eq!(rep.group().order(), 6);
        assert!(!rep.group().is_abelian());
        // the tautological rep of an irreducible matrix group is irreducible
        let parts = semisimplification_oracle(&rep).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].dim(), 2);
    }

    #[test]
    fn fingerprints_identify_semisimplifications() {
        // C3 over F_3: the unipotent extension and the trivial 2-dim rep
        // are different but have the same semisimplification
        let c3 = Group::cyclic(3);
        let f3 = FiniteField::prime(3).unwrap();
        let u = mat(&f3, 2, &[1, 1, 0, 1]);
        let unipotent = FiniteGroupRep::new(
            c3.clone(),
            vec![Matrix::identity(2, &FFElem::one(&f3)), u.clone(), u.mul(&u)],
        )
        .unwrap();
        let trivial2 = scalar_rep(&c3, &f3, &[1, 1, 1])
            .direct_sum(&scalar_rep(&c3, &f3, &[1, 1, 1]))
            .unwrap();

        assert_ne!(unipotent, trivial2);
        assert!(brauer_nesbitt_equal(&unipotent, &trivial2).unwrap());
        assert_eq!(
            constituent_keys(&unipotent).unwrap(),
            constituent_keys(&trivial2).unwrap()
        );

        // over F_7 the three characters of C3 through the cube roots of
        // unity (2^3 = 1) separate cleanly
        let f7 = FiniteField::prime(7).unwrap();
        let chi1 = scalar_rep(&c3, &f7, &[1, 2, 4]);
        let chi2 = scalar_rep(&c3, &f7, &[1, 4, 2]);
        let chi0 = scalar_rep(&c3, &f7, &[1, 1, 1]);
        let a = chi1.direct_sum(&chi2).unwrap();
        let b = chi2.direct_sum(&chi1).unwrap();
        let c = chi0.direct_sum(&chi0).unwrap();
        assert!(brauer_nesbitt_equal(&a, &b).unwrap());
        assert!(!brauer_nesbitt_equal(&a, &c).unwrap());

        let classes = partition_by_fingerprint(&[a, b, c]).unwrap();
        assert_eq!(classes, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn traces_lie_at_the_characteristic() {
        // C2 over F_3 in dimension 3 = p: the all-ones and all-minus-ones
        // reps share every trace but have different fingerprints
        let c2 = Group::cyclic(2);
        let f3 = FiniteField::prime(3).unwrap();
        let plus = scalar_rep(&c2, &f3, &[1, 1]);
        let minus = scalar_rep(&c2, &f3, &[1, 2]);
        // 1^3 and (-1)^3: traces (3, 3) = (0, 0) and (3, -3) = (0, 0)
        let a = plus.direct_sum(&plus).unwrap().direct_sum(&plus).unwrap();
        let c = minus.direct_sum(&minus).unwrap().direct_sum(&minus).unwrap();

        assert_eq!(a.character(), c.character());
        assert!(!brauer_nesbitt_equal(&a, &c).unwrap());
        assert!(matches!(
            trace_equal_criterion(&a, &c).unwrap(),
            TraceVerdict::DoesNotApply(_)
        ));

        // below the characteristic the criterion decides, and agrees with
        // the fingerprints
        let small_a = plus.direct_sum(&plus).unwrap();
        let small_b = plus.direct_sum(&minus).unwrap();
        assert_eq!(
            trace_equal_criterion(&small_a, &small_b).unwrap(),
            TraceVerdict::Decides(false)
        );
        assert_eq!(
            trace_equal_criterion(&small_a, &small_a.clone()).unwrap(),
            TraceVerdict::Decides(true)
        );
    }

    #[test]
    fn oracle_splits_sub_and_quotient_cases() {
        let c3 = Group::cyclic(3);
        let f3 = FiniteField::prime(3).unwrap();
        // upper- and lower-triangular unipotent reps both carry an
        // invariant line and decompose into two trivial constituents
        let u = mat(&f3, 2, &[1, 1, 0, 1]);
        let upper = FiniteGroupRep::new(
            c3.clone(),
            vec![Matrix::identity(2, &FFElem::one(&f3)), u.clone(), u.mul(&u)],
        )
        .unwrap();
        let l = mat(&f3, 2, &[1, 0, 1, 1]);
        let lower = FiniteGroupRep::new(
            c3.clone(),
            vec![Matrix::identity(2, &FFElem::one(&f3)), l.clone(), l.mul(&l)],
        )
        .unwrap();
        assert_eq!(constituent_keys(&upper).unwrap(), constituent_keys(&lower).unwrap());

        let too_big = scalar_rep(&c3, &f3, &[1, 1, 1])
            .direct_sum(&scalar_rep(&c3, &f3, &[1, 1, 1]))
            .unwrap()
            .direct_sum(
                &scalar_rep(&c3, &f3, &[1, 1, 1])
                    .direct_sum(&scalar_rep(&c3, &f3, &[1, 1, 1]))
                    .unwrap(),
            )
            .unwrap();
        assert!(matches!(
            semisimplification_oracle(&too_big),
            Err(ReprError::TooLarge(_))
        ));
    }

    #[test]
    fn nonsplit_extension_is_split_by_the_hyperplane_scan() {
        // the tautological 3-dim module of A4 = F_4 x| C3 inside GL_3(F_2):
        // matrices [[A, b], [0, 1]] with A in the C3 generated by the
        // companion of x^2 + x + 1 and b in F_2^2.  The 2-dim socle is
        // irreducible and the extension by the trivial quotient does not
        // split, so no invariant line exists and only the hyperplane scan
        // can decompose it.
        let f2 = FiniteField::prime(2).unwrap();
        let rot = mat(&f2, 3, &[0, 1, 0, 1, 1, 0, 0, 0, 1]);
        let t0 = mat(&f2, 3, &[1, 0, 1, 0, 1, 0, 0, 0, 1]);
        let t1 = mat(&f2, 3, &[1, 0, 0, 0, 1, 1, 0, 0, 1]);
        let taut = FiniteGroupRep::from_matrix_closure(vec![rot, t0, t1], 64).unwrap();
        assert_eq!(taut.group().order(), 12);
        assert!(invariant_line(&taut.mats).is_none());

        let parts = semisimplification_oracle(&taut).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2]);

        // forgetting the extension class gives the split module with the
        // same semisimplification: same fingerprint, different rep
        let split_mats: Vec<Matrix<FFElem>> = (0..taut.group().order())
            .map(|g| {
                let m = taut.matrix(g);
                let mut s = m.clone();
                s.set(0, 2, FFElem::zero(&f2));
                s.set(1, 2, FFElem::zero(&f2));
                s
            })
            .collect();
        let split = FiniteGroupRep::new(taut.group().clone(), split_mats).unwrap();
        assert_ne!(taut, split);
        assert!(brauer_nesbitt_equal(&taut, &split).unwrap());
        assert_eq!(
            constituent_keys(&taut).unwrap(),
            constituent_keys(&split).unwrap()
        );
    }
}
