//! Finite fields presented as explicit towers of extensions.
//!
//! A [`FiniteField`] is either the prime field `F_p` or an extension
//! `base[x]/(modulus)` of another finite field.  Elements of an extension are
//! stored as coefficient vectors over the base, so decomposing an element of
//! `F_{q^d}` into `F_q`-coordinates (needed for restriction of scalars) is a
//! literal field access rather than a linear-algebra problem.
//!
//! Fields are handed around as `Arc<FiniteField>`; elements carry a handle to
//! their field.  Equality of fields is structural (same characteristic, same
//! tower of moduli), so two independently built copies of the same field
//! interoperate.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{AlgebraError, AlgebraResult, Ring};

/// A finite field in an explicit tower presentation.
pub struct FiniteField {
    p: u64,
    order: u64,
    abs_degree: u32,
    kind: FieldKind,
}

enum FieldKind {
    Prime,
    Extension {
        base: Arc<FiniteField>,
        /// Monic irreducible modulus over `base`, length `degree + 1`.
        modulus: Vec<FFElem>,
        degree: usize,
    },
}

/// An element of a [`FiniteField`].
#[derive(Clone)]
pub struct FFElem {
    field: Arc<FiniteField>,
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Prime(u64),
    /// Coefficients over the base field, length = extension degree.
    Ext(Vec<FFElem>),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> AlgebraResult<Arc<FiniteField>> {
        if !is_prime_u64(p) {
            return Err(AlgebraError::Invalid(format!("{p} is not prime")));
        }
        Ok(Arc::new(FiniteField {
            p,
            order: p,
            abs_degree: 1,
            kind: FieldKind::Prime,
        }))
    }

    /// The extension `base[x]/(modulus)`.  `modulus` must be monic of degree
    /// at least one with coefficients in `base`, and irreducible over it
    /// (checked by trial division against every monic polynomial of degree
    /// at most half the modulus degree).
    pub fn extension(
        base: &Arc<FiniteField>,
        modulus: Vec<FFElem>,
    ) -> AlgebraResult<Arc<FiniteField>> {
        if modulus.len() < 2 {
            return Err(AlgebraError::Invalid(
                "extension modulus must have degree >= 1".into(),
            ));
        }
        for c in &modulus {
            if !Arc::ptr_eq(&c.field, base) && c.field.as_ref() != base.as_ref() {
                return Err(AlgebraError::Mismatch(
                    "modulus coefficients must lie in the base field".into(),
                ));
            }
        }
        let degree = modulus.len() - 1;
        if !modulus[degree].is_one() {
            return Err(AlgebraError::Invalid("extension modulus must be monic".into()));
        }
        if !raw_is_irreducible(base, &modulus) {
            return Err(AlgebraError::NotIrreducible(format!(
                "modulus {} is reducible over the base field",
                raw_to_string(&modulus)
            )));
        }
        let order = base
            .order
            .checked_pow(degree as u32)
            .ok_or_else(|| AlgebraError::Invalid("field order overflows u64".into()))?;
        Ok(Arc::new(FiniteField {
            p: base.p,
            order,
            abs_degree: base.abs_degree * degree as u32,
            kind: FieldKind::Extension {
                base: Arc::clone(base),
                modulus,
                degree,
            },
        }))
    }

    /// Degree-`m` extension of `base` with the canonical modulus: the monic
    /// irreducible polynomial of degree `m` over `base` whose coefficient
    /// vector `(c_0, ..., c_{m-1})` has the smallest index encoding (constant
    /// term least significant).
    pub fn extension_auto(base: &Arc<FiniteField>, m: usize) -> AlgebraResult<Arc<FiniteField>> {
        if m == 0 {
            return Err(AlgebraError::Invalid("extension degree must be >= 1".into()));
        }
        let count = base.order.pow(m as u32);
        for idx in 0..count {
            let mut coeffs = raw_from_index(base, idx, m);
            coeffs.push(FFElem::one(base));
            if raw_is_irreducible(base, &coeffs) {
                return Self::extension(base, coeffs);
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over a finite field")
    }

    /// `F_{p^m}` built directly over the prime field with the canonical modulus.
    pub fn gf(p: u64, m: usize) -> AlgebraResult<Arc<FiniteField>> {
        let prime = Self::prime(p)?;
        if m == 1 {
            Ok(prime)
        } else {
            Self::extension_auto(&prime, m)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> u32 {
        self.abs_degree
    }

    /// Degree over the immediate base field (1 for a prime field).
    pub fn relative_degree(&self) -> usize {
        match &self.kind {
            FieldKind::Prime => 1,
            FieldKind::Extension { degree, .. } => *degree,
        }
    }

    /// The immediate base field, if this is an extension.
    pub fn base(&self) -> Option<&Arc<FiniteField>> {
        match &self.kind {
            FieldKind::Prime => None,
            FieldKind::Extension { base, .. } => Some(base),
        }
    }

    /// The modulus over the immediate base field, if this is an extension.
    pub fn modulus(&self) -> Option<&[FFElem]> {
        match &self.kind {
            FieldKind::Prime => None,
            FieldKind::Extension { modulus, .. } => Some(modulus),
        }
    }

    /// Iterate over all elements in index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FFElem> {
        let field = Arc::clone(self);
        (0..self.order).map(move |i| FFElem::from_index(&field, i))
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.p != other.p || self.order != other.order || self.abs_degree != other.abs_degree {
            return false;
        }
        match (&self.kind, &other.kind) {
            (FieldKind::Prime, FieldKind::Prime) => true,
            (
                FieldKind::Extension {
                    base: b1,
                    modulus: m1,
                    ..
                },
                FieldKind::Extension {
                    base: b2,
                    modulus: m2,
                    ..
                },
            ) => b1.as_ref() == b2.as_ref() && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Prime => write!(f, "F_{}", self.p),
            FieldKind::Extension { base, modulus, .. } => {
                write!(f, "{:?}[x]/({})", base, raw_to_string(modulus))
            }
        }
    }
}

fn fields_eq(a: &Arc<FiniteField>, b: &Arc<FiniteField>) -> bool {
    Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref()
}

impl FFElem {
    pub fn zero(field: &Arc<FiniteField>) -> FFElem {
        match &field.kind {
            FieldKind::Prime => FFElem {
                field: Arc::clone(field),
                repr: Repr::Prime(0),
            },
            FieldKind::Extension { base, degree, .. } => {
                let coeffs = vec![FFElem::zero(base); *degree];
                FFElem {
                    field: Arc::clone(field),
                    repr: Repr::Ext(coeffs),
                }
            }
        }
    }

    pub fn one(field: &Arc<FiniteField>) -> FFElem {
        FFElem::from_u64(field, 1)
    }

    /// The image of the integer `n` under `Z -> F_p -> field`.
    pub fn from_u64(field: &Arc<FiniteField>, n: u64) -> FFElem {
        match &field.kind {
            FieldKind::Prime => FFElem {
                field: Arc::clone(field),
                repr: Repr::Prime(n % field.p),
            },
            FieldKind::Extension { base, degree, .. } => {
                let mut coeffs = vec![FFElem::zero(base); *degree];
                coeffs[0] = FFElem::from_u64(base, n);
                FFElem {
                    field: Arc::clone(field),
                    repr: Repr::Ext(coeffs),
                }
            }
        }
    }

    /// The class of the extension variable `x`.  Errors for prime fields,
    /// which have no distinguished generator.
    pub fn generator(field: &Arc<FiniteField>) -> AlgebraResult<FFElem> {
        match &field.kind {
            FieldKind::Prime => Err(AlgebraError::Invalid(
                "a prime field has no extension generator".into(),
            )),
            FieldKind::Extension { base, degree, .. } => {
                let mut coeffs = vec![FFElem::zero(base); *degree];
                if *degree == 1 {
                    // Degree-one extension: x is congruent to -c_0.
                    let m = field.modulus().expect("extension has a modulus");
                    coeffs[0] = m[0].neg();
                } else {
                    coeffs[1] = FFElem::one(base);
                }
                Ok(FFElem {
                    field: Arc::clone(field),
                    repr: Repr::Ext(coeffs),
                })
            }
        }
    }

    /// Element with the given index encoding; inverse of [`FFElem::index`].
    pub fn from_index(field: &Arc<FiniteField>, idx: u64) -> FFElem {
        match &field.kind {
            FieldKind::Prime => FFElem {
                field: Arc::clone(field),
                repr: Repr::Prime(idx % field.p),
            },
            FieldKind::Extension { base, degree, .. } => {
                let coeffs = raw_from_index(base, idx, *degree);
                FFElem {
                    field: Arc::clone(field),
                    repr: Repr::Ext(coeffs),
                }
            }
        }
    }

    /// Canonical index of the element: prime elements are their residue,
    /// extension elements are base-`order(base)` digit vectors with the
    /// constant coordinate least significant.  Defines the canonical total
    /// order on the field used wherever a deterministic representative is
    /// needed.
    pub fn index(&self) -> u64 {
        match &self.repr {
            Repr::Prime(v) => *v,
            Repr::Ext(coeffs) => {
                let base_order = self.field.base().expect("ext has base").order();
                let mut idx = 0u64;
                for c in coeffs.iter().rev() {
                    idx = idx * base_order + c.index();
                }
                idx
            }
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Embed an element of the immediate base field.
    pub fn embed(field: &Arc<FiniteField>, e: &FFElem) -> AlgebraResult<FFElem> {
        match &field.kind {
            FieldKind::Prime => {
                if fields_eq(field, &e.field) {
                    Ok(e.clone())
                } else {
                    Err(AlgebraError::Mismatch(
                        "cannot embed into a prime field".into(),
                    ))
                }
            }
            FieldKind::Extension { base, degree, .. } => {
                if fields_eq(field, &e.field) {
                    return Ok(e.clone());
                }
                if !fields_eq(base, &e.field) {
                    return Err(AlgebraError::Mismatch(
                        "element does not lie in the base of the extension".into(),
                    ));
                }
                let mut coeffs = vec![FFElem::zero(base); *degree];
                coeffs[0] = e.clone();
                Ok(FFElem {
                    field: Arc::clone(field),
                    repr: Repr::Ext(coeffs),
                })
            }
        }
    }

    /// Write the element as a coefficient vector over the immediate base
    /// field (length = relative degree).  Errors for prime-field elements.
    pub fn base_coordinates(&self) -> AlgebraResult<Vec<FFElem>> {
        match &self.repr {
            Repr::Prime(_) => Err(AlgebraError::Invalid(
                "prime field elements have no base coordinates".into(),
            )),
            Repr::Ext(coeffs) => Ok(coeffs.clone()),
        }
    }

    /// If the element lies in the image of the immediate base field, return
    /// it as a base field element.
    pub fn try_to_base(&self) -> Option<FFElem> {
        match &self.repr {
            Repr::Prime(_) => None,
            Repr::Ext(coeffs) => {
                if coeffs[1..].iter().all(|c| c.is_zero()) {
                    Some(coeffs[0].clone())
                } else {
                    None
                }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> FFElem {
        let mut result = self.one_like();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        result
    }

    /// `q^i`-power Frobenius.
    pub fn frobenius(&self, q: u64, i: u32) -> FFElem {
        let group = self.field.order() - 1;
        if self.is_zero() {
            return self.clone();
        }
        // exponent q^i mod (order - 1), computed without overflow
        let mut e = 1u128;
        for _ in 0..i {
            e = (e * q as u128) % group as u128;
        }
        self.pow(e as u64)
    }

    pub fn inv(&self) -> AlgebraResult<FFElem> {
        self.try_inv().ok_or(AlgebraError::Invalid(
            "attempted to invert zero".into(),
        ))
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(
            fields_eq(&self.field, &other.field),
            "comparing elements of different fields"
        );
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => a == b,
            (Repr::Ext(a), Repr::Ext(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FFElem {}

impl Hash for FFElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.index().hash(state);
    }
}

impl Ring for FFElem {
    fn zero_like(&self) -> Self {
        FFElem::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        FFElem::one(&self.field)
    }

    fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(v) => *v == 0,
            Repr::Ext(coeffs) => coeffs.iter().all(|c| c.is_zero()),
        }
    }

    fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Prime(v) => *v == 1,
            Repr::Ext(coeffs) => coeffs[0].is_one() && coeffs[1..].iter().all(|c| c.is_zero()),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(fields_eq(&self.field, &rhs.field));
        match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Prime((a + b) % self.field.p),
            },
            (Repr::Ext(a), Repr::Ext(b)) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Ext(a.iter().zip(b).map(|(x, y)| x.add(y)).collect()),
            },
            _ => panic!("mismatched element representations"),
        }
    }

    fn neg(&self) -> Self {
        match &self.repr {
            Repr::Prime(v) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Prime((self.field.p - v) % self.field.p),
            },
            Repr::Ext(coeffs) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Ext(coeffs.iter().map(|c| c.neg()).collect()),
            },
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(fields_eq(&self.field, &rhs.field));
        match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => FFElem {
                field: Arc::clone(&self.field),
                repr: Repr::Prime(a * b % self.field.p),
            },
            (Repr::Ext(a), Repr::Ext(b)) => {
                let modulus = self.field.modulus().expect("extension has a modulus");
                let prod = raw_mul(a, b);
                let reduced = raw_rem_monic(prod, modulus);
                let degree = self.field.relative_degree();
                let base = self.field.base().expect("extension has a base");
                let mut coeffs = reduced;
                coeffs.resize(degree, FFElem::zero(base));
                FFElem {
                    field: Arc::clone(&self.field),
                    repr: Repr::Ext(coeffs),
                }
            }
            _ => panic!("mismatched element representations"),
        }
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.repr {
            Repr::Prime(_) => Some(self.pow(self.field.p - 2)),
            Repr::Ext(_) => {
                // x^(order-2) = x^{-1} in the multiplicative group
                Some(self.pow(self.field.order - 2))
            }
        }
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(v) => write!(f, "{v}"),
            Repr::Ext(coeffs) => {
                let mut terms: Vec<String> = Vec::new();
                for (i, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let cs = c.to_string();
                    let coeff_part = if cs.contains('+') || cs.contains('-') || cs.contains('*') {
                        format!("({cs})")
                    } else {
                        cs
                    };
                    let term = match i {
                        0 => coeff_part,
                        1 => {
                            if c.is_one() {
                                "x".to_string()
                            } else {
                                format!("{coeff_part}*x")
                            }
                        }
                        _ => {
                            if c.is_one() {
                                format!("x^{i}")
                            } else {
                                format!("{coeff_part}*x^{i}")
                            }
                        }
                    };
                    terms.push(term);
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join(" + "))
                }
            }
        }
    }
}

// ---- raw polynomial helpers over a base field (coefficient vectors) ----

fn raw_trim(mut v: Vec<FFElem>) -> Vec<FFElem> {
    while v.len() > 1 && v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn raw_mul(a: &[FFElem], b: &[FFElem]) -> Vec<FFElem> {
    let zero = a[0].zero_like();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn raw_rem_monic(mut a: Vec<FFElem>, m: &[FFElem]) -> Vec<FFElem> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top].clone();
        if !c.is_zero() {
            let shift = top - dm;
            for (k, mc) in m.iter().enumerate() {
                a[shift + k] = a[shift + k].sub(&c.mul(mc));
            }
        }
        a.pop();
    }
    a
}

fn raw_from_index(base: &Arc<FiniteField>, mut idx: u64, len: usize) -> Vec<FFElem> {
    let mut coeffs = Vec::with_capacity(len);
    for _ in 0..len {
        coeffs.push(FFElem::from_index(base, idx % base.order()));
        idx /= base.order();
    }
    coeffs
}

fn raw_to_string(v: &[FFElem]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("{c}"),
            1 => format!("({c})*y"),
            _ => format!("({c})*y^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Irreducibility over the base field by trial division: a monic polynomial
/// of degree `m` is reducible iff it has a monic divisor of degree between 1
/// and `m/2`.
fn raw_is_irreducible(base: &Arc<FiniteField>, f: &[FFElem]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    for d in 1..=(m / 2) {
        let count = base.order().pow(d as u32);
        for idx in 0..count {
            let mut g = raw_from_index(base, idx, d);
            g.push(FFElem::one(base));
            if raw_divides(&g, f) {
                return false;
            }
        }
    }
    true
}

/// Does the monic polynomial `g` divide `f`?
fn raw_divides(g: &[FFElem], f: &[FFElem]) -> bool {
    let r = raw_rem_monic(f.to_vec(), g);
    raw_trim(r).iter().all(|c| c.is_zero())
}
