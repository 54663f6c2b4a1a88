//! Exact arithmetic in the cyclotomic fields `Q(ζ_M)`.
//!
//! Elements are stored as coordinate vectors in the power basis
//! `1, ζ, …, ζ^{φ(M)-1}`, always reduced modulo the cyclotomic polynomial
//! `Φ_M`. Because the representation is canonical, equality is plain
//! coordinate equality and serialization is bit-exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("Q(zeta_1) = Q has no nontrivial root of unity")]
    NoPrimitiveRoot,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    NoEmbedding { from: u32, to: u32 },
    #[error("field order must be positive")]
    ZeroOrder,
    #[error("malformed scalar: {0}")]
    Parse(String),
}

/// The field `Q(ζ_M)` together with its minimal polynomial.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    /// Coefficients of `Φ_M`, lowest degree first; monic.
    modulus: Vec<BigInt>,
    /// `reduction[k]` holds the coordinates of `ζ^{φ+k}` for `k < φ - 1`;
    /// integral because `Φ_M` is monic.
    reduction: Vec<Vec<BigInt>>,
}

pub type FieldRef = Arc<CycloField>;

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CycloField {}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Integer coefficients of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

/// Builds the context for `Q(ζ_M)`.
pub fn make_field(m: u32) -> Result<FieldRef, ScalarError> {
    if m == 0 {
        return Err(ScalarError::ZeroOrder);
    }
    let modulus = cyclotomic_polynomial(m);
    let phi = modulus.len() - 1;
    // ζ^φ = -(Φ - ζ^φ)
    let mut cur: Vec<BigInt> = modulus[..phi].iter().map(|c| -c).collect();
    let mut reduction = Vec::with_capacity(phi.saturating_sub(1));
    for _ in 0..phi.saturating_sub(1) {
        reduction.push(cur.clone());
        // multiply by ζ
        let top = cur[phi - 1].clone();
        let mut next = vec![BigInt::zero(); phi];
        next[1..phi].clone_from_slice(&cur[..phi - 1]);
        for (j, c) in modulus[..phi].iter().enumerate() {
            next[j] -= &top * c;
        }
        cur = next;
    }
    Ok(Arc::new(CycloField { order: m, modulus, reduction }))
}

/// Shorthand for fields whose order is known to be valid.
pub fn field(m: u32) -> FieldRef {
    make_field(m).expect("field order must be positive")
}

impl CycloField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(M)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// An element of `Q(ζ_M)`.
#[derive(Clone)]
pub struct Scalar {
    field: FieldRef,
    coords: Vec<BigRational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coords == other.coords
    }
}

impl Eq for Scalar {}

/// Integer numerators over the least common denominator.
fn common_denominator(coords: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coords.iter().fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let nums = coords
        .iter()
        .map(|c| if den.is_one() { c.numer().clone() } else { c.numer() * (&den / c.denom()) })
        .collect();
    (nums, den)
}

fn same_field(a: &FieldRef, b: &FieldRef) -> Result<(), ScalarError> {
    if Arc::ptr_eq(a, b) || a.order == b.order {
        Ok(())
    } else {
        Err(ScalarError::FieldMismatch { left: a.order, right: b.order })
    }
}

impl Scalar {
    pub fn zero(field: &FieldRef) -> Self {
        Scalar { field: field.clone(), coords: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &FieldRef, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(field: &FieldRef, num: i64, den: i64) -> Self {
        Self::from_rational(field, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(field: &FieldRef, r: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coords[0] = r;
        s
    }

    /// Builds an element from power-basis coordinates, which must already have
    /// length `φ(M)`.
    pub fn from_coords(field: &FieldRef, coords: Vec<BigRational>) -> Result<Self, ScalarError> {
        if coords.len() != field.degree() {
            return Err(ScalarError::Parse(format!(
                "expected {} coordinates for M = {}, got {}",
                field.degree(),
                field.order,
                coords.len()
            )));
        }
        Ok(Scalar { field: field.clone(), coords })
    }

    /// The class of `ζ`, a primitive `M`-th root of unity.
    pub fn primitive_root(field: &FieldRef) -> Result<Self, ScalarError> {
        match field.order {
            1 => Err(ScalarError::NoPrimitiveRoot),
            2 => Ok(Self::from_int(field, -1)),
            _ => {
                let mut s = Self::zero(field);
                s.coords[1] = BigRational::one();
                Ok(s)
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        same_field(&self.field, &rhs.field)?;
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        Ok(Scalar { field: self.field.clone(), coords })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ScalarError> {
        same_field(&self.field, &rhs.field)?;
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        Ok(Scalar { field: self.field.clone(), coords })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        same_field(&self.field, &rhs.field)?;
        let phi = self.field.degree();
        if phi == 1 {
            return Ok(Scalar {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &rhs.coords[0]],
            });
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(Scalar::zero(&self.field));
        }
        // multiply integer numerators over a common denominator, normalize once
        let (na, da) = common_denominator(&self.coords);
        let (nb, db) = common_denominator(&rhs.coords);
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in na.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nb.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let (low, high) = prod.split_at_mut(phi);
        for (k, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, r) in low.iter_mut().zip(&self.field.reduction[k]) {
                if !r.is_zero() {
                    *l += c * r;
                }
            }
        }
        let den = da * db;
        let coords = prod.into_iter().take(phi).map(|c| BigRational::new(c, den.clone())).collect();
        Ok(Scalar { field: self.field.clone(), coords })
    }

    /// Multiplicative inverse, found by solving `a · b = 1` in the power basis.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let phi = self.field.degree();
        if phi == 1 {
            return Ok(Scalar { field: self.field.clone(), coords: vec![self.coords[0].recip()] });
        }
        // column j = coordinates of self · ζ^j
        let mut cols = Vec::with_capacity(phi);
        let mut basis = Scalar::one(&self.field);
        let zeta = {
            let mut z = Scalar::zero(&self.field);
            z.coords[1] = BigRational::one();
            z
        };
        for _ in 0..phi {
            cols.push((self * &basis).coords);
            basis = &basis * &zeta;
        }
        // augmented system [M | e_0], rows = coordinates
        let mut rows: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !rows[r][col].is_zero()).ok_or(ScalarError::DivisionByZero)?;
            rows.swap(col, piv);
            let p = rows[col][col].recip();
            for v in rows[col].iter_mut() {
                *v *= &p;
            }
            for r in 0..phi {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let pivot_row = rows[col].clone();
                    for (v, pv) in rows[r].iter_mut().zip(&pivot_row) {
                        *v -= &f * pv;
                    }
                }
            }
        }
        let coords = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Ok(Scalar { field: self.field.clone(), coords })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        same_field(&self.field, &rhs.field)?;
        self.checked_mul(&rhs.inv()?)
    }

    /// Integer power; negative exponents require an invertible element.
    pub fn pow(&self, exp: i64) -> Result<Self, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, searching up to `limit`.
    pub fn multiplicative_order(&self, limit: u32) -> Option<u32> {
        let one = Scalar::one(&self.field);
        let mut cur = self.clone();
        for k in 1..=limit {
            if cur == one {
                return Some(k);
            }
            cur = &cur * self;
        }
        None
    }

    /// True when `self` has multiplicative order exactly `n`.
    pub fn is_primitive_root_of_unity(&self, n: u32) -> bool {
        n >= 1 && self.multiplicative_order(n) == Some(n)
    }

    /// Image under `Q(ζ_M) → Q(ζ_{M'})`, `ζ_M ↦ ζ_{M'}^{M'/M}`; needs `M | M'`.
    pub fn embed(&self, target: &FieldRef) -> Result<Self, ScalarError> {
        let (from, to) = (self.field.order, target.order);
        if from == to {
            return Ok(Scalar { field: target.clone(), coords: self.coords.clone() });
        }
        if to % from != 0 {
            return Err(ScalarError::NoEmbedding { from, to });
        }
        let image_root = if target.order == 1 {
            Scalar::one(target)
        } else {
            let mut z = Scalar::zero(target);
            if target.degree() == 1 {
                z = Scalar::from_int(target, -1);
            } else {
                z.coords[1] = BigRational::one();
            }
            z.pow((to / from) as i64)?
        };
        let mut acc = Scalar::zero(target);
        let mut power = Scalar::one(target);
        for c in &self.coords {
            if !c.is_zero() {
                acc += &power * &Scalar::from_rational(target, c.clone());
            }
            power = &power * &image_root;
        }
        Ok(acc)
    }

    pub fn to_repr(&self) -> ScalarRepr {
        ScalarRepr {
            order: self.field.order,
            coords: self.coords.iter().map(format_rational).collect(),
        }
    }

    pub fn from_repr(repr: &ScalarRepr) -> Result<Self, ScalarError> {
        let field = make_field(repr.order)?;
        let coords = repr.coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        Scalar::from_coords(&field, coords)
    }
}

/// Serialized scalar: `{"M": order, "coords": ["num/den", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarRepr {
    #[serde(rename = "M")]
    pub order: u32,
    pub coords: Vec<String>,
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"` or `"a"`; the sign may only appear on the numerator.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if d.starts_with(['-', '+']) || n.starts_with('+') {
        return Err(bad());
    }
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ScalarError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        Scalar::from_repr(&repr).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if abs.is_integer() { abs.numer().to_string() } else { abs.to_string() };
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    write!(f, "z{}", self.field.order)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic across different fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $assign_tr<&Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_tr<Scalar> for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

binop!(Add, add, checked_add, AddAssign, add_assign);
binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Arithmetic on two scalars selected at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(make_field(8).unwrap().degree(), 4);
        assert_eq!(make_field(7).unwrap().degree(), 6);
        assert!(make_field(0).is_err());
    }

    #[test]
    fn phi_divides_x_pow_m_minus_one() {
        for m in 1..=12u32 {
            let phi = cyclotomic_polynomial(m);
            let mut xm = vec![BigInt::zero(); m as usize + 1];
            xm[0] = BigInt::from(-1);
            xm[m as usize] = BigInt::one();
            // poly_div_exact asserts exactness in debug builds; re-multiply to check
            let q = poly_div_exact(&xm, &phi);
            let mut prod = vec![BigInt::zero(); q.len() + phi.len() - 1];
            for (i, a) in q.iter().enumerate() {
                for (j, b) in phi.iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            assert_eq!(prod, xm, "M = {m}");
        }
    }

    #[test]
    fn zeta_arithmetic() {
        let f4 = field(4);
        let i = Scalar::primitive_root(&f4).unwrap();
        assert_eq!(&i * &i, Scalar::from_int(&f4, -1));
        let f3 = field(3);
        let w = Scalar::primitive_root(&f3).unwrap();
        assert_eq!(&(&w * &w) * &w, Scalar::one(&f3));
        assert_eq!(&w + &Scalar::zero(&f3), w);
        assert_eq!(Scalar::primitive_root(&field(2)).unwrap(), Scalar::from_int(&field(2), -1));
        assert_eq!(Scalar::primitive_root(&field(1)), Err(ScalarError::NoPrimitiveRoot));
    }

    #[test]
    fn zeta6_has_exact_order_six() {
        let f6 = field(6);
        let z = Scalar::primitive_root(&f6).unwrap();
        let one = Scalar::one(&f6);
        let mut p = z.clone();
        for _ in 1..6 {
            assert_ne!(p, one);
            p = &p * &z;
        }
        assert_eq!(p, one);
        assert!(z.is_primitive_root_of_unity(6));
    }

    #[test]
    fn division_and_errors() {
        let f5 = field(5);
        let z = Scalar::primitive_root(&f5).unwrap();
        let a = &z + &Scalar::from_ratio(&f5, 3, 7);
        let b = &(&z * &z) - &Scalar::from_int(&f5, 2);
        let q = a.checked_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert_eq!(a.checked_div(&Scalar::zero(&f5)), Err(ScalarError::DivisionByZero));
        assert!(matches!(
            a.checked_add(&Scalar::one(&field(3))),
            Err(ScalarError::FieldMismatch { left: 5, right: 3 })
        ));
    }

    #[test]
    fn embedding_respects_roots() {
        let f3 = field(3);
        let f6 = field(6);
        let w = Scalar::primitive_root(&f3).unwrap();
        let we = w.embed(&f6).unwrap();
        assert!(we.is_primitive_root_of_unity(3));
        let z6 = Scalar::primitive_root(&f6).unwrap();
        assert_eq!(we, &z6 * &z6);
        assert!(w.embed(&field(4)).is_err());
        let h = Scalar::from_ratio(&field(1), -1, 2).embed(&field(8)).unwrap();
        assert_eq!(h, Scalar::from_ratio(&field(8), -1, 2));
    }

    #[test]
    fn repr_round_trip_and_rejects() {
        let f3 = field(3);
        let a = &Scalar::primitive_root(&f3).unwrap() * &Scalar::from_ratio(&f3, -2, 6);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"M":3,"coords":["0/1","-1/3"]}"#);
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(serde_json::from_str::<Scalar>(r#"{"M":3,"coords":["1/1"]}"#).is_err());
    }
}
