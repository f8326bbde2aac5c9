//! Exact arithmetic in the real quadratic field Q(√5).
//!
//! Every coordinate of the five Platonic solids used here lives in this field,
//! so incidence and congruence decisions never touch floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::FieldError;

/// An element `a + b·√5` with rational `a`, `b`.
///
/// `BigRational` keeps both parts reduced with a positive denominator, so the
/// representation is unique and the derived `Eq`/`Hash` are value equality.
///
/// `Ord` is the lexicographic order on `(a, b)`. It is a total order usable for
/// canonical keys but it is *not* the order of the real numbers; use
/// [`FieldElement::value_cmp`] for that.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    a: BigRational,
    b: BigRational,
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `num/den + (snum/sden)·√5`.
    pub fn from_ratios(num: i64, den: i64, snum: i64, sden: i64) -> Self {
        Self::new(ratio(num, den), ratio(snum, sden))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt5() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// The golden ratio (1 + √5)/2.
    pub fn phi() -> Self {
        Self::from_ratios(1, 2, 1, 2)
    }

    /// φ⁻¹ = φ − 1 = (−1 + √5)/2.
    pub fn phi_inv() -> Self {
        Self::from_ratios(-1, 2, 1, 2)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√5`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 5b²`, a rational that vanishes only at zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    /// Exact sign of `a + b√5` as −1, 0 or +1.
    pub fn sign(&self) -> i32 {
        let sa = signum(&self.a);
        let sb = signum(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // Opposite signs: the term with the larger square dominates.
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(5.into()) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Order of the real numbers represented by `self` and `other`.
    pub fn value_cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * 5f64.sqrt()
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn signum(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√5", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}√5", self.a, -self.b.clone())
                } else {
                    write!(f, "{} + {}√5", self.a, self.b)
                }
            }
        }
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let five = BigRational::from_integer(5.into());
        FieldElement::new(&self.a * &rhs.a + five * &self.b * &rhs.b, &self.a * &rhs.b + &self.b * &rhs.a)
    }
}

/// Panics on division by zero, like integer division. See
/// [`FieldElement::checked_div`] for the fallible form.
impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero in Q(√5)")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(-self.a.clone(), -self.b.clone())
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(-self.a, -self.b)
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

/// A point or direction in Q(√5)³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldVec3 {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

impl FieldVec3 {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Self) -> FieldElement {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn sub_vec(&self, other: &Self) -> Self {
        Self::new(&self.x - &other.x, &self.y - &other.y, &self.z - &other.z)
    }

    pub fn add_vec(&self, other: &Self) -> Self {
        Self::new(&self.x + &other.x, &self.y + &other.y, &self.z + &other.z)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(&self.x * s, &self.y * s, &self.z * s)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.x, -&self.y, -&self.z)
    }

    pub fn norm_squared(&self) -> FieldElement {
        self.dot(self)
    }

    pub fn component(&self, i: usize) -> &FieldElement {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("component index {i} out of range"),
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }
}

/// A 3×3 matrix over Q(√5), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMat3 {
    pub rows: [FieldVec3; 3],
}

impl FieldMat3 {
    pub fn from_rows(rows: [FieldVec3; 3]) -> Self {
        Self { rows }
    }

    pub fn from_columns(c0: &FieldVec3, c1: &FieldVec3, c2: &FieldVec3) -> Self {
        Self::from_rows([
            FieldVec3::new(c0.x.clone(), c1.x.clone(), c2.x.clone()),
            FieldVec3::new(c0.y.clone(), c1.y.clone(), c2.y.clone()),
            FieldVec3::new(c0.z.clone(), c1.z.clone(), c2.z.clone()),
        ])
    }

    pub fn identity() -> Self {
        Self::from_rows([FieldVec3::from_ints(1, 0, 0), FieldVec3::from_ints(0, 1, 0), FieldVec3::from_ints(0, 0, 1)])
    }

    pub fn column(&self, j: usize) -> FieldVec3 {
        FieldVec3::new(
            self.rows[0].component(j).clone(),
            self.rows[1].component(j).clone(),
            self.rows[2].component(j).clone(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::from_rows([self.column(0), self.column(1), self.column(2)])
    }

    pub fn determinant(&self) -> FieldElement {
        self.rows[0].dot(&self.rows[1].cross(&self.rows[2]))
    }

    pub fn apply(&self, v: &FieldVec3) -> FieldVec3 {
        FieldVec3::new(self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v))
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        let cols = [other.column(0), other.column(1), other.column(2)];
        let row = |r: &FieldVec3| FieldVec3::new(r.dot(&cols[0]), r.dot(&cols[1]), r.dot(&cols[2]));
        Self::from_rows([row(&self.rows[0]), row(&self.rows[1]), row(&self.rows[2])])
    }

    /// Inverse via the adjugate; fails on singular matrices.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        let det = self.determinant();
        let inv_det = det.inverse()?;
        // Columns of the inverse are the cross products of row pairs over det.
        let [r0, r1, r2] = &self.rows;
        let c0 = r1.cross(r2).scale(&inv_det);
        let c1 = r2.cross(r0).scale(&inv_det);
        let c2 = r0.cross(r1).scale(&inv_det);
        Ok(Self::from_columns(&c0, &c1, &c2))
    }
}
