//! Scalar bound for the exact linear algebra layer.
//!
//! Matrices and normal forms are written against [`Scalar`], i.e. any exact
//! Euclidean integer type that `num-integer` and `num-traits` understand.
//! The rest of the crate works over [`Int`](crate::Int), the unbounded
//! integer; fixed-width types would overflow inside Smith reductions.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssignRef, Signed, ToPrimitive};

/// An exact integer type with a Euclidean algorithm.
pub trait Scalar:
    Integer
    + Signed
    + NumAssignRef
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
    /// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with `a*x + b*y = g`.
    fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let e = a.extended_gcd(b);
        if e.gcd.is_negative() {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        }
    }

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent i64")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + NumAssignRef
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

/// Floor-style remainder in `[0, |m|)`.
pub fn rem_nonneg<T: Scalar>(a: &T, m: &T) -> T {
    let m = m.abs();
    a.mod_floor(&m)
}

/// `acc += a * b`.
#[inline]
pub fn add_mul<T: Scalar>(acc: &mut T, a: &T, b: &T) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    let mut p = a.clone();
    p *= b;
    *acc += &p;
}

/// `acc -= a * b`.
#[inline]
pub fn sub_mul<T: Scalar>(acc: &mut T, a: &T, b: &T) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    let mut p = a.clone();
    p *= b;
    *acc -= &p;
}
