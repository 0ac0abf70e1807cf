//! Exact scalar fields.
//!
//! Everything in this crate that does linear algebra is written against the
//! [`Field`] trait, which extends the `num-traits` arithmetic traits with
//! exact inversion. Two families implement it: the prime fields [`Fp`] for
//! primes up to 97, and the rationals ([`Rational`]).

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rationals.
pub type Rational = BigRational;

/// An exact commutative field.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Image of an integer under the canonical ring map.
    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;

    /// Short human-readable name, e.g. `GF(3)` or `Q`.
    fn name() -> String;
}

/// A field with finitely many elements, which can be listed.
pub trait FiniteField: Field {
    /// Number of elements.
    fn order() -> u64;

    /// Every element, zero first, in a fixed order.
    fn elements() -> Vec<Self>;
}

pub(crate) const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes for which [`Fp`] is instantiated by [`with_prime_field!`](crate::with_prime_field).
pub const SUPPORTED_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// The prime field `GF(P)`. Values are kept reduced in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(is_prime(P) && P <= 97, "Fp requires a prime modulus <= 97");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 * rhs.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in GF(p)")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Self::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Self::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(n: i64) -> Self {
        Self::new(n.rem_euclid(P as i64) as u64)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn characteristic() -> u64 {
        P
    }

    fn name() -> String {
        format!("GF({P})")
    }
}

impl<const P: u64> FiniteField for Fp<P> {
    fn order() -> u64 {
        P
    }

    fn elements() -> Vec<Self> {
        (0..P).map(Self::new).collect()
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn name() -> String {
        "Q".to_string()
    }
}

/// Parses `a` or `a/b` with optional sign into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Runtime choice of field, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Prime(u64),
    Rationals,
}

impl FieldKind {
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s == "0" {
            return Some(FieldKind::Rationals);
        }
        let s = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let p: u64 = s.parse().ok()?;
        SUPPORTED_PRIMES.contains(&p).then_some(FieldKind::Prime(p))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldKind::Prime(_))
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Rationals => write!(f, "Q"),
        }
    }
}

/// Runs a block with the type alias `$F` bound to `Fp<p>` for a runtime prime
/// `p`. Evaluates to `None` when `p` is not one of [`SUPPORTED_PRIMES`].
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $F:ident => $body:expr) => {{
        macro_rules! __arm {
            ($q:literal) => {{
                #[allow(dead_code)]
                type $F = $crate::field::Fp<$q>;
                Some($body)
            }};
        }
        match $p {
            2 => __arm!(2),
            3 => __arm!(3),
            5 => __arm!(5),
            7 => __arm!(7),
            11 => __arm!(11),
            13 => __arm!(13),
            17 => __arm!(17),
            19 => __arm!(19),
            23 => __arm!(23),
            29 => __arm!(29),
            31 => __arm!(31),
            37 => __arm!(37),
            41 => __arm!(41),
            43 => __arm!(43),
            47 => __arm!(47),
            53 => __arm!(53),
            59 => __arm!(59),
            61 => __arm!(61),
            67 => __arm!(67),
            71 => __arm!(71),
            73 => __arm!(73),
            79 => __arm!(79),
            83 => __arm!(83),
            89 => __arm!(89),
            97 => __arm!(97),
            _ => None,
        }
    }};
}
