//! Coefficient fields: exact arithmetic with decidable equality.
//!
//! [`Rat`] (arbitrary-precision rationals) is the default field. [`Fp`] is a
//! prime field with the modulus fixed at construction; its elements carry
//! their modulus so that series and arcs over different primes cannot be
//! mixed silently.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// An exact field scalar.
///
/// Beyond the ring operations inherited from `num_traits`, a field here knows
/// its characteristic, can invert nonzero elements, and can decide whether an
/// element has an exact r-th root.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Characteristic of the field; `None` in characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// The image of the integer `n` in the same field as `self`.
    fn embed_int(&self, n: i64) -> Self;

    /// An exact r-th root of `self` in the field, if one exists.
    ///
    /// For rationals this requires numerator and denominator to be perfect
    /// r-th powers (negative bases are allowed for odd `r`). For a prime
    /// field the root is found by exhaustive search, which is fine at the
    /// moduli this crate is meant for.
    fn nth_root(&self, r: u32) -> Option<Self>;
}

impl Field for Rat {
    fn characteristic(&self) -> Option<u64> {
        None
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn embed_int(&self, n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn nth_root(&self, r: u32) -> Option<Self> {
        assert!(r >= 1, "root index must be positive");
        if r == 1 || self.is_zero() || self.is_one() {
            return Some(self.clone());
        }
        if self.is_negative() {
            if r % 2 == 0 {
                return None;
            }
            return (-self).nth_root(r).map(|root| -root);
        }
        let num_root = self.numer().nth_root(r);
        let den_root = self.denom().nth_root(r);
        let exact = num_root.pow(r) == *self.numer() && den_root.pow(r) == *self.denom();
        exact.then(|| Rat::new(num_root, den_root))
    }
}

/// Element of a prime field 𝔽_p with the modulus chosen at runtime.
///
/// The additive and multiplicative identities produced through
/// [`Zero`]/[`One`] do not yet know their modulus; they behave as plain
/// integer constants until combined with an attached element, at which point
/// they are reduced. Combining elements attached to *different* primes is a
/// programming error and panics.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i64,
    modulus: u64, // 0 = unattached integer constant
}

impl Fp {
    /// An element of 𝔽_p. `p` must be a prime; small values only are checked.
    pub fn new(value: i64, p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        Fp {
            value: value.rem_euclid(p as i64),
            modulus: p,
        }
    }

    /// An integer constant not yet attached to a modulus.
    pub fn constant(value: i64) -> Self {
        Fp { value, modulus: 0 }
    }

    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus)
    }

    /// Canonical representative in `0..p`, or the raw constant if unattached.
    pub fn residue(&self) -> i64 {
        self.value
    }

    fn unify(a: &Fp, b: &Fp) -> (i64, i64, u64) {
        match (a.modulus, b.modulus) {
            (0, 0) => (a.value, b.value, 0),
            (p, 0) => (a.value, b.value.rem_euclid(p as i64), p),
            (0, p) => (a.value.rem_euclid(p as i64), b.value, p),
            (p, q) if p == q => (a.value, b.value, p),
            (p, q) => panic!("mixed prime fields: F_{p} and F_{q}"),
        }
    }

    fn make(value: i64, modulus: u64) -> Self {
        if modulus == 0 {
            Fp { value, modulus }
        } else {
            Fp {
                value: value.rem_euclid(modulus as i64),
                modulus,
            }
        }
    }

    fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.modulus, other.modulus) {
            (p, q) if p == q => self.value == other.value,
            (0, p) => self.value.rem_euclid(p as i64) == other.value,
            (p, 0) => self.value == other.value.rem_euclid(p as i64),
            _ => false,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(&self, &rhs);
        Fp::make(a.checked_add(b).expect("integer constant overflow"), p)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(&self, &rhs);
        Fp::make(a.checked_sub(b).expect("integer constant overflow"), p)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(&self, &rhs);
        Fp::make(a.checked_mul(b).expect("integer constant overflow"), p)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::make(-self.value, self.modulus)
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp::constant(0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp::constant(1)
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
}

impl Field for Fp {
    fn characteristic(&self) -> Option<u64> {
        // Unattached constants behave as integers until they meet an
        // attached element.
        self.modulus()
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self.modulus {
            0 => match self.value {
                1 => Some(*self),
                -1 => Some(*self),
                _ => panic!("cannot invert the integer constant {} without a modulus", self.value),
            },
            p => {
                // Fermat: a^(p-2) = a^(-1) in F_p.
                let inv = Fp::pow_mod(self.value as u64, p - 2, p);
                Some(Fp::new(inv as i64, p))
            }
        }
    }

    fn embed_int(&self, n: i64) -> Self {
        Fp::make(n, self.modulus)
    }

    fn nth_root(&self, r: u32) -> Option<Self> {
        assert!(r >= 1, "root index must be positive");
        match self.modulus {
            0 => match self.value {
                0 => Some(*self),
                1 => Some(*self),
                -1 if r % 2 == 1 => Some(*self),
                _ => panic!("cannot take a root of the integer constant {} without a modulus", self.value),
            },
            p => {
                let target = self.value as u64;
                (0..p)
                    .find(|&x| Fp::pow_mod(x, r as u64, p) == target)
                    .map(|x| Fp::new(x as i64, p))
            }
        }
    }
}

/// Parse an exact rational from `"a"` or `"a/b"` (lowest terms not required).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| format!("invalid integer `{num_str}`"))?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(numer, denom))
}

/// Parse an element of 𝔽_p from `"a"` or `"a/b"`.
pub fn parse_fp(s: &str, p: u64) -> Result<Fp, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: i64 = num_str
        .parse()
        .map_err(|_| format!("invalid integer `{num_str}`"))?;
    let numer = Fp::new(numer, p);
    match den_str {
        None => Ok(numer),
        Some(d) => {
            let denom: i64 = d.parse().map_err(|_| format!("invalid integer `{d}`"))?;
            let denom = Fp::new(denom, p);
            let inv = denom
                .inverse()
                .ok_or_else(|| format!("`{s}`: denominator is zero mod {p}"))?;
            Ok(numer * inv)
        }
    }
}

/// `gcd` of two nonnegative integers; `gcd(0, a) = a`.
pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rat(4, 9).nth_root(2), Some(rat(2, 3)));
        assert_eq!(rat(8, 27).nth_root(3), Some(rat(2, 3)));
        assert_eq!(rat(-8, 27).nth_root(3), Some(rat(-2, 3)));
        assert_eq!(rat(-4, 9).nth_root(2), None);
        assert_eq!(rat(2, 1).nth_root(2), None);
        assert_eq!(rat(5, 7).nth_root(1), Some(rat(5, 7)));
    }

    #[test]
    fn fp_arithmetic() {
        let p = 7;
        let a = Fp::new(3, p);
        let b = Fp::new(5, p);
        assert_eq!(a + b, Fp::new(1, p));
        assert_eq!(a * b, Fp::new(1, p));
        assert_eq!(a.inverse(), Some(Fp::new(5, p)));
        assert_eq!(-a, Fp::new(4, p));
        assert_eq!(Fp::new(-3, p), Fp::new(4, p));
    }

    #[test]
    fn fp_constants_attach() {
        let a = Fp::new(4, 5);
        let zero = Fp::zero();
        assert_eq!(a + zero, a);
        assert_eq!(zero + a, a);
        assert_eq!(Fp::one() * a, a);
        assert_eq!(Fp::constant(9), Fp::new(4, 5));
    }

    #[test]
    #[should_panic(expected = "mixed prime fields")]
    fn fp_mixed_moduli_panics() {
        let _ = Fp::new(1, 5) + Fp::new(1, 7);
    }

    #[test]
    fn fp_roots() {
        // 2 is a quadratic residue mod 7, 3 is not.
        let r = Fp::new(2, 7).nth_root(2).expect("2 is a square mod 7");
        assert_eq!(r * r, Fp::new(2, 7));
        assert!(Fp::new(3, 7).nth_root(2).is_none());
        let c = Fp::new(6, 7).nth_root(3).expect("6 is a cube mod 7");
        assert_eq!(c * c * c, Fp::new(6, 7));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("3/4"), Ok(rat(3, 4)));
        assert_eq!(parse_rat("-6/8"), Ok(rat(-3, 4)));
        assert_eq!(parse_rat("5"), Ok(rat(5, 1)));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn parse_prime_field() {
        assert_eq!(parse_fp("10", 7), Ok(Fp::new(3, 7)));
        assert_eq!(parse_fp("1/2", 7), Ok(Fp::new(4, 7)));
        assert!(parse_fp("1/7", 7).is_err());
    }
}
