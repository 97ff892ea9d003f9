//! Truncated formal power series in one variable `t` over an exact field.
//!
//! A [`Series`] is a dense coefficient vector together with its precision
//! `N`: the series is known modulo `t^N`, and the vector always has length
//! exactly `N`. Operations never pad results beyond what they can guarantee;
//! each operation documents the precision of its result.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Order of vanishing of a truncated series.
///
/// `Finite(m)` means the coefficient of `t^m` is the first nonzero one.
/// `AtLeast(N)` means every known coefficient vanishes; it is the
/// truncation-level stand-in for an infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(usize),
    AtLeast(usize),
}

impl Order {
    /// Whether the order is known to be `>= q`.
    pub fn at_least(&self, q: usize) -> bool {
        match *self {
            Order::Finite(m) => m >= q,
            Order::AtLeast(n) => n >= q,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match *self {
            Order::Finite(m) => Some(m),
            Order::AtLeast(_) => None,
        }
    }

    /// Lower bound on the order implied by this knowledge.
    pub fn lower_bound(&self) -> usize {
        match *self {
            Order::Finite(m) | Order::AtLeast(m) => m,
        }
    }

    /// Conservative minimum: exact when both are finite, otherwise the best
    /// statement the truncated knowledge supports.
    pub fn min(self, other: Order) -> Order {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a.min(b)),
            (Order::Finite(m), Order::AtLeast(n)) | (Order::AtLeast(n), Order::Finite(m)) => {
                if m < n {
                    Order::Finite(m)
                } else {
                    Order::AtLeast(n)
                }
            }
            (Order::AtLeast(a), Order::AtLeast(b)) => Order::AtLeast(a.min(b)),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "Finite({m})"),
            Order::AtLeast(n) => write!(f, "AtLeast({n})"),
        }
    }
}

/// Truncated formal power series: `coeffs[j]` is the coefficient of `t^j`,
/// and `coeffs.len()` is the precision.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Series<F> {
    /// Series from its coefficient vector; the length is the precision and
    /// must be positive.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "series precision must be positive");
        Series { coeffs }
    }

    /// The zero series at precision `n`.
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "series precision must be positive");
        Series {
            coeffs: vec![F::zero(); n],
        }
    }

    /// The constant series `c` at precision `n`.
    pub fn constant(c: F, n: usize) -> Self {
        let mut s = Series::zero(n);
        s.coeffs[0] = c;
        s
    }

    /// The identity series `t` at precision `n >= 2`.
    pub fn t(n: usize) -> Self {
        assert!(n >= 2, "t is invisible below precision 2");
        let mut s = Series::zero(n);
        s.coeffs[1] = F::one();
        s
    }

    /// The monomial `c * t^k` at precision `n > k`.
    pub fn monomial(c: F, k: usize, n: usize) -> Self {
        assert!(k < n, "monomial degree {k} not representable at precision {n}");
        let mut s = Series::zero(n);
        s.coeffs[k] = c;
        s
    }

    /// Build from integer coefficients for tests and fixtures. The witness
    /// fixes which field the integers land in.
    pub fn from_ints(witness: &F, ints: &[i64], n: usize) -> Self {
        assert!(ints.len() <= n, "more coefficients than the precision admits");
        let mut coeffs: Vec<F> = ints.iter().map(|&v| witness.embed_int(v)).collect();
        coeffs.resize(n, F::zero());
        Series { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `t^j`; `j` must be below the precision.
    pub fn coeff(&self, j: usize) -> &F {
        &self.coeffs[j]
    }

    /// A nonzero coefficient to use as a field witness, if any.
    pub fn field_witness(&self) -> Option<&F> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Order of vanishing: index of the first nonzero coefficient.
    pub fn ord(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(m) => Order::Finite(m),
            None => Order::AtLeast(self.precision()),
        }
    }

    pub fn is_zero_to_precision(&self) -> bool {
        !self.ord().is_finite()
    }

    /// Restrict to precision `n <= precision()`.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n > 0, "series precision must be positive");
        assert!(n <= self.precision(), "cannot extend precision by truncation");
        Series {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Multiply by `t^k`. This is exact, so the precision grows to `N + k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Divide by `t^k`; requires the order to be at least `k`. Precision
    /// drops to `N - k`.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(
            self.ord().at_least(k),
            "cannot divide by t^{k}: order is {}",
            self.ord()
        );
        assert!(self.precision() > k, "no precision left after dividing by t^{k}");
        Series {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect(),
        }
    }

    /// `self^k` at the common precision.
    pub fn pow(&self, k: usize) -> Self {
        let n = self.precision();
        let mut acc = Series::constant(F::one(), n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Composition `self(inner)`, requiring `ord(inner) >= 1`.
    ///
    /// Precision of the result: `min(ord(inner) * precision(self),
    /// precision(inner))`. Terms of `self` beyond its precision contribute
    /// only at or above `ord(inner) * precision(self)`, and the inner series
    /// is itself only known modulo `t^precision(inner)`.
    pub fn compose(&self, inner: &Series<F>) -> Result<Series<F>> {
        let e = match inner.ord() {
            Order::Finite(0) => return Err(Error::CompositionNeedsPositiveOrder),
            Order::Finite(m) => m,
            // Zero inner series: composition is the constant term, and the
            // guarantee below saturates at the inner precision.
            Order::AtLeast(n) => n,
        };
        let n_inner = inner.precision();
        let result_precision = (e.saturating_mul(self.precision())).min(n_inner);
        // Horner evaluation at the inner precision, then truncate to the
        // guarantee.
        let mut acc = Series::zero(n_inner);
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc.truncate(result_precision))
    }

    /// Compositional inverse: the series `s` with `s(self) = self(s) = t`,
    /// found coefficient by coefficient from the leading one. Requires order
    /// exactly 1; the result has the same precision.
    pub fn comp_inverse(&self) -> Result<Series<F>> {
        let ord = self.ord();
        if ord != Order::Finite(1) {
            return Err(Error::NoCompositionalInverse(ord));
        }
        let n = self.precision();
        let b1 = &self.coeffs[1];
        let b1_inv = b1.inverse().expect("leading coefficient is nonzero");
        // acc = sum_{j < d} a_j * self^j, fpow = self^d, maintained together.
        let mut acc: Series<F> = Series::zero(n);
        let mut fpow = self.clone();
        let mut inv_coeffs = vec![F::zero(); n];
        let mut b1_pow = b1_inv.clone();
        for d in 1..n {
            // Coefficient of t^d must match t, i.e. equal [d == 1].
            let target = if d == 1 { F::one() } else { F::zero() };
            let a_d = (target - acc.coeffs[d].clone()) * b1_pow.clone();
            if !a_d.is_zero() {
                acc = &acc + &fpow.scale(&a_d);
            }
            inv_coeffs[d] = a_d;
            if d + 1 < n {
                fpow = &fpow * self;
                b1_pow = b1_pow * b1_inv.clone();
            }
        }
        Ok(Series::new(inv_coeffs))
    }

    /// Multiplicative inverse of a unit (order 0). Same precision.
    pub fn unit_inverse(&self) -> Result<Series<F>> {
        let ord = self.ord();
        if ord != Order::Finite(0) {
            return Err(Error::NotAUnit(ord));
        }
        let n = self.precision();
        let u0_inv = self.coeffs[0].inverse().expect("unit constant term");
        let mut inv = vec![F::zero(); n];
        inv[0] = u0_inv.clone();
        for k in 1..n {
            let mut s = F::zero();
            for i in 1..=k {
                s = s + self.coeffs[i].clone() * inv[k - i].clone();
            }
            inv[k] = -(u0_inv.clone() * s);
        }
        Ok(Series::new(inv))
    }

    /// An r-th root of a unit, via the binomial series
    /// `u_0^{1/r} * (1 + w)^{1/r}` with `w = u/u_0 - 1`.
    ///
    /// Requires the constant term to admit an r-th root in the field, and
    /// `r` to be invertible (characteristic 0, or `p` not dividing `r`).
    /// Same precision as the input.
    pub fn unit_root(&self, r: u32) -> Result<Series<F>> {
        assert!(r >= 1, "root index must be positive");
        let ord = self.ord();
        if ord != Order::Finite(0) {
            return Err(Error::NotAUnit(ord));
        }
        if r == 1 {
            return Ok(self.clone());
        }
        let u0 = &self.coeffs[0];
        if let Some(p) = u0.characteristic() {
            if r as u64 % p == 0 {
                return Err(Error::RootDividesCharacteristic { p, r });
            }
        }
        let root0 = u0.nth_root(r).ok_or_else(|| Error::NoScalarRoot {
            value: u0.to_string(),
            r,
        })?;
        let n = self.precision();
        let u0_inv = u0.inverse().expect("unit constant term");
        // w = u/u0 - 1 has order >= 1.
        let mut w = self.scale(&u0_inv);
        w.coeffs[0] = F::zero();
        let inv_r = u0
            .embed_int(r as i64)
            .inverse()
            .expect("r is invertible by the characteristic check");
        // acc = sum binom(1/r, i) w^i, with the binomial coefficients built
        // incrementally: c_i = c_{i-1} * (1/r - (i-1)) / i.
        let mut acc = Series::constant(F::one(), n);
        let mut wpow = Series::constant(F::one(), n);
        let mut c = F::one();
        for i in 1..n {
            wpow = &wpow * &w;
            let factor = inv_r.clone() - u0.embed_int(i as i64 - 1);
            let inv_i = u0.embed_int(i as i64).inverse().ok_or_else(|| {
                let p = u0.characteristic().unwrap_or(0);
                Error::NonInvertibleIndex { p, i }
            })?;
            c = c * factor * inv_i;
            if !c.is_zero() {
                acc = &acc + &wpow.scale(&c);
            }
        }
        Ok(acc.scale(&root0))
    }
}

impl<F: Field> Add for &Series<F> {
    type Output = Series<F>;

    /// Coefficient-wise sum at precision `min(N_a, N_b)`.
    fn add(self, rhs: &Series<F>) -> Series<F> {
        let n = self.precision().min(rhs.precision());
        let coeffs = (0..n)
            .map(|j| self.coeffs[j].clone() + rhs.coeffs[j].clone())
            .collect();
        Series { coeffs }
    }
}

impl<F: Field> Sub for &Series<F> {
    type Output = Series<F>;

    fn sub(self, rhs: &Series<F>) -> Series<F> {
        let n = self.precision().min(rhs.precision());
        let coeffs = (0..n)
            .map(|j| self.coeffs[j].clone() - rhs.coeffs[j].clone())
            .collect();
        Series { coeffs }
    }
}

impl<F: Field> Mul for &Series<F> {
    type Output = Series<F>;

    /// Cauchy product truncated at precision `min(N_a, N_b)`.
    fn mul(self, rhs: &Series<F>) -> Series<F> {
        let n = self.precision().min(rhs.precision());
        let mut coeffs = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs }
    }
}

impl<F: Field> Neg for &Series<F> {
    type Output = Series<F>;

    fn neg(self) -> Series<F> {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<F: Field> fmt::Display for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{j}")?,
                _ => write!(f, "{c}*t^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision())
    }
}
