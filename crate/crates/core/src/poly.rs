//! Sparse multivariate polynomials in the chart coordinates `x_1..x_n`.
//!
//! Exponent vectors map to nonzero coefficients; the zero polynomial stores
//! nothing. Substituting the component series of an arc gives the
//! order-of-vanishing machinery its inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::series::Series;

/// Polynomial in `n_vars` variables; keys are exponent vectors of that
/// length, values are nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F: Field> {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(n_vars: usize) -> Self {
        Poly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F, n_vars: usize) -> Self {
        let mut p = Poly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    /// The variable `x_{index}`, 1-based as in the chart coordinates.
    pub fn var(index: usize, n_vars: usize) -> Self {
        assert!(
            (1..=n_vars).contains(&index),
            "variable x{index} out of range for {n_vars} variables"
        );
        let mut exps = vec![0; n_vars];
        exps[index - 1] = 1;
        let mut p = Poly::zero(n_vars);
        p.terms.insert(exps, F::one());
        p
    }

    pub fn monomial(c: F, exps: Vec<u32>) -> Self {
        let mut p = Poly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    fn insert_term(&mut self, exps: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.n_vars);
        }
        let mut out = Poly::zero(self.n_vars);
        for (e, a) in &self.terms {
            out.insert_term(e.clone(), c.clone() * a.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::constant(F::one(), self.n_vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute the component series of an arc for the variables. All
    /// series must share a precision; the result has that precision.
    pub fn eval_series(&self, components: &[Series<F>]) -> Result<Series<F>> {
        if components.len() != self.n_vars {
            return Err(Error::VariableCountMismatch {
                expected: components.len(),
                found: self.n_vars,
            });
        }
        let n = components
            .iter()
            .map(|s| s.precision())
            .min()
            .expect("polynomials have at least one variable");
        // Cache powers of each component as needed.
        let mut powers: Vec<Vec<Series<F>>> = components
            .iter()
            .map(|s| vec![Series::constant(F::one(), n), s.truncate(n)])
            .collect();
        let mut acc = Series::zero(n);
        for (exps, c) in &self.terms {
            let mut term = Series::constant(c.clone(), n);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Evaluate at scalars.
    pub fn eval_scalars(&self, values: &[F]) -> Result<F> {
        if values.len() != self.n_vars {
            return Err(Error::VariableCountMismatch {
                expected: values.len(),
                found: self.n_vars,
            });
        }
        let mut acc = F::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = term * values[i].clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitute a polynomial for each variable (a polynomial coordinate
    /// change). `subs[i]` replaces `x_{i+1}` and all must share a variable
    /// count.
    pub fn substitute(&self, subs: &[Poly<F>]) -> Result<Poly<F>> {
        if subs.len() != self.n_vars {
            return Err(Error::VariableCountMismatch {
                expected: subs.len(),
                found: self.n_vars,
            });
        }
        let m = subs.first().map_or(self.n_vars, |p| p.n_vars);
        let mut acc = Poly::zero(m);
        for (exps, c) in &self.terms {
            let mut term = Poly::constant(c.clone(), m);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = &term * &subs[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = Poly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_term(exps, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        let mut out = Poly::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Reverse lexicographic order puts leading x1 powers first.
        for (exps, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let (negative, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let is_constant = exps.iter().all(|&e| e == 0);
            if is_constant {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            let mut first_var = true;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if e == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::One;

    fn x(i: usize, n: usize) -> Poly<Rat> {
        Poly::var(i, n)
    }

    fn series(ints: &[i64], n: usize) -> Series<Rat> {
        Series::from_ints(&Rat::one(), ints, n)
    }

    #[test]
    fn arithmetic_and_normalization() {
        let a = &x(1, 2) + &x(2, 2);
        let b = &a - &x(2, 2);
        assert_eq!(b, x(1, 2));
        // (x1 + x2)(x1 - x2) = x1^2 - x2^2
        let d = &a * &(&x(1, 2) - &x(2, 2));
        let expect = &x(1, 2).pow(2) - &x(2, 2).pow(2);
        assert_eq!(d, expect);
        // cancellation drops terms entirely
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn eval_series_substitutes() {
        // x1^3 - x2^2 on (t^2, t^3) vanishes identically.
        let cusp = &x(1, 2).pow(3) - &x(2, 2).pow(2);
        let c1 = series(&[0, 0, 1], 12);
        let c2 = series(&[0, 0, 0, 1], 12);
        let out = cusp.eval_series(&[c1, c2]).unwrap();
        assert!(out.is_zero_to_precision());
        assert_eq!(out.precision(), 12);
    }

    #[test]
    fn eval_series_checks_arity() {
        let p = x(1, 3);
        let s = series(&[0, 1], 4);
        assert!(matches!(
            p.eval_series(&[s]),
            Err(crate::error::Error::VariableCountMismatch { .. })
        ));
    }

    #[test]
    fn substitution_composes() {
        // psi = x1*x2; substitute x1 -> x1 + x2, x2 -> x2: psi = x1*x2 + x2^2.
        let psi = &x(1, 2) * &x(2, 2);
        let out = psi
            .substitute(&[&x(1, 2) + &x(2, 2), x(2, 2)])
            .unwrap();
        let expect = &(&x(1, 2) * &x(2, 2)) + &x(2, 2).pow(2);
        assert_eq!(out, expect);
    }

    #[test]
    fn display_is_readable() {
        let p = &x(1, 2).pow(3) - &x(2, 2).pow(2);
        assert_eq!(p.to_string(), "x1^3 - x2^2");
        let q = &Poly::constant(Rat::one().embed_int(-2), 2) * &x(1, 2);
        assert_eq!(q.to_string(), "-2*x1");
    }
}
