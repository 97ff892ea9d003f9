//! Polynomials in the jet variables `x_{i,j}` and evaluation points for
//! them.
//!
//! The jet variables are the coordinates of the arc space: `x_{i,j}` reads
//! off the coefficient of `t^j` in the pullback of the i-th chart
//! coordinate. Degrees start at `j = 1` because every arc here is centered
//! at the chart origin, pinning the `j = 0` variables to zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// The jet variable `x_{coord, degree}` (1-based coordinate, degree >= 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVar {
    pub coord: usize,
    pub degree: usize,
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.coord, self.degree)
    }
}

type JetMonomial = BTreeMap<JetVar, u32>;

/// Sparse polynomial in finitely many jet variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoly<F: Field> {
    terms: BTreeMap<JetMonomial, F>,
}

impl<F: Field> JetPoly<F> {
    pub fn zero() -> Self {
        JetPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut p = JetPoly::zero();
        if !c.is_zero() {
            p.terms.insert(JetMonomial::new(), c);
        }
        p
    }

    pub fn var(v: JetVar) -> Self {
        let mut m = JetMonomial::new();
        m.insert(v, 1);
        let mut p = JetPoly::zero();
        p.terms.insert(m, F::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &F)> {
        self.terms.iter()
    }

    /// Highest variable degree referenced anywhere in the polynomial.
    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.keys().map(|v| v.degree))
            .max()
            .unwrap_or(0)
    }

    fn insert_term(&mut self, m: JetMonomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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
            return JetPoly::zero();
        }
        let mut out = JetPoly::zero();
        for (m, a) in &self.terms {
            out.insert_term(m.clone(), c.clone() * a.clone());
        }
        out
    }

    /// Evaluate at a jet point; every referenced variable must be assigned.
    pub fn eval(&self, point: &JetPoint<F>) -> Result<F> {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m {
                let value = point.get(*v)?;
                for _ in 0..e {
                    term = term * value.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }
}

impl<F: Field> Add for &JetPoly<F> {
    type Output = JetPoly<F>;

    fn add(self, rhs: &JetPoly<F>) -> JetPoly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &JetPoly<F> {
    type Output = JetPoly<F>;

    fn sub(self, rhs: &JetPoly<F>) -> JetPoly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &JetPoly<F> {
    type Output = JetPoly<F>;

    fn mul(self, rhs: &JetPoly<F>) -> JetPoly<F> {
        let mut out = JetPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                for (v, e) in mb {
                    *m.entry(*v).or_insert(0) += e;
                }
                out.insert_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &JetPoly<F> {
    type Output = JetPoly<F>;

    fn neg(self) -> JetPoly<F> {
        let mut out = JetPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> fmt::Display for JetPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
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
            if m.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            let mut first_var = true;
            for (v, &e) in m {
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Assignment of the jet variables coming from an arc's coefficient table:
/// `x_{i,j}` is the coefficient of `t^j` in the i-th component, available
/// for `1 <= j < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoint<F: Field> {
    table: Vec<Vec<F>>,
}

impl<F: Field> JetPoint<F> {
    pub fn from_arc(arc: &Arc<F>) -> Self {
        let table = arc
            .components()
            .iter()
            .map(|c| c.coeffs()[1..].to_vec())
            .collect();
        JetPoint { table }
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    /// Highest degree with an assigned value.
    pub fn max_degree(&self) -> usize {
        self.table.first().map_or(0, |row| row.len())
    }

    pub fn get(&self, v: JetVar) -> Result<&F> {
        let row = self
            .table
            .get(v.coord.wrapping_sub(1))
            .ok_or(Error::MissingJetAssignment {
                needed: v.degree,
                available: self.max_degree(),
            })?;
        row.get(v.degree.wrapping_sub(1))
            .ok_or(Error::MissingJetAssignment {
                needed: v.degree,
                available: self.max_degree(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::{One, Zero};

    fn v(coord: usize, degree: usize) -> JetVar {
        JetVar { coord, degree }
    }

    #[test]
    fn arithmetic_and_eval() {
        // p = x2_2 - x1_1^2
        let p = &JetPoly::<Rat>::var(v(2, 2)) - &(&JetPoly::var(v(1, 1)) * &JetPoly::var(v(1, 1)));
        let arc = Arc::from_ints(&Rat::one(), &[&[0, 1], &[0, 0, 1]], 6).unwrap();
        let point = JetPoint::from_arc(&arc);
        // on (t, t^2): 1 - 1^2 = 0
        assert!(p.eval(&point).unwrap().is_zero());
        let other = Arc::from_ints(&Rat::one(), &[&[0, 1], &[0, 0, 3]], 6).unwrap();
        assert_eq!(
            p.eval(&JetPoint::from_arc(&other)).unwrap(),
            Rat::one().embed_int(2)
        );
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let p = JetPoly::<Rat>::var(v(1, 9));
        let arc = Arc::from_ints(&Rat::one(), &[&[0, 1], &[0, 0, 1]], 6).unwrap();
        let point = JetPoint::from_arc(&arc);
        assert!(matches!(
            p.eval(&point),
            Err(Error::MissingJetAssignment { needed: 9, available: 5 })
        ));
    }

    #[test]
    fn display_uses_underscore_names() {
        let p = &JetPoly::<Rat>::var(v(2, 1)) - &(&JetPoly::var(v(1, 1)) * &JetPoly::var(v(1, 1)));
        assert_eq!(p.to_string(), "x2_1 - x1_1^2");
    }
}
