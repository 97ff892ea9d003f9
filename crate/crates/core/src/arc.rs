//! Arcs on affine n-space and the valuation they induce.
//!
//! An [`Arc`] is an n-tuple of component series with zero constant terms:
//! the pullbacks of the chart coordinates along a parametrized curve germ
//! centered at the origin. The order of vanishing of polynomials and ideals
//! along the arc, and the normalization index (the gcd of all realizable
//! vanishing orders), live here.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{gcd, Field};
use crate::series::{Order, Series};

/// An arc on affine n-space: component series `γ*(x_1), …, γ*(x_n)` with a
/// common precision and zero constant terms (the arc passes through the
/// chart origin).
#[derive(Debug, Clone, PartialEq)]
pub struct Arc<F: Field> {
    components: Vec<Series<F>>,
}

impl<F: Field> Arc<F> {
    pub fn new(components: Vec<Series<F>>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::DimensionTooSmall(components.len()));
        }
        let n = components[0].precision();
        for c in &components {
            if c.precision() != n {
                return Err(Error::MixedPrecision(n, c.precision()));
            }
        }
        for (i, c) in components.iter().enumerate() {
            if !c.coeff(0).is_zero() {
                return Err(Error::NonzeroConstantTerm { index: i + 1 });
            }
        }
        Ok(Arc { components })
    }

    /// Arc from integer coefficient rows, one row per component, row index
    /// `j` holding the coefficient of `t^j`.
    pub fn from_ints(witness: &F, rows: &[&[i64]], precision: usize) -> Result<Self> {
        let components = rows
            .iter()
            .map(|row| Series::from_ints(witness, row, precision))
            .collect();
        Arc::new(components)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn precision(&self) -> usize {
        self.components[0].precision()
    }

    pub fn components(&self) -> &[Series<F>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Series<F> {
        &self.components[i]
    }

    pub fn truncate(&self, n: usize) -> Self {
        Arc {
            components: self.components.iter().map(|c| c.truncate(n)).collect(),
        }
    }

    /// True when every component vanishes to the known precision. The answer
    /// is truncation-limited: coefficients beyond the precision are invisible.
    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(|c| c.is_zero_to_precision())
    }

    /// True when some coordinate has order exactly 1; the minimum of the
    /// valuation over the maximal ideal is attained on the coordinates.
    pub fn is_nonsingular(&self) -> bool {
        self.components
            .iter()
            .any(|c| c.ord() == Order::Finite(1))
    }

    /// The minimal component order and the lowest component index attaining
    /// it, or `None` when no component order is visible.
    pub fn min_order(&self) -> Option<(usize, usize)> {
        self.components
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.ord().finite().map(|m| (m, i)))
            .min()
            .map(|(m, i)| (i, m))
    }

    /// Order of vanishing of a polynomial along the arc.
    pub fn ord_poly(&self, psi: &Poly<F>) -> Result<Order> {
        Ok(psi.eval_series(&self.components)?.ord())
    }

    /// Order of vanishing of the ideal spanned by `gens`: the minimum of the
    /// generator orders (which is the ideal order for any generating set).
    pub fn ord_ideal(&self, gens: &[Poly<F>]) -> Result<Order> {
        if gens.is_empty() {
            return Err(Error::EmptyGeneratingSet);
        }
        let mut acc: Option<Order> = None;
        for g in gens {
            let o = self.ord_poly(g)?;
            acc = Some(match acc {
                None => o,
                Some(prev) => prev.min(o),
            });
        }
        Ok(acc.expect("nonempty generator list"))
    }

    /// Normalization index: the gcd of all orders of vanishing realizable in
    /// the subalgebra generated by the components, witnessed up to the
    /// precision bound.
    ///
    /// The realized orders are found by a saturation: keep one representative
    /// series per realized order, close under pairwise products, and reduce
    /// leading-term cancellations between same-order elements into new
    /// representatives. Orders at or beyond the precision stay invisible, so
    /// the true index always divides the witnessed one.
    pub fn normalization_index(&self) -> Result<NormalizationIndex> {
        if self.is_trivial() {
            return Err(Error::TrivialArc);
        }
        let bound = self.precision();
        let mut table: BTreeMap<usize, Series<F>> = BTreeMap::new();
        for c in &self.components {
            insert_reduced(&mut table, c.clone(), bound);
        }
        loop {
            let reps: Vec<Series<F>> = table.values().cloned().collect();
            let before = table.len();
            for (i, a) in reps.iter().enumerate() {
                for b in reps.iter().skip(i) {
                    insert_reduced(&mut table, a * b, bound);
                }
            }
            if table.len() == before {
                break;
            }
        }
        let realized: Vec<usize> = table.keys().copied().collect();
        let d = realized.iter().fold(0, |acc, &m| gcd(acc, m));
        Ok(NormalizationIndex {
            d,
            realized_orders: realized,
            order_bound: bound,
        })
    }
}

/// Gaussian insertion: reduce `s` against the representative of its order
/// until it lands in an empty slot or dies below the precision bound.
fn insert_reduced<F: Field>(table: &mut BTreeMap<usize, Series<F>>, mut s: Series<F>, bound: usize) {
    loop {
        let m = match s.ord() {
            Order::Finite(m) if m < bound => m,
            _ => return,
        };
        match table.get(&m) {
            None => {
                table.insert(m, s);
                return;
            }
            Some(rep) => {
                let lc_s = s.coeff(m).clone();
                let lc_rep = rep.coeff(m).clone();
                let factor = lc_s * lc_rep.inverse().expect("representative has nonzero lead");
                s = &s - &rep.scale(&factor);
            }
        }
    }
}

/// Witnessed normalization data: the gcd of the realized orders, the orders
/// themselves, and the precision bound they were collected under.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationIndex {
    pub d: usize,
    pub realized_orders: Vec<usize>,
    pub order_bound: usize,
}

impl fmt::Display for NormalizationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d = {} (realized orders {:?} below {})",
            self.d, self.realized_orders, self.order_bound
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::One;

    fn arc(rows: &[&[i64]], n: usize) -> Arc<Rat> {
        Arc::from_ints(&Rat::one(), rows, n).unwrap()
    }

    fn x(i: usize, n: usize) -> Poly<Rat> {
        Poly::var(i, n)
    }

    #[test]
    fn construction_guards() {
        assert!(matches!(
            Arc::from_ints(&Rat::one(), &[&[0, 1]], 4),
            Err(Error::DimensionTooSmall(1))
        ));
        assert!(matches!(
            Arc::from_ints(&Rat::one(), &[&[1, 1], &[0, 1]], 4),
            Err(Error::NonzeroConstantTerm { index: 1 })
        ));
    }

    #[test]
    fn ord_poly_examples() {
        // (t, 0, 0): x1 has order 1, x2 vanishes to precision.
        let a = arc(&[&[0, 1], &[], &[]], 10);
        assert_eq!(a.ord_poly(&x(1, 3)).unwrap(), Order::Finite(1));
        assert_eq!(a.ord_poly(&x(2, 3)).unwrap(), Order::AtLeast(10));

        // Cusp: x1^3 - x2^2 cancels exactly on (t^2, t^3).
        let cusp = arc(&[&[0, 0, 1], &[0, 0, 0, 1]], 12);
        let psi = &x(1, 2).pow(3) - &x(2, 2).pow(2);
        assert_eq!(cusp.ord_poly(&psi).unwrap(), Order::AtLeast(12));
        let sum = &x(1, 2) + &x(2, 2);
        assert_eq!(cusp.ord_poly(&sum).unwrap(), Order::Finite(2));
    }

    #[test]
    fn ord_ideal_examples() {
        let cusp = arc(&[&[0, 0, 1], &[0, 0, 0, 1]], 12);
        assert_eq!(
            cusp.ord_ideal(&[x(1, 2), x(2, 2)]).unwrap(),
            Order::Finite(2)
        );
        let axis = arc(&[&[0, 1], &[]], 10);
        assert_eq!(axis.ord_ideal(&[x(2, 2)]).unwrap(), Order::AtLeast(10));
        // (t^3, t^4) against {x1^2, x2}: min(6, 4) = 4.
        let a = arc(&[&[0, 0, 0, 1], &[0, 0, 0, 0, 1]], 16);
        assert_eq!(
            a.ord_ideal(&[x(1, 2).pow(2), x(2, 2)]).unwrap(),
            Order::Finite(4)
        );
        assert_eq!(a.ord_ideal(&[]), Err(Error::EmptyGeneratingSet));
    }

    #[test]
    fn triviality_and_nonsingularity() {
        assert!(arc(&[&[], &[]], 8).is_trivial());
        assert!(!arc(&[&[0, 1], &[]], 8).is_trivial());
        let tail = arc(&[&[], &[0, 0, 0, 0, 0, 0, 0, 1]], 8);
        assert!(!tail.is_trivial());

        assert!(arc(&[&[0, 1], &[0, 0, 0, 0, 0, 1]], 8).is_nonsingular());
        assert!(!arc(&[&[0, 0, 1], &[0, 0, 0, 1]], 8).is_nonsingular());
        assert!(!arc(&[&[0, 0, 1, 1], &[0, 0, 0, 0, 0, 0, 0, 1]], 9).is_nonsingular());
    }

    #[test]
    fn normalization_index_examples() {
        // <2,3> has gcd 1.
        let cusp = arc(&[&[0, 0, 1], &[0, 0, 0, 1]], 12);
        assert_eq!(cusp.normalization_index().unwrap().d, 1);
        // all orders even
        let even = arc(&[&[0, 0, 1], &[0, 0, 0, 0, 1]], 16);
        assert_eq!(even.normalization_index().unwrap().d, 2);
        // cancellation reveals order 3: x2 - x1 = t^3.
        let cancel = arc(&[&[0, 0, 1], &[0, 0, 1, 1]], 12);
        assert_eq!(cancel.normalization_index().unwrap().d, 1);
        // order 1 realized directly
        let ns = arc(&[&[0, 1], &[0, 0, 0, 1]], 8);
        assert_eq!(ns.normalization_index().unwrap().d, 1);
        // trivial arc is rejected
        assert_eq!(
            arc(&[&[], &[]], 8).normalization_index(),
            Err(Error::TrivialArc)
        );
    }
}
