//! Desingularization of a normalized arc by iterated blowups.
//!
//! Repeated lifting through point blowups makes the minimal coordinate order
//! drop; an *iteration* happens each time it does. The drops form a strictly
//! decreasing sequence of positive integers, so after finitely many blowups
//! the lifted arc is nonsingular. In that final chart, with `x_1` the
//! order-1 coordinate, every other coordinate pullback is a series in the
//! pullback of `x_1`: the series `P_2, …, P_n` extracted here. Orders of
//! vanishing along the original arc can then be read off by substituting
//! `(t, P_2(t), …, P_n(t))`.

use crate::arc::Arc;
use crate::blowup::{blowup_lift, BlowupRecord};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;
use crate::series::{Order, Series};

/// Result of desingularizing a normalized arc.
#[derive(Debug, Clone, PartialEq)]
pub struct HneResult<F: Field> {
    /// Number of blowups performed.
    pub depth: usize,
    /// Per-step chart data of the blowups, in order.
    pub steps: Vec<BlowupRecord<F>>,
    /// Permutation applied to the final chart so that coordinate 1 has
    /// order 1: `permutation[k]` is the original index of coordinate `k`.
    pub permutation: Vec<usize>,
    /// The lifted arc in the final chart, coordinates permuted.
    pub arc: Arc<F>,
    /// The series `P_2, …, P_n` (index 0 holds `P_2`), each with zero
    /// constant term, at the residual precision.
    pub p: Vec<Series<F>>,
    /// Orders of the successive pivots: strictly decreasing, ending at 1.
    pub iteration_orders: Vec<usize>,
}

impl<F: Field> HneResult<F> {
    pub fn dim(&self) -> usize {
        self.arc.dim()
    }

    /// Residual precision after the blowups.
    pub fn residual_precision(&self) -> usize {
        self.arc.precision()
    }

    /// Coefficient `c_{i,j}` of `t^j` in `P_i`, for `2 <= i <= n`, `j >= 1`.
    pub fn coefficient(&self, i: usize, j: usize) -> Result<&F> {
        assert!((2..=self.dim()).contains(&i), "P_{i} does not exist");
        assert!(j >= 1, "P_i have zero constant terms; coefficients start at 1");
        let p = &self.p[i - 2];
        if j >= p.precision() {
            return Err(Error::InsufficientCoefficients {
                needed: j,
                available: p.precision() - 1,
            });
        }
        Ok(p.coeff(j))
    }

    /// Evaluate the valuation on a polynomial in the final chart
    /// coordinates: the order of `psi(t, P_2(t), …, P_n(t))`.
    pub fn eval_valuation(&self, psi: &Poly<F>) -> Result<Order> {
        let n = self.residual_precision();
        let mut args = Vec::with_capacity(self.dim());
        args.push(Series::t(n));
        args.extend(self.p.iter().cloned());
        Ok(psi.eval_series(&args)?.ord())
    }

    /// The relations `x_i - P_i(x_1)` for `2 <= i <= n`, as pairs of the
    /// coordinate index and the series `P_i`. They generate the kernel of
    /// the arc's coordinate homomorphism up to the residual precision.
    pub fn kernel_generators(&self) -> Vec<(usize, &Series<F>)> {
        self.p.iter().enumerate().map(|(k, p)| (k + 2, p)).collect()
    }
}

/// Desingularize a normalized, nontrivial arc.
///
/// Fails when the witnessed normalization index is not 1, and reports the
/// depth reached if the precision runs out before a nonsingular lift.
pub fn hne_expand<F: Field>(arc: &Arc<F>) -> Result<HneResult<F>> {
    let norm = arc.normalization_index()?;
    if norm.d != 1 {
        return Err(Error::NotNormalized { d: norm.d });
    }
    let mut current = arc.clone();
    let mut steps: Vec<BlowupRecord<F>> = Vec::new();
    let mut iteration_orders: Vec<usize> = Vec::new();
    loop {
        let min = current.min_order().ok_or(Error::PrecisionExhausted {
            depth: steps.len(),
            residual: current.precision(),
        })?;
        let order = min.1;
        match iteration_orders.last() {
            None => iteration_orders.push(order),
            Some(&last) if order < last => iteration_orders.push(order),
            _ => {}
        }
        if order == 1 {
            break;
        }
        match blowup_lift(&current) {
            Ok(record) => {
                current = record.lifted.clone();
                steps.push(record);
            }
            Err(Error::TrivialArc)
            | Err(Error::PivotUndetermined { .. })
            | Err(Error::PrecisionExhausted { .. }) => {
                return Err(Error::PrecisionExhausted {
                    depth: steps.len(),
                    residual: current.precision(),
                });
            }
            Err(e) => return Err(e),
        }
    }

    // Bring the order-1 coordinate to the front (lowest such index).
    let pivot = current
        .components()
        .iter()
        .position(|c| c.ord() == Order::Finite(1))
        .expect("loop exits on a nonsingular lift");
    let mut permutation = vec![pivot];
    permutation.extend((0..current.dim()).filter(|&i| i != pivot));
    let permuted = Arc::new(
        permutation
            .iter()
            .map(|&i| current.component(i).clone())
            .collect(),
    )
    .expect("permutation preserves arc invariants");

    // P_i = (lifted x_i) o (inverse of lifted x_1); since the inverse has
    // order 1, each P_i keeps the full residual precision.
    let u = permuted.component(0);
    let s = u.comp_inverse().expect("first coordinate has order 1");
    let mut p = Vec::with_capacity(permuted.dim() - 1);
    for i in 1..permuted.dim() {
        let pi = permuted
            .component(i)
            .compose(&s)
            .expect("inverse series has positive order");
        p.push(pi);
    }

    Ok(HneResult {
        depth: steps.len(),
        steps,
        permutation,
        arc: permuted,
        p,
        iteration_orders,
    })
}
