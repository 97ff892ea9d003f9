//! Lifting arcs through the blowup of the chart origin.
//!
//! Each lift works in the chart containing the lifted arc's center: with
//! pivot coordinate `x_m` of minimal order, the new coordinates are `x_m`
//! and `x_i/x_m - c_i`, where `c_i` is the constant term of the quotient.
//! Nothing global is materialized; a [`BlowupRecord`] keeps exactly the
//! chart data one step produces, and a [`CenterSequence`] strings them
//! together.

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::series::Series;

/// One blowup step: the pivot chosen, the chart constants, and the lifted
/// arc in the new chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupRecord<F: Field> {
    /// 0-based index of the coordinate of minimal order (lowest index wins
    /// ties, so runs are reproducible).
    pub pivot: usize,
    /// Order of the pivot component; the lift costs this much precision.
    pub pivot_order: usize,
    /// Constant terms of `γ*(x_i)/γ*(x_m)` for `i != pivot`, in coordinate
    /// order with the pivot skipped.
    pub constants: Vec<F>,
    /// The lifted arc; its precision is the input precision minus
    /// `pivot_order`.
    pub lifted: Arc<F>,
}

impl<F: Field> BlowupRecord<F> {
    /// Whether two records describe the same center: same pivot chart and
    /// the same point of the exceptional divisor in it.
    pub fn same_center(&self, other: &BlowupRecord<F>) -> bool {
        self.pivot == other.pivot && self.constants == other.constants
    }
}

/// The centers an arc passes through under iterated blowups.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSequence<F: Field> {
    pub steps: Vec<BlowupRecord<F>>,
    /// Set when the requested depth could not be reached: remaining
    /// precision after the recorded steps.
    pub exhausted_at: Option<usize>,
}

impl<F: Field> CenterSequence<F> {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }
}

/// Lift an arc through the blowup of the chart origin.
///
/// Errors when the arc is trivial to precision, or when no pivot order is
/// visible at the current precision, or when the lift would leave no
/// precision at all.
pub fn blowup_lift<F: Field>(arc: &Arc<F>) -> Result<BlowupRecord<F>> {
    if arc.is_trivial() {
        return Err(Error::TrivialArc);
    }
    let (pivot, e) = arc
        .min_order()
        .ok_or(Error::PivotUndetermined {
            precision: arc.precision(),
        })?;
    debug_assert!(e >= 1, "components have zero constant terms");
    let n = arc.precision();
    if n <= e {
        return Err(Error::PrecisionExhausted {
            depth: 0,
            residual: n,
        });
    }
    // x_m = t^e * u with u a unit at precision n - e.
    let unit = arc.component(pivot).shift_down(e);
    let unit_inv = unit.unit_inverse().expect("pivot has exact order e");
    let mut constants = Vec::with_capacity(arc.dim() - 1);
    let mut lifted = Vec::with_capacity(arc.dim());
    for (i, comp) in arc.components().iter().enumerate() {
        if i == pivot {
            lifted.push(comp.truncate(n - e));
            continue;
        }
        // ord(x_i) >= e, so the quotient is a genuine series.
        let quotient = &comp.shift_down(e) * &unit_inv;
        let c = quotient.coeff(0).clone();
        let mut centered = quotient;
        centered = &centered - &Series::constant(c.clone(), n - e);
        constants.push(c);
        lifted.push(centered);
    }
    Ok(BlowupRecord {
        pivot,
        pivot_order: e,
        constants,
        lifted: Arc::new(lifted).expect("lift preserves arc invariants"),
    })
}

/// Iterate [`blowup_lift`] `r` times, stopping early with an explicit
/// exhaustion marker when the precision runs out.
///
/// A trivial input arc is an error; an arc that merely *looks* trivial after
/// some steps (every coefficient consumed) is reported as exhaustion, since
/// only the truncation is to blame.
pub fn center_sequence<F: Field>(arc: &Arc<F>, r: usize) -> Result<CenterSequence<F>> {
    if arc.is_trivial() {
        return Err(Error::TrivialArc);
    }
    let mut steps = Vec::with_capacity(r);
    let mut current = arc.clone();
    for _ in 0..r {
        match blowup_lift(&current) {
            Ok(record) => {
                current = record.lifted.clone();
                steps.push(record);
            }
            Err(Error::TrivialArc) | Err(Error::PivotUndetermined { .. }) | Err(Error::PrecisionExhausted { .. }) => {
                return Ok(CenterSequence {
                    exhausted_at: Some(current.precision()),
                    steps,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CenterSequence {
        steps,
        exhausted_at: None,
    })
}
