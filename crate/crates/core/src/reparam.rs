//! Deciding whether one arc reparametrizes another.
//!
//! `γ` is a reparametrization of `α` when `γ = α ∘ h` for a series `h` with
//! zero constant term. The solver desingularizes `α`, lifts `γ` through the
//! same centers, reads `h` off the order-1 coordinate by compositional
//! inversion, and then verifies every component. Failures carry a witness:
//! either the blowup step where the centers part ways, or the kernel
//! relation with finite order along `γ`.

use std::fmt;

use crate::arc::Arc;
use crate::blowup::blowup_lift;
use crate::error::Error;
use crate::hne::{hne_expand, HneResult};
use crate::scalar::Field;
use crate::series::{Order, Series};

/// A successful reparametrization `γ = α ∘ h`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReparamResult<F: Field> {
    /// The reparametrizing series, with zero constant term.
    pub h: Series<F>,
    /// `ord(h)`; finite and positive except for the trivial `γ`, where the
    /// zero series stands in for `h` and the order is only bounded below.
    pub h_order: Order,
    /// Precision through which every component of `α ∘ h` matched `γ`.
    pub verified_to: usize,
}

/// Why an arc is not a reparametrization.
#[derive(Debug, Clone, PartialEq)]
pub enum NotReparam<F: Field> {
    /// The candidate's center sequence leaves the reference one at `step`
    /// (1-based).
    CenterDivergence {
        step: usize,
        expected_pivot: usize,
        found_pivot: usize,
        expected_constants: Vec<F>,
        found_constants: Vec<F>,
    },
    /// The kernel relation `x_component - P_component(x_1)` of the final
    /// chart has finite order `order` along the candidate.
    KernelWitness { component: usize, order: usize },
}

impl<F: Field> fmt::Display for NotReparam<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotReparam::CenterDivergence {
                step,
                expected_pivot,
                found_pivot,
                ..
            } => write!(
                f,
                "center sequences diverge at step {step}: expected pivot x{}, found x{}",
                expected_pivot + 1,
                found_pivot + 1
            ),
            NotReparam::KernelWitness { component, order } => write!(
                f,
                "kernel relation x{component} - P{component}(x1) has finite order {order} along the candidate"
            ),
        }
    }
}

/// Error type of [`solve_reparam`]: a definite negative with witness, or a
/// hard failure from the underlying machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum ReparamError<F: Field> {
    Not(NotReparam<F>),
    Other(Error),
}

impl<F: Field> fmt::Display for ReparamError<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReparamError::Not(w) => write!(f, "not a reparametrization: {w}"),
            ReparamError::Other(e) => write!(f, "{e}"),
        }
    }
}

impl<F: Field> std::error::Error for ReparamError<F> {}

impl<F: Field> From<Error> for ReparamError<F> {
    fn from(e: Error) -> Self {
        ReparamError::Other(e)
    }
}

/// Precomputed data for deciding reparametrizations against a fixed `α`.
///
/// The desingularization and the compositional inverse of its order-1
/// coordinate are shared across candidates, which matters when a harness
/// asks about thousands of them.
pub struct ReparamSolver<F: Field> {
    hne: HneResult<F>,
    inv_first: Series<F>,
}

impl<F: Field> ReparamSolver<F> {
    pub fn new(hne: HneResult<F>) -> Self {
        let inv_first = hne
            .arc
            .component(0)
            .comp_inverse()
            .expect("desingularized arcs have an order-1 first coordinate");
        ReparamSolver { hne, inv_first }
    }

    pub fn hne(&self) -> &HneResult<F> {
        &self.hne
    }

    /// Decide whether `gamma` reparametrizes the reference arc.
    pub fn solve(&self, gamma: &Arc<F>) -> std::result::Result<ReparamResult<F>, ReparamError<F>> {
        if gamma.dim() != self.hne.dim() {
            return Err(Error::VariableCountMismatch {
                expected: self.hne.dim(),
                found: gamma.dim(),
            }
            .into());
        }
        // The trivial arc is α ∘ 0; accept it with the zero series for h.
        if gamma.is_trivial() {
            return Ok(ReparamResult {
                h: Series::zero(gamma.precision()),
                h_order: Order::AtLeast(gamma.precision()),
                verified_to: gamma.precision(),
            });
        }

        // Lift γ through the centers recorded for α.
        let mut current = gamma.clone();
        for (k, step) in self.hne.steps.iter().enumerate() {
            let record = match blowup_lift(&current) {
                Ok(r) => r,
                Err(Error::TrivialArc) | Err(Error::PivotUndetermined { .. }) => {
                    return Err(Error::PrecisionExhausted {
                        depth: k,
                        residual: current.precision(),
                    }
                    .into())
                }
                Err(e) => return Err(e.into()),
            };
            if !record.same_center(step) {
                return Err(ReparamError::Not(NotReparam::CenterDivergence {
                    step: k + 1,
                    expected_pivot: step.pivot,
                    found_pivot: record.pivot,
                    expected_constants: step.constants.clone(),
                    found_constants: record.constants.clone(),
                }));
            }
            current = record.lifted;
        }
        let lifted = Arc::new(
            self.hne
                .permutation
                .iter()
                .map(|&i| current.component(i).clone())
                .collect(),
        )
        .expect("permutation preserves arc invariants");

        // h = (inverse of lifted α's first coordinate) ∘ (lifted γ's first
        // coordinate), so that α_1 ∘ h = γ_1 by construction.
        let w = lifted.component(0);
        let h = self.inv_first.compose(w)?;

        // Verify the remaining components coefficient by coefficient.
        let mut verified_to = h.precision().min(lifted.precision());
        for i in 1..lifted.dim() {
            let composed = self.hne.arc.component(i).compose(&h)?;
            let target = lifted.component(i);
            let upto = composed.precision().min(target.precision());
            for k in 0..upto {
                if composed.coeff(k) != target.coeff(k) {
                    return Err(ReparamError::Not(NotReparam::KernelWitness {
                        component: i + 1,
                        order: k,
                    }));
                }
            }
            verified_to = verified_to.min(upto);
        }
        // A candidate that matched everywhere but whose h has no visible
        // order carries no usable information at this precision.
        let h_order = h.ord();
        if !h_order.is_finite() {
            return Err(Error::PrecisionExhausted {
                depth: self.hne.steps.len(),
                residual: h.precision(),
            }
            .into());
        }
        Ok(ReparamResult {
            h,
            h_order,
            verified_to,
        })
    }
}

/// Decide whether `gamma` is a reparametrization of `alpha` and produce the
/// reparametrizing series.
///
/// `alpha` must be normalized and nontrivial; `gamma` must live in the same
/// chart. The trivial `gamma` is accepted with `h = 0`.
pub fn solve_reparam<F: Field>(
    alpha: &Arc<F>,
    gamma: &Arc<F>,
) -> std::result::Result<ReparamResult<F>, ReparamError<F>> {
    let hne = hne_expand(alpha)?;
    ReparamSolver::new(hne).solve(gamma)
}
