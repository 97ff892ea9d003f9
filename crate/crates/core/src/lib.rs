//! Arc valuations on affine n-space over an exact field.
//!
//! The building blocks are truncated formal power series in one variable `t`
//! with exact coefficients ([`Series`]), arcs on affine n-space given by
//! tuples of such series ([`Arc`]), and the order-of-vanishing valuation they
//! induce on polynomials. On top of those sit the blowup machinery
//! ([`blowup`]), Hamburger-Noether desingularization ([`hne`]), valuation and
//! jet ideal generators ([`ideals`]), arc reparametrization ([`reparam`]), and
//! an exhaustive desk-scale membership verifier ([`harness`]).
//!
//! Everything is generic over the coefficient field through the [`Field`]
//! trait; the crate root exports concrete aliases over arbitrary-precision
//! rationals (`Q*`) and a runtime-modulus prime field ([`Fp`]).

pub mod arc;
pub mod blowup;
pub mod catalog;
pub mod error;
pub mod harness;
pub mod hne;
pub mod ideals;
pub mod jet;
pub mod parse;
pub mod poly;
pub mod reparam;
pub mod scalar;
pub mod series;

pub use arc::{Arc, NormalizationIndex};
pub use blowup::{BlowupRecord, CenterSequence};
pub use error::Error;
pub use harness::{EnumParams, MembershipReport, TheoremReport, TheoremSummary};
pub use hne::HneResult;
pub use ideals::{aq_generators, cont_membership, f_poly, iq_generators, viq_membership};
pub use jet::{JetPoint, JetPoly, JetVar};
pub use poly::Poly;
pub use reparam::{solve_reparam, NotReparam, ReparamError, ReparamResult};
pub use scalar::{Field, Fp, Rat};
pub use series::{Order, Series};

/// Series over the rationals, the default working field.
pub type QSeries = Series<Rat>;
/// Arcs over the rationals.
pub type QArc = Arc<Rat>;
/// Polynomials in the chart coordinates over the rationals.
pub type QPoly = Poly<Rat>;
/// Polynomials in the jet variables over the rationals.
pub type QJetPoly = JetPoly<Rat>;

/// Series over a prime field with runtime modulus.
pub type FpSeries = Series<Fp>;
/// Arcs over a prime field.
pub type FpArc = Arc<Fp>;
