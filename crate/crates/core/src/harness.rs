//! Desk-scale verifier for the five-set membership equivalence.
//!
//! Five subsets of the space of origin-centered arcs attach to the
//! valuation of a normalized arc `α`: the exact-valuation locus (pre-closure
//! of `C(v)`), the arcs sharing `α`'s center sequence, the arcs with deep
//! contact along the valuation ideals, the arcs killing `ker(α*)` in the
//! fiber over the center, and the reparametrizations of `α`. The verifier
//! enumerates a finite grid of candidate arcs, evaluates all five membership
//! predicates per candidate, and reports any disagreement verbatim.
//!
//! Because the last four sets are infinite intersections, the finite check
//! evaluates all of them at one common truncation level `q_max`: centers are
//! compared through `q_max - 1` lifts, contact is demanded for every ideal
//! level up to `q_max`, kernel relations must vanish to order `q_max`, and
//! reparametrization is solved on the `q_max`-jet of the candidate. At a
//! common level the four predicates test the same coefficient conditions, so
//! a disagreement is a bug, never a truncation artifact. The exact-valuation
//! flag (order-1 reparametrizations, evaluated at full precision) is only
//! asserted to be a subset of the rest, since closure is out of reach of an
//! enumeration.

use rand::Rng;

use crate::arc::Arc;
use crate::blowup::blowup_lift;
use crate::error::{Error, Result};
use crate::hne::{hne_expand, HneResult};
use crate::ideals::{aq_generators, cont_membership, viq_membership};
use crate::jet::JetPoint;
use crate::poly::Poly;
use crate::reparam::{ReparamError, ReparamSolver};
use crate::scalar::Field;
use crate::series::Order;

/// Enumeration grid: all arcs whose components are supported in degrees
/// `1..=degree_bound` with coefficients drawn from `coeff_set`, zero-padded
/// to `precision`.
#[derive(Debug, Clone)]
pub struct EnumParams<F: Field> {
    pub coeff_set: Vec<F>,
    pub degree_bound: usize,
    pub precision: usize,
    /// Refuse to enumerate more than this many arcs.
    pub cap: u128,
}

impl<F: Field> EnumParams<F> {
    /// The default grid: coefficients {-1, 0, 1}, degree bound 3,
    /// precision 16, cap 10^6.
    pub fn standard(witness: &F) -> Self {
        EnumParams {
            coeff_set: vec![witness.embed_int(-1), F::zero(), F::one()],
            degree_bound: 3,
            precision: 16,
            cap: 1_000_000,
        }
    }

    pub fn count(&self, dim: usize) -> Option<u128> {
        (self.coeff_set.len() as u128).checked_pow((dim * self.degree_bound) as u32)
    }
}

/// Lazily yields every arc on the grid, in odometer order (component-major,
/// degree-minor); the position in the stream is the arc id.
pub struct ArcEnumeration<F: Field> {
    params: EnumParams<F>,
    dim: usize,
    digits: Vec<usize>,
    done: bool,
}

impl<F: Field> Iterator for ArcEnumeration<F> {
    type Item = Arc<F>;

    fn next(&mut self) -> Option<Arc<F>> {
        if self.done {
            return None;
        }
        let d = self.params.degree_bound;
        let components = (0..self.dim)
            .map(|i| {
                let mut coeffs = vec![F::zero(); self.params.precision];
                for j in 0..d {
                    coeffs[j + 1] = self.params.coeff_set[self.digits[i * d + j]].clone();
                }
                crate::series::Series::new(coeffs)
            })
            .collect();
        // Advance the odometer.
        let base = self.params.coeff_set.len();
        let mut k = 0;
        loop {
            if k == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[k] += 1;
            if self.digits[k] < base {
                break;
            }
            self.digits[k] = 0;
            k += 1;
        }
        Some(Arc::new(components).expect("grid arcs satisfy the invariants"))
    }
}

/// Enumerate all candidate arcs of dimension `n` on the grid.
pub fn enumerate_arcs<F: Field>(n: usize, params: &EnumParams<F>) -> Result<ArcEnumeration<F>> {
    if params.degree_bound >= params.precision {
        return Err(Error::DegreeAbovePrecision {
            degree: params.degree_bound,
            precision: params.precision,
        });
    }
    let count = params.count(n).unwrap_or(u128::MAX);
    if count > params.cap {
        return Err(Error::EnumerationTooLarge {
            count,
            cap: params.cap,
        });
    }
    Ok(ArcEnumeration {
        params: params.clone(),
        dim: n,
        digits: vec![0; n * params.degree_bound],
        done: false,
    })
}

/// Per-candidate membership verdicts. All flags were evaluated at the
/// truncation level recorded in `q_max` and `precision`; `caveats` lists
/// anything that kept a flag from seeing its full depth.
#[derive(Debug, Clone)]
pub struct MembershipReport<F: Field> {
    pub id: u64,
    pub arc: Arc<F>,
    /// Order-1 reparametrization at full precision (pre-closure of the
    /// exact-valuation locus).
    pub in_cv: bool,
    /// Center sequence agrees with the reference through `q_max - 1` lifts.
    pub in_c: bool,
    /// Contact of order `q` with the level-`q` valuation ideal for every
    /// `q <= q_max`.
    pub in_cpp: bool,
    /// Kernel relations vanish to order `q_max` (and the arc sits in the
    /// fiber over the center, which the grid guarantees).
    pub in_y_fiber: bool,
    /// The `q_max`-jet is a reparametrization of the reference arc.
    pub in_r: bool,
    pub q_max: usize,
    pub precision: usize,
    pub caveats: Vec<String>,
}

impl<F: Field> MembershipReport<F> {
    /// The four flags the equivalence statement is about.
    pub fn equivalence_flags(&self) -> [bool; 4] {
        [self.in_c, self.in_cpp, self.in_y_fiber, self.in_r]
    }

    pub fn is_member(&self) -> bool {
        self.in_c && self.in_cpp && self.in_y_fiber && self.in_r
    }

    pub fn is_disagreement(&self) -> bool {
        let f = self.equivalence_flags();
        f.iter().any(|&b| b != f[0])
    }
}

/// Outcome of a full theorem run.
#[derive(Debug, Clone)]
pub struct TheoremReport<F: Field> {
    /// Blowups needed to desingularize the reference arc; the check runs in
    /// that final chart.
    pub depth: usize,
    pub reports: Vec<MembershipReport<F>>,
    pub summary: TheoremSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremSummary {
    pub total: u64,
    pub members: u64,
    /// Ids of arcs where the four equivalence flags disagree.
    pub disagreements: Vec<u64>,
    /// Ids of arcs where the exact-valuation flag is set but the common
    /// membership is not.
    pub cv_violations: Vec<u64>,
    pub caveat_count: u64,
    pub q_max: usize,
    pub precision: usize,
}

impl TheoremSummary {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty() && self.cv_violations.is_empty()
    }
}

/// Evaluates the five membership predicates against a fixed reference arc.
///
/// When the reference arc is singular, the checker works in its final
/// (desingularized) chart: candidates are read as arcs of that chart, and
/// `depth` records how many blowups it took to get there.
pub struct TheoremChecker<F: Field> {
    depth: usize,
    solver: ReparamSolver<F>,
    alpha_steps: Vec<(usize, Vec<F>)>,
    alpha_steps_exhausted: bool,
    aq_gens: Vec<Vec<Poly<F>>>,
    q_max: usize,
}

impl<F: Field> TheoremChecker<F> {
    /// Desingularize `alpha` and precompute everything the per-candidate
    /// checks share. Requires enough residual precision for the level-`q_max`
    /// generators and at least `q_max` coefficients of certainty.
    pub fn new(alpha: &Arc<F>, q_max: usize) -> Result<Self> {
        assert!(q_max >= 1, "at least one level is needed");
        let outer = hne_expand(alpha)?;
        let depth = outer.depth;
        // Candidates live in the final chart, so the reference must be
        // re-read there: its own expansion then has no blowup steps.
        let hne = if depth == 0 {
            outer
        } else {
            hne_expand(&outer.arc)?
        };
        debug_assert_eq!(hne.depth, 0);
        if hne.residual_precision() < q_max {
            return Err(Error::InsufficientCoefficients {
                needed: q_max,
                available: hne.residual_precision(),
            });
        }
        let aq_gens = (1..=q_max)
            .map(|q| aq_generators(&hne, q))
            .collect::<Result<Vec<_>>>()?;
        // Reference center sequence through q_max - 1 lifts.
        let mut alpha_steps = Vec::new();
        let mut alpha_steps_exhausted = false;
        let mut cur = hne.arc.clone();
        for _ in 1..q_max {
            match blowup_lift(&cur) {
                Ok(rec) => {
                    alpha_steps.push((rec.pivot, rec.constants.clone()));
                    cur = rec.lifted;
                }
                Err(_) => {
                    alpha_steps_exhausted = true;
                    break;
                }
            }
        }
        Ok(TheoremChecker {
            depth,
            solver: ReparamSolver::new(hne),
            alpha_steps,
            alpha_steps_exhausted,
            aq_gens,
            q_max,
        })
    }

    pub fn hne(&self) -> &HneResult<F> {
        self.solver.hne()
    }

    /// Blowups taken to desingularize the original reference arc.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Evaluate all five predicates on one candidate.
    pub fn check(&self, id: u64, beta: &Arc<F>) -> Result<MembershipReport<F>> {
        let q_max = self.q_max;
        let mut caveats = Vec::new();

        let in_cpp = self.check_cpp(beta)?;
        let in_c = self.check_centers(beta, &mut caveats)?;
        let in_y_fiber = self.check_kernel(beta)?;
        let in_r = self.check_jet_reparam(beta)?;
        let in_cv = self.check_exact_valuation(beta)?;

        Ok(MembershipReport {
            id,
            arc: beta.clone(),
            in_cv,
            in_c,
            in_cpp,
            in_y_fiber,
            in_r,
            q_max,
            precision: beta.precision(),
            caveats,
        })
    }

    /// Contact of order `q` with the level-`q` ideal, for all `q <= q_max`.
    fn check_cpp(&self, beta: &Arc<F>) -> Result<bool> {
        for (q0, gens) in self.aq_gens.iter().enumerate() {
            let q = q0 + 1;
            for g in gens {
                if !beta.ord_poly(g)?.at_least(q) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Center-sequence agreement through `q_max - 1` lifts of the
    /// candidate's `q_max`-jet. The trivial arc belongs to every center set
    /// by convention.
    ///
    /// The jet is what keeps this flag at the same truncation level as the
    /// others: an arc whose pivot coordinate has order `e` exposes only
    /// `floor((q_max - 1)/e)` lift steps worth of level-`q_max` information,
    /// and once the jet is spent the remaining center conditions are not
    /// determined at this level. Exhaustion therefore counts as agreement
    /// and leaves a caveat.
    fn check_centers(&self, beta: &Arc<F>, caveats: &mut Vec<String>) -> Result<bool> {
        if beta.is_trivial() {
            return Ok(true);
        }
        let jet = beta.truncate(self.q_max.min(beta.precision()));
        if jet.is_trivial() {
            caveats.push("centers: candidate vanishes at this level, no step visible".into());
            return Ok(true);
        }
        if self.alpha_steps_exhausted {
            caveats.push(format!(
                "centers compared through {} of {} steps (reference precision ran out)",
                self.alpha_steps.len(),
                self.q_max - 1
            ));
        }
        let mut cur = jet;
        for (k, (pivot, constants)) in self.alpha_steps.iter().enumerate() {
            let rec = match blowup_lift(&cur) {
                Ok(rec) => rec,
                Err(Error::TrivialArc)
                | Err(Error::PivotUndetermined { .. })
                | Err(Error::PrecisionExhausted { .. }) => {
                    if k < self.alpha_steps.len() {
                        caveats.push(format!(
                            "centers compared through {} of {} steps (level exhausted)",
                            k,
                            self.alpha_steps.len()
                        ));
                    }
                    return Ok(true);
                }
                Err(e) => return Err(e),
            };
            if rec.pivot != *pivot || rec.constants != *constants {
                return Ok(false);
            }
            cur = rec.lifted;
        }
        Ok(true)
    }

    /// Kernel relations `x_i - P_i(x_1)` vanish to order `q_max` along the
    /// candidate.
    fn check_kernel(&self, beta: &Arc<F>) -> Result<bool> {
        let q_max = self.q_max;
        let jet = beta.truncate(q_max.min(beta.precision()));
        let first = jet.component(0);
        for (i, p) in self.hne().kernel_generators() {
            let expected = p.truncate(q_max.min(p.precision())).compose(first)?;
            let diff = &jet.component(i - 1).truncate(expected.precision()) - &expected;
            if !diff.ord().at_least(q_max.min(diff.precision())) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `q_max`-jet of the candidate reparametrizes the reference arc.
    fn check_jet_reparam(&self, beta: &Arc<F>) -> Result<bool> {
        let jet = beta.truncate(self.q_max.min(beta.precision()));
        match self.solver.solve(&jet) {
            Ok(_) => Ok(true),
            Err(ReparamError::Not(_)) => Ok(false),
            Err(ReparamError::Other(e)) => Err(e),
        }
    }

    /// Full-precision order-1 reparametrization: the pre-closure of the
    /// exact-valuation locus.
    fn check_exact_valuation(&self, beta: &Arc<F>) -> Result<bool> {
        match self.solver.solve(beta) {
            Ok(r) => Ok(r.h_order == Order::Finite(1)),
            Err(ReparamError::Not(_)) => Ok(false),
            Err(ReparamError::Other(e)) => Err(e),
        }
    }
}

/// Run the five-way membership check for every arc on the grid.
///
/// `alpha` must be normalized and nontrivial. If it is not already
/// nonsingular it is desingularized first and the enumeration happens in the
/// final chart.
pub fn check_theorem<F: Field>(
    alpha: &Arc<F>,
    params: &EnumParams<F>,
    q_max: usize,
) -> Result<TheoremReport<F>> {
    let checker = TheoremChecker::new(alpha, q_max)?;
    let mut reports = Vec::new();
    for (id, beta) in enumerate_arcs(alpha.dim(), params)?.enumerate() {
        reports.push(checker.check(id as u64, &beta)?);
    }
    let summary = summarize(&reports, q_max, params.precision);
    Ok(TheoremReport {
        depth: checker.depth(),
        reports,
        summary,
    })
}

fn summarize<F: Field>(
    reports: &[MembershipReport<F>],
    q_max: usize,
    precision: usize,
) -> TheoremSummary {
    let mut summary = TheoremSummary {
        total: reports.len() as u64,
        members: 0,
        disagreements: Vec::new(),
        cv_violations: Vec::new(),
        caveat_count: 0,
        q_max,
        precision,
    };
    for r in reports {
        if r.is_member() {
            summary.members += 1;
        }
        if r.is_disagreement() {
            summary.disagreements.push(r.id);
        }
        if r.in_cv && !r.is_member() {
            summary.cv_violations.push(r.id);
        }
        summary.caveat_count += r.caveats.len() as u64;
    }
    summary
}

/// Report of the nonsingular-case consistency checks.
#[derive(Debug, Clone)]
pub struct BaseCaseReport {
    /// Random polynomials compared between the valuation formula and direct
    /// substitution along the arc.
    pub formula_samples: usize,
    pub formula_mismatches: Vec<String>,
    /// (candidate, level) pairs compared between the contact and jet-ideal
    /// predicates.
    pub equivalence_pairs: u64,
    pub equivalence_mismatches: Vec<String>,
    /// Members whose order on some sample polynomial fell below the
    /// valuation (they may not, up to the truncation level).
    pub value_failures: Vec<String>,
    pub members_seen: u64,
}

impl BaseCaseReport {
    pub fn passed(&self) -> bool {
        self.formula_mismatches.is_empty()
            && self.equivalence_mismatches.is_empty()
            && self.value_failures.is_empty()
    }
}

/// Consistency checks for a nonsingular reference arc.
///
/// (a) On `psi_samples` random polynomials, the valuation computed by
/// substituting `(t, P_2, …, P_n)` must agree exactly with the direct order
/// along the arc. (b) Over the whole grid, contact membership must agree
/// with the jet-ideal equations for every level up to `q_max`. (c) Every
/// grid member must attain at least the value of the valuation on each
/// sample polynomial (capped at the truncation level), while the defining
/// arc attains it exactly.
pub fn check_base_case<F: Field>(
    alpha: &Arc<F>,
    psi_samples: usize,
    q_max: usize,
    params: &EnumParams<F>,
    seed: u64,
) -> Result<BaseCaseReport> {
    if !alpha.is_nonsingular() {
        return Err(Error::NotNonsingular);
    }
    let h = hne_expand(alpha)?;
    debug_assert_eq!(h.depth, 0);
    let witness = F::one();

    // (a) valuation formula vs direct substitution, on the defining arc
    // materialized as a genuine arc (t, P_2(t), …, P_n(t)).
    let mut rng = seeded_rng(seed);
    let defining = {
        let n = h.residual_precision();
        let mut comps = vec![crate::series::Series::t(n)];
        comps.extend(h.p.iter().cloned());
        Arc::new(comps).expect("P_i have zero constant terms")
    };
    let mut samples = Vec::with_capacity(psi_samples + 2);
    // Forced edges: a constant and a kernel element.
    samples.push(Poly::constant(witness.clone(), alpha.dim()));
    samples.push(kernel_poly(&h, 2));
    for _ in 0..psi_samples {
        samples.push(random_poly(&mut rng, alpha.dim(), 4, &witness));
    }
    let mut formula_mismatches = Vec::new();
    for psi in &samples {
        let via_formula = h.eval_valuation(psi)?;
        let direct = defining.ord_poly(psi)?;
        if via_formula != direct {
            formula_mismatches.push(format!(
                "psi = {psi}: formula gives {via_formula}, substitution gives {direct}"
            ));
        }
        // The desingularized arc must agree as well.
        let along_lift = h.arc.ord_poly(psi)?;
        if via_formula != along_lift {
            formula_mismatches.push(format!(
                "psi = {psi}: formula gives {via_formula}, lifted arc gives {along_lift}"
            ));
        }
    }

    // (b) contact vs jet-ideal membership over the grid, and (c) member
    // orders dominate the valuation on the samples.
    let mut equivalence_pairs = 0;
    let mut equivalence_mismatches = Vec::new();
    let mut value_failures = Vec::new();
    let mut members_seen = 0;
    // Levels beyond the jet table of the grid precision are not testable.
    let q_top = q_max.min(params.precision);
    for (id, beta) in enumerate_arcs(alpha.dim(), params)?.enumerate() {
        let point = JetPoint::from_arc(&beta);
        let mut member = true;
        for q in 1..=q_top {
            let via_contact = cont_membership(&h, &beta, q)?;
            let via_jet = viq_membership(&h, &point, q)?;
            equivalence_pairs += 1;
            if via_contact != via_jet {
                equivalence_mismatches.push(format!(
                    "arc {id}, level {q}: contact {via_contact} vs jet {via_jet}"
                ));
            }
            member &= via_contact;
        }
        if member {
            members_seen += 1;
            for psi in &samples {
                let v = h.eval_valuation(psi)?;
                let needed = v.lower_bound().min(q_top);
                if !beta.ord_poly(psi)?.at_least(needed) {
                    value_failures.push(format!(
                        "member arc {id}: order of {psi} fell below min({v}, {q_top})"
                    ));
                }
            }
        }
    }

    Ok(BaseCaseReport {
        formula_samples: samples.len(),
        formula_mismatches,
        equivalence_pairs,
        equivalence_mismatches,
        value_failures,
        members_seen,
    })
}

/// The kernel element `x_i - P_i(x_1)` truncated to the available
/// coefficients, as a polynomial.
fn kernel_poly<F: Field>(h: &HneResult<F>, i: usize) -> Poly<F> {
    let n = h.dim();
    let mut acc = Poly::var(i, n);
    let p = &h.p[i - 2];
    for (j, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = vec![0u32; n];
        e[0] = j as u32;
        acc = &acc - &Poly::monomial(c.clone(), e);
    }
    acc
}

/// Deterministic generator for test sampling.
pub fn seeded_rng(seed: u64) -> impl Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// A random polynomial with up to six terms, total degree at most
/// `max_degree`, and small nonzero integer coefficients.
pub fn random_poly<F: Field, R: Rng>(
    rng: &mut R,
    n_vars: usize,
    max_degree: u32,
    witness: &F,
) -> Poly<F> {
    let n_terms = rng.gen_range(1..=6);
    let mut acc = Poly::zero(n_vars);
    for _ in 0..n_terms {
        let mut exps = vec![0u32; n_vars];
        let mut budget = max_degree;
        for e in exps.iter_mut() {
            *e = rng.gen_range(0..=budget);
            budget -= *e;
        }
        let c = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        acc = &acc + &Poly::monomial(witness.embed_int(c), exps);
    }
    acc
}
