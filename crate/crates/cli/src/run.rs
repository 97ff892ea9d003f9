//! Command implementations: each one returns human-readable text plus a
//! machine-readable JSON value, and the caller picks per `--json`.

use arcval::harness::{check_base_case, check_theorem, EnumParams, MembershipReport};
use arcval::hne::hne_expand;
use arcval::ideals::{aq_generators, iq_generators};
use arcval::parse::parse_poly;
use arcval::scalar::{parse_fp, parse_rat, Field, Fp};
use arcval::series::{Order, Series};
use arcval::{blowup, solve_reparam, Arc, NotReparam, ReparamError};
use serde_json::{json, Value};

use crate::document::{rat_str, LoadedArc};
use crate::{CmdError, Outcome};

pub struct CmdOutput {
    pub text: String,
    pub json: Value,
    pub outcome: Outcome,
}

impl CmdOutput {
    fn ok(text: String, json: Value) -> Self {
        CmdOutput {
            text,
            json,
            outcome: Outcome::Ok,
        }
    }
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Finite(m) => json!({"type": "finite", "value": m}),
        Order::AtLeast(n) => json!({"bound": n, "type": "at-least"}),
    }
}

fn scalar_str<F: Field>(c: &F) -> String {
    c.to_string()
}

fn series_coeff_strings<F: Field>(s: &Series<F>, render: &dyn Fn(&F) -> String) -> Vec<Value> {
    let mut out: Vec<Value> = s.coeffs().iter().map(|c| Value::String(render(c))).collect();
    while out.len() > 1 && out.last().is_some_and(|v| v == "0") {
        out.pop();
    }
    out
}

/// Truncate a loaded arc to `--precision`, when given. Extending is refused:
/// the document's precision is a claim about what is known.
pub fn apply_precision(arc: LoadedArc, precision: Option<usize>) -> Result<LoadedArc, CmdError> {
    let Some(p) = precision else { return Ok(arc) };
    if p == 0 {
        return Err(CmdError::usage("precision must be positive"));
    }
    let have = match &arc {
        LoadedArc::Rational(a) => a.precision(),
        LoadedArc::Prime(a, _) => a.precision(),
    };
    if p > have {
        return Err(CmdError::usage(format!(
            "requested precision {p} exceeds the document's {have}; coefficients beyond the document are unknown"
        )));
    }
    Ok(match arc {
        LoadedArc::Rational(a) => LoadedArc::Rational(a.truncate(p)),
        LoadedArc::Prime(a, q) => LoadedArc::Prime(a.truncate(p), q),
    })
}

pub fn cmd_ord(arc: &LoadedArc, poly_src: &str) -> Result<CmdOutput, CmdError> {
    let order = match arc {
        LoadedArc::Rational(a) => {
            let psi = parse_poly(poly_src, a.dim(), &parse_rat)
                .map_err(|e| CmdError::usage(format!("polynomial: {e}")))?;
            a.ord_poly(&psi)?
        }
        LoadedArc::Prime(a, p) => {
            let p = *p;
            let psi = parse_poly(poly_src, a.dim(), &move |s: &str| parse_fp(s, p))
                .map_err(|e| CmdError::usage(format!("polynomial: {e}")))?;
            a.ord_poly(&psi)?
        }
    };
    Ok(CmdOutput::ok(
        order.to_string(),
        json!({"order": order_json(order), "schema": "arcval.order.v1"}),
    ))
}

fn hne_json<F: Field>(h: &arcval::HneResult<F>, render: &dyn Fn(&F) -> String) -> Value {
    json!({
        "depth": h.depth,
        "iteration_orders": h.iteration_orders,
        "p": h.p.iter().map(|s| Value::Array(series_coeff_strings(s, render))).collect::<Vec<_>>(),
        "permutation": h.permutation.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "pivots": h.steps.iter().map(|s| s.pivot + 1).collect::<Vec<_>>(),
        "residual_precision": h.residual_precision(),
        "schema": "arcval.hne.v1",
    })
}

pub fn cmd_hne(arc: &LoadedArc) -> Result<CmdOutput, CmdError> {
    let (json, text) = match arc {
        LoadedArc::Rational(a) => {
            let h = hne_expand(a)?;
            (hne_json(&h, &|c| rat_str(c)), hne_text(&h))
        }
        LoadedArc::Prime(a, _) => {
            let h = hne_expand(a)?;
            (hne_json(&h, &scalar_str::<Fp>), hne_text(&h))
        }
    };
    Ok(CmdOutput::ok(text, json))
}

fn hne_text<F: Field>(h: &arcval::HneResult<F>) -> String {
    let mut out = format!(
        "depth {} (iteration orders {:?}, residual precision {})\n",
        h.depth,
        h.iteration_orders,
        h.residual_precision()
    );
    for (i, p) in h.p.iter().enumerate() {
        out.push_str(&format!("P_{} = {}\n", i + 2, p));
    }
    out.pop();
    out
}

pub fn cmd_centers(arc: &LoadedArc, depth: usize) -> Result<CmdOutput, CmdError> {
    fn run<F: Field>(
        a: &Arc<F>,
        depth: usize,
        render: &dyn Fn(&F) -> String,
    ) -> Result<(String, Value), CmdError> {
        let seq = blowup::center_sequence(a, depth)?;
        let mut text = String::new();
        let mut steps = Vec::new();
        for (k, step) in seq.steps.iter().enumerate() {
            let constants: Vec<String> = step.constants.iter().map(|c| render(c)).collect();
            text.push_str(&format!(
                "step {}: pivot x{} (order {}), constants [{}], precision {}\n",
                k + 1,
                step.pivot + 1,
                step.pivot_order,
                constants.join(", "),
                step.lifted.precision()
            ));
            steps.push(json!({
                "constants": constants,
                "pivot": step.pivot + 1,
                "pivot_order": step.pivot_order,
                "residual_precision": step.lifted.precision(),
            }));
        }
        match seq.exhausted_at {
            Some(p) => text.push_str(&format!(
                "stopped early: precision {p} cannot support another lift"
            )),
            None => {
                text.pop();
            }
        }
        let json = json!({
            "exhausted_at": seq.exhausted_at,
            "schema": "arcval.centers.v1",
            "steps": steps,
        });
        Ok((text, json))
    }
    let (text, json) = match arc {
        LoadedArc::Rational(a) => run(a, depth, &|c| rat_str(c))?,
        LoadedArc::Prime(a, _) => run(a, depth, &scalar_str::<Fp>)?,
    };
    Ok(CmdOutput::ok(text, json))
}

pub fn cmd_ideals(arc: &LoadedArc, q: usize) -> Result<CmdOutput, CmdError> {
    fn run<F: Field>(a: &Arc<F>, q: usize) -> Result<(String, Value), CmdError> {
        let h = hne_expand(a)?;
        let aq: Vec<String> = aq_generators(&h, q)?.iter().map(|g| g.to_string()).collect();
        let iq: Vec<String> = iq_generators(&h, q)?.iter().map(|g| g.to_string()).collect();
        let mut text = format!("valuation ideal level {q}: {}\n", aq.join(", "));
        if iq.is_empty() {
            text.push_str(&format!("jet ideal level {q}: (0)"));
        } else {
            text.push_str(&format!("jet ideal level {q}: {}", iq.join(", ")));
        }
        let json = json!({
            "aq": aq,
            "iq": iq,
            "q": q,
            "schema": "arcval.ideals.v1",
        });
        Ok((text, json))
    }
    let (text, json) = match arc {
        LoadedArc::Rational(a) => run(a, q)?,
        LoadedArc::Prime(a, _) => run(a, q)?,
    };
    Ok(CmdOutput::ok(text, json))
}

pub fn cmd_reparam(alpha: &LoadedArc, gamma: &LoadedArc) -> Result<CmdOutput, CmdError> {
    if alpha.field() != gamma.field() {
        return Err(CmdError::usage(format!(
            "mixed base fields: {} vs {}",
            alpha.field().render(),
            gamma.field().render()
        )));
    }
    fn run<F: Field>(
        a: &Arc<F>,
        g: &Arc<F>,
        render: &dyn Fn(&F) -> String,
    ) -> Result<(String, Value), CmdError> {
        match solve_reparam(a, g) {
            Ok(r) => {
                let order = r.h_order;
                let text = format!(
                    "reparametrization found: h = {}, order {}, verified through t^{}",
                    r.h, order, r.verified_to
                );
                let json = json!({
                    "h": series_coeff_strings(&r.h, render),
                    "order": order_json(order),
                    "reparametrization": true,
                    "schema": "arcval.reparam.v1",
                    "verified_to": r.verified_to,
                });
                Ok((text, json))
            }
            Err(ReparamError::Not(witness)) => {
                let detail = match &witness {
                    NotReparam::CenterDivergence { step, .. } => json!({
                        "step": step,
                        "type": "center-divergence",
                    }),
                    NotReparam::KernelWitness { component, order } => json!({
                        "component": component,
                        "order": order,
                        "type": "kernel-witness",
                    }),
                };
                let json = json!({
                    "reparametrization": false,
                    "schema": "arcval.reparam.v1",
                    "witness": detail,
                });
                Ok((format!("not a reparametrization: {witness}"), json))
            }
            Err(ReparamError::Other(e)) => Err(e.into()),
        }
    }
    let (text, json) = match (alpha, gamma) {
        (LoadedArc::Rational(a), LoadedArc::Rational(g)) => run(a, g, &|c| rat_str(c))?,
        (LoadedArc::Prime(a, _), LoadedArc::Prime(g, _)) => run(a, g, &scalar_str::<Fp>)?,
        _ => unreachable!("field equality checked above"),
    };
    Ok(CmdOutput::ok(text, json))
}

/// Shared enumeration options for `check` and `base-case`.
pub struct GridOptions {
    pub coeffs: String,
    pub degree: usize,
    pub precision: usize,
    pub cap: u128,
    pub q_max: usize,
}

fn parse_coeffs<F: Field>(
    spec: &str,
    parse: &dyn Fn(&str) -> Result<F, String>,
) -> Result<Vec<F>, CmdError> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let c = parse(part.trim()).map_err(|m| CmdError::usage(format!("--coeffs: {m}")))?;
        if out.contains(&c) {
            return Err(CmdError::usage(format!(
                "--coeffs: duplicate value `{}`",
                part.trim()
            )));
        }
        out.push(c);
    }
    if out.is_empty() {
        return Err(CmdError::usage("--coeffs: need at least one value"));
    }
    Ok(out)
}

fn grid_params<F: Field>(
    opts: &GridOptions,
    parse: &dyn Fn(&str) -> Result<F, String>,
) -> Result<EnumParams<F>, CmdError> {
    Ok(EnumParams {
        coeff_set: parse_coeffs(&opts.coeffs, parse)?,
        degree_bound: opts.degree,
        precision: opts.precision,
        cap: opts.cap,
    })
}

fn disagreement_json<F: Field>(
    r: &MembershipReport<F>,
    render: &dyn Fn(&F) -> String,
) -> Value {
    json!({
        "arc": r.arc.components().iter()
            .map(|c| Value::Array(series_coeff_strings(c, render)))
            .collect::<Vec<_>>(),
        "flags": {
            "in_c": r.in_c,
            "in_cpp": r.in_cpp,
            "in_cv": r.in_cv,
            "in_r": r.in_r,
            "in_y_fiber": r.in_y_fiber,
        },
        "id": r.id,
    })
}

pub fn cmd_check(alpha: &LoadedArc, opts: &GridOptions) -> Result<CmdOutput, CmdError> {
    fn run<F: Field>(
        a: &Arc<F>,
        opts: &GridOptions,
        parse: &dyn Fn(&str) -> Result<F, String>,
        render: &dyn Fn(&F) -> String,
    ) -> Result<CmdOutput, CmdError> {
        let params = grid_params(opts, parse)?;
        let report = check_theorem(a, &params, opts.q_max)?;
        let s = &report.summary;
        let witnesses: Vec<Value> = report
            .reports
            .iter()
            .filter(|r| r.is_disagreement() || (r.in_cv && !r.is_member()))
            .map(|r| disagreement_json(r, render))
            .collect();
        let json = json!({
            "caveats": s.caveat_count,
            "cv_violations": s.cv_violations,
            "depth": report.depth,
            "disagreements": s.disagreements,
            "members": s.members,
            "precision": s.precision,
            "q_max": s.q_max,
            "schema": "arcval.check.v1",
            "total": s.total,
            "witnesses": witnesses,
        });
        let agreed = s.agreed();
        let text = format!(
            "{} arcs checked (depth {}): {} members, {} disagreements, {} exact-valuation violations{}",
            s.total,
            report.depth,
            s.members,
            s.disagreements.len(),
            s.cv_violations.len(),
            if agreed { "" } else { " -- see witnesses" },
        );
        Ok(CmdOutput {
            text,
            json,
            outcome: if agreed {
                Outcome::Ok
            } else {
                Outcome::Disagreement
            },
        })
    }
    match alpha {
        LoadedArc::Rational(a) => run(a, opts, &parse_rat, &|c| rat_str(c)),
        LoadedArc::Prime(a, p) => {
            let p = *p;
            run(a, opts, &move |s: &str| parse_fp(s, p), &scalar_str::<Fp>)
        }
    }
}

pub fn cmd_base_case(
    alpha: &LoadedArc,
    samples: usize,
    opts: &GridOptions,
) -> Result<CmdOutput, CmdError> {
    const SEED: u64 = 0x62617365;
    fn run<F: Field>(
        a: &Arc<F>,
        samples: usize,
        opts: &GridOptions,
        parse: &dyn Fn(&str) -> Result<F, String>,
    ) -> Result<CmdOutput, CmdError> {
        let params = grid_params(opts, parse)?;
        let report = check_base_case(a, samples, opts.q_max, &params, SEED)?;
        let failures: Vec<&String> = report
            .formula_mismatches
            .iter()
            .chain(&report.equivalence_mismatches)
            .chain(&report.value_failures)
            .collect();
        let json = json!({
            "equivalence_pairs": report.equivalence_pairs,
            "failures": failures,
            "formula_samples": report.formula_samples,
            "members": report.members_seen,
            "schema": "arcval.basecase.v1",
        });
        let text = format!(
            "{} formula samples, {} (arc, level) pairs, {} members: {}",
            report.formula_samples,
            report.equivalence_pairs,
            report.members_seen,
            if report.passed() {
                "all consistent".to_string()
            } else {
                format!("{} failures", failures.len())
            }
        );
        Ok(CmdOutput {
            text,
            json,
            outcome: if report.passed() {
                Outcome::Ok
            } else {
                Outcome::Disagreement
            },
        })
    }
    match alpha {
        LoadedArc::Rational(a) => run(a, samples, opts, &parse_rat),
        LoadedArc::Prime(a, p) => {
            let p = *p;
            run(a, samples, opts, &move |s: &str| parse_fp(s, p))
        }
    }
}
