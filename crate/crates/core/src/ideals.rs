//! Valuation-ideal and jet-ideal generators attached to a desingularized
//! arc, and the two membership predicates they induce.
//!
//! For the valuation of a nonsingular arc with expansion coefficients
//! `c_{i,j}`, the functions of value at least `q` are generated by `x_1^q`
//! together with the truncation differences `z_i = x_i - sum_{j<q} c_{i,j}
//! x_1^j`. On the jet side, the arcs with contact of order `q` with that
//! ideal are cut out by the equations `x_{i,j} = f_{i,j}(x_{1,1}, …,
//! x_{1,j})`, where `f_{i,j}` collects the coefficient of `t^j` in
//! `sum_k c_{i,k} (x_{1,1} t + x_{1,2} t^2 + ⋯)^k`. The two descriptions
//! pick out the same arcs, which is what the harness checks exhaustively.

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::hne::HneResult;
use crate::jet::{JetPoint, JetPoly, JetVar};
use crate::poly::Poly;
use crate::scalar::Field;

/// The coefficient polynomial `f_{i,q}(X_1, …, X_q)`: the coefficient of
/// `t^q` in `sum_{j=1}^{q} c_{i,j} (X_1 t + X_2 t^2 + ⋯ + X_q t^q)^j`,
/// with `X_k` standing for the jet variable `x_{1,k}`.
pub fn f_poly<F: Field>(h: &HneResult<F>, i: usize, q: usize) -> Result<JetPoly<F>> {
    assert!((2..=h.dim()).contains(&i), "f_{i},q needs 2 <= i <= n");
    assert!(q >= 1, "f_{i},q needs q >= 1");
    // Fails fast when the coefficient table is too short.
    h.coefficient(i, q)?;

    // Work with truncated series whose coefficients are jet polynomials:
    // slot k holds the coefficient of t^k, for 0 <= k <= q.
    let inner: Vec<JetPoly<F>> = (0..=q)
        .map(|k| {
            if k == 0 {
                JetPoly::zero()
            } else {
                JetPoly::var(JetVar { coord: 1, degree: k })
            }
        })
        .collect();
    let mut power = inner.clone();
    let mut acc = JetPoly::zero();
    for j in 1..=q {
        if j > 1 {
            power = convolve_truncated(&power, &inner, q);
        }
        let c = h.coefficient(i, j)?.clone();
        acc = &acc + &power[q].scale(&c);
    }
    Ok(acc)
}

fn convolve_truncated<F: Field>(
    a: &[JetPoly<F>],
    b: &[JetPoly<F>],
    q: usize,
) -> Vec<JetPoly<F>> {
    let mut out = vec![JetPoly::zero(); q + 1];
    for (i, pa) in a.iter().enumerate().take(q + 1) {
        if pa.is_zero() {
            continue;
        }
        for (j, pb) in b.iter().enumerate().take(q + 1 - i) {
            if pb.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(pa * pb);
        }
    }
    out
}

/// Generators of the valuation ideal of level `q` in the final chart
/// coordinates: `x_1^q` and `z_i = x_i - sum_{j=1}^{q-1} c_{i,j} x_1^j` for
/// `2 <= i <= n`.
pub fn aq_generators<F: Field>(h: &HneResult<F>, q: usize) -> Result<Vec<Poly<F>>> {
    assert!(q >= 1, "ideal level must be positive");
    let n = h.dim();
    if q >= 2 {
        // All c_{i,j} with j <= q-1 must be on the table.
        for i in 2..=n {
            h.coefficient(i, q - 1)?;
        }
    }
    let mut gens = Vec::with_capacity(n);
    gens.push(Poly::var(1, n).pow(q as u32));
    for i in 2..=n {
        let mut z = Poly::var(i, n);
        for j in 1..q {
            let c = h.coefficient(i, j)?.clone();
            if c.is_zero() {
                continue;
            }
            let mono = Poly::monomial(c, {
                let mut e = vec![0u32; n];
                e[0] = j as u32;
                e
            });
            z = &z - &mono;
        }
        gens.push(z);
    }
    Ok(gens)
}

/// Generators of the jet-space ideal of level `q`: the `(n-1)(q-1)`
/// polynomials `x_{i,j} - f_{i,j}(x_{1,1}, …, x_{1,j})` for `2 <= i <= n`,
/// `1 <= j <= q-1`. Level 1 has no generators.
pub fn iq_generators<F: Field>(h: &HneResult<F>, q: usize) -> Result<Vec<JetPoly<F>>> {
    assert!(q >= 1, "ideal level must be positive");
    let n = h.dim();
    let mut gens = Vec::with_capacity((n - 1) * q.saturating_sub(1));
    for i in 2..=n {
        for j in 1..q {
            let lhs = JetPoly::var(JetVar { coord: i, degree: j });
            let rhs = f_poly(h, i, j)?;
            gens.push(&lhs - &rhs);
        }
    }
    Ok(gens)
}

/// Whether the arc has contact of order at least `q` with the level-`q`
/// valuation ideal: every generator must have order `>= q` along it. An
/// all-vanishing evaluation counts only when its precision bound reaches
/// `q`.
pub fn cont_membership<F: Field>(h: &HneResult<F>, beta: &Arc<F>, q: usize) -> Result<bool> {
    if beta.dim() != h.dim() {
        return Err(Error::VariableCountMismatch {
            expected: h.dim(),
            found: beta.dim(),
        });
    }
    for g in aq_generators(h, q)? {
        if !beta.ord_poly(&g)?.at_least(q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a jet point satisfies every level-`q` jet-ideal generator.
pub fn viq_membership<F: Field>(h: &HneResult<F>, point: &JetPoint<F>, q: usize) -> Result<bool> {
    if point.dim() != h.dim() {
        return Err(Error::VariableCountMismatch {
            expected: h.dim(),
            found: point.dim(),
        });
    }
    if q >= 2 && point.max_degree() < q - 1 {
        return Err(Error::MissingJetAssignment {
            needed: q - 1,
            available: point.max_degree(),
        });
    }
    for g in iq_generators(h, q)? {
        if !g.eval(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hne::hne_expand;
    use crate::scalar::Rat;
    use num_traits::One;

    fn arc(rows: &[&[i64]], n: usize) -> Arc<Rat> {
        Arc::from_ints(&Rat::one(), rows, n).unwrap()
    }

    fn jv(coord: usize, degree: usize) -> JetVar {
        JetVar { coord, degree }
    }

    fn x1k(k: usize) -> JetPoly<Rat> {
        JetPoly::var(jv(1, k))
    }

    /// Independent expansion oracle: substitute a numeric sequence for the
    /// jet variables and compare against the coefficient of t^q in
    /// sum c_{i,j} (a_1 t + a_2 t^2 + ...)^j computed with plain series.
    fn f_oracle(h: &HneResult<Rat>, i: usize, q: usize, seq: &[i64]) -> Rat {
        use crate::series::Series;
        let n = q + 1;
        let inner = Series::from_ints(
            &Rat::one(),
            &{
                let mut v = vec![0i64];
                v.extend_from_slice(&seq[..q]);
                v
            },
            n,
        );
        let mut acc = Series::zero(n);
        let mut power = Series::constant(Rat::one(), n);
        for j in 1..=q {
            power = &power * &inner;
            acc = &acc + &power.scale(h.coefficient(i, j).unwrap());
        }
        acc.coeff(q).clone()
    }

    #[test]
    fn f_polys_match_symbolic_expansion() {
        // Use an arc with distinct nonzero expansion coefficients:
        // P_2 = 2t + 3t^2 + 5t^3.
        let a = arc(&[&[0, 1], &[0, 2, 3, 5]], 10);
        let h = hne_expand(&a).unwrap();
        let two = Rat::one().embed_int(2);
        let three = Rat::one().embed_int(3);
        let five = Rat::one().embed_int(5);

        // f_{2,1} = c1 X1
        assert_eq!(f_poly(&h, 2, 1).unwrap(), x1k(1).scale(&two));
        // f_{2,2} = c1 X2 + c2 X1^2
        let expect = &x1k(2).scale(&two) + &(&x1k(1) * &x1k(1)).scale(&three);
        assert_eq!(f_poly(&h, 2, 2).unwrap(), expect);
        // f_{2,3} = c1 X3 + 2 c2 X1 X2 + c3 X1^3
        let expect = &(&x1k(3).scale(&two)
            + &(&x1k(1) * &x1k(2)).scale(&(three.clone() + three.clone())))
            + &(&(&x1k(1) * &x1k(1)) * &x1k(1)).scale(&five);
        assert_eq!(f_poly(&h, 2, 3).unwrap(), expect);

        // Numeric cross-check on a few sequences.
        for seq in [[1i64, 1, 1], [2, -1, 3], [0, 1, -2]] {
            for q in 1..=3 {
                let f = f_poly(&h, 2, q).unwrap();
                let point = {
                    let mut rows: Vec<Vec<i64>> = vec![vec![0; q + 1]; 2];
                    for (k, &v) in seq[..q].iter().enumerate() {
                        rows[0][k + 1] = v;
                    }
                    let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                    crate::jet::JetPoint::from_arc(&arc(&rows, q + 2))
                };
                assert_eq!(f.eval(&point).unwrap(), f_oracle(&h, 2, q, &seq));
            }
        }
    }

    #[test]
    fn aq_generator_examples() {
        let n_vars = 2;
        // q = 1: the maximal ideal.
        let a = arc(&[&[0, 1], &[0, 0, 1]], 10);
        let h = hne_expand(&a).unwrap();
        let gens = aq_generators(&h, 1).unwrap();
        assert_eq!(gens, vec![Poly::var(1, n_vars), Poly::var(2, n_vars)]);

        // (t, t^2), q = 3: {x1^3, x2 - x1^2}.
        let gens = aq_generators(&h, 3).unwrap();
        assert_eq!(gens[0], Poly::var(1, n_vars).pow(3));
        let z2 = &Poly::var(2, n_vars) - &Poly::var(1, n_vars).pow(2);
        assert_eq!(gens[1], z2);
        // Each generator has order >= q along the defining arc.
        for g in &gens {
            assert!(a.ord_poly(g).unwrap().at_least(3));
        }

        // (t, 0), q = 2: {x1^2, x2}.
        let axis = arc(&[&[0, 1], &[]], 10);
        let h = hne_expand(&axis).unwrap();
        let gens = aq_generators(&h, 2).unwrap();
        assert_eq!(gens[0], Poly::var(1, n_vars).pow(2));
        assert_eq!(gens[1], Poly::var(2, n_vars));
    }

    #[test]
    fn iq_generator_examples() {
        let a = arc(&[&[0, 1], &[0, 0, 1]], 10);
        let h = hne_expand(&a).unwrap();
        // q = 1: empty.
        assert!(iq_generators(&h, 1).unwrap().is_empty());
        // q = 2: {x_{2,1} - c_{2,1} x_{1,1}} with c_{2,1} = 0.
        let gens = iq_generators(&h, 2).unwrap();
        assert_eq!(gens, vec![JetPoly::var(jv(2, 1))]);
        // q = 3: {x_{2,1}, x_{2,2} - x_{1,1}^2}.
        let gens = iq_generators(&h, 3).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0], JetPoly::var(jv(2, 1)));
        let expect = &JetPoly::var(jv(2, 2)) - &(&x1k(1) * &x1k(1));
        assert_eq!(gens[1], expect);
    }

    #[test]
    fn membership_examples() {
        let a = arc(&[&[0, 1], &[0, 0, 1]], 16);
        let h = hne_expand(&a).unwrap();

        // The defining arc is a member at every level the table supports.
        for q in 1..=8 {
            assert!(cont_membership(&h, &a, q).unwrap());
            assert!(viq_membership(&h, &JetPoint::from_arc(&a), q).unwrap());
        }

        // (t, t^2 + t^5): member up to q = 5, not at q = 6.
        let beta = arc(&[&[0, 1], &[0, 0, 1, 0, 0, 1]], 16);
        assert!(cont_membership(&h, &beta, 5).unwrap());
        assert!(!cont_membership(&h, &beta, 6).unwrap());

        // Reparametrized by t -> t^2: all orders double, so membership holds.
        let doubled = arc(&[&[0, 0, 1], &[0, 0, 0, 0, 1]], 16);
        assert!(cont_membership(&h, &doubled, 2).unwrap());

        // Jet-side: (t, t^3) passes q = 2 (x_{2,1} = 0) but fails q = 3.
        let gamma = arc(&[&[0, 1], &[0, 0, 0, 1]], 16);
        let point = JetPoint::from_arc(&gamma);
        assert!(viq_membership(&h, &point, 2).unwrap());
        assert!(!viq_membership(&h, &point, 3).unwrap());
        // q = 1 accepts anything.
        assert!(viq_membership(&h, &point, 1).unwrap());
    }

    #[test]
    fn membership_is_monotone_in_the_level() {
        let a = arc(&[&[0, 1], &[0, 0, 1]], 16);
        let h = hne_expand(&a).unwrap();
        let candidates = [
            arc(&[&[0, 1], &[0, 0, 1, 0, 0, 1]], 16),
            arc(&[&[0, 1], &[0, 0, 0, 1]], 16),
            arc(&[&[0, 0, 1], &[0, 0, 0, 0, 1]], 16),
            arc(&[&[], &[0, 1]], 16),
        ];
        for beta in candidates {
            let point = JetPoint::from_arc(&beta);
            let mut last_cont = true;
            let mut last_jet = true;
            for q in 1..=8 {
                let cont = cont_membership(&h, &beta, q).unwrap();
                let jet = viq_membership(&h, &point, q).unwrap();
                assert!(cont <= last_cont, "contact membership regained at level {q}");
                assert!(jet <= last_jet, "jet membership regained at level {q}");
                last_cont = cont;
                last_jet = jet;
            }
        }
    }

    #[test]
    fn substitution_identity() {
        // sum_j f_{i,j}(a_1..a_j) t^j equals sum_j c_{i,j} (a_1 t + ...)^j.
        let a = arc(&[&[0, 1, 1], &[0, 0, 0, 1]], 10);
        let h = hne_expand(&a).unwrap();
        let seq = [2i64, -1, 1, 3, -2];
        for q in 1..=5 {
            let f = f_poly(&h, 2, q).unwrap();
            let rows: Vec<Vec<i64>> = vec![
                {
                    let mut r = vec![0i64];
                    r.extend_from_slice(&seq[..q]);
                    r
                },
                vec![0],
            ];
            let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let point = JetPoint::from_arc(&arc(&rows, q + 2));
            assert_eq!(f.eval(&point).unwrap(), f_oracle(&h, 2, q, &seq));
        }
    }
}
