//! Exhaustive verification sweeps over the ring, the LG correspondence and
//! the polynomial identities, producing uniform pass/fail records.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Result;
use crate::identities::{self, IdentityReport};
use crate::lg::{correspondence_tuples, lg_gw, lg_gw_odd, odd_lg_queries, ogsymmetry_check, oglg_check, oglg_vanishing_value, LGQuery};
use crate::partitions::{dual, strict_partitions, StrictPartition};
use crate::ring::{big_to_json, ring, GWQuery, QuantumClass};

/// One verified statement. `detail` holds the residual or the compared
/// values when the check fails.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub pass: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: &str, params: Value, pass: bool, detail: Value) -> Self {
        Check {
            name: name.to_string(),
            params,
            pass,
            detail,
        }
    }

    fn residual(name: &str, params: Value, residual: &QuantumClass) -> Self {
        Self::new(name, params, residual.is_zero(), residual.to_json()["terms"].clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.name,
            "params": self.params,
            "pass": self.pass,
            "residual_terms": self.detail,
        })
    }
}

impl From<IdentityReport> for Check {
    fn from(r: IdentityReport) -> Self {
        let v = r.to_json();
        Check::new(&r.identity, r.params.clone(), r.pass(), v["residual_terms"].clone())
    }
}

fn sp_json(p: &StrictPartition) -> Value {
    json!(p.parts())
}

/// Presentation relations, quantum Giambelli, Pieri, duality, ρ-products,
/// nonnegativity with grading, and the vanishing bounds for one n.
pub fn ring_checks(n: u32) -> Result<Vec<Check>> {
    let r = ring(n);
    let basis = r.basis();
    let mut out = Vec::new();
    for (label, res) in r.presentation_residuals()? {
        out.push(Check::residual("presentation", json!({"n": n, "relation": label}), &res));
    }
    let long: Vec<_> = basis.iter().filter(|l| l.len() >= 3).cloned().collect();
    let giambelli: Result<Vec<Check>> = long
        .par_iter()
        .map(|l| {
            let res = r.giambelli_check(l)?;
            Ok(Check::residual("giambelli", json!({"n": n, "lambda": sp_json(l)}), &res))
        })
        .collect();
    out.extend(giambelli?);
    let pieri: Result<Vec<Check>> = basis
        .par_iter()
        .flat_map(|l| (0..=n).map(move |k| (l, k)).collect::<Vec<_>>())
        .map(|(l, k)| {
            let rule = r.quantum_pieri(l, k)?;
            let prod = r.quantum_product(l, &StrictPartition::row(k))?;
            Ok(Check::residual("pieri", json!({"n": n, "lambda": sp_json(l), "k": k}), &(&rule - &prod)))
        })
        .collect();
    out.extend(pieri?);
    let rho = StrictPartition::rho(n);
    for l in &basis {
        let hat = dual(l, n)?;
        let mut ok = true;
        for m in &basis {
            let top = r.classical_product(l, m)?.get(&rho).cloned().unwrap_or_default();
            let expected = if *m == hat { BigInt::one() } else { BigInt::zero() };
            ok &= top == expected;
        }
        let full = r.classical_product(l, &hat)?;
        ok &= full.len() == 1;
        out.push(Check::new("duality", json!({"n": n, "lambda": sp_json(l)}), ok, json!([])));
    }
    let rho_small = StrictPartition::rho(n - 1);
    for l in &basis {
        let closed = r.rho_product(l)?;
        let prod = r.quantum_product(l, &rho_small)?;
        out.push(Check::residual("rho_product", json!({"n": n, "lambda": sp_json(l)}), &(&closed - &prod)));
    }
    let square = r.quantum_product(&rho, &rho)?;
    let expected = if n.is_multiple_of(2) {
        QuantumClass::term(n, StrictPartition::row(n), n / 2, BigInt::one())
    } else {
        QuantumClass::q_power(n, n.div_ceil(2))
    };
    out.push(Check::residual("rho_square", json!({"n": n}), &(&*square - &expected)));
    for (i, l) in basis.iter().enumerate() {
        for m in &basis[i..] {
            let prod = r.quantum_product(l, m)?;
            let graded = prod.degrees().iter().all(|&w| w == l.weight() + m.weight());
            let nonneg = prod.terms().values().all(|c| !c.is_negative());
            out.push(Check::new(
                "nonnegative",
                json!({"n": n, "lambda": sp_json(l), "mu": sp_json(m)}),
                graded && nonneg,
                prod.to_json()["terms"].clone(),
            ));
        }
    }
    out.extend(vanishing_checks(n)?);
    Ok(out)
}

/// ⟨τ_λ, τ_μ, τ_ν⟩_d = 0 whenever 2d lies outside the vanishing interval.
pub fn vanishing_checks(n: u32) -> Result<Vec<Check>> {
    let r = ring(n);
    let small = strict_partitions(n - 1);
    let mut out = Vec::new();
    for l in r.basis().iter().filter(|l| !l.is_empty()) {
        for m in &small {
            for v in &small {
                let Some(d) = GWQuery::degree_for(n, l.weight() + m.weight() + v.weight()) else {
                    continue;
                };
                let (lo, hi) = r.vanishing_bounds(l, m, v)?;
                if (lo..=hi).contains(&(2 * d as i64)) {
                    continue;
                }
                let value = r.gw(l, m, v, d)?;
                out.push(Check::new(
                    "vanishing",
                    json!({"n": n, "lambda": sp_json(l), "mu": sp_json(m), "nu": sp_json(v), "d": d}),
                    value.is_zero(),
                    json!({"value": big_to_json(&value)}),
                ));
            }
        }
    }
    Ok(out)
}

fn tuple_json(n: u32, l: &StrictPartition, m: &StrictPartition, v: &StrictPartition, d: u32, e: u32) -> Value {
    json!({"n": n, "lambda": sp_json(l), "mu": sp_json(m), "nu": sp_json(v), "d": d, "e": e})
}

/// The eight-fold symmetry and the OG/LG correspondence on the given
/// tuples (λ, μ, ν, d, e).
pub fn correspondence_checks(
    n: u32,
    tuples: &[(StrictPartition, StrictPartition, StrictPartition, u32, u32)],
) -> Result<Vec<Check>> {
    let nested: Result<Vec<Vec<Check>>> = tuples
        .par_iter()
        .map(|(l, m, v, d, e)| {
            let sym = ogsymmetry_check(l, m, v, *d, *e, n)?;
            let corr = oglg_check(l, m, v, *d, n)?;
            let params = tuple_json(n, l, m, v, *d, *e);
            Ok(vec![
                Check::new(
                    "ogsymmetry",
                    params.clone(),
                    sym.holds(),
                    json!({"lhs": big_to_json(&sym.lhs), "rhs": big_to_json(&sym.rhs)}),
                ),
                Check::new(
                    "oglg",
                    params,
                    corr.holds(),
                    json!({
                        "og": big_to_json(&corr.og),
                        "lg": big_to_json(&corr.lg),
                        "lg_odd": corr.lg_odd.as_ref().map(big_to_json),
                    }),
                ),
            ])
        })
        .collect();
    Ok(nested?.into_iter().flatten().collect())
}

/// OG invariants with λ = 0 or ℓ(λ) < 2d+1 vanish.
pub fn oglg_vanishing_checks(n: u32) -> Result<Vec<Check>> {
    let small = strict_partitions(n - 1);
    let mut out = Vec::new();
    for l in strict_partitions(n) {
        for m in &small {
            for v in &small {
                let Some(d) = GWQuery::degree_for(n, l.weight() + m.weight() + v.weight()) else {
                    continue;
                };
                if !l.is_empty() && l.len() as u32 > 2 * d {
                    continue;
                }
                let value = oglg_vanishing_value(&l, m, v, d, n)?;
                out.push(Check::new(
                    "oglg_vanishing",
                    json!({"n": n, "lambda": sp_json(&l), "mu": sp_json(m), "nu": sp_json(v), "d": d}),
                    value.is_zero(),
                    json!({"value": big_to_json(&value)}),
                ));
            }
        }
    }
    Ok(out)
}

/// lg_gw against lg_gw_odd on every odd-degree admissible LG triple.
pub fn lg_route_checks(n: u32) -> Result<Vec<Check>> {
    odd_lg_queries(n)
        .par_iter()
        .map(|q| {
            let via_og = lg_gw(q)?;
            let direct = lg_gw_odd(&q.lambda, &q.mu, &q.nu, q.e, n)?;
            Ok(Check::new(
                "lg_routes",
                json!({"n": n, "lambda": sp_json(&q.lambda), "mu": sp_json(&q.mu), "nu": sp_json(&q.nu), "e": q.e}),
                via_og == direct,
                json!({"og_route": big_to_json(&via_og), "odd_route": big_to_json(&direct)}),
            ))
        })
        .collect()
}

/// lg_gw is invariant under permuting its three arguments.
pub fn lg_symmetry_checks(n: u32) -> Result<Vec<Check>> {
    let small = strict_partitions(n - 1);
    let mut out = Vec::new();
    for (i, l) in small.iter().enumerate() {
        for (j, m) in small.iter().enumerate().skip(i) {
            for v in &small[j..] {
                let Some(e) = LGQuery::degree_for(n, l.weight() + m.weight() + v.weight()) else {
                    continue;
                };
                let perms = [(l, m, v), (l, v, m), (m, l, v), (m, v, l), (v, l, m), (v, m, l)];
                let values = perms
                    .iter()
                    .map(|(a, b, c)| lg_gw(&LGQuery::new(n, (*a).clone(), (*b).clone(), (*c).clone(), e)))
                    .collect::<Result<Vec<_>>>()?;
                out.push(Check::new(
                    "lg_symmetry",
                    json!({"n": n, "lambda": sp_json(l), "mu": sp_json(m), "nu": sp_json(v), "e": e}),
                    values.iter().all(|x| *x == values[0]),
                    Value::Array(values.iter().map(big_to_json).collect()),
                ));
            }
        }
    }
    Ok(out)
}

/// Everything on the LG side for one n, exhaustively.
pub fn lg_checks(n: u32) -> Result<Vec<Check>> {
    let mut out = correspondence_checks(n, &correspondence_tuples(n))?;
    out.extend(oglg_vanishing_checks(n)?);
    out.extend(lg_route_checks(n)?);
    out.extend(lg_symmetry_checks(n)?);
    Ok(out)
}

pub fn identity_checks(n_max: usize) -> Result<Vec<Check>> {
    Ok(identities::full_suite(n_max)?
        .into_iter()
        .map(Check::from)
        .collect())
}
