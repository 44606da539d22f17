//! Exact checks of the polynomial identities satisfied by Q̃-polynomials:
//! the Pfaffian identity for ∂_□ images, the two-row and general formulas for
//! ∂_□(Q̃_λ), and the alternating first-variable identity.
//!
//! Every check works with integral Q̃-polynomials and reports the exact
//! residual, which is zero exactly when the identity holds.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partitions::{c_set, partitions_with_max_part, strict_partitions, Composition, Partition, StrictPartition};
use crate::poly::{monomial_pair, GenPoly};
use crate::qtilde::engine;
use crate::ring::big_to_json;

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Value,
    pub residual: GenPoly,
}

impl IdentityReport {
    fn new(identity: &str, params: Value, residual: GenPoly) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            params,
            residual,
        }
    }

    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> Value {
        let scale = self.residual.scale();
        let terms: Vec<Value> = self
            .residual
            .term_list()
            .into_iter()
            .map(|(exps, c)| {
                let coeff = if scale >= 0 {
                    big_to_json(&(c << scale as usize))
                } else {
                    Value::String(format!("{c}/2^{}", -scale))
                };
                json!({"exponents": exps, "coeff": coeff})
            })
            .collect();
        json!({
            "identity": self.identity,
            "params": self.params,
            "pass": self.pass(),
            "residual_terms": terms,
        })
    }
}

/// Q̃_ν(x₁, ..., x_n).
fn qx(nu: &Composition, n: usize) -> GenPoly {
    (*engine(n).qtilde_x(nu)).clone()
}

/// Q̃_ν(X″) with X″ = (x₃, ..., x_n), as a polynomial in x₁, ..., x_n.
fn qx2(nu: &Composition, n: usize) -> GenPoly {
    engine(n - 2).qtilde_x(nu).embed(2, n)
}

fn comp(parts: &[i64]) -> Composition {
    Composition::new(parts.to_vec())
}

/// Σ_{j<r} (-1)^{j-1} ∂_□(Q̃_{λ_j,λ_r}) ∂_□(Q̃_{λ∖{λ_j,λ_r}}), r the length
/// of λ rounded up to even (λ_r = 0 when the length is odd).
pub fn check_pfaffian_identity(lambda: &StrictPartition, n: usize) -> Result<IdentityReport> {
    let l = lambda.len();
    if l < 3 {
        return Err(Error::InvalidIndex(format!("{lambda} has length < 3")));
    }
    if n < 2 || (lambda.first() as usize) > n {
        return Err(Error::InvalidIndex(format!("{lambda} needs n >= max(λ₁, 2), got {n}")));
    }
    let r = l + l % 2;
    let parts: Vec<i64> = (0..r).map(|i| lambda.part(i) as i64).collect();
    let mut residual = GenPoly::zero(n);
    for j in 0..r - 1 {
        let pair = qx(&comp(&[parts[j], parts[r - 1]]), n).box_difference()?;
        let rest: Vec<i64> = (0..r - 1).filter(|&t| t != j).map(|t| parts[t]).collect();
        let term = &pair * &qx(&comp(&rest), n).box_difference()?;
        residual = if j % 2 == 0 { &residual + &term } else { &residual - &term };
    }
    Ok(IdentityReport::new(
        "pfaffian",
        json!({"lambda": lambda.parts(), "n": n}),
        residual,
    ))
}

/// 2(Q̃_{a-1,b} + Q̃_{a,b-1})(X″) + 2x₁x₂(Q̃_{a-2,b-1} + Q̃_{a-1,b-2})(X″).
pub fn box_two_row_rhs(a: u32, b: u32, n: usize) -> GenPoly {
    let (a, b) = (a as i64, b as i64);
    let first = &qx2(&comp(&[a - 1, b]), n) + &qx2(&comp(&[a, b - 1]), n);
    let second = &qx2(&comp(&[a - 2, b - 1]), n) + &qx2(&comp(&[a - 1, b - 2]), n);
    let x1x2 = GenPoly::from_terms(n, [(exps_x1x2(n, 1, 1), BigInt::one())]);
    (&first + &(&x1x2 * &second)).mul_pow2(1)
}

fn exps_x1x2(n: usize, r: u32, s: u32) -> Vec<u32> {
    let mut e = vec![0; n];
    e[0] = r;
    e[1] = s;
    e
}

/// ∂_□(Q̃_{a,b}) against its two-row formula, for a > b ≥ 0.
pub fn check_box_two_row(a: u32, b: u32, n: usize) -> Result<IdentityReport> {
    if a <= b {
        return Err(Error::InvalidIndex(format!("need a > b, got a = {a}, b = {b}")));
    }
    if n < (a as usize).max(3) {
        return Err(Error::InvalidIndex(format!("need n >= max(a, 3), got {n}")));
    }
    let lhs = qx(&comp(&[a as i64, b as i64]), n).box_difference()?;
    Ok(IdentityReport::new(
        "box_two_row",
        json!({"a": a, "b": b, "n": n}),
        &lhs - &box_two_row_rhs(a, b, n),
    ))
}

/// 2 Σ_{s≤r≤ℓ, r+s even} m_{r,s}(x₁,x₂) Σ_{a+2b=r+s+1, b≤s} C(a-1, s-b)
/// Σ_{μ∈C(λ,a,b)} Q̃_μ(X″).
pub fn boxprop_rhs(lambda: &Partition, n: usize) -> Result<GenPoly> {
    let l = lambda.len() as u32;
    let mut out = GenPoly::zero(n);
    for r in 0..=l {
        for s in (0..=r).filter(|s| (r + s) % 2 == 0) {
            let mut inner = GenPoly::zero(n);
            for b in 0..=s {
                let Some(a) = (r + s + 1).checked_sub(2 * b) else {
                    continue;
                };
                if a == 0 || s - b > a - 1 {
                    continue;
                }
                let coeff = BigInt::from(num_integer::binomial(a as u64 - 1, (s - b) as u64));
                let mut sum = GenPoly::zero(n);
                for mu in c_set(lambda, a as usize, b as usize) {
                    sum = &sum + &qx2(&mu, n);
                }
                inner = &inner + &sum.scalar_mul(&coeff);
            }
            if !inner.is_zero() {
                let m = monomial_pair(r, s)?.embed(0, n);
                out = &out + &(&m * &inner);
            }
        }
    }
    Ok(out.mul_pow2(1))
}

/// ∂_□(Q̃_λ) against the general formula, for nonzero strict λ and
/// n ≥ λ₁ + 2.
pub fn check_boxprop(lambda: &StrictPartition, n: usize) -> Result<IdentityReport> {
    if lambda.is_empty() {
        return Err(Error::InvalidIndex("λ must be nonzero".into()));
    }
    if n < lambda.first() as usize + 2 {
        return Err(Error::InvalidIndex(format!("need n >= λ₁ + 2, got {n}")));
    }
    let lhs = qx(&Composition::from(lambda.as_partition()), n).box_difference()?;
    Ok(IdentityReport::new(
        "boxprop",
        json!({"lambda": lambda.parts(), "n": n}),
        &lhs - &boxprop_rhs(lambda, n)?,
    ))
}

/// 2 Σ_i (-1)^{i-1} Q̃_{λ∖λ_i}(X) Q̃_{λ_i}(X′) against
/// Q̃_λ(X̃) + (-1)^{ℓ+1} Q̃_λ(X), X̃ = (-x₁, x₂, ..., x_n), for λ ∈ ℰ_n of
/// length ≥ 1 and n ≥ λ₁ + 1.
pub fn check_appendix(lambda: &Partition, n: usize) -> Result<IdentityReport> {
    let l = lambda.len();
    if l == 0 {
        return Err(Error::InvalidIndex("λ must be nonzero".into()));
    }
    if n < lambda.first() as usize + 1 {
        return Err(Error::InvalidIndex(format!("need n >= λ₁ + 1, got {n}")));
    }
    let inner = engine(n - 1);
    let mut lhs = GenPoly::zero(n);
    for i in 0..l {
        let rest = Composition::from(&lambda.remove_at(i));
        let single = inner.qtilde_x(&comp(&[lambda.part(i) as i64])).embed(1, n);
        let term = &qx(&rest, n) * &single;
        lhs = if i % 2 == 0 { &lhs + &term } else { &lhs - &term };
    }
    let full = qx(&Composition::from(lambda), n);
    let signed = if l % 2 == 1 { full.clone() } else { -&full };
    let rhs = &full.negate_first() + &signed;
    Ok(IdentityReport::new(
        "appendix",
        json!({"lambda": lambda.parts(), "n": n}),
        &lhs.mul_pow2(1) - &rhs,
    ))
}

/// All parameter sweeps, each mapped through `f` in parallel. The order of
/// the output follows the input order.
fn sweep<T, F>(params: Vec<T>, f: F) -> Result<Vec<IdentityReport>>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<IdentityReport> + Send + Sync,
{
    params.par_iter().map(f).collect()
}

/// The Pfaffian identity for every λ ∈ 𝒟_n with 3 ≤ ℓ(λ) ≤ 5, 2 ≤ n ≤ n_max.
pub fn pfaffian_sweep(n_max: usize) -> Result<Vec<IdentityReport>> {
    let mut params = Vec::new();
    for n in 2..=n_max {
        for lambda in strict_partitions(n as u32) {
            if (3..=5).contains(&lambda.len()) {
                params.push((lambda, n));
            }
        }
    }
    sweep(params, |(l, n)| check_pfaffian_identity(l, *n))
}

/// The two-row formula for every a > b ≥ 0 with a ≤ a_max, n = max(a, 3).
pub fn box_two_row_sweep(a_max: u32) -> Result<Vec<IdentityReport>> {
    let params: Vec<(u32, u32)> = (1..=a_max).flat_map(|a| (0..a).map(move |b| (a, b))).collect();
    sweep(params, |&(a, b)| check_box_two_row(a, b, (a as usize).max(3)))
}

/// The general ∂_□ formula for every nonzero strict λ with λ₁ ≤ part_max,
/// n = λ₁ + 2.
pub fn boxprop_sweep(part_max: u32) -> Result<Vec<IdentityReport>> {
    let params: Vec<StrictPartition> = strict_partitions(part_max)
        .into_iter()
        .filter(|l| !l.is_empty())
        .collect();
    sweep(params, |l| check_boxprop(l, l.first() as usize + 2))
}

/// The alternating identity for every nonzero λ ∈ ℰ_{part_max} with
/// |λ| ≤ weight_max, in n = part_max + 1 variables.
pub fn appendix_sweep(part_max: u32, weight_max: u32) -> Result<Vec<IdentityReport>> {
    let params: Vec<Partition> = (1..=weight_max)
        .flat_map(|w| partitions_with_max_part(w, part_max))
        .collect();
    let n = part_max as usize + 1;
    sweep(params, move |l| check_appendix(l, n))
}

/// Every identity over the ranges appropriate to n ≤ n_max.
pub fn full_suite(n_max: usize) -> Result<Vec<IdentityReport>> {
    let part_max = (n_max as u32).max(1);
    let mut out = pfaffian_sweep(n_max)?;
    out.extend(box_two_row_sweep(part_max + 1)?);
    out.extend(boxprop_sweep(part_max)?);
    out.extend(appendix_sweep(part_max, 10)?);
    Ok(out)
}

/// Whether the ∂_□ formula at a two-part λ = (a, b) (or λ = (a) when b = 0)
/// coincides term by term with the two-row formula.
pub fn boxprop_matches_two_row(a: u32, b: u32, n: usize) -> Result<bool> {
    let lambda = Partition::new(vec![a, b])?;
    let diff = &boxprop_rhs(&lambda, n)? - &box_two_row_rhs(a, b, n);
    Ok(diff.is_zero())
}

/// The dyadic form of the alternating identity on P̃-polynomials, with
/// e_{λ_i}(X′) on the left. Used to confirm that the doubled integral form
/// is equivalent.
pub fn appendix_ptilde_residual(lambda: &Partition, n: usize) -> GenPoly {
    let l = lambda.len();
    let pt = |p: &Partition, m: usize| crate::qtilde::ptilde(&Composition::from(p), m);
    let mut lhs = GenPoly::zero(n);
    for i in 0..l {
        let rest = lambda.remove_at(i);
        let e = crate::poly::elementary_poly(lambda.part(i) as usize, n - 1).embed(1, n);
        let term = &pt(&rest, n) * &e;
        lhs = if i % 2 == 0 { &lhs + &term } else { &lhs - &term };
    }
    let full = pt(lambda, n);
    let signed = if l % 2 == 1 { full.clone() } else { -&full };
    &lhs - &(&full.negate_first() + &signed)
}

/// True when every report passes.
pub fn all_pass(reports: &[IdentityReport]) -> bool {
    reports.iter().all(IdentityReport::pass)
}

/// Reports as a JSON array.
pub fn reports_json(reports: &[IdentityReport]) -> Value {
    Value::Array(reports.iter().map(IdentityReport::to_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn pfaffian_examples() {
        assert!(check_pfaffian_identity(&sp(&[3, 2, 1]), 3).unwrap().pass());
        assert!(check_pfaffian_identity(&sp(&[4, 2, 1]), 4).unwrap().pass());
        assert!(check_pfaffian_identity(&sp(&[5, 4, 3, 1]), 5).unwrap().pass());
        assert!(check_pfaffian_identity(&sp(&[2, 1]), 3).is_err());
    }

    #[test]
    fn two_row_examples() {
        assert!(check_box_two_row(2, 1, 3).unwrap().pass());
        assert!(check_box_two_row(1, 0, 3).unwrap().pass());
        assert!(check_box_two_row(4, 2, 4).unwrap().pass());
        assert!(check_box_two_row(2, 2, 3).is_err());
    }

    #[test]
    fn boxprop_examples() {
        assert!(check_boxprop(&sp(&[1]), 3).unwrap().pass());
        assert!(check_boxprop(&sp(&[2, 1]), 4).unwrap().pass());
        assert!(check_boxprop(&sp(&[4, 3, 1]), 6).unwrap().pass());
        assert!(check_boxprop(&sp(&[]), 3).is_err());
    }

    #[test]
    fn appendix_examples() {
        assert!(check_appendix(&p(&[1]), 2).unwrap().pass());
        assert!(check_appendix(&p(&[2, 2]), 3).unwrap().pass());
        assert!(check_appendix(&p(&[3, 2, 1]), 4).unwrap().pass());
        assert!(check_appendix(&p(&[]), 3).is_err());
        assert!(appendix_ptilde_residual(&p(&[3, 2, 1]), 4).is_zero());
        assert!(appendix_ptilde_residual(&p(&[2, 2, 1]), 3).is_zero());
    }

    #[test]
    fn boxprop_specializes_to_two_row() {
        for a in 1..=5 {
            for b in 0..a {
                assert!(boxprop_matches_two_row(a, b, a as usize + 2).unwrap(), "({a},{b})");
            }
        }
    }

    #[test]
    fn failing_report_carries_the_residual() {
        let r = IdentityReport::new("demo", json!({}), GenPoly::var(2, 0));
        assert!(!r.pass());
        let v = r.to_json();
        assert_eq!(v["pass"], json!(false));
        assert_eq!(v["residual_terms"][0]["exponents"], json!([1, 0]));
        assert_eq!(v["residual_terms"][0]["coeff"], json!(1));
    }
}
