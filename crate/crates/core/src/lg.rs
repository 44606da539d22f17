//! Gromov-Witten invariants of the Lagrangian Grassmannian LG(n-1, 2n-2)
//! through the correspondence with OG(n+1, 2n+2).
//!
//! LG classes σ_λ are indexed by λ ∈ 𝒟_{n-1}; deg q = n, so a degree-e
//! triple is admissible when |λ|+|μ|+|ν| = (n-1)n/2 + ne. The invariants are
//! defined through the OG side; [`lg_gw_odd`] computes odd-degree ones
//! directly from e-coefficients and serves as an independent check.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{lg_dual, star, StrictPartition};
use crate::qtilde::{e_to_f, engine};
use crate::ring::{ring, GWQuery};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LGQuery {
    pub n: u32,
    pub lambda: StrictPartition,
    pub mu: StrictPartition,
    pub nu: StrictPartition,
    pub e: u32,
}

impl LGQuery {
    pub fn new(n: u32, lambda: StrictPartition, mu: StrictPartition, nu: StrictPartition, e: u32) -> Self {
        LGQuery {
            n,
            lambda,
            mu,
            nu,
            e,
        }
    }

    pub fn required_weight(n: u32, e: u32) -> u32 {
        (n - 1) * n / 2 + n * e
    }

    pub fn weight(&self) -> u32 {
        self.lambda.weight() + self.mu.weight() + self.nu.weight()
    }

    pub fn is_admissible(&self) -> bool {
        self.weight() == Self::required_weight(self.n, self.e)
    }

    /// The degree making the weight admissible, if any.
    pub fn degree_for(n: u32, weight: u32) -> Option<u32> {
        let base = (n - 1) * n / 2;
        (weight >= base && (weight - base).is_multiple_of(n)).then(|| (weight - base) / n)
    }

    fn check_indices(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidIndex("LG(n-1, 2n-2) needs n >= 2".into()));
        }
        for p in [&self.lambda, &self.mu, &self.nu] {
            p.check_in(self.n - 1)?;
        }
        Ok(())
    }
}

/// ⟨τ_λ, τ_μ, τ_ν⟩_d on OG, with inadmissible degrees counted as zero.
fn og_gw_or_zero(n: u32, lambda: &StrictPartition, mu: &StrictPartition, nu: &StrictPartition, d: u32) -> Result<BigInt> {
    let q = GWQuery::new(n, lambda.clone(), mu.clone(), nu.clone(), d);
    if q.is_admissible() {
        ring(n).gw_invariant(&q)
    } else {
        Ok(BigInt::zero())
    }
}

/// ⟨σ_λ, σ_μ, σ_ν⟩_e, read off from OG: with ℓ(λ) - e = 2d+1 it equals
/// ⟨τ_{λ*}, τ_{μ′}, τ_{ν′}⟩_d, with ℓ(λ) - e = 2d it equals
/// ⟨τ_{(n,λ*)}, τ_{μ′}, τ_{ν′}⟩_d. When ℓ(λ) < e there is no such d and
/// the value is 0.
pub fn lg_gw(query: &LGQuery) -> Result<BigInt> {
    query.check_indices()?;
    if !query.is_admissible() {
        return Err(Error::InadmissibleQuery(format!(
            "|λ|+|μ|+|ν| = {} but LG degree {} needs {}",
            query.weight(),
            query.e,
            LGQuery::required_weight(query.n, query.e)
        )));
    }
    let n = query.n;
    let l = query.lambda.len() as u32;
    if l < query.e {
        return Ok(BigInt::zero());
    }
    let diff = l - query.e;
    let lstar = star(&query.lambda, n)?;
    let first = if diff % 2 == 1 {
        lstar
    } else {
        lstar.with_part(n)?
    };
    let mu = lg_dual(&query.mu, n)?;
    let nu = lg_dual(&query.nu, n)?;
    og_gw_or_zero(n, &first, &mu, &nu, diff / 2)
}

/// ⟨σ_λ, σ_μ, σ_ν⟩_{2d+1} = 2^{-(2d+1)} e(λ, μ; (n^{2d+1}, ν′)), computed in
/// n variables. Fails if the division is not exact.
pub fn lg_gw_odd(
    lambda: &StrictPartition,
    mu: &StrictPartition,
    nu: &StrictPartition,
    degree: u32,
    n: u32,
) -> Result<BigInt> {
    if degree.is_multiple_of(2) {
        return Err(Error::InvalidDegree(format!("degree {degree} is even")));
    }
    LGQuery::new(n, lambda.clone(), mu.clone(), nu.clone(), degree).check_indices()?;
    let kappa = crate::partitions::Partition::with_leading(n, degree as usize, lg_dual(nu, n)?.as_partition())?;
    let e = engine(n as usize).e_coeffs(lambda, mu)?.get(&kappa);
    // 2^{-(2d+1)} e is an f-style rescaling with exponent -degree
    e_to_f(&e, degree as usize, 0, 0)
}

/// Both sides of the OG eight-fold symmetry for one tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryOutcome {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub lhs_admissible: bool,
    pub rhs_admissible: bool,
}

impl SymmetryOutcome {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.lhs_admissible == self.rhs_admissible
    }
}

fn check_tuple(n: u32, lambda: &StrictPartition, mu: &StrictPartition, nu: &StrictPartition) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidIndex("need n >= 2".into()));
    }
    lambda.check_in(n)?;
    if lambda.is_empty() {
        return Err(Error::InvalidIndex("λ must be nonzero".into()));
    }
    mu.check_in(n - 1)?;
    nu.check_in(n - 1)
}

/// 2^{ℓ(μ)+ℓ(ν)+e+δ} ⟨τ_λ, τ_μ, τ_ν⟩_d against 2^{n+2d} ⟨τ_{λ*}, τ_{μ′},
/// τ_{ν′}⟩_g (e = 2g+1) or 2^{n+2d} ⟨τ_{(n,λ*)}, τ_{μ′}, τ_{ν′}⟩_g (e = 2g),
/// where 2d + e + 1 = ℓ(λ) and δ = [λ₁ = n]. Invariants of inadmissible
/// degree count as zero; admissibility itself must agree on both sides.
pub fn ogsymmetry_check(
    lambda: &StrictPartition,
    mu: &StrictPartition,
    nu: &StrictPartition,
    d: u32,
    e: u32,
    n: u32,
) -> Result<SymmetryOutcome> {
    check_tuple(n, lambda, mu, nu)?;
    if 2 * d + e + 1 != lambda.len() as u32 {
        return Err(Error::InvalidIndex(format!(
            "2d+e+1 = {} but ℓ({lambda}) = {}",
            2 * d + e + 1,
            lambda.len()
        )));
    }
    let delta = (lambda.first() == n) as usize;
    let lstar = star(lambda, n)?;
    let first = if e % 2 == 1 { lstar } else { lstar.with_part(n)? };
    let (mu2, nu2) = (lg_dual(mu, n)?, lg_dual(nu, n)?);
    let g = e / 2;
    let left = GWQuery::new(n, lambda.clone(), mu.clone(), nu.clone(), d);
    let right = GWQuery::new(n, first.clone(), mu2.clone(), nu2.clone(), g);
    let lhs_exp = mu.len() + nu.len() + e as usize + delta;
    let rhs_exp = (n + 2 * d) as usize;
    Ok(SymmetryOutcome {
        lhs: og_gw_or_zero(n, lambda, mu, nu, d)? << lhs_exp,
        rhs: og_gw_or_zero(n, &first, &mu2, &nu2, g)? << rhs_exp,
        lhs_admissible: left.is_admissible(),
        rhs_admissible: right.is_admissible(),
    })
}

/// The OG and LG sides of ⟨τ_λ, τ_μ, τ_ν⟩_d = ⟨σ_{λ*}, σ_{μ′}, σ_{ν′}⟩_e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceOutcome {
    pub og: BigInt,
    pub lg: BigInt,
    /// The LG side through [`lg_gw_odd`], for odd e.
    pub lg_odd: Option<BigInt>,
    pub og_admissible: bool,
    pub lg_admissible: bool,
}

impl CorrespondenceOutcome {
    pub fn holds(&self) -> bool {
        self.og == self.lg
            && self.og_admissible == self.lg_admissible
            && self.lg_odd.as_ref().is_none_or(|v| *v == self.lg)
    }
}

/// Checks the correspondence for λ ≠ 0 in 𝒟_n, μ, ν in 𝒟_{n-1} and
/// e = ℓ(λ) - 2d - 1 ≥ 0.
pub fn oglg_check(
    lambda: &StrictPartition,
    mu: &StrictPartition,
    nu: &StrictPartition,
    d: u32,
    n: u32,
) -> Result<CorrespondenceOutcome> {
    check_tuple(n, lambda, mu, nu)?;
    let l = lambda.len() as u32;
    if l < 2 * d + 1 {
        return Err(Error::InvalidIndex(format!("ℓ({lambda}) < 2d+1 = {}", 2 * d + 1)));
    }
    let e = l - 2 * d - 1;
    let og_query = GWQuery::new(n, lambda.clone(), mu.clone(), nu.clone(), d);
    let lg_query = LGQuery::new(n, star(lambda, n)?, lg_dual(mu, n)?, lg_dual(nu, n)?, e);
    let og = og_gw_or_zero(n, lambda, mu, nu, d)?;
    let (lg, lg_odd) = if lg_query.is_admissible() {
        let lg = lg_gw(&lg_query)?;
        let odd = if e % 2 == 1 {
            Some(lg_gw_odd(&lg_query.lambda, &lg_query.mu, &lg_query.nu, e, n)?)
        } else {
            None
        };
        (lg, odd)
    } else {
        (BigInt::zero(), None)
    };
    Ok(CorrespondenceOutcome {
        og,
        lg,
        lg_odd,
        og_admissible: og_query.is_admissible(),
        lg_admissible: lg_query.is_admissible(),
    })
}

/// ⟨τ_λ, τ_μ, τ_ν⟩_d for λ = 0 or ℓ(λ) < 2d+1, which must vanish.
pub fn oglg_vanishing_value(
    lambda: &StrictPartition,
    mu: &StrictPartition,
    nu: &StrictPartition,
    d: u32,
    n: u32,
) -> Result<BigInt> {
    lambda.check_in(n)?;
    if !lambda.is_empty() && lambda.len() as u32 > 2 * d {
        return Err(Error::InvalidIndex(format!("ℓ({lambda}) >= 2d+1")));
    }
    mu.check_in(n - 1)?;
    nu.check_in(n - 1)?;
    og_gw_or_zero(n, lambda, mu, nu, d)
}

/// All admissible tuples (λ, μ, ν, d, e) of the correspondence for n.
pub fn correspondence_tuples(n: u32) -> Vec<(StrictPartition, StrictPartition, StrictPartition, u32, u32)> {
    let big = crate::partitions::strict_partitions(n);
    let small = crate::partitions::strict_partitions(n - 1);
    let mut out = Vec::new();
    for lambda in big.iter().filter(|l| !l.is_empty()) {
        let l = lambda.len() as u32;
        for mu in &small {
            for nu in &small {
                let w = lambda.weight() + mu.weight() + nu.weight();
                let Some(d) = GWQuery::degree_for(n, w) else {
                    continue;
                };
                if 2 * d < l {
                    out.push((lambda.clone(), mu.clone(), nu.clone(), d, l - 2 * d - 1));
                }
            }
        }
    }
    out
}

/// Odd-degree admissible LG triples for n.
pub fn odd_lg_queries(n: u32) -> Vec<LGQuery> {
    let small = crate::partitions::strict_partitions(n - 1);
    let mut out = Vec::new();
    for lambda in &small {
        for mu in &small {
            for nu in &small {
                let w = lambda.weight() + mu.weight() + nu.weight();
                if let Some(e) = LGQuery::degree_for(n, w) {
                    if e % 2 == 1 {
                        out.push(LGQuery::new(n, lambda.clone(), mu.clone(), nu.clone(), e));
                    }
                }
            }
        }
    }
    out
}

/// Poincaré duality on LG: ⟨σ_λ, σ_0, σ_{λ′}⟩_0 = 1.
pub fn lg_duality_holds(n: u32) -> Result<bool> {
    for lambda in crate::partitions::strict_partitions(n - 1) {
        let q = LGQuery::new(n, lambda.clone(), StrictPartition::empty(), lg_dual(&lambda, n)?, 0);
        if !lg_gw(&q)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn lg_examples() {
        let q = LGQuery::new(2, sp(&[1]), sp(&[1]), sp(&[1]), 1);
        assert_eq!(lg_gw(&q).unwrap(), BigInt::one());
        assert_eq!(lg_gw_odd(&sp(&[1]), &sp(&[1]), &sp(&[1]), 1, 2).unwrap(), BigInt::one());
        assert_eq!(lg_gw_odd(&sp(&[1]), &sp(&[]), &sp(&[]), 1, 2).unwrap(), BigInt::zero());
        for n in 2..=5 {
            assert!(lg_duality_holds(n).unwrap());
        }
        let q = LGQuery::new(4, sp(&[2, 1]), sp(&[2, 1]), sp(&[2, 1]), 1);
        assert!(!q.is_admissible());
        assert!(matches!(lg_gw(&q), Err(Error::InadmissibleQuery(_))));
        assert!(matches!(lg_gw_odd(&sp(&[1]), &sp(&[1]), &sp(&[1]), 2, 2), Err(Error::InvalidDegree(_))));
        assert!(lg_gw(&LGQuery::new(2, sp(&[2]), sp(&[]), sp(&[]), 1)).is_err());
    }

    #[test]
    fn rho_route_agreement_n3() {
        let rho = sp(&[2, 1]);
        let small = crate::partitions::strict_partitions(2);
        for mu in &small {
            for nu in &small {
                let q = LGQuery::new(3, rho.clone(), mu.clone(), nu.clone(), 1);
                if q.is_admissible() {
                    assert_eq!(lg_gw(&q).unwrap(), lg_gw_odd(&rho, mu, nu, 1, 3).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_n_exhaustive() {
        for n in 2..=3 {
            for (l, m, v, d, e) in correspondence_tuples(n) {
                assert!(ogsymmetry_check(&l, &m, &v, d, e, n).unwrap().holds(), "{l} {m} {v} {d} {e}");
                assert!(oglg_check(&l, &m, &v, d, n).unwrap().holds(), "{l} {m} {v} {d}");
            }
        }
    }
}
