//! The classical and small quantum cohomology ring of OG(n+1, 2n+2).
//!
//! Schubert classes τ_λ are indexed by λ ∈ 𝒟_n and deg q = 2n. The product
//! τ_λ ⋆ τ_μ = Σ f(λ, μ; (n^{2d}, ν)) τ_ν q^d is read off from the Q̃
//! expansion of Q̃_λ Q̃_μ in n variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::partitions::{dual, horizontal_strips, lg_dual, star, StrictPartition};
use crate::qtilde::{e_to_f, engine, QTildeEngine};

/// Σ c_{ν,d} τ_ν q^d with ν ∈ 𝒟_n. Terms are keyed by (d, ν), which is also
/// the display order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumClass {
    n: u32,
    terms: BTreeMap<(u32, StrictPartition), BigInt>,
}

impl QuantumClass {
    pub fn zero(n: u32) -> Self {
        QuantumClass {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::term(n, StrictPartition::empty(), 0, BigInt::one())
    }

    /// c τ_ν q^d.
    pub fn term(n: u32, nu: StrictPartition, d: u32, c: BigInt) -> Self {
        let mut out = Self::zero(n);
        out.add_term(nu, d, c);
        out
    }

    pub fn schubert(n: u32, nu: StrictPartition) -> Self {
        Self::term(n, nu, 0, BigInt::one())
    }

    pub fn q_power(n: u32, d: u32) -> Self {
        Self::term(n, StrictPartition::empty(), d, BigInt::one())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as ((d, ν), coefficient), sorted by d then ν.
    pub fn terms(&self) -> &BTreeMap<(u32, StrictPartition), BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, nu: &StrictPartition, d: u32) -> BigInt {
        self.terms
            .get(&(d, nu.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, nu: StrictPartition, d: u32, c: BigInt) {
        assert!(nu.is_in(self.n), "{nu} is not in D_{}", self.n);
        if c.is_zero() {
            return;
        }
        let key = (d, nu);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        if !c.is_zero() {
            for ((d, nu), v) in &self.terms {
                out.terms.insert((*d, nu.clone()), v * c);
            }
        }
        out
    }

    /// The q-degree-0 part.
    pub fn classical_part(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((d, nu), c) in &self.terms {
            if *d == 0 {
                out.terms.insert((0, nu.clone()), c.clone());
            }
        }
        out
    }

    /// |ν| + 2nd for each term; a homogeneous class has a single value.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .terms
            .keys()
            .map(|(d, nu)| nu.weight() + 2 * self.n * d)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((d, nu), c)| json!({"nu": nu.parts(), "d": d, "coeff": big_to_json(c)}))
            .collect();
        json!({"n": self.n, "terms": terms})
    }
}

/// A big integer as a JSON number of arbitrary size.
pub fn big_to_json(c: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(c.to_string().parse().expect("integers are JSON numbers"))
}

impl fmt::Display for QuantumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((d, nu), c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || (nu.is_empty() && *d == 0) {
                factors.push(abs.to_string());
            }
            if !nu.is_empty() {
                factors.push(format!("τ[{}]", nu.to_csv()));
            }
            match d {
                0 => {}
                1 => factors.push("q".into()),
                _ => factors.push(format!("q^{d}")),
            }
            write!(f, "{}", factors.join("·"))?;
        }
        Ok(())
    }
}

impl Add for &QuantumClass {
    type Output = QuantumClass;
    fn add(self, rhs: &QuantumClass) -> QuantumClass {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for ((d, nu), c) in &rhs.terms {
            out.add_term(nu.clone(), *d, c.clone());
        }
        out
    }
}

impl Sub for &QuantumClass {
    type Output = QuantumClass;
    fn sub(self, rhs: &QuantumClass) -> QuantumClass {
        self + &(-rhs)
    }
}

impl Neg for &QuantumClass {
    type Output = QuantumClass;
    fn neg(self) -> QuantumClass {
        self.scalar_mul(&BigInt::from(-1))
    }
}

impl Mul for &QuantumClass {
    type Output = QuantumClass;
    /// Quantum product through the shared ring for this n.
    fn mul(self, rhs: &QuantumClass) -> QuantumClass {
        ring(self.n)
            .multiply(self, rhs)
            .expect("classes hold valid indices")
    }
}

/// A three-point invariant query ⟨τ_λ, τ_μ, τ_ν⟩_d on OG(n+1, 2n+2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GWQuery {
    pub n: u32,
    pub lambda: StrictPartition,
    pub mu: StrictPartition,
    pub nu: StrictPartition,
    pub d: u32,
}

impl GWQuery {
    pub fn new(n: u32, lambda: StrictPartition, mu: StrictPartition, nu: StrictPartition, d: u32) -> Self {
        GWQuery {
            n,
            lambda,
            mu,
            nu,
            d,
        }
    }

    /// n(n+1)/2 + 2nd: the weight an admissible triple must have.
    pub fn required_weight(n: u32, d: u32) -> u32 {
        n * (n + 1) / 2 + 2 * n * d
    }

    pub fn weight(&self) -> u32 {
        self.lambda.weight() + self.mu.weight() + self.nu.weight()
    }

    pub fn is_admissible(&self) -> bool {
        self.weight() == Self::required_weight(self.n, self.d)
    }

    /// The degree making (λ, μ, ν) admissible, if there is one.
    pub fn degree_for(n: u32, weight: u32) -> Option<u32> {
        let base = n * (n + 1) / 2;
        (weight >= base && (weight - base).is_multiple_of(2 * n)).then(|| (weight - base) / (2 * n))
    }
}

/// Quantum multiplication in QH*(OG(n+1, 2n+2)) with memoized products.
pub struct OgRing {
    n: u32,
    engine: Arc<QTildeEngine>,
    products: RwLock<HashMap<(StrictPartition, StrictPartition), Arc<QuantumClass>>>,
}

impl OgRing {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "OG(n+1, 2n+2) needs n >= 1");
        OgRing {
            n,
            engine: engine(n as usize),
            products: RwLock::default(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn basis(&self) -> Vec<StrictPartition> {
        crate::partitions::strict_partitions(self.n)
    }

    fn tau(&self, nu: StrictPartition) -> QuantumClass {
        QuantumClass::schubert(self.n, nu)
    }

    /// τ_i as a class, zero for i > n.
    pub fn special(&self, i: u32) -> QuantumClass {
        if i > self.n {
            QuantumClass::zero(self.n)
        } else {
            self.tau(StrictPartition::row(i))
        }
    }

    /// τ_λ ⋆ τ_μ.
    pub fn quantum_product(&self, lambda: &StrictPartition, mu: &StrictPartition) -> Result<Arc<QuantumClass>> {
        lambda.check_in(self.n)?;
        mu.check_in(self.n)?;
        let key = if lambda <= mu {
            (lambda.clone(), mu.clone())
        } else {
            (mu.clone(), lambda.clone())
        };
        if let Some(p) = self.products.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let e = self.engine.e_coeffs(lambda, mu)?;
        let mut out = QuantumClass::zero(self.n);
        for (kappa, c) in e.iter() {
            let lead = kappa.leading_count(self.n);
            let d = lead / 2;
            let Ok(nu) = StrictPartition::try_from_partition(kappa.skip(2 * d)) else {
                continue;
            };
            let f = e_to_f(c, lambda.len(), mu.len(), kappa.len())?;
            out.add_term(nu, d as u32, f);
        }
        let out = Arc::new(out);
        Ok(self
            .products
            .write()
            .unwrap()
            .entry(key)
            .or_insert(out)
            .clone())
    }

    /// The q-degree-0 part of τ_λ ⋆ τ_μ, as ν ↦ f(λ, μ; ν).
    pub fn classical_product(
        &self,
        lambda: &StrictPartition,
        mu: &StrictPartition,
    ) -> Result<BTreeMap<StrictPartition, BigInt>> {
        Ok(self
            .quantum_product(lambda, mu)?
            .terms()
            .iter()
            .filter(|((d, _), _)| *d == 0)
            .map(|((_, nu), c)| (nu.clone(), c.clone()))
            .collect())
    }

    /// Bilinear extension of the quantum product.
    pub fn multiply(&self, a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass> {
        if a.n != self.n || b.n != self.n {
            return Err(Error::InvalidIndex(format!(
                "classes for n = {} and n = {} in the ring for n = {}",
                a.n, b.n, self.n
            )));
        }
        let mut out = QuantumClass::zero(self.n);
        for ((da, la), ca) in &a.terms {
            for ((db, lb), cb) in &b.terms {
                let c = ca * cb;
                for ((d, nu), v) in self.quantum_product(la, lb)?.terms() {
                    out.add_term(nu.clone(), d + da + db, v * &c);
                }
            }
        }
        Ok(out)
    }

    /// τ_λ ⋆ τ_k by the quantum Pieri rule, through horizontal strips.
    pub fn quantum_pieri(&self, lambda: &StrictPartition, k: u32) -> Result<QuantumClass> {
        lambda.check_in(self.n)?;
        if k > self.n {
            return Err(Error::InvalidDegree(format!("k = {k} exceeds n = {}", self.n)));
        }
        let n = self.n;
        let mut out = QuantumClass::zero(n);
        for (mu, e) in horizontal_strips(lambda, k, n) {
            let c = BigInt::one() << e as usize;
            if let Ok(mu) = StrictPartition::try_from_partition(mu.clone()) {
                out.add_term(mu, 0, c.clone());
            }
            if mu.leading_count(n) >= 2 {
                if let Ok(rest) = StrictPartition::try_from_partition(mu.skip(2)) {
                    out.add_term(rest, 1, c);
                }
            }
        }
        Ok(out)
    }

    /// τ_n ⋆ τ_λ: τ_{(n,λ)} if λ₁ < n, else τ_{λ∖(n)} q.
    pub fn multiply_by_top(&self, lambda: &StrictPartition) -> Result<QuantumClass> {
        lambda.check_in(self.n)?;
        Ok(if lambda.first() < self.n {
            self.tau(lambda.with_part(self.n)?)
        } else {
            QuantumClass::term(self.n, lambda.without(&[self.n]), 1, BigInt::one())
        })
    }

    /// ⟨τ_λ, τ_μ, τ_ν⟩_d: the coefficient of τ_{ν̂} q^d in τ_λ ⋆ τ_μ.
    pub fn gw_invariant(&self, query: &GWQuery) -> Result<BigInt> {
        if query.n != self.n {
            return Err(Error::InvalidIndex(format!(
                "query for n = {} in the ring for n = {}",
                query.n, self.n
            )));
        }
        query.nu.check_in(self.n)?;
        if !query.is_admissible() {
            return Err(Error::InadmissibleQuery(format!(
                "|λ|+|μ|+|ν| = {} but degree {} needs {}",
                query.weight(),
                query.d,
                GWQuery::required_weight(self.n, query.d)
            )));
        }
        let prod = self.quantum_product(&query.lambda, &query.mu)?;
        Ok(prod.coefficient(&dual(&query.nu, self.n)?, query.d))
    }

    pub fn gw(&self, lambda: &StrictPartition, mu: &StrictPartition, nu: &StrictPartition, d: u32) -> Result<BigInt> {
        self.gw_invariant(&GWQuery::new(self.n, lambda.clone(), mu.clone(), nu.clone(), d))
    }

    /// τ_{a,b} for a > b ≥ 0, with τ_{a,0} = τ_a.
    fn two_row(&self, a: u32, b: u32) -> Result<QuantumClass> {
        let parts = if b == 0 { vec![a] } else { vec![a, b] };
        Ok(self.tau(StrictPartition::new(parts)?))
    }

    /// τ_λ - Σ_{j<r} (-1)^{j-1} τ_{λ_j,λ_r} ⋆ τ_{λ∖{λ_j,λ_r}}, r the length
    /// rounded up to even. Zero when quantum Giambelli holds at λ.
    pub fn giambelli_check(&self, lambda: &StrictPartition) -> Result<QuantumClass> {
        lambda.check_in(self.n)?;
        let l = lambda.len();
        if l < 3 {
            return Err(Error::InvalidIndex(format!("{lambda} has length < 3")));
        }
        let r = l + l % 2;
        let last = if r == l { lambda.part(l - 1) } else { 0 };
        let mut residual = self.tau(lambda.clone());
        for j in 0..r - 1 {
            let a = lambda.part(j);
            let removed: Vec<u32> = if last == 0 { vec![a] } else { vec![a, last] };
            let rest = self.tau(lambda.without(&removed));
            let term = self.multiply(&self.two_row(a, last)?, &rest)?;
            residual = if j % 2 == 0 {
                &residual - &term
            } else {
                &residual + &term
            };
        }
        Ok(residual)
    }

    /// Residuals of the presentation: the relations for τ_i² (i < n), the
    /// quantum relation τ_n² = q, and the two-row Giambelli formulas for
    /// n ≥ i > j > 0. Each entry is (label, residual).
    pub fn presentation_residuals(&self) -> Result<Vec<(String, QuantumClass)>> {
        let n = self.n;
        let two = BigInt::from(2);
        let mut out = Vec::new();
        let quadratic = |i: u32, j: u32| -> Result<QuantumClass> {
            // τ_i τ_j + 2 Σ_{k<j} (-1)^k τ_{i+k} τ_{j-k} + (-1)^j τ_{i+j}
            let mut s = self.multiply(&self.special(i), &self.special(j))?;
            for k in 1..j {
                let t = self.multiply(&self.special(i + k), &self.special(j - k))?;
                let c = if k % 2 == 0 { two.clone() } else { -two.clone() };
                s = &s + &t.scalar_mul(&c);
            }
            let t = self.special(i + j);
            Ok(if j.is_multiple_of(2) { &s + &t } else { &s - &t })
        };
        for i in 1..n {
            out.push((format!("relation i={i}"), quadratic(i, i)?));
        }
        let top = self.multiply(&self.special(n), &self.special(n))?;
        out.push(("quantum relation".into(), &top - &QuantumClass::q_power(n, 1)));
        for i in 2..=n {
            for j in 1..i {
                let lhs = self.two_row(i, j)?;
                out.push((format!("giambelli i={i} j={j}"), &lhs - &quadratic(i, j)?));
            }
        }
        Ok(out)
    }

    /// Whether every presentation residual vanishes.
    pub fn presentation_check(&self) -> Result<bool> {
        Ok(self
            .presentation_residuals()?
            .iter()
            .all(|(_, r)| r.is_zero()))
    }

    /// τ_λ ⋆ τ_{ρ_{n-1}} by the closed formula: with ℓ(λ) = 2d it is
    /// τ_{(λ*)′} q^d, with ℓ(λ) = 2d+1 it is τ_{(n,(λ*)′)} q^d.
    pub fn rho_product(&self, lambda: &StrictPartition) -> Result<QuantumClass> {
        lambda.check_in(self.n)?;
        let l = lambda.len() as u32;
        let base = lg_dual(&star(lambda, self.n)?, self.n)?;
        let nu = if l % 2 == 1 {
            base.with_part(self.n)?
        } else {
            base
        };
        Ok(QuantumClass::term(self.n, nu, l / 2, BigInt::one()))
    }

    /// The closed interval for 2d outside of which ⟨τ_λ, τ_μ, τ_ν⟩_d
    /// vanishes, for λ ≠ 0 in 𝒟_n and μ, ν in 𝒟_{n-1}:
    /// ℓ(μ)+ℓ(ν)-n+δ ≤ 2d ≤ ℓ(λ)+ℓ(μ)+ℓ(ν)-n, δ = [λ₁ = n].
    pub fn vanishing_bounds(
        &self,
        lambda: &StrictPartition,
        mu: &StrictPartition,
        nu: &StrictPartition,
    ) -> Result<(i64, i64)> {
        lambda.check_in(self.n)?;
        if lambda.is_empty() {
            return Err(Error::InvalidIndex("λ must be nonzero".into()));
        }
        mu.check_in(self.n - 1)?;
        nu.check_in(self.n - 1)?;
        let n = self.n as i64;
        let delta = (lambda.first() == self.n) as i64;
        let (lm, ln) = (mu.len() as i64, nu.len() as i64);
        Ok((lm + ln - n + delta, lambda.len() as i64 + lm + ln - n))
    }
}

fn rings() -> &'static Mutex<HashMap<u32, Arc<OgRing>>> {
    static RINGS: OnceLock<Mutex<HashMap<u32, Arc<OgRing>>>> = OnceLock::new();
    RINGS.get_or_init(Mutex::default)
}

/// The process-wide ring for n, sharing product caches between callers.
pub fn ring(n: u32) -> Arc<OgRing> {
    rings()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::new(OgRing::new(n)))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn term(n: u32, nu: &[u32], d: u32) -> QuantumClass {
        QuantumClass::term(n, sp(nu), d, BigInt::one())
    }

    #[test]
    fn display_examples() {
        assert_eq!(term(2, &[], 1).to_string(), "q");
        assert_eq!(term(2, &[2], 1).to_string(), "τ[2]·q");
        assert_eq!(term(3, &[1], 0).to_string(), "τ[1]");
        assert_eq!(QuantumClass::term(3, sp(&[2, 1]), 2, BigInt::from(2)).to_string(), "2·τ[2,1]·q^2");
        assert_eq!(QuantumClass::one(3).to_string(), "1");
        assert_eq!(QuantumClass::zero(3).to_string(), "0");
        let mixed = &term(3, &[3], 0) - &term(3, &[1], 1).scalar_mul(&BigInt::from(3));
        assert_eq!(mixed.to_string(), "τ[3] - 3·τ[1]·q");
    }

    #[test]
    fn json_shape() {
        let v = QuantumClass::term(2, sp(&[2]), 1, BigInt::from(3)).to_json();
        assert_eq!(v.to_string(), r#"{"n":2,"terms":[{"nu":[2],"d":1,"coeff":3}]}"#);
    }

    #[test]
    fn classical_product_examples() {
        let r = ring(2);
        assert_eq!(r.classical_product(&sp(&[1]), &sp(&[1])).unwrap(), [(sp(&[2]), BigInt::one())].into());
        for n in 1..=4 {
            let r = ring(n);
            for lam in r.basis() {
                let top = r.classical_product(&lam, &dual(&lam, n).unwrap()).unwrap();
                assert_eq!(top, [(StrictPartition::rho(n), BigInt::one())].into());
                let unit = r.classical_product(&lam, &sp(&[])).unwrap();
                assert_eq!(unit, [(lam.clone(), BigInt::one())].into());
            }
        }
    }

    #[test]
    fn quantum_product_examples() {
        for n in 1..=5 {
            let r = ring(n);
            assert_eq!(*r.quantum_product(&sp(&[n]), &sp(&[n])).unwrap(), term(n, &[], 1));
        }
        let r = ring(2);
        assert_eq!(*r.quantum_product(&sp(&[2, 1]), &sp(&[2, 1])).unwrap(), term(2, &[2], 1));
        assert_eq!(*r.quantum_product(&sp(&[2]), &sp(&[1])).unwrap(), term(2, &[2, 1], 0));
        assert!(matches!(r.quantum_product(&sp(&[3]), &sp(&[1])), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn quantum_pieri_examples() {
        let r = ring(2);
        assert_eq!(r.quantum_pieri(&sp(&[2, 1]), 1).unwrap(), term(2, &[], 1));
        assert_eq!(r.quantum_pieri(&sp(&[2]), 1).unwrap(), term(2, &[2, 1], 0));
        assert_eq!(r.quantum_pieri(&sp(&[2, 1]), 0).unwrap(), term(2, &[2, 1], 0));
        assert!(matches!(r.quantum_pieri(&sp(&[1]), 3), Err(Error::InvalidDegree(_))));
    }

    #[test]
    fn multiply_by_top_examples() {
        let r = ring(3);
        assert_eq!(r.multiply_by_top(&sp(&[])).unwrap(), term(3, &[3], 0));
        assert_eq!(r.multiply_by_top(&sp(&[3])).unwrap(), term(3, &[], 1));
        assert_eq!(r.multiply_by_top(&sp(&[3, 1])).unwrap(), term(3, &[1], 1));
        for lam in r.basis() {
            let prod = r.quantum_product(&sp(&[3]), &lam).unwrap();
            assert_eq!(*prod, r.multiply_by_top(&lam).unwrap(), "{lam}");
        }
    }

    #[test]
    fn gw_examples() {
        let r = ring(2);
        assert_eq!(r.gw(&sp(&[2]), &sp(&[2]), &sp(&[2, 1]), 1).unwrap(), BigInt::one());
        for d in 0..3 {
            assert!(matches!(r.gw(&sp(&[2]), &sp(&[2]), &sp(&[2]), d), Err(Error::InadmissibleQuery(_))));
        }
        let r = ring(3);
        for lam in r.basis() {
            assert_eq!(r.gw(&lam, &sp(&[]), &dual(&lam, 3).unwrap(), 0).unwrap(), BigInt::one());
        }
        assert_eq!(r.gw(&sp(&[3, 2, 1]), &sp(&[]), &sp(&[]), 0).unwrap(), BigInt::one());
        assert!(matches!(r.gw(&sp(&[3, 2]), &sp(&[]), &sp(&[]), 0), Err(Error::InadmissibleQuery(_))));
        assert_eq!(GWQuery::degree_for(2, 7), Some(1));
        assert_eq!(GWQuery::degree_for(2, 6), None);
    }

    #[test]
    fn giambelli_examples() {
        assert!(ring(3).giambelli_check(&sp(&[3, 2, 1])).unwrap().is_zero());
        assert!(ring(4).giambelli_check(&sp(&[4, 2, 1])).unwrap().is_zero());
        assert!(ring(4).giambelli_check(&sp(&[4, 3, 2, 1])).unwrap().is_zero());
        assert!(matches!(ring(3).giambelli_check(&sp(&[3, 1])), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn presentation_small() {
        for n in 2..=3 {
            for (label, res) in ring(n).presentation_residuals().unwrap() {
                assert!(res.is_zero(), "n={n} {label}: {res}");
            }
        }
    }

    #[test]
    fn rho_product_examples() {
        let r = ring(3);
        assert_eq!(r.rho_product(&sp(&[])).unwrap(), term(3, &[2, 1], 0));
        // the product by τ_{ρ_{n-1}}; τ_{ρ_n}² itself is τ_n times this
        assert_eq!(ring(2).rho_product(&sp(&[2, 1])).unwrap(), term(2, &[], 1));
        assert_eq!(r.rho_product(&sp(&[3, 2, 1])).unwrap(), term(3, &[3], 1));
        let sq2 = ring(2).quantum_product(&sp(&[2, 1]), &sp(&[2, 1])).unwrap();
        assert_eq!(*sq2, term(2, &[2], 1));
        let sq3 = r.quantum_product(&sp(&[3, 2, 1]), &sp(&[3, 2, 1])).unwrap();
        assert_eq!(*sq3, term(3, &[], 2));
    }

    #[test]
    fn vanishing_bounds_examples() {
        let r = ring(3);
        assert_eq!(r.vanishing_bounds(&sp(&[3, 2, 1]), &sp(&[2, 1]), &sp(&[2, 1])).unwrap(), (2, 4));
        assert_eq!(r.vanishing_bounds(&sp(&[1]), &sp(&[]), &sp(&[])).unwrap(), (-3, -2));
        let (lo, hi) = r.vanishing_bounds(&sp(&[3]), &sp(&[2, 1]), &sp(&[2, 1])).unwrap();
        for d in 0..4u32 {
            let q = GWQuery::new(3, sp(&[3]), sp(&[2, 1]), sp(&[2, 1]), d);
            if q.is_admissible() && !((lo..=hi).contains(&(2 * d as i64))) {
                assert!(r.gw_invariant(&q).unwrap().is_zero());
            }
        }
        assert!(r.vanishing_bounds(&sp(&[]), &sp(&[]), &sp(&[])).is_err());
        assert!(r.vanishing_bounds(&sp(&[1]), &sp(&[3]), &sp(&[])).is_err());
    }
}
