//! Symmetric polynomials in two coordinate systems: monomial symmetric
//! coordinates ([`SymPoly`]) and elementary coordinates ([`ElemPoly`], a
//! polynomial in e₁, ..., e_n). Ring arithmetic on symmetric functions is done
//! in elementary coordinates, which are far smaller than x-expansions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::poly::{elementary_poly, GenPoly};

/// Σ c_μ m_μ(X) in `nvars` variables, each μ having at most `nvars` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, BigInt>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, BigInt)>>(nvars: usize, terms: I) -> Self {
        let mut map: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (mu, c) in terms {
            assert!(mu.len() <= nvars, "{mu} has more than {nvars} parts");
            *map.entry(mu).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        SymPoly { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, mu: &Partition) -> BigInt {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    /// Reads off monomial symmetric coordinates, rejecting anything that is
    /// not a symmetric integer polynomial.
    pub fn from_genpoly(f: &GenPoly) -> Result<Self> {
        let coeffs = f.integer_coefficients().ok_or_else(|| {
            Error::NotSymmetric(format!("non-integral coefficients (scale {})", f.scale()))
        })?;
        let mut terms = BTreeMap::new();
        for (e, c) in &coeffs {
            let mu = Partition::from_unsorted(e.clone());
            match terms.get(&mu) {
                None => {
                    terms.insert(mu, c.clone());
                }
                Some(prev) if prev == c => {}
                Some(prev) => {
                    return Err(Error::NotSymmetric(format!(
                        "x^{e:?} has coefficient {c} but another permutation of it has {prev}"
                    )))
                }
            }
        }
        let sym = SymPoly {
            nvars: f.nvars(),
            terms,
        };
        // every permutation must be present
        let expected: usize = sym.terms.keys().map(|mu| permutation_count(mu, sym.nvars)).sum();
        if expected != coeffs.len() {
            return Err(Error::NotSymmetric(format!(
                "{} monomials present, a symmetric polynomial with this support has {expected}",
                coeffs.len()
            )));
        }
        Ok(sym)
    }

    pub fn to_genpoly(&self) -> GenPoly {
        let mut out = Vec::new();
        for (mu, c) in &self.terms {
            let mut exps: Vec<u32> = mu.parts().to_vec();
            exps.resize(self.nvars, 0);
            exps.sort_unstable();
            loop {
                out.push((exps.clone(), c.clone()));
                if !next_permutation(&mut exps) {
                    break;
                }
            }
        }
        GenPoly::from_terms(self.nvars, out)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(mu, c)| format!("{c}*m[{}]", mu.to_csv()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn permutation_count(mu: &Partition, nvars: usize) -> usize {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    *counts.entry(0).or_default() += nvars - mu.len();
    let mut total: u128 = (1..=nvars as u128).product();
    for &k in counts.values() {
        total /= (1..=k as u128).product::<u128>();
    }
    total as usize
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// e_i(X) in n variables, in monomial symmetric coordinates.
pub fn elementary(i: usize, n: usize) -> SymPoly {
    if i > n {
        return SymPoly::zero(n);
    }
    SymPoly::from_terms(n, [(Partition::from_unsorted(vec![1; i]), BigInt::one())])
}

/// A symmetric polynomial written as a polynomial in e₁, ..., e_n. The
/// exponent vector (a₁, ..., a_n) stands for e₁^a₁ ⋯ e_n^a_n, equivalently
/// e_κ for the partition κ with a_i parts equal to i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemPoly {
    inner: GenPoly,
}

impl ElemPoly {
    pub fn zero(n: usize) -> Self {
        ElemPoly {
            inner: GenPoly::zero(n),
        }
    }

    pub fn one(n: usize) -> Self {
        ElemPoly {
            inner: GenPoly::one(n),
        }
    }

    /// e_i; zero for i > n, one for i = 0.
    pub fn elementary(i: usize, n: usize) -> Self {
        match i {
            0 => Self::one(n),
            i if i > n => Self::zero(n),
            i => ElemPoly {
                inner: GenPoly::var(n, i - 1),
            },
        }
    }

    /// e_κ for a partition κ with parts at most n.
    pub fn e_monomial(kappa: &Partition, n: usize, coeff: BigInt) -> Self {
        assert!(kappa.first() as usize <= n);
        ElemPoly {
            inner: GenPoly::from_terms(n, [(kappa.multiplicities(n), coeff)]),
        }
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        ElemPoly {
            inner: self.inner.scalar_mul(c),
        }
    }

    pub fn add(&self, other: &ElemPoly) -> Self {
        ElemPoly {
            inner: &self.inner + &other.inner,
        }
    }

    pub fn sub(&self, other: &ElemPoly) -> Self {
        ElemPoly {
            inner: &self.inner - &other.inner,
        }
    }

    pub fn mul(&self, other: &ElemPoly) -> Self {
        ElemPoly {
            inner: &self.inner * &other.inner,
        }
    }

    /// Coordinates (κ ↦ coefficient of e_κ). All symmetric polynomials we
    /// build are integral.
    pub fn coordinates(&self) -> BTreeMap<Partition, BigInt> {
        let coeffs = self
            .inner
            .integer_coefficients()
            .expect("elementary coordinates are integral");
        coeffs
            .into_iter()
            .map(|(a, c)| (multiplicities_to_partition(&a), c))
            .collect()
    }

    /// Substitutes e_i = e_i(x₁, ..., x_n).
    pub fn to_genpoly(&self) -> GenPoly {
        let n = self.nvars();
        let mut out = GenPoly::zero(n);
        let mut powers: HashMap<(usize, u32), GenPoly> = HashMap::new();
        let coeffs = self
            .inner
            .integer_coefficients()
            .expect("elementary coordinates are integral");
        for (a, c) in coeffs {
            let mut term = GenPoly::constant(n, c);
            for (i, &k) in a.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, k))
                    .or_insert_with(|| elementary_poly(i + 1, n).pow(k));
                term = &term * pw;
            }
            out = &out + &term;
        }
        out
    }

    pub fn to_sympoly(&self) -> SymPoly {
        SymPoly::from_genpoly(&self.to_genpoly()).expect("polynomial in e_i is symmetric")
    }

    /// Rewrites a symmetric polynomial in elementary coordinates by repeatedly
    /// cancelling the leading monomial x^α against e₁^{α₁-α₂} ⋯ e_n^{α_n}.
    pub fn from_sympoly(f: &SymPoly) -> Self {
        let n = f.nvars();
        let mut rest = f.to_genpoly();
        let mut out = ElemPoly::zero(n);
        loop {
            let scale = rest.scale() as usize;
            let lead = rest
                .integer_terms()
                .next_back()
                .map(|(lead, c)| (lead.to_vec(), c << scale));
            let Some((alpha, c)) = lead else { break };
            let a: Vec<u32> = (0..n)
                .map(|i| alpha[i] - alpha.get(i + 1).copied().unwrap_or(0))
                .collect();
            let term = ElemPoly {
                inner: GenPoly::from_terms(n, [(a, c)]),
            };
            rest = &rest - &term.to_genpoly();
            out = out.add(&term);
        }
        out
    }
}

fn multiplicities_to_partition(a: &[u32]) -> Partition {
    let mut parts = Vec::new();
    for (i, &k) in a.iter().enumerate().rev() {
        parts.extend(std::iter::repeat_n(i as u32 + 1, k as usize));
    }
    Partition::from_unsorted(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary(0, 3).to_genpoly(), GenPoly::one(3));
        assert_eq!(
            elementary(1, 2).to_genpoly(),
            &GenPoly::var(2, 0) + &GenPoly::var(2, 1)
        );
        assert!(elementary(4, 3).is_zero());
    }

    #[test]
    fn genpoly_round_trip_on_symmetric_input() {
        let f = &elementary_poly(2, 3) * &elementary_poly(1, 3);
        let s = SymPoly::from_genpoly(&f).unwrap();
        assert_eq!(s.coefficient(&p(&[2, 1])), BigInt::from(1));
        assert_eq!(s.coefficient(&p(&[1, 1, 1])), BigInt::from(3));
        assert_eq!(s.to_genpoly(), f);
    }

    #[test]
    fn non_symmetric_rejected() {
        let f = GenPoly::var(2, 0);
        assert!(matches!(SymPoly::from_genpoly(&f), Err(Error::NotSymmetric(_))));
        let g = GenPoly::from_terms(2, [(vec![2, 0], BigInt::from(1)), (vec![0, 2], BigInt::from(2))]);
        assert!(matches!(SymPoly::from_genpoly(&g), Err(Error::NotSymmetric(_))));
        assert!(SymPoly::from_genpoly(&GenPoly::one(2).mul_pow2(-1)).is_err());
    }

    #[test]
    fn elementary_coordinates_round_trip() {
        let n = 4;
        let f = ElemPoly::elementary(2, n)
            .mul(&ElemPoly::elementary(1, n))
            .sub(&ElemPoly::elementary(3, n).scalar_mul(&BigInt::from(2)))
            .add(&ElemPoly::one(n));
        let s = f.to_sympoly();
        assert_eq!(ElemPoly::from_sympoly(&s), f);
    }

    #[test]
    fn coordinates_use_partitions() {
        let f = ElemPoly::elementary(2, 3).mul(&ElemPoly::elementary(2, 3));
        let c = f.coordinates();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&p(&[2, 2])], BigInt::from(1));
        assert_eq!(ElemPoly::e_monomial(&p(&[2, 2]), 3, BigInt::from(1)), f);
    }
}
