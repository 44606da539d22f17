//! Exact sparse multivariate polynomials over ℤ[1/2], and the divided
//! difference operators ∂′_i and ∂_□.
//!
//! A [`GenPoly`] stores an integer polynomial together with a power of two:
//! its value is `2^scale * Σ c_α x^α`. The stored integer part always has
//! odd content (or is zero, with scale 0), which makes the representation
//! canonical.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic with x₁ > x₂ > ⋯).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPoly {
    nvars: usize,
    scale: i32,
    terms: BTreeMap<Monomial, BigInt>,
}

impl GenPoly {
    pub fn zero(nvars: usize) -> Self {
        GenPoly {
            nvars,
            scale: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c.into())])
    }

    /// The variable x_{i+1} (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, BigInt::one())])
    }

    /// Integer polynomial from (exponents, coefficient) pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has the wrong length");
            *map.entry(Monomial(e)).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(nvars, 0, map)
    }

    fn from_map(nvars: usize, scale: i32, mut terms: BTreeMap<Monomial, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let mut p = GenPoly {
            nvars,
            scale,
            terms,
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        if self.terms.is_empty() {
            self.scale = 0;
            return;
        }
        let shift = self
            .terms
            .values()
            .map(|c| c.trailing_zeros().unwrap_or(0))
            .min()
            .unwrap_or(0);
        if shift > 0 {
            for c in self.terms.values_mut() {
                *c >>= shift as usize;
            }
            self.scale += shift as i32;
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Exponent `s` in `2^s * (integer part)`.
    pub fn scale(&self) -> i32 {
        self.scale
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

    /// Terms of the integer part, in increasing graded-lex order.
    pub fn integer_terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Whether every coefficient lies in ℤ.
    pub fn is_integral(&self) -> bool {
        self.scale >= 0
    }

    /// Coefficients as integers, or `None` if some coefficient is not integral.
    pub fn integer_coefficients(&self) -> Option<BTreeMap<Vec<u32>, BigInt>> {
        if self.scale < 0 {
            return None;
        }
        Some(
            self.terms
                .iter()
                .map(|(m, c)| (m.0.clone(), c << self.scale as usize))
                .collect(),
        )
    }

    /// Coefficient of x^exps as an exact (numerator, power-of-two exponent).
    pub fn coefficient(&self, exps: &[u32]) -> (BigInt, i32) {
        match self.terms.get(&Monomial(exps.to_vec())) {
            Some(c) => (c.clone(), self.scale),
            None => (BigInt::zero(), 0),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Multiplies by 2^k.
    pub fn mul_pow2(&self, k: i32) -> GenPoly {
        let mut p = self.clone();
        if !p.is_zero() {
            p.scale += k;
        }
        p
    }

    pub fn scalar_mul(&self, c: &BigInt) -> GenPoly {
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Self::from_map(self.nvars, self.scale, terms)
    }

    fn check_vars(&self, other: &GenPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in different variable sets"
        );
    }

    fn combine(&self, other: &GenPoly, negate: bool) -> GenPoly {
        self.check_vars(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let scale = self.scale.min(other.scale);
        let ls = (self.scale - scale) as usize;
        let rs = (other.scale - scale) as usize;
        let mut terms: BTreeMap<Monomial, BigInt> =
            self.terms.iter().map(|(m, c)| (m.clone(), c << ls)).collect();
        for (m, c) in &other.terms {
            let v = c << rs;
            let entry = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            if negate {
                *entry -= v;
            } else {
                *entry += v;
            }
        }
        Self::from_map(self.nvars, scale, terms)
    }

    fn product(&self, other: &GenPoly) -> GenPoly {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return GenPoly::zero(self.nvars);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Self::from_map(self.nvars, self.scale + other.scale, acc.into_iter().collect())
    }

    pub fn pow(&self, k: u32) -> GenPoly {
        let mut out = GenPoly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Applies a signed permutation of exponents to every term.
    fn map_terms(&self, f: impl Fn(&[u32]) -> (Vec<u32>, bool)) -> GenPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, negate) = f(&m.0);
            let v = if negate { -c } else { c.clone() };
            *terms.entry(Monomial(e)).or_insert_with(BigInt::zero) += v;
        }
        Self::from_map(self.nvars, self.scale, terms)
    }

    /// s_i: swaps x_i and x_{i+1} (1-based `i`).
    pub fn swap_adjacent(&self, i: usize) -> GenPoly {
        assert!(i >= 1 && i < self.nvars, "s_{i} needs {} variables", i + 1);
        self.map_terms(|e| {
            let mut e = e.to_vec();
            e.swap(i - 1, i);
            (e, false)
        })
    }

    /// s_□: (x₁, x₂) ↦ (-x₂, -x₁).
    pub fn box_reflection(&self) -> GenPoly {
        assert!(self.nvars >= 2, "s_box needs two variables");
        self.map_terms(|e| {
            let odd = (e[0] + e[1]) % 2 == 1;
            let mut e = e.to_vec();
            e.swap(0, 1);
            (e, odd)
        })
    }

    /// x₁ ↦ -x₁.
    pub fn negate_first(&self) -> GenPoly {
        if self.nvars == 0 {
            return self.clone();
        }
        self.map_terms(|e| (e.to_vec(), e[0] % 2 == 1))
    }

    /// Exact quotient by `divisor`. A nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &GenPoly) -> Result<GenPoly> {
        self.check_vars(divisor);
        let (lead_m, lead_c) = divisor
            .terms
            .last_key_value()
            .ok_or_else(|| Error::InvariantViolation("division by zero polynomial".into()))?;
        let rest: Vec<(&Monomial, &BigInt)> = divisor
            .terms
            .iter()
            .filter(|(m, _)| *m != lead_m)
            .collect();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lead_m.divides(&m) {
                return Err(Error::InvariantViolation(format!(
                    "inexact division: remainder term {:?} not divisible by {:?}",
                    m.0, lead_m.0
                )));
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "inexact division: coefficient {c} not divisible by {lead_c}"
                )));
            }
            let qm = m.div(lead_m);
            for (dm, dc) in &rest {
                let key = qm.mul(dm);
                let entry = rem.entry(key.clone()).or_insert_with(BigInt::zero);
                *entry -= &qc * *dc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        Ok(Self::from_map(
            self.nvars,
            self.scale - divisor.scale,
            quot,
        ))
    }

    /// ∂′_i(f) = (f - s_i f) / (x_{i+1} - x_i), with 1-based `i`.
    pub fn divided_difference(&self, i: usize) -> Result<GenPoly> {
        if i == 0 || i >= self.nvars {
            return Err(Error::InvalidIndex(format!(
                "divided difference {i} needs at least {} variables, have {}",
                i + 1,
                self.nvars
            )));
        }
        let numerator = self - &self.swap_adjacent(i);
        let divisor = &GenPoly::var(self.nvars, i) - &GenPoly::var(self.nvars, i - 1);
        numerator.exact_div(&divisor)
    }

    /// ∂_□(f) = (f - s_□ f) / (x₁ + x₂).
    pub fn box_difference(&self) -> Result<GenPoly> {
        if self.nvars < 2 {
            return Err(Error::InvalidIndex(
                "box divided difference needs two variables".into(),
            ));
        }
        let numerator = self - &self.box_reflection();
        let divisor = &GenPoly::var(self.nvars, 0) + &GenPoly::var(self.nvars, 1);
        numerator.exact_div(&divisor)
    }

    /// Splits off the first `k` variables: returns the map
    /// α ↦ g_α with f = Σ x^α g_α(x_{k+1}, ..., x_n), each g_α re-indexed
    /// to `nvars - k` variables.
    pub fn split_leading_vars(&self, k: usize) -> BTreeMap<Vec<u32>, GenPoly> {
        assert!(k <= self.nvars);
        let mut parts: BTreeMap<Vec<u32>, BTreeMap<Monomial, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (head, tail) = m.0.split_at(k);
            parts
                .entry(head.to_vec())
                .or_default()
                .insert(Monomial(tail.to_vec()), c.clone());
        }
        parts
            .into_iter()
            .map(|(h, t)| (h, Self::from_map(self.nvars - k, self.scale, t)))
            .collect()
    }

    /// Places this polynomial on variables `offset+1 ..= offset+nvars` of a
    /// ring with `total` variables.
    pub fn embed(&self, offset: usize, total: usize) -> GenPoly {
        assert!(offset + self.nvars <= total);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; total];
                e[offset..offset + self.nvars].copy_from_slice(&m.0);
                (Monomial(e), c.clone())
            })
            .collect();
        GenPoly {
            nvars: total,
            scale: self.scale,
            terms,
        }
    }

    /// Raw (exponents, coefficient) pairs in decreasing order; the polynomial
    /// is 2^scale times their sum.
    pub fn term_list(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| (m.0.clone(), c.clone()))
            .collect()
    }
}

impl Add for &GenPoly {
    type Output = GenPoly;
    fn add(self, rhs: &GenPoly) -> GenPoly {
        self.combine(rhs, false)
    }
}

impl Sub for &GenPoly {
    type Output = GenPoly;
    fn sub(self, rhs: &GenPoly) -> GenPoly {
        self.combine(rhs, true)
    }
}

impl Mul for &GenPoly {
    type Output = GenPoly;
    fn mul(self, rhs: &GenPoly) -> GenPoly {
        self.product(rhs)
    }
}

impl Neg for &GenPoly {
    type Output = GenPoly;
    fn neg(self) -> GenPoly {
        GenPoly {
            nvars: self.nvars,
            scale: self.scale,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for GenPoly {
    type Output = GenPoly;
    fn add(self, rhs: GenPoly) -> GenPoly {
        &self + &rhs
    }
}

impl Sub for GenPoly {
    type Output = GenPoly;
    fn sub(self, rhs: GenPoly) -> GenPoly {
        &self - &rhs
    }
}

impl Mul for GenPoly {
    type Output = GenPoly;
    fn mul(self, rhs: GenPoly) -> GenPoly {
        &self * &rhs
    }
}

impl Neg for GenPoly {
    type Output = GenPoly;
    fn neg(self) -> GenPoly {
        -&self
    }
}

/// Canonical rendering: terms in decreasing graded-lex order, with an
/// explicit `2^s * (...)` prefix when the scale is nonzero.
impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut body = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    body.push('-');
                }
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                body.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    body.push_str(&abs.to_string());
                    body.push('*');
                }
                body.push_str(&vars.join("*"));
            }
        }
        if self.scale == 0 {
            write!(f, "{body}")
        } else {
            write!(f, "2^{} * ({body})", self.scale)
        }
    }
}

/// e_i(X) in `nvars` variables as an x-polynomial.
pub fn elementary_poly(i: usize, nvars: usize) -> GenPoly {
    if i > nvars {
        return GenPoly::zero(nvars);
    }
    let mut terms = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(start: usize, left: usize, exps: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, BigInt)>) {
        if left == 0 {
            out.push((exps.clone(), BigInt::one()));
            return;
        }
        for j in start..exps.len() {
            if exps.len() - j < left {
                break;
            }
            exps[j] = 1;
            rec(j + 1, left - 1, exps, out);
            exps[j] = 0;
        }
    }
    rec(0, i, &mut exps, &mut terms);
    GenPoly::from_terms(nvars, terms)
}

/// m_{r,s}(x₁, x₂): x₁ʳx₂ˢ + x₁ˢx₂ʳ when r ≠ s, x₁ʳx₂ʳ when r = s.
pub fn monomial_pair(r: u32, s: u32) -> Result<GenPoly> {
    if r < s {
        return Err(Error::ArgumentOrder { r, s });
    }
    let mut terms = vec![(vec![r, s], BigInt::one())];
    if r != s {
        terms.push((vec![s, r], BigInt::one()));
    }
    Ok(GenPoly::from_terms(2, terms))
}
