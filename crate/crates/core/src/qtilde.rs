//! Q̃- and P̃-polynomials, expansion in the Q̃ basis, and the structure
//! constants e(λ, μ; ν) and f(λ, μ; ν).
//!
//! Every symmetric polynomial here is held in elementary coordinates
//! ([`ElemPoly`]). Singles are Q̃_0 = 1 and Q̃_i = e_i, pairs follow
//!
//! ```text
//! Q̃_{i,j} = Σ_{k=0}^{j} c_k Q̃_{i+k} Q̃_{j-k},   c_0 = 1, c_k = 2(-1)^k,
//! ```
//!
//! for every ordered pair (so i < j is allowed and Q̃_{i,0} = Q̃_i), and
//! longer compositions use the Pfaffian recursion along the last position of
//! an even-length zero padding.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache::DiskStore;
use crate::error::{Error, Result};
use crate::linsolve::FractionFreeSolver;
use crate::partitions::{b_set, horizontal_strips, partitions_with_max_part, Composition, Partition};
use crate::poly::GenPoly;
use crate::sym::{ElemPoly, SymPoly};

/// Environment variable naming the directory of the on-disk e-coefficient
/// cache. Unset disables persistence.
pub const CACHE_DIR_ENV: &str = "OGQ_CACHE_DIR";

/// Σ c_ν Q̃_ν(X) over ν ∈ ℰ_n.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QTildeVector {
    n: usize,
    coeffs: BTreeMap<Partition, BigInt>,
}

impl QTildeVector {
    pub fn new(n: usize, coeffs: BTreeMap<Partition, BigInt>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        QTildeVector { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, nu: &Partition) -> BigInt {
        self.coeffs.get(nu).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigInt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.coeffs.iter()
    }
}

/// Basis data for one homogeneous degree: the partitions of the degree with
/// parts ≤ n index both the Q̃ basis and the e-monomials.
struct DegreeBasis {
    index: HashMap<Partition, usize>,
    basis: Vec<Partition>,
    solver: FractionFreeSolver,
}

type Slot<T> = Arc<OnceLock<Arc<T>>>;

/// Memoizing calculator for Q̃-polynomials in a fixed number of variables.
/// All caches are internally synchronized.
pub struct QTildeEngine {
    n: usize,
    polys: RwLock<HashMap<Composition, Arc<ElemPoly>>>,
    xpolys: RwLock<HashMap<Composition, Arc<GenPoly>>>,
    bases: Mutex<HashMap<u32, Slot<DegreeBasis>>>,
    products: RwLock<HashMap<(Partition, Partition), Arc<QTildeVector>>>,
    store: Option<Arc<DiskStore>>,
}

impl QTildeEngine {
    pub fn new(n: usize) -> Self {
        Self::with_store(n, None)
    }

    pub fn with_store(n: usize, store: Option<Arc<DiskStore>>) -> Self {
        QTildeEngine {
            n,
            polys: RwLock::default(),
            xpolys: RwLock::default(),
            bases: Mutex::default(),
            products: RwLock::default(),
            store,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn single(&self, i: i64) -> ElemPoly {
        if i < 0 {
            ElemPoly::zero(self.n)
        } else {
            ElemPoly::elementary(i as usize, self.n)
        }
    }

    /// Q̃_{i,j} for any ordered pair of integers.
    fn pair(&self, i: i64, j: i64) -> ElemPoly {
        let mut out = ElemPoly::zero(self.n);
        if i < 0 || j < 0 {
            return out;
        }
        for k in 0..=j {
            let c = if k == 0 {
                BigInt::one()
            } else if k % 2 == 0 {
                BigInt::from(2)
            } else {
                BigInt::from(-2)
            };
            let term = self.single(i + k).mul(&self.single(j - k));
            out = out.add(&term.scalar_mul(&c));
        }
        out
    }

    /// Q̃_ν(X) in elementary coordinates. Negative entries give zero.
    pub fn qtilde_elem(&self, nu: &Composition) -> Arc<ElemPoly> {
        if let Some(p) = self.polys.read().unwrap().get(nu) {
            return p.clone();
        }
        let value = Arc::new(self.compute(nu));
        self.polys
            .write()
            .unwrap()
            .entry(nu.clone())
            .or_insert(value)
            .clone()
    }

    fn compute(&self, nu: &Composition) -> ElemPoly {
        if nu.has_negative() {
            return ElemPoly::zero(self.n);
        }
        let parts = nu.parts();
        match parts.len() {
            0 => ElemPoly::one(self.n),
            1 => self.single(parts[0]),
            2 => self.pair(parts[0], parts[1]),
            len => self.pfaffian_expansion(parts, len + len % 2),
        }
    }

    /// Expands along the last position of the padding to length `g`
    /// (even, at least the length of `parts`):
    /// Q̃_ν = Σ_{j<g} (-1)^{j-1} Q̃_{ν_j,ν_g} Q̃_{ν∖{ν_j,ν_g}}.
    fn pfaffian_expansion(&self, parts: &[i64], g: usize) -> ElemPoly {
        assert!(g.is_multiple_of(2) && g >= parts.len());
        let mut padded = parts.to_vec();
        padded.resize(g, 0);
        let last = padded[g - 1];
        // identical (ν_j, rest) pairs are merged before multiplying
        let mut grouped: HashMap<(i64, Composition), i64> = HashMap::new();
        for j in 0..g - 1 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let rest: Vec<i64> = padded[..g - 1]
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != j)
                .map(|(_, &v)| v)
                .collect();
            *grouped
                .entry((padded[j], Composition::new(rest)))
                .or_default() += sign;
        }
        let mut out = ElemPoly::zero(self.n);
        let mut keys: Vec<_> = grouped.into_iter().filter(|(_, c)| *c != 0).collect();
        keys.sort();
        for ((first, rest), c) in keys {
            let pair = self.pair(first, last);
            if pair.is_zero() {
                continue;
            }
            let sub = self.qtilde_elem(&rest);
            out = out.add(&pair.mul(&sub).scalar_mul(&BigInt::from(c)));
        }
        out
    }

    /// Q̃_ν evaluated through the Pfaffian recursion with an explicit padding
    /// length `g`. The value must not depend on `g`.
    pub fn qtilde_with_padding(&self, nu: &Composition, g: usize) -> ElemPoly {
        if nu.has_negative() {
            return ElemPoly::zero(self.n);
        }
        self.pfaffian_expansion(nu.parts(), g)
    }

    /// Q̃_ν(x₁, ..., x_n) as an x-polynomial.
    pub fn qtilde_x(&self, nu: &Composition) -> Arc<GenPoly> {
        if let Some(p) = self.xpolys.read().unwrap().get(nu) {
            return p.clone();
        }
        let value = Arc::new(self.qtilde_elem(nu).to_genpoly());
        self.xpolys
            .write()
            .unwrap()
            .entry(nu.clone())
            .or_insert(value)
            .clone()
    }

    fn degree_basis(&self, degree: u32) -> Result<Arc<DegreeBasis>> {
        let slot = self
            .bases
            .lock()
            .unwrap()
            .entry(degree)
            .or_default()
            .clone();
        if let Some(b) = slot.get() {
            return Ok(b.clone());
        }
        let built = Arc::new(self.build_basis(degree)?);
        Ok(slot.get_or_init(|| built).clone())
    }

    fn build_basis(&self, degree: u32) -> Result<DegreeBasis> {
        // lexicographically decreasing: Q̃_κ involves e_ν only for ν ≥ κ, so
        // the matrix comes out upper triangular in this order
        let basis = partitions_with_max_part(degree, self.n as u32);
        let index: HashMap<Partition, usize> =
            basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let size = basis.len();
        let mut matrix = vec![vec![BigInt::zero(); size]; size];
        for (col, kappa) in basis.iter().enumerate() {
            let q = self.qtilde_elem(&Composition::from(kappa));
            for (nu, c) in q.coordinates() {
                let row = *index.get(&nu).ok_or_else(|| {
                    Error::InvariantViolation(format!("Q̃_{kappa} is not homogeneous"))
                })?;
                matrix[row][col] = c;
            }
        }
        let solver = FractionFreeSolver::new(matrix)?;
        Ok(DegreeBasis {
            index,
            basis,
            solver,
        })
    }

    /// Coefficients of a symmetric polynomial (elementary coordinates) in the
    /// basis {Q̃_κ : κ ∈ ℰ_n}.
    pub fn expand_elem(&self, f: &ElemPoly) -> Result<QTildeVector> {
        if f.nvars() != self.n {
            return Err(Error::InvalidIndex(format!(
                "polynomial has {} variables, engine has {}",
                f.nvars(),
                self.n
            )));
        }
        let mut by_degree: BTreeMap<u32, Vec<(Partition, BigInt)>> = BTreeMap::new();
        for (kappa, c) in f.coordinates() {
            by_degree.entry(kappa.weight()).or_default().push((kappa, c));
        }
        let mut coeffs = BTreeMap::new();
        for (degree, terms) in by_degree {
            let basis = self.degree_basis(degree)?;
            let mut rhs = vec![BigInt::zero(); basis.solver.size()];
            for (kappa, c) in terms {
                rhs[basis.index[&kappa]] = c;
            }
            let x = basis.solver.solve(&rhs)?;
            for (i, c) in x.into_iter().enumerate() {
                if !c.is_zero() {
                    coeffs.insert(basis.basis[i].clone(), c);
                }
            }
        }
        Ok(QTildeVector::new(self.n, coeffs))
    }

    /// Coefficients of a symmetric polynomial given in monomial symmetric
    /// coordinates.
    pub fn expand(&self, f: &SymPoly) -> Result<QTildeVector> {
        if f.nvars() != self.n {
            return Err(Error::InvalidIndex(format!(
                "polynomial has {} variables, engine has {}",
                f.nvars(),
                self.n
            )));
        }
        self.expand_elem(&ElemPoly::from_sympoly(f))
    }

    fn check_index(&self, p: &Partition) -> Result<()> {
        if p.first() as usize > self.n {
            return Err(Error::InvalidIndex(format!("{p} is not in E_{}", self.n)));
        }
        Ok(())
    }

    /// e(λ, μ; ·): the expansion of Q̃_λ Q̃_μ.
    pub fn e_coeffs(&self, lambda: &Partition, mu: &Partition) -> Result<Arc<QTildeVector>> {
        self.check_index(lambda)?;
        self.check_index(mu)?;
        let key = if lambda <= mu {
            (lambda.clone(), mu.clone())
        } else {
            (mu.clone(), lambda.clone())
        };
        if let Some(v) = self.products.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let stored = self
            .store
            .as_ref()
            .and_then(|s| s.get(self.n, &key.0, &key.1));
        let value = match stored {
            Some(coeffs) => Arc::new(QTildeVector::new(self.n, coeffs)),
            None => {
                let prod = self
                    .qtilde_elem(&Composition::from(&key.0))
                    .mul(&self.qtilde_elem(&Composition::from(&key.1)));
                let v = self.expand_elem(&prod)?;
                if let Some(s) = &self.store {
                    s.put(self.n, &key.0, &key.1, v.coeffs())?;
                }
                Arc::new(v)
            }
        };
        Ok(self
            .products
            .write()
            .unwrap()
            .entry(key)
            .or_insert(value)
            .clone())
    }

    /// f(λ, μ; ν) computed in this engine's variables.
    pub fn f_coeff(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigInt> {
        let e = self.e_coeffs(lambda, mu)?.get(nu);
        e_to_f(&e, lambda.len(), mu.len(), nu.len())
    }

    /// All f(λ, μ; ·) at once.
    pub fn f_coeffs(&self, lambda: &Partition, mu: &Partition) -> Result<BTreeMap<Partition, BigInt>> {
        let e = self.e_coeffs(lambda, mu)?;
        e.iter()
            .map(|(nu, c)| Ok((nu.clone(), e_to_f(c, lambda.len(), mu.len(), nu.len())?)))
            .collect()
    }
}

/// f = 2^{ℓ(ν) - ℓ(λ) - ℓ(μ)} e, which must be an integer.
pub fn e_to_f(e: &BigInt, len_lambda: usize, len_mu: usize, len_nu: usize) -> Result<BigInt> {
    let shift = len_nu as i64 - len_lambda as i64 - len_mu as i64;
    if shift >= 0 {
        return Ok(e << shift as usize);
    }
    let d = BigInt::one() << (-shift) as usize;
    if (e % &d).is_zero() {
        Ok(e / d)
    } else {
        Err(Error::InvariantViolation(format!(
            "e = {e} is not divisible by 2^{}",
            -shift
        )))
    }
}

fn registry() -> &'static Mutex<HashMap<usize, Arc<QTildeEngine>>> {
    static REGISTRY: OnceLock<Mutex<HashMap<usize, Arc<QTildeEngine>>>> = OnceLock::new();
    REGISTRY.get_or_init(Mutex::default)
}

fn shared_store() -> Option<Arc<DiskStore>> {
    static STORE: OnceLock<Option<Arc<DiskStore>>> = OnceLock::new();
    STORE
        .get_or_init(|| {
            let dir = std::env::var_os(CACHE_DIR_ENV)?;
            match DiskStore::open(dir) {
                Ok(s) => Some(Arc::new(s)),
                Err(e) => {
                    eprintln!("warning: e-coefficient cache disabled: {e}");
                    None
                }
            }
        })
        .clone()
}

/// The process-wide engine for `n` variables. Engines created here persist
/// e-coefficient tables under `$OGQ_CACHE_DIR` when that variable is set.
pub fn engine(n: usize) -> Arc<QTildeEngine> {
    registry()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::new(QTildeEngine::with_store(n, shared_store())))
        .clone()
}

/// Q̃_ν(X) in n variables, in monomial symmetric coordinates.
pub fn qtilde(nu: &Composition, n: usize) -> SymPoly {
    SymPoly::from_genpoly(&engine(n).qtilde_x(nu)).expect("Q̃ is symmetric")
}

/// P̃_ν(X) = 2^{-ℓ} Q̃_ν(X), ℓ the number of nonzero entries of ν.
pub fn ptilde(nu: &Composition, n: usize) -> GenPoly {
    engine(n).qtilde_x(nu).mul_pow2(-(nu.nonzero_len() as i32))
}

/// Expansion of a symmetric polynomial in the Q̃ basis.
pub fn expand(f: &SymPoly) -> Result<QTildeVector> {
    engine(f.nvars()).expand(f)
}

/// e(λ, μ; ·) in n variables.
pub fn e_coeffs(lambda: &Partition, mu: &Partition, n: usize) -> Result<Arc<QTildeVector>> {
    engine(n).e_coeffs(lambda, mu)
}

/// f(λ, μ; ν), computed in max(λ₁, μ₁, ν₁) variables (at least one).
pub fn f_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigInt> {
    let n = lambda.first().max(mu.first()).max(nu.first()).max(1) as usize;
    engine(n).f_coeff(lambda, mu, nu)
}

/// The Pieri expansion of P̃_λ P̃_k for strict λ: μ ↦ 2^{N′(λ, μ)} over
/// horizontal strips μ/λ of size k.
pub fn pieri_expand(lambda: &Partition, k: u32) -> Result<BTreeMap<Partition, BigInt>> {
    if !lambda.is_strict() {
        return Err(Error::InvalidIndex(format!("{lambda} is not strict")));
    }
    Ok(horizontal_strips(lambda, k, lambda.first() + k)
        .into_iter()
        .map(|(mu, e)| (mu, BigInt::one() << e as usize))
        .collect())
}

/// Q̃_λ(X) = Σ_k x₁^k Σ_{μ ∈ B(λ,k)} Q̃_μ(X′): returns k ↦ the inner sum,
/// expanded in the Q̃ basis of the n-1 variables X′ = (x₂, ..., x_n).
pub fn first_variable_expansion(lambda: &Partition, n: usize) -> Result<BTreeMap<usize, QTildeVector>> {
    if n == 0 {
        return Err(Error::InvalidIndex("need at least one variable".into()));
    }
    let inner = engine(n - 1);
    let mut out = BTreeMap::new();
    for k in 0..=lambda.len() {
        let mut sum = ElemPoly::zero(n - 1);
        for mu in b_set(lambda, k) {
            sum = sum.add(&inner.qtilde_elem(&mu));
        }
        out.insert(k, inner.expand_elem(&sum)?);
    }
    Ok(out)
}

/// Residual Q̃_λ(X) - Σ_k x₁^k Σ_{μ ∈ B(λ,k)} Q̃_μ(X′), computed on
/// x-polynomials.
pub fn first_variable_residual(lambda: &Partition, n: usize) -> GenPoly {
    let full = engine(n).qtilde_x(&Composition::from(lambda));
    let inner = engine(n - 1);
    let mut rhs = GenPoly::zero(n);
    for k in 0..=lambda.len() {
        let mut x1k = vec![0u32; n];
        x1k[0] = k as u32;
        let mono = GenPoly::from_terms(n, [(x1k, BigInt::one())]);
        for mu in b_set(lambda, k) {
            rhs = &rhs + &(&mono * &inner.qtilde_x(&mu).embed(1, n));
        }
    }
    &*full - &rhs
}

/// The table (λ, μ) ↦ e(λ, μ; ·) for λ, μ ∈ ℰ_n with |λ| + |μ| bounded.
pub struct StructureTable {
    n: usize,
    entries: BTreeMap<(Partition, Partition), Arc<QTildeVector>>,
}

impl StructureTable {
    pub fn compute(n: usize, max_total_weight: u32) -> Result<Self> {
        let eng = engine(n);
        let mut entries = BTreeMap::new();
        for w in 0..=max_total_weight {
            for a in 0..=w {
                for lambda in partitions_with_max_part(a, n as u32) {
                    for mu in partitions_with_max_part(w - a, n as u32) {
                        if lambda <= mu {
                            let v = eng.e_coeffs(&lambda, &mu)?;
                            entries.insert((lambda.clone(), mu), v);
                        }
                    }
                }
            }
        }
        Ok(StructureTable { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<&QTildeVector> {
        let key = if lambda <= mu {
            (lambda.clone(), mu.clone())
        } else {
            (mu.clone(), lambda.clone())
        };
        self.entries.get(&key).map(|v| v.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every ν in the support of (λ, μ) has |ν| = |λ| + |μ|.
    pub fn is_graded(&self) -> bool {
        self.entries.iter().all(|((l, m), v)| {
            v.iter().all(|(nu, _)| nu.weight() == l.weight() + m.weight())
        })
    }
}
