//! Schur, skew Schur and hook Schur polynomials, Schur-basis decomposition
//! and the involution ω.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::{GeneralizedPartition, Partition};
use crate::series::{Alphabet, AlphabetKind, Exps, Space, TruncatedSeries};

const CANON: &str = "v";

fn canonical_space(n: usize) -> Arc<Space> {
    static SPACES: OnceLock<Mutex<HashMap<usize, Arc<Space>>>> = OnceLock::new();
    let map = SPACES.get_or_init(Default::default);
    map.lock()
        .expect("space cache")
        .entry(n)
        .or_insert_with(|| Space::new(vec![Alphabet::module(CANON, n)]).expect("space"))
        .clone()
}

/// `h_k` in `n` variables.
pub fn complete_h(k: u32, n: usize) -> TruncatedSeries {
    let space = canonical_space(n);
    let mut out = TruncatedSeries::zero(&space, k);
    if n == 0 {
        if k == 0 {
            out = TruncatedSeries::one(&space, 0);
        }
        return out;
    }
    let mut e: Exps = space.zero_exps();
    compositions(k as i16, 0, &mut e, &mut |e| out.add_term(e.clone(), BigInt::one()));
    out
}

fn compositions(rest: i16, i: usize, e: &mut Exps, f: &mut impl FnMut(&Exps)) {
    if i + 1 == e.len() {
        e[i] = rest;
        f(e);
        e[i] = 0;
        return;
    }
    for a in 0..=rest {
        e[i] = a;
        compositions(rest - a, i + 1, e, f);
    }
    e[i] = 0;
}

/// `s_{λ/μ}` in `n` canonical variables via Jacobi–Trudi.
fn canonical_skew(lambda: &Partition, mu: &Partition, n: usize) -> Arc<TruncatedSeries> {
    type Key = (Partition, Partition, usize);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<TruncatedSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lambda.clone(), mu.clone(), n);
    if let Some(s) = cache.lock().expect("schur cache").get(&key) {
        return s.clone();
    }
    let s = Arc::new(jacobi_trudi(lambda, mu, n));
    cache.lock().expect("schur cache").insert(key, s.clone());
    s
}

fn jacobi_trudi(lambda: &Partition, mu: &Partition, n: usize) -> TruncatedSeries {
    let space = canonical_space(n);
    let deg = lambda.size() - mu.size();
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let too_long = (1..=lc.len()).any(|j| (lc.part(j) - mc.part(j)) as usize > n);
    if too_long {
        return TruncatedSeries::zero(&space, deg);
    }
    let k = lambda.len();
    if k == 0 {
        return TruncatedSeries::one(&space, deg);
    }
    let h: Vec<TruncatedSeries> = (0..=deg).map(|j| complete_h(j, n).embed(&space, deg, &[]).expect("embed")).collect();
    let entry = |i: usize, j: usize| -> Option<&TruncatedSeries> {
        let a = lambda.part(i + 1) as i64 - mu.part(j + 1) as i64 - i as i64 + j as i64;
        if a < 0 || a > deg as i64 {
            None
        } else {
            Some(&h[a as usize])
        }
    };
    // Laplace expansion row by row over subsets of used columns.
    let mut layer: HashMap<u32, TruncatedSeries> = HashMap::new();
    layer.insert(0, TruncatedSeries::one(&space, deg));
    for i in 0..k {
        let mut next: HashMap<u32, TruncatedSeries> = HashMap::new();
        let mut keys: Vec<u32> = layer.keys().copied().collect();
        keys.sort_unstable();
        for mask in keys {
            let acc = &layer[&mask];
            for j in 0..k {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let Some(a) = entry(i, j) else { continue };
                let above = (mask >> (j + 1)).count_ones();
                let mut term = acc.mul(a).expect("same space");
                if above % 2 == 1 {
                    term = term.neg();
                }
                let slot = next.entry(mask | (1 << j)).or_insert_with(|| TruncatedSeries::zero(&space, deg));
                slot.add_assign(&term).expect("same space");
            }
        }
        layer = next;
    }
    layer.remove(&((1u32 << k) - 1)).unwrap_or_else(|| TruncatedSeries::zero(&space, deg))
}

fn place(canon: &TruncatedSeries, space: &Arc<Space>, alph: &str, bound: u32) -> Result<TruncatedSeries> {
    let a = space.alphabet(alph)?;
    if a.kind == AlphabetKind::Sign {
        return Err(Error::Incompatible("Schur polynomials need a variable alphabet".into()));
    }
    canon.embed(space, bound, &[(CANON, alph)])
}

/// `s_λ` in the named alphabet, truncated to `bound`.
pub fn schur_poly(lambda: &Partition, space: &Arc<Space>, alph: &str, bound: u32) -> Result<TruncatedSeries> {
    let n = space.alphabet(alph)?.size;
    if space.alphabet(alph)?.kind == AlphabetKind::Module && lambda.size() > bound {
        return Ok(TruncatedSeries::zero(space, bound));
    }
    place(&canonical_skew(lambda, &Partition::empty(), n), space, alph, bound)
}

/// `s_{λ/μ}` in the named alphabet.
pub fn skew_schur_poly(
    lambda: &Partition,
    mu: &Partition,
    space: &Arc<Space>,
    alph: &str,
    bound: u32,
) -> Result<TruncatedSeries> {
    if !mu.contained_in(lambda) {
        return Err(Error::InvalidPartition(format!("{mu} is not contained in {lambda}")));
    }
    let n = space.alphabet(alph)?.size;
    if space.alphabet(alph)?.kind == AlphabetKind::Module && lambda.size() - mu.size() > bound {
        return Ok(TruncatedSeries::zero(space, bound));
    }
    place(&canonical_skew(lambda, mu, n), space, alph, bound)
}

/// Laurent Schur polynomial `(z_1⋯z_N)^{λ_N} s_{λ − λ_N}` in a group alphabet of size `N = depth`.
pub fn laurent_schur(lambda: &GeneralizedPartition, space: &Arc<Space>, alph: &str) -> Result<TruncatedSeries> {
    let a = space.alphabet(alph)?;
    if a.kind != AlphabetKind::Group || a.size != lambda.depth() {
        return Err(Error::Incompatible(format!("need a group alphabet of size {}", lambda.depth())));
    }
    let parts = lambda.parts();
    let (first, last) = (parts[0], *parts.last().expect("depth ≥ 1"));
    let total: i64 = parts.iter().sum();
    let n = parts.len() as i64;
    // s_λ(z) = s_{λ*}(z⁻¹) with λ* = (−λ_N, …, −λ_1); expand the smaller one.
    let dual = n * first - total < total - n * last;
    let (shifted, low) = if dual {
        (Partition::new(parts.iter().rev().map(|&x| (first - x) as u32).collect())?, -first)
    } else {
        (Partition::new(parts.iter().map(|&x| (x - last) as u32).collect())?, last)
    };
    let mut base = schur_poly(&shifted, space, alph, 0)?;
    let range = space.range(alph)?;
    if dual {
        let mut inv = TruncatedSeries::zero(space, 0);
        for (e, c) in base.iter() {
            let mut f = e.clone();
            for v in range.clone() {
                f[v] = -f[v];
            }
            inv.add_term(f, c.clone());
        }
        base = inv;
    }
    let mut m = space.zero_exps();
    let unit = if a.half { 2 } else { 1 };
    let sign = if dual { -1 } else { 1 };
    for v in range {
        m[v] = (sign * low * unit) as i16;
    }
    Ok(base.shift(&m))
}

/// `hs_λ(y; ξ) = Σ_{μ⊆λ} s_μ(y) s_{λ'/μ'}(ξ)`.
pub fn hook_schur(lambda: &Partition, space: &Arc<Space>, y: &str, xi: &str, bound: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(space, bound);
    if lambda.size() > bound {
        return Ok(out);
    }
    let lc = lambda.conjugate();
    let m = space.alphabet(y)?.size;
    for size in 0..=lambda.size() {
        for mu in Partition::all_of_size(size) {
            if !mu.contained_in(lambda) || mu.len() > m {
                continue;
            }
            let a = schur_poly(&mu, space, y, bound)?;
            if a.is_zero() {
                continue;
            }
            let b = skew_schur_poly(&lc, &mu.conjugate(), space, xi, bound)?;
            out.add_assign(&a.mul(&b)?)?;
        }
    }
    Ok(out)
}

/// A finitely supported integer combination of Schur functions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurVector {
    pub alphabet: String,
    terms: BTreeMap<Partition, BigInt>,
}

impl SchurVector {
    pub fn new(alphabet: &str) -> Self {
        SchurVector { alphabet: alphabet.into(), terms: BTreeMap::new() }
    }

    pub fn single(alphabet: &str, lambda: Partition) -> Self {
        let mut v = Self::new(alphabet);
        v.add(lambda, BigInt::one());
        v
    }

    pub fn add(&mut self, lambda: Partition, c: BigInt) {
        let slot = self.terms.entry(lambda.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn get(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `s_λ ↦ s_{λ'}`.
    pub fn omega(&self) -> SchurVector {
        SchurVector {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(p, c)| (p.conjugate(), c.clone())).collect(),
        }
    }

    /// Expands in the named alphabet.
    pub fn expand(&self, space: &Arc<Space>, alph: &str, bound: u32) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(space, bound);
        for (p, c) in &self.terms {
            out.add_scaled(&schur_poly(p, space, alph, bound)?, c)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: serde_json::Map<String, Value> =
            self.terms.iter().map(|(p, c)| (p.to_string(), json!(c.to_string()))).collect();
        json!({ "alphabet": self.alphabet, "terms": terms })
    }
}

/// Multi-alphabet Schur decomposition: `p = Σ c ∏_b s_{λ_b}(alphabet_b)`.
pub fn schur_decompose_multi(p: &TruncatedSeries, alphs: &[&str]) -> Result<BTreeMap<Vec<Partition>, BigInt>> {
    let space = p.space().clone();
    let bound = p.bound();
    let ranges: Vec<std::ops::Range<usize>> = alphs.iter().map(|a| space.range(a)).collect::<Result<_>>()?;
    let inside: Vec<bool> = (0..space.nvars()).map(|v| ranges.iter().any(|r| r.contains(&v))).collect();
    for (e, _) in p.iter() {
        if e.iter().enumerate().any(|(v, &x)| x != 0 && !inside[v]) {
            return Err(Error::NotSymmetric("series involves variables outside the decomposed alphabets".into()));
        }
    }
    for (a, r) in alphs.iter().zip(&ranges) {
        let top = p.iter().map(|(e, _)| e[r.clone()].iter().map(|&x| x as i64).sum::<i64>()).max().unwrap_or(0);
        if (r.len() as i64) < top {
            return Err(Error::NotSymmetric(format!("alphabet {a} has {} variables but degree {top} occurs", r.len())));
        }
    }
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let (lead, c) = rest
            .iter()
            .max_by(|a, b| {
                let ka: Vec<i16> = ranges.iter().flat_map(|r| a.0[r.clone()].iter().copied()).collect();
                let kb: Vec<i16> = ranges.iter().flat_map(|r| b.0[r.clone()].iter().copied()).collect();
                ka.cmp(&kb)
            })
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero");
        let mut key = Vec::with_capacity(alphs.len());
        let mut term = TruncatedSeries::one(&space, bound);
        for (a, r) in alphs.iter().zip(&ranges) {
            let block = &lead[r.clone()];
            if block.iter().any(|&x| x < 0) || block.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotSymmetric(format!(
                    "leading exponent {} is not a partition",
                    space.format_monomial(&lead)
                )));
            }
            let lam = Partition::new(block.iter().map(|&x| x as u32).collect())?;
            term = term.mul(&schur_poly(&lam, &space, a, bound)?)?;
            key.push(lam);
        }
        rest.add_scaled(&term, &-&c)?;
        if rest.coeff(&lead) != BigInt::zero() {
            return Err(Error::NotSymmetric("leading term did not cancel".into()));
        }
        *out.entry(key).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Schur decomposition in a single alphabet.
pub fn schur_decompose(p: &TruncatedSeries, alph: &str) -> Result<SchurVector> {
    let mut v = SchurVector::new(alph);
    for (mut key, c) in schur_decompose_multi(p, &[alph])? {
        v.add(key.pop().expect("one block"), c);
    }
    Ok(v)
}

/// Image of `s_μ` under the specialization sending the power sums `p_k`
/// to `p_k(fermionic) + (−1)^{k−1} p_k(bosonic)`, assembled stage by stage:
/// split the alphabet, decompose the tail skew factors in the Schur basis,
/// apply ω, and re-expand in the bosonic alphabet.
pub fn super_specialize(
    mu: &Partition,
    space: &Arc<Space>,
    fermionic: &str,
    bosonic: &str,
    bound: u32,
) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(space, bound);
    for size in 0..=mu.size() {
        for nu in Partition::all_of_size(size) {
            if !nu.contained_in(mu) {
                continue;
            }
            let head = schur_poly(&nu, space, fermionic, bound)?;
            if head.is_zero() {
                continue;
            }
            let skew_deg = mu.size() - nu.size();
            let scratch = Space::new(vec![Alphabet::module("t", skew_deg as usize)])?;
            let tail = skew_schur_poly(mu, &nu, &scratch, "t", skew_deg)?;
            let tail = schur_decompose(&tail, "t")?.omega().expand(space, bosonic, bound)?;
            out.add_assign(&head.mul(&tail)?)?;
        }
    }
    Ok(out)
}
