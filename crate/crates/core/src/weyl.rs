//! Weyl groups of `a∞`, `b∞`, `c∞`, `d∞` and `b⁰∞` as finitary signed
//! permutations, minimal coset representatives and the dot action.
//!
//! Elements act on shifted coordinates `u = μ + ρ − shift(level)`, in which
//! every simple reflection is a (signed) transposition.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraTag {
    A,
    B,
    C,
    D,
    B0,
}

impl AlgebraTag {
    pub const ALL: [AlgebraTag; 5] = [AlgebraTag::A, AlgebraTag::B, AlgebraTag::C, AlgebraTag::D, AlgebraTag::B0];

    /// Indices run over `Z` for `a∞` and over `N` otherwise.
    pub fn integral_indices(self) -> bool {
        self == AlgebraTag::A
    }

    /// `ρ_c` coordinate at index `j`.
    pub fn rho(self, j: i64) -> BigRational {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let j = BigRational::from_integer(j.into());
        match self {
            AlgebraTag::A | AlgebraTag::C => -j,
            AlgebraTag::B | AlgebraTag::B0 => half - j,
            AlgebraTag::D => BigRational::one() - j,
        }
    }

    /// Shift `t` with `u_j = ν_j − t·level` (for `a∞`, `u_j = ν_j + level` when `j ≤ 0`).
    fn shift(self, j: i64, level: &BigRational) -> BigRational {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        match self {
            AlgebraTag::A => {
                if j <= 0 {
                    -level.clone()
                } else {
                    BigRational::zero()
                }
            }
            AlgebraTag::B | AlgebraTag::D => level * half,
            AlgebraTag::C | AlgebraTag::B0 => level.clone(),
        }
    }

    /// Indices of the simple reflections acting nontrivially on `lo..=hi`.
    fn generators_near(self, lo: i64, hi: i64) -> Vec<i64> {
        if self.integral_indices() {
            (lo - 1..=hi).collect()
        } else {
            (0..=hi.max(1)).collect()
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraTag::A => "a",
            AlgebraTag::B => "b",
            AlgebraTag::C => "c",
            AlgebraTag::D => "d",
            AlgebraTag::B0 => "b0",
        })
    }
}

impl FromStr for AlgebraTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim_end_matches('∞').to_ascii_lowercase().as_str() {
            "a" => Ok(AlgebraTag::A),
            "b" => Ok(AlgebraTag::B),
            "c" => Ok(AlgebraTag::C),
            "d" => Ok(AlgebraTag::D),
            "b0" | "b⁰" => Ok(AlgebraTag::B0),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}"))),
        }
    }
}

/// A finitary (signed) permutation: `e_i ↦ sign · e_{|map(i)|}`; fixed points are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    tag: AlgebraTag,
    map: BTreeMap<i64, i64>,
}

impl GroupElement {
    pub fn identity(tag: AlgebraTag) -> Self {
        GroupElement { tag, map: BTreeMap::new() }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    /// Simple reflection `s_i`.
    pub fn simple(tag: AlgebraTag, i: i64) -> Result<Self> {
        let mut map = BTreeMap::new();
        if i == 0 {
            match tag {
                AlgebraTag::A => {
                    map.insert(0, 1);
                    map.insert(1, 0);
                }
                AlgebraTag::B | AlgebraTag::C | AlgebraTag::B0 => {
                    map.insert(1, -1);
                }
                AlgebraTag::D => {
                    map.insert(1, -2);
                    map.insert(2, -1);
                }
            }
        } else {
            if i < 0 && !tag.integral_indices() {
                return Err(Error::OutOfRange(format!("no simple reflection s_{i} for {tag}")));
            }
            map.insert(i, i + 1);
            map.insert(i + 1, i);
        }
        Ok(GroupElement { tag, map })
    }

    /// Signed image of the index `i`.
    pub fn image(&self, i: i64) -> i64 {
        self.map.get(&i).copied().unwrap_or(i)
    }

    /// Target index and sign of `e_i`.
    pub fn signed_image(&self, i: i64) -> (i64, bool) {
        let t = self.image(i);
        if self.tag.integral_indices() || t > 0 {
            (t, false)
        } else {
            (-t, true)
        }
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.map.keys().copied()
    }

    fn from_map(tag: AlgebraTag, mut map: BTreeMap<i64, i64>) -> Self {
        map.retain(|k, v| k != v);
        GroupElement { tag, map }
    }

    /// `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(format!("{} and {}", self.tag, other.tag)));
        }
        let keys: BTreeSet<i64> = self.support().chain(other.support()).collect();
        let mut map = BTreeMap::new();
        for i in keys {
            let (j, neg) = other.signed_image(i);
            let k = self.image(j);
            map.insert(i, if neg { -k } else { k });
        }
        Ok(GroupElement::from_map(self.tag, map))
    }

    pub fn inverse(&self) -> GroupElement {
        let map = self
            .map
            .keys()
            .map(|&i| {
                let (j, neg) = self.signed_image(i);
                (j, if neg { -i } else { i })
            })
            .collect();
        GroupElement::from_map(self.tag, map)
    }

    /// Coxeter length from inversion statistics over the window containing the support.
    pub fn length(&self) -> u32 {
        let (lo, hi) = self.bounds();
        let lo = if self.tag.integral_indices() { lo } else { 1 };
        let w: Vec<i64> = (lo..=hi).map(|i| self.image(i)).collect();
        let mut inv = 0u32;
        let mut nsp = 0u32;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    inv += 1;
                }
                if w[a] + w[b] < 0 {
                    nsp += 1;
                }
            }
        }
        let neg = w.iter().filter(|&&x| x < 0).count() as u32;
        match self.tag {
            AlgebraTag::A => inv,
            AlgebraTag::D => inv + nsp,
            _ => inv + nsp + neg,
        }
    }

    /// Nonzero-index simple reflections `s_j` with `ℓ(s_j w) < ℓ(w)`.
    pub fn left_descents_in_levi(&self) -> Vec<i64> {
        let l = self.length();
        let (lo, hi) = self.bounds();
        self.tag
            .generators_near(lo, hi + 1)
            .into_iter()
            .filter(|&j| j != 0)
            .filter(|&j| {
                let s = GroupElement::simple(self.tag, j).expect("generator");
                s.compose(self).expect("same tag").length() < l
            })
            .collect()
    }

    fn bounds(&self) -> (i64, i64) {
        let lo = self.map.keys().next().copied().unwrap_or(1).min(1);
        let hi = self.map.keys().next_back().copied().unwrap_or(1).max(1);
        (lo, hi)
    }

    /// A reduced word `[i_1, …, i_k]` with `w = s_{i_1} ⋯ s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<i64> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while w.length() > 0 {
            let (lo, hi) = w.bounds();
            let l = w.length();
            let i = self
                .tag
                .generators_near(lo, hi + 1)
                .into_iter()
                .find(|&i| w.compose(&GroupElement::simple(self.tag, i).expect("generator")).expect("tag").length() < l)
                .expect("nontrivial element has a right descent");
            word.push(i);
            w = w.compose(&GroupElement::simple(self.tag, i).expect("generator")).expect("tag");
        }
        word.reverse();
        word
    }

    /// One-line notation; for `a∞` a bar separates positions `0` and `1`.
    pub fn one_line(&self) -> String {
        if self.tag.integral_indices() {
            let lo = self.map.keys().next().copied().unwrap_or(1).min(1);
            let hi = self.map.keys().next_back().copied().unwrap_or(0).max(0);
            let left: Vec<String> = (lo..=0).map(|i| self.image(i).to_string()).collect();
            let right: Vec<String> = (1..=hi).map(|i| self.image(i).to_string()).collect();
            format!("[{}|{}]", left.join(","), right.join(","))
        } else {
            let hi = self.map.keys().next_back().copied().unwrap_or(0);
            let v: Vec<String> = (1..=hi).map(|i| self.image(i).to_string()).collect();
            format!("[{}]", v.join(","))
        }
    }

    fn sort_key(&self) -> (usize, Vec<i64>) {
        if self.tag.integral_indices() {
            let (lo, hi) = self.bounds();
            (0, (lo..=hi).map(|i| self.image(i)).collect())
        } else {
            let hi = self.map.keys().next_back().copied().unwrap_or(0);
            (0, (1..=hi).map(|i| self.image(i)).collect())
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

/// `W⁰ₖ` for `k ≤ kmax`, sorted by `(k, one-line notation)`.
pub fn enumerate_coset_reps(tag: AlgebraTag, kmax: u32) -> Vec<(u32, GroupElement)> {
    let mut out = vec![(0, GroupElement::identity(tag))];
    let mut layer = vec![GroupElement::identity(tag)];
    for k in 1..=kmax {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for w in &layer {
            let (lo, hi) = w.bounds();
            for i in tag.generators_near(lo, hi + 1) {
                let v = w.compose(&GroupElement::simple(tag, i).expect("generator")).expect("tag");
                if v.length() != k || !v.left_descents_in_levi().is_empty() {
                    continue;
                }
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        next.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.one_line().cmp(&b.one_line())));
        out.extend(next.iter().map(|w| (k, w.clone())));
        layer = next;
    }
    out
}

/// Word length of every element reached by breadth-first search from the
/// identity over the generators `s_i` with indices in `gens`, up to depth `kmax`.
pub fn bfs_depths(tag: AlgebraTag, gens: &[i64], kmax: u32) -> Vec<(GroupElement, u32)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(GroupElement::identity(tag));
    queue.push_back((GroupElement::identity(tag), 0));
    while let Some((w, k)) = queue.pop_front() {
        out.push((w.clone(), k));
        if k == kmax {
            continue;
        }
        for &i in gens {
            let v = w.compose(&GroupElement::simple(tag, i).expect("generator")).expect("tag");
            if seen.insert(v.clone()) {
                queue.push_back((v, k + 1));
            }
        }
    }
    out
}

/// A weight `level·Λ₀ + Σ coords_j ε_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightCoords {
    pub tag: AlgebraTag,
    pub level: BigRational,
    coords: BTreeMap<i64, BigRational>,
}

impl WeightCoords {
    pub fn new(tag: AlgebraTag, level: BigRational, coords: BTreeMap<i64, BigRational>) -> Result<Self> {
        if !tag.integral_indices() && coords.keys().any(|&j| j < 1) {
            return Err(Error::OutOfRange(format!("{tag} weights are indexed by positive integers")));
        }
        let mut coords = coords;
        coords.retain(|_, v| !v.is_zero());
        Ok(WeightCoords { tag, level, coords })
    }

    /// Integer level and coordinates `μ_1, μ_2, …`.
    pub fn from_ints(tag: AlgebraTag, level: BigRational, start: i64, values: &[i64]) -> Result<Self> {
        let coords =
            values.iter().enumerate().map(|(i, &v)| (start + i as i64, BigRational::from_integer(v.into()))).collect();
        WeightCoords::new(tag, level, coords)
    }

    pub fn coord(&self, j: i64) -> BigRational {
        self.coords.get(&j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coords(&self) -> &BTreeMap<i64, BigRational> {
        &self.coords
    }

    fn set(&mut self, j: i64, v: BigRational) {
        if v.is_zero() {
            self.coords.remove(&j);
        } else {
            self.coords.insert(j, v);
        }
    }

    /// Smallest and largest index carrying a nonzero coordinate.
    pub fn span(&self) -> (i64, i64) {
        let lo = self.coords.keys().next().copied().unwrap_or(1).min(1);
        let hi = self.coords.keys().next_back().copied().unwrap_or(0).max(0);
        (lo, hi)
    }

    /// `⟨μ, α_i^∨⟩`.
    pub fn coroot_pairing(&self, i: i64) -> BigRational {
        if i != 0 {
            return self.coord(i) - self.coord(i + 1);
        }
        let c = &self.level;
        match self.tag {
            AlgebraTag::A => self.coord(0) - self.coord(1) + c,
            AlgebraTag::B => c - self.coord(1) * BigInt::from(2),
            AlgebraTag::C => c - self.coord(1),
            AlgebraTag::D => c - self.coord(1) - self.coord(2),
            AlgebraTag::B0 => self.coord(1) + c,
        }
    }

    /// `⟨μ, α_j^∨⟩ ∈ Z₊` for all `j ∈ S`.
    pub fn is_levi_dominant(&self) -> bool {
        let (lo, hi) = self.span();
        let range: Vec<i64> = if self.tag.integral_indices() { (lo - 1..=hi).collect() } else { (1..=hi).collect() };
        range.into_iter().filter(|&j| j != 0).all(|j| {
            let p = self.coroot_pairing(j);
            p.is_integer() && !p.is_negative()
        })
    }

    /// Dominance including node `0`.
    pub fn is_dominant(&self) -> bool {
        let p = self.coroot_pairing(0);
        self.is_levi_dominant() && p.is_integer() && !p.is_negative()
    }

    /// Dot action of a simple reflection, by the explicit formula in `ν = μ + ρ`.
    pub fn reflect(&self, i: i64) -> Result<WeightCoords> {
        let tag = self.tag;
        let nu = |j: i64| self.coord(j) + tag.rho(j);
        let mut out = self.clone();
        let mut put = |j: i64, v: BigRational| out.set(j, v - tag.rho(j));
        let c = self.level.clone();
        if i != 0 {
            if i < 0 && !tag.integral_indices() {
                return Err(Error::OutOfRange(format!("no simple reflection s_{i} for {tag}")));
            }
            let (a, b) = (nu(i), nu(i + 1));
            put(i, b);
            put(i + 1, a);
        } else {
            match tag {
                AlgebraTag::A => {
                    let (a, b) = (nu(0), nu(1));
                    put(0, b - &c);
                    put(1, a + &c);
                }
                AlgebraTag::C | AlgebraTag::B0 => {
                    let two_c = &c * BigInt::from(2);
                    put(1, two_c - nu(1));
                }
                AlgebraTag::B => put(1, c - nu(1)),
                AlgebraTag::D => {
                    let (a, b) = (nu(1), nu(2));
                    put(1, &c - b);
                    put(2, c - a);
                }
            }
        }
        Ok(out)
    }

    /// `w∘μ`, as the composition of simple-reflection dot actions along a reduced word.
    pub fn dot(&self, w: &GroupElement) -> Result<WeightCoords> {
        if w.tag() != self.tag {
            return Err(Error::TagMismatch(format!("{} acting on {}", w.tag(), self.tag)));
        }
        let mut out = self.clone();
        for &i in w.reduced_word().iter().rev() {
            out = out.reflect(i)?;
        }
        Ok(out)
    }

    /// `w∘μ` in one step through the shifted coordinates.
    pub fn dot_direct(&self, w: &GroupElement) -> Result<WeightCoords> {
        if w.tag() != self.tag {
            return Err(Error::TagMismatch(format!("{} acting on {}", w.tag(), self.tag)));
        }
        let tag = self.tag;
        let u = |j: i64| self.coord(j) + tag.rho(j) - tag.shift(j, &self.level);
        let mut out = self.clone();
        for i in w.support() {
            let (j, neg) = w.signed_image(i);
            let v = if neg { -u(i) } else { u(i) };
            out.set(j, v + tag.shift(j, &self.level) - tag.rho(j));
        }
        Ok(out)
    }

    /// Serialized form `{ "tag", "level", "coords" }`.
    pub fn to_json(&self) -> Value {
        let coords: serde_json::Map<String, Value> =
            self.coords.iter().map(|(j, v)| (j.to_string(), json!(v.to_string()))).collect();
        json!({ "tag": self.tag.to_string(), "level": self.level.to_string(), "coords": coords })
    }
}

/// The partition data `λ_w` (or `(λ⁺_w, λ⁻_w)` for `a∞`) read off from `w∘Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaW {
    Single(Partition),
    Pair(Partition, Partition),
}

impl LambdaW {
    pub fn size(&self) -> u32 {
        match self {
            LambdaW::Single(p) => p.size(),
            LambdaW::Pair(a, b) => a.size() + b.size(),
        }
    }

    pub fn single(&self) -> Option<&Partition> {
        match self {
            LambdaW::Single(p) => Some(p),
            LambdaW::Pair(..) => None,
        }
    }

    pub fn pair(&self) -> Option<(&Partition, &Partition)> {
        match self {
            LambdaW::Single(_) => None,
            LambdaW::Pair(a, b) => Some((a, b)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            LambdaW::Single(p) => json!(p.to_string()),
            LambdaW::Pair(a, b) => json!({ "plus": a.to_string(), "minus": b.to_string() }),
        }
    }
}

impl fmt::Display for LambdaW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaW::Single(p) => write!(f, "{p}"),
            LambdaW::Pair(a, b) => write!(f, "({a};{b})"),
        }
    }
}

fn as_part(v: &BigRational) -> Result<u32> {
    if !v.is_integer() || v.is_negative() {
        return Err(Error::NotDominant(format!("coordinate {v} is not a non-negative integer")));
    }
    u32::try_from(v.to_integer()).map_err(|_| Error::OutOfRange(format!("coordinate {v} too large")))
}

/// Extracts `λ_w` from an S-dominant weight.
pub fn extract_lambda_w(mu: &WeightCoords) -> Result<LambdaW> {
    if !mu.is_levi_dominant() {
        return Err(Error::NotDominant(format!("{}", mu.to_json())));
    }
    let (lo, hi) = mu.span();
    let plus: Vec<u32> = (1..=hi).map(|j| as_part(&mu.coord(j))).collect::<Result<_>>()?;
    let plus = Partition::new(plus)?;
    if !mu.tag.integral_indices() {
        return Ok(LambdaW::Single(plus));
    }
    let minus: Vec<u32> = (0..=-lo.min(0)).map(|j| as_part(&-mu.coord(-j))).collect::<Result<_>>()?;
    Ok(LambdaW::Pair(plus, Partition::new(minus)?))
}

/// `(w, w∘Λ, λ_w)` for `w ∈ W⁰ₖ`, checking `|λ_w| ≥ |λ_{id}| + k`.
pub fn homology_weights(lambda: &WeightCoords, k: u32) -> Result<Vec<(GroupElement, WeightCoords, LambdaW)>> {
    let base = extract_lambda_w(lambda)?.size();
    let mut out = Vec::new();
    for (len, w) in enumerate_coset_reps(lambda.tag, k) {
        if len != k {
            continue;
        }
        let mu = lambda.dot(&w)?;
        let lw = extract_lambda_w(&mu)?;
        if lw.size() < base + k {
            return Err(Error::Enumeration(format!("|λ_w| = {} < {} for w = {w}", lw.size(), base + k)));
        }
        out.push((w, mu, lw));
    }
    Ok(out)
}
