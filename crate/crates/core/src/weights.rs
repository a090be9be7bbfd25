//! Highest weights of the classical, super and negative-level modules, the
//! bijections `ϑ`, and Casimir eigenvalues.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::{GeneralizedPartition, Partition};
use crate::weyl::{AlgebraTag, WeightCoords};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn q_half() -> Q {
    Q::new(BigInt::one(), BigInt::from(2))
}

fn ints(p: &Partition) -> Vec<i64> {
    p.parts().iter().map(|&x| x as i64).collect()
}

/// `⟨a⟩ = max(a, 0)`.
fn pos(a: i64) -> i64 {
    a.max(0)
}

/// `Λᵃ(λ) = dΛ₀ + Σ (λ⁺)'_j ε_j − Σ (λ⁻)'_{j+1} ε_{−j}`.
pub fn lambda_classical_a(lambda: &GeneralizedPartition) -> Result<WeightCoords> {
    let d = lambda.depth() as i64;
    let plus = lambda.plus().conjugate();
    let minus = lambda.minus_sorted().conjugate();
    let mut coords = BTreeMap::new();
    for (j, &v) in plus.parts().iter().enumerate() {
        coords.insert(j as i64 + 1, q(v as i64));
    }
    for (j, &v) in minus.parts().iter().enumerate() {
        coords.insert(-(j as i64), q(-(v as i64)));
    }
    WeightCoords::new(AlgebraTag::A, q(d), coords)
}

/// `Λˣ(λ)` for `x ∈ {b, c, d}`: level `d` (`d/2` for `c`) and coordinates `λ'`.
pub fn lambda_classical(tag: AlgebraTag, lambda: &Partition, d: u32) -> Result<WeightCoords> {
    let ok = match tag {
        AlgebraTag::C | AlgebraTag::B => d.is_multiple_of(2) && lambda.len() <= d as usize / 2,
        AlgebraTag::D => lambda.in_orthogonal(d),
        _ => return Err(Error::TagMismatch(format!("{tag} has no partition-labelled classical weight"))),
    };
    if !ok {
        return Err(Error::OutOfRange(format!("{lambda} is not a label for {tag} with d = {d}")));
    }
    let level = if tag == AlgebraTag::C { Q::new(d.into(), 2.into()) } else { q(d as i64) };
    WeightCoords::from_ints(tag, level, 1, &ints(&lambda.conjugate()))
}

/// `Λˣ₋(λ)` for `x ∈ {d, c, b⁰}`: level `−d` (`−d/2` for `c`, `b⁰`) and coordinates `λ`.
pub fn lambda_negative(tag: AlgebraTag, lambda: &Partition, d: u32) -> Result<WeightCoords> {
    let (ok, level) = match tag {
        AlgebraTag::D => (d.is_multiple_of(2) && lambda.len() <= d as usize / 2, q(-(d as i64))),
        AlgebraTag::C => (lambda.in_orthogonal(d), -Q::new(d.into(), 2.into())),
        AlgebraTag::B0 => (d.is_multiple_of(2) && lambda.len() <= d as usize / 2, -Q::new(d.into(), 2.into())),
        _ => return Err(Error::TagMismatch(format!("{tag} has no negative-level weight"))),
    };
    if !ok {
        return Err(Error::OutOfRange(format!("{lambda} is not a label for negative {tag} with d = {d}")));
    }
    WeightCoords::from_ints(tag, level, 1, &ints(lambda))
}

/// The Lie superalgebras of the super dual pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuperTag {
    /// `ĝl(p+m|q+n)`, paired with `GL(d)`.
    Gl,
    /// `ŝpo(2m|2n+1)`, paired with `Pin(d)`.
    SpoOdd,
    /// `ôsp(2m|2n)`, paired with `Sp(d)`.
    Osp,
    /// `ŝpo(2m|2n)`, paired with `O(d)`.
    Spo,
}

impl SuperTag {
    pub fn classical(self) -> AlgebraTag {
        match self {
            SuperTag::Gl => AlgebraTag::A,
            SuperTag::SpoOdd => AlgebraTag::B,
            SuperTag::Osp => AlgebraTag::C,
            SuperTag::Spo => AlgebraTag::D,
        }
    }

    pub fn from_classical(tag: AlgebraTag) -> Result<SuperTag> {
        match tag {
            AlgebraTag::A => Ok(SuperTag::Gl),
            AlgebraTag::B => Ok(SuperTag::SpoOdd),
            AlgebraTag::C => Ok(SuperTag::Osp),
            AlgebraTag::D => Ok(SuperTag::Spo),
            AlgebraTag::B0 => Err(Error::Inadmissible("b0 has no super partner".into())),
        }
    }
}

impl fmt::Display for SuperTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuperTag::Gl => "gl",
            SuperTag::SpoOdd => "spo-odd",
            SuperTag::Osp => "osp",
            SuperTag::Spo => "spo",
        })
    }
}

impl FromStr for SuperTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(SuperTag::Gl),
            "spo-odd" => Ok(SuperTag::SpoOdd),
            "osp" => Ok(SuperTag::Osp),
            "spo" => Ok(SuperTag::Spo),
            _ => SuperTag::from_classical(s.parse()?),
        }
    }
}

/// `κ_x = ⟨Λˣ₀, K⟩`.
pub fn kappa(tag: AlgebraTag) -> Q {
    match tag {
        AlgebraTag::B | AlgebraTag::D => q_half(),
        _ => Q::one(),
    }
}

/// Sizes `(p, q, m, n)` of a super dual pair; `p = q = 0` outside type `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Sizes {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    pub n: usize,
}

impl Sizes {
    pub fn new(p: usize, q: usize, m: usize, n: usize) -> Self {
        Sizes { p, q, m, n }
    }
}

/// `c Λ̃₀ + Σ eps_i ε_i + Σ delta_j δ_j`; negative indices occur only for `ĝl`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperWeight {
    pub tag: SuperTag,
    pub sizes: Sizes,
    pub level: Q,
    eps: BTreeMap<i64, Q>,
    delta: BTreeMap<i64, Q>,
}

impl SuperWeight {
    pub fn new(tag: SuperTag, sizes: Sizes, level: Q, eps: BTreeMap<i64, Q>, delta: BTreeMap<i64, Q>) -> Result<Self> {
        let (lo_e, lo_d) = if tag == SuperTag::Gl { (-(sizes.p as i64), -(sizes.q as i64)) } else { (0, 0) };
        let ok_e = eps.keys().all(|&i| i != 0 && i >= lo_e && i <= sizes.m as i64);
        let ok_d = delta.keys().all(|&j| j != 0 && j >= lo_d && j <= sizes.n as i64);
        if !ok_e || !ok_d {
            return Err(Error::OutOfRange("super weight index outside the declared sizes".into()));
        }
        let mut w = SuperWeight { tag, sizes, level, eps, delta };
        w.eps.retain(|_, v| !v.is_zero());
        w.delta.retain(|_, v| !v.is_zero());
        Ok(w)
    }

    pub fn eps(&self, i: i64) -> Q {
        self.eps.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn delta(&self, j: i64) -> Q {
        self.delta.get(&j).cloned().unwrap_or_else(Q::zero)
    }

    fn eps_range(&self) -> Vec<i64> {
        let lo = if self.tag == SuperTag::Gl { -(self.sizes.p as i64) } else { 1 };
        (lo..=self.sizes.m as i64).filter(|&i| i != 0).collect()
    }

    fn delta_range(&self) -> Vec<i64> {
        let lo = if self.tag == SuperTag::Gl { -(self.sizes.q as i64) } else { 1 };
        (lo..=self.sizes.n as i64).filter(|&j| j != 0).collect()
    }

    /// Coordinates with respect to `Λ₀` instead of `Λ̃₀` (the non-extended weight).
    pub fn plain(&self) -> (Q, BTreeMap<i64, Q>, BTreeMap<i64, Q>) {
        let c = &self.level;
        let mut eps = BTreeMap::new();
        let mut delta = BTreeMap::new();
        for i in self.eps_range() {
            let shift = if self.tag == SuperTag::Gl {
                if i < 0 {
                    -c.clone()
                } else {
                    Q::zero()
                }
            } else {
                c.clone()
            };
            eps.insert(i, self.eps(i) + shift);
        }
        for j in self.delta_range() {
            let shift = if self.tag == SuperTag::Gl {
                if j < 0 {
                    c.clone()
                } else {
                    Q::zero()
                }
            } else {
                -c.clone()
            };
            delta.insert(j, self.delta(j) + shift);
        }
        eps.retain(|_, v| !v.is_zero());
        delta.retain(|_, v| !v.is_zero());
        (c.clone(), eps, delta)
    }

    /// Serialized form `{ "tag", "level", "eps", "delta" }`.
    pub fn to_json(&self) -> Value {
        let m = |x: &BTreeMap<i64, Q>| -> serde_json::Map<String, Value> {
            x.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect()
        };
        json!({
            "tag": self.tag.to_string(),
            "sizes": { "p": self.sizes.p, "q": self.sizes.q, "m": self.sizes.m, "n": self.sizes.n },
            "level": self.level.to_string(),
            "eps": m(&self.eps),
            "delta": m(&self.delta),
        })
    }
}

/// `Λ̂ᵃ_f(λ)` for `λ_{m+1} ≤ n` and `λ_{d−p} ≥ −q`.
pub fn lambda_super_f_a(lambda: &GeneralizedPartition, sizes: Sizes) -> Result<SuperWeight> {
    let d = lambda.depth();
    let parts = lambda.parts();
    let at = |i: usize| {
        if i >= 1 && i <= d {
            parts[i - 1]
        } else if i == 0 {
            i64::MAX
        } else {
            i64::MIN
        }
    };
    if at(sizes.m + 1) > sizes.n as i64 || (sizes.p < d && at(d - sizes.p) < -(sizes.q as i64)) {
        return Err(Error::OutOfRange(format!("{lambda} violates the hook or depth condition for {sizes:?}")));
    }
    let plus = lambda.plus();
    let minus = lambda.minus_sorted();
    let mut eps = BTreeMap::new();
    let mut delta = BTreeMap::new();
    for i in 1..=sizes.p {
        eps.insert(-(i as i64), q(-pos(minus.part(i) as i64 - sizes.q as i64)));
    }
    let mc = minus.conjugate();
    for j in 1..=sizes.q {
        delta.insert(-(j as i64), q(-(mc.part(j) as i64)));
    }
    for i in 1..=sizes.m {
        eps.insert(i as i64, q(plus.part(i) as i64));
    }
    let pc = plus.conjugate();
    for j in 1..=sizes.n {
        delta.insert(j as i64, q(pos(pc.part(j) as i64 - sizes.m as i64)));
    }
    SuperWeight::new(SuperTag::Gl, sizes, q(d as i64), eps, delta)
}

/// `Λ̂ˣ_f(λ) = (d/2)Λ̃₀ + Σ λ_i ε_i + Σ ⟨λ'_j − m⟩ δ_j` for `x ∈ {b, c, d}`.
pub fn lambda_super_f(tag: SuperTag, lambda: &Partition, sizes: Sizes, d: u32) -> Result<SuperWeight> {
    let member = match tag {
        SuperTag::Osp | SuperTag::SpoOdd => d.is_multiple_of(2) && lambda.len() <= d as usize / 2,
        SuperTag::Spo => lambda.in_orthogonal(d),
        SuperTag::Gl => return Err(Error::TagMismatch("use lambda_super_f_a for gl".into())),
    };
    if !member || !lambda.is_hook(sizes.m, sizes.n as u32) {
        return Err(Error::OutOfRange(format!("{lambda} is not a label for {tag} with d = {d}, {sizes:?}")));
    }
    let lc = lambda.conjugate();
    let eps = (1..=sizes.m).map(|i| (i as i64, q(lambda.part(i) as i64))).collect();
    let delta = (1..=sizes.n).map(|j| (j as i64, q(pos(lc.part(j) as i64 - sizes.m as i64)))).collect();
    SuperWeight::new(tag, sizes, Q::new(d.into(), 2.into()), eps, delta)
}

/// The partitions carried by a weight in `P⁺_l`: `μ°` for `b, c, d, b⁰`, `(η, ζ)` for `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Single(Partition),
    Pair(Partition, Partition),
}

fn as_nonneg(v: &Q) -> Option<u32> {
    if v.is_integer() && !v.is_negative() {
        u32::try_from(v.to_integer()).ok()
    } else {
        None
    }
}

/// Membership in `P⁺_l`, with its witness partitions.
pub fn in_p_plus_l(mu: &WeightCoords) -> Option<Witness> {
    let (lo, hi) = mu.span();
    let plus: Option<Vec<u32>> = (1..=hi).map(|j| as_nonneg(&mu.coord(j))).collect();
    let plus = Partition::new(plus?).ok()?;
    if mu.tag != AlgebraTag::A {
        return Some(Witness::Single(plus));
    }
    let zeta: Option<Vec<u32>> = (0..=-lo.min(0)).map(|j| as_nonneg(&-mu.coord(-j))).collect();
    Some(Witness::Pair(plus, Partition::new(zeta?).ok()?))
}

/// Membership in `P⁺⁺_l`: `η` (or `μ°`) of `(n|m)`-hook shape and `ζ` of `(q|p)`-hook shape.
pub fn in_p_plusplus_l(mu: &WeightCoords, sizes: Sizes) -> Option<Witness> {
    let w = in_p_plus_l(mu)?;
    let ok = match &w {
        Witness::Single(p) => p.is_hook(sizes.n, sizes.m as u32),
        Witness::Pair(eta, zeta) => eta.is_hook(sizes.n, sizes.m as u32) && zeta.is_hook(sizes.q, sizes.p as u32),
    };
    ok.then_some(w)
}

/// Membership in `P⁺⁺_l̄`: the weight is `ϑ` of a weight in `P⁺⁺_l`.
pub fn in_p_plusplus_lbar(mu: &SuperWeight) -> Option<Witness> {
    let back = theta_positive_inverse(mu).ok()?;
    let again = theta_positive(&back, mu.sizes).ok()?;
    if again == *mu {
        in_p_plus_l(&back)
    } else {
        None
    }
}

fn partition_from(values: impl Iterator<Item = Q>) -> Result<Partition> {
    let v: Vec<u32> = values
        .map(|x| as_nonneg(&x).ok_or_else(|| Error::OutOfRange(format!("{x} is not a non-negative integer"))))
        .collect::<Result<_>>()?;
    Partition::new(v)
}

/// `ϑ : P⁺⁺_{l,c} → P⁺⁺_{l̄, c·κ}`.
pub fn theta_positive(mu: &WeightCoords, sizes: Sizes) -> Result<SuperWeight> {
    let w = in_p_plusplus_l(mu, sizes)
        .ok_or_else(|| Error::OutOfRange(format!("{} is not in P⁺⁺_l for {sizes:?}", mu.to_json())))?;
    let mut eps = BTreeMap::new();
    let mut delta = BTreeMap::new();
    match (mu.tag, w) {
        (AlgebraTag::A, Witness::Pair(eta, zeta)) => {
            let tau = eta.conjugate();
            let nu = Partition::new(tau.parts().iter().skip(sizes.m).copied().collect())?;
            let chi = Partition::new(zeta.parts().iter().skip(sizes.q).copied().collect())?;
            for i in 1..=sizes.m {
                eps.insert(i as i64, q(tau.part(i) as i64));
            }
            let nc = nu.conjugate();
            for j in 1..=sizes.n {
                delta.insert(j as i64, q(nc.part(j) as i64));
            }
            for j in 1..=sizes.q {
                delta.insert(-(j as i64), q(-(zeta.part(j) as i64)));
            }
            let cc = chi.conjugate();
            for i in 1..=sizes.p {
                eps.insert(-(i as i64), q(-(cc.part(i) as i64)));
            }
            SuperWeight::new(SuperTag::Gl, sizes, mu.level.clone(), eps, delta)
        }
        (tag, Witness::Single(m0)) => {
            let st = SuperTag::from_classical(tag)?;
            let nu = m0.conjugate();
            let tau = Partition::new(nu.parts().iter().skip(sizes.m).copied().collect())?;
            for i in 1..=sizes.m {
                eps.insert(i as i64, q(nu.part(i) as i64));
            }
            let tc = tau.conjugate();
            for j in 1..=sizes.n {
                delta.insert(j as i64, q(tc.part(j) as i64));
            }
            SuperWeight::new(st, sizes, &mu.level * kappa(tag), eps, delta)
        }
        _ => Err(Error::TagMismatch("witness does not match the tag".into())),
    }
}

/// Inverse of [`theta_positive`].
pub fn theta_positive_inverse(mu: &SuperWeight) -> Result<WeightCoords> {
    let s = mu.sizes;
    let tag = mu.tag.classical();
    let head = partition_from((1..=s.m as i64).map(|i| mu.eps(i)))?;
    let tail = partition_from((1..=s.n as i64).map(|j| mu.delta(j)))?.conjugate();
    let mut top: Vec<u32> = head.parts().to_vec();
    if !tail.is_empty() {
        top.resize(s.m, 0);
        top.extend(tail.parts());
    }
    let top = Partition::new(top)?;
    let mut coords = BTreeMap::new();
    if tag == AlgebraTag::A {
        let eta = top.conjugate();
        let zhead = partition_from((1..=s.q as i64).map(|j| -mu.delta(-j)))?;
        let chi = partition_from((1..=s.p as i64).map(|i| -mu.eps(-i)))?.conjugate();
        let mut z: Vec<u32> = zhead.parts().to_vec();
        if !chi.is_empty() {
            z.resize(s.q, 0);
            z.extend(chi.parts());
        }
        let zeta = Partition::new(z)?;
        for (j, &v) in eta.parts().iter().enumerate() {
            coords.insert(j as i64 + 1, q(v as i64));
        }
        for (j, &v) in zeta.parts().iter().enumerate() {
            coords.insert(-(j as i64), q(-(v as i64)));
        }
        return WeightCoords::new(tag, mu.level.clone(), coords);
    }
    let m0 = top.conjugate();
    for (j, &v) in m0.parts().iter().enumerate() {
        coords.insert(j as i64 + 1, q(v as i64));
    }
    WeightCoords::new(tag, &mu.level / kappa(tag), coords)
}

/// Directions of the negative-level bijections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NegativeTheta {
    /// `c∞` at level `c` to `d∞` at level `−2c`.
    CToD,
    /// `d∞` at level `c` to `c∞` at level `−c/2`.
    DToC,
    /// `b∞` at level `c` to `b⁰∞` at level `−c/2`.
    BToB0,
    /// `b⁰∞` at level `c` to `b∞` at level `−2c`.
    B0ToB,
}

impl NegativeTheta {
    pub fn source(self) -> AlgebraTag {
        match self {
            NegativeTheta::CToD => AlgebraTag::C,
            NegativeTheta::DToC => AlgebraTag::D,
            NegativeTheta::BToB0 => AlgebraTag::B,
            NegativeTheta::B0ToB => AlgebraTag::B0,
        }
    }

    pub fn target(self) -> AlgebraTag {
        match self {
            NegativeTheta::CToD => AlgebraTag::D,
            NegativeTheta::DToC => AlgebraTag::C,
            NegativeTheta::BToB0 => AlgebraTag::B0,
            NegativeTheta::B0ToB => AlgebraTag::B,
        }
    }

    fn level_factor(self) -> Q {
        match self {
            NegativeTheta::CToD | NegativeTheta::B0ToB => q(-2),
            NegativeTheta::DToC | NegativeTheta::BToB0 => -q_half(),
        }
    }

    /// The negative-level partner of a classical type, if any.
    pub fn from_source(tag: AlgebraTag) -> Option<NegativeTheta> {
        match tag {
            AlgebraTag::C => Some(NegativeTheta::CToD),
            AlgebraTag::D => Some(NegativeTheta::DToC),
            AlgebraTag::B => Some(NegativeTheta::BToB0),
            AlgebraTag::B0 => Some(NegativeTheta::B0ToB),
            AlgebraTag::A => None,
        }
    }
}

/// `ϑ(μ)`: conjugated coordinates at the rescaled negated level.
pub fn theta_negative(dir: NegativeTheta, mu: &WeightCoords) -> Result<WeightCoords> {
    if mu.tag != dir.source() {
        return Err(Error::TagMismatch(format!("{dir:?} applied to a {} weight", mu.tag)));
    }
    let Some(Witness::Single(m0)) = in_p_plus_l(mu) else {
        return Err(Error::OutOfRange(format!("{} is not in P⁺_l", mu.to_json())));
    };
    let conj: Vec<i64> = ints(&m0.conjugate());
    WeightCoords::from_ints(dir.target(), &mu.level * dir.level_factor(), 1, &conj)
}

fn content(p: &Partition, shift: i64) -> Q {
    q(p.content_sum(shift))
}

/// `(μ + 2ρ_c | μ)_c` by the closed forms.
pub fn casimir_c(mu: &WeightCoords) -> Result<Q> {
    let w = in_p_plus_l(mu).ok_or_else(|| Error::OutOfRange(format!("{} is not in P⁺_l", mu.to_json())))?;
    let c = &mu.level;
    Ok(match (mu.tag, w) {
        (AlgebraTag::A, Witness::Pair(eta, zeta)) => {
            // Σ_{j≥0} ζ_j (ζ_j − 2j) with ζ indexed from 0
            let z: i64 = zeta.parts().iter().enumerate().map(|(j, &v)| v as i64 * (v as i64 - 2 * j as i64)).sum();
            content(&eta, 0) + q(z) - c * q((eta.size() + zeta.size()) as i64)
        }
        (AlgebraTag::B, Witness::Single(p)) => content(&p, 1) - c * q(p.size() as i64),
        (AlgebraTag::C, Witness::Single(p)) => content(&p, 0) - c * q(2 * p.size() as i64),
        (AlgebraTag::D, Witness::Single(p)) => content(&p, 2) - c * q(p.size() as i64),
        (AlgebraTag::B0, Witness::Single(p)) => content(&p, 1) - c * q(2 * p.size() as i64),
        _ => return Err(Error::TagMismatch("witness does not match the tag".into())),
    })
}

/// `ρ_s` coordinates `(ε part, δ part)`.
pub fn rho_s(tag: SuperTag, sizes: Sizes) -> (BTreeMap<i64, Q>, BTreeMap<i64, Q>) {
    let (p, qq, m, n) = (sizes.p as i64, sizes.q as i64, sizes.m as i64, sizes.n as i64);
    let h = q_half();
    let mut eps = BTreeMap::new();
    let mut delta = BTreeMap::new();
    match tag {
        SuperTag::Gl => {
            for i in -p..=-1 {
                eps.insert(i, q(-i - qq));
            }
            for i in 1..=m {
                eps.insert(i, q(1 - i));
            }
            for j in -qq..=-1 {
                delta.insert(j, q(-j - 1));
            }
            for j in 1..=n {
                delta.insert(j, q(m - j));
            }
        }
        SuperTag::SpoOdd => {
            for i in 1..=m {
                eps.insert(i, q(-i) + &h);
            }
            for j in 1..=n {
                delta.insert(j, q(m - j) + &h);
            }
        }
        SuperTag::Osp => {
            for i in 1..=m {
                eps.insert(i, q(1 - i));
            }
            for j in 1..=n {
                delta.insert(j, q(m - j));
            }
        }
        SuperTag::Spo => {
            for i in 1..=m {
                eps.insert(i, q(-i));
            }
            for j in 1..=n {
                delta.insert(j, q(m - j + 1));
            }
        }
    }
    (eps, delta)
}

/// `(Λ̃₀ | ε_i)_s` and `(Λ̃₀ | δ_j)_s`.
fn lambda0_pairing(tag: SuperTag, index: i64) -> Q {
    match tag {
        SuperTag::Gl => {
            if index < 0 {
                q_half()
            } else {
                -q_half()
            }
        }
        _ => Q::one(),
    }
}

/// `(ε_i|ε_i)_s` and `(δ_j|δ_j)_s`.
fn self_pairings(tag: SuperTag) -> (Q, Q) {
    match tag {
        SuperTag::Gl => (q(-1), q(1)),
        _ => (q(1), q(-1)),
    }
}

/// `(μ̄ + 2ρ_s | μ̄)_s` from the pairing table, with `(Λ̃₀|Λ̃₀)_s = 0`.
pub fn casimir_s(mu: &SuperWeight) -> Q {
    let (re, rd) = rho_s(mu.tag, mu.sizes);
    let (fe, fd) = self_pairings(mu.tag);
    let c = &mu.level;
    let two = q(2);
    let mut total = Q::zero();
    for i in mu.eps_range() {
        let a = mu.eps(i);
        let r = re.get(&i).cloned().unwrap_or_else(Q::zero);
        // level terms: 2c(Λ̃₀|aε) + 2c(ρ_s|Λ̃₀)
        total += &two * c * lambda0_pairing(mu.tag, i) * (&a + &r);
        total += &fe * &a * (&a + &two * &r);
    }
    for j in mu.delta_range() {
        let b = mu.delta(j);
        let r = rd.get(&j).cloned().unwrap_or_else(Q::zero);
        total += &two * c * lambda0_pairing(mu.tag, j) * (&b + &r);
        total += &fd * &b * (&b + &two * &r);
    }
    total
}

/// `C̄ = c̄²(Λ̃₀|Λ̃₀)_s + 2c̄(ρ_s|Λ̃₀)_s` at the given super level.
pub fn casimir_constant(tag: SuperTag, sizes: Sizes, level: &Q) -> Q {
    let zero = SuperWeight::new(tag, sizes, level.clone(), BTreeMap::new(), BTreeMap::new()).expect("empty weight");
    casimir_s(&zero)
}

/// A random partition of size at most `max` with `λ_{a+1} ≤ b`.
pub fn random_hook_partition<R: Rng>(rng: &mut R, max: u32, a: usize, b: u32) -> Partition {
    loop {
        let size = rng.gen_range(0..=max);
        let mut parts = Vec::new();
        let mut rest = size;
        while rest > 0 {
            let x = rng.gen_range(1..=rest);
            parts.push(x);
            rest -= x;
        }
        let p = Partition::from_unsorted(parts);
        if p.is_hook(a, b) {
            return p;
        }
    }
}

/// A random weight of `P⁺⁺_{l,c}` with partitions of size at most `max`.
pub fn random_p_plusplus<R: Rng>(rng: &mut R, tag: AlgebraTag, sizes: Sizes, level: Q, max: u32) -> WeightCoords {
    let eta = random_hook_partition(rng, max, sizes.n, sizes.m as u32);
    let mut coords = BTreeMap::new();
    for (j, &v) in eta.parts().iter().enumerate() {
        coords.insert(j as i64 + 1, q(v as i64));
    }
    if tag == AlgebraTag::A {
        let zeta = random_hook_partition(rng, max, sizes.q, sizes.p as u32);
        for (j, &v) in zeta.parts().iter().enumerate() {
            coords.insert(-(j as i64), q(-(v as i64)));
        }
    }
    WeightCoords::new(tag, level, coords).expect("valid coordinates")
}
