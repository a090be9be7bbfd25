//! Module and homology characters of the dual pairs, and exact verification
//! of the duality identities, Euler–Poincaré relations and ω-transport.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_chars::{DualGroup, Family, EPS, Z};
use crate::partition::{GeneralizedPartition, Partition};
use crate::series::{expand_product, factor, Alphabet, Factor, Space, TruncatedSeries};
use crate::symfunc::{hook_schur, schur_decompose, schur_decompose_multi, schur_poly, super_specialize};
use crate::weights::{
    casimir_c, casimir_constant, casimir_s, kappa, lambda_classical, lambda_classical_a, lambda_super_f,
    lambda_super_f_a, theta_negative, theta_positive, NegativeTheta, Sizes, SuperTag,
};
use crate::weyl::{homology_weights, AlgebraTag, GroupElement, LambdaW, WeightCoords};

/// Classical alphabet `x_1, x_2, …`.
pub const X: &str = "x";
/// Classical alphabet `x_0^{-1}, x_{-1}^{-1}, …` of type `a`.
pub const XB: &str = "xb";
/// Super alphabets of `ĝl(p+m|q+n)`: `ξ`, `y`, `η^{-1}`, `x^{-1}`.
pub const XI: &str = "xi";
pub const Y: &str = "y";
pub const ETA_INV: &str = "etai";
pub const X_INV: &str = "xinv";
/// Fermionic super alphabet of the orthosymplectic pairs.
pub const ETA: &str = "eta";

/// Which member of a dual pair the infinite-dimensional algebra is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Super,
    Negative,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Positive => "positive",
            Side::Super => "super",
            Side::Negative => "negative",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" | "classical" | "classical-positive" => Ok(Side::Positive),
            "super" => Ok(Side::Super),
            "negative" | "classical-negative" => Ok(Side::Negative),
            _ => Err(Error::Parse(format!("unknown side {s}"))),
        }
    }
}

/// A label of an irreducible module of the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Gl(GeneralizedPartition),
    Part(Partition),
}

impl Label {
    /// `|λ|`, or `|λ⁺| + |λ⁻|` for a generalized partition.
    pub fn size(&self) -> u32 {
        match self {
            Label::Gl(g) => g.abs_size(),
            Label::Part(p) => p.size(),
        }
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            Label::Part(p) => Some(p),
            Label::Gl(_) => None,
        }
    }

    pub fn generalized(&self) -> Option<&GeneralizedPartition> {
        match self {
            Label::Gl(g) => Some(g),
            Label::Part(_) => None,
        }
    }

    /// Parses a label for the given group family.
    pub fn parse(family: Family, d: u32, s: &str) -> Result<Label> {
        if family == Family::GL {
            if let Ok(g) = s.parse::<GeneralizedPartition>() {
                if g.depth() == d as usize {
                    return Ok(Label::Gl(g));
                }
            }
            let p: Partition = s.parse()?;
            return Ok(Label::Gl(GeneralizedPartition::from_partition(&p, d as usize)?));
        }
        Ok(Label::Part(s.parse()?))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Gl(g) => write!(f, "{g}"),
            Label::Part(p) => write!(f, "{p}"),
        }
    }
}

/// One `w ∈ W⁰ₖ` contributing to a homology character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contributor {
    pub source: Label,
    pub w: GroupElement,
    pub lambda_w: LambdaW,
    /// `w∘Λ`, or its image under `ϑ` on the super and negative sides.
    pub weight: Value,
}

impl Contributor {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_string(),
            "w": self.w.one_line(),
            "length": self.w.length(),
            "lambda_w": self.lambda_w.to_json(),
            "weight": self.weight,
        })
    }
}

/// `ch H_k` with its contributors.
#[derive(Debug, Clone)]
pub struct HomologyCharacter {
    pub k: u32,
    pub character: TruncatedSeries,
    pub contributors: Vec<Contributor>,
    /// Set when the character is the sum over `λ` and `λ̃` for `O(2ℓ)`.
    pub paired: bool,
    /// `∏_{v ∈ alphabet} v^e` relating the hatted and the usual super characters.
    pub prefactor: Vec<(String, BigRational)>,
}

impl HomologyCharacter {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "paired": self.paired,
            "prefactor": self.prefactor.iter().map(|(a, e)| json!({ "alphabet": a, "exponent": e.to_string() })).collect::<Vec<_>>(),
            "contributors": self.contributors.iter().map(Contributor::to_json).collect::<Vec<_>>(),
            "character": self.character.to_json(),
        })
    }
}

/// Result of one verification.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub degree: u32,
    pub ok: bool,
    pub first_mismatch: Option<Value>,
    pub contributors: Vec<Value>,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "params": self.params,
            "degree": self.degree,
            "ok": self.ok,
            "first_mismatch": self.first_mismatch,
            "contributors": self.contributors,
        })
    }
}

/// A dual pair `(g, G)` together with its truncation data.
#[derive(Debug, Clone)]
pub struct DualPairSpec {
    pub side: Side,
    pub tag: AlgebraTag,
    pub group: DualGroup,
    pub sizes: Sizes,
    pub degree: u32,
    pub nvars: usize,
    module: Arc<Space>,
    full: Arc<Space>,
}

impl DualPairSpec {
    /// The group paired with `tag` on the given side, if admissible.
    pub fn group_family(side: Side, tag: AlgebraTag) -> Option<Family> {
        match (side, tag) {
            (Side::Positive | Side::Super, AlgebraTag::A) => Some(Family::GL),
            (Side::Positive | Side::Super, AlgebraTag::B) => Some(Family::Pin),
            (Side::Positive | Side::Super, AlgebraTag::C) => Some(Family::Sp),
            (Side::Positive | Side::Super, AlgebraTag::D) => Some(Family::O),
            (Side::Negative, AlgebraTag::D) => Some(Family::Sp),
            (Side::Negative, AlgebraTag::C) => Some(Family::O),
            (Side::Negative, AlgebraTag::B0) => Some(Family::Pin),
            _ => None,
        }
    }

    /// A dual pair with `N = degree` module variables.
    pub fn new(side: Side, tag: AlgebraTag, d: u32, sizes: Sizes, degree: u32) -> Result<Self> {
        Self::with_nvars(side, tag, d, sizes, degree, degree as usize)
    }

    pub fn with_nvars(side: Side, tag: AlgebraTag, d: u32, sizes: Sizes, degree: u32, nvars: usize) -> Result<Self> {
        let family = Self::group_family(side, tag)
            .ok_or_else(|| Error::Inadmissible(format!("no {side} dual pair for {tag}")))?;
        let group = DualGroup::new(family, d)?;
        let sizes = match (side, tag) {
            (Side::Super, AlgebraTag::A) => sizes,
            (Side::Super, _) => {
                if sizes.p != 0 || sizes.q != 0 {
                    return Err(Error::Inadmissible("p and q apply only to gl".into()));
                }
                sizes
            }
            _ => Sizes::default(),
        };
        let module_alphs = match (side, tag) {
            (Side::Positive, AlgebraTag::A) => vec![Alphabet::module(X, nvars), Alphabet::module(XB, nvars)],
            (Side::Super, AlgebraTag::A) => vec![
                Alphabet::module(XI, sizes.n),
                Alphabet::module(Y, sizes.m),
                Alphabet::module(ETA_INV, sizes.q),
                Alphabet::module(X_INV, sizes.p),
            ],
            (Side::Super, _) => vec![Alphabet::module(ETA, sizes.n), Alphabet::module(X, sizes.m)],
            _ => vec![Alphabet::module(X, nvars)],
        };
        let module = Space::new(module_alphs.clone())?;
        let mut all = module_alphs;
        all.extend(group.alphabets(false));
        let full = Space::new(all)?;
        Ok(DualPairSpec { side, tag, group, sizes, degree, nvars, module, full })
    }

    pub fn module_space(&self) -> &Arc<Space> {
        &self.module
    }

    pub fn full_space(&self) -> &Arc<Space> {
        &self.full
    }

    pub fn d(&self) -> u32 {
        self.group.d
    }

    /// `O(2ℓ)` labels are taken up to `λ ↔ λ̃`.
    pub fn is_paired(&self) -> bool {
        self.group.family == Family::O && self.group.d.is_multiple_of(2)
    }

    pub fn params(&self) -> Value {
        let mut v = json!({
            "side": self.side.to_string(),
            "type": self.tag.to_string(),
            "group": self.group.to_string(),
            "degree": self.degree,
        });
        if self.side == Side::Super {
            v["sizes"] = json!({ "p": self.sizes.p, "q": self.sizes.q, "m": self.sizes.m, "n": self.sizes.n });
        } else {
            v["nvars"] = json!(self.nvars);
        }
        v
    }

    fn is_super_label(&self, label: &Label) -> bool {
        match label {
            Label::Gl(g) => lambda_super_f_a(g, self.sizes).is_ok(),
            Label::Part(p) => p.is_hook(self.sizes.m, self.sizes.n as u32),
        }
    }

    /// The members `λ` (and `λ̃` for `O(2ℓ)`) summed in one paired term.
    pub fn members(&self, label: &Label) -> Result<Vec<Label>> {
        let Label::Part(p) = label else { return Ok(vec![label.clone()]) };
        if !self.is_paired() {
            return Ok(vec![label.clone()]);
        }
        let t = p.tilde(self.d())?;
        Ok(if t == *p { vec![label.clone()] } else { vec![label.clone(), Label::Part(t)] })
    }

    /// All labels `λ` with `|λ| ≤ D` entering the sum side, one per `{λ, λ̃}` for `O(2ℓ)`.
    pub fn labels(&self) -> Vec<Label> {
        let d = self.d();
        let bound = self.degree;
        let mut out: Vec<Label> = match self.group.family {
            Family::GL => GeneralizedPartition::all_up_to(d as usize, bound).into_iter().map(Label::Gl).collect(),
            Family::Sp | Family::Pin => {
                Partition::all_up_to_len(bound, d as usize / 2).into_iter().map(Label::Part).collect()
            }
            Family::O if d.is_multiple_of(2) => {
                Partition::all_up_to_len(bound, d as usize / 2).into_iter().map(Label::Part).collect()
            }
            Family::O => {
                Partition::all_up_to(bound).into_iter().filter(|p| p.in_orthogonal(d)).map(Label::Part).collect()
            }
        };
        if self.side == Side::Super {
            out.retain(|l| self.members(l).map(|ms| ms.iter().any(|m| self.is_super_label(m))).unwrap_or(false));
        }
        out
    }

    fn check_label(&self, label: &Label) -> Result<()> {
        let ok = match (self.group.family, label) {
            (Family::GL, Label::Gl(g)) => g.depth() == self.d() as usize,
            (Family::GL, _) | (_, Label::Gl(_)) => false,
            (_, Label::Part(p)) => self.group.contains(p),
        };
        if !ok {
            return Err(Error::OutOfRange(format!("{label} is not a label of {}", self.group)));
        }
        if self.side == Side::Super && !self.members(label)?.iter().any(|m| self.is_super_label(m)) {
            return Err(Error::OutOfRange(format!("{label} violates the hook condition for {:?}", self.sizes)));
        }
        Ok(())
    }

    /// The type whose Weyl group indexes the homology contributors.
    pub fn source_tag(&self) -> AlgebraTag {
        match (self.side, self.tag) {
            (Side::Negative, AlgebraTag::D) => AlgebraTag::C,
            (Side::Negative, AlgebraTag::C) => AlgebraTag::D,
            (Side::Negative, AlgebraTag::B0) => AlgebraTag::B,
            (_, t) => t,
        }
    }

    /// `Λˣ(λ)` of the source type.
    pub fn source_weight(&self, label: &Label) -> Result<WeightCoords> {
        match label {
            Label::Gl(g) => lambda_classical_a(g),
            Label::Part(p) => lambda_classical(self.source_tag(), p, self.d()),
        }
    }

    fn term(&self, lw: &LambdaW) -> Result<TruncatedSeries> {
        let (s, d) = (&self.module, self.degree);
        match (self.side, lw) {
            (Side::Positive, LambdaW::Pair(p, m)) => schur_poly(p, s, X, d)?.mul(&schur_poly(m, s, XB, d)?),
            (Side::Positive, LambdaW::Single(p)) => schur_poly(p, s, X, d),
            (Side::Super, LambdaW::Pair(p, m)) => {
                hook_schur(p, s, XI, Y, d)?.mul(&hook_schur(m, s, ETA_INV, X_INV, d)?)
            }
            (Side::Super, LambdaW::Single(p)) => hook_schur(p, s, ETA, X, d),
            (Side::Negative, LambdaW::Single(p)) => schur_poly(&p.conjugate(), s, X, d),
            (Side::Negative, LambdaW::Pair(..)) => Err(Error::TagMismatch("no negative gl pair".into())),
        }
    }

    fn hook_ok(&self, lw: &LambdaW) -> bool {
        let s = self.sizes;
        match lw {
            LambdaW::Single(p) => p.is_hook(s.n, s.m as u32),
            LambdaW::Pair(p, m) => p.is_hook(s.n, s.m as u32) && m.is_hook(s.q, s.p as u32),
        }
    }

    fn prefactor(&self) -> Vec<(String, BigRational)> {
        if self.side != Side::Super {
            return Vec::new();
        }
        let d = BigRational::from_integer(self.d().into());
        if self.tag == AlgebraTag::A {
            vec![(X_INV.into(), d.clone()), (ETA_INV.into(), -d)]
        } else {
            let h = d / BigRational::from_integer(2.into());
            vec![(X.into(), h.clone()), (ETA.into(), -h)]
        }
    }

    /// `ch H_k`, paired over `{λ, λ̃}` for `O(2ℓ)` on the super and negative sides.
    pub fn homology_char(&self, label: &Label, k: u32) -> Result<HomologyCharacter> {
        self.check_label(label)?;
        let members = if self.side == Side::Positive { vec![label.clone()] } else { self.members(label)? };
        let mut character = TruncatedSeries::zero(&self.module, self.degree);
        let mut contributors = Vec::new();
        let mut seen = HashSet::new();
        for member in &members {
            let lam = self.source_weight(member)?;
            let target = if self.side == Side::Super { Some(self.super_casimir_target(&lam)?) } else { None };
            for (w, mu, lw) in homology_weights(&lam, k)? {
                let mut weight = mu.to_json();
                if self.side == Side::Super {
                    let hook = self.hook_ok(&lw);
                    if lw.size() <= self.degree {
                        let nonzero = !self.term(&lw)?.is_zero();
                        if nonzero != hook {
                            return Err(Error::Enumeration(format!("hook filter disagrees with hs for {lw}")));
                        }
                    }
                    if !hook {
                        continue;
                    }
                    let t = theta_positive(&mu, self.sizes)?;
                    if Some(casimir_s(&t)) != target {
                        return Err(Error::Enumeration(format!("Casimir filter fails for w = {w}")));
                    }
                    if !seen.insert(t.clone()) {
                        return Err(Error::Enumeration(format!("repeated contributor weight for w = {w}")));
                    }
                    weight = t.to_json();
                }
                if self.side == Side::Negative {
                    let dir = NegativeTheta::from_source(mu.tag)
                        .ok_or_else(|| Error::TagMismatch(format!("no negative map from {}", mu.tag)))?;
                    weight = theta_negative(dir, &mu)?.to_json();
                }
                if lw.size() <= self.degree {
                    character.add_assign(&self.term(&lw)?)?;
                }
                contributors.push(Contributor { source: member.clone(), w, lambda_w: lw, weight });
            }
        }
        Ok(HomologyCharacter { k, character, contributors, paired: members.len() > 1, prefactor: self.prefactor() })
    }

    /// `casimir_s(Λ̂ˣ_f(λ))` from the classical side, and a cross-check
    /// against `Λ̂ˣ_f(λ)` itself when `λ` satisfies the hook condition.
    fn super_casimir_target(&self, lam: &WeightCoords) -> Result<BigRational> {
        let st = SuperTag::from_classical(self.tag)?;
        let cbar = casimir_constant(st, self.sizes, &(&lam.level * kappa(self.tag)));
        let cl = casimir_c(lam)?;
        let value = if self.tag == AlgebraTag::A { cl + cbar } else { cbar - cl };
        if let Ok(t) = theta_positive(lam, self.sizes) {
            if casimir_s(&t) != value {
                return Err(Error::Enumeration("Casimir lemma fails at the highest weight".into()));
            }
        }
        Ok(value)
    }

    /// `Σ_k (−1)^k ch H_k`, with `k` swept until `|λ| + k > D`.
    pub fn euler_characteristic(&self, label: &Label) -> Result<TruncatedSeries> {
        let members = if self.side == Side::Positive { self.members(label)? } else { vec![label.clone()] };
        let mut out = TruncatedSeries::zero(&self.module, self.degree);
        for member in &members {
            let top = self.degree.saturating_sub(label.size().min(member.size()));
            if label.size() > self.degree {
                continue;
            }
            for k in 0..=top {
                let h = self.homology_char(member, k)?;
                if k % 2 == 0 {
                    out.add_assign(&h.character)?;
                } else {
                    out = out.sub(&h.character)?;
                }
            }
        }
        Ok(out)
    }

    fn denominator_factors(&self) -> Result<Vec<Factor>> {
        let s = &self.module;
        let n = self.nvars;
        let mut f = Vec::new();
        let pairs = |name: &str, size: usize, diag: bool, f: &mut Vec<Factor>| -> Result<()> {
            for i in 0..size {
                for j in i..size {
                    if i == j && !diag {
                        continue;
                    }
                    let v = if i == j { vec![(name, i, 2)] } else { vec![(name, i, 1), (name, j, 1)] };
                    f.push(factor(s, &v, false, true)?);
                }
            }
            Ok(())
        };
        let cross =
            |a: &str, sa: usize, b: &str, sb: usize, plus: bool, inverse: bool, f: &mut Vec<Factor>| -> Result<()> {
                for i in 0..sa {
                    for j in 0..sb {
                        f.push(factor(s, &[(a, i, 1), (b, j, 1)], plus, inverse)?);
                    }
                }
                Ok(())
            };
        let (m, nn, p, q) = (self.sizes.m, self.sizes.n, self.sizes.p, self.sizes.q);
        match (self.side, self.tag) {
            (Side::Positive, AlgebraTag::A) => cross(XB, n, X, n, false, true, &mut f)?,
            (Side::Positive, AlgebraTag::B) => {
                for i in 0..n {
                    f.push(factor(s, &[(X, i, 1)], false, true)?);
                }
                pairs(X, n, false, &mut f)?;
            }
            (Side::Positive, AlgebraTag::C) | (Side::Negative, AlgebraTag::C) => pairs(X, n, true, &mut f)?,
            (Side::Positive, AlgebraTag::D) | (Side::Negative, AlgebraTag::D) => pairs(X, n, false, &mut f)?,
            (Side::Negative, AlgebraTag::B0) => {
                for i in 0..n {
                    f.push(factor(s, &[(X, i, 1)], true, false)?);
                }
                pairs(X, n, true, &mut f)?;
            }
            (Side::Super, AlgebraTag::A) => {
                cross(X_INV, p, XI, nn, true, false, &mut f)?;
                cross(ETA_INV, q, Y, m, true, false, &mut f)?;
                cross(X_INV, p, Y, m, false, true, &mut f)?;
                cross(ETA_INV, q, XI, nn, false, true, &mut f)?;
            }
            (Side::Super, t) => {
                cross(ETA, nn, X, m, true, false, &mut f)?;
                pairs(ETA, nn, t == AlgebraTag::C, &mut f)?;
                pairs(X, m, t != AlgebraTag::C, &mut f)?;
                if t == AlgebraTag::B {
                    for i in 0..m {
                        f.push(factor(s, &[(X, i, 1)], true, false)?);
                    }
                    for j in 0..nn {
                        f.push(factor(s, &[(ETA, j, 1)], false, true)?);
                    }
                }
            }
            _ => return Err(Error::Inadmissible(format!("no {} dual pair for {}", self.side, self.tag))),
        }
        Ok(f)
    }

    /// `1/D` expanded to the truncation degree.
    pub fn inverse_denominator(&self) -> Result<TruncatedSeries> {
        expand_product(&self.module, self.degree, &self.denominator_factors()?)
    }

    /// `D` as a polynomial, truncated.
    pub fn denominator(&self) -> Result<TruncatedSeries> {
        let flipped: Vec<Factor> =
            self.denominator_factors()?.into_iter().map(|f| Factor { inverse: !f.inverse, ..f }).collect();
        expand_product(&self.module, self.degree, &flipped)
    }

    /// `ch L(λ)` (or `ch L(λ) + ch L(λ̃)` for `O(2ℓ)`) from the homology.
    pub fn module_char(&self, label: &Label) -> Result<TruncatedSeries> {
        self.check_label(label)?;
        let out = self.euler_characteristic(label)?.mul(&self.inverse_denominator()?)?;
        if let Some(low) = out.min_degree() {
            if low < label.size() as i64 {
                return Err(Error::Enumeration(format!("ch L({label}) has a term below degree {}", label.size())));
            }
        }
        Ok(out)
    }

    /// `ch V^λ` in the full space.
    pub fn group_char(&self, label: &Label) -> Result<TruncatedSeries> {
        let ch = match label {
            Label::Gl(g) => crate::finite_chars::char_gl(g, self.d())?,
            Label::Part(p) => self.group.character(p)?,
        };
        ch.embed(&self.full, self.degree, &[])
    }

    fn spin_factor(&self) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::one(&self.full, self.degree);
        for i in 0..self.group.rank() {
            let v = self.full.var(Z, i)?;
            let mut t = TruncatedSeries::zero(&self.full, self.degree);
            for raw in [1i16, -1] {
                let mut e = self.full.zero_exps();
                e[v] = raw;
                t.add_term(e, BigInt::one());
            }
            out = out.mul(&t)?;
        }
        Ok(out)
    }

    /// The trace of the joint operator on the Fock space, as a product.
    pub fn product_side(&self) -> Result<TruncatedSeries> {
        let s = &self.full;
        let unit: i16 = if self.group.half() { 2 } else { 1 };
        let sign = self.group.has_sign();
        let with_sign = |mut v: Vec<(&'static str, usize, i16)>| {
            if sign {
                v.push((EPS, 0, 1));
            }
            v
        };
        let mut f = Vec::new();
        let rank = self.group.rank();
        let pm = |alph: &'static str, size: usize, plus: bool, inverse: bool, f: &mut Vec<Factor>| -> Result<()> {
            for i in 0..rank {
                for j in 0..size {
                    for e in [unit, -unit] {
                        f.push(factor(s, &with_sign(vec![(alph, j, 1), (Z, i, e)]), plus, inverse)?);
                    }
                }
            }
            if sign {
                for j in 0..size {
                    f.push(factor(s, &with_sign(vec![(alph, j, 1)]), plus, inverse)?);
                }
            }
            Ok(())
        };
        match (self.side, self.tag) {
            (Side::Positive, AlgebraTag::A) => {
                for k in 0..rank {
                    for j in 0..self.nvars {
                        f.push(factor(s, &[(X, j, 1), (Z, k, 1)], true, false)?);
                        f.push(factor(s, &[(XB, j, 1), (Z, k, -1)], true, false)?);
                    }
                }
            }
            (Side::Positive, _) => pm(X, self.nvars, true, false, &mut f)?,
            (Side::Negative, _) => pm(X, self.nvars, false, true, &mut f)?,
            (Side::Super, AlgebraTag::A) => {
                let sz = self.sizes;
                for k in 0..rank {
                    for j in 0..sz.q {
                        f.push(factor(s, &[(ETA_INV, j, 1), (Z, k, -1)], true, false)?);
                    }
                    for t in 0..sz.n {
                        f.push(factor(s, &[(XI, t, 1), (Z, k, 1)], true, false)?);
                    }
                    for i in 0..sz.p {
                        f.push(factor(s, &[(X_INV, i, 1), (Z, k, -1)], false, true)?);
                    }
                    for t in 0..sz.m {
                        f.push(factor(s, &[(Y, t, 1), (Z, k, 1)], false, true)?);
                    }
                }
            }
            (Side::Super, _) => {
                pm(ETA, self.sizes.n, true, false, &mut f)?;
                pm(X, self.sizes.m, false, true, &mut f)?;
            }
        }
        let mut out = expand_product(s, self.degree, &f)?;
        if self.group.family == Family::Pin {
            out = out.mul(&self.spin_factor()?)?;
        }
        Ok(out)
    }

    /// `Σ_λ ch L(λ) ch V^λ` over [`Self::labels`].
    pub fn sum_side(&self) -> Result<TruncatedSeries> {
        let terms: Vec<Result<TruncatedSeries>> = self
            .labels()
            .par_iter()
            .map(|l| {
                let m = self.module_char(l)?.embed(&self.full, self.degree, &[])?;
                m.mul(&self.group_char(l)?)
            })
            .collect();
        let mut out = TruncatedSeries::zero(&self.full, self.degree);
        for t in terms {
            out.add_assign(&t?)?;
        }
        Ok(out)
    }

    fn label_from_top(&self, z: &[i16], eps: i16) -> Result<Label> {
        let d = self.d();
        let ints: Vec<i64> = z.iter().map(|&x| x as i64).collect();
        let part = |v: Vec<i64>| -> Result<Partition> {
            if v.iter().any(|&x| x < 0) {
                return Err(Error::NotDominant(format!("{v:?} is not a dominant exponent")));
            }
            Partition::new(v.into_iter().map(|x| x as u32).collect())
        };
        Ok(match self.group.family {
            Family::GL => Label::Gl(GeneralizedPartition::new(ints)?),
            Family::Sp => Label::Part(part(ints)?),
            Family::Pin => Label::Part(part(ints.iter().map(|&x| (x - 1) / 2).collect())?),
            Family::O if d.is_multiple_of(2) => Label::Part(part(ints)?),
            Family::O => {
                let mu = part(ints)?;
                if (mu.size() as i16 - eps) % 2 == 0 {
                    Label::Part(mu)
                } else {
                    Label::Part(mu.tilde(d)?)
                }
            }
        })
    }

    /// Coefficients of `ch V^λ` in the product side, by peeling off highest
    /// terms; an oracle for `ch L(λ)` that does not use homology.
    pub fn solve_product_side(&self) -> Result<BTreeMap<Label, TruncatedSeries>> {
        let product = self.product_side()?;
        let mn = self.module.nvars();
        let gz = self.full.range(Z)?;
        let sign = self.group.has_sign().then(|| self.full.var(EPS, 0)).transpose()?;
        type Key = (Vec<i16>, i16);
        let mut buckets: BTreeMap<Vec<i16>, BTreeMap<Key, BigInt>> = BTreeMap::new();
        for (e, c) in product.iter() {
            let key = (e[gz.clone()].to_vec(), sign.map_or(0, |v| e[v]));
            buckets.entry(e[..mn].to_vec()).or_default().insert(key, c.clone());
        }
        let mut chars: HashMap<Label, Vec<(Key, BigInt)>> = HashMap::new();
        let mut out: BTreeMap<Label, TruncatedSeries> = BTreeMap::new();
        for (mono, mut poly) in buckets {
            while let Some(((z, eps), c)) = poly.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
                let label = self.label_from_top(&z, eps)?;
                if !chars.contains_key(&label) {
                    let ch = self.group_char(&label)?;
                    let terms = ch
                        .iter()
                        .map(|(e, v)| ((e[gz.clone()].to_vec(), sign.map_or(0, |s| e[s])), v.clone()))
                        .collect();
                    chars.insert(label.clone(), terms);
                }
                for (k, v) in &chars[&label] {
                    let slot = poly.entry(k.clone()).or_insert_with(BigInt::zero);
                    *slot -= &c * v;
                    if slot.is_zero() {
                        poly.remove(k);
                    }
                }
                let mut e = self.module.zero_exps();
                e.copy_from_slice(&mono);
                out.entry(label).or_insert_with(|| TruncatedSeries::zero(&self.module, self.degree)).add_term(e, c);
            }
        }
        Ok(out)
    }
}

fn report(
    check: &str,
    spec: &DualPairSpec,
    extra: Value,
    left: &TruncatedSeries,
    right: &TruncatedSeries,
    contributors: Vec<Value>,
) -> Result<CheckReport> {
    let mismatch = left.first_mismatch(right)?;
    let mut params = spec.params();
    if let (Some(p), Some(e)) = (params.as_object_mut(), extra.as_object()) {
        p.extend(e.clone());
    }
    Ok(CheckReport {
        check: check.into(),
        params,
        degree: spec.degree,
        ok: mismatch.is_none(),
        first_mismatch: mismatch.map(|m| m.to_json()),
        contributors,
    })
}

/// Product side against `Σ_λ ch L(λ) ch V^λ`, coefficient by coefficient.
pub fn verify_duality(spec: &DualPairSpec) -> Result<CheckReport> {
    let product = spec.product_side()?;
    let sum = spec.sum_side()?;
    report("duality", spec, json!({}), &product, &sum, Vec::new())
}

/// `Σ_k (−1)^k ch H_k` against `ch L · D`, with `ch L` read off the product side.
pub fn verify_euler_poincare(spec: &DualPairSpec, label: &Label) -> Result<CheckReport> {
    verify_euler_poincare_with(spec, label, &spec.solve_product_side()?)
}

/// [`verify_euler_poincare`] against a precomputed [`DualPairSpec::solve_product_side`].
pub fn verify_euler_poincare_with(
    spec: &DualPairSpec,
    label: &Label,
    solved: &BTreeMap<Label, TruncatedSeries>,
) -> Result<CheckReport> {
    spec.check_label(label)?;
    let euler = spec.euler_characteristic(label)?;
    let ch = solved.get(label).cloned().unwrap_or_else(|| TruncatedSeries::zero(spec.module_space(), spec.degree));
    let rhs = ch.mul(&spec.denominator()?)?;
    report("euler-poincare", spec, json!({ "lambda": label.to_string() }), &euler, &rhs, Vec::new())
}

/// `ω` on the symmetric functions in `x`.
pub fn omega_x(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    schur_decompose(s, X)?.omega().expand(s.space(), X, s.bound())
}

/// `ωˣ(ch H_k(u₋))` on the super side; `ω(ch H_k)` and `ω(ch L)` on the negative side.
pub fn verify_omega_transport(spec: &DualPairSpec, label: &Label, k: u32) -> Result<CheckReport> {
    let source_tag = spec.source_tag();
    let classical = DualPairSpec::new(Side::Positive, source_tag, spec.d(), Sizes::default(), spec.degree)?;
    let extra = json!({ "lambda": label.to_string(), "k": k });
    let members = classical.members(label)?;
    let mut source = TruncatedSeries::zero(classical.module_space(), spec.degree);
    for m in &members {
        source.add_assign(&classical.homology_char(m, k)?.character)?;
    }
    let target = spec.homology_char(label, k)?;
    let contributors = target.contributors.iter().map(Contributor::to_json).collect();
    match spec.side {
        Side::Super => {
            let space = spec.module_space();
            let mut image = TruncatedSeries::zero(space, spec.degree);
            if spec.tag == AlgebraTag::A {
                for (key, c) in schur_decompose_multi(&source, &[X, XB])? {
                    let a = super_specialize(&key[0], space, XI, Y, spec.degree)?;
                    let b = super_specialize(&key[1], space, ETA_INV, X_INV, spec.degree)?;
                    image.add_scaled(&a.mul(&b)?, &c)?;
                }
            } else {
                for (mu, c) in schur_decompose(&source, X)?.iter() {
                    image.add_scaled(&super_specialize(mu, space, ETA, X, spec.degree)?, c)?;
                }
            }
            report("omega-transport", spec, extra, &image, &target.character, contributors)
        }
        Side::Negative => {
            let image = omega_x(&source)?;
            let r = report("omega-transport", spec, extra.clone(), &image, &target.character, contributors)?;
            if !r.ok || k > 0 {
                return Ok(r);
            }
            let chl = classical.module_char(label)?;
            report("omega-transport", spec, extra, &omega_x(&chl)?, &spec.module_char(label)?, r.contributors)
        }
        Side::Positive => Err(Error::Inadmissible("ω-transport needs the super or negative side".into())),
    }
}

/// `(w∘Λ + 2ρ_c | w∘Λ)_c` for every `w ∈ W⁰ₖ`, `k ≤ kmax`, against the value at `Λ`.
pub fn verify_dot_casimir(tag: AlgebraTag, lambda: &WeightCoords, kmax: u32) -> Result<(BigRational, bool)> {
    if lambda.tag != tag {
        return Err(Error::TagMismatch(format!("{} weight for {tag}", lambda.tag)));
    }
    let base = casimir_c(lambda)?;
    for k in 0..=kmax {
        for (_, mu, _) in homology_weights(lambda, k)? {
            if casimir_c(&mu)? != base {
                return Ok((base, false));
            }
        }
    }
    Ok((base, true))
}

fn classical(side: Side, tag: AlgebraTag, d: u32, sizes: Sizes, degree: u32) -> Result<DualPairSpec> {
    DualPairSpec::new(side, tag, d, sizes, degree)
}

/// `ch H_k(u₋; L(x∞, Λˣ(λ)))` for a single `λ`.
pub fn classical_homology_char(
    tag: AlgebraTag,
    label: &Label,
    d: u32,
    k: u32,
    degree: u32,
) -> Result<HomologyCharacter> {
    classical(Side::Positive, tag, d, Sizes::default(), degree)?.homology_char(label, k)
}

/// `ch L(x∞, Λˣ(λ))`, or the sum over `{λ, λ̃}` for `O(2ℓ)`.
pub fn classical_module_char(tag: AlgebraTag, label: &Label, d: u32, degree: u32) -> Result<TruncatedSeries> {
    classical(Side::Positive, tag, d, Sizes::default(), degree)?.module_char(label)
}

/// Hatted `ch H_k(ū₋; L(ḡ, Λ̂ˣ_f(λ)))`.
pub fn super_homology_char(
    tag: AlgebraTag,
    label: &Label,
    sizes: Sizes,
    d: u32,
    k: u32,
    degree: u32,
) -> Result<HomologyCharacter> {
    classical(Side::Super, tag, d, sizes, degree)?.homology_char(label, k)
}

/// Hatted `ch L(ḡ, Λ̂ˣ_f(λ))`.
pub fn super_module_char(tag: AlgebraTag, label: &Label, sizes: Sizes, d: u32, degree: u32) -> Result<TruncatedSeries> {
    classical(Side::Super, tag, d, sizes, degree)?.module_char(label)
}

/// `ch H_k(u₋; L(x∞, Λˣ₋(λ)))` for `x ∈ {d, c, b⁰}`.
pub fn negative_homology_char(
    tag: AlgebraTag,
    label: &Label,
    d: u32,
    k: u32,
    degree: u32,
) -> Result<HomologyCharacter> {
    classical(Side::Negative, tag, d, Sizes::default(), degree)?.homology_char(label, k)
}

/// `ch L(x∞, Λˣ₋(λ))` for `x ∈ {d, c, b⁰}`.
pub fn negative_module_char(tag: AlgebraTag, label: &Label, d: u32, degree: u32) -> Result<TruncatedSeries> {
    classical(Side::Negative, tag, d, Sizes::default(), degree)?.module_char(label)
}

/// `Λ̂ˣ_f(λ)` for a super spec.
pub fn super_highest_weight(spec: &DualPairSpec, label: &Label) -> Result<crate::weights::SuperWeight> {
    match label {
        Label::Gl(g) => lambda_super_f_a(g, spec.sizes),
        Label::Part(p) => lambda_super_f(SuperTag::from_classical(spec.tag)?, p, spec.sizes, spec.d()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Label {
        Label::Part(s.parse().unwrap())
    }

    fn spec(side: Side, tag: AlgebraTag, d: u32, sizes: Sizes, degree: u32) -> DualPairSpec {
        DualPairSpec::new(side, tag, d, sizes, degree).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(DualPairSpec::new(Side::Negative, AlgebraTag::A, 2, Sizes::default(), 3).is_err());
        assert!(DualPairSpec::new(Side::Positive, AlgebraTag::B0, 2, Sizes::default(), 3).is_err());
        assert!(DualPairSpec::new(Side::Super, AlgebraTag::C, 2, Sizes::new(1, 0, 1, 1), 3).is_err());
        assert!(DualPairSpec::new(Side::Positive, AlgebraTag::C, 3, Sizes::default(), 3).is_err());
    }

    #[test]
    fn homology_examples() {
        let c = spec(Side::Positive, AlgebraTag::C, 2, Sizes::default(), 5);
        let h = c.homology_char(&p("-"), 1).unwrap();
        let s4 = schur_poly(&"4".parse().unwrap(), c.module_space(), X, 5).unwrap();
        assert_eq!(h.character, s4);
        let h0 = c.homology_char(&p("-"), 0).unwrap();
        assert_eq!(h0.character, TruncatedSeries::one(c.module_space(), 5));

        let a = spec(Side::Positive, AlgebraTag::A, 1, Sizes::default(), 4);
        let h = a.homology_char(&Label::Gl("0".parse().unwrap()), 1).unwrap();
        assert_eq!(h.contributors.len(), 1);
        assert_eq!(h.contributors[0].lambda_w, LambdaW::Pair("2".parse().unwrap(), "2".parse().unwrap()));

        let s = spec(Side::Super, AlgebraTag::C, 2, Sizes::new(0, 0, 1, 1), 5);
        let h = s.homology_char(&p("-"), 1).unwrap();
        assert_eq!(h.contributors.len(), 1);
        assert_eq!(h.character.to_string(), "eta1^4 + eta1^3*x1");

        let narrow = spec(Side::Super, AlgebraTag::C, 2, Sizes::new(0, 0, 1, 0), 8);
        let wide = spec(Side::Positive, AlgebraTag::C, 2, Sizes::default(), 8);
        for k in 0..=4 {
            let all = wide.homology_char(&p("-"), k).unwrap().contributors.len();
            let kept = narrow.homology_char(&p("-"), k).unwrap();
            assert!(kept.contributors.iter().all(|c| c.lambda_w.single().unwrap().len() <= 1));
            assert!(kept.contributors.len() <= all);
        }

        let n = spec(Side::Negative, AlgebraTag::D, 2, Sizes::default(), 5);
        let h = n.homology_char(&p("-"), 1).unwrap();
        let s1111 = schur_poly(&"1,1,1,1".parse().unwrap(), n.module_space(), X, 5).unwrap();
        assert_eq!(h.character, s1111);
    }

    #[test]
    fn small_module_characters() {
        let c = spec(Side::Positive, AlgebraTag::C, 2, Sizes::default(), 0);
        assert_eq!(c.module_char(&p("-")).unwrap(), TruncatedSeries::one(c.module_space(), 0));
        let c = spec(Side::Positive, AlgebraTag::C, 2, Sizes::default(), 4);
        assert!(c.module_char(&p("-")).unwrap().has_nonnegative_coefficients());
        let s = spec(Side::Super, AlgebraTag::C, 2, Sizes::new(0, 0, 1, 1), 0);
        assert_eq!(s.module_char(&p("-")).unwrap(), TruncatedSeries::one(s.module_space(), 0));
    }

    #[test]
    fn duality_examples() {
        for s in [
            spec(Side::Positive, AlgebraTag::C, 2, Sizes::default(), 4),
            spec(Side::Positive, AlgebraTag::A, 1, Sizes::default(), 3),
            spec(Side::Positive, AlgebraTag::D, 2, Sizes::default(), 3),
            spec(Side::Positive, AlgebraTag::D, 3, Sizes::default(), 3),
            spec(Side::Positive, AlgebraTag::B, 2, Sizes::default(), 3),
            spec(Side::Super, AlgebraTag::C, 2, Sizes::new(0, 0, 1, 1), 3),
            spec(Side::Super, AlgebraTag::A, 1, Sizes::new(0, 0, 1, 1), 3),
            spec(Side::Super, AlgebraTag::A, 1, Sizes::new(1, 1, 0, 1), 3),
            spec(Side::Super, AlgebraTag::D, 2, Sizes::new(0, 0, 1, 1), 3),
            spec(Side::Super, AlgebraTag::D, 3, Sizes::new(0, 0, 1, 1), 3),
            spec(Side::Super, AlgebraTag::B, 2, Sizes::new(0, 0, 1, 1), 3),
            spec(Side::Negative, AlgebraTag::D, 2, Sizes::default(), 3),
            spec(Side::Negative, AlgebraTag::C, 2, Sizes::default(), 3),
            spec(Side::Negative, AlgebraTag::C, 3, Sizes::default(), 3),
            spec(Side::Negative, AlgebraTag::B0, 2, Sizes::default(), 3),
        ] {
            let r = verify_duality(&s).unwrap();
            assert!(r.ok, "{}", r.to_json());
        }
    }

    #[test]
    fn euler_poincare_examples() {
        let c = spec(Side::Positive, AlgebraTag::C, 2, Sizes::default(), 4);
        assert!(verify_euler_poincare(&c, &p("-")).unwrap().ok);
        let s = spec(Side::Super, AlgebraTag::C, 2, Sizes::new(0, 0, 1, 1), 4);
        assert!(verify_euler_poincare(&s, &p("1")).unwrap().ok);
        let n = spec(Side::Negative, AlgebraTag::D, 2, Sizes::default(), 4);
        assert!(verify_euler_poincare(&n, &p("1")).unwrap().ok);
    }

    #[test]
    fn omega_examples() {
        let s = spec(Side::Super, AlgebraTag::C, 2, Sizes::new(0, 0, 1, 1), 5);
        for k in 0..=2 {
            assert!(verify_omega_transport(&s, &p("-"), k).unwrap().ok);
        }
        let a = spec(Side::Super, AlgebraTag::A, 1, Sizes::new(0, 0, 1, 1), 5);
        assert!(verify_omega_transport(&a, &Label::Gl("0".parse().unwrap()), 1).unwrap().ok);
        let n = spec(Side::Negative, AlgebraTag::D, 2, Sizes::default(), 5);
        assert!(verify_omega_transport(&n, &p("1"), 0).unwrap().ok);
    }
}
