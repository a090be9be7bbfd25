//! Sparse truncated Laurent series over exact integers.
//!
//! Exponents of half-unit alphabets are stored doubled. Exponents of the
//! sign alphabet are reduced mod 2.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Raw exponent vector over all variables of a [`Space`].
pub type Exps = SmallVec<[i16; 16]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphabetKind {
    /// Counts toward the truncation degree.
    Module,
    /// Degree zero, Laurent exponents allowed.
    Group,
    /// A variable squaring to one.
    Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub name: String,
    pub kind: AlphabetKind,
    pub size: usize,
    #[serde(default)]
    pub half: bool,
}

impl Alphabet {
    pub fn module(name: &str, size: usize) -> Self {
        Alphabet { name: name.into(), kind: AlphabetKind::Module, size, half: false }
    }

    pub fn group(name: &str, size: usize, half: bool) -> Self {
        Alphabet { name: name.into(), kind: AlphabetKind::Group, size, half }
    }

    pub fn sign(name: &str) -> Self {
        Alphabet { name: name.into(), kind: AlphabetKind::Sign, size: 1, half: false }
    }
}

/// An ordered list of alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    alphabets: Vec<Alphabet>,
    offsets: Vec<usize>,
    nvars: usize,
    module_vars: Vec<usize>,
    sign_vars: Vec<usize>,
}

impl Space {
    pub fn new(alphabets: Vec<Alphabet>) -> Result<Arc<Space>> {
        let mut offsets = Vec::with_capacity(alphabets.len());
        let mut nvars = 0;
        let mut module_vars = Vec::new();
        let mut sign_vars = Vec::new();
        for (i, a) in alphabets.iter().enumerate() {
            if alphabets[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Incompatible(format!("duplicate alphabet {}", a.name)));
            }
            if a.half && a.kind != AlphabetKind::Group {
                return Err(Error::Incompatible(format!("half exponents only for group alphabets ({})", a.name)));
            }
            if a.kind == AlphabetKind::Sign && a.size != 1 {
                return Err(Error::Incompatible("sign alphabet must have one variable".into()));
            }
            offsets.push(nvars);
            for v in nvars..nvars + a.size {
                match a.kind {
                    AlphabetKind::Module => module_vars.push(v),
                    AlphabetKind::Sign => sign_vars.push(v),
                    AlphabetKind::Group => {}
                }
            }
            nvars += a.size;
        }
        Ok(Arc::new(Space { alphabets, offsets, nvars, module_vars, sign_vars }))
    }

    pub fn alphabets(&self) -> &[Alphabet] {
        &self.alphabets
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.alphabets.iter().position(|a| a.name == name)
    }

    pub fn alphabet(&self, name: &str) -> Result<&Alphabet> {
        self.position(name)
            .map(|i| &self.alphabets[i])
            .ok_or_else(|| Error::Incompatible(format!("no alphabet named {name}")))
    }

    /// Global index of variable `i` (0-based) of the named alphabet.
    pub fn var(&self, name: &str, i: usize) -> Result<usize> {
        let p = self.position(name).ok_or_else(|| Error::Incompatible(format!("no alphabet named {name}")))?;
        if i >= self.alphabets[p].size {
            return Err(Error::Incompatible(format!("{name} has only {} variables", self.alphabets[p].size)));
        }
        Ok(self.offsets[p] + i)
    }

    /// Range of global indices of the named alphabet.
    pub fn range(&self, name: &str) -> Result<std::ops::Range<usize>> {
        let p = self.position(name).ok_or_else(|| Error::Incompatible(format!("no alphabet named {name}")))?;
        Ok(self.offsets[p]..self.offsets[p] + self.alphabets[p].size)
    }

    pub fn zero_exps(&self) -> Exps {
        SmallVec::from_elem(0, self.nvars)
    }

    /// Module degree of an exponent vector.
    pub fn degree(&self, e: &[i16]) -> i64 {
        self.module_vars.iter().map(|&v| e[v] as i64).sum()
    }

    fn normalize(&self, e: &mut [i16]) {
        for &v in &self.sign_vars {
            e[v] = e[v].rem_euclid(2);
        }
    }

    fn var_label(&self, v: usize) -> (String, bool) {
        let p = self.offsets.partition_point(|&o| o <= v) - 1;
        let a = &self.alphabets[p];
        if a.kind == AlphabetKind::Sign {
            (a.name.clone(), false)
        } else {
            (format!("{}{}", a.name, v - self.offsets[p] + 1), a.half)
        }
    }

    fn label_index(&self) -> FxHashMap<String, usize> {
        (0..self.nvars).map(|v| (self.var_label(v).0, v)).collect()
    }
}

/// A factor `(1 ± m)^{±1}` for [`expand_product`].
#[derive(Debug, Clone)]
pub struct Factor {
    pub mono: Exps,
    pub plus: bool,
    pub inverse: bool,
}

/// A truncated series on a [`Space`].
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    space: Arc<Space>,
    bound: u32,
    terms: FxHashMap<Exps, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(space: &Arc<Space>, bound: u32) -> Self {
        TruncatedSeries { space: space.clone(), bound, terms: FxHashMap::default() }
    }

    pub fn one(space: &Arc<Space>, bound: u32) -> Self {
        Self::monomial(space, bound, space.zero_exps(), BigInt::one())
    }

    pub fn monomial(space: &Arc<Space>, bound: u32, e: Exps, c: BigInt) -> Self {
        let mut s = Self::zero(space, bound);
        s.add_term(e, c);
        s
    }

    /// The single variable `name_{i+1}` to the first power (raw units).
    pub fn var(space: &Arc<Space>, bound: u32, name: &str, i: usize) -> Result<Self> {
        let mut e = space.zero_exps();
        let v = space.var(name, i)?;
        e[v] = if space.alphabet(name)?.half { 2 } else { 1 };
        Ok(Self::monomial(space, bound, e, BigInt::one()))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i16]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exps, &BigInt)> {
        self.terms.iter()
    }

    /// Adds `c·x^e`, dropping it when beyond the bound.
    pub fn add_term(&mut self, mut e: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let deg = self.space.degree(&e);
        if deg > self.bound as i64 {
            return;
        }
        self.space.normalize(&mut e);
        accumulate(&mut self.terms, e, c);
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::Incompatible(format!("degree bounds {} and {}", self.bound, other.bound)));
        }
        if !Arc::ptr_eq(&self.space, &other.space) && *self.space != *other.space {
            return Err(Error::Incompatible("different alphabets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), -c);
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check(other)?;
        for (e, c) in &other.terms {
            accumulate(&mut self.terms, e.clone(), c.clone());
        }
        Ok(())
    }

    /// Adds `c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &BigInt) -> Result<()> {
        self.check(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (e, a) in &other.terms {
            accumulate(&mut self.terms, e.clone(), a * c);
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space, self.bound);
        }
        TruncatedSeries {
            space: self.space.clone(),
            bound: self.bound,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &[i16]) -> Self {
        let mut out = Self::zero(&self.space, self.bound);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            for (x, y) in f.iter_mut().zip(m) {
                *x += y;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let bound = self.bound as i64;
        let mut buckets: Vec<Vec<(&Exps, &BigInt)>> = vec![Vec::new(); self.bound as usize + 1];
        for (e, c) in &large.terms {
            let d = self.space.degree(e);
            if (0..=bound).contains(&d) {
                buckets[d as usize].push((e, c));
            }
        }
        let mut out: FxHashMap<Exps, BigInt> = FxHashMap::default();
        let sign_vars = &self.space.sign_vars;
        for (e, c) in &small.terms {
            let d = self.space.degree(e);
            if d > bound {
                continue;
            }
            let top = (bound - d).min(bound);
            for bucket in buckets.iter().take(top as usize + 1) {
                for &(f, a) in bucket {
                    let mut g: Exps = e.iter().zip(f.iter()).map(|(x, y)| x + y).collect();
                    for &v in sign_vars {
                        g[v] = g[v].rem_euclid(2);
                    }
                    accumulate(&mut out, g, c * a);
                }
            }
        }
        Ok(TruncatedSeries { space: self.space.clone(), bound: self.bound, terms: out })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(&self.space, self.bound);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Drops terms above a smaller bound.
    pub fn truncate(&self, bound: u32) -> Self {
        let mut out = Self::zero(&self.space, bound);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Sets variable `i` of the named alphabet to zero.
    pub fn substitute_zero(&self, name: &str, i: usize) -> Result<Self> {
        let v = self.space.var(name, i)?;
        let mut out = Self::zero(&self.space, self.bound);
        for (e, c) in &self.terms {
            if e[v] < 0 {
                return Err(Error::Incompatible(format!("negative exponent of {name}{}", i + 1)));
            }
            if e[v] == 0 {
                out.add_term(e.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Sets every variable of the named alphabets to one.
    pub fn evaluate_at_one(&self, names: &[&str]) -> Result<Self> {
        let mut vars = Vec::new();
        for n in names {
            vars.extend(self.space.range(n)?);
        }
        let mut out = Self::zero(&self.space, self.bound);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            for &v in &vars {
                f[v] = 0;
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Moves the series into `target`, mapping alphabets by name through
    /// `rename` (unlisted names map to themselves). Module variables without
    /// an image are set to zero; other variables without an image must not
    /// occur.
    pub fn embed(&self, target: &Arc<Space>, bound: u32, rename: &[(&str, &str)]) -> Result<Self> {
        let mut map: Vec<Option<(usize, bool)>> = vec![None; self.space.nvars];
        for (p, a) in self.space.alphabets.iter().enumerate() {
            let dst = rename.iter().find(|(s, _)| *s == a.name).map(|(_, d)| *d).unwrap_or(&a.name);
            if let Some(q) = target.position(dst) {
                let b = &target.alphabets[q];
                for i in 0..a.size.min(b.size) {
                    let scale = match (a.half, b.half) {
                        (false, true) => 2,
                        _ => 1,
                    };
                    if a.half && !b.half {
                        return Err(Error::Incompatible(format!(
                            "cannot embed half alphabet {} into {}",
                            a.name, b.name
                        )));
                    }
                    map[self.space.offsets[p] + i] = Some((target.offsets[q] + i, scale == 2));
                }
            }
        }
        let mut out = Self::zero(target, bound);
        'term: for (e, c) in &self.terms {
            let mut f = target.zero_exps();
            for (v, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[v] {
                    Some((w, dbl)) => f[w] += if dbl { 2 * x } else { x },
                    None => {
                        if self.space.degree_var(v) {
                            continue 'term;
                        }
                        return Err(Error::Incompatible(format!(
                            "variable {} has no image",
                            self.space.var_label(v).0
                        )));
                    }
                }
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Lowest module degree among the terms.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.space.degree(e)).min()
    }

    /// Highest module degree among the terms.
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.space.degree(e)).max()
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(Exps, BigInt)> {
        let mut v: Vec<(Exps, BigInt)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| {
            let da = self.space.degree(&a.0);
            let db = self.space.degree(&b.0);
            da.cmp(&db).then_with(|| b.0.cmp(&a.0))
        });
        v
    }

    /// First differing term in canonical order, if any.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<Mismatch>> {
        let diff = self.sub(other)?;
        Ok(diff.sorted_terms().into_iter().next().map(|(e, _)| Mismatch {
            monomial: self.space.format_monomial(&e),
            left: self.coeff(&e),
            right: other.coeff(&e),
        }))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let mut exp = serde_json::Map::new();
                for (v, &x) in e.iter().enumerate() {
                    if x != 0 {
                        let (label, half) = self.space.var_label(v);
                        let val = if half && x % 2 != 0 {
                            json!(format!("{x}/2"))
                        } else if half {
                            json!(x / 2)
                        } else {
                            json!(x)
                        };
                        exp.insert(label, val);
                    }
                }
                json!({ "exp": exp, "coeff": c.to_string() })
            })
            .collect();
        json!({
            "alphabets": self.space.alphabets,
            "degree_bound": self.bound,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let alphabets: Vec<Alphabet> =
            serde_json::from_value(v.get("alphabets").cloned().ok_or_else(|| bad("missing alphabets"))?)
                .map_err(|e| Error::Parse(e.to_string()))?;
        let bound = v.get("degree_bound").and_then(Value::as_u64).ok_or_else(|| bad("missing degree_bound"))? as u32;
        let space = Space::new(alphabets)?;
        let index = space.label_index();
        let mut out = Self::zero(&space, bound);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let c: BigInt = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("missing coeff"))?
                .parse()
                .map_err(|_| bad("bad coeff"))?;
            let mut e = space.zero_exps();
            for (k, x) in t.get("exp").and_then(Value::as_object).ok_or_else(|| bad("missing exp"))? {
                let &var = index.get(k).ok_or_else(|| bad("unknown variable"))?;
                let half = space.var_label(var).1;
                let raw = parse_exponent(x, half).ok_or_else(|| bad("bad exponent"))?;
                e[var] = raw;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

fn parse_exponent(x: &Value, half: bool) -> Option<i16> {
    let scale = if half { 2 } else { 1 };
    if let Some(i) = x.as_i64() {
        return i16::try_from(i * scale).ok();
    }
    let s = x.as_str()?;
    if let Some(num) = s.strip_suffix("/2") {
        if !half {
            return None;
        }
        return num.trim().parse::<i16>().ok();
    }
    s.trim().parse::<i16>().ok().map(|i| i * scale as i16)
}

impl Space {
    fn degree_var(&self, v: usize) -> bool {
        self.module_vars.contains(&v)
    }

    /// Human-readable monomial.
    pub fn format_monomial(&self, e: &[i16]) -> String {
        let mut parts = Vec::new();
        for (v, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (label, half) = self.var_label(v);
            let exp = if half {
                if x % 2 == 0 {
                    (x / 2).to_string()
                } else {
                    format!("{x}/2")
                }
            } else {
                x.to_string()
            };
            if exp == "1" {
                parts.push(label);
            } else {
                parts.push(format!("{label}^{exp}"));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A coefficient discrepancy between two series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub monomial: String,
    pub left: BigInt,
    pub right: BigInt,
}

impl Mismatch {
    pub fn to_json(&self) -> Value {
        json!({ "monomial": self.monomial, "left": self.left.to_string(), "right": self.right.to_string() })
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && *self.space == *other.space && self.terms == other.terms
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            let mono = self.space.format_monomial(e);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn accumulate(map: &mut FxHashMap<Exps, BigInt>, e: Exps, c: BigInt) {
    use std::collections::hash_map::Entry;
    match map.entry(e) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
    }
}

/// Expands `∏ (1 ± m)^{±1}` up to the bound.
pub fn expand_product(space: &Arc<Space>, bound: u32, factors: &[Factor]) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(space, bound);
    for f in factors {
        let deg = space.degree(&f.mono);
        if deg < 1 && f.inverse {
            return Err(Error::NonConvergent(space.format_monomial(&f.mono)));
        }
        let mut factor = TruncatedSeries::one(space, bound);
        let sign = if f.plus { BigInt::one() } else { -BigInt::one() };
        if f.inverse {
            // (1 ± m)^{-1} = Σ (∓m)^k
            let step = if f.plus { -BigInt::one() } else { BigInt::one() };
            let mut c = BigInt::one();
            let mut e = space.zero_exps();
            for _ in 1..=(bound as i64 / deg.max(1)) {
                c *= &step;
                for (x, y) in e.iter_mut().zip(f.mono.iter()) {
                    *x += y;
                }
                factor.add_term(e.clone(), c.clone());
            }
        } else {
            factor.add_term(f.mono.clone(), sign);
        }
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// Builds a factor from `(alphabet, index, raw exponent)` triples.
pub fn factor(space: &Space, vars: &[(&str, usize, i16)], plus: bool, inverse: bool) -> Result<Factor> {
    let mut mono = space.zero_exps();
    for &(n, i, x) in vars {
        mono[space.var(n, i)?] += x;
    }
    Ok(Factor { mono, plus, inverse })
}

/// Coefficient map ordered for deterministic iteration.
pub fn ordered(s: &TruncatedSeries) -> BTreeMap<Exps, BigInt> {
    s.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect()
}
