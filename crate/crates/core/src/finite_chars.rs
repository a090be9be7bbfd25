//! Characters of GL(d), Sp(d), O(d) and Pin(d) as Laurent polynomials in `z`
//! (with `ε` for odd orthogonal groups and half exponents for Pin).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{GeneralizedPartition, Partition};
use crate::series::{Alphabet, Space, TruncatedSeries};
use crate::symfunc::laurent_schur;

/// Name of the group alphabet.
pub const Z: &str = "z";
/// Name of the sign variable.
pub const EPS: &str = "eps";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    Sp,
    O,
    Pin,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::Sp => "Sp",
            Family::O => "O",
            Family::Pin => "Pin",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::GL),
            "sp" => Ok(Family::Sp),
            "o" => Ok(Family::O),
            "pin" => Ok(Family::Pin),
            _ => Err(Error::Parse(format!("unknown group family {s:?}"))),
        }
    }
}

/// A classical group `G` of a dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualGroup {
    pub family: Family,
    pub d: u32,
}

impl DualGroup {
    pub fn new(family: Family, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::OutOfRange("d must be positive".into()));
        }
        if matches!(family, Family::Sp | Family::Pin) && !d.is_multiple_of(2) {
            return Err(Error::OutOfRange(format!("{family}({d}) needs even d")));
        }
        Ok(DualGroup { family, d })
    }

    /// Number of `z` variables.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::GL => self.d as usize,
            _ => self.d as usize / 2,
        }
    }

    pub fn has_sign(&self) -> bool {
        self.family == Family::O && self.d % 2 == 1
    }

    pub fn half(&self) -> bool {
        self.family == Family::Pin
    }

    /// The alphabets a character of this group lives in.
    pub fn alphabets(&self, half: bool) -> Vec<Alphabet> {
        let mut v = vec![Alphabet::group(Z, self.rank(), half || self.half())];
        if self.has_sign() {
            v.push(Alphabet::sign(EPS));
        }
        v
    }

    pub fn space(&self) -> Arc<Space> {
        Space::new(self.alphabets(false)).expect("valid alphabets")
    }

    /// Membership of a partition in `P(G)` (not for GL).
    pub fn contains(&self, lambda: &Partition) -> bool {
        match self.family {
            Family::GL => lambda.len() <= self.d as usize,
            Family::Sp | Family::Pin => lambda.len() <= self.d as usize / 2,
            Family::O => lambda.in_orthogonal(self.d),
        }
    }

    /// Irreducible character of `V^λ` for a partition label.
    pub fn character(&self, lambda: &Partition) -> Result<TruncatedSeries> {
        match self.family {
            Family::GL => char_gl(&GeneralizedPartition::from_partition(lambda, self.d as usize)?, self.d),
            Family::Sp => char_sp(lambda, self.d),
            Family::O => char_o(lambda, self.d),
            Family::Pin => char_pin(lambda, self.d),
        }
    }
}

impl fmt::Display for DualGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.d)
    }
}

/// Root systems with a hyperoctahedral or symmetric Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

impl RootType {
    /// Doubled `ρ` in rank `r`.
    fn rho2(self, r: usize) -> Vec<i64> {
        (0..r)
            .map(|i| {
                let k = (r - i) as i64;
                match self {
                    RootType::A => 2 * (k - 1),
                    RootType::B => 2 * k - 1,
                    RootType::C => 2 * k,
                    RootType::D => 2 * (k - 1),
                }
            })
            .collect()
    }

    /// Elements as (permutation, signs, determinant).
    fn group(self, r: usize) -> Vec<(Vec<usize>, Vec<i64>, i64)> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..r).collect();
        let perms = all_perms(&mut perm, 0);
        for p in perms {
            let psign = perm_sign(&p);
            if self == RootType::A {
                out.push((p, vec![1; r], psign));
                continue;
            }
            for mask in 0u32..(1 << r) {
                let flips = mask.count_ones();
                if self == RootType::D && flips % 2 == 1 {
                    continue;
                }
                let signs: Vec<i64> = (0..r).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
                let det = psign * if flips % 2 == 1 { -1 } else { 1 };
                out.push((p.clone(), signs, det));
            }
        }
        out
    }
}

fn all_perms(v: &mut Vec<usize>, k: usize) -> Vec<Vec<usize>> {
    if k == v.len() {
        return vec![v.clone()];
    }
    let mut out = Vec::new();
    for i in k..v.len() {
        v.swap(k, i);
        out.extend(all_perms(v, k + 1));
        v.swap(k, i);
    }
    out
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

type Poly = HashMap<Vec<i64>, BigInt>;

fn alternant(t: RootType, mu2: &[i64]) -> Poly {
    let mut out: Poly = HashMap::new();
    for (p, s, det) in t.group(mu2.len()) {
        let mut e = vec![0i64; mu2.len()];
        for i in 0..mu2.len() {
            e[p[i]] = s[i] * mu2[i];
        }
        let c = out.entry(e).or_insert_with(BigInt::zero);
        *c += det;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn lead(p: &Poly) -> Option<(&Vec<i64>, &BigInt)> {
    p.iter().max_by(|a, b| a.0.cmp(b.0))
}

/// Exact division of Laurent polynomials; errors on a nonzero remainder.
fn divide(num: &Poly, den: &Poly) -> Result<Poly> {
    let (le, lc) = lead(den).ok_or_else(|| Error::InexactDivision("zero denominator".into()))?;
    let (le, lc) = (le.clone(), lc.clone());
    if !(lc.is_one() || (-&lc).is_one()) {
        return Err(Error::InexactDivision("leading coefficient is not a unit".into()));
    }
    let span: i64 = num.keys().chain(den.keys()).flatten().map(|x| x.abs()).max().unwrap_or(0) * 2 + 2;
    let mut rest = num.clone();
    let mut quot: Poly = HashMap::new();
    while let Some((e, c)) = lead(&rest).map(|(e, c)| (e.clone(), c.clone())) {
        let qe: Vec<i64> = e.iter().zip(&le).map(|(a, b)| a - b).collect();
        if qe.iter().any(|x| x.abs() > span) {
            return Err(Error::InexactDivision("alternant division left a remainder".into()));
        }
        let qc = &c * &lc;
        for (de, dc) in den {
            let k: Vec<i64> = qe.iter().zip(de).map(|(a, b)| a + b).collect();
            let slot = rest.entry(k.clone()).or_insert_with(BigInt::zero);
            *slot -= &qc * dc;
            if slot.is_zero() {
                rest.remove(&k);
            }
        }
        *quot.entry(qe).or_insert_with(BigInt::zero) += qc;
    }
    quot.retain(|_, c| !c.is_zero());
    Ok(quot)
}

/// Weyl character of the doubled highest weight `mu2` as a map of doubled exponents.
pub fn weyl_character2(t: RootType, mu2: &[i64]) -> Result<HashMap<Vec<i64>, BigInt>> {
    type Key = (RootType, Vec<i64>);
    type Cache = Mutex<HashMap<Key, HashMap<Vec<i64>, BigInt>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (t, mu2.to_vec());
    if let Some(v) = cache.lock().expect("character cache").get(&key) {
        return Ok(v.clone());
    }
    let rho = t.rho2(mu2.len());
    let shifted: Vec<i64> = mu2.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let q = divide(&alternant(t, &shifted), &alternant(t, &rho))?;
    cache.lock().expect("character cache").insert(key, q.clone());
    Ok(q)
}

fn to_series(space: &Arc<Space>, poly: &HashMap<Vec<i64>, BigInt>, sign: i16) -> Result<TruncatedSeries> {
    let z = space.range(Z)?;
    let half = space.alphabet(Z)?.half;
    let mut out = TruncatedSeries::zero(space, 0);
    for (e, c) in poly {
        let mut x = space.zero_exps();
        for (v, &a) in z.clone().zip(e) {
            x[v] = if half {
                a as i16
            } else {
                if a % 2 != 0 {
                    return Err(Error::Incompatible("half-integral weight in an integral alphabet".into()));
                }
                (a / 2) as i16
            };
        }
        if sign != 0 {
            x[space.var(EPS, 0)?] = sign;
        }
        out.add_term(x, c.clone());
    }
    Ok(out)
}

fn doubled(lambda: &Partition, r: usize) -> Result<Vec<i64>> {
    if lambda.len() > r {
        return Err(Error::OutOfRange(format!("{lambda} has more than {r} parts")));
    }
    Ok((1..=r).map(|i| 2 * lambda.part(i) as i64).collect())
}

/// `s_λ(z_1, …, z_d)` for a generalized partition of depth `d`.
pub fn char_gl(lambda: &GeneralizedPartition, d: u32) -> Result<TruncatedSeries> {
    if lambda.depth() != d as usize {
        return Err(Error::OutOfRange(format!("{lambda} does not have depth {d}")));
    }
    let g = DualGroup::new(Family::GL, d)?;
    laurent_schur(lambda, &g.space(), Z)
}

/// Symplectic character.
pub fn char_sp(lambda: &Partition, d: u32) -> Result<TruncatedSeries> {
    let g = DualGroup::new(Family::Sp, d)?;
    let mu2 = doubled(lambda, g.rank())?;
    to_series(&g.space(), &weyl_character2(RootType::C, &mu2)?, 0)
}

/// Orthogonal character; for odd `d` it carries `ε^{|λ|}`.
pub fn char_o(lambda: &Partition, d: u32) -> Result<TruncatedSeries> {
    let g = DualGroup::new(Family::O, d)?;
    if !g.contains(lambda) {
        return Err(Error::OutOfRange(format!("{lambda} is not in P(O({d}))")));
    }
    let r = g.rank();
    let space = g.space();
    if lambda.len() > r {
        let t = lambda.tilde(d)?;
        if d.is_multiple_of(2) {
            return char_o(&t, d);
        }
        let mu2 = doubled(&t, r)?;
        return to_series(&space, &weyl_character2(RootType::B, &mu2)?, (lambda.size() % 2) as i16);
    }
    let mu2 = doubled(lambda, r)?;
    if d % 2 == 1 {
        return to_series(&space, &weyl_character2(RootType::B, &mu2)?, (lambda.size() % 2) as i16);
    }
    let mut out = to_series(&space, &weyl_character2(RootType::D, &mu2)?, 0)?;
    if r > 0 && mu2[r - 1] > 0 {
        let mut other = mu2.clone();
        other[r - 1] = -other[r - 1];
        out.add_assign(&to_series(&space, &weyl_character2(RootType::D, &other)?, 0)?)?;
    }
    Ok(out)
}

/// Character of the Pin(d) module that does not factor through O(d).
pub fn char_pin(lambda: &Partition, d: u32) -> Result<TruncatedSeries> {
    let g = DualGroup::new(Family::Pin, d)?;
    let r = g.rank();
    let mu2: Vec<i64> = doubled(lambda, r)?.into_iter().map(|x| x + 1).collect();
    let space = g.space();
    let mut out = to_series(&space, &weyl_character2(RootType::D, &mu2)?, 0)?;
    let mut other = mu2.clone();
    other[r - 1] = -other[r - 1];
    out.add_assign(&to_series(&space, &weyl_character2(RootType::D, &other)?, 0)?)?;
    Ok(out)
}

/// Weyl dimension of the doubled highest weight, from the product formula.
pub fn weyl_dimension2(t: RootType, mu2: &[i64]) -> num_rational::BigRational {
    use num_rational::BigRational;
    let r = mu2.len();
    let rho = t.rho2(r);
    let a: Vec<i64> = mu2.iter().zip(&rho).map(|(x, y)| x + y).collect();
    let mut num = BigRational::one();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut v = vec![0; r];
            v[i] = 1;
            v[j] = -1;
            roots.push(v);
            if t != RootType::A {
                let mut w = vec![0; r];
                w[i] = 1;
                w[j] = 1;
                roots.push(w);
            }
        }
        match t {
            RootType::B => {
                let mut v = vec![0; r];
                v[i] = 1;
                roots.push(v);
            }
            RootType::C => {
                let mut v = vec![0; r];
                v[i] = 2;
                roots.push(v);
            }
            _ => {}
        }
    }
    for alpha in roots {
        let top: i64 = alpha.iter().zip(&a).map(|(x, y)| x * y).sum();
        let bot: i64 = alpha.iter().zip(&rho).map(|(x, y)| x * y).sum();
        num *= BigRational::new(top.into(), bot.into());
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn gl_examples() {
        let g = |s: &str| char_gl(&s.parse().unwrap(), 2).unwrap().to_string();
        assert_eq!(g("1,0"), "z1 + z2");
        assert_eq!(g("1,1"), "z1*z2");
        assert_eq!(g("0,-1"), "z2^-1 + z1^-1");
    }

    #[test]
    fn sp_examples() {
        assert_eq!(char_sp(&p("-"), 2).unwrap().to_string(), "1");
        assert_eq!(char_sp(&p("1"), 2).unwrap().to_string(), "z1 + z1^-1");
        let c = char_sp(&p("1,1"), 4).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.total(), BigInt::from(5));
        assert!(char_sp(&p("1,1"), 2).is_err());
    }

    #[test]
    fn o_examples() {
        assert_eq!(char_o(&p("-"), 3).unwrap().to_string(), "1");
        assert_eq!(char_o(&p("3"), 2).unwrap().to_string(), "z1^3 + z1^-3");
        assert_eq!(char_o(&p("1,1"), 3).unwrap().to_string(), "z1 + 1 + z1^-1");
        assert_eq!(char_o(&p("1"), 3).unwrap().to_string(), "z1*eps + eps + z1^-1*eps");
        assert!(char_o(&p("1,1,1"), 2).is_err());
    }

    #[test]
    fn pin_examples() {
        assert_eq!(char_pin(&p("-"), 2).unwrap().to_string(), "z1^1/2 + z1^-1/2");
        assert_eq!(char_pin(&p("2"), 2).unwrap().to_string(), "z1^5/2 + z1^-5/2");
        let c = char_pin(&p("-"), 4).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|(e, c)| c.is_one() && e.iter().all(|x| x.abs() == 1)));
        assert!(char_pin(&p("-"), 3).is_err());
    }
}
