//! Partitions and generalized partitions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, rejecting increasing sequences.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts the entries into decreasing order first.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The part `λ_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1) as usize;
        let mut out = vec![0u32; first];
        for &p in &self.0 {
            for c in out.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition(out)
    }

    /// `λ'_1 + λ'_2 ≤ d`.
    pub fn in_orthogonal(&self, d: u32) -> bool {
        let c = self.conjugate();
        c.part(1) + c.part(2) <= d
    }

    /// Replaces the first column by `d − λ'_1`.
    pub fn tilde(&self, d: u32) -> Result<Partition> {
        if !self.in_orthogonal(d) {
            return Err(Error::OutOfRange(format!("{self} is not in P(O({d}))")));
        }
        let mut cols = self.conjugate().0;
        let first = d - cols.first().copied().unwrap_or(0);
        if cols.is_empty() {
            cols.push(first);
        } else {
            cols[0] = first;
        }
        cols.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition::new(cols)?.conjugate())
    }

    /// `λ_{m+1} ≤ n`.
    pub fn is_hook(&self, m: usize, n: u32) -> bool {
        self.part(m + 1) <= n
    }

    /// Entrywise `self ⊆ other`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `Σ λ_i (λ_i − 2i + shift)` over 1-based `i`.
    pub fn content_sum(&self, shift: i64) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                p * (p - 2 * (i as i64 + 1) + shift)
            })
            .sum()
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `n`, by size.
    pub fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }

    /// All partitions of size at most `n` with at most `len` parts.
    pub fn all_up_to_len(n: u32, len: usize) -> Vec<Partition> {
        Partition::all_up_to(n).into_iter().filter(|p| p.len() <= len).collect()
    }
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// A weakly decreasing sequence of `d` integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GeneralizedPartition(Vec<i64>);

impl GeneralizedPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("depth must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(GeneralizedPartition(parts))
    }

    /// Pads a partition with zeros to depth `d`.
    pub fn from_partition(p: &Partition, d: usize) -> Result<Self> {
        if p.len() > d {
            return Err(Error::OutOfRange(format!("{p} has more than {d} parts")));
        }
        let mut v: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
        v.resize(d, 0);
        GeneralizedPartition::new(v)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `λ⁺` and `λ⁻` (the latter non-decreasing, of length `d`).
    pub fn split_pm(&self) -> (Partition, Vec<u32>) {
        let plus = self.0.iter().map(|&x| x.max(0) as u32).collect();
        let minus = self.0.iter().map(|&x| (-x).max(0) as u32).collect();
        (Partition::new(plus).expect("decreasing"), minus)
    }

    pub fn plus(&self) -> Partition {
        self.split_pm().0
    }

    /// Decreasing rearrangement of `λ⁻`.
    pub fn minus_sorted(&self) -> Partition {
        Partition::from_unsorted(self.split_pm().1)
    }

    /// `|λ⁺| + |λ⁻|`.
    pub fn abs_size(&self) -> u32 {
        self.0.iter().map(|x| x.unsigned_abs() as u32).sum()
    }

    /// All generalized partitions of depth `d` with `|λ⁺| + |λ⁻| ≤ n`.
    pub fn all_up_to(d: usize, n: u32) -> Vec<GeneralizedPartition> {
        let mut out = Vec::new();
        for plus_size in 0..=n {
            for plus in Partition::all_of_size(plus_size) {
                if plus.len() > d {
                    continue;
                }
                for minus in Partition::all_up_to(n - plus_size) {
                    if plus.len() + minus.len() > d {
                        continue;
                    }
                    let mut v = vec![0i64; d];
                    for (i, &p) in plus.parts().iter().enumerate() {
                        v[i] = p as i64;
                    }
                    for (i, &p) in minus.parts().iter().enumerate() {
                        v[d - 1 - i] = -(p as i64);
                    }
                    out.push(GeneralizedPartition(v));
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for GeneralizedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for GeneralizedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        GeneralizedPartition::new(parts)
    }
}

impl TryFrom<String> for GeneralizedPartition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GeneralizedPartition> for String {
    fn from(p: GeneralizedPartition) -> String {
        p.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("-").conjugate(), p("-"));
        assert_eq!(p("2,2").conjugate(), p("2,2"));
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
    }

    #[test]
    fn split_examples() {
        let g: GeneralizedPartition = "2,0,-1".parse().unwrap();
        let (plus, minus) = g.split_pm();
        assert_eq!(plus, p("2"));
        assert_eq!(minus, vec![0, 0, 1]);
        let z: GeneralizedPartition = "0,0".parse().unwrap();
        assert_eq!(z.split_pm(), (p("-"), vec![0, 0]));
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(p("1,1").tilde(4).unwrap(), p("1,1"));
        assert_eq!(p("1").tilde(4).unwrap(), p("1,1,1"));
        assert_eq!(p("-").tilde(3).unwrap(), p("1,1,1"));
        assert!(p("1,1,1").tilde(2).is_err());
    }

    #[test]
    fn hook_and_containment() {
        assert!(!p("5,5,1").is_hook(1, 1));
        assert!(p("2,2,1").is_hook(1, 2));
        assert!(p("-").contained_in(&p("3,1")));
        assert!(p("2,1").contained_in(&p("3,1")));
        assert!(!p("2,2").contained_in(&p("3,1")));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let g = GeneralizedPartition::all_up_to(2, 2);
        assert!(g.iter().all(|x| x.abs_size() <= 2));
        assert_eq!(g.len(), 8);
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("3,1").to_string(), "3,1");
        assert_eq!(p("-").to_string(), "-");
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!("2,0,-1".parse::<GeneralizedPartition>().unwrap().to_string(), "2,0,-1");
    }
}
