//! Integer partitions and the words they index.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::pbw::ModeWord;

/// Parts stored weakly decreasing, all positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `m_{-r_1} ... m_{-r_k}` in canonical order.
    pub fn creation_word(&self) -> ModeWord {
        ModeWord::new(self.0.iter().map(|&p| -(p as i32)).collect())
    }

    /// `m_{s_k} ... m_{s_1}` in canonical order.
    pub fn annihilation_word(&self) -> ModeWord {
        ModeWord::new(self.0.iter().rev().map(|&p| p as i32).collect())
    }

    /// Inverse of [`creation_word`](Self::creation_word); `None` unless every
    /// letter is a creation mode.
    pub fn from_creation_word(w: &ModeWord) -> Option<Partition> {
        let idx = w.indices();
        idx.iter()
            .all(|&i| i < 0)
            .then(|| Partition::new(idx.iter().map(|&i| i.unsigned_abs()).collect()))
    }

    pub fn from_annihilation_word(w: &ModeWord) -> Option<Partition> {
        let idx = w.indices();
        idx.iter()
            .all(|&i| i > 0)
            .then(|| Partition::new(idx.iter().map(|&i| i as u32).collect()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, lexicographically ordered on their part lists
/// (so `[1,1] < [2]`).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 1..=n.min(max) {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `p(n)` by the standard part-size recurrence.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}

/// `||r|| = prod r_i * prod m_j!` over distinct parts with multiplicity `m_j`.
pub fn norm_coefficient(r: &Partition) -> BigInt {
    let mut out = BigInt::one();
    for &p in r.parts() {
        out *= p;
    }
    for (_, m) in r.multiplicities() {
        for k in 2..=m {
            out *= k;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(partitions(2), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(3), vec![p(&[1, 1, 1]), p(&[2, 1]), p(&[3])]);
        let counts: Vec<u64> = (0..=10).map(partition_count).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for n in 0..=12 {
            assert_eq!(partitions(n).len() as u64, partition_count(n));
        }
    }

    #[test]
    fn norms() {
        assert_eq!(norm_coefficient(&p(&[1; 10])), BigInt::from(3_628_800));
        assert_eq!(norm_coefficient(&p(&[5])), BigInt::from(5));
        assert_eq!(norm_coefficient(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(norm_coefficient(&p(&[2, 2, 1])), BigInt::from(8));
        assert_eq!(norm_coefficient(&Partition::empty()), BigInt::from(1));
    }

    #[test]
    fn words() {
        let r = p(&[1, 2, 2]);
        assert_eq!(r.parts(), &[2, 2, 1]);
        assert_eq!(r.creation_word().indices(), &[-2, -2, -1]);
        assert_eq!(r.annihilation_word().indices(), &[1, 2, 2]);
        assert!(r.creation_word().is_canonical());
        assert!(r.annihilation_word().is_canonical());
        assert_eq!(Partition::from_creation_word(&r.creation_word()), Some(r.clone()));
        assert_eq!(
            Partition::from_annihilation_word(&r.annihilation_word()),
            Some(r.clone())
        );
        assert_eq!(Partition::from_creation_word(&r.annihilation_word()), None);
        assert_eq!(r.to_string(), "[2,2,1]");
    }
}
