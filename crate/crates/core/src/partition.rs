//! Integer partitions: validation, hook lengths, standard tableau counts,
//! and the degree threshold used by the ladder-operator construction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::CoreError;
use crate::scalar::factorial;

/// Weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CoreError> {
        let ok = parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0);
        if !ok {
            return Err(CoreError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// i-th part, 1-based, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Multiplicity of each distinct part value, in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Hook length of each cell: arm plus leg plus one.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (1..=row)
                    .map(|j| {
                        let arm = row - j;
                        let leg = conj.part(j as usize) - (i as u32 + 1);
                        arm + leg + 1
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of standard tableaux of this shape: n! over the product of
    /// hook lengths. The division is exact.
    pub fn tableaux_count(&self) -> BigUint {
        let mut hooks = BigUint::one();
        for row in self.hook_lengths() {
            for h in row {
                hooks *= BigUint::from(h);
            }
        }
        let n = factorial(self.size());
        let (q, r) = num_integer::Integer::div_rem(&n, &hooks);
        assert!(r.is_zero(), "hook product must divide n!");
        q
    }

    /// Largest degree below which ladder degrees can fail to be critical:
    /// first part plus number of parts. Every degree at or above this
    /// threshold is critical.
    pub fn critical_threshold(&self) -> i64 {
        self.part(1) as i64 + self.len() as i64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = CoreError;

    /// Parses comma-separated parts, e.g. "2,2". Empty input (or "()") is
    /// the empty partition; surrounding parentheses are optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed);
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut offset = 0usize;
        for tok in inner.split(',') {
            let t = tok.trim();
            let pos = offset + (tok.len() - tok.trim_start().len());
            let v: u32 = t.parse().map_err(|_| CoreError::Parse {
                position: pos,
                message: format!("expected a positive integer part, found {:?}", t),
            })?;
            if v == 0 {
                return Err(CoreError::Parse {
                    position: pos,
                    message: "parts must be positive".into(),
                });
            }
            parts.push(v);
            offset += tok.len() + 1;
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Independent count of standard tableaux by corner-removal recursion.
    fn syt_count(parts: &[u32]) -> BigUint {
        if parts.is_empty() {
            return BigUint::one();
        }
        let mut total = BigUint::zero();
        for i in 0..parts.len() {
            let is_corner = parts[i] > 0 && (i + 1 == parts.len() || parts[i] > parts[i + 1]);
            if !is_corner {
                continue;
            }
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            if smaller[i] == 0 {
                smaller.remove(i);
            }
            total += syt_count(&smaller);
        }
        total
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![2, 2]).is_ok());
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn basic_shape_data() {
        let lam = p(&[5, 5, 4, 2, 2]);
        assert_eq!(lam.size(), 18);
        assert_eq!(lam.len(), 5);
        assert_eq!(lam.part(3), 4);
        assert_eq!(lam.part(9), 0);
        assert_eq!(lam.conjugate(), p(&[5, 5, 3, 3, 2]));
        assert_eq!(lam.conjugate().conjugate(), lam);
        assert_eq!(lam.multiplicities(), vec![(5, 2), (4, 1), (2, 2)]);
        assert_eq!(lam.critical_threshold(), 10);
        assert_eq!(p(&[2, 2]).critical_threshold(), 4);
        assert_eq!(Partition::empty().critical_threshold(), 0);
    }

    #[test]
    fn hooks_and_tableau_count() {
        let lam = p(&[2, 2]);
        assert_eq!(lam.hook_lengths(), vec![vec![3, 2], vec![2, 1]]);
        assert_eq!(lam.tableaux_count(), BigUint::from(2u32));
        assert_eq!(p(&[3, 1]).tableaux_count(), BigUint::from(3u32));
        assert_eq!(Partition::empty().tableaux_count(), BigUint::one());
    }

    #[test]
    fn tableau_count_matches_corner_recursion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(0..5usize);
            let mut parts: Vec<u32> = (0..rows).map(|_| rng.gen_range(1..6u32)).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts.clone()).unwrap();
            assert_eq!(lam.tableaux_count(), syt_count(&parts), "shape {:?}", parts);
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,2".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("(5, 5, 4, 2, 2)".parse::<Partition>().unwrap(), p(&[5, 5, 4, 2, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[2, 2]).to_string(), "(2,2)");
        assert_eq!(Partition::empty().to_string(), "()");
        assert!(matches!(
            "2,x".parse::<Partition>(),
            Err(CoreError::Parse { position: 2, .. })
        ));
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
    }

    #[test]
    fn serialization_is_a_plain_sequence() {
        let s = serde_json::to_string(&p(&[2, 2])).unwrap();
        assert_eq!(s, "[2,2]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
    }
}
