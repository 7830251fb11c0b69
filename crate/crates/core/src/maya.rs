//! Maya diagrams: subsets of the integers that agree with the half-filled
//! vacuum far away, stored as the two finite deviation sets. They label the
//! rational oscillator extensions; translations, flips, and symmetric
//! differences drive the whole operator calculus.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::CoreError;
use crate::partition::Partition;

/// Finite set of integers used both as flip sites and as operator kernels.
/// Kept sorted ascending, so negative entries precede non-negative ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<i64>,
}

impl IndexSet {
    pub fn new(mut indices: Vec<i64>) -> Result<Self, CoreError> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(CoreError::InvalidIndexSet(format!(
                "duplicate entries in {:?}",
                indices
            )));
        }
        Ok(IndexSet { indices })
    }

    pub fn empty() -> Self {
        IndexSet { indices: vec![] }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Number of negative entries.
    pub fn negatives(&self) -> usize {
        self.indices.iter().filter(|&&k| k < 0).count()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.indices.binary_search(&k).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.indices.iter().copied()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            indices: self.iter().filter(|&k| other.contains(k)).collect(),
        }
    }

    pub fn symmetric_difference(&self, other: &IndexSet) -> IndexSet {
        let mut out: Vec<i64> = self.iter().filter(|&k| !other.contains(k)).collect();
        out.extend(other.iter().filter(|&k| !self.contains(k)));
        out.sort_unstable();
        IndexSet { indices: out }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", k)?;
        }
        write!(f, "}}")
    }
}

impl FromStr for IndexSet {
    type Err = CoreError;

    /// Parses comma-separated integers, e.g. "2,3" or "-5,-4,-1,1,3,4".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(trimmed);
        if inner.trim().is_empty() {
            return Ok(IndexSet::empty());
        }
        let mut indices = Vec::new();
        let mut offset = 0usize;
        for tok in inner.split(',') {
            let t = tok.trim();
            let pos = offset + (tok.len() - tok.trim_start().len());
            let v: i64 = t.parse().map_err(|_| CoreError::Parse {
                position: pos,
                message: format!("expected an integer, found {:?}", t),
            })?;
            indices.push(v);
            offset += tok.len() + 1;
        }
        IndexSet::new(indices)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.indices.serialize(serializer)
    }
}

/// A subset of the integers containing all sufficiently negative integers
/// and omitting all sufficiently positive ones, stored as deviations from
/// the vacuum (exactly the negative integers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MayaDiagram {
    /// Members that are >= 0.
    filled_nonneg: BTreeSet<i64>,
    /// Non-members that are < 0.
    empty_neg: BTreeSet<i64>,
}

impl MayaDiagram {
    /// The vacuum: exactly the negative integers.
    pub fn vacuum() -> Self {
        MayaDiagram {
            filled_nonneg: BTreeSet::new(),
            empty_neg: BTreeSet::new(),
        }
    }

    pub fn contains(&self, k: i64) -> bool {
        if k >= 0 {
            self.filled_nonneg.contains(&k)
        } else {
            !self.empty_neg.contains(&k)
        }
    }

    /// Charge relative to the vacuum: members added minus members removed.
    pub fn index(&self) -> i64 {
        self.filled_nonneg.len() as i64 - self.empty_neg.len() as i64
    }

    /// Positions where this diagram deviates from the vacuum, sorted.
    pub fn index_set(&self) -> IndexSet {
        let mut v: Vec<i64> = self.empty_neg.iter().copied().collect();
        v.extend(self.filled_nonneg.iter().copied());
        IndexSet::new(v).expect("deviation sets are disjoint")
    }

    /// Diagram obtained by toggling membership at every site of K.
    pub fn from_index_set(k: &IndexSet) -> Self {
        MayaDiagram::vacuum().flip_set(k)
    }

    pub fn flip(&self, k: i64) -> MayaDiagram {
        let mut d = self.clone();
        if k >= 0 {
            if !d.filled_nonneg.remove(&k) {
                d.filled_nonneg.insert(k);
            }
        } else if !d.empty_neg.remove(&k) {
            d.empty_neg.insert(k);
        }
        d
    }

    pub fn flip_set(&self, ks: &IndexSet) -> MayaDiagram {
        let mut d = self.clone();
        for k in ks.iter() {
            d = d.flip(k);
        }
        d
    }

    /// Sites at which the two diagrams disagree; flipping them maps one
    /// diagram onto the other.
    pub fn symmetric_difference(&self, other: &MayaDiagram) -> IndexSet {
        self.index_set().symmetric_difference(&other.index_set())
    }

    /// The diagram shifted by n: contains k iff self contains k - n.
    pub fn translate(&self, n: i64) -> MayaDiagram {
        if n == 0 {
            return self.clone();
        }
        let mut candidates: BTreeSet<i64> = BTreeSet::new();
        for &k in &self.filled_nonneg {
            candidates.insert(k + n);
        }
        for &k in &self.empty_neg {
            candidates.insert(k + n);
        }
        // Sites whose vacuum membership changes under the shift.
        let (lo, hi) = if n > 0 { (0, n) } else { (n, 0) };
        for k in lo..hi {
            candidates.insert(k);
        }
        let mut d = MayaDiagram::vacuum();
        for k in candidates {
            let member = self.contains(k - n);
            if k >= 0 && member {
                d.filled_nonneg.insert(k);
            } else if k < 0 && !member {
                d.empty_neg.insert(k);
            }
        }
        d
    }

    /// True when every member of self is a member of other.
    pub fn is_subset_of(&self, other: &MayaDiagram) -> bool {
        self.filled_nonneg.iter().all(|&k| other.contains(k))
            && other.empty_neg.iter().all(|&k| !self.contains(k))
    }

    /// Smallest integer not in the diagram.
    pub fn first_gap(&self) -> i64 {
        let mut k = match self.empty_neg.iter().next() {
            Some(&e) => e,
            None => 0,
        };
        while self.contains(k) {
            k += 1;
        }
        k
    }

    /// Smallest `count` non-members, ascending. These index the
    /// normalizable eigenfunctions of the associated extension.
    pub fn complement_indices(&self, count: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(count);
        let mut k = self.first_gap();
        while out.len() < count {
            if !self.contains(k) {
                out.push(k);
            }
            k += 1;
        }
        out
    }

    /// A degree is critical when the diagram is contained in its own
    /// translate, i.e. the degree-q ladder kernel avoids the diagram.
    pub fn is_critical_degree(&self, q: i64) -> bool {
        q >= 1 && self.is_subset_of(&self.translate(q))
    }

    /// Critical degrees up to max_q inclusive. Every degree at or beyond
    /// the partition threshold (first part + number of parts) is critical.
    pub fn critical_degrees_upto(&self, max_q: i64) -> Vec<i64> {
        (1..=max_q).filter(|&q| self.is_critical_degree(q)).collect()
    }

    /// Block-parity regularity criterion: every finite maximal run of
    /// consecutive members above the first gap must have even length.
    /// Equivalent to the dressed ground potential having no real poles.
    pub fn is_regular(&self) -> bool {
        let gap = self.first_gap();
        let top = match self.filled_nonneg.iter().next_back() {
            Some(&m) => m,
            None => -1,
        };
        let mut run = 0usize;
        for k in (gap + 1)..=top.max(gap) {
            if self.contains(k) {
                run += 1;
            } else {
                if run % 2 == 1 {
                    return false;
                }
                run = 0;
            }
        }
        run % 2 == 0
    }

    /// Diagram of a partition at index zero: members are part(i) - i.
    pub fn from_partition(lambda: &Partition) -> Self {
        let ell = lambda.len() as i64;
        let mut filled_nonneg = BTreeSet::new();
        let mut present_neg = BTreeSet::new();
        for i in 1..=lambda.len() {
            let v = lambda.part(i) as i64 - i as i64;
            if v >= 0 {
                filled_nonneg.insert(v);
            } else {
                present_neg.insert(v);
            }
        }
        let empty_neg = (-ell..0).filter(|k| !present_neg.contains(k)).collect();
        MayaDiagram {
            filled_nonneg,
            empty_neg,
        }
    }

    /// Partition of the diagram's shape, invariant under translation.
    pub fn partition(&self) -> Partition {
        let d = self.translate(-self.index());
        let filled: Vec<i64> = d.filled_nonneg.iter().rev().copied().collect();
        let mut parts: Vec<u32> = Vec::new();
        let mut fi = 0usize;
        let mut neg = -1i64;
        for i in 1i64.. {
            let beta = if fi < filled.len() {
                fi += 1;
                filled[fi - 1]
            } else {
                while d.empty_neg.contains(&neg) {
                    neg -= 1;
                }
                let b = neg;
                neg -= 1;
                b
            };
            let lam = beta + i;
            if lam == 0 {
                break;
            }
            parts.push(lam as u32);
        }
        Partition::new(parts).expect("diagram rows are weakly decreasing")
    }

    /// Fixed-width strip of the diagram over [lo, hi): filled circle for
    /// members, open circle otherwise, with a bar before site zero.
    pub fn render_window(&self, lo: i64, hi: i64) -> String {
        let mut s = String::new();
        for k in lo..hi {
            if k == 0 {
                s.push('|');
            }
            s.push(if self.contains(k) { '\u{25CF}' } else { '\u{25CB}' });
        }
        s
    }
}

impl fmt::Display for MayaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self
            .empty_neg
            .iter()
            .next()
            .copied()
            .unwrap_or(0)
            .min(-1)
            - 2;
        let hi = self
            .filled_nonneg
            .iter()
            .next_back()
            .copied()
            .unwrap_or(-1)
            .max(0)
            + 3;
        write!(f, "\u{2026}{}\u{2026}", self.render_window(lo, hi))
    }
}

impl Serialize for MayaDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MayaDiagram", 3)?;
        st.serialize_field("index", &self.index())?;
        let filled: Vec<i64> = self.filled_nonneg.iter().copied().collect();
        let empty: Vec<i64> = self.empty_neg.iter().copied().collect();
        st.serialize_field("filled_nonneg", &filled)?;
        st.serialize_field("empty_neg", &empty)?;
        st.end()
    }
}

/// Adds a site to the partition's diagram. Returns the sign picked up by
/// moving the new site past the existing members above it, together with
/// the partition of the enlarged diagram.
pub fn insertion(lambda: &Partition, m: i64) -> Result<(i32, Partition), CoreError> {
    let d = MayaDiagram::from_partition(lambda);
    if d.contains(m) {
        return Err(CoreError::InsertionOccupied(m));
    }
    // Members strictly above m: all non-negative filled sites plus the
    // negative members between m and zero.
    let mut above = d.filled_nonneg.range((m.max(0))..).count();
    if m < 0 {
        above += ((m + 1)..0).filter(|&k| d.contains(k)).count();
    }
    let sign = if above % 2 == 0 { 1 } else { -1 };
    Ok((sign, d.flip(m).partition()))
}
