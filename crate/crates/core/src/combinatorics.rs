//! Lexicographically ordered k-subsets of `{1, ..., n}`.
//!
//! Subsets carry 1-based indices; ranks are 0-based positions in the
//! lexicographic enumeration. Every compound, adjugate and wedge coordinate in
//! the crate is addressed through these ranks.

use std::fmt;

use crate::error::{Error, Result};

/// Binomial coefficient `n choose k`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Strictly increasing tuple `1 <= i_1 < ... < i_k <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset {
    ambient: usize,
    elements: Vec<usize>,
}

impl IndexSubset {
    pub fn new(ambient: usize, elements: Vec<usize>) -> Result<Self> {
        if elements.len() > ambient {
            return Err(Error::domain(format!(
                "subset of size {} in ambient dimension {}",
                elements.len(),
                ambient
            )));
        }
        let mut prev = 0;
        for &e in &elements {
            if e <= prev || e > ambient {
                return Err(Error::domain(format!(
                    "subset elements {elements:?} are not strictly increasing in 1..={ambient}"
                )));
            }
            prev = e;
        }
        Ok(IndexSubset { ambient, elements })
    }

    /// `{1, ..., k}`, the first subset in lexicographic order.
    pub fn leading(ambient: usize, k: usize) -> Result<Self> {
        Self::new(ambient, (1..=k).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// 1-based elements.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, index: usize) -> bool {
        self.elements.binary_search(&index).is_ok()
    }

    /// 0-based storage offsets of the elements, for addressing matrix rows/columns.
    pub(crate) fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(|&e| e - 1)
    }

    /// 0-based lexicographic rank among all subsets of the same size.
    pub fn rank(&self) -> usize {
        let n = self.ambient;
        let k = self.elements.len();
        let mut rank = 0;
        let mut prev = 0;
        for (pos, &e) in self.elements.iter().enumerate() {
            let remaining = k - pos - 1;
            for skipped in prev + 1..e {
                rank += binomial(n - skipped, remaining);
            }
            prev = e;
        }
        rank
    }

    /// Inverse of [`IndexSubset::rank`].
    pub fn unrank(ambient: usize, k: usize, rank: usize) -> Result<Self> {
        if k > ambient {
            return Err(Error::domain(format!("k = {k} exceeds n = {ambient}")));
        }
        let total = binomial(ambient, k);
        if rank >= total {
            return Err(Error::domain(format!(
                "rank {rank} out of range for {ambient} choose {k} = {total}"
            )));
        }
        let mut rest = rank;
        let mut elements = Vec::with_capacity(k);
        let mut next = 1;
        for pos in 0..k {
            let remaining = k - pos - 1;
            loop {
                let block = binomial(ambient - next, remaining);
                if rest < block {
                    break;
                }
                rest -= block;
                next += 1;
            }
            elements.push(next);
            next += 1;
        }
        Ok(IndexSubset { ambient, elements })
    }

    /// Complement in `{1, ..., n}`, itself in increasing order.
    pub fn complement(&self) -> IndexSubset {
        let elements = (1..=self.ambient).filter(|&i| !self.contains(i)).collect();
        IndexSubset {
            ambient: self.ambient,
            elements,
        }
    }

    pub fn element_sum(&self) -> usize {
        self.elements.iter().sum()
    }

    /// Replace the element at `position` (0-based) with `index` and re-sort.
    ///
    /// Returns `None` when `index` already occurs at another position (the
    /// resulting wedge coordinate is zero), otherwise the sorted subset and
    /// the sign of the sorting permutation.
    pub fn replace_at(&self, position: usize, index: usize) -> Option<(IndexSubset, i32)> {
        debug_assert!(position < self.elements.len());
        debug_assert!((1..=self.ambient).contains(&index));
        if self.elements[position] == index {
            return Some((self.clone(), 1));
        }
        if self.contains(index) {
            return None;
        }
        let mut elements = self.elements.clone();
        elements.remove(position);
        let insert_at = elements.partition_point(|&e| e < index);
        elements.insert(insert_at, index);
        // moving one entry from `position` to `insert_at` is a cycle of that length
        let hops = position.abs_diff(insert_at);
        let sign = if hops % 2 == 0 { 1 } else { -1 };
        Some((
            IndexSubset {
                ambient: self.ambient,
                elements,
            },
            sign,
        ))
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// All `n choose k` subsets of size `k` in lexicographic order.
pub fn lex_subsets(n: usize, k: usize) -> Result<Vec<IndexSubset>> {
    if k > n {
        return Err(Error::domain(format!("k = {k} exceeds n = {n}")));
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(IndexSubset {
            ambient: n,
            elements: current.clone(),
        });
        // rightmost position that can still be advanced
        let Some(pos) = (0..k).rev().find(|&p| current[p] < n - (k - 1 - p)) else {
            break;
        };
        current[pos] += 1;
        for q in pos + 1..k {
            current[q] = current[q - 1] + 1;
        }
    }
    Ok(out)
}

/// `(-1)^(sum S + sum T)`.
pub fn subset_sign(s: &IndexSubset, t: &IndexSubset) -> Result<i32> {
    if s.len() != t.len() {
        return Err(Error::domain(format!(
            "subset sizes differ: {} vs {}",
            s.len(),
            t.len()
        )));
    }
    Ok(if (s.element_sum() + t.element_sum()).is_multiple_of(2) {
        1
    } else {
        -1
    })
}
