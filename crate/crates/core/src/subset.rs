//! 1-based index subsets and exact integer combinatorics.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// A set of 1-based antenna indices, kept strictly increasing.
///
/// Membership in `[1, n]` for a concrete ambient dimension `n` is checked by
/// the operations that apply the subset to a matrix or channel.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetIndex {
    members: Vec<usize>,
}

impl SubsetIndex {
    /// Builds a subset from strictly increasing 1-based indices.
    pub fn new(members: Vec<usize>) -> Result<Self> {
        for (pos, &m) in members.iter().enumerate() {
            if m == 0 {
                return Err(Error::invalid("subset indices are 1-based; found 0"));
            }
            if pos > 0 && members[pos - 1] >= m {
                return Err(Error::invalid(format!(
                    "subset indices must be strictly increasing; found {} after {}",
                    m,
                    members[pos - 1]
                )));
            }
        }
        Ok(SubsetIndex { members })
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        SubsetIndex {
            members: (1..=n).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        self.members.last().copied()
    }

    /// The subset with `member` removed. Errors if `member` is not present.
    pub fn without(&self, member: usize) -> Result<Self> {
        match self.members.binary_search(&member) {
            Ok(pos) => {
                let mut members = self.members.clone();
                members.remove(pos);
                Ok(SubsetIndex { members })
            }
            Err(_) => Err(Error::invalid(format!(
                "index {member} is not a member of the subset"
            ))),
        }
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &SubsetIndex) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// All `k`-element subsets of `{1, ..., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = SubsetIndex> {
    (1..=n)
        .combinations(k)
        .map(|members| SubsetIndex { members })
}

/// Exact binomial coefficient. Returns 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * m / i is a binomial coefficient, hence an integer. Cancel
        // the gcd first so the intermediate never exceeds the result; this
        // keeps values like C(128, 64) inside u128.
        let m = n as u128 - k as u128 + i;
        let g = gcd(m, i);
        acc = acc / (i / g) * (m / g);
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact factorial in 128-bit arithmetic (valid through 33!).
pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}
