//! Outcome labels and small outcome sets.
//!
//! An [`Outcomes`] value is the ambient outcome set `O` of a game. Labels are
//! kept in a canonical order (numeric labels numerically, then the rest
//! lexicographically) so that two games over the same labels share the same
//! indexing. Subsets of `O` are [`OutcomeSet`] bitmasks over that indexing.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on `|O|` imposed by the bitmask representation.
pub const MAX_OUTCOMES: usize = 64;

/// Canonical order on labels.
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// The ambient set of outcome labels of a game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcomes {
    labels: Vec<String>,
}

impl Outcomes {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort_by(|a, b| label_cmp(a, b));
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateOutcome(w[0].clone()));
        }
        if labels.len() > MAX_OUTCOMES {
            return Err(Error::TooManyOutcomes {
                got: labels.len(),
                max: MAX_OUTCOMES,
            });
        }
        Ok(Outcomes { labels })
    }

    /// `{"0", "1", ..., "n-1"}`.
    pub fn numbered(n: usize) -> Self {
        Outcomes::new((0..n).map(|i| i.to_string())).expect("numbered outcomes are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .binary_search_by(|probe| label_cmp(probe, label))
            .ok()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownOutcome(label.to_string()))
    }

    pub fn full(&self) -> OutcomeSet {
        OutcomeSet::full(self.len())
    }

    pub fn set<S: AsRef<str>>(&self, labels: &[S]) -> Result<OutcomeSet> {
        let mut set = OutcomeSet::EMPTY;
        for l in labels {
            set.insert(self.require(l.as_ref())?);
        }
        Ok(set)
    }

    pub fn names(&self, set: OutcomeSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Renders a set as `{a,b}`.
    pub fn show(&self, set: OutcomeSet) -> String {
        format!("{{{}}}", self.names(set).join(","))
    }

    pub fn ensure_same(&self, other: &Outcomes) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::OutcomeMismatch {
                left: self.labels.clone(),
                right: other.labels.clone(),
            })
        }
    }
}

/// A subset of `{0, ..., 63}`, used for outcome sets and world sets.
///
/// Ordered canonically: by cardinality, then lexicographically on the sorted
/// element lists.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OutcomeSet(pub u64);

impl OutcomeSet {
    pub const EMPTY: OutcomeSet = OutcomeSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            OutcomeSet(u64::MAX)
        } else {
            OutcomeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        OutcomeSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = OutcomeSet::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        OutcomeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        OutcomeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        OutcomeSet(self.0 & !other.0)
    }

    pub fn complement_in(self, universe: Self) -> Self {
        OutcomeSet(universe.0 & !self.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = OutcomeSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(OutcomeSet(cur))
        })
    }

    /// All supersets of `self` inside `universe`.
    pub fn supersets_within(self, universe: OutcomeSet) -> impl Iterator<Item = OutcomeSet> {
        let base = self;
        universe
            .difference(self)
            .subsets()
            .map(move |extra| base.union(extra))
    }
}

impl Ord for OutcomeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the set owning the lowest differing element sorts first
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for OutcomeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for OutcomeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All nonempty subsets of `universe`, in canonical order.
pub fn nonempty_subsets(universe: OutcomeSet) -> Vec<OutcomeSet> {
    let mut all: Vec<OutcomeSet> = universe.subsets().filter(|s| !s.is_empty()).collect();
    all.sort();
    all
}


/// A binary relation between two small index sets, stored as successor sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    succ: Vec<OutcomeSet>,
    right_len: usize,
}

impl Relation {
    pub fn empty(left: usize, right: usize) -> Self {
        Relation {
            succ: vec![OutcomeSet::EMPTY; left],
            right_len: right,
        }
    }

    pub fn full(left: usize, right: usize) -> Self {
        Relation {
            succ: vec![OutcomeSet::full(right); left],
            right_len: right,
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            succ: (0..n).map(OutcomeSet::singleton).collect(),
            right_len: n,
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(left: usize, right: usize, pairs: I) -> Self {
        let mut r = Relation::empty(left, right);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn left_len(&self) -> usize {
        self.succ.len()
    }

    pub fn right_len(&self) -> usize {
        self.right_len
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.succ[x].insert(y);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.succ[x] = self.succ[x].difference(OutcomeSet::singleton(y));
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x].contains(y)
    }

    pub fn successors(&self, x: usize) -> OutcomeSet {
        self.succ[x]
    }

    /// Everything related to some member of `xs`.
    pub fn image(&self, xs: OutcomeSet) -> OutcomeSet {
        xs.iter()
            .fold(OutcomeSet::EMPTY, |acc, x| acc.union(self.succ[x]))
    }

    /// Everything related to some member of `ys`.
    pub fn preimage(&self, ys: OutcomeSet) -> OutcomeSet {
        OutcomeSet::from_indices((0..self.succ.len()).filter(|&x| self.succ[x].intersects(ys)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(x, s)| s.iter().map(move |y| (x, y)))
    }

    pub fn len(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn converse(&self) -> Relation {
        Relation::from_pairs(self.right_len, self.succ.len(), self.pairs().map(|(x, y)| (y, x)))
    }
}
