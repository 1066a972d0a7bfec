//! Word-packed bit sets and square bit matrices.
//!
//! [`BitSet`] is used for subsets of a finite carrier, [`Relation`] for binary
//! relations over a finite base. Both compare bitwise.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A subset of `0..len` stored as machine words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(len: usize) -> Self {
        BitSet { len, words: vec![0; words_for(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `len` bits of `mask`. `len` must be at most 64.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        let mut s = Self::empty(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for set of length {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Orders by cardinality, then lexicographically on the sorted member lists.
    pub fn cmp_canonical(&self, other: &BitSet) -> Ordering {
        self.count()
            .cmp(&other.count())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation over the base `0..n`, row-major, one bit row per point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<BitSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, rows: vec![BitSet::empty(n); n] }
    }

    pub fn full(n: usize) -> Self {
        Relation { n, rows: vec![BitSet::full(n); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    /// Decodes a row-major mask: bit `x * n + y` is the pair `(x, y)`. Needs `n * n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n * n <= WORD);
        Self::from_pairs(
            n,
            (0..n * n).filter(|b| mask >> b & 1 == 1).map(|b| (b / n, b % n)),
        )
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.n * self.n <= WORD);
        self.pairs().fold(0, |m, (x, y)| m | 1 << (x * self.n + y))
    }

    pub fn base_size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    pub fn row(&self, x: usize) -> &BitSet {
        &self.rows[x]
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(BitSet::is_empty)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n, "relations over different bases");
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "relations over different bases");
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.union(b)).collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "relations over different bases");
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.intersection(b)).collect(),
        }
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.n);
        for (x, y) in self.pairs() {
            t.insert(y, x);
        }
        t
    }

    /// `{(x, z) | exists y. (x, y) in self and (y, z) in other}`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "relations over different bases");
        let mut out = Relation::empty(self.n);
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                out.rows[x].union_with(&other.rows[y]);
            }
        }
        out
    }

    /// `{(x, y) | forall z. (z, x) in self => (z, y) in other}`.
    pub fn left_residual(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "relations over different bases");
        let t = self.transpose();
        let mut out = Relation::full(self.n);
        for x in 0..self.n {
            for z in t.rows[x].iter() {
                out.rows[x].intersect_with(&other.rows[z]);
            }
        }
        out
    }

    /// `{(x, y) | forall z. (y, z) in other => (x, z) in self}`.
    pub fn right_residual(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "relations over different bases");
        let mut out = Relation::empty(self.n);
        for x in 0..self.n {
            for y in 0..self.n {
                if other.rows[y].is_subset(&self.rows[x]) {
                    out.rows[x].insert(y);
                }
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }

    /// First pair, in row-major order, on which the two relations differ.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        assert_eq!(self.n, other.n);
        (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .find(|&(x, y)| self.contains(x, y) != other.contains(x, y))
    }

    /// Relabels points: the pair `(x, y)` becomes `(perm[x], perm[y])`.
    pub fn permute(&self, perm: &[usize]) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(x, y)| (perm[x], perm[y])))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
