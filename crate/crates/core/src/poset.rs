//! Colored labeled posets.
//!
//! Elements are stored sorted by value and addressed by index; the strict
//! order is kept as its transitive closure in `u64` bitmasks, so posets
//! are limited to 64 elements. Covers are derived from the closure.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::combinat::{Color, ColoredPermutation, Letter};
use crate::error::{Error, Result};

const MAX_ELEMENTS: usize = 64;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPoset {
    m: u32,
    elems: Vec<Letter>,
    /// `below[i]` has bit `k` set iff `elems[k] < elems[i]` in the poset.
    below: Vec<u64>,
}

#[inline]
fn bit(i: usize) -> u64 {
    1u64 << i
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

impl ColoredPoset {
    /// Builds a poset from elements `(value, color)` and any set of strict
    /// relations `(lower, upper)` given by value. The order is the
    /// transitive closure of the relations.
    pub fn new(m: u32, elements: &[(u32, Color)], relations: &[(u32, u32)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::NoColors);
        }
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge(elements.len()));
        }
        let mut elems: Vec<Letter> = elements.iter().map(|&(v, c)| Letter::new(v, c)).collect();
        elems.sort_unstable();
        for (i, l) in elems.iter().enumerate() {
            if l.value == 0 {
                return Err(Error::ZeroValue);
            }
            if l.color >= m {
                return Err(Error::ColorOutOfRange { color: l.color, m });
            }
            if i > 0 && elems[i - 1].value == l.value {
                return Err(Error::DuplicateValue(l.value));
            }
        }
        let index = |v: u32| {
            elems
                .binary_search_by_key(&v, |l| l.value)
                .map_err(|_| Error::UnknownValue(v))
        };
        let n = elems.len();
        let mut succ = vec![0u64; n];
        for &(a, b) in relations {
            let (i, j) = (index(a)?, index(b)?);
            if i == j {
                return Err(Error::Cyclic);
            }
            succ[i] |= bit(j);
        }
        // Kahn's algorithm; the closure accumulates along a topological order.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for j in bits(*s) {
                indeg[j] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut below = vec![0u64; n];
        let mut done = 0;
        while let Some(i) = queue.pop() {
            done += 1;
            for j in bits(succ[i]) {
                below[j] |= below[i] | bit(i);
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push(j);
                }
            }
        }
        if done < n {
            return Err(Error::Cyclic);
        }
        Ok(Self { m, elems, below })
    }

    pub fn empty(m: u32) -> Self {
        Self { m, elems: Vec::new(), below: Vec::new() }
    }

    /// Chain whose elements increase in the order given.
    pub fn chain(m: u32, letters: &[(u32, Color)]) -> Result<Self> {
        let rel: Vec<(u32, u32)> = letters.windows(2).map(|w| (w[0].0, w[1].0)).collect();
        Self::new(m, letters, &rel)
    }

    pub fn antichain(m: u32, letters: &[(u32, Color)]) -> Result<Self> {
        Self::new(m, letters, &[])
    }

    /// The chain of a colored permutation: `π_1 < π_2 < ... < π_n`.
    pub fn from_permutation(pi: &ColoredPermutation) -> Self {
        Self::chain(pi.m(), &pi.pairs()).expect("permutation letters are distinct")
    }

    fn from_closure(m: u32, elems: Vec<Letter>, below: Vec<u64>) -> Self {
        Self { m, elems, below }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Letter] {
        &self.elems
    }

    fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    /// Strict order by index.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j] & bit(i) != 0
    }

    pub fn below_mask(&self, i: usize) -> u64 {
        self.below[i]
    }

    pub fn above_mask(&self, i: usize) -> u64 {
        (0..self.len())
            .filter(|&j| self.less(i, j))
            .fold(0, |acc, j| acc | bit(j))
    }

    /// All strict relations `(lower, upper)` by value.
    pub fn relations(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (j, e) in self.elems.iter().enumerate() {
            for i in bits(self.below[j]) {
                out.push((self.elems[i].value, e.value));
            }
        }
        out.sort_unstable();
        out
    }

    /// Covering relations `(lower, upper)` by value.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (j, e) in self.elems.iter().enumerate() {
            let below = self.below[j];
            for i in bits(below) {
                // i is covered by j unless some k strictly between them
                let between = below & !self.below[i] & !bit(i);
                if bits(between).all(|k| !self.less(i, k)) {
                    out.push((self.elems[i].value, e.value));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_monochromatic(&self, j: Color) -> bool {
        self.elems.iter().all(|l| l.color == j)
    }

    /// Number of distinct colors used.
    pub fn color_count(&self) -> usize {
        self.elems.iter().map(|l| l.color).collect::<BTreeSet<_>>().len()
    }

    /// Representative with values `1..=n`, equal for two posets exactly when
    /// they are label-equivalent.
    ///
    /// A relabeling onto `1..=n` is an equivalence iff it preserves colors
    /// and keeps the value order on every comparable pair, i.e. it is a
    /// linear extension of the digraph that points from the smaller to the
    /// larger value of each comparable pair. Among those we pick the one
    /// with lexicographically least row encoding, where row `k` records the
    /// color of the element placed at position `k` and its relations to the
    /// earlier positions.
    pub fn canonical_form(&self) -> ColoredPoset {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let comparable: Vec<u64> = (0..n).map(|i| self.below[i] | self.above_mask(i)).collect();
        // Index order is value order, so `must_precede[i]` is the comparable
        // elements of smaller value.
        let must_precede: Vec<u64> = (0..n).map(|i| comparable[i] & (bit(i) - 1)).collect();

        struct State {
            placed: u64,
            order: Vec<usize>,
            pos: Vec<usize>,
        }
        let mut frontier = vec![State { placed: 0, order: Vec::with_capacity(n), pos: vec![usize::MAX; n] }];
        for k in 0..n {
            let mut best: Option<(Color, u64, u64)> = None;
            let mut next: Vec<State> = Vec::new();
            for s in &frontier {
                for e in 0..n {
                    if s.placed & bit(e) != 0 || must_precede[e] & !s.placed != 0 {
                        continue;
                    }
                    let (mut lo, mut hi) = (0u64, 0u64);
                    for p in bits(self.below[e] & s.placed) {
                        lo |= bit(s.pos[p]);
                    }
                    for p in bits(comparable[e] & !self.below[e] & s.placed) {
                        hi |= bit(s.pos[p]);
                    }
                    let row = (self.elems[e].color, lo, hi);
                    match best {
                        Some(b) if row > b => continue,
                        Some(b) if row < b => next.clear(),
                        _ => {}
                    }
                    best = Some(row);
                    let mut order = s.order.clone();
                    order.push(e);
                    let mut pos = s.pos.clone();
                    pos[e] = k;
                    next.push(State { placed: s.placed | bit(e), order, pos });
                }
            }
            frontier = next;
        }
        let winner = &frontier[0];
        let elems = winner
            .order
            .iter()
            .enumerate()
            .map(|(k, &e)| Letter::new(k as u32 + 1, self.elems[e].color))
            .collect();
        let below = winner
            .order
            .iter()
            .map(|&e| bits(self.below[e]).fold(0, |acc, p| acc | bit(winner.pos[p])))
            .collect();
        Self::from_closure(self.m, elems, below)
    }

    pub fn is_equivalent(&self, other: &ColoredPoset) -> bool {
        self.m == other.m && self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// Same poset with element `i` relabeled to `values[i]`; fails if values
    /// repeat. The result need not be equivalent to `self`.
    pub fn with_values(&self, values: &[u32]) -> Result<ColoredPoset> {
        let elems: Vec<(u32, Color)> = self
            .elems
            .iter()
            .zip(values)
            .map(|(l, &v)| (v, l.color))
            .collect();
        let rel: Vec<(u32, u32)> = (0..self.len())
            .flat_map(|j| bits(self.below[j]).map(move |i| (values[i], values[j])))
            .collect();
        Self::new(self.m, &elems, &rel)
    }

    /// A topological order of the indices.
    fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.below[i].count_ones());
        order
    }

    /// Order ideals as index bitmasks, each exactly once.
    pub fn ideal_masks(&self) -> Vec<u64> {
        fn go(p: &ColoredPoset, order: &[usize], k: usize, cur: u64, out: &mut Vec<u64>) {
            if k == order.len() {
                out.push(cur);
                return;
            }
            let e = order[k];
            go(p, order, k + 1, cur, out);
            if p.below[e] & !cur == 0 {
                go(p, order, k + 1, cur | bit(e), out);
            }
        }
        let order = self.topological_order();
        let mut out = Vec::new();
        go(self, &order, 0, 0, &mut out);
        out.sort_unstable_by_key(|m| (m.count_ones(), *m));
        out
    }

    /// Order ideals with their induced subposets.
    pub fn ideals(&self) -> Vec<ColoredPoset> {
        self.ideal_masks().into_iter().map(|m| self.induced(m)).collect()
    }

    /// Subposet on the indices in `mask`, values unchanged.
    pub fn induced(&self, mask: u64) -> ColoredPoset {
        let keep: Vec<usize> = bits(mask).collect();
        let mut new_index = [usize::MAX; MAX_ELEMENTS];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let elems = keep.iter().map(|&i| self.elems[i]).collect();
        let below = keep
            .iter()
            .map(|&i| bits(self.below[i] & mask).fold(0, |acc, p| acc | bit(new_index[p])))
            .collect();
        Self::from_closure(self.m, elems, below)
    }

    pub fn complement(&self, mask: u64) -> ColoredPoset {
        self.induced(self.full_mask() & !mask)
    }

    /// Pairs `(I, P \ I)` over all order ideals `I`.
    pub fn ideal_splits(&self) -> Vec<(ColoredPoset, ColoredPoset)> {
        self.ideal_masks()
            .into_iter()
            .map(|m| (self.induced(m), self.complement(m)))
            .collect()
    }

    /// Every linear extension as a word in the poset's letters.
    pub fn linear_extensions(&self) -> Vec<ColoredPermutation> {
        let mut out = Vec::new();
        self.for_each_extension(|w| {
            out.push(ColoredPermutation::from_letters_unchecked(self.m, w.to_vec()))
        });
        out
    }

    /// Calls `f` on each linear extension, smallest available value first.
    pub fn for_each_extension(&self, mut f: impl FnMut(&[Letter])) {
        fn go(p: &ColoredPoset, placed: u64, word: &mut Vec<Letter>, f: &mut dyn FnMut(&[Letter])) {
            if word.len() == p.len() {
                f(word);
                return;
            }
            for e in 0..p.len() {
                if placed & bit(e) == 0 && p.below[e] & !placed == 0 {
                    word.push(p.elems[e]);
                    go(p, placed | bit(e), word, f);
                    word.pop();
                }
            }
        }
        go(self, 0, &mut Vec::with_capacity(self.len()), &mut f);
    }

    /// `P ⊔ Q`, shifting the values of `Q` above those of `P` if any collide.
    pub fn disjoint_union(&self, other: &ColoredPoset) -> Result<ColoredPoset> {
        if self.m != other.m {
            return Err(Error::ColorCountMismatch(self.m, other.m));
        }
        let n = self.len() + other.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let mine: BTreeSet<u32> = self.elems.iter().map(|l| l.value).collect();
        let shift = if other.elems.iter().any(|l| mine.contains(&l.value)) {
            self.elems.last().map_or(0, |l| l.value)
        } else {
            0
        };
        let mut tagged: Vec<(Letter, bool, usize)> = self
            .elems
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, false, i))
            .chain(
                other
                    .elems
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (Letter::new(l.value + shift, l.color), true, i)),
            )
            .collect();
        tagged.sort_unstable();
        let mut index_p = vec![0; self.len()];
        let mut index_q = vec![0; other.len()];
        for (k, &(_, from_q, i)) in tagged.iter().enumerate() {
            if from_q {
                index_q[i] = k;
            } else {
                index_p[i] = k;
            }
        }
        let below = tagged
            .iter()
            .map(|&(_, from_q, i)| {
                let (src, idx) = if from_q { (other, &index_q) } else { (self, &index_p) };
                bits(src.below[i]).fold(0, |acc, p| acc | bit(idx[p]))
            })
            .collect();
        let elems = tagged.into_iter().map(|t| t.0).collect();
        Ok(Self::from_closure(self.m, elems, below))
    }

    /// The unique linear extension with no descents and weakly increasing
    /// colors, if one exists.
    pub fn natural_extension(&self) -> Option<ColoredPermutation> {
        // Such an extension lists letters sorted by (color, value), so it
        // suffices to test that order.
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.elems[i].color, self.elems[i].value));
        let mut placed = 0u64;
        for &e in &order {
            if self.below[e] & !placed != 0 {
                return None;
            }
            placed |= bit(e);
        }
        let letters = order.into_iter().map(|i| self.elems[i]).collect();
        Some(ColoredPermutation::from_letters_unchecked(self.m, letters))
    }

    pub fn is_naturally_labeled(&self) -> bool {
        self.natural_extension().is_some()
    }
}

impl fmt::Display for ColoredPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.color == 0 {
                write!(f, "{}", l.value)?;
            } else {
                write!(f, "{}^{}", l.value, l.color)?;
            }
        }
        write!(f, " |")?;
        for (a, b) in self.covers() {
            write!(f, " {a}<{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ColoredPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All labeled posets on indices `0..n` as closure masks, each once.
fn labeled_posets(n: usize) -> Vec<Vec<u64>> {
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for below in &level {
            let above: Vec<u64> = (0..k)
                .map(|i| (0..k).filter(|&j| below[j] & bit(i) != 0).fold(0, |a, j| a | bit(j)))
                .collect();
            let downsets = down_sets(below, k);
            for &d in &downsets {
                for &c in &downsets {
                    // U is the complement of the ideal c; D must avoid U and lie below all of U.
                    let u = (bit(k) - 1) & !c;
                    if d & u != 0 || !bits(d).all(|i| above[i] & u == u) {
                        continue;
                    }
                    let mut nb = below.clone();
                    for j in bits(u) {
                        nb[j] |= d | bit(k);
                    }
                    nb.push(d);
                    next.push(nb);
                }
            }
        }
        level = next;
    }
    level
}

fn down_sets(below: &[u64], k: usize) -> Vec<u64> {
    let mut out = vec![0u64];
    for e in 0..k {
        // indices are added in increasing order, but the order below need not
        // be topological, so filter at the end
        let mut more = Vec::with_capacity(out.len());
        for &s in &out {
            more.push(s | bit(e));
        }
        out.extend(more);
    }
    out.retain(|&s| bits(s).all(|e| below[e] & !s == 0));
    out
}

type EnumCache = Mutex<HashMap<(u32, usize), Arc<Vec<ColoredPoset>>>>;

/// All canonical `m`-colored posets with `n` elements, sorted.
pub fn enumerate_canonical(m: u32, n: usize) -> Arc<Vec<ColoredPoset>> {
    static CACHE: OnceLock<EnumCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&(m, n)) {
        return hit.clone();
    }
    let shapes = labeled_posets(n);
    let colorings = (m as u64).pow(n as u32);
    let set: BTreeSet<ColoredPoset> = shapes
        .par_iter()
        .flat_map_iter(|below| {
            (0..colorings).map(move |mut code| {
                let elems = (0..n)
                    .map(|i| {
                        let c = (code % m as u64) as Color;
                        code /= m as u64;
                        Letter::new(i as u32 + 1, c)
                    })
                    .collect();
                ColoredPoset::from_closure(m, elems, below.clone()).canonical_form()
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let out = Arc::new(set.into_iter().collect::<Vec<_>>());
    cache.lock().expect("cache poisoned").insert((m, n), out.clone());
    out
}

/// Canonical posets of every size `0..=max_n`.
pub fn enumerate_canonical_upto(m: u32, max_n: usize) -> Vec<ColoredPoset> {
    (0..=max_n)
        .flat_map(|n| enumerate_canonical(m, n).as_ref().clone())
        .collect()
}
