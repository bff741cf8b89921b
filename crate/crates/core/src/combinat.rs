//! Colored compositions and colored permutations.
//!
//! A color is the exponent `j` of the formal marker `ω^j`, an integer in
//! `0..m`. The root of unity itself never appears. Letters of a colored
//! permutation compare by value; since values are distinct, colors never
//! break ties.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Color = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part {
    pub size: u32,
    pub color: Color,
}

impl Part {
    pub fn new(size: u32, color: Color) -> Self {
        Self { size, color }
    }
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        Err(Error::NoColors)
    } else {
        Ok(())
    }
}

fn check_color(color: Color, m: u32) -> Result<()> {
    if color >= m {
        Err(Error::ColorOutOfRange { color, m })
    } else {
        Ok(())
    }
}

/// An ordered tuple of colored positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredComposition {
    m: u32,
    parts: Vec<Part>,
}

impl ColoredComposition {
    pub fn new(m: u32, parts: Vec<Part>) -> Result<Self> {
        check_m(m)?;
        for p in &parts {
            if p.size == 0 {
                return Err(Error::ZeroPart);
            }
            check_color(p.color, m)?;
        }
        Ok(Self { m, parts })
    }

    /// Builds from `(size, color)` pairs.
    pub fn from_pairs(m: u32, pairs: &[(u32, Color)]) -> Result<Self> {
        Self::new(m, pairs.iter().map(|&(s, c)| Part::new(s, c)).collect())
    }

    /// Monochromatic composition in color 0.
    pub fn uncolored(m: u32, sizes: &[u32]) -> Result<Self> {
        Self::new(m, sizes.iter().map(|&s| Part::new(s, 0)).collect())
    }

    pub fn empty(m: u32) -> Self {
        Self { m, parts: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(m: u32, parts: Vec<Part>) -> Self {
        debug_assert!(parts.iter().all(|p| p.size > 0 && p.color < m));
        Self { m, parts }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|p| p.size as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn pairs(&self) -> Vec<(u32, Color)> {
        self.parts.iter().map(|p| (p.size, p.color)).collect()
    }

    /// True iff `self` is obtained from `coarse` by splitting parts into
    /// same-colored pieces (written `coarse ≤ self`).
    pub fn refines(&self, coarse: &ColoredComposition) -> bool {
        if self.m != coarse.m || self.weight() != coarse.weight() {
            return false;
        }
        let mut fine = self.parts.iter();
        for big in &coarse.parts {
            let mut acc = 0;
            while acc < big.size {
                match fine.next() {
                    Some(p) if p.color == big.color => acc += p.size,
                    _ => return false,
                }
            }
            if acc != big.size {
                return false;
            }
        }
        fine.next().is_none()
    }

    /// Every `β` with `β ≤ self`, i.e. all ways of merging adjacent
    /// same-colored parts. Includes `self`.
    pub fn coarsenings(&self) -> Vec<ColoredComposition> {
        let gaps: Vec<usize> = (1..self.parts.len())
            .filter(|&i| self.parts[i - 1].color == self.parts[i].color)
            .collect();
        let mut out = Vec::with_capacity(1 << gaps.len());
        for mask in 0u64..(1u64 << gaps.len()) {
            let mut parts: Vec<Part> = Vec::with_capacity(self.parts.len());
            // `g` walks the gaps, advancing only at gap positions
            let mut g = 0;
            #[allow(clippy::explicit_counter_loop)]
            for (i, p) in self.parts.iter().enumerate() {
                let merge = g < gaps.len() && gaps[g] == i && {
                    let bit = mask >> g & 1 == 1;
                    g += 1;
                    bit
                };
                if merge {
                    parts.last_mut().expect("gap follows a part").size += p.size;
                } else {
                    parts.push(*p);
                }
            }
            out.push(Self::from_parts_unchecked(self.m, parts));
        }
        out
    }

    /// Every `β` with `self ≤ β`: each part split into a composition of
    /// itself, colors preserved. Includes `self`.
    pub fn refinements(&self) -> Vec<ColoredComposition> {
        let mut out = vec![Vec::new()];
        for p in &self.parts {
            let splits = integer_compositions(p.size);
            let mut next = Vec::with_capacity(out.len() * splits.len());
            for prefix in &out {
                for s in &splits {
                    let mut v: Vec<Part> = prefix.clone();
                    v.extend(s.iter().map(|&size| Part::new(size, p.color)));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|parts| Self::from_parts_unchecked(self.m, parts))
            .collect()
    }

    pub fn concat(&self, other: &ColoredComposition) -> ColoredComposition {
        debug_assert_eq!(self.m, other.m);
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::from_parts_unchecked(self.m.max(other.m), parts)
    }

    pub fn reverse(&self) -> ColoredComposition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Self::from_parts_unchecked(self.m, parts)
    }

    /// Prepends a part.
    pub fn cons(&self, part: Part) -> ColoredComposition {
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.push(part);
        parts.extend_from_slice(&self.parts);
        Self::from_parts_unchecked(self.m, parts)
    }

    /// Splits each non-initial part `p ≥ 2` of every rainbow block into `(1, p-1)`.
    pub fn star(&self) -> ColoredComposition {
        let mut parts = Vec::new();
        for block in self.rainbow_decompose().blocks {
            for (i, &s) in block.sizes.iter().enumerate() {
                if i > 0 && s >= 2 {
                    parts.push(Part::new(1, block.color));
                    parts.push(Part::new(s - 1, block.color));
                } else {
                    parts.push(Part::new(s, block.color));
                }
            }
        }
        Self::from_parts_unchecked(self.m, parts)
    }

    /// Within each rainbow block, runs of 1s are absorbed into the next part
    /// to the right (a trailing run absorbs into its own last 1).
    pub fn hat(&self) -> ColoredComposition {
        let mut parts = Vec::new();
        for block in self.rainbow_decompose().blocks {
            parts.extend(
                hat_sizes(&block.sizes)
                    .into_iter()
                    .map(|s| Part::new(s, block.color)),
            );
        }
        Self::from_parts_unchecked(self.m, parts)
    }

    pub fn is_peak_composition(&self) -> bool {
        self.rainbow_decompose().blocks.iter().all(|b| {
            let k = b.sizes.len();
            b.sizes[..k - 1].iter().all(|&s| s > 1)
        })
    }

    pub fn rainbow_decompose(&self) -> RainbowDecomposition {
        let mut blocks: Vec<RainbowBlock> = Vec::new();
        for p in &self.parts {
            match blocks.last_mut() {
                Some(b) if b.color == p.color => b.sizes.push(p.size),
                _ => blocks.push(RainbowBlock {
                    sizes: vec![p.size],
                    color: p.color,
                }),
            }
        }
        RainbowDecomposition { m: self.m, blocks }
    }

    /// Conjugate composition: the descent composition of the reversed
    /// representative word.
    pub fn conjugate(&self) -> ColoredComposition {
        ColoredPermutation::descent_representative(self)
            .reversed()
            .descent_composition()
    }

    /// Colored compositions with exactly one part per block and strictly
    /// increasing colors, the support of the convolved zeta character.
    pub fn has_increasing_colors(&self) -> bool {
        self.parts.windows(2).all(|w| w[0].color < w[1].color)
    }
}

impl fmt::Display for ColoredComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if p.color == 0 {
                write!(f, "{}", p.size)?;
            } else {
                write!(f, "{}^{}", p.size, p.color)?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ColoredComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn hat_sizes(sizes: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut pending = 0;
    for (i, &s) in sizes.iter().enumerate() {
        if s == 1 && i + 1 < sizes.len() {
            pending += 1;
        } else {
            out.push(s + pending);
            pending = 0;
        }
    }
    out
}

/// All compositions of `n` (uncolored), in lexicographic order.
pub fn integer_compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in integer_compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowBlock {
    pub sizes: Vec<u32>,
    pub color: Color,
}

/// Maximal same-color runs of a colored composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowDecomposition {
    pub m: u32,
    pub blocks: Vec<RainbowBlock>,
}

impl RainbowDecomposition {
    pub fn recompose(&self) -> ColoredComposition {
        let parts = self
            .blocks
            .iter()
            .flat_map(|b| b.sizes.iter().map(move |&s| Part::new(s, b.color)))
            .collect();
        ColoredComposition::from_parts_unchecked(self.m, parts)
    }
}

/// All `α ⊨_m n`, each exactly once.
pub fn enumerate_compositions(m: u32, n: u32) -> Vec<ColoredComposition> {
    fn go(m: u32, n: u32, prefix: &mut Vec<Part>, out: &mut Vec<ColoredComposition>) {
        if n == 0 {
            out.push(ColoredComposition::from_parts_unchecked(m, prefix.clone()));
            return;
        }
        for size in 1..=n {
            for color in 0..m {
                prefix.push(Part::new(size, color));
                go(m, n - size, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(m, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `m (m+1)^(n-1)` for `n ≥ 1`, and 1 for `n = 0`.
pub fn count_compositions(m: u32, n: u32) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    BigUint::from(m) * BigUint::from(m + 1).pow(n - 1)
}

/// Number of `m`-colored peak compositions of `n`:
/// `f(m,n) = m f(m,n-1) + f(m,n-2)`, `f(m,1) = m`, `f(m,2) = m²`.
pub fn count_peak_compositions(m: u32, n: u32) -> BigUint {
    match n {
        0 => BigUint::one(),
        1 => BigUint::from(m),
        _ => {
            let mut prev = BigUint::from(m);
            let mut cur = BigUint::from(m) * BigUint::from(m);
            for _ in 2..n {
                let next = BigUint::from(m) * &cur + &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub value: u32,
    pub color: Color,
}

impl Letter {
    pub fn new(value: u32, color: Color) -> Self {
        Self { value, color }
    }
}

/// A word of colored letters with distinct values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPermutation {
    m: u32,
    letters: Vec<Letter>,
}

impl ColoredPermutation {
    pub fn new(m: u32, letters: Vec<Letter>) -> Result<Self> {
        check_m(m)?;
        let mut seen = BTreeSet::new();
        for l in &letters {
            if l.value == 0 {
                return Err(Error::ZeroValue);
            }
            check_color(l.color, m)?;
            if !seen.insert(l.value) {
                return Err(Error::DuplicateValue(l.value));
            }
        }
        Ok(Self { m, letters })
    }

    pub fn from_pairs(m: u32, pairs: &[(u32, Color)]) -> Result<Self> {
        Self::new(m, pairs.iter().map(|&(v, c)| Letter::new(v, c)).collect())
    }

    pub(crate) fn from_letters_unchecked(m: u32, letters: Vec<Letter>) -> Self {
        Self { m, letters }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn pairs(&self) -> Vec<(u32, Color)> {
        self.letters.iter().map(|l| (l.value, l.color)).collect()
    }

    pub fn reversed(&self) -> ColoredPermutation {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self::from_letters_unchecked(self.m, letters)
    }

    /// Subword `letters[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> ColoredPermutation {
        Self::from_letters_unchecked(self.m, self.letters[start..end].to_vec())
    }

    /// Lengths of the maximal increasing constant-color runs, with colors.
    pub fn descent_composition(&self) -> ColoredComposition {
        let mut parts: Vec<Part> = Vec::new();
        for (i, l) in self.letters.iter().enumerate() {
            let extends = i > 0 && {
                let prev = self.letters[i - 1];
                prev.color == l.color && prev.value < l.value
            };
            if extends {
                parts.last_mut().expect("run in progress").size += 1;
            } else {
                parts.push(Part::new(1, l.color));
            }
        }
        ColoredComposition::from_parts_unchecked(self.m, parts)
    }

    /// Positions `i` (1-based) with `π_i > π_{i+1}` and equal colors.
    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.letters.len())
            .filter(|&i| {
                let (a, b) = (self.letters[i - 1], self.letters[i]);
                a.color == b.color && a.value > b.value
            })
            .collect()
    }

    /// Interior peaks within each constant-color run, as 1-based positions.
    pub fn peak_set(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (start, end) in self.color_runs() {
            for i in start + 1..end.saturating_sub(1) {
                let (a, b, c) = (self.letters[i - 1], self.letters[i], self.letters[i + 1]);
                if a.value < b.value && b.value > c.value {
                    out.push(i + 1);
                }
            }
        }
        out
    }

    /// Concatenation over constant-color runs of the classical peak
    /// composition of each run.
    pub fn peak_composition(&self) -> ColoredComposition {
        let mut parts = Vec::new();
        for (start, end) in self.color_runs() {
            let color = self.letters[start].color;
            let mut last = start;
            for i in start + 1..end.saturating_sub(1) {
                let (a, b, c) = (self.letters[i - 1], self.letters[i], self.letters[i + 1]);
                if a.value < b.value && b.value > c.value {
                    // peak at 0-based index i closes a part ending there
                    parts.push(Part::new((i + 1 - last) as u32, color));
                    last = i + 1;
                }
            }
            parts.push(Part::new((end - last) as u32, color));
        }
        ColoredComposition::from_parts_unchecked(self.m, parts)
    }

    /// Half-open index ranges of the maximal constant-color runs.
    fn color_runs(&self) -> Vec<(usize, usize)> {
        let mut runs = Vec::new();
        let mut start = 0;
        for i in 1..=self.letters.len() {
            if i == self.letters.len() || self.letters[i].color != self.letters[start].color {
                if i > start {
                    runs.push((start, i));
                }
                start = i;
            }
        }
        runs
    }

    /// Replaces values by their ranks, keeping colors.
    pub fn standardize(&self) -> ColoredPermutation {
        let mut sorted: Vec<u32> = self.letters.iter().map(|l| l.value).collect();
        sorted.sort_unstable();
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let rank = sorted.binary_search(&l.value).expect("value present") as u32 + 1;
                Letter::new(rank, l.color)
            })
            .collect();
        Self::from_letters_unchecked(self.m, letters)
    }

    /// Adds `offset` to every value.
    pub fn shifted(&self, offset: u32) -> ColoredPermutation {
        let letters = self
            .letters
            .iter()
            .map(|l| Letter::new(l.value + offset, l.color))
            .collect();
        Self::from_letters_unchecked(self.m, letters)
    }

    pub fn max_value(&self) -> u32 {
        self.letters.iter().map(|l| l.value).max().unwrap_or(0)
    }

    /// Word on values `1..=n` whose descent composition is `alpha`: the
    /// first run takes the largest values, the next run the next largest,
    /// and so on, each run increasing.
    pub fn descent_representative(alpha: &ColoredComposition) -> ColoredPermutation {
        let n = alpha.weight() as u32;
        let mut top = n;
        let mut letters = Vec::with_capacity(n as usize);
        for p in alpha.parts() {
            let low = top - p.size;
            letters.extend((low + 1..=top).map(|v| Letter::new(v, p.color)));
            top = low;
        }
        Self::from_letters_unchecked(alpha.m(), letters)
    }

    /// Word whose peak composition is the peak composition `alpha`.
    /// Increasing runs separated by descents put every interior peak at the
    /// end of a non-final part.
    pub fn peak_representative(alpha: &ColoredComposition) -> Result<ColoredPermutation> {
        if !alpha.is_peak_composition() {
            return Err(Error::NonPeakKey(alpha.to_string()));
        }
        Ok(Self::descent_representative(alpha))
    }

    /// All interleavings preserving the internal order of both words.
    pub fn shuffles(&self, other: &ColoredPermutation) -> Result<Vec<ColoredPermutation>> {
        if self.m != other.m {
            return Err(Error::ColorCountMismatch(self.m, other.m));
        }
        let mine: BTreeSet<u32> = self.letters.iter().map(|l| l.value).collect();
        if let Some(l) = other.letters.iter().find(|l| mine.contains(&l.value)) {
            return Err(Error::OverlappingValues(l.value));
        }
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(self.len() + other.len());
        shuffle_into(&self.letters, &other.letters, &mut word, &mut out);
        Ok(out
            .into_iter()
            .map(|w| Self::from_letters_unchecked(self.m, w))
            .collect())
    }
}

fn shuffle_into(a: &[Letter], b: &[Letter], word: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
    if a.is_empty() || b.is_empty() {
        let mut w = word.clone();
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        out.push(w);
        return;
    }
    word.push(a[0]);
    shuffle_into(&a[1..], b, word, out);
    word.pop();
    word.push(b[0]);
    shuffle_into(a, &b[1..], word, out);
    word.pop();
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.color == 0 {
                write!(f, "{}", l.value)?;
            } else {
                write!(f, "{}^{}", l.value, l.color)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// Cycloribbon diagram of a colored composition.
///
/// Cells are `(row, col, color)` with rows growing downward. A part
/// continues the current row when its color strictly exceeds the previous
/// part's color; otherwise its first cell sits directly below the previous
/// part's last cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycloribbon {
    m: u32,
    cells: Vec<(usize, usize, Color)>,
}

impl Cycloribbon {
    pub fn from_composition(alpha: &ColoredComposition) -> Cycloribbon {
        let mut cells = Vec::with_capacity(alpha.weight());
        let (mut row, mut col) = (0usize, 0usize);
        let mut prev: Option<Color> = None;
        for p in alpha.parts() {
            match prev {
                None => {}
                Some(c) if c < p.color => col += 1,
                Some(_) => row += 1,
            }
            for k in 0..p.size as usize {
                cells.push((row, col + k, p.color));
            }
            col += p.size as usize - 1;
            prev = Some(p.color);
        }
        Cycloribbon { m: alpha.m(), cells }
    }

    pub fn cells(&self) -> &[(usize, usize, Color)] {
        &self.cells
    }

    /// Reflection across the diagonal `y = x`.
    pub fn transpose(&self) -> Cycloribbon {
        let max_row = self.cells.iter().map(|c| c.0).max().unwrap_or(0);
        let max_col = self.cells.iter().map(|c| c.1).max().unwrap_or(0);
        let mut cells: Vec<_> = self
            .cells
            .iter()
            .map(|&(r, c, color)| (max_col - c, max_row - r, color))
            .collect();
        cells.sort_unstable();
        Cycloribbon { m: self.m, cells }
    }

    /// Reads rows top to bottom, splitting each row at color changes.
    pub fn to_composition(&self) -> ColoredComposition {
        let mut cells = self.cells.clone();
        cells.sort_unstable();
        let mut parts: Vec<Part> = Vec::new();
        let mut last: Option<(usize, Color)> = None;
        for (r, _, color) in cells {
            match (last, parts.last_mut()) {
                (Some((lr, lc)), Some(p)) if lr == r && lc == color => p.size += 1,
                _ => parts.push(Part::new(1, color)),
            }
            last = Some((r, color));
        }
        ColoredComposition::from_parts_unchecked(self.m, parts)
    }

    /// Text grid with one digit per cell and blanks elsewhere.
    pub fn render(&self) -> String {
        let rows = self.cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let cols = self.cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
        let mut grid = vec![vec![' '; cols]; rows];
        for &(r, c, color) in &self.cells {
            grid[r][c] = char::from_digit(color % 36, 36).unwrap_or('?');
        }
        grid.into_iter()
            .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Conjugate read off the reflected cycloribbon diagram.
pub fn conjugate_by_diagram(alpha: &ColoredComposition) -> ColoredComposition {
    Cycloribbon::from_composition(alpha).transpose().to_composition()
}

/// Counts compositions in `set` that are peak compositions; helper for
/// dimension tables.
pub fn count_peak_among(set: &[ColoredComposition]) -> BigUint {
    let mut n = BigUint::zero();
    for a in set {
        if a.is_peak_composition() {
            n += 1u32;
        }
    }
    n
}
