//! Compositions, permutations, partitions and tableaux.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Limits, Result};

/// An ordered list of positive parts.
///
/// Compositions of `n` are in bijection with subsets of `{1, ..., n-1}` via
/// partial sums. The total order used for sorting is by size, then
/// lexicographic on the descent set listed increasingly.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = crate::Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Vec<usize> {
        c.parts
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return invalid("a composition needs at least one part");
        }
        if parts.iter().any(|&p| p == 0) {
            return invalid(format!("composition parts must be positive: {parts:?}"));
        }
        Ok(Composition { parts })
    }

    /// The composition of `n` whose partial sums are the elements of `descents`.
    pub fn from_descents(descents: &[usize], n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("n must be positive");
        }
        let set: BTreeSet<usize> = descents.iter().copied().collect();
        if set.len() != descents.len() || set.iter().any(|&d| d == 0 || d >= n) {
            return invalid(format!("{descents:?} is not a subset of [1, {}]", n - 1));
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for d in set.into_iter().chain(std::iter::once(n)) {
            parts.push(d - prev);
            prev = d;
        }
        Ok(Composition { parts })
    }

    /// Parses `"1,2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|p| p.trim().parse::<usize>()).collect();
        match parts {
            Ok(p) => Composition::new(p),
            Err(_) => invalid(format!("cannot parse composition {s:?}")),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Partial sums `σ_1, ..., σ_{ℓ-1}`.
    pub fn descents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len().saturating_sub(1));
        let mut acc = 0;
        for &p in &self.parts[..self.parts.len() - 1] {
            acc += p;
            out.push(acc);
        }
        out
    }

    pub fn descent_set(&self) -> BTreeSet<usize> {
        self.descents().into_iter().collect()
    }

    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    pub fn reverse(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    pub fn complement(&self) -> Composition {
        let n = self.size();
        let d = self.descent_set();
        let comp: Vec<usize> = (1..n).filter(|i| !d.contains(i)).collect();
        Composition::from_descents(&comp, n).expect("complement of a valid descent set")
    }

    pub fn transpose(&self) -> Composition {
        self.complement().reverse()
    }

    /// `self ≼ other`: `self` is coarser, i.e. `D(self) ⊆ D(other)`.
    pub fn refined_by(&self, other: &Composition) -> bool {
        self.size() == other.size() && self.descent_set().is_subset(&other.descent_set())
    }

    /// All `β` with `β ≼ self`.
    pub fn coarsenings(&self) -> Vec<Composition> {
        let n = self.size();
        let d = self.descents();
        d.iter()
            .copied()
            .powerset()
            .map(|s| Composition::from_descents(&s, n).unwrap())
            .sorted()
            .collect()
    }

    /// All `β` with `self ≼ β`.
    pub fn refinements(&self) -> Vec<Composition> {
        let n = self.size();
        let d = self.descent_set();
        let free: Vec<usize> = (1..n).filter(|i| !d.contains(i)).collect();
        free.into_iter()
            .powerset()
            .map(|extra| {
                let all: Vec<usize> = d.iter().copied().chain(extra).sorted().collect();
                Composition::from_descents(&all, n).unwrap()
            })
            .sorted()
            .collect()
    }

    /// Weakly decreasing rearrangement of the parts.
    pub fn sorted_partition(&self) -> Partition {
        Partition::new(self.parts.clone()).unwrap()
    }

    /// Column filling of the ribbon: the minimum of the descent class in left weak order.
    pub fn w0(&self) -> Permutation {
        // longest element of the parabolic subgroup generated by s_i, i in D(α):
        // reverse each block of the complement composition.
        let c = self.complement();
        let mut images = Vec::with_capacity(self.size());
        let mut start = 0;
        for &p in c.parts() {
            for k in (start + 1..=start + p).rev() {
                images.push(k);
            }
            start += p;
        }
        Permutation { images }
    }

    /// Row filling of the ribbon: the maximum of the descent class.
    pub fn w1(&self) -> Permutation {
        let n = self.size();
        let mut images = Vec::with_capacity(n);
        let mut top = n;
        for &p in &self.parts {
            for k in top + 1 - p..=top {
                images.push(k);
            }
            top -= p;
        }
        Permutation { images }
    }

    pub fn ribbon_shape(&self) -> Shape {
        Shape::Ribbon(self.clone())
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.descents().cmp(&other.descents()))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// All compositions of `n`, ordered lexicographically by descent set.
pub fn compositions_of(n: usize, limits: &Limits) -> Result<Vec<Composition>> {
    limits.check_n(n)?;
    Ok((1..n)
        .powerset()
        .map(|d| Composition::from_descents(&d, n).unwrap())
        .sorted()
        .collect())
}

/// `(reverse, complement, transpose)`.
pub fn ribbon_conjugates(alpha: &Composition) -> (Composition, Composition, Composition) {
    (alpha.reverse(), alpha.complement(), alpha.transpose())
}

/// A weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = crate::Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("partition parts must be weakly decreasing: {parts:?}"));
        }
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl Partition {
    /// Sorts the parts decreasingly and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.is_empty() {
            return invalid("a partition needs a positive part");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Parses decreasing comma separated parts.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|p| p.trim().parse::<usize>()).collect();
        match parts {
            Ok(p) if p.iter().all(|&x| x > 0) => Partition::try_from(p),
            _ => invalid(format!("cannot parse partition {s:?}")),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// `Σ (i-1) λ_i`.
    pub fn n_lambda(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &len)| {
                (0..len)
                    .map(|c| (len - c - 1) + (conj.parts[c] - r - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// For a hook `(n-h+1, 1^{h-1})`, the composition `(1^{h-1}, n-h+1)`.
    pub fn hook_composition(&self) -> Option<Composition> {
        if !self.is_hook() {
            return None;
        }
        let mut parts = vec![1; self.parts.len() - 1];
        parts.push(self.parts[0]);
        Some(Composition { parts })
    }

    pub fn as_composition(&self) -> Composition {
        Composition {
            parts: self.parts.clone(),
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = crate::Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return invalid(format!("{images:?} is not a permutation of 1..{n}"));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for 1-indexed `i`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn inv(&self) -> usize {
        let w = &self.images;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn descents(&self) -> Vec<usize> {
        self.images
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    pub fn descent_composition(&self) -> Composition {
        Composition::from_descents(&self.descents(), self.n()).unwrap()
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i - 1]).collect(),
        }
    }

    /// `s_i w`: swaps the values `i` and `i+1`.
    pub fn left_mul_s(&self, i: usize) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&v| {
                    if v == i {
                        i + 1
                    } else if v == i + 1 {
                        i
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    /// `w s_i`: swaps the positions `i` and `i+1`.
    pub fn right_mul_s(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// `ℓ(s_i w) < ℓ(w)`, i.e. `i+1` appears before `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.images.iter().position(|&x| x == v).unwrap();
        pos(i + 1) < pos(i)
    }

    /// Reduced word `[i_1, ..., i_k]` with `w = s_{i_1} ⋯ s_{i_k}`, peeling off the
    /// smallest left descent at each step.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.inv());
        let mut w = self.clone();
        'outer: loop {
            for i in 1..w.n() {
                if w.has_left_descent(i) {
                    word.push(i);
                    w = w.left_mul_s(i);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// Left weak order: `self ≤ w` iff `inv(w) = inv(self) + inv(w self⁻¹)`.
    pub fn left_weak_le(&self, w: &Permutation) -> bool {
        w.inv() == self.inv() + w.compose(&self.inverse()).inv()
    }

    /// `w · x` acting on positions: the vector `(v_{w⁻¹(1)}, ...)`, so that
    /// `w · x_i = x_{w(i)}` on exponent vectors.
    pub fn act_on_exponents(&self, e: &[u32]) -> Vec<u32> {
        let mut out = vec![0; e.len()];
        for (i, &v) in self.images.iter().enumerate() {
            out[v - 1] = e[i];
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            write!(f, "{}", self.images.iter().join(""))
        } else {
            write!(f, "[{}]", self.images.iter().join(","))
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All of `S_n` in lexicographic order of one-line notation.
pub fn permutations(n: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    limits.check_n(n)?;
    Ok((1..=n)
        .permutations(n)
        .map(|images| Permutation { images })
        .collect())
}

/// `{w : D(w) = D(α)}`, starting at `w_0(α)` and ending at `w_1(α)`.
pub fn descent_class(alpha: &Composition, limits: &Limits) -> Result<Vec<Permutation>> {
    let n = alpha.size();
    let d = alpha.descents();
    let mut out: Vec<Permutation> = permutations(n, limits)?
        .into_iter()
        .filter(|w| w.descents() == d)
        .collect();
    out.sort_by(|a, b| a.inv().cmp(&b.inv()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Ribbon(Composition),
    Straight(Partition),
}

impl Shape {
    pub fn size(&self) -> usize {
        match self {
            Shape::Ribbon(a) => a.size(),
            Shape::Straight(l) => l.size(),
        }
    }

    /// Row lengths and starting columns, listed top to bottom.
    pub fn rows(&self) -> Vec<(usize, usize)> {
        match self {
            Shape::Straight(l) => l.parts().iter().map(|&p| (0, p)).collect(),
            Shape::Ribbon(a) => {
                let mut rows = Vec::with_capacity(a.len());
                let mut start = 0;
                for &p in a.parts() {
                    rows.push((start, p));
                    start += p - 1;
                }
                rows.reverse();
                rows
            }
        }
    }

    /// Cells as `(row, column)` with rows counted from the top.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.rows()
            .into_iter()
            .enumerate()
            .flat_map(|(r, (start, len))| (start..start + len).map(move |c| (r, c)))
            .collect()
    }
}

/// A filling of a ribbon or straight shape, rows listed top to bottom.
/// Entries increase along rows and down columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub shape: Shape,
    pub rows: Vec<Vec<usize>>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl Tableau {
    pub fn new(shape: Shape, rows: Vec<Vec<usize>>) -> Result<Self> {
        let geometry = shape.rows();
        if geometry.len() != rows.len()
            || geometry.iter().zip(&rows).any(|((_, len), r)| *len != r.len())
        {
            return invalid("row lengths do not match the shape");
        }
        Ok(Tableau { shape, rows })
    }

    /// Fills a ribbon from a word read bottom row first, left to right.
    pub fn from_reading_word(alpha: &Composition, word: &[usize]) -> Result<Self> {
        if word.len() != alpha.size() {
            return invalid("word length differs from the ribbon size");
        }
        let mut rows = Vec::with_capacity(alpha.len());
        let mut k = 0;
        for &p in alpha.parts() {
            rows.push(word[k..k + p].to_vec());
            k += p;
        }
        rows.reverse();
        Tableau::new(Shape::Ribbon(alpha.clone()), rows)
    }

    fn entries(&self) -> HashMap<(usize, usize), usize> {
        let geometry = self.shape.rows();
        let mut m = HashMap::new();
        for (r, ((start, _), row)) in geometry.iter().zip(&self.rows).enumerate() {
            for (k, &v) in row.iter().enumerate() {
                m.insert((r, start + k), v);
            }
        }
        m
    }

    pub fn is_semistandard(&self) -> bool {
        let e = self.entries();
        e.iter().all(|(&(r, c), &v)| {
            let left_ok = c == 0 || e.get(&(r, c - 1)).is_none_or(|&u| u <= v);
            let up_ok = r == 0 || e.get(&(r - 1, c)).is_none_or(|&u| u < v);
            left_ok && up_ok
        })
    }

    pub fn is_standard(&self) -> bool {
        let mut all: Vec<usize> = self.rows.iter().flatten().copied().collect();
        all.sort_unstable();
        all.iter().enumerate().all(|(k, &v)| v == k + 1)
            && self.is_semistandard()
            && self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
    }

    /// Bottom row first, left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Row index (from the top) of each entry of a standard tableau.
    fn row_of(&self) -> Vec<usize> {
        let n = self.rows.iter().map(|r| r.len()).sum::<usize>();
        let mut out = vec![0; n + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                out[v] = r;
            }
        }
        out
    }

    /// `i` such that `i+1` sits in a strictly lower row than `i`.
    pub fn descents(&self) -> Vec<usize> {
        let row = self.row_of();
        (1..row.len() - 1).filter(|&i| row[i + 1] > row[i]).collect()
    }

    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    pub fn descent_composition(&self) -> Composition {
        Composition::from_descents(&self.descents(), self.shape.size()).unwrap()
    }

    /// Exchanges the entries `i` and `i+1`.
    pub fn swap_entries(&self, i: usize) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| {
                        if v == i {
                            i + 1
                        } else if v == i + 1 {
                            i
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        Tableau {
            shape: self.shape.clone(),
            rows,
        }
    }

    /// Row index of entry `v` in a standard tableau.
    pub fn row_index(&self, v: usize) -> usize {
        self.rows.iter().position(|r| r.contains(&v)).unwrap()
    }
}

/// Standard fillings of `shape` as linear extensions of its cell poset,
/// in lexicographic order of the row-concatenated filling.
pub fn standard_tableaux(shape: &Shape, limits: &Limits) -> Result<Vec<Tableau>> {
    let n = shape.size();
    limits.check_n(n)?;
    let cells = shape.cells();
    let index: HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let preds: Vec<Vec<usize>> = cells
        .iter()
        .map(|&(r, c)| {
            let mut p = Vec::new();
            if c > 0 {
                if let Some(&k) = index.get(&(r, c - 1)) {
                    p.push(k);
                }
            }
            if r > 0 {
                if let Some(&k) = index.get(&(r - 1, c)) {
                    p.push(k);
                }
            }
            p
        })
        .collect();

    fn rec(
        next: usize,
        n: usize,
        preds: &[Vec<usize>],
        fill: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if next > n {
            out.push(fill.clone());
            return;
        }
        for k in 0..n {
            if fill[k] == 0 && preds[k].iter().all(|&p| fill[p] != 0) {
                fill[k] = next;
                rec(next + 1, n, preds, fill, out);
                fill[k] = 0;
            }
        }
    }

    let mut fillings = Vec::new();
    rec(1, n, &preds, &mut vec![0; n], &mut fillings);
    fillings.sort();
    let geometry = shape.rows();
    Ok(fillings
        .into_iter()
        .map(|f| {
            let mut rows = Vec::with_capacity(geometry.len());
            let mut k = 0;
            for &(_, len) in &geometry {
                rows.push(f[k..k + len].to_vec());
                k += len;
            }
            Tableau {
                shape: shape.clone(),
                rows,
            }
        })
        .collect())
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`
/// (`mu` may be any weak composition of the same size).
pub fn kostka(lambda: &Partition, mu: &[usize]) -> Result<u64> {
    if lambda.size() != mu.iter().sum::<usize>() {
        return invalid(format!(
            "kostka: |λ| = {} differs from |μ| = {}",
            lambda.size(),
            mu.iter().sum::<usize>()
        ));
    }

    // peel horizontal strips of size mu_k from the outside, largest letter first
    fn rec(shape: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), u64>) -> u64 {
        if mu.is_empty() {
            return u64::from(shape.iter().all(|&p| p == 0));
        }
        let key = (shape.clone(), mu.len());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let k = mu[mu.len() - 1];
        let rest = &mu[..mu.len() - 1];
        let mut total = 0;
        // inner shape ν with λ/ν a horizontal strip: λ_{i+1} ≤ ν_i ≤ λ_i
        let len = shape.len();
        let mut inner = vec![0; len];
        fn strips(
            i: usize,
            left: usize,
            shape: &[usize],
            inner: &mut Vec<usize>,
            rest: &[usize],
            memo: &mut HashMap<(Vec<usize>, usize), u64>,
            total: &mut u64,
        ) {
            if i == shape.len() {
                if left == 0 {
                    *total += rec(inner.clone(), rest, memo);
                }
                return;
            }
            let lo = if i + 1 < shape.len() { shape[i + 1] } else { 0 };
            for v in lo..=shape[i] {
                let removed = shape[i] - v;
                if removed > left {
                    continue;
                }
                inner[i] = v;
                strips(i + 1, left - removed, shape, inner, rest, memo, total);
            }
        }
        strips(0, k, &shape, &mut inner, rest, memo, &mut total);
        memo.insert(key, total);
        total
    }

    let mut memo = HashMap::new();
    Ok(rec(lambda.parts().to_vec(), mu, &mut memo))
}

/// Pairs `(top, bottom)` of a two-line array, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLineArray {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl TwoLineArray {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        if top.len() != bottom.len() {
            return invalid("two-line array rows have different lengths");
        }
        let pairs: Vec<(usize, usize)> = top.iter().copied().zip(bottom.iter().copied()).collect();
        if pairs.windows(2).any(|w| w[0] > w[1]) {
            return invalid("two-line array columns must be lexicographically sorted");
        }
        if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
            return invalid("two-line array entries must be positive");
        }
        Ok(TwoLineArray { top, bottom })
    }

    /// Top row `1^{μ_1} 2^{μ_2} ⋯`, bottom row `w`; `w` must increase within each block.
    pub fn from_type(mu: &Composition, w: &Permutation) -> Result<Self> {
        if mu.size() != w.n() {
            return invalid("type and permutation sizes differ");
        }
        let top = mu
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(k, &p)| std::iter::repeat_n(k + 1, p))
            .collect();
        TwoLineArray::new(top, w.images().to_vec())
    }

    /// Block sizes of the top row.
    pub fn content(&self) -> Vec<usize> {
        let max = self.top.iter().copied().max().unwrap_or(0);
        (1..=max)
            .map(|v| self.top.iter().filter(|&&t| t == v).count())
            .collect()
    }
}

/// Row-insertion RSK: inserts the bottom row, records the top row.
pub fn rsk(array: &TwoLineArray) -> Result<(Tableau, Tableau)> {
    TwoLineArray::new(array.top.clone(), array.bottom.clone())?;
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (&t, &b) in array.top.iter().zip(&array.bottom) {
        let mut x = b;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![t]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(k) => {
                    x = std::mem::replace(&mut p[r][k], x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(t);
                    break;
                }
            }
        }
    }
    let shape = Partition::new(p.iter().map(|r| r.len()).collect())?;
    Ok((
        Tableau {
            shape: Shape::Straight(shape.clone()),
            rows: p,
        },
        Tableau {
            shape: Shape::Straight(shape),
            rows: q,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn compositions_count_and_order() {
        let l = Limits::default();
        assert_eq!(compositions_of(1, &l).unwrap(), vec![c(&[1])]);
        let three = compositions_of(3, &l).unwrap();
        assert_eq!(three, vec![c(&[3]), c(&[1, 2]), c(&[1, 1, 1]), c(&[2, 1])]);
        assert_eq!(compositions_of(6, &l).unwrap().len(), 32);
        assert!(compositions_of(13, &l).is_err());
    }

    #[test]
    fn descent_round_trip() {
        for a in compositions_of(7, &Limits::default()).unwrap() {
            assert_eq!(a.descents().len(), a.len() - 1);
            assert_eq!(Composition::from_descents(&a.descents(), 7).unwrap(), a);
        }
    }

    #[test]
    fn conjugates_of_displayed_ribbon() {
        let (r, co, tr) = ribbon_conjugates(&c(&[2, 3, 1, 1]));
        assert_eq!(r, c(&[1, 1, 3, 2]));
        assert_eq!(co, c(&[1, 2, 1, 3]));
        assert_eq!(tr, c(&[3, 1, 2, 1]));
        assert_eq!(c(&[4]).complement(), c(&[1, 1, 1, 1]));
        assert_eq!(c(&[4]).transpose(), c(&[1, 1, 1, 1]));
    }

    // Transpose as the ribbon diagram reflected in the main diagonal.
    fn diagram_transpose(a: &Composition) -> Composition {
        let cells = a.ribbon_shape().cells();
        let reflected: Vec<(usize, usize)> = cells.iter().map(|&(r, c)| (c, r)).collect();
        let rows = reflected.iter().map(|x| x.0).max().unwrap() + 1;
        // row lengths listed bottom to top
        let parts = (0..rows)
            .rev()
            .map(|r| reflected.iter().filter(|x| x.0 == r).count())
            .collect();
        Composition::new(parts).unwrap()
    }

    #[test]
    fn transpose_matches_diagram() {
        assert_eq!(c(&[1, 2, 1]).transpose(), c(&[2, 2]));
        for n in 1..=8 {
            for a in compositions_of(n, &Limits::default()).unwrap() {
                assert_eq!(a.transpose(), diagram_transpose(&a), "{a}");
                assert_eq!(a.transpose().transpose(), a);
                assert_eq!(a.transpose(), a.reverse().complement());
            }
        }
    }

    #[test]
    fn descent_class_endpoints() {
        let l = Limits::default();
        let a = c(&[1, 2, 1]);
        let class = descent_class(&a, &l).unwrap();
        assert_eq!(class.len(), 5);
        assert_eq!(class[0], Permutation::new(vec![2, 1, 4, 3]).unwrap());
        assert_eq!(class[4], Permutation::new(vec![4, 2, 3, 1]).unwrap());
        assert_eq!(a.w0(), class[0]);
        assert_eq!(a.w1(), class[4]);
        assert_eq!(descent_class(&c(&[5]), &l).unwrap(), vec![Permutation::identity(5)]);
        assert_eq!(
            descent_class(&c(&[1, 1, 1, 1]), &l).unwrap(),
            vec![Permutation::longest(4)]
        );
    }

    #[test]
    fn descent_classes_are_weak_intervals() {
        let l = Limits::default();
        for n in 1..=5 {
            let all = permutations(n, &l).unwrap();
            for a in compositions_of(n, &l).unwrap() {
                let class = descent_class(&a, &l).unwrap();
                let (w0, w1) = (a.w0(), a.w1());
                for w in &class {
                    assert!(w0.left_weak_le(w) && w.left_weak_le(&w1));
                }
                let interval: Vec<_> = all
                    .iter()
                    .filter(|w| w0.left_weak_le(w) && w.left_weak_le(&w1))
                    .cloned()
                    .sorted()
                    .collect();
                assert_eq!(interval, class.iter().cloned().sorted().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn classes_partition_sn() {
        let l = Limits::default();
        for n in 1..=7 {
            let total: usize = compositions_of(n, &l)
                .unwrap()
                .iter()
                .map(|a| descent_class(a, &l).unwrap().len())
                .sum();
            assert_eq!(total, (1..=n).product::<usize>());
        }
    }

    #[test]
    fn permutation_statistics() {
        let l = Limits::default();
        for w in permutations(5, &l).unwrap() {
            assert_eq!(w.inv(), w.inverse().inv());
            assert_eq!(w.reduced_word().len(), w.inv());
            let mut v = Permutation::identity(5);
            for &i in w.reduced_word().iter().rev() {
                v = v.left_mul_s(i);
            }
            assert_eq!(v, w);
        }
        let w = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(w.descents(), vec![1]);
        assert_eq!(w.maj(), 1);
        assert_eq!(w.inv(), 2);
    }

    #[test]
    fn ribbon_tableaux_biject_with_class() {
        let l = Limits::default();
        let t = standard_tableaux(&Shape::Ribbon(c(&[1, 2, 1])), &l).unwrap();
        assert_eq!(t.len(), 5);
        for n in 1..=6 {
            for a in compositions_of(n, &l).unwrap() {
                let words: BTreeSet<Vec<usize>> = standard_tableaux(&a.ribbon_shape(), &l)
                    .unwrap()
                    .iter()
                    .map(|t| t.reading_word())
                    .collect();
                let class: BTreeSet<Vec<usize>> = descent_class(&a, &l)
                    .unwrap()
                    .iter()
                    .map(|w| w.images().to_vec())
                    .collect();
                assert_eq!(words, class);
                for t in standard_tableaux(&a.ribbon_shape(), &l).unwrap() {
                    assert!(t.is_standard());
                    let w = Permutation::new(t.reading_word()).unwrap();
                    assert_eq!(t.descents(), w.inverse().descents());
                }
            }
        }
    }

    #[test]
    fn straight_tableaux() {
        let l = Limits::default();
        let p = |v: &[usize]| Shape::Straight(Partition::new(v.to_vec()).unwrap());
        assert_eq!(standard_tableaux(&p(&[4]), &l).unwrap().len(), 1);
        let t = standard_tableaux(&p(&[2, 1]), &l).unwrap();
        let majs: BTreeSet<usize> = t.iter().map(|t| t.maj()).collect();
        assert_eq!(majs, BTreeSet::from([1, 2]));
        // hook length formula
        for lam in partitions_of(6) {
            let hooks: usize = lam.hook_lengths().iter().flatten().product();
            assert_eq!(
                standard_tableaux(&Shape::Straight(lam.clone()), &l).unwrap().len(),
                720 / hooks
            );
        }
    }

    #[test]
    fn kostka_numbers() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]).unwrap(), 2);
        assert_eq!(kostka(&p(&[1, 1]), &[2]).unwrap(), 0);
        for n in 1..=6 {
            for lam in partitions_of(n) {
                assert_eq!(kostka(&lam, lam.parts()).unwrap(), 1);
                let ones = vec![1; n];
                let syt = standard_tableaux(&Shape::Straight(lam.clone()), &Limits::default())
                    .unwrap()
                    .len() as u64;
                assert_eq!(kostka(&lam, &ones).unwrap(), syt);
            }
        }
        assert!(kostka(&p(&[2]), &[1]).is_err());
    }

    #[test]
    fn rsk_two_line_array() {
        let w = Permutation::new(vec![3, 5, 6, 1, 2, 4, 7]).unwrap();
        let arr = TwoLineArray::from_type(&c(&[3, 2, 2]), &w).unwrap();
        assert_eq!(arr.top, vec![1, 1, 1, 2, 2, 3, 3]);
        let (p, q) = rsk(&arr).unwrap();
        assert!(p.is_standard());
        assert!(q.is_semistandard());
        assert_eq!(p.shape, q.shape);
        assert_eq!(p.descents(), w.inverse().descents());
        assert!(TwoLineArray::new(vec![2, 1], vec![1, 2]).is_err());

        let id = Permutation::identity(4);
        let (p, q) = rsk(&TwoLineArray::new(vec![1, 2, 3, 4], id.images().to_vec()).unwrap()).unwrap();
        assert_eq!(p.rows, vec![vec![1, 2, 3, 4]]);
        assert_eq!(q.rows, vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn rsk_descents_exhaustive() {
        for n in 1..=5 {
            for w in permutations(n, &Limits::default()).unwrap() {
                let arr = TwoLineArray::new((1..=n).collect(), w.images().to_vec()).unwrap();
                let (p, _) = rsk(&arr).unwrap();
                assert_eq!(p.descents(), w.inverse().descents());
            }
        }
    }

    #[test]
    fn partitions_and_hooks() {
        assert_eq!(partitions_of(5).len(), 7);
        let h = Partition::new(vec![3, 1, 1]).unwrap();
        assert!(h.is_hook());
        assert_eq!(h.hook_composition().unwrap(), c(&[1, 1, 3]));
        assert!(!Partition::new(vec![2, 2]).unwrap().is_hook());
        assert_eq!(Partition::new(vec![3, 1]).unwrap().conjugate().parts(), &[2, 1, 1]);
        assert_eq!(Partition::new(vec![2, 1, 1]).unwrap().n_lambda(), 3);
    }

    #[test]
    fn serde_shapes() {
        let a = c(&[1, 2, 1]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,2,1]");
        let b: Composition = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(b, c(&[2, 1]));
        assert!(serde_json::from_str::<Composition>("[0,1]").is_err());
        let w = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[2,1]");
        let t = Tableau::from_reading_word(&a, &[2, 1, 4, 3]).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[3],[1,4],[2]]");
    }
}
