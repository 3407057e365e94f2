//! Arithmetic on the cyclically ordered ground set `[n] = {1, .., n}`.
//!
//! Subsets are stored as a single `u64` bitmask (bit `a - 1` holds element
//! `a`), so the ground set is capped at 64 elements. Comparing two masks of
//! equal cardinality as integers is exactly the colexicographic order, which
//! is the canonical order used throughout the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Largest supported ground set.
pub const MAX_GROUND: u8 = 64;

/// The ground set `[n]`, considered cyclically ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Ground(u8);

impl Ground {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND as usize {
            return invalid(format!("ground set size {n} outside 1..={MAX_GROUND}"));
        }
        Ok(Ground(n as u8))
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0 as usize
    }

    /// The whole ground set as a subset.
    #[inline]
    pub fn full(self) -> Subset {
        Subset(mask_below(self.n()))
    }

    pub fn contains(self, a: usize) -> bool {
        (1..=self.n()).contains(&a)
    }

    pub fn check_element(self, a: usize) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            invalid(format!("element {a} outside [{}]", self.n()))
        }
    }

    pub fn check_subset(self, s: Subset) -> Result<()> {
        if s.0 & !self.full().0 != 0 {
            return invalid(format!("subset {s} not contained in [{}]", self.n()));
        }
        Ok(())
    }

    /// Element following `a` in the cyclic order.
    #[inline]
    pub fn succ(self, a: usize) -> usize {
        if a == self.n() {
            1
        } else {
            a + 1
        }
    }

    /// Element preceding `a` in the cyclic order.
    #[inline]
    pub fn pred(self, a: usize) -> usize {
        if a == 1 {
            self.n()
        } else {
            a - 1
        }
    }

    /// Position of `a` in the shifted linear order `<_i`, starting at 0 for `i`.
    #[inline]
    pub fn offset(self, i: usize, a: usize) -> usize {
        (a + self.n() - i) % self.n()
    }

    /// Compares `a <_i b` in the linear order `i < i+1 < .. < n < 1 < .. < i-1`.
    #[inline]
    pub fn lt_from(self, i: usize, a: usize, b: usize) -> bool {
        self.offset(i, a) < self.offset(i, b)
    }

    /// All `k`-subsets of `[n]` in colexicographic order.
    pub fn k_subsets(self, k: usize) -> KSubsets {
        KSubsets::new(self.n(), k)
    }

    /// Rotation `a -> a + 1 (mod n)` applied to a subset.
    pub fn rotate(self, s: Subset) -> Subset {
        let n = self.n();
        let top = (s.0 >> (n - 1)) & 1;
        Subset(((s.0 << 1) & mask_below(n)) | top)
    }

    /// Re-indexes `s` so that element `i` becomes bit 0 (the first element of `<_i`).
    pub fn rotate_to(self, i: usize, s: Subset) -> u64 {
        let n = self.n();
        let r = (i - 1) as u32;
        if r == 0 {
            return s.0;
        }
        ((s.0 >> r) | (s.0 << (n as u32 - r))) & mask_below(n)
    }
}

impl TryFrom<u8> for Ground {
    type Error = crate::Error;
    fn try_from(n: u8) -> Result<Self> {
        Ground::new(n as usize)
    }
}

impl From<Ground> for u8 {
    fn from(g: Ground) -> u8 {
        g.0
    }
}

#[inline]
pub(crate) fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `[n]`. Equality is set equality; `Ord` is colexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for a in elements {
            if a == 0 || a > MAX_GROUND as usize {
                return invalid(format!("element {a} outside 1..={MAX_GROUND}"));
            }
            let bit = 1u64 << (a - 1);
            if bits & bit != 0 {
                return invalid(format!("duplicate element {a}"));
            }
            bits |= bit;
        }
        Ok(Subset(bits))
    }

    /// Builds a subset from elements known to be valid. Panics on out of range input.
    pub fn of(elements: &[usize]) -> Self {
        elements.iter().fold(Subset::EMPTY, |s, &a| s.with(a))
    }

    #[inline]
    pub fn singleton(a: usize) -> Self {
        Subset(1u64 << (a - 1))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, a: usize) -> bool {
        (1..=64).contains(&a) && self.0 >> (a - 1) & 1 == 1
    }

    #[inline]
    pub fn with(self, a: usize) -> Self {
        Subset(self.0 | 1u64 << (a - 1))
    }

    #[inline]
    pub fn without(self, a: usize) -> Self {
        Subset(self.0 & !(1u64 << (a - 1)))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Compact label: digits run together when every element is below 10
    /// (`135`), otherwise comma separated (`1,5,10`).
    pub fn label(self) -> String {
        if self.iter().all(|a| a < 10) {
            self.iter().map(|a| a.to_string()).collect()
        } else {
            self.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, a) in self.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the elements of a [`Subset`] in increasing order.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// Colexicographic enumeration of `k`-subsets (Gosper's hack).
pub struct KSubsets {
    current: Option<u64>,
    limit: u64,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        let current = if k > n { None } else { Some(mask_below(k)) };
        let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
        KSubsets { current, limit }
    }
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let v = self.current?;
        self.current = if v == 0 {
            None
        } else {
            let c = v & v.wrapping_neg();
            let r = v.checked_add(c);
            match r {
                Some(r) => {
                    let next = (((r ^ v) >> 2) / c) | r;
                    (self.limit == u64::MAX || next < self.limit).then_some(next)
                }
                None => None,
            }
        };
        if self.limit != u64::MAX && v >= self.limit {
            return None;
        }
        Some(Subset(v))
    }
}

/// Openness of a cyclic interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Openness {
    /// `(a, b)`
    Open,
    /// `[a, b]`
    Closed,
    /// `(a, b]`
    HalfOpenLeft,
    /// `[a, b)`
    HalfOpenRight,
}

/// A cyclic interval between two elements of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicInterval {
    pub a: usize,
    pub b: usize,
    pub openness: Openness,
}

impl CyclicInterval {
    pub fn open(a: usize, b: usize) -> Self {
        CyclicInterval { a, b, openness: Openness::Open }
    }

    pub fn closed(a: usize, b: usize) -> Self {
        CyclicInterval { a, b, openness: Openness::Closed }
    }

    /// `[a, b)`
    pub fn closed_open(a: usize, b: usize) -> Self {
        CyclicInterval { a, b, openness: Openness::HalfOpenRight }
    }

    /// `(a, b]`
    pub fn open_closed(a: usize, b: usize) -> Self {
        CyclicInterval { a, b, openness: Openness::HalfOpenLeft }
    }

    /// Members of the interval. `(a, a)` is `[n] \ {a}` and `[a, a]` is `{a}`;
    /// the half-open `[a, a)` and `(a, a]` are therefore `[n]`.
    pub fn members(&self, g: Ground) -> Result<Subset> {
        g.check_element(self.a)?;
        g.check_element(self.b)?;
        let (a, b) = (self.a, self.b);
        let interior = if a == b {
            g.full().without(a)
        } else {
            let mut s = Subset::EMPTY;
            let mut x = g.succ(a);
            while x != b {
                s = s.with(x);
                x = g.succ(x);
            }
            s
        };
        Ok(match self.openness {
            Openness::Open => interior,
            Openness::Closed if a == b => Subset::singleton(a),
            Openness::Closed => interior.with(a).with(b),
            Openness::HalfOpenRight => interior.with(a),
            Openness::HalfOpenLeft => interior.with(b),
        })
    }
}

/// Whether `seq` is a rotation of a strictly increasing sequence.
pub fn cyclically_ordered(seq: &[usize], g: Ground) -> Result<bool> {
    let mut seen = Subset::EMPTY;
    for &a in seq {
        g.check_element(a)?;
        if seen.contains(a) {
            return invalid(format!("duplicate element {a} in sequence"));
        }
        seen = seen.with(a);
    }
    Ok(is_cyclically_ordered(seq))
}

/// Unchecked variant of [`cyclically_ordered`]: at most one cyclic descent.
pub(crate) fn is_cyclically_ordered<T: PartialOrd>(seq: &[T]) -> bool {
    let len = seq.len();
    if len <= 2 {
        return true;
    }
    let descents = (0..len).filter(|&t| seq[t] > seq[(t + 1) % len]).count();
    descents <= 1
}

/// Weak separation of two equal-size subsets.
pub fn weakly_separated(i: Subset, j: Subset) -> Result<bool> {
    if i.len() != j.len() {
        return invalid(format!("weak separation needs equal cardinalities, got {i} and {j}"));
    }
    Ok(separated_bits(i, j))
}

/// `I \ J` and `J \ I` occupy disjoint cyclic arcs: walking round the circle,
/// the labels of the symmetric difference change at most twice.
#[inline]
pub fn separated_bits(i: Subset, j: Subset) -> bool {
    let a = i.0 & !j.0;
    let b = j.0 & !i.0;
    if a == 0 || b == 0 {
        return true;
    }
    // Positions where membership in `a` switches, read in cyclic order over
    // the occupied positions only.
    let mut both = a | b;
    let first_in_a = a & both.wrapping_neg() != 0;
    let mut prev = first_in_a;
    let mut changes = 0;
    both &= both - 1;
    while both != 0 {
        let low = both & both.wrapping_neg();
        let in_a = a & low != 0;
        if in_a != prev {
            changes += 1;
            if changes > 2 {
                return false;
            }
        }
        prev = in_a;
        both &= both - 1;
    }
    if prev != first_in_a {
        changes += 1;
    }
    changes <= 2
}

/// The shifted termwise order `I <=_i J`.
pub fn shifted_leq(i: usize, a: Subset, b: Subset, g: Ground) -> Result<bool> {
    g.check_element(i)?;
    g.check_subset(a)?;
    g.check_subset(b)?;
    if a.len() != b.len() {
        return invalid(format!("shifted order needs equal cardinalities, got {a} and {b}"));
    }
    Ok(shifted_leq_bits(g, i, a, b))
}

/// Unchecked `I <=_i J`: every prefix of `<_i` holds at least as many
/// elements of `I` as of `J`.
#[inline]
pub(crate) fn shifted_leq_bits(g: Ground, i: usize, a: Subset, b: Subset) -> bool {
    let ra = g.rotate_to(i, a);
    let rb = g.rotate_to(i, b);
    let mut balance: i32 = 0;
    for t in 0..g.n() {
        balance += ((ra >> t) & 1) as i32 - ((rb >> t) & 1) as i32;
        if balance < 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> Ground {
        Ground::new(n).unwrap()
    }

    /// Literal four-tuple definition.
    fn ws_oracle(n: usize, i: Subset, j: Subset) -> bool {
        let a = i.difference(j);
        let b = j.difference(i);
        for x in a.iter() {
            for y in b.iter() {
                for x2 in a.iter() {
                    for y2 in b.iter() {
                        let seq = [x, y, x2, y2];
                        let distinct = x != x2 && y != y2;
                        if distinct && cyclically_ordered(&seq, g(n)).unwrap() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Chord form: some cyclic interval holds all of I \ J and none of J \ I.
    fn ws_chord(n: usize, i: Subset, j: Subset) -> bool {
        let a = i.difference(j);
        let b = j.difference(i);
        if a.is_empty() || b.is_empty() {
            return true;
        }
        (1..=n).any(|c| {
            (1..=n).any(|d| {
                let arc = CyclicInterval::closed(c, d).members(g(n)).unwrap();
                a.is_subset_of(arc) && arc.intersection(b).is_empty()
            })
        })
    }

    #[test]
    fn cyclic_order_examples() {
        assert!(cyclically_ordered(&[2, 3, 1], g(3)).unwrap());
        assert!(!cyclically_ordered(&[1, 3, 4, 2], g(4)).unwrap());
        assert!(cyclically_ordered(&[5, 1, 3], g(6)).unwrap());
        assert!(cyclically_ordered(&[1, 1], g(3)).is_err());
        assert!(cyclically_ordered(&[1, 7], g(6)).is_err());
    }

    #[test]
    fn interval_examples() {
        assert_eq!(CyclicInterval::open(3, 1).members(g(4)).unwrap(), Subset::of(&[4]));
        assert_eq!(CyclicInterval::closed(2, 4).members(g(6)).unwrap(), Subset::of(&[2, 3, 4]));
        assert_eq!(CyclicInterval::open(2, 2).members(g(5)).unwrap(), Subset::of(&[1, 3, 4, 5]));
        assert_eq!(CyclicInterval::closed(2, 2).members(g(5)).unwrap(), Subset::of(&[2]));
        assert_eq!(CyclicInterval::closed_open(5, 2).members(g(6)).unwrap(), Subset::of(&[5, 6, 1]));
        assert!(CyclicInterval::open(0, 2).members(g(5)).is_err());
    }

    #[test]
    fn closed_is_open_plus_endpoints() {
        let n = 7;
        for a in 1..=n {
            for b in (1..=n).filter(|&b| b != a) {
                let open = CyclicInterval::open(a, b).members(g(n)).unwrap();
                let closed = CyclicInterval::closed(a, b).members(g(n)).unwrap();
                assert_eq!(closed, open.with(a).with(b), "({a},{b})");
            }
        }
    }

    #[test]
    fn weak_separation_examples() {
        assert!(!weakly_separated(Subset::of(&[1, 3]), Subset::of(&[2, 4])).unwrap());
        let s = Subset::of(&[2, 5, 6]);
        assert!(weakly_separated(s, s).unwrap());
        assert!(weakly_separated(Subset::of(&[1, 2, 3]), Subset::of(&[3, 4, 5])).unwrap());
        assert!(weakly_separated(Subset::of(&[1, 2]), Subset::of(&[3])).is_err());
    }

    #[test]
    fn weak_separation_matches_definitions_exhaustively() {
        for n in 1..=8 {
            let gr = g(n);
            for k in 0..=n {
                let sets: Vec<_> = gr.k_subsets(k).collect();
                for &i in &sets {
                    for &j in &sets {
                        let fast = separated_bits(i, j);
                        assert_eq!(fast, ws_oracle(n, i, j), "{i} {j} n={n}");
                        assert_eq!(fast, ws_chord(n, i, j), "chord {i} {j} n={n}");
                        assert_eq!(fast, separated_bits(j, i));
                        assert_eq!(fast, separated_bits(gr.rotate(i), gr.rotate(j)));
                    }
                }
            }
        }
    }

    #[test]
    fn shifted_order_examples() {
        let i = Subset::of(&[1, 2, 4]);
        let j = Subset::of(&[2, 4, 5]);
        assert!(shifted_leq(1, i, j, g(5)).unwrap());
        assert!(!shifted_leq(2, i, j, g(5)).unwrap());
        for t in 1..=5 {
            assert!(shifted_leq(t, i, i, g(5)).unwrap());
        }
        assert!(shifted_leq(1, i, Subset::of(&[1]), g(5)).is_err());
    }

    /// Sort by `<_i` and compare termwise, as literally defined.
    fn shifted_oracle(n: usize, i: usize, a: Subset, b: Subset) -> bool {
        let key = |x: &usize| (x + n - i) % n;
        let mut av = a.to_vec();
        let mut bv = b.to_vec();
        av.sort_by_key(key);
        bv.sort_by_key(key);
        av.iter().zip(&bv).all(|(x, y)| key(x) <= key(y))
    }

    #[test]
    fn shifted_order_is_partial_order() {
        let n = 5;
        let gr = g(n);
        let sets: Vec<_> = gr.k_subsets(2).collect();
        for i in 1..=n {
            for &a in &sets {
                assert!(shifted_leq_bits(gr, i, a, a));
                for &b in &sets {
                    let ab = shifted_leq_bits(gr, i, a, b);
                    assert_eq!(ab, shifted_oracle(n, i, a, b));
                    if ab && shifted_leq_bits(gr, i, b, a) {
                        assert_eq!(a, b);
                    }
                    for &c in &sets {
                        if ab && shifted_leq_bits(gr, i, b, c) {
                            assert!(shifted_leq_bits(gr, i, a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn k_subsets_are_colex_and_complete() {
        for n in 1..=9 {
            for k in 0..=n {
                let v: Vec<_> = g(n).k_subsets(k).collect();
                let expected = (0..(1u64 << n)).filter(|m| m.count_ones() as usize == k).count();
                assert_eq!(v.len(), expected, "n={n} k={k}");
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|s| s.len() == k));
            }
        }
        assert_eq!(g(64).k_subsets(64).count(), 1);
        assert_eq!(g(64).k_subsets(1).count(), 64);
    }

    #[test]
    fn rotation_and_labels() {
        let gr = g(5);
        assert_eq!(gr.rotate(Subset::of(&[1, 5])), Subset::of(&[1, 2]));
        assert_eq!(Subset::of(&[1, 3, 5]).label(), "135");
        assert_eq!(Subset::of(&[1, 10]).label(), "1,10");
        assert_eq!(Subset::of(&[2, 4]).to_string(), "{2,4}");
        assert_eq!(gr.rotate_to(3, Subset::of(&[3, 1])), 0b01001);
    }
}
