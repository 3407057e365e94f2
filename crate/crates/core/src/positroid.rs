//! Grassmann necklaces, decorated permutations and the positroids they define.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::{binomial, Budget};
use crate::cyclic::{is_cyclically_ordered, separated_bits, shifted_leq_bits, Ground, Subset};
use crate::error::{invalid, Result};

/// Decoration of a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedColor {
    /// Colour `+1`: the element lies in no necklace entry.
    Loop,
    /// Colour `-1`: the element lies in every necklace entry.
    Coloop,
}

impl FixedColor {
    pub fn sign(self) -> i8 {
        match self {
            FixedColor::Loop => 1,
            FixedColor::Coloop => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(FixedColor::Loop),
            -1 => Ok(FixedColor::Coloop),
            other => invalid(format!("fixed point colour must be +1 or -1, got {other}")),
        }
    }
}

/// A permutation of `[n]` with a colour on every fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecoratedPermutation {
    ground: Ground,
    perm: Vec<usize>,
    inverse: Vec<usize>,
    colors: Vec<Option<FixedColor>>,
}

impl DecoratedPermutation {
    /// `perm[i - 1]` is the image of `i`; `colors` must name exactly the fixed points.
    pub fn new(perm: Vec<usize>, colors: &BTreeMap<usize, FixedColor>) -> Result<Self> {
        let ground = Ground::new(perm.len())?;
        let n = ground.n();
        let mut inverse = vec![0; n];
        for (idx, &v) in perm.iter().enumerate() {
            ground.check_element(v)?;
            if inverse[v - 1] != 0 {
                return invalid(format!("{v} appears twice in the permutation"));
            }
            inverse[v - 1] = idx + 1;
        }
        let mut col = vec![None; n];
        for i in 1..=n {
            let fixed = perm[i - 1] == i;
            match (fixed, colors.get(&i)) {
                (true, Some(&c)) => col[i - 1] = Some(c),
                (true, None) => return invalid(format!("fixed point {i} has no colour")),
                (false, Some(_)) => return invalid(format!("{i} is not a fixed point but has a colour")),
                (false, None) => {}
            }
        }
        if let Some((&extra, _)) = colors.range(n + 1..).next() {
            return invalid(format!("colour given for {extra}, outside [{n}]"));
        }
        Ok(DecoratedPermutation { ground, perm, inverse, colors: col })
    }

    /// A permutation with every fixed point given the same colour.
    pub fn with_uniform_color(perm: Vec<usize>, color: FixedColor) -> Result<Self> {
        let colors =
            perm.iter().enumerate().filter(|&(idx, &v)| v == idx + 1).map(|(idx, _)| (idx + 1, color)).collect();
        Self::new(perm, &colors)
    }

    /// The permutation `i -> i + k (mod n)`, whose necklace is the uniform one.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Ground::new(n)?;
        if k > n {
            return invalid(format!("k = {k} exceeds n = {n}"));
        }
        let perm = (1..=n).map(|i| (i - 1 + k) % n + 1).collect();
        let color = if k == 0 { FixedColor::Loop } else { FixedColor::Coloop };
        Self::with_uniform_color(perm, color)
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    /// Image of `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i - 1]
    }

    #[inline]
    pub fn preimage(&self, j: usize) -> usize {
        self.inverse[j - 1]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn color(&self, i: usize) -> Option<FixedColor> {
        self.colors[i - 1]
    }

    /// Colours keyed by fixed point.
    pub fn colors(&self) -> BTreeMap<usize, FixedColor> {
        (1..=self.n()).filter_map(|i| self.color(i).map(|c| (i, c))).collect()
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.perm[i - 1] == i
    }

    /// The Grassmann necklace: `I_i = { j : j <_i pi^-1(j) }` plus the coloops.
    pub fn to_necklace(&self) -> GrassmannNecklace {
        let g = self.ground;
        let entries = (1..=self.n())
            .map(|i| {
                (1..=self.n())
                    .filter(|&j| match self.color(j) {
                        Some(c) => c == FixedColor::Coloop,
                        None => g.lt_from(i, j, self.preimage(j)),
                    })
                    .fold(Subset::EMPTY, Subset::with)
            })
            .collect::<Vec<_>>();
        let k = entries[0].len();
        GrassmannNecklace { ground: g, k, entries }
    }

    /// Rank of the associated positroid.
    pub fn rank(&self) -> usize {
        self.to_necklace().k()
    }

    /// Chord endpoints on a circle with three slots per element: a coloop at
    /// `c` becomes the short chord `c + eps -> c` and a loop at `l` becomes
    /// `l - eps -> l`, so fixed points can take part in alignments.
    fn chord(&self, x: usize) -> (usize, usize) {
        let target = 3 * x;
        let source = match self.color(x) {
            None => 3 * x,
            Some(FixedColor::Coloop) => 3 * x + 1,
            Some(FixedColor::Loop) => 3 * x - 1,
        };
        let n3 = 3 * self.n();
        (source % n3, if self.is_fixed(x) { target % n3 } else { (3 * self.apply(x)) % n3 })
    }

    /// Ordered pairs `(x, y)` with `x, pi(x), pi(y), y` cyclically ordered and distinct.
    pub fn alignments(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for x in 1..=n {
            let (xs, xt) = self.chord(x);
            for y in (1..=n).filter(|&y| y != x) {
                let (ys, yt) = self.chord(y);
                let pts = [xs, xt, yt, ys];
                let distinct = (0..4).all(|a| (a + 1..4).all(|b| pts[a] != pts[b]));
                if distinct && is_cyclically_ordered(&pts) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// `k(n - k)` minus the number of alignments.
    pub fn length(&self) -> usize {
        let k = self.rank();
        let n = self.n();
        k * (n - k) - self.alignments().len()
    }

    /// The finest noncrossing partition of `[n]` into blocks closed under the permutation.
    pub fn connected_components(&self) -> NoncrossingComponents {
        let n = self.n();
        // Cycles first.
        let mut blocks: Vec<Subset> = Vec::new();
        let mut seen = Subset::EMPTY;
        for i in 1..=n {
            if seen.contains(i) {
                continue;
            }
            let mut cycle = Subset::EMPTY;
            let mut j = i;
            while !cycle.contains(j) {
                cycle = cycle.with(j);
                j = self.apply(j);
            }
            seen = seen.union(cycle);
            blocks.push(cycle);
        }
        // Then merge crossing blocks until the partition is noncrossing.
        'merge: loop {
            for a in 0..blocks.len() {
                for b in a + 1..blocks.len() {
                    if !separated_bits(blocks[a], blocks[b]) {
                        let merged = blocks[a].union(blocks[b]);
                        blocks.swap_remove(b);
                        blocks[a] = merged;
                        continue 'merge;
                    }
                }
            }
            break;
        }
        blocks.sort_by_key(|b| b.first());
        let component_perms = blocks.iter().map(|&b| self.restrict(b)).collect();
        NoncrossingComponents { blocks, component_perms }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().blocks.len() == 1
    }

    /// Restriction to a block closed under the permutation, relabelled by rank.
    fn restrict(&self, block: Subset) -> DecoratedPermutation {
        let members = block.to_vec();
        let rank = |v: usize| members.iter().position(|&m| m == v).unwrap() + 1;
        let perm = members.iter().map(|&m| rank(self.apply(m))).collect();
        let colors = members.iter().filter_map(|&m| self.color(m).map(|c| (rank(m), c))).collect();
        DecoratedPermutation::new(perm, &colors).expect("block is closed under the permutation")
    }

    /// Every decorated permutation of `[n]`, each fixed-point colouring included.
    pub fn all(n: usize) -> Result<Vec<DecoratedPermutation>> {
        Ground::new(n)?;
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (1..=n).collect();
        loop {
            let fixed: Vec<usize> = (1..=n).filter(|&i| perm[i - 1] == i).collect();
            for mask in 0u64..(1u64 << fixed.len()) {
                let colors = fixed
                    .iter()
                    .enumerate()
                    .map(|(t, &i)| {
                        let c = if mask >> t & 1 == 1 { FixedColor::Loop } else { FixedColor::Coloop };
                        (i, c)
                    })
                    .collect();
                out.push(DecoratedPermutation::new(perm.clone(), &colors)?);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 1..=self.n() {
            if i > 1 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.apply(i))?;
            match self.color(i) {
                Some(FixedColor::Loop) => f.write_str("+")?,
                Some(FixedColor::Coloop) => f.write_str("-")?,
                None => {}
            }
        }
        f.write_str("]")
    }
}

/// Lexicographic successor; returns `false` after the last permutation.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A cyclic sequence `(I_1, .., I_n)` of `k`-subsets with `I_{i+1} ⊇ I_i \ {i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrassmannNecklace {
    ground: Ground,
    k: usize,
    entries: Vec<Subset>,
}

impl GrassmannNecklace {
    pub fn new(entries: Vec<Subset>) -> Result<Self> {
        let ground = Ground::new(entries.len())?;
        let n = ground.n();
        let k = entries[0].len();
        for (idx, &e) in entries.iter().enumerate() {
            ground.check_subset(e)?;
            if e.len() != k {
                return invalid(format!("necklace entry I_{} = {e} has size {}, expected {k}", idx + 1, e.len()));
            }
        }
        for i in 1..=n {
            let cur = entries[i - 1];
            let next = entries[i % n];
            if !cur.without(i).is_subset_of(next) {
                return invalid(format!(
                    "I_{} = {next} does not contain I_{i} \\ {{{i}}} = {}",
                    i % n + 1,
                    cur.without(i)
                ));
            }
        }
        let nk = GrassmannNecklace { ground, k, entries };
        nk.to_decorated()?;
        Ok(nk)
    }

    /// `I_i = {i, .., i + k - 1}` taken cyclically.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Ok(DecoratedPermutation::uniform(n, k)?.to_necklace())
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[Subset] {
        &self.entries
    }

    /// `I_i`, 1-based and taken cyclically.
    pub fn entry(&self, i: usize) -> Subset {
        self.entries[(i - 1) % self.n()]
    }

    /// Reads off `pi(i) = j` from `I_{i+1} = (I_i \ {i}) ∪ {j}`.
    pub fn to_decorated(&self) -> Result<DecoratedPermutation> {
        let n = self.n();
        let mut perm = Vec::with_capacity(n);
        let mut colors = BTreeMap::new();
        for i in 1..=n {
            let cur = self.entry(i);
            let next = self.entry(i + 1);
            if !cur.contains(i) {
                if cur != next {
                    return invalid(format!("{i} is not in I_{i} but I_{i} != I_{}", i % n + 1));
                }
                perm.push(i);
                colors.insert(i, FixedColor::Loop);
                continue;
            }
            let added = next.difference(cur.without(i));
            match added.first() {
                Some(j) if added.len() == 1 => {
                    if j == i {
                        colors.insert(i, FixedColor::Coloop);
                    }
                    perm.push(j);
                }
                _ => return invalid(format!("step {i} of the necklace is malformed")),
            }
        }
        DecoratedPermutation::new(perm, &colors)
    }

    /// All entries distinct.
    pub fn is_connected(&self) -> bool {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Length `k(n - k) - A`, the dimension of the positroid cell.
    pub fn length(&self) -> usize {
        self.to_decorated().expect("validated necklace").length()
    }

    pub fn positroid(&self) -> Positroid {
        Positroid { necklace: self.clone() }
    }

    /// `J` satisfies `I_i <=_i J` for all `i`. Assumes `|J| = k` and `J ⊆ [n]`.
    #[inline]
    pub(crate) fn admits(&self, j: Subset) -> bool {
        let g = self.ground;
        (1..=self.n()).all(|i| shifted_leq_bits(g, i, self.entries[i - 1], j))
    }

    /// Splits along a repeated entry `I_i = I_j` into necklaces on `[i, j)` and `[j, i)`.
    pub fn direct_sum_split(&self, i: usize, j: usize) -> Result<DirectSum> {
        self.ground.check_element(i)?;
        self.ground.check_element(j)?;
        if i == j {
            return invalid("a direct sum split needs two distinct positions");
        }
        if self.entry(i) != self.entry(j) {
            return invalid(format!("I_{i} = {} and I_{j} = {} differ", self.entry(i), self.entry(j)));
        }
        let first = self.part(i, j)?;
        let second = self.part(j, i)?;
        Ok(DirectSum { base: self.entry(i), first, second })
    }

    fn part(&self, from: usize, to: usize) -> Result<SumPart> {
        let g = self.ground;
        let mut labels = vec![from];
        let mut x = g.succ(from);
        while x != to {
            labels.push(x);
            x = g.succ(x);
        }
        let support = labels.iter().fold(Subset::EMPTY, |s, &a| s.with(a));
        let local = |s: Subset| -> Subset {
            labels
                .iter()
                .enumerate()
                .filter(|&(_, &a)| s.contains(a))
                .fold(Subset::EMPTY, |acc, (t, _)| acc.with(t + 1))
        };
        let entries = labels.iter().map(|&m| local(self.entry(m))).collect();
        Ok(SumPart { necklace: GrassmannNecklace::new(entries)?, labels, support })
    }
}

impl fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, e) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&e.label())?;
        }
        f.write_str(")")
    }
}

/// One summand of a direct sum, living on a cyclic interval of the original ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumPart {
    pub necklace: GrassmannNecklace,
    /// Original label of each local element, in cyclic order.
    pub labels: Vec<usize>,
    /// The interval as a subset of the original ground set.
    pub support: Subset,
}

impl SumPart {
    /// Maps a local subset back to original labels.
    pub fn lift(&self, local: Subset) -> Subset {
        local.iter().fold(Subset::EMPTY, |acc, t| acc.with(self.labels[t - 1]))
    }

    /// Restricts an original subset to this summand, in local labels.
    pub fn restrict(&self, s: Subset) -> Subset {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &a)| s.contains(a))
            .fold(Subset::EMPTY, |acc, (t, _)| acc.with(t + 1))
    }
}

/// The decomposition of a necklace with `I_i = I_j` into two smaller ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSum {
    /// The repeated entry `I_i = I_j`.
    pub base: Subset,
    /// Summand on `[i, j)`.
    pub first: SumPart,
    /// Summand on `[j, i)`.
    pub second: SumPart,
}

impl DirectSum {
    /// `{ J ∪ I² : J ∈ C¹ } ∪ { I¹ ∪ J : J ∈ C² }`, colex sorted.
    pub fn glue(&self, first: &[Subset], second: &[Subset]) -> Vec<Subset> {
        let fixed_second = self.base.intersection(self.second.support);
        let fixed_first = self.base.intersection(self.first.support);
        let mut out: Vec<Subset> = first
            .iter()
            .map(|&j| self.first.lift(j).union(fixed_second))
            .chain(second.iter().map(|&j| self.second.lift(j).union(fixed_first)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Inverse of [`glue`](Self::glue) on collections containing the base entry.
    pub fn unglue(&self, collection: &[Subset]) -> Result<(Vec<Subset>, Vec<Subset>)> {
        let fixed_second = self.base.intersection(self.second.support);
        let fixed_first = self.base.intersection(self.first.support);
        let mut first = Vec::new();
        let mut second = Vec::new();
        for &s in collection {
            let on_first = s.intersection(self.first.support);
            let on_second = s.intersection(self.second.support);
            if on_second == fixed_second {
                first.push(self.first.restrict(s));
            }
            if on_first == fixed_first {
                second.push(self.second.restrict(s));
            }
            if on_second != fixed_second && on_first != fixed_first {
                return invalid(format!("{s} does not split along the direct sum"));
            }
        }
        first.sort_unstable();
        second.sort_unstable();
        Ok((first, second))
    }
}

/// The positroid `M_I`, stored through its necklace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positroid {
    necklace: GrassmannNecklace,
}

impl Positroid {
    pub fn necklace(&self) -> &GrassmannNecklace {
        &self.necklace
    }

    pub fn contains(&self, j: Subset) -> Result<bool> {
        self.necklace.ground.check_subset(j)?;
        if j.len() != self.necklace.k {
            return invalid(format!("{j} has size {}, the positroid has rank {}", j.len(), self.necklace.k));
        }
        Ok(self.necklace.admits(j))
    }

    /// All bases in colex order.
    pub fn bases(&self, budget: &Budget) -> Result<Vec<Subset>> {
        let (n, k) = (self.necklace.n(), self.necklace.k);
        budget.check("positroid bases", binomial(n, k))?;
        Ok(self.necklace.ground.k_subsets(k).filter(|&j| self.necklace.admits(j)).collect())
    }
}

/// Blocks of the finest noncrossing partition preserved by a decorated permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncrossingComponents {
    /// Sorted by smallest element.
    pub blocks: Vec<Subset>,
    /// Restriction to each block, relabelled `1..` in increasing order.
    pub component_perms: Vec<DecoratedPermutation>,
}

pub fn decorated_to_necklace(p: &DecoratedPermutation) -> GrassmannNecklace {
    p.to_necklace()
}

pub fn necklace_to_decorated(nk: &GrassmannNecklace) -> Result<DecoratedPermutation> {
    nk.to_decorated()
}

/// Alignments of `p` together with the length, checking `k` against the rank of `p`.
pub fn alignments_and_length(p: &DecoratedPermutation, k: usize) -> Result<(Vec<(usize, usize)>, usize)> {
    let rank = p.rank();
    if rank != k {
        return invalid(format!("k = {k} but the permutation has rank {rank}"));
    }
    let al = p.alignments();
    Ok((al.clone(), k * (p.n() - k) - al.len()))
}

pub fn positroid_contains(nk: &GrassmannNecklace, j: Subset) -> Result<bool> {
    nk.positroid().contains(j)
}

pub fn positroid_bases(nk: &GrassmannNecklace, budget: &Budget) -> Result<Vec<Subset>> {
    nk.positroid().bases(budget)
}

pub fn connected_components(p: &DecoratedPermutation) -> NoncrossingComponents {
    p.connected_components()
}

pub fn direct_sum_split(nk: &GrassmannNecklace, i: usize, j: usize) -> Result<DirectSum> {
    nk.direct_sum_split(i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::weakly_separated;

    fn s(e: &[usize]) -> Subset {
        Subset::of(e)
    }

    fn example_necklace() -> GrassmannNecklace {
        GrassmannNecklace::new(vec![s(&[1, 2, 4]), s(&[2, 4, 5]), s(&[3, 4, 5]), s(&[4, 5, 2]), s(&[5, 1, 2])]).unwrap()
    }

    #[test]
    fn eight_element_example() {
        let mut colors = BTreeMap::new();
        colors.insert(5, FixedColor::Loop);
        let p = DecoratedPermutation::new(vec![8, 1, 4, 2, 5, 7, 3, 6], &colors).unwrap();
        let nk = p.to_necklace();
        let expected = [
            &[1, 2, 3, 6][..],
            &[2, 3, 6, 8],
            &[3, 6, 8, 1],
            &[4, 6, 8, 1],
            &[6, 8, 1, 2],
            &[6, 8, 1, 2],
            &[7, 8, 1, 2],
            &[8, 1, 2, 3],
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(nk.entry(i + 1), s(e), "I_{}", i + 1);
        }
        assert_eq!(nk.to_decorated().unwrap(), p);
    }

    #[test]
    fn constant_necklaces() {
        let coloops = DecoratedPermutation::with_uniform_color(vec![1, 2, 3, 4], FixedColor::Coloop).unwrap();
        let nk = coloops.to_necklace();
        assert_eq!(nk.k(), 4);
        assert!(nk.entries().iter().all(|&e| e == s(&[1, 2, 3, 4])));
        let loops = DecoratedPermutation::with_uniform_color(vec![1, 2, 3, 4], FixedColor::Loop).unwrap();
        let nk = loops.to_necklace();
        assert_eq!(nk.k(), 0);
        assert!(nk.entries().iter().all(|e| e.is_empty()));
        assert_eq!(alignments_and_length(&loops, 0).unwrap(), (vec![], 0));
        assert_eq!(alignments_and_length(&coloops, 4).unwrap(), (vec![], 0));
    }

    #[test]
    fn necklace_to_permutation_example() {
        let p = example_necklace().to_decorated().unwrap();
        assert_eq!(p.perm(), &[5, 3, 2, 1, 4]);
        assert!(p.colors().is_empty());
    }

    #[test]
    fn uniform_permutation() {
        for n in 1..=8 {
            for k in 0..=n {
                let nk = GrassmannNecklace::uniform(n, k).unwrap();
                let g = nk.ground();
                for i in 1..=n {
                    let expect = (0..k).fold(Subset::EMPTY, |acc, t| acc.with((i - 1 + t) % n + 1));
                    assert_eq!(nk.entry(i), expect);
                }
                let p = nk.to_decorated().unwrap();
                if k > 0 && k < n {
                    let expect: Vec<usize> = (1..=n).map(|i| (i - 1 + k) % n + 1).collect();
                    assert_eq!(p.perm(), &expect[..]);
                    assert!(p.alignments().is_empty());
                    assert_eq!(p.length(), k * (n - k));
                }
                let bases = nk.positroid().bases(&Budget::default()).unwrap();
                assert_eq!(bases, g.k_subsets(k).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn alignment_calibrations() {
        let p = DecoratedPermutation::new(vec![3, 4, 1, 2], &BTreeMap::new()).unwrap();
        assert_eq!(alignments_and_length(&p, 2).unwrap(), (vec![], 4));
        let p = DecoratedPermutation::new(vec![4, 3, 2, 1], &BTreeMap::new()).unwrap();
        let (al, len) = alignments_and_length(&p, 2).unwrap();
        assert_eq!(len, 2);
        assert_eq!(al, vec![(2, 1), (4, 3)]);
        assert!(alignments_and_length(&p, 1).is_err());
    }

    #[test]
    fn fixed_points_align_with_crossing_chords() {
        // A coloop and a loop always align with one another.
        let mut colors = BTreeMap::new();
        colors.insert(1, FixedColor::Coloop);
        colors.insert(2, FixedColor::Loop);
        let p = DecoratedPermutation::new(vec![1, 2], &colors).unwrap();
        assert_eq!(p.alignments().len(), 1);
        assert_eq!(p.length(), 0);
    }

    #[test]
    fn at_most_one_orientation_per_pair() {
        for n in 1..=5 {
            for p in DecoratedPermutation::all(n).unwrap() {
                let al = p.alignments();
                for &(x, y) in &al {
                    assert!(!al.contains(&(y, x)), "{p} aligns both ({x},{y}) and ({y},{x})");
                }
            }
        }
    }

    #[test]
    fn decorated_permutation_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| DecoratedPermutation::all(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 5, 16, 65, 326, 1957]);
    }

    #[test]
    fn bijection_round_trip_and_necklace_properties() {
        for n in 1..=6 {
            for p in DecoratedPermutation::all(n).unwrap() {
                let nk = p.to_necklace();
                let again = GrassmannNecklace::new(nk.entries().to_vec()).unwrap();
                assert_eq!(again.to_decorated().unwrap(), p);
                for &e in nk.entries() {
                    assert!(nk.positroid().contains(e).unwrap(), "{p}: {e}");
                    for &f in nk.entries() {
                        assert!(weakly_separated(e, f).unwrap());
                    }
                }
            }
        }
    }

    /// Direct check of the necklace axioms on every sequence of k-subsets.
    #[test]
    fn every_necklace_comes_from_a_permutation() {
        for n in 1..=4 {
            let g = Ground::new(n).unwrap();
            let mut from_perms: Vec<Vec<Subset>> =
                DecoratedPermutation::all(n).unwrap().iter().map(|p| p.to_necklace().entries().to_vec()).collect();
            from_perms.sort();
            let mut found = Vec::new();
            for k in 0..=n {
                let sets: Vec<Subset> = g.k_subsets(k).collect();
                let total = sets.len().pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    let seq: Vec<Subset> = (0..n)
                        .map(|_| {
                            let v = sets[c % sets.len()];
                            c /= sets.len();
                            v
                        })
                        .collect();
                    let ok = (1..=n).all(|i| seq[i - 1].without(i).is_subset_of(seq[i % n]));
                    assert_eq!(ok, GrassmannNecklace::new(seq.clone()).is_ok());
                    if ok {
                        found.push(seq);
                    }
                }
            }
            found.sort();
            assert_eq!(found, from_perms);
        }
    }

    #[test]
    fn membership_examples() {
        let nk = example_necklace();
        let m = nk.positroid();
        assert!(m.contains(s(&[1, 2, 4])).unwrap());
        assert!(m.contains(s(&[1, 3, 5])).unwrap());
        assert!(!m.contains(s(&[2, 3, 4])).unwrap());
        assert!(m.contains(s(&[1, 2])).is_err());
        let bases = m.bases(&Budget::default()).unwrap();
        assert!(!bases.contains(&s(&[2, 3, 4])));
        assert!(bases.windows(2).all(|w| w[0] < w[1]));
        assert!(m.bases(&Budget::new(3)).is_err());
    }

    #[test]
    fn rank_zero_has_only_the_empty_base() {
        let nk = GrassmannNecklace::uniform(5, 0).unwrap();
        assert_eq!(nk.positroid().bases(&Budget::default()).unwrap(), vec![Subset::EMPTY]);
    }

    fn disconnected_example() -> DecoratedPermutation {
        DecoratedPermutation::new(vec![9, 7, 8, 6, 4, 5, 2, 3, 10, 1], &BTreeMap::new()).unwrap()
    }

    #[test]
    fn components_of_the_ten_element_example() {
        let p = disconnected_example();
        assert_eq!(p.rank(), 5);
        let c = p.connected_components();
        assert_eq!(c.blocks, vec![s(&[1, 9, 10]), s(&[2, 3, 7, 8]), s(&[4, 5, 6])]);
        let lens: Vec<usize> = c.component_perms.iter().map(|q| q.length()).collect();
        assert_eq!(lens, vec![2, 4, 2]);
        assert_eq!(p.length(), 8);
        assert!(!p.to_necklace().is_connected());
    }

    #[test]
    fn fixed_points_are_their_own_blocks() {
        let mut colors = BTreeMap::new();
        colors.insert(3, FixedColor::Loop);
        let p = DecoratedPermutation::new(vec![2, 4, 3, 1], &colors).unwrap();
        assert!(p.connected_components().blocks.contains(&s(&[3])));
        let p = DecoratedPermutation::uniform(5, 2).unwrap();
        assert_eq!(p.connected_components().blocks, vec![s(&[1, 2, 3, 4, 5])]);
    }

    /// Noncrossing, closed under the permutation, and no proper interval split exists
    /// inside any block.
    #[test]
    fn components_are_finest_and_agree_with_distinct_entries() {
        for n in 1..=6 {
            for p in DecoratedPermutation::all(n).unwrap() {
                let c = p.connected_components();
                let blocks = &c.blocks;
                assert_eq!(blocks.iter().fold(Subset::EMPTY, |a, &b| a.union(b)), Ground::new(n).unwrap().full());
                for (x, &a) in blocks.iter().enumerate() {
                    assert!(a.iter().all(|i| a.contains(p.apply(i))));
                    for &b in &blocks[x + 1..] {
                        assert!(a.intersection(b).is_empty());
                        assert!(separated_bits(a, b));
                    }
                }
                for (q, &b) in c.component_perms.iter().zip(blocks) {
                    assert_eq!(q.n(), b.len());
                    assert!(q.to_necklace().is_connected(), "{p} block {b}");
                }
                let one = blocks.len() == 1;
                assert_eq!(one, p.to_necklace().is_connected(), "{p}");
                let total: usize = c.component_perms.iter().map(|q| q.length()).sum();
                assert_eq!(total, p.length(), "length additivity for {p}");
            }
        }
    }

    #[test]
    fn split_of_constant_necklace() {
        let nk =
            DecoratedPermutation::with_uniform_color(vec![1, 2, 3, 4, 5], FixedColor::Coloop).unwrap().to_necklace();
        let sum = nk.direct_sum_split(2, 4).unwrap();
        assert_eq!(sum.first.labels, vec![2, 3]);
        assert_eq!(sum.second.labels, vec![4, 5, 1]);
        assert!(sum.first.necklace.entries().iter().all(|&e| e == s(&[1, 2])));
        assert!(sum.second.necklace.entries().iter().all(|&e| e == s(&[1, 2, 3])));
        assert!(nk.direct_sum_split(2, 2).is_err());
        assert!(example_necklace().direct_sum_split(1, 2).is_err());
    }

    #[test]
    fn split_preserves_length_and_bases() {
        for n in 2..=6 {
            for p in DecoratedPermutation::all(n).unwrap() {
                let nk = p.to_necklace();
                for i in 1..=n {
                    for j in (1..=n).filter(|&j| j != i && nk.entry(j) == nk.entry(i)) {
                        let sum = nk.direct_sum_split(i, j).unwrap();
                        assert_eq!(nk.length(), sum.first.necklace.length() + sum.second.necklace.length());
                        let b = Budget::default();
                        let whole = nk.positroid().bases(&b).unwrap();
                        let mut glued = Vec::new();
                        for &x in &sum.first.necklace.positroid().bases(&b).unwrap() {
                            for &y in &sum.second.necklace.positroid().bases(&b).unwrap() {
                                glued.push(sum.first.lift(x).union(sum.second.lift(y)));
                            }
                        }
                        glued.sort();
                        assert_eq!(glued, whole, "{p} split at {i},{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(DecoratedPermutation::new(vec![1, 1], &BTreeMap::new()).is_err());
        assert!(DecoratedPermutation::new(vec![1, 2], &BTreeMap::new()).is_err());
        let mut colors = BTreeMap::new();
        colors.insert(1, FixedColor::Loop);
        assert!(DecoratedPermutation::new(vec![2, 1], &colors).is_err());
        assert!(GrassmannNecklace::new(vec![s(&[2]), s(&[1])]).is_err());
        assert!(GrassmannNecklace::new(vec![s(&[1]), s(&[1, 2])]).is_err());
        assert!(FixedColor::from_sign(0).is_err());
    }
}
