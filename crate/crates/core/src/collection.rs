//! Weakly separated collections inside a positroid, their mutations and enumeration.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::budget::{binomial, Budget};
use crate::cyclic::{separated_bits, Ground, Subset};
use crate::error::{invalid, Error, Result};
use crate::positroid::GrassmannNecklace;

/// Everything wrong with a candidate collection. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Members of the wrong size or outside `[n]`.
    pub malformed: Vec<Subset>,
    pub duplicates: Vec<Subset>,
    /// Pairs that are not weakly separated, each listed once with the smaller set first.
    pub non_separated: Vec<(Subset, Subset)>,
    /// Members failing the anchor's positroid test.
    pub outside_positroid: Vec<Subset>,
    /// Necklace entries absent from the collection.
    pub missing_necklace: Vec<Subset>,
    /// The anchor itself does not match `n` and `k`.
    pub anchor_mismatch: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.malformed.is_empty()
            && self.duplicates.is_empty()
            && self.non_separated.is_empty()
            && self.outside_positroid.is_empty()
            && self.missing_necklace.is_empty()
            && self.anchor_mismatch.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(m) = &self.anchor_mismatch {
            parts.push(m.clone());
        }
        for s in &self.malformed {
            parts.push(format!("{s} has the wrong size or lies outside the ground set"));
        }
        for s in &self.duplicates {
            parts.push(format!("{s} is listed twice"));
        }
        for (a, b) in &self.non_separated {
            parts.push(format!("{a} and {b} are not weakly separated"));
        }
        for s in &self.outside_positroid {
            parts.push(format!("{s} is not in the positroid"));
        }
        for s in &self.missing_necklace {
            parts.push(format!("necklace entry {s} is missing"));
        }
        if parts.is_empty() {
            f.write_str("valid")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

/// Checks a candidate collection of `k`-subsets of `[n]`, optionally against an anchor.
pub fn validate(ground: Ground, k: usize, sets: &[Subset], anchor: Option<&GrassmannNecklace>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut sorted: Vec<Subset> = Vec::with_capacity(sets.len());
    for &s in sets {
        if s.len() != k || ground.check_subset(s).is_err() {
            report.malformed.push(s);
        } else {
            sorted.push(s);
        }
    }
    sorted.sort_unstable();
    let mut unique: Vec<Subset> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if unique.last() == Some(&s) {
            if report.duplicates.last() != Some(&s) {
                report.duplicates.push(s);
            }
        } else {
            unique.push(s);
        }
    }
    for (x, &a) in unique.iter().enumerate() {
        for &b in &unique[x + 1..] {
            if !separated_bits(a, b) {
                report.non_separated.push((a, b));
            }
        }
    }
    if let Some(nk) = anchor {
        if nk.n() != ground.n() || nk.k() != k {
            report.anchor_mismatch = Some(format!(
                "anchor has n = {}, k = {} but the collection has n = {}, k = {k}",
                nk.n(),
                nk.k(),
                ground.n()
            ));
            return report;
        }
        report.outside_positroid = unique.iter().copied().filter(|&s| !nk.admits(s)).collect();
        let mut missing: Vec<Subset> =
            nk.entries().iter().copied().filter(|e| unique.binary_search(e).is_err()).collect();
        missing.sort_unstable();
        missing.dedup();
        report.missing_necklace = missing;
    }
    report
}

/// A set of pairwise weakly separated `k`-subsets, kept in colex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WSCollection {
    ground: Ground,
    k: usize,
    sets: Vec<Subset>,
    anchor: Option<GrassmannNecklace>,
}

impl WSCollection {
    pub fn new(ground: Ground, k: usize, sets: Vec<Subset>, anchor: Option<GrassmannNecklace>) -> Result<Self> {
        if k > ground.n() {
            return invalid(format!("k = {k} exceeds n = {}", ground.n()));
        }
        let report = validate(ground, k, &sets, anchor.as_ref());
        if !report.is_valid() {
            return invalid(report.to_string());
        }
        let mut sets = sets;
        sets.sort_unstable();
        Ok(WSCollection { ground, k, sets, anchor })
    }

    /// The necklace entries as a collection anchored to the necklace.
    pub fn from_necklace(nk: &GrassmannNecklace) -> Self {
        let mut sets = nk.entries().to_vec();
        sets.sort_unstable();
        sets.dedup();
        WSCollection { ground: nk.ground(), k: nk.k(), sets, anchor: Some(nk.clone()) }
    }

    /// Builds a collection from parts already known to be valid.
    pub(crate) fn from_parts(ground: Ground, k: usize, sets: Vec<Subset>, anchor: Option<GrassmannNecklace>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        WSCollection { ground, k, sets, anchor }
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

    /// Members in colex order.
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn anchor(&self) -> Option<&GrassmannNecklace> {
        self.anchor.as_ref()
    }

    fn require_anchor(&self) -> Result<&GrassmannNecklace> {
        self.anchor.as_ref().ok_or_else(|| Error::InvalidInput("the collection has no anchor necklace".into()))
    }

    /// Sets of the anchor's positroid that could still be added.
    pub fn compatible_candidates(&self, budget: &Budget) -> Result<Vec<Subset>> {
        let nk = self.require_anchor()?;
        budget.check("candidate sets", binomial(self.n(), self.k))?;
        Ok(self
            .ground
            .k_subsets(self.k)
            .filter(|&j| !self.contains(j) && nk.admits(j))
            .filter(|&j| self.sets.iter().all(|&s| separated_bits(s, j)))
            .collect())
    }

    /// No base of the anchor outside the collection is weakly separated from all members.
    pub fn is_maximal(&self, budget: &Budget) -> Result<bool> {
        Ok(self.compatible_candidates(budget)?.is_empty())
    }

    /// Adds compatible sets in colex order until none is left.
    ///
    /// A candidate rejected once stays rejected since the collection only
    /// grows, so a single scan is the same as repeated first-fit.
    pub fn extend_to_maximal(&self, budget: &Budget) -> Result<WSCollection> {
        let nk = self.require_anchor()?;
        budget.check("candidate sets", binomial(self.n(), self.k))?;
        let mut sets = self.sets.clone();
        for j in self.ground.k_subsets(self.k) {
            if self.contains(j) || !nk.admits(j) {
                continue;
            }
            if sets.iter().all(|&s| separated_bits(s, j)) {
                sets.push(j);
            }
        }
        sets.sort_unstable();
        Ok(WSCollection { sets, ..self.clone() })
    }

    /// All mutation sites, ordered by the removed set and then by `(b, d)`.
    pub fn mutation_sites(&self) -> Vec<MutationSite> {
        let mut out = Vec::new();
        if self.k < 2 {
            return out;
        }
        let n = self.n();
        for &r in &self.sets {
            let members = r.to_vec();
            for (x, &a) in members.iter().enumerate() {
                for &c in &members[x + 1..] {
                    let s = r.without(a).without(c);
                    for b in (a + 1..c).filter(|&b| !r.contains(b)) {
                        if !self.contains(s.with(a).with(b)) || !self.contains(s.with(b).with(c)) {
                            continue;
                        }
                        for d in (1..a).chain(c + 1..=n).filter(|&d| !r.contains(d)) {
                            if self.contains(s.with(c).with(d)) && self.contains(s.with(d).with(a)) {
                                out.push(MutationSite { s, a, b, c, d });
                            }
                        }
                    }
                }
            }
        }
        out.sort_by_key(|m| (m.removed(), m.b, m.d));
        out
    }

    /// Replaces `Sac` by `Sbd`.
    pub fn apply_mutation(&self, site: &MutationSite) -> Result<WSCollection> {
        site.check_shape(self.ground, self.k)?;
        for t in site.required() {
            if !self.contains(t) {
                return invalid(format!("{t} is not in the collection, so {site} is not a site"));
            }
        }
        let added = site.added();
        if self.contains(added) {
            return invalid(format!("{added} is already in the collection"));
        }
        let removed = site.removed();
        let mut sets: Vec<Subset> = self.sets.iter().copied().filter(|&s| s != removed).collect();
        if let Some(&bad) = sets.iter().find(|&&s| !separated_bits(s, added)) {
            return invalid(format!("{added} is not weakly separated from {bad}"));
        }
        if let Some(nk) = &self.anchor {
            if nk.entries().contains(&removed) {
                return invalid(format!("{removed} is a necklace entry and cannot be mutated"));
            }
            if !nk.admits(added) {
                return invalid(format!("{added} is outside the positroid"));
            }
        }
        sets.push(added);
        sets.sort_unstable();
        Ok(WSCollection { sets, ..self.clone() })
    }
}

impl fmt::Display for WSCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, s) in self.sets.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&s.label())?;
        }
        f.write_str("}")
    }
}

/// The pattern `Sab, Sbc, Scd, Sda, Sac` around a mutable member `Sac`.
///
/// Canonical form: `a < b < c` and `d` outside `[a, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationSite {
    pub s: Subset,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl MutationSite {
    /// Puts an arbitrary cyclically ordered quadruple into canonical form.
    pub fn new(s: Subset, a: usize, b: usize, c: usize, d: usize) -> Result<Self> {
        let quad = [a, b, c, d];
        if !crate::cyclic::is_cyclically_ordered(&quad) {
            return invalid(format!("({a},{b},{c},{d}) is not cyclically ordered"));
        }
        let (a, c, b, d) = if a < c { (a, c, b, d) } else { (c, a, d, b) };
        let (b, d) = if a < b && b < c { (b, d) } else { (d, b) };
        Ok(MutationSite { s, a, b, c, d })
    }

    /// `Sac`, the member that leaves.
    pub fn removed(&self) -> Subset {
        self.s.with(self.a).with(self.c)
    }

    /// `Sbd`, the member that enters.
    pub fn added(&self) -> Subset {
        self.s.with(self.b).with(self.d)
    }

    /// `Sab, Sbc, Scd, Sda, Sac`.
    pub fn required(&self) -> [Subset; 5] {
        let (s, a, b, c, d) = (self.s, self.a, self.b, self.c, self.d);
        [s.with(a).with(b), s.with(b).with(c), s.with(c).with(d), s.with(d).with(a), s.with(a).with(c)]
    }

    /// The site at which the mutated collection mutates back.
    pub fn mirrored(&self) -> MutationSite {
        MutationSite::new(self.s, self.b, self.c, self.d, self.a).expect("rotation of an ordered quadruple")
    }

    fn check_shape(&self, g: Ground, k: usize) -> Result<()> {
        let quad = [self.a, self.b, self.c, self.d];
        for &x in &quad {
            g.check_element(x)?;
            if self.s.contains(x) {
                return invalid(format!("{x} lies in S = {}", self.s));
            }
        }
        g.check_subset(self.s)?;
        if self.s.len() + 2 != k {
            return invalid(format!("S = {} must have {} elements", self.s, k.saturating_sub(2)));
        }
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| quad[i] != quad[j]));
        if !distinct || !crate::cyclic::is_cyclically_ordered(&quad) {
            return invalid(format!("{self} does not have four cyclically ordered elements"));
        }
        Ok(())
    }
}

impl fmt::Display for MutationSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={} a={} b={} c={} d={}", self.s.label(), self.a, self.b, self.c, self.d)
    }
}

/// How [`enumerate_maximal`] explores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Extend the necklace greedily, then close under mutation.
    Closure,
    /// Maximal cliques of the weak separation graph on the candidate sets.
    BruteForce,
}

/// Every maximal weakly separated collection inside the positroid of `anchor`, sorted.
pub fn enumerate_maximal(
    anchor: &GrassmannNecklace,
    mode: EnumerationMode,
    budget: &Budget,
) -> Result<Vec<WSCollection>> {
    let mut out = match mode {
        EnumerationMode::Closure => closure(anchor, budget)?,
        EnumerationMode::BruteForce => brute_force(anchor, budget)?,
    };
    out.sort_by(|x, y| x.sets.cmp(&y.sets));
    Ok(out)
}

fn closure(anchor: &GrassmannNecklace, budget: &Budget) -> Result<Vec<WSCollection>> {
    let start = WSCollection::from_necklace(anchor).extend_to_maximal(budget)?;
    let size = start.len();
    let mut seen: HashSet<Vec<Subset>> = HashSet::new();
    seen.insert(start.sets.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(c) = queue.pop_front() {
        for site in c.mutation_sites() {
            let next = c.apply_mutation(&site)?;
            if seen.contains(&next.sets) {
                continue;
            }
            if next.len() != size || !next.is_maximal(budget)? {
                return Err(Error::InvalidInput(format!(
                    "mutating {c} at {site} left the class of maximal collections"
                )));
            }
            budget.check("maximal collections", seen.len() as u64 + 1)?;
            seen.insert(next.sets.clone());
            queue.push_back(next);
        }
        out.push(c);
    }
    Ok(out)
}

fn brute_force(anchor: &GrassmannNecklace, budget: &Budget) -> Result<Vec<WSCollection>> {
    let (n, k) = (anchor.n(), anchor.k());
    let base = WSCollection::from_necklace(anchor);
    let candidates = base.compatible_candidates(budget)?;
    let m = candidates.len();
    budget.check("candidate graph", (m * m) as u64)?;
    let mut adj = vec![FixedBitSet::with_capacity(m); m];
    for x in 0..m {
        for y in x + 1..m {
            if separated_bits(candidates[x], candidates[y]) {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    let cliques = maximal_cliques(&adj, budget)?;
    let bound = k * (n - k) + 1;
    Ok(cliques
        .into_iter()
        .map(|clique| {
            let mut sets = base.sets.clone();
            sets.extend(clique.into_iter().map(|v| candidates[v]));
            sets.sort_unstable();
            assert!(sets.len() <= bound, "collection of size {} beats the bound {bound}", sets.len());
            WSCollection::from_parts(base.ground, k, sets, Some(anchor.clone()))
        })
        .collect())
}

/// All maximal cliques of the graph with adjacency rows `adj`.
pub(crate) fn maximal_cliques(adj: &[FixedBitSet], budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let m = adj.len();
    let mut cliques = Vec::new();
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    let mut search = CliqueSearch { adj, out: &mut cliques, budget };
    search.run(&mut Vec::new(), all, FixedBitSet::with_capacity(m))?;
    Ok(cliques)
}

struct CliqueSearch<'a> {
    adj: &'a [FixedBitSet],
    out: &'a mut Vec<Vec<usize>>,
    budget: &'a Budget,
}

impl CliqueSearch<'_> {
    /// Bron–Kerbosch with pivoting.
    fn run(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet) -> Result<()> {
        if p.is_clear() && x.is_clear() {
            self.budget.check("maximal collections", self.out.len() as u64 + 1)?;
            self.out.push(r.clone());
            return Ok(());
        }
        let pivot =
            p.ones().chain(x.ones()).max_by_key(|&u| p.intersection(&self.adj[u]).count()).expect("p or x is nonempty");
        let branch: Vec<usize> = p.difference(&self.adj[pivot]).collect();
        for v in branch {
            let mut p2 = p.clone();
            p2.intersect_with(&self.adj[v]);
            let mut x2 = x.clone();
            x2.intersect_with(&self.adj[v]);
            r.push(v);
            self.run(r, p2, x2)?;
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
        Ok(())
    }
}

/// Bases `J` of the positroid such that, for every alignment `(x, y)`,
/// `pi(x) ∈ J` forces `pi(y) ∈ J`.
pub fn positroid_hull(anchor: &GrassmannNecklace, budget: &Budget) -> Result<Vec<Subset>> {
    let p = anchor.to_decorated()?;
    let rules: Vec<(usize, usize)> = p.alignments().into_iter().map(|(x, y)| (p.apply(x), p.apply(y))).collect();
    Ok(anchor
        .positroid()
        .bases(budget)?
        .into_iter()
        .filter(|&j| rules.iter().all(|&(u, v)| !j.contains(u) || j.contains(v)))
        .collect())
}
