//! Exhaustive verification suites shared by the command line and the tests.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::collection::{enumerate_maximal, positroid_hull, EnumerationMode, WSCollection};
use crate::cyclic::{separated_bits, Subset};
use crate::error::Result;
use crate::lz::{verify_lz_purity, ChamberContext};
use crate::positroid::{DecoratedPermutation, GrassmannNecklace};
use crate::tiling::{build_tiling, embed_tiling, inside_necklace_curve, tiling_to_plabic};

/// Failures beyond this many are counted but not listed.
const MAX_LISTED: usize = 20;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: String,
    pub verified: bool,
    /// Number of individual cases examined.
    pub checked: u64,
    pub summary: String,
    #[serde(default)]
    pub failures: Vec<String>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.verified { "verified" } else { "FAILED" };
        write!(f, "{} ({}): {verdict}, {}", self.suite, self.params, self.summary)?;
        for line in &self.failures {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(describe());
            }
        }
    }

    fn finish(mut self, suite: &str, params: String, summary: impl FnOnce(u64) -> String) -> SuiteReport {
        let verified = self.failed == 0;
        if self.failed as usize > self.failures.len() {
            self.failures.push(format!("... and {} more", self.failed as usize - self.failures.len()));
        }
        let summary =
            if verified { summary(self.checked) } else { format!("{} of {} cases failed", self.failed, self.checked) };
        SuiteReport { suite: suite.into(), params, verified, checked: self.checked, summary, failures: self.failures }
    }
}

/// Every maximal collection of the uniform positroid found by closure
/// enumeration has `k(n-k)+1` members.
pub fn uniform_purity(n: usize, k: usize, budget: &Budget) -> Result<SuiteReport> {
    let nk = GrassmannNecklace::uniform(n, k)?;
    let expected = k * (n - k) + 1;
    let all = enumerate_maximal(&nk, EnumerationMode::Closure, budget)?;
    let mut t = Tally::default();
    for c in &all {
        t.check(c.len() == expected, || format!("{c} has {} members", c.len()));
    }
    Ok(t.finish("purity", format!("n={n} k={k}"), |count| {
        format!("all maximal collections have size {expected} ({count} collections)")
    }))
}

/// Counts maximal collections of the uniform positroid by both methods.
pub fn uniform_counts(n: usize, k: usize, budget: &Budget) -> Result<(usize, usize)> {
    let nk = GrassmannNecklace::uniform(n, k)?;
    let closure = enumerate_maximal(&nk, EnumerationMode::Closure, budget)?;
    let brute = enumerate_maximal(&nk, EnumerationMode::BruteForce, budget)?;
    Ok((closure.len(), brute.len()))
}

/// Reports for one sweep over a list of decorated permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositroidSweep {
    /// Every maximal collection has `ℓ + 1` members.
    pub purity: SuiteReport,
    /// Closure from one collection reaches every maximal collection found by brute force.
    pub connectedness: SuiteReport,
    /// The dual graph of each maximal collection has `ℓ + 1` faces.
    pub face_count: SuiteReport,
    /// The dual graph is reduced, has the right strand permutation and face labels `C`.
    pub duality: SuiteReport,
}

/// Enumerates every maximal collection of each positroid both ways and
/// checks purity, mutation connectedness and the duality with plabic graphs.
pub fn positroid_sweep(perms: &[DecoratedPermutation], label: &str, budget: &Budget) -> Result<PositroidSweep> {
    let mut purity = Tally::default();
    let mut connected = Tally::default();
    let mut faces = Tally::default();
    let mut duality = Tally::default();
    for p in perms {
        let nk = p.to_necklace();
        let ell = nk.length();
        let closure = enumerate_maximal(&nk, EnumerationMode::Closure, budget)?;
        let brute = enumerate_maximal(&nk, EnumerationMode::BruteForce, budget)?;
        for c in &brute {
            purity.check(c.len() == ell + 1, || format!("{p}: {c} has {} members, expected {}", c.len(), ell + 1));
        }
        let same = closure.len() == brute.len() && closure.iter().zip(&brute).all(|(x, y)| x.sets() == y.sets());
        connected
            .check(same, || format!("{p}: closure reaches {} of {} maximal collections", closure.len(), brute.len()));
        for c in &brute {
            let (face_ok, dual_ok, why) = check_dual(c, p, ell, budget);
            faces.check(face_ok, || format!("{p}: {c}: {why}"));
            duality.check(dual_ok, || format!("{p}: {c}: {why}"));
        }
    }
    let params = label.to_string();
    Ok(PositroidSweep {
        purity: purity.finish("purity", params.clone(), |c| {
            format!("all {c} maximal collections over {} positroids have size ℓ+1", perms.len())
        }),
        connectedness: connected
            .finish("connectedness", params.clone(), |c| format!("mutation graph connected for all {c} positroids")),
        face_count: faces.finish("face-count", params.clone(), |c| format!("all {c} dual graphs have ℓ+1 faces")),
        duality: duality.finish("duality", params, |c| {
            format!("all {c} dual graphs are reduced with face labels equal to the collection")
        }),
    })
}

fn check_dual(c: &WSCollection, p: &DecoratedPermutation, ell: usize, budget: &Budget) -> (bool, bool, String) {
    let g = match tiling_to_plabic(c, budget) {
        Ok(g) => g,
        Err(e) => return (false, false, format!("no dual graph: {e}")),
    };
    let face_ok = g.face_count() == ell + 1;
    let verdict = g.check_reduced();
    if !g.is_reduced() {
        return (face_ok, false, format!("dual graph is not reduced: {verdict}"));
    }
    if g.strand_permutation() != *p {
        return (face_ok, false, format!("strand permutation is {}", g.strand_permutation()));
    }
    match g.face_labels() {
        Ok(labels) if labels.sorted_labels() == c.sets() => {
            (face_ok, true, format!("{} faces, expected {}", g.face_count(), ell + 1))
        }
        Ok(labels) => (face_ok, false, format!("face labels {:?}", labels.sorted_labels())),
        Err(e) => (face_ok, false, format!("face labels failed: {e}")),
    }
}

/// For each connected necklace on `[n]` and each admissible `J` (weakly
/// separated from every entry and not an entry), `J` lies inside the
/// necklace curve exactly when it is in the positroid.
pub fn winding(n: usize, budget: &Budget) -> Result<SuiteReport> {
    let mut t = Tally::default();
    for p in DecoratedPermutation::all(n)?.into_iter().filter(DecoratedPermutation::is_connected) {
        let nk = p.to_necklace();
        let positroid = nk.positroid();
        budget.check("candidate sets", crate::budget::binomial(n, nk.k()))?;
        for j in nk.ground().k_subsets(nk.k()) {
            if nk.entries().contains(&j) || !nk.entries().iter().all(|&e| separated_bits(e, j)) {
                continue;
            }
            let member = positroid.contains(j)?;
            match inside_necklace_curve(&nk, j) {
                Ok(inside) => {
                    t.check(inside == member, || format!("{nk}: {j} inside = {inside}, in positroid = {member}"))
                }
                Err(e) => t.check(false, || format!("{nk}: {j}: {e}")),
            }
        }
    }
    Ok(t.finish("winding", format!("n={n}"), |c| {
        format!("winding number matches positroid membership for all {c} admissible sets")
    }))
}

/// The union of face labels over the dual graphs of every maximal collection
/// equals the positroid filtered by alignments, for connected permutations.
pub fn hull(n: usize, budget: &Budget) -> Result<SuiteReport> {
    let mut t = Tally::default();
    for p in DecoratedPermutation::all(n)?.into_iter().filter(DecoratedPermutation::is_connected) {
        let nk = p.to_necklace();
        let mut union = BTreeSet::new();
        for c in enumerate_maximal(&nk, EnumerationMode::Closure, budget)? {
            let g = tiling_to_plabic(&c, budget)?;
            union.extend(g.face_labels()?.sorted_labels());
        }
        let union: Vec<Subset> = union.into_iter().collect();
        let hull = positroid_hull(&nk, budget)?;
        t.check(union == hull, || format!("{p}: face labels {union:?}, hull {hull:?}"));
    }
    Ok(t.finish("hull", format!("n={n}"), |c| {
        format!("face-label union equals the alignment hull for all {c} connected permutations")
    }))
}

/// Chamber purity and the padding bijection for every `w` in `S_m`.
pub fn lz(m: usize, budget: &Budget) -> Result<SuiteReport> {
    let mut t = Tally::default();
    for ctx in ChamberContext::all(m)? {
        let r = verify_lz_purity(&ctx, budget)?;
        t.check(r.holds(), || r.to_string());
    }
    Ok(t.finish("lz", format!("m={m}"), |c| {
        format!("every maximal collection of H(w) has size m+ℓ(w)+1 and pads bijectively, for all {c} w")
    }))
}

/// Twice the area of the necklace curve minus twice the area of the tiling.
pub fn hole_deficit(c: &WSCollection) -> Result<i128> {
    let nk =
        c.anchor().ok_or_else(|| crate::error::Error::InvalidInput("the collection has no anchor necklace".into()))?;
    let e = embed_tiling(&build_tiling(c), None)?;
    Ok(e.necklace_area2(nk) - e.faces_area2())
}

/// A non-maximal collection leaves a hole that extending to a maximal one closes.
pub fn holes(c: &WSCollection, budget: &Budget) -> Result<SuiteReport> {
    let mut t = Tally::default();
    let before = hole_deficit(c)?;
    let maximal = c.is_maximal(budget)?;
    t.check(maximal == (before == 0), || format!("{c}: maximal = {maximal} but deficit {before}"));
    let full = c.extend_to_maximal(budget)?;
    let after = hole_deficit(&full)?;
    t.check(after == 0, || format!("{full}: deficit {after} after extension"));
    Ok(t.finish("holes", c.to_string(), |_| format!("deficit {before} before extension, {after} after")))
}
