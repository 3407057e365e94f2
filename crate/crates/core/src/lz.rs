//! Weak separation for subsets of unequal size under the linear order of
//! `[m]`, `w`-chamber sets, and their reduction to positroids on `[2m]`.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::budget::Budget;
use crate::collection::{enumerate_maximal, maximal_cliques, EnumerationMode};
use crate::cyclic::{mask_below, Subset, MAX_GROUND};
use crate::error::{invalid, Result};
use crate::positroid::DecoratedPermutation;

/// A permutation `w` of `[m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberContext {
    w: Vec<usize>,
}

impl ChamberContext {
    /// `w` in one-line notation.
    pub fn new(w: Vec<usize>) -> Result<Self> {
        let m = w.len();
        if m == 0 || 2 * m > MAX_GROUND as usize {
            return invalid(format!("m = {m} must lie in 1..={}", MAX_GROUND / 2));
        }
        let mut seen = vec![false; m];
        for &x in &w {
            if x == 0 || x > m || std::mem::replace(&mut seen[x - 1], true) {
                return invalid(format!("{w:?} is not a permutation of [{m}]"));
            }
        }
        Ok(ChamberContext { w })
    }

    pub fn m(&self) -> usize {
        self.w.len()
    }

    pub fn w(&self) -> &[usize] {
        &self.w
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.w;
        (0..w.len()).map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count()).sum()
    }

    /// Every permutation of `[m]` in lexicographic order.
    pub fn all(m: usize) -> Result<Vec<ChamberContext>> {
        let mut w: Vec<usize> = (1..=m).collect();
        let mut out = vec![ChamberContext::new(w.clone())?];
        while crate::positroid::next_permutation(&mut w) {
            out.push(ChamberContext { w: w.clone() });
        }
        Ok(out)
    }
}

fn check_within(s: Subset, m: usize) -> Result<()> {
    if s.bits() & !mask_below(m) != 0 {
        return invalid(format!("{s} is not a subset of [{m}]"));
    }
    Ok(())
}

/// No element of `b` lies strictly between two elements of `a`.
fn splits_around(a: Subset, b: Subset) -> bool {
    match (a.first(), a.iter().last()) {
        (Some(lo), Some(hi)) => !b.iter().any(|x| lo < x && x < hi),
        _ => true,
    }
}

/// Weak separation of arbitrary subsets of `[m]` in the linear order.
pub fn lz_weakly_separated(i: Subset, j: Subset, m: usize) -> Result<bool> {
    check_within(i, m)?;
    check_within(j, m)?;
    let (i_only, j_only) = (i.difference(j), j.difference(i));
    Ok((i.len() >= j.len() && splits_around(i_only, j_only)) || (j.len() >= i.len() && splits_around(j_only, i_only)))
}

/// `I ∪ {m + |I| + 1, …, 2m}`, a subset of `[2m]` of size `m`.
pub fn pad(i: Subset, m: usize) -> Result<Subset> {
    check_within(i, m)?;
    if 2 * m > MAX_GROUND as usize {
        return invalid(format!("m = {m} is too large to pad"));
    }
    Ok((m + i.len() + 1..=2 * m).fold(i, |acc, x| acc.with(x)))
}

/// `H(w)`: subsets `I` such that `a ∈ I` forces `b ∈ I` whenever `a < b` and `w(a) < w(b)`.
pub fn w_chamber(ctx: &ChamberContext, budget: &Budget) -> Result<Vec<Subset>> {
    let m = ctx.m();
    budget.check("subsets of [m]", 1u64 << m.min(63))?;
    let w = ctx.w();
    let rules: Vec<(usize, usize)> =
        (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))).filter(|&(a, b)| w[a - 1] < w[b - 1]).collect();
    Ok((0..1u64 << m).map(Subset).filter(|s| rules.iter().all(|&(a, b)| !s.contains(a) || s.contains(b))).collect())
}

/// `ŵ = [2m, 2m - 1, …, m + 1, w⁻¹(m), …, w⁻¹(1)]`.
pub fn w_hat(ctx: &ChamberContext) -> DecoratedPermutation {
    let m = ctx.m();
    let mut inverse = vec![0; m];
    for (a, &x) in ctx.w().iter().enumerate() {
        inverse[x - 1] = a + 1;
    }
    let perm: Vec<usize> = (m + 1..=2 * m).rev().chain((1..=m).rev().map(|x| inverse[x - 1])).collect();
    DecoratedPermutation::new(perm, &Default::default()).expect("ŵ has no fixed points")
}

/// Outcome of the brute-force purity check for one `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LzReport {
    pub w: Vec<usize>,
    pub length: usize,
    /// `m + ℓ(w) + 1`.
    pub expected_size: usize,
    pub chamber_size: usize,
    pub maximal_collections: usize,
    /// Distinct sizes of the maximal collections found.
    pub sizes: Vec<usize>,
    /// Whether padding maps the maximal collections of `H(w)` exactly onto
    /// the maximal collections inside the positroid of `ŵ`.
    pub padding_bijection: bool,
}

impl LzReport {
    pub fn holds(&self) -> bool {
        self.sizes == [self.expected_size] && self.padding_bijection
    }
}

impl fmt::Display for LzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w = {:?}: {} maximal collections in H(w) ({} sets), sizes {:?}, expected {}, padding bijection {}",
            self.w,
            self.maximal_collections,
            self.chamber_size,
            self.sizes,
            self.expected_size,
            if self.padding_bijection { "holds" } else { "fails" }
        )
    }
}

/// Enumerates by brute force every maximal collection of `H(w)` that is
/// pairwise [`lz_weakly_separated`], then compares sizes and padded images
/// against the positroid of `ŵ`.
pub fn verify_lz_purity(ctx: &ChamberContext, budget: &Budget) -> Result<LzReport> {
    let m = ctx.m();
    let chamber = w_chamber(ctx, budget)?;
    let h = chamber.len();
    budget.check("chamber compatibility graph", (h * h) as u64)?;
    let mut adj = vec![FixedBitSet::with_capacity(h); h];
    for x in 0..h {
        for y in x + 1..h {
            if lz_weakly_separated(chamber[x], chamber[y], m)? {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    let cliques = maximal_cliques(&adj, budget)?;
    let sizes: BTreeSet<usize> = cliques.iter().map(Vec::len).collect();
    let mut padded: Vec<Vec<Subset>> = cliques
        .iter()
        .map(|c| {
            let mut v: Vec<Subset> = c.iter().map(|&x| pad(chamber[x], m)).collect::<Result<_>>()?;
            v.sort_unstable();
            Ok(v)
        })
        .collect::<Result<_>>()?;
    padded.sort();
    let anchor = w_hat(ctx).to_necklace();
    let positroid_side: Vec<Vec<Subset>> =
        enumerate_maximal(&anchor, EnumerationMode::Closure, budget)?.into_iter().map(|c| c.sets().to_vec()).collect();
    let length = ctx.length();
    Ok(LzReport {
        w: ctx.w().to_vec(),
        length,
        expected_size: m + length + 1,
        chamber_size: h,
        maximal_collections: cliques.len(),
        sizes: sizes.into_iter().collect(),
        padding_bijection: padded == positroid_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::positroid_hull;
    use crate::cyclic::{weakly_separated, Ground};

    fn s(e: &[usize]) -> Subset {
        Subset::of(e)
    }

    /// Literal definition: some split of one difference brackets the other.
    fn lz_oracle(i: &[usize], j: &[usize]) -> bool {
        let brackets = |big: &[usize], small: &[usize]| -> bool {
            let inner: Vec<usize> = big.iter().copied().filter(|x| !small.contains(x)).collect();
            let outer: Vec<usize> = small.iter().copied().filter(|x| !big.contains(x)).collect();
            (0..1u32 << outer.len()).any(|mask| {
                outer.iter().enumerate().all(|(t, &a)| {
                    if mask >> t & 1 == 0 {
                        inner.iter().all(|&b| a < b)
                    } else {
                        inner.iter().all(|&b| b < a)
                    }
                })
            })
        };
        (i.len() >= j.len() && brackets(i, j)) || (j.len() >= i.len() && brackets(j, i))
    }

    #[test]
    fn examples() {
        assert!(lz_weakly_separated(s(&[1, 2]), s(&[3]), 4).unwrap());
        assert!(!lz_weakly_separated(s(&[1, 4]), s(&[3]), 4).unwrap());
        assert!(lz_weakly_separated(s(&[2, 4]), s(&[2, 4]), 4).unwrap());
        assert!(lz_weakly_separated(s(&[5]), s(&[1]), 4).is_err());
        assert_eq!(pad(s(&[1, 3]), 4).unwrap(), s(&[1, 3, 7, 8]));
        assert_eq!(pad(Subset::EMPTY, 3).unwrap(), s(&[4, 5, 6]));
        assert_eq!(pad(s(&[1, 2, 3]), 3).unwrap(), s(&[1, 2, 3]));
    }

    #[test]
    fn definition_oracle_and_padding() {
        for m in 1..=6 {
            let g2 = Ground::new(2 * m).unwrap();
            let gm = Ground::new(m).unwrap();
            for a in 0..1u64 << m {
                for b in 0..1u64 << m {
                    let (i, j) = (Subset(a), Subset(b));
                    let lz = lz_weakly_separated(i, j, m).unwrap();
                    assert_eq!(lz, lz_oracle(&i.to_vec(), &j.to_vec()), "{i} {j}");
                    let (pi, pj) = (pad(i, m).unwrap(), pad(j, m).unwrap());
                    assert_eq!(pi.len(), m);
                    g2.check_subset(pi).unwrap();
                    assert_eq!(lz, weakly_separated(pi, pj).unwrap(), "{i} {j} m={m}");
                    if i.len() == j.len() {
                        gm.check_subset(i).unwrap();
                        assert_eq!(lz, weakly_separated(i, j).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn chambers() {
        let b = Budget::default();
        let id = ChamberContext::new(vec![1, 2, 3]).unwrap();
        assert_eq!(w_chamber(&id, &b).unwrap(), vec![Subset::EMPTY, s(&[3]), s(&[2, 3]), s(&[1, 2, 3])]);
        let w0 = ChamberContext::new(vec![4, 3, 2, 1]).unwrap();
        assert_eq!(w_chamber(&w0, &b).unwrap().len(), 16);
        for ctx in ChamberContext::all(4).unwrap() {
            let h = w_chamber(&ctx, &b).unwrap();
            assert!(h.contains(&Subset::EMPTY) && h.contains(&s(&[1, 2, 3, 4])));
        }
        assert!(ChamberContext::new(vec![1, 1]).is_err());
    }

    #[test]
    fn w_hat_examples() {
        let id = ChamberContext::new(vec![1, 2]).unwrap();
        assert_eq!(w_hat(&id).perm(), &[4, 3, 2, 1]);
        let sw = ChamberContext::new(vec![2, 1]).unwrap();
        assert_eq!(w_hat(&sw).perm(), &[4, 3, 1, 2]);
        for m in 1..=4 {
            for ctx in ChamberContext::all(m).unwrap() {
                let p = w_hat(&ctx);
                assert_eq!(p.rank(), m);
                assert_eq!(p.length(), m + ctx.length(), "{:?}", ctx.w());
            }
        }
    }

    #[test]
    fn chamber_matches_hull() {
        let b = Budget::default();
        for m in 1..=4 {
            for ctx in ChamberContext::all(m).unwrap() {
                let hull = positroid_hull(&w_hat(&ctx).to_necklace(), &b).unwrap();
                let mut padded: Vec<Subset> =
                    w_chamber(&ctx, &b).unwrap().into_iter().map(|j| pad(j, m).unwrap()).collect();
                padded.sort_unstable();
                assert_eq!(padded, hull, "{:?}", ctx.w());
            }
        }
    }

    #[test]
    fn purity_in_s2_and_s3() {
        let b = Budget::default();
        let r = verify_lz_purity(&ChamberContext::new(vec![1, 2]).unwrap(), &b).unwrap();
        assert_eq!(r.sizes, vec![3]);
        let r = verify_lz_purity(&ChamberContext::new(vec![2, 1]).unwrap(), &b).unwrap();
        assert_eq!(r.sizes, vec![4]);
        for ctx in ChamberContext::all(3).unwrap() {
            let r = verify_lz_purity(&ctx, &b).unwrap();
            assert!(r.holds(), "{r}");
        }
    }
}
