//! Brute-force oracles written straight from the definitions, sharing no
//! code with the library beyond the types used to call it.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

/// Elements of a bitmask, ascending, 1-based.
pub fn elems(s: u64) -> Vec<usize> {
    (1..=64).filter(|&a| s >> (a - 1) & 1 == 1).collect()
}

pub fn mask(e: &[usize]) -> u64 {
    e.iter().fold(0, |m, &a| m | 1 << (a - 1))
}

pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|s| s.count_ones() as usize == k).collect()
}

/// No `a < b < c < d` alternating between `I \ J` and `J \ I`.
pub fn weakly_separated(i: u64, j: u64) -> bool {
    let (a, b) = (i & !j, j & !i);
    let tagged: Vec<u8> = (0..64)
        .filter_map(|x| match (a >> x & 1, b >> x & 1) {
            (1, _) => Some(0),
            (_, 1) => Some(1),
            _ => None,
        })
        .collect();
    let m = tagged.len();
    for p in 0..m {
        for q in p + 1..m {
            for r in q + 1..m {
                for s in r + 1..m {
                    let t = [tagged[p], tagged[q], tagged[r], tagged[s]];
                    if t[0] == t[2] && t[1] == t[3] && t[0] != t[1] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `I <=_i J`: sort both in the order starting at `i` and compare termwise.
pub fn shifted_leq(n: usize, i: usize, a: u64, b: u64) -> bool {
    let key = |x: &usize| (x + n - i) % n;
    let mut x = elems(a);
    let mut y = elems(b);
    x.sort_by_key(key);
    y.sort_by_key(key);
    x.len() == y.len() && x.iter().zip(&y).all(|(p, q)| key(p) <= key(q))
}

/// Bases of the positroid of a necklace, from the termwise definition.
pub fn positroid(n: usize, necklace: &[u64]) -> Vec<u64> {
    let k = necklace[0].count_ones() as usize;
    k_subsets(n, k).into_iter().filter(|&j| (1..=n).all(|i| shifted_leq(n, i, necklace[i - 1], j))).collect()
}

/// All maximal cliques containing `forced` among `candidates`, by
/// include/exclude search with a final maximality test.
pub fn maximal_families(candidates: &[u64], forced: &[u64], compatible: &dyn Fn(u64, u64) -> bool) -> Vec<Vec<u64>> {
    let forced: BTreeSet<u64> = forced.iter().copied().collect();
    let free: Vec<u64> = candidates
        .iter()
        .copied()
        .filter(|c| !forced.contains(c) && forced.iter().all(|&f| compatible(f, *c)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<u64> = forced.iter().copied().collect();
    search(&free, 0, &mut chosen, compatible, &mut out);
    for f in &mut out {
        f.sort_unstable();
    }
    out.sort();
    out
}

fn search(free: &[u64], at: usize, chosen: &mut Vec<u64>, ok: &dyn Fn(u64, u64) -> bool, out: &mut Vec<Vec<u64>>) {
    if at == free.len() {
        let maximal = free.iter().all(|c| chosen.contains(c) || chosen.iter().any(|&x| !ok(x, *c)));
        if maximal {
            out.push(chosen.clone());
        }
        return;
    }
    let c = free[at];
    if chosen.iter().all(|&x| ok(x, c)) {
        chosen.push(c);
        search(free, at + 1, chosen, ok, out);
        chosen.pop();
    }
    search(free, at + 1, chosen, ok, out);
}

/// Maximal weakly separated collections inside the positroid of `necklace`.
pub fn maximal_collections(n: usize, necklace: &[u64]) -> Vec<Vec<u64>> {
    maximal_families(&positroid(n, necklace), necklace, &|a, b| weakly_separated(a, b))
}

/// Connectivity of the graph joining families that differ in one member.
pub fn exchange_connected(families: &[Vec<u64>]) -> bool {
    if families.is_empty() {
        return true;
    }
    let mut seen = vec![false; families.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for y in 0..families.len() {
            if !seen[y] && families[x].iter().filter(|s| !families[y].contains(s)).count() == 1 {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Finest noncrossing partition coarser than the cycles of `perm`.
pub fn noncrossing_blocks(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut block: Vec<usize> = (0..n).collect();
    let merge = |block: &mut Vec<usize>, a: usize, b: usize| {
        let (x, y) = (block[a], block[b]);
        if x != y {
            for v in block.iter_mut() {
                if *v == y {
                    *v = x;
                }
            }
        }
    };
    for (i, &image) in perm.iter().enumerate() {
        merge(&mut block, i, image - 1);
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if block[a] == block[c] && block[b] == block[d] && block[a] != block[b] {
                            merge(&mut block, a, b);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match groups.iter_mut().find(|g| block[g[0] - 1] == block[i]) {
            Some(g) => g.push(i + 1),
            None => groups.push(vec![i + 1]),
        }
    }
    groups
}

/// `I` and `J` of arbitrary sizes: the larger one's difference sits between
/// two parts of the smaller one's difference in the linear order.
pub fn lz_separated(i: u64, j: u64) -> bool {
    let half = |big: u64, small: u64| {
        if big.count_ones() < small.count_ones() {
            return false;
        }
        let middle = elems(big & !small);
        let rest = elems(small & !big);
        (0..1u32 << rest.len()).any(|split| {
            let (low, high): (Vec<usize>, Vec<usize>) =
                rest.iter().enumerate().fold((vec![], vec![]), |(mut l, mut h), (t, &x)| {
                    if split >> t & 1 == 1 {
                        l.push(x)
                    } else {
                        h.push(x)
                    }
                    (l, h)
                });
            low.iter().all(|&x| middle.iter().all(|&y| x < y)) && high.iter().all(|&x| middle.iter().all(|&y| x > y))
        })
    };
    half(i, j) || half(j, i)
}

/// Twice the signed area of a closed polygon, clockwise positive.
pub fn area2(points: &[(i128, i128)]) -> i128 {
    let m = points.len();
    -(0..m)
        .map(|t| {
            let (p, q) = (points[t], points[(t + 1) % m]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum::<i128>()
}

/// Winding number of a closed curve around `p` by crossing counts with a
/// rightward ray, counterclockwise positive; `None` when `p` is on the curve.
pub fn winding(curve: &[(i128, i128)], p: (i128, i128)) -> Option<i64> {
    let m = curve.len();
    let mut w = 0;
    for t in 0..m {
        let (a, b) = (curve[t], curve[(t + 1) % m]);
        let cross = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
        let within = a.0.min(b.0) <= p.0 && p.0 <= a.0.max(b.0) && a.1.min(b.1) <= p.1 && p.1 <= a.1.max(b.1);
        if cross == 0 && within {
            return None;
        }
        if a.1 <= p.1 && b.1 > p.1 && cross > 0 {
            w += 1;
        } else if a.1 > p.1 && b.1 <= p.1 && cross < 0 {
            w -= 1;
        }
    }
    Some(w)
}
