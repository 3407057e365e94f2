//! Plabic tilings: the complex of white and black cliques of a weakly
//! separated collection, its exact planar embedding, and the dual plabic graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::Budget;
use crate::collection::WSCollection;
use crate::cyclic::{separated_bits, Ground, Subset};
use crate::error::{invalid, Error, Result};
use crate::geometry::{
    area2_clockwise, default_polygon, interiors_overlap, is_strictly_convex_clockwise, winding_clockwise, Cell, Point,
};
use crate::plabic::{from_neighbour_rotation, Color, PlabicGraph, Vertex};
use crate::positroid::GrassmannNecklace;

/// A two-dimensional face of the tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileFace {
    pub color: Color,
    /// `K` (size `k - 1`) for a white clique, `L` (size `k + 1`) for a black one.
    pub clique: Subset,
    /// Members in boundary order (cyclic order of the added or removed element).
    pub cycle: Vec<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlabicTiling {
    collection: WSCollection,
    edges: Vec<[Subset; 2]>,
    faces: Vec<TileFace>,
}

impl PlabicTiling {
    pub fn collection(&self) -> &WSCollection {
        &self.collection
    }

    pub fn vertices(&self) -> &[Subset] {
        self.collection.sets()
    }

    /// Edges as colex-ordered pairs, sorted.
    pub fn edges(&self) -> &[[Subset; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[TileFace] {
        &self.faces
    }
}

/// Builds `Σ(C)`: a face for every clique with at least three members and an
/// edge for every side of such a face, plus pairs forming both their white
/// and their black clique.
pub fn build_tiling(c: &WSCollection) -> PlabicTiling {
    let sets = c.sets();
    let mut white_keys = BTreeSet::new();
    let mut black_keys = BTreeSet::new();
    for &s in sets {
        for a in s.iter() {
            white_keys.insert(s.without(a));
        }
        for b in c.ground().full().difference(s).iter() {
            black_keys.insert(s.with(b));
        }
    }
    let white = |k: Subset| -> Vec<Subset> {
        let mut v: Vec<Subset> = sets.iter().copied().filter(|s| k.is_subset_of(*s)).collect();
        v.sort_by_key(|s| s.difference(k).first());
        v
    };
    let black = |l: Subset| -> Vec<Subset> {
        let mut v: Vec<Subset> = sets.iter().copied().filter(|s| s.is_subset_of(l)).collect();
        v.sort_by_key(|s| l.difference(*s).first());
        v
    };
    let mut faces = Vec::new();
    let mut edges = BTreeSet::new();
    let pair = |a: Subset, b: Subset| if a < b { [a, b] } else { [b, a] };
    for (color, keys) in [(Color::White, &white_keys), (Color::Black, &black_keys)] {
        for &key in keys {
            let cycle = if color == Color::White { white(key) } else { black(key) };
            if cycle.len() < 3 {
                continue;
            }
            for t in 0..cycle.len() {
                edges.insert(pair(cycle[t], cycle[(t + 1) % cycle.len()]));
            }
            faces.push(TileFace { color, clique: key, cycle });
        }
    }
    for (x, &i) in sets.iter().enumerate() {
        for &j in &sets[x + 1..] {
            if i.difference(j).len() != 1 {
                continue;
            }
            let w = white(i.intersection(j));
            let b = black(i.union(j));
            if w.len() == 2 && b.len() == 2 {
                edges.insert(pair(i, j));
            }
        }
    }
    PlabicTiling { collection: c.clone(), edges: edges.into_iter().collect(), faces }
}

/// `π(e_S) = Σ_{a ∈ S} v_a`.
pub fn subset_point(polygon: &[Point], s: Subset) -> Point {
    s.iter().fold(Point::ORIGIN, |acc, a| acc + polygon[a - 1])
}

/// A tiling with certified exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedTiling {
    tiling: PlabicTiling,
    polygon: Vec<Point>,
    coords: Vec<Point>,
}

impl EmbeddedTiling {
    pub fn tiling(&self) -> &PlabicTiling {
        &self.tiling
    }

    pub fn polygon(&self) -> &[Point] {
        &self.polygon
    }

    /// Coordinates aligned with `tiling().vertices()`.
    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn coord(&self, s: Subset) -> Option<Point> {
        let idx = self.tiling.vertices().binary_search(&s).ok()?;
        Some(self.coords[idx])
    }

    /// Twice the total area of the faces, clockwise positive.
    pub fn faces_area2(&self) -> i128 {
        self.tiling.faces.iter().map(|f| area2_clockwise(&self.face_points(f))).sum()
    }

    pub fn face_points(&self, f: &TileFace) -> Vec<Point> {
        f.cycle.iter().map(|&s| subset_point(&self.polygon, s)).collect()
    }

    /// Twice the area enclosed by the necklace curve `π(I_1) → ⋯ → π(I_n)`.
    pub fn necklace_area2(&self, anchor: &GrassmannNecklace) -> i128 {
        let curve: Vec<Point> = anchor.entries().iter().map(|&s| subset_point(&self.polygon, s)).collect();
        area2_clockwise(&curve)
    }
}

/// Embeds the tiling and certifies that the images of distinct cells have
/// disjoint relative interiors, all coordinates are distinct, and every face
/// boundary runs clockwise.
pub fn embed_tiling(t: &PlabicTiling, polygon: Option<&[Point]>) -> Result<EmbeddedTiling> {
    let n = t.collection.n();
    let polygon = match polygon {
        Some(p) => {
            if p.len() != n || !is_strictly_convex_clockwise(p) {
                return invalid(format!("polygon must be {n} points in strictly convex clockwise position"));
            }
            p.to_vec()
        }
        None => default_polygon(n)?,
    };
    let sets = t.vertices();
    let coords: Vec<Point> = sets.iter().map(|&s| subset_point(&polygon, s)).collect();
    let mut seen: BTreeMap<Point, Subset> = BTreeMap::new();
    for (&s, &p) in sets.iter().zip(&coords) {
        if let Some(&other) = seen.get(&p) {
            return Err(Error::Embedding(format!("{other} and {s} map to the same point")));
        }
        seen.insert(p, s);
    }
    let e = EmbeddedTiling { tiling: t.clone(), polygon, coords };
    let face_points: Vec<Vec<Point>> = t.faces.iter().map(|f| e.face_points(f)).collect();
    for (f, pts) in t.faces.iter().zip(&face_points) {
        if area2_clockwise(pts) <= 0 {
            return Err(Error::Embedding(format!("face {} does not run clockwise", cycle_label(f))));
        }
    }
    let mut cells: Vec<(String, Cell<'_>)> = Vec::new();
    for (&s, &p) in sets.iter().zip(&e.coords) {
        cells.push((format!("vertex {s}"), Cell::Point(p)));
    }
    for &[a, b] in &t.edges {
        let (pa, pb) = (e.coord(a).unwrap(), e.coord(b).unwrap());
        cells.push((format!("edge {a}-{b}"), Cell::Segment(pa, pb)));
    }
    for (f, pts) in t.faces.iter().zip(&face_points) {
        cells.push((format!("face {}", cycle_label(f)), Cell::Polygon(pts)));
    }
    for x in 0..cells.len() {
        for y in x + 1..cells.len() {
            if interiors_overlap(cells[x].1, cells[y].1) {
                return Err(Error::Embedding(format!("{} overlaps {}", cells[x].0, cells[y].0)));
            }
        }
    }
    Ok(e)
}

fn cycle_label(f: &TileFace) -> String {
    f.cycle.iter().map(|s| s.label()).collect::<Vec<_>>().join(" ")
}

/// Whether `π(J)` lies inside the necklace curve (clockwise winding number 1).
///
/// For a disconnected necklace the curve touches itself at the repeated
/// entries; the winding number is still well defined away from the curve.
pub fn inside_necklace_curve(anchor: &GrassmannNecklace, j: Subset) -> Result<bool> {
    anchor.ground().check_subset(j)?;
    if j.len() != anchor.k() {
        return invalid(format!("{j} has size {}, expected {}", j.len(), anchor.k()));
    }
    if anchor.entries().contains(&j) {
        return invalid(format!("{j} is a necklace entry"));
    }
    if let Some(&e) = anchor.entries().iter().find(|&&e| !separated_bits(e, j)) {
        return invalid(format!("{j} is not weakly separated from necklace entry {e}"));
    }
    let polygon = default_polygon(anchor.n())?;
    let curve: Vec<Point> = anchor.entries().iter().map(|&s| subset_point(&polygon, s)).collect();
    match winding_clockwise(&curve, subset_point(&polygon, j)) {
        Some(w) => Ok(w == 1),
        None => invalid(format!("{j} lies on the necklace curve")),
    }
}

/// The dual plabic graph of a maximal anchored collection, with
/// `face_labels` equal to the collection.
pub fn tiling_to_plabic(c: &WSCollection, budget: &Budget) -> Result<PlabicGraph> {
    let Some(anchor) = c.anchor() else {
        return invalid("the dual graph needs an anchored collection");
    };
    if !c.is_maximal(budget)? {
        return invalid("the dual graph needs a maximal collection; the tiling has holes");
    }
    dual(anchor, c.sets())
}

fn dual(nk: &GrassmannNecklace, sets: &[Subset]) -> Result<PlabicGraph> {
    let n = nk.n();
    let repeated = (1..=n).find_map(|i| ((i + 1)..=n).find(|&j| nk.entry(i) == nk.entry(j)).map(|j| (i, j)));
    if let Some((i, j)) = repeated {
        let sum = nk.direct_sum_split(i, j)?;
        let (c1, c2) = sum.unglue(sets)?;
        let g1 = dual(&sum.first.necklace, &c1)?;
        let g2 = dual(&sum.second.necklace, &c2)?;
        return PlabicGraph::disjoint_union(n, &[(g1, sum.first.labels), (g2, sum.second.labels)]);
    }
    match n {
        1 => {
            let color = if nk.k() == 1 { Color::White } else { Color::Black };
            from_neighbour_rotation(1, vec![Vertex::Boundary(1), Vertex::Internal(color)], &[vec![1], vec![0]])
        }
        2 => {
            let vertices = vec![Vertex::Boundary(1), Vertex::Boundary(2), Vertex::Internal(Color::White)];
            from_neighbour_rotation(2, vertices, &[vec![2], vec![2], vec![0, 1]])
        }
        _ => connected_dual(nk, sets),
    }
}

fn connected_dual(nk: &GrassmannNecklace, sets: &[Subset]) -> Result<PlabicGraph> {
    let n = nk.n();
    let c = WSCollection::new(Ground::new(n)?, nk.k(), sets.to_vec(), Some(nk.clone()))?;
    let tiling = build_tiling(&c);
    let pair = |a: Subset, b: Subset| if a < b { (a, b) } else { (b, a) };
    // Which faces (by index) border each side.
    let mut sides: BTreeMap<(Subset, Subset), Vec<usize>> = BTreeMap::new();
    for (f, face) in tiling.faces.iter().enumerate() {
        let r = face.cycle.len();
        for t in 0..r {
            sides.entry(pair(face.cycle[t], face.cycle[(t + 1) % r])).or_default().push(f);
        }
    }
    let legs: BTreeMap<(Subset, Subset), usize> = (1..=n).map(|i| (pair(nk.entry(i), nk.entry(i + 1)), i)).collect();
    let mut vertices: Vec<Vertex> = (1..=n).map(Vertex::Boundary).collect();
    vertices.extend(tiling.faces.iter().map(|f| Vertex::Internal(f.color)));
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (f, face) in tiling.faces.iter().enumerate() {
        let r = face.cycle.len();
        for t in 0..r {
            let side = pair(face.cycle[t], face.cycle[(t + 1) % r]);
            let across = &sides[&side];
            let other = match (across.as_slice(), legs.get(&side)) {
                ([a, b], None) => n + if *a == f { *b } else { *a },
                ([_], Some(&i)) => i - 1,
                _ => {
                    return invalid(format!(
                        "tiling side {}-{} is not matched; the collection is not maximal",
                        side.0, side.1
                    ))
                }
            };
            neighbours[n + f].push(other);
            if other < n {
                neighbours[other].push(n + f);
            }
        }
    }
    if let Some(i) = (0..n).find(|&i| neighbours[i].len() != 1) {
        return invalid(format!("boundary segment {} borders no single face", i + 1));
    }
    from_neighbour_rotation(n, vertices, &neighbours)
}

/// The tiling of the face labels of a reduced graph.
pub fn plabic_to_tiling(g: &PlabicGraph) -> Result<PlabicTiling> {
    let labels = g.face_labels()?;
    let anchor = GrassmannNecklace::new(labels.necklace())?;
    let c = WSCollection::new(g.ground(), labels.k, labels.sorted_labels(), Some(anchor))?;
    Ok(build_tiling(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::{enumerate_maximal, EnumerationMode};
    use crate::positroid::DecoratedPermutation;

    fn s(e: &[usize]) -> Subset {
        Subset::of(e)
    }

    fn parse(labels: &str) -> Vec<Subset> {
        labels
            .split_whitespace()
            .map(|w| Subset::of(&w.chars().map(|c| c.to_digit(10).unwrap() as usize).collect::<Vec<_>>()))
            .collect()
    }

    fn uniform_collection(n: usize, k: usize, labels: &str) -> WSCollection {
        let nk = GrassmannNecklace::uniform(n, k).unwrap();
        WSCollection::new(Ground::new(n).unwrap(), k, parse(labels), Some(nk)).unwrap()
    }

    #[test]
    fn square_tiling() {
        let c = uniform_collection(4, 2, "12 23 34 14 13");
        let t = build_tiling(&c);
        let mut faces: Vec<(Color, Subset)> = t.faces().iter().map(|f| (f.color, f.clique)).collect();
        faces.sort();
        assert_eq!(
            faces,
            vec![
                (Color::Black, s(&[1, 2, 3])),
                (Color::Black, s(&[1, 3, 4])),
                (Color::White, s(&[1])),
                (Color::White, s(&[3])),
            ]
        );
        assert_eq!(t.edges().len(), 8);
        let e = embed_tiling(&t, None).unwrap();
        let nk = c.anchor().unwrap();
        assert_eq!(e.faces_area2(), e.necklace_area2(nk));
        assert!(e.faces_area2() > 0);
        let g = tiling_to_plabic(&c, &Budget::default()).unwrap();
        assert_eq!(g.vertices().len(), 8);
        assert!(g.is_reduced());
        assert_eq!(g.face_labels().unwrap().sorted_labels(), c.sets());
        assert_eq!(plabic_to_tiling(&g).unwrap(), t);
    }

    #[test]
    fn singleton_tiling() {
        let nk = GrassmannNecklace::new(vec![s(&[1])]).unwrap();
        let c = WSCollection::from_necklace(&nk);
        let t = build_tiling(&c);
        assert_eq!((t.vertices().len(), t.edges().len(), t.faces().len()), (1, 0, 0));
        assert!(embed_tiling(&t, None).is_ok());
        let g = tiling_to_plabic(&c, &Budget::default()).unwrap();
        assert_eq!(plabic_to_tiling(&g).unwrap(), t);
    }

    #[test]
    fn crossing_pair_collides() {
        // {13, 24} is not a valid collection, so build the tiling by hand.
        let g = Ground::new(4).unwrap();
        let bad = WSCollection::from_parts(g, 2, vec![s(&[1, 3]), s(&[2, 4])], None);
        let t = build_tiling(&bad);
        let square = vec![Point::new(0, 1), Point::new(1, 0), Point::new(0, -1), Point::new(-1, 0)];
        match embed_tiling(&t, Some(&square)) {
            Err(Error::Embedding(msg)) => assert!(msg.contains("same point"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn translation_property() {
        let c = uniform_collection(8, 3, "123 234 345 456 567 678 178 128 127 137 136 135 134 167 156 145");
        let e = embed_tiling(&build_tiling(&c), None).unwrap();
        let v = e.polygon().to_vec();
        for &x in c.sets() {
            for &y in c.sets() {
                if x.difference(y).len() == 1 {
                    let i = x.difference(y).first().unwrap();
                    let j = y.difference(x).first().unwrap();
                    assert_eq!(e.coord(x).unwrap() - e.coord(y).unwrap(), v[i - 1] - v[j - 1]);
                }
            }
        }
        assert_eq!(e.faces_area2(), e.necklace_area2(c.anchor().unwrap()));
    }

    #[test]
    fn incomplete_example_has_a_hole() {
        let nk = GrassmannNecklace::uniform(6, 3).unwrap();
        let c = WSCollection::new(
            Ground::new(6).unwrap(),
            3,
            parse("123 234 345 456 156 126 125 135 235"),
            Some(nk.clone()),
        )
        .unwrap();
        let e = embed_tiling(&build_tiling(&c), None).unwrap();
        let deficit = e.necklace_area2(&nk) - e.faces_area2();
        assert!(deficit > 0);
        assert!(tiling_to_plabic(&c, &Budget::default()).is_err());
        let full = c.extend_to_maximal(&Budget::default()).unwrap();
        let f = embed_tiling(&build_tiling(&full), None).unwrap();
        assert_eq!(f.necklace_area2(&nk), f.faces_area2());
    }

    #[test]
    fn winding_examples() {
        let u = GrassmannNecklace::uniform(5, 2).unwrap();
        assert!(inside_necklace_curve(&u, s(&[1, 3])).unwrap());
        assert!(inside_necklace_curve(&u, s(&[1, 2])).is_err());
        let nk = GrassmannNecklace::new(parse("124 245 345 245 125")).unwrap();
        assert!(!inside_necklace_curve(&nk, s(&[2, 3, 4])).unwrap());
        // 135 and 124 interleave on 2 < 3 < 4 < 5, so 135 is not admissible.
        assert!(inside_necklace_curve(&nk, s(&[1, 3, 5])).is_err());
        assert!(nk.positroid().contains(s(&[1, 3, 5])).unwrap());
    }

    #[test]
    fn duality_for_small_positroids() {
        let budget = Budget::default();
        for n in 1..=5 {
            for p in DecoratedPermutation::all(n).unwrap() {
                let nk = p.to_necklace();
                for c in enumerate_maximal(&nk, EnumerationMode::Closure, &budget).unwrap() {
                    let g = tiling_to_plabic(&c, &budget).unwrap();
                    assert_eq!(g.check_reduced(), crate::plabic::Verdict::Reduced, "{p} {c}");
                    assert_eq!(g.strand_permutation(), p, "{c}");
                    let labels = g.face_labels().unwrap();
                    assert_eq!(labels.sorted_labels(), c.sets(), "{p}");
                    assert_eq!(labels.necklace(), nk.entries());
                    assert_eq!(g.face_count(), p.length() + 1);
                    let e = embed_tiling(&build_tiling(&c), None).unwrap();
                    assert_eq!(e.faces_area2(), e.necklace_area2(&nk), "{c}");
                }
            }
        }
    }
}
