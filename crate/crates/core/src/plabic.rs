//! Plabic graphs: planar bicoloured graphs in a disk, encoded by a rotation system.
//!
//! Vertices are indexed `0..`; boundary vertices carry a label `1..=n`, internal
//! ones a colour. Every vertex lists its incident edges in clockwise order.
//! Edge `e = [x, y]` owns the half-edges `2e` (x to y) and `2e + 1` (y to x).
//!
//! For face and strand computations the graph is closed up with boundary arcs
//! `i -> i + 1`; at boundary vertex `i` the clockwise order is
//! `[arc to i + 1, interior edge, arc to i - 1]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::{Ground, Subset};
use crate::error::{invalid, Result};
use crate::positroid::{DecoratedPermutation, FixedColor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    /// Boundary vertex with its label in `1..=n`.
    Boundary(usize),
    Internal(Color),
}

impl Vertex {
    pub fn color(self) -> Option<Color> {
        match self {
            Vertex::Internal(c) => Some(c),
            Vertex::Boundary(_) => None,
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, Vertex::Boundary(_))
    }
}

/// A plabic graph with a validated rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlabicGraph {
    ground: Ground,
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
    rotation: Vec<Vec<usize>>,
    boundary: Vec<usize>,
}

/// Closed-up combinatorial map: real half-edges first, then the boundary arcs.
#[derive(Debug, Clone)]
struct Map {
    tail: Vec<usize>,
    head: Vec<usize>,
    /// Next outgoing half-edge clockwise around the tail.
    cw: Vec<usize>,
    ccw: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    outer: usize,
    real: usize,
}

impl PlabicGraph {
    /// Builds and validates a graph. `rotation[v]` lists edge indices clockwise.
    pub fn new(n: usize, vertices: Vec<Vertex>, edges: Vec<[usize; 2]>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let ground = Ground::new(n)?;
        if rotation.len() != vertices.len() {
            return invalid(format!("{} vertices but {} rotation lists", vertices.len(), rotation.len()));
        }
        let mut boundary = vec![usize::MAX; n];
        for (v, kind) in vertices.iter().enumerate() {
            if let Vertex::Boundary(i) = *kind {
                ground.check_element(i)?;
                if boundary[i - 1] != usize::MAX {
                    return invalid(format!("boundary label {i} used twice"));
                }
                boundary[i - 1] = v;
            }
        }
        if let Some(i) = boundary.iter().position(|&v| v == usize::MAX) {
            return invalid(format!("boundary vertex {} is missing", i + 1));
        }
        for (e, &[x, y]) in edges.iter().enumerate() {
            if x >= vertices.len() || y >= vertices.len() {
                return invalid(format!("edge {e} refers to a missing vertex"));
            }
            if x == y {
                return invalid(format!("edge {e} is a self-loop at vertex {x}"));
            }
            if vertices[x].is_boundary() && vertices[y].is_boundary() {
                return invalid(format!("edge {e} joins two boundary vertices"));
            }
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (e, &[x, y]) in edges.iter().enumerate() {
            incidence[x].push(e);
            incidence[y].push(e);
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut listed = rot.clone();
            listed.sort_unstable();
            if listed != incidence[v] {
                return invalid(format!(
                    "rotation at vertex {v} lists edges {rot:?}, incident edges are {:?}",
                    incidence[v]
                ));
            }
            match vertices[v] {
                Vertex::Boundary(i) if rot.len() != 1 => {
                    return invalid(format!(
                        "boundary vertex {i} has degree {}, expected 1 (use a lollipop for an isolated boundary point)",
                        rot.len()
                    ))
                }
                Vertex::Internal(_) if rot.is_empty() => return invalid(format!("internal vertex {v} is isolated")),
                _ => {}
            }
        }
        let g = PlabicGraph { ground, vertices, edges, rotation, boundary };
        let map = g.map();
        // Everything must hang off the boundary circle, and the map must be planar.
        let mut seen = vec![false; g.vertices.len()];
        let mut stack: Vec<usize> = g.boundary.clone();
        for &b in &stack {
            seen[b] = true;
        }
        while let Some(v) = stack.pop() {
            for &e in &g.rotation[v] {
                let w = g.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return invalid(format!("vertex {v} is not connected to the boundary"));
        }
        let v = g.vertices.len() as i64;
        let e = (g.edges.len() + n) as i64;
        let f = map.faces.len() as i64;
        if v - e + f != 2 {
            return invalid(format!("rotation system is not planar in the disk: V - E + F = {}", v - e + f));
        }
        Ok(g)
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Clockwise incident edges of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Vertex index of boundary vertex `i`.
    pub fn boundary_vertex(&self, i: usize) -> usize {
        self.boundary[i - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [x, y] = self.edges[e];
        if x == v {
            y
        } else {
            x
        }
    }

    /// Half-edge of `e` leaving `v`.
    fn out_half(&self, e: usize, v: usize) -> usize {
        if self.edges[e][0] == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn map(&self) -> Map {
        let n = self.n();
        let m = self.edges.len();
        let total = 2 * (m + n);
        let mut tail = vec![0; total];
        let mut head = vec![0; total];
        for (e, &[x, y]) in self.edges.iter().enumerate() {
            tail[2 * e] = x;
            head[2 * e] = y;
            tail[2 * e + 1] = y;
            head[2 * e + 1] = x;
        }
        let arc = |i: usize| 2 * (m + i - 1);
        for i in 1..=n {
            let (x, y) = (self.boundary_vertex(i), self.boundary_vertex(self.ground.succ(i)));
            tail[arc(i)] = x;
            head[arc(i)] = y;
            tail[arc(i) + 1] = y;
            head[arc(i) + 1] = x;
        }
        let mut cw = vec![0; total];
        let mut ccw = vec![0; total];
        let mut link = |order: &[usize]| {
            for (t, &h) in order.iter().enumerate() {
                let next = order[(t + 1) % order.len()];
                cw[h] = next;
                ccw[next] = h;
            }
        };
        for (v, kind) in self.vertices.iter().enumerate() {
            let mut order: Vec<usize> = Vec::with_capacity(3);
            if let Vertex::Boundary(i) = *kind {
                order.push(arc(i));
                order.extend(self.rotation[v].iter().map(|&e| self.out_half(e, v)));
                order.push(arc(self.ground.pred(i)) + 1);
            } else {
                order.extend(self.rotation[v].iter().map(|&e| self.out_half(e, v)));
            }
            link(&order);
        }
        let mut face_of = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut orbit = Vec::new();
            let mut h = start;
            while face_of[h] == usize::MAX {
                face_of[h] = id;
                orbit.push(h);
                h = cw[h ^ 1];
            }
            faces.push(orbit);
        }
        let outer = face_of[arc(1)];
        Map { tail, head, cw, ccw, face_of, faces, outer, real: 2 * m }
    }

    /// Number of faces inside the disk.
    pub fn face_count(&self) -> usize {
        self.map().faces.len() - 1
    }

    /// Follows the strand rules from every boundary vertex.
    pub fn trace_strands(&self) -> StrandTrace {
        let map = self.map();
        let n = self.n();
        let mut used = vec![false; map.real];
        let mut by_end: Vec<Option<Strand>> = vec![None; n];
        let mut perm = vec![0; n];
        let mut colors = BTreeMap::new();
        for start in 1..=n {
            let b = self.boundary_vertex(start);
            let mut h = self.out_half(self.rotation[b][0], b);
            let mut path = vec![h];
            used[h] = true;
            loop {
                let v = map.head[h];
                if let Vertex::Boundary(end) = self.vertices[v] {
                    perm[start - 1] = end;
                    if end == start {
                        colors.insert(start, self.fixed_point_color(&path));
                    }
                    by_end[end - 1] = Some(Strand { id: end, start, path });
                    break;
                }
                h = self.turn(&map, h);
                used[h] = true;
                path.push(h);
            }
        }
        let mut loops = Vec::new();
        for s in 0..map.real {
            if used[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = s;
            while !used[h] {
                used[h] = true;
                cycle.push(h);
                h = self.turn(&map, h);
            }
            loops.push(cycle);
        }
        let permutation = DecoratedPermutation::new(perm, &colors).expect("strands pair boundary vertices bijectively");
        StrandTrace {
            strands: by_end.into_iter().map(|s| s.expect("every boundary vertex ends a strand")).collect(),
            loops,
            permutation,
        }
    }

    /// Arriving along `h`: sharpest left at white, sharpest right at black.
    fn turn(&self, map: &Map, h: usize) -> usize {
        match self.vertices[map.head[h]] {
            Vertex::Internal(Color::White) => map.cw[h ^ 1],
            Vertex::Internal(Color::Black) => map.ccw[h ^ 1],
            Vertex::Boundary(_) => unreachable!("strands stop at the boundary"),
        }
    }

    /// A white lollipop is a coloop, a black one a loop. Longer returning
    /// strands take the colour of the first internal vertex they meet.
    fn fixed_point_color(&self, path: &[usize]) -> FixedColor {
        let first = self.edges[path[0] / 2];
        let v = if self.vertices[first[0]].is_boundary() { first[1] } else { first[0] };
        match self.vertices[v] {
            Vertex::Internal(Color::White) => FixedColor::Coloop,
            _ => FixedColor::Loop,
        }
    }

    /// The decorated strand permutation.
    pub fn strand_permutation(&self) -> DecoratedPermutation {
        self.trace_strands().permutation
    }

    /// Removes degree-two internal vertices wherever that leaves a valid graph.
    /// Returns the smaller graph and, for each of its vertices, the original index.
    pub fn suppress_degree_two(&self) -> (PlabicGraph, Vec<usize>) {
        let mut g = self.clone();
        let mut origin: Vec<usize> = (0..g.vertices.len()).collect();
        loop {
            let candidate = (0..g.vertices.len()).find(|&v| g.removable_degree_two(v).is_ok());
            let Some(v) = candidate else { break };
            g = g.remove_vertex(v).expect("checked removable");
            origin.remove(v);
        }
        (g, origin)
    }

    fn removable_degree_two(&self, v: usize) -> Result<()> {
        if self.vertices[v].is_boundary() || self.degree(v) != 2 {
            return invalid(format!("vertex {v} is not an internal vertex of degree 2"));
        }
        let [e1, e2] = [self.rotation[v][0], self.rotation[v][1]];
        let (a, b) = (self.other_end(e1, v), self.other_end(e2, v));
        if a == b {
            return invalid(format!("both edges at vertex {v} lead to vertex {a}"));
        }
        if self.vertices[a].is_boundary() && self.vertices[b].is_boundary() {
            return invalid(format!("vertex {v} sits between two boundary vertices"));
        }
        Ok(())
    }

    /// Checks the three reducedness conditions and reports the first failure.
    pub fn check_reduced(&self) -> Verdict {
        let trace = self.trace_strands();
        if let Some(cycle) = trace.loops.first() {
            let map = self.map();
            let vertices = cycle.iter().map(|&h| map.tail[h]).collect();
            return Verdict::ClosedLoop { vertices };
        }
        let (g, origin) = self.suppress_degree_two();
        let trace = g.trace_strands();
        let n = g.n();
        // Crossing events along each strand: (edge, other strand).
        let mut owner = vec![0usize; 2 * g.edges.len()];
        for s in &trace.strands {
            for &h in &s.path {
                owner[h] = s.id;
            }
        }
        let crossing_edge = |e: usize| {
            let [x, y] = g.edges[e];
            matches!((g.vertices[x], g.vertices[y]), (Vertex::Internal(c1), Vertex::Internal(c2)) if c1 != c2)
        };
        let mut events: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for s in &trace.strands {
            for &h in &s.path {
                let e = h / 2;
                if !crossing_edge(e) {
                    continue;
                }
                let other = owner[h ^ 1];
                let at = [origin[g.edges[e][0]], origin[g.edges[e][1]]];
                if other == s.id {
                    return Verdict::SelfCrossing { strand: s.id, at };
                }
                events[s.id - 1].push((e, other));
            }
        }
        for a in 1..=n {
            for b in a + 1..=n {
                let along_a: Vec<usize> = events[a - 1].iter().filter(|x| x.1 == b).map(|x| x.0).collect();
                let mut along_b: Vec<usize> = events[b - 1].iter().filter(|x| x.1 == a).map(|x| x.0).collect();
                along_b.reverse();
                if along_a != along_b {
                    let pick = |e: usize| [origin[g.edges[e][0]], origin[g.edges[e][1]]];
                    let first = along_a.first().copied().unwrap_or(0);
                    let second = along_a.get(1).copied().unwrap_or(first);
                    return Verdict::BadDoubleCrossing { strands: [a, b], at: [pick(first), pick(second)] };
                }
            }
        }
        if let Some(s) = trace.strands.iter().find(|s| s.start == s.id && s.path.len() > 2) {
            let [x, y] = g.edges[s.path[0] / 2];
            return Verdict::SelfCrossing { strand: s.id, at: [origin[x], origin[y]] };
        }
        Verdict::Reduced
    }

    pub fn is_reduced(&self) -> bool {
        self.check_reduced() == Verdict::Reduced
    }

    /// Labels every face by the strands that have it on their left.
    pub fn face_labels(&self) -> Result<FaceLabels> {
        let verdict = self.check_reduced();
        if verdict != Verdict::Reduced {
            return invalid(format!("face labels need a reduced graph: {verdict}"));
        }
        let map = self.map();
        let trace = self.trace_strands();
        let nf = map.faces.len();
        let mut labels = vec![Subset::EMPTY; nf];
        for s in &trace.strands {
            if s.start == s.id {
                if trace.permutation.color(s.id) == Some(FixedColor::Coloop) {
                    for l in labels.iter_mut() {
                        *l = l.with(s.id);
                    }
                }
                continue;
            }
            let mut on_strand = vec![false; self.edges.len()];
            for &h in &s.path {
                on_strand[h / 2] = true;
            }
            let mut uf = UnionFind::new(nf);
            for (e, &cut) in on_strand.iter().enumerate() {
                if !cut {
                    uf.union(map.face_of[2 * e], map.face_of[2 * e + 1]);
                }
            }
            let mut side: Vec<Option<bool>> = vec![None; nf];
            for &h in &s.path {
                let (l, r) = (map.face_of[h], map.face_of[h ^ 1]);
                if l == r {
                    continue;
                }
                for (face, left) in [(l, true), (r, false)] {
                    let root = uf.find(face);
                    match side[root] {
                        None => side[root] = Some(left),
                        Some(prev) if prev != left => {
                            return invalid(format!("strand {} has the same region on both sides", s.id))
                        }
                        _ => {}
                    }
                }
            }
            for f in (0..nf).filter(|&f| f != map.outer) {
                match side[uf.find(f)] {
                    Some(true) => labels[f] = labels[f].with(s.id),
                    Some(false) => {}
                    None => return invalid(format!("cannot place a face relative to strand {}", s.id)),
                }
            }
        }
        let inner: Vec<usize> = (0..nf).filter(|&f| f != map.outer).collect();
        let k = labels[inner[0]].len();
        if let Some(&f) = inner.iter().find(|&&f| labels[f].len() != k) {
            return invalid(format!("faces carry labels of different sizes ({} vs {k})", labels[f].len()));
        }
        let faces: Vec<Face> = inner
            .iter()
            .map(|&f| Face { label: labels[f], vertices: map.faces[f].iter().map(|&h| map.tail[h]).collect() })
            .collect();
        let index: BTreeMap<usize, usize> = inner.iter().enumerate().map(|(t, &f)| (f, t)).collect();
        let m = self.edges.len();
        let boundary_faces =
            (1..=self.n()).map(|i| index[&map.face_of[2 * (m + self.ground.pred(i) - 1) + 1]]).collect();
        let edge_faces = (0..m).map(|e| [index[&map.face_of[2 * e]], index[&map.face_of[2 * e + 1]]]).collect();
        Ok(FaceLabels { k, faces, boundary_faces, edge_faces })
    }

    /// All internal square faces whose corners have degree three and alternate in colour.
    pub fn square_faces(&self) -> Vec<[usize; 4]> {
        let map = self.map();
        let mut out = Vec::new();
        for (id, orbit) in map.faces.iter().enumerate() {
            if id == map.outer || orbit.len() != 4 {
                continue;
            }
            let vs: Vec<usize> = orbit.iter().map(|&h| map.tail[h]).collect();
            if self.square_ok(&vs).is_ok() {
                out.push([vs[0], vs[1], vs[2], vs[3]]);
            }
        }
        out
    }

    fn square_ok(&self, vs: &[usize]) -> Result<()> {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != 4 {
            return invalid("a square face needs four distinct corners");
        }
        for (t, &v) in vs.iter().enumerate() {
            let (Some(c), Some(d)) = (self.vertices[v].color(), self.vertices[vs[(t + 1) % 4]].color()) else {
                return invalid(format!("square corner {v} is a boundary vertex"));
            };
            if self.degree(v) != 3 {
                return invalid(format!("square corner {v} has degree {}, expected 3", self.degree(v)));
            }
            if c == d {
                return invalid("square corners must alternate in colour");
            }
        }
        Ok(())
    }

    /// Applies one of the moves M1 to M3.
    pub fn apply_move(&self, mv: &Move) -> Result<PlabicGraph> {
        match *mv {
            Move::Square { vertices } => {
                let map = self.map();
                let mut want = vertices.to_vec();
                want.sort_unstable();
                let face = map.faces.iter().enumerate().find(|(id, orbit)| {
                    let mut vs: Vec<usize> = orbit.iter().map(|&h| map.tail[h]).collect();
                    vs.sort_unstable();
                    *id != map.outer && vs == want
                });
                let Some((_, orbit)) = face else {
                    return invalid(format!("no face has corners {vertices:?}"));
                };
                let vs: Vec<usize> = orbit.iter().map(|&h| map.tail[h]).collect();
                self.square_ok(&vs)?;
                let mut g = self.clone();
                for &v in &vs {
                    g.vertices[v] = Vertex::Internal(g.vertices[v].color().unwrap().flipped());
                }
                Ok(g)
            }
            Move::Contract { edge } => self.contract(edge),
            Move::Expand { vertex, start, count } => self.expand(vertex, start, count),
            Move::Insert { edge, color } => self.insert_vertex(edge, color),
            Move::Remove { vertex } => self.remove_vertex(vertex),
        }
    }

    fn check_edge(&self, e: usize) -> Result<[usize; 2]> {
        self.edges.get(e).copied().ok_or_else(|| crate::Error::InvalidInput(format!("no edge {e}")))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertices.len() {
            return invalid(format!("no vertex {v}"));
        }
        Ok(())
    }

    fn contract(&self, e: usize) -> Result<PlabicGraph> {
        let [u, v] = self.check_edge(e)?;
        let (Some(cu), Some(cv)) = (self.vertices[u].color(), self.vertices[v].color()) else {
            return invalid(format!("edge {e} touches the boundary"));
        };
        if cu != cv {
            return invalid(format!("edge {e} joins vertices of different colours"));
        }
        if self.rotation[u].iter().filter(|&&f| self.other_end(f, u) == v).count() > 1 {
            return invalid(format!("vertices {u} and {v} are joined by parallel edges"));
        }
        let from = |w: usize| -> Vec<usize> {
            let r = &self.rotation[w];
            let p = r.iter().position(|&f| f == e).unwrap();
            r[p + 1..].iter().chain(&r[..p]).copied().collect()
        };
        let mut merged = from(u);
        merged.extend(from(v));
        let mut g = self.clone();
        g.rotation[u] = merged;
        for &f in &g.rotation[u] {
            for end in g.edges[f].iter_mut() {
                if *end == v {
                    *end = u;
                }
            }
        }
        g.rotation[v].clear();
        g.compact(&[v], &[e])
    }

    fn expand(&self, v: usize, start: usize, count: usize) -> Result<PlabicGraph> {
        self.check_vertex(v)?;
        let Some(color) = self.vertices[v].color() else {
            return invalid(format!("vertex {v} is on the boundary"));
        };
        let d = self.degree(v);
        if start >= d || count == 0 || count >= d {
            return invalid(format!("cannot split {count} of the {d} edges at vertex {v}"));
        }
        let r = &self.rotation[v];
        let moved: Vec<usize> = (0..count).map(|t| r[(start + t) % d]).collect();
        let kept: Vec<usize> = (count..d).map(|t| r[(start + t) % d]).collect();
        let mut g = self.clone();
        let w = g.vertices.len();
        let f = g.edges.len();
        g.vertices.push(Vertex::Internal(color));
        g.edges.push([v, w]);
        for &x in &moved {
            for end in g.edges[x].iter_mut() {
                if *end == v {
                    *end = w;
                }
            }
        }
        let mut rv = vec![f];
        rv.extend(kept);
        let mut rw = vec![f];
        rw.extend(moved);
        g.rotation[v] = rv;
        g.rotation.push(rw);
        g.revalidate()
    }

    fn insert_vertex(&self, e: usize, color: Color) -> Result<PlabicGraph> {
        let [x, y] = self.check_edge(e)?;
        let mut g = self.clone();
        let w = g.vertices.len();
        let f = g.edges.len();
        g.vertices.push(Vertex::Internal(color));
        g.edges[e] = [x, w];
        g.edges.push([w, y]);
        for slot in g.rotation[y].iter_mut() {
            if *slot == e {
                *slot = f;
            }
        }
        g.rotation.push(vec![e, f]);
        g.revalidate()
    }

    fn remove_vertex(&self, v: usize) -> Result<PlabicGraph> {
        self.check_vertex(v)?;
        self.removable_degree_two(v)?;
        let [e1, e2] = [self.rotation[v][0], self.rotation[v][1]];
        let (keep, drop) = (e1.min(e2), e1.max(e2));
        let a = self.other_end(keep, v);
        let b = self.other_end(drop, v);
        let mut g = self.clone();
        g.edges[keep] = if self.edges[keep][0] == v { [b, a] } else { [a, b] };
        for slot in g.rotation[b].iter_mut() {
            if *slot == drop {
                *slot = keep;
            }
        }
        g.rotation[v].clear();
        g.compact(&[v], &[drop])
    }

    /// Deletes the given vertices and edges, renumbering what is left in order.
    fn compact(mut self, dead_vertices: &[usize], dead_edges: &[usize]) -> Result<PlabicGraph> {
        let vmap = renumber(self.vertices.len(), dead_vertices);
        let emap = renumber(self.edges.len(), dead_edges);
        let vertices = (0..self.vertices.len()).filter(|&v| vmap[v] != usize::MAX).map(|v| self.vertices[v]).collect();
        let edges =
            (0..self.edges.len()).filter(|&e| emap[e] != usize::MAX).map(|e| self.edges[e].map(|x| vmap[x])).collect();
        let rotation = std::mem::take(&mut self.rotation)
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| vmap[v] != usize::MAX)
            .map(|(_, r)| r.into_iter().map(|e| emap[e]).collect())
            .collect();
        PlabicGraph::new(self.n(), vertices, edges, rotation)
    }

    fn revalidate(self) -> Result<PlabicGraph> {
        PlabicGraph::new(self.n(), self.vertices, self.edges, self.rotation)
    }

    /// Places graphs side by side; part `p` has its boundary vertex `j` relabelled
    /// `labels[p][j - 1]`. The label sets must be disjoint cyclic intervals of `[n]`
    /// listed so that the result is planar.
    pub fn disjoint_union(n: usize, parts: &[(PlabicGraph, Vec<usize>)]) -> Result<PlabicGraph> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut rotation = Vec::new();
        for (g, labels) in parts {
            if labels.len() != g.n() {
                return invalid("relabelling must cover every boundary vertex of the part");
            }
            let voff = vertices.len();
            let eoff = edges.len();
            vertices.extend(g.vertices.iter().map(|&kind| match kind {
                Vertex::Boundary(j) => Vertex::Boundary(labels[j - 1]),
                other => other,
            }));
            edges.extend(g.edges.iter().map(|&[x, y]| [x + voff, y + voff]));
            rotation.extend(g.rotation.iter().map(|r| r.iter().map(|&e| e + eoff).collect::<Vec<_>>()));
        }
        PlabicGraph::new(n, vertices, edges, rotation)
    }
}

fn renumber(len: usize, dead: &[usize]) -> Vec<usize> {
    let mut map = vec![0; len];
    let mut next = 0;
    for (x, slot) in map.iter_mut().enumerate() {
        if dead.contains(&x) {
            *slot = usize::MAX;
        } else {
            *slot = next;
            next += 1;
        }
    }
    map
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A strand, named by the boundary vertex where it ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub id: usize,
    pub start: usize,
    /// Half-edges in travel order.
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandTrace {
    /// `strands[i - 1]` ends at boundary vertex `i`.
    pub strands: Vec<Strand>,
    /// Closed strands that never reach the boundary.
    pub loops: Vec<Vec<usize>>,
    pub permutation: DecoratedPermutation,
}

/// Outcome of [`PlabicGraph::check_reduced`]. Witnesses name original vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Reduced,
    /// A strand that closes up without touching the boundary.
    ClosedLoop {
        vertices: Vec<usize>,
    },
    /// A strand crossing itself on the edge between the two vertices, or
    /// returning to its start without being a lollipop.
    SelfCrossing {
        strand: usize,
        at: [usize; 2],
    },
    /// Two strands whose common crossings occur in the same order along both.
    BadDoubleCrossing {
        strands: [usize; 2],
        at: [[usize; 2]; 2],
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Reduced => f.write_str("reduced"),
            Verdict::ClosedLoop { vertices } => write!(f, "closed strand through vertices {vertices:?}"),
            Verdict::SelfCrossing { strand, at } => {
                write!(f, "strand {strand} crosses itself at edge {}-{}", at[0], at[1])
            }
            Verdict::BadDoubleCrossing { strands, at } => write!(
                f,
                "strands {} and {} cross at edges {}-{} and {}-{} in the same order",
                strands[0], strands[1], at[0][0], at[0][1], at[1][0], at[1][1]
            ),
        }
    }
}

/// A face inside the disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub label: Subset,
    /// Vertices around the face, counterclockwise.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLabels {
    pub k: usize,
    pub faces: Vec<Face>,
    /// `boundary_faces[i - 1]` indexes the face between boundary vertices `i - 1` and `i`.
    pub boundary_faces: Vec<usize>,
    /// The two faces on either side of each edge, left of `x -> y` first.
    pub edge_faces: Vec<[usize; 2]>,
}

impl FaceLabels {
    /// Labels in colex order.
    pub fn sorted_labels(&self) -> Vec<Subset> {
        let mut v: Vec<Subset> = self.faces.iter().map(|f| f.label).collect();
        v.sort_unstable();
        v
    }

    /// Labels of the boundary faces, `I_1` first.
    pub fn necklace(&self) -> Vec<Subset> {
        self.boundary_faces.iter().map(|&f| self.faces[f].label).collect()
    }
}

/// A local move on a plabic graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// M1: recolour an alternating square of trivalent vertices.
    Square { vertices: [usize; 4] },
    /// M2: contract an edge between two internal vertices of one colour.
    Contract { edge: usize },
    /// M2 inverse: move `count` consecutive edges of `vertex`, starting at
    /// rotation position `start`, onto a new vertex of the same colour.
    Expand { vertex: usize, start: usize, count: usize },
    /// M3: subdivide an edge with a degree-two vertex.
    Insert { edge: usize, color: Color },
    /// M3 inverse: remove a degree-two internal vertex.
    Remove { vertex: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    M1,
    M2,
    M3,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Square { .. } => MoveKind::M1,
            Move::Contract { .. } | Move::Expand { .. } => MoveKind::M2,
            Move::Insert { .. } | Move::Remove { .. } => MoveKind::M3,
        }
    }
}

/// Builder used by tests and fixtures: vertices in order, edges as index
/// pairs, and each rotation given by neighbour vertex (no parallel edges).
pub fn from_neighbour_rotation(n: usize, vertices: Vec<Vertex>, neighbours: &[Vec<usize>]) -> Result<PlabicGraph> {
    let mut edges: Vec<[usize; 2]> = Vec::new();
    let mut index = BTreeMap::new();
    for (v, ns) in neighbours.iter().enumerate() {
        for &w in ns {
            let key = (v.min(w), v.max(w));
            if let std::collections::btree_map::Entry::Vacant(slot) = index.entry(key) {
                slot.insert(edges.len());
                edges.push([key.0, key.1]);
            }
        }
    }
    let rotation = neighbours
        .iter()
        .enumerate()
        .map(|(v, ns)| ns.iter().map(|&w| index[&(v.min(w), v.max(w))]).collect())
        .collect();
    PlabicGraph::new(n, vertices, edges, rotation)
}
