//! Versioned JSON documents for collections, necklaces, permutations, plabic
//! graphs, embedded tilings and verification reports.
//!
//! Subsets are written as ascending arrays of 1-based elements. Canonical
//! text is pretty-printed JSON with a trailing newline, and parsing a
//! canonical text then serializing it reproduces the text exactly.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::collection::{MutationSite, WSCollection};
use crate::cyclic::{Ground, Subset};
use crate::error::{Error, Result};
use crate::geometry::{is_strictly_convex_clockwise, Point, Rational, POLYGON_SCALE, POLYGON_VERSION};
use crate::plabic::{Color, PlabicGraph, Vertex};
use crate::positroid::{DecoratedPermutation, FixedColor, GrassmannNecklace};
use crate::tiling::{build_tiling, embed_tiling, EmbeddedTiling};
use crate::verify::SuiteReport;

/// Version written into, and required from, every document.
pub const FORMAT_VERSION: &str = "1";

/// A parsed document of any kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Collection(WSCollection),
    Necklace(GrassmannNecklace),
    Permutation(DecoratedPermutation),
    PlabicGraph(PlabicGraph),
    Tiling(EmbeddedTiling),
    Report(SuiteReport),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Collection(_) => "collection",
            Document::Necklace(_) => "necklace",
            Document::Permutation(_) => "permutation",
            Document::PlabicGraph(_) => "plabic-graph",
            Document::Tiling(_) => "tiling",
            Document::Report(_) => "report",
        }
    }

    pub fn to_value(&self) -> Value {
        let v = match self {
            Document::Collection(c) => serde_json::to_value(collection_raw(c)),
            Document::Necklace(nk) => serde_json::to_value(necklace_raw(nk)),
            Document::Permutation(p) => serde_json::to_value(permutation_raw(p)),
            Document::PlabicGraph(g) => serde_json::to_value(graph_raw(g)),
            Document::Tiling(t) => serde_json::to_value(tiling_raw(t)),
            Document::Report(r) => serde_json::to_value(ReportRaw {
                kind: "report".into(),
                version: FORMAT_VERSION.into(),
                report: r.clone(),
            }),
        };
        v.expect("documents serialize to JSON")
    }

    /// Canonical text.
    pub fn to_text(&self) -> String {
        to_canonical_text(&self.to_value())
    }
}

/// Line width below which arrays and objects without nested objects stay on one line.
const INLINE_WIDTH: usize = 72;

/// Two-space indented JSON in which short arrays stay on one line, with a
/// trailing newline. Keys keep their insertion order.
pub fn to_canonical_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => {
            let fields: Vec<String> =
                map.iter().map(|(k, x)| format!("{}: {}", Value::String(k.clone()), inline(x))).collect();
            format!("{{{}}}", fields.join(", "))
        }
        other => other.to_string(),
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let compact = inline(v);
    let nested = match v {
        Value::Array(items) => {
            items.iter().any(|x| x.is_object() || x.as_array().is_some_and(|a| a.iter().any(Value::is_object)))
        }
        Value::Object(map) => indent == 0 || map.values().any(|x| x.is_object() || x.is_array()),
        _ => false,
    };
    let empty = v.as_array().is_some_and(Vec::is_empty) || v.as_object().is_some_and(|m| m.is_empty());
    if empty || (!nested && indent + compact.len() <= INLINE_WIDTH) {
        out.push_str(&compact);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => out.push_str(&compact),
    }
}

macro_rules! document_from {
    ($($t:ty => $variant:ident),*) => {
        $(impl From<$t> for Document {
            fn from(x: $t) -> Self {
                Document::$variant(x)
            }
        })*
    };
}

document_from!(
    WSCollection => Collection,
    GrassmannNecklace => Necklace,
    DecoratedPermutation => Permutation,
    PlabicGraph => PlabicGraph,
    EmbeddedTiling => Tiling,
    SuiteReport => Report
);

/// Canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    doc.to_text()
}

/// Parses a document of any kind from JSON text.
pub fn parse(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    parse_value(value)
}

/// Parses a document from an already decoded JSON value.
pub fn parse_value(value: Value) -> Result<Document> {
    let Some(obj) = value.as_object() else {
        return Err(perr("", "a document must be a JSON object"));
    };
    let kind = match obj.get("kind") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(perr("kind", "must be a string")),
        None => return Err(perr("kind", "missing field")),
    };
    match obj.get("version") {
        Some(Value::String(v)) if v == FORMAT_VERSION => {}
        Some(Value::String(v)) => {
            return Err(perr("version", format!("unsupported version {v:?}, expected {FORMAT_VERSION:?}")))
        }
        Some(_) => return Err(perr("version", "must be a string")),
        None => return Err(perr("version", "missing field")),
    }
    match kind.as_str() {
        "collection" => collection_from_raw(&typed(value)?).map(Document::Collection),
        "necklace" => necklace_from_raw(&typed(value)?).map(Document::Necklace),
        "permutation" => permutation_from_raw(&typed(value)?).map(Document::Permutation),
        "plabic-graph" => graph_from_raw(&typed(value)?).map(Document::PlabicGraph),
        "tiling" => tiling_from_raw(&typed(value)?).map(Document::Tiling),
        "report" => typed::<ReportRaw>(value).map(|r| Document::Report(r.report)),
        other => Err(perr("kind", format!("unknown document kind {other:?}"))),
    }
}

/// Parses a document and insists on one kind.
pub fn parse_collection(text: &str) -> Result<WSCollection> {
    match parse(text)? {
        Document::Collection(c) => Ok(c),
        other => Err(wrong_kind("collection", &other)),
    }
}

pub fn parse_graph(text: &str) -> Result<PlabicGraph> {
    match parse(text)? {
        Document::PlabicGraph(g) => Ok(g),
        other => Err(wrong_kind("plabic-graph", &other)),
    }
}

fn wrong_kind(want: &str, got: &Document) -> Error {
    perr("kind", format!("expected a {want} document, got {}", got.kind()))
}

/// An unanchored collection gets the uniform necklace, whose entries are
/// weakly separated from every `k`-subset and are added if missing.
pub fn with_default_anchor(c: &WSCollection) -> Result<WSCollection> {
    if c.anchor().is_some() {
        return Ok(c.clone());
    }
    let nk = GrassmannNecklace::uniform(c.n(), c.k())?;
    let mut sets = c.sets().to_vec();
    sets.extend(nk.entries().iter().copied().filter(|e| !c.contains(*e)));
    sets.sort_unstable();
    sets.dedup();
    WSCollection::new(c.ground(), c.k(), sets, Some(nk))
}

fn perr(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn at(location: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::InvalidInput(m) | Error::Embedding(m) => perr(location, m),
        other => other,
    }
}

fn typed<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let location = e.path().to_string();
        perr(if location == "." { String::new() } else { location }, e.into_inner().to_string())
    })
}

fn subset_raw(s: Subset) -> Vec<usize> {
    s.to_vec()
}

fn subset_from(g: Ground, elements: &[usize], location: &str) -> Result<Subset> {
    let mut bits = 0u64;
    for &a in elements {
        if !g.contains(a) {
            return Err(perr(location, format!("{a} is outside 1..={}", g.n())));
        }
        if bits & (1 << (a - 1)) != 0 {
            return Err(perr(location, format!("{a} is listed twice")));
        }
        bits |= 1 << (a - 1);
    }
    Ok(Subset(bits))
}

fn ground_from(n: usize) -> Result<Ground> {
    Ground::new(n).map_err(at("n"))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnchorRaw {
    necklace: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CollectionRaw {
    kind: String,
    version: String,
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anchor: Option<AnchorRaw>,
}

fn collection_raw(c: &WSCollection) -> CollectionRaw {
    CollectionRaw {
        kind: "collection".into(),
        version: FORMAT_VERSION.into(),
        n: c.n(),
        k: c.k(),
        sets: c.sets().iter().map(|&s| subset_raw(s)).collect(),
        anchor: c.anchor().map(|nk| AnchorRaw { necklace: nk.entries().iter().map(|&s| subset_raw(s)).collect() }),
    }
}

fn necklace_entries(g: Ground, raw: &[Vec<usize>], location: &str) -> Result<GrassmannNecklace> {
    if raw.len() != g.n() {
        return Err(perr(location, format!("a necklace on n = {} needs {} entries, got {}", g.n(), g.n(), raw.len())));
    }
    let entries = raw
        .iter()
        .enumerate()
        .map(|(i, e)| subset_from(g, e, &format!("{location}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    GrassmannNecklace::new(entries).map_err(at(location))
}

fn collection_from_raw(raw: &CollectionRaw) -> Result<WSCollection> {
    let g = ground_from(raw.n)?;
    let mut sets = Vec::with_capacity(raw.sets.len());
    for (i, s) in raw.sets.iter().enumerate() {
        let loc = format!("sets[{i}]");
        let s = subset_from(g, s, &loc)?;
        if s.len() != raw.k {
            return Err(perr(loc, format!("{s} has {} elements, expected k = {}", s.len(), raw.k)));
        }
        sets.push(s);
    }
    let anchor = match &raw.anchor {
        Some(a) => Some(necklace_entries(g, &a.necklace, "anchor.necklace")?),
        None => None,
    };
    if raw.k > raw.n {
        return Err(perr("k", format!("k = {} exceeds n = {}", raw.k, raw.n)));
    }
    WSCollection::new(g, raw.k, sets, anchor).map_err(at("sets"))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NecklaceRaw {
    kind: String,
    version: String,
    n: usize,
    k: usize,
    necklace: Vec<Vec<usize>>,
}

fn necklace_raw(nk: &GrassmannNecklace) -> NecklaceRaw {
    NecklaceRaw {
        kind: "necklace".into(),
        version: FORMAT_VERSION.into(),
        n: nk.n(),
        k: nk.k(),
        necklace: nk.entries().iter().map(|&s| subset_raw(s)).collect(),
    }
}

fn necklace_from_raw(raw: &NecklaceRaw) -> Result<GrassmannNecklace> {
    let g = ground_from(raw.n)?;
    let nk = necklace_entries(g, &raw.necklace, "necklace")?;
    if nk.k() != raw.k {
        return Err(perr("k", format!("entries have {} elements but k = {}", nk.k(), raw.k)));
    }
    Ok(nk)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PermutationRaw {
    kind: String,
    version: String,
    n: usize,
    perm: Vec<usize>,
    colors: BTreeMap<usize, i64>,
}

fn permutation_raw(p: &DecoratedPermutation) -> PermutationRaw {
    PermutationRaw {
        kind: "permutation".into(),
        version: FORMAT_VERSION.into(),
        n: p.n(),
        perm: p.perm().to_vec(),
        colors: p.colors().into_iter().map(|(i, c)| (i, c.sign() as i64)).collect(),
    }
}

fn permutation_from_raw(raw: &PermutationRaw) -> Result<DecoratedPermutation> {
    if raw.perm.len() != raw.n {
        return Err(perr("perm", format!("expected {} entries, got {}", raw.n, raw.perm.len())));
    }
    let mut colors = BTreeMap::new();
    for (&i, &sign) in &raw.colors {
        colors.insert(i, FixedColor::from_sign(sign).map_err(at(&format!("colors.{i}")))?);
    }
    DecoratedPermutation::new(raw.perm.clone(), &colors).map_err(at("perm"))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRaw {
    id: u64,
    /// Absent on boundary vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    color: Option<Color>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRaw {
    kind: String,
    version: String,
    n: usize,
    vertices: Vec<VertexRaw>,
    /// Vertex ids of boundary vertices `1..=n`.
    boundary: Vec<u64>,
    edges: Vec<[u64; 2]>,
    /// Edge indices around each vertex, clockwise.
    rotation: BTreeMap<u64, Vec<usize>>,
}

fn graph_raw(g: &PlabicGraph) -> GraphRaw {
    let vertices =
        g.vertices().iter().enumerate().map(|(v, kind)| VertexRaw { id: v as u64, color: kind.color() }).collect();
    GraphRaw {
        kind: "plabic-graph".into(),
        version: FORMAT_VERSION.into(),
        n: g.n(),
        vertices,
        boundary: (1..=g.n()).map(|i| g.boundary_vertex(i) as u64).collect(),
        edges: g.edges().iter().map(|&[x, y]| [x as u64, y as u64]).collect(),
        rotation: (0..g.vertices().len()).map(|v| (v as u64, g.rotation(v).to_vec())).collect(),
    }
}

fn graph_from_raw(raw: &GraphRaw) -> Result<PlabicGraph> {
    let mut index = BTreeMap::new();
    for (pos, v) in raw.vertices.iter().enumerate() {
        if index.insert(v.id, pos).is_some() {
            return Err(perr(format!("vertices[{pos}].id"), format!("vertex id {} is used twice", v.id)));
        }
    }
    if raw.boundary.len() != raw.n {
        return Err(perr("boundary", format!("expected {} boundary vertices, got {}", raw.n, raw.boundary.len())));
    }
    let mut label = vec![None; raw.vertices.len()];
    for (i, id) in raw.boundary.iter().enumerate() {
        let loc = format!("boundary[{i}]");
        let &pos = index.get(id).ok_or_else(|| perr(&loc, format!("unknown vertex id {id}")))?;
        if label[pos].is_some() {
            return Err(perr(loc, format!("vertex {id} is listed twice")));
        }
        label[pos] = Some(i + 1);
    }
    let mut vertices = Vec::with_capacity(raw.vertices.len());
    for (pos, v) in raw.vertices.iter().enumerate() {
        let loc = format!("vertices[{pos}]");
        vertices.push(match (label[pos], v.color) {
            (Some(i), None) => Vertex::Boundary(i),
            (None, Some(c)) => Vertex::Internal(c),
            (Some(_), Some(_)) => return Err(perr(loc, format!("boundary vertex {} must not have a colour", v.id))),
            (None, None) => return Err(perr(loc, format!("internal vertex {} needs a colour", v.id))),
        });
    }
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (e, [x, y]) in raw.edges.iter().enumerate() {
        let lookup = |id: &u64| {
            index.get(id).copied().ok_or_else(|| perr(format!("edges[{e}]"), format!("unknown vertex id {id}")))
        };
        edges.push([lookup(x)?, lookup(y)?]);
    }
    let mut rotation = vec![Vec::new(); raw.vertices.len()];
    for (id, rot) in &raw.rotation {
        let &pos = index.get(id).ok_or_else(|| perr(format!("rotation.{id}"), "unknown vertex id"))?;
        rotation[pos] = rot.clone();
    }
    PlabicGraph::new(raw.n, vertices, edges, rotation).map_err(at(""))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonRaw {
    version: String,
    scale: i128,
    /// Vertex `v_i` is `points[i - 1] / scale`.
    points: Vec<[i128; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceRaw {
    color: Color,
    clique: Vec<usize>,
    cycle: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TilingRaw {
    kind: String,
    version: String,
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anchor: Option<AnchorRaw>,
    polygon: PolygonRaw,
    edges: Vec<[Vec<usize>; 2]>,
    faces: Vec<FaceRaw>,
    /// `x_num, x_den, y_num, y_den` in lowest terms, keyed by the set label.
    coords: BTreeMap<String, [i128; 4]>,
}

fn tiling_raw(t: &EmbeddedTiling) -> TilingRaw {
    let c = collection_raw(t.tiling().collection());
    let default = crate::geometry::default_polygon(c.n).ok();
    let version = if default.as_deref() == Some(t.polygon()) { POLYGON_VERSION } else { "custom" };
    TilingRaw {
        kind: "tiling".into(),
        version: FORMAT_VERSION.into(),
        n: c.n,
        k: c.k,
        sets: c.sets,
        anchor: c.anchor,
        polygon: PolygonRaw {
            version: version.into(),
            scale: POLYGON_SCALE,
            points: t.polygon().iter().map(|p| [p.x, p.y]).collect(),
        },
        edges: t.tiling().edges().iter().map(|&[a, b]| [subset_raw(a), subset_raw(b)]).collect(),
        faces: t
            .tiling()
            .faces()
            .iter()
            .map(|f| FaceRaw {
                color: f.color,
                clique: subset_raw(f.clique),
                cycle: f.cycle.iter().map(|&s| subset_raw(s)).collect(),
            })
            .collect(),
        coords: t.tiling().vertices().iter().zip(t.coords()).map(|(s, &p)| (s.label(), exact_coords(p))).collect(),
    }
}

/// A point over [`POLYGON_SCALE`] as two reduced fractions.
pub fn exact_coords(p: Point) -> [i128; 4] {
    let x = Rational::new(p.x, POLYGON_SCALE);
    let y = Rational::new(p.y, POLYGON_SCALE);
    [x.num, x.den, y.num, y.den]
}

fn tiling_from_raw(raw: &TilingRaw) -> Result<EmbeddedTiling> {
    let c = collection_from_raw(&CollectionRaw {
        kind: "collection".into(),
        version: FORMAT_VERSION.into(),
        n: raw.n,
        k: raw.k,
        sets: raw.sets.clone(),
        anchor: raw.anchor.as_ref().map(|a| AnchorRaw { necklace: a.necklace.clone() }),
    })?;
    if raw.polygon.scale != POLYGON_SCALE {
        return Err(perr("polygon.scale", format!("expected {POLYGON_SCALE}")));
    }
    let polygon: Vec<Point> = raw.polygon.points.iter().map(|&[x, y]| Point::new(x, y)).collect();
    if polygon.len() != raw.n || !is_strictly_convex_clockwise(&polygon) {
        return Err(perr("polygon.points", format!("not a strictly convex clockwise {}-gon", raw.n)));
    }
    let t = embed_tiling(&build_tiling(&c), Some(&polygon)).map_err(at("polygon"))?;
    let canonical = tiling_raw(&t);
    if canonical.polygon.version != raw.polygon.version {
        return Err(perr("polygon.version", format!("expected {:?}", canonical.polygon.version)));
    }
    if canonical.edges != raw.edges {
        return Err(perr("edges", "do not match the tiling of the sets"));
    }
    if serde_json::to_value(&canonical.faces).ok() != serde_json::to_value(&raw.faces).ok() {
        return Err(perr("faces", "do not match the tiling of the sets"));
    }
    for (label, xy) in &canonical.coords {
        match raw.coords.get(label) {
            Some(given) if given == xy => {}
            Some(_) => return Err(perr(format!("coords.{label}"), format!("expected {xy:?}"))),
            None => return Err(perr(format!("coords.{label}"), "missing")),
        }
    }
    if let Some(extra) = raw.coords.keys().find(|l| !canonical.coords.contains_key(*l)) {
        return Err(perr(format!("coords.{extra}"), "not a member of the collection"));
    }
    Ok(t)
}

#[derive(Serialize, Deserialize)]
struct ReportRaw {
    kind: String,
    version: String,
    #[serde(flatten)]
    report: SuiteReport,
}

/// Wire form of a mutation site, with the sets it swaps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteDoc {
    pub s: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    #[serde(default, skip_deserializing)]
    pub removed: Vec<usize>,
    #[serde(default, skip_deserializing)]
    pub added: Vec<usize>,
}

impl SiteDoc {
    pub fn from_site(m: &MutationSite) -> Self {
        SiteDoc {
            s: subset_raw(m.s),
            a: m.a,
            b: m.b,
            c: m.c,
            d: m.d,
            removed: subset_raw(m.removed()),
            added: subset_raw(m.added()),
        }
    }

    /// Canonicalizes the quadruple; `ground` checks the elements.
    pub fn to_site(&self, ground: Ground) -> Result<MutationSite> {
        let s = subset_from(ground, &self.s, "site.s")?;
        for x in [self.a, self.b, self.c, self.d] {
            if !ground.contains(x) {
                return Err(perr("site", format!("{x} is outside 1..={}", ground.n())));
            }
        }
        MutationSite::new(s, self.a, self.b, self.c, self.d).map_err(at("site"))
    }
}
