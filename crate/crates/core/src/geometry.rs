//! Exact planar geometry over integer coordinates.
//!
//! The default polygon places `v_1, …, v_n` clockwise on the unit circle at
//! rational points `((1 - t²)/(1 + t²), 2t/(1 + t²))`. The tangents `t` are
//! chosen so that every point has the common denominator
//! [`POLYGON_SCALE`] `= 5·13·17·29·37·41`; coordinates are stored as integer
//! numerators over that scale, so sums of polygon vertices stay integral and
//! every predicate below is exact `i128` arithmetic.

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Common denominator of the default polygon. It is a product of distinct
/// primes `≡ 1 (mod 4)`, so the circle of this radius carries 2916 lattice points.
pub const POLYGON_SCALE: i128 = 5 * 13 * 17 * 29 * 37 * 41;

/// Version tag of the default polygon, bumped if the construction ever changes.
pub const POLYGON_VERSION: &str = "circle-48612265-v1";

/// A point with integer coordinates (numerators over a fixed scale).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: i128,
    pub y: i128,
}

impl std::ops::Add for Point {
    type Output = Point;

    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub fn new(x: i128, y: i128) -> Self {
        Point { x, y }
    }

    pub fn cross(self, o: Point) -> i128 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Point) -> i128 {
        self.x * o.x + self.y * o.y
    }
}

/// A reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.abs(), den.abs()).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Rational { num: s * num / g, den: s * den / g }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(p - o) × (q - o)`: positive for a counterclockwise turn.
pub fn orient(o: Point, p: Point, q: Point) -> i128 {
    (p - o).cross(q - o)
}

fn lattice_circle() -> &'static [Point] {
    static POINTS: OnceLock<Vec<Point>> = OnceLock::new();
    POINTS.get_or_init(|| {
        // Gaussian factors of the primes dividing the scale.
        let factors: [(i128, i128); 6] = [(1, 2), (2, 3), (1, 4), (2, 5), (1, 6), (4, 5)];
        let mul = |a: (i128, i128), b: (i128, i128)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let mut acc = vec![(1i128, 0i128)];
        for &(a, b) in &factors {
            let (p, q) = ((a, b), (a, -b));
            let choices = [mul(p, p), mul(p, q), mul(q, q)];
            acc = acc.iter().flat_map(|&z| choices.iter().map(move |&c| mul(z, c))).collect();
        }
        let mut pts: Vec<Point> = acc
            .into_iter()
            .flat_map(|(x, y)| [(x, y), (-y, x), (-x, -y), (y, -x)])
            .map(|(x, y)| Point::new(x, y))
            .collect();
        pts.sort();
        pts.dedup();
        debug_assert!(pts.iter().all(|p| p.dot(*p) == POLYGON_SCALE * POLYGON_SCALE));
        pts
    })
}

/// The default strictly convex polygon: `v_i` is the lattice point of the
/// circle of radius [`POLYGON_SCALE`] closest in angle to
/// `π/2 - 2π(i - 1)/n`, so the vertices run clockwise from the top.
pub fn default_polygon(n: usize) -> Result<Vec<Point>> {
    if n == 0 || n > crate::cyclic::MAX_GROUND as usize {
        return invalid(format!("polygon size {n} out of range"));
    }
    let pts = lattice_circle();
    let tau = std::f64::consts::TAU;
    let polygon: Vec<Point> = (0..n)
        .map(|i| {
            let target = std::f64::consts::FRAC_PI_2 - tau * i as f64 / n as f64;
            let dist = |p: &Point| {
                let d = ((p.y as f64).atan2(p.x as f64) - target).rem_euclid(tau);
                d.min(tau - d)
            };
            *pts.iter()
                .min_by(|a, b| dist(a).partial_cmp(&dist(b)).unwrap_or(Ordering::Equal).then(a.cmp(b)))
                .expect("lattice circle is nonempty")
        })
        .collect();
    Ok(polygon)
}

/// Checks that `poly` is strictly convex with vertices in clockwise order.
pub fn is_strictly_convex_clockwise(poly: &[Point]) -> bool {
    let n = poly.len();
    if n < 3 {
        let mut v = poly.to_vec();
        v.sort();
        v.dedup();
        return v.len() == n;
    }
    let turns_right = (0..n).all(|i| orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < 0);
    // All right turns and one full revolution around an interior point. The
    // polygon is tripled so the barycentre of its first triangle is a lattice point.
    let tripled: Vec<Point> = poly.iter().map(|q| Point::new(3 * q.x, 3 * q.y)).collect();
    let inner = poly[0] + poly[1] + poly[2];
    turns_right && winding_clockwise(&tripled, inner) == Some(1)
}

/// Twice the signed area, counted positive for clockwise boundaries.
pub fn area2_clockwise(poly: &[Point]) -> i128 {
    let n = poly.len();
    -(0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum::<i128>()
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0 && (p - a).dot(p - b) <= 0
}

/// Winding number of the closed polyline around `p`, counting clockwise
/// turns as positive. `None` when `p` lies on the curve.
pub fn winding_clockwise(curve: &[Point], p: Point) -> Option<i64> {
    let n = curve.len();
    let mut w = 0i64;
    for i in 0..n {
        let (a, b) = (curve[i], curve[(i + 1) % n]);
        if on_segment(p, a, b) {
            return None;
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    Some(-w)
}

/// A closed convex cell: a point, a segment or a polygon, clockwise.
#[derive(Debug, Clone, Copy)]
pub enum Cell<'a> {
    Point(Point),
    Segment(Point, Point),
    Polygon(&'a [Point]),
}

impl Cell<'_> {
    fn vertices(&self) -> Vec<Point> {
        match *self {
            Cell::Point(p) => vec![p],
            Cell::Segment(a, b) => vec![a, b],
            Cell::Polygon(v) => v.to_vec(),
        }
    }

    /// Directions normal to the sides (candidate separating axes).
    fn axes(&self) -> Vec<Point> {
        let v = self.vertices();
        let m = v.len();
        if m < 2 {
            return Vec::new();
        }
        let sides = if m == 2 { 1 } else { m };
        (0..sides)
            .map(|i| {
                let d = v[(i + 1) % m] - v[i];
                Point::new(-d.y, d.x)
            })
            .collect()
    }
}

/// Whether the relative interiors of two convex cells intersect.
///
/// Relative interiors are disjoint exactly when a line properly separates the
/// closed cells (weakly, and not with both inside the line). In the plane such
/// a line can be found among the side normals, the directions of segments, and
/// for lower-dimensional cells the lines through pairs of vertices.
pub fn interiors_overlap(a: Cell<'_>, b: Cell<'_>) -> bool {
    let (va, vb) = (a.vertices(), b.vertices());
    let mut axes = a.axes();
    axes.extend(b.axes());
    for cell in [&a, &b] {
        if let Cell::Segment(s, t) = *cell {
            axes.push(t - s);
        }
    }
    if !matches!((a, b), (Cell::Polygon(_), Cell::Polygon(_))) {
        for &p in &va {
            for &q in &vb {
                let d = q - p;
                axes.push(d);
                axes.push(Point::new(-d.y, d.x));
            }
        }
    }
    !axes.iter().filter(|d| d.x != 0 || d.y != 0).any(|&axis| {
        let (lo_a, hi_a) = project(&va, axis);
        let (lo_b, hi_b) = project(&vb, axis);
        let weak = hi_a <= lo_b || hi_b <= lo_a;
        let both_on_line = lo_a == hi_a && lo_b == hi_b && lo_a == lo_b;
        weak && !both_on_line
    })
}

fn project(v: &[Point], axis: Point) -> (i128, i128) {
    let vals = v.iter().map(|p| p.dot(axis));
    let lo = vals.clone().min().unwrap();
    let hi = vals.max().unwrap();
    (lo, hi)
}
