//! Planar primitives for the Euclidean and hyperbolic planes.
//!
//! Hyperbolic points are stored in Poincaré-disk coordinates; the Klein model
//! is used transiently wherever straight-line (chord) geometry is needed,
//! because it maps hyperbolic convexity to Euclidean convexity. All predicates
//! are plain `f64` arithmetic: the algorithms built on top only need
//! approximate distances, not exact algebraic decisions.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// A point of the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointE2 {
    pub x: f64,
    pub y: f64,
}

impl PointE2 {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Self { x, y }
    }
}

/// A point of the hyperbolic plane in Poincaré-disk coordinates.
///
/// The constructor enforces `u² + v² < 1`, so a value of this type is always
/// a valid hyperbolic point and the distance functions cannot fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointH2 {
    u: f64,
    v: f64,
}

impl PointH2 {
    pub const ORIGIN: PointH2 = PointH2 { u: 0.0, v: 0.0 };

    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::NonFiniteCoordinate);
        }
        if u * u + v * v >= 1.0 {
            return Err(Error::OutsideDisk { u, v });
        }
        Ok(Self { u, v })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    fn as_complex(&self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }
}

/// A polygon given by its vertex cycle.
///
/// Values produced by [`convex_hull`] list the vertices in counterclockwise
/// order and are strictly convex; one- and two-vertex polygons stand for the
/// degenerate hulls of singletons and collinear sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<PointE2>,
}

impl Polygon {
    pub fn vertices(&self) -> &[PointE2] {
        &self.vertices
    }

    /// Closed traversal length; a two-vertex polygon counts its segment twice.
    pub fn perimeter(&self) -> f64 {
        polyline_closed_length(&self.vertices)
    }
}

pub fn euclidean_distance(a: PointE2, b: PointE2) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Poincaré-disk distance `arcosh(1 + 2|a-b|² / ((1-|a|²)(1-|b|²)))`.
pub fn hyperbolic_distance(a: PointH2, b: PointH2) -> f64 {
    let dx = a.u - b.u;
    let dy = a.v - b.v;
    let num = 2.0 * (dx * dx + dy * dy);
    let den = (1.0 - (a.u * a.u + a.v * a.v)) * (1.0 - (b.u * b.u + b.v * b.v));
    (1.0 + num / den).acosh()
}

/// Disk automorphism sending `center` to the origin: `z ↦ (z - c)/(1 - c̄ z)`.
fn mobius_to_origin(z: Complex64, c: Complex64) -> Complex64 {
    (z - c) / (Complex64::new(1.0, 0.0) - c.conj() * z)
}

fn mobius_from_origin(w: Complex64, c: Complex64) -> Complex64 {
    (w + c) / (Complex64::new(1.0, 0.0) + c.conj() * w)
}

/// Map a hyperbolic point into the Klein model of the disk re-centered at
/// `center`. The translation is a hyperbolic isometry, so the image has
/// bounded distortion near the origin and hyperbolic lines through the mapped
/// points are straight chords.
pub fn klein_from_poincare(p: PointH2, center: PointH2) -> PointE2 {
    let w = mobius_to_origin(p.as_complex(), center.as_complex());
    let k = 2.0 * w / (1.0 + w.norm_sqr());
    PointE2::new(k.re, k.im)
}

/// Inverse of [`klein_from_poincare`]; fails if `q` is not inside the unit disk.
pub fn poincare_from_klein(q: PointE2, center: PointH2) -> Result<PointH2> {
    let norm_sqr = q.x * q.x + q.y * q.y;
    if !norm_sqr.is_finite() || norm_sqr >= 1.0 {
        return Err(Error::OutsideDisk { u: q.x, v: q.y });
    }
    let k = Complex64::new(q.x, q.y);
    let w = k / (1.0 + (1.0 - norm_sqr).sqrt());
    let z = mobius_from_origin(w, center.as_complex());
    PointH2::new(z.re, z.im)
}

/// Orientation predicate: twice the signed area of triangle `a b c`.
/// Positive for a counterclockwise turn.
pub fn orient(a: PointE2, b: PointE2, c: PointE2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Indices of the convex hull vertices of `points` in counterclockwise order.
///
/// Duplicate coordinates are collapsed to their first occurrence; collinear
/// input degenerates to the two extreme points, a single site to one index.
pub fn hull_indices(points: &[PointE2]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        points[i]
            .x
            .total_cmp(&points[j].x)
            .then(points[i].y.total_cmp(&points[j].y))
            .then(i.cmp(&j))
    });
    order.dedup_by(|&mut i, &mut j| points[i] == points[j]);

    if order.len() <= 2 {
        return Ok(order);
    }

    // Andrew's monotone chain with strict turns, so the hull is strictly convex.
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let it: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in it {
            while hull.len() >= start + 2 {
                let b = hull[hull.len() - 1];
                let a = hull[hull.len() - 2];
                if orient(points[a], points[b], points[i]) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull.pop(); // endpoint repeats as the start of the other chain
    }
    if hull.len() < 2 {
        // Fully collinear input collapses both chains; keep the two extremes.
        hull = vec![order[0], order[order.len() - 1]];
    }
    Ok(hull)
}

pub fn convex_hull(points: &[PointE2]) -> Result<Polygon> {
    let idx = hull_indices(points)?;
    Ok(Polygon {
        vertices: idx.into_iter().map(|i| points[i]).collect(),
    })
}

fn polyline_closed_length(vertices: &[PointE2]) -> f64 {
    if vertices.len() < 2 {
        return 0.0;
    }
    let mut len = 0.0;
    for i in 0..vertices.len() {
        let j = (i + 1) % vertices.len();
        len += euclidean_distance(vertices[i], vertices[j]);
    }
    len
}

/// Perimeter of the convex hull: 0 for a singleton, twice the segment for a
/// degenerate (collinear) hull.
pub fn hull_perimeter(points: &[PointE2]) -> Result<f64> {
    Ok(convex_hull(points)?.perimeter())
}

/// Hyperbolic convex hull perimeter, computed in the Klein model centered at
/// the first point of the set. Any interior center yields the same hull, and
/// centering keeps the chord geometry well conditioned.
pub fn hyperbolic_hull_perimeter(points: &[PointH2]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let center = points[0];
    let images: Vec<PointE2> = points
        .iter()
        .map(|&p| klein_from_poincare(p, center))
        .collect();
    let hull = hull_indices(&images)?;
    if hull.len() < 2 {
        return Ok(0.0);
    }
    // The cyclic sum already walks a two-vertex hull in both directions, so
    // degenerate hulls count their segment twice without a special case.
    let mut len = 0.0;
    for i in 0..hull.len() {
        let j = (i + 1) % hull.len();
        len += hyperbolic_distance(points[hull[i]], points[hull[j]]);
    }
    Ok(len)
}

/// Whether point `p` lies on segment `a b` (closed).
fn on_segment(p: PointE2, a: PointE2, b: PointE2) -> bool {
    orient(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Closed segment intersection test, including touching endpoints and
/// collinear overlap.
pub fn segments_intersect(p1: PointE2, p2: PointE2, q1: PointE2, q2: PointE2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p1, q1, q2))
        || (d2 == 0.0 && on_segment(p2, q1, q2))
        || (d3 == 0.0 && on_segment(q1, p1, p2))
        || (d4 == 0.0 && on_segment(q2, p1, p2))
}

pub fn point_segment_distance(p: PointE2, a: PointE2, b: PointE2) -> f64 {
    let abx = b.x - a.x;
    let aby = b.y - a.y;
    let len2 = abx * abx + aby * aby;
    if len2 == 0.0 {
        return euclidean_distance(p, a);
    }
    let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len2).clamp(0.0, 1.0);
    euclidean_distance(p, PointE2::new(a.x + t * abx, a.y + t * aby))
}

pub fn segment_distance(p1: PointE2, p2: PointE2, q1: PointE2, q2: PointE2) -> f64 {
    if segments_intersect(p1, p2, q1, q2) {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

/// Membership in a convex CCW polygon (closed; tolerance for boundary slop).
pub fn point_in_convex_polygon(p: PointE2, hull: &[PointE2], tol: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => euclidean_distance(p, hull[0]) <= tol,
        2 => point_segment_distance(p, hull[0], hull[1]) <= tol,
        _ => (0..hull.len()).all(|i| {
            let j = (i + 1) % hull.len();
            orient(hull[i], hull[j], p) >= -tol
        }),
    }
}

/// Even-odd test for an arbitrary simple closed polyline. Points on the
/// boundary are not reliably classified; callers keep query points off it.
pub fn point_in_polygon(p: PointE2, polygon: &[PointE2]) -> bool {
    let mut inside = false;
    let n = polygon.len();
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}
