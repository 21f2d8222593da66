//! Exact geometric predicates and constructions.
//!
//! Everything here is computed with rational arithmetic: the sign of a
//! determinant is the sign of the exact value, so ties (collinear points,
//! cocircular points) are detected reliably instead of being noise. All
//! functions are pure; call them from as many threads as you like.

use crate::error::{Error, Result};
use crate::point::{Point, Vector};
use crate::scalar::Scalar;

/// Turn direction of the triple (a, b, c).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// Position of a query point relative to a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CirclePosition {
    Inside,
    Outside,
    On,
}

/// Sign of the cross product (b - a) x (c - a).
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    let det = a.vector_to(b).cross(&a.vector_to(c));
    match det.sign() {
        std::cmp::Ordering::Greater => Orientation::Ccw,
        std::cmp::Ordering::Less => Orientation::Cw,
        std::cmp::Ordering::Equal => Orientation::Collinear,
    }
}

/// Position of `d` relative to the circle through `a`, `b`, `c`.
///
/// The answer does not depend on the order of the three defining points:
/// the determinant is negated when (a, b, c) turns clockwise. `On` means
/// exactly cocircular, which is what makes degenerate Delaunay edges
/// decidable.
pub fn in_circle(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<CirclePosition> {
    let orient = orientation(a, b, c);
    if orient == Orientation::Collinear {
        return Err(Error::CollinearDefiningPoints);
    }

    let col = |p: &Point| {
        let dx = &p.x - &d.x;
        let dy = &p.y - &d.y;
        let m = &dx * &dx + &dy * &dy;
        (dx, dy, m)
    };
    let (ax, ay, am) = col(a);
    let (bx, by, bm) = col(b);
    let (cx, cy, cm) = col(c);

    let det = &ax * (&by * &cm - &bm * &cy) - &ay * (&bx * &cm - &bm * &cx)
        + &am * (&bx * &cy - &by * &cx);
    let det = if orient == Orientation::Cw { -det } else { det };

    Ok(match det.sign() {
        std::cmp::Ordering::Greater => CirclePosition::Inside,
        std::cmp::Ordering::Less => CirclePosition::Outside,
        std::cmp::Ordering::Equal => CirclePosition::On,
    })
}

/// Center of the circle through three non-collinear points, exactly
/// equidistant from all three.
pub fn circumcenter(a: &Point, b: &Point, c: &Point) -> Result<Point> {
    let two = Scalar::from(2);
    let d = &two
        * (&a.x * (&b.y - &c.y) + &b.x * (&c.y - &a.y) + &c.x * (&a.y - &b.y));
    if d.is_zero() {
        return Err(Error::CollinearDefiningPoints);
    }
    let norm = |p: &Point| &p.x * &p.x + &p.y * &p.y;
    let (na, nb, nc) = (norm(a), norm(b), norm(c));
    let ux = (&na * (&b.y - &c.y) + &nb * (&c.y - &a.y) + &nc * (&a.y - &b.y)) / d.clone();
    let uy = (&na * (&c.x - &b.x) + &nb * (&a.x - &c.x) + &nc * (&b.x - &a.x)) / d;
    Ok(Point::new(ux, uy))
}

/// A closed half-plane { (x, y) : a*x + b*y <= c } with (a, b) != (0, 0).
///
/// Constructors canonicalize the representation by dividing through by the
/// absolute value of the first nonzero coefficient of (a, b), so equal
/// half-planes compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfPlane {
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl HalfPlane {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::CoincidentSites);
        }
        let scale = if !a.is_zero() { a.abs() } else { b.abs() };
        Ok(HalfPlane {
            a: a / scale.clone(),
            b: b / scale.clone(),
            c: c / scale,
        })
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    /// Outward normal (a, b); the half-plane lies on the side the normal
    /// points away from.
    pub fn normal(&self) -> Vector {
        Vector::new(self.a.clone(), self.b.clone())
    }

    /// Signed slack a*x + b*y - c: negative strictly inside, zero on the
    /// boundary, positive strictly outside.
    pub fn eval(&self, p: &Point) -> Scalar {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        !self.eval(p).is_positive()
    }

    pub fn contains_strict(&self, p: &Point) -> bool {
        self.eval(p).is_negative()
    }

    /// Intersection point of the two boundary lines, if they are not
    /// parallel.
    pub fn boundary_intersection(&self, other: &HalfPlane) -> Option<Point> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &self.b * &other.c) / det.clone();
        let y = (&self.a * &other.c - &self.c * &other.a) / det;
        Some(Point::new(x, y))
    }

    /// Orthogonal projection of `p` onto the boundary line.
    pub fn project_onto_boundary(&self, p: &Point) -> Point {
        let n = self.normal();
        let t = (&self.c - &(&self.a * &p.x + &self.b * &p.y)) / n.dot(&n);
        p.translate(&n.scale(&t))
    }
}

/// The half-plane of points at least as close to `v_i` as to `v_j`:
/// { x : dist_sq(x, v_i) <= dist_sq(x, v_j) }. The quadratic terms cancel,
/// leaving the linear constraint 2(v_j - v_i) . x <= |v_j|^2 - |v_i|^2.
pub fn bisector_halfplane(v_i: &Point, v_j: &Point) -> Result<HalfPlane> {
    if v_i == v_j {
        return Err(Error::CoincidentSites);
    }
    let two = Scalar::from(2);
    let a = &two * (&v_j.x - &v_i.x);
    let b = &two * (&v_j.y - &v_i.y);
    let norm = |p: &Point| &p.x * &p.x + &p.y * &p.y;
    let c = norm(v_j) - norm(v_i);
    HalfPlane::new(a, b, c)
}

/// Do the closed segments [a, b] and [c, d] share at least one point?
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);

    if o1 != o2 && o3 != o4 {
        return true;
    }

    // Only collinear touching is left to check: a point of one segment can
    // lie on the other only if it is collinear with it and inside its
    // bounding box.
    let between = |p: &Point, q: &Point, r: &Point| {
        let (lo_x, hi_x) = if p.x <= q.x {
            (&p.x, &q.x)
        } else {
            (&q.x, &p.x)
        };
        let (lo_y, hi_y) = if p.y <= q.y {
            (&p.y, &q.y)
        } else {
            (&q.y, &p.y)
        };
        &r.x >= lo_x && &r.x <= hi_x && &r.y >= lo_y && &r.y <= hi_y
    };

    (o1 == Orientation::Collinear && between(a, b, c))
        || (o2 == Orientation::Collinear && between(a, b, d))
        || (o3 == Orientation::Collinear && between(c, d, a))
        || (o4 == Orientation::Collinear && between(c, d, b))
}
