use super::point::Point;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicBezier {
    pub points: [Point; 4],
}

impl CubicBezier {
    pub fn new(p0: Point, p1: Point, p2: Point, p3: Point) -> Self {
        Self {
            points: [p0, p1, p2, p3],
        }
    }

    /// De Casteljau evaluation.
    pub fn eval(&self, t: f64) -> Point {
        let [p0, p1, p2, p3] = self.points;
        let a = p0.lerp(p1, t);
        let b = p1.lerp(p2, t);
        let c = p2.lerp(p3, t);
        let d = a.lerp(b, t);
        let e = b.lerp(c, t);
        d.lerp(e, t)
    }

    pub fn derivative(&self, t: f64) -> Point {
        let [p0, p1, p2, p3] = self.points;
        let s = 1.0 - t;
        (p1 - p0) * (3.0 * s * s) + (p2 - p1) * (6.0 * s * t) + (p3 - p2) * (3.0 * t * t)
    }

    pub fn start(&self) -> Point {
        self.points[0]
    }

    pub fn end(&self) -> Point {
        self.points[3]
    }
}

/// Two cubics joining `e0 -> mid -> e1` so the composite curve is C1 at `mid`.
///
/// Both inner tangents point along the chord `e0 -> e1` with the common length
/// `(|mid - e0| + |e1 - mid|) / 6`; the outer controls sit a third of the way
/// along each half. When `mid` lies on the chord every control point does too,
/// and the curve is the straight segment.
pub fn bundle_segment(e0: Point, mid: Point, e1: Point) -> (CubicBezier, CubicBezier) {
    let chord = e1 - e0;
    let len = chord.norm();
    let dir = if len > 0.0 { chord * (1.0 / len) } else { Point::default() };
    let lambda = ((mid - e0).norm() + (e1 - mid).norm()) / 6.0;
    let tangent = dir * lambda;
    let left = CubicBezier::new(e0, e0 + (mid - e0) * (1.0 / 3.0), mid - tangent, mid);
    let right = CubicBezier::new(mid, mid + tangent, e1 - (e1 - mid) * (1.0 / 3.0), e1);
    (left, right)
}
