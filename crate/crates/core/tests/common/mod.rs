//! Naive reference computations. Each one follows the defining formula
//! directly and shares no code path with the library under test.
#![allow(dead_code)]

use apcp::bundling::{CubicBezier, Point};
use apcp::store::TimeSliceView;

/// Per-variable (min, max) by exhaustive scan of every member and grid point.
pub fn scan_min_max(slice: &TimeSliceView) -> Vec<(f32, f32)> {
    (0..slice.n_vars())
        .map(|j| {
            let mut lo = f32::INFINITY;
            let mut hi = f32::NEG_INFINITY;
            for m in 0..slice.n_members() {
                for i in 0..slice.n_grid() {
                    let v = slice.value(m, i, j);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
            (lo, hi)
        })
        .collect()
}

/// Normalized value straight from the definition.
pub fn naive_normalized(slice: &TimeSliceView, bounds: &[(f32, f32)], m: usize, i: usize, j: usize) -> f64 {
    let (lo, hi) = bounds[j];
    if lo == hi {
        0.5
    } else {
        (slice.value(m, i, j) as f64 - lo as f64) / (hi as f64 - lo as f64)
    }
}

/// Mean then variance, two passes, population denominator, `f64::atan`.
pub fn two_pass_angle_stats(slice: &TimeSliceView, m: usize, left: usize, right: usize, active: &[bool]) -> (f64, f64) {
    let bounds = scan_min_max(slice);
    let angles: Vec<f64> = (0..slice.n_grid())
        .filter(|&i| active[i])
        .map(|i| (naive_normalized(slice, &bounds, m, i, right) - naive_normalized(slice, &bounds, m, i, left)).atan())
        .collect();
    let n = angles.len() as f64;
    let mean = angles.iter().sum::<f64>() / n;
    let var = angles.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / n;
    (mean, var)
}

pub fn naive_mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Bin by scanning edges `b / k`: half-open bins, last one closed.
pub fn scan_bin(v: f64, k: usize) -> usize {
    for b in 0..k {
        let lo = b as f64 / k as f64;
        let hi = (b + 1) as f64 / k as f64;
        if (lo <= v && v < hi) || (b == k - 1 && v >= lo) {
            return b;
        }
    }
    0
}

/// Bin counts from the textbook rules, recomputed without the library.
pub fn reference_bin_count(rule: &str, values: &[f64]) -> usize {
    let n = values.len();
    let nf = n as f64;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    if range == 0.0 {
        return 1;
    }
    let mean = values.iter().sum::<f64>() / nf;
    let k = match rule {
        "sturges" => {
            // smallest p with 2^p >= n, plus one
            let mut p = 0usize;
            while (1usize << p) < n {
                p += 1;
            }
            p + 1
        }
        "scott" => {
            let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0)).sqrt();
            if sd == 0.0 {
                1
            } else {
                let h = 3.49 * sd * nf.powf(-1.0 / 3.0);
                (range / h - 1e-9).ceil() as usize
            }
        }
        "fd" => {
            let mut s = values.to_vec();
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let q = |p: f64| {
                let h = (nf - 1.0) * p;
                let lo = h.floor() as usize;
                let hi = (lo + 1).min(n - 1);
                s[lo] + (h - lo as f64) * (s[hi] - s[lo])
            };
            let iqr = q(0.75) - q(0.25);
            if iqr == 0.0 {
                1
            } else {
                let h = 2.0 * iqr * nf.powf(-1.0 / 3.0);
                (range / h - 1e-9).ceil() as usize
            }
        }
        "doane" => {
            let m2 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / nf;
            let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / nf;
            let g1 = m3 / m2.powf(1.5);
            let sg = (6.0 * (nf - 2.0) / ((nf + 1.0) * (nf + 3.0))).sqrt();
            (1.0 + nf.log2() + (1.0 + g1.abs() / sg).log2() - 1e-9).ceil() as usize
        }
        other => other.strip_prefix("fixed:").unwrap().parse().unwrap(),
    };
    k.clamp(1, 512)
}

/// Brushed filter then double loop over points, counting cells.
pub fn filter_and_count(
    columns: &[Vec<f64>],
    brush: &[Option<(f64, f64)>],
    left: usize,
    right: usize,
    k_left: usize,
    k_right: usize,
) -> (Vec<u64>, usize) {
    let n = columns[0].len();
    let mut counts = vec![0u64; k_left * k_right];
    let mut active = 0;
    for i in 0..n {
        let pass = brush.iter().zip(columns).all(|(b, col)| match b {
            Some((lo, hi)) => *lo <= col[i] && col[i] <= *hi,
            None => true,
        });
        if !pass {
            continue;
        }
        active += 1;
        let (il, ir) = (scan_bin(columns[left][i], k_left), scan_bin(columns[right][i], k_right));
        for bl in 0..k_left {
            for br in 0..k_right {
                if il == bl && ir == br {
                    counts[bl * k_right + br] += 1;
                }
            }
        }
    }
    (counts, active)
}

/// Derivative of `curve` at an end by a one-sided five-point stencil, which is
/// exact for cubics up to rounding.
pub fn fd_derivative(curve: &CubicBezier, at_end: bool, h: f64) -> Point {
    let c = [-25.0, 48.0, -36.0, 16.0, -3.0];
    let mut acc = Point::new(0.0, 0.0);
    for (k, w) in c.iter().enumerate() {
        let t = if at_end { 1.0 - k as f64 * h } else { k as f64 * h };
        acc = acc + curve.eval(t) * *w;
    }
    let scale = if at_end { -1.0 } else { 1.0 } / (12.0 * h);
    acc * scale
}

/// Convex hull by monotone chain, counter-clockwise.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut hull: Vec<Point> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.x * ab.x + ab.y * ab.y;
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).x * ab.x + (p - a).y * ab.y) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// `true` when `p` is inside the hull of `control`, with slack `tol`.
pub fn in_hull(control: &[Point], p: Point, tol: f64) -> bool {
    let hull = convex_hull(control);
    match hull.len() {
        0 => false,
        1 => (p - hull[0]).norm() <= tol,
        2 => segment_distance(p, hull[0], hull[1]) <= tol,
        n => (0..n).all(|k| {
            let a = hull[k];
            let b = hull[(k + 1) % n];
            let edge = b - a;
            edge.cross(p - a) >= -tol * edge.norm()
        }),
    }
}

/// Distance from `p` to the infinite line through `a` and `b`.
pub fn line_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    d.cross(p - a).abs() / d.norm()
}
