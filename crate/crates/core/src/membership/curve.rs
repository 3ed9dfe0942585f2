//! Closed polygonal curves in the plane: winding numbers, distances and a
//! brute-force simplicity test.

use num_complex::Complex64;

/// A closed polygon; the last vertex connects back to the first.
#[derive(Debug, Clone)]
pub struct ClosedCurve {
    vertices: Vec<Complex64>,
}

impl ClosedCurve {
    pub fn new(vertices: Vec<Complex64>) -> Self {
        assert!(vertices.len() >= 3, "a closed curve needs at least three vertices");
        ClosedCurve { vertices }
    }

    /// Samples `f(rho e^{i theta})` at `n` equally spaced angles.
    pub fn sample(n: usize, rho: f64, f: impl Fn(Complex64) -> Complex64) -> Self {
        let vertices =
            (0..n).map(|j| f(Complex64::from_polar(rho, std::f64::consts::TAU * j as f64 / n as f64))).collect();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Winding number of the curve around `p` (crossing rule, exact in the
    /// sense that it only uses orientation signs).
    pub fn winding_number(&self, p: Complex64) -> i32 {
        let mut wn = 0;
        for (a, b) in self.segments() {
            if a.im <= p.im {
                if b.im > p.im && orient(a, b, p) > 0.0 {
                    wn += 1;
                }
            } else if b.im <= p.im && orient(a, b, p) < 0.0 {
                wn -= 1;
            }
        }
        wn
    }

    /// Winding number and distance in a single pass over the edges.
    pub fn locate(&self, p: Complex64) -> (i32, f64) {
        let mut wn = 0;
        let mut dist = f64::INFINITY;
        for (a, b) in self.segments() {
            if a.im <= p.im {
                if b.im > p.im && orient(a, b, p) > 0.0 {
                    wn += 1;
                }
            } else if b.im <= p.im && orient(a, b, p) < 0.0 {
                wn -= 1;
            }
            dist = dist.min(segment_distance(a, b, p));
        }
        (wn, dist)
    }

    /// Euclidean distance from `p` to the polygon.
    pub fn distance(&self, p: Complex64) -> f64 {
        self.segments().map(|(a, b)| segment_distance(a, b, p)).fold(f64::INFINITY, f64::min)
    }

    /// Whether any two non-adjacent edges cross. Quadratic in the vertex count.
    pub fn self_intersects(&self) -> bool {
        let n = self.vertices.len();
        let segs: Vec<_> = self.segments().collect();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_cross(segs[i], segs[j]) {
                    return true;
                }
            }
        }
        false
    }
}

fn orient(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    (b.re - a.re) * (p.im - a.im) - (p.re - a.re) * (b.im - a.im)
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn segments_cross((a, b): (Complex64, Complex64), (c, d): (Complex64, Complex64)) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}
