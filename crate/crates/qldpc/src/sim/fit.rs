//! Least-squares quadratic fit of a cost curve and its minimizer.

use serde::Serialize;

/// Fitted quadratic `a d^2 + b d + c` over `(delta, cost)` samples.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticFit {
    pub fn eval(&self, d: f64) -> f64 {
        (self.a * d + self.b) * d + self.c
    }
}

/// Outcome of the cost-curve minimization.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitOutcome {
    pub fit: QuadraticFit,
    /// Minimizing ratio, clamped to the sampled hull.
    pub delta_star: f64,
    /// False when the fit has no interior minimum (non-positive curvature);
    /// `delta_star` is then the grid argmin, ties toward the smallest delta.
    pub interior_minimum: bool,
}

/// Fit a quadratic to `(delta, cost)` points and locate its minimum.
///
/// Requires at least three points with distinct deltas; with fewer the
/// normal equations are singular and the grid argmin is returned.
pub fn fit_quadratic_vertex(points: &[(f64, f64)]) -> FitOutcome {
    assert!(!points.is_empty(), "cannot fit an empty cost curve");
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);

    let argmin = points
        .iter()
        .fold(points[0], |best, &p| {
            if p.1 < best.1 || (p.1 == best.1 && p.0 < best.0) {
                p
            } else {
                best
            }
        })
        .0;

    if let Some(fit) = solve_normal_equations(points) {
        if fit.a > 0.0 {
            let vertex = -fit.b / (2.0 * fit.a);
            return FitOutcome {
                fit,
                delta_star: vertex.clamp(lo, hi),
                interior_minimum: true,
            };
        }
        return FitOutcome {
            fit,
            delta_star: argmin,
            interior_minimum: false,
        };
    }
    FitOutcome {
        fit: QuadraticFit { a: 0.0, b: 0.0, c: 0.0 },
        delta_star: argmin,
        interior_minimum: false,
    }
}

/// Normal equations for the basis {1, d, d^2}; `None` when singular.
fn solve_normal_equations(points: &[(f64, f64)]) -> Option<QuadraticFit> {
    let mut s = [0.0f64; 5]; // sum of d^k, k = 0..4
    let mut t = [0.0f64; 3]; // sum of cost * d^k, k = 0..2
    for &(d, y) in points {
        let mut dk = 1.0;
        for (k, sk) in s.iter_mut().enumerate() {
            *sk += dk;
            if k < 3 {
                t[k] += y * dk;
            }
            dk *= d;
        }
    }
    // Solve [[s0,s1,s2],[s1,s2,s3],[s2,s3,s4]] [c,b,a]^T = t.
    let mut m = [
        [s[0], s[1], s[2], t[0]],
        [s[1], s[2], s[3], t[1]],
        [s[2], s[3], s[4], t[2]],
    ];
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        let amount = m[col][col];
        for v in m[col].iter_mut() {
            *v /= amount;
        }
        for row in 0..3 {
            if row != col {
                let factor = m[row][col];
                let pivot_row = m[col];
                for (v, p) in m[row].iter_mut().zip(pivot_row) {
                    *v -= factor * p;
                }
            }
        }
    }
    Some(QuadraticFit {
        c: m[0][3],
        b: m[1][3],
        a: m[2][3],
    })
}
