//! Cubic interpolating splines on monotone sites: natural end conditions for
//! open profiles, periodic closure for closed curves.
//!
//! Both variants solve for the second derivatives at the knots and evaluate
//! piecewise. Degenerate knot counts fall back to a constant (one knot) or a
//! straight line / linear tent (two knots).

/// Natural cubic spline through `(t[i], y[i])`, second derivative zero at both
/// ends. Two knots reduce to the straight line, one knot to a constant.
#[derive(Debug, Clone)]
pub struct NaturalCubic {
    t: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl NaturalCubic {
    /// Fits the spline. `t` must be strictly increasing and match `y` in length.
    pub fn fit(t: &[f64], y: &[f64]) -> Self {
        assert_eq!(t.len(), y.len(), "site/value length mismatch");
        assert!(!t.is_empty(), "at least one knot required");
        assert!(
            t.windows(2).all(|w| w[0] < w[1]),
            "sites must be strictly increasing"
        );
        let n = t.len();
        let m = if n < 3 {
            vec![0.0; n]
        } else {
            let mut diag = vec![0.0; n];
            let mut off_lo = vec![0.0; n];
            let mut off_hi = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for i in 1..n - 1 {
                let h_lo = t[i] - t[i - 1];
                let h_hi = t[i + 1] - t[i];
                off_lo[i] = h_lo;
                diag[i] = 2.0 * (h_lo + h_hi);
                off_hi[i] = h_hi;
                rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h_hi - (y[i] - y[i - 1]) / h_lo);
            }
            // Natural ends: m[0] = m[n-1] = 0; solve the interior tridiagonal system.
            let mut m = vec![0.0; n];
            let inner = n - 2;
            let mut c = vec![0.0; inner];
            let mut d = vec![0.0; inner];
            for k in 0..inner {
                let i = k + 1;
                let denom = if k == 0 {
                    diag[i]
                } else {
                    diag[i] - off_lo[i] * c[k - 1]
                };
                c[k] = off_hi[i] / denom;
                let prev = if k == 0 { 0.0 } else { off_lo[i] * d[k - 1] };
                d[k] = (rhs[i] - prev) / denom;
            }
            for k in (0..inner).rev() {
                let next = if k == inner - 1 { 0.0 } else { c[k] * m[k + 2] };
                m[k + 1] = d[k] - next;
            }
            m
        };
        Self {
            t: t.to_vec(),
            y: y.to_vec(),
            m,
        }
    }

    /// Evaluates the spline at `x`, clamped into the site range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.t.len();
        if n == 1 {
            return self.y[0];
        }
        let x = x.clamp(self.t[0], self.t[n - 1]);
        let seg = segment_index(&self.t, x);
        eval_segment(
            x,
            self.t[seg],
            self.t[seg + 1],
            self.y[seg],
            self.y[seg + 1],
            self.m[seg],
            self.m[seg + 1],
        )
    }
}

/// Periodic cubic spline through `(t[i], y[i])` with period `period`: the curve
/// closes smoothly from the last knot back to the first. Two knots degrade to a
/// linear tent, one knot to a constant.
#[derive(Debug, Clone)]
pub struct PeriodicCubic {
    t: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
    period: f64,
}

impl PeriodicCubic {
    /// Fits the closed spline. Sites must be strictly increasing and span less
    /// than one period.
    pub fn fit(t: &[f64], y: &[f64], period: f64) -> Self {
        assert_eq!(t.len(), y.len(), "site/value length mismatch");
        assert!(!t.is_empty(), "at least one knot required");
        assert!(period > 0.0, "period must be positive");
        assert!(
            t.windows(2).all(|w| w[0] < w[1]),
            "sites must be strictly increasing"
        );
        let n = t.len();
        assert!(t[n - 1] - t[0] < period, "sites must span less than a period");
        let m = if n < 3 {
            vec![0.0; n]
        } else {
            let h: Vec<f64> = (0..n)
                .map(|i| {
                    if i + 1 < n {
                        t[i + 1] - t[i]
                    } else {
                        t[0] + period - t[n - 1]
                    }
                })
                .collect();
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for i in 0..n {
                let prev = (i + n - 1) % n;
                let next = (i + 1) % n;
                let s_hi = (y[next] - y[i]) / h[i];
                let s_lo = (y[i] - y[prev]) / h[prev];
                diag[i] = 2.0 * (h[prev] + h[i]);
                rhs[i] = 6.0 * (s_hi - s_lo);
            }
            solve_cyclic_tridiagonal(&h, &diag, &rhs)
        };
        Self {
            t: t.to_vec(),
            y: y.to_vec(),
            m,
            period,
        }
    }

    /// Evaluates the closed spline at `x`, wrapped into one period.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.t.len();
        if n == 1 {
            return self.y[0];
        }
        let span = self.period;
        let mut u = (x - self.t[0]).rem_euclid(span) + self.t[0];
        // Guard against rem_euclid landing exactly on the upper wrap.
        if u >= self.t[0] + span {
            u = self.t[0];
        }
        let (t_lo, t_hi, y_lo, y_hi, m_lo, m_hi) = if u >= self.t[n - 1] {
            (
                self.t[n - 1],
                self.t[0] + span,
                self.y[n - 1],
                self.y[0],
                self.m[n - 1],
                self.m[0],
            )
        } else {
            let seg = segment_index(&self.t, u);
            (
                self.t[seg],
                self.t[seg + 1],
                self.y[seg],
                self.y[seg + 1],
                self.m[seg],
                self.m[seg + 1],
            )
        };
        eval_segment(u, t_lo, t_hi, y_lo, y_hi, m_lo, m_hi)
    }
}

/// Index of the segment containing `x`: largest `i` with `t[i] <= x`, capped at
/// `n - 2` so the final site belongs to the last segment.
fn segment_index(t: &[f64], x: f64) -> usize {
    let n = t.len();
    let hi = t.partition_point(|&v| v <= x);
    hi.saturating_sub(1).min(n - 2)
}

fn eval_segment(x: f64, t_lo: f64, t_hi: f64, y_lo: f64, y_hi: f64, m_lo: f64, m_hi: f64) -> f64 {
    let h = t_hi - t_lo;
    let a = (t_hi - x) / h;
    let b = (x - t_lo) / h;
    a * y_lo + b * y_hi + ((a * a * a - a) * m_lo + (b * b * b - b) * m_hi) * h * h / 6.0
}

/// Solves the cyclic tridiagonal system arising from periodic spline closure
/// via the Sherman-Morrison correction of an ordinary tridiagonal solve.
/// `h[i]` couples unknown `i` to `i+1` (mod n); `diag` and `rhs` are the
/// diagonal and right-hand side.
fn solve_cyclic_tridiagonal(h: &[f64], diag: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let corner = h[n - 1]; // couples unknowns 0 and n-1
    let gamma = -diag[0];
    let mut diag_mod = diag.to_vec();
    diag_mod[0] -= gamma;
    diag_mod[n - 1] -= corner * corner / gamma;

    let solve = |b: &[f64]| -> Vec<f64> {
        // Thomas algorithm on the modified (acyclic) system.
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        c[0] = h[0] / diag_mod[0];
        d[0] = b[0] / diag_mod[0];
        for i in 1..n {
            let lower = h[i - 1];
            let denom = diag_mod[i] - lower * c[i - 1];
            if i < n - 1 {
                c[i] = h[i] / denom;
            }
            d[i] = (b[i] - lower * d[i - 1]) / denom;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    };

    let y = solve(rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = corner;
    let z = solve(&u);
    let v_dot = |x: &[f64]| x[0] + corner / gamma * x[n - 1];
    let factor = v_dot(&y) / (1.0 + v_dot(&z));
    (0..n).map(|i| y[i] - factor * z[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense-matrix reference: assembles the full spline system and solves it
    /// by Gaussian elimination, independently of the Thomas/cyclic code paths.
    fn dense_solve(a: &mut Vec<Vec<f64>>, b: &mut Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                .unwrap();
            a.swap(col, pivot);
            b.swap(col, pivot);
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = a[row][col] / a[col][col];
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
        (0..n).map(|i| b[i] / a[i][i]).collect()
    }

    fn natural_moments_dense(t: &[f64], y: &[f64]) -> Vec<f64> {
        let n = t.len();
        let mut a = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        a[0][0] = 1.0;
        a[n - 1][n - 1] = 1.0;
        for i in 1..n - 1 {
            let h_lo = t[i] - t[i - 1];
            let h_hi = t[i + 1] - t[i];
            a[i][i - 1] = h_lo;
            a[i][i] = 2.0 * (h_lo + h_hi);
            a[i][i + 1] = h_hi;
            b[i] = 6.0 * ((y[i + 1] - y[i]) / h_hi - (y[i] - y[i - 1]) / h_lo);
        }
        dense_solve(&mut a, &mut b)
    }

    fn periodic_moments_dense(t: &[f64], y: &[f64], period: f64) -> Vec<f64> {
        let n = t.len();
        let h: Vec<f64> = (0..n)
            .map(|i| {
                if i + 1 < n {
                    t[i + 1] - t[i]
                } else {
                    t[0] + period - t[n - 1]
                }
            })
            .collect();
        let mut a = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let next = (i + 1) % n;
            a[i][prev] += h[prev];
            a[i][i] += 2.0 * (h[prev] + h[i]);
            a[i][next] += h[i];
            b[i] = 6.0 * ((y[next] - y[i]) / h[i] - (y[i] - y[prev]) / h[prev]);
        }
        dense_solve(&mut a, &mut b)
    }

    fn uniform_sites(n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn natural_one_knot_is_constant() {
        let s = NaturalCubic::fit(&[0.3], &[4.2]);
        assert_eq!(s.eval(-1.0), 4.2);
        assert_eq!(s.eval(0.3), 4.2);
        assert_eq!(s.eval(9.0), 4.2);
    }

    #[test]
    fn natural_two_knots_is_linear() {
        let s = NaturalCubic::fit(&[0.0, 1.0], &[0.2, 0.8]);
        assert!((s.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((s.eval(0.25) - 0.35).abs() < 1e-15);
    }

    #[test]
    fn natural_three_knot_hand_value() {
        // Through (0,0), (0.5,1), (1,0): interior moment -12, so the first
        // segment is s(t) = 3t - 4t^3 and s(0.25) = 0.6875.
        let s = NaturalCubic::fit(&[0.0, 0.5, 1.0], &[0.0, 1.0, 0.0]);
        assert!((s.eval(0.25) - 0.6875).abs() < 1e-14);
    }

    #[test]
    fn natural_matches_dense_reference() {
        for &n in &[3usize, 4, 7, 16, 33] {
            let t = uniform_sites(n, 0.0, 1.0);
            let y: Vec<f64> = (0..n)
                .map(|i| (i as f64 * 2.7).sin() * 0.3 + 0.5 + 0.01 * i as f64)
                .collect();
            let s = NaturalCubic::fit(&t, &y);
            let m_ref = natural_moments_dense(&t, &y);
            for q in 0..200 {
                let x = q as f64 / 199.0;
                let seg = segment_index(&t, x);
                let want = eval_segment(
                    x,
                    t[seg],
                    t[seg + 1],
                    y[seg],
                    y[seg + 1],
                    m_ref[seg],
                    m_ref[seg + 1],
                );
                assert!(
                    (s.eval(x) - want).abs() < 1e-10,
                    "n={n} x={x}: {} vs {}",
                    s.eval(x),
                    want
                );
            }
        }
    }

    #[test]
    fn natural_reproduces_knots() {
        let t = uniform_sites(9, 0.0, 2.0);
        let y: Vec<f64> = t.iter().map(|v| (v * 3.1).cos()).collect();
        let s = NaturalCubic::fit(&t, &y);
        for (ti, yi) in t.iter().zip(&y) {
            assert!((s.eval(*ti) - yi).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_one_knot_is_constant() {
        let s = PeriodicCubic::fit(&[0.0], &[0.6], 1.0);
        assert_eq!(s.eval(0.77), 0.6);
    }

    #[test]
    fn periodic_two_knots_is_linear_tent() {
        let s = PeriodicCubic::fit(&[0.0, 0.5], &[0.2, 0.8], 1.0);
        assert!((s.eval(0.25) - 0.5).abs() < 1e-15);
        // Wrap segment from t=0.5 back to t=1.0 descends linearly.
        assert!((s.eval(0.75) - 0.5).abs() < 1e-15);
        assert!((s.eval(1.0) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn periodic_matches_dense_reference() {
        for &n in &[3usize, 4, 8, 17, 32] {
            let t: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
            let y: Vec<f64> = (0..n)
                .map(|i| 0.5 + 0.3 * (std::f64::consts::TAU * i as f64 / n as f64).sin())
                .collect();
            let s = PeriodicCubic::fit(&t, &y, 1.0);
            let m_ref = periodic_moments_dense(&t, &y, 1.0);
            for q in 0..311 {
                let x = q as f64 / 310.0;
                let (seg, t_hi, y_hi, m_hi) = if x >= t[n - 1] {
                    (n - 1, t[0] + 1.0, y[0], m_ref[0])
                } else {
                    let i = segment_index(&t, x);
                    (i, t[i + 1], y[i + 1], m_ref[i + 1])
                };
                let want = eval_segment(x, t[seg], t_hi, y[seg], y_hi, m_ref[seg], m_hi);
                assert!(
                    (s.eval(x) - want).abs() < 1e-10,
                    "n={n} x={x}: {} vs {}",
                    s.eval(x),
                    want
                );
            }
        }
    }

    #[test]
    fn periodic_wraps_and_reproduces_knots() {
        let n = 8;
        let t: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        let y: Vec<f64> = (0..n).map(|i| ((i * i) as f64 * 0.37).sin() * 0.4 + 0.5).collect();
        let s = PeriodicCubic::fit(&t, &y, 1.0);
        for (ti, yi) in t.iter().zip(&y) {
            assert!((s.eval(*ti) - yi).abs() < 1e-12);
            assert!((s.eval(*ti + 3.0) - yi).abs() < 1e-11, "periodicity");
            assert!((s.eval(*ti - 2.0) - yi).abs() < 1e-11, "negative wrap");
        }
    }

    #[test]
    fn periodic_constant_knots_stay_constant() {
        let t: Vec<f64> = (0..5).map(|i| i as f64 / 5.0).collect();
        let s = PeriodicCubic::fit(&t, &[0.4; 5], 1.0);
        for q in 0..50 {
            assert!((s.eval(q as f64 * 0.02) - 0.4).abs() < 1e-13);
        }
    }
}
