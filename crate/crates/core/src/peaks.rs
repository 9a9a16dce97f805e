//! Local-maximum detection on sampled curves.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// Grid index of the sampled maximum.
    pub index: usize,
    /// Position refined by a three-point parabola through the maximum.
    pub position: f64,
    pub value: f64,
}

/// Strict interior local maxima of `y(x)`, in grid order.
///
/// Plateaus (equal neighbours) are not reported.
pub fn local_maxima(x: &[f64], y: &[f64]) -> Vec<Peak> {
    assert_eq!(x.len(), y.len(), "x and y must have the same length");
    let mut out = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        if y[i] > y[i - 1] && y[i] > y[i + 1] {
            out.push(Peak {
                index: i,
                position: parabolic_vertex(
                    (x[i - 1], y[i - 1]),
                    (x[i], y[i]),
                    (x[i + 1], y[i + 1]),
                ),
                value: y[i],
            });
        }
    }
    out
}

/// Local maxima whose refined position lies in `[lo, hi]`.
pub fn maxima_in_window(x: &[f64], y: &[f64], lo: f64, hi: f64) -> Vec<Peak> {
    local_maxima(x, y)
        .into_iter()
        .filter(|p| p.position >= lo && p.position <= hi)
        .collect()
}

fn parabolic_vertex(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    let (x0, y0) = a;
    let (x1, y1) = b;
    let (x2, y2) = c;
    let d1 = (x1 - x0) * (y1 - y2);
    let d2 = (x1 - x2) * (y1 - y0);
    let denom = d1 - d2;
    if denom == 0.0 {
        return x1;
    }
    let v = x1 - 0.5 * ((x1 - x0) * d1 - (x1 - x2) * d2) / denom;
    // stay within the bracketing interval
    v.clamp(x0.min(x2), x0.max(x2))
}

/// Uniform grid of `points` values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        stop
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_vertex_of_sampled_parabola() {
        let x = linspace(-1.0, 1.0, 21);
        let y: Vec<f64> = x.iter().map(|&v| -(v - 0.137) * (v - 0.137)).collect();
        let peaks = local_maxima(&x, &y);
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].position - 0.137).abs() < 1e-12);
    }

    #[test]
    fn ignores_edges_and_plateaus() {
        let x = linspace(0.0, 4.0, 5);
        assert!(local_maxima(&x, &[5.0, 1.0, 1.0, 1.0, 5.0]).is_empty());
        let two = local_maxima(&x, &[0.0, 2.0, 1.0, 3.0, 0.0]);
        assert_eq!(two.iter().map(|p| p.index).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(2.5, 4.0, 601);
        assert_eq!(g.len(), 601);
        assert_eq!(g[0], 2.5);
        assert_eq!(g[600], 4.0);
    }
}
