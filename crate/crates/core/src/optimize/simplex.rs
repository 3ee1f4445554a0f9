//! Downhill simplex (Nelder–Mead) minimization.

/// Reflection, expansion, contraction and shrink coefficients.
const ALPHA: f64 = 1.0;
const GAMMA: f64 = 2.0;
const RHO: f64 = 0.5;
const SIGMA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` from the simplex `x0, x0 + scale·e_i`. Stops when the
/// spread of function values over the simplex is at most `ftol` or after
/// `max_iters` iterations.
pub fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    scale: f64,
    ftol: f64,
    max_iters: usize,
) -> SimplexOutcome {
    let n = x0.len();
    let f0 = f(x0);
    if n == 0 {
        return SimplexOutcome {
            x: Vec::new(),
            f: f0,
            iterations: 0,
            converged: true,
        };
    }
    let mut points: Vec<Vec<f64>> = vec![x0.to_vec()];
    let mut values = vec![f0];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += scale;
        values.push(f(&p));
        points.push(p);
    }

    let mut iterations = 0;
    let mut converged = false;
    loop {
        // Stable sort keeps the earlier vertex first on ties.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        points = order.iter().map(|&i| points[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if values[n] - values[0] <= ftol {
            converged = true;
            break;
        }
        if iterations == max_iters {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|d| points[..n].iter().map(|p| p[d]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&points[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(ALPHA);
        let fr = f(&xr);
        if fr < values[0] {
            let xe = along(GAMMA);
            let fe = f(&xe);
            if fe < fr {
                points[n] = xe;
                values[n] = fe;
            } else {
                points[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            points[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[n] {
            let xc = along(ALPHA * RHO);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-RHO);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < values[n].min(fr) {
            points[n] = xc;
            values[n] = fc;
            continue;
        }
        for i in 1..=n {
            let p: Vec<f64> = points[0]
                .iter()
                .zip(&points[i])
                .map(|(b, q)| b + SIGMA * (q - b))
                .collect();
            values[i] = f(&p);
            points[i] = p;
        }
    }
    SimplexOutcome {
        x: points.swap_remove(0),
        f: values[0],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic() {
        let mut f = |x: &[f64]| (x[0] - 1.0).powi(2) + 10.0 * (x[1] + 2.0).powi(2);
        let out = nelder_mead(&mut f, &[0.0, 0.0], 0.5, 1e-14, 5000);
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-5);
        assert!((out.x[1] + 2.0).abs() < 1e-5);
    }

    #[test]
    fn rosenbrock() {
        let mut f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let out = nelder_mead(&mut f, &[-1.2, 1.0], 0.5, 1e-16, 10_000);
        assert!(out.f < 1e-8, "{out:?}");
    }

    #[test]
    fn zero_dimensions() {
        let mut f = |_: &[f64]| 3.0;
        let out = nelder_mead(&mut f, &[], 0.5, 1e-9, 10);
        assert_eq!((out.f, out.iterations, out.converged), (3.0, 0, true));
    }

    #[test]
    fn respects_iteration_cap() {
        let mut f = |x: &[f64]| x[0].sin() * 0.0 + x[0];
        let out = nelder_mead(&mut f, &[0.0], 1.0, 1e-9, 5);
        assert!(!out.converged);
        assert_eq!(out.iterations, 5);
    }
}
