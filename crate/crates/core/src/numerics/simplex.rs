//! Nelder–Mead downhill simplex minimization.

#[derive(Debug, Clone)]
pub struct SimplexOptions {
    /// Convergence tolerance on both the simplex diameter and the spread of
    /// function values.
    pub tol: f64,
    pub max_iterations: usize,
    /// Initial edge length per coordinate. `None` uses 5% of each coordinate
    /// (0.1 for zero coordinates).
    pub steps: Option<Vec<f64>>,
    /// Number of restarts from the best vertex after convergence.
    pub restarts: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            tol: 1e-10,
            max_iterations: 20_000,
            steps: None,
            restarts: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// False when the iteration budget ran out before convergence.
    pub converged: bool,
}

/// Minimize `h` from `start` with tolerance `tol` and default options.
pub fn minimize_simplex<H: Fn(&[f64]) -> f64>(h: H, start: &[f64], tol: f64) -> SimplexResult {
    minimize_simplex_with(
        h,
        start,
        &SimplexOptions {
            tol,
            ..SimplexOptions::default()
        },
    )
}

pub fn minimize_simplex_with<H: Fn(&[f64]) -> f64>(h: H, start: &[f64], opts: &SimplexOptions) -> SimplexResult {
    // non-finite values (outside support) rank as +inf
    let f = |x: &[f64]| {
        let v = h(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut best = start.to_vec();
    let mut total_iters = 0;
    let mut converged = false;
    let mut best_val = f(&best);
    for round in 0..=opts.restarts {
        let (point, value, iters, ok) = run(&f, &best, opts, opts.max_iterations.saturating_sub(total_iters));
        total_iters += iters;
        let improved = value < best_val - opts.tol * (1.0 + best_val.abs());
        if value <= best_val {
            best = point;
            best_val = value;
        }
        converged = ok;
        if !ok || (round > 0 && !improved) {
            break;
        }
    }
    SimplexResult {
        point: best,
        value: best_val,
        iterations: total_iters,
        converged,
    }
}

fn run<F: Fn(&[f64]) -> f64>(f: &F, start: &[f64], opts: &SimplexOptions, budget: usize) -> (Vec<f64>, f64, usize, bool) {
    let n = start.len();
    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    verts.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        let step = match &opts.steps {
            Some(s) => s[i],
            None if start[i] != 0.0 => 0.05 * start[i],
            None => 0.1,
        };
        v[i] += step;
        verts.push(v);
    }
    let mut vals: Vec<f64> = verts.iter().map(|v| f(v)).collect();
    let mut iters = 0;
    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        verts = order.iter().map(|&i| verts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let fspread = (vals[n] - vals[0]).abs();
        let xspread = verts[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&verts[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if vals[0].is_finite() && fspread <= opts.tol * (1.0 + vals[0].abs()) && xspread <= opts.tol.sqrt() {
            return (verts[0].clone(), vals[0], iters, true);
        }
        if iters >= budget {
            return (verts[0].clone(), vals[0], iters, false);
        }
        iters += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|j| verts[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&verts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = f(&xe);
            if fe < fr {
                verts[n] = xe;
                vals[n] = fe;
            } else {
                verts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            verts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let xc = along(0.5);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < vals[n].min(fr) {
            verts[n] = xc;
            vals[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        let b = verts[0].clone();
        for i in 1..=n {
            for j in 0..n {
                verts[i][j] = b[j] + 0.5 * (verts[i][j] - b[j]);
            }
            vals[i] = f(&verts[i]);
        }
    }
}
