//! Reference computations for the test suites, written without the solver
//! paths of the library: energies and residuals from explicit edge sums,
//! eigenvalues from a cyclic Jacobi iteration, and a brute-force angular
//! search for the L⁴ quotient.
#![allow(dead_code, clippy::needless_range_loop)]

use kgs::graph::{Domain, GraphFunction, WeightedGraph};

/// `‖u‖²` from edge sums; for Dirichlet data `u` must vanish off the
/// interior, in which case every edge with a nonzero difference lies in the
/// closure.
pub fn norm_sq(g: &WeightedGraph, u: &[f64], whole: bool) -> f64 {
    let mut s: f64 = g.edges().iter().map(|e| e.weight * (u[e.a] - u[e.b]).powi(2)).sum();
    if whole {
        let h = g.potential().expect("potential");
        s += (0..g.len()).map(|x| g.measure()[x] * h[x] * u[x] * u[x]).sum::<f64>();
    }
    s
}

pub fn power_integral(g: &WeightedGraph, free: &[usize], u: &[f64], p: i32) -> f64 {
    free.iter().map(|&x| g.measure()[x] * u[x].abs().powi(p)).sum()
}

pub fn free_set(g: &WeightedGraph, dom: Option<&Domain>) -> Vec<usize> {
    match dom {
        Some(d) => d.interior().to_vec(),
        None => (0..g.len()).collect(),
    }
}

pub struct Scalars {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub eta: f64,
}

pub fn energy(g: &WeightedGraph, dom: Option<&Domain>, s: &Scalars, u: &[f64]) -> f64 {
    let free = free_set(g, dom);
    let n = norm_sq(g, u, dom.is_none());
    let l2 = power_integral(g, &free, u, 2);
    let l4 = power_integral(g, &free, u, 4);
    0.5 * (s.a * n - s.lambda * l2) + 0.25 * (s.b * n * n - s.eta * l4)
}

/// Pointwise residual `(a + b‖u‖²)(Σ_y ω(u_x − u_y)/μ_x [+ h_x u_x]) − λu_x − ηu_x³`
/// on the free vertices.
pub fn residual(g: &WeightedGraph, dom: Option<&Domain>, s: &Scalars, u: &[f64]) -> Vec<(usize, f64)> {
    let whole = dom.is_none();
    let coupling = s.a + s.b * norm_sq(g, u, whole);
    free_set(g, dom)
        .into_iter()
        .map(|x| {
            let mut op: f64 = 0.0;
            for e in g.edges() {
                if e.a == x {
                    op += e.weight * (u[x] - u[e.b]);
                } else if e.b == x {
                    op += e.weight * (u[x] - u[e.a]);
                }
            }
            op /= g.measure()[x];
            if whole {
                op += g.potential().unwrap()[x] * u[x];
            }
            (x, coupling * op - s.lambda * u[x] - s.eta * u[x].powi(3))
        })
        .collect()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>().max(1e-300);
        if off <= 1e-32 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Smallest eigenvalue of `‖u‖²` against `∫u²` over the free vertices. The
/// form matrix is recovered from the norm by polarization on coordinate
/// functions.
pub fn brute_lambda1(g: &WeightedGraph, dom: Option<&Domain>) -> f64 {
    let free = free_set(g, dom);
    let whole = dom.is_none();
    let d = free.len();
    let unit = |i: usize| {
        let mut v = vec![0.0; g.len()];
        v[free[i]] = 1.0;
        v
    };
    let mut q = vec![vec![0.0; d]; d];
    for i in 0..d {
        q[i][i] = norm_sq(g, &unit(i), whole);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut sum = unit(i);
            sum[free[j]] = 1.0;
            let v = 0.5 * (norm_sq(g, &sum, whole) - q[i][i] - q[j][j]);
            q[i][j] = v;
            q[j][i] = v;
        }
    }
    let m: Vec<f64> = free.iter().map(|&x| g.measure()[x].sqrt()).collect();
    let a: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| q[i][j] / (m[i] * m[j])).collect())
        .collect();
    jacobi_eigenvalues(a)[0]
}

/// `sup ∫u⁴ / ‖u‖⁴` over an angular grid of the coordinate sphere (up to
/// dimension 3), with spacing `step` radians.
pub fn grid_search_d4(g: &WeightedGraph, dom: Option<&Domain>, step: f64) -> f64 {
    let free = free_set(g, dom);
    let whole = dom.is_none();
    let quotient = |coords: &[f64]| {
        let mut u = vec![0.0; g.len()];
        for (k, &x) in free.iter().enumerate() {
            u[x] = coords[k];
        }
        let n = norm_sq(g, &u, whole);
        power_integral(g, &free, &u, 4) / (n * n)
    };
    let pi = std::f64::consts::PI;
    match free.len() {
        1 => quotient(&[1.0]),
        2 => {
            let steps = (pi / step).ceil() as usize;
            (0..=steps)
                .map(|i| {
                    let t = pi * i as f64 / steps as f64;
                    quotient(&[t.cos(), t.sin()])
                })
                .fold(0.0, f64::max)
        }
        3 => {
            // u and −u agree, so the upper hemisphere suffices
            let nt = (0.5 * pi / step).ceil() as usize;
            let mut best = 0.0_f64;
            for i in 0..=nt {
                let theta = 0.5 * pi * i as f64 / nt as f64;
                let (st, ct) = theta.sin_cos();
                let np = ((2.0 * pi * st / step).ceil() as usize).max(1);
                for j in 0..np {
                    let phi = 2.0 * pi * j as f64 / np as f64;
                    let (sp, cp) = phi.sin_cos();
                    best = best.max(quotient(&[st * cp, st * sp, ct]));
                }
            }
            best
        }
        d => panic!("grid search supports dimension <= 3, got {d}"),
    }
}

pub fn rel_err(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

pub fn gf(v: Vec<f64>) -> GraphFunction {
    GraphFunction::new(v)
}
