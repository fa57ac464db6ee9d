use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

use super::{Domain, GraphFunction, WeightedGraph};

/// `Δu(x) = (1/μ(x)) Σ_{y∼x} ω_xy (u(y) − u(x))`. Isolated vertices get 0.
pub fn laplacian(g: &WeightedGraph, u: &GraphFunction) -> Result<GraphFunction> {
    u.check_len(g.len())?;
    let u = u.values();
    let mu = g.measure();
    let out = (0..g.len())
        .map(|x| {
            let s: f64 = g.neighbors(x).iter().map(|&(y, w)| w * (u[y] - u[x])).sum();
            s / mu[x]
        })
        .collect();
    Ok(GraphFunction::new(out))
}

/// Gradient form `Γ(u,v)(x) = (1/(2μ(x))) Σ_{y∼x} ω_xy (u(y)−u(x))(v(y)−v(x))`.
pub fn gamma(g: &WeightedGraph, u: &GraphFunction, v: &GraphFunction) -> Result<GraphFunction> {
    u.check_len(g.len())?;
    v.check_len(g.len())?;
    let (u, v) = (u.values(), v.values());
    let mu = g.measure();
    let out = (0..g.len())
        .map(|x| {
            let s: f64 = g
                .neighbors(x)
                .iter()
                .map(|&(y, w)| w * ((u[y] - u[x]) * (v[y] - v[x])))
                .sum();
            s / (2.0 * mu[x])
        })
        .collect();
    Ok(GraphFunction::new(out))
}

/// `|∇u| = √Γ(u,u)`.
pub fn grad_len(g: &WeightedGraph, u: &GraphFunction) -> Result<GraphFunction> {
    Ok(gamma(g, u, u)?.map(|v| v.max(0.0).sqrt()))
}

/// `∫_S u dμ = Σ_{x∈S} μ(x) u(x)`.
pub fn integrate(g: &WeightedGraph, set: &[usize], u: &GraphFunction) -> Result<f64> {
    u.check_len(g.len())?;
    let mu = g.measure();
    let terms = set
        .iter()
        .map(|&x| {
            if x < g.len() {
                Ok(mu[x] * u[x])
            } else {
                Err(Error::VertexOutOfRange(x))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&terms))
}

/// `‖u‖ = (∫_{Ω∪∂Ω} |∇u|² dμ)^{1/2}` for `u` vanishing off the interior.
pub fn norm_w012(g: &WeightedGraph, dom: &Domain, u: &GraphFunction) -> Result<f64> {
    dom.check_admissible(u)?;
    let grad_sq = gamma(g, u, u)?;
    Ok(integrate(g, dom.closure(), &grad_sq)?.max(0.0).sqrt())
}

/// `(∫_S |u|^γ dμ)^{1/γ}` for finite `γ ≥ 1`.
pub fn norm_lgamma(g: &WeightedGraph, set: &[usize], u: &GraphFunction, gamma_exp: f64) -> Result<f64> {
    if !(gamma_exp >= 1.0) || !gamma_exp.is_finite() {
        return Err(Error::InvalidExponent(gamma_exp));
    }
    let powered = u.map(|v| v.abs().powf(gamma_exp));
    Ok(integrate(g, set, &powered)?.powf(1.0 / gamma_exp))
}

/// `max_{x∈S} |u(x)|`; zero on the empty set.
pub fn norm_inf(g: &WeightedGraph, set: &[usize], u: &GraphFunction) -> Result<f64> {
    u.check_len(g.len())?;
    set.iter().try_fold(0.0_f64, |m, &x| {
        if x < g.len() {
            Ok(m.max(u[x].abs()))
        } else {
            Err(Error::VertexOutOfRange(x))
        }
    })
}

/// `‖u‖_{W_h} = (∫_V (|∇u|² + h u²) dμ)^{1/2}`.
pub fn norm_wh(g: &WeightedGraph, u: &GraphFunction) -> Result<f64> {
    let h = g.potential().ok_or(Error::MissingPotential)?;
    let grad_sq = gamma(g, u, u)?;
    let dens = GraphFunction::new(
        grad_sq
            .values()
            .iter()
            .zip(h)
            .zip(u.values())
            .map(|((gs, hx), ux)| gs + hx * ux * ux)
            .collect(),
    );
    let all: Vec<usize> = (0..g.len()).collect();
    Ok(integrate(g, &all, &dens)?.max(0.0).sqrt())
}

/// Domain with `∂Ω = { y ∉ Ω : y ∼ x for some x ∈ Ω }`.
pub fn boundary_of(g: &WeightedGraph, interior: &[usize]) -> Result<Domain> {
    if interior.is_empty() {
        return Err(Error::EmptyInterior);
    }
    let n = g.len();
    let mut in_int = vec![false; n];
    for &x in interior {
        if x >= n {
            return Err(Error::VertexOutOfRange(x));
        }
        in_int[x] = true;
    }
    let mut in_bd = vec![false; n];
    for x in 0..n {
        if in_int[x] {
            for &(y, _) in g.neighbors(x) {
                if !in_int[y] {
                    in_bd[y] = true;
                }
            }
        }
    }
    let interior: Vec<usize> = (0..n).filter(|&x| in_int[x]).collect();
    let boundary: Vec<usize> = (0..n).filter(|&x| in_bd[x]).collect();
    Ok(Domain::from_parts(n, interior, boundary))
}
