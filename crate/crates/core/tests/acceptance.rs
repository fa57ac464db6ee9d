//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one PASS/FAIL line per criterion.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::Scalars;
use kgs::functional::{EnergyParams, Functional};
use kgs::graph::{
    boundary_of, families, gamma, integrate, io, laplacian, norm_inf, norm_lgamma, norm_wh, GraphFunction,
    WeightedGraph,
};
use kgs::nehari::NehariContext;
use kgs::solver::{solve, solve_with_constants, SolveOptions, SolveStatus};
use kgs::space::ProblemKind;
use kgs::spectral::{lambda1, lambda1_star, SpectralConstants};
use kgs::sweep::{sweep, ParamGrid};
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rel(x: f64, y: f64) -> f64 {
    common::rel_err(x, y)
}

fn star_params(g_kind: ProblemKind) -> EnergyParams {
    EnergyParams::new(1.0, 1.0, 0.0, 8.0, g_kind).unwrap()
}

fn c1() -> Check {
    let t = Instant::now();
    let (g, dom) = families::star(2);
    let p = star_params(ProblemKind::Dirichlet(dom));
    let r = solve(&g, &p, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure!(r.status == SolveStatus::Solved, "status {:?}", r.status);
    let height = 0.5_f64.sqrt();
    ensure!(rel(r.u[0], height) <= 1e-8, "spike {} vs {height}", r.u[0]);
    ensure!(rel(r.energy, 0.25) <= 1e-8, "energy {}", r.energy);
    let kappa = r.bounds.kappa.ok_or("no kappa")?;
    let bound = r.bounds.energy_lower_bound.ok_or("no energy bound")?;
    ensure!(rel(kappa * kappa, 0.5) <= 1e-8, "kappa² {}", kappa * kappa);
    ensure!(rel(bound, 0.125) <= 1e-8, "bound {bound}");
    ensure!(
        r.norm * r.norm > kappa * kappa && rel(r.norm * r.norm, 1.0) <= 1e-8,
        "norm² {}",
        r.norm * r.norm
    );
    ensure!(r.energy > bound && r.bounds.all_ok(), "bounds {:?}", r.bounds);
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("u = {:.12}, c = {:.12}, {elapsed:?}", r.u[0], r.energy))
}

fn c2() -> Check {
    let t = Instant::now();
    let g = families::triangle_with_potential(1.0);
    let p = EnergyParams::new(1.0, 0.0, 0.0, 1.0, ProblemKind::WholeGraph).unwrap();
    let r = solve(&g, &p, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure!(r.status == SolveStatus::Solved, "status {:?}", r.status);
    let worst = r.u.values().iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    ensure!(worst <= 1e-8, "u deviates from 1 by {worst}");
    ensure!(rel(r.energy, 0.75) <= 1e-8, "energy {}", r.energy);
    ensure!(
        r.constants.mu0 == 1.0 && r.constants.h0 == Some(1.0),
        "mu0 {} h0 {:?}",
        r.constants.mu0,
        r.constants.h0
    );
    let radius = r.constants.whole_graph_radius(&p).map_err(|e| e.to_string())?;
    ensure!(r.norm >= radius, "norm {} below radius {radius}", r.norm);
    ensure!(r.bounds.all_ok(), "bounds {:?}", r.bounds);
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "d = {:.12}, radius {radius:.6} <= norm {:.6}, {elapsed:?}",
        r.energy, r.norm
    ))
}

fn c3() -> Check {
    let (g, dom) = families::star(2);
    let base = star_params(ProblemKind::Dirichlet(dom));
    let mut rows = Vec::new();
    for spec in ["eta=0.5:8:31", "eta=3.99:4.03:41", "eta=4.0101:40:10"] {
        let grid: ParamGrid = spec.parse().map_err(|e: kgs::Error| e.to_string())?;
        rows.extend(sweep(&g, &base, &grid, &SolveOptions::default()).map_err(|e| e.to_string())?);
    }
    let (mut below, mut above) = (0, 0);
    for r in &rows {
        if r.eta <= 4.0 {
            ensure!(r.status == "NoNontrivialSolution", "eta {} gave {}", r.eta, r.status);
            below += 1;
        } else if r.eta > 4.01 {
            ensure!(r.status == "Solved", "eta {} gave {}", r.eta, r.status);
            ensure!(
                rel(r.energy.unwrap(), 1.0 / (r.eta - 4.0)) <= 1e-8,
                "eta {} energy {:?}",
                r.eta,
                r.energy
            );
            above += 1;
        }
    }
    ensure!(below > 0 && above > 0, "grid did not straddle the threshold");
    Ok(format!("{below} rows at or below 4, {above} rows above 4.01"))
}

fn pairing(g: &WeightedGraph, set: &[usize], u: &GraphFunction, v: &GraphFunction) -> f64 {
    let prod = GraphFunction::new(u.values().iter().zip(v.values()).map(|(a, b)| a * b).collect());
    integrate(g, set, &prod).unwrap()
}

fn c4() -> Check {
    let mut worst = 0.0_f64;
    for seed in 0..50u64 {
        let mut rng = families::rng(seed);
        let n = rng.random_range(5..=50);
        let g = families::random_connected(n, 4000 + seed);
        let all: Vec<usize> = (0..n).collect();
        let k = rng.random_range(1..n);
        let mut verts = all.clone();
        for i in (1..n).rev() {
            verts.swap(i, rng.random_range(0..=i));
        }
        let mut interior = verts[..k].to_vec();
        interior.sort_unstable();
        let dom = boundary_of(&g, &interior).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let psi = families::random_function(n, &mut rng);
            let phi = families::random_function(n, &mut rng);
            let lap = laplacian(&g, &psi).unwrap();
            let lhs = pairing(&g, &all, &phi, &lap);
            let rhs = -integrate(&g, &all, &gamma(&g, &psi, &phi).unwrap()).unwrap();
            worst = worst.max(rel(lhs, rhs));
            ensure!(rel(lhs, rhs) <= 1e-12, "whole graph, seed {seed}: {lhs} vs {rhs}");

            let phi0 = families::random_admissible(&dom, &mut rng);
            let lhs = pairing(&g, dom.interior(), &phi0, &lap);
            let rhs = -integrate(&g, dom.closure(), &gamma(&g, &psi, &phi0).unwrap()).unwrap();
            worst = worst.max(rel(lhs, rhs));
            ensure!(rel(lhs, rhs) <= 1e-12, "dirichlet, seed {seed}: {lhs} vs {rhs}");
        }
    }
    Ok(format!("worst relative error {worst:.2e}"))
}

fn random_params(seed: u64) -> (WeightedGraph, EnergyParams) {
    let mut rng = families::rng(seed);
    let n = rng.random_range(4..30);
    let a = rng.random_range(0.2..3.0);
    let b = rng.random_range(0.0..2.0);
    let lambda = rng.random_range(-2.0..2.0);
    let eta = rng.random_range(0.0..10.0);
    if rng.random_bool(0.5) {
        let (g, dom) = families::random_dirichlet(n, rng.random_range(1..n), seed);
        (
            g,
            EnergyParams::new(a, b, lambda, eta, ProblemKind::Dirichlet(dom)).unwrap(),
        )
    } else {
        (
            families::random_whole_graph(n, seed),
            EnergyParams::new(a, b, lambda, eta, ProblemKind::WholeGraph).unwrap(),
        )
    }
}

fn admissible(p: &EnergyParams, n: usize, rng: &mut impl Rng) -> GraphFunction {
    match &p.kind {
        ProblemKind::Dirichlet(d) => families::random_admissible(d, rng),
        ProblemKind::WholeGraph => families::random_function(n, rng),
    }
}

fn c5() -> Check {
    let eps = 1e-5;
    let mut worst = 0.0_f64;
    for seed in 0..100u64 {
        let (g, p) = random_params(9000 + seed);
        let f = Functional::new(&g, &p).unwrap();
        let mut rng = families::rng(seed);
        let u = admissible(&p, g.len(), &mut rng);
        let v = admissible(&p, g.len(), &mut rng);
        let analytic = f.d_energy(&u, &v).unwrap();
        let fd = (f.energy(&u.add_scaled(eps, &v)).unwrap() - f.energy(&u.add_scaled(-eps, &v)).unwrap()) / (2.0 * eps);
        let e = rel(fd, analytic);
        worst = worst.max(e);
        ensure!(e <= 1e-6, "seed {seed}: fd {fd} vs {analytic}");
    }
    Ok(format!("worst relative error {worst:.2e} over 100 pairs"))
}

struct ConeInstance {
    g: WeightedGraph,
    p: EnergyParams,
    consts: SpectralConstants,
}

fn cone_instance(seed: u64, whole: bool) -> ConeInstance {
    let mut rng = families::rng(seed);
    let n = rng.random_range(4..25);
    let (g, kind) = if whole {
        (families::random_whole_graph(n, seed), ProblemKind::WholeGraph)
    } else {
        let (g, dom) = families::random_dirichlet(n, rng.random_range(1..n), seed);
        (g, ProblemKind::Dirichlet(dom))
    };
    let a = rng.random_range(0.5..2.0);
    let b = rng.random_range(0.1..1.5);
    let consts = SpectralConstants::compute(&g, &kind, b).unwrap();
    let lambda = rng.random_range(-0.9..0.9) * a * consts.lambda1;
    let eta = consts.eta0 * rng.random_range(1.2..4.0);
    ConeInstance {
        g,
        p: EnergyParams::new(a, b, lambda, eta, kind).unwrap(),
        consts,
    }
}

fn cone_members(ctx: &NehariContext, inst: &ConeInstance, count: usize, rng: &mut impl Rng) -> Vec<GraphFunction> {
    let anchor = inst.consts.eta0_direction.clone().unwrap();
    let mut out = Vec::new();
    while out.len() < count {
        let r = admissible(&inst.p, inst.g.len(), rng);
        let u = anchor
            .add_scaled(0.5_f64.powi(rng.random_range(0..8)), &r)
            .scaled(rng.random_range(0.01..100.0));
        if ctx.in_cone(&u).unwrap() {
            out.push(u);
        }
    }
    out
}

fn c6() -> Check {
    let mut count = 0;
    for seed in 0..10u64 {
        let inst = cone_instance(600 + seed, seed % 2 == 1);
        let ctx = NehariContext::new(&inst.g, &inst.p, &inst.consts).map_err(|e| e.to_string())?;
        let f = ctx.functional();
        let mut rng = families::rng(seed);
        for u in cone_members(&ctx, &inst, 12, &mut rng) {
            let s = ctx.fiber_scale(&u).unwrap();
            let p = ctx.project(&u).unwrap();
            let pp = ctx.project(&p).unwrap();
            let idem = pp
                .values()
                .iter()
                .zip(p.values())
                .map(|(x, y)| rel(*x, *y))
                .fold(0.0, f64::max);
            ensure!(idem <= 1e-10, "projection not idempotent: {idem:e}");
            let s1 = ctx.fiber_scale(&p).unwrap();
            ensure!((s1 - 1.0).abs() <= 1e-10, "s_u on manifold = {s1}");
            let m = ctx.ground_map(&u).unwrap();
            for t in [1e-3, 0.3, -1.0, 7.0, 1e3] {
                let mt = ctx.ground_map(&u.scaled(t)).unwrap();
                ensure!(rel(mt, m) <= 1e-10, "ground map not scale invariant: {mt} vs {m}");
            }
            ensure!(rel(ctx.fiber_energy(&u, s).unwrap(), m) <= 1e-10, "fiber max value");
            for k in [0.5, 0.99, 1.01, 2.0] {
                ensure!(
                    ctx.fiber_energy(&u, k * s).unwrap() < m,
                    "fiber not maximal at s_u (k = {k})"
                );
            }
            let curv = ctx.fiber_curvature(&u).unwrap();
            let sp = f.splits(&u).unwrap();
            ensure!(curv < 0.0, "curvature {curv}");
            ensure!(rel(curv, 2.0 * s * s * sp.i_eta) <= 1e-10, "curvature {curv}");
            ensure!(
                rel(curv, sp.i_lambda + 3.0 * s * s * sp.i_eta) <= 1e-10,
                "curvature vs second derivative"
            );
            count += 1;
        }
    }
    ensure!(count >= 100, "only {count} cone members");
    Ok(format!("{count} cone members"))
}

fn c7() -> Check {
    let mut count = 0;
    let mut worst = 0.0_f64;
    for seed in 0..10u64 {
        let inst = cone_instance(700 + seed, true);
        let ctx = NehariContext::new(&inst.g, &inst.p, &inst.consts).map_err(|e| e.to_string())?;
        let mut rng = families::rng(seed);
        for u in cone_members(&ctx, &inst, 10, &mut rng) {
            let v = ctx.project(&u).unwrap().scaled(rng.random_range(1.0..10.0));
            ensure!(
                ctx.nehari_residual(&v).unwrap() <= 0.0,
                "upscaled point has positive pairing"
            );
            let s = ctx.fiber_scale(&v).unwrap();
            worst = worst.max(s);
            ensure!(s <= 1.0 + 1e-12, "fiber scale {s}");
            count += 1;
        }
    }
    Ok(format!("{count} members, largest fiber scale {worst:.6}"))
}

fn c8() -> Check {
    let mut notes = Vec::new();
    for (nx, ny) in [(1, 1), (3, 3)] {
        let (g, dom) = families::grid_dirichlet(nx, ny);
        let kind = ProblemKind::Dirichlet(dom.clone());
        let consts = SpectralConstants::compute(&g, &kind, 0.5).map_err(|e| e.to_string())?;
        let p = EnergyParams::new(1.0, 0.5, 0.5 * consts.lambda1, 2.0 * consts.eta0, kind).unwrap();
        let r = solve_with_constants(&g, &p, &consts, &SolveOptions::default()).map_err(|e| e.to_string())?;
        ensure!(r.status == SolveStatus::Solved, "status {:?}", r.status);
        let ctx = NehariContext::unchecked(&g, &p).unwrap();
        let own = ctx.ground_map(&r.u).unwrap();
        ensure!((own - r.energy).abs() <= 1e-8, "own direction {own} vs {}", r.energy);
        let anchor = consts.eta0_direction.clone().unwrap();
        let mut rng = families::rng(8);
        let (mut hits, mut lowest) = (0, f64::INFINITY);
        while hits < 200 {
            let v = families::random_admissible(&dom, &mut rng);
            let u = if hits % 2 == 0 {
                v
            } else {
                anchor.add_scaled(0.5_f64.powi(rng.random_range(0..6)), &v)
            };
            if !ctx.in_cone(&u).unwrap() {
                continue;
            }
            hits += 1;
            let m = ctx.ground_map(&u).unwrap();
            lowest = lowest.min(m);
            ensure!(
                m >= r.energy - 1e-8,
                "direction below the solver level: {m} < {}",
                r.energy
            );
        }
        notes.push(format!(
            "{}x{} interior: c = {:.10}, min over 200 = {lowest:.10}",
            nx, ny, r.energy
        ));
    }
    Ok(notes.join("; "))
}

fn c9() -> Check {
    let mut worst = 0.0_f64;
    for seed in 0..10u64 {
        let mut rng = families::rng(seed);
        let n = rng.random_range(5..45);
        let (g, dom) = families::random_dirichlet(n, rng.random_range(1..=n.min(31) - 1), 900 + seed);
        let got = lambda1(&g, &dom).map_err(|e| e.to_string())?;
        let want = common::brute_lambda1(&g, Some(&dom));
        worst = worst.max(rel(got, want));
        ensure!(rel(got, want) <= 1e-10, "lambda1 {got} vs {want}");

        let g = families::random_whole_graph(rng.random_range(2..=30), 950 + seed);
        let got = lambda1_star(&g).map_err(|e| e.to_string())?;
        let want = common::brute_lambda1(&g, None);
        worst = worst.max(rel(got, want));
        ensure!(rel(got, want) <= 1e-10, "lambda1* {got} vs {want}");
    }

    let mut small: Vec<(WeightedGraph, ProblemKind)> = Vec::new();
    let (g, dom) = families::star(2);
    small.push((g, ProblemKind::Dirichlet(dom)));
    let (g, dom) = families::grid_dirichlet(1, 1);
    small.push((g, ProblemKind::Dirichlet(dom)));
    let (g, dom) = families::grid_dirichlet(1, 3);
    small.push((g, ProblemKind::Dirichlet(dom)));
    small.push((families::triangle_with_potential(1.0), ProblemKind::WholeGraph));
    small.push((families::random_whole_graph(2, 3), ProblemKind::WholeGraph));
    let path = families::path(5);
    small.push((
        path.clone(),
        ProblemKind::Dirichlet(boundary_of(&path, &[1, 2, 3]).unwrap()),
    ));
    for seed in 0..6u64 {
        let (g, dom) = families::random_dirichlet(8 + seed as usize, 1 + seed as usize % 3, 960 + seed);
        small.push((g, ProblemKind::Dirichlet(dom)));
        small.push((
            families::random_whole_graph(2 + seed as usize % 2, 970 + seed),
            ProblemKind::WholeGraph,
        ));
    }
    let mut worst_eta = 0.0_f64;
    for (g, kind) in &small {
        let dom = match kind {
            ProblemKind::Dirichlet(d) => Some(d),
            ProblemKind::WholeGraph => None,
        };
        let b = 1.3;
        let c = SpectralConstants::compute(g, kind, b).map_err(|e| e.to_string())?;
        let oracle = b / common::grid_search_d4(g, dom, 1e-3);
        worst_eta = worst_eta.max(rel(c.eta0, oracle));
        ensure!(rel(c.eta0, oracle) <= 1e-4, "eta0 {} vs grid {oracle}", c.eta0);
        ensure!(
            rel(c.eta0 * c.d4_sharp.powi(4), b) <= 1e-8,
            "eta0 d4^4 = {}",
            c.eta0 * c.d4_sharp.powi(4)
        );
    }
    Ok(format!(
        "lambda1 worst {worst:.1e}; eta0 worst {worst_eta:.1e} on {} small instances",
        small.len()
    ))
}

fn c10() -> Check {
    let mut tightest = 0.0_f64;
    for seed in 0..10u64 {
        let g = families::random_whole_graph(5 + 3 * seed as usize, 1000 + seed);
        let (mu0, h0) = (g.mu0(), g.h0().unwrap());
        let all: Vec<usize> = (0..g.len()).collect();
        let mut rng = families::rng(seed);
        for _ in 0..1000 {
            let u = families::random_function(g.len(), &mut rng);
            let wh = norm_wh(&g, &u).unwrap();
            let inf = norm_inf(&g, &all, &u).unwrap();
            let bound = wh / (h0 * mu0).sqrt();
            tightest = tightest.max(inf / bound);
            ensure!(inf <= bound, "sup norm {inf} > {bound}");
            for r in [2.0_f64, 4.0, 8.0] {
                let lr = norm_lgamma(&g, &all, &u, r).unwrap();
                let bound = mu0.powf((2.0 - r) / (2.0 * r)) * wh / h0.sqrt();
                tightest = tightest.max(lr / bound);
                ensure!(lr <= bound, "L^{r} norm {lr} > {bound}");
            }
        }
    }
    Ok(format!("largest norm/bound ratio {tightest:.6}"))
}

fn kgs_bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kgs"));
    c.env_remove("KGS_SEED");
    c
}

fn write_graph(dir: &Path, name: &str, g: &WeightedGraph) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, io::to_json(g)).unwrap();
    p
}

fn run(cmd: &mut Command) -> Result<i32, String> {
    let o = cmd.output().map_err(|e| e.to_string())?;
    o.status.code().ok_or_else(|| "killed by signal".to_owned())
}

fn grid4_params(path: &Path) -> Result<[String; 4], String> {
    let o = kgs_bin()
        .args(["spectra", "--input", path.to_str().unwrap(), "--b", "0.5"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        o.status.success(),
        "spectra failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    let l1 = v["lambda1"].as_f64().ok_or("no lambda1")?;
    let eta0 = v["eta0"].as_f64().ok_or("no eta0")?;
    Ok([
        "1".into(),
        "0.5".into(),
        format!("{:e}", 0.5 * l1),
        format!("{:e}", 2.0 * eta0),
    ])
}

fn c11() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (g, _) = families::grid_dirichlet(4, 4);
    let input = write_graph(dir.path(), "grid.json", &g);
    let [a, b, l, e] = grid4_params(&input)?;
    let mut outputs = Vec::new();
    for (k, threads) in [(0, None), (1, None), (2, Some("1"))] {
        let out = dir.path().join(format!("run{k}.json"));
        let mut cmd = kgs_bin();
        cmd.args([
            "solve",
            "--input",
            input.to_str().unwrap(),
            "--a",
            &a,
            "--b",
            &b,
            "--lambda",
            &l,
            "--eta",
            &e,
        ])
        .args(["--seed", "1234", "--out", out.to_str().unwrap()]);
        if let Some(t) = threads {
            cmd.env("RAYON_NUM_THREADS", t);
        }
        ensure!(run(&mut cmd)? == 0, "solve run {k} failed");
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure!(outputs[0] == outputs[1], "two runs differ");
    ensure!(outputs[0] == outputs[2], "single-threaded run differs");
    Ok(format!("{} identical bytes, also with one thread", outputs[0].len()))
}

fn c12() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (star, _) = families::star(2);
    let (grid4, _) = families::grid_dirichlet(4, 4);
    let (ring4, _) = families::grid_dirichlet(2, 2);
    let mut cases: Vec<(&str, PathBuf, [String; 4])> = vec![
        (
            "star",
            write_graph(dir.path(), "star.json", &star),
            ["1", "1", "0", "8"].map(String::from),
        ),
        (
            "triangle",
            write_graph(dir.path(), "tri.json", &families::triangle_with_potential(1.0)),
            ["1", "0", "0", "1"].map(String::from),
        ),
    ];
    for (name, g) in [("grid4", &grid4), ("grid4-ring", &ring4)] {
        let p = write_graph(dir.path(), &format!("{name}.json"), g);
        let params = grid4_params(&p)?;
        cases.push((name, p, params));
    }
    let mut energies = Vec::new();
    for (name, input, [a, b, l, e]) in &cases {
        let out = dir.path().join(format!("{name}.sol.json"));
        let code = run(kgs_bin()
            .args([
                "solve",
                "--input",
                input.to_str().unwrap(),
                "--a",
                a,
                "--b",
                b,
                "--lambda",
                l,
                "--eta",
                e,
            ])
            .args(["--out", out.to_str().unwrap()]))?;
        ensure!(code == 0, "{name}: solve exited {code}");
        let code = run(kgs_bin().args([
            "verify",
            "--input",
            input.to_str().unwrap(),
            "--solution",
            out.to_str().unwrap(),
        ]))?;
        ensure!(code == 0, "{name}: verify exited {code}");

        // independent check of the stored function against the edge-sum residual
        let sol: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
        let g = io::read_graph(input).unwrap().build().unwrap();
        let u: Vec<f64> = (0..g.len())
            .map(|i| sol["vertices"][i]["u"].as_f64().unwrap())
            .collect();
        let dom = if *name == "triangle" {
            None
        } else {
            Some(g.marked_domain().unwrap())
        };
        let s = Scalars {
            a: a.parse().unwrap(),
            b: b.parse().unwrap(),
            lambda: l.parse().unwrap(),
            eta: e.parse().unwrap(),
        };
        let worst = common::residual(&g, dom.as_ref(), &s, &u)
            .iter()
            .map(|r| r.1.abs())
            .fold(0.0, f64::max);
        ensure!(worst <= 1e-8, "{name}: residual {worst:e}");
        energies.push(format!("{name} {:.10}", sol["energy"].as_f64().unwrap()));
    }
    Ok(energies.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("closed-form Dirichlet ground state", c1),
        ("closed-form whole-graph ground state", c2),
        ("nonexistence threshold sweep", c3),
        ("Green identities", c4),
        ("gradient consistency", c5),
        ("fiber map properties", c6),
        ("upscaled manifold points", c7),
        ("minimax characterization", c8),
        ("spectral oracles", c9),
        ("embedding inequalities", c10),
        ("determinism", c11),
        ("solve/verify round trip", c12),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let dt = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({dt:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({dt:.2?}): {detail}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    if total >= Duration::from_secs(60) {
        failed += 1;
        println!("total runtime {total:.2?} exceeds 60 s: FAIL");
    } else {
        println!("total runtime {total:.2?}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} failure(s)");
        ExitCode::FAILURE
    }
}
