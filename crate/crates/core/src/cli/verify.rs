//! Check suites behind `monodimer verify`.

use std::collections::HashMap;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::VerifyArgs;
use crate::asymptotics::{density_sweep, free_energy_3d, rho_3, rho_3_elliptic, rho_3_triple, rho_d_x, DensityOptions};
use crate::closed_form::{z3_grid, zd_grid};
use crate::error::Result;
use crate::graph::{canonical_orientation, is_pfaffian, path_graph, random_pfaffian_orientation, PlaneGraph};
use crate::model::{
    all_compatible_decompositions, build_K, directed_even_loops, orientation_sign, partition_bruteforce,
    sign_cycle_multiset, sign_of_loop_projections, sign_of_loop_with_decompositions, ModelGraph,
    MAX_CONFIG_VERTICES,
};
use crate::poly::{det_fraction_free, det_numeric, nth_root_poly, MPoly};
use crate::product::{boustrophedon_grid, oriented_cartesian_product, GridSpec, ProductGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Grids,
    Signs,
    Asymptotics,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: String,
    pub max_residual: f64,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Accumulates residuals of one check against a tolerance.
struct Tally {
    name: String,
    tol: f64,
    worst: f64,
    cases: usize,
    detail: Option<String>,
}

impl Tally {
    fn new(name: &str, tol: f64) -> Self {
        Tally {
            name: name.to_string(),
            tol,
            worst: 0.0,
            cases: 0,
            detail: None,
        }
    }

    fn record(&mut self, residual: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        let bad = residual.is_nan() || residual > self.tol;
        if bad && self.detail.is_none() {
            self.detail = Some(format!("first failure: {}", case()));
        }
        self.worst = if residual.is_nan() { f64::INFINITY } else { self.worst.max(residual) };
    }

    fn exact(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.record(if ok { 0.0 } else { 1.0 }, case);
    }

    fn try_record(&mut self, r: Result<f64>, case: impl Fn() -> String) {
        match r {
            Ok(v) => self.record(v, case),
            Err(e) => self.record(f64::INFINITY, || format!("{}: {e}", case())),
        }
    }

    fn finish(self) -> CheckResult {
        let pass = self.worst <= self.tol && self.detail.is_none();
        CheckResult {
            check: self.name,
            status: if pass { "pass" } else { "fail" }.into(),
            max_residual: self.worst,
            cases: self.cases,
            detail: self.detail,
        }
    }
}

pub fn run(args: &VerifyArgs) -> Result<Vec<CheckResult>> {
    let suites = match (args.suite, &args.dims) {
        (Some(s), _) => vec![s],
        (None, Some(_)) => vec![Suite::Grids],
        (None, None) => vec![Suite::Grids, Suite::Signs, Suite::Asymptotics],
    };
    let mut out = Vec::new();
    for s in suites {
        match s {
            Suite::Grids => out.extend(grids(args)?),
            Suite::Signs => out.extend(signs(args)?),
            Suite::Asymptotics => out.extend(asymptotics(args)?),
        }
    }
    Ok(out)
}

/// Tuples of sides in `min..` with at most `max_dim` entries and product at
/// most `max_prod`.
pub(crate) fn grid_tuples(max_dim: usize, min_side: usize, max_prod: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, prod: usize, max_dim: usize, min_side: usize, max_prod: usize, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_dim {
            return;
        }
        let mut m = min_side.max(1);
        while prod * m <= max_prod {
            cur.push(m);
            rec(cur, prod * m, max_dim, min_side, max_prod, out);
            cur.pop();
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 1, max_dim, min_side, max_prod, &mut out);
    out
}

fn grid_model(dims: &[usize]) -> Result<(GridSpec, ProductGraph, ModelGraph)> {
    let spec = GridSpec::new(dims.to_vec())?;
    let p = boustrophedon_grid(&spec)?;
    let g = ModelGraph::from_grid(&p, &spec)?;
    Ok((spec, p, g))
}

fn label(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x")
}

fn grids(args: &VerifyArgs) -> Result<Vec<CheckResult>> {
    let only = args.dims.clone();
    let pick = |max_prod: usize| match &only {
        Some(d) => {
            if d.iter().product::<usize>() <= max_prod {
                vec![d.clone()]
            } else {
                Vec::new()
            }
        }
        None => grid_tuples(args.max_dim, 2, max_prod),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    let mut oracle = Tally::new("oracle_vs_determinant", 0.0);
    for dims in pick(14.min(MAX_CONFIG_VERTICES)) {
        let (_, _, g) = grid_model(&dims)?;
        let det = det_fraction_free(&build_K(&g));
        match partition_bruteforce(&g) {
            Ok(z) => oracle.exact(z == det, || label(&dims)),
            Err(e) => oracle.record(f64::INFINITY, || format!("{}: {e}", label(&dims))),
        }
    }

    let mut closed = Tally::new("closed_form_vs_determinant", 1e-8);
    for dims in pick(64) {
        let (spec, _, g) = grid_model(&dims)?;
        let w: Vec<f64> = (0..dims.len()).map(|_| rng.gen_range(0.5..2.0)).collect();
        let x: f64 = rng.gen_range(0.5..2.0);
        let mut point: HashMap<String, f64> = spec.edge_weights.iter().cloned().zip(w.iter().copied()).collect();
        point.insert(spec.vertex_weight.clone(), x);
        let det = det_numeric(&build_K(&g), &point)?;
        let rel = |v: f64| (v - det).abs() / det.abs().max(f64::MIN_POSITIVE);
        closed.try_record(zd_grid(&dims, &w, x).map(|r| rel(r.value)), || label(&dims));
        if let [l, m, n] = dims[..] {
            closed.try_record(z3_grid(l, m, n, w[0], w[1], w[2], x).map(|r| rel(r.value)), || {
                format!("{} (three-dimensional table)", label(&dims))
            });
        }
    }

    let mut power = Tally::new("perfect_power", 0.0);
    for dims in pick(16) {
        if dims.len() < 2 || dims.iter().any(|m| m % 2 == 1) {
            continue;
        }
        let (_, _, g) = grid_model(&dims)?;
        let z = det_fraction_free(&build_K(&g));
        let r = 1u32 << (dims.len() - 1);
        let ok = nth_root_poly(&z, r).is_some_and(|q| q.pow(r).is_ok_and(|p| p == z));
        power.exact(ok, || label(&dims));
    }
    Ok(vec![oracle.finish(), closed.finish(), power.finish()])
}

fn paths(sides: &[usize]) -> Result<Vec<PlaneGraph>> {
    sides.iter().map(|&m| path_graph(m)).collect()
}

fn signs(args: &VerifyArgs) -> Result<Vec<CheckResult>> {
    let fixtures: [&[usize]; 3] = [&[2, 2], &[3, 2], &[2, 2, 2]];
    let mut identity = Tally::new("loop_sign_identity", 0.0);
    let mut choice = Tally::new("decomposition_choice", 0.0);
    for dims in fixtures {
        let (_, p, g) = grid_model(dims)?;
        for lp in directed_even_loops(&g)? {
            let want = orientation_sign(&p, &lp)?;
            let got = sign_of_loop_projections(&p, &lp)?;
            identity.exact(got == want, || format!("{} loop {:?}", label(dims), lp));
            let mut consistent = true;
            let alt = sign_of_loop_with_decompositions(&p, &lp, |proj, trail| {
                let all = all_compatible_decompositions(&proj.graph, trail)?;
                let first = sign_cycle_multiset(&all[0], &proj.graph)?;
                for d in &all[1..] {
                    consistent &= sign_cycle_multiset(d, &proj.graph)? == first;
                }
                Ok(all[0].clone())
            })?;
            choice.exact(consistent && alt == want, || format!("{} loop {:?}", label(dims), lp));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut independence = Tally::new("orientation_independence", 0.0);
    let vars = [MPoly::var("a"), MPoly::var("b"), MPoly::var("c")];
    for sides in [&[3usize, 3][..], &[2, 3, 2][..]] {
        let factors = paths(sides)?;
        let model = |orients: Vec<_>| -> Result<MPoly> {
            let pairs: Vec<_> = factors.iter().cloned().zip(orients).collect();
            let p = oriented_cartesian_product(&pairs)?;
            let g = ModelGraph::from_product(&p, &MPoly::var("x"), &vars)?;
            Ok(det_fraction_free(&build_K(&g)))
        };
        let canonical = factors.iter().map(canonical_orientation).collect();
        let reference = model(canonical)?;
        for t in 0..args.trials {
            let orients = factors
                .iter()
                .map(|f| random_pfaffian_orientation(f, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let pfaffian = factors.iter().zip(&orients).all(|(f, o)| is_pfaffian(f, o));
            let det = model(orients)?;
            independence.exact(pfaffian && det == reference, || format!("{} trial {t}", label(sides)));
        }
    }
    Ok(vec![identity.finish(), choice.finish(), independence.finish()])
}

fn asymptotics(args: &VerifyArgs) -> Result<Vec<CheckResult>> {
    let opts = DensityOptions {
        seed: args.seed,
        ..DensityOptions::default()
    };
    let mut anchor = Tally::new("rho3x_anchor", 1e-3);
    let r = rho_3(1.0, 1.0, 1.0, 1.0)?;
    anchor.record((r.rho_x - 0.1705).abs(), || format!("rho_x = {}", r.rho_x));

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut routes = Tally::new("elliptic_vs_triple", 1e-6);
    let mut derivative = Tally::new("free_energy_derivative", 1e-4);
    for _ in 0..3 {
        let w: Vec<f64> = (0..4).map(|_| rng.gen_range(0.5..2.0)).collect();
        let case = || format!("{w:?}");
        let triple = rho_3_triple(w[0], w[1], w[2], w[3], &opts)?;
        let ell = rho_3_elliptic(w[0], w[1], w[2], w[3], &opts)?;
        let gap = triple.values.iter().zip(&ell).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        routes.record(gap, case);
        let h: f64 = 1e-3;
        let fd = (free_energy_3d(w[0] * h.exp(), w[1], w[2], w[3])? - free_energy_3d(w[0] * (-h).exp(), w[1], w[2], w[3])?)
            / (2.0 * h);
        derivative.record((fd - triple.values[1]).abs(), case);
    }

    let mut sum_rule = Tally::new("sum_rule", 1e-5);
    for d in 3..=5 {
        let r = rho_d_x(d, &vec![1.0; d], 1.0, &opts)?;
        sum_rule.record(r.sum_rule_residual(), || format!("d = {d}"));
    }

    let mut monotone = Tally::new("rho_x_decreasing", 0.0);
    let sweep = density_sweep(3..=6, 1.0, &opts)?;
    for pair in sweep.windows(2) {
        let rise = pair[1].rho_x - pair[0].rho_x;
        monotone.record(if rise < 0.0 { 0.0 } else { rise.max(f64::MIN_POSITIVE) }, || {
            format!("d = {} to {}", pair[0].d, pair[1].d)
        });
    }
    Ok(vec![
        anchor.finish(),
        routes.finish(),
        derivative.finish(),
        sum_rule.finish(),
        monotone.finish(),
    ])
}
