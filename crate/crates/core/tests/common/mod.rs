//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use monodimer::graph::{Orientation, PlaneGraph};
use monodimer::model::ModelGraph;
use monodimer::product::{boustrophedon_grid, GridSpec, ProductGraph};

pub fn grid(dims: &[usize]) -> (GridSpec, ProductGraph, ModelGraph) {
    let spec = GridSpec::new(dims.to_vec()).unwrap();
    let p = boustrophedon_grid(&spec).unwrap();
    let g = ModelGraph::from_grid(&p, &spec).unwrap();
    (spec, p, g)
}

pub fn grid_point(spec: &GridSpec, weights: &[f64], x: f64) -> HashMap<String, f64> {
    let mut m: HashMap<String, f64> = spec.edge_weights.iter().cloned().zip(weights.iter().copied()).collect();
    m.insert(spec.vertex_weight.clone(), x);
    m
}

/// Every tuple of sides `>= min_side` with at most `max_dim` entries and
/// product at most `max_prod`.
pub fn tuples(max_dim: usize, min_side: usize, max_prod: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (min_side..=max_prod).map(|m| vec![m]).collect();
    while let Some(t) = stack.pop() {
        let prod: usize = t.iter().product();
        if t.len() < max_dim {
            for m in min_side..=max_prod / prod {
                let mut u = t.clone();
                u.push(m);
                stack.push(u);
            }
        }
        out.push(t);
    }
    out.sort();
    out
}

/// Signed loop-vertex sum straight from the definition: every permutation
/// whose cycles are fixed points or even closed walks along edges, a fixed
/// point weighing `x`, a loop `-prod(sgn * a)`.
pub fn loop_vertex_sum(n: usize, edges: &[(usize, usize)], o: &Orientation, x: &[f64], a: &[f64]) -> f64 {
    let mut arc: HashMap<(usize, usize), f64> = HashMap::new();
    for e in 0..edges.len() {
        let (t, h) = (o.tail(e), o.head(e));
        arc.insert((t, h), a[e]);
        arc.insert((h, t), -a[e]);
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut total = 0.0;
    fn rec(
        v: usize,
        n: usize,
        adj: &[Vec<usize>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        arc: &HashMap<(usize, usize), f64>,
        x: &[f64],
        total: &mut f64,
    ) {
        if v == n {
            let mut seen = vec![false; n];
            let mut w = 1.0;
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                if sigma[s] == s {
                    seen[s] = true;
                    w *= x[s];
                    continue;
                }
                let mut len = 0;
                let mut prod = 1.0;
                let mut c = s;
                while !seen[c] {
                    seen[c] = true;
                    prod *= arc[&(c, sigma[c])];
                    c = sigma[c];
                    len += 1;
                }
                if len % 2 == 1 {
                    return;
                }
                w *= -prod;
            }
            *total += w;
            return;
        }
        let choices = std::iter::once(v).chain(adj[v].iter().copied());
        for t in choices.collect::<Vec<_>>() {
            if !used[t] {
                used[t] = true;
                sigma[v] = t;
                rec(v + 1, n, adj, sigma, used, arc, x, total);
                used[t] = false;
            }
        }
    }
    rec(0, n, &adj, &mut sigma, &mut used, &arc, x, &mut total);
    total
}

/// Number of perfect matchings by recursion on the lowest unmatched vertex.
pub fn perfect_matchings(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn rec(matched: &mut Vec<bool>, adj: &[Vec<usize>]) -> u64 {
        let Some(v) = matched.iter().position(|m| !m) else {
            return 1;
        };
        matched[v] = true;
        let mut count = 0;
        for &w in &adj[v] {
            if !matched[w] {
                matched[w] = true;
                count += rec(matched, adj);
                matched[w] = false;
            }
        }
        matched[v] = false;
        count
    }
    rec(&mut vec![false; n], &adj)
}

/// Plane graph on an `r x c` integer lattice with the chosen lattice edges
/// and at most one diagonal per cell (0 none, 1 rising, 2 falling).
pub fn lattice_graph(r: usize, c: usize, horiz: &[bool], vert: &[bool], diag: &[u8]) -> PlaneGraph {
    let id = |i: usize, j: usize| i * c + j;
    let mut coords = Vec::new();
    for i in 0..r {
        for j in 0..c {
            coords.push([j as f64, i as f64]);
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..r {
        for j in 0..c - 1 {
            if horiz[k % horiz.len()] {
                edges.push((id(i, j), id(i, j + 1)));
            }
            k += 1;
        }
    }
    k = 0;
    for i in 0..r - 1 {
        for j in 0..c {
            if vert[k % vert.len()] {
                edges.push((id(i, j), id(i + 1, j)));
            }
            k += 1;
        }
    }
    k = 0;
    for i in 0..r - 1 {
        for j in 0..c - 1 {
            match diag[k % diag.len()] % 3 {
                1 => edges.push((id(i, j), id(i + 1, j + 1))),
                2 => edges.push((id(i, j + 1), id(i + 1, j))),
                _ => {}
            }
            k += 1;
        }
    }
    PlaneGraph::new(r * c, coords, edges).unwrap()
}

/// `e^{-z} I_nu(z)` for `nu` in `{0, 1}`: power series for small `z`,
/// the large-argument expansion otherwise.
pub fn scaled_bessel_i(nu: u32, z: f64) -> f64 {
    if z < 25.0 {
        let mut term = (0.5 * z).powi(nu as i32);
        let mut sum = term;
        for k in 1..200 {
            term *= 0.25 * z * z / (k as f64 * (k + nu as usize) as f64);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        sum * (-z).exp()
    } else {
        let mu = 4.0 * (nu * nu) as f64;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..30 {
            let odd = (2 * k - 1) as f64;
            term *= -(mu - odd * odd) / (k as f64 * 8.0 * z);
            sum += term;
            if term.abs() < 1e-17 {
                break;
            }
        }
        sum / (2.0 * PI * z).sqrt()
    }
}

/// Trapezoid rule in `s = ln t` over `[lo, hi]`.
fn log_trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let n = 40_000;
    let h = (hi - lo) / n as f64;
    let mut s = 0.0;
    for i in 0..=n {
        let u = lo + i as f64 * h;
        let t = u.exp();
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        s += w * f(t) * t;
    }
    s * h
}

/// Densities `[rho_x, rho_a1, ...]` from the Laplace representation
/// `1/D = int_0^inf e^{-tD} dt`, with each angle average a Bessel function.
pub fn laplace_densities(weights: &[f64], x: f64) -> Vec<f64> {
    let x2 = x * x;
    let g = |s: usize, t: f64| scaled_bessel_i(0, 2.0 * t * weights[s] * weights[s]);
    let h = |s: usize, t: f64| {
        let z = 2.0 * t * weights[s] * weights[s];
        2.0 * weights[s] * weights[s] * (scaled_bessel_i(0, z) - scaled_bessel_i(1, z))
    };
    let d = weights.len();
    let hi = (80.0 / x2.max(1e-300)).ln().min(60.0);
    let mut out = vec![log_trapezoid(|t| x2 * (-t * x2).exp() * (0..d).map(|s| g(s, t)).product::<f64>(), -40.0, hi)];
    for target in 0..d {
        out.push(log_trapezoid(
            |t| {
                (-t * x2).exp()
                    * (0..d)
                        .map(|s| if s == target { h(s, t) } else { g(s, t) })
                        .product::<f64>()
            },
            -40.0,
            hi,
        ));
    }
    out
}

/// Composite Simpson rule.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    s * h / 3.0
}

pub fn ref_f(phi: f64, k: f64) -> f64 {
    simpson(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 4000)
}

pub fn ref_e(phi: f64, k: f64) -> f64 {
    simpson(|t| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 4000)
}

pub const SIDE: usize = 4;

fn site(v: usize) -> (i64, i64) {
    ((v % SIDE) as i64, (v / SIDE) as i64)
}

/// Closed walk on the `SIDE x SIDE` grid: the random moves, then straight
/// back to the start. `None` when a lattice edge would be used three times.
pub fn closed_walk(start: usize, moves: &[u8]) -> Option<Vec<usize>> {
    let mut walk = vec![start];
    let (mut i, mut j) = site(start);
    let step = |i: &mut i64, j: &mut i64, m: u8| {
        let (di, dj) = [(1, 0), (-1, 0), (0, 1), (0, -1)][m as usize % 4];
        let (ni, nj) = (*i + di, *j + dj);
        if (0..SIDE as i64).contains(&ni) && (0..SIDE as i64).contains(&nj) {
            *i = ni;
            *j = nj;
            true
        } else {
            false
        }
    };
    for &m in moves {
        if step(&mut i, &mut j, m) {
            walk.push((j as usize) * SIDE + i as usize);
        }
    }
    let (si, sj) = site(start);
    while (i, j) != (si, sj) {
        if i != si {
            i += (si - i).signum();
        } else {
            j += (sj - j).signum();
        }
        walk.push((j as usize) * SIDE + i as usize);
    }
    let mut uses: HashMap<(usize, usize), usize> = HashMap::new();
    for w in walk.windows(2) {
        let c = uses.entry((w[0].min(w[1]), w[0].max(w[1]))).or_default();
        *c += 1;
        if *c > 2 {
            return None;
        }
    }
    Some(walk)
}

pub fn host_of(walk: &[usize]) -> PlaneGraph {
    let coords = (0..SIDE * SIDE)
        .map(|v| {
            let (i, j) = site(v);
            [i as f64, j as f64]
        })
        .collect();
    PlaneGraph::new(SIDE * SIDE, coords, walk.windows(2).map(|w| (w[0], w[1])).collect()).unwrap()
}
