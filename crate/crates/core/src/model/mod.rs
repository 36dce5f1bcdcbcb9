//! The loop-vertex model: weighted oriented graphs, their generalised
//! adjacency matrices, brute-force configuration sums and the sign calculus
//! of cycle decompositions.

mod configs;
mod signs;

use std::collections::HashMap;
use std::sync::Arc;

pub use configs::{
    collect_configs, directed_even_loops, enumerate_configs, partition_bruteforce, LoopConfig,
    MAX_CONFIG_VERTICES,
};
pub use signs::{
    all_compatible_decompositions, all_decompositions, compatible_decomposition,
    orientation_sign, sign_cycle_multiset, sign_of_loop_projections,
    sign_of_loop_with_decompositions, Cycle, CycleMultiset, Trail, MAX_DECOMPOSITION_EDGES,
};

use crate::error::{Error, Result};
use crate::graph::{Orientation, PlaneGraph};
use crate::poly::{MPoly, PolyMatrix};
use crate::product::{GridSpec, ProductGraph};

/// A simple graph with an orientation, vertex weights and edge weights.
#[derive(Clone, Debug)]
pub struct ModelGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    orientation: Orientation,
    vertex_weights: Vec<MPoly>,
    edge_weights: Vec<MPoly>,
    adjacency: Vec<Vec<(usize, usize)>>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl ModelGraph {
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        orientation: Orientation,
        vertex_weights: Vec<MPoly>,
        edge_weights: Vec<MPoly>,
    ) -> Result<Self> {
        if vertex_weights.len() < n {
            return Err(Error::MissingWeight(format!("vertex {}", vertex_weights.len() + 1)));
        }
        if edge_weights.len() < edges.len() {
            return Err(Error::MissingWeight(format!("edge {}", edge_weights.len() + 1)));
        }
        if vertex_weights.len() > n || edge_weights.len() > edges.len() {
            return Err(Error::InvalidInput("more weights than graph elements".into()));
        }
        if orientation.len() != edges.len() {
            return Err(Error::InvalidInput("orientation does not cover every edge".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidInput(format!("bad edge ({}, {})", u + 1, v + 1)));
            }
            let (t, h) = orientation.pairs()[e];
            if !((t, h) == (u, v) || (t, h) == (v, u)) {
                return Err(Error::InvalidInput(format!("orientation of edge {} mismatched", e + 1)));
            }
            if edge_index.insert((u.min(v), u.max(v)), e).is_some() {
                return Err(Error::InvalidInput(format!(
                    "parallel edges between {} and {}",
                    u + 1,
                    v + 1
                )));
            }
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(ModelGraph {
            n,
            edges,
            orientation,
            vertex_weights,
            edge_weights,
            adjacency,
            edge_index,
        })
    }

    /// Plane graph with the given orientation, one vertex weight for all
    /// vertices and per-edge symbols from [`edge_symbols`].
    pub fn from_plane(g: &PlaneGraph, o: &Orientation, vertex_weight: &MPoly) -> Result<Self> {
        Self::new(
            g.n(),
            g.edges().to_vec(),
            o.clone(),
            vec![vertex_weight.clone(); g.n()],
            edge_symbols(g.edges()),
        )
    }

    /// Product with its oriented-product orientation; every `G_i`-edge gets
    /// `factor_weights[i]`.
    pub fn from_product(p: &ProductGraph, vertex_weight: &MPoly, factor_weights: &[MPoly]) -> Result<Self> {
        if factor_weights.len() < p.k() {
            return Err(Error::MissingWeight(format!("factor {}", factor_weights.len() + 1)));
        }
        let edge_weights = p.edges().iter().map(|e| factor_weights[e.factor].clone()).collect();
        Self::new(
            p.n(),
            p.edge_pairs(),
            p.orientation().clone(),
            vec![vertex_weight.clone(); p.n()],
            edge_weights,
        )
    }

    /// Grid with the symbols named in `spec`.
    pub fn from_grid(p: &ProductGraph, spec: &GridSpec) -> Result<Self> {
        let weights: Vec<MPoly> = spec.edge_weights.iter().map(|s| MPoly::var(s)).collect();
        Self::from_product(p, &MPoly::var(&spec.vertex_weight), &weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn vertex_weight(&self, v: usize) -> &MPoly {
        &self.vertex_weights[v]
    }

    pub fn edge_weight(&self, e: usize) -> &MPoly {
        &self.edge_weights[e]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// `+1` when the edge between `u` and `v` points `u -> v`.
    pub fn sgn(&self, u: usize, v: usize) -> Option<i32> {
        self.edge_between(u, v).map(|e| self.orientation.sign(e, u))
    }

    /// Variables of all weights, sorted.
    pub fn universe(&self) -> Arc<[String]> {
        let mut all: Vec<String> = self
            .vertex_weights
            .iter()
            .chain(&self.edge_weights)
            .flat_map(|p| p.vars().iter().cloned())
            .collect();
        all.sort();
        all.dedup();
        Arc::from(all)
    }

    /// `-prod sgn(v_i, v_{i+1}) a_{v_i v_{i+1}}` over the closed loop; a
    /// two-vertex loop is a doubled edge and weighs `+a^2`.
    pub fn loop_weight(&self, lp: &[usize]) -> Result<MPoly> {
        if lp.len() % 2 == 1 {
            return Err(Error::OddLoop(lp.len()));
        }
        let mut sign = -1;
        let mut w = MPoly::one();
        for j in 0..lp.len() {
            let (u, v) = (lp[j], lp[(j + 1) % lp.len()]);
            let e = self.edge_between(u, v).ok_or_else(|| {
                Error::InvalidInput(format!("loop step {} -> {} is not an edge", u + 1, v + 1))
            })?;
            sign *= self.orientation.sign(e, u);
            w = w.try_mul(&self.edge_weights[e])?;
        }
        Ok(if sign < 0 { w.neg() } else { w })
    }
}

/// Symbols `a{u}{v}` with 1-based labels, lower label first; an underscore
/// separates the labels once either has two digits.
pub fn edge_symbols(edges: &[(usize, usize)]) -> Vec<MPoly> {
    edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (u.min(v) + 1, u.max(v) + 1);
            let name = if a < 10 && b < 10 {
                format!("a{a}{b}")
            } else {
                format!("a{a}_{b}")
            };
            MPoly::var(&name)
        })
        .collect()
}

/// The generalised adjacency matrix: vertex weights on the diagonal, `+a`
/// at `(u, v)` and `-a` at `(v, u)` for each edge `u -> v`.
#[allow(non_snake_case)]
pub fn build_K(g: &ModelGraph) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(g.n);
    for v in 0..g.n {
        m.set(v, v, g.vertex_weights[v].clone());
    }
    for (e, &(t, h)) in g.orientation.pairs().iter().enumerate() {
        let a = &g.edge_weights[e];
        m.set(t, h, a.clone());
        m.set(h, t, a.neg());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_orientation, path_graph};
    use crate::poly::{det_fraction_free, parse_poly};

    #[test]
    fn single_edge_matrix() {
        let p = path_graph(2).unwrap();
        let g = ModelGraph::from_plane(&p, &canonical_orientation(&p), &MPoly::var("x")).unwrap();
        let k = build_K(&g);
        assert_eq!(k.get(0, 1), &MPoly::var("a12"));
        assert_eq!(k.get(1, 0), &MPoly::var("a12").neg());
        assert_eq!(det_fraction_free(&k), parse_poly("x^2 + a12^2").unwrap());
    }

    #[test]
    fn missing_weights() {
        let p = path_graph(3).unwrap();
        let err = ModelGraph::new(
            3,
            p.edges().to_vec(),
            canonical_orientation(&p),
            vec![MPoly::var("x"); 3],
            vec![MPoly::var("a")],
        );
        assert!(matches!(err, Err(Error::MissingWeight(_))));
    }

    #[test]
    fn doubled_edge_is_positive() {
        let p = path_graph(2).unwrap();
        let g = ModelGraph::from_plane(&p, &canonical_orientation(&p), &MPoly::var("x")).unwrap();
        assert_eq!(g.loop_weight(&[0, 1]).unwrap(), parse_poly("a12^2").unwrap());
        assert_eq!(g.loop_weight(&[1, 0]).unwrap(), parse_poly("a12^2").unwrap());
        assert_eq!(g.loop_weight(&[0, 1, 0]), Err(Error::OddLoop(3)));
    }
}
