//! Cartesian products of plane graphs, their oriented variant, grid builders
//! and projections of subgraphs onto a factor.
//!
//! A product vertex is a tuple `(t_1, ..., t_k)` of 0-based factor vertices.
//! A `G_i`-edge joins two tuples differing only in coordinate `i` along an
//! edge of factor `i`. In the oriented product such an edge keeps the factor
//! direction when `t_{i+1} + ... + t_k` is even and is reversed otherwise;
//! edges of the last factor are never reversed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_orientation, path_graph, Orientation, PlaneGraph, Point};

/// How product tuples map to flat labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Labelling {
    /// Snake order, used when every factor is a naturally labelled path.
    Boustrophedon,
    /// Mixed radix with factor 1 varying fastest.
    Lexicographic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductEdge {
    pub u: usize,
    pub v: usize,
    pub factor: usize,
    pub factor_edge: usize,
}

#[derive(Clone, Debug)]
pub struct ProductGraph {
    factors: Vec<PlaneGraph>,
    factor_orientations: Vec<Orientation>,
    labelling: Labelling,
    tuples: Vec<Vec<usize>>,
    edges: Vec<ProductEdge>,
    orientation: Orientation,
    adjacency: Vec<Vec<(usize, usize)>>,
    edge_index: HashMap<(usize, usize), usize>,
}

fn sizes(factors: &[PlaneGraph]) -> Vec<usize> {
    factors.iter().map(PlaneGraph::n).collect()
}

/// Flat label of `t` under the snake order, 0-based.
///
/// Iterates left to right: with `N` the number of vertices already
/// combined, an even coordinate appends the previous block as is, an odd
/// one appends it mirrored.
pub fn boustrophedon_label(sizes: &[usize], t: &[usize]) -> usize {
    let mut label = 0;
    let mut block = 1;
    for (&n, &ti) in sizes.iter().zip(t) {
        label = if ti % 2 == 0 {
            ti * block + label
        } else {
            ti * block + (block - 1 - label)
        };
        block *= n;
    }
    label
}

fn lexicographic_label(sizes: &[usize], t: &[usize]) -> usize {
    sizes
        .iter()
        .zip(t)
        .rev()
        .fold(0, |acc, (&n, &ti)| acc * n + ti)
}

impl ProductGraph {
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn n(&self) -> usize {
        self.tuples.len()
    }

    pub fn factors(&self) -> &[PlaneGraph] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &PlaneGraph {
        &self.factors[i]
    }

    pub fn factor_orientation(&self, i: usize) -> &Orientation {
        &self.factor_orientations[i]
    }

    pub fn labelling(&self) -> Labelling {
        self.labelling
    }

    pub fn tuple(&self, label: usize) -> &[usize] {
        &self.tuples[label]
    }

    pub fn label_of(&self, t: &[usize]) -> usize {
        let s = sizes(&self.factors);
        match self.labelling {
            Labelling::Boustrophedon => boustrophedon_label(&s, t),
            Labelling::Lexicographic => lexicographic_label(&s, t),
        }
    }

    pub fn edges(&self) -> &[ProductEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> ProductEdge {
        self.edges[e]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Endpoint pairs in edge order.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// `(neighbour, edge)` pairs at `v`.
    pub fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Whether the `G_i`-edges of the copy containing `t` are reversed.
    pub fn copy_reversed(&self, i: usize, t: &[usize]) -> bool {
        t[i + 1..].iter().sum::<usize>() % 2 == 1
    }

    /// Embeds a product of two paths as a plane grid with coordinates
    /// `(t_1 + 1, t_2 + 1)`, keeping labels and orientation.
    pub fn to_plane_graph(&self) -> Result<(PlaneGraph, Orientation)> {
        if self.k() != 2 || !self.factors.iter().all(PlaneGraph::is_natural_path) {
            return Err(Error::InvalidInput(
                "only products of two paths have a built-in planar drawing".into(),
            ));
        }
        let coords: Vec<Point> = self
            .tuples
            .iter()
            .map(|t| [(t[0] + 1) as f64, (t[1] + 1) as f64])
            .collect();
        let g = PlaneGraph::new(self.n(), coords, self.edge_pairs())?;
        let o = Orientation::new(&g, self.orientation.pairs().to_vec())?;
        Ok((g, o))
    }
}

/// Product of the factors, each carrying its canonical orientation.
pub fn cartesian_product(factors: &[PlaneGraph]) -> Result<ProductGraph> {
    let with_o: Vec<(PlaneGraph, Orientation)> = factors
        .iter()
        .map(|g| (g.clone(), canonical_orientation(g)))
        .collect();
    oriented_cartesian_product(&with_o)
}

pub fn oriented_cartesian_product(factors: &[(PlaneGraph, Orientation)]) -> Result<ProductGraph> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("a product needs at least one factor".into()));
    }
    for (i, (g, o)) in factors.iter().enumerate() {
        if o.len() != g.num_edges() {
            return Err(Error::InvalidInput(format!(
                "orientation of factor {} covers {} of {} edges",
                i + 1,
                o.len(),
                g.num_edges()
            )));
        }
    }
    let graphs: Vec<PlaneGraph> = factors.iter().map(|(g, _)| g.clone()).collect();
    let orients: Vec<Orientation> = factors.iter().map(|(_, o)| o.clone()).collect();
    let s = sizes(&graphs);
    let total = s.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
    let Some(total) = total else {
        return Err(Error::InvalidSize("product has too many vertices".into()));
    };
    let labelling = if graphs.iter().all(PlaneGraph::is_natural_path) {
        Labelling::Boustrophedon
    } else {
        Labelling::Lexicographic
    };
    let label = |t: &[usize]| match labelling {
        Labelling::Boustrophedon => boustrophedon_label(&s, t),
        Labelling::Lexicographic => lexicographic_label(&s, t),
    };
    let mut tuples = vec![Vec::new(); total];
    let mut t = vec![0; s.len()];
    for _ in 0..total {
        tuples[label(&t)] = t.clone();
        for (ti, &n) in t.iter_mut().zip(&s) {
            *ti += 1;
            if *ti < n {
                break;
            }
            *ti = 0;
        }
    }
    let mut raw = Vec::new();
    for (from, tup) in tuples.iter().enumerate() {
        for (i, g) in graphs.iter().enumerate() {
            for (fe, &(a, b)) in g.edges().iter().enumerate() {
                if tup[i] != a {
                    continue;
                }
                let mut other = tup.clone();
                other[i] = b;
                let to = label(&other);
                let (tail_f, _) = orients[i].pairs()[fe];
                let reversed = tup[i + 1..].iter().sum::<usize>() % 2 == 1;
                let forward = (tail_f == a) != reversed;
                let dir = if forward { (from, to) } else { (to, from) };
                raw.push((
                    ProductEdge {
                        u: from.min(to),
                        v: from.max(to),
                        factor: i,
                        factor_edge: fe,
                    },
                    dir,
                ));
            }
        }
    }
    raw.sort_by_key(|(e, _)| (e.u, e.v, e.factor, e.factor_edge));
    let edges: Vec<ProductEdge> = raw.iter().map(|(e, _)| *e).collect();
    let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.u, e.v)).collect();
    let orientation = Orientation::from_edges(&pairs, raw.iter().map(|(_, d)| *d).collect())?;
    let mut adjacency = vec![Vec::new(); total];
    let mut edge_index = HashMap::with_capacity(edges.len());
    for (idx, e) in edges.iter().enumerate() {
        adjacency[e.u].push((e.v, idx));
        adjacency[e.v].push((e.u, idx));
        edge_index.insert((e.u, e.v), idx);
    }
    Ok(ProductGraph {
        factors: graphs,
        factor_orientations: orients,
        labelling,
        tuples,
        edges,
        orientation,
        adjacency,
        edge_index,
    })
}

/// Grid dimensions plus the symbols used for its weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dims: Vec<usize>,
    #[serde(default = "default_vertex_weight")]
    pub vertex_weight: String,
    #[serde(default)]
    pub edge_weights: Vec<String>,
}

fn default_vertex_weight() -> String {
    "x".into()
}

/// `a, b, c` up to three dimensions, `a1 .. ad` beyond.
pub fn default_edge_names(d: usize) -> Vec<String> {
    if d <= 3 {
        ["a", "b", "c"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("a{i}")).collect()
    }
}

impl GridSpec {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        let names = default_edge_names(dims.len());
        let spec = GridSpec {
            dims,
            vertex_weight: default_vertex_weight(),
            edge_weights: names,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_weights(mut self, vertex: &str, edges: Vec<String>) -> Result<Self> {
        self.vertex_weight = vertex.to_string();
        self.edge_weights = edges;
        self.validate()?;
        Ok(self)
    }

    /// Fills in default edge names when none were given, then checks shape.
    pub fn normalized(mut self) -> Result<Self> {
        if self.edge_weights.is_empty() {
            self.edge_weights = default_edge_names(self.dims.len());
        }
        self.validate()?;
        Ok(self)
    }

    /// Reads `{"dims": [...], "weights": {"vertex": "x", "edges": [...]}}`;
    /// `weights` and either of its keys may be omitted.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Names {
            vertex: Option<String>,
            #[serde(default)]
            edges: Vec<String>,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            dims: Vec<usize>,
            weights: Option<Names>,
        }
        let f: File = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let (vertex, edges) = match f.weights {
            Some(n) => (n.vertex.unwrap_or_else(default_vertex_weight), n.edges),
            None => (default_vertex_weight(), Vec::new()),
        };
        GridSpec {
            dims: f.dims,
            vertex_weight: vertex,
            edge_weights: edges,
        }
        .normalized()
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.dims.iter().product()
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::InvalidSize("a grid needs at least one dimension".into()));
        }
        if self.dims.contains(&0) {
            return Err(Error::InvalidSize("grid dimensions must be positive".into()));
        }
        if self.edge_weights.len() != self.dims.len() {
            return Err(Error::InvalidInput(format!(
                "{} edge weights for {} dimensions",
                self.edge_weights.len(),
                self.dims.len()
            )));
        }
        Ok(())
    }
}

/// Oriented product of canonically oriented paths of the given lengths.
pub fn boustrophedon_grid(spec: &GridSpec) -> Result<ProductGraph> {
    spec.validate()?;
    let factors = spec
        .dims
        .iter()
        .map(|&m| {
            let p = path_graph(m)?;
            let o = canonical_orientation(&p);
            Ok((p, o))
        })
        .collect::<Result<Vec<_>>>()?;
    oriented_cartesian_product(&factors)
}

/// Edges of a product subgraph contracted onto one factor.
///
/// `graph` has every vertex of the factor (with its coordinates) and one
/// parallel edge per `G_i`-edge occurrence in the subgraph;
/// `source_edges[j]` is the factor edge behind multigraph edge `j`.
#[derive(Clone, Debug)]
pub struct ProjectionMultigraph {
    pub factor: usize,
    pub graph: PlaneGraph,
    pub source_edges: Vec<usize>,
}

impl ProjectionMultigraph {
    pub fn num_edges(&self) -> usize {
        self.source_edges.len()
    }

    /// Multiplicity of each factor edge.
    pub fn multiplicities(&self) -> HashMap<usize, usize> {
        let mut m = HashMap::new();
        for &e in &self.source_edges {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }
}

fn check_factor(p: &ProductGraph, i: usize) -> Result<()> {
    if i >= p.k() {
        return Err(Error::FactorIndex { index: i + 1, k: p.k() });
    }
    Ok(())
}

/// i-projection of the subgraph given by product edge indices (repeats
/// allowed).
pub fn i_projection(p: &ProductGraph, sub_edges: &[usize], i: usize) -> Result<ProjectionMultigraph> {
    check_factor(p, i)?;
    let base = p.factor(i);
    let mut edges = Vec::new();
    let mut source = Vec::new();
    for &e in sub_edges {
        let pe = p
            .edges
            .get(e)
            .ok_or_else(|| Error::InvalidInput(format!("no product edge {}", e + 1)))?;
        if pe.factor == i {
            edges.push((p.tuples[pe.u][i], p.tuples[pe.v][i]));
            source.push(pe.factor_edge);
        }
    }
    let graph = PlaneGraph::new(base.n(), base.coords().to_vec(), edges)?;
    Ok(ProjectionMultigraph {
        factor: i,
        graph,
        source_edges: source,
    })
}

/// One traversal step of a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub from: usize,
    pub to: usize,
    pub edge: usize,
}

/// Steps of the closed loop `w_0 -> w_1 -> ... -> w_0`; a two-vertex loop
/// is a doubled edge and uses its edge twice.
pub fn loop_steps(p: &ProductGraph, lp: &[usize]) -> Result<Vec<Step>> {
    if lp.len() < 2 {
        return Err(Error::InvalidInput("a loop needs at least two vertices".into()));
    }
    (0..lp.len())
        .map(|j| {
            let (from, to) = (lp[j], lp[(j + 1) % lp.len()]);
            let edge = p.edge_between(from, to).ok_or_else(|| {
                Error::InvalidInput(format!("loop step {} -> {} is not an edge", from + 1, to + 1))
            })?;
            Ok(Step { from, to, edge })
        })
        .collect()
}

/// Projection of a loop together with its closed trail: the factor-`i`
/// vertex sequence visited by the loop's `G_i`-steps, with multigraph edge
/// `j` being the `j`-th such step.
pub fn project_loop(
    p: &ProductGraph,
    lp: &[usize],
    i: usize,
) -> Result<(ProjectionMultigraph, Vec<usize>)> {
    let steps = loop_steps(p, lp)?;
    let sub: Vec<usize> = steps.iter().map(|s| s.edge).collect();
    let proj = i_projection(p, &sub, i)?;
    let trail = steps
        .iter()
        .filter(|s| p.edges[s.edge].factor == i)
        .map(|s| p.tuples[s.from][i])
        .collect();
    Ok((proj, trail))
}

/// Number of loop edges, over all copies of factor `i` whose edges are
/// reversed in the oriented product. Undefined for the last factor.
pub fn e_i_count(p: &ProductGraph, lp: &[usize], i: usize) -> Result<usize> {
    check_factor(p, i)?;
    if i + 1 == p.k() {
        return Err(Error::FactorIndex { index: i + 1, k: p.k() });
    }
    let steps = loop_steps(p, lp)?;
    Ok(steps
        .iter()
        .filter(|s| {
            let e = p.edges[s.edge];
            e.factor == i && p.copy_reversed(i, &p.tuples[e.u])
        })
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(dims: &[usize]) -> ProductGraph {
        boustrophedon_grid(&GridSpec::new(dims.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn grid_spec_json() {
        let s = GridSpec::from_json(r#"{"dims": [2, 3], "weights": {"edges": ["p", "q"]}}"#).unwrap();
        assert_eq!(s.vertex_weight, "x");
        assert_eq!(s.edge_weights, vec!["p", "q"]);
        let s = GridSpec::from_json(r#"{"dims": [2, 2, 2, 2]}"#).unwrap();
        assert_eq!(s.edge_weights[3], "a4");
        assert!(GridSpec::from_json(r#"{"dims": [2], "weights": {"edges": ["a", "b"]}}"#).is_err());
        assert!(matches!(GridSpec::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn counts() {
        let p = cartesian_product(&[path_graph(4).unwrap(), path_graph(3).unwrap()]).unwrap();
        assert_eq!((p.n(), p.num_edges()), (12, 17));
        let cube = grid(&[2, 2, 2]);
        assert_eq!((cube.n(), cube.num_edges()), (8, 12));
        assert!(cartesian_product(&[]).is_err());
    }

    #[test]
    fn two_dim_labels() {
        let p = grid(&[4, 3]);
        assert_eq!(p.label_of(&[0, 1]) + 1, 8);
        for l in 0..p.n() {
            let t = p.tuple(l);
            let (pp, q) = (t[0] + 1, t[1] + 1);
            let expect = if q % 2 == 1 {
                (q - 1) * 4 + pp
            } else {
                q * 4 - pp + 1
            };
            assert_eq!(l + 1, expect);
        }
    }

    #[test]
    fn one_dim_is_identity() {
        let p = grid(&[5]);
        assert!((0..5).all(|l| p.tuple(l) == [l]));
        assert_eq!(p.orientation(), &canonical_orientation(&path_graph(5).unwrap()));
    }

    #[test]
    fn canonical_matches_oriented_product() {
        for dims in [vec![4, 3], vec![3, 2, 3], vec![2, 2], vec![3, 3, 2, 2]] {
            let p = grid(&dims);
            for (e, &(t, h)) in p.orientation().pairs().iter().enumerate() {
                assert!(t < h, "edge {e} of {dims:?} runs downward");
            }
        }
    }

    #[test]
    fn projection_of_square() {
        let p = grid(&[2, 2]);
        let lp = [0, 1, 2, 3];
        for i in 0..2 {
            let (proj, trail) = project_loop(&p, &lp, i).unwrap();
            assert_eq!(proj.num_edges(), 2);
            assert_eq!(proj.multiplicities().len(), 1);
            assert_eq!(trail.len(), 2);
        }
        assert!(matches!(project_loop(&p, &lp, 2), Err(Error::FactorIndex { .. })));
    }

    #[test]
    fn e_i_of_doubled_edges() {
        let p = grid(&[2, 2]);
        let e0 = e_i_count(&p, &[0, 1], 0).unwrap();
        let e1 = e_i_count(&p, &[2, 3], 0).unwrap();
        assert_eq!((e0, e1), (0, 2));
        assert!(e_i_count(&p, &[0, 1], 1).is_err());
        assert_eq!(e_i_count(&p, &[0, 3], 0).unwrap(), 0);
    }

    #[test]
    fn plane_drawing_of_grid() {
        let (g, o) = grid(&[3, 4]).to_plane_graph().unwrap();
        assert_eq!(g.bounded_faces().len(), 6);
        assert!(crate::graph::is_pfaffian(&g, &o));
        assert!(grid(&[2, 2, 2]).to_plane_graph().is_err());
    }
}
