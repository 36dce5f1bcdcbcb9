//! Plane graphs with straight-line embeddings.
//!
//! A [`PlaneGraph`] owns vertex coordinates and an edge list (parallel edges
//! allowed, drawn coincident). The rotation system is derived from the
//! coordinates, faces come from the usual dart traversal, and enclosure
//! counts are computed geometrically.

pub mod geometry;
mod json;
mod orientation;

use std::collections::HashSet;

pub use geometry::Point;
pub use json::GraphFile;
pub use orientation::{
    canonical_orientation, is_pfaffian, pfaffian_orientation, random_pfaffian_orientation,
    Orientation,
};

use crate::error::{Error, Result};
use geometry::{on_segment, point_in_polygon, segments_intersect, signed_area};

/// One side of an edge, traversed from `tail` to `head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
}

/// A face of the embedding. Bounded faces are walked counterclockwise; the
/// face always lies to the left of each dart.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub boundary: Vec<Dart>,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Tails of the boundary darts, in walk order.
    pub fn vertices(&self) -> Vec<usize> {
        self.boundary.iter().map(|d| d.tail).collect()
    }
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    n: usize,
    coords: Vec<Point>,
    edges: Vec<(usize, usize)>,
    /// Dart ids leaving each vertex in counterclockwise order. Dart `2e`
    /// runs `edges[e].0 -> edges[e].1`, dart `2e + 1` the other way.
    rotation: Vec<Vec<usize>>,
    dart_pos: Vec<usize>,
}

/// Raw face walks plus bookkeeping shared with the orientation code.
pub(crate) struct FaceWalks {
    pub walks: Vec<Vec<usize>>,
    pub outer: Vec<bool>,
    pub face_of_dart: Vec<usize>,
}

impl PlaneGraph {
    /// Validates the drawing and builds the rotation system.
    pub fn new(n: usize, coords: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("a plane graph needs at least one vertex".into()));
        }
        if coords.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::Geometry("coordinates must be finite".into()));
        }
        let mut seen = HashSet::new();
        for (v, p) in coords.iter().enumerate() {
            let key = ((p[0] + 0.0).to_bits(), (p[1] + 0.0).to_bits());
            if !seen.insert(key) {
                return Err(Error::Embedding(format!("vertex {} repeats a position", v + 1)));
            }
        }
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) uses a vertex outside 1..{n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {}", u + 1)));
            }
        }
        check_drawing(&coords, &edges)?;
        let mut g = PlaneGraph {
            n,
            coords,
            edges,
            rotation: Vec::new(),
            dart_pos: Vec::new(),
        };
        g.build_rotation();
        g.check_euler()?;
        Ok(g)
    }

    fn build_rotation(&mut self) {
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            rot[u].push(2 * e);
            rot[v].push(2 * e + 1);
        }
        for (v, darts) in rot.iter_mut().enumerate() {
            let c = self.coords[v];
            let key = |d: usize| {
                let h = self.dart(d).head;
                let p = self.coords[h];
                (p[1] - c[1]).atan2(p[0] - c[0])
            };
            // Parallel darts share an angle: ascending edge index at the
            // lower endpoint, descending at the higher one.
            darts.sort_by(|&a, &b| {
                key(a).total_cmp(&key(b)).then_with(|| {
                    let (ea, eb) = (a / 2, b / 2);
                    if v < self.dart(a).head {
                        ea.cmp(&eb)
                    } else {
                        eb.cmp(&ea)
                    }
                })
            });
        }
        let mut pos = vec![0; 2 * self.edges.len()];
        for darts in &rot {
            for (i, &d) in darts.iter().enumerate() {
                pos[d] = i;
            }
        }
        self.rotation = rot;
        self.dart_pos = pos;
    }

    fn check_euler(&self) -> Result<()> {
        let (comp, count) = self.components();
        let walks = self.face_walks();
        let mut verts = vec![0i64; count];
        let mut edges = vec![0i64; count];
        let mut faces = vec![0i64; count];
        for &c in &comp {
            verts[c] += 1;
        }
        for &(u, _) in &self.edges {
            edges[comp[u]] += 1;
        }
        for w in &walks.walks {
            faces[comp[self.dart(w[0]).tail]] += 1;
        }
        for c in 0..count {
            let f = faces[c].max(1);
            if verts[c] - edges[c] + f != 2 {
                return Err(Error::Embedding(format!(
                    "Euler relation fails on a component: {} - {} + {} != 2",
                    verts[c], edges[c], f
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn coord(&self, v: usize) -> Point {
        self.coords[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn dart(&self, id: usize) -> Dart {
        let e = id / 2;
        let (u, v) = self.edges[e];
        if id.is_multiple_of(2) {
            Dart { edge: e, tail: u, head: v }
        } else {
            Dart { edge: e, tail: v, head: u }
        }
    }

    /// Darts leaving `v`, counterclockwise by angle from the negative x axis.
    pub fn rotation(&self, v: usize) -> impl Iterator<Item = Dart> + '_ {
        self.rotation[v].iter().map(|&d| self.dart(d))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation(v).map(|d| d.head)
    }

    /// Indices of all edges joining `u` and `v`.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.rotation(u)
            .filter(|d| d.head == v)
            .map(|d| d.edge)
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotation(u).any(|d| d.head == v)
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 == 1
    }

    /// True when the edges are exactly `(i, i+1)` in order, i.e. a path with
    /// its natural labelling.
    pub fn is_natural_path(&self) -> bool {
        self.edges.len() + 1 == self.n
            && self
                .edges
                .iter()
                .enumerate()
                .all(|(i, &(u, v))| (u, v) == (i, i + 1) || (u, v) == (i + 1, i))
    }

    fn next_dart(&self, d: usize) -> usize {
        let twin = d ^ 1;
        let v = self.dart(d).head;
        let rot = &self.rotation[v];
        let i = self.dart_pos[twin];
        rot[(i + rot.len() - 1) % rot.len()]
    }

    pub(crate) fn face_walks(&self) -> FaceWalks {
        let nd = 2 * self.edges.len();
        let mut face_of_dart = vec![usize::MAX; nd];
        let mut walks = Vec::new();
        for start in 0..nd {
            if face_of_dart[start] != usize::MAX {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of_dart[d] = id;
                walk.push(d);
                d = self.next_dart(d);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
        let mut outer = vec![false; walks.len()];
        let (comp, count) = self.components();
        let mut anchor: Vec<Option<usize>> = vec![None; count];
        for v in 0..self.n {
            if self.rotation[v].is_empty() {
                continue;
            }
            let c = comp[v];
            let better = match anchor[c] {
                None => true,
                Some(a) => {
                    let (p, q) = (self.coords[v], self.coords[a]);
                    p[0] < q[0] || (p[0] == q[0] && p[1] < q[1])
                }
            };
            if better {
                anchor[c] = Some(v);
            }
        }
        for v in anchor.into_iter().flatten() {
            let last = *self.rotation[v].last().expect("anchor has an edge");
            outer[face_of_dart[last]] = true;
        }
        FaceWalks {
            walks,
            outer,
            face_of_dart,
        }
    }

    /// All faces, with one outer face per connected component. An isolated
    /// vertex contributes an outer face with empty boundary.
    pub fn faces(&self) -> Vec<Face> {
        let w = self.face_walks();
        let mut faces: Vec<Face> = w
            .walks
            .iter()
            .zip(&w.outer)
            .map(|(walk, &is_outer)| Face {
                boundary: walk.iter().map(|&d| self.dart(d)).collect(),
                is_outer,
            })
            .collect();
        faces.extend((0..self.n).filter(|&v| self.degree(v) == 0).map(|_| Face {
            boundary: Vec::new(),
            is_outer: true,
        }));
        faces
    }

    pub fn bounded_faces(&self) -> Vec<Face> {
        self.faces().into_iter().filter(|f| !f.is_outer).collect()
    }

    /// Regions of the plane cut out by the drawing: bounded faces plus the
    /// single unbounded region.
    pub fn region_count(&self) -> usize {
        self.bounded_faces().len() + 1
    }

    /// Signed area of the closed polygon through `cycle`.
    pub fn cycle_signed_area(&self, cycle: &[usize]) -> f64 {
        let poly: Vec<Point> = cycle.iter().map(|&v| self.coords[v]).collect();
        signed_area(&poly)
    }

    /// Whether the cycle runs clockwise (negative signed area). Digons are
    /// never clockwise.
    pub fn is_clockwise(&self, cycle: &[usize]) -> bool {
        cycle.len() > 2 && self.cycle_signed_area(cycle) < 0.0
    }

    /// Number of vertices strictly inside the polygon traced by `cycle`.
    ///
    /// `cycle` lists distinct vertices, each consecutive pair (and the last
    /// with the first) joined by an edge. A digon encloses nothing.
    pub fn enclosed_vertex_count(&self, cycle: &[usize]) -> Result<usize> {
        if cycle.len() < 2 {
            return Err(Error::InvalidInput("a cycle needs at least two vertices".into()));
        }
        let mut distinct = HashSet::new();
        for &v in cycle {
            if v >= self.n || !distinct.insert(v) {
                return Err(Error::InvalidInput(format!(
                    "cycle vertex {} is repeated or out of range",
                    v + 1
                )));
            }
        }
        for (i, &u) in cycle.iter().enumerate() {
            let v = cycle[(i + 1) % cycle.len()];
            if !self.has_edge(u, v) {
                return Err(Error::InvalidInput(format!(
                    "cycle step {} -> {} is not an edge",
                    u + 1,
                    v + 1
                )));
            }
        }
        if cycle.len() == 2 {
            return Ok(0);
        }
        let poly: Vec<Point> = cycle.iter().map(|&v| self.coords[v]).collect();
        if !geometry::is_simple_polygon(&poly) {
            return Err(Error::Geometry("cycle does not trace a simple polygon".into()));
        }
        Ok((0..self.n)
            .filter(|v| !distinct.contains(v))
            .filter(|&v| point_in_polygon(&poly, self.coords[v]))
            .count())
    }
}

fn check_drawing(coords: &[Point], edges: &[(usize, usize)]) -> Result<()> {
    for (e, &(u, v)) in edges.iter().enumerate() {
        if let Some(w) = (0..coords.len())
            .find(|&w| w != u && w != v && on_segment(coords[u], coords[v], coords[w]))
        {
            return Err(Error::Embedding(format!(
                "vertex {} lies on edge {} ({}, {})",
                w + 1,
                e + 1,
                u + 1,
                v + 1
            )));
        }
    }
    for (e, &(u, v)) in edges.iter().enumerate() {
        for (f, &(p, q)) in edges.iter().enumerate().skip(e + 1) {
            if u == p || u == q || v == p || v == q {
                continue;
            }
            if segments_intersect(coords[u], coords[v], coords[p], coords[q]) {
                return Err(Error::Embedding(format!("edges {} and {} cross", e + 1, f + 1)));
            }
        }
    }
    Ok(())
}

/// Path on `n` vertices along the x axis, labelled leaf to leaf.
pub fn path_graph(n: usize) -> Result<PlaneGraph> {
    if n == 0 {
        return Err(Error::InvalidSize("path_graph needs n >= 1".into()));
    }
    let coords = (0..n).map(|i| [(i + 1) as f64, 0.0]).collect();
    let edges = (0..n - 1).map(|i| (i, i + 1)).collect();
    PlaneGraph::new(n, coords, edges)
}

/// Cycle on `n` vertices placed counterclockwise on the unit circle.
pub fn cycle_graph(n: usize) -> Result<PlaneGraph> {
    if n < 3 {
        return Err(Error::InvalidSize("cycle_graph needs n >= 3".into()));
    }
    let coords = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            [t.cos(), t.sin()]
        })
        .collect();
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    PlaneGraph::new(n, coords, edges)
}
