use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::PlaneGraph;
use crate::product::{e_i_count, loop_steps, project_loop, ProductGraph, ProjectionMultigraph};

/// Largest multigraph [`all_decompositions`] accepts.
pub const MAX_DECOMPOSITION_EDGES: usize = 14;

/// A directed cycle: `edges[j]` joins `vertices[j]` to
/// `vertices[(j + 1) % len]`. Two vertices make a digon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Edge-disjoint directed cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleMultiset {
    pub cycles: Vec<Cycle>,
}

impl CycleMultiset {
    pub fn edge_set(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.cycles.iter().flat_map(|c| c.edges.iter().copied()).collect();
        e.sort_unstable();
        e
    }
}

/// A closed trail in a multigraph: step `j` walks edge `edges[j]` from
/// `vertices[j]` to `vertices[(j + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trail {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Trail {
    /// `walk` lists the visited vertices including the return to the start,
    /// so it has one more entry than `edges`.
    pub fn new(host: &PlaneGraph, walk: Vec<usize>, edges: Vec<usize>) -> Result<Trail> {
        if walk.len() != edges.len() + 1 {
            return Err(Error::InvalidInput("walk must have one more vertex than edges".into()));
        }
        if walk.first() != walk.last() {
            return Err(Error::NotClosed);
        }
        let mut seen = HashSet::new();
        for (j, &e) in edges.iter().enumerate() {
            if e >= host.num_edges() || !seen.insert(e) {
                return Err(Error::InvalidInput(format!("trail edge {} repeated or unknown", e + 1)));
            }
            let (u, v) = host.edge(e);
            let (a, b) = (walk[j], walk[j + 1]);
            if !((u, v) == (a, b) || (u, v) == (b, a)) {
                return Err(Error::InvalidInput(format!(
                    "trail step {} does not follow edge {}",
                    j + 1,
                    e + 1
                )));
            }
        }
        let mut vertices = walk;
        vertices.pop();
        Ok(Trail { vertices, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }
}

/// Product of `(-1)^chi` over odd clockwise cycles and `(-1)^(chi+1)` over
/// all others, with `chi` the number of enclosed host vertices.
pub fn sign_cycle_multiset(d: &CycleMultiset, host: &PlaneGraph) -> Result<i32> {
    let mut sign = 1;
    for c in &d.cycles {
        let chi = host.enclosed_vertex_count(&c.vertices)?;
        let odd_clockwise = c.len() % 2 == 1 && host.is_clockwise(&c.vertices);
        let exp = if odd_clockwise { chi } else { chi + 1 };
        if exp % 2 == 1 {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Splits the trail into cycles by walking it with a stack and cutting a
/// cycle off at each repeated vertex. Cycles keep the trail's direction.
pub fn compatible_decomposition(trail: &Trail) -> CycleMultiset {
    let mut cycles = Vec::new();
    if trail.is_empty() {
        return CycleMultiset { cycles };
    }
    let mut stack_v = vec![trail.vertices[0]];
    let mut stack_e: Vec<usize> = Vec::new();
    let m = trail.len();
    for j in 0..m {
        let next = trail.vertices[(j + 1) % m];
        stack_e.push(trail.edges[j]);
        if let Some(p) = stack_v.iter().position(|&v| v == next) {
            let vertices = stack_v.split_off(p);
            let edges = stack_e.split_off(p);
            stack_v.push(next);
            cycles.push(Cycle { vertices, edges });
        } else {
            stack_v.push(next);
        }
    }
    CycleMultiset { cycles }
}

struct Enumerator<'a> {
    edges: &'a [(usize, usize)],
    directed: bool,
    incident: Vec<Vec<usize>>,
    out: Vec<CycleMultiset>,
}

impl Enumerator<'_> {
    fn run(&mut self, unused: u64, current: &mut Vec<Cycle>) {
        if unused == 0 {
            self.out.push(CycleMultiset {
                cycles: current.clone(),
            });
            return;
        }
        let e = unused.trailing_zeros() as usize;
        let (u, v) = self.edges[e];
        let dirs: &[(usize, usize)] = if self.directed { &[(u, v)] } else { &[(u, v), (v, u)] };
        for (k, &(s, t)) in dirs.iter().enumerate() {
            let mut paths = Vec::new();
            let mut vs = vec![s, t];
            let mut es = vec![e];
            self.paths(t, s, unused & !(1 << e), &mut vs, &mut es, &mut paths);
            for (pv, pe) in paths {
                if k == 1 && pv.len() == 2 {
                    continue;
                }
                let used = pe.iter().fold(0u64, |acc, &x| acc | 1 << x);
                current.push(Cycle {
                    vertices: pv,
                    edges: pe,
                });
                self.run(unused & !used, current);
                current.pop();
            }
        }
    }

    fn paths(
        &self,
        at: usize,
        target: usize,
        unused: u64,
        vs: &mut Vec<usize>,
        es: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        for &f in &self.incident[at] {
            if unused & (1 << f) == 0 {
                continue;
            }
            let (a, b) = self.edges[f];
            let next = if a == at { b } else { a };
            if self.directed && a != at {
                continue;
            }
            if next == target {
                let mut cycle_e = es.clone();
                cycle_e.push(f);
                out.push((vs.clone(), cycle_e));
            } else if !vs.contains(&next) {
                vs.push(next);
                es.push(f);
                self.paths(next, target, unused & !(1 << f), vs, es, out);
                vs.pop();
                es.pop();
            }
        }
    }
}

fn enumerate(n: usize, edges: &[(usize, usize)], directed: bool) -> Vec<CycleMultiset> {
    let mut incident = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut en = Enumerator {
        edges,
        directed,
        incident,
        out: Vec::new(),
    };
    let all = if edges.is_empty() { 0 } else { u64::MAX >> (64 - edges.len()) };
    en.run(all, &mut Vec::new());
    en.out
}

fn check_edge_cap(m: usize) -> Result<()> {
    if m > MAX_DECOMPOSITION_EDGES {
        return Err(Error::SizeCap {
            what: "edge count",
            actual: m,
            limit: MAX_DECOMPOSITION_EDGES,
            hint: "decomposition enumeration is exhaustive; use a smaller multigraph",
        });
    }
    Ok(())
}

/// Every decomposition of the trail's edges into directed cycles that
/// follow the trail's direction on each edge.
pub fn all_compatible_decompositions(host: &PlaneGraph, trail: &Trail) -> Result<Vec<CycleMultiset>> {
    check_edge_cap(trail.len())?;
    let m = trail.len();
    let directed: Vec<(usize, usize)> = (0..m)
        .map(|j| (trail.vertices[j], trail.vertices[(j + 1) % m]))
        .collect();
    Ok(enumerate(host.n(), &directed, true)
        .into_iter()
        .map(|d| CycleMultiset {
            cycles: d
                .cycles
                .into_iter()
                .map(|c| Cycle {
                    vertices: c.vertices,
                    edges: c.edges.iter().map(|&j| trail.edges[j]).collect(),
                })
                .collect(),
        })
        .collect())
}

/// Every directed cycle decomposition of an even multigraph. Cycles of
/// length three or more appear in both directions; digons only once.
pub fn all_decompositions(g: &PlaneGraph) -> Result<Vec<CycleMultiset>> {
    check_edge_cap(g.num_edges())?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::NotEven(v + 1));
    }
    Ok(enumerate(g.n(), g.edges(), false))
}

/// Direct sign from the product orientation: `(-1)^(r+1)` with `r` the
/// number of steps against their edge's arrow.
pub fn orientation_sign(p: &ProductGraph, lp: &[usize]) -> Result<i32> {
    if lp.len() % 2 == 1 {
        return Err(Error::OddLoop(lp.len()));
    }
    let r = loop_steps(p, lp)?
        .iter()
        .filter(|s| p.orientation().tail(s.edge) != s.from)
        .count();
    Ok(if r % 2 == 1 { 1 } else { -1 })
}

/// Loop sign from its projections, using compatible decompositions.
pub fn sign_of_loop_projections(p: &ProductGraph, lp: &[usize]) -> Result<i32> {
    sign_of_loop_with_decompositions(p, lp, |_, trail| Ok(compatible_decomposition(trail)))
}

/// Loop sign from its projections with decompositions chosen by `pick`,
/// which receives each projection and the trail it carries.
pub fn sign_of_loop_with_decompositions<F>(p: &ProductGraph, lp: &[usize], mut pick: F) -> Result<i32>
where
    F: FnMut(&ProjectionMultigraph, &Trail) -> Result<CycleMultiset>,
{
    if lp.len() % 2 == 1 {
        return Err(Error::OddLoop(lp.len()));
    }
    let mut sign = -1;
    for i in 0..p.k() {
        if i + 1 < p.k() && e_i_count(p, lp, i)? % 2 == 1 {
            sign = -sign;
        }
        let (proj, tails) = project_loop(p, lp, i)?;
        let mut walk = tails.clone();
        if let Some(&first) = tails.first() {
            walk.push(first);
        }
        let walk = if walk.is_empty() { vec![0] } else { walk };
        let trail = Trail::new(&proj.graph, walk, (0..tails.len()).collect())?;
        let d = pick(&proj, &trail)?;
        sign *= sign_cycle_multiset(&d, &proj.graph)?;
    }
    Ok(sign)
}
