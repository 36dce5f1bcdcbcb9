use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Dart, PlaneGraph};
use crate::error::{Error, Result};

/// A direction `(tail, head)` for every edge of a host graph, by edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    dir: Vec<(usize, usize)>,
}

impl Orientation {
    /// Checks that each pair is a permutation of the matching edge's endpoints.
    pub fn new(g: &PlaneGraph, dir: Vec<(usize, usize)>) -> Result<Self> {
        Self::from_edges(g.edges(), dir)
    }

    pub(crate) fn from_edges(edges: &[(usize, usize)], dir: Vec<(usize, usize)>) -> Result<Self> {
        if dir.len() != edges.len() {
            return Err(Error::InvalidInput(format!(
                "orientation has {} entries for {} edges",
                dir.len(),
                edges.len()
            )));
        }
        for (e, (&(u, v), &(t, h))) in edges.iter().zip(&dir).enumerate() {
            if !((t, h) == (u, v) || (t, h) == (v, u)) {
                return Err(Error::InvalidInput(format!(
                    "orientation entry {} ({}, {}) does not match edge ({}, {})",
                    e + 1,
                    t + 1,
                    h + 1,
                    u + 1,
                    v + 1
                )));
            }
        }
        Ok(Orientation { dir })
    }

    /// Orientation following `forward[e]`: true keeps the stored endpoint
    /// order of edge `e`, false flips it.
    pub fn from_flags(edges: &[(usize, usize)], forward: &[bool]) -> Self {
        Orientation {
            dir: edges
                .iter()
                .zip(forward)
                .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.dir.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dir.is_empty()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.dir[e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.dir[e].1
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.dir
    }

    /// Whether the dart runs in the direction of its edge's arrow.
    pub fn agrees(&self, d: Dart) -> bool {
        self.dir[d.edge].0 == d.tail
    }

    /// `+1` when edge `e` points `u -> v`, `-1` otherwise.
    pub fn sign(&self, e: usize, u: usize) -> i32 {
        if self.dir[e].0 == u {
            1
        } else {
            -1
        }
    }

    pub fn reversed(&self) -> Orientation {
        Orientation {
            dir: self.dir.iter().map(|&(t, h)| (h, t)).collect(),
        }
    }
}

/// Every edge from its lower to its higher label.
pub fn canonical_orientation(g: &PlaneGraph) -> Orientation {
    Orientation {
        dir: g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect(),
    }
}

/// Whether every bounded face has an odd number of clockwise edges.
///
/// Edges met twice on one face walk (bridges) bound no region there and are
/// not counted.
pub fn is_pfaffian(g: &PlaneGraph, o: &Orientation) -> bool {
    let walks = g.face_walks();
    walks
        .walks
        .iter()
        .zip(&walks.outer)
        .filter(|(_, &outer)| !outer)
        .all(|(walk, _)| clockwise_count(g, o, walk) % 2 == 1)
}

fn clockwise_count(g: &PlaneGraph, o: &Orientation, walk: &[usize]) -> usize {
    walk.iter()
        .filter(|&&d| !walk.contains(&(d ^ 1)))
        .filter(|&&d| !o.agrees(g.dart(d)))
        .count()
}

/// Pfaffian orientation from a breadth-first spanning tree rooted at vertex 0.
pub fn pfaffian_orientation(g: &PlaneGraph) -> Result<Orientation> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let in_tree = spanning_tree(g, 0, |_| {});
    let forward = vec![true; g.num_edges()];
    Ok(complete_from_tree(g, &in_tree, forward))
}

/// Pfaffian orientation from a random spanning tree with random tree-edge
/// directions. Different seeds typically give different orientations.
pub fn random_pfaffian_orientation<R: Rng + ?Sized>(
    g: &PlaneGraph,
    rng: &mut R,
) -> Result<Orientation> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let root = rng.gen_range(0..g.n());
    let mut order: Vec<usize> = (0..g.num_edges()).collect();
    order.shuffle(rng);
    let mut rank = vec![0; g.num_edges()];
    for (i, &e) in order.iter().enumerate() {
        rank[e] = i;
    }
    let in_tree = spanning_tree(g, root, |darts| darts.sort_by_key(|d| rank[d.edge]));
    let forward = (0..g.num_edges()).map(|_| rng.gen_bool(0.5)).collect();
    Ok(complete_from_tree(g, &in_tree, forward))
}

fn spanning_tree(g: &PlaneGraph, root: usize, mut arrange: impl FnMut(&mut Vec<Dart>)) -> Vec<bool> {
    let mut in_tree = vec![false; g.num_edges()];
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        let mut darts: Vec<Dart> = g.rotation(v).collect();
        arrange(&mut darts);
        for d in darts {
            if !seen[d.head] {
                seen[d.head] = true;
                in_tree[d.edge] = true;
                queue.push_back(d.head);
            }
        }
    }
    in_tree
}

/// Keeps tree edges as given by `forward` and fixes the others along a
/// spanning tree of the dual rooted at the outer face, leaves first.
fn complete_from_tree(g: &PlaneGraph, in_tree: &[bool], mut forward: Vec<bool>) -> Orientation {
    let walks = g.face_walks();
    let nf = walks.walks.len();
    let root = walks.outer.iter().position(|&o| o);
    let Some(root) = root else {
        return Orientation::from_flags(g.edges(), &forward);
    };
    // Dual BFS over non-tree edges; each bounded face gets the dart through
    // which it was first reached.
    let mut parent: Vec<Option<usize>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut order = Vec::with_capacity(nf);
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &d in &walks.walks[f] {
            if in_tree[d / 2] {
                continue;
            }
            let other = walks.face_of_dart[d ^ 1];
            if !seen[other] {
                seen[other] = true;
                parent[other] = Some(d ^ 1);
                queue.push_back(other);
            }
        }
    }
    let mut fixed: Vec<bool> = in_tree.to_vec();
    for &f in order.iter().rev() {
        let Some(pd) = parent[f] else { continue };
        let walk = &walks.walks[f];
        let mut cw = 0;
        for &d in walk {
            let e = d / 2;
            if e == pd / 2 || walk.contains(&(d ^ 1)) {
                continue;
            }
            debug_assert!(fixed[e], "dual tree processed out of order");
            let agrees = (d % 2 == 0) == forward[e];
            if !agrees {
                cw += 1;
            }
        }
        // The parent edge must be clockwise exactly when the rest is even.
        let want_cw = cw % 2 == 0;
        let dart_forward = pd % 2 == 0;
        forward[pd / 2] = if want_cw { !dart_forward } else { dart_forward };
        fixed[pd / 2] = true;
    }
    Orientation::from_flags(g.edges(), &forward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square_with_diagonal() -> PlaneGraph {
        PlaneGraph::new(
            4,
            vec![[0., 0.], [1., 0.], [1., 1.], [0., 1.]],
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn canonical_examples() {
        let p3 = path_graph(3).unwrap();
        assert_eq!(canonical_orientation(&p3).pairs(), &[(0, 1), (1, 2)]);
        let g = square_with_diagonal();
        assert!(is_pfaffian(&g, &canonical_orientation(&g)));
    }

    #[test]
    fn cyclic_square_is_not_pfaffian() {
        let c4 = cycle_graph(4).unwrap();
        let cyclic = Orientation::new(&c4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!is_pfaffian(&c4, &cyclic));
        assert!(!is_pfaffian(&c4, &cyclic.reversed()));
    }

    #[test]
    fn trees_always_pass() {
        let p = path_graph(5).unwrap();
        let o = Orientation::new(&p, vec![(1, 0), (1, 2), (3, 2), (3, 4)]).unwrap();
        assert!(is_pfaffian(&p, &o));
        assert!(is_pfaffian(&p, &pfaffian_orientation(&p).unwrap()));
    }

    #[test]
    fn constructed_orientations_are_pfaffian() {
        let g = square_with_diagonal();
        assert!(is_pfaffian(&g, &pfaffian_orientation(&g).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let o = random_pfaffian_orientation(&g, &mut rng).unwrap();
            assert!(is_pfaffian(&g, &o));
        }
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = PlaneGraph::new(3, vec![[0., 0.], [1., 0.], [5., 5.]], vec![(0, 1)]).unwrap();
        assert_eq!(pfaffian_orientation(&g), Err(Error::Disconnected));
    }

    #[test]
    fn mismatched_entries_rejected() {
        let p = path_graph(3).unwrap();
        assert!(Orientation::new(&p, vec![(0, 2), (1, 2)]).is_err());
        assert!(Orientation::new(&p, vec![(0, 1)]).is_err());
    }
}
