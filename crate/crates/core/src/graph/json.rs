use serde::{Deserialize, Serialize};

use super::{Orientation, PlaneGraph};
use crate::error::{Error, Result};

/// On-disk graph description with 1-based vertex labels. `orientation`, when
/// present, lists one `[tail, head]` per edge in edge order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub coords: Vec<[f64; 2]>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<[usize; 2]>>,
}

fn to_zero_based(pairs: &[[usize; 2]], n: usize, what: &str) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|&[u, v]| {
            if u == 0 || v == 0 || u > n || v > n {
                Err(Error::InvalidInput(format!(
                    "{what} [{u}, {v}] uses a label outside 1..{n}"
                )))
            } else {
                Ok((u - 1, v - 1))
            }
        })
        .collect()
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<(PlaneGraph, Option<Orientation>)> {
        let edges = to_zero_based(&self.edges, self.n, "edge")?;
        let g = PlaneGraph::new(self.n, self.coords.clone(), edges)?;
        let o = match &self.orientation {
            Some(pairs) => Some(Orientation::new(&g, to_zero_based(pairs, self.n, "arrow")?)?),
            None => None,
        };
        Ok((g, o))
    }

    pub fn from_graph(g: &PlaneGraph, o: Option<&Orientation>) -> GraphFile {
        let one = |&(u, v): &(usize, usize)| [u + 1, v + 1];
        GraphFile {
            n: g.n(),
            coords: g.coords().to_vec(),
            edges: g.edges().iter().map(one).collect(),
            orientation: o.map(|o| o.pairs().iter().map(one).collect()),
        }
    }
}

impl PlaneGraph {
    /// Parses the JSON graph format, returning the graph and its orientation
    /// if one is given.
    pub fn from_json(text: &str) -> Result<(PlaneGraph, Option<Orientation>)> {
        GraphFile::parse(text)?.build()
    }

    pub fn to_json(&self, o: Option<&Orientation>) -> String {
        serde_json::to_string_pretty(&GraphFile::from_graph(self, o))
            .expect("graph file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_orientation;

    #[test]
    fn round_trip() {
        let text = r#"{"n":3,"coords":[[0,0],[1,0],[0,1]],"edges":[[1,2],[2,3],[3,1]],
            "orientation":[[1,2],[2,3],[1,3]]}"#;
        let (g, o) = PlaneGraph::from_json(text).unwrap();
        assert_eq!(o.as_ref(), Some(&canonical_orientation(&g)));
        let (g2, o2) = PlaneGraph::from_json(&g.to_json(o.as_ref())).unwrap();
        assert_eq!(g2.edges(), g.edges());
        assert_eq!(o2, o);
    }

    #[test]
    fn bad_labels() {
        let text = r#"{"n":2,"coords":[[0,0],[1,0]],"edges":[[0,1]]}"#;
        assert!(PlaneGraph::from_json(text).is_err());
        assert!(matches!(PlaneGraph::from_json("{"), Err(Error::Parse(_))));
    }
}
