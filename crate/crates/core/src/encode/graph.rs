//! Regular graphs with a fixed vertex order, and the distance-two hypercube
//! graph `R_n`.

use serde::{Deserialize, Serialize};

use crate::{DmError, Mask, Result, MAX_N};

/// Support parity of a vertex of `Q_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m: Mask) -> Parity {
        if m.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A `d`-regular graph whose vertices carry labels; the vertex order (and
/// so tie-breaking) is ascending label.
#[derive(Debug, Clone)]
pub struct RegularGraph {
    labels: Vec<Mask>,
    adjacency: Vec<Vec<usize>>,
    degree: usize,
}

impl RegularGraph {
    /// Validates labels strictly increasing and adjacency symmetric,
    /// loop-free and regular.
    pub fn new(labels: Vec<Mask>, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |why: String| Err(DmError::Precondition(why));
        if labels.len() != adjacency.len() {
            return bad("one adjacency list per vertex is required".into());
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return bad("labels must be strictly increasing".into());
        }
        let degree = adjacency.first().map_or(0, Vec::len);
        for (v, nbrs) in adjacency.iter().enumerate() {
            if nbrs.len() != degree {
                return bad(format!("vertex {v} has degree {}, expected {degree}", nbrs.len()));
            }
            for &w in nbrs {
                if w >= labels.len() || w == v {
                    return bad(format!("vertex {v} has invalid neighbour {w}"));
                }
                if !adjacency[w].contains(&v) {
                    return bad(format!("edge {v}-{w} is not symmetric"));
                }
            }
        }
        Ok(RegularGraph {
            labels,
            adjacency,
            degree,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn label(&self, v: usize) -> Mask {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Mask] {
        &self.labels
    }

    pub fn index_of(&self, label: Mask) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }
}

/// The component of `R_n` on masks of the given support parity: vertices at
/// Hamming distance two are adjacent. Regular of degree `C(n, 2)`.
pub fn rn_component(n: usize, parity: Parity) -> Result<RegularGraph> {
    if !(2..=MAX_N).contains(&n) {
        return Err(DmError::Precondition(format!("R_n needs 2 <= n <= {MAX_N}, got {n}")));
    }
    let labels: Vec<Mask> = (0..(1 as Mask) << n).filter(|&m| Parity::of(m) == parity).collect();
    // Labels of one parity are dense in index order: index = label / 2.
    let index = |m: Mask| (m >> 1) as usize;
    let adjacency = labels
        .iter()
        .map(|&v| {
            let mut nbrs = Vec::with_capacity(n * (n - 1) / 2);
            for a in 0..n {
                for b in a + 1..n {
                    nbrs.push(index(v ^ (1 << a) ^ (1 << b)));
                }
            }
            nbrs.sort_unstable();
            nbrs
        })
        .collect();
    RegularGraph::new(labels, adjacency)
}
