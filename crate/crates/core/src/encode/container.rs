//! Max-degree peeling that compresses a vertex set `L` into a pair `(S, A)`
//! with `S ⊆ L ⊆ S ∪ N(S) ∪ A`, where `A` can be recomputed from `S` alone.
//!
//! Each step takes the vertex of `A` with the largest degree in `G[A]`, the
//! smallest index winning ties. A vertex outside `L` leaves `A` alone; a
//! vertex in `L` joins `S` and leaves `A` together with its neighbours in
//! `A`. Peeling stops once `|A| <= alpha * |V|`.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use num_rational::Ratio;

use super::RegularGraph;
use crate::{DmError, Result};

pub type Alpha = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KwStep {
    pub vertex: usize,
    pub in_l: bool,
    /// Vertices leaving `A` in this step, the chosen vertex first.
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KwOutcome {
    /// In order of selection.
    pub s: Vec<usize>,
    /// Ascending.
    pub a: Vec<usize>,
    pub trace: Vec<KwStep>,
}

/// `lambda / (d + lambda)`.
pub fn spectral_alpha(degree: u64, lambda: u64) -> Alpha {
    Ratio::new(lambda, degree + lambda)
}

/// `ceil(ln(d + 1) / (d + lambda) * N)`, the bound on `|S|`.
pub fn s_bound(vertices: usize, degree: u64, lambda: u64) -> u64 {
    ((degree as f64 + 1.0).ln() / (degree + lambda) as f64 * vertices as f64).ceil() as u64
}

fn check_alpha(alpha: Alpha) -> Result<()> {
    if *alpha.numer() == 0 || alpha.numer() >= alpha.denom() {
        return Err(DmError::AlphaOutOfRange(alpha.to_string()));
    }
    Ok(())
}

struct Peeler<'g> {
    g: &'g RegularGraph,
    in_a: Vec<bool>,
    deg: Vec<usize>,
    queue: BTreeSet<(Reverse<usize>, usize)>,
    size: usize,
}

impl<'g> Peeler<'g> {
    fn new(g: &'g RegularGraph) -> Self {
        let d = g.degree();
        Peeler {
            g,
            in_a: vec![true; g.len()],
            deg: vec![d; g.len()],
            queue: (0..g.len()).map(|v| (Reverse(d), v)).collect(),
            size: g.len(),
        }
    }

    fn done(&self, alpha: Alpha) -> bool {
        (self.size as u64) * alpha.denom() <= alpha.numer() * self.g.len() as u64
    }

    fn pick(&self) -> usize {
        self.queue.first().expect("A is non-empty while peeling").1
    }

    fn remove(&mut self, v: usize) {
        self.in_a[v] = false;
        self.queue.remove(&(Reverse(self.deg[v]), v));
        self.size -= 1;
        for &w in self.g.neighbours(v) {
            if self.in_a[w] {
                self.queue.remove(&(Reverse(self.deg[w]), w));
                self.deg[w] -= 1;
                self.queue.insert((Reverse(self.deg[w]), w));
            }
        }
    }

    /// Removes `v` and its neighbours in `A`; returns them, `v` first.
    fn remove_closed(&mut self, v: usize) -> Vec<usize> {
        let nbrs: Vec<usize> = self
            .g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| self.in_a[w])
            .collect();
        self.remove(v);
        for &w in &nbrs {
            self.remove(w);
        }
        std::iter::once(v).chain(nbrs).collect()
    }

    fn remaining(&self) -> Vec<usize> {
        (0..self.g.len()).filter(|&v| self.in_a[v]).collect()
    }
}

/// Runs the peeling procedure on `l` (vertex indices).
pub fn kw_encode(g: &RegularGraph, l: &[usize], alpha: Alpha) -> Result<KwOutcome> {
    check_alpha(alpha)?;
    let mut in_l = vec![false; g.len()];
    for &v in l {
        if v >= g.len() {
            return Err(DmError::Precondition(format!("vertex {v} is not in the graph")));
        }
        in_l[v] = true;
    }
    let mut peel = Peeler::new(g);
    let mut s = Vec::new();
    let mut trace = Vec::new();
    while !peel.done(alpha) {
        let v = peel.pick();
        let removed = if in_l[v] {
            s.push(v);
            peel.remove_closed(v)
        } else {
            peel.remove(v);
            vec![v]
        };
        trace.push(KwStep {
            vertex: v,
            in_l: in_l[v],
            removed,
        });
    }
    Ok(KwOutcome {
        s,
        a: peel.remaining(),
        trace,
    })
}

/// Replays the procedure from `S` alone and returns `A`.
pub fn kw_reconstruct_a(g: &RegularGraph, s: &[usize], alpha: Alpha) -> Result<Vec<usize>> {
    check_alpha(alpha)?;
    let mut in_s = vec![false; g.len()];
    for &v in s {
        if v >= g.len() {
            return Err(DmError::InconsistentS(format!("vertex {v} is not in the graph")));
        }
        if std::mem::replace(&mut in_s[v], true) {
            return Err(DmError::InconsistentS(format!("vertex {v} repeats")));
        }
    }
    let mut peel = Peeler::new(g);
    let mut next = 0;
    while !peel.done(alpha) {
        let v = peel.pick();
        if !in_s[v] {
            peel.remove(v);
            continue;
        }
        if s[next] != v {
            return Err(DmError::InconsistentS(format!(
                "vertex {v} is selected before {}",
                s[next]
            )));
        }
        next += 1;
        for w in peel.remove_closed(v).into_iter().skip(1) {
            if in_s[w] {
                return Err(DmError::InconsistentS(format!(
                    "vertex {w} leaves A before its turn"
                )));
            }
        }
    }
    if next != s.len() {
        return Err(DmError::InconsistentS(format!(
            "{} members of S were never selected",
            s.len() - next
        )));
    }
    Ok(peel.remaining())
}
