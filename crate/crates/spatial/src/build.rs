//! Programmatic construction of diagrams from twist regions.

use crate::diagram::{Crossing, Diagram, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcId(usize);

/// Arcs may be created under provisional names and identified later; an
/// identified class keeps the name of its earliest member.
#[derive(Debug, Default)]
pub struct DiagramBuilder {
    names: Vec<String>,
    parent: Vec<usize>,
    crossings: Vec<[usize; 3]>,
    vertices: Vec<(String, Vec<usize>)>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn arc(&mut self, name: impl Into<String>) -> ArcId {
        self.names.push(name.into());
        self.parent.push(self.parent.len());
        ArcId(self.parent.len() - 1)
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn identify(&mut self, a: ArcId, b: ArcId) {
        let (x, y) = (self.find(a.0), self.find(b.0));
        let (lo, hi) = (x.min(y), x.max(y));
        self.parent[hi] = lo;
    }

    pub fn crossing(&mut self, over: ArcId, under_in: ArcId, under_out: ArcId) {
        self.crossings.push([over.0, under_in.0, under_out.0]);
    }

    /// `count` half-twists of two strands entering as (left, right). At each
    /// crossing the right strand passes over, so colors follow
    /// (a, b) -> (b, 2b - a). Returns the exiting (left, right) arcs.
    pub fn twist(&mut self, left: ArcId, right: ArcId, count: usize, prefix: &str) -> (ArcId, ArcId) {
        let (mut l, mut r) = (left, right);
        for j in 1..=count {
            let new = self.arc(format!("{prefix}{j}"));
            self.crossing(r, l, new);
            l = r;
            r = new;
        }
        (l, r)
    }

    pub fn vertex(&mut self, id: impl Into<String>, arcs_ccw: &[ArcId]) {
        self.vertices.push((id.into(), arcs_ccw.iter().map(|a| a.0).collect()));
    }

    pub fn finish(mut self) -> Diagram {
        let n = self.names.len();
        let roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        let name = |i: usize| self.names[roots[i]].clone();
        let arcs = (0..n).filter(|&i| roots[i] == i).map(|i| self.names[i].clone()).collect();
        let crossings = self
            .crossings
            .iter()
            .map(|&[o, a, b]| Crossing { over: name(o), under_in: name(a), under_out: name(b) })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|(id, arcs)| Vertex { id: id.clone(), arcs_ccw: arcs.iter().map(|&a| name(a)).collect() })
            .collect();
        Diagram { arcs, crossings, vertices }
    }
}
