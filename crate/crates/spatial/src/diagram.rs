use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub over: String,
    pub under_in: String,
    pub under_out: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub id: String,
    pub arcs_ccw: Vec<String>,
}

/// A diagram of a spatial graph. Arcs run between undercrossings and
/// vertices; a closed arc with no ends is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagram {
    pub arcs: Vec<String>,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
}

fn invalid(location: String, message: impl Into<String>) -> Error {
    Error::Invalid { location, message: message.into() }
}

pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let d: Diagram = serde_json::from_str(text).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    d.validate()?;
    Ok(d)
}

impl Diagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes") + "\n"
    }

    pub fn index(&self) -> HashMap<&str, usize> {
        self.arcs.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect()
    }

    pub fn vertex(&self, id: &str) -> Result<&Vertex> {
        self.vertices.iter().find(|v| v.id == id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Referential integrity, even degrees and endpoint accounting.
    pub fn validate(&self) -> Result<()> {
        let mut index = HashMap::new();
        for (i, a) in self.arcs.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(invalid(format!("arcs[{i}]"), format!("duplicate arc {a:?}")));
            }
        }
        let lookup = |name: &str, loc: String| {
            index.get(name).copied().ok_or_else(|| invalid(loc, format!("unknown arc {name:?}")))
        };
        let mut ends = vec![0usize; self.arcs.len()];
        for (i, c) in self.crossings.iter().enumerate() {
            lookup(&c.over, format!("crossings[{i}].over"))?;
            ends[lookup(&c.under_in, format!("crossings[{i}].under_in"))?] += 1;
            ends[lookup(&c.under_out, format!("crossings[{i}].under_out"))?] += 1;
        }
        let mut ids = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if ids.insert(v.id.as_str(), i).is_some() {
                return Err(invalid(format!("vertices[{i}].id"), format!("duplicate vertex {:?}", v.id)));
            }
            if v.arcs_ccw.is_empty() || v.arcs_ccw.len() % 2 == 1 {
                return Err(invalid(
                    format!("vertices[{i}]"),
                    format!("vertex {:?} has degree {}; degrees must be even and positive", v.id, v.arcs_ccw.len()),
                ));
            }
            for (j, a) in v.arcs_ccw.iter().enumerate() {
                ends[lookup(a, format!("vertices[{i}].arcs_ccw[{j}]"))?] += 1;
            }
        }
        for (i, &n) in ends.iter().enumerate() {
            if n != 0 && n != 2 {
                return Err(invalid(
                    format!("arcs[{i}]"),
                    format!("arc {:?} has {n} endpoints; expected 2 (or 0 for a closed arc)", self.arcs[i]),
                ));
            }
        }
        Ok(())
    }

    /// Whether the underlying projection is connected.
    pub fn is_connected(&self) -> bool {
        let index = self.index();
        let mut parent: Vec<usize> = (0..self.arcs.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut join = |a: &str, b: &str| {
            let (x, y) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
            parent[x] = y;
        };
        for c in &self.crossings {
            join(&c.over, &c.under_in);
            join(&c.under_in, &c.under_out);
        }
        for v in &self.vertices {
            for a in &v.arcs_ccw[1..] {
                join(&v.arcs_ccw[0], a);
            }
        }
        let roots: std::collections::HashSet<usize> =
            (0..self.arcs.len()).map(|i| find(&mut parent, i)).collect();
        roots.len() <= 1
    }
}
