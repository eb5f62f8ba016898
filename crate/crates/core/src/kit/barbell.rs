use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Vertex};

use super::cherries::Cherry;
use super::triangles::Triangle;

/// Two disjoint triangles joined through `bridge` by the edges `bridge–left[0]`
/// and `bridge–right[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Barbell {
    pub left: Triangle,
    pub right: Triangle,
    pub bridge: Vertex,
}

impl Barbell {
    pub fn vertices(&self) -> [Vertex; 7] {
        let [a1, a2, a3] = self.left;
        let [b1, b2, b3] = self.right;
        [a1, a2, a3, b1, b2, b3, self.bridge]
    }

    /// Seven distinct vertices, both triangles and both bridge edges present in `g`.
    pub fn check_in(&self, g: &ColouredGraph) -> std::result::Result<(), String> {
        let mut vs = self.vertices().to_vec();
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err("barbell vertices are not distinct".into());
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
            return Err(format!("vertex {v} out of range"));
        }
        for t in [self.left, self.right] {
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if !g.has_edge(u, v) {
                    return Err(format!("triangle edge {{{u}, {v}}} missing"));
                }
            }
        }
        for end in [self.left[0], self.right[0]] {
            if !g.has_edge(self.bridge, end) {
                return Err(format!("bridge edge {{{}, {end}}} missing", self.bridge));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarbellAssembly {
    pub barbells: Vec<Barbell>,
    pub leftover: Vec<Triangle>,
}

/// Joins triangles through cherries whose leaves are triangle representatives.
///
/// The representative of a triangle is its first vertex. Each cherry must use
/// the representatives of two different triangles and a centre outside all
/// triangles; no triangle may be hit twice.
pub fn assemble_barbells(triangles: &[Triangle], cherries: &[Cherry]) -> Result<BarbellAssembly> {
    let mut owner = std::collections::HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for &v in t {
            if owner.insert(v, i).is_some() {
                return Err(Error::input(format!("vertex {v} lies in two triangles")));
            }
        }
    }
    let mut used = vec![false; triangles.len()];
    let mut centres = std::collections::HashSet::new();
    let mut barbells = Vec::with_capacity(cherries.len());
    for ch in cherries {
        if owner.contains_key(&ch.centre) {
            return Err(Error::input(format!("cherry centre {} lies in a triangle", ch.centre)));
        }
        if !centres.insert(ch.centre) {
            return Err(Error::input(format!("cherry centre {} used twice", ch.centre)));
        }
        let mut hosts = [0usize; 2];
        for (slot, &leaf) in ch.leaves.iter().enumerate() {
            let i = match owner.get(&leaf) {
                Some(&i) if triangles[i][0] == leaf => i,
                _ => return Err(Error::input(format!("cherry leaf {leaf} is not a triangle representative"))),
            };
            if std::mem::replace(&mut used[i], true) {
                return Err(Error::input(format!("triangle {i} is joined by more than one cherry end")));
            }
            hosts[slot] = i;
        }
        barbells.push(Barbell { left: triangles[hosts[0]], right: triangles[hosts[1]], bridge: ch.centre });
    }
    let leftover = triangles.iter().zip(&used).filter(|(_, &u)| !u).map(|(t, _)| *t).collect();
    Ok(BarbellAssembly { barbells, leftover })
}
