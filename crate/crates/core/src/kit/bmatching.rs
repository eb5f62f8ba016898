use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;

use super::barbell::Barbell;
use super::triangles::Triangle;

/// Even vertex demands `b(v)` at reference scale `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandFunction {
    pub n: u64,
    pub values: BTreeMap<Vertex, u64>,
}

impl DemandFunction {
    pub fn new(n: u64, values: impl IntoIterator<Item = (Vertex, u64)>) -> Self {
        DemandFunction { n, values: values.into_iter().collect() }
    }

    fn get(&self, v: Vertex) -> Result<u64> {
        self.values.get(&v).copied().ok_or_else(|| Error::input(format!("no demand given for vertex {v}")))
    }

    /// `b(v)`, checked even and within `[lo·n/10, n]`.
    fn checked(&self, v: Vertex, lo_tenths: u64) -> Result<u64> {
        let b = self.get(v)?;
        if b % 2 != 0 {
            return Err(Error::input(format!("b({v}) = {b} is odd")));
        }
        if 10 * b < lo_tenths * self.n || b > self.n {
            return Err(Error::input(format!("b({v}) = {b} outside [{lo_tenths}n/10, n] for n = {}", self.n)));
        }
        Ok(b)
    }
}

/// Edge weights `ω(uv)`, keyed by `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, u64>", into = "BTreeMap<String, u64>")]
pub struct BMatching {
    pub weights: BTreeMap<(Vertex, Vertex), u64>,
}

impl BMatching {
    pub fn weight(&self, u: Vertex, v: Vertex) -> u64 {
        self.weights.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    fn set(&mut self, u: Vertex, v: Vertex, w: u64) {
        self.weights.insert((u.min(v), u.max(v)), w);
    }

    /// `Σ_w ω(vw)`.
    pub fn load(&self, v: Vertex) -> u64 {
        self.weights.iter().filter(|(&(a, b), _)| a == v || b == v).map(|(_, &w)| w).sum()
    }

    /// First vertex whose load differs from its demand.
    pub fn first_unmet(&self, b: &DemandFunction) -> Option<Vertex> {
        b.values.iter().find(|(&v, &d)| self.load(v) != d).map(|(&v, _)| v)
    }

    pub fn min_weight(&self) -> Option<u64> {
        self.weights.values().copied().min()
    }
}

impl From<BMatching> for BTreeMap<String, u64> {
    fn from(m: BMatching) -> Self {
        m.weights.into_iter().map(|((u, v), w)| (format!("{u}-{v}"), w)).collect()
    }
}

impl TryFrom<BTreeMap<String, u64>> for BMatching {
    type Error = String;

    fn try_from(map: BTreeMap<String, u64>) -> std::result::Result<Self, String> {
        let mut out = BMatching::default();
        for (key, w) in map {
            let (u, v) = key.split_once('-').ok_or_else(|| format!("edge key {key:?} is not of the form u-v"))?;
            let u: Vertex = u.trim().parse().map_err(|_| format!("bad vertex in {key:?}"))?;
            let v: Vertex = v.trim().parse().map_err(|_| format!("bad vertex in {key:?}"))?;
            out.set(u, v, w);
        }
        Ok(out)
    }
}

fn check_output(m: &BMatching, demands: &[(Vertex, u64)], n: u64) -> Result<()> {
    for &(v, d) in demands {
        if m.load(v) != d {
            return Err(Error::Internal(format!("load of {v} is {}, demand {d}", m.load(v))));
        }
    }
    if let Some((&(u, v), &w)) = m.weights.iter().find(|(_, &w)| 10 * w < n) {
        return Err(Error::Internal(format!("ω({u}{v}) = {w} is below n/10")));
    }
    Ok(())
}

fn triangle_weights(t: Triangle, b: [u64; 3]) -> BMatching {
    let mut m = BMatching::default();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        m.set(t[i], t[j], (b[i] + b[j] - b[k]) / 2);
    }
    m
}

/// `ω(a_i a_{i+1}) = (b(a_i) + b(a_{i+1}) − b(a_{i+2}))/2` on the triangle `a₁a₂a₃`.
///
/// Requires `3n/10 ≤ b(a₁) ≤ n` and `9n/10 ≤ b(a₂), b(a₃) ≤ n`, all even.
pub fn triangle_b_matching(t: Triangle, b: &DemandFunction) -> Result<BMatching> {
    let values = [b.checked(t[0], 3)?, b.checked(t[1], 9)?, b.checked(t[2], 9)?];
    let m = triangle_weights(t, values);
    check_output(&m, &[(t[0], values[0]), (t[1], values[1]), (t[2], values[2])], b.n)?;
    Ok(m)
}

/// Bridge weights `2⌈b(c)/4⌉` and `2⌊b(c)/4⌋`, then a triangle b-matching
/// on each side for the reduced demands.
pub fn barbell_b_matching(bb: &Barbell, b: &DemandFunction) -> Result<BMatching> {
    if b.n < 20 {
        return Err(Error::input(format!("barbell b-matching needs n ≥ 20, got {}", b.n)));
    }
    let mut demands = Vec::with_capacity(7);
    for v in bb.vertices() {
        demands.push((v, b.checked(v, 9)?));
    }
    let bc = b.get(bb.bridge)?;
    let left_bridge = 2 * bc.div_ceil(4);
    let right_bridge = 2 * (bc / 4);
    let mut m = BMatching::default();
    m.set(bb.bridge, bb.left[0], left_bridge);
    m.set(bb.bridge, bb.right[0], right_bridge);
    for (tri, bridge) in [(bb.left, left_bridge), (bb.right, right_bridge)] {
        let reduced = DemandFunction::new(
            b.n,
            [(tri[0], b.get(tri[0])? - bridge), (tri[1], b.get(tri[1])?), (tri[2], b.get(tri[2])?)],
        );
        m.weights.extend(triangle_b_matching(tri, &reduced)?.weights);
    }
    check_output(&m, &demands, b.n)?;
    Ok(m)
}
