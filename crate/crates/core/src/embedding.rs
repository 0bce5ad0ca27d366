//! The difference rotation `ρ₀`, the rotation system it generates on
//! `K_{(v/t)×t}`, face tracing, face census and genus.
//!
//! Vertices are the residues of `Z_v`; `x` and `y` are adjacent iff
//! `y − x ∉ J`. A directed edge `(x, x + a)` is rotated at its tail to
//! `(x, x + ρ₀(a))`, and faces are orbits of
//! `(x, y) ↦ (y, y + ρ₀(x − y))`.

use std::collections::BTreeMap;

use crate::array::PartiallyFilledArray;
use crate::error::{Error, Result};
use crate::orderings::{OrderingPair, NONE};
use crate::ring::{lambda_of, Ring};

/// A permutation `ρ₀` of `Z_v \ J`; a compact form of a `Z_v`-regular embedding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferenceRotation {
    ring: Ring,
    rho0: Vec<usize>,
    anchor: usize,
}

impl DifferenceRotation {
    /// From `(a, ρ₀(a))` pairs covering `Z_v \ J`. The anchor is the smallest element.
    pub fn from_pairs(ring: Ring, pairs: &[(usize, usize)]) -> Result<Self> {
        let v = ring.v();
        let mut rho0 = vec![NONE; v];
        let mut hit = vec![false; v];
        for &(a, b) in pairs {
            if a >= v || b >= v || ring.in_j(a) || ring.in_j(b) {
                return Err(Error::InvalidRotation(format!("({a}, {b}) is not a pair in Z_{v} \\ J")));
            }
            if rho0[a] != NONE || hit[b] {
                return Err(Error::InvalidRotation(format!("({a}, {b}) breaks injectivity")));
            }
            rho0[a] = b;
            hit[b] = true;
        }
        if ring.non_j().any(|a| rho0[a] == NONE) {
            return Err(Error::InvalidRotation("ρ₀ is not defined on all of Z_v \\ J".into()));
        }
        let anchor = ring.non_j().next().expect("Z_v \\ J is non-empty");
        Ok(DifferenceRotation { ring, rho0, anchor })
    }

    /// From one cyclic sequence `(x₁, x₂, …)` through all of `Z_v \ J`; `x₁` becomes the anchor.
    pub fn from_cycle(ring: Ring, cycle: &[usize]) -> Result<Self> {
        let Some(&first) = cycle.first() else {
            return Err(Error::InvalidRotation("empty cycle".into()));
        };
        let pairs: Vec<(usize, usize)> =
            cycle.iter().zip(cycle.iter().cycle().skip(1)).map(|(&a, &b)| (a, b)).collect();
        let mut r = Self::from_pairs(ring, &pairs)?;
        r.anchor = first;
        Ok(r)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// `ρ₀(a)`, or `None` for `a ∈ J`.
    pub fn get(&self, a: usize) -> Option<usize> {
        self.rho0.get(a).copied().filter(|&b| b != NONE)
    }

    #[inline]
    pub(crate) fn at(&self, a: usize) -> usize {
        self.rho0[a]
    }

    pub(crate) fn table(&self) -> &[usize] {
        &self.rho0
    }

    /// The element `x₁` from which [`Self::cycle`] is read.
    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn with_anchor(mut self, anchor: usize) -> Result<Self> {
        if self.get(anchor).is_none() {
            return Err(Error::InvalidRotation(format!("anchor {anchor} lies in J")));
        }
        self.anchor = anchor;
        Ok(self)
    }

    /// `(a, ρ₀(a))` for every `a ∈ Z_v \ J`, increasing in `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.ring.non_j().map(|a| (a, self.rho0[a])).collect()
    }

    /// The orbit of the anchor: `(x₁, ρ₀(x₁), ρ₀²(x₁), …)`.
    pub fn cycle(&self) -> Vec<usize> {
        let mut out = vec![self.anchor];
        let mut a = self.rho0[self.anchor];
        while a != self.anchor {
            out.push(a);
            a = self.rho0[a];
        }
        out
    }

    /// Whether `ρ₀` is one `(v − t)`-cycle.
    pub fn is_single_cycle(&self) -> bool {
        self.cycle().len() == self.ring.degree()
    }

    /// `ρ₀⁻¹`: the same embedding with the opposite orientation.
    pub fn inverse(&self) -> Self {
        let mut rho0 = vec![NONE; self.ring.v()];
        for a in self.ring.non_j() {
            rho0[self.rho0[a]] = a;
        }
        DifferenceRotation { ring: self.ring, rho0, anchor: self.anchor }
    }

    /// `a ↦ u·ρ₀(u⁻¹a)`: the image of this embedding under `x ↦ ux`.
    pub fn multiplier_image(&self, u: usize) -> Result<Self> {
        let ring = self.ring;
        let inv = ring.inverse(u).ok_or_else(|| Error::Precondition(format!("{u} is not a unit mod {}", ring.v())))?;
        let mut rho0 = vec![NONE; ring.v()];
        for a in ring.non_j() {
            rho0[a] = ring.mul(u, self.rho0[ring.mul(inv, a)]);
        }
        Ok(DifferenceRotation { ring, rho0, anchor: ring.mul(u, self.anchor) })
    }
}

/// `ρ₀(a) = −ω_r(a)` for `a ∈ E(A)` and `ρ₀(a) = ω_c(−a)` for `a ∈ −E(A)`.
///
/// The anchor is the entry of the row-major first cell, i.e. the element of
/// `E(A)` whose position is lexicographically minimal.
pub fn build_rho0(a: &PartiallyFilledArray, op: &OrderingPair) -> Result<DifferenceRotation> {
    a.validate_qh()?;
    if !op.is_valid_for(a) {
        return Err(Error::InvalidOrdering("orderings do not traverse the rows and columns of the array".into()));
    }
    let ring = a.ring();
    let (omega_r, omega_c) = (op.omega_r_table(), op.omega_c_table());
    let mut rho0 = vec![NONE; ring.v()];
    for &x in a.values() {
        rho0[x] = ring.neg(omega_r[x]);
        rho0[ring.neg(x)] = omega_c[x];
    }
    Ok(DifferenceRotation { ring, rho0, anchor: a.values()[0] })
}

pub fn is_single_cycle(r: &DifferenceRotation) -> bool {
    r.is_single_cycle()
}

/// Explicit per-vertex cyclic neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    ring: Ring,
    rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(ring: Ring, rotations: Vec<Vec<usize>>) -> Result<Self> {
        let rs = RotationSystem { ring, rotations };
        rs.check()?;
        Ok(rs)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Cyclic neighbour order at `x`.
    pub fn at(&self, x: usize) -> &[usize] {
        &self.rotations[x]
    }

    /// Each list must run once through `N(x) = {x + d : d ∉ J}`.
    pub fn check(&self) -> Result<()> {
        let ring = self.ring;
        if self.rotations.len() != ring.v() {
            return Err(Error::InvalidRotation(format!("{} vertex lists for v = {}", self.rotations.len(), ring.v())));
        }
        for (x, list) in self.rotations.iter().enumerate() {
            let mut seen = vec![false; ring.v()];
            for &y in list {
                if y >= ring.v() || ring.in_j(ring.sub(y, x)) || std::mem::replace(&mut seen[y], true) {
                    return Err(Error::InvalidRotation(format!("rotation at {x} is not a cycle through N({x})")));
                }
            }
            if list.len() != ring.degree() {
                return Err(Error::InvalidRotation(format!("rotation at {x} misses neighbours")));
            }
        }
        Ok(())
    }

    /// `ρ_x(y)`: the neighbour after `y` in the rotation at `x`.
    pub fn next(&self, x: usize, y: usize) -> Option<usize> {
        let list = &self.rotations[x];
        let p = list.iter().position(|&z| z == y)?;
        Some(list[(p + 1) % list.len()])
    }
}

/// Translates the `ρ₀`-cycle to every vertex: the rotation at `x` is `x + (x₁, x₂, …)`.
pub fn expand(r: &DifferenceRotation) -> Result<RotationSystem> {
    if !r.is_single_cycle() {
        return Err(Error::NotSingleCycle);
    }
    let ring = r.ring();
    let cycle = r.cycle();
    let rotations = (0..ring.v()).map(|x| cycle.iter().map(|&d| ring.add(x, d)).collect()).collect();
    RotationSystem::new(ring, rotations)
}

/// `(x, y) ↦ (y, y + ρ₀(x − y))`.
pub fn face_successor(r: &DifferenceRotation, (x, y): (usize, usize)) -> Result<(usize, usize)> {
    let ring = r.ring();
    if x >= ring.v() || y >= ring.v() || ring.in_j(ring.sub(y, x)) {
        return Err(Error::NotAnEdge(x, y));
    }
    Ok((y, ring.add(y, r.at(ring.sub(x, y)))))
}

/// A face boundary as a cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    vertices: Vec<usize>,
}

impl Face {
    pub fn new(vertices: Vec<usize>) -> Self {
        Face { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Lexicographically least rotation (so it starts at the minimal vertex); never reflected.
    pub fn canonical(&self) -> Face {
        let n = self.vertices.len();
        let best = (0..n)
            .min_by(|&a, &b| {
                (0..n)
                    .map(|i| self.vertices[(a + i) % n])
                    .cmp((0..n).map(|i| self.vertices[(b + i) % n]))
            })
            .unwrap_or(0);
        Face { vertices: (0..n).map(|i| self.vertices[(best + i) % n]).collect() }
    }

    /// Same face translated by `g`.
    pub fn shifted(&self, ring: Ring, g: usize) -> Face {
        Face { vertices: self.vertices.iter().map(|&x| ring.add(x, g)).collect() }
    }

    /// Consecutive differences `x_{i+1} − x_i`, cyclically.
    pub fn differences(&self, ring: Ring) -> Vec<usize> {
        let n = self.vertices.len();
        (0..n).map(|i| ring.sub(self.vertices[(i + 1) % n], self.vertices[i])).collect()
    }
}

/// Traces the face containing the directed edge `(x, y)`.
pub fn face_of(r: &DifferenceRotation, edge: (usize, usize)) -> Result<Face> {
    let mut vertices = vec![edge.0];
    let mut e = face_successor(r, edge)?;
    while e != edge {
        vertices.push(e.0);
        e = face_successor(r, e)?;
    }
    Ok(Face { vertices })
}

/// Every face, each traced once, in order of its lexicographically first seed edge.
pub fn trace_faces(r: &DifferenceRotation) -> Vec<Face> {
    let ring = r.ring();
    let v = ring.v();
    let mut visited = vec![false; v * v];
    let mut faces = Vec::new();
    for x in 0..v {
        for d in ring.non_j() {
            let y = ring.add(x, d);
            if visited[x * v + y] {
                continue;
            }
            let mut vertices = Vec::new();
            let (mut a, mut b) = (x, y);
            while !visited[a * v + b] {
                visited[a * v + b] = true;
                vertices.push(a);
                let next = ring.add(b, r.at(ring.sub(a, b)));
                (a, b) = (b, next);
            }
            faces.push(Face { vertices });
        }
    }
    faces
}

/// Multiset of face lengths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FaceCensus {
    lengths: BTreeMap<usize, usize>,
}

impl FaceCensus {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut census = FaceCensus::default();
        for len in lengths {
            census.add(len, 1);
        }
        census
    }

    pub fn add(&mut self, length: usize, count: usize) {
        if count > 0 {
            *self.lengths.entry(length).or_default() += count;
        }
    }

    /// `(length, count)` pairs, increasing in length.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lengths.iter().map(|(&l, &c)| (l, c))
    }

    pub fn face_count(&self) -> usize {
        self.lengths.values().sum()
    }

    pub fn total_length(&self) -> usize {
        self.lengths.iter().map(|(l, c)| l * c).sum()
    }
}

/// Census of the traced faces.
pub fn all_faces(r: &DifferenceRotation) -> FaceCensus {
    FaceCensus::from_lengths(trace_faces(r).iter().map(Face::len))
}

/// For each column: `v/λ_c` faces of length `k·λ_c`; for each row: `v/λ_r` faces of length `h·λ_r`.
pub fn face_multiset_formula(a: &PartiallyFilledArray) -> Result<FaceCensus> {
    a.validate_qh()?;
    let v = a.ring().v();
    let mut census = FaceCensus::default();
    for j in 1..=a.n() {
        let k = a.skeleton().col(j).len();
        let lambda = lambda_of(a.col_sum(j), v);
        census.add(k * lambda, v / lambda);
    }
    for i in 1..=a.m() {
        let h = a.skeleton().row(i).len();
        let lambda = lambda_of(a.row_sum(i), v);
        census.add(h * lambda, v / lambda);
    }
    Ok(census)
}

/// Genus of the orientable surface: `χ = v − v(v−t)/2 + F`, `g = (2 − χ)/2`.
pub fn euler_genus(census: &FaceCensus, ring: Ring) -> Result<usize> {
    let v = ring.v() as i64;
    let edges = v * ring.degree() as i64 / 2;
    let chi = v - edges + census.face_count() as i64;
    if chi > 2 || chi % 2 != 0 || census.total_length() as i64 != 2 * edges {
        return Err(Error::EulerInconsistent(chi));
    }
    Ok(((2 - chi) / 2) as usize)
}

/// The line of the array that generates a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    Row(usize),
    Column(usize),
}

/// The generating line of `face`: every step `d` lies in `E(A)` (column of `d`)
/// or every step lies in `−E(A)` (row of `−d`). `None` if the steps disagree.
pub fn face_origin(a: &PartiallyFilledArray, face: &Face) -> Option<Line> {
    let ring = a.ring();
    let mut origin = None;
    for d in face.differences(ring) {
        let (i, j) = a.position(d)?;
        let line = if a.holds(d) { Line::Column(j) } else { Line::Row(i) };
        if *origin.get_or_insert(line) != line {
            return None;
        }
    }
    origin
}
