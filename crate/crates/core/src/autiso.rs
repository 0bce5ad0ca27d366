//! Automorphisms and isomorphisms of `Z_v`-regular embeddings.
//!
//! Every embedding here is given by its difference rotation, so translations
//! are orientation-preserving automorphisms and it suffices to look for maps
//! fixing `0`. Such a map is pinned down by where it sends the rotation at
//! `0`: a shift of the `ρ₀`-cycle (orientation preserving) or a reflection
//! of it (orientation reversing). Candidates are seeded that way, extended
//! vertex by vertex along rotations, and finally checked edge by edge.

use std::collections::VecDeque;
use std::fmt;

use crate::array::{PartiallyFilledArray, Skeleton};
use crate::embedding::DifferenceRotation;
use crate::error::{Error, Result};
use crate::orderings::{OrderingPair, Orientation, NONE};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sense {
    Preserving,
    Reversing,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Preserving => "preserving",
            Sense::Reversing => "reversing",
        })
    }
}

/// A vertex table `x ↦ σ(x)` together with the orientation behaviour it was accepted with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMap {
    table: Vec<usize>,
    sense: Sense,
}

impl VertexMap {
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &VertexMap) -> VertexMap {
        let sense = if self.sense == other.sense { Sense::Preserving } else { Sense::Reversing };
        VertexMap { table: other.table.iter().map(|&y| self.table[y]).collect(), sense }
    }

    pub fn inverse(&self) -> VertexMap {
        let mut table = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        VertexMap { table, sense: self.sense }
    }
}

/// Why a vertex table is not an embedding morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    WrongSize,
    NotBijective,
    NotGraphMap { x: usize, y: usize },
    RotationMismatch { x: usize, y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismVerdict {
    Accepted(Sense),
    Rejected(Rejection),
}

impl MorphismVerdict {
    pub fn sense(&self) -> Option<Sense> {
        match self {
            MorphismVerdict::Accepted(s) => Some(*s),
            MorphismVerdict::Rejected(_) => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, MorphismVerdict::Accepted(_))
    }
}

fn inverse_table(r: &DifferenceRotation) -> Vec<usize> {
    let mut inv = vec![NONE; r.ring().v()];
    for (a, b) in r.pairs() {
        inv[b] = a;
    }
    inv
}

/// Checks `σ ∘ ρ = ρ′ ∘ σ` (preserving) or `σ ∘ ρ = ρ′⁻¹ ∘ σ` (reversing) on every
/// directed edge, after checking that `σ` is a bijective graph map. When both
/// hold (only possible for `v − t ≤ 2`) the verdict is preserving.
pub fn verify_morphism(p: &DifferenceRotation, q: &DifferenceRotation, sigma: &[usize]) -> MorphismVerdict {
    match morphism_flags(p, q, &inverse_table(q), sigma) {
        Ok((true, _)) => MorphismVerdict::Accepted(Sense::Preserving),
        Ok((false, true)) => MorphismVerdict::Accepted(Sense::Reversing),
        Ok((false, false)) => unreachable!("morphism_flags rejects maps satisfying neither commutation rule"),
        Err(r) => MorphismVerdict::Rejected(r),
    }
}

/// `(preserving, reversing)` flags over all directed edges; at least one is set on success.
fn morphism_flags(
    p: &DifferenceRotation,
    q: &DifferenceRotation,
    q_inv: &[usize],
    sigma: &[usize],
) -> Result<(bool, bool), Rejection> {
    let ring = p.ring();
    let v = ring.v();
    if q.ring() != ring || sigma.len() != v {
        return Err(Rejection::WrongSize);
    }
    let mut hit = vec![false; v];
    for &y in sigma {
        if y >= v || std::mem::replace(&mut hit[y], true) {
            return Err(Rejection::NotBijective);
        }
    }
    let (mut preserving, mut reversing) = (true, true);
    for x in 0..v {
        let sx = sigma[x];
        for d in ring.non_j() {
            let y = ring.add(x, d);
            let e = ring.sub(sigma[y], sx);
            if ring.in_j(e) {
                return Err(Rejection::NotGraphMap { x, y });
            }
            let lhs = sigma[ring.add(x, p.at(d))];
            preserving &= lhs == ring.add(sx, q.at(e));
            reversing &= lhs == ring.add(sx, q_inv[e]);
            if !preserving && !reversing {
                return Err(Rejection::RotationMismatch { x, y });
            }
        }
    }
    Ok((preserving, reversing))
}

/// Why a seeded extension did not produce a morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendFailure {
    /// The seed does not fix `0` or leaves part of `N(0)` unassigned.
    IncompleteSeed,
    /// Two constraints demand different images for `vertex`.
    Conflict { vertex: usize },
    /// Two vertices were sent to `image`.
    NotInjective { image: usize },
    /// The propagated map failed the final edge-by-edge check.
    Rejected(Rejection),
}

/// Extends a partial map defined on `{0} ∪ N(0)` to all of `Z_v`.
///
/// Once `σ(x)` and `σ(y₀)` are known for a neighbour `y₀` of `x`, the whole
/// rotation at `x` is carried onto the rotation at `σ(x)`, forwards for
/// [`Sense::Preserving`] and backwards for [`Sense::Reversing`]. Vertices are
/// processed breadth-first; any disagreement aborts.
pub fn extend_candidate(
    p: &DifferenceRotation,
    q: &DifferenceRotation,
    seed: &[Option<usize>],
    sense: Sense,
) -> Result<VertexMap, ExtendFailure> {
    let q_inv = inverse_table(q);
    extend_with(p, q, &q_inv, seed, sense)
}

fn extend_with(
    p: &DifferenceRotation,
    q: &DifferenceRotation,
    q_inv: &[usize],
    seed: &[Option<usize>],
    sense: Sense,
) -> Result<VertexMap, ExtendFailure> {
    let ring = p.ring();
    let v = ring.v();
    if seed.len() != v || seed[0].is_none() || ring.non_j().any(|a| seed[a].is_none()) {
        return Err(ExtendFailure::IncompleteSeed);
    }
    let q_step: &[usize] = match sense {
        Sense::Preserving => q.table(),
        Sense::Reversing => q_inv,
    };

    let mut sigma = vec![NONE; v];
    let mut used = vec![false; v];
    for (x, image) in seed.iter().enumerate() {
        if let Some(y) = *image {
            if y >= v || std::mem::replace(&mut used[y], true) {
                return Err(ExtendFailure::NotInjective { image: y });
            }
            sigma[x] = y;
        }
    }

    let mut done = vec![false; v];
    let mut queue = VecDeque::with_capacity(v);
    queue.push_back((0, p.anchor()));
    for a in ring.non_j() {
        queue.push_back((a, 0));
    }
    let degree = ring.degree();
    while let Some((x, y0)) = queue.pop_front() {
        if std::mem::replace(&mut done[x], true) {
            continue;
        }
        let sx = sigma[x];
        let mut d = ring.sub(y0, x);
        let mut e = ring.sub(sigma[y0], sx);
        if ring.in_j(e) {
            return Err(ExtendFailure::Conflict { vertex: y0 });
        }
        for _ in 0..degree {
            let y = ring.add(x, d);
            let image = ring.add(sx, e);
            match sigma[y] {
                NONE => {
                    if std::mem::replace(&mut used[image], true) {
                        return Err(ExtendFailure::NotInjective { image });
                    }
                    sigma[y] = image;
                    queue.push_back((y, x));
                }
                current if current != image => return Err(ExtendFailure::Conflict { vertex: y }),
                _ => {}
            }
            d = p.at(d);
            e = q_step[e];
        }
    }
    if sigma.contains(&NONE) {
        return Err(ExtendFailure::Rejected(Rejection::NotBijective));
    }
    match morphism_flags(p, q, q_inv, &sigma) {
        Ok((preserving, reversing)) => {
            let holds = match sense {
                Sense::Preserving => preserving,
                Sense::Reversing => reversing,
            };
            debug_assert!(holds, "propagation enforces the seeded sense on every edge");
            if holds {
                Ok(VertexMap { table: sigma, sense })
            } else {
                Err(ExtendFailure::Rejected(Rejection::RotationMismatch { x: 0, y: p.anchor() }))
            }
        }
        Err(r) => Err(ExtendFailure::Rejected(r)),
    }
}

fn seed_from(ring: Ring, from: &[usize], to: impl Fn(usize) -> usize) -> Vec<Option<usize>> {
    let mut seed = vec![None; ring.v()];
    seed[0] = Some(0);
    for (i, &x) in from.iter().enumerate() {
        seed[x] = Some(to(i));
    }
    seed
}

/// Orientation-preserving automorphisms fixing `0`, one attempt per shift
/// `σ|_{N(0)} = ρ₀^ℓ`, `ℓ = 0, …, v − t − 1`. The identity comes first.
pub fn aut0_plus(p: &DifferenceRotation) -> Vec<VertexMap> {
    let ring = p.ring();
    let cycle = p.cycle();
    let n = cycle.len();
    let inv = inverse_table(p);
    (0..n)
        .filter_map(|shift| {
            let seed = seed_from(ring, &cycle, |i| cycle[(i + shift) % n]);
            extend_with(p, p, &inv, &seed, Sense::Preserving).ok()
        })
        .collect()
}

/// Orientation-reversing automorphisms fixing `0`: with `ρ₀ = (x₁, …, x_N)` read
/// from the anchor, one attempt per `ℓ = 1, …, N` seeded by `σ(x_j) = x_{ℓ−j}`.
pub fn aut0_minus(p: &DifferenceRotation) -> Vec<VertexMap> {
    let ring = p.ring();
    let cycle = p.cycle();
    let n = cycle.len();
    let inv = inverse_table(p);
    (1..=n)
        .filter_map(|ell| {
            // 0-based: σ(c_i) = c_{ℓ − 2 − i}.
            let seed = seed_from(ring, &cycle, |i| cycle[(ell + 2 * n - 2 - i) % n]);
            extend_with(p, p, &inv, &seed, Sense::Reversing).ok()
        })
        .collect()
}

/// Summary of `Aut(Π) = Z_v ⋊ Aut₀(Π)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutReport {
    pub v: usize,
    pub t: usize,
    pub aut0_plus: usize,
    pub aut0_minus: usize,
    pub aut_order: usize,
    pub translations_only: bool,
    /// Every non-identity element of `Aut₀`, preserving ones first, in seed order.
    pub generators: Vec<VertexMap>,
}

pub fn full_aut(p: &DifferenceRotation) -> AutReport {
    let ring = p.ring();
    let plus = aut0_plus(p);
    let minus = aut0_minus(p);
    let (np, nm) = (plus.len(), minus.len());
    let generators = plus.into_iter().filter(|s| !s.is_identity()).chain(minus).collect();
    AutReport {
        v: ring.v(),
        t: ring.t(),
        aut0_plus: np,
        aut0_minus: nm,
        aut_order: ring.v() * (np + nm),
        translations_only: np == 1 && nm == 0,
        generators,
    }
}

/// How an isomorphism was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoRoute {
    /// Alignment of the two `ρ₀`-cycles around `0`.
    Alignment { shift: usize },
    /// A unit multiplier `x ↦ ux`.
    Multiplier { unit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub map: VertexMap,
    pub route: IsoRoute,
}

fn check_rings(p: &DifferenceRotation, q: &DifferenceRotation) -> Result<()> {
    let (a, b) = (p.ring(), q.ring());
    if a != b {
        return Err(Error::RingMismatch(a.v(), a.t(), b.v(), b.t()));
    }
    Ok(())
}

/// Exact test: tries every alignment of the rotation at `0` of `p` with that of `q`
/// (shifts, then reflections), extending and verifying each.
pub fn isomorphic_exact(p: &DifferenceRotation, q: &DifferenceRotation) -> Result<Option<IsoWitness>> {
    check_rings(p, q)?;
    let ring = p.ring();
    let (cp, cq) = (p.cycle(), q.cycle());
    let n = ring.degree();
    if cp.len() != n || cq.len() != n {
        return Err(Error::NotSingleCycle);
    }
    let q_inv = inverse_table(q);
    for sense in [Sense::Preserving, Sense::Reversing] {
        for shift in 0..n {
            let seed = match sense {
                Sense::Preserving => seed_from(ring, &cp, |i| cq[(i + shift) % n]),
                Sense::Reversing => seed_from(ring, &cp, |i| cq[(shift + n - i) % n]),
            };
            if let Ok(map) = extend_with(p, q, &q_inv, &seed, sense) {
                return Ok(Some(IsoWitness { map, route: IsoRoute::Alignment { shift } }));
            }
        }
    }
    Ok(None)
}

/// Multiplier test: tries only `x ↦ ux` for the `φ(v)` units `u`. Complete
/// whenever `Aut₀(q)` is trivial, since every isomorphism fixing `0` is then
/// additive.
pub fn isomorphic_fast(p: &DifferenceRotation, q: &DifferenceRotation) -> Result<Option<IsoWitness>> {
    check_rings(p, q)?;
    let ring = p.ring();
    for unit in ring.units() {
        let table: Vec<usize> = (0..ring.v()).map(|x| ring.mul(unit, x)).collect();
        if let MorphismVerdict::Accepted(sense) = verify_morphism(p, q, &table) {
            return Ok(Some(IsoWitness { map: VertexMap { table, sense }, route: IsoRoute::Multiplier { unit } }));
        }
    }
    Ok(None)
}

/// Isomorphism test with witness (the exact route).
pub fn isomorphic(p: &DifferenceRotation, q: &DifferenceRotation) -> Result<Option<IsoWitness>> {
    isomorphic_exact(p, q)
}

/// Whether `φ_{σ,g} = σ ∘ τ_g⁻¹ ∘ σ⁻¹ ∘ τ_{σ(g)}` is the identity on `Z_v`.
/// Returns `false` for tables that are not bijections of `Z_v`.
pub fn phi_check(ring: Ring, sigma: &[usize], g: usize) -> bool {
    let v = ring.v();
    if sigma.len() != v {
        return false;
    }
    let mut inv = vec![NONE; v];
    for (x, &y) in sigma.iter().enumerate() {
        if y >= v || inv[y] != NONE {
            return false;
        }
        inv[y] = x;
    }
    let sg = sigma[g % v];
    (0..v).all(|x| {
        let y = inv[ring.add(x, sg)];
        sigma[ring.sub(y, g % v)] == x
    })
}

/// Whether two array-backed embeddings coincide: `ω_r^A = ω_r^B` and `ω_c^A = ω_c^B`.
pub fn embeddings_equal(
    a: &PartiallyFilledArray,
    op_a: &OrderingPair,
    b: &PartiallyFilledArray,
    op_b: &OrderingPair,
) -> Result<bool> {
    if a.ring() != b.ring() || a.support()? != b.support()? {
        return Err(Error::SupportMismatch);
    }
    Ok(op_a.omega_r_table() == op_b.omega_r_table() && op_a.omega_c_table() == op_b.omega_c_table())
}

/// Literal equality of the two difference rotations (anchors ignored).
pub fn same_rotation(p: &DifferenceRotation, q: &DifferenceRotation) -> bool {
    p.ring() == q.ring() && p.table() == q.table()
}

/// `B` with `b_{i+ℓ, j+ℓ} = a_{i,j}`, indices mod `n`.
pub fn diagonal_translate(a: &PartiallyFilledArray, shift: usize) -> Result<PartiallyFilledArray> {
    let n = a.n();
    if a.m() != n {
        return Err(Error::Precondition("diagonal translation needs a square array".into()));
    }
    let wrap = |i: usize| (i - 1 + shift) % n + 1;
    PartiallyFilledArray::new(a.ring(), n, n, a.entries().map(|((i, j), x)| (wrap(i), wrap(j), x)))
}

/// The shift `ℓ ∈ {0, …, n−1}` with `a_{i,j} = b_{i+ℓ,j+ℓ}` and `c^A_j = c^B_{j+ℓ}`, if any.
///
/// Both arrays must be cyclically `k`-diagonal on the same skeleton
/// `D_1 ∪ … ∪ D_k`, share their support, and use `R = (1, …, 1)`.
pub fn diagonal_shift_equivalent(
    a: &PartiallyFilledArray,
    o_a: &Orientation,
    b: &PartiallyFilledArray,
    o_b: &Orientation,
) -> Result<Option<usize>> {
    let width = |s: &Skeleton| s.cyclic_diagonal_width();
    if width(a.skeleton()).is_none() || a.skeleton() != b.skeleton() {
        return Err(Error::Precondition("arrays must share a cyclically k-diagonal skeleton D_1 ∪ … ∪ D_k".into()));
    }
    if a.ring() != b.ring() || a.support()? != b.support()? {
        return Err(Error::SupportMismatch);
    }
    let n = a.n();
    for o in [o_a, o_b] {
        if o.rows().len() != n || o.cols().len() != n {
            return Err(Error::DimensionMismatch("orientation does not fit the array".into()));
        }
        if o.rows().iter().any(|&r| r != 1) {
            return Err(Error::Precondition("row orientation must be (1, …, 1)".into()));
        }
    }
    let found = (0..n).find(|&shift| {
        let wrap = |i: usize| (i - 1 + shift) % n + 1;
        a.entries().all(|((i, j), x)| b.get((wrap(i), wrap(j))) == Some(x))
            && (1..=n).all(|j| o_a.cols()[j - 1] == o_b.cols()[wrap(j) - 1])
    });
    Ok(found)
}
