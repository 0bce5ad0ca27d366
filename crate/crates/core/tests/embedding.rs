mod common;

use std::collections::BTreeMap;

use heflab::array::{row_major_fixture, PartiallyFilledArray};
use heflab::embedding::{
    all_faces, euler_genus, expand, face_multiset_formula, face_of, face_origin, face_successor, trace_faces,
    DifferenceRotation, FaceCensus, Line,
};
use heflab::orderings::{solve_knight, OrderingPair};
use heflab::ring::{lambda_of, Ring};
use proptest::prelude::*;

fn k7() -> DifferenceRotation {
    DifferenceRotation::from_cycle(Ring::new(7, 1).unwrap(), &[4, 6, 2, 3, 1, 5]).unwrap()
}

fn census_map(c: &FaceCensus) -> BTreeMap<usize, usize> {
    c.entries().collect()
}

/// `F₁ = (x, x+a, x+a+ω_c(a), …)` of length `kλ_c` for `a ∈ E(A)`.
fn column_face_oracle(a: &PartiallyFilledArray, op: &OrderingPair, x: usize, d: usize) -> Vec<usize> {
    let ring = a.ring();
    let (_, j) = a.position(d).unwrap();
    let len = a.skeleton().col(j).len() * lambda_of(a.col_sum(j), ring.v());
    let mut face = vec![x];
    let (mut acc, mut step) = (x, d);
    for _ in 1..len {
        acc = ring.add(acc, step);
        face.push(acc);
        step = op.omega_c(step).unwrap();
    }
    face
}

/// `F₂ = (x, x+S_{L−1}, …, x+S₁)` with `S_j = Σ_{i=1}^{j} ω_r^{−i}(−a)`, `L = hλ_r`, for `a ∈ −E(A)`.
fn row_face_oracle(a: &PartiallyFilledArray, op: &OrderingPair, x: usize, d: usize) -> Vec<usize> {
    let ring = a.ring();
    let (i, _) = a.position(d).unwrap();
    let len = a.skeleton().row(i).len() * lambda_of(a.row_sum(i), ring.v());
    let omega_r_inv = |y: usize| op.domain().into_iter().find(|&z| op.omega_r(z) == Some(y)).unwrap();
    let mut partial = Vec::with_capacity(len);
    let (mut acc, mut step) = (0, ring.neg(d));
    for _ in 1..len {
        step = omega_r_inv(step);
        acc = ring.add(acc, step);
        partial.push(acc);
    }
    assert_eq!(partial[len - 2], d, "S_(L−1) must equal a");
    std::iter::once(x).chain(partial.iter().rev().map(|&s| ring.add(x, s))).collect()
}

#[test]
fn boundaries_match_the_closed_forms() {
    for shape in common::medium_shapes() {
        for seed in 0..3 {
            let a = common::fill(&shape, seed, seed == 2);
            let (op, r) = common::embed(&a, &shape.orientation);
            let ring = a.ring();
            for x in [0, 1, ring.v() - 1] {
                for d in ring.non_j() {
                    let traced = face_of(&r, (x, ring.add(x, d))).unwrap();
                    let expected = if a.holds(d) { column_face_oracle(&a, &op, x, d) } else { row_face_oracle(&a, &op, x, d) };
                    assert_eq!(traced.vertices(), &expected[..], "x = {x}, a = {d}");
                }
            }
        }
    }
}

#[test]
fn k7_fixture() {
    let r = k7();
    let sys = expand(&r).unwrap();
    assert_eq!(sys.at(0), &[4, 6, 2, 3, 1, 5]);
    assert_eq!(sys.at(3), &[0, 2, 5, 6, 4, 1]);
    let census = all_faces(&r);
    assert_eq!(census_map(&census), BTreeMap::from([(3, 14)]));
    assert_eq!(census_map(&census), common::naive_census(&r));
    assert_eq!(euler_genus(&census, r.ring()).unwrap(), 1);
}

#[test]
fn fixture_census() {
    let a = row_major_fixture(5, 3, 1).unwrap();
    let o = solve_knight(a.skeleton()).unwrap();
    let (_, r) = common::embed(&a, &o);
    let census = all_faces(&r);
    assert_eq!(census_map(&census), BTreeMap::from([(93, 10)]));
    assert_eq!(face_multiset_formula(&a).unwrap(), census);
    assert_eq!(euler_genus(&census, a.ring()).unwrap(), 213);
}

#[test]
fn zero_sum_array_has_short_faces_only() {
    let h = common::zero_sum_3x3().unwrap();
    let ring = Ring::new(19, 1).unwrap();
    let a = PartiallyFilledArray::new(ring, 3, 3, (0..3).flat_map(|i| (0..3).map(move |j| (i + 1, j + 1, h[i][j])))).unwrap();
    assert_eq!(census_map(&face_multiset_formula(&a).unwrap()), BTreeMap::from([(3, 6 * 19)]));
    if let Some(o) = solve_knight(a.skeleton()) {
        let (_, r) = common::embed(&a, &o);
        assert_eq!(census_map(&all_faces(&r)), BTreeMap::from([(3, 6 * 19)]));
    }
}

#[test]
fn successor_rejects_non_edges() {
    let r = DifferenceRotation::from_cycle(Ring::new(9, 3).unwrap(), &[1, 2, 4, 8, 7, 5]).unwrap();
    assert!(face_successor(&r, (0, 3)).is_err());
    assert!(face_successor(&r, (2, 2)).is_err());
    assert!(face_successor(&r, (0, 1)).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn embedding_invariants(idx in 0usize..10, seed in any::<u64>(), random_sup in any::<bool>()) {
        let shapes = common::medium_shapes();
        let shape = &shapes[idx % shapes.len()];
        let a = common::fill(shape, seed, random_sup);
        let (_, r) = common::embed(&a, &shape.orientation);
        let ring = a.ring();
        let v = ring.v();

        // Each rotation is a single cycle on exactly N(x).
        let sys = expand(&r).unwrap();
        sys.check().unwrap();
        for x in 0..v {
            let mut nbrs: Vec<usize> = sys.at(x).to_vec();
            nbrs.sort_unstable();
            let expected: Vec<usize> = (0..v).filter(|&y| !ring.in_j(ring.sub(y, x))).collect();
            prop_assert_eq!(nbrs, expected);
        }

        let faces = trace_faces(&r);
        let census = FaceCensus::from_lengths(faces.iter().map(|f| f.len()));
        prop_assert_eq!(&census, &face_multiset_formula(&a).unwrap());
        prop_assert_eq!(census_map(&census), common::naive_census(&r));
        prop_assert_eq!(census.total_length(), v * (v - ring.t()));
        prop_assert!(euler_genus(&census, ring).is_ok());

        // Each undirected edge: one column face, one row face, with lengths divisible by the line size.
        let mut on_column = vec![None; v * v];
        for f in &faces {
            prop_assert!(f.len() >= 3);
            let line = face_origin(&a, f);
            prop_assert!(line.is_some());
            let (col, size) = match line.unwrap() {
                Line::Column(j) => (true, a.skeleton().col(j).len()),
                Line::Row(i) => (false, a.skeleton().row(i).len()),
            };
            prop_assert_eq!(f.len() % size, 0);
            let vs = f.vertices();
            for p in 0..vs.len() {
                on_column[vs[p] * v + vs[(p + 1) % vs.len()]] = Some(col);
            }
        }
        for x in 0..v {
            for y in 0..v {
                if !ring.in_j(ring.sub(y, x)) {
                    prop_assert!(on_column[x * v + y].is_some());
                    prop_assert_ne!(on_column[x * v + y], on_column[y * v + x]);
                }
            }
        }

        // Translation covariance.
        let g = (seed % v as u64) as usize;
        for d in ring.non_j().take(4) {
            let f = face_of(&r, (1, ring.add(1, d))).unwrap();
            let shifted = face_of(&r, (ring.add(1, g), ring.add(1 + g, d))).unwrap();
            prop_assert_eq!(f.shifted(ring, g), shifted.clone());
            prop_assert_eq!(f.shifted(ring, g).canonical(), shifted.canonical());
        }
    }

    #[test]
    fn transposed_array_gives_the_same_census(seed in any::<u64>()) {
        let shapes = common::medium_shapes();
        let shape = &shapes[(seed % shapes.len() as u64) as usize];
        let a = common::fill(shape, seed, false);
        let t = a.transpose();
        let (_, r) = common::embed(&t, &shape.orientation.transpose());
        prop_assert_eq!(all_faces(&r), face_multiset_formula(&a).unwrap());
    }
}
