mod common;

use heflab::array::{cyclic_diagonal_skeleton, random_fill, row_major_fixture, Skeleton};
use heflab::orderings::{is_compatible, knight_walk, orderings_from_orientation, solve_knight, Orientation};
use heflab::ring::{default_support, Ring};
use proptest::prelude::*;

fn all_orientations(m: usize, n: usize) -> impl Iterator<Item = Orientation> {
    (0..1u32 << (m + n)).map(move |bits| {
        let sign = |b: usize| if bits >> b & 1 == 1 { -1 } else { 1 };
        Orientation::new((0..m).map(sign).collect(), (m..m + n).map(sign).collect()).unwrap()
    })
}

/// Length of the `ω_c ∘ ω_r` orbit of the smallest element, from the raw tables.
fn composite_orbit(a: &heflab::PartiallyFilledArray, o: &Orientation) -> usize {
    let op = orderings_from_orientation(a, o).unwrap();
    let start = a.values().iter().copied().min().unwrap();
    let mut x = op.omega_c(op.omega_r(start).unwrap()).unwrap();
    let mut len = 1;
    while x != start {
        x = op.omega_c(op.omega_r(x).unwrap()).unwrap();
        len += 1;
    }
    len
}

fn small_skeletons() -> Vec<Skeleton> {
    vec![
        cyclic_diagonal_skeleton(3, 3).unwrap(),
        cyclic_diagonal_skeleton(4, 2).unwrap(),
        cyclic_diagonal_skeleton(5, 3).unwrap(),
        cyclic_diagonal_skeleton(3, 1).unwrap(),
        common::full_grid(3, 5),
        common::full_grid(2, 4),
        common::permuted(&cyclic_diagonal_skeleton(5, 3).unwrap(), &[2, 4, 1, 5, 3], &[1, 2, 3, 5, 4]),
    ]
}

#[test]
fn walk_covers_iff_compatible_on_every_orientation() {
    for s in small_skeletons() {
        let ring = Ring::new(2 * s.len() + 1, 1).unwrap();
        let a = random_fill(&s, &default_support(ring), 11).unwrap();
        let b = random_fill(&s, &default_support(ring), 12).unwrap();
        for o in all_orientations(s.m(), s.n()) {
            let covers = knight_walk(&s, &o, s.cells()[0]).unwrap().len() == s.len();
            for arr in [&a, &b] {
                let op = orderings_from_orientation(arr, &o).unwrap();
                assert_eq!(covers, is_compatible(&op), "{o:?}");
                assert_eq!(covers, composite_orbit(arr, &o) == s.len(), "{o:?}");
            }
        }
    }
}

#[test]
fn walks_partition_the_cells() {
    for s in small_skeletons() {
        for o in all_orientations(s.m(), s.n()).step_by(3) {
            let mut orbit_of = vec![usize::MAX; s.len()];
            for (id, &c) in s.cells().iter().enumerate() {
                let w = knight_walk(&s, &o, c).unwrap();
                assert_eq!(w[0], c);
                let idx: Vec<usize> = w.iter().map(|&d| s.index_of(d).unwrap()).collect();
                let mut sorted = idx.clone();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(sorted.len(), w.len());
                if orbit_of[idx[0]] == usize::MAX {
                    assert!(idx.iter().all(|&d| orbit_of[d] == usize::MAX));
                    idx.iter().for_each(|&d| orbit_of[d] = id);
                } else {
                    assert!(idx.iter().all(|&d| orbit_of[d] == orbit_of[idx[0]]));
                }
            }
        }
    }
}

#[test]
fn walk_length_need_not_divide_cell_count() {
    let s = common::full_grid(3, 3);
    let o = Orientation::new(vec![-1, 1, 1], vec![-1, 1, 1]).unwrap();
    assert_eq!(knight_walk(&s, &o, (1, 1)).unwrap(), [(1, 1), (2, 3)]);
}

/// First solution in the documented order, by plain enumeration.
fn first_solution(s: &Skeleton) -> Option<Orientation> {
    let (m, n) = (s.m(), s.n());
    let vec = |bits: u32, len: usize| -> Vec<i8> { (0..len).map(|p| if bits >> (len - 1 - p) & 1 == 1 { -1 } else { 1 }).collect() };
    for rb in 0..1u32 << m {
        for cb in 0..1u32 << n {
            let o = Orientation::new(vec(rb, m), vec(cb, n)).unwrap();
            if knight_walk(s, &o, s.cells()[0]).unwrap().len() == s.len() {
                return Some(o);
            }
        }
    }
    None
}

#[test]
fn solver_matches_enumeration_and_is_deterministic() {
    for s in small_skeletons() {
        let found = solve_knight(&s);
        assert_eq!(found, first_solution(&s), "{s:?}");
        assert_eq!(found, solve_knight(&s));
    }
}

#[test]
fn reversed_solution_also_solves() {
    for s in small_skeletons() {
        for o in all_orientations(s.m(), s.n()) {
            let covers = |o: &Orientation| knight_walk(&s, o, s.cells()[0]).unwrap().len() == s.len();
            if covers(&o) {
                assert!(covers(&o.reversed()), "{o:?}");
            }
        }
    }
}

#[test]
fn known_solvable_cases() {
    for (n, k) in [(5, 3), (7, 3), (9, 5)] {
        let s = cyclic_diagonal_skeleton(n, k).unwrap();
        let o = solve_knight(&s).expect("solvable");
        assert_eq!(knight_walk(&s, &o, (1, 1)).unwrap().len(), n * k);
    }
    assert_eq!(solve_knight(&cyclic_diagonal_skeleton(4, 2).unwrap()), None);
}

#[test]
fn fixture_with_solved_orientation_is_compatible() {
    let a = row_major_fixture(5, 3, 1).unwrap();
    let o = solve_knight(a.skeleton()).unwrap();
    assert!(is_compatible(&orderings_from_orientation(&a, &o).unwrap()));
}

#[test]
fn one_filled_cell_per_line_is_never_compatible() {
    let s = cyclic_diagonal_skeleton(5, 1).unwrap();
    assert!(all_orientations(5, 5).all(|o| knight_walk(&s, &o, (1, 1)).unwrap().len() == 1));
}

proptest! {
    #[test]
    fn transposition_preserves_compatibility(seed in any::<u64>(), bits in any::<u16>()) {
        let s = cyclic_diagonal_skeleton(5, 3).unwrap();
        let a = random_fill(&s, &default_support(Ring::new(31, 1).unwrap()), seed).unwrap();
        let sign = |b: usize| if bits >> b & 1 == 1 { -1 } else { 1 };
        let o = Orientation::new((0..5).map(sign).collect(), (5..10).map(sign).collect()).unwrap();
        let op = orderings_from_orientation(&a, &o).unwrap();
        let op_t = orderings_from_orientation(&a.transpose(), &o.transpose()).unwrap();
        prop_assert_eq!(op.swapped(), op_t.clone());
        prop_assert_eq!(is_compatible(&op), is_compatible(&op_t));
        prop_assert!(op.is_valid_for(&a));
    }
}
