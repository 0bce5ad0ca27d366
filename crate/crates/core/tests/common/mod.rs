#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use heflab::array::{cyclic_diagonal_skeleton, random_fill, PartiallyFilledArray, Skeleton};
use heflab::embedding::{build_rho0, DifferenceRotation};
use heflab::orderings::{orderings_from_orientation, solve_knight, OrderingPair, Orientation};
use heflab::ring::{default_support, random_support, Ring};

/// A skeleton with the ring it is filled over and a solving orientation.
#[derive(Clone, Debug)]
pub struct Shape {
    pub skeleton: Skeleton,
    pub ring: Ring,
    pub orientation: Orientation,
}

pub fn full_grid(m: usize, n: usize) -> Skeleton {
    Skeleton::new(m, n, (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j)))).unwrap()
}

/// Rows and columns of `s` relabelled by `rows[i-1]`, `cols[j-1]`.
pub fn permuted(s: &Skeleton, rows: &[usize], cols: &[usize]) -> Skeleton {
    Skeleton::new(s.m(), s.n(), s.cells().iter().map(|&(i, j)| (rows[i - 1], cols[j - 1]))).unwrap()
}

fn shape(skeleton: Skeleton, t: usize) -> Option<Shape> {
    let ring = Ring::new(2 * skeleton.len() + t, t).ok()?;
    let orientation = solve_knight(&skeleton)?;
    Some(Shape { skeleton, ring, orientation })
}

/// Solvable shapes with `v ≤ 21`.
pub fn small_shapes() -> Vec<Shape> {
    let mut out = Vec::new();
    for (n, k, t) in [(3, 3, 1), (3, 3, 2), (3, 3, 3), (5, 1, 1)] {
        out.extend(shape(cyclic_diagonal_skeleton(n, k).unwrap(), t));
    }
    out.extend(shape(permuted(&full_grid(3, 3), &[2, 3, 1], &[1, 3, 2]), 1));
    assert!(out.len() >= 3, "too few solvable small shapes");
    out
}

/// Solvable shapes of moderate size, square and rectangular, diagonal or not.
pub fn medium_shapes() -> Vec<Shape> {
    let mut out = Vec::new();
    for (n, k, t) in [(5, 3, 1), (5, 3, 3), (5, 3, 5), (7, 3, 1), (7, 3, 3), (3, 3, 1), (5, 5, 1)] {
        out.extend(shape(cyclic_diagonal_skeleton(n, k).unwrap(), t));
    }
    out.extend(shape(full_grid(3, 5), 1));
    out.extend(shape(full_grid(5, 3), 1));
    out.extend(shape(permuted(&cyclic_diagonal_skeleton(5, 3).unwrap(), &[3, 1, 5, 2, 4], &[2, 5, 1, 4, 3]), 1));
    assert!(out.len() >= 6, "too few solvable medium shapes");
    out
}

pub fn fill(shape: &Shape, seed: u64, random_sup: bool) -> PartiallyFilledArray {
    let support = if random_sup { random_support(shape.ring, seed ^ 0x5eed) } else { default_support(shape.ring) };
    random_fill(&shape.skeleton, &support, seed).unwrap()
}

pub fn embed(a: &PartiallyFilledArray, o: &Orientation) -> (OrderingPair, DifferenceRotation) {
    let op = orderings_from_orientation(a, o).unwrap();
    let r = build_rho0(a, &op).unwrap();
    (op, r)
}

/// `rot[x][y] = ρ_x(y) = x + ρ₀(y − x)`, or `usize::MAX` for non-neighbours.
pub fn explicit_rotation(r: &DifferenceRotation) -> Vec<Vec<usize>> {
    let ring = r.ring();
    let v = ring.v();
    (0..v)
        .map(|x| {
            (0..v)
                .map(|y| match r.get(ring.sub(y, x)) {
                    Some(d) => ring.add(x, d),
                    None => usize::MAX,
                })
                .collect()
        })
        .collect()
}

/// Face lengths by walking darts with `(x, y) ↦ (y, ρ_y(x))`.
pub fn naive_census(r: &DifferenceRotation) -> BTreeMap<usize, usize> {
    let rot = explicit_rotation(r);
    let v = rot.len();
    let mut seen = vec![vec![false; v]; v];
    let mut census = BTreeMap::new();
    for x in 0..v {
        for y in 0..v {
            if rot[x][y] == usize::MAX || seen[x][y] {
                continue;
            }
            let (mut a, mut b) = (x, y);
            let mut len = 0;
            while !seen[a][b] {
                seen[a][b] = true;
                len += 1;
                let c = rot[b][a];
                a = b;
                b = c;
            }
            *census.entry(len).or_insert(0) += 1;
        }
    }
    census
}

/// Every dart `(x, y)` satisfies `σ(ρ_x(y)) = ρ'_{σx}(σy)` (or `ρ'^{-1}` when reversing).
pub fn commutes(p: &[Vec<usize>], q: &[Vec<usize>], sigma: &[usize], reversing: bool) -> bool {
    let v = p.len();
    let mut seen = vec![false; v];
    for &s in sigma {
        if s >= v || std::mem::replace(&mut seen[s], true) {
            return false;
        }
    }
    for x in 0..v {
        for y in 0..v {
            let px = p[x][y];
            if px == usize::MAX {
                if q[sigma[x]][sigma[y]] != usize::MAX {
                    return false;
                }
                continue;
            }
            let (sx, sy, spx) = (sigma[x], sigma[y], sigma[px]);
            let ok = if reversing { q[sx][spx] == sy } else { q[sx][sy] == spx };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Automorphisms fixing `0`, found by propagating every seed `σ(x₁) = y`
/// (`x₁` the least neighbour of `0`) in both senses to a fixed point, then
/// checked dart by dart.
pub fn brute_aut0(r: &DifferenceRotation) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
    let rot = explicit_rotation(r);
    let v = rot.len();
    let inv: Vec<Vec<usize>> = rot
        .iter()
        .map(|row| {
            let mut back = vec![usize::MAX; v];
            for (y, &z) in row.iter().enumerate() {
                if z != usize::MAX {
                    back[z] = y;
                }
            }
            back
        })
        .collect();
    let x1 = (1..v).find(|&y| rot[0][y] != usize::MAX).unwrap();
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for reversing in [false, true] {
        let step = if reversing { &inv } else { &rot };
        for y in (0..v).filter(|&y| rot[0][y] != usize::MAX) {
            let mut sigma = vec![usize::MAX; v];
            sigma[0] = 0;
            sigma[x1] = y;
            let mut ok = true;
            let mut changed = true;
            while changed && ok {
                changed = false;
                for x in 0..v {
                    if sigma[x] == usize::MAX {
                        continue;
                    }
                    let Some(w0) = (0..v).find(|&w| rot[x][w] != usize::MAX && sigma[w] != usize::MAX) else {
                        continue;
                    };
                    let (mut w, mut sw) = (w0, sigma[w0]);
                    loop {
                        let (nw, nsw) = (rot[x][w], step[sigma[x]][sw]);
                        if nsw == usize::MAX {
                            ok = false;
                            break;
                        }
                        if sigma[nw] == usize::MAX {
                            sigma[nw] = nsw;
                            changed = true;
                        } else if sigma[nw] != nsw {
                            ok = false;
                            break;
                        }
                        w = nw;
                        sw = nsw;
                        if w == w0 {
                            break;
                        }
                    }
                    if !ok {
                        break;
                    }
                }
            }
            if ok && sigma.iter().all(|&s| s != usize::MAX) && commutes(&rot, &rot, &sigma, reversing) {
                if reversing { minus.insert(sigma) } else { plus.insert(sigma) };
            }
        }
    }
    (plus, minus)
}

/// All `σ` with `σ(0) = 0` by exhaustive permutation; only for tiny `v`.
pub fn exhaustive_aut0(r: &DifferenceRotation) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
    let rot = explicit_rotation(r);
    let v = rot.len();
    let mut rest: Vec<usize> = (1..v).collect();
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    permute(&mut rest, 0, &mut |perm| {
        let sigma: Vec<usize> = std::iter::once(0).chain(perm.iter().copied()).collect();
        if commutes(&rot, &rot, &sigma, false) {
            plus.insert(sigma.clone());
        }
        if commutes(&rot, &rot, &sigma, true) {
            minus.insert(sigma);
        }
    });
    (plus, minus)
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// Backtracking search for a 3×3 zero-sum filling of Z_19 using one of each ±x.
pub fn zero_sum_3x3() -> Option<[[usize; 3]; 3]> {
    fn go(cells: &mut [usize; 9], used: &mut [bool; 19], at: usize) -> bool {
        if at == 9 {
            return (0..3).all(|j| (cells[j] + cells[3 + j] + cells[6 + j]) % 19 == 0);
        }
        let (i, j) = (at / 3, at % 3);
        let candidates: Vec<usize> = if j == 2 {
            vec![(38 - cells[3 * i] - cells[3 * i + 1]) % 19]
        } else {
            (1..19).collect()
        };
        for x in candidates {
            if x == 0 || used[x] || used[19 - x] {
                continue;
            }
            if i == 2 && (cells[j] + cells[3 + j] + x) % 19 != 0 {
                continue;
            }
            used[x] = true;
            cells[at] = x;
            if go(cells, used, at + 1) {
                return true;
            }
            used[x] = false;
        }
        false
    }
    let mut cells = [0; 9];
    let mut used = [false; 19];
    go(&mut cells, &mut used, 0).then(|| [[cells[0], cells[1], cells[2]], [cells[3], cells[4], cells[5]], [cells[6], cells[7], cells[8]]])
}

/// `ρ₀(x) = g·x` for every generator `g` of the unit group of a prime `v`
/// (and of `Z_9` with `t = 3`): single cycles with many automorphisms.
pub fn power_rotations() -> Vec<DifferenceRotation> {
    let mut out = Vec::new();
    for (v, t) in [(7, 1), (9, 3), (11, 1), (13, 1), (17, 1), (19, 1)] {
        let ring = Ring::new(v, t).unwrap();
        for g in ring.units() {
            let pairs: Vec<(usize, usize)> = ring.non_j().map(|x| (x, ring.mul(g, x))).collect();
            if let Ok(r) = DifferenceRotation::from_pairs(ring, &pairs) {
                if r.is_single_cycle() {
                    out.push(r);
                }
            }
        }
    }
    out
}
