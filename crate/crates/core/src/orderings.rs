//! Row/column orientations, the orderings `ω_r`, `ω_c` they induce, the
//! Crazy Knight's Tour walk, and compatibility.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array::{Cell, PartiallyFilledArray, Skeleton};
use crate::error::{Error, Result};
use crate::ring::Ring;

pub(crate) const NONE: usize = usize::MAX;

/// Direction of every row (`+1` left to right) and every column (`+1` top to bottom).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation {
    #[serde(rename = "R")]
    rows: Vec<i8>,
    #[serde(rename = "C")]
    cols: Vec<i8>,
}

impl Orientation {
    pub fn new(rows: Vec<i8>, cols: Vec<i8>) -> Result<Self> {
        if rows.iter().chain(&cols).any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidOrdering("orientation entries must be ±1".into()));
        }
        Ok(Orientation { rows, cols })
    }

    pub fn all_forward(m: usize, n: usize) -> Self {
        Orientation { rows: vec![1; m], cols: vec![1; n] }
    }

    pub fn rows(&self) -> &[i8] {
        &self.rows
    }

    pub fn cols(&self) -> &[i8] {
        &self.cols
    }

    /// `(−R, −C)`.
    pub fn reversed(&self) -> Self {
        Orientation {
            rows: self.rows.iter().map(|s| -s).collect(),
            cols: self.cols.iter().map(|s| -s).collect(),
        }
    }

    /// Orientation of the transposed array: rows and columns swap roles.
    pub fn transpose(&self) -> Self {
        Orientation { rows: self.cols.clone(), cols: self.rows.clone() }
    }

    /// Column vector shifted so that column `j + shift` of the result carries `c_j`.
    pub fn with_cols_shifted(&self, shift: usize) -> Self {
        let n = self.cols.len();
        let mut cols = vec![1; n];
        for (j, &c) in self.cols.iter().enumerate() {
            cols[(j + shift) % n] = c;
        }
        Orientation { rows: self.rows.clone(), cols }
    }

    fn check_dims(&self, m: usize, n: usize) -> Result<()> {
        if self.rows.len() != m || self.cols.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "orientation is {}×{}, array is {m}×{n}",
                self.rows.len(),
                self.cols.len()
            )));
        }
        Ok(())
    }

    /// Decodes the candidate with the given bit patterns (bit set = −1,
    /// first coordinate most significant).
    fn from_bits(m: usize, n: usize, row_bits: u64, col_bits: u64) -> Self {
        let decode = |len: usize, bits: u64| -> Vec<i8> {
            (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 1 { -1 } else { 1 }).collect()
        };
        Orientation { rows: decode(m, row_bits), cols: decode(n, col_bits) }
    }
}

/// Cyclic successor tables on the cell indices of a skeleton.
///
/// `alpha_r[c]` is the next filled cell of `c`'s row in that row's direction;
/// `alpha_c[c]` likewise for columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSteps {
    pub alpha_r: Vec<usize>,
    pub alpha_c: Vec<usize>,
}

impl CellSteps {
    pub fn new(skeleton: &Skeleton, o: &Orientation) -> Result<Self> {
        o.check_dims(skeleton.m(), skeleton.n())?;
        let mut alpha_r = vec![NONE; skeleton.len()];
        let mut alpha_c = vec![NONE; skeleton.len()];
        for i in 1..=skeleton.m() {
            let row = skeleton.row(i);
            let forward = o.rows[i - 1] == 1;
            for (p, &j) in row.iter().enumerate() {
                let q = step(p, row.len(), forward);
                alpha_r[skeleton.index_of((i, j)).unwrap()] = skeleton.index_of((i, row[q])).unwrap();
            }
        }
        for j in 1..=skeleton.n() {
            let col = skeleton.col(j);
            let forward = o.cols[j - 1] == 1;
            for (p, &i) in col.iter().enumerate() {
                let q = step(p, col.len(), forward);
                alpha_c[skeleton.index_of((i, j)).unwrap()] = skeleton.index_of((col[q], j)).unwrap();
            }
        }
        Ok(CellSteps { alpha_r, alpha_c })
    }

    /// One knight move: row step, then column step.
    #[inline]
    pub fn composite(&self, c: usize) -> usize {
        self.alpha_c[self.alpha_r[c]]
    }
}

#[inline]
fn step(p: usize, len: usize, forward: bool) -> usize {
    if forward {
        (p + 1) % len
    } else {
        (p + len - 1) % len
    }
}

/// Row and column orderings as permutations of `E(A)`, indexed by residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderingPair {
    ring: Ring,
    omega_r: Vec<usize>,
    omega_c: Vec<usize>,
    orientation: Option<Orientation>,
}

impl OrderingPair {
    /// Builds a pair from explicit maps `x ↦ ω(x)` on a common domain.
    pub fn from_maps(ring: Ring, omega_r: &[(usize, usize)], omega_c: &[(usize, usize)]) -> Result<Self> {
        let r = permutation_table(ring.v(), omega_r)?;
        let c = permutation_table(ring.v(), omega_c)?;
        let same_domain = r.iter().zip(&c).all(|(a, b)| (*a == NONE) == (*b == NONE));
        if !same_domain {
            return Err(Error::InvalidOrdering("ω_r and ω_c act on different sets".into()));
        }
        Ok(OrderingPair { ring, omega_r: r, omega_c: c, orientation: None })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn orientation(&self) -> Option<&Orientation> {
        self.orientation.as_ref()
    }

    pub fn omega_r(&self, x: usize) -> Option<usize> {
        self.omega_r.get(x).copied().filter(|&y| y != NONE)
    }

    pub fn omega_c(&self, x: usize) -> Option<usize> {
        self.omega_c.get(x).copied().filter(|&y| y != NONE)
    }

    pub(crate) fn omega_r_table(&self) -> &[usize] {
        &self.omega_r
    }

    pub(crate) fn omega_c_table(&self) -> &[usize] {
        &self.omega_c
    }

    /// The common domain of both orderings, increasing.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.ring.v()).filter(|&x| self.omega_r[x] != NONE).collect()
    }

    /// Roles of rows and columns exchanged; pairs with [`PartiallyFilledArray::transpose`].
    pub fn swapped(&self) -> Self {
        OrderingPair {
            ring: self.ring,
            omega_r: self.omega_c.clone(),
            omega_c: self.omega_r.clone(),
            orientation: self.orientation.as_ref().map(Orientation::transpose),
        }
    }

    /// Whether each row (column) of `a` is exactly one cycle of `ω_r` (`ω_c`).
    pub fn is_valid_for(&self, a: &PartiallyFilledArray) -> bool {
        if self.ring != a.ring() || self.domain().len() != a.values().len() {
            return false;
        }
        let rows_ok = (1..=a.m()).all(|i| {
            let members: Vec<usize> = a.skeleton().row(i).iter().map(|&j| a.get((i, j)).unwrap()).collect();
            is_one_cycle_on(&self.omega_r, &members)
        });
        let cols_ok = (1..=a.n()).all(|j| {
            let members: Vec<usize> = a.skeleton().col(j).iter().map(|&i| a.get((i, j)).unwrap()).collect();
            is_one_cycle_on(&self.omega_c, &members)
        });
        rows_ok && cols_ok
    }
}

fn permutation_table(v: usize, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut table = vec![NONE; v];
    let mut hit = vec![false; v];
    for &(x, y) in pairs {
        if x >= v || y >= v {
            return Err(Error::InvalidOrdering(format!("({x}, {y}) leaves Z_{v}")));
        }
        if table[x] != NONE || hit[y] {
            return Err(Error::InvalidOrdering(format!("({x}, {y}) breaks injectivity")));
        }
        table[x] = y;
        hit[y] = true;
    }
    if (0..v).any(|x| (table[x] == NONE) != !hit[x]) {
        return Err(Error::InvalidOrdering("map is not a permutation of its domain".into()));
    }
    Ok(table)
}

fn is_one_cycle_on(table: &[usize], members: &[usize]) -> bool {
    let Some(&first) = members.first() else {
        return true;
    };
    let mut x = first;
    for _ in 0..members.len() {
        if !members.contains(&x) {
            return false;
        }
        x = table[x];
    }
    x == first
}

/// `ω_r`, `ω_c` read off the array in the directions of `o`.
pub fn orderings_from_orientation(a: &PartiallyFilledArray, o: &Orientation) -> Result<OrderingPair> {
    let steps = CellSteps::new(a.skeleton(), o)?;
    let v = a.ring().v();
    let mut omega_r = vec![NONE; v];
    let mut omega_c = vec![NONE; v];
    let values = a.values();
    for (c, &x) in values.iter().enumerate() {
        if omega_r[x] != NONE {
            return Err(Error::InvalidArray(format!("{x} appears twice")));
        }
        omega_r[x] = values[steps.alpha_r[c]];
        omega_c[x] = values[steps.alpha_c[c]];
    }
    Ok(OrderingPair { ring: a.ring(), omega_r, omega_c, orientation: Some(o.clone()) })
}

/// Whether `ω_c ∘ ω_r` is a single cycle through all of `E(A)`.
pub fn is_compatible(op: &OrderingPair) -> bool {
    let domain = op.domain();
    let Some(&start) = domain.first() else {
        return false;
    };
    let mut x = start;
    let mut len = 0;
    loop {
        x = op.omega_c[op.omega_r[x]];
        len += 1;
        if x == start || len > domain.len() {
            break;
        }
    }
    x == start && len == domain.len()
}

/// The Crazy Knight's Tour list `L_{R,C}(start)`: the orbit of `start` under
/// "row step, then column step", recorded after each column step, ending
/// before the walk returns to `start`.
pub fn knight_walk(skeleton: &Skeleton, o: &Orientation, start: Cell) -> Result<Vec<Cell>> {
    let first = skeleton.index_of(start).ok_or(Error::EmptyCell(start.0, start.1))?;
    let steps = CellSteps::new(skeleton, o)?;
    let mut walk = vec![start];
    let mut c = steps.composite(first);
    while c != first {
        walk.push(skeleton.cells()[c]);
        c = steps.composite(c);
    }
    Ok(walk)
}

fn covers_all(steps: &CellSteps, len: usize) -> bool {
    let mut c = steps.composite(0);
    let mut visited = 1;
    while c != 0 {
        visited += 1;
        c = steps.composite(c);
    }
    visited == len
}

/// Searches for an orientation whose knight walk covers every filled cell.
///
/// Candidates are visited with `R = (+1, …, +1)` first, then the remaining
/// row vectors; within each row vector all column vectors are tried. Vectors
/// are ordered lexicographically with `+1 < −1`. The first solution in this
/// order is returned regardless of how many threads evaluate candidates.
pub fn solve_knight(skeleton: &Skeleton) -> Option<Orientation> {
    let (m, n) = (skeleton.m(), skeleton.n());
    if skeleton.is_empty() || m >= 64 || n >= 64 {
        return None;
    }
    for row_bits in 0..(1u64 << m) {
        let found = (0..(1u64 << n)).into_par_iter().find_first(|&col_bits| {
            let o = Orientation::from_bits(m, n, row_bits, col_bits);
            let steps = CellSteps::new(skeleton, &o).expect("dimensions match by construction");
            covers_all(&steps, skeleton.len())
        });
        if let Some(col_bits) = found {
            return Some(Orientation::from_bits(m, n, row_bits, col_bits));
        }
    }
    None
}
