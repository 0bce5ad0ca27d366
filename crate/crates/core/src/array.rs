//! Skeletons, partially filled arrays over `Z_v`, and quasi-Heffter /
//! non-zero-sum Heffter validation.

use std::fmt;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::ring::{default_support, Ring, Support};
use crate::rng::sample_rng;

/// A 1-based `(row, column)` position.
pub type Cell = (usize, usize);

/// A set of filled positions in an `m × n` grid.
///
/// Cells are kept in row-major order; that order defines the cell index used
/// throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Skeleton {
    m: usize,
    n: usize,
    cells: Vec<Cell>,
    index: Vec<Option<usize>>,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl fmt::Debug for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Skeleton")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("cells", &self.cells)
            .finish()
    }
}

impl Skeleton {
    pub fn new(m: usize, n: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidSkeleton(format!("empty grid {m}×{n}")));
        }
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_unstable();
        let mut index = vec![None; m * n];
        let mut rows = vec![Vec::new(); m];
        let mut cols = vec![Vec::new(); n];
        for (idx, &(i, j)) in cells.iter().enumerate() {
            if i == 0 || j == 0 || i > m || j > n {
                return Err(Error::InvalidSkeleton(format!("cell ({i}, {j}) outside {m}×{n}")));
            }
            let slot = &mut index[(i - 1) * n + (j - 1)];
            if slot.is_some() {
                return Err(Error::InvalidSkeleton(format!("cell ({i}, {j}) listed twice")));
            }
            *slot = Some(idx);
            rows[i - 1].push(j);
            cols[j - 1].push(i);
        }
        for col in &mut cols {
            col.sort_unstable();
        }
        Ok(Skeleton { m, n, cells, index, rows, cols })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, (i, j): Cell) -> Option<usize> {
        if i == 0 || j == 0 || i > self.m || j > self.n {
            return None;
        }
        self.index[(i - 1) * self.n + (j - 1)]
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.index_of(cell).is_some()
    }

    /// Filled column indices of row `i`, left to right.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i - 1]
    }

    /// Filled row indices of column `j`, top to bottom.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j - 1]
    }

    /// `(h, k)` when every row holds `h` cells and every column `k` cells.
    pub fn uniform_counts(&self) -> Option<(usize, usize)> {
        let h = self.rows[0].len();
        let k = self.cols[0].len();
        let uniform = self.rows.iter().all(|r| r.len() == h) && self.cols.iter().all(|c| c.len() == k);
        uniform.then_some((h, k))
    }

    pub fn transpose(&self) -> Skeleton {
        Skeleton::new(self.n, self.m, self.cells.iter().map(|&(i, j)| (j, i)))
            .expect("transpose of a valid skeleton")
    }

    /// `Some(k)` when the cells are exactly the diagonals `D_1 ∪ … ∪ D_k` of a square grid.
    pub fn cyclic_diagonal_width(&self) -> Option<usize> {
        if self.m != self.n {
            return None;
        }
        let (h, k) = self.uniform_counts()?;
        if h != k || k == 0 {
            return None;
        }
        (cyclic_diagonal_skeleton(self.n, k).ok()? == *self).then_some(k)
    }
}

/// `D_1 ∪ … ∪ D_k` on an `n × n` grid, where `D_d = {(d, 1), (d + 1, 2), …, (d − 1, n)}`
/// with row indices taken cyclically in `1..=n`.
pub fn cyclic_diagonal_skeleton(n: usize, k: usize) -> Result<Skeleton> {
    if k == 0 || k > n {
        return Err(Error::InvalidSkeleton(format!("need 1 ≤ k ≤ n, got n = {n}, k = {k}")));
    }
    let cells = (1..=k).flat_map(|d| (1..=n).map(move |j| ((d + j - 2) % n + 1, j)));
    Skeleton::new(n, n, cells)
}

/// First violated quasi-Heffter condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QhViolation {
    #[error("v − t = {degree} is not divisible by both 2m = {two_m} and 2n = {two_n}")]
    Dimensions { degree: usize, two_m: usize, two_n: usize },
    #[error("(a₁) row {row} has {found} filled cells, expected {expected}")]
    RowCount { row: usize, found: usize, expected: usize },
    #[error("(a₁) column {col} has {found} filled cells, expected {expected}")]
    ColumnCount { col: usize, found: usize, expected: usize },
    #[error("(b₁) entry {value} at {cell:?} lies in J")]
    InSubgroup { value: usize, cell: Cell },
    #[error("(b₁) {value} covered twice: at {first:?} and {second:?}")]
    Duplicate { value: usize, first: Cell, second: Cell },
}

/// Why an array fails to be a non-zero-sum Heffter array.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NhViolation {
    #[error(transparent)]
    Qh(#[from] QhViolation),
    #[error("(c₁) row {0} sums to 0")]
    ZeroRowSum(usize),
    #[error("(c₁) column {0} sums to 0")]
    ZeroColumnSum(usize),
}

/// An `m × n` partially filled array with entries in `Z_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartiallyFilledArray {
    ring: Ring,
    skeleton: Skeleton,
    values: Vec<usize>,
    // Cell index holding ±x, for each residue x.
    pos: Vec<Option<usize>>,
}

impl PartiallyFilledArray {
    /// Builds an array from `(i, j, value)` triples. Only structural problems are
    /// rejected here; Heffter-type conditions are checked by [`Self::validate_qh`].
    pub fn new(ring: Ring, m: usize, n: usize, entries: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut entries: Vec<(usize, usize, usize)> = entries.into_iter().collect();
        entries.sort_unstable();
        let skeleton = Skeleton::new(m, n, entries.iter().map(|&(i, j, _)| (i, j)))?;
        let values: Vec<usize> = entries.iter().map(|&(_, _, x)| x).collect();
        Self::from_parts(ring, skeleton, values)
    }

    /// `values[c]` is the entry of `skeleton.cells()[c]`.
    pub fn from_parts(ring: Ring, skeleton: Skeleton, values: Vec<usize>) -> Result<Self> {
        if values.len() != skeleton.len() {
            return Err(Error::InvalidArray(format!(
                "{} values for {} cells",
                values.len(),
                skeleton.len()
            )));
        }
        if let Some(&x) = values.iter().find(|&&x| x >= ring.v()) {
            return Err(Error::InvalidArray(format!("{x} is not a residue mod {}", ring.v())));
        }
        let mut pos = vec![None; ring.v()];
        for (c, &x) in values.iter().enumerate() {
            if !ring.in_j(x) {
                pos[x].get_or_insert(c);
                pos[ring.neg(x)].get_or_insert(c);
            }
        }
        Ok(PartiallyFilledArray { ring, skeleton, values, pos })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn m(&self) -> usize {
        self.skeleton.m
    }

    pub fn n(&self) -> usize {
        self.skeleton.n
    }

    /// Entries in row-major cell order, aligned with `skeleton().cells()`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.skeleton.cells.iter().copied().zip(self.values.iter().copied())
    }

    pub fn get(&self, cell: Cell) -> Option<usize> {
        self.skeleton.index_of(cell).map(|c| self.values[c])
    }

    /// `p(x)`: the cell holding `x` or `−x`; `None` off `±E(A)`.
    pub fn position(&self, x: usize) -> Option<Cell> {
        self.pos.get(x % self.ring.v()).copied().flatten().map(|c| self.skeleton.cells[c])
    }

    /// Whether `x ∈ E(A)` (as opposed to `−E(A)` or neither).
    pub fn holds(&self, x: usize) -> bool {
        self.pos[x].is_some_and(|c| self.values[c] == x)
    }

    /// Entry set as a [`Support`], if it is one.
    pub fn support(&self) -> Result<Support> {
        Support::new(self.ring, self.values.iter().copied())
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.skeleton
            .row(i)
            .iter()
            .fold(0, |acc, &j| self.ring.add(acc, self.get((i, j)).unwrap()))
    }

    pub fn col_sum(&self, j: usize) -> usize {
        self.skeleton
            .col(j)
            .iter()
            .fold(0, |acc, &i| self.ring.add(acc, self.get((i, j)).unwrap()))
    }

    /// `(h, k)` implied by `v = 2nk + t = 2mh + t`, if integral.
    pub fn expected_counts(&self) -> Option<(usize, usize)> {
        let degree = self.ring.degree();
        let (m, n) = (self.m(), self.n());
        (degree % (2 * m) == 0 && degree % (2 * n) == 0).then(|| (degree / (2 * m), degree / (2 * n)))
    }

    /// Checks (a₁) fill counts and (b₁) coverage of `Z_v \ J`.
    pub fn validate_qh(&self) -> Result<(), QhViolation> {
        let ring = self.ring;
        let (m, n) = (self.m(), self.n());
        let (h, k) = self.expected_counts().ok_or(QhViolation::Dimensions {
            degree: ring.degree(),
            two_m: 2 * m,
            two_n: 2 * n,
        })?;
        for i in 1..=m {
            let found = self.skeleton.row(i).len();
            if found != h {
                return Err(QhViolation::RowCount { row: i, found, expected: h });
            }
        }
        for j in 1..=n {
            let found = self.skeleton.col(j).len();
            if found != k {
                return Err(QhViolation::ColumnCount { col: j, found, expected: k });
            }
        }
        // Counts force |E(A)| = (v − t)/2, so pairwise-distinct classes outside J suffice.
        let mut seen: Vec<Option<Cell>> = vec![None; ring.v()];
        for (cell, x) in self.entries() {
            if ring.in_j(x) {
                return Err(QhViolation::InSubgroup { value: x, cell });
            }
            let class = x.min(ring.neg(x));
            if let Some(first) = seen[class] {
                return Err(QhViolation::Duplicate { value: x, first, second: cell });
            }
            seen[class] = Some(cell);
        }
        Ok(())
    }

    /// [`Self::validate_qh`] plus (c₁): no row or column sums to zero.
    pub fn validate_nh(&self) -> Result<(), NhViolation> {
        self.validate_qh()?;
        if let Some(i) = (1..=self.m()).find(|&i| self.row_sum(i) == 0) {
            return Err(NhViolation::ZeroRowSum(i));
        }
        if let Some(j) = (1..=self.n()).find(|&j| self.col_sum(j) == 0) {
            return Err(NhViolation::ZeroColumnSum(j));
        }
        Ok(())
    }

    pub fn is_qh(&self) -> bool {
        self.validate_qh().is_ok()
    }

    pub fn is_nh(&self) -> bool {
        self.validate_nh().is_ok()
    }

    pub fn transpose(&self) -> PartiallyFilledArray {
        let entries = self.entries().map(|((i, j), x)| (j, i, x));
        PartiallyFilledArray::new(self.ring, self.n(), self.m(), entries).expect("transpose of a valid array")
    }

    /// Same skeleton, entries replaced by `values` (row-major order).
    pub fn with_values(&self, values: Vec<usize>) -> Result<Self> {
        Self::from_parts(self.ring, self.skeleton.clone(), values)
    }
}

/// Fills `skeleton` with a uniformly random bijection onto `support`.
///
/// The support is shuffled in increasing order with a ChaCha8 stream seeded
/// by `seed`, then assigned to the cells in row-major order.
pub fn random_fill(skeleton: &Skeleton, support: &Support, seed: u64) -> Result<PartiallyFilledArray> {
    let mut rng = sample_rng(seed);
    random_fill_with(skeleton, support, &mut rng)
}

pub(crate) fn random_fill_with<R: rand::Rng>(
    skeleton: &Skeleton,
    support: &Support,
    rng: &mut R,
) -> Result<PartiallyFilledArray> {
    if skeleton.len() != support.len() {
        return Err(Error::DimensionMismatch(format!(
            "skeleton has {} cells but support has {} elements",
            skeleton.len(),
            support.len()
        )));
    }
    let mut values = support.elements().to_vec();
    values.shuffle(rng);
    PartiallyFilledArray::from_parts(support.ring(), skeleton.clone(), values)
}

/// Cyclically `k`-diagonal `n × n` array over `Z_{2nk+t}` filled row-major with the
/// default support in increasing order (`1, 2, …, nk` when `t = 1`).
pub fn row_major_fixture(n: usize, k: usize, t: usize) -> Result<PartiallyFilledArray> {
    let ring = Ring::for_array(n, k, t)?;
    let skeleton = cyclic_diagonal_skeleton(n, k)?;
    let support = default_support(ring);
    PartiallyFilledArray::from_parts(ring, skeleton, support.elements().to_vec())
}
