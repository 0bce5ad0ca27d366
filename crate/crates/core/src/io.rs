//! JSON interchange formats. Array and skeleton indices are 1-based.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::array::{PartiallyFilledArray, Skeleton};
use crate::autiso::AutReport;
use crate::embedding::{DifferenceRotation, FaceCensus};
use crate::error::Result;
use crate::ring::{Ring, Support};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEntry {
    pub i: usize,
    pub j: usize,
    pub val: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayFile {
    pub m: usize,
    pub n: usize,
    pub v: usize,
    pub t: usize,
    pub cells: Vec<CellEntry>,
}

impl From<&PartiallyFilledArray> for ArrayFile {
    fn from(a: &PartiallyFilledArray) -> Self {
        ArrayFile {
            m: a.m(),
            n: a.n(),
            v: a.ring().v(),
            t: a.ring().t(),
            cells: a.entries().map(|((i, j), val)| CellEntry { i, j, val }).collect(),
        }
    }
}

impl ArrayFile {
    pub fn to_array(&self) -> Result<PartiallyFilledArray> {
        let ring = Ring::new(self.v, self.t)?;
        PartiallyFilledArray::new(ring, self.m, self.n, self.cells.iter().map(|c| (c.i, c.j, c.val)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPosition {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonFile {
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub cells: Vec<CellPosition>,
}

impl SkeletonFile {
    pub fn new(skeleton: &Skeleton, ring: Option<Ring>) -> Self {
        SkeletonFile {
            m: skeleton.m(),
            n: skeleton.n(),
            v: ring.map(|r| r.v()),
            t: ring.map(|r| r.t()),
            cells: skeleton.cells().iter().map(|&(i, j)| CellPosition { i, j }).collect(),
        }
    }

    pub fn to_skeleton(&self) -> Result<Skeleton> {
        Skeleton::new(self.m, self.n, self.cells.iter().map(|c| (c.i, c.j)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportFile {
    pub v: usize,
    pub t: usize,
    pub elements: Vec<usize>,
}

impl From<&Support> for SupportFile {
    fn from(s: &Support) -> Self {
        SupportFile { v: s.ring().v(), t: s.ring().t(), elements: s.elements().to_vec() }
    }
}

impl SupportFile {
    pub fn to_support(&self) -> Result<Support> {
        Support::new(Ring::new(self.v, self.t)?, self.elements.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub v: usize,
    pub t: usize,
    pub rho0: Vec<[usize; 2]>,
}

impl From<&DifferenceRotation> for EmbeddingFile {
    fn from(r: &DifferenceRotation) -> Self {
        EmbeddingFile {
            v: r.ring().v(),
            t: r.ring().t(),
            rho0: r.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl EmbeddingFile {
    pub fn to_rotation(&self) -> Result<DifferenceRotation> {
        let pairs: Vec<(usize, usize)> = self.rho0.iter().map(|&[a, b]| (a, b)).collect();
        DifferenceRotation::from_pairs(Ring::new(self.v, self.t)?, &pairs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCount {
    pub length: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusFile {
    pub faces: Vec<FaceCount>,
    pub genus: usize,
}

impl CensusFile {
    pub fn new(census: &FaceCensus, genus: usize) -> Self {
        CensusFile {
            faces: census.entries().map(|(length, count)| FaceCount { length, count }).collect(),
            genus,
        }
    }

    pub fn to_census(&self) -> FaceCensus {
        let mut census = FaceCensus::default();
        for f in &self.faces {
            census.add(f.length, f.count);
        }
        census
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutReportFile {
    pub v: usize,
    pub t: usize,
    pub aut0_plus: usize,
    pub aut0_minus: usize,
    pub aut_order: usize,
    pub translations_only: bool,
    pub generators: Vec<Vec<usize>>,
}

impl From<&AutReport> for AutReportFile {
    fn from(r: &AutReport) -> Self {
        AutReportFile {
            v: r.v,
            t: r.t,
            aut0_plus: r.aut0_plus,
            aut0_minus: r.aut0_minus,
            aut_order: r.aut_order,
            translations_only: r.translations_only,
            generators: r.generators.iter().map(|g| g.table().to_vec()).collect(),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::row_major_fixture;

    #[test]
    fn array_file_shape() {
        let a = row_major_fixture(5, 3, 1).unwrap();
        let json = serde_json::to_value(ArrayFile::from(&a)).unwrap();
        assert_eq!(json["v"], 31);
        assert_eq!(json["cells"][1], serde_json::json!({"i": 1, "j": 4, "val": 2}));
        let back: ArrayFile = serde_json::from_value(json).unwrap();
        assert_eq!(back.to_array().unwrap(), a);
    }

    #[test]
    fn embedding_file_shape() {
        let r = DifferenceRotation::from_cycle(Ring::new(7, 1).unwrap(), &[4, 6, 2, 3, 1, 5]).unwrap();
        let json = serde_json::to_string(&EmbeddingFile::from(&r)).unwrap();
        assert_eq!(json, r#"{"v":7,"t":1,"rho0":[[1,5],[2,3],[3,1],[4,6],[5,4],[6,2]]}"#);
    }

    #[test]
    fn skeleton_file_omits_ring() {
        let s = crate::array::cyclic_diagonal_skeleton(3, 1).unwrap();
        let json = serde_json::to_string(&SkeletonFile::new(&s, None)).unwrap();
        assert_eq!(json, r#"{"m":3,"n":3,"cells":[{"i":1,"j":1},{"i":2,"j":2},{"i":3,"j":3}]}"#);
    }
}
