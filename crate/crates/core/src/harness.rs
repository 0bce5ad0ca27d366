//! Seeded Monte Carlo experiments.
//!
//! Sample `i` of every experiment draws its support (when random) and its
//! filling from its own stream, seeded by [`subseed`]`(master, i)`. Samples
//! are evaluated in parallel and reduced in index order, so a report depends
//! only on the experiment spec.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array::{cyclic_diagonal_skeleton, random_fill_with, row_major_fixture, PartiallyFilledArray, Skeleton};
use crate::autiso::{
    diagonal_shift_equivalent, diagonal_translate, embeddings_equal, full_aut, same_rotation, verify_morphism,
    MorphismVerdict, Sense,
};
use crate::embedding::{
    build_rho0, euler_genus, expand, face_multiset_formula, face_origin, trace_faces, DifferenceRotation, FaceCensus,
    Line,
};
use crate::error::{Error, Result};
use crate::io::ArrayFile;
use crate::orderings::{orderings_from_orientation, solve_knight, OrderingPair, Orientation};
use crate::ring::{default_support, random_support_with, Ring, Support};
use crate::rng::{sample_rng, subseed, SUBSEED_RULE};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "HEFLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    NhFraction,
    AutTrivialFraction,
    Distinctness,
    CensusConsistency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkeletonKind {
    #[default]
    CyclicDiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportPolicy {
    #[default]
    Default,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Size {
    pub n: usize,
    pub k: usize,
}

fn default_planted_shift() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Square array sizes `n × n` with `k` filled cells per row and column.
    pub sizes: Vec<Size>,
    pub t: usize,
    #[serde(default)]
    pub skeleton: SkeletonKind,
    #[serde(default)]
    pub support: SupportPolicy,
    pub samples: usize,
    pub seed: u64,
    /// Use the row-major fixture as sample 0 (census-consistency only).
    #[serde(default)]
    pub include_fixture: bool,
    /// Diagonal shift of the planted pair (distinctness only).
    #[serde(default = "default_planted_shift")]
    pub planted_shift: usize,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, sizes: &[(usize, usize)], t: usize, samples: usize, seed: u64) -> Self {
        ExperimentSpec {
            kind,
            sizes: sizes.iter().map(|&(n, k)| Size { n, k }).collect(),
            t,
            skeleton: SkeletonKind::CyclicDiagonal,
            support: SupportPolicy::Default,
            samples,
            seed,
            include_fixture: false,
            planted_shift: default_planted_shift(),
        }
    }

    /// Sample count, sizes, and the cyclic-diagonal preconditions
    /// (`n ≥ k ≥ 1`, `nk` odd, `t ≢ 0 mod 4`, `t | 2nk`).
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidExperiment("empty sample: samples must be positive".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::InvalidExperiment("no sizes given".into()));
        }
        if self.t % 4 == 0 {
            return Err(Error::InvalidExperiment(format!("t = {} is divisible by 4", self.t)));
        }
        for &Size { n, k } in &self.sizes {
            if k == 0 || k > n {
                return Err(Error::InvalidExperiment(format!("need n ≥ k ≥ 1, got ({n}, {k})")));
            }
            if (n * k) % 2 == 0 {
                return Err(Error::InvalidExperiment(format!("nk = {} is even", n * k)));
            }
            if (2 * n * k) % self.t != 0 {
                return Err(Error::InvalidExperiment(format!("t = {} does not divide 2nk = {}", self.t, 2 * n * k)));
            }
        }
        Ok(())
    }
}

/// Estimate for one array size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeReport {
    pub n: usize,
    pub k: usize,
    pub v: usize,
    pub t: usize,
    pub samples: usize,
    pub hits: usize,
    pub estimate: f64,
    pub standard_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub solvable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
}

impl SizeReport {
    fn new(size: Size, ring: Ring, samples: usize, hits: usize, orientation: Option<Orientation>) -> Self {
        let (estimate, standard_error) = proportion(hits, samples);
        SizeReport {
            n: size.n,
            k: size.k,
            v: ring.v(),
            t: ring.t(),
            samples,
            hits,
            estimate,
            standard_error,
            bound: None,
            solvable: orientation.is_some(),
            orientation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// One evaluated sample; `flag` is the per-kind event (NH, non-trivial Aut, …).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub n: usize,
    pub k: usize,
    pub sample: usize,
    pub subseed: u64,
    pub flag: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub subseed_rule: String,
    pub sizes: Vec<SizeReport>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub wall_clock_ms: u128,
    pub records: Vec<SampleRecord>,
}

/// Sample proportion and its standard error `sqrt(p(1−p)/N)`.
pub fn proportion(hits: usize, samples: usize) -> (f64, f64) {
    if samples == 0 {
        return (0.0, 0.0);
    }
    let p = hits as f64 / samples as f64;
    (p, (p * (1.0 - p) / samples as f64).sqrt())
}

/// `1 − (m/(mh − h + 1) + n/(nk − k + 1))`.
pub fn nh_lower_bound(m: usize, n: usize, h: usize, k: usize) -> f64 {
    let (m, n, h, k) = (m as f64, n as f64, h as f64, k as f64);
    1.0 - (m / (m * h - h + 1.0) + n / (n * k - k + 1.0))
}

/// Thread cap from [`THREADS_ENV`]; `None` (all cores) when unset or unparsable.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `spec` on a pool of `threads` workers (all cores when `None`).
pub fn run_experiment_with_threads(spec: &ExperimentSpec, threads: Option<usize>) -> Result<ExperimentReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::InvalidExperiment(e.to_string()))?;
    pool.install(|| run_experiment(spec))
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    match spec.kind {
        ExperimentKind::NhFraction => run_nh_fraction(spec),
        ExperimentKind::AutTrivialFraction => run_aut_trivial_fraction(spec),
        ExperimentKind::Distinctness => run_distinctness(spec),
        ExperimentKind::CensusConsistency => run_census_consistency(spec),
    }
}

struct Setup {
    size: Size,
    ring: Ring,
    skeleton: Skeleton,
}

fn setup(spec: &ExperimentSpec, size: Size) -> Result<Setup> {
    let ring = Ring::for_array(size.n, size.k, spec.t)?;
    let skeleton = match spec.skeleton {
        SkeletonKind::CyclicDiagonal => cyclic_diagonal_skeleton(size.n, size.k)?,
    };
    Ok(Setup { size, ring, skeleton })
}

/// The array for sample `index`: support (if random) then filling, from one stream.
fn sample_array(spec: &ExperimentSpec, s: &Setup, base: &Support, index: usize) -> Result<(u64, PartiallyFilledArray)> {
    let seed = subseed(spec.seed, index as u64);
    let mut rng = sample_rng(seed);
    let support = match spec.support {
        SupportPolicy::Default => base.clone(),
        SupportPolicy::Random => random_support_with(s.ring, &mut rng),
    };
    Ok((seed, random_fill_with(&s.skeleton, &support, &mut rng)?))
}

fn finish(spec: &ExperimentSpec, start: Instant, sizes: Vec<SizeReport>, checks: Vec<Check>, records: Vec<SampleRecord>) -> ExperimentReport {
    ExperimentReport {
        spec: spec.clone(),
        subseed_rule: SUBSEED_RULE.to_string(),
        passed: checks.iter().all(|c| c.passed),
        sizes,
        checks,
        wall_clock_ms: start.elapsed().as_millis(),
        records,
    }
}

/// Fraction of random fillings that are non-zero-sum Heffter arrays, against
/// the lower bound `1 − (m/(mh−h+1) + n/(nk−k+1))`; passes iff the estimate is
/// at least `bound − 3·SE` for every size.
pub fn run_nh_fraction(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut sizes = Vec::new();
    let mut checks = Vec::new();
    let mut records = Vec::new();
    for &size in &spec.sizes {
        let s = setup(spec, size)?;
        let base = default_support(s.ring);
        let orientation = solve_knight(&s.skeleton);
        let outcomes: Vec<(u64, bool, String)> = (0..spec.samples)
            .into_par_iter()
            .map(|i| {
                let (seed, a) = sample_array(spec, &s, &base, i)?;
                Ok(match a.validate_nh() {
                    Ok(()) => (seed, true, String::new()),
                    Err(e) => (seed, false, e.to_string()),
                })
            })
            .collect::<Result<_>>()?;
        let hits = outcomes.iter().filter(|o| o.1).count();
        let mut report = SizeReport::new(size, s.ring, spec.samples, hits, orientation);
        let bound = nh_lower_bound(size.n, size.n, size.k, size.k);
        report.bound = Some(bound);
        let threshold = bound - 3.0 * report.standard_error;
        checks.push(Check::new(
            format!("nh-bound ({}, {})", size.n, size.k),
            report.estimate >= threshold,
            format!(
                "P(NH) = {:.4} ± {:.4}; bound {:.4}; pass iff estimate ≥ bound − 3·SE = {:.4}",
                report.estimate, report.standard_error, bound, threshold
            ),
        ));
        if !report.solvable {
            checks.push(Check::new(
                format!("knight-solvable ({}, {})", size.n, size.k),
                true,
                "no orientation found; recorded only, NH needs none",
            ));
        }
        records.extend(outcomes.into_iter().enumerate().map(|(i, (seed, flag, detail))| SampleRecord {
            n: size.n,
            k: size.k,
            sample: i,
            subseed: seed,
            flag,
            detail,
            witnesses: Vec::new(),
        }));
        sizes.push(report);
    }
    Ok(finish(spec, start, sizes, checks, records))
}

fn solved_orientation(s: &Setup) -> Result<Orientation> {
    solve_knight(&s.skeleton).ok_or_else(|| {
        Error::ExperimentAborted(format!("no knight orientation for the ({}, {}) skeleton", s.size.n, s.size.k))
    })
}

fn embed(a: &PartiallyFilledArray, o: &Orientation) -> Result<(OrderingPair, DifferenceRotation)> {
    let op = orderings_from_orientation(a, o)?;
    let r = build_rho0(a, &op)?;
    Ok((op, r))
}

/// Fraction of random embeddings (fixed solved orientation) whose automorphism
/// group is larger than the translations.
///
/// With several sizes, passes iff `q̂` at the largest `nk` is at most `q̂` at
/// the smallest `nk` plus twice the standard error of their difference, and
/// `q̂(largest) < 0.5`. Every non-identity automorphism found is replayed from
/// its subseed and re-verified edge by edge.
pub fn run_aut_trivial_fraction(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut sizes = Vec::new();
    let mut checks = Vec::new();
    let mut records = Vec::new();
    for &size in &spec.sizes {
        let s = setup(spec, size)?;
        let base = default_support(s.ring);
        let o = solved_orientation(&s)?;
        let outcomes: Vec<SampleRecord> = (0..spec.samples)
            .into_par_iter()
            .map(|i| {
                let (seed, a) = sample_array(spec, &s, &base, i)?;
                let (_, r) = embed(&a, &o)?;
                let aut = full_aut(&r);
                Ok(SampleRecord {
                    n: size.n,
                    k: size.k,
                    sample: i,
                    subseed: seed,
                    flag: !aut.translations_only,
                    detail: format!("|Aut0+| = {}, |Aut0-| = {}", aut.aut0_plus, aut.aut0_minus),
                    witnesses: aut.generators.iter().map(|g| g.table().to_vec()).collect(),
                })
            })
            .collect::<Result<_>>()?;

        // Soundness replay: rebuild each flagged embedding and check its witnesses.
        let mut bad = Vec::new();
        for rec in outcomes.iter().filter(|r| r.flag) {
            let (_, a) = sample_array(spec, &s, &base, rec.sample)?;
            let (_, r) = embed(&a, &o)?;
            let ok = !rec.witnesses.is_empty()
                && rec.witnesses.iter().all(|w| {
                    w[0] == 0 && !w.iter().enumerate().all(|(x, &y)| x == y) && verify_morphism(&r, &r, w).is_accepted()
                });
            if !ok {
                bad.push(rec.sample);
            }
        }
        let flagged = outcomes.iter().filter(|r| r.flag).count();
        checks.push(Check::new(
            format!("witnesses ({}, {})", size.n, size.k),
            bad.is_empty(),
            format!("{flagged} non-trivial samples, {} with unverifiable witnesses {bad:?}", bad.len()),
        ));
        sizes.push(SizeReport::new(size, s.ring, spec.samples, flagged, Some(o)));
        records.extend(outcomes);
    }

    let mut by_nk: Vec<&SizeReport> = sizes.iter().collect();
    by_nk.sort_by_key(|r| r.n * r.k);
    let (small, large) = (by_nk[0], by_nk[by_nk.len() - 1]);
    if by_nk.len() > 1 {
        let se = (small.standard_error.powi(2) + large.standard_error.powi(2)).sqrt();
        checks.push(Check::new(
            "trend",
            large.estimate <= small.estimate + 2.0 * se,
            format!(
                "q̂(nk={}) = {:.4}, q̂(nk={}) = {:.4}; pass iff q̂(large) ≤ q̂(small) + 2·SE_diff = {:.4}",
                large.n * large.k,
                large.estimate,
                small.n * small.k,
                small.estimate,
                small.estimate + 2.0 * se
            ),
        ));
    }
    checks.push(Check::new(
        "majority-trivial",
        large.estimate < 0.5,
        format!("q̂(nk={}) = {:.4}; pass iff < 0.5", large.n * large.k, large.estimate),
    ));
    Ok(finish(spec, start, sizes, checks, records))
}

fn rotation_key(r: &DifferenceRotation) -> u64 {
    let mut h = DefaultHasher::new();
    r.pairs().hash(&mut h);
    h.finish()
}

/// Least diagonal translate of `(A, C)`: equal keys ⟺ diagonal-shift equivalent.
fn diagonal_class_key(a: &PartiallyFilledArray, o: &Orientation) -> Result<(Vec<usize>, Vec<i8>)> {
    let n = a.n();
    let mut best: Option<(Vec<usize>, Vec<i8>)> = None;
    for shift in 0..n {
        let b = diagonal_translate(a, shift)?;
        let key = (b.values().to_vec(), o.with_cols_shifted(shift).cols().to_vec());
        if best.as_ref().is_none_or(|cur| key < *cur) {
            best = Some(key);
        }
    }
    Ok(best.expect("n ≥ 1"))
}

/// Distinct random fillings under one orientation: counts pairs giving the
/// same embedding (grouped by a hash of `ρ₀`, confirmed exactly) and pairs
/// related by a diagonal shift. Passes iff every equal pair is a diagonal
/// shift, every diagonal-shift pair is equal, and a planted translate is
/// recognised with its shift.
pub fn run_distinctness(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut sizes = Vec::new();
    let mut checks = Vec::new();
    let mut records = Vec::new();
    for &size in &spec.sizes {
        let s = setup(spec, size)?;
        let base = default_support(s.ring);
        let o = solved_orientation(&s)?;

        // Draw until `samples` distinct fillings are collected; indices past a
        // duplicate keep advancing so the result is still index-determined.
        let limit = spec.samples.saturating_mul(20).max(64);
        let mut seen = HashSet::new();
        let mut arrays = Vec::with_capacity(spec.samples);
        let mut index = 0;
        while arrays.len() < spec.samples {
            if index >= limit {
                return Err(Error::ExperimentAborted(format!(
                    "only {} distinct fillings after {limit} draws",
                    arrays.len()
                )));
            }
            let batch: Vec<(usize, u64, PartiallyFilledArray)> = (index..(index + spec.samples - arrays.len()).min(limit))
                .into_par_iter()
                .map(|i| sample_array(spec, &s, &base, i).map(|(seed, a)| (i, seed, a)))
                .collect::<Result<_>>()?;
            index += batch.len();
            for (i, seed, a) in batch {
                if arrays.len() < spec.samples && seen.insert(a.values().to_vec()) {
                    arrays.push((i, seed, a));
                }
            }
        }
        let embedded: Vec<(OrderingPair, DifferenceRotation)> =
            arrays.par_iter().map(|(_, _, a)| embed(a, &o)).collect::<Result<_>>()?;

        let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
        for (idx, (_, r)) in embedded.iter().enumerate() {
            buckets.entry(rotation_key(r)).or_default().push(idx);
        }
        let mut equal_pairs = Vec::new();
        let mut mismatch = 0usize;
        let mut unexplained = Vec::new();
        let mut bucket_list: Vec<&Vec<usize>> = buckets.values().filter(|b| b.len() > 1).collect();
        bucket_list.sort();
        for bucket in bucket_list {
            for (p, &x) in bucket.iter().enumerate() {
                for &y in &bucket[p + 1..] {
                    let (a, b) = (&arrays[x].2, &arrays[y].2);
                    let eq = embeddings_equal(a, &embedded[x].0, b, &embedded[y].0)?;
                    if eq != same_rotation(&embedded[x].1, &embedded[y].1) {
                        mismatch += 1;
                    }
                    if eq {
                        equal_pairs.push((x, y));
                        if diagonal_shift_equivalent(a, &o, b, &o)?.is_none() {
                            unexplained.push((arrays[x].0, arrays[y].0));
                        }
                    }
                }
            }
        }

        let mut classes: BTreeMap<(Vec<usize>, Vec<i8>), usize> = BTreeMap::new();
        for (_, _, a) in &arrays {
            *classes.entry(diagonal_class_key(a, &o)?).or_default() += 1;
        }
        let shift_pairs: usize = classes.values().map(|&c| c * (c - 1) / 2).sum();

        checks.push(Check::new(
            format!("equal-pairs-explained ({}, {})", size.n, size.k),
            unexplained.is_empty() && mismatch == 0,
            format!(
                "{} equal pairs among {} fillings, {} unexplained {:?}, {} ω/ρ₀ disagreements",
                equal_pairs.len(),
                arrays.len(),
                unexplained.len(),
                unexplained,
                mismatch
            ),
        ));
        checks.push(Check::new(
            format!("shift-pairs-equal ({}, {})", size.n, size.k),
            shift_pairs == equal_pairs.len(),
            format!("{shift_pairs} diagonal-shift pairs, {} equal pairs", equal_pairs.len()),
        ));

        // Planted pair: B = diagonal translate of the first filling with shifted C.
        let shift = spec.planted_shift % size.n;
        let a = &arrays[0].2;
        let b = diagonal_translate(a, shift)?;
        let o_b = o.with_cols_shifted(shift);
        let (op_b, r_b) = embed(&b, &o_b)?;
        let equal = embeddings_equal(a, &embedded[0].0, &b, &op_b)?;
        let found = diagonal_shift_equivalent(a, &o, &b, &o_b)?;
        checks.push(Check::new(
            format!("planted-shift ({}, {})", size.n, size.k),
            equal && same_rotation(&embedded[0].1, &r_b) && found == Some(shift),
            format!("planted ℓ = {shift}: equal = {equal}, recovered ℓ = {found:?}"),
        ));

        let mut report = SizeReport::new(size, s.ring, arrays.len(), equal_pairs.len(), Some(o));
        report.estimate = equal_pairs.len() as f64;
        report.standard_error = 0.0;
        sizes.push(report);
        records.extend(arrays.iter().map(|(i, seed, _)| SampleRecord {
            n: size.n,
            k: size.k,
            sample: *i,
            subseed: *seed,
            flag: true,
            detail: String::new(),
            witnesses: Vec::new(),
        }));
    }
    Ok(finish(spec, start, sizes, checks, records))
}

/// Result of the structural checks on one embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralCheck {
    pub census: FaceCensus,
    pub genus: usize,
}

/// Rotation validity, face census against the closed form, directed-edge
/// count, the row/column face per edge, genus, and translations as
/// orientation-preserving automorphisms.
pub fn check_structure(a: &PartiallyFilledArray, o: &Orientation) -> std::result::Result<StructuralCheck, String> {
    let ring = a.ring();
    let v = ring.v();
    let (_, r) = embed(a, o).map_err(|e| e.to_string())?;
    expand(&r).map_err(|e| format!("rotation invalid: {e}"))?;

    let faces = trace_faces(&r);
    let census = FaceCensus::from_lengths(faces.iter().map(|f| f.len()));
    let formula = face_multiset_formula(a).map_err(|e| e.to_string())?;
    if census != formula {
        return Err(format!("traced census {census:?} differs from formula {formula:?}"));
    }
    if census.total_length() != v * ring.degree() {
        return Err(format!("face lengths sum to {}, expected {}", census.total_length(), v * ring.degree()));
    }

    // kind[x·v + y]: Some(true) if the directed edge lies on a column face.
    let mut kind: Vec<Option<bool>> = vec![None; v * v];
    for face in &faces {
        let line = face_origin(a, face).ok_or_else(|| format!("face {:?} mixes lines", face.canonical()))?;
        let (is_col, len) = match line {
            Line::Column(j) => (true, a.skeleton().col(j).len()),
            Line::Row(i) => (false, a.skeleton().row(i).len()),
        };
        if face.len() % len != 0 {
            return Err(format!("face of length {} from {line:?} is not a multiple of {len}", face.len()));
        }
        let verts = face.vertices();
        for (p, &x) in verts.iter().enumerate() {
            let y = verts[(p + 1) % verts.len()];
            if kind[x * v + y].replace(is_col).is_some() {
                return Err(format!("directed edge ({x}, {y}) traced twice"));
            }
        }
    }
    for x in 0..v {
        for d in ring.non_j() {
            let y = ring.add(x, d);
            if x < y {
                match (kind[x * v + y], kind[y * v + x]) {
                    (Some(p), Some(q)) if p != q => {}
                    other => return Err(format!("edge {{{x}, {y}}} lies on faces {other:?}")),
                }
            }
        }
    }

    let genus = euler_genus(&census, ring).map_err(|e| e.to_string())?;
    for g in 0..v {
        let table: Vec<usize> = (0..v).map(|x| ring.add(x, g)).collect();
        if verify_morphism(&r, &r, &table) != MorphismVerdict::Accepted(Sense::Preserving) {
            return Err(format!("translation by {g} is not an orientation-preserving automorphism"));
        }
    }
    Ok(StructuralCheck { census, genus })
}

/// Structural invariants on every sample; passes iff all samples pass. The
/// first failing sample aborts the run with the array serialized.
pub fn run_census_consistency(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut sizes = Vec::new();
    let mut checks = Vec::new();
    let mut records = Vec::new();
    for &size in &spec.sizes {
        let s = setup(spec, size)?;
        let base = default_support(s.ring);
        let o = solved_orientation(&s)?;
        let outcomes: Vec<(SampleRecord, Option<String>)> = (0..spec.samples)
            .into_par_iter()
            .map(|i| {
                let (seed, a) = if i == 0 && spec.include_fixture {
                    (subseed(spec.seed, 0), row_major_fixture(size.n, size.k, spec.t)?)
                } else {
                    sample_array(spec, &s, &base, i)?
                };
                let outcome = check_structure(&a, &o);
                let (flag, detail, failure) = match outcome {
                    Ok(c) => {
                        let census: Vec<String> = c.census.entries().map(|(l, n)| format!("{l}^{n}")).collect();
                        (true, format!("faces {} genus {}", census.join(" "), c.genus), None)
                    }
                    Err(msg) => {
                        let array = serde_json::to_string(&ArrayFile::from(&a)).unwrap_or_default();
                        (false, msg.clone(), Some(format!("sample {i}: {msg}; array {array}")))
                    }
                };
                let rec = SampleRecord { n: size.n, k: size.k, sample: i, subseed: seed, flag, detail, witnesses: Vec::new() };
                Ok((rec, failure))
            })
            .collect::<Result<_>>()?;
        if let Some(msg) = outcomes.iter().find_map(|(_, f)| f.clone()) {
            return Err(Error::ExperimentAborted(msg));
        }
        let passed = outcomes.len();
        checks.push(Check::new(
            format!("structure ({}, {}), t = {}", size.n, size.k, spec.t),
            true,
            format!("{passed}/{} samples satisfy every structural check", spec.samples),
        ));
        sizes.push(SizeReport::new(size, s.ring, spec.samples, passed, Some(o)));
        records.extend(outcomes.into_iter().map(|(r, _)| r));
    }
    Ok(finish(spec, start, sizes, checks, records))
}
