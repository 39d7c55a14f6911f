//! Clustering of cited-reference variants into reference identities.
//!
//! Two references are linked when their similarity reaches the threshold under the
//! selected [`DedupMode`]; clusters are the connected components of that graph. Exact
//! duplicates (same normalized string) are collapsed before any pairwise work since
//! every mode scores them 1.0.

mod minhash;
mod normalize;
mod similarity;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::exec::Parallelism;
use crate::ingest::{CitedReference, Language};

pub use minhash::{
    estimate_similarity, lsh_candidates, minhash_signature, shingle_hash, MinHashSignature,
    MinHasher, LSH_BANDS, LSH_ROWS, NUM_HASHES,
};
pub use normalize::{normalize, normalize_text, shingles, NormalizedRef, SHINGLE_LEN};
pub use similarity::{jaccard, jaccard_sorted, levenshtein, levenshtein_similarity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DedupError {
    #[error("reference string is empty")]
    EmptyString,
    #[error("shingle set is empty")]
    EmptyShingleSet,
    #[error("signatures differ in length or seed")]
    SignatureMismatch,
    #[error("no references to cluster")]
    EmptyInput,
    #[error("threshold {0} is outside (0, 1]")]
    InvalidThreshold(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DedupMode {
    /// LSH candidate generation, confirmed by the MinHash similarity estimate.
    MinhashLsh,
    /// Exact Jaccard over shingle sets, all pairs.
    ExactJaccard,
    /// `1 − edit distance / max length` over normalized strings, all pairs.
    Levenshtein,
}

impl DedupMode {
    pub fn default_threshold(self) -> f64 {
        match self {
            DedupMode::MinhashLsh | DedupMode::ExactJaccard => 0.85,
            DedupMode::Levenshtein => 0.75,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DedupConfig {
    pub mode: DedupMode,
    pub threshold: f64,
    pub seed: u64,
    pub parallelism: Parallelism,
}

impl DedupConfig {
    pub const DEFAULT_SEED: u64 = 42;

    /// Mode defaults: threshold 0.85 (0.75 for Levenshtein), seed 42.
    pub fn new(mode: DedupMode) -> Self {
        DedupConfig {
            mode,
            threshold: mode.default_threshold(),
            seed: Self::DEFAULT_SEED,
            parallelism: Parallelism::default(),
        }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }
}

impl Default for DedupConfig {
    fn default() -> Self {
        Self::new(DedupMode::MinhashLsh)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterId(pub u32);

impl fmt::Display for ClusterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

/// A deduplicated reference identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceCluster {
    pub cluster_id: ClusterId,
    pub canonical: String,
    pub members: Vec<CitedReference>,
    pub count: usize,
    pub rpy: Option<i32>,
    pub language: Language,
}

impl ReferenceCluster {
    /// Derives canonical string, RPY and language from `members`.
    ///
    /// The canonical variant is the most frequent raw string (ties: smallest normalized
    /// form, then smallest raw string); the RPY is the most frequent member year (ties:
    /// earliest); the language is that of the canonical variant.
    ///
    /// # Panics
    /// If `members` is empty.
    pub fn from_members(cluster_id: ClusterId, members: Vec<CitedReference>) -> Self {
        assert!(!members.is_empty(), "a cluster needs at least one member");
        let mut variants: BTreeMap<&str, usize> = BTreeMap::new();
        for m in &members {
            *variants.entry(&m.raw_string).or_default() += 1;
        }
        let (canonical, _) = variants
            .iter()
            .map(|(raw, n)| (*raw, (*n, normalize_text(raw))))
            .min_by(|(ra, (na, norm_a)), (rb, (nb, norm_b))| {
                nb.cmp(na).then_with(|| norm_a.cmp(norm_b)).then_with(|| ra.cmp(rb))
            })
            .expect("non-empty");
        let canonical = canonical.to_owned();

        let mut years: BTreeMap<i32, usize> = BTreeMap::new();
        for y in members.iter().filter_map(|m| m.ref_year) {
            *years.entry(y).or_default() += 1;
        }
        // ties go to the earliest year
        let rpy = years
            .iter()
            .max_by(|(ya, na), (yb, nb)| na.cmp(nb).then_with(|| yb.cmp(ya)))
            .map(|(y, _)| *y);

        let language = members
            .iter()
            .find(|m| m.raw_string == canonical)
            .expect("canonical is a member")
            .language;
        ReferenceCluster { cluster_id, count: members.len(), canonical, members, rpy, language }
    }
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Distinct normalized strings with the input positions that produced them.
struct UniqueRefs<'a> {
    norms: Vec<&'a str>,
    positions: Vec<Vec<usize>>,
}

impl<'a> UniqueRefs<'a> {
    fn build(norms: &'a [String]) -> Self {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut out = UniqueRefs { norms: Vec::new(), positions: Vec::new() };
        for (pos, norm) in norms.iter().enumerate() {
            let slot = *index.entry(norm.as_str()).or_insert_with(|| {
                out.norms.push(norm.as_str());
                out.positions.push(Vec::new());
                out.norms.len() - 1
            });
            out.positions[slot].push(pos);
        }
        out
    }
}

fn minhash_edges(uniq: &UniqueRefs<'_>, config: &DedupConfig) -> Result<Vec<(u32, u32)>, DedupError> {
    let hasher = MinHasher::new(NUM_HASHES, config.seed);
    let signatures = config
        .parallelism
        .map(&uniq.norms, |norm| {
            let hashes: Vec<u64> = shingles(norm).iter().map(|s| shingle_hash(s)).collect();
            hasher.signature_from_hashes(&hashes)
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let candidates = lsh_candidates(&signatures, LSH_BANDS, LSH_ROWS, config.parallelism);
    let keep = config.parallelism.map(&candidates, |&(i, j)| {
        estimate_similarity(&signatures[i as usize], &signatures[j as usize])
            .map(|s| s >= config.threshold)
            .unwrap_or(false)
    });
    Ok(candidates.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect())
}

fn jaccard_edges(uniq: &UniqueRefs<'_>, config: &DedupConfig) -> Vec<(u32, u32)> {
    let mut dictionary: HashMap<String, u32> = HashMap::new();
    let sets: Vec<Vec<u32>> = uniq
        .norms
        .iter()
        .map(|norm| {
            let mut ids: Vec<u32> = shingles(norm)
                .into_iter()
                .map(|s| {
                    let next = dictionary.len() as u32;
                    *dictionary.entry(s).or_insert(next)
                })
                .collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    let threshold = config.threshold;
    config.parallelism.flat_map_range(sets.len(), |i| {
        let a = &sets[i];
        (i + 1..sets.len())
            .filter(|&j| {
                let b = &sets[j];
                let (lo, hi) = (a.len().min(b.len()), a.len().max(b.len()));
                // Jaccard never exceeds the size ratio
                lo as f64 / hi as f64 >= threshold && jaccard_sorted(a, b) >= threshold
            })
            .map(|j| (i as u32, j as u32))
            .collect()
    })
}

fn levenshtein_edges(uniq: &UniqueRefs<'_>, config: &DedupConfig) -> Vec<(u32, u32)> {
    let chars: Vec<Vec<char>> = uniq.norms.iter().map(|n| n.chars().collect()).collect();
    let threshold = config.threshold;
    config.parallelism.flat_map_range(chars.len(), |i| {
        let a = &chars[i];
        (i + 1..chars.len())
            .filter(|&j| {
                let b = &chars[j];
                let (lo, hi) = (a.len().min(b.len()), a.len().max(b.len()));
                // the length gap alone bounds the similarity from above
                (hi == 0 || lo as f64 / hi as f64 >= threshold)
                    && levenshtein_similarity(a, b) >= threshold
            })
            .map(|j| (i as u32, j as u32))
            .collect()
    })
}

/// Clusters `refs` into reference identities.
///
/// Output order follows the first occurrence of each cluster in `refs`, and
/// `cluster_id`s number clusters in that order. Members keep input order.
pub fn cluster(refs: &[CitedReference], config: &DedupConfig) -> Result<Vec<ReferenceCluster>, DedupError> {
    if refs.is_empty() {
        return Err(DedupError::EmptyInput);
    }
    if !(config.threshold > 0.0 && config.threshold <= 1.0) {
        return Err(DedupError::InvalidThreshold(config.threshold));
    }
    if refs.iter().any(|r| r.raw_string.trim().is_empty()) {
        return Err(DedupError::EmptyString);
    }
    let norms = config.parallelism.map(refs, |r| normalize_text(&r.raw_string));
    let uniq = UniqueRefs::build(&norms);

    let edges = match config.mode {
        DedupMode::MinhashLsh => minhash_edges(&uniq, config)?,
        DedupMode::ExactJaccard => jaccard_edges(&uniq, config),
        DedupMode::Levenshtein => levenshtein_edges(&uniq, config),
    };

    let mut sets = DisjointSet::new(uniq.norms.len());
    for (i, j) in edges {
        sets.union(i, j);
    }
    let mut by_root: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (u, positions) in uniq.positions.iter().enumerate() {
        by_root.entry(sets.find(u as u32)).or_default().extend(positions);
    }
    let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort_unstable_by_key(|g| g[0]);

    Ok(groups
        .into_iter()
        .enumerate()
        .map(|(n, positions)| {
            let members = positions.into_iter().map(|p| refs[p].clone()).collect();
            ReferenceCluster::from_members(ClusterId(n as u32), members)
        })
        .collect())
}
