//! MinHash signatures over shingle sets and LSH banding for candidate pairs.
//!
//! Shingles are first hashed to 64 bits with FNV-1a (stable across platforms and
//! releases, so signatures are reproducible), then pushed through `k` universal hash
//! functions `(a·x + b) mod (2^61 − 1)` whose coefficients come from a ChaCha stream
//! seeded by the caller.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::normalize::NormalizedRef;
use super::DedupError;
use crate::exec::Parallelism;

/// Signature length.
pub const NUM_HASHES: usize = 128;
pub const LSH_BANDS: usize = 32;
pub const LSH_ROWS: usize = 4;

const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinHashSignature {
    pub values: Vec<u64>,
    pub seed: u64,
}

impl MinHashSignature {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn shingle_hash(shingle: &str) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for b in shingle.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(PRIME);
    }
    // splitmix64 finaliser; FNV alone leaves short keys poorly mixed in the high bits
    h ^= h >> 30;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 27;
    h = h.wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

fn mod_mersenne(x: u128) -> u64 {
    let p = MERSENNE_61 as u128;
    let folded = (x & p) + (x >> 61);
    let folded = (folded & p) + (folded >> 61);
    let r = folded as u64;
    if r >= MERSENNE_61 {
        r - MERSENNE_61
    } else {
        r
    }
}

/// A fixed family of `k` hash functions.
#[derive(Debug, Clone)]
pub struct MinHasher {
    seed: u64,
    coeffs: Vec<(u64, u64)>,
}

impl MinHasher {
    pub fn new(num_hashes: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..num_hashes)
            .map(|_| (rng.gen_range(1..MERSENNE_61), rng.gen_range(0..MERSENNE_61)))
            .collect();
        MinHasher { seed, coeffs }
    }

    pub fn num_hashes(&self) -> usize {
        self.coeffs.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Signature from pre-hashed shingles (see [`shingle_hash`]).
    pub fn signature_from_hashes(&self, hashes: &[u64]) -> Result<MinHashSignature, DedupError> {
        if hashes.is_empty() {
            return Err(DedupError::EmptyShingleSet);
        }
        let values = self
            .coeffs
            .iter()
            .map(|&(a, b)| {
                hashes
                    .iter()
                    .map(|&h| mod_mersenne(a as u128 * (h % MERSENNE_61) as u128 + b as u128))
                    .min()
                    .expect("non-empty")
            })
            .collect();
        Ok(MinHashSignature { values, seed: self.seed })
    }

    pub fn signature<'s, I>(&self, shingles: I) -> Result<MinHashSignature, DedupError>
    where
        I: IntoIterator<Item = &'s str>,
    {
        let hashes: Vec<u64> = shingles.into_iter().map(shingle_hash).collect();
        self.signature_from_hashes(&hashes)
    }
}

/// Signature of one normalized reference with the default `k = 128`.
pub fn minhash_signature(nref: &NormalizedRef<'_>, seed: u64) -> Result<MinHashSignature, DedupError> {
    MinHasher::new(NUM_HASHES, seed).signature(nref.shingles.iter().map(String::as_str))
}

/// Fraction of signature positions that agree.
pub fn estimate_similarity(a: &MinHashSignature, b: &MinHashSignature) -> Result<f64, DedupError> {
    if a.len() != b.len() || a.seed != b.seed || a.is_empty() {
        return Err(DedupError::SignatureMismatch);
    }
    let agree = a.values.iter().zip(&b.values).filter(|(x, y)| x == y).count();
    Ok(agree as f64 / a.len() as f64)
}

/// Index pairs `(i, j)`, `i < j`, that share at least one LSH band. Sorted, no repeats.
pub fn lsh_candidates(
    signatures: &[MinHashSignature],
    bands: usize,
    rows: usize,
    parallelism: Parallelism,
) -> Vec<(u32, u32)> {
    let mut pairs = parallelism.flat_map_range(bands, |band| {
        let mut buckets: HashMap<&[u64], Vec<u32>> = HashMap::new();
        for (i, sig) in signatures.iter().enumerate() {
            let key = &sig.values[band * rows..(band + 1) * rows];
            buckets.entry(key).or_default().push(i as u32);
        }
        let mut out = Vec::new();
        for members in buckets.values().filter(|m| m.len() > 1) {
            for (x, &i) in members.iter().enumerate() {
                out.extend(members[x + 1..].iter().map(|&j| (i, j)));
            }
        }
        out
    });
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}
