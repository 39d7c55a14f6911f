//! Acceptance criteria 1–8. Each criterion prints one `[acceptance] C<n> PASS|FAIL` line;
//! run with `--nocapture` to see them. Tolerances and runtime bounds are pinned below.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootcite::dedup::{estimate_similarity, MinHasher, NUM_HASHES};
use rootcite::spectroscopy::{corpus_stats, median_deviation, rpy_counts, SpectroscopyRow};
use rootcite::synth::{generate_corpus, render_cssci, variant_fixture, SynthConfig};
use rootcite::{cluster, find_peaks, parse_cssci, DedupConfig, DedupMode, Language, Parallelism, ReferenceCluster, SourceFormat};
use rootcite_cli::{cmd_create, cmd_ingest};

const SAMPLE: &str = include_str!("../../core/fixtures/1998-1.txt");

const C3_MAX_ABS_ERROR: f64 = 0.13;
const C3_MIN_FRACTION: f64 = 0.99;
const C4_MIN_AGREEMENT: f64 = 0.95;
const C4_THRESHOLD: f64 = 0.85;
const C8_RECORDS: usize = 5000;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

/// Runs `f`, then requires both its verdict and `elapsed <= bound`.
fn timed(id: &'static str, bound: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = bound.is_none_or(|b| elapsed <= b);
    let limit = bound.map_or(String::new(), |b| format!(" (limit {:.0?})", b));
    Outcome { id, pass: ok && in_time, detail: format!("{detail}; {:.2?}{limit}", elapsed) }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn rows(counts: &[u64]) -> Vec<SpectroscopyRow> {
    counts.iter().enumerate().map(|(i, &count)| SpectroscopyRow { rpy: 1900 + i as i32, count, median_dev: 0 }).collect()
}

fn devs(spectrum: &[SpectroscopyRow]) -> Vec<i64> {
    spectrum.iter().map(|r| r.median_dev).collect()
}

/// Brute-force windowed median: explicit window, full sort, lower middle.
fn oracle_median_devs(counts: &[u64]) -> Vec<i64> {
    let n = counts.len() as i64;
    (0..n)
        .map(|i| {
            let mut w: Vec<u64> = (i - 2..=i + 2).filter(|j| (0..n).contains(j)).map(|j| counts[j as usize]).collect();
            w.sort();
            counts[i as usize] as i64 - w[(w.len() - 1) / 2] as i64
        })
        .collect()
}

/// Exhaustive scan of the peak predicate.
fn oracle_peaks(spectrum: &[SpectroscopyRow], min_dev: i64) -> Vec<i32> {
    let d = devs(spectrum);
    (0..d.len())
        .filter(|&i| {
            d[i] >= min_dev && (i == 0 || d[i] > d[i - 1]) && (i + 1 == d.len() || d[i] >= d[i + 1])
        })
        .map(|i| spectrum[i].rpy)
        .collect()
}

fn random_series(seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..100).map(|_| (0..50).map(|_| rng.gen_range(0..=100)).collect()).collect()
}

fn spike_spectrum() -> Vec<SpectroscopyRow> {
    let mut counts = vec![0u64; 30];
    counts[5] = 9;
    counts[15] = 7;
    counts[25] = 5;
    median_deviation(&rows(&counts)).unwrap()
}

fn partition_holds(clusters: &[ReferenceCluster], n: usize) -> bool {
    let mut seen: Vec<u32> = clusters.iter().flat_map(|c| c.members.iter().map(|m| m.ordinal)).collect();
    seen.sort_unstable();
    clusters.iter().all(|c| c.count == c.members.len() && c.count > 0) && seen == (1..=n as u32).collect::<Vec<_>>()
}

fn pair_agreement(a: &[ReferenceCluster], b: &[ReferenceCluster], n: usize) -> f64 {
    let label = |clusters: &[ReferenceCluster]| {
        let mut lab: HashMap<u32, u32> = HashMap::new();
        for c in clusters {
            for m in &c.members {
                lab.insert(m.ordinal, c.cluster_id.0);
            }
        }
        (1..=n as u32).map(|o| lab[&o]).collect::<Vec<_>>()
    };
    let (la, lb) = (label(a), label(b));
    let mut agree = 0usize;
    let mut total = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            total += 1;
            agree += usize::from((la[i] == la[j]) == (lb[i] == lb[j]));
        }
    }
    agree as f64 / total as f64
}

fn c1_sample_golden() -> Outcome {
    timed("C1", secs(1), || {
        let out = parse_cssci(SAMPLE, "1998-1.txt");
        let rec = &out.records[0];
        let zh = rec.references.iter().filter(|r| r.language == Language::Chinese).count();
        let en = rec.references.len() - zh;
        let stores: Vec<Vec<u8>> = (0..2)
            .map(|_| {
                let tmp = tempfile::tempdir().unwrap();
                let layout = cmd_create(tmp.path()).unwrap();
                fs::write(layout.data_dir(SourceFormat::Cssci).join("1998-1.txt"), SAMPLE).unwrap();
                cmd_ingest(&layout, SourceFormat::Cssci, Parallelism::default()).unwrap();
                fs::read(layout.store_path()).unwrap()
            })
            .collect();
        let ok = out.records.len() == 1
            && rec.pub_year == Some(1998)
            && rec.references.len() == 15
            && (zh, en) == (10, 5)
            && stores[0] == stores[1];
        let detail = format!(
            "records={} pub_year={:?} refs={} chinese={zh} english={en} store_identical={}",
            out.records.len(),
            rec.pub_year,
            rec.references.len(),
            stores[0] == stores[1]
        );
        (ok, detail)
    })
}

fn c2_stats_identity() -> Outcome {
    let bound = Duration::from_secs(5);
    timed("C2", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut failures = vec![];
        let mut slowest = Duration::ZERO;
        for i in 0..10 {
            let n = rng.gen_range(100..=1000);
            let start = Instant::now();
            let records = generate_corpus(&SynthConfig::new(n, 100 + i), "c2");
            let refs: Vec<_> = records.iter().flat_map(|r| r.references.clone()).collect();
            let clusters = cluster(&refs, &DedupConfig::default()).unwrap();
            let s = corpus_stats(&records, &clusters).unwrap();
            slowest = slowest.max(start.elapsed());
            let avg = s.avg_refs_per_paper;
            let identity = avg.numer() * s.n_publications == s.n_references_total * avg.denom();
            let split = s.n_references_chinese + s.n_references_english == s.n_references_total;
            if !(identity && split) {
                failures.push(n);
            }
        }
        (failures.is_empty() && slowest <= bound, format!("failing corpora {failures:?}; slowest corpus {slowest:.2?} (limit 5s)"))
    })
}

fn c3_minhash_accuracy() -> Outcome {
    timed("C3", secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut within = 0usize;
        let mut worst = 0f64;
        for i in 0..1000u64 {
            let size_a = rng.gen_range(20..200u64);
            let shared = rng.gen_range(0..=size_a);
            let private_b = rng.gen_range(20u64.saturating_sub(shared)..200 - shared);
            let base = i * 1_000_000;
            let a: BTreeSet<u64> = (base..base + size_a).collect();
            let b: BTreeSet<u64> = (base..base + shared).chain(base + 500_000..base + 500_000 + private_b).collect();
            let exact = a.intersection(&b).count() as f64 / a.union(&b).count() as f64;
            let hasher = MinHasher::new(NUM_HASHES, i);
            let sig = |s: &BTreeSet<u64>| {
                let strs: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                hasher.signature(strs.iter().map(String::as_str)).unwrap()
            };
            let err = (estimate_similarity(&sig(&a), &sig(&b)).unwrap() - exact).abs();
            worst = worst.max(err);
            within += usize::from(err <= C3_MAX_ABS_ERROR);
        }
        let fraction = within as f64 / 1000.0;
        (fraction >= C3_MIN_FRACTION, format!("{within}/1000 pairs within {C3_MAX_ABS_ERROR}; worst {worst:.3}"))
    })
}

fn c4_dedup_equivalence() -> Outcome {
    timed("C4", secs(10), || {
        let mut lowest = 1f64;
        let mut partitions = true;
        for seed in 0..10 {
            let refs = variant_fixture(300, seed);
            let exact = cluster(&refs, &DedupConfig::new(DedupMode::ExactJaccard).with_threshold(C4_THRESHOLD)).unwrap();
            let approx =
                cluster(&refs, &DedupConfig::new(DedupMode::MinhashLsh).with_threshold(C4_THRESHOLD).with_seed(seed)).unwrap();
            partitions &= partition_holds(&exact, 300) && partition_holds(&approx, 300);
            lowest = lowest.min(pair_agreement(&exact, &approx, 300));
        }
        (lowest >= C4_MIN_AGREEMENT && partitions, format!("lowest agreement {lowest:.4} over 10 seeds; partitions hold {partitions}"))
    })
}

fn c5_median_oracle() -> Outcome {
    timed("C5", secs(1), || {
        let mismatches = random_series(5)
            .iter()
            .filter(|counts| devs(&median_deviation(&rows(counts)).unwrap()) != oracle_median_devs(counts))
            .count();
        (mismatches == 0, format!("{mismatches}/100 series differ from the brute-force median"))
    })
}

fn c6_shift_invariance() -> Outcome {
    timed("C6", None, || {
        let mut fixtures: Vec<Vec<u64>> = random_series(6);
        fixtures.push(spike_spectrum().iter().map(|r| r.count).collect());
        let records = generate_corpus(&SynthConfig::new(500, 6), "c6");
        let refs: Vec<_> = records.iter().flat_map(|r| r.references.clone()).collect();
        let clusters = cluster(&refs, &DedupConfig::default()).unwrap();
        fixtures.push(rpy_counts(&clusters, (1880, 2017)).unwrap().rows.iter().map(|r| r.count).collect());
        let mut broken = 0;
        for counts in &fixtures {
            let base = median_deviation(&rows(counts)).unwrap();
            for c in [1u64, 10, 1000] {
                let shifted: Vec<u64> = counts.iter().map(|x| x + c).collect();
                let moved = median_deviation(&rows(&shifted)).unwrap();
                if devs(&base) != devs(&moved)
                    || find_peaks(&base, 5).unwrap() != find_peaks(&moved, 5).unwrap()
                {
                    broken += 1;
                }
            }
        }
        (broken == 0, format!("{} fixtures x 3 shifts, {broken} changed", fixtures.len()))
    })
}

fn c7_spikes() -> Outcome {
    timed("C7", None, || {
        let spectrum = spike_spectrum();
        let at5 = find_peaks(&spectrum, 5).unwrap();
        let at8 = find_peaks(&spectrum, 8).unwrap();
        let ok = at5 == vec![1905, 1915, 1925]
            && at8 == vec![1905]
            && at5 == oracle_peaks(&spectrum, 5)
            && at8 == oracle_peaks(&spectrum, 8);
        (ok, format!("min_dev 5 -> {at5:?}; min_dev 8 -> {at8:?}"))
    })
}

fn execute_pipeline(root: &Path, corpus_files: &[(String, String)]) -> Vec<Vec<u8>> {
    let bin = env!("CARGO_BIN_EXE_rootcite");
    let dir = root.to_str().unwrap();
    let run = |args: &[&str]| {
        let o = Command::new(bin).args(args).output().unwrap();
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    };
    run(&["create", dir]);
    for (name, text) in corpus_files {
        fs::write(root.join("data_cssci").join(name), text).unwrap();
    }
    run(&["ingest", "--format", "cssci", dir]);
    run(&["run", "--seed", "42", dir]);
    ["median_cssci.csv", "result_cssci.csv", "spectrum_cssci.svg"]
        .iter()
        .map(|f| fs::read(root.join("out").join(f)).unwrap())
        .collect()
}

fn c8_end_to_end_determinism() -> Outcome {
    let bound = Duration::from_secs(30);
    timed("C8", None, || {
        let records = generate_corpus(&SynthConfig::new(C8_RECORDS, 8), "c8");
        let files: Vec<(String, String)> =
            records.chunks(500).enumerate().map(|(i, chunk)| (format!("part{i:02}.txt"), render_cssci(chunk))).collect();
        let mut outputs = vec![];
        let mut slowest = Duration::ZERO;
        for _ in 0..2 {
            let tmp = tempfile::tempdir().unwrap();
            let start = Instant::now();
            outputs.push(execute_pipeline(tmp.path(), &files));
            slowest = slowest.max(start.elapsed());
        }
        let identical = outputs[0] == outputs[1];
        (identical && slowest <= bound, format!("{C8_RECORDS} records, outputs identical {identical}; slowest execution {slowest:.2?} (limit 30s)"))
    })
}

#[test]
fn acceptance_criteria() {
    let outcomes = [
        c1_sample_golden(),
        c2_stats_identity(),
        c3_minhash_accuracy(),
        c4_dedup_equivalence(),
        c5_median_oracle(),
        c6_shift_invariance(),
        c7_spikes(),
        c8_end_to_end_determinism(),
    ];
    for o in &outcomes {
        println!("[acceptance] {} {} {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
