//! Seeded synthetic corpora for tests, benchmarks and demos.
//!
//! A corpus is drawn from a pool of cited works with heavy-tailed popularity and a few
//! planted "classic" years. Each citation of a work may be a variant of its canonical
//! string (initial spacing, fullwidth punctuation, doubled spaces, a transposed letter),
//! so deduplication has real work to do. The renderers produce export text that the
//! parsers read back into the same records.

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::ingest::{cr_year, CitedReference, Language, SourceFormat, SourceRecord};

const SURNAMES: &[&str] = &[
    "Garfield", "Price", "Small", "Lotka", "Bradford", "Kessler", "Burton", "White", "Callon",
    "Almind", "Egghe", "Rousseau", "Leydesdorff", "Hirsch", "Glanzel", "Moed", "Narin", "Merton",
    "Zipf", "Brookes", "Line", "Gosnell", "Marx", "Bornmann", "Thor", "Waltman", "VanRaan",
];
const WORDS: &[&str] = &[
    "citation", "analysis", "scientific", "literature", "networks", "journal", "impact",
    "productivity", "distribution", "obsolescence", "coupling", "indexes", "measure", "structure",
    "intellectual", "evaluation", "research", "fronts", "growth", "periodical", "information",
    "retrieval", "mapping", "knowledge", "collaboration", "ranking", "university", "patents",
    "altmetrics", "webometrics", "bibliometric", "indicators", "science", "history", "theory",
    "statistical", "documents", "co-word", "co-citation", "authors", "half-life", "core",
];
const JOURNALS: &[&str] = &[
    "Journal of Documentation", "Science", "Scientometrics", "American Documentation",
    "Journal of the American Society for Information Science", "Research Policy",
    "Information Processing and Management", "Journal of Informetrics", "Nature",
];
const WOS_JOURNALS: &[&str] = &[
    "J DOC", "SCIENCE", "SCIENTOMETRICS", "AM DOC", "J AM SOC INFORM SCI", "RES POLICY",
    "INFORM PROCESS MANAG", "J INFORMETR", "NATURE",
];
const CN_SURNAMES: &[&str] = &["邱均平", "俞培果", "丁学东", "李连璧", "徐新民", "严怡民", "王崇德", "赵红州", "蒋国华", "刘则渊", "庞景安", "马费成"];
const CN_WORDS: &[&str] = &[
    "文献", "计量", "引文", "分析", "老化", "情报", "科学", "评价", "期刊", "指标", "网络", "知识",
    "图谱", "研究", "方法", "理论", "合作", "影响", "测度", "学科", "结构", "演化", "信息", "管理",
];
const CN_JOURNALS: &[&str] = &["情报学报", "情报理论与实践", "图书情报工作", "中国图书馆学报", "情报杂志", "科学学研究", "情报业务研究", "情报科学"];
const CN_PRESSES: &[(&str, &str)] = &[("北京", "科学技术文献出版社"), ("武汉", "武汉大学出版社"), ("北京", "北京大学出版社"), ("上海", "上海人民出版社")];
const PLANTED_YEARS: &[i32] = &[1926, 1934, 1955, 1960, 1965];

/// A cited work in the generator's pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Work {
    pub text: String,
    pub year: i32,
    pub language: Language,
}

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub n_records: usize,
    pub n_works: usize,
    /// Inclusive bounds on references per record.
    pub refs_per_record: (usize, usize),
    /// Inclusive range of citing publication years.
    pub citing_years: (i32, i32),
    pub chinese_fraction: f64,
    /// Probability that a citation uses a perturbed form of the work's string.
    pub variant_rate: f64,
    pub format: SourceFormat,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(n_records: usize, seed: u64) -> Self {
        SynthConfig {
            n_records,
            n_works: (n_records * 3).max(50),
            refs_per_record: (0, 30),
            citing_years: (1998, 2017),
            chinese_fraction: 0.64,
            variant_rate: 0.3,
            format: SourceFormat::Cssci,
            seed,
        }
    }

    pub fn with_format(mut self, format: SourceFormat) -> Self {
        self.format = format;
        self
    }
}

fn title(rng: &mut impl Rng, words: &[&str], len: usize, sep: &str) -> String {
    (0..len).map(|_| *words.choose(rng).unwrap()).collect::<Vec<_>>().join(sep)
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

fn work_year(rng: &mut impl Rng, latest: i32) -> i32 {
    if rng.gen_bool(0.03) {
        return *PLANTED_YEARS.choose(rng).unwrap();
    }
    // most citations go to the two or three decades before the citing papers
    let age = (rng.gen::<f64>().powi(3) * 100.0) as i32;
    (latest - age).max(1880)
}

/// Draws one work rendered in the citation style of `format`.
pub fn random_work(rng: &mut impl Rng, format: SourceFormat, chinese_fraction: f64, latest: i32) -> Work {
    let year = work_year(rng, latest);
    if rng.gen_bool(chinese_fraction) {
        let author = CN_SURNAMES.choose(rng).unwrap();
        let len = rng.gen_range(3..7);
        let t = title(rng, CN_WORDS, len, "");
        let text = if rng.gen_bool(0.3) {
            let (city, press) = CN_PRESSES.choose(rng).unwrap();
            format!("{author}. {t}. {city}: {press}, {year}")
        } else {
            let j = CN_JOURNALS.choose(rng).unwrap();
            format!("{author}. {t}. {j}, {year}, {} ({})", rng.gen_range(1..40), rng.gen_range(1..13))
        };
        return Work { text, year, language: Language::Chinese };
    }
    let surname = SURNAMES.choose(rng).unwrap();
    let (i1, i2) = (rng.gen_range(b'A'..=b'Z') as char, rng.gen_range(b'A'..=b'Z') as char);
    let vol = rng.gen_range(1..120);
    let page = rng.gen_range(1..900);
    let text = match format {
        SourceFormat::Wos => {
            let j = WOS_JOURNALS.choose(rng).unwrap();
            format!("{} {i1}{i2}, {year}, {j}, V{vol}, P{page}", surname.to_uppercase())
        }
        SourceFormat::Cssci => {
            let j = JOURNALS.choose(rng).unwrap();
            let len = rng.gen_range(4..9);
            let t = capitalize(&title(rng, WORDS, len, " "));
            format!("{surname}, {i1}. {i2}. ({year}). {t}. {j}, {vol}({}), {page}-{}.", rng.gen_range(1..13), page + rng.gen_range(2..40))
        }
    };
    Work { text, year, language: Language::English }
}

/// A perturbed spelling of `text` that keeps its year and language.
pub fn variant(rng: &mut impl Rng, text: &str) -> String {
    match rng.gen_range(0..5) {
        0 => text.replacen(". ", ".", 1),
        1 => text.replace(", ", "，"),
        2 => text.replacen(' ', "  ", 1),
        3 => {
            // swap two adjacent letters inside the longest alphabetic word
            let chars: Vec<char> = text.chars().collect();
            let mut best = (0, 0);
            let mut start = 0;
            for i in 0..=chars.len() {
                if i == chars.len() || !chars[i].is_alphabetic() {
                    if i - start > best.1 - best.0 {
                        best = (start, i);
                    }
                    start = i + 1;
                }
            }
            if best.1 - best.0 < 6 {
                return text.replacen(", ", " , ", 1);
            }
            let mut out = chars;
            let at = rng.gen_range(best.0 + 1..best.1 - 2);
            out.swap(at, at + 1);
            out.into_iter().collect()
        }
        _ => text.trim_end_matches('.').to_owned(),
    }
}

fn reference(raw: String, format: SourceFormat, pub_year: i32, record_id: &str, ordinal: u32) -> CitedReference {
    let hint = match format {
        SourceFormat::Wos => cr_year(&raw),
        SourceFormat::Cssci => None,
    };
    CitedReference::from_raw(raw, hint, Some(pub_year), record_id, ordinal).expect("generated text is non-empty")
}

/// The work pool a corpus with this config draws from.
pub fn work_pool(config: &SynthConfig) -> Vec<Work> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x9e37_79b9);
    (0..config.n_works)
        .map(|_| random_work(&mut rng, config.format, config.chinese_fraction, config.citing_years.1))
        .collect()
}

/// Generates records whose ids are `<source>#<n>`, matching what the parsers assign.
pub fn generate_corpus(config: &SynthConfig, source: &str) -> Vec<SourceRecord> {
    let works = work_pool(config);
    let weights: Vec<f64> = (0..works.len()).map(|i| 1.0 / (i as f64 + 1.0).powf(0.9)).collect();
    let pick = WeightedIndex::new(&weights).expect("positive weights");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (lo, hi) = config.refs_per_record;

    (1..=config.n_records)
        .map(|n| {
            let record_id = format!("{source}#{n}");
            let pub_year = rng.gen_range(config.citing_years.0..=config.citing_years.1);
            let n_refs = rng.gen_range(lo..=hi);
            let mut references = Vec::with_capacity(n_refs);
            let mut attempts = 0;
            while references.len() < n_refs && attempts < n_refs * 20 {
                attempts += 1;
                let work = &works[pick.sample(&mut rng)];
                if work.year > pub_year {
                    continue;
                }
                let raw = if rng.gen_bool(config.variant_rate) { variant(&mut rng, &work.text) } else { work.text.clone() };
                let ordinal = references.len() as u32 + 1;
                references.push(reference(raw, config.format, pub_year, &record_id, ordinal));
            }
            let zh = rng.gen_bool(config.chinese_fraction);
            let (title_native, title_english, journal) = match config.format {
                SourceFormat::Cssci => (
                    title(&mut rng, CN_WORDS, 6, ""),
                    Some(capitalize(&title(&mut rng, WORDS, 6, " "))),
                    CN_JOURNALS.choose(&mut rng).unwrap().to_string(),
                ),
                SourceFormat::Wos => (
                    capitalize(&title(&mut rng, WORDS, 7, " ")),
                    None,
                    WOS_JOURNALS.choose(&mut rng).unwrap().to_string(),
                ),
            };
            let authors = (0..rng.gen_range(1..4))
                .map(|_| if zh { CN_SURNAMES.choose(&mut rng).unwrap().to_string() } else { SURNAMES.choose(&mut rng).unwrap().to_string() })
                .collect();
            let keywords = (0..rng.gen_range(0..4)).map(|_| title(&mut rng, WORDS, 2, " ")).collect();
            SourceRecord {
                record_id,
                title_native,
                title_english,
                authors,
                journal,
                pub_year: Some(pub_year),
                keywords,
                references,
                source_format: config.format,
            }
        })
        .collect()
}

/// References with injected variants: `n` occurrences drawn from `n / 3` works.
pub fn variant_fixture(n: usize, seed: u64) -> Vec<CitedReference> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let works: Vec<Work> = (0..(n / 3).max(1)).map(|_| random_work(&mut rng, SourceFormat::Cssci, 0.5, 2017)).collect();
    (0..n)
        .map(|i| {
            let work = works.choose(&mut rng).unwrap();
            let raw = if rng.gen_bool(0.5) { variant(&mut rng, &work.text) } else { work.text.clone() };
            reference(raw, SourceFormat::Cssci, 2018, "fixture", i as u32 + 1)
        })
        .collect()
}

/// CSSCI export text for `records`.
pub fn render_cssci(records: &[SourceRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!("【来源篇名】 {}\n", r.title_native));
        if let Some(en) = &r.title_english {
            out.push_str(&format!("【英文篇名】 {en}\n"));
        }
        out.push_str(&format!("【来源作者】 {}\n", r.authors.join("/")));
        out.push_str(&format!("【期 刊】 {}\n", r.journal));
        match r.pub_year {
            Some(y) => out.push_str(&format!("【年代卷期】 {y}, 1(2):3-9\n")),
            None => out.push_str("【年代卷期】\n"),
        }
        out.push_str(&format!("【关 键 词】 {}\n", r.keywords.join("/")));
        out.push_str("【参考文献】\n");
        for c in &r.references {
            out.push_str(&format!("{}. {}\n", c.ordinal, c.raw_string));
        }
        out.push('\n');
    }
    out
}

/// WoS export text for `records`.
pub fn render_wos(records: &[SourceRecord]) -> String {
    let mut out = String::from("FN Clarivate Analytics Web of Science\nVR 1.0\n");
    let block = |out: &mut String, tag: &str, values: &[String]| {
        for (i, v) in values.iter().enumerate() {
            out.push_str(if i == 0 { tag } else { "  " });
            out.push(' ');
            out.push_str(v);
            out.push('\n');
        }
    };
    for r in records {
        out.push_str("PT J\n");
        block(&mut out, "AU", &r.authors);
        block(&mut out, "TI", std::slice::from_ref(&r.title_native));
        block(&mut out, "SO", std::slice::from_ref(&r.journal));
        if !r.keywords.is_empty() {
            block(&mut out, "DE", &[r.keywords.join("; ")]);
        }
        let crs: Vec<String> = r.references.iter().map(|c| c.raw_string.clone()).collect();
        if crs.is_empty() {
            out.push_str("CR\n");
        } else {
            block(&mut out, "CR", &crs);
        }
        out.push_str(&format!("NR {}\n", r.references.len()));
        if let Some(y) = r.pub_year {
            out.push_str(&format!("PY {y}\n"));
        }
        out.push_str("ER\n\n");
    }
    out.push_str("EF\n");
    out
}
