//! Enumeration of connected separable hypergraphs on at most five vertices,
//! the height/pd filter on their reduced ideals, and extraction of the
//! maximal members under face-subset embedding.

pub mod homology;
pub mod space;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use homology::{height_word, pd_word};
pub use space::{SearchSpace, MAX_ENUM_MU};

use crate::error::{Error, Result};
use crate::hypergraph::{encode_face_set, Hypergraph};
use crate::ideal::MonomialIdeal;
use crate::resolution::char_independent_pd;

/// Search indices per shard.
pub const SHARD_SIZE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Target {
    pub height: usize,
    pub pd: usize,
}

impl Target {
    pub fn new(height: usize, pd: usize) -> Self {
        Self { height, pd }
    }

    fn file_tag(&self) -> String {
        format!("h{}-pd{}", self.height, self.pd)
    }
}

/// Representative words grouped by face count.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelSets {
    pub levels: BTreeMap<usize, Vec<u32>>,
}

impl LevelSets {
    pub fn from_words(words: impl IntoIterator<Item = u32>) -> Self {
        let mut levels: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for w in words {
            levels.entry(w.count_ones() as usize).or_default().push(w);
        }
        for v in levels.values_mut() {
            v.sort_unstable();
            v.dedup();
        }
        Self { levels }
    }

    pub fn len(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn words(&self) -> impl Iterator<Item = u32> + '_ {
        self.levels.values().flatten().copied()
    }
}

/// Step 1 over a range of search indices: representatives of every class of
/// connected separable hypergraphs, in index order.
pub fn enumerate_range(space: &SearchSpace, lo: u64, hi: u64) -> Vec<u32> {
    (lo..hi.min(space.size())).filter_map(|i| space.step1(i as u32)).collect()
}

/// Step 1 for the whole space, as hypergraphs.
pub fn enumerate_hypergraphs(mu: usize) -> Vec<Hypergraph> {
    let space = SearchSpace::new(mu);
    enumerate_range(&space, 0, space.size())
        .into_iter()
        .map(|w| space.word_to_hypergraph(w))
        .collect()
}

/// Step 2: keep words whose reduced ideal has the target height and pd.
pub fn filter_property(space: &SearchSpace, words: &[u32], target: Target) -> LevelSets {
    LevelSets::from_words(
        words
            .iter()
            .copied()
            .filter(|&w| height_word(space, w) == target.height && pd_word(space, w) == target.pd),
    )
}

/// Step 3: walk down the levels; a member of level i is dropped when it is
/// isomorphic to a one-face deletion of some level-(i+1) member.
pub fn maximal_set(space: &SearchSpace, p2: &LevelSets) -> Vec<u32> {
    let mut out = Vec::new();
    let Some(&top) = p2.levels.keys().next_back() else {
        return out;
    };
    out.extend(&p2.levels[&top]);
    for (&level, members) in p2.levels.range(..top).rev() {
        let mut removed = vec![false; members.len()];
        if let Some(above) = p2.levels.get(&(level + 1)) {
            for &g in above {
                let mut faces = g;
                while faces != 0 {
                    let f = faces.trailing_zeros();
                    faces &= faces - 1;
                    let c = space.canonical_word(g & !(1 << f));
                    if let Ok(pos) = members.binary_search(&c) {
                        removed[pos] = true;
                    }
                }
            }
        }
        out.extend(members.iter().zip(&removed).filter(|(_, &r)| !r).map(|(&w, _)| w));
    }
    out.sort_unstable_by_key(|w| (w.count_ones(), *w));
    out
}

/// Direct maximality: a candidate survives when no member of a higher level
/// contains a relabeled copy of it.
pub fn poset_maximality_oracle(space: &SearchSpace, p2: &LevelSets, candidates: &[u32]) -> Vec<u32> {
    candidates
        .iter()
        .copied()
        .filter(|&c| {
            let mut images: Vec<u32> = (0..space.perms().len()).map(|p| space.apply_word(p, c)).collect();
            images.sort_unstable();
            images.dedup();
            let level = c.count_ones() as usize;
            !p2.levels
                .range(level + 1..)
                .flat_map(|(_, v)| v.iter())
                .any(|&g| images.iter().any(|&img| img & !g == 0))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ShardRecord {
    pub lo: u64,
    pub hi: u64,
    pub count: u64,
    pub done: bool,
    #[serde(default)]
    pub survivors: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Filters {
    pub coverage: bool,
    pub separable: bool,
    pub connected: bool,
    pub targets: Vec<Target>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Manifest {
    pub mu: usize,
    pub config_hash: String,
    pub shards: Vec<ShardRecord>,
    pub filters: Filters,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mu: usize,
    pub targets: Vec<Target>,
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub deadline: Option<Instant>,
}

impl RunConfig {
    pub fn new(mu: usize, targets: Vec<Target>) -> Self {
        Self { mu, targets, jobs: 1, checkpoint: None, resume: false, deadline: None }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub mu: usize,
    pub search_size: u64,
    pub shards: usize,
    pub step1: u64,
    pub step2: BTreeMap<Target, u64>,
    pub p2: BTreeMap<Target, LevelSets>,
}

struct ShardOutput {
    count: u64,
    survivors: Vec<Vec<u32>>,
}

fn process_shard(space: &SearchSpace, lo: u64, hi: u64, targets: &[Target]) -> ShardOutput {
    let mut count = 0;
    let mut survivors = vec![Vec::new(); targets.len()];
    for idx in lo..hi {
        let Some(w) = space.step1(idx as u32) else { continue };
        count += 1;
        let h = height_word(space, w);
        if !targets.iter().any(|t| t.height == h) {
            continue;
        }
        let pd = pd_word(space, w);
        for (k, t) in targets.iter().enumerate() {
            if t.height == h && t.pd == pd {
                survivors[k].push(w);
            }
        }
    }
    ShardOutput { count, survivors }
}

fn config_hash(mu: usize, targets: &[Target]) -> String {
    let doc = serde_json::json!({
        "mu": mu,
        "targets": targets,
        "shard_size": SHARD_SIZE,
        "scheme": "graph-class x residual",
    });
    Sha256::digest(doc.to_string().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn shard_file(dir: &Path, k: usize, t: &Target) -> PathBuf {
    dir.join(format!("shard-{k:05}-{}.hex", t.file_tag()))
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_survivors(path: &Path) -> Result<Vec<u32>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            u32::from_str_radix(l.trim(), 16)
                .map_err(|_| Error::Checkpoint(format!("bad survivor line `{l}` in {}", path.display())))
        })
        .collect()
}

/// Steps 1 and 2 for every target in one pass, sharded and checkpointable.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    let space = SearchSpace::new(config.mu);
    let size = space.size();
    let shard_count = size.div_ceil(SHARD_SIZE) as usize;
    let hash = config_hash(config.mu, &config.targets);
    let fresh = Manifest {
        mu: config.mu,
        config_hash: hash.clone(),
        shards: (0..shard_count)
            .map(|k| ShardRecord {
                lo: k as u64 * SHARD_SIZE,
                hi: ((k as u64 + 1) * SHARD_SIZE).min(size),
                count: 0,
                done: false,
                survivors: BTreeMap::new(),
            })
            .collect(),
        filters: Filters { coverage: true, separable: true, connected: true, targets: config.targets.clone() },
    };
    let manifest = match &config.checkpoint {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join("manifest.json");
            if config.resume && path.exists() {
                let m: Manifest = serde_json::from_str(&fs::read_to_string(&path)?)?;
                if m.config_hash != hash {
                    return Err(Error::Checkpoint("manifest was written for a different configuration".into()));
                }
                m
            } else {
                write_atomic(&path, &serde_json::to_string_pretty(&fresh)?)?;
                fresh
            }
        }
        None => fresh,
    };

    let mut results: Vec<Option<ShardOutput>> = Vec::with_capacity(shard_count);
    for (k, rec) in manifest.shards.iter().enumerate() {
        if rec.done {
            let dir = config.checkpoint.as_ref().expect("done shards imply a checkpoint");
            let survivors = config
                .targets
                .iter()
                .map(|t| read_survivors(&shard_file(dir, k, t)))
                .collect::<Result<Vec<_>>>()?;
            results.push(Some(ShardOutput { count: rec.count, survivors }));
        } else {
            results.push(None);
        }
    }
    let pending: Vec<usize> = (0..shard_count).filter(|&k| results[k].is_none()).collect();
    let shared = Mutex::new(manifest);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let computed: Vec<(usize, Result<Option<ShardOutput>>)> = pool.install(|| {
        pending
            .par_iter()
            .map(|&k| {
                if config.deadline.is_some_and(|d| Instant::now() >= d) {
                    return (k, Ok(None));
                }
                let (lo, hi) = {
                    let m = shared.lock().expect("manifest lock");
                    (m.shards[k].lo, m.shards[k].hi)
                };
                let out = process_shard(&space, lo, hi, &config.targets);
                let saved = match &config.checkpoint {
                    Some(dir) => save_shard(dir, k, &out, &config.targets, &space, &shared),
                    None => Ok(()),
                };
                (k, saved.map(|_| Some(out)))
            })
            .collect()
    });
    let mut exhausted = false;
    for (k, r) in computed {
        match r? {
            Some(out) => results[k] = Some(out),
            None => exhausted = true,
        }
    }
    if exhausted {
        return Err(Error::BudgetExhausted);
    }

    let mut step1 = 0;
    let mut merged: Vec<Vec<u32>> = vec![Vec::new(); config.targets.len()];
    for out in results.into_iter().flatten() {
        step1 += out.count;
        for (k, s) in out.survivors.into_iter().enumerate() {
            merged[k].extend(s);
        }
    }
    let mut step2 = BTreeMap::new();
    let mut p2 = BTreeMap::new();
    for (t, words) in config.targets.iter().zip(merged) {
        step2.insert(*t, words.len() as u64);
        p2.insert(*t, LevelSets::from_words(words));
    }
    Ok(RunReport { mu: config.mu, search_size: size, shards: shard_count, step1, step2, p2 })
}

fn save_shard(
    dir: &Path,
    k: usize,
    out: &ShardOutput,
    targets: &[Target],
    space: &SearchSpace,
    shared: &Mutex<Manifest>,
) -> Result<()> {
    for (t, words) in targets.iter().zip(&out.survivors) {
        let mut text = String::with_capacity(words.len() * 9);
        for &w in words {
            let faces: Vec<u32> = (1..=space.full()).filter(|f| w >> f & 1 == 1).collect();
            text.push_str(&encode_face_set(space.mu(), &faces));
            text.push('\n');
        }
        write_atomic(&shard_file(dir, k, t), &text)?;
    }
    let mut m = shared.lock().expect("manifest lock");
    let rec = &mut m.shards[k];
    rec.count = out.count;
    rec.done = true;
    rec.survivors = targets
        .iter()
        .zip(&out.survivors)
        .map(|(t, s)| (t.file_tag(), s.len() as u64))
        .collect();
    write_atomic(&dir.join("manifest.json"), &serde_json::to_string_pretty(&*m)?)
}

#[derive(Clone, Debug)]
pub struct GenericSet {
    pub target: Target,
    pub step1: u64,
    pub step2: u64,
    /// Maximal classes, by increasing face count.
    pub hypergraphs: Vec<Hypergraph>,
    pub ideals: Vec<MonomialIdeal>,
    /// Whether the direct maximality oracle accepted every member.
    pub oracle_agrees: bool,
}

/// Step 3 and ideal construction on top of a finished run.
pub fn generic_set_from(report: &RunReport, target: Target) -> Result<GenericSet> {
    let space = SearchSpace::new(report.mu);
    let p2 = report
        .p2
        .get(&target)
        .ok_or_else(|| Error::Precondition("target was not part of the run".into()))?;
    let p3 = maximal_set(&space, p2);
    let oracle = poset_maximality_oracle(&space, p2, &p3);
    let hypergraphs: Vec<Hypergraph> = p3.iter().map(|&w| space.word_to_hypergraph(w)).collect();
    let mut ideals = Vec::with_capacity(hypergraphs.len());
    for h in &hypergraphs {
        let ideal = h.reduced_ideal()?;
        let pd = char_independent_pd(&ideal)?;
        if pd != target.pd || ideal.height() != target.height {
            return Err(Error::Precondition(format!("generic set member {h} fails the target on recomputation")));
        }
        ideals.push(ideal);
    }
    Ok(GenericSet {
        target,
        step1: report.step1,
        step2: report.step2[&target],
        hypergraphs,
        ideals,
        oracle_agrees: oracle == p3,
    })
}

pub fn generic_set(mu: usize, height: usize, pd: usize) -> Result<GenericSet> {
    let target = Target::new(height, pd);
    let report = run(&RunConfig::new(mu, vec![target]))?;
    generic_set_from(&report, target)
}
