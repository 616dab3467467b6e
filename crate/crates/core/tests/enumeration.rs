mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use monoara::enumeration::{enumerate_hypergraphs, generic_set_from, run, RunConfig, SearchSpace, Target};
use monoara::hypergraph::Hypergraph;
use monoara::resolution::char_independent_pd;
use monoara::Error;

use common::{brute_classes, brute_maximal, burnside_count, canonical};

#[test]
fn classes_match_the_labeled_scan() {
    for mu in 2..=4 {
        let brute = brute_classes(mu);
        let ours: BTreeSet<u32> = enumerate_hypergraphs(mu)
            .iter()
            .map(|h| canonical(mu, SearchSpace::hypergraph_to_word(h)))
            .collect();
        assert_eq!(ours, brute, "mu {mu}");
        assert_eq!(burnside_count(mu), brute.len() as u64, "mu {mu}");
    }
}

#[test]
fn generic_sets_match_direct_maximality_for_four_generators() {
    let mu = 4;
    let mut by_target: BTreeMap<Target, BTreeSet<u32>> = BTreeMap::new();
    for w in brute_classes(mu) {
        let ideal = Hypergraph::new(mu, (1..16u32).filter(|f| w >> f & 1 == 1)).unwrap().reduced_ideal().unwrap();
        by_target.entry(Target::new(ideal.height(), char_independent_pd(&ideal).unwrap())).or_default().insert(w);
    }
    let report = run(&RunConfig::new(mu, by_target.keys().copied().collect())).unwrap();
    for (t, members) in &by_target {
        assert_eq!(report.step2[t], members.len() as u64, "{t:?}");
        let g = generic_set_from(&report, *t).unwrap();
        assert!(g.oracle_agrees);
        let got: BTreeSet<u32> = g.hypergraphs.iter().map(|h| canonical(mu, SearchSpace::hypergraph_to_word(h))).collect();
        assert_eq!(got, brute_maximal(mu, members), "{t:?}");
    }
}

#[test]
fn exhausted_budget_resumes_to_the_same_answer() {
    let dir = tempfile::tempdir().unwrap();
    let targets = vec![Target::new(2, 3)];
    let plain = run(&RunConfig::new(4, targets.clone())).unwrap();
    let mut cfg = RunConfig::new(4, targets);
    cfg.checkpoint = Some(dir.path().to_path_buf());
    cfg.deadline = Some(Instant::now());
    assert!(matches!(run(&cfg), Err(Error::BudgetExhausted)));
    cfg.deadline = None;
    cfg.resume = true;
    let resumed = run(&cfg).unwrap();
    assert_eq!(resumed.step1, plain.step1);
    assert_eq!(resumed.p2, plain.p2);
    assert!(dir.path().join("manifest.json").exists());
}
