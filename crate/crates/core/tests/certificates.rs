mod common;

use std::time::Duration;

use monoara::construct::triples::generic_triple;
use monoara::construct::{ara, specialize_generators, Justification};
use monoara::data::generic_ideal;
use monoara::resolution::char_independent_pd;
use monoara::verify::{groebner_radical_member, Polynomial, RadicalCertificate, RadicalMembership, Ref};
use monoara::{MonomialIdeal, SquarefreeMonomial};
use rand::Rng;

fn mutate(cert: &RadicalCertificate, r: &mut impl Rng) -> RadicalCertificate {
    let mut c = cert.clone();
    let s = r.gen_range(0..c.steps.len());
    match r.gen_range(0..6) {
        0 => c.steps[s].power += 1,
        1 => {
            let t = r.gen_range(0..c.steps[s].terms.len());
            c.steps[s].terms[t].0 = -&c.steps[s].terms[t].0;
        }
        2 => {
            let t = r.gen_range(0..c.steps[s].terms.len());
            let v = Polynomial::variable(r.gen_range(0..c.vars.len()));
            c.steps[s].terms[t].0 = &c.steps[s].terms[t].0 * &v;
        }
        3 => {
            let v = Polynomial::variable(r.gen_range(0..c.vars.len()));
            c.steps[s].target = &c.steps[s].target * &v;
        }
        4 => {
            let g = r.gen_range(0..c.gens.len());
            let v = Polynomial::variable(r.gen_range(0..c.vars.len()));
            c.gens[g] = &c.gens[g] + &v;
        }
        _ => {
            // Point a conclusion at a step with a different target.
            let k = r.gen_range(0..c.conclusions.len());
            let (step, _) = c.conclusions[k];
            let other = (0..c.steps.len()).find(|&o| c.steps[o].target != c.steps[step].target).unwrap();
            c.conclusions[k].0 = other;
        }
    }
    c
}

#[test]
fn shipped_certificates_replay() {
    for k in 1..=2 {
        let (j, _, cert) = generic_triple(k).unwrap();
        let report = cert.check(&j).unwrap();
        assert_eq!(report.concluded, vec![0, 1, 2, 3, 4]);
        assert_eq!(report.generators_in_ideal, 3);
        // Every generator is used by some step.
        for g in 0..3 {
            assert!(cert.steps.iter().any(|s| s.terms.iter().any(|(_, r)| *r == Ref::Gen(g))));
        }
    }
}

#[test]
fn mutated_certificates_are_rejected() {
    let mut r = common::rng(11);
    for n in 0..100 {
        let (j, _, cert) = generic_triple(1 + n % 2).unwrap();
        let bad = mutate(&cert, &mut r);
        assert!(bad.check(&j).is_err(), "mutation {n} was accepted");
    }
}

/// J with the variables in `ones` sent to 1, keeping the variable list.
fn drop_vars(j: &MonomialIdeal, ones: &SquarefreeMonomial) -> Option<MonomialIdeal> {
    let gens = j.gens().iter().map(|g| g.without(ones)).collect();
    MonomialIdeal::new(j.vars().to_vec(), gens).ok()
}

#[test]
fn certificates_survive_sending_a_variable_to_one() {
    for k in 1..=2 {
        let (j, _, cert) = generic_triple(k).unwrap();
        let mut kept = 0;
        for v in 0..j.vars().len() {
            let Some(i) = drop_vars(&j, &SquarefreeMonomial::variable(v)) else { continue };
            // Image generators must stay distinct and in the original order.
            if i.mu() != 5 || i.gens().iter().zip(j.gens()).any(|(a, b)| *a != b.without(&SquarefreeMonomial::variable(v))) {
                continue;
            }
            let image = |x: usize| if x == v { Polynomial::one() } else { Polynomial::variable(x) };
            let c = cert.substitute(j.vars().to_vec(), &image);
            c.check(&i).unwrap_or_else(|e| panic!("J{k} with x{} = 1: {e}", v + 1));
            kept += 1;
        }
        assert!(kept > 0);
    }
}

/// Send variables to 1 one at a time as long as the ideal keeps five
/// generators, height 2, pd 3, stays connected and still specializes from J_k.
fn reduce_greedily(k: usize) -> MonomialIdeal {
    let j = generic_ideal(k).unwrap();
    let mut ones = SquarefreeMonomial::one();
    let mut current = j.clone();
    for v in 0..j.vars().len() {
        let mut trial = ones.clone();
        trial.insert(v);
        let Some(i) = drop_vars(&j, &trial) else { continue };
        let ok = i.mu() == 5
            && i.height() == 2
            && i.is_connected()
            && char_independent_pd(&i).ok() == Some(3)
            && specialize_generators(&i).is_ok_and(|s| s.k == k);
        if ok {
            ones = trial;
            current = i;
        }
    }
    current.restrict_to_support()
}

#[test]
fn groebner_agrees_on_reduced_instances() {
    for k in 1..=2 {
        let i = reduce_greedily(k);
        let s = specialize_generators(&i).unwrap();
        let gens = s.generators.unwrap();
        s.certificate.unwrap().check(&i).unwrap();
        let budget = Duration::from_secs(30);
        let mut conclusive = true;
        for m in i.gens() {
            match groebner_radical_member(&Polynomial::from_squarefree(m), &gens, budget) {
                RadicalMembership::Yes => {}
                RadicalMembership::No => panic!("J{k} reduced to {i}: {m:?} is not in the radical"),
                RadicalMembership::Timeout => conclusive = false,
            }
        }
        if !conclusive {
            eprintln!("J{k} reduced to {} variables: Gröbner check inconclusive within budget", i.vars().len());
        }
    }
}

#[test]
fn random_substitutions_specialize() {
    let mut r = common::rng(12);
    let mut done = 0;
    while done < 20 {
        let k = 1 + done % 2;
        let Some(i) = common::substitute(&generic_ideal(k).unwrap(), &mut r, 0.3) else { continue };
        if i.mu() != 5 || i.height() != 2 || !i.is_connected() || char_independent_pd(&i).ok() != Some(3) {
            continue;
        }
        done += 1;
        let s = specialize_generators(&i).unwrap();
        assert!(s.k <= 2, "{i} embeds only into J3");
        s.certificate.unwrap().check(&i).unwrap();
        let a = ara(&i).unwrap();
        assert_eq!(a.value, 3);
        assert_eq!(a.generators.map(|g| g.len()), Some(3));
        if a.justification == Justification::GenericSetSpecialization {
            a.certificate.unwrap().check(&i).unwrap();
        }
    }
}
