//! Writes data/certs/case1.cert and case2.cert: radical-membership chains
//! showing each m_i of J1 (resp. J2) lies in the radical of the explicit
//! triple. Every identity is checked as it is added.
//!
//! cargo run -p monoara --example derive_certificates

use std::path::Path;

use monoara::construct::{case1_triple, case2_triple};
use monoara::data::generic_ideal;
use monoara::hypergraph::hypergraph_of;
use monoara::verify::{Polynomial, RadicalCertificate, Ref, Step};
use monoara::{MonomialIdeal, SquarefreeMonomial};

fn poly(m: &SquarefreeMonomial) -> Polynomial {
    Polynomial::from_squarefree(m)
}

/// a / b for monomials, panicking when b does not divide a.
fn div(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (a, b) = (a.as_monomial().expect("monomial"), b.as_monomial().expect("monomial"));
    Polynomial::monomial(b.quotient(a).unwrap_or_else(|| panic!("{b:?} does not divide {a:?}")))
}

struct Chain {
    cert: RadicalCertificate,
}

impl Chain {
    fn new(ideal: &MonomialIdeal, gens: Vec<Polynomial>) -> Self {
        Self { cert: RadicalCertificate { vars: ideal.vars().to_vec(), gens, steps: Vec::new(), conclusions: Vec::new() } }
    }

    fn value(&self, r: Ref) -> &Polynomial {
        match r {
            Ref::Gen(i) => &self.cert.gens[i],
            Ref::Step(s) => &self.cert.steps[s].target,
        }
    }

    fn step(&mut self, target: Polynomial, power: u32, terms: Vec<(Polynomial, Ref)>) -> Ref {
        let mut rhs = Polynomial::zero();
        for (c, r) in &terms {
            rhs.add_assign_ref(&(c * self.value(*r)));
        }
        let n = self.cert.steps.len() + 1;
        let diff = &target.pow(power) - &rhs;
        assert!(diff.is_zero(), "step {n}: {}", diff.display(&self.cert.vars));
        self.cert.steps.push(Step { target, power, terms });
        Ref::Step(n - 1)
    }

    /// goal^k = (goal^k / T) * T for the least k with T | goal^k, T the
    /// monomial target of `from`.
    fn radical(&mut self, goal: Polynomial, from: Ref) -> Ref {
        let t = self.value(from).as_monomial().expect("monomial target").clone();
        let g = goal.as_monomial().expect("monomial goal").clone();
        let k = (1..=8).find(|&k| t.divides(&Polynomial::monomial(g.clone()).pow(k).as_monomial().unwrap().clone()));
        let k = k.expect("goal does not contain the support of the source");
        let cof = div(&goal.pow(k), &Polynomial::monomial(t));
        self.step(goal, k, vec![(cof, from)])
    }

    fn conclude(&mut self, step: Ref, m: usize) {
        let Ref::Step(s) = step else { unreachable!() };
        self.cert.conclusions.push((s, m));
    }
}

const G1: Ref = Ref::Gen(0);
const G2: Ref = Ref::Gen(1);
const G3: Ref = Ref::Gen(2);

fn face_variable(ideal: &MonomialIdeal, face: u32) -> Polynomial {
    let (_, map) = hypergraph_of(ideal).unwrap();
    Polynomial::variable(map.by_face[&face][0])
}

fn case1() -> (MonomialIdeal, RadicalCertificate) {
    let j = generic_ideal(1).unwrap();
    let g = j.gens();
    let m: Vec<Polynomial> = g.iter().map(poly).collect();
    let one = Polynomial::one();
    let x = face_variable(&j, 0b11100);
    let a = poly(&g[0].gcd(&g[2]));
    let b = poly(&g[1].gcd(&g[2]));
    let c = poly(&g[3].gcd(&g[4]));
    let f1 = &a + &(&c * &m[1]);
    let f2 = &b + &(&c * &m[0]);
    let mut ch = Chain::new(&j, case1_triple(&j).unwrap());

    // x m4 m5 = x (g2 - f1 m1)(g3 - f2 m2)
    let s1 = ch.step(
        &(&x * &m[3]) * &m[4],
        1,
        vec![
            (&(&x * &ch.value(G3).clone()) - &(&(&x * &f2) * &m[1]), G2),
            (-&(&(&x * &f1) * &m[0]), G3),
            (&m[0] * &m[1], G1),
        ],
    );
    let l = poly(&g[3].lcm(&g[4]));
    let s2 = ch.radical(l.clone(), s1);

    // Left branch: the variable t of m5/gcd(m4,m5) missing from m1.
    let d = g[4].without(&g[3]);
    let t = poly(&d.without(&d.gcd(&g[0])));
    let rest = poly(&d.gcd(&g[0]));
    let s4 = ch.step(
        &t * &m[3],
        2,
        vec![(&(&t * &t) * &m[3], G2), (-&(&div(&(&t * &m[0]), &rest) * &f1), s2)],
    );
    let s5 = ch.step(&(&t * &f1) * &m[0], 1, vec![(t.clone(), G2), (-&one, s4)]);
    let s6 = ch.step(
        &(&x * &b) * &f1,
        2,
        vec![(&(&x * &f1) * &b, G1), (-&(&(&x * &f1) * &div(&(&(&x * &b) * &c), &t)), s5)],
    );
    let big_a = &(&x * &a) * &b;
    let big_b = &(&(&x * &b) * &c) * &m[1];
    let ab = div(&(&big_a * &big_b), &(&t * &m[3]));
    let s7 = ch.step(big_a.clone(), 2, vec![(big_a.clone(), s6), (-&ab, s4)]);
    let s8 = ch.step(big_b.clone(), 2, vec![(big_b.clone(), s6), (-&ab, s4)]);
    let s9 = ch.radical(m[2].clone(), s7);
    let s10 = ch.radical(&c * &m[1], s8);

    // Mirror branch with the variable of m4/gcd(m4,m5) missing from m2.
    let d2 = g[3].without(&g[4]);
    let t2 = poly(&d2.without(&d2.gcd(&g[1])));
    let rest2 = poly(&d2.gcd(&g[1]));
    let s11 = ch.step(
        &t2 * &m[4],
        2,
        vec![(&(&t2 * &t2) * &m[4], G3), (-&(&div(&(&t2 * &m[1]), &rest2) * &f2), s2)],
    );
    let s12 = ch.step(&(&t2 * &f2) * &m[1], 1, vec![(t2.clone(), G3), (-&one, s11)]);
    let s13 = ch.step(
        &(&x * &a) * &f2,
        2,
        vec![(&(&x * &f2) * &a, G1), (-&(&(&x * &f2) * &div(&(&(&x * &a) * &c), &t2)), s12)],
    );
    let big_b2 = &(&(&x * &a) * &c) * &m[0];
    let ab2 = div(&(&big_a * &big_b2), &(&t2 * &m[4]));
    let s14 = ch.step(big_b2.clone(), 2, vec![(big_b2.clone(), s13), (-&ab2, s11)]);
    let s15 = ch.radical(&c * &m[0], s14);

    // g2 = m1 a + m4 + m2 (c m1), g3 = m2 b + m5 + m1 (c m2)
    let m1a = &m[0] * &a;
    let s16 = ch.step(&m1a + &m[3], 1, vec![(one.clone(), G2), (-&m[1], s15)]);
    let cross = div(&(&m1a * &m[3]), &(&c * &m[0]));
    let s17 = ch.step(m1a.clone(), 2, vec![(m1a.clone(), s16), (-&cross, s15)]);
    let s18 = ch.step(m[3].clone(), 2, vec![(m[3].clone(), s16), (-&cross, s15)]);
    let s19 = ch.step(m[0].clone(), 2, vec![(div(&m[0], &a), s17)]);
    let m2b = &m[1] * &b;
    let s20 = ch.step(&m2b + &m[4], 1, vec![(one.clone(), G3), (-&m[0], s10)]);
    let cross = div(&(&m2b * &m[4]), &(&c * &m[1]));
    let s21 = ch.step(m2b.clone(), 2, vec![(m2b.clone(), s20), (-&cross, s10)]);
    let s22 = ch.step(m[4].clone(), 2, vec![(m[4].clone(), s20), (-&cross, s10)]);
    let s23 = ch.step(m[1].clone(), 2, vec![(div(&m[1], &b), s21)]);

    for (s, i) in [(s19, 0), (s23, 1), (s9, 2), (s18, 3), (s22, 4)] {
        ch.conclude(s, i);
    }
    (j, ch.cert)
}

fn case2() -> (MonomialIdeal, RadicalCertificate) {
    let j = generic_ideal(2).unwrap();
    let g = j.gens();
    let m: Vec<Polynomial> = g.iter().map(poly).collect();
    let one = Polynomial::one();
    let x = face_variable(&j, 0b11100);
    let mut ch = Chain::new(&j, case2_triple(&j).unwrap());

    // x m5 = x g2 - m1 m2 g1
    let s1 = ch.step(&x * &m[4], 1, vec![(x.clone(), G2), (-&(&m[0] * &m[1]), G1)]);
    let s2 = ch.radical(m[4].clone(), s1);
    // y: the variable of m5 outside m3 and m4; it divides m1 and m2.
    let y = poly(&g[4].without(&g[2].lcm(&g[3])));
    let ym3 = &y * &m[2];
    let q3 = div(&(&(&y * &y) * &m[2]), &x);
    let s3 = ch.step(
        ym3.clone(),
        3,
        vec![(&q3 * &ym3, G1), (-&(&q3 * &div(&(&ym3 * &m[3]), &m[4])), s2)],
    );
    let s4 = ch.step(m[2].clone(), 2, vec![(m[2].clone(), G3), (-&div(&m[0], &y), s3), (-&div(&m[1], &y), s3)]);
    let s5 = ch.step(m[3].clone(), 1, vec![(one.clone(), G1), (-&x, s4)]);
    let s6 = ch.step(&m[0] + &m[1], 1, vec![(one.clone(), G3), (-&one, s4)]);
    let m12 = &m[0] * &m[1];
    let s7 = ch.step(div(&(&m12 * &m[3]), &x), 1, vec![(one.clone(), G2), (-&m12, s4), (-&one, s2)]);
    let s8 = ch.step(m12.clone(), 2, vec![(div(&(&m12 * &x), &m[3]), s7)]);
    let s9 = ch.step(m[0].clone(), 2, vec![(m[0].clone(), s6), (-&one, s8)]);
    let s10 = ch.step(m[1].clone(), 2, vec![(m[1].clone(), s6), (-&one, s8)]);

    for (s, i) in [(s9, 0), (s10, 1), (s4, 2), (s5, 3), (s2, 4)] {
        ch.conclude(s, i);
    }
    (j, ch.cert)
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/certs");
    let cases = [
        ("case1.cert", "J1", "g1 = x16 f1 f2, g2 = m1 f1 + m4, g3 = m2 f2 + m5", case1()),
        ("case2.cert", "J2", "g1 = x13 (m4/x13 + m3), g2 = m1 m2 (m4/x13 + m3) + m5, g3 = m1 + m2 + m3", case2()),
    ];
    for (file, name, shape, (j, cert)) in cases {
        let report = cert.check(&j).expect("certificate replays");
        let text = format!("# {name} up to radical: {shape}\n{}", cert.to_text());
        let back = RadicalCertificate::parse(&text, j.vars()).unwrap();
        assert_eq!(back, cert, "text form round-trips");
        std::fs::write(dir.join(file), text).unwrap();
        println!("{file}: {} steps", report.steps_checked);
    }
}
