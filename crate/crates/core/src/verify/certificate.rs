//! Radical-membership certificates.
//!
//! A certificate lists generators g_i of J and a chain of steps, each an
//! exact identity `target^k = Σ cofactor * ref` where every ref is a
//! generator or an earlier step. A step whose refs all lie in √J puts its
//! target in √J. Concluding every minimal generator of I, together with
//! g_i ∈ I, gives √J = I.
//!
//! Text form, one item per line, `#` comments:
//!
//! ```text
//! gen 1: x1*x2 + x3
//! step 1: (x1*x3)^2 = (x1*x3)*gen:1 - (x1^2*x2*x3)*step:0
//! conclude: step 1 proves m_2
//! ```

use std::fmt::Write as _;

use super::poly::{parse_polynomial, Polynomial};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ref {
    Gen(usize),
    Step(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub target: Polynomial,
    pub power: u32,
    pub terms: Vec<(Polynomial, Ref)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadicalCertificate {
    pub vars: Vec<String>,
    pub gens: Vec<Polynomial>,
    pub steps: Vec<Step>,
    /// (step index, generator index of I), both 0-based.
    pub conclusions: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub steps_checked: usize,
    pub generators_in_ideal: usize,
    pub concluded: Vec<usize>,
}

/// A polynomial lies in a monomial ideal iff each of its terms does.
pub fn member_monomial_ideal(p: &Polynomial, ideal: &MonomialIdeal) -> bool {
    p.terms().all(|(m, _)| {
        let s = m.squarefree_part();
        ideal.gens().iter().any(|g| g.divides(&s))
    })
}

fn strip_label<'a>(line: &'a str, label: &str) -> Option<&'a str> {
    line.strip_prefix(label).map(str::trim_start)
}

impl RadicalCertificate {
    /// Parse against the variables of `ideal`; names outside it are appended.
    pub fn parse(text: &str, vars: &[String]) -> Result<Self> {
        let mut names = vars.to_vec();
        let mut gens = Vec::new();
        let mut steps: Vec<Step> = Vec::new();
        let mut conclusions = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("");
            let body = line.trim();
            if body.is_empty() {
                continue;
            }
            let col0 = line.len() - line.trim_start().len() + 1;
            let Some((head, rest)) = body.split_once(':') else {
                return Err(Error::parse(line_no, col0, "expected `gen`, `step` or `conclude`"));
            };
            let rest_col = col0 + head.len() + 1;
            let head = head.trim();
            if let Some(num) = strip_label(head, "gen") {
                let i = parse_index(num, line_no, col0)?;
                if i != gens.len() + 1 {
                    return Err(Error::parse(line_no, col0, format!("expected gen {}", gens.len() + 1)));
                }
                gens.push(parse_polynomial(rest, &mut names, line_no, rest_col)?);
            } else if let Some(num) = strip_label(head, "step") {
                let s = parse_index(num, line_no, col0)?;
                if s != steps.len() + 1 {
                    return Err(Error::parse(line_no, col0, format!("expected step {}", steps.len() + 1)));
                }
                steps.push(parse_step(rest, &mut names, line_no, rest_col, gens.len(), steps.len())?);
            } else if head == "conclude" {
                let words: Vec<&str> = rest.split_whitespace().collect();
                match words.as_slice() {
                    ["step", s, "proves", m] => {
                        let s = parse_index(s, line_no, rest_col)?;
                        let m = m
                            .strip_prefix("m_")
                            .ok_or_else(|| Error::parse(line_no, rest_col, "expected m_<i>"))?;
                        let m = parse_index(m, line_no, rest_col)?;
                        if s == 0 || s > steps.len() || m == 0 {
                            return Err(Error::parse(line_no, rest_col, "reference out of range"));
                        }
                        conclusions.push((s - 1, m - 1));
                    }
                    _ => return Err(Error::parse(line_no, rest_col, "expected `step <s> proves m_<i>`")),
                }
            } else {
                return Err(Error::parse(line_no, col0, format!("unknown item `{head}`")));
            }
        }
        Ok(Self { vars: names, gens, steps, conclusions })
    }

    pub fn to_text(&self) -> String {
        let names = &self.vars;
        let mut out = String::new();
        for (i, g) in self.gens.iter().enumerate() {
            let _ = writeln!(out, "gen {}: {}", i + 1, g.display(names));
        }
        for (s, step) in self.steps.iter().enumerate() {
            let _ = write!(out, "step {}: ({})^{} =", s + 1, step.target.display(names), step.power);
            for (k, (cof, r)) in step.terms.iter().enumerate() {
                let sep = if k == 0 { " " } else { " + " };
                let r = match r {
                    Ref::Gen(i) => format!("gen:{}", i + 1),
                    Ref::Step(t) => format!("step:{}", t + 1),
                };
                let _ = write!(out, "{sep}({})*{r}", cof.display(names));
            }
            if step.terms.is_empty() {
                out.push_str(" 0");
            }
            out.push('\n');
        }
        for &(s, m) in &self.conclusions {
            let _ = writeln!(out, "conclude: step {} proves m_{}", s + 1, m + 1);
        }
        out
    }

    fn reference(&self, r: Ref) -> &Polynomial {
        match r {
            Ref::Gen(i) => &self.gens[i],
            Ref::Step(t) => &self.steps[t].target,
        }
    }

    /// Replay every identity, check g_i ∈ I and that every minimal
    /// generator of I is concluded.
    pub fn check(&self, ideal: &MonomialIdeal) -> Result<CertificateReport> {
        if self.vars.len() > ideal.vars().len() || self.vars[..] != ideal.vars()[..self.vars.len()] {
            let extra: Vec<&String> = self.vars.iter().skip(ideal.vars().len()).collect();
            return Err(Error::Certificate(format!("variables outside the ideal: {extra:?}")));
        }
        for (s, step) in self.steps.iter().enumerate() {
            if step.power == 0 {
                return Err(Error::Certificate(format!("step {} has exponent 0", s + 1)));
            }
            let mut rhs = Polynomial::zero();
            for (cof, r) in &step.terms {
                if let Ref::Step(t) = r {
                    if *t >= s {
                        return Err(Error::Certificate(format!("step {} refers forward to step {}", s + 1, t + 1)));
                    }
                }
                rhs.add_assign_ref(&(cof * self.reference(*r)));
            }
            let diff = &step.target.pow(step.power) - &rhs;
            if !diff.is_zero() {
                return Err(Error::CertificateStep { step: s + 1, difference: diff.display(&self.vars).to_string() });
            }
        }
        for (i, g) in self.gens.iter().enumerate() {
            if !member_monomial_ideal(g, ideal) {
                return Err(Error::Certificate(format!("gen {} is not in the ideal", i + 1)));
            }
        }
        let mut concluded = vec![false; ideal.mu()];
        for &(s, m) in &self.conclusions {
            let Some(gen) = ideal.gens().get(m) else {
                return Err(Error::Certificate(format!("m_{} does not exist", m + 1)));
            };
            if self.steps[s].target != Polynomial::from_squarefree(gen) {
                return Err(Error::Certificate(format!("step {} does not have target m_{}", s + 1, m + 1)));
            }
            concluded[m] = true;
        }
        if let Some(m) = concluded.iter().position(|c| !c) {
            return Err(Error::Certificate(format!("m_{} is never concluded", m + 1)));
        }
        Ok(CertificateReport {
            steps_checked: self.steps.len(),
            generators_in_ideal: self.gens.len(),
            concluded: (0..ideal.mu()).collect(),
        })
    }

    /// Push every polynomial through a ring map. `vars` names the target ring.
    pub fn substitute(&self, vars: Vec<String>, image: &dyn Fn(usize) -> Polynomial) -> Self {
        let map = |p: &Polynomial| p.substitute(image);
        Self {
            vars,
            gens: self.gens.iter().map(map).collect(),
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    target: map(&s.target),
                    power: s.power,
                    terms: s.terms.iter().map(|(c, r)| (map(c), *r)).collect(),
                })
                .collect(),
            conclusions: self.conclusions.clone(),
        }
    }

    /// Relabel conclusions after a permutation of the ideal's generators:
    /// old generator i becomes new generator `perm[i]`.
    pub fn permute_conclusions(&mut self, perm: &[usize]) {
        for c in &mut self.conclusions {
            c.1 = perm[c.1];
        }
    }
}

/// The trivial certificate for J = I: each m_i = 1 * gen i.
pub fn trivial_certificate(ideal: &MonomialIdeal) -> RadicalCertificate {
    let gens: Vec<Polynomial> = ideal.gens().iter().map(Polynomial::from_squarefree).collect();
    let steps = gens
        .iter()
        .enumerate()
        .map(|(i, g)| Step { target: g.clone(), power: 1, terms: vec![(Polynomial::one(), Ref::Gen(i))] })
        .collect();
    RadicalCertificate {
        vars: ideal.vars().to_vec(),
        gens,
        steps,
        conclusions: (0..ideal.mu()).map(|i| (i, i)).collect(),
    }
}

fn parse_index(s: &str, line: usize, column: usize) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::parse(line, column, format!("expected an index, found `{}`", s.trim())))
}

/// `(<target>)^k = <cof>*gen:i + <cof>*step:t ...`; a sign before a term
/// negates its cofactor.
fn parse_step(
    text: &str,
    names: &mut Vec<String>,
    line: usize,
    column: usize,
    ngens: usize,
    current: usize,
) -> Result<Step> {
    let Some((lhs, rhs)) = text.split_once('=') else {
        return Err(Error::parse(line, column, "expected `=`"));
    };
    let lhs_t = lhs.trim();
    let (target_text, power) = match lhs_t.rfind(")^") {
        Some(p) if lhs_t.starts_with('(') => {
            let k: u32 = lhs_t[p + 2..]
                .trim()
                .parse()
                .map_err(|_| Error::parse(line, column, "bad exponent"))?;
            (&lhs_t[1..p], k)
        }
        _ => (lhs_t, 1),
    };
    let target = parse_polynomial(target_text, names, line, column)?;
    let rhs_col = column + lhs.len() + 1;
    let mut terms = Vec::new();
    for (piece, offset) in split_top_level(rhs) {
        let piece_t = piece.trim();
        if piece_t == "0" {
            continue;
        }
        let col = rhs_col + offset;
        let (neg, body) = match piece_t.strip_prefix('-') {
            Some(b) => (true, b.trim_start()),
            None => (false, piece_t.strip_prefix('+').map_or(piece_t, str::trim_start)),
        };
        let Some(star) = body.rfind('*') else {
            return Err(Error::parse(line, col, "expected `<cofactor>*gen:<i>` or `<cofactor>*step:<t>`"));
        };
        let (cof_text, r_text) = (&body[..star], body[star + 1..].trim());
        let r = if let Some(i) = r_text.strip_prefix("gen:") {
            let i = parse_index(i, line, col)?;
            if i == 0 || i > ngens {
                return Err(Error::parse(line, col, format!("gen:{i} is not defined")));
            }
            Ref::Gen(i - 1)
        } else if let Some(t) = r_text.strip_prefix("step:") {
            let t = parse_index(t, line, col)?;
            if t == 0 || t > current {
                return Err(Error::parse(line, col, format!("step:{t} is not an earlier step")));
            }
            Ref::Step(t - 1)
        } else {
            return Err(Error::parse(line, col, format!("bad reference `{r_text}`")));
        };
        let mut cof = parse_polynomial(cof_text, names, line, col)?;
        if neg {
            cof = -&cof;
        }
        terms.push((cof, r));
    }
    Ok(Step { target, power, terms })
}

/// Split at `+`/`-` outside parentheses, keeping the sign with each piece.
fn split_top_level(s: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && !s[start..i].trim().is_empty() => {
                out.push((&s[start..i], start));
                start = i;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push((&s[start..], start));
    }
    out
}
