//! Explicit three-element radical generators for the generic ideals J1 and
//! J2, and their transport to any ideal whose hypergraph embeds.

use crate::data::{certificate_text, generic_ideal};
use crate::error::{Error, Result};
use crate::hypergraph::{hypergraph_of, permute_mask};
use crate::ideal::{MonomialIdeal, SquarefreeMonomial};
use crate::resolution::char_independent_pd;
use crate::verify::{Polynomial, RadicalCertificate};

/// Vertices 3, 4, 5 as a face mask.
const FACE_345: u32 = 0b11100;

fn poly(m: &SquarefreeMonomial) -> Polynomial {
    Polynomial::from_squarefree(m)
}

/// The variable whose divisibility pattern is exactly {m3, m4, m5}.
pub fn face_345_variable(ideal: &MonomialIdeal) -> Result<usize> {
    let (_, map) = hypergraph_of(ideal)?;
    map.by_face
        .get(&FACE_345)
        .map(|v| v[0])
        .ok_or_else(|| Error::ConstructionFailed("no variable divides exactly m3, m4, m5".into()))
}

/// g1 = x f1 f2, g2 = m1 f1 + m4, g3 = m2 f2 + m5 with
/// f1 = gcd(m1,m3) + gcd(m4,m5) m2, f2 = gcd(m2,m3) + gcd(m4,m5) m1.
pub fn case1_triple(ideal: &MonomialIdeal) -> Result<Vec<Polynomial>> {
    let m: Vec<Polynomial> = ideal.gens().iter().map(poly).collect();
    let g = ideal.gens();
    let x = Polynomial::variable(face_345_variable(ideal)?);
    let c = poly(&g[3].gcd(&g[4]));
    let f1 = &poly(&g[0].gcd(&g[2])) + &(&c * &m[1]);
    let f2 = &poly(&g[1].gcd(&g[2])) + &(&c * &m[0]);
    Ok(vec![&(&x * &f1) * &f2, &(&m[0] * &f1) + &m[3], &(&m[1] * &f2) + &m[4]])
}

/// g1 = x (m4/x + m3), g2 = m1 m2 (m4/x + m3) + m5, g3 = m1 + m2 + m3.
pub fn case2_triple(ideal: &MonomialIdeal) -> Result<Vec<Polynomial>> {
    let g = ideal.gens();
    let m: Vec<Polynomial> = g.iter().map(poly).collect();
    let xi = face_345_variable(ideal)?;
    let q = &poly(&g[3].without(&SquarefreeMonomial::variable(xi))) + &m[2];
    Ok(vec![
        &Polynomial::variable(xi) * &q,
        &(&(&m[0] * &m[1]) * &q) + &m[4],
        Polynomial::sum([&m[0], &m[1], &m[2]]),
    ])
}

/// The explicit triple for J_k (k = 1, 2) together with J_k and its shipped
/// certificate.
pub fn generic_triple(k: usize) -> Result<(MonomialIdeal, Vec<Polynomial>, RadicalCertificate)> {
    let j = generic_ideal(k)?;
    let triple = match k {
        1 => case1_triple(&j)?,
        2 => case2_triple(&j)?,
        _ => return Err(Error::Precondition(format!("no explicit triple for J{k}"))),
    };
    let cert = RadicalCertificate::parse(certificate_text(k)?, j.vars())?;
    Ok((j, triple, cert))
}

/// Result of transporting generators from J_k to an ideal.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub k: usize,
    /// Vertex v of H(I) goes to vertex sigma[v] of H(J_k).
    pub sigma: Vec<usize>,
    /// Present for k = 1, 2.
    pub generators: Option<Vec<Polynomial>>,
    pub certificate: Option<RadicalCertificate>,
}

/// The ring map K[vars(J)] → K[vars(I)] sending the defining variable of a
/// face G of H(J) to the product of the defining variables of σ⁻¹(G) in I,
/// or to 1 when σ⁻¹(G) is not a face of H(I).
fn substitution(ideal: &MonomialIdeal, j: &MonomialIdeal, sigma: &[usize]) -> Result<Vec<Polynomial>> {
    let (_, imap) = hypergraph_of(ideal)?;
    let (_, jmap) = hypergraph_of(j)?;
    let mut inverse = vec![0; sigma.len()];
    for (v, &s) in sigma.iter().enumerate() {
        inverse[s] = v;
    }
    let mut image = vec![Polynomial::one(); j.vars().len()];
    for (&x, &face) in &jmap.by_variable {
        if let Some(vars) = imap.by_face.get(&permute_mask(face, &inverse)) {
            image[x] = poly(&SquarefreeMonomial::from_indices(vars.iter().copied()));
        }
    }
    Ok(image)
}

/// Transport the J_k construction along an embedding H(I) ↪ H(J_k).
/// The certificate is replayed against `ideal` before returning.
pub fn specialize_generators(ideal: &MonomialIdeal) -> Result<Specialization> {
    if ideal.mu() != 5 || ideal.height() != 2 || !ideal.is_connected() || char_independent_pd(ideal)? != 3 {
        return Err(Error::Precondition("specialization needs mu 5, height 2, pd 3, connected".into()));
    }
    let (h, _) = hypergraph_of(ideal)?;
    for k in 1..=3 {
        let j = generic_ideal(k)?;
        let (hj, _) = hypergraph_of(&j)?;
        let Some(sigma) = h.embed(&hj) else { continue };
        if k == 3 {
            return Ok(Specialization { k, sigma, generators: None, certificate: None });
        }
        let (_, triple, cert) = generic_triple(k)?;
        let image = substitution(ideal, &j, &sigma)?;
        let map = |x: usize| image[x].clone();
        let generators = triple.iter().map(|g| g.substitute(&map)).collect();
        let mut cert = cert.substitute(ideal.vars().to_vec(), &map);
        let mut inverse = vec![0; sigma.len()];
        for (v, &s) in sigma.iter().enumerate() {
            inverse[s] = v;
        }
        cert.permute_conclusions(&inverse);
        cert.check(ideal)?;
        return Ok(Specialization { k, sigma, generators: Some(generators), certificate: Some(cert) });
    }
    Err(Error::NotInGenericSet)
}
