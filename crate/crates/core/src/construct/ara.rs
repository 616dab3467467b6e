//! ara I for μ(I) ≤ 5 or arithdeg I ≤ 4: the value pd S/I together with the
//! path that establishes it and, where the path is constructive, pd S/I
//! polynomials generating I up to radical.

use serde::Serialize;

use super::combine::{combine_intersection, combine_sum, cone_reduce, strip_indeg_one, ConeStep};
use super::frame::{h14_system, h17_system, h1_systems, FrameVars};
use super::sv::{sv_check, SvSystem};
use super::triples::specialize_generators;
use crate::error::{Error, Result};
use crate::hypergraph::{hypergraph_of, match_template_all};
use crate::ideal::{minimalize, MonomialIdeal, SquarefreeMonomial};
use crate::resolution::{pd, Field, Strategy};
use crate::verify::{Polynomial, RadicalCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Justification {
    GenericSetSpecialization,
    SVConstruction,
    ConeReduction,
    Sum,
    Intersection,
    CitedExternal,
}

#[derive(Clone, Debug)]
pub struct AraResult {
    pub value: usize,
    pub justification: Justification,
    /// Which rule fired, in words.
    pub note: String,
    /// Present only when every step of the path is constructive.
    pub generators: Option<Vec<Polynomial>>,
    /// Radical certificate of a specialized triple.
    pub certificate: Option<RadicalCertificate>,
    /// SV systems used, each with the ideal it was checked against.
    pub sv_systems: Vec<(SvSystem, MonomialIdeal)>,
    pub cone_log: Vec<ConeStep>,
}

impl AraResult {
    fn cited(value: usize, note: impl Into<String>) -> Self {
        Self {
            value,
            justification: Justification::CitedExternal,
            note: note.into(),
            generators: None,
            certificate: None,
            sv_systems: Vec::new(),
            cone_log: Vec::new(),
        }
    }

    fn built(value: usize, justification: Justification, note: impl Into<String>, gens: Vec<Polynomial>) -> Self {
        Self { justification, generators: Some(gens), ..Self::cited(value, note) }
    }

    pub fn to_json(&self, vars: &[String]) -> serde_json::Value {
        serde_json::json!({
            "value": self.value,
            "justification": self.justification,
            "note": self.note,
            "generators": self.generators.as_ref().map(|g| {
                g.iter().map(|p| p.display(vars).to_string()).collect::<Vec<_>>()
            }),
            "cone_log": self.cone_log,
        })
    }
}

/// pd S/I over ℚ: from I* when it has at most four generators, otherwise
/// from the lcm lattice of I; height-1 ideals are first divided by their
/// common factor, which does not change pd.
pub fn pd_value(ideal: &MonomialIdeal) -> Result<usize> {
    if ideal.mu() == 1 {
        return Ok(1);
    }
    let c = ideal.common_factor();
    if !c.is_one() {
        return pd_value(&ideal.divide_by(&c)?);
    }
    if ideal.arithdeg() <= 4 {
        return pd(ideal, Field::Q, Strategy::Dual);
    }
    if ideal.mu() <= 20 {
        return pd(ideal, Field::Q, Strategy::Direct);
    }
    Err(Error::OutOfScope)
}

pub fn ara(ideal: &MonomialIdeal) -> Result<AraResult> {
    if ideal.mu() > 5 && ideal.arithdeg() > 4 {
        return Err(Error::OutOfScope);
    }
    let r = ara_inner(ideal)?;
    if let Some(g) = &r.generators {
        if g.len() != r.value {
            return Err(Error::ConstructionFailed(format!("{} generators for pd {}", g.len(), r.value)));
        }
    }
    Ok(r)
}

fn ara_inner(ideal: &MonomialIdeal) -> Result<AraResult> {
    let value = pd_value(ideal)?;
    if ideal.mu() == 1 {
        let g = Polynomial::from_squarefree(&ideal.gens()[0]);
        return Ok(AraResult::built(1, Justification::SVConstruction, "principal", vec![g]));
    }
    let c = ideal.common_factor();
    if !c.is_one() {
        // I = (x^c) ∩ I' with I' in the remaining variables.
        let rest = ara_inner(&ideal.divide_by(&c)?)?;
        let mut r = AraResult { value, justification: Justification::Intersection, ..rest };
        r.note = "height 1: common factor split off".into();
        r.generators = match r.generators.take() {
            Some(g) => Some(combine_intersection(&[Polynomial::from_squarefree(&c)], &g)?),
            None => None,
        };
        return Ok(r);
    }
    if ideal.indeg() == 1 {
        let s = strip_indeg_one(ideal)?;
        let linear: Vec<Polynomial> = s.linear.iter().map(|&v| Polynomial::variable(v)).collect();
        let Some(rest) = s.rest else {
            return Ok(AraResult::built(value, Justification::Sum, "generated by variables", linear));
        };
        let rest = ara_inner(&rest)?;
        let generators = match &rest.generators {
            Some(g) => Some(combine_sum(&linear, g)?),
            None => None,
        };
        return Ok(AraResult { value, justification: Justification::Sum, note: "degree-one generators split off".into(), generators, ..rest });
    }
    if !ideal.is_connected() {
        let parts: Vec<AraResult> = ideal.components().iter().map(ara_inner).collect::<Result<_>>()?;
        let mut generators = Some(Vec::new());
        for p in &parts {
            generators = match (generators, &p.generators) {
                (Some(acc), Some(g)) => Some(combine_sum(&acc, g)?),
                _ => None,
            };
        }
        return Ok(merge(value, Justification::Sum, "disconnected: sum of components", generators, parts));
    }
    let height = ideal.height();
    let generic = ideal.mu() == 5 && height == 2 && value == 3;
    if ideal.arithdeg() <= 4 {
        match arithdeg4(ideal, value) {
            Ok(r) if r.generators.is_some() || !generic => return Ok(r),
            Err(e) if !generic => return Err(e),
            _ => {}
        }
    }
    if generic {
        let s = specialize_generators(ideal)?;
        return Ok(match s.generators {
            Some(g) => AraResult {
                certificate: s.certificate,
                ..AraResult::built(value, Justification::GenericSetSpecialization, format!("specialized from J{}", s.k), g)
            },
            None => AraResult::cited(value, "embeds only into J3: Lyubeznik resolution of length 3"),
        });
    }
    let mu = ideal.mu();
    let note = if mu - height <= 2 {
        "mu - height <= 2"
    } else if mu - value <= 1 {
        "mu - pd <= 1"
    } else if value == height {
        "height 2 Cohen-Macaulay"
    } else {
        "mu <= 5"
    };
    Ok(AraResult::cited(value, note))
}

fn merge(
    value: usize,
    justification: Justification,
    note: &str,
    generators: Option<Vec<Polynomial>>,
    parts: Vec<AraResult>,
) -> AraResult {
    let mut r = AraResult { generators, justification, ..AraResult::cited(value, note) };
    for p in parts {
        r.sv_systems.extend(p.sv_systems);
        r.cone_log.extend(p.cone_log);
    }
    r
}

/// Connected, height ≥ 2, indeg ≥ 2, arithdeg ≤ 4.
fn arithdeg4(ideal: &MonomialIdeal, value: usize) -> Result<AraResult> {
    let vars = ideal.vars().to_vec();
    let dual = ideal.alexander_dual()?;
    let (h, map) = hypergraph_of(&dual)?;
    if !h.is_connected() {
        // Primes fall into variable-disjoint groups; I is the intersection
        // of the group intersections.
        let groups: Vec<MonomialIdeal> = dual
            .components()
            .iter()
            .map(|d| MonomialIdeal::from_primes(vars.clone(), d.gens()))
            .collect::<Result<_>>()?;
        let parts: Vec<AraResult> = groups.iter().map(ara_inner).collect::<Result<_>>()?;
        let mut generators: Option<Vec<Polynomial>> = None;
        let mut first = true;
        for p in &parts {
            generators = match (first, generators, &p.generators) {
                (true, _, Some(g)) => Some(g.clone()),
                (false, Some(acc), Some(g)) => Some(combine_intersection(&acc, g)?),
                _ => None,
            };
            first = false;
        }
        return Ok(merge(value, Justification::Intersection, "H(I*) disconnected", generators, parts));
    }
    if ideal.arithdeg() - ideal.indeg() <= 1 {
        return Ok(AraResult::cited(value, "arithdeg - indeg <= 1"));
    }
    if h.dim() == 2 {
        let (_, log) = cone_reduce(ideal)?;
        let mut r = AraResult::cited(value, "cone reduction to dim H(I*) <= 1, lifted by citation");
        r.justification = Justification::ConeReduction;
        r.cone_log = log;
        return Ok(r);
    }
    if h.w_mask() == 0 {
        return Ok(AraResult::cited(value, "W(H(I*)) empty: arithdeg = reg I"));
    }
    let matches = match_template_all(&h)?;
    for m in &matches {
        let (x, y) = m.slot_variables(&map.by_face);
        let frame = FrameVars::from_slots(x, y);
        match m.template {
            1 => {
                let systems = h1_systems(&frame);
                let mut parts = Vec::new();
                let mut members: Vec<SquarefreeMonomial> = Vec::new();
                for sys in systems {
                    let part = MonomialIdeal::new(vars.clone(), sys.members().cloned().collect())?;
                    if !sv_check(&sys, &part).passed() {
                        break;
                    }
                    members.extend(sys.members().cloned());
                    parts.push((sys, part));
                }
                let mut want = ideal.gens().to_vec();
                want.sort();
                let mut got = minimalize(&members)?;
                got.sort();
                if parts.len() == 2 && got == want {
                    let gens: Vec<Polynomial> = parts.iter().flat_map(|(s, _)| s.generators()).collect();
                    if gens.len() == value {
                        let mut r = AraResult::built(value, Justification::SVConstruction, "template H1: two diagonal systems", gens);
                        r.sv_systems = parts;
                        return Ok(r);
                    }
                }
            }
            t => {
                let sys = if t == 14 { h14_system(&frame) } else { h17_system(&frame) }.compact();
                if sys.len() == value && sv_check(&sys, ideal).passed() {
                    let mut r =
                        AraResult::built(value, Justification::SVConstruction, format!("template H{t}"), sys.generators());
                    r.sv_systems.push((sys, ideal.clone()));
                    return Ok(r);
                }
            }
        }
    }
    Err(Error::ConstructionFailed(format!("no labeling of template H{} gives a valid system", matches[0].template)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::generic_ideal;
    use crate::hypergraph::templates::{FrameParams, Template};
    use crate::resolution::pd_formula_arithdeg4;
    use crate::verify::member_monomial_ideal;

    fn in_ideal(r: &AraResult, i: &MonomialIdeal) -> bool {
        r.generators.as_ref().unwrap().iter().all(|g| member_monomial_ideal(g, i))
    }

    #[test]
    fn triangle_is_cited() {
        let i = MonomialIdeal::parse_list("x1*x2, x2*x3, x1*x3").unwrap();
        let r = ara(&i).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.justification, Justification::CitedExternal);
    }

    #[test]
    fn generic_ideals() {
        let j1 = generic_ideal(1).unwrap();
        let r = ara(&j1).unwrap();
        assert_eq!((r.value, r.justification), (3, Justification::GenericSetSpecialization));
        assert!(in_ideal(&r, &j1));
        r.certificate.unwrap().check(&j1).unwrap();
        let r = ara(&generic_ideal(3).unwrap()).unwrap();
        assert_eq!((r.value, r.justification), (3, Justification::CitedExternal));
        assert!(r.generators.is_none());
    }

    #[test]
    fn h17_frame_all_ones() {
        let p = FrameParams::new([1; 6], [1; 3]);
        let i = p.ideal().unwrap();
        let r = ara(&i).unwrap();
        assert_eq!(r.value, 6);
        assert_eq!(r.value, pd_formula_arithdeg4(Template::get(17).unwrap(), &p).unwrap());
        assert_eq!(r.justification, Justification::SVConstruction);
        assert_eq!(r.generators.as_ref().unwrap().len(), 6);
        assert!(in_ideal(&r, &i));
    }

    #[test]
    fn h1_frame_is_a_sum_of_products() {
        // (X1)∩(X3) + (X2)∩(X4) is disconnected; each summand is an
        // intersection of two linear primes.
        let p = FrameParams::new([2, 1, 2, 1, 0, 0], [0; 3]);
        let i = p.ideal().unwrap();
        let r = ara(&i).unwrap();
        assert_eq!((r.value, r.justification), (4, Justification::Sum));
        assert!(in_ideal(&r, &i));
    }

    #[test]
    fn structural_paths() {
        // Common factor, degree-one generator and two components.
        let i = MonomialIdeal::parse_list("z*a*b, z*b*c").unwrap();
        let r = ara(&i).unwrap();
        assert_eq!((r.value, r.justification), (2, Justification::Intersection));
        assert!(in_ideal(&r, &i));
        let i = MonomialIdeal::parse_list("x, a*b, b*c").unwrap();
        let r = ara(&i).unwrap();
        assert_eq!((r.value, r.justification), (3, Justification::Sum));
        assert!(in_ideal(&r, &i));
        let i = MonomialIdeal::parse_list("a*b, c*d").unwrap();
        let r = ara(&i).unwrap();
        assert_eq!((r.value, r.justification), (2, Justification::Sum));
        assert!(in_ideal(&r, &i));
    }

    #[test]
    fn out_of_scope() {
        // Six pairwise coprime generators: 64 minimal primes.
        let i = MonomialIdeal::parse_list("a*b, c*d, e*f, g*h, i*j, k*l").unwrap();
        assert!(matches!(ara(&i), Err(Error::OutOfScope)));
    }
}
