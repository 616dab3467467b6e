use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use monoara::construct::{self, h14_system, h17_system, h1_systems, sv_check, FrameVars, SvSystem};
use monoara::data::generic_ideal;
use monoara::enumeration::{self, generic_set_from, RunConfig, SearchSpace, Target, MAX_ENUM_MU};
use monoara::hypergraph::{encode_face_set, hypergraph_of, mask_vertices, match_template, FrameParams, Template};
use monoara::resolution::{betti_table, pd_formula_arithdeg4, Strategy};
use monoara::verify::{groebner_radical_member, member_monomial_ideal, Polynomial, RadicalCertificate, RadicalMembership};
use monoara::{Error, MonomialIdeal};
use serde_json::{json, Value};

use crate::{Context, Failure, PdRoute, Report, EXIT_BUDGET, EXIT_VERIFICATION};

type Outcome = Result<Report, Failure>;

/// Gröbner budget when `--budget-seconds` is not given.
const DEFAULT_ORACLE_SECONDS: u64 = 60;

fn load_ideal(cx: &mut Context, path: &Path) -> Result<MonomialIdeal, Failure> {
    let text = cx.manifest.read_input(path)?;
    Ok(MonomialIdeal::parse_any(&text)?)
}

fn names(ideal: &MonomialIdeal, m: &monoara::SquarefreeMonomial) -> Vec<String> {
    m.iter().map(|v| ideal.vars()[v].clone()).collect()
}

fn vertices(face: u32) -> Vec<usize> {
    mask_vertices(face).map(|v| v + 1).collect()
}

pub fn invariants(cx: &mut Context, file: &Path) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let inv = ideal.invariants();
    let text = format!(
        "variables {}\nmu {}\nindeg {}\nheight {}\narithdeg {}\nconnected {}\n",
        ideal.vars().len(),
        inv.mu,
        inv.indeg,
        inv.height,
        inv.arithdeg,
        inv.connected
    );
    let mut doc = serde_json::to_value(&inv).expect("plain data serializes");
    doc["variables"] = json!(ideal.vars().len());
    Ok(Report::new(doc, text))
}

pub fn primes(cx: &mut Context, file: &Path) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let primes: Vec<Vec<String>> = ideal.minimal_primes().primes.iter().map(|p| names(&ideal, p)).collect();
    let text: String = primes.iter().map(|p| format!("({})\n", p.join(", "))).collect();
    Ok(Report::new(json!({ "primes": primes }), text))
}

pub fn dual(cx: &mut Context, file: &Path) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let d = ideal.alexander_dual()?;
    let mut r = Report::new(serde_json::to_value(d.to_json()).expect("plain data serializes"), d.to_text());
    r.files.push(("dual.ideal".into(), d.to_text()));
    Ok(r)
}

pub fn hypergraph(cx: &mut Context, file: &Path) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let (h, map) = hypergraph_of(&ideal)?;
    let s = h.structure();
    let canonical = (h.mu() <= 6).then(|| h.canonical_form().to_hex());
    let template = if ideal.height() >= 2 && ideal.arithdeg() <= 4 {
        let (hd, _) = hypergraph_of(&ideal.alexander_dual()?)?;
        match_template(&hd).ok().map(|m| m.template)
    } else {
        None
    };
    let defining: Vec<Value> = map
        .by_face
        .iter()
        .map(|(&f, vars)| json!({ "face": vertices(f), "vars": vars.iter().map(|&v| &ideal.vars()[v]).collect::<Vec<_>>() }))
        .collect();
    let mut text = format!("H(I) = {h}\n");
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(text, "B = {{{}}}, W = {{{}}}, dim {}", list(&s.b), list(&s.w), s.dim);
    let _ = writeln!(text, "connected {}, separable {}", s.connected, s.separable);
    if let Some(c) = &canonical {
        let _ = writeln!(text, "canonical {c}");
    }
    if let Some(t) = template {
        let _ = writeln!(text, "H(I*) matches template H{t}");
    }
    let doc = json!({
        "hypergraph": h.to_json(),
        "structure": s,
        "canonical": canonical,
        "defining": defining,
        "dual_template": template,
    });
    Ok(Report::new(doc, text))
}

pub fn betti(cx: &mut Context, file: &Path) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let table = betti_table(&ideal, cx.field);
    let mut text = format!("field {}\n", cx.field);
    for ((i, j), b) in table.graded() {
        let _ = writeln!(text, "beta_{i},{j} = {b}");
    }
    let _ = writeln!(text, "pd {}\nreg {}", table.pd(), table.reg_ideal());
    Ok(Report::new(serde_json::to_value(table.to_json()).expect("plain data serializes"), text))
}

pub fn pd(cx: &mut Context, file: &Path, route: PdRoute) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let strategy = match route {
        PdRoute::Direct => Strategy::Direct,
        PdRoute::Dual => Strategy::Dual,
        PdRoute::Auto if ideal.mu() > 12 && ideal.height() >= 2 => Strategy::Dual,
        PdRoute::Auto => Strategy::Direct,
    };
    let value = monoara::resolution::pd(&ideal, cx.field, strategy)?;
    let route = if strategy == Strategy::Dual { "dual" } else { "direct" };
    Ok(Report::new(json!({ "pd": value, "field": cx.field, "route": route }), format!("{value}\n")))
}

fn ara_report(ideal: &MonomialIdeal, r: &construct::AraResult, cert_name: &str) -> Report {
    let vars = ideal.vars();
    let mut doc = r.to_json(vars);
    doc["certificate"] = json!(r.certificate.as_ref().map(|_| cert_name));
    let mut text = format!("ara {}\njustification {:?}\nnote {}\n", r.value, r.justification, r.note);
    if let Some(g) = &r.generators {
        for (k, p) in g.iter().enumerate() {
            let _ = writeln!(text, "g{} = {}", k + 1, p.display(vars));
        }
    }
    let mut report = Report::new(doc, text);
    if let Some(c) = &r.certificate {
        report.files.push((cert_name.into(), c.to_text()));
    }
    report
}

pub fn ara(cx: &mut Context, file: &Path) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let r = construct::ara(&ideal)?;
    Ok(ara_report(&ideal, &r, "ara.cert"))
}

pub fn generators(cx: &mut Context, file: &Path) -> Outcome {
    let ideal = load_ideal(cx, file)?;
    let r = construct::ara(&ideal)?;
    let Some(gens) = &r.generators else {
        return Err(Failure::OutOfScope(format!(
            "ara = {} is established by citation ({}); no explicit generators",
            r.value, r.note
        )));
    };
    let mut report = ara_report(&ideal, &r, "generators.cert");
    report.text = gens.iter().map(|p| format!("{}\n", p.display(ideal.vars()))).collect();
    report.files.push(("generators.txt".into(), report.text.clone()));
    Ok(report)
}

fn check_mu(mu: usize) -> Result<(), Failure> {
    match mu {
        0 => Err(Failure::Usage("--mu must be positive".into())),
        m if m > MAX_ENUM_MU => Err(Failure::OutOfScope(format!("enumeration supports mu <= {MAX_ENUM_MU}"))),
        _ => Ok(()),
    }
}

fn run_config(cx: &Context, mu: usize, targets: Vec<Target>) -> RunConfig {
    RunConfig {
        jobs: cx.jobs.max(1),
        checkpoint: cx.checkpoint.clone(),
        resume: cx.resume,
        deadline: cx.deadline(),
        ..RunConfig::new(mu, targets)
    }
}

fn hex_lines(space: &SearchSpace, words: impl Iterator<Item = u32>) -> String {
    let mut out = String::new();
    for w in words {
        let faces: Vec<u32> = (1..=space.full()).filter(|f| w >> f & 1 == 1).collect();
        out.push_str(&encode_face_set(space.mu(), &faces));
        out.push('\n');
    }
    out
}

fn tag(t: &Target) -> String {
    format!("h{}-pd{}", t.height, t.pd)
}

pub fn enumerate(cx: &mut Context, mu: usize, targets: &[(usize, usize)]) -> Outcome {
    check_mu(mu)?;
    let targets: Vec<Target> = targets.iter().map(|&(h, p)| Target::new(h, p)).collect();
    let report = enumeration::run(&run_config(cx, mu, targets.clone()))?;
    let space = SearchSpace::new(mu);
    cx.manifest.count("search_size", report.search_size);
    cx.manifest.count("step1", report.step1);
    let mut text = format!(
        "mu {mu}\nsearch size {} in {} shards\nstep 1: {} classes\n",
        report.search_size, report.shards, report.step1
    );
    let mut step2 = Vec::new();
    let mut files = Vec::new();
    for t in &targets {
        let n = report.step2[t];
        cx.manifest.count(format!("step2-{}", tag(t)), n);
        let _ = writeln!(text, "step 2, height {} pd {}: {n} classes", t.height, t.pd);
        step2.push(json!({ "height": t.height, "pd": t.pd, "count": n }));
        files.push((format!("p2-{}.hex", tag(t)), hex_lines(&space, report.p2[t].words())));
    }
    let doc = json!({
        "mu": mu,
        "search_size": report.search_size,
        "shards": report.shards,
        "step1": report.step1,
        "step2": step2,
    });
    let mut r = Report::new(doc, text);
    r.files = files;
    Ok(r)
}

pub fn generic_set(cx: &mut Context, mu: usize, height: usize, pd: usize) -> Outcome {
    check_mu(mu)?;
    let target = Target::new(height, pd);
    let report = enumeration::run(&run_config(cx, mu, vec![target]))?;
    let set = generic_set_from(&report, target)?;
    let space = SearchSpace::new(mu);
    cx.manifest.count("search_size", report.search_size);
    cx.manifest.count("step1", set.step1);
    cx.manifest.count("step2", set.step2);
    cx.manifest.count("step3", set.hypergraphs.len() as u64);

    // The shipped J1, J2, J3 are the expected answer for mu 5, height 2, pd 3.
    let shipped: Vec<_> = if (mu, height, pd) == (5, 2, 3) {
        (1..=3).map(|k| generic_ideal(k).and_then(|j| hypergraph_of(&j)).map(|(h, _)| h)).collect::<Result<_, Error>>()?
    } else {
        Vec::new()
    };

    let mut text = format!(
        "mu {mu}, height {height}, pd {pd}\nsearch size {} in {} shards\nstep 1: {} classes\nstep 2: {} classes\nstep 3: {} maximal classes\n",
        report.search_size,
        report.shards,
        set.step1,
        set.step2,
        set.hypergraphs.len()
    );
    if !set.oracle_agrees {
        text.push_str("direct maximality oracle DISAGREES with step 3\n");
    }
    let mut members = Vec::new();
    let mut files = Vec::new();
    let mut p3 = String::new();
    for (k, (h, ideal)) in set.hypergraphs.iter().zip(&set.ideals).enumerate() {
        let hex = h.canonical_form().to_hex();
        let matches = shipped.iter().position(|j| j.is_isomorphic(h)).map(|i| format!("J{}", i + 1));
        let _ = write!(text, "  {}: {} faces, {} variables, {hex}", k + 1, h.len(), ideal.vars().len());
        if let Some(m) = &matches {
            let _ = write!(text, ", isomorphic to {m}");
        }
        text.push('\n');
        members.push(json!({
            "faces": h.len(),
            "variables": ideal.vars().len(),
            "canonical": hex,
            "hypergraph": h.to_json(),
            "ideal": ideal.to_json(),
            "matches": matches,
        }));
        files.push((format!("member-{}.ideal", k + 1), ideal.to_text()));
        p3.push_str(&hex);
        p3.push('\n');
    }
    files.push(("p3.hex".into(), p3));
    files.push((format!("p2-{}.hex", tag(&target)), hex_lines(&space, report.p2[&target].words())));
    let doc = json!({
        "mu": mu,
        "height": height,
        "pd": pd,
        "search_size": report.search_size,
        "step1": set.step1,
        "step2": set.step2,
        "oracle_agrees": set.oracle_agrees,
        "members": members,
    });
    let mut r = Report::new(doc, text);
    r.files = files;
    if !set.oracle_agrees {
        r.status = EXIT_VERIFICATION;
    }
    Ok(r)
}

fn parse_params(s: &str) -> Result<FrameParams, Failure> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--params: expected nine integers, got `{s}`")))?;
    let [i1, i2, i3, i4, i5, i6, j2, j3, j4] = v[..] else {
        return Err(Failure::Usage(format!("--params: expected nine integers, got {}", v.len())));
    };
    Ok(FrameParams::new([i1, i2, i3, i4, i5, i6], [j2, j3, j4]))
}

fn sv_rows(systems: &[(SvSystem, MonomialIdeal)], text: &mut String) -> (Vec<Value>, bool, usize) {
    let mut rows = Vec::new();
    let mut all = true;
    let mut groups = 0;
    for (k, (sys, part)) in systems.iter().enumerate() {
        let rep = sv_check(sys, part);
        all &= rep.passed();
        groups += sys.nonempty_groups();
        let _ = writeln!(
            text,
            "system {}: {} groups, SV1 {}, SV2 {}, SV3 {}",
            k + 1,
            sys.nonempty_groups(),
            rep.sv1,
            rep.sv2,
            rep.sv3
        );
        if let Some(f) = &rep.failure {
            let _ = writeln!(text, "  no witness at level {} for {} and {}", f.level, f.a, f.b);
        }
        rows.push(serde_json::to_value(&rep).expect("plain data serializes"));
    }
    (rows, all, groups)
}

pub fn verify_sv(cx: &mut Context, file: Option<&Path>, template: Option<usize>, params: Option<&str>) -> Outcome {
    let mut text = String::new();
    let (doc, ok) = match (file, template, params) {
        (Some(file), _, _) => {
            let ideal = load_ideal(cx, file)?;
            let r = construct::ara(&ideal)?;
            if r.sv_systems.is_empty() {
                return Err(Failure::OutOfScope(format!(
                    "ara = {} via {:?} ({}) uses no Schmitt-Vogel system",
                    r.value, r.justification, r.note
                )));
            }
            let (rows, ok, _) = sv_rows(&r.sv_systems, &mut text);
            let _ = writeln!(text, "ara {} via {:?}", r.value, r.justification);
            (json!({ "value": r.value, "systems": rows, "passed": ok }), ok)
        }
        (None, Some(t), Some(p)) => {
            let t = Template::get(t)?;
            let p = parse_params(p)?;
            p.check(t)?;
            let ideal = p.ideal()?;
            let frame = FrameVars::from_params(&p);
            let systems: Vec<(SvSystem, MonomialIdeal)> = match t.id {
                1 => h1_systems(&frame)
                    .into_iter()
                    .map(|s| {
                        let part = MonomialIdeal::new(ideal.vars().to_vec(), s.members().cloned().collect())?;
                        Ok((s, part))
                    })
                    .collect::<Result<_, Error>>()?,
                14 => vec![(h14_system(&frame), ideal.clone())],
                _ => vec![(h17_system(&frame).compact(), ideal.clone())],
            };
            let (rows, passed, groups) = sv_rows(&systems, &mut text);
            let formula = pd_formula_arithdeg4(t, &p)?;
            let betti = monoara::resolution::pd(&ideal, cx.field, Strategy::Dual)?;
            let ok = passed && groups == formula && formula == betti;
            let _ = writeln!(text, "H{} with N = {}: {groups} groups, formula {formula}, pd {betti}", t.id, p.n());
            let doc = json!({
                "template": t.id,
                "n": p.n(),
                "systems": rows,
                "groups": groups,
                "formula": formula,
                "pd": betti,
                "passed": ok,
            });
            (doc, ok)
        }
        _ => return Err(Failure::Usage("give an ideal file or --template with --params".into())),
    };
    text.push_str(if ok { "verified\n" } else { "FAILED\n" });
    let mut r = Report::new(doc, text);
    if !ok {
        r.status = EXIT_VERIFICATION;
    }
    Ok(r)
}

pub fn verify_cert(cx: &mut Context, certificate: &Path, ideal: &Path) -> Outcome {
    let cert_text = cx.manifest.read_input(certificate)?;
    let ideal = load_ideal(cx, ideal)?;
    let cert = RadicalCertificate::parse(&cert_text, ideal.vars())?;
    match cert.check(&ideal) {
        Ok(rep) => {
            let text = format!(
                "verified: {} steps replayed, {} generators in I, m1..m{} concluded\n",
                rep.steps_checked,
                rep.generators_in_ideal,
                rep.concluded.len()
            );
            let doc = json!({
                "verified": true,
                "steps": rep.steps_checked,
                "generators": rep.generators_in_ideal,
                "concluded": rep.concluded.iter().map(|m| m + 1).collect::<Vec<_>>(),
            });
            Ok(Report::new(doc, text))
        }
        Err(e @ (Error::Certificate(_) | Error::CertificateStep { .. })) => {
            let mut r = Report::new(json!({ "verified": false, "error": e.to_string() }), format!("FAILED: {e}\n"));
            r.status = EXIT_VERIFICATION;
            Ok(r)
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_generators(text: &str, ideal: &MonomialIdeal) -> Result<Vec<Polynomial>, Failure> {
    let lines: Vec<String> = if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(text).map_err(Error::from)?;
        doc["generators"]
            .as_array()
            .ok_or_else(|| Failure::Usage("generators JSON needs a `generators` list".into()))?
            .iter()
            .map(|g| g.as_str().map(str::to_owned).ok_or_else(|| Failure::Usage("generators must be strings".into())))
            .collect::<Result<_, _>>()?
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| l.rsplit(':').next().unwrap_or(l).trim().to_owned())
            .collect()
    };
    let mut names = ideal.vars().to_vec();
    let gens = lines.iter().map(|l| Polynomial::parse(l, &mut names)).collect::<Result<Vec<_>, _>>()?;
    if names.len() > ideal.vars().len() {
        return Err(Failure::Usage(format!("generators use variables outside the ideal: {:?}", &names[ideal.vars().len()..])));
    }
    Ok(gens)
}

pub fn oracle(cx: &mut Context, ideal: &Path, generators: &Path) -> Outcome {
    let ideal = load_ideal(cx, ideal)?;
    let text = cx.manifest.read_input(generators)?;
    let gens = parse_generators(&text, &ideal)?;
    let deadline = Instant::now() + cx.budget.unwrap_or(Duration::from_secs(DEFAULT_ORACLE_SECONDS));
    let mut out = String::new();
    let in_ideal: Vec<bool> = gens.iter().map(|g| member_monomial_ideal(g, &ideal)).collect();
    for (k, &b) in in_ideal.iter().enumerate() {
        let _ = writeln!(out, "g{} in I: {}", k + 1, if b { "yes" } else { "NO" });
    }
    let mut verdicts = Vec::new();
    for (k, m) in ideal.gens().iter().enumerate() {
        let left = deadline.saturating_duration_since(Instant::now());
        let v = if left.is_zero() {
            RadicalMembership::Timeout
        } else {
            groebner_radical_member(&Polynomial::from_squarefree(m), &gens, left)
        };
        let word = match v {
            RadicalMembership::Yes => "yes",
            RadicalMembership::No => "NO",
            RadicalMembership::Timeout => "timeout",
        };
        let _ = writeln!(out, "m{} = {} in radical: {word}", k + 1, ideal.monomial_string(m));
        verdicts.push(word.to_lowercase());
    }
    let refuted = in_ideal.contains(&false) || verdicts.iter().any(|v| v == "no");
    let open = verdicts.iter().any(|v| v == "timeout");
    let doc = json!({
        "generators_in_ideal": in_ideal,
        "radical_membership": verdicts,
        "verified": !refuted && !open,
    });
    let mut r = Report::new(doc, out);
    r.status = if refuted {
        EXIT_VERIFICATION
    } else if open {
        EXIT_BUDGET
    } else {
        0
    };
    Ok(r)
}
