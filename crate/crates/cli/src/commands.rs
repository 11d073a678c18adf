use std::fs;
use std::path::Path;

use whtorsion_core::lensspaces::{
    classify, free_product_scenario, lens_complex, lens_torsion, HomotopyWitness, SimpleWitness,
};
use whtorsion_core::simpleops::{random_op_sequence, replay_ops};
use whtorsion_core::torsion::{fingerprint, product_form, reidemeister_torsion};
use whtorsion_core::{
    BasedComplex, Error, GroupSpec, LensParams, OpCertificate, Representation, TorsionClass, TorsionFingerprint,
};

use crate::report::{Report, Status};

/// Cyclotomic moduli and lens orders above this are refused.
const MAX_MODULUS: u64 = 1000;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn check_modulus(n: u64) -> Result<(), Error> {
    if n > MAX_MODULUS {
        return Err(Error::InvalidRepresentation(format!("modulus {n} exceeds the supported maximum {MAX_MODULUS}")));
    }
    Ok(())
}

fn lens_params(p: i64, q: i64) -> Result<LensParams, Error> {
    if p > MAX_MODULUS as i64 {
        return Err(Error::InvalidGroup(format!("lens order {p} exceeds the supported maximum {MAX_MODULUS}")));
    }
    LensParams::new(p, q)
}

fn lcm_of_orders(spec: &GroupSpec) -> u64 {
    spec.factor_orders().iter().fold(1, |acc, &m| num_integer::lcm(acc, m))
}

fn parse_rep(spec: &GroupSpec, text: &str) -> Result<Representation, Error> {
    let rep = Representation::parse(spec, text, Some(lcm_of_orders(spec)))?;
    check_modulus(rep.modulus())?;
    Ok(rep)
}

/// `g_i ↦ ζ_n^{d·n/m_i}` for `d = 1..n-1`, `n` the lcm of the factor orders.
fn twist_reps(spec: &GroupSpec) -> Result<Vec<Representation>, Error> {
    let n = lcm_of_orders(spec);
    check_modulus(n)?;
    (1..n.max(2) as i64)
        .map(|d| {
            let exps = spec.factor_orders().iter().map(|&m| d * (n / m) as i64).collect();
            Representation::new(spec.clone(), n.max(1), exps)
        })
        .collect()
}

fn describe(class: &TorsionClass) -> String {
    product_form(class).unwrap_or_else(|| class.representative().poly_string())
}

fn load_complex(path: &Path) -> Result<BasedComplex, String> {
    let text = read(path)?;
    let c = BasedComplex::from_json(&text).map_err(|e| e.to_string())?;
    c.validate().map_err(|e| e.to_string())?;
    Ok(c)
}

pub fn torsion(path: &Path, rep: Option<&str>, all_d: bool) -> Report {
    let report = Report::new("torsion").input("file", path.display());
    let mut report = match rep {
        Some(r) => report.input("rep", r),
        None => report,
    };
    let c = match load_complex(path) {
        Ok(c) => c,
        Err(msg) => return report.fail_msg(msg),
    };
    let rep = match rep {
        Some(text) => parse_rep(c.spec(), text),
        None => {
            let ones = vec![1; c.spec().num_factors()];
            let n = lcm_of_orders(c.spec());
            check_modulus(n).and_then(|()| {
                let exps = c.spec().factor_orders().iter().zip(ones).map(|(&m, e)| e * (n / m) as i64).collect();
                Representation::new(c.spec().clone(), n, exps)
            })
        }
    };
    let rep = match rep {
        Ok(r) => r,
        Err(e) => return report.fail(&e),
    };
    report.push("representation", &rep);
    if all_d {
        let reps = match twist_reps(c.spec()) {
            Ok(r) => r,
            Err(e) => return report.fail(&e),
        };
        match fingerprint(&c, &reps) {
            Ok(fp) => push_fingerprint(&mut report, "twist", &fp),
            Err(e) => return report.fail(&e),
        }
    }
    match reidemeister_torsion(&c, &rep) {
        Ok(class) => {
            report.push("torsion", describe(&class));
            report.push("representative", class.representative().poly_string());
            report
        }
        Err(Error::NotAcyclic { degree, defect }) => {
            report.push("torsion", "NOT_ACYCLIC");
            report.push("degree", degree);
            report.push("defect", defect);
            report.set_status(Status::NotAcyclic);
            report
        }
        Err(e) => report.fail(&e),
    }
}

fn push_fingerprint(report: &mut Report, prefix: &str, fp: &TorsionFingerprint) {
    for (rep, entry) in fp.entries() {
        let value = match entry.class() {
            Some(class) => describe(class),
            None => "NOT_ACYCLIC".into(),
        };
        report.push(format!("{prefix} {rep}"), value);
    }
}

pub fn lens_emit(p: i64, q: i64, out: Option<&Path>) -> Report {
    let mut report = Report::new("lens-emit").input("p", p).input("q", q);
    let params = match lens_params(p, q) {
        Ok(x) => x,
        Err(e) => return report.fail(&e),
    };
    let text = lens_complex(&params).to_json() + "\n";
    report.push("r", params.r());
    match out {
        Some(path) => {
            if let Err(msg) = write(path, &text) {
                return report.fail_msg(msg);
            }
            report.push("written", path.display());
        }
        None => report.raw = Some(text),
    }
    report
}

fn homotopy_line(w: Option<HomotopyWitness>) -> String {
    match w {
        Some(w) if w.sign == 1 => format!("YES (m={}, qq' = m^2)", w.m),
        Some(w) => format!("YES (m={}, qq' = -m^2)", w.m),
        None => "NO".into(),
    }
}

fn simple_line(w: Option<SimpleWitness>) -> String {
    match w {
        Some(w) => {
            let sign = if w.sign == 1 { "" } else { "-" };
            let exp = if w.inverse { "^-1" } else { "" };
            format!("YES (q' = {sign}q{exp})")
        }
        None => "NO".into(),
    }
}

pub fn lens_classify(p: i64, q: i64, q2: i64, all_d: bool) -> Report {
    let mut report = Report::new("lens-classify").input("p", p).input("q", q).input("q2", q2);
    let (a, b) = match lens_params(p, q).and_then(|a| Ok((a, lens_params(p, q2)?))) {
        Ok(x) => x,
        Err(e) => return report.fail(&e),
    };
    let verdict = match classify(&a, &b) {
        Ok(v) => v,
        Err(e) => return report.fail(&e),
    };
    report.push("homotopy", homotopy_line(verdict.homotopy));
    report.push("simple", simple_line(verdict.simple));
    report.push(
        "torsion-distinguished",
        match verdict.torsion_match {
            None => "YES".to_string(),
            Some(d) => format!("NO (d={d})"),
        },
    );
    if all_d {
        for d in 1..p {
            for (name, params) in [("q", &a), ("q2", &b)] {
                let value = match lens_torsion(params, d) {
                    Ok(class) => describe(&class),
                    Err(Error::NotAcyclic { .. }) => "NOT_ACYCLIC".into(),
                    Err(e) => return report.fail(&e),
                };
                report.push(format!("torsion {name} d={d}"), value);
            }
        }
    }
    report
}

pub fn demo_freeproduct(p: i64, q: i64, q2: i64) -> Report {
    let mut report = Report::new("demo-freeproduct").input("p", p).input("q", q).input("q2", q2);
    if p > MAX_MODULUS as i64 {
        return report.fail(&Error::NonPrimeUnsupported(p));
    }
    let fp = match free_product_scenario(p, q, q2) {
        Ok(x) => x,
        Err(e) => return report.fail(&e),
    };
    report.push("second torsion", describe(&fp.second_torsion));
    report.push("unit group order", fp.unit_group_order);
    for row in &fp.rows {
        let value = match &row.torsion {
            None => "NOT_ACYCLIC".to_string(),
            Some(t) if row.matching_units.is_empty() => format!("{} (no unit match)", describe(t)),
            Some(t) => {
                let t = describe(t);
                let units: Vec<String> =
                    row.matching_units.iter().map(|&(s, k)| format!("{}z^{k}", if s < 0 { "-" } else { "" })).collect();
                format!("{t} (matches via {})", units.join(", "))
            }
        };
        report.push(format!("l={}", row.l), value);
    }
    report.push("comparisons", fp.comparisons);
    report.push(
        "verdict",
        match fp.first_match() {
            None => "DISTINCT".to_string(),
            Some((l, _, _)) => format!("MATCH (l={l})"),
        },
    );
    report
}

pub fn verify_cert(path: &Path, reps: &[String]) -> Report {
    let mut report = Report::new("verify-cert").input("file", path.display());
    for r in reps {
        report = report.input("rep", r);
    }
    let cert = match read(path).and_then(|t| OpCertificate::from_json(&t).map_err(|e| e.to_string())) {
        Ok(c) => c,
        Err(msg) => return report.fail_msg(msg),
    };
    for (name, c) in [("start", &cert.start), ("end", &cert.end)] {
        if let Err(e) = c.validate() {
            return report.fail_msg(format!("{name}: {e}"));
        }
    }
    report.push("ops", cert.ops.len());
    let replayed = match replay_ops(&cert.start, &cert.ops) {
        Ok(c) => c,
        Err(e) => return report.fail(&e),
    };
    if replayed != cert.end {
        report.push("replay", "MISMATCH (replayed complex differs from end)");
        report.set_status(Status::Mismatch);
        return report;
    }
    report.push("replay", "OK");
    let reps = if reps.is_empty() {
        twist_reps(cert.start.spec())
    } else {
        reps.iter().map(|r| parse_rep(cert.start.spec(), r)).collect()
    };
    let reps = match reps {
        Ok(r) => r,
        Err(e) => return report.fail(&e),
    };
    let (a, b) = match fingerprint(&cert.start, &reps).and_then(|a| Ok((a, fingerprint(&cert.end, &reps)?))) {
        Ok(x) => x,
        Err(e) => return report.fail(&e),
    };
    push_fingerprint(&mut report, "start", &a);
    push_fingerprint(&mut report, "end", &b);
    if a == b {
        report.push("fingerprints", "EQUAL");
    } else {
        report.push("fingerprints", "DIFFER");
        report.set_status(Status::Mismatch);
    }
    report
}

pub fn gen_cert(p: i64, q: i64, length: usize, seed: u64, out: Option<&Path>) -> Report {
    let mut report = Report::new("gen-cert")
        .input("p", p)
        .input("q", q)
        .input("length", length)
        .input("seed", seed);
    let params = match lens_params(p, q) {
        Ok(x) => x,
        Err(e) => return report.fail(&e),
    };
    if length > 10_000 {
        return report.fail_msg("certificate length above 10000 is not supported");
    }
    let cert = random_op_sequence(&lens_complex(&params), length, seed);
    let text = cert.to_json() + "\n";
    report.push("ops", cert.ops.len());
    report.push("end total rank", cert.end.total_rank());
    match out {
        Some(path) => {
            if let Err(msg) = write(path, &text) {
                return report.fail_msg(msg);
            }
            report.push("written", path.display());
        }
        None => report.raw = Some(text),
    }
    report
}
