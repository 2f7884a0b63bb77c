use std::path::Path;

use serde_json::json;

use scottmax::diagonal::{diagonalize, verify_certificate, DiagCertificate, DiagOptions, FailureReason};
use scottmax::domain::{approximant, compact_by_chain, has_upper_bound, LElem};
use scottmax::opens::{intersection_member_prefix_check, Family, IndexedFamily};
use scottmax::poset::{
    sup_in_oracle, verify_partial_order, FinitePoset, LOracle, PosetError, Relation, SupOutcome, TwinChains, TwinElem,
    TwinOrder, TwinSubset,
};
use scottmax::seq::ExtNat;
use scottmax::suites::{self, Scope, SuiteConfig};

use crate::{Report, Status, UsageError};

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

pub fn order(u: &LElem, v: &LElem) -> Report {
    let (uv, vu, ub) = (u.leq(v), v.leq(u), has_upper_bound(u, v));
    Report::new(
        "order",
        Status::of(uv),
        format!("{u} <= {v} is {uv}"),
        json!({ "u": u, "v": v, "leq": uv, "geq": vu, "has_upper_bound": ub }),
    )
    .line(format!("{v} <= {u} is {vu}"))
    .line(format!(
        "upper bound of {{{u}, {v}}}: {}",
        if ub { "exists" } else { "none" }
    ))
}

pub fn poset_verify(file: &Path, strict: bool) -> Result<Report, UsageError> {
    let mut r: Relation =
        serde_json::from_str(&read(file)?).map_err(|e| UsageError(format!("invalid poset JSON: {e}")))?;
    let violations = if strict {
        for e in r.elements.clone() {
            r.leq.push([e.clone(), e]);
        }
        verify_partial_order(&r)?
    } else {
        match FinitePoset::from_generators(&r) {
            Ok(_) => Vec::new(),
            Err(PosetError::NotAPartialOrder(v)) => v,
            Err(e) => return Err(e.into()),
        }
    };
    let n = r.elements.len();
    let summary = if violations.is_empty() {
        format!("partial order on {n} elements")
    } else {
        format!("not a partial order: {} violations", violations.len())
    };
    let mut report = Report::new(
        "poset-verify",
        Status::of(violations.is_empty()),
        summary,
        json!({ "elements": n, "closure": !strict, "violations": violations }),
    );
    for v in &violations {
        report = report.line(format!("  {v}"));
    }
    Ok(report)
}

fn load_poset(file: &Path) -> Result<FinitePoset, UsageError> {
    FinitePoset::from_json(&read(file)?).map_err(|e| UsageError(format!("invalid poset: {e}")))
}

pub fn poset_gdelta(file: &Path, labels: Option<&[String]>) -> Result<Report, UsageError> {
    let p = load_poset(file)?;
    let set = match labels {
        Some(l) => p.set_of(l)?,
        None => p.maximals(),
    };
    let names = p.labels_of(&set);
    let open = p.is_scott_open(&set);
    let gdelta = p.is_gdelta(&set);
    let meet = p.scott_opens().map(|opens| {
        let m = opens
            .into_iter()
            .filter(|o| set.is_subset(o))
            .fold(p.all(), |acc, o| &acc & &o);
        p.labels_of(&m).into_iter().map(String::from).collect::<Vec<_>>()
    });
    let method = if meet.is_some() { "brute force" } else { "closed form" };
    let verdict = if gdelta { "is" } else { "is not" };
    let mut report = Report::new(
        "poset-gdelta",
        Status::of(gdelta),
        format!("{{{}}} {verdict} a G-delta set", names.join(", ")),
        json!({ "set": names, "scott_open": open, "gdelta": gdelta, "open_supersets_meet": meet, "method": method }),
    )
    .line(format!("Scott open: {open} ({method})"));
    if let Some(m) = &meet {
        report = report.line(format!("intersection of open supersets: {{{}}}", m.join(", ")));
    }
    Ok(report)
}

fn sup_report<E: std::fmt::Display + serde::Serialize>(outcome: &SupOutcome<E>, set: String) -> Report {
    let detail = match outcome {
        SupOutcome::Sup(e) => json!({ "set": set, "sup": e }),
        SupOutcome::Unbounded => json!({ "set": set, "sup": null, "reason": "unbounded" }),
        SupOutcome::NoLeast(a, b) => {
            json!({ "set": set, "sup": null, "reason": "no_least_upper_bound", "incomparable_upper_bounds": [a, b] })
        }
    };
    let ok = matches!(outcome, SupOutcome::Sup(_));
    Report::new("sup", Status::of(ok), format!("{set}: {outcome}"), detail)
}

pub fn sup_finite(file: &Path, labels: &[String]) -> Result<Report, UsageError> {
    let p = load_poset(file)?;
    let set = p.set_of(labels)?;
    let outcome = match p.sup(&set) {
        Some(s) => SupOutcome::Sup(p.label(s).to_string()),
        None => {
            let ub = p.upper_bounds(&set);
            let minimal: Vec<usize> = ub
                .iter()
                .copied()
                .filter(|&u| ub.iter().all(|&v| v == u || !p.leq(v, u)))
                .collect();
            match minimal.as_slice() {
                [a, b, ..] => SupOutcome::NoLeast(p.label(*a).to_string(), p.label(*b).to_string()),
                _ => SupOutcome::Unbounded,
            }
        }
    };
    Ok(sup_report(&outcome, format!("{{{}}}", labels.join(", "))))
}

pub fn sup_twin(order: TwinOrder, elems: &[String]) -> Result<Report, UsageError> {
    let subset = match elems {
        [c] if c == "x-chain" => TwinSubset::XChain,
        [c] if c == "y-chain" => TwinSubset::YChain,
        _ => TwinSubset::Finite(
            elems
                .iter()
                .map(|e| e.parse::<TwinElem>().map_err(|err| UsageError(format!("{e:?}: {err}"))))
                .collect::<Result<_, _>>()?,
        ),
    };
    let name = match &subset {
        TwinSubset::XChain => "{x_n : n in N}".to_string(),
        TwinSubset::YChain => "{y_n : n in N}".to_string(),
        TwinSubset::Finite(v) => format!("{{{}}}", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")),
    };
    let order_name = match order {
        TwinOrder::Split => "split",
        TwinOrder::Joined => "joined",
    };
    let outcome = TwinChains::new(order).sup(&subset);
    let outcome = match outcome {
        SupOutcome::Sup(e) => SupOutcome::Sup(e.to_string()),
        SupOutcome::Unbounded => SupOutcome::Unbounded,
        SupOutcome::NoLeast(a, b) => SupOutcome::NoLeast(a.to_string(), b.to_string()),
    };
    let mut report = sup_report(&outcome, name);
    report.detail["order"] = json!(order_name);
    Ok(report.line(format!("order: {order_name}")))
}

pub fn sup_l(elems: &[String], depth: u64) -> Result<Report, UsageError> {
    let parsed: Vec<LElem> = elems
        .iter()
        .map(|e| e.parse::<LElem>().map_err(|err| UsageError(format!("{e:?}: {err}"))))
        .collect::<Result<_, _>>()?;
    let set = format!("{{{}}}", elems.join(", "));
    Ok(match sup_in_oracle(&LOracle { depth }, &parsed) {
        Ok(outcome) => {
            let outcome = match outcome {
                SupOutcome::Sup(e) => SupOutcome::Sup(e.to_string()),
                SupOutcome::Unbounded => SupOutcome::Unbounded,
                SupOutcome::NoLeast(a, b) => SupOutcome::NoLeast(a.to_string(), b.to_string()),
            };
            sup_report(&outcome, set)
        }
        Err(PosetError::Indeterminate { depth }) => Report::new(
            "sup",
            Status::Indeterminate,
            format!("{set}: answer changes beyond truncation depth {depth}"),
            json!({ "set": set, "sup": null, "reason": "indeterminate", "depth": depth }),
        ),
        Err(e) => return Err(e.into()),
    })
}

pub fn l_check(elems: &[LElem]) -> Report {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut agree_all = true;
    for u in elems {
        let horizon = match u {
            LElem::X(ix) => ix.n.finite().unwrap_or(0) + 4,
            LElem::Sigma(a) | LElem::Star(a) => match a.len() {
                ExtNat::Fin(l) => l + 4,
                ExtNat::Omega => 8,
            },
        };
        let by_chain = compact_by_chain(u, horizon);
        let agree = by_chain == u.is_compact();
        agree_all &= agree;
        let chain: Vec<String> = (1..=4).map(|j| approximant(u, j).to_string()).collect();
        let part = format!("{:?}", u.part()).to_lowercase();
        lines.push(format!(
            "{u}: part {part}, {}maximal, {}compact, approximants {} ...",
            if u.is_maximal() { "" } else { "not " },
            if u.is_compact() { "" } else { "not " },
            chain.join(" ")
        ));
        rows.push(json!({
            "elem": u,
            "part": part,
            "maximal": u.is_maximal(),
            "compact": u.is_compact(),
            "compact_by_chain": by_chain,
            "approximants": chain,
        }));
    }
    let summary = if agree_all {
        format!(
            "{} element(s) checked; compactness agrees with the chain oracle",
            elems.len()
        )
    } else {
        "compactness disagrees with the chain oracle".to_string()
    };
    let mut report = Report::new("l-check", Status::of(agree_all), summary, json!({ "elements": rows }));
    report.lines = lines;
    report
}

fn load_family(arg: &str) -> Result<Family, UsageError> {
    if arg == "canonical" {
        return Ok(Family::Canonical);
    }
    Family::from_json(&read(Path::new(arg))?).map_err(|e| UsageError(format!("invalid family: {e}")))
}

pub fn diag(
    family_arg: &str,
    depth: u64,
    budget: u64,
    cover_check: bool,
    out: Option<&Path>,
) -> Result<Report, UsageError> {
    let family = load_family(family_arg)?;
    let options = DiagOptions { budget, cover_check };
    let cert = match diagonalize(&family, depth, options) {
        Ok(cert) => cert,
        Err(failure) => {
            let status = match failure.reason {
                FailureReason::Budget { .. } | FailureReason::NotCovering { .. } => Status::Indeterminate,
                FailureReason::Closure { .. } => Status::Fail,
            };
            return Ok(Report::new(
                "diag",
                status,
                format!("family {} not refuted: {failure}", family.reference()),
                json!({ "family": family.reference(), "depth": depth, "budget": budget, "failure": failure }),
            ));
        }
    };
    let witness = cert.witness();
    let verified = verify_certificate(&cert, &family);
    let in_all = intersection_member_prefix_check(&family, &witness, depth);
    let ok = verified.is_ok() && in_all && !witness.is_maximal();
    let cert_json = cert.to_json();
    if let Some(path) = out {
        std::fs::write(path, format!("{cert_json}\n"))
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    let meet = if depth == 1 {
        "U_1".to_string()
    } else {
        format!("U_1 ∩ … ∩ U_{depth}")
    };
    let summary = if ok {
        format!(
            "family {} refuted at depth {depth}: witness {witness} in {meet} but not maximal",
            cert.family
        )
    } else {
        format!("certificate for family {} failed verification", cert.family)
    };
    let mut report = Report::new(
        "diag",
        Status::of(ok),
        summary,
        json!({
            "certificate": cert,
            "witness": witness,
            "verified": ok,
            "verification_error": verified.as_ref().err().map(|e| e.to_string()),
            "out": out.map(|p| p.display().to_string()),
        }),
    );
    if let Err(e) = &verified {
        report = report.line(format!("verification error: {e}"));
    }
    report = report.line(format!("prefix: {:?}", cert.prefix));
    match out {
        Some(p) => report = report.line(format!("certificate written to {}", p.display())),
        None => report = report.line(cert_json),
    }
    Ok(report)
}

pub fn cert_verify(cert_path: &Path, family_arg: &str) -> Result<Report, UsageError> {
    let cert = DiagCertificate::from_json(&read(cert_path)?)?;
    let family = load_family(family_arg)?;
    Ok(match verify_certificate(&cert, &family) {
        Ok(()) => Report::new(
            "cert-verify",
            Status::Pass,
            format!(
                "certificate verified: family {} refuted at depth {} by {}",
                cert.family,
                cert.depth,
                cert.witness()
            ),
            json!({ "family": cert.family, "depth": cert.depth, "valid": true }),
        ),
        Err(e) => Report::new(
            "cert-verify",
            Status::Fail,
            format!("certificate rejected: {e}"),
            json!({ "family": cert.family, "depth": cert.depth, "valid": false, "error": e.to_string() }),
        ),
    })
}

pub fn suites(scope: Scope, config: &SuiteConfig) -> Report {
    let report = suites::run(scope, config);
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    let summary = if failed == 0 {
        format!("all {} checks passed", report.checks.len())
    } else {
        format!("{failed} of {} checks failed", report.checks.len())
    };
    let mut out = Report::new(
        "suites",
        Status::of(failed == 0),
        summary,
        serde_json::to_value(&report).expect("suite reports serialize"),
    );
    out.lines = report.to_string().lines().map(String::from).collect();
    out
}
