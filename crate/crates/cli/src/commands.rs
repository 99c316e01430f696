//! One function per verb. Each returns a [`Report`].

use anyhow::{bail, Result};
use schemelink_core::cbp::{cbp_profile, cbp_profile_with, CbpProfile, Evidence};
use schemelink_core::dedekind::{dedekind_checks, dedekind_different, DedekindChecks, DedekindReport};
use schemelink_core::liaison::{Envelope, LinkageReport};
use schemelink_core::scheme::SeparatorSet;
use schemelink_core::{
    cbp_check, ci_envelope, linkage_report, CbpMethod, CbpVerdict, LinkageTriple, Scheme, SchemeMode,
};
use serde_json::{json, Value};

use crate::input::{field_name, SchemeFile};
use crate::output::{hf_line, opt, poly_opt, strings, table, Report};

fn mode_name(x: &Scheme) -> &'static str {
    match x.mode() {
        SchemeMode::Components => "components",
        SchemeMode::Raw => "raw",
    }
}

/// Degree, Hilbert function and generators: the part every verb shares.
fn scheme_json(x: &Scheme) -> Value {
    let support: Vec<Value> = x
        .components()
        .iter()
        .map(|c| json!({"point": c.point().to_string(), "length": c.local.dim(), "gorenstein": c.local.is_gorenstein()}))
        .collect();
    json!({
        "field": field_name(x.ring().field),
        "vars": x.ring().nvars,
        "mode": mode_name(x),
        "empty": x.is_empty(),
        "degree": x.degree(),
        "regularity_index": x.regularity_index(),
        "hf": hf_values(x),
        "generators": strings(x.ideal().basis().polys()),
        "support": support,
    })
}

fn hf_values(x: &Scheme) -> Vec<usize> {
    (0..=x.regularity_index() as i64).map(|i| x.hf(i)).collect()
}

fn scheme_text(name: &str, x: &Scheme) -> String {
    let mut out = Vec::new();
    if x.is_empty() {
        out.push(format!("{name}: empty scheme"));
        out.push("deg: 0".into());
        return out.join("\n");
    }
    out.push(format!("{name}: {} mode over {}", mode_name(x), field_name(x.ring().field)));
    out.push(format!("deg: {}", x.degree()));
    out.push(format!("r: {}", x.regularity_index()));
    out.push(format!("hf: {}", hf_line(&hf_values(x))));
    out.push("generators:".into());
    out.extend(x.ideal().basis().polys().iter().map(|g| format!("  {g}")));
    if x.mode() == SchemeMode::Components {
        out.push("support:".into());
        for c in x.components() {
            out.push(format!("  {} length {}", c.point(), c.local.dim()));
        }
    }
    out.join("\n")
}

pub fn analyze(x: &Scheme) -> Result<Report> {
    let a = x.analyze()?;
    let mut j = scheme_json(x);
    j["alpha"] = json!(a.alpha);
    j["arithmetically_gorenstein"] = json!(a.arithmetically_gorenstein);
    j["locally_gorenstein"] = json!(a.locally_gorenstein);
    j["complete_intersection"] = json!(a.complete_intersection);
    j["minimal_generator_degrees"] = json!(a.minimal_generator_degrees);
    let mut text = scheme_text("X", x);
    if !x.is_empty() {
        text.push_str(&format!(
            "\nalpha: {}\narithmetically gorenstein: {}\nlocally gorenstein: {}\ncomplete intersection: {}\nminimal generator degrees: {:?}",
            opt(a.alpha),
            a.arithmetically_gorenstein,
            opt(a.locally_gorenstein),
            a.complete_intersection.as_ref().map_or("no".to_string(), |d| format!("{d:?}")),
            a.minimal_generator_degrees,
        ));
    }
    Ok(Report::new(j, text))
}

fn report_json(r: &LinkageReport) -> Value {
    let rows: Vec<Value> = r.hf_identity.iter().map(|h| json!({"i": h.i, "lhs": h.lhs, "rhs": h.rhs})).collect();
    let colon: Vec<Value> = r.artinian_colon.iter().map(|&(d, ok)| json!({"d": d, "holds": ok})).collect();
    json!({
        "all_pass": r.all_pass(),
        "deg_w": r.deg_w, "deg_x": r.deg_x, "deg_y": r.deg_y,
        "degree_additivity": r.degree_additivity,
        "r_w": r.r_w, "r_x": r.r_x, "r_y": r.r_y,
        "alpha_y": r.alpha_y, "alpha_x": r.alpha_x,
        "r_split_x": r.r_split_x, "r_split_y": r.r_split_y,
        "hf_identity": rows,
        "artinian_colon": colon,
        "double_residual": r.double_residual,
        "geometric": r.geometric,
        "shared_points": r.shared_points,
    })
}

fn report_text(r: &LinkageReport) -> String {
    let ok = |b: bool| if b { "ok" } else { "FAIL" };
    let mut out = vec![
        format!("linkage report: {}", if r.all_pass() { "all pass" } else { "FAILED" }),
        format!("  deg W = deg X + deg Y: {} = {} + {}  {}", r.deg_w, r.deg_x, r.deg_y, ok(r.degree_additivity)),
        format!("  r_W = r_X + alpha_Y: {} = {} + {}  {}", r.r_w, r.r_x, opt(r.alpha_y), ok(r.r_split_x)),
        format!(
            "  r_W = r_Y + alpha_X: {} = {} + {}  {}",
            r.r_w,
            r.r_y,
            opt(r.alpha_x),
            r.r_split_y.map_or("n/a", ok)
        ),
    ];
    let hf_ok = r.hf_identity.iter().all(|h| h.lhs == h.rhs);
    out.push(format!("  HF identity at 0..={}: {}", r.r_w, ok(hf_ok)));
    let colon_ok = r.artinian_colon.iter().all(|&(_, b)| b);
    out.push(format!("  artinian colon at 1..={}: {}", r.r_x, ok(colon_ok)));
    out.push(format!("  double residual: {}", ok(r.double_residual)));
    out.push(format!(
        "  geometric linkage: {}{}",
        opt(r.geometric),
        if r.shared_points.is_empty() { String::new() } else { format!(" (shared points {:?})", r.shared_points) }
    ));
    out.join("\n")
}

pub fn residual(w: Scheme, x: Scheme) -> Result<Report> {
    let t = LinkageTriple::new(w, x)?;
    let r = linkage_report(&t)?;
    let j = json!({"residual": scheme_json(&t.y), "alpha_y": t.alpha_y, "report": report_json(&r)});
    let text = format!("{}\nalpha_Y: {}\n{}", scheme_text("Y", &t.y), opt(t.alpha_y), report_text(&r));
    Ok(Report::new(j, text))
}

pub fn link_report(w: Scheme, x: Scheme) -> Result<Report> {
    let t = LinkageTriple::new(w, x)?;
    let r = linkage_report(&t)?;
    Ok(Report::new(report_json(&r), report_text(&r)))
}

fn evidence_json(e: &Evidence) -> Value {
    match e {
        Evidence::Colon { hf_colon, hf_x } => json!({"hf_colon": hf_colon, "hf_x": hf_x}),
        Evidence::Piece { colon_dim, ideal_dim } => json!({"colon_dim": colon_dim, "ideal_dim": ideal_dim}),
        Evidence::Separators { point_degrees, failing } => json!({"point_degrees": point_degrees, "failing": failing}),
        Evidence::Canonical { kernel_dim, witness } => json!({"kernel_dim": kernel_dim, "witness": poly_opt(witness)}),
        Evidence::Annihilator { kernel_dim, witness, geometric, shared_points } => json!({
            "kernel_dim": kernel_dim, "witness": poly_opt(witness),
            "geometric": geometric, "shared_points": shared_points,
        }),
    }
}

fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::Colon { hf_colon, hf_x } => format!("HF of colon {hf_colon}, HF_X {hf_x}"),
        Evidence::Piece { colon_dim, ideal_dim } => format!("colon piece dim {colon_dim}, ideal piece dim {ideal_dim}"),
        Evidence::Separators { point_degrees, failing } => {
            format!("point degrees {point_degrees:?}, failing {failing:?}")
        }
        Evidence::Canonical { kernel_dim, witness } | Evidence::Annihilator { kernel_dim, witness, .. } => {
            let mut s = format!("kernel dim {kernel_dim}");
            if let Some(w) = witness {
                s.push_str(&format!(", witness {w}"));
            }
            if let Evidence::Annihilator { geometric, shared_points, .. } = e {
                s.push_str(&format!(", geometric {}", opt(*geometric)));
                if !shared_points.is_empty() {
                    s.push_str(&format!(", shared points {shared_points:?}"));
                }
            }
            s
        }
    }
}

fn verdict_json(v: &CbpVerdict) -> Value {
    json!({"d": v.d, "method": v.method.name(), "verdict": v.verdict.name(), "evidence": evidence_json(&v.evidence)})
}

fn profile_report(p: &CbpProfile, methods: &[CbpMethod]) -> Report {
    let rows: Vec<Value> = p
        .rows
        .iter()
        .map(|r| {
            json!({
                "d": r.d, "agree": r.agree, "consensus": r.consensus,
                "verdicts": r.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let j = json!({
        "methods": methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "rows": rows, "max_d": p.max_d, "monotone": p.monotone, "agreement": p.agreement,
    });
    let mut header = vec!["d"];
    header.extend(methods.iter().map(|m| m.name()));
    header.push("consensus");
    let cells: Vec<Vec<String>> = p
        .rows
        .iter()
        .map(|r| {
            let mut c = vec![r.d.to_string()];
            c.extend(r.verdicts.iter().map(|v| v.verdict.name().to_string()));
            c.push(if r.agree { opt(r.consensus) } else { "DISAGREE".into() });
            c
        })
        .collect();
    let text = if p.rows.is_empty() {
        "r_X = 0: no degrees to test, the scheme is Cayley-Bacharach".to_string()
    } else {
        format!(
            "{}\nlargest d with CBP(d): {}\nagreement: {}",
            table(&header, &cells),
            opt(p.max_d),
            if p.agreement { "all methods agree" } else { "DISAGREEMENT" }
        )
    };
    Report::new(j, text)
}

pub fn cbp(x: Scheme, w: Option<Scheme>, d: Option<u32>, method: Option<CbpMethod>) -> Result<Report> {
    let triple = match w {
        Some(w) => Some(LinkageTriple::new(w, x.clone())?),
        None => None,
    };
    let ctx = triple.as_ref();
    let methods: Vec<CbpMethod> = match method {
        Some(m) => vec![m],
        None => CbpMethod::ALL.into_iter().filter(|&m| schemelink_core::cbp::applicable(&x, m, ctx)).collect(),
    };
    let Some(d) = d else {
        let p = if method.is_some() { cbp_profile_with(&x, ctx, &methods)? } else { cbp_profile(&x, ctx)? };
        return Ok(profile_report(&p, &methods));
    };
    let verdicts: Vec<CbpVerdict> = methods.iter().map(|&m| cbp_check(&x, d, m, ctx)).collect::<Result<_, _>>()?;
    let conclusive: Vec<bool> = verdicts.iter().filter_map(|v| v.verdict.as_bool()).collect();
    let agree = conclusive.windows(2).all(|p| p[0] == p[1]);
    let verdict = if agree { conclusive.first().copied() } else { None };
    let j = json!({
        "d": d, "verdict": verdict, "agree": agree,
        "verdicts": verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = verdicts
        .iter()
        .map(|v| vec![v.method.name().to_string(), v.verdict.name().to_string(), evidence_text(&v.evidence)])
        .collect();
    let text = format!(
        "CBP({d}): {}\n{}",
        if agree { opt(verdict) } else { "methods DISAGREE".into() },
        table(&["method", "verdict", "evidence"], &rows)
    );
    Ok(Report::new(j, text))
}

fn separator_set(x: &Scheme, j: usize) -> Result<SeparatorSet> {
    Ok(x.separators_of(j, &x.socle_direction(j)?)?)
}

pub fn separators(x: &Scheme, point: Option<usize>) -> Result<Report> {
    let n = x.support()?.len();
    let indices: Vec<usize> = match point {
        Some(j) if j >= n => bail!("point index {j} out of range (scheme has {n} points)"),
        Some(j) => vec![j],
        None => (0..n).collect(),
    };
    let sets: Vec<SeparatorSet> = indices.iter().map(|&j| separator_set(x, j)).collect::<Result<_>>()?;
    let j = Value::Array(
        sets.iter()
            .map(|s| {
                json!({
                    "point_index": s.point_index,
                    "point": x.components()[s.point_index].point().to_string(),
                    "direction": strings(&s.direction),
                    "mu": s.mu,
                    "minimal_separator": s.minimal_separator.to_string(),
                    "standard_separator": s.standard_separator.to_string(),
                })
            })
            .collect(),
    );
    let rows: Vec<Vec<String>> = sets
        .iter()
        .map(|s| {
            vec![
                s.point_index.to_string(),
                x.components()[s.point_index].point().to_string(),
                s.mu.to_string(),
                s.minimal_separator.to_string(),
            ]
        })
        .collect();
    Ok(Report::new(j, table(&["j", "point", "mu", "minimal separator"], &rows)))
}

pub fn point_degrees(x: &Scheme) -> Result<Report> {
    let degs = x.point_degrees()?;
    let pts = x.support()?;
    let j = json!({
        "points": strings(&pts),
        "degrees": degs,
        "regularity_index": x.regularity_index(),
    });
    let rows: Vec<Vec<String>> =
        pts.iter().zip(&degs).enumerate().map(|(j, (p, d))| vec![j.to_string(), p.to_string(), d.to_string()]).collect();
    let text = format!("{}\nr_X: {}", table(&["j", "point", "degree"], &rows), x.regularity_index());
    Ok(Report::new(j, text))
}

fn dedekind_json(r: &DedekindReport, c: &DedekindChecks) -> Value {
    let hf_c: Vec<Value> = r.hf_c.iter().map(|&(t, h)| json!({"t": t, "hf": h})).collect();
    json!({
        "seed": r.seed,
        "degree": r.degree,
        "regularity_index": r.regularity_index,
        "hf_delta": r.hf_delta,
        "alpha_delta": r.alpha_delta,
        "ri_delta": r.ri_delta,
        "hf_c": hf_c,
        "hf_c_formula": r.hf_c_formula,
        "x0_power_in_delta": r.x0_power_in_delta,
        "is_ideal": r.is_ideal,
        "hf_bounds": r.hf_bounds,
        "generated_in_nonpositive_degrees": r.generated_in_nonpositive_degrees,
        "checks": {
            "cbp_max_d": c.d,
            "infinite_field": c.infinite_field,
            "alpha_bound": c.alpha_bound,
            "hf_bound": c.hf_bound,
            "i0": c.i0,
            "persistence": c.persistence,
            "ri_formula": c.ri_formula,
            "ri_maximal": c.ri_maximal,
            "shifted_equality": c.shifted_equality,
            "gorenstein_criterion": c.gorenstein_criterion,
            "all_pass": c.all_pass(),
        },
    })
}

pub fn dedekind(x: &Scheme, seed: u64) -> Result<Report> {
    let dd = dedekind_different(x, seed)?;
    let max_d = cbp_profile_with(x, None, &[CbpMethod::Canonical])?.max_d;
    let ag = x.analyze()?.arithmetically_gorenstein;
    let checks = dedekind_checks(x, &dd.report, max_d, ag);
    let r = &dd.report;
    let hf_c: Vec<String> = r.hf_c.iter().map(|(t, h)| format!("{t}:{h}")).collect();
    let text = [
        format!("seed: {}", r.seed),
        format!("hf_delta: {}", hf_line(&r.hf_delta)),
        format!("alpha_delta: {}", opt(r.alpha_delta)),
        format!("ri_delta: {}", r.ri_delta),
        format!("hf_C: {}", hf_c.join(" ")),
        format!("largest d with CBP(d): {}", opt(max_d)),
        format!("shifted equality: {}", checks.shifted_equality),
        format!(
            "bounds: alpha {} hf {} persistence {} ri formula {} ri maximal {} gorenstein criterion {}",
            opt(checks.alpha_bound),
            opt(checks.hf_bound),
            opt(checks.persistence),
            opt(checks.ri_formula),
            opt(checks.ri_maximal),
            opt(checks.gorenstein_criterion)
        ),
        format!("checks: {}", if checks.all_pass() { "all pass" } else { "FAILED" }),
    ]
    .join("\n");
    Ok(Report::new(dedekind_json(r, &checks), text))
}

/// The report plus the envelope as a raw-mode scheme file.
pub fn envelope(x: &Scheme, seed: u64, degrees: Option<&[u32]>, allow_shared: bool) -> Result<(Report, SchemeFile)> {
    let env: Envelope = ci_envelope(x, seed, degrees, !allow_shared)?;
    let file = SchemeFile::raw(x.ring(), &env.forms);
    let j = json!({
        "seed": env.seed,
        "attempts": env.attempts,
        "degrees": env.degrees,
        "forms": strings(&env.forms),
        "envelope": scheme_json(&env.w),
    });
    let mut text = vec![
        format!("complete intersection of type {:?} (seed {}, attempt {})", env.degrees, env.seed, env.attempts),
        "forms:".into(),
    ];
    text.extend(env.forms.iter().map(|f| format!("  {f}")));
    text.push(format!("deg W: {}", env.w.degree()));
    text.push(format!("hf: {}", hf_line(&hf_values(&env.w))));
    Ok((Report::new(j, text.join("\n")), file))
}
