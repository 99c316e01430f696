//! Golden checks on the bundled example schemes.

use anyhow::Result;
use schemelink_core::cbp::{cbp_profile, CbpMethod};
use schemelink_core::dedekind::dedekind_different;
use schemelink_core::{cbp_check, linkage_report, LinkageTriple, Scheme, Verdict};
use serde_json::json;

use crate::input::parse_scheme_str;
use crate::output::Report;

pub const EXAMPLE36_W: &str = include_str!("../golden/example36_W.json");
pub const EXAMPLE36_W_COMPONENTS: &str = include_str!("../golden/example36_W_components.json");
pub const EXAMPLE36_X: &str = include_str!("../golden/example36_X.json");
pub const EXAMPLE37_XPRIME: &str = include_str!("../golden/example37_Xprime.json");
pub const P1_QUARTIC: &str = include_str!("../golden/p1_quartic.json");

fn load(text: &str) -> Result<Scheme> {
    parse_scheme_str(text, None, None)
}

fn hf(x: &Scheme) -> Vec<usize> {
    (0..=x.regularity_index() as i64).map(|i| x.hf(i)).collect()
}

fn checks() -> Result<Vec<(&'static str, bool)>> {
    let w = load(EXAMPLE36_W)?;
    let wc = load(EXAMPLE36_W_COMPONENTS)?;
    let x = load(EXAMPLE36_X)?;
    let xp = load(EXAMPLE37_XPRIME)?;
    let quartic = load(P1_QUARTIC)?;
    let mut out = vec![
        ("W: degree 9, HF 1 3 6 8 9", w.degree() == 9 && hf(&w) == [1, 3, 6, 8, 9]),
        ("W: listed components cut out the same ideal", wc.ideal() == w.ideal()),
        ("X: degree 5, r_X = 2", x.degree() == 5 && x.regularity_index() == 2),
    ];
    let t = LinkageTriple::new(w.clone(), x.clone())?;
    let report = linkage_report(&t)?;
    out.push((
        "Y: degree 4, r_Y = 2, alpha_Y = 2, geometric",
        t.y.degree() == 4 && t.y.regularity_index() == 2 && t.alpha_y == Some(2) && t.geometric == Some(true),
    ));
    out.push(("X in W: linkage report passes", report.all_pass()));
    let profile = cbp_profile(&x, Some(&t))?;
    out.push(("X: every method gives CBP(0) and CBP(1)", profile.agreement && profile.max_d == Some(1)));
    let tp = LinkageTriple::new(w, xp.clone())?;
    let ci = xp.analyze()?.complete_intersection;
    out.push(("X': complete intersection of type (2, 2)", ci == Some(vec![2, 2])));
    let ann = cbp_check(&xp, 1, CbpMethod::Annihilator, Some(&tp))?;
    let canon = cbp_check(&xp, 1, CbpMethod::Canonical, Some(&tp))?;
    out.push((
        "X': annihilator inconclusive while CBP(1) holds",
        ann.verdict == Verdict::Inconclusive && canon.verdict == Verdict::True && tp.shared_points == [3],
    ));
    let sep = xp.separators_of(3, &xp.socle_direction(3)?)?;
    out.push(("X': separator at p5 has degree 2", sep.mu == 2));
    let dd = dedekind_different(&xp, 0)?;
    out.push(("X': HF of the different is 0 0 1 3 4", dd.report.hf_delta == [0, 0, 1, 3, 4]));
    let qa = quartic.analyze()?;
    out.push((
        "quartic: degree 4, HF 1 2 3 4, Gorenstein, CBP(2)",
        quartic.degree() == 4
            && hf(&quartic) == [1, 2, 3, 4]
            && qa.arithmetically_gorenstein
            && cbp_check(&quartic, 2, CbpMethod::Canonical, None)?.verdict == Verdict::True,
    ));
    Ok(out)
}

/// The report and whether every check passed.
pub fn run() -> Result<(Report, bool)> {
    let results = checks()?;
    let all = results.iter().all(|&(_, ok)| ok);
    let j = json!({
        "all_pass": all,
        "checks": results.iter().map(|&(name, ok)| json!({"name": name, "pass": ok})).collect::<Vec<_>>(),
    });
    let mut lines: Vec<String> =
        results.iter().map(|&(name, ok)| format!("{} {name}", if ok { "PASS" } else { "FAIL" })).collect();
    lines.push(format!("selftest: {}", if all { "all pass" } else { "FAILED" }));
    Ok((Report::new(j, lines.join("\n")), all))
}
