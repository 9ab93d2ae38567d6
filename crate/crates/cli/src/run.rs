use std::fmt::Write as _;

use cigon_core::dimcheck::{check_first_surface, check_second_surface, DimCountReport};
use cigon_core::exactnum::{rational_to_string, serde_exact};
use cigon_core::genus::{
    castelnuovo_spike_bound, castelnuovo_upper_bound, delta_lower_bound, genus_lower_bound,
    min_power_sum, plane_gap_bound,
};
use cigon_core::gonality::{
    cg_bound_codim2, cg_bound_surface_general, cg_bound_surface_special, constant_a, constant_b,
};
use cigon_core::hilbert::{h0_ci_koszul, h0_ci_nested, h0_series_oracle};
use cigon_core::neffeas::{
    codim2_decide_analytic_with_horizon, codim2_decide_bruteforce, surface_decide,
    surface_decide_bruteforce, verify_induction, InductionOptions, KInterval,
};
use cigon_core::primesel::{
    min_curve_degree, prime_pi, ramanujan_prime_with_horizon, select_prime_degrees,
    DEFAULT_RAMANUJAN_HORIZON,
};
use cigon_core::{
    BoundCertificate, Codim2System, CompleteIntersectionSpec, Error, FeasibilityVerdict,
    InductionReport, Integer, Outcome, PrimeDegreeSelection, Rational, Result, SurfaceSystem,
};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::args::{
    BoundCmd, Cli, Command, CurveArgs, DecideCmd, DimcheckCmd, GenusCmd, HilbertArgs, PrimesCmd,
    VerifyCmd,
};

/// A finished report in both renderings, plus the exit code it implies.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Report {
    fn new(value: &impl Serialize, text: String) -> Self {
        Report {
            json: serde_json::to_value(value).expect("reports serialize"),
            text,
            code: 0,
        }
    }
}

#[derive(Serialize)]
struct Exact<'a>(#[serde(with = "serde_exact::integer")] &'a Integer);

fn exact_rat(q: &Rational) -> Value {
    Value::String(rational_to_string(q))
}

fn exact_int(z: &Integer) -> Value {
    serde_json::to_value(Exact(z)).expect("integers serialize")
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Bound(cmd) => bound(cmd),
        Command::Hilbert(args) => hilbert(args),
        Command::Primes(cmd) => primes(cli, cmd),
        Command::Genus(cmd) => genus(cli, cmd),
        Command::Decide(cmd) => decide(cli, cmd),
        Command::Verify(cmd) => verify(cli, cmd),
        Command::Dimcheck(cmd) => dimcheck(cmd),
        Command::Constants { e } => constants(*e),
    }
}

fn bound(cmd: &BoundCmd) -> Result<Report> {
    let cert = match cmd {
        BoundCmd::Codim2 { n, a, b } => cg_bound_codim2(*n, *a, *b)?,
        BoundCmd::Surface { e, degrees } => cg_bound_surface_general(*e, degrees)?,
        BoundCmd::SurfaceSpecial { e, adjusted } => cg_bound_surface_special(*e, adjusted)?,
    };
    Ok(Report::new(&cert, certificate_text(&cert)))
}

fn certificate_text(cert: &BoundCertificate) -> String {
    let mut out = String::new();
    writeln!(out, "bound      {}", rational_to_string(&cert.bound)).unwrap();
    writeln!(out, "guarantee  cg(X) >= {}", cert.guarantee).unwrap();
    for h in &cert.hypotheses {
        let mark = if h.satisfied { "ok" } else { "FAILED" };
        writeln!(out, "  [{mark}] {}: {}", h.name, h.detail).unwrap();
    }
    for c in &cert.constants_used {
        writeln!(out, "  {} = {}", c.name, rational_to_string(&c.value)).unwrap();
    }
    if let Some(sel) = &cert.selection {
        out.push_str(&selection_text(sel));
    }
    for r in &cert.remarks {
        writeln!(out, "note: {r}").unwrap();
    }
    out
}

fn selection_text(sel: &PrimeDegreeSelection) -> String {
    let mut out = String::new();
    writeln!(out, "primes     {:?}", sel.primes).unwrap();
    writeln!(out, "adjusted   {:?}", sel.adjusted).unwrap();
    if sel.used_fallback {
        writeln!(out, "note: greedy choice needed backtracking").unwrap();
    }
    out
}

fn hilbert(args: &HilbertArgs) -> Result<Report> {
    if args.codim as usize != args.degrees.len() {
        return Err(Error::Argument(format!(
            "--codim {} does not match {} degrees",
            args.codim,
            args.degrees.len()
        )));
    }
    let spec = CompleteIntersectionSpec::new(args.n, args.degrees.clone())?;
    let nested = h0_ci_nested(&spec, args.twist);
    let koszul = h0_ci_koszul(&spec, args.twist);
    let mut json = serde_json::json!({
        "n": args.n,
        "degrees": args.degrees,
        "twist": args.twist,
        "nested": exact_int(&nested),
        "koszul": exact_int(&koszul),
    });
    let mut text = format!("h0 = {nested}\n  nested {nested}\n  koszul {koszul}\n");
    let mut agree = nested == koszul;
    if args.oracle {
        let series = h0_series_oracle(&spec, args.twist)?;
        agree &= series == nested;
        json["series"] = exact_int(&series);
        writeln!(text, "  series {series}").unwrap();
    }
    json["agree"] = Value::Bool(agree);
    let mut report = Report { json, text, code: 0 };
    if !agree {
        report.text.push_str("routes disagree\n");
        report.code = 1;
    }
    Ok(report)
}

fn primes(cli: &Cli, cmd: &PrimesCmd) -> Result<Report> {
    Ok(match cmd {
        PrimesCmd::Ramanujan { n } => {
            let horizon = cli.horizon.unwrap_or(DEFAULT_RAMANUJAN_HORIZON);
            let r = ramanujan_prime_with_horizon(*n, horizon)?;
            let json = serde_json::json!({ "n": n, "ramanujan_prime": r });
            Report { json, text: format!("{r}\n"), code: 0 }
        }
        PrimesCmd::Select { e, degrees } => {
            let sel = select_prime_degrees(*e, degrees)?;
            let text = selection_text(&sel);
            Report::new(&sel, text)
        }
        PrimesCmd::Pi { x } => {
            let pi = prime_pi(*x);
            let json = serde_json::json!({ "x": x, "pi": pi });
            Report { json, text: format!("{pi}\n"), code: 0 }
        }
        PrimesCmd::MinDegree { n, f, primes } => {
            let d = min_curve_degree(*n, *f, primes)?;
            let json = serde_json::json!({ "n": n, "f": f, "primes": primes, "min_degree": exact_int(&d) });
            Report { json, text: format!("{d}\n"), code: 0 }
        }
    })
}

fn curve_spec(args: &CurveArgs) -> Result<CompleteIntersectionSpec> {
    CompleteIntersectionSpec::new(args.n, args.degrees.clone())
}

fn genus(cli: &Cli, cmd: &GenusCmd) -> Result<Report> {
    Ok(match cmd {
        GenusCmd::Lower(args) => {
            let g = genus_lower_bound(&curve_spec(args)?, args.k)?;
            let json = serde_json::json!({ "k": args.k, "genus_lower_bound": exact_rat(&g) });
            Report { json, text: format!("{}\n", rational_to_string(&g)), code: 0 }
        }
        GenusCmd::Gap(args) => {
            let g = genus_lower_bound(&curve_spec(args)?, args.k)?;
            let gap = plane_gap_bound(args.k, &g)?;
            let json = serde_json::json!({
                "k": args.k,
                "genus_lower_bound": exact_rat(&g),
                "gap": exact_rat(&gap),
            });
            let text = format!(
                "{}\n  genus lower bound {}\n",
                rational_to_string(&gap),
                rational_to_string(&g)
            );
            Report { json, text, code: 0 }
        }
        GenusCmd::Delta { n, m } => {
            let d = delta_lower_bound(*n, *m, cli.precision)?;
            let json = serde_json::json!({ "n": n, "m": m, "delta_lower_bound": exact_int(&d) });
            Report { json, text: format!("{d}\n"), code: 0 }
        }
        GenusCmd::Castelnuovo { degrees_y, a_e, k } => {
            let upper = castelnuovo_upper_bound(degrees_y, *a_e, *k)?;
            let spike = castelnuovo_spike_bound(degrees_y, *a_e, *k)?;
            let json = serde_json::json!({
                "k": k,
                "upper_bound": exact_rat(&upper),
                "spike_bound": exact_rat(&spike),
            });
            let text = format!(
                "{}\n  spike estimate {}\n",
                rational_to_string(&upper),
                rational_to_string(&spike)
            );
            Report { json, text, code: 0 }
        }
        GenusCmd::MinPowerSum { total, parts, exponent } => {
            let num = exponent.numer().to_i64();
            let den = exponent.denom().to_u32();
            let (Some(num), Some(den)) = (num, den) else {
                return Err(Error::Argument(format!("exponent {exponent} out of range")));
            };
            let enc = min_power_sum(*total, *parts, num, den, cli.precision)?;
            let json = serde_json::json!({
                "total": total,
                "parts": parts,
                "exponent": exact_rat(exponent),
                "enclosure": serde_json::to_value(&enc).expect("enclosures serialize"),
            });
            Report { json, text: format!("{enc}\n"), code: 0 }
        }
    })
}

fn interval_text(interval: &KInterval) -> String {
    let upper = match &interval.upper {
        Some(u) => u.value.to_string(),
        None => "unbounded".into(),
    };
    let mut out = format!(
        "  k in [{}, {upper}]\n    lower: {}\n",
        interval.lower.value, interval.lower.source
    );
    if let Some(u) = &interval.upper {
        out.push_str(&format!("    upper: {}\n", u.source));
    }
    out
}

fn outcome_name(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Infeasible => "infeasible",
        Outcome::InfeasibleWithinHorizon => "infeasible within horizon",
        Outcome::Witness => "witness",
        Outcome::Undecided => "undecided",
    }
}

fn verdict_text(v: &FeasibilityVerdict) -> String {
    let mut out = String::new();
    let how = match (v.outcome, v.exhaustive) {
        (Outcome::Infeasible, true) => " (interval searched exhaustively)",
        (Outcome::Infeasible, false) => " (empty interval)",
        _ => "",
    };
    writeln!(out, "{}{how}", outcome_name(v.outcome)).unwrap();
    if let Some(interval) = &v.interval {
        out.push_str(&interval_text(interval));
    }
    if let Some(w) = &v.witness {
        writeln!(out, "  witness k = {}, m = {:?}", w.k, w.mults).unwrap();
    }
    if let Some(c) = &v.undecided_at {
        writeln!(out, "  undecided at k = {}, m = {:?}", c.k, c.mults).unwrap();
    }
    if let Some(h) = v.horizon {
        writeln!(out, "  scanned k <= {h}").unwrap();
    }
    if v.partial {
        writeln!(out, "  partial system: divisibility constraint unavailable").unwrap();
    }
    writeln!(out, "  states {}", v.states).unwrap();
    out
}

fn decide(cli: &Cli, cmd: &DecideCmd) -> Result<Report> {
    let verdict = match cmd {
        DecideCmd::Codim2 { n, a, b, s, bruteforce, genus_form } => {
            let sys = Codim2System::new(*n, *a, *b, *s)?.with_genus_form((*genus_form).into());
            let horizon = cli.k_max.unwrap_or(5 * a);
            if *bruteforce {
                codim2_decide_bruteforce(&sys, horizon)?
            } else {
                if horizon == 0 {
                    return Err(Error::Argument("k_max must be at least 1".into()));
                }
                codim2_decide_analytic_with_horizon(&sys, horizon)
            }
        }
        DecideCmd::Surface { e, degrees_y, a_e, s, bruteforce, delta_form } => {
            let sys = SurfaceSystem::new(*e, degrees_y.clone(), *a_e, *s)?
                .with_delta_form((*delta_form).into());
            let horizon = cli.k_max.unwrap_or_else(|| sys.default_horizon());
            if *bruteforce {
                surface_decide_bruteforce(&sys, horizon, cli.precision)?
            } else {
                surface_decide(&sys, horizon, cli.precision)?
            }
        }
    };
    let text = verdict_text(&verdict);
    Ok(Report::new(&verdict, text))
}

fn induction_text(report: &InductionReport) -> String {
    let mut out = String::new();
    if report.steps.is_empty() {
        writeln!(out, "r = {}: nothing beyond the base case", report.r).unwrap();
    } else {
        writeln!(out, "r = {}: steps s = 2..{}", report.r, report.r - 1).unwrap();
    }
    for step in &report.steps {
        write!(out, "s = {}: {}", step.s, verdict_text(&step.verdict)).unwrap();
    }
    let witnesses = report.witnesses().count();
    if report.all_infeasible {
        writeln!(out, "all steps infeasible").unwrap();
    } else if witnesses > 0 {
        writeln!(out, "{witnesses} step(s) with a witness").unwrap();
    } else {
        writeln!(out, "replay incomplete: some steps were not certified").unwrap();
    }
    out
}

fn verify(cli: &Cli, cmd: &VerifyCmd) -> Result<Report> {
    use cigon_core::neffeas::InductionTarget;
    let mut options = InductionOptions {
        k_max: cli.k_max,
        precision: cli.precision,
        ..InductionOptions::default()
    };
    let target = match cmd {
        VerifyCmd::Codim2 { n, a, b, genus_form } => {
            options.genus_form = (*genus_form).into();
            InductionTarget::Codim2 { n: *n, a: *a, b: *b }
        }
        VerifyCmd::Surface { e, degrees, delta_form } => {
            options.delta_form = (*delta_form).into();
            InductionTarget::Surface { e: *e, degrees: degrees.clone() }
        }
    };
    let report = verify_induction(&target, &options)?;
    let mut out = Report::new(&report, induction_text(&report));
    out.code = if report.witnesses().next().is_some() {
        2
    } else if report.all_infeasible {
        0
    } else {
        1
    };
    Ok(out)
}

fn dimcheck(cmd: &DimcheckCmd) -> Result<Report> {
    let report = match cmd {
        DimcheckCmd::First { e, degrees_y, a_e, s } => check_first_surface(*e, degrees_y, *a_e, *s)?,
        DimcheckCmd::Second { e, degrees_y, b1, a_e, s } => {
            check_second_surface(*e, degrees_y, *b1, *a_e, *s)?
        }
    };
    let text = dimcount_text(&report);
    Ok(Report::new(&report, text))
}

fn dimcount_text(r: &DimCountReport) -> String {
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };
    format!(
        "twist {}\n  exact h0  {} ({})\n  estimate  {} ({})\n  required  > {}\n",
        r.twist,
        r.exact_h0,
        verdict(r.exact_pass),
        rational_to_string(&r.estimate),
        verdict(r.estimate_pass),
        r.required,
    )
}

fn constants(e: u32) -> Result<Report> {
    let a = constant_a(e)?;
    let b = constant_b(e)?;
    let json = serde_json::json!({ "e": e, "A": exact_int(&a), "B": exact_rat(&b) });
    let text = format!("A({e}) = {a}\nB({e}) = {}\n", rational_to_string(&b));
    Ok(Report { json, text, code: 0 })
}
