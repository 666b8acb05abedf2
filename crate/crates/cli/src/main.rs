//! `cayley` — exact computations with Cayley/Chow forms on the Klein
//! quadric. Polynomial arguments use the canonical text syntax
//! (`+ - * / ^`, variables `p01..p23`, `x0..x3`); curve files are JSON
//! with `generators` (and optionally `param`) lists of polynomial strings.
//!
//! Exit codes: 0 success, 1 domain error, 2 parse/usage error.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cayley_core::chow::{
    self, chow_form_with_budget, classify, dualize, CurveIdeal, HonestTestResult, MembershipWitness,
};
use cayley_core::harmonic::{canonical_rep, decompose, quadratic_equation_check};
use cayley_core::{
    bracket, euler_check, klein_quadric, laplacian, parse_poly, product_rule_check, Error,
    MultiPoly, VarSet,
};

#[derive(Parser)]
#[command(
    name = "cayley",
    version,
    about = "Exact Cayley/Chow form computations on the Klein quadric"
)]
struct Cli {
    /// Emit machine-readable JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Include cofactor certificates for membership claims
    #[arg(long, global = true)]
    certificate: bool,
    /// Degree budget for Gröbner runs (also: CAYLEY_MAX_DEGREE)
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cayley bracket {F, G} of two forms
    Bracket {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Plücker Laplacian of a form
    Laplace {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Harmonic decomposition F = sum_i Q^i * h_i
    Harmonic {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Canonical representative F2 = F0 + Q*F1 of a weakly Cayley form
    F2 {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Quadratic-equation residual h_(2m-2)({F0 + Q*F1, F0 + Q*F1})
    Quadcheck {
        #[arg(allow_hyphen_values = true)]
        f0: String,
        #[arg(allow_hyphen_values = true)]
        f1: String,
    },
    /// Classify a form (weak Cayley / honest / dual honest)
    Classify(ClassifyArgs),
    /// Chow form of a curve ideal, by saturation and elimination
    Chow {
        #[arg(long)]
        file: String,
    },
    /// Apply the polarity involution to a form
    Dualize {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Associated curve gamma\[k\] of a parametrized curve
    Associated {
        #[arg(long)]
        file: String,
        #[arg(short)]
        k: u32,
    },
    /// Run the built-in identity and fixture checks
    Selftest,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Inline polynomial in Plücker coordinates
    #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
    poly: Option<String>,
    /// Curve ideal file; its Chow form is classified
    #[arg(long)]
    file: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn plucker_poly(text: &str) -> Result<MultiPoly, Error> {
    parse_poly(text, &VarSet::plucker())
}

fn run(cli: &Cli) -> Result<String, Error> {
    let budget = cli.max_degree.or_else(|| {
        std::env::var("CAYLEY_MAX_DEGREE")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match &cli.command {
        Command::Bracket { f, g } => {
            let out = bracket(&plucker_poly(f)?, &plucker_poly(g)?)?;
            Ok(poly_output(cli, &out))
        }
        Command::Laplace { f } => {
            let out = laplacian(&plucker_poly(f)?)?;
            Ok(poly_output(cli, &out))
        }
        Command::Dualize { f } => {
            let out = dualize(&plucker_poly(f)?)?;
            Ok(poly_output(cli, &out))
        }
        Command::Harmonic { f } => {
            let d = decompose(&plucker_poly(f)?)?;
            if cli.json {
                let comps: Vec<Value> = d.components.iter().map(|h| json!(h.to_string())).collect();
                Ok(render(&json!({"degree": d.degree, "components": comps})))
            } else {
                let mut lines = Vec::new();
                for (i, h) in d.components.iter().enumerate() {
                    lines.push(format!("h{i} = {h}"));
                }
                Ok(lines.join("\n"))
            }
        }
        Command::F2 { f } => {
            let rep = canonical_rep(&plucker_poly(f)?)?;
            if cli.json {
                Ok(render(&json!({
                    "f2": rep.f2.to_string(),
                    "f0": rep.f0.to_string(),
                    "f1": rep.f1.to_string(),
                    "cofactor_a": rep.cofactor_a.to_string(),
                    "cofactor_b": rep.cofactor_b.to_string(),
                })))
            } else {
                let mut lines = vec![
                    format!("f2 = {}", rep.f2),
                    format!("f0 = {}", rep.f0),
                    format!("f1 = {}", rep.f1),
                ];
                if cli.certificate {
                    lines.push(format!("cofactor_a = {}", rep.cofactor_a));
                    lines.push(format!("cofactor_b = {}", rep.cofactor_b));
                }
                Ok(lines.join("\n"))
            }
        }
        Command::Quadcheck { f0, f1 } => {
            let res = quadratic_equation_check(&plucker_poly(f0)?, &plucker_poly(f1)?)?;
            if cli.json {
                Ok(render(&json!({
                    "residual": res.to_string(),
                    "cayley_candidate": res.is_zero(),
                })))
            } else {
                Ok(res.to_string())
            }
        }
        Command::Classify(args) => {
            let form = match (&args.poly, &args.file) {
                (Some(p), None) => plucker_poly(p)?,
                (None, Some(path)) => {
                    let curve = read_curve_file(path)?;
                    chow_form_with_budget(&curve, budget)?
                }
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        column: 0,
                        message: "classify needs exactly one of --poly or --file".into(),
                    })
                }
            };
            let report = classify(&form)?;
            if cli.json {
                let canonical = report.canonical.as_ref().map(|rep| {
                    json!({
                        "f2": rep.f2.to_string(),
                        "f0": rep.f0.to_string(),
                        "f1": rep.f1.to_string(),
                        "cofactor_a": rep.cofactor_a.to_string(),
                        "cofactor_b": rep.cofactor_b.to_string(),
                    })
                });
                Ok(render(&json!({
                    "form": form.to_string(),
                    "weak_cayley": report.weak_cayley,
                    "honest": report.honest,
                    "dual_honest": report.dual_honest,
                    "canonical_rep": canonical.unwrap_or(Value::Null),
                    "witnesses": json!({
                        "honest": witnesses_json(report.honest_result.as_ref(), cli.certificate),
                        "dual_honest": witnesses_json(report.dual_result.as_ref(), cli.certificate),
                    }),
                })))
            } else {
                let mut lines = vec![
                    format!("form = {form}"),
                    format!("weak_cayley: {}", report.weak_cayley),
                    format!("honest: {}", report.honest),
                    format!("dual_honest: {}", report.dual_honest),
                ];
                if let Some(rep) = &report.canonical {
                    lines.push(format!("f2 = {}", rep.f2));
                }
                if cli.certificate {
                    if let Some(hr) = &report.honest_result {
                        lines.push("honest witnesses:".into());
                        lines.extend(witness_lines(hr));
                    }
                }
                Ok(lines.join("\n"))
            }
        }
        Command::Chow { file } => {
            let curve = read_curve_file(file)?;
            let f = chow_form_with_budget(&curve, budget)?;
            if cli.json {
                Ok(render(&json!({
                    "chow_form": f.to_string(),
                    "degree": f.total_degree().unwrap_or(0),
                })))
            } else {
                Ok(f.to_string())
            }
        }
        Command::Associated { file, k } => {
            let curve = read_curve_file(file)?;
            let Some(param) = curve.param() else {
                return Err(Error::DegenerateCurve);
            };
            let coords = chow::associated_curve(param, *k)?;
            if cli.json {
                let cs: Vec<Value> = coords.iter().map(|c| json!(c.to_string())).collect();
                Ok(render(&json!({"k": k, "coordinates": cs})))
            } else {
                Ok(coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join("\n"))
            }
        }
        Command::Selftest => selftest(cli),
    }
}

fn poly_output(cli: &Cli, p: &MultiPoly) -> String {
    if cli.json {
        render(&json!({"result": p.to_string()}))
    } else {
        p.to_string()
    }
}

fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialization cannot fail")
}

fn witnesses_json(result: Option<&HonestTestResult>, certificate: bool) -> Value {
    let Some(r) = result else {
        return Value::Null;
    };
    let ws: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w: &MembershipWitness| {
            let mut obj = json!({
                "polynomial": w.polynomial.to_string(),
                "normal_form": w.remainder.to_string(),
                "member": w.member,
            });
            if certificate {
                obj["cofactors"] =
                    Value::Array(w.cofactors.iter().map(|c| json!(c.to_string())).collect());
            }
            obj
        })
        .collect();
    let mut out = json!({"witnesses": ws});
    if certificate {
        out["basis"] = Value::Array(r.ideal_basis.iter().map(|b| json!(b.to_string())).collect());
    }
    out
}

fn witness_lines(r: &HonestTestResult) -> Vec<String> {
    let mut lines = Vec::new();
    for (i, w) in r.witnesses.iter().enumerate() {
        lines.push(format!(
            "  w{i}: member={} normal_form={}",
            w.member, w.remainder
        ));
    }
    lines
}

fn read_curve_file(path: &str) -> Result<CurveIdeal, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("cannot read {path}: {e}"),
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: format!("invalid JSON in {path}: {e}"),
    })?;
    let gens_value = value.get("generators").ok_or_else(|| Error::Parse {
        line: 0,
        column: 0,
        message: format!("{path}: missing `generators` array"),
    })?;
    let gen_texts: Vec<String> = as_string_array(gens_value, path, "generators")?;
    let xs = VarSet::points();
    let generators: Vec<MultiPoly> = gen_texts
        .iter()
        .map(|t| parse_poly(t, &xs))
        .collect::<Result<_, _>>()?;
    let param = match value.get("param") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let texts = as_string_array(v, path, "param")?;
            if texts.len() != 4 {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("{path}: `param` must list 4 polynomials in t"),
                });
            }
            let tvs = VarSet::univariate("t");
            let polys: Vec<MultiPoly> = texts
                .iter()
                .map(|t| parse_poly(t, &tvs))
                .collect::<Result<_, _>>()?;
            Some([
                polys[0].clone(),
                polys[1].clone(),
                polys[2].clone(),
                polys[3].clone(),
            ])
        }
    };
    CurveIdeal::new(generators, param)
}

fn as_string_array(v: &Value, path: &str, key: &str) -> Result<Vec<String>, Error> {
    v.as_array()
        .and_then(|arr| {
            arr.iter()
                .map(|x| x.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
        })
        .ok_or_else(|| Error::Parse {
            line: 0,
            column: 0,
            message: format!("{path}: `{key}` must be an array of strings"),
        })
}

fn selftest(cli: &Cli) -> Result<String, Error> {
    let vs = VarSet::plucker();
    let q = klein_quadric(&vs)?;
    let pl = |s: &str| parse_poly(s, &vs);
    let mut lines: Vec<String> = Vec::new();
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut certs: Vec<String> = Vec::new();

    let quadric_form = pl("(p01+p23)^2 + 4*p03*p12")?;
    let skew = pl("p01*p23")?;
    let chain = pl("p01*p02*p23")?;
    let conic = pl("p02^2 + 4*p01*p12")?;
    let cubic = chow::twisted_cubic_form(&vs)?;

    for (name, f) in [
        ("euler: Q", &q),
        ("euler: quadric form", &quadric_form),
        ("euler: skew lines", &skew),
        ("euler: chain", &chain),
        ("euler: twisted cubic", &cubic),
    ] {
        checks.push((name.into(), euler_check(f)?.is_zero()));
    }
    for (name, a, b) in [
        ("product rule: (Q, skew)", &q, &skew),
        ("product rule: (chain, conic)", &chain, &conic),
        ("product rule: (quadric form, Q)", &quadric_form, &q),
    ] {
        checks.push((name.into(), product_rule_check(a, b)?.is_zero()));
    }

    checks.push((
        "quadric: {F,F} = 8F".into(),
        bracket(&quadric_form, &quadric_form)? == quadric_form.scale(&cayley_core::int(8)),
    ));
    checks.push((
        "skew: {F,F} = 2F, lap(F) = 1".into(),
        bracket(&skew, &skew)? == skew.scale(&cayley_core::int(2)) && laplacian(&skew)? == pl("1")?,
    ));
    checks.push((
        "conic: harmonic, strong equation".into(),
        laplacian(&conic)?.is_zero() && bracket(&conic, &conic)?.is_zero(),
    ));
    checks.push((
        "chain: {F,F} = 2*F*p02".into(),
        bracket(&chain, &chain)? == chain.checked_mul(&pl("2*p02")?)?,
    ));
    checks.push((
        "cubic: lap(F) = p12 + p03".into(),
        laplacian(&cubic)? == pl("p12 + p03")?,
    ));

    for (name, f) in [
        ("f2: quadric", &quadric_form),
        ("f2: skew", &skew),
        ("f2: chain", &chain),
        ("f2: cubic", &cubic),
    ] {
        let rep = canonical_rep(f)?;
        let br2 = bracket(&rep.f2, &rep.f2)?;
        let ok = br2.is_zero() || br2.exact_div(&q).is_ok();
        if cli.certificate {
            certs.push(format!(
                "certificate {name}: {{F,F}} = ({})*Q + ({})*F",
                rep.cofactor_a, rep.cofactor_b
            ));
        }
        checks.push((name.to_string(), ok));
    }

    for (name, f) in [("round-trip: Q", &q), ("round-trip: cubic", &cubic)] {
        checks.push((name.into(), pl(&f.to_string())? == *f));
    }

    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.as_str())
        .collect();
    let output = if cli.json {
        let items: Vec<Value> = checks
            .iter()
            .map(|(n, ok)| json!({"name": n, "ok": ok}))
            .collect();
        render(&json!({
            "checks": items,
            "passed": checks.len() - failed.len(),
            "failed": failed.len(),
        }))
    } else {
        for (n, ok) in &checks {
            lines.push(format!("[{}] {n}", if *ok { "ok" } else { "FAILED" }));
        }
        lines.extend(certs);
        if failed.is_empty() {
            lines.push(format!("all {} checks passed", checks.len()));
        }
        lines.join("\n")
    };
    if failed.is_empty() {
        Ok(output)
    } else {
        println!("{output}");
        eprintln!("error: selftest failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
