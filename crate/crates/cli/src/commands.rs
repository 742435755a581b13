use crate::{
    BoundArgs, Cli, CodewordArgs, Command, ConstructArgs, FieldCmd, InnerScheme, MetricsArgs,
    OuterScheme, RsCmd, SchemeArgs, SimulateArgs, SweepArgs, VerifyArgs,
};
use anyhow::{bail, Context, Result};
use idcodes::bounds::{bound_report, min_distance_lower_bound};
use idcodes::concat::{construction1_full_params, construction2_full_params, ppm_bench_params};
use idcodes::construct::{
    construction2_cwc, construction2_truncated, modified_prime_cwc, ppm_cwc, prime_sequence_cwc,
};
use idcodes::cwc::{
    cyclic_correlations, min_distance_from_params, optimality_metrics, rational_string, verify_cwc,
    FamilyFile,
};
use idcodes::field::DEFAULT_FIELD_CAP;
use idcodes::idsys::{exact_pairwise_type2, id_metrics, simulate_id, three_sigma, IdCode};
use idcodes::real::sig12;
use idcodes::rs::rs_codeword;
use idcodes::sweep::{emit_plotdata, run_sweep, write_csv, Scheme, SweepConfig};
use idcodes::{CodeParams, CodeSize, ConcatSpec, FieldCtx, RsSpec, RsVariant};
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;

pub fn run(cli: &Cli) -> Result<()> {
    let bits = cli.precision_bits;
    if bits == 0 {
        bail!("--precision-bits must be positive");
    }
    match &cli.command {
        Command::Field {
            action: FieldCmd::Info { p, m, modulus },
        } => {
            let f = match modulus {
                Some(coeffs) => FieldCtx::with_modulus(*p, coeffs, DEFAULT_FIELD_CAP)?,
                None => FieldCtx::new(*p, *m)?,
            };
            emit(&serde_json::to_value(f.info())?, None)
        }
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Rs {
            action:
                RsCmd::Encode {
                    q,
                    k,
                    variant,
                    message,
                },
        } => {
            let spec = RsSpec::new(*q, *k, variant.parse()?)?;
            let cw = rs_codeword(&spec, message)?;
            let bp = spec.params();
            emit(
                &json!({
                    "q": q, "k": k, "variant": spec.variant.to_string(),
                    "n": bp.n, "d": bp.d,
                    "message": message, "codeword": cw,
                }),
                None,
            )
        }
        Command::Params(a) => params(a, bits),
        Command::Codeword(a) => codeword(a),
        Command::Bound(a) => bound(a),
        Command::Metrics(a) => metrics(a, bits),
        Command::Simulate(a) => simulate(a),
        Command::Sweep(a) => sweep(a, bits),
    }
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn construct(a: &ConstructArgs) -> Result<()> {
    if a.truncate.is_some() && !matches!(a.scheme, InnerScheme::Construction2) {
        bail!("--truncate only applies to construction2");
    }
    let fam = match a.scheme {
        InnerScheme::Prime => prime_sequence_cwc(a.p)?,
        InnerScheme::ModifiedPrime => modified_prime_cwc(a.p)?,
        InnerScheme::Construction2 => match a.truncate {
            Some(t) => construction2_truncated(a.p, a.m, t)?,
            None => construction2_cwc(a.p, a.m)?,
        },
        InnerScheme::Ppm => ppm_cwc(a.p)?,
    };
    let file = FamilyFile::from_family(&fam)?;
    emit(&serde_json::to_value(file)?, a.out.as_deref())
}

fn verify(a: &VerifyArgs) -> Result<()> {
    let text = std::fs::read_to_string(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let file: FamilyFile = serde_json::from_str(&text)?;
    let fam = file.into_family()?;
    let report = verify_cwc(&fam);
    let mut v = serde_json::to_value(&report)?;
    v["warnings"] = json!(report.failures.len());
    if a.cyclic {
        v["cyclic"] = serde_json::to_value(cyclic_correlations(&fam))?;
    }
    emit(&v, a.out.as_deref())?;
    if !report.pass {
        eprintln!("warning: {} check(s) failed", report.failures.len());
    }
    Ok(())
}

fn variant_for(scheme: OuterScheme, given: Option<&str>) -> Result<RsVariant> {
    Ok(match given {
        Some(v) => v.parse()?,
        None if scheme == OuterScheme::PpmBench => RsVariant::Extended,
        None => RsVariant::Standard,
    })
}

fn scheme_name(s: OuterScheme) -> &'static str {
    match s {
        OuterScheme::C1 => "c1",
        OuterScheme::C2 => "c2",
        OuterScheme::PpmBench => "ppm-bench",
    }
}

fn scheme_params(a: &SchemeArgs) -> Result<CodeParams> {
    let variant = variant_for(a.scheme, a.variant.as_deref())?;
    Ok(match a.scheme {
        OuterScheme::C1 => construction1_full_params(a.p, a.ko, a.koo, variant)?,
        OuterScheme::C2 => construction2_full_params(a.p, a.m, a.ko, a.koo, variant, a.truncate)?,
        OuterScheme::PpmBench => ppm_bench_params(a.p, a.ko, a.koo, variant)?,
    })
}

fn scheme_spec(a: &SchemeArgs) -> Result<ConcatSpec> {
    let variant = variant_for(a.scheme, a.variant.as_deref())?;
    Ok(match a.scheme {
        OuterScheme::C1 => ConcatSpec::construction1(a.p, a.ko, a.koo, variant)?,
        OuterScheme::C2 => ConcatSpec::construction2(a.p, a.m, a.ko, a.koo, variant, a.truncate)?,
        OuterScheme::PpmBench => ConcatSpec::ppm_bench(a.p, a.ko, a.koo, variant)?,
    })
}

fn scheme_header(a: &SchemeArgs) -> Result<Value> {
    let variant = variant_for(a.scheme, a.variant.as_deref())?;
    Ok(json!({
        "scheme": scheme_name(a.scheme),
        "p": a.p,
        "m": if a.scheme == OuterScheme::C2 { json!(a.m) } else { Value::Null },
        "k_o": a.ko,
        "k_oo": a.koo,
        "variant": variant.to_string(),
    }))
}

/// Metrics block shared by `params` and `metrics`; degenerate points give a
/// warning instead of an error.
fn metrics_block(p: &CodeParams, bits: u32, warnings: &mut Vec<String>) -> Value {
    let id = match id_metrics(p, bits) {
        Ok(m) => m.to_json(),
        Err(e) => {
            warnings.push(format!("id metrics: {e}"));
            Value::Null
        }
    };
    let opt = match optimality_metrics(p, bits) {
        Ok(o) => json!({
            "weight_factor": sig12(o.weight_factor.to_f64()),
            "second_order_rate": sig12(o.second_order_rate.to_f64()),
            "overlap_fraction": rational_string(&o.overlap_fraction),
        }),
        Err(e) => {
            warnings.push(format!("optimality metrics: {e}"));
            Value::Null
        }
    };
    json!({ "id": id, "optimality": opt })
}

fn params(a: &SchemeArgs, bits: u32) -> Result<()> {
    let p = scheme_params(a)?;
    let mut warnings = Vec::new();
    let mut v = scheme_header(a)?;
    v["params"] = serde_json::to_value(&p)?;
    v["min_distance"] = json!(min_distance_from_params(&p));
    v["metrics"] = metrics_block(&p, bits, &mut warnings);
    v["warnings"] = json!(warnings.len());
    v["warning_messages"] = json!(warnings);
    emit(&v, a.out.as_deref())
}

fn parse_id(s: &str) -> Result<BigUint> {
    s.parse::<BigUint>()
        .with_context(|| format!("invalid identifier {s:?}"))
}

fn codeword(a: &CodewordArgs) -> Result<()> {
    let spec = scheme_spec(&a.scheme)?;
    let id = parse_id(&a.id)?;
    let cw = spec.codeword(&id)?;
    let mut v = scheme_header(&a.scheme)?;
    v["id"] = json!(id.to_string());
    v["S"] = json!(cw.blocklength());
    v["W"] = json!(cw.weight());
    v["support"] = json!(cw.support());
    emit(&v, a.scheme.out.as_deref())
}

/// Accepts `N` as a decimal integer or as `base^exponent`.
fn parse_size(s: &str) -> Result<CodeSize> {
    match s.split_once('^') {
        Some((b, e)) => Ok(CodeSize::power(
            b.trim()
                .parse()
                .with_context(|| format!("invalid base in {s:?}"))?,
            e.trim()
                .parse()
                .with_context(|| format!("invalid exponent in {s:?}"))?,
        )),
        None => Ok(CodeSize::exact(
            s.trim()
                .parse()
                .with_context(|| format!("invalid size {s:?}"))?,
        )),
    }
}

fn bound(a: &BoundArgs) -> Result<()> {
    if a.invert {
        let n = a.N.as_deref().context("--invert needs --N")?;
        let n = parse_size(n)?.value();
        let d = min_distance_lower_bound(a.S, &n, a.W, a.ell_max)?;
        let v = json!({
            "S": a.S, "N": n.to_string(), "W": a.W,
            "k_star": d.k_star, "d_min": d.d_min,
        });
        return emit(&v, a.out.as_deref());
    }
    let k = a.K.context("--K is required unless --invert is given")?;
    let r = bound_report(a.S, a.W, k, a.ell_max)?;
    let mut v = serde_json::to_value(&r)?;
    let warnings: Vec<&str> = if r.n_id_bound.is_none() {
        vec!["K = W: no bound applies"]
    } else {
        vec![]
    };
    v["warnings"] = json!(warnings.len());
    v["warning_messages"] = json!(warnings);
    emit(&v, a.out.as_deref())
}

fn metrics(a: &MetricsArgs, bits: u32) -> Result<()> {
    let (mut v, p) = match a.scheme {
        Some(scheme) => {
            let sa = SchemeArgs {
                scheme,
                p: a.p.context("--p is required with --scheme")?,
                m: a.m,
                ko: a.ko.context("--ko is required with --scheme")?,
                koo: a.koo.context("--koo is required with --scheme")?,
                variant: a.variant.clone(),
                truncate: a.truncate,
                out: None,
            };
            (scheme_header(&sa)?, scheme_params(&sa)?)
        }
        None => {
            let (Some(s), Some(n), Some(w), Some(k)) = (a.S, a.N.as_deref(), a.W, a.K) else {
                bail!("give either --scheme or all of --S --N --W --K");
            };
            (json!({}), CodeParams::new(s, parse_size(n)?, w, k)?)
        }
    };
    let mut warnings = Vec::new();
    v["params"] = serde_json::to_value(&p)?;
    v["metrics"] = metrics_block(&p, bits, &mut warnings);
    v["warnings"] = json!(warnings.len());
    v["warning_messages"] = json!(warnings);
    emit(&v, a.out.as_deref())
}

fn simulate(a: &SimulateArgs) -> Result<()> {
    let code = IdCode::from_concat(scheme_spec(&a.scheme)?);
    let i = parse_id(&a.i)?;
    let j = parse_id(&a.iprime)?;
    let exact = exact_pairwise_type2(&code, &i, &j)?;
    let out = simulate_id(&code, &i, &j, a.trials, a.seed)?;
    let tol = three_sigma(&exact, a.trials);
    let exact_f = num_traits::ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
    let within = (out.type2_rate() - exact_f).abs() <= tol;
    let mut v = scheme_header(&a.scheme)?;
    v["i"] = json!(i.to_string());
    v["iprime"] = json!(j.to_string());
    v["trials"] = json!(out.trials);
    v["seed"] = json!(out.seed);
    v["type1_errors"] = json!(out.type1_errors);
    v["type2_errors"] = json!(out.type2_errors);
    v["type1_rate"] = json!(sig12(out.type1_rate()));
    v["type2_rate"] = json!(sig12(out.type2_rate()));
    v["exact_type2"] = json!(rational_string(&exact));
    v["three_sigma"] = json!(sig12(tol));
    v["within_three_sigma"] = json!(within);
    v["warnings"] = json!(if within { 0 } else { 1 });
    emit(&v, a.scheme.out.as_deref())
}

fn sweep(a: &SweepArgs, bits: u32) -> Result<()> {
    let mut schemes = Vec::new();
    for s in &a.schemes {
        schemes.push(match s.as_str() {
            "c1" => Scheme::C1 { p: a.c1_p },
            "c2" => Scheme::C2 {
                p: a.c2_p,
                m: a.c2_m,
                truncate: a.c2_truncate,
            },
            "ppm-bench" | "ppm" => Scheme::PpmBench { q: a.ppm_q },
            other => bail!("unknown scheme {other:?}"),
        });
    }
    let cfg = SweepConfig {
        schemes,
        variant: a.variant.parse()?,
        k_o: a.ko.clone(),
        k_oo: a.koo.clone(),
        precision_bits: bits,
    };
    let table = run_sweep(&cfg);
    match &a.out {
        Some(path) => {
            let man = emit_plotdata(&table, &cfg, path)?;
            eprintln!(
                "{} rows, {} warnings; manifest {}",
                table.rows.len(),
                table.skipped.len(),
                man.display()
            );
        }
        None => {
            write_csv(&table.rows, std::io::stdout().lock())?;
            if !table.skipped.is_empty() {
                eprintln!("{} warnings (skipped points)", table.skipped.len());
            }
        }
    }
    Ok(())
}
