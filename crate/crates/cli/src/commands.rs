use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use conclab_core::abgroup::{square_root_subgroups, FiniteAbelianGroup};
use conclab_core::dinv::{
    d_large_surgery, d_large_surgery_table, d_lens_oriented, d_lens_table, dbar, dbar_vanishing_obstruction,
    v_sequence_lspace, DTable, MetabolizerOutcome, Orientation, VSequence,
};
use conclab_core::io::{from_json_str, PipelineInput};
use conclab_core::obstruct::{
    external_dbar_q3, obstruct_smooth, obstruct_topological_with_precision, DbarSource, LinkFamilySpec, Verdict,
};
use conclab_core::parse::{parse_alexander, parse_knot, parse_poly_any, parse_poly_set};
use conclab_core::polyalg::{excluded_primes, r_d};
use conclab_core::rational::{fmt_rational, parse_rational};
use conclab_core::seifert::{
    alexander_from_seifert, jump_function_with_precision, minimal_period, scale_jump_function,
    signature_at_with_precision, JumpFunction, MinimalPeriod, SeifertMatrix,
};
use conclab_core::{Error, Result};

use crate::{input_error, Command, Global, PipelineArgs, Report};

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn done(value: Value) -> Result<Report> {
    Ok(Report {
        value,
        inconclusive: false,
    })
}

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
fn big_json(n: &BigInt) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {path}: {e}")))
}

/// `@path` or an existing file is read; anything else is taken literally.
fn load_text(arg: &str) -> Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        return read_file(path);
    }
    let t = arg.trim_start();
    if !t.starts_with('{') && !t.starts_with('[') && Path::new(arg).is_file() {
        return read_file(arg);
    }
    Ok(arg.to_string())
}

fn knot(arg: &str) -> Result<SeifertMatrix> {
    match arg.strip_prefix('@') {
        Some(path) => parse_knot(&read_file(path)?),
        None => parse_knot(arg),
    }
}

fn jumps(arg: &str) -> Result<JumpFunction> {
    from_json_str(&load_text(arg)?)
}

fn table(arg: &str) -> Result<DTable> {
    if arg == "external-q3" {
        return Ok(external_dbar_q3());
    }
    from_json_str(&load_text(arg)?)
}

fn period_value(p: &MinimalPeriod) -> (Value, bool) {
    match p {
        MinimalPeriod::Period(c) => (json!({"kind": "period", "minimal_period": fmt_rational(c)}), false),
        MinimalPeriod::ZeroFunction => (json!({"kind": "zero_function", "minimal_period": null}), false),
        MinimalPeriod::NumericUnknown { candidate } => (
            json!({"kind": "numeric_unknown", "minimal_period": null, "candidate": fmt_rational(candidate)}),
            true,
        ),
    }
}

pub fn run(cmd: &Command, g: &Global) -> Result<Report> {
    match cmd {
        Command::Rd { poly, d } => {
            let f = parse_poly_any(&load_text(poly)?)?;
            let r = r_d(&f, *d)?;
            done(json!({"poly": f.to_string(), "d": d, "r_d": big_json(&r)}))
        }
        Command::Primeset { set, d } => {
            let set = parse_poly_set(&load_text(set)?)?;
            let ex = excluded_primes(&set, *d)?;
            let per: Vec<Value> = set
                .polys()
                .iter()
                .map(|f| Ok(json!({"poly": f.to_string(), "r_d": big_json(&r_d(f.poly(), *d)?)})))
                .collect::<Result<_>>()?;
            done(json!({"d": d, "excluded": ex.excluded, "r_d": per}))
        }
        Command::Alexander { knot: k } => {
            let a = knot(k)?;
            let p = alexander_from_seifert(&a)?;
            done(json!({
                "knot": a.label(),
                "dim": a.dim(),
                "alexander": to_value(&p),
                "display": p.to_string(),
                "genuine_knot": a.is_genuine_knot(),
            }))
        }
        Command::Signature { knot: k, t } => {
            let a = knot(k)?;
            let t = parse_rational(t)?;
            let s = signature_at_with_precision(&a, &t, g.precision)?;
            done(json!({"knot": a.label(), "t": fmt_rational(&t), "signature": s}))
        }
        Command::Jumps { knot: k, c } => {
            let a = knot(k)?;
            done(to_value(&jump_function_with_precision(&a, *c, g.precision)?))
        }
        Command::Period { jumps: j } => {
            let (value, inconclusive) = period_value(&minimal_period(&jumps(j)?));
            Ok(Report { value, inconclusive })
        }
        Command::Sum { jumps: js } => {
            let mut it = js.iter();
            let mut acc = jumps(it.next().expect("clap requires one"))?;
            for j in it {
                acc = acc.add(&jumps(j)?)?;
            }
            done(to_value(&acc))
        }
        Command::Scale { jumps: j, q } => done(to_value(&scale_jump_function(&jumps(j)?, *q)?)),
        Command::Dlens { p, q, i, reversed } => {
            let o = if *reversed {
                Orientation::Reversed
            } else {
                Orientation::Standard
            };
            match i {
                Some(i) => done(json!({
                    "p": p, "q": q, "i": i, "orientation": to_value(&o),
                    "d": fmt_rational(&d_lens_oriented(*p, *q, *i, o)?),
                })),
                None => done(to_value(&d_lens_table(*p, *q, o)?)),
            }
        }
        Command::Vseq { poly } => {
            let f = parse_alexander(&load_text(poly)?)?;
            let v = v_sequence_lspace(&f)?;
            done(json!({"poly": f.to_string(), "values": v.values(), "genus_bound": v.genus_bound()}))
        }
        Command::Dsurgery { n, poly, v, i } => {
            let vs = match (poly, v) {
                (Some(p), _) => v_sequence_lspace(&parse_alexander(&load_text(p)?)?)?,
                (None, Some(v)) => {
                    let vals = v
                        .split(',')
                        .map(|x| x.trim().parse::<u64>().map_err(|_| input_error(format!("bad V entry {x:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    VSequence::new(vals)?
                }
                (None, None) => return Err(input_error("either --poly or --v is required")),
            };
            match i {
                Some(i) => done(json!({
                    "n": n, "i": i, "v": vs.values(),
                    "d": fmt_rational(&d_large_surgery(*n, &vs, *i)?),
                })),
                None => done(to_value(&d_large_surgery_table(*n, &vs)?)),
            }
        }
        Command::Dbar { table: t } => done(to_value(&dbar(&table(t)?)?)),
        Command::Metabolizers { group, q, dbar: d } => {
            let text = load_text(group)?;
            let grp: FiniteAbelianGroup = if text.trim_start().starts_with('{') {
                from_json_str(&text)?
            } else {
                let orders = text
                    .split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| input_error(format!("bad group order {x:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                FiniteAbelianGroup::from_orders(&orders)?
            };
            match d {
                None => done(to_value(&square_root_subgroups(&grp, *q)?)),
                Some(d) => {
                    let t = table(d)?;
                    if t.group != grp {
                        return Err(Error::InvalidGroup(format!("table is on {}, expected {grp}", t.group)));
                    }
                    let r = dbar_vanishing_obstruction(&grp, *q, &t.values)?;
                    Ok(Report {
                        inconclusive: r.outcome == MetabolizerOutcome::Inconclusive,
                        value: to_value(&r),
                    })
                }
            }
        }
        Command::ObstructTop(args) => {
            let input = pipeline_input(args)?;
            pipeline(&input, false, g.precision)
        }
        Command::ObstructSmooth(args) => {
            let input = pipeline_input(args)?;
            pipeline(&input, true, g.precision)
        }
        Command::Batch { input } => batch(&load_text(input)?, g.precision),
    }
}

fn pipeline_input(args: &PipelineArgs) -> Result<PipelineInput> {
    let mut input = match &args.input {
        Some(doc) => PipelineInput::from_json(&load_text(doc)?)?,
        None => {
            let set = match &args.set {
                Some(s) => parse_poly_set(&load_text(s)?)?,
                None => conclab_core::polyalg::PolySet::unit(),
            };
            let j0 = match &args.j0 {
                Some(p) => parse_alexander(&load_text(p)?)?,
                None => set.polys()[0].clone(),
            };
            let m = args.m.ok_or_else(|| input_error("--m is required"))?;
            let j = knot(args.knot.as_deref().ok_or_else(|| input_error("--J is required"))?)?;
            PipelineInput {
                spec: LinkFamilySpec::new(m, j, j0)?,
                set,
                dbar: None,
                d: 2,
            }
        }
    };
    if let Some(d) = args.d {
        input.d = d;
    }
    if let Some(t) = &args.dbar {
        input.dbar = Some(table(t)?);
    }
    Ok(input)
}

fn pipeline(input: &PipelineInput, smooth: bool, precision: u32) -> Result<Report> {
    let (value, verdict) = if smooth {
        if input.d != 2 {
            return Err(Error::UnsupportedDegree(input.d));
        }
        let source = match &input.dbar {
            Some(t) => DbarSource::External(t.clone()),
            None => DbarSource::Computed,
        };
        let r = obstruct_smooth(&input.spec, &input.set, &source)?;
        (to_value(&r), r.verdict)
    } else {
        let r = obstruct_topological_with_precision(&input.spec, input.d, &input.set, precision)?;
        (to_value(&r), r.verdict)
    };
    Ok(Report {
        value,
        inconclusive: verdict == Verdict::Inconclusive,
    })
}

fn batch(text: &str, precision: u32) -> Result<Report> {
    let docs: Vec<Value> = from_json_str(text)?;
    let results: Vec<(Value, bool)> = docs
        .into_par_iter()
        .enumerate()
        .map(|(index, doc)| {
            let (command, out) = batch_entry(doc, precision);
            match out {
                Ok(r) => (json!({"index": index, "command": command, "result": r.value}), r.inconclusive),
                Err(e) => (json!({"index": index, "command": command, "error": e.to_string()}), false),
            }
        })
        .collect();
    let inconclusive = results.iter().any(|r| r.1);
    done(Value::Array(results.into_iter().map(|r| r.0).collect())).map(|mut r| {
        r.inconclusive = inconclusive;
        r
    })
}

fn batch_entry(mut doc: Value, precision: u32) -> (Value, Result<Report>) {
    let Some(obj) = doc.as_object_mut() else {
        return (Value::Null, Err(input_error("batch entries must be objects")));
    };
    let command = obj.remove("command").unwrap_or(Value::Null);
    if obj.get("dbar").and_then(Value::as_str) == Some("external-q3") {
        obj.insert("dbar".into(), to_value(&external_dbar_q3()));
    }
    let smooth = match command.as_str() {
        Some("obstruct-top") => false,
        Some("obstruct-smooth") => true,
        _ => {
            return (
                command,
                Err(input_error("command must be \"obstruct-top\" or \"obstruct-smooth\"")),
            )
        }
    };
    let out = PipelineInput::from_value(doc).and_then(|input| pipeline(&input, smooth, precision));
    (command, out)
}
