//! Command-line surface: build, validate, transform, measure, compare,
//! render, and run the verification suites.
//!
//! Exit codes: 0 success; 1 validation or precondition failure; 2
//! undefined-invariant request; 3 I/O or parse error. Errors print as
//! single-line machine-parseable records on standard error.

use std::path::Path;
use std::process::ExitCode;

use cfk::error::CfkError;
use cfk::invariants::{Orientation, Tail};
use cfk::order::{ArchOutcome, DominanceOutcome};
use cfk::render::Window;
use cfk::{catalog, invariants, io as cio, laurent, order, render, suite, Complex, LaurentPoly};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::from(0),
        Err(e) => {
            let code = match &e {
                CfkError::Io(_) | CfkError::Parse(_) => 3u8,
                CfkError::UndefinedInvariant(_) => 2,
                _ => 1,
            };
            eprintln!("cfk-error: code={} msg=\"{}\"", error_code(&e), e);
            ExitCode::from(code)
        }
    }
}

fn error_code(e: &CfkError) -> &'static str {
    match e {
        CfkError::NotLSpaceShape(_) => "not-l-space-shape",
        CfkError::NonCoprime { .. } => "non-coprime",
        CfkError::NotAlexander(_) => "not-alexander",
        CfkError::InvalidComplex(_) => "invalid-complex",
        CfkError::InfiniteRegion(_) => "infinite-region",
        CfkError::NonConvex { .. } => "non-convex",
        CfkError::ChainMapViolation(_) => "chain-map-violation",
        CfkError::NotACycle => "not-a-cycle",
        CfkError::NotReduced { .. } => "not-reduced",
        CfkError::UndefinedInvariant(_) => "undefined-invariant",
        CfkError::InvariantContradiction => "invariant-contradiction",
        CfkError::ZeroElement => "zero-element",
        CfkError::BadArgument(_) => "bad-argument",
        CfkError::Unclassifiable(_) => "unclassifiable",
        CfkError::SizeBudget { .. } => "size-budget",
        CfkError::WindowTooLarge { .. } => "window-too-large",
        CfkError::Io(_) => "io",
        CfkError::Parse(_) => "parse",
    }
}

struct Args<'a> {
    positional: Vec<&'a str>,
    flags: std::collections::BTreeMap<String, String>,
}

fn parse_args(args: &[String]) -> Result<Args<'_>, CfkError> {
    let mut positional = Vec::new();
    let mut flags = std::collections::BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(name) = a.strip_prefix("--") {
            let value = args
                .get(i + 1)
                .ok_or_else(|| CfkError::BadArgument(format!("--{name} needs a value")))?;
            flags.insert(name.to_string(), value.clone());
            i += 2;
        } else {
            positional.push(a.as_str());
            i += 1;
        }
    }
    Ok(Args { positional, flags })
}

impl<'a> Args<'a> {
    fn flag(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(|s| s.as_str())
    }

    fn int_flag(&self, name: &str) -> Result<Option<i64>, CfkError> {
        match self.flag(name) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CfkError::BadArgument(format!("--{name} expects an integer"))),
        }
    }

    fn require_int(&self, name: &str) -> Result<i64, CfkError> {
        self.int_flag(name)?
            .ok_or_else(|| CfkError::BadArgument(format!("--{name} is required")))
    }
}

fn emit(out: Option<&str>, content: &str) -> Result<(), CfkError> {
    match out {
        None | Some("-") => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, content).map_err(|e| CfkError::Io(format!("{path}: {e}")))
        }
    }
}

fn emit_complex(out: Option<&str>, c: &Complex) -> Result<(), CfkError> {
    emit(out, &cio::serialize(c))
}

fn load(path: &str) -> Result<Complex, CfkError> {
    cio::read_complex(Path::new(path))
}

fn usage() -> CfkError {
    CfkError::BadArgument(
        "usage: cfk <validate|build|op|invariants|compare|order|alexander|render|suite> ...".into(),
    )
}

fn run(argv: &[String]) -> Result<(), CfkError> {
    let Some(cmd) = argv.first().map(|s| s.as_str()) else {
        return Err(usage());
    };
    let rest = &argv[1..];
    match cmd {
        "validate" => cmd_validate(rest),
        "build" => cmd_build(rest),
        "op" => cmd_op(rest),
        "invariants" => cmd_invariants(rest),
        "compare" => cmd_compare(rest),
        "order" => cmd_order(rest),
        "alexander" => cmd_alexander(rest),
        "render" => cmd_render(rest),
        "suite" => cmd_suite(rest),
        _ => Err(usage()),
    }
}

fn cmd_validate(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let [path] = a.positional[..] else {
        return Err(CfkError::BadArgument("validate <file>".into()));
    };
    let c = load(path)?;
    let violations = c.validate();
    if violations.is_empty() {
        println!(
            "valid: {} ({} generators, {} arrows, reduced: {})",
            c.name(),
            c.len(),
            c.arrow_count(),
            c.is_reduced()
        );
        Ok(())
    } else {
        for v in &violations {
            println!("violation: {v}");
        }
        Err(CfkError::InvalidComplex(violations))
    }
}

fn cmd_build(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let [kind] = a.positional[..] else {
        return Err(CfkError::BadArgument(
            "build <staircase|torus|cable-trefoil|kn|unknot|figure2> ...".into(),
        ));
    };
    let c = match kind {
        "staircase" => {
            let steps_raw = a
                .flag("steps")
                .ok_or_else(|| CfkError::BadArgument("build staircase --steps 1,2,2,1".into()))?;
            let steps: Vec<i64> = steps_raw
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| CfkError::BadArgument("--steps expects integers".into()))?;
            catalog::staircase(&steps)?
        }
        "torus" => catalog::torus_complex(a.require_int("p")?, a.require_int("q")?)?,
        "cable-trefoil" => catalog::trefoil_cable_complex(a.require_int("n")?)?,
        "kn" => catalog::kn_model(a.require_int("n")?)?,
        "unknot" => catalog::unknot(),
        "figure2" => catalog::figure2_fixture(),
        _ => {
            return Err(CfkError::BadArgument(format!(
                "unknown build target {kind}"
            )))
        }
    };
    emit_complex(a.flag("out"), &c)
}

fn cmd_op(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let out = a.flag("out");
    match a.positional[..] {
        ["tensor", x, y] => emit_complex(out, &load(x)?.tensor(&load(y)?)?),
        ["difference", x, y] => emit_complex(out, &load(x)?.difference(&load(y)?)?),
        ["dual", x] => emit_complex(out, &load(x)?.dual()?),
        ["reduce", x] => emit_complex(out, &load(x)?.reduce()?),
        ["multiple", x] => {
            let k = a.require_int("k")?;
            if k < 1 {
                return Err(CfkError::BadArgument("--k must be >= 1".into()));
            }
            emit_complex(out, &load(x)?.multiple(k as u32)?)
        }
        _ => Err(CfkError::BadArgument(
            "op <tensor|difference> <a> <b> | op <dual|reduce> <a> | op multiple <a> --k K".into(),
        )),
    }
}

fn tail_json(t: &Tail) -> String {
    match t {
        Tail::Complete => "\"complete\"".into(),
        Tail::Prime(v) => format!("{{\"prime\": {v}}}"),
        Tail::PrimePair(a, b) => format!("{{\"prime_pair\": [{a}, {b}]}}"),
        Tail::DepthLimit => "\"depth-limit\"".into(),
    }
}

fn cmd_invariants(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let [path] = a.positional[..] else {
        return Err(CfkError::BadArgument(
            "invariants <file> [--max-len N] [--max-val auto|N]".into(),
        ));
    };
    let c = load(path)?;
    let max_len = a.int_flag("max-len")?.unwrap_or(12).max(1) as usize;
    let max_val =
        match a.flag("max-val") {
            None | Some("auto") => None,
            Some(v) => Some(v.parse().map_err(|_| {
                CfkError::BadArgument("--max-val expects an integer or auto".into())
            })?),
        };
    let report = invariants::invariants(&c, max_len, max_val)?;
    match &report.aseq {
        Some((aseq, orientation)) => {
            let terms: Vec<String> = aseq.terms.iter().map(|t| t.to_string()).collect();
            println!(
                "{{\"tau\": {}, \"epsilon\": {}, \"a_sequence\": [{}], \"tail\": {}, \"orientation\": \"{}\", \"max_len\": {}, \"max_val\": {}}}",
                report.tau,
                report.epsilon,
                terms.join(", "),
                tail_json(&aseq.tail),
                match orientation {
                    Orientation::Direct => "direct",
                    Orientation::OfDual => "of-dual",
                },
                aseq.max_len,
                aseq.max_val,
            );
            Ok(())
        }
        None => {
            println!(
                "{{\"tau\": {}, \"epsilon\": {}, \"a_sequence\": null}}",
                report.tau, report.epsilon
            );
            Err(CfkError::UndefinedInvariant(
                "a-sequence undefined for ε = 0".into(),
            ))
        }
    }
}

fn cmd_compare(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let [x, y] = a.positional[..] else {
        return Err(CfkError::BadArgument("compare <a> <b>".into()));
    };
    println!("{}", order::compare(&load(x)?, &load(y)?)?);
    Ok(())
}

fn cmd_order(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    match a.positional[..] {
        ["arch", x, y] => {
            let nmax = a.int_flag("max-n")?.unwrap_or(8).max(1) as u32;
            let w = order::arch_equivalent(&load(x)?, &load(y)?, nmax)?;
            match w.outcome {
                ArchOutcome::Witness(n) => println!("{{\"witness\": {n}}}"),
                ArchOutcome::Unknown(b) => println!(
                    "{{\"witness\": null, \"searched_up_to\": {b}, \"forward\": {}, \"backward\": {}}}",
                    w.forward_confirmed, w.backward_confirmed
                ),
            }
            Ok(())
        }
        ["dominates", s, b] => {
            let nmax = a.int_flag("max-n")?.unwrap_or(6).max(1) as u32;
            let r = order::dominance_consistent(&load(s)?, &load(b)?, nmax)?;
            match r.outcome {
                DominanceOutcome::RefutedAt(n) => println!("{{\"refuted_at\": {n}}}"),
                DominanceOutcome::ConsistentUpTo(n) => match r.stopped_early {
                    Some(msg) => {
                        println!("{{\"consistent_up_to\": {n}, \"stopped_early\": \"{msg}\"}}")
                    }
                    None => println!("{{\"consistent_up_to\": {n}}}"),
                },
            }
            Ok(())
        }
        _ => Err(CfkError::BadArgument(
            "order arch <a> <b> --max-n 8 | order dominates <small> <big> --max-n 6".into(),
        )),
    }
}

fn poly_json(p: &LaurentPoly) -> String {
    let terms: Vec<String> = p.terms().map(|(e, c)| format!("[{e}, {c}]")).collect();
    format!(
        "{{\"terms\": [{}], \"display\": \"{p}\"}}",
        terms.join(", ")
    )
}

fn parse_poly(spec: &str) -> Result<LaurentPoly, CfkError> {
    // exponent:coefficient pairs, comma separated.
    let mut terms = Vec::new();
    for part in spec.split(',') {
        let (e, c) = part
            .split_once(':')
            .ok_or_else(|| CfkError::BadArgument("polynomial syntax: e:c,e:c,...".into()))?;
        let e: i64 = e
            .trim()
            .parse()
            .map_err(|_| CfkError::BadArgument("bad exponent".into()))?;
        let c: i64 = c
            .trim()
            .parse()
            .map_err(|_| CfkError::BadArgument("bad coefficient".into()))?;
        terms.push((e, c));
    }
    Ok(LaurentPoly::from_terms(&terms))
}

fn cmd_alexander(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let [kind] = a.positional[..] else {
        return Err(CfkError::BadArgument(
            "alexander <torus|cable> --p P --q Q".into(),
        ));
    };
    let p = a.require_int("p")?;
    let q = a.require_int("q")?;
    let poly = match kind {
        "torus" => laurent::torus_alexander(p, q)?,
        "cable" => {
            let companion = match a.flag("companion") {
                // Default companion: the right-handed trefoil polynomial.
                None => LaurentPoly::from_terms(&[(2, 1), (1, -1), (0, 1)]),
                Some(spec) => parse_poly(spec)?,
            };
            laurent::cable_alexander(&companion, p, q)?
        }
        _ => {
            return Err(CfkError::BadArgument(format!(
                "unknown alexander target {kind}"
            )))
        }
    };
    println!("{}", poly_json(&poly));
    Ok(())
}

fn cmd_render(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let [path] = a.positional[..] else {
        return Err(CfkError::BadArgument(
            "render <file> --out <svg> [--window imin,imax,jmin,jmax]".into(),
        ));
    };
    let c = load(path)?;
    let window = match a.flag("window") {
        None => Window::Auto,
        Some(spec) => {
            let parts: Vec<i64> = spec
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| {
                    CfkError::BadArgument("--window expects imin,imax,jmin,jmax".into())
                })?;
            let [imin, imax, jmin, jmax] = parts[..] else {
                return Err(CfkError::BadArgument(
                    "--window expects four integers".into(),
                ));
            };
            Window::Explicit {
                imin,
                imax,
                jmin,
                jmax,
            }
        }
    };
    let svg = render::render_svg(&c, window)?;
    emit(a.flag("out"), &svg)
}

fn cmd_suite(argv: &[String]) -> Result<(), CfkError> {
    let a = parse_args(argv)?;
    let [section] = a.positional[..] else {
        return Err(CfkError::BadArgument(
            "suite <section2|section3|section4|main> [--n N] [--k K] [--max-n N] [--out -] [--json file]".into(),
        ));
    };
    let n = a.int_flag("n")?.unwrap_or(2);
    let kmax = a.int_flag("k")?.unwrap_or(1).max(1) as u32;
    let nbound = a.int_flag("max-n")?.unwrap_or(4).max(1) as u32;
    let report = match section {
        "section2" => {
            let corpus = suite::corpus_generate(n, kmax, &(2..=n + 1).collect::<Vec<_>>())?;
            let complexes: Vec<Complex> = corpus.items.into_iter().map(|i| i.complex).collect();
            suite::check_epsilon_calculus(&complexes)
        }
        "section3" => {
            let corpus = suite::corpus_generate(n, kmax, &(2..=n + 1).collect::<Vec<_>>())?;
            suite::check_section3(&corpus.items, n)
        }
        "section4" => suite::check_section4_corpus(n, kmax, nbound)?,
        "main" => {
            let nrange: Vec<i64> = (2..=n.max(3)).collect();
            suite::check_main_theorem(&nrange, nbound)
        }
        _ => {
            return Err(CfkError::BadArgument(format!(
                "unknown suite section {section}"
            )))
        }
    };
    emit(a.flag("out"), &report.render_text())?;
    if let Some(json_path) = a.flag("json") {
        emit(Some(json_path), &report.render_json())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CfkError::InvalidComplex(vec![
            "suite reported failures".into()
        ]))
    }
}
