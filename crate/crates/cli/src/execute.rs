use std::collections::BTreeMap;
use std::path::PathBuf;

use famzv::{
    famzv_adele, odd_primes_in_range, resolve_sign_convention, verify_classic_printed,
    verify_corollary, verify_general, verify_lemma2, verify_lemma2_all, verify_main,
    verify_quadrature, verify_reversal, Corollary, CorollaryForm, Error, MainMode, Result,
    RunOptions, SignConvention, SignedIndex, VerificationReport, ZetaCache,
};
use serde_json::{json, Value};

use crate::args::{
    Checking, ClassicForm, Cli, Command, Convention, CorForm, Mode, Output, Sweep, Target,
    CACHE_DIR_VAR, CACHE_FILE,
};

/// Runs one command. `Ok(true)` means every judged check held.
pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Zeta(a) => {
            let index: SignedIndex = a.index.parse()?;
            let primes = parse_primes(&a.primes)?;
            let values = famzv_adele(&index, &primes)?;
            let mut map = BTreeMap::new();
            for r in values.iter() {
                println!("{}: {}", r.prime(), r.value());
                map.insert(r.prime().to_string(), json!(r.value()));
            }
            if let Some(path) = a.out {
                let doc = json!({ "index": index.to_string(), "values": map });
                write_value(&path, &doc)?;
            }
            Ok(true)
        }
        Command::Quadcheck(a) => {
            let report = verify_quadrature(a.weight, a.z, a.nodes)?;
            finish(report, &a.output)
        }
        Command::Verify { target } => verify(target),
    }
}

fn verify(target: Target) -> Result<bool> {
    match target {
        Target::Main {
            n,
            m,
            checking,
            sweep,
        } => with_sweep(&sweep, check_mode(&checking)?, |primes, opts| {
            verify_main(n, m, primes, MainMode::Alternating, opts)
        }),
        Target::Kamano {
            n,
            m,
            form,
            checking,
            sweep,
        } => {
            let check = check_mode(&checking)?;
            with_sweep(&sweep, check, |primes, opts| match form {
                ClassicForm::Corrected => verify_main(n, m, primes, MainMode::Classic, opts),
                ClassicForm::Printed => verify_classic_printed(n, m, primes, opts),
            })
        }
        Target::General {
            s,
            t,
            n,
            m,
            convention,
            checking,
            sweep,
        } => {
            let conv = match convention {
                Convention::Corrected => SignConvention::Corrected,
                Convention::Printed => SignConvention::Printed,
            };
            with_sweep(&sweep, check_mode(&checking)?, |primes, opts| {
                verify_general(s, t, n, m, primes, conv, opts)
            })
        }
        Target::Convention { s, t, n, m, sweep } => {
            let primes = parse_primes(&sweep.primes)?;
            let cache = open_cache(&sweep.output)?;
            let mut opts = RunOptions::default();
            if let Some(c) = &cache {
                opts = opts.with_cache(c);
            }
            let mut res = resolve_sign_convention(s, t, n, m, &primes, &opts)?;
            if let Some(c) = &cache {
                c.flush()?;
            }
            for r in &mut res.reports {
                if sweep.output.stable_timing {
                    r.elapsed_ms = 0;
                }
            }
            let verdict = format!("{:?}", res.verdict).to_lowercase();
            println!(
                "convention s={s} t={t} n={n} m={m}: {verdict} (degenerate: {})",
                res.degenerate
            );
            if let Some(path) = &sweep.output.out {
                let reports: Vec<Value> = res
                    .reports
                    .iter()
                    .map(|r| serde_json::to_value(r).expect("report is serializable"))
                    .collect();
                let doc =
                    json!({ "verdict": verdict, "degenerate": res.degenerate, "reports": reports });
                write_value(path, &doc)?;
            }
            if let Some(path) = &sweep.output.csv {
                let csv: String = res
                    .reports
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let text = r.to_csv();
                        if i == 0 {
                            text
                        } else {
                            text.lines().skip(1).map(|l| format!("{l}\n")).collect()
                        }
                    })
                    .collect();
                std::fs::write(path, csv)?;
            }
            Ok(res.reports[0].passed())
        }
        Target::Cor1 { n, m, form, sweep } => with_sweep(&sweep, None, |primes, opts| {
            verify_corollary(Corollary::First, n, m, primes, cor_form(form), opts)
        }),
        Target::Cor2 { n, m, form, sweep } => with_sweep(&sweep, None, |primes, opts| {
            verify_corollary(Corollary::Second, n, m, primes, cor_form(form), opts)
        }),
        Target::Reversal { weight, sweep } => with_sweep(&sweep, None, |primes, opts| {
            verify_reversal(weight, primes, opts)
        }),
        Target::Lemma2 {
            alpha,
            beta,
            weight,
            sweep,
        } => {
            let primes = parse_primes(&sweep.primes)?;
            let report = match (alpha, beta, weight) {
                (Some(a), Some(b), _) => verify_lemma2(&a.parse()?, &b.parse()?, &primes)?,
                (_, _, Some(w)) => verify_lemma2_all(w, &primes)?,
                _ => {
                    return Err(Error::Parameter(
                        "give --alpha and --beta, or --weight".into(),
                    ))
                }
            };
            finish(report, &sweep.output)
        }
    }
}

fn cor_form(f: CorForm) -> CorollaryForm {
    match f {
        CorForm::Derived => CorollaryForm::Derived,
        CorForm::Printed => CorollaryForm::Printed,
    }
}

fn check_mode(c: &Checking) -> Result<Option<u64>> {
    match (c.mode, c.seed) {
        (Mode::Symbolic, _) => Ok(None),
        (Mode::Evaluate, Some(seed)) => Ok(Some(seed)),
        (Mode::Evaluate, None) => Err(Error::Parameter("--mode evaluate requires --seed".into())),
    }
}

fn with_sweep(
    sweep: &Sweep,
    evaluate_seed: Option<u64>,
    run: impl FnOnce(&[u64], &RunOptions<'_>) -> Result<VerificationReport>,
) -> Result<bool> {
    let primes = parse_primes(&sweep.primes)?;
    let cache = open_cache(&sweep.output)?;
    let mut opts = match evaluate_seed {
        Some(seed) => RunOptions::evaluate(seed),
        None => RunOptions::default(),
    };
    if let Some(c) = &cache {
        opts = opts.with_cache(c);
    }
    let report = run(&primes, &opts)?;
    if let Some(c) = &cache {
        c.flush()?;
    }
    finish(report, &sweep.output)
}

fn finish(mut report: VerificationReport, out: &Output) -> Result<bool> {
    if out.stable_timing {
        report.elapsed_ms = 0;
    }
    println!("{}", summary(&report));
    if let Some(path) = &out.out {
        report.write_json(path)?;
    }
    if let Some(path) = &out.csv {
        report.write_csv(path)?;
    }
    Ok(report.passed())
}

fn summary(r: &VerificationReport) -> String {
    let params: Vec<String> = r
        .params
        .iter()
        .map(|(k, v)| format!("{k}={}", plain(v)))
        .collect();
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    let mut line = format!(
        "{} {}: {verdict}, {} rows",
        r.name,
        params.join(" "),
        r.rows.len()
    );
    if !r.failures.is_empty() {
        line += &format!(", failing primes {:?}", r.failures);
    }
    if !r.failing_cases.is_empty() {
        line += &format!(", failing cases {:?}", r.failing_cases);
    }
    if !r.informational_failures.is_empty() {
        line += &format!(
            ", informational differences at {:?}",
            r.informational_failures
        );
    }
    line
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn open_cache(out: &Output) -> Result<Option<ZetaCache>> {
    let path = out.cache.clone().or_else(|| {
        std::env::var_os(CACHE_DIR_VAR)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(CACHE_FILE))
    });
    path.map(ZetaCache::open).transpose()
}

/// Parses `LO..HI` (inclusive) into the odd primes it contains.
pub fn parse_primes(text: &str) -> Result<Vec<u64>> {
    let malformed = || Error::Parameter(format!("malformed prime range {text:?}, expected LO..HI"));
    let (lo, hi) = text.split_once("..").ok_or_else(malformed)?;
    let lo: u64 = lo.trim().parse().map_err(|_| malformed())?;
    let hi: u64 = hi.trim().parse().map_err(|_| malformed())?;
    let primes = odd_primes_in_range(lo, hi)?;
    if primes.is_empty() {
        return Err(Error::Parameter(format!("no odd primes in {lo}..{hi}")));
    }
    Ok(primes)
}

fn write_value(path: &std::path::Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string(v).expect("value is serializable");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
