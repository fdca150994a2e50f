use std::path::Path;

use markov_spherical::admissibility::{
    check_admissible, find_good_subgraph, validate_certificate, AdmissibilityReport,
};
use markov_spherical::io::CertificateFile;
use markov_spherical::operators::{
    convergence_series, markov_step_raw, oracle_check_with, LiftedObservable, OperatorError,
    System,
};
use markov_spherical::tailmaps::run_suite;
use markov_spherical::{GoodSubgraphCertificate, MarkovSystem, Rational};

use crate::source::{self, ActionSource};
use crate::{CliError, EXIT_INVALID, EXIT_NOT_ADMISSIBLE, EXIT_OK, EXIT_PROPERTY};

pub fn validate(chain: &str, action: Option<&str>) -> Result<i32, CliError> {
    let parts = source::chain_parts(chain)?;
    let mut code = EXIT_OK;
    let diagnostics = parts.validate().map_err(source::chain_error)?;
    if diagnostics.is_empty() {
        println!("chain: ok ({} vertices, rank {})", parts.vertices.len(), parts.alphabet.rank());
    } else {
        println!("chain: {} problem(s)", diagnostics.len());
        for d in &diagnostics {
            println!("  {d}");
        }
        code = EXIT_INVALID;
    }
    if let Some(spec) = action {
        match source::action_source(spec, &parts.alphabet)? {
            ActionSource::Builtin(a) => println!("action: ok ({} points)", a.len()),
            ActionSource::Parts(p) => {
                let diagnostics = p.validate().map_err(source::action_error)?;
                if diagnostics.is_empty() {
                    println!("action: ok ({} points)", p.points.len());
                } else {
                    println!("action: {} problem(s)", diagnostics.len());
                    for d in &diagnostics {
                        println!("  {d}");
                    }
                    code = EXIT_INVALID;
                }
            }
        }
    }
    Ok(code)
}

fn describe(m: &MarkovSystem, cert: &GoodSubgraphCertificate) -> String {
    let path = |p: &[usize]| {
        p.iter()
            .map(|&v| m.vertex_name(v))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "u = {}, w = {}, p = ({}), q = ({}), p* = ({}), q* = ({})",
        m.vertex_name(cert.u),
        m.vertex_name(cert.w),
        path(&cert.p),
        path(&cert.q),
        path(&cert.p_star),
        path(&cert.q_star)
    )
}

fn print_report(m: &MarkovSystem, report: &AdmissibilityReport, k_max: usize) {
    let yes = |b: bool| if b { "yes" } else { "no" };
    println!("strongly connected: {}", yes(report.strongly_connected));
    match (&report.certificate, report.order) {
        (Some(cert), Some(k)) => println!("good subgraph: order {k}: {}", describe(m, cert)),
        _ => println!("good subgraph: none of order <= {k_max}"),
    }
    match &report.full_gamma_vertex {
        Some((v, gens)) => {
            let words: Vec<String> = gens.iter().map(|g| m.alphabet().format(g)).collect();
            println!(
                "full loop subgroup at: {} (generated by {})",
                m.vertex_name(*v),
                words.join(", ")
            );
        }
        None => println!("full loop subgroup at: none"),
    }
    match report.order.filter(|_| report.is_admissible()) {
        Some(k) => println!("admissible: yes, order {k}"),
        None => println!("admissible: no"),
    }
}

fn write_certificate(
    m: &MarkovSystem,
    cert: &GoodSubgraphCertificate,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let json = CertificateFile::from_certificate(m, cert).to_json();
    match out {
        Some(path) => source::write(path, &(json + "\n")),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

pub fn admissible(chain: &str, k_max: usize, out: Option<&Path>) -> Result<i32, CliError> {
    let m = source::chain(chain)?;
    let report = check_admissible(&m, k_max);
    print_report(&m, &report, k_max);
    if let (Some(cert), Some(path)) = (&report.certificate, out) {
        write_certificate(&m, cert, Some(path))?;
    }
    Ok(if report.is_admissible() {
        EXIT_OK
    } else {
        EXIT_NOT_ADMISSIBLE
    })
}

fn search(m: &MarkovSystem, k: Option<usize>, k_max: usize) -> Option<GoodSubgraphCertificate> {
    match k {
        Some(k) => find_good_subgraph(m, k),
        None => (1..=k_max).find_map(|k| find_good_subgraph(m, k)),
    }
}

pub fn goodsub(chain: &str, k: Option<usize>, k_max: usize, out: Option<&Path>) -> Result<i32, CliError> {
    let m = source::chain(chain)?;
    match search(&m, k, k_max) {
        Some(cert) => {
            eprintln!("good subgraph of order {}: {}", cert.k, describe(&m, &cert));
            write_certificate(&m, &cert, out)?;
            Ok(EXIT_OK)
        }
        None => {
            let range = k.map_or(format!("<= {k_max}"), |k| k.to_string());
            eprintln!("no good subgraph of order {range}");
            Ok(EXIT_NOT_ADMISSIBLE)
        }
    }
}

pub struct TailcheckConfig<'a> {
    pub chain: &'a str,
    pub cert: Option<&'a Path>,
    pub k_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub word_len: usize,
    pub occurrence: Option<usize>,
    pub out: Option<&'a Path>,
}

pub fn tailcheck(cfg: TailcheckConfig) -> Result<i32, CliError> {
    let m = source::chain(cfg.chain)?;
    let cert = match cfg.cert {
        Some(path) => {
            let cert = source::certificate(path, &m)?;
            let violations = validate_certificate(&m, &cert);
            if !violations.is_empty() {
                let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
                return Err(CliError::invalid(format!(
                    "certificate {} is not a good subgraph:\n{}",
                    path.display(),
                    lines.join("\n")
                )));
            }
            cert
        }
        None => match search(&m, None, cfg.k_max) {
            Some(cert) => cert,
            None => {
                eprintln!("no good subgraph of order <= {}", cfg.k_max);
                return Ok(EXIT_NOT_ADMISSIBLE);
            }
        },
    };
    let n = cfg.occurrence.unwrap_or(2 * cert.k + 2);
    let report = run_suite(&m, &cert, cfg.trials, cfg.word_len, n, cfg.seed).map_err(source::chain_error)?;
    println!(
        "tailcheck: {report} (k = {}, occurrence {n}, word length {}, seed {})",
        cert.k, cfg.word_len, cfg.seed
    );
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = cfg.out {
        source::write(path, &(json + "\n"))?;
    } else if let Some(failure) = &report.first_failure {
        println!(
            "{}",
            serde_json::to_string_pretty(failure).expect("report serializes")
        );
    }
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_PROPERTY
    })
}

pub struct ConvergeConfig<'a> {
    pub chain: &'a str,
    pub action: &'a str,
    pub function: &'a str,
    pub k: Option<usize>,
    pub k_max: usize,
    pub n_max: usize,
    pub exact_cap: usize,
    /// Oracle cap, when the cross-check is requested.
    pub oracle: Option<usize>,
    pub out: Option<&'a Path>,
    pub fault_step: bool,
}

fn ignore_action(
    matrix: &[Vec<Rational>],
    label_maps: &[Vec<usize>],
    phi: &LiftedObservable<Rational>,
) -> LiftedObservable<Rational> {
    let identity: Vec<Vec<usize>> = vec![(0..phi.points()).collect(); label_maps.len()];
    markov_step_raw(matrix, &identity, phi)
}

fn operator_error(e: OperatorError) -> CliError {
    CliError::invalid(e.to_string())
}

pub fn converge(cfg: ConvergeConfig) -> Result<i32, CliError> {
    let m = source::chain(cfg.chain)?;
    let a = source::action(cfg.action, m.alphabet())?;
    let f = source::observable(cfg.function, &a)?;
    let nu = m.stationary_distribution().map_err(source::chain_error)?;
    let sys = System::new(&m, &nu, &a).map_err(operator_error)?;
    let k = match cfg.k {
        Some(k) => k,
        None => match search(&m, None, cfg.k_max) {
            Some(cert) => cert.k,
            None => {
                eprintln!("no good subgraph of order <= {}; pass --k", cfg.k_max);
                return Ok(EXIT_NOT_ADMISSIBLE);
            }
        },
    };
    if let Some(cap) = cfg.oracle {
        let outcome = if cfg.fault_step {
            oracle_check_with(&sys, &f, cap, &ignore_action)
        } else {
            oracle_check_with(&sys, &f, cap, &markov_step_raw::<Rational>)
        };
        match outcome {
            Ok(()) => eprintln!("oracle: operator matches path sum for n <= {cap}"),
            Err(OperatorError::OracleMismatch {
                n,
                point,
                operator,
                direct,
            }) => {
                println!("oracle mismatch: n = {n}, point = {point}, operator = {operator}, path sum = {direct}");
                return Ok(EXIT_PROPERTY);
            }
            Err(e) => return Err(operator_error(e)),
        }
    }
    let report = convergence_series(&sys, &f, k, cfg.n_max, cfg.exact_cap).map_err(operator_error)?;
    let mut buf = Vec::new();
    report
        .write_csv(&mut buf)
        .map_err(|e| CliError::io(format!("cannot format CSV: {e}")))?;
    let text = String::from_utf8(buf).expect("CSV is UTF-8");
    match cfg.out {
        Some(path) => source::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}
