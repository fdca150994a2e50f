use std::fs;
use std::path::Path;

use markov_spherical::action::{builtin_parity, builtin_zmod, ActionError, ActionParts, Observable};
use markov_spherical::chain::{
    builtin_surface_special, builtin_uniform, ChainError, ChainParts, MarkovSystem,
};
use markov_spherical::freegroup::Alphabet;
use markov_spherical::io::{ActionFile, ChainFile, CertificateFile, FormatError};
use markov_spherical::rational::{parse_rational, Rational};
use markov_spherical::{FiniteAction, GoodSubgraphCertificate};

use crate::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

fn format_error(source: &str, e: FormatError) -> CliError {
    CliError::io(format!("{source}: {e}"))
}

pub fn chain_error(e: ChainError) -> CliError {
    CliError::invalid(e.to_string())
}

pub fn action_error(e: ActionError) -> CliError {
    CliError::invalid(e.to_string())
}

/// Unvalidated chain data from a file or a builtin name.
pub fn chain_parts(spec: &str) -> Result<ChainParts, CliError> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let m = match rest.split(':').collect::<Vec<_>>()[..] {
            ["uniform", r] => {
                let r = r
                    .parse()
                    .map_err(|_| CliError::io(format!("bad rank in {spec:?}")))?;
                builtin_uniform(r).map_err(chain_error)?
            }
            ["surface"] => builtin_surface_special(),
            _ => return Err(CliError::io(format!("unknown builtin chain {spec:?}"))),
        };
        return Ok(m.parts().clone());
    }
    let text = read(Path::new(spec))?;
    ChainFile::parse(&text)
        .and_then(ChainFile::into_parts)
        .map_err(|e| format_error(spec, e))
}

pub fn chain(spec: &str) -> Result<MarkovSystem, CliError> {
    chain_parts(spec)?.build().map_err(chain_error)
}

pub enum ActionSource {
    Builtin(FiniteAction),
    Parts(ActionParts),
}

pub fn action_source(spec: &str, alphabet: &Alphabet) -> Result<ActionSource, CliError> {
    let rank = alphabet.rank();
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let a = match rest.split(':').collect::<Vec<_>>()[..] {
            ["parity"] => builtin_parity(rank),
            ["zmod", n] => {
                let n = n
                    .parse()
                    .map_err(|_| CliError::io(format!("bad modulus in {spec:?}")))?;
                builtin_zmod(n, rank).map_err(action_error)?
            }
            _ => return Err(CliError::io(format!("unknown builtin action {spec:?}"))),
        };
        return Ok(ActionSource::Builtin(a));
    }
    let text = read(Path::new(spec))?;
    let parts = ActionFile::parse(&text)
        .and_then(|f| f.into_parts(alphabet))
        .map_err(|e| format_error(spec, e))?;
    Ok(ActionSource::Parts(parts))
}

pub fn action(spec: &str, alphabet: &Alphabet) -> Result<FiniteAction, CliError> {
    match action_source(spec, alphabet)? {
        ActionSource::Builtin(a) => Ok(a),
        ActionSource::Parts(p) => p.build().map_err(action_error),
    }
}

/// `indicator:POINT` or a comma-separated list of rationals, one per point.
pub fn observable(spec: &str, action: &FiniteAction) -> Result<Observable<Rational>, CliError> {
    if let Some(point) = spec.strip_prefix("indicator:") {
        let x = action
            .point_index(point)
            .ok_or_else(|| CliError::io(format!("action has no point {point:?}")))?;
        return Ok(Observable::indicator(action.len(), x));
    }
    let values = spec
        .split(',')
        .map(|v| {
            parse_rational(v.trim()).ok_or_else(|| CliError::io(format!("{v:?} is not a rational number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != action.len() {
        return Err(CliError::io(format!(
            "--f has {} values but the action has {} points",
            values.len(),
            action.len()
        )));
    }
    Ok(Observable::new(values))
}

pub fn certificate(path: &Path, m: &MarkovSystem) -> Result<GoodSubgraphCertificate, CliError> {
    let text = read(path)?;
    let source = path.display().to_string();
    CertificateFile::parse(&text)
        .map_err(|e| format_error(&source, e))?
        .to_certificate(m)
        .map_err(|e| CliError::invalid(format!("{source}: {e}")))
}
