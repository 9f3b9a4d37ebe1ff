//! Binding set names from `--set`, `--inline` and `--random`.

use std::path::PathBuf;

use sumprod::expr::{parse_expr, Env, Expr};
use sumprod::harness::{random_sets, TrialSpec};
use sumprod::sets::{read_set_file, ScalarSet};
use sumprod::Error;

use crate::CliError;

/// `NAME=FILE`.
pub fn parse_set_arg(s: &str) -> Result<(String, PathBuf), String> {
    let (name, file) = s.split_once('=').ok_or("expected NAME=FILE")?;
    Ok((check_name(name)?, PathBuf::from(file)))
}

/// `NAME={scalar, …}`.
pub fn parse_inline_arg(s: &str) -> Result<(String, ScalarSet), String> {
    let (name, literal) = s.split_once('=').ok_or("expected NAME={...}")?;
    match parse_expr(literal).map_err(|e| e.to_string())? {
        Expr::Literal(set) => Ok((check_name(name)?, set)),
        _ => Err("the value must be a single set literal such as {1,2,3}".into()),
    }
}

fn check_name(name: &str) -> Result<String, String> {
    match parse_expr(name) {
        Ok(Expr::Name(n)) => Ok(n),
        _ => Err(format!("`{name}` is not a valid set name")),
    }
}

pub struct Bindings {
    pub env: Env,
    /// Non-fatal remarks about the inputs, e.g. merged duplicates.
    pub warnings: Vec<String>,
}

impl Bindings {
    pub fn load(files: &[(String, PathBuf)], inline: &[(String, ScalarSet)]) -> Result<Bindings, CliError> {
        let mut env = Env::new();
        let mut warnings = Vec::new();
        for (name, path) in files {
            let file = read_set_file(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if file.duplicates > 0 {
                warnings.push(format!(
                    "set {name}: {} duplicate scalar(s) in {} merged",
                    file.duplicates,
                    path.display()
                ));
            }
            env.insert(name.clone(), file.set);
        }
        for (name, set) in inline {
            env.insert(name.clone(), set.clone());
        }
        Ok(Bindings { env, warnings })
    }

    /// One environment per trial. Names not bound explicitly are filled from
    /// the random trial stream, `names.len()` consecutive draws per trial.
    pub fn instances(&self, names: &[&str], random: Option<&TrialSpec>) -> Result<Vec<Env>, CliError> {
        let missing: Vec<&str> = names.iter().copied().filter(|n| !self.env.contains_key(*n)).collect();
        if missing.is_empty() {
            return Ok(vec![self.env.clone()]);
        }
        let Some(spec) = random else {
            return Err(Error::UnboundName(missing[0].to_string()).into());
        };
        let draws = random_sets(&TrialSpec {
            trials: spec.trials * missing.len(),
            ..*spec
        })?;
        Ok(draws
            .chunks(missing.len())
            .map(|chunk| {
                let mut env = self.env.clone();
                for (name, set) in missing.iter().zip(chunk) {
                    env.insert(name.to_string(), set.clone());
                }
                env
            })
            .collect())
    }
}
