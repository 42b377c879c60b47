//! `--config FILE`: a flat TOML table whose keys are long flag names.
//!
//! Config values are spliced in right after the subcommand so that flags on
//! the command line, which come later, override them.

use std::ffi::OsString;

use clap::CommandFactory;
use toml::Value;

use crate::Cli;

/// Finds `--config PATH` or `--config=PATH` anywhere in `args`.
fn config_path(args: &[OsString]) -> Option<String> {
    let mut it = args.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn flag_values(v: &Value) -> Result<Vec<String>, String> {
    Ok(match v {
        Value::String(s) => vec![s.clone()],
        Value::Integer(i) => vec![i.to_string()],
        Value::Float(f) => vec![f.to_string()],
        Value::Array(items) => items.iter().map(flag_values).collect::<Result<Vec<_>, _>>()?.concat(),
        other => return Err(format!("unsupported config value {other}")),
    })
}

/// `args` with the config file's flags inserted after the subcommand name.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config `{path}`: {e}"))?;
    let table: toml::Table = toml::from_str(&text).map_err(|e| format!("config `{path}`: {e}"))?;

    let cmd = Cli::command();
    let sub_names: Vec<String> = cmd.get_subcommands().map(|s| s.get_name().to_string()).collect();
    let Some(pos) = args.iter().position(|a| sub_names.iter().any(|n| a.to_str() == Some(n))) else {
        return Ok(args);
    };
    let sub = cmd.find_subcommand(args[pos].to_str().unwrap_or_default()).expect("found above");
    let known: Vec<(String, bool)> = cmd
        .get_arguments()
        .chain(sub.get_arguments())
        .filter_map(|a| a.get_long().map(|l| (l.to_string(), !a.get_action().takes_values())))
        .collect();

    let mut injected = Vec::new();
    for (key, value) in &table {
        if key == "config" {
            continue;
        }
        let Some((_, is_switch)) = known.iter().find(|(l, _)| l == key) else {
            // keys for other subcommands are ignored
            continue;
        };
        if *is_switch {
            match value {
                Value::Boolean(true) => injected.push(OsString::from(format!("--{key}"))),
                Value::Boolean(false) => {}
                _ => return Err(format!("config key `{key}` must be true or false")),
            }
            continue;
        }
        injected.push(OsString::from(format!("--{key}")));
        injected.extend(flag_values(value)?.into_iter().map(OsString::from));
    }
    let mut out = args[..=pos].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[pos + 1..]);
    Ok(out)
}
