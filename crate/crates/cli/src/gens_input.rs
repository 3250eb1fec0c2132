//! Reading classes and generator sequences from the command line.
//!
//! A generator source is one of:
//! - a builtin family: `gamma`, `gamma:K`, `x`, `Y`, `e`, `x2+Y`;
//! - a file, either JSON `{"generators": [{"name": .., "class": ..}]}` or
//!   one `name = expr` (or bare `expr`) per line, `#` starting a comment;
//! - an inline list of expressions separated by `;`.
//!
//! Later expressions may refer to earlier names.

use std::path::Path;

use cobord::expr::{parse_class, Env};
use cobord::fgl::FglTable;
use cobord::generators::{GeneratorEntry, GeneratorSet, Provenance};
use cobord::Poly;
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
struct GensFile {
    generators: Vec<NamedExpr>,
}

#[derive(Deserialize)]
struct NamedExpr {
    name: Option<String>,
    class: String,
}

/// A class given inline or as the path of a file holding one expression.
pub fn read_class(src: &str, table: &FglTable) -> Result<Poly, CliError> {
    let text = if Path::new(src).is_file() {
        std::fs::read_to_string(src).map_err(|e| CliError::Usage(format!("cannot read {src}: {e}")))?
    } else {
        src.to_string()
    };
    let env = Env::new(table);
    parse_class(text.trim(), &env).map_err(|e| CliError::Usage(format!("class '{}': {e}", text.trim())))
}

/// Resolves a generator source against a table of truncation `table.max_dim()`.
pub fn read_generators(source: &str, table: &FglTable) -> Result<GeneratorSet, CliError> {
    let half = table.max_dim() as usize / 2;
    let builtin = match source {
        "gamma" => Some(GeneratorSet::gamma(table, half)),
        "x" => Some(GeneratorSet::x_family(table)),
        "Y" | "y" => Some(GeneratorSet::y_family(table, half)),
        "e" => Some(GeneratorSet::e_family(table, half)),
        "x2+Y" | "x2+y" => Some(
            GeneratorSet::x_family(table).map(|x| x.select(&[0])).and_then(|x2| Ok(x2.concat(&GeneratorSet::y_family(table, half)?))),
        ),
        _ => None,
    };
    if let Some(set) = builtin {
        return set.map_err(CliError::from);
    }
    if let Some(k) = source.strip_prefix("gamma:") {
        let k: usize = k.parse().map_err(|_| CliError::Usage(format!("bad bound in '{source}'")))?;
        if 2 * k > 2 * half {
            return Err(CliError::Usage(format!("gamma:{k} needs --upto at least {}", 2 * k)));
        }
        return GeneratorSet::gamma(table, k).map_err(CliError::from);
    }
    let items = if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source).map_err(|e| CliError::Usage(format!("cannot read {source}: {e}")))?;
        if text.trim_start().starts_with('{') {
            let file: GensFile =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{source}: {e}")))?;
            file.generators.into_iter().map(|g| (g.name, g.class)).collect()
        } else {
            split_items(text.lines().map(|l| l.split('#').next().unwrap_or("")))
        }
    } else {
        split_items(source.split(';'))
    };
    build_set(items, table)
}

fn split_items<'a>(parts: impl Iterator<Item = &'a str>) -> Vec<(Option<String>, String)> {
    parts
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| match p.split_once('=') {
            Some((name, expr)) => (Some(name.trim().to_string()), expr.trim().to_string()),
            None => (None, p.to_string()),
        })
        .collect()
}

fn build_set(items: Vec<(Option<String>, String)>, table: &FglTable) -> Result<GeneratorSet, CliError> {
    if items.is_empty() {
        return Err(CliError::Usage("empty generator list".into()));
    }
    let mut env = Env::new(table);
    let mut set = GeneratorSet::new();
    for (name, expr) in items {
        let class = parse_class(&expr, &env).map_err(|e| CliError::Usage(format!("generator '{expr}': {e}")))?;
        let name = name.unwrap_or_else(|| expr.replace(' ', ""));
        let entry = GeneratorEntry::new(name.clone(), class.clone(), Provenance::Given { source: expr })
            .map_err(|e| CliError::Usage(format!("generator '{name}': {e}")))?;
        env.bind(name, class);
        set.push(entry);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cobord::fgl::fgl_coefficients;

    #[test]
    fn inline_lists_and_names() {
        let t = fgl_coefficients(8).unwrap();
        let set = read_generators("x2; x2^2", &t).unwrap();
        assert_eq!(set.names(), vec!["x2", "x2^2"]);
        let set = read_generators("a = CP2 - 9/8*CP1^2; b = a*CP1", &t).unwrap();
        assert_eq!(set.get("b").unwrap().dimension(), 6);
        assert!(read_generators("", &t).is_err());
        assert!(read_generators("CP1 + ", &t).is_err());
    }

    #[test]
    fn builtins_and_files() {
        let t = fgl_coefficients(12).unwrap();
        assert_eq!(read_generators("gamma", &t).unwrap().len(), 5);
        assert_eq!(read_generators("gamma:4", &t).unwrap().len(), 3);
        assert_eq!(read_generators("x2+Y", &t).unwrap().names(), vec!["x2", "y3", "y4", "y5", "y6"]);
        let dir = tempfile::tempdir().unwrap();
        let json = dir.path().join("g.json");
        std::fs::write(&json, r#"{"generators":[{"name":"x3","class":"-alpha2,2"}]}"#).unwrap();
        assert_eq!(read_generators(json.to_str().unwrap(), &t).unwrap().names(), vec!["x3"]);
        let txt = dir.path().join("g.txt");
        std::fs::write(&txt, "# two generators\nx3 = -alpha2,2\nx3*CP1\n").unwrap();
        assert_eq!(read_generators(txt.to_str().unwrap(), &t).unwrap().len(), 2);
    }
}
