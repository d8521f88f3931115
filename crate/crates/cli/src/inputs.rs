//! Groups, racks and cocycles from command-line text.

use std::path::Path;

use collapse_core::braiding::{Cocycle, CocycleLiteral};
use collapse_core::permcore::{find_fixture, load_fixture, GroupSpec, PermutationGroup};
use collapse_core::rack::{Rack, RackLiteral};

use crate::CliError;

/// A fixture name or a path to a group file. Returns the group and its display name.
pub fn load_group(source: &str, order_cap: usize) -> Result<(PermutationGroup, String), CliError> {
    if let Some(f) = find_fixture(source) {
        let g = load_fixture(f.name, order_cap)?;
        return Ok((g, f.name.to_string()));
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(CliError::input(format!(
            "{source:?} is neither a fixture nor a readable file"
        )));
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{source}: {e}")))?;
    let g = GroupSpec::parse(&text)?.generate(order_cap)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| source.to_string());
    Ok((g, name))
}

/// Inline JSON, `@path`, or an existing file.
fn json_text(spec: &str) -> Result<Option<String>, CliError> {
    let t = spec.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(t.to_string()));
    }
    let path = t.strip_prefix('@').unwrap_or(t);
    if t.starts_with('@') || Path::new(path).is_file() {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::input(format!("{path}: {e}")));
    }
    Ok(None)
}

/// `dihedral:p`, `abelian:k`, `four-cycles`, `double:<spec>`, or a rack literal.
pub fn parse_rack(spec: &str) -> Result<Rack, CliError> {
    if let Some(text) = json_text(spec)? {
        let lit: RackLiteral = serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("rack literal: {e}")))?;
        return Ok(Rack::from_literal(&lit)?);
    }
    let t = spec.trim();
    if let Some(inner) = t.strip_prefix("double:") {
        return Ok(parse_rack(inner)?.double());
    }
    let number = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::input(format!("bad rack size in {spec:?}")))
    };
    match t.split_once(':') {
        Some(("dihedral", p)) => Ok(Rack::dihedral(number(p)?)?),
        Some(("abelian", k)) => {
            let k = number(k)?;
            if k == 0 {
                return Err(CliError::input("abelian rack needs at least one point"));
            }
            Ok(Rack::abelian(k))
        }
        None if t == "four-cycles" => Ok(Rack::four_cycles()),
        _ => Err(CliError::input(format!("unknown rack {spec:?}"))),
    }
}

/// `constant:<root>`, a bare root such as `-1` or `zeta3`, or a cocycle literal.
pub fn parse_cocycle(rack: &Rack, spec: &str) -> Result<Cocycle, CliError> {
    let lit = match json_text(spec)? {
        Some(text) => serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("cocycle literal: {e}")))?,
        None => {
            let t = spec.trim();
            CocycleLiteral::Constant {
                constant: t.strip_prefix("constant:").unwrap_or(t).to_string(),
            }
        }
    };
    Ok(Cocycle::from_literal(rack, &lit)?)
}
