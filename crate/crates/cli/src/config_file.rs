//! `--config` files: one `key=value` per line, `#` comments, keys equal to
//! long flag names. Entries whose flag also appears on the command line are
//! dropped; the rest are spliced in right after the subcommand.

use std::ffi::OsString;

const SUBCOMMANDS: [&str; 6] = ["multiplier", "sweep", "solve", "study-delta", "study-beta", "neginf"];

/// Boolean flags; a config value of `true` adds the flag, `false` omits it.
const SWITCHES: [&str; 2] = ["local", "no-timestamp"];

pub fn expand_args(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&argv) else { return Ok(argv) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config file {path}: {e}"))?;
    let given: Vec<&str> = argv
        .iter()
        .filter_map(|a| a.to_str()?.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a))
        .collect();
    let injected: Vec<String> = parse(&text)?
        .into_iter()
        .filter(|a| !given.contains(&a[2..].split('=').next().unwrap_or("")))
        .collect();
    let Some(sub) = argv.iter().position(|a| a.to_str().is_some_and(|s| SUBCOMMANDS.contains(&s))) else {
        return Ok(argv);
    };
    let mut out = Vec::with_capacity(argv.len() + injected.len());
    out.push(argv[0].clone());
    out.push(argv[sub].clone());
    out.extend(injected.into_iter().map(OsString::from));
    out.extend(argv[1..sub].iter().cloned());
    out.extend(argv[sub + 1..].iter().cloned());
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<String> {
    let mut it = argv.iter().skip(1).filter_map(|a| a.to_str());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().map(str::to_string);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut args = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got '{line}'", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: invalid key '{key}'", lineno + 1));
        }
        if SWITCHES.contains(&key) {
            match value {
                "true" => args.push(format!("--{key}")),
                "false" => {}
                _ => return Err(format!("config line {}: {key} expects true or false", lineno + 1)),
            }
        } else {
            args.push(format!("--{key}={value}"));
        }
    }
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_comments_and_switches() {
        let text = "# sweep setup\nn = 2\nbeta=-inf  # limit\nno-timestamp=true\nlocal=false\n";
        assert_eq!(parse(text).unwrap(), vec!["--n=2", "--beta=-inf", "--no-timestamp"]);
        assert!(parse("just words").is_err());
        assert!(parse("local=maybe").is_err());
    }

    #[test]
    fn config_entries_precede_command_line_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "delta=0.5\nn=2\n").unwrap();
        let argv: Vec<OsString> = ["perilap", "--config", path.to_str().unwrap(), "multiplier", "--delta", "0.1"]
            .iter()
            .map(OsString::from)
            .collect();
        let out: Vec<String> = expand_args(argv).unwrap().into_iter().map(|s| s.into_string().unwrap()).collect();
        assert_eq!(out, ["perilap", "multiplier", "--n=2", "--config", path.to_str().unwrap(), "--delta", "0.1"]);
    }
}
