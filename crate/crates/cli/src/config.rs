//! Flat key=value config files.
//!
//! Lines are `key = value`; `#` starts a comment. Keys mirror the CLI flag
//! names, so a dumped config feeds straight back through `--config`. Flags
//! given on the command line win over file values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Keys understood by the parameter-taking subcommands.
pub const KNOWN_KEYS: &[&str] = &[
    "kind",
    "eps",
    "mu",
    "nlambda",
    "courant",
    "warmup_periods",
    "measure_periods",
    "ramp_periods",
    "snapshot_every",
    "axis",
    "values",
    "with_sim",
    "out",
];

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    map: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown config key '{key}'", lineno + 1));
            }
            map.insert(key, value.trim().to_string());
        }
        Ok(Self { map })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        debug_assert!(KNOWN_KEYS.contains(&key));
        self.map.get(key).map(String::as_str)
    }
}

/// Collects the effective key=value pairs of a run for `--dump-config`.
#[derive(Debug, Default)]
pub struct EffectiveConfig {
    entries: Vec<(String, String)>,
}

impl EffectiveConfig {
    /// Sets a key, replacing an earlier value.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        debug_assert!(KNOWN_KEYS.contains(&key));
        let value = value.into();
        if let Some(entry) = self.entries.iter_mut().find(|(k, _)| k == key) {
            entry.1 = value;
        } else {
            self.entries.push((key.to_string(), value));
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let cfg =
            FileConfig::parse("# a comment\n kind = dielectric \n\neps=3,4 # trailing\n").unwrap();
        assert_eq!(cfg.get("kind"), Some("dielectric"));
        assert_eq!(cfg.get("eps"), Some("3,4"));
        assert_eq!(cfg.get("mu"), None);
    }

    #[test]
    fn rejects_unknown_keys() {
        let err = FileConfig::parse("epsilon = 3\n").unwrap_err();
        assert!(err.contains("unknown config key"));
    }

    #[test]
    fn dump_round_trips() {
        let mut eff = EffectiveConfig::default();
        eff.set("kind", "magnetic");
        eff.set("mu", "4,3");
        let text = eff.render();
        let parsed = FileConfig::parse(&text).unwrap();
        assert_eq!(parsed.get("kind"), Some("magnetic"));
        assert_eq!(parsed.get("mu"), Some("4,3"));
    }
}
