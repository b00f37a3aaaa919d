//! Flat key=value configuration files mirroring the long flags.
//!
//! Blank lines and `#` comments are skipped. Keys use the flag spelling
//! without the leading dashes (`A=50`, `omega-sb=10`). Values parse exactly
//! like the flag would; flags passed on the command line take precedence.
//! Unknown keys are rejected so typos cannot silently change a run.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Default)]
pub struct KeyValues {
    values: HashMap<String, String>,
    source: String,
}

impl KeyValues {
    pub fn load(path: &Path) -> Result<Self, String> {
        let source = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {source}: {e}"))?;
        let mut values = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("{source}:{}: expected key=value", idx + 1))?;
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(KeyValues { values, source })
    }

    pub fn take_raw(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    /// Removes and parses `key`; `None` when the file does not set it.
    pub fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: Display,
    {
        match self.values.remove(key) {
            None => Ok(None),
            Some(text) => text
                .parse()
                .map(Some)
                .map_err(|e| format!("{}: bad value for '{key}': {e}", self.source)),
        }
    }

    /// Errors on any key no `take` consumed, naming the first offender.
    pub fn finish(self) -> Result<(), String> {
        let mut leftover: Vec<&String> = self.values.keys().collect();
        leftover.sort();
        match leftover.first() {
            None => Ok(()),
            Some(key) => Err(format!("{}: unknown config key '{key}'", self.source)),
        }
    }
}
