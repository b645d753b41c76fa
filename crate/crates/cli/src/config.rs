//! INI-style configuration and flag/file/default resolution.
//!
//! The file format is deliberately small: `[section]` headers matching
//! subcommand names, `key = value` lines, `#` comments, blank lines.
//! A `[defaults]` section applies to every subcommand.  Precedence is
//! always flag > subcommand section > defaults > built-in default, and
//! every resolved value is echoed into the report so a saved output
//! records the configuration that produced it.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use orlicz_lab::{Error, Result};

/// Parsed configuration file contents.
#[derive(Debug, Default)]
pub struct Settings {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl Settings {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| {
            Error::Parse(format!("{}: {e}", path.display()))
        })
    }

    fn parse(text: &str) -> std::result::Result<Self, String> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = String::from("defaults");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| format!("line {}: unterminated section header", lineno + 1))?
                    .trim();
                if name.is_empty() {
                    return Err(format!("line {}: empty section name", lineno + 1));
                }
                current = name.to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(format!("line {}: empty key", lineno + 1));
            }
            sections
                .entry(current.clone())
                .or_default()
                .insert(key.to_string(), value.trim().to_string());
        }
        Ok(Settings { sections })
    }

    /// Look a key up in `section`, falling back to `[defaults]`.
    pub fn lookup(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .or_else(|| self.sections.get("defaults").and_then(|s| s.get(key)))
            .map(String::as_str)
    }
}

/// Resolves one subcommand's values and records what was chosen.
pub struct Resolver<'a> {
    settings: &'a Settings,
    section: &'a str,
    echo: Vec<(String, String)>,
}

impl<'a> Resolver<'a> {
    pub fn new(settings: &'a Settings, section: &'a str) -> Self {
        Resolver { settings, section, echo: Vec::new() }
    }

    /// flag > config > default, parsing config text via `FromStr`.
    pub fn get<T: FromStr + Display>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> Result<T> {
        let value = match flag {
            Some(v) => v,
            None => match self.settings.lookup(self.section, key) {
                Some(text) => text.parse::<T>().map_err(|_| {
                    Error::Parse(format!(
                        "config key `{key}` in [{}]: cannot parse `{text}`",
                        self.section
                    ))
                })?,
                None => default,
            },
        };
        self.echo.push((key.to_string(), value.to_string()));
        Ok(value)
    }

    /// The resolved (key, value) pairs in sorted order.
    pub fn into_echo(mut self) -> Vec<(String, String)> {
        self.echo.sort();
        self.echo
    }
}

/// Parse a comma-separated list of numbers (`"1,2,4"`).
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("`{part}` in `{text}` is not a number")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_comments_and_defaults() {
        let text = "# comment\nphi = power:2\n[poincare]\np = 1.5\n\n[defaults]\ndim = 3\n";
        let s = Settings::parse(text).unwrap();
        // Keys before any header land in [defaults].
        assert_eq!(s.lookup("poincare", "phi"), Some("power:2"));
        assert_eq!(s.lookup("poincare", "p"), Some("1.5"));
        assert_eq!(s.lookup("hedberg", "dim"), Some("3"));
        assert_eq!(s.lookup("poincare", "missing"), None);
    }

    #[test]
    fn section_beats_defaults() {
        let text = "[defaults]\np = 1\n[poincare]\np = 1.3\n";
        let s = Settings::parse(text).unwrap();
        assert_eq!(s.lookup("poincare", "p"), Some("1.3"));
        assert_eq!(s.lookup("exhaustion", "p"), Some("1"));
    }

    #[test]
    fn flag_beats_config_beats_default() {
        let s = Settings::parse("[cmd]\nx = 10\n").unwrap();
        let mut r = Resolver::new(&s, "cmd");
        assert_eq!(r.get("x", Some(5.0), 1.0).unwrap(), 5.0);
        assert_eq!(r.get("x", None::<f64>, 1.0).unwrap(), 10.0);
        assert_eq!(r.get("y", None::<f64>, 1.0).unwrap(), 1.0);
        let echo = r.into_echo();
        assert_eq!(echo.len(), 3, "every resolution is echoed");
    }

    #[test]
    fn malformed_lines_are_reported_with_numbers() {
        for bad in ["[open\n", "just words\n", "[]\n"] {
            let err = Settings::parse(bad).unwrap_err();
            assert!(err.contains("line 1"), "error should name the line: {err}");
        }
        let err = Settings::parse("[cmd]\nx = a\n")
            .map(|s| {
                let mut r = Resolver::new(&s, "cmd");
                r.get("x", None::<f64>, 1.0).map(|_| ())
            })
            .unwrap()
            .unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn number_lists_parse_and_reject() {
        assert_eq!(parse_f64_list("1, 2,4").unwrap(), vec![1.0, 2.0, 4.0]);
        assert!(parse_f64_list("1,two").is_err());
    }
}
