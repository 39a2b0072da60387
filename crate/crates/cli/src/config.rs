//! Flat `key = value` run configurations with `--key value` overrides.
//!
//! Blank lines and lines starting with `#` are ignored. Every key may appear
//! once per source; an override replaces the file value. Values are parsed
//! lazily by the typed getters, and every error names the file line or flag
//! the offending value came from.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    Flag,
    /// The key was not set; the built-in default failed validation.
    Default,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Flag => f.write_str("command line"),
            Origin::Default => f.write_str("default"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: key `{key}` already set on line {first}")]
    Duplicate { line: usize, key: String, first: usize },
    #[error("{origin}: unknown key `{key}` for `{command}`")]
    UnknownKey { origin: Origin, key: String, command: &'static str },
    #[error("{origin}: `{key}`: {message}")]
    Invalid { origin: Origin, key: String, message: String },
    #[error("`{key}`: required but not set")]
    Missing { key: String },
    #[error("override `--{0}` has no value")]
    MissingValue(String),
    #[error("expected an override of the form `--key value`, got {0:?}")]
    NotAFlag(String),
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    origin: Origin,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, Entry>,
}

fn valid_key(key: &str) -> bool {
    !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(ConfigError::Syntax { line, text: raw.to_string() });
            };
            let key = key.trim();
            if !valid_key(key) {
                return Err(ConfigError::Syntax { line, text: raw.to_string() });
            }
            if let Some(Entry { origin: Origin::Line(first), .. }) = cfg.entries.get(key) {
                return Err(ConfigError::Duplicate { line, key: key.to_string(), first: *first });
            }
            cfg.entries.insert(key.to_string(), Entry { value: value.trim().to_string(), origin: Origin::Line(line) });
        }
        Ok(cfg)
    }

    /// Applies `--key value` or `--key=value` pairs on top of the file.
    pub fn apply_overrides(&mut self, args: &[String]) -> Result<(), ConfigError> {
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let Some(flag) = arg.strip_prefix("--") else {
                return Err(ConfigError::NotAFlag(arg.clone()));
            };
            let (key, value) = match flag.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it.next().ok_or_else(|| ConfigError::MissingValue(flag.to_string()))?;
                    (flag.to_string(), v.clone())
                }
            };
            if !valid_key(&key) {
                return Err(ConfigError::NotAFlag(arg.clone()));
            }
            self.entries.insert(key, Entry { value: value.trim().to_string(), origin: Origin::Flag });
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(key.to_string(), Entry { value: value.to_string(), origin: Origin::Flag });
    }

    /// Rejects any key outside `allowed`, reporting the first in file order.
    pub fn check_keys(&self, allowed: &[&str], command: &'static str) -> Result<(), ConfigError> {
        let mut unknown: Vec<(&String, &Entry)> =
            self.entries.iter().filter(|(k, _)| !allowed.contains(&k.as_str())).collect();
        unknown.sort_by_key(|(_, e)| match e.origin {
            Origin::Line(n) => n,
            Origin::Flag | Origin::Default => usize::MAX,
        });
        match unknown.first() {
            Some((key, e)) => Err(ConfigError::UnknownKey { origin: e.origin, key: (*key).clone(), command }),
            None => Ok(()),
        }
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    /// An `Invalid` error attributed to wherever `key` was set.
    pub fn invalid(&self, key: &str, message: impl Into<String>) -> ConfigError {
        match self.entries.get(key) {
            Some(e) => ConfigError::Invalid { origin: e.origin, key: key.to_string(), message: message.into() },
            None => ConfigError::Invalid { origin: Origin::Default, key: key.to_string(), message: message.into() },
        }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some(e) => {
                e.value.parse().map(Some).map_err(|err| self.invalid(key, format!("cannot parse {:?}: {err}", e.value)))
            }
        }
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.get(key)?.ok_or_else(|| ConfigError::Missing { key: key.to_string() })
    }

    /// Comma-separated items, each parsed by `item`. An empty value is an
    /// empty list.
    pub fn get_list<T>(
        &self,
        key: &str,
        item: impl Fn(&str) -> Result<T, String>,
    ) -> Result<Option<Vec<T>>, ConfigError> {
        let Some(raw) = self.raw(key) else { return Ok(None) };
        if raw.is_empty() {
            return Ok(Some(Vec::new()));
        }
        raw.split(',')
            .map(|s| item(s.trim()).map_err(|m| self.invalid(key, m)))
            .collect::<Result<Vec<T>, _>>()
            .map(Some)
    }
}

/// `a:b:…` with exactly `N` numeric fields.
pub fn colon_numbers<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != N {
        return Err(format!("expected {N} colon-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|e| format!("cannot parse {p:?} in {s:?}: {e}"))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let cfg = Config::parse("# header\n\n n = 3 \nepsilon=0.1\npoints =\n").unwrap();
        assert_eq!(cfg.get::<u32>("n").unwrap(), Some(3));
        assert_eq!(cfg.get::<f64>("epsilon").unwrap(), Some(0.1));
        assert_eq!(cfg.get_list("points", |s| Ok(s.to_string())).unwrap(), Some(vec![]));
        assert_eq!(cfg.get::<f64>("radius").unwrap(), None);
    }

    #[test]
    fn syntax_errors_name_the_line() {
        let err = Config::parse("n = 1\njunk\n").unwrap_err();
        assert_eq!(err, ConfigError::Syntax { line: 2, text: "junk".into() });
        assert!(err.to_string().starts_with("line 2:"));
        assert!(matches!(Config::parse("a b = 1"), Err(ConfigError::Syntax { line: 1, .. })));
        assert_eq!(
            Config::parse("n = 1\nn = 2").unwrap_err(),
            ConfigError::Duplicate { line: 2, key: "n".into(), first: 1 }
        );
    }

    #[test]
    fn overrides_replace_file_values() {
        let mut cfg = Config::parse("n = 1\nradius = 2").unwrap();
        cfg.apply_overrides(&["--n".into(), "4".into(), "--epsilon=0.5".into()]).unwrap();
        assert_eq!(cfg.get::<u32>("n").unwrap(), Some(4));
        assert_eq!(cfg.get::<f64>("epsilon").unwrap(), Some(0.5));
        assert_eq!(cfg.get::<f64>("radius").unwrap(), Some(2.0));
        assert_eq!(cfg.apply_overrides(&["--n".into()]), Err(ConfigError::MissingValue("n".into())));
        assert_eq!(cfg.apply_overrides(&["n".into()]), Err(ConfigError::NotAFlag("n".into())));
    }

    #[test]
    fn unknown_keys_are_reported_in_file_order() {
        let mut cfg = Config::parse("n = 1\nzeta = 2\nalpha = 3").unwrap();
        cfg.apply_overrides(&["--beta".into(), "1".into()]).unwrap();
        let err = cfg.check_keys(&["n"], "eval").unwrap_err();
        assert_eq!(err, ConfigError::UnknownKey { origin: Origin::Line(2), key: "zeta".into(), command: "eval" });
        let mut cfg = Config::default();
        cfg.apply_overrides(&["--beta".into(), "1".into()]).unwrap();
        assert!(cfg.check_keys(&["n"], "eval").unwrap_err().to_string().contains("command line"));
    }

    #[test]
    fn parse_errors_carry_origin() {
        let cfg = Config::parse("\n\nn = three").unwrap();
        let err = cfg.get::<u32>("n").unwrap_err();
        assert!(err.to_string().starts_with("line 3: `n`:"), "{err}");
    }

    #[test]
    fn colon_lists() {
        assert_eq!(colon_numbers::<2>("1.5:-2").unwrap(), [1.5, -2.0]);
        assert!(colon_numbers::<3>("1:2").is_err());
        assert!(colon_numbers::<2>("1:x").is_err());
    }
}
