//! Line-oriented `key = value` configuration.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::CliError;

/// Parsed configuration, remembering the line of each key for error reports.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, (String, usize)>,
}

impl Config {
    /// Parse `text`, rejecting keys outside `allowed`. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str, allowed: &[&str]) -> Result<Config, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(CliError::config(line, "expected key = value"));
            };
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || v.is_empty() {
                return Err(CliError::config(line, "empty key or value"));
            }
            if !allowed.contains(&k) {
                return Err(CliError::config(line, format!("unknown key {k:?} (allowed: {})", allowed.join(", "))));
            }
            if values.insert(k.to_string(), (v.to_string(), line)).is_some() {
                return Err(CliError::config(line, format!("duplicate key {k:?}")));
            }
        }
        Ok(Config { values })
    }

    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Config {
        Config {
            values: pairs.iter().map(|(k, v)| (k.clone(), (v.clone(), 0))).collect(),
        }
    }

    pub fn set(&mut self, key: &str, value: String) {
        self.values.insert(key.to_string(), (value, 0));
    }

    pub fn pairs(&self) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, (v, _))| (k.clone(), v.clone())).collect()
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|(v, _)| v.as_str())
    }

    fn line(&self, key: &str) -> usize {
        self.values.get(key).map(|(_, l)| *l).unwrap_or(0)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.text(key) {
            None => Ok(default),
            Some(v) => number(v).ok_or_else(|| CliError::config(self.line(key), format!("{key}: not a number: {v:?}"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.text(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::config(self.line(key), format!("{key}: not a count: {v:?}"))),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.text(key).unwrap_or(default)
    }

    /// Comma list of numbers, or an inclusive integer range `a..b`.
    pub fn list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        let Some(v) = self.text(key) else {
            return Ok(default.to_vec());
        };
        let bad = || CliError::config(self.line(key), format!("{key}: expected a list like 1,2,4 or 1..8, got {v:?}"));
        if let Some((a, b)) = v.split_once("..") {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b < a {
                return Err(bad());
            }
            return Ok((a..=b).map(|x| x as f64).collect());
        }
        v.split(',').map(|x| number(x.trim()).ok_or_else(bad)).collect()
    }

    /// Error against the line of `key`, for values that parse but are unusable.
    pub fn reject(&self, key: &str, msg: impl Into<String>) -> CliError {
        CliError::config(self.line(key), msg)
    }
}

/// A float, `pi`, or `<float>*pi`.
pub fn number(v: &str) -> Option<f64> {
    let v = v.trim();
    if v == "pi" {
        return Some(PI);
    }
    if let Some(head) = v.strip_suffix("*pi") {
        return head.trim().parse::<f64>().ok().map(|x| x * PI);
    }
    v.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = Config::parse("# grid\nn = 512\nlength = 32*pi\nk = 1..3\n", &["n", "length", "k"]).unwrap();
        assert_eq!(c.usize_or("n", 0).unwrap(), 512);
        assert!((c.f64_or("length", 0.0).unwrap() - 32.0 * PI).abs() < 1e-12);
        assert_eq!(c.list_or("k", &[]).unwrap(), vec![1.0, 2.0, 3.0]);
        let e = Config::parse("n = 1\n\nfoo = 2\n", &["n"]).unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        assert!(Config::parse("n 1", &["n"]).is_err());
        assert!(Config::parse("n = 1\nn = 2", &["n"]).is_err());
    }

    #[test]
    fn bad_value_reports_its_line() {
        let c = Config::parse("\nn = 4\nc = ten\n", &["n", "c"]).unwrap();
        assert!(c.f64_or("c", 1.0).unwrap_err().to_string().contains("line 3"));
    }
}
