//! `key = value` run configuration. Blank lines and `#` comments are ignored.
//!
//! Keys: `max_level`, `s0` (specialization point; selects numeric mode unless
//! `mode` says otherwise), `mode` (`symbolic` or `numeric`) and `budget`
//! (largest symbolic entry size before sampling).

use num_rational::BigRational;
use podles::scalar::parse_rational;

use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    pub max_level: Option<usize>,
    pub s0: Option<BigRational>,
    pub numeric: Option<bool>,
    pub budget: Option<usize>,
}

fn bad(line: usize, message: impl Into<String>) -> CliError {
    CliError::Config { line, message: message.into() }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        let mut cfg = Config::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| bad(line, "expected `key = value`"))?;
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            let int = || value.parse::<usize>().map_err(|_| bad(line, format!("`{value}` is not a nonnegative integer")));
            match key.as_str() {
                "max_level" => cfg.max_level = Some(int()?),
                "budget" | "symbolic_budget" => cfg.budget = Some(int()?),
                "s0" => cfg.s0 = Some(parse_rational(value).map_err(|_| bad(line, format!("`{value}` is not a rational")))?),
                "mode" => {
                    cfg.numeric = Some(match value {
                        "symbolic" => false,
                        "numeric" => true,
                        _ => return Err(bad(line, format!("mode must be `symbolic` or `numeric`, not `{value}`"))),
                    })
                }
                _ => return Err(bad(line, format!("unknown key `{key}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Config, CliError> {
        Config::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = Config::parse("# run settings\nmax-level = 3\ns0 = 7/10  # point\n\nbudget=50\n").unwrap();
        assert_eq!(c.max_level, Some(3));
        assert_eq!(c.s0, Some(BigRational::new(7.into(), 10.into())));
        assert_eq!(c.budget, Some(50));
        assert_eq!(c.numeric, None);
    }

    #[test]
    fn reports_offending_line() {
        match Config::parse("max_level = 2\ncolour = red") {
            Err(CliError::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(Config::parse("max_level = -1").is_err());
        assert!(Config::parse("mode = fast").is_err());
        assert!(Config::parse("just words").is_err());
    }
}
