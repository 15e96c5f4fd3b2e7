//! Line-oriented verification records.
//!
//! One record per check, rendered as `key=value` pairs on a single line —
//! greppable by humans and trivially machine-parsable. Values never
//! contain spaces (big integers print in plain decimal).

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub check: &'static str,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(check: &'static str) -> Self {
        Self {
            check,
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn pass(self, pass: bool) -> Self {
        self.field("pass", pass)
    }

    pub fn is_pass(&self) -> bool {
        self.fields
            .iter()
            .any(|(k, v)| k == "pass" && v == "true")
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check={}", self.check)?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_key_value_line() {
        let r = Record::new("bracketing")
            .field("kind", "CATALAN_SQRT2")
            .field("E", 10)
            .pass(true);
        assert_eq!(r.to_string(), "check=bracketing kind=CATALAN_SQRT2 E=10 pass=true");
        assert!(r.is_pass());
    }
}
