//! Verification reports with exact witness values.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::exact::{Interval, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessValue {
    Rational(Rational),
    Interval(Interval),
}

impl From<Rational> for WitnessValue {
    fn from(value: Rational) -> Self {
        WitnessValue::Rational(value)
    }
}

impl From<&Rational> for WitnessValue {
    fn from(value: &Rational) -> Self {
        WitnessValue::Rational(value.clone())
    }
}

impl From<Interval> for WitnessValue {
    fn from(value: Interval) -> Self {
        WitnessValue::Interval(value)
    }
}

impl From<&Interval> for WitnessValue {
    fn from(value: &Interval) -> Self {
        WitnessValue::Interval(value.clone())
    }
}

impl From<usize> for WitnessValue {
    fn from(value: usize) -> Self {
        WitnessValue::Rational(Rational::from_integer(BigInt::from(value)))
    }
}

impl Serialize for WitnessValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            WitnessValue::Rational(r) => serializer.serialize_str(&r.to_string()),
            WitnessValue::Interval(i) => i.serialize(serializer),
        }
    }
}

impl fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessValue::Rational(r) => write!(f, "{r}"),
            WitnessValue::Interval(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: WitnessValue,
}

/// Outcome of a finite exact check. A failed certificate always carries at
/// least one witness whose label starts with `violated:`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub verified: bool,
    pub witnesses: Vec<Witness>,
    pub notes: String,
}

impl Certificate {
    pub fn new(name: impl Into<String>) -> Self {
        Certificate { name: name.into(), verified: true, witnesses: Vec::new(), notes: String::new() }
    }

    pub fn record(&mut self, label: impl Into<String>, value: impl Into<WitnessValue>) {
        self.witnesses.push(Witness { label: label.into(), value: value.into() });
    }

    /// Marks the certificate failed unless `holds`; on failure the value is
    /// kept as a `violated:` witness. Returns `holds`.
    pub fn require(&mut self, holds: bool, label: impl Into<String>, value: impl Into<WitnessValue>) -> bool {
        if !holds {
            self.verified = false;
            self.witnesses.push(Witness { label: format!("violated: {}", label.into()), value: value.into() });
        }
        holds
    }

    pub fn note(&mut self, text: impl AsRef<str>) {
        if !self.notes.is_empty() {
            self.notes.push(' ');
        }
        self.notes.push_str(text.as_ref());
    }

    /// Folds a sub-certificate in, prefixing its witness labels.
    pub fn absorb(&mut self, part: Certificate) {
        self.verified &= part.verified;
        for w in part.witnesses {
            self.witnesses.push(Witness { label: format!("{}: {}", part.name, w.label), value: w.value });
        }
        if !part.notes.is_empty() {
            self.note(part.notes);
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.label.starts_with("violated:"))
    }

    pub fn witness(&self, label: &str) -> Option<&WitnessValue> {
        self.witnesses.iter().find(|w| w.label == label).map(|w| &w.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn failed_requirement_leaves_witness() {
        let mut c = Certificate::new("demo");
        assert!(c.require(true, "fine", rat(1, 2)));
        assert!(c.verified);
        assert!(c.witnesses.is_empty());
        assert!(!c.require(false, "x < 1/3", rat(1, 2)));
        assert!(!c.verified);
        assert_eq!(c.violations().count(), 1);
    }

    #[test]
    fn json_shape() {
        let mut c = Certificate::new("demo");
        c.record("sum", rat(19759, 20736));
        c.record("J", Interval::new(rat(17, 90), rat(37, 90)).unwrap());
        c.note("first");
        c.note("second");
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"name":"demo","verified":true,"witnesses":[{"label":"sum","value":"19759/20736"},{"label":"J","value":{"lo":"17/90","hi":"37/90"}}],"notes":"first second"}"#
        );
    }

    #[test]
    fn absorb_propagates_failure() {
        let mut outer = Certificate::new("outer");
        let mut inner = Certificate::new("inner");
        inner.require(false, "bad", 3usize);
        outer.absorb(inner);
        assert!(!outer.verified);
        assert_eq!(outer.witnesses[0].label, "inner: violated: bad");
    }
}
