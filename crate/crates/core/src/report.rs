//! Structured pass/fail outcomes.
//!
//! Every check returns a [`Report`]: an overall status, optional aggregate
//! sides, and a list of [`Witness`] records. Witnesses carry both evaluated
//! sides of whatever relation they test, so a failing report always shows
//! the offending numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::complex::Face;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// An exact number: integers serialize as JSON numbers when they fit in
/// 64 bits, everything else as a decimal or `p/q` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Quantity(pub BigRational);

impl Quantity {
    pub fn int(v: impl Into<BigInt>) -> Quantity {
        Quantity(BigRational::from_integer(v.into()))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }
}

macro_rules! quantity_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Quantity {
            fn from(v: $t) -> Quantity {
                Quantity::int(BigInt::from(v))
            }
        }
    )*};
}
quantity_from!(i32, i64, i128, u32, u64, usize);

impl From<BigInt> for Quantity {
    fn from(v: BigInt) -> Quantity {
        Quantity::int(v)
    }
}

impl From<&BigInt> for Quantity {
    fn from(v: &BigInt) -> Quantity {
        Quantity::int(v.clone())
    }
}

impl From<BigRational> for Quantity {
    fn from(v: BigRational) -> Quantity {
        Quantity(v)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|e| format!("invalid number {t:?}: {e}"))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let q = parse(q)?;
                if q == BigInt::from(0) {
                    return Err("zero denominator".into());
                }
                Ok(Quantity(BigRational::new(parse(p)?, q)))
            }
            None => Ok(Quantity::int(parse(s)?)),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Quantity::from(v)),
            Raw::Text(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    pub fn holds(self, lhs: &Quantity, rhs: &Quantity) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
        }
    }
}

/// One piece of evidence: a face or index and the relation evaluated there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<Face>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Relation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Quantity>,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    /// Evaluates `lhs relation rhs`.
    pub fn compare(
        label: impl Into<String>,
        face: Option<Face>,
        lhs: impl Into<Quantity>,
        relation: Relation,
        rhs: impl Into<Quantity>,
    ) -> Witness {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        Witness {
            label: label.into(),
            face,
            relation: Some(relation),
            holds: relation.holds(&lhs, &rhs),
            equality: Some(lhs == rhs),
            lhs: Some(lhs),
            rhs: Some(rhs),
            detail: None,
        }
    }

    /// A boolean finding with no numeric sides.
    pub fn flag(label: impl Into<String>, face: Option<Face>, holds: bool) -> Witness {
        Witness {
            label: label.into(),
            face,
            relation: None,
            lhs: None,
            rhs: None,
            holds,
            equality: None,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Witness {
        self.detail = Some(detail.into());
        self
    }

    pub fn is_equality(&self) -> bool {
        self.equality == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl Report {
    /// Status is pass iff every witness holds; `equality` is set when every
    /// witness carries a numeric comparison.
    pub fn from_witnesses(check: impl Into<String>, witnesses: Vec<Witness>) -> Report {
        let status = Status::from_bool(witnesses.iter().all(|w| w.holds));
        let equality = if !witnesses.is_empty() && witnesses.iter().all(|w| w.equality.is_some()) {
            Some(witnesses.iter().all(Witness::is_equality))
        } else {
            None
        };
        Report {
            check: check.into(),
            status,
            lhs: None,
            rhs: None,
            equality,
            witnesses,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.holds)
    }

    pub fn with_sides(mut self, lhs: impl Into<Quantity>, rhs: impl Into<Quantity>) -> Report {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        self.equality = Some(lhs == rhs);
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Report {
        self.notes.push(note.into());
        self
    }

    /// Overrides the computed status, e.g. when only a subset of witnesses
    /// decides the outcome.
    pub fn with_status(mut self, status: Status) -> Report {
        self.status = status;
        self
    }

    /// Keeps only witnesses matching `keep`; used to trim bulky passing scans.
    pub fn retain_witnesses(&mut self, keep: impl Fn(&Witness) -> bool) {
        self.witnesses.retain(|w| keep(w));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantity_json_shapes() {
        assert_eq!(serde_json::to_string(&Quantity::from(60)).unwrap(), "60");
        let q: Quantity = "14/16".parse().unwrap();
        assert_eq!(q.to_string(), "7/8");
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"7/8\"");
        let big = Quantity::int(BigInt::from(i64::MAX) * 4);
        let s = serde_json::to_string(&big).unwrap();
        let back: Quantity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
        assert!("1/0".parse::<Quantity>().is_err());
    }

    #[test]
    fn report_status_and_equality() {
        let ws = vec![
            Witness::compare("a", None, 3, Relation::Le, 3),
            Witness::compare("b", None, 2, Relation::Le, 3),
        ];
        let r = Report::from_witnesses("x", ws);
        assert!(r.passed());
        assert_eq!(r.equality, Some(false));
        let r = Report::from_witnesses("y", vec![Witness::compare("c", None, 4, Relation::Lt, 4)]);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
