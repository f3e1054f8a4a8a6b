//! JSON encoding shared by the CLI and the HTTP service.
//!
//! ```json
//! {"j": 3, "d": 2, "eta": {"num": 1, "den": 2},
//!  "intervals": [{"level": 3, "index": 0, "colour": 1}, {"level": 3, "index": 4}]}
//! ```
//!
//! An interval without `"colour"` is uncoloured. Where a command takes a
//! pair `(C, U)`, the coloured entries form `C` and the uncoloured ones `U`.

use serde::{Deserialize, Serialize};

use crate::adversary::ChainSpec;
use crate::dyadic::{Colour, Colouring, DyadicInterval, HomogeneityParams, IntervalSet, Rational};
use crate::error::{Error, Result};
use crate::game::{GameConfig, Seat};
use crate::oracle::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouredInterval {
    pub level: u32,
    pub index: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<Colour>,
}

impl ColouredInterval {
    pub fn interval(&self) -> Result<DyadicInterval> {
        DyadicInterval::new(self.level, self.index)
    }

    pub fn new(iv: DyadicInterval, colour: Option<Colour>) -> Self {
        ColouredInterval {
            level: iv.level(),
            index: iv.index(),
            colour,
        }
    }
}

fn one_half() -> Rational {
    Rational::new(1, 2).expect("1/2")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionDoc {
    pub j: u32,
    pub d: u32,
    #[serde(default = "one_half")]
    pub eta: Rational,
    pub intervals: Vec<ColouredInterval>,
}

impl CollectionDoc {
    pub fn from_colouring(col: &Colouring, eta: Rational) -> CollectionDoc {
        CollectionDoc {
            j: col.level(),
            d: col.d(),
            eta,
            intervals: col
                .base()
                .iter()
                .zip(col.colours())
                .map(|(iv, &c)| ColouredInterval::new(iv, c))
                .collect(),
        }
    }

    pub fn from_set(set: &IntervalSet, d: u32, eta: Rational) -> CollectionDoc {
        CollectionDoc {
            j: set.level(),
            d,
            eta,
            intervals: set
                .iter()
                .map(|iv| ColouredInterval::new(iv, None))
                .collect(),
        }
    }

    pub fn params(&self) -> Result<HomogeneityParams> {
        HomogeneityParams::new(self.eta, self.d)
    }

    fn entries(&self) -> Result<Vec<(DyadicInterval, Option<Colour>)>> {
        self.intervals
            .iter()
            .map(|ci| {
                let iv = ci.interval()?;
                if iv.level() != self.j {
                    return Err(Error::MixedLevels {
                        expected: self.j,
                        interval: iv,
                    });
                }
                Ok((iv, ci.colour))
            })
            .collect()
    }

    /// Every listed interval, coloured or not.
    pub fn interval_set(&self) -> Result<IntervalSet> {
        IntervalSet::from_intervals(self.j, self.entries()?.into_iter().map(|(iv, _)| iv))
    }

    /// The (possibly partial) colouring of all listed intervals.
    pub fn colouring(&self) -> Result<Colouring> {
        let entries = self.entries()?;
        let set = IntervalSet::from_intervals(self.j, entries.iter().map(|(iv, _)| *iv))?;
        Colouring::from_assignments(
            set,
            self.d,
            entries.into_iter().filter_map(|(iv, c)| c.map(|c| (iv, c))),
        )
    }

    /// `(C coloured, U)`: coloured entries and uncoloured entries.
    pub fn split(&self) -> Result<(Colouring, IntervalSet)> {
        let col = self.colouring()?;
        let c = col.coloured_set();
        let u = col.uncoloured_set();
        Ok((col.restricted(&c)?, u))
    }
}

/// Game creation payload.
///
/// Either `chain` (a counterexample preset, which fixes `j`, `d`, `η` and
/// `C(0)`) or `collection` (a totally coloured `C(0)`) must be given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfigDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collection: Option<CollectionDoc>,
    #[serde(default)]
    pub restricted: bool,
    #[serde(default = "Seat::human")]
    pub seat_a: Seat,
    #[serde(default = "Seat::engine")]
    pub seat_b: Seat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl GameConfigDoc {
    pub fn to_config(&self) -> Result<GameConfig> {
        let mut config = match (&self.chain, &self.collection) {
            (Some(chain), None) => GameConfig::from_chain(chain, self.restricted)?,
            (None, Some(doc)) => {
                let mut config = GameConfig::new(doc.params()?, doc.colouring()?);
                config.restricted = self.restricted;
                config
            }
            _ => {
                return Err(Error::Malformed(
                    "exactly one of \"chain\" and \"collection\" is required".into(),
                ))
            }
        };
        config.seat_a = self.seat_a;
        config.seat_b = self.seat_b;
        config.budget = self.budget.unwrap_or(DEFAULT_BUDGET);
        Ok(config)
    }
}

impl GameConfig {
    pub fn to_doc(&self) -> GameConfigDoc {
        let budget = (self.budget != DEFAULT_BUDGET).then_some(self.budget);
        match &self.chain {
            Some(chain) => GameConfigDoc {
                chain: Some(chain.clone()),
                collection: None,
                restricted: self.restricted,
                seat_a: self.seat_a,
                seat_b: self.seat_b,
                budget,
            },
            None => GameConfigDoc {
                chain: None,
                collection: Some(CollectionDoc::from_colouring(
                    &self.initial,
                    self.params.eta(),
                )),
                restricted: self.restricted,
                seat_a: self.seat_a,
                seat_b: self.seat_b,
                budget,
            },
        }
    }
}

/// Parse a list of `{"level", "index"}` objects into intervals.
pub fn intervals_of(list: &[ColouredInterval]) -> Result<Vec<DyadicInterval>> {
    list.iter().map(ColouredInterval::interval).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{"j":3,"d":2,"eta":{"num":2,"den":4},
        "intervals":[{"level":3,"index":4},{"level":3,"index":0,"colour":1}]}"#;

    #[test]
    fn parse_split_and_round_trip() {
        let doc: CollectionDoc = serde_json::from_str(DOC).unwrap();
        assert_eq!(doc.eta, Rational::new(1, 2).unwrap());
        let (c, u) = doc.split().unwrap();
        assert_eq!(c.base().indices(), &[0]);
        assert_eq!(u.indices(), &[4]);
        let again: CollectionDoc =
            serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn uncoloured_entries_have_no_colour_field() {
        let set = IntervalSet::from_indices(2, [1]).unwrap();
        let doc = CollectionDoc::from_set(&set, 2, one_half());
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"j":2,"d":2,"eta":{"num":1,"den":2},"intervals":[{"level":2,"index":1}]}"#
        );
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_level = r#"{"j":3,"d":2,"intervals":[{"level":2,"index":0}]}"#;
        let doc: CollectionDoc = serde_json::from_str(bad_level).unwrap();
        assert!(doc.colouring().is_err());
        let bad_index = r#"{"j":3,"d":2,"intervals":[{"level":3,"index":9}]}"#;
        let doc: CollectionDoc = serde_json::from_str(bad_index).unwrap();
        assert!(doc.interval_set().is_err());
        let bad_eta = r#"{"j":3,"d":2,"eta":{"num":0,"den":1},"intervals":[]}"#;
        assert!(serde_json::from_str::<CollectionDoc>(bad_eta).is_err());
        let dup = r#"{"j":3,"d":2,"intervals":[{"level":3,"index":1},{"level":3,"index":1}]}"#;
        let doc: CollectionDoc = serde_json::from_str(dup).unwrap();
        assert!(doc.colouring().is_err());
    }
}
