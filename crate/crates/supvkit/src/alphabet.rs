//! Event alphabets and observation masks.

use crate::error::Error;
use serde::{Deserialize, Serialize};

/// Index of an event in its [`Alphabet`]. The alphabet order is the
/// tie-break order used by every traversal and witness search.
pub type EventId = usize;

/// A single event: a unique label plus its controllability attribute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventDef {
    pub label: String,
    pub controllable: bool,
}

/// An ordered event set partitioned into controllable and
/// uncontrollable events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    events: Vec<EventDef>,
}

impl Alphabet {
    /// Builds an alphabet from `(label, controllable)` pairs.
    /// Labels must be pairwise distinct.
    pub fn new<I, S>(events: I) -> Result<Alphabet, Error>
    where
        I: IntoIterator<Item = (S, bool)>,
        S: Into<String>,
    {
        let mut defs: Vec<EventDef> = Vec::new();
        for (label, controllable) in events {
            let label = label.into();
            if defs.iter().any(|d| d.label == label) {
                return Err(Error::ConflictingAttributes(label));
            }
            defs.push(EventDef {
                label,
                controllable,
            });
        }
        Ok(Alphabet { events: defs })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn label(&self, event: EventId) -> &str {
        &self.events[event].label
    }

    pub fn is_controllable(&self, event: EventId) -> bool {
        self.events[event].controllable
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> {
        0..self.events.len()
    }

    pub fn events(&self) -> &[EventDef] {
        &self.events
    }

    /// Looks an event up by label.
    pub fn id_of(&self, label: &str) -> Option<EventId> {
        self.events.iter().position(|d| d.label == label)
    }

    pub fn controllable_ids(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(|&e| self.is_controllable(e))
    }

    pub fn uncontrollable_ids(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(|&e| !self.is_controllable(e))
    }

    /// Union of two alphabets: events of `self` in order, then events of
    /// `other` not already present, in `other`'s order. Shared labels must
    /// agree on controllability.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet, Error> {
        let mut defs = self.events.clone();
        for def in &other.events {
            match defs.iter().find(|d| d.label == def.label) {
                Some(existing) => {
                    if existing.controllable != def.controllable {
                        return Err(Error::ConflictingAttributes(def.label.clone()));
                    }
                }
                None => defs.push(def.clone()),
            }
        }
        Ok(Alphabet { events: defs })
    }

    /// True when every event of `self` appears in `other` with the same
    /// controllability.
    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.events.iter().all(|d| {
            other
                .id_of(&d.label)
                .is_some_and(|e| other.is_controllable(e) == d.controllable)
        })
    }

    /// Restriction to the observable events of `mask`, preserving order
    /// and controllability.
    pub fn restrict(&self, mask: &ObservationMask) -> Alphabet {
        Alphabet {
            events: self
                .ids()
                .filter(|&e| mask.is_observable(e))
                .map(|e| self.events[e].clone())
                .collect(),
        }
    }
}

/// A designated observable subset Σ₀ of an alphabet, defining the
/// natural projection P: Σ* → Σ₀*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationMask {
    observable: Vec<bool>,
}

impl ObservationMask {
    /// Full observation: every event observable.
    pub fn full(alphabet: &Alphabet) -> ObservationMask {
        ObservationMask {
            observable: vec![true; alphabet.len()],
        }
    }

    /// Mask listing the observable events by label; everything else is
    /// unobservable.
    pub fn observable<'a, I>(alphabet: &Alphabet, labels: I) -> Result<ObservationMask, Error>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut observable = vec![false; alphabet.len()];
        for label in labels {
            let e = alphabet
                .id_of(label)
                .ok_or_else(|| Error::UnknownEvent(label.to_string()))?;
            observable[e] = true;
        }
        Ok(ObservationMask { observable })
    }

    /// Complement form: lists the unobservable events.
    pub fn unobservable<'a, I>(alphabet: &Alphabet, labels: I) -> Result<ObservationMask, Error>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut observable = vec![true; alphabet.len()];
        for label in labels {
            let e = alphabet
                .id_of(label)
                .ok_or_else(|| Error::UnknownEvent(label.to_string()))?;
            observable[e] = false;
        }
        Ok(ObservationMask { observable })
    }

    pub fn from_observable_ids<I>(alphabet: &Alphabet, ids: I) -> ObservationMask
    where
        I: IntoIterator<Item = EventId>,
    {
        let mut observable = vec![false; alphabet.len()];
        for e in ids {
            observable[e] = true;
        }
        ObservationMask { observable }
    }

    pub fn is_observable(&self, event: EventId) -> bool {
        self.observable[event]
    }

    pub fn len(&self) -> usize {
        self.observable.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observable.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.observable.iter().all(|&o| o)
    }

    pub fn observable_ids(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.observable.len()).filter(|&e| self.observable[e])
    }

    pub fn unobservable_ids(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.observable.len()).filter(|&e| !self.observable[e])
    }
}
