//! The JSON document format for automata, with optional supervisor
//! annotations.

use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::automaton::Automaton;
use crate::reduction::ReducedSupervisor;
use crate::synthesis::Supervisor;

/// Errors raised while reading a document.
#[derive(Debug, Error)]
pub enum FormatError {
    /// The text is not well-formed JSON for the document schema.
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    /// The document is well-formed but breaks a structural invariant.
    #[error("invalid document: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDoc {
    pub label: String,
    pub controllable: bool,
}

/// Per-state supervisor flags, with events by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsDoc {
    pub enabled: Vec<String>,
    pub disabled: Vec<String>,
    pub marked_in_sup: bool,
    pub marked_in_plant: bool,
}

/// The on-disk shape of an automaton. States are the indices
/// `0..states`; transitions are `[src, label, dst]` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub name: String,
    pub events: Vec<EventDoc>,
    pub states: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<usize>,
    pub marked: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
    /// Reduction annotation: the reduced-supervisor state each original
    /// supervisor state was lumped into.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_of: Option<Vec<usize>>,
    /// Synthesis annotation: per-state control flags.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Vec<FlagsDoc>>,
}

impl AutomatonDocument {
    /// Canonical document for an automaton: marked states ascending,
    /// transitions ordered by source state and event order.
    pub fn from_automaton(name: &str, a: &Automaton) -> AutomatonDocument {
        AutomatonDocument {
            name: name.to_string(),
            events: a
                .alphabet()
                .events()
                .iter()
                .map(|d| EventDoc {
                    label: d.label.clone(),
                    controllable: d.controllable,
                })
                .collect(),
            states: a.state_count(),
            initial: a.initial(),
            marked: a.marked_states().collect(),
            transitions: a
                .transitions()
                .map(|(s, e, t)| (s, a.alphabet().label(e).to_string(), t))
                .collect(),
            cell_of: None,
            flags: None,
        }
    }

    /// Document for a synthesized supervisor, carrying the flags
    /// annotation.
    pub fn from_supervisor(name: &str, sup: &Supervisor) -> AutomatonDocument {
        let alphabet = sup.automaton().alphabet();
        let mut doc = AutomatonDocument::from_automaton(name, sup.automaton());
        doc.flags = Some(
            sup.all_flags()
                .iter()
                .map(|f| FlagsDoc {
                    enabled: f
                        .enabled
                        .iter()
                        .map(|&e| alphabet.label(e).to_string())
                        .collect(),
                    disabled: f
                        .disabled
                        .iter()
                        .map(|&e| alphabet.label(e).to_string())
                        .collect(),
                    marked_in_sup: f.marked_in_sup,
                    marked_in_plant: f.marked_in_plant,
                })
                .collect(),
        );
        doc
    }

    /// Document for a reduced supervisor, carrying the cell map from
    /// original supervisor states to cover cells.
    pub fn from_reduced(name: &str, reduced: &ReducedSupervisor) -> AutomatonDocument {
        let mut doc = AutomatonDocument::from_automaton(name, &reduced.automaton);
        doc.cell_of = Some(reduced.cell_of.clone());
        doc
    }

    /// Validates the document and builds the automaton it denotes.
    pub fn to_automaton(&self) -> Result<Automaton, FormatError> {
        let invalid = |msg: String| Err(FormatError::Validation(msg));
        let alphabet = Alphabet::new(
            self.events
                .iter()
                .map(|d| (d.label.clone(), d.controllable)),
        )
        .map_err(|e| FormatError::Validation(e.to_string()))?;
        let alphabet = Arc::new(alphabet);

        match self.initial {
            None if self.states > 0 => {
                return invalid("missing initial state".into());
            }
            Some(i) if self.states == 0 => {
                return invalid(format!("initial state {i} in an automaton with no states"));
            }
            Some(i) if i >= self.states => {
                return invalid(format!("initial state {i} out of range"));
            }
            _ => {}
        }
        let mut b = Automaton::builder(alphabet.clone(), self.states);
        if let Some(i) = self.initial {
            b = b.initial(i);
        }
        let mut seen_marked = std::collections::BTreeSet::new();
        for &m in &self.marked {
            if m >= self.states {
                return invalid(format!("marked state {m} out of range"));
            }
            if !seen_marked.insert(m) {
                return invalid(format!("marked state {m} listed twice"));
            }
            b = b.mark(m);
        }
        let mut seen_pairs = std::collections::BTreeSet::new();
        for (src, label, dst) in &self.transitions {
            let Some(e) = alphabet.id_of(label) else {
                return invalid(format!("transition uses unknown label `{label}`"));
            };
            if *src >= self.states || *dst >= self.states {
                return invalid(format!("transition [{src}, {label}, {dst}] out of range"));
            }
            if !seen_pairs.insert((*src, e)) {
                return invalid(format!("duplicate transition at ({src}, {label})"));
            }
            b = b.transition(*src, e, *dst);
        }
        if let Some(flags) = &self.flags {
            if flags.len() != self.states {
                return invalid(format!(
                    "flags annotation has {} entries for {} states",
                    flags.len(),
                    self.states
                ));
            }
        }
        Ok(b.build())
    }

    /// Normalizes field ordering to the canonical form, keeping
    /// annotations.
    pub fn canonicalize(&self) -> Result<AutomatonDocument, FormatError> {
        let automaton = self.to_automaton()?;
        let mut doc = AutomatonDocument::from_automaton(&self.name, &automaton);
        doc.cell_of = self.cell_of.clone();
        doc.flags = self.flags.clone();
        Ok(doc)
    }
}

/// Parses a document from JSON text.
pub fn parse(text: &str) -> Result<AutomatonDocument, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// Serializes a document as pretty JSON with a trailing newline.
pub fn serialize(doc: &AutomatonDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("document serialization");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::des_isomorphic;

    fn sample() -> AutomatonDocument {
        AutomatonDocument {
            name: "sample".into(),
            events: vec![
                EventDoc {
                    label: "a".into(),
                    controllable: true,
                },
                EventDoc {
                    label: "b".into(),
                    controllable: false,
                },
            ],
            states: 2,
            initial: Some(0),
            marked: vec![0],
            transitions: vec![(0, "a".into(), 1), (1, "b".into(), 0)],
            cell_of: None,
            flags: None,
        }
    }

    #[test]
    fn round_trip_is_canonical_identity() {
        let doc = sample();
        let text = serialize(&doc);
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(serialize(&parsed.canonicalize().unwrap()), text);
        let a = doc.to_automaton().unwrap();
        let again = AutomatonDocument::from_automaton("sample", &a);
        assert_eq!(again, doc);
        assert!(des_isomorphic(&a, &again.to_automaton().unwrap()).holds());
    }

    #[test]
    fn unknown_label_is_rejected() {
        let mut doc = sample();
        doc.transitions.push((0, "zz".into(), 1));
        assert!(matches!(
            doc.to_automaton(),
            Err(FormatError::Validation(_))
        ));
    }

    #[test]
    fn duplicate_transition_is_rejected() {
        let mut doc = sample();
        doc.transitions.push((0, "a".into(), 1));
        assert!(matches!(
            doc.to_automaton(),
            Err(FormatError::Validation(_))
        ));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"name":"x","events":[],"states":0,"marked":[],"transitions":[],"extra":1}"#;
        assert!(matches!(parse(text), Err(FormatError::Parse(_))));
    }

    #[test]
    fn missing_initial_is_rejected() {
        let mut doc = sample();
        doc.initial = None;
        assert!(matches!(
            doc.to_automaton(),
            Err(FormatError::Validation(_))
        ));
    }

    #[test]
    fn empty_automaton_document() {
        let doc = AutomatonDocument {
            name: "empty".into(),
            events: vec![EventDoc {
                label: "a".into(),
                controllable: true,
            }],
            states: 0,
            initial: None,
            marked: vec![],
            transitions: vec![],
            cell_of: None,
            flags: None,
        };
        let a = doc.to_automaton().unwrap();
        assert!(a.is_void());
    }
}
