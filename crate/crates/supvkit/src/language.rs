//! Language-level decision procedures and the bounded-string oracle.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, EventId};
use crate::automaton::{Automaton, StateId};
use crate::error::Error;

/// A finite event string, as alphabet indices.
pub type Word = Vec<EventId>;

/// Renders a word with comma-separated labels; the empty word prints as ε.
pub fn format_word(alphabet: &Alphabet, word: &[EventId]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    word.iter()
        .map(|&e| alphabet.label(e))
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses a comma-separated label string into a word. Empty input and
/// "ε" denote the empty word.
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, Error> {
    let text = text.trim();
    if text.is_empty() || text == "ε" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|label| {
            let label = label.trim();
            alphabet
                .id_of(label)
                .ok_or_else(|| Error::UnknownEvent(label.to_string()))
        })
        .collect()
}

/// Which of the two behaviors a witness separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceKind {
    Closed,
    Marked,
}

/// A string separating two languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageDifference {
    pub witness: Word,
    pub kind: DifferenceKind,
}

/// Outcome of a language-equality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageCheck {
    Equal,
    Differs(LanguageDifference),
}

impl LanguageCheck {
    pub fn holds(&self) -> bool {
        matches!(self, LanguageCheck::Equal)
    }

    pub fn witness(&self) -> Option<&LanguageDifference> {
        match self {
            LanguageCheck::Equal => None,
            LanguageCheck::Differs(d) => Some(d),
        }
    }
}

/// Decides L(a) = L(b) and Lm(a) = Lm(b) by synchronized traversal,
/// flagging the first reachable pair at which the defined-event sets or
/// the markings differ. Requires identical alphabets.
pub fn language_equal(a: &Automaton, b: &Automaton) -> Result<LanguageCheck, Error> {
    compare(a, b, true)
}

/// Decides L(a) ⊆ L(b) and Lm(a) ⊆ Lm(b); on failure the difference
/// carries a string of `a` outside the corresponding behavior of `b`.
pub fn language_subset(a: &Automaton, b: &Automaton) -> Result<LanguageCheck, Error> {
    compare(a, b, false)
}

fn compare(a: &Automaton, b: &Automaton, symmetric: bool) -> Result<LanguageCheck, Error> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(
            "language comparison requires identical alphabets".into(),
        ));
    }
    let differs = |witness: Word, kind: DifferenceKind| {
        Ok(LanguageCheck::Differs(LanguageDifference { witness, kind }))
    };
    let (ia, ib) = match (a.initial(), b.initial()) {
        (Some(ia), Some(ib)) => (ia, ib),
        (None, None) => return Ok(LanguageCheck::Equal),
        (None, Some(_)) => {
            if symmetric {
                return differs(Vec::new(), DifferenceKind::Closed);
            }
            return Ok(LanguageCheck::Equal);
        }
        (Some(_), None) => return differs(Vec::new(), DifferenceKind::Closed),
    };

    let mut seen: HashMap<(StateId, StateId), ()> = HashMap::new();
    let mut queue: VecDeque<((StateId, StateId), Word)> = VecDeque::new();
    seen.insert((ia, ib), ());
    queue.push_back(((ia, ib), Vec::new()));
    while let Some(((sa, sb), word)) = queue.pop_front() {
        if a.is_marked(sa) && !b.is_marked(sb) {
            return differs(word, DifferenceKind::Marked);
        }
        if symmetric && b.is_marked(sb) && !a.is_marked(sa) {
            return differs(word, DifferenceKind::Marked);
        }
        for e in a.alphabet().ids() {
            let ta = a.step(sa, e);
            let tb = b.step(sb, e);
            match (ta, tb) {
                (Some(ta), Some(tb)) => {
                    if seen.insert((ta, tb), ()).is_none() {
                        let mut w = word.clone();
                        w.push(e);
                        queue.push_back(((ta, tb), w));
                    }
                }
                (Some(_), None) => {
                    let mut w = word;
                    w.push(e);
                    return differs(w, DifferenceKind::Closed);
                }
                (None, Some(_)) if symmetric => {
                    let mut w = word;
                    w.push(e);
                    return differs(w, DifferenceKind::Closed);
                }
                _ => {}
            }
        }
    }
    Ok(LanguageCheck::Equal)
}

/// Membership facts for one enumerated string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringFacts {
    pub word: Word,
    pub in_closed: bool,
    pub in_marked: bool,
}

/// Default cap on the number of strings `enumerate_strings` may visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

/// Exact membership of every string of length ≤ `max_len` in L(a) and
/// Lm(a), in length-lexicographic order (lexicographic within a length,
/// by event order). Fails with [`Error::BudgetExceeded`] when the string
/// count would exceed `cap` (default [`DEFAULT_ENUMERATION_CAP`]).
pub fn enumerate_strings(
    a: &Automaton,
    max_len: usize,
    cap: Option<u128>,
) -> Result<Vec<StringFacts>, Error> {
    let cap = cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let k = a.alphabet().len() as u128;
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k);
        if total > cap {
            return Err(Error::BudgetExceeded { needed: total, cap });
        }
    }

    let mut out: Vec<StringFacts> = Vec::new();
    // frontier of (word, state-after-word); None once the run has died
    let mut frontier: Vec<(Word, Option<StateId>)> = vec![(Vec::new(), a.initial())];
    for len in 0..=max_len {
        for (word, state) in &frontier {
            out.push(StringFacts {
                word: word.clone(),
                in_closed: state.is_some(),
                in_marked: state.is_some_and(|s| a.is_marked(s)),
            });
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(frontier.len() * a.alphabet().len());
        for (word, state) in frontier {
            for e in a.alphabet().ids() {
                let mut w = word.clone();
                w.push(e);
                next.push((w, state.and_then(|s| a.step(s, e))));
            }
        }
        frontier = next;
    }
    Ok(out)
}
