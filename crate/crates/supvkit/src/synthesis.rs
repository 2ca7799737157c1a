//! Supremal controllable supervisor synthesis and per-state control
//! flags.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{EventId, ObservationMask};
use crate::automaton::{meet, Automaton, StateId};
use crate::error::Error;
use crate::language::{format_word, language_equal, LanguageCheck, Word};
use crate::observation::{inverse_project, project};

/// Per-state control flags of a supervisor, computed against a plant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateFlags {
    /// E(x): events defined at the state.
    pub enabled: BTreeSet<EventId>,
    /// D(x): events undefined at the state but defined at some paired
    /// plant state.
    pub disabled: BTreeSet<EventId>,
    /// M(x): the state is marked in the supervisor.
    pub marked_in_sup: bool,
    /// T(x): some paired plant state is marked.
    pub marked_in_plant: bool,
}

/// A supervisor: its recognizer automaton, the plant states each
/// supervisor state pairs with in the reachable product, and the
/// per-state flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supervisor {
    automaton: Automaton,
    plant_pairing: Vec<BTreeSet<StateId>>,
    flags: Vec<StateFlags>,
}

impl Supervisor {
    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn is_empty(&self) -> bool {
        self.automaton.is_void()
    }

    pub fn state_count(&self) -> usize {
        self.automaton.state_count()
    }

    pub fn flags(&self, state: StateId) -> &StateFlags {
        &self.flags[state]
    }

    pub fn all_flags(&self) -> &[StateFlags] {
        &self.flags
    }

    pub fn plant_pairing(&self, state: StateId) -> &BTreeSet<StateId> {
        &self.plant_pairing[state]
    }
}

/// Distinguishes "same labels, different controllability" from a plain
/// alphabet mismatch.
fn require_same_alphabet(a: &Automaton, b: &Automaton) -> Result<(), Error> {
    if a.alphabet() == b.alphabet() {
        return Ok(());
    }
    let (aa, ba) = (a.alphabet(), b.alphabet());
    if aa.len() == ba.len() {
        for e in aa.ids() {
            if aa.label(e) == ba.label(e) && aa.is_controllable(e) != ba.is_controllable(e) {
                return Err(Error::ConflictingAttributes(aa.label(e).to_string()));
            }
        }
    }
    Err(Error::AlphabetMismatch(
        "operands must share one alphabet".into(),
    ))
}

/// Computes the recognizer of the supremal controllable sublanguage of
/// Lm(plant) ∩ Lm(spec): starting from the trimmed meet, states at which
/// an uncontrollable event is plant-defined but product-undefined are
/// deleted and the result re-trimmed, to fixpoint.
pub fn supcon(plant: &Automaton, spec: &Automaton) -> Result<Supervisor, Error> {
    require_same_alphabet(plant, spec)?;
    let product = meet(plant, spec)?;
    let n = product.automaton.state_count();
    let uncontrollable: Vec<EventId> = plant.alphabet().uncontrollable_ids().collect();

    let mut alive = vec![true; n];
    trim_within(&product.automaton, &mut alive);
    loop {
        let mut changed = false;
        for s in 0..n {
            if !alive[s] {
                continue;
            }
            let (q, _) = product.provenance[s];
            let violates = uncontrollable.iter().any(|&e| {
                plant.step(q, e).is_some()
                    && !product.automaton.step(s, e).is_some_and(|t| alive[t])
            });
            if violates {
                alive[s] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        trim_within(&product.automaton, &mut alive);
    }

    let sup = product.automaton.restrict_renumber(&alive);
    compute_flags(&sup, plant)
}

/// Clears `alive` flags of states not reachable from the initial state
/// or not co-reachable to a marked state within the alive set.
fn trim_within(a: &Automaton, alive: &mut [bool]) {
    let n = a.state_count();
    let mut reach = vec![false; n];
    if let Some(q0) = a.initial() {
        if alive[q0] {
            let mut queue = VecDeque::from([q0]);
            reach[q0] = true;
            while let Some(s) = queue.pop_front() {
                for (_, t) in a.transitions_from(s) {
                    if alive[t] && !reach[t] {
                        reach[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
    }
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (s, _, t) in a.transitions() {
        if reach[s] && reach[t] {
            preds[t].push(s);
        }
    }
    let mut coreach = vec![false; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if reach[s] && a.is_marked(s) {
            coreach[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for &p in &preds[s] {
            if !coreach[p] {
                coreach[p] = true;
                queue.push_back(p);
            }
        }
    }
    for s in 0..n {
        alive[s] = reach[s] && coreach[s];
    }
}

/// Computes the plant pairing and E/D/M/T flags of a supervisor
/// recognizer against a plant. The recognizer is normalized to its trim
/// form first. Fails with [`Error::NotSubbehavior`] when some string of
/// the supervisor is not possible in the plant.
pub fn compute_flags(sup: &Automaton, plant: &Automaton) -> Result<Supervisor, Error> {
    require_same_alphabet(sup, plant)?;
    let sup = sup.reachable_trim();
    if sup.is_void() {
        return Ok(Supervisor {
            automaton: sup,
            plant_pairing: Vec::new(),
            flags: Vec::new(),
        });
    }
    let (x0, q0) = match (sup.initial(), plant.initial()) {
        (Some(x0), Some(q0)) => (x0, q0),
        _ => {
            return Err(Error::NotSubbehavior("ε".into()));
        }
    };

    struct Node {
        x: StateId,
        q: StateId,
        parent: Option<(usize, EventId)>,
    }
    let mut nodes: Vec<Node> = vec![Node {
        x: x0,
        q: q0,
        parent: None,
    }];
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::from([((x0, q0), 0)]);
    let mut pairing: Vec<BTreeSet<StateId>> = vec![BTreeSet::new(); sup.state_count()];
    pairing[x0].insert(q0);
    let mut head = 0;
    while head < nodes.len() {
        let (x, q) = (nodes[head].x, nodes[head].q);
        for (e, x2) in sup.transitions_from(x) {
            let Some(q2) = plant.step(q, e) else {
                let mut word: Word = vec![e];
                let mut at = head;
                while let Some((p, pe)) = nodes[at].parent {
                    word.push(pe);
                    at = p;
                }
                word.reverse();
                return Err(Error::NotSubbehavior(format_word(sup.alphabet(), &word)));
            };
            if let std::collections::hash_map::Entry::Vacant(v) = index.entry((x2, q2)) {
                v.insert(nodes.len());
                nodes.push(Node {
                    x: x2,
                    q: q2,
                    parent: Some((head, e)),
                });
                pairing[x2].insert(q2);
            }
        }
        head += 1;
    }

    let flags = (0..sup.state_count())
        .map(|x| {
            let enabled: BTreeSet<EventId> = sup.defined_events(x).collect();
            let disabled: BTreeSet<EventId> = sup
                .alphabet()
                .ids()
                .filter(|&e| {
                    !enabled.contains(&e) && pairing[x].iter().any(|&q| plant.step(q, e).is_some())
                })
                .collect();
            StateFlags {
                enabled,
                disabled,
                marked_in_sup: sup.is_marked(x),
                marked_in_plant: pairing[x].iter().any(|&q| plant.is_marked(q)),
            }
        })
        .collect();

    Ok(Supervisor {
        automaton: sup,
        plant_pairing: pairing,
        flags,
    })
}

/// Decides whether `cand` is control equivalent to `sup` w.r.t. `plant`:
/// Lm(plant) ∩ Lm(cand) = Lm(sup) and L(plant) ∩ L(cand) = L(sup).
pub fn control_equivalent(
    cand: &Automaton,
    sup: &Automaton,
    plant: &Automaton,
) -> Result<LanguageCheck, Error> {
    let controlled = meet(plant, cand)?;
    language_equal(&controlled.automaton, sup)
}

/// The projected control-equivalence equalities:
/// Lm(plant) ∩ P⁻¹(Lm(P(cand))) = Lm(plant) ∩ P⁻¹(Lm(P(sup))) and the
/// closed-language analogue.
pub fn projected_control_equivalent(
    cand: &Automaton,
    sup: &Automaton,
    plant: &Automaton,
    mask: &ObservationMask,
) -> Result<LanguageCheck, Error> {
    require_same_alphabet(cand, plant)?;
    require_same_alphabet(sup, plant)?;
    let lift_cand = inverse_project(&project(cand, mask), plant.alphabet());
    let lift_sup = inverse_project(&project(sup, mask), plant.alphabet());
    let left = meet(plant, &lift_cand)?;
    let right = meet(plant, &lift_sup)?;
    language_equal(&left.automaton, &right.automaton)
}

/// Deletes the states satisfying `bad` (with their incident transitions)
/// from the plant and trims: a specification automaton over the full
/// alphabet.
pub fn forbid_states<F>(plant: &Automaton, bad: F) -> Automaton
where
    F: Fn(StateId) -> bool,
{
    let keep: Vec<bool> = (0..plant.state_count()).map(|s| !bad(s)).collect();
    plant.restrict_renumber(&keep).reachable_trim()
}
