//! Deterministic finite automata over controllable/uncontrollable
//! alphabets, and the structural operations on them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use crate::alphabet::{Alphabet, EventId};
use crate::error::Error;
use crate::language::Word;

/// Dense state index of an [`Automaton`].
pub type StateId = usize;

/// A deterministic recognizer: states are `0..n`, the transition
/// function is partial, and the empty language is represented by an
/// automaton with no states and no initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Arc<Alphabet>,
    transitions: Vec<BTreeMap<EventId, StateId>>,
    initial: Option<StateId>,
    marked: Vec<bool>,
}

impl Automaton {
    /// The canonical empty-language automaton over `alphabet`.
    pub fn empty(alphabet: Arc<Alphabet>) -> Automaton {
        Automaton {
            alphabet,
            transitions: Vec::new(),
            initial: None,
            marked: Vec::new(),
        }
    }

    pub fn builder(alphabet: Arc<Alphabet>, states: usize) -> Builder {
        Builder {
            alphabet,
            transitions: vec![BTreeMap::new(); states],
            initial: if states > 0 { Some(0) } else { None },
            marked: vec![false; states],
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// True when the automaton recognizes the empty language by
    /// construction (no states at all).
    pub fn is_void(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn is_marked(&self, state: StateId) -> bool {
        self.marked[state]
    }

    pub fn marked_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&s| self.marked[s])
    }

    pub fn step(&self, state: StateId, event: EventId) -> Option<StateId> {
        self.transitions[state].get(&event).copied()
    }

    /// Events defined at `state`, in alphabet order.
    pub fn defined_events(&self, state: StateId) -> impl Iterator<Item = EventId> + '_ {
        self.transitions[state].keys().copied()
    }

    pub fn transitions_from(
        &self,
        state: StateId,
    ) -> impl Iterator<Item = (EventId, StateId)> + '_ {
        self.transitions[state].iter().map(|(&e, &t)| (e, t))
    }

    /// All transitions as `(src, event, dst)`, ordered by source state
    /// and then event.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, EventId, StateId)> + '_ {
        (0..self.state_count())
            .flat_map(move |s| self.transitions_from(s).map(move |(e, t)| (s, e, t)))
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().map(|t| t.len()).sum()
    }

    /// Runs a word from a given state; `None` once a step is undefined.
    pub fn run_from(&self, state: StateId, word: &[EventId]) -> Option<StateId> {
        word.iter().try_fold(state, |s, &e| self.step(s, e))
    }

    /// Runs a word from the initial state.
    pub fn run(&self, word: &[EventId]) -> Option<StateId> {
        self.initial.and_then(|q0| self.run_from(q0, word))
    }

    /// Membership of `word` in the closed behavior L.
    pub fn in_closed(&self, word: &[EventId]) -> bool {
        self.run(word).is_some()
    }

    /// Membership of `word` in the marked behavior Lm.
    pub fn in_marked(&self, word: &[EventId]) -> bool {
        self.run(word).is_some_and(|s| self.marked[s])
    }

    /// A copy with every state marked: the recognizer of the prefix
    /// closure L as both closed and marked language.
    pub fn closure_recognizer(&self) -> Automaton {
        Automaton {
            alphabet: self.alphabet.clone(),
            transitions: self.transitions.clone(),
            initial: self.initial,
            marked: vec![true; self.state_count()],
        }
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::new();
        if let Some(q0) = self.initial {
            seen[q0] = true;
            queue.push_back(q0);
        }
        while let Some(s) = queue.pop_front() {
            for (_, t) in self.transitions_from(s) {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    fn coreachable(&self, alive: &[bool]) -> Vec<bool> {
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); self.state_count()];
        for (s, _, t) in self.transitions() {
            if alive[s] && alive[t] {
                preds[t].push(s);
            }
        }
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::new();
        for s in 0..self.state_count() {
            if alive[s] && self.marked[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &p in &preds[s] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Restriction to the states flagged in `keep`, renumbered in
    /// first-reached (breadth-first, event-order) order from the initial
    /// state. States in `keep` that become unreachable are dropped.
    pub(crate) fn restrict_renumber(&self, keep: &[bool]) -> Automaton {
        let initial = match self.initial {
            Some(q0) if keep[q0] => q0,
            _ => return Automaton::empty(self.alphabet.clone()),
        };
        let mut order: Vec<StateId> = Vec::new();
        let mut new_id: Vec<Option<StateId>> = vec![None; self.state_count()];
        let mut queue = VecDeque::new();
        new_id[initial] = Some(0);
        order.push(initial);
        queue.push_back(initial);
        while let Some(s) = queue.pop_front() {
            for (_, t) in self.transitions_from(s) {
                if keep[t] && new_id[t].is_none() {
                    new_id[t] = Some(order.len());
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut transitions = vec![BTreeMap::new(); order.len()];
        let mut marked = vec![false; order.len()];
        for (new_s, &old_s) in order.iter().enumerate() {
            marked[new_s] = self.marked[old_s];
            for (e, t) in self.transitions_from(old_s) {
                if let Some(nt) = new_id[t] {
                    transitions[new_s].insert(e, nt);
                }
            }
        }
        Automaton {
            alphabet: self.alphabet.clone(),
            transitions,
            initial: Some(0),
            marked,
        }
    }

    /// Restricts the automaton to states both reachable from the initial
    /// state and co-reachable to a marked state. The marked behavior is
    /// unchanged and the result satisfies L = prefix-closure(Lm).
    pub fn reachable_trim(&self) -> Automaton {
        let reach = self.reachable();
        let coreach = self.coreachable(&reach);
        let keep: Vec<bool> = reach.iter().zip(&coreach).map(|(&r, &c)| r && c).collect();
        self.restrict_renumber(&keep)
    }

    /// True when every state is reachable and co-reachable.
    pub fn is_trim(&self) -> bool {
        if self.is_void() {
            return true;
        }
        let reach = self.reachable();
        if !reach.iter().all(|&r| r) {
            return false;
        }
        self.coreachable(&reach).iter().all(|&c| c)
    }
}

/// Incremental constructor for [`Automaton`] values; validates
/// determinism and index bounds as transitions are added.
#[derive(Debug, Clone)]
pub struct Builder {
    alphabet: Arc<Alphabet>,
    transitions: Vec<BTreeMap<EventId, StateId>>,
    initial: Option<StateId>,
    marked: Vec<bool>,
}

impl Builder {
    pub fn initial(mut self, state: StateId) -> Builder {
        assert!(state < self.transitions.len(), "initial state out of range");
        self.initial = Some(state);
        self
    }

    pub fn mark(mut self, state: StateId) -> Builder {
        self.marked[state] = true;
        self
    }

    pub fn marks<I: IntoIterator<Item = StateId>>(mut self, states: I) -> Builder {
        for s in states {
            self.marked[s] = true;
        }
        self
    }

    /// Adds `src --event--> dst`. Panics on a nondeterministic overwrite
    /// or an out-of-range endpoint.
    pub fn transition(mut self, src: StateId, event: EventId, dst: StateId) -> Builder {
        assert!(src < self.transitions.len() && dst < self.transitions.len());
        assert!(event < self.alphabet.len(), "event id out of range");
        let prev = self.transitions[src].insert(event, dst);
        assert!(
            prev.is_none() || prev == Some(dst),
            "conflicting transition at ({src}, {})",
            self.alphabet.label(event)
        );
        self
    }

    pub fn build(self) -> Automaton {
        Automaton {
            alphabet: self.alphabet,
            transitions: self.transitions,
            initial: self.initial,
            marked: self.marked,
        }
    }
}

/// A composed automaton together with the pair of component states each
/// product state came from.
#[derive(Debug, Clone)]
pub struct Product {
    pub automaton: Automaton,
    /// For each product state, the `(left, right)` component states.
    pub provenance: Vec<(StateId, StateId)>,
}

/// Synchronous product. Events occurring in both components move both in
/// lockstep; events occurring in only one move that component alone. An
/// event of the union alphabet with no occurrence in either component
/// never occurs in the product.
pub fn sync(a: &Automaton, b: &Automaton) -> Result<Product, Error> {
    let alphabet = Arc::new(a.alphabet().union(b.alphabet())?);
    // Map union event ids back into each component, `None` when the
    // component's alphabet lacks the label.
    let to_a: Vec<Option<EventId>> = alphabet
        .ids()
        .map(|e| a.alphabet().id_of(alphabet.label(e)))
        .collect();
    let to_b: Vec<Option<EventId>> = alphabet
        .ids()
        .map(|e| b.alphabet().id_of(alphabet.label(e)))
        .collect();
    let occurs = |aut: &Automaton, local: EventId| -> bool {
        (0..aut.state_count()).any(|s| aut.step(s, local).is_some())
    };
    let in_a: Vec<bool> = alphabet
        .ids()
        .map(|e| to_a[e].is_some_and(|l| occurs(a, l)))
        .collect();
    let in_b: Vec<bool> = alphabet
        .ids()
        .map(|e| to_b[e].is_some_and(|l| occurs(b, l)))
        .collect();

    let (ia, ib) = match (a.initial(), b.initial()) {
        (Some(ia), Some(ib)) => (ia, ib),
        _ => {
            return Ok(Product {
                automaton: Automaton::empty(alphabet),
                provenance: Vec::new(),
            })
        }
    };

    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut provenance: Vec<(StateId, StateId)> = Vec::new();
    let mut transitions: Vec<BTreeMap<EventId, StateId>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert((ia, ib), 0);
    provenance.push((ia, ib));
    transitions.push(BTreeMap::new());
    queue.push_back((ia, ib));

    while let Some((sa, sb)) = queue.pop_front() {
        let src = index[&(sa, sb)];
        for e in alphabet.ids() {
            let next = match (in_a[e], in_b[e]) {
                (true, true) => {
                    match (a.step(sa, to_a[e].unwrap()), b.step(sb, to_b[e].unwrap())) {
                        (Some(ta), Some(tb)) => Some((ta, tb)),
                        _ => None,
                    }
                }
                (true, false) => a.step(sa, to_a[e].unwrap()).map(|ta| (ta, sb)),
                (false, true) => b.step(sb, to_b[e].unwrap()).map(|tb| (sa, tb)),
                (false, false) => None,
            };
            if let Some(pair) = next {
                let dst = *index.entry(pair).or_insert_with(|| {
                    provenance.push(pair);
                    transitions.push(BTreeMap::new());
                    queue.push_back(pair);
                    provenance.len() - 1
                });
                transitions[src].insert(e, dst);
            }
        }
    }

    let marked = provenance
        .iter()
        .map(|&(sa, sb)| a.is_marked(sa) && b.is_marked(sb))
        .collect();
    Ok(Product {
        automaton: Automaton {
            alphabet,
            transitions,
            initial: Some(0),
            marked,
        },
        provenance,
    })
}

/// Meet (language intersection) of two automata over the same alphabet:
/// the reachable product in which a transition exists iff both
/// components define it, marked iff both are marked.
pub fn meet(a: &Automaton, b: &Automaton) -> Result<Product, Error> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(
            "meet requires identical alphabets".into(),
        ));
    }
    let alphabet = a.alphabet().clone();
    let (ia, ib) = match (a.initial(), b.initial()) {
        (Some(ia), Some(ib)) => (ia, ib),
        _ => {
            return Ok(Product {
                automaton: Automaton::empty(alphabet),
                provenance: Vec::new(),
            })
        }
    };

    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut provenance = Vec::new();
    let mut transitions: Vec<BTreeMap<EventId, StateId>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert((ia, ib), 0);
    provenance.push((ia, ib));
    transitions.push(BTreeMap::new());
    queue.push_back((ia, ib));
    while let Some((sa, sb)) = queue.pop_front() {
        let src = index[&(sa, sb)];
        for (e, ta) in a.transitions_from(sa) {
            if let Some(tb) = b.step(sb, e) {
                let pair = (ta, tb);
                let dst = *index.entry(pair).or_insert_with(|| {
                    provenance.push(pair);
                    transitions.push(BTreeMap::new());
                    queue.push_back(pair);
                    provenance.len() - 1
                });
                transitions[src].insert(e, dst);
            }
        }
    }
    let marked = provenance
        .iter()
        .map(|&(sa, sb)| a.is_marked(sa) && b.is_marked(sb))
        .collect();
    Ok(Product {
        automaton: Automaton {
            alphabet,
            transitions,
            initial: Some(0),
            marked,
        },
        provenance,
    })
}

/// Outcome of a DES-isomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoCheck {
    /// `mapping[z]` is the image of state `z` of the left automaton.
    Isomorphic { mapping: Vec<StateId> },
    /// Not isomorphic; `witness` is a string at which the parallel
    /// traversal diverged, when one exists.
    NotIsomorphic { witness: Option<Word> },
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IsoCheck::Isomorphic { .. })
    }
}

/// Decides DES-isomorphism of two trim deterministic automata over the
/// same alphabet. The candidate bijection is forced by parallel
/// traversal from the initial pair; the check verifies that it is a
/// bijection preserving the initial state, markings, and the transition
/// function in both directions.
pub fn des_isomorphic(a: &Automaton, b: &Automaton) -> IsoCheck {
    if a.alphabet() != b.alphabet() {
        return IsoCheck::NotIsomorphic { witness: None };
    }
    let (ia, ib) = match (a.initial(), b.initial()) {
        (Some(ia), Some(ib)) => (ia, ib),
        (None, None) => {
            return IsoCheck::Isomorphic {
                mapping: Vec::new(),
            }
        }
        _ => {
            return IsoCheck::NotIsomorphic {
                witness: Some(Vec::new()),
            }
        }
    };
    if a.state_count() != b.state_count() {
        return IsoCheck::NotIsomorphic { witness: None };
    }

    let n = a.state_count();
    let mut mapping: Vec<Option<StateId>> = vec![None; n];
    let mut hit: Vec<bool> = vec![false; n];
    let mut path: Vec<Option<Word>> = vec![None; n];
    let mut queue = VecDeque::new();
    mapping[ia] = Some(ib);
    hit[ib] = true;
    path[ia] = Some(Vec::new());
    queue.push_back(ia);

    while let Some(sa) = queue.pop_front() {
        let sb = mapping[sa].unwrap();
        let here = path[sa].clone().unwrap();
        if a.is_marked(sa) != b.is_marked(sb) {
            return IsoCheck::NotIsomorphic {
                witness: Some(here),
            };
        }
        let ev_a: Vec<EventId> = a.defined_events(sa).collect();
        let ev_b: Vec<EventId> = b.defined_events(sb).collect();
        if ev_a != ev_b {
            let mut w = here;
            let diff = ev_a
                .iter()
                .chain(ev_b.iter())
                .copied()
                .find(|&e| a.step(sa, e).is_some() != b.step(sb, e).is_some());
            if let Some(e) = diff {
                w.push(e);
            }
            return IsoCheck::NotIsomorphic { witness: Some(w) };
        }
        for e in ev_a {
            let ta = a.step(sa, e).unwrap();
            let tb = b.step(sb, e).unwrap();
            let mut w = here.clone();
            w.push(e);
            match mapping[ta] {
                Some(prev) if prev != tb => {
                    return IsoCheck::NotIsomorphic { witness: Some(w) };
                }
                Some(_) => {}
                None => {
                    if hit[tb] {
                        // tb already the image of a different state
                        return IsoCheck::NotIsomorphic { witness: Some(w) };
                    }
                    mapping[ta] = Some(tb);
                    hit[tb] = true;
                    path[ta] = Some(w);
                    queue.push_back(ta);
                }
            }
        }
    }

    if mapping.iter().any(|m| m.is_none()) {
        // Unreachable states on the left (inputs were not trim).
        return IsoCheck::NotIsomorphic { witness: None };
    }
    IsoCheck::Isomorphic {
        mapping: mapping.into_iter().map(Option::unwrap).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(labels: &[(&str, bool)]) -> Arc<Alphabet> {
        Arc::new(Alphabet::new(labels.iter().map(|&(l, c)| (l, c))).unwrap())
    }

    /// 3-state chain 0 -a-> 1 -b-> 2 with marks as given.
    fn chain(marks: &[StateId]) -> Automaton {
        let al = alpha(&[("a", true), ("b", true)]);
        Automaton::builder(al, 3)
            .transition(0, 0, 1)
            .transition(1, 1, 2)
            .marks(marks.iter().copied())
            .build()
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Automaton>();
        assert_send_sync::<Product>();
        assert_send_sync::<crate::alphabet::Alphabet>();
        assert_send_sync::<crate::alphabet::ObservationMask>();
    }

    #[test]
    fn trim_is_a_fixpoint_on_trim_input() {
        let a = chain(&[2]);
        let t = a.reachable_trim();
        assert!(des_isomorphic(&a, &t).holds());
        assert!(t.is_trim());
    }

    #[test]
    fn trim_of_unmarked_automaton_is_empty() {
        let a = chain(&[]);
        let t = a.reachable_trim();
        assert!(t.is_void());
        assert_eq!(t.initial(), None);
    }

    #[test]
    fn trim_drops_non_coreachable_tail() {
        // only state 1 marked: state 2 is not co-reachable
        let a = chain(&[1]);
        let t = a.reachable_trim();
        assert_eq!(t.state_count(), 2);
        assert!(t.in_marked(&[0]));
        assert!(!t.in_closed(&[0, 1]));
    }

    #[test]
    fn meet_with_self_is_identity_up_to_iso() {
        let a = chain(&[2]);
        let m = meet(&a, &a).unwrap().automaton;
        assert!(des_isomorphic(&a, &m.reachable_trim()).holds());
    }

    #[test]
    fn meet_with_universal_selfloop_automaton_is_identity() {
        let a = chain(&[2]);
        let u = Automaton::builder(a.alphabet().clone(), 1)
            .transition(0, 0, 0)
            .transition(0, 1, 0)
            .mark(0)
            .build();
        let m = meet(&a, &u).unwrap().automaton;
        assert!(des_isomorphic(&a, &m).holds());
    }

    #[test]
    fn meet_rejects_alphabet_mismatch() {
        let a = chain(&[2]);
        let b = Automaton::builder(alpha(&[("a", true)]), 1).mark(0).build();
        assert!(matches!(meet(&a, &b), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn sync_of_disjoint_alphabets_is_a_shuffle() {
        let a1 = alpha(&[("a", true)]);
        let a2 = alpha(&[("b", false)]);
        let m1 = Automaton::builder(a1, 2)
            .transition(0, 0, 1)
            .mark(1)
            .build();
        let m2 = Automaton::builder(a2, 2)
            .transition(0, 0, 1)
            .mark(1)
            .build();
        let p = sync(&m1, &m2).unwrap();
        assert_eq!(p.automaton.state_count(), 4);
        let ab = [0, 1];
        let ba = [1, 0];
        assert!(p.automaton.in_marked(&ab));
        assert!(p.automaton.in_marked(&ba));
    }

    #[test]
    fn sync_with_empty_is_empty() {
        let a = chain(&[2]);
        let e = Automaton::empty(a.alphabet().clone());
        assert!(sync(&a, &e).unwrap().automaton.is_void());
    }

    #[test]
    fn sync_with_self_is_idempotent() {
        let a = chain(&[2]);
        let p = sync(&a, &a).unwrap().automaton;
        assert!(des_isomorphic(&a, &p).holds());
    }

    #[test]
    fn sync_rejects_conflicting_attributes() {
        let a = Automaton::builder(alpha(&[("a", true)]), 1).mark(0).build();
        let b = Automaton::builder(alpha(&[("a", false)]), 1)
            .mark(0)
            .build();
        assert!(matches!(sync(&a, &b), Err(Error::ConflictingAttributes(_))));
    }

    #[test]
    fn iso_is_invariant_under_state_renumbering() {
        let al = alpha(&[("a", true), ("b", false)]);
        let a = Automaton::builder(al.clone(), 3)
            .transition(0, 0, 1)
            .transition(1, 1, 2)
            .transition(2, 0, 0)
            .mark(2)
            .build();
        // same machine with states permuted by (0 2 1)
        let b = Automaton::builder(al, 3)
            .initial(2)
            .transition(2, 0, 0)
            .transition(0, 1, 1)
            .transition(1, 0, 2)
            .mark(1)
            .build();
        assert!(des_isomorphic(&a, &b).holds());
    }

    #[test]
    fn iso_distinguishes_languages_with_witness() {
        let al = alpha(&[("a", true), ("b", false)]);
        let one = Automaton::builder(al.clone(), 1)
            .transition(0, 0, 0)
            .mark(0)
            .build();
        let two = Automaton::builder(al, 2)
            .transition(0, 0, 1)
            .mark(0)
            .mark(1)
            .build();
        match des_isomorphic(&one, &two) {
            IsoCheck::NotIsomorphic { .. } => {}
            other => panic!("expected non-isomorphic, got {other:?}"),
        }
    }
}
