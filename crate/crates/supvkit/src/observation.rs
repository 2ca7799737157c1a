//! Natural projections and the observation properties: observability,
//! relative observability, and normality; synthesis of controllable,
//! relatively observable supervisors under an observation mask.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::alphabet::{Alphabet, EventId, ObservationMask};
use crate::automaton::{meet, Automaton, StateId};
use crate::error::Error;
use crate::language::{format_word, language_equal, language_subset, LanguageCheck, Word};
use crate::synthesis::{compute_flags, supcon, Supervisor};

fn unobservable_closure(
    a: &Automaton,
    mask: &ObservationMask,
    seed: BTreeSet<StateId>,
) -> Vec<StateId> {
    let mut seen = seed;
    let mut queue: VecDeque<StateId> = seen.iter().copied().collect();
    while let Some(s) = queue.pop_front() {
        for (e, t) in a.transitions_from(s) {
            if !mask.is_observable(e) && seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter().collect()
}

struct Observer {
    /// Canonical (sorted) member sets, in first-reached order.
    subsets: Vec<Vec<StateId>>,
    /// Successors on observable events, keyed by full-alphabet ids.
    transitions: Vec<BTreeMap<EventId, usize>>,
}

fn observer(a: &Automaton, mask: &ObservationMask) -> Observer {
    assert_eq!(
        mask.len(),
        a.alphabet().len(),
        "mask/alphabet size mismatch"
    );
    let Some(q0) = a.initial() else {
        return Observer {
            subsets: Vec::new(),
            transitions: Vec::new(),
        };
    };
    let init = unobservable_closure(a, mask, BTreeSet::from([q0]));
    let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
    let mut subsets = vec![init.clone()];
    let mut transitions: Vec<BTreeMap<EventId, usize>> = vec![BTreeMap::new()];
    index.insert(init, 0);
    let mut head = 0;
    while head < subsets.len() {
        for e in a.alphabet().ids() {
            if !mask.is_observable(e) {
                continue;
            }
            let moved: BTreeSet<StateId> =
                subsets[head].iter().filter_map(|&s| a.step(s, e)).collect();
            if moved.is_empty() {
                continue;
            }
            let closed = unobservable_closure(a, mask, moved);
            let dst = match index.get(&closed) {
                Some(&dst) => dst,
                None => {
                    index.insert(closed.clone(), subsets.len());
                    subsets.push(closed);
                    transitions.push(BTreeMap::new());
                    subsets.len() - 1
                }
            };
            transitions[head].insert(e, dst);
        }
        head += 1;
    }
    Observer {
        subsets,
        transitions,
    }
}

/// Deterministic recognizer of P(L(a)) and P(Lm(a)), over the
/// observable sub-alphabet, by unobservable-closure subset
/// construction. A subset state is marked iff it contains a marked
/// state of `a`.
pub fn project(a: &Automaton, mask: &ObservationMask) -> Automaton {
    let obs = observer(a, mask);
    let sub = Arc::new(a.alphabet().restrict(mask));
    let mut b = Automaton::builder(sub.clone(), obs.subsets.len());
    for (s, subset) in obs.subsets.iter().enumerate() {
        if subset.iter().any(|&q| a.is_marked(q)) {
            b = b.mark(s);
        }
        for (&e, &t) in &obs.transitions[s] {
            let sub_e = sub
                .id_of(a.alphabet().label(e))
                .expect("observable event present in restricted alphabet");
            b = b.transition(s, sub_e, t);
        }
    }
    b.build()
}

/// Recognizer of P⁻¹ of the languages of `a`: every event of `full`
/// missing from `a`'s alphabet is self-looped at every state.
/// `a`'s alphabet must be a subset of `full` (same controllability).
pub fn inverse_project(a: &Automaton, full: &Arc<Alphabet>) -> Automaton {
    assert!(
        a.alphabet().is_subset_of(full),
        "inverse_project: alphabet is not a subset of the target alphabet"
    );
    if a.is_void() {
        return Automaton::empty(full.clone());
    }
    let mut b = Automaton::builder(full.clone(), a.state_count());
    b = b.initial(a.initial().unwrap());
    for s in 0..a.state_count() {
        if a.is_marked(s) {
            b = b.mark(s);
        }
        for (e, t) in a.transitions_from(s) {
            let fe = full.id_of(a.alphabet().label(e)).unwrap();
            b = b.transition(s, fe, t);
        }
        for fe in full.ids() {
            if a.alphabet().id_of(full.label(fe)).is_none() {
                b = b.transition(s, fe, s);
            }
        }
    }
    b.build()
}

/// One uncertainty set: the supervisor states reachable by some string
/// look-alike to a common observation, with its observable successors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncertaintySet {
    pub states: Vec<StateId>,
    pub successors: BTreeMap<EventId, usize>,
}

/// The family of uncertainty sets of a supervisor under a mask, plus
/// every unordered state pair co-resident in some set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncertaintyFamily {
    pub sets: Vec<UncertaintySet>,
    pub pairs: Vec<(StateId, StateId)>,
}

/// Subset construction over the supervisor recognizer; emits the
/// uncertainty sets and all look-alike state pairs.
pub fn uncertainty_sets(sup: &Supervisor, mask: &ObservationMask) -> UncertaintyFamily {
    let obs = observer(sup.automaton(), mask);
    let mut pairs: BTreeSet<(StateId, StateId)> = BTreeSet::new();
    for subset in &obs.subsets {
        for (i, &x) in subset.iter().enumerate() {
            for &y in &subset[i + 1..] {
                pairs.insert((x, y));
            }
        }
    }
    UncertaintyFamily {
        sets: obs
            .subsets
            .into_iter()
            .zip(obs.transitions)
            .map(|(states, successors)| UncertaintySet { states, successors })
            .collect(),
        pairs: pairs.into_iter().collect(),
    }
}

/// Which of the two observation conditions a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservationCondition {
    /// A continuation enabled after `s` is impossible after the
    /// look-alike `s'`.
    Continuation,
    /// Marking is not decided consistently across look-alike strings.
    Marking,
}

/// A pair of look-alike strings violating an observation condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityWitness {
    pub s: Word,
    pub s_prime: Word,
    /// The continuation event, for [`ObservationCondition::Continuation`].
    pub event: Option<EventId>,
    pub condition: ObservationCondition,
}

/// Outcome of an observability / relative-observability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObservabilityCheck {
    Observable,
    Violated(ObservabilityWitness),
}

impl ObservabilityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, ObservabilityCheck::Observable)
    }

    pub fn witness(&self) -> Option<&ObservabilityWitness> {
        match self {
            ObservabilityCheck::Observable => None,
            ObservabilityCheck::Violated(w) => Some(w),
        }
    }
}

/// The s'-side of a look-alike pair: ambient state, plant state, and
/// the K̄ state when the partner string is still inside K̄.
type Partner = (StateId, StateId, Option<StateId>);

/// One reachable configuration of the look-alike pair structure: the
/// s-side K̄ state plus one partner configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct PairNode {
    k: StateId,
    partner: Partner,
}

enum PairMove {
    Both(EventId),
    SOnly(EventId),
    SPrimeOnly(EventId),
}

/// Breadth-first exploration of all pairs (s, s') with P(s) = P(s'),
/// s ∈ K̄, s' ∈ C̄, represented by their state configurations.
/// Observable events advance both sides, unobservable events exactly
/// one. Parent links allow reconstructing witness strings.
struct LookAlikePairs {
    nodes: Vec<PairNode>,
    parents: Vec<Option<(usize, PairMove)>>,
}

impl LookAlikePairs {
    fn explore(
        k: &Automaton,
        ambient: &Automaton,
        plant: &Automaton,
        mask: &ObservationMask,
    ) -> LookAlikePairs {
        let mut nodes = Vec::new();
        let mut parents = Vec::new();
        let (Some(k0), Some(c0), Some(g0)) = (k.initial(), ambient.initial(), plant.initial())
        else {
            return LookAlikePairs { nodes, parents };
        };
        let root = PairNode {
            k: k0,
            partner: (c0, g0, Some(k0)),
        };
        let mut index: HashMap<PairNode, usize> = HashMap::from([(root, 0)]);
        nodes.push(root);
        parents.push(None);
        let mut head = 0;
        while head < nodes.len() {
            let PairNode {
                k: ks,
                partner: (c, g, kp),
            } = nodes[head];
            for e in k.alphabet().ids() {
                let k_next = k.step(ks, e);
                let c_next = ambient.step(c, e);
                let mut push =
                    |node: PairNode, mv: PairMove, index: &mut HashMap<PairNode, usize>| {
                        if let std::collections::hash_map::Entry::Vacant(v) = index.entry(node) {
                            v.insert(nodes.len());
                            nodes.push(node);
                            parents.push(Some((head, mv)));
                        }
                    };
                if mask.is_observable(e) {
                    if let (Some(k2), Some(c2)) = (k_next, c_next) {
                        let g2 = plant.step(g, e).expect("ambient is contained in the plant");
                        let kp2 = kp.and_then(|x| k.step(x, e));
                        push(
                            PairNode {
                                k: k2,
                                partner: (c2, g2, kp2),
                            },
                            PairMove::Both(e),
                            &mut index,
                        );
                    }
                } else {
                    if let Some(k2) = k_next {
                        push(
                            PairNode {
                                k: k2,
                                partner: (c, g, kp),
                            },
                            PairMove::SOnly(e),
                            &mut index,
                        );
                    }
                    if let Some(c2) = c_next {
                        let g2 = plant.step(g, e).expect("ambient is contained in the plant");
                        let kp2 = kp.and_then(|x| k.step(x, e));
                        push(
                            PairNode {
                                k: ks,
                                partner: (c2, g2, kp2),
                            },
                            PairMove::SPrimeOnly(e),
                            &mut index,
                        );
                    }
                }
            }
            head += 1;
        }
        LookAlikePairs { nodes, parents }
    }

    /// Reconstructs the witness strings (s, s') leading to a node.
    fn witness_strings(&self, mut at: usize) -> (Word, Word) {
        let mut s = Vec::new();
        let mut s_prime = Vec::new();
        while let Some((parent, mv)) = &self.parents[at] {
            match mv {
                PairMove::Both(e) => {
                    s.push(*e);
                    s_prime.push(*e);
                }
                PairMove::SOnly(e) => s.push(*e),
                PairMove::SPrimeOnly(e) => s_prime.push(*e),
            }
            at = *parent;
        }
        s.reverse();
        s_prime.reverse();
        (s, s_prime)
    }
}

fn check_pairs(
    k: &Automaton,
    ambient: &Automaton,
    plant: &Automaton,
    mask: &ObservationMask,
) -> ObservabilityCheck {
    let pairs = LookAlikePairs::explore(k, ambient, plant, mask);
    for (idx, node) in pairs.nodes.iter().enumerate() {
        let (c_state, g, kp) = node.partner;
        let _ = c_state;
        // continuation condition: sσ ∈ K̄ ∧ s'σ ∈ L(G) ⇒ s'σ ∈ K̄
        for e in k.alphabet().ids() {
            if k.step(node.k, e).is_some()
                && plant.step(g, e).is_some()
                && kp.and_then(|x| k.step(x, e)).is_none()
            {
                let (s, s_prime) = pairs.witness_strings(idx);
                return ObservabilityCheck::Violated(ObservabilityWitness {
                    s,
                    s_prime,
                    event: Some(e),
                    condition: ObservationCondition::Continuation,
                });
            }
        }
        // marking condition: s ∈ K ∧ s' ∈ C̄ ∩ Lm(G) ⇒ s' ∈ K
        if k.is_marked(node.k) && plant.is_marked(g) && !kp.is_some_and(|x| k.is_marked(x)) {
            let (s, s_prime) = pairs.witness_strings(idx);
            return ObservabilityCheck::Violated(ObservabilityWitness {
                s,
                s_prime,
                event: None,
                condition: ObservationCondition::Marking,
            });
        }
    }
    ObservabilityCheck::Observable
}

fn closed_containment(sub: &Automaton, sup: &Automaton) -> Result<LanguageCheck, Error> {
    language_subset(&sub.closure_recognizer(), &sup.closure_recognizer())
}

/// Decides whether Lm(supK) is relatively observable w.r.t. the ambient
/// C̄ = closure of Lm(ambientC), the plant, and the mask. Verifies the
/// containments K ⊆ C ⊆ Lm(plant) first.
pub fn is_relatively_observable(
    sup_k: &Automaton,
    ambient_c: &Automaton,
    plant: &Automaton,
    mask: &ObservationMask,
) -> Result<ObservabilityCheck, Error> {
    let k = sup_k.reachable_trim();
    let c = ambient_c.reachable_trim();
    if let LanguageCheck::Differs(d) = language_subset(&k, &c)? {
        return Err(Error::ContainmentViolated {
            which: "K ⊆ C".into(),
            witness: format_word(k.alphabet(), &d.witness),
        });
    }
    if let LanguageCheck::Differs(d) = language_subset(&c, plant)? {
        return Err(Error::ContainmentViolated {
            which: "C ⊆ Lm(G)".into(),
            witness: format_word(c.alphabet(), &d.witness),
        });
    }
    Ok(check_pairs(&k, &c, plant, mask))
}

/// Plain observability: relative observability with the ambient fixed
/// at K itself. Only the closed containment L(supK) ⊆ L(plant) is
/// required.
pub fn is_observable(
    sup_k: &Automaton,
    plant: &Automaton,
    mask: &ObservationMask,
) -> Result<ObservabilityCheck, Error> {
    let k = sup_k.reachable_trim();
    if let LanguageCheck::Differs(d) = closed_containment(&k, plant)? {
        return Err(Error::NotSubbehavior(format_word(k.alphabet(), &d.witness)));
    }
    Ok(check_pairs(&k, &k, plant, mask))
}

/// Outcome of a normality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalityCheck {
    Normal,
    Violated { witness: Word },
}

impl NormalityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, NormalityCheck::Normal)
    }
}

/// Decides normality of K̄ w.r.t. (L(plant), P):
/// P⁻¹P(K̄) ∩ L(plant) = K̄, by construction and language equality.
pub fn is_normal(
    sup_k: &Automaton,
    plant: &Automaton,
    mask: &ObservationMask,
) -> Result<NormalityCheck, Error> {
    let k = sup_k.reachable_trim();
    if k.is_void() {
        return Ok(NormalityCheck::Normal);
    }
    if let LanguageCheck::Differs(d) = closed_containment(&k, plant)? {
        return Err(Error::NotSubbehavior(format_word(k.alphabet(), &d.witness)));
    }
    let kbar = k.closure_recognizer();
    let lifted = inverse_project(&project(&kbar, mask), plant.alphabet());
    let lhs = meet(&lifted, &plant.closure_recognizer())?.automaton;
    Ok(match language_equal(&lhs, &kbar)? {
        LanguageCheck::Equal => NormalityCheck::Normal,
        LanguageCheck::Differs(d) => NormalityCheck::Violated { witness: d.witness },
    })
}

/// Iteration cap for the supconrobs fixpoint; exceeding it indicates a
/// bug rather than a large instance.
const SUPCONROBS_MAX_ROUNDS: usize = 10_000;

/// Synthesizes a controllable and relatively observable supervisor for
/// Lm(plant) ∩ Lm(spec): starting from the full-observation supcon
/// result, each round prunes the continuations and markings that
/// violate the two observation-consistency conditions against the
/// current candidate's own closure as ambient, then restores
/// controllability and nonblocking, until a fixpoint. The fixpoint
/// passes `is_relatively_observable` with ambient equal to itself (and,
/// on the bundled models, with the supcon ambient).
pub fn supconrobs(
    plant: &Automaton,
    spec: &Automaton,
    mask: &ObservationMask,
) -> Result<Supervisor, Error> {
    let sup0 = supcon(plant, spec)?;
    if sup0.is_empty() {
        return Ok(sup0);
    }
    let mut current = sup0.automaton().clone();
    for _ in 0..SUPCONROBS_MAX_ROUNDS {
        let (pruned, had_violations) = prune_observation_violations(&current, plant, mask);
        let pruned = pruned.reachable_trim();
        if pruned.is_void() {
            return compute_flags(&pruned, plant);
        }
        let sup = supcon(plant, &pruned)?;
        if sup.is_empty() {
            return Ok(sup);
        }
        let supcon_changed = !language_equal(sup.automaton(), &pruned)?.holds();
        if !had_violations && !supcon_changed {
            return Ok(sup);
        }
        current = sup.automaton().clone();
    }
    panic!("supconrobs did not reach a fixpoint within the round cap");
}

/// One pruning pass of the synthesis loop. The candidate K is
/// re-recognized over (state, uncertainty) classes, where the
/// uncertainty is the set of (K̄ state, plant state) configurations
/// reachable by look-alike strings of K̄ itself. Continuations whose
/// class holds a partner that the plant can extend but K̄ cannot are
/// deleted; classes holding a plant-marked but K-unmarked partner are
/// unmarked. Returns the pruned recognizer and whether anything was
/// removed.
fn prune_observation_violations(
    k: &Automaton,
    plant: &Automaton,
    mask: &ObservationMask,
) -> (Automaton, bool) {
    // a look-alike peer: the partner string's K̄ state and plant state
    type Peer = (StateId, StateId);
    let uclose = |seed: BTreeSet<Peer>| -> Vec<Peer> {
        let mut seen = seed;
        let mut queue: VecDeque<Peer> = seen.iter().copied().collect();
        while let Some((c, g)) = queue.pop_front() {
            for (e, c2) in k.transitions_from(c) {
                if mask.is_observable(e) {
                    continue;
                }
                let g2 = plant.step(g, e).expect("candidate is contained in the plant");
                if seen.insert((c2, g2)) {
                    queue.push_back((c2, g2));
                }
            }
        }
        seen.into_iter().collect()
    };

    let (Some(k0), Some(g0)) = (k.initial(), plant.initial()) else {
        return (Automaton::empty(k.alphabet().clone()), false);
    };

    type Class = (StateId, Vec<Peer>);
    let root: Class = (k0, uclose(BTreeSet::from([(k0, g0)])));
    let mut index: HashMap<Class, usize> = HashMap::from([(root.clone(), 0)]);
    let mut classes: Vec<Class> = vec![root];
    let mut edges: Vec<BTreeMap<EventId, usize>> = vec![BTreeMap::new()];
    let mut marked: Vec<bool> = Vec::new();
    let mut pruned_any = false;

    let mut head = 0;
    while head < classes.len() {
        let (ks, partners) = classes[head].clone();

        let mut is_marked = k.is_marked(ks);
        if is_marked
            && partners
                .iter()
                .any(|&(c, g)| plant.is_marked(g) && !k.is_marked(c))
        {
            is_marked = false;
            pruned_any = true;
        }
        marked.push(is_marked);

        for e in k.alphabet().ids() {
            let Some(k2) = k.step(ks, e) else { continue };
            let violates = partners
                .iter()
                .any(|&(c, g)| plant.step(g, e).is_some() && k.step(c, e).is_none());
            if violates {
                pruned_any = true;
                continue;
            }
            let next_partners = if mask.is_observable(e) {
                uclose(
                    partners
                        .iter()
                        .filter_map(|&(c, g)| {
                            k.step(c, e).map(|c2| {
                                let g2 = plant
                                    .step(g, e)
                                    .expect("candidate is contained in the plant");
                                (c2, g2)
                            })
                        })
                        .collect(),
                )
            } else {
                partners.clone()
            };
            let class: Class = (k2, next_partners);
            let dst = match index.get(&class) {
                Some(&d) => d,
                None => {
                    let d = classes.len();
                    index.insert(class.clone(), d);
                    classes.push(class);
                    edges.push(BTreeMap::new());
                    d
                }
            };
            edges[head].insert(e, dst);
        }
        head += 1;
    }

    let mut b = Automaton::builder(k.alphabet().clone(), classes.len());
    for (s, m) in marked.iter().enumerate() {
        if *m {
            b = b.mark(s);
        }
    }
    for (s, succ) in edges.iter().enumerate() {
        for (&e, &t) in succ {
            b = b.transition(s, e, t);
        }
    }
    (b.build(), pruned_any)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automaton::des_isomorphic;

    fn alpha(labels: &[(&str, bool)]) -> Arc<Alphabet> {
        Arc::new(Alphabet::new(labels.iter().map(|&(l, c)| (l, c))).unwrap())
    }

    #[test]
    fn full_observation_projection_is_identity() {
        let al = alpha(&[("a", true), ("b", false)]);
        let a = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .transition(1, 1, 0)
            .mark(0)
            .build();
        let p = project(&a, &ObservationMask::full(&al));
        assert!(des_isomorphic(&a, &p).holds());
    }

    #[test]
    fn total_erasure_collapses_to_one_state() {
        let al = alpha(&[("u", false)]);
        let a = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .mark(1)
            .build();
        let mask = ObservationMask::unobservable(&al, ["u"]).unwrap();
        let p = project(&a, &mask);
        assert_eq!(p.state_count(), 1);
        assert!(p.is_marked(0));
        assert!(p.alphabet().is_empty());
        assert!(p.in_marked(&[]));
    }

    #[test]
    fn inverse_project_round_trip() {
        let full = alpha(&[("a", true), ("u", false)]);
        let sub = alpha(&[("a", true)]);
        let a = Automaton::builder(sub, 2)
            .transition(0, 0, 1)
            .mark(1)
            .build();
        let lifted = inverse_project(&a, &full);
        // u self-loops everywhere
        assert_eq!(lifted.step(0, 1), Some(0));
        assert_eq!(lifted.step(1, 1), Some(1));
        // P(P⁻¹(L)) = L
        let mask = ObservationMask::unobservable(&full, ["u"]).unwrap();
        let back = project(&lifted, &mask);
        assert!(language_equal(&a, &back).unwrap().holds());
    }

    #[test]
    fn inverse_project_with_equal_alphabet_is_identity() {
        let al = alpha(&[("a", true)]);
        let a = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .mark(1)
            .build();
        let same = inverse_project(&a, &al);
        assert!(des_isomorphic(&a, &same).holds());
    }

    #[test]
    fn uncertainty_sets_of_chain_with_hidden_middle_event() {
        let al = alpha(&[("a", true), ("u", false)]);
        let a = Automaton::builder(al.clone(), 3)
            .transition(0, 0, 1)
            .transition(1, 1, 2)
            .mark(2)
            .build();
        let sup = compute_flags(&a, &a).unwrap();
        let mask = ObservationMask::unobservable(&al, ["u"]).unwrap();
        let fam = uncertainty_sets(&sup, &mask);
        assert_eq!(fam.sets.len(), 2);
        assert_eq!(fam.sets[0].states, vec![0]);
        assert_eq!(fam.sets[1].states, vec![1, 2]);
        assert_eq!(fam.pairs, vec![(1, 2)]);

        let full = uncertainty_sets(&sup, &ObservationMask::full(&al));
        assert!(full.pairs.is_empty());
        assert!(full.sets.iter().all(|s| s.states.len() == 1));
    }

    #[test]
    fn uncertainty_family_is_closed_under_observable_succession() {
        let al = alpha(&[("a", true), ("b", true), ("u", false)]);
        let a = Automaton::builder(al.clone(), 4)
            .transition(0, 0, 1)
            .transition(0, 2, 2)
            .transition(2, 0, 3)
            .transition(1, 1, 0)
            .transition(3, 1, 2)
            .marks([0, 1, 2, 3])
            .build();
        let sup = compute_flags(&a, &a).unwrap();
        let mask = ObservationMask::unobservable(&al, ["u"]).unwrap();
        let fam = uncertainty_sets(&sup, &mask);
        for set in &fam.sets {
            for (&e, &target) in &set.successors {
                assert!(mask.is_observable(e));
                let moved: Vec<StateId> = set
                    .states
                    .iter()
                    .filter_map(|&s| sup.automaton().step(s, e))
                    .collect();
                for m in moved {
                    assert!(
                        fam.sets[target].states.contains(&m),
                        "successor set must cover every one-step move"
                    );
                }
            }
        }
    }

    #[test]
    fn full_observation_is_always_observable_and_normal() {
        let al = alpha(&[("a", true), ("b", false)]);
        let plant = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .transition(1, 1, 0)
            .mark(0)
            .build();
        let mask = ObservationMask::full(&al);
        assert!(is_observable(&plant, &plant, &mask).unwrap().holds());
        assert!(is_relatively_observable(&plant, &plant, &plant, &mask)
            .unwrap()
            .holds());
        assert!(is_normal(&plant, &plant, &mask).unwrap().holds());
    }

    #[test]
    fn hidden_disablement_violates_observability() {
        // plant: 0 -a-> 1, 0 -u-> 2, 2 -a-> 3; supervisor allows a at 0
        // but not after u: strings ε and u are look-alike, a enabled
        // after ε, disabled (while plant-possible) after u.
        let al = alpha(&[("a", true), ("u", false)]);
        let plant = Automaton::builder(al.clone(), 4)
            .transition(0, 0, 1)
            .transition(0, 1, 2)
            .transition(2, 0, 3)
            .marks([0, 1, 2, 3])
            .build();
        let sup = Automaton::builder(al.clone(), 3)
            .transition(0, 0, 1)
            .transition(0, 1, 2)
            .marks([0, 1, 2])
            .build();
        let mask = ObservationMask::unobservable(&al, ["u"]).unwrap();
        match is_observable(&sup, &plant, &mask).unwrap() {
            ObservabilityCheck::Violated(w) => {
                assert_eq!(w.condition, ObservationCondition::Continuation);
                assert_eq!(w.event, Some(0));
                // replay: sσ ∈ K̄, s'σ ∈ L(G) − K̄
                let mut s_sigma = w.s.clone();
                s_sigma.push(0);
                let mut sp_sigma = w.s_prime.clone();
                sp_sigma.push(0);
                assert!(sup.in_closed(&s_sigma));
                assert!(plant.in_closed(&sp_sigma));
                assert!(!sup.in_closed(&sp_sigma));
            }
            ObservabilityCheck::Observable => panic!("must be unobservable"),
        }
        match is_normal(&sup, &plant, &mask).unwrap() {
            NormalityCheck::Violated { witness } => {
                assert!(plant.in_closed(&witness));
                assert!(!sup.in_closed(&witness));
            }
            NormalityCheck::Normal => panic!("must not be normal"),
        }
    }

    #[test]
    fn containment_precondition_is_checked() {
        let al = alpha(&[("a", true)]);
        let plant = Automaton::builder(al.clone(), 1).mark(0).build();
        let big = Automaton::builder(al, 2)
            .transition(0, 0, 1)
            .marks([0, 1])
            .build();
        let mask = ObservationMask::full(plant.alphabet());
        assert!(matches!(
            is_relatively_observable(&big, &big, &plant, &mask),
            Err(Error::ContainmentViolated { .. })
        ));
        assert!(matches!(
            is_observable(&big, &plant, &mask),
            Err(Error::NotSubbehavior(_))
        ));
    }

    #[test]
    fn supconrobs_with_full_observation_equals_supcon() {
        let al = alpha(&[("a", true), ("b", false)]);
        let plant = Automaton::builder(al.clone(), 3)
            .transition(0, 0, 1)
            .transition(1, 1, 2)
            .transition(2, 0, 0)
            .marks([0, 2])
            .build();
        let spec = plant.clone();
        let mask = ObservationMask::full(&al);
        let a = supcon(&plant, &spec).unwrap();
        let b = supconrobs(&plant, &spec, &mask).unwrap();
        assert!(language_equal(a.automaton(), b.automaton())
            .unwrap()
            .holds());
    }

    #[test]
    fn supconrobs_output_is_relatively_observable() {
        // same instance as hidden_disablement test: supcon output is not
        // observable, supconrobs must prune until it is
        let al = alpha(&[("a", true), ("u", false)]);
        let plant = Automaton::builder(al.clone(), 4)
            .transition(0, 0, 1)
            .transition(0, 1, 2)
            .transition(2, 0, 3)
            .marks([0, 1, 2, 3])
            .build();
        let spec = Automaton::builder(al.clone(), 3)
            .transition(0, 0, 1)
            .transition(0, 1, 2)
            .marks([0, 1, 2])
            .build();
        let mask = ObservationMask::unobservable(&al, ["u"]).unwrap();
        let sup0 = supcon(&plant, &spec).unwrap();
        let robs = supconrobs(&plant, &spec, &mask).unwrap();
        assert!(!robs.is_empty());
        assert!(
            is_relatively_observable(robs.automaton(), sup0.automaton(), &plant, &mask)
                .unwrap()
                .holds()
        );
        assert!(language_subset(robs.automaton(), sup0.automaton())
            .unwrap()
            .holds());
    }
}
