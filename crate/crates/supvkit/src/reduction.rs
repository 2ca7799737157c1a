//! Supervisor reduction: control consistency, control congruences,
//! the induced supervisor, and normality w.r.t. the original
//! supervisor.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::error::Error;
use crate::synthesis::Supervisor;

/// The reflexive, symmetric (not necessarily transitive) control
/// consistency relation over supervisor states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyRelation {
    n: usize,
    pairs: Vec<bool>,
}

impl ConsistencyRelation {
    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn consistent(&self, x: StateId, y: StateId) -> bool {
        self.pairs[x * self.n + y]
    }
}

/// Evaluates control consistency over all state pairs: no event enabled
/// at one state may be disabled at the other, and states with equal
/// plant-marking flags must agree on supervisor marking.
pub fn consistency_relation(sup: &Supervisor) -> ConsistencyRelation {
    let n = sup.state_count();
    let mut pairs = vec![false; n * n];
    for x in 0..n {
        for y in x..n {
            let fx = sup.flags(x);
            let fy = sup.flags(y);
            let no_conflict =
                fx.enabled.is_disjoint(&fy.disabled) && fy.enabled.is_disjoint(&fx.disabled);
            let marking_ok =
                fx.marked_in_plant != fy.marked_in_plant || fx.marked_in_sup == fy.marked_in_sup;
            let ok = no_conflict && marking_ok;
            pairs[x * n + y] = ok;
            pairs[y * n + x] = ok;
        }
    }
    ConsistencyRelation { n, pairs }
}

/// An indexed family of state cells covering the supervisor state set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlCover {
    /// Nonempty cells of pairwise control-consistent states; each cell
    /// is sorted.
    pub cells: Vec<Vec<StateId>>,
    /// True when the cells are pairwise disjoint.
    pub congruence: bool,
}

impl ControlCover {
    /// Builds the identity partition (one singleton cell per state).
    pub fn identity(states: usize) -> ControlCover {
        ControlCover {
            cells: (0..states).map(|s| vec![s]).collect(),
            congruence: true,
        }
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// The cell index of each state; fails when the cells overlap or do
    /// not cover every state.
    pub fn cell_of(&self, states: usize) -> Result<Vec<usize>, Error> {
        let mut cell_of = vec![None; states];
        for (i, cell) in self.cells.iter().enumerate() {
            for &x in cell {
                if x >= states {
                    return Err(Error::NonCongruenceCover(format!(
                        "cell {i} mentions state {x} out of range"
                    )));
                }
                if let Some(j) = cell_of[x] {
                    return Err(Error::NonCongruenceCover(format!(
                        "state {x} lies in cells {j} and {i}"
                    )));
                }
                cell_of[x] = Some(i);
            }
        }
        cell_of
            .into_iter()
            .enumerate()
            .map(|(x, c)| {
                c.ok_or_else(|| Error::NonCongruenceCover(format!("state {x} is in no cell")))
            })
            .collect()
    }

    /// Re-verifies the two cover conditions against a supervisor: cells
    /// nonempty and pairwise consistent, and one-step successors of a
    /// cell confined to a single cell per event.
    pub fn validate(&self, sup: &Supervisor, rel: &ConsistencyRelation) -> Result<(), Error> {
        let cell_of = self.cell_of(sup.state_count())?;
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidCover(format!("cell {i} is empty")));
            }
            for (a, &x) in cell.iter().enumerate() {
                for &y in &cell[a + 1..] {
                    if !rel.consistent(x, y) {
                        return Err(Error::InvalidCover(format!(
                            "states {x}, {y} in cell {i} are not control consistent"
                        )));
                    }
                }
            }
            for e in sup.automaton().alphabet().ids() {
                let targets: BTreeSet<usize> = cell
                    .iter()
                    .filter_map(|&x| sup.automaton().step(x, e))
                    .map(|t| cell_of[t])
                    .collect();
                if targets.len() > 1 {
                    return Err(Error::InvalidCover(format!(
                        "successors of cell {i} on event {e} span {} cells",
                        targets.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut at = x;
    while parent[at] != root {
        let next = parent[at];
        parent[at] = root;
        at = next;
    }
    root
}

/// Greedy construction of a control congruence, in two phases. First,
/// event by event in alphabet order, all source/target pairs of that
/// event's transitions are merged at once (committed only when the
/// whole closure stays consistent): an event whose endpoint pairs can
/// be lumped turns into self-loops of the induced supervisor, which is
/// what makes tolerably unobservable events visible in the reduction.
/// Second, remaining state pairs are tried in lexicographic order.
/// Every merge propagates the successor-closure constraints as further
/// forced merges and is rolled back entirely if the closure reaches an
/// inconsistent pair.
pub fn build_congruence(sup: &Supervisor, rel: &ConsistencyRelation) -> ControlCover {
    let n = sup.state_count();
    let mut parent: Vec<usize> = (0..n).collect();

    for e in sup.automaton().alphabet().ids() {
        let mut trial = parent.clone();
        if event_edge_merge(&mut trial, e, sup, rel) {
            parent = trial;
        }
    }

    for x in 0..n {
        for y in (x + 1)..n {
            if find(&mut parent, x) == find(&mut parent, y) {
                continue;
            }
            if !rel.consistent(x, y) {
                continue;
            }
            let mut trial = parent.clone();
            if try_merge(&mut trial, x, y, sup, rel) {
                parent = trial;
            }
        }
    }

    let mut by_root: BTreeMap<usize, Vec<StateId>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        by_root.entry(r).or_default().push(x);
    }
    ControlCover {
        cells: by_root.into_values().collect(),
        congruence: true,
    }
}

/// Merges the source/target cells of every transition of one event,
/// propagating closure; false when some forced pair is inconsistent.
fn event_edge_merge(
    parent: &mut Vec<usize>,
    event: EventId,
    sup: &Supervisor,
    rel: &ConsistencyRelation,
) -> bool {
    for x in 0..parent.len() {
        if let Some(t) = sup.automaton().step(x, event) {
            if !try_merge(parent, x, t, sup, rel) {
                return false;
            }
        }
    }
    true
}

/// Attempts to merge the cells of `x` and `y` in `parent`, propagating
/// successor closure; returns false (leaving `parent` in an arbitrary
/// intermediate state the caller discards) when an inconsistent pair is
/// reached.
fn try_merge(
    parent: &mut [usize],
    x: StateId,
    y: StateId,
    sup: &Supervisor,
    rel: &ConsistencyRelation,
) -> bool {
    let n = parent.len();
    let mut work: VecDeque<(usize, usize)> = VecDeque::from([(x, y)]);
    while let Some((a, b)) = work.pop_front() {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra == rb {
            continue;
        }
        let members_a: Vec<usize> = (0..n).filter(|&s| find(parent, s) == ra).collect();
        let members_b: Vec<usize> = (0..n).filter(|&s| find(parent, s) == rb).collect();
        for &u in &members_a {
            for &v in &members_b {
                if !rel.consistent(u, v) {
                    return false;
                }
            }
        }
        let (root, child) = (ra.min(rb), ra.max(rb));
        parent[child] = root;
        // successor closure for the merged cell
        let merged: Vec<usize> = members_a.into_iter().chain(members_b).collect();
        for e in sup.automaton().alphabet().ids() {
            let mut targets: Vec<usize> = merged
                .iter()
                .filter_map(|&s| sup.automaton().step(s, e))
                .map(|t| find(parent, t))
                .collect();
            targets.sort_unstable();
            targets.dedup();
            for pair in targets.windows(2) {
                work.push_back((pair[0], pair[1]));
            }
        }
    }
    true
}

/// Constructs the supervisor induced by a control congruence: one state
/// per cell, a transition per cell whose members agree on the successor
/// cell, initial at the cell of the initial state, marked where a cell
/// meets the marked set.
pub fn induce(sup: &Supervisor, cover: &ControlCover) -> Result<Automaton, Error> {
    let rel = consistency_relation(sup);
    cover.validate(sup, &rel)?;
    let aut = sup.automaton();
    if aut.is_void() {
        return Ok(Automaton::empty(aut.alphabet().clone()));
    }
    let cell_of = cover.cell_of(aut.state_count())?;
    let mut b = Automaton::builder(aut.alphabet().clone(), cover.cell_count());
    b = b.initial(cell_of[aut.initial().unwrap()]);
    for (i, cell) in cover.cells.iter().enumerate() {
        if cell.iter().any(|&x| aut.is_marked(x)) {
            b = b.mark(i);
        }
        for e in aut.alphabet().ids() {
            if let Some(t) = cell.iter().find_map(|&x| aut.step(x, e)) {
                b = b.transition(i, e, cell_of[t]);
            }
        }
    }
    Ok(b.build())
}

/// The joint reachability of supervisor strings through a candidate
/// reduced supervisor.
struct JointReach {
    /// For each candidate state: reached by some string of L(SUP).
    reached: Vec<bool>,
    /// For each candidate state: reached by some string of Lm(SUP).
    marked_reached: Vec<bool>,
    /// Exercised candidate transitions (z, σ): some s with ζ(z0,s)=z
    /// and sσ ∈ L(SUP).
    exercised: BTreeSet<(StateId, EventId)>,
}

fn joint_reach(cand: &Automaton, sup: &Automaton) -> JointReach {
    let mut reach = JointReach {
        reached: vec![false; cand.state_count()],
        marked_reached: vec![false; cand.state_count()],
        exercised: BTreeSet::new(),
    };
    let (Some(x0), Some(z0)) = (sup.initial(), cand.initial()) else {
        return reach;
    };
    let mut seen: BTreeSet<(StateId, StateId)> = BTreeSet::from([(x0, z0)]);
    let mut queue = VecDeque::from([(x0, z0)]);
    reach.reached[z0] = true;
    reach.marked_reached[z0] |= sup.is_marked(x0);
    while let Some((x, z)) = queue.pop_front() {
        for (e, x2) in sup.transitions_from(x) {
            let Some(z2) = cand.step(z, e) else { continue };
            reach.exercised.insert((z, e));
            reach.reached[z2] = true;
            reach.marked_reached[z2] |= sup.is_marked(x2);
            if seen.insert((x2, z2)) {
                queue.push_back((x2, z2));
            }
        }
    }
    reach
}

/// Prunes an induced supervisor to its normal form w.r.t. `sup`:
/// transitions never exercised by a supervisor string are deleted,
/// states never reached by a marked supervisor string are unmarked,
/// states never reached at all are deleted, and the result is
/// re-trimmed.
pub fn enforce_normality(j: &Automaton, sup: &Supervisor) -> Automaton {
    let aut = sup.automaton();
    if j.is_void() || aut.is_void() {
        return Automaton::empty(j.alphabet().clone());
    }
    let reach = joint_reach(j, aut);
    let mut b = Automaton::builder(j.alphabet().clone(), j.state_count());
    b = b.initial(j.initial().unwrap());
    for z in 0..j.state_count() {
        if j.is_marked(z) && reach.marked_reached[z] {
            b = b.mark(z);
        }
        for (e, t) in j.transitions_from(z) {
            if reach.exercised.contains(&(z, e)) {
                b = b.transition(z, e, t);
            }
        }
    }
    let pruned = b.build();
    let keep: Vec<bool> = reach.reached;
    pruned.restrict_renumber(&keep).reachable_trim()
}

/// A normality violation of a candidate reduced supervisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RsupViolation {
    /// Clause (i): the state is never reached by a supervisor string.
    UnreachedState(StateId),
    /// Clause (ii): the transition is never exercised by a supervisor
    /// string.
    UnexercisedTransition(StateId, EventId),
    /// Clause (iii): the marked state is never reached by a marked
    /// supervisor string.
    SpuriousMarking(StateId),
}

/// Outcome of a normality check of a reduced supervisor w.r.t. the
/// original one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RsupNormality {
    Normal,
    Violated(RsupViolation),
}

impl RsupNormality {
    pub fn holds(&self) -> bool {
        matches!(self, RsupNormality::Normal)
    }
}

/// Verifies the three normality clauses of a candidate `r` against the
/// supervisor by product reachability.
pub fn check_rsup_normality(r: &Automaton, sup: &Supervisor) -> RsupNormality {
    if r.is_void() {
        return RsupNormality::Normal;
    }
    let reach = joint_reach(r, sup.automaton());
    for z in 0..r.state_count() {
        if !reach.reached[z] {
            return RsupNormality::Violated(RsupViolation::UnreachedState(z));
        }
    }
    for (z, e, _) in r.transitions() {
        if !reach.exercised.contains(&(z, e)) {
            return RsupNormality::Violated(RsupViolation::UnexercisedTransition(z, e));
        }
    }
    for z in 0..r.state_count() {
        if r.is_marked(z) && !reach.marked_reached[z] {
            return RsupNormality::Violated(RsupViolation::SpuriousMarking(z));
        }
    }
    RsupNormality::Normal
}

/// A reduced supervisor: the pruned induced automaton, the control
/// cover it came from, and the cell of each original supervisor state.
#[derive(Debug, Clone)]
pub struct ReducedSupervisor {
    pub automaton: Automaton,
    pub cover: ControlCover,
    pub cell_of: Vec<usize>,
}

/// The full reduction pipeline: consistency relation, greedy control
/// congruence, induced supervisor, and normality enforcement.
pub fn supreduce(sup: &Supervisor) -> Result<ReducedSupervisor, Error> {
    if sup.is_empty() {
        return Ok(ReducedSupervisor {
            automaton: sup.automaton().clone(),
            cover: ControlCover {
                cells: Vec::new(),
                congruence: true,
            },
            cell_of: Vec::new(),
        });
    }
    let rel = consistency_relation(sup);
    let cover = build_congruence(sup, &rel);
    let induced = induce(sup, &cover)?;
    let automaton = enforce_normality(&induced, sup);
    let cell_of = cover.cell_of(sup.state_count())?;
    Ok(ReducedSupervisor {
        automaton,
        cover,
        cell_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automaton::des_isomorphic;
    use crate::synthesis::{compute_flags, control_equivalent, supcon};
    use std::sync::Arc;

    fn alpha(labels: &[(&str, bool)]) -> Arc<Alphabet> {
        Arc::new(Alphabet::new(labels.iter().map(|&(l, c)| (l, c))).unwrap())
    }

    fn simple_supervisor() -> (Supervisor, Automaton) {
        let al = alpha(&[("a", true), ("b", false)]);
        let plant = Automaton::builder(al, 3)
            .transition(0, 0, 1)
            .transition(1, 1, 2)
            .transition(2, 0, 1)
            .marks([0, 2])
            .build();
        (supcon(&plant, &plant).unwrap(), plant)
    }

    #[test]
    fn relation_is_reflexive_and_symmetric() {
        let (sup, _) = simple_supervisor();
        let rel = consistency_relation(&sup);
        for x in 0..rel.state_count() {
            assert!(rel.consistent(x, x));
            for y in 0..rel.state_count() {
                assert_eq!(rel.consistent(x, y), rel.consistent(y, x));
            }
        }
    }

    #[test]
    fn enable_disable_conflict_breaks_consistency() {
        // plant allows a at both states; supervisor enables a at 0 and
        // disables it at 1
        let al = alpha(&[("a", true), ("b", true)]);
        let plant = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 0)
            .transition(0, 1, 1)
            .transition(1, 0, 1)
            .marks([0, 1])
            .build();
        let sup = Automaton::builder(al, 2)
            .transition(0, 0, 0)
            .transition(0, 1, 1)
            .marks([0, 1])
            .build();
        let sup = compute_flags(&sup, &plant).unwrap();
        let rel = consistency_relation(&sup);
        assert!(!rel.consistent(0, 1));
    }

    #[test]
    fn identity_partition_induces_isomorphic_copy() {
        let (sup, _) = simple_supervisor();
        let cover = ControlCover::identity(sup.state_count());
        let j = induce(&sup, &cover).unwrap();
        assert!(des_isomorphic(&j, sup.automaton()).holds());
    }

    #[test]
    fn all_consistent_supervisor_collapses_to_one_state() {
        let al = alpha(&[("a", true)]);
        let plant = Automaton::builder(al, 2)
            .transition(0, 0, 1)
            .transition(1, 0, 0)
            .marks([0, 1])
            .build();
        let sup = supcon(&plant, &plant).unwrap();
        let rel = consistency_relation(&sup);
        let cover = build_congruence(&sup, &rel);
        assert_eq!(cover.cell_count(), 1);
        let j = induce(&sup, &cover).unwrap();
        assert_eq!(j.state_count(), 1);
        assert_eq!(j.step(0, 0), Some(0));
        assert!(j.is_marked(0));
    }

    #[test]
    fn overlapping_cover_is_rejected() {
        let (sup, _) = simple_supervisor();
        let cover = ControlCover {
            cells: vec![vec![0, 1], vec![1, 2]],
            congruence: false,
        };
        assert!(matches!(
            induce(&sup, &cover),
            Err(Error::NonCongruenceCover(_))
        ));
    }

    #[test]
    fn successor_splitting_cover_is_rejected() {
        let al = alpha(&[("a", true), ("b", true)]);
        let plant = Automaton::builder(al.clone(), 1)
            .transition(0, 0, 0)
            .transition(0, 1, 0)
            .mark(0)
            .build();
        // two branch heads whose a-successors are distinct states;
        // lumping the heads sends those successors into two cells
        let sup = Automaton::builder(al, 5)
            .transition(0, 0, 1)
            .transition(0, 1, 2)
            .transition(1, 0, 3)
            .transition(2, 0, 4)
            .marks([0, 1, 2, 3, 4])
            .build();
        let sup = compute_flags(&sup, &plant).unwrap();
        let rel = consistency_relation(&sup);
        let cover = ControlCover {
            cells: vec![vec![0], vec![1, 2], vec![3], vec![4]],
            congruence: true,
        };
        match cover.validate(&sup, &rel) {
            Err(Error::InvalidCover(msg)) => assert!(msg.contains("span")),
            other => panic!("expected an invalid cover, got {other:?}"),
        }
        assert!(induce(&sup, &cover).is_err());
    }

    #[test]
    fn normality_enforcement_is_a_fixpoint_on_sup_itself() {
        let (sup, _) = simple_supervisor();
        let pruned = enforce_normality(sup.automaton(), &sup);
        assert!(des_isomorphic(&pruned, sup.automaton()).holds());
        assert!(check_rsup_normality(sup.automaton(), &sup).holds());
    }

    #[test]
    fn spurious_marking_is_flagged() {
        let al = alpha(&[("a", true)]);
        let plant = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .mark(1)
            .build();
        let sup = supcon(&plant, &plant).unwrap();
        let r = Automaton::builder(al, 2)
            .transition(0, 0, 1)
            .marks([0, 1])
            .build();
        assert_eq!(
            check_rsup_normality(&r, &sup),
            RsupNormality::Violated(RsupViolation::SpuriousMarking(0))
        );
    }

    #[test]
    fn unexercised_transition_is_flagged() {
        let al = alpha(&[("a", true), ("b", true)]);
        let plant = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .marks([0, 1])
            .build();
        let sup = supcon(&plant, &plant).unwrap();
        // r admits b, which no supervisor string exercises
        let r = Automaton::builder(al, 2)
            .transition(0, 0, 1)
            .transition(0, 1, 1)
            .marks([0, 1])
            .build();
        assert_eq!(
            check_rsup_normality(&r, &sup),
            RsupNormality::Violated(RsupViolation::UnexercisedTransition(0, 1))
        );
    }

    #[test]
    fn supreduce_is_control_equivalent_and_normal() {
        let (sup, plant) = simple_supervisor();
        let reduced = supreduce(&sup).unwrap();
        assert!(reduced.automaton.state_count() <= sup.state_count());
        assert!(
            control_equivalent(&reduced.automaton, sup.automaton(), &plant)
                .unwrap()
                .holds()
        );
        assert!(check_rsup_normality(&reduced.automaton, &sup).holds());
        let rel = consistency_relation(&sup);
        assert!(reduced.cover.validate(&sup, &rel).is_ok());
    }

    #[test]
    fn pairwise_inconsistent_states_reduce_to_sup_itself() {
        let al = alpha(&[("a", true), ("b", true), ("c", true)]);
        let plant = Automaton::builder(al.clone(), 1)
            .transition(0, 0, 0)
            .transition(0, 1, 0)
            .transition(0, 2, 0)
            .mark(0)
            .build();
        // each supervisor state enables an event the others disable
        let sup = Automaton::builder(al, 3)
            .transition(0, 0, 1)
            .transition(1, 1, 2)
            .marks([0, 1, 2])
            .build();
        let sup = compute_flags(&sup, &plant).unwrap();
        let rel = consistency_relation(&sup);
        assert!(!rel.consistent(0, 1));
        assert!(!rel.consistent(0, 2));
        assert!(!rel.consistent(1, 2));
        let reduced = supreduce(&sup).unwrap();
        assert!(des_isomorphic(&reduced.automaton, sup.automaton()).holds());
    }

    #[test]
    fn empty_supervisor_reduces_to_empty() {
        let al = alpha(&[("a", false)]);
        let plant = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .marks([0, 1])
            .build();
        let spec = Automaton::builder(al, 1).mark(0).build();
        let sup = supcon(&plant, &spec).unwrap();
        assert!(sup.is_empty());
        let reduced = supreduce(&sup).unwrap();
        assert!(reduced.automaton.is_void());
        assert!(reduced.cover.cells.is_empty());
    }
}
