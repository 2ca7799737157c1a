//! Self-loop classification of reduced supervisors, discovery of
//! tolerable observation restrictions, and the randomized verification
//! harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, EventId, ObservationMask};
use crate::automaton::{meet, Automaton, StateId};
use crate::error::Error;
use crate::language::{format_word, language_equal};
use crate::observation::{
    is_normal, is_relatively_observable, supconrobs, uncertainty_sets, ObservabilityWitness,
};
use crate::reduction::{check_rsup_normality, consistency_relation, supreduce};
use crate::synthesis::{control_equivalent, forbid_states, supcon, Supervisor};
use std::sync::Arc;

/// How an event occurs in an automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfLoopClass {
    /// Occurs, and every occurrence is a self-loop.
    SelfLoopOnly,
    /// Self-looped at every state of the automaton (and nowhere a
    /// non-self-loop).
    UniversalSelfLoop,
    /// Has at least one non-self-loop occurrence.
    Mixed,
    /// No occurrence at all.
    Absent,
}

/// Occurrence data for one event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSelfLoops {
    pub event: EventId,
    pub class: SelfLoopClass,
    pub self_loop_states: Vec<StateId>,
    pub other_transitions: Vec<(StateId, StateId)>,
}

/// Per-event self-loop classification of an automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfLoopReport {
    pub per_event: Vec<EventSelfLoops>,
}

impl SelfLoopReport {
    pub fn class(&self, event: EventId) -> SelfLoopClass {
        self.per_event[event].class
    }

    /// Events occurring exclusively as self-loops (universal included).
    pub fn self_loop_only_events(&self) -> Vec<EventId> {
        self.per_event
            .iter()
            .filter(|e| {
                matches!(
                    e.class,
                    SelfLoopClass::SelfLoopOnly | SelfLoopClass::UniversalSelfLoop
                )
            })
            .map(|e| e.event)
            .collect()
    }

    /// Events self-looped at every state.
    pub fn universal_self_loop_events(&self) -> Vec<EventId> {
        self.per_event
            .iter()
            .filter(|e| e.class == SelfLoopClass::UniversalSelfLoop)
            .map(|e| e.event)
            .collect()
    }
}

/// Structural classification of every event of `a` by a transition
/// scan.
pub fn classify_selfloops(a: &Automaton) -> SelfLoopReport {
    let per_event = a
        .alphabet()
        .ids()
        .map(|event| {
            let mut self_loop_states = Vec::new();
            let mut other_transitions = Vec::new();
            for s in 0..a.state_count() {
                if let Some(t) = a.step(s, event) {
                    if t == s {
                        self_loop_states.push(s);
                    } else {
                        other_transitions.push((s, t));
                    }
                }
            }
            let class = if !other_transitions.is_empty() {
                SelfLoopClass::Mixed
            } else if self_loop_states.is_empty() {
                SelfLoopClass::Absent
            } else if self_loop_states.len() == a.state_count() {
                SelfLoopClass::UniversalSelfLoop
            } else {
                SelfLoopClass::SelfLoopOnly
            };
            EventSelfLoops {
                event,
                class,
                self_loop_states,
                other_transitions,
            }
        })
        .collect();
    SelfLoopReport { per_event }
}

/// Options for the tolerable-projection search.
#[derive(Debug, Clone)]
pub struct ProjectionOptions {
    /// Also validate every mask obtained by hiding a subset of the
    /// self-loop-only events.
    pub exhaustive: bool,
    /// Cap on the number of masks the exhaustive search may check.
    pub budget: u128,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            exhaustive: false,
            budget: 1 << 12,
        }
    }
}

/// A checker-confirmed verdict about one candidate observation mask.
#[derive(Debug, Clone)]
pub struct ProjectionVerdict {
    /// The events hidden by the mask.
    pub unobservable: Vec<EventId>,
    pub mask: ObservationMask,
    pub rel_obs: bool,
    pub normal: bool,
    pub rel_obs_witness: Option<ObservabilityWitness>,
    pub normal_witness: Option<Vec<EventId>>,
}

impl ProjectionVerdict {
    pub fn tolerable(&self) -> bool {
        self.rel_obs
    }
}

fn checked_verdict(
    sup: &Supervisor,
    plant: &Automaton,
    ambient: &Automaton,
    unobservable: Vec<EventId>,
) -> Result<ProjectionVerdict, Error> {
    let alphabet = sup.automaton().alphabet();
    let mask = ObservationMask::from_observable_ids(
        alphabet,
        alphabet.ids().filter(|e| !unobservable.contains(e)),
    );
    let rel = is_relatively_observable(sup.automaton(), ambient, plant, &mask)?;
    let norm = is_normal(sup.automaton(), plant, &mask)?;
    Ok(ProjectionVerdict {
        unobservable,
        mask,
        rel_obs: rel.holds(),
        normal: norm.holds(),
        rel_obs_witness: rel.witness().cloned(),
        normal_witness: match norm {
            crate::observation::NormalityCheck::Normal => None,
            crate::observation::NormalityCheck::Violated { witness } => Some(witness),
        },
    })
}

/// Proposes observation restrictions read off the reduced supervisor
/// and validates every one with the property checkers: the full mask,
/// the mask hiding the self-loop-only events of the reduction, the mask
/// hiding the universally self-looped events, and (optionally,
/// budgeted) every subset of the self-loop-only events. Verdicts are
/// never inferred from structure alone.
pub fn find_tolerable_projections(
    sup: &Supervisor,
    plant: &Automaton,
    ambient: &Automaton,
    options: &ProjectionOptions,
) -> Result<Vec<ProjectionVerdict>, Error> {
    let reduced = supreduce(sup)?;
    let report = classify_selfloops(&reduced.automaton);
    let self_loop_only = report.self_loop_only_events();
    let universal = report.universal_self_loop_events();

    let mut candidates: Vec<Vec<EventId>> = vec![Vec::new(), self_loop_only.clone(), universal];
    if options.exhaustive {
        let count = 1u128
            .checked_shl(self_loop_only.len() as u32)
            .unwrap_or(u128::MAX);
        if count > options.budget {
            return Err(Error::BudgetExceeded {
                needed: count,
                cap: options.budget,
            });
        }
        for bits in 0..(1u64 << self_loop_only.len()) {
            let subset: Vec<EventId> = self_loop_only
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            candidates.push(subset);
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates.sort_by_key(|c| (c.len(), c.clone()));

    candidates
        .into_iter()
        .map(|unobservable| checked_verdict(sup, plant, ambient, unobservable))
        .collect()
}

/// Outcome of one property verification: holds, fails with a
/// counterexample, or the property's hypothesis was not met.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyVerdict<C> {
    Holds,
    Fails(C),
    Skipped { reason: String },
}

impl<C> PropertyVerdict<C> {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyVerdict::Holds)
    }

    pub fn failed(&self) -> bool {
        matches!(self, PropertyVerdict::Fails(_))
    }

    pub fn skipped(&self) -> bool {
        matches!(self, PropertyVerdict::Skipped { .. })
    }
}

/// Checks that every look-alike state pair of a relatively observable
/// supervisor is control consistent. Reported as skipped when the
/// relative-observability hypothesis does not hold.
pub fn verify_lookalike_consistency(
    sup: &Supervisor,
    plant: &Automaton,
    ambient: &Automaton,
    mask: &ObservationMask,
) -> Result<PropertyVerdict<(StateId, StateId)>, Error> {
    if !is_relatively_observable(sup.automaton(), ambient, plant, mask)?.holds() {
        return Ok(PropertyVerdict::Skipped {
            reason: "not relatively observable".into(),
        });
    }
    Ok(consistent_lookalikes(sup, mask))
}

fn consistent_lookalikes(
    sup: &Supervisor,
    mask: &ObservationMask,
) -> PropertyVerdict<(StateId, StateId)> {
    let rel = consistency_relation(sup);
    for &(x, y) in &uncertainty_sets(sup, mask).pairs {
        if !rel.consistent(x, y) {
            return PropertyVerdict::Fails((x, y));
        }
    }
    PropertyVerdict::Holds
}

/// The normal-supervisor variant: every look-alike state pair of a
/// normal, Lm(plant)-closed supervisor is control consistent. Skipped
/// when either hypothesis fails.
pub fn verify_normal_lookalike_consistency(
    sup: &Supervisor,
    plant: &Automaton,
    mask: &ObservationMask,
) -> Result<PropertyVerdict<(StateId, StateId)>, Error> {
    if !is_normal(sup.automaton(), plant, mask)?.holds() {
        return Ok(PropertyVerdict::Skipped {
            reason: "not normal".into(),
        });
    }
    // Lm(G)-closedness: K = K̄ ∩ Lm(G)
    let closed = meet(&sup.automaton().closure_recognizer(), plant)?.automaton;
    if !language_equal(&closed.reachable_trim(), sup.automaton())?.holds() {
        return Ok(PropertyVerdict::Skipped {
            reason: "not Lm(G)-closed".into(),
        });
    }
    Ok(consistent_lookalikes(sup, mask))
}

/// A non-self-loop occurrence of an unobservable event in a reduced
/// supervisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfLoopCounterexample {
    pub event: EventId,
    pub transition: (StateId, StateId),
}

/// Checks the self-loop signature of tolerable unobservability: every
/// unobservable event occurs in the reduction of the synthesized
/// relatively observable supervisor only as self-loops (or not at all).
/// Skipped when the synthesis comes out empty.
pub fn verify_hidden_selfloops(
    plant: &Automaton,
    spec: &Automaton,
    mask: &ObservationMask,
) -> Result<PropertyVerdict<SelfLoopCounterexample>, Error> {
    let sup = supconrobs(plant, spec, mask)?;
    if sup.is_empty() {
        return Ok(PropertyVerdict::Skipped {
            reason: "empty supervisor".into(),
        });
    }
    let reduced = supreduce(&sup)?;
    let report = classify_selfloops(&reduced.automaton);
    for e in mask.unobservable_ids() {
        if let SelfLoopClass::Mixed = report.class(e) {
            let transition = report.per_event[e].other_transitions[0];
            return Ok(PropertyVerdict::Fails(SelfLoopCounterexample {
                event: e,
                transition,
            }));
        }
    }
    Ok(PropertyVerdict::Holds)
}

/// Size bounds for the random instance generator.
#[derive(Debug, Clone)]
pub struct InstanceLimits {
    pub max_states: usize,
    pub max_events: usize,
}

impl Default for InstanceLimits {
    fn default() -> Self {
        InstanceLimits {
            max_states: 6,
            max_events: 4,
        }
    }
}

/// A reproducible random verification instance.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub plant: Automaton,
    pub spec: Automaton,
    pub mask: ObservationMask,
}

const EVENT_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Generates a trim plant, a state-forbidding specification, and an
/// observation mask, all determined by the seed.
pub fn random_instance(seed: u64, limits: &InstanceLimits) -> RandomInstance {
    assert!(limits.max_states >= 1 && limits.max_events >= 1);
    assert!(limits.max_events <= EVENT_NAMES.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_events = rng.gen_range(1..=limits.max_events);
    let alphabet = Arc::new(
        Alphabet::new((0..n_events).map(|i| (EVENT_NAMES[i], rng.gen_bool(0.5)))).unwrap(),
    );

    let mut plant = Automaton::empty(alphabet.clone());
    for _attempt in 0..32 {
        let n_states = rng.gen_range(1..=limits.max_states);
        let mut b = Automaton::builder(alphabet.clone(), n_states);
        for s in 0..n_states {
            for e in 0..n_events {
                if rng.gen_bool(0.55) {
                    b = b.transition(s, e, rng.gen_range(0..n_states));
                }
            }
        }
        let mut any_marked = false;
        for s in 0..n_states {
            if rng.gen_bool(0.35) {
                b = b.mark(s);
                any_marked = true;
            }
        }
        if !any_marked {
            b = b.mark(rng.gen_range(0..n_states));
        }
        let candidate = b.build().reachable_trim();
        if !candidate.is_void() {
            plant = candidate;
            break;
        }
    }
    if plant.is_void() {
        plant = Automaton::builder(alphabet.clone(), 1)
            .transition(0, 0, 0)
            .mark(0)
            .build();
    }

    let bad: Vec<bool> = (0..plant.state_count())
        .map(|_| rng.gen_bool(0.2))
        .collect();
    let spec = forbid_states(&plant, |s| bad[s]);
    let mask = ObservationMask::from_observable_ids(
        &alphabet,
        (0..n_events).filter(|_| rng.gen_bool(0.7)),
    );
    RandomInstance { plant, spec, mask }
}

/// Everything the harness measured for one seed.
#[derive(Debug, Clone)]
pub struct SeedReport {
    pub seed: u64,
    pub line: String,
    pub supcon_nonempty: bool,
    /// `None` when the supervisor was empty and there was nothing to
    /// reduce.
    pub control_equivalent: Option<bool>,
    pub rsup_normal: Option<bool>,
    pub lookalike_consistency: PropertyVerdict<(StateId, StateId)>,
    pub normal_lookalike_consistency: PropertyVerdict<(StateId, StateId)>,
    pub hidden_selfloops: PropertyVerdict<SelfLoopCounterexample>,
}

impl SeedReport {
    /// True when nothing measurable failed.
    pub fn clean(&self) -> bool {
        self.control_equivalent != Some(false)
            && self.rsup_normal != Some(false)
            && !self.lookalike_consistency.failed()
            && !self.normal_lookalike_consistency.failed()
            && !self.hidden_selfloops.failed()
    }
}

fn verdict_word<C>(v: &PropertyVerdict<C>) -> &'static str {
    match v {
        PropertyVerdict::Holds => "holds",
        PropertyVerdict::Fails(_) => "FAILS",
        PropertyVerdict::Skipped { .. } => "skipped",
    }
}

/// Runs every check on one seeded instance and formats the line-based
/// report entry.
pub fn run_seed(seed: u64, limits: &InstanceLimits) -> Result<SeedReport, Error> {
    let RandomInstance { plant, spec, mask } = random_instance(seed, limits);
    let alphabet = plant.alphabet().clone();
    let sup = supcon(&plant, &spec)?;

    let unobs: Vec<String> = mask
        .unobservable_ids()
        .map(|e| alphabet.label(e).to_string())
        .collect();
    let mut line = format!(
        "seed={seed} plant={} spec={} unobs=[{}] sup={}",
        plant.state_count(),
        spec.state_count(),
        unobs.join(","),
        sup.state_count(),
    );

    if sup.is_empty() {
        let hidden_selfloops = verify_hidden_selfloops(&plant, &spec, &mask)?;
        line.push_str(" empty");
        return Ok(SeedReport {
            seed,
            line,
            supcon_nonempty: false,
            control_equivalent: None,
            rsup_normal: None,
            lookalike_consistency: PropertyVerdict::Skipped {
                reason: "empty supervisor".into(),
            },
            normal_lookalike_consistency: PropertyVerdict::Skipped {
                reason: "empty supervisor".into(),
            },
            hidden_selfloops,
        });
    }

    let reduced = supreduce(&sup)?;
    let ctrl = control_equivalent(&reduced.automaton, sup.automaton(), &plant)?;
    let normal = check_rsup_normality(&reduced.automaton, &sup);
    let lookalike_consistency = verify_lookalike_consistency(&sup, &plant, sup.automaton(), &mask)?;
    let normal_lookalike_consistency = verify_normal_lookalike_consistency(&sup, &plant, &mask)?;
    let hidden_selfloops = verify_hidden_selfloops(&plant, &spec, &mask)?;

    line.push_str(&format!(
        " rsup={} ctrl_eq={} rsup_normal={} consistency={} normal_consistency={} selfloops={}",
        reduced.automaton.state_count(),
        if ctrl.holds() { "ok" } else { "FAIL" },
        if normal.holds() { "ok" } else { "FAIL" },
        verdict_word(&lookalike_consistency),
        verdict_word(&normal_lookalike_consistency),
        verdict_word(&hidden_selfloops),
    ));
    if let Some(d) = ctrl.witness() {
        line.push_str(&format!(
            " ctrl_witness={}",
            format_word(&alphabet, &d.witness)
        ));
    }
    if let PropertyVerdict::Fails(c) = &hidden_selfloops {
        line.push_str(&format!(
            " selfloop_event={} selfloop_transition={}->{}",
            alphabet.label(c.event),
            c.transition.0,
            c.transition.1
        ));
    }

    Ok(SeedReport {
        seed,
        line,
        supcon_nonempty: true,
        control_equivalent: Some(ctrl.holds()),
        rsup_normal: Some(normal.holds()),
        lookalike_consistency,
        normal_lookalike_consistency,
        hidden_selfloops,
    })
}

/// Aggregated harness results.
#[derive(Debug, Clone, Default)]
pub struct HarnessSummary {
    pub seeds: usize,
    pub nonempty: usize,
    pub failures: usize,
    pub lookalike_checked: usize,
    pub normal_lookalike_checked: usize,
    pub selfloop_checked: usize,
    pub lines: Vec<String>,
}

/// Runs the harness over a seed range.
pub fn run_harness(
    seeds: std::ops::Range<u64>,
    limits: &InstanceLimits,
) -> Result<HarnessSummary, Error> {
    let mut summary = HarnessSummary::default();
    for seed in seeds {
        let report = run_seed(seed, limits)?;
        summary.seeds += 1;
        if report.supcon_nonempty {
            summary.nonempty += 1;
        }
        if !report.clean() {
            summary.failures += 1;
        }
        if !report.lookalike_consistency.skipped() {
            summary.lookalike_checked += 1;
        }
        if !report.normal_lookalike_consistency.skipped() {
            summary.normal_lookalike_checked += 1;
        }
        if !report.hidden_selfloops.skipped() {
            summary.selfloop_checked += 1;
        }
        summary.lines.push(report.line);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use std::sync::Arc;

    fn alpha(labels: &[(&str, bool)]) -> Arc<Alphabet> {
        Arc::new(Alphabet::new(labels.iter().map(|&(l, c)| (l, c))).unwrap())
    }

    #[test]
    fn classification_partitions_occurring_events() {
        let al = alpha(&[("a", true), ("b", true), ("c", true), ("d", true)]);
        let a = Automaton::builder(al, 2)
            .transition(0, 0, 0) // a: self-loop at 0 only
            .transition(0, 1, 1) // b: mixed
            .transition(1, 1, 1)
            .transition(0, 2, 0) // c: universal
            .transition(1, 2, 1)
            .marks([0, 1])
            .build();
        let report = classify_selfloops(&a);
        assert_eq!(report.class(0), SelfLoopClass::SelfLoopOnly);
        assert_eq!(report.class(1), SelfLoopClass::Mixed);
        assert_eq!(report.class(2), SelfLoopClass::UniversalSelfLoop);
        assert_eq!(report.class(3), SelfLoopClass::Absent);
        assert_eq!(report.self_loop_only_events(), vec![0, 2]);
        assert_eq!(report.universal_self_loop_events(), vec![2]);
    }

    #[test]
    fn no_self_loops_means_every_occurring_event_is_mixed() {
        let al = alpha(&[("a", true), ("b", false)]);
        let a = Automaton::builder(al, 2)
            .transition(0, 0, 1)
            .transition(1, 1, 0)
            .marks([0, 1])
            .build();
        let report = classify_selfloops(&a);
        assert_eq!(report.class(0), SelfLoopClass::Mixed);
        assert_eq!(report.class(1), SelfLoopClass::Mixed);
        assert!(report.self_loop_only_events().is_empty());
    }

    #[test]
    fn full_observation_is_always_tolerable() {
        let al = alpha(&[("a", true), ("b", false)]);
        let plant = Automaton::builder(al, 2)
            .transition(0, 0, 1)
            .transition(1, 1, 0)
            .mark(0)
            .build();
        let sup = supcon(&plant, &plant).unwrap();
        let verdicts = find_tolerable_projections(
            &sup,
            &plant,
            sup.automaton(),
            &ProjectionOptions::default(),
        )
        .unwrap();
        let full = verdicts.iter().find(|v| v.unobservable.is_empty()).unwrap();
        assert!(full.rel_obs);
        assert!(full.normal);
    }

    #[test]
    fn exhaustive_search_respects_budget() {
        let al = alpha(&[("a", true), ("b", false)]);
        let plant = Automaton::builder(al, 1)
            .transition(0, 0, 0)
            .transition(0, 1, 0)
            .mark(0)
            .build();
        let sup = supcon(&plant, &plant).unwrap();
        let opts = ProjectionOptions {
            exhaustive: true,
            budget: 1,
        };
        assert!(matches!(
            find_tolerable_projections(&sup, &plant, sup.automaton(), &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn consistency_checks_vacuous_under_full_observation() {
        let al = alpha(&[("a", true)]);
        let plant = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .transition(1, 0, 0)
            .marks([0, 1])
            .build();
        let sup = supcon(&plant, &plant).unwrap();
        let mask = ObservationMask::full(&al);
        assert!(
            verify_lookalike_consistency(&sup, &plant, sup.automaton(), &mask)
                .unwrap()
                .holds()
        );
        assert!(verify_normal_lookalike_consistency(&sup, &plant, &mask)
            .unwrap()
            .holds());
    }

    #[test]
    fn selfloop_check_vacuous_with_full_observation() {
        let al = alpha(&[("a", true)]);
        let plant = Automaton::builder(al.clone(), 2)
            .transition(0, 0, 1)
            .transition(1, 0, 0)
            .marks([0, 1])
            .build();
        let mask = ObservationMask::full(&al);
        assert!(verify_hidden_selfloops(&plant, &plant, &mask)
            .unwrap()
            .holds());
    }

    #[test]
    fn same_seed_reproduces_identical_instances() {
        let limits = InstanceLimits::default();
        for seed in [0u64, 7, 99] {
            let a = random_instance(seed, &limits);
            let b = random_instance(seed, &limits);
            assert_eq!(a.plant, b.plant);
            assert_eq!(a.spec, b.spec);
            assert_eq!(a.mask, b.mask);
        }
    }

    #[test]
    fn tight_limits_give_single_state_instances() {
        let limits = InstanceLimits {
            max_states: 1,
            max_events: 1,
        };
        let inst = random_instance(3, &limits);
        assert_eq!(inst.plant.state_count(), 1);
        assert_eq!(inst.plant.alphabet().len(), 1);
    }

    #[test]
    fn transfer_line_projection_verdicts() {
        let tl = crate::models::transfer_line();
        let sup = supcon(&tl.plant, &tl.spec).unwrap();
        let al = tl.plant.alphabet().clone();
        let verdicts =
            find_tolerable_projections(&sup, &tl.plant, sup.automaton(), &ProjectionOptions::default())
                .unwrap();
        // hiding the self-loop-only events of the reduction is confirmed
        let one_three: Vec<EventId> =
            ["1", "3"].iter().map(|l| al.id_of(l).unwrap()).collect();
        let v = verdicts
            .iter()
            .find(|v| v.unobservable == one_three)
            .expect("mask hiding 1,3 proposed");
        assert!(v.rel_obs);
        // additionally hiding 8 is rejected by the checker
        let mask = ObservationMask::unobservable(&al, ["1", "3", "8"]).unwrap();
        let rejected = checked_verdict(
            &sup,
            &tl.plant,
            sup.automaton(),
            mask.unobservable_ids().collect(),
        )
        .unwrap();
        assert!(!rejected.rel_obs);
        assert!(rejected.rel_obs_witness.is_some());
    }

    #[test]
    fn harness_runs_a_small_sweep() {
        let limits = InstanceLimits::default();
        let summary = run_harness(0..25, &limits).unwrap();
        assert_eq!(summary.seeds, 25);
        assert_eq!(summary.failures, 0, "lines:\n{}", summary.lines.join("\n"));
        assert!(summary.nonempty > 0);
    }
}
