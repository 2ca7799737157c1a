//! Supervisory control toolkit for discrete-event systems.
//!
//! The crate models a DES as a deterministic finite automaton with
//! controllable and uncontrollable events, and provides:
//!
//! * language-level primitives: trimming, synchronous product, meet,
//!   DES-isomorphism, language equality, bounded-string enumeration
//!   ([`automaton`], [`language`]);
//! * supremal controllable supervisor synthesis and per-state
//!   enable/disable/marking flags ([`synthesis`]);
//! * supervisor reduction through control covers and normality
//!   enforcement ([`reduction`]);
//! * natural projections, observability, relative observability,
//!   normality, and synthesis of controllable, relatively observable
//!   supervisors ([`observation`]);
//! * self-loop classification of reduced supervisors and the discovery
//!   of tolerable observation restrictions, together with a randomized
//!   verification harness ([`analysis`]);
//! * a JSON document format, Graphviz export, and the bundled
//!   transfer-line and guideway models ([`mod@format`], [`dot`],
//!   [`models`]).

pub mod alphabet;
pub mod analysis;
pub mod automaton;
pub mod cli;
pub mod dot;
pub mod error;
pub mod format;
pub mod language;
pub mod models;
pub mod observation;
pub mod reduction;
pub mod synthesis;

pub use alphabet::{Alphabet, EventId, ObservationMask};
pub use automaton::{des_isomorphic, meet, sync, Automaton, IsoCheck, Product, StateId};
pub use error::Error;
pub use language::{
    enumerate_strings, language_equal, language_subset, LanguageCheck, LanguageDifference,
    StringFacts, Word,
};
pub use observation::{
    inverse_project, is_normal, is_observable, is_relatively_observable, project, supconrobs,
    uncertainty_sets, NormalityCheck, ObservabilityCheck, ObservabilityWitness, UncertaintyFamily,
};
pub use reduction::{
    build_congruence, check_rsup_normality, consistency_relation, enforce_normality, induce,
    supreduce, ConsistencyRelation, ControlCover, ReducedSupervisor, RsupNormality, RsupViolation,
};
pub use synthesis::{
    compute_flags, control_equivalent, forbid_states, projected_control_equivalent, supcon,
    StateFlags, Supervisor,
};
