//! The bundled transfer-line and guideway models.

use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::automaton::{meet, sync, Automaton};
use crate::observation::inverse_project;
use crate::synthesis::forbid_states;

/// The transfer line: two machines and a test unit linked by buffers
/// B1 (capacity 3) and B2 (capacity 1). A workpiece passes M1 → B1 →
/// M2 → B2 → TU; the test unit either releases it or returns it to B1.
/// Events: 1/2 start/finish M1, 3/4 start/finish M2, 5 take by TU,
/// 6 accept-release, 8 reject-return. Odd events are controllable.
pub struct TransferLine {
    pub m1: Automaton,
    pub m2: Automaton,
    pub tu: Automaton,
    /// B1 buffer specification over {2, 3, 8}: 2 and 8 increment, 3
    /// decrements, capacity 3.
    pub b1: Automaton,
    /// B2 buffer specification over {4, 5}: 4 increments, 5 decrements,
    /// capacity 1.
    pub b2: Automaton,
    /// sync(M1, M2, TU).
    pub plant: Automaton,
    /// Both buffer specifications, lifted to the full alphabet and met.
    pub spec: Automaton,
}

fn machine(alphabet: Arc<Alphabet>, start: &str, finish: &[&str]) -> Automaton {
    let mut b = Automaton::builder(alphabet.clone(), 2).mark(0);
    b = b.transition(0, alphabet.id_of(start).unwrap(), 1);
    for f in finish {
        b = b.transition(1, alphabet.id_of(f).unwrap(), 0);
    }
    b.build()
}

/// A bounded-counter specification: `up` events increment, `down`
/// events decrement, states are the fill levels 0..=capacity, marked
/// at 0.
fn counter(alphabet: Arc<Alphabet>, up: &[&str], down: &[&str], capacity: usize) -> Automaton {
    let mut b = Automaton::builder(alphabet.clone(), capacity + 1).mark(0);
    for level in 0..capacity {
        for u in up {
            b = b.transition(level, alphabet.id_of(u).unwrap(), level + 1);
        }
    }
    for level in 1..=capacity {
        for d in down {
            b = b.transition(level, alphabet.id_of(d).unwrap(), level - 1);
        }
    }
    b.build()
}

pub fn transfer_line() -> TransferLine {
    let a_m1 = Arc::new(Alphabet::new([("1", true), ("2", false)]).unwrap());
    let a_m2 = Arc::new(Alphabet::new([("3", true), ("4", false)]).unwrap());
    let a_tu = Arc::new(Alphabet::new([("5", true), ("6", false), ("8", false)]).unwrap());
    let a_b1 = Arc::new(Alphabet::new([("2", false), ("3", true), ("8", false)]).unwrap());
    let a_b2 = Arc::new(Alphabet::new([("4", false), ("5", true)]).unwrap());

    let m1 = machine(a_m1, "1", &["2"]);
    let m2 = machine(a_m2, "3", &["4"]);
    let tu = machine(a_tu, "5", &["6", "8"]);
    let b1 = counter(a_b1, &["2", "8"], &["3"], 3);
    let b2 = counter(a_b2, &["4"], &["5"], 1);

    let plant = sync(&sync(&m1, &m2).unwrap().automaton, &tu)
        .unwrap()
        .automaton;
    let full = plant.alphabet();
    let spec = meet(&inverse_project(&b1, full), &inverse_project(&b2, full))
        .unwrap()
        .automaton
        .reachable_trim();

    TransferLine {
        m1,
        m2,
        tu,
        b1,
        b2,
        plant,
        spec,
    }
}

/// The guideway: two vehicles share a one-way track from station A to
/// station B split into four sections. Vehicle i moves through events
/// i1 (enter section 1), i3 (enter section 2), i0 (enter section 3),
/// i5 (enter section 4), i2 (arrive at B); odd events are controllable
/// stoplights. The specification excludes both vehicles from occupying
/// the same section.
pub struct Guideway {
    pub v1: Automaton,
    pub v2: Automaton,
    /// sync(V1, V2).
    pub plant: Automaton,
    /// Mutual exclusion of the section pairs (j, j), j = 1..4.
    pub spec: Automaton,
}

fn vehicle(prefix: usize) -> Automaton {
    let labels = [
        format!("{prefix}0"),
        format!("{prefix}1"),
        format!("{prefix}2"),
        format!("{prefix}3"),
        format!("{prefix}5"),
    ];
    let alphabet = Arc::new(
        Alphabet::new(
            labels
                .iter()
                .map(|l| (l.clone(), l.ends_with(['1', '3', '5']))),
        )
        .unwrap(),
    );
    let chain = [
        format!("{prefix}1"),
        format!("{prefix}3"),
        format!("{prefix}0"),
        format!("{prefix}5"),
        format!("{prefix}2"),
    ];
    let mut b = Automaton::builder(alphabet.clone(), 6).mark(5);
    for (i, label) in chain.iter().enumerate() {
        b = b.transition(i, alphabet.id_of(label).unwrap(), i + 1);
    }
    b.build()
}

pub fn guideway() -> Guideway {
    let v1 = vehicle(1);
    let v2 = vehicle(2);
    let product = sync(&v1, &v2).unwrap();
    let plant = product.automaton;
    // vehicle state j means "travelling in section j" for j = 1..4
    let spec = forbid_states(&plant, |s| {
        let (s1, s2) = product.provenance[s];
        s1 == s2 && (1..=4).contains(&s1)
    });
    Guideway {
        v1,
        v2,
        plant,
        spec,
    }
}
