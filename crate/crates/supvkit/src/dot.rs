//! Graphviz DOT export.

use crate::automaton::Automaton;

/// Renders an automaton as a DOT digraph: the initial state gets an
/// entry arrow, marked states are double circles, controllable-event
/// edges are solid and uncontrollable ones dashed. Output ordering is
/// deterministic (states ascending, events in alphabet order).
pub fn dot(a: &Automaton, name: &str) -> String {
    let mut out = String::new();
    let ident: String = name
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { '_' })
        .collect();
    out.push_str(&format!("digraph {ident} {{\n"));
    if a.is_void() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=LR;\n");
    out.push_str("  __init [shape=point, label=\"\"];\n");
    for s in 0..a.state_count() {
        let shape = if a.is_marked(s) {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!("  {s} [shape={shape}];\n"));
    }
    out.push_str(&format!("  __init -> {};\n", a.initial().unwrap()));
    for (src, e, dst) in a.transitions() {
        let style = if a.alphabet().is_controllable(e) {
            "solid"
        } else {
            "dashed"
        };
        out.push_str(&format!(
            "  {src} -> {dst} [label=\"{}\", style={style}];\n",
            a.alphabet().label(e)
        ));
    }
    out.push_str("}\n");
    out
}
