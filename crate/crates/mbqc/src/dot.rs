//! Graphviz export of the influence relation.

use std::fmt::Write;

use mbqc_core::flow::ProcessingRelations;
use mbqc_core::stabilizer::Qubit;

/// Directed graph with an edge `a -> b` for every `T_ba = 1`. Gauge inputs
/// are boxes, computational outputs double circles, and qubits in both sets
/// boxes with a double border.
pub fn render(p: &ProcessingRelations) -> String {
    let n = p.n();
    let mut out = String::from("digraph mbqc {\n  node [shape=circle];\n");
    for a in 0..n {
        let q = Qubit::from_index(a);
        let attrs = match (p.igauge.contains(&q), p.ocomp.contains(&q)) {
            (true, true) => " [shape=box, peripheries=2]",
            (true, false) => " [shape=box]",
            (false, true) => " [shape=doublecircle]",
            (false, false) => "",
        };
        let _ = writeln!(out, "  {}{attrs};", a + 1);
    }
    for a in 0..n {
        for b in 0..n {
            if p.t.get(b, a) {
                let _ = writeln!(out, "  {} -> {};", a + 1, b + 1);
            }
        }
    }
    out.push_str("}\n");
    out
}
