//! Graphviz renderings: Coxeter graph, state graph, digraph of cliques and
//! digraph of states-and-cliques.

use std::fmt::Write;

use crate::system::ConcurrentSystem;
use crate::trace::TraceMonoid;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected dependence graph without self-loops.
pub fn coxeter(m: &TraceMonoid) -> String {
    let mut out = String::from("graph coxeter {\n");
    for a in m.letters() {
        writeln!(out, "  {};", quote(m.name(a))).unwrap();
    }
    for a in m.letters() {
        for b in m.letters().filter(|b| b.0 > a.0) {
            if m.dependent(a, b) {
                writeln!(out, "  {} -- {};", quote(m.name(a)), quote(m.name(b))).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// States with one labelled edge per defined action entry.
pub fn states(s: &ConcurrentSystem) -> String {
    let m = s.monoid();
    let mut out = String::from("digraph states {\n");
    for name in s.state_names() {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
    for (a, l, b) in s.entries() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(s.state_name(a)),
            quote(s.state_name(b)),
            quote(m.name(l))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Nonempty cliques with the normal-pair relation.
pub fn cliques(m: &TraceMonoid) -> String {
    let g = m.clique_digraph();
    let mut out = String::from("digraph cliques {\n");
    for c in &g.nodes {
        writeln!(out, "  {};", quote(&m.clique_name(*c))).unwrap();
    }
    for (i, succ) in g.successors.iter().enumerate() {
        for &j in succ {
            writeln!(
                out,
                "  {} -> {};",
                quote(&m.clique_name(g.nodes[i])),
                quote(&m.clique_name(g.nodes[j]))
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Digraph of states-and-cliques; `null` lists node indices drawn dashed.
pub fn sc(s: &ConcurrentSystem, null: &[usize]) -> String {
    let g = s.sc_digraph();
    let label = |i: usize| quote(&s.node_name(g.nodes[i].state, g.nodes[i].clique));
    let mut out = String::from("digraph sc {\n  node [shape=box];\n");
    for i in 0..g.len() {
        if null.contains(&i) {
            writeln!(out, "  {} [style=dashed];", label(i)).unwrap();
        } else {
            writeln!(out, "  {};", label(i)).unwrap();
        }
    }
    for (i, succ) in g.successors.iter().enumerate() {
        for &j in succ {
            writeln!(out, "  {} -> {};", label(i), label(j)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
