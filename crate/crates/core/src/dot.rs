//! Graphviz export of the connection graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::connections::forward_edges;
use crate::partition::ComponentPartition;
use crate::structure::KModuleStructure;

/// An undirected graph over the module indices: one edge per symmetrized
/// forward edge (loops kept), one cluster per class labelled by its
/// representative.
pub fn export_dot(st: &KModuleStructure, partition: &ComponentPartition) -> String {
    let edges: BTreeSet<(usize, usize)> = forward_edges(st)
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    let mut out = String::new();
    let _ = writeln!(out, "graph components {{");
    for (id, class) in partition.classes().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{id} {{");
        let _ = writeln!(out, "    label=\"[{}]\";", class[0]);
        for i in class {
            let _ = writeln!(out, "    v{i};");
        }
        let _ = writeln!(out, "  }}");
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connections::components;
    use crate::structure::fixtures::*;

    #[test]
    fn e1_graph() {
        let st = e1();
        let dot = export_dot(&st, &components(&st));
        assert_eq!(
            dot,
            "graph components {\n  subgraph cluster_0 {\n    label=\"[0]\";\n    v0;\n    v1;\n  }\n  subgraph cluster_1 {\n    label=\"[2]\";\n    v2;\n  }\n  v0 -- v1;\n  v2 -- v2;\n}\n"
        );
    }

    #[test]
    fn e3_has_no_edges() {
        let st = e3(3);
        let dot = export_dot(&st, &components(&st));
        assert!(!dot.contains("--"));
        assert_eq!(dot.matches("subgraph").count(), 3);
    }

    #[test]
    fn e2_single_cluster() {
        let st = e2();
        let dot = export_dot(&st, &components(&st));
        assert_eq!(dot.matches("subgraph").count(), 1);
        for e in ["v0 -- v0;", "v0 -- v1;", "v1 -- v1;"] {
            assert!(dot.contains(e));
        }
    }
}
