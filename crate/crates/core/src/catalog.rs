//! Small named defining graphs used by tests, benches and the CLI.

use crate::graph::DefiningGraph;

const ENTRIES: &[(&str, &str)] = &[
    ("dihedral3", "s t 3"),
    ("f2", "s\nt"),
    ("path3", "s t 3\nt u 3"),
    ("star4", "c a 3\nc b 3\nc d 3"),
    ("cycle5", "s1 s2 3\ns2 s3 3\ns3 s4 3\ns4 s5 3\ns5 s1 3"),
    ("cycle6", "s1 s2 3\ns2 s3 3\ns3 s4 3\ns4 s5 3\ns5 s6 3\ns6 s1 3"),
    ("edge2", "s t 2"),
    ("product", "s1 t1 3\ns2 t2 3\ns1 s2 2\ns1 t2 2\nt1 s2 2\nt1 t2 2"),
];

const EXTRAS: &[(&str, &str)] = &[
    ("dihedral4", "s t 4"),
    ("a3", "s t 3\nt u 3\ns u 2"),
    ("square2", "a b 2\nb c 2\nc d 2\nd a 2\na c 2\nb d 2"),
];

/// The eight graphs of the connectivity catalog, in a fixed order.
pub fn catalog() -> Vec<(&'static str, DefiningGraph)> {
    ENTRIES
        .iter()
        .map(|&(name, text)| (name, DefiningGraph::parse(text).expect("catalog graph")))
        .collect()
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().chain(EXTRAS).map(|e| e.0).collect()
}

pub fn get(name: &str) -> Option<DefiningGraph> {
    ENTRIES
        .iter()
        .chain(EXTRAS)
        .find(|e| e.0 == name)
        .map(|e| DefiningGraph::parse(e.1).expect("catalog graph"))
}
