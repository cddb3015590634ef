//! The embedded example corpus: named jobs whose outputs are pinned as
//! golden files by the integration tests.

pub struct CorpusEntry {
    pub name: &'static str,
    pub spec: &'static str,
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "example-a",
        spec: include_str!("../corpus/example-a.json"),
    },
    CorpusEntry {
        name: "pair-finite",
        spec: include_str!("../corpus/pair-finite.json"),
    },
    CorpusEntry {
        name: "pair-infinite",
        spec: include_str!("../corpus/pair-infinite.json"),
    },
    CorpusEntry {
        name: "pair-corrected",
        spec: include_str!("../corpus/pair-corrected.json"),
    },
    CorpusEntry {
        name: "null-immersion",
        spec: include_str!("../corpus/null-immersion.json"),
    },
    CorpusEntry {
        name: "nonnull-search",
        spec: include_str!("../corpus/nonnull-search.json"),
    },
    CorpusEntry {
        name: "plane-case-one",
        spec: include_str!("../corpus/plane-case-one.json"),
    },
    CorpusEntry {
        name: "plane-case-three",
        spec: include_str!("../corpus/plane-case-three.json"),
    },
    CorpusEntry {
        name: "circular-case-five",
        spec: include_str!("../corpus/circular-case-five.json"),
    },
    CorpusEntry {
        name: "circular-case-six",
        spec: include_str!("../corpus/circular-case-six.json"),
    },
    CorpusEntry {
        name: "reduction-sample",
        spec: include_str!("../corpus/reduction-sample.json"),
    },
    CorpusEntry {
        name: "guard-improper",
        spec: include_str!("../corpus/guard-improper.json"),
    },
    CorpusEntry {
        name: "guard-symmetry",
        spec: include_str!("../corpus/guard-symmetry.json"),
    },
    CorpusEntry {
        name: "guard-proper-pass",
        spec: include_str!("../corpus/guard-proper-pass.json"),
    },
];

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}
