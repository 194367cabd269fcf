//! Trigger words, the multi-pattern matcher over them, and the partitioning
//! of sequences into segments.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{self, PAD};
use crate::error::{Error, Result};
use crate::graph::{Pangenome, Path, PrefixFreeGraph};

/// A non-empty set of distinct, uppercase words sharing one length `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerSet {
    words: Vec<Vec<u8>>,
    k: usize,
}

impl TriggerSet {
    pub fn new<I, W>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[u8]>,
    {
        let words: BTreeSet<Vec<u8>> = words
            .into_iter()
            .map(|w| w.as_ref().to_ascii_uppercase())
            .collect();
        let Some(first) = words.first() else {
            return Err(Error::Config("no trigger words".into()));
        };
        let k = first.len();
        if k == 0 {
            return Err(Error::Config("trigger words must not be empty".into()));
        }
        for w in &words {
            if w.len() != k {
                return Err(Error::Config(format!(
                    "trigger words have mixed lengths ({} and {})",
                    k,
                    w.len()
                )));
            }
            if w.iter().any(|&b| alphabet::is_reserved(b)) {
                return Err(Error::Config(format!(
                    "trigger word '{}' contains a reserved character",
                    String::from_utf8_lossy(w)
                )));
            }
        }
        Ok(TriggerSet {
            words: words.into_iter().collect(),
            k,
        })
    }

    /// Parses a trigger file: one word per line, blank lines and lines
    /// starting with `#` ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.split_whitespace().nth(1).is_some() {
                return Err(Error::parse(i + 1, "expected one trigger word per line"));
            }
            words.push(line.as_bytes().to_vec());
        }
        Self::new(words)
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn compile(&self) -> MatchAutomaton {
        MatchAutomaton::new(self)
    }
}

const ROOT: u32 = 0;

/// Aho-Corasick automaton over a [`TriggerSet`], stored as a complete
/// transition table.
#[derive(Debug, Clone)]
pub struct MatchAutomaton {
    k: usize,
    delta: Vec<[u32; 256]>,
    fail: Vec<u32>,
    // All words share one length, so a state accepts at most one of them.
    output: Vec<Option<usize>>,
}

/// A trigger occurrence; `end` is the inclusive end position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match {
    pub word: usize,
    pub end: usize,
}

impl Match {
    pub fn start(&self, k: usize) -> usize {
        self.end + 1 - k
    }
}

impl MatchAutomaton {
    fn new(triggers: &TriggerSet) -> Self {
        const NONE: u32 = u32::MAX;
        let mut goto: Vec<[u32; 256]> = vec![[NONE; 256]];
        let mut output = vec![None];
        for (w, word) in triggers.words.iter().enumerate() {
            let mut state = ROOT as usize;
            for &b in word {
                let next = goto[state][b as usize];
                state = if next == NONE {
                    goto.push([NONE; 256]);
                    output.push(None);
                    let new = goto.len() - 1;
                    goto[state][b as usize] = new as u32;
                    new
                } else {
                    next as usize
                };
            }
            output[state] = Some(w);
        }

        // Breadth-first completion of the goto function into a full DFA.
        let mut fail = vec![ROOT; goto.len()];
        let mut delta = goto;
        let mut queue = VecDeque::new();
        for slot in delta[0].iter_mut() {
            if *slot == NONE {
                *slot = ROOT;
            } else {
                fail[*slot as usize] = ROOT;
                queue.push_back(*slot);
            }
        }
        while let Some(state) = queue.pop_front() {
            let state = state as usize;
            // The failure state is shallower, so its row is already complete.
            let fallback = delta[fail[state] as usize];
            for (slot, via_fail) in delta[state].iter_mut().zip(fallback) {
                if *slot == NONE {
                    *slot = via_fail;
                } else {
                    fail[*slot as usize] = via_fail;
                    queue.push_back(*slot);
                }
            }
        }

        MatchAutomaton {
            k: triggers.k,
            delta,
            fail,
            output,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn failure(&self, state: usize) -> usize {
        self.fail[state] as usize
    }

    /// All trigger occurrences in `text`, ordered by end position.
    pub fn find_matches<'a>(&'a self, text: &'a [u8]) -> impl Iterator<Item = Match> + 'a {
        let mut state = ROOT;
        text.iter().enumerate().filter_map(move |(i, &b)| {
            state = self.delta[state as usize][b as usize];
            self.output[state as usize].map(|word| Match { word, end: i })
        })
    }

    /// Calls `f` with each segment of `seq` in order. The last call receives
    /// the unpadded tail and `true`; the caller appends the pads.
    fn scan(&self, seq: &[u8], mut f: impl FnMut(&[u8], bool)) {
        let mut boundary = 0;
        for m in self.find_matches(seq) {
            f(&seq[boundary..=m.end], false);
            boundary = m.start(self.k);
        }
        f(&seq[boundary..], true);
    }
}

/// Splits `seq` into segments: each trigger occurrence closes a segment that
/// began at the start of the previous occurrence (or at position 0), and the
/// tail is closed by `k` pad characters.
pub fn partition_sequence(seq: &[u8], automaton: &MatchAutomaton) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    automaton.scan(seq, |seg, last| {
        let mut seg = seg.to_vec();
        if last {
            seg.resize(seg.len() + automaton.k, PAD);
        }
        out.push(seg);
    });
    out
}

/// Partitions every sequence, deduplicates segments by content and returns
/// the normalized graph.
pub fn build_graph(pangenome: &Pangenome, triggers: &TriggerSet) -> Result<PrefixFreeGraph> {
    let automaton = triggers.compile();
    let k = automaton.k;
    let mut dictionary: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut segments: Vec<Vec<u8>> = Vec::new();
    let mut paths = Vec::with_capacity(pangenome.len());
    let mut tail = Vec::new();

    for seq in pangenome.sequences() {
        let mut steps = Vec::new();
        automaton.scan(&seq.data, |seg, last| {
            let seg = if last {
                tail.clear();
                tail.extend_from_slice(seg);
                tail.resize(seg.len() + k, PAD);
                tail.as_slice()
            } else {
                seg
            };
            let id = match dictionary.get(seg) {
                Some(&id) => id,
                None => {
                    let id = segments.len();
                    segments.push(seg.to_vec());
                    dictionary.insert(seg.to_vec(), id);
                    id
                }
            };
            steps.push(id);
        });
        paths.push(Path {
            name: seq.name.clone(),
            steps,
        });
    }
    drop(dictionary);

    PrefixFreeGraph::normalize(k, segments, paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triggers(words: &[&str]) -> TriggerSet {
        TriggerSet::new(words.iter().map(|w| w.as_bytes())).unwrap()
    }

    fn naive_matches(words: &[Vec<u8>], text: &[u8]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for end in 0..text.len() {
            for (w, word) in words.iter().enumerate() {
                if end + 1 >= word.len() && text[end + 1 - word.len()..=end] == word[..] {
                    out.push((end, w));
                }
            }
        }
        out
    }

    #[test]
    fn state_count_of_running_example() {
        let a = triggers(&["AC", "CG"]).compile();
        assert_eq!(a.state_count(), 5);
    }

    #[test]
    fn overlapping_matches() {
        let a = triggers(&["AC"]).compile();
        let ends: Vec<usize> = a.find_matches(b"ACAC").map(|m| m.end).collect();
        assert_eq!(ends, [1, 3]);

        let a = triggers(&["AA"]).compile();
        let ends: Vec<usize> = a.find_matches(b"AAA").map(|m| m.end).collect();
        assert_eq!(ends, [1, 2]);
    }

    #[test]
    fn failure_links() {
        // states: 0 root, 1 A, 2 AC, 3 C, 4 CG
        let a = triggers(&["AC", "CG"]).compile();
        assert_eq!(a.failure(2), 3);
        assert_eq!(a.failure(1), 0);
        assert_eq!(a.failure(4), 0);
    }

    #[test]
    fn trigger_set_errors() {
        assert!(matches!(
            TriggerSet::new(["AC", "CGT"]),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            TriggerSet::new(Vec::<&str>::new()),
            Err(Error::Config(_))
        ));
        assert!(matches!(TriggerSet::new([""]), Err(Error::Config(_))));
        assert!(matches!(TriggerSet::new(["A#"]), Err(Error::Config(_))));
        let t = TriggerSet::new(["ac", "AC", "cg"]).unwrap();
        assert_eq!(t.words(), [b"AC".to_vec(), b"CG".to_vec()]);
        assert_eq!(t.k(), 2);
    }

    #[test]
    fn trigger_file() {
        let t = TriggerSet::parse("# stop codons\nTAA\n\n  TAG\nTGA\n").unwrap();
        assert_eq!(t.words().len(), 3);
        assert_eq!(t.k(), 3);
        assert!(matches!(
            TriggerSet::parse("TAA TAG\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(TriggerSet::parse("# nothing\n").is_err());
    }

    #[test]
    fn partition_running_example() {
        let a = triggers(&["AC", "CG"]).compile();
        let segs = |s: &[u8]| partition_sequence(s, &a);
        assert_eq!(segs(b"CACGTACT"), [&b"CAC"[..], b"ACG", b"CGTAC", b"ACT.."]);
        assert_eq!(segs(b"CACACT"), [&b"CAC"[..], b"ACAC", b"ACT.."]);
        assert_eq!(segs(b"GGGG"), [b"GGGG..".to_vec()]);
    }

    #[test]
    fn partition_trigger_at_start() {
        let a = triggers(&["AC"]).compile();
        assert_eq!(
            partition_sequence(b"ACACT", &a),
            [&b"AC"[..], b"ACAC", b"ACT.."]
        );
    }

    #[test]
    fn build_running_example() {
        let p = Pangenome::from_strs(&["CACGTACT", "CACACT", "CACGACT"]).unwrap();
        let g = build_graph(&p, &triggers(&["AC", "CG"])).unwrap();
        assert_eq!(g.segments().len(), 6);
        let lens: Vec<usize> = g.paths().iter().map(|p| p.steps.len()).collect();
        assert_eq!(lens, [4, 3, 4]);
        assert!(g.validate().issues.is_empty());
    }

    #[test]
    fn build_deduplicates() {
        let p = Pangenome::from_strs(&["CAC", "CAC"]).unwrap();
        let g = build_graph(&p, &triggers(&["G"])).unwrap();
        assert_eq!(g.k(), 1);
        assert_eq!(g.segments(), [b"CAC.".to_vec()]);
        assert_eq!(g.paths()[0].steps, [0]);
        assert_eq!(g.paths()[1].steps, [0]);

        // With AC as trigger, CAC splits into CAC and the padded tail AC..
        let g = build_graph(&p, &triggers(&["AC"])).unwrap();
        assert_eq!(g.segments(), [b"AC..".to_vec(), b"CAC".to_vec()]);
        assert_eq!(g.paths()[0].steps, [1, 0]);
        assert_eq!(g.paths()[0].steps, g.paths()[1].steps);
    }

    #[test]
    fn build_without_matches() {
        let p = Pangenome::from_strs(&["G"]).unwrap();
        let g = build_graph(&p, &triggers(&["AC"])).unwrap();
        assert_eq!(g.segments(), [b"G..".to_vec()]);
        assert_eq!(g.paths()[0].steps, [0]);
    }

    #[test]
    fn two_copies_offsets() {
        let p = Pangenome::from_strs(&["CACGTACT", "CACGTACT"]).unwrap();
        let g = build_graph(&p, &triggers(&["AC", "CG"])).unwrap();
        assert_eq!(g.sequence_offsets(), [0, 8]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dna(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u8>> {
            prop::collection::vec(prop::sample::select(b"ACGT".to_vec()), len)
        }

        fn trigger_words() -> impl Strategy<Value = Vec<Vec<u8>>> {
            (1usize..=3).prop_flat_map(|k| prop::collection::vec(dna(k..k + 1), 1..=4))
        }

        proptest! {
            #[test]
            fn automaton_agrees_with_naive_scan(words in trigger_words(), text in dna(0..300)) {
                let t = TriggerSet::new(&words).unwrap();
                let a = t.compile();
                let found: Vec<(usize, usize)> =
                    a.find_matches(&text).map(|m| (m.end, m.word)).collect();
                prop_assert_eq!(found, naive_matches(t.words(), &text));
                let total: usize = t.words().iter().map(Vec::len).sum();
                prop_assert!(a.state_count() <= 1 + total);
            }

            #[test]
            fn segments_cover_sequence(words in trigger_words(), seq in dna(1..300)) {
                let t = TriggerSet::new(&words).unwrap();
                let a = t.compile();
                let k = t.k();
                let segs = partition_sequence(&seq, &a);
                let covered: usize = segs.iter().map(|s| s.len() - k).sum();
                prop_assert_eq!(covered, seq.len());
                let mut expanded = Vec::new();
                for s in &segs {
                    expanded.extend_from_slice(&s[..s.len() - k]);
                }
                prop_assert_eq!(&expanded, &seq);
                for w in segs.windows(2) {
                    prop_assert_eq!(&w[0][w[0].len() - k..], &w[1][..k]);
                }
            }

            #[test]
            fn shared_substrings_partition_alike(
                words in trigger_words(),
                left_a in dna(0..40),
                left_b in dna(0..40),
                shared in dna(20..120),
                right_a in dna(0..40),
                right_b in dna(0..40),
            ) {
                let t = TriggerSet::new(&words).unwrap();
                let a = t.compile();
                let k = t.k();
                let ends: Vec<usize> = a.find_matches(&shared).map(|m| m.end).collect();
                prop_assume!(ends.len() >= 2);
                // Segments between the first and last trigger inside `shared`.
                let interior: Vec<&[u8]> = ends
                    .windows(2)
                    .map(|w| &shared[w[0] + 1 - k..=w[1]])
                    .collect();
                for (l, r) in [(&left_a, &right_a), (&left_b, &right_b)] {
                    let seq = [l.as_slice(), &shared, r].concat();
                    let segs = partition_sequence(&seq, &a);
                    let found = segs
                        .windows(interior.len())
                        .any(|w| w.iter().zip(&interior).all(|(s, i)| s.as_slice() == *i));
                    prop_assert!(found);
                }
            }
        }
    }
}
