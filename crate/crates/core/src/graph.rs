//! The prefix-free graph data model.

use std::cmp::Ordering;
use std::fmt;

use crate::alphabet::{self, PAD};
use crate::error::{Error, Result};

/// A named input sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub name: String,
    pub data: Vec<u8>,
}

/// An ordered collection of sequences analyzed jointly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pangenome {
    sequences: Vec<Sequence>,
}

impl Pangenome {
    /// Uppercases and validates the sequences. Fails on an empty collection,
    /// an empty sequence, or a sequence containing a reserved character.
    pub fn new(sequences: Vec<Sequence>) -> Result<Self> {
        if sequences.is_empty() {
            return Err(Error::Input("pangenome has no sequences".into()));
        }
        let mut sequences = sequences;
        for seq in &mut sequences {
            if seq.data.is_empty() {
                return Err(Error::Input(format!("sequence '{}' is empty", seq.name)));
            }
            if let Some(b) = seq.data.iter().find(|&&b| alphabet::is_reserved(b)) {
                return Err(Error::Input(format!(
                    "sequence '{}' contains reserved character '{}'",
                    seq.name, *b as char
                )));
            }
            seq.data.make_ascii_uppercase();
        }
        Ok(Pangenome { sequences })
    }

    pub fn from_strs<S: AsRef<[u8]>>(seqs: &[S]) -> Result<Self> {
        Self::new(
            seqs.iter()
                .enumerate()
                .map(|(i, s)| Sequence {
                    name: format!("seq{i}"),
                    data: s.as_ref().to_vec(),
                })
                .collect(),
        )
    }

    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Sum of the sequence lengths.
    pub fn total_length(&self) -> usize {
        self.sequences.iter().map(|s| s.data.len()).sum()
    }
}

/// A sequence spelled as segment ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub name: String,
    pub steps: Vec<usize>,
}

/// Segments in lexicographic order plus one id-path per input sequence.
///
/// Adjacent segments of a path overlap by exactly `k` characters, and the last
/// segment of every path carries `k` trailing pad characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixFreeGraph {
    k: usize,
    segments: Vec<Vec<u8>>,
    paths: Vec<Path>,
}

impl PrefixFreeGraph {
    /// Sorts segments lexicographically, renumbers them by rank and rewrites
    /// the paths through the same permutation.
    ///
    /// `segments[i]` is the content of discovery id `i`.
    pub fn normalize(k: usize, segments: Vec<Vec<u8>>, paths: Vec<Path>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Structure("graph has no segments".into()));
        }
        for (p, path) in paths.iter().enumerate() {
            if let Some(&id) = path.steps.iter().find(|&&id| id >= segments.len()) {
                return Err(Error::Structure(format!(
                    "path {p} references unknown segment {id}"
                )));
            }
        }

        let mut order: Vec<usize> = (0..segments.len()).collect();
        order.sort_by(|&a, &b| alphabet::compare(&segments[a], &segments[b]));
        for w in order.windows(2) {
            if segments[w[0]] == segments[w[1]] {
                return Err(Error::Structure(format!(
                    "segments {} and {} have identical content",
                    w[0].min(w[1]),
                    w[0].max(w[1])
                )));
            }
        }

        let mut new_id = vec![0; segments.len()];
        for (rank, &old) in order.iter().enumerate() {
            new_id[old] = rank;
        }
        let mut slots: Vec<Option<Vec<u8>>> = segments.into_iter().map(Some).collect();
        let segments = order
            .iter()
            .map(|&old| slots[old].take().expect("permutation visits each id once"))
            .collect();
        let paths = paths
            .into_iter()
            .map(|p| Path {
                name: p.name,
                steps: p.steps.into_iter().map(|id| new_id[id]).collect(),
            })
            .collect();

        Ok(PrefixFreeGraph { k, segments, paths })
    }

    /// Assembles a graph from parts that are already in normalized form,
    /// rejecting anything [`validate`](Self::validate) reports as an error.
    pub fn from_normalized(k: usize, segments: Vec<Vec<u8>>, paths: Vec<Path>) -> Result<Self> {
        let graph = PrefixFreeGraph { k, segments, paths };
        let report = graph.validate();
        if let Some(issue) = report.errors().next() {
            return Err(Error::Structure(issue.to_string()));
        }
        Ok(graph)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn segments(&self) -> &[Vec<u8>] {
        &self.segments
    }

    pub fn segment(&self, id: usize) -> &[u8] {
        &self.segments[id]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Total number of characters stored in the segment dictionary.
    pub fn dictionary_size(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    /// Expands path `index` back into its sequence.
    pub fn reconstruct(&self, index: usize) -> Vec<u8> {
        let path = &self.paths[index];
        let mut out = Vec::with_capacity(self.path_length(index));
        for &id in &path.steps {
            let seg = &self.segments[id];
            out.extend_from_slice(&seg[..seg.len() - self.k]);
        }
        out
    }

    /// Number of pangenome characters spelled by path `index`.
    pub fn path_length(&self, index: usize) -> usize {
        self.paths[index]
            .steps
            .iter()
            .map(|&id| self.segments[id].len() - self.k)
            .sum()
    }

    /// Start offset of every sequence in the concatenated pangenome.
    pub fn sequence_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.paths.len());
        let mut acc = 0;
        for i in 0..self.paths.len() {
            offsets.push(acc);
            acc += self.path_length(i);
        }
        offsets
    }

    /// Pangenome length `N`.
    pub fn total_length(&self) -> usize {
        (0..self.paths.len()).map(|i| self.path_length(i)).sum()
    }

    /// Checks every structural invariant and returns all violations found.
    pub fn validate(&self) -> Report {
        let mut issues = Vec::new();
        let k = self.k;

        if self.segments.is_empty() {
            issues.push(Issue::Empty);
        }
        for (i, w) in self.segments.windows(2).enumerate() {
            if alphabet::compare(&w[0], &w[1]) != Ordering::Less {
                issues.push(Issue::Unsorted { segment: i + 1 });
            }
        }

        for (id, seg) in self.segments.iter().enumerate() {
            match seg.len().cmp(&k) {
                Ordering::Less => issues.push(Issue::ShortSegment { segment: id }),
                Ordering::Equal => issues.push(Issue::DegenerateSegment { segment: id }),
                Ordering::Greater => {}
            }
            let body_end = if ends_with_pads(seg, k) {
                seg.len() - k
            } else {
                seg.len()
            };
            if seg[..body_end].contains(&PAD) {
                issues.push(Issue::MisplacedPad { segment: id });
            }
        }

        for (p, path) in self.paths.iter().enumerate() {
            if path.steps.is_empty() {
                issues.push(Issue::EmptyPath { path: p });
                continue;
            }
            let mut dangling = false;
            for (step, &id) in path.steps.iter().enumerate() {
                if id >= self.segments.len() {
                    issues.push(Issue::DanglingId { path: p, step, id });
                    dangling = true;
                }
            }
            if dangling {
                continue;
            }
            let last = path.steps.len() - 1;
            for (step, &id) in path.steps.iter().enumerate() {
                let padded = ends_with_pads(&self.segments[id], k);
                if step == last && !padded {
                    issues.push(Issue::MissingPad { path: p });
                } else if step != last && padded {
                    issues.push(Issue::InteriorPad { path: p, step });
                }
            }
            for (step, pair) in path.steps.windows(2).enumerate() {
                let (a, b) = (&self.segments[pair[0]], &self.segments[pair[1]]);
                if a.len() < k || b.len() < k || a[a.len() - k..] != b[..k] {
                    issues.push(Issue::OverlapMismatch {
                        path: p,
                        step: step + 1,
                    });
                }
            }
        }

        if let Some((a, b)) = self.find_prefix_violation() {
            issues.push(Issue::NotPrefixFree {
                shorter: a,
                longer: b,
            });
        }

        Report { issues }
    }

    /// Looks for a segment suffix longer than `k` that is a proper prefix of
    /// another such suffix.
    fn find_prefix_violation(&self) -> Option<((usize, usize), (usize, usize))> {
        let k = self.k;
        let mut suffixes: Vec<(usize, usize)> = self
            .segments
            .iter()
            .enumerate()
            .flat_map(|(id, s)| (0..s.len().saturating_sub(k)).map(move |pos| (id, pos)))
            .collect();
        let text = |&(id, pos): &(usize, usize)| &self.segments[id][pos..];
        suffixes.sort_by(|a, b| alphabet::compare(text(a), text(b)));
        suffixes.windows(2).find_map(|w| {
            let (a, b) = (text(&w[0]), text(&w[1]));
            (a.len() < b.len() && b.starts_with(a)).then_some((w[0], w[1]))
        })
    }
}

fn ends_with_pads(seg: &[u8], k: usize) -> bool {
    seg.len() >= k && seg[seg.len() - k..].iter().all(|&b| b == PAD)
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    Empty,
    Unsorted {
        segment: usize,
    },
    ShortSegment {
        segment: usize,
    },
    /// A segment of exactly `k` characters; allowed, reported as a warning.
    DegenerateSegment {
        segment: usize,
    },
    MisplacedPad {
        segment: usize,
    },
    EmptyPath {
        path: usize,
    },
    DanglingId {
        path: usize,
        step: usize,
        id: usize,
    },
    MissingPad {
        path: usize,
    },
    InteriorPad {
        path: usize,
        step: usize,
    },
    OverlapMismatch {
        path: usize,
        step: usize,
    },
    NotPrefixFree {
        shorter: (usize, usize),
        longer: (usize, usize),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

impl Issue {
    pub fn severity(&self) -> Severity {
        match self {
            Issue::DegenerateSegment { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Empty => write!(f, "graph has no segments"),
            Issue::Unsorted { segment } => {
                write!(f, "segment {segment} is not greater than its predecessor")
            }
            Issue::ShortSegment { segment } => {
                write!(f, "segment {segment} is shorter than the trigger length")
            }
            Issue::DegenerateSegment { segment } => {
                write!(f, "segment {segment} is exactly one trigger word long")
            }
            Issue::MisplacedPad { segment } => {
                write!(f, "segment {segment} contains padding outside its tail")
            }
            Issue::EmptyPath { path } => write!(f, "path {path} is empty"),
            Issue::DanglingId { path, step, id } => {
                write!(f, "path {path} step {step} references unknown segment {id}")
            }
            Issue::MissingPad { path } => write!(f, "path {path} does not end in padding"),
            Issue::InteriorPad { path, step } => {
                write!(f, "path {path} step {step} is padded but not last")
            }
            Issue::OverlapMismatch { path, step } => {
                write!(
                    f,
                    "path {path} step {step} does not overlap its predecessor"
                )
            }
            Issue::NotPrefixFree { shorter, longer } => write!(
                f,
                "suffix {}@{} is a proper prefix of suffix {}@{}",
                shorter.0, shorter.1, longer.0, longer.1
            ),
        }
    }
}

/// Result of [`PrefixFreeGraph::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub issues: Vec<Issue>,
}

impl Report {
    /// True when no issue of error severity was found.
    pub fn passed(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues
            .iter()
            .filter(|i| i.severity() == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues
            .iter()
            .filter(|i| i.severity() == Severity::Warning)
    }
}
