//! Segment occurrences in pangenome coordinates, ordered by right context.

use crate::alphabet::SENTINEL;
use crate::graph::PrefixFreeGraph;
use crate::suffix::{inverse, suffix_array};

/// Path-join symbol terminating the join.
pub const END: u32 = 0;
/// Path-join symbol separating two paths.
pub const SEP: u32 = 1;

/// All paths concatenated over the integer alphabet `END < SEP < id + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathJoin {
    pub symbols: Vec<u32>,
    /// Join position of the first step of each path.
    pub path_starts: Vec<usize>,
    alphabet_size: usize,
}

impl PathJoin {
    pub fn new(graph: &PrefixFreeGraph) -> Self {
        let steps: usize = graph.paths().iter().map(|p| p.steps.len()).sum();
        let mut symbols = Vec::with_capacity(steps + graph.paths().len() + 1);
        let mut path_starts = Vec::with_capacity(graph.paths().len());
        for path in graph.paths() {
            path_starts.push(symbols.len());
            symbols.extend(path.steps.iter().map(|&id| id as u32 + 2));
            symbols.push(SEP);
        }
        symbols.push(END);
        PathJoin {
            symbols,
            path_starts,
            alphabet_size: graph.segments().len() + 2,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The (path, step) a join position came from, or `None` for `SEP`/`END`.
    pub fn origin(&self, position: usize) -> Option<(usize, usize)> {
        if self.symbols.get(position).is_none_or(|&s| s < 2) {
            return None;
        }
        let path = self.path_starts.partition_point(|&s| s <= position) - 1;
        Some((path, position - self.path_starts[path]))
    }

    /// Rank of the join suffix following each step, in join order (steps of
    /// path 0 first, separators skipped).
    pub fn right_context_ranks(&self) -> Vec<usize> {
        let sa = suffix_array(&self.symbols, self.alphabet_size);
        let isa = inverse(&sa);
        self.symbols
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s >= 2)
            .map(|(i, _)| isa[i + 1])
            .collect()
    }
}

/// Pangenome start of every step, flattened in path order.
pub fn occurrence_starts(graph: &PrefixFreeGraph) -> Vec<usize> {
    let k = graph.k();
    let mut starts = Vec::new();
    let mut offset = 0;
    for path in graph.paths() {
        for &id in &path.steps {
            starts.push(offset);
            offset += graph.segment(id).len() - k;
        }
    }
    starts
}

/// The pangenome character preceding every step, `$` at sequence starts.
/// Flattened in path order, like [`occurrence_starts`].
pub fn preceding_chars(graph: &PrefixFreeGraph) -> Vec<u8> {
    let k = graph.k();
    let mut out = Vec::new();
    for path in graph.paths() {
        let mut local = 0;
        let mut prev: Option<&[u8]> = None;
        for &id in &path.steps {
            out.push(match prev {
                Some(p) if local > 0 => p[p.len() - k - 1],
                _ => SENTINEL,
            });
            let seg = graph.segment(id);
            local += seg.len() - k;
            prev = Some(seg);
        }
    }
    out
}

/// A segment occurrence in the pangenome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub start: usize,
    /// Rank of the path-join suffix right after this occurrence.
    pub rank: usize,
    /// Character before `start`, or `$` at a sequence start.
    pub prev: u8,
}

/// Per-segment length and occurrences sorted by right-context rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentTable {
    lengths: Vec<usize>,
    // occurrences of segment i live in occurrences[bounds[i]..bounds[i + 1]]
    bounds: Vec<usize>,
    occurrences: Vec<Occurrence>,
}

impl SegmentTable {
    pub fn new(graph: &PrefixFreeGraph) -> Self {
        let join = PathJoin::new(graph);
        let ranks = join.right_context_ranks();
        let starts = occurrence_starts(graph);
        let prevs = preceding_chars(graph);
        drop(join);

        let lengths: Vec<usize> = graph.segments().iter().map(Vec::len).collect();
        let mut bounds = vec![0usize; lengths.len() + 1];
        for path in graph.paths() {
            for &id in &path.steps {
                bounds[id + 1] += 1;
            }
        }
        for i in 0..lengths.len() {
            bounds[i + 1] += bounds[i];
        }

        let placeholder = Occurrence {
            start: 0,
            rank: 0,
            prev: 0,
        };
        let mut occurrences = vec![placeholder; starts.len()];
        let mut fill = bounds.clone();
        let ids = graph.paths().iter().flat_map(|p| p.steps.iter().copied());
        for (j, id) in ids.enumerate() {
            occurrences[fill[id]] = Occurrence {
                start: starts[j],
                rank: ranks[j],
                prev: prevs[j],
            };
            fill[id] += 1;
        }
        for id in 0..lengths.len() {
            occurrences[bounds[id]..bounds[id + 1]].sort_unstable_by_key(|o| o.rank);
        }

        SegmentTable {
            lengths,
            bounds,
            occurrences,
        }
    }

    pub fn segment_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn length(&self, id: usize) -> usize {
        self.lengths[id]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn occurrences(&self, id: usize) -> &[Occurrence] {
        &self.occurrences[self.bounds[id]..self.bounds[id + 1]]
    }

    pub fn occurrence_count(&self) -> usize {
        self.occurrences.len()
    }
}
