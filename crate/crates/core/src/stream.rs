//! Streaming the pangenome suffix array out of the suffix and segment tables.
//!
//! Rows of the suffix table are visited in order. Rows starting at a
//! separator, at the sentinel, or within the last `k` characters of their
//! segment have no (unique) pangenome counterpart and are skipped. The
//! remaining rows form blocks of identical segment suffixes; every occurrence
//! of every segment in a block is reported, merging the per-segment
//! occurrence lists by right-context rank.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::Range;

use crate::graph::PrefixFreeGraph;
use crate::occurrence::SegmentTable;
use crate::suffix::SuffixTable;

/// One suffix array entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Emission {
    /// Position in the suffix array.
    pub index: usize,
    /// Pangenome offset of the suffix.
    pub sa: usize,
    /// Segment the suffix starts in.
    pub id: usize,
    /// Offset of the suffix within that segment.
    pub pos: usize,
    /// BWT character, if requested: the character before `sa`, or `$` at a
    /// sequence start.
    pub bwt: Option<u8>,
}

/// Length of the segment suffix of `row`, zero for separator and sentinel
/// rows.
fn suffix_len(suffixes: &SuffixTable, segments: &SegmentTable, row: usize) -> usize {
    let id = suffixes.id[row];
    if id >= segments.segment_count() {
        return 0;
    }
    segments.length(id).saturating_sub(suffixes.pos[row])
}

/// True for rows that do not yield suffix array values.
pub fn is_skipped(suffixes: &SuffixTable, segments: &SegmentTable, k: usize, row: usize) -> bool {
    suffix_len(suffixes, segments, row) <= k
}

/// Exclusive end of the block that starts at reported row `start`.
pub fn block_end(suffixes: &SuffixTable, segments: &SegmentTable, k: usize, start: usize) -> usize {
    let mut end = start + 1;
    let mut len = suffix_len(suffixes, segments, start);
    while end < suffixes.len()
        && !is_skipped(suffixes, segments, k, end)
        && suffixes.lcp[end] >= len as i64
    {
        let next = suffix_len(suffixes, segments, end);
        assert_eq!(
            next,
            len,
            "rows {} and {end} share a block but differ in suffix length",
            end - 1
        );
        len = next;
        end += 1;
    }
    end
}

/// Row ranges of all blocks, in table order.
pub fn blocks<'a>(
    suffixes: &'a SuffixTable,
    segments: &'a SegmentTable,
    k: usize,
) -> impl Iterator<Item = Range<usize>> + 'a {
    let mut row = 0;
    std::iter::from_fn(move || {
        while row < suffixes.len() && is_skipped(suffixes, segments, k, row) {
            row += 1;
        }
        if row == suffixes.len() {
            return None;
        }
        let end = block_end(suffixes, segments, k, row);
        let block = row..end;
        row = end;
        Some(block)
    })
}

/// BWT character of an emission drawn from occurrence `prev` of segment `id`.
pub fn derive_bwt(graph: &PrefixFreeGraph, id: usize, pos: usize, prev: u8) -> u8 {
    if pos > 0 {
        graph.segment(id)[pos - 1]
    } else {
        prev
    }
}

/// Merge state for one block: a cursor into each member row's occurrence list.
#[derive(Debug, Default)]
struct BlockMerge {
    // Singleton blocks are walked directly.
    single: Option<(usize, usize)>,
    // (rank, row, occurrence index) for multi-row blocks.
    heap: BinaryHeap<Reverse<(usize, usize, usize)>>,
}

impl BlockMerge {
    fn load(&mut self, suffixes: &SuffixTable, segments: &SegmentTable, rows: Range<usize>) {
        self.heap.clear();
        self.single = None;
        if rows.len() == 1 {
            self.single = Some((rows.start, 0));
            return;
        }
        for row in rows {
            if let Some(first) = segments.occurrences(suffixes.id[row]).first() {
                self.heap.push(Reverse((first.rank, row, 0)));
            }
        }
    }

    /// Next (row, occurrence index) in rank order.
    fn next(&mut self, suffixes: &SuffixTable, segments: &SegmentTable) -> Option<(usize, usize)> {
        if let Some((row, j)) = self.single.as_mut() {
            let out = (*row, *j);
            if out.1 < segments.occurrences(suffixes.id[out.0]).len() {
                *j += 1;
                return Some(out);
            }
            self.single = None;
            return None;
        }
        let Reverse((_, row, j)) = self.heap.pop()?;
        if let Some(next) = segments.occurrences(suffixes.id[row]).get(j + 1) {
            self.heap.push(Reverse((next.rank, row, j + 1)));
        }
        Some((row, j))
    }
}

fn emission(
    graph: &PrefixFreeGraph,
    suffixes: &SuffixTable,
    segments: &SegmentTable,
    row: usize,
    occurrence: usize,
    index: usize,
    with_bwt: bool,
) -> Emission {
    let id = suffixes.id[row];
    let pos = suffixes.pos[row];
    let occ = segments.occurrences(id)[occurrence];
    Emission {
        index,
        sa: occ.start + pos,
        id,
        pos,
        bwt: with_bwt.then(|| derive_bwt(graph, id, pos, occ.prev)),
    }
}

/// All emissions of one block, in rank order. `index` counts from 0.
pub fn emit_block(
    graph: &PrefixFreeGraph,
    suffixes: &SuffixTable,
    segments: &SegmentTable,
    rows: Range<usize>,
) -> Vec<Emission> {
    let mut merge = BlockMerge::default();
    merge.load(suffixes, segments, rows);
    let mut out = Vec::new();
    while let Some((row, j)) = merge.next(suffixes, segments) {
        out.push(emission(graph, suffixes, segments, row, j, out.len(), true));
    }
    out
}

/// Forward iterator over the pangenome suffix array.
#[derive(Debug)]
pub struct SaStream<'a> {
    graph: &'a PrefixFreeGraph,
    suffixes: &'a SuffixTable,
    segments: &'a SegmentTable,
    row: usize,
    index: usize,
    merge: BlockMerge,
    with_bwt: bool,
}

impl<'a> SaStream<'a> {
    /// The tables must have been built from `graph`.
    pub fn new(
        graph: &'a PrefixFreeGraph,
        suffixes: &'a SuffixTable,
        segments: &'a SegmentTable,
    ) -> Self {
        SaStream {
            graph,
            suffixes,
            segments,
            row: 0,
            index: 0,
            merge: BlockMerge::default(),
            with_bwt: false,
        }
    }

    /// Also report the BWT character of every entry.
    pub fn with_bwt(mut self, yes: bool) -> Self {
        self.with_bwt = yes;
        self
    }
}

impl Iterator for SaStream<'_> {
    type Item = Emission;

    fn next(&mut self) -> Option<Emission> {
        let k = self.graph.k();
        loop {
            if let Some((row, j)) = self.merge.next(self.suffixes, self.segments) {
                let e = emission(
                    self.graph,
                    self.suffixes,
                    self.segments,
                    row,
                    j,
                    self.index,
                    self.with_bwt,
                );
                self.index += 1;
                return Some(e);
            }
            while self.row < self.suffixes.len()
                && is_skipped(self.suffixes, self.segments, k, self.row)
            {
                self.row += 1;
            }
            if self.row == self.suffixes.len() {
                return None;
            }
            let end = block_end(self.suffixes, self.segments, k, self.row);
            self.merge.load(self.suffixes, self.segments, self.row..end);
            self.row = end;
        }
    }
}
