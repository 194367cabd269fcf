//! Suffix array, LCP array and inverse permutation, and the suffix table of
//! the segment join.

use crate::alphabet::{self, SENTINEL, SEPARATOR};
use crate::graph::PrefixFreeGraph;

/// Suffix array of `text` by induced sorting. Symbols must be smaller than
/// `alphabet_size`.
pub fn suffix_array(text: &[u32], alphabet_size: usize) -> Vec<usize> {
    let s: Vec<usize> = text.iter().map(|&c| c as usize).collect();
    debug_assert!(s.iter().all(|&c| c < alphabet_size.max(1)));
    sa_is(&s, alphabet_size.saturating_sub(1))
}

/// Suffix array of a byte string under the reserved-character order.
pub fn suffix_array_bytes(text: &[u8]) -> Vec<usize> {
    let ranked: Vec<u32> = text.iter().map(|&b| alphabet::rank(b)).collect();
    suffix_array(&ranked, alphabet::RANK_COUNT)
}

const EMPTY: usize = usize::MAX;

fn sa_is(s: &[usize], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return vec![],
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }
    if n < 16 {
        let mut sa: Vec<usize> = (0..n).collect();
        sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
        return sa;
    }

    // ls[i]: suffix i is S-type. The last suffix is L-type by convention.
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] {
            ls[i + 1]
        } else {
            s[i] < s[i + 1]
        };
    }

    // Bucket heads for S- and L-type suffixes of every symbol.
    let mut sum_l = vec![0usize; upper + 2];
    let mut sum_s = vec![0usize; upper + 2];
    for i in 0..n {
        if ls[i] {
            sum_l[s[i] + 1] += 1;
        } else {
            sum_s[s[i]] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        sum_l[c + 1] += sum_s[c];
    }

    let is_lms = |i: usize| i > 0 && !ls[i - 1] && ls[i];
    let induce = |lms: &[usize], sa: &mut [usize]| {
        sa.fill(EMPTY);
        let mut buf = sum_s.clone();
        for &d in lms {
            sa[buf[s[d]]] = d;
            buf[s[d]] += 1;
        }
        buf.copy_from_slice(&sum_l);
        sa[buf[s[n - 1]]] = n - 1;
        buf[s[n - 1]] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != EMPTY && v >= 1 && !ls[v - 1] {
                sa[buf[s[v - 1]]] = v - 1;
                buf[s[v - 1]] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != EMPTY && v >= 1 && ls[v - 1] {
                buf[s[v - 1] + 1] -= 1;
                sa[buf[s[v - 1] + 1]] = v - 1;
            }
        }
    };

    let mut lms_index = vec![EMPTY; n];
    let lms: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    for (j, &i) in lms.iter().enumerate() {
        lms_index[i] = j;
    }
    let m = lms.len();

    let mut sa = vec![EMPTY; n];
    induce(&lms, &mut sa);

    if m > 0 {
        let mut sorted_lms: Vec<usize> = sa
            .iter()
            .copied()
            .filter(|&v| v != EMPTY && lms_index[v] != EMPTY)
            .collect();

        // Name the LMS substrings and sort them recursively.
        let mut reduced = vec![0usize; m];
        let mut name = 0;
        reduced[lms_index[sorted_lms[0]]] = 0;
        for w in 1..m {
            let (mut l, mut r) = (sorted_lms[w - 1], sorted_lms[w]);
            let end_l = lms.get(lms_index[l] + 1).copied().unwrap_or(n);
            let end_r = lms.get(lms_index[r] + 1).copied().unwrap_or(n);
            let same = if end_l - l != end_r - r {
                false
            } else {
                while l < end_l && s[l] == s[r] {
                    l += 1;
                    r += 1;
                }
                l < n && r < n && l == end_l && s[l] == s[r]
            };
            if !same {
                name += 1;
            }
            reduced[lms_index[sorted_lms[w]]] = name;
        }

        let reduced_sa = sa_is(&reduced, name);
        for (slot, &r) in sorted_lms.iter_mut().zip(&reduced_sa) {
            *slot = lms[r];
        }
        induce(&sorted_lms, &mut sa);
    }
    sa
}

/// Inverse permutation: `isa[sa[i]] == i`.
pub fn inverse(sa: &[usize]) -> Vec<usize> {
    let mut isa = vec![0; sa.len()];
    for (i, &p) in sa.iter().enumerate() {
        isa[p] = i;
    }
    isa
}

/// LCP array by Kasai's algorithm. `lcp[0]` is -1; `lcp[i]` is the common
/// prefix length of suffixes `sa[i - 1]` and `sa[i]`.
pub fn lcp_array<T: Eq>(text: &[T], sa: &[usize], isa: &[usize]) -> Vec<i64> {
    let n = text.len();
    let mut lcp = vec![0i64; n];
    if n == 0 {
        return lcp;
    }
    lcp[0] = -1;
    let mut h = 0usize;
    for p in 0..n {
        let r = isa[p];
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1];
        while p + h < n && q + h < n && text[p + h] == text[q + h] {
            h += 1;
        }
        lcp[r] = h as i64;
        h = h.saturating_sub(1);
    }
    lcp
}

/// All segments concatenated in id order, each followed by `#`, then `$`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentJoin {
    pub text: Vec<u8>,
    /// Offset of every segment in `text`.
    pub starts: Vec<usize>,
}

impl SegmentJoin {
    pub fn new(graph: &PrefixFreeGraph) -> Self {
        let segments = graph.segments();
        let len = graph.dictionary_size() + segments.len() + 1;
        let mut text = Vec::with_capacity(len);
        let mut starts = Vec::with_capacity(segments.len());
        for seg in segments {
            starts.push(text.len());
            text.extend_from_slice(seg);
            text.push(SEPARATOR);
        }
        text.push(SENTINEL);
        SegmentJoin { text, starts }
    }

    /// Segment id and in-segment offset of every join position, in text
    /// order. A separator belongs to the preceding segment at offset equal to
    /// that segment's length; the sentinel gets id = segment count, offset 0.
    pub fn positions(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.text.len();
        let mut ids = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        let (mut id, mut off) = (0, 0);
        for &b in &self.text {
            ids.push(id);
            offsets.push(off);
            if b == SEPARATOR {
                id += 1;
                off = 0;
            } else {
                off += 1;
            }
        }
        (ids, offsets)
    }
}

/// Sorted suffixes of the segment join with their LCP, segment id and
/// in-segment position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixTable {
    pub sa: Vec<usize>,
    pub lcp: Vec<i64>,
    pub id: Vec<usize>,
    pub pos: Vec<usize>,
}

/// One row of a [`SuffixTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Row {
    pub sa: usize,
    pub lcp: i64,
    pub id: usize,
    pub pos: usize,
}

impl SuffixTable {
    pub fn new(graph: &PrefixFreeGraph) -> Self {
        Self::from_join(&SegmentJoin::new(graph))
    }

    pub fn from_join(join: &SegmentJoin) -> Self {
        let sa = suffix_array_bytes(&join.text);
        let isa = inverse(&sa);
        let lcp = lcp_array(&join.text, &sa, &isa);
        let (ids, offsets) = join.positions();
        let (id, pos) = annotate(&ids, &offsets, &isa);
        SuffixTable { sa, lcp, id, pos }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn row(&self, i: usize) -> Row {
        Row {
            sa: self.sa[i],
            lcp: self.lcp[i],
            id: self.id[i],
            pos: self.pos[i],
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = Row> + '_ {
        (0..self.len()).map(|i| self.row(i))
    }
}

/// Moves text-order annotations into suffix-array order through `isa`.
fn annotate(ids: &[usize], offsets: &[usize], isa: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut id = vec![0; isa.len()];
    let mut pos = vec![0; isa.len()];
    for (p, &r) in isa.iter().enumerate() {
        id[r] = ids[p];
        pos[r] = offsets[p];
    }
    (id, pos)
}
