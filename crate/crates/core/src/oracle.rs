//! Brute-force suffix array and BWT of a pangenome, for verification.
//!
//! The sequences are concatenated with `k` pad characters after each one and
//! every suffix starting outside a pad block is sorted by direct comparison.
//! Quadratic in the worst case; meant for inputs of at most a few tens of
//! kilobytes.

use crate::alphabet::{self, PAD, SENTINEL};
use crate::graph::Pangenome;

/// The padded concatenation `seq_0 pad^k seq_1 pad^k ... seq_m-1 pad^k`.
#[derive(Debug, Clone)]
pub struct OracleText {
    pub text: Vec<u8>,
    /// `text` mapped through [`alphabet::rank`], for fast comparisons.
    pub ranked: Vec<u16>,
    k: usize,
    // pangenome offset of each sequence start, plus N at the end
    offsets: Vec<usize>,
}

impl OracleText {
    pub fn new(pangenome: &Pangenome, k: usize) -> Self {
        let mut text = Vec::with_capacity(pangenome.total_length() + pangenome.len() * k);
        let mut offsets = vec![0];
        for seq in pangenome.sequences() {
            text.extend_from_slice(&seq.data);
            text.resize(text.len() + k, PAD);
            offsets.push(offsets.last().unwrap() + seq.data.len());
        }
        let ranked = text.iter().map(|&b| alphabet::rank(b) as u16).collect();
        OracleText {
            text,
            ranked,
            k,
            offsets,
        }
    }

    /// Pangenome length `N`.
    pub fn total_length(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Sequence containing pangenome offset `sa`.
    pub fn sequence_of(&self, sa: usize) -> usize {
        self.offsets.partition_point(|&o| o <= sa) - 1
    }

    /// Text position of pangenome offset `sa`.
    pub fn text_position(&self, sa: usize) -> usize {
        sa + self.k * self.sequence_of(sa)
    }

    /// The padded suffix at pangenome offset `sa`, running to the end of the
    /// whole text.
    pub fn suffix(&self, sa: usize) -> &[u8] {
        &self.text[self.text_position(sa)..]
    }

    /// [`suffix`](Self::suffix) as ranks; compares like the suffix itself.
    pub fn ranked_suffix(&self, sa: usize) -> &[u16] {
        &self.ranked[self.text_position(sa)..]
    }

    /// The suffix at `sa` cut after its sequence's pads.
    pub fn local_suffix(&self, sa: usize) -> &[u8] {
        let seq = self.sequence_of(sa);
        let end = self.offsets[seq + 1] + self.k * (seq + 1);
        &self.text[self.text_position(sa)..end]
    }

    /// Character before pangenome offset `sa`, `$` at a sequence start.
    pub fn preceding(&self, sa: usize) -> u8 {
        let seq = self.sequence_of(sa);
        if sa == self.offsets[seq] {
            SENTINEL
        } else {
            self.text[self.text_position(sa) - 1]
        }
    }
}

/// Suffix array of the pangenome in pangenome coordinates.
pub fn oracle_sa(pangenome: &Pangenome, k: usize) -> Vec<usize> {
    let text = OracleText::new(pangenome, k);
    let mut order: Vec<usize> = (0..text.total_length()).collect();
    let positions: Vec<usize> = order.iter().map(|&sa| text.text_position(sa)).collect();
    order.sort_by(|&a, &b| text.ranked[positions[a]..].cmp(&text.ranked[positions[b]..]));
    order
}

/// BWT characters for the entries of `sa`.
pub fn oracle_bwt(pangenome: &Pangenome, k: usize, sa: &[usize]) -> Vec<u8> {
    let text = OracleText::new(pangenome, k);
    sa.iter().map(|&s| text.preceding(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_example() -> Pangenome {
        Pangenome::from_strs(&["CACGTACT", "CACACT", "CACGACT"]).unwrap()
    }

    #[test]
    fn running_example_sa() {
        let sa = oracle_sa(&running_example(), 2);
        assert_eq!(
            sa,
            [9, 15, 1, 18, 5, 11, 8, 14, 0, 10, 16, 2, 19, 6, 12, 17, 3, 20, 7, 13, 4]
        );
        let bwt = oracle_bwt(&running_example(), 2, &sa);
        assert_eq!(bwt.len(), 21);
        assert_eq!(bwt[0], b'C');
        assert_eq!(bwt[sa.iter().position(|&s| s == 0).unwrap()], SENTINEL);
    }

    #[test]
    fn single_sequence() {
        let p = Pangenome::from_strs(&["AB"]).unwrap();
        assert_eq!(oracle_sa(&p, 2), [0, 1]);
    }

    #[test]
    fn identical_sequences() {
        let p = Pangenome::from_strs(&["ACA", "ACA"]).unwrap();
        let sa = oracle_sa(&p, 1);
        let mut sorted = sa.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..6).collect::<Vec<_>>());
        // A. of the last copy ends the text and sorts first.
        assert_eq!(sa[0], 5);
    }

    #[test]
    fn coordinates() {
        let t = OracleText::new(&running_example(), 2);
        assert_eq!(t.text, b"CACGTACT..CACACT..CACGACT..");
        assert_eq!(t.text_position(8), 10);
        assert_eq!(t.ranked.len(), t.text.len());
        assert!(t.ranked_suffix(9) < t.ranked_suffix(8));
        assert_eq!(t.local_suffix(12), b"CT..");
        assert_eq!(t.preceding(9), b'C');
        assert_eq!(t.preceding(14), SENTINEL);
    }
}
