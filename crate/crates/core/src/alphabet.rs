//! Reserved characters and the total order used by every sort in the crate.
//!
//! The order is `$` < `#` < `.` < every other byte, the other bytes keeping
//! their natural order among themselves.

use std::cmp::Ordering;

/// Final sentinel of a join; also the BWT character at sequence starts.
pub const SENTINEL: u8 = b'$';
/// Separator between joined segments.
pub const SEPARATOR: u8 = b'#';
/// Padding appended `k` times to every sequence before partitioning.
pub const PAD: u8 = b'.';

/// Number of distinct ranks: three reserved characters plus all 256 bytes.
pub const RANK_COUNT: usize = 259;

#[inline]
pub fn is_reserved(b: u8) -> bool {
    matches!(b, SENTINEL | SEPARATOR | PAD)
}

#[inline]
pub fn rank(b: u8) -> u32 {
    match b {
        SENTINEL => 0,
        SEPARATOR => 1,
        PAD => 2,
        other => other as u32 + 3,
    }
}

/// Lexicographic comparison of two byte strings under [`rank`].
pub fn compare(a: &[u8], b: &[u8]) -> Ordering {
    for (&x, &y) in a.iter().zip(b) {
        match rank(x).cmp(&rank(y)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}
