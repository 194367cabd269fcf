//! FASTA input and GFA input/output.

pub mod fasta;
pub mod gfa;

pub use fasta::read_fasta;
pub use gfa::{expand_gfa_paths, graph_from_gfa, read_gfa, write_gfa, GfaDocument};
