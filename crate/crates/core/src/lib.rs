//! Prefix-free graphs for pangenomes.
//!
//! Every input sequence is cut into segments at occurrences of a set of
//! equal-length trigger words. Segments start and end with trigger words (or
//! the sequence start and `k` trailing pads), so consecutive segments overlap
//! by exactly `k` characters and long shared substrings are cut identically.
//! The distinct segments form the nodes of the graph, each sequence is a path.
//!
//! From the graph the suffix array of the whole pangenome can be streamed
//! without ever spelling out the pangenome:
//!
//! ```
//! use pfg::{build_graph, Pangenome, Pfg, TriggerSet};
//!
//! let pangenome = Pangenome::from_strs(&["CACGTACT", "CACACT", "CACGACT"])?;
//! let triggers = TriggerSet::new(["AC", "CG"])?;
//! let pfg = Pfg::new(build_graph(&pangenome, &triggers)?);
//!
//! let sa: Vec<usize> = pfg.iter().map(|e| e.sa).collect();
//! assert_eq!(&sa[..4], &[9, 15, 1, 18]);
//! # Ok::<(), pfg::Error>(())
//! ```

pub mod alphabet;
pub mod error;
pub mod graph;
pub mod io;
pub mod occurrence;
pub mod oracle;
pub mod partition;
pub mod stream;
pub mod suffix;

use std::fs::File;
use std::io::BufReader;
use std::path::Path as FsPath;

pub use error::{Error, Result};
pub use graph::{Issue, Pangenome, Path, PrefixFreeGraph, Report, Sequence, Severity};
pub use occurrence::{Occurrence, PathJoin, SegmentTable};
pub use partition::{build_graph, partition_sequence, MatchAutomaton, TriggerSet};
pub use stream::{Emission, SaStream};
pub use suffix::{SegmentJoin, SuffixTable};

/// A prefix-free graph together with the tables needed to iterate its
/// suffix array.
#[derive(Debug, Clone)]
pub struct Pfg {
    graph: PrefixFreeGraph,
    suffixes: SuffixTable,
    segments: SegmentTable,
}

impl Pfg {
    pub fn new(graph: PrefixFreeGraph) -> Self {
        let suffixes = SuffixTable::new(&graph);
        let segments = SegmentTable::new(&graph);
        Pfg {
            graph,
            suffixes,
            segments,
        }
    }

    /// Loads a graph from a GFA file written by [`io::write_gfa`].
    pub fn load(path: impl AsRef<FsPath>) -> Result<Self> {
        let doc = io::read_gfa(BufReader::new(File::open(path)?))?;
        Ok(Self::new(io::graph_from_gfa(&doc)?))
    }

    pub fn graph(&self) -> &PrefixFreeGraph {
        &self.graph
    }

    pub fn suffix_table(&self) -> &SuffixTable {
        &self.suffixes
    }

    pub fn segment_table(&self) -> &SegmentTable {
        &self.segments
    }

    /// Suffix array entries in order, without BWT characters.
    pub fn iter(&self) -> SaStream<'_> {
        SaStream::new(&self.graph, &self.suffixes, &self.segments)
    }
}
