//! GFA 1.0 reading and writing.
//!
//! A prefix-free graph is written as (fields separated by tabs)
//!
//! ```text
//! H  VN:Z:1.0  tk:i:<k>
//! S  <id>  <content, pads included>
//! L  <from>  +  <to>  +  <k>M
//! P  <name>  <id>+,<id>+,...  <k>M,<k>M,...
//! ```
//!
//! with segments ordered by id, links by (from, to) and paths in input order.
//! The `tk` tag carries the trigger length, so the file alone determines the
//! graph. Prefix-free graphs never omit a sequence, so in a document with
//! `tk` an S-line sequence of `*` is the literal one-character content (a
//! degenerate segment when the trigger word is `*`), not a missing sequence.

use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, Write};

use crate::alphabet::PAD;
use crate::error::{Error, Result};
use crate::graph::{Pangenome, Path, PrefixFreeGraph, Sequence};

const TRIGGER_LENGTH_TAG: &str = "tk";
const TRIGGER_WORDS_TAG: &str = "tw";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GfaHeader {
    pub version: Option<String>,
    /// Trigger length; present in prefix-free graph files.
    pub k: Option<usize>,
    pub triggers: Option<Vec<Vec<u8>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfaSegment {
    pub name: String,
    /// `None` for a `*` sequence.
    pub sequence: Option<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfaLink {
    pub from: usize,
    pub to: usize,
    pub overlap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfaPath {
    pub name: String,
    /// Indices into [`GfaDocument::segments`].
    pub steps: Vec<usize>,
    /// Overlap between consecutive steps; `None` for `*`.
    pub overlaps: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GfaDocument {
    pub header: GfaHeader,
    pub segments: Vec<GfaSegment>,
    pub links: Vec<GfaLink>,
    pub paths: Vec<GfaPath>,
}

/// Writes `graph` as GFA.
pub fn write_gfa<W: Write>(graph: &PrefixFreeGraph, mut out: W) -> std::io::Result<()> {
    let k = graph.k();
    writeln!(out, "H\tVN:Z:1.0\t{TRIGGER_LENGTH_TAG}:i:{k}")?;
    for (id, seg) in graph.segments().iter().enumerate() {
        write!(out, "S\t{id}\t")?;
        out.write_all(seg)?;
        out.write_all(b"\n")?;
    }
    let links: BTreeSet<(usize, usize)> = graph
        .paths()
        .iter()
        .flat_map(|p| p.steps.windows(2).map(|w| (w[0], w[1])))
        .collect();
    for (from, to) in links {
        writeln!(out, "L\t{from}\t+\t{to}\t+\t{k}M")?;
    }
    for path in graph.paths() {
        write!(out, "P\t{}\t", path.name)?;
        for (i, id) in path.steps.iter().enumerate() {
            if i > 0 {
                out.write_all(b",")?;
            }
            write!(out, "{id}+")?;
        }
        out.write_all(b"\t")?;
        if path.steps.len() < 2 {
            out.write_all(b"*")?;
        } else {
            for i in 0..path.steps.len() - 1 {
                if i > 0 {
                    out.write_all(b",")?;
                }
                write!(out, "{k}M")?;
            }
        }
        out.write_all(b"\n")?;
    }
    out.flush()
}

fn parse_overlap(cigar: &str, line: usize) -> Result<Option<usize>> {
    if cigar == "*" {
        return Ok(None);
    }
    cigar
        .strip_suffix('M')
        .and_then(|n| n.parse().ok())
        .map(Some)
        .ok_or_else(|| Error::parse(line, format!("unsupported overlap '{cigar}'")))
}

struct RawPath {
    line: usize,
    name: String,
    steps: Vec<String>,
    overlaps: Option<Vec<usize>>,
}

/// Parses a GFA 1.0 stream. Unknown record types are ignored.
pub fn read_gfa<R: BufRead>(reader: R) -> Result<GfaDocument> {
    let mut doc = GfaDocument::default();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut raw_links: Vec<(usize, String, String, Option<usize>)> = Vec::new();
    let mut raw_paths: Vec<RawPath> = Vec::new();

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let field = |n: usize| {
            fields
                .get(n)
                .copied()
                .ok_or_else(|| Error::parse(lineno, format!("{} record is truncated", fields[0])))
        };
        match fields[0] {
            "H" => {
                for tag in &fields[1..] {
                    let mut parts = tag.splitn(3, ':');
                    let (Some(name), Some(_), Some(value)) =
                        (parts.next(), parts.next(), parts.next())
                    else {
                        return Err(Error::parse(lineno, format!("malformed tag '{tag}'")));
                    };
                    match name {
                        "VN" => doc.header.version = Some(value.to_string()),
                        TRIGGER_LENGTH_TAG => {
                            let k = value.parse().map_err(|_| {
                                Error::parse(lineno, format!("invalid trigger length '{value}'"))
                            })?;
                            doc.header.k = Some(k);
                        }
                        TRIGGER_WORDS_TAG => {
                            doc.header.triggers =
                                Some(value.split(',').map(|w| w.as_bytes().to_vec()).collect());
                        }
                        _ => {}
                    }
                }
            }
            "S" => {
                let name = field(1)?.to_string();
                let seq = field(2)?;
                if index.insert(name.clone(), doc.segments.len()).is_some() {
                    return Err(Error::parse(lineno, format!("duplicate segment '{name}'")));
                }
                doc.segments.push(GfaSegment {
                    name,
                    sequence: (seq != "*").then(|| seq.as_bytes().to_vec()),
                });
            }
            "L" => {
                for (n, orient) in [(2, field(2)?), (4, field(4)?)] {
                    if orient != "+" {
                        return Err(Error::parse(
                            lineno,
                            format!("reverse orientation in field {} is unsupported", n + 1),
                        ));
                    }
                }
                let overlap = parse_overlap(field(5)?, lineno)?;
                raw_links.push((
                    lineno,
                    field(1)?.to_string(),
                    field(3)?.to_string(),
                    overlap,
                ));
            }
            "P" => {
                let name = field(1)?.to_string();
                let mut steps = Vec::new();
                for step in field(2)?.split(',') {
                    if let Some(seg) = step.strip_suffix('+') {
                        steps.push(seg.to_string());
                    } else if step.ends_with('-') {
                        return Err(Error::parse(
                            lineno,
                            format!("reverse orientation step '{step}' is unsupported"),
                        ));
                    } else {
                        return Err(Error::parse(lineno, format!("malformed step '{step}'")));
                    }
                }
                let overlaps = match fields.get(3).copied().unwrap_or("*") {
                    "*" => None,
                    list => Some(
                        list.split(',')
                            .map(|c| {
                                parse_overlap(c, lineno)?.ok_or_else(|| {
                                    Error::parse(lineno, "'*' mixed into an overlap list")
                                })
                            })
                            .collect::<Result<Vec<usize>>>()?,
                    ),
                };
                if let Some(o) = &overlaps {
                    if o.len() + 1 != steps.len() {
                        return Err(Error::parse(
                            lineno,
                            format!("{} overlaps for {} steps", o.len(), steps.len()),
                        ));
                    }
                }
                raw_paths.push(RawPath {
                    line: lineno,
                    name,
                    steps,
                    overlaps,
                });
            }
            _ => {}
        }
    }

    let resolve = |name: &str, line: usize| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("unknown segment '{name}'")))
    };
    if doc.header.k.is_some() {
        for seg in doc.segments.iter_mut().filter(|s| s.sequence.is_none()) {
            seg.sequence = Some(b"*".to_vec());
        }
    }
    for (line, from, to, overlap) in raw_links {
        doc.links.push(GfaLink {
            from: resolve(&from, line)?,
            to: resolve(&to, line)?,
            overlap,
        });
    }
    for raw in raw_paths {
        let steps = raw
            .steps
            .iter()
            .map(|s| resolve(s, raw.line))
            .collect::<Result<Vec<_>>>()?;
        doc.paths.push(GfaPath {
            name: raw.name,
            steps,
            overlaps: raw.overlaps,
        });
    }
    Ok(doc)
}

/// Spells out every path, removing the declared overlap between consecutive
/// steps (`*` means no overlap). Trailing pads are stripped when the document
/// is a prefix-free graph.
pub fn expand_gfa_paths(doc: &GfaDocument) -> Result<Pangenome> {
    let sequence = |idx: usize| -> Result<&[u8]> {
        doc.segments[idx].sequence.as_deref().ok_or_else(|| {
            Error::Input(format!(
                "segment '{}' has no sequence",
                doc.segments[idx].name
            ))
        })
    };
    let mut sequences = Vec::with_capacity(doc.paths.len());
    for path in &doc.paths {
        let mut data: Vec<u8> = Vec::new();
        for (i, &step) in path.steps.iter().enumerate() {
            let seg = sequence(step)?;
            let overlap = match (&path.overlaps, i) {
                (_, 0) | (None, _) => 0,
                (Some(o), _) => o[i - 1],
            };
            if overlap > seg.len()
                || overlap > data.len()
                || data[data.len() - overlap..] != seg[..overlap]
            {
                return Err(Error::Input(format!(
                    "path '{}' step {}: declared overlap {}M does not match the sequences",
                    path.name, i, overlap
                )));
            }
            data.extend_from_slice(&seg[overlap..]);
        }
        if doc.header.k.is_some() {
            while data.last() == Some(&PAD) {
                data.pop();
            }
        }
        sequences.push(Sequence {
            name: path.name.clone(),
            data,
        });
    }
    Pangenome::new(sequences)
}

/// Interprets a document written by [`write_gfa`] as a prefix-free graph.
pub fn graph_from_gfa(doc: &GfaDocument) -> Result<PrefixFreeGraph> {
    let k = doc
        .header
        .k
        .ok_or_else(|| Error::Structure(format!("missing {TRIGGER_LENGTH_TAG} header tag")))?;
    let n = doc.segments.len();
    let mut slots: Vec<Option<Vec<u8>>> = vec![None; n];
    let mut id_of = Vec::with_capacity(n);
    for seg in &doc.segments {
        let id: usize =
            seg.name.parse().ok().filter(|&id| id < n).ok_or_else(|| {
                Error::Structure(format!("segment name '{}' is not an id", seg.name))
            })?;
        let content = seg
            .sequence
            .clone()
            .ok_or_else(|| Error::Structure(format!("segment {id} has no sequence")))?;
        if slots[id].replace(content).is_some() {
            return Err(Error::Structure(format!("segment id {id} appears twice")));
        }
        id_of.push(id);
    }
    let segments = slots
        .into_iter()
        .map(|s| s.expect("ids are a permutation"))
        .collect();

    let mut paths = Vec::with_capacity(doc.paths.len());
    for path in &doc.paths {
        if let Some(o) = path
            .overlaps
            .as_ref()
            .and_then(|o| o.iter().find(|&&o| o != k))
        {
            return Err(Error::Structure(format!(
                "path '{}' declares overlap {o}M, expected {k}M",
                path.name
            )));
        }
        if path.overlaps.is_none() && path.steps.len() > 1 {
            return Err(Error::Structure(format!(
                "path '{}' has no overlaps",
                path.name
            )));
        }
        paths.push(Path {
            name: path.name.clone(),
            steps: path.steps.iter().map(|&s| id_of[s]).collect(),
        });
    }
    PrefixFreeGraph::from_normalized(k, segments, paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{build_graph, TriggerSet};

    fn running_example() -> PrefixFreeGraph {
        let p = Pangenome::new(
            [("a", "CACGTACT"), ("b", "CACACT"), ("c", "CACGACT")]
                .iter()
                .map(|(n, s)| Sequence {
                    name: n.to_string(),
                    data: s.as_bytes().to_vec(),
                })
                .collect(),
        )
        .unwrap();
        build_graph(&p, &TriggerSet::new(["AC", "CG"]).unwrap()).unwrap()
    }

    fn to_string(g: &PrefixFreeGraph) -> String {
        let mut buf = Vec::new();
        write_gfa(g, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn running_example_text() {
        let expected = "\
H\tVN:Z:1.0\ttk:i:2
S\t0\tACAC
S\t1\tACG
S\t2\tACT..
S\t3\tCAC
S\t4\tCGAC
S\t5\tCGTAC
L\t0\t+\t2\t+\t2M
L\t1\t+\t4\t+\t2M
L\t1\t+\t5\t+\t2M
L\t3\t+\t0\t+\t2M
L\t3\t+\t1\t+\t2M
L\t4\t+\t2\t+\t2M
L\t5\t+\t2\t+\t2M
P\ta\t3+,1+,5+,2+\t2M,2M,2M
P\tb\t3+,0+,2+\t2M,2M
P\tc\t3+,1+,4+,2+\t2M,2M,2M
";
        assert_eq!(to_string(&running_example()), expected);
    }

    #[test]
    fn single_segment_graph() {
        let p = Pangenome::from_strs(&["GG"]).unwrap();
        let g = build_graph(&p, &TriggerSet::new(["AC"]).unwrap()).unwrap();
        let text = to_string(&g);
        let count = |c: char| text.lines().filter(|l| l.starts_with(c)).count();
        assert_eq!((count('S'), count('L'), count('P')), (1, 0, 1));
        assert!(text.contains("P\tseq0\t0+\t*\n"));
    }

    #[test]
    fn roundtrip() {
        let g = running_example();
        let doc = read_gfa(to_string(&g).as_bytes()).unwrap();
        assert_eq!(doc.segments.len(), 6);
        assert_eq!(doc.paths.len(), 3);
        assert_eq!(doc.header.k, Some(2));
        assert_eq!(graph_from_gfa(&doc).unwrap(), g);
        let p = expand_gfa_paths(&doc).unwrap();
        let seqs: Vec<&[u8]> = p.sequences().iter().map(|s| s.data.as_slice()).collect();
        assert_eq!(seqs, [&b"CACGTACT"[..], b"CACACT", b"CACGACT"]);
    }

    #[test]
    fn star_overlaps_concatenate() {
        let text = "S\ts1\tACG\nS\ts2\tTTA\nP\tp\ts1+,s2+\t*\n";
        let doc = read_gfa(text.as_bytes()).unwrap();
        let p = expand_gfa_paths(&doc).unwrap();
        assert_eq!(p.sequences()[0].data, b"ACGTTA");
        let text = "S\ts1\tACG\nS\ts2\tTTA\nP\tp\ts1+,s2+\t0M\n";
        let p = expand_gfa_paths(&read_gfa(text.as_bytes()).unwrap()).unwrap();
        assert_eq!(p.sequences()[0].data, b"ACGTTA");
    }

    #[test]
    fn overlap_mismatch() {
        let text = "S\ts1\tACG\nS\ts2\tTTA\nP\tp\ts1+,s2+\t1M\n";
        let doc = read_gfa(text.as_bytes()).unwrap();
        assert!(matches!(expand_gfa_paths(&doc), Err(Error::Input(_))));
        let text = "S\ts1\tACG\nS\ts2\tGTA\nP\tp\ts1+,s2+\t1M\n";
        let p = expand_gfa_paths(&read_gfa(text.as_bytes()).unwrap()).unwrap();
        assert_eq!(p.sequences()[0].data, b"ACGTA");
    }

    #[test]
    fn parse_errors() {
        let err = read_gfa("S\t1\tAC\nS\t5\tGT\nP\tp\t1+,5-\t*\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_gfa("S\t1\tAC\nP\tp\t1+,2+\t*\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = read_gfa("S\t1\tAC\nP\tp\t1+,1+\t3X\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn tolerant_parse() {
        let text = "H\tVN:Z:1.0\n# comment\nW\tignored\nS\tx\tAC\tLN:i:2\nP\tp\tx+\n";
        let doc = read_gfa(text.as_bytes()).unwrap();
        assert_eq!(doc.segments.len(), 1);
        assert_eq!(doc.paths[0].overlaps, None);
        assert_eq!(doc.header.version.as_deref(), Some("1.0"));
        assert!(graph_from_gfa(&doc).is_err());
    }

    #[test]
    fn graph_from_gfa_checks_structure() {
        let mut text = to_string(&running_example());
        text = text.replace("P\tb\t3+,0+,2+", "P\tb\t0+,3+,2+");
        let doc = read_gfa(text.as_bytes()).unwrap();
        assert!(matches!(graph_from_gfa(&doc), Err(Error::Structure(_))));
    }

    #[test]
    fn star_segment_content() {
        let p = Pangenome::from_strs(&["*A*"]).unwrap();
        let t = TriggerSet::new(["*"]).unwrap();
        let g = build_graph(&p, &t).unwrap();
        assert_eq!(g.segment(0), b"*");
        let doc = read_gfa(to_string(&g).as_bytes()).unwrap();
        assert_eq!(graph_from_gfa(&doc).unwrap(), g);
        assert_eq!(expand_gfa_paths(&doc).unwrap(), p);

        let generic = read_gfa(
            "S	1	*
"
            .as_bytes(),
        )
        .unwrap();
        assert_eq!(generic.segments[0].sequence, None);
    }
}
