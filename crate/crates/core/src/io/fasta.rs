use std::io::BufRead;

use crate::alphabet;
use crate::error::{Error, Result};
use crate::graph::{Pangenome, Sequence};

/// Reads all records of a FASTA stream. Names are the header text up to the
/// first whitespace; sequence lines are joined and uppercased.
pub fn read_fasta<R: BufRead>(reader: R) -> Result<Pangenome> {
    let mut sequences: Vec<Sequence> = Vec::new();
    let mut header_line = 0;

    let finish = |seqs: &[Sequence], header_line: usize| -> Result<()> {
        match seqs.last() {
            Some(s) if s.data.is_empty() => Err(Error::parse(
                header_line,
                format!("record '{}' has an empty sequence", s.name),
            )),
            _ => Ok(()),
        }
    };

    for (i, line) in reader.split(b'\n').enumerate() {
        let lineno = i + 1;
        let line = line?;
        let line = line.trim_ascii();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix(b">") {
            finish(&sequences, header_line)?;
            header_line = lineno;
            let header = String::from_utf8_lossy(header);
            let name = header.split_whitespace().next().unwrap_or("").to_string();
            sequences.push(Sequence {
                name,
                data: Vec::new(),
            });
            continue;
        }
        if line.starts_with(b";") {
            continue;
        }
        let Some(current) = sequences.last_mut() else {
            return Err(Error::parse(
                lineno,
                "sequence data before the first header",
            ));
        };
        if let Some(&b) = line.iter().find(|&&b| alphabet::is_reserved(b)) {
            return Err(Error::parse(
                lineno,
                format!("reserved character '{}' in sequence", b as char),
            ));
        }
        if let Some(&b) = line.iter().find(|b| b.is_ascii_whitespace()) {
            return Err(Error::parse(
                lineno,
                format!("whitespace {:?} inside sequence line", b as char),
            ));
        }
        current.data.extend(line.iter().map(u8::to_ascii_uppercase));
    }
    finish(&sequences, header_line)?;
    if sequences.is_empty() {
        return Err(Error::parse(0, "no FASTA records"));
    }
    Pangenome::new(sequences)
}
