//! Shared plumbing for the `fasta2pfg`, `gfa2pfg` and `pfg2sa` executables.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use pfg::io::{expand_gfa_paths, graph_from_gfa, read_fasta, read_gfa, write_gfa};
use pfg::oracle::{oracle_bwt, oracle_sa};
use pfg::{build_graph, Pangenome, Pfg, PrefixFreeGraph, TriggerSet};

/// Largest pangenome `pfg2sa --verify` will check against the brute-force
/// suffix sort.
pub const VERIFY_LIMIT: usize = 50_000;

#[derive(Debug, Parser)]
pub struct BuildArgs {
    /// Trigger words, one per line
    #[arg(short, long, value_name = "FILE")]
    pub triggers: PathBuf,

    /// Input file; standard input when omitted
    pub input: Option<PathBuf>,

    /// Suppress warnings
    #[arg(short, long)]
    pub quiet: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "pfg2sa",
    version,
    about = "Stream the suffix array of a prefix-free graph"
)]
pub struct SaArgs {
    /// Prefix-free graph in GFA; standard input when omitted
    pub input: Option<PathBuf>,

    /// Append the BWT character to every line
    #[arg(long)]
    pub bwt: bool,

    /// Check the output against a brute-force suffix sort (small inputs only)
    #[arg(long)]
    pub verify: bool,

    /// Suppress warnings
    #[arg(short, long)]
    pub quiet: bool,
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("cannot open {}", p.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin().lock())),
    })
}

fn load_triggers(path: &Path) -> Result<TriggerSet> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read trigger file {}", path.display()))?;
    TriggerSet::parse(&text).with_context(|| format!("in trigger file {}", path.display()))
}

fn check(graph: &PrefixFreeGraph, quiet: bool) -> Result<()> {
    let report = graph.validate();
    if !quiet {
        for w in report.warnings() {
            eprintln!("warning: {w}");
        }
    }
    if let Some(e) = report.errors().next() {
        bail!("constructed graph is invalid: {e}");
    }
    Ok(())
}

fn emit_graph(pangenome: &Pangenome, args: &BuildArgs) -> Result<()> {
    let triggers = load_triggers(&args.triggers)?;
    let graph = build_graph(pangenome, &triggers)?;
    check(&graph, args.quiet)?;
    write_gfa(&graph, BufWriter::new(io::stdout().lock()))?;
    Ok(())
}

pub fn fasta2pfg(args: &BuildArgs) -> Result<()> {
    let input = open_input(args.input.as_deref())?;
    let pangenome = read_fasta(input).context("cannot load FASTA input")?;
    emit_graph(&pangenome, args)
}

pub fn gfa2pfg(args: &BuildArgs) -> Result<()> {
    let input = open_input(args.input.as_deref())?;
    let doc = read_gfa(input).context("cannot load GFA input")?;
    let pangenome = expand_gfa_paths(&doc).context("cannot expand GFA paths")?;
    emit_graph(&pangenome, args)
}

pub fn pfg2sa(args: &SaArgs) -> Result<()> {
    let input = open_input(args.input.as_deref())?;
    let doc = read_gfa(input).context("cannot load GFA input")?;
    let graph = graph_from_gfa(&doc).context("input is not a prefix-free graph")?;
    let k = graph.k();
    let pfg = Pfg::new(graph);
    let mut out = BufWriter::new(io::stdout().lock());

    if args.verify {
        let pangenome = expand_gfa_paths(&doc)?;
        let n = pangenome.total_length();
        if n > VERIFY_LIMIT {
            bail!("--verify supports pangenomes up to {VERIFY_LIMIT} bases, input has {n}");
        }
        let emissions: Vec<_> = pfg.iter().with_bwt(true).collect();
        let sa: Vec<usize> = emissions.iter().map(|e| e.sa).collect();
        let expected = oracle_sa(&pangenome, k);
        if sa != expected {
            let at = sa
                .iter()
                .zip(&expected)
                .position(|(a, b)| a != b)
                .unwrap_or(0);
            bail!("verification failed: suffix array differs from brute force at index {at}");
        }
        let bwt: Vec<u8> = emissions.iter().map(|e| e.bwt.unwrap()).collect();
        if bwt != oracle_bwt(&pangenome, k, &expected) {
            bail!("verification failed: BWT differs from brute force");
        }
        if !args.quiet {
            eprintln!("verified {n} suffix array entries");
        }
    }

    for e in pfg.iter().with_bwt(args.bwt) {
        write!(out, "{}\t{}\t{}\t{}", e.index, e.sa, e.id, e.pos)?;
        if let Some(c) = e.bwt {
            write!(out, "\t{}", c as char)?;
        }
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Maps a command result to an exit status, reporting errors on standard
/// error. A closed output pipe is not an error.
pub fn exit_with(name: &str, result: Result<()>) -> ExitCode {
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{name}: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
