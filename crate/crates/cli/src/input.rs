//! Edge-list ingestion.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use coreconn::graph::BuildStats;
use coreconn::{Graph, Label};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected two node ids, got {content:?}")]
    Malformed { line: usize, content: String },
}

#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub stats: BuildStats,
    /// Edge lines read (comments and blank lines excluded).
    pub lines: usize,
}

/// Reads one edge per line: two whitespace-separated node ids. Lines whose
/// first non-blank character is `#` and blank lines are skipped.
pub fn parse_edge_list(path: &Path) -> Result<ParsedGraph, InputError> {
    let io = |source| InputError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io)?;
    parse_lines(BufReader::new(file).lines().map(|l| l.map_err(io)))
}

pub fn parse_edge_text(text: &str) -> Result<ParsedGraph, InputError> {
    parse_lines(text.lines().map(|l| Ok(l.to_string())))
}

fn parse_lines<I>(lines: I) -> Result<ParsedGraph, InputError>
where
    I: Iterator<Item = Result<String, InputError>>,
{
    let mut edges: Vec<(Label, Label)> = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => edges.push((Label::parse(a), Label::parse(b))),
            _ => {
                return Err(InputError::Malformed {
                    line: i + 1,
                    content: line,
                })
            }
        }
    }
    let lines = edges.len();
    let (graph, stats) = Graph::from_labeled_edges(edges);
    Ok(ParsedGraph { graph, stats, lines })
}
