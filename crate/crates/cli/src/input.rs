use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use rigikit::graph::Graph;
use rigikit::graph6;

/// Reads graph6 lines from `files`, or from standard input when none are given.
/// Blank lines and `>>graph6<<` headers are skipped.
pub fn read_graphs(files: &[PathBuf]) -> Result<Vec<Graph>, String> {
    let mut sources = Vec::new();
    if files.is_empty() {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| format!("reading stdin: {e}"))?;
        sources.push(("<stdin>".to_string(), text));
    }
    for path in files {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        sources.push((path.display().to_string(), text));
    }

    let mut graphs = Vec::new();
    for (name, text) in &sources {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim().trim_start_matches(">>graph6<<");
            if line.is_empty() {
                continue;
            }
            let g = graph6::decode(line).map_err(|e| format!("{name}:{}: {e}", lineno + 1))?;
            graphs.push(g);
        }
    }
    Ok(graphs)
}
