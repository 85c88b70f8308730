//! One addressing scheme for graphs: a family name such as `cycle:7`, a path
//! to a graph6 or edge-list file, or a literal graph6 string.

use std::path::Path;

use thiserror::Error;

use crate::edgelist::{parse_edge_list, EdgeListError};
use crate::families::{parse_family, FamilyError};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, Graph6Error};

#[derive(Debug, Error)]
pub enum InputError {
    #[error(transparent)]
    Family(FamilyError),
    #[error("{path}: {source}")]
    EdgeList { path: String, source: EdgeListError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: no graph found")]
    EmptyFile { path: String },
    #[error("{input:?} is not a family, a readable file, or a graph6 string: {source}")]
    Unrecognized { input: String, source: Graph6Error },
}

/// Reads a file holding graph6 lines (the first graph is returned) or an
/// edge list, decided by whether the first non-blank line parses as graph6.
pub fn read_graph_file(path: &Path) -> Result<Graph, InputError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: shown.clone(),
        source,
    })?;
    let Some(first) = text.lines().find(|l| !l.trim().is_empty()) else {
        return Err(InputError::EmptyFile { path: shown });
    };
    if let Ok(g) = parse_graph6(first) {
        return Ok(g);
    }
    parse_edge_list(&text).map_err(|source| InputError::EdgeList { path: shown, source })
}

/// Resolves a graph address: family, then existing file, then graph6.
pub fn resolve_graph(input: &str) -> Result<Graph, InputError> {
    match parse_family(input) {
        Ok(g) => return Ok(g),
        Err(FamilyError::Unknown(_)) => {}
        Err(e) => return Err(InputError::Family(e)),
    }
    let path = Path::new(input);
    if path.is_file() {
        return read_graph_file(path);
    }
    parse_graph6(input).map_err(|source| InputError::Unrecognized {
        input: input.to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, petersen};

    #[test]
    fn families_and_strings() {
        assert_eq!(resolve_graph("petersen").unwrap(), petersen());
        assert_eq!(resolve_graph("Dhc").unwrap(), cycle(5));
        assert!(matches!(resolve_graph("cycle:1"), Err(InputError::Family(_))));
        assert!(matches!(resolve_graph("not a graph"), Err(InputError::Unrecognized { .. })));
    }

    #[test]
    fn files() {
        let dir = std::env::temp_dir().join(format!("oddgirth-input-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let g6 = dir.join("c5.g6");
        std::fs::write(&g6, "Dhc\nA_\n").unwrap();
        assert_eq!(resolve_graph(g6.to_str().unwrap()).unwrap(), cycle(5));
        let el = dir.join("c5.txt");
        std::fs::write(&el, "0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
        assert_eq!(resolve_graph(el.to_str().unwrap()).unwrap(), cycle(5));
        let bad = dir.join("bad.txt");
        std::fs::write(&bad, "0 1\n2 2\n").unwrap();
        assert!(matches!(
            resolve_graph(bad.to_str().unwrap()),
            Err(InputError::EdgeList { source: EdgeListError::SelfLoop { line: 2, .. }, .. })
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
