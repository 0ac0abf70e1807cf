//! Output documents: versioned JSON and DOT Hasse diagrams.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Document<P: Serialize> {
    pub schema_version: &'static str,
    pub command: Echo,
    pub payload: P,
}

/// The subcommand and its effective arguments.
#[derive(Serialize, Clone)]
pub struct Echo {
    pub name: String,
    pub args: BTreeMap<String, String>,
}

impl Echo {
    pub fn new(name: &str) -> Self {
        Echo {
            name: name.to_string(),
            args: BTreeMap::new(),
        }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }
}

pub fn to_json<P: Serialize>(echo: &Echo, payload: P) -> String {
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        command: echo.clone(),
        payload,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Serialize, Clone, Debug)]
pub struct Node {
    pub id: String,
    pub rank: usize,
}

/// A lattice ready for output. Edges are covers `[lower, higher]` by id.
#[derive(Serialize, Clone, Debug)]
pub struct LatticeView {
    pub count: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<[String; 2]>,
}

impl LatticeView {
    /// `ids[i]` must be unique; `covers` are index pairs `(lower, higher)`.
    /// Nodes are listed by rank, then id.
    pub fn new(ids: Vec<String>, ranks: Vec<usize>, covers: &[(usize, usize)]) -> Self {
        let mut seen = std::collections::HashSet::new();
        for id in &ids {
            assert!(seen.insert(id), "duplicate node id {id}");
        }
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by(|&a, &b| (ranks[a], &ids[a]).cmp(&(ranks[b], &ids[b])));
        let mut pos = vec![0; ids.len()];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let mut pairs: Vec<(usize, usize)> =
            covers.iter().map(|&(a, b)| (pos[a], pos[b])).collect();
        pairs.sort();
        let nodes: Vec<Node> = order
            .iter()
            .map(|&i| Node {
                id: ids[i].clone(),
                rank: ranks[i],
            })
            .collect();
        let edges = pairs
            .into_iter()
            .map(|(a, b)| [nodes[a].id.clone(), nodes[b].id.clone()])
            .collect();
        LatticeView {
            count: nodes.len(),
            nodes,
            edges,
        }
    }

    pub fn to_dot(&self, graph: &str) -> String {
        let mut s = String::new();
        writeln!(s, "digraph {} {{", dot_id(graph)).unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        writeln!(s, "  node [shape=box];").unwrap();
        for n in &self.nodes {
            writeln!(s, "  {};", dot_id(&n.id)).unwrap();
        }
        for [a, b] in &self.edges {
            writeln!(s, "  {} -> {};", dot_id(a), dot_id(b)).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// A quoted DOT identifier.
pub fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
