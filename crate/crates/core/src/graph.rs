//! Data graphs: labelled directed graphs with one data value per node.
//!
//! Nodes, symbols and data values are interned to dense indices. Data values
//! are only ever compared for equality, so the evaluators work on value ids.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type SymId = usize;
pub type ValueId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DataValue {
    Int(i64),
    Str(String),
}

impl fmt::Display for DataValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataValue::Int(i) => write!(f, "{i}"),
            DataValue::Str(s) => write!(f, "\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DataGraph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    kappa: Vec<ValueId>,
    values: Vec<DataValue>,
    alphabet: Vec<String>,
    sym_index: HashMap<String, SymId>,
    edges: Vec<(NodeId, SymId, NodeId)>,
    out: Vec<Vec<(SymId, NodeId)>>,
}

/// Incremental construction of a [`DataGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    raw_values: Vec<DataValue>,
    alphabet: Vec<String>,
    sym_index: HashMap<String, SymId>,
    edges: BTreeSet<(NodeId, SymId, NodeId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn symbol(&mut self, s: &str) -> SymId {
        if let Some(&i) = self.sym_index.get(s) {
            return i;
        }
        let i = self.alphabet.len();
        self.alphabet.push(s.to_string());
        self.sym_index.insert(s.to_string(), i);
        i
    }

    /// Declares a node; without a value, κ defaults to the id itself.
    pub fn node(&mut self, name: &str, value: Option<DataValue>) -> Result<NodeId> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateNode(name.to_string()));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        let v = value.unwrap_or_else(|| match name.parse::<i64>() {
            Ok(n) => DataValue::Int(n),
            Err(_) => DataValue::Str(name.to_string()),
        });
        self.raw_values.push(v);
        Ok(i)
    }

    /// Adds a node with a fresh integer value equal to its index.
    pub fn fresh(&mut self, name: &str) -> NodeId {
        let v = DataValue::Int(self.names.len() as i64);
        self.node(name, Some(v)).expect("fresh node names are unique")
    }

    pub fn lookup(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge(&mut self, src: NodeId, label: &str, dst: NodeId) {
        let a = self.symbol(label);
        self.edges.insert((src, a, dst));
    }

    pub fn edge_named(&mut self, src: &str, label: &str, dst: &str) -> Result<()> {
        let s = self.lookup(src).ok_or_else(|| Error::UndeclaredNode(src.to_string()))?;
        let d = self.lookup(dst).ok_or_else(|| Error::UndeclaredNode(dst.to_string()))?;
        self.edge(s, label, d);
        Ok(())
    }

    pub fn build(self) -> DataGraph {
        let mut values: Vec<DataValue> = Vec::new();
        let mut vindex: HashMap<DataValue, ValueId> = HashMap::new();
        let kappa = self
            .raw_values
            .into_iter()
            .map(|v| {
                *vindex.entry(v.clone()).or_insert_with(|| {
                    values.push(v);
                    (values.len() - 1) as ValueId
                })
            })
            .collect();
        let mut out = vec![Vec::new(); self.names.len()];
        for &(s, a, d) in &self.edges {
            out[s].push((a, d));
        }
        // canonical successor order: by destination, then label
        for o in &mut out {
            o.sort_by_key(|&(a, d)| (d, a));
        }
        DataGraph {
            names: self.names,
            index: self.index,
            kappa,
            values,
            alphabet: self.alphabet,
            sym_index: self.sym_index,
            edges: self.edges.into_iter().collect(),
            out,
        }
    }
}

impl DataGraph {
    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.names.len()
    }

    pub fn edges(&self) -> &[(NodeId, SymId, NodeId)] {
        &self.edges
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    /// Value id of κ(v).
    pub fn kappa(&self, v: NodeId) -> ValueId {
        self.kappa[v]
    }

    pub fn value(&self, id: ValueId) -> &DataValue {
        &self.values[id as usize]
    }

    /// Number of distinct data values |values(G)|.
    pub fn value_count(&self) -> usize {
        self.values.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbol(&self, s: &str) -> Option<SymId> {
        self.sym_index.get(s).copied()
    }

    pub fn symbol_name(&self, a: SymId) -> &str {
        &self.alphabet[a]
    }

    /// Outgoing edges of `v` as (label, destination), sorted by destination then label.
    pub fn out(&self, v: NodeId) -> &[(SymId, NodeId)] {
        &self.out[v]
    }

    pub fn has_edge(&self, s: NodeId, a: SymId, d: NodeId) -> bool {
        self.edges.binary_search(&(s, a, d)).is_ok()
    }

    /// A graph database is a data graph whose κ is injective.
    pub fn is_graph_database(&self) -> bool {
        self.values.len() == self.names.len()
    }

    /// True when (u,a,v) ∈ E implies (v,a,u) ∈ E.
    pub fn is_symmetric(&self) -> bool {
        self.edges.iter().all(|&(s, a, d)| self.has_edge(d, a, s))
    }

    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for s in &self.alphabet {
            b.symbol(s);
        }
        for v in self.nodes() {
            b.node(&self.names[v], Some(self.value(self.kappa[v]).clone())).unwrap();
        }
        for &(s, a, d) in &self.edges {
            b.edge(s, &self.alphabet[a], d);
        }
        b
    }

    pub fn format_path(&self, p: &Path) -> String {
        let mut s = self.names[p.nodes[0]].clone();
        for (i, &a) in p.labels.iter().enumerate() {
            s.push_str(&format!(" -{}-> {}", self.alphabet[a], self.names[p.nodes[i + 1]]));
        }
        s
    }
}

/// A walk v1 a1 v2 ... vn; never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub labels: Vec<SymId>,
}

impl Path {
    pub fn single(v: NodeId) -> Self {
        Path { nodes: vec![v], labels: vec![] }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of positions (nodes).
    pub fn positions(&self) -> usize {
        self.nodes.len()
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn push(&mut self, a: SymId, v: NodeId) {
        self.labels.push(a);
        self.nodes.push(v);
    }
}

pub fn validate_path(g: &DataGraph, nodes: &[NodeId], labels: &[SymId]) -> Result<Path> {
    if nodes.is_empty() || labels.len() + 1 != nodes.len() {
        return Err(Error::Invalid("a path needs n nodes and n-1 labels, n >= 1".into()));
    }
    if let Some(&v) = nodes.iter().find(|&&v| v >= g.node_count()) {
        return Err(Error::UndeclaredNode(v.to_string()));
    }
    for (i, &a) in labels.iter().enumerate() {
        if !g.has_edge(nodes[i], a, nodes[i + 1]) {
            return Err(Error::NotAWalk(i));
        }
    }
    Ok(Path { nodes: nodes.to_vec(), labels: labels.to_vec() })
}

/// ρ1ρ2: splices two paths sharing the junction node once.
pub fn concat_paths(p1: &Path, p2: &Path) -> Result<Path> {
    if p1.last() != p2.first() {
        return Err(Error::JunctionMismatch);
    }
    let mut p = p1.clone();
    p.nodes.extend_from_slice(&p2.nodes[1..]);
    p.labels.extend_from_slice(&p2.labels);
    Ok(p)
}

/// Encodes an undirected graph on nodes `0..n` over the single symbol `a`,
/// with distinct values so the result is a graph database.
pub fn encode_undirected(n: usize, edges: &[(usize, usize)]) -> DataGraph {
    let mut b = GraphBuilder::new();
    b.symbol("a");
    for i in 0..n {
        b.node(&format!("v{i}"), Some(DataValue::Int(i as i64))).unwrap();
    }
    for &(x, y) in edges {
        b.edge(x, "a", y);
        b.edge(y, "a", x);
    }
    b.build()
}

fn parse_value(tok: &str, line: usize) -> Result<DataValue> {
    if tok.starts_with('"') {
        if tok.len() < 2 || !tok.ends_with('"') {
            return Err(Error::Syntax { line, msg: format!("unterminated string {tok}") });
        }
        let inner = &tok[1..tok.len() - 1];
        let mut s = String::new();
        let mut esc = false;
        for c in inner.chars() {
            if esc {
                s.push(c);
                esc = false;
            } else if c == '\\' {
                esc = true;
            } else {
                s.push(c);
            }
        }
        Ok(DataValue::Str(s))
    } else {
        tok.parse::<i64>()
            .map(DataValue::Int)
            .map_err(|_| Error::Syntax { line, msg: format!("bad data value `{tok}`") })
    }
}

/// Splits a line into whitespace-separated tokens, keeping quoted strings whole.
fn tokens(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_str = false;
    let mut esc = false;
    for c in line.chars() {
        if in_str {
            cur.push(c);
            if esc {
                esc = false;
            } else if c == '\\' {
                esc = true;
            } else if c == '"' {
                in_str = false;
            }
        } else if c.is_whitespace() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            if c == '"' {
                in_str = true;
            }
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Parses the line-oriented graph format (`alphabet`, `node`, `edge`, `#` comments).
pub fn load_graph(text: &str) -> Result<DataGraph> {
    let mut b = GraphBuilder::new();
    let mut pending = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks = tokens(t);
        match toks[0].as_str() {
            "alphabet" => {
                for s in &toks[1..] {
                    b.symbol(s);
                }
            }
            "node" => {
                let v = match toks.len() {
                    2 => None,
                    3 => Some(parse_value(&toks[2], line)?),
                    _ => return Err(Error::Syntax { line, msg: "expected `node <id> [<value>]`".into() }),
                };
                b.node(&toks[1], v).map_err(|e| Error::Syntax { line, msg: e.to_string() })?;
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(Error::Syntax { line, msg: "expected `edge <src> <label> <dst>`".into() });
                }
                pending.push((line, toks[1].clone(), toks[2].clone(), toks[3].clone()));
            }
            other => return Err(Error::Syntax { line, msg: format!("unknown directive `{other}`") }),
        }
    }
    for (line, s, a, d) in pending {
        b.edge_named(&s, &a, &d).map_err(|e| Error::Syntax { line, msg: e.to_string() })?;
    }
    Ok(b.build())
}

pub fn save_graph(g: &DataGraph) -> String {
    let mut s = String::new();
    if !g.alphabet.is_empty() {
        s.push_str("alphabet");
        for a in &g.alphabet {
            s.push(' ');
            s.push_str(a);
        }
        s.push('\n');
    }
    for v in g.nodes() {
        s.push_str(&format!("node {} {}\n", g.names[v], g.value(g.kappa[v])));
    }
    for &(x, a, y) in &g.edges {
        s.push_str(&format!("edge {} {} {}\n", g.names[x], g.alphabet[a], g.names[y]));
    }
    s
}
