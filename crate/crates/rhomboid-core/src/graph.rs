//! Labeled two-terminal DAGs: the square-rhomboid families, Fibonacci
//! graphs, free-form st-dags, and the ground-truth path oracle.
//!
//! Vertices of the rhomboid families live on three tiers: `n` *basic*
//! vertices on the middle row and `n - 1` *upper* and *lower* vertices on
//! the rows above and below. Edge labels follow the standard lettering:
//! `b` along the basic row, `e`/`d` on the diagonals into and out of the
//! upper/lower rows, `c`/`a` along the upper/lower rows, and `f`/`g` for
//! the crossing edges present only in the *full* square rhomboid.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{Expr, LabelAssignment};

/// Which row of the rhomboid a vertex sits on.
///
/// The ordering (`Basic < Upper < Lower`) fixes the canonical vertex order
/// used everywhere output must be deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Basic,
    Upper,
    Lower,
}

impl Tier {
    /// Single-letter prefix used in DOT output and display (`B`, `U`, `L`).
    pub fn letter(self) -> char {
        match self {
            Tier::Basic => 'B',
            Tier::Upper => 'U',
            Tier::Lower => 'L',
        }
    }
}

/// A tier-tagged, 1-based vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub tier: Tier,
    pub index: u32,
}

impl VertexRef {
    pub fn basic(index: u32) -> Self {
        VertexRef { tier: Tier::Basic, index }
    }

    pub fn upper(index: u32) -> Self {
        VertexRef { tier: Tier::Upper, index }
    }

    pub fn lower(index: u32) -> Self {
        VertexRef { tier: Tier::Lower, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tier.letter(), self.index)
    }
}

/// Edge label series `a` through `g`.
///
/// The derived `Ord` is alphabetical and only fixes label identity; the
/// canonical *edge order* of a graph is [`Series::rank`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'a',
            Series::B => 'b',
            Series::C => 'c',
            Series::D => 'd',
            Series::E => 'e',
            Series::F => 'f',
            Series::G => 'g',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'a' => Series::A,
            'b' => Series::B,
            'c' => Series::C,
            'd' => Series::D,
            'e' => Series::E,
            'f' => Series::F,
            'g' => Series::G,
            _ => return None,
        })
    }

    /// Position in the canonical edge order `b, e, d, c, a, f, g`.
    ///
    /// Graphs store edges, and path enumeration tries them, in this order,
    /// which keeps every textual output byte-stable.
    pub fn rank(self) -> u8 {
        match self {
            Series::B => 0,
            Series::E => 1,
            Series::D => 2,
            Series::C => 3,
            Series::A => 4,
            Series::F => 5,
            Series::G => 6,
        }
    }
}

/// An edge label: series letter plus a 1-based ordinal, unique per graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel {
    pub series: Series,
    pub ordinal: u32,
}

impl EdgeLabel {
    pub fn new(series: Series, ordinal: u32) -> Self {
        debug_assert!(ordinal >= 1, "edge ordinals are 1-based");
        EdgeLabel { series, ordinal }
    }

    fn rank_key(self) -> (u8, u32) {
        (self.series.rank(), self.ordinal)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.ordinal)
    }
}

/// Convenience constructor used pervasively in tests: `label(Series::B, 3)`.
pub fn label(series: Series, ordinal: u32) -> EdgeLabel {
    EdgeLabel::new(series, ordinal)
}

/// Graph family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Fsr,
    Sr,
    Fibonacci,
    Generic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Fsr => "fsr",
            Family::Sr => "sr",
            Family::Fibonacci => "fibonacci",
            Family::Generic => "generic",
        })
    }
}

/// A labeled edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub label: EdgeLabel,
    pub from: VertexRef,
    pub to: VertexRef,
}

/// Errors from graph construction and queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The requested family size is below the family minimum.
    InvalidSize { family: Family, size: u32 },
    /// A queried vertex does not exist in the graph.
    UnknownVertex(VertexRef),
    /// A free-form edge list does not describe a valid st-dag.
    InvalidStDag(&'static str),
    /// A label required by modular evaluation has no assigned residue.
    UnassignedLabel(EdgeLabel),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidSize { family, size } => {
                write!(f, "invalid size {size} for family {family}")
            }
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            GraphError::InvalidStDag(msg) => write!(f, "not a valid st-dag: {msg}"),
            GraphError::UnassignedLabel(l) => write!(f, "label {l} has no assigned residue"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GraphError {}

/// One source-to-sink (or vertex-to-vertex) path, as its ordered label
/// sequence. The empty sequence is the trivial path from a vertex to itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathMonomial(pub Vec<EdgeLabel>);

impl PathMonomial {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PathMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// An immutable labeled st-dag.
///
/// Edges are stored in the canonical order (series rank `b,e,d,c,a,f,g`,
/// then ordinal), so two graphs built from the same parameters are
/// structurally identical and all derived output is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StDag {
    family: Family,
    size: u32,
    vertices: Vec<VertexRef>,
    edges: Vec<Edge>,
    source: VertexRef,
    sink: VertexRef,
}

impl StDag {
    pub fn family(&self) -> Family {
        self.family
    }

    /// Basic-vertex count for the rhomboid families, vertex count otherwise.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn vertices(&self) -> &[VertexRef] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> VertexRef {
        self.source
    }

    pub fn sink(&self) -> VertexRef {
        self.sink
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// All edge labels, in canonical edge order.
    pub fn labels(&self) -> Vec<EdgeLabel> {
        self.edges.iter().map(|e| e.label).collect()
    }

    /// Out-adjacency in canonical edge order.
    fn adjacency(&self) -> BTreeMap<VertexRef, Vec<(EdgeLabel, VertexRef)>> {
        let mut adj: BTreeMap<VertexRef, Vec<(EdgeLabel, VertexRef)>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.from).or_default().push((e.label, e.to));
        }
        adj
    }

    /// Vertices in a topological order (edges point forward).
    fn topological_order(&self) -> Vec<VertexRef> {
        let mut indeg: BTreeMap<VertexRef, usize> =
            self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *indeg.get_mut(&e.to).expect("edge endpoint in vertex set") += 1;
        }
        let adj = self.adjacency();
        let mut ready: Vec<VertexRef> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(v) = ready.pop() {
            order.push(v);
            if let Some(outs) = adj.get(&v) {
                for &(_, w) in outs {
                    let d = indeg.get_mut(&w).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        order
    }

    /// Checks the st-dag invariants: unique source and sink, acyclicity,
    /// globally unique labels, and every vertex on some source-to-sink path.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut indeg: BTreeMap<VertexRef, usize> =
            self.vertices.iter().map(|&v| (v, 0)).collect();
        let mut outdeg = indeg.clone();
        let mut labels = BTreeSet::new();
        for e in &self.edges {
            if !self.contains(e.from) || !self.contains(e.to) {
                return Err(GraphError::InvalidStDag("edge endpoint outside vertex set"));
            }
            if !labels.insert(e.label) {
                return Err(GraphError::InvalidStDag("duplicate edge label"));
            }
            *indeg.get_mut(&e.to).unwrap() += 1;
            *outdeg.get_mut(&e.from).unwrap() += 1;
        }
        let sources: Vec<_> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let sinks: Vec<_> = outdeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        if sources.as_slice() != [self.source] {
            return Err(GraphError::InvalidStDag("source is not the unique in-degree-0 vertex"));
        }
        if sinks.as_slice() != [self.sink] {
            return Err(GraphError::InvalidStDag("sink is not the unique out-degree-0 vertex"));
        }
        if self.topological_order().len() != self.vertices.len() {
            return Err(GraphError::InvalidStDag("graph contains a cycle"));
        }
        let from_source = self.reachable_from(self.source);
        let to_sink = self.reaching_to(self.sink);
        for &v in &self.vertices {
            if !from_source.contains(&v) || !to_sink.contains(&v) {
                return Err(GraphError::InvalidStDag("vertex off every source-sink path"));
            }
        }
        Ok(())
    }

    fn reachable_from(&self, start: VertexRef) -> BTreeSet<VertexRef> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            if let Some(outs) = adj.get(&v) {
                stack.extend(outs.iter().map(|&(_, w)| w));
            }
        }
        seen
    }

    fn reaching_to(&self, end: VertexRef) -> BTreeSet<VertexRef> {
        let mut radj: BTreeMap<VertexRef, Vec<VertexRef>> = BTreeMap::new();
        for e in &self.edges {
            radj.entry(e.to).or_default().push(e.from);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![end];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            if let Some(ins) = radj.get(&v) {
                stack.extend(ins.iter().copied());
            }
        }
        seen
    }

    /// Builds an st-dag from a free-form edge list. The vertex set is
    /// inferred, source/sink are detected, and all invariants are checked.
    pub fn from_edges(edges: Vec<(EdgeLabel, VertexRef, VertexRef)>) -> Result<StDag, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::InvalidStDag("empty edge list"));
        }
        let mut vertices: BTreeSet<VertexRef> = BTreeSet::new();
        for &(_, u, v) in &edges {
            vertices.insert(u);
            vertices.insert(v);
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(label, from, to)| Edge { label, from, to })
            .collect();
        edges.sort_by_key(|e| e.label.rank_key());

        let mut indeg: BTreeMap<VertexRef, usize> = vertices.iter().map(|&v| (v, 0)).collect();
        let mut outdeg = indeg.clone();
        for e in &edges {
            *indeg.get_mut(&e.to).unwrap() += 1;
            *outdeg.get_mut(&e.from).unwrap() += 1;
        }
        let sources: Vec<_> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let sinks: Vec<_> = outdeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let (&source, &sink) = match (sources.as_slice(), sinks.as_slice()) {
            ([s], [t]) => (s, t),
            ([_], _) => return Err(GraphError::InvalidStDag("more than one sink")),
            _ => return Err(GraphError::InvalidStDag("more than one source")),
        };

        let size = vertices.len() as u32;
        let g = StDag {
            family: Family::Generic,
            size,
            vertices: vertices.into_iter().collect(),
            edges,
            source,
            sink,
        };
        g.validate()?;
        Ok(g)
    }
}

fn rhomboid(family: Family, n: u32) -> Result<StDag, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidSize { family, size: n });
    }
    let mut vertices = Vec::new();
    for i in 1..=n {
        vertices.push(VertexRef::basic(i));
    }
    for i in 1..n {
        vertices.push(VertexRef::upper(i));
    }
    for i in 1..n {
        vertices.push(VertexRef::lower(i));
    }
    vertices.sort();

    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((label(Series::B, i), VertexRef::basic(i), VertexRef::basic(i + 1)));
    }
    for i in 1..n {
        edges.push((label(Series::E, 2 * i - 1), VertexRef::basic(i), VertexRef::upper(i)));
        edges.push((label(Series::E, 2 * i), VertexRef::upper(i), VertexRef::basic(i + 1)));
    }
    for i in 1..n {
        edges.push((label(Series::D, 2 * i - 1), VertexRef::basic(i), VertexRef::lower(i)));
        edges.push((label(Series::D, 2 * i), VertexRef::lower(i), VertexRef::basic(i + 1)));
    }
    for i in 1..n.saturating_sub(1) {
        edges.push((label(Series::C, i), VertexRef::upper(i), VertexRef::upper(i + 1)));
    }
    for i in 1..n.saturating_sub(1) {
        edges.push((label(Series::A, i), VertexRef::lower(i), VertexRef::lower(i + 1)));
    }
    if family == Family::Fsr {
        for i in 1..n.saturating_sub(1) {
            edges.push((label(Series::F, i), VertexRef::lower(i), VertexRef::upper(i + 1)));
        }
        for i in 1..n.saturating_sub(1) {
            edges.push((label(Series::G, i), VertexRef::upper(i), VertexRef::lower(i + 1)));
        }
    }
    let mut edges: Vec<Edge> = edges
        .into_iter()
        .map(|(label, from, to)| Edge { label, from, to })
        .collect();
    edges.sort_by_key(|e| e.label.rank_key());

    Ok(StDag {
        family,
        size: n,
        vertices,
        edges,
        source: VertexRef::basic(1),
        sink: VertexRef::basic(n),
    })
}

/// Builds the full square rhomboid of size `n` (`n` basic vertices).
pub fn build_fsr(n: u32) -> Result<StDag, GraphError> {
    rhomboid(Family::Fsr, n)
}

/// Builds the square rhomboid of size `n`: the full square rhomboid minus
/// the crossing `f`/`g` edges.
pub fn build_sr(n: u32) -> Result<StDag, GraphError> {
    rhomboid(Family::Sr, n)
}

/// Builds the Fibonacci graph on `m` vertices: step edges `a_v: v -> v+1`
/// and skip edges `b_v: v -> v+2`.
pub fn build_fibonacci(m: u32) -> Result<StDag, GraphError> {
    if m < 2 {
        return Err(GraphError::InvalidSize { family: Family::Fibonacci, size: m });
    }
    let vertices: Vec<VertexRef> = (1..=m).map(VertexRef::basic).collect();
    let mut edges = Vec::new();
    for v in 1..m {
        edges.push(Edge {
            label: label(Series::A, v),
            from: VertexRef::basic(v),
            to: VertexRef::basic(v + 1),
        });
    }
    for v in 1..m.saturating_sub(1) {
        edges.push(Edge {
            label: label(Series::B, v),
            from: VertexRef::basic(v),
            to: VertexRef::basic(v + 2),
        });
    }
    edges.sort_by_key(|e| e.label.rank_key());
    Ok(StDag {
        family: Family::Fibonacci,
        size: m,
        vertices,
        edges,
        source: VertexRef::basic(1),
        sink: VertexRef::basic(m),
    })
}

/// Enumerates every directed path from `from` to `to` as ordered label
/// sequences, in depth-first order with edges tried in canonical edge
/// order. `from == to` yields the single empty path.
pub fn enumerate_paths(
    g: &StDag,
    from: VertexRef,
    to: VertexRef,
) -> Result<Vec<PathMonomial>, GraphError> {
    if !g.contains(from) {
        return Err(GraphError::UnknownVertex(from));
    }
    if !g.contains(to) {
        return Err(GraphError::UnknownVertex(to));
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut acc: Vec<EdgeLabel> = Vec::new();
    // Explicit stack of (vertex, next-edge-index) frames.
    let mut frames: Vec<(VertexRef, usize)> = vec![(from, 0)];
    while let Some(&mut (v, idx)) = frames.last_mut() {
        if v == to && idx == 0 {
            out.push(PathMonomial(acc.clone()));
            // The sink of the pair can still have outgoing edges, but no
            // path may revisit `to`: in a DAG any extension never returns.
            frames.pop();
            acc.pop();
            continue;
        }
        let outs = adj.get(&v).map(Vec::as_slice).unwrap_or(&[]);
        if idx < outs.len() {
            frames.last_mut().unwrap().1 += 1;
            let (l, w) = outs[idx];
            acc.push(l);
            frames.push((w, 0));
        } else {
            frames.pop();
            acc.pop();
        }
    }
    Ok(out)
}

/// Number of `from`-to-`to` paths via a dynamic program over the DAG;
/// an implementation independent of [`enumerate_paths`].
pub fn count_paths(g: &StDag, from: VertexRef, to: VertexRef) -> Result<u128, GraphError> {
    if !g.contains(from) {
        return Err(GraphError::UnknownVertex(from));
    }
    if !g.contains(to) {
        return Err(GraphError::UnknownVertex(to));
    }
    let adj = g.adjacency();
    let mut counts: BTreeMap<VertexRef, u128> = BTreeMap::new();
    counts.insert(from, 1);
    for v in g.topological_order() {
        let c = match counts.get(&v) {
            Some(&c) => c,
            None => continue,
        };
        if let Some(outs) = adj.get(&v) {
            for &(_, w) in outs {
                *counts.entry(w).or_insert(0) += c;
            }
        }
    }
    Ok(counts.get(&to).copied().unwrap_or(0))
}

/// Total number of label symbols over all `from`-to-`to` paths, i.e. the
/// complexity of the canonical expression of the slice. Computed by the
/// same dynamic program as [`count_paths`].
pub fn path_symbols(g: &StDag, from: VertexRef, to: VertexRef) -> Result<u128, GraphError> {
    if !g.contains(from) {
        return Err(GraphError::UnknownVertex(from));
    }
    if !g.contains(to) {
        return Err(GraphError::UnknownVertex(to));
    }
    let adj = g.adjacency();
    let mut counts: BTreeMap<VertexRef, u128> = BTreeMap::new();
    let mut symbols: BTreeMap<VertexRef, u128> = BTreeMap::new();
    counts.insert(from, 1);
    symbols.insert(from, 0);
    for v in g.topological_order() {
        let c = match counts.get(&v) {
            Some(&c) => c,
            None => continue,
        };
        let s = symbols[&v];
        if let Some(outs) = adj.get(&v) {
            for &(_, w) in outs {
                *counts.entry(w).or_insert(0) += c;
                *symbols.entry(w).or_insert(0) += s + c;
            }
        }
    }
    Ok(symbols.get(&to).copied().unwrap_or(0))
}

/// Evaluates the canonical polynomial of the `from`-to-`to` slice at a
/// label assignment, without materializing any path: a dynamic program
/// accumulating `value[w] = sum over edges (u,w) of value[u] * residue`.
///
/// This is the graph-side oracle for randomized equivalence checks; by
/// distributivity it equals `eval_mod` of the canonical expression.
pub fn eval_paths_mod(
    g: &StDag,
    from: VertexRef,
    to: VertexRef,
    asg: &LabelAssignment,
) -> Result<u64, GraphError> {
    if !g.contains(from) {
        return Err(GraphError::UnknownVertex(from));
    }
    if !g.contains(to) {
        return Err(GraphError::UnknownVertex(to));
    }
    let m = asg.modulus() as u128;
    let adj = g.adjacency();
    // Only edges on some from-to path contribute to the sink value, so
    // only their labels need residues.
    let on_slice = g.reaching_to(to);
    let mut value: BTreeMap<VertexRef, u64> = BTreeMap::new();
    value.insert(from, 1 % asg.modulus());
    for v in g.topological_order() {
        let c = match value.get(&v) {
            Some(&c) => c,
            None => continue,
        };
        if let Some(outs) = adj.get(&v) {
            for &(l, w) in outs {
                if !on_slice.contains(&w) {
                    continue;
                }
                let r = asg.residue(l).ok_or(GraphError::UnassignedLabel(l))?;
                let contrib = (c as u128 * r as u128) % m;
                let slot = value.entry(w).or_insert(0);
                *slot = ((*slot as u128 + contrib) % m) as u64;
            }
        }
    }
    Ok(value.get(&to).copied().unwrap_or(0))
}

/// Labels of every edge lying on at least one `from`-to-`to` path.
pub fn labels_between(
    g: &StDag,
    from: VertexRef,
    to: VertexRef,
) -> Result<BTreeSet<EdgeLabel>, GraphError> {
    if !g.contains(from) {
        return Err(GraphError::UnknownVertex(from));
    }
    if !g.contains(to) {
        return Err(GraphError::UnknownVertex(to));
    }
    let fwd = g.reachable_from(from);
    let bwd = g.reaching_to(to);
    Ok(g.edges
        .iter()
        .filter(|e| fwd.contains(&e.from) && bwd.contains(&e.to))
        .map(|e| e.label)
        .collect())
}

/// The canonical expression of `g`: the sum over all source-to-sink paths
/// of the product of edge labels along each path, in path-oracle order.
pub fn canonical_expression(g: &StDag) -> Expr {
    let paths = enumerate_paths(g, g.source, g.sink)
        .expect("source and sink are vertices of the graph");
    Expr::sum(
        paths
            .into_iter()
            .map(|p| Expr::prod(p.0.into_iter().map(Expr::lit).collect()))
            .collect(),
    )
}

/// Renders the graph as Graphviz DOT text. Output is byte-stable for a
/// given graph: vertices in canonical vertex order, edges in canonical
/// edge order.
pub fn export_dot(g: &StDag) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let name = match g.family {
        Family::Generic => String::from("generic"),
        f => alloc::format!("{}_{}", f, g.size),
    };
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=LR;");
    for v in &g.vertices {
        let _ = writeln!(out, "  {v};");
    }
    for e in &g.edges {
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, e.label);
    }
    out.push_str("}\n");
    out
}
