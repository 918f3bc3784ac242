//! Line-oriented instance and solution files.
//!
//! ```text
//! # comment
//! p bcs <n> <m>            (or: p wbcs <n> <m>)
//! v <id> <b|r> [<weight>]  (weight mandatory for wbcs)
//! e <u> <v>
//! i <id> <l> <r>           (optional; all n or none)
//! td <bags> <width+1> <n>  (optional decomposition block)
//! b <bag-id> <v...>
//! be <bag-u> <bag-v>
//! ```
//!
//! Vertex and bag ids are 1-based in files and 0-based in memory.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::decomposition::{validate_tree_decomposition, DecompositionError, TreeDecomposition};
use super::intervals::{Interval, IntervalError, IntervalRepresentation};
use crate::graph::{BicoloredGraph, Color, GraphError, SolveResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Unweighted: maximize vertex count.
    Bcs,
    /// Weighted: maximize total weight.
    Wbcs,
}

impl Problem {
    fn keyword(self) -> &'static str {
        match self {
            Problem::Bcs => "bcs",
            Problem::Wbcs => "wbcs",
        }
    }
}

/// A parsed instance with its optional structural certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub problem: Problem,
    pub graph: BicoloredGraph,
    pub intervals: Option<IntervalRepresentation>,
    pub decomposition: Option<TreeDecomposition>,
}

impl Instance {
    pub fn new(problem: Problem, graph: BicoloredGraph) -> Self {
        Self {
            problem,
            graph,
            intervals: None,
            decomposition: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("missing `p` header")]
    MissingHeader,
    #[error("second `p` header")]
    DuplicateHeader,
    #[error("unknown record type `{0}`")]
    UnknownRecord(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(usize),
    #[error("vertex id {0} is outside 1..=n")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is never declared")]
    MissingVertex(usize),
    #[error("vertex {0} needs a weight in a wbcs instance")]
    MissingWeight(usize),
    #[error("edge endpoint {0} is not a declared vertex")]
    DanglingEndpoint(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("header declares {declared} edges but {actual} were given")]
    EdgeCount { declared: usize, actual: usize },
    #[error("interval for vertex {0} given twice")]
    DuplicateInterval(usize),
    #[error("interval block lists {present} of {expected} vertices")]
    PartialIntervals { present: usize, expected: usize },
    #[error("invalid interval representation: {0}")]
    Interval(#[from] IntervalError),
    #[error("`{0}` record outside a decomposition block")]
    OrphanDecompositionRecord(&'static str),
    #[error("decomposition header mismatch: {0}")]
    DecompositionHeader(String),
    #[error("bag {0} declared twice")]
    DuplicateBag(usize),
    #[error("invalid tree decomposition: {0}")]
    Decomposition(#[from] DecompositionError),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

/// A parse failure with the 1-based line it was detected on (0 when the
/// problem concerns the file as a whole).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

struct Fields<'a> {
    line: usize,
    it: std::str::SplitWhitespace<'a>,
}

impl<'a> Fields<'a> {
    fn next_str(&mut self, what: &str) -> Result<&'a str, ParseError> {
        self.it
            .next()
            .ok_or_else(|| ParseError::at(self.line, ParseErrorKind::Syntax(format!("missing {what}"))))
    }

    fn next_num<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let s = self.next_str(what)?;
        s.parse()
            .map_err(|_| ParseError::at(self.line, ParseErrorKind::Syntax(format!("bad {what} `{s}`"))))
    }

    fn next_id(&mut self, what: &str) -> Result<usize, ParseError> {
        let id: usize = self.next_num(what)?;
        if id == 0 {
            return Err(ParseError::at(
                self.line,
                ParseErrorKind::Syntax(format!("{what} ids are 1-based")),
            ));
        }
        Ok(id - 1)
    }

    fn rest(&mut self) -> Vec<&'a str> {
        self.it.by_ref().collect()
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.it.next() {
            None => Ok(()),
            Some(extra) => Err(ParseError::at(
                self.line,
                ParseErrorKind::Syntax(format!("unexpected trailing field `{extra}`")),
            )),
        }
    }
}

struct TdHeader {
    line: usize,
    bags: usize,
    width_plus_one: usize,
    n: usize,
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(Problem, usize, usize, usize)> = None;
    let mut colors: Vec<Option<Color>> = Vec::new();
    let mut weights: Vec<Option<u64>> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut intervals: Vec<Option<Interval>> = Vec::new();
    let mut interval_count = 0;
    let mut td_header: Option<TdHeader> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut bag_edges: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut f = Fields {
            line,
            it: content.split_whitespace(),
        };
        let Some(tag) = f.it.next() else { continue };
        if tag != "p" && header.is_none() {
            return Err(ParseError::at(line, ParseErrorKind::MissingHeader));
        }
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateHeader));
                }
                let problem = match f.next_str("problem")? {
                    "bcs" => Problem::Bcs,
                    "wbcs" => Problem::Wbcs,
                    other => {
                        return Err(ParseError::at(
                            line,
                            ParseErrorKind::Syntax(format!("unknown problem `{other}`")),
                        ))
                    }
                };
                let n: usize = f.next_num("vertex count")?;
                let m: usize = f.next_num("edge count")?;
                f.finish()?;
                header = Some((problem, n, m, line));
                colors = vec![None; n];
                weights = vec![None; n];
                intervals = vec![None; n];
            }
            "v" => {
                let (problem, n, ..) = header.expect("header checked");
                let id = f.next_id("vertex")?;
                if id >= n {
                    return Err(ParseError::at(line, ParseErrorKind::VertexOutOfRange(id + 1)));
                }
                if colors[id].is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateVertex(id + 1)));
                }
                colors[id] = Some(match f.next_str("color")? {
                    "b" => Color::Blue,
                    "r" => Color::Red,
                    other => {
                        return Err(ParseError::at(
                            line,
                            ParseErrorKind::Syntax(format!("color must be `b` or `r`, got `{other}`")),
                        ))
                    }
                });
                let weight = match f.it.next() {
                    Some(s) => Some(s.parse::<u64>().map_err(|_| {
                        ParseError::at(line, ParseErrorKind::Syntax(format!("bad weight `{s}`")))
                    })?),
                    None => None,
                };
                f.finish()?;
                match weight {
                    Some(0) => return Err(ParseError::at(line, GraphError::ZeroWeight(id).into())),
                    None if problem == Problem::Wbcs => {
                        return Err(ParseError::at(line, ParseErrorKind::MissingWeight(id + 1)))
                    }
                    _ => {}
                }
                weights[id] = weight;
            }
            "e" => {
                let u = f.next_id("vertex")?;
                let v = f.next_id("vertex")?;
                f.finish()?;
                if u == v {
                    return Err(ParseError::at(line, ParseErrorKind::SelfLoop(u + 1)));
                }
                edges.push((u, v, line));
            }
            "i" => {
                let (_, n, ..) = header.expect("header checked");
                let id = f.next_id("vertex")?;
                let l: i64 = f.next_num("left endpoint")?;
                let r: i64 = f.next_num("right endpoint")?;
                f.finish()?;
                if id >= n {
                    return Err(ParseError::at(line, ParseErrorKind::VertexOutOfRange(id + 1)));
                }
                if intervals[id].is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateInterval(id + 1)));
                }
                if l >= r {
                    return Err(ParseError::at(
                        line,
                        IntervalError::Degenerate {
                            vertex: id,
                            left: l,
                            right: r,
                        }
                        .into(),
                    ));
                }
                intervals[id] = Some(Interval::new(l, r));
                interval_count += 1;
            }
            "td" => {
                if td_header.is_some() {
                    return Err(ParseError::at(
                        line,
                        ParseErrorKind::DecompositionHeader("second `td` header".into()),
                    ));
                }
                let nb: usize = f.next_num("bag count")?;
                let width_plus_one: usize = f.next_num("bag size")?;
                let tn: usize = f.next_num("vertex count")?;
                f.finish()?;
                td_header = Some(TdHeader {
                    line,
                    bags: nb,
                    width_plus_one,
                    n: tn,
                });
                bags = vec![None; nb];
            }
            "b" => {
                let Some(td) = &td_header else {
                    return Err(ParseError::at(line, ParseErrorKind::OrphanDecompositionRecord("b")));
                };
                let (_, n, ..) = header.expect("header checked");
                let id = f.next_id("bag")?;
                if id >= td.bags {
                    return Err(ParseError::at(line, DecompositionError::BagOutOfRange(id).into()));
                }
                if bags[id].is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateBag(id + 1)));
                }
                let mut bag = Vec::new();
                for s in f.rest() {
                    let v: usize = s.parse().ok().filter(|&v| v >= 1).ok_or_else(|| {
                        ParseError::at(line, ParseErrorKind::Syntax(format!("bad vertex `{s}` in bag")))
                    })?;
                    if v > n {
                        return Err(ParseError::at(
                            line,
                            DecompositionError::VertexOutOfRange { bag: id, vertex: v - 1 }.into(),
                        ));
                    }
                    bag.push(v - 1);
                }
                bags[id] = Some(bag);
            }
            "be" => {
                let Some(td) = &td_header else {
                    return Err(ParseError::at(line, ParseErrorKind::OrphanDecompositionRecord("be")));
                };
                let a = f.next_id("bag")?;
                let b = f.next_id("bag")?;
                f.finish()?;
                for x in [a, b] {
                    if x >= td.bags {
                        return Err(ParseError::at(line, DecompositionError::BagOutOfRange(x).into()));
                    }
                }
                bag_edges.push((a, b));
            }
            other => {
                return Err(ParseError::at(line, ParseErrorKind::UnknownRecord(other.to_string())));
            }
        }
    }

    let Some((problem, n, m, header_line)) = header else {
        return Err(ParseError::at(0, ParseErrorKind::MissingHeader));
    };
    if let Some(v) = colors.iter().position(Option::is_none) {
        return Err(ParseError::at(header_line, ParseErrorKind::MissingVertex(v + 1)));
    }
    let mut seen = HashSet::with_capacity(edges.len());
    for &(u, v, line) in &edges {
        for x in [u, v] {
            if x >= n {
                return Err(ParseError::at(line, ParseErrorKind::DanglingEndpoint(x + 1)));
            }
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::at(
                line,
                ParseErrorKind::DuplicateEdge(u.min(v) + 1, u.max(v) + 1),
            ));
        }
    }
    if edges.len() != m {
        return Err(ParseError::at(
            header_line,
            ParseErrorKind::EdgeCount {
                declared: m,
                actual: edges.len(),
            },
        ));
    }
    let colors: Vec<Color> = colors.into_iter().map(Option::unwrap).collect();
    let weights: Vec<u64> = weights.into_iter().map(|w| w.unwrap_or(1)).collect();
    let graph = BicoloredGraph::new(colors, Some(weights), edges.iter().map(|&(u, v, _)| (u, v)))
        .map_err(|e| ParseError::at(0, e.into()))?;

    let intervals = match interval_count {
        0 => None,
        c if c == n => {
            let rep = IntervalRepresentation::new(intervals.into_iter().map(Option::unwrap).collect())
                .map_err(|e| ParseError::at(0, e.into()))?;
            rep.check_represents(&graph)
                .map_err(|e| ParseError::at(0, e.into()))?;
            Some(rep)
        }
        c => {
            return Err(ParseError::at(
                0,
                ParseErrorKind::PartialIntervals {
                    present: c,
                    expected: n,
                },
            ))
        }
    };

    let decomposition = match td_header {
        None => None,
        Some(td) => {
            if td.n != n {
                return Err(ParseError::at(
                    td.line,
                    ParseErrorKind::DecompositionHeader(format!("declares {} vertices, graph has {n}", td.n)),
                ));
            }
            if let Some(b) = bags.iter().position(Option::is_none) {
                return Err(ParseError::at(
                    td.line,
                    ParseErrorKind::DecompositionHeader(format!("bag {} is never given", b + 1)),
                ));
            }
            let decomposition = TreeDecomposition::new(bags.into_iter().map(Option::unwrap).collect(), bag_edges);
            validate_tree_decomposition(&graph, &decomposition).map_err(|e| ParseError::at(td.line, e.into()))?;
            let max_bag = decomposition.bags().iter().map(Vec::len).max().unwrap_or(0);
            if max_bag != td.width_plus_one {
                return Err(ParseError::at(
                    td.line,
                    ParseErrorKind::DecompositionHeader(format!(
                        "declares bag size {}, largest bag has {max_bag}",
                        td.width_plus_one
                    )),
                ));
            }
            Some(decomposition)
        }
    };

    Ok(Instance {
        problem,
        graph,
        intervals,
        decomposition,
    })
}

/// Serializes an instance. Weights are written for `wbcs` instances and for
/// `bcs` instances that carry non-unit weights.
pub fn write_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    let _ = writeln!(out, "p {} {} {}", instance.problem.keyword(), g.len(), g.edge_count());
    let with_weights = instance.problem == Problem::Wbcs || !g.is_unit_weighted();
    for v in 0..g.len() {
        if with_weights {
            let _ = writeln!(out, "v {} {} {}", v + 1, g.color(v), g.weight(v));
        } else {
            let _ = writeln!(out, "v {} {}", v + 1, g.color(v));
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    if let Some(rep) = &instance.intervals {
        for (v, iv) in rep.intervals().iter().enumerate() {
            let _ = writeln!(out, "i {} {} {}", v + 1, iv.left, iv.right);
        }
    }
    if let Some(td) = &instance.decomposition {
        let max_bag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
        let _ = writeln!(out, "td {} {} {}", td.len(), max_bag, g.len());
        for (b, bag) in td.bags().iter().enumerate() {
            let _ = write!(out, "b {}", b + 1);
            for &v in bag {
                let _ = write!(out, " {}", v + 1);
            }
            out.push('\n');
        }
        for &(a, b) in td.edges() {
            let _ = writeln!(out, "be {} {}", a + 1, b + 1);
        }
    }
    out
}

/// `s <objective>` followed by `w <ids...>` with 1-based ids.
pub fn write_solution(result: &SolveResult) -> String {
    let mut out = format!("s {}\nw", result.objective);
    for &v in &result.witness {
        let _ = write!(out, " {}", v + 1);
    }
    out.push('\n');
    out
}

/// Parses a solution file into `(objective, 0-based witness)`.
pub fn parse_solution(text: &str) -> Result<(u64, Vec<usize>), ParseError> {
    let mut objective = None;
    let mut witness = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut f = Fields {
            line,
            it: raw.split('#').next().unwrap_or("").split_whitespace(),
        };
        match f.it.next() {
            None => continue,
            Some("s") => {
                objective = Some(f.next_num::<u64>("objective")?);
                f.finish()?;
            }
            Some("w") => {
                let mut ids = Vec::new();
                while f.it.clone().next().is_some() {
                    ids.push(f.next_id("vertex")?);
                }
                witness = Some(ids);
            }
            Some(other) => {
                return Err(ParseError::at(line, ParseErrorKind::UnknownRecord(other.to_string())))
            }
        }
    }
    let objective = objective.ok_or_else(|| ParseError::at(0, ParseErrorKind::Syntax("missing `s` line".into())))?;
    Ok((objective, witness.unwrap_or_default()))
}
