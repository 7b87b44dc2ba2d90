//! Line-oriented instance files.
//!
//! The first meaningful line names the kind (`fccp`, `hpp`, `pep` or `pp`).
//! `#` starts a comment. Vertices are whitespace-free names, declared by `v`
//! or by first use.
//!
//! ```text
//! fccp            hpp             pep                 pp
//! v a             e a b p         e a b h             e a b f
//! e a b 1         e b c s         e a c g             e b c n
//! w a c           e a c t         rot a b c
//! ```
//!
//! A `rot` line lists the `H`-neighbors of a vertex in cyclic order.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::ParseError;
use crate::fccp::{CoreClass, FccpInstance};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::reductions::{EdgeClass, HppInstance, PepInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Fccp,
    Hpp,
    Pep,
    Pp,
}

impl Kind {
    pub fn header(self) -> &'static str {
        match self {
            Kind::Fccp => "fccp",
            Kind::Hpp => "hpp",
            Kind::Pep => "pep",
            Kind::Pp => "pp",
        }
    }

    fn from_header(s: &str) -> Option<Self> {
        [Kind::Fccp, Kind::Hpp, Kind::Pep, Kind::Pp].into_iter().find(|k| k.header() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Fccp(FccpInstance),
    Hpp(HppInstance),
    Pep(PepInstance),
    /// A graph and the edges that must stay uncrossed.
    Pp { graph: Graph, fixed: Vec<EdgeId> },
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Fccp(_) => Kind::Fccp,
            Instance::Hpp(_) => Kind::Hpp,
            Instance::Pep(_) => Kind::Pep,
            Instance::Pp { .. } => Kind::Pp,
        }
    }
}

struct Builder {
    graph: Graph,
    ids: HashMap<String, VertexId>,
}

impl Builder {
    fn vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.ids.get(name) {
            return v;
        }
        let v = self.graph.add_vertex(name);
        self.ids.insert(name.to_string(), v);
        v
    }

    fn known(&self, line: usize, name: &str) -> Result<VertexId, ParseError> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::new(line, format!("unknown vertex `{name}`")))
    }

    fn edge(&mut self, line: usize, a: &str, b: &str) -> Result<EdgeId, ParseError> {
        let (u, v) = (self.vertex(a), self.vertex(b));
        if u == v {
            return Err(ParseError::new(line, format!("self-loop at `{a}`")));
        }
        if self.graph.find_edge(u, v).is_some() {
            return Err(ParseError::new(line, format!("duplicate edge `{a}` `{b}`")));
        }
        self.graph.add_edge(u, v).map_err(|e| ParseError::new(line, e.to_string()))
    }
}

fn meaningful(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn arity(line: usize, tokens: &[&str], n: usize) -> Result<(), ParseError> {
    if tokens.len() == n {
        Ok(())
    } else {
        Err(ParseError::new(
            line,
            format!("`{}` takes {} fields, got {}", tokens[0], n - 1, tokens.len() - 1),
        ))
    }
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut lines = meaningful(text);
    let Some((line, header)) = lines.next() else {
        return Err(ParseError::new(1, "empty instance file"));
    };
    let kind = match header[..] {
        [h] => Kind::from_header(h),
        _ => None,
    }
    .ok_or_else(|| ParseError::new(line, format!("expected a header (fccp, hpp, pep or pp), got `{}`", header.join(" "))))?;
    let mut b = Builder {
        graph: Graph::new(0),
        ids: HashMap::new(),
    };
    let mut core = Vec::new();
    let mut hpp = Vec::new();
    let mut pairs = Vec::new();
    let mut marked = Vec::new();
    let mut rot_lines: Vec<(usize, Vec<&str>)> = Vec::new();
    for (line, tokens) in lines {
        match (kind, tokens[0]) {
            (_, "v") => {
                arity(line, &tokens, 2)?;
                b.vertex(tokens[1]);
            }
            (Kind::Fccp, "e") => {
                arity(line, &tokens, 4)?;
                let class = match tokens[3] {
                    "1" => CoreClass::E1,
                    "2" => CoreClass::E2,
                    other => return Err(ParseError::new(line, format!("edge class must be 1 or 2, got `{other}`"))),
                };
                b.edge(line, tokens[1], tokens[2])?;
                core.push(class);
            }
            (Kind::Fccp, "w") => {
                arity(line, &tokens, 3)?;
                let (x, y) = (b.known(line, tokens[1])?, b.known(line, tokens[2])?);
                if x == y {
                    return Err(ParseError::new(line, format!("pair joins `{}` to itself", tokens[1])));
                }
                pairs.push((x, y));
            }
            (Kind::Hpp, "e") => {
                arity(line, &tokens, 4)?;
                let class = match tokens[3] {
                    "p" => EdgeClass::Primary,
                    "s" => EdgeClass::Secondary,
                    "t" => EdgeClass::Tertiary,
                    other => return Err(ParseError::new(line, format!("edge class must be p, s or t, got `{other}`"))),
                };
                b.edge(line, tokens[1], tokens[2])?;
                hpp.push(class);
            }
            (Kind::Pep, "e") | (Kind::Pp, "e") => {
                arity(line, &tokens, 4)?;
                let (yes, no) = if kind == Kind::Pep { ("h", "g") } else { ("f", "n") };
                let flag = match tokens[3] {
                    t if t == yes => true,
                    t if t == no => false,
                    other => return Err(ParseError::new(line, format!("edge class must be {yes} or {no}, got `{other}`"))),
                };
                let e = b.edge(line, tokens[1], tokens[2])?;
                if flag {
                    marked.push(e);
                }
            }
            (Kind::Pep, "rot") => {
                if tokens.len() < 2 {
                    return Err(ParseError::new(line, "`rot` needs a vertex"));
                }
                rot_lines.push((line, tokens));
            }
            (_, other) => {
                return Err(ParseError::new(line, format!("unexpected `{other}` in a {} file", kind.header())));
            }
        }
    }
    let graph = b.graph.clone();
    match kind {
        Kind::Fccp => Ok(Instance::Fccp(FccpInstance {
            graph,
            classes: core,
            pairs,
        })),
        Kind::Hpp => Ok(Instance::Hpp(HppInstance { graph, classes: hpp })),
        Kind::Pp => Ok(Instance::Pp { graph, fixed: marked }),
        Kind::Pep => {
            let mut in_h = vec![false; graph.edge_count()];
            for &e in &marked {
                in_h[e] = true;
            }
            let mut rotation = vec![Vec::new(); graph.vertex_count()];
            let mut seen = vec![false; graph.vertex_count()];
            for (line, tokens) in &rot_lines {
                let v = b.known(*line, tokens[1])?;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(ParseError::new(*line, format!("second rotation for `{}`", tokens[1])));
                }
                for name in &tokens[2..] {
                    let w = b.known(*line, name)?;
                    let e = graph
                        .find_edge(v, w)
                        .filter(|&e| in_h[e])
                        .ok_or_else(|| ParseError::new(*line, format!("`{}` `{name}` is not an h edge", tokens[1])))?;
                    rotation[v].push(e);
                }
            }
            let last = rot_lines.last().map_or(1, |(l, _)| *l);
            PepInstance::new(graph, marked, rotation)
                .map(Instance::Pep)
                .map_err(|e| ParseError::new(last, e.to_string()))
        }
    }
}

fn write_vertices(out: &mut String, g: &Graph) {
    for v in g.vertices() {
        writeln!(out, "v {}", g.name(v)).unwrap();
    }
}

pub fn write_fccp(f: &FccpInstance) -> String {
    let g = &f.graph;
    let mut out = String::from("fccp\n");
    write_vertices(&mut out, g);
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let c = if f.classes[e] == CoreClass::E1 { 1 } else { 2 };
        writeln!(out, "e {} {} {c}", g.name(u), g.name(v)).unwrap();
    }
    for &(x, y) in &f.pairs {
        writeln!(out, "w {} {}", g.name(x), g.name(y)).unwrap();
    }
    out
}

pub fn write_hpp(h: &HppInstance) -> String {
    let g = &h.graph;
    let mut out = String::from("hpp\n");
    write_vertices(&mut out, g);
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let c = match h.classes[e] {
            EdgeClass::Primary => 'p',
            EdgeClass::Secondary => 's',
            EdgeClass::Tertiary => 't',
        };
        writeln!(out, "e {} {} {c}", g.name(u), g.name(v)).unwrap();
    }
    out
}

pub fn write_pep(p: &PepInstance) -> String {
    let g = &p.graph;
    let mut out = String::from("pep\n");
    write_vertices(&mut out, g);
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let c = if p.h_edges.binary_search(&e).is_ok() { 'h' } else { 'g' };
        writeln!(out, "e {} {} {c}", g.name(u), g.name(v)).unwrap();
    }
    for (v, order) in p.h_rotation.iter().enumerate() {
        if order.is_empty() {
            continue;
        }
        let names: Vec<&str> = order.iter().map(|&e| g.name(g.opposite(e, v))).collect();
        writeln!(out, "rot {} {}", g.name(v), names.join(" ")).unwrap();
    }
    out
}

pub fn write_pp(g: &Graph, fixed: &[EdgeId]) -> String {
    let mut out = String::from("pp\n");
    write_vertices(&mut out, g);
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let c = if fixed.contains(&e) { 'f' } else { 'n' };
        writeln!(out, "e {} {} {c}", g.name(u), g.name(v)).unwrap();
    }
    out
}

pub fn write(inst: &Instance) -> String {
    match inst {
        Instance::Fccp(f) => write_fccp(f),
        Instance::Hpp(h) => write_hpp(h),
        Instance::Pep(p) => write_pep(p),
        Instance::Pp { graph, fixed } => write_pp(graph, fixed),
    }
}
