use std::fmt::Write as _;

use super::{extract_triples, Granularity, Triple, TripleSet, VarId};
use crate::sbn::Drg;

enum Out<'a> {
    Attr(&'a str),
    Var(VarId),
}

pub(crate) fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

fn needs_quotes(s: &str) -> bool {
    s.is_empty() || s.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '"' | ':' | '/' | '\\'))
}

/// Penman text for `drg`, rooted at `b0`.
pub fn to_penman(drg: &Drg, g: Granularity) -> String {
    render_penman(&extract_triples(drg, g))
}

/// Renders a triple set as nested Penman text.
///
/// Children follow triple order. A variable is expanded at its first
/// occurrence and referenced by name afterwards. Variables not reachable
/// from the first one start additional top-level graphs.
pub fn render_penman(ts: &TripleSet) -> String {
    let n = ts.vars.len();
    let mut instance: Vec<Option<&str>> = vec![None; n];
    let mut children: Vec<Vec<(&str, Out)>> = (0..n).map(|_| Vec::new()).collect();
    for t in ts.iter() {
        match t {
            Triple::Instance { var, label } => instance[*var] = Some(label),
            Triple::Relation { source, label, target } => children[*source].push((label, Out::Var(*target))),
            Triple::Attribute { var, label, value } => children[*var].push((label, Out::Attr(value))),
        }
    }

    let mut visited = vec![false; n];
    let mut out = String::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        write_node(ts, root, &instance, &children, &mut visited, &mut out);
    }
    out
}

fn write_node(
    ts: &TripleSet,
    var: VarId,
    instance: &[Option<&str>],
    children: &[Vec<(&str, Out)>],
    visited: &mut [bool],
    out: &mut String,
) {
    visited[var] = true;
    let label = instance[var].unwrap_or("");
    let label = if needs_quotes(label) { quote(label) } else { label.to_string() };
    let _ = write!(out, "({} / {}", ts.vars[var].name, label);
    for (role, child) in &children[var] {
        let _ = write!(out, " :{role} ");
        match child {
            Out::Attr(v) => out.push_str(&quote(v)),
            Out::Var(t) if visited[*t] => out.push_str(&ts.vars[*t].name),
            Out::Var(t) => write_node(ts, *t, instance, children, visited, out),
        }
    }
    out.push(')');
}

fn escape_tsv(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

/// One row per triple: `var<TAB>label<TAB>target<TAB>form`.
pub fn triples_tsv(ts: &TripleSet) -> String {
    let mut out = String::new();
    for t in ts.iter() {
        let name = |v: &VarId| ts.vars[*v].name.as_str();
        let (var, label, target, form) = match t {
            Triple::Instance { var, label } => (name(var), "instance", escape_tsv(label), "instance"),
            Triple::Relation { source, label, target } => {
                (name(source), label.as_str(), name(target).to_string(), "relation")
            }
            Triple::Attribute { var, label, value } => (name(var), label.as_str(), escape_tsv(value), "attribute"),
        };
        let _ = writeln!(out, "{var}\t{}\t{target}\t{form}", escape_tsv(label));
    }
    out
}
