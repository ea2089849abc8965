use super::drg::{Drg, EdgeKind, EdgeTarget, NodeId};
use super::SbnError;

fn not_serializable(reason: impl Into<String>) -> SbnError {
    SbnError::NotSerializable { reason: reason.into() }
}

/// Writes `drg` back to single-line notation.
///
/// Boxes must be introduced in index order, and every concept must live in
/// the most recently opened box at the point it is written, which holds for
/// anything produced by the parser.
pub fn serialize_sbn(drg: &Drg) -> Result<String, SbnError> {
    let mut parent: Vec<Option<(usize, &str)>> = vec![None; drg.box_count];
    for e in drg.edges_of_kind(EdgeKind::Discourse) {
        let (NodeId::Box(s), EdgeTarget::Node(NodeId::Box(t))) = (e.source, &e.target) else {
            return Err(not_serializable("discourse edge between non-box nodes"));
        };
        if *t >= drg.box_count || s >= *t {
            return Err(not_serializable(format!("b{s} -> b{t} is not a backward box reference")));
        }
        if parent[*t].replace((s, e.label.as_str())).is_some() {
            return Err(not_serializable(format!("b{t} has more than one parent")));
        }
    }

    let mut out: Vec<String> = Vec::new();
    let mut opened = 0usize;
    let open_through = |out: &mut Vec<String>, opened: &mut usize, upto: usize| -> Result<(), SbnError> {
        while *opened < upto {
            *opened += 1;
            let b = *opened;
            let (src, label) = parent[b].ok_or_else(|| not_serializable(format!("b{b} has no parent")))?;
            out.push(label.to_string());
            out.push(format!("<{}", b - src));
        }
        Ok(())
    };

    for (idx, concept) in drg.concepts.iter().enumerate() {
        let b = drg.box_of(idx).ok_or_else(|| not_serializable(format!("c{idx} is in no box")))?;
        if b < opened {
            return Err(not_serializable(format!("c{idx} belongs to b{b}, which is already closed")));
        }
        open_through(&mut out, &mut opened, b)?;
        out.push(concept.synset.to_string());
        for e in drg.edges.iter().filter(|e| e.source == NodeId::Concept(idx)) {
            out.push(e.label.clone());
            out.push(match &e.target {
                EdgeTarget::Node(NodeId::Concept(t)) => {
                    let off = *t as i64 - idx as i64;
                    if off == 0 {
                        return Err(not_serializable(format!("c{idx} refers to itself")));
                    }
                    format!("{off:+}")
                }
                EdgeTarget::Node(NodeId::Box(_)) => {
                    return Err(not_serializable(format!("c{idx} has an edge into a box")))
                }
                EdgeTarget::Constant(c) => c.clone(),
                EdgeTarget::Literal(l) if l.contains('"') => {
                    return Err(not_serializable(format!("literal {l:?} contains a quote")))
                }
                EdgeTarget::Literal(l) => format!("\"{l}\""),
            });
        }
    }
    open_through(&mut out, &mut opened, drg.box_count.saturating_sub(1))?;
    Ok(out.join(" "))
}

/// Whitespace-normalized token sequence of a document: comments dropped,
/// single spaces between tokens, literals kept verbatim.
pub fn normalize_sbn(text: &str) -> Result<String, SbnError> {
    Ok(super::token::tokenize_sbn(text)?.iter().map(|t| t.surface()).collect::<Vec<_>>().join(" "))
}
