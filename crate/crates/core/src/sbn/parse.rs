use super::drg::{Drg, EdgeKind, EdgeTarget, NodeId, NAME_LABEL};
use super::token::{box_ref_offset, classify_token, node_ref_offset, tokenize_sbn, Slot, Token, TokenClass};
use super::vocab::Vocabulary;
use super::SbnError;

struct PendingRef {
    edge: usize,
    owner: usize,
    offset: i64,
    token: usize,
}

/// Single left-to-right pass over the tokens of one document.
///
/// Box 0 is opened by the first concept or discourse relation. Each concept
/// owns the `(label, target)` pairs that follow it; a discourse relation
/// `REL <k` opens a new box linked from the box `k` positions back. Relative
/// node references count concepts only and are resolved once the whole
/// document has been read, so forward references are fine.
pub fn parse_sbn(tokens: &[Token], vocab: &Vocabulary, origin: &str) -> Result<Drg, SbnError> {
    if tokens.is_empty() {
        return Err(SbnError::EmptyDocument);
    }
    let mut drg = Drg::new(origin);
    let mut current_box: Option<usize> = None;
    let mut current_concept: Option<usize> = None;
    let mut pending = Vec::new();

    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        match classify_token(tok, Slot::Label, tokens.get(i + 1), vocab)? {
            TokenClass::Synset => {
                let b = *current_box.get_or_insert_with(|| drg.add_box());
                let synset = tok.text.parse().expect("classified as synset");
                current_concept = Some(drg.add_concept(synset, b));
                i += 1;
            }
            TokenClass::DiscourseRelation => {
                if current_box.is_none() {
                    drg.add_box();
                }
                let box_tok = &tokens[i + 1];
                let k = box_ref_offset(&box_tok.text).expect("classified by lookahead");
                let new_box = drg.box_count;
                if k == 0 || k > new_box {
                    return Err(SbnError::DanglingBoxRef { token: box_tok.text.clone(), pos: box_tok.pos });
                }
                drg.add_box();
                drg.add_edge(
                    NodeId::Box(new_box - k),
                    tok.text.clone(),
                    EdgeKind::Discourse,
                    EdgeTarget::Node(NodeId::Box(new_box)),
                );
                current_box = Some(new_box);
                current_concept = None;
                i += 2;
            }
            class @ (TokenClass::EdgeLabel | TokenClass::Operator) => {
                let owner = current_concept
                    .ok_or_else(|| SbnError::EdgeWithoutConcept { token: tok.text.clone(), pos: tok.pos })?;
                let target_tok = tokens
                    .get(i + 1)
                    .ok_or_else(|| SbnError::OddEdgeTokens { label: tok.text.clone(), pos: tok.pos })?;
                let target = match classify_token(target_tok, Slot::Target, tokens.get(i + 2), vocab)? {
                    TokenClass::NodeRef => {
                        pending.push(PendingRef {
                            edge: drg.edges.len(),
                            owner,
                            offset: node_ref_offset(&target_tok.text).expect("classified as node ref"),
                            token: i + 1,
                        });
                        // placeholder, resolved below
                        EdgeTarget::Node(NodeId::Concept(owner))
                    }
                    TokenClass::Constant => EdgeTarget::Constant(target_tok.text.clone()),
                    TokenClass::Literal => EdgeTarget::Literal(target_tok.text.clone()),
                    _ => return Err(SbnError::OddEdgeTokens { label: tok.text.clone(), pos: tok.pos }),
                };
                let kind = if tok.text == NAME_LABEL {
                    EdgeKind::Name
                } else if class == TokenClass::Operator {
                    EdgeKind::Operator
                } else {
                    EdgeKind::Role
                };
                drg.add_edge(NodeId::Concept(owner), tok.text.clone(), kind, target);
                i += 2;
            }
            TokenClass::BoxRef | TokenClass::NodeRef | TokenClass::Constant | TokenClass::Literal => {
                return Err(SbnError::UnknownToken { token: tok.surface(), pos: tok.pos });
            }
        }
    }

    let n = drg.concepts.len() as i64;
    for p in pending {
        let target = p.owner as i64 + p.offset;
        if p.offset == 0 || target < 0 || target >= n {
            let tok = &tokens[p.token];
            return Err(SbnError::DanglingNodeRef { token: tok.text.clone(), pos: tok.pos });
        }
        drg.edges[p.edge].target = EdgeTarget::Node(NodeId::Concept(target as usize));
    }
    Ok(drg)
}

/// Tokenizes and parses one document.
pub fn parse_document(text: &str, vocab: &Vocabulary, origin: &str) -> Result<Drg, SbnError> {
    parse_sbn(&tokenize_sbn(text)?, vocab, origin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbn::drg::{EdgeKind::*, MEMBER_LABEL};

    fn parse(s: &str) -> Result<Drg, SbnError> {
        parse_document(s, &Vocabulary::default(), "t")
    }

    fn edge_set(d: &Drg) -> Vec<(String, String, EdgeKind, String)> {
        let mut v: Vec<_> = d
            .edges
            .iter()
            .map(|e| {
                let t = match &e.target {
                    EdgeTarget::Node(n) => n.to_string(),
                    EdgeTarget::Constant(c) => c.clone(),
                    EdgeTarget::Literal(l) => format!("{l:?}"),
                };
                (e.source.to_string(), e.label.clone(), e.kind, t)
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn minimal_document() {
        let d = parse("time.n.08 EQU now").unwrap();
        assert_eq!(d.concepts.len(), 1);
        assert_eq!(d.box_count, 1);
        assert_eq!(d.edges_of_kind(Member).count(), 1);
        let ops: Vec<_> = d.edges_of_kind(Operator).collect();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].target, EdgeTarget::Constant("now".into()));
    }

    #[test]
    fn nested_negation_structure() {
        // hand-applied grammar: three boxes, four concepts
        let d = parse(
            "music.n.01 NEGATION <1 person.n.01 NEGATION <1 lure.v.01 Agent -2 Patient -1 Time +1 time.n.08 TPR now",
        )
        .unwrap();
        assert_eq!(d.concepts.len(), 4);
        assert_eq!(d.box_count, 3);
        let s = |a: &str, b: &str, k, c: &str| (a.to_string(), b.to_string(), k, c.to_string());
        let mut expected = vec![
            s("b0", "NEGATION", Discourse, "b1"),
            s("b1", "NEGATION", Discourse, "b2"),
            s("b0", MEMBER_LABEL, Member, "c0"),
            s("b1", MEMBER_LABEL, Member, "c1"),
            s("b2", MEMBER_LABEL, Member, "c2"),
            s("b2", MEMBER_LABEL, Member, "c3"),
            s("c2", "Agent", Role, "c0"),
            s("c2", "Patient", Role, "c1"),
            s("c2", "Time", Role, "c3"),
            s("c3", "TPR", Operator, "now"),
        ];
        expected.sort();
        assert_eq!(edge_set(&d), expected);
    }

    #[test]
    fn names_constants_and_numerals() {
        let d = parse("group.n.01 Name ? time.n.08 YearOfCentury 1822 TIN -1 male.n.02 Name \"尤努斯\"").unwrap();
        let kinds: Vec<_> = d.edges.iter().filter(|e| e.kind != Member).map(|e| (e.kind, e.target.clone())).collect();
        assert_eq!(
            kinds,
            vec![
                (Name, EdgeTarget::Constant("?".into())),
                (Role, EdgeTarget::Constant("1822".into())),
                (Operator, EdgeTarget::Node(NodeId::Concept(0))),
                (Name, EdgeTarget::Literal("尤努斯".into())),
            ]
        );
    }

    #[test]
    fn leading_discourse_relation_opens_root_box() {
        let d = parse("NEGATION <1 time.n.08 EQU now").unwrap();
        assert_eq!(d.box_count, 2);
        assert_eq!(d.box_of(0), Some(1));
    }

    #[test]
    fn errors() {
        assert!(
            matches!(parse("male.n.02 Name \"尤努斯\" Agent +9"), Err(SbnError::DanglingNodeRef { token, .. }) if token == "+9")
        );
        assert!(matches!(parse("male.n.02 Agent -1"), Err(SbnError::DanglingNodeRef { .. })));
        assert!(matches!(parse("male.n.02 Agent +0 x.n.01"), Err(SbnError::DanglingNodeRef { .. })));
        assert!(matches!(parse("a.n.01 NEGATION <2 b.n.01"), Err(SbnError::DanglingBoxRef { .. })));
        assert!(matches!(parse("a.n.01 Agent"), Err(SbnError::OddEdgeTokens { .. })));
        assert!(matches!(parse("a.n.01 Agent b.n.01"), Err(SbnError::OddEdgeTokens { .. })));
        assert!(matches!(parse(""), Err(SbnError::EmptyDocument)));
        assert!(matches!(parse("% only a comment"), Err(SbnError::EmptyDocument)));
        assert!(matches!(parse("a.n.01 now"), Err(SbnError::UnknownToken { .. })));
        assert!(matches!(parse("Agent -1 a.n.01"), Err(SbnError::EdgeWithoutConcept { .. })));
        assert!(matches!(parse("a.n.01 <1"), Err(SbnError::UnknownToken { .. })));
    }

    #[test]
    fn deterministic() {
        let s = "person.n.01 EQU speaker NEGATION <1 time.n.08 EQU now be.v.03 Theme -2 Time -1 Source +1 country.n.02 Name \"\"";
        assert_eq!(parse(s).unwrap(), parse(s).unwrap());
    }
}
