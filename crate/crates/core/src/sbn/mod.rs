//! Simplified Box Notation: tokens, the graph model, parsing, validation and
//! serialization.

mod corpus;
mod drg;
mod parse;
mod serialize;
mod synset;
mod token;
mod validate;
mod vocab;

pub use corpus::{read_corpus, split_corpus, write_corpus, Document};
pub use drg::{Concept, Drg, Edge, EdgeKind, EdgeTarget, NodeId, MEMBER_LABEL, NAME_LABEL, NEGATION_LABEL};
pub use parse::{parse_document, parse_sbn};
pub use serialize::{normalize_sbn, serialize_sbn};
pub use synset::{InvalidSynset, Pos, SynsetId};
pub use token::{classify_token, tokenize_sbn, Position, Slot, Token, TokenClass};
pub use validate::{check_document, validate, validate_with, Issue, IssueCode, Location, WellFormedReport};
pub use vocab::{Vocabulary, DEFAULT_DISCOURSE, DEFAULT_OPERATORS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SbnError {
    #[error("{pos}: unterminated string literal")]
    UnterminatedLiteral { pos: Position },
    #[error("{pos}: unexpected token `{token}`")]
    UnknownToken { token: String, pos: Position },
    #[error("{pos}: node reference `{token}` points outside the document")]
    DanglingNodeRef { token: String, pos: Position },
    #[error("{pos}: box reference `{token}` points before the first box")]
    DanglingBoxRef { token: String, pos: Position },
    #[error("{pos}: edge label `{label}` has no target")]
    OddEdgeTokens { label: String, pos: Position },
    #[error("{pos}: edge label `{token}` appears before any concept")]
    EdgeWithoutConcept { token: String, pos: Position },
    #[error("empty document")]
    EmptyDocument,
    #[error("cannot serialize: {reason}")]
    NotSerializable { reason: String },
}
