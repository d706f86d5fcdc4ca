pub mod identifiers;
pub mod lexer;
pub use identifiers::{classify_identifiers, IdentifierCategory, IdentifierTable};
pub use lexer::{lex, strip_comments, Token, TokenKind};
