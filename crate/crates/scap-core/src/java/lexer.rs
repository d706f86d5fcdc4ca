//! Lossless Java lexer.
//!
//! Tokens partition the source byte-for-byte: concatenating every token text
//! in order reproduces the input exactly. The lexer only needs to be precise
//! about the boundaries that matter downstream (comments, string and char
//! literals, and identifier words), so operators and punctuation are emitted
//! one byte at a time. Bytes >= 0x80 pass through opaquely as identifier
//! characters, which keeps UTF-8 identifiers intact without decoding.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Identifier,
    Keyword,
    PrimitiveType,
    StringLiteral,
    CharLiteral,
    NumberLiteral,
    LineComment,
    BlockComment,
    OperatorOrPunct,
    Whitespace,
}

impl TokenKind {
    pub fn is_comment(self) -> bool {
        matches!(self, TokenKind::LineComment | TokenKind::BlockComment)
    }
}

/// One token, borrowing its text from the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a [u8],
    /// Byte position of the token's first byte in the source.
    pub offset: usize,
}

/// The eight Java primitive type names.
pub const PRIMITIVE_TYPES: [&str; 8] = [
    "boolean", "byte", "char", "short", "int", "long", "float", "double",
];

/// Java keywords and reserved literal words, excluding the primitive types
/// (those get their own token kind).
pub const KEYWORDS: [&str; 45] = [
    "abstract",
    "assert",
    "break",
    "case",
    "catch",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "else",
    "enum",
    "extends",
    "false",
    "final",
    "finally",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "interface",
    "native",
    "new",
    "null",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "true",
    "try",
    "void",
    "volatile",
    "while",
];

pub fn is_primitive_type(word: &[u8]) -> bool {
    PRIMITIVE_TYPES.iter().any(|p| p.as_bytes() == word)
}

pub fn is_keyword(word: &[u8]) -> bool {
    KEYWORDS.iter().any(|k| k.as_bytes() == word)
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_' || b == b'$' || b >= 0x80
}

fn is_ident_continue(b: u8) -> bool {
    is_ident_start(b) || b.is_ascii_digit()
}

fn is_java_whitespace(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\r' | b'\n' | 0x0C)
}

/// Tokenizes Java source into a lossless token stream.
///
/// Line comments run to (exclusive of) the next newline. Block comments do
/// not nest. String and char literals honor backslash escapes, so quote and
/// comment markers inside them never open or close anything. Unterminated
/// block comments and literals are errors reported at the opening byte.
pub fn lex(source: &[u8]) -> Result<Vec<Token<'_>>> {
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < source.len() {
        let start = pos;
        let b = source[pos];
        let kind = if b == b'/' && source.get(pos + 1) == Some(&b'/') {
            pos += 2;
            // runs to the line terminator (LF or CR), exclusive
            while pos < source.len() && source[pos] != b'\n' && source[pos] != b'\r' {
                pos += 1;
            }
            TokenKind::LineComment
        } else if b == b'/' && source.get(pos + 1) == Some(&b'*') {
            pos += 2;
            loop {
                if pos + 1 >= source.len() {
                    return Err(Error::Lex {
                        offset: start,
                        message: "unterminated block comment".into(),
                    });
                }
                if source[pos] == b'*' && source[pos + 1] == b'/' {
                    pos += 2;
                    break;
                }
                pos += 1;
            }
            TokenKind::BlockComment
        } else if b == b'"' || b == b'\'' {
            pos += 1;
            loop {
                match source.get(pos) {
                    None => {
                        return Err(Error::Lex {
                            offset: start,
                            message: format!(
                                "unterminated {} literal",
                                if b == b'"' { "string" } else { "char" }
                            ),
                        });
                    }
                    Some(&c) if c == b => {
                        pos += 1;
                        break;
                    }
                    Some(b'\\') => pos += 2, // escape shields the next byte
                    Some(_) => pos += 1,
                }
            }
            if b == b'"' {
                TokenKind::StringLiteral
            } else {
                TokenKind::CharLiteral
            }
        } else if is_java_whitespace(b) {
            while pos < source.len() && is_java_whitespace(source[pos]) {
                pos += 1;
            }
            TokenKind::Whitespace
        } else if b.is_ascii_digit()
            || (b == b'.' && source.get(pos + 1).is_some_and(|c| c.is_ascii_digit()))
        {
            pos = scan_number(source, pos);
            TokenKind::NumberLiteral
        } else if is_ident_start(b) {
            while pos < source.len() && is_ident_continue(source[pos]) {
                pos += 1;
            }
            let word = &source[start..pos];
            if is_primitive_type(word) {
                TokenKind::PrimitiveType
            } else if is_keyword(word) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            }
        } else {
            pos += 1;
            TokenKind::OperatorOrPunct
        };
        tokens.push(Token {
            kind,
            text: &source[start..pos],
            offset: start,
        });
    }
    Ok(tokens)
}

/// Consumes a numeric literal starting at `pos`. Handles hex/binary/octal
/// prefixes, underscores, suffixes, decimal exponents (`1e+5`) and hex float
/// exponents (`0x1.8p-3`). A `.` is only part of the literal when a digit
/// follows, so `1.equals` stops after `1`.
fn scan_number(source: &[u8], mut pos: usize) -> usize {
    let start = pos;
    let is_hex = source[pos] == b'0' && matches!(source.get(pos + 1), Some(b'x') | Some(b'X'));
    while pos < source.len() {
        let b = source[pos];
        if b.is_ascii_alphanumeric()
            || b == b'_'
            || (b == b'.' && source.get(pos + 1).is_some_and(|c| c.is_ascii_digit()))
        {
            pos += 1;
        } else if (b == b'+' || b == b'-') && pos > start {
            let prev = source[pos - 1];
            let exp = if is_hex {
                prev == b'p' || prev == b'P'
            } else {
                prev == b'e' || prev == b'E'
            };
            if exp && source.get(pos + 1).is_some_and(|c| c.is_ascii_digit()) {
                pos += 1;
            } else {
                break;
            }
        } else {
            break;
        }
    }
    pos
}

/// Deletes every comment token and re-joins the rest byte-for-byte.
///
/// Idempotent: a `/` punct immediately followed by a comment would itself
/// have lexed as a line comment, so removal can never synthesize a new `//`
/// or `/*` marker.
pub fn strip_comments(source: &[u8]) -> Result<Vec<u8>> {
    let tokens = lex(source)?;
    let mut out = Vec::with_capacity(source.len());
    for token in &tokens {
        if !token.kind.is_comment() {
            out.extend_from_slice(token.text);
        }
    }
    Ok(out)
}
