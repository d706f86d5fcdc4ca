//! Classification of user-declared Java identifiers.
//!
//! Names declared in a file fall into three categories: `Simple` (variables
//! of a primitive type or arrays of one), `Class` (reference-typed variables
//! plus names introduced by class/interface/enum declarations), and `Method`
//! (names of declared methods). Names that occur without a local declaration
//! (`String`, `println`, anything pulled from the API) are never recorded.
//!
//! Detection is a pattern-driven scan over the token stream, not a full Java
//! parse: modifiers and annotations are skipped, a declaration is a type
//! followed by a name in a position where a declaration can start, and a
//! method is a name followed by a parameter list at type-body level.
//! Bodies of anonymous classes are skipped wholesale; members that do not
//! match any pattern are skipped with a warning record. The scan depends
//! only on token shapes, never on the spelling of non-keyword names, so
//! renaming identifiers does not change how declarations are recognized.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Result;
use crate::java::lexer::{lex, Token, TokenKind};

/// Raw bytes of an identifier token. Kept as bytes so non-ASCII identifiers
/// survive untouched.
pub type Name = Vec<u8>;

pub fn name_display(name: &[u8]) -> String {
    String::from_utf8_lossy(name).into_owned()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdentifierCategory {
    Simple,
    Class,
    Method,
}

impl IdentifierCategory {
    pub const ALL: [IdentifierCategory; 3] = [
        IdentifierCategory::Simple,
        IdentifierCategory::Class,
        IdentifierCategory::Method,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentifierCategory::Simple => "Simple",
            IdentifierCategory::Class => "Class",
            IdentifierCategory::Method => "Method",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "simple" => Some(IdentifierCategory::Simple),
            "class" => Some(IdentifierCategory::Class),
            "method" => Some(IdentifierCategory::Method),
            _ => None,
        }
    }
}

impl fmt::Display for IdentifierCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentifierInfo {
    pub categories: BTreeSet<IdentifierCategory>,
    /// Byte offsets of the name token at each recognized declaration site.
    pub decl_offsets: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Warning {
    pub offset: usize,
    pub message: String,
}

/// Per-file identifier classification result.
#[derive(Debug, Clone, Default)]
pub struct IdentifierTable {
    /// Declared names only, with the union of every category they were
    /// declared under in this file.
    pub names: BTreeMap<Name, IdentifierInfo>,
    /// Every identifier token text occurring in the file, declared or not.
    /// Used for replacement-collision avoidance.
    pub occurring: BTreeSet<Name>,
    pub warnings: Vec<Warning>,
}

impl IdentifierTable {
    pub fn categories_of(&self, name: &[u8]) -> Option<&BTreeSet<IdentifierCategory>> {
        self.names.get(name).map(|info| &info.categories)
    }

    /// Export lines: `<file>\t<name>\t<categories joined by '|'>\t<decl offsets joined by ','>`,
    /// one per declared name in ascending name order.
    pub fn export(&self, file_id: &str) -> String {
        let mut out = String::new();
        for (name, info) in &self.names {
            let cats: Vec<&str> = info.categories.iter().map(|c| c.as_str()).collect();
            let offsets: Vec<String> = info.decl_offsets.iter().map(|o| o.to_string()).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                file_id,
                name_display(name),
                cats.join("|"),
                offsets.join(",")
            ));
        }
        out
    }
}

/// Classifies every declared identifier in `source`. Comments are ignored;
/// lex errors propagate.
pub fn classify_identifiers(source: &[u8]) -> Result<IdentifierTable> {
    let tokens = lex(source)?;
    let significant: Vec<Token<'_>> = tokens
        .iter()
        .copied()
        .filter(|t| !t.kind.is_comment() && t.kind != TokenKind::Whitespace)
        .collect();

    let mut scanner = Scanner {
        toks: significant,
        table: IdentifierTable::default(),
        stack: vec![Ctx::TypeBody { class_name: None }],
    };
    for tok in &scanner.toks {
        if tok.kind == TokenKind::Identifier {
            scanner.table.occurring.insert(tok.text.to_vec());
        }
    }
    scanner.run();
    Ok(scanner.table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Ctx {
    /// Class/interface body. The file top level uses the same context so
    /// bare declaration fragments classify without an enclosing class.
    TypeBody { class_name: Option<Name> },
    /// Enum body before the first `;`: a constant list, not members.
    EnumConstants { class_name: Option<Name> },
    /// Method body, initializer block, or any nested statement block.
    Block,
}

struct Scanner<'a> {
    toks: Vec<Token<'a>>,
    table: IdentifierTable,
    stack: Vec<Ctx>,
}

const MODIFIERS: [&str; 13] = [
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "const",
];

impl<'a> Scanner<'a> {
    fn text(&self, i: usize) -> &[u8] {
        self.toks.get(i).map_or(b"", |t| t.text)
    }

    fn kind(&self, i: usize) -> Option<TokenKind> {
        self.toks.get(i).map(|t| t.kind)
    }

    fn is_punct(&self, i: usize, b: u8) -> bool {
        self.kind(i) == Some(TokenKind::OperatorOrPunct) && self.text(i) == [b]
    }

    fn is_ident(&self, i: usize) -> bool {
        self.kind(i) == Some(TokenKind::Identifier)
    }

    fn is_kw(&self, i: usize, word: &str) -> bool {
        self.kind(i) == Some(TokenKind::Keyword) && self.text(i) == word.as_bytes()
    }

    fn record(&mut self, i: usize, category: IdentifierCategory) {
        let tok = self.toks[i];
        let info = self.table.names.entry(tok.text.to_vec()).or_default();
        info.categories.insert(category);
        if !info.decl_offsets.contains(&tok.offset) {
            info.decl_offsets.push(tok.offset);
        }
    }

    fn warn(&mut self, i: usize, message: impl Into<String>) {
        let offset = self.toks.get(i).map_or(0, |t| t.offset);
        self.table.warnings.push(Warning {
            offset,
            message: message.into(),
        });
    }

    fn run(&mut self) {
        let mut i = 0;
        while i < self.toks.len() {
            let ctx = self.stack.last().expect("non-empty stack").clone();
            match ctx {
                Ctx::TypeBody { ref class_name } => {
                    if self.is_punct(i, b'}') {
                        if self.stack.len() > 1 {
                            self.stack.pop();
                        }
                        i += 1;
                    } else if let Some(next) = self.parse_member(i, class_name.as_deref()) {
                        i = next;
                    } else {
                        self.warn(i, "unrecognized member; skipped to next boundary");
                        i = self.sync_member(i);
                    }
                }
                Ctx::EnumConstants { class_name } => {
                    i = self.parse_enum_constants(i, class_name);
                }
                Ctx::Block => {
                    i = self.scan_statement_token(i);
                }
            }
        }
    }

    /// One member of a type body: nested type, initializer block,
    /// constructor, method, field, or stray semicolon.
    fn parse_member(&mut self, start: usize, class_name: Option<&[u8]>) -> Option<usize> {
        let mut i = start;
        i = self.skip_modifiers_and_annotations(i);

        if self.is_punct(i, b';') {
            return Some(i + 1);
        }
        // package and import statements declare nothing
        if self.is_kw(i, "package") || self.is_kw(i, "import") {
            let mut j = i + 1;
            while j < self.toks.len() && !self.is_punct(j, b';') {
                j += 1;
            }
            return Some(j + 1);
        }
        // static / instance initializer
        if self.is_punct(i, b'{') {
            self.stack.push(Ctx::Block);
            return Some(i + 1);
        }
        if self.is_kw(i, "class") || self.is_kw(i, "interface") || self.is_kw(i, "enum") {
            return self.parse_type_declaration(i);
        }
        // annotation type declaration: @interface Name { ... }
        if self.is_punct(i, b'@') && self.is_kw(i + 1, "interface") {
            return self.parse_type_declaration(i + 1);
        }
        // generic method type parameters: <T, U extends V>
        if self.is_punct(i, b'<') {
            i = self.scan_generic_args(i)?;
        }
        // constructor: Name ( ... ) at type-body level, Name restating the
        // enclosing class. Treated as a Class-category declaration site.
        if let Some(class_name) = class_name {
            if self.is_ident(i) && self.text(i) == class_name && self.is_punct(i + 1, b'(') {
                self.record(i, IdentifierCategory::Class);
                let after = self.parse_params(i + 1)?;
                return self.finish_callable(after);
            }
        }
        let (primitive, after_type) = self.parse_type(i)?;
        if !self.is_ident(after_type) {
            return None;
        }
        if self.is_punct(after_type + 1, b'(') {
            self.record(after_type, IdentifierCategory::Method);
            let after = self.parse_params(after_type + 1)?;
            return self.finish_callable(after);
        }
        let category = if primitive {
            IdentifierCategory::Simple
        } else {
            IdentifierCategory::Class
        };
        self.parse_declarators(after_type, category)
    }

    /// After a parameter list: optional throws clause, then a body or `;`.
    fn finish_callable(&mut self, mut i: usize) -> Option<usize> {
        if self.is_kw(i, "throws") {
            i += 1;
            loop {
                let (_, after) = self.parse_type(i)?;
                i = after;
                if self.is_punct(i, b',') {
                    i += 1;
                } else {
                    break;
                }
            }
        }
        if self.is_punct(i, b'{') {
            self.stack.push(Ctx::Block);
            Some(i + 1)
        } else if self.is_punct(i, b';') {
            Some(i + 1)
        } else {
            None
        }
    }

    /// `class|interface|enum Name ... {`: records the name and enters the
    /// body. Guarded by the caller checking an identifier follows, so `.class`
    /// literals never land here.
    fn parse_type_declaration(&mut self, start: usize) -> Option<usize> {
        let is_enum = self.is_kw(start, "enum");
        let name_idx = start + 1;
        if !self.is_ident(name_idx) {
            return None;
        }
        self.record(name_idx, IdentifierCategory::Class);
        let class_name = Some(self.text(name_idx).to_vec());
        let mut i = name_idx + 1;
        // skip type parameters, extends/implements clauses up to the body
        while i < self.toks.len() {
            if self.is_punct(i, b'{') {
                self.stack.push(if is_enum {
                    Ctx::EnumConstants { class_name }
                } else {
                    Ctx::TypeBody { class_name }
                });
                return Some(i + 1);
            }
            if self.is_punct(i, b';') {
                return Some(i + 1);
            }
            i += 1;
        }
        None
    }

    /// Enum constant list `NAME [(args)] [{body}] , ... ;`. Constants are
    /// Class-category names; a `;` switches to ordinary member parsing.
    fn parse_enum_constants(&mut self, start: usize, class_name: Option<Name>) -> usize {
        let mut i = start;
        loop {
            i = self.skip_modifiers_and_annotations(i);
            if i >= self.toks.len() {
                return i;
            }
            if self.is_punct(i, b'}') {
                self.stack.pop();
                return i + 1;
            }
            if self.is_punct(i, b';') {
                *self.stack.last_mut().unwrap() = Ctx::TypeBody { class_name };
                return i + 1;
            }
            if self.is_punct(i, b',') {
                i += 1;
                continue;
            }
            if self.is_ident(i) {
                self.record(i, IdentifierCategory::Class);
                i += 1;
                if self.is_punct(i, b'(') {
                    i = self.skip_balanced(i);
                }
                if self.is_punct(i, b'{') {
                    i = self.skip_balanced(i);
                }
                continue;
            }
            self.warn(i, "unrecognized token in enum constant list");
            i += 1;
        }
    }

    fn skip_modifiers_and_annotations(&mut self, mut i: usize) -> usize {
        loop {
            if self.kind(i) == Some(TokenKind::Keyword)
                && MODIFIERS.iter().any(|m| m.as_bytes() == self.text(i))
            {
                i += 1;
            } else if self.is_punct(i, b'@') && self.is_ident(i + 1) {
                i += 2;
                while self.is_punct(i, b'.') && self.is_ident(i + 1) {
                    i += 2;
                }
                if self.is_punct(i, b'(') {
                    i = self.skip_balanced(i);
                }
            } else {
                return i;
            }
        }
    }

    /// A type: primitive, `void`, or a dotted identifier chain with optional
    /// generic arguments, each followed by any number of `[]` pairs.
    /// Returns (is_primitive, index after the type).
    fn parse_type(&self, start: usize) -> Option<(bool, usize)> {
        let mut i = start;
        let primitive = if self.kind(i) == Some(TokenKind::PrimitiveType) {
            i += 1;
            true
        } else if self.is_kw(i, "void") {
            i += 1;
            false
        } else if self.is_ident(i) {
            i += 1;
            while self.is_punct(i, b'.') && self.is_ident(i + 1) {
                i += 2;
            }
            if self.is_punct(i, b'<') {
                i = self.scan_generic_args(i)?;
            }
            false
        } else {
            return None;
        };
        while self.is_punct(i, b'[') && self.is_punct(i + 1, b']') {
            i += 2;
        }
        Some((primitive, i))
    }

    /// Balanced `<...>` containing only type-shaped tokens. Returns the index
    /// after the closing `>`, or None when the contents look like an
    /// expression (so `a < b` is never mistaken for generics).
    fn scan_generic_args(&self, start: usize) -> Option<usize> {
        let mut depth = 0usize;
        let mut i = start;
        while i < self.toks.len() {
            let t = self.toks[i];
            match t.kind {
                TokenKind::OperatorOrPunct => match t.text[0] {
                    b'<' => depth += 1,
                    b'>' => {
                        depth -= 1;
                        if depth == 0 {
                            return Some(i + 1);
                        }
                    }
                    b'.' | b',' | b'?' | b'[' | b']' | b'&' | b'@' => {}
                    _ => return None,
                },
                TokenKind::Identifier | TokenKind::PrimitiveType => {}
                TokenKind::Keyword if t.text == b"extends" || t.text == b"super" => {}
                _ => return None,
            }
            i += 1;
        }
        None
    }

    /// Parameter list of a method/constructor declaration, starting at `(`.
    /// Records each parameter name; returns the index after `)`.
    fn parse_params(&mut self, start: usize) -> Option<usize> {
        let mut i = start + 1;
        loop {
            if self.is_punct(i, b')') {
                return Some(i + 1);
            }
            i = self.skip_modifiers_and_annotations(i);
            if let Some((primitive, after_type)) = self.parse_type(i) {
                let mut j = after_type;
                // varargs: Type... name
                while self.is_punct(j, b'.') {
                    j += 1;
                }
                if self.is_ident(j) {
                    let category = if primitive {
                        IdentifierCategory::Simple
                    } else {
                        IdentifierCategory::Class
                    };
                    self.record(j, category);
                    j += 1;
                    while self.is_punct(j, b'[') && self.is_punct(j + 1, b']') {
                        j += 2;
                    }
                    if self.is_punct(j, b',') {
                        i = j + 1;
                        continue;
                    }
                    if self.is_punct(j, b')') {
                        return Some(j + 1);
                    }
                }
            }
            // unrecognized parameter (receiver param, union type, ...):
            // skip to the next comma or the closing paren
            let mut depth = 0usize;
            while i < self.toks.len() {
                if self.kind(i) == Some(TokenKind::OperatorOrPunct) {
                    match self.text(i)[0] {
                        b'(' | b'[' | b'{' | b'<' => depth += 1,
                        b')' if depth == 0 => break,
                        b')' | b']' | b'}' | b'>' => depth = depth.saturating_sub(1),
                        b',' if depth == 0 => break,
                        _ => {}
                    }
                }
                i += 1;
            }
            if self.is_punct(i, b',') {
                i += 1;
                continue;
            }
            if self.is_punct(i, b')') {
                return Some(i + 1);
            }
            return None;
        }
    }

    /// Declarator list after a parsed type: `name [[]...] [= init] , ... ;`.
    /// Records every declared name; returns the index after the closing `;`.
    fn parse_declarators(&mut self, start: usize, category: IdentifierCategory) -> Option<usize> {
        let mut i = start;
        loop {
            if !self.is_ident(i) {
                return None;
            }
            self.record(i, category);
            i += 1;
            while self.is_punct(i, b'[') && self.is_punct(i + 1, b']') {
                i += 2;
            }
            if self.is_punct(i, b'=') {
                i = self.skip_initializer(i + 1);
            }
            if self.is_punct(i, b',') {
                i += 1;
                continue;
            }
            if self.is_punct(i, b';') {
                return Some(i + 1);
            }
            // try-with-resources declarations end at the resource-list paren
            if self.is_punct(i, b')') {
                return Some(i);
            }
            return None;
        }
    }

    /// Skips an initializer expression up to the `,` that starts the next
    /// declarator or the terminating `;` / `)`, tracking () [] {} nesting.
    /// A `,` at depth 0 only ends the initializer when what follows is
    /// shaped like another declarator (`name =`, `name ,`, `name ;`,
    /// `name [`), so the commas inside `new HashMap<K, V>()` stay inside
    /// the initializer.
    fn skip_initializer(&self, start: usize) -> usize {
        let mut depth = 0usize;
        let mut i = start;
        while i < self.toks.len() {
            if self.kind(i) == Some(TokenKind::OperatorOrPunct) {
                match self.text(i)[0] {
                    b'(' | b'[' | b'{' => depth += 1,
                    b')' | b']' | b'}' => {
                        if depth == 0 {
                            return i; // end of enclosing list (e.g. resources)
                        }
                        depth -= 1;
                    }
                    b';' if depth == 0 => return i,
                    b',' if depth == 0 => {
                        let declarator_follows = self.is_ident(i + 1)
                            && (self.is_punct(i + 2, b'=')
                                || self.is_punct(i + 2, b',')
                                || self.is_punct(i + 2, b';')
                                || (self.is_punct(i + 2, b'[') && self.is_punct(i + 3, b']')));
                        if declarator_follows {
                            return i;
                        }
                    }
                    _ => {}
                }
            }
            i += 1;
        }
        i
    }

    /// Skips a balanced bracket group starting at `(`, `[` or `{`.
    fn skip_balanced(&self, start: usize) -> usize {
        let open = self.text(start)[0];
        let close = match open {
            b'(' => b')',
            b'[' => b']',
            b'{' => b'}',
            _ => return start + 1,
        };
        let mut depth = 0usize;
        let mut i = start;
        while i < self.toks.len() {
            if self.kind(i) == Some(TokenKind::OperatorOrPunct) {
                let b = self.text(i)[0];
                if b == open {
                    depth += 1;
                } else if b == close {
                    depth -= 1;
                    if depth == 0 {
                        return i + 1;
                    }
                }
            }
            i += 1;
        }
        i
    }

    /// Member-level error recovery: skip to just after the next `;`, past a
    /// balanced `{}` body, or stop before the enclosing `}`.
    fn sync_member(&mut self, start: usize) -> usize {
        let mut i = start;
        while i < self.toks.len() {
            if self.is_punct(i, b';') {
                return i + 1;
            }
            if self.is_punct(i, b'{') {
                return self.skip_balanced(i);
            }
            if self.is_punct(i, b'}') {
                return i;
            }
            i += 1;
        }
        i
    }

    /// One step of statement-level scanning inside a block. Local variable,
    /// for-init, enhanced-for, catch and resource declarations are
    /// recognized; everything else advances one token.
    fn scan_statement_token(&mut self, i: usize) -> usize {
        if self.is_punct(i, b'}') {
            if self.stack.len() > 1 {
                self.stack.pop();
            }
            return i + 1;
        }
        if self.is_punct(i, b'{') {
            self.stack.push(Ctx::Block);
            return i + 1;
        }
        if self.is_kw(i, "class") || self.is_kw(i, "interface") || self.is_kw(i, "enum") {
            // local class declaration (also guards `.class` literals, where
            // no identifier follows)
            if self.is_ident(i + 1) {
                if let Some(next) = self.parse_type_declaration(i) {
                    return next;
                }
            }
            return i + 1;
        }
        if (self.is_kw(i, "for") || self.is_kw(i, "try") || self.is_kw(i, "catch"))
            && self.is_punct(i + 1, b'(')
        {
            if let Some(next) = self.parse_paren_declaration(i + 2) {
                return next;
            }
            return i + 2;
        }
        if self.is_kw(i, "new") {
            return i + 1;
        }
        // plain local declaration: Type name ...
        let start = self.skip_modifiers_and_annotations(i);
        if let Some((primitive, after_type)) = self.parse_type(start) {
            if self.is_ident(after_type) && self.declarator_shape(after_type + 1) {
                let category = if primitive {
                    IdentifierCategory::Simple
                } else {
                    IdentifierCategory::Class
                };
                if let Some(next) = self.parse_declarators(after_type, category) {
                    return next;
                }
            }
        }
        i + 1
    }

    /// First declaration inside `for (`, `try (` or `catch (` parens.
    /// Handles `Type name :` (enhanced for), `Type name` (catch), and
    /// `Type name = ...` (for-init, resources). Returns the index to resume
    /// normal scanning from, which re-enters declarator parsing for
    /// `int i = 0, j = 1;` via the terminating `;` logic.
    fn parse_paren_declaration(&mut self, start: usize) -> Option<usize> {
        let i = self.skip_modifiers_and_annotations(start);
        let (primitive, after_type) = self.parse_type(i)?;
        if !self.is_ident(after_type) {
            return None;
        }
        let category = if primitive {
            IdentifierCategory::Simple
        } else {
            IdentifierCategory::Class
        };
        // enhanced for / catch parameter: single name, no initializer
        if self.is_punct(after_type + 1, b':') || self.is_punct(after_type + 1, b')') {
            self.record(after_type, category);
            return Some(after_type + 1);
        }
        if self.declarator_shape(after_type + 1) {
            return self.parse_declarators(after_type, category);
        }
        None
    }

    /// Whether the token at `i` can follow a declared name: `=`, `,`, `;`,
    /// or an array dimension `[]`.
    fn declarator_shape(&self, i: usize) -> bool {
        self.is_punct(i, b'=')
            || self.is_punct(i, b',')
            || self.is_punct(i, b';')
            || (self.is_punct(i, b'[') && self.is_punct(i + 1, b']'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(source: &str) -> IdentifierTable {
        classify_identifiers(source.as_bytes()).unwrap()
    }

    fn cats(table: &IdentifierTable, name: &str) -> Vec<IdentifierCategory> {
        table
            .categories_of(name.as_bytes())
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default()
    }

    use IdentifierCategory::*;

    #[test]
    fn primitive_declaration_is_simple() {
        let t = classify("int year;");
        assert_eq!(cats(&t, "year"), vec![Simple]);
    }

    #[test]
    fn reference_declaration_is_class() {
        let t = classify("String name;");
        assert_eq!(cats(&t, "name"), vec![Class]);
        assert!(
            t.categories_of(b"String").is_none(),
            "API type not declared here"
        );
    }

    #[test]
    fn method_and_field_from_paper_example() {
        let t = classify("int year; public int getYear() { return year; }");
        assert_eq!(cats(&t, "getYear"), vec![Method]);
        assert_eq!(cats(&t, "year"), vec![Simple]);
    }

    #[test]
    fn class_declaration_and_members() {
        let t = classify(
            r#"
            public class Owner {
                private String name;
                private int age;
                public Owner(String name) { this.name = name; }
                public String getName() { return name; }
                public void setAge(int a) { age = a; }
            }
            "#,
        );
        assert_eq!(cats(&t, "Owner"), vec![Class]);
        assert_eq!(cats(&t, "name"), vec![Class]);
        assert_eq!(cats(&t, "age"), vec![Simple]);
        assert_eq!(cats(&t, "getName"), vec![Method]);
        assert_eq!(cats(&t, "setAge"), vec![Method]);
        assert_eq!(cats(&t, "a"), vec![Simple]);
        assert!(t.categories_of(b"this").is_none());
    }

    #[test]
    fn api_names_are_excluded() {
        let t = classify(
            r#"
            class A {
                void run() {
                    System.out.println("hi");
                    String s = Integer.toString(42);
                }
            }
            "#,
        );
        for api in ["System", "out", "println", "Integer", "toString", "String"] {
            assert!(
                t.categories_of(api.as_bytes()).is_none(),
                "{api} has no local declaration"
            );
        }
        assert_eq!(cats(&t, "s"), vec![Class]);
        assert!(t.occurring.contains(b"println".as_ref()), "still occurs");
    }

    #[test]
    fn arrays_keep_their_base_category() {
        let t = classify("int[] counts; long totals[]; String[] labels;");
        assert_eq!(cats(&t, "counts"), vec![Simple]);
        assert_eq!(cats(&t, "totals"), vec![Simple]);
        assert_eq!(cats(&t, "labels"), vec![Class]);
    }

    #[test]
    fn multi_declarators_and_initializers() {
        let t = classify("int a = f(x, y), b, c = g(), d[] = {1, 2};");
        for name in ["a", "b", "c", "d"] {
            assert_eq!(cats(&t, name), vec![Simple], "{name}");
        }
        assert!(t.categories_of(b"x").is_none());
        assert!(t.categories_of(b"f").is_none());
    }

    #[test]
    fn generic_initializer_commas_do_not_split_declarators() {
        let t = classify(
            "class A { private Map<String, Integer> cache = new HashMap<String, Integer>(); }",
        );
        assert_eq!(cats(&t, "cache"), vec![Class]);
        assert!(t.categories_of(b"Integer").is_none());
        assert!(t.categories_of(b"HashMap").is_none());
    }

    #[test]
    fn loop_and_catch_declarations() {
        let t = classify(
            r#"
            class A {
                void run(String[] args) {
                    for (int i = 0, j = 10; i < j; i++) { }
                    for (String arg : args) { }
                    try (Reader r = open()) { }
                    catchit();
                    try { } catch (Exception ex) { }
                }
            }
            "#,
        );
        assert_eq!(cats(&t, "i"), vec![Simple]);
        assert_eq!(cats(&t, "j"), vec![Simple]);
        assert_eq!(cats(&t, "arg"), vec![Class]);
        assert_eq!(cats(&t, "r"), vec![Class]);
        assert_eq!(cats(&t, "ex"), vec![Class]);
        assert_eq!(cats(&t, "args"), vec![Class]);
    }

    #[test]
    fn comparisons_are_not_declarations() {
        let t = classify(
            r#"
            class A {
                void run() {
                    if (a < b && c > d) { act(); }
                    while (x < y) { x++; }
                }
            }
            "#,
        );
        for name in ["a", "b", "c", "d", "x", "y", "act"] {
            assert!(t.categories_of(name.as_bytes()).is_none(), "{name}");
        }
    }

    #[test]
    fn interface_and_enum_declarations() {
        let t = classify(
            r#"
            interface Drivable { void drive(); int gears(); }
            enum Color { RED, GREEN(2), BLUE; private int code; Color() { } }
            "#,
        );
        assert_eq!(cats(&t, "Drivable"), vec![Class]);
        assert_eq!(cats(&t, "drive"), vec![Method]);
        assert_eq!(cats(&t, "gears"), vec![Method]);
        assert_eq!(cats(&t, "Color"), vec![Class]);
        assert_eq!(cats(&t, "RED"), vec![Class]);
        assert_eq!(cats(&t, "GREEN"), vec![Class]);
        assert_eq!(cats(&t, "BLUE"), vec![Class]);
        assert_eq!(cats(&t, "code"), vec![Simple]);
    }

    #[test]
    fn class_literal_is_not_a_declaration() {
        let t = classify("class A { void f() { Class<?> c = String.class; } }");
        assert_eq!(cats(&t, "c"), vec![Class]);
        assert!(t.categories_of(b"String").is_none());
    }

    #[test]
    fn nested_class_and_mixed_category_union() {
        let t = classify(
            r#"
            class Outer {
                static class value { }
                int value;
            }
            "#,
        );
        assert_eq!(cats(&t, "value"), vec![Simple, Class]);
        let info = &t.names[b"value".as_ref()];
        assert_eq!(info.decl_offsets.len(), 2);
    }

    #[test]
    fn no_keyword_or_primitive_is_ever_a_key() {
        let t = classify("class A { int int1; void run() { for (int i = 0; i < 3; i++) { } } }");
        for name in t.names.keys() {
            assert!(
                !crate::java::lexer::is_keyword(name)
                    && !crate::java::lexer::is_primitive_type(name),
                "{:?} must not be a key",
                name_display(name)
            );
        }
    }

    #[test]
    fn every_key_occurs_as_identifier_token() {
        let src = br#"
            public class Car {
                private String model;
                private int wheels = 4;
                public int getWheels() { return wheels; }
            }
        "#;
        let t = classify_identifiers(src).unwrap();
        for name in t.names.keys() {
            assert!(t.occurring.contains(name));
        }
    }

    #[test]
    fn comments_are_ignored() {
        let t = classify("// int ghost;\n/* String phantom; */ int real;");
        assert_eq!(cats(&t, "real"), vec![Simple]);
        assert!(t.categories_of(b"ghost").is_none());
        assert!(t.categories_of(b"phantom").is_none());
    }

    #[test]
    fn package_and_import_are_silent() {
        let t = classify(
            "package com.example.app;\nimport java.util.List;\nimport java.util.*;\nclass A { List x; }",
        );
        assert!(t.warnings.is_empty(), "{:?}", t.warnings);
        assert_eq!(cats(&t, "x"), vec![Class]);
        assert!(t.categories_of(b"java").is_none());
        assert!(t.categories_of(b"util").is_none());
    }

    #[test]
    fn unparseable_member_produces_warning() {
        let t = classify("class A { int = 5; int ok; }");
        assert!(!t.warnings.is_empty());
        assert_eq!(cats(&t, "ok"), vec![Simple]);
    }

    #[test]
    fn export_format() {
        let t = classify("int year;");
        let out = t.export("F1.java");
        assert_eq!(out, "F1.java\tyear\tSimple\t4\n");
    }

    #[test]
    fn non_ascii_identifier_bytes_pass_through() {
        // "café" in UTF-8; bytes >= 0x80 are opaque identifier characters
        let src = b"int caf\xc3\xa9; caf\xc3\xa9++;";
        let t = classify_identifiers(src).unwrap();
        let name: Vec<u8> = b"caf\xc3\xa9".to_vec();
        assert_eq!(
            t.categories_of(&name).map(|s| s.iter().copied().collect::<Vec<_>>()),
            Some(vec![Simple])
        );
        assert!(t.occurring.contains(&name));
    }

    #[test]
    fn annotation_type_declaration() {
        let t = classify("@interface Marker { String value(); int weight(); }");
        assert_eq!(cats(&t, "Marker"), vec![Class]);
        assert_eq!(cats(&t, "value"), vec![Method]);
        assert_eq!(cats(&t, "weight"), vec![Method]);
        assert!(t.warnings.is_empty(), "{:?}", t.warnings);
    }

    #[test]
    fn varargs_parameter() {
        let t = classify("class A { void log(String... parts) { } }");
        assert_eq!(cats(&t, "parts"), vec![Class]);
    }

    #[test]
    fn generic_method_and_bounded_types() {
        let t =
            classify("class A { public <T extends Number> List<T> wrap(T item) { return null; } }");
        assert_eq!(cats(&t, "wrap"), vec![Method]);
        assert_eq!(cats(&t, "item"), vec![Class]);
    }
}
