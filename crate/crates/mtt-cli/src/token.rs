//! Lexer: UTF-8 source to spanned tokens.

use crate::ast::{Diagnostic, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    // keywords
    Def,
    Mod,
    Let,
    In,
    If,
    Then,
    Else,
    Refl,
    JKw,
    CrispJ,
    BoolKw,
    UniKw,
    DecKw,
    IdKw,
    Fst,
    Snd,
    True,
    False,
    // directive heads
    DirNormalize,
    DirCheck,
    DirConv,
    // punctuation
    Assign,    // :=
    Colon,     // :
    Arrow,     // ->
    DArrow,    // =>
    Leq,       // <=
    Star,      // *
    Comma,     // ,
    Dot,       // .
    Semi,      // ;
    Caret,     // ^
    At,        // @
    Backslash, // \
    LParen,
    RParen,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Bar,
    Eq,
    /// `mod_<name>` introduction shorthand.
    ModIntro(String),
    Ident(String),
    Nat(u32),
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::ModIntro(m) => format!("`mod_{m}`"),
            other => format!("`{}`", other.lexeme()),
        }
    }

    fn lexeme(&self) -> &'static str {
        match self {
            Tok::Def => "def",
            Tok::Mod => "mod",
            Tok::Let => "let",
            Tok::In => "in",
            Tok::If => "if",
            Tok::Then => "then",
            Tok::Else => "else",
            Tok::Refl => "refl",
            Tok::JKw => "J",
            Tok::CrispJ => "crispJ",
            Tok::BoolKw => "Bool",
            Tok::UniKw => "U",
            Tok::DecKw => "Dec",
            Tok::IdKw => "Id",
            Tok::Fst => "fst",
            Tok::Snd => "snd",
            Tok::True => "true",
            Tok::False => "false",
            Tok::DirNormalize => "#normalize",
            Tok::DirCheck => "#check",
            Tok::DirConv => "#conv",
            Tok::Assign => ":=",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            Tok::DArrow => "=>",
            Tok::Leq => "<=",
            Tok::Star => "*",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Semi => ";",
            Tok::Caret => "^",
            Tok::At => "@",
            Tok::Backslash => "\\",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Bar => "|",
            Tok::Eq => "=",
            Tok::Ident(_) | Tok::Nat(_) | Tok::ModIntro(_) => "",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "def" => Tok::Def,
        "mod" => Tok::Mod,
        "let" => Tok::Let,
        "in" => Tok::In,
        "if" => Tok::If,
        "then" => Tok::Then,
        "else" => Tok::Else,
        "refl" => Tok::Refl,
        "J" => Tok::JKw,
        "crispJ" => Tok::CrispJ,
        "Bool" => Tok::BoolKw,
        "U" => Tok::UniKw,
        "Dec" => Tok::DecKw,
        "Id" => Tok::IdKw,
        "fst" => Tok::Fst,
        "snd" => Tok::Snd,
        "true" => Tok::True,
        "false" => Tok::False,
        _ => return None,
    })
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let bytes = source.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let rest = &source[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        // line comments
        if rest.starts_with("--") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let mut push = |tok: Tok, len: usize| {
            out.push(Token { tok, span: Span::new(start, len) });
        };
        if rest.starts_with('#') {
            let end = rest[1..]
                .find(|c: char| !is_ident_continue(c))
                .map(|p| p + 1)
                .unwrap_or(rest.len());
            let word = &rest[..end];
            let tok = match word {
                "#normalize" => Tok::DirNormalize,
                "#check" => Tok::DirCheck,
                "#conv" => Tok::DirConv,
                other => {
                    return Err(Diagnostic::error(
                        Span::new(start, end),
                        format!("unknown directive `{other}`"),
                    ))
                }
            };
            push(tok, end);
            i += end;
            continue;
        }
        if let Some(two) = rest.get(..2) {
            let tok = match two {
                ":=" => Some(Tok::Assign),
                "->" => Some(Tok::Arrow),
                "=>" => Some(Tok::DArrow),
                "<=" => Some(Tok::Leq),
                _ => None,
            };
            if let Some(tok) = tok {
                push(tok, 2);
                i += 2;
                continue;
            }
        }
        let single = match c {
            ':' => Some(Tok::Colon),
            '*' => Some(Tok::Star),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ';' => Some(Tok::Semi),
            '^' => Some(Tok::Caret),
            '@' => Some(Tok::At),
            '\\' => Some(Tok::Backslash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '|' => Some(Tok::Bar),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            push(tok, 1);
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let n: u32 = rest[..end].parse().map_err(|_| {
                Diagnostic::error(Span::new(start, end), "number literal out of range")
            })?;
            push(Tok::Nat(n), end);
            i += end;
            continue;
        }
        if is_ident_start(c) {
            let end = rest
                .find(|c: char| !is_ident_continue(c))
                .unwrap_or(rest.len());
            let word = &rest[..end];
            let tok = if let Some(stripped) = word.strip_prefix("mod_") {
                if stripped.is_empty() {
                    return Err(Diagnostic::error(
                        Span::new(start, end),
                        "`mod_` must name a modality",
                    ));
                }
                Tok::ModIntro(stripped.to_string())
            } else {
                keyword(word).unwrap_or_else(|| Tok::Ident(word.to_string()))
            };
            push(tok, end);
            i += end;
            continue;
        }
        return Err(Diagnostic::error(
            Span::new(start, c.len_utf8()),
            format!("invalid character `{}`", c.escape_default()),
        ));
    }
    Ok(out)
}
