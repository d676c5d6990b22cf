//! Surface abstract syntax, source spans, diagnostics, and configuration.

use std::fmt;

/// Byte span into the source file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub len: usize,
}

impl Span {
    pub fn new(start: usize, len: usize) -> Span {
        Span { start, len }
    }

    pub fn join(self, other: Span) -> Span {
        let start = self.start.min(other.start);
        let end = (self.start + self.len).max(other.start + other.len);
        Span { start, len: end - start }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
}

/// A rendered problem: severity, byte-accurate span, a one-line message, and
/// optional expected/actual printouts.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub message: String,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl Diagnostic {
    pub fn error(span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            span,
            message: message.into(),
            expected: None,
            actual: None,
        }
    }

    /// Renders with 1-based line/column resolved against the source.
    pub fn render(&self, file: &str, source: &str) -> String {
        let (line, col) = line_col(source, self.span.start);
        let mut out = format!("{file}:{line}:{col}: error: {}", self.message);
        if let Some(e) = &self.expected {
            out.push_str(&format!("\n  expected: {e}"));
        }
        if let Some(a) = &self.actual {
            out.push_str(&format!("\n  actual:   {a}"));
        }
        out
    }
}

pub fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let clamped = offset.min(source.len());
    let mut line = 1;
    let mut col = 1;
    for (i, c) in source.char_indices() {
        if i >= clamped {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputStyle {
    Plain,
    Sexp,
}

impl fmt::Display for OutputStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputStyle::Plain => write!(f, "plain"),
            OutputStyle::Sexp => write!(f, "sexp"),
        }
    }
}

/// Run configuration: which mode theory, whether crisp induction is enabled,
/// and the output style.
#[derive(Debug, Clone)]
pub struct Config {
    pub mode_theory: String,
    pub crisp: bool,
    pub output: OutputStyle,
}

impl Default for Config {
    fn default() -> Config {
        Config { mode_theory: "trivial".into(), crisp: false, output: OutputStyle::Plain }
    }
}

/// Surface modality expression: `id` or a dot-joined word of generator
/// names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMod {
    pub parts: Vec<String>,
    pub span: Span,
}

/// Surface cell annotation on a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SCell {
    /// `^id`
    Identity(Span),
    /// `^(a<=b)` in the guarded theory
    Leq(u32, u32, Span),
}

#[derive(Debug, Clone)]
pub enum STy {
    Bool(Span),
    Uni(Span),
    /// `(x : A) ->{mu} B`, or `A -> B` with an unnamed binder.
    Pi { binder: Option<String>, modality: Option<SMod>, dom: Box<STy>, cod: Box<STy>, span: Span },
    /// `(x : A) * B` or `A * B`.
    Sig { binder: Option<String>, fst: Box<STy>, snd: Box<STy>, span: Span },
    /// `Id A t u`
    Id { ty: Box<STy>, lhs: Box<STm>, rhs: Box<STm>, span: Span },
    /// `<mu| A>`
    Modal { modality: SMod, body: Box<STy>, span: Span },
    /// `Dec t`
    Dec { code: Box<STm>, span: Span },
}

impl STy {
    pub fn span(&self) -> Span {
        match self {
            STy::Bool(s) | STy::Uni(s) => *s,
            STy::Pi { span, .. }
            | STy::Sig { span, .. }
            | STy::Id { span, .. }
            | STy::Modal { span, .. }
            | STy::Dec { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone)]
pub enum STm {
    Var { name: String, cell: Option<SCell>, span: Span },
    True(Span),
    False(Span),
    Lam { binders: Vec<String>, body: Box<STm>, span: Span },
    /// `f a` or `f @{mu} a`.
    App { modality: Option<SMod>, fun: Box<STm>, arg: Box<STm>, span: Span },
    Pair { fst: Box<STm>, snd: Box<STm>, span: Span },
    Fst { arg: Box<STm>, span: Span },
    Snd { arg: Box<STm>, span: Span },
    If { scrut: Box<STm>, then_t: Box<STm>, else_t: Box<STm>, span: Span },
    Refl { arg: Box<STm>, span: Span },
    /// `J (x y p. M) (x. r) t`
    J { motive: Box<STy>, refl_case: Box<STm>, scrut: Box<STm>, span: Span },
    /// `crispJ {mu} (x y p. M) (x. r) t`
    CrispJ { modality: SMod, motive: Box<STy>, refl_case: Box<STm>, scrut: Box<STm>, span: Span },
    /// `mod_mu t` or `mod{mu} t`
    MkBox { modality: SMod, body: Box<STm>, span: Span },
    /// `let mod_nu x = t in^mu u`
    LetMod {
        main: SMod,
        frame: Option<SMod>,
        binder: String,
        scrut: Box<STm>,
        body: Box<STm>,
        span: Span,
    },
    /// `(t : A)`
    Ann { tm: Box<STm>, ty: Box<STy>, span: Span },
}

impl STm {
    pub fn span(&self) -> Span {
        match self {
            STm::Var { span, .. }
            | STm::True(span)
            | STm::False(span)
            | STm::Lam { span, .. }
            | STm::App { span, .. }
            | STm::Pair { span, .. }
            | STm::Fst { span, .. }
            | STm::Snd { span, .. }
            | STm::If { span, .. }
            | STm::Refl { span, .. }
            | STm::J { span, .. }
            | STm::CrispJ { span, .. }
            | STm::MkBox { span, .. }
            | STm::LetMod { span, .. }
            | STm::Ann { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Item {
    Def { name: String, ty: STy, body: STm, span: Span },
    Normalize { tm: STm, ty: STy, span: Span },
    Check { tm: STm, ty: STy, span: Span },
    Conv { lhs: STm, rhs: STm, ty: STy, span: Span },
}

impl Item {
    pub fn span(&self) -> Span {
        match self {
            Item::Def { span, .. }
            | Item::Normalize { span, .. }
            | Item::Check { span, .. }
            | Item::Conv { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SurfaceFile {
    pub items: Vec<Item>,
}
