//! Mode theories: strict 2-categories of modes, modalities, and 2-cells.
//!
//! Every other part of the kernel is parameterized by a [`ModeTheory`]. The
//! trait fixes the algebra (composition, identities, decidable equality for
//! modalities and cells) and three built-in instances cover the common
//! situations: [`Trivial`], [`Walking`], and [`Guarded`].
//!
//! Modalities are kept in a canonical form: a word of generator names with
//! identities erased, so that strictness of the 2-category is plain word
//! equality. Cells are represented by their endpoints; all built-in theories
//! have at most one cell between parallel modalities, which makes that
//! representation canonical.

use std::fmt;

use thiserror::Error;

/// A mode: one object of the mode theory. `id` is opaque and only meaningful
/// within a single instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode(pub u32);

/// Index of a generating modality within one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

/// A modality `word: dom -> cod`, stored as a canonical word of generators.
///
/// The word lists factors in composition order: `compose_mod(mu, nu)` (that
/// is, `mu . nu`) concatenates `mu`'s word before `nu`'s. The identity is the
/// empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modality {
    pub word: Vec<GenId>,
    pub dom: Mode,
    pub cod: Mode,
}

impl Modality {
    pub fn identity(m: Mode) -> Modality {
        Modality { word: Vec::new(), dom: m, cod: m }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Splits `self` as `prefix . suffix` when `suffix` is a word-suffix of
    /// `self` with matching endpoints, returning the prefix.
    pub fn strip_suffix(&self, suffix: &Modality) -> Option<Modality> {
        if self.dom != suffix.dom || !self.word.ends_with(&suffix.word) {
            return None;
        }
        let keep = self.word.len() - suffix.word.len();
        Some(Modality {
            word: self.word[..keep].to_vec(),
            dom: suffix.cod,
            cod: self.cod,
        })
    }
}

/// A 2-cell between parallel modalities. The endpoints determine the cell in
/// every built-in (poset-enriched) instance; theories with parallel distinct
/// cells can discriminate them through `tag`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub dom: Modality,
    pub cod: Modality,
    pub tag: u32,
}

impl Cell {
    pub fn identity(mu: Modality) -> Cell {
        Cell { dom: mu.clone(), cod: mu, tag: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.tag == 0 && self.dom == self.cod
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModeTheoryError {
    #[error("unknown mode or generator for this mode theory: {0}")]
    Instance(String),
    #[error("composition endpoints do not match: {0}")]
    Composition(String),
    #[error("no such cell: {0}")]
    Cell(String),
}

/// The strict-2-category interface.
///
/// Laws every instance must satisfy (checked by the test suite on the
/// built-ins):
///
/// * `compose_mod` is associative with `id_mod` as two-sided unit, up to
///   `eq_mod`;
/// * `vcomp` is associative and unital with `id_cell`;
/// * `hcomp` is functorial on identities and satisfies the interchange law
///   with `vcomp`;
/// * `eq_mod`/`eq_cell` are equivalence relations and congruences.
pub trait ModeTheory: fmt::Debug {
    /// Instance name, used by the CLI selector.
    fn name(&self) -> &str;

    fn modes(&self) -> Vec<Mode>;

    /// Default mode used when a surface file does not pick one.
    fn default_mode(&self) -> Mode;

    fn mode_name(&self, m: Mode) -> Option<&str>;

    /// Generator lookup by surface name.
    fn generator(&self, name: &str) -> Option<Modality>;

    fn generator_name(&self, g: GenId) -> Option<&str>;

    /// Endpoint data of a generator.
    fn generator_sig(&self, g: GenId) -> Option<(Mode, Mode)>;

    /// Instance-specific canonical form for a freshly concatenated word.
    /// The built-ins are free (no relations), so the default is the identity.
    fn normalize_word(&self, word: Vec<GenId>) -> Vec<GenId> {
        word
    }

    /// The unique cell `dom => cod` when the instance has one.
    fn find_cell(&self, dom: &Modality, cod: &Modality) -> Option<Cell>;

    fn id_mod(&self, m: Mode) -> Result<Modality, ModeTheoryError> {
        if !self.modes().contains(&m) {
            return Err(ModeTheoryError::Instance(format!("mode {:?}", m)));
        }
        Ok(Modality::identity(m))
    }

    fn compose_mod(&self, mu: &Modality, nu: &Modality) -> Result<Modality, ModeTheoryError> {
        if mu.dom != nu.cod {
            return Err(ModeTheoryError::Composition(format!(
                "dom({}) /= cod({})",
                self.show_mod(mu),
                self.show_mod(nu)
            )));
        }
        let mut word = mu.word.clone();
        word.extend_from_slice(&nu.word);
        Ok(Modality { word: self.normalize_word(word), dom: nu.dom, cod: mu.cod })
    }

    fn eq_mod(&self, mu: &Modality, nu: &Modality) -> bool {
        mu == nu
    }

    fn id_cell(&self, mu: &Modality) -> Cell {
        Cell::identity(mu.clone())
    }

    /// Vertical composition: `a1` after `a0`.
    fn vcomp(&self, a1: &Cell, a0: &Cell) -> Result<Cell, ModeTheoryError> {
        if !self.eq_mod(&a0.cod, &a1.dom) {
            return Err(ModeTheoryError::Composition(format!(
                "vcomp endpoints: cod({}) /= dom({})",
                self.show_cell(a0),
                self.show_cell(a1)
            )));
        }
        self.find_cell(&a0.dom, &a1.cod).ok_or_else(|| {
            ModeTheoryError::Cell(format!(
                "vcomp of {} and {}",
                self.show_cell(a1),
                self.show_cell(a0)
            ))
        })
    }

    /// Horizontal composition: `a` is the outer factor, `b` the inner.
    fn hcomp(&self, a: &Cell, b: &Cell) -> Result<Cell, ModeTheoryError> {
        let dom = self.compose_mod(&a.dom, &b.dom)?;
        let cod = self.compose_mod(&a.cod, &b.cod)?;
        self.find_cell(&dom, &cod).ok_or_else(|| {
            ModeTheoryError::Cell(format!(
                "hcomp of {} and {}",
                self.show_cell(a),
                self.show_cell(b)
            ))
        })
    }

    fn eq_cell(&self, a: &Cell, b: &Cell) -> bool {
        self.eq_mod(&a.dom, &b.dom) && self.eq_mod(&a.cod, &b.cod) && a.tag == b.tag
    }

    fn show_mod(&self, mu: &Modality) -> String {
        if mu.word.is_empty() {
            return "id".to_string();
        }
        mu.word
            .iter()
            .map(|g| self.generator_name(*g).unwrap_or("?").to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    fn show_cell(&self, a: &Cell) -> String {
        format!("({} => {})", self.show_mod(&a.dom), self.show_mod(&a.cod))
    }
}

/// One mode, identity modality only.
#[derive(Debug, Clone, Copy, Default)]
pub struct Trivial;

pub const TRIVIAL_MODE: Mode = Mode(0);

impl ModeTheory for Trivial {
    fn name(&self) -> &str {
        "trivial"
    }

    fn modes(&self) -> Vec<Mode> {
        vec![TRIVIAL_MODE]
    }

    fn default_mode(&self) -> Mode {
        TRIVIAL_MODE
    }

    fn mode_name(&self, m: Mode) -> Option<&str> {
        (m == TRIVIAL_MODE).then_some("m")
    }

    fn generator(&self, _name: &str) -> Option<Modality> {
        None
    }

    fn generator_name(&self, _g: GenId) -> Option<&str> {
        None
    }

    fn generator_sig(&self, _g: GenId) -> Option<(Mode, Mode)> {
        None
    }

    fn find_cell(&self, dom: &Modality, cod: &Modality) -> Option<Cell> {
        (dom == cod).then(|| Cell::identity(dom.clone()))
    }
}

/// Two modes `n`, `m` and a single generator `mu : n -> m`; identity cells
/// only.
#[derive(Debug, Clone, Copy, Default)]
pub struct Walking;

pub const WALKING_SRC: Mode = Mode(0); // n
pub const WALKING_DST: Mode = Mode(1); // m
const WALKING_GEN: GenId = GenId(0);

impl Walking {
    pub fn generator_mod() -> Modality {
        Modality { word: vec![WALKING_GEN], dom: WALKING_SRC, cod: WALKING_DST }
    }
}

impl ModeTheory for Walking {
    fn name(&self) -> &str {
        "walking"
    }

    fn modes(&self) -> Vec<Mode> {
        vec![WALKING_SRC, WALKING_DST]
    }

    fn default_mode(&self) -> Mode {
        WALKING_DST
    }

    fn mode_name(&self, m: Mode) -> Option<&str> {
        match m {
            WALKING_SRC => Some("n"),
            WALKING_DST => Some("m"),
            _ => None,
        }
    }

    fn generator(&self, name: &str) -> Option<Modality> {
        (name == "mu").then(Walking::generator_mod)
    }

    fn generator_name(&self, g: GenId) -> Option<&str> {
        (g == WALKING_GEN).then_some("mu")
    }

    fn generator_sig(&self, g: GenId) -> Option<(Mode, Mode)> {
        (g == WALKING_GEN).then_some((WALKING_SRC, WALKING_DST))
    }

    fn find_cell(&self, dom: &Modality, cod: &Modality) -> Option<Cell> {
        (dom == cod).then(|| Cell::identity(dom.clone()))
    }
}

/// One mode, modalities the free monoid on one generator `l`, and exactly one
/// cell `l^a => l^b` whenever `a <= b`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Guarded;

pub const GUARDED_MODE: Mode = Mode(0);
const GUARDED_GEN: GenId = GenId(0);

impl Guarded {
    pub fn later() -> Modality {
        Guarded::power(1)
    }

    pub fn power(k: usize) -> Modality {
        Modality { word: vec![GUARDED_GEN; k], dom: GUARDED_MODE, cod: GUARDED_MODE }
    }
}

impl ModeTheory for Guarded {
    fn name(&self) -> &str {
        "guarded"
    }

    fn modes(&self) -> Vec<Mode> {
        vec![GUARDED_MODE]
    }

    fn default_mode(&self) -> Mode {
        GUARDED_MODE
    }

    fn mode_name(&self, m: Mode) -> Option<&str> {
        (m == GUARDED_MODE).then_some("t")
    }

    fn generator(&self, name: &str) -> Option<Modality> {
        (name == "l").then(Guarded::later)
    }

    fn generator_name(&self, g: GenId) -> Option<&str> {
        (g == GUARDED_GEN).then_some("l")
    }

    fn generator_sig(&self, g: GenId) -> Option<(Mode, Mode)> {
        (g == GUARDED_GEN).then_some((GUARDED_MODE, GUARDED_MODE))
    }

    fn find_cell(&self, dom: &Modality, cod: &Modality) -> Option<Cell> {
        if dom.dom != GUARDED_MODE || cod.dom != GUARDED_MODE {
            return None;
        }
        (dom.word.len() <= cod.word.len())
            .then(|| Cell { dom: dom.clone(), cod: cod.clone(), tag: 0 })
    }
}

/// Post-composes a key cell onto a variable's cell at the lock position
/// addressed by `inner`.
///
/// `base : rho => P . dom(key) . inner` for some prefix `P` of locks between
/// the variable's binder and the key position; `inner` is the composite of
/// locks crossed past that position. The result is
/// `vcomp(hcomp(hcomp(id_P, key), id_inner), base)`, i.e. the key whiskered
/// by the surrounding lock factors. Fails when `base`'s codomain does not
/// factor through the key position.
pub fn splice_cell(
    th: &dyn ModeTheory,
    base: &Cell,
    key: &Cell,
    inner: Option<&Modality>,
) -> Result<Cell, ModeTheoryError> {
    let suffix = match inner {
        None => key.dom.clone(),
        Some(w) => th.compose_mod(&key.dom, w)?,
    };
    let prefix = base.cod.strip_suffix(&suffix).ok_or_else(|| {
        ModeTheoryError::Cell(format!(
            "cell {} does not factor through {}",
            th.show_cell(base),
            th.show_mod(&suffix)
        ))
    })?;
    let mut whiskered = th.hcomp(&th.id_cell(&prefix), key)?;
    if let Some(w) = inner {
        whiskered = th.hcomp(&whiskered, &th.id_cell(w))?;
    }
    th.vcomp(&whiskered, base)
}

/// Looks a built-in instance up by its CLI name.
pub fn builtin(name: &str) -> Option<Box<dyn ModeTheory>> {
    match name {
        "trivial" => Some(Box::new(Trivial)),
        "walking" => Some(Box::new(Walking)),
        "guarded" => Some(Box::new(Guarded)),
        _ => None,
    }
}
