//! The renaming category and its action on normal forms.
//!
//! Renamings are the smallest class of substitutions closed under weakening,
//! composition, identity, locks, keys, and extension by variable neutrals.
//! They exist here as a specification device: the evaluator works with levels
//! and never renames at runtime, but the action below pins down how 2-cells
//! on variables transform, and the test suite holds the evaluator to it.
//!
//! Every renaming sends variables to variables, so the action is a structural
//! traversal with a variable transformer at the leaves. The traversal tracks
//! the binder depth and the composite of locks crossed since the application
//! point; a key's cell is spliced into a variable's cell at the lock position
//! it addresses, whiskered by the factors on each side.

use thiserror::Error;

use crate::mode_theory::{splice_cell, Cell, Modality, ModeTheory, ModeTheoryError};
use crate::normal::{Ne, Nf, NfTy};
use crate::syntax::Index;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ren {
    /// Out of the empty context.
    Emp,
    /// Weakening by the last binder.
    Wk,
    Id,
    /// `Comp(s, r)` acts as `s` after `r`.
    Comp(Box<Ren>, Box<Ren>),
    /// Functorial lift under a lock.
    Lock(Modality, Box<Ren>),
    /// Key for a 2-cell at the application point.
    Key(Cell),
    /// Extension: index 0 is sent to the variable neutral `Var(index, cell)`.
    Ext(Box<Ren>, Index, Cell),
}

pub fn ren_id() -> Ren {
    Ren::Id
}

/// `ren_compose(s, r)` acts as `rename(s, rename(r, -))`.
pub fn ren_compose(s: Ren, r: Ren) -> Ren {
    Ren::Comp(Box::new(s), Box::new(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenameError {
    #[error("ill-matched renaming: {0}")]
    Mismatch(String),
}

impl From<ModeTheoryError> for RenameError {
    fn from(e: ModeTheoryError) -> Self {
        RenameError::Mismatch(e.to_string())
    }
}

fn var_action(
    th: &dyn ModeTheory,
    r: &Ren,
    k: u32,
    cell: Cell,
    inner: Option<&Modality>,
) -> Result<(u32, Cell), RenameError> {
    match r {
        Ren::Id | Ren::Emp => Ok((k, cell)),
        Ren::Wk => Ok((k + 1, cell)),
        Ren::Comp(s, r) => {
            let (k1, c1) = var_action(th, r, k, cell, inner)?;
            var_action(th, s, k1, c1, inner)
        }
        Ren::Lock(xi, r) => {
            let w = match inner {
                None => xi.clone(),
                Some(w) => th.compose_mod(xi, w)?,
            };
            var_action(th, r, k, cell, Some(&w))
        }
        Ren::Key(alpha) => {
            let new = splice_cell(th, &cell, alpha, inner)?;
            Ok((k, new))
        }
        Ren::Ext(r, j, gamma) => {
            if k == 0 {
                // gamma : mu_j => L . mu with mu the substituted binder's
                // annotation, which is the occurrence cell's domain.
                let pre = gamma.cod.strip_suffix(&cell.dom).ok_or_else(|| {
                    RenameError::Mismatch(format!(
                        "extension cell {} does not end in {}",
                        th.show_cell(gamma),
                        th.show_mod(&cell.dom)
                    ))
                })?;
                let whiskered = th.hcomp(&th.id_cell(&pre), &cell)?;
                let new = th.vcomp(&whiskered, gamma)?;
                Ok((j.0, new))
            } else {
                var_action(th, r, k - 1, cell, inner)
            }
        }
    }
}

fn extend_inner(
    th: &dyn ModeTheory,
    inner: Option<&Modality>,
    mu: &Modality,
) -> Result<Modality, RenameError> {
    Ok(match inner {
        None => mu.clone(),
        Some(w) => th.compose_mod(w, mu)?,
    })
}

pub fn rename_nf(th: &dyn ModeTheory, r: &Ren, u: &Nf) -> Result<Nf, RenameError> {
    go_nf(th, r, u, 0, None)
}

pub fn rename_ne(th: &dyn ModeTheory, r: &Ren, e: &Ne) -> Result<Ne, RenameError> {
    go_ne(th, r, e, 0, None)
}

pub fn rename_nfty(th: &dyn ModeTheory, r: &Ren, t: &NfTy) -> Result<NfTy, RenameError> {
    go_nfty(th, r, t, 0, None)
}

fn go_nf(
    th: &dyn ModeTheory,
    r: &Ren,
    u: &Nf,
    d: u32,
    inner: Option<&Modality>,
) -> Result<Nf, RenameError> {
    Ok(match u {
        Nf::Lam(b) => Nf::Lam(Box::new(go_nf(th, r, b, d + 1, inner)?)),
        Nf::Pair(a, b) => Nf::Pair(
            Box::new(go_nf(th, r, a, d, inner)?),
            Box::new(go_nf(th, r, b, d, inner)?),
        ),
        Nf::True | Nf::False | Nf::BoolCode => u.clone(),
        Nf::Refl(a) => Nf::Refl(Box::new(go_nf(th, r, a, d, inner)?)),
        Nf::MkBox(mu, a) => {
            let w = extend_inner(th, inner, mu)?;
            Nf::MkBox(mu.clone(), Box::new(go_nf(th, r, a, d, Some(&w))?))
        }
        Nf::Inj(e) => Nf::Inj(Box::new(go_ne(th, r, e, d, inner)?)),
        Nf::PiCode(mu, a, b) => {
            let w = extend_inner(th, inner, mu)?;
            Nf::PiCode(
                mu.clone(),
                Box::new(go_nf(th, r, a, d, Some(&w))?),
                Box::new(go_nf(th, r, b, d + 1, inner)?),
            )
        }
        Nf::SigCode(a, b) => Nf::SigCode(
            Box::new(go_nf(th, r, a, d, inner)?),
            Box::new(go_nf(th, r, b, d + 1, inner)?),
        ),
        Nf::ModCode(mu, a) => {
            let w = extend_inner(th, inner, mu)?;
            Nf::ModCode(mu.clone(), Box::new(go_nf(th, r, a, d, Some(&w))?))
        }
        Nf::Down(k, a) => Nf::Down(*k, Box::new(go_nf(th, r, a, d, inner)?)),
    })
}

fn go_ne(
    th: &dyn ModeTheory,
    r: &Ren,
    e: &Ne,
    d: u32,
    inner: Option<&Modality>,
) -> Result<Ne, RenameError> {
    Ok(match e {
        Ne::Var(Index(k), cell) => {
            if *k < d {
                e.clone()
            } else {
                let (k1, cell1) = var_action(th, r, k - d, cell.clone(), inner)?;
                Ne::Var(Index(k1 + d), cell1)
            }
        }
        Ne::App(mu, f, a) => {
            let w = extend_inner(th, inner, mu)?;
            Ne::App(
                mu.clone(),
                Box::new(go_ne(th, r, f, d, inner)?),
                Box::new(go_nf(th, r, a, d, Some(&w))?),
            )
        }
        Ne::Fst(e) => Ne::Fst(Box::new(go_ne(th, r, e, d, inner)?)),
        Ne::Snd(e) => Ne::Snd(Box::new(go_ne(th, r, e, d, inner)?)),
        Ne::If(motive, scrut, t, f) => Ne::If(
            Box::new(go_nfty(th, r, motive, d + 1, inner)?),
            Box::new(go_ne(th, r, scrut, d, inner)?),
            Box::new(go_nf(th, r, t, d, inner)?),
            Box::new(go_nf(th, r, f, d, inner)?),
        ),
        Ne::J(motive, rc, scrut) => Ne::J(
            Box::new(go_nfty(th, r, motive, d + 3, inner)?),
            Box::new(go_nf(th, r, rc, d + 1, inner)?),
            Box::new(go_ne(th, r, scrut, d, inner)?),
        ),
        Ne::CrispJ(mu, motive, rc, scrut) => {
            let w = extend_inner(th, inner, mu)?;
            Ne::CrispJ(
                mu.clone(),
                Box::new(go_nfty(th, r, motive, d + 3, inner)?),
                Box::new(go_nf(th, r, rc, d + 1, inner)?),
                Box::new(go_ne(th, r, scrut, d, Some(&w))?),
            )
        }
        Ne::LetMod { frame, main, motive, scrut, body } => {
            let w = extend_inner(th, inner, frame)?;
            Ne::LetMod {
                frame: frame.clone(),
                main: main.clone(),
                motive: Box::new(go_nfty(th, r, motive, d + 1, inner)?),
                scrut: Box::new(go_ne(th, r, scrut, d, Some(&w))?),
                body: Box::new(go_nf(th, r, body, d + 1, inner)?),
            }
        }
        Ne::Up(k, e) => Ne::Up(*k, Box::new(go_ne(th, r, e, d, inner)?)),
    })
}

fn go_nfty(
    th: &dyn ModeTheory,
    r: &Ren,
    t: &NfTy,
    d: u32,
    inner: Option<&Modality>,
) -> Result<NfTy, RenameError> {
    Ok(match t {
        NfTy::Pi(mu, a, b) => {
            let w = extend_inner(th, inner, mu)?;
            NfTy::Pi(
                mu.clone(),
                Box::new(go_nfty(th, r, a, d, Some(&w))?),
                Box::new(go_nfty(th, r, b, d + 1, inner)?),
            )
        }
        NfTy::Sig(a, b) => NfTy::Sig(
            Box::new(go_nfty(th, r, a, d, inner)?),
            Box::new(go_nfty(th, r, b, d + 1, inner)?),
        ),
        NfTy::Bool | NfTy::Uni => t.clone(),
        NfTy::Id(a, l, rr) => NfTy::Id(
            Box::new(go_nfty(th, r, a, d, inner)?),
            Box::new(go_nf(th, r, l, d, inner)?),
            Box::new(go_nf(th, r, rr, d, inner)?),
        ),
        NfTy::Mod(mu, a) => {
            let w = extend_inner(th, inner, mu)?;
            NfTy::Mod(mu.clone(), Box::new(go_nfty(th, r, a, d, Some(&w))?))
        }
        NfTy::Dec(u) => NfTy::Dec(Box::new(go_nf(th, r, u, d, inner)?)),
    })
}
