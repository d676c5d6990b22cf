//! De Bruijn core syntax: contexts, types, and terms, in implicit-substitution
//! style. Substitution is never performed on this syntax; the evaluator does
//! it semantically.

use thiserror::Error;

use crate::mode_theory::{Cell, Modality, Mode, ModeTheory, ModeTheoryError};

/// De Bruijn index, counting enclosing binders innermost-first. Lock entries
/// are transparent to indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(pub u32);

/// Which code former a universe coercion is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    Pi,
    Sig,
    Bool,
    Mod,
}

/// Typing contexts. `Lock(ctx, mu)` requires `mode_of(ctx) = cod(mu)` and has
/// mode `dom(mu)`; `Ext(ctx, mu, a)` binds a variable of type `a`, where `a`
/// lives in `Lock(ctx, mu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ctx {
    Empty(Mode),
    Lock(Box<Ctx>, Modality),
    Ext(Box<Ctx>, Modality, Ty),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ty {
    /// Modality-annotated dependent product. The domain lives under the lock,
    /// the codomain under one binder.
    Pi(Modality, Box<Ty>, Box<Ty>),
    /// Dependent sum; both components at the ambient mode, the second under
    /// one identity-annotated binder.
    Sig(Box<Ty>, Box<Ty>),
    Bool,
    Id(Box<Ty>, Box<Tm>, Box<Tm>),
    /// Modal type; the body lives under the lock.
    Mod(Modality, Box<Ty>),
    Uni,
    /// Decoding of a universe code.
    Dec(Box<Tm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tm {
    Var(Index, Cell),
    Lam(Box<Tm>),
    App(Modality, Box<Tm>, Box<Tm>),
    Pair(Box<Tm>, Box<Tm>),
    Fst(Box<Tm>),
    Snd(Box<Tm>),
    TrueC,
    FalseC,
    /// `If(motive, then, else, scrutinee)`; the motive is a type under one
    /// boolean binder.
    If(Box<Ty>, Box<Tm>, Box<Tm>, Box<Tm>),
    Refl(Box<Tm>),
    /// `J(motive, refl_case, scrutinee)`; the motive is a type under three
    /// binders (both endpoints and the path), the refl case under one.
    J(Box<Ty>, Box<Tm>, Box<Tm>),
    MkBox(Modality, Box<Tm>),
    /// Modal eliminator. `frame` is the framing modality, `main` the boxed
    /// one; the motive is under one `frame`-annotated binder, the body under
    /// one `frame . main`-annotated binder, and the scrutinee under the
    /// `frame` lock.
    LetMod {
        frame: Modality,
        main: Modality,
        motive: Box<Ty>,
        scrut: Box<Tm>,
        body: Box<Tm>,
    },
    /// Universe codes.
    PiCode(Modality, Box<Tm>, Box<Tm>),
    SigCode(Box<Tm>, Box<Tm>),
    BoolCode,
    ModCode(Modality, Box<Tm>),
    /// Weak-universe coercion out of a decoded code.
    Up(CodeKind, Box<Tm>),
    /// Weak-universe coercion into a decoded code.
    Down(CodeKind, Box<Tm>),
    /// Crisp identity induction; available only when the crisp feature is
    /// enabled. `CrispJ(modality, motive, refl_case, scrutinee)` with the
    /// scrutinee under the lock.
    CrispJ(Modality, Box<Ty>, Box<Tm>, Box<Tm>),
    /// Type ascription. Erased by evaluation; exists so that terms whose
    /// outermost form only checks can still head an elimination.
    Ann(Box<Tm>, Box<Ty>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("variable index {0} out of range")]
    Scope(u32),
    #[error(transparent)]
    ModeTheory(#[from] ModeTheoryError),
}

/// Composite of all lock annotations strictly between the end of the context
/// and the binder for `k`, in context order; identity when no locks
/// intervene.
pub fn locks_of(th: &dyn ModeTheory, ctx: &Ctx, k: Index) -> Result<Modality, SyntaxError> {
    fn go(
        th: &dyn ModeTheory,
        ctx: &Ctx,
        k: u32,
        acc: Option<Modality>,
    ) -> Result<Modality, SyntaxError> {
        match ctx {
            Ctx::Empty(_) => Err(SyntaxError::Scope(k)),
            Ctx::Lock(inner, mu) => {
                let acc = match acc {
                    None => Some(mu.clone()),
                    Some(a) => Some(th.compose_mod(mu, &a)?),
                };
                go(th, inner, k, acc)
            }
            Ctx::Ext(inner, _, _) => {
                if k == 0 {
                    Ok(acc.unwrap_or_else(|| Modality::identity(mode_of(ctx))))
                } else {
                    go(th, inner, k - 1, acc)
                }
            }
        }
    }
    go(th, ctx, k.0, None)
}

/// Binder annotation and stored (unshifted) type for index `k`. Locks are
/// skipped in counting.
pub fn lookup(ctx: &Ctx, k: Index) -> Result<(Modality, Ty), SyntaxError> {
    match ctx {
        Ctx::Empty(_) => Err(SyntaxError::Scope(k.0)),
        Ctx::Lock(inner, _) => lookup(inner, k),
        Ctx::Ext(inner, mu, a) => {
            if k.0 == 0 {
                Ok((mu.clone(), a.clone()))
            } else {
                lookup(inner, Index(k.0 - 1))
            }
        }
    }
}

pub fn mode_of(ctx: &Ctx) -> Mode {
    match ctx {
        Ctx::Empty(m) => *m,
        Ctx::Lock(_, mu) => mu.dom,
        Ctx::Ext(inner, _, _) => mode_of(inner),
    }
}

/// Number of variable binders in the context.
pub fn ctx_len(ctx: &Ctx) -> u32 {
    match ctx {
        Ctx::Empty(_) => 0,
        Ctx::Lock(inner, _) => ctx_len(inner),
        Ctx::Ext(inner, _, _) => ctx_len(inner) + 1,
    }
}

impl Ctx {
    pub fn lock(self, mu: Modality) -> Ctx {
        Ctx::Lock(Box::new(self), mu)
    }

    pub fn ext(self, mu: Modality, a: Ty) -> Ctx {
        Ctx::Ext(Box::new(self), mu, a)
    }
}

impl Ty {
    pub fn pi(mu: Modality, dom: Ty, cod: Ty) -> Ty {
        Ty::Pi(mu, Box::new(dom), Box::new(cod))
    }

    pub fn sig(fst: Ty, snd: Ty) -> Ty {
        Ty::Sig(Box::new(fst), Box::new(snd))
    }

    pub fn id(a: Ty, l: Tm, r: Tm) -> Ty {
        Ty::Id(Box::new(a), Box::new(l), Box::new(r))
    }

    pub fn modal(mu: Modality, a: Ty) -> Ty {
        Ty::Mod(mu, Box::new(a))
    }

    pub fn dec(code: Tm) -> Ty {
        Ty::Dec(Box::new(code))
    }
}

impl Tm {
    pub fn var(k: u32, cell: Cell) -> Tm {
        Tm::Var(Index(k), cell)
    }

    pub fn lam(body: Tm) -> Tm {
        Tm::Lam(Box::new(body))
    }

    pub fn app(mu: Modality, f: Tm, a: Tm) -> Tm {
        Tm::App(mu, Box::new(f), Box::new(a))
    }

    pub fn pair(a: Tm, b: Tm) -> Tm {
        Tm::Pair(Box::new(a), Box::new(b))
    }

    pub fn fst(p: Tm) -> Tm {
        Tm::Fst(Box::new(p))
    }

    pub fn snd(p: Tm) -> Tm {
        Tm::Snd(Box::new(p))
    }

    pub fn if_(motive: Ty, then_t: Tm, else_t: Tm, scrut: Tm) -> Tm {
        Tm::If(Box::new(motive), Box::new(then_t), Box::new(else_t), Box::new(scrut))
    }

    pub fn refl(a: Tm) -> Tm {
        Tm::Refl(Box::new(a))
    }

    pub fn j(motive: Ty, refl_case: Tm, scrut: Tm) -> Tm {
        Tm::J(Box::new(motive), Box::new(refl_case), Box::new(scrut))
    }

    pub fn crisp_j(mu: Modality, motive: Ty, refl_case: Tm, scrut: Tm) -> Tm {
        Tm::CrispJ(mu, Box::new(motive), Box::new(refl_case), Box::new(scrut))
    }

    pub fn mkbox(mu: Modality, body: Tm) -> Tm {
        Tm::MkBox(mu, Box::new(body))
    }

    pub fn letmod(frame: Modality, main: Modality, motive: Ty, scrut: Tm, body: Tm) -> Tm {
        Tm::LetMod {
            frame,
            main,
            motive: Box::new(motive),
            scrut: Box::new(scrut),
            body: Box::new(body),
        }
    }

    pub fn pi_code(mu: Modality, dom: Tm, fam: Tm) -> Tm {
        Tm::PiCode(mu, Box::new(dom), Box::new(fam))
    }

    pub fn sig_code(dom: Tm, fam: Tm) -> Tm {
        Tm::SigCode(Box::new(dom), Box::new(fam))
    }

    pub fn mod_code(mu: Modality, a: Tm) -> Tm {
        Tm::ModCode(mu, Box::new(a))
    }

    pub fn up(kind: CodeKind, t: Tm) -> Tm {
        Tm::Up(kind, Box::new(t))
    }

    pub fn down(kind: CodeKind, t: Tm) -> Tm {
        Tm::Down(kind, Box::new(t))
    }

    pub fn ann(t: Tm, a: Ty) -> Tm {
        Tm::Ann(Box::new(t), Box::new(a))
    }
}
