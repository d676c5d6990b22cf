//! Normal forms, neutral forms, and normal types, with decoding back to core
//! syntax and equality decided through the mode theory.
//!
//! Neutrals are chains of eliminations blocked on a 2-cell-annotated variable.
//! `Nf::Inj` wraps a neutral only at types without an eta law (booleans,
//! identity, modal types, the universe, and decoded codes); functions and
//! pairs are always eta-long.

use crate::mode_theory::{Cell, Modality, ModeTheory};
use crate::syntax::{CodeKind, Index, Tm, Ty};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Nf {
    Lam(Box<Nf>),
    Pair(Box<Nf>, Box<Nf>),
    True,
    False,
    Refl(Box<Nf>),
    MkBox(Modality, Box<Nf>),
    Inj(Box<Ne>),
    PiCode(Modality, Box<Nf>, Box<Nf>),
    SigCode(Box<Nf>, Box<Nf>),
    BoolCode,
    ModCode(Modality, Box<Nf>),
    Down(CodeKind, Box<Nf>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ne {
    Var(Index, Cell),
    App(Modality, Box<Ne>, Box<Nf>),
    Fst(Box<Ne>),
    Snd(Box<Ne>),
    /// `If(motive, scrutinee, then, else)`; the motive is under one boolean
    /// binder.
    If(Box<NfTy>, Box<Ne>, Box<Nf>, Box<Nf>),
    /// `J(motive, refl_case, scrutinee)`.
    J(Box<NfTy>, Box<Nf>, Box<Ne>),
    CrispJ(Modality, Box<NfTy>, Box<Nf>, Box<Ne>),
    LetMod {
        frame: Modality,
        main: Modality,
        motive: Box<NfTy>,
        scrut: Box<Ne>,
        body: Box<Nf>,
    },
    Up(CodeKind, Box<Ne>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NfTy {
    Pi(Modality, Box<NfTy>, Box<NfTy>),
    Sig(Box<NfTy>, Box<NfTy>),
    Bool,
    Id(Box<NfTy>, Box<Nf>, Box<Nf>),
    Mod(Modality, Box<NfTy>),
    Uni,
    /// The argument is either `Nf::Inj` of a neutral code or a code normal
    /// form.
    Dec(Box<Nf>),
}

pub fn decode_nf(u: &Nf) -> Tm {
    match u {
        Nf::Lam(b) => Tm::Lam(Box::new(decode_nf(b))),
        Nf::Pair(a, b) => Tm::Pair(Box::new(decode_nf(a)), Box::new(decode_nf(b))),
        Nf::True => Tm::TrueC,
        Nf::False => Tm::FalseC,
        Nf::Refl(a) => Tm::Refl(Box::new(decode_nf(a))),
        Nf::MkBox(mu, a) => Tm::MkBox(mu.clone(), Box::new(decode_nf(a))),
        Nf::Inj(e) => decode_ne(e),
        Nf::PiCode(mu, a, b) => {
            Tm::PiCode(mu.clone(), Box::new(decode_nf(a)), Box::new(decode_nf(b)))
        }
        Nf::SigCode(a, b) => Tm::SigCode(Box::new(decode_nf(a)), Box::new(decode_nf(b))),
        Nf::BoolCode => Tm::BoolCode,
        Nf::ModCode(mu, a) => Tm::ModCode(mu.clone(), Box::new(decode_nf(a))),
        Nf::Down(k, a) => Tm::Down(*k, Box::new(decode_nf(a))),
    }
}

pub fn decode_ne(e: &Ne) -> Tm {
    match e {
        Ne::Var(k, c) => Tm::Var(*k, c.clone()),
        Ne::App(mu, f, a) => Tm::App(mu.clone(), Box::new(decode_ne(f)), Box::new(decode_nf(a))),
        Ne::Fst(e) => Tm::Fst(Box::new(decode_ne(e))),
        Ne::Snd(e) => Tm::Snd(Box::new(decode_ne(e))),
        Ne::If(motive, scrut, t, f) => Tm::If(
            Box::new(decode_nfty(motive)),
            Box::new(decode_nf(t)),
            Box::new(decode_nf(f)),
            Box::new(decode_ne(scrut)),
        ),
        Ne::J(motive, rc, scrut) => Tm::J(
            Box::new(decode_nfty(motive)),
            Box::new(decode_nf(rc)),
            Box::new(decode_ne(scrut)),
        ),
        Ne::CrispJ(mu, motive, rc, scrut) => Tm::CrispJ(
            mu.clone(),
            Box::new(decode_nfty(motive)),
            Box::new(decode_nf(rc)),
            Box::new(decode_ne(scrut)),
        ),
        Ne::LetMod { frame, main, motive, scrut, body } => Tm::LetMod {
            frame: frame.clone(),
            main: main.clone(),
            motive: Box::new(decode_nfty(motive)),
            scrut: Box::new(decode_ne(scrut)),
            body: Box::new(decode_nf(body)),
        },
        Ne::Up(k, e) => Tm::Up(*k, Box::new(decode_ne(e))),
    }
}

pub fn decode_nfty(tau: &NfTy) -> Ty {
    match tau {
        NfTy::Pi(mu, a, b) => Ty::Pi(
            mu.clone(),
            Box::new(decode_nfty(a)),
            Box::new(decode_nfty(b)),
        ),
        NfTy::Sig(a, b) => Ty::Sig(Box::new(decode_nfty(a)), Box::new(decode_nfty(b))),
        NfTy::Bool => Ty::Bool,
        NfTy::Id(a, l, r) => Ty::Id(
            Box::new(decode_nfty(a)),
            Box::new(decode_nf(l)),
            Box::new(decode_nf(r)),
        ),
        NfTy::Mod(mu, a) => Ty::Mod(mu.clone(), Box::new(decode_nfty(a))),
        NfTy::Uni => Ty::Uni,
        NfTy::Dec(u) => Ty::Dec(Box::new(decode_nf(u))),
    }
}

/// Structural equality with `eq_mod`/`eq_cell` at every modality and cell
/// position.
pub fn nf_eq(th: &dyn ModeTheory, u: &Nf, v: &Nf) -> bool {
    match (u, v) {
        (Nf::Lam(a), Nf::Lam(b)) => nf_eq(th, a, b),
        (Nf::Pair(a0, a1), Nf::Pair(b0, b1)) => nf_eq(th, a0, b0) && nf_eq(th, a1, b1),
        (Nf::True, Nf::True) | (Nf::False, Nf::False) | (Nf::BoolCode, Nf::BoolCode) => true,
        (Nf::Refl(a), Nf::Refl(b)) => nf_eq(th, a, b),
        (Nf::MkBox(m, a), Nf::MkBox(n, b)) => th.eq_mod(m, n) && nf_eq(th, a, b),
        (Nf::Inj(a), Nf::Inj(b)) => ne_eq(th, a, b),
        (Nf::PiCode(m, a0, a1), Nf::PiCode(n, b0, b1)) => {
            th.eq_mod(m, n) && nf_eq(th, a0, b0) && nf_eq(th, a1, b1)
        }
        (Nf::SigCode(a0, a1), Nf::SigCode(b0, b1)) => nf_eq(th, a0, b0) && nf_eq(th, a1, b1),
        (Nf::ModCode(m, a), Nf::ModCode(n, b)) => th.eq_mod(m, n) && nf_eq(th, a, b),
        (Nf::Down(j, a), Nf::Down(k, b)) => j == k && nf_eq(th, a, b),
        _ => false,
    }
}

pub fn ne_eq(th: &dyn ModeTheory, e: &Ne, f: &Ne) -> bool {
    match (e, f) {
        (Ne::Var(j, a), Ne::Var(k, b)) => j == k && th.eq_cell(a, b),
        (Ne::App(m, e0, u0), Ne::App(n, e1, u1)) => {
            th.eq_mod(m, n) && ne_eq(th, e0, e1) && nf_eq(th, u0, u1)
        }
        (Ne::Fst(a), Ne::Fst(b)) | (Ne::Snd(a), Ne::Snd(b)) => ne_eq(th, a, b),
        (Ne::If(m0, e0, t0, f0), Ne::If(m1, e1, t1, f1)) => {
            nfty_eq(th, m0, m1) && ne_eq(th, e0, e1) && nf_eq(th, t0, t1) && nf_eq(th, f0, f1)
        }
        (Ne::J(m0, r0, e0), Ne::J(m1, r1, e1)) => {
            nfty_eq(th, m0, m1) && nf_eq(th, r0, r1) && ne_eq(th, e0, e1)
        }
        (Ne::CrispJ(mu0, m0, r0, e0), Ne::CrispJ(mu1, m1, r1, e1)) => {
            th.eq_mod(mu0, mu1) && nfty_eq(th, m0, m1) && nf_eq(th, r0, r1) && ne_eq(th, e0, e1)
        }
        (
            Ne::LetMod { frame: f0, main: m0, motive: t0, scrut: s0, body: b0 },
            Ne::LetMod { frame: f1, main: m1, motive: t1, scrut: s1, body: b1 },
        ) => {
            th.eq_mod(f0, f1)
                && th.eq_mod(m0, m1)
                && nfty_eq(th, t0, t1)
                && ne_eq(th, s0, s1)
                && nf_eq(th, b0, b1)
        }
        (Ne::Up(j, a), Ne::Up(k, b)) => j == k && ne_eq(th, a, b),
        _ => false,
    }
}

pub fn nfty_eq(th: &dyn ModeTheory, s: &NfTy, t: &NfTy) -> bool {
    match (s, t) {
        (NfTy::Pi(m, a0, b0), NfTy::Pi(n, a1, b1)) => {
            th.eq_mod(m, n) && nfty_eq(th, a0, a1) && nfty_eq(th, b0, b1)
        }
        (NfTy::Sig(a0, b0), NfTy::Sig(a1, b1)) => nfty_eq(th, a0, a1) && nfty_eq(th, b0, b1),
        (NfTy::Bool, NfTy::Bool) | (NfTy::Uni, NfTy::Uni) => true,
        (NfTy::Id(a0, l0, r0), NfTy::Id(a1, l1, r1)) => {
            nfty_eq(th, a0, a1) && nf_eq(th, l0, l1) && nf_eq(th, r0, r1)
        }
        (NfTy::Mod(m, a), NfTy::Mod(n, b)) => th.eq_mod(m, n) && nfty_eq(th, a, b),
        (NfTy::Dec(a), NfTy::Dec(b)) => nf_eq(th, a, b),
        _ => false,
    }
}
