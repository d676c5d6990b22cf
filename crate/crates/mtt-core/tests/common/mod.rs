//! Shared test fixtures: seeded generators for well-typed closed boolean
//! terms (by redex insertion), eta-long normal forms and normal types over
//! the guarded theory, and the standard modal combinators.

#![allow(dead_code)]


use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use mtt_core::mode_theory::{Cell, Guarded, Modality, ModeTheory, GUARDED_MODE};
use mtt_core::normal::{nf_eq, Ne, Nf, NfTy};
use mtt_core::rename::{rename_nfty, Ren};
use mtt_core::syntax::{CodeKind, Ctx, Index, Tm, Ty};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gid() -> Modality {
    Modality::identity(GUARDED_MODE)
}

pub fn later() -> Modality {
    Guarded::power(1)
}

pub fn icell(m: &Modality) -> Cell {
    Cell::identity(m.clone())
}

/// A single well-typed closed boolean leaf.
fn leaf(rng: &mut ChaCha8Rng) -> Tm {
    if rng.gen_bool(0.5) {
        Tm::TrueC
    } else {
        Tm::FalseC
    }
}

/// One redex layer around a closed boolean term. Every wrap produced with
/// `preserve = true` beta-reduces to its input, so it is a beta-expansion;
/// with `preserve = false` branch-switching wraps are allowed too.
pub fn wrap_bool(rng: &mut ChaCha8Rng, _th: &Guarded, t: Tm, preserve: bool, crisp: bool) -> Tm {
    let l = later();
    let one = gid();
    let mut choices: Vec<u8> = vec![0, 1, 2, 3, 4, 5, 6, 7];
    if crisp {
        choices.push(8);
    }
    if !preserve {
        choices.push(9);
        choices.push(10);
    }
    match *choices.choose(rng).unwrap() {
        // identity application
        0 => Tm::app(one.clone(), Tm::lam(Tm::var(0, icell(&one))), t),
        // constant function applied to a junk argument
        1 => Tm::app(one, Tm::lam(t), leaf(rng)),
        // modal constant function; the argument is checked under the lock
        2 => Tm::app(l, Tm::lam(t), leaf(rng)),
        // box and immediately unbox through an unused binder
        3 => Tm::letmod(one, l.clone(), Ty::Bool, Tm::mkbox(l, leaf(rng)), t),
        // box the subject itself and project it back out (identity modality,
        // so the binder is usable without locks)
        4 => Tm::letmod(
            one.clone(),
            one.clone(),
            Ty::Bool,
            Tm::mkbox(one.clone(), t),
            Tm::var(0, icell(&one)),
        ),
        // first projection of an ascribed pair
        5 => Tm::fst(Tm::ann(
            Tm::pair(t, leaf(rng)),
            Ty::sig(Ty::Bool, Ty::Bool),
        )),
        // J on refl with a constant refl case
        6 => Tm::j(Ty::Bool, t, Tm::refl(leaf(rng))),
        // coercion round trip through the boolean code
        7 => Tm::up(CodeKind::Bool, Tm::down(CodeKind::Bool, Tm::ann(t, Ty::Bool))),
        // crisp J on refl under the later modality
        8 => Tm::crisp_j(later(), Ty::Bool, t, Tm::refl(leaf(rng))),
        // branch-selecting if (not a beta-expansion of t)
        9 => Tm::if_(Ty::Bool, t, leaf(rng), leaf(rng)),
        // if with a variable scrutinee under a binder
        10 => Tm::app(
            one.clone(),
            Tm::lam(Tm::if_(
                Ty::Bool,
                Tm::var(0, icell(&one)),
                t,
                Tm::var(0, icell(&one)),
            )),
            leaf(rng),
        ),
        _ => unreachable!(),
    }
}

/// Builds a random closed well-typed boolean by iterated redex insertion
/// over the full constructor set, including modal eliminators.
pub fn gen_closed_bool(rng: &mut ChaCha8Rng, th: &Guarded, layers: usize, crisp: bool) -> Tm {
    let mut t = leaf(rng);
    for _ in 0..layers {
        t = wrap_bool(rng, th, t, false, crisp);
    }
    t
}

/// Applies `n` beta-expansions (value-preserving wraps) to a closed boolean.
pub fn beta_expand(rng: &mut ChaCha8Rng, th: &Guarded, t: &Tm, n: usize, crisp: bool) -> Tm {
    let mut out = t.clone();
    for _ in 0..n {
        out = wrap_bool(rng, th, out, true, crisp);
    }
    out
}

/// A context together with the data the normal-form generator needs about
/// each binder: its annotation and a shallow description of its type.
#[derive(Debug, Clone)]
pub struct GenCtx {
    pub ctx: Ctx,
    /// binder annotations and types, outermost first
    pub binders: Vec<(Modality, Ty)>,
    /// lock word length after each binder (locks between that binder and the
    /// context end)
    pub locks_after: Vec<usize>,
    /// total trailing locks
    pub total_locks: usize,
}

impl GenCtx {
    pub fn empty() -> GenCtx {
        GenCtx {
            ctx: Ctx::Empty(GUARDED_MODE),
            binders: Vec::new(),
            locks_after: Vec::new(),
            total_locks: 0,
        }
    }

    pub fn bind(&self, annot: Modality, ty: Ty) -> GenCtx {
        let mut out = self.clone();
        out.ctx = out.ctx.ext(annot.clone(), ty.clone());
        out.binders.push((annot, ty));
        out.locks_after.push(0);
        out
    }

    pub fn lock(&self, word: usize) -> GenCtx {
        let mut out = self.clone();
        out.ctx = out.ctx.lock(Guarded::power(word));
        for l in &mut out.locks_after {
            *l += word;
        }
        out.total_locks += word;
        out
    }

    /// Index and cell for each binder reachable from the context end. Only
    /// binders with closed types are offered: their stored type reads the
    /// same at any depth, which keeps the generator's bookkeeping simple.
    pub fn usable_vars(&self, th: &Guarded) -> Vec<(Index, Cell, Ty)> {
        let n = self.binders.len();
        let mut out = Vec::new();
        for (pos, (annot, ty)) in self.binders.iter().enumerate() {
            if !ty_closed(ty, 0) {
                continue;
            }
            let idx = Index((n - 1 - pos) as u32);
            let locks = Guarded::power(self.locks_after[pos]);
            if let Some(cell) = th.find_cell(annot, &locks) {
                out.push((idx, cell, ty.clone()));
            }
        }
        out
    }
}

/// Pool of generation contexts over the guarded theory.
pub fn context_pool() -> Vec<GenCtx> {
    let one = gid();
    let l = later();
    let e = GenCtx::empty();
    vec![
        e.clone(),
        e.bind(one.clone(), Ty::Bool),
        e.bind(one.clone(), Ty::pi(one.clone(), Ty::Bool, Ty::Bool)),
        e.bind(l.clone(), Ty::Bool).lock(1),
        e.bind(one.clone(), Ty::modal(l.clone(), Ty::Bool)),
        e.bind(one.clone(), Ty::sig(Ty::Bool, Ty::Bool)),
        e.bind(one.clone(), Ty::id(Ty::Bool, Tm::TrueC, Tm::TrueC)),
        e.bind(one.clone(), Ty::Bool).bind(one.clone(), Ty::Uni),
        e.bind(one.clone(), Ty::dec(Tm::mod_code(l.clone(), Tm::BoolCode))),
        e.bind(one.clone(), Ty::Bool).lock(1),
        e.bind(one, Ty::pi(l, Ty::Bool, Ty::Bool)),
    ]
}

/// Weakens a normal type across one binder.
fn wk_nfty(th: &Guarded, t: &NfTy) -> NfTy {
    rename_nfty(th, &Ren::Wk, t).unwrap()
}

fn tm_closed(t: &Tm, depth: u32) -> bool {
    match t {
        Tm::Var(Index(k), _) => *k < depth,
        Tm::Lam(b) => tm_closed(b, depth + 1),
        Tm::App(_, f, a) => tm_closed(f, depth) && tm_closed(a, depth),
        Tm::Pair(a, b) => tm_closed(a, depth) && tm_closed(b, depth),
        Tm::Fst(p) | Tm::Snd(p) | Tm::Refl(p) | Tm::MkBox(_, p) | Tm::Up(_, p)
        | Tm::Down(_, p) | Tm::ModCode(_, p) => tm_closed(p, depth),
        Tm::TrueC | Tm::FalseC | Tm::BoolCode => true,
        Tm::If(m, a, b, s) => {
            ty_closed(m, depth + 1)
                && tm_closed(a, depth)
                && tm_closed(b, depth)
                && tm_closed(s, depth)
        }
        Tm::J(m, rc, s) => {
            ty_closed(m, depth + 3) && tm_closed(rc, depth + 1) && tm_closed(s, depth)
        }
        Tm::CrispJ(_, m, rc, s) => {
            ty_closed(m, depth + 3) && tm_closed(rc, depth + 1) && tm_closed(s, depth)
        }
        Tm::LetMod { motive, scrut, body, .. } => {
            ty_closed(motive, depth + 1) && tm_closed(scrut, depth) && tm_closed(body, depth + 1)
        }
        Tm::PiCode(_, a, b) | Tm::SigCode(a, b) => {
            tm_closed(a, depth) && tm_closed(b, depth + 1)
        }
        Tm::Ann(a, ty) => tm_closed(a, depth) && ty_closed(ty, depth),
    }
}

fn ty_closed(t: &Ty, depth: u32) -> bool {
    match t {
        Ty::Pi(_, a, b) | Ty::Sig(a, b) => ty_closed(a, depth) && ty_closed(b, depth + 1),
        Ty::Bool | Ty::Uni => true,
        Ty::Id(a, l, r) => ty_closed(a, depth) && tm_closed(l, depth) && tm_closed(r, depth),
        Ty::Mod(_, a) => ty_closed(a, depth),
        Ty::Dec(c) => tm_closed(c, depth),
    }
}

pub struct NfGen<'a> {
    pub th: &'a Guarded,
    pub rng: ChaCha8Rng,
}

impl<'a> NfGen<'a> {
    pub fn new(th: &'a Guarded, seed: u64) -> NfGen<'a> {
        NfGen { th, rng: rng(seed) }
    }

    /// A random normal type valid in `ctx`, with the given size budget. With
    /// `inhabited`, the type is kept within the fragment `gen_nf` can always
    /// populate (reflexive identities, canonical codes under decoding).
    pub fn gen_nfty(&mut self, ctx: &GenCtx, budget: usize, inhabited: bool) -> NfTy {
        if budget == 0 {
            return if self.rng.gen_bool(0.7) { NfTy::Bool } else { NfTy::Uni };
        }
        match self.rng.gen_range(0..8u8) {
            0 => NfTy::Bool,
            1 => NfTy::Uni,
            2 => {
                let word = self.rng.gen_range(1..=2usize);
                let nu = Guarded::power(word);
                let inner = self.gen_nfty(&ctx.lock(word), budget - 1, inhabited);
                NfTy::Mod(nu, Box::new(inner))
            }
            3 => {
                let mu = if self.rng.gen_bool(0.5) { gid() } else { later() };
                let dom = self.gen_nfty(&ctx.lock(mu.word.len()), budget - 1, false);
                let dom_ty = mtt_core::normal::decode_nfty(&dom);
                let cod = self.gen_nfty(&ctx.bind(mu.clone(), dom_ty), budget - 1, inhabited);
                NfTy::Pi(mu, Box::new(dom), Box::new(cod))
            }
            4 => {
                let fst = self.gen_nfty(ctx, budget - 1, inhabited);
                // non-dependent second component, weakened across the binder
                let snd = self.gen_nfty(ctx, budget - 1, inhabited);
                NfTy::Sig(Box::new(fst), Box::new(wk_nfty(self.th, &snd)))
            }
            5 => {
                // identity over booleans; reflexive when it must be inhabited
                let lhs = self.gen_nf(ctx, &NfTy::Bool, budget - 1);
                let rhs = if inhabited || self.rng.gen_bool(0.5) {
                    lhs.clone()
                } else {
                    self.gen_nf(ctx, &NfTy::Bool, budget - 1)
                };
                NfTy::Id(Box::new(NfTy::Bool), Box::new(lhs), Box::new(rhs))
            }
            6 => NfTy::Dec(Box::new(self.gen_code(ctx, budget - 1, !inhabited))),
            _ => NfTy::Bool,
        }
    }

    /// A random code normal form at the universe.
    pub fn gen_code(&mut self, ctx: &GenCtx, budget: usize, allow_neutral: bool) -> Nf {
        if budget == 0 {
            return Nf::BoolCode;
        }
        match self.rng.gen_range(0..6u8) {
            0 | 1 => Nf::BoolCode,
            2 => {
                let word = self.rng.gen_range(1..=2usize);
                let inner = self.gen_code(&ctx.lock(word), budget - 1, allow_neutral);
                Nf::ModCode(Guarded::power(word), Box::new(inner))
            }
            3 => {
                let mu = if self.rng.gen_bool(0.5) { gid() } else { later() };
                let dom = self.gen_code(&ctx.lock(mu.word.len()), budget - 1, allow_neutral);
                let dom_ty = Ty::dec(mtt_core::normal::decode_nf(&dom));
                let fam = self.gen_code(&ctx.bind(mu.clone(), dom_ty), budget - 1, allow_neutral);
                Nf::PiCode(mu, Box::new(dom), Box::new(fam))
            }
            4 => {
                let dom = self.gen_code(ctx, budget - 1, allow_neutral);
                let dom_ty = Ty::dec(mtt_core::normal::decode_nf(&dom));
                let fam = self.gen_code(&ctx.bind(gid(), dom_ty), budget - 1, allow_neutral);
                Nf::SigCode(Box::new(dom), Box::new(fam))
            }
            _ if allow_neutral => match self.gen_ne(ctx, &NfTy::Uni, budget - 1) {
                Some(e) => Nf::Inj(Box::new(e)),
                None => Nf::BoolCode,
            },
            _ => Nf::BoolCode,
        }
    }

    /// A random eta-long normal form of the given normal type.
    pub fn gen_nf(&mut self, ctx: &GenCtx, ty: &NfTy, budget: usize) -> Nf {
        match ty {
            NfTy::Pi(mu, dom, cod) => {
                let dom_ty = mtt_core::normal::decode_nfty(dom);
                let inner = ctx.bind(mu.clone(), dom_ty);
                Nf::Lam(Box::new(self.gen_nf(&inner, cod, budget.saturating_sub(1))))
            }
            NfTy::Sig(fst, snd) => {
                let a = self.gen_nf(ctx, fst, budget.saturating_sub(1));
                // snd is non-dependent by construction of gen_nfty, so it can
                // be strengthened back below the binder for the component
                let snd_base = rename_nfty(
                    self.th,
                    &Ren::Ext(Box::new(Ren::Id), Index(0), icell(&gid())),
                    snd,
                )
                .expect("strengthening a non-dependent component");
                let b = self.gen_nf(ctx, &snd_base, budget.saturating_sub(1));
                Nf::Pair(Box::new(a), Box::new(b))
            }
            NfTy::Bool => {
                if budget > 0 && self.rng.gen_bool(0.4) {
                    if let Some(e) = self.gen_ne(ctx, ty, budget - 1) {
                        return Nf::Inj(Box::new(e));
                    }
                }
                if self.rng.gen_bool(0.5) {
                    Nf::True
                } else {
                    Nf::False
                }
            }
            NfTy::Id(_, lhs, rhs) => {
                // inhabited identity targets are reflexive by construction
                if nf_eq(self.th, lhs, rhs) && self.rng.gen_bool(0.6) {
                    Nf::Refl(Box::new(lhs.as_ref().clone()))
                } else {
                    match self.gen_ne(ctx, ty, budget) {
                        Some(e) => Nf::Inj(Box::new(e)),
                        None => Nf::Refl(Box::new(lhs.as_ref().clone())),
                    }
                }
            }
            NfTy::Mod(nu, inner) => {
                if budget > 0 && self.rng.gen_bool(0.3) {
                    if let Some(e) = self.gen_ne(ctx, ty, budget - 1) {
                        return Nf::Inj(Box::new(e));
                    }
                }
                let body = self.gen_nf(&ctx.lock(nu.word.len()), inner, budget.saturating_sub(1));
                Nf::MkBox(nu.clone(), Box::new(body))
            }
            NfTy::Uni => {
                if budget > 0 && self.rng.gen_bool(0.3) {
                    if let Some(e) = self.gen_ne(ctx, ty, budget - 1) {
                        return Nf::Inj(Box::new(e));
                    }
                }
                self.gen_code(ctx, budget, false)
            }
            NfTy::Dec(code) => {
                if budget > 0 && self.rng.gen_bool(0.4) {
                    if let Some(e) = self.gen_ne(ctx, ty, budget - 1) {
                        return Nf::Inj(Box::new(e));
                    }
                }
                match &**code {
                    Nf::BoolCode => Nf::Down(
                        CodeKind::Bool,
                        Box::new(self.gen_nf(ctx, &NfTy::Bool, budget.saturating_sub(1))),
                    ),
                    Nf::ModCode(nu, a) => {
                        let unfolded =
                            NfTy::Mod(nu.clone(), Box::new(NfTy::Dec(a.clone())));
                        Nf::Down(
                            CodeKind::Mod,
                            Box::new(self.gen_nf(ctx, &unfolded, budget.saturating_sub(1))),
                        )
                    }
                    Nf::PiCode(mu, a, b) => {
                        let unfolded = NfTy::Pi(
                            mu.clone(),
                            Box::new(NfTy::Dec(a.clone())),
                            Box::new(NfTy::Dec(b.clone())),
                        );
                        Nf::Down(
                            CodeKind::Pi,
                            Box::new(self.gen_nf(ctx, &unfolded, budget.saturating_sub(1))),
                        )
                    }
                    Nf::SigCode(a, b) => {
                        let unfolded = NfTy::Sig(
                            Box::new(NfTy::Dec(a.clone())),
                            Box::new(NfTy::Dec(b.clone())),
                        );
                        Nf::Down(
                            CodeKind::Sig,
                            Box::new(self.gen_nf(ctx, &unfolded, budget.saturating_sub(1))),
                        )
                    }
                    // gen_nfty only asks for inhabitants at canonical codes
                    _ => match self.gen_ne(ctx, ty, budget) {
                        Some(e) => Nf::Inj(Box::new(e)),
                        None => panic!("uninhabited decoding requested from the generator"),
                    },
                }
            }
        }
    }

    /// Tries to build a neutral of the given type from some usable context
    /// variable, driving it with constant-motive eliminations.
    pub fn gen_ne(&mut self, ctx: &GenCtx, target: &NfTy, budget: usize) -> Option<Ne> {
        let vars = ctx.usable_vars(self.th);
        if vars.is_empty() {
            return None;
        }
        let mut shuffled = vars;
        shuffled.shuffle(&mut self.rng);
        for (idx, cell, ty) in shuffled {
            let head = Ne::Var(idx, cell);
            if let Some(ne) = self.drive(ctx, head, &ty, target, budget) {
                return Some(ne);
            }
        }
        None
    }

    /// Extends `head : ty` by eliminations until it reaches `target`.
    fn drive(
        &mut self,
        ctx: &GenCtx,
        head: Ne,
        ty: &Ty,
        target: &NfTy,
        budget: usize,
    ) -> Option<Ne> {
        // direct hit: the variable's type normalizes to the target
        let ty_nf = mtt_core::nbe::normalize_ty(self.th, &ctx.ctx, ty).ok()?;
        if mtt_core::normal::nfty_eq(self.th, &ty_nf, target) {
            return Some(head);
        }
        if budget == 0 {
            return None;
        }
        let target_syntax = mtt_core::normal::decode_nfty(target);
        match ty {
            // scrutinize a boolean through a constant motive
            Ty::Bool => {
                let t = self.gen_nf(ctx, target, budget - 1);
                let f = self.gen_nf(ctx, target, budget - 1);
                Some(Ne::If(
                    Box::new(wk_nfty(self.th, target)),
                    Box::new(head),
                    Box::new(t),
                    Box::new(f),
                ))
            }
            Ty::Pi(mu, dom, cod) => {
                let dom_nf = mtt_core::nbe::normalize_ty(
                    self.th,
                    &ctx.lock(mu.word.len()).ctx,
                    dom,
                )
                .ok()?;
                let arg = self.gen_nf(&ctx.lock(mu.word.len()), &dom_nf, budget - 1);
                let applied = Ne::App(mu.clone(), Box::new(head), Box::new(arg));
                self.drive(ctx, applied, cod, target, budget - 1)
            }
            Ty::Sig(a, b) => {
                if self.rng.gen_bool(0.5) {
                    self.drive(ctx, Ne::Fst(Box::new(head)), a, target, budget - 1)
                } else {
                    self.drive(ctx, Ne::Snd(Box::new(head)), b, target, budget - 1)
                }
            }
            Ty::Mod(nu, inner) => {
                // eliminate with a constant motive; the body may use the
                // unboxed contents
                let body_ctx = ctx.bind(nu.clone(), (**inner).clone());
                let body = self.gen_nf(&body_ctx, &wk_nfty(self.th, target), budget - 1);
                Some(Ne::LetMod {
                    frame: gid(),
                    main: nu.clone(),
                    motive: Box::new(wk_nfty(self.th, target)),
                    scrut: Box::new(head),
                    body: Box::new(body),
                })
            }
            Ty::Id(a, _, _) => {
                let rc_ctx = ctx.bind(gid(), (**a).clone());
                let rc = self.gen_nf(&rc_ctx, &wk_nfty(self.th, target), budget - 1);
                let motive = wk_nfty(
                    self.th,
                    &wk_nfty(self.th, &wk_nfty(self.th, target)),
                );
                Some(Ne::J(Box::new(motive), Box::new(rc), Box::new(head)))
            }
            Ty::Dec(_) | Ty::Uni => {
                let _ = target_syntax;
                None
            }
        }
    }
}

/// The standard combinators over the guarded theory, as open terms with the
/// subject a context variable.

/// `triv : <id|Bool> -> Bool` applied to `mod_id b` for the variable `b`.
pub fn triv_roundtrip_of_var() -> (Ctx, Ty, Tm) {
    let one = gid();
    let ctx = Ctx::Empty(GUARDED_MODE).ext(one.clone(), Ty::Bool);
    let t = Tm::letmod(
        one.clone(),
        one.clone(),
        Ty::Bool,
        Tm::mkbox(one.clone(), Tm::var(0, icell(&one))),
        Tm::var(0, icell(&one)),
    );
    (ctx, Ty::Bool, t)
}

/// `comp_inv : <mu.nu|A> -> <mu|<nu|A>>` applied to `mod_{mu.nu} v`.
pub fn comp_inv_applied(th: &Guarded, mu: &Modality, nu: &Modality, v: Tm) -> (Ty, Tm) {
    let one = gid();
    let comp = th.compose_mod(mu, nu).unwrap();
    let result_ty = Ty::modal(mu.clone(), Ty::modal(nu.clone(), Ty::Bool));
    let t = Tm::letmod(
        one,
        comp.clone(),
        result_ty.clone(),
        Tm::mkbox(comp.clone(), v),
        Tm::mkbox(mu.clone(), Tm::mkbox(nu.clone(), Tm::var(0, icell(&comp)))),
    );
    (result_ty, t)
}

/// `comp : <mu|<nu|A>> -> <mu.nu|A>` applied to a scrutinee.
pub fn comp_applied(th: &Guarded, mu: &Modality, nu: &Modality, scrut: Tm) -> (Ty, Tm) {
    let one = gid();
    let comp = th.compose_mod(mu, nu).unwrap();
    let result_ty = Ty::modal(comp.clone(), Ty::Bool);
    let inner = Tm::letmod(
        mu.clone(),
        nu.clone(),
        result_ty.clone(),
        Tm::var(0, icell(mu)),
        Tm::mkbox(comp.clone(), Tm::var(0, icell(&comp))),
    );
    let t = Tm::letmod(one, mu.clone(), result_ty.clone(), scrut, inner);
    (result_ty, t)
}

/// `zap : <mu|(Bool -> Bool)> -> <mu|Bool> -> <mu|Bool>` fully applied.
pub fn zap_applied(mu: &Modality, f: Tm, a: Tm) -> (Ty, Tm) {
    let one = gid();
    let result_ty = Ty::modal(mu.clone(), Ty::Bool);
    let innermost = Tm::mkbox(
        mu.clone(),
        Tm::app(
            one.clone(),
            Tm::var(1, icell(mu)),
            Tm::var(0, icell(mu)),
        ),
    );
    let inner = Tm::letmod(one.clone(), mu.clone(), result_ty.clone(), a, innermost);
    let t = Tm::letmod(one, mu.clone(), result_ty.clone(), f, inner);
    (result_ty, t)
}

/// `zap' : (mu| f : Bool -> Bool) -> (mu| a : Bool) -> <mu|Bool>`: boxes the
/// application directly through the modalized product.
pub fn zap_prime() -> (Ty, Tm) {
    let one = gid();
    let l = later();
    let fun = Ty::pi(one.clone(), Ty::Bool, Ty::Bool);
    let ty = Ty::pi(
        l.clone(),
        fun,
        Ty::pi(l.clone(), Ty::Bool, Ty::modal(l.clone(), Ty::Bool)),
    );
    let body = Tm::mkbox(
        l.clone(),
        Tm::app(
            one,
            Tm::var(1, Cell::identity(l.clone())),
            Tm::var(0, Cell::identity(l)),
        ),
    );
    (ty, Tm::lam(Tm::lam(body)))
}
