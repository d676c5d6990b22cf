//! Bidirectional type checking with conversion decided by normalization.
//!
//! Introductions for types with eta laws (lambdas, pairs) and boxes and refl
//! check; variables, eliminators (which carry their motives), codes, and
//! coercions infer. Conversion normalizes both sides and compares normal
//! forms structurally, so it is decidable exactly when the mode theory is.

use std::rc::Rc;

use thiserror::Error;

use crate::mode_theory::{Cell, Modality, Mode, ModeTheory};
use crate::nbe::{
    do_fst, eval, eval_ty, reflect, reify, reify_ty, Closure, Env, EvalError, Lvl, SemNe,
    TyClosure, VTy, Value,
};
use crate::normal::{nf_eq, nfty_eq, Nf, NfTy};
use crate::syntax::{CodeKind, Index, Tm, Ty};

/// A side of a failed conversion, rendered as a normal form.
#[derive(Debug, Clone)]
pub enum Mismatch {
    Ty(Box<NfTy>),
    Tm(Box<Nf>),
}

#[derive(Debug, Clone, Error)]
pub enum TypeError {
    #[error("variable index {0} out of range")]
    ScopeError(u32),
    #[error("no cell with the required endpoints: have {have:?}, want {want:?}")]
    NoSuchCell { have: Modality, want: Modality },
    #[error("modality mismatch: have {have:?}, want {want:?}")]
    ModeMismatch { have: Modality, want: Modality },
    #[error("expected a function type")]
    NotAFunction,
    #[error("expected a pair type")]
    NotAPair,
    #[error("expected a modal type")]
    NotAMod,
    #[error("expected an identity type")]
    NotAnIdentity,
    #[error("type mismatch")]
    ConversionFailure { expected: Mismatch, actual: Mismatch },
    #[error("universe error: {0}")]
    UniverseError(String),
    #[error("crisp identity induction is disabled")]
    CrispDisabled,
    #[error("duplicate definition of {0}")]
    DuplicateError(String),
    #[error("cannot infer a type for this term; annotate it ({0})")]
    CannotInfer(&'static str),
    #[error("internal evaluation failure: {0}")]
    Internal(#[from] EvalError),
}

impl From<crate::mode_theory::ModeTheoryError> for TypeError {
    fn from(e: crate::mode_theory::ModeTheoryError) -> Self {
        TypeError::Internal(EvalError::ModeTheory(e))
    }
}

type TResult<T> = Result<T, TypeError>;

#[derive(Debug, Clone)]
enum CtxEntry {
    Bind { annot: Modality, ty: Rc<VTy> },
    LockE(Modality),
}

/// Semantic elaboration context: a telescope of modality-annotated type
/// values interleaved with locks, paired with the evaluation environment it
/// mirrors.
#[derive(Debug, Clone)]
pub struct ElabCtx<'a> {
    th: &'a dyn ModeTheory,
    entries: Vec<CtxEntry>,
    env: Env,
    mode: Mode,
    depth: u32,
    crisp: bool,
}

impl<'a> ElabCtx<'a> {
    pub fn new(th: &'a dyn ModeTheory, mode: Mode, crisp: bool) -> ElabCtx<'a> {
        ElabCtx { th, entries: Vec::new(), env: Env::new(), mode, depth: 0, crisp }
    }

    /// Elaborates a syntactic context, checking each entry.
    pub fn from_ctx(
        th: &'a dyn ModeTheory,
        crisp: bool,
        ctx: &crate::syntax::Ctx,
    ) -> TResult<ElabCtx<'a>> {
        match ctx {
            crate::syntax::Ctx::Empty(m) => Ok(ElabCtx::new(th, *m, crisp)),
            crate::syntax::Ctx::Lock(inner, mu) => {
                Ok(ElabCtx::from_ctx(th, crisp, inner)?.lock(mu))
            }
            crate::syntax::Ctx::Ext(inner, mu, a) => {
                let base = ElabCtx::from_ctx(th, crisp, inner)?;
                let ty = base.lock(mu).check_ty(a)?;
                Ok(base.bind(mu, ty)?.0)
            }
        }
    }

    pub fn theory(&self) -> &'a dyn ModeTheory {
        self.th
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn crisp_enabled(&self) -> bool {
        self.crisp
    }

    fn id_mod(&self) -> Modality {
        Modality::identity(self.mode)
    }

    fn lock(&self, mu: &Modality) -> ElabCtx<'a> {
        let mut entries = self.entries.clone();
        entries.push(CtxEntry::LockE(mu.clone()));
        ElabCtx {
            th: self.th,
            entries,
            env: self.env.push_lock(mu.clone()),
            mode: mu.dom,
            depth: self.depth,
            crisp: self.crisp,
        }
    }

    /// Extends the context with a fresh variable of the given annotation and
    /// type, returning the extended context and the variable's value.
    fn bind(&self, annot: &Modality, ty: Rc<VTy>) -> TResult<(ElabCtx<'a>, Rc<Value>)> {
        let var = reflect(
            self.th,
            &ty,
            SemNe::var(Lvl(self.depth), self.th.id_cell(annot)),
        )?;
        let mut entries = self.entries.clone();
        entries.push(CtxEntry::Bind { annot: annot.clone(), ty });
        let ctx = ElabCtx {
            th: self.th,
            entries,
            env: self.env.push_val(var.clone()),
            mode: self.mode,
            depth: self.depth + 1,
            crisp: self.crisp,
        };
        Ok((ctx, var))
    }

    /// Extends with a definition: the binder unfolds to `value` during
    /// evaluation.
    fn define(&self, annot: &Modality, ty: Rc<VTy>, value: Rc<Value>) -> ElabCtx<'a> {
        let mut entries = self.entries.clone();
        entries.push(CtxEntry::Bind { annot: annot.clone(), ty });
        ElabCtx {
            th: self.th,
            entries,
            env: self.env.push_val(value),
            mode: self.mode,
            depth: self.depth + 1,
            crisp: self.crisp,
        }
    }

    /// The variable rule: the cell must go from the binder's annotation to
    /// the composite of the locks crossed between binder and use site.
    pub fn check_var(&self, k: Index, cell: &Cell) -> TResult<Rc<VTy>> {
        let mut remaining = k.0;
        let mut locks: Option<Modality> = None;
        for entry in self.entries.iter().rev() {
            match entry {
                CtxEntry::LockE(nu) => {
                    locks = Some(match locks {
                        None => nu.clone(),
                        Some(acc) => self.th.compose_mod(nu, &acc)?,
                    });
                }
                CtxEntry::Bind { annot, ty } => {
                    if remaining > 0 {
                        remaining -= 1;
                        continue;
                    }
                    let want = locks.unwrap_or_else(|| self.id_mod());
                    if !self.th.eq_mod(&cell.dom, annot) {
                        return Err(TypeError::NoSuchCell {
                            have: cell.dom.clone(),
                            want: annot.clone(),
                        });
                    }
                    if !self.th.eq_mod(&cell.cod, &want) {
                        return Err(TypeError::NoSuchCell {
                            have: cell.cod.clone(),
                            want,
                        });
                    }
                    return Ok(crate::nbe::val_restrict(self.th, ty, cell)?);
                }
            }
        }
        Err(TypeError::ScopeError(k.0))
    }

    pub fn infer(&self, t: &Tm) -> TResult<Rc<VTy>> {
        match t {
            Tm::Var(k, cell) => self.check_var(*k, cell),
            // A beta redex infers by binding the argument as a definition:
            // the body is inferred with the variable unfolding to the
            // argument's value, which yields the instantiated codomain.
            Tm::App(mu, f, a) if matches!(f.as_ref(), Tm::Lam(_)) => {
                let Tm::Lam(body) = f.as_ref() else { unreachable!() };
                let locked = self.lock(mu);
                let dom = locked.infer(a)?;
                let av = eval(self.th, &locked.env, a)?;
                let ctx = self.define(mu, dom, av);
                ctx.infer(body)
            }
            Tm::App(mu, f, a) => {
                let fty = self.infer(f)?;
                let Value::Pi(pi_mod, dom, cod) = &*fty else {
                    return Err(TypeError::NotAFunction);
                };
                if !self.th.eq_mod(mu, pi_mod) {
                    return Err(TypeError::ModeMismatch {
                        have: mu.clone(),
                        want: pi_mod.clone(),
                    });
                }
                let locked = self.lock(mu);
                locked.check(a, dom)?;
                let av = eval(self.th, &locked.env, a)?;
                Ok(cod.inst(self.th, av)?)
            }
            Tm::Fst(p) => {
                let pty = self.infer(p)?;
                let Value::Sig(a, _) = &*pty else {
                    return Err(TypeError::NotAPair);
                };
                Ok(a.clone())
            }
            Tm::Snd(p) => {
                let pty = self.infer(p)?;
                let Value::Sig(_, b) = &*pty else {
                    return Err(TypeError::NotAPair);
                };
                let pv = eval(self.th, &self.env, p)?;
                let fst = do_fst(self.th, &pv)?;
                Ok(b.inst(self.th, fst)?)
            }
            Tm::TrueC | Tm::FalseC => Ok(Rc::new(Value::Bool)),
            Tm::If(motive, then_t, else_t, scrut) => {
                let (bool_ctx, _) = self.bind(&self.id_mod(), Rc::new(Value::Bool))?;
                bool_ctx.check_ty(motive)?;
                self.check(scrut, &Rc::new(Value::Bool))?;
                let mot = TyClosure { env: self.env.clone(), body: Rc::new((**motive).clone()) };
                let then_ty = mot.inst(self.th, Rc::new(Value::True))?;
                self.check(then_t, &then_ty)?;
                let else_ty = mot.inst(self.th, Rc::new(Value::False))?;
                self.check(else_t, &else_ty)?;
                let sv = eval(self.th, &self.env, scrut)?;
                Ok(mot.inst(self.th, sv)?)
            }
            Tm::Ann(inner, ty) => {
                let tyv = self.check_ty(ty)?;
                self.check(inner, &tyv)?;
                Ok(tyv)
            }
            Tm::J(motive, refl_case, scrut) => {
                let pty = self.infer_path(self, scrut)?;
                let Value::Id(a, a0, a1) = &*pty else {
                    return Err(TypeError::NotAnIdentity);
                };
                self.check_j_motive(&self.id_mod(), a, motive, refl_case)?;
                let mot = TyClosure { env: self.env.clone(), body: Rc::new((**motive).clone()) };
                let pv = eval(self.th, &self.env, scrut)?;
                Ok(mot.inst3(self.th, a0.clone(), a1.clone(), pv)?)
            }
            Tm::CrispJ(mu, motive, refl_case, scrut) => {
                if !self.crisp {
                    return Err(TypeError::CrispDisabled);
                }
                let locked = self.lock(mu);
                let pty = self.infer_path(&locked, scrut)?;
                let Value::Id(a, a0, a1) = &*pty else {
                    return Err(TypeError::NotAnIdentity);
                };
                self.check_j_motive(mu, a, motive, refl_case)?;
                let mot = TyClosure { env: self.env.clone(), body: Rc::new((**motive).clone()) };
                let pv = eval(self.th, &locked.env, scrut)?;
                Ok(mot.inst3(self.th, a0.clone(), a1.clone(), pv)?)
            }
            Tm::LetMod { frame, main, motive, scrut, body } => {
                let locked = self.lock(frame);
                let sty = locked.infer_scrut(scrut)?;
                let Value::Mod(got_main, inner) = &*sty else {
                    return Err(TypeError::NotAMod);
                };
                if !self.th.eq_mod(main, got_main) {
                    return Err(TypeError::ModeMismatch {
                        have: main.clone(),
                        want: got_main.clone(),
                    });
                }
                let (mot_ctx, _) = self.bind(frame, sty.clone())?;
                mot_ctx.check_ty(motive)?;
                let mot = TyClosure { env: self.env.clone(), body: Rc::new((**motive).clone()) };
                let composite = self.th.compose_mod(frame, main)?;
                let (body_ctx, x) = self.bind(&composite, inner.clone())?;
                let body_expected =
                    mot.inst(self.th, Rc::new(Value::MkBox(main.clone(), x)))?;
                body_ctx.check(body, &body_expected)?;
                let sv = eval(self.th, &locked.env, scrut)?;
                Ok(mot.inst(self.th, sv)?)
            }
            Tm::PiCode(mu, a, b) => {
                let locked = self.lock(mu);
                locked.check(a, &Rc::new(Value::Uni))?;
                let av = eval(self.th, &locked.env, a)?;
                let (fam_ctx, _) = self.bind(mu, Rc::new(Value::Dec(av)))?;
                fam_ctx.check(b, &Rc::new(Value::Uni))?;
                Ok(Rc::new(Value::Uni))
            }
            Tm::SigCode(a, b) => {
                self.check(a, &Rc::new(Value::Uni))?;
                let av = eval(self.th, &self.env, a)?;
                let (fam_ctx, _) = self.bind(&self.id_mod(), Rc::new(Value::Dec(av)))?;
                fam_ctx.check(b, &Rc::new(Value::Uni))?;
                Ok(Rc::new(Value::Uni))
            }
            Tm::BoolCode => Ok(Rc::new(Value::Uni)),
            Tm::ModCode(mu, a) => {
                let locked = self.lock(mu);
                locked.check(a, &Rc::new(Value::Uni))?;
                Ok(Rc::new(Value::Uni))
            }
            Tm::Up(kind, inner) => {
                let ty = self.infer(inner)?;
                let Value::Dec(code) = &*ty else {
                    return Err(TypeError::UniverseError(
                        "coercion source must be a decoded code".to_string(),
                    ));
                };
                self.unfold_checked(*kind, code)
            }
            Tm::Down(kind, inner) => {
                let ty = self.infer(inner)?;
                self.refold(*kind, &ty)
            }
            Tm::Lam(_) => Err(TypeError::CannotInfer("lambda")),
            Tm::Pair(_, _) => Err(TypeError::CannotInfer("pair")),
            Tm::MkBox(_, _) => Err(TypeError::CannotInfer("box")),
            Tm::Refl(_) => Err(TypeError::CannotInfer("refl")),
        }
    }

    /// Infers a modal eliminator scrutinee; literal boxes infer through
    /// their payloads, recursively.
    fn infer_scrut(&self, t: &Tm) -> TResult<Rc<VTy>> {
        match t {
            Tm::MkBox(nu, payload) => {
                let inner = self.lock(nu).infer_scrut(payload)?;
                Ok(Rc::new(Value::Mod(nu.clone(), inner)))
            }
            other => self.infer(other),
        }
    }

    /// Infers the identity type of an eliminator scrutinee; a literal refl
    /// infers through its endpoint.
    fn infer_path(&self, scrut_ctx: &ElabCtx<'a>, scrut: &Tm) -> TResult<Rc<VTy>> {
        match scrut {
            Tm::Refl(m) => {
                let a = scrut_ctx.infer(m)?;
                let mv = eval(self.th, &scrut_ctx.env, m)?;
                Ok(Rc::new(Value::Id(a, mv.clone(), mv)))
            }
            other => scrut_ctx.infer(other),
        }
    }

    /// Checks the three-binder motive and the refl case shared by the two
    /// identity eliminators; `annot` is identity for J and the framing
    /// modality for crisp J.
    fn check_j_motive(
        &self,
        annot: &Modality,
        a: &Rc<VTy>,
        motive: &Ty,
        refl_case: &Tm,
    ) -> TResult<()> {
        let (c1, x0) = self.bind(annot, a.clone())?;
        let (c2, x1) = c1.bind(annot, a.clone())?;
        let path_ty = Rc::new(Value::Id(a.clone(), x0, x1));
        let (c3, _) = c2.bind(annot, path_ty)?;
        c3.check_ty(motive)?;
        let mot = TyClosure { env: self.env.clone(), body: Rc::new(motive.clone()) };
        let (rc_ctx, x) = self.bind(annot, a.clone())?;
        let expected =
            mot.inst3(self.th, x.clone(), x.clone(), Rc::new(Value::Refl(x)))?;
        rc_ctx.check(refl_case, &expected)
    }

    fn unfold_checked(&self, kind: CodeKind, code: &Rc<Value>) -> TResult<Rc<VTy>> {
        let ok = match (&**code, kind) {
            (Value::PiCode(..), CodeKind::Pi)
            | (Value::SigCode(..), CodeKind::Sig)
            | (Value::BoolCode, CodeKind::Bool)
            | (Value::ModCode(..), CodeKind::Mod) => true,
            _ => false,
        };
        if !ok {
            return Err(TypeError::UniverseError(
                "code does not match the coercion kind".to_string(),
            ));
        }
        Ok(Rc::new(match &**code {
            Value::PiCode(mu, a, fam) => Value::Pi(
                mu.clone(),
                Rc::new(Value::Dec(a.clone())),
                TyClosure {
                    env: fam.env.clone(),
                    body: Rc::new(Ty::Dec(Box::new((*fam.body).clone()))),
                },
            ),
            Value::SigCode(a, fam) => Value::Sig(
                Rc::new(Value::Dec(a.clone())),
                TyClosure {
                    env: fam.env.clone(),
                    body: Rc::new(Ty::Dec(Box::new((*fam.body).clone()))),
                },
            ),
            Value::BoolCode => Value::Bool,
            Value::ModCode(mu, a) => Value::Mod(mu.clone(), Rc::new(Value::Dec(a.clone()))),
            _ => unreachable!(),
        }))
    }

    /// Reconstructs the code for a type of the shape produced by `Up`, for
    /// inferring `Down`. Pi and Sig require the codomain to be a syntactic
    /// decoding so the code family can be recovered.
    fn refold(&self, kind: CodeKind, ty: &Rc<VTy>) -> TResult<Rc<VTy>> {
        let bad = || {
            TypeError::UniverseError(
                "cannot recover a code for the coercion target".to_string(),
            )
        };
        let code = match (kind, &**ty) {
            (CodeKind::Bool, Value::Bool) => Value::BoolCode,
            (CodeKind::Mod, Value::Mod(nu, inner)) => {
                let Value::Dec(a) = &**inner else { return Err(bad()) };
                Value::ModCode(nu.clone(), a.clone())
            }
            (CodeKind::Pi, Value::Pi(mu, dom, cod)) => {
                let Value::Dec(a) = &**dom else { return Err(bad()) };
                let Ty::Dec(b) = &*cod.body else { return Err(bad()) };
                Value::PiCode(
                    mu.clone(),
                    a.clone(),
                    Closure { env: cod.env.clone(), body: Rc::new((**b).clone()) },
                )
            }
            (CodeKind::Sig, Value::Sig(dom, cod)) => {
                let Value::Dec(a) = &**dom else { return Err(bad()) };
                let Ty::Dec(b) = &*cod.body else { return Err(bad()) };
                Value::SigCode(
                    a.clone(),
                    Closure { env: cod.env.clone(), body: Rc::new((**b).clone()) },
                )
            }
            _ => return Err(bad()),
        };
        Ok(Rc::new(Value::Dec(Rc::new(code))))
    }

    pub fn check(&self, t: &Tm, expected: &Rc<VTy>) -> TResult<()> {
        match (t, &**expected) {
            (Tm::Lam(body), Value::Pi(mu, dom, cod)) => {
                let (ctx, x) = self.bind(mu, dom.clone())?;
                let body_ty = cod.inst(self.th, x)?;
                ctx.check(body, &body_ty)
            }
            (Tm::Lam(_), _) => Err(TypeError::NotAFunction),
            (Tm::Pair(a, b), Value::Sig(fst_ty, snd_clo)) => {
                self.check(a, fst_ty)?;
                let av = eval(self.th, &self.env, a)?;
                let snd_ty = snd_clo.inst(self.th, av)?;
                self.check(b, &snd_ty)
            }
            (Tm::Pair(..), _) => Err(TypeError::NotAPair),
            (Tm::MkBox(mu, body), Value::Mod(nu, inner)) => {
                if !self.th.eq_mod(mu, nu) {
                    return Err(TypeError::ModeMismatch {
                        have: mu.clone(),
                        want: nu.clone(),
                    });
                }
                self.lock(mu).check(body, inner)
            }
            (Tm::MkBox(..), _) => Err(TypeError::NotAMod),
            (Tm::Refl(a), Value::Id(ty, lhs, rhs)) => {
                self.check(a, ty)?;
                let av = eval(self.th, &self.env, a)?;
                let a_nf = reify(self.th, self.depth, self.mode, ty, &av)?;
                for side in [lhs, rhs] {
                    let side_nf = reify(self.th, self.depth, self.mode, ty, side)?;
                    if !nf_eq(self.th, &a_nf, &side_nf) {
                        return Err(TypeError::ConversionFailure {
                            expected: Mismatch::Tm(Box::new(side_nf)),
                            actual: Mismatch::Tm(Box::new(a_nf)),
                        });
                    }
                }
                Ok(())
            }
            (Tm::Refl(_), _) => Err(TypeError::NotAnIdentity),
            // The expected decoded code determines the payload type of an
            // inward coercion.
            (Tm::Down(kind, inner), Value::Dec(code)) => {
                let unfolded = self.unfold_checked(*kind, code)?;
                self.check(inner, &unfolded)
            }
            // A beta redex checks through its body, with the variable bound
            // as a definition unfolding to the argument's value.
            (Tm::App(mu, f, a), _) if matches!(f.as_ref(), Tm::Lam(_)) => {
                let Tm::Lam(body) = f.as_ref() else { unreachable!() };
                let locked = self.lock(mu);
                let dom = locked.infer(a)?;
                let av = eval(self.th, &locked.env, a)?;
                let ctx = self.define(mu, dom, av);
                ctx.check(body, expected)
            }
            _ => {
                let actual = self.infer(t)?;
                if self.convertible_vty(&actual, expected)? {
                    Ok(())
                } else {
                    Err(TypeError::ConversionFailure {
                        expected: Mismatch::Ty(Box::new(reify_ty(
                            self.th, self.depth, self.mode, expected,
                        )?)),
                        actual: Mismatch::Ty(Box::new(reify_ty(
                            self.th, self.depth, self.mode, &actual,
                        )?)),
                    })
                }
            }
        }
    }

    pub fn check_ty(&self, a: &Ty) -> TResult<Rc<VTy>> {
        match a {
            Ty::Pi(mu, dom, cod) => {
                let locked = self.lock(mu);
                let dom_v = locked.check_ty(dom)?;
                let (ctx, _) = self.bind(mu, dom_v)?;
                ctx.check_ty(cod)?;
            }
            Ty::Sig(fst, snd) => {
                let fst_v = self.check_ty(fst)?;
                let (ctx, _) = self.bind(&self.id_mod(), fst_v)?;
                ctx.check_ty(snd)?;
            }
            Ty::Bool | Ty::Uni => {}
            Ty::Id(inner, l, r) => {
                let inner_v = self.check_ty(inner)?;
                self.check(l, &inner_v)?;
                self.check(r, &inner_v)?;
            }
            Ty::Mod(mu, inner) => {
                self.lock(mu).check_ty(inner)?;
            }
            Ty::Dec(code) => {
                self.check(code, &Rc::new(Value::Uni)).map_err(|e| match e {
                    TypeError::ConversionFailure { .. } | TypeError::CannotInfer(_) => {
                        TypeError::UniverseError("decoded argument is not a code".to_string())
                    }
                    other => other,
                })?;
            }
        }
        Ok(eval_ty(self.th, &self.env, a)?)
    }

    /// Both terms must be well-typed at `a`; decides definitional equality by
    /// comparing normal forms.
    pub fn convertible_tm(&self, a: &Rc<VTy>, m: &Tm, n: &Tm) -> TResult<bool> {
        let mv = eval(self.th, &self.env, m)?;
        let nv = eval(self.th, &self.env, n)?;
        let m_nf = reify(self.th, self.depth, self.mode, a, &mv)?;
        let n_nf = reify(self.th, self.depth, self.mode, a, &nv)?;
        Ok(nf_eq(self.th, &m_nf, &n_nf))
    }

    /// Both types must be well-formed.
    pub fn convertible_ty(&self, a: &Ty, b: &Ty) -> TResult<bool> {
        let av = eval_ty(self.th, &self.env, a)?;
        let bv = eval_ty(self.th, &self.env, b)?;
        self.convertible_vty(&av, &bv)
    }

    fn convertible_vty(&self, a: &Rc<VTy>, b: &Rc<VTy>) -> TResult<bool> {
        let a_nf = reify_ty(self.th, self.depth, self.mode, a)?;
        let b_nf = reify_ty(self.th, self.depth, self.mode, b)?;
        Ok(nfty_eq(self.th, &a_nf, &b_nf))
    }
}

/// A top-level definition, already resolved to core syntax.
#[derive(Debug, Clone)]
pub struct Decl {
    pub name: String,
    pub ty: Ty,
    pub term: Tm,
}

/// Checks a sequence of definitions; later ones may refer to earlier ones by
/// definitional unfolding. Returns the elaborated context or the first
/// failure together with the offending declaration's index.
pub fn check_program<'a>(
    th: &'a dyn ModeTheory,
    mode: Mode,
    crisp: bool,
    decls: &[Decl],
) -> Result<ElabCtx<'a>, (usize, TypeError)> {
    let mut ctx = ElabCtx::new(th, mode, crisp);
    let mut seen: Vec<&str> = Vec::new();
    for (i, decl) in decls.iter().enumerate() {
        if seen.contains(&decl.name.as_str()) {
            return Err((i, TypeError::DuplicateError(decl.name.clone())));
        }
        let ty = ctx.check_ty(&decl.ty).map_err(|e| (i, e))?;
        ctx.check(&decl.term, &ty).map_err(|e| (i, e))?;
        let value = eval(th, &ctx.env, &decl.term).map_err(|e| (i, e.into()))?;
        let annot = Modality::identity(ctx.mode());
        ctx = ctx.define(&annot, ty, value);
        seen.push(&decl.name);
    }
    Ok(ctx)
}
