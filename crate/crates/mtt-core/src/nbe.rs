//! Normalization by evaluation.
//!
//! Terms evaluate into a semantic domain of values with closures; values read
//! back to beta-normal, eta-long normal forms. Evaluation uses levels for
//! variables so no renaming happens at runtime; indices reappear at readback.
//!
//! The modal structure shows up in three places. Environments carry lock
//! markers, pushed whenever evaluation moves under a modality (box bodies,
//! arguments of modal application, modal type formers). Variable lookup
//! restricts the stored value along the variable's 2-cell. Restriction of a
//! value with captured environments is deferred: a restriction entry is
//! appended to the environment and spliced into variable cells at lookup
//! time, whiskered by the locks crossed since. This keeps the action correct
//! for neutrals captured arbitrarily deep under later locks.

use std::rc::Rc;

use thiserror::Error;

use crate::mode_theory::{splice_cell, Cell, Modality, Mode, ModeTheory, ModeTheoryError};
use crate::normal::{Ne, Nf, NfTy};
use crate::syntax::{ctx_len, mode_of, CodeKind, Ctx, Index, Tm, Ty};

/// De Bruijn level of a semantic variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lvl(pub u32);

pub type VTy = Value;

#[derive(Debug, Clone)]
pub enum Value {
    // canonical terms
    Lam(Closure),
    Pair(Rc<Value>, Rc<Value>),
    True,
    False,
    Refl(Rc<Value>),
    MkBox(Modality, Rc<Value>),
    /// Canonical inhabitant of a decoded code: the coerced underlying value.
    DownWrap(CodeKind, Rc<Value>),
    // canonical universe codes
    PiCode(Modality, Rc<Value>, Closure),
    SigCode(Rc<Value>, Closure),
    BoolCode,
    ModCode(Modality, Rc<Value>),
    /// A blocked elimination chain, carrying its type for eta-expansion at
    /// readback.
    Neutral(Rc<VTy>, SemNe),
    // type values
    Pi(Modality, Rc<VTy>, TyClosure),
    Sig(Rc<VTy>, TyClosure),
    Bool,
    Id(Rc<VTy>, Rc<Value>, Rc<Value>),
    Mod(Modality, Rc<VTy>),
    Uni,
    Dec(Rc<Value>),
}

/// Neutral: a head variable (level plus 2-cell) and a spine of eliminations.
/// Spine entries store enough typing data to read back without
/// re-elaboration.
#[derive(Debug, Clone)]
pub struct SemNe {
    pub head: Lvl,
    pub cell: Cell,
    pub spine: Vec<Elim>,
}

impl SemNe {
    pub fn var(head: Lvl, cell: Cell) -> SemNe {
        SemNe { head, cell, spine: Vec::new() }
    }

    fn push(&self, e: Elim) -> SemNe {
        let mut spine = self.spine.clone();
        spine.push(e);
        SemNe { head: self.head, cell: self.cell.clone(), spine }
    }
}

#[derive(Debug, Clone)]
pub enum Elim {
    App { modality: Modality, arg: Rc<Value>, arg_ty: Rc<VTy> },
    Fst,
    Snd,
    If { motive: TyClosure, then_v: Rc<Value>, else_v: Rc<Value> },
    J { motive: TyClosure, refl_case: Closure, scrut_ty: Rc<VTy> },
    CrispJ { modality: Modality, motive: TyClosure, refl_case: Closure, scrut_ty: Rc<VTy> },
    LetMod {
        frame: Modality,
        main: Modality,
        motive: TyClosure,
        body: Closure,
        scrut_ty: Rc<VTy>,
    },
    Up { kind: CodeKind, dec_ty: Rc<VTy> },
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub env: Env,
    pub body: Rc<Tm>,
}

#[derive(Debug, Clone)]
pub struct TyClosure {
    pub env: Env,
    pub body: Rc<Ty>,
}

#[derive(Debug, Clone)]
enum EnvEntry {
    Val(Rc<Value>),
    Lock(Modality),
    Restrict(Cell),
}

/// Evaluation environment: values for binders interleaved with lock markers
/// and pending restrictions. Lookup skips lock and restriction entries when
/// resolving indices.
#[derive(Debug, Clone, Default)]
pub struct Env {
    entries: Vec<EnvEntry>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("variable out of range during evaluation")]
    Scope,
    #[error("elimination applied to an impossible value: {0}")]
    Impossible(&'static str),
    #[error(transparent)]
    ModeTheory(#[from] ModeTheoryError),
}

type VResult = Result<Rc<Value>, EvalError>;

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn push_val(&self, v: Rc<Value>) -> Env {
        let mut entries = self.entries.clone();
        entries.push(EnvEntry::Val(v));
        Env { entries }
    }

    pub fn push_lock(&self, mu: Modality) -> Env {
        let mut entries = self.entries.clone();
        entries.push(EnvEntry::Lock(mu));
        Env { entries }
    }

    pub fn push_restrict(&self, cell: Cell) -> Env {
        if cell.is_identity() {
            return self.clone();
        }
        let mut entries = self.entries.clone();
        entries.push(EnvEntry::Restrict(cell));
        Env { entries }
    }

    /// Resolves index `k`, splicing any pending restrictions crossed between
    /// the entry and the end of the environment into the variable's cell.
    fn lookup(&self, th: &dyn ModeTheory, k: Index, cell: &Cell) -> VResult {
        let mut remaining = k.0;
        let mut inner: Option<Modality> = None;
        // restrictions crossed, innermost first, each with the lock composite
        // inside it
        let mut pending: Vec<(Cell, Option<Modality>)> = Vec::new();
        for entry in self.entries.iter().rev() {
            match entry {
                EnvEntry::Val(v) => {
                    if remaining == 0 {
                        let mut c = cell.clone();
                        for (delta, w) in pending.iter().rev() {
                            c = splice_cell(th, &c, delta, w.as_ref())?;
                        }
                        return val_restrict(th, v, &c);
                    }
                    remaining -= 1;
                }
                EnvEntry::Lock(nu) => {
                    inner = Some(match inner {
                        None => nu.clone(),
                        Some(w) => th.compose_mod(nu, &w)?,
                    });
                }
                EnvEntry::Restrict(delta) => {
                    pending.push((delta.clone(), inner.clone()));
                }
            }
        }
        Err(EvalError::Scope)
    }
}

impl Closure {
    fn new(env: &Env, body: &Tm) -> Closure {
        Closure { env: env.clone(), body: Rc::new(body.clone()) }
    }

    pub fn apply(&self, th: &dyn ModeTheory, v: Rc<Value>) -> VResult {
        eval(th, &self.env.push_val(v), &self.body)
    }

    fn restricted(&self, cell: &Cell) -> Closure {
        Closure { env: self.env.push_restrict(cell.clone()), body: self.body.clone() }
    }
}

impl TyClosure {
    fn new(env: &Env, body: &Ty) -> TyClosure {
        TyClosure { env: env.clone(), body: Rc::new(body.clone()) }
    }

    pub fn inst(&self, th: &dyn ModeTheory, v: Rc<Value>) -> VResult {
        eval_ty(th, &self.env.push_val(v), &self.body)
    }

    pub fn inst3(&self, th: &dyn ModeTheory, a: Rc<Value>, b: Rc<Value>, c: Rc<Value>) -> VResult {
        eval_ty(th, &self.env.push_val(a).push_val(b).push_val(c), &self.body)
    }

    fn restricted(&self, cell: &Cell) -> TyClosure {
        TyClosure { env: self.env.push_restrict(cell.clone()), body: self.body.clone() }
    }
}

fn whisker_under(
    th: &dyn ModeTheory,
    cell: &Cell,
    mu: &Modality,
) -> Result<Cell, ModeTheoryError> {
    if mu.is_identity() {
        return Ok(cell.clone());
    }
    th.hcomp(cell, &th.id_cell(mu))
}

/// Transports a value along a 2-cell: the semantic key action. Identity cells
/// are a no-op; on neutrals the cell is spliced onto the head; canonical
/// values push the restriction into components, whiskering under boxes, and
/// defer it on closures.
pub fn val_restrict(th: &dyn ModeTheory, v: &Rc<Value>, cell: &Cell) -> VResult {
    if cell.is_identity() {
        return Ok(v.clone());
    }
    Ok(Rc::new(match &**v {
        Value::True | Value::False | Value::BoolCode | Value::Bool | Value::Uni => {
            return Ok(v.clone())
        }
        Value::Lam(cl) => Value::Lam(cl.restricted(cell)),
        Value::Pair(a, b) => {
            Value::Pair(val_restrict(th, a, cell)?, val_restrict(th, b, cell)?)
        }
        Value::Refl(a) => Value::Refl(val_restrict(th, a, cell)?),
        Value::MkBox(nu, a) => {
            let inner = whisker_under(th, cell, nu)?;
            Value::MkBox(nu.clone(), val_restrict(th, a, &inner)?)
        }
        Value::DownWrap(k, a) => Value::DownWrap(*k, val_restrict(th, a, cell)?),
        Value::PiCode(mu, a, fam) => {
            let under = whisker_under(th, cell, mu)?;
            Value::PiCode(mu.clone(), val_restrict(th, a, &under)?, fam.restricted(cell))
        }
        Value::SigCode(a, fam) => {
            Value::SigCode(val_restrict(th, a, cell)?, fam.restricted(cell))
        }
        Value::ModCode(mu, a) => {
            let under = whisker_under(th, cell, mu)?;
            Value::ModCode(mu.clone(), val_restrict(th, a, &under)?)
        }
        Value::Neutral(ty, ne) => {
            let ty = val_restrict(th, ty, cell)?;
            Value::Neutral(ty, ne_restrict(th, ne, cell)?)
        }
        Value::Pi(mu, a, b) => {
            let under = whisker_under(th, cell, mu)?;
            Value::Pi(mu.clone(), val_restrict(th, a, &under)?, b.restricted(cell))
        }
        Value::Sig(a, b) => Value::Sig(val_restrict(th, a, cell)?, b.restricted(cell)),
        Value::Id(a, l, r) => Value::Id(
            val_restrict(th, a, cell)?,
            val_restrict(th, l, cell)?,
            val_restrict(th, r, cell)?,
        ),
        Value::Mod(mu, a) => {
            let under = whisker_under(th, cell, mu)?;
            Value::Mod(mu.clone(), val_restrict(th, a, &under)?)
        }
        Value::Dec(c) => Value::Dec(val_restrict(th, c, cell)?),
    }))
}

fn ne_restrict(th: &dyn ModeTheory, ne: &SemNe, cell: &Cell) -> Result<SemNe, EvalError> {
    let head_cell = splice_cell(th, &ne.cell, cell, None)?;
    let mut spine = Vec::with_capacity(ne.spine.len());
    for elim in &ne.spine {
        spine.push(match elim {
            Elim::App { modality, arg, arg_ty } => {
                let under = whisker_under(th, cell, modality)?;
                Elim::App {
                    modality: modality.clone(),
                    arg: val_restrict(th, arg, &under)?,
                    arg_ty: val_restrict(th, arg_ty, &under)?,
                }
            }
            Elim::Fst => Elim::Fst,
            Elim::Snd => Elim::Snd,
            Elim::If { motive, then_v, else_v } => Elim::If {
                motive: motive.restricted(cell),
                then_v: val_restrict(th, then_v, cell)?,
                else_v: val_restrict(th, else_v, cell)?,
            },
            Elim::J { motive, refl_case, scrut_ty } => Elim::J {
                motive: motive.restricted(cell),
                refl_case: refl_case.restricted(cell),
                scrut_ty: val_restrict(th, scrut_ty, cell)?,
            },
            Elim::CrispJ { modality, motive, refl_case, scrut_ty } => {
                let under = whisker_under(th, cell, modality)?;
                Elim::CrispJ {
                    modality: modality.clone(),
                    motive: motive.restricted(cell),
                    refl_case: refl_case.restricted(cell),
                    scrut_ty: val_restrict(th, scrut_ty, &under)?,
                }
            }
            Elim::LetMod { frame, main, motive, body, scrut_ty } => {
                let under = whisker_under(th, cell, frame)?;
                Elim::LetMod {
                    frame: frame.clone(),
                    main: main.clone(),
                    motive: motive.restricted(cell),
                    body: body.restricted(cell),
                    scrut_ty: val_restrict(th, scrut_ty, &under)?,
                }
            }
            Elim::Up { kind, dec_ty } => {
                Elim::Up { kind: *kind, dec_ty: val_restrict(th, dec_ty, cell)? }
            }
        });
    }
    Ok(SemNe { head: ne.head, cell: head_cell, spine })
}

pub fn do_app(th: &dyn ModeTheory, mu: &Modality, f: &Rc<Value>, a: Rc<Value>) -> VResult {
    match &**f {
        Value::Lam(cl) => cl.apply(th, a),
        Value::Neutral(ty, ne) => {
            let Value::Pi(_, dom, cod) = &**ty else {
                return Err(EvalError::Impossible("application head is not a function"));
            };
            let res_ty = cod.inst(th, a.clone())?;
            let ne = ne.push(Elim::App {
                modality: mu.clone(),
                arg: a,
                arg_ty: dom.clone(),
            });
            reflect(th, &res_ty, ne)
        }
        _ => Err(EvalError::Impossible("application of a non-function")),
    }
}

pub fn do_fst(th: &dyn ModeTheory, v: &Rc<Value>) -> VResult {
    match &**v {
        Value::Pair(a, _) => Ok(a.clone()),
        Value::Neutral(ty, ne) => {
            let Value::Sig(a, _) = &**ty else {
                return Err(EvalError::Impossible("fst of a non-pair"));
            };
            reflect(th, a, ne.push(Elim::Fst))
        }
        _ => Err(EvalError::Impossible("fst of a non-pair")),
    }
}

pub fn do_snd(th: &dyn ModeTheory, v: &Rc<Value>) -> VResult {
    match &**v {
        Value::Pair(_, b) => Ok(b.clone()),
        Value::Neutral(ty, ne) => {
            let Value::Sig(_, b) = &**ty else {
                return Err(EvalError::Impossible("snd of a non-pair"));
            };
            let fst = do_fst(th, v)?;
            let res_ty = b.inst(th, fst)?;
            reflect(th, &res_ty, ne.push(Elim::Snd))
        }
        _ => Err(EvalError::Impossible("snd of a non-pair")),
    }
}

pub fn do_if(
    th: &dyn ModeTheory,
    motive: &TyClosure,
    then_v: Rc<Value>,
    else_v: Rc<Value>,
    scrut: &Rc<Value>,
) -> VResult {
    match &**scrut {
        Value::True => Ok(then_v),
        Value::False => Ok(else_v),
        Value::Neutral(_, ne) => {
            let res_ty = motive.inst(th, scrut.clone())?;
            let ne = ne.push(Elim::If { motive: motive.clone(), then_v, else_v });
            reflect(th, &res_ty, ne)
        }
        _ => Err(EvalError::Impossible("if on a non-boolean")),
    }
}

pub fn do_j(
    th: &dyn ModeTheory,
    motive: &TyClosure,
    refl_case: &Closure,
    scrut: &Rc<Value>,
) -> VResult {
    match &**scrut {
        Value::Refl(a) => refl_case.apply(th, a.clone()),
        Value::Neutral(ty, ne) => {
            let Value::Id(_, a0, a1) = &**ty else {
                return Err(EvalError::Impossible("identity elimination on a non-path"));
            };
            let res_ty = motive.inst3(th, a0.clone(), a1.clone(), scrut.clone())?;
            let ne = ne.push(Elim::J {
                motive: motive.clone(),
                refl_case: refl_case.clone(),
                scrut_ty: ty.clone(),
            });
            reflect(th, &res_ty, ne)
        }
        _ => Err(EvalError::Impossible("identity elimination on a non-path")),
    }
}

pub fn do_crisp_j(
    th: &dyn ModeTheory,
    mu: &Modality,
    motive: &TyClosure,
    refl_case: &Closure,
    scrut: &Rc<Value>,
) -> VResult {
    match &**scrut {
        Value::Refl(a) => refl_case.apply(th, a.clone()),
        Value::Neutral(ty, ne) => {
            let Value::Id(_, a0, a1) = &**ty else {
                return Err(EvalError::Impossible("crisp identity elimination on a non-path"));
            };
            let res_ty = motive.inst3(th, a0.clone(), a1.clone(), scrut.clone())?;
            let ne = ne.push(Elim::CrispJ {
                modality: mu.clone(),
                motive: motive.clone(),
                refl_case: refl_case.clone(),
                scrut_ty: ty.clone(),
            });
            reflect(th, &res_ty, ne)
        }
        _ => Err(EvalError::Impossible("crisp identity elimination on a non-path")),
    }
}

pub fn do_letmod(
    th: &dyn ModeTheory,
    frame: &Modality,
    main: &Modality,
    motive: &TyClosure,
    scrut: &Rc<Value>,
    body: &Closure,
) -> VResult {
    match &**scrut {
        Value::MkBox(_, v) => body.apply(th, v.clone()),
        Value::Neutral(ty, ne) => {
            let res_ty = motive.inst(th, scrut.clone())?;
            let ne = ne.push(Elim::LetMod {
                frame: frame.clone(),
                main: main.clone(),
                motive: motive.clone(),
                body: body.clone(),
                scrut_ty: ty.clone(),
            });
            reflect(th, &res_ty, ne)
        }
        _ => Err(EvalError::Impossible("modal elimination on a non-box")),
    }
}

/// One-step unfolding of a canonical code to the type it encodes.
fn unfold_code(c: &Value) -> Result<Value, EvalError> {
    Ok(match c {
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
        _ => return Err(EvalError::Impossible("cannot unfold a non-code")),
    })
}

fn code_kind(c: &Value) -> Option<CodeKind> {
    match c {
        Value::PiCode(..) => Some(CodeKind::Pi),
        Value::SigCode(..) => Some(CodeKind::Sig),
        Value::BoolCode => Some(CodeKind::Bool),
        Value::ModCode(..) => Some(CodeKind::Mod),
        _ => None,
    }
}

pub fn do_up(th: &dyn ModeTheory, kind: CodeKind, v: &Rc<Value>) -> VResult {
    match &**v {
        Value::DownWrap(k, inner) if *k == kind => Ok(inner.clone()),
        Value::Neutral(ty, ne) => {
            let Value::Dec(code) = &**ty else {
                return Err(EvalError::Impossible("coercion source is not a decoded code"));
            };
            let unfolded = Rc::new(unfold_code(code)?);
            let ne = ne.push(Elim::Up { kind, dec_ty: ty.clone() });
            reflect(th, &unfolded, ne)
        }
        _ => Err(EvalError::Impossible("coercion of an impossible value")),
    }
}

pub fn do_down(_th: &dyn ModeTheory, kind: CodeKind, v: &Rc<Value>) -> VResult {
    // An immediately preceding matching coercion cancels.
    if let Value::Neutral(_, ne) = &**v {
        if let Some(Elim::Up { kind: k, dec_ty }) = ne.spine.last() {
            if *k == kind {
                let mut popped = ne.clone();
                popped.spine.pop();
                let dec_ty = dec_ty.clone();
                return Ok(Rc::new(Value::Neutral(dec_ty, popped)));
            }
        }
    }
    Ok(Rc::new(Value::DownWrap(kind, v.clone())))
}

pub fn eval(th: &dyn ModeTheory, env: &Env, t: &Tm) -> VResult {
    match t {
        Tm::Var(k, cell) => env.lookup(th, *k, cell),
        Tm::Lam(b) => Ok(Rc::new(Value::Lam(Closure::new(env, b)))),
        Tm::App(mu, f, a) => {
            let fv = eval(th, env, f)?;
            let av = eval(th, &env.push_lock(mu.clone()), a)?;
            do_app(th, mu, &fv, av)
        }
        Tm::Pair(a, b) => Ok(Rc::new(Value::Pair(eval(th, env, a)?, eval(th, env, b)?))),
        Tm::Fst(p) => do_fst(th, &eval(th, env, p)?),
        Tm::Snd(p) => do_snd(th, &eval(th, env, p)?),
        Tm::TrueC => Ok(Rc::new(Value::True)),
        Tm::FalseC => Ok(Rc::new(Value::False)),
        Tm::If(motive, then_t, else_t, scrut) => {
            let motive = TyClosure::new(env, motive);
            let then_v = eval(th, env, then_t)?;
            let else_v = eval(th, env, else_t)?;
            let scrut = eval(th, env, scrut)?;
            do_if(th, &motive, then_v, else_v, &scrut)
        }
        Tm::Refl(a) => Ok(Rc::new(Value::Refl(eval(th, env, a)?))),
        Tm::J(motive, refl_case, scrut) => {
            let motive = TyClosure::new(env, motive);
            let refl_case = Closure::new(env, refl_case);
            let scrut = eval(th, env, scrut)?;
            do_j(th, &motive, &refl_case, &scrut)
        }
        Tm::MkBox(mu, b) => {
            let inner = eval(th, &env.push_lock(mu.clone()), b)?;
            Ok(Rc::new(Value::MkBox(mu.clone(), inner)))
        }
        Tm::LetMod { frame, main, motive, scrut, body } => {
            let motive = TyClosure::new(env, motive);
            let body = Closure::new(env, body);
            let scrut = eval(th, &env.push_lock(frame.clone()), scrut)?;
            do_letmod(th, frame, main, &motive, &scrut, &body)
        }
        Tm::PiCode(mu, a, b) => {
            let av = eval(th, &env.push_lock(mu.clone()), a)?;
            Ok(Rc::new(Value::PiCode(mu.clone(), av, Closure::new(env, b))))
        }
        Tm::SigCode(a, b) => {
            let av = eval(th, env, a)?;
            Ok(Rc::new(Value::SigCode(av, Closure::new(env, b))))
        }
        Tm::BoolCode => Ok(Rc::new(Value::BoolCode)),
        Tm::ModCode(mu, a) => {
            let av = eval(th, &env.push_lock(mu.clone()), a)?;
            Ok(Rc::new(Value::ModCode(mu.clone(), av)))
        }
        Tm::Up(kind, t) => do_up(th, *kind, &eval(th, env, t)?),
        Tm::Down(kind, t) => do_down(th, *kind, &eval(th, env, t)?),
        Tm::CrispJ(mu, motive, refl_case, scrut) => {
            let motive = TyClosure::new(env, motive);
            let refl_case = Closure::new(env, refl_case);
            let scrut = eval(th, &env.push_lock(mu.clone()), scrut)?;
            do_crisp_j(th, mu, &motive, &refl_case, &scrut)
        }
        Tm::Ann(inner, _) => eval(th, env, inner),
    }
}

pub fn eval_ty(th: &dyn ModeTheory, env: &Env, a: &Ty) -> VResult {
    match a {
        Ty::Pi(mu, dom, cod) => {
            let domv = eval_ty(th, &env.push_lock(mu.clone()), dom)?;
            Ok(Rc::new(Value::Pi(mu.clone(), domv, TyClosure::new(env, cod))))
        }
        Ty::Sig(fst, snd) => {
            let fstv = eval_ty(th, env, fst)?;
            Ok(Rc::new(Value::Sig(fstv, TyClosure::new(env, snd))))
        }
        Ty::Bool => Ok(Rc::new(Value::Bool)),
        Ty::Id(a, l, r) => Ok(Rc::new(Value::Id(
            eval_ty(th, env, a)?,
            eval(th, env, l)?,
            eval(th, env, r)?,
        ))),
        Ty::Mod(mu, a) => {
            let av = eval_ty(th, &env.push_lock(mu.clone()), a)?;
            Ok(Rc::new(Value::Mod(mu.clone(), av)))
        }
        Ty::Uni => Ok(Rc::new(Value::Uni)),
        Ty::Dec(t) => Ok(Rc::new(Value::Dec(eval(th, env, t)?))),
    }
}

/// Injects a neutral into the semantic domain at a type. At dependent sums
/// this eagerly pairs the reflected projections; at functions application
/// extends the spine, so the neutral wrapper suffices.
pub fn reflect(th: &dyn ModeTheory, ty: &Rc<VTy>, ne: SemNe) -> VResult {
    match &**ty {
        Value::Sig(a, b) => {
            let fst = reflect(th, a, ne.push(Elim::Fst))?;
            let snd_ty = b.inst(th, fst.clone())?;
            let snd = reflect(th, &snd_ty, ne.push(Elim::Snd))?;
            Ok(Rc::new(Value::Pair(fst, snd)))
        }
        _ => Ok(Rc::new(Value::Neutral(ty.clone(), ne))),
    }
}

fn fresh(th: &dyn ModeTheory, ty: &Rc<VTy>, lvl: u32, annot: &Modality) -> VResult {
    reflect(th, ty, SemNe::var(Lvl(lvl), th.id_cell(annot)))
}

fn lvl_to_index(depth: u32, lvl: Lvl) -> Result<Index, EvalError> {
    if lvl.0 >= depth {
        return Err(EvalError::Impossible("level escapes readback depth"));
    }
    Ok(Index(depth - 1 - lvl.0))
}

/// Reads a value back to an eta-long normal form. `depth` counts the binders
/// of the readback context and `mode` is its mode.
pub fn reify(
    th: &dyn ModeTheory,
    depth: u32,
    mode: Mode,
    ty: &Rc<VTy>,
    v: &Rc<Value>,
) -> Result<Nf, EvalError> {
    match &**ty {
        Value::Pi(mu, dom, cod) => {
            let x = fresh(th, dom, depth, mu)?;
            let body_ty = cod.inst(th, x.clone())?;
            let body = do_app(th, mu, v, x)?;
            Ok(Nf::Lam(Box::new(reify(th, depth + 1, mode, &body_ty, &body)?)))
        }
        Value::Sig(a, b) => {
            let fst = do_fst(th, v)?;
            let snd = do_snd(th, v)?;
            let snd_ty = b.inst(th, fst.clone())?;
            Ok(Nf::Pair(
                Box::new(reify(th, depth, mode, a, &fst)?),
                Box::new(reify(th, depth, mode, &snd_ty, &snd)?),
            ))
        }
        Value::Bool => match &**v {
            Value::True => Ok(Nf::True),
            Value::False => Ok(Nf::False),
            Value::Neutral(_, ne) => Ok(Nf::Inj(Box::new(readback_ne(th, depth, mode, ne)?))),
            _ => Err(EvalError::Impossible("boolean value expected")),
        },
        Value::Id(a, _, _) => match &**v {
            Value::Refl(x) => Ok(Nf::Refl(Box::new(reify(th, depth, mode, a, x)?))),
            Value::Neutral(_, ne) => Ok(Nf::Inj(Box::new(readback_ne(th, depth, mode, ne)?))),
            _ => Err(EvalError::Impossible("path value expected")),
        },
        Value::Mod(nu, a) => match &**v {
            Value::MkBox(_, inner) => Ok(Nf::MkBox(
                nu.clone(),
                Box::new(reify(th, depth, nu.dom, a, inner)?),
            )),
            Value::Neutral(_, ne) => Ok(Nf::Inj(Box::new(readback_ne(th, depth, mode, ne)?))),
            _ => Err(EvalError::Impossible("boxed value expected")),
        },
        Value::Uni => match &**v {
            Value::PiCode(mu, a, fam) => {
                let dom_nf = reify(th, depth, mu.dom, &Rc::new(Value::Uni), a)?;
                let x = fresh(th, &Rc::new(Value::Dec(a.clone())), depth, mu)?;
                let body = fam.apply(th, x)?;
                let body_nf = reify(th, depth + 1, mode, &Rc::new(Value::Uni), &body)?;
                Ok(Nf::PiCode(mu.clone(), Box::new(dom_nf), Box::new(body_nf)))
            }
            Value::SigCode(a, fam) => {
                let a_nf = reify(th, depth, mode, &Rc::new(Value::Uni), a)?;
                let id = Modality::identity(mode);
                let x = fresh(th, &Rc::new(Value::Dec(a.clone())), depth, &id)?;
                let body = fam.apply(th, x)?;
                let body_nf = reify(th, depth + 1, mode, &Rc::new(Value::Uni), &body)?;
                Ok(Nf::SigCode(Box::new(a_nf), Box::new(body_nf)))
            }
            Value::BoolCode => Ok(Nf::BoolCode),
            Value::ModCode(mu, a) => Ok(Nf::ModCode(
                mu.clone(),
                Box::new(reify(th, depth, mu.dom, &Rc::new(Value::Uni), a)?),
            )),
            Value::Neutral(_, ne) => Ok(Nf::Inj(Box::new(readback_ne(th, depth, mode, ne)?))),
            _ => Err(EvalError::Impossible("code value expected")),
        },
        Value::Dec(code) => match &**v {
            Value::DownWrap(k, inner) => {
                if code_kind(code) != Some(*k) {
                    return Err(EvalError::Impossible("coercion kind mismatch"));
                }
                let unfolded = Rc::new(unfold_code(code)?);
                Ok(Nf::Down(*k, Box::new(reify(th, depth, mode, &unfolded, inner)?)))
            }
            Value::Neutral(_, ne) => Ok(Nf::Inj(Box::new(readback_ne(th, depth, mode, ne)?))),
            _ => Err(EvalError::Impossible("decoded-code value expected")),
        },
        _ => Err(EvalError::Impossible("not a type value")),
    }
}

pub fn reify_ty(
    th: &dyn ModeTheory,
    depth: u32,
    mode: Mode,
    ty: &Rc<VTy>,
) -> Result<NfTy, EvalError> {
    match &**ty {
        Value::Pi(mu, dom, cod) => {
            let dom_nf = reify_ty(th, depth, mu.dom, dom)?;
            let x = fresh(th, dom, depth, mu)?;
            let cod_v = cod.inst(th, x)?;
            let cod_nf = reify_ty(th, depth + 1, mode, &cod_v)?;
            Ok(NfTy::Pi(mu.clone(), Box::new(dom_nf), Box::new(cod_nf)))
        }
        Value::Sig(a, b) => {
            let a_nf = reify_ty(th, depth, mode, a)?;
            let id = Modality::identity(mode);
            let x = fresh(th, a, depth, &id)?;
            let b_v = b.inst(th, x)?;
            let b_nf = reify_ty(th, depth + 1, mode, &b_v)?;
            Ok(NfTy::Sig(Box::new(a_nf), Box::new(b_nf)))
        }
        Value::Bool => Ok(NfTy::Bool),
        Value::Id(a, l, r) => Ok(NfTy::Id(
            Box::new(reify_ty(th, depth, mode, a)?),
            Box::new(reify(th, depth, mode, a, l)?),
            Box::new(reify(th, depth, mode, a, r)?),
        )),
        Value::Mod(nu, a) => Ok(NfTy::Mod(
            nu.clone(),
            Box::new(reify_ty(th, depth, nu.dom, a)?),
        )),
        Value::Uni => Ok(NfTy::Uni),
        Value::Dec(code) => Ok(NfTy::Dec(Box::new(reify(
            th,
            depth,
            mode,
            &Rc::new(Value::Uni),
            code,
        )?))),
        _ => Err(EvalError::Impossible("not a type value")),
    }
}

fn readback_ne(
    th: &dyn ModeTheory,
    depth: u32,
    mode: Mode,
    ne: &SemNe,
) -> Result<Ne, EvalError> {
    let Some((last, prefix)) = ne.spine.split_last() else {
        return Ok(Ne::Var(lvl_to_index(depth, ne.head)?, ne.cell.clone()));
    };
    let prefix_ne = SemNe { head: ne.head, cell: ne.cell.clone(), spine: prefix.to_vec() };
    match last {
        Elim::App { modality, arg, arg_ty } => {
            let head = readback_ne(th, depth, mode, &prefix_ne)?;
            let arg_nf = reify(th, depth, modality.dom, arg_ty, arg)?;
            Ok(Ne::App(modality.clone(), Box::new(head), Box::new(arg_nf)))
        }
        Elim::Fst => Ok(Ne::Fst(Box::new(readback_ne(th, depth, mode, &prefix_ne)?))),
        Elim::Snd => Ok(Ne::Snd(Box::new(readback_ne(th, depth, mode, &prefix_ne)?))),
        Elim::If { motive, then_v, else_v } => {
            let head = readback_ne(th, depth, mode, &prefix_ne)?;
            let id = Modality::identity(mode);
            let b = fresh(th, &Rc::new(Value::Bool), depth, &id)?;
            let motive_v = motive.inst(th, b)?;
            let motive_nf = reify_ty(th, depth + 1, mode, &motive_v)?;
            let then_ty = motive.inst(th, Rc::new(Value::True))?;
            let else_ty = motive.inst(th, Rc::new(Value::False))?;
            Ok(Ne::If(
                Box::new(motive_nf),
                Box::new(head),
                Box::new(reify(th, depth, mode, &then_ty, then_v)?),
                Box::new(reify(th, depth, mode, &else_ty, else_v)?),
            ))
        }
        Elim::J { motive, refl_case, scrut_ty } => {
            let head = readback_ne(th, depth, mode, &prefix_ne)?;
            let Value::Id(a, _, _) = &**scrut_ty else {
                return Err(EvalError::Impossible("identity spine without identity type"));
            };
            let id = Modality::identity(mode);
            let x0 = fresh(th, a, depth, &id)?;
            let x1 = fresh(th, a, depth + 1, &id)?;
            let path_ty = Rc::new(Value::Id(a.clone(), x0.clone(), x1.clone()));
            let p = fresh(th, &path_ty, depth + 2, &id)?;
            let motive_v = motive.inst3(th, x0, x1, p)?;
            let motive_nf = reify_ty(th, depth + 3, mode, &motive_v)?;
            let x = fresh(th, a, depth, &id)?;
            let rc_ty = motive.inst3(th, x.clone(), x.clone(), Rc::new(Value::Refl(x.clone())))?;
            let rc_v = refl_case.apply(th, x)?;
            let rc_nf = reify(th, depth + 1, mode, &rc_ty, &rc_v)?;
            Ok(Ne::J(Box::new(motive_nf), Box::new(rc_nf), Box::new(head)))
        }
        Elim::CrispJ { modality, motive, refl_case, scrut_ty } => {
            let head = readback_ne(th, depth, modality.dom, &prefix_ne)?;
            let Value::Id(a, _, _) = &**scrut_ty else {
                return Err(EvalError::Impossible("identity spine without identity type"));
            };
            let x0 = fresh(th, a, depth, modality)?;
            let x1 = fresh(th, a, depth + 1, modality)?;
            let path_ty = Rc::new(Value::Id(a.clone(), x0.clone(), x1.clone()));
            let p = fresh(th, &path_ty, depth + 2, modality)?;
            let motive_v = motive.inst3(th, x0, x1, p)?;
            let motive_nf = reify_ty(th, depth + 3, mode, &motive_v)?;
            let x = fresh(th, a, depth, modality)?;
            let rc_ty = motive.inst3(th, x.clone(), x.clone(), Rc::new(Value::Refl(x.clone())))?;
            let rc_v = refl_case.apply(th, x)?;
            let rc_nf = reify(th, depth + 1, mode, &rc_ty, &rc_v)?;
            Ok(Ne::CrispJ(
                modality.clone(),
                Box::new(motive_nf),
                Box::new(rc_nf),
                Box::new(head),
            ))
        }
        Elim::LetMod { frame, main, motive, body, scrut_ty } => {
            let head = readback_ne(th, depth, frame.dom, &prefix_ne)?;
            let Value::Mod(_, a) = &**scrut_ty else {
                return Err(EvalError::Impossible("modal spine without modal type"));
            };
            let m = fresh(th, scrut_ty, depth, frame)?;
            let motive_v = motive.inst(th, m)?;
            let motive_nf = reify_ty(th, depth + 1, mode, &motive_v)?;
            let composite = th.compose_mod(frame, main)?;
            let x = fresh(th, a, depth, &composite)?;
            let body_ty = motive.inst(th, Rc::new(Value::MkBox(main.clone(), x.clone())))?;
            let body_v = body.apply(th, x)?;
            let body_nf = reify(th, depth + 1, mode, &body_ty, &body_v)?;
            Ok(Ne::LetMod {
                frame: frame.clone(),
                main: main.clone(),
                motive: Box::new(motive_nf),
                scrut: Box::new(head),
                body: Box::new(body_nf),
            })
        }
        Elim::Up { kind, .. } => {
            let head = readback_ne(th, depth, mode, &prefix_ne)?;
            Ok(Ne::Up(*kind, Box::new(head)))
        }
    }
}

/// The initial environment over a context: a fresh reflected variable for
/// each binder, a lock marker for each lock. Returns the environment and the
/// binder count.
pub fn init_env(th: &dyn ModeTheory, ctx: &Ctx) -> Result<(Env, u32), EvalError> {
    match ctx {
        Ctx::Empty(_) => Ok((Env::new(), 0)),
        Ctx::Lock(inner, mu) => {
            let (env, n) = init_env(th, inner)?;
            Ok((env.push_lock(mu.clone()), n))
        }
        Ctx::Ext(inner, mu, a) => {
            let (env, n) = init_env(th, inner)?;
            let ty = eval_ty(th, &env.push_lock(mu.clone()), a)?;
            let v = fresh(th, &ty, n, mu)?;
            Ok((env.push_val(v), n + 1))
        }
    }
}

/// Normalizes a well-typed term: evaluate, then read back eta-long.
pub fn normalize(th: &dyn ModeTheory, ctx: &Ctx, a: &Ty, m: &Tm) -> Result<Nf, EvalError> {
    let (env, depth) = init_env(th, ctx)?;
    debug_assert_eq!(depth, ctx_len(ctx));
    let mode = mode_of(ctx);
    let ty = eval_ty(th, &env, a)?;
    let v = eval(th, &env, m)?;
    reify(th, depth, mode, &ty, &v)
}

pub fn normalize_ty(th: &dyn ModeTheory, ctx: &Ctx, a: &Ty) -> Result<NfTy, EvalError> {
    let (env, depth) = init_env(th, ctx)?;
    let mode = mode_of(ctx);
    let ty = eval_ty(th, &env, a)?;
    reify_ty(th, depth, mode, &ty)
}
