//! A mode-theory-generic kernel for multimodal type theory.
//!
//! The kernel is parameterized by a [`mode_theory::ModeTheory`]: a strict
//! 2-category of modes, modalities, and 2-cells with decidable equality.
//! On top of it sit de Bruijn core syntax ([`syntax`]), normal and neutral
//! forms with a renaming action ([`normal`], [`rename`]), a
//! normalization-by-evaluation engine ([`nbe`]), and a bidirectional type
//! checker whose conversion judgment compares normal forms ([`check`]).

pub mod check;
pub mod mode_theory;
pub mod nbe;
pub mod normal;
pub mod rename;
pub mod syntax;

pub use check::{check_program, Decl, ElabCtx, TypeError};
pub use mode_theory::{builtin, Cell, Guarded, Modality, Mode, ModeTheory, Trivial, Walking};
pub use nbe::{eval, eval_ty, init_env, normalize, normalize_ty, Env, EvalError, Value};
pub use normal::{decode_ne, decode_nf, decode_nfty, ne_eq, nf_eq, nfty_eq, Ne, Nf, NfTy};
pub use rename::{ren_compose, ren_id, rename_ne, rename_nf, rename_nfty, Ren, RenameError};
pub use syntax::{locks_of, lookup, mode_of, CodeKind, Ctx, Index, Tm, Ty};
