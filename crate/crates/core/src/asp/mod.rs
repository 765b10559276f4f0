//! Stable model semantics: grounding, reducts, stable models, entailment,
//! the overline program, refutations and derivations.

mod ground;
mod overline;
mod search;
mod semantics;
mod trees;

pub use ground::{
    ground, ground_relevant, GroundClause, GroundProgram, Model, DEFAULT_GROUNDING_CAP,
};
pub use overline::{horn_interpretation, m_bar, overline, Bar, HornClause, Overline, Show};
pub use search::{enumerate_stable_models, find_stable_model, SearchStats, StableSearch};
pub use semantics::{
    interpretation, is_stable, lfp, reduct, sms_entails, stable_models, stable_models_ground,
    DEFAULT_ENUMERATION_CAP,
};
pub use trees::{
    check_derivation, check_refutation, find_derivation_no_returns, find_refutation, DerNode,
    Derivation, Label, RefNode, RefutationTree,
};
