//! Operation-to-subcommand map.
//!
//! Each public library operation is reachable from exactly one subcommand;
//! the tests below keep the table and the actual `clap` tree in sync, so
//! adding an operation or a subcommand without wiring it up fails the build's
//! test run rather than going unnoticed.

/// One library operation and the subcommand that exercises it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpMapping {
    pub module: &'static str,
    pub operation: &'static str,
    pub subcommand: &'static str,
}

const fn op(module: &'static str, operation: &'static str, subcommand: &'static str) -> OpMapping {
    OpMapping { module, operation, subcommand }
}

pub const OPERATION_REGISTRY: &[OpMapping] = &[
    // numerics
    op("numerics", "zeta", "ifs build"),
    op("numerics", "certified_floor", "construct em"),
    op("numerics", "eval_growth", "diagnose"),
    // cf
    op("cf", "expand", "expand"),
    op("cf", "stats", "expand"),
    op("cf", "convergents", "cylinder"),
    op("cf", "cylinder", "cylinder"),
    op("cf", "khintchine_mc", "khintchine"),
    // compsum
    op("compsum", "composition_sum", "lemma-verify"),
    op("compsum", "lemma_bound", "lemma-verify"),
    op("compsum", "verify_lemma", "lemma-verify"),
    op("compsum", "generalized_bound_constant", "lemma-verify"),
    // constructions
    op("constructions", "n_zero", "construct a"),
    op("constructions", "digit_window", "construct a"),
    op("constructions", "stream_a", "construct a"),
    op("constructions", "check_b_assumptions", "construct b"),
    op("constructions", "stream_b", "construct b"),
    op("constructions", "stream_em", "construct em"),
    op("constructions", "stream_f", "construct f"),
    op("constructions", "sample_mu", "construct mu"),
    op("constructions", "membership_diagnostics", "diagnose"),
    // dimension
    op("dimension", "cover_sum_terms", "cover-sum"),
    op("dimension", "solve_sl", "solve-sl"),
    op("dimension", "local_dimension_profile", "profile"),
    op("dimension", "finite_depth_dimension", "dimension-estimate"),
    op("dimension", "figure1_data", "figure1"),
    // ifs
    op("ifs", "build_affine", "ifs build"),
    op("ifs", "gauss_as_ddecaying", "ifs build"),
    op("ifs", "project", "ifs project"),
    op("ifs", "symbolic_expand", "ifs expand"),
    op("ifs", "predicted_dimension", "ifs predict"),
];
