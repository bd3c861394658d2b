//! Exact q-expansions, eta quotients, the built-in level-2 forms,
//! coefficient ingestion and truncated evaluation.

mod eta;
mod eval;
mod expansion;
mod format;
mod forms;
mod source;

pub use eta::{eta_quotient, parse_eta_expr};
pub use eval::{eval_form, principal_part_guard_bits, truncation_order, FormEvaluator, MAX_TRUNCATION};
pub use expansion::{QExpansion, EXACT};
pub use format::{parse_coefficients, write_coefficients};
pub use forms::{builtin_form, FormKind, FormSpec, GrowthBound, BUILTIN_NAMES, GROWTH_SAFETY};
pub use source::{
    bundled, bundled_labels, cache_dir, fetch, load_coefficients, parse_api_response, CoefficientSource, DEFAULT_API_URL,
};
