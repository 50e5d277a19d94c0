/// Enumeration budgets and size caps.
///
/// Every exhaustive search in the crate is bounded by one of these values and
/// reports the budget it would have needed when it bails out.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Hard cap on the order of any materialised Cayley table.
    pub max_group_order: usize,
    /// Allowance for internal scaffolding groups (products awaiting a
    /// quotient); these never reach the user.
    pub max_intermediate_order: usize,
    /// Candidate-tuple budget for limits, diamond spaces and cycle scans.
    pub limit_budget: u64,
    /// Cap on `|A| * |Z|` for the exhaustive one-fold classification.
    pub classify_order: usize,
    /// Cap on `|Z|` for the cochain oracle.
    pub cochain_base: usize,
    /// Cap on `|A|` for the cochain oracle.
    pub cochain_coeff: usize,
    /// Cap on the number of 2-cocycles enumerated per pair.
    pub cocycle_count: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_order: 512,
            max_intermediate_order: 2048,
            limit_budget: 10_000_000,
            classify_order: 24,
            cochain_base: 6,
            cochain_coeff: 8,
            cocycle_count: 65_536,
        }
    }
}

impl Caps {
    pub fn with_budget(budget: u64) -> Self {
        Caps { limit_budget: budget, ..Caps::default() }
    }
}
