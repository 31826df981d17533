/// Resource caps threaded through every potentially expanding computation.
///
/// Defaults match the documented configuration values; the CLI exposes
/// `--monomial-cap` to override the per-degree monomial bound.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of monomials allowed in a single degree of a
    /// realization. Exceeding it aborts with a resource error.
    pub monomial_cap: usize,
    /// Column count below which elimination scans densely; at or above it the
    /// unit-pivot prescan is used first. Both strategies are deterministic.
    pub dense_threshold: usize,
    /// Maximum number of candidate tuples an exhaustive map enumeration may
    /// visit before aborting with a resource error.
    pub enumeration_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { monomial_cap: 20_000, dense_threshold: 64, enumeration_cap: 1 << 22 }
    }
}
