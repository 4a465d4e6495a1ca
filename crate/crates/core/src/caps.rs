//! Size caps for exhaustive enumeration.

use std::sync::OnceLock;

/// Default bound on the number of presheaves enumerated for one category.
pub const DEFAULT_PRESHEAF_CAP: usize = 4096;

/// Bound on the number of extent-respecting candidate maps a functor search
/// may visit.
pub const FUNCTOR_SEARCH_CAP: usize = 1 << 22;

/// Presheaf cap, overridable through `QUANTIKIT_CAP`.
pub fn presheaf_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("QUANTIKIT_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_PRESHEAF_CAP)
    })
}
