use serde::{Deserialize, Serialize};

/// Resource ceilings shared by every bounded computation.
///
/// Nothing in the crate runs unbounded: enumeration, reconstruction and searches all
/// consult one of these and fail with [`crate::Error::Ceiling`] when it is exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest number of intermediate rays double description may hold.
    pub max_rays: usize,
    /// Largest coordinate-sum bound accepted by brute-force enumeration.
    pub max_bound: u64,
    /// Largest number of vectors a brute-force enumeration may return.
    pub max_results: usize,
    /// Largest number of pieces reconstruction will instantiate.
    pub max_pieces: u64,
    /// Longest normal loop enumerated on a tetrahedron boundary.
    pub max_loop_length: usize,
    /// Largest number of states a complexity or width search may visit.
    pub max_search_states: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rays: 200_000,
            max_bound: 12,
            max_results: 1_000_000,
            max_pieces: 1_000_000,
            max_loop_length: 20,
            max_search_states: 1_000_000,
        }
    }
}

impl Limits {
    /// Applies a uniform override to every ceiling.
    pub fn with_all(value: u64) -> Limits {
        let as_usize = usize::try_from(value).unwrap_or(usize::MAX);
        Limits {
            max_rays: as_usize,
            max_bound: value,
            max_results: as_usize,
            max_pieces: value,
            max_loop_length: as_usize,
            max_search_states: value,
        }
    }
}
