/// Size caps shared by the combinatorial routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest root-system rank whose Weyl group may be enumerated.
    pub max_rank: usize,
    /// Largest representation dimension for which weights are expanded.
    pub max_dimension: u128,
}

pub const DEFAULT_MAX_RANK: usize = 8;
pub const DEFAULT_MAX_DIMENSION: u128 = 1_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: DEFAULT_MAX_RANK,
            max_dimension: DEFAULT_MAX_DIMENSION,
        }
    }
}
