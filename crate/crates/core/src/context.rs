//! Structure constants of `G = Spin(m+1, 1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::roots::RootSystem;

/// Derived data for `G = Spin(m+1,1)` with `M ≅ Spin(m)` and `M′ ≅ Spin(m−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupContext {
    pub m: u32,
    /// `G = Spin(2n, 1)`, which happens exactly when `m` is odd.
    pub even_spin: bool,
    pub n: u32,
    pub rs_m: RootSystem,
    pub rs_mprime: RootSystem,
    /// `ρ′ = (m/2)λ₀`, recorded as the scalar `m/2`.
    pub rho_prime: HalfInt,
}

impl GroupContext {
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::domain(format!("m must be ≥ 3 (got {m})")));
        }
        let even_spin = m % 2 == 1;
        let (n, rs_m, rs_mprime) = if even_spin {
            let n = m.div_ceil(2);
            (n, RootSystem::b(n as usize - 1), RootSystem::d(n as usize - 1))
        } else {
            let n = (m + 2) / 2;
            (n, RootSystem::d(n as usize - 1), RootSystem::b(n as usize - 2))
        };
        Ok(GroupContext {
            m,
            even_spin,
            n,
            rs_m,
            rs_mprime,
            rho_prime: HalfInt::from_doubled(m as i64),
        })
    }

    /// Human-readable name of `G`, e.g. `Spin(6,1)`.
    pub fn group_name(&self) -> String {
        format!("Spin({},1)", self.m + 1)
    }
}
