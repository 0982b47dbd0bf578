//! Descriptors for the second tensor factor `π₂` and the finite branching
//! `π₂|_P ≅ ⊕_j T_{τ_j}` into discrete series of the minimal parabolic `P`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::interlace::interval_product;
use crate::reps::{interlacing_bounds, IrrepLabel};
use crate::weight::{Parity, WeightVector};

/// Which of the two discrete series `π₀^±(γ)` sharing an infinitesimal character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// The sign applied to the last `M′`-coordinate in the interlacing chain.
    /// It is opposite to the series sign.
    pub(crate) fn chain_factor(self) -> i64 {
        match self {
            Sign::Plus => -1,
            Sign::Minus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("invalid sign {other:?}: expected \"+\" or \"-\"")),
        }
    }
}

/// An irreducible unitary representation `π₂` of `G` covered by the engine.
///
/// The trivial representation has no descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Pi2Descriptor {
    /// `Ind(V_{M,μ} ⊗ e^{itλ₀} ⊗ 1)`.
    Principal { mu: WeightVector, t: f64 },
    /// `π₀^±(γ)` with `γ = (a₁+n−½, …, a_{n−1}+3/2, a_n+½)`. Only for `Spin(2n,1)`.
    Discrete { sign: Sign, a: WeightVector },
    /// Complementary series with `M`-type `μ` and real parameter `ν = aλ₀`.
    Complementary { mu: WeightVector, a: f64 },
}

impl Pi2Descriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            Pi2Descriptor::Principal { .. } => "principal",
            Pi2Descriptor::Discrete { .. } => "discrete",
            Pi2Descriptor::Complementary { .. } => "complementary",
        }
    }
}

/// `T_δ = Ind_{M′N}^P(F_δ ⊗ e^{iξ₀})` with the fixed character `ξ₀ = (0,…,0,1)` of `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TDelta {
    delta: IrrepLabel,
}

impl TDelta {
    pub fn new(ctx: &GroupContext, delta: IrrepLabel) -> Result<Self> {
        if delta.rs() != ctx.rs_mprime {
            return Err(Error::domain(format!(
                "{delta} is not a representation of M′ ({})",
                ctx.rs_mprime
            )));
        }
        Ok(TDelta { delta })
    }

    pub fn delta(&self) -> &IrrepLabel {
        &self.delta
    }
}

fn check_mu(ctx: &GroupContext, mu: &WeightVector, out: &mut Vec<String>) -> bool {
    if mu.rank() != ctx.rs_m.rank {
        out.push(format!(
            "mu has length {} but M = Spin({}) has rank {}",
            mu.rank(),
            ctx.m,
            ctx.rs_m.rank
        ));
        return false;
    }
    if !ctx.rs_m.is_dominant(mu) {
        out.push(format!("mu not dominant: {mu} violates the {} chamber", ctx.rs_m));
        return false;
    }
    true
}

/// Checks every invariant of a descriptor. An empty list means valid.
pub fn validate_pi2(ctx: &GroupContext, d: &Pi2Descriptor) -> Vec<String> {
    let mut out = Vec::new();
    match d {
        Pi2Descriptor::Principal { mu, t } => {
            check_mu(ctx, mu, &mut out);
            if !t.is_finite() {
                out.push(format!("principal series parameter t must be finite (got {t})"));
            }
        }
        Pi2Descriptor::Discrete { a, .. } => {
            if !ctx.even_spin {
                out.push(format!(
                    "discrete series exist only for Spin(2n,1); {} has none",
                    ctx.group_name()
                ));
                return out;
            }
            if a.rank() != ctx.n as usize {
                out.push(format!("discrete parameter a must have length n = {} (got {})", ctx.n, a.rank()));
                return out;
            }
            let c = a.coords();
            if !c.windows(2).all(|p| p[0] >= p[1]) {
                out.push(format!("discrete parameter a = {a} must satisfy a₁ ≥ … ≥ a_n"));
            }
            if a.last() < HalfInt::ZERO {
                out.push(format!(
                    "discrete parameter a = {a} must satisfy a_n ≥ 0 (limit cases a_n < 0 are not supported)"
                ));
            }
        }
        Pi2Descriptor::Complementary { mu, a } => {
            if check_mu(ctx, mu, &mut out) && mu.parity() != Parity::Integer {
                out.push(format!("complementary series require an integer mu (got {mu})"));
            }
            if !a.is_finite() {
                out.push(format!("complementary series parameter a must be finite (got {a})"));
                return out;
            }
            let n = ctx.n as f64;
            // even_spin: |a| < n − ½ and μ_j = 0 for n − |a| − ½ < j ≤ n − 1
            // odd spin:  |a| < n − 1 and μ_j = 0 for n − |a| − 1 < j ≤ n − 1
            let shift = if ctx.even_spin { 0.5 } else { 1.0 };
            let bound = n - shift;
            if a.abs() >= bound {
                out.push(format!("complementary parameter |a| = {} must be < {bound}", a.abs()));
            }
            if mu.rank() == ctx.rs_m.rank {
                let threshold = n - a.abs() - shift;
                for (idx, value) in mu.coords().iter().enumerate() {
                    let j = (idx + 1) as f64;
                    if j > threshold && *value != HalfInt::ZERO {
                        out.push(format!(
                            "complementary zero-tail violated: mu_{} = {value} must be 0 since {} > n − |a| − {shift} = {threshold}",
                            idx + 1,
                            idx + 1
                        ));
                    }
                }
            }
        }
    }
    out
}

/// The `M′`-types `τ_j` with `π₂|_P ≅ ⊕_j T_{τ_j}`, in lexicographic order.
pub fn restrict_pi2_to_p(ctx: &GroupContext, d: &Pi2Descriptor) -> Result<Vec<IrrepLabel>> {
    let violations = validate_pi2(ctx, d);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let taus = match d {
        Pi2Descriptor::Principal { mu, .. } | Pi2Descriptor::Complementary { mu, .. } => {
            interval_product(&interlacing_bounds(ctx, mu), mu.parity())
        }
        Pi2Descriptor::Discrete { sign, a } => interval_product(&discrete_bounds(a, *sign), a.parity()),
    };
    taus.into_iter().map(|tau| IrrepLabel::new(ctx.rs_mprime, tau)).collect()
}

/// `a₁+1 ≥ c₁ ≥ a₂+1 ≥ … ≥ c_{n−2} ≥ a_{n−1}+1 ≥ ∓c_{n−1} ≥ a_n+1`.
fn discrete_bounds(a: &WeightVector, sign: Sign) -> Vec<(HalfInt, HalfInt)> {
    let c = a.coords();
    let n = c.len();
    let one = HalfInt::ONE;
    let mut bounds: Vec<_> = (0..n - 2).map(|i| (c[i + 1] + one, c[i] + one)).collect();
    let (lo, hi) = (c[n - 1] + one, c[n - 2] + one);
    bounds.push(match sign.chain_factor() {
        1 => (lo, hi),
        _ => (-hi, -lo),
    });
    bounds
}
