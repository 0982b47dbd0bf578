//! Decomposition of a single induced block `Ind_P^G(T_δ)`.
//!
//! The discrete part is parametrised by tuples `a` with a sign (only for
//! `Spin(2n,1)`), the continuous part by `M`-types `φ` each carrying a
//! Plancherel density on `(0, ∞)`. Both parameter sets are infinite; they are
//! exposed as membership predicates plus enumerators truncated at an explicit
//! cutoff on the leading entry.

use std::cmp::Reverse;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::interlace::interval_product;
use crate::reps::{weyl_dimension, IrrepLabel};
use crate::restriction::Sign;
use crate::weight::{Parity, WeightVector};

fn require_even_spin(ctx: &GroupContext) -> Result<()> {
    if !ctx.even_spin {
        return Err(Error::domain(format!(
            "{} has no discrete series (discrete series exist only for Spin(2n,1))",
            ctx.group_name()
        )));
    }
    Ok(())
}

fn require_rank(what: &str, w: &WeightVector, rank: usize) -> Result<()> {
    if w.rank() != rank {
        return Err(Error::domain(format!("{what} = {w} must have length {rank}")));
    }
    Ok(())
}

/// Does `π₀^±(γ_a)` occur in `Ind_P^G(T_δ)`? True iff
/// `a₁+1 ≥ b₁ ≥ a₂+1 ≥ … ≥ b_{n−2} ≥ a_{n−1}+1 ≥ ∓b_{n−1} ≥ a_n+1`, `b_i − a₁ ∈ ℤ`
/// and `a_n ≥ 0`, where `b = δ` and `∓` is opposite to `sign`.
pub fn in_d0(ctx: &GroupContext, delta: &WeightVector, a: &WeightVector, sign: Sign) -> Result<bool> {
    require_even_spin(ctx)?;
    require_rank("delta", delta, ctx.rs_mprime.rank)?;
    require_rank("a", a, ctx.n as usize)?;
    if !delta.first().same_class(a.first()) {
        return Ok(false);
    }
    let (b, a) = (delta.coords(), a.coords());
    let k = b.len();
    let one = HalfInt::ONE;
    let x = |i: usize| if i + 1 == k { b[i] * sign.chain_factor() } else { b[i] };
    let chain = (0..k).all(|i| a[i] + one >= x(i) && x(i) >= a[i + 1] + one);
    Ok(chain && a[k] >= HalfInt::ZERO)
}

/// Does the principal series fibre `{φ, t > 0}` occur in `Ind_P^G(T_δ)`?
///
/// `m` odd: `φ₁ ≥ b₁ ≥ φ₂ ≥ … ≥ φ_{n−1} ≥ |b_{n−1}|`;
/// `m` even: `φ₁ ≥ b₁ ≥ … ≥ φ_{n−2} ≥ b_{n−2} ≥ |φ_{n−1}|`; in both cases `b_i − φ₁ ∈ ℤ`.
pub fn in_c(ctx: &GroupContext, delta: &WeightVector, phi: &WeightVector) -> Result<bool> {
    require_rank("delta", delta, ctx.rs_mprime.rank)?;
    require_rank("phi", phi, ctx.rs_m.rank)?;
    let integral = delta.first().same_class(phi.first());
    let same_parity = delta.parity() == phi.parity();
    if integral != same_parity {
        log::warn!("parity clauses disagree for delta={delta}, phi={phi}");
    }
    if !(integral && same_parity) {
        return Ok(false);
    }
    let (b, p) = (delta.coords(), phi.coords());
    let k = b.len();
    let chain = if ctx.even_spin {
        (0..k - 1).all(|i| p[i] >= b[i] && b[i] >= p[i + 1]) && p[k - 1] >= b[k - 1].abs()
    } else {
        (0..k).all(|i| p[i] >= b[i] && b[i] >= p[i + 1]) && b[k - 1] >= p[k].abs()
    };
    Ok(chain)
}

/// A discrete series parameter `(a, ±)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscreteParam {
    pub a: WeightVector,
    pub sign: Sign,
}

/// All `(a, ±)` in `𝒟₀(δ) × {+,−}` with `a₁ ≤ cutoff`, ordered by `a` then sign.
pub fn enumerate_discrete(ctx: &GroupContext, delta: &WeightVector, cutoff: HalfInt) -> Result<Vec<DiscreteParam>> {
    require_even_spin(ctx)?;
    require_rank("delta", delta, ctx.rs_mprime.rank)?;
    let b = delta.coords();
    let k = b.len();
    let one = HalfInt::ONE;
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let x: Vec<HalfInt> = (0..k)
            .map(|i| if i + 1 == k { b[i] * sign.chain_factor() } else { b[i] })
            .collect();
        // a₁ ∈ [x₁−1, cutoff], a_i ∈ [x_i−1, x_{i−1}−1], a_n ∈ [0, x_{n−1}−1]
        let mut bounds = vec![(x[0] - one, cutoff)];
        bounds.extend((1..k).map(|i| (x[i] - one, x[i - 1] - one)));
        bounds.push((HalfInt::ZERO, x[k - 1] - one));
        out.extend(
            interval_product(&bounds, delta.parity())
                .into_iter()
                .map(|a| DiscreteParam { a, sign }),
        );
    }
    out.sort();
    Ok(out)
}

/// All `φ` in `𝒞(δ)` with `φ₁ ≤ cutoff`.
///
/// Ordered by the tuple of absolute values, and for equal magnitudes with the
/// larger tuple first, so that `(…, x)` precedes its mirror `(…, −x)`.
pub fn enumerate_continuous(ctx: &GroupContext, delta: &WeightVector, cutoff: HalfInt) -> Result<Vec<WeightVector>> {
    require_rank("delta", delta, ctx.rs_mprime.rank)?;
    let b = delta.coords();
    let k = b.len();
    let mut bounds = Vec::with_capacity(ctx.rs_m.rank);
    if ctx.even_spin {
        // φ₁ ∈ [b₁, cutoff], φ_i ∈ [b_i, b_{i−1}], φ_{n−1} ∈ [|b_{n−1}|, b_{n−2}]
        for i in 0..k {
            let lo = if i + 1 == k { b[i].abs() } else { b[i] };
            let hi = if i == 0 { cutoff } else { b[i - 1] };
            bounds.push((lo, hi));
        }
    } else {
        for i in 0..k {
            bounds.push((b[i], if i == 0 { cutoff } else { b[i - 1] }));
        }
        bounds.push((-b[k - 1], b[k - 1]));
    }
    let mut out = interval_product(&bounds, delta.parity());
    out.sort_by_key(|phi| {
        let abs: Vec<HalfInt> = phi.coords().iter().map(|c| c.abs()).collect();
        (abs, Reverse(phi.clone()))
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    Tanh,
    Coth,
    Flat,
}

/// Which printed form of the root constants to use for `Spin(2n,1)`.
///
/// `Proposition` uses `a_i + n − i − ½` and is the default; `Theorem` uses
/// `a_i + n − i + ½` and exists for comparison only. The two agree for `m` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityVariant {
    #[default]
    Proposition,
    Theorem,
}

impl std::str::FromStr for DensityVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "proposition" => Ok(DensityVariant::Proposition),
            "theorem" => Ok(DensityVariant::Theorem),
            other => Err(format!("unknown density variant {other:?} (expected proposition|theorem)")),
        }
    }
}

impl fmt::Display for DensityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DensityVariant::Proposition => "proposition",
            DensityVariant::Theorem => "theorem",
        })
    }
}

/// A positive rational `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0);
        let (mut a, mut b) = (num, den);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Ratio { num: num / a, den: den / a }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let parse = |x: &str| x.trim().parse::<u128>().map_err(serde::de::Error::custom);
        match s.split_once('/') {
            None => Ok(Ratio::new(parse(&s)?, 1)),
            Some((n, d)) => {
                let den = parse(d)?;
                if den == 0 {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(Ratio::new(parse(n)?, den))
            }
        }
    }
}

/// Closed form of the Plancherel density attached to an `M`-type `φ`:
///
/// `density(t) = factor(tπ) · prefactor · dim φ · t^{t_power} · ∏_i (t² + r_i²)`
///
/// with `factor ∈ {tanh, coth, 1}` and `prefactor = 1 / (π^{pi_power} Γ(gamma_argument))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlancherelDensity {
    pub kind: DensityKind,
    pub n: u32,
    pub phi: WeightVector,
    pub phi_dim: u64,
    pub roots: Vec<HalfInt>,
    pub t_power: u32,
    pub pi_power: HalfInt,
    pub gamma_argument: HalfInt,
}

fn factorial(k: u128) -> u128 {
    (1..=k).product()
}

impl PlancherelDensity {
    /// `1/Γ(gamma_argument)` as `rational · π^{-½·half_pi}` (the √π of a
    /// half-integer argument is returned in `half_pi`).
    fn inverse_gamma(&self) -> (Ratio, i64) {
        let g = self.gamma_argument;
        if let Some(k) = g.to_integer() {
            (Ratio::new(1, factorial((k - 1) as u128)), 0)
        } else {
            // Γ(k + ½) = (2k)! √π / (4^k k!)
            let k = ((g.doubled() - 1) / 2) as u128;
            (Ratio::new(4u128.pow(k as u32) * factorial(k), factorial(2 * k)), 1)
        }
    }

    /// The prefactor as an exact `rational · π^{−power}`.
    pub fn prefactor_exact(&self) -> (Ratio, HalfInt) {
        let (r, half_pi) = self.inverse_gamma();
        (r, self.pi_power + HalfInt::from_doubled(half_pi))
    }

    pub fn prefactor(&self) -> f64 {
        let (r, p) = self.prefactor_exact();
        r.to_f64() / PI.powf(p.to_f64())
    }

    /// Evaluates the density at `t`. `coth` densities have a pole at 0 and
    /// are only defined for `t > 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        density_eval(self, t)
    }
}

pub fn plancherel_density(ctx: &GroupContext, phi: &WeightVector, variant: DensityVariant) -> Result<PlancherelDensity> {
    let label = IrrepLabel::new(ctx.rs_m, phi.clone())?;
    let n = ctx.n as i64;
    let (kind, offset, t_power, pi_power, gamma_argument) = if ctx.even_spin {
        let kind = match phi.parity() {
            Parity::Integer => DensityKind::Tanh,
            Parity::HalfInteger => DensityKind::Coth,
        };
        let offset = match variant {
            DensityVariant::Proposition => -HalfInt::HALF,
            DensityVariant::Theorem => HalfInt::HALF,
        };
        (kind, offset, 1, HalfInt::from_int(n), HalfInt::from_int(n))
    } else {
        let n_half = HalfInt::from_int(n) - HalfInt::HALF;
        (DensityKind::Flat, -HalfInt::ONE, 0, n_half, n_half)
    };
    let roots = phi
        .coords()
        .iter()
        .enumerate()
        .map(|(idx, a)| *a + HalfInt::from_int(n - (idx as i64 + 1)) + offset)
        .collect();
    let dim = weyl_dimension(&label);
    Ok(PlancherelDensity {
        kind,
        n: ctx.n,
        phi: phi.clone(),
        phi_dim: u64::try_from(dim).map_err(|_| Error::Resource(format!("dim {phi} = {dim} overflows u64")))?,
        roots,
        t_power,
        pi_power,
        gamma_argument,
    })
}

pub fn density_eval(d: &PlancherelDensity, t: f64) -> Result<f64> {
    let factor = match d.kind {
        DensityKind::Tanh => (t * PI).tanh(),
        DensityKind::Coth => {
            if t <= 0.0 {
                return Err(Error::domain(format!("coth density is singular at t = {t}; need t > 0")));
            }
            1.0 / (t * PI).tanh()
        }
        DensityKind::Flat => 1.0,
    };
    let t2 = t * t;
    let poly: f64 = d.roots.iter().map(|r| t2 + r.to_f64() * r.to_f64()).product();
    Ok(factor * d.prefactor() * d.phi_dim as f64 * t.powi(d.t_power as i32) * poly)
}
