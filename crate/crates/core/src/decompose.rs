//! Assembly of `π₁ ⊗̂ π₂ ≅ ⊕_{j,β,δ} n^j_β(δ) · Ind_P^G(T_δ)`.
//!
//! `π₁` is a unitary principal series with `M`-type `σ`. Its restriction
//! `σ|_{M′}` gives the set `𝓑`; the `P`-restriction of `π₂` gives the
//! `M′`-types `τ_j`. Each pair `(τ_j, β)` contributes the decomposition of
//! `F_β ⊗ τ_j` into `M′`-irreducibles `F_δ`, and every `F_δ` labels one
//! induced block `Ind_P^G(T_δ)` whose spectrum is described in [`crate::spectrum`].

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::kostant::tensor_support_kostant;
use crate::limits::Limits;
use crate::reps::{branch_m_to_mprime, klimyk_tensor, weyl_dimension, IrrepLabel, TensorMultiplicities};
use crate::restriction::{restrict_pi2_to_p, Pi2Descriptor, Sign};
use crate::spectrum::{
    density_eval, enumerate_continuous, enumerate_discrete, in_c, in_d0, plancherel_density, DensityVariant,
    PlancherelDensity,
};
use crate::weight::WeightVector;

/// `π₁ = Ind_P^G(σ ⊗ e^{itλ₀} ⊗ 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pi1Descriptor {
    pub sigma: IrrepLabel,
    /// Carried for reporting only: the decomposition does not depend on it.
    pub t: f64,
}

impl Pi1Descriptor {
    pub fn new(ctx: &GroupContext, sigma: WeightVector, t: f64) -> Result<Self> {
        let mut violations = Vec::new();
        if sigma.rank() != ctx.rs_m.rank {
            violations.push(format!(
                "sigma has length {} but M = Spin({}) has rank {}",
                sigma.rank(),
                ctx.m,
                ctx.rs_m.rank
            ));
        } else if !ctx.rs_m.is_dominant(&sigma) {
            violations.push(format!("sigma not dominant: {sigma} violates the {} chamber", ctx.rs_m));
        }
        if !t.is_finite() {
            violations.push(format!("pi1 parameter t must be finite (got {t})"));
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(Pi1Descriptor {
            sigma: IrrepLabel::new(ctx.rs_m, sigma)?,
            t,
        })
    }
}

/// Which algorithm decomposes the finite tensor products `F_β ⊗ τ_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TensorMethod {
    /// Double Weyl sum over Kostant's partition function.
    #[default]
    Kostant,
    /// Klimyk's rule over Freudenthal weight multiplicities.
    Klimyk,
}

/// One term `n^j_β(δ)` of the triple sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    /// 1-based index into the list of `τ_j`.
    pub j: usize,
    pub tau: WeightVector,
    pub beta: WeightVector,
    pub multiplicity: u64,
}

#[derive(Debug, Clone)]
pub struct TensorDecomposition {
    pub ctx: GroupContext,
    pub pi1: Pi1Descriptor,
    pub pi2: Pi2Descriptor,
    /// `τ_j` from the `P`-restriction of `π₂`.
    pub taus: Vec<IrrepLabel>,
    /// `𝓑`, the branching of `σ` to `M′`.
    pub branching: Vec<IrrepLabel>,
    /// `δ ↦ N(δ) = Σ_{j,β} n^j_β(δ)`, all entries positive.
    pub blocks: BTreeMap<WeightVector, u64>,
    pub provenance: BTreeMap<WeightVector, Vec<Contribution>>,
}

/// Structural equality: same group, `σ`, `π₂`, blocks and provenance. The
/// continuous parameter of `π₁` is ignored, as it never affects the result.
impl PartialEq for TensorDecomposition {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.pi1.sigma == other.pi1.sigma
            && self.pi2 == other.pi2
            && self.taus == other.taus
            && self.branching == other.branching
            && self.blocks == other.blocks
            && self.provenance == other.provenance
    }
}

impl TensorDecomposition {
    /// `Σ_δ N(δ) · dim F_δ`.
    pub fn block_dimension(&self) -> u128 {
        self.blocks
            .iter()
            .map(|(delta, n)| *n as u128 * weyl_dimension(&IrrepLabel::new(self.ctx.rs_mprime, delta.clone()).unwrap()))
            .sum()
    }

    /// `dim σ · Σ_j dim τ_j`.
    pub fn expected_dimension(&self) -> u128 {
        self.pi1.sigma.dimension() * self.taus.iter().map(IrrepLabel::dimension).sum::<u128>()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.blocks.values().copied().max().unwrap_or(0)
    }
}

pub fn decompose(ctx: &GroupContext, pi1: &Pi1Descriptor, pi2: &Pi2Descriptor, limits: &Limits) -> Result<TensorDecomposition> {
    decompose_with(ctx, pi1, pi2, TensorMethod::Kostant, limits)
}

pub fn decompose_with(
    ctx: &GroupContext,
    pi1: &Pi1Descriptor,
    pi2: &Pi2Descriptor,
    method: TensorMethod,
    limits: &Limits,
) -> Result<TensorDecomposition> {
    if pi1.sigma.rs() != ctx.rs_m {
        return Err(Error::Invalid(vec![format!("sigma {} is not an M-type of {}", pi1.sigma, ctx.group_name())]));
    }
    let taus = restrict_pi2_to_p(ctx, pi2)?;
    let branching = branch_m_to_mprime(ctx, &pi1.sigma)?;
    let pairs: Vec<(usize, &IrrepLabel, &IrrepLabel)> = taus
        .iter()
        .enumerate()
        .flat_map(|(j, tau)| branching.iter().map(move |beta| (j + 1, tau, beta)))
        .collect();

    let rs = ctx.rs_mprime;
    let pieces: Vec<(usize, &IrrepLabel, &IrrepLabel, TensorMultiplicities)> = pairs
        .par_iter()
        .map(|&(j, tau, beta)| {
            let product = match method {
                TensorMethod::Kostant => tensor_support_kostant(rs, beta, tau, limits)?,
                TensorMethod::Klimyk => klimyk_tensor(beta, tau, limits)?,
            };
            Ok((j, tau, beta, product))
        })
        .collect::<Result<_>>()?;

    let mut blocks: BTreeMap<WeightVector, u64> = BTreeMap::new();
    let mut provenance: BTreeMap<WeightVector, Vec<Contribution>> = BTreeMap::new();
    for (j, tau, beta, product) in pieces {
        for (delta, mult) in product {
            *blocks.entry(delta.clone()).or_default() += mult;
            provenance.entry(delta).or_default().push(Contribution {
                j,
                tau: tau.highest_weight().clone(),
                beta: beta.highest_weight().clone(),
                multiplicity: mult,
            });
        }
    }

    let dec = TensorDecomposition {
        ctx: *ctx,
        pi1: pi1.clone(),
        pi2: pi2.clone(),
        taus,
        branching,
        blocks,
        provenance,
    };
    let (lhs, rhs) = (dec.block_dimension(), dec.expected_dimension());
    if lhs != rhs {
        return Err(Error::internal(format!(
            "dimension identity failed: Σ N(δ)·dim F_δ = {lhs} but dim σ · Σ dim τ_j = {rhs}"
        )));
    }
    Ok(dec)
}

/// Multiplicity of `π₀^{sign}(γ_a)` in `π₁ ⊗̂ π₂`.
pub fn multiplicity_discrete(dec: &TensorDecomposition, a: &WeightVector, sign: Sign) -> Result<u64> {
    let mut total = 0;
    if !dec.ctx.even_spin {
        // raises the domain error
        in_d0(&dec.ctx, &WeightVector::zero(dec.ctx.rs_mprime.rank), a, sign)?;
    }
    for (delta, n) in &dec.blocks {
        if in_d0(&dec.ctx, delta, a, sign)? {
            total += n;
        }
    }
    Ok(total)
}

/// Almost-everywhere multiplicity of the principal series fibre `{φ, t > 0}`.
pub fn multiplicity_principal(dec: &TensorDecomposition, phi: &WeightVector) -> Result<u64> {
    if !dec.ctx.rs_m.is_dominant(phi) {
        return Err(Error::domain(format!("phi = {phi} is not dominant for {}", dec.ctx.rs_m)));
    }
    let mut total = 0;
    for (delta, n) in &dec.blocks {
        if in_c(&dec.ctx, delta, phi)? {
            total += n;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    pub t: f64,
    /// `None` where the density is undefined (a `coth` density at `t ≤ 0`).
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectrum {
    pub delta: WeightVector,
    pub multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discrete: Option<Vec<crate::spectrum::DiscreteParam>>,
    pub continuous: Vec<WeightVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteConstituent {
    pub a: WeightVector,
    pub sign: Sign,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousConstituent {
    pub phi: WeightVector,
    pub multiplicity: u64,
    pub density: PlancherelDensity,
    pub samples: Vec<DensitySample>,
}

pub const PLANCHEREL_NULL_CAVEAT: &str = "decomposition holds up to Plancherel-null sets: \
only discrete series and unitary principal series constituents are listed";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub cutoff: HalfInt,
    pub density_variant: DensityVariant,
    pub caveat: String,
    pub blocks: Vec<BlockSpectrum>,
    /// Absent for `Spin(2n−1,1)`, which has no discrete series.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discrete: Option<Vec<DiscreteConstituent>>,
    pub continuous: Vec<ContinuousConstituent>,
    /// CSV with header `phi,t,density`.
    pub density_table: String,
    /// Largest block multiplicity `N(δ)` observed.
    pub max_multiplicity: u64,
}

/// Expands every block under the truncation `a₁ ≤ cutoff`, `φ₁ ≤ cutoff`,
/// aggregates constituent multiplicities across blocks and samples densities.
pub fn spectrum_report(
    dec: &TensorDecomposition,
    cutoff: HalfInt,
    t_grid: &[f64],
    variant: DensityVariant,
) -> Result<SpectrumReport> {
    if cutoff < HalfInt::ZERO {
        return Err(Error::domain(format!("cutoff must be ≥ 0 (got {cutoff})")));
    }
    let ctx = &dec.ctx;
    let mut blocks = Vec::new();
    let mut discrete_total: BTreeMap<crate::spectrum::DiscreteParam, u64> = BTreeMap::new();
    let mut continuous_total: BTreeMap<WeightVector, u64> = BTreeMap::new();
    let mut continuous_order: Vec<WeightVector> = Vec::new();
    for (delta, n) in &dec.blocks {
        let discrete = if ctx.even_spin {
            let list = enumerate_discrete(ctx, delta, cutoff)?;
            for p in &list {
                *discrete_total.entry(p.clone()).or_default() += n;
            }
            Some(list)
        } else {
            None
        };
        let continuous = enumerate_continuous(ctx, delta, cutoff)?;
        for phi in &continuous {
            let slot = continuous_total.entry(phi.clone()).or_default();
            if *slot == 0 {
                continuous_order.push(phi.clone());
            }
            *slot += n;
        }
        blocks.push(BlockSpectrum {
            delta: delta.clone(),
            multiplicity: *n,
            discrete,
            continuous,
        });
    }

    continuous_order.sort_by_key(|phi| {
        let abs: Vec<HalfInt> = phi.coords().iter().map(|c| c.abs()).collect();
        (abs, std::cmp::Reverse(phi.clone()))
    });
    let mut table = String::from("phi,t,density\n");
    let mut continuous = Vec::with_capacity(continuous_order.len());
    for phi in continuous_order {
        let density = plancherel_density(ctx, &phi, variant)?;
        let samples: Vec<DensitySample> = t_grid
            .iter()
            .map(|&t| DensitySample {
                t,
                value: density_eval(&density, t).ok(),
            })
            .collect();
        for s in &samples {
            let value = s.value.map(|v| format!("{v:e}")).unwrap_or_default();
            table.push_str(&format!("\"{}\",{},{}\n", phi.to_strings().join(" "), s.t, value));
        }
        continuous.push(ContinuousConstituent {
            multiplicity: continuous_total[&phi],
            phi,
            density,
            samples,
        });
    }

    Ok(SpectrumReport {
        cutoff,
        density_variant: variant,
        caveat: PLANCHEREL_NULL_CAVEAT.to_string(),
        blocks,
        discrete: ctx.even_spin.then(|| {
            discrete_total
                .into_iter()
                .map(|(p, multiplicity)| DiscreteConstituent {
                    a: p.a,
                    sign: p.sign,
                    multiplicity,
                })
                .collect()
        }),
        continuous,
        density_table: table,
        max_multiplicity: dec.max_multiplicity(),
    })
}
