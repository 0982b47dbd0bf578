//! Exact tensor product decomposition for the rank-one spin groups
//! `G = Spin(m+1, 1)`.
//!
//! Given a unitary principal series `π₁` and a principal, discrete or
//! complementary series `π₂`, the engine computes the finite multiplicities
//! `N(δ)` of the induced blocks `Ind_P^G(T_δ)` in `π₁ ⊗̂ π₂`, and describes
//! the spectrum of each block: discrete series parameters, principal series
//! fibres, and their Plancherel densities.
//!
//! All weight arithmetic is exact; half-integers are stored doubled.

pub mod cli;
pub mod context;
pub mod decompose;
pub mod error;
pub mod halfint;
pub mod interlace;
pub mod kostant;
pub mod limits;
pub mod reps;
pub mod restriction;
pub mod roots;
pub mod spectrum;
pub mod weight;

pub use context::GroupContext;
pub use decompose::{
    decompose, decompose_with, multiplicity_discrete, multiplicity_principal, spectrum_report, Pi1Descriptor,
    SpectrumReport, TensorDecomposition, TensorMethod,
};
pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use kostant::{kostant_partition, tensor_mult_kostant, tensor_support_kostant, KostantEngine, PartitionCache};
pub use limits::Limits;
pub use reps::{branch_m_to_mprime, klimyk_tensor, weight_multiplicities, weyl_dimension, IrrepLabel};
pub use restriction::{restrict_pi2_to_p, validate_pi2, Pi2Descriptor, Sign, TDelta};
pub use roots::{Family, Folded, RootSystem, SignedPermutation};
pub use spectrum::{
    density_eval, enumerate_continuous, enumerate_discrete, in_c, in_d0, plancherel_density, DensityKind,
    DensityVariant, PlancherelDensity,
};
pub use weight::{Parity, WeightVector};
