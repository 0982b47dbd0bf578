//! Tensor product multiplicities through Kostant's partition function.
//!
//! For dominant `β, γ, δ` the multiplicity of `F_δ` in `F_β ⊗ F_γ` is
//!
//! ```text
//! n(δ) = Σ_{v,w ∈ W} ε(v) ε(w) 𝒫(v(γ+ρ) − w(δ+ρ) + β)
//! ```
//!
//! where `𝒫(ξ)` counts the ways of writing `ξ` as a nonnegative integer
//! combination of positive roots.

use std::cell::RefCell;
use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::interlace::interval_product;
use crate::limits::Limits;
use crate::reps::{in_positive_cone, in_root_lattice, IrrepLabel, TensorMultiplicities};
use crate::roots::{Family, RootSystem, SignedPermutation};
use crate::weight::WeightVector;

/// Memoised Kostant partition function of one root system.
///
/// Counts are computed by recursion over a fixed ordering of the positive
/// roots: `count(ξ, r)` is the number of combinations using the first `r` roots.
#[derive(Debug, Clone)]
pub struct PartitionCache {
    rs: RootSystem,
    roots: Vec<Vec<i64>>,
    memo: HashMap<(usize, Vec<i64>), u64>,
}

impl PartitionCache {
    pub fn new(rs: RootSystem) -> Self {
        PartitionCache {
            rs,
            roots: rs.positive_roots(),
            memo: HashMap::new(),
        }
    }

    pub fn rs(&self) -> RootSystem {
        self.rs
    }

    /// Number of memoised entries.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `𝒫(ξ)`. Zero whenever a coordinate of `ξ` is half-integral.
    pub fn count(&mut self, xi: &WeightVector) -> Result<u64> {
        self.rs.check_rank(xi)?;
        let Some(ints) = xi.coords().iter().map(|c| c.to_integer()).collect::<Option<Vec<_>>>() else {
            return Ok(0);
        };
        Ok(self.count_int(&ints))
    }

    pub(crate) fn count_int(&mut self, x: &[i64]) -> u64 {
        if !in_root_lattice(self.rs, x) || !in_positive_cone(self.rs, x) {
            return 0;
        }
        self.count_with(x.to_vec(), self.roots.len())
    }

    fn count_with(&mut self, x: Vec<i64>, r: usize) -> u64 {
        if r == 0 {
            return u64::from(x.iter().all(|&v| v == 0));
        }
        if !in_positive_cone(self.rs, &x) {
            return 0;
        }
        if let Some(&hit) = self.memo.get(&(r, x.clone())) {
            return hit;
        }
        let mut total = 0u64;
        let mut rest = x.clone();
        loop {
            total += self.count_with(rest.clone(), r - 1);
            for (s, a) in rest.iter_mut().zip(&self.roots[r - 1]) {
                *s -= a;
            }
            if !in_positive_cone(self.rs, &rest) {
                break;
            }
        }
        self.memo.insert((r, x), total);
        total
    }
}

/// `𝒫(ξ)` on the root system of `cache`.
pub fn kostant_partition(cache: &mut PartitionCache, xi: &WeightVector) -> Result<u64> {
    cache.count(xi)
}

/// Evaluates the double Weyl sum for one root system, reusing the Weyl group
/// and the partition cache across calls. One engine per worker.
#[derive(Debug, Clone)]
pub struct KostantEngine {
    rs: RootSystem,
    weyl: Vec<SignedPermutation>,
    cache: PartitionCache,
}

impl KostantEngine {
    pub fn new(rs: RootSystem, limits: &Limits) -> Result<Self> {
        Ok(KostantEngine {
            rs,
            weyl: rs.weyl_elements(limits.max_rank)?.collect(),
            cache: PartitionCache::new(rs),
        })
    }

    pub fn rs(&self) -> RootSystem {
        self.rs
    }

    fn check(&self, labels: &[&IrrepLabel]) -> Result<()> {
        for l in labels {
            if l.rs() != self.rs {
                return Err(Error::domain(format!("{l} does not live on {}", self.rs)));
            }
        }
        Ok(())
    }

    fn is_abelian(&self) -> bool {
        self.rs.family == Family::D && self.rs.rank == 1
    }

    /// Multiplicity of `F_δ` in `F_β ⊗ F_γ`.
    pub fn multiplicity(&mut self, beta: &IrrepLabel, gamma: &IrrepLabel, delta: &IrrepLabel) -> Result<u64> {
        self.check(&[beta, gamma, delta])?;
        if self.is_abelian() {
            let sum = beta.highest_weight() + gamma.highest_weight();
            return Ok(u64::from(&sum == delta.highest_weight()));
        }
        let rho = self.rs.rho().doubled();
        let plus_rho = |l: &IrrepLabel| -> Vec<i64> {
            l.highest_weight().doubled().iter().zip(&rho).map(|(a, b)| a + b).collect()
        };
        let gamma_rho = plus_rho(gamma);
        let delta_rho = plus_rho(delta);
        let beta_d = beta.highest_weight().doubled();
        let delta_images: Vec<(i8, Vec<i64>)> = self
            .weyl
            .iter()
            .map(|w| (w.sign(), w.apply_doubled(&delta_rho)))
            .collect();

        let mut total: i128 = 0;
        let mut xi = vec![0i64; self.rs.rank];
        for v in &self.weyl {
            let v_gamma = v.apply_doubled(&gamma_rho);
            for (w_sign, w_delta) in &delta_images {
                let mut integral = true;
                for i in 0..xi.len() {
                    let d = v_gamma[i] - w_delta[i] + beta_d[i];
                    if d % 2 != 0 {
                        integral = false;
                        break;
                    }
                    xi[i] = d / 2;
                }
                if !integral {
                    continue;
                }
                // cone and lattice membership are checked before any recursion
                let p = self.cache.count_int(&xi);
                if p != 0 {
                    total += (v.sign() * w_sign) as i128 * p as i128;
                }
            }
        }
        if total < 0 {
            return Err(Error::internal(format!(
                "negative Kostant multiplicity {total} for {delta} in {beta} ⊗ {gamma}"
            )));
        }
        u64::try_from(total).map_err(|_| Error::internal("multiplicity overflow"))
    }

    /// All `δ` with nonzero multiplicity in `F_β ⊗ F_γ`.
    ///
    /// Candidates are dominant weights in the parity class of `β+γ` with
    /// `|δ_i| ≤ max|β| + max|γ|` and `β+γ−δ` in the positive root cone.
    pub fn tensor_support(&mut self, beta: &IrrepLabel, gamma: &IrrepLabel) -> Result<TensorMultiplicities> {
        self.check(&[beta, gamma])?;
        let rs = self.rs;
        let top = beta.highest_weight() + gamma.highest_weight();
        if self.is_abelian() {
            return Ok([(top, 1)].into_iter().collect());
        }
        let bound: HalfInt = beta.highest_weight().max_abs() + gamma.highest_weight().max_abs();
        let class = beta.parity().combine(gamma.parity());
        let mut out = TensorMultiplicities::new();
        for delta in interval_product(&vec![(-bound, bound); rs.rank], class) {
            if !rs.is_dominant(&delta) {
                continue;
            }
            let gap: Vec<i64> = (&top - &delta).doubled().iter().map(|d| d / 2).collect();
            if !in_root_lattice(rs, &gap) || !in_positive_cone(rs, &gap) {
                continue;
            }
            let label = IrrepLabel::new(rs, delta)?;
            let mult = self.multiplicity(beta, gamma, &label)?;
            if mult > 0 {
                out.insert(label.highest_weight().clone(), mult);
            }
        }
        Ok(out)
    }
}

/// Memo entries kept per thread before the cache is dropped and rebuilt.
const CACHE_SOFT_LIMIT: usize = 1 << 21;

thread_local! {
    static ENGINES: RefCell<HashMap<RootSystem, KostantEngine>> = RefCell::new(HashMap::new());
}

/// Runs `f` on this thread's engine for `rs`, so partition counts survive between calls.
pub(crate) fn with_engine<T>(rs: RootSystem, limits: &Limits, f: impl FnOnce(&mut KostantEngine) -> Result<T>) -> Result<T> {
    // enforces the rank cap even when an engine already exists
    let _ = rs.weyl_elements(limits.max_rank)?;
    ENGINES.with(|engines| {
        let mut engines = engines.borrow_mut();
        let engine = match engines.entry(rs) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(KostantEngine::new(rs, limits)?),
        };
        if engine.cache.len() > CACHE_SOFT_LIMIT {
            engine.cache.memo.clear();
        }
        f(engine)
    })
}

/// Multiplicity of `F_δ` in `F_β ⊗ F_γ` by the double Weyl sum.
pub fn tensor_mult_kostant(
    rs: RootSystem,
    beta: &IrrepLabel,
    gamma: &IrrepLabel,
    delta: &IrrepLabel,
    limits: &Limits,
) -> Result<u64> {
    with_engine(rs, limits, |e| e.multiplicity(beta, gamma, delta))
}

/// Full decomposition of `F_β ⊗ F_γ` by the double Weyl sum.
pub fn tensor_support_kostant(
    rs: RootSystem,
    beta: &IrrepLabel,
    gamma: &IrrepLabel,
    limits: &Limits,
) -> Result<TensorMultiplicities> {
    with_engine(rs, limits, |e| e.tensor_support(beta, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: &[i64]) -> WeightVector {
        WeightVector::from_doubled(d).unwrap()
    }

    fn label(rs: RootSystem, d: &[i64]) -> IrrepLabel {
        IrrepLabel::new(rs, w(d)).unwrap()
    }

    #[test]
    fn partition_examples() {
        let mut b2 = PartitionCache::new(RootSystem::b(2));
        assert_eq!(b2.count(&w(&[0, 0])).unwrap(), 1);
        assert_eq!(b2.count(&w(&[2, 2])).unwrap(), 3);
        assert_eq!(b2.count(&w(&[1, 1])).unwrap(), 0);
        assert_eq!(b2.count(&w(&[-2, 0])).unwrap(), 0);
        let mut d2 = PartitionCache::new(RootSystem::d(2));
        assert_eq!(d2.count(&w(&[2, 0])).unwrap(), 0);
        assert_eq!(d2.count(&w(&[2, 2])).unwrap(), 1);
        let mut d1 = PartitionCache::new(RootSystem::d(1));
        assert_eq!(d1.count(&w(&[0])).unwrap(), 1);
        assert_eq!(d1.count(&w(&[2])).unwrap(), 0);
        assert!(b2.count(&w(&[0])).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let limits = Limits::default();
        let b1 = RootSystem::b(1);
        assert_eq!(tensor_mult_kostant(b1, &label(b1, &[1]), &label(b1, &[1]), &label(b1, &[2]), &limits).unwrap(), 1);
        let b2 = RootSystem::b(2);
        let v = label(b2, &[2, 0]);
        assert_eq!(tensor_mult_kostant(b2, &v, &v, &IrrepLabel::trivial(b2), &limits).unwrap(), 1);

        let mut engine = KostantEngine::new(RootSystem::d(3), &limits).unwrap();
        let d3 = RootSystem::d(3);
        let gamma = label(d3, &[3, 1, -1]);
        let trivial = IrrepLabel::trivial(d3);
        assert_eq!(engine.multiplicity(&trivial, &gamma, &gamma).unwrap(), 1);
        assert_eq!(engine.multiplicity(&trivial, &gamma, &label(d3, &[3, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn support_examples() {
        let limits = Limits::default();
        let b1 = RootSystem::b(1);
        let out = tensor_support_kostant(b1, &label(b1, &[1]), &label(b1, &[2]), &limits).unwrap();
        assert_eq!(out, [(w(&[3]), 1), (w(&[1]), 1)].into_iter().collect());

        let d1 = RootSystem::d(1);
        let out = tensor_support_kostant(d1, &label(d1, &[3]), &label(d1, &[-4]), &limits).unwrap();
        assert_eq!(out, [(w(&[-1]), 1)].into_iter().collect());

        let b2 = RootSystem::b(2);
        let s = label(b2, &[1, 1]);
        let out = tensor_support_kostant(b2, &s, &s, &limits).unwrap();
        assert_eq!(out, [(w(&[2, 2]), 1), (w(&[2, 0]), 1), (w(&[0, 0]), 1)].into_iter().collect());
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let limits = Limits::default();
        let b1 = RootSystem::b(1);
        let b2 = RootSystem::b(2);
        assert!(tensor_mult_kostant(b2, &label(b1, &[1]), &label(b1, &[1]), &label(b1, &[2]), &limits).is_err());
    }
}
