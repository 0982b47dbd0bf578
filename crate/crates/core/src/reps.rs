//! Finite-dimensional representations of `Spin(k)`.
//!
//! Irreducibles are labelled by dominant highest weights on a [`RootSystem`].
//! This module provides the Weyl dimension formula, Freudenthal's weight
//! multiplicity recursion, the Klimyk (Racah–Speiser) tensor product rule and
//! the interlacing branching `Spin(m) ↓ Spin(m−1)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::interlace::interval_product;
use crate::limits::Limits;
use crate::roots::{Family, RootSystem};
use crate::weight::{Parity, WeightVector};

/// An irreducible representation, given by its dominant highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrepLabel {
    rs: RootSystem,
    highest_weight: WeightVector,
}

impl IrrepLabel {
    pub fn new(rs: RootSystem, highest_weight: WeightVector) -> Result<Self> {
        rs.check_rank(&highest_weight)?;
        if !rs.is_dominant(&highest_weight) {
            return Err(Error::domain(format!("{highest_weight} is not dominant for {rs}")));
        }
        Ok(IrrepLabel { rs, highest_weight })
    }

    pub fn trivial(rs: RootSystem) -> Self {
        IrrepLabel {
            rs,
            highest_weight: WeightVector::zero(rs.rank),
        }
    }

    pub fn rs(&self) -> RootSystem {
        self.rs
    }

    pub fn highest_weight(&self) -> &WeightVector {
        &self.highest_weight
    }

    /// Integer class labels tensor representations; half-integer class labels genuine spin representations.
    pub fn parity(&self) -> Parity {
        self.highest_weight.parity()
    }

    pub fn dimension(&self) -> u128 {
        weyl_dimension(self)
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.rs, self.highest_weight)
    }
}

/// Weight multiplicities of one irreducible representation.
pub type WeightMultiset = BTreeMap<WeightVector, u64>;

/// Multiplicities of irreducible constituents, keyed by highest weight.
pub type TensorMultiplicities = BTreeMap<WeightVector, u64>;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `∏_{α>0} ⟨λ+ρ,α⟩ / ⟨ρ,α⟩`, exactly.
pub fn weyl_dimension(label: &IrrepLabel) -> u128 {
    let rs = label.rs;
    let rho = rs.rho().doubled();
    let shifted: Vec<i64> = label
        .highest_weight
        .doubled()
        .iter()
        .zip(&rho)
        .map(|(l, r)| l + r)
        .collect();
    let (mut num, mut den) = (1u128, 1u128);
    for alpha in rs.positive_roots() {
        let a = dot(&shifted, &alpha);
        let b = dot(&rho, &alpha);
        debug_assert!(a > 0 && b > 0);
        num = num.checked_mul(a as u128).expect("dimension overflow");
        den = den.checked_mul(b as u128).expect("dimension overflow");
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    assert_eq!(den, 1, "Weyl dimension formula produced a non-integer");
    num
}

/// Linear functional strictly positive on every positive root of B_k and D_k.
fn height(doubled: &[i64]) -> i64 {
    let k = doubled.len() as i64;
    doubled
        .iter()
        .enumerate()
        .map(|(i, x)| (k - i as i64) * x)
        .sum()
}

/// Whether the integer vector `x` is a nonnegative real combination of simple roots.
pub(crate) fn in_positive_cone(rs: RootSystem, x: &[i64]) -> bool {
    let k = x.len();
    let mut partial = 0;
    match rs.family {
        Family::B => x.iter().all(|v| {
            partial += v;
            partial >= 0
        }),
        Family::D if k == 1 => x[0] == 0,
        Family::D => {
            for v in &x[..k - 2] {
                partial += v;
                if partial < 0 {
                    return false;
                }
            }
            let s = partial + x[k - 2];
            s - x[k - 1] >= 0 && s + x[k - 1] >= 0
        }
    }
}

/// Whether the integer vector `x` lies in the root lattice.
pub(crate) fn in_root_lattice(rs: RootSystem, x: &[i64]) -> bool {
    match rs.family {
        Family::B => true,
        Family::D if x.len() == 1 => x[0] == 0,
        Family::D => x.iter().sum::<i64>() % 2 == 0,
    }
}

/// All distinct signed rearrangements of a dominant weight (its Weyl orbit).
fn weyl_orbit(rs: RootSystem, dominant: &[i64]) -> Vec<Vec<i64>> {
    if rs.family == Family::D && rs.rank == 1 {
        return vec![dominant.to_vec()];
    }
    let abs: Vec<i64> = dominant.iter().map(|x| x.abs()).collect();
    let mut arrangements = Vec::new();
    multiset_permutations(&abs, &mut Vec::new(), &mut vec![false; abs.len()], &mut arrangements);
    let has_zero = abs.contains(&0);
    let negatives = dominant.iter().filter(|&&x| x < 0).count();
    let mut orbit = Vec::new();
    for arr in arrangements {
        let nonzero: Vec<usize> = (0..arr.len()).filter(|&i| arr[i] != 0).collect();
        for mask in 0u32..(1 << nonzero.len()) {
            if rs.family == Family::D && !has_zero && (mask.count_ones() as usize) % 2 != negatives % 2 {
                continue;
            }
            let mut v = arr.clone();
            for (b, &i) in nonzero.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v[i] = -v[i];
                }
            }
            orbit.push(v);
        }
    }
    orbit
}

fn multiset_permutations(items: &[i64], current: &mut Vec<i64>, used: &mut [bool], out: &mut Vec<Vec<i64>>) {
    if current.len() == items.len() {
        out.push(current.clone());
        return;
    }
    let mut seen: Vec<i64> = Vec::new();
    for i in 0..items.len() {
        if used[i] || seen.contains(&items[i]) {
            continue;
        }
        seen.push(items[i]);
        used[i] = true;
        current.push(items[i]);
        multiset_permutations(items, current, used, out);
        current.pop();
        used[i] = false;
    }
}

/// Freudenthal's recursion, run over dominant weights only and expanded by
/// Weyl orbits at the end.
pub fn weight_multiplicities(label: &IrrepLabel, limits: &Limits) -> Result<WeightMultiset> {
    let dim = weyl_dimension(label);
    if dim > limits.max_dimension {
        return Err(Error::Resource(format!(
            "{label} has dimension {dim}, above the cap {}",
            limits.max_dimension
        )));
    }
    let rs = label.rs;
    let lambda = label.highest_weight.doubled();
    let rho = rs.rho().doubled();
    let roots = rs.positive_roots();
    let top = label.highest_weight.max_abs();

    let mut candidates: Vec<Vec<i64>> = interval_product(&vec![(-top, top); rs.rank], label.parity())
        .into_iter()
        .filter(|w| rs.is_dominant(w))
        .map(|w| w.doubled())
        .filter(|mu| {
            let diff: Vec<i64> = lambda.iter().zip(mu).map(|(l, m)| (l - m) / 2).collect();
            in_root_lattice(rs, &diff) && in_positive_cone(rs, &diff)
        })
        .collect();
    candidates.sort_by_key(|mu| {
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(l, m)| l - m).collect();
        (height(&diff), std::cmp::Reverse(mu.clone()))
    });

    let norm = |v: &[i64]| -> i64 {
        let s: Vec<i64> = v.iter().zip(&rho).map(|(a, b)| a + b).collect();
        dot(&s, &s)
    };
    let top_norm = norm(&lambda);
    let bound = top.doubled();

    let mut dominant_mult: HashMap<Vec<i64>, u64> = HashMap::new();
    for mu in candidates {
        if mu == lambda {
            dominant_mult.insert(mu, 1);
            continue;
        }
        let mut rhs: i64 = 0;
        for alpha in &roots {
            let mut shifted = mu.clone();
            loop {
                for (s, a) in shifted.iter_mut().zip(alpha) {
                    *s += 2 * a;
                }
                if shifted.iter().any(|x| x.abs() > bound) {
                    break;
                }
                let folded = rs.fold(&WeightVector::from_doubled(&shifted)?)?.dominant.doubled();
                if let Some(&m) = dominant_mult.get(&folded) {
                    rhs += m as i64 * dot(&shifted, alpha);
                }
            }
        }
        let coeff = top_norm - norm(&mu);
        let mult = if coeff == 0 {
            if rhs != 0 {
                return Err(Error::internal(format!("Freudenthal recursion degenerate at {mu:?}")));
            }
            0
        } else {
            let scaled = 4 * rhs;
            if scaled % coeff != 0 || scaled / coeff < 0 {
                return Err(Error::internal(format!("Freudenthal recursion inexact at {mu:?}")));
            }
            (scaled / coeff) as u64
        };
        if mult > 0 {
            dominant_mult.insert(mu, mult);
        }
    }

    let mut out = WeightMultiset::new();
    for (mu, m) in dominant_mult {
        for w in weyl_orbit(rs, &mu) {
            out.insert(WeightVector::from_doubled(&w)?, m);
        }
    }
    let total: u128 = out.values().map(|&m| m as u128).sum();
    if total != dim {
        return Err(Error::internal(format!(
            "weight multiplicities of {label} sum to {total}, expected {dim}"
        )));
    }
    Ok(out)
}

/// Decomposes `F_β ⊗ F_γ` by the Klimyk rule: shift every weight of `F_β`
/// by `γ + ρ`, fold into the dominant chamber, and collect signed multiplicities.
pub fn klimyk_tensor(beta: &IrrepLabel, gamma: &IrrepLabel, limits: &Limits) -> Result<TensorMultiplicities> {
    if beta.rs != gamma.rs {
        return Err(Error::domain(format!(
            "tensor factors live on different root systems ({} vs {})",
            beta.rs, gamma.rs
        )));
    }
    let rs = beta.rs;
    let rho = rs.rho();
    let shift = &gamma.highest_weight + &rho;
    let mut signed: BTreeMap<WeightVector, i64> = BTreeMap::new();
    for (mu, mult) in weight_multiplicities(beta, limits)? {
        let folded = rs.fold(&(&shift + &mu))?;
        if folded.singular {
            continue;
        }
        *signed.entry(&folded.dominant - &rho).or_default() += folded.sign as i64 * mult as i64;
    }
    let mut out = TensorMultiplicities::new();
    for (delta, c) in signed {
        match c {
            0 => {}
            c if c > 0 => {
                out.insert(delta, c as u64);
            }
            c => {
                return Err(Error::internal(format!(
                    "negative Klimyk coefficient {c} at {delta} in {beta} ⊗ {gamma}"
                )))
            }
        }
    }
    Ok(out)
}

/// Restriction `σ|_{M′}` of an `M`-irreducible: the multiplicity-free set of
/// `M′`-highest weights interlacing `σ`.
pub fn branch_m_to_mprime(ctx: &GroupContext, sigma: &IrrepLabel) -> Result<Vec<IrrepLabel>> {
    if sigma.rs != ctx.rs_m {
        return Err(Error::domain(format!(
            "{sigma} is not a representation of M = Spin({}) ({})",
            ctx.m, ctx.rs_m
        )));
    }
    let bounds = interlacing_bounds(ctx, sigma.highest_weight());
    Ok(interval_product(&bounds, sigma.parity())
        .into_iter()
        .map(|beta| IrrepLabel {
            rs: ctx.rs_mprime,
            highest_weight: beta,
        })
        .collect())
}

/// Per-coordinate ranges of the `M′`-weights interlacing an `M`-weight `s`:
/// `s₁ ≥ b₁ ≥ s₂ ≥ … ≥ s_k ≥ |b_k|` for `m` odd and
/// `s₁ ≥ b₁ ≥ … ≥ s_{k−1} ≥ b_{k−1} ≥ |s_k|` for `m` even.
pub(crate) fn interlacing_bounds(ctx: &GroupContext, s: &WeightVector) -> Vec<(HalfInt, HalfInt)> {
    let c = s.coords();
    let k = c.len();
    if ctx.even_spin {
        let mut bounds: Vec<_> = (0..k - 1).map(|i| (c[i + 1], c[i])).collect();
        bounds.push((-c[k - 1], c[k - 1]));
        bounds
    } else {
        let mut bounds: Vec<_> = (0..k - 2).map(|i| (c[i + 1], c[i])).collect();
        bounds.push((c[k - 1].abs(), c[k - 2]));
        bounds
    }
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
    fn dimension_examples() {
        assert_eq!(weyl_dimension(&label(RootSystem::b(1), &[1])), 2);
        assert_eq!(weyl_dimension(&label(RootSystem::b(2), &[2, 0])), 5);
        assert_eq!(weyl_dimension(&label(RootSystem::b(3), &[1, 1, 1])), 8);
        assert_eq!(weyl_dimension(&label(RootSystem::b(2), &[2, 2])), 10);
        assert_eq!(weyl_dimension(&label(RootSystem::d(3), &[2, 0, 0])), 6);
        assert_eq!(weyl_dimension(&label(RootSystem::d(3), &[1, 1, -1])), 4);
        assert_eq!(weyl_dimension(&label(RootSystem::d(1), &[7])), 1);
        assert_eq!(weyl_dimension(&label(RootSystem::d(4), &[2, 0, 0, 0])), 8);
    }

    #[test]
    fn non_dominant_label_rejected() {
        assert!(IrrepLabel::new(RootSystem::b(2), w(&[0, 2])).is_err());
        assert!(IrrepLabel::new(RootSystem::b(2), w(&[2])).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let limits = Limits::default();
        let m = weight_multiplicities(&label(RootSystem::b(1), &[2]), &limits).unwrap();
        let expected: WeightMultiset = [(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)].into_iter().collect();
        assert_eq!(m, expected);

        let m = weight_multiplicities(&label(RootSystem::b(2), &[2, 2]), &limits).unwrap();
        assert_eq!(m[&w(&[0, 0])], 2);
        assert_eq!(m.values().sum::<u64>(), 10);

        let m = weight_multiplicities(&label(RootSystem::d(1), &[3]), &limits).unwrap();
        assert_eq!(m, [(w(&[3]), 1)].into_iter().collect());
    }

    #[test]
    fn multiplicity_cap() {
        let limits = Limits {
            max_dimension: 9,
            ..Limits::default()
        };
        assert!(matches!(
            weight_multiplicities(&label(RootSystem::b(2), &[2, 2]), &limits),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn multiplicities_are_weyl_invariant() {
        let limits = Limits::default();
        for (rs, hw) in [
            (RootSystem::b(3), vec![4, 2, 0]),
            (RootSystem::d(3), vec![3, 1, -1]),
            (RootSystem::d(4), vec![2, 2, 0, 0]),
        ] {
            let mults = weight_multiplicities(&label(rs, &hw), &limits).unwrap();
            for (mu, m) in &mults {
                let folded = rs.fold(mu).unwrap().dominant;
                assert_eq!(mults[&folded], *m, "{rs} {mu}");
            }
        }
    }

    #[test]
    fn klimyk_examples() {
        let limits = Limits::default();
        let b1 = RootSystem::b(1);
        let out = klimyk_tensor(&label(b1, &[1]), &label(b1, &[1]), &limits).unwrap();
        assert_eq!(out, [(w(&[2]), 1), (w(&[0]), 1)].into_iter().collect());

        let d1 = RootSystem::d(1);
        let out = klimyk_tensor(&label(d1, &[1]), &label(d1, &[-3]), &limits).unwrap();
        assert_eq!(out, [(w(&[-2]), 1)].into_iter().collect());

        let b2 = RootSystem::b(2);
        let gamma = label(b2, &[3, 1]);
        let out = klimyk_tensor(&IrrepLabel::trivial(b2), &gamma, &limits).unwrap();
        assert_eq!(out, [(w(&[3, 1]), 1)].into_iter().collect());

        assert!(klimyk_tensor(&label(b1, &[1]), &label(d1, &[1]), &limits).is_err());
    }

    #[test]
    fn klimyk_conserves_dimension_and_parity() {
        let limits = Limits::default();
        for rs in [RootSystem::b(2), RootSystem::d(3), RootSystem::b(3)] {
            let weights: Vec<_> = interval_product(&vec![(HalfInt::from_int(-2), HalfInt::from_int(2)); rs.rank], Parity::Integer)
                .into_iter()
                .chain(interval_product(&vec![(HalfInt::from_doubled(-3), HalfInt::from_doubled(3)); rs.rank], Parity::HalfInteger))
                .filter(|x| rs.is_dominant(x))
                .take(12)
                .collect();
            for a in &weights {
                for b in &weights {
                    let (la, lb) = (IrrepLabel::new(rs, a.clone()).unwrap(), IrrepLabel::new(rs, b.clone()).unwrap());
                    let out = klimyk_tensor(&la, &lb, &limits).unwrap();
                    let total: u128 = out
                        .iter()
                        .map(|(d, m)| *m as u128 * weyl_dimension(&IrrepLabel::new(rs, d.clone()).unwrap()))
                        .sum();
                    assert_eq!(total, la.dimension() * lb.dimension());
                    let parity = la.parity().combine(lb.parity());
                    assert!(out.keys().all(|d| d.parity() == parity));
                }
            }
        }
    }

    #[test]
    fn branching_examples() {
        let ctx5 = GroupContext::new(5).unwrap();
        let out = branch_m_to_mprime(&ctx5, &label(RootSystem::b(2), &[2, 0])).unwrap();
        let got: Vec<_> = out.iter().map(|l| l.highest_weight().clone()).collect();
        assert_eq!(got, vec![w(&[0, 0]), w(&[2, 0])]);
        assert_eq!(out.iter().map(|l| l.dimension()).sum::<u128>(), 5);

        let ctx4 = GroupContext::new(4).unwrap();
        let out = branch_m_to_mprime(&ctx4, &label(RootSystem::d(2), &[1, 1])).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].highest_weight(), &w(&[1]));
        assert_eq!(out[0].dimension(), 2);

        let ctx3 = GroupContext::new(3).unwrap();
        let out = branch_m_to_mprime(&ctx3, &label(RootSystem::b(1), &[1])).unwrap();
        let got: Vec<_> = out.iter().map(|l| l.highest_weight().clone()).collect();
        assert_eq!(got, vec![w(&[-1]), w(&[1])]);

        assert!(branch_m_to_mprime(&ctx3, &label(RootSystem::b(2), &[0, 0])).is_err());
    }
}
