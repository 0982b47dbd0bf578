//! Root systems of types B and D, their Weyl groups as signed permutations,
//! and folding of weights into the dominant chamber.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::weight::WeightVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    D,
}

/// A root system of type `B_k` or `D_k` realised on `ℝ^k` with the standard basis.
///
/// `D_1` is the degenerate abelian case: no roots, trivial Weyl group and no
/// dominance condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::domain("root system rank must be positive"));
        }
        Ok(RootSystem { family, rank })
    }

    pub fn b(rank: usize) -> Self {
        assert!(rank > 0);
        RootSystem { family: Family::B, rank }
    }

    pub fn d(rank: usize) -> Self {
        assert!(rank > 0);
        RootSystem { family: Family::D, rank }
    }

    /// Positive roots as integer vectors: `e_i ± e_j (i<j)`, plus `e_i` for type B.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let k = self.rank;
        let mut roots = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let mut minus = vec![0; k];
                minus[i] = 1;
                minus[j] = -1;
                roots.push(minus);
                let mut plus = vec![0; k];
                plus[i] = 1;
                plus[j] = 1;
                roots.push(plus);
            }
        }
        if self.family == Family::B {
            for i in 0..k {
                let mut short = vec![0; k];
                short[i] = 1;
                roots.push(short);
            }
        }
        roots
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> WeightVector {
        let k = self.rank as i64;
        let doubled: Vec<i64> = (1..=k)
            .map(|i| match self.family {
                // k - i + 1/2
                Family::B => 2 * (k - i) + 1,
                // k - i
                Family::D => 2 * (k - i),
            })
            .collect();
        WeightVector::from_coords_unchecked(doubled.into_iter().map(HalfInt::from_doubled).collect())
    }

    pub fn weyl_order(&self) -> u128 {
        let k = self.rank as u32;
        let fact: u128 = (1..=self.rank as u128).product();
        match self.family {
            Family::B => (1u128 << k) * fact,
            Family::D => (1u128 << (k - 1)) * fact,
        }
    }

    pub fn check_rank(&self, weight: &WeightVector) -> Result<()> {
        if weight.rank() != self.rank {
            return Err(Error::domain(format!(
                "weight {weight} has rank {} but {self} has rank {}",
                weight.rank(),
                self.rank
            )));
        }
        Ok(())
    }

    /// `B`: `w₁ ≥ … ≥ w_k ≥ 0`. `D`: `w₁ ≥ … ≥ w_{k−1} ≥ |w_k|`. `D_1`: always.
    pub fn is_dominant(&self, w: &WeightVector) -> bool {
        self.chamber_test(w, |a, b| a >= b)
    }

    /// Strictly inside the fundamental chamber.
    pub fn is_strictly_dominant(&self, w: &WeightVector) -> bool {
        self.chamber_test(w, |a, b| a > b)
    }

    fn chamber_test(&self, w: &WeightVector, cmp: impl Fn(HalfInt, HalfInt) -> bool) -> bool {
        if w.rank() != self.rank {
            return false;
        }
        let c = w.coords();
        let k = self.rank;
        match self.family {
            Family::B => c.windows(2).all(|p| cmp(p[0], p[1])) && cmp(c[k - 1], HalfInt::ZERO),
            Family::D if k == 1 => true,
            Family::D => {
                c[..k - 1].windows(2).all(|p| cmp(p[0], p[1])) && cmp(c[k - 2], c[k - 1].abs())
            }
        }
    }

    /// True when `w` lies on a reflecting hyperplane.
    pub fn is_singular(&self, w: &WeightVector) -> bool {
        let abs: Vec<HalfInt> = w.coords().iter().map(|c| c.abs()).collect();
        let repeated = abs.iter().tuple_combinations().any(|(a, b)| a == b);
        match self.family {
            Family::B => repeated || abs.contains(&HalfInt::ZERO),
            Family::D => repeated,
        }
    }

    /// Enumerates the Weyl group lazily: permutations in lexicographic order,
    /// and within each permutation the sign patterns in increasing bitmask order.
    pub fn weyl_elements(&self, max_rank: usize) -> Result<impl Iterator<Item = SignedPermutation>> {
        if self.rank > max_rank {
            return Err(Error::Resource(format!(
                "Weyl group of {self} has order {} (rank {} above cap {max_rank})",
                self.weyl_order(),
                self.rank
            )));
        }
        let k = self.rank;
        let family = self.family;
        Ok((0..k).permutations(k).flat_map(move |perm| {
            (0u32..(1u32 << k)).filter_map(move |mask| {
                if family == Family::D && mask.count_ones() % 2 == 1 {
                    return None;
                }
                let signs = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                Some(SignedPermutation::from_parts(perm.clone(), signs))
            })
        }))
    }

    /// Moves `xi` into the dominant chamber.
    pub fn fold(&self, xi: &WeightVector) -> Result<Folded> {
        self.check_rank(xi)?;
        let k = self.rank;
        if self.family == Family::D && k == 1 {
            return Ok(Folded {
                dominant: xi.clone(),
                sign: 1,
                singular: false,
            });
        }
        let c = xi.coords();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| c[b].abs().cmp(&c[a].abs()));
        let mut signs: Vec<i8> = order.iter().map(|&i| if c[i] < HalfInt::ZERO { -1 } else { 1 }).collect();
        if self.family == Family::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
            signs[k - 1] = -signs[k - 1];
        }
        let element = SignedPermutation::from_parts(order, signs);
        let dominant = element.apply(xi);
        let singular = self.is_singular(xi);
        Ok(Folded {
            dominant,
            sign: if singular { 0 } else { element.sign() },
            singular,
        })
    }
}

/// Result of folding a weight into the dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Folded {
    pub dominant: WeightVector,
    /// Determinant of the folding element; `0` when `singular`.
    pub sign: i8,
    pub singular: bool,
}

/// A Weyl group element of type B or D, acting by `(v·ξ)_i = s_i ξ_{p(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
    sign: i8,
}

impl SignedPermutation {
    pub fn identity(rank: usize) -> Self {
        Self::from_parts((0..rank).collect(), vec![1; rank])
    }

    pub fn from_parts(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        assert_eq!(perm.len(), signs.len());
        let inversions = perm.iter().tuple_combinations().filter(|(a, b)| a > b).count();
        let flips = signs.iter().filter(|&&s| s < 0).count();
        let sign = if (inversions + flips) % 2 == 0 { 1 } else { -1 };
        SignedPermutation { perm, signs, sign }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Determinant of the signed permutation matrix, i.e. `(−1)^length`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn apply(&self, xi: &WeightVector) -> WeightVector {
        WeightVector::from_coords_unchecked(self.apply_half(xi.coords()))
    }

    pub(crate) fn apply_half(&self, xi: &[HalfInt]) -> Vec<HalfInt> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| if s < 0 { -xi[p] } else { xi[p] })
            .collect()
    }

    pub(crate) fn apply_doubled(&self, xi: &[i64]) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| s as i64 * xi[p])
            .collect()
    }
}
