//! Oracles written without the library's own root-system code.
#![allow(dead_code)]

use spintensor::{Family, GroupContext, Pi2Descriptor, RootSystem, Sign, WeightVector};

pub fn w(doubled: &[i64]) -> WeightVector {
    WeightVector::from_doubled(doubled).unwrap()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Positive roots as integer vectors.
pub fn roots(family: Family, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for s in [1, -1] {
                let mut r = vec![0; k];
                r[i] = 1;
                r[j] = s;
                out.push(r);
            }
        }
        if family == Family::B {
            let mut r = vec![0; k];
            r[i] = 1;
            out.push(r);
        }
    }
    out
}

/// Dominance straight from the chamber inequalities, on doubled coordinates.
pub fn dominant(family: Family, x: &[i64]) -> bool {
    let k = x.len();
    let desc = x.windows(2).all(|p| p[0] >= p[1]);
    match family {
        Family::B => desc && x[k - 1] >= 0,
        Family::D if k == 1 => true,
        Family::D => x[..k - 1].windows(2).all(|p| p[0] >= p[1]) && x[k - 2] >= x[k - 1].abs(),
    }
}

/// Every uniform-parity doubled vector in `[-bound, bound]^k`.
pub fn box_vectors(k: usize, bound2: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-bound2..=bound2).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().all(|c| c.rem_euclid(2) == v[0].rem_euclid(2)));
    out
}

/// Dominant weights with all `|entries| ≤ bound2/2`, both parity classes.
pub fn dominant_weights(rs: RootSystem, bound2: i64) -> Vec<WeightVector> {
    box_vectors(rs.rank, bound2)
        .into_iter()
        .filter(|v| dominant(rs.family, v))
        .map(|v| w(&v))
        .collect()
}

/// Weyl dimension formula `∏ ⟨λ+ρ, α⟩ / ⟨ρ, α⟩`, evaluated with exact integers.
pub fn oracle_dim(rs: RootSystem, lambda: &WeightVector) -> u128 {
    let k = rs.rank;
    // doubled ρ
    let rho2: Vec<i64> = (0..k)
        .map(|i| match rs.family {
            Family::B => 2 * (k - i) as i64 - 1,
            Family::D => 2 * (k - 1 - i) as i64,
        })
        .collect();
    let l2 = lambda.doubled();
    let (mut num, mut den) = (1u128, 1u128);
    for r in roots(rs.family, k) {
        let dot = |v: &[i64]| -> i64 { v.iter().zip(&r).map(|(a, b)| a * b).sum() };
        let shifted: Vec<i64> = l2.iter().zip(&rho2).map(|(a, b)| a + b).collect();
        let (p, q) = (dot(&shifted), dot(&rho2));
        assert!(p > 0 && q > 0);
        num *= p as u128;
        den *= q as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    assert_eq!(den, 1, "non-integral dimension for {lambda}");
    num
}

/// Number of ways to write `x` as a nonnegative integer combination of the
/// positive roots, by direct enumeration of coefficient vectors.
pub fn brute_partition(family: Family, x: &[i64]) -> u64 {
    let k = x.len();
    let rts = roots(family, k);
    if rts.is_empty() {
        return u64::from(x.iter().all(|&c| c == 0));
    }
    // h(e_i) = k − i is positive on every positive root, so h bounds every coefficient
    let h = |v: &[i64]| -> i64 { v.iter().enumerate().map(|(i, c)| (k - i) as i64 * c).sum() };
    fn go(rts: &[Vec<i64>], idx: usize, rest: &mut Vec<i64>, h: &dyn Fn(&[i64]) -> i64) -> u64 {
        if idx == rts.len() {
            return u64::from(rest.iter().all(|&c| c == 0));
        }
        let r = &rts[idx];
        let mut total = 0;
        let mut c = 0;
        loop {
            if h(rest) < 0 {
                break;
            }
            total += go(rts, idx + 1, rest, h);
            for (a, b) in rest.iter_mut().zip(r) {
                *a -= b;
            }
            c += 1;
        }
        for (a, b) in rest.iter_mut().zip(r) {
            *a += c * b;
        }
        total
    }
    let mut rest = x.to_vec();
    go(&rts, 0, &mut rest, &h)
}

/// Representations `π₂` used by the decomposition sweeps for a given group.
pub fn pi2_sweep(ctx: &GroupContext, bound2: i64) -> Vec<Pi2Descriptor> {
    let mut out = Vec::new();
    for mu in dominant_weights(ctx.rs_m, bound2) {
        out.push(Pi2Descriptor::Principal { mu: mu.clone(), t: 1.0 });
        for a in [0.3, 0.8, 1.4] {
            let d = Pi2Descriptor::Complementary { mu: mu.clone(), a };
            if spintensor::validate_pi2(ctx, &d).is_empty() {
                out.push(d);
            }
        }
    }
    if ctx.even_spin {
        for a in box_vectors(ctx.n as usize, bound2) {
            if !dominant(Family::B, &a) {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(Pi2Descriptor::Discrete { sign, a: w(&a) });
            }
        }
    }
    out
}
