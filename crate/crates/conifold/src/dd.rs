//! Double description core: extreme rays of a pointed full-dimensional cone
//! given by halfspaces through the origin, in exact integer arithmetic.

use crate::matrix::{primitive_vector, IntMatrix};
use crate::rational::{solve, Rat, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Extreme rays (primitive integer generators) of
/// `{x in R^dim : <h, x> >= 0 for every h in halfspaces}`.
///
/// Requires the cone to be pointed, i.e. the halfspace normals span R^dim.
/// At most 64 halfspaces (tight sets are kept as u64 bitmasks).
pub fn extreme_rays(halfspaces: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>, DdError> {
    if halfspaces.len() > 64 {
        return Err(DdError::TooManyHalfspaces(halfspaces.len()));
    }
    assert!(halfspaces.iter().all(|h| h.len() == dim), "halfspace dimension mismatch");

    // greedily pick dim linearly independent halfspaces for the initial cone
    let mut init_idx = Vec::new();
    let mut picked: Vec<Vec<BigInt>> = Vec::new();
    for (i, h) in halfspaces.iter().enumerate() {
        let mut cand = picked.clone();
        cand.push(h.clone());
        if IntMatrix::from_rows(cand.clone()).rank() == cand.len() {
            picked = cand;
            init_idx.push(i);
        }
        if picked.len() == dim {
            break;
        }
    }
    if picked.len() < dim {
        return Err(DdError::NotPointed);
    }

    // initial extreme rays: scaled columns of the inverse of the picked matrix
    let a = RatMatrix::from_rows(
        picked.iter().map(|h| h.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect(),
    );
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[j] = Rat::one();
        let col = solve(&a, &e).expect("independent rows are invertible");
        let lcm = col.iter().fold(BigInt::one(), |acc, x| {
            let d = x.denom();
            num_integer::Integer::lcm(&acc, d)
        });
        let iv: Vec<BigInt> = col.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        rays.push(primitive_vector(&iv));
    }

    let dot = |h: &[BigInt], r: &[BigInt]| -> BigInt { h.iter().zip(r).map(|(a, b)| a * b).sum() };
    let tight_mask = |r: &[BigInt], inserted: u64| -> u64 {
        let mut m = 0u64;
        for (i, h) in halfspaces.iter().enumerate() {
            if inserted >> i & 1 == 1 && dot(h, r).is_zero() {
                m |= 1 << i;
            }
        }
        m
    };

    let mut inserted: u64 = init_idx.iter().fold(0, |m, &i| m | 1 << i);
    let mut r_t: Vec<(Vec<BigInt>, u64)> =
        rays.into_iter().map(|r| { let t = tight_mask(&r, inserted); (r, t) }).collect();

    for (i, h) in halfspaces.iter().enumerate() {
        if inserted >> i & 1 == 1 {
            continue;
        }
        let vals: Vec<BigInt> = r_t.iter().map(|(r, _)| dot(h, r)).collect();
        let mut next: Vec<(Vec<BigInt>, u64)> = Vec::new();
        for (k, (r, t)) in r_t.iter().enumerate() {
            if !vals[k].is_negative() {
                let nt = if vals[k].is_zero() { t | 1 << i } else { *t };
                next.push((r.clone(), nt));
            }
        }
        for (kp, (rp, tp)) in r_t.iter().enumerate() {
            if !vals[kp].is_positive() {
                continue;
            }
            for (kn, (rn, tn)) in r_t.iter().enumerate() {
                if !vals[kn].is_negative() {
                    continue;
                }
                let common = tp & tn;
                // adjacency: no third ray's tight set contains the common one
                let adjacent = !r_t.iter().enumerate().any(|(k2, (_, t2))| {
                    k2 != kp && k2 != kn && (t2 & common) == common
                });
                if !adjacent {
                    continue;
                }
                let new_ray: Vec<BigInt> = rp
                    .iter()
                    .zip(rn)
                    .map(|(p, n)| &vals[kp] * n - &vals[kn] * p)
                    .collect();
                let new_ray = primitive_vector(&new_ray);
                let nt = tight_mask(&new_ray, inserted) | 1 << i;
                if !next.iter().any(|(r2, _)| r2 == &new_ray) {
                    next.push((new_ray, nt));
                }
            }
        }
        inserted |= 1 << i;
        // refresh tight masks against the enlarged inserted set
        r_t = next.into_iter().map(|(r, _)| { let t = tight_mask(&r, inserted); (r, t) }).collect();
    }

    let mut out: Vec<Vec<BigInt>> = r_t.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DdError {
    #[error("cone is not pointed (normals span a proper subspace)")]
    NotPointed,
    #[error("too many halfspaces for the bitmask representation: {0} > 64")]
    TooManyHalfspaces(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn orthant_rays() {
        let rays = extreme_rays(&hs(&[vec![1, 0], vec![0, 1]]), 2).unwrap();
        assert_eq!(rays.len(), 2);
    }

    #[test]
    fn square_cone_rays() {
        // cone over the square: {y : y0 +- y1 >= 0, ...} homogenization of [-1,1]^1 is trivial;
        // take the 4 halfspaces of a pointed cone in R^3 over a square base
        let h = hs(&[vec![1, 1, 0], vec![1, -1, 0], vec![1, 0, 1], vec![1, 0, -1]]);
        let rays = extreme_rays(&h, 3).unwrap();
        assert_eq!(rays.len(), 4);
    }

    #[test]
    fn not_pointed_detected() {
        let h = hs(&[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(extreme_rays(&h, 3), Err(DdError::NotPointed));
    }

    #[test]
    fn redundant_halfspace_ignored() {
        let h = hs(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let rays = extreme_rays(&h, 2).unwrap();
        assert_eq!(rays.len(), 2);
    }
}
