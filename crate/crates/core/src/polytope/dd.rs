//! Exact double description for polyhedral cones `{y : A y ≥ 0}`.
//!
//! Constraints are inserted one at a time. The current cone is kept as a set of
//! extreme rays plus a lineality basis; each ray carries the bitset of
//! processed constraints it makes tight, which drives the combinatorial
//! adjacency test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default)]
pub struct Cone {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Vec<u64>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// `a·u − b·w`, then made primitive.
fn combine(a: &BigInt, u: &[BigInt], b: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = u.iter().zip(w).map(|(x, y)| a * x - b * y).collect();
    normalize(&mut out);
    out
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn and_count(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

fn contains_and(r: &[u64], a: &[u64], b: &[u64]) -> bool {
    r.iter()
        .zip(a.iter().zip(b))
        .all(|(x, (y, z))| (y & z) & !x == 0)
}

/// Computes extreme rays and a lineality basis of `{y ∈ ℚⁿ : ⟨c, y⟩ ≥ 0 for
/// all rows c}`. Rays are primitive integer vectors.
pub fn cone(constraints: &[Vec<BigInt>], n: usize) -> Cone {
    let words = constraints.len().div_ceil(64).max(1);
    let mut lineality: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (ci, h) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut hl = dot(h, &l);
            if hl.is_negative() {
                for x in l.iter_mut() {
                    *x = -&*x;
                }
                hl = -hl;
            }
            for other in lineality.iter_mut() {
                let ho = dot(h, other);
                if !ho.is_zero() {
                    *other = combine(&hl, other, &ho, &l);
                }
            }
            for r in rays.iter_mut() {
                let hr = dot(h, &r.v);
                if !hr.is_zero() {
                    r.v = combine(&hl, &r.v, &hr, &l);
                }
                set_bit(&mut r.zeros, ci);
            }
            // the new ray is tight on every earlier constraint but not this one
            let mut zeros = vec![0u64; words];
            for j in 0..ci {
                set_bit(&mut zeros, j);
            }
            rays.push(Ray { v: l, zeros });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    set_bit(&mut r.zeros, ci);
                }
            }
            continue;
        }

        let need = (n - lineality.len()).saturating_sub(2) as u32;
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let (rp, rq) = (&rays[p], &rays[q]);
                if and_count(&rp.zeros, &rq.zeros) < need {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == p || k == q || !contains_and(&r.zeros, &rp.zeros, &rq.zeros)
                });
                if !adjacent {
                    continue;
                }
                // vals[p] > 0 > vals[q]: vals[p]·rq − vals[q]·rp lies on h⊥
                let v = combine(&vals[p], &rq.v, &vals[q], &rp.v);
                let mut zeros: Vec<u64> = rp.zeros.iter().zip(&rq.zeros).map(|(a, b)| a & b).collect();
                set_bit(&mut zeros, ci);
                fresh.push(Ray { v, zeros });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                set_bit(&mut r.zeros, ci);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    Cone {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}
