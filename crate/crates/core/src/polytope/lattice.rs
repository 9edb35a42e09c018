//! Lattice-point enumeration.
//!
//! The search fixes coordinates left to right. At depth `i` the admissible
//! range of `x_i` comes from the exact H-description of the projection of the
//! polytope onto the first `i + 1` coordinates, so every visited prefix extends
//! to a real point of the polytope and the search tree has no dead branches
//! beyond rounding.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Halfspace, RationalPolytope};
use crate::exact::{IntVector, RatVector};

struct Row {
    normal: Vec<i128>,
    num: i128,
    den: i128,
}

impl Row {
    fn new(h: &Halfspace) -> Self {
        Row {
            normal: h
                .normal
                .iter()
                .map(|v| v.to_i128().expect("normal entry fits in i128"))
                .collect(),
            num: h.rhs.numer().to_i128().expect("rhs fits in i128"),
            den: h.rhs.denom().to_i128().expect("rhs fits in i128"),
        }
    }
}

pub(super) struct Enumerator {
    dim: usize,
    /// `levels[i]`: constraints of the projection onto coordinates `0..=i`
    /// whose coefficient on `x_i` is nonzero.
    levels: Vec<Vec<Row>>,
    facets: Vec<Row>,
}

impl Enumerator {
    pub(super) fn new(p: &RationalPolytope) -> Self {
        let dim = p.dim();
        let mut levels = Vec::with_capacity(dim);
        for i in 0..dim {
            let hs = if i + 1 == dim {
                p.halfspaces()
            } else {
                let pts: Vec<RatVector> = p
                    .vertices()
                    .iter()
                    .map(|v| RatVector(v[..=i].to_vec()))
                    .collect();
                RationalPolytope::hull(&pts)
                    .expect("projection of a nonempty polytope")
                    .halfspaces()
            };
            levels.push(
                hs.iter()
                    .filter(|h| !h.normal[i].is_zero())
                    .map(Row::new)
                    .collect(),
            );
        }
        Enumerator {
            dim,
            levels,
            facets: p.facets().iter().map(Row::new).collect(),
        }
    }

    /// Calls `visit` on every lattice point of `kP` (relative interior only
    /// when `interior` is set).
    pub(super) fn run(&self, k: i128, interior: bool, visit: &mut dyn FnMut(&[i128])) {
        let mut x = vec![0i128; self.dim];
        self.descend(0, k, interior, &mut x, visit);
    }

    fn descend(
        &self,
        i: usize,
        k: i128,
        interior: bool,
        x: &mut Vec<i128>,
        visit: &mut dyn FnMut(&[i128]),
    ) {
        if i == self.dim {
            if interior {
                let strict = self.facets.iter().all(|r| {
                    let s: i128 = r.normal.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
                    s * r.den < r.num * k
                });
                if !strict {
                    return;
                }
            }
            visit(x);
            return;
        }
        let mut lo: Option<i128> = None;
        let mut hi: Option<i128> = None;
        for r in &self.levels[i] {
            let s: i128 = r.normal[..i].iter().zip(x.iter()).map(|(a, b)| a * b).sum();
            // n_i x_i ≤ (k·num − den·s) / den
            let top = k * r.num - r.den * s;
            let c = r.normal[i] * r.den;
            if c > 0 {
                let b = Integer::div_floor(&top, &c);
                hi = Some(hi.map_or(b, |h| h.min(b)));
            } else {
                let b = ceil_div(top, c);
                lo = Some(lo.map_or(b, |l| l.max(b)));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            // a coordinate left unconstrained would mean an unbounded set
            unreachable!("projection of a bounded polytope is bounded");
        };
        for v in lo..=hi {
            x[i] = v;
            self.descend(i + 1, k, interior, x, visit);
        }
        x[i] = 0;
    }
}

/// `⌈a / b⌉` for `b ≠ 0`.
fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

fn to_int_vector(x: &[i128]) -> IntVector {
    x.iter().map(|&v| v.into()).collect()
}

/// Number of lattice points of `kP`.
pub fn count_lattice_points(p: &RationalPolytope, k: u32) -> u64 {
    let mut n = 0u64;
    Enumerator::new(p).run(k as i128, false, &mut |_| n += 1);
    n
}

impl RationalPolytope {
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let mut out = Vec::new();
        Enumerator::new(self).run(1, false, &mut |x| out.push(to_int_vector(x)));
        out
    }

    /// Lattice points of the relative interior.
    pub fn interior_lattice_points(&self) -> Vec<IntVector> {
        let mut out = Vec::new();
        Enumerator::new(self).run(1, true, &mut |x| out.push(to_int_vector(x)));
        out
    }

    pub fn lattice_point_count(&self) -> u64 {
        count_lattice_points(self, 1)
    }

    /// `|kP ∩ ℤᵐ|` for `k = 1..=k_max`.
    pub fn ehrhart_counts(&self, k_max: u32) -> Vec<u64> {
        let e = Enumerator::new(self);
        (1..=k_max)
            .map(|k| {
                let mut n = 0u64;
                e.run(k as i128, false, &mut |_| n += 1);
                n
            })
            .collect()
    }

    /// Whether `x` is a lattice point of the polytope.
    pub fn contains_lattice_point(&self, x: &IntVector) -> bool {
        self.contains(&x.to_rat())
    }
}
