//! Affine unimodular equivalence of lattice polytopes.
//!
//! Both polytopes are first moved onto `ℤᵏ × 0` by a unimodular change of
//! coordinates that saturates the lattice of their affine hull. The search
//! then anchors one vertex of `P` together with `k` neighbours whose edge
//! directions span `ℝᵏ`, tries every image frame in `Q` whose combinatorial
//! and lattice-length fingerprints agree, solves for the linear part, and
//! verifies the whole vertex set exactly.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RationalPolytope;
use crate::error::{Error, Result};
use crate::exact::{
    gcd_all, hermite_normal_form, rank, rat_from_int, rat_inverse, IntMatrix, IntVector, RatVector,
    Rational,
};

#[derive(Clone, Debug)]
pub struct EquivalenceOptions {
    /// Number of complete candidate frames to try before giving up.
    pub frame_budget: u64,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            frame_budget: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceOutcome {
    /// `P·m + t = Q`, verified exactly.
    Equivalent { m: IntMatrix, t: IntVector },
    NotEquivalent { reason: String },
    Inconclusive { frames_tried: u64, budget: u64 },
}

impl EquivalenceOutcome {
    pub fn certificate(&self) -> Option<(&IntMatrix, &IntVector)> {
        match self {
            EquivalenceOutcome::Equivalent { m, t } => Some((m, t)),
            _ => None,
        }
    }
}

/// Unimodular `W` with `(v − v₀)·W ∈ ℤᵏ × 0` for every vertex `v`, bijectively
/// on the lattice of the affine hull.
fn saturating_frame(verts: &[IntVector]) -> (IntMatrix, usize) {
    let dim = verts[0].len();
    let base = &verts[0];
    let diffs: Vec<Vec<BigInt>> = verts[1..].iter().map(|v| v.sub(base).0).collect();
    if diffs.is_empty() {
        return (IntMatrix::identity(dim), 0);
    }
    let d = IntMatrix::from_rows(diffs).expect("rectangular");
    let (h, u) = hermite_normal_form(&d.transpose());
    let k = (0..h.rows())
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .count();
    (u.transpose(), k)
}

type Fingerprint = (usize, usize, Vec<BigInt>);

struct Shape {
    verts: Vec<Vec<BigInt>>,
    adj: Vec<Vec<usize>>,
    adjacent: HashSet<(usize, usize)>,
    fp: Vec<Fingerprint>,
    index: HashMap<Vec<BigInt>, usize>,
}

fn lattice_length(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    gcd_all(d.iter())
}

impl Shape {
    fn new(p: &RationalPolytope) -> Self {
        let verts: Vec<Vec<BigInt>> = p
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.to_integer()).collect())
            .collect();
        let n = verts.len();
        let inc: Vec<Vec<bool>> = p
            .facets()
            .iter()
            .map(|h| p.vertices().iter().map(|v| h.is_tight(v)).collect())
            .collect();
        let mut adj = vec![Vec::new(); n];
        let mut adjacent = HashSet::new();
        for i in 0..n {
            for j in i + 1..n {
                let common: Vec<&Vec<bool>> = inc.iter().filter(|f| f[i] && f[j]).collect();
                let edge = (0..n)
                    .filter(|&l| l != i && l != j)
                    .all(|l| common.iter().any(|f| !f[l]));
                if edge {
                    adj[i].push(j);
                    adj[j].push(i);
                    adjacent.insert((i, j));
                    adjacent.insert((j, i));
                }
            }
        }
        let fp = (0..n)
            .map(|i| {
                let mut lens: Vec<BigInt> = adj[i]
                    .iter()
                    .map(|&j| lattice_length(&verts[i], &verts[j]))
                    .collect();
                lens.sort();
                let nf = inc.iter().filter(|f| f[i]).count();
                (adj[i].len(), nf, lens)
            })
            .collect();
        let index = verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Shape {
            verts,
            adj,
            adjacent,
            fp,
            index,
        }
    }
}

enum Search {
    Found(IntMatrix, Vec<BigInt>),
    Exhausted,
    OutOfBudget,
}

struct Searcher<'a> {
    p: &'a Shape,
    q: &'a Shape,
    v0: usize,
    basis: Vec<usize>,
    dp_inv: Vec<Vec<Rational>>,
    frames: u64,
    budget: u64,
}

impl Searcher<'_> {
    fn dfs(&mut self, w0: usize, chosen: &mut Vec<usize>) -> Option<Search> {
        let i = chosen.len();
        let k = self.basis.len();
        if i == k {
            self.frames += 1;
            if self.frames > self.budget {
                return Some(Search::OutOfBudget);
            }
            return self.try_frame(w0, chosen).map(|(m, t)| Search::Found(m, t));
        }
        let (p, q) = (self.p, self.q);
        let ni = self.basis[i];
        let len = lattice_length(&p.verts[self.v0], &p.verts[ni]);
        let candidates = q.adj[w0].clone();
        for m in candidates {
            if chosen.contains(&m)
                || q.fp[m] != p.fp[ni]
                || lattice_length(&q.verts[w0], &q.verts[m]) != len
            {
                continue;
            }
            let consistent = chosen.iter().zip(&self.basis).all(|(&mj, &nj)| {
                p.adjacent.contains(&(nj, ni)) == q.adjacent.contains(&(mj, m))
                    && lattice_length(&p.verts[nj], &p.verts[ni])
                        == lattice_length(&q.verts[mj], &q.verts[m])
            });
            if !consistent {
                continue;
            }
            chosen.push(m);
            let r = self.dfs(w0, chosen);
            chosen.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }

    fn try_frame(&self, w0: usize, chosen: &[usize]) -> Option<(IntMatrix, Vec<BigInt>)> {
        let (p, q) = (self.p, self.q);
        let k = chosen.len();
        let dq: Vec<Vec<Rational>> = chosen
            .iter()
            .map(|&m| {
                q.verts[m]
                    .iter()
                    .zip(&q.verts[w0])
                    .map(|(a, b)| rat_from_int(&(a - b)))
                    .collect()
            })
            .collect();
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let v: Rational = (0..k).map(|l| &self.dp_inv[i][l] * &dq[l][j]).sum();
                if !v.is_integer() {
                    return None;
                }
                row.push(v.to_integer());
            }
            rows.push(row);
        }
        let m = IntMatrix::from_rows(rows).ok()?;
        if !m.determinant().ok()?.abs().is_one() {
            return None;
        }
        let v0m = m.left_mul(&IntVector(p.verts[self.v0].clone()));
        let t: Vec<BigInt> = q.verts[w0].iter().zip(v0m.iter()).map(|(a, b)| a - b).collect();
        let mut hit = vec![false; q.verts.len()];
        for v in &p.verts {
            let img = m.left_mul(&IntVector(v.clone()));
            let img: Vec<BigInt> = img.iter().zip(&t).map(|(a, b)| a + b).collect();
            let j = *q.index.get(&img)?;
            hit[j] = true;
        }
        hit.iter().all(|&h| h).then_some((m, t))
    }
}

fn search_full(p: &Shape, q: &Shape, k: usize, budget: u64) -> (Search, u64) {
    let mut fp_count: HashMap<&Fingerprint, usize> = HashMap::new();
    for f in &q.fp {
        *fp_count.entry(f).or_default() += 1;
    }
    let rarity = |f: &Fingerprint| fp_count.get(f).copied().unwrap_or(0);
    let v0 = (0..p.verts.len())
        .min_by_key(|&i| (rarity(&p.fp[i]), i))
        .expect("nonempty");
    let mut nbrs = p.adj[v0].clone();
    nbrs.sort_by_key(|&j| (rarity(&p.fp[j]), j));
    let diff = |j: usize| -> Vec<Rational> {
        p.verts[j]
            .iter()
            .zip(&p.verts[v0])
            .map(|(a, b)| rat_from_int(&(a - b)))
            .collect()
    };
    let mut basis: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for j in nbrs {
        rows.push(diff(j));
        if rank(&rows) == rows.len() {
            basis.push(j);
            if basis.len() == k {
                break;
            }
        } else {
            rows.pop();
        }
    }
    assert_eq!(basis.len(), k, "edge directions at a vertex span the space");
    let dp_inv = rat_inverse(&rows).expect("independent rows");
    let mut s = Searcher {
        p,
        q,
        v0,
        basis,
        dp_inv,
        frames: 0,
        budget,
    };
    for w0 in 0..q.verts.len() {
        if q.fp[w0] != p.fp[v0] {
            continue;
        }
        if let Some(r) = s.dfs(w0, &mut Vec::new()) {
            return (r, s.frames);
        }
    }
    (Search::Exhausted, s.frames)
}

/// Searches for `(m, t)` with `m` unimodular, `t` integral and
/// `{x·m + t : x ∈ P} = Q`.
pub fn affine_unimodular_equivalent(
    p: &RationalPolytope,
    q: &RationalPolytope,
    opts: &EquivalenceOptions,
) -> Result<EquivalenceOutcome> {
    let not = |reason: &str| {
        Ok(EquivalenceOutcome::NotEquivalent {
            reason: reason.to_string(),
        })
    };
    let pv = p
        .integral_vertices()
        .ok_or_else(|| Error::NotLattice("first polytope".into()))?;
    let qv = q
        .integral_vertices()
        .ok_or_else(|| Error::NotLattice("second polytope".into()))?;
    if p.dim() != q.dim() {
        return not("ambient dimensions differ");
    }
    if p.intrinsic_dim() != q.intrinsic_dim() {
        return not("intrinsic dimensions differ");
    }
    if pv.len() != qv.len() {
        return not("vertex counts differ");
    }
    if p.facets().len() != q.facets().len() {
        return not("facet counts differ");
    }

    let (wp, k) = saturating_frame(&pv);
    let (wq, _) = saturating_frame(&qv);
    let project = |verts: &[IntVector], w: &IntMatrix| -> RationalPolytope {
        let pts: Vec<RatVector> = verts
            .iter()
            .map(|v| {
                let y = w.left_mul(&v.sub(&verts[0]));
                y[..k].iter().map(rat_from_int).collect()
            })
            .collect();
        RationalPolytope::hull(&pts).expect("nonempty")
    };
    let pp = project(&pv, &wp);
    let qq = project(&qv, &wq);

    let (mk, tk) = if k == 0 {
        (IntMatrix::identity(0), Vec::new())
    } else {
        if pp.volume() != qq.volume() {
            return not("normalized volumes differ");
        }
        let sp = Shape::new(&pp);
        let sq = Shape::new(&qq);
        let mut a = sp.fp.clone();
        let mut b = sq.fp.clone();
        a.sort();
        b.sort();
        if a != b {
            return not("vertex fingerprints differ");
        }
        match search_full(&sp, &sq, k, opts.frame_budget) {
            (Search::Found(m, t), _) => (m, t),
            (Search::Exhausted, _) => return not("no frame of the second polytope matches"),
            (Search::OutOfBudget, tried) => {
                return Ok(EquivalenceOutcome::Inconclusive {
                    frames_tried: tried - 1,
                    budget: opts.frame_budget,
                })
            }
        }
    };

    // lift: M = W_P · diag(M_k, I) · W_Q⁻¹, t = −v₀·M + (t_k, 0)·W_Q⁻¹ + w₀
    let dim = p.dim();
    let mut block = IntMatrix::identity(dim);
    for i in 0..k {
        for j in 0..k {
            block.set(i, j, mk.get(i, j).clone());
        }
    }
    let wq_inv = wq.unimodular_inverse().expect("unimodular");
    let m = wp.mul(&block)?.mul(&wq_inv)?;
    let mut tpad = IntVector::zeros(dim);
    for (i, v) in tk.into_iter().enumerate() {
        tpad[i] = v;
    }
    let t = wq_inv
        .left_mul(&tpad)
        .add(&qv[0])
        .sub(&m.left_mul(&pv[0]));

    if p.apply_affine(&m, &t)? != *q {
        return Err(Error::Invalid(
            "equivalence certificate failed exact verification".into(),
        ));
    }
    Ok(EquivalenceOutcome::Equivalent { m, t })
}

impl RationalPolytope {
    pub fn unimodular_equivalence(&self, other: &Self) -> Result<EquivalenceOutcome> {
        affine_unimodular_equivalent(self, other, &EquivalenceOptions::default())
    }
}
