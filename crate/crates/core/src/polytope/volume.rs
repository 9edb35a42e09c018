//! Exact volume by pulling triangulation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RationalPolytope;
use crate::exact::{common_denominator, rank, rat_from_int, IntMatrix, RatVector, Rational};

type Bits = Vec<u64>;

struct Triangulator {
    points: Vec<Vec<BigInt>>,
    incidences: Vec<Bits>,
    memo: HashMap<Bits, Vec<Vec<usize>>>,
}

fn members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, word) in b.iter().enumerate() {
        let mut x = *word;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            out.push(w * 64 + t);
            x &= x - 1;
        }
    }
    out
}

impl Triangulator {
    fn affine_rank(&self, idx: &[usize]) -> usize {
        let Some((&first, rest)) = idx.split_first() else {
            return 0;
        };
        if rest.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Rational>> = rest
            .iter()
            .map(|&i| {
                self.points[i]
                    .iter()
                    .zip(&self.points[first])
                    .map(|(a, b)| rat_from_int(&(a - b)))
                    .collect()
            })
            .collect();
        rank(&rows)
    }

    /// Simplices (as vertex index lists) of a pulling triangulation of the
    /// face with vertex set `face` and dimension `d`.
    fn triangulate(&mut self, face: &Bits, d: usize) -> Vec<Vec<usize>> {
        if let Some(s) = self.memo.get(face) {
            return s.clone();
        }
        let verts = members(face);
        let apex = verts[0];
        let out = if d == 0 {
            vec![vec![apex]]
        } else {
            let mut subfaces: Vec<Bits> = Vec::new();
            for inc in &self.incidences {
                let g: Bits = face.iter().zip(inc).map(|(a, b)| a & b).collect();
                if g[apex / 64] & (1 << (apex % 64)) != 0 {
                    continue;
                }
                let gm = members(&g);
                if gm.len() < d || subfaces.contains(&g) {
                    continue;
                }
                if self.affine_rank(&gm) + 1 == d {
                    subfaces.push(g);
                }
            }
            let mut simplices = Vec::new();
            for g in subfaces {
                for mut s in self.triangulate(&g, d - 1) {
                    s.push(apex);
                    simplices.push(s);
                }
            }
            simplices
        };
        self.memo.insert(face.clone(), out.clone());
        out
    }
}

/// Volume of a full-dimensional polytope in `ℚᵏ` given its vertices and
/// facet normals/right-hand sides.
fn full_volume(vertices: &[Vec<Rational>], facets: &[(Vec<Rational>, Rational)]) -> Rational {
    let k = vertices.first().map_or(0, Vec::len);
    if k == 0 {
        return Rational::one();
    }
    let l = common_denominator(vertices.iter().flatten());
    let points: Vec<Vec<BigInt>> = vertices
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| (x * rat_from_int(&l)).to_integer())
                .collect()
        })
        .collect();
    let words = vertices.len().div_ceil(64);
    let incidences: Vec<Bits> = facets
        .iter()
        .map(|(a, b)| {
            let mut bits = vec![0u64; words];
            for (i, v) in vertices.iter().enumerate() {
                let val: Rational = a.iter().zip(v).map(|(x, y)| x * y).sum();
                if &val == b {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let mut all = vec![0u64; words];
    for i in 0..vertices.len() {
        all[i / 64] |= 1 << (i % 64);
    }
    let mut t = Triangulator {
        points,
        incidences,
        memo: HashMap::new(),
    };
    let simplices = t.triangulate(&all, k);
    let mut total = BigInt::zero();
    for s in &simplices {
        let base = &t.points[s[0]];
        let rows: Vec<Vec<BigInt>> = s[1..]
            .iter()
            .map(|&i| t.points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let det = IntMatrix::from_rows(rows)
            .and_then(|m| m.determinant())
            .expect("square simplex matrix");
        total += det.abs();
    }
    let factorial: BigInt = (1..=k).map(BigInt::from).product();
    let scale = num_traits::pow(l, k) * factorial;
    Rational::new(total, scale)
}

impl RationalPolytope {
    /// Euclidean volume in the ambient space (zero unless full-dimensional).
    pub fn volume(&self) -> Rational {
        if !self.is_full_dimensional() {
            return Rational::zero();
        }
        let verts: Vec<Vec<Rational>> = self.vertices().iter().map(|v| v.0.clone()).collect();
        let facets: Vec<(Vec<Rational>, Rational)> = self
            .facets()
            .iter()
            .map(|h| (h.normal.to_rat().0, h.rhs.clone()))
            .collect();
        full_volume(&verts, &facets)
    }

    /// Volume of the projection onto the free coordinates of the affine hull.
    /// Comparable between polytopes sharing an affine hull.
    pub fn relative_volume(&self) -> Rational {
        let free = self.free_coordinates().to_vec();
        let verts: Vec<Vec<Rational>> = self
            .vertices()
            .iter()
            .map(|v| free.iter().map(|&i| v[i].clone()).collect())
            .collect();
        let facets: Vec<(Vec<Rational>, Rational)> = self
            .facets()
            .iter()
            .map(|h| (free.iter().map(|&i| rat_from_int(&h.normal[i])).collect(), h.rhs.clone()))
            .collect();
        full_volume(&verts, &facets)
    }

    /// Volume of the projection onto `coords`; zero when that projection is
    /// lower-dimensional.
    pub fn volume_in_coordinates(&self, coords: &[usize]) -> Rational {
        let pts: Vec<RatVector> = self
            .vertices()
            .iter()
            .map(|v| coords.iter().map(|&i| v[i].clone()).collect())
            .collect();
        let proj = RationalPolytope::hull(&pts).expect("nonempty");
        proj.volume()
    }
}
