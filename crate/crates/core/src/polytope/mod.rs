//! Rational convex polytopes carrying both a vertex and a halfspace
//! description.

mod dd;
mod equivalence;
mod lattice;
mod volume;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    clear_denominators, gcd_all, rank, rat_from_int, rref, serde_rational,
    IntMatrix, IntVector, RatVector, Rational,
};

pub use equivalence::{affine_unimodular_equivalent, EquivalenceOptions, EquivalenceOutcome};
pub use lattice::count_lattice_points;

/// `⟨normal, x⟩ ≤ rhs` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: IntVector,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: IntVector, rhs: Rational) -> Self {
        Halfspace { normal, rhs }
    }

    /// Builds a halfspace from a rational inequality `a·x ≤ b`, rescaling to a
    /// primitive integer normal. `None` when `a = 0`.
    pub fn from_rational(a: &[Rational], b: &Rational) -> Option<Self> {
        let (scaled, l) = clear_denominators(a);
        let g = gcd_all(scaled.iter());
        if g.is_zero() {
            return None;
        }
        let normal: IntVector = scaled.iter().map(|v| v / &g).collect();
        let rhs = b * Rational::new(l, g);
        Some(Halfspace { normal, rhs })
    }

    pub fn value(&self, x: &RatVector) -> Rational {
        self.normal.dot_rat(x)
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.value(x) <= self.rhs
    }

    pub fn is_tight(&self, x: &RatVector) -> bool {
        self.value(x) == self.rhs
    }

    pub fn negated(&self) -> Self {
        Halfspace {
            normal: self.normal.neg(),
            rhs: -self.rhs.clone(),
        }
    }
}

/// A nonempty bounded rational polytope.
///
/// Vertices and facets are kept sorted, so structural equality is set
/// equality. For a polytope that is not full-dimensional the affine hull is
/// stored as equations in reduced echelon form; facet normals then vanish on
/// the pivot coordinates of those equations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<Halfspace>,
    equations: Vec<Halfspace>,
    free: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    #[serde(default)]
    vertices: Vec<RatVector>,
    #[serde(default)]
    halfspaces: Vec<Halfspace>,
}

struct AffineHull {
    equations: Vec<Halfspace>,
    free: Vec<usize>,
}

fn affine_hull(dim: usize, points: &[RatVector]) -> AffineHull {
    // (a, b) with a·p − b = 0 for every p
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r = p.0.clone();
            r.push(-Rational::one());
            r
        })
        .collect();
    let mut basis = crate::exact::right_nullspace(&rows, dim + 1);
    let pivots = rref(&mut basis);
    let equations = basis[..pivots.len()]
        .iter()
        .map(|row| {
            Halfspace::from_rational(&row[..dim], &row[dim])
                .expect("a point set has no equation 0 = b")
        })
        .collect();
    let free = (0..dim).filter(|c| !pivots.contains(c)).collect();
    AffineHull { equations, free }
}

fn project(p: &RatVector, coords: &[usize]) -> Vec<Rational> {
    coords.iter().map(|&i| p[i].clone()).collect()
}

/// Rank of the differences `p − p₀`.
fn affine_rank(points: &[&RatVector]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = rest.iter().map(|p| p.sub(first).0).collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

fn dedup_sorted(mut v: Vec<RatVector>) -> Vec<RatVector> {
    v.sort();
    v.dedup();
    v
}

impl RationalPolytope {
    /// Convex hull of a nonempty point list.
    pub fn hull(points: &[RatVector]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Invalid("hull of an empty point list".into()));
        };
        let dim = first.len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Dimension("points of differing dimension".into()));
        }
        let pts = dedup_sorted(points.to_vec());
        let ah = affine_hull(dim, &pts);
        let k = ah.free.len();
        if k == 0 {
            return Ok(RationalPolytope {
                dim,
                vertices: pts,
                facets: Vec::new(),
                equations: ah.equations,
                free: ah.free,
            });
        }

        let projected: Vec<Vec<Rational>> = pts.iter().map(|p| project(p, &ah.free)).collect();
        // (b, a) with b − a·p ≥ 0 for every projected p
        let constraints: Vec<Vec<BigInt>> = projected
            .iter()
            .map(|p| {
                let mut row = vec![Rational::one()];
                row.extend(p.iter().map(|x| -x.clone()));
                clear_denominators(&row).0
            })
            .collect();
        let cone = dd::cone(&constraints, k + 1);
        debug_assert!(cone.lineality.is_empty());

        let mut proj_facets: Vec<Halfspace> = cone
            .rays
            .iter()
            .filter_map(|ray| {
                let a: Vec<Rational> = ray[1..].iter().map(rat_from_int).collect();
                Halfspace::from_rational(&a, &rat_from_int(&ray[0]))
            })
            .collect();
        proj_facets.sort();
        proj_facets.dedup();

        let vertices: Vec<RatVector> = pts
            .iter()
            .zip(&projected)
            .filter(|(_, q)| {
                let q = RatVector((*q).clone());
                let tight: Vec<Vec<Rational>> = proj_facets
                    .iter()
                    .filter(|h| h.is_tight(&q))
                    .map(|h| h.normal.to_rat().0)
                    .collect();
                tight.len() >= k && rank(&tight) == k
            })
            .map(|(p, _)| p.clone())
            .collect();

        let mut facets: Vec<Halfspace> = proj_facets
            .into_iter()
            .map(|h| {
                let mut normal = IntVector::zeros(dim);
                for (c, &i) in ah.free.iter().enumerate() {
                    normal[i] = h.normal[c].clone();
                }
                Halfspace { normal, rhs: h.rhs }
            })
            .collect();
        facets.sort();
        Ok(RationalPolytope {
            dim,
            vertices,
            facets,
            equations: ah.equations,
            free: ah.free,
        })
    }

    /// Vertex enumeration for `{x : ⟨n, x⟩ ≤ b}` over all given halfspaces.
    pub fn from_halfspaces(dim: usize, hs: &[Halfspace]) -> Result<Self> {
        let rows: Vec<(Vec<Rational>, Rational)> = hs
            .iter()
            .map(|h| (h.normal.to_rat().0, h.rhs.clone()))
            .collect();
        Self::from_inequalities(dim, &rows)
    }

    /// Same as [`from_halfspaces`](Self::from_halfspaces) for rational
    /// inequalities `a·x ≤ b`.
    pub fn from_inequalities(dim: usize, rows: &[(Vec<Rational>, Rational)]) -> Result<Self> {
        if rows.iter().any(|(a, _)| a.len() != dim) {
            return Err(Error::Dimension(format!(
                "halfspace normal length differs from dimension {dim}"
            )));
        }
        let mut constraints = Vec::with_capacity(rows.len() + 1);
        let mut t = vec![BigInt::zero(); dim + 1];
        t[0] = BigInt::one();
        constraints.push(t);
        for (a, b) in rows {
            let mut row = vec![b.clone()];
            row.extend(a.iter().map(|x| -x.clone()));
            constraints.push(clear_denominators(&row).0);
        }
        let cone = dd::cone(&constraints, dim + 1);
        let mut vertices = Vec::new();
        let mut recession = !cone.lineality.is_empty();
        for ray in &cone.rays {
            if ray[0].is_positive() {
                let t = rat_from_int(&ray[0]);
                vertices.push(ray[1..].iter().map(|x| rat_from_int(x) / &t).collect());
            } else {
                recession = true;
            }
        }
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if recession {
            return Err(Error::Unbounded);
        }
        let vertices = dedup_sorted(vertices);
        let refs: Vec<&RatVector> = vertices.iter().collect();
        if affine_rank(&refs) < dim {
            return Self::hull(&vertices);
        }

        let mut facets: Vec<Halfspace> = rows
            .iter()
            .filter_map(|(a, b)| Halfspace::from_rational(a, b))
            .filter(|h| {
                let tight: Vec<&RatVector> = vertices.iter().filter(|v| h.is_tight(v)).collect();
                tight.len() >= dim && affine_rank(&tight) == dim - 1
            })
            .collect();
        facets.sort();
        facets.dedup();
        Ok(RationalPolytope {
            dim,
            vertices,
            facets,
            equations: Vec::new(),
            free: (0..dim).collect(),
        })
    }

    /// Assembles a full-dimensional polytope whose vertices and facets are
    /// already known to be exact and irredundant.
    fn from_full_parts(dim: usize, mut vertices: Vec<RatVector>, mut facets: Vec<Halfspace>) -> Self {
        vertices.sort();
        facets.sort();
        RationalPolytope {
            dim,
            vertices,
            facets,
            equations: Vec::new(),
            free: (0..dim).collect(),
        }
    }

    pub fn point(p: RatVector) -> Self {
        Self::hull(&[p]).expect("single point")
    }

    /// Axis-parallel box `∏ [lo_i, hi_i]`.
    pub fn cuboid(bounds: &[(Rational, Rational)]) -> Result<Self> {
        let dim = bounds.len();
        let mut rows = Vec::new();
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            let mut e = vec![Rational::zero(); dim];
            e[i] = Rational::one();
            rows.push((e.clone(), hi.clone()));
            e[i] = -Rational::one();
            rows.push((e, -lo.clone()));
        }
        Self::from_inequalities(dim, &rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Equations `⟨normal, x⟩ = rhs` cutting out the affine hull.
    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    /// Coordinates that parametrize the affine hull; projecting onto them is
    /// injective on the polytope.
    pub fn free_coordinates(&self) -> &[usize] {
        &self.free
    }

    /// Facets followed by each equation as a pair of opposite halfspaces,
    /// sorted.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        let mut out = self.facets.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.negated());
        }
        out.sort();
        out
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.free.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Whether every vertex is integral.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RatVector::is_integral)
    }

    pub fn integral_vertices(&self) -> Option<Vec<IntVector>> {
        self.vertices.iter().map(RatVector::to_int).collect()
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| e.is_tight(x))
            && self.facets.iter().all(|h| h.contains(x))
    }

    /// Membership in the relative interior.
    pub fn contains_in_interior(&self, x: &RatVector) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| e.is_tight(x))
            && self.facets.iter().all(|h| h.value(x) < h.rhs)
    }

    /// Checks that the two descriptions agree: every vertex satisfies every
    /// halfspace, every facet is tight on an affinely spanning vertex subset,
    /// and every vertex is cut out by facets.
    pub fn check_consistency(&self) -> bool {
        let k = self.intrinsic_dim();
        let inside = self.vertices.iter().all(|v| self.contains(v));
        let facets_ok = self.facets.iter().all(|h| {
            let tight: Vec<&RatVector> = self.vertices.iter().filter(|v| h.is_tight(v)).collect();
            tight.len() >= k && affine_rank(&tight) + 1 == k
        });
        let vertices_ok = self.vertices.iter().all(|v| {
            let tight: Vec<Vec<Rational>> = self
                .facets
                .iter()
                .filter(|h| h.is_tight(v))
                .map(|h| project(&h.normal.to_rat(), &self.free))
                .collect();
            k == 0 || rank(&tight) == k
        });
        let normals_primitive = self
            .facets
            .iter()
            .all(|h| gcd_all(h.normal.iter()).is_one());
        inside && facets_ok && vertices_ok && normals_primitive
    }

    pub fn translate(&self, t: &RatVector) -> Self {
        let shift = |h: &Halfspace| Halfspace {
            normal: h.normal.clone(),
            rhs: &h.rhs + h.value(t),
        };
        RationalPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
            facets: self.facets.iter().map(shift).collect(),
            equations: self.equations.iter().map(shift).collect(),
            free: self.free.clone(),
        }
    }

    /// Dilation `kP` for `k > 0`.
    pub fn dilate(&self, k: &Rational) -> Self {
        assert!(k.is_positive(), "dilation factor must be positive");
        let scale = |h: &Halfspace| Halfspace {
            normal: h.normal.clone(),
            rhs: &h.rhs * k,
        };
        RationalPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            facets: self.facets.iter().map(scale).collect(),
            equations: self.equations.iter().map(scale).collect(),
            free: self.free.clone(),
        }
    }

    /// The polar `{v : ⟨u, v⟩ ≥ −1 for all u ∈ P}`. Requires the origin in the
    /// interior.
    pub fn polar(&self) -> Result<Self> {
        if !self.is_full_dimensional() {
            return Err(Error::NotInterior(
                "polytope is not full-dimensional".into(),
            ));
        }
        if let Some(h) = self.facets.iter().find(|h| !h.rhs.is_positive()) {
            return Err(Error::NotInterior(format!(
                "origin violates or touches facet {} <= {}",
                h.normal,
                crate::exact::format_rational(&h.rhs)
            )));
        }
        let vertices = self
            .facets
            .iter()
            .map(|h| h.normal.to_rat().scale(&(-h.rhs.recip())))
            .collect();
        let facets = self
            .vertices
            .iter()
            .map(|u| {
                Halfspace::from_rational(&u.neg().0, &Rational::one())
                    .expect("origin is interior, so no vertex is zero")
            })
            .collect();
        Ok(Self::from_full_parts(self.dim, vertices, facets))
    }

    /// Polar of `P − a`.
    pub fn dual_at(&self, a: &IntVector) -> Result<Self> {
        if a.len() != self.dim {
            return Err(Error::Dimension("interior point has wrong length".into()));
        }
        let a = a.to_rat();
        if !self.contains_in_interior(&a) || !self.is_full_dimensional() {
            return Err(Error::NotInterior(format!("{a} is not an interior point")));
        }
        self.translate(&a.neg()).polar()
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("Minkowski sum of different dimensions".into()));
        }
        let pts: Vec<RatVector> = self
            .vertices
            .iter()
            .flat_map(|p| other.vertices.iter().map(move |q| p.add(q)))
            .collect();
        Self::hull(&pts)
    }

    /// `P ∩ {⟨w, x⟩ = h}`, or `None` when empty.
    pub fn slice(&self, w: &IntVector, h: &Rational) -> Option<Self> {
        let values: Vec<Rational> = self.vertices.iter().map(|v| w.dot_rat(v)).collect();
        let lo = values.iter().min()?;
        let hi = values.iter().max()?;
        if h < lo || h > hi {
            return None;
        }
        if lo == hi {
            return Some(self.clone());
        }
        let mut hs = self.halfspaces();
        let level = Halfspace::new(w.clone(), h.clone());
        hs.push(level.negated());
        hs.push(level);
        Self::from_halfspaces(self.dim, &hs).ok()
    }

    /// `{x·m + t : x ∈ P}` for a nonsingular integer matrix `m`.
    pub fn apply_affine(&self, m: &IntMatrix, t: &IntVector) -> Result<Self> {
        self.apply_affine_rat(m, &t.to_rat())
    }

    pub fn apply_affine_rat(&self, m: &IntMatrix, t: &RatVector) -> Result<Self> {
        if !m.is_square() || m.rows() != self.dim || t.len() != self.dim {
            return Err(Error::Dimension(format!(
                "affine map {}x{} with shift of length {} on dimension {}",
                m.rows(),
                m.cols(),
                t.len(),
                self.dim
            )));
        }
        let inv = m.rational_inverse().ok_or(Error::Singular)?;
        let vertices: Vec<RatVector> = self
            .vertices
            .iter()
            .map(|v| v.mul_int_matrix(m).add(t))
            .collect();
        if !self.is_full_dimensional() {
            return Self::hull(&vertices);
        }
        let facets = self
            .facets
            .iter()
            .map(|h| {
                let n: Vec<Rational> = (0..self.dim)
                    .map(|i| {
                        inv[i]
                            .iter()
                            .zip(h.normal.iter())
                            .map(|(a, b)| a * rat_from_int(b))
                            .sum()
                    })
                    .collect();
                let rhs = &h.rhs + RatVector(n.clone()).dot(t);
                Halfspace::from_rational(&n, &rhs).expect("nonsingular map keeps normals nonzero")
            })
            .collect();
        Ok(Self::from_full_parts(self.dim, vertices, facets))
    }

    /// Image under a linear map given by a rational matrix (rows act on the
    /// right), hulled.
    pub fn map_vertices(&self, f: impl Fn(&RatVector) -> RatVector) -> Result<Self> {
        let pts: Vec<RatVector> = self.vertices.iter().map(f).collect();
        Self::hull(&pts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("polytope JSON")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolytopeJson {
            dim: self.dim,
            vertices: self.vertices.clone(),
            halfspaces: self.halfspaces(),
        })
        .expect("polytope JSON")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    /// Reads the polytope schema. When both descriptions are present they must
    /// describe the same set.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let pj: PolytopeJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if pj.vertices.iter().any(|p| p.len() != pj.dim)
            || pj.halfspaces.iter().any(|h| h.normal.len() != pj.dim)
        {
            return Err(Error::Dimension("entries disagree with \"dim\"".into()));
        }
        if pj.vertices.is_empty() {
            return Self::from_halfspaces(pj.dim, &pj.halfspaces);
        }
        let p = Self::hull(&pj.vertices)?;
        if !pj.halfspaces.is_empty() {
            let mut given = pj.halfspaces.clone();
            given.sort();
            if given != p.halfspaces() {
                let q = Self::from_halfspaces(pj.dim, &pj.halfspaces)?;
                if q.vertices != p.vertices {
                    return Err(Error::Invalid(
                        "vertices and halfspaces describe different sets".into(),
                    ));
                }
            }
        }
        Ok(p)
    }
}

impl fmt::Display for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "conv({})", vs.join(", "))
    }
}

/// Shorthand used throughout tests and fixtures.
pub fn polytope_from_i64(points: &[&[i64]]) -> RationalPolytope {
    let pts: Vec<RatVector> = points.iter().map(|p| RatVector::from_i64(p)).collect();
    RationalPolytope::hull(&pts).expect("nonempty point list")
}
