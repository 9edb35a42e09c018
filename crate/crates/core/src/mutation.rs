//! Combinatorial mutations on both sides of the duality: the polytope
//! operation `mut_w(P, F)` on the N side and the piecewise-linear map
//! `φ_{w,F}(u) = u − u_min·w` on the M side.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, gcd_all, int, rat_from_int, IntMatrix, IntVector, RatVector, Rational};
use crate::polytope::{Halfspace, RationalPolytope};

/// A primitive covector `w` and a lattice polytope `F ⊆ w⊥`, optionally with a
/// unimodular companion `f` applied after `φ_{w,F}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationDatum {
    pub w: IntVector,
    pub factor: RationalPolytope,
    pub f: Option<IntMatrix>,
}

impl MutationDatum {
    pub fn new(w: IntVector, factor: RationalPolytope) -> Result<Self> {
        if w.len() != factor.dim() {
            return Err(Error::Dimension("w and F live in different dimensions".into()));
        }
        if !gcd_all(w.iter()).is_one() {
            return Err(Error::Invalid(format!("w = {w} is not primitive")));
        }
        if !factor.is_lattice() {
            return Err(Error::NotLattice("the factor F".into()));
        }
        if let Some(v) = factor.vertices().iter().find(|v| !w.dot_rat(v).is_zero()) {
            return Err(Error::Invalid(format!("factor vertex {v} is not in w⊥")));
        }
        Ok(MutationDatum { w, factor, f: None })
    }

    pub fn with_companion(mut self, f: IntMatrix) -> Result<Self> {
        if !f.is_square() || f.rows() != self.w.len() {
            return Err(Error::Dimension("companion matrix has the wrong shape".into()));
        }
        if !crate::exact::is_unimodular(&f)? {
            return Err(Error::Invalid("companion matrix is not unimodular".into()));
        }
        self.f = Some(f);
        Ok(self)
    }

    /// Segment factor `conv(0, v)`.
    pub fn segment(w: IntVector, v: IntVector) -> Result<Self> {
        let dim = w.len();
        let f = RationalPolytope::hull(&[RatVector::zeros(dim), v.to_rat()])?;
        Self::new(w, f)
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// The datum `(−w, F)`, whose map inverts `φ_{w,F}`.
    pub fn negated(&self) -> Self {
        MutationDatum {
            w: self.w.neg(),
            factor: self.factor.clone(),
            f: None,
        }
    }

    fn u_min(&self, u: &RatVector) -> Rational {
        self.factor
            .vertices()
            .iter()
            .map(|v| u.dot(v))
            .min()
            .expect("factor has a vertex")
    }

    pub fn phi_point(&self, u: &RatVector) -> RatVector {
        let m = self.u_min(u);
        u.sub(&self.w.to_rat().scale(&m))
    }

    pub fn phi_inverse_point(&self, u: &RatVector) -> RatVector {
        self.negated().phi_point(u)
    }

    /// `f(φ_{w,F}(u))`, or just `φ` without a companion.
    pub fn apply_point(&self, u: &RatVector) -> RatVector {
        let v = self.phi_point(u);
        match &self.f {
            Some(f) => v.mul_int_matrix(f),
            None => v,
        }
    }

    /// Matrix of `u ↦ u − ⟨u, v⟩ w`.
    fn shear(&self, v: &IntVector) -> IntMatrix {
        let d = self.dim();
        let mut m = IntMatrix::identity(d);
        for i in 0..d {
            for j in 0..d {
                let x = m.get(i, j) - &v[i] * &self.w[j];
                m.set(i, j, x);
            }
        }
        m
    }

    /// `φ_{w,F}(Q)` as a polytope.
    ///
    /// `Q` is cut into the regions where a fixed vertex of `F` attains
    /// `u_min`; `φ` is linear on each. The image is returned only when the
    /// cell images exactly fill their convex hull, measured by volume.
    pub fn phi_polytope(&self, q: &RationalPolytope) -> Result<RationalPolytope> {
        if q.dim() != self.dim() {
            return Err(Error::Dimension("polytope and datum dimensions differ".into()));
        }
        let fverts: Vec<IntVector> = self
            .factor
            .integral_vertices()
            .expect("factor is a lattice polytope");
        let base = q.halfspaces();
        let images: Vec<RationalPolytope> = fverts
            .par_iter()
            .map(|vj| -> Result<Option<RationalPolytope>> {
                let mut hs = base.clone();
                for vi in &fverts {
                    let d = vj.sub(vi);
                    if !d.is_zero() {
                        let h = Halfspace::from_rational(&d.to_rat().0, &Rational::zero())
                            .expect("nonzero normal");
                        hs.push(h);
                    }
                }
                let cell = match RationalPolytope::from_halfspaces(q.dim(), &hs) {
                    Ok(c) => c,
                    Err(Error::EmptyPolytope) => return Ok(None),
                    Err(e) => return Err(e),
                };
                cell.apply_affine(&self.shear(vj), &IntVector::zeros(q.dim()))
                    .map(Some)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let pts: Vec<RatVector> = images
            .iter()
            .flat_map(|c| c.vertices().iter().cloned())
            .collect();
        let hull = RationalPolytope::hull(&pts)?;
        if hull.intrinsic_dim() > 0 {
            let coords = hull.free_coordinates().to_vec();
            let total: Rational = images
                .par_iter()
                .map(|c| c.volume_in_coordinates(&coords))
                .reduce(Rational::zero, |a, b| a + b);
            let full = hull.relative_volume();
            if total != full {
                return Err(Error::NonConvexImage {
                    defect: format_rational(&(full - total)),
                });
            }
        }
        Ok(hull)
    }

    /// `f(φ_{w,F}(Q))`, or `φ_{w,F}(Q)` without a companion.
    pub fn apply_polytope(&self, q: &RationalPolytope) -> Result<RationalPolytope> {
        let img = self.phi_polytope(q)?;
        match &self.f {
            Some(f) => img.apply_affine(f, &IntVector::zeros(q.dim())),
            None => Ok(img),
        }
    }

    /// `mut_w(P, F)` for a lattice polytope `P`, using the largest lattice
    /// polytope `G_h` with `G_h + |h|F ⊆ P_{w,h}` at every negative level.
    pub fn mutate_n(&self, p: &RationalPolytope) -> Result<RationalPolytope> {
        if p.dim() != self.dim() {
            return Err(Error::Dimension("polytope and datum dimensions differ".into()));
        }
        if !p.is_lattice() {
            return Err(Error::NotLattice("mutate_n input".into()));
        }
        let dim = p.dim();
        let levels: Vec<Rational> = p.vertices().iter().map(|v| self.w.dot_rat(v)).collect();
        let hmin = levels.iter().min().expect("nonempty").to_integer();
        let hmax = levels.iter().max().expect("nonempty").to_integer();
        let fverts: Vec<RatVector> = self.factor.vertices().to_vec();
        let mut pts: Vec<RatVector> = Vec::new();

        let mut h = hmin.clone();
        while h < int(0) && h <= hmax {
            let hq = rat_from_int(&h);
            let scale = -hq.clone();
            let at_level: Vec<&RatVector> = p
                .vertices()
                .iter()
                .zip(&levels)
                .filter(|(_, l)| **l == hq)
                .map(|(v, _)| v)
                .collect();
            // erosion of the slice by |h|F, then its integer hull
            let mut hs = Vec::new();
            for b in p.halfspaces() {
                for f in &fverts {
                    hs.push(Halfspace::new(
                        b.normal.clone(),
                        &b.rhs - b.normal.dot_rat(f) * &scale,
                    ));
                }
            }
            let lv = Halfspace::new(self.w.clone(), hq.clone());
            hs.push(lv.negated());
            hs.push(lv);
            let g = match RationalPolytope::from_halfspaces(dim, &hs) {
                Ok(e) => {
                    let lp = e.lattice_points();
                    if lp.is_empty() {
                        None
                    } else {
                        let v: Vec<RatVector> = lp.iter().map(IntVector::to_rat).collect();
                        Some(RationalPolytope::hull(&v)?)
                    }
                }
                Err(Error::EmptyPolytope) => None,
                Err(e) => return Err(e),
            };
            match g {
                None if !at_level.is_empty() => {
                    return Err(Error::NotWellDefined(format!(
                        "no lattice polytope G_h at level {h}"
                    )))
                }
                None => {}
                Some(g) => {
                    if !at_level.is_empty() {
                        let sum = g.minkowski_sum(&self.factor.dilate(&scale))?;
                        if let Some(v) = at_level.iter().find(|v| !sum.contains(v)) {
                            return Err(Error::NotWellDefined(format!(
                                "vertex {v} at level {h} is not in G_h + |h|F"
                            )));
                        }
                    }
                    pts.extend(g.vertices().iter().cloned());
                }
            }
            h += 1;
        }

        let mut h = if hmin > int(0) { hmin } else { int(0) };
        while h <= hmax {
            let hq = rat_from_int(&h);
            if let Some(slice) = p.slice(&self.w, &hq) {
                let part = if h.is_zero() {
                    slice
                } else {
                    slice.minkowski_sum(&self.factor.dilate(&hq))?
                };
                pts.extend(part.vertices().iter().cloned());
            }
            h += 1;
        }
        if pts.is_empty() {
            return Err(Error::NotWellDefined("mutation is empty".into()));
        }
        RationalPolytope::hull(&pts)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "w": self.w,
            "F": self.factor.to_json_value(),
            "f": self.f,
        })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let w: IntVector = serde_json::from_value(v.get("w").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("datum \"w\": {e}")))?;
        let factor = RationalPolytope::from_json_value(
            v.get("F")
                .ok_or_else(|| Error::Parse("datum is missing \"F\"".into()))?,
        )?;
        let d = Self::new(w, factor)?;
        match v.get("f") {
            None | Some(Value::Null) => Ok(d),
            Some(m) => {
                let f: IntMatrix = serde_json::from_value(m.clone())
                    .map_err(|e| Error::Parse(format!("datum \"f\": {e}")))?;
                d.with_companion(f)
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

/// Whether `φ_{w,F}(P*) = mut_w(P, F)*`.
pub fn duality_check(p: &RationalPolytope, d: &MutationDatum) -> Result<bool> {
    let lhs = d.phi_polytope(&p.polar()?)?;
    let rhs = d.mutate_n(p)?.polar()?;
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    N,
    M,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// `Q ← mut(Q) + t` (N side) or `Q ← f(φ(Q)) + t` (M side).
    Mutation {
        datum: MutationDatum,
        side: Side,
        translate: Option<IntVector>,
    },
    /// `Q ← Q·m + t`.
    Affine { m: IntMatrix, t: IntVector },
    /// `Q ← (Q − a)*`.
    Dual { at: IntVector },
}

impl TraceStep {
    pub fn apply(&self, q: &RationalPolytope) -> Result<RationalPolytope> {
        match self {
            TraceStep::Mutation {
                datum,
                side,
                translate,
            } => {
                let img = match side {
                    Side::M => datum.apply_polytope(q)?,
                    Side::N => {
                        let m = datum.mutate_n(q)?;
                        match &datum.f {
                            Some(f) => m.apply_affine(f, &IntVector::zeros(q.dim()))?,
                            None => m,
                        }
                    }
                };
                Ok(match translate {
                    Some(t) => img.translate(&t.to_rat()),
                    None => img,
                })
            }
            TraceStep::Affine { m, t } => q.apply_affine(m, t),
            TraceStep::Dual { at } => q.dual_at(at),
        }
    }

    /// Steps undoing this one.
    pub fn inverse(&self) -> Result<Vec<TraceStep>> {
        let unimodular_inverse = |m: &IntMatrix| {
            m.unimodular_inverse()
                .ok_or_else(|| Error::Invalid("step matrix is not unimodular".into()))
        };
        Ok(match self {
            TraceStep::Mutation {
                datum,
                side,
                translate,
            } => {
                let d = datum.dim();
                let t = translate.clone().unwrap_or_else(|| IntVector::zeros(d));
                let (m_inv, t_inv) = match &datum.f {
                    Some(f) => {
                        let fi = unimodular_inverse(f)?;
                        let ti = fi.left_mul(&t).neg();
                        (fi, ti)
                    }
                    None => (IntMatrix::identity(d), t.neg()),
                };
                vec![
                    TraceStep::Affine { m: m_inv, t: t_inv },
                    TraceStep::Mutation {
                        datum: datum.negated(),
                        side: *side,
                        translate: None,
                    },
                ]
            }
            TraceStep::Affine { m, t } => {
                let mi = unimodular_inverse(m)?;
                let ti = mi.left_mul(t).neg();
                vec![TraceStep::Affine { m: mi, t: ti }]
            }
            TraceStep::Dual { at } => vec![
                TraceStep::Dual {
                    at: IntVector::zeros(at.len()),
                },
                TraceStep::Affine {
                    m: IntMatrix::identity(at.len()),
                    t: at.clone(),
                },
            ],
        })
    }

    pub fn to_json_value(&self) -> Value {
        match self {
            TraceStep::Mutation {
                datum,
                side,
                translate,
            } => {
                let mut v = json!({
                    "side": match side { Side::N => "N", Side::M => "M" },
                    "datum": datum.to_json_value(),
                });
                if let Some(t) = translate {
                    v["translate"] = json!(t);
                }
                v
            }
            TraceStep::Affine { m, t } => json!({"side": "affine", "m": m, "t": t}),
            TraceStep::Dual { at } => json!({"side": "dual", "at": at}),
        }
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let side = v
            .get("side")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("trace step is missing \"side\"".into()))?;
        let field = |name: &str| -> Result<Value> {
            v.get(name)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("trace step is missing \"{name}\"")))
        };
        let parse = |x: Value| -> Result<IntVector> {
            serde_json::from_value(x).map_err(|e| Error::Parse(e.to_string()))
        };
        match side {
            "N" | "M" => {
                let datum = MutationDatum::from_json_value(&field("datum")?)?;
                let translate = match v.get("translate") {
                    None | Some(Value::Null) => None,
                    Some(t) => Some(parse(t.clone())?),
                };
                Ok(TraceStep::Mutation {
                    datum,
                    side: if side == "N" { Side::N } else { Side::M },
                    translate,
                })
            }
            "affine" => Ok(TraceStep::Affine {
                m: serde_json::from_value(field("m")?).map_err(|e| Error::Parse(e.to_string()))?,
                t: parse(field("t")?)?,
            }),
            "dual" => Ok(TraceStep::Dual {
                at: parse(field("at")?)?,
            }),
            other => Err(Error::Parse(format!("unknown trace side {other:?}"))),
        }
    }
}

/// An ordered list of steps applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MutationTrace {
    pub steps: Vec<TraceStep>,
}

impl MutationTrace {
    pub fn new(steps: Vec<TraceStep>) -> Self {
        MutationTrace { steps }
    }

    /// Applies every step, stopping at the first failure.
    pub fn apply(&self, q: &RationalPolytope) -> Result<RationalPolytope> {
        let mut cur = q.clone();
        for (i, s) in self.steps.iter().enumerate() {
            cur = s.apply(&cur).map_err(|e| Error::TraceStep {
                step: i,
                cause: Box::new(e),
            })?;
        }
        Ok(cur)
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut steps = Vec::new();
        for s in self.steps.iter().rev() {
            steps.extend(s.inverse()?);
        }
        Ok(MutationTrace { steps })
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(self.steps.iter().map(TraceStep::to_json_value).collect())
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("a trace is a JSON array".into()))?;
        arr.iter()
            .map(TraceStep::from_json_value)
            .collect::<Result<Vec<_>>>()
            .map(MutationTrace::new)
    }
}

pub fn apply_trace(q: &RationalPolytope, trace: &MutationTrace) -> Result<RationalPolytope> {
    trace.apply(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::polytope::polytope_from_i64;
    use proptest::prelude::*;

    fn example() -> (RationalPolytope, MutationDatum) {
        let p = polytope_from_i64(&[&[1, 1], &[0, 1], &[-1, -1], &[0, -1]]);
        let d = MutationDatum::segment(IntVector::from_i64(&[0, -1]), IntVector::from_i64(&[1, 0]))
            .unwrap();
        (p, d)
    }

    fn trivial(dim: usize) -> MutationDatum {
        let mut w = IntVector::zeros(dim);
        w[0] = int(1);
        MutationDatum::new(w, RationalPolytope::point(RatVector::zeros(dim))).unwrap()
    }

    #[test]
    fn phi_point_piecewise() {
        let (_, d) = example();
        let u = RatVector::from_i64(&[-2, 1]);
        assert_eq!(d.phi_point(&u), RatVector::from_i64(&[-2, -1]));
        let u = RatVector::from_i64(&[3, 1]);
        assert_eq!(d.phi_point(&u), u);
        assert_eq!(trivial(2).phi_point(&u), u);
    }

    #[test]
    fn example_mutation_n_side() {
        let (p, d) = example();
        let m = d.mutate_n(&p).unwrap();
        assert_eq!(m, polytope_from_i64(&[&[0, 1], &[-1, -1], &[1, -1]]));
        assert_eq!(d.negated().mutate_n(&m).unwrap(), p);
        assert_eq!(trivial(2).mutate_n(&p).unwrap(), p);
    }

    #[test]
    fn example_mutation_m_side() {
        let (p, d) = example();
        let dual = p.polar().unwrap();
        let img = d.phi_polytope(&dual).unwrap();
        assert_eq!(img, polytope_from_i64(&[&[0, 1], &[-2, -1], &[2, -1]]));
        assert_eq!(img.lattice_point_count(), dual.lattice_point_count());
        assert_eq!(trivial(2).phi_polytope(&dual).unwrap(), dual);
        assert!(duality_check(&p, &d).unwrap());
        assert!(duality_check(&p, &trivial(2)).unwrap());
    }

    #[test]
    fn dual_ehrhart_counts_are_preserved() {
        let (p, d) = example();
        let m = d.mutate_n(&p).unwrap();
        assert_eq!(p.polar().unwrap().ehrhart_counts(3), m.polar().unwrap().ehrhart_counts(3));
    }

    #[test]
    fn non_convex_image_is_reported() {
        // φ folds the square [−1,1]² so that the image is not convex
        let sq = polytope_from_i64(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]);
        let d = MutationDatum::segment(IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[1, 0]))
            .unwrap();
        match d.phi_polytope(&sq) {
            Err(Error::NonConvexImage { defect }) => assert_ne!(defect, "0"),
            other => panic!("expected a non-convex image, got {other:?}"),
        }
    }

    #[test]
    fn ill_defined_n_mutation() {
        // the square has an edge at level −1 shorter than |h|·F at level −2
        let p = polytope_from_i64(&[&[0, 0], &[1, 0], &[0, 2], &[1, 2]]);
        let d = MutationDatum::segment(IntVector::from_i64(&[0, -1]), IntVector::from_i64(&[1, 0]))
            .unwrap();
        assert!(matches!(d.mutate_n(&p), Err(Error::NotWellDefined(_))));
    }

    #[test]
    fn datum_validation() {
        let f = polytope_from_i64(&[&[0, 0], &[1, 0]]);
        assert!(MutationDatum::new(IntVector::from_i64(&[0, 2]), f.clone()).is_err());
        assert!(MutationDatum::new(IntVector::from_i64(&[1, 0]), f.clone()).is_err());
        let d = MutationDatum::new(IntVector::from_i64(&[0, 1]), f).unwrap();
        assert!(d.clone().with_companion(IntMatrix::diagonal(&[2, 1])).is_err());
        let d = d.with_companion(IntMatrix::identity(2)).unwrap();
        let back = MutationDatum::from_json_value(&d.to_json_value()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn trace_round_trips() {
        let (p, d) = example();
        let dual = p.polar().unwrap();
        let trace = MutationTrace::new(vec![
            TraceStep::Mutation {
                datum: d.clone().with_companion(IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]])).unwrap(),
                side: Side::M,
                translate: Some(IntVector::from_i64(&[1, 0])),
            },
            TraceStep::Affine {
                m: IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
                t: IntVector::from_i64(&[0, 2]),
            },
        ]);
        let out = trace.apply(&dual).unwrap();
        assert_eq!(trace.inverse().unwrap().apply(&out).unwrap(), dual);
        assert_eq!(MutationTrace::default().apply(&dual).unwrap(), dual);
        let json = trace.to_json_value();
        assert_eq!(MutationTrace::from_json_value(&json).unwrap(), trace);

        let n_trace = MutationTrace::new(vec![TraceStep::Mutation {
            datum: d,
            side: Side::N,
            translate: None,
        }]);
        let m = n_trace.apply(&p).unwrap();
        assert_eq!(n_trace.inverse().unwrap().apply(&m).unwrap(), p);

        let dual_trace = MutationTrace::new(vec![TraceStep::Dual {
            at: IntVector::from_i64(&[0, 0]),
        }]);
        let q = dual_trace.apply(&p).unwrap();
        assert_eq!(dual_trace.inverse().unwrap().apply(&q).unwrap(), p);
    }

    #[test]
    fn trace_failure_names_the_step() {
        let sq = polytope_from_i64(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]);
        let d = MutationDatum::segment(IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[1, 0]))
            .unwrap();
        let trace = MutationTrace::new(vec![
            TraceStep::Affine {
                m: IntMatrix::identity(2),
                t: IntVector::zeros(2),
            },
            TraceStep::Mutation {
                datum: d,
                side: Side::M,
                translate: None,
            },
        ]);
        match trace.apply(&sq) {
            Err(Error::TraceStep { step: 1, cause }) => {
                assert!(matches!(*cause, Error::NonConvexImage { .. }))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-60i64..61, 1i64..13).prop_map(|(n, d)| rat(n, d))
    }

    /// Reflexive polygons with the origin as unique interior point, paired
    /// with a primitive w and a primitive segment in w⊥.
    fn polygon_and_datum() -> impl Strategy<Value = (RationalPolytope, MutationDatum)> {
        let polys: Vec<Vec<[i64; 2]>> = vec![
            vec![[1, 1], [0, 1], [-1, -1], [0, -1]],
            vec![[1, 0], [0, 1], [-1, -1]],
            vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
            vec![[-1, -1], [-1, 1], [1, -1], [1, 1]],
            vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
            vec![[-1, -1], [2, -1], [-1, 2]],
            vec![[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1]],
        ];
        let ws = [[0i64, 1], [0, -1], [1, 0], [-1, 0], [1, 1], [-1, -1], [1, -1], [-1, 1]];
        (0..polys.len(), 0..ws.len(), 1i64..3).prop_map(move |(pi, wi, len)| {
            let pts: Vec<&[i64]> = polys[pi].iter().map(|p| &p[..]).collect();
            let p = polytope_from_i64(&pts);
            let w = ws[wi];
            let d = MutationDatum::segment(
                IntVector::from_i64(&w),
                IntVector::from_i64(&[-w[1] * len, w[0] * len]),
            )
            .unwrap();
            (p, d)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn phi_round_trip(x in small_rational(), y in small_rational()) {
            let (_, d) = example();
            let u = RatVector(vec![x, y]);
            prop_assert_eq!(d.phi_inverse_point(&d.phi_point(&u)), u.clone());
            prop_assert_eq!(d.negated().phi_point(&d.negated().negated().phi_point(&u)), u);
        }

        #[test]
        fn duality_holds_whenever_defined((p, d) in polygon_and_datum()) {
            if let (Ok(m), Ok(img)) = (d.mutate_n(&p), d.phi_polytope(&p.polar().unwrap())) {
                prop_assert!(m.is_lattice());
                prop_assert_eq!(&img, &m.polar().unwrap());
                prop_assert_eq!(
                    p.polar().unwrap().ehrhart_counts(3),
                    m.polar().unwrap().ehrhart_counts(3)
                );
            }
        }

        #[test]
        fn phi_preserves_lattice_points((p, d) in polygon_and_datum()) {
            if let Ok(img) = d.phi_polytope(&p) {
                prop_assert_eq!(img.lattice_point_count(), p.lattice_point_count());
            }
        }
    }
}
