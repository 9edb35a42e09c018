//! Marked posets, their order, chain and chain-order polytopes, the transfer
//! map between them, and the step-by-step factorization of the transfer map
//! into combinatorial mutations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{int, rank, IntVector, RatVector, Rational};
use crate::mutation::MutationDatum;
use crate::polytope::RationalPolytope;

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
    marked: BTreeMap<String, i64>,
}

/// A finite poset with a marked subset `A` (containing all extremal
/// elements) and an order-preserving integer marking on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoset {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    marking: Vec<Option<i64>>,
    /// `less[p][q]` iff `p ≺ q`.
    less: Vec<Vec<bool>>,
    /// Lower covers: `lower[p]` lists `p'` with `p' ⋖ p`.
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    /// Unmarked elements in coordinate order.
    unmarked: Vec<usize>,
    coord: Vec<Option<usize>>,
}

impl MarkedPoset {
    /// `relations` are pairs `(lower, upper)`; they need not be covers, the
    /// cover relation is recovered by transitive reduction.
    pub fn new(
        elements: Vec<String>,
        relations: Vec<(String, String)>,
        marked: BTreeMap<String, i64>,
    ) -> Result<Self> {
        let n = elements.len();
        let mut index = BTreeMap::new();
        for (i, l) in elements.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate element {l:?}")));
            }
        }
        let find = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("unknown element {l:?}")))
        };
        let mut marking = vec![None; n];
        for (l, v) in &marked {
            marking[find(l)?] = Some(*v);
        }
        let mut less = vec![vec![false; n]; n];
        for (lo, hi) in &relations {
            less[find(lo)?][find(hi)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::Invalid(format!(
                "relations contain a cycle through {:?}",
                elements[i]
            )));
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for p in 0..n {
            for q in 0..n {
                if less[p][q] && !(0..n).any(|r| less[p][r] && less[r][q]) {
                    lower[q].push(p);
                    upper[p].push(q);
                }
            }
        }
        for p in 0..n {
            let extremal = lower[p].is_empty() || upper[p].is_empty();
            if extremal && marking[p].is_none() {
                return Err(Error::Invalid(format!(
                    "extremal element {:?} is not marked",
                    elements[p]
                )));
            }
            for q in 0..n {
                if let (true, Some(a), Some(b)) = (less[p][q], marking[p], marking[q]) {
                    if a > b {
                        return Err(Error::Invalid(format!(
                            "marking decreases from {:?} to {:?}",
                            elements[p], elements[q]
                        )));
                    }
                }
            }
        }
        let unmarked: Vec<usize> = (0..n).filter(|&p| marking[p].is_none()).collect();
        let mut coord = vec![None; n];
        for (c, &p) in unmarked.iter().enumerate() {
            coord[p] = Some(c);
        }
        Ok(MarkedPoset {
            labels: elements,
            index,
            marking,
            less,
            lower,
            upper,
            unmarked,
            coord,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PosetJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(raw.elements, raw.covers, raw.marked)
    }

    pub fn to_json_value(&self) -> Value {
        let covers = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let marked = (0..self.labels.len())
            .filter_map(|p| self.marking[p].map(|v| (self.labels[p].clone(), v)))
            .collect();
        serde_json::to_value(PosetJson {
            elements: self.labels.clone(),
            covers,
            marked,
        })
        .expect("poset JSON")
    }

    pub fn elements(&self) -> &[String] {
        &self.labels
    }

    /// Cover pairs `(p', p)` with `p' ⋖ p`.
    pub fn cover_pairs(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for (p, lows) in self.lower.iter().enumerate() {
            for &q in lows {
                out.push((self.labels[q].as_str(), self.labels[p].as_str()));
            }
        }
        out
    }

    pub fn marking(&self, label: &str) -> Option<i64> {
        self.index.get(label).and_then(|&i| self.marking[i])
    }

    pub fn is_less(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.less[i][j],
            _ => false,
        }
    }

    /// Labels of `Π̃ ∖ A` in coordinate order.
    pub fn unmarked(&self) -> Vec<&str> {
        self.unmarked.iter().map(|&p| self.labels[p].as_str()).collect()
    }

    pub fn dim(&self) -> usize {
        self.unmarked.len()
    }

    fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.labels.len()];
        for l in labels {
            let l = l.as_ref();
            let &p = self
                .index
                .get(l)
                .ok_or_else(|| Error::Invalid(format!("unknown element {l:?}")))?;
            if self.marking[p].is_some() {
                return Err(Error::Invalid(format!("{l:?} is marked")));
            }
            mask[p] = true;
        }
        Ok(mask)
    }

    pub fn order_polytope(&self) -> RationalPolytope {
        self.chain_order_mask(&vec![false; self.labels.len()])
    }

    pub fn chain_polytope(&self) -> RationalPolytope {
        let all: Vec<bool> = self.marking.iter().map(Option::is_none).collect();
        self.chain_order_mask(&all)
    }

    /// `O_{Π′}`: chain inequalities through `Π′`, order inequalities elsewhere.
    pub fn chain_order_polytope<S: AsRef<str>>(&self, pi_prime: &[S]) -> Result<RationalPolytope> {
        Ok(self.chain_order_mask(&self.subset(pi_prime)?))
    }

    fn chain_order_mask(&self, pi: &[bool]) -> RationalPolytope {
        let d = self.dim();
        let zero = || vec![Rational::zero(); d];
        let mut rows: BTreeSet<(Vec<Rational>, Rational)> = BTreeSet::new();
        for &p in &self.unmarked {
            if pi[p] {
                let mut a = zero();
                a[self.coord[p].expect("unmarked")] = -Rational::one();
                rows.insert((a, Rational::zero()));
            }
        }
        // Σ x_{p_i} + y_a − y_b ≤ 0 over saturated chains a ⋖ p_1 ⋖ … ⋖ b
        let mut stack: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for a in 0..self.labels.len() {
            if pi[a] {
                continue;
            }
            stack.push((a, a, Vec::new()));
            while let Some((a, cur, path)) = stack.pop() {
                for &c in &self.upper[cur] {
                    if pi[c] {
                        let mut next = path.clone();
                        next.push(c);
                        stack.push((a, c, next));
                        continue;
                    }
                    if path.is_empty() && self.marking[a].is_some() && self.marking[c].is_some() {
                        continue;
                    }
                    let mut coef = zero();
                    let mut rhs = Rational::zero();
                    for &q in &path {
                        coef[self.coord[q].expect("unmarked")] += Rational::one();
                    }
                    match self.marking[a] {
                        Some(v) => rhs += Rational::from_integer(int(v)),
                        None => coef[self.coord[a].expect("unmarked")] += Rational::one(),
                    }
                    match self.marking[c] {
                        Some(v) => rhs -= Rational::from_integer(int(v)),
                        None => coef[self.coord[c].expect("unmarked")] -= Rational::one(),
                    }
                    rows.insert((coef, -rhs));
                }
            }
        }
        let rows: Vec<_> = rows.into_iter().collect();
        if d == 0 {
            return RationalPolytope::point(RatVector(Vec::new()));
        }
        RationalPolytope::from_inequalities(d, &rows)
            .expect("marked poset polytopes are nonempty and bounded")
    }

    /// `φ̃_{Π′}`: on `p ∈ Π′` the minimum of `x_p − y_{p'}` over lower covers
    /// `p'`, the identity elsewhere.
    pub fn transfer<S: AsRef<str>>(&self, pi_prime: &[S], x: &RatVector) -> Result<RatVector> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, poset has {} unmarked elements",
                x.len(),
                self.dim()
            )));
        }
        Ok(self.transfer_mask(&self.subset(pi_prime)?, x))
    }

    /// The full transfer map `φ̃ = φ̃_{Π̃∖A}`.
    pub fn transfer_full(&self, x: &RatVector) -> Result<RatVector> {
        let all: Vec<&str> = self.unmarked();
        self.transfer(&all, x)
    }

    fn transfer_mask(&self, pi: &[bool], x: &RatVector) -> RatVector {
        self.unmarked
            .iter()
            .map(|&p| {
                let xp = &x[self.coord[p].expect("unmarked")];
                if !pi[p] {
                    return xp.clone();
                }
                self.lower[p]
                    .iter()
                    .map(|&q| match self.marking[q] {
                        Some(v) => xp - Rational::from_integer(int(v)),
                        None => xp - &x[self.coord[q].expect("unmarked")],
                    })
                    .min()
                    .expect("unmarked elements have lower covers")
            })
            .collect()
    }

    /// Rank `r(p)`: the common length of chains from a minimal element to
    /// `p`. Only defined for pure posets.
    pub fn ranks(&self) -> Result<BTreeMap<String, usize>> {
        let r = self.rank_vector().ok_or(Error::NotPure)?;
        Ok(self.labels.iter().cloned().zip(r).collect())
    }

    pub fn is_pure(&self) -> bool {
        self.rank_vector().is_some()
    }

    fn rank_vector(&self) -> Option<Vec<usize>> {
        let n = self.labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| (0..n).filter(|&q| self.less[q][p]).count());
        let mut lo = vec![0usize; n];
        let mut hi = vec![0usize; n];
        for &p in &order {
            if let Some(m) = self.lower[p].iter().map(|&q| lo[q]).min() {
                lo[p] = m + 1;
                hi[p] = self.lower[p].iter().map(|&q| hi[q]).max().expect("nonempty") + 1;
            }
        }
        if lo != hi {
            return None;
        }
        let mut top = (0..n).filter(|&p| self.upper[p].is_empty()).map(|p| lo[p]);
        let first = top.next()?;
        top.all(|r| r == first).then_some(lo)
    }

    /// A lattice point `u` of the order polytope that is constant on each
    /// rank and equal to the marking on ranks carrying markers.
    ///
    /// Between consecutive marker ranks `r₀ < r₁` with values `λ₀ ≤ λ₁` the
    /// value at rank `r` is `λ₀ + ⌊(r − r₀)(λ₁ − λ₀)/(r₁ − r₀)⌋`.
    pub fn admissible_u(&self) -> Result<IntVector> {
        let ranks = self.rank_vector().ok_or(Error::NotPure)?;
        let mut by_rank: BTreeMap<usize, i64> = BTreeMap::new();
        for (p, m) in self.marking.iter().enumerate() {
            let Some(v) = *m else { continue };
            if let Some(&w) = by_rank.get(&ranks[p]) {
                if w != v {
                    return Err(Error::AssumptionViolated(format!(
                        "markers of rank {} carry different values {w} and {v}",
                        ranks[p]
                    )));
                }
            }
            by_rank.insert(ranks[p], v);
        }
        let u: IntVector = self
            .unmarked
            .iter()
            .map(|&p| {
                let r = ranks[p];
                let (&r0, &l0) = by_rank.range(..=r).next_back().expect("minimal elements are marked");
                let (&r1, &l1) = by_rank.range(r..).next().expect("maximal elements are marked");
                if r0 == r1 {
                    int(l0)
                } else {
                    let num = (r - r0) as i64 * (l1 - l0);
                    int(l0 + num.div_euclid((r1 - r0) as i64))
                }
            })
            .collect();
        if !self.is_admissible(&u) {
            return Err(Error::AssumptionViolated(format!(
                "rank-constant point {u} is not in the order polytope"
            )));
        }
        Ok(u)
    }

    /// Whether `u` is a lattice point of the order polytope that is constant
    /// on ranks and matches the markers of equal rank.
    pub fn is_admissible(&self, u: &IntVector) -> bool {
        let Some(ranks) = self.rank_vector() else {
            return false;
        };
        if u.len() != self.dim() {
            return false;
        }
        let mut by_rank: BTreeMap<usize, i64> = BTreeMap::new();
        for (p, m) in self.marking.iter().enumerate() {
            if let Some(v) = m {
                by_rank.insert(ranks[p], *v);
            }
        }
        let mut seen: BTreeMap<usize, &num_bigint::BigInt> = BTreeMap::new();
        for (c, &p) in self.unmarked.iter().enumerate() {
            if let Some(v) = by_rank.get(&ranks[p]) {
                if u[c] != int(*v) {
                    return false;
                }
            }
            if let Some(prev) = seen.insert(ranks[p], &u[c]) {
                if prev != &u[c] {
                    return false;
                }
            }
        }
        self.order_polytope().contains(&u.to_rat())
    }

    /// Unmarked elements from top to bottom: rank descending, then label.
    pub fn top_down_order(&self) -> Result<Vec<String>> {
        let ranks = self.rank_vector().ok_or(Error::NotPure)?;
        let mut order: Vec<usize> = self.unmarked.clone();
        order.sort_by(|&a, &b| ranks[b].cmp(&ranks[a]).then(self.labels[a].cmp(&self.labels[b])));
        Ok(order.into_iter().map(|p| self.labels[p].clone()).collect())
    }

    /// `(w_p, F_p)` with `w_p = −e_p` and
    /// `F_p = conv({−e_{p'} : p' ⋖ p unmarked} ∪ {0 : some marked p' ⋖ p})`.
    pub fn step_datum(&self, label: &str) -> Result<MutationDatum> {
        let p = *self
            .index
            .get(label)
            .ok_or_else(|| Error::Invalid(format!("unknown element {label:?}")))?;
        let c = self.coord[p].ok_or_else(|| Error::Invalid(format!("{label:?} is marked")))?;
        let d = self.dim();
        let mut pts = Vec::new();
        for &q in &self.lower[p] {
            match self.coord[q] {
                Some(cq) => pts.push(IntVector::unit(d, cq).neg().to_rat()),
                None => pts.push(RatVector::zeros(d)),
            }
        }
        let factor = RationalPolytope::hull(&pts)?;
        MutationDatum::new(IntVector::unit(d, c).neg(), factor)
    }

    /// Factors the transfer map as a sequence of combinatorial mutations,
    /// applying each step to `O − u` and recording the image next to the
    /// independently built `O_{Π_i} − φ̃_{Π_i}(u)`.
    pub fn transfer_factorization(&self, u: &IntVector) -> Result<TransferFactorization> {
        if !self.is_admissible(u) {
            return Err(Error::AssumptionViolated(format!(
                "{u} is not a rank-constant lattice point of the order polytope"
            )));
        }
        let order = self.top_down_order()?;
        let ur = u.to_rat();
        let start = self.order_polytope().translate(&ur.neg());
        let mut current = start.clone();
        let mut done: Vec<String> = Vec::new();
        let mut steps = Vec::new();
        for q in &order {
            let datum = self.step_datum(q)?;
            let image = datum.phi_polytope(&current)?;
            done.push(q.clone());
            let shift = self.transfer(&done, &ur)?;
            let expected = self.chain_order_polytope(&done)?.translate(&shift.neg());
            steps.push(FactorStep {
                element: q.clone(),
                datum,
                image: image.clone(),
                expected,
                shift,
            });
            current = image;
        }
        let phi_u = self.transfer_full(&ur)?;
        let end = self.chain_polytope().translate(&phi_u.neg());
        Ok(TransferFactorization {
            order,
            u: u.clone(),
            phi_u,
            start,
            steps,
            end,
        })
    }
}

#[derive(Clone, Debug)]
pub struct FactorStep {
    pub element: String,
    pub datum: MutationDatum,
    /// Image of the previous polytope under `φ_{w_p, F_p}`.
    pub image: RationalPolytope,
    /// `O_{Π_i} − φ̃_{Π_i}(u)` built from inequalities.
    pub expected: RationalPolytope,
    pub shift: RatVector,
}

#[derive(Clone, Debug)]
pub struct TransferFactorization {
    pub order: Vec<String>,
    pub u: IntVector,
    pub phi_u: RatVector,
    /// `O − u`.
    pub start: RationalPolytope,
    pub steps: Vec<FactorStep>,
    /// `C − φ̃(u)`.
    pub end: RationalPolytope,
}

impl TransferFactorization {
    pub fn all_steps_match(&self) -> bool {
        self.steps.iter().all(|s| s.image == s.expected)
    }

    pub fn all_steps_lattice(&self) -> bool {
        self.steps.iter().all(|s| s.image.is_lattice())
    }

    pub fn final_image(&self) -> &RationalPolytope {
        self.steps.last().map_or(&self.start, |s| &s.image)
    }

    pub fn reaches_chain_polytope(&self) -> bool {
        self.final_image() == &self.end
    }

    /// First step whose image differs from the expected polytope.
    pub fn first_mismatch(&self) -> Option<&FactorStep> {
        self.steps.iter().find(|s| s.image != s.expected)
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "order": self.order,
            "u": self.u,
            "phi_u": self.phi_u,
            "start": self.start.to_json_value(),
            "steps": self.steps.iter().map(|s| serde_json::json!({
                "element": s.element,
                "datum": s.datum.to_json_value(),
                "image": s.image.to_json_value(),
                "matches": s.image == s.expected,
                "lattice": s.image.is_lattice(),
            })).collect::<Vec<_>>(),
            "end": self.end.to_json_value(),
            "reaches_chain_polytope": self.reaches_chain_polytope(),
        })
    }
}

/// The pure marked poset with unmarked `x, y, z` and markers `l1 ≤ l2, l3 ≤
/// l4`: `l1 ⋖ l2, l3, z`, `l2, z ⋖ x`, `z, l3 ⋖ y`, `x, y ⋖ l4`.
pub fn counterexample_poset(lambda: [i64; 4]) -> Result<MarkedPoset> {
    let s = |x: &str| x.to_string();
    let elements = ["x", "y", "z", "l1", "l2", "l3", "l4"].map(s).to_vec();
    let covers = [
        ("l1", "l2"),
        ("l1", "l3"),
        ("l1", "z"),
        ("l2", "x"),
        ("z", "x"),
        ("z", "y"),
        ("l3", "y"),
        ("x", "l4"),
        ("y", "l4"),
    ]
    .iter()
    .map(|(a, b)| (s(a), s(b)))
    .collect();
    let marked = (1..=4).map(|i| (format!("l{i}"), lambda[i - 1])).collect();
    MarkedPoset::new(elements, covers, marked)
}

/// One affine piece `x ↦ B x + c` of the transfer map, with `B` acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineBranch {
    pub linear: [[i64; 3]; 3],
    pub constant: [i64; 3],
}

impl AffineBranch {
    pub fn apply(&self, x: &RatVector) -> RatVector {
        (0..3)
            .map(|i| {
                let mut v = Rational::from_integer(int(self.constant[i]));
                for j in 0..3 {
                    v += Rational::from_integer(int(self.linear[i][j])) * &x[j];
                }
                v
            })
            .collect()
    }
}

/// The three affine pieces for `z ≥ λ₃`, `λ₂ ≤ z ≤ λ₃` and `z ≤ λ₂`.
pub fn counterexample_branches(lambda: [i64; 4]) -> [AffineBranch; 3] {
    let [l1, l2, l3, _] = lambda;
    [
        AffineBranch {
            linear: [[1, 0, -1], [0, 1, -1], [0, 0, 1]],
            constant: [0, 0, -l1],
        },
        AffineBranch {
            linear: [[1, 0, -1], [0, 1, 0], [0, 0, 1]],
            constant: [0, -l3, -l1],
        },
        AffineBranch {
            linear: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            constant: [-l2, -l3, -l1],
        },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub lambda: [i64; 4],
    pub points_checked: usize,
    /// Points where the branch formula and the transfer map disagree.
    pub branch_mismatches: Vec<RatVector>,
    /// Rank of the system `B_i t − s = −c_i` (all `i`) and of its
    /// augmented matrix.
    pub system_rank: usize,
    pub augmented_rank: usize,
    pub common_fixed_origin: bool,
    pub admissible: bool,
}

impl CounterexampleReport {
    pub fn certified(&self) -> bool {
        self.branch_mismatches.is_empty() && !self.common_fixed_origin
    }
}

/// Checks the branch formulas against the transfer map on `points` and
/// decides whether some translation of both sides makes all three pieces
/// linear. Requires `λ₁ ≤ λ₂ < λ₃ ≤ λ₄` for the branch description.
pub fn counterexample_witness(lambda: [i64; 4], points: &[RatVector]) -> Result<CounterexampleReport> {
    let [l1, l2, l3, l4] = lambda;
    if !(l1 <= l2 && l2 < l3 && l3 <= l4) {
        return Err(Error::Invalid("need λ₁ ≤ λ₂ < λ₃ ≤ λ₄".into()));
    }
    let mp = counterexample_poset(lambda)?;
    let branches = counterexample_branches(lambda);
    let (q2, q3) = (Rational::from_integer(int(l2)), Rational::from_integer(int(l3)));
    let mut mismatches = Vec::new();
    for x in points {
        let z = &x[2];
        let b = if *z >= q3 {
            &branches[0]
        } else if *z >= q2 {
            &branches[1]
        } else {
            &branches[2]
        };
        if b.apply(x) != mp.transfer_full(x)? {
            mismatches.push(x.clone());
        }
    }
    // unknowns (t, s) ∈ ℚ³ × ℚ³: B_i (x + t) + c_i − s fixes 0 for all i
    let q = |v: i64| Rational::from_integer(int(v));
    let mut a = Vec::new();
    let mut aug = Vec::new();
    for b in &branches {
        for i in 0..3 {
            let mut row: Vec<Rational> = (0..3).map(|j| q(b.linear[i][j])).collect();
            row.extend((0..3).map(|j| if i == j { q(-1) } else { q(0) }));
            let mut arow = row.clone();
            arow.push(q(-b.constant[i]));
            a.push(row);
            aug.push(arow);
        }
    }
    let (ra, rb) = (rank(&a), rank(&aug));
    Ok(CounterexampleReport {
        lambda,
        points_checked: points.len(),
        branch_mismatches: mismatches,
        system_rank: ra,
        augmented_rank: rb,
        common_fixed_origin: ra == rb,
        admissible: mp.admissible_u().is_ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn segment_poset(lo: i64, hi: i64) -> MarkedPoset {
        MarkedPoset::new(
            vec![s("p"), s("a"), s("b")],
            vec![(s("a"), s("p")), (s("p"), s("b"))],
            BTreeMap::from([(s("a"), lo), (s("b"), hi)]),
        )
        .unwrap()
    }

    fn interval(lo: i64, hi: i64) -> RationalPolytope {
        RationalPolytope::cuboid(&[(rat(lo, 1), rat(hi, 1))]).unwrap()
    }

    #[test]
    fn single_element() {
        let mp = segment_poset(0, 2);
        assert_eq!(mp.order_polytope(), interval(0, 2));
        assert_eq!(mp.chain_polytope(), interval(0, 2));
        let f = mp.transfer_factorization(&IntVector::from_i64(&[1])).unwrap();
        assert_eq!(f.steps.len(), 1);
        assert!(f.all_steps_match() && f.reaches_chain_polytope());
    }

    #[test]
    fn antichain_gives_unit_square() {
        let mp = MarkedPoset::new(
            vec![s("p"), s("q"), s("lo"), s("hi")],
            vec![(s("lo"), s("p")), (s("lo"), s("q")), (s("p"), s("hi")), (s("q"), s("hi"))],
            BTreeMap::from([(s("lo"), 0), (s("hi"), 1)]),
        )
        .unwrap();
        let sq = RationalPolytope::cuboid(&[(rat(0, 1), rat(1, 1)), (rat(0, 1), rat(1, 1))]).unwrap();
        assert_eq!(mp.chain_polytope(), sq);
        assert_eq!(mp.order_polytope(), sq);
    }

    #[test]
    fn all_marked_is_a_point() {
        let mp = MarkedPoset::new(
            vec![s("a"), s("b")],
            vec![(s("a"), s("b"))],
            BTreeMap::from([(s("a"), 0), (s("b"), 1)]),
        )
        .unwrap();
        assert_eq!(mp.order_polytope().dim(), 0);
        assert_eq!(mp.order_polytope().vertices().len(), 1);
    }

    #[test]
    fn validation() {
        let unmarked_top = MarkedPoset::new(
            vec![s("p"), s("a")],
            vec![(s("a"), s("p"))],
            BTreeMap::from([(s("a"), 0)]),
        );
        assert!(unmarked_top.is_err());
        let cyc = MarkedPoset::new(
            vec![s("a"), s("b")],
            vec![(s("a"), s("b")), (s("b"), s("a"))],
            BTreeMap::from([(s("a"), 0), (s("b"), 0)]),
        );
        assert!(cyc.is_err());
        let decreasing = MarkedPoset::new(
            vec![s("a"), s("b")],
            vec![(s("a"), s("b"))],
            BTreeMap::from([(s("a"), 2), (s("b"), 1)]),
        );
        assert!(decreasing.is_err());
    }

    #[test]
    fn transitive_relations_are_reduced() {
        let mp = MarkedPoset::new(
            vec![s("p"), s("a"), s("b")],
            vec![(s("a"), s("p")), (s("p"), s("b")), (s("a"), s("b"))],
            BTreeMap::from([(s("a"), 0), (s("b"), 3)]),
        )
        .unwrap();
        assert_eq!(mp.cover_pairs().len(), 2);
        assert!(mp.is_less("a", "b"));
    }

    #[test]
    fn chain_ranks() {
        let mp = segment_poset(0, 5);
        let r = mp.ranks().unwrap();
        assert_eq!((r["a"], r["p"], r["b"]), (0, 1, 2));
    }

    #[test]
    fn non_pure_poset() {
        // a ⋖ p ⋖ b and a ⋖ b' : maximal chains of lengths 2 and 1
        let mp = MarkedPoset::new(
            vec![s("p"), s("a"), s("b"), s("c")],
            vec![(s("a"), s("p")), (s("p"), s("b")), (s("a"), s("c"))],
            BTreeMap::from([(s("a"), 0), (s("b"), 3), (s("c"), 1)]),
        )
        .unwrap();
        assert!(!mp.is_pure());
        assert_eq!(mp.ranks(), Err(Error::NotPure));
        assert_eq!(mp.admissible_u(), Err(Error::NotPure));
    }

    #[test]
    fn counterexample_structure() {
        let mp = counterexample_poset([0, 1, 2, 3]).unwrap();
        assert!(mp.is_pure());
        let r = mp.ranks().unwrap();
        assert_eq!((r["l2"], r["l3"], r["z"], r["x"], r["l4"]), (1, 1, 1, 2, 3));
        assert!(matches!(mp.admissible_u(), Err(Error::AssumptionViolated(_))));
        let ok = counterexample_poset([0, 2, 2, 4]).unwrap();
        let u = ok.admissible_u().unwrap();
        let f = ok.transfer_factorization(&u).unwrap();
        assert!(f.all_steps_match() && f.reaches_chain_polytope());
    }

    #[test]
    fn counterexample_certificate() {
        let pts: Vec<RatVector> = (-2..=5)
            .flat_map(|z| (-1..=2).map(move |x| RatVector(vec![rat(x, 1), rat(2 * x - 1, 2), rat(z, 2)])))
            .collect();
        let r = counterexample_witness([0, 1, 2, 3], &pts).unwrap();
        assert!(r.branch_mismatches.is_empty());
        assert!(!r.common_fixed_origin);
        assert_eq!(r.augmented_rank, r.system_rank + 1);
        assert!(r.certified());
        assert!(counterexample_witness([0, 2, 2, 3], &pts).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mp = counterexample_poset([0, 1, 1, 2]).unwrap();
        let text = mp.to_json_value().to_string();
        assert_eq!(MarkedPoset::from_json(&text).unwrap(), mp);
    }

    fn diamond(l: [i64; 4]) -> MarkedPoset {
        counterexample_poset(l).unwrap()
    }

    proptest! {
        #[test]
        fn transfer_is_a_lattice_bijection(a in 0i64..3, b in 0i64..3, c in 0i64..3, d in 0i64..3) {
            let l1 = a;
            let l2 = l1 + b;
            let l3 = l1 + c;
            let l4 = l2.max(l3) + d;
            let mp = diamond([l1, l2, l3, l4]);
            let o = mp.order_polytope();
            let ch = mp.chain_polytope();
            prop_assert!(o.is_lattice() && ch.is_lattice());
            let pts = o.lattice_points();
            let imgs: BTreeSet<IntVector> = pts
                .iter()
                .map(|p| mp.transfer_full(&p.to_rat()).unwrap().to_int().unwrap())
                .collect();
            prop_assert_eq!(imgs.len(), pts.len());
            prop_assert_eq!(pts.len() as u64, ch.lattice_point_count());
            prop_assert!(imgs.iter().all(|q| ch.contains_lattice_point(q)));
        }
    }
}
