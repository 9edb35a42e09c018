//! Seeds (exchange matrices), matrix and tropical mutation, the factorization
//! of a tropical mutation into `f ∘ φ_{w,F}`, and bounded exploration of the
//! exchange graph carrying a polytope payload.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{int, rat_from_int, solve_left, IntMatrix, IntVector, RatVector, Rational};
use crate::mutation::MutationDatum;
use crate::polytope::RationalPolytope;

/// Index set `J`, unfrozen labels `J_uf ⊆ J`, and `ε ∈ Mat_{J_uf × J}(ℤ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seed {
    #[serde(rename = "J")]
    pub labels: Vec<usize>,
    #[serde(rename = "J_uf")]
    pub unfrozen: Vec<usize>,
    pub epsilon: IntMatrix,
}

fn positive_part(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

fn positive_part_q(x: &Rational) -> Rational {
    if x.is_positive() {
        x.clone()
    } else {
        Rational::zero()
    }
}

impl Seed {
    pub fn new(labels: Vec<usize>, unfrozen: Vec<usize>, epsilon: IntMatrix) -> Result<Self> {
        if epsilon.rows() != unfrozen.len() || epsilon.cols() != labels.len() {
            return Err(Error::Dimension(format!(
                "ε is {}x{} but |J_uf| = {}, |J| = {}",
                epsilon.rows(),
                epsilon.cols(),
                unfrozen.len(),
                labels.len()
            )));
        }
        if let Some(k) = unfrozen.iter().find(|k| !labels.contains(k)) {
            return Err(Error::Invalid(format!("unfrozen label {k} is not in J")));
        }
        let s = Seed {
            labels,
            unfrozen,
            epsilon,
        };
        if s.skew_symmetrizer().is_none() {
            return Err(Error::Invalid(
                "unfrozen block of ε is not skew-symmetrizable".into(),
            ));
        }
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Seed = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Seed::new(raw.labels, raw.unfrozen, raw.epsilon)
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("seed JSON")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn frozen(&self) -> Vec<usize> {
        self.labels
            .iter()
            .copied()
            .filter(|l| !self.unfrozen.contains(l))
            .collect()
    }

    fn row(&self, k: usize) -> Result<usize> {
        self.unfrozen
            .iter()
            .position(|&l| l == k)
            .ok_or(Error::Frozen(k))
    }

    fn col(&self, j: usize) -> usize {
        self.labels
            .iter()
            .position(|&l| l == j)
            .expect("label in J")
    }

    /// `ε_{i,j}` by labels.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        let r = self.row(i).expect("unfrozen row label");
        self.epsilon.get(r, self.col(j))
    }

    /// Row `ε_k` as a vector over `J`.
    pub fn exchange_row(&self, k: usize) -> Result<IntVector> {
        Ok(self.epsilon.row_vector(self.row(k)?))
    }

    /// Positive `d` with `d_i ε_{i,j} = −d_j ε_{j,i}` on the unfrozen block.
    pub fn skew_symmetrizer(&self) -> Option<Vec<Rational>> {
        let n = self.unfrozen.len();
        let e = |a: usize, b: usize| self.epsilon.get(a, self.col(self.unfrozen[b])).clone();
        let mut d: Vec<Option<Rational>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Rational::one());
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                let da = d[a].clone().expect("assigned");
                for b in 0..n {
                    let (eab, eba) = (e(a, b), e(b, a));
                    if a == b {
                        if !eab.is_zero() {
                            return None;
                        }
                        continue;
                    }
                    if eab.is_zero() != eba.is_zero() {
                        return None;
                    }
                    if eab.is_zero() {
                        continue;
                    }
                    if eab.signum() == eba.signum() {
                        return None;
                    }
                    // d_b = −d_a ε_ab / ε_ba
                    let db = -&da * rat_from_int(&eab) / rat_from_int(&eba);
                    match &d[b] {
                        Some(x) if *x != db => return None,
                        Some(_) => {}
                        None => {
                            d[b] = Some(db);
                            stack.push(b);
                        }
                    }
                }
            }
        }
        Some(d.into_iter().map(|x| x.expect("assigned")).collect())
    }

    /// Matrix mutation `μ_k`.
    pub fn mutate_matrix(&self, k: usize) -> Result<Seed> {
        let rk = self.row(k)?;
        let ck = self.col(k);
        let mut eps = self.epsilon.clone();
        for r in 0..eps.rows() {
            for c in 0..eps.cols() {
                let v = if r == rk || c == ck {
                    -self.epsilon.get(r, c)
                } else {
                    let eik = self.epsilon.get(r, ck);
                    let ekj = self.epsilon.get(rk, c);
                    self.epsilon.get(r, c) + eik.signum() * positive_part(&(eik * ekj))
                };
                eps.set(r, c, v);
            }
        }
        Ok(Seed {
            labels: self.labels.clone(),
            unfrozen: self.unfrozen.clone(),
            epsilon: eps,
        })
    }

    /// `a ⪯ b` in the dominance order: `a = b + u·ε` for some `u ≥ 0`.
    ///
    /// With `ε` of full row rank the candidate `u` is unique and is solved for
    /// exactly; otherwise the nonnegative integer box of side
    /// `1 + Σ|a_j − b_j|` is searched.
    pub fn dominance_leq(&self, a: &IntVector, b: &IntVector) -> Result<bool> {
        if a.len() != self.len() || b.len() != self.len() {
            return Err(Error::Dimension("vectors must be indexed by J".into()));
        }
        let diff = a.sub(b);
        let rows = self.epsilon.to_rational();
        if crate::exact::rank(&rows) == self.unfrozen.len() {
            let Some(u) = solve_left(&rows, &diff.to_rat().0) else {
                return Ok(false);
            };
            return Ok(u.iter().all(|x| x.is_integer() && !x.is_negative()));
        }
        let bound: i64 = diff
            .iter()
            .map(|x| x.abs().to_i64().unwrap_or(i64::MAX / 4))
            .sum::<i64>()
            + 1;
        let n = self.unfrozen.len();
        let mut u = vec![0i64; n];
        loop {
            let uv = IntVector::from_i64(&u);
            if self.epsilon.left_mul(&uv) == diff {
                return Ok(true);
            }
            let mut i = 0;
            while i < n && u[i] == bound {
                u[i] = 0;
                i += 1;
            }
            if i == n {
                return Ok(false);
            }
            u[i] += 1;
        }
    }

    /// Tropicalized cluster mutation `μ_k^T`.
    pub fn tropical_mutate_point(&self, k: usize, g: &RatVector) -> Result<RatVector> {
        let rk = self.row(k)?;
        let ck = self.col(k);
        if g.len() != self.len() {
            return Err(Error::Dimension("point must be indexed by J".into()));
        }
        let gk = &g[ck];
        Ok((0..self.len())
            .map(|j| {
                if j == ck {
                    return -gk.clone();
                }
                let e = rat_from_int(self.epsilon.get(rk, j));
                &g[j] + positive_part_q(&-e.clone()) * gk + e * positive_part_q(gk)
            })
            .collect())
    }

    /// The triple `(w, F, f)` with `μ_k^T = f ∘ φ_{w,F}`:
    /// `w = ε_k / c`, `F = conv(0, −c·e_k)` and `f` the identity with row `k`
    /// replaced by `e_k − u_k`, where `u_{k,j} = min(ε_{k,j}, 0)` and
    /// `u_{k,k} = 2`. Here `c` is the gcd of the entries of `ε_k`.
    pub fn decompose_tropical(&self, k: usize) -> Result<MutationDatum> {
        let row = self.exchange_row(k)?;
        let ck = self.col(k);
        let (w, c) = crate::exact::primitive_part(&row).map_err(|_| {
            Error::Invalid(format!("exchange row {k} is zero"))
        })?;
        let n = self.len();
        let mut v = IntVector::zeros(n);
        v[ck] = -c;
        let mut f = IntMatrix::identity(n);
        for j in 0..n {
            let u = if j == ck {
                int(2)
            } else {
                row[j].clone().min(BigInt::zero())
            };
            let e = if j == ck { BigInt::one() } else { BigInt::zero() };
            f.set(ck, j, e - u);
        }
        MutationDatum::segment(w, v)?.with_companion(f)
    }
}

/// A seed with a polytope payload and the mutation path that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedGraphNode {
    pub seed: Seed,
    pub payload: RationalPolytope,
    pub path: Vec<usize>,
    /// The `(w, F, f)` data applied along `path`.
    pub trace: Vec<MutationDatum>,
}

impl SeedGraphNode {
    pub fn root(seed: Seed, payload: RationalPolytope) -> Result<Self> {
        if payload.dim() != seed.len() {
            return Err(Error::Dimension("payload dimension must equal |J|".into()));
        }
        Ok(SeedGraphNode {
            seed,
            payload,
            path: Vec::new(),
            trace: Vec::new(),
        })
    }

    /// Mutates the seed at `k` and maps the payload through `f ∘ φ_{w,F}`.
    pub fn tropical_mutate(&self, k: usize) -> Result<SeedGraphNode> {
        let datum = self.seed.decompose_tropical(k)?;
        let payload = datum.apply_polytope(&self.payload)?;
        let mut path = self.path.clone();
        path.push(k);
        let mut trace = self.trace.clone();
        trace.push(datum);
        Ok(SeedGraphNode {
            seed: self.seed.mutate_matrix(k)?,
            payload,
            path,
            trace,
        })
    }
}

pub fn tropical_mutate_polytope(node: &SeedGraphNode, k: usize) -> Result<SeedGraphNode> {
    node.tropical_mutate(k)
}

#[derive(Clone, Debug)]
pub struct ExploreOptions {
    pub depth: usize,
    /// Largest dilation for the dual lattice-point counts.
    pub k_max: u32,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { depth: 3, k_max: 2 }
    }
}

#[derive(Clone, Debug)]
pub struct ExploredNode {
    pub node: SeedGraphNode,
    /// Number of non-backtracking paths of the tree reaching this node.
    pub multiplicity: u64,
    pub interior_points: Vec<IntVector>,
    /// Dual at the unique interior lattice point, when there is one.
    pub dual: Option<RationalPolytope>,
    pub dual_is_lattice: Option<bool>,
    pub dual_ehrhart: Option<Vec<u64>>,
    /// Lattice-point counts of `k·payload` for `k = 1..k_max`.
    pub payload_ehrhart: Vec<u64>,
}

impl ExploredNode {
    pub fn to_json_value(&self) -> Value {
        json!({
            "path": self.node.path,
            "multiplicity": self.multiplicity,
            "seed": self.node.seed.to_json_value(),
            "payload": self.node.payload.to_json_value(),
            "interior_points": self.interior_points,
            "dual": self.dual.as_ref().map(RationalPolytope::to_json_value),
            "dual_is_lattice": self.dual_is_lattice,
            "dual_ehrhart": self.dual_ehrhart,
            "payload_ehrhart": self.payload_ehrhart,
            "trace": self.node.trace.iter().map(MutationDatum::to_json_value).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ExploreReport {
    pub nodes: Vec<ExploredNode>,
    /// Total number of tree vertices visited, counting merged duplicates.
    pub visited: u64,
}

impl ExploreReport {
    pub fn all_unique_interior(&self, expected: Option<&IntVector>) -> bool {
        self.nodes.iter().all(|n| {
            n.interior_points.len() == 1 && expected.is_none_or(|e| &n.interior_points[0] == e)
        })
    }

    pub fn all_duals_lattice(&self) -> bool {
        self.nodes.iter().all(|n| n.dual_is_lattice == Some(true))
    }

    /// The common dual lattice-point count vector, if all nodes agree.
    pub fn constant_dual_ehrhart(&self) -> Option<Vec<u64>> {
        let first = self.nodes.first()?.dual_ehrhart.clone()?;
        self.nodes
            .iter()
            .all(|n| n.dual_ehrhart.as_ref() == Some(&first))
            .then_some(first)
    }

    /// The common payload lattice-point count vector, if all nodes agree.
    pub fn constant_payload_ehrhart(&self) -> Option<Vec<u64>> {
        let first = self.nodes.first()?.payload_ehrhart.clone();
        self.nodes
            .iter()
            .all(|n| n.payload_ehrhart == first)
            .then_some(first)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "visited": self.visited,
            "unique_nodes": self.nodes.len(),
            "nodes": self.nodes.iter().map(ExploredNode::to_json_value).collect::<Vec<_>>(),
        })
    }
}

struct Frontier {
    node: SeedGraphNode,
    /// Multiplicity of paths into this node keyed by their last direction.
    last: BTreeMap<Option<usize>, u64>,
}

type NodeKey = (Seed, Vec<RatVector>);

/// Breadth-first exploration of the exchange tree up to `depth`, never
/// mutating twice in a row at the same direction. Directions are tried in
/// ascending order; equal (seed, payload) pairs are merged and counted.
pub fn explore(root: &SeedGraphNode, opts: &ExploreOptions) -> Result<ExploreReport> {
    let mut seen: BTreeMap<NodeKey, (SeedGraphNode, u64)> = BTreeMap::new();
    let key = |n: &SeedGraphNode| (n.seed.clone(), n.payload.vertices().to_vec());
    seen.insert(key(root), (root.clone(), 1));
    let mut visited = 1u64;
    let mut frontier = vec![Frontier {
        node: root.clone(),
        last: BTreeMap::from([(None, 1)]),
    }];
    for _ in 0..opts.depth {
        let jobs: Vec<(usize, usize, u64)> = frontier
            .iter()
            .enumerate()
            .flat_map(|(i, f)| {
                f.node.seed.unfrozen.iter().filter_map(move |&k| {
                    let mult: u64 = f
                        .last
                        .iter()
                        .filter(|(l, _)| **l != Some(k))
                        .map(|(_, m)| *m)
                        .sum();
                    (mult > 0).then_some((i, k, mult))
                })
            })
            .collect();
        let children: Vec<(SeedGraphNode, usize, u64)> = jobs
            .par_iter()
            .map(|&(i, k, m)| frontier[i].node.tropical_mutate(k).map(|c| (c, k, m)))
            .collect::<Result<Vec<_>>>()?;
        let mut next: BTreeMap<NodeKey, Frontier> = BTreeMap::new();
        for (child, k, m) in children {
            visited += m;
            let kk = key(&child);
            seen.entry(kk.clone())
                .and_modify(|e| e.1 += m)
                .or_insert_with(|| (child.clone(), m));
            let f = next.entry(kk).or_insert_with(|| Frontier {
                node: child,
                last: BTreeMap::new(),
            });
            *f.last.entry(Some(k)).or_default() += m;
        }
        let mut nf: Vec<Frontier> = next.into_values().collect();
        nf.sort_by(|a, b| a.node.path.cmp(&b.node.path));
        frontier = nf;
    }

    let mut entries: Vec<(SeedGraphNode, u64)> = seen.into_values().collect();
    entries.sort_by(|a, b| (a.0.path.len(), &a.0.path).cmp(&(b.0.path.len(), &b.0.path)));
    let nodes = entries
        .into_par_iter()
        .map(|(node, multiplicity)| {
            let interior_points = node.payload.interior_lattice_points();
            let dual = match interior_points.as_slice() {
                [a] if node.payload.is_full_dimensional() => Some(node.payload.dual_at(a)?),
                _ => None,
            };
            let dual_is_lattice = dual.as_ref().map(RationalPolytope::is_lattice);
            let dual_ehrhart = dual.as_ref().map(|d| d.ehrhart_counts(opts.k_max));
            let payload_ehrhart = node.payload.ehrhart_counts(opts.k_max);
            Ok(ExploredNode {
                node,
                multiplicity,
                interior_points,
                dual,
                dual_is_lattice,
                dual_ehrhart,
                payload_ehrhart,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExploreReport { nodes, visited })
}
