//! Cartan data, the Weyl group action on weights, distinguished reduced words
//! for the longest element, exchange matrices and change-of-basis matrices
//! built from words, and generators for Gelfand-Tsetlin, FFLV and related
//! polytopes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cluster::Seed;
use crate::error::{Error, Result};
use crate::exact::{int, IntMatrix, IntVector, Rational};
use crate::polytope::RationalPolytope;
use crate::poset::MarkedPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    C,
    D,
    E,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::C => "C",
            LieType::D => "D",
            LieType::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            other => Err(Error::Parse(format!("unknown Lie type {other:?}"))),
        }
    }
}

/// A Cartan matrix `c_{i,j} = ⟨α_j, h_i⟩`, indices 1-based in the API.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDatum {
    pub kind: LieType,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
}

/// Parses `"A3"`, `"c2"`, `"E8"`.
pub fn parse_type(s: &str) -> Result<(LieType, usize)> {
    let s = s.trim();
    let kind: LieType = s
        .get(..1)
        .ok_or_else(|| Error::Parse("empty Lie type".into()))?
        .parse()?;
    let n = s[1..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
    Ok((kind, n))
}

pub fn cartan(kind: LieType, n: usize) -> Result<CartanDatum> {
    let bad = || Error::Invalid(format!("no Cartan datum of type {kind}{n}"));
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match kind {
        LieType::A | LieType::C if n >= 1 => edges.extend((1..n).map(|i| (i, i + 1))),
        // 1 and 2 both attach to 3, then a path 3 - 4 - ... - n
        LieType::D if n >= 3 => {
            edges.extend([(1, 3), (2, 3)]);
            edges.extend((3..n).map(|i| (i, i + 1)));
        }
        // path 5 - 4 - 3 - 2 - 6 - 7 - 8 with 1 attached to 3
        LieType::E if (6..=8).contains(&n) => {
            edges.extend([(5, 4), (4, 3), (3, 2), (2, 6), (1, 3)]);
            if n >= 7 {
                edges.push((6, 7));
            }
            if n == 8 {
                edges.push((7, 8));
            }
        }
        _ => return Err(bad()),
    }
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        m[a - 1][b - 1] = -1;
        m[b - 1][a - 1] = -1;
    }
    if kind == LieType::C && n >= 2 {
        // 1 is the long simple root: ⟨α₂, h₁⟩ = −1, ⟨α₁, h₂⟩ = −2
        m[1][0] = -2;
    }
    Ok(CartanDatum { kind, rank: n, matrix: m })
}

impl CartanDatum {
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.kind, LieType::A | LieType::D | LieType::E) || self.rank == 1
    }

    /// Number of positive roots, which is `ℓ(w₀)`.
    pub fn longest_length(&self) -> usize {
        let n = self.rank;
        match self.kind {
            LieType::A => n * (n + 1) / 2,
            LieType::C => n * n,
            LieType::D => n * (n - 1),
            LieType::E => [36, 63, 120][n - 6],
        }
    }

    /// `s_i λ = λ − ⟨λ, h_i⟩ α_i` in fundamental-weight coordinates.
    pub fn simple_reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let mut out = lambda.0.clone();
        self.reflect_in_place(i, &mut out);
        Weight(out)
    }

    fn reflect_in_place(&self, i: usize, w: &mut [i64]) {
        let li = w[i - 1];
        if li == 0 {
            return;
        }
        for (j, x) in w.iter_mut().enumerate() {
            *x -= li * self.matrix[j][i - 1];
        }
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut w = vec![0; self.rank];
        w[i - 1] = 1;
        Weight(w)
    }

    pub fn two_rho(&self) -> Weight {
        Weight(vec![2; self.rank])
    }
}

/// Integral weight in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `⟨λ, h_i⟩` for 1-based `i`.
    pub fn coord(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    fn require_dominant(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::Dimension(format!(
                "weight has {} coordinates, expected {n}",
                self.0.len()
            )));
        }
        if !self.is_dominant() {
            return Err(Error::Invalid(format!("weight {self} is not dominant")));
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated coordinates, e.g. `"2,2,2"`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A word `(i_1, …, i_m)` in the simple reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `k⁺`: the next position carrying the same letter, or `m + 1`.
    /// Positions are 1-based.
    pub fn plus(&self, k: usize) -> usize {
        let m = self.0.len();
        let letter = self.0[k - 1];
        (k + 1..=m)
            .find(|&j| self.0[j - 1] == letter)
            .unwrap_or(m + 1)
    }

    pub fn frozen(&self) -> Vec<usize> {
        let m = self.0.len();
        (1..=m).filter(|&k| self.plus(k) == m + 1).collect()
    }

    pub fn unfrozen(&self) -> Vec<usize> {
        let m = self.0.len();
        (1..=m).filter(|&k| self.plus(k) != m + 1).collect()
    }

    pub fn validate(&self, c: &CartanDatum) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i > c.rank) {
            Some(i) => Err(Error::Invalid(format!("letter {i} is not a node of the diagram"))),
            None => Ok(()),
        }
    }

    /// Reducedness via the action on `ρ`: reading right to left, each letter
    /// must pair positively with the current weight.
    pub fn is_reduced(&self, c: &CartanDatum) -> bool {
        let mut mu = vec![1i64; c.rank];
        for &i in self.0.iter().rev() {
            if mu[i - 1] <= 0 {
                return false;
            }
            c.reflect_in_place(i, &mut mu);
        }
        true
    }

    /// Checks that the word is a reduced word of the longest element.
    pub fn check_longest(&self, c: &CartanDatum) -> Result<()> {
        self.validate(c)?;
        if self.len() != c.longest_length() {
            return Err(Error::Invalid(format!(
                "word has length {}, but ℓ(w₀) = {}",
                self.len(),
                c.longest_length()
            )));
        }
        if !self.is_reduced(c) {
            return Err(Error::Invalid("word is not reduced".into()));
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ReducedWord)
    }
}

fn word_a(n: usize) -> Vec<usize> {
    (1..=n).flat_map(|k| (1..=k).rev()).collect()
}

fn word_c(n: usize) -> Vec<usize> {
    (1..=n)
        .flat_map(|k| (1..=k).rev().chain(2..=k))
        .collect()
}

fn word_d(n: usize) -> Vec<usize> {
    let mut w = vec![1, 2];
    for k in 3..=n {
        w.extend((3..=k).rev());
        w.extend([1, 2]);
        w.extend(3..=k);
    }
    w
}

const E6_TAIL: [usize; 16] = [6, 2, 3, 1, 4, 5, 3, 4, 2, 3, 1, 6, 2, 3, 4, 5];
const E7_TAIL: [usize; 27] = [
    7, 6, 2, 3, 1, 4, 5, 3, 4, 2, 3, 1, 6, 2, 3, 4, 5, 7, 6, 2, 3, 1, 4, 3, 2, 6, 7,
];
const E8_TAIL: [usize; 57] = [
    8, 7, 6, 2, 3, 1, 4, 5, 3, 4, 2, 3, 1, 6, 2, 3, 4, 5, 7, 6, 2, 3, 1, 4, 3, 2, 6, 7, 8, 7, 6,
    2, 3, 1, 4, 5, 3, 4, 2, 3, 1, 6, 2, 3, 4, 5, 7, 6, 2, 3, 1, 4, 3, 2, 6, 7, 8,
];

/// The distinguished reduced word of `w₀` for each type.
pub fn standard_word(kind: LieType, n: usize) -> Result<ReducedWord> {
    cartan(kind, n)?;
    let w = match kind {
        LieType::A => word_a(n),
        LieType::C => word_c(n),
        LieType::D => word_d(n),
        LieType::E => {
            let mut w = word_d(5);
            w.extend(E6_TAIL);
            if n >= 7 {
                w.extend(E7_TAIL);
            }
            if n == 8 {
                w.extend(E8_TAIL);
            }
            w
        }
    };
    Ok(ReducedWord(w))
}

/// The exchange matrix `ε^i` with `J = {1..m}` and `J_uf` the non-frozen
/// positions.
pub fn exchange_from_word(c: &CartanDatum, word: &ReducedWord) -> Result<Seed> {
    word.validate(c)?;
    let m = word.len();
    let unfrozen = word.unfrozen();
    let mut eps = IntMatrix::zeros(unfrozen.len(), m);
    for (r, &s) in unfrozen.iter().enumerate() {
        let sp = word.plus(s);
        for t in 1..=m {
            let tp = word.plus(t);
            let cts = c.entry(word.0[t - 1], word.0[s - 1]);
            let v = if sp == t {
                1
            } else if s == tp {
                -1
            } else if s < t && t < sp && sp < tp {
                cts
            } else if t < s && s < tp && tp < sp {
                -cts
            } else {
                0
            };
            eps.set(r, t - 1, int(v));
        }
    }
    Seed::new((1..=m).collect(), unfrozen, eps)
}

/// `M_i = (d_{s,t})` with `d_{s,t} = ⟨s_{i_{t+1}} ⋯ s_{i_s} ϖ_{i_s}, h_{i_t}⟩`
/// for `t ≤ s` and `0` above the diagonal.
pub fn m_matrix(c: &CartanDatum, word: &ReducedWord) -> Result<IntMatrix> {
    word.validate(c)?;
    let m = word.len();
    let mut out = IntMatrix::zeros(m, m);
    for s in 1..=m {
        let mut mu = c.fundamental(word.0[s - 1]).0;
        out.set(s - 1, s - 1, int(mu[word.0[s - 1] - 1]));
        for t in (1..s).rev() {
            c.reflect_in_place(word.0[t], &mut mu);
            out.set(s - 1, t - 1, int(mu[word.0[t - 1] - 1]));
        }
    }
    Ok(out)
}

/// The interior lattice point of the string polytope at `2ρ`:
/// `a_j = Σ_{k ∈ J_fr, j ≤ k} d_{k,j}`.
pub fn string_interior_point(c: &CartanDatum, word: &ReducedWord) -> Result<IntVector> {
    let d = m_matrix(c, word)?;
    let m = word.len();
    let mut a = IntVector::zeros(m);
    for k in word.frozen() {
        for j in 0..k {
            a[j] += d.get(k - 1, j);
        }
    }
    Ok(a)
}

struct Ineqs {
    dim: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
}

impl Ineqs {
    fn new(dim: usize) -> Self {
        Ineqs { dim, rows: Vec::new() }
    }

    /// `Σ coef·x ≤ rhs`.
    fn le(&mut self, terms: &[(usize, i64)], rhs: i64) {
        let mut a = vec![Rational::from_integer(BigInt::from(0)); self.dim];
        for &(i, c) in terms {
            a[i] += Rational::from_integer(BigInt::from(c));
        }
        self.rows.push((a, Rational::from_integer(BigInt::from(rhs))));
    }

    fn build(self) -> Result<RationalPolytope> {
        RationalPolytope::from_inequalities(self.dim, &self.rows)
    }
}

/// An entry of an interlacing array: a coordinate, a top-row constant
/// (1-based position) or the trailing zero of a type C row.
#[derive(Clone, Copy)]
enum Cell {
    Var(usize),
    Top(usize),
    Zero(usize),
}

impl Cell {
    fn constant(self, top: &[i64]) -> Option<i64> {
        match self {
            Cell::Var(_) => None,
            Cell::Top(k) => Some(top[k - 1]),
            Cell::Zero(_) => Some(0),
        }
    }
}

/// `hi ≥ x ≥ lo` for every listed triple.
fn interlacing_polytope(
    dim: usize,
    top: &[i64],
    triples: &[(Cell, usize, Cell)],
) -> Result<RationalPolytope> {
    let mut q = Ineqs::new(dim);
    for &(hi, x, lo) in triples {
        match (hi, hi.constant(top)) {
            (Cell::Var(h), _) => q.le(&[(x, 1), (h, -1)], 0),
            (_, Some(c)) => q.le(&[(x, 1)], c),
            _ => unreachable!(),
        }
        match (lo, lo.constant(top)) {
            (Cell::Var(l), _) => q.le(&[(l, 1), (x, -1)], 0),
            (_, Some(c)) => q.le(&[(x, -1)], -c),
            _ => unreachable!(),
        }
    }
    q.build()
}

/// Coordinate of `a_j^{(i)}` in the type A ordering
/// `(a₁^{(1)}, a₁^{(2)}, a₂^{(1)}, a₁^{(3)}, …)`.
pub fn gt_a_index(i: usize, j: usize) -> usize {
    let r = i + j - 1;
    r * (r - 1) / 2 + (j - 1)
}

/// Coordinate of `a_j^{(i)}` in the type C ordering.
pub fn gt_c_a_index(i: usize, j: usize) -> usize {
    let r = i + j - 1;
    (r - 1) * (r - 1) + (r - 1) + (r - j)
}

/// Coordinate of `b_j^{(i)}` in the type C ordering.
pub fn gt_c_b_index(i: usize, j: usize) -> usize {
    let r = i + j - 1;
    (r - 1) * (r - 1) + (j - 1)
}

/// `λ_{≥k}` for `k = 1..n` followed by `0`.
fn top_row_a(lambda: &Weight) -> Vec<i64> {
    let n = lambda.rank();
    let mut row: Vec<i64> = (1..=n).map(|k| (k..=n).map(|l| lambda.coord(l)).sum()).collect();
    row.push(0);
    row
}

/// `λ_{≤n}, …, λ_{≤1}` followed by `0`.
fn top_row_c(lambda: &Weight) -> Vec<i64> {
    let n = lambda.rank();
    let mut row: Vec<i64> = (1..=n)
        .map(|k| (1..=n + 1 - k).map(|l| lambda.coord(l)).sum())
        .collect();
    row.push(0);
    row
}

fn gt_a_triples(n: usize) -> Vec<(Cell, usize, Cell)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n + 1 - i {
            let (hi, lo) = if i == 1 {
                (Cell::Top(j), Cell::Top(j + 1))
            } else {
                (Cell::Var(gt_a_index(i - 1, j)), Cell::Var(gt_a_index(i - 1, j + 1)))
            };
            out.push((hi, gt_a_index(i, j), lo));
        }
    }
    out
}

fn gt_c_triples(n: usize) -> Vec<(Cell, usize, Cell)> {
    let mut out = Vec::new();
    for j in 1..=n {
        out.push((Cell::Top(j), gt_c_a_index(1, j), Cell::Top(j + 1)));
    }
    for i in 2..=n {
        let len = n + 1 - i;
        for j in 1..=len {
            out.push((
                Cell::Var(gt_c_a_index(i - 1, j)),
                gt_c_b_index(i, j),
                Cell::Var(gt_c_a_index(i - 1, j + 1)),
            ));
        }
        for j in 1..=len {
            let lo = if j == len {
                Cell::Zero(i)
            } else {
                Cell::Var(gt_c_b_index(i, j + 1))
            };
            out.push((Cell::Var(gt_c_b_index(i, j)), gt_c_a_index(i, j), lo));
        }
    }
    out
}

/// Gelfand-Tsetlin polytope of `sl_{n+1}`.
pub fn gt_polytope_a(n: usize, lambda: &Weight) -> Result<RationalPolytope> {
    lambda.require_dominant(n)?;
    interlacing_polytope(n * (n + 1) / 2, &top_row_a(lambda), &gt_a_triples(n))
}

/// Gelfand-Tsetlin polytope of `sp_{2n}`.
pub fn gt_polytope_c(n: usize, lambda: &Weight) -> Result<RationalPolytope> {
    lambda.require_dominant(n)?;
    interlacing_polytope(n * n, &top_row_c(lambda), &gt_c_triples(n))
}

/// The marked poset whose order polytope is the Gelfand-Tsetlin polytope.
/// Unmarked elements come first, in coordinate order; an array entry `x`
/// between `hi` and `lo` gives the covers `x ⋖ hi` and `lo ⋖ x`.
pub fn gt_marked_poset(kind: LieType, n: usize, lambda: &Weight) -> Result<MarkedPoset> {
    lambda.require_dominant(n)?;
    let (mut elements, top, triples) = match kind {
        LieType::A => {
            let mut names = vec![String::new(); n * (n + 1) / 2];
            for i in 1..=n {
                for j in 1..=n + 1 - i {
                    names[gt_a_index(i, j)] = format!("a{i}.{j}");
                }
            }
            (names, top_row_a(lambda), gt_a_triples(n))
        }
        LieType::C => {
            let mut names = vec![String::new(); n * n];
            for i in 1..=n {
                for j in 1..=n + 1 - i {
                    names[gt_c_a_index(i, j)] = format!("a{i}.{j}");
                    if i >= 2 {
                        names[gt_c_b_index(i, j)] = format!("b{i}.{j}");
                    }
                }
            }
            (names, top_row_c(lambda), gt_c_triples(n))
        }
        _ => return Err(Error::Invalid(format!("no Gelfand-Tsetlin poset for type {kind}"))),
    };
    let coords = elements.clone();
    let mut marked = BTreeMap::new();
    for (k, v) in top.iter().enumerate() {
        marked.insert(format!("t{}", k + 1), *v);
    }
    let name = |c: Cell| match c {
        Cell::Var(v) => coords[v].clone(),
        Cell::Top(k) => format!("t{k}"),
        Cell::Zero(i) => format!("z{i}"),
    };
    let mut covers = Vec::new();
    for &(hi, x, lo) in &triples {
        if let Cell::Zero(i) = lo {
            marked.insert(format!("z{i}"), 0);
        }
        covers.push((coords[x].clone(), name(hi)));
        covers.push((name(lo), coords[x].clone()));
    }
    elements.extend(marked.keys().cloned());
    MarkedPoset::new(elements, covers, marked)
}

pub fn fflv_a(n: usize, lambda: &Weight) -> Result<RationalPolytope> {
    Ok(gt_marked_poset(LieType::A, n, lambda)?.chain_polytope())
}

pub fn fflv_c(n: usize, lambda: &Weight) -> Result<RationalPolytope> {
    Ok(gt_marked_poset(LieType::C, n, lambda)?.chain_polytope())
}

/// Newton-Okounkov body of the flag variety of `SL₄` for the seed of the
/// word `(1,2,1,3,2,1)`, in coordinates `g₁, …, g₆`.
pub fn sl4_no_body(lambda: &Weight) -> Result<RationalPolytope> {
    lambda.require_dominant(3)?;
    let (l1, l2, l3) = (lambda.coord(1), lambda.coord(2), lambda.coord(3));
    let g = |k: usize| k - 1;
    let mut q = Ineqs::new(6);
    q.le(&[(g(6), -1)], 0);
    q.le(&[(g(6), 1)], l1);
    q.le(&[(g(5), -1)], 0);
    q.le(&[(g(5), 1)], l2);
    q.le(&[(g(4), -1)], 0);
    q.le(&[(g(4), 1)], l3);
    q.le(&[(g(5), -1), (g(3), -1)], 0);
    q.le(&[(g(3), 1), (g(6), 1)], l1);
    q.le(&[(g(4), -1), (g(2), -1)], 0);
    q.le(&[(g(2), 1), (g(5), 1)], l2);
    q.le(&[(g(2), -1), (g(4), -1), (g(1), -1)], 0);
    q.le(&[(g(1), 1), (g(3), 1), (g(6), 1)], l1);
    q.build()
}

/// Nakashima-Zelevinsky polytope of `Sp₄` for the word `(1,2,1,2)`.
pub fn nz_sp4(lambda: &Weight) -> Result<RationalPolytope> {
    lambda.require_dominant(2)?;
    let (l1, l2) = (lambda.coord(1), lambda.coord(2));
    let mut q = Ineqs::new(4);
    for i in 0..4 {
        q.le(&[(i, -1)], 0);
    }
    q.le(&[(3, 1)], l2);
    q.le(&[(2, 1), (3, -1)], l1);
    q.le(&[(1, 1), (2, -1)], l1);
    q.le(&[(1, 1), (2, -2)], 0);
    q.le(&[(0, 2)], 2 * l1);
    q.le(&[(0, 2), (1, -1)], 0);
    q.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(cartan(LieType::A, 1).unwrap().matrix, vec![vec![2]]);
        assert_eq!(
            cartan(LieType::A, 3).unwrap().matrix,
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
        let c2 = cartan(LieType::C, 2).unwrap();
        assert_eq!((c2.entry(1, 2), c2.entry(2, 1)), (-1, -2));
        assert!(cartan(LieType::E, 5).is_err());
        assert!(cartan(LieType::A, 0).is_err());
        let e8 = cartan(LieType::E, 8).unwrap();
        let degrees: Vec<i64> = e8.matrix.iter().map(|r| -r.iter().filter(|&&x| x < 0).sum::<i64>()).collect();
        assert_eq!(degrees, vec![1, 2, 3, 2, 1, 2, 2, 1]);
    }

    #[test]
    fn reflections() {
        let a1 = cartan(LieType::A, 1).unwrap();
        assert_eq!(a1.simple_reflect(1, &Weight(vec![1])), Weight(vec![-1]));
        let a2 = cartan(LieType::A, 2).unwrap();
        assert_eq!(a2.simple_reflect(1, &Weight(vec![0, 1])), Weight(vec![0, 1]));
        let w = a2.simple_reflect(2, &a2.simple_reflect(1, &Weight(vec![1, 0])));
        assert_eq!(w, Weight(vec![0, -1]));
    }

    #[test]
    fn standard_words() {
        assert_eq!(standard_word(LieType::A, 3).unwrap().0, vec![1, 2, 1, 3, 2, 1]);
        assert_eq!(standard_word(LieType::C, 2).unwrap().0, vec![1, 2, 1, 2]);
        assert_eq!(
            standard_word(LieType::C, 3).unwrap().0,
            vec![1, 2, 1, 2, 3, 2, 1, 2, 3]
        );
        assert_eq!(standard_word(LieType::D, 4).unwrap().len(), 12);
        for (kind, range) in [
            (LieType::A, 1..=8),
            (LieType::C, 1..=5),
            (LieType::D, 3..=7),
            (LieType::E, 6..=8),
        ] {
            for n in range {
                let c = cartan(kind, n).unwrap();
                standard_word(kind, n).unwrap().check_longest(&c).unwrap();
            }
        }
        let c = cartan(LieType::A, 2).unwrap();
        assert!(!ReducedWord(vec![1, 1]).is_reduced(&c));
    }

    #[test]
    fn sl4_exchange_matrix() {
        let c = cartan(LieType::A, 3).unwrap();
        let s = exchange_from_word(&c, &standard_word(LieType::A, 3).unwrap()).unwrap();
        assert_eq!(s.unfrozen, vec![1, 2, 3]);
        assert_eq!(
            s.epsilon,
            IntMatrix::from_i64_rows(&[
                &[0, -1, 1, 0, 0, 0],
                &[1, 0, -1, -1, 1, 0],
                &[-1, 1, 0, 0, -1, 1],
            ])
        );
    }

    #[test]
    fn small_exchange_matrices() {
        let a1 = cartan(LieType::A, 1).unwrap();
        let s = exchange_from_word(&a1, &ReducedWord(vec![1])).unwrap();
        assert!(s.unfrozen.is_empty());
        let a2 = cartan(LieType::A, 2).unwrap();
        let s = exchange_from_word(&a2, &ReducedWord(vec![1, 2, 1])).unwrap();
        assert_eq!(s.unfrozen, vec![1]);
        // 1⁺ = 3 gives +1 at t = 3; 1 < 2 < 3 < 4 gives c_{2,1} = −1
        assert_eq!(s.epsilon, IntMatrix::from_i64_rows(&[&[0, -1, 1]]));
    }

    #[test]
    fn exchange_matrices_have_full_rank() {
        for (kind, range) in [(LieType::A, 1..=6), (LieType::D, 4..=6), (LieType::E, 6..=8)] {
            for n in range {
                let c = cartan(kind, n).unwrap();
                let s = exchange_from_word(&c, &standard_word(kind, n).unwrap()).unwrap();
                let (h, _) = crate::exact::hermite_normal_form(&s.epsilon);
                let nonzero = (0..h.rows()).filter(|&r| h.row(r).iter().any(|x| x != &int(0))).count();
                assert_eq!(nonzero, s.unfrozen.len(), "{kind}{n}");
                assert!(s.epsilon.to_rows().iter().flatten().all(|x| x.magnitude() <= &1u32.into()));
            }
        }
    }

    #[test]
    fn sl4_m_matrix() {
        let c = cartan(LieType::A, 3).unwrap();
        let w = standard_word(LieType::A, 3).unwrap();
        let m = m_matrix(&c, &w).unwrap();
        assert_eq!(
            m,
            IntMatrix::from_i64_rows(&[
                &[1, 0, 0, 0, 0, 0],
                &[1, 1, 0, 0, 0, 0],
                &[0, 1, 1, 0, 0, 0],
                &[1, 1, 0, 1, 0, 0],
                &[0, 1, 1, 1, 1, 0],
                &[0, 0, 0, 1, 1, 1],
            ])
        );
        assert_eq!(m.left_mul(&a(&[0, 0, 0, 1, 1, 1])), a(&[1, 2, 1, 3, 2, 1]));
        let a1 = cartan(LieType::A, 1).unwrap();
        assert_eq!(m_matrix(&a1, &ReducedWord(vec![1])).unwrap(), IntMatrix::identity(1));
    }

    #[test]
    fn m_matrices_are_unit_lower_triangular() {
        for (kind, n) in [(LieType::D, 5), (LieType::E, 6), (LieType::C, 3)] {
            let c = cartan(kind, n).unwrap();
            let m = m_matrix(&c, &standard_word(kind, n).unwrap()).unwrap();
            for i in 0..m.rows() {
                assert_eq!(m.get(i, i), &int(1));
                assert!((i + 1..m.cols()).all(|j| m.get(i, j) == &int(0)));
            }
        }
    }

    #[test]
    fn interior_point_type_a() {
        for n in 1..=8 {
            let c = cartan(LieType::A, n).unwrap();
            let w = standard_word(LieType::A, n).unwrap();
            let want: Vec<i64> = word_a(n).iter().map(|&x| x as i64).collect();
            assert_eq!(string_interior_point(&c, &w).unwrap(), a(&want));
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!("2, 2,2".parse::<Weight>().unwrap(), Weight(vec![2, 2, 2]));
        assert!("2,x".parse::<Weight>().is_err());
        assert_eq!(parse_type("E8").unwrap(), (LieType::E, 8));
    }

    #[test]
    fn gt_small_cases() {
        let p = gt_polytope_a(1, &Weight(vec![2])).unwrap();
        assert_eq!(p, RationalPolytope::cuboid(&[(int(0).into(), int(2).into())]).unwrap());
        let p = gt_polytope_a(2, &Weight(vec![2, 2])).unwrap();
        assert_eq!(p.lattice_point_count(), 27);
        // (a₁⁽¹⁾, a₁⁽²⁾, a₂⁽¹⁾) = (3, 2, 1)
        assert_eq!(p.interior_lattice_points(), vec![a(&[3, 2, 1])]);
        let z = gt_polytope_c(2, &Weight(vec![0, 0])).unwrap();
        assert_eq!(z.vertices().len(), 1);
        assert!(gt_polytope_a(2, &Weight(vec![1, -1])).is_err());
    }

    #[test]
    fn gt_type_c_small_weights() {
        // dimensions of the two fundamental representations of sp₄
        assert_eq!(gt_polytope_c(2, &Weight(vec![1, 0])).unwrap().lattice_point_count(), 5);
        assert_eq!(gt_polytope_c(2, &Weight(vec![0, 1])).unwrap().lattice_point_count(), 4);
        let c1 = gt_polytope_c(1, &Weight(vec![3])).unwrap();
        assert_eq!(c1.lattice_point_count(), 4);
    }

    #[test]
    fn sl4_fixture_basics() {
        let p = sl4_no_body(&Weight(vec![2, 2, 2])).unwrap();
        assert_eq!(p.interior_lattice_points(), vec![a(&[0, 0, 0, 1, 1, 1])]);
        let z = sl4_no_body(&Weight(vec![0, 0, 0])).unwrap();
        assert_eq!(z.vertices().len(), 1);
        assert!(z.vertices()[0].0.iter().all(|x| x == &Rational::from_integer(int(0))));
    }

    #[test]
    fn nz_vertex_counts() {
        for l in [[1, 1], [2, 2], [1, 3]] {
            let nz = nz_sp4(&Weight(l.to_vec())).unwrap();
            assert_eq!(nz.intrinsic_dim(), 4);
            assert_eq!(nz.vertices().len(), 11);
            assert_eq!(gt_polytope_c(2, &Weight(l.to_vec())).unwrap().vertices().len(), 12);
        }
        assert_eq!(nz_sp4(&Weight(vec![0, 0])).unwrap().vertices().len(), 1);
    }
}
