//! Exact scalars, vectors and matrices.
//!
//! Everything is big-integer or big-rational; there is no floating point in
//! this crate. Vectors are row vectors and linear maps act on the right, so a
//! point `x` is sent to `x · M`.

use std::fmt;
use std::ops::{Deref, DerefMut, Index};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// Parses `"p/q"` or `"p"`. Decimal and exponent notation are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '/');
    if !ok {
        return Err(Error::Parse(format!("not an exact rational: {s:?}")));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let den = BigInt::from_str(den).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = common_denominator(values);
    let scaled = values
        .iter()
        .map(|r| (r * Rational::from_integer(l.clone())).to_integer())
        .collect();
    (scaled, l)
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

pub(crate) mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Integer row vector (a point of a lattice `ℤ^J`, or a covector).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVector(pub Vec<BigInt>);

/// Rational row vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RatVector(pub Vec<Rational>);

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        IntVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64(values: &[i64]) -> Self {
        IntVector(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn to_rat(&self) -> RatVector {
        RatVector(self.0.iter().map(rat_from_int).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, other: &RatVector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| b * rat_from_int(a))
            .sum()
    }

    pub fn neg(&self) -> Self {
        IntVector(self.0.iter().map(|v| -v).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntVector(self.0.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &IntVector) -> Self {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> Self {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl RatVector {
    pub fn zeros(n: usize) -> Self {
        RatVector(vec![Rational::zero(); n])
    }

    pub fn from_i64(values: &[i64]) -> Self {
        RatVector(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RatVector) -> Self {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVector) -> Self {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatVector(self.0.iter().map(|v| v * c).collect())
    }

    pub fn neg(&self) -> Self {
        RatVector(self.0.iter().map(|v| -v).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|v| v.is_integer())
    }

    /// The integer vector, if every coordinate is integral.
    pub fn to_int(&self) -> Option<IntVector> {
        self.is_integral()
            .then(|| IntVector(self.0.iter().map(|v| v.to_integer()).collect()))
    }

    /// `x · M`.
    pub fn mul_int_matrix(&self, m: &IntMatrix) -> RatVector {
        let mut out = vec![Rational::zero(); m.cols()];
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let e = m.get(i, j);
                if !e.is_zero() {
                    *o += x * rat_from_int(e);
                }
            }
        }
        RatVector(out)
    }
}

macro_rules! vector_traits {
    ($t:ty, $e:ty) => {
        impl Deref for $t {
            type Target = Vec<$e>;
            fn deref(&self) -> &Vec<$e> {
                &self.0
            }
        }
        impl DerefMut for $t {
            fn deref_mut(&mut self) -> &mut Vec<$e> {
                &mut self.0
            }
        }
        impl From<Vec<$e>> for $t {
            fn from(v: Vec<$e>) -> Self {
                Self(v)
            }
        }
        impl FromIterator<$e> for $t {
            fn from_iter<I: IntoIterator<Item = $e>>(iter: I) -> Self {
                Self(iter.into_iter().collect())
            }
        }
    };
}

vector_traits!(IntVector, BigInt);
vector_traits!(RatVector, Rational);

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in &self.0 {
            match v.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => {
                    return Err(serde::ser::Error::custom(format!(
                        "integer {v} exceeds the JSON integer range"
                    )))
                }
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<i64> = Vec::deserialize(d)?;
        Ok(IntVector::from_i64(&v))
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(format_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(RatVector)
            .map_err(serde::de::Error::custom)
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, BigInt::from(v));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> IntVector {
        IntVector(self.row(i).to_vec())
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `v · M` for an integer row vector.
    pub fn left_mul(&self, v: &IntVector) -> IntVector {
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += x * self.get(i, j);
            }
        }
        IntVector(out)
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(rat_from_int).collect())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(bareiss_determinant(self.to_rows()))
    }

    /// Exact inverse over ℚ, or `None` when singular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<Rational>>> {
        if !self.is_square() {
            return None;
        }
        rat_inverse(&self.to_rational())
    }

    /// Integer inverse, defined exactly when the matrix is unimodular.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let inv = self.rational_inverse()?;
        let rows = inv
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| v.is_integer().then(|| v.to_integer()))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        IntMatrix::from_rows(rows).ok()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<IntVector> = (0..self.rows).map(|i| self.row_vector(i)).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<IntVector> = Vec::deserialize(d)?;
        IntMatrix::from_rows(rows.into_iter().map(|r| r.0).collect())
            .map_err(serde::de::Error::custom)
    }
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `|det m| = 1`.
pub fn is_unimodular(m: &IntMatrix) -> Result<bool> {
    Ok(m.determinant()?.abs().is_one())
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U · m = H`.
///
/// Convention: `H` is in row echelon form, every pivot is positive, entries
/// above a pivot lie in `[0, pivot)`, and zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();

    fn sub_row(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let s = a[src].clone();
        for (t, v) in a[target].iter_mut().zip(&s) {
            *t -= q * v;
        }
    }

    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        loop {
            let best = (p..rows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(p, best);
            u.swap(p, best);
            let mut done = true;
            for i in p + 1..rows {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[p][col]);
                sub_row(&mut a, i, p, &q);
                sub_row(&mut u, i, p, &q);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[p][col].is_zero() {
            continue;
        }
        if a[p][col].is_negative() {
            for v in a[p].iter_mut().chain(u[p].iter_mut()) {
                *v = -&*v;
            }
        }
        for i in 0..p {
            let q = a[i][col].div_floor(&a[p][col]);
            sub_row(&mut a, i, p, &q);
            sub_row(&mut u, i, p, &q);
        }
        p += 1;
    }
    (
        IntMatrix::from_rows(a).expect("rectangular"),
        IntMatrix::from_rows(u).expect("rectangular"),
    )
}

/// Splits a nonzero integer vector into its primitive direction and the gcd
/// of its entries.
pub fn primitive_part(v: &IntVector) -> Result<(IntVector, BigInt)> {
    let g = gcd_all(v.iter());
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok((IntVector(v.iter().map(|x| x / &g).collect()), g))
}

/// Primitive integer vector along a nonzero rational direction (positive
/// multiple).
pub fn primitive_direction(v: &[Rational]) -> Result<IntVector> {
    let (scaled, _) = clear_denominators(v);
    primitive_part(&IntVector(scaled)).map(|(p, _)| p)
}

// ---------------------------------------------------------------------------
// Rational linear algebra on plain row lists.

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A xᵀ = 0}`, i.e. column vectors annihilated by the rows.
pub fn right_nullspace(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn rat_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `x · A = b` for a row vector `x`; `None` when inconsistent. When the
/// solution is not unique the free coordinates are set to zero.
pub fn solve_left(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    // x A = b  <=>  Aᵀ xᵀ = bᵀ
    let rows = a.len();
    let cols = b.len();
    let mut aug: Vec<Vec<Rational>> = (0..cols)
        .map(|j| {
            let mut r: Vec<Rational> = (0..rows).map(|i| a[i][j].clone()).collect();
            r.push(b[j].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&rows) {
        return None;
    }
    let mut x = vec![Rational::zero(); rows];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][rows].clone();
    }
    Some(x)
}
