#![allow(dead_code)]

/// Weyl dimension formula for `sl_{n+1}` via the partition
/// `μ_i = Σ_{l ≥ i} λ_l`: `∏_{i<j} (μ_i − μ_j + j − i)/(j − i)`.
pub fn weyl_dim_a(lambda: &[i64]) -> u64 {
    let n = lambda.len();
    let mu: Vec<i64> = (0..=n).map(|i| lambda[i.min(n)..].iter().sum()).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..=n {
        for j in i + 1..=n {
            num *= (mu[i] - mu[j] + (j - i) as i64) as i128;
            den *= (j - i) as i128;
        }
    }
    (num / den) as u64
}

/// Weyl dimension formula for `sp₄` with `α₁` long: the positive coroots
/// pair with `λ` as `λ₁, λ₂, 2λ₁ + λ₂, λ₁ + λ₂`.
pub fn weyl_dim_c2(l: &[i64]) -> u64 {
    let pair = |a: i64, b: i64| [a, b, 2 * a + b, a + b];
    let top = pair(l[0] + 1, l[1] + 1);
    let bot = pair(1, 1);
    (top.iter().product::<i64>() / bot.iter().product::<i64>()) as u64
}

/// `(1, 2, 1, 3, 2, 1, …, n, …, 1)`.
pub fn a_table(n: usize) -> Vec<i64> {
    (1..=n as i64).flat_map(|k| (1..=k).rev()).collect()
}

/// `(1, 1, 3, 2, 2, 1, 5, 4, 3, 3, 2, 1, …)`.
pub fn d_table(n: usize) -> Vec<i64> {
    let mut a = vec![1, 1];
    for k in 3..=n as i64 {
        a.extend((k..=2 * k - 3).rev());
        a.push(k - 1);
        a.extend((1..=k - 1).rev());
    }
    a
}

pub fn e6_table() -> Vec<i64> {
    let mut a = d_table(5);
    a.extend([11, 10, 9, 8, 8, 7, 7, 6, 6, 5, 4, 5, 4, 3, 2, 1]);
    a
}

pub fn e7_table() -> Vec<i64> {
    let mut a = e6_table();
    a.extend([
        17, 16, 15, 14, 13, 13, 12, 12, 11, 11, 10, 9, 10, 9, 8, 7, 6, 9, 8, 7, 6, 5, 5, 4, 3, 2, 1,
    ]);
    a
}

/// Position (1-based) of the entry 29 in the E₈ table.
pub const E8_SUSPECT: usize = 92;

pub fn e8_table() -> Vec<i64> {
    let mut a = e7_table();
    a.extend([
        28, 27, 26, 25, 24, 23, 23, 22, 22, 21, 21, 20, 19, 20, 19, 18, 17, 16, 19, 18, 17, 16, 15,
        15, 14, 13, 12, 11, 29, 18, 17, 16, 15, 14, 14, 13, 13, 12, 12, 11, 10, 11, 10, 9, 8, 7, 10,
        9, 8, 7, 6, 6, 5, 4, 3, 2, 1,
    ]);
    a
}
