//! Exact matrix rank over ℚ and over prime fields.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::Field;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Q => self.rank_q(),
            Field::Fp(p) => self.rank_mod(p),
        }
    }

    /// Fraction-free elimination in i128, restarted on BigInt on overflow.
    pub fn rank_q(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let rows: Vec<Vec<i128>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().map(|&v| v as i128).collect())
            .collect();
        match bareiss_i128(rows) {
            Some(r) => r,
            None => {
                let rows: Vec<Vec<BigInt>> = (0..self.rows)
                    .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().map(|&v| BigInt::from(v)).collect())
                    .collect();
                bareiss_big(rows)
            }
        }
    }

    pub fn rank_mod(&self, p: u64) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let p128 = p as i128;
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .map(|&v| (v as i128).rem_euclid(p128) as u64)
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = mod_pow(m[rank][col], p - 2, p);
            for c in col..self.cols {
                m[rank][c] = mul_mod(m[rank][c], inv, p);
            }
            for r in 0..self.rows {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in col..self.cols {
                        let sub = mul_mod(f, m[rank][c], p);
                        m[r][c] = (m[r][c] + p - sub) % p;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Rank of a sparse matrix given as rows of (column, value) pairs sorted by
/// column. Rows are reduced against earlier pivots by leading column; over ℚ
/// the elimination stays integral and falls back to dense Bareiss when an
/// entry overflows.
pub fn sparse_rank(rows: &[Vec<(usize, i64)>], cols: usize, field: Field) -> usize {
    match field {
        Field::Fp(p) => sparse_rank_mod(rows, p),
        Field::Q => sparse_rank_z(rows).unwrap_or_else(|| {
            let mut m = IntegerMatrix::zeros(rows.len(), cols);
            for (i, r) in rows.iter().enumerate() {
                for &(c, v) in r {
                    m.set(i, c, v);
                }
            }
            m.rank_q()
        }),
    }
}

fn sparse_rank_mod(rows: &[Vec<(usize, i64)>], p: u64) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows {
        let mut r: Vec<(usize, u64)> = row
            .iter()
            .map(|&(c, v)| (c, (v as i128).rem_euclid(p as i128) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, a)) = r.first() {
            let Some(piv) = pivots.get(&lead) else {
                let inv = mod_pow(a, p - 2, p);
                for e in &mut r {
                    e.1 = mul_mod(e.1, inv, p);
                }
                pivots.insert(lead, r);
                break;
            };
            r = combine(&r, piv, |x, y| (x + p - mul_mod(a, y, p)) % p, 0);
        }
    }
    pivots.len()
}

fn sparse_rank_z(rows: &[Vec<(usize, i64)>]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, i128)>> = HashMap::new();
    for row in rows {
        let mut r: Vec<(usize, i128)> = row.iter().filter(|e| e.1 != 0).map(|&(c, v)| (c, v as i128)).collect();
        while let Some(&(lead, a)) = r.first() {
            let Some(piv) = pivots.get(&lead) else {
                pivots.insert(lead, r);
                break;
            };
            let b = piv[0].1;
            let mut overflow = false;
            r = combine(
                &r,
                piv,
                |x, y| match (b.checked_mul(x), a.checked_mul(y)) {
                    (Some(u), Some(v)) => u.checked_sub(v).unwrap_or_else(|| {
                        overflow = true;
                        0
                    }),
                    _ => {
                        overflow = true;
                        0
                    }
                },
                0,
            );
            if overflow {
                return None;
            }
            let g = r.iter().fold(0i128, |g, e| gcd(g, e.1.abs()));
            if g > 1 {
                for e in &mut r {
                    e.1 /= g;
                }
            }
        }
    }
    Some(pivots.len())
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Merge two sorted sparse rows entrywise with `f(x, y)` (missing entries
/// read as `zero`), dropping zero results.
fn combine<T: Copy + PartialEq>(
    x: &[(usize, T)],
    y: &[(usize, T)],
    mut f: impl FnMut(T, T) -> T,
    zero: T,
) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = match (x.get(i), y.get(j)) {
            (Some(&(cx, vx)), Some(&(cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (cx, f(vx, vy))
            }
            (Some(&(cx, vx)), Some(&(cy, _))) if cx < cy => {
                i += 1;
                (cx, f(vx, zero))
            }
            (Some(&(cx, vx)), None) => {
                i += 1;
                (cx, f(vx, zero))
            }
            (_, Some(&(cy, vy))) => {
                j += 1;
                (cy, f(zero, vy))
            }
            (None, None) => unreachable!(),
        };
        if v != zero {
            out.push((c, v));
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m[0].len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let a = m[rank][col].checked_mul(m[r][c])?;
                let b = m[r][col].checked_mul(m[rank][c])?;
                m[r][c] = a.checked_sub(b)? / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank_q(), 2);
        assert_eq!(m.rank_mod(2), 1);
        assert_eq!(m.rank_mod(3), 2);
        // Boundary of a triangle's 2-face into edges: rank 1; of edges into vertices: rank 2.
        let d1 = IntegerMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(d1.rank_q(), 2);
    }

    #[test]
    fn characteristic_matters() {
        // det = 2: full rank over Q and F3, rank 1 over F2.
        let m = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank_q(), 2);
        assert_eq!(m.rank_mod(3), 2);
        assert_eq!(m.rank_mod(2), 1);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let n = 12;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i as i64 + 2).pow(j as u32 + 1)) % 1_000_003).collect())
            .collect();
        let m = IntegerMatrix::from_rows(&rows);
        let big = bareiss_big(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        );
        assert_eq!(m.rank_q(), big);
    }

    #[test]
    fn sparse_matches_dense() {
        let rows = [vec![1, 1, 0, 2], vec![1, -1, 3, 0], vec![2, 0, 3, 2], vec![0, 5, 0, -7]];
        let dense = IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        let sparse: Vec<Vec<(usize, i64)>> =
            rows.iter().map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &v)| (c, v)).collect()).collect();
        for f in [Field::Q, Field::Fp(2), Field::Fp(3), Field::Fp(7)] {
            assert_eq!(sparse_rank(&sparse, 4, f), dense.rank(f), "{f}");
        }
    }
}
