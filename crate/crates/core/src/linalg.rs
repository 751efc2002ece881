//! Small exact linear algebra: rational elimination and integer Smith normal form.
#![allow(clippy::needless_range_loop)]

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub type QMatrix = Vec<Vec<Q>>;
pub type IMatrix = Vec<Vec<i64>>;

pub fn identity_i(n: usize) -> IMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn to_q(m: &IMatrix) -> QMatrix {
    m.iter().map(|r| qvec(r)).collect()
}

pub fn mat_mul_q(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_mul_i(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat_q(v: &[Q], m: &QMatrix) -> Vec<Q> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols)
        .map(|j| v.iter().zip(m).fold(Q::zero(), |acc, (x, row)| acc + *x * row[j]))
        .collect()
}

pub fn mat_vec_q(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + *a * *b))
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = f * m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn inverse_q(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solution set of `A x = b`: a particular solution and a basis of the kernel
/// of `A`, both canonical (kernel basis in reduced echelon form, particular
/// solution with zero free coordinates). `None` when inconsistent.
pub fn solve_affine(a: &QMatrix, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(*bi);
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][cols];
    }
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    let mut kernel = vec![];
    for &f in &free {
        let mut v = vec![Q::zero(); cols];
        v[f] = Q::one();
        for (r, &c) in piv.iter().enumerate() {
            v[c] = -aug[r][f];
        }
        kernel.push(v);
    }
    Some((x, kernel))
}

/// Smith normal form `U * M * V = D` of an integer matrix, with `U`, `V`
/// unimodular and the diagonal of `D` nonnegative with each entry dividing the
/// next.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i64>,
    pub left: IMatrix,
    pub right: IMatrix,
}

pub fn smith_normal_form(m: &IMatrix) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity_i(rows);
    let mut v = identity_i(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    for j in 0..cols {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    for i in 0..rows {
                        a[i][j] -= f * a[i][t];
                    }
                    for i in 0..cols {
                        v[i][j] -= f * v[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        let x = a[i][j];
                        a[t][j] += x;
                    }
                    for j in 0..rows {
                        let x = u[i][j];
                        u[t][j] += x;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
    }
    let diag = (0..rows.min(cols)).map(|i| a[i][i]).collect();
    Smith { diag, left: u, right: v }
}

/// Canonical form of a nonzero rational vector up to positive scaling:
/// integer entries with gcd 1.
pub fn primitive(v: &[Q]) -> Vec<i64> {
    use num_integer::Integer;
    let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (*x * q(den)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        return ints;
    }
    ints.into_iter().map(|x| x / g).collect()
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_qvec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(", "))
}

pub fn is_nonneg(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_a2_cartan() {
        let c = vec![vec![2, -1], vec![-1, 2]];
        let s = smith_normal_form(&c);
        assert_eq!(s.diag, vec![1, 3]);
        let d = mat_mul_i(&mat_mul_i(&s.left, &c), &s.right);
        assert_eq!(d, vec![vec![1, 0], vec![0, 3]]);
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        let m = vec![vec![2, 0], vec![0, 3]];
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![1, 6]);
        let d = mat_mul_i(&mat_mul_i(&s.left, &m), &s.right);
        assert_eq!(d, vec![vec![1, 0], vec![0, 6]]);
    }

    #[test]
    fn smith_rectangular() {
        let m = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![1, 2]);
    }

    #[test]
    fn solve_line() {
        // x + y = 1 in two unknowns
        let a = vec![vec![q(1), q(1)]];
        let (x, k) = solve_affine(&a, &[q(1)]).unwrap();
        assert_eq!(x, vec![q(1), q(0)]);
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
        assert!(solve_affine(&vec![vec![q(0)]], &[q(1)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = to_q(&vec![vec![2, -1], vec![-1, 2]]);
        let inv = inverse_q(&m).unwrap();
        assert_eq!(mat_mul_q(&m, &inv), to_q(&identity_i(2)));
        assert_eq!(inv[0][0], Q::new(2, 3));
    }
}
