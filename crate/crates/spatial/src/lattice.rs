//! Exact integer linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Row = Vec<BigInt>;

/// One extended-gcd step: (s, t, g) with s*a + t*b = g >= 0.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.x, -e.y, -e.gcd)
    } else {
        (e.x, e.y, e.gcd)
    }
}

/// A Z-basis of { x in Z^n : A x = 0 }, by unimodular column reduction of A
/// tracked on an identity matrix.
pub fn integer_kernel(rows: &[Row], n: usize) -> Vec<Row> {
    // Columns stored as vectors: a[j] is column j of A, u[j] column j of U.
    let mut a: Vec<Row> = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    let mut u: Vec<Row> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::from(1) } else { BigInt::zero() }).collect())
        .collect();
    let mut p = 0;
    for i in 0..rows.len() {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if a[j][i].is_zero() {
                continue;
            }
            if a[p][i].is_zero() {
                a.swap(p, j);
                u.swap(p, j);
                continue;
            }
            let (s, t, g) = xgcd(&a[p][i], &a[j][i]);
            let (x, y) = (&a[p][i] / &g, &a[j][i] / &g);
            let combine = |cp: &Row, cj: &Row| -> (Row, Row) {
                let np = cp.iter().zip(cj).map(|(l, r)| &s * l + &t * r).collect();
                let nj = cp.iter().zip(cj).map(|(l, r)| &x * r - &y * l).collect();
                (np, nj)
            };
            let (np, nj) = combine(&a[p], &a[j]);
            a[p] = np;
            a[j] = nj;
            let (np, nj) = combine(&u[p], &u[j]);
            u[p] = np;
            u[j] = nj;
        }
        if !a[p][i].is_zero() {
            p += 1;
        }
    }
    u.split_off(p)
}

/// Row Hermite normal form of the lattice spanned by `vectors`; zero rows dropped.
pub fn hermite_rows(vectors: &[Row]) -> Vec<Row> {
    let mut m: Vec<Row> = vectors.to_vec();
    let Some(n) = m.first().map(Vec::len) else { return vec![] };
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        for k in r + 1..m.len() {
            if m[k][c].is_zero() {
                continue;
            }
            if m[r][c].is_zero() {
                m.swap(r, k);
                continue;
            }
            let (s, t, g) = xgcd(&m[r][c], &m[k][c]);
            let (x, y) = (&m[r][c] / &g, &m[k][c] / &g);
            let nr: Row = m[r].iter().zip(&m[k]).map(|(l, q)| &s * l + &t * q).collect();
            let nk: Row = m[r].iter().zip(&m[k]).map(|(l, q)| &x * q - &y * l).collect();
            m[r] = nr;
            m[k] = nk;
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            m[r] = m[r].iter().map(|e| -e).collect();
        }
        for k in 0..r {
            let q = m[k][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let sub: Row = m[k].iter().zip(&m[r]).map(|(l, e)| l - &q * e).collect();
                m[k] = sub;
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Membership of `v` in the lattice with Hermite basis `hnf`.
pub fn contains(hnf: &[Row], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for row in hnf {
        let Some(c) = row.iter().position(|e| !e.is_zero()) else { continue };
        let (q, rem) = v[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        for (x, e) in v.iter_mut().zip(row) {
            *x -= &q * e;
        }
    }
    v.iter().all(Zero::is_zero)
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Row {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn apply(rows: &[Row], x: &[BigInt]) -> Vec<BigInt> {
        rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn kernel_of_crossing_relation() {
        // a + c - 2b = 0 in Z^3: kernel spanned by (1,1,1) and (0,1,2) over Z.
        let a = vec![row(&[1, -2, 1])];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&a, v).iter().all(Zero::is_zero));
        }
        let h = hermite_rows(&k);
        assert!(contains(&h, &row(&[1, 1, 1])));
        assert!(contains(&h, &row(&[0, 1, 2])));
        assert!(!contains(&h, &row(&[0, 1, 1])));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel Z*(2,1), not merely the rational line.
        let k = integer_kernel(&[row(&[2, -4])], 2);
        assert_eq!(hermite_rows(&k), vec![row(&[2, 1])]);
        assert!(integer_kernel(&[row(&[1, 0]), row(&[0, 3])], 2).is_empty());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(&[row(&[2, 3, 1]), row(&[4, 1, 0])]);
        let b = hermite_rows(&[row(&[6, 4, 1]), row(&[2, 3, 1])]);
        assert_eq!(a, b);
        assert_eq!(content(&row(&[0, 6, -9])), BigInt::from(3));
    }
}
