//! Elementary divisors over `K[[z]]/(z^n)`.

use crate::bundles::LocalMatrix;
use crate::galois::{Fe, Field};

fn val(f: &Field, a: &[Fe]) -> Option<usize> {
    a.iter().position(|c| !f.is_zero(c))
}

fn mul_trunc(f: &Field, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Inverse of a unit series modulo `z^n`.
fn inv_unit(f: &Field, u: &[Fe], n: usize) -> Vec<Fe> {
    let u0i = f.inv(&u[0]).expect("unit");
    let mut b = vec![f.zero(); n];
    if n == 0 {
        return b;
    }
    b[0] = u0i.clone();
    for k in 1..n {
        let mut s = f.zero();
        for i in 1..=k.min(u.len() - 1) {
            s = f.add(&s, &f.mul(&u[i], &b[k - i]));
        }
        b[k] = f.neg(&f.mul(&s, &u0i));
    }
    b
}

/// Exponents `e_1 <= ... <= e_k` (one per column) of the diagonal form of
/// `lm`; an exponent equal to `n` means "at least `n`".
pub fn smith_exponents(lm: &LocalMatrix) -> Vec<usize> {
    let f = &lm.field;
    let n = lm.n;
    let mut a = lm.entries.clone();
    let (rows, cols) = (lm.rows, lm.cols);
    let mut out = Vec::with_capacity(cols);
    for k in 0..cols.min(rows) {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(v) = val(f, &a[i][j]) {
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let unit: Vec<Fe> = a[k][k][v..].to_vec();
        let uinv = inv_unit(f, &unit, n - v);
        for i in k + 1..rows {
            let Some(vi) = val(f, &a[i][k]) else { continue };
            debug_assert!(vi >= v);
            // q = a[i][k] / pivot, known modulo z^(n-v)
            let q = mul_trunc(f, &a[i][k][v..], &uinv, n - v);
            for j in k..cols {
                let prod = mul_trunc(f, &q, &a[k][j], n);
                for (x, y) in a[i][j].iter_mut().zip(prod) {
                    *x = f.sub(x, &y);
                }
            }
        }
        out.push(v);
    }
    out.resize(cols, n);
    out
}

/// The same matrix in another local frame: row `i` multiplied by the unit
/// `units[i]`, then `z` replaced by `z + c_2 z^2 + c_3 z^3 + ...`.
pub fn reframe(lm: &LocalMatrix, units: &[Vec<Fe>], reparam: &[Fe]) -> LocalMatrix {
    let f = &lm.field;
    let n = lm.n;
    // powers of w(z) = z + sum_{k>=2} reparam[k-2] z^k
    let mut w = vec![f.zero(); n];
    if n > 1 {
        w[1] = f.one();
    }
    for (k, c) in reparam.iter().enumerate() {
        if k + 2 < n {
            w[k + 2] = c.clone();
        }
    }
    let mut pows = vec![{
        let mut one = vec![f.zero(); n];
        if n > 0 {
            one[0] = f.one();
        }
        one
    }];
    for k in 1..n {
        let next = mul_trunc(f, &pows[k - 1], &w, n);
        pows.push(next);
    }
    let subst = |s: &[Fe]| -> Vec<Fe> {
        let mut out = vec![f.zero(); n];
        for (k, c) in s.iter().enumerate().take(n) {
            if f.is_zero(c) {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&pows[k]) {
                *o = f.add(o, &f.mul(c, p));
            }
        }
        out
    };
    let entries = lm
        .entries
        .iter()
        .zip(units)
        .map(|(row, u)| row.iter().map(|e| subst(&mul_trunc(f, e, u, n))).collect())
        .collect();
    LocalMatrix { entries, ..lm.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(f: &Field, n: usize, e: Vec<Vec<Vec<i64>>>) -> LocalMatrix {
        let rows = e.len();
        let cols = e[0].len();
        let entries = e
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| {
                        let mut v: Vec<Fe> = s.into_iter().map(|c| f.from_i64(c)).collect();
                        v.resize(n, f.zero());
                        v
                    })
                    .collect()
            })
            .collect();
        LocalMatrix { field: f.clone(), rows, cols, n, entries }
    }

    #[test]
    fn jordan_like_block() {
        let f = Field::prime(7).unwrap();
        // [[z, 1], [0, z]] has exponents 0 and 2
        let m = lm(&f, 4, vec![vec![vec![0, 1], vec![1]], vec![vec![0], vec![0, 1]]]);
        assert_eq!(smith_exponents(&m), vec![0, 2]);
        // diag(z, z)
        let d = lm(&f, 4, vec![vec![vec![0, 1], vec![0]], vec![vec![0], vec![0, 1]]]);
        assert_eq!(smith_exponents(&d), vec![1, 1]);
        // rank deficit shows up as the cap
        let z = lm(&f, 3, vec![vec![vec![1], vec![2]], vec![vec![2], vec![4]]]);
        assert_eq!(smith_exponents(&z), vec![0, 3]);
    }

    #[test]
    fn reframing_keeps_exponents() {
        let f = Field::prime(11).unwrap();
        let m = lm(
            &f,
            5,
            vec![
                vec![vec![0, 1, 3], vec![2, 0, 1], vec![0, 0, 1]],
                vec![vec![0, 2], vec![4, 1], vec![0, 0, 2]],
                vec![vec![1], vec![2], vec![0, 1]],
            ],
        );
        let e = smith_exponents(&m);
        let units: Vec<Vec<Fe>> =
            (0..3).map(|i| vec![f.from_i64(i + 2), f.from_i64(3), f.from_i64(5 * i)]).collect();
        let r = reframe(&m, &units, &[f.from_i64(4), f.from_i64(1)]);
        assert_eq!(smith_exponents(&r), e);
    }
}
