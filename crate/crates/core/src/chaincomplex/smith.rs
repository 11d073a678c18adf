use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::Matrix;

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix, all
/// positive.
pub fn smith_normal_form(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter_rows().map(<[BigInt]>::to_vec).collect();
    let rows = m.rows();
    let cols = m.cols();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = smallest_entry(&a, t) else {
                return out;
            };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let p = a[t][t].clone();
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&p);
                for c in t..cols {
                    let v = &a[t][c] * &q;
                    a[r][c] -= v;
                }
                dirty |= !a[r][t].is_zero();
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[c] -= v;
                }
                dirty |= !a[t][c].is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !(&a[r][c] % &p).is_zero()));
            match bad {
                Some(r) => {
                    for c in t..cols {
                        let v = a[r][c].clone();
                        a[t][c] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < a[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}
