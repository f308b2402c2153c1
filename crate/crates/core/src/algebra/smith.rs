//! Smith normal form of integer matrices (invariant factors only).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// The nonzero invariant factors `d₁ | d₂ | … | d_r` (all positive) of an
/// integer matrix given by rows; `r` is its rank.
pub fn smith_invariants(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&m, t) else {
            break;
        };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in (t + 1)..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                row_axpy(&mut m, i, t, &q);
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in (t + 1)..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_axpy(&mut m, j, t, &q);
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder appeared in row/column t: make it the pivot.
                let (pi, pj) = smallest_in_cross(&m, t);
                m.swap(t, pi);
                swap_cols(&mut m, t, pj);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = ((t + 1)..rows).find(|&i| ((t + 1)..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut m, t, i, &one); // row t += row i
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
    }
    out
}

fn smallest_nonzero(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(m: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cells = (t..m.len()).map(|i| (i, t)).chain((t..m[t].len()).map(|j| (t, j)));
    for (i, j) in cells {
        let v = &m[i][j];
        if !v.is_zero() && (m[best.0][best.1].is_zero() || v.abs() < m[best.0][best.1].abs()) {
            best = (i, j);
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[target] -= q · row[source]`.
fn row_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (v, s) in m[target].iter_mut().zip(&src) {
        *v -= q * s;
    }
}

/// `col[target] -= q · col[source]`.
fn col_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}
