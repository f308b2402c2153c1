//! Gaussian elimination over an exact field.

use crate::field::InvolutiveField;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: InvolutiveField>(field: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = field.sub(v, &field.mul(&factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<F: InvolutiveField>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> usize {
    rref(field, &mut rows, ncols).len()
}

/// A basis of `{v : rows · v = 0}`, one vector per free column, in column order.
pub fn nullspace<F: InvolutiveField>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let pivots = rref(field, &mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&rows[r][f]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRationals;

    #[test]
    fn small_systems() {
        let f = GaussianRationals;
        let q = |n: i64| f.from_i64(n);
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&f, rows.clone(), 3), 2);
        let ns = nullspace(&f, rows.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot = row.iter().zip(&ns[0]).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            assert!(f.is_zero(&dot));
        }
        assert_eq!(nullspace(&f, vec![], 2).len(), 2);
    }
}
