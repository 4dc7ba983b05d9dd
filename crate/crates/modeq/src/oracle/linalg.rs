//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::scalars::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rational::from_integer(1.into()) / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{x : A x = 0}` for an `_ × ncols` matrix.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::from_integer(1.into());
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// The unique solution of `A x = b`, or `None` if there is none or more
/// than one.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.contains(&ncols) || pivots.len() != ncols {
        return None;
    }
    Some((0..ncols).map(|r| m[r][ncols].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    #[test]
    fn small_system() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve_unique(&a, &[int(3), int(1)], 2), Some(vec![int(2), int(1)]));
        let ns = nullspace(&[vec![int(1), int(-2)]], 2);
        assert_eq!(ns, vec![vec![int(2), int(1)]]);
    }
}
