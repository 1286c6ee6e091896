//! Small dense complex linear algebra: determinants and square solves by
//! Gaussian elimination with partial pivoting.

use super::C64;

/// Determinant of a square matrix given row-major as `n` rows.
pub fn det(mut m: Vec<Vec<C64>>) -> C64 {
    let n = m.len();
    let mut d = C64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .unwrap_or(col);
        if m[piv][col] == C64::new(0.0, 0.0) {
            return C64::new(0.0, 0.0);
        }
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col];
        d *= p;
        let (top, below) = m.split_at_mut(col + 1);
        for row in below {
            let f = row[col] / p;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for (x, y) in row[col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * y;
            }
        }
    }
    d
}

/// Solves `a x = b`; `None` when a pivot is exactly zero.
pub fn solve_square(mut a: Vec<Vec<C64>>, mut b: Vec<C64>) -> Option<Vec<C64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[piv][col] == C64::new(0.0, 0.0) {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        let p = a[col][col];
        let b_col = b[col];
        let (top, below) = a.split_at_mut(col + 1);
        for (row, rhs) in below.iter_mut().zip(&mut b[col + 1..]) {
            let f = row[col] / p;
            for (x, y) in row[col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * y;
            }
            *rhs -= f * b_col;
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn determinant_of_permutation_and_triangular() {
        let m = vec![vec![r(0.0), r(1.0)], vec![r(1.0), r(0.0)]];
        assert_eq!(det(m), r(-1.0));
        let t = vec![
            vec![r(2.0), r(5.0), r(1.0)],
            vec![r(0.0), r(3.0), r(7.0)],
            vec![r(0.0), r(0.0), r(4.0)],
        ];
        assert!((det(t) - r(24.0)).norm() < 1e-12);
    }

    #[test]
    fn solve_recovers_known_vector() {
        let a = vec![
            vec![C64::new(1.0, 1.0), r(2.0), r(0.5)],
            vec![r(0.0), C64::new(0.0, 3.0), r(1.0)],
            vec![r(4.0), r(-1.0), C64::new(2.0, -1.0)],
        ];
        let x = vec![r(1.0), C64::new(0.0, -2.0), r(3.0)];
        let b: Vec<C64> = a
            .iter()
            .map(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum())
            .collect();
        let got = solve_square(a, b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-12);
        }
    }
}
