/// Relative pivot size below which a system is treated as singular.
const SINGULAR: f64 = 1e-12;

/// Solves the dense `n×n` system `a · x = b` in place by Gaussian elimination
/// with partial pivoting; `a` is row-major and `b` receives `x`.
///
/// Returns `false` when a pivot falls below `SINGULAR` times the largest
/// entry of `a`; the buffers are then garbage.
pub(crate) fn solve_in_place(a: &mut [f64], b: &mut [f64]) -> bool {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for col in 0..n {
        let mut pivot_row = col;
        for r in (col + 1)..n {
            if a[r * n + col].abs() > a[pivot_row * n + col].abs() {
                pivot_row = r;
            }
        }
        if a[pivot_row * n + col].abs() < SINGULAR * scale {
            return false;
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for r in (col + 1)..n {
            let factor = a[r * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                a[r * n + j] -= factor * a[col * n + j];
            }
            b[r] -= factor * b[col];
        }
    }
    for row in (0..n).rev() {
        let tail: f64 = ((row + 1)..n).map(|j| a[row * n + j] * b[j]).sum();
        b[row] = (b[row] - tail) / a[row * n + row];
    }
    true
}
