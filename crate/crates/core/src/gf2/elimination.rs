//! Gaussian elimination over the two-element field on packed rows.
//!
//! Rows are `u128` words: bits `0..cols` hold the coefficients and bit `cols`
//! carries the right-hand side when a system is augmented. `cols <= 64`.

/// Reduces `rows` to reduced row-echelon form in place and returns the pivot
/// column of each of the leading `pivots.len()` rows.
pub(crate) fn rref(rows: &mut [u128], cols: u32) -> Vec<u32> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let bit = 1u128 << col;
        let Some(found) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(rows: &[u64], cols: u32) -> usize {
    let mut work: Vec<u128> = rows.iter().map(|&r| r as u128).collect();
    rref(&mut work, cols).len()
}

/// Some solution of `A x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub(crate) fn solve(rows: &[u64], rhs: &[bool], cols: u32) -> Option<u64> {
    debug_assert_eq!(rows.len(), rhs.len());
    let rhs_bit = 1u128 << cols;
    let mut work: Vec<u128> = rows
        .iter()
        .zip(rhs)
        .map(|(&r, &b)| r as u128 | if b { rhs_bit } else { 0 })
        .collect();
    let pivots = rref(&mut work, cols);
    if work[pivots.len()..].iter().any(|&r| r & rhs_bit != 0) {
        return None;
    }
    let mut x = 0u64;
    for (row, &col) in work.iter().zip(&pivots) {
        if row & rhs_bit != 0 {
            x |= 1 << col;
        }
    }
    Some(x)
}

/// A basis of `{x : A x = 0}`.
pub(crate) fn nullspace(rows: &[u64], cols: u32) -> Vec<u64> {
    let mut work: Vec<u128> = rows.iter().map(|&r| r as u128).collect();
    let pivots = rref(&mut work, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = 1u64 << free;
        for (row, &col) in work.iter().zip(&pivots) {
            if row >> free & 1 == 1 {
                x |= 1 << col;
            }
        }
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[0b011, 0b110, 0b101], 3), 2);
        assert_eq!(rank(&[0b001, 0b010, 0b100], 3), 3);
        assert_eq!(rank(&[], 3), 0);
    }

    #[test]
    fn solve_and_inconsistency() {
        // x0 + x1 = 1, x1 = 1  ->  x0 = 0, x1 = 1
        assert_eq!(solve(&[0b11, 0b10], &[true, true], 2), Some(0b10));
        // x0 = 1, x0 = 0
        assert_eq!(solve(&[0b1, 0b1], &[true, false], 1), None);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = [0b0111u64, 0b1100];
        let null = nullspace(&rows, 4);
        assert_eq!(null.len(), 2);
        for x in null {
            for r in rows {
                assert_eq!((r & x).count_ones() % 2, 0);
            }
        }
    }

    #[test]
    fn full_width_columns() {
        let rows = [u64::MAX];
        assert_eq!(nullspace(&rows, 64).len(), 63);
        assert_eq!(solve(&rows, &[true], 64), Some(1));
    }
}
