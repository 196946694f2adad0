use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `d = u * m * v` together with the inverse transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn compute(m: &IntMatrix) -> Snf {
        let mut w = Work {
            a: m.clone(),
            u: IntMatrix::identity(m.rows()),
            u_inv: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        };
        let rank = w.run();
        Snf {
            u: w.u,
            u_inv: w.u_inv,
            d: w.a,
            v: w.v,
            v_inv: w.v_inv,
            rank,
        }
    }

    /// Diagonal entry `i`, zero past the rank or the matrix bounds.
    pub fn diag(&self, i: usize) -> BigInt {
        if i < self.rank {
            self.d[(i, i)].clone()
        } else {
            BigInt::zero()
        }
    }
}

/// Returns `(U, D, V)` with `D = U·m·V` in Smith normal form.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = Snf::compute(m);
    (s.u, s.d, s.v)
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    // row_i += c row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_row_multiple(i, j, c);
        self.u.add_row_multiple(i, j, c);
        self.u_inv.add_col_multiple(j, i, &-c);
    }

    // col_i += c col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_col_multiple(i, j, c);
        self.v.add_col_multiple(i, j, c);
        self.v_inv.add_row_multiple(j, i, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let n = self.a.rows().min(self.a.cols());
        let mut t = 0;
        while t < n {
            let Some((i, j)) = self.min_in_block(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut clean = true;
                for i in t + 1..self.a.rows() {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &-q);
                    if !self.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.a.cols() {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &-q);
                    if !self.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    self.move_smallest_to_pivot(t);
                    continue;
                }
                if let Some(i) = self.non_divisible_row(t) {
                    self.add_row(t, i, &BigInt::from(1));
                    continue;
                }
                break;
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    fn move_smallest_to_pivot(&mut self, t: usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[(t, t)].abs();
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)].abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (i, t);
                best_abs = x;
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a[(t, j)].abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (t, j);
                best_abs = x;
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.a[(i, j)].is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = Snf::compute(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for i in 0..s.rank {
            for j in 0..m.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
            if i + 1 < s.rank {
                assert!(s.d[(i + 1, i + 1)].is_multiple_of(&s.d[(i, i)]));
            }
        }
        s
    }

    #[test]
    fn small_examples() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]]));
        assert_eq!(s.rank, 1);
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check(&IntMatrix::from_rows(&[vec![0, 3, 0], vec![2, 0, 0]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 6, 0]]));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }
}
