//! Exact rational matrices for the places where integer arithmetic is not
//! enough: polar duals, grading functionals, Picard-rank solves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RatMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(row * self.cols + c, p * self.cols + c);
            }
            let inv = self.at(row, col).clone();
            for c in 0..self.cols {
                let v = self.at(row, c).clone() / &inv;
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let f = self.at(r, col).clone();
                    for c in 0..self.cols {
                        let v = self.at(r, c).clone() - &f * self.at(row, c);
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

/// One solution of `A x = b` over the rationals, if the system is consistent.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = RatMatrix::zero(a.rows(), a.cols() + 1);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            *aug.at_mut(r, c) = a.at(r, c).clone();
        }
        *aug.at_mut(r, a.cols()) = b[r].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&a.cols()) {
        return None; // inconsistent
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug.at(row, a.cols()).clone();
    }
    Some(x)
}

/// Basis of the rational kernel {x : A x = 0}.
pub fn kernel(a: &RatMatrix) -> Vec<Vec<Rat>> {
    let mut m = a.clone();
    let pivots = m.rref();
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &fc in &free {
        let mut v = vec![Rat::zero(); a.cols()];
        v[fc] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m.at(row, fc).clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_kernel() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
        ]);
        let x = solve(&a, &[rat(6), rat(12)]).unwrap();
        let lhs: Rat = x.iter().zip([rat(1), rat(2), rat(3)]).map(|(a, b)| a * b).sum();
        assert_eq!(lhs, rat(6));
        assert_eq!(kernel(&a).len(), 2);
    }

    #[test]
    fn inconsistent_system() {
        let a = RatMatrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]);
        assert!(solve(&a, &[rat(1), rat(2)]).is_none());
    }
}
