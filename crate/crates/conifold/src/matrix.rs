//! Exact integer matrices: Hermite and Smith normal forms, kernel lattices,
//! and saturation. Everything here is arbitrary-precision; no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix with immutable dimensions, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a * other.at(k, c);
                    *out.at_mut(r, c) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(self.at_mut(i, c));
            *self.at_mut(i, c) = v;
        }
    }

    /// row_i -= q * row_j
    fn sub_row_mul(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * self.at(j, c);
            *self.at_mut(i, c) -= delta;
        }
    }

    /// Rank over the rationals (pivot count of the Hermite form).
    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows).filter(|&r| h.row(r).iter().any(|x| !x.is_zero())).count()
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `u * m = h`. `h` is in row echelon
/// form with positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, and zero rows at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        // gcd-reduce entries of this column below `row`
        loop {
            let mut pivot: Option<usize> = None;
            for r in row..nrows {
                if !h.at(r, col).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some(p) => h.at(r, col).abs() < h.at(p, col).abs(),
                    };
                    if better {
                        pivot = Some(r);
                    }
                }
            }
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            u.swap_rows(row, p);
            let mut done = true;
            for r in row + 1..nrows {
                if !h.at(r, col).is_zero() {
                    let q = h.at(r, col).div_floor(h.at(row, col));
                    h.sub_row_mul(r, row, &q);
                    u.sub_row_mul(r, row, &q);
                    if !h.at(r, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(row, col).is_zero() {
            continue;
        }
        if h.at(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        // reduce entries above the pivot into [0, pivot)
        for r in 0..row {
            let q = h.at(r, col).div_floor(h.at(row, col));
            h.sub_row_mul(r, row, &q);
            u.sub_row_mul(r, row, &q);
        }
        row += 1;
    }
    (h, u)
}

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form,
/// obtained by alternating row and column reduction.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (nrows, ncols) = (a.rows(), a.cols());
    let mut out: Vec<BigInt> = Vec::new();
    let mut top = 0;
    while top < nrows && top < ncols {
        // locate a nonzero entry at (top.., top..)
        let mut piv = None;
        'find: for r in top..nrows {
            for c in top..ncols {
                if !a.at(r, c).is_zero() {
                    piv = Some((r, c));
                    break 'find;
                }
            }
        }
        let Some((pr, pc)) = piv else { break };
        a.swap_rows(top, pr);
        for r in 0..nrows {
            a.data.swap(r * ncols + top, r * ncols + pc);
        }
        loop {
            let mut changed = false;
            // clear the column
            for r in top + 1..nrows {
                while !a.at(r, top).is_zero() {
                    if a.at(r, top).abs() < a.at(top, top).abs() {
                        a.swap_rows(top, r);
                        changed = true;
                    }
                    let q = a.at(r, top).div_floor(a.at(top, top));
                    a.sub_row_mul(r, top, &q);
                    if !a.at(r, top).is_zero() {
                        changed = true;
                    }
                }
            }
            // clear the row
            for c in top + 1..ncols {
                while !a.at(top, c).is_zero() {
                    if a.at(top, c).abs() < a.at(top, top).abs() {
                        for r in 0..nrows {
                            a.data.swap(r * ncols + top, r * ncols + c);
                        }
                        changed = true;
                    }
                    let q = a.at(top, c).div_floor(a.at(top, top));
                    for r in 0..nrows {
                        let delta = &q * a.at(r, top);
                        *a.at_mut(r, c) -= delta;
                    }
                    if !a.at(top, c).is_zero() {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        out.push(a.at(top, top).abs());
        top += 1;
    }
    out.retain(|d| !d.is_zero());
    // enforce the divisibility chain
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let (a, b) = (out[i].clone(), out[j].clone());
            let g = a.gcd(&b);
            let l = &a * &b / &g;
            out[i] = g;
            out[j] = l;
        }
    }
    out
}

/// Basis of linearly independent integer vectors spanning a sublattice of Z^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeBasis {
    ambient_dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl SublatticeBasis {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<BigInt>>) -> Self {
        assert!(basis.iter().all(|v| v.len() == ambient_dim), "vector length mismatch");
        let m = IntMatrix::from_rows(basis.clone());
        assert_eq!(m.rank(), basis.len(), "basis vectors not linearly independent");
        SublatticeBasis { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn as_matrix(&self) -> IntMatrix {
        if self.basis.is_empty() {
            IntMatrix::zero(0, self.ambient_dim)
        } else {
            IntMatrix::from_rows(self.basis.clone())
        }
    }

    /// Canonical basis of the spanned lattice: the nonzero rows of the HNF.
    pub fn canonical(&self) -> Vec<Vec<BigInt>> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let (h, _) = hermite_normal_form(&self.as_matrix());
        (0..h.rows())
            .filter(|&r| h.row(r).iter().any(|x| !x.is_zero()))
            .map(|r| h.row(r).to_vec())
            .collect()
    }

    /// Membership test: does `v` lie in the spanned lattice?
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        let canon = self.canonical();
        for row in &canon {
            let pivot_col = match row.iter().position(|x| !x.is_zero()) {
                Some(c) => c,
                None => continue,
            };
            if !w[pivot_col].is_zero() {
                let q = w[pivot_col].div_floor(&row[pivot_col]);
                if !q.is_zero() {
                    for (wi, ri) in w.iter_mut().zip(row) {
                        *wi -= &q * ri;
                    }
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }
}

/// Saturated basis of the right kernel {v in Z^cols : m v = 0}.
///
/// Computed from the HNF of the transpose: the transform rows that map to zero
/// rows form a basis, and because the transform is unimodular the resulting
/// lattice is the full (saturated) integer kernel.
pub fn integer_kernel_basis(m: &IntMatrix) -> SublatticeBasis {
    let n = m.cols();
    if m.rows() == 0 {
        let eye = IntMatrix::identity(n);
        return SublatticeBasis::new(n, eye.row_vecs());
    }
    let t = m.transpose();
    let (h, u) = hermite_normal_form(&t);
    let mut basis = Vec::new();
    for r in 0..h.rows() {
        if h.row(r).iter().all(|x| x.is_zero()) {
            basis.push(u.row(r).to_vec());
        }
    }
    SublatticeBasis::new(n, basis)
}

/// Saturation: the lattice span_Q(b) intersected with Z^n, via a double kernel.
pub fn saturate_lattice(b: &SublatticeBasis) -> SublatticeBasis {
    let n = b.ambient_dim();
    if b.rank() == 0 {
        return SublatticeBasis::new(n, Vec::new());
    }
    let ortho = integer_kernel_basis(&b.as_matrix());
    integer_kernel_basis(&ortho.as_matrix())
}

/// Index of a full-rank sublattice inside its saturation: the product of the
/// Smith invariant factors of any basis matrix.
pub fn saturation_index(b: &SublatticeBasis) -> BigInt {
    if b.rank() == 0 {
        return BigInt::one();
    }
    smith_invariants(&b.as_matrix()).iter().product()
}

pub fn gcd_of(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Divide a vector by the gcd of its entries (no-op on the zero vector).
pub fn primitive_vector(v: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_of(v);
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn hnf_identity() {
        let id = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_zero() {
        let z = IntMatrix::zero(2, 2);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_example_2x2() {
        // oracle: elementary row operations bring [[2,4],[1,1]] to [[1,1],[0,2]]
        let a = m(&[vec![2, 4], vec![1, 1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(u.mul(&a), h);
        // |det u| = 1
        let det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
        assert_eq!(det.abs(), BigInt::one());
    }

    #[test]
    fn snf_diag_2_3() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_invariants(&a), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_identity4() {
        let inv = smith_invariants(&IntMatrix::identity(4));
        assert_eq!(inv, vec![BigInt::one(); 4]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = m(&[vec![4, 2, 8], vec![2, 8, 2], vec![6, 10, 10]]);
        let inv = smith_invariants(&a);
        for w in inv.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain violated: {inv:?}");
        }
    }

    #[test]
    fn kernel_simple() {
        let a = m(&[vec![1, 1]]);
        let k = integer_kernel_basis(&a);
        assert_eq!(k.rank(), 1);
        let v = &k.vectors()[0];
        assert!(v == &[BigInt::from(1), BigInt::from(-1)] || v == &[BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn kernel_annihilates() {
        let a = m(&[vec![2, -1, 3], vec![1, 1, 1]]);
        let k = integer_kernel_basis(&a);
        assert_eq!(k.rank(), 1);
        for v in k.vectors() {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn saturate_doubled_square() {
        let b = SublatticeBasis::new(
            2,
            vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(2)]],
        );
        let s = saturate_lattice(&b);
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[BigInt::from(1), BigInt::from(0)]));
        assert!(s.contains(&[BigInt::from(0), BigInt::from(1)]));
        assert_eq!(saturation_index(&b), BigInt::from(4));
    }

    #[test]
    fn saturate_idempotent_and_monotone() {
        let b = SublatticeBasis::new(
            3,
            vec![
                vec![BigInt::from(2), BigInt::from(4), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(6), BigInt::from(3)],
            ],
        );
        let s1 = saturate_lattice(&b);
        let s2 = saturate_lattice(&s1);
        assert_eq!(s1.canonical(), s2.canonical());
        for v in b.vectors() {
            assert!(s1.contains(v));
        }
    }

    #[test]
    fn membership_rejects_outside() {
        let b = SublatticeBasis::new(2, vec![vec![BigInt::from(1), BigInt::from(2)]]);
        assert!(b.contains(&[BigInt::from(2), BigInt::from(4)]));
        assert!(!b.contains(&[BigInt::from(1), BigInt::from(1)]));
    }
}
