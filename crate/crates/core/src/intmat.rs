//! Dense integer matrices, Smith normal form and the lattice utilities built on it.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Rows `rs` and columns `cs` of `self`.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Self {
        let mut m = Self::zeros(rs.len(), cs.len());
        for (a, &i) in rs.iter().enumerate() {
            for (b, &j) in cs.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// `self` stacked on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, if it is at most `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i128 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        sign * a[n * n - 1]
    }

    /// Coefficients `c_0..=c_n` of `det(t I - self)`, lowest degree first.
    pub fn charpoly(&self) -> Vec<i128> {
        assert!(self.is_square());
        let n = self.rows;
        let a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut c = vec![0i128; n + 1];
        c[n] = 1;
        let mut m = vec![0i128; n * n];
        for k in 1..=n {
            // m <- a*m + c[n-k+1] I
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0;
                    for l in 0..n {
                        s += a[i * n + l] * m[l * n + j];
                    }
                    next[i * n + j] = s;
                }
                next[i * n + i] += c[n - k + 1];
            }
            m = next;
            let mut tr = 0;
            for i in 0..n {
                for l in 0..n {
                    tr += a[i * n + l] * m[l * n + i];
                }
            }
            c[n - k] = -tr / k as i128;
        }
        c
    }

    /// Coefficients of `det(I + t self)`, i.e. the elementary symmetric functions
    /// of the eigenvalues.
    pub fn det_one_plus(&self) -> Vec<i128> {
        let n = self.rows;
        let c = self.charpoly();
        (0..=n).map(|j| if j % 2 == 0 { c[n - j] } else { -c[n - j] }).collect()
    }

    /// Smith normal form `P * self * Q = D`.
    pub fn smith(&self) -> SmithForm {
        SmithForm::compute(self)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(l, j)];
                }
            }
        }
        out
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// `left * m * right = diag`, with `left`, `right` unimodular and the
/// nonzero diagonal entries positive, each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    fn compute(m: &IntMatrix) -> SmithForm {
        let (r, c) = (m.rows, m.cols);
        let mut a = m.clone();
        let mut p = IntMatrix::identity(r);
        let mut q = IntMatrix::identity(c);
        let mut qi = IntMatrix::identity(c);
        let mut rank = 0;

        'outer: for t in 0..r.min(c) {
            loop {
                // smallest nonzero entry of the trailing block
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let v = a[(i, j)].abs();
                        if v != 0 && best.is_none_or(|(bi, bj)| v < a[(bi, bj)].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    break 'outer;
                };
                swap_rows(&mut a, t, bi);
                swap_rows(&mut p, t, bi);
                swap_cols(&mut a, t, bj);
                swap_cols(&mut q, t, bj);
                swap_rows(&mut qi, t, bj);

                let piv = a[(t, t)];
                let mut dirty = false;
                for i in t + 1..r {
                    let f = a[(i, t)] / piv;
                    if f != 0 {
                        add_row(&mut a, i, t, -f);
                        add_row(&mut p, i, t, -f);
                    }
                    dirty |= a[(i, t)] != 0;
                }
                for j in t + 1..c {
                    let f = a[(t, j)] / piv;
                    if f != 0 {
                        add_col(&mut a, j, t, -f);
                        add_col(&mut q, j, t, -f);
                        add_row(&mut qi, t, j, f);
                    }
                    dirty |= a[(t, j)] != 0;
                }
                if dirty {
                    continue;
                }
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[(i, j)] % piv != 0));
                if let Some(i) = bad {
                    add_row(&mut a, t, i, 1);
                    add_row(&mut p, t, i, 1);
                    continue;
                }
                break;
            }
            if a[(t, t)] < 0 {
                for j in 0..c {
                    a[(t, j)] = -a[(t, j)];
                }
                for j in 0..r {
                    p[(t, j)] = -p[(t, j)];
                }
            }
            rank += 1;
        }
        let diag = (0..r.min(c)).map(|i| a[(i, i)]).collect();
        SmithForm {
            diag,
            left: p,
            right: q,
            right_inv: qi,
            rank,
        }
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<i64> {
        self.diag.iter().copied().filter(|&d| d > 1).collect()
    }

    pub fn torsion_order(&self) -> u128 {
        self.torsion().iter().map(|&d| d as u128).product()
    }

    /// Basis (as columns) of the integer kernel; saturated by construction.
    pub fn kernel_basis(&self) -> IntMatrix {
        let c = self.right.cols;
        let cols: Vec<usize> = (self.rank..c).collect();
        let rows: Vec<usize> = (0..c).collect();
        self.right.submatrix(&rows, &cols)
    }
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for k in 0..m.cols {
            m.data.swap(i * m.cols + k, j * m.cols + k);
        }
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for k in 0..m.rows {
            m.data.swap(k * m.cols + i, k * m.cols + j);
        }
    }
}

/// row_dst += f * row_src
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, f: i64) {
    for k in 0..m.cols {
        let v = m[(src, k)];
        m[(dst, k)] += f * v;
    }
}

/// col_dst += f * col_src
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, f: i64) {
    for k in 0..m.rows {
        let v = m[(k, src)];
        m[(k, dst)] += f * v;
    }
}

/// Integer left inverse `L` (with `L * b = I`) of a matrix whose columns span
/// a saturated sublattice. Fails if the column span is not saturated.
pub fn left_inverse(b: &IntMatrix) -> Result<IntMatrix> {
    let s = b.smith();
    let k = b.cols();
    if s.rank != k || s.diag.iter().any(|&d| d != 1) {
        return Err(Error::Dimension("columns do not span a saturated sublattice".into()));
    }
    // b = P^-1 [I;0] Q^-1  =>  L = Q [I 0] P
    let rows: Vec<usize> = (0..k).collect();
    let cols: Vec<usize> = (0..b.rows()).collect();
    let top = s.left.submatrix(&rows, &cols);
    Ok(&s.right * &top)
}

/// An integer solution `c` of `b * c = v`, if one exists.
pub fn solve_integer(b: &IntMatrix, v: &[i64]) -> Option<Vec<i64>> {
    let s = b.smith();
    let w = s.left.mul_vec(v);
    let mut y = vec![0i64; b.cols()];
    for (i, &wi) in w.iter().enumerate() {
        if i < s.rank {
            let d = s.diag[i];
            if wi % d != 0 {
                return None;
            }
            y[i] = wi / d;
        } else if wi != 0 {
            return None;
        }
    }
    Some(s.right.mul_vec(&y))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    num_integer::Integer::lcm(&a, &b)
}
