//! Arithmetic over GF(3) and small dense matrices.
//!
//! Everything here is a plain value: operations never mutate their inputs
//! and return fresh vectors and matrices.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Index, Mul, MulAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of GF(3), stored as 0, 1 or 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Gf3(u8);

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    pub const TWO: Gf3 = Gf3(2);
    pub const ALL: [Gf3; 3] = [Gf3(0), Gf3(1), Gf3(2)];

    /// Reduces any integer mod 3.
    pub fn new(v: i64) -> Self {
        Gf3(v.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; every nonzero element is its own inverse.
    pub fn inv(self) -> Option<Gf3> {
        match self.0 {
            0 => None,
            v => Some(Gf3(v)),
        }
    }

    pub fn pow(self, e: u32) -> Gf3 {
        (0..e).fold(Gf3::ONE, |acc, _| acc * self)
    }
}

impl TryFrom<u8> for Gf3 {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        if v < 3 {
            Ok(Gf3(v))
        } else {
            Err(Error::Parse(format!("{v} is not a GF(3) digit")))
        }
    }
}

impl From<Gf3> for u8 {
    fn from(v: Gf3) -> u8 {
        v.0
    }
}

impl fmt::Debug for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    fn add(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + rhs.0) % 3)
    }
}

impl AddAssign for Gf3 {
    fn add_assign(&mut self, rhs: Gf3) {
        *self = *self + rhs;
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    fn sub(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + 3 - rhs.0) % 3)
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    fn neg(self) -> Gf3 {
        Gf3((3 - self.0) % 3)
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl MulAssign for Gf3 {
    fn mul_assign(&mut self, rhs: Gf3) {
        *self = *self * rhs;
    }
}

impl Sum for Gf3 {
    fn sum<I: Iterator<Item = Gf3>>(iter: I) -> Gf3 {
        iter.fold(Gf3::ZERO, Add::add)
    }
}

/// A coordinate vector over GF(3).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GfVector(Vec<Gf3>);

impl GfVector {
    pub fn new(entries: Vec<Gf3>) -> Self {
        GfVector(entries)
    }

    /// Builds a vector from integer digits, reducing each mod 3.
    pub fn from_ints(digits: &[i64]) -> Self {
        GfVector(digits.iter().map(|&d| Gf3::new(d)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        GfVector(vec![Gf3::ZERO; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![Gf3::ZERO; len];
        v[i] = Gf3::ONE;
        GfVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Gf3] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Gf3> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn dot(&self, other: &GfVector) -> Gf3 {
        debug_assert_eq!(self.len(), other.len());
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: Gf3) -> GfVector {
        GfVector(self.iter().map(|x| x * s).collect())
    }

    /// All vectors of the given length in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = GfVector> {
        let total = 3usize.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![Gf3::ZERO; len];
            for slot in v.iter_mut().rev() {
                *slot = Gf3((code % 3) as u8);
                code /= 3;
            }
            GfVector(v)
        })
    }

    pub fn first_nonzero(&self) -> Option<(usize, Gf3)> {
        self.iter().enumerate().find(|(_, x)| !x.is_zero())
    }
}

impl Index<usize> for GfVector {
    type Output = Gf3;
    fn index(&self, i: usize) -> &Gf3 {
        &self.0[i]
    }
}

impl Add for &GfVector {
    type Output = GfVector;
    fn add(self, rhs: &GfVector) -> GfVector {
        debug_assert_eq!(self.len(), rhs.len());
        GfVector(self.iter().zip(rhs.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GfVector {
    type Output = GfVector;
    fn sub(self, rhs: &GfVector) -> GfVector {
        debug_assert_eq!(self.len(), rhs.len());
        GfVector(self.iter().zip(rhs.iter()).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", digits.join(":"))
    }
}

/// A dense row-major matrix over GF(3).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf3>,
}

impl GfMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Gf3>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(GfMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        GfMatrix { rows, cols, data: vec![Gf3::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![Gf3::ONE; n])
    }

    pub fn diag(entries: &[Gf3]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    /// Stacks row vectors; all rows must share one length. An empty slice
    /// gives a 0x`cols` matrix only through [`GfMatrix::zeros`].
    pub fn from_rows(rows: &[GfVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter()).collect();
        Ok(GfMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor from integer rows (reduced mod 3).
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let vs: Vec<GfVector> = rows.iter().map(|r| GfVector::from_ints(r)).collect();
        Self::from_rows(&vs)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
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

    pub fn get(&self, i: usize, j: usize) -> Gf3 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Gf3) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Gf3] {
        &self.data
    }

    pub fn row(&self, i: usize) -> GfVector {
        GfVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<GfVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> GfVector {
        GfVector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn scale(&self, s: Gf3) -> GfMatrix {
        GfMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(GfMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn mat_mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = GfMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `v·M`.
    pub fn left_mul(&self, v: &GfVector) -> Result<GfVector> {
        if v.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, got: v.len() });
        }
        Ok(GfVector((0..self.cols).map(|j| (0..self.rows).map(|i| v[i] * self.get(i, j)).sum()).collect()))
    }

    /// Matrix times column vector, `M·v`.
    pub fn right_mul(&self, v: &GfVector) -> Result<GfVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, got: v.len() });
        }
        Ok(GfVector((0..self.rows).map(|i| self.row(i).dot(v)).collect()))
    }

    /// Reduced row echelon form and rank. The shape is kept; zero rows
    /// sink to the bottom.
    pub fn rref(&self) -> (GfMatrix, usize) {
        let (r, _, rank) = self.rref_with_transform();
        (r, rank)
    }

    /// Like [`GfMatrix::rref`] but also returns the invertible `T` with
    /// `T·self = rref`.
    pub fn rref_with_transform(&self) -> (GfMatrix, GfMatrix, usize) {
        let mut m = self.clone();
        let mut t = GfMatrix::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(src, pivot_row);
            t.swap_rows(src, pivot_row);
            let inv = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            m.scale_row(pivot_row, inv);
            t.scale_row(pivot_row, inv);
            for i in 0..self.rows {
                let f = m.get(i, col);
                if i != pivot_row && !f.is_zero() {
                    m.add_row_multiple(i, pivot_row, -f);
                    t.add_row_multiple(i, pivot_row, -f);
                }
            }
            pivot_row += 1;
        }
        (m, t, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// A basis of `{x : self·x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<GfVector> {
        let (r, rank) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        for i in 0..rank {
            let col = (0..self.cols).find(|&j| !r.get(i, j).is_zero()).expect("nonzero row");
            pivots.push(col);
        }
        (0..self.cols)
            .filter(|j| !pivots.contains(j))
            .map(|free| {
                let mut x = vec![Gf3::ZERO; self.cols];
                x[free] = Gf3::ONE;
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(i, free);
                }
                GfVector(x)
            })
            .collect()
    }

    /// Cofactor expansion of a 3x3 determinant.
    pub fn det3(&self) -> Result<Gf3> {
        if self.shape() != (3, 3) {
            return Err(Error::Shape(format!("det3 needs 3x3, got {}x{}", self.rows, self.cols)));
        }
        let a = |i, j| self.get(i, j);
        Ok(a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)))
    }

    /// Determinant of any square matrix by elimination.
    pub fn det(&self) -> Result<Gf3> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Gf3::ONE;
        for col in 0..n {
            let Some(src) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return Ok(Gf3::ZERO);
            };
            if src != col {
                m.swap_rows(src, col);
                det = -det;
            }
            let pivot = m.get(col, col);
            det *= pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in col + 1..n {
                let f = m.get(i, col) * inv;
                if !f.is_zero() {
                    m.add_row_multiple(i, col, -f);
                }
            }
        }
        Ok(det)
    }

    pub fn mat_inv(&self) -> Result<GfMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let (_, t, rank) = self.rref_with_transform();
        if rank < self.rows {
            return Err(Error::NotInvertible);
        }
        Ok(t)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: Gf3) {
        for j in 0..self.cols {
            let v = self.get(i, j) * s;
            self.set(i, j, v);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: Gf3) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + f * self.get(src, j);
            self.set(dst, j, v);
        }
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> GfMatrix {
        GfMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for a in Gf3::ALL {
            assert_eq!(a + Gf3::ZERO, a);
            assert_eq!(a * Gf3::ONE, a);
            assert_eq!(a + (-a), Gf3::ZERO);
            if let Some(i) = a.inv() {
                assert_eq!(a * i, Gf3::ONE);
            }
            for b in Gf3::ALL {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!(a - b, a + (-b));
                for c in Gf3::ALL {
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
        assert_eq!(Gf3::TWO * Gf3::TWO, Gf3::ONE);
        assert_eq!(Gf3::ZERO.inv(), None);
    }

    #[test]
    fn rref_examples() {
        let (r, rank) = GfMatrix::identity(3).rref();
        assert_eq!(rank, 3);
        assert_eq!(r, GfMatrix::identity(3));

        let (r, rank) = m(&[&[1, 2, 0], &[2, 1, 0]]).rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), GfVector::from_ints(&[1, 2, 0]));
        assert!(r.row(1).is_zero());

        let a = m(&[&[1, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0]]);
        assert_eq!(a.rref(), (a.clone(), 2));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(GfMatrix::zeros(1, 3).nullspace().len(), 3);
        assert!(GfMatrix::identity(3).nullspace().is_empty());
        let basis = m(&[&[1, 0, 0, 0, 0, 0]]).nullspace();
        assert_eq!(basis.len(), 5);
        assert!(basis.iter().all(|v| v[0].is_zero()));
    }

    #[test]
    fn det3_examples() {
        assert_eq!(GfMatrix::identity(3).det3().unwrap(), Gf3::ONE);
        assert_eq!(m(&[&[1, 2, 1], &[1, 2, 1], &[0, 1, 2]]).det3().unwrap(), Gf3::ZERO);
        assert_eq!(GfMatrix::diag(&[Gf3::ONE, Gf3::TWO, Gf3::TWO]).det3().unwrap(), Gf3::ONE);
        assert!(matches!(GfMatrix::identity(2).det3(), Err(Error::Shape(_))));
    }

    #[test]
    fn inverse_examples() {
        let id = GfMatrix::identity(3);
        assert_eq!(id.mat_inv().unwrap(), id);
        let two = GfMatrix::diag(&[Gf3::TWO; 3]);
        assert_eq!(two.mat_inv().unwrap(), two);
        assert_eq!(m(&[&[1, 2], &[2, 1]]).mat_inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn transform_reproduces_rref() {
        let a = m(&[&[0, 2, 1, 1], &[1, 1, 0, 2], &[1, 0, 2, 0]]);
        let (r, t, _) = a.rref_with_transform();
        assert_eq!(t.mat_mul(&a).unwrap(), r);
    }

    #[test]
    fn det_agrees_with_det3_on_all_small_matrices() {
        // 3^9 = 19683 matrices
        for v in GfVector::all(9) {
            let a = GfMatrix::new(3, 3, v.entries().to_vec()).unwrap();
            assert_eq!(a.det().unwrap(), a.det3().unwrap());
        }
    }

    #[test]
    fn vector_enumeration_is_lexicographic() {
        let all: Vec<_> = GfVector::all(2).collect();
        assert_eq!(all.len(), 9);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
