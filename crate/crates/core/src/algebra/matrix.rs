//! Dense matrices over [`FieldElement`] with exact elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::{Field, FieldElement};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::one();
        }
        m
    }

    pub fn diagonal(entries: &[FieldElement]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let m = Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        };
        m.field()?;
        Ok(m)
    }

    /// Convenience for tests and fixed tables: integer entries.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Matrix {
            rows: rows.len(),
            cols: C,
            data: rows.iter().flatten().map(|&v| FieldElement::from_int(v)).collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<FieldElement>]) -> Result<Self, Error> {
        let n = cols.first().map_or(0, Vec::len);
        let rows = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        Self::from_rows(rows)
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

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &FieldElement> {
        self.data.iter()
    }

    /// Common field of all entries.
    pub fn field(&self) -> Result<Field, Error> {
        Field::join_all(self.data.iter())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.field()?.join(other.field()?)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero();
                for k in 0..self.cols {
                    if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                        acc = &acc + &(&self[(i, k)] * &other[(k, j)]);
                    }
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, Error> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Field::join_all(v.iter())?.join(self.field()?)?;
        Ok((0..self.rows)
            .map(|i| dot(&self.row(i), v))
            .collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * c).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            m[(i, j)] = &m[(i, j)] - &(&factor * &m[(r, j)]);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
    /// each with a 1 in its free position.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let Echelon { matrix, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(); self.cols];
                v[f] = FieldElement::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&matrix[(r, f)];
                }
                v
            })
            .collect()
    }

    /// One solution of `M x = b` (free variables set to zero), if any.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, Error> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        aug.field()?;
        let Echelon { matrix, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![FieldElement::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<FieldElement, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        self.field()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = FieldElement::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(FieldElement::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    m[(i, j)] = &m[(i, j)] - &(&factor * &m[(c, j)]);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = FieldElement::one();
        }
        aug.field()?;
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return Err(Error::Degenerate);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = ech.matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Matrix {
        let mut out = Self::zeros(self.rows - 1, self.cols - 1);
        let mut oi = 0;
        for i in (0..self.rows).filter(|&i| i != skip_r) {
            let mut oj = 0;
            for j in (0..self.cols).filter(|&j| j != skip_c) {
                out[(oi, oj)] = self[(i, j)].clone();
                oj += 1;
            }
            oi += 1;
        }
        out
    }

    /// Classical adjoint, by cofactors: `adj(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).determinant()?;
                adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        Ok(adj)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(FieldElement::zero(), |acc, (x, y)| &acc + &(x * y))
}

pub fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn det3(a: &[FieldElement; 3], b: &[FieldElement; 3], c: &[FieldElement; 3]) -> FieldElement {
    dot(a, &cross(b, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_ints(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(FieldElement::is_zero));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_ints(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        assert_eq!(m.determinant().unwrap(), fe(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        let sing = Matrix::from_ints(&[[1, 2], [2, 4]]);
        assert_eq!(sing.determinant().unwrap(), fe(0));
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn adjugate_identity() {
        let m = Matrix::from_ints(&[[1, 2, 0], [2, -1, 5], [0, 5, 3]]);
        let adj = m.adjugate().unwrap();
        let det = m.determinant().unwrap();
        assert_eq!(adj.mul(&m).unwrap(), Matrix::identity(3).scale(&det));
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_ints(&[[1, 1], [1, 1]]);
        assert!(m.solve(&[fe(1), fe(2)]).unwrap().is_none());
        assert_eq!(m.solve(&[fe(2), fe(2)]).unwrap().unwrap(), vec![fe(2), fe(0)]);
    }
}
