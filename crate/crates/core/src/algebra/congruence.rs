//! Congruence diagonalization of symmetric matrices.

use super::field::FieldElement;
use super::matrix::Matrix;
use crate::error::Error;

/// Result of [`diagonalize_symmetric`]: `Pᵀ M P = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub diagonal: Matrix,
    pub transform: Matrix,
}

impl Diagonalization {
    pub fn entries(&self) -> Vec<FieldElement> {
        (0..self.diagonal.rows()).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

/// Symmetric Gaussian elimination by simultaneous row and column operations.
///
/// When every remaining diagonal entry vanishes but some `M[i][j] ≠ 0`, the
/// column `i` is replaced by `i + j` first, which puts `2·M[i][j]` on the
/// diagonal.
pub fn diagonalize_symmetric(m: &Matrix) -> Result<Diagonalization, Error> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    m.field()?;
    let n = m.rows();
    let mut a = m.clone();
    let mut p = Matrix::identity(n);

    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                swap_congruent(&mut a, &mut p, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && !a[(i, j)].is_zero())
            {
                add_congruent(&mut a, &mut p, i, j, &FieldElement::one());
                swap_congruent(&mut a, &mut p, k, i);
            } else {
                break;
            }
        }
        let pivot = a[(k, k)].clone();
        for j in k + 1..n {
            if a[(k, j)].is_zero() {
                continue;
            }
            let c = -(&a[(k, j)] / &pivot);
            add_congruent(&mut a, &mut p, j, k, &c);
        }
    }
    debug_assert_eq!(p.transpose().mul(m).unwrap().mul(&p).unwrap(), a);
    Ok(Diagonalization {
        diagonal: a,
        transform: p,
    })
}

/// Column (and row) `dst += c · src` applied to `a`, mirrored in `p`.
fn add_congruent(a: &mut Matrix, p: &mut Matrix, dst: usize, src: usize, c: &FieldElement) {
    let n = a.rows();
    for r in 0..n {
        let v = &a[(r, dst)] + &(c * &a[(r, src)]);
        a[(r, dst)] = v;
    }
    for col in 0..n {
        let v = &a[(dst, col)] + &(c * &a[(src, col)]);
        a[(dst, col)] = v;
    }
    for r in 0..n {
        let v = &p[(r, dst)] + &(c * &p[(r, src)]);
        p[(r, dst)] = v;
    }
}

fn swap_congruent(a: &mut Matrix, p: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for r in 0..n {
        let tmp = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = tmp;
        let tmp = p[(r, i)].clone();
        p[(r, i)] = p[(r, j)].clone();
        p[(r, j)] = tmp;
    }
    for c in 0..n {
        let tmp = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = tmp;
    }
}
