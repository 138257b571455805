//! Lines in `ℙ(W)`, `W = Sym²V*/⟨f⟩`, and their pullback to `ℙ(V*)`.

use std::fmt;

use super::{apolar_check, veronese_square, Sym2Vector};
use crate::algebra::proj::normalize_vector;
use crate::algebra::{scheme_length_from_forms, FieldElement, Form, Matrix};
use crate::conics::QuadraticForm;
use crate::error::Error;
use crate::scheme::LengthThreeScheme;

/// Identifier of the `W*` basis produced by [`w_basis`].
pub const W_BASIS_ID: &str = "adjacent-support";

const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&p| p == (i, j)).expect("i < j < 5")
}

/// Five independent functionals on `Sym²V*` vanishing at `f`, as rows.
///
/// For each coordinate `i`: `uᵢ` if `fᵢ = 0`, otherwise `fⱼuᵢ − fᵢuⱼ` with
/// `j` the next coordinate where `f` is nonzero (none for the last one).
pub fn w_basis(f: &QuadraticForm) -> Matrix {
    let c = Sym2Vector::from_quadratic(f).0;
    let mut rows = Vec::with_capacity(5);
    for i in 0..6 {
        let mut row = vec![FieldElement::zero(); 6];
        if c[i].is_zero() {
            row[i] = FieldElement::one();
        } else if let Some(j) = (i + 1..6).find(|&j| !c[j].is_zero()) {
            row[i] = c[j].clone();
            row[j] = -&c[i];
        } else {
            continue;
        }
        rows.push(row);
    }
    Matrix::from_rows(rows).expect("uniform field")
}

/// Image of a quadric in `W`.
pub fn project(basis: &Matrix, v: &Sym2Vector) -> Vec<FieldElement> {
    basis.mul_vec(&v.0).expect("5x6 basis")
}

/// A line of `ℙ(W)` by Plücker coordinates `pᵢⱼ` (`i < j`, lex order),
/// together with the `W*` basis they refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerLine {
    coords: [FieldElement; 10],
    basis: Matrix,
}

impl PlueckerLine {
    pub fn new(coords: [FieldElement; 10], basis: Matrix) -> Result<Self, Error> {
        if basis.rows() != 5 || basis.cols() != 6 {
            return Err(Error::Dimension("W* basis must be 5x6".into()));
        }
        let n = normalize_vector(&coords)?;
        let line = PlueckerLine {
            coords: std::array::from_fn(|i| n[i].clone()),
            basis,
        };
        if !line.satisfies_relations() {
            return Err(Error::Invalid("coordinates violate the Plücker relations".into()));
        }
        Ok(line)
    }

    /// The line through two independent points of `W`.
    pub fn through(p: &[FieldElement], q: &[FieldElement], basis: Matrix) -> Result<Self, Error> {
        let coords = PAIRS.map(|(i, j)| &(&p[i] * &q[j]) - &(&p[j] * &q[i]));
        Self::new(coords, basis).map_err(|e| match e {
            Error::ZeroVector => Error::Degenerate,
            e => e,
        })
    }

    pub fn coords(&self) -> &[FieldElement; 10] {
        &self.coords
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn p(&self, i: usize, j: usize) -> FieldElement {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coords[pair_index(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.coords[pair_index(j, i)],
            std::cmp::Ordering::Equal => FieldElement::zero(),
        }
    }

    pub fn satisfies_relations(&self) -> bool {
        for i in 0..5 {
            for j in i + 1..5 {
                for k in j + 1..5 {
                    for l in k + 1..5 {
                        let r = &(&(&self.p(i, j) * &self.p(k, l)) - &(&self.p(i, k) * &self.p(j, l)))
                            + &(&self.p(i, l) * &self.p(j, k));
                        if !r.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Two points of `W` spanning the line, read off the rows of the
    /// antisymmetric Plücker matrix.
    pub fn spanning_points(&self) -> [Vec<FieldElement>; 2] {
        let rows: Vec<Vec<FieldElement>> = (0..5)
            .map(|i| (0..5).map(|j| self.p(i, j)).collect::<Vec<_>>())
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        let first = rows[0].clone();
        let second = rows[1..]
            .iter()
            .find(|r| Matrix::from_rows(vec![first.clone(), (*r).clone()]).unwrap().rank() == 2)
            .expect("a nonzero Plücker matrix has rank 2")
            .clone();
        [first, second]
    }
}

impl fmt::Display for PlueckerLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// The line of `ℙ(W)` through the projected Veronese images of an apolar
/// reduced triple.
pub fn trisecant_line(f: &QuadraticForm, z: &LengthThreeScheme) -> Result<PlueckerLine, Error> {
    let LengthThreeScheme::Reduced(pts) = z else {
        return Err(Error::Invalid("trisecant lines are built from reduced schemes".into()));
    };
    if !apolar_check(f, z)?.apolar {
        return Err(Error::NotApolar);
    }
    let basis = w_basis(f);
    let images: Vec<Vec<FieldElement>> = pts.iter().map(|p| project(&basis, &veronese_square(p))).collect();
    let rank = Matrix::from_rows(images.clone())?.rank();
    if rank != 2 {
        return Err(Error::NotApolar);
    }
    let second = if Matrix::from_rows(images[..2].to_vec())?.rank() == 2 { 1 } else { 2 };
    PlueckerLine::through(&images[0], &images[second], basis)
}

/// Conics cutting out `v₂⁻¹` of the plane spanned by `f` and a line of
/// `ℙ(W)`, with the length of their common zero scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeronesePullback {
    pub conics: Vec<Form>,
    /// Hilbert function value at degree 4.
    pub length: usize,
    /// Hilbert function value at degree 3; equal to `length` when the
    /// scheme has stabilized.
    pub length_d3: usize,
}

impl VeronesePullback {
    pub fn is_trisecant(&self) -> bool {
        self.length == 3 && self.length_d3 == 3
    }
}

pub fn veronese_pullback(f: &QuadraticForm, line: &PlueckerLine) -> Result<VeronesePullback, Error> {
    f.require_smooth()?;
    let fv = Sym2Vector::from_quadratic(f);
    let basis = line.basis();
    if project(basis, &fv).iter().any(|c| !c.is_zero()) {
        return Err(Error::Invalid("line basis does not annihilate f".into()));
    }
    let mut rows = vec![fv.0.to_vec()];
    for w in line.spanning_points() {
        let lift = basis.solve(&w)?.ok_or(Error::Degenerate)?;
        rows.push(lift);
    }
    let plane = Matrix::from_rows(rows)?;
    if plane.rank() != 3 {
        return Err(Error::Degenerate);
    }
    let mut conics = Vec::new();
    for c in plane.kernel() {
        // ℓ ↦ c·v₂(ℓ): the mixed coefficients of c are doubled by v₂
        let g = Matrix::from_rows(vec![
            vec![c[0].clone(), c[5].clone(), c[4].clone()],
            vec![c[5].clone(), c[1].clone(), c[3].clone()],
            vec![c[4].clone(), c[3].clone(), c[2].clone()],
        ])?;
        conics.push(Form::from_gram(&g).normalized()?);
    }
    let length = scheme_length_from_forms(&conics, 4)?;
    let length_d3 = scheme_length_from_forms(&conics, 3)?;
    Ok(VeronesePullback {
        conics,
        length,
        length_d3,
    })
}
