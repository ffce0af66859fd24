//! Finite-dimensional 𝔽_p vector spaces: monomorphisms horizontally, reversed epimorphisms vertically.

use std::fmt;

use serde::Serialize;

use crate::acgw::{Acgw, SquareClass};
use crate::error::{Error, Result};
use crate::matrix::{is_prime, Matrix};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct VectObj {
    pub dim: usize,
    pub p: u32,
}

impl fmt::Display for VectObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}", self.p, self.dim)
    }
}

/// A mono `src → tgt` as a `tgt.dim × src.dim` matrix of full column rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatMono {
    pub src: VectObj,
    pub tgt: VectObj,
    pub mat: Matrix,
}

/// A vertical morphism `src ⇒ tgt`: an epi `tgt ↠ src` as a `src.dim × tgt.dim` matrix of full row rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatEpi {
    pub src: VectObj,
    pub tgt: VectObj,
    pub mat: Matrix,
}

impl MatMono {
    pub fn new(src: VectObj, tgt: VectObj, mat: Matrix) -> Result<Self> {
        let m = MatMono { src, tgt, mat };
        Linear { p: src.p }.check_hor(&m)?;
        Ok(m)
    }
}

impl MatEpi {
    pub fn new(src: VectObj, tgt: VectObj, mat: Matrix) -> Result<Self> {
        let e = MatEpi { src, tgt, mat };
        Linear { p: src.p }.check_ver(&e)?;
        Ok(e)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Linear {
    p: u32,
}

impl Default for Linear {
    fn default() -> Self {
        Linear { p: 2 }
    }
}

impl Linear {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::pre(format!("{p} is not prime")));
        }
        Ok(Linear { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn obj(&self, dim: usize) -> VectObj {
        VectObj { dim, p: self.p }
    }

    fn mono(&self, src: usize, tgt: usize, mat: Matrix) -> MatMono {
        MatMono { src: self.obj(src), tgt: self.obj(tgt), mat }
    }

    fn epi(&self, src: usize, tgt: usize, mat: Matrix) -> MatEpi {
        MatEpi { src: self.obj(src), tgt: self.obj(tgt), mat }
    }
}

/// The cokernel projection, read off the RREF of the image basis; its kernel is the column space of `m`.
pub fn coker(m: &MatMono) -> Result<MatEpi> {
    let l = Linear { p: m.mat.p() };
    l.check_hor(m)?;
    let b = m.tgt.dim;
    let (r, pivots) = m.mat.transpose().rref();
    let free: Vec<usize> = (0..b).filter(|c| !pivots.contains(c)).collect();
    let p = m.mat.p();
    let mut e = Matrix::zeros(free.len(), b, p);
    for (row, &j) in free.iter().enumerate() {
        e.set(row, j, 1);
        for (k, &pk) in pivots.iter().enumerate() {
            let v = r.get(k, j);
            if v != 0 {
                e.set(row, pk, p - v);
            }
        }
    }
    Ok(l.epi(free.len(), b, e))
}

/// The kernel inclusion, a canonical null-space basis of the epi.
pub fn ker(e: &MatEpi) -> Result<MatMono> {
    let l = Linear { p: e.mat.p() };
    l.check_ver(e)?;
    let n = e.mat.null_space();
    Ok(l.mono(n.cols(), e.tgt.dim, n))
}

/// Factor an arbitrary `b × a` matrix as an epi onto a canonical image basis followed by its inclusion.
pub fn epi_mono_factor(m: &Matrix) -> (MatEpi, MatMono) {
    let l = Linear { p: m.p() };
    let basis = m.transpose().row_space();
    let r = basis.rows();
    let mono = basis.transpose();
    let epi = mono.solve(m).expect("a matrix factors through its column space");
    (l.epi(r, m.cols(), epi), l.mono(r, m.rows(), mono))
}

/// Classify a square of linear maps `P → B → D`, `P → C → D` between monos.
pub fn classify_square_lin(top: &Matrix, left: &Matrix, right: &Matrix, bottom: &Matrix) -> SquareClass {
    let shaped = top.cols() == left.cols()
        && top.rows() == right.cols()
        && left.rows() == bottom.cols()
        && right.rows() == bottom.rows();
    if !shaped || right.mul(top) != bottom.mul(left) {
        return SquareClass::NotASquare;
    }
    let inter = right.rank() + bottom.rank() - right.hstack(bottom).rank();
    if top.rank() == top.cols() && top.cols() == inter {
        SquareClass::PseudoCommutative
    } else {
        SquareClass::Commuting
    }
}

fn same(a: &VectObj, b: &VectObj, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::pre(format!("{what}: {a} differs from {b}")))
    }
}

impl Acgw for Linear {
    type Obj = VectObj;
    type Hor = MatMono;
    type Ver = MatEpi;

    fn empty(&self) -> VectObj {
        self.obj(0)
    }

    fn is_empty(&self, a: &VectObj) -> bool {
        a.dim == 0
    }

    fn size(&self, a: &VectObj) -> usize {
        a.dim
    }

    fn describe(&self, a: &VectObj) -> String {
        format!("dim {}", a.dim)
    }

    fn hor_src(&self, m: &MatMono) -> VectObj {
        m.src
    }

    fn hor_tgt(&self, m: &MatMono) -> VectObj {
        m.tgt
    }

    fn ver_src(&self, e: &MatEpi) -> VectObj {
        e.src
    }

    fn ver_tgt(&self, e: &MatEpi) -> VectObj {
        e.tgt
    }

    fn hor_id(&self, a: &VectObj) -> MatMono {
        self.mono(a.dim, a.dim, Matrix::identity(a.dim, self.p))
    }

    fn ver_id(&self, a: &VectObj) -> MatEpi {
        self.epi(a.dim, a.dim, Matrix::identity(a.dim, self.p))
    }

    fn hor_compose(&self, f: &MatMono, g: &MatMono) -> Result<MatMono> {
        same(&f.tgt, &g.src, "composition")?;
        Ok(self.mono(f.src.dim, g.tgt.dim, g.mat.mul(&f.mat)))
    }

    fn ver_compose(&self, f: &MatEpi, g: &MatEpi) -> Result<MatEpi> {
        same(&f.tgt, &g.src, "composition")?;
        Ok(self.epi(f.src.dim, g.tgt.dim, f.mat.mul(&g.mat)))
    }

    fn hor_from_empty(&self, a: &VectObj) -> MatMono {
        self.mono(0, a.dim, Matrix::zeros(a.dim, 0, self.p))
    }

    fn ver_from_empty(&self, a: &VectObj) -> MatEpi {
        self.epi(0, a.dim, Matrix::zeros(0, a.dim, self.p))
    }

    fn complement_h(&self, m: &MatMono) -> MatEpi {
        coker(m).expect("horizontal morphism has full column rank")
    }

    fn complement_v(&self, e: &MatEpi) -> MatMono {
        ker(e).expect("vertical morphism has full row rank")
    }

    fn mixed_pullback(&self, m: &MatMono, e: &MatEpi) -> Result<(VectObj, MatEpi, MatMono)> {
        same(&m.tgt, &e.tgt, "mixed pullback")?;
        let (epi, mono) = epi_mono_factor(&e.mat.mul(&m.mat));
        Ok((epi.src, epi, mono))
    }

    fn hor_factor(&self, m: &MatMono, n: &MatMono) -> Option<MatMono> {
        if m.tgt != n.tgt {
            return None;
        }
        let x = n.mat.solve(&m.mat)?;
        Some(self.mono(m.src.dim, n.src.dim, x))
    }

    fn ver_factor(&self, e: &MatEpi, f: &MatEpi) -> Option<MatEpi> {
        if e.tgt != f.tgt {
            return None;
        }
        let gt = f.mat.transpose().solve(&e.mat.transpose())?;
        Some(self.epi(e.src.dim, f.src.dim, gt.transpose()))
    }

    fn hor_is_iso(&self, m: &MatMono) -> bool {
        m.src.dim == m.tgt.dim
    }

    fn ver_is_iso(&self, e: &MatEpi) -> bool {
        e.src.dim == e.tgt.dim
    }

    fn hor_iso_to_ver(&self, m: &MatMono) -> Result<MatEpi> {
        let inv = m.mat.inverse().ok_or_else(|| Error::pre("matrix is not invertible"))?;
        Ok(self.epi(m.src.dim, m.tgt.dim, inv))
    }

    fn ver_iso_to_hor(&self, e: &MatEpi) -> Result<MatMono> {
        let inv = e.mat.inverse().ok_or_else(|| Error::pre("matrix is not invertible"))?;
        Ok(self.mono(e.src.dim, e.tgt.dim, inv))
    }

    fn mixed_is_pseudo(&self, top: &MatEpi, left: &MatMono, right: &MatMono, bottom: &MatEpi) -> bool {
        let shaped = top.src == left.src && top.tgt == right.src && left.tgt == bottom.src && right.tgt == bottom.tgt;
        shaped && left.mat.mul(&top.mat) == bottom.mat.mul(&right.mat)
    }

    fn check_hor(&self, m: &MatMono) -> Result<()> {
        if m.src.p != self.p || m.tgt.p != self.p || m.mat.p() != self.p {
            return Err(Error::pre("morphism over a different field"));
        }
        if m.mat.rows() != m.tgt.dim || m.mat.cols() != m.src.dim {
            return Err(Error::pre(format!(
                "mono matrix is {}x{}, expected {}x{}",
                m.mat.rows(),
                m.mat.cols(),
                m.tgt.dim,
                m.src.dim
            )));
        }
        if m.mat.rank() != m.src.dim {
            return Err(Error::pre("mono matrix is not of full column rank"));
        }
        Ok(())
    }

    fn check_ver(&self, e: &MatEpi) -> Result<()> {
        if e.src.p != self.p || e.tgt.p != self.p || e.mat.p() != self.p {
            return Err(Error::pre("morphism over a different field"));
        }
        if e.mat.rows() != e.src.dim || e.mat.cols() != e.tgt.dim {
            return Err(Error::pre(format!(
                "epi matrix is {}x{}, expected {}x{}",
                e.mat.rows(),
                e.mat.cols(),
                e.src.dim,
                e.tgt.dim
            )));
        }
        if e.mat.rank() != e.src.dim {
            return Err(Error::pre("epi matrix is not of full row rank"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acgw::same_hor_subobject;

    fn mat(rows: &[&[u32]], cols: usize) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols, 2).unwrap()
    }

    fn all_vectors(n: usize) -> Vec<Matrix> {
        (0..1u32 << n)
            .map(|bits| {
                let mut v = Matrix::zeros(n, 1, 2);
                for i in 0..n {
                    v.set(i, 0, (bits >> i) & 1);
                }
                v
            })
            .collect()
    }

    #[test]
    fn coker_of_first_axis() {
        let l = Linear::default();
        let m = MatMono::new(l.obj(1), l.obj(2), mat(&[&[1], &[0]], 1)).unwrap();
        let e = coker(&m).unwrap();
        assert_eq!(e.mat, mat(&[&[0, 1]], 2));
        assert!(same_hor_subobject(&l, &ker(&e).unwrap(), &m));
    }

    #[test]
    fn coker_of_diagonal_by_enumeration() {
        let l = Linear::default();
        let m = MatMono::new(l.obj(1), l.obj(2), mat(&[&[1], &[1]], 1)).unwrap();
        let e = coker(&m).unwrap();
        assert_eq!(e.src.dim, 1);
        let killed: Vec<Vec<Vec<u32>>> = all_vectors(2).into_iter().filter(|v| e.mat.mul(v).is_zero()).map(|v| v.to_rows()).collect();
        assert_eq!(killed, vec![vec![vec![0], vec![0]], vec![vec![1], vec![1]]]);
    }

    #[test]
    fn coker_extremes() {
        let l = Linear::default();
        let zero = l.hor_from_empty(&l.obj(3));
        assert_eq!(coker(&zero).unwrap(), l.ver_id(&l.obj(3)));
        let id = l.hor_id(&l.obj(2));
        assert_eq!(coker(&id).unwrap().src.dim, 0);
    }

    #[test]
    fn ker_examples() {
        let l = Linear::default();
        assert_eq!(ker(&l.ver_id(&l.obj(2))).unwrap().src.dim, 0);
        let to_zero = l.ver_from_empty(&l.obj(2));
        assert_eq!(ker(&to_zero).unwrap(), l.hor_id(&l.obj(2)));
        let e = MatEpi::new(l.obj(1), l.obj(2), mat(&[&[1, 0]], 2)).unwrap();
        assert_eq!(ker(&e).unwrap().mat, mat(&[&[0], &[1]], 1));
        let sum = MatEpi::new(l.obj(1), l.obj(2), mat(&[&[1, 1]], 2)).unwrap();
        assert_eq!(ker(&sum).unwrap().mat, mat(&[&[1], &[1]], 1));
    }

    #[test]
    fn epi_mono_examples() {
        let z = Matrix::zeros(2, 3, 2);
        let (e, m) = epi_mono_factor(&z);
        assert_eq!((e.src.dim, m.src.dim), (0, 0));
        let full = mat(&[&[1, 1], &[0, 1]], 2);
        let (e, m) = epi_mono_factor(&full);
        assert_eq!(m.mat.mul(&e.mat), full);
        assert_eq!(e.src.dim, 2);
        let r1 = mat(&[&[1, 1], &[1, 1]], 2);
        let (e, m) = epi_mono_factor(&r1);
        assert_eq!(e.src.dim, 1);
        assert_eq!(m.mat.mul(&e.mat), r1);
    }

    #[test]
    fn rank_deficient_inputs_rejected() {
        let l = Linear::default();
        assert!(MatMono::new(l.obj(2), l.obj(2), mat(&[&[1, 1], &[1, 1]], 2)).is_err());
        assert!(MatEpi::new(l.obj(2), l.obj(2), mat(&[&[1, 1], &[1, 1]], 2)).is_err());
        assert!(Linear::new(4).is_err());
    }

    #[test]
    fn square_classes() {
        let z = |r, c| Matrix::zeros(r, c, 2);
        assert_eq!(classify_square_lin(&z(0, 0), &z(0, 0), &z(0, 0), &z(0, 0)), SquareClass::PseudoCommutative);
        // two copies of the same line in F2^2: the pullback is 1-dimensional, a zero corner is short
        let line = mat(&[&[1], &[0]], 1);
        let one = mat(&[&[1]], 1);
        assert_eq!(classify_square_lin(&one, &one, &line, &line), SquareClass::PseudoCommutative);
        assert_eq!(classify_square_lin(&z(1, 0), &z(1, 0), &line, &line), SquareClass::Commuting);
        let other = mat(&[&[0], &[1]], 1);
        assert_eq!(classify_square_lin(&one, &one, &line, &other), SquareClass::NotASquare);
    }

    #[test]
    fn mixed_square_is_commutation() {
        let l = Linear::default();
        let m = MatMono::new(l.obj(1), l.obj(2), mat(&[&[1], &[1]], 1)).unwrap();
        let e = MatEpi::new(l.obj(1), l.obj(2), mat(&[&[1, 0]], 2)).unwrap();
        let (p, top, left) = l.mixed_pullback(&m, &e).unwrap();
        assert_eq!(p.dim, 1);
        assert!(l.mixed_is_pseudo(&top, &left, &m, &e));
        let e2 = MatEpi::new(l.obj(1), l.obj(2), mat(&[&[1, 1]], 2)).unwrap();
        let (p2, _, _) = l.mixed_pullback(&m, &e2).unwrap();
        assert_eq!(p2.dim, 0);
    }
}
