//! Free-module oracle: set complexes become partial-permutation matrix complexes over 𝔽_p, whose
//! homology dimensions come from ranks alone. Also the free functor into the linear instance.

use serde::Serialize;

use crate::acgw::{Acgw, FlatMor};
use crate::chains::ChainComplex;
use crate::error::{Error, Result};
use crate::finset::{FinSet, SetInjection};
use crate::linear::{Linear, MatEpi, MatMono, VectObj};
use crate::matrix::Matrix;
use crate::snake::WeakSnakeInput;

/// Differentials `d_i : 𝔽_p^{n_i} → 𝔽_p^{n_{i−1}}` as row-major 0/1 matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeComplex {
    pub p: u32,
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[k]` is `d_{lo+1+k}`, with `dims[k]` rows and `dims[k+1]` columns.
    pub diffs: Vec<Vec<Vec<u32>>>,
}

impl FreeComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    /// `d_i`, or `None` outside the support.
    pub fn diff(&self, i: i64) -> Option<&Vec<Vec<u32>>> {
        if i <= self.lo || i > self.hi() {
            None
        } else {
            Some(&self.diffs[(i - self.lo - 1) as usize])
        }
    }

    /// Whether `d_{i−1} d_i = 0` for every `i`.
    pub fn squares_to_zero(&self) -> bool {
        (self.lo + 2..=self.hi()).all(|i| {
            let (a, b) = (self.diff(i - 1).unwrap(), self.diff(i).unwrap());
            let inner = self.dim(i - 1);
            a.iter().all(|row| {
                (0..self.dim(i)).all(|c| (0..inner).map(|k| row[k] * b[k][c]).sum::<u32>() % self.p == 0)
            })
        })
    }
}

/// `d_i` has a 1 at `(front(t), back(t))` for every transition element `t ∈ X̄_i`.
pub fn free_complex(x: &ChainComplex<FinSet>, p: u32) -> FreeComplex {
    let inst = &FinSet;
    if x.support_is_empty() {
        return FreeComplex { p, lo: 0, dims: vec![], diffs: vec![] };
    }
    let dims: Vec<usize> = x.degrees().map(|i| x.obj(inst, i).len()).collect();
    let diffs = (x.lo() + 1..=x.hi())
        .map(|i| {
            let t = x.tr(inst, i);
            let mut d = vec![vec![0u32; x.obj(inst, i).len()]; x.obj(inst, i - 1).len()];
            for k in 0..t.mid.len() {
                d[t.front.apply(k)][t.back.apply(k)] = 1;
            }
            d
        })
        .collect();
    FreeComplex { p, lo: x.lo(), dims, diffs }
}

/// Rank over 𝔽_p by plain Gaussian elimination on a scratch copy.
pub fn rank_mod_p(m: &[Vec<u32>], p: u32) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&v| (v % p) as u64).collect()).collect();
    let p = p as u64;
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                let pivot = a[rank].clone();
                for (v, pv) in a[r].iter_mut().zip(&pivot) {
                    *v = (*v + p * p - f * pv) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `(degree, n_i − rank d_i − rank d_{i+1})` over the support.
pub fn rank_homology_dims(f: &FreeComplex) -> Vec<(i64, usize)> {
    let rank = |i: i64| f.diff(i).map_or(0, |d| rank_mod_p(d, f.p));
    (f.lo..=f.hi()).map(|i| (i, f.dim(i) - rank(i) - rank(i + 1))).collect()
}

/// The free functor on a horizontal injection: `e_k ↦ e_{m(k)}`.
pub fn free_hor(m: &SetInjection, p: u32) -> MatMono {
    let mut mat = Matrix::zeros(m.tgt().len(), m.src().len(), p);
    for k in 0..m.src().len() {
        mat.set(m.apply(k), k, 1);
    }
    MatMono { src: VectObj { dim: m.src().len(), p }, tgt: VectObj { dim: m.tgt().len(), p }, mat }
}

/// The free functor on a vertical injection `A ⇒ B`: the projection `𝔽^B ↠ 𝔽^A`.
pub fn free_ver(e: &SetInjection, p: u32) -> MatEpi {
    let m = free_hor(e, p);
    MatEpi { src: m.src, tgt: m.tgt, mat: m.mat.transpose() }
}

/// `P_B M P_A⁻¹`.
pub fn twist_hor(m: &MatMono, pa: &Matrix, pb: &Matrix) -> MatMono {
    let inv = pa.inverse().expect("basis change is invertible");
    MatMono { src: m.src, tgt: m.tgt, mat: pb.mul(&m.mat).mul(&inv) }
}

/// `P_A E P_B⁻¹` for `E : B ↠ A`.
pub fn twist_ver(e: &MatEpi, pa: &Matrix, pb: &Matrix) -> MatEpi {
    let inv = pb.inverse().expect("basis change is invertible");
    MatEpi { src: e.src, tgt: e.tgt, mat: pa.mul(&e.mat).mul(&inv) }
}

/// Image of a set complex under the free functor, with an optional basis change per object.
///
/// `bases(key, n)` supplies the change of basis for object `key`; keys are `2i` for `X_i` and
/// `2i − 1` for `X̄_i`.
pub fn linearize_complex(
    x: &ChainComplex<FinSet>,
    p: u32,
    mut bases: impl FnMut(i64, usize) -> Matrix,
) -> Result<ChainComplex<Linear>> {
    let lin = Linear::new(p)?;
    if x.support_is_empty() {
        return Ok(ChainComplex::zero());
    }
    let inst = &FinSet;
    let obj_basis: Vec<Matrix> = x.degrees().map(|i| bases(2 * i, x.obj(inst, i).len())).collect();
    let at = |i: i64| &obj_basis[(i - x.lo()) as usize];
    let objs = x.degrees().map(|i| lin.obj(x.obj(inst, i).len())).collect();
    let mut trans = Vec::new();
    for i in x.lo() + 1..=x.hi() {
        let t = x.tr(inst, i);
        let pt = bases(2 * i - 1, t.mid.len());
        let back = twist_ver(&free_ver(&t.back, p), &pt, at(i));
        let front = twist_hor(&free_hor(&t.front, p), &pt, at(i - 1));
        trans.push(FlatMor::new(&lin, back, front)?);
    }
    ChainComplex::new(x.lo(), objs, trans)
}

/// Image of a set weak-snake input under the free functor, with a basis change per object
/// (`bases(k, n)`, `k` indexing `A B C X Y Z A' B' C'`).
pub fn linearize_weak(
    s: &WeakSnakeInput<FinSet>,
    p: u32,
    mut bases: impl FnMut(usize, usize) -> Matrix,
) -> Result<WeakSnakeInput<Linear>> {
    if !crate::matrix::is_prime(p) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    let objs = crate::snake::weak_objects(&FinSet, s);
    let b: Vec<Matrix> = objs.iter().enumerate().map(|(k, o)| bases(k, o.len())).collect();
    let h = |m: &SetInjection, a: usize, t: usize| twist_hor(&free_hor(m, p), &b[a], &b[t]);
    let v = |e: &SetInjection, a: usize, t: usize| twist_ver(&free_ver(e, p), &b[a], &b[t]);
    let (a, bb, c, x, y, z, a2, b2, c2) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    Ok(WeakSnakeInput {
        ab: h(&s.ab, a, bb),
        cb: v(&s.cb, c, bb),
        xy: h(&s.xy, x, y),
        zy: v(&s.zy, z, y),
        a2b2: h(&s.a2b2, a2, b2),
        c2b2: v(&s.c2b2, c2, b2),
        xa: v(&s.xa, x, a),
        xa2: h(&s.xa2, x, a2),
        yb: v(&s.yb, y, bb),
        yb2: h(&s.yb2, y, b2),
        zc: v(&s.zc, z, c),
        zc2: h(&s.zc2, z, c2),
    })
}

/// Degrees where the combinatorial and rank homology sizes differ, with both values.
pub fn disagreements(x: &ChainComplex<FinSet>, p: u32) -> Result<Vec<(i64, usize, usize)>> {
    let mut out = Vec::new();
    for (i, dim) in rank_homology_dims(&free_complex(x, p)) {
        let h = FinSet.size(&crate::homology::homology_at(&FinSet, x, i)?);
        if h != dim {
            out.push((i, h, dim));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSetObj;

    fn s(names: &[&str]) -> FinSetObj {
        FinSetObj::new(names).unwrap()
    }

    fn tr(from: &[&str], mid: &[&str], to: &[&str]) -> FlatMor<FinSet> {
        FlatMor::new(
            &FinSet,
            SetInjection::inclusion(&s(mid), &s(from)).unwrap(),
            SetInjection::inclusion(&s(mid), &s(to)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, 1]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 5), 2);
        assert_eq!(rank_mod_p(&[], 2), 0);
    }

    #[test]
    fn three_term_complex() {
        let y = ChainComplex::new(
            1,
            vec![s(&["b", "c"]), s(&["a", "b"]), s(&["a"])],
            vec![tr(&["a", "b"], &["b"], &["b", "c"]), tr(&["a"], &["a"], &["a", "b"])],
        )
        .unwrap();
        let f = free_complex(&y, 2);
        assert!(f.squares_to_zero());
        assert_eq!(f.diff(3).unwrap(), &vec![vec![1], vec![0]]);
        assert!(disagreements(&y, 2).unwrap().is_empty());
    }

    #[test]
    fn linearized_homology_dims() {
        let y = ChainComplex::new(1, vec![s(&["b", "c"]), s(&["a", "b"])], vec![tr(&["a", "b"], &["b"], &["b", "c"])]).unwrap();
        let l = linearize_complex(&y, 3, |_, n| Matrix::identity(n, 3)).unwrap();
        let lin = Linear::new(3).unwrap();
        assert_eq!(crate::homology::homology_at(&lin, &l, 2).unwrap().dim, 1);
        assert_eq!(crate::homology::homology_at(&lin, &l, 1).unwrap().dim, 1);
    }
}
