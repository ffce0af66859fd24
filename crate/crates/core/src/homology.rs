//! Homology by double complement, induced spans on homology, and quasi-isomorphisms.

use crate::acgw::{
    compose_flat, flat_inverse, hor_iso_between, same_hor_subobject, same_ver_subobject, span_equiv,
    ver_iso_between, Acgw, FlatMor,
};
use crate::chains::{
    coker_hor, compose_chain_maps, hull, ker_ver, ChainComplex, ChainMap, ChainSes, HorChainMor, VerChainMor,
};
use crate::error::{Error, Result};
use crate::finset::{FinSet, FinSetObj, SetInjection};
use crate::snake::les_degree;

/// Both complement orders at one degree.
///
/// First order: `K = X_i ⫻ X̄_i`, then `H = K ⫽ X̄_{i+1}`. Second order: `Q = X_i ⫽ X̄_{i+1}`,
/// then `H' = Q ⫻ X̄_i`. `iso` is the canonical span `H ⇐ P ↪ H'` through `P = K ⊘ Q`.
#[derive(Clone, Debug)]
pub struct HomologyGrid<C: Acgw> {
    pub degree: i64,
    pub k: C::Hor,
    pub q: C::Ver,
    pub h: C::Obj,
    pub h_to_k: C::Ver,
    pub h2: C::Obj,
    pub h2_to_q: C::Hor,
    pub iso: FlatMor<C>,
}

pub fn homology_grid<C: Acgw>(inst: &C, x: &ChainComplex<C>, i: i64) -> Result<HomologyGrid<C>> {
    let above = x.tr(inst, i + 1);
    let below = x.tr(inst, i);
    let k = inst.complement_v(&below.back);
    let into_k = inst
        .hor_factor(&above.front, &k)
        .ok_or_else(|| Error::pre(format!("degree {i}: X̄_{} does not land in X_{i} ⫻ X̄_{i}", i + 1)))?;
    let h_to_k = inst.complement_h(&into_k);
    let q = inst.complement_h(&above.front);
    let onto_q = inst
        .ver_factor(&below.back, &q)
        .ok_or_else(|| Error::pre(format!("degree {i}: X̄_{i} does not land in X_{i} ⫽ X̄_{}", i + 1)))?;
    let h2_to_q = inst.complement_v(&onto_q);
    let (_, p_k, p_q) = inst.mixed_pullback(&k, &q)?;
    if !same_ver_subobject(inst, &p_k, &h_to_k) || !same_hor_subobject(inst, &p_q, &h2_to_q) {
        return Err(Error::internal(format!("degree {i}: the two complement orders disagree")));
    }
    let back = ver_iso_between(inst, &p_k, &h_to_k).expect("checked above");
    let front = hor_iso_between(inst, &p_q, &h2_to_q).expect("checked above");
    let iso = FlatMor::new(inst, back, front)?;
    Ok(HomologyGrid { degree: i, k, q, h: inst.ver_src(&h_to_k), h_to_k, h2: inst.hor_src(&h2_to_q), h2_to_q, iso })
}

pub fn homology_at<C: Acgw>(inst: &C, x: &ChainComplex<C>, i: i64) -> Result<C::Obj> {
    Ok(homology_grid(inst, x, i)?.h)
}

/// `(degree, H_i)` over the support.
pub fn homology<C: Acgw>(inst: &C, x: &ChainComplex<C>) -> Result<Vec<(i64, C::Obj)>> {
    x.degrees().map(|i| Ok((i, homology_at(inst, x, i)?))).collect()
}

pub fn is_exact<C: Acgw>(inst: &C, x: &ChainComplex<C>) -> Result<bool> {
    for i in x.degrees() {
        if !inst.is_empty(&homology_at(inst, x, i)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The flat iso from an object `O ↪ Q` onto the first-order `H`.
pub fn transport_from_q<C: Acgw>(inst: &C, g: &HomologyGrid<C>, o_to_q: &C::Hor) -> Result<FlatMor<C>> {
    let phi = hor_iso_between(inst, o_to_q, &g.h2_to_q)
        .ok_or_else(|| Error::internal(format!("degree {}: object is not the second-order homology", g.degree)))?;
    compose_flat(inst, &FlatMor::from_hor(inst, &phi), &flat_inverse(inst, &g.iso)?)
}

/// The flat iso from an object `O ⇒ K` onto the first-order `H`.
pub fn transport_from_k<C: Acgw>(inst: &C, g: &HomologyGrid<C>, o_to_k: &C::Ver) -> Result<FlatMor<C>> {
    let psi = ver_iso_between(inst, o_to_k, &g.h_to_k)
        .ok_or_else(|| Error::internal(format!("degree {}: object is not the first-order homology", g.degree)))?;
    flat_inverse(inst, &FlatMor::from_ver(inst, &psi))
}

/// The span `H_i(X) ⇐ M ↪ H_i(Y)` induced by `X ⇐ Z ↪ Y`, composed from the connecting spans of
/// `X ⫻ Z ↪ X ⇐ Z` and `Z ↪ Y ⇐ Y ⫽ Z`.
pub fn h_on_map<C: Acgw>(inst: &C, f: &ChainMap<C>, i: i64) -> Result<FlatMor<C>> {
    let down = f.ver_part(inst);
    let (_, k) = ker_ver(inst, &down)?;
    let first = les_degree(inst, &ChainSes { hor: k, ver: down }, i)?;
    let up = f.hor_part(inst);
    let (_, c) = coker_hor(inst, &up)?;
    let second = les_degree(inst, &ChainSes { hor: up, ver: c }, i)?;
    compose_flat(inst, &first.t[1], &second.t[0])
}

/// Induced spans at every degree of the hull of the three supports.
pub fn h_on_map_all<C: Acgw>(inst: &C, f: &ChainMap<C>) -> Result<Vec<(i64, FlatMor<C>)>> {
    let (lo, hi) = f.degree_hull();
    (lo..=hi).map(|i| Ok((i, h_on_map(inst, f, i)?))).collect()
}

/// Whether `H(g ∘ f)` is span-equivalent to `H(g) ∘ H(f)` at every degree.
pub fn check_functoriality<C: Acgw>(inst: &C, f: &ChainMap<C>, g: &ChainMap<C>) -> Result<bool> {
    let gf = compose_chain_maps(inst, f, g)?;
    let (lo, hi) = hull(&[&f.src, &f.mid, &f.tgt, &g.mid, &g.tgt]);
    for i in lo..=hi {
        let whole = h_on_map(inst, &gf, i)?;
        let parts = compose_flat(inst, &h_on_map(inst, f, i)?, &h_on_map(inst, g, i)?)?;
        if !span_equiv(inst, &whole, &parts) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_quasi_iso<C: Acgw>(inst: &C, f: &ChainMap<C>) -> Result<bool> {
    for (_, h) in h_on_map_all(inst, f)? {
        if !h.is_iso(inst) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(is_quasi_iso(f), is_exact(Y ⫽ X))`.
pub fn qiso_iff_complement_exact_hor<C: Acgw>(inst: &C, f: &HorChainMor<C>) -> Result<(bool, bool)> {
    let (z, _) = coker_hor(inst, f)?;
    Ok((is_quasi_iso(inst, &f.to_chain_map(inst))?, is_exact(inst, &z)?))
}

/// `(is_quasi_iso(f), is_exact(Y ⫻ Z))`.
pub fn qiso_iff_complement_exact_ver<C: Acgw>(inst: &C, f: &VerChainMor<C>) -> Result<(bool, bool)> {
    let (x, _) = ker_ver(inst, f)?;
    Ok((is_quasi_iso(inst, &f.to_chain_map(inst))?, is_exact(inst, &x)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `H ↪ X`.
    Horizontal,
    /// `H ⇒ X`, a map `X → H`.
    Vertical,
}

/// The homology of a set complex as a complex with empty transitions, with its morphism to `X`.
pub fn homology_complex(x: &ChainComplex<FinSet>, dir: Direction) -> Result<(ChainComplex<FinSet>, ChainMap<FinSet>)> {
    let inst = &FinSet;
    let (lo, hi) = (x.lo(), x.hi());
    let mut objs = Vec::new();
    let mut legs = Vec::new();
    for i in lo..=hi {
        let g = homology_grid(inst, x, i)?;
        legs.push(inst.ver_compose(&g.h_to_k, &g.k)?);
        objs.push(g.h);
    }
    let trans: Vec<FlatMor<FinSet>> =
        (lo + 1..=hi).map(|k| FlatMor::zero(inst, &objs[(k - lo) as usize], &objs[(k - lo - 1) as usize])).collect();
    let tlegs: Vec<SetInjection> = (lo + 1..=hi).map(|i| inst.hor_from_empty(&x.tr(inst, i).mid)).collect();
    let h = if objs.is_empty() { ChainComplex::zero() } else { ChainComplex::new(lo, objs, trans)? };
    let map = match dir {
        Direction::Horizontal => HorChainMor::new(h.clone(), x.clone(), legs, tlegs)?.to_chain_map(inst),
        Direction::Vertical => VerChainMor::new(h.clone(), x.clone(), legs, tlegs)?.to_chain_map(inst),
    };
    Ok((h, map))
}

/// `|H_i| = |X_i| − |X̄_i| − |X̄_{i+1}|` at one degree.
pub fn cardinality_law<C: Acgw>(inst: &C, x: &ChainComplex<C>, i: i64) -> Result<bool> {
    let h = inst.size(&homology_at(inst, x, i)?) as i64;
    let n = inst.size(&x.obj(inst, i)) as i64;
    let below = inst.size(&x.tr(inst, i).mid) as i64;
    let above = inst.size(&x.tr(inst, i + 1).mid) as i64;
    Ok(h == n - below - above)
}

/// Element names of a set homology object, for reports.
pub fn names(h: &FinSetObj) -> Vec<String> {
    h.names()
}
