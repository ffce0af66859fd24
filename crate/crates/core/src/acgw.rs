//! The ACGW interface and the flattened span category built on top of it.

use std::fmt::Debug;

use serde::Serialize;

use crate::error::{Error, Result};

/// An ACGW double category: horizontal and vertical monics sharing an initial object,
/// with complements in both directions and mixed pullbacks.
///
/// Vertical composition is written in diagrammatic order: `ver_compose(f, g)` is `f` then `g`.
pub trait Acgw: Clone + Debug + PartialEq {
    type Obj: Clone + PartialEq + Debug;
    type Hor: Clone + PartialEq + Debug;
    type Ver: Clone + PartialEq + Debug;

    fn empty(&self) -> Self::Obj;
    fn is_empty(&self, a: &Self::Obj) -> bool;
    /// Cardinality or dimension.
    fn size(&self, a: &Self::Obj) -> usize;
    fn describe(&self, a: &Self::Obj) -> String;

    fn hor_src(&self, m: &Self::Hor) -> Self::Obj;
    fn hor_tgt(&self, m: &Self::Hor) -> Self::Obj;
    fn ver_src(&self, e: &Self::Ver) -> Self::Obj;
    fn ver_tgt(&self, e: &Self::Ver) -> Self::Obj;

    fn hor_id(&self, a: &Self::Obj) -> Self::Hor;
    fn ver_id(&self, a: &Self::Obj) -> Self::Ver;
    fn hor_compose(&self, f: &Self::Hor, g: &Self::Hor) -> Result<Self::Hor>;
    fn ver_compose(&self, f: &Self::Ver, g: &Self::Ver) -> Result<Self::Ver>;
    fn hor_from_empty(&self, a: &Self::Obj) -> Self::Hor;
    fn ver_from_empty(&self, a: &Self::Obj) -> Self::Ver;

    /// `c`: the complement `B ⫽ A ⇒ B` of `A ↪ B`.
    fn complement_h(&self, m: &Self::Hor) -> Self::Ver;
    /// `k`: the complement `B ⫻ A ↪ B` of `A ⇒ B`.
    fn complement_v(&self, e: &Self::Ver) -> Self::Hor;
    /// Corner of the cospan `A ↪ C ⇐ B`, returned as `(P, P ⇒ A, P ↪ B)`.
    fn mixed_pullback(&self, m: &Self::Hor, e: &Self::Ver) -> Result<(Self::Obj, Self::Ver, Self::Hor)>;

    /// The `x : A ↪ B` with `x ; n = m`, if any.
    fn hor_factor(&self, m: &Self::Hor, n: &Self::Hor) -> Option<Self::Hor>;
    /// The `x : A ⇒ B` with `x ; f = e`, if any.
    fn ver_factor(&self, e: &Self::Ver, f: &Self::Ver) -> Option<Self::Ver>;

    fn hor_is_iso(&self, m: &Self::Hor) -> bool;
    fn ver_is_iso(&self, e: &Self::Ver) -> bool;
    /// The vertical iso `A ⇒ B` naming the same identification as the horizontal iso `A ↪ B`.
    fn hor_iso_to_ver(&self, m: &Self::Hor) -> Result<Self::Ver>;
    fn ver_iso_to_hor(&self, e: &Self::Ver) -> Result<Self::Hor>;

    /// Whether the mixed square
    /// ```text
    /// P ⇒ A
    /// ↓   ↓
    /// B ⇒ C     (left P ↪ B, right A ↪ C)
    /// ```
    /// is pseudo-commutative.
    fn mixed_is_pseudo(&self, top: &Self::Ver, left: &Self::Hor, right: &Self::Hor, bottom: &Self::Ver) -> bool;

    fn check_hor(&self, m: &Self::Hor) -> Result<()>;
    fn check_ver(&self, e: &Self::Ver) -> Result<()>;
}

/// A morphism of the flat category: the span `src ⇐ mid ↪ tgt`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatMor<C: Acgw> {
    pub src: C::Obj,
    pub mid: C::Obj,
    pub tgt: C::Obj,
    pub back: C::Ver,
    pub front: C::Hor,
}

impl<C: Acgw> FlatMor<C> {
    pub fn new(inst: &C, back: C::Ver, front: C::Hor) -> Result<Self> {
        let mid = inst.ver_src(&back);
        if inst.hor_src(&front) != mid {
            return Err(Error::pre("span legs have different sources"));
        }
        Ok(FlatMor { src: inst.ver_tgt(&back), mid, tgt: inst.hor_tgt(&front), back, front })
    }

    pub fn identity(inst: &C, a: &C::Obj) -> Self {
        FlatMor {
            src: a.clone(),
            mid: a.clone(),
            tgt: a.clone(),
            back: inst.ver_id(a),
            front: inst.hor_id(a),
        }
    }

    pub fn zero(inst: &C, a: &C::Obj, b: &C::Obj) -> Self {
        FlatMor {
            src: a.clone(),
            mid: inst.empty(),
            tgt: b.clone(),
            back: inst.ver_from_empty(a),
            front: inst.hor_from_empty(b),
        }
    }

    /// The span `src ⇐ src ↪ tgt` of a horizontal morphism.
    pub fn from_hor(inst: &C, m: &C::Hor) -> Self {
        let a = inst.hor_src(m);
        FlatMor { src: a.clone(), mid: a.clone(), tgt: inst.hor_tgt(m), back: inst.ver_id(&a), front: m.clone() }
    }

    /// The span `tgt ⇐ src ↪ src` of a vertical morphism, a map from its target to its source.
    pub fn from_ver(inst: &C, e: &C::Ver) -> Self {
        let a = inst.ver_src(e);
        FlatMor { src: inst.ver_tgt(e), mid: a.clone(), tgt: a.clone(), back: e.clone(), front: inst.hor_id(&a) }
    }

    pub fn is_zero(&self, inst: &C) -> bool {
        inst.is_empty(&self.mid)
    }

    pub fn is_iso(&self, inst: &C) -> bool {
        inst.ver_is_iso(&self.back) && inst.hor_is_iso(&self.front)
    }

    pub fn check(&self, inst: &C) -> Result<()> {
        inst.check_ver(&self.back)?;
        inst.check_hor(&self.front)?;
        if inst.ver_src(&self.back) != self.mid || inst.hor_src(&self.front) != self.mid {
            return Err(Error::pre("span legs do not start at the middle object"));
        }
        if inst.ver_tgt(&self.back) != self.src || inst.hor_tgt(&self.front) != self.tgt {
            return Err(Error::pre("span legs do not end at the span's source and target"));
        }
        Ok(())
    }
}

/// Compose `f : A → B` then `g : B → C`; the middle is `Ā ⊘_B B̄`.
pub fn compose_flat<C: Acgw>(inst: &C, f: &FlatMor<C>, g: &FlatMor<C>) -> Result<FlatMor<C>> {
    if f.tgt != g.src {
        return Err(Error::pre("flat composition: target of the first span is not the source of the second"));
    }
    let (p, p_fmid, p_gmid) = inst.mixed_pullback(&f.front, &g.back)?;
    Ok(FlatMor {
        src: f.src.clone(),
        mid: p,
        tgt: g.tgt.clone(),
        back: inst.ver_compose(&p_fmid, &f.back)?,
        front: inst.hor_compose(&p_gmid, &g.front)?,
    })
}

/// The inverse of a span whose legs are both isomorphisms.
pub fn flat_inverse<C: Acgw>(inst: &C, f: &FlatMor<C>) -> Result<FlatMor<C>> {
    if !f.is_iso(inst) {
        return Err(Error::pre("span is not an isomorphism"));
    }
    Ok(FlatMor {
        src: f.tgt.clone(),
        mid: f.mid.clone(),
        tgt: f.src.clone(),
        back: inst.hor_iso_to_ver(&f.front)?,
        front: inst.ver_iso_to_hor(&f.back)?,
    })
}

/// Whether some isomorphism of middles commutes with both legs.
pub fn span_equiv<C: Acgw>(inst: &C, f: &FlatMor<C>, g: &FlatMor<C>) -> bool {
    if f.src != g.src || f.tgt != g.tgt {
        return false;
    }
    let Some(phi) = inst.hor_factor(&f.front, &g.front) else {
        return false;
    };
    if !inst.hor_is_iso(&phi) {
        return false;
    }
    let Ok(phi_v) = inst.hor_iso_to_ver(&phi) else {
        return false;
    };
    matches!(inst.ver_compose(&phi_v, &g.back), Ok(b) if b == f.back)
}

/// The iso `A ↪ B` over `C` when `m : A ↪ C` and `n : B ↪ C` are the same subobject.
pub fn hor_iso_between<C: Acgw>(inst: &C, m: &C::Hor, n: &C::Hor) -> Option<C::Hor> {
    inst.hor_factor(m, n).filter(|x| inst.hor_is_iso(x))
}

pub fn ver_iso_between<C: Acgw>(inst: &C, e: &C::Ver, f: &C::Ver) -> Option<C::Ver> {
    inst.ver_factor(e, f).filter(|x| inst.ver_is_iso(x))
}

pub fn same_hor_subobject<C: Acgw>(inst: &C, m: &C::Hor, n: &C::Hor) -> bool {
    hor_iso_between(inst, m, n).is_some()
}

pub fn same_ver_subobject<C: Acgw>(inst: &C, e: &C::Ver, f: &C::Ver) -> bool {
    ver_iso_between(inst, e, f).is_some()
}

/// Pullback of two horizontal morphisms into `D`, via `B ∩ C = B ⫻ ((D ⫽ C) ⊘ B)`.
/// Returns `(P, P ↪ B, P ↪ C)`.
pub fn hor_pullback<C: Acgw>(inst: &C, m: &C::Hor, n: &C::Hor) -> Result<(C::Obj, C::Hor, C::Hor)> {
    if inst.hor_tgt(m) != inst.hor_tgt(n) {
        return Err(Error::pre("horizontal pullback of morphisms with different targets"));
    }
    let e = inst.complement_h(n);
    let (_, q_to_b, _) = inst.mixed_pullback(m, &e)?;
    let p_to_b = inst.complement_v(&q_to_b);
    let p_to_d = inst.hor_compose(&p_to_b, m)?;
    let p_to_c = inst
        .hor_factor(&p_to_d, n)
        .ok_or_else(|| Error::internal("horizontal pullback does not factor through the second leg"))?;
    Ok((inst.hor_src(&p_to_b), p_to_b, p_to_c))
}

/// Pullback of two vertical morphisms into `D`. Returns `(P, P ⇒ B, P ⇒ C)`.
pub fn ver_pullback<C: Acgw>(inst: &C, e: &C::Ver, f: &C::Ver) -> Result<(C::Obj, C::Ver, C::Ver)> {
    if inst.ver_tgt(e) != inst.ver_tgt(f) {
        return Err(Error::pre("vertical pullback of morphisms with different targets"));
    }
    let m = inst.complement_v(f);
    let (_, _, q_to_b) = inst.mixed_pullback(&m, e)?;
    let p_to_b = inst.complement_h(&q_to_b);
    let p_to_d = inst.ver_compose(&p_to_b, e)?;
    let p_to_c = inst
        .ver_factor(&p_to_d, f)
        .ok_or_else(|| Error::internal("vertical pullback does not factor through the second leg"))?;
    Ok((inst.ver_src(&p_to_b), p_to_b, p_to_c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareClass {
    NotASquare,
    Commuting,
    /// Pseudo-commutative; in both instances these are exactly the cartesian squares.
    PseudoCommutative,
}

/// A square with both boundary classes mixed: `P ⇒ A`, `P ↪ B`, `A ↪ C`, `B ⇒ C`.
#[derive(Clone, Debug)]
pub struct MixedSquare<C: Acgw> {
    pub top: C::Ver,
    pub left: C::Hor,
    pub right: C::Hor,
    pub bottom: C::Ver,
}

impl<C: Acgw> MixedSquare<C> {
    /// The cartesian square on the cospan `A ↪ C ⇐ B`.
    pub fn pullback(inst: &C, m: &C::Hor, e: &C::Ver) -> Result<Self> {
        let (_, top, left) = inst.mixed_pullback(m, e)?;
        Ok(MixedSquare { top, left, right: m.clone(), bottom: e.clone() })
    }

    pub fn corner(&self, inst: &C) -> C::Obj {
        inst.ver_src(&self.top)
    }

    pub fn classify(&self, inst: &C) -> SquareClass {
        let shaped = inst.ver_src(&self.top) == inst.hor_src(&self.left)
            && inst.ver_tgt(&self.top) == inst.hor_src(&self.right)
            && inst.hor_tgt(&self.left) == inst.ver_src(&self.bottom)
            && inst.hor_tgt(&self.right) == inst.ver_tgt(&self.bottom);
        if !shaped {
            return SquareClass::NotASquare;
        }
        if inst.mixed_is_pseudo(&self.top, &self.left, &self.right, &self.bottom) {
            SquareClass::PseudoCommutative
        } else {
            SquareClass::NotASquare
        }
    }
}

/// Classify a square of horizontal morphisms `P ↪ A ↪ D`, `P ↪ B ↪ D`.
pub fn classify_hor_square<C: Acgw>(inst: &C, top: &C::Hor, left: &C::Hor, right: &C::Hor, bottom: &C::Hor) -> SquareClass {
    let (Ok(a), Ok(b)) = (inst.hor_compose(top, right), inst.hor_compose(left, bottom)) else {
        return SquareClass::NotASquare;
    };
    if a != b {
        return SquareClass::NotASquare;
    }
    match hor_pullback(inst, right, bottom) {
        Ok((_, q_a, _)) if same_hor_subobject(inst, top, &q_a) => SquareClass::PseudoCommutative,
        _ => SquareClass::Commuting,
    }
}

/// Classify a square of vertical morphisms `P ⇒ A ⇒ D`, `P ⇒ B ⇒ D`.
pub fn classify_ver_square<C: Acgw>(inst: &C, top: &C::Ver, left: &C::Ver, right: &C::Ver, bottom: &C::Ver) -> SquareClass {
    let (Ok(a), Ok(b)) = (inst.ver_compose(top, right), inst.ver_compose(left, bottom)) else {
        return SquareClass::NotASquare;
    };
    if a != b {
        return SquareClass::NotASquare;
    }
    match ver_pullback(inst, right, bottom) {
        Ok((_, q_a, _)) if same_ver_subobject(inst, top, &q_a) => SquareClass::PseudoCommutative,
        _ => SquareClass::Commuting,
    }
}
