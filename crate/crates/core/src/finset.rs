//! Finite sets with injections in both directions, and the pointed-set description of spans.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::acgw::{classify_hor_square, Acgw, FlatMor, SquareClass};
use crate::error::{Error, Result};

/// A finite set of opaque element names, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSetObj {
    elems: Arc<[Arc<str>]>,
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(e)?;
        }
        f.write_str("}")
    }
}

impl Serialize for FinSetObj {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elems.iter().map(|e| &**e))
    }
}

impl FinSetObj {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut v: Vec<Arc<str>> = names.into_iter().map(|s| Arc::from(s.as_ref())).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::pre(format!("duplicate element `{}`", w[0])));
        }
        Ok(FinSetObj { elems: v.into() })
    }

    fn from_sorted(v: Vec<Arc<str>>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        FinSetObj { elems: v.into() }
    }

    pub fn empty() -> Self {
        FinSetObj { elems: Arc::from(Vec::new()) }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Arc<str>] {
        &self.elems
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elems.binary_search_by(|e| (**e).cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// The subset at the given positions, keeping this set's names.
    pub fn subset(&self, mask: &[bool]) -> FinSetObj {
        FinSetObj::from_sorted(self.elems.iter().zip(mask).filter(|(_, &m)| m).map(|(e, _)| e.clone()).collect())
    }

    pub fn names(&self) -> Vec<String> {
        self.elems.iter().map(|e| e.to_string()).collect()
    }
}

/// An injection `src → tgt`; `map[i]` is the position in `tgt` of the image of `src[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetInjection {
    src: FinSetObj,
    tgt: FinSetObj,
    map: Arc<[usize]>,
}

impl SetInjection {
    pub fn new(src: FinSetObj, tgt: FinSetObj, map: Vec<usize>) -> Result<Self> {
        let f = SetInjection { src, tgt, map: map.into() };
        f.validate()?;
        Ok(f)
    }

    fn raw(src: FinSetObj, tgt: FinSetObj, map: Vec<usize>) -> Self {
        SetInjection { src, tgt, map: map.into() }
    }

    /// The injection sending each element to the element of the same name.
    pub fn inclusion(src: &FinSetObj, tgt: &FinSetObj) -> Result<Self> {
        let map = src
            .elems
            .iter()
            .map(|e| tgt.index_of(e).ok_or_else(|| Error::pre(format!("element `{e}` of {src} is not in {tgt}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetInjection::raw(src.clone(), tgt.clone(), map))
    }

    pub fn from_pairs(src: &FinSetObj, tgt: &FinSetObj, pairs: &[(String, String)]) -> Result<Self> {
        let mut map = vec![usize::MAX; src.len()];
        for (a, b) in pairs {
            let i = src.index_of(a).ok_or_else(|| Error::pre(format!("`{a}` is not an element of {src}")))?;
            let j = tgt.index_of(b).ok_or_else(|| Error::pre(format!("`{b}` is not an element of {tgt}")))?;
            if map[i] != usize::MAX {
                return Err(Error::pre(format!("`{a}` is mapped twice")));
            }
            map[i] = j;
        }
        if let Some(i) = map.iter().position(|&j| j == usize::MAX) {
            return Err(Error::pre(format!("`{}` has no image", src.elems[i])));
        }
        SetInjection::new(src.clone(), tgt.clone(), map)
    }

    pub fn validate(&self) -> Result<()> {
        if self.map.len() != self.src.len() {
            return Err(Error::pre("injection map length differs from its source"));
        }
        let mut seen = vec![false; self.tgt.len()];
        for (i, &j) in self.map.iter().enumerate() {
            if j >= self.tgt.len() {
                return Err(Error::pre(format!("image of `{}` is outside {}", self.src.elems[i], self.tgt)));
            }
            if seen[j] {
                return Err(Error::pre(format!("two elements map to `{}`: not injective", self.tgt.elems[j])));
            }
            seen[j] = true;
        }
        Ok(())
    }

    pub fn src(&self) -> &FinSetObj {
        &self.src
    }

    pub fn tgt(&self) -> &FinSetObj {
        &self.tgt
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn image_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.tgt.len()];
        for &j in self.map.iter() {
            m[j] = true;
        }
        m
    }

    pub fn preimage(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.tgt.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = Some(i);
        }
        inv
    }

    /// Whether every element keeps its name.
    pub fn is_inclusion(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| self.src.elems[i] == self.tgt.elems[j])
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        self.map.iter().enumerate().map(|(i, &j)| (self.src.elems[i].to_string(), self.tgt.elems[j].to_string())).collect()
    }
}

/// The instance FFinSet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FinSet;

fn same_obj(a: &FinSetObj, b: &FinSetObj, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::pre(format!("{what}: {a} differs from {b}")))
    }
}

impl Acgw for FinSet {
    type Obj = FinSetObj;
    type Hor = SetInjection;
    type Ver = SetInjection;

    fn empty(&self) -> FinSetObj {
        FinSetObj::empty()
    }

    fn is_empty(&self, a: &FinSetObj) -> bool {
        a.is_empty()
    }

    fn size(&self, a: &FinSetObj) -> usize {
        a.len()
    }

    fn describe(&self, a: &FinSetObj) -> String {
        a.to_string()
    }

    fn hor_src(&self, m: &SetInjection) -> FinSetObj {
        m.src.clone()
    }

    fn hor_tgt(&self, m: &SetInjection) -> FinSetObj {
        m.tgt.clone()
    }

    fn ver_src(&self, e: &SetInjection) -> FinSetObj {
        e.src.clone()
    }

    fn ver_tgt(&self, e: &SetInjection) -> FinSetObj {
        e.tgt.clone()
    }

    fn hor_id(&self, a: &FinSetObj) -> SetInjection {
        SetInjection::raw(a.clone(), a.clone(), (0..a.len()).collect())
    }

    fn ver_id(&self, a: &FinSetObj) -> SetInjection {
        self.hor_id(a)
    }

    fn hor_compose(&self, f: &SetInjection, g: &SetInjection) -> Result<SetInjection> {
        same_obj(&f.tgt, &g.src, "composition")?;
        Ok(SetInjection::raw(f.src.clone(), g.tgt.clone(), f.map.iter().map(|&j| g.map[j]).collect()))
    }

    fn ver_compose(&self, f: &SetInjection, g: &SetInjection) -> Result<SetInjection> {
        self.hor_compose(f, g)
    }

    fn hor_from_empty(&self, a: &FinSetObj) -> SetInjection {
        SetInjection::raw(FinSetObj::empty(), a.clone(), Vec::new())
    }

    fn ver_from_empty(&self, a: &FinSetObj) -> SetInjection {
        self.hor_from_empty(a)
    }

    fn complement_h(&self, m: &SetInjection) -> SetInjection {
        let keep: Vec<bool> = m.image_mask().iter().map(|&b| !b).collect();
        let map = keep.iter().enumerate().filter(|(_, &k)| k).map(|(j, _)| j).collect();
        SetInjection::raw(m.tgt.subset(&keep), m.tgt.clone(), map)
    }

    fn complement_v(&self, e: &SetInjection) -> SetInjection {
        self.complement_h(e)
    }

    fn mixed_pullback(&self, m: &SetInjection, e: &SetInjection) -> Result<(FinSetObj, SetInjection, SetInjection)> {
        same_obj(&m.tgt, &e.tgt, "mixed pullback")?;
        let (im, ie) = (m.preimage(), e.preimage());
        let both: Vec<bool> = im.iter().zip(&ie).map(|(a, b)| a.is_some() && b.is_some()).collect();
        let p = m.tgt.subset(&both);
        let idx: Vec<usize> = both.iter().enumerate().filter(|(_, &b)| b).map(|(c, _)| c).collect();
        let to_a = SetInjection::raw(p.clone(), m.src.clone(), idx.iter().map(|&c| im[c].unwrap()).collect());
        let to_b = SetInjection::raw(p.clone(), e.src.clone(), idx.iter().map(|&c| ie[c].unwrap()).collect());
        Ok((p, to_a, to_b))
    }

    fn hor_factor(&self, m: &SetInjection, n: &SetInjection) -> Option<SetInjection> {
        if m.tgt != n.tgt {
            return None;
        }
        let inv = n.preimage();
        let map = m.map.iter().map(|&c| inv[c]).collect::<Option<Vec<_>>>()?;
        Some(SetInjection::raw(m.src.clone(), n.src.clone(), map))
    }

    fn ver_factor(&self, e: &SetInjection, f: &SetInjection) -> Option<SetInjection> {
        self.hor_factor(e, f)
    }

    fn hor_is_iso(&self, m: &SetInjection) -> bool {
        m.src.len() == m.tgt.len()
    }

    fn ver_is_iso(&self, e: &SetInjection) -> bool {
        self.hor_is_iso(e)
    }

    fn hor_iso_to_ver(&self, m: &SetInjection) -> Result<SetInjection> {
        if !self.hor_is_iso(m) {
            return Err(Error::pre("not a bijection"));
        }
        Ok(m.clone())
    }

    fn ver_iso_to_hor(&self, e: &SetInjection) -> Result<SetInjection> {
        self.hor_iso_to_ver(e)
    }

    fn mixed_is_pseudo(&self, top: &SetInjection, left: &SetInjection, right: &SetInjection, bottom: &SetInjection) -> bool {
        pullback_corner_ok(top, left, right, bottom)
    }

    fn check_hor(&self, m: &SetInjection) -> Result<()> {
        m.validate()
    }

    fn check_ver(&self, e: &SetInjection) -> Result<()> {
        e.validate()
    }
}

/// Commutes, and the corner covers the whole intersection of the two images in the far corner.
fn pullback_corner_ok(top: &SetInjection, left: &SetInjection, right: &SetInjection, bottom: &SetInjection) -> bool {
    if top.src != left.src || top.tgt != right.src || left.tgt != bottom.src || right.tgt != bottom.tgt {
        return false;
    }
    let commutes = (0..top.src.len()).all(|p| right.map[top.map[p]] == bottom.map[left.map[p]]);
    if !commutes {
        return false;
    }
    let (ir, ib) = (right.image_mask(), bottom.image_mask());
    let inter = ir.iter().zip(&ib).filter(|(a, b)| **a && **b).count();
    inter == top.src.len()
}

/// Classify a square of injections `P → B → D`, `P → C → D`.
pub fn classify_square(top: &SetInjection, left: &SetInjection, right: &SetInjection, bottom: &SetInjection) -> SquareClass {
    if top.src != left.src || top.tgt != right.src || left.tgt != bottom.src || right.tgt != bottom.tgt {
        return SquareClass::NotASquare;
    }
    classify_hor_square(&FinSet, top, left, right, bottom)
}

/// A basepoint-preserving function `src₊ → tgt₊`; `None` is the basepoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointedMap {
    pub src: FinSetObj,
    pub tgt: FinSetObj,
    pub map: Vec<Option<usize>>,
}

impl PointedMap {
    pub fn compose(&self, g: &PointedMap) -> Result<PointedMap> {
        same_obj(&self.tgt, &g.src, "pointed composition")?;
        Ok(PointedMap {
            src: self.src.clone(),
            tgt: g.tgt.clone(),
            map: self.map.iter().map(|x| x.and_then(|j| g.map[j])).collect(),
        })
    }

    pub fn identity(a: &FinSetObj) -> PointedMap {
        PointedMap { src: a.clone(), tgt: a.clone(), map: (0..a.len()).map(Some).collect() }
    }
}

/// Send `Ā` along the front leg and everything else of `A` to the basepoint.
pub fn to_pointed(f: &FlatMor<FinSet>) -> PointedMap {
    let mut map = vec![None; f.src.len()];
    for t in 0..f.mid.len() {
        map[f.back.apply(t)] = Some(f.front.apply(t));
    }
    PointedMap { src: f.src.clone(), tgt: f.tgt.clone(), map }
}

/// The span of a pointed map that is injective away from the basepoint; the middle keeps the source's names.
pub fn from_pointed(g: &PointedMap) -> Result<FlatMor<FinSet>> {
    if g.map.len() != g.src.len() {
        return Err(Error::pre("pointed map length differs from its source"));
    }
    let mut hit = vec![false; g.tgt.len()];
    for (i, x) in g.map.iter().enumerate() {
        if let Some(j) = *x {
            if j >= g.tgt.len() {
                return Err(Error::pre("pointed map image out of range"));
            }
            if hit[j] {
                return Err(Error::pre(format!(
                    "two elements, including `{}`, map to `{}`: not injective away from the basepoint",
                    g.src.elems[i], g.tgt.elems[j]
                )));
            }
            hit[j] = true;
        }
    }
    let mask: Vec<bool> = g.map.iter().map(|x| x.is_some()).collect();
    let mid = g.src.subset(&mask);
    let back = SetInjection::inclusion(&mid, &g.src)?;
    let front = SetInjection::raw(mid.clone(), g.tgt.clone(), g.map.iter().flatten().copied().collect());
    FlatMor::new(&FinSet, back, front)
}

/// A vertical morphism `A ⇒ B` as the pointed surjection `B₊ → A₊`.
pub fn ver_to_pointed(e: &SetInjection) -> PointedMap {
    PointedMap { src: e.tgt.clone(), tgt: e.src.clone(), map: e.preimage() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acgw::{compose_flat, span_equiv, MixedSquare};

    fn s(names: &[&str]) -> FinSetObj {
        FinSetObj::new(names).unwrap()
    }

    fn inc(a: &[&str], b: &[&str]) -> SetInjection {
        SetInjection::inclusion(&s(a), &s(b)).unwrap()
    }

    #[test]
    fn complement_of_singleton() {
        let c = FinSet.complement_h(&inc(&["a"], &["a", "b"]));
        assert_eq!(c.src(), &s(&["b"]));
        assert!(c.is_inclusion());
    }

    #[test]
    fn complement_of_empty_is_identity() {
        let b = s(&["a", "b"]);
        let c = FinSet.complement_h(&FinSet.hor_from_empty(&b));
        assert_eq!(c, FinSet.ver_id(&b));
    }

    #[test]
    fn complement_is_involutive() {
        let m = inc(&["b"], &["a", "b", "c"]);
        assert_eq!(FinSet.complement_v(&FinSet.complement_h(&m)), m);
        let full = FinSet.ver_id(&s(&["a", "b"]));
        assert!(FinSet.complement_v(&full).src().is_empty());
    }

    #[test]
    fn duplicate_elements_rejected() {
        assert!(FinSetObj::new(["a", "a"]).is_err());
    }

    #[test]
    fn non_injective_rejected() {
        let r = SetInjection::new(s(&["a", "b"]), s(&["x"]), vec![0, 0]);
        assert!(r.is_err());
    }

    #[test]
    fn mixed_pullback_is_intersection() {
        let (p, _, _) = FinSet.mixed_pullback(&inc(&["a", "b"], &["a", "b", "c"]), &inc(&["b", "c"], &["a", "b", "c"])).unwrap();
        assert_eq!(p, s(&["b"]));
        let (q, _, _) = FinSet.mixed_pullback(&inc(&["a"], &["a", "b"]), &inc(&["b"], &["a", "b"])).unwrap();
        assert!(q.is_empty());
    }

    #[test]
    fn mixed_pullback_needs_shared_target() {
        assert!(FinSet.mixed_pullback(&inc(&["a"], &["a"]), &inc(&["a"], &["a", "b"])).is_err());
    }

    #[test]
    fn mixed_pullback_uses_target_names() {
        let c = s(&["x", "y"]);
        let m = SetInjection::from_pairs(&s(&["p"]), &c, &[("p".into(), "y".into())]).unwrap();
        let e = SetInjection::from_pairs(&s(&["q", "r"]), &c, &[("q".into(), "x".into()), ("r".into(), "y".into())]).unwrap();
        let (p, to_a, to_b) = FinSet.mixed_pullback(&m, &e).unwrap();
        assert_eq!(p, s(&["y"]));
        assert_eq!(to_a.pairs(), vec![("y".to_string(), "p".to_string())]);
        assert_eq!(to_b.pairs(), vec![("y".to_string(), "r".to_string())]);
        let sq = MixedSquare::pullback(&FinSet, &m, &e).unwrap();
        assert_eq!(sq.classify(&FinSet), SquareClass::PseudoCommutative);
    }

    #[test]
    fn square_classification() {
        let d = ["x", "y", "z"];
        let (b, c) = (["x", "y"], ["x", "z"]);
        let good = classify_square(&inc(&["x"], &b), &inc(&["x"], &c), &inc(&b, &d), &inc(&c, &d));
        assert_eq!(good, SquareClass::PseudoCommutative);
        let e: [&str; 0] = [];
        let short = classify_square(&inc(&e, &b), &inc(&e, &c), &inc(&b, &d), &inc(&c, &d));
        assert_eq!(short, SquareClass::Commuting);
        let twisted = SetInjection::from_pairs(&s(&["x"]), &s(&c), &[("x".into(), "z".into())]).unwrap();
        let bad = classify_square(&inc(&["x"], &b), &twisted, &inc(&b, &d), &inc(&c, &d));
        assert_eq!(bad, SquareClass::NotASquare);
    }

    fn span(a: &[&str], abar: &[&str], b: &[&str]) -> FlatMor<FinSet> {
        FlatMor::new(&FinSet, inc(abar, a), inc(abar, b)).unwrap()
    }

    #[test]
    fn disjoint_transitions_compose_to_zero() {
        let f = span(&["1", "2"], &["2"], &["2", "3"]);
        let g = span(&["2", "3"], &["3"], &["3"]);
        assert!(compose_flat(&FinSet, &f, &g).unwrap().is_zero(&FinSet));
    }

    #[test]
    fn partial_injection_composite() {
        let f = span(&["1", "2"], &["2"], &["2", "3"]);
        let g = span(&["2", "3"], &["2"], &["2"]);
        let h = compose_flat(&FinSet, &f, &g).unwrap();
        assert!(span_equiv(&FinSet, &h, &span(&["1", "2"], &["2"], &["2"])));
        assert_eq!(to_pointed(&h), to_pointed(&f).compose(&to_pointed(&g)).unwrap());
    }

    #[test]
    fn span_equivalence_cases() {
        let f = span(&["1", "2"], &["2"], &["2", "3"]);
        assert!(span_equiv(&FinSet, &f, &f));
        let mid = s(&["m"]);
        let relabeled = FlatMor::new(
            &FinSet,
            SetInjection::from_pairs(&mid, &s(&["1", "2"]), &[("m".into(), "2".into())]).unwrap(),
            SetInjection::from_pairs(&mid, &s(&["2", "3"]), &[("m".into(), "2".into())]).unwrap(),
        )
        .unwrap();
        assert!(span_equiv(&FinSet, &f, &relabeled));
        let moved = FlatMor::new(
            &FinSet,
            inc(&["2"], &["1", "2"]),
            SetInjection::from_pairs(&s(&["2"]), &s(&["2", "3"]), &[("2".into(), "3".into())]).unwrap(),
        )
        .unwrap();
        assert!(!span_equiv(&FinSet, &f, &moved));
    }

    #[test]
    fn pointed_round_trip() {
        let f = span(&["1", "2"], &["2"], &["2", "3"]);
        let g = to_pointed(&f);
        assert_eq!(g.map, vec![None, Some(0)]);
        assert!(span_equiv(&FinSet, &from_pointed(&g).unwrap(), &f));
        let zero = FlatMor::zero(&FinSet, &s(&["1"]), &s(&["2"]));
        assert_eq!(to_pointed(&zero).map, vec![None]);
        let id = FlatMor::identity(&FinSet, &s(&["1", "2"]));
        assert_eq!(to_pointed(&id), PointedMap::identity(&s(&["1", "2"])));
    }

    #[test]
    fn two_to_one_rejected() {
        let g = PointedMap { src: s(&["1", "2"]), tgt: s(&["x"]), map: vec![Some(0), Some(0)] };
        assert!(from_pointed(&g).is_err());
        let constant = PointedMap { src: s(&["1", "2"]), tgt: s(&["x"]), map: vec![None, None] };
        assert!(from_pointed(&constant).unwrap().is_zero(&FinSet));
    }

    #[test]
    fn vertical_as_pointed_surjection() {
        let e = inc(&["a"], &["a", "b"]);
        let p = ver_to_pointed(&e);
        assert_eq!(p.map, vec![Some(0), None]);
    }
}
