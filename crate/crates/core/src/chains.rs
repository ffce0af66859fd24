//! Chain complexes over an ACGW instance, chain maps as levelwise spans, and the complement
//! constructions on horizontal and vertical chain morphisms.

use crate::acgw::{same_ver_subobject, span_equiv, Acgw, FlatMor};
use crate::error::{Error, Result, Violation};

/// Objects `X_i` on a finite support `[lo, hi]` and transitions `X_i ⇐ X̄_i ↪ X_{i-1}` for `lo < i ≤ hi`.
/// Everything outside is `∅`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<C: Acgw> {
    lo: i64,
    objs: Vec<C::Obj>,
    trans: Vec<FlatMor<C>>,
}

impl<C: Acgw> ChainComplex<C> {
    /// `objs[k]` sits in degree `lo + k`; `trans[k]` goes from degree `lo + k + 1` to `lo + k`.
    pub fn new(lo: i64, objs: Vec<C::Obj>, trans: Vec<FlatMor<C>>) -> Result<Self> {
        let want = objs.len().saturating_sub(1);
        if trans.len() != want {
            return Err(Error::pre(format!("{} objects need {want} transitions, got {}", objs.len(), trans.len())));
        }
        for (k, t) in trans.iter().enumerate() {
            let i = lo + k as i64 + 1;
            if t.src != objs[k + 1] || t.tgt != objs[k] {
                return Err(Error::pre(format!("transition {i} does not run from X_{i} to X_{}", i - 1)));
            }
        }
        Ok(ChainComplex { lo, objs, trans })
    }

    pub fn zero() -> Self {
        ChainComplex { lo: 0, objs: Vec::new(), trans: Vec::new() }
    }

    /// A complex with a single object.
    pub fn concentrated(degree: i64, obj: C::Obj) -> Self {
        ChainComplex { lo: degree, objs: vec![obj], trans: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top of the support; below `lo` when the support is empty.
    pub fn hi(&self) -> i64 {
        self.lo + self.objs.len() as i64 - 1
    }

    pub fn support_is_empty(&self) -> bool {
        self.objs.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn obj(&self, inst: &C, i: i64) -> C::Obj {
        self.obj_ref(i).cloned().unwrap_or_else(|| inst.empty())
    }

    fn obj_ref(&self, i: i64) -> Option<&C::Obj> {
        if i < self.lo {
            return None;
        }
        self.objs.get((i - self.lo) as usize)
    }

    /// The transition `X_i ⇐ X̄_i ↪ X_{i-1}`; the zero span where none is stored.
    pub fn tr(&self, inst: &C, i: i64) -> FlatMor<C> {
        if i > self.lo && i <= self.hi() {
            self.trans[(i - self.lo - 1) as usize].clone()
        } else {
            FlatMor::zero(inst, &self.obj(inst, i), &self.obj(inst, i - 1))
        }
    }

    /// Whether every object and transition agrees with `other`'s, including implicit `∅`s.
    pub fn same_as(&self, inst: &C, other: &ChainComplex<C>) -> bool {
        let (lo, hi) = hull(&[self, other]);
        (lo..=hi).all(|i| self.obj(inst, i) == other.obj(inst, i) && self.tr(inst, i) == other.tr(inst, i))
    }
}

/// The smallest interval containing every support; `(0, -1)` when all are empty.
pub fn hull<C: Acgw>(cs: &[&ChainComplex<C>]) -> (i64, i64) {
    let nonempty: Vec<_> = cs.iter().filter(|c| !c.support_is_empty()).collect();
    if nonempty.is_empty() {
        return (0, -1);
    }
    (nonempty.iter().map(|c| c.lo()).min().unwrap(), nonempty.iter().map(|c| c.hi()).max().unwrap())
}

/// Every violated complex condition: leg validity and the chain condition `X̄_{i+1} ⊘ X̄_i = ∅` in `X_i`.
pub fn validate_complex<C: Acgw>(inst: &C, x: &ChainComplex<C>) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in x.degrees() {
        let t = x.tr(inst, i);
        if let Err(e) = t.check(inst) {
            out.push(Violation::at(i, format!("transition: {e}")));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in x.degrees() {
        let above = x.tr(inst, i + 1);
        let below = x.tr(inst, i);
        match inst.mixed_pullback(&above.front, &below.back) {
            Ok((p, _, _)) if inst.is_empty(&p) => {}
            Ok((p, _, _)) => out.push(Violation::at(
                i,
                format!("transitions X̄_{} and X̄_{i} meet in X_{i} (overlap {})", i + 1, inst.describe(&p)),
            )),
            Err(e) => out.push(Violation::at(i, e.to_string())),
        }
    }
    out
}

/// Per-degree legs indexed from `lo`: object legs on `[lo, hi]`, transition legs on `(lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
struct Legs<T> {
    lo: i64,
    objs: Vec<T>,
    trans: Vec<T>,
}

impl<T: Clone> Legs<T> {
    fn obj(&self, i: i64) -> Option<T> {
        if i < self.lo {
            return None;
        }
        self.objs.get((i - self.lo) as usize).cloned()
    }

    fn tr(&self, i: i64) -> Option<T> {
        if i <= self.lo {
            return None;
        }
        self.trans.get((i - self.lo - 1) as usize).cloned()
    }
}

fn check_legs<T>(lo: i64, n: usize, objs: &[T], trans: &[T]) -> Result<()> {
    if objs.len() != n || trans.len() != n.saturating_sub(1) {
        return Err(Error::pre(format!(
            "expected {n} level legs and {} transition legs from degree {lo}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// A chain map `X ⇐ Z ↪ Y`: levelwise vertical legs into `X`, horizontal legs into `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<C: Acgw> {
    pub src: ChainComplex<C>,
    pub mid: ChainComplex<C>,
    pub tgt: ChainComplex<C>,
    zx: Legs<C::Ver>,
    zy: Legs<C::Hor>,
}

impl<C: Acgw> ChainMap<C> {
    /// Legs are indexed over the middle complex's support.
    pub fn new(
        src: ChainComplex<C>,
        mid: ChainComplex<C>,
        tgt: ChainComplex<C>,
        zx: Vec<C::Ver>,
        tzx: Vec<C::Ver>,
        zy: Vec<C::Hor>,
        tzy: Vec<C::Hor>,
    ) -> Result<Self> {
        let n = mid.objs.len();
        check_legs(mid.lo, n, &zx, &tzx)?;
        check_legs(mid.lo, n, &zy, &tzy)?;
        let lo = mid.lo;
        Ok(ChainMap { src, mid, tgt, zx: Legs { lo, objs: zx, trans: tzx }, zy: Legs { lo, objs: zy, trans: tzy } })
    }

    pub fn identity(inst: &C, x: &ChainComplex<C>) -> Self {
        let zx = x.degrees().map(|i| inst.ver_id(&x.obj(inst, i))).collect();
        let tzx = (x.lo + 1..=x.hi()).map(|i| inst.ver_id(&x.tr(inst, i).mid)).collect();
        let zy = x.degrees().map(|i| inst.hor_id(&x.obj(inst, i))).collect();
        let tzy = (x.lo + 1..=x.hi()).map(|i| inst.hor_id(&x.tr(inst, i).mid)).collect();
        ChainMap::new(x.clone(), x.clone(), x.clone(), zx, tzx, zy, tzy).expect("identity legs are well-shaped")
    }

    /// `Z_i ⇒ X_i`.
    pub fn zx(&self, inst: &C, i: i64) -> C::Ver {
        self.zx.obj(i).unwrap_or_else(|| inst.ver_from_empty(&self.src.obj(inst, i)))
    }

    /// `Z̄_i ⇒ X̄_i`.
    pub fn tzx(&self, inst: &C, i: i64) -> C::Ver {
        self.zx.tr(i).unwrap_or_else(|| inst.ver_from_empty(&self.src.tr(inst, i).mid))
    }

    /// `Z_i ↪ Y_i`.
    pub fn zy(&self, inst: &C, i: i64) -> C::Hor {
        self.zy.obj(i).unwrap_or_else(|| inst.hor_from_empty(&self.tgt.obj(inst, i)))
    }

    /// `Z̄_i ↪ Ȳ_i`.
    pub fn tzy(&self, inst: &C, i: i64) -> C::Hor {
        self.zy.tr(i).unwrap_or_else(|| inst.hor_from_empty(&self.tgt.tr(inst, i).mid))
    }

    /// The span `X_i ⇐ Z_i ↪ Y_i`.
    pub fn level(&self, inst: &C, i: i64) -> FlatMor<C> {
        FlatMor {
            src: self.src.obj(inst, i),
            mid: self.mid.obj(inst, i),
            tgt: self.tgt.obj(inst, i),
            back: self.zx(inst, i),
            front: self.zy(inst, i),
        }
    }

    pub fn degree_hull(&self) -> (i64, i64) {
        hull(&[&self.src, &self.mid, &self.tgt])
    }

    /// The vertical leg `Z ⇒ X`.
    pub fn ver_part(&self, inst: &C) -> VerChainMor<C> {
        let m = &self.mid;
        VerChainMor {
            src: m.clone(),
            tgt: self.src.clone(),
            legs: Legs {
                lo: m.lo,
                objs: m.degrees().map(|i| self.zx(inst, i)).collect(),
                trans: (m.lo + 1..=m.hi()).map(|i| self.tzx(inst, i)).collect(),
            },
        }
    }

    /// The horizontal leg `Z ↪ Y`.
    pub fn hor_part(&self, inst: &C) -> HorChainMor<C> {
        let m = &self.mid;
        HorChainMor {
            src: m.clone(),
            tgt: self.tgt.clone(),
            legs: Legs {
                lo: m.lo,
                objs: m.degrees().map(|i| self.zy(inst, i)).collect(),
                trans: (m.lo + 1..=m.hi()).map(|i| self.tzy(inst, i)).collect(),
            },
        }
    }
}

/// Levelwise span equivalence of two chain maps with the same source and target.
pub fn chain_maps_equiv<C: Acgw>(inst: &C, f: &ChainMap<C>, g: &ChainMap<C>) -> bool {
    if !f.src.same_as(inst, &g.src) || !f.tgt.same_as(inst, &g.tgt) {
        return false;
    }
    let (lo, hi) = hull(&[&f.src, &f.mid, &f.tgt, &g.mid]);
    (lo..=hi).all(|i| span_equiv(inst, &f.level(inst, i), &g.level(inst, i)))
}

/// A horizontal chain morphism `X ↪ Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct HorChainMor<C: Acgw> {
    pub src: ChainComplex<C>,
    pub tgt: ChainComplex<C>,
    legs: Legs<C::Hor>,
}

/// A vertical chain morphism `Z ⇒ Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerChainMor<C: Acgw> {
    pub src: ChainComplex<C>,
    pub tgt: ChainComplex<C>,
    legs: Legs<C::Ver>,
}

impl<C: Acgw> HorChainMor<C> {
    /// Legs are indexed over the source's support.
    pub fn new(src: ChainComplex<C>, tgt: ChainComplex<C>, lev: Vec<C::Hor>, tlev: Vec<C::Hor>) -> Result<Self> {
        check_legs(src.lo, src.objs.len(), &lev, &tlev)?;
        let lo = src.lo;
        Ok(HorChainMor { src, tgt, legs: Legs { lo, objs: lev, trans: tlev } })
    }

    pub fn lev(&self, inst: &C, i: i64) -> C::Hor {
        self.legs.obj(i).unwrap_or_else(|| inst.hor_from_empty(&self.tgt.obj(inst, i)))
    }

    pub fn tlev(&self, inst: &C, i: i64) -> C::Hor {
        self.legs.tr(i).unwrap_or_else(|| inst.hor_from_empty(&self.tgt.tr(inst, i).mid))
    }

    /// The chain map `X ⇐ X ↪ Y`.
    pub fn to_chain_map(&self, inst: &C) -> ChainMap<C> {
        let x = &self.src;
        ChainMap {
            src: x.clone(),
            mid: x.clone(),
            tgt: self.tgt.clone(),
            zx: Legs {
                lo: x.lo,
                objs: x.degrees().map(|i| inst.ver_id(&x.obj(inst, i))).collect(),
                trans: (x.lo + 1..=x.hi()).map(|i| inst.ver_id(&x.tr(inst, i).mid)).collect(),
            },
            zy: self.legs.clone(),
        }
    }
}

impl<C: Acgw> VerChainMor<C> {
    /// Legs are indexed over the source's support.
    pub fn new(src: ChainComplex<C>, tgt: ChainComplex<C>, lev: Vec<C::Ver>, tlev: Vec<C::Ver>) -> Result<Self> {
        check_legs(src.lo, src.objs.len(), &lev, &tlev)?;
        let lo = src.lo;
        Ok(VerChainMor { src, tgt, legs: Legs { lo, objs: lev, trans: tlev } })
    }

    pub fn lev(&self, inst: &C, i: i64) -> C::Ver {
        self.legs.obj(i).unwrap_or_else(|| inst.ver_from_empty(&self.tgt.obj(inst, i)))
    }

    pub fn tlev(&self, inst: &C, i: i64) -> C::Ver {
        self.legs.tr(i).unwrap_or_else(|| inst.ver_from_empty(&self.tgt.tr(inst, i).mid))
    }

    /// The chain map `Y ⇐ Z ↪ Z`.
    pub fn to_chain_map(&self, inst: &C) -> ChainMap<C> {
        let z = &self.src;
        ChainMap {
            src: self.tgt.clone(),
            mid: z.clone(),
            tgt: z.clone(),
            zx: self.legs.clone(),
            zy: Legs {
                lo: z.lo,
                objs: z.degrees().map(|i| inst.hor_id(&z.obj(inst, i))).collect(),
                trans: (z.lo + 1..=z.hi()).map(|i| inst.hor_id(&z.tr(inst, i).mid)).collect(),
            },
        }
    }
}

fn endpoint_violations<C: Acgw>(
    inst: &C,
    i: i64,
    what: &str,
    got: (C::Obj, C::Obj),
    want: (C::Obj, C::Obj),
    out: &mut Vec<Violation>,
) {
    if got != want {
        out.push(Violation::at(
            i,
            format!(
                "{what} runs {} → {}, expected {} → {}",
                inst.describe(&got.0),
                inst.describe(&got.1),
                inst.describe(&want.0),
                inst.describe(&want.1)
            ),
        ));
    }
}

/// Every violated chain-map condition: the three complexes, leg shapes, the two commuting squares
/// and the two pseudo-commutative squares at each degree.
pub fn validate_chain_map<C: Acgw>(inst: &C, f: &ChainMap<C>) -> Vec<Violation> {
    let mut out = Vec::new();
    for (name, c) in [("source", &f.src), ("middle", &f.mid), ("target", &f.tgt)] {
        for v in validate_complex(inst, c) {
            out.push(Violation { degree: v.degree, message: format!("{name} complex: {}", v.message) });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let (lo, hi) = f.degree_hull();
    for i in lo - 1..=hi + 1 {
        let (zx, zy, tzx, tzy) = (f.zx(inst, i), f.zy(inst, i), f.tzx(inst, i), f.tzy(inst, i));
        for (what, r) in [
            ("Z_i ⇒ X_i", inst.check_ver(&zx)),
            ("Z̄_i ⇒ X̄_i", inst.check_ver(&tzx)),
            ("Z_i ↪ Y_i", inst.check_hor(&zy)),
            ("Z̄_i ↪ Ȳ_i", inst.check_hor(&tzy)),
        ] {
            if let Err(e) = r {
                out.push(Violation::at(i, format!("{what}: {e}")));
            }
        }
        let (xt, zt, yt) = (f.src.tr(inst, i), f.mid.tr(inst, i), f.tgt.tr(inst, i));
        let before = out.len();
        endpoint_violations(inst, i, "Z_i ⇒ X_i", (inst.ver_src(&zx), inst.ver_tgt(&zx)), (f.mid.obj(inst, i), f.src.obj(inst, i)), &mut out);
        endpoint_violations(inst, i, "Z_i ↪ Y_i", (inst.hor_src(&zy), inst.hor_tgt(&zy)), (f.mid.obj(inst, i), f.tgt.obj(inst, i)), &mut out);
        endpoint_violations(inst, i, "Z̄_i ⇒ X̄_i", (inst.ver_src(&tzx), inst.ver_tgt(&tzx)), (zt.mid.clone(), xt.mid.clone()), &mut out);
        endpoint_violations(inst, i, "Z̄_i ↪ Ȳ_i", (inst.hor_src(&tzy), inst.hor_tgt(&tzy)), (zt.mid.clone(), yt.mid.clone()), &mut out);
        if out.len() > before {
            continue;
        }
        let zx_below = f.zx(inst, i - 1);
        let zy_below = f.zy(inst, i - 1);
        let tl = match (inst.ver_compose(&tzx, &xt.back), inst.ver_compose(&zt.back, &zx)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        if !tl {
            out.push(Violation::at(i, "vertical square Z̄_i ⇒ X̄_i ⇒ X_i vs Z̄_i ⇒ Z_i ⇒ X_i does not commute"));
        }
        if !inst.mixed_is_pseudo(&tzx, &zt.front, &xt.front, &zx_below) {
            out.push(Violation::at(i, "Z̄_i is not the pullback X̄_i ⊘ Z_{i-1} in X_{i-1}"));
        }
        if !inst.mixed_is_pseudo(&zt.back, &tzy, &zy, &yt.back) {
            out.push(Violation::at(i, "Z̄_i is not the pullback Z_i ⊘ Ȳ_i in Y_i"));
        }
        let br = match (inst.hor_compose(&zt.front, &zy_below), inst.hor_compose(&tzy, &yt.front)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        if !br {
            out.push(Violation::at(i, "horizontal square Z̄_i ↪ Z_{i-1} ↪ Y_{i-1} vs Z̄_i ↪ Ȳ_i ↪ Y_{i-1} does not commute"));
        }
    }
    out
}

pub fn validate_hor<C: Acgw>(inst: &C, f: &HorChainMor<C>) -> Vec<Violation> {
    validate_chain_map(inst, &f.to_chain_map(inst))
}

pub fn validate_ver<C: Acgw>(inst: &C, f: &VerChainMor<C>) -> Vec<Violation> {
    validate_chain_map(inst, &f.to_chain_map(inst))
}

fn need<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| Error::internal(format!("{what} does not factor")))
}

/// Compose `f : X → Y` and `g : Y → W` levelwise by mixed pullback.
pub fn compose_chain_maps<C: Acgw>(inst: &C, f: &ChainMap<C>, g: &ChainMap<C>) -> Result<ChainMap<C>> {
    if !f.tgt.same_as(inst, &g.src) {
        return Err(Error::pre("chain maps are not composable"));
    }
    let (lo, hi) = hull(&[&f.mid, &g.mid]);
    let mut objs = Vec::new();
    let mut to_z = Vec::new();
    let mut to_z2 = Vec::new();
    for i in lo..=hi {
        let (p, pz, pz2) = inst.mixed_pullback(&f.zy(inst, i), &g.zx(inst, i))?;
        objs.push(p);
        to_z.push(pz);
        to_z2.push(pz2);
    }
    let mut trans = Vec::new();
    let (mut tzx, mut tzy) = (Vec::new(), Vec::new());
    for i in lo + 1..=hi {
        let k = (i - lo) as usize;
        let (_, pb_z, pb_z2) = inst.mixed_pullback(&f.tzy(inst, i), &g.tzx(inst, i))?;
        let zt = f.mid.tr(inst, i);
        let z2t = g.mid.tr(inst, i);
        let back = need(inst.ver_factor(&inst.ver_compose(&pb_z, &zt.back)?, &to_z[k]), "composite back leg")?;
        let front = need(inst.hor_factor(&inst.hor_compose(&pb_z2, &z2t.front)?, &to_z2[k - 1]), "composite front leg")?;
        trans.push(FlatMor::new(inst, back, front)?);
        tzx.push(inst.ver_compose(&pb_z, &f.tzx(inst, i))?);
        tzy.push(inst.hor_compose(&pb_z2, &g.tzy(inst, i))?);
    }
    let mut zx = Vec::new();
    let mut zy = Vec::new();
    for i in lo..=hi {
        let k = (i - lo) as usize;
        zx.push(inst.ver_compose(&to_z[k], &f.zx(inst, i))?);
        zy.push(inst.hor_compose(&to_z2[k], &g.zy(inst, i))?);
    }
    let mid = ChainComplex::new(lo, objs, trans)?;
    ChainMap::new(f.src.clone(), mid, g.tgt.clone(), zx, tzx, zy, tzy)
}

/// The levelwise cokernel `Z = Y ⫽ X` and its vertical morphism into `Y`.
pub fn coker_hor<C: Acgw>(inst: &C, f: &HorChainMor<C>) -> Result<(ChainComplex<C>, VerChainMor<C>)> {
    let y = &f.tgt;
    let (lo, hi) = (y.lo(), y.hi());
    let legs: Vec<C::Ver> = (lo..=hi).map(|i| inst.complement_h(&f.lev(inst, i))).collect();
    let objs: Vec<C::Obj> = legs.iter().map(|e| inst.ver_src(e)).collect();
    let mut trans = Vec::new();
    let mut tlegs = Vec::new();
    for i in lo + 1..=hi {
        let k = (i - lo) as usize;
        let yt = y.tr(inst, i);
        let (_, zb_yb, zb_z) = inst.mixed_pullback(&yt.front, &legs[k - 1])?;
        let back = need(inst.ver_factor(&inst.ver_compose(&zb_yb, &yt.back)?, &legs[k]), "cokernel transition")?;
        trans.push(FlatMor::new(inst, back, zb_z)?);
        tlegs.push(zb_yb);
    }
    let z = ChainComplex::new(lo, objs, trans)?;
    let g = VerChainMor::new(z.clone(), y.clone(), legs, tlegs)?;
    Ok((z, g))
}

/// The levelwise kernel `X = Y ⫻ Z` and its horizontal morphism into `Y`.
pub fn ker_ver<C: Acgw>(inst: &C, g: &VerChainMor<C>) -> Result<(ChainComplex<C>, HorChainMor<C>)> {
    let y = &g.tgt;
    let (lo, hi) = (y.lo(), y.hi());
    let legs: Vec<C::Hor> = (lo..=hi).map(|i| inst.complement_v(&g.lev(inst, i))).collect();
    let objs: Vec<C::Obj> = legs.iter().map(|m| inst.hor_src(m)).collect();
    let mut trans = Vec::new();
    let mut tlegs = Vec::new();
    for i in lo + 1..=hi {
        let k = (i - lo) as usize;
        let yt = y.tr(inst, i);
        let (_, xb_x, xb_yb) = inst.mixed_pullback(&legs[k], &yt.back)?;
        let front = need(inst.hor_factor(&inst.hor_compose(&xb_yb, &yt.front)?, &legs[k - 1]), "kernel transition")?;
        trans.push(FlatMor::new(inst, xb_x, front)?);
        tlegs.push(xb_yb);
    }
    let x = ChainComplex::new(lo, objs, trans)?;
    let f = HorChainMor::new(x.clone(), y.clone(), legs, tlegs)?;
    Ok((x, f))
}

/// The exact complex `A = A ↪ B ⇐ C = C` in degrees 2, 1, 0, with `C` the complement of `A ↪ B`.
pub fn ses_from_injection<C: Acgw>(inst: &C, m: &C::Hor) -> Result<ChainComplex<C>> {
    inst.check_hor(m)?;
    let a = inst.hor_src(m);
    let b = inst.hor_tgt(m);
    let e = inst.complement_h(m);
    let c = inst.ver_src(&e);
    let t2 = FlatMor::new(inst, inst.ver_id(&a), m.clone())?;
    let t1 = FlatMor::new(inst, e, inst.hor_id(&c))?;
    ChainComplex::new(0, vec![c, b, a], vec![t1, t2])
}

/// A short exact sequence `X ↪ Y ⇐ Z` of chain complexes.
#[derive(Clone, Debug)]
pub struct ChainSes<C: Acgw> {
    pub hor: HorChainMor<C>,
    pub ver: VerChainMor<C>,
}

impl<C: Acgw> ChainSes<C> {
    /// Complete a horizontal chain morphism by its cokernel.
    pub fn from_hor(inst: &C, f: HorChainMor<C>) -> Result<Self> {
        Error::check(validate_hor(inst, &f))?;
        let (_, g) = coker_hor(inst, &f)?;
        Ok(ChainSes { hor: f, ver: g })
    }

    /// Pair given morphisms, checking that each is the other's complement at every level and transition.
    pub fn new(inst: &C, hor: HorChainMor<C>, ver: VerChainMor<C>) -> Result<Self> {
        let mut vs = validate_hor(inst, &hor);
        vs.extend(validate_ver(inst, &ver));
        Error::check(vs)?;
        if !hor.tgt.same_as(inst, &ver.tgt) {
            return Err(Error::pre("the two morphisms have different targets"));
        }
        let (_, g) = coker_hor(inst, &hor)?;
        let (lo, hi) = (hor.tgt.lo(), hor.tgt.hi());
        let mut vs = Vec::new();
        for i in lo..=hi {
            if !same_ver_subobject(inst, &ver.lev(inst, i), &g.lev(inst, i)) {
                vs.push(Violation::at(i, "Z_i is not the complement of X_i in Y_i"));
            }
            if i > lo && !same_ver_subobject(inst, &ver.tlev(inst, i), &g.tlev(inst, i)) {
                vs.push(Violation::at(i, "Z̄_i is not the complement of X̄_i in Ȳ_i"));
            }
        }
        Error::check(vs)?;
        Ok(ChainSes { hor, ver })
    }

    pub fn x(&self) -> &ChainComplex<C> {
        &self.hor.src
    }

    pub fn y(&self) -> &ChainComplex<C> {
        &self.hor.tgt
    }

    pub fn z(&self) -> &ChainComplex<C> {
        &self.ver.src
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetObj, SetInjection};

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

    /// `Y₃={a}, Ȳ₃={a}, Y₂={a,b}, Ȳ₂={b}, Y₁={b}`.
    fn spanex_y() -> ChainComplex<FinSet> {
        ChainComplex::new(
            1,
            vec![s(&["b"]), s(&["a", "b"]), s(&["a"])],
            vec![tr(&["a", "b"], &["b"], &["b"]), tr(&["a"], &["a"], &["a", "b"])],
        )
        .unwrap()
    }

    #[test]
    fn spanex_y_is_valid() {
        assert!(validate_complex(&FinSet, &spanex_y()).is_empty());
    }

    #[test]
    fn overlapping_transitions_flagged() {
        let x = ChainComplex::new(
            1,
            vec![s(&["a"]), s(&["a"]), s(&["a"])],
            vec![tr(&["a"], &["a"], &["a"]), tr(&["a"], &["a"], &["a"])],
        )
        .unwrap();
        let vs = validate_complex(&FinSet, &x);
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].degree, Some(2));
    }

    #[test]
    fn empty_support_is_valid() {
        let z = ChainComplex::<FinSet>::zero();
        assert!(validate_complex(&FinSet, &z).is_empty());
        assert_eq!(z.obj(&FinSet, 5), FinSetObj::empty());
    }

    #[test]
    fn structural_mismatch_rejected() {
        let r = ChainComplex::new(1, vec![s(&["b"]), s(&["a"])], vec![tr(&["a", "b"], &["b"], &["b"])]);
        assert!(r.is_err());
    }

    #[test]
    fn identity_validates_everywhere() {
        let y = spanex_y();
        let id = ChainMap::identity(&FinSet, &y);
        assert!(validate_chain_map(&FinSet, &id).is_empty());
        assert!(validate_hor(&FinSet, &id.hor_part(&FinSet)).is_empty());
        assert!(validate_ver(&FinSet, &id.ver_part(&FinSet)).is_empty());
    }

    #[test]
    fn coker_of_identity_is_zero_and_of_empty_is_everything() {
        let y = spanex_y();
        let id = ChainMap::identity(&FinSet, &y).hor_part(&FinSet);
        let (z, _) = coker_hor(&FinSet, &id).unwrap();
        assert!(y.degrees().all(|i| z.obj(&FinSet, i).is_empty()));
        let from_zero = HorChainMor::new(ChainComplex::zero(), y.clone(), vec![], vec![]).unwrap();
        let (z, g) = coker_hor(&FinSet, &from_zero).unwrap();
        assert!(z.same_as(&FinSet, &y));
        assert!(validate_ver(&FinSet, &g).is_empty());
    }

    #[test]
    fn ker_undoes_coker() {
        let y = spanex_y();
        let x = ChainComplex::new(2, vec![s(&["a"]), s(&["a"])], vec![tr(&["a"], &["a"], &["a"])]).unwrap();
        let f = HorChainMor::new(
            x.clone(),
            y.clone(),
            vec![SetInjection::inclusion(&s(&["a"]), &s(&["a", "b"])).unwrap(), FinSet.hor_id(&s(&["a"]))],
            vec![FinSet.hor_id(&s(&["a"]))],
        )
        .unwrap();
        assert!(validate_hor(&FinSet, &f).is_empty());
        let (_, g) = coker_hor(&FinSet, &f).unwrap();
        let (x2, f2) = ker_ver(&FinSet, &g).unwrap();
        assert!(x2.same_as(&FinSet, &x));
        for i in 1..=3 {
            assert_eq!(f2.lev(&FinSet, i), f.lev(&FinSet, i));
        }
    }

    #[test]
    fn ses_of_singleton() {
        let m = SetInjection::inclusion(&s(&["a"]), &s(&["a", "b"])).unwrap();
        let c = ses_from_injection(&FinSet, &m).unwrap();
        assert!(validate_complex(&FinSet, &c).is_empty());
        assert_eq!(c.obj(&FinSet, 1), s(&["a", "b"]));
        assert_eq!(c.obj(&FinSet, 0), s(&["b"]));
    }
}
