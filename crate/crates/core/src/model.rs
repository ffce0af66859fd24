//! Turning a parsed document into typed complexes, morphisms, sequences and snake inputs, and back.

use std::collections::BTreeMap;

use crate::acgw::{Acgw, FlatMor};
use crate::chains::{ChainComplex, ChainMap, ChainSes, HorChainMor, VerChainMor};
use crate::document::{
    ComplexDecl, Document, EdgeDecl, Instance, Item, Leg, LevelDecl, LevelKind, MapDecl, MorDecl, ObjDecl, SesDecl,
    SnakeDecl, SnakeObj, Spans, TrDecl, Value,
};
use crate::error::{Error, Result};
use crate::finset::{FinSet, FinSetObj, SetInjection};
use crate::linear::{Linear, MatEpi, MatMono};
use crate::matrix::Matrix;
use crate::snake::{StrongSnakeInput, WeakSnakeInput};

/// Instance-specific conversion between document values and morphisms.
pub trait Buildable: Acgw {
    fn make_obj(&self, v: &Value) -> Result<Self::Obj>;
    /// A missing leg means the default embedding, when there is one.
    fn make_hor(&self, src: &Self::Obj, tgt: &Self::Obj, leg: Option<&Leg>) -> Result<Self::Hor>;
    fn make_ver(&self, src: &Self::Obj, tgt: &Self::Obj, leg: Option<&Leg>) -> Result<Self::Ver>;
    fn value_of(&self, o: &Self::Obj) -> Value;
    /// `None` when the leg is the default embedding.
    fn hor_leg(&self, m: &Self::Hor) -> Option<Leg>;
    fn ver_leg(&self, e: &Self::Ver) -> Option<Leg>;
    fn instance(&self) -> Instance;
}

impl Buildable for FinSet {
    fn make_obj(&self, v: &Value) -> Result<FinSetObj> {
        match v {
            Value::Elems(e) => FinSetObj::new(e),
            Value::Dim(_) => Err(Error::pre("set objects are element lists, not dimensions")),
        }
    }

    fn make_hor(&self, src: &FinSetObj, tgt: &FinSetObj, leg: Option<&Leg>) -> Result<SetInjection> {
        match leg {
            None => SetInjection::inclusion(src, tgt),
            Some(Leg::Pairs(ps)) => SetInjection::from_pairs(src, tgt, ps),
            Some(Leg::Matrix(_)) => Err(Error::pre("set maps are written as {a->b}, not matrices")),
        }
    }

    fn make_ver(&self, src: &FinSetObj, tgt: &FinSetObj, leg: Option<&Leg>) -> Result<SetInjection> {
        self.make_hor(src, tgt, leg)
    }

    fn value_of(&self, o: &FinSetObj) -> Value {
        Value::Elems(o.names())
    }

    fn hor_leg(&self, m: &SetInjection) -> Option<Leg> {
        (!m.is_inclusion()).then(|| Leg::Pairs(m.pairs()))
    }

    fn ver_leg(&self, e: &SetInjection) -> Option<Leg> {
        self.hor_leg(e)
    }

    fn instance(&self) -> Instance {
        Instance::Set
    }
}

impl Buildable for Linear {
    fn make_obj(&self, v: &Value) -> Result<crate::linear::VectObj> {
        match v {
            Value::Dim(n) => Ok(self.obj(*n)),
            Value::Elems(_) => Err(Error::pre("linear objects are `dim N`, not element lists")),
        }
    }

    fn make_hor(&self, src: &crate::linear::VectObj, tgt: &crate::linear::VectObj, leg: Option<&Leg>) -> Result<MatMono> {
        match leg {
            None if src.dim == 0 => Ok(self.hor_from_empty(tgt)),
            None => Err(Error::pre("linear legs need an explicit matrix")),
            Some(Leg::Matrix(rows)) => MatMono::new(*src, *tgt, Matrix::from_rows(rows, src.dim, self.p())?),
            Some(Leg::Pairs(_)) => Err(Error::pre("linear legs are matrices")),
        }
    }

    fn make_ver(&self, src: &crate::linear::VectObj, tgt: &crate::linear::VectObj, leg: Option<&Leg>) -> Result<MatEpi> {
        match leg {
            None if src.dim == 0 => Ok(self.ver_from_empty(tgt)),
            None => Err(Error::pre("linear legs need an explicit matrix")),
            Some(Leg::Matrix(rows)) => MatEpi::new(*src, *tgt, Matrix::from_rows(rows, tgt.dim, self.p())?),
            Some(Leg::Pairs(_)) => Err(Error::pre("linear legs are matrices")),
        }
    }

    fn value_of(&self, o: &crate::linear::VectObj) -> Value {
        Value::Dim(o.dim)
    }

    fn hor_leg(&self, m: &MatMono) -> Option<Leg> {
        Some(Leg::Matrix(m.mat.to_rows()))
    }

    fn ver_leg(&self, e: &MatEpi) -> Option<Leg> {
        Some(Leg::Matrix(e.mat.to_rows()))
    }

    fn instance(&self) -> Instance {
        Instance::Linear { p: self.p() }
    }
}

#[derive(Clone, Debug)]
pub enum SnakeSpec<C: Acgw> {
    Weak(WeakSnakeInput<C>),
    Strong(StrongSnakeInput<C>),
}

#[derive(Clone, Debug)]
pub struct NamedSes<C: Acgw> {
    pub ses: ChainSes<C>,
    /// Names of `X`, `Y`, `Z`.
    pub names: [String; 3],
}

/// Everything a document declares, in declaration order.
#[derive(Clone, Debug)]
pub struct Model<C: Acgw> {
    pub inst: C,
    pub complexes: Vec<(String, ChainComplex<C>)>,
    pub hors: Vec<(String, HorChainMor<C>)>,
    pub vers: Vec<(String, VerChainMor<C>)>,
    pub maps: Vec<(String, ChainMap<C>)>,
    pub seses: Vec<(String, NamedSes<C>)>,
    pub snakes: Vec<(String, SnakeSpec<C>)>,
    /// Source and target complex names of every declared morphism.
    pub ends: BTreeMap<String, (String, String)>,
}

#[derive(Clone, Debug)]
pub enum AnyModel {
    Set(Model<FinSet>),
    Linear(Model<Linear>),
}

/// Re-tag a construction error with the line of the item it came from.
fn at_line(line: usize, name: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        Error::Validation(_) => e,
        other if line > 0 => Error::Parse { line, col: 1, msg: format!("in `{name}`: {}", strip(&other)) },
        other => Error::Parse { line: 0, col: 0, msg: format!("in `{name}`: {}", strip(&other)) },
    }
}

fn strip(e: &Error) -> String {
    match e {
        Error::Precondition(m) | Error::Internal(m) | Error::Generator(m) => m.clone(),
        other => other.to_string(),
    }
}

pub fn build(doc: &Document, spans: &Spans) -> Result<AnyModel> {
    match doc.instance {
        Instance::Set => Ok(AnyModel::Set(build_with(FinSet, doc, spans)?)),
        Instance::Linear { p } => {
            let lin = Linear::new(p).map_err(|e| Error::Parse { line: 1, col: 1, msg: strip(&e) })?;
            Ok(AnyModel::Linear(build_with(lin, doc, spans)?))
        }
    }
}

fn lookup<'a, T>(v: &'a [(String, T)], name: &str, what: &str) -> Result<&'a T> {
    v.iter().find(|(n, _)| n == name).map(|(_, t)| t).ok_or_else(|| Error::pre(format!("unknown {what} `{name}`")))
}

pub fn build_with<C: Buildable>(inst: C, doc: &Document, spans: &Spans) -> Result<Model<C>> {
    let mut m = Model {
        inst,
        complexes: vec![],
        hors: vec![],
        vers: vec![],
        maps: vec![],
        seses: vec![],
        snakes: vec![],
        ends: BTreeMap::new(),
    };
    let mut seen = std::collections::HashSet::new();
    for (k, item) in doc.items.iter().enumerate() {
        let line = spans.line_of(k);
        let name = item.name().to_string();
        if !seen.insert(name.clone()) {
            return Err(at_line(line, &name, Error::pre("name declared twice")));
        }
        let r: Result<()> = (|| {
            match item {
                Item::Complex(c) => {
                    let x = build_complex(&m.inst, c)?;
                    m.complexes.push((name.clone(), x));
                }
                Item::Hor(d) => {
                    let f = build_hor(&m.inst, d, &m.complexes)?;
                    m.ends.insert(name.clone(), (d.src.clone(), d.tgt.clone()));
                    m.hors.push((name.clone(), f));
                }
                Item::Ver(d) => {
                    let f = build_ver(&m.inst, d, &m.complexes)?;
                    m.ends.insert(name.clone(), (d.src.clone(), d.tgt.clone()));
                    m.vers.push((name.clone(), f));
                }
                Item::Map(d) => {
                    let f = build_map(&m.inst, d, &m.complexes)?;
                    m.maps.push((name.clone(), f));
                }
                Item::Ses(d) => {
                    let s = build_ses(&m, d)?;
                    m.seses.push((name.clone(), s));
                }
                Item::Snake(d) => {
                    let s = build_snake(&m.inst, d)?;
                    m.snakes.push((name.clone(), s));
                }
            }
            Ok(())
        })();
        r.map_err(|e| at_line(line, &name, e))?;
    }
    Ok(m)
}

pub fn build_complex<C: Buildable>(inst: &C, d: &ComplexDecl) -> Result<ChainComplex<C>> {
    if d.hi < d.lo {
        if d.objs.is_empty() && d.trans.is_empty() {
            return Ok(ChainComplex::zero());
        }
        return Err(Error::pre("an empty degree range cannot declare objects"));
    }
    let n = (d.hi - d.lo + 1) as usize;
    let mut objs: Vec<Option<C::Obj>> = vec![None; n];
    for o in &d.objs {
        if o.degree < d.lo || o.degree > d.hi {
            return Err(Error::pre(format!("object at degree {} is outside {}..{}", o.degree, d.lo, d.hi)));
        }
        let slot = &mut objs[(o.degree - d.lo) as usize];
        if slot.is_some() {
            return Err(Error::pre(format!("object at degree {} declared twice", o.degree)));
        }
        *slot = Some(inst.make_obj(&o.value)?);
    }
    let objs: Vec<C::Obj> = objs.into_iter().map(|o| o.unwrap_or_else(|| inst.empty())).collect();
    let mut trans: Vec<Option<FlatMor<C>>> = vec![None; n - 1];
    for t in &d.trans {
        if t.degree <= d.lo || t.degree > d.hi {
            return Err(Error::pre(format!("transition at degree {} is outside {}..{}", t.degree, d.lo + 1, d.hi)));
        }
        let k = (t.degree - d.lo) as usize;
        if trans[k - 1].is_some() {
            return Err(Error::pre(format!("transition at degree {} declared twice", t.degree)));
        }
        let mid = inst.make_obj(&t.value)?;
        let back = inst
            .make_ver(&mid, &objs[k], t.back.as_ref())
            .map_err(|e| Error::pre(format!("transition {} back leg: {}", t.degree, strip(&e))))?;
        let front = inst
            .make_hor(&mid, &objs[k - 1], t.front.as_ref())
            .map_err(|e| Error::pre(format!("transition {} front leg: {}", t.degree, strip(&e))))?;
        trans[k - 1] = Some(FlatMor::new(inst, back, front)?);
    }
    let trans = trans
        .into_iter()
        .enumerate()
        .map(|(k, t)| t.unwrap_or_else(|| FlatMor::zero(inst, &objs[k + 1], &objs[k])))
        .collect();
    ChainComplex::new(d.lo, objs, trans)
}

/// Legs for each degree of `src`'s support, from `levels` of the two given kinds.
fn legs<C: Buildable, T>(
    levels: &[LevelDecl],
    obj_kind: LevelKind,
    tr_kind: LevelKind,
    src: &ChainComplex<C>,
    mut make: impl FnMut(i64, bool, Option<&Leg>) -> Result<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    let mut obj_legs: BTreeMap<i64, Option<&Leg>> = BTreeMap::new();
    let mut tr_legs: BTreeMap<i64, Option<&Leg>> = BTreeMap::new();
    for l in levels.iter().filter(|l| l.kind == obj_kind || l.kind == tr_kind) {
        let (map, lo) = if l.kind == obj_kind { (&mut obj_legs, src.lo()) } else { (&mut tr_legs, src.lo() + 1) };
        if src.support_is_empty() || l.degree < lo || l.degree > src.hi() {
            return Err(Error::pre(format!("leg at degree {} is outside the source support", l.degree)));
        }
        if map.insert(l.degree, l.leg.as_ref()).is_some() {
            return Err(Error::pre(format!("leg at degree {} declared twice", l.degree)));
        }
    }
    let a = src.degrees().map(|i| make(i, false, obj_legs.get(&i).copied().flatten())).collect::<Result<_>>()?;
    let b = (src.lo() + 1..=src.hi()).map(|i| make(i, true, tr_legs.get(&i).copied().flatten())).collect::<Result<_>>()?;
    Ok((a, b))
}

fn leg_err(i: i64, tr: bool, e: Error) -> Error {
    Error::pre(format!("{} leg at degree {i}: {}", if tr { "transition" } else { "object" }, strip(&e)))
}

fn build_hor<C: Buildable>(inst: &C, d: &MorDecl, cs: &[(String, ChainComplex<C>)]) -> Result<HorChainMor<C>> {
    let src = lookup(cs, &d.src, "complex")?.clone();
    let tgt = lookup(cs, &d.tgt, "complex")?.clone();
    let (lev, tlev) = legs(&d.levels, LevelKind::At, LevelKind::Tr, &src, |i, tr, leg| {
        let (a, b) = if tr { (src.tr(inst, i).mid, tgt.tr(inst, i).mid) } else { (src.obj(inst, i), tgt.obj(inst, i)) };
        inst.make_hor(&a, &b, leg).map_err(|e| leg_err(i, tr, e))
    })?;
    HorChainMor::new(src.clone(), tgt.clone(), lev, tlev)
}

fn build_ver<C: Buildable>(inst: &C, d: &MorDecl, cs: &[(String, ChainComplex<C>)]) -> Result<VerChainMor<C>> {
    let src = lookup(cs, &d.src, "complex")?.clone();
    let tgt = lookup(cs, &d.tgt, "complex")?.clone();
    let (lev, tlev) = legs(&d.levels, LevelKind::At, LevelKind::Tr, &src, |i, tr, leg| {
        let (a, b) = if tr { (src.tr(inst, i).mid, tgt.tr(inst, i).mid) } else { (src.obj(inst, i), tgt.obj(inst, i)) };
        inst.make_ver(&a, &b, leg).map_err(|e| leg_err(i, tr, e))
    })?;
    VerChainMor::new(src.clone(), tgt.clone(), lev, tlev)
}

fn build_map<C: Buildable>(inst: &C, d: &MapDecl, cs: &[(String, ChainComplex<C>)]) -> Result<ChainMap<C>> {
    let x = lookup(cs, &d.src, "complex")?.clone();
    let z = lookup(cs, &d.mid, "complex")?.clone();
    let y = lookup(cs, &d.tgt, "complex")?.clone();
    let (zx, tzx) = legs(&d.levels, LevelKind::Ver, LevelKind::Tver, &z, |i, tr, leg| {
        let (a, b) = if tr { (z.tr(inst, i).mid, x.tr(inst, i).mid) } else { (z.obj(inst, i), x.obj(inst, i)) };
        inst.make_ver(&a, &b, leg).map_err(|e| leg_err(i, tr, e))
    })?;
    let (zy, tzy) = legs(&d.levels, LevelKind::Hor, LevelKind::Thor, &z, |i, tr, leg| {
        let (a, b) = if tr { (z.tr(inst, i).mid, y.tr(inst, i).mid) } else { (z.obj(inst, i), y.obj(inst, i)) };
        inst.make_hor(&a, &b, leg).map_err(|e| leg_err(i, tr, e))
    })?;
    ChainMap::new(x, z, y, zx, tzx, zy, tzy)
}

fn build_ses<C: Buildable>(m: &Model<C>, d: &SesDecl) -> Result<NamedSes<C>> {
    let hor = lookup(&m.hors, &d.hor, "horizontal morphism")?.clone();
    let (x, y) = m.ends[&d.hor].clone();
    match &d.ver {
        Some(v) => {
            let ver = lookup(&m.vers, v, "vertical morphism")?.clone();
            let (z, y2) = m.ends[v].clone();
            if y2 != y {
                return Err(Error::pre(format!("`{}` ends at `{y}` but `{v}` ends at `{y2}`", d.hor)));
            }
            Ok(NamedSes { ses: ChainSes::new(&m.inst, hor, ver)?, names: [x, y, z] })
        }
        None => {
            let z = format!("{y}⫽{x}");
            Ok(NamedSes { ses: ChainSes::from_hor(&m.inst, hor)?, names: [x, y, z] })
        }
    }
}

const WEAK_KEYS: [&str; 9] = ["A", "B", "C", "X", "Y", "Z", "A'", "B'", "C'"];
const STRONG_EXTRA: [&str; 2] = ["Abar", "C'bar"];
const WEAK_EDGES: [(&str, &str, bool); 12] = [
    ("A", "B", false),
    ("C", "B", true),
    ("X", "Y", false),
    ("Z", "Y", true),
    ("A'", "B'", false),
    ("C'", "B'", true),
    ("X", "A", true),
    ("X", "A'", false),
    ("Y", "B", true),
    ("Y", "B'", false),
    ("Z", "C", true),
    ("Z", "C'", false),
];
const STRONG_EDGES: [(&str, &str, bool); 16] = [
    ("Abar", "A", true),
    ("Abar", "B", false),
    ("C", "B", true),
    ("X", "Y", false),
    ("Z", "Y", true),
    ("A'", "B'", false),
    ("C'bar", "B'", true),
    ("C'bar", "C'", false),
    ("X", "A", true),
    ("X", "Abar", true),
    ("X", "A'", false),
    ("Y", "B", true),
    ("Y", "B'", false),
    ("Z", "C", true),
    ("Z", "C'bar", false),
    ("Z", "C'", false),
];

fn build_snake<C: Buildable>(inst: &C, d: &SnakeDecl) -> Result<SnakeSpec<C>> {
    let mut keys: Vec<&str> = WEAK_KEYS.to_vec();
    if d.strong {
        keys.extend(STRONG_EXTRA);
    }
    let mut objs: BTreeMap<&str, C::Obj> = BTreeMap::new();
    for o in &d.objs {
        let Some(k) = keys.iter().copied().find(|k| *k == o.key) else {
            return Err(Error::pre(format!("unknown snake object `{}`", o.key)));
        };
        if objs.insert(k, inst.make_obj(&o.value)?).is_some() {
            return Err(Error::pre(format!("snake object `{k}` declared twice")));
        }
    }
    for k in &keys {
        objs.entry(k).or_insert_with(|| inst.empty());
    }
    let shape: &[(&str, &str, bool)] = if d.strong { &STRONG_EDGES } else { &WEAK_EDGES };
    let mut given: BTreeMap<(&str, &str), &EdgeDecl> = BTreeMap::new();
    for e in &d.edges {
        let Some(&(f, t, v)) = shape.iter().find(|(f, t, _)| *f == e.from && *t == e.to) else {
            return Err(Error::pre(format!("`{}` to `{}` is not an edge of this diagram", e.from, e.to)));
        };
        if v != e.vertical {
            return Err(Error::pre(format!("edge `{f}` to `{t}` must be {}", if v { "`=>`" } else { "`->`" })));
        }
        if given.insert((f, t), e).is_some() {
            return Err(Error::pre(format!("edge `{f}` to `{t}` declared twice")));
        }
    }
    let leg = |f: &str, t: &str| given.get(&(f, t)).and_then(|e| e.leg.as_ref());
    let h = |f: &str, t: &str| {
        inst.make_hor(&objs[f], &objs[t], leg(f, t)).map_err(|e| Error::pre(format!("edge {f} -> {t}: {}", strip(&e))))
    };
    let v = |f: &str, t: &str| {
        inst.make_ver(&objs[f], &objs[t], leg(f, t)).map_err(|e| Error::pre(format!("edge {f} => {t}: {}", strip(&e))))
    };
    if d.strong {
        Ok(SnakeSpec::Strong(StrongSnakeInput {
            abar_a: v("Abar", "A")?,
            abar_b: h("Abar", "B")?,
            cb: v("C", "B")?,
            xy: h("X", "Y")?,
            zy: v("Z", "Y")?,
            a2b2: h("A'", "B'")?,
            c2bar_b2: v("C'bar", "B'")?,
            c2bar_c2: h("C'bar", "C'")?,
            xa: v("X", "A")?,
            xabar: v("X", "Abar")?,
            xa2: h("X", "A'")?,
            yb: v("Y", "B")?,
            yb2: h("Y", "B'")?,
            zc: v("Z", "C")?,
            zc2bar: h("Z", "C'bar")?,
            zc2: h("Z", "C'")?,
        }))
    } else {
        Ok(SnakeSpec::Weak(WeakSnakeInput {
            ab: h("A", "B")?,
            cb: v("C", "B")?,
            xy: h("X", "Y")?,
            zy: v("Z", "Y")?,
            a2b2: h("A'", "B'")?,
            c2b2: v("C'", "B'")?,
            xa: v("X", "A")?,
            xa2: h("X", "A'")?,
            yb: v("Y", "B")?,
            yb2: h("Y", "B'")?,
            zc: v("Z", "C")?,
            zc2: h("Z", "C'")?,
        }))
    }
}

/// The declaration of a complex; set legs that are inclusions by name are omitted.
pub fn complex_decl<C: Buildable>(inst: &C, name: &str, x: &ChainComplex<C>) -> ComplexDecl {
    if x.support_is_empty() {
        return ComplexDecl { name: name.into(), lo: 0, hi: -1, objs: vec![], trans: vec![] };
    }
    let objs = x.degrees().map(|i| ObjDecl { degree: i, value: inst.value_of(&x.obj(inst, i)) }).collect();
    let trans = (x.lo() + 1..=x.hi())
        .map(|i| {
            let t = x.tr(inst, i);
            TrDecl { degree: i, value: inst.value_of(&t.mid), back: inst.ver_leg(&t.back), front: inst.hor_leg(&t.front) }
        })
        .collect();
    ComplexDecl { name: name.into(), lo: x.lo(), hi: x.hi(), objs, trans }
}

fn level_decls<C: Acgw, T>(
    z: &ChainComplex<C>,
    inst: &C,
    kinds: (LevelKind, LevelKind),
    at: impl Fn(i64) -> T,
    tat: impl Fn(i64) -> T,
    leg: impl Fn(&T) -> Option<Leg>,
) -> Vec<LevelDecl> {
    let _ = inst;
    let mut out = Vec::new();
    for i in z.degrees() {
        if let Some(l) = leg(&at(i)) {
            out.push(LevelDecl { kind: kinds.0, degree: i, leg: Some(l) });
        }
    }
    for i in z.lo() + 1..=z.hi() {
        if let Some(l) = leg(&tat(i)) {
            out.push(LevelDecl { kind: kinds.1, degree: i, leg: Some(l) });
        }
    }
    out
}

pub fn hor_decl<C: Buildable>(inst: &C, name: &str, src: &str, tgt: &str, f: &HorChainMor<C>) -> MorDecl {
    let levels = level_decls(&f.src, inst, (LevelKind::At, LevelKind::Tr), |i| f.lev(inst, i), |i| f.tlev(inst, i), |m| inst.hor_leg(m));
    MorDecl { name: name.into(), src: src.into(), tgt: tgt.into(), levels }
}

pub fn ver_decl<C: Buildable>(inst: &C, name: &str, src: &str, tgt: &str, f: &VerChainMor<C>) -> MorDecl {
    let levels = level_decls(&f.src, inst, (LevelKind::At, LevelKind::Tr), |i| f.lev(inst, i), |i| f.tlev(inst, i), |e| inst.ver_leg(e));
    MorDecl { name: name.into(), src: src.into(), tgt: tgt.into(), levels }
}

pub fn map_decl<C: Buildable>(inst: &C, name: &str, names: [&str; 3], f: &ChainMap<C>) -> MapDecl {
    let mut levels =
        level_decls(&f.mid, inst, (LevelKind::Ver, LevelKind::Tver), |i| f.zx(inst, i), |i| f.tzx(inst, i), |e| inst.ver_leg(e));
    levels.extend(level_decls(&f.mid, inst, (LevelKind::Hor, LevelKind::Thor), |i| f.zy(inst, i), |i| f.tzy(inst, i), |m| {
        inst.hor_leg(m)
    }));
    MapDecl { name: name.into(), src: names[0].into(), mid: names[1].into(), tgt: names[2].into(), levels }
}

fn snake_objs<C: Buildable>(inst: &C, pairs: &[(&str, C::Obj)]) -> Vec<SnakeObj> {
    pairs.iter().map(|(k, o)| SnakeObj { key: (*k).into(), value: inst.value_of(o) }).collect()
}

pub fn weak_decl<C: Buildable>(inst: &C, name: &str, s: &WeakSnakeInput<C>) -> SnakeDecl {
    let objs = crate::snake::weak_objects(inst, s);
    let pairs: Vec<(&str, C::Obj)> = WEAK_KEYS.iter().copied().zip(objs).collect();
    let hs = [("A", "B", &s.ab), ("X", "Y", &s.xy), ("A'", "B'", &s.a2b2), ("X", "A'", &s.xa2), ("Y", "B'", &s.yb2), ("Z", "C'", &s.zc2)];
    let vs = [("C", "B", &s.cb), ("Z", "Y", &s.zy), ("C'", "B'", &s.c2b2), ("X", "A", &s.xa), ("Y", "B", &s.yb), ("Z", "C", &s.zc)];
    let mut edges = Vec::new();
    for (f, t, m) in hs {
        if let Some(l) = inst.hor_leg(m) {
            edges.push(EdgeDecl { from: f.into(), to: t.into(), vertical: false, leg: Some(l) });
        }
    }
    for (f, t, e) in vs {
        if let Some(l) = inst.ver_leg(e) {
            edges.push(EdgeDecl { from: f.into(), to: t.into(), vertical: true, leg: Some(l) });
        }
    }
    SnakeDecl { name: name.into(), strong: false, objs: snake_objs(inst, &pairs), edges }
}

pub fn strong_decl<C: Buildable>(inst: &C, name: &str, s: &StrongSnakeInput<C>) -> SnakeDecl {
    let mut d = weak_decl(inst, name, &s.middle());
    d.strong = true;
    for o in &mut d.objs {
        match o.key.as_str() {
            "A" => o.key = "Abar".into(),
            "C'" => o.key = "C'bar".into(),
            _ => {}
        }
    }
    d.objs.push(SnakeObj { key: "A".into(), value: inst.value_of(&inst.ver_tgt(&s.abar_a)) });
    d.objs.push(SnakeObj { key: "C'".into(), value: inst.value_of(&inst.hor_tgt(&s.c2bar_c2)) });
    for e in &mut d.edges {
        let rename = |k: &str| match k {
            "A" => "Abar".to_string(),
            "C'" => "C'bar".to_string(),
            other => other.to_string(),
        };
        e.from = rename(&e.from);
        e.to = rename(&e.to);
    }
    let extra: [(&str, &str, Option<Leg>, bool); 4] = [
        ("Abar", "A", inst.ver_leg(&s.abar_a), true),
        ("C'bar", "C'", inst.hor_leg(&s.c2bar_c2), false),
        ("X", "A", inst.ver_leg(&s.xa), true),
        ("Z", "C'", inst.hor_leg(&s.zc2), false),
    ];
    for (f, t, l, v) in extra {
        if let Some(l) = l {
            d.edges.push(EdgeDecl { from: f.into(), to: t.into(), vertical: v, leg: Some(l) });
        }
    }
    d
}

/// A document holding the given items for the instance.
pub fn document<C: Buildable>(inst: &C, items: Vec<Item>) -> Document {
    Document { instance: inst.instance(), items }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{parse_text, to_text};

    #[test]
    fn builds_and_reserializes() {
        let src = "instance set
complex X 0..2
  obj 2 {a}
  obj 1 {a, b}
  obj 0 {b}
  tr 2 {a}
  tr 1 {b}
end
complex Y 0..2
  obj 2 {a}
  obj 1 {a, b, c}
  obj 0 {b}
  tr 2 {a}
  tr 1 {b}
end
hor f : X -> Y
end
ses s hor f
";
        let (d, spans) = parse_text(src).unwrap();
        let AnyModel::Set(m) = build(&d, &spans).unwrap() else { panic!() };
        assert_eq!(m.seses[0].1.names[2], "Y⫽X");
        let x = &m.complexes[0].1;
        let back = document(&FinSet, vec![Item::Complex(complex_decl(&FinSet, "X", x))]);
        let (d2, s2) = parse_text(&to_text(&back)).unwrap();
        let AnyModel::Set(m2) = build(&d2, &s2).unwrap() else { panic!() };
        assert_eq!(&m2.complexes[0].1, x);
    }

    #[test]
    fn build_errors_have_lines() {
        let src = "instance set\ncomplex X 0..1\n  obj 1 {a}\n  tr 1 {q}\nend\n";
        let (d, spans) = parse_text(src).unwrap();
        let e = build(&d, &spans).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        let src = "instance set\nhor f : P -> Q\nend\n";
        let (d, spans) = parse_text(src).unwrap();
        assert!(matches!(build(&d, &spans).unwrap_err(), Error::Parse { line: 2, .. }));
    }
}
