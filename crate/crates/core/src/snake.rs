//! Weak and strong snake constructions, exact zigzags, and the long exact sequence in homology.

use serde::Serialize;

use crate::acgw::{
    compose_flat, flat_inverse, hor_iso_between, same_hor_subobject, same_ver_subobject, span_equiv, Acgw, FlatMor,
};
use crate::chains::{hull, ChainComplex, ChainSes};
use crate::error::{Error, Result, Violation};
use crate::homology::{homology_grid, transport_from_k, transport_from_q, HomologyGrid};

/// Position tag for a zigzag object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigLabel {
    pub name: String,
    pub degree: Option<i64>,
    pub complex: Option<String>,
}

impl ZigLabel {
    pub fn plain(name: impl Into<String>) -> Self {
        ZigLabel { name: name.into(), degree: None, complex: None }
    }

    pub fn homology(degree: i64, complex: &str) -> Self {
        ZigLabel { name: format!("H_{degree}({complex})"), degree: Some(degree), complex: Some(complex.to_string()) }
    }
}

/// Objects `O_1..O_n` joined by spans `T_j : O_j → O_{j+1}`.
///
/// Stored as a complex with `O_1` in degree `n − 1` and `O_n` in degree 0.
#[derive(Clone, Debug)]
pub struct ExactZigzag<C: Acgw> {
    pub complex: ChainComplex<C>,
    pub labels: Vec<ZigLabel>,
    pub tr_labels: Vec<String>,
    pub nonexact_first: bool,
    pub nonexact_last: bool,
}

impl<C: Acgw> ExactZigzag<C> {
    pub fn from_parts(
        objs: Vec<C::Obj>,
        trans: Vec<FlatMor<C>>,
        labels: Vec<ZigLabel>,
        tr_labels: Vec<String>,
    ) -> Result<Self> {
        if labels.len() != objs.len() || tr_labels.len() != trans.len() {
            return Err(Error::internal("zigzag labels do not match its shape"));
        }
        let complex = if objs.is_empty() {
            ChainComplex::zero()
        } else {
            ChainComplex::new(0, objs.into_iter().rev().collect(), trans.into_iter().rev().collect())?
        };
        Ok(ExactZigzag { complex, labels, tr_labels, nonexact_first: false, nonexact_last: false })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn degree_of(&self, j: usize) -> i64 {
        (self.len() - 1 - j) as i64
    }

    pub fn object(&self, inst: &C, j: usize) -> C::Obj {
        self.complex.obj(inst, self.degree_of(j))
    }

    /// `T_j : O_j → O_{j+1}`, zero-based.
    pub fn transition(&self, inst: &C, j: usize) -> FlatMor<C> {
        self.complex.tr(inst, self.degree_of(j))
    }

    pub fn objects(&self, inst: &C) -> Vec<C::Obj> {
        (0..self.len()).map(|j| self.object(inst, j)).collect()
    }

    pub fn transitions(&self, inst: &C) -> Vec<FlatMor<C>> {
        (0..self.len().saturating_sub(1)).map(|j| self.transition(inst, j)).collect()
    }

    /// Positions where the incoming front and outgoing back are not complementary.
    pub fn exactness_violations(&self, inst: &C) -> Vec<Violation> {
        let n = self.len();
        let mut vs = Vec::new();
        for j in 0..n {
            if (j == 0 && self.nonexact_first) || (j + 1 == n && self.nonexact_last) {
                continue;
            }
            let d = self.degree_of(j);
            let incoming = self.complex.tr(inst, d + 1);
            let outgoing = self.complex.tr(inst, d);
            if !same_ver_subobject(inst, &outgoing.back, &inst.complement_h(&incoming.front)) {
                vs.push(Violation::global(format!("not exact at {}", self.labels[j].name)));
            }
        }
        vs
    }

    pub fn is_exact(&self, inst: &C) -> bool {
        self.exactness_violations(inst).is_empty()
    }

    /// `Σ (−1)^j size(O_j)`.
    pub fn alternating_sum(&self, inst: &C) -> i64 {
        (0..self.len()).map(|j| if j % 2 == 0 { 1 } else { -1 } * inst.size(&self.object(inst, j)) as i64).sum()
    }

    pub fn relabel_complexes(&mut self, names: [&str; 3]) {
        for l in &mut self.labels {
            if let (Some(d), Some(c)) = (l.degree, l.complex.as_deref()) {
                let k = match c {
                    "X" => 0,
                    "Y" => 1,
                    _ => 2,
                };
                *l = ZigLabel::homology(d, names[k]);
            }
        }
    }
}

/// Rows `A ↪ B ⇐ C`, `X ↪ Y ⇐ Z`, `A' ↪ B' ⇐ C'` and the six column legs.
#[derive(Clone, Debug)]
pub struct WeakSnakeInput<C: Acgw> {
    pub ab: C::Hor,
    pub cb: C::Ver,
    pub xy: C::Hor,
    pub zy: C::Ver,
    pub a2b2: C::Hor,
    pub c2b2: C::Ver,
    pub xa: C::Ver,
    pub xa2: C::Hor,
    pub yb: C::Ver,
    pub yb2: C::Hor,
    pub zc: C::Ver,
    pub zc2: C::Hor,
}

/// The nine objects, in reading order `A B C X Y Z A' B' C'`.
pub fn weak_objects<C: Acgw>(inst: &C, s: &WeakSnakeInput<C>) -> [C::Obj; 9] {
    [
        inst.hor_src(&s.ab),
        inst.hor_tgt(&s.ab),
        inst.ver_src(&s.cb),
        inst.hor_src(&s.xy),
        inst.hor_tgt(&s.xy),
        inst.ver_src(&s.zy),
        inst.hor_src(&s.a2b2),
        inst.hor_tgt(&s.a2b2),
        inst.ver_src(&s.c2b2),
    ]
}

fn check_shape<C: Acgw>(inst: &C, s: &WeakSnakeInput<C>, vs: &mut Vec<Violation>) {
    let hs = [("A->B", &s.ab), ("X->Y", &s.xy), ("A'->B'", &s.a2b2), ("X->A'", &s.xa2), ("Y->B'", &s.yb2), ("Z->C'", &s.zc2)];
    let es = [("C=>B", &s.cb), ("Z=>Y", &s.zy), ("C'=>B'", &s.c2b2), ("X=>A", &s.xa), ("Y=>B", &s.yb), ("Z=>C", &s.zc)];
    for (n, m) in hs {
        if let Err(e) = inst.check_hor(m) {
            vs.push(Violation::global(format!("{n}: {e}")));
        }
    }
    for (n, e) in es {
        if let Err(err) = inst.check_ver(e) {
            vs.push(Violation::global(format!("{n}: {err}")));
        }
    }
    if !vs.is_empty() {
        return;
    }
    let [a, b, c, x, y, z, a2, b2, c2] = weak_objects(inst, s);
    let ends = [
        ("C=>B target", inst.ver_tgt(&s.cb) == b),
        ("Z=>Y target", inst.ver_tgt(&s.zy) == y),
        ("C'=>B' target", inst.ver_tgt(&s.c2b2) == b2),
        ("X=>A", inst.ver_src(&s.xa) == x && inst.ver_tgt(&s.xa) == a),
        ("X->A'", inst.hor_src(&s.xa2) == x && inst.hor_tgt(&s.xa2) == a2),
        ("Y=>B", inst.ver_src(&s.yb) == y && inst.ver_tgt(&s.yb) == b),
        ("Y->B'", inst.hor_src(&s.yb2) == y && inst.hor_tgt(&s.yb2) == b2),
        ("Z=>C", inst.ver_src(&s.zc) == z && inst.ver_tgt(&s.zc) == c),
        ("Z->C'", inst.hor_src(&s.zc2) == z && inst.hor_tgt(&s.zc2) == c2),
    ];
    for (n, ok) in ends {
        if !ok {
            vs.push(Violation::global(format!("{n}: endpoints do not match the rows")));
        }
    }
}

pub fn validate_weak<C: Acgw>(inst: &C, s: &WeakSnakeInput<C>) -> Vec<Violation> {
    let mut vs = Vec::new();
    check_shape(inst, s, &mut vs);
    if !vs.is_empty() {
        return vs;
    }
    if !same_ver_subobject(inst, &s.cb, &inst.complement_h(&s.ab)) {
        vs.push(Violation::global("top row A -> B <= C is not short exact"));
    }
    if !same_ver_subobject(inst, &s.c2b2, &inst.complement_h(&s.a2b2)) {
        vs.push(Violation::global("bottom row A' -> B' <= C' is not short exact"));
    }
    if !inst.mixed_is_pseudo(&s.xa, &s.xy, &s.ab, &s.yb) {
        vs.push(Violation::global("square X A Y B is not pseudo-commutative"));
    }
    if !inst.mixed_is_pseudo(&s.zy, &s.zc2, &s.yb2, &s.c2b2) {
        vs.push(Violation::global("square Z Y C' B' is not pseudo-commutative"));
    }
    if inst.ver_compose(&s.zy, &s.yb).ok() != inst.ver_compose(&s.zc, &s.cb).ok() {
        vs.push(Violation::global("square Z Y C B does not commute"));
    }
    if inst.hor_compose(&s.xy, &s.yb2).ok() != inst.hor_compose(&s.xa2, &s.a2b2).ok() {
        vs.push(Violation::global("square X Y A' B' does not commute"));
    }
    vs
}

/// Snake output with the intermediate embeddings the closed forms are read from.
#[derive(Clone, Debug)]
pub struct SnakeOutput<C: Acgw> {
    pub zigzag: ExactZigzag<C>,
    /// `O_1, O_2, O_3 ↪ A, B, C`.
    pub kernels: [C::Hor; 3],
    /// `O_4, O_5, O_6 ⇒ A', B', C'`.
    pub cokernels: [C::Ver; 3],
    pub d_in_c: C::Hor,
    pub yx_in_y: C::Ver,
    pub w_in_yx: C::Hor,
    pub w_to_yz: C::Ver,
    pub yz_in_y: C::Hor,
    pub d2_to_a2: C::Ver,
}

fn need<T>(x: Option<T>, msg: &str) -> Result<T> {
    x.ok_or_else(|| Error::pre(msg.to_string()))
}

fn snake_labels() -> (Vec<ZigLabel>, Vec<String>) {
    let objs = ["A⫻X", "B⫻Y", "C⫻Z", "A'⫽X", "B'⫽Y", "C'⫽Z"].map(ZigLabel::plain).to_vec();
    let trs = ["A⫻X → B⫻Y", "D", "W", "D'", "B'⫽Y → C'⫽Z"].map(String::from).to_vec();
    (objs, trs)
}

pub fn snake_weak<C: Acgw>(inst: &C, s: &WeakSnakeInput<C>) -> Result<SnakeOutput<C>> {
    Error::check(validate_weak(inst, s))?;
    let ax = inst.complement_v(&s.xa);
    let by = inst.complement_v(&s.yb);
    let cz = inst.complement_v(&s.zc);
    let a2x = inst.complement_h(&s.xa2);
    let b2y = inst.complement_h(&s.yb2);
    let c2z = inst.complement_h(&s.zc2);

    let t1 = need(inst.hor_factor(&inst.hor_compose(&ax, &s.ab)?, &by), "A⫻X does not land in B⫻Y")?;

    let yx = inst.complement_h(&s.xy);
    let yx_c = need(inst.ver_factor(&inst.ver_compose(&yx, &s.yb)?, &s.cb), "Y⫽X does not land in C")?;
    let (_, d_by, d_c) = inst.mixed_pullback(&by, &s.cb)?;
    if !same_hor_subobject(inst, &d_c, &inst.complement_v(&yx_c)) {
        return Err(Error::internal("D is not C ⫻ (Y ⫽ X)"));
    }
    let d_cz = need(inst.hor_factor(&d_c, &cz), "D does not land in C⫻Z")?;

    let yz = inst.complement_v(&s.zy);
    let (_, w_yz, w_yx) = inst.mixed_pullback(&yz, &yx)?;
    let (_, p1_cz, p1_yx) = inst.mixed_pullback(&cz, &yx_c)?;
    let iso = hor_iso_between(inst, &w_yx, &p1_yx).ok_or_else(|| Error::internal("W is not (C⫻Z) ⊘ (Y⫽X)"))?;
    let w_cz = inst.ver_compose(&inst.hor_iso_to_ver(&iso)?, &p1_cz)?;
    let yz_a2 = need(inst.hor_factor(&inst.hor_compose(&yz, &s.yb2)?, &s.a2b2), "Y⫻Z does not land in A'")?;
    let (_, p2_yz, p2_a2x) = inst.mixed_pullback(&yz_a2, &a2x)?;
    let psi = need(inst.ver_factor(&w_yz, &p2_yz).filter(|p| inst.ver_is_iso(p)), "W is not (Y⫻Z) ⊘ (A'⫽X)")?;
    let w_a2x = inst.hor_compose(&inst.ver_iso_to_hor(&psi)?, &p2_a2x)?;
    let z_yx = need(inst.ver_factor(&s.zy, &yx), "middle row X -> Y <= Z is not a complex")?;
    let x_yz = need(inst.hor_factor(&s.xy, &yz), "middle row X -> Y <= Z is not a complex")?;
    if !same_hor_subobject(inst, &w_yx, &inst.complement_v(&z_yx))
        || !same_ver_subobject(inst, &w_yz, &inst.complement_h(&x_yz))
    {
        return Err(Error::internal("W disagrees with the homology of X -> Y <= Z"));
    }

    let (_, d2_a2, d2_b2y) = inst.mixed_pullback(&s.a2b2, &b2y)?;
    if !same_ver_subobject(inst, &d2_a2, &inst.complement_h(&yz_a2)) {
        return Err(Error::internal("D' is not A' ⫽ (Y ⫻ Z)"));
    }
    let d2_a2x = need(inst.ver_factor(&d2_a2, &a2x), "D' does not land in A'⫽X")?;
    let t5 = need(inst.ver_factor(&inst.ver_compose(&c2z, &s.c2b2)?, &b2y), "C'⫽Z does not land in B'⫽Y")?;

    let objs = vec![
        inst.hor_src(&ax),
        inst.hor_src(&by),
        inst.hor_src(&cz),
        inst.ver_src(&a2x),
        inst.ver_src(&b2y),
        inst.ver_src(&c2z),
    ];
    let trans = vec![
        FlatMor::new(inst, inst.ver_id(&objs[0]), t1)?,
        FlatMor::new(inst, d_by, d_cz)?,
        FlatMor::new(inst, w_cz, w_a2x.clone())?,
        FlatMor::new(inst, d2_a2x, d2_b2y)?,
        FlatMor::new(inst, t5, inst.hor_id(&objs[5]))?,
    ];
    let (labels, tr_labels) = snake_labels();
    let zigzag = ExactZigzag::from_parts(objs, trans, labels, tr_labels)?;
    if !zigzag.is_exact(inst) {
        return Err(Error::internal("snake output is not exact"));
    }
    Ok(SnakeOutput {
        zigzag,
        kernels: [ax, by, cz],
        cokernels: [a2x, b2y, c2z],
        d_in_c: d_c,
        yx_in_y: yx,
        w_in_yx: w_yx,
        w_to_yz: w_yz,
        yz_in_y: yz,
        d2_to_a2: d2_a2,
    })
}

/// Rows `A ⇐ Ā ↪ B ⇐ C`, `X ↪ Y ⇐ Z`, `A' ↪ B' ⇐ C̄' ↪ C'` with their columns.
#[derive(Clone, Debug)]
pub struct StrongSnakeInput<C: Acgw> {
    pub abar_a: C::Ver,
    pub abar_b: C::Hor,
    pub cb: C::Ver,
    pub xy: C::Hor,
    pub zy: C::Ver,
    pub a2b2: C::Hor,
    pub c2bar_b2: C::Ver,
    pub c2bar_c2: C::Hor,
    pub xa: C::Ver,
    pub xabar: C::Ver,
    pub xa2: C::Hor,
    pub yb: C::Ver,
    pub yb2: C::Hor,
    pub zc: C::Ver,
    pub zc2bar: C::Hor,
    pub zc2: C::Hor,
}

impl<C: Acgw> StrongSnakeInput<C> {
    /// The middle three columns as a weak input.
    pub fn middle(&self) -> WeakSnakeInput<C> {
        WeakSnakeInput {
            ab: self.abar_b.clone(),
            cb: self.cb.clone(),
            xy: self.xy.clone(),
            zy: self.zy.clone(),
            a2b2: self.a2b2.clone(),
            c2b2: self.c2bar_b2.clone(),
            xa: self.xabar.clone(),
            xa2: self.xa2.clone(),
            yb: self.yb.clone(),
            yb2: self.yb2.clone(),
            zc: self.zc.clone(),
            zc2: self.zc2bar.clone(),
        }
    }
}

pub fn validate_strong<C: Acgw>(inst: &C, s: &StrongSnakeInput<C>) -> Vec<Violation> {
    let mut vs = Vec::new();
    for (n, e) in [("Abar=>A", &s.abar_a), ("X=>A", &s.xa)] {
        if let Err(err) = inst.check_ver(e) {
            vs.push(Violation::global(format!("{n}: {err}")));
        }
    }
    for (n, m) in [("C'bar->C'", &s.c2bar_c2), ("Z->C'", &s.zc2)] {
        if let Err(err) = inst.check_hor(m) {
            vs.push(Violation::global(format!("{n}: {err}")));
        }
    }
    vs.extend(validate_weak(inst, &s.middle()));
    if !vs.is_empty() {
        return vs;
    }
    if inst.ver_compose(&s.xabar, &s.abar_a).ok().as_ref() != Some(&s.xa) {
        vs.push(Violation::global("corner X Abar A does not commute"));
    }
    if inst.hor_compose(&s.zc2bar, &s.c2bar_c2).ok().as_ref() != Some(&s.zc2) {
        vs.push(Violation::global("corner Z C'bar C' does not commute"));
    }
    vs
}

pub fn snake_strong<C: Acgw>(inst: &C, s: &StrongSnakeInput<C>) -> Result<SnakeOutput<C>> {
    Error::check(validate_strong(inst, s))?;
    let mut out = snake_weak(inst, &s.middle())?;
    let z = &out.zigzag;

    let ax = inst.complement_v(&s.xa);
    let (_, p_ax, p_abar) = inst.mixed_pullback(&ax, &s.abar_a)?;
    let into_abarx = need(inst.hor_factor(&p_abar, &out.kernels[0]), "Ā⫻X corner is not cartesian")?;
    let t1 = z.transition(inst, 0);
    let first = FlatMor::new(inst, p_ax, inst.hor_compose(&into_abarx, &t1.front)?)?;

    let c2z = inst.complement_h(&s.zc2);
    let (_, q_c2bar, q_c2z) = inst.mixed_pullback(&s.c2bar_c2, &c2z)?;
    let onto_c2barz = need(inst.ver_factor(&q_c2bar, &out.cokernels[2]), "C̄'⫽Z corner is not cartesian")?;
    let t5 = z.transition(inst, 4);
    let last = FlatMor::new(inst, inst.ver_compose(&onto_c2barz, &t5.back)?, q_c2z)?;

    let mut objs = z.objects(inst);
    objs[0] = inst.hor_src(&ax);
    objs[5] = inst.ver_src(&c2z);
    let mut trans = z.transitions(inst);
    trans[0] = first;
    trans[4] = last;
    let (labels, mut tr_labels) = snake_labels();
    tr_labels[0] = "A⫻X → B⫻Y, through Ā⫻X".into();
    tr_labels[4] = "B'⫽Y → C'⫽Z, through C̄'⫽Z".into();
    let mut zigzag = ExactZigzag::from_parts(objs, trans, labels, tr_labels)?;
    zigzag.nonexact_first = true;
    zigzag.nonexact_last = true;
    if !zigzag.is_exact(inst) {
        return Err(Error::internal("strong snake output is not exact"));
    }
    out.zigzag = zigzag;
    out.kernels[0] = ax;
    out.cokernels[2] = c2z;
    Ok(out)
}

/// One degree of the long exact sequence: the snake at degree `i` with its five spans moved onto
/// first-order homology, `H_i X → H_i Y → H_i Z → H_{i−1} X → H_{i−1} Y → H_{i−1} Z`.
#[derive(Clone, Debug)]
pub struct LesDegree<C: Acgw> {
    pub degree: i64,
    pub input: StrongSnakeInput<C>,
    pub snake: SnakeOutput<C>,
    pub t: [FlatMor<C>; 5],
    pub homology: [C::Obj; 6],
}

pub fn les_input<C: Acgw>(inst: &C, s: &ChainSes<C>, i: i64) -> Result<StrongSnakeInput<C>> {
    let (x, y, z) = (s.x(), s.y(), s.z());
    let f = |i| s.hor.lev(inst, i);
    let g = |i| s.ver.lev(inst, i);
    let (xu, yu, zu) = (x.tr(inst, i + 1), y.tr(inst, i + 1), z.tr(inst, i + 1));
    let (xm, ym, zm) = (x.tr(inst, i), y.tr(inst, i), z.tr(inst, i));
    let (xd, yd, zd) = (x.tr(inst, i - 1), y.tr(inst, i - 1), z.tr(inst, i - 1));

    let a_q = inst.complement_h(&xu.front);
    let b_q = inst.complement_h(&yu.front);
    let c_q = inst.complement_h(&zu.front);
    let (_, abar_x, abar_b) = inst.mixed_pullback(&f(i), &b_q)?;
    let abar_a = need(inst.ver_factor(&abar_x, &a_q), "Ā does not land in X_i ⫽ X̄_{i+1}")?;
    let kk = inst.complement_v(&s.ver.tlev(inst, i + 1));
    let kx = need(inst.hor_factor(&inst.hor_compose(&kk, &yu.front)?, &f(i)), "X̄_{i+1} does not land in X_i")?;
    if !same_ver_subobject(inst, &inst.complement_h(&kx), &abar_x) {
        return Err(Error::internal(format!("degree {i}: Ā disagrees with X_i ⫽ (Ȳ_{{i+1}} ⫻ Z̄_{{i+1}})")));
    }
    let cb = need(inst.ver_factor(&inst.ver_compose(&c_q, &g(i))?, &b_q), "Z_i ⫽ Z̄_{i+1} does not land in Y_i ⫽ Ȳ_{i+1}")?;

    let a2_k = inst.complement_v(&xd.back);
    let b2_k = inst.complement_v(&yd.back);
    let c2_k = inst.complement_v(&zd.back);
    let a2b2 = need(inst.hor_factor(&inst.hor_compose(&a2_k, &f(i - 1))?, &b2_k), "kernel of X does not land in kernel of Y")?;
    let (_, c2bar_b2, c2bar_z) = inst.mixed_pullback(&b2_k, &g(i - 1))?;
    let c2bar_c2 = need(inst.hor_factor(&c2bar_z, &c2_k), "C̄' does not land in Z_{i-1} ⫻ Z̄_{i-1}")?;

    let msg = |what: &str| format!("degree {i}: {what} does not factor");
    Ok(StrongSnakeInput {
        abar_a,
        abar_b,
        cb,
        xy: s.hor.tlev(inst, i),
        zy: s.ver.tlev(inst, i),
        a2b2,
        c2bar_b2,
        c2bar_c2,
        xa: need(inst.ver_factor(&xm.back, &a_q), &msg("X̄_i => A"))?,
        xabar: need(inst.ver_factor(&xm.back, &abar_x), &msg("X̄_i => Ā"))?,
        xa2: need(inst.hor_factor(&xm.front, &a2_k), &msg("X̄_i -> A'"))?,
        yb: need(inst.ver_factor(&ym.back, &b_q), &msg("Ȳ_i => B"))?,
        yb2: need(inst.hor_factor(&ym.front, &b2_k), &msg("Ȳ_i -> B'"))?,
        zc: need(inst.ver_factor(&zm.back, &c_q), &msg("Z̄_i => C"))?,
        zc2bar: need(inst.hor_factor(&zm.front, &c2bar_z), &msg("Z̄_i -> C̄'"))?,
        zc2: need(inst.hor_factor(&zm.front, &c2_k), &msg("Z̄_i -> C'"))?,
    })
}

pub fn les_degree<C: Acgw>(inst: &C, s: &ChainSes<C>, i: i64) -> Result<LesDegree<C>> {
    let input = les_input(inst, s, i)?;
    let snake = snake_strong(inst, &input)?;
    let grids: [HomologyGrid<C>; 6] = [
        homology_grid(inst, s.x(), i)?,
        homology_grid(inst, s.y(), i)?,
        homology_grid(inst, s.z(), i)?,
        homology_grid(inst, s.x(), i - 1)?,
        homology_grid(inst, s.y(), i - 1)?,
        homology_grid(inst, s.z(), i - 1)?,
    ];
    let mut e = Vec::with_capacity(6);
    for (g, k) in grids[..3].iter().zip(&snake.kernels) {
        e.push(transport_from_q(inst, g, k)?);
    }
    for (g, c) in grids[3..].iter().zip(&snake.cokernels) {
        e.push(transport_from_k(inst, g, c)?);
    }
    let mut t = Vec::with_capacity(5);
    for j in 0..5 {
        let tj = snake.zigzag.transition(inst, j);
        let moved = compose_flat(inst, &compose_flat(inst, &flat_inverse(inst, &e[j])?, &tj)?, &e[j + 1])?;
        t.push(moved);
    }
    let homology = grids.map(|g| g.h);
    let t: [FlatMor<C>; 5] = t.try_into().map_err(|_| Error::internal("five transitions"))?;
    Ok(LesDegree { degree: i, input, snake, t, homology })
}

/// The long exact sequence `… H_i X → H_i Y → H_i Z → H_{i−1} X …`, bounded by ∅ on both ends.
pub fn les_of_ses<C: Acgw>(inst: &C, s: &ChainSes<C>) -> Result<ExactZigzag<C>> {
    let (lo, hi) = hull(&[s.x(), s.y(), s.z()]);
    if lo > hi {
        return ExactZigzag::from_parts(vec![], vec![], vec![], vec![]);
    }
    let mut per: Vec<LesDegree<C>> = Vec::new();
    for i in (lo..=hi + 1).rev() {
        let d = les_degree(inst, s, i)?;
        if let Some(prev) = per.last() {
            for (a, b, what) in [(3, 0, "H(X) -> H(Y)"), (4, 1, "H(Y) -> H(Z)")] {
                if !span_equiv(inst, &prev.t[a], &d.t[b]) {
                    return Err(Error::Splice { degree: i, msg: format!("overlapping {what} spans differ") });
                }
            }
        }
        per.push(d);
    }
    if !per[0].t[2].is_zero(inst) {
        return Err(Error::Splice { degree: hi + 1, msg: "connecting span out of an empty homology is nonzero".into() });
    }
    let bottom = per.last().expect("at least one degree");
    if !bottom.t[2].is_zero(inst) {
        return Err(Error::Splice { degree: lo, msg: "connecting span into an empty homology is nonzero".into() });
    }

    let mut objs = Vec::new();
    let mut trans = Vec::new();
    let mut labels = Vec::new();
    let mut tr_labels = Vec::new();
    for d in &per[1..] {
        let i = d.degree;
        for (k, name) in ["X", "Y", "Z"].into_iter().enumerate() {
            objs.push(d.homology[k].clone());
            labels.push(ZigLabel::homology(i, name));
        }
        trans.push(d.t[0].clone());
        trans.push(d.t[1].clone());
        tr_labels.push(format!("H_{i}(X) → H_{i}(Y)"));
        tr_labels.push(format!("H_{i}(Y) → H_{i}(Z)"));
        if i > lo {
            trans.push(d.t[2].clone());
            tr_labels.push(format!("∂: H_{i}(Z) → H_{}(X)", i - 1));
        }
    }
    let z = ExactZigzag::from_parts(objs, trans, labels, tr_labels)?;
    let vs = z.exactness_violations(inst);
    if !vs.is_empty() {
        return Err(Error::internal(format!("long sequence is not exact: {}", vs[0])));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::HorChainMor;
    use crate::finset::{FinSet, FinSetObj, SetInjection};

    fn s(names: &[&str]) -> FinSetObj {
        FinSetObj::new(names).unwrap()
    }

    fn inc(a: &[&str], b: &[&str]) -> SetInjection {
        SetInjection::inclusion(&s(a), &s(b)).unwrap()
    }

    /// Inclusions among `[A, B, C, X, Y, Z, A', B', C']`.
    fn weak([a, b, c, x, y, z, a2, b2, c2]: [&[&str]; 9]) -> WeakSnakeInput<FinSet> {
        WeakSnakeInput {
            ab: inc(a, b),
            cb: inc(c, b),
            xy: inc(x, y),
            zy: inc(z, y),
            a2b2: inc(a2, b2),
            c2b2: inc(c2, b2),
            xa: inc(x, a),
            xa2: inc(x, a2),
            yb: inc(y, b),
            yb2: inc(y, b2),
            zc: inc(z, c),
            zc2: inc(z, c2),
        }
    }

    #[test]
    fn identity_columns_give_empty_zigzag() {
        let w = weak([&["a"], &["a", "c"], &["c"], &["a"], &["a", "c"], &["c"], &["a"], &["a", "c"], &["c"]]);
        let out = snake_weak(&FinSet, &w).unwrap();
        assert!(out.zigzag.objects(&FinSet).iter().all(|o| o.is_empty()));
    }

    #[test]
    fn empty_middle_row() {
        let w = weak([&["a"], &["a", "c"], &["c"], &[], &[], &[], &["p"], &["p", "q"], &["q"]]);
        let out = snake_weak(&FinSet, &w).unwrap();
        let tr = out.zigzag.transitions(&FinSet);
        assert_eq!(tr[1].mid, s(&["c"]));
        assert!(tr[2].mid.is_empty());
        assert_eq!(tr[3].mid, s(&["p"]));
    }

    #[test]
    fn mixed_middle() {
        // Y = {x, m, z}; X = {x}; Z = {z}; W = {m}.
        let w = weak([
            &["x", "u"],
            &["x", "u", "m", "z", "v"],
            &["m", "z", "v"],
            &["x"],
            &["x", "m", "z"],
            &["z"],
            &["x", "m", "p"],
            &["x", "m", "z", "p", "q"],
            &["z", "q"],
        ]);
        let out = snake_weak(&FinSet, &w).unwrap();
        let tr = out.zigzag.transitions(&FinSet);
        assert_eq!(tr[1].mid, s(&["v"]));
        assert_eq!(tr[2].mid, s(&["m"]));
        assert_eq!(tr[3].mid, s(&["p"]));
        assert!(out.zigzag.is_exact(&FinSet));
    }

    #[test]
    fn bad_square_rejected() {
        let mut w = weak([&["a"], &["a", "c"], &["c"], &["a"], &["a", "c"], &["c"], &["a"], &["a", "c"], &["c"]]);
        w.zc2 = inc(&["c"], &["c"]);
        w.c2b2 = inc(&["c"], &["a", "c"]);
        w.a2b2 = inc(&["a"], &["a", "c"]);
        w.zy = inc(&["c"], &["a", "c"]);
        w.xy = inc(&["a"], &["a", "c"]);
        w.yb2 = SetInjection::from_pairs(&s(&["a", "c"]), &s(&["a", "c"]), &[("a".into(), "c".into()), ("c".into(), "a".into())]).unwrap();
        assert!(matches!(snake_weak(&FinSet, &w), Err(Error::Validation(_))));
    }

    #[test]
    fn les_of_identity_inclusion() {
        let x = ChainComplex::concentrated(1, s(&["a", "b"]));
        let f = HorChainMor::new(x.clone(), x.clone(), vec![inc(&["a", "b"], &["a", "b"])], vec![]).unwrap();
        let ses = ChainSes::from_hor(&FinSet, f).unwrap();
        let z = les_of_ses(&FinSet, &ses).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.transition(&FinSet, 0).is_iso(&FinSet));
        assert!(z.is_exact(&FinSet));
    }
}
