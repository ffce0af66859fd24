//! Seeded generators for every input shape. Elements are literal names and every leg is the
//! inclusion by name, so generated values can be printed and re-parsed without map data.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::acgw::FlatMor;
use crate::chains::{validate_chain_map, validate_complex, ChainComplex, ChainMap, ChainSes, HorChainMor, VerChainMor};
use crate::error::{Error, Result};
use crate::finset::{FinSet, FinSetObj, SetInjection};
use crate::linear::Linear;
use crate::matrix::Matrix;
use crate::snake::{validate_strong, validate_weak, StrongSnakeInput, WeakSnakeInput};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenConfig {
    pub seed: u64,
    /// Largest object in a base complex; extensions may add a few elements on top.
    pub max_size: usize,
    /// Longest support.
    pub max_len: usize,
    pub p: u32,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 42, max_size: 8, max_len: 6, p: 2 }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig { seed, ..Default::default() }
    }

    pub fn sized(seed: u64, max_size: usize, max_len: usize) -> Self {
        GenConfig { seed, max_size, max_len, ..Default::default() }
    }
}

type Set = BTreeSet<u32>;

/// Objects and transitions as element-id sets over a common support; `trans[k]` sits at degree `lo + 1 + k`.
#[derive(Clone, Debug)]
struct Raw {
    lo: i64,
    objs: Vec<Set>,
    trans: Vec<Set>,
}

impl Raw {
    fn hi(&self) -> i64 {
        self.lo + self.objs.len() as i64 - 1
    }

    fn obj(&self, i: i64) -> Set {
        if i < self.lo || i > self.hi() {
            Set::new()
        } else {
            self.objs[(i - self.lo) as usize].clone()
        }
    }

    fn tr(&self, i: i64) -> Set {
        if i <= self.lo || i > self.hi() {
            Set::new()
        } else {
            self.trans[(i - self.lo - 1) as usize].clone()
        }
    }

    fn blank(lo: i64, len: usize) -> Raw {
        Raw { lo, objs: vec![Set::new(); len], trans: vec![Set::new(); len.saturating_sub(1)] }
    }

    fn set_obj(&mut self, i: i64, s: Set) {
        self.objs[(i - self.lo) as usize] = s;
    }

    fn set_tr(&mut self, i: i64, s: Set) {
        self.trans[(i - self.lo - 1) as usize] = s;
    }

    fn build(&self) -> Result<ChainComplex<FinSet>> {
        if self.objs.is_empty() {
            return Ok(ChainComplex::zero());
        }
        let objs: Vec<FinSetObj> = self.objs.iter().map(named).collect::<Result<_>>()?;
        let mut trans = Vec::new();
        for (k, t) in self.trans.iter().enumerate() {
            let mid = named(t)?;
            let back = SetInjection::inclusion(&mid, &objs[k + 1])?;
            let front = SetInjection::inclusion(&mid, &objs[k])?;
            trans.push(FlatMor::new(&FinSet, back, front)?);
        }
        ChainComplex::new(self.lo, objs, trans)
    }
}

fn named(s: &Set) -> Result<FinSetObj> {
    FinSetObj::new(s.iter().map(|k| format!("e{k}")))
}

fn obj(s: &Set) -> FinSetObj {
    named(s).expect("distinct ids")
}

fn inc(a: &FinSetObj, b: &FinSetObj) -> Result<SetInjection> {
    SetInjection::inclusion(a, b)
}

/// Name-inclusion legs between complexes on a common support.
fn hor_mor(src: &ChainComplex<FinSet>, tgt: &ChainComplex<FinSet>) -> Result<HorChainMor<FinSet>> {
    let lev = src.degrees().map(|i| inc(&src.obj(&FinSet, i), &tgt.obj(&FinSet, i))).collect::<Result<_>>()?;
    let tlev = (src.lo() + 1..=src.hi())
        .map(|i| inc(&src.tr(&FinSet, i).mid, &tgt.tr(&FinSet, i).mid))
        .collect::<Result<_>>()?;
    HorChainMor::new(src.clone(), tgt.clone(), lev, tlev)
}

fn ver_mor(src: &ChainComplex<FinSet>, tgt: &ChainComplex<FinSet>) -> Result<VerChainMor<FinSet>> {
    let h = hor_mor(src, tgt)?;
    let lev = src.degrees().map(|i| h.lev(&FinSet, i)).collect();
    let tlev = (src.lo() + 1..=src.hi()).map(|i| h.tlev(&FinSet, i)).collect();
    VerChainMor::new(src.clone(), tgt.clone(), lev, tlev)
}

fn chain_map(x: &ChainComplex<FinSet>, z: &ChainComplex<FinSet>, y: &ChainComplex<FinSet>) -> Result<ChainMap<FinSet>> {
    let v = ver_mor(z, x)?;
    let h = hor_mor(z, y)?;
    let zx = z.degrees().map(|i| v.lev(&FinSet, i)).collect();
    let tzx = (z.lo() + 1..=z.hi()).map(|i| v.tlev(&FinSet, i)).collect();
    let zy = z.degrees().map(|i| h.lev(&FinSet, i)).collect();
    let tzy = (z.lo() + 1..=z.hi()).map(|i| h.tlev(&FinSet, i)).collect();
    ChainMap::new(x.clone(), z.clone(), y.clone(), zx, tzx, zy, tzy)
}

/// Deterministic generator stream.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    next: u32,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Result<Self> {
        if !crate::matrix::is_prime(cfg.p) {
            return Err(Error::Generator(format!("{} is not prime", cfg.p)));
        }
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Ok(Generator { cfg, rng, next: 0 })
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    fn fresh(&mut self, k: usize) -> Set {
        let s = (self.next..self.next + k as u32).collect();
        self.next += k as u32;
        s
    }

    fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    fn subset(&mut self, s: &Set) -> Set {
        s.iter().copied().filter(|_| self.rng.gen_bool(0.5)).collect()
    }

    fn upto(&mut self, k: usize) -> usize {
        self.rng.gen_range(0..=k)
    }

    fn support(&mut self) -> (i64, usize) {
        let len = self.rng.gen_range(1..=self.cfg.max_len.max(1));
        (self.rng.gen_range(0..=2), len)
    }

    fn raw_complex(&mut self) -> Raw {
        if self.cfg.max_size == 0 || self.cfg.max_len == 0 {
            return Raw::blank(0, 0);
        }
        let (lo, len) = self.support();
        let mut r = Raw::blank(lo, len);
        let mut above = Set::new();
        for i in (lo..=r.hi()).rev() {
            let n = self.upto(self.cfg.max_size - above.len());
            let mut x: Set = above.union(&self.fresh(n)).copied().collect();
            if i > lo {
                let rest: Set = x.difference(&above).copied().collect();
                above = self.subset(&rest);
                r.set_tr(i, above.clone());
            } else {
                above.clear();
            }
            std::mem::swap(&mut x, &mut r.objs[(i - lo) as usize]);
        }
        r
    }

    fn raw_exact(&mut self) -> Raw {
        if self.cfg.max_size == 0 || self.cfg.max_len == 0 {
            return Raw::blank(0, 0);
        }
        let (lo, len) = self.support();
        let mut r = Raw::blank(lo, len);
        let mut above = Set::new();
        for i in (lo..=r.hi()).rev() {
            if i == lo {
                r.set_obj(i, above.clone());
                break;
            }
            let piece = {
                let n = self.upto(self.cfg.max_size - above.len());
                self.fresh(n)
            };
            r.set_obj(i, above.union(&piece).copied().collect());
            r.set_tr(i, piece.clone());
            above = piece;
        }
        r
    }

    /// Top-down `X ⊆ Y` with `X̄_i = X_i ∩ Ȳ_i` and `X̄_i ⊆ X_{i−1}`.
    fn sub_hor(&mut self, y: &Raw) -> Raw {
        let mut x = Raw::blank(y.lo, y.objs.len());
        let mut above = Set::new();
        for i in (y.lo..=y.hi()).rev() {
            let rest: Set = y.obj(i).difference(&above).copied().collect();
            let xi: Set = above.union(&self.subset(&rest)).copied().collect();
            above = xi.intersection(&y.tr(i)).copied().collect();
            if i > y.lo {
                x.set_tr(i, above.clone());
            }
            x.set_obj(i, xi);
        }
        x
    }

    /// Bottom-up `W ⊆ Y` with `W̄_i = Ȳ_i ∩ W_{i−1}` and `W̄_i ⊆ W_i`.
    fn sub_ver(&mut self, y: &Raw) -> Raw {
        let mut w = Raw::blank(y.lo, y.objs.len());
        let mut below = Set::new();
        for i in y.lo..=y.hi() {
            let tb: Set = if i > y.lo { y.tr(i).intersection(&below).copied().collect() } else { Set::new() };
            let rest: Set = y.obj(i).difference(&tb).copied().collect();
            let wi: Set = tb.union(&self.subset(&rest)).copied().collect();
            if i > y.lo {
                w.set_tr(i, tb);
            }
            below = wi.clone();
            w.set_obj(i, wi);
        }
        w
    }

    /// `Y ⊇ Z` with `Ȳ_i = Z̄_i ⊔ E_i` and `Z_i ∩ Ȳ_i = Z̄_i`.
    fn ext_hor(&mut self, z: &Raw) -> Raw {
        let mut y = Raw::blank(z.lo, z.objs.len());
        for i in z.lo + 1..=z.hi() {
            let cand: Set = z.obj(i - 1).difference(&z.tr(i - 1)).filter(|e| !z.tr(i).contains(e)).copied().collect();
            let n = self.upto(1);
            let e: Set = self.subset(&cand).union(&self.fresh(n)).copied().collect();
            y.set_tr(i, z.tr(i).union(&e).copied().collect());
        }
        for i in z.lo..=z.hi() {
            let n = self.upto(1);
            let mut yi: Set = z.obj(i).union(&y.tr(i)).copied().collect();
            yi.extend(y.tr(i + 1));
            yi.extend(self.fresh(n));
            y.set_obj(i, yi);
        }
        y
    }

    /// `X ⊇ Z` with `X̄_i = Z̄_i ⊔ F_i` and `X̄_i ∩ Z_{i−1} = Z̄_i`.
    fn ext_ver(&mut self, z: &Raw) -> Raw {
        let mut x = Raw::blank(z.lo, z.objs.len());
        for i in z.lo + 1..=z.hi() {
            let cand: Set = z.obj(i).difference(&z.tr(i)).filter(|e| !z.tr(i + 1).contains(e)).copied().collect();
            let n = self.upto(1);
            let f: Set = self.subset(&cand).union(&self.fresh(n)).copied().collect();
            x.set_tr(i, z.tr(i).union(&f).copied().collect());
        }
        for i in z.lo..=z.hi() {
            let n = self.upto(1);
            let mut xi: Set = z.obj(i).union(&x.tr(i)).copied().collect();
            xi.extend(x.tr(i + 1));
            xi.extend(self.fresh(n));
            x.set_obj(i, xi);
        }
        x
    }

    fn attempt<T>(&mut self, what: &str, mut f: impl FnMut(&mut Self) -> Result<Option<T>>) -> Result<T> {
        for _ in 0..MAX_ATTEMPTS {
            if let Some(v) = f(self)? {
                return Ok(v);
            }
        }
        Err(Error::Generator(format!("no valid {what} after {MAX_ATTEMPTS} attempts")))
    }

    pub fn complex(&mut self) -> Result<ChainComplex<FinSet>> {
        self.attempt("complex", |g| {
            let x = g.raw_complex().build()?;
            Ok(validate_complex(&FinSet, &x).is_empty().then_some(x))
        })
    }

    pub fn exact_complex(&mut self) -> Result<ChainComplex<FinSet>> {
        self.attempt("exact complex", |g| {
            let x = g.raw_exact().build()?;
            Ok(validate_complex(&FinSet, &x).is_empty().then_some(x))
        })
    }

    pub fn hor_mor(&mut self) -> Result<HorChainMor<FinSet>> {
        self.attempt("horizontal morphism", |g| {
            let y = g.raw_complex();
            let x = g.sub_hor(&y);
            let f = hor_mor(&x.build()?, &y.build()?)?;
            Ok(crate::chains::validate_hor(&FinSet, &f).is_empty().then_some(f))
        })
    }

    pub fn ver_mor(&mut self) -> Result<VerChainMor<FinSet>> {
        self.attempt("vertical morphism", |g| {
            let y = g.raw_complex();
            let z = g.sub_ver(&y);
            let f = ver_mor(&z.build()?, &y.build()?)?;
            Ok(crate::chains::validate_ver(&FinSet, &f).is_empty().then_some(f))
        })
    }

    fn raw_map(&mut self) -> (Raw, Raw, Raw) {
        let z = self.raw_complex();
        let x = self.ext_ver(&z);
        let y = self.ext_hor(&z);
        (x, z, y)
    }

    pub fn chain_map(&mut self) -> Result<ChainMap<FinSet>> {
        self.attempt("chain map", |g| {
            let (x, z, y) = g.raw_map();
            let f = chain_map(&x.build()?, &z.build()?, &y.build()?)?;
            Ok(validate_chain_map(&FinSet, &f).is_empty().then_some(f))
        })
    }

    /// `f : X → Y` and `g : Y → V`.
    pub fn composable_pair(&mut self) -> Result<(ChainMap<FinSet>, ChainMap<FinSet>)> {
        self.attempt("composable pair", |g| {
            let (x, z, y) = g.raw_map();
            let w = g.sub_ver(&y);
            let v = g.ext_hor(&w);
            let yc = y.build()?;
            let f = chain_map(&x.build()?, &z.build()?, &yc)?;
            let h = chain_map(&yc, &w.build()?, &v.build()?)?;
            let ok = validate_chain_map(&FinSet, &f).is_empty() && validate_chain_map(&FinSet, &h).is_empty();
            Ok(ok.then_some((f, h)))
        })
    }

    pub fn ses(&mut self) -> Result<ChainSes<FinSet>> {
        let f = self.hor_mor()?;
        ChainSes::from_hor(&FinSet, f)
    }

    fn raw_weak(&mut self, cap: usize) -> [Set; 9] {
        let ny = self.upto(cap);
        let y = self.fresh(ny);
        let nb = self.upto(cap - ny);
        let b: Set = y.union(&self.fresh(nb)).copied().collect();
        let a = self.subset(&b);
        let c: Set = b.difference(&a).copied().collect();
        let x: Set = a.intersection(&y).copied().collect();
        let ymx: Set = y.difference(&x).copied().collect();
        let z = self.subset(&ymx);
        let nb2 = self.upto(cap - ny);
        let extra = self.fresh(nb2);
        let b2: Set = y.union(&extra).copied().collect();
        let c2: Set = z.union(&self.subset(&extra)).copied().collect();
        let a2: Set = b2.difference(&c2).copied().collect();
        [a, b, c, x, y, z, a2, b2, c2]
    }

    fn weak_from(&self, s: &[Set; 9]) -> Result<WeakSnakeInput<FinSet>> {
        let [a, b, c, x, y, z, a2, b2, c2] = s.each_ref().map(obj);
        Ok(WeakSnakeInput {
            ab: inc(&a, &b)?,
            cb: inc(&c, &b)?,
            xy: inc(&x, &y)?,
            zy: inc(&z, &y)?,
            a2b2: inc(&a2, &b2)?,
            c2b2: inc(&c2, &b2)?,
            xa: inc(&x, &a)?,
            xa2: inc(&x, &a2)?,
            yb: inc(&y, &b)?,
            yb2: inc(&y, &b2)?,
            zc: inc(&z, &c)?,
            zc2: inc(&z, &c2)?,
        })
    }

    /// Weak snake input with every object of size at most `max(max_size, 1)`, capped at 6.
    pub fn weak_snake(&mut self) -> Result<WeakSnakeInput<FinSet>> {
        let cap = self.cfg.max_size.clamp(1, 6);
        self.attempt("weak snake", |g| {
            let raw = g.raw_weak(cap);
            let s = g.weak_from(&raw)?;
            Ok(validate_weak(&FinSet, &s).is_empty().then_some(s))
        })
    }

    /// Strong input: a weak one with `A` and `C'` enlarged by fresh elements.
    pub fn strong_snake(&mut self) -> Result<StrongSnakeInput<FinSet>> {
        let cap = self.cfg.max_size.clamp(1, 6);
        self.attempt("strong snake", |g| {
            let raw = g.raw_weak(cap.saturating_sub(1).max(1));
            let w = g.weak_from(&raw)?;
            let (na, nc) = (g.upto(1), g.upto(1));
            let a_full = obj(&raw[0].union(&g.fresh(na)).copied().collect());
            let c2_full = obj(&raw[8].union(&g.fresh(nc)).copied().collect());
            let [abar, _, _, x, _, z, _, _, c2bar] = raw.each_ref().map(obj);
            let s = StrongSnakeInput {
                abar_a: inc(&abar, &a_full)?,
                abar_b: w.ab,
                cb: w.cb,
                xy: w.xy,
                zy: w.zy,
                a2b2: w.a2b2,
                c2bar_b2: w.c2b2,
                c2bar_c2: inc(&c2bar, &c2_full)?,
                xa: inc(&x, &a_full)?,
                xabar: w.xa,
                xa2: w.xa2,
                yb: w.yb,
                yb2: w.yb2,
                zc: w.zc,
                zc2bar: w.zc2,
                zc2: inc(&z, &c2_full)?,
            };
            Ok(validate_strong(&FinSet, &s).is_empty().then_some(s))
        })
    }

    /// Random invertible `n × n` matrix over 𝔽_p.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let p = self.cfg.p;
        loop {
            let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| self.rng.gen_range(0..p)).collect()).collect();
            let m = Matrix::from_rows(&rows, n, p).expect("entries in range");
            if m.rank() == n {
                return m;
            }
        }
    }

    /// A set complex pushed into the linear instance with a random basis change on every object.
    pub fn linear_complex(&mut self) -> Result<(ChainComplex<FinSet>, ChainComplex<Linear>)> {
        let x = self.complex()?;
        let p = self.cfg.p;
        let l = crate::oracle::linearize_complex(&x, p, |_, n| self.invertible(n))?;
        Ok((x, l))
    }

    pub fn bool(&mut self) -> bool {
        self.coin()
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> Option<&'a T> {
        xs.choose(&mut self.rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = Generator::new(GenConfig::with_seed(42)).unwrap().complex().unwrap();
        let b = Generator::new(GenConfig::with_seed(42)).unwrap().complex().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn size_zero_is_empty() {
        let mut g = Generator::new(GenConfig::sized(3, 0, 4)).unwrap();
        assert!(g.complex().unwrap().support_is_empty());
    }

    #[test]
    fn exact_is_exact() {
        let mut g = Generator::new(GenConfig::with_seed(9)).unwrap();
        for _ in 0..50 {
            let x = g.exact_complex().unwrap();
            assert!(crate::homology::is_exact(&FinSet, &x).unwrap());
        }
    }

    #[test]
    fn everything_validates() {
        let mut g = Generator::new(GenConfig::with_seed(1)).unwrap();
        for _ in 0..30 {
            g.chain_map().unwrap();
            g.composable_pair().unwrap();
            g.ses().unwrap();
            g.weak_snake().unwrap();
            g.strong_snake().unwrap();
            g.ver_mor().unwrap();
        }
    }
}
