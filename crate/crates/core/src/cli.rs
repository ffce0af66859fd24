//! Command implementations behind the `acgw` binary and the C ABI.
//!
//! Every command takes document text and returns what would be printed plus an exit code:
//! 0 on success, 1 on a semantic failure, 2 on a parse or usage error.

use std::fmt::Write as _;

use serde_json::{json, Value as Json};

use crate::acgw::FlatMor;
use crate::chains::{validate_chain_map, validate_complex, validate_hor, validate_ver, ChainComplex, ChainMap};
use crate::document::{parse, to_json, to_text, Document, Item, Leg};
use crate::error::{Error, Result, Violation};
use crate::finset::FinSet;
use crate::gen::{GenConfig, Generator};
use crate::homology::{cardinality_law, homology_at, is_exact, is_quasi_iso};
use crate::linear::Linear;
use crate::model::{
    build, complex_decl, document, hor_decl, map_decl, strong_decl, ver_decl, weak_decl, AnyModel, Buildable, Model,
    SnakeSpec,
};
use crate::oracle::{disagreements, rank_mod_p};
use crate::render::Dot;
use crate::snake::{les_of_ses, snake_strong, snake_weak, validate_strong, validate_weak, ExactZigzag, SnakeOutput};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Homology,
    Exact,
    Snake,
    Les,
    MapHomology,
    Oracle,
    Render,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Validate,
        Command::Homology,
        Command::Exact,
        Command::Snake,
        Command::Les,
        Command::MapHomology,
        Command::Oracle,
        Command::Render,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Homology => "homology",
            Command::Exact => "exact",
            Command::Snake => "snake",
            Command::Les => "les",
            Command::MapHomology => "map-homology",
            Command::Oracle => "oracle",
            Command::Render => "render",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        _ => 1,
    }
}

fn error_json(e: &Error) -> Json {
    match e {
        Error::Parse { line, col, msg } => json!({"error": {"kind": "parse", "line": line, "col": col, "message": msg}}),
        Error::Validation(vs) => json!({"error": {"kind": "validation", "violations": vs}}),
        other => json!({"error": {"kind": "semantic", "message": other.to_string()}}),
    }
}

pub fn failure(e: &Error, json: bool) -> Outcome {
    let stderr = match e {
        Error::Validation(vs) => vs.iter().map(|v| format!("{v}\n")).collect(),
        other => format!("error: {other}\n"),
    };
    let stdout = if json { format!("{:#}\n", error_json(e)) } else { String::new() };
    Outcome { code: exit_code(e), stdout, stderr }
}

/// Parse `text`, build it, check it, and run `cmd`.
pub fn run_command(text: &str, cmd: Command, json: bool) -> Outcome {
    let res = parse(text).and_then(|(doc, spans)| build(&doc, &spans)).and_then(|m| match m {
        AnyModel::Set(m) => run(&m, cmd, json, Extra::Set(&m)),
        AnyModel::Linear(m) => run(&m, cmd, json, Extra::Linear(&m)),
    });
    match res {
        Ok(o) => o,
        Err(e) => failure(&e, json),
    }
}

/// Instance-specific hooks the generic runner needs.
enum Extra<'a> {
    Set(&'a Model<FinSet>),
    Linear(&'a Model<Linear>),
}

fn prefixed(name: &str, vs: Vec<Violation>) -> Vec<Violation> {
    vs.into_iter().map(|v| Violation { degree: v.degree, message: format!("{name}: {}", v.message) }).collect()
}

/// Every violation in the model, item by item.
pub fn violations<C: Buildable>(m: &Model<C>) -> Vec<Violation> {
    let inst = &m.inst;
    let mut out = Vec::new();
    for (n, x) in &m.complexes {
        out.extend(prefixed(n, validate_complex(inst, x)));
    }
    for (n, f) in &m.hors {
        out.extend(prefixed(n, validate_hor(inst, f)));
    }
    for (n, f) in &m.vers {
        out.extend(prefixed(n, validate_ver(inst, f)));
    }
    for (n, f) in &m.maps {
        out.extend(prefixed(n, validate_chain_map(inst, f)));
    }
    for (n, s) in &m.snakes {
        let vs = match s {
            SnakeSpec::Weak(w) => validate_weak(inst, w),
            SnakeSpec::Strong(w) => validate_strong(inst, w),
        };
        out.extend(prefixed(n, vs));
    }
    out
}

fn leg_text(l: &Leg) -> String {
    match l {
        Leg::Pairs(ps) => format!("{{{}}}", ps.iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(", ")),
        Leg::Matrix(rows) => format!(
            "[{}]",
            rows.iter()
                .map(|r| format!("[{}]", r.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

/// `src ⇐ mid ↪ tgt`, with any leg that is not a plain inclusion spelled out.
pub fn span_text<C: Buildable>(inst: &C, t: &FlatMor<C>) -> String {
    let mut s = format!("{} ⇐ {} ↪ {}", inst.describe(&t.src), inst.describe(&t.mid), inst.describe(&t.tgt));
    if let Some(l) = inst.ver_leg(&t.back) {
        let _ = write!(s, "  back {}", leg_text(&l));
    }
    if let Some(l) = inst.hor_leg(&t.front) {
        let _ = write!(s, "  front {}", leg_text(&l));
    }
    s
}

fn obj_json<C: Buildable>(inst: &C, o: &C::Obj) -> Json {
    serde_json::to_value(inst.value_of(o)).expect("values serialize")
}

fn span_json<C: Buildable>(inst: &C, t: &FlatMor<C>) -> Json {
    json!({
        "src": obj_json(inst, &t.src),
        "mid": obj_json(inst, &t.mid),
        "tgt": obj_json(inst, &t.tgt),
        "back": inst.ver_leg(&t.back),
        "front": inst.hor_leg(&t.front),
        "zero": t.is_zero(inst),
        "iso": t.is_iso(inst),
    })
}

fn zigzag_text<C: Buildable>(inst: &C, z: &ExactZigzag<C>, out: &mut String) {
    let objs = z.objects(inst);
    let trs = z.transitions(inst);
    for (j, o) in objs.iter().enumerate() {
        let _ = writeln!(out, "  {} = {}", z.labels[j].name, inst.describe(o));
        if let Some(t) = trs.get(j) {
            let _ = writeln!(out, "    {}: {}", z.tr_labels[j], span_text(inst, t));
        }
    }
}

fn zigzag_json<C: Buildable>(inst: &C, z: &ExactZigzag<C>) -> Json {
    let objs: Vec<Json> = z
        .objects(inst)
        .iter()
        .zip(&z.labels)
        .map(|(o, l)| json!({"label": l.name, "degree": l.degree, "complex": l.complex, "value": obj_json(inst, o)}))
        .collect();
    let trs: Vec<Json> = z
        .transitions(inst)
        .iter()
        .zip(&z.tr_labels)
        .map(|(t, l)| json!({"label": l, "span": span_json(inst, t)}))
        .collect();
    json!({"objects": objs, "transitions": trs, "exact": z.is_exact(inst), "alternating_sum": z.alternating_sum(inst)})
}

fn emit(json: bool, text: String, value: Json) -> Outcome {
    if json {
        Outcome::ok(format!("{value:#}\n"))
    } else {
        Outcome::ok(text)
    }
}

fn plural(n: usize, word: &str) -> String {
    format!("{n} {word}{}", if n == 1 { "" } else { "s" })
}

fn run<C: Buildable>(m: &Model<C>, cmd: Command, json: bool, extra: Extra) -> Result<Outcome> {
    let vs = violations(m);
    if !vs.is_empty() {
        return Err(Error::Validation(vs));
    }
    let inst = &m.inst;
    match cmd {
        Command::Validate => {
            let summary = format!(
                "ok: {}, {}, {}, {}, {}, {}\n",
                plural(m.complexes.len(), "complex").replace("complexs", "complexes"),
                plural(m.hors.len(), "horizontal morphism"),
                plural(m.vers.len(), "vertical morphism"),
                plural(m.maps.len(), "chain map"),
                plural(m.seses.len(), "short exact sequence"),
                plural(m.snakes.len(), "snake diagram"),
            );
            Ok(emit(json, summary, json!({"ok": true, "violations": []})))
        }
        Command::Homology => homology_cmd(m, json),
        Command::Exact => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for (n, x) in &m.complexes {
                let e = is_exact(inst, x)?;
                let _ = writeln!(text, "{n}: {}", if e { "exact" } else { "not exact" });
                rows.push(json!({"name": n, "exact": e}));
            }
            Ok(emit(json, text, json!({"complexes": rows})))
        }
        Command::Snake => {
            if m.snakes.is_empty() {
                return Err(Error::pre("the document declares no snake diagram"));
            }
            let mut text = String::new();
            let mut rows = Vec::new();
            for (n, s) in &m.snakes {
                let (kind, out): (&str, SnakeOutput<C>) = match s {
                    SnakeSpec::Weak(w) => ("weak", snake_weak(inst, w)?),
                    SnakeSpec::Strong(w) => ("strong", snake_strong(inst, w)?),
                };
                let z = &out.zigzag;
                let _ = writeln!(text, "{n} ({kind} snake):");
                zigzag_text(inst, z, &mut text);
                let _ = writeln!(text, "  exact: {}", yes(z.is_exact(inst)));
                rows.push(json!({"name": n, "kind": kind, "zigzag": zigzag_json(inst, z)}));
            }
            Ok(emit(json, text, json!({"snakes": rows})))
        }
        Command::Les => {
            if m.seses.is_empty() {
                return Err(Error::pre("the document declares no short exact sequence"));
            }
            let mut text = String::new();
            let mut rows = Vec::new();
            for (n, s) in &m.seses {
                let mut z = les_of_ses(inst, &s.ses)?;
                let [a, b, c] = &s.names;
                z.relabel_complexes([a, b, c]);
                let _ = writeln!(text, "{n}: {a} ↪ {b} ⇐ {c}");
                zigzag_text(inst, &z, &mut text);
                let _ = writeln!(text, "  exact: {}", yes(z.is_exact(inst)));
                rows.push(json!({"name": n, "complexes": s.names, "zigzag": zigzag_json(inst, &z)}));
            }
            Ok(emit(json, text, json!({"sequences": rows})))
        }
        Command::MapHomology => map_homology_cmd(m, json),
        Command::Oracle => {
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut bad = false;
            for (n, _) in &m.complexes {
                let dis = match extra {
                    Extra::Set(sm) => disagreements(named(&sm.complexes, n), 2)?,
                    Extra::Linear(lm) => linear_disagreements(lm, n)?,
                };
                if dis.is_empty() {
                    let _ = writeln!(text, "{n}: agree at all degrees");
                } else {
                    bad = true;
                    for (i, h, r) in &dis {
                        let _ = writeln!(text, "{n}: disagree at degree {i}: |H_{i}| = {h}, rank dimension = {r}");
                    }
                }
                let d: Vec<Json> = dis.iter().map(|(i, h, r)| json!({"degree": i, "homology": h, "rank": r})).collect();
                rows.push(json!({"name": n, "agree": dis.is_empty(), "disagreements": d}));
            }
            let mut o = emit(json, text, json!({"complexes": rows}));
            if bad {
                o.code = 1;
            }
            Ok(o)
        }
        Command::Render => {
            let mut dot = Dot::new();
            for (n, x) in &m.complexes {
                dot.complex(inst, n, x)?;
            }
            for (n, s) in &m.seses {
                let mut z = les_of_ses(inst, &s.ses)?;
                let [a, b, c] = &s.names;
                z.relabel_complexes([a, b, c]);
                dot.zigzag(inst, &format!("{n}: long exact sequence"), &z);
            }
            for (n, s) in &m.snakes {
                let out = match s {
                    SnakeSpec::Weak(w) => snake_weak(inst, w)?,
                    SnakeSpec::Strong(w) => snake_strong(inst, w)?,
                };
                dot.zigzag(inst, &format!("{n}: snake"), &out.zigzag);
            }
            let s = dot.finish();
            Ok(emit(json, s.clone(), json!({"dot": s})))
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn named<'a, T>(v: &'a [(String, T)], name: &str) -> &'a T {
    &v.iter().find(|(n, _)| n == name).expect("declared").1
}

/// Compare `dim H_i` against `n_i − rank d_i − rank d_{i+1}` with `d_i = front ∘ back`.
fn linear_disagreements(m: &Model<Linear>, name: &str) -> Result<Vec<(i64, usize, usize)>> {
    let inst = &m.inst;
    let x = named(&m.complexes, name);
    let rank = |i: i64| {
        let t = x.tr(inst, i);
        rank_mod_p(&t.front.mat.mul(&t.back.mat).to_rows(), inst.p())
    };
    let mut out = Vec::new();
    for i in x.degrees() {
        let h = homology_at(inst, x, i)?.dim;
        let r = x.obj(inst, i).dim - rank(i) - rank(i + 1);
        if h != r {
            out.push((i, h, r));
        }
    }
    Ok(out)
}

fn homology_cmd<C: Buildable>(m: &Model<C>, json: bool) -> Result<Outcome> {
    let inst = &m.inst;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (n, x) in &m.complexes {
        let mut hs = Vec::new();
        let mut law = true;
        for i in x.degrees().rev() {
            let h = homology_at(inst, x, i)?;
            law &= cardinality_law(inst, x, i)?;
            let _ = writeln!(text, "H_{i}({n}) = {}", inst.describe(&h));
            hs.push(json!({"degree": i, "value": obj_json(inst, &h), "size": inst.size(&h)}));
        }
        if x.support_is_empty() {
            let _ = writeln!(text, "H({n}) = 0 in every degree");
        }
        let _ = writeln!(
            text,
            "cardinality law for {n}: |H_i| = |{n}_i| - |{n}̄_i| - |{n}̄_(i+1)| {}",
            if law { "holds at all degrees" } else { "FAILS" }
        );
        rows.push(json!({"name": n, "homology": hs, "cardinality_law": law}));
    }
    Ok(emit(json, text, json!({"complexes": rows})))
}

fn map_homology_cmd<C: Buildable>(m: &Model<C>, json: bool) -> Result<Outcome> {
    let inst = &m.inst;
    let mut all: Vec<(&str, ChainMap<C>)> = m.maps.iter().map(|(n, f)| (n.as_str(), f.clone())).collect();
    all.extend(m.hors.iter().map(|(n, f)| (n.as_str(), f.to_chain_map(inst))));
    all.extend(m.vers.iter().map(|(n, f)| (n.as_str(), f.to_chain_map(inst))));
    if all.is_empty() {
        return Err(Error::pre("the document declares no chain map or morphism"));
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for (n, f) in &all {
        let _ = writeln!(text, "{n}:");
        let mut spans = Vec::new();
        for (i, h) in crate::homology::h_on_map_all(inst, f)?.into_iter().rev() {
            let _ = writeln!(text, "  H_{i}: {}", span_text(inst, &h));
            spans.push(json!({"degree": i, "span": span_json(inst, &h)}));
        }
        let q = is_quasi_iso(inst, f)?;
        let _ = writeln!(text, "  quasi-isomorphism: {}", yes(q));
        rows.push(json!({"name": n, "spans": spans, "quasi_iso": q}));
    }
    Ok(emit(json, text, json!({"maps": rows})))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Complex,
    Exact,
    Map,
    Ses,
    Snake,
    StrongSnake,
    Linear,
}

impl GenKind {
    pub const ALL: [GenKind; 7] =
        [GenKind::Complex, GenKind::Exact, GenKind::Map, GenKind::Ses, GenKind::Snake, GenKind::StrongSnake, GenKind::Linear];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Complex => "complex",
            GenKind::Exact => "exact",
            GenKind::Map => "map",
            GenKind::Ses => "ses",
            GenKind::Snake => "snake",
            GenKind::StrongSnake => "strong-snake",
            GenKind::Linear => "linear",
        }
    }

    pub fn from_name(s: &str) -> Option<GenKind> {
        GenKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// A random document of the given kind; `linear` is an 𝔽₂ complex.
pub fn generate_document(kind: GenKind, seed: u64, size: Option<usize>) -> Result<Document> {
    let base = GenConfig::with_seed(seed);
    let cfg = match size {
        Some(k) => GenConfig::sized(seed, k, base.max_len),
        None => base,
    };
    let mut g = Generator::new(cfg)?;
    let s = &FinSet;
    let cx = |n: &str, x: &ChainComplex<FinSet>| Item::Complex(complex_decl(s, n, x));
    Ok(match kind {
        GenKind::Complex => document(s, vec![cx("X", &g.complex()?)]),
        GenKind::Exact => document(s, vec![cx("X", &g.exact_complex()?)]),
        GenKind::Map => {
            let f = g.chain_map()?;
            let items =
                vec![cx("X", &f.src), cx("Z", &f.mid), cx("Y", &f.tgt), Item::Map(map_decl(s, "f", ["X", "Z", "Y"], &f))];
            document(s, items)
        }
        GenKind::Ses => {
            let q = g.ses()?;
            let items = vec![
                cx("X", q.x()),
                cx("Y", q.y()),
                cx("Z", q.z()),
                Item::Hor(hor_decl(s, "f", "X", "Y", &q.hor)),
                Item::Ver(ver_decl(s, "g", "Z", "Y", &q.ver)),
                Item::Ses(crate::document::SesDecl { name: "s".into(), hor: "f".into(), ver: Some("g".into()) }),
            ];
            document(s, items)
        }
        GenKind::Snake => document(s, vec![Item::Snake(weak_decl(s, "S", &g.weak_snake()?))]),
        GenKind::StrongSnake => document(s, vec![Item::Snake(strong_decl(s, "S", &g.strong_snake()?))]),
        GenKind::Linear => {
            let (_, l) = g.linear_complex()?;
            let lin = Linear::new(2)?;
            document(&lin, vec![Item::Complex(complex_decl(&lin, "X", &l))])
        }
    })
}

pub fn generate(kind: GenKind, seed: u64, size: Option<usize>, json: bool) -> Outcome {
    match generate_document(kind, seed, size) {
        Ok(d) if json => Outcome::ok(to_json(&d) + "\n"),
        Ok(d) => Outcome::ok(to_text(&d)),
        Err(e) => failure(&e, json),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_output_validates() {
        for kind in GenKind::ALL {
            for seed in 0..5 {
                let g = generate(kind, seed, None, false);
                assert_eq!(g.code, 0, "{kind:?} {seed}: {}", g.stderr);
                let v = run_command(&g.stdout, Command::Validate, false);
                assert_eq!(v.code, 0, "{kind:?} {seed}: {}\n{}", v.stderr, g.stdout);
            }
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_command("instance set\nbogus\n", Command::Validate, false).code, 2);
        let bad = "instance set\ncomplex X 0..2\n  obj 2 {a}\n  obj 1 {a}\n  obj 0 {a}\n  tr 2 {a}\n  tr 1 {a}\nend\n";
        let o = run_command(bad, Command::Homology, false);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("degree"), "{}", o.stderr);
        assert_eq!(run_command("instance set\n", Command::Snake, false).code, 1);
    }

    #[test]
    fn json_mode() {
        let o = run_command("instance set\ncomplex X 1..1\n  obj 1 {a}\nend\n", Command::Homology, true);
        let v: Json = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["complexes"][0]["homology"][0]["size"], 1);
        let e = run_command("instance set\ncomplex X 1..1\n  obj 1 {a\n", Command::Homology, true);
        let v: Json = serde_json::from_str(&e.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "parse");
    }
}
