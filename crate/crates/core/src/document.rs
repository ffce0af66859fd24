//! The textual document format, its JSON twin, and the canonical serializer.
//!
//! ```text
//! instance set
//! complex X 0..2
//!   obj 2 {a, b}
//!   obj 1 {b}
//!   tr 2 {b}
//! end
//! ```
//!
//! Set legs default to inclusion by element name; linear legs are row-major matrices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub instance: Instance,
    #[serde(default)]
    pub items: Vec<Item>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Instance {
    Set,
    Linear { p: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Value {
    Elems(Vec<String>),
    Dim(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Leg {
    Pairs(Vec<(String, String)>),
    Matrix(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Item {
    Complex(ComplexDecl),
    Hor(MorDecl),
    Ver(MorDecl),
    Map(MapDecl),
    Ses(SesDecl),
    Snake(SnakeDecl),
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Complex(c) => &c.name,
            Item::Hor(m) | Item::Ver(m) => &m.name,
            Item::Map(m) => &m.name,
            Item::Ses(s) => &s.name,
            Item::Snake(s) => &s.name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDecl {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
    #[serde(default)]
    pub objs: Vec<ObjDecl>,
    #[serde(default)]
    pub trans: Vec<TrDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjDecl {
    pub degree: i64,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrDecl {
    pub degree: i64,
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub back: Option<Leg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub front: Option<Leg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelKind {
    /// Object leg of a horizontal or vertical morphism.
    At,
    /// Transition leg of a horizontal or vertical morphism.
    Tr,
    Ver,
    Hor,
    Tver,
    Thor,
}

impl LevelKind {
    fn keyword(self) -> &'static str {
        match self {
            LevelKind::At => "at",
            LevelKind::Tr => "tr",
            LevelKind::Ver => "ver",
            LevelKind::Hor => "hor",
            LevelKind::Tver => "tver",
            LevelKind::Thor => "thor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDecl {
    pub kind: LevelKind,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leg: Option<Leg>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorDecl {
    pub name: String,
    pub src: String,
    pub tgt: String,
    #[serde(default)]
    pub levels: Vec<LevelDecl>,
}

/// `X ⇐ Z ↪ Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDecl {
    pub name: String,
    pub src: String,
    pub mid: String,
    pub tgt: String,
    #[serde(default)]
    pub levels: Vec<LevelDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesDecl {
    pub name: String,
    pub hor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ver: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnakeDecl {
    pub name: String,
    pub strong: bool,
    #[serde(default)]
    pub objs: Vec<SnakeObj>,
    #[serde(default)]
    pub edges: Vec<EdgeDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnakeObj {
    pub key: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDecl {
    pub from: String,
    pub to: String,
    pub vertical: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leg: Option<Leg>,
}

/// Source line of every item, for error reporting after parsing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spans {
    pub items: Vec<usize>,
}

impl Spans {
    pub fn line_of(&self, k: usize) -> usize {
        self.items.get(k).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Quoted(String),
    Int(i64),
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Arrow,
    DArrow,
    LArrow,
    DotDot,
    Newline,
    Eof,
}

impl Tok {
    fn show(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Quoted(w) => format!("\"{w}\""),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`=>`".into(),
            Tok::LArrow => "`<=`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let col = k + 1;
            let next = chars.get(k + 1).copied();
            let (tok, len) = match c {
                '#' => break,
                c if c.is_whitespace() => {
                    k += 1;
                    continue;
                }
                '{' => (Tok::LBrace, 1),
                '}' => (Tok::RBrace, 1),
                '[' => (Tok::LBrack, 1),
                ']' => (Tok::RBrack, 1),
                ',' => (Tok::Comma, 1),
                ':' => (Tok::Colon, 1),
                '-' if next == Some('>') => (Tok::Arrow, 2),
                '=' if next == Some('>') => (Tok::DArrow, 2),
                '<' if next == Some('=') => (Tok::LArrow, 2),
                '.' if next == Some('.') => (Tok::DotDot, 2),
                '"' => {
                    let end = chars[k + 1..].iter().position(|&d| d == '"').ok_or_else(|| Error::Parse {
                        line: line_no,
                        col,
                        msg: "unterminated quoted name".into(),
                    })?;
                    (Tok::Quoted(chars[k + 1..k + 1 + end].iter().collect()), end + 2)
                }
                c if word_char(c) || (c == '-' && next.is_some_and(|d| d.is_ascii_digit())) => {
                    let mut e = k + 1;
                    while e < chars.len() && word_char(chars[e]) {
                        e += 1;
                    }
                    let w: String = chars[k..e].iter().collect();
                    let tok = match w.parse::<i64>() {
                        Ok(n) => Tok::Int(n),
                        Err(_) if c == '-' => {
                            return Err(Error::Parse { line: line_no, col, msg: format!("malformed number `{w}`") })
                        }
                        Err(_) => Tok::Word(w),
                    };
                    (tok, e - k)
                }
                other => return Err(Error::Parse { line: line_no, col, msg: format!("unexpected character `{other}`") }),
            };
            out.push((tok, line_no, col));
            k += len;
        }
        out.push((Tok::Newline, line_no, chars.len() + 1));
    }
    let last = src.lines().count() + 1;
    out.push((Tok::Eof, last, 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

type PResult<T> = Result<T>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    /// Error positioned at the token just consumed.
    fn err_prev<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (_, line, col) = &self.toks[self.pos.saturating_sub(1)];
        Err(Error::Parse { line: *line, col: *col, msg: msg.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", t.show(), self.peek().show()))
        }
    }

    fn skip_blank(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn end_line(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            t => self.err(format!("expected end of line, found {}", t.show())),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Tok::Word(w) if w == kw => {
                self.bump();
                Ok(())
            }
            t => self.err(format!("expected `{kw}`, found {}", t.show())),
        }
    }

    fn at_word(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Word(w) if w == kw)
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Word(w) | Tok::Quoted(w) => {
                self.bump();
                Ok(w)
            }
            t => self.err(format!("expected {what}, found {}", t.show())),
        }
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n.to_string())
            }
            _ => self.ident("an element name"),
        }
    }

    fn int(&mut self, what: &str) -> PResult<i64> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            t => self.err(format!("expected {what}, found {}", t.show())),
        }
    }

    fn uint(&mut self, what: &str) -> PResult<u64> {
        let n = self.int(what)?;
        u64::try_from(n).or_else(|_| self.err(format!("{what} must be non-negative")))
    }

    fn elems(&mut self) -> PResult<Vec<String>> {
        self.expect(Tok::LBrace)?;
        let mut v = Vec::new();
        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    return Ok(v);
                }
                Tok::Comma => {
                    self.bump();
                }
                _ => v.push(self.name()?),
            }
        }
    }

    fn pairs(&mut self) -> PResult<Vec<(String, String)>> {
        self.expect(Tok::LBrace)?;
        let mut v = Vec::new();
        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    return Ok(v);
                }
                Tok::Comma => {
                    self.bump();
                }
                _ => {
                    let a = self.name()?;
                    self.expect(Tok::Arrow)?;
                    let b = self.name()?;
                    v.push((a, b));
                }
            }
        }
    }

    fn matrix(&mut self) -> PResult<Vec<Vec<u32>>> {
        self.expect(Tok::LBrack)?;
        let mut rows = Vec::new();
        loop {
            match self.peek() {
                Tok::RBrack => {
                    self.bump();
                    return Ok(rows);
                }
                Tok::Comma => {
                    self.bump();
                }
                Tok::LBrack => {
                    self.bump();
                    let mut row = Vec::new();
                    loop {
                        match self.peek() {
                            Tok::RBrack => {
                                self.bump();
                                break;
                            }
                            Tok::Comma => {
                                self.bump();
                            }
                            _ => {
                                let n = self.uint("a matrix entry")?;
                                row.push(u32::try_from(n).or_else(|_| self.err("matrix entry too large"))?);
                            }
                        }
                    }
                    rows.push(row);
                }
                t => return self.err(format!("expected a matrix row, found {}", t.show())),
            }
        }
    }

    fn value(&mut self) -> PResult<Value> {
        if self.at_word("dim") {
            self.bump();
            Ok(Value::Dim(self.uint("a dimension")? as usize))
        } else {
            Ok(Value::Elems(self.elems()?))
        }
    }

    fn leg_opt(&mut self) -> PResult<Option<Leg>> {
        match self.peek() {
            Tok::LBrace => Ok(Some(Leg::Pairs(self.pairs()?))),
            Tok::LBrack => Ok(Some(Leg::Matrix(self.matrix()?))),
            _ => Ok(None),
        }
    }

    fn leg(&mut self) -> PResult<Leg> {
        match self.leg_opt()? {
            Some(l) => Ok(l),
            None => self.err(format!("expected a map or matrix, found {}", self.peek().show())),
        }
    }

    fn instance(&mut self) -> PResult<Instance> {
        self.skip_blank();
        self.keyword("instance")?;
        let inst = match self.ident("`set` or `linear`")?.as_str() {
            "set" => Instance::Set,
            "linear" => {
                let p = self.uint("a prime")?;
                Instance::Linear { p: u32::try_from(p).or_else(|_| self.err("prime too large"))? }
            }
            other => return self.err_prev(format!("unknown instance `{other}`")),
        };
        self.end_line()?;
        Ok(inst)
    }

    fn block_lines<T>(&mut self, mut line: impl FnMut(&mut Self, &str) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        loop {
            self.skip_blank();
            if *self.peek() == Tok::Eof {
                return self.err("missing `end`");
            }
            let kw = self.ident("a block line or `end`")?;
            if kw == "end" {
                self.end_line()?;
                return Ok(out);
            }
            out.push(line(self, &kw)?);
            self.end_line()?;
        }
    }

    fn complex(&mut self) -> PResult<ComplexDecl> {
        let name = self.ident("a complex name")?;
        let lo = self.int("the lowest degree")?;
        self.expect(Tok::DotDot)?;
        let hi = self.int("the highest degree")?;
        if hi < lo - 1 {
            return self.err("degree range is reversed");
        }
        self.end_line()?;
        let mut objs = Vec::new();
        let mut trans = Vec::new();
        self.block_lines(|p, kw| {
            match kw {
                "obj" => {
                    let degree = p.int("a degree")?;
                    objs.push(ObjDecl { degree, value: p.value()? });
                }
                "tr" => {
                    let degree = p.int("a degree")?;
                    let value = p.value()?;
                    let (mut back, mut front) = (None, None);
                    while let Tok::Word(w) = p.peek().clone() {
                        p.bump();
                        match w.as_str() {
                            "back" if back.is_none() => back = Some(p.leg()?),
                            "front" if front.is_none() => front = Some(p.leg()?),
                            _ => return p.err_prev(format!("unexpected `{w}` in transition")),
                        }
                    }
                    trans.push(TrDecl { degree, value, back, front });
                }
                other => return p.err_prev(format!("unknown complex line `{other}`")),
            }
            Ok(())
        })?;
        Ok(ComplexDecl { name, lo, hi, objs, trans })
    }

    fn levels(&mut self, allowed: &[LevelKind]) -> PResult<Vec<LevelDecl>> {
        let allowed = allowed.to_vec();
        self.block_lines(|p, kw| {
            let Some(kind) = allowed.iter().copied().find(|k| k.keyword() == kw) else {
                return p.err_prev(format!("unknown morphism line `{kw}`"));
            };
            let degree = p.int("a degree")?;
            Ok(LevelDecl { kind, degree, leg: p.leg_opt()? })
        })
    }

    fn mor(&mut self, arrow: Tok) -> PResult<MorDecl> {
        let name = self.ident("a morphism name")?;
        self.expect(Tok::Colon)?;
        let src = self.ident("a source complex")?;
        self.expect(arrow)?;
        let tgt = self.ident("a target complex")?;
        self.end_line()?;
        let levels = self.levels(&[LevelKind::At, LevelKind::Tr])?;
        Ok(MorDecl { name, src, tgt, levels })
    }

    fn map(&mut self) -> PResult<MapDecl> {
        let name = self.ident("a map name")?;
        self.expect(Tok::Colon)?;
        let src = self.ident("a source complex")?;
        self.expect(Tok::LArrow)?;
        let mid = self.ident("a middle complex")?;
        self.expect(Tok::Arrow)?;
        let tgt = self.ident("a target complex")?;
        self.end_line()?;
        let levels = self.levels(&[LevelKind::Ver, LevelKind::Hor, LevelKind::Tver, LevelKind::Thor])?;
        Ok(MapDecl { name, src, mid, tgt, levels })
    }

    fn ses(&mut self) -> PResult<SesDecl> {
        let name = self.ident("an sequence name")?;
        self.keyword("hor")?;
        let hor = self.ident("a horizontal morphism")?;
        let ver = if self.at_word("ver") {
            self.bump();
            Some(self.ident("a vertical morphism")?)
        } else {
            None
        };
        self.end_line()?;
        Ok(SesDecl { name, hor, ver })
    }

    fn snake(&mut self) -> PResult<SnakeDecl> {
        let strong = match self.ident("`weak` or `strong`")?.as_str() {
            "weak" => false,
            "strong" => true,
            other => return self.err_prev(format!("unknown snake kind `{other}`")),
        };
        let name = self.ident("a snake name")?;
        self.end_line()?;
        let mut objs = Vec::new();
        let mut edges = Vec::new();
        self.block_lines(|p, kw| {
            match kw {
                "obj" => {
                    let key = p.ident("an object key")?;
                    objs.push(SnakeObj { key, value: p.value()? });
                }
                "edge" => {
                    let from = p.ident("an object key")?;
                    let vertical = match p.bump() {
                        Tok::Arrow => false,
                        Tok::DArrow => true,
                        t => return p.err(format!("expected `->` or `=>`, found {}", t.show())),
                    };
                    let to = p.ident("an object key")?;
                    edges.push(EdgeDecl { from, to, vertical, leg: p.leg_opt()? });
                }
                other => return p.err_prev(format!("unknown snake line `{other}`")),
            }
            Ok(())
        })?;
        Ok(SnakeDecl { name, strong, objs, edges })
    }

    fn document(&mut self) -> PResult<(Document, Spans)> {
        let instance = self.instance()?;
        let mut items = Vec::new();
        let mut spans = Spans::default();
        loop {
            self.skip_blank();
            if *self.peek() == Tok::Eof {
                return Ok((Document { instance, items }, spans));
            }
            spans.items.push(self.here().0);
            let kw = self.ident("an item keyword")?;
            let item = match kw.as_str() {
                "complex" => Item::Complex(self.complex()?),
                "hor" => Item::Hor(self.mor(Tok::Arrow)?),
                "ver" => Item::Ver(self.mor(Tok::DArrow)?),
                "map" => Item::Map(self.map()?),
                "ses" => Item::Ses(self.ses()?),
                "snake" => Item::Snake(self.snake()?),
                other => return self.err_prev(format!("unknown item `{other}`")),
            };
            items.push(item);
        }
    }
}

/// Parse the text format.
pub fn parse_text(src: &str) -> Result<(Document, Spans)> {
    let toks = lex(src)?;
    Parser { toks, pos: 0 }.document()
}

pub fn parse_json(src: &str) -> Result<Document> {
    serde_json::from_str(src).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse(src: &str) -> Result<(Document, Spans)> {
    if src.trim_start().starts_with('{') {
        Ok((parse_json(src)?, Spans::default()))
    } else {
        parse_text(src)
    }
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn needs_quotes(s: &str) -> bool {
    let renumbered = s.parse::<i64>().is_ok_and(|n| n.to_string() != s);
    s.is_empty() || !s.chars().all(word_char) || renumbered
}

fn name(s: &str) -> String {
    if needs_quotes(s) {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

fn elems(v: &[String]) -> String {
    format!("{{{}}}", v.iter().map(|e| name(e)).collect::<Vec<_>>().join(", "))
}

fn value(v: &Value) -> String {
    match v {
        Value::Elems(e) => elems(e),
        Value::Dim(n) => format!("dim {n}"),
    }
}

fn leg(l: &Leg) -> String {
    match l {
        Leg::Pairs(ps) => {
            format!("{{{}}}", ps.iter().map(|(a, b)| format!("{}->{}", name(a), name(b))).collect::<Vec<_>>().join(", "))
        }
        Leg::Matrix(rows) => format!(
            "[{}]",
            rows.iter()
                .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn levels(out: &mut String, ls: &[LevelDecl]) {
    for l in ls {
        let _ = write!(out, "  {} {}", l.kind.keyword(), l.degree);
        if let Some(g) = &l.leg {
            let _ = write!(out, " {}", leg(g));
        }
        out.push('\n');
    }
}

/// The canonical text form: `parse_text(&to_text(d))` returns `d`.
pub fn to_text(doc: &Document) -> String {
    let mut out = String::new();
    match doc.instance {
        Instance::Set => out.push_str("instance set\n"),
        Instance::Linear { p } => {
            let _ = writeln!(out, "instance linear {p}");
        }
    }
    for item in &doc.items {
        out.push('\n');
        match item {
            Item::Complex(c) => {
                let _ = writeln!(out, "complex {} {}..{}", name(&c.name), c.lo, c.hi);
                for o in &c.objs {
                    let _ = writeln!(out, "  obj {} {}", o.degree, value(&o.value));
                }
                for t in &c.trans {
                    let _ = write!(out, "  tr {} {}", t.degree, value(&t.value));
                    if let Some(b) = &t.back {
                        let _ = write!(out, " back {}", leg(b));
                    }
                    if let Some(f) = &t.front {
                        let _ = write!(out, " front {}", leg(f));
                    }
                    out.push('\n');
                }
            }
            Item::Hor(m) | Item::Ver(m) => {
                let (kw, arrow) = if matches!(item, Item::Hor(_)) { ("hor", "->") } else { ("ver", "=>") };
                let _ = writeln!(out, "{kw} {} : {} {arrow} {}", name(&m.name), name(&m.src), name(&m.tgt));
                levels(&mut out, &m.levels);
            }
            Item::Map(m) => {
                let _ = writeln!(out, "map {} : {} <= {} -> {}", name(&m.name), name(&m.src), name(&m.mid), name(&m.tgt));
                levels(&mut out, &m.levels);
            }
            Item::Ses(s) => {
                let _ = write!(out, "ses {} hor {}", name(&s.name), name(&s.hor));
                if let Some(v) = &s.ver {
                    let _ = write!(out, " ver {}", name(v));
                }
                out.push('\n');
                continue;
            }
            Item::Snake(s) => {
                let _ = writeln!(out, "snake {} {}", if s.strong { "strong" } else { "weak" }, name(&s.name));
                for o in &s.objs {
                    let _ = writeln!(out, "  obj {} {}", name(&o.key), value(&o.value));
                }
                for e in &s.edges {
                    let _ = write!(out, "  edge {} {} {}", name(&e.from), if e.vertical { "=>" } else { "->" }, name(&e.to));
                    if let Some(g) = &e.leg {
                        let _ = write!(out, " {}", leg(g));
                    }
                    out.push('\n');
                }
            }
        }
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "instance set
# a comment
complex X 0..2
  obj 2 {a, b}
  obj 1 {b c}
  tr 2 {b} back {b->b} front {b->b}
end
hor f : X -> Y
  at 2
  tr 2 {b->b}
end
map m : X <= Z -> Y
  tver 1 {}
end
ses s hor f
snake strong S
  obj A' {\"x y\", 3}
  edge X => Abar
end
";

    #[test]
    fn round_trip() {
        let (d, spans) = parse_text(SAMPLE).unwrap();
        assert_eq!(spans.items, vec![3, 8, 12, 15, 16]);
        let t = to_text(&d);
        assert_eq!(parse_text(&t).unwrap().0, d);
        assert_eq!(parse_json(&to_json(&d)).unwrap(), d);
        assert_eq!(to_text(&parse_text(&t).unwrap().0), t);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_text("instance set\ncomplex X 0..1\n  obj 1 {a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 11, .. }), "{e:?}");
        let e = parse_text("instance set\ncomplex X 0..1\n  thing 1\nend\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 3, .. }), "{e:?}");
        let e = parse_text("instance ring\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn unknown_json_keys_rejected() {
        assert!(parse_json(r#"{"instance":"set","items":[],"extra":1}"#).is_err());
        assert!(parse_json(r#"{"instance":{"linear":{"p":2}},"items":[]}"#).is_ok());
    }

    #[test]
    fn linear_matrices() {
        let src = "instance linear 3\ncomplex L 0..1\n  obj 1 dim 2\n  obj 0 dim 1\n  tr 1 dim 1 back [[1, 2]] front [[1]]\nend\n";
        let (d, _) = parse_text(src).unwrap();
        assert_eq!(to_text(&d), format!("instance linear 3\n\n{}", &src["instance linear 3\n".len()..]));
    }
}
