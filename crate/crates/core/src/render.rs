//! Graphviz output for complexes and zigzags.
//!
//! Objects are boxes, span middles are points. Vertical legs are dashed with a hollow head,
//! horizontal legs solid. Objects with nonzero homology are filled.

use std::fmt::Write;

use crate::acgw::{Acgw, FlatMor};
use crate::chains::ChainComplex;
use crate::error::Result;
use crate::homology::homology_at;
use crate::snake::ExactZigzag;

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Accumulates clusters into one `digraph`.
#[derive(Default)]
pub struct Dot {
    body: String,
    clusters: usize,
}

impl Dot {
    pub fn new() -> Self {
        Self::default()
    }

    fn span<C: Acgw>(&mut self, inst: &C, id: &str, from: &str, to: &str, t: &FlatMor<C>, label: &str) {
        let b = &mut self.body;
        let mid = inst.describe(&t.mid);
        let _ = writeln!(b, "    {id} [shape=point, xlabel=\"{}\"];", esc(format!("{label} {mid}").trim_start()));
        let _ = writeln!(b, "    {id} -> {from} [style=dashed, arrowhead=onormal];");
        let _ = writeln!(b, "    {id} -> {to} [style=solid, arrowhead=vee];");
    }

    fn node(&mut self, id: &str, label: &str, hot: bool) {
        let fill = if hot { ", style=filled, fillcolor=\"#fde68a\"" } else { "" };
        let _ = writeln!(self.body, "    {id} [shape=box, label=\"{}\"{fill}];", esc(label));
    }

    fn open(&mut self, title: &str) -> String {
        let k = self.clusters;
        self.clusters += 1;
        let _ = writeln!(self.body, "  subgraph cluster_{k} {{\n    label=\"{}\";", esc(title));
        format!("c{k}")
    }

    fn close(&mut self) {
        self.body.push_str("  }\n");
    }

    /// A complex drawn from its top degree down, with homology listed on each object.
    pub fn complex<C: Acgw>(&mut self, inst: &C, name: &str, x: &ChainComplex<C>) -> Result<()> {
        let p = self.open(name);
        if x.support_is_empty() {
            let _ = writeln!(self.body, "    {p}_empty [shape=plaintext, label=\"0\"];");
        }
        for i in x.degrees().rev() {
            let h = homology_at(inst, x, i)?;
            let label = format!("{name}_{i} = {}\nH_{i} = {}", inst.describe(&x.obj(inst, i)), inst.describe(&h));
            self.node(&format!("{p}_{}", key(i)), &label, !inst.is_empty(&h));
        }
        for i in (x.lo() + 1..=x.hi()).rev() {
            let t = x.tr(inst, i);
            self.span(inst, &format!("{p}_t{}", key(i)), &format!("{p}_{}", key(i)), &format!("{p}_{}", key(i - 1)), &t, "");
        }
        self.close();
        Ok(())
    }

    /// A zigzag in reading order; ends flagged as non-exact are drawn grey.
    pub fn zigzag<C: Acgw>(&mut self, inst: &C, title: &str, z: &ExactZigzag<C>) {
        let p = self.open(title);
        let objs = z.objects(inst);
        for (j, o) in objs.iter().enumerate() {
            let label = format!("{} = {}", z.labels[j].name, inst.describe(o));
            self.node(&format!("{p}_{j}"), &label, !inst.is_empty(o));
        }
        for (j, t) in z.transitions(inst).iter().enumerate() {
            self.span(inst, &format!("{p}_t{j}"), &format!("{p}_{j}"), &format!("{p}_{}", j + 1), t, &z.tr_labels[j]);
        }
        let n = objs.len();
        for (flag, j) in [(z.nonexact_first, 0), (z.nonexact_last, n.saturating_sub(1))] {
            if flag && n > 0 {
                let _ = writeln!(self.body, "    {p}_{j} [color=grey50, fontcolor=grey50];");
            }
        }
        self.close();
    }

    pub fn finish(self) -> String {
        format!("digraph acgw {{\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n{}}}\n", self.body)
    }
}

/// Node-id fragment for a possibly negative degree.
fn key(i: i64) -> String {
    if i < 0 {
        format!("m{}", -i)
    } else {
        i.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetObj};

    #[test]
    fn highlights_homology() {
        let x = ChainComplex::concentrated(-1, FinSetObj::new(["a"]).unwrap());
        let mut d = Dot::new();
        d.complex(&FinSet, "X", &x).unwrap();
        let out = d.finish();
        assert!(out.starts_with("digraph acgw {"));
        assert!(out.contains("c0_m1 [shape=box, label=\"X_-1 = {a}\\nH_-1 = {a}\", style=filled"), "{out}");
    }
}
