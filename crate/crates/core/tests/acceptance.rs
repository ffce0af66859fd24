//! One PASS/FAIL line per acceptance criterion, with wall-clock time against its budget.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use acgw::acgw::Acgw;
use acgw::chains::{validate_chain_map, validate_hor};
use acgw::cli::{generate, run_command, Command, GenKind};
use acgw::document::{parse, parse_json, to_json, to_text};
use acgw::error::{Error, Result};
use acgw::finset::{FinSet, FinSetObj};
use acgw::gen::{GenConfig, Generator};
use acgw::homology::{
    cardinality_law, check_functoriality, homology_at, homology_complex, homology_grid, is_quasi_iso,
    qiso_iff_complement_exact_hor, qiso_iff_complement_exact_ver, Direction,
};
use acgw::linear::Linear;
use acgw::model::{build, AnyModel, SnakeSpec};
use acgw::oracle::disagreements;
use acgw::setforms::{check_snake_closed_forms, homology_generic_mask, homology_mask, zigzag_partition_violations};
use acgw::snake::{les_of_ses, snake_strong, snake_weak};

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn set_model(name: &str) -> Result<acgw::model::Model<FinSet>> {
    let (d, s) = parse(&corpus(name))?;
    match build(&d, &s)? {
        AnyModel::Set(m) => Ok(m),
        AnyModel::Linear(_) => Err(Error::pre("expected a set document")),
    }
}

fn fail(msg: impl Into<String>) -> Result<()> {
    Err(Error::pre(msg.into()))
}

fn generator(seed: u64, max_size: usize, max_len: usize) -> Generator {
    Generator::new(GenConfig::sized(seed, max_size, max_len)).unwrap()
}

fn c1() -> Result<()> {
    let m = set_model("spanex.acgw")?;
    let x = &m.complexes[0].1;
    let y = &m.complexes[1].1;
    let hx = homology_at(&FinSet, x, 2)?;
    let hy = homology_at(&FinSet, y, 2)?;
    if hx != FinSetObj::new(["a"])? || !hy.is_empty() {
        return fail(format!("H_2(X) = {hx}, H_2(Y) = {hy}"));
    }
    let vs = validate_hor(&FinSet, &m.hors[0].1);
    if !vs.is_empty() {
        return fail(format!("inclusion is not a horizontal chain morphism: {vs:?}"));
    }
    Ok(())
}

fn c2() -> Result<()> {
    let m = set_model("spanexq.acgw")?;
    let f = &m.maps[0].1;
    let whole = is_quasi_iso(&FinSet, f)?;
    let left = is_quasi_iso(&FinSet, &f.ver_part(&FinSet).to_chain_map(&FinSet))?;
    let right = is_quasi_iso(&FinSet, &f.hor_part(&FinSet).to_chain_map(&FinSet))?;
    if !whole || left || right {
        return fail(format!("composite {whole}, vertical leg {left}, horizontal leg {right}"));
    }
    Ok(())
}

fn c3() -> Result<()> {
    let mut g = generator(3, 8, 6);
    for n in 0..1000 {
        let x = g.complex()?;
        for i in x.lo() - 1..=x.hi() + 1 {
            homology_grid(&FinSet, &x, i)?;
            if homology_generic_mask(&x, i)? != homology_mask(&x, i) {
                return fail(format!("complex {n}: complement orders disagree with the set formula at {i}"));
            }
            if !cardinality_law(&FinSet, &x, i)? {
                return fail(format!("complex {n}: cardinality law fails at {i}"));
            }
        }
    }
    Ok(())
}

fn c4() -> Result<()> {
    let mut g = generator(4, 8, 6);
    for n in 0..500 {
        let x = g.complex()?;
        let d = disagreements(&x, 2)?;
        if !d.is_empty() {
            return fail(format!("complex {n}: {d:?}"));
        }
    }
    Ok(())
}

fn c5() -> Result<()> {
    let mut g = generator(5, 6, 6);
    for n in 0..300 {
        let s = g.weak_snake()?;
        let out = snake_weak(&FinSet, &s)?;
        if !out.zigzag.is_exact(&FinSet) || !zigzag_partition_violations(&out.zigzag).is_empty() {
            return fail(format!("weak snake {n} is not exact"));
        }
        let vs = check_snake_closed_forms(&s, &out);
        if !vs.is_empty() {
            return fail(format!("weak snake {n}: {vs:?}"));
        }
    }
    for n in 0..100 {
        let s = g.strong_snake()?;
        let out = snake_strong(&FinSet, &s)?;
        if !out.zigzag.is_exact(&FinSet) || !zigzag_partition_violations(&out.zigzag).is_empty() {
            return fail(format!("strong snake {n} is not exact"));
        }
    }
    Ok(())
}

fn c6() -> Result<()> {
    let mut g = generator(6, 8, 6);
    for n in 0..200 {
        let s = g.ses()?;
        let z = les_of_ses(&FinSet, &s).map_err(|e| Error::pre(format!("sequence {n}: {e}")))?;
        if !z.is_exact(&FinSet) {
            return fail(format!("sequence {n}: {:?}", z.exactness_violations(&FinSet)));
        }
    }
    Ok(())
}

fn c7() -> Result<()> {
    let mut g = generator(7, 8, 6);
    for n in 0..500 {
        let (f, h) = g.composable_pair()?;
        if !check_functoriality(&FinSet, &f, &h)? {
            return fail(format!("pair {n}"));
        }
    }
    Ok(())
}

fn c8() -> Result<()> {
    let mut g = generator(8, 8, 6);
    for n in 0..300 {
        let (a, b) = qiso_iff_complement_exact_hor(&FinSet, &g.hor_mor()?)?;
        if a != b {
            return fail(format!("horizontal {n}: quasi-iso {a}, complement exact {b}"));
        }
    }
    for n in 0..300 {
        let (a, b) = qiso_iff_complement_exact_ver(&FinSet, &g.ver_mor()?)?;
        if a != b {
            return fail(format!("vertical {n}: quasi-iso {a}, complement exact {b}"));
        }
    }
    Ok(())
}

fn c9() -> Result<()> {
    let mut g = generator(9, 8, 6);
    for n in 0..200 {
        let x = g.complex()?;
        for dir in [Direction::Horizontal, Direction::Vertical] {
            let (_, f) = homology_complex(&x, dir)?;
            let vs = validate_chain_map(&FinSet, &f);
            if !vs.is_empty() {
                return fail(format!("complex {n} {dir:?}: {vs:?}"));
            }
            if !is_quasi_iso(&FinSet, &f)? {
                return fail(format!("complex {n} {dir:?}: not a quasi-isomorphism"));
            }
        }
    }
    Ok(())
}

fn c10() -> Result<()> {
    let mut g = generator(10, 8, 6);
    let lin = Linear::new(2)?;
    for n in 0..100 {
        let (x, l) = g.linear_complex()?;
        for i in x.lo()..=x.hi() {
            let dim = homology_at(&lin, &l, i)?.dim;
            let formula = l.obj(&lin, i).dim - l.tr(&lin, i).mid.dim - l.tr(&lin, i + 1).mid.dim;
            if dim != formula || !cardinality_law(&lin, &l, i)? {
                return fail(format!("complex {n} degree {i}: dim {dim}, formula {formula}"));
            }
            if dim != FinSet.size(&homology_at(&FinSet, &x, i)?) {
                return fail(format!("complex {n} degree {i}: linear and set homology differ"));
            }
        }
    }
    let (d, s) = parse(&corpus("linear_snake.acgw"))?;
    let AnyModel::Linear(m) = build(&d, &s)? else { return fail("hand-built snake is not linear") };
    let SnakeSpec::Weak(w) = &m.snakes[0].1 else { return fail("hand-built snake is not weak") };
    let out = snake_weak(&m.inst, w)?;
    if !out.zigzag.is_exact(&m.inst) || out.zigzag.alternating_sum(&m.inst) != 0 {
        return fail("hand-built linear snake is not exact with alternating sum 0");
    }
    Ok(())
}

fn c11() -> Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files = 0;
    for e in std::fs::read_dir(dir).unwrap() {
        let src = std::fs::read_to_string(e.unwrap().path()).unwrap();
        let (d, _) = parse(&src)?;
        let t = to_text(&d);
        if parse(&t)?.0 != d || parse_json(&to_json(&d))? != d {
            return fail("corpus document changes under a round trip");
        }
        files += 1;
    }
    if files < 6 {
        return fail(format!("only {files} corpus files"));
    }
    for kind in GenKind::ALL {
        for seed in 0..20 {
            let g = generate(kind, seed, None, seed % 2 == 1);
            let v = run_command(&g.stdout, Command::Validate, false);
            if g.code != 0 || v.code != 0 {
                return fail(format!("gen {} --seed {seed}: {}{}", kind.name(), g.stderr, v.stderr));
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, Duration, fn() -> Result<()>);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 spanex homology and horizontal inclusion", Duration::from_secs(1), c1),
        ("2 spanexq composite is a quasi-iso, legs are not", Duration::from_secs(1), c2),
        ("3 1000 complexes: complement orders agree, cardinality law", Duration::from_secs(10), c3),
        ("4 500 complexes: F2 rank dimensions equal |H_i|", Duration::from_secs(30), c4),
        ("5 300 weak snakes with closed forms, 100 strong snakes exact", Duration::from_secs(30), c5),
        ("6 200 short exact sequences: long exact sequence exact", Duration::from_secs(30), c6),
        ("7 500 composable pairs: functoriality", Duration::from_secs(30), c7),
        ("8 300 + 300 morphisms: quasi-iso iff complement exact", Duration::from_secs(30), c8),
        ("9 200 complexes: homology complex is quasi-isomorphic", Duration::from_secs(10), c9),
        ("10 100 F2 complexes and a hand-built linear snake", Duration::from_secs(10), c10),
        ("11 corpus round trip and generator output validates", Duration::from_secs(5), c11),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let t = Instant::now();
        let r = run();
        let dt = t.elapsed();
        match r {
            Ok(()) if dt <= budget => println!("PASS {name} ({:.2}s, budget {}s)", dt.as_secs_f64(), budget.as_secs()),
            Ok(()) => {
                failed += 1;
                println!("FAIL {name}: took {:.2}s, budget {}s", dt.as_secs_f64(), budget.as_secs());
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
