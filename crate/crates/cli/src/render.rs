//! JSON, CSV and text rendering. Every integer is printed as exact decimal.

use num_bigint::BigInt;
use serde_json::{Map, Value};

use hassett::diophantine::{ConditionReport, Witness};
use hassett::families::{FamilySpec, NumericRow, SymbolicCheck};
use hassett::lattice::{Gram, GramEntry};
use hassett::normal_form::CanonicalForm;
use hassett::pell::PellSolution;

/// Version of the JSON report schema.
pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn int(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("decimal integer is valid JSON")
}

pub fn obj<const N: usize>(fields: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.to_owned(), v);
    }
    Value::Object(m)
}

/// Appends the schema version as the last key.
pub fn document(mut payload: Value) -> String {
    if let Value::Object(m) = &mut payload {
        m.insert("version".into(), Value::from(SCHEMA_VERSION));
    }
    serde_json::to_string(&payload).expect("values serialize")
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    v.map_or(Value::Null, f)
}

pub fn witness_json(w: &Witness) -> Value {
    obj([("a", int(&w.a)), ("n", int(&w.n))])
}

pub fn pell_xy_json(p: &PellSolution) -> Value {
    obj([("x", int(&p.x)), ("y", int(&p.y))])
}

pub fn report_json(r: &ConditionReport) -> Value {
    obj([
        ("d", int(&r.d)),
        ("star", r.star.into()),
        ("double_star", r.double_star.into()),
        ("triple_star", r.triple_star.into()),
        ("witness", opt(r.witness.as_ref(), witness_json)),
        ("pell", opt(r.pell.as_ref(), pell_xy_json)),
        ("period_length", opt(r.period_length, Value::from)),
    ])
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn report_text(r: &ConditionReport) -> String {
    let mut s = format!("d = {}\n", r.d);
    s += &format!("  (*)   d > 6, d = 0,2 mod 6      : {}\n", yes_no(r.star));
    s += &format!(
        "  (**)  no 4, 9, odd p = 2 mod 3  : {}\n",
        yes_no(r.double_star)
    );
    s += &format!(
        "  (***) a^2 d = 2n^2 + 2n + 2     : {}\n",
        yes_no(r.triple_star)
    );
    match (&r.witness, &r.pell) {
        (Some(w), Some(p)) => {
            s += &format!("  witness (a, n) = ({}, {})\n", w.a, w.n);
            s += &format!("  certificate {p}\n");
        }
        _ => {
            s += &format!("  no solution of x^2 - {}*y^2 = -3", &r.d * 2);
            match r.period_length {
                Some(l) => s += &format!(" (convergents of sqrt({}) over period {l})\n", &r.d * 2),
                None => s += " (square radicand, factor pairs)\n",
            }
        }
    }
    s
}

pub fn gram_json<T: GramEntry>(g: &Gram<T>, entry: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        g.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(&entry).collect()))
            .collect(),
    )
}

pub fn canonical_json(f: &CanonicalForm) -> Value {
    obj([
        ("geometry", f.geometry.name().into()),
        ("case", f.case.name().into()),
        ("c", int(&f.c)),
        ("k", int(&f.k)),
        ("gram", gram_json(&f.gram, int)),
        ("disc", int(&f.discriminant())),
        (
            "substitution",
            obj([
                ("sign", f.substitution.sign.into()),
                ("h2", int(&f.substitution.h2)),
                ("second", int(&f.substitution.second)),
            ]),
        ),
    ])
}

pub fn canonical_text(f: &CanonicalForm) -> String {
    let second = f.gram.labels()[1].clone();
    let mut s = format!(
        "{} case {}: k = {}, disc = {}\n",
        f.geometry,
        f.case,
        f.k,
        f.discriminant()
    );
    s += &format!(
        "  Sigma' = {}*Sigma + ({})*H2 + ({})*{}\n",
        f.substitution.sign, f.substitution.h2, f.substitution.second, second
    );
    s += &matrix_text(&f.gram);
    s
}

pub fn matrix_text<T: GramEntry + std::fmt::Display>(g: &Gram<T>) -> String {
    let cells: Vec<Vec<String>> = g
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for (row, label) in cells.iter().zip(g.labels()) {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        s += &format!("  {label:>5} [ {} ]\n", line.join("  "));
    }
    s
}

pub fn family_json(f: &FamilySpec) -> Value {
    let w = &f.witness;
    obj([
        ("id", f.id.name().into()),
        ("geometry", f.geometry.name().into()),
        ("case", f.case.name().into()),
        ("c", f.c.into()),
        (
            "witness",
            obj([
                ("a", w.a.to_string().into()),
                ("x", w.x.to_string().into()),
                ("y", w.y.to_string().into()),
                ("n", w.n.to_string().into()),
            ]),
        ),
        ("lattice_disc", f.lattice_discriminant().to_string().into()),
    ])
}

pub fn family_text(f: &FamilySpec) -> String {
    let w = &f.witness;
    format!(
        "{:<8} {:<5} case {:<3} c={}  (a, x, y, n) = ({}, {}, {}, {})  disc = {}",
        f.id.name(),
        f.geometry.name(),
        f.case.name(),
        f.c,
        w.a,
        w.x,
        w.y,
        w.n,
        f.lattice_discriminant()
    )
}

pub fn symbolic_json(check: &SymbolicCheck) -> Value {
    let form = &check.form;
    obj([
        (
            "form",
            obj([
                ("a", form.a.to_string().into()),
                ("b", form.b.to_string().into()),
                ("c", form.c.to_string().into()),
            ]),
        ),
        ("d", check.d.to_string().into()),
        ("lhs", check.lhs.to_string().into()),
        ("rhs", check.rhs.to_string().into()),
        ("holds", check.holds.into()),
    ])
}

pub fn symbolic_text(check: &SymbolicCheck) -> String {
    format!(
        "  d(x,y) = {}\n  a^2 d(x(k), y(k)) = {}\n  2n^2 + 2n + 2     = {}\n  identity: {}\n",
        check.form,
        check.lhs,
        check.rhs,
        if check.holds { "holds" } else { "FAILS" }
    )
}

pub fn row_json(r: &NumericRow) -> Value {
    obj([
        ("k", int(&r.k)),
        ("a", int(&r.a)),
        ("x", int(&r.x)),
        ("y", int(&r.y)),
        ("n", int(&r.n)),
        ("d", int(&r.d)),
        ("lhs", int(&r.lhs)),
        ("rhs", int(&r.rhs)),
        ("star", r.star.into()),
        ("triple_star", opt(r.triple_star, Value::from)),
        ("ok", r.ok.into()),
    ])
}

pub const ROW_CSV_HEADER: &str = "k,a,x,y,n,d,lhs,rhs,star,triple_star,ok";

pub fn row_csv(r: &NumericRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.k,
        r.a,
        r.x,
        r.y,
        r.n,
        r.d,
        r.lhs,
        r.rhs,
        r.star,
        r.triple_star.map_or(String::new(), |b| b.to_string()),
        r.ok
    )
}

pub fn row_text(r: &NumericRow) -> String {
    format!(
        "k={:<6} (a,x,y,n)=({},{},{},{})  d={}  lhs={} rhs={}  {}",
        r.k,
        r.a,
        r.x,
        r.y,
        r.n,
        r.d,
        r.lhs,
        r.rhs,
        if r.ok { "ok" } else { "FAIL" }
    )
}
