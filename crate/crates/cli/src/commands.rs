use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use serde_json::Value;

use hassett::diophantine::{condition_double_star, condition_star, condition_triple_star};
use hassett::families::{check_family_symbolic, family, family_catalog, verify_family_numeric};
use hassett::pell::cf_sqrt;
use hassett::{
    normalize as normalize_class, pell_solve, ConditionReport, Error, FamilyId, FormSource,
    Geometry, GramMatrix, MarkedClassData,
};

use crate::render::{self, document, int, obj, Format};
use crate::Condition;

pub const DEFAULT_CEILING: u64 = 1_000_000;
pub const CEILING_ENV: &str = "HASSETT_ENUMERATE_CEILING";

pub enum Failure {
    /// Exit 1: an identity or admissibility check failed.
    Verification(String),
    /// Exit 2: bad input.
    Usage(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Admissibility { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

pub struct Output {
    format: Format,
    quiet: bool,
}

impl Output {
    pub fn new(format: Format, quiet: bool) -> Self {
        Output { format, quiet }
    }

    fn emit(&self, s: &str) {
        if !self.quiet {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
        }
    }

    fn json(&self, payload: Value) {
        self.emit(&document(payload));
    }

    fn require_not_csv(&self, command: &str) -> CmdResult {
        if self.format == Format::Csv {
            Err(Failure::Usage(format!(
                "--csv is only available for row output, not `{command}`"
            )))
        } else {
            Ok(())
        }
    }
}

pub fn check(out: &Output, d: &BigInt) -> CmdResult {
    out.require_not_csv("check")?;
    let report = ConditionReport::evaluate(d)?;
    match out.format {
        Format::Json => out.json(render::report_json(&report)),
        _ => out.emit(&render::report_text(&report)),
    }
    Ok(())
}

struct EnumRow {
    d: BigInt,
    star: bool,
    double_star: bool,
    triple: Option<hassett::Witness>,
}

fn enumerate_one(d: u64, filter: &[Condition]) -> Result<Option<EnumRow>, Error> {
    let d = BigInt::from(d);
    let star = condition_star(&d);
    if filter.contains(&Condition::Star) && !star {
        return Ok(None);
    }
    let double_star = condition_double_star(&d)?;
    if filter.contains(&Condition::DoubleStar) && !double_star {
        return Ok(None);
    }
    let (triple_star, triple) = condition_triple_star(&d)?;
    if filter.contains(&Condition::TripleStar) && !triple_star {
        return Ok(None);
    }
    Ok(Some(EnumRow {
        d,
        star,
        double_star,
        triple,
    }))
}

type ChunkRows = Result<Vec<EnumRow>, Error>;

/// Evaluates `7..=max` in chunks across threads and restores ascending order.
fn enumerate_rows(max: u64, filter: &[Condition]) -> Result<Vec<EnumRow>, Error> {
    const CHUNK: u64 = 2048;
    let first = 7u64;
    let chunks = ((max + 1).saturating_sub(first)).div_ceil(CHUNK) as usize;
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<(usize, ChunkRows)>> = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(chunks.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= chunks {
                    break;
                }
                let lo = first + i as u64 * CHUNK;
                let hi = (lo + CHUNK - 1).min(max);
                let rows = (lo..=hi)
                    .filter_map(|d| enumerate_one(d, filter).transpose())
                    .collect();
                done.lock().expect("no worker panics").push((i, rows));
            });
        }
    });
    let mut done = done.into_inner().expect("no worker panics");
    done.sort_by_key(|(i, _)| *i);
    let mut rows = Vec::new();
    for (_, chunk) in done {
        rows.extend(chunk?);
    }
    Ok(rows)
}

fn condition_name(c: Condition) -> &'static str {
    match c {
        Condition::Star => "star",
        Condition::DoubleStar => "double_star",
        Condition::TripleStar => "triple_star",
    }
}

pub fn enumerate(
    out: &Output,
    max: &BigInt,
    filter: &[Condition],
    ceiling: Option<u64>,
) -> CmdResult {
    let ceiling = match ceiling {
        Some(c) => c,
        None => match std::env::var(CEILING_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Failure::Usage(format!("{CEILING_ENV}={v:?} is not a positive integer"))
            })?,
            Err(_) => DEFAULT_CEILING,
        },
    };
    let max_small = u64::try_from(max)
        .ok()
        .filter(|m| (7..=ceiling).contains(m))
        .ok_or_else(|| {
            Failure::Usage(format!("--max must be between 7 and {ceiling}, got {max}"))
        })?;
    let rows = enumerate_rows(max_small, filter)?;

    let mut names: Vec<&str> = filter.iter().map(|c| condition_name(*c)).collect();
    names.dedup();
    match out.format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    obj([
                        ("d", int(&r.d)),
                        ("star", r.star.into()),
                        ("double_star", r.double_star.into()),
                        ("triple_star", r.triple.is_some().into()),
                        (
                            "witness",
                            r.triple.as_ref().map_or(Value::Null, render::witness_json),
                        ),
                    ])
                })
                .collect();
            out.json(obj([
                ("max", int(max)),
                ("filter", names.into()),
                ("count", rows.len().into()),
                ("rows", Value::Array(rows)),
            ]));
        }
        Format::Csv => {
            let mut s = String::from("d,star,double_star,triple_star,a,n\n");
            for r in &rows {
                let (a, n) = r
                    .triple
                    .as_ref()
                    .map_or((String::new(), String::new()), |w| {
                        (w.a.to_string(), w.n.to_string())
                    });
                s += &format!(
                    "{},{},{},{},{a},{n}\n",
                    r.d,
                    r.star,
                    r.double_star,
                    r.triple.is_some()
                );
            }
            out.emit(&s);
        }
        Format::Text => {
            let mut s = format!(
                "{:>8}  {:>4}  {:>4}  {:>5}  witness (a, n)\n",
                "d", "(*)", "(**)", "(***)"
            );
            for r in &rows {
                let w = r
                    .triple
                    .as_ref()
                    .map_or(String::from("-"), |w| format!("({}, {})", w.a, w.n));
                s += &format!(
                    "{:>8}  {:>4}  {:>4}  {:>5}  {w}\n",
                    r.d,
                    yn(r.star),
                    yn(r.double_star),
                    yn(r.triple.is_some())
                );
            }
            s += &format!(
                "{} discriminant(s) up to {max} satisfying {}\n",
                rows.len(),
                names.join(", ")
            );
            out.emit(&s);
        }
    }
    Ok(())
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn family_list(out: &Output) -> CmdResult {
    out.require_not_csv("family list")?;
    let catalog = family_catalog();
    match out.format {
        Format::Json => out.json(obj([(
            "families",
            Value::Array(catalog.iter().map(render::family_json).collect()),
        )])),
        _ => {
            let lines: Vec<String> = catalog.iter().map(render::family_text).collect();
            out.emit(&lines.join("\n"));
        }
    }
    Ok(())
}

pub fn family_verify(
    out: &Output,
    id: &str,
    symbolic: bool,
    k_min: Option<BigInt>,
    k_max: Option<BigInt>,
    use_printed_form: bool,
) -> CmdResult {
    let id: FamilyId = id.parse().map_err(Failure::Usage)?;
    let spec = family(id);
    let source = if use_printed_form {
        FormSource::Printed
    } else {
        FormSource::Derived
    };
    let numeric = k_min.is_some() || k_max.is_some();
    let symbolic = symbolic || !numeric;
    if out.format == Format::Csv && (!numeric || symbolic) {
        return Err(Failure::Usage(
            "--csv requires a k range without --symbolic".into(),
        ));
    }

    let check = symbolic.then(|| check_family_symbolic(&spec, source));
    let rows = if numeric {
        let lo = k_min.unwrap_or_else(|| BigInt::from(-10));
        let hi = k_max.unwrap_or_else(|| BigInt::from(10));
        Some(verify_family_numeric(&spec, &lo, &hi, source)?)
    } else {
        None
    };
    let symbolic_ok = check.as_ref().is_none_or(|c| c.holds);
    let failed_rows = rows
        .as_ref()
        .map_or(0, |r| r.iter().filter(|r| !r.ok).count());
    let passed = symbolic_ok && failed_rows == 0;
    let form_name = if use_printed_form {
        "printed"
    } else {
        "derived"
    };

    match out.format {
        Format::Json => {
            let mut fields = vec![
                ("id", Value::from(id.name())),
                ("form_source", form_name.into()),
            ];
            if let Some(c) = &check {
                fields.push(("symbolic", render::symbolic_json(c)));
            }
            if let Some(rows) = &rows {
                fields.push((
                    "rows",
                    Value::Array(rows.iter().map(render::row_json).collect()),
                ));
            }
            fields.push(("pass", passed.into()));
            let mut m = serde_json::Map::new();
            for (k, v) in fields {
                m.insert(k.into(), v);
            }
            out.json(Value::Object(m));
        }
        Format::Csv => {
            let mut s = format!("{}\n", render::ROW_CSV_HEADER);
            for r in rows.iter().flatten() {
                s += &render::row_csv(r);
                s.push('\n');
            }
            out.emit(&s);
        }
        Format::Text => {
            let mut s = format!("{}  ({} form)\n", render::family_text(&spec), form_name);
            if let Some(c) = &check {
                s += &render::symbolic_text(c);
            }
            for r in rows.iter().flatten() {
                s += &render::row_text(r);
                s.push('\n');
            }
            s += if passed { "pass\n" } else { "FAIL\n" };
            out.emit(&s);
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "family {id} failed verification against the {form_name} form"
        )))
    }
}

pub fn normalize(out: &Output, geometry: Geometry, m: BigInt, c: BigInt, s: BigInt) -> CmdResult {
    out.require_not_csv("normalize")?;
    let data = MarkedClassData { geometry, m, c, s };
    let form = normalize_class(&data)?;
    match out.format {
        Format::Json => out.json(render::canonical_json(&form)),
        _ => out.emit(&render::canonical_text(&form)),
    }
    Ok(())
}

pub fn pell(out: &Output, radicand: &BigInt, norm: &BigInt) -> CmdResult {
    out.require_not_csv("pell")?;
    if *radicand < BigInt::from(2) {
        return Err(Failure::Usage(format!(
            "D must be at least 2, got {radicand}"
        )));
    }
    let solution = pell_solve(radicand, norm)?;
    let period_length = match cf_sqrt(radicand) {
        Ok(cf) => Some(cf.period_len()),
        Err(_) => None,
    };
    match out.format {
        Format::Json => out.json(obj([
            ("D", int(radicand)),
            ("N", int(norm)),
            (
                "solution",
                solution.as_ref().map_or(Value::Null, render::pell_xy_json),
            ),
            (
                "period_length",
                period_length.map_or(Value::Null, Value::from),
            ),
        ])),
        _ => {
            let mut s = match &solution {
                Some(p) => format!("x = {}, y = {}\n  {p}\n", p.x, p.y),
                None => format!("none: x^2 - {radicand}*y^2 = {norm} has no solution\n"),
            };
            match period_length {
                Some(l) => s += &format!("  period length of sqrt({radicand}): {l}\n"),
                None => s += &format!("  {radicand} is a perfect square (factor-pair method)\n"),
            }
            out.emit(&s);
        }
    }
    Ok(())
}

pub fn disc(out: &Output, text: &str) -> CmdResult {
    out.require_not_csv("disc")?;
    let g: GramMatrix = text.parse()?;
    let d = g.discriminant();
    match out.format {
        Format::Json => out.json(obj([
            ("gram", render::gram_json(&g, int)),
            ("disc", int(&d)),
        ])),
        _ => out.emit(&d.to_string()),
    }
    Ok(())
}
