//! The TOML document format.
//!
//! Every identifier is a string and every table is explicit. Structure-map
//! tables of a monoidal document may be written `"strict"`, meaning every
//! component is an identity; this is rejected where the tensor on objects
//! does not make the identity well-typed.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::ops::Range;
use std::sync::Arc;

use purity_core::fincat::{FinCategory, Mor, Obj};
use purity_core::invariants::FinMonoid;
use purity_core::moncat::MonoidalStructure;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::Deserialize;
use toml::Spanned;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Category(FinCategory),
    Monoidal(MonoidalStructure),
    Monoid(FinMonoid),
    /// A named list of other documents.
    Corpus {
        name: String,
        members: Vec<String>,
    },
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Category(c) => c.name(),
            Document::Monoidal(m) => m.name(),
            Document::Monoid(m) => &m.name,
            Document::Corpus { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Monoidal(_) => "monoidal",
            Document::Monoid(_) => "monoid",
            Document::Corpus { .. } => "corpus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    Missing,
    Dangling,
    Duplicate,
    Shape,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Missing => "missing entry",
            DiagnosticKind::Dangling => "dangling reference",
            DiagnosticKind::Duplicate => "duplicate identifier",
            DiagnosticKind::Shape => "ill-formed table",
        })
    }
}

/// A parse failure located at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind} in `{field}`: {message}")]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub field: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type Cell = Spanned<String>;
type Row = Spanned<Vec<Cell>>;
type Rows = Spanned<Vec<Row>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: Cell,
    name: Cell,
    objects: Option<Spanned<Vec<Cell>>>,
    morphisms: Option<Rows>,
    identities: Option<Rows>,
    compose: Option<Rows>,
    monoidal: Option<Spanned<RawMonoidal>>,
    elements: Option<Spanned<Vec<Cell>>>,
    unit: Option<Cell>,
    product: Option<Rows>,
    members: Option<Spanned<Vec<Cell>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoidal {
    unit: Cell,
    symmetric: bool,
    tensor_objects: Rows,
    tensor_morphisms: Rows,
    associator: Spanned<Components>,
    left_unitor: Spanned<Components>,
    right_unitor: Spanned<Components>,
    braiding: Option<Spanned<Components>>,
}

enum Components {
    Strict,
    Rows(Vec<Row>),
}

impl<'de> Deserialize<'de> for Components {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Components;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"strict\" or an array of component rows")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Components, E> {
                if s == "strict" {
                    Ok(Components::Strict)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(s), &self))
                }
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Components, A::Error> {
                let mut rows = Vec::new();
                while let Some(row) = seq.next_element::<Row>()? {
                    rows.push(row);
                }
                Ok(Components::Rows(rows))
            }
        }
        d.deserialize_any(V)
    }
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn diag(
        &self,
        span: Range<usize>,
        kind: DiagnosticKind,
        field: &str,
        message: impl Into<String>,
    ) -> Diagnostic {
        let start = span.start.min(self.text.len());
        let before = &self.text[..start];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Diagnostic {
            kind,
            field: field.to_string(),
            line,
            column,
            message: message.into(),
        }
    }
}

/// Identifiers of one namespace with their positions.
struct Names {
    what: &'static str,
    list: Vec<String>,
    index: HashMap<String, usize>,
}

impl Names {
    fn new(ctx: &Ctx, what: &'static str, field: &str, cells: &[Cell]) -> Result<Self, Diagnostic> {
        let mut index = HashMap::new();
        let mut list = Vec::with_capacity(cells.len());
        for cell in cells {
            let name = cell.get_ref();
            if index.insert(name.clone(), list.len()).is_some() {
                return Err(ctx.diag(
                    cell.span(),
                    DiagnosticKind::Duplicate,
                    field,
                    format!("{what} {name:?} is declared twice"),
                ));
            }
            list.push(name.clone());
        }
        Ok(Names { what, list, index })
    }

    fn lookup(&self, ctx: &Ctx, field: &str, cell: &Cell) -> Result<usize, Diagnostic> {
        self.index.get(cell.get_ref()).copied().ok_or_else(|| {
            ctx.diag(
                cell.span(),
                DiagnosticKind::Dangling,
                field,
                format!("unknown {} {:?}", self.what, cell.get_ref()),
            )
        })
    }

    fn len(&self) -> usize {
        self.list.len()
    }
}

fn cells<'r, const N: usize>(
    ctx: &Ctx,
    field: &str,
    row: &'r Row,
) -> Result<&'r [Cell; N], Diagnostic> {
    row.get_ref().as_slice().try_into().map_err(|_| {
        ctx.diag(
            row.span(),
            DiagnosticKind::Shape,
            field,
            format!("expected {N} entries, found {}", row.get_ref().len()),
        )
    })
}

/// Reads a table that must have exactly one row per key tuple. `keys` are
/// the namespaces of the first `K` cells; the last cell names a value.
fn total_table<const K: usize, const N: usize>(
    ctx: &Ctx,
    field: &str,
    rows: &[Row],
    span: Range<usize>,
    keys: [&Names; K],
    values: &Names,
) -> Result<Vec<usize>, Diagnostic> {
    debug_assert_eq!(K + 1, N);
    let size: usize = keys.iter().map(|k| k.len()).product();
    let mut out: Vec<Option<usize>> = vec![None; size];
    for row in rows {
        let row_cells = cells::<N>(ctx, field, row)?;
        let mut slot = 0;
        for (names, cell) in keys.iter().zip(row_cells) {
            slot = slot * names.len() + names.lookup(ctx, field, cell)?;
        }
        let value = values.lookup(ctx, field, &row_cells[K])?;
        if out[slot].replace(value).is_some() {
            return Err(ctx.diag(
                row.span(),
                DiagnosticKind::Duplicate,
                field,
                format!("{} is given twice", key_label(&keys, slot)),
            ));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(slot, v)| {
            v.ok_or_else(|| {
                ctx.diag(
                    span.clone(),
                    DiagnosticKind::Missing,
                    field,
                    format!("no entry for {}", key_label(&keys, slot)),
                )
            })
        })
        .collect()
}

fn key_label<const K: usize>(keys: &[&Names; K], mut slot: usize) -> String {
    let mut parts = vec![String::new(); K];
    for (i, names) in keys.iter().enumerate().rev() {
        parts[i] = names.list[slot % names.len()].clone();
        slot /= names.len();
    }
    format!("({})", parts.join(", "))
}

fn require<T>(ctx: &Ctx, value: Option<T>, field: &str, at: &Cell) -> Result<T, Diagnostic> {
    value.ok_or_else(|| {
        ctx.diag(
            at.span(),
            DiagnosticKind::Missing,
            field,
            format!("a {} document needs `{field}`", at.get_ref()),
        )
    })
}

fn forbid(
    ctx: &Ctx,
    present: &[(&str, Option<Range<usize>>)],
    kind: &str,
) -> Result<(), Diagnostic> {
    for (field, span) in present {
        if let Some(span) = span {
            return Err(ctx.diag(
                span.clone(),
                DiagnosticKind::Syntax,
                field,
                format!("`{field}` is not allowed in a {kind} document"),
            ));
        }
    }
    Ok(())
}

fn from_toml_error(ctx: &Ctx, e: toml::de::Error) -> Diagnostic {
    let message = e.message().trim().to_string();
    let quoted = message
        .split('`')
        .nth(1)
        .filter(|_| message.contains('`'))
        .map(str::to_string);
    let (kind, field) = if message.starts_with("missing field") {
        (DiagnosticKind::Missing, quoted.unwrap_or_default())
    } else {
        (
            DiagnosticKind::Syntax,
            quoted.unwrap_or_else(|| "document".into()),
        )
    };
    ctx.diag(e.span().unwrap_or(0..0), kind, &field, message)
}

/// Parses a document. Total and deterministic: every failure is returned as
/// a located diagnostic.
pub fn parse_document(text: &str) -> Result<Document, Diagnostic> {
    let ctx = Ctx { text };
    let raw: Raw = toml::from_str(text).map_err(|e| from_toml_error(&ctx, e))?;
    match raw.kind.get_ref().as_str() {
        "category" => {
            forbid(
                &ctx,
                &[
                    ("monoidal", raw.monoidal.as_ref().map(|m| m.span())),
                    ("elements", raw.elements.as_ref().map(|m| m.span())),
                    ("unit", raw.unit.as_ref().map(|m| m.span())),
                    ("product", raw.product.as_ref().map(|m| m.span())),
                    ("members", raw.members.as_ref().map(|m| m.span())),
                ],
                "category",
            )?;
            let (c, _, _) = category(&ctx, &raw)?;
            Ok(Document::Category(c))
        }
        "monoidal" => {
            forbid(
                &ctx,
                &[
                    ("elements", raw.elements.as_ref().map(|m| m.span())),
                    ("unit", raw.unit.as_ref().map(|m| m.span())),
                    ("product", raw.product.as_ref().map(|m| m.span())),
                    ("members", raw.members.as_ref().map(|m| m.span())),
                ],
                "monoidal",
            )?;
            let (c, objects, morphisms) = category(&ctx, &raw)?;
            let m = require(&ctx, raw.monoidal.as_ref(), "monoidal", &raw.kind)?;
            Ok(Document::Monoidal(monoidal(
                &ctx,
                Arc::new(c),
                &objects,
                &morphisms,
                m,
            )?))
        }
        "monoid" => {
            forbid(
                &ctx,
                &[
                    ("objects", raw.objects.as_ref().map(|m| m.span())),
                    ("morphisms", raw.morphisms.as_ref().map(|m| m.span())),
                    ("identities", raw.identities.as_ref().map(|m| m.span())),
                    ("compose", raw.compose.as_ref().map(|m| m.span())),
                    ("monoidal", raw.monoidal.as_ref().map(|m| m.span())),
                    ("members", raw.members.as_ref().map(|m| m.span())),
                ],
                "monoid",
            )?;
            monoid(&ctx, &raw).map(Document::Monoid)
        }
        "corpus" => {
            forbid(
                &ctx,
                &[
                    ("objects", raw.objects.as_ref().map(|m| m.span())),
                    ("morphisms", raw.morphisms.as_ref().map(|m| m.span())),
                    ("identities", raw.identities.as_ref().map(|m| m.span())),
                    ("compose", raw.compose.as_ref().map(|m| m.span())),
                    ("monoidal", raw.monoidal.as_ref().map(|m| m.span())),
                    ("elements", raw.elements.as_ref().map(|m| m.span())),
                    ("unit", raw.unit.as_ref().map(|m| m.span())),
                    ("product", raw.product.as_ref().map(|m| m.span())),
                ],
                "corpus",
            )?;
            let members = require(&ctx, raw.members.as_ref(), "members", &raw.kind)?;
            let names = Names::new(&ctx, "member", "members", members.get_ref())?;
            Ok(Document::Corpus {
                name: raw.name.get_ref().clone(),
                members: names.list,
            })
        }
        other => Err(ctx.diag(
            raw.kind.span(),
            DiagnosticKind::Syntax,
            "kind",
            format!("unknown kind {other:?}; expected category, monoidal, monoid or corpus"),
        )),
    }
}

fn category(ctx: &Ctx, raw: &Raw) -> Result<(FinCategory, Names, Names), Diagnostic> {
    let objects = require(ctx, raw.objects.as_ref(), "objects", &raw.kind)?;
    let morphisms = require(ctx, raw.morphisms.as_ref(), "morphisms", &raw.kind)?;
    let identities = require(ctx, raw.identities.as_ref(), "identities", &raw.kind)?;
    let compose = require(ctx, raw.compose.as_ref(), "compose", &raw.kind)?;

    let objs = Names::new(ctx, "object", "objects", objects.get_ref())?;
    let mut endpoints = Vec::with_capacity(morphisms.get_ref().len());
    let mut names = Vec::with_capacity(morphisms.get_ref().len());
    for row in morphisms.get_ref() {
        let [name, s, t] = cells::<3>(ctx, "morphisms", row)?;
        names.push(name.clone());
        endpoints.push((
            Obj(objs.lookup(ctx, "morphisms", s)?),
            Obj(objs.lookup(ctx, "morphisms", t)?),
        ));
    }
    let mors = Names::new(ctx, "morphism", "morphisms", &names)?;
    let identity = total_table::<1, 2>(
        ctx,
        "identities",
        identities.get_ref(),
        identities.span(),
        [&objs],
        &mors,
    )?;
    let mut triples = Vec::with_capacity(compose.get_ref().len());
    for row in compose.get_ref() {
        let [g, f, h] = cells::<3>(ctx, "compose", row)?;
        let g = Mor(mors.lookup(ctx, "compose", g)?);
        let f = Mor(mors.lookup(ctx, "compose", f)?);
        let h = Mor(mors.lookup(ctx, "compose", h)?);
        if triples.iter().any(|&(g2, f2, _)| (g2, f2) == (g, f)) {
            return Err(ctx.diag(
                row.span(),
                DiagnosticKind::Duplicate,
                "compose",
                format!(
                    "composite of ({}, {}) is given twice",
                    mors.list[g.0], mors.list[f.0]
                ),
            ));
        }
        triples.push((g, f, h));
    }
    let c = FinCategory::new(
        raw.name.get_ref().clone(),
        objs.list.clone(),
        mors.list
            .iter()
            .cloned()
            .zip(endpoints)
            .map(|(n, (s, t))| (n, s, t))
            .collect(),
        identity.into_iter().map(Mor).collect(),
        triples,
    )
    .map_err(|e| {
        ctx.diag(
            raw.name.span(),
            DiagnosticKind::Shape,
            "compose",
            e.to_string(),
        )
    })?;
    Ok((c, objs, mors))
}

fn monoidal(
    ctx: &Ctx,
    base: Arc<FinCategory>,
    objs: &Names,
    mors: &Names,
    spanned: &Spanned<RawMonoidal>,
) -> Result<MonoidalStructure, Diagnostic> {
    let raw = spanned.get_ref();
    let n = objs.len();
    let unit = Obj(objs.lookup(ctx, "unit", &raw.unit)?);
    let tensor_obj: Vec<Obj> = total_table::<2, 3>(
        ctx,
        "tensor_objects",
        raw.tensor_objects.get_ref(),
        raw.tensor_objects.span(),
        [objs, objs],
        objs,
    )?
    .into_iter()
    .map(Obj)
    .collect();
    let tensor_mor = total_table::<2, 3>(
        ctx,
        "tensor_morphisms",
        raw.tensor_morphisms.get_ref(),
        raw.tensor_morphisms.span(),
        [mors, mors],
        mors,
    )?
    .into_iter()
    .map(Mor)
    .collect();
    let t = |x: usize, y: usize| tensor_obj[x * n + y].0;
    let strict_violation = |field: &str, span: Range<usize>, what: String| {
        ctx.diag(
            span,
            DiagnosticKind::Shape,
            field,
            format!("\"strict\" needs {what}"),
        )
    };

    let assoc = match raw.associator.get_ref() {
        Components::Rows(rows) => total_table::<3, 4>(
            ctx,
            "associator",
            rows,
            raw.associator.span(),
            [objs, objs, objs],
            mors,
        )?,
        Components::Strict => {
            let mut out = Vec::with_capacity(n * n * n);
            for i in 0..n * n * n {
                let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
                if t(t(x, y), z) != t(x, t(y, z)) {
                    return Err(strict_violation(
                        "associator",
                        raw.associator.span(),
                        format!(
                            "(x⊗y)⊗z = x⊗(y⊗z) at ({}, {}, {})",
                            objs.list[x], objs.list[y], objs.list[z]
                        ),
                    ));
                }
                out.push(base.identity(Obj(t(x, t(y, z)))).0);
            }
            out
        }
    };
    let unitor = |field: &str, comps: &Spanned<Components>, left: bool| match comps.get_ref() {
        Components::Rows(rows) => total_table::<1, 2>(ctx, field, rows, comps.span(), [objs], mors),
        Components::Strict => (0..n)
            .map(|x| {
                let tx = if left { t(unit.0, x) } else { t(x, unit.0) };
                if tx != x {
                    return Err(strict_violation(
                        field,
                        comps.span(),
                        format!("the unit to act trivially on {}", objs.list[x]),
                    ));
                }
                Ok(base.identity(Obj(x)).0)
            })
            .collect(),
    };
    let left_unitor = unitor("left_unitor", &raw.left_unitor, true)?;
    let right_unitor = unitor("right_unitor", &raw.right_unitor, false)?;
    let braiding = match &raw.braiding {
        None if raw.symmetric => {
            return Err(ctx.diag(
                spanned.span(),
                DiagnosticKind::Missing,
                "braiding",
                "a symmetric structure needs `braiding`",
            ))
        }
        None => None,
        Some(b) => Some(match b.get_ref() {
            Components::Rows(rows) => {
                total_table::<2, 3>(ctx, "braiding", rows, b.span(), [objs, objs], mors)?
            }
            Components::Strict => (0..n * n)
                .map(|i| {
                    let (x, y) = (i / n, i % n);
                    if t(x, y) != t(y, x) {
                        return Err(strict_violation(
                            "braiding",
                            b.span(),
                            format!("x⊗y = y⊗x at ({}, {})", objs.list[x], objs.list[y]),
                        ));
                    }
                    Ok(base.identity(Obj(t(x, y))).0)
                })
                .collect::<Result<_, _>>()?,
        }),
    };
    let mors_of = |v: Vec<usize>| v.into_iter().map(Mor).collect::<Vec<_>>();
    Ok(MonoidalStructure {
        base,
        tensor_obj,
        tensor_mor,
        unit,
        assoc: mors_of(assoc),
        left_unitor: mors_of(left_unitor),
        right_unitor: mors_of(right_unitor),
        braiding: braiding.map(mors_of),
        symmetric: raw.symmetric,
    })
}

fn monoid(ctx: &Ctx, raw: &Raw) -> Result<FinMonoid, Diagnostic> {
    let elements = require(ctx, raw.elements.as_ref(), "elements", &raw.kind)?;
    let unit = require(ctx, raw.unit.as_ref(), "unit", &raw.kind)?;
    let product = require(ctx, raw.product.as_ref(), "product", &raw.kind)?;
    let names = Names::new(ctx, "element", "elements", elements.get_ref())?;
    let unit = names.lookup(ctx, "unit", unit)?;
    let table = total_table::<2, 3>(
        ctx,
        "product",
        product.get_ref(),
        product.span(),
        [&names, &names],
        &names,
    )?;
    FinMonoid::new(raw.name.get_ref().clone(), names.list, table, unit).map_err(|e| {
        ctx.diag(
            raw.name.span(),
            DiagnosticKind::Shape,
            "product",
            e.to_string(),
        )
    })
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn write_list(out: &mut String, key: &str, items: &[String]) {
    let items: Vec<String> = items.iter().map(|s| quote(s)).collect();
    writeln!(out, "{key} = [{}]", items.join(", ")).unwrap();
}

fn write_rows(out: &mut String, key: &str, rows: impl IntoIterator<Item = Vec<String>>) {
    let rows: Vec<String> = rows
        .into_iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|s| quote(s)).collect();
            format!("  [{}],\n", cells.join(", "))
        })
        .collect();
    if rows.is_empty() {
        writeln!(out, "{key} = []").unwrap();
    } else {
        writeln!(out, "{key} = [\n{}]", rows.concat()).unwrap();
    }
}

fn write_category(out: &mut String, c: &FinCategory) {
    let o = |x: Obj| c.object_name(x).to_string();
    let m = |f: Mor| c.morphism_name(f).to_string();
    write_list(out, "objects", c.object_names());
    write_rows(
        out,
        "morphisms",
        c.morphisms()
            .map(|f| vec![m(f), o(c.source(f)), o(c.target(f))]),
    );
    write_rows(
        out,
        "identities",
        c.objects().map(|x| vec![o(x), m(c.identity(x))]),
    );
    write_rows(
        out,
        "compose",
        c.composition_entries()
            .into_iter()
            .map(|(g, f, h)| vec![m(g), m(f), m(h)]),
    );
}

fn write_monoidal(out: &mut String, s: &MonoidalStructure) {
    let c = s.cat();
    let n = c.object_count();
    let o = |x: Obj| c.object_name(x).to_string();
    let m = |f: Mor| c.morphism_name(f).to_string();
    let objs: Vec<Obj> = c.objects().collect();
    let strict = |key: &str, out: &mut String, rows: Vec<Vec<String>>, identity_ok: bool| {
        if identity_ok {
            writeln!(out, "{key} = \"strict\"").unwrap();
        } else {
            write_rows(out, key, rows);
        }
    };
    writeln!(out, "\n[monoidal]").unwrap();
    writeln!(out, "unit = {}", quote(&o(s.unit))).unwrap();
    writeln!(out, "symmetric = {}", s.symmetric).unwrap();
    write_rows(
        out,
        "tensor_objects",
        objs.iter()
            .flat_map(|&x| objs.iter().map(move |&y| (x, y)))
            .map(|(x, y)| vec![o(x), o(y), o(s.tensor(x, y))]),
    );
    write_rows(
        out,
        "tensor_morphisms",
        c.morphisms()
            .flat_map(|f| c.morphisms().map(move |g| (f, g)))
            .map(|(f, g)| vec![m(f), m(g), m(s.tensor_mor(f, g))]),
    );
    let triples: Vec<(Obj, Obj, Obj)> = (0..n * n * n)
        .map(|i| (Obj(i / (n * n)), Obj((i / n) % n), Obj(i % n)))
        .collect();
    let t = |x, y| s.tensor(x, y);
    strict(
        "associator",
        out,
        triples
            .iter()
            .map(|&(x, y, z)| vec![o(x), o(y), o(z), m(s.assoc(x, y, z))])
            .collect(),
        triples.iter().all(|&(x, y, z)| {
            t(t(x, y), z) == t(x, t(y, z)) && s.assoc(x, y, z) == c.identity(t(x, t(y, z)))
        }),
    );
    strict(
        "left_unitor",
        out,
        objs.iter()
            .map(|&x| vec![o(x), m(s.left_unitor(x))])
            .collect(),
        objs.iter()
            .all(|&x| t(s.unit, x) == x && s.left_unitor(x) == c.identity(x)),
    );
    strict(
        "right_unitor",
        out,
        objs.iter()
            .map(|&x| vec![o(x), m(s.right_unitor(x))])
            .collect(),
        objs.iter()
            .all(|&x| t(x, s.unit) == x && s.right_unitor(x) == c.identity(x)),
    );
    if s.braiding.is_some() {
        let pairs: Vec<(Obj, Obj)> = objs
            .iter()
            .flat_map(|&x| objs.iter().map(move |&y| (x, y)))
            .collect();
        let b = |x, y| s.braid(x, y).expect("braiding present");
        strict(
            "braiding",
            out,
            pairs
                .iter()
                .map(|&(x, y)| vec![o(x), o(y), m(b(x, y))])
                .collect(),
            pairs
                .iter()
                .all(|&(x, y)| t(x, y) == t(y, x) && b(x, y) == c.identity(t(x, y))),
        );
    }
}

/// Renders a document in the canonical layout; `parse_document` of the
/// result yields an equal document.
pub fn to_toml(doc: &Document) -> String {
    let mut out = String::new();
    writeln!(out, "kind = {}", quote(doc.kind())).unwrap();
    writeln!(out, "name = {}", quote(doc.name())).unwrap();
    match doc {
        Document::Category(c) => write_category(&mut out, c),
        Document::Monoidal(s) => {
            write_category(&mut out, s.cat());
            write_monoidal(&mut out, s);
        }
        Document::Monoid(m) => {
            let n = m.len();
            write_list(&mut out, "elements", &m.elements);
            writeln!(out, "unit = {}", quote(&m.elements[m.unit])).unwrap();
            write_rows(
                &mut out,
                "product",
                (0..n * n).map(|i| {
                    let (a, b) = (i / n, i % n);
                    vec![
                        m.elements[a].clone(),
                        m.elements[b].clone(),
                        m.elements[m.op(a, b)].clone(),
                    ]
                }),
            );
        }
        Document::Corpus { members, .. } => write_list(&mut out, "members", members),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use purity_core::models;

    fn roundtrip(doc: Document) {
        let text = to_toml(&doc);
        let back = parse_document(&text).unwrap_or_else(|d| panic!("{d}\n{text}"));
        assert_eq!(back, doc, "{text}");
    }

    #[test]
    fn models_roundtrip() {
        for m in models::corpus() {
            roundtrip(Document::Monoidal(m));
        }
        for m in models::monoids() {
            roundtrip(Document::Monoid(m));
        }
        roundtrip(Document::Category(models::poset2().cat().clone()));
        roundtrip(Document::Corpus {
            name: "probes".into(),
            members: vec!["terminal".into(), "i0_C2".into()],
        });
    }

    #[test]
    fn strict_shorthand_is_used_when_valid() {
        let text = to_toml(&Document::Monoidal(models::i0(&models::cyclic_group(2))));
        assert!(text.contains("associator = \"strict\""), "{text}");
        assert!(text.contains("braiding = \"strict\""), "{text}");
    }

    const SMALL: &str = r#"kind = "category"
name = "two"
objects = ["a", "b"]
morphisms = [["1a", "a", "a"], ["1b", "b", "b"]]
identities = [["a", "1a"], ["b", "1b"]]
compose = [["1a", "1a", "1a"], ["1b", "1b", "1b"]]
"#;

    #[test]
    fn small_category_parses() {
        let Document::Category(c) = parse_document(SMALL).unwrap() else {
            panic!("expected a category")
        };
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.compose(Mor(0), Mor(0)), Some(Mor(0)));
    }

    #[test]
    fn dangling_compose_reference_is_located() {
        let text = SMALL.replace(r#"["1b", "1b", "1b"]"#, r#"["1b", "1c", "1b"]"#);
        let d = parse_document(&text).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Dangling);
        assert_eq!(d.field, "compose");
        assert_eq!(d.line, 6);
        assert!(d.message.contains("\"1c\""), "{d}");
    }

    #[test]
    fn duplicate_object_is_located() {
        let text = SMALL.replace(r#"objects = ["a", "b"]"#, r#"objects = ["a", "a"]"#);
        let d = parse_document(&text).unwrap_err();
        assert_eq!((d.kind, d.line), (DiagnosticKind::Duplicate, 3));
        assert_eq!(d.field, "objects");
    }

    #[test]
    fn missing_identity_entry() {
        let text = SMALL.replace(r#", ["b", "1b"]]"#, "]");
        let d = parse_document(&text).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Missing);
        assert!(d.message.contains("(b)"), "{d}");
    }

    #[test]
    fn missing_unit_is_named() {
        let text = to_toml(&Document::Monoidal(models::i0(&models::cyclic_group(2))));
        let text: String = text
            .lines()
            .filter(|l| !l.starts_with("unit ="))
            .map(|l| format!("{l}\n"))
            .collect();
        let d = parse_document(&text).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Missing);
        assert_eq!(d.field, "unit");
    }

    #[test]
    fn syntax_errors_have_a_location() {
        let d = parse_document("kind = \"category\"\nname = \n").unwrap_err();
        assert_eq!((d.kind, d.line), (DiagnosticKind::Syntax, 2));
        let d = parse_document("kind = \"graph\"\nname = \"x\"\n").unwrap_err();
        assert_eq!(d.field, "kind");
    }

    #[test]
    fn strict_is_rejected_when_ill_typed() {
        let mut m = models::i1(&models::ml()).unwrap();
        m.symmetric = false;
        m.braiding = None;
        let text = to_toml(&Document::Monoidal(models::poset2()));
        // Poset2's unit is 1; declaring 0 makes strict unitors ill-typed
        let bad = text.replacen("unit = \"1\"", "unit = \"0\"", 1);
        let d = parse_document(&bad).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Shape, "{d}");
        roundtrip(Document::Monoidal(m));
    }
}
