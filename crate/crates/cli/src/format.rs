//! The JSON file formats for categories (`.cat`) and modules (`.mod`).
//!
//! Morphisms are referred to as `src->dst:id`, hom spaces as `src->dst`.
//! Scalars are exact strings such as `"3/4"` or `"-2"`; plain JSON integers
//! are accepted on input.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hmcoh::category::{CategoryBuilder, Coeffs, FinLinCategory};
use hmcoh::linalg::{Field, Mat, Scalar};
use hmcoh::module::{BimoduleRep, ModuleRep, Variance};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CATEGORY_SCHEMA: &str = "hmcoh.category/1";
pub const MODULE_SCHEMA: &str = "hmcoh.module/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Malformed JSON, with line and column.
    #[error("{path}:{line}:{column}: {message}")]
    Syntax { path: String, line: usize, column: usize, message: String },
    /// Well-formed JSON with an unusable value, with the offending field.
    #[error("{path}: {field}: {message}")]
    Field { path: String, field: String, message: String },
}

impl FormatError {
    fn field(origin: &Origin, field: impl Into<String>, message: impl Into<String>) -> FormatError {
        FormatError::Field { path: origin.name(), field: field.into(), message: message.into() }
    }

    fn syntax(origin: &Origin, e: serde_json::Error) -> FormatError {
        FormatError::Syntax { path: origin.name(), line: e.line(), column: e.column(), message: e.to_string() }
    }
}

/// Where a document came from; relative category paths resolve against `dir`.
#[derive(Clone, Debug)]
pub struct Origin {
    pub path: Option<PathBuf>,
    pub dir: PathBuf,
}

impl Origin {
    pub fn file(path: &Path) -> Origin {
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Origin { path: Some(path.to_path_buf()), dir }
    }

    pub fn inline() -> Origin {
        Origin { path: None, dir: PathBuf::from(".") }
    }

    fn name(&self) -> String {
        self.path.as_ref().map_or_else(|| "<inline>".to_string(), |p| p.display().to_string())
    }
}

/// A scalar as written in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse(&self, field: Field) -> Result<Scalar, String> {
        match self {
            ScalarText::Text(s) => field.parse(s).map_err(|e| e.to_string()),
            ScalarText::Int(v) => Ok(field.from_i64(*v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdentityText {
    /// The named basis element is the identity; `id∘f = f` and `f∘id = f`
    /// are filled in unless listed in `compose`.
    Unit(String),
    Coeffs(BTreeMap<String, ScalarText>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeText {
    pub g: String,
    pub f: String,
    pub result: BTreeMap<String, ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub schema: String,
    pub field: String,
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, Vec<String>>,
    pub identities: BTreeMap<String, IdentityText>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<CompositeText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixText {
    pub shape: [usize; 2],
    pub rows: Vec<Vec<ScalarText>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(Box<CategoryFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModuleBody {
    Right {
        category: CategoryRef,
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        actions: BTreeMap<String, MatrixText>,
    },
    Left {
        category: CategoryRef,
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        actions: BTreeMap<String, MatrixText>,
    },
    Bimodule {
        outer: CategoryRef,
        inner: CategoryRef,
        dims: BTreeMap<String, BTreeMap<String, usize>>,
        #[serde(default)]
        left: BTreeMap<String, BTreeMap<String, MatrixText>>,
        #[serde(default)]
        right: BTreeMap<String, BTreeMap<String, MatrixText>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub schema: String,
    #[serde(flatten)]
    pub body: ModuleBody,
}

/// Any parsed document.
#[derive(Clone, Debug)]
pub enum Document {
    Category(Arc<FinLinCategory>),
    Module(ModuleRep),
    Bimodule(BimoduleRep),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Module(m) if m.variance() == Variance::Right => "right module",
            Document::Module(_) => "left module",
            Document::Bimodule(_) => "bimodule",
        }
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Parses a `.cat` or `.mod` file, telling them apart by the `schema` field.
pub fn parse_path(path: &Path, field: Option<Field>) -> Result<Document, FormatError> {
    let origin = Origin::file(path);
    parse_str(&read(path)?, &origin, field)
}

pub fn parse_str(text: &str, origin: &Origin, field: Option<Field>) -> Result<Document, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| FormatError::syntax(origin, e))?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(CATEGORY_SCHEMA) => {
            let file: CategoryFile = serde_json::from_str(text).map_err(|e| FormatError::syntax(origin, e))?;
            Ok(Document::Category(Arc::new(category_from_file(&file, origin, field)?)))
        }
        Some(MODULE_SCHEMA) => {
            let file: ModuleFile = serde_json::from_str(text).map_err(|e| FormatError::syntax(origin, e))?;
            module_from_file(&file, origin, field)
        }
        Some(other) => Err(FormatError::field(origin, "schema", format!("unknown schema `{other}`"))),
        None => Err(FormatError::field(origin, "schema", "missing")),
    }
}

pub fn parse_category(path: &Path, field: Option<Field>) -> Result<Arc<FinLinCategory>, FormatError> {
    match parse_path(path, field)? {
        Document::Category(c) => Ok(c),
        d => Err(FormatError::field(&Origin::file(path), "schema", format!("expected a category, found a {}", d.kind()))),
    }
}

fn parse_field(origin: &Origin, text: &str, over: Option<Field>) -> Result<Field, FormatError> {
    let own: Field = text.parse().map_err(|_| FormatError::field(origin, "field", format!("unknown field `{text}`")))?;
    Ok(over.unwrap_or(own))
}

fn object(origin: &Origin, objects: &[String], at: &str, id: &str) -> Result<usize, FormatError> {
    objects
        .iter()
        .position(|o| o == id)
        .ok_or_else(|| FormatError::field(origin, at, format!("unknown object `{id}`")))
}

/// Splits `src->dst` into object indices.
fn hom_key(origin: &Origin, objects: &[String], at: &str, key: &str) -> Result<(usize, usize), FormatError> {
    let mut found = None;
    for (x, a) in objects.iter().enumerate() {
        if let Some(rest) = key.strip_prefix(a.as_str()).and_then(|r| r.strip_prefix("->")) {
            if let Some(y) = objects.iter().position(|b| b == rest) {
                found = Some((x, y));
            }
        }
    }
    found.ok_or_else(|| FormatError::field(origin, at, format!("`{key}` is not of the form src->dst")))
}

/// Resolves `src->dst:id` to `(src, dst, local index)`.
fn morphism_ref(
    origin: &Origin,
    objects: &[String],
    basis: impl Fn(usize, usize) -> Vec<String>,
    at: &str,
    r: &str,
) -> Result<(usize, usize, usize), FormatError> {
    let mut found = None;
    for (x, a) in objects.iter().enumerate() {
        let Some(rest) = r.strip_prefix(a.as_str()).and_then(|r| r.strip_prefix("->")) else { continue };
        for (y, b) in objects.iter().enumerate() {
            let Some(id) = rest.strip_prefix(b.as_str()).and_then(|r| r.strip_prefix(':')) else { continue };
            if let Some(i) = basis(x, y).iter().position(|m| m == id) {
                found = Some((x, y, i));
            }
        }
    }
    found.ok_or_else(|| FormatError::field(origin, at, format!("dangling morphism `{r}`")))
}

fn coeffs(
    origin: &Origin,
    field: Field,
    basis: &[String],
    at: &str,
    map: &BTreeMap<String, ScalarText>,
) -> Result<Coeffs, FormatError> {
    let mut out = Vec::with_capacity(map.len());
    for (id, v) in map {
        let i = basis
            .iter()
            .position(|b| b == id)
            .ok_or_else(|| FormatError::field(origin, at, format!("dangling morphism `{id}`")))?;
        let s = v.parse(field).map_err(|m| FormatError::field(origin, format!("{at}.{id}"), m))?;
        out.push((i, s));
    }
    out.sort_by_key(|(i, _)| *i);
    Ok(out)
}

pub fn category_from_file(file: &CategoryFile, origin: &Origin, over: Option<Field>) -> Result<FinLinCategory, FormatError> {
    if file.schema != CATEGORY_SCHEMA {
        return Err(FormatError::field(origin, "schema", format!("expected `{CATEGORY_SCHEMA}`")));
    }
    let field = parse_field(origin, &file.field, over)?;
    let mut b = CategoryBuilder::new(field);
    for o in &file.objects {
        b.object(o.clone());
    }
    let objects = file.objects.clone();
    for (key, ids) in &file.homs {
        let (x, y) = hom_key(origin, &objects, &format!("homs.{key}"), key)?;
        b.hom(x, y, ids.clone());
    }
    let basis = |b: &CategoryBuilder, x: usize, y: usize| b.hom_basis(x, y).to_vec();
    for (obj, id) in &file.identities {
        let at = format!("identities.{obj}");
        let x = object(origin, &objects, &at, obj)?;
        let ids = basis(&b, x, x);
        match id {
            IdentityText::Unit(u) => {
                let i = ids
                    .iter()
                    .position(|m| m == u)
                    .ok_or_else(|| FormatError::field(origin, &at, format!("dangling morphism `{u}`")))?;
                b.unit(x, i);
            }
            IdentityText::Coeffs(map) => {
                let c = coeffs(origin, field, &ids, &at, map)?;
                b.identity(x, c);
            }
        }
    }
    for (k, entry) in file.compose.iter().enumerate() {
        let at = format!("compose[{k}]");
        let g = morphism_ref(origin, &objects, |x, y| basis(&b, x, y), &format!("{at}.g"), &entry.g)?;
        let f = morphism_ref(origin, &objects, |x, y| basis(&b, x, y), &format!("{at}.f"), &entry.f)?;
        if f.1 != g.0 {
            return Err(FormatError::field(origin, at, format!("`{}` and `{}` are not composable", entry.g, entry.f)));
        }
        let r = coeffs(origin, field, &basis(&b, f.0, g.1), &format!("{at}.result"), &entry.result)?;
        b.compose(g, f, r);
    }
    b.build().map_err(|e| FormatError::field(origin, "category", e.to_string()))
}

fn coeff_map(c: &FinLinCategory, x: usize, y: usize, v: &Coeffs) -> BTreeMap<String, ScalarText> {
    let ids = c.hom_ids(x, y);
    v.iter().map(|(i, s)| (ids[*i].to_string(), ScalarText::Text(c.field().format(s)))).collect()
}

/// The file form of a category. Identities that are single basis elements
/// are written as units; composites the unit rule gets right are omitted.
pub fn category_to_file(c: &FinLinCategory) -> CategoryFile {
    let field = c.field();
    let no = c.num_objects();
    let unit: Vec<Option<usize>> = (0..no)
        .map(|x| match c.identity(x).as_slice() {
            [(i, s)] if *s == field.one() => Some(c.hom_range(x, x).start + i),
            _ => None,
        })
        .collect();
    let mut homs = BTreeMap::new();
    for (x, y, _) in c.nonzero_homs() {
        homs.insert(
            format!("{}->{}", c.objects()[x], c.objects()[y]),
            c.hom_ids(x, y).into_iter().map(String::from).collect(),
        );
    }
    let mut identities = BTreeMap::new();
    for x in 0..no {
        let text = match unit[x] {
            Some(g) => IdentityText::Unit(c.morphism(g).id.clone()),
            None => IdentityText::Coeffs(coeff_map(c, x, x, c.identity(x))),
        };
        identities.insert(c.objects()[x].clone(), text);
    }
    // What the unit rule fills in for a pair, if anything.
    let filled = |g: usize, f: usize| -> Option<Coeffs> {
        let (mg, mf) = (c.morphism(g), c.morphism(f));
        if mg.src != mf.tgt {
            return None;
        }
        if unit[mf.tgt] == Some(g) {
            Some(vec![(mf.local, field.one())])
        } else if unit[mg.src] == Some(f) {
            Some(vec![(mg.local, field.one())])
        } else {
            None
        }
    };
    let mut compose = Vec::new();
    for g in 0..c.num_morphisms() {
        for f in 0..c.num_morphisms() {
            let (mg, mf) = (c.morphism(g), c.morphism(f));
            if mg.src != mf.tgt {
                continue;
            }
            let actual: Coeffs = c.compose_basis(g, f).to_vec();
            let write = match filled(g, f) {
                Some(auto) => auto != actual,
                None => !actual.is_empty(),
            };
            if write {
                compose.push(CompositeText {
                    g: c.describe(g),
                    f: c.describe(f),
                    result: coeff_map(c, mf.src, mg.tgt, &actual),
                });
            }
        }
    }
    CategoryFile {
        schema: CATEGORY_SCHEMA.to_string(),
        field: field.to_string(),
        objects: c.objects().to_vec(),
        homs,
        identities,
        compose,
    }
}

fn resolve(r: &CategoryRef, origin: &Origin, over: Option<Field>) -> Result<Arc<FinLinCategory>, FormatError> {
    match r {
        CategoryRef::Path(p) => parse_category(&origin.dir.join(p), over),
        CategoryRef::Inline(file) => Ok(Arc::new(category_from_file(file, origin, over)?)),
    }
}

fn matrix(origin: &Origin, field: Field, at: &str, m: &MatrixText, shape: (usize, usize)) -> Result<Mat, FormatError> {
    let [r, c] = m.shape;
    if (r, c) != shape {
        return Err(FormatError::field(
            origin,
            at,
            format!("shape {r}x{c} does not match the spaces, expected {}x{}", shape.0, shape.1),
        ));
    }
    if m.rows.len() != r || m.rows.iter().any(|row| row.len() != c) {
        return Err(FormatError::field(origin, at, format!("rows do not have shape {r}x{c}")));
    }
    let mut trip = Vec::new();
    for (i, row) in m.rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let s = v.parse(field).map_err(|e| FormatError::field(origin, format!("{at}[{i}][{j}]"), e))?;
            trip.push((i, j, s));
        }
    }
    Ok(Mat::from_triplets(field, r, c, trip))
}

fn matrix_text(field: Field, m: &Mat) -> MatrixText {
    MatrixText {
        shape: [m.rows(), m.cols()],
        rows: m
            .to_dense()
            .iter()
            .map(|row| row.iter().map(|v| ScalarText::Text(field.format(v))).collect())
            .collect(),
    }
}

/// The action an omitted entry stands for: the identity matrix for a unit
/// basis element, zero otherwise.
fn default_action(c: &FinLinCategory, g: usize, rows: usize, cols: usize) -> Mat {
    let m = c.morphism(g);
    let f = c.field();
    match c.identity(m.src).as_slice() {
        [(i, s)] if m.src == m.tgt && *i == m.local && *s == f.one() && rows == cols => Mat::identity(f, rows),
        _ => Mat::zeros(f, rows, cols),
    }
}

fn dims_vec(origin: &Origin, c: &FinLinCategory, at: &str, dims: &BTreeMap<String, usize>) -> Result<Vec<usize>, FormatError> {
    let mut out = vec![0; c.num_objects()];
    for (o, d) in dims {
        out[object(origin, c.objects(), &format!("{at}.{o}"), o)?] = *d;
    }
    Ok(out)
}

fn module_ref(origin: &Origin, c: &FinLinCategory, at: &str, key: &str) -> Result<usize, FormatError> {
    let (x, y, i) = morphism_ref(
        origin,
        c.objects(),
        |x, y| c.hom_ids(x, y).into_iter().map(String::from).collect(),
        at,
        key,
    )?;
    Ok(c.hom_range(x, y).start + i)
}

fn one_sided(
    origin: &Origin,
    variance: Variance,
    c: Arc<FinLinCategory>,
    dims: &BTreeMap<String, usize>,
    actions: &BTreeMap<String, MatrixText>,
) -> Result<ModuleRep, FormatError> {
    let f = c.field();
    let dims = dims_vec(origin, &c, "dims", dims)?;
    let shape = |g: usize| {
        let m = c.morphism(g);
        match variance {
            Variance::Left => (dims[m.tgt], dims[m.src]),
            Variance::Right => (dims[m.src], dims[m.tgt]),
        }
    };
    let mut action: Vec<Option<Mat>> = vec![None; c.num_morphisms()];
    for (key, m) in actions {
        let at = format!("actions.{key}");
        let g = module_ref(origin, &c, &at, key)?;
        action[g] = Some(matrix(origin, f, &at, m, shape(g))?);
    }
    let action = action
        .into_iter()
        .enumerate()
        .map(|(g, a)| a.unwrap_or_else(|| { let (r, k) = shape(g); default_action(&c, g, r, k) }))
        .collect();
    ModuleRep::new(variance, c.clone(), dims, action).map_err(|e| FormatError::field(origin, "actions", e.to_string()))
}

fn bimodule(
    origin: &Origin,
    outer: Arc<FinLinCategory>,
    inner: Arc<FinLinCategory>,
    dims: &BTreeMap<String, BTreeMap<String, usize>>,
    left: &BTreeMap<String, BTreeMap<String, MatrixText>>,
    right: &BTreeMap<String, BTreeMap<String, MatrixText>>,
) -> Result<BimoduleRep, FormatError> {
    let f = outer.field();
    let mut table = vec![vec![0; inner.num_objects()]; outer.num_objects()];
    for (a, row) in dims {
        let at = format!("dims.{a}");
        let x = object(origin, outer.objects(), &at, a)?;
        table[x] = dims_vec(origin, &inner, &at, row)?;
    }
    let mut l: Vec<Vec<Option<Mat>>> = vec![vec![None; inner.num_objects()]; outer.num_morphisms()];
    for (key, fam) in left {
        let at = format!("left.{key}");
        let g = module_ref(origin, &outer, &at, key)?;
        let m = outer.morphism(g);
        for (bname, mt) in fam {
            let at = format!("{at}.{bname}");
            let b = object(origin, inner.objects(), &at, bname)?;
            l[g][b] = Some(matrix(origin, f, &at, mt, (table[m.tgt][b], table[m.src][b]))?);
        }
    }
    let mut r: Vec<Vec<Option<Mat>>> = vec![vec![None; outer.num_objects()]; inner.num_morphisms()];
    for (key, fam) in right {
        let at = format!("right.{key}");
        let g = module_ref(origin, &inner, &at, key)?;
        let m = inner.morphism(g);
        for (aname, mt) in fam {
            let at = format!("{at}.{aname}");
            let a = object(origin, outer.objects(), &at, aname)?;
            r[g][a] = Some(matrix(origin, f, &at, mt, (table[a][m.src], table[a][m.tgt]))?);
        }
    }
    let l = l
        .into_iter()
        .enumerate()
        .map(|(g, fam)| {
            let m = outer.morphism(g);
            fam.into_iter()
                .enumerate()
                .map(|(b, x)| x.unwrap_or_else(|| default_action(&outer, g, table[m.tgt][b], table[m.src][b])))
                .collect()
        })
        .collect();
    let r = r
        .into_iter()
        .enumerate()
        .map(|(g, fam)| {
            let m = inner.morphism(g);
            fam.into_iter()
                .enumerate()
                .map(|(a, x)| x.unwrap_or_else(|| default_action(&inner, g, table[a][m.src], table[a][m.tgt])))
                .collect()
        })
        .collect();
    BimoduleRep::new(outer, inner, table, l, r).map_err(|e| FormatError::field(origin, "actions", e.to_string()))
}

pub fn module_from_file(file: &ModuleFile, origin: &Origin, over: Option<Field>) -> Result<Document, FormatError> {
    if file.schema != MODULE_SCHEMA {
        return Err(FormatError::field(origin, "schema", format!("expected `{MODULE_SCHEMA}`")));
    }
    Ok(match &file.body {
        ModuleBody::Right { category, dims, actions } => {
            Document::Module(one_sided(origin, Variance::Right, resolve(category, origin, over)?, dims, actions)?)
        }
        ModuleBody::Left { category, dims, actions } => {
            Document::Module(one_sided(origin, Variance::Left, resolve(category, origin, over)?, dims, actions)?)
        }
        ModuleBody::Bimodule { outer, inner, dims, left, right } => {
            let (o, i) = (resolve(outer, origin, over)?, resolve(inner, origin, over)?);
            if o.field() != i.field() {
                return Err(FormatError::field(origin, "inner", "outer and inner categories are over different fields"));
            }
            Document::Bimodule(bimodule(origin, o, i, dims, left, right)?)
        }
    })
}

fn inline(c: &FinLinCategory) -> CategoryRef {
    CategoryRef::Inline(Box::new(category_to_file(c)))
}

fn dims_map(c: &FinLinCategory, dims: &[usize]) -> BTreeMap<String, usize> {
    c.objects().iter().cloned().zip(dims.iter().copied()).filter(|(_, d)| *d > 0).collect()
}

/// The file form of a module, with its category inlined and default actions omitted.
pub fn module_to_file(m: &ModuleRep) -> ModuleFile {
    let c = m.base();
    let mut actions = BTreeMap::new();
    for (g, a) in m.actions().iter().enumerate() {
        if *a != default_action(c, g, a.rows(), a.cols()) {
            actions.insert(c.describe(g), matrix_text(c.field(), a));
        }
    }
    let (category, dims) = (inline(c), dims_map(c, m.dims()));
    let body = match m.variance() {
        Variance::Right => ModuleBody::Right { category, dims, actions },
        Variance::Left => ModuleBody::Left { category, dims, actions },
    };
    ModuleFile { schema: MODULE_SCHEMA.to_string(), body }
}

pub fn bimodule_to_file(m: &BimoduleRep) -> ModuleFile {
    let (outer, inner) = (m.outer(), m.inner());
    let f = outer.field();
    let mut dims = BTreeMap::new();
    for (a, row) in m.dims().iter().enumerate() {
        let row = dims_map(inner, row);
        if !row.is_empty() {
            dims.insert(outer.objects()[a].clone(), row);
        }
    }
    let mut left = BTreeMap::new();
    for g in 0..outer.num_morphisms() {
        let mut fam = BTreeMap::new();
        for b in 0..inner.num_objects() {
            let a = m.left(g, b);
            if *a != default_action(outer, g, a.rows(), a.cols()) {
                fam.insert(inner.objects()[b].clone(), matrix_text(f, a));
            }
        }
        if !fam.is_empty() {
            left.insert(outer.describe(g), fam);
        }
    }
    let mut right = BTreeMap::new();
    for g in 0..inner.num_morphisms() {
        let mut fam = BTreeMap::new();
        for a in 0..outer.num_objects() {
            let x = m.right(g, a);
            if *x != default_action(inner, g, x.rows(), x.cols()) {
                fam.insert(outer.objects()[a].clone(), matrix_text(f, x));
            }
        }
        if !fam.is_empty() {
            right.insert(inner.describe(g), fam);
        }
    }
    ModuleFile {
        schema: MODULE_SCHEMA.to_string(),
        body: ModuleBody::Bimodule { outer: inline(outer), inner: inline(inner), dims, left, right },
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use hmcoh::category::fixtures;

    use super::*;

    fn round_trip_category(c: &FinLinCategory) {
        let text = to_json(&category_to_file(c));
        match parse_str(&text, &Origin::inline(), None).unwrap() {
            Document::Category(back) => assert_eq!(*back, *c, "{text}"),
            d => panic!("parsed a {}", d.kind()),
        }
    }

    #[test]
    fn fixtures_round_trip() {
        for c in [
            fixtures::one(),
            fixtures::a2(),
            fixtures::a3(),
            fixtures::a3_zero_relation(),
            fixtures::kronecker(),
            fixtures::full2(),
            fixtures::broken_a2(),
        ] {
            round_trip_category(&c);
        }
    }

    #[test]
    fn dangling_reference_is_named() {
        let text = r#"{"schema": "hmcoh.category/1", "field": "Q", "objects": ["x"],
            "homs": {"x->x": ["id"]}, "identities": {"x": "id"},
            "compose": [{"g": "x->x:id", "f": "x->x:nope", "result": {}}]}"#;
        let err = parse_str(text, &Origin::inline(), None).unwrap_err().to_string();
        assert!(err.contains("x->x:nope"), "{err}");
        assert!(err.contains("compose[0].f"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_str("{\n  \"schema\": ", &Origin::inline(), None).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn modules_round_trip() {
        let a2 = Arc::new(fixtures::a2());
        let m = ModuleRep::representable_right(a2.clone(), 1);
        let back = parse_str(&to_json(&module_to_file(&m)), &Origin::inline(), None).unwrap();
        assert!(matches!(back, Document::Module(b) if b == m));
        let r = BimoduleRep::regular(a2);
        let back = parse_str(&to_json(&bimodule_to_file(&r)), &Origin::inline(), None).unwrap();
        assert!(matches!(back, Document::Bimodule(b) if b == r));
    }
}
