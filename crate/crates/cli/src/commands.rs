//! Command dispatch. Every command produces a JSON report and a status.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hmcoh::category::{FinLinCategory, Partition};
use hmcoh::gluing::{
    ext_dims_tilde, glue, happel_les, les_check, lemma41_report, one_point_extension, GluingError, TildeComplex,
};
use hmcoh::hochschild::{ext_dims_bar, ext_dims_bar_bimodule, hh_dims, projected_dims, HochschildError, Variant};
use hmcoh::linalg::Field;
use hmcoh::module::{bimodule_hom, hom_k, nat_hom, BimoduleRep, ModuleError, ModuleRep, Variance};
use hmcoh::morita::{contraction_bimodules, hh_invariance_report, morita_witness_check, MoritaError};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::format::{self, category_to_file, Document, FormatError};

pub const REPORT_SCHEMA: &str = "hmcoh.report/1";

#[derive(Debug, Parser)]
#[command(name = "hmcoh", version, about = "Hochschild-Mitchell cohomology of finite linear categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Highest degree to compute.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Cohomology)]
    pub variant: VariantArg,
    /// Bimodule of coefficients; the regular bimodule when omitted.
    #[arg(long, global = true)]
    pub coefficients: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest allowed cochain space, in basis elements.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub budget: u128,
    /// Read every scalar over this field (`Q` or `GF(p)`).
    #[arg(long, global = true)]
    pub field: Option<Field>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Cohomology,
    Homology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a category or module file.
    Validate { file: PathBuf },
    /// Hochschild-Mitchell (co)homology dimensions.
    Hh { category: PathBuf },
    /// Dimension of the space of module or bimodule maps.
    Hom { source: PathBuf, target: PathBuf },
    /// Ext dimensions through the bar resolution.
    Ext { source: PathBuf, target: PathBuf },
    /// The one-point extension by a right module.
    Extend {
        category: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Glue two categories along a bimodule and check its resolution.
    Glue { bimodule: PathBuf },
    /// Contract a category along a partition such as `e=1,2;f=3`.
    Contract {
        category: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// The long exact sequence of a glued category.
    Les { bimodule: PathBuf },
    /// The long exact sequence of a one-point extension.
    Happel {
        category: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// The Ext and kernel identities behind the one-point extension sequence.
    Lemma41 {
        category: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Explicit Morita equivalence with a contraction, and HH invariance.
    MoritaCheck {
        category: PathBuf,
        #[arg(long)]
        partition: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: invalid {kind}:\n  {}", .violations.join("\n  "))]
    Invalid { path: String, kind: &'static str, violations: Vec<String> },
    #[error("{what}: degree {degree} needs {projected} basis elements, over the budget of {budget}")]
    Budget { what: String, degree: usize, projected: u128, budget: u128 },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Morita(#[from] MoritaError),
    #[error(transparent)]
    Category(#[from] hmcoh::category::CategoryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Invalid,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Invalid => 2,
        }
    }

    fn from_verdict(ok: bool) -> Status {
        if ok {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(REPORT_SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn finish(report: Map<String, Value>, ok: bool) -> Outcome {
    Outcome { status: Status::from_verdict(ok), report: Value::Object(report) }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn shown(p: &Path) -> String {
    p.display().to_string()
}

struct Ctx<'a> {
    opts: &'a Options,
}

impl Ctx<'_> {
    fn load(&self, path: &Path) -> Result<Document, CliError> {
        let doc = format::parse_path(path, self.opts.field)?;
        let invalid = |kind, violations: Vec<String>| CliError::Invalid { path: shown(path), kind, violations };
        let check = |c: &FinLinCategory| -> Result<(), CliError> {
            let r = c.validate();
            if r.is_valid() {
                Ok(())
            } else {
                Err(invalid("category", r.violations.iter().map(ToString::to_string).collect()))
            }
        };
        match &doc {
            Document::Category(c) => check(c)?,
            Document::Module(m) => {
                check(m.base())?;
                let r = m.validate();
                if !r.is_valid() {
                    return Err(invalid("module", r.violations.iter().map(ToString::to_string).collect()));
                }
            }
            Document::Bimodule(m) => {
                check(m.outer())?;
                check(m.inner())?;
                let r = m.validate();
                if !r.is_valid() {
                    return Err(invalid("bimodule", r.violations.iter().map(ToString::to_string).collect()));
                }
            }
        }
        Ok(doc)
    }

    fn category(&self, path: &Path) -> Result<Arc<FinLinCategory>, CliError> {
        match self.load(path)? {
            Document::Category(c) => Ok(c),
            d => Err(CliError::Usage(format!("{}: expected a category, found a {}", shown(path), d.kind()))),
        }
    }

    fn right_module(&self, path: &Path, over: &FinLinCategory) -> Result<ModuleRep, CliError> {
        match self.load(path)? {
            Document::Module(m) if m.variance() == Variance::Right => {
                if **m.base() != *over {
                    return Err(CliError::Usage(format!("{}: the module is over a different category", shown(path))));
                }
                Ok(m)
            }
            d => Err(CliError::Usage(format!("{}: expected a right module, found a {}", shown(path), d.kind()))),
        }
    }

    fn bimodule(&self, path: &Path) -> Result<BimoduleRep, CliError> {
        match self.load(path)? {
            Document::Bimodule(m) => Ok(m),
            d => Err(CliError::Usage(format!("{}: expected a bimodule, found a {}", shown(path), d.kind()))),
        }
    }

    /// Coefficients over `c`: the `--coefficients` bimodule or the regular one.
    fn coefficients(&self, c: &Arc<FinLinCategory>) -> Result<(BimoduleRep, String), CliError> {
        match &self.opts.coefficients {
            None => Ok((BimoduleRep::regular(c.clone()), "regular".into())),
            Some(p) => {
                let n = self.bimodule(p)?;
                if **n.outer() != **c || **n.inner() != **c {
                    return Err(CliError::Usage(format!("{}: coefficients are not over the category", shown(p))));
                }
                Ok((n, shown(p)))
            }
        }
    }

    /// Fails before any nerve is enumerated if a cochain space would exceed the budget.
    fn guard(&self, what: &str, c: &FinLinCategory, dims: &[Vec<usize>], top: usize, cochain: bool) -> Result<(), CliError> {
        let projected = projected_dims(c, dims, top, cochain);
        match projected.iter().enumerate().find(|(_, d)| **d > self.opts.budget) {
            Some((degree, d)) => Err(CliError::Budget {
                what: what.to_string(),
                degree,
                projected: *d,
                budget: self.opts.budget,
            }),
            None => Ok(()),
        }
    }

    fn guard_regular(&self, what: &str, c: &FinLinCategory, top: usize) -> Result<(), CliError> {
        let no = c.num_objects();
        let dims: Vec<Vec<usize>> = (0..no).map(|y| (0..no).map(|x| c.hom_dim(x, y)).collect()).collect();
        self.guard(what, c, &dims, top, true)
    }

    fn guard_ext(&self, what: &str, m: &ModuleRep, n: &ModuleRep, top: usize) -> Result<(), CliError> {
        let h = hom_k(m, n)?;
        self.guard(what, m.base(), h.dims(), top, true)
    }

    fn guard_ext_bimodule(&self, what: &str, m: &BimoduleRep, n: &BimoduleRep, top: usize) -> Result<(), CliError> {
        let (em, en) = (m.to_enveloping_module(), n.to_enveloping_module());
        let en = ModuleRep::new(en.variance(), em.base().clone(), en.dims().to_vec(), en.actions().to_vec())?;
        self.guard_ext(what, &em, &en, top)
    }
}

/// Parses `name=obj,obj;name=obj`.
pub fn parse_partition(c: &FinLinCategory, text: &str) -> Result<Partition, CliError> {
    let mut classes = Vec::new();
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, objs) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("partition class `{part}` is not of the form name=obj,obj")))?;
        let objs: Vec<&str> = objs.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        classes.push((name.trim().to_string(), objs));
    }
    Ok(Partition::new(c, &classes)?)
}

fn partition_value(c: &FinLinCategory, e: &Partition) -> Value {
    let mut m = Map::new();
    for (name, objs) in e.classes() {
        m.insert(name.clone(), json!(objs.iter().map(|x| c.objects()[*x].clone()).collect::<Vec<_>>()));
    }
    Value::Object(m)
}

fn variant(v: VariantArg) -> Variant {
    match v {
        VariantArg::Cohomology => Variant::Cohomology,
        VariantArg::Homology => Variant::Homology,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = &cli.options;
    let ctx = Ctx { opts };
    let max = opts.max_degree;
    match &cli.command {
        Command::Validate { file } => validate(opts, file),
        Command::Hh { category } => {
            let c = ctx.category(category)?;
            let (n, coeffs) = ctx.coefficients(&c)?;
            let v = variant(opts.variant);
            ctx.guard("hh", &c, n.dims(), max + 1, v == Variant::Cohomology)?;
            let dims = hh_dims(&c, &n, max, v)?;
            let mut r = header("hh");
            r.insert("category".into(), json!(shown(category)));
            r.insert("coefficients".into(), json!(coeffs));
            r.insert("variant".into(), to_value(&v));
            r.insert("max_degree".into(), json!(max));
            r.insert("HH".into(), json!(dims));
            Ok(finish(r, true))
        }
        Command::Hom { source, target } => {
            let (a, b) = (ctx.load(source)?, ctx.load(target)?);
            let dim = match (&a, &b) {
                (Document::Module(m), Document::Module(n)) => nat_hom(m, n)?.len(),
                (Document::Bimodule(m), Document::Bimodule(n)) => bimodule_hom(m, n)?.len(),
                _ => return Err(CliError::Usage("hom needs two modules of the same kind".into())),
            };
            let mut r = header("hom");
            r.insert("source".into(), json!(shown(source)));
            r.insert("target".into(), json!(shown(target)));
            r.insert("kind".into(), json!(a.kind()));
            r.insert("dim".into(), json!(dim));
            Ok(finish(r, true))
        }
        Command::Ext { source, target } => {
            let (a, b) = (ctx.load(source)?, ctx.load(target)?);
            let dims = match (&a, &b) {
                (Document::Module(m), Document::Module(n)) => {
                    ctx.guard_ext("ext", m, n, max + 1)?;
                    ext_dims_bar(m, n, max)?
                }
                (Document::Bimodule(m), Document::Bimodule(n)) => {
                    ctx.guard_ext_bimodule("ext", m, n, max + 1)?;
                    ext_dims_bar_bimodule(m, n, max)?
                }
                _ => return Err(CliError::Usage("ext needs two modules of the same kind".into())),
            };
            let mut r = header("ext");
            r.insert("source".into(), json!(shown(source)));
            r.insert("target".into(), json!(shown(target)));
            r.insert("kind".into(), json!(a.kind()));
            r.insert("max_degree".into(), json!(max));
            r.insert("Ext".into(), json!(dims));
            Ok(finish(r, true))
        }
        Command::Extend { category, module } => {
            let c = ctx.category(category)?;
            let m = ctx.right_module(module, &c)?;
            let g = one_point_extension(&m)?;
            let ext = g.category();
            let valid = ext.validate().is_valid();
            let convex = ext.is_convex(&g.embedding2().objects)?;
            let mut r = header("extend");
            r.insert("category".into(), json!(shown(category)));
            r.insert("module".into(), json!(shown(module)));
            r.insert("new_object".into(), json!(ext.objects()[g.apex()]));
            r.insert("valid".into(), json!(valid));
            r.insert("base_is_convex".into(), json!(convex));
            r.insert("extension".into(), to_value(&category_to_file(ext)));
            Ok(finish(r, valid && convex))
        }
        Command::Glue { bimodule } => {
            let m = ctx.bimodule(bimodule)?;
            let g = glue(&m)?;
            let c = g.category();
            let n = g.regular();
            ctx.guard_regular("glue", c, max + 1)?;
            let r12 = g.r12(&n)?;
            ctx.guard_ext_bimodule("glue", g.m(), &r12, max + 1)?;
            let valid = c.validate().is_valid();
            let tilde = TildeComplex::new(&g, max).report();
            let via_tilde = ext_dims_tilde(&g, &n, max)?;
            let via_bar = ext_dims_bar_bimodule(g.m(), &r12, max)?;
            let agree = via_tilde == via_bar;
            let mut r = header("glue");
            r.insert("bimodule".into(), json!(shown(bimodule)));
            r.insert("valid".into(), json!(valid));
            r.insert("max_degree".into(), json!(max));
            r.insert("resolution".into(), to_value(&tilde));
            r.insert("Ext_tilde".into(), json!(via_tilde));
            r.insert("Ext_bar".into(), json!(via_bar));
            r.insert("agree".into(), json!(agree));
            r.insert("glued".into(), to_value(&category_to_file(c)));
            Ok(finish(r, valid && tilde.holds() && agree))
        }
        Command::Contract { category, partition } => {
            let c = ctx.category(category)?;
            let e = parse_partition(&c, partition)?;
            let d = c.contract(&e)?;
            let valid = d.validate().is_valid();
            let mut r = header("contract");
            r.insert("category".into(), json!(shown(category)));
            r.insert("partition".into(), partition_value(&c, &e));
            r.insert("valid".into(), json!(valid));
            r.insert("contracted".into(), to_value(&category_to_file(&d)));
            Ok(finish(r, valid))
        }
        Command::Les { bimodule } => {
            let m = ctx.bimodule(bimodule)?;
            let g = glue(&m)?;
            let (n, coeffs) = ctx.coefficients(g.category())?;
            ctx.guard("les", g.category(), n.dims(), max + 2, true)?;
            let les = les_check(&g, &n, max)?;
            let mut r = header("les");
            r.insert("bimodule".into(), json!(shown(bimodule)));
            r.insert("coefficients".into(), json!(coeffs));
            r.insert("max_degree".into(), json!(max));
            r.insert("dims".into(), json!(les.dims()));
            r.insert("sequence".into(), to_value(&les));
            Ok(finish(r, les.exact))
        }
        Command::Happel { category, module } => {
            let c = ctx.category(category)?;
            let m = ctx.right_module(module, &c)?;
            if opts.coefficients.is_some() {
                return Err(CliError::Usage("happel always uses regular coefficients".into()));
            }
            let g = one_point_extension(&m)?;
            ctx.guard_regular("happel", g.category(), max + 2)?;
            let les = happel_les(&m, max)?;
            let mut r = header("happel");
            r.insert("category".into(), json!(shown(category)));
            r.insert("module".into(), json!(shown(module)));
            r.insert("max_degree".into(), json!(max));
            r.insert("dims".into(), json!(les.dims()));
            r.insert("sequence".into(), to_value(&les));
            Ok(finish(r, les.exact))
        }
        Command::Lemma41 { category, module } => {
            let c = ctx.category(category)?;
            let m = ctx.right_module(module, &c)?;
            let g = one_point_extension(&m)?;
            ctx.guard_ext("lemma41", &g.simple(), &g.mbar(), max + 2)?;
            let jc = g.j(&BimoduleRep::regular(c.clone()));
            ctx.guard_ext_bimodule("lemma41", &jc, &jc, max + 1)?;
            let report = lemma41_report(&m, max)?;
            let mut r = header("lemma41");
            r.insert("category".into(), json!(shown(category)));
            r.insert("module".into(), json!(shown(module)));
            r.insert("max_degree".into(), json!(max));
            r.insert("items".into(), to_value(&report.items));
            r.insert("kernel".into(), to_value(&report.kernel));
            r.insert("holds".into(), json!(report.holds()));
            Ok(finish(r, report.holds()))
        }
        Command::MoritaCheck { category, partition } => {
            let c = ctx.category(category)?;
            let e = parse_partition(&c, partition)?;
            let d = c.contract(&e)?;
            ctx.guard_regular("morita-check", &c, max + 1)?;
            ctx.guard_regular("morita-check", &d, max + 1)?;
            let w = contraction_bimodules(c.clone(), &e)?;
            let witness = morita_witness_check(&w)?;
            let hh = hh_invariance_report(&c, &e, max)?;
            let mut r = header("morita-check");
            r.insert("category".into(), json!(shown(category)));
            r.insert("partition".into(), partition_value(&c, &e));
            r.insert("max_degree".into(), json!(max));
            r.insert("witness".into(), to_value(&witness));
            r.insert("hh".into(), to_value(&hh));
            Ok(finish(r, witness.holds() && hh.equal))
        }
    }
}

/// `validate` reports violations instead of failing on them.
fn validate(opts: &Options, file: &Path) -> Result<Outcome, CliError> {
    let doc = format::parse_path(file, opts.field)?;
    let mut r = header("validate");
    r.insert("file".into(), json!(shown(file)));
    r.insert("kind".into(), json!(doc.kind()));
    let mut violations = Vec::new();
    let mut push_category = |c: &FinLinCategory, role: &str| {
        for v in c.validate().violations {
            let mut entry = to_value(&v);
            entry["where"] = json!(role);
            entry["message"] = json!(v.to_string());
            violations.push(entry);
        }
    };
    let module_violations = match &doc {
        Document::Category(c) => {
            push_category(c, "category");
            r.insert("objects".into(), json!(c.num_objects()));
            r.insert("morphisms".into(), json!(c.num_morphisms()));
            Vec::new()
        }
        Document::Module(m) => {
            push_category(m.base(), "category");
            r.insert("total_dim".into(), json!(m.total_dim()));
            m.validate().violations
        }
        Document::Bimodule(m) => {
            push_category(m.outer(), "outer");
            push_category(m.inner(), "inner");
            r.insert("total_dim".into(), json!(m.total_dim()));
            m.validate().violations
        }
    };
    for v in module_violations {
        let mut entry = to_value(&v);
        entry["where"] = json!("module");
        entry["message"] = json!(v.to_string());
        violations.push(entry);
    }
    let valid = violations.is_empty();
    r.insert("valid".into(), json!(valid));
    r.insert("violations".into(), Value::Array(violations));
    Ok(Outcome { status: if valid { Status::Ok } else { Status::Invalid }, report: Value::Object(r) })
}
