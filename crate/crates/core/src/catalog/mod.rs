//! The schema catalog: axiom schemas, named axioms and the theory registry.
//!
//! The catalog is a line-delimited JSON file. The copy under `data/` is
//! compiled in; `NEGINT_CATALOG` names a replacement file at run time.

mod bindings;
mod instantiate;
mod theory;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::syntax::{parse, ConstantTable, Formula, ParseError};
use crate::translate::{AtomPolicy, SyntacticClass};

pub use bindings::{parse_binding, parse_binding_list, Bindings, MetaBinding};
pub use instantiate::{apply_meta_bindings, rename_binder};
pub use theory::{ExtensionRow, Theory};

/// The compiled-in catalog text.
pub const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.jsonl");

/// Environment variable naming a catalog file to use instead of the built-in one.
pub const CATALOG_ENV: &str = "NEGINT_CATALOG";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("cannot read catalog {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error("schema `{0}` is registered by name only and has no template")]
    Opaque(String),
    #[error("schema `{0}` is checked by the kernel and cannot be instantiated from bindings")]
    Builtin(String),
    #[error("no binding for metavariable ?{0}")]
    MissingBinding(String),
    #[error("schema has no metavariable ?{0}")]
    UnknownMetavariable(String),
    #[error("?{meta} requires a {class} formula, got `{formula}`")]
    ClassViolation { meta: String, class: SyntacticClass, formula: String },
    #[error("{var} is not free for substitution: captured by binder {binder}")]
    Capture { var: String, binder: String },
    #[error("?{meta} is used with {found} arguments but bound with {expected} parameters")]
    Arity { meta: String, expected: usize, found: usize },
    #[error("sort mismatch: {0}")]
    Sort(String),
    #[error("bad binding `{text}`: {msg}")]
    BadBinding { text: String, msg: String },
    #[error("no minimum classical extension is recorded for `{0}`")]
    NoExtension(String),
}

/// What a catalog entry is.
#[derive(Debug, Clone)]
pub enum SchemaBody {
    /// A formula template; metavariables are `?A(...)` nodes, free
    /// variables are object-level parameters.
    Template(Formula),
    /// Checked by a dedicated kernel rule.
    Builtin,
    /// Cited by name only.
    Opaque,
}

/// A documented instance and the golden file holding its canonical print.
#[derive(Debug, Clone)]
pub struct Example {
    pub bindings: Vec<String>,
    pub golden: String,
    pub translate: Option<AtomPolicy>,
}

#[derive(Debug, Clone)]
pub struct Schema {
    pub name: String,
    pub doc: String,
    pub body: SchemaBody,
    pub restrictions: BTreeMap<String, SyntacticClass>,
    pub examples: Vec<Example>,
    /// Set for g-images: instances are translations of the base schema's instances.
    pub translation: Option<AtomPolicy>,
}

impl Schema {
    pub fn template(&self) -> Option<&Formula> {
        match &self.body {
            SchemaBody::Template(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct TheoryRecord {
    pub base: Option<String>,
    pub axioms: Vec<Formula>,
    pub schemas: Vec<String>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Record {
    Schema {
        name: String,
        #[serde(default)]
        doc: String,
        template: String,
        #[serde(default)]
        restrictions: BTreeMap<String, String>,
        #[serde(default)]
        examples: Vec<ExampleRecord>,
    },
    Builtin {
        name: String,
        #[serde(default)]
        doc: String,
    },
    Opaque {
        name: String,
        #[serde(default)]
        doc: String,
    },
    Theory {
        name: String,
        #[serde(default)]
        #[allow(dead_code)]
        doc: String,
        #[serde(default)]
        base: Option<String>,
        #[serde(default)]
        axioms: Vec<String>,
        #[serde(default)]
        schemas: Vec<String>,
        #[serde(default)]
        defining_axioms: bool,
    },
    Extension {
        row: String,
        lhs: String,
        rhs: String,
    },
    Additive {
        name: String,
        #[serde(default)]
        #[allow(dead_code)]
        doc: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExampleRecord {
    bindings: Vec<String>,
    golden: String,
    #[serde(default)]
    translate: Option<String>,
}

/// An immutable, validated catalog.
#[derive(Debug, Clone)]
pub struct Catalog {
    schemas: BTreeMap<String, Schema>,
    order: Vec<String>,
    theories: BTreeMap<String, TheoryRecord>,
    extensions: Vec<ExtensionRow>,
    additive: BTreeSet<String>,
}

impl Catalog {
    /// The compiled-in catalog.
    pub fn standard() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| Catalog::from_jsonl(BUILTIN_CATALOG).expect("built-in catalog is valid"))
    }

    /// The file named by `NEGINT_CATALOG` if set, else the compiled-in catalog.
    pub fn load() -> Result<Catalog, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| CatalogError::Io {
                    path: path.to_string_lossy().into_owned(),
                    msg: e.to_string(),
                })?;
                Catalog::from_jsonl(&text)
            }
            None => Ok(Catalog::standard().clone()),
        }
    }

    pub fn from_jsonl(text: &str) -> Result<Catalog, CatalogError> {
        let mut cat = Catalog {
            schemas: BTreeMap::new(),
            order: Vec::new(),
            theories: BTreeMap::new(),
            extensions: Vec::new(),
            additive: BTreeSet::new(),
        };
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let fail = |msg: String| CatalogError::Format { line: line_no, msg };
            if line.trim().is_empty() {
                continue;
            }
            let record: Record = serde_json::from_str(line).map_err(|e| fail(e.to_string()))?;
            let parse_at = |s: &str| parse(s).map_err(|e: ParseError| fail(format!("`{s}`: {e}")));
            match record {
                Record::Schema { name, doc, template, restrictions, examples } => {
                    let template = parse_at(&template)?;
                    let metas: BTreeSet<String> = template.metavariables().into_iter().map(|(n, _)| n).collect();
                    let mut classes = BTreeMap::new();
                    for (meta, class) in restrictions {
                        if !metas.contains(&meta) {
                            return Err(fail(format!("restriction on unknown metavariable ?{meta}")));
                        }
                        classes.insert(meta, class.parse::<SyntacticClass>().map_err(fail)?);
                    }
                    let examples = examples
                        .into_iter()
                        .map(|e| {
                            let translate = e.translate.map(|p| p.parse::<AtomPolicy>()).transpose().map_err(fail)?;
                            Ok(Example { bindings: e.bindings, golden: e.golden, translate })
                        })
                        .collect::<Result<Vec<_>, CatalogError>>()?;
                    let schema = Schema {
                        name: name.clone(),
                        doc,
                        body: SchemaBody::Template(template),
                        restrictions: classes,
                        examples,
                        translation: None,
                    };
                    cat.add_schema(schema).map_err(fail)?;
                }
                Record::Builtin { name, doc } | Record::Opaque { name, doc } => {
                    let body = if line.contains("\"builtin\"") { SchemaBody::Builtin } else { SchemaBody::Opaque };
                    let schema = Schema {
                        name,
                        doc,
                        body,
                        restrictions: BTreeMap::new(),
                        examples: Vec::new(),
                        translation: None,
                    };
                    cat.add_schema(schema).map_err(fail)?;
                }
                Record::Theory { name, base, axioms, schemas, defining_axioms, .. } => {
                    if cat.theories.contains_key(&name) || cat.schemas.contains_key(&name) {
                        return Err(fail(format!("duplicate name `{name}`")));
                    }
                    if let Some(b) = &base {
                        if !cat.theories.contains_key(b) {
                            return Err(fail(format!("base theory `{b}` must be declared earlier")));
                        }
                    }
                    let mut parsed = axioms.iter().map(|a| parse_at(a)).collect::<Result<Vec<_>, _>>()?;
                    if defining_axioms {
                        for a in ConstantTable::standard().defining_axioms() {
                            parsed.push(parse_at(a)?);
                        }
                    }
                    for s in &schemas {
                        if cat.schema(s).is_err() {
                            return Err(fail(format!("theory `{name}` uses unknown schema `{s}`")));
                        }
                    }
                    cat.theories.insert(name.clone(), TheoryRecord { base, axioms: parsed, schemas });
                }
                Record::Extension { row, lhs, rhs } => {
                    cat.extensions.push(ExtensionRow { row, lhs, rhs });
                }
                Record::Additive { name, .. } => {
                    if cat.schema(&name).is_err() {
                        return Err(fail(format!("unknown schema `{name}`")));
                    }
                    cat.additive.insert(name);
                }
            }
        }
        for row in &cat.extensions {
            for expr in [&row.lhs, &row.rhs] {
                cat.theory(expr).map_err(|e| CatalogError::Format { line: 0, msg: format!("row {}: {e}", row.row) })?;
            }
        }
        Ok(cat)
    }

    fn add_schema(&mut self, schema: Schema) -> Result<(), String> {
        if self.schemas.contains_key(&schema.name) {
            return Err(format!("duplicate schema `{}`", schema.name));
        }
        self.order.push(schema.name.clone());
        self.schemas.insert(schema.name.clone(), schema);
        Ok(())
    }

    /// Looks up a schema. `g(NAME)` and `g[strict](NAME)` denote g-images.
    pub fn schema(&self, name: &str) -> Result<Schema, CatalogError> {
        if let Some((policy, inner)) = split_image(name) {
            let base = self.schema(inner)?;
            return Ok(Schema {
                name: name.to_string(),
                doc: format!("negative translation of {inner}"),
                translation: Some(policy),
                examples: Vec::new(),
                ..base
            });
        }
        self.schemas.get(name).cloned().ok_or_else(|| CatalogError::UnknownSchema(name.to_string()))
    }

    /// Catalog schemas in file order (g-images are not listed).
    pub fn schemas(&self) -> impl Iterator<Item = &Schema> {
        self.order.iter().map(move |n| &self.schemas[n])
    }

    pub fn theory_names(&self) -> impl Iterator<Item = &String> {
        self.theories.keys()
    }

    pub fn extension_rows(&self) -> &[ExtensionRow] {
        &self.extensions
    }

    pub fn additive_schemas(&self) -> &BTreeSet<String> {
        &self.additive
    }

    pub(crate) fn theory_record(&self, name: &str) -> Option<&TheoryRecord> {
        self.theories.get(name)
    }
}

/// Splits `g(X)` / `g[strict](X)` into policy and `X`.
pub(crate) fn split_image(name: &str) -> Option<(AtomPolicy, &str)> {
    let (policy, rest) = if let Some(r) = name.strip_prefix("g[strict](") {
        (AtomPolicy::Strict, r)
    } else {
        (AtomPolicy::Identity, name.strip_prefix("g(")?)
    };
    rest.strip_suffix(')').map(|inner| (policy, inner))
}

/// The g-image name of a schema under `policy`.
pub fn image_name(name: &str, policy: AtomPolicy) -> String {
    match policy {
        AtomPolicy::Identity => format!("g({name})"),
        AtomPolicy::Strict => format!("g[strict]({name})"),
    }
}
