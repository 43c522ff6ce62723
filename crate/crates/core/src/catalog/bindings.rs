//! Instantiation bindings.
//!
//! One binding per string:
//!
//! * `?A(x, $a) := body` binds a formula metavariable with parameters;
//! * `$r := functor` or `t := term` binds a free template variable;
//! * `rename y := z` or `rename $a := $z` renames a template binder.

use std::collections::BTreeMap;

use crate::syntax::{parse, parse_arg, Arg, Formula, Var};

use super::CatalogError;

/// A formula metavariable's replacement: `body` with `params` abstracted.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaBinding {
    pub params: Vec<Var>,
    pub body: Formula,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings {
    pub renames: Vec<(Var, Var)>,
    pub metas: BTreeMap<String, MetaBinding>,
    pub objects: BTreeMap<Var, Arg>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Bindings, CatalogError> {
        let mut b = Bindings::new();
        for item in items {
            b.add(item.as_ref())?;
        }
        Ok(b)
    }

    /// Adds one binding in the textual form.
    pub fn add(&mut self, text: &str) -> Result<(), CatalogError> {
        let bad = |msg: &str| CatalogError::BadBinding { text: text.to_string(), msg: msg.to_string() };
        let (lhs, rhs) = text.split_once(":=").ok_or_else(|| bad("expected `:=`"))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        if let Some(old) = lhs.strip_prefix("rename ") {
            let old = parse_var(old.trim()).ok_or_else(|| bad("expected a variable to rename"))?;
            let new = parse_var(rhs).ok_or_else(|| bad("expected a variable name"))?;
            if old.sort() != new.sort() {
                return Err(bad("a rename must keep the sort"));
            }
            self.renames.push((old, new));
            return Ok(());
        }
        if let Some(meta) = lhs.strip_prefix('?') {
            let (name, params) = match meta.split_once('(') {
                Some((name, rest)) => {
                    let inner = rest.strip_suffix(')').ok_or_else(|| bad("unclosed parameter list"))?;
                    let params = inner
                        .split(',')
                        .map(|p| parse_var(p.trim()).ok_or_else(|| bad("parameters must be variables")))
                        .collect::<Result<Vec<_>, _>>()?;
                    (name.trim(), params)
                }
                None => (meta.trim(), Vec::new()),
            };
            if !is_ident(name) {
                return Err(bad("bad metavariable name"));
            }
            let mut seen = params.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != params.len() {
                return Err(bad("repeated parameter"));
            }
            let body = parse(rhs).map_err(|e| bad(&e.to_string()))?;
            if self.metas.insert(name.to_string(), MetaBinding { params, body }).is_some() {
                return Err(bad("metavariable bound twice"));
            }
            return Ok(());
        }
        let var = parse_var(lhs).ok_or_else(|| bad("expected `?A(...)`, a variable or `rename`"))?;
        let arg = parse_arg(rhs).map_err(|e| bad(&e.to_string()))?;
        if arg.sort() != var.sort() {
            return Err(CatalogError::Sort(format!("{var} cannot be bound to `{arg}`")));
        }
        if self.objects.insert(var, arg).is_some() {
            return Err(bad("variable bound twice"));
        }
        Ok(())
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_var(s: &str) -> Option<Var> {
    match s.strip_prefix('$') {
        Some(n) if is_ident(n) => Some(Var::seq(n)),
        None if is_ident(s) => Some(Var::num(s)),
        _ => None,
    }
}

/// Parses a single binding.
pub fn parse_binding(text: &str) -> Result<Bindings, CatalogError> {
    Bindings::parse(&[text])
}

/// Parses `[b1; b2; ...]` (the brackets are optional).
pub fn parse_binding_list(text: &str) -> Result<Bindings, CatalogError> {
    let t = text.trim();
    let t = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
    let items: Vec<&str> = t.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    Bindings::parse(&items)
}
