//! Schema instantiation.

use crate::syntax::{
    expand_unique, free_vars, substitute, substitute_many, Arg, Formula, Functor, SubstError, SubstMode, Term, Var,
};
use crate::translate::{in_class, negative_translate};

use super::{Bindings, Catalog, CatalogError, MetaBinding, Schema, SchemaBody};

fn subst_error(e: SubstError) -> CatalogError {
    match e {
        SubstError::Capture { var, binder } => CatalogError::Capture { var, binder },
        other => CatalogError::Sort(other.to_string()),
    }
}

/// Renames every binder of `old` in `f` to `new`, together with the
/// occurrences it binds. Fails if `new` would capture or be captured.
pub fn rename_binder(f: &Formula, old: &Var, new: &Var) -> Result<Formula, CatalogError> {
    let rec = |g: &Formula| rename_binder(g, old, new);
    let rebind = |var: &Var, body: &Formula| -> Result<Formula, CatalogError> {
        if var != old {
            return rec(body);
        }
        let body = rec(body)?;
        if new != old && free_vars(&body).contains(new) {
            return Err(CatalogError::Capture { var: new.to_string(), binder: old.to_string() });
        }
        let replacement = match new {
            Var::Num(n) => Arg::Term(Term::var(n.clone())),
            Var::Seq(n) => Arg::Functor(Functor::var(n.clone())),
        };
        substitute(&body, old, &replacement, SubstMode::Strict).map_err(subst_error)
    };
    let renamed = |v: &Var| if v == old { new.clone() } else { v.clone() };
    Ok(match f {
        Formula::Eq(..) | Formula::Meta(..) => f.clone(),
        Formula::Not(a) => Formula::not(rec(a)?),
        Formula::And(a, b) => Formula::and(rec(a)?, rec(b)?),
        Formula::Or(a, b) => Formula::or(rec(a)?, rec(b)?),
        Formula::Imp(a, b) => Formula::imp(rec(a)?, rec(b)?),
        Formula::Iff(a, b) => Formula::iff(rec(a)?, rec(b)?),
        Formula::Quant(q, v, body) => Formula::Quant(*q, renamed(v), Box::new(rebind(v, body)?)),
        Formula::Bounded { q, var, rel, bound, body } => {
            let v = Var::num(var.clone());
            Formula::Bounded {
                q: *q,
                var: renamed(&v).name().to_string(),
                rel: *rel,
                bound: bound.clone(),
                body: Box::new(rebind(&v, body)?),
            }
        }
        Formula::Relativized { q, var, guard, body } => {
            let v = Var::seq(var.clone());
            Formula::Relativized {
                q: *q,
                var: renamed(&v).name().to_string(),
                guard: Box::new(rebind(&v, guard)?),
                body: Box::new(rebind(&v, body)?),
            }
        }
        Formula::Unique(var, body) => {
            let v = Var::num(var.clone());
            Formula::Unique(renamed(&v).name().to_string(), Box::new(rebind(&v, body)?))
        }
    })
}

fn replace_metas(f: &Formula, b: &Bindings, bound: &mut Vec<Var>) -> Result<Formula, CatalogError> {
    let under = |v: Var, g: &Formula, bound: &mut Vec<Var>| {
        bound.push(v);
        let out = replace_metas(g, b, bound);
        bound.pop();
        out
    };
    Ok(match f {
        Formula::Eq(..) => f.clone(),
        Formula::Meta(name, args) => {
            let MetaBinding { params, body } =
                b.metas.get(name).ok_or_else(|| CatalogError::MissingBinding(name.clone()))?;
            if params.len() != args.len() {
                return Err(CatalogError::Arity { meta: name.clone(), expected: params.len(), found: args.len() });
            }
            let mut fv = free_vars(body);
            for p in params {
                fv.remove(p);
            }
            if let Some(v) = fv.vars().find(|v| bound.contains(v)) {
                return Err(CatalogError::Capture { var: v.to_string(), binder: v.to_string() });
            }
            let map = params.iter().cloned().zip(args.iter().cloned()).collect();
            substitute_many(body, &map, SubstMode::Strict).map_err(subst_error)?
        }
        Formula::Not(a) => Formula::not(replace_metas(a, b, bound)?),
        Formula::And(x, y) => Formula::and(replace_metas(x, b, bound)?, replace_metas(y, b, bound)?),
        Formula::Or(x, y) => Formula::or(replace_metas(x, b, bound)?, replace_metas(y, b, bound)?),
        Formula::Imp(x, y) => Formula::imp(replace_metas(x, b, bound)?, replace_metas(y, b, bound)?),
        Formula::Iff(x, y) => Formula::iff(replace_metas(x, b, bound)?, replace_metas(y, b, bound)?),
        Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(under(v.clone(), body, bound)?)),
        Formula::Bounded { q, var, rel, bound: t, body } => Formula::Bounded {
            q: *q,
            var: var.clone(),
            rel: *rel,
            bound: t.clone(),
            body: Box::new(under(Var::num(var.clone()), body, bound)?),
        },
        Formula::Relativized { q, var, guard, body } => Formula::Relativized {
            q: *q,
            var: var.clone(),
            guard: Box::new(under(Var::seq(var.clone()), guard, bound)?),
            body: Box::new(under(Var::seq(var.clone()), body, bound)?),
        },
        Formula::Unique(var, body) => Formula::Unique(var.clone(), Box::new(under(Var::num(var.clone()), body, bound)?)),
    })
}

/// Replaces the formula metavariables of `f` as bound in `b`, checking capture.
pub fn apply_meta_bindings(f: &Formula, b: &Bindings) -> Result<Formula, CatalogError> {
    replace_metas(f, b, &mut Vec::new())
}

impl Schema {
    /// Builds the instance of this schema for the given bindings.
    pub fn instantiate(&self, b: &Bindings) -> Result<Formula, CatalogError> {
        let template = match &self.body {
            SchemaBody::Template(t) => t,
            SchemaBody::Builtin => return Err(CatalogError::Builtin(self.name.clone())),
            SchemaBody::Opaque => return Err(CatalogError::Opaque(self.name.clone())),
        };
        let metas: Vec<String> = template.metavariables().into_iter().map(|(n, _)| n).collect();
        if let Some(extra) = b.metas.keys().find(|k| !metas.contains(k)) {
            return Err(CatalogError::UnknownMetavariable(extra.clone()));
        }
        for (meta, class) in &self.restrictions {
            if let Some(mb) = b.metas.get(meta) {
                if !in_class(&mb.body, *class) {
                    return Err(CatalogError::ClassViolation {
                        meta: meta.clone(),
                        class: *class,
                        formula: mb.body.to_string(),
                    });
                }
            }
        }
        let mut f = template.clone();
        for (old, new) in &b.renames {
            f = rename_binder(&f, old, new)?;
        }
        let fv = free_vars(&f);
        if let Some(v) = b.objects.keys().find(|v| !fv.contains(v)) {
            return Err(CatalogError::BadBinding {
                text: v.to_string(),
                msg: format!("{v} is not a free variable of {}", self.name),
            });
        }
        f = substitute_many(&f, &b.objects, SubstMode::Strict).map_err(subst_error)?;
        f = replace_metas(&f, b, &mut Vec::new())?;
        f = expand_unique(&f);
        Ok(match self.translation {
            Some(policy) => negative_translate(&f, policy),
            None => f,
        })
    }
}

impl Catalog {
    /// Instantiates the named schema (`g(NAME)` allowed).
    pub fn instantiate(&self, name: &str, b: &Bindings) -> Result<Formula, CatalogError> {
        self.schema(name)?.instantiate(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_binding_list;
    use crate::syntax::{parse, print};

    fn inst(name: &str, b: &str) -> Result<String, CatalogError> {
        let cat = Catalog::standard();
        Ok(print(&cat.instantiate(name, &parse_binding_list(b)?)?))
    }

    fn golden(file: &str) -> String {
        let path = format!("{}/data/golden/v1/{file}", env!("CARGO_MANIFEST_DIR"));
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")).trim().to_string()
    }

    #[test]
    fn every_catalog_example_matches_its_golden() {
        let cat = Catalog::standard();
        let mut checked = 0;
        for schema in cat.schemas() {
            for ex in &schema.examples {
                let b = Bindings::parse(&ex.bindings).unwrap();
                let mut f = schema.instantiate(&b).unwrap_or_else(|e| panic!("{}: {e}", schema.name));
                if let Some(p) = ex.translate {
                    f = negative_translate(&f, p);
                }
                assert_eq!(print(&f), golden(&ex.golden), "{} / {}", schema.name, ex.golden);
                assert_eq!(parse(&golden(&ex.golden)).unwrap(), f, "golden reparses: {}", ex.golden);
                checked += 1;
            }
        }
        assert!(checked >= 30, "only {checked} examples");
    }

    #[test]
    fn dns_wcf_and_ct_variants_are_closures_of_instances() {
        let pairs = [
            ("S01-DNS0", "$a", "DNS0.sigma01.txt"),
            ("P01-WCF0", "$a", "WCF0.pi01.txt"),
            ("P11-WCF0", "$g", "WCF0.pi11.txt"),
            ("CT1", "$a", "GR.txt"),
        ];
        for (schema, var, file) in pairs {
            let closed = format!("A {var}. {}", golden(file));
            assert_eq!(inst(schema, "").unwrap(), print(&parse(&closed).unwrap()), "{schema}");
        }
        let nn = format!("A $a. ~~({})", golden("GR.txt"));
        assert_eq!(inst("NNGR", "").unwrap(), print(&parse(&nn).unwrap()));
    }

    #[test]
    fn class_restrictions_are_enforced() {
        let err = inst("qf-AC00", "[?A(x, y) := A z. x = z]").unwrap_err();
        assert!(matches!(err, CatalogError::ClassViolation { .. }));
        let err = inst("AC00Ar", "[?A(x, y) := A $b. $b(x) = y]").unwrap_err();
        assert!(matches!(err, CatalogError::ClassViolation { .. }));
        assert!(inst("qf-AC00", "[?A(x, y) := A z <= y. x = z]").is_ok());
        assert!(matches!(
            inst("DNS0-", "[?A(x) := E y. x = y]").unwrap_err(),
            CatalogError::ClassViolation { .. }
        ));
    }

    #[test]
    fn capture_is_an_error() {
        // `y` in the body would be captured by the template's `E y`.
        let err = inst("AC00", "[?A(x, z) := z = y]").unwrap_err();
        assert!(matches!(err, CatalogError::Capture { .. }), "{err}");
        // An argument captured by a binder inside the body.
        let err = inst("AC00", "[?A(u, v) := E x. u = v]").unwrap_err();
        assert!(matches!(err, CatalogError::Capture { .. }), "{err}");
        // A free parameter that is not captured stays free.
        assert_eq!(inst("AC00", "[?A(x, y) := x = n]").unwrap().matches(" n").count(), 2);
    }

    #[test]
    fn missing_and_unknown_bindings() {
        assert_eq!(inst("AC00", "").unwrap_err(), CatalogError::MissingBinding("A".into()));
        assert_eq!(inst("MP1", "[?B := 0 = 0]").unwrap_err(), CatalogError::UnknownMetavariable("B".into()));
        assert!(matches!(inst("AC00", "[?A(x) := x = 0]").unwrap_err(), CatalogError::Arity { .. }));
        assert!(matches!(inst("VS", "").unwrap_err(), CatalogError::Opaque(_)));
        assert!(matches!(inst("LAMBDA", "").unwrap_err(), CatalogError::Builtin(_)));
        assert!(matches!(inst("RC", "[$q := $a]").unwrap_err(), CatalogError::BadBinding { .. }));
    }

    #[test]
    fn object_bindings_and_renames() {
        assert!(inst("RC", "[$r := \\u. suc(u)]").unwrap().contains("(\\u. suc(u))(pair(x, y)) = 0"));
        let err = inst("RC", "[$r := $a]").unwrap_err();
        assert!(matches!(err, CatalogError::Capture { .. }), "{err}");
        assert!(inst("MP1", "[rename $a := $b]").unwrap().starts_with("A $b. "));
        let err = inst("MP1", "[rename x := a]").map(|s| s.contains("$a(a)"));
        assert_eq!(err, Ok(true));
    }

    #[test]
    fn unique_existence_is_expanded() {
        let s = inst("AC00!", "[?A(x, y) := $b(x) = y]").unwrap();
        assert!(!s.contains("E!"));
        assert!(s.contains("A z. $b(x) = y & $b(x) = z -> y = z"));
    }

    #[test]
    fn g_images_translate_instances() {
        let plain = Catalog::standard().instantiate("AC01", &parse_binding_list("[?A(x, $a) := E y. $a(y) = x]").unwrap()).unwrap();
        let image = Catalog::standard().instantiate("g(AC01)", &parse_binding_list("[?A(x, $a) := E y. $a(y) = x]").unwrap()).unwrap();
        assert_eq!(image, negative_translate(&plain, crate::translate::AtomPolicy::Identity));
    }
}
