//! Theories as flattened sets of axioms and schemas, their negative
//! translations, and the minimum classical extension table.

use std::collections::BTreeSet;

use crate::syntax::{print, Formula};
use crate::translate::{is_negative, negative_translate, AtomPolicy};

use super::{image_name, split_image, Catalog, CatalogError, SchemaBody};

/// One row of the extension table: `lhs` has `rhs` as its minimum classical extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionRow {
    pub row: String,
    pub lhs: String,
    pub rhs: String,
}

/// A theory: closed axioms plus schema names, with all bases flattened in.
#[derive(Debug, Clone, PartialEq)]
pub struct Theory {
    pub name: String,
    pub axioms: Vec<Formula>,
    pub schemas: BTreeSet<String>,
    /// Set for g-images of theories.
    pub translation: Option<AtomPolicy>,
}

impl Theory {
    /// Axiom set identity: schema names and printed axioms.
    pub fn components(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.schemas.clone();
        out.extend(self.axioms.iter().map(|a| format!("axiom {}", print(a))));
        out
    }

    /// Every axiom and schema of `other` belongs to `self`.
    pub fn includes(&self, other: &Theory) -> bool {
        other.components().is_subset(&self.components())
    }

    pub fn has_schema(&self, name: &str) -> bool {
        self.schemas.contains(name)
    }

    /// True if every axiom is negative and every non-builtin schema is a g-image.
    pub fn is_negative(&self, cat: &Catalog) -> bool {
        self.axioms.iter().all(is_negative)
            && self.schemas.iter().all(|s| {
                split_image(s).is_some() || matches!(cat.schema(s).map(|x| x.body), Ok(SchemaBody::Builtin))
            })
    }

    fn push_axiom(&mut self, a: &Formula) {
        if !self.axioms.contains(a) {
            self.axioms.push(a.clone());
        }
    }
}

impl Catalog {
    /// Resolves `NAME` or `NAME+PART+...`, where every part is a registered
    /// theory or a schema name (including `g(NAME)`).
    pub fn theory(&self, expr: &str) -> Result<Theory, CatalogError> {
        let parts: Vec<&str> = expr.split('+').map(str::trim).collect();
        let mut t = Theory { name: expr.trim().to_string(), axioms: Vec::new(), schemas: BTreeSet::new(), translation: None };
        for (i, part) in parts.iter().enumerate() {
            if self.theory_record(part).is_some() {
                self.flatten_into(part, &mut t);
            } else if i > 0 && self.schema(part).is_ok() {
                t.schemas.insert(part.to_string());
            } else if i == 0 {
                return Err(CatalogError::UnknownTheory(part.to_string()));
            } else {
                return Err(CatalogError::UnknownSchema(part.to_string()));
            }
        }
        Ok(t)
    }

    fn flatten_into(&self, name: &str, t: &mut Theory) {
        let rec = self.theory_record(name).expect("checked by caller");
        if let Some(base) = &rec.base {
            self.flatten_into(base, t);
        }
        for a in &rec.axioms {
            t.push_axiom(a);
        }
        t.schemas.extend(rec.schemas.iter().cloned());
    }

    /// The g-image of a theory: translated axioms and g-images of its schemas.
    pub fn translate_theory(&self, t: &Theory, policy: AtomPolicy) -> Theory {
        Theory {
            name: image_name(&t.name, policy),
            axioms: t.axioms.iter().map(|a| negative_translate(a, policy)).collect(),
            schemas: t.schemas.iter().map(|s| image_name(s, policy)).collect(),
            translation: Some(policy),
        }
    }

    /// Looks up the minimum classical extension of `t`.
    ///
    /// A theory matching a row's left-hand side exactly gets that row's
    /// right-hand side. A theory that adds only additive schemas to a row's
    /// left-hand side gets the right-hand side plus the same schemas.
    pub fn minimum_extension(&self, t: &Theory) -> Result<(ExtensionRow, Theory), CatalogError> {
        let target = t.components();
        let mut best: Option<(usize, &ExtensionRow, BTreeSet<String>)> = None;
        for row in self.extension_rows() {
            let lhs = self.theory(&row.lhs)?.components();
            if !lhs.is_subset(&target) {
                continue;
            }
            let extra: BTreeSet<String> = target.difference(&lhs).cloned().collect();
            if !extra.iter().all(|s| self.additive_schemas().contains(s)) {
                continue;
            }
            if best.as_ref().is_none_or(|(n, _, _)| lhs.len() > *n) {
                best = Some((lhs.len(), row, extra));
            }
        }
        let (_, row, extra) = best.ok_or_else(|| CatalogError::NoExtension(t.name.clone()))?;
        let expr = std::iter::once(row.rhs.clone()).chain(extra).collect::<Vec<_>>().join("+");
        Ok((row.clone(), self.theory(&expr)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn theories_flatten_their_bases() {
        let cat = Catalog::standard();
        let c = cat.theory("C").unwrap();
        for s in ["IND", "LAMBDA", "AC01", "BI1", "DNE"] {
            assert!(c.has_schema(s), "{s}");
        }
        let ia1 = cat.theory("IA1").unwrap();
        assert!(ia1.axioms.len() > 3);
        assert_eq!(c.axioms, ia1.axioms);
        assert!(cat.theory("B").unwrap().includes(&ia1));
        assert!(!ia1.includes(&cat.theory("B").unwrap()));
        assert_eq!(cat.theory("IA1+AC01+BI1").unwrap().components(), cat.theory("B").unwrap().components());
    }

    #[test]
    fn unknown_parts_are_errors() {
        let cat = Catalog::standard();
        assert_eq!(cat.theory("HA").unwrap_err(), CatalogError::UnknownTheory("HA".into()));
        assert_eq!(cat.theory("IA1+XYZ").unwrap_err(), CatalogError::UnknownSchema("XYZ".into()));
        assert!(cat.theory("AC01").is_err());
    }

    #[test]
    fn translated_theories_are_negative() {
        let cat = Catalog::standard();
        for name in ["IA1", "IRA", "B", "C", "MRA"] {
            let t = cat.theory(name).unwrap();
            assert!(!t.is_negative(cat) || name == "IA1");
            let g = cat.translate_theory(&t, AtomPolicy::Identity);
            assert!(g.is_negative(cat), "{name}");
            assert!(g.has_schema("g(IND)"));
        }
    }

    #[test]
    fn translation_fixes_negative_axioms() {
        let cat = Catalog::standard();
        let ia1 = cat.theory("IA1").unwrap();
        let g = cat.translate_theory(&ia1, AtomPolicy::Identity);
        assert_eq!(g.axioms, ia1.axioms);
        assert_eq!(g.axioms[0], parse("A x. ~suc(x) = 0").unwrap());
    }

    #[test]
    fn extension_rows_and_additive_schemas() {
        let cat = Catalog::standard();
        let (row, _) = cat.minimum_extension(&cat.theory("IA1+AC01+BI1").unwrap()).unwrap();
        assert_eq!(row.row, "xi");
        let (row, ext) = cat.minimum_extension(&cat.theory("IRA+MP1").unwrap()).unwrap();
        assert_eq!(row.row, "ii");
        assert!(ext.has_schema("MP1") && ext.has_schema("S01-DNS0"));
        assert!(cat.minimum_extension(&cat.theory("IRA+CT1").unwrap()).is_err());
        assert!(cat.minimum_extension(&cat.theory("C").unwrap()).is_err());
    }
}
