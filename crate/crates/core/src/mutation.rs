//! Single-entry mutations of monoidal structure tables and of composition
//! tables, used to measure validator sensitivity.

use std::fmt;

use crate::error::Result;
use crate::fincat::{FinCategory, Mor, Obj};
use crate::moncat::{validate_monoidal, MonoidalStructure};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Table {
    TensorObjects,
    TensorMorphisms,
    Unit,
    Associator,
    LeftUnitor,
    RightUnitor,
    Braiding,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::TensorObjects => "tensor_objects",
            Table::TensorMorphisms => "tensor_morphisms",
            Table::Unit => "unit",
            Table::Associator => "associator",
            Table::LeftUnitor => "left_unitor",
            Table::RightUnitor => "right_unitor",
            Table::Braiding => "braiding",
        })
    }
}

/// Replace entry `index` of `table` by `value`, which differs from the
/// current entry and is a valid identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mutation {
    pub table: Table,
    pub index: usize,
    pub value: usize,
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] := {}", self.table, self.index, self.value)
    }
}

fn entries(m: &MonoidalStructure, table: Table) -> Vec<usize> {
    let objs = |v: &[Obj]| v.iter().map(|x| x.0).collect::<Vec<_>>();
    let mors = |v: &[Mor]| v.iter().map(|f| f.0).collect::<Vec<_>>();
    match table {
        Table::TensorObjects => objs(&m.tensor_obj),
        Table::TensorMorphisms => mors(&m.tensor_mor),
        Table::Unit => vec![m.unit.0],
        Table::Associator => mors(&m.assoc),
        Table::LeftUnitor => mors(&m.left_unitor),
        Table::RightUnitor => mors(&m.right_unitor),
        Table::Braiding => m.braiding.as_deref().map(mors).unwrap_or_default(),
    }
}

/// Every single-entry mutation of every structure table, in table order.
pub fn structure_mutations(m: &MonoidalStructure) -> Vec<Mutation> {
    let (n, k) = (m.cat().object_count(), m.cat().morphism_count());
    let tables = [
        Table::TensorObjects,
        Table::TensorMorphisms,
        Table::Unit,
        Table::Associator,
        Table::LeftUnitor,
        Table::RightUnitor,
        Table::Braiding,
    ];
    let mut out = Vec::new();
    for table in tables {
        let range = if matches!(table, Table::TensorObjects | Table::Unit) {
            n
        } else {
            k
        };
        for (index, current) in entries(m, table).into_iter().enumerate() {
            out.extend((0..range).filter(|&v| v != current).map(|value| Mutation {
                table,
                index,
                value,
            }));
        }
    }
    out
}

pub fn apply(m: &MonoidalStructure, mutation: &Mutation) -> MonoidalStructure {
    let mut out = m.clone();
    let (i, v) = (mutation.index, mutation.value);
    match mutation.table {
        Table::TensorObjects => out.tensor_obj[i] = Obj(v),
        Table::TensorMorphisms => out.tensor_mor[i] = Mor(v),
        Table::Unit => out.unit = Obj(v),
        Table::Associator => out.assoc[i] = Mor(v),
        Table::LeftUnitor => out.left_unitor[i] = Mor(v),
        Table::RightUnitor => out.right_unitor[i] = Mor(v),
        Table::Braiding => {
            out.braiding
                .as_mut()
                .expect("braiding mutations need a braiding")[i] = Mor(v)
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct SensitivityReport {
    pub name: String,
    pub mutations: usize,
    /// Mutations the validator accepted.
    pub silent: Vec<Mutation>,
}

impl SensitivityReport {
    pub fn flagged(&self) -> usize {
        self.mutations - self.silent.len()
    }

    /// At least `minimum` mutations exist and every one is flagged.
    pub fn passed(&self, minimum: usize) -> bool {
        self.mutations >= minimum && self.silent.is_empty()
    }
}

impl fmt::Display for SensitivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} single-entry mutations flagged",
            self.name,
            self.flagged(),
            self.mutations
        )?;
        for m in &self.silent {
            write!(f, "\n  accepted: {m}")?;
        }
        Ok(())
    }
}

/// Runs the validator on every structure mutation of `m`.
pub fn sensitivity(m: &MonoidalStructure) -> Result<SensitivityReport> {
    let mutations = structure_mutations(m);
    let verdicts = par::try_map(&mutations, |mu| {
        validate_monoidal(&apply(m, mu)).map(|r| r.is_valid())
    })?;
    let silent = mutations
        .iter()
        .zip(verdicts)
        .filter(|(_, valid)| *valid)
        .map(|(mu, _)| *mu)
        .collect();
    Ok(SensitivityReport {
        name: m.name().to_string(),
        mutations: mutations.len(),
        silent,
    })
}

/// Every reassignment of a defined composite `g ∘ f` to another morphism.
pub fn composition_mutations(c: &FinCategory) -> Vec<(Mor, Mor, Mor)> {
    c.composition_entries()
        .into_iter()
        .flat_map(|(g, f, h)| {
            c.morphisms()
                .filter(move |&k| k != h)
                .map(move |k| (g, f, k))
        })
        .collect()
}

pub fn apply_composition(c: &FinCategory, (g, f, h): (Mor, Mor, Mor)) -> FinCategory {
    let mut out = c.clone();
    out.set_composite(g, f, Some(h));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;
    use crate::models;
    use crate::report::Law;

    #[test]
    fn counts_match_table_sizes() {
        let m = models::i0(&models::cyclic_group(2));
        // 4 + 4 + 1 + 8 + 2 + 2 + 4 entries, one alternative each
        assert_eq!(structure_mutations(&m).len(), 25);
        assert!(structure_mutations(&models::terminal()).is_empty());
    }

    #[test]
    fn every_mutation_changes_exactly_one_entry() {
        let m = models::i1(&models::ml()).unwrap();
        for mu in structure_mutations(&m) {
            let out = apply(&m, &mu);
            assert_ne!(out, m);
            assert_eq!(entries(&out, mu.table)[mu.index], mu.value);
        }
    }

    #[test]
    fn identity_law_violation_on_i0_c2() {
        let c = models::i0(&models::cyclic_group(2)).base;
        let (a, b) = (c.identity(Obj(0)), c.identity(Obj(1)));
        let mutated = apply_composition(&c, (a, a, b));
        let report = validate_category(&mutated);
        assert!(
            report.has(Law::LeftIdentity) || report.has(Law::RightIdentity),
            "{report}"
        );
    }
}
