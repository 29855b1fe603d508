//! Weak invertibility, 2-groups, the Picard 2-group, adjoint equivalences
//! and purity.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{is_groupoid, Mor, Obj};
use crate::moncat::{lift_through, substructure, MonoidalFunctor, MonoidalStructure};

/// `h: I -> A ⊗ B` and `k: B ⊗ A -> I`, both isomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvertibilityWitness {
    pub a: Obj,
    pub b: Obj,
    pub h: Mor,
    pub k: Mor,
}

/// An invertibility witness whose two zigzag composites are identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjointEquivalence {
    pub a: Obj,
    pub b: Obj,
    pub h: Mor,
    pub k: Mor,
}

/// The first weak inverse in object order, with the first isomorphisms in
/// morphism order.
pub fn weakly_invertible(m: &MonoidalStructure, x: Obj) -> Option<InvertibilityWitness> {
    let c = m.cat();
    c.objects().find_map(|b| {
        let h = *c.isos(m.unit, m.tensor(x, b)).first()?;
        let k = *c.isos(m.tensor(b, x), m.unit).first()?;
        Some(InvertibilityWitness { a: x, b, h, k })
    })
}

pub fn weakly_invertible_objects(m: &MonoidalStructure) -> Vec<Obj> {
    m.cat()
        .objects()
        .filter(|&x| weakly_invertible(m, x).is_some())
        .collect()
}

/// The subcategory of weakly invertible objects and isomorphisms between
/// them, with its strict inclusion.
pub fn pic(m: &Arc<MonoidalStructure>) -> Result<(Arc<MonoidalStructure>, MonoidalFunctor)> {
    let objects = weakly_invertible_objects(m);
    let c = m.cat();
    substructure(m, format!("Pic({})", m.name()), &objects, |f| c.is_iso(f))
}

/// Lifts a functor whose image consists of weakly invertible objects and
/// isomorphisms through the inclusion of the Picard 2-group.
pub fn factor_through_pic(
    f: &MonoidalFunctor,
    inclusion: &MonoidalFunctor,
) -> Option<MonoidalFunctor> {
    lift_through(f, inclusion)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoGroupReport {
    pub is_two_group: bool,
    pub non_invertible_morphisms: Vec<Mor>,
    pub non_invertible_objects: Vec<Obj>,
}

pub fn is_two_group(m: &MonoidalStructure) -> TwoGroupReport {
    let (groupoid, non_invertible_morphisms) = is_groupoid(m.cat());
    let non_invertible_objects: Vec<Obj> = m
        .cat()
        .objects()
        .filter(|&x| weakly_invertible(m, x).is_none())
        .collect();
    TwoGroupReport {
        is_two_group: groupoid && non_invertible_objects.is_empty(),
        non_invertible_morphisms,
        non_invertible_objects,
    }
}

/// `A → I⊗A → (A⊗B)⊗A → A⊗(B⊗A) → A⊗I → A`
pub fn first_zigzag(m: &MonoidalStructure, a: Obj, b: Obj, h: Mor, k: Mor) -> Option<Mor> {
    m.path(&[
        m.inv(m.left_unitor(a))?,
        m.whisker_right(h, a),
        m.assoc(a, b, a),
        m.whisker_left(a, k),
        m.right_unitor(a),
    ])
}

/// `B → B⊗I → B⊗(A⊗B) → (B⊗A)⊗B → I⊗B → B`
pub fn second_zigzag(m: &MonoidalStructure, a: Obj, b: Obj, h: Mor, k: Mor) -> Option<Mor> {
    m.path(&[
        m.inv(m.right_unitor(b))?,
        m.whisker_left(b, h),
        m.inv(m.assoc(b, a, b))?,
        m.whisker_right(k, b),
        m.left_unitor(b),
    ])
}

/// Replaces `k0` by `k0 ∘ (B ⊗ θ⁻¹)` where `θ` is the first zigzag of the
/// input, then checks both zigzags.
pub fn adjoint_equivalence(
    m: &MonoidalStructure,
    a: Obj,
    b: Obj,
    h0: Mor,
    k0: Mor,
) -> Result<AdjointEquivalence> {
    let c = m.cat();
    let typed = c.source(h0) == m.unit
        && c.target(h0) == m.tensor(a, b)
        && c.source(k0) == m.tensor(b, a)
        && c.target(k0) == m.unit;
    if !typed || !c.is_iso(h0) || !c.is_iso(k0) {
        return Err(Error::contract(
            "(a, b, h, k) is not an invertibility witness",
        ));
    }
    let theta = first_zigzag(m, a, b, h0, k0)
        .ok_or_else(|| Error::internal("first zigzag is not composable"))?;
    let theta_inv = m
        .inv(theta)
        .ok_or_else(|| Error::contract("first zigzag is not invertible"))?;
    let k = m
        .path(&[m.whisker_left(b, theta_inv), k0])
        .ok_or_else(|| Error::internal("corrected k is not composable"))?;
    let id = |x| Some(m.id(x));
    if first_zigzag(m, a, b, h0, k) != id(a) || second_zigzag(m, a, b, h0, k) != id(b) {
        return Err(Error::internal(format!(
            "zigzags of {} could not both be made identities",
            m.obj_name(a)
        )));
    }
    Ok(AdjointEquivalence { a, b, h: h0, k })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityReport {
    pub pure: bool,
    pub weakly_invertible: Vec<Obj>,
    /// Pairs of weakly invertible objects without exactly one isomorphism,
    /// with the number found.
    pub failures: Vec<(Obj, Obj, usize)>,
}

impl fmt::Display for PurityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pure: {} ({} weakly invertible objects",
            self.pure,
            self.weakly_invertible.len()
        )?;
        if !self.failures.is_empty() {
            write!(
                f,
                ", {} pairs without a unique isomorphism",
                self.failures.len()
            )?;
        }
        write!(f, ")")
    }
}

/// Decides purity by exactly one isomorphism between every pair of weakly
/// invertible objects, and cross-checks against: every weakly invertible
/// object is isomorphic to the unit, whose only automorphism is the identity.
pub fn is_pure(m: &MonoidalStructure) -> Result<PurityReport> {
    let c = m.cat();
    let w = weakly_invertible_objects(m);
    let mut failures = Vec::new();
    for &x in &w {
        for &y in &w {
            let count = c.isos(x, y).len();
            if count != 1 {
                failures.push((x, y, count));
            }
        }
    }
    let unique_pairs = failures.is_empty();
    let unit_form = w.iter().all(|&x| !c.isos(x, m.unit).is_empty())
        && c.isos(m.unit, m.unit) == vec![m.id(m.unit)];
    if unique_pairs != unit_form {
        return Err(Error::internal(format!(
            "purity characterisations disagree on {}",
            m.name()
        )));
    }
    Ok(PurityReport {
        pure: unique_pairs,
        weakly_invertible: w,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_functor;
    use crate::models;
    use crate::moncat::{
        enumerate_monoidal_functors, validate_monoidal, validate_monoidal_functor,
    };
    use crate::search::Budget;

    fn obj(m: &MonoidalStructure, name: &str) -> Obj {
        m.cat().find_object(name).unwrap()
    }

    #[test]
    fn weak_inverses() {
        let ml = models::i0(&models::ml());
        let u = weakly_invertible(&ml, ml.unit).unwrap();
        assert_eq!(u.b, ml.unit);
        let w = weakly_invertible(&ml, obj(&ml, "(-1,1)")).unwrap();
        assert_eq!(w.b, obj(&ml, "(-1,1)"));
        assert!(weakly_invertible(&ml, obj(&ml, "(1,z)")).is_none());
    }

    #[test]
    fn two_group_recognition() {
        let c2 = models::cyclic_group(2);
        assert!(is_two_group(&models::i0(&c2)).is_two_group);
        assert!(is_two_group(&models::i1(&c2).unwrap()).is_two_group);
        let ml = models::i0(&models::ml());
        let r = is_two_group(&ml);
        assert!(!r.is_two_group);
        assert!(r.non_invertible_objects.contains(&obj(&ml, "(1,z)")));
        assert!(!is_two_group(&models::i1(&models::l()).unwrap()).is_two_group);
    }

    #[test]
    fn picard_two_groups() {
        for m in models::corpus() {
            let m = Arc::new(m);
            let (p, j) = pic(&m).unwrap();
            assert!(validate_monoidal(&p).unwrap().is_valid(), "{}", p.name());
            assert!(is_two_group(&p).is_two_group, "{}", p.name());
            assert!(validate_monoidal_functor(&j).unwrap().is_valid());
            // injective on objects and morphisms
            let mut objs = j.object_map.clone();
            objs.dedup();
            assert_eq!(objs.len(), j.object_map.len());
        }
        let ml = Arc::new(models::i0(&models::ml()));
        let (p, _) = pic(&ml).unwrap();
        let c2 = models::i0(&models::cyclic_group(2));
        assert_eq!(p.cat().object_count(), 2);
        assert_eq!(
            crate::invariants::k(&p).unwrap().table,
            crate::invariants::k(&c2).unwrap().table
        );
        let (p, _) = pic(&Arc::new(models::poset2())).unwrap();
        assert_eq!((p.cat().object_count(), p.cat().morphism_count()), (1, 1));
        let g = Arc::new(models::i1(&models::cyclic_group(2)).unwrap());
        let (p, _) = pic(&g).unwrap();
        assert_eq!((p.cat().object_count(), p.cat().morphism_count()), (1, 2));
        assert_eq!(p.tensor_mor, g.tensor_mor);
        assert_eq!(p.cat().composition_entries(), g.cat().composition_entries());
    }

    #[test]
    fn coreflection_factorisation() {
        for target in models::corpus() {
            let target = Arc::new(target);
            let (_, j) = pic(&target).unwrap();
            for source in models::corpus() {
                let source = Arc::new(source);
                for f in enumerate_monoidal_functors(&source, &target, &Budget::default()).unwrap()
                {
                    let c = target.cat();
                    let lands = f
                        .object_map
                        .iter()
                        .all(|&x| weakly_invertible(&target, x).is_some())
                        && f.morphism_map.iter().all(|&g| c.is_iso(g));
                    let lifted = factor_through_pic(&f, &j);
                    assert_eq!(
                        lands,
                        lifted.is_some(),
                        "{} -> {}",
                        source.name(),
                        target.name()
                    );
                    if let Some(g) = lifted {
                        assert!(validate_functor(&g.underlying()).is_valid());
                        assert!(g.then(&j).unwrap().same_as(&f));
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_equivalences() {
        let g = models::i1(&models::cyclic_group(2)).unwrap();
        let star = Obj(0);
        let (one, minus) = (
            g.cat().find_morphism("1").unwrap(),
            g.cat().find_morphism("-1").unwrap(),
        );
        // brute-force oracle over both candidate k
        for h0 in [one, minus] {
            for k0 in [one, minus] {
                let adj = adjoint_equivalence(&g, star, star, h0, k0).unwrap();
                let good: Vec<Mor> = [one, minus]
                    .into_iter()
                    .filter(|&k| {
                        first_zigzag(&g, star, star, h0, k) == Some(one)
                            && second_zigzag(&g, star, star, h0, k) == Some(one)
                    })
                    .collect();
                assert_eq!(good, vec![adj.k]);
            }
        }
        let adj = adjoint_equivalence(&g, star, star, minus, minus).unwrap();
        assert_eq!(adj.k, minus);
        let d = models::i0(&models::cyclic_group(2));
        let x = obj(&d, "-1");
        let id = d.id(d.unit);
        assert_eq!(
            adjoint_equivalence(&d, x, x, id, id).unwrap(),
            AdjointEquivalence {
                a: x,
                b: x,
                h: id,
                k: id
            }
        );
        for m in models::corpus() {
            for x in m.cat().objects() {
                if let Some(w) = weakly_invertible(&m, x) {
                    if is_two_group(&m).is_two_group {
                        adjoint_equivalence(&m, w.a, w.b, w.h, w.k).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn purity() {
        assert!(is_pure(&models::poset2()).unwrap().pure);
        assert!(!is_pure(&models::i0(&models::cyclic_group(2))).unwrap().pure);
        assert!(is_pure(&models::terminal()).unwrap().pure);
        assert!(is_pure(&models::i1(&models::l()).unwrap()).unwrap().pure);
        for m in models::corpus() {
            is_pure(&m).unwrap();
        }
    }
}
