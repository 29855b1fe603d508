//! Nullhomotopies: monoidal natural isomorphisms from a monoidal functor to
//! the constant functor at the unit of its codomain, and their composition
//! along functors.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{same, Mor, Obj};
use crate::moncat::{
    constant_unit_functor, enumerate_monoidal_functors, validate_monoidal_nat, MonoidalFunctor,
    MonoidalNatTransformation, MonoidalStructure,
};
use crate::par;
use crate::report::{Law, ValidationReport};
use crate::search::{Budget, Problem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nullhomotopy {
    pub functor: MonoidalFunctor,
    /// `φ_X: FX -> I_N`
    pub components: Vec<Mor>,
}

impl Nullhomotopy {
    pub fn component(&self, x: Obj) -> Mor {
        self.components[x.0]
    }

    /// Equal subject functors and component-wise equal.
    pub fn same_as(&self, other: &Nullhomotopy) -> bool {
        self.components == other.components && self.functor.same_as(&other.functor)
    }

    pub fn as_transformation(&self) -> MonoidalNatTransformation {
        MonoidalNatTransformation {
            source: self.functor.clone(),
            target: constant_unit_functor(&self.functor.domain, &self.functor.codomain),
            components: self.components.clone(),
        }
    }
}

impl fmt::Display for Nullhomotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d, c) = (&self.functor.domain, &self.functor.codomain);
        let parts: Vec<String> = d
            .cat()
            .objects()
            .map(|x| {
                format!(
                    "{} ↦ {}",
                    d.cat().object_name(x),
                    c.cat().morphism_name(self.component(x))
                )
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Components must be isomorphisms and form a monoidal natural
/// transformation to the constant-unit functor.
pub fn validate_nullhomotopy(theta: &Nullhomotopy) -> Result<ValidationReport> {
    let n = theta.functor.codomain.cat();
    let mut report = validate_monoidal_nat(&theta.as_transformation())?;
    for x in theta.functor.domain.cat().objects() {
        if !n.is_iso(theta.component(x)) {
            report.push(
                Law::ComponentTyping,
                format!(
                    "component at {} is not invertible",
                    theta.functor.domain.cat().object_name(x)
                ),
            );
        }
    }
    Ok(report)
}

/// Every element of Θ(F), ordered lexicographically by components.
pub fn nullhomotopies(f: &MonoidalFunctor, budget: &Budget) -> Result<Vec<Nullhomotopy>> {
    let (dm, cm) = (&*f.domain, &*f.codomain);
    let (a, b) = (dm.cat(), cm.cat());
    let unit = cm.unit;
    let domain = |var: usize, _: &[usize]| -> Vec<usize> {
        b.isos(f.obj(Obj(var)), unit)
            .into_iter()
            .map(|g| g.0)
            .collect()
    };
    let mut problem = Problem::new(a.object_count(), domain);
    let phi = |v: &[usize], x: Obj| Mor(v[x.0]);
    for g in a.morphisms() {
        let (x, y) = (a.source(g), a.target(g));
        let fg = f.mor(g);
        problem.check(x.0.max(y.0), move |v| {
            cm.path(&[fg, phi(v, y)]) == Some(phi(v, x))
        });
    }
    let l_unit = cm.left_unitor(unit);
    for x in a.objects() {
        for y in a.objects() {
            let xy = dm.tensor(x, y);
            let mxy = f.m(x, y);
            problem.check(x.0.max(y.0).max(xy.0), move |v| {
                cm.path(&[mxy, phi(v, xy)])
                    == cm.path(&[cm.tensor_mor(phi(v, x), phi(v, y)), l_unit])
            });
        }
    }
    let (e, i) = (f.e(), dm.unit);
    problem.check(i.0, move |v| cm.path(&[e, phi(v, i)]) == Some(cm.id(unit)));
    Ok(problem
        .solve(budget)?
        .into_iter()
        .map(|v| Nullhomotopy {
            functor: f.clone(),
            components: v.into_iter().map(Mor).collect(),
        })
        .collect())
}

/// `q • θ • p`, with components `e_Q⁻¹ ∘ Q(θ_{PX})`, a nullhomotopy on `Q∘F∘P`.
pub fn compose_nullhomotopy(
    p: &MonoidalFunctor,
    theta: &Nullhomotopy,
    q: &MonoidalFunctor,
) -> Result<Nullhomotopy> {
    let f = &theta.functor;
    if !same(&p.codomain, &f.domain) || !same(&f.codomain, &q.domain) {
        return Err(Error::contract(
            "nullhomotopy composition needs a composable chain",
        ));
    }
    let functor = p.then(f)?.then(q)?;
    let r = &*q.codomain;
    let e_inv = r
        .inv(q.e())
        .ok_or_else(|| Error::contract("unit comparison of the right functor is not invertible"))?;
    let components = p
        .domain
        .cat()
        .objects()
        .map(|x| {
            r.path(&[q.mor(theta.component(p.obj(x))), e_inv])
                .ok_or_else(|| Error::internal("component is not composable"))
        })
        .collect::<Result<_>>()?;
    Ok(Nullhomotopy {
        functor,
        components,
    })
}

/// `θ • q`: pad on the left with an identity.
pub fn postcompose(theta: &Nullhomotopy, q: &MonoidalFunctor) -> Result<Nullhomotopy> {
    compose_nullhomotopy(&MonoidalFunctor::identity(&theta.functor.domain), theta, q)
}

/// `p • θ`: pad on the right with an identity.
pub fn precompose(p: &MonoidalFunctor, theta: &Nullhomotopy) -> Result<Nullhomotopy> {
    compose_nullhomotopy(
        p,
        theta,
        &MonoidalFunctor::identity(&theta.functor.codomain),
    )
}

pub fn is_theta_trivial(f: &MonoidalFunctor, budget: &Budget) -> Result<bool> {
    Ok(!nullhomotopies(f, budget)?.is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub domain: String,
    pub codomain: String,
    /// `|Θ(F)|` for every monoidal functor `F`, in enumeration order.
    pub counts: Vec<usize>,
}

impl OrthogonalityReport {
    pub fn orthogonal(&self) -> bool {
        self.counts.iter().all(|&c| c == 1)
    }
}

impl fmt::Display for OrthogonalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ⊥ {}: {} ({} functors, nullhomotopy counts {:?})",
            self.domain,
            self.codomain,
            self.orthogonal(),
            self.counts.len(),
            self.counts
        )
    }
}

/// Counts nullhomotopies on every (symmetric) monoidal functor `m -> n`.
pub fn orthogonal(
    m: &Arc<MonoidalStructure>,
    n: &Arc<MonoidalStructure>,
    budget: &Budget,
) -> Result<OrthogonalityReport> {
    let functors = enumerate_monoidal_functors(m, n, budget)?;
    let counts = par::try_map(&functors, |f| nullhomotopies(f, budget).map(|t| t.len()))?;
    Ok(OrthogonalityReport {
        domain: m.name().to_string(),
        codomain: n.name().to_string(),
        counts,
    })
}

/// A composable chain `p2 ; p ; θ ; q ; q2`, applied left to right.
#[derive(Debug, Clone)]
pub struct Chain {
    pub p2: MonoidalFunctor,
    pub p: MonoidalFunctor,
    pub theta: Nullhomotopy,
    pub q: MonoidalFunctor,
    pub q2: MonoidalFunctor,
}

/// Checks identity padding and associativity of nullhomotopy composition
/// exactly on every chain.
pub fn check_structure_axioms(chains: &[Chain]) -> Result<ValidationReport> {
    let reports = par::try_map(chains, |c| -> Result<ValidationReport> {
        let mut report = ValidationReport::default();
        let f = &c.theta.functor;
        let padded = compose_nullhomotopy(
            &MonoidalFunctor::identity(&f.domain),
            &c.theta,
            &MonoidalFunctor::identity(&f.codomain),
        )?;
        if !padded.same_as(&c.theta) {
            report.push(
                Law::NullhomotopyIdentity,
                format!("{} -> {}", f.domain.name(), f.codomain.name()),
            );
        }
        let one_shot = compose_nullhomotopy(&c.p2.then(&c.p)?, &c.theta, &c.q.then(&c.q2)?)?;
        let nested =
            compose_nullhomotopy(&c.p2, &compose_nullhomotopy(&c.p, &c.theta, &c.q)?, &c.q2)?;
        if !one_shot.same_as(&nested) {
            report.push(
                Law::NullhomotopyAssociativity,
                format!(
                    "{} -> {} -> {} -> {} -> {} -> {}",
                    c.p2.domain.name(),
                    c.p.domain.name(),
                    f.domain.name(),
                    f.codomain.name(),
                    c.q.codomain.name(),
                    c.q2.codomain.name()
                ),
            );
        }
        Ok(report)
    })?;
    let mut report = ValidationReport::default();
    for r in reports {
        report.merge(r);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::moncat::validate_monoidal_functor;
    use crate::twogroup::{is_pure, is_two_group};

    fn budget() -> Budget {
        Budget::default()
    }

    /// Independent oracle: every assignment of isomorphisms, filtered by
    /// the validator.
    fn brute_force(f: &MonoidalFunctor) -> Vec<Vec<Mor>> {
        let (a, cm) = (f.domain.cat(), &*f.codomain);
        let mut out = vec![Vec::new()];
        for x in a.objects() {
            let choices = cm.cat().hom(f.obj(x), cm.unit).to_vec();
            out = out
                .into_iter()
                .flat_map(|p: Vec<Mor>| choices.iter().map(move |&g| [p.clone(), vec![g]].concat()))
                .collect();
        }
        out.into_iter()
            .filter(|c| {
                let t = Nullhomotopy {
                    functor: f.clone(),
                    components: c.clone(),
                };
                validate_nullhomotopy(&t).unwrap().is_valid()
            })
            .collect()
    }

    #[test]
    fn enumeration_matches_oracle() {
        let corpus: Vec<_> = models::corpus().into_iter().map(Arc::new).collect();
        for m in &corpus {
            for n in &corpus {
                for f in enumerate_monoidal_functors(m, n, &budget()).unwrap() {
                    let found: Vec<Vec<Mor>> = nullhomotopies(&f, &budget())
                        .unwrap()
                        .into_iter()
                        .map(|t| t.components)
                        .collect();
                    assert_eq!(found, brute_force(&f), "{} -> {}", m.name(), n.name());
                }
            }
        }
    }

    #[test]
    fn identity_on_i1_c2_is_not_trivial() {
        let g = Arc::new(models::i1(&models::cyclic_group(2)).unwrap());
        assert!(nullhomotopies(&MonoidalFunctor::identity(&g), &budget())
            .unwrap()
            .is_empty());
        assert!(!orthogonal(&g, &g, &budget()).unwrap().orthogonal());
    }

    #[test]
    fn constant_functor_is_trivial() {
        let corpus: Vec<_> = models::corpus().into_iter().map(Arc::new).collect();
        for m in &corpus {
            for n in &corpus {
                let k = constant_unit_functor(m, n);
                let all = nullhomotopies(&k, &budget()).unwrap();
                assert!(all
                    .iter()
                    .any(|t| t.components.iter().all(|&g| n.cat().is_identity(g))));
                if is_pure(n).unwrap().pure {
                    assert_eq!(all.len(), 1);
                }
            }
        }
    }

    #[test]
    fn indiscrete_identity_is_trivial() {
        let r = Arc::new(models::indiscrete_of(&models::i0(&models::cyclic_group(2))));
        assert!(is_theta_trivial(&MonoidalFunctor::identity(&r), &budget()).unwrap());
    }

    #[test]
    fn two_groups_are_orthogonal_to_pure_categories() {
        let corpus: Vec<_> = models::corpus().into_iter().map(Arc::new).collect();
        for m in corpus.iter().filter(|m| is_two_group(m).is_two_group) {
            for n in corpus.iter().filter(|n| is_pure(n).unwrap().pure) {
                let r = orthogonal(m, n, &budget()).unwrap();
                assert!(r.orthogonal(), "{r}");
            }
        }
    }

    #[test]
    fn composition_pads_and_validates() {
        let m = Arc::new(models::i0(&models::ml()));
        let n = Arc::new(models::poset2());
        let f = enumerate_monoidal_functors(&m, &n, &budget()).unwrap();
        let mut checked = 0;
        for f in &f {
            for theta in nullhomotopies(f, &budget()).unwrap() {
                let p = MonoidalFunctor::identity(&m);
                let q = MonoidalFunctor::identity(&n);
                assert!(compose_nullhomotopy(&p, &theta, &q)
                    .unwrap()
                    .same_as(&theta));
                let t = Arc::new(models::terminal());
                let to_t = constant_unit_functor(&n, &t);
                let c = postcompose(&theta, &to_t).unwrap();
                assert!(validate_monoidal_functor(&c.functor).unwrap().is_valid());
                assert!(validate_nullhomotopy(&c).unwrap().is_valid());
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn mismatched_chain_is_a_contract_error() {
        let m = Arc::new(models::i0(&models::cyclic_group(2)));
        let n = Arc::new(models::poset2());
        let k = constant_unit_functor(&m, &n);
        let theta = nullhomotopies(&k, &budget()).unwrap().remove(0);
        let wrong = MonoidalFunctor::identity(&n);
        assert!(matches!(
            compose_nullhomotopy(&wrong, &theta, &wrong),
            Err(Error::Contract(_))
        ));
    }
}
