//! Torsion objects of symmetric 2-groups, the torsion part `T(G)`, the
//! torsion-free quotient `Φ(G)` and the torsion sequence with its π0 and π1
//! shadows.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Mor, Obj};
use crate::invariants::{
    compare_rows, group_torsion, group_torsion_free, k_indexed, pi0, pi0_map, pi1, pi1_map,
    FinMonoid, IsoReport, MonoidMap, Row,
};
use crate::moncat::{
    enumerate_monoidal_functors, require_valid_monoidal, substructure, MonoidalFunctor,
    MonoidalStructure,
};
use crate::nullhomotopy::{nullhomotopies, orthogonal};
use crate::report::{Law, ValidationReport};
use crate::search::Budget;
use crate::torsion::{
    canonical_sequence, class_quotient, verify_cokernel, verify_kernel, ProbeReport, ProbeSet,
    Purification,
};
use crate::twogroup::is_two_group;

/// `iso: X^⊗n -> I` with `X^⊗1 = X` and `X^⊗(k+1) = X ⊗ X^⊗k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionWitness {
    pub object: Obj,
    pub exponent: usize,
    pub iso: Mor,
}

fn require_symmetric_two_group(g: &MonoidalStructure) -> Result<()> {
    require_valid_monoidal(g)?;
    if !g.symmetric || !is_two_group(g).is_two_group {
        return Err(Error::contract(format!(
            "{} is not a symmetric 2-group",
            g.name()
        )));
    }
    Ok(())
}

/// Least common multiple of the element orders of `K(g)`.
fn exponent(g: &MonoidalStructure) -> Result<usize> {
    let (k, _) = k_indexed(g)?;
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    (0..k.len()).try_fold(1, |acc, x| {
        let n = k.order(x).ok_or_else(|| {
            Error::internal(format!("{} has an element of infinite order", k.name))
        })?;
        Ok(acc / gcd(acc, n) * n)
    })
}

/// The least `n` with `x^⊗n ≅ I`, searched up to the exponent of `K(g)`.
pub fn torsion_order(g: &MonoidalStructure, x: Obj) -> Result<Option<TorsionWitness>> {
    require_symmetric_two_group(g)?;
    let bound = exponent(g)?;
    let mut power = x;
    for n in 1..=bound {
        if let Some(&iso) = g.cat().isos(power, g.unit).first() {
            return Ok(Some(TorsionWitness {
                object: x,
                exponent: n,
                iso,
            }));
        }
        power = g.tensor(x, power);
    }
    // every element of a finite group has finite order dividing the exponent
    Err(Error::internal(format!(
        "{} has no torsion witness below {bound}",
        g.obj_name(x)
    )))
}

pub fn torsion_objects(g: &MonoidalStructure) -> Result<Vec<Obj>> {
    let mut out = Vec::new();
    for x in g.cat().objects() {
        if torsion_order(g, x)?.is_some() {
            out.push(x);
        }
    }
    Ok(out)
}

/// The full subcategory on torsion objects with its inclusion.
pub fn torsion_part(
    g: &Arc<MonoidalStructure>,
) -> Result<(Arc<MonoidalStructure>, MonoidalFunctor)> {
    let objects = torsion_objects(g)?;
    substructure(g, format!("T({})", g.name()), &objects, |_| true)
}

/// `Φ(G)` with `F_G: G -> Φ(G)`, the quotient by arrow classes labelled by
/// torsion objects. The result also carries `T(G)` and its inclusion.
pub fn phi(g: &Arc<MonoidalStructure>) -> Result<Purification> {
    let (t, inclusion) = torsion_part(g)?;
    class_quotient(g, t, inclusion, format!("Φ({})", g.name()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionFreeReport {
    pub torsion_free: bool,
    /// Torsion objects with their number of isomorphisms to the unit, when
    /// that number is not 1.
    pub witnesses: Vec<(Obj, usize)>,
}

pub fn is_torsion_free(g: &MonoidalStructure) -> Result<TorsionFreeReport> {
    let c = g.cat();
    let witnesses: Vec<(Obj, usize)> = torsion_objects(g)?
        .into_iter()
        .map(|x| (x, c.isos(x, g.unit).len()))
        .filter(|&(_, n)| n != 1)
        .collect();
    Ok(TorsionFreeReport {
        torsion_free: witnesses.is_empty(),
        witnesses,
    })
}

#[derive(Debug, Clone)]
pub struct TorsionSequenceReport {
    pub group: String,
    pub all_torsion: bool,
    pub phi_torsion_free: bool,
    pub congruence: ValidationReport,
    pub transfer: ValidationReport,
    /// `(T(h), Φ(g))` orthogonality over the probe corpus.
    pub orthogonality: Vec<(String, bool)>,
    pub unique_connecting: bool,
    pub kernel: ProbeReport,
    pub cokernel: ProbeReport,
    /// Strongness counts, reported but not part of the verdict.
    pub strong_kernel: ProbeReport,
    pub strong_cokernel: ProbeReport,
    pub pi0: IsoReport,
    pub pi1: IsoReport,
}

impl TorsionSequenceReport {
    pub fn passed(&self) -> bool {
        self.phi_torsion_free
            && self.congruence.is_valid()
            && self.transfer.is_valid()
            && self.orthogonality.iter().all(|(_, ok)| *ok)
            && self.unique_connecting
            && self.kernel.passed()
            && self.cokernel.passed()
            && self.pi0.passed()
            && self.pi1.passed()
    }
}

impl fmt::Display for TorsionSequenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "torsion sequence of {}", self.group)?;
        if self.all_torsion {
            writeln!(
                f,
                "  all objects torsion (finite model); Φ is equivalent to the terminal category"
            )?;
        }
        writeln!(f, "  Φ torsion-free: {}", self.phi_torsion_free)?;
        writeln!(
            f,
            "  class congruence: {}",
            if self.congruence.is_valid() {
                "holds"
            } else {
                "FAILED"
            }
        )?;
        writeln!(
            f,
            "  torsion transfer: {}",
            if self.transfer.is_valid() {
                "holds"
            } else {
                "FAILED"
            }
        )?;
        let orth = self.orthogonality.iter().filter(|(_, ok)| *ok).count();
        writeln!(
            f,
            "  orthogonality: {orth}/{} pairs",
            self.orthogonality.len()
        )?;
        writeln!(
            f,
            "  connecting nullhomotopy unique: {}",
            self.unique_connecting
        )?;
        writeln!(f, "  {}", self.kernel)?;
        writeln!(f, "  {}", self.cokernel)?;
        writeln!(f, "  informational {}", self.strong_kernel)?;
        writeln!(f, "  informational {}", self.strong_cokernel)?;
        write!(f, "{}{}", self.pi0, self.pi1)
    }
}

/// `π1(G) = π1(G) → 1`.
fn pi1_reference_row(g: &MonoidalStructure) -> Result<Row> {
    let p = pi1(g)?;
    let trivial = FinMonoid::trivial();
    let right = MonoidMap {
        domain: p.clone(),
        codomain: trivial,
        map: vec![0; p.len()],
    };
    Ok(Row {
        left: MonoidMap::identity(&p),
        right,
    })
}

/// Assembles `T(G) → G → Φ(G)` and runs every check against `corpus`,
/// which should consist of symmetric 2-groups.
pub fn torsion_sequence_report(
    g: &Arc<MonoidalStructure>,
    corpus: &[Arc<MonoidalStructure>],
    budget: &Budget,
) -> Result<TorsionSequenceReport> {
    require_symmetric_two_group(g)?;
    let q = phi(g)?;
    let all_torsion = q.sub.cat().object_count() == g.cat().object_count();
    let phi_torsion_free = is_torsion_free(&q.purified)?.torsion_free;

    let mut transfer = ValidationReport::default();
    for h in corpus {
        for f in enumerate_monoidal_functors(g, h, budget)? {
            for x in torsion_objects(g)? {
                if torsion_order(h, f.obj(x))?.is_none() {
                    transfer.push(
                        Law::TorsionTransfer,
                        format!("{} under a functor to {}", g.obj_name(x), h.name()),
                    );
                }
            }
        }
    }
    let mut orthogonality = Vec::new();
    for h in corpus {
        let (t, _) = torsion_part(h)?;
        let r = orthogonal(&t, &q.purified, budget)?;
        orthogonality.push((
            format!("{} ⊥ {}", t.name(), q.purified.name()),
            r.orthogonal(),
        ));
    }

    let seq = canonical_sequence(&q, budget)?;
    let unique_connecting = nullhomotopies(&seq.theta.functor, budget)?.len() == 1;
    let probes = ProbeSet::generate(&seq, corpus, budget)?;
    let kernel = verify_kernel(&seq, &probes, false, budget)?;
    let cokernel = verify_cokernel(&seq, &probes, false, budget)?;
    let mut strong_kernel = verify_kernel(
        &seq,
        &ProbeSet {
            strong_kernel: probes.strong_kernel.clone(),
            ..ProbeSet::default()
        },
        true,
        budget,
    )?;
    strong_kernel.title = format!("strongness of the {}", strong_kernel.title);
    let mut strong_cokernel = verify_cokernel(
        &seq,
        &ProbeSet {
            strong_cokernel: probes.strong_cokernel.clone(),
            ..ProbeSet::default()
        },
        true,
        budget,
    )?;
    strong_cokernel.title = format!("strongness of the {}", strong_cokernel.title);

    let a = pi0(g)?;
    let top = Row {
        left: pi0_map(&q.inclusion)?,
        right: pi0_map(&q.projection)?,
    };
    let bottom = Row {
        left: group_torsion(&a).1,
        right: group_torsion_free(&a).1,
    };
    let pi0_report = compare_rows(
        format!("π0 rows of {}", g.name()),
        top,
        bottom,
        MonoidMap::identity(&a),
    );
    let top = Row {
        left: pi1_map(&q.inclusion)?,
        right: pi1_map(&q.projection)?,
    };
    let pi1_report = compare_rows(
        format!("π1 rows of {}", g.name()),
        top,
        pi1_reference_row(g)?,
        MonoidMap::identity(&pi1(g)?),
    );

    Ok(TorsionSequenceReport {
        group: g.name().to_string(),
        all_torsion,
        phi_torsion_free,
        congruence: q.congruence_report(),
        transfer,
        orthogonality,
        unique_connecting,
        kernel,
        cokernel,
        strong_kernel,
        strong_cokernel,
        pi0: pi0_report,
        pi1: pi1_report,
    })
}

/// The symmetric 2-groups of the built-in corpus.
pub fn two_group_corpus() -> Vec<Arc<MonoidalStructure>> {
    crate::models::corpus()
        .into_iter()
        .filter(|m| m.symmetric && is_two_group(m).is_two_group)
        .map(Arc::new)
        .collect()
}
