//! The purification quotient, the canonical sequence `Pic(M) → M → P(M)`,
//! probe-based verification of homotopy kernels and cokernels, and the
//! kernel and cokernel of an identity functor.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{same, FinCategory, Mor, Obj, UnionFind};
use crate::models;
use crate::moncat::{
    distinct_underlying, enumerate_monoidal_functors, require_valid_monoidal, validate_monoidal,
    validate_monoidal_functor, MonoidalFunctor, MonoidalStructure,
};
use crate::nullhomotopy::{
    nullhomotopies, postcompose, precompose, validate_nullhomotopy, Nullhomotopy,
};
use crate::par;
use crate::report::{Law, ValidationReport};
use crate::search::Budget;
use crate::twogroup::{pic, weakly_invertible};

/// A class `[A, f]` of pairs with `f: X -> Y ⊗ A`, listed with every
/// member. The least member is the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowClass {
    pub source: Obj,
    pub target: Obj,
    pub members: Vec<(Obj, Mor)>,
}

impl ArrowClass {
    pub fn representative(&self) -> (Obj, Mor) {
        self.members[0]
    }
}

/// The quotient of a symmetric monoidal category by a monoidal
/// subgroupoid of weakly invertible objects, with the subgroupoid, its
/// inclusion and the projection onto the quotient.
#[derive(Debug, Clone)]
pub struct Purification {
    pub original: Arc<MonoidalStructure>,
    pub sub: Arc<MonoidalStructure>,
    pub inclusion: MonoidalFunctor,
    pub purified: Arc<MonoidalStructure>,
    pub projection: MonoidalFunctor,
    /// Indexed by the morphisms of `purified`.
    pub classes: Vec<ArrowClass>,
    lookup: HashMap<(Obj, Obj, Mor), Mor>,
}

impl Purification {
    /// The class of `(a, f)` with `f: X -> y ⊗ a`.
    pub fn classify(&self, y: Obj, a: Obj, f: Mor) -> Option<Mor> {
        self.lookup.get(&(y, a, f)).copied()
    }

    /// Objects of the original category admitted as class labels.
    pub fn admissible(&self) -> &[Obj] {
        &self.inclusion.object_map
    }

    /// `[A, ℓ_A⁻¹]: A -> I` for an object `A` of the original category.
    pub fn mu_at(&self, a: Obj) -> Option<Mor> {
        let m = &*self.original;
        self.classify(m.unit, a, m.inv(m.left_unitor(a))?)
    }

    /// The connecting nullhomotopy on `projection ∘ inclusion`.
    pub fn mu(&self) -> Result<Nullhomotopy> {
        let components = self
            .admissible()
            .iter()
            .map(|&a| {
                self.mu_at(a)
                    .ok_or_else(|| Error::internal("left unitor has no class"))
            })
            .collect::<Result<_>>()?;
        Ok(Nullhomotopy {
            functor: self.inclusion.then(&self.projection)?,
            components,
        })
    }

    /// Every composite and tensor computed from every choice of members
    /// lands in the class recorded in the tables.
    pub fn congruence_report(&self) -> ValidationReport {
        let m = &*self.original;
        let p = self.purified.cat();
        let mut report = ValidationReport::default();
        for (gi, g) in self.classes.iter().enumerate() {
            for (fi, f) in self.classes.iter().enumerate() {
                let (gm, fm) = (Mor(gi), Mor(fi));
                if f.target == g.source {
                    let want = p.compose(gm, fm);
                    for &(a, fr) in &f.members {
                        for &(b, gr) in &g.members {
                            if Some(compose_pairs(m, g.target, (a, fr), (b, gr)))
                                .and_then(|(y, c, h)| self.classify(y, c, h))
                                != want
                            {
                                report.push(
                                    Law::ClassCongruence,
                                    format!(
                                        "composite {} ∘ {}",
                                        p.morphism_name(gm),
                                        p.morphism_name(fm)
                                    ),
                                );
                            }
                        }
                    }
                }
                let want = self.purified.tensor_mor(fm, gm);
                for &(a, fr) in &f.members {
                    for &(b, gr) in &g.members {
                        let got = tensor_pairs(m, (f.target, a, fr), (g.target, b, gr))
                            .and_then(|(y, c, h)| self.classify(y, c, h));
                        if got != Some(want) {
                            report.push(
                                Law::ClassCongruence,
                                format!("tensor {} ⊗ {}", p.morphism_name(fm), p.morphism_name(gm)),
                            );
                        }
                    }
                }
            }
        }
        report
    }
}

/// `(B ⊗ A, a_{Z,B,A} ∘ (g ⊗ A) ∘ f)` for `f: X -> Y ⊗ A`, `g: Y -> Z ⊗ B`.
fn compose_pairs(
    m: &MonoidalStructure,
    z: Obj,
    (a, f): (Obj, Mor),
    (b, g): (Obj, Mor),
) -> (Obj, Obj, Mor) {
    let h = m
        .path(&[f, m.whisker_right(g, a), m.assoc(z, b, a)])
        .expect("arrow pairs compose");
    (z, m.tensor(b, a), h)
}

/// `f ⊗ f'` followed by the interchange `(Y⊗A)⊗(Y'⊗A') -> (Y⊗Y')⊗(A⊗A')`
/// built from associators and `b_{A,Y'}`.
fn tensor_pairs(
    m: &MonoidalStructure,
    (y, a, f): (Obj, Obj, Mor),
    (y2, a2, f2): (Obj, Obj, Mor),
) -> Option<(Obj, Obj, Mor)> {
    let t = |x, z| m.tensor(x, z);
    let path = [
        m.tensor_mor(f, f2),
        m.assoc(y, a, t(y2, a2)),
        m.whisker_left(y, m.inv(m.assoc(a, y2, a2))?),
        m.whisker_left(y, m.whisker_right(m.braid(a, y2)?, a2)),
        m.whisker_left(y, m.assoc(y2, a, a2)),
        m.inv(m.assoc(y, y2, t(a, a2)))?,
    ];
    Some((t(y, y2), t(a, a2), m.path(&path)?))
}

/// Builds the quotient whose arrows `X -> Y` are classes `[A, f]` with `A`
/// in the image of `inclusion` and `f: X -> Y ⊗ A`, where `(A, f) ~ (A', f')`
/// iff `f' = (Y ⊗ α) ∘ f` for an isomorphism `α: A -> A'`.
pub(crate) fn class_quotient(
    m: &Arc<MonoidalStructure>,
    sub: Arc<MonoidalStructure>,
    inclusion: MonoidalFunctor,
    name: String,
) -> Result<Purification> {
    require_valid_monoidal(m)?;
    if m.braiding.is_none() {
        return Err(Error::contract(format!(
            "{} has no braiding; the tensor of arrow classes needs one",
            m.name()
        )));
    }
    let c = m.cat();
    let admissible: Vec<Obj> = inclusion.object_map.clone();

    let mut classes: Vec<ArrowClass> = Vec::new();
    let mut lookup = HashMap::new();
    for x in c.objects() {
        for y in c.objects() {
            let members: Vec<(Obj, Mor)> = admissible
                .iter()
                .flat_map(|&a| c.hom(x, m.tensor(y, a)).iter().map(move |&f| (a, f)))
                .collect();
            let index: HashMap<(Obj, Mor), usize> =
                members.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let mut uf = UnionFind::new(members.len());
            for (i, &(a, f)) in members.iter().enumerate() {
                for &a2 in &admissible {
                    for alpha in c.isos(a, a2) {
                        let g = m
                            .path(&[f, m.whisker_left(y, alpha)])
                            .expect("whiskered iso composes");
                        uf.union(i, index[&(a2, g)]);
                    }
                }
            }
            let mut blocks: Vec<Vec<(Obj, Mor)>> = uf
                .blocks()
                .into_iter()
                .map(|b| {
                    b.into_iter()
                        .map(|i| members[i])
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect()
                })
                .collect();
            blocks.sort();
            for block in blocks {
                let id = Mor(classes.len());
                for &(a, f) in &block {
                    lookup.insert((y, a, f), id);
                }
                classes.push(ArrowClass {
                    source: x,
                    target: y,
                    members: block,
                });
            }
        }
    }
    let classify = |y: Obj, a: Obj, f: Mor| -> Result<Mor> {
        lookup.get(&(y, a, f)).copied().ok_or_else(|| {
            Error::internal(format!(
                "no class for ({}, {})",
                c.object_name(a),
                c.morphism_name(f)
            ))
        })
    };

    let mut seen = BTreeSet::new();
    let morphisms: Vec<(String, Obj, Obj)> = classes
        .iter()
        .map(|k| {
            let (a, f) = k.representative();
            let mut label = format!("[{}, {}]", c.object_name(a), c.morphism_name(f));
            if !seen.insert(label.clone()) {
                label = format!(
                    "{label}: {} -> {}",
                    c.object_name(k.source),
                    c.object_name(k.target)
                );
            }
            (label, k.source, k.target)
        })
        .collect();
    let identity = c
        .objects()
        .map(|x| classify(x, m.unit, m.inv(m.right_unitor(x)).expect("unitors invert")))
        .collect::<Result<Vec<_>>>()?;
    let mut compose = Vec::new();
    for (gi, g) in classes.iter().enumerate() {
        for (fi, f) in classes.iter().enumerate() {
            if f.target == g.source {
                let (y, a, h) = compose_pairs(m, g.target, f.representative(), g.representative());
                compose.push((Mor(gi), Mor(fi), classify(y, a, h)?));
            }
        }
    }
    let base = Arc::new(FinCategory::new(
        name,
        c.object_names().to_vec(),
        morphisms,
        identity,
        compose,
    )?);

    let project = |f: Mor| {
        classify(
            c.target(f),
            m.unit,
            m.path(&[
                f,
                m.inv(m.right_unitor(c.target(f))).expect("unitors invert"),
            ])
            .expect("typed"),
        )
    };
    let morphism_map = c.morphisms().map(project).collect::<Result<Vec<_>>>()?;
    let pm = |f: Mor| morphism_map[f.0];

    let mut tensor_mor = Vec::with_capacity(classes.len() * classes.len());
    for f in &classes {
        for g in &classes {
            let (a, fr) = f.representative();
            let (b, gr) = g.representative();
            let (y, ab, h) = tensor_pairs(m, (f.target, a, fr), (g.target, b, gr))
                .ok_or_else(|| Error::internal("interchange does not compose"))?;
            tensor_mor.push(classify(y, ab, h)?);
        }
    }
    let n = c.object_count();
    let purified = Arc::new(MonoidalStructure {
        base,
        tensor_obj: m.tensor_obj.clone(),
        tensor_mor,
        unit: m.unit,
        assoc: m.assoc.iter().map(|&f| pm(f)).collect(),
        left_unitor: m.left_unitor.iter().map(|&f| pm(f)).collect(),
        right_unitor: m.right_unitor.iter().map(|&f| pm(f)).collect(),
        braiding: m
            .braiding
            .as_ref()
            .map(|b| b.iter().map(|&f| pm(f)).collect()),
        symmetric: m.symmetric,
    });
    let projection = MonoidalFunctor {
        domain: m.clone(),
        codomain: purified.clone(),
        object_map: c.objects().collect(),
        morphism_map: morphism_map.clone(),
        unit_comparison: purified.id(m.unit),
        tensor_comparison: (0..n * n)
            .map(|i| purified.id(m.tensor(Obj(i / n), Obj(i % n))))
            .collect(),
    };

    let report = validate_monoidal(&purified)?;
    if !report.is_valid() {
        return Err(Error::internal(format!(
            "{} is not monoidal: {report}",
            purified.name()
        )));
    }
    let report = validate_monoidal_functor(&projection)?;
    if !report.is_valid() {
        return Err(Error::internal(format!(
            "projection onto {} is not monoidal: {report}",
            purified.name()
        )));
    }
    Ok(Purification {
        original: m.clone(),
        sub,
        inclusion,
        purified,
        projection,
        classes,
        lookup,
    })
}

/// `P(M)` with `p_M: M -> P(M)` and the Picard inclusion.
pub fn purify(m: &Arc<MonoidalStructure>) -> Result<Purification> {
    let (p, j) = pic(m)?;
    class_quotient(m, p, j, format!("P({})", m.name()))
}

/// Whether `(a, f)` and `(b, g)`, both arrows `X -> Y ⊗ _`, are related by
/// an isomorphism `α: a -> b` with `g = (Y ⊗ α) ∘ f`.
pub fn arrow_class_eq(
    m: &MonoidalStructure,
    y: Obj,
    (a, f): (Obj, Mor),
    (b, g): (Obj, Mor),
) -> Result<bool> {
    let c = m.cat();
    if c.source(f) != c.source(g) || c.target(f) != m.tensor(y, a) || c.target(g) != m.tensor(y, b)
    {
        return Err(Error::contract("arrow pairs must share source and target"));
    }
    if weakly_invertible(m, a).is_none() || weakly_invertible(m, b).is_none() {
        return Err(Error::contract(
            "arrow class labels must be weakly invertible",
        ));
    }
    Ok(c.isos(a, b)
        .into_iter()
        .any(|alpha| m.path(&[f, m.whisker_left(y, alpha)]) == Some(g)))
}

/// A class is invertible iff its representative is, and `p_M` reflects
/// isomorphisms.
pub fn lemma35_check(q: &Purification) -> ValidationReport {
    let (m, p) = (q.original.cat(), q.purified.cat());
    let mut report = ValidationReport::default();
    for (i, k) in q.classes.iter().enumerate() {
        for &(_, f) in &k.members {
            if p.is_iso(Mor(i)) != m.is_iso(f) {
                report.push(Law::PureIso, p.morphism_name(Mor(i)).to_string());
            }
        }
    }
    for f in m.morphisms() {
        if p.is_iso(q.projection.mor(f)) && !m.is_iso(f) {
            report.push(Law::ReflectsIsos, m.morphism_name(f).to_string());
        }
    }
    report
}

/// `[A, f] = p(r_Y) ∘ (Y ⊗ μ_A) ∘ p(f)` for every member of every class.
pub fn lemma36_check(q: &Purification) -> ValidationReport {
    let (m, p) = (&*q.original, &*q.purified);
    let mut report = ValidationReport::default();
    for (i, k) in q.classes.iter().enumerate() {
        for &(a, f) in &k.members {
            let y = k.target;
            let rhs = q.mu_at(a).and_then(|mu| {
                p.path(&[
                    q.projection.mor(f),
                    p.whisker_left(y, mu),
                    q.projection.mor(m.right_unitor(y)),
                ])
            });
            if rhs != Some(Mor(i)) {
                report.push(
                    Law::ClassFactorisation,
                    format!(
                        "{} via ({}, {})",
                        p.mor_name(Mor(i)),
                        m.obj_name(a),
                        m.mor_name(f)
                    ),
                );
            }
        }
    }
    report
}

/// Composable functors `left`, `right` with `theta ∈ Θ(right ∘ left)`.
#[derive(Debug, Clone)]
pub struct ExactSequenceCandidate {
    pub left: MonoidalFunctor,
    pub right: MonoidalFunctor,
    pub theta: Nullhomotopy,
}

impl ExactSequenceCandidate {
    pub fn new(left: MonoidalFunctor, right: MonoidalFunctor, theta: Nullhomotopy) -> Result<Self> {
        let composite = left.then(&right)?;
        if !theta.functor.same_as(&composite) {
            return Err(Error::contract("the nullhomotopy is not on the composite"));
        }
        if !validate_nullhomotopy(&theta)?.is_valid() {
            return Err(Error::contract(
                "the connecting family is not a nullhomotopy",
            ));
        }
        Ok(ExactSequenceCandidate { left, right, theta })
    }

    pub fn describe(&self) -> String {
        format!(
            "{} → {} → {}",
            self.left.domain.name(),
            self.left.codomain.name(),
            self.right.codomain.name()
        )
    }
}

/// `h: L -> X` with `φ ∈ Θ(f ∘ h)`.
#[derive(Debug, Clone)]
pub struct KernelProbe {
    pub h: MonoidalFunctor,
    pub phi: Nullhomotopy,
}

/// `g: X -> N` with `ψ ∈ Θ(g ∘ t)`.
#[derive(Debug, Clone)]
pub struct CokernelProbe {
    pub g: MonoidalFunctor,
    pub psi: Nullhomotopy,
}

/// A map `a` out of the kernel (into from the cokernel) and a compatible
/// nullhomotopy on its composite with the sequence map.
#[derive(Debug, Clone)]
pub struct StrongProbe {
    pub a: MonoidalFunctor,
    pub phi: Nullhomotopy,
}

#[derive(Debug, Clone, Default)]
pub struct ProbeSet {
    pub kernel: Vec<KernelProbe>,
    pub cokernel: Vec<CokernelProbe>,
    pub strong_kernel: Vec<StrongProbe>,
    pub strong_cokernel: Vec<StrongProbe>,
}

fn with(
    corpus: &[Arc<MonoidalStructure>],
    extra: &Arc<MonoidalStructure>,
) -> Vec<Arc<MonoidalStructure>> {
    let mut out = corpus.to_vec();
    if !out.iter().any(|c| same(c, extra)) {
        out.push(extra.clone());
    }
    out
}

fn same_components(a: &Nullhomotopy, b: &Nullhomotopy) -> bool {
    a.components == b.components
}

impl ProbeSet {
    /// Every functor between the sequence and a corpus category, with every
    /// nullhomotopy on the relevant composite. The kernel side also probes
    /// from the kernel object itself, the cokernel side into the cokernel.
    pub fn generate(
        seq: &ExactSequenceCandidate,
        corpus: &[Arc<MonoidalStructure>],
        budget: &Budget,
    ) -> Result<ProbeSet> {
        let (t, x, f) = (&seq.left.domain, &seq.left.codomain, &seq.right.codomain);
        let kernel = par::try_flat_map(&with(corpus, t), |l| -> Result<Vec<KernelProbe>> {
            let mut out = Vec::new();
            for h in enumerate_monoidal_functors(l, x, budget)? {
                for phi in nullhomotopies(&h.then(&seq.right)?, budget)? {
                    out.push(KernelProbe { h: h.clone(), phi });
                }
            }
            Ok(out)
        })?;
        let cokernel = par::try_flat_map(&with(corpus, f), |n| -> Result<Vec<CokernelProbe>> {
            let mut out = Vec::new();
            for g in enumerate_monoidal_functors(x, n, budget)? {
                for psi in nullhomotopies(&seq.left.then(&g)?, budget)? {
                    out.push(CokernelProbe { g: g.clone(), psi });
                }
            }
            Ok(out)
        })?;
        let strong_kernel =
            par::try_flat_map(&with(corpus, t), |a_dom| -> Result<Vec<StrongProbe>> {
                let mut out = Vec::new();
                for a in enumerate_monoidal_functors(a_dom, t, budget)? {
                    let rhs = precompose(&a, &seq.theta)?;
                    for phi in nullhomotopies(&a.then(&seq.left)?, budget)? {
                        if same_components(&postcompose(&phi, &seq.right)?, &rhs) {
                            out.push(StrongProbe { a: a.clone(), phi });
                        }
                    }
                }
                Ok(out)
            })?;
        let strong_cokernel =
            par::try_flat_map(&with(corpus, f), |b| -> Result<Vec<StrongProbe>> {
                let mut out = Vec::new();
                for a in enumerate_monoidal_functors(f, b, budget)? {
                    let rhs = postcompose(&seq.theta, &a)?;
                    for phi in nullhomotopies(&seq.right.then(&a)?, budget)? {
                        if same_components(&precompose(&seq.left, &phi)?, &rhs) {
                            out.push(StrongProbe { a: a.clone(), phi });
                        }
                    }
                }
                Ok(out)
            })?;
        Ok(ProbeSet {
            kernel,
            cokernel,
            strong_kernel,
            strong_cokernel,
        })
    }

    pub fn len(&self) -> usize {
        self.kernel.len()
            + self.cokernel.len()
            + self.strong_kernel.len()
            + self.strong_cokernel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Mediator and strongness counts per probe. Passes iff every count is 1.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub title: String,
    pub counts: Vec<(String, usize)>,
    pub strong_counts: Vec<(String, usize)>,
    /// The unique mediator of each probe whose count is 1, in probe order.
    pub mediators: Vec<Option<MonoidalFunctor>>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn probes(&self) -> usize {
        self.counts.len() + self.strong_counts.len()
    }

    fn failures(&self) -> impl Iterator<Item = &(String, usize)> {
        self.counts
            .iter()
            .chain(&self.strong_counts)
            .filter(|(_, n)| *n != 1)
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: verified on {} probes",
            self.title,
            self.counts.len()
        )?;
        if !self.strong_counts.is_empty() {
            write!(f, " and {} strongness probes", self.strong_counts.len())?;
        }
        if self.passed() {
            write!(f, ", every count is exactly 1")
        } else {
            for (probe, n) in self.failures() {
                write!(f, "\n  FAILED: {probe} has {n} solutions")?;
            }
            Ok(())
        }
    }
}

fn describe_functor(f: &MonoidalFunctor) -> String {
    let names: Vec<&str> = f
        .object_map
        .iter()
        .map(|&x| f.codomain.obj_name(x))
        .collect();
    format!(
        "{} -> {} [{}]",
        f.domain.name(),
        f.codomain.name(),
        names.join(", ")
    )
}

/// Enumerations shared between probes with the same endpoints.
struct FunctorCache<'a> {
    budget: &'a Budget,
    entries: Vec<(
        Arc<MonoidalStructure>,
        Arc<MonoidalStructure>,
        Vec<MonoidalFunctor>,
    )>,
}

impl<'a> FunctorCache<'a> {
    fn new(budget: &'a Budget) -> Self {
        FunctorCache {
            budget,
            entries: Vec::new(),
        }
    }

    fn prepare(&mut self, a: &Arc<MonoidalStructure>, b: &Arc<MonoidalStructure>) -> Result<()> {
        if !self
            .entries
            .iter()
            .any(|(x, y, _)| same(x, a) && same(y, b))
        {
            let fs = enumerate_monoidal_functors(a, b, self.budget)?;
            self.entries.push((a.clone(), b.clone(), fs));
        }
        Ok(())
    }

    fn get(&self, a: &Arc<MonoidalStructure>, b: &Arc<MonoidalStructure>) -> &[MonoidalFunctor] {
        &self
            .entries
            .iter()
            .find(|(x, y, _)| same(x, a) && same(y, b))
            .expect("prepared")
            .2
    }
}

/// Counts `h': L -> T` with `t ∘ h' = h` and `h' • θ = φ` for every kernel
/// probe; with `strong`, also counts `α ∈ Θ(a)` with `α • t = φ`.
pub fn verify_kernel(
    seq: &ExactSequenceCandidate,
    probes: &ProbeSet,
    strong: bool,
    budget: &Budget,
) -> Result<ProbeReport> {
    let t = &seq.left.domain;
    let mut cache = FunctorCache::new(budget);
    for p in &probes.kernel {
        if !same(&p.h.codomain, &seq.left.codomain) {
            return Err(Error::contract(
                "kernel probe does not land in the middle object",
            ));
        }
        cache.prepare(&p.h.domain, t)?;
    }
    let results = par::try_map(
        &probes.kernel,
        |p| -> Result<(String, usize, Option<MonoidalFunctor>)> {
            let mut found = Vec::new();
            for c in cache.get(&p.h.domain, t) {
                if c.then(&seq.left)?.same_as(&p.h)
                    && same_components(&precompose(c, &seq.theta)?, &p.phi)
                {
                    found.push(c.clone());
                }
            }
            let n = found.len();
            Ok((
                format!("kernel probe {} with φ = {}", describe_functor(&p.h), p.phi),
                n,
                (n == 1).then(|| found.remove(0)),
            ))
        },
    )?;
    let strong_counts = if strong {
        par::try_map(&probes.strong_kernel, |p| -> Result<(String, usize)> {
            let mut n = 0;
            for alpha in nullhomotopies(&p.a, budget)? {
                if same_components(&postcompose(&alpha, &seq.left)?, &p.phi) {
                    n += 1;
                }
            }
            Ok((
                format!(
                    "strongness probe {} with φ = {}",
                    describe_functor(&p.a),
                    p.phi
                ),
                n,
            ))
        })?
    } else {
        Vec::new()
    };
    let (counts, mediators) = results.into_iter().map(|(s, n, m)| ((s, n), m)).unzip();
    Ok(ProbeReport {
        title: format!("kernel of {}", seq.describe()),
        counts,
        strong_counts,
        mediators,
    })
}

/// Dual of [`verify_kernel`]: counts `g': F -> N` with `g' ∘ f = g` and
/// `θ • g' = ψ`; with `strong`, counts `α ∈ Θ(a)` with `f • α = φ`.
pub fn verify_cokernel(
    seq: &ExactSequenceCandidate,
    probes: &ProbeSet,
    strong: bool,
    budget: &Budget,
) -> Result<ProbeReport> {
    let f = &seq.right.codomain;
    let mut cache = FunctorCache::new(budget);
    for p in &probes.cokernel {
        if !same(&p.g.domain, &seq.right.domain) {
            return Err(Error::contract(
                "cokernel probe does not start at the middle object",
            ));
        }
        cache.prepare(f, &p.g.codomain)?;
    }
    let results = par::try_map(
        &probes.cokernel,
        |p| -> Result<(String, usize, Option<MonoidalFunctor>)> {
            let mut found = Vec::new();
            for c in cache.get(f, &p.g.codomain) {
                if seq.right.then(c)?.same_as(&p.g)
                    && same_components(&postcompose(&seq.theta, c)?, &p.psi)
                {
                    found.push(c.clone());
                }
            }
            let n = found.len();
            Ok((
                format!(
                    "cokernel probe {} with ψ = {}",
                    describe_functor(&p.g),
                    p.psi
                ),
                n,
                (n == 1).then(|| found.remove(0)),
            ))
        },
    )?;
    let strong_counts = if strong {
        par::try_map(&probes.strong_cokernel, |p| -> Result<(String, usize)> {
            let mut n = 0;
            for alpha in nullhomotopies(&p.a, budget)? {
                if same_components(&precompose(&seq.right, &alpha)?, &p.phi) {
                    n += 1;
                }
            }
            Ok((
                format!(
                    "strongness probe {} with φ = {}",
                    describe_functor(&p.a),
                    p.phi
                ),
                n,
            ))
        })?
    } else {
        Vec::new()
    };
    let (counts, mediators) = results.into_iter().map(|(s, n, m)| ((s, n), m)).unzip();
    Ok(ProbeReport {
        title: format!("cokernel of {}", seq.describe()),
        counts,
        strong_counts,
        mediators,
    })
}

/// The mediator `g'` of a cokernel probe on the canonical sequence sends
/// `[A, f]` to `r ∘ (gY ⊗ ψ_A) ∘ m_g⁻¹ ∘ g(f)`.
pub fn mediator_matches_formula(
    q: &Purification,
    probe: &CokernelProbe,
    mediator: &MonoidalFunctor,
) -> bool {
    let (g, n) = (&probe.g, &*probe.g.codomain);
    let sub_index = |a: Obj| q.admissible().iter().position(|&b| b == a);
    q.classes.iter().enumerate().all(|(i, k)| {
        let (a, f) = k.representative();
        let y = k.target;
        let expected = (|| {
            let psi = probe.psi.component(Obj(sub_index(a)?));
            n.path(&[
                g.mor(f),
                n.inv(g.m(y, a))?,
                n.whisker_left(g.obj(y), psi),
                n.right_unitor(g.obj(y)),
            ])
        })();
        expected == Some(mediator.mor(Mor(i)))
    })
}

/// `Pic(M) → M → P(M)` with `μ_M`, checked to be the only nullhomotopy on
/// the composite.
pub fn canonical_sequence(q: &Purification, budget: &Budget) -> Result<ExactSequenceCandidate> {
    let mu = q.mu()?;
    let all = nullhomotopies(&mu.functor, budget)?;
    if all.len() != 1 || !all[0].same_as(&mu) {
        return Err(Error::internal(format!(
            "{} nullhomotopies on the canonical composite, expected only μ",
            all.len()
        )));
    }
    ExactSequenceCandidate::new(q.inclusion.clone(), q.projection.clone(), mu)
}

#[derive(Debug, Clone)]
pub struct CanonicalReport {
    pub kernel: ProbeReport,
    pub cokernel: ProbeReport,
    /// Cokernel mediators that disagree with the closed formula.
    pub formula_mismatches: usize,
}

impl CanonicalReport {
    pub fn passed(&self) -> bool {
        self.kernel.passed() && self.cokernel.passed() && self.formula_mismatches == 0
    }
}

impl fmt::Display for CanonicalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.kernel)?;
        writeln!(f, "{}", self.cokernel)?;
        write!(
            f,
            "closed-form mediators: {} mismatches",
            self.formula_mismatches
        )
    }
}

/// Runs the kernel and cokernel probes of the canonical sequence of `q`.
pub fn verify_canonical(
    q: &Purification,
    corpus: &[Arc<MonoidalStructure>],
    budget: &Budget,
) -> Result<CanonicalReport> {
    let seq = canonical_sequence(q, budget)?;
    let probes = ProbeSet::generate(&seq, corpus, budget)?;
    let kernel = verify_kernel(&seq, &probes, false, budget)?;
    let cokernel = verify_cokernel(&seq, &probes, false, budget)?;
    let formula_mismatches = probes
        .cokernel
        .iter()
        .zip(&cokernel.mediators)
        .filter(|(p, m)| {
            m.as_ref()
                .is_some_and(|m| !mediator_matches_formula(q, p, m))
        })
        .count();
    Ok(CanonicalReport {
        kernel,
        cokernel,
        formula_mismatches,
    })
}

/// `S(M)`: objects `(X, x)` with `x: X -> I` invertible, one arrow between
/// any two, and the forgetful functor `ε` sending `(X,x) -> (Y,y)` to `y⁻¹ ∘ x`.
pub fn kernel_of_identity(
    m: &Arc<MonoidalStructure>,
) -> Result<(Arc<MonoidalStructure>, MonoidalFunctor)> {
    require_valid_monoidal(m)?;
    let c = m.cat();
    let i_m = m.left_unitor(m.unit);
    if i_m != m.right_unitor(m.unit) {
        return Err(Error::contract(format!(
            "{}: left and right unitors differ at the unit",
            m.name()
        )));
    }
    let objects: Vec<(Obj, Mor)> = c
        .objects()
        .flat_map(|x| c.isos(x, m.unit).into_iter().map(move |f| (x, f)))
        .collect();
    let index = |p: (Obj, Mor)| objects.iter().position(|&q| q == p).map(Obj);
    let k = objects.len();
    let mut tensor_obj = Vec::with_capacity(k * k);
    for &(x, fx) in &objects {
        for &(y, fy) in &objects {
            let z = m
                .path(&[m.tensor_mor(fx, fy), i_m])
                .expect("tensor of isos to the unit composes");
            tensor_obj.push(
                index((m.tensor(x, y), z))
                    .ok_or_else(|| Error::internal("S is not closed under the tensor"))?,
            );
        }
    }
    let unit = index((m.unit, m.id(m.unit))).expect("(I, id) is an object");
    let names = objects
        .iter()
        .map(|&(x, f)| format!("({}, {})", c.object_name(x), c.morphism_name(f)))
        .collect();
    let base = Arc::new(FinCategory::indiscrete(format!("S({})", m.name()), names));
    let s = Arc::new(MonoidalStructure::thin(
        base,
        tensor_obj,
        unit,
        m.symmetric,
    )?);
    let mut morphism_map = vec![Mor(0); s.cat().morphism_count()];
    for (i, &(_, fx)) in objects.iter().enumerate() {
        for (j, &(_, fy)) in objects.iter().enumerate() {
            let arrow = s.cat().indiscrete_arrow(Obj(i), Obj(j));
            morphism_map[arrow.0] = m.path(&[fx, m.inv(fy).expect("iso")]).expect("typed");
        }
    }
    let epsilon = MonoidalFunctor {
        domain: s.clone(),
        codomain: m.clone(),
        object_map: objects.iter().map(|p| p.0).collect(),
        morphism_map,
        unit_comparison: m.id(m.unit),
        tensor_comparison: (0..k * k)
            .map(|i| m.id(m.tensor(objects[i / k].0, objects[i % k].0)))
            .collect(),
    };
    let report = validate_monoidal_functor(&epsilon)?;
    if !report.is_valid() {
        return Err(Error::internal(format!(
            "the forgetful functor out of {} is not monoidal: {report}",
            s.name()
        )));
    }
    Ok((s, epsilon))
}

/// `R(M)`: the indiscrete category on the objects of `M` with the same
/// tensor on objects, and `η: M -> R(M)`.
pub fn cokernel_of_identity(
    m: &Arc<MonoidalStructure>,
) -> Result<(Arc<MonoidalStructure>, MonoidalFunctor)> {
    require_valid_monoidal(m)?;
    let c = m.cat();
    let r = Arc::new(models::indiscrete_of(m));
    let n = c.object_count();
    let eta = MonoidalFunctor {
        domain: m.clone(),
        codomain: r.clone(),
        object_map: c.objects().collect(),
        morphism_map: c
            .morphisms()
            .map(|f| r.cat().indiscrete_arrow(c.source(f), c.target(f)))
            .collect(),
        unit_comparison: r.id(m.unit),
        tensor_comparison: (0..n * n)
            .map(|i| r.id(m.tensor(Obj(i / n), Obj(i % n))))
            .collect(),
    };
    Ok((r, eta))
}

fn unique_nullhomotopy(f: &MonoidalFunctor, budget: &Budget) -> Result<Nullhomotopy> {
    let mut all = nullhomotopies(f, budget)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        n => Err(Error::internal(format!(
            "{n} nullhomotopies where exactly one was expected"
        ))),
    }
}

/// `(S(M), ε, κ)` as a candidate kernel of `id_M`.
pub fn identity_kernel_sequence(
    m: &Arc<MonoidalStructure>,
    budget: &Budget,
) -> Result<ExactSequenceCandidate> {
    let (_, epsilon) = kernel_of_identity(m)?;
    let id = MonoidalFunctor::identity(m);
    let kappa = unique_nullhomotopy(&epsilon.then(&id)?, budget)?;
    ExactSequenceCandidate::new(epsilon, id, kappa)
}

/// `(R(M), η, λ)` as a candidate cokernel of `id_M`.
pub fn identity_cokernel_sequence(
    m: &Arc<MonoidalStructure>,
    budget: &Budget,
) -> Result<ExactSequenceCandidate> {
    let (_, eta) = cokernel_of_identity(m)?;
    let id = MonoidalFunctor::identity(m);
    let lambda = unique_nullhomotopy(&id.then(&eta)?, budget)?;
    ExactSequenceCandidate::new(id, eta, lambda)
}

/// Every Hom-set is a singleton, cross-checked against Θ-triviality of
/// the identity functor.
pub fn is_trivial_category(m: &Arc<MonoidalStructure>, budget: &Budget) -> Result<bool> {
    let c = m.cat();
    let singletons = c
        .objects()
        .all(|x| c.objects().all(|y| c.hom(x, y).len() == 1));
    let theta_trivial = !nullhomotopies(&MonoidalFunctor::identity(m), budget)?.is_empty();
    if singletons != theta_trivial {
        return Err(Error::internal(format!(
            "triviality criteria disagree on {}",
            m.name()
        )));
    }
    Ok(singletons)
}

/// The example showing `p_M` need not be an epimorphism.
#[derive(Debug, Clone)]
pub struct C2Counterexample {
    pub p: MonoidalFunctor,
    /// The unique underlying functor `i0(C2) -> i1(C2)`.
    pub h: MonoidalFunctor,
    /// Symmetric monoidal functors `P -> i1(C2)` with their coherence data.
    pub with_coherence: usize,
    /// The distinct underlying functors among them.
    pub functors: Vec<MonoidalFunctor>,
    pub composites_equal_h: bool,
}

impl C2Counterexample {
    pub fn passed(&self) -> bool {
        self.functors.len() == 2
            && self.functors[0].morphism_map != self.functors[1].morphism_map
            && self.composites_equal_h
    }
}

impl fmt::Display for C2Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pc, n) = (self.p.codomain.cat(), self.h.codomain.cat());
        writeln!(
            f,
            "M = {}, N = {}, P = {}",
            self.p.domain.name(),
            self.h.codomain.name(),
            self.p.codomain.name()
        )?;
        writeln!(
            f,
            "symmetric monoidal functors P -> N: {} distinct ({} with coherence data)",
            self.functors.len(),
            self.with_coherence
        )?;
        for (label, g) in ["F", "G"].iter().zip(&self.functors) {
            let arrows: Vec<String> = pc
                .morphisms()
                .map(|a| format!("{} ↦ {}", pc.morphism_name(a), n.morphism_name(g.mor(a))))
                .collect();
            writeln!(f, "  {label}: {}", arrows.join(", "))?;
        }
        writeln!(
            f,
            "F ≠ G: {}",
            self.functors.len() == 2
                && self.functors[0].morphism_map != self.functors[1].morphism_map
        )?;
        writeln!(f, "F ∘ p = G ∘ p = H: {}", self.composites_equal_h)?;
        if self.passed() {
            write!(f, "p is not an epimorphism")
        } else {
            write!(f, "FAILED: the example was not reproduced")
        }
    }
}

pub fn c2_counterexample(budget: &Budget) -> Result<C2Counterexample> {
    let c2 = models::cyclic_group(2);
    let m = Arc::new(models::i0(&c2));
    let n = Arc::new(models::i1(&c2)?);
    let q = purify(&m)?;
    let hs = distinct_underlying(&enumerate_monoidal_functors(&m, &n, budget)?);
    if hs.len() != 1 {
        return Err(Error::internal(format!(
            "{} functors {} -> {}, expected one",
            hs.len(),
            m.name(),
            n.name()
        )));
    }
    let h = hs[0].clone();
    let all = enumerate_monoidal_functors(&q.purified, &n, budget)?;
    let functors = distinct_underlying(&all);
    let mut composites_equal_h = true;
    for g in &functors {
        composites_equal_h &= q.projection.then(g)?.underlying().same_as(&h.underlying());
    }
    Ok(C2Counterexample {
        p: q.projection,
        h,
        with_coherence: all.len(),
        functors,
        composites_equal_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twogroup::is_pure;

    fn budget() -> Budget {
        Budget::default()
    }

    fn corpus() -> Vec<Arc<MonoidalStructure>> {
        models::corpus().into_iter().map(Arc::new).collect()
    }

    fn named(name: &str) -> Arc<MonoidalStructure> {
        corpus().into_iter().find(|m| m.name() == name).unwrap()
    }

    #[test]
    fn purification_is_pure_and_valid() {
        for m in corpus() {
            let q = purify(&m).unwrap();
            assert!(is_pure(&q.purified).unwrap().pure, "{}", q.purified.name());
            assert!(q.congruence_report().is_valid());
            assert!(lemma35_check(&q).is_valid());
            assert!(lemma36_check(&q).is_valid());
        }
    }

    #[test]
    fn purification_shapes() {
        let q = purify(&named("i0(C2)")).unwrap();
        let p = q.purified.cat();
        assert!(p
            .objects()
            .all(|x| p.objects().all(|y| p.hom(x, y).len() == 1)));

        let q = purify(&named("i0(ML)")).unwrap();
        let p = q.purified.cat();
        let m = &q.original;
        let unit_apart = |x: Obj, y: Obj| {
            ["(1,1)", "(-1,1)"]
                .iter()
                .any(|u| m.tensor(x, m.cat().find_object(u).unwrap()) == y)
        };
        for x in p.objects() {
            for y in p.objects() {
                assert_eq!(p.hom(x, y).len(), usize::from(unit_apart(x, y)));
            }
        }
        assert_eq!(crate::fincat::iso_classes(p).len(), 2);

        // already pure: every class has a unit-labelled member and p is bijective on Hom-sets
        let q = purify(&named("Poset2")).unwrap();
        assert_eq!(q.classes.len(), q.original.cat().morphism_count());
        let mut image = q.projection.morphism_map.clone();
        image.dedup();
        assert_eq!(image.len(), q.classes.len());
    }

    #[test]
    fn class_equality_agrees_with_union_find() {
        for m in corpus() {
            let q = purify(&m).unwrap();
            let all: Vec<(usize, Obj, Obj, Mor)> = q
                .classes
                .iter()
                .enumerate()
                .flat_map(|(i, k)| k.members.iter().map(move |&(a, f)| (i, k.target, a, f)))
                .collect();
            for &(i, y, a, f) in &all {
                for &(j, y2, b, g) in &all {
                    if y == y2 && m.cat().source(f) == m.cat().source(g) {
                        assert_eq!(arrow_class_eq(&m, y, (a, f), (b, g)).unwrap(), i == j);
                    }
                }
            }
        }
        // the only unit-labelled arrows from (1,z) are z-level, never units
        let m = named("i1(ML)");
        let e = |s| m.cat().find_morphism(s).unwrap();
        assert!(!arrow_class_eq(&m, m.unit, (m.unit, e("(1,z)")), (m.unit, e("(1,1)"))).unwrap());
        assert!(arrow_class_eq(&m, m.unit, (m.unit, e("(1,z)")), (m.unit, e("(-1,z)"))).unwrap());
        // labels of different tensor type cannot be compared
        let ml = named("i0(ML)");
        let o = |s| ml.cat().find_object(s).unwrap();
        let (u, v) = (o("(1,1)"), o("(-1,1)"));
        assert!(matches!(
            arrow_class_eq(&ml, u, (u, ml.id(u)), (v, ml.id(u))),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn class_labels_must_be_invertible() {
        let ml = named("i0(ML)");
        let z = ml.cat().find_object("(1,z)").unwrap();
        let u = ml.unit;
        let f = ml.id(z);
        assert!(matches!(
            arrow_class_eq(&ml, u, (z, f), (z, f)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn purify_needs_a_braiding() {
        let mut m = models::i0(&models::cyclic_group(2));
        m.braiding = None;
        m.symmetric = false;
        assert!(matches!(purify(&Arc::new(m)), Err(Error::Contract(_))));
    }

    #[test]
    fn mu_is_the_unique_nullhomotopy() {
        for m in corpus() {
            let q = purify(&m).unwrap();
            let seq = canonical_sequence(&q, &budget()).unwrap();
            assert!(validate_nullhomotopy(&seq.theta).unwrap().is_valid());
            let mut objs = q.inclusion.object_map.clone();
            objs.dedup();
            assert_eq!(objs.len(), q.inclusion.object_map.len());
            let mut mors = q.inclusion.morphism_map.clone();
            mors.sort();
            mors.dedup();
            assert_eq!(mors.len(), q.inclusion.morphism_map.len());
        }
    }

    #[test]
    fn canonical_sequence_of_ml_is_exact() {
        let q = purify(&named("i0(ML)")).unwrap();
        let r = verify_canonical(&q, &corpus(), &budget()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.kernel.probes() > 0 && r.cokernel.probes() > 0);
    }

    #[test]
    fn self_probe_has_identity_mediator() {
        let q = purify(&named("i1(C2)")).unwrap();
        let seq = canonical_sequence(&q, &budget()).unwrap();
        let probes = ProbeSet {
            kernel: vec![KernelProbe {
                h: seq.left.clone(),
                phi: seq.theta.clone(),
            }],
            cokernel: vec![CokernelProbe {
                g: seq.right.clone(),
                psi: seq.theta.clone(),
            }],
            ..ProbeSet::default()
        };
        let k = verify_kernel(&seq, &probes, false, &budget()).unwrap();
        assert!(k.passed());
        assert!(k.mediators[0]
            .as_ref()
            .unwrap()
            .same_as(&MonoidalFunctor::identity(&seq.left.domain)));
        let c = verify_cokernel(&seq, &probes, false, &budget()).unwrap();
        assert!(c.passed());
        assert!(c.mediators[0]
            .as_ref()
            .unwrap()
            .same_as(&MonoidalFunctor::identity(&seq.right.codomain)));
    }

    #[test]
    fn identity_kernels_and_cokernels() {
        let c2 = models::cyclic_group(2);
        let s = |m: MonoidalStructure| kernel_of_identity(&Arc::new(m)).unwrap().0;
        assert_eq!(s(models::i0(&c2)).cat().object_count(), 1);
        assert_eq!(s(models::i1(&c2).unwrap()).cat().object_count(), 2);
        assert_eq!(s(models::terminal()).cat().object_count(), 1);
        let r = |m: MonoidalStructure| cokernel_of_identity(&Arc::new(m)).unwrap().0;
        assert_eq!(r(models::i0(&c2)).cat().object_count(), 2);
        assert_eq!(r(models::i1(&c2).unwrap()).cat().morphism_count(), 1);
        let corpus = corpus();
        for m in &corpus {
            let (s, _) = kernel_of_identity(m).unwrap();
            assert!(is_trivial_category(&s, &budget()).unwrap());
            let (r, eta) = cokernel_of_identity(m).unwrap();
            assert!(is_trivial_category(&r, &budget()).unwrap());
            assert!(validate_monoidal_functor(&eta).unwrap().is_valid());
        }
        let m = named("i1(C2)");
        let seq = identity_kernel_sequence(&m, &budget()).unwrap();
        let probes = ProbeSet::generate(&seq, &corpus, &budget()).unwrap();
        let k = verify_kernel(&seq, &probes, true, &budget()).unwrap();
        assert!(k.passed() && !k.strong_counts.is_empty(), "{k}");
        let seq = identity_cokernel_sequence(&m, &budget()).unwrap();
        let probes = ProbeSet::generate(&seq, &corpus, &budget()).unwrap();
        let c = verify_cokernel(&seq, &probes, true, &budget()).unwrap();
        assert!(c.passed() && !c.strong_counts.is_empty(), "{c}");
    }

    #[test]
    fn triviality() {
        assert!(is_trivial_category(&Arc::new(models::terminal()), &budget()).unwrap());
        assert!(is_trivial_category(&named("R(i0(C2))"), &budget()).unwrap());
        assert!(!is_trivial_category(&named("i1(C2)"), &budget()).unwrap());
    }

    #[test]
    fn c2_example() {
        let r = c2_counterexample(&budget()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.functors.len(), 2);
    }
}
