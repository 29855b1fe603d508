//! Finite categories given by explicit tables, functors and natural
//! transformations between them, and the exhaustive enumeration routines the
//! rest of the crate uses as oracles.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::{Law, ValidationReport};
use crate::search::{Budget, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A partition of the objects, each block sorted, blocks ordered by least member.
pub type Partition = Vec<Vec<Obj>>;

/// A finite category. Morphism identity is nominal: two morphisms are equal
/// iff they have the same index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<String>,
    source: Vec<Obj>,
    target: Vec<Obj>,
    identity: Vec<Mor>,
    /// `composite[g * |mor| + f]` is `g ∘ f` when defined.
    composite: Vec<Option<Mor>>,
    hom: Vec<Vec<Mor>>,
    inverse: Vec<Option<Mor>>,
}

impl FinCategory {
    /// Builds a category from its tables. Only referential integrity is
    /// checked here; the category axioms are checked by [`validate_category`].
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<(String, Obj, Obj)>,
        identity: Vec<Mor>,
        compose: impl IntoIterator<Item = (Mor, Mor, Mor)>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        if identity.len() != n {
            return Err(Error::structural(format!(
                "identity table has {} entries for {} objects",
                identity.len(),
                n
            )));
        }
        for (name, s, t) in &morphisms {
            if s.0 >= n || t.0 >= n {
                return Err(Error::structural(format!(
                    "morphism {name} has a dangling endpoint"
                )));
            }
        }
        for (x, id) in identity.iter().enumerate() {
            if id.0 >= m {
                return Err(Error::structural(format!(
                    "identity of object {} is dangling ({id})",
                    objects[x]
                )));
            }
        }
        let mut composite = vec![None; m * m];
        for (g, f, h) in compose {
            if g.0 >= m || f.0 >= m || h.0 >= m {
                return Err(Error::structural(format!(
                    "composition entry ({g}, {f}) -> {h} is dangling"
                )));
            }
            let slot = &mut composite[g.0 * m + f.0];
            if slot.is_some() {
                return Err(Error::structural(format!(
                    "duplicate composition entry for ({}, {})",
                    morphisms[g.0].0, morphisms[f.0].0
                )));
            }
            *slot = Some(h);
        }
        let (names, endpoints): (Vec<_>, Vec<_>) =
            morphisms.into_iter().map(|(a, s, t)| (a, (s, t))).unzip();
        let (source, target) = endpoints.into_iter().unzip();
        let mut c = FinCategory {
            name: name.into(),
            objects,
            morphisms: names,
            source,
            target,
            identity,
            composite,
            hom: Vec::new(),
            inverse: Vec::new(),
        };
        c.rebuild_caches();
        Ok(c)
    }

    /// Builds a category whose composition is given by a function on
    /// composable pairs.
    pub fn from_fn(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<(String, Obj, Obj)>,
        identity: Vec<Mor>,
        compose: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for g in 0..morphisms.len() {
            for f in 0..morphisms.len() {
                if morphisms[f].2 == morphisms[g].1 {
                    entries.push((Mor(g), Mor(f), compose(Mor(g), Mor(f))));
                }
            }
        }
        FinCategory::new(name, objects, morphisms, identity, entries)
    }

    fn rebuild_caches(&mut self) {
        let n = self.objects.len();
        let mut hom = vec![Vec::new(); n * n];
        for f in 0..self.morphisms.len() {
            hom[self.source[f].0 * n + self.target[f].0].push(Mor(f));
        }
        self.hom = hom;
        self.inverse = (0..self.morphisms.len())
            .map(|f| self.find_inverse(Mor(f)))
            .collect();
    }

    fn find_inverse(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.source(f), self.target(f));
        self.hom(y, x).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity(x))
                && self.compose(f, g) == Some(self.identity(y))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn object_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn morphism_name(&self, f: Mor) -> &str {
        &self.morphisms[f.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphisms
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name).map(Obj)
    }

    pub fn find_morphism(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|o| o == name).map(Mor)
    }

    pub fn source(&self, f: Mor) -> Obj {
        self.source[f.0]
    }

    pub fn target(&self, f: Mor) -> Obj {
        self.target[f.0]
    }

    pub fn identity(&self, x: Obj) -> Mor {
        self.identity[x.0]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity[self.source(f).0] == f
    }

    /// Raw table lookup of `g ∘ f`; `None` when the table has no entry.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.composite[g.0 * self.morphisms.len() + f.0]
    }

    /// Composes a path given in application order: `path[0]` is applied first.
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (first, rest) = path.split_first()?;
        rest.iter().try_fold(*first, |acc, &g| {
            if self.source(g) != self.target(acc) {
                return None;
            }
            self.compose(g, acc)
        })
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.hom[x.0 * self.objects.len() + y.0]
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        self.inverse[f.0]
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse[f.0].is_some()
    }

    pub fn isos(&self, x: Obj, y: Obj) -> Vec<Mor> {
        self.hom(x, y)
            .iter()
            .copied()
            .filter(|&f| self.is_iso(f))
            .collect()
    }

    pub fn composition_entries(&self) -> Vec<(Mor, Mor, Mor)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.composite[g * m + f] {
                    out.push((Mor(g), Mor(f), h));
                }
            }
        }
        out
    }

    pub(crate) fn set_composite(&mut self, g: Mor, f: Mor, h: Option<Mor>) {
        let m = self.morphisms.len();
        self.composite[g.0 * m + f.0] = h;
        self.rebuild_caches();
    }

    pub(crate) fn describe_pair(&self, g: Mor, f: Mor) -> String {
        format!("({}, {})", self.morphism_name(g), self.morphism_name(f))
    }

    /// The category with one object and its identity.
    pub fn terminal() -> Self {
        FinCategory::from_fn(
            "terminal",
            vec!["*".into()],
            vec![("id_*".into(), Obj(0), Obj(0))],
            vec![Mor(0)],
            |_, _| Mor(0),
        )
        .expect("terminal category tables are well formed")
    }

    /// The category with exactly one morphism between each ordered pair of
    /// objects, named `x->y`.
    pub fn indiscrete(name: impl Into<String>, objects: Vec<String>) -> Self {
        let n = objects.len();
        let mut morphisms = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                morphisms.push((format!("{}->{}", objects[x], objects[y]), Obj(x), Obj(y)));
            }
        }
        let identity = (0..n).map(|x| Mor(x * n + x)).collect();
        FinCategory::from_fn(name, objects, morphisms, identity, |g, f| {
            let (x, _) = (f.0 / n, f.0 % n);
            let z = g.0 % n;
            Mor(x * n + z)
        })
        .expect("indiscrete category tables are well formed")
    }

    /// The unique morphism `x -> y` of an indiscrete category built by
    /// [`FinCategory::indiscrete`].
    pub fn indiscrete_arrow(&self, x: Obj, y: Obj) -> Mor {
        Mor(x.0 * self.objects.len() + y.0)
    }

    /// The discrete category on the given objects.
    pub fn discrete(name: impl Into<String>, objects: Vec<String>) -> Self {
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (format!("id_{o}"), Obj(i), Obj(i)))
            .collect();
        let identity = (0..objects.len()).map(Mor).collect();
        FinCategory::from_fn(name, objects, morphisms, identity, |g, _| g)
            .expect("discrete category tables are well formed")
    }

    /// Disjoint union, objects and morphisms of `self` first.
    pub fn disjoint_union(&self, other: &FinCategory, name: impl Into<String>) -> Self {
        let (n, m) = (self.object_count(), self.morphism_count());
        let objects = self
            .objects
            .iter()
            .chain(other.objects.iter())
            .cloned()
            .collect();
        let morphisms = self
            .morphisms()
            .map(|f| {
                (
                    self.morphism_name(f).to_string(),
                    self.source(f),
                    self.target(f),
                )
            })
            .chain(other.morphisms().map(|f| {
                (
                    other.morphism_name(f).to_string(),
                    Obj(other.source(f).0 + n),
                    Obj(other.target(f).0 + n),
                )
            }))
            .collect();
        let identity = self
            .identity
            .iter()
            .copied()
            .chain(other.identity.iter().map(|f| Mor(f.0 + m)))
            .collect();
        let compose = self.composition_entries().into_iter().chain(
            other
                .composition_entries()
                .into_iter()
                .map(|(g, f, h)| (Mor(g.0 + m), Mor(f.0 + m), Mor(h.0 + m))),
        );
        FinCategory::new(name, objects, morphisms, identity, compose)
            .expect("disjoint union of well-formed tables")
    }
}

/// Checks identity typing, composability, both identity laws and
/// associativity on every instance.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut report = ValidationReport::default();
    for x in c.objects() {
        let id = c.identity(x);
        if c.source(id) != x || c.target(id) != x {
            report.push(
                Law::IdentityTyping,
                format!("{} (identity {})", c.object_name(x), c.morphism_name(id)),
            );
        }
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            let composable = c.target(f) == c.source(g);
            match (composable, c.compose(g, f)) {
                (true, None) => report.push(
                    Law::Composability,
                    format!("{} has no composite", c.describe_pair(g, f)),
                ),
                (false, Some(_)) => report.push(
                    Law::Composability,
                    format!(
                        "{} is not composable but has a composite",
                        c.describe_pair(g, f)
                    ),
                ),
                (true, Some(h)) if c.source(h) != c.source(f) || c.target(h) != c.target(g) => {
                    report.push(
                        Law::Composability,
                        format!(
                            "{} composite {} is mistyped",
                            c.describe_pair(g, f),
                            c.morphism_name(h)
                        ),
                    )
                }
                _ => {}
            }
        }
    }
    for f in c.morphisms() {
        let (x, y) = (c.source(f), c.target(f));
        if c.compose(c.identity(y), f) != Some(f) {
            report.push(
                Law::LeftIdentity,
                format!("({}, {})", c.object_name(y), c.morphism_name(f)),
            );
        }
        if c.compose(f, c.identity(x)) != Some(f) {
            report.push(
                Law::RightIdentity,
                format!("({}, {})", c.object_name(x), c.morphism_name(f)),
            );
        }
    }
    for f in c.morphisms() {
        for g in c.hom_from(c.target(f)) {
            for h in c.hom_from(c.target(g)) {
                let left = c.compose(g, f).and_then(|gf| c.compose(h, gf));
                let right = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                if left != right {
                    report.push(
                        Law::Associativity,
                        format!(
                            "({}, {}, {})",
                            c.morphism_name(h),
                            c.morphism_name(g),
                            c.morphism_name(f)
                        ),
                    );
                }
            }
        }
    }
    report
}

impl FinCategory {
    /// All morphisms with the given source, in index order.
    pub fn hom_from(&self, x: Obj) -> Vec<Mor> {
        let mut out: Vec<Mor> = self
            .objects()
            .flat_map(|y| self.hom(x, y).iter().copied())
            .collect();
        out.sort();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub domain: Arc<FinCategory>,
    pub codomain: Arc<FinCategory>,
    pub object_map: Vec<Obj>,
    pub morphism_map: Vec<Mor>,
}

pub(crate) fn same<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinFunctor {
    pub fn identity(c: &Arc<FinCategory>) -> Self {
        FinFunctor {
            domain: c.clone(),
            codomain: c.clone(),
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
        }
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.object_map[x.0]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.morphism_map[f.0]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if !same(&self.codomain, &other.domain) {
            return Err(Error::contract(format!(
                "cannot compose functors: codomain {} differs from domain {}",
                self.codomain.name(),
                other.domain.name()
            )));
        }
        Ok(FinFunctor {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            object_map: self.object_map.iter().map(|&x| other.obj(x)).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| other.mor(f)).collect(),
        })
    }

    /// Same underlying maps between equal categories.
    pub fn same_as(&self, other: &FinFunctor) -> bool {
        self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
            && same(&self.domain, &other.domain)
            && same(&self.codomain, &other.codomain)
    }
}

pub fn validate_functor(f: &FinFunctor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (a, b) = (&*f.domain, &*f.codomain);
    if f.object_map.len() != a.object_count() || f.morphism_map.len() != a.morphism_count() {
        report.push(Law::FunctorTyping, "map sizes do not match the domain");
        return report;
    }
    for m in a.morphisms() {
        let fm = f.mor(m);
        if b.source(fm) != f.obj(a.source(m)) || b.target(fm) != f.obj(a.target(m)) {
            report.push(Law::FunctorTyping, a.morphism_name(m).to_string());
        }
    }
    for x in a.objects() {
        if f.mor(a.identity(x)) != b.identity(f.obj(x)) {
            report.push(Law::PreservesIdentity, a.object_name(x).to_string());
        }
    }
    for (g, h, gh) in a.composition_entries() {
        if b.compose(f.mor(g), f.mor(h)) != Some(f.mor(gh)) {
            report.push(Law::PreservesComposition, a.describe_pair(g, h));
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransformation {
    pub source: FinFunctor,
    pub target: FinFunctor,
    pub components: Vec<Mor>,
}

pub fn validate_natural(t: &NatTransformation) -> Result<ValidationReport> {
    check_parallel(&t.source, &t.target)?;
    let (a, b) = (&*t.source.domain, &*t.source.codomain);
    let mut report = ValidationReport::default();
    for x in a.objects() {
        let c = t.components[x.0];
        if b.source(c) != t.source.obj(x) || b.target(c) != t.target.obj(x) {
            report.push(Law::ComponentTyping, a.object_name(x).to_string());
        }
    }
    if !report.is_valid() {
        return Ok(report);
    }
    for f in a.morphisms() {
        let (x, y) = (a.source(f), a.target(f));
        let lhs = b.compose(t.target.mor(f), t.components[x.0]);
        let rhs = b.compose(t.components[y.0], t.source.mor(f));
        if lhs != rhs {
            report.push(Law::Naturality, a.morphism_name(f).to_string());
        }
    }
    Ok(report)
}

fn check_parallel(f: &FinFunctor, g: &FinFunctor) -> Result<()> {
    if same(&f.domain, &g.domain) && same(&f.codomain, &g.codomain) {
        Ok(())
    } else {
        Err(Error::contract(
            "natural transformations need parallel functors",
        ))
    }
}

fn require_valid(c: &FinCategory) -> Result<()> {
    let report = validate_category(c);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::contract(format!(
            "category {} is not valid: {}",
            c.name(),
            report.violations[0]
        )))
    }
}

/// Registers the constraints that make an assignment of variables
/// `offset..offset + |obj(a)| + |mor(a)|` a functor `a -> b`.
pub(crate) fn functor_constraints<'a>(
    problem: &mut Problem<'a>,
    a: &'a FinCategory,
    b: &'a FinCategory,
    offset: usize,
) {
    let n = a.object_count();
    for x in a.objects() {
        for y in a.objects().filter(|y| y.0 <= x.0) {
            let forward = !a.hom(x, y).is_empty();
            let backward = !a.hom(y, x).is_empty();
            if forward || backward {
                problem.check(offset + x.0, move |v| {
                    let (fx, fy) = (Obj(v[offset + x.0]), Obj(v[offset + y.0]));
                    (!forward || !b.hom(fx, fy).is_empty())
                        && (!backward || !b.hom(fy, fx).is_empty())
                });
            }
        }
    }
    for (g, f, h) in a.composition_entries() {
        let last = offset + n + g.0.max(f.0).max(h.0);
        problem.check(last, move |v| {
            let m = |k: Mor| Mor(v[offset + n + k.0]);
            b.compose(m(g), m(f)) == Some(m(h))
        });
    }
}

/// Candidate values for the functor variables of [`functor_constraints`].
pub(crate) fn functor_domain(
    a: &FinCategory,
    b: &FinCategory,
    var: usize,
    v: &[usize],
    offset: usize,
) -> Vec<usize> {
    let n = a.object_count();
    let local = var - offset;
    if local < n {
        return (0..b.object_count()).collect();
    }
    let f = Mor(local - n);
    let (x, y) = (a.source(f), a.target(f));
    let (fx, fy) = (Obj(v[offset + x.0]), Obj(v[offset + y.0]));
    if a.is_identity(f) {
        vec![b.identity(fx).0]
    } else {
        b.hom(fx, fy).iter().map(|m| m.0).collect()
    }
}

/// Every functor `a -> b`, lexicographic in object map then morphism map.
pub fn enumerate_functors(
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
    budget: &Budget,
) -> Result<Vec<FinFunctor>> {
    require_valid(a)?;
    require_valid(b)?;
    let (ca, cb) = (&**a, &**b);
    let n = ca.object_count();
    let vars = n + ca.morphism_count();
    let mut problem = Problem::new(vars, move |var, v: &[usize]| {
        functor_domain(ca, cb, var, v, 0)
    });
    functor_constraints(&mut problem, ca, cb, 0);
    let solutions = problem.solve(budget)?;
    Ok(solutions
        .into_iter()
        .map(|v| FinFunctor {
            domain: a.clone(),
            codomain: b.clone(),
            object_map: v[..n].iter().map(|&x| Obj(x)).collect(),
            morphism_map: v[n..].iter().map(|&f| Mor(f)).collect(),
        })
        .collect())
}

/// Every natural transformation `f => g`.
pub fn enumerate_natural_transformations(
    f: &FinFunctor,
    g: &FinFunctor,
    budget: &Budget,
) -> Result<Vec<NatTransformation>> {
    check_parallel(f, g)?;
    let (a, b) = (&*f.domain, &*f.codomain);
    let mut problem = Problem::new(a.object_count(), |var, _: &[usize]| {
        b.hom(f.obj(Obj(var)), g.obj(Obj(var)))
            .iter()
            .map(|m| m.0)
            .collect()
    });
    for m in a.morphisms() {
        let (x, y) = (a.source(m), a.target(m));
        problem.check(x.0.max(y.0), move |v| {
            b.compose(g.mor(m), Mor(v[x.0])) == b.compose(Mor(v[y.0]), f.mor(m))
        });
    }
    let solutions = problem.solve(budget)?;
    Ok(solutions
        .into_iter()
        .map(|v| NatTransformation {
            source: f.clone(),
            target: g.clone(),
            components: v.into_iter().map(Mor).collect(),
        })
        .collect())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as representative
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

fn partition_by(c: &FinCategory, related: impl Fn(Obj, Obj) -> bool) -> Partition {
    let mut uf = UnionFind::new(c.object_count());
    for x in c.objects() {
        for y in c.objects() {
            if related(x, y) {
                uf.union(x.0, y.0);
            }
        }
    }
    uf.blocks()
        .into_iter()
        .map(|b| b.into_iter().map(Obj).collect())
        .collect()
}

/// Objects grouped by isomorphism.
pub fn iso_classes(c: &FinCategory) -> Partition {
    partition_by(c, |x, y| !c.isos(x, y).is_empty())
}

/// Objects grouped by the equivalence closure of "some morphism exists".
pub fn connected_components(c: &FinCategory) -> Partition {
    partition_by(c, |x, y| !c.hom(x, y).is_empty())
}

/// For each object, the index of its block in `partition`.
pub fn block_index(partition: &Partition, objects: usize) -> Vec<usize> {
    let mut idx = vec![usize::MAX; objects];
    for (i, block) in partition.iter().enumerate() {
        for x in block {
            idx[x.0] = i;
        }
    }
    idx
}

/// Whether every morphism is invertible, with the non-invertible ones.
pub fn is_groupoid(c: &FinCategory) -> (bool, Vec<Mor>) {
    let bad: Vec<Mor> = c.morphisms().filter(|&f| !c.is_iso(f)).collect();
    (bad.is_empty(), bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn i0_c2() -> Arc<FinCategory> {
        models::i0(&models::cyclic_group(2)).base.clone()
    }

    fn i1_c2() -> Arc<FinCategory> {
        models::i1(&models::cyclic_group(2)).unwrap().base.clone()
    }

    fn poset2() -> Arc<FinCategory> {
        models::poset2().base.clone()
    }

    fn indiscrete2() -> Arc<FinCategory> {
        Arc::new(FinCategory::indiscrete(
            "R(i0_C2)",
            vec!["1".into(), "-1".into()],
        ))
    }

    #[test]
    fn terminal_and_discrete_are_valid() {
        assert!(validate_category(&FinCategory::terminal()).is_valid());
        assert!(validate_category(&i0_c2()).is_valid());
    }

    #[test]
    fn identity_mutation_is_reported_at_the_identity() {
        let mut c = (*i0_c2()).clone();
        let (a, b) = (Obj(0), Obj(1));
        c.set_composite(c.identity(a), c.identity(a), Some(c.identity(b)));
        let report = validate_category(&c);
        assert!(report.has(Law::LeftIdentity));
        let expected = format!("({}, id_{})", c.object_name(a), c.object_name(a));
        assert!(
            report
                .violations
                .iter()
                .any(|v| v.law == Law::LeftIdentity && v.at == expected),
            "{report}"
        );
    }

    #[test]
    fn dangling_references_are_structural_errors() {
        let err = FinCategory::new(
            "bad",
            vec!["x".into()],
            vec![("f".into(), Obj(0), Obj(3))],
            vec![Mor(0)],
            [],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Structural(ref s) if s.contains("f")));
    }

    #[test]
    fn empty_category_is_valid_and_enumerates_trivially() {
        let empty = Arc::new(FinCategory::new("empty", vec![], vec![], vec![], []).unwrap());
        assert!(validate_category(&empty).is_valid());
        let fs = enumerate_functors(&empty, &i0_c2(), &Budget::default()).unwrap();
        assert_eq!(fs.len(), 1);
        assert!(iso_classes(&empty).is_empty());
        assert!(connected_components(&empty).is_empty());
    }

    #[test]
    fn functors_from_terminal_pick_objects() {
        let t = Arc::new(FinCategory::terminal());
        for c in [i0_c2(), i1_c2(), poset2(), indiscrete2()] {
            let fs = enumerate_functors(&t, &c, &Budget::default()).unwrap();
            assert_eq!(fs.len(), c.object_count());
        }
    }

    #[test]
    fn discrete_endofunctors_of_i0_c2() {
        // brute force over the four object maps; morphism maps are forced
        let c = i0_c2();
        let fs = enumerate_functors(&c, &c, &Budget::default()).unwrap();
        let mut oracle = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                oracle.push(vec![Obj(a), Obj(b)]);
            }
        }
        assert_eq!(
            fs.iter().map(|f| f.object_map.clone()).collect::<Vec<_>>(),
            oracle
        );
    }

    #[test]
    fn indiscrete_to_i1_c2_has_two_underlying_functors() {
        let fs = enumerate_functors(&indiscrete2(), &i1_c2(), &Budget::default()).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn natural_transformation_counts() {
        let t = Arc::new(FinCategory::terminal());
        let id = FinFunctor::identity(&t);
        assert_eq!(
            enumerate_natural_transformations(&id, &id, &Budget::default())
                .unwrap()
                .len(),
            1
        );

        // both elements of C2 commute with everything
        let c = i1_c2();
        let id = FinFunctor::identity(&c);
        let oracle = c
            .morphisms()
            .filter(|&p| c.morphisms().all(|x| c.compose(p, x) == c.compose(x, p)))
            .count();
        assert_eq!(oracle, 2);
        assert_eq!(
            enumerate_natural_transformations(&id, &id, &Budget::default())
                .unwrap()
                .len(),
            oracle
        );

        let d = i0_c2();
        let constant = |x: Obj| FinFunctor {
            domain: d.clone(),
            codomain: d.clone(),
            object_map: vec![x, x],
            morphism_map: vec![d.identity(x), d.identity(x)],
        };
        let nats = enumerate_natural_transformations(
            &constant(Obj(0)),
            &constant(Obj(1)),
            &Budget::default(),
        )
        .unwrap();
        assert!(nats.is_empty());
    }

    #[test]
    fn non_parallel_transformations_are_rejected() {
        let a = i0_c2();
        let t = Arc::new(FinCategory::terminal());
        let f = FinFunctor::identity(&a);
        let g = FinFunctor::identity(&t);
        assert!(matches!(
            enumerate_natural_transformations(&f, &g, &Budget::default()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn partitions() {
        assert_eq!(iso_classes(&i0_c2()).len(), 2);
        assert_eq!(iso_classes(&indiscrete2()).len(), 1);
        assert_eq!(iso_classes(&i1_c2()).len(), 1);
        assert_eq!(connected_components(&i0_c2()).len(), 2);
        assert_eq!(connected_components(&indiscrete2()).len(), 1);
        let union = FinCategory::terminal().disjoint_union(&i1_c2(), "terminal+i1_C2");
        assert!(validate_category(&union).is_valid());
        assert_eq!(connected_components(&union).len(), 2);
    }

    #[test]
    fn groupoid_detection() {
        assert!(is_groupoid(&i0_c2()).0);
        assert!(is_groupoid(&i1_c2()).0);
        let p = poset2();
        let (ok, witnesses) = is_groupoid(&p);
        assert!(!ok);
        assert_eq!(witnesses.len(), 1);
        let w = witnesses[0];
        assert_eq!(
            (p.object_name(p.source(w)), p.object_name(p.target(w))),
            ("0", "1")
        );
    }

    #[test]
    fn budget_errors_propagate() {
        let big = Arc::new(FinCategory::discrete(
            "d6",
            (0..6).map(|i| i.to_string()).collect(),
        ));
        let err = enumerate_functors(&big, &big, &Budget::new(100)).unwrap_err();
        assert_eq!(err, Error::Budget { limit: 100 });
    }
}
