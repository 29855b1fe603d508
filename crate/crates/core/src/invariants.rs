//! Finite monoids, the invariants K, π0 and π1 of a monoidal category, the
//! embeddings i0 and i1 of monoids as monoidal categories, and the
//! (units, pure quotient) torsion theory on commutative monoids.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{
    block_index, connected_components, iso_classes, FinCategory, Mor, Obj, Partition, UnionFind,
};
use crate::moncat::{MonoidalFunctor, MonoidalStructure};
use crate::report::{Law, ValidationReport};
use crate::search::{Budget, Problem};
use crate::{torsion, twogroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonoid {
    pub name: String,
    pub elements: Vec<String>,
    /// `table[a * n + b] = a · b`
    pub table: Vec<usize>,
    pub unit: usize,
    pub commutative: bool,
}

impl FinMonoid {
    /// Checks table sizes and ranges; the `commutative` flag is computed.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        table: Vec<usize>,
        unit: usize,
    ) -> Result<Self> {
        let n = elements.len();
        if table.len() != n * n {
            return Err(Error::structural(format!(
                "multiplication table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if unit >= n && n > 0 {
            return Err(Error::structural("unit is dangling"));
        }
        if let Some(x) = table.iter().find(|&&x| x >= n) {
            return Err(Error::structural(format!(
                "multiplication entry #{x} is dangling"
            )));
        }
        let mut m = FinMonoid {
            name: name.into(),
            elements,
            table,
            unit,
            commutative: false,
        };
        m.commutative = m.is_commutative();
        Ok(m)
    }

    pub fn from_fn(
        name: impl Into<String>,
        elements: Vec<String>,
        unit: usize,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let table = (0..n * n).map(|i| op(i / n, i % n)).collect();
        FinMonoid::new(name, elements, table, unit)
    }

    pub fn trivial() -> Self {
        FinMonoid::from_fn("1", vec!["1".into()], 0, |_, _| 0).expect("trivial monoid")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.op(a, b) == self.unit && self.op(b, a) == self.unit)
    }

    /// Two-sided invertible elements in increasing order.
    pub fn units(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.inverse(a).is_some())
            .collect()
    }

    pub fn is_group(&self) -> bool {
        self.units().len() == self.len()
    }

    /// The unit is the only invertible element.
    pub fn is_pure(&self) -> bool {
        self.units() == vec![self.unit]
    }

    /// `(i, p)` with `x^i = x^(i+p)` minimal; an isomorphism invariant.
    pub fn power_signature(&self, x: usize) -> (usize, usize) {
        let mut seen = vec![None; self.len()];
        let mut power = x;
        for i in 1.. {
            if let Some(j) = seen[power] {
                return (j, i - j);
            }
            seen[power] = Some(i);
            power = self.op(power, x);
        }
        unreachable!()
    }

    /// The least `n >= 1` with `x^n = 1`, if any.
    pub fn order(&self, x: usize) -> Option<usize> {
        let mut power = x;
        for n in 1..=self.len() {
            if power == self.unit {
                return Some(n);
            }
            power = self.op(power, x);
        }
        None
    }
}

impl fmt::Display for FinMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{{}}}", self.name, self.elements.join(", "))
    }
}

pub fn validate_monoid(m: &FinMonoid) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = m.len();
    let e = |a: usize| m.elements[a].as_str();
    for a in 0..n {
        if m.op(m.unit, a) != a || m.op(a, m.unit) != a {
            report.push(Law::MonoidUnit, e(a).to_string());
        }
        for b in 0..n {
            if m.commutative && m.op(a, b) != m.op(b, a) {
                report.push(Law::Commutativity, format!("({}, {})", e(a), e(b)));
            }
            for c in 0..n {
                if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                    report.push(
                        Law::MonoidAssociativity,
                        format!("({}, {}, {})", e(a), e(b), e(c)),
                    );
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidMap {
    pub domain: FinMonoid,
    pub codomain: FinMonoid,
    pub map: Vec<usize>,
}

impl MonoidMap {
    pub fn identity(m: &FinMonoid) -> Self {
        MonoidMap {
            domain: m.clone(),
            codomain: m.clone(),
            map: (0..m.len()).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_homomorphism(&self) -> bool {
        let (d, c) = (&self.domain, &self.codomain);
        self.map.len() == d.len()
            && (d.is_empty() || self.map[d.unit] == c.unit)
            && (0..d.len()).all(|a| {
                (0..d.len()).all(|b| self.map[d.op(a, b)] == c.op(self.map[a], self.map[b]))
            })
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &b in &self.map {
            if std::mem::replace(&mut hit[b], true) {
                return false;
            }
        }
        hit.iter().all(|&h| h)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_homomorphism() && self.is_bijective()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &MonoidMap) -> MonoidMap {
        MonoidMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        }
    }

    pub(crate) fn describe(&self) -> String {
        let pairs: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(a, &b)| {
                format!(
                    "{} ↦ {}",
                    self.domain.elements[a], self.codomain.elements[b]
                )
            })
            .collect();
        pairs.join(", ")
    }
}

/// An isomorphism `a -> b`, found by exhaustive search over unit-preserving
/// bijections that preserve power signatures.
pub fn find_monoid_iso(a: &FinMonoid, b: &FinMonoid) -> Option<MonoidMap> {
    if a.len() != b.len() || a.commutative != b.commutative {
        return None;
    }
    let n = a.len();
    let sig_a: Vec<_> = (0..n).map(|x| a.power_signature(x)).collect();
    let sig_b: Vec<_> = (0..n).map(|x| b.power_signature(x)).collect();
    let domain = |var: usize, v: &[usize]| -> Vec<usize> {
        if var == a.unit {
            return vec![b.unit];
        }
        (0..n)
            .filter(|&y| sig_b[y] == sig_a[var] && y != b.unit && !v.contains(&y))
            .collect()
    };
    let mut problem = Problem::new(n, domain);
    for x in 0..n {
        for y in 0..n {
            let xy = a.op(x, y);
            problem.check(x.max(y).max(xy), move |v| v[xy] == b.op(v[x], v[y]));
        }
    }
    let solutions = problem.solve(&Budget::default()).ok()?;
    solutions.into_iter().next().map(|map| MonoidMap {
        domain: a.clone(),
        codomain: b.clone(),
        map,
    })
}

/// The quotient by the monoid congruence generated by `pairs`, with the
/// projection. Classes are ordered by least member and named after it.
pub fn quotient_by(
    m: &FinMonoid,
    pairs: &[(usize, usize)],
    name: impl Into<String>,
) -> (FinMonoid, MonoidMap) {
    let n = m.len();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if a < b && uf.find(a) == uf.find(b) {
                    for c in 0..n {
                        changed |= uf.union(m.op(a, c), m.op(b, c));
                        changed |= uf.union(m.op(c, a), m.op(c, b));
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let blocks = uf.blocks();
    let mut index = vec![0; n];
    for (i, block) in blocks.iter().enumerate() {
        for &a in block {
            index[a] = i;
        }
    }
    let elements = blocks
        .iter()
        .map(|b| format!("[{}]", m.elements[b[0]]))
        .collect();
    let q = FinMonoid::from_fn(name, elements, index[m.unit], |x, y| {
        index[m.op(blocks[x][0], blocks[y][0])]
    })
    .expect("quotient tables are in range");
    let projection = MonoidMap {
        domain: m.clone(),
        codomain: q.clone(),
        map: index,
    };
    (q, projection)
}

/// The submonoid on `members` (which must contain the unit and be closed)
/// with its inclusion.
fn submonoid(m: &FinMonoid, members: &[usize], name: impl Into<String>) -> (FinMonoid, MonoidMap) {
    let pos = |x: usize| {
        members
            .iter()
            .position(|&y| y == x)
            .expect("submonoid is closed")
    };
    let elements = members.iter().map(|&x| m.elements[x].clone()).collect();
    let sub = FinMonoid::from_fn(name, elements, pos(m.unit), |a, b| {
        pos(m.op(members[a], members[b]))
    })
    .expect("submonoid tables are in range");
    let inclusion = MonoidMap {
        domain: sub.clone(),
        codomain: m.clone(),
        map: members.to_vec(),
    };
    (sub, inclusion)
}

/// The group of invertible elements with its inclusion.
pub fn monoid_units(m: &FinMonoid) -> (FinMonoid, MonoidMap) {
    submonoid(m, &m.units(), format!("U({})", m.name))
}

/// The cokernel of the units inclusion in commutative monoids: the quotient
/// by the congruence identifying every unit with 1.
pub fn monoid_purify(m: &FinMonoid) -> Result<(FinMonoid, MonoidMap)> {
    if !m.commutative {
        return Err(Error::contract(format!("{} is not commutative", m.name)));
    }
    let pairs: Vec<_> = m.units().into_iter().map(|u| (u, m.unit)).collect();
    let (q, p) = quotient_by(m, &pairs, format!("Pure({})", m.name));
    if !q.is_pure() {
        return Err(Error::internal(format!(
            "quotient of {} by its units is not pure",
            m.name
        )));
    }
    Ok((q, p))
}

/// Elements of finite order in a group, with the inclusion.
pub fn group_torsion(m: &FinMonoid) -> (FinMonoid, MonoidMap) {
    let members: Vec<usize> = (0..m.len()).filter(|&x| m.order(x).is_some()).collect();
    submonoid(m, &members, format!("Tor({})", m.name))
}

/// The quotient of a group by its torsion subgroup.
pub fn group_torsion_free(m: &FinMonoid) -> (FinMonoid, MonoidMap) {
    let pairs: Vec<_> = (0..m.len())
        .filter(|&x| m.order(x).is_some())
        .map(|x| (x, m.unit))
        .collect();
    quotient_by(m, &pairs, format!("{}/Tor", m.name))
}

/// The discrete strict monoidal category on the elements; symmetric iff `m`
/// is commutative.
pub fn i0(m: &FinMonoid) -> MonoidalStructure {
    let base = Arc::new(FinCategory::discrete(
        format!("i0({})", m.name),
        m.elements.clone(),
    ));
    let table: Vec<Obj> = m.table.iter().map(|&x| Obj(x)).collect();
    let tensor_mor = m.table.iter().map(|&x| Mor(x)).collect();
    MonoidalStructure::strict(base, table, tensor_mor, Obj(m.unit), m.commutative)
        .expect("a monoid is a strict monoidal discrete category")
}

/// The one-object category whose endomorphisms, composition and tensor are
/// the elements and product of `m`. Requires commutativity.
pub fn i1(m: &FinMonoid) -> Result<MonoidalStructure> {
    if !m.commutative {
        return Err(Error::contract(format!(
            "i1 needs a commutative monoid, {} is not",
            m.name
        )));
    }
    let morphisms = m
        .elements
        .iter()
        .map(|e| (e.clone(), Obj(0), Obj(0)))
        .collect();
    let base = Arc::new(FinCategory::from_fn(
        format!("i1({})", m.name),
        vec!["*".into()],
        morphisms,
        vec![Mor(m.unit)],
        |g, f| Mor(m.op(g.0, f.0)),
    )?);
    let tensor_mor = m.table.iter().map(|&x| Mor(x)).collect();
    MonoidalStructure::strict(base, vec![Obj(0)], tensor_mor, Obj(0), true)
}

/// A monoid on the blocks of `partition` with product induced by the tensor.
/// Fails if the product depends on representatives.
fn block_monoid(
    m: &MonoidalStructure,
    partition: &Partition,
    name: String,
) -> Result<(FinMonoid, Vec<usize>)> {
    let c = m.cat();
    let index = block_index(partition, c.object_count());
    let k = partition.len();
    let mut table = vec![usize::MAX; k * k];
    for x in c.objects() {
        for y in c.objects() {
            let slot = &mut table[index[x.0] * k + index[y.0]];
            let value = index[m.tensor(x, y).0];
            if *slot != usize::MAX && *slot != value {
                return Err(Error::internal(format!(
                    "{name}: product of classes depends on representatives at {}",
                    m.tuple(&[x, y])
                )));
            }
            *slot = value;
        }
    }
    let elements = partition
        .iter()
        .map(|b| format!("[{}]", c.object_name(b[0])))
        .collect();
    let monoid = FinMonoid::new(name, elements, table, index[m.unit.0])?;
    if m.symmetric && !monoid.commutative {
        return Err(Error::internal(
            "classes of a symmetric monoidal category do not commute",
        ));
    }
    Ok((monoid, index))
}

/// The monoid of isomorphism classes of objects.
pub fn k(m: &MonoidalStructure) -> Result<FinMonoid> {
    Ok(k_indexed(m)?.0)
}

pub(crate) fn k_indexed(m: &MonoidalStructure) -> Result<(FinMonoid, Vec<usize>)> {
    block_monoid(m, &iso_classes(m.cat()), format!("K({})", m.name()))
}

/// The monoid of connected components.
pub fn pi0(m: &MonoidalStructure) -> Result<FinMonoid> {
    Ok(pi0_indexed(m)?.0)
}

pub(crate) fn pi0_indexed(m: &MonoidalStructure) -> Result<(FinMonoid, Vec<usize>)> {
    block_monoid(
        m,
        &connected_components(m.cat()),
        format!("π0({})", m.name()),
    )
}

/// Endomorphisms of the unit under composition, in morphism index order.
pub fn pi1(m: &MonoidalStructure) -> Result<FinMonoid> {
    let c = m.cat();
    let ends = c.hom(m.unit, m.unit).to_vec();
    let pos = |f: Mor| ends.iter().position(|&g| g == f);
    let n = ends.len();
    let mut table = Vec::with_capacity(n * n);
    for &g in &ends {
        for &f in &ends {
            let h = c.compose(g, f).and_then(pos).ok_or_else(|| {
                Error::contract("composition of endomorphisms of the unit is undefined")
            })?;
            table.push(h);
        }
    }
    let unit = pos(m.id(m.unit)).expect("identity is an endomorphism");
    let elements = ends
        .iter()
        .map(|&f| c.morphism_name(f).to_string())
        .collect();
    let monoid = FinMonoid::new(format!("π1({})", m.name()), elements, table, unit)?;
    if !monoid.commutative {
        return Err(Error::internal(format!(
            "π1({}) is not commutative",
            m.name()
        )));
    }
    Ok(monoid)
}

fn induced_on_blocks(
    f: &MonoidalFunctor,
    dom: (FinMonoid, Vec<usize>),
    cod: (FinMonoid, Vec<usize>),
) -> MonoidMap {
    let mut map = vec![0; dom.0.len()];
    for x in f.domain.cat().objects() {
        map[dom.1[x.0]] = cod.1[f.obj(x).0];
    }
    MonoidMap {
        domain: dom.0,
        codomain: cod.0,
        map,
    }
}

/// `K(F)`: `[X] ↦ [FX]`.
pub fn k_map(f: &MonoidalFunctor) -> Result<MonoidMap> {
    Ok(induced_on_blocks(
        f,
        k_indexed(&f.domain)?,
        k_indexed(&f.codomain)?,
    ))
}

/// `π0(F)`: `[X] ↦ [FX]`.
pub fn pi0_map(f: &MonoidalFunctor) -> Result<MonoidMap> {
    Ok(induced_on_blocks(
        f,
        pi0_indexed(&f.domain)?,
        pi0_indexed(&f.codomain)?,
    ))
}

/// `π1(F)`: `u ↦ e⁻¹ ∘ F(u) ∘ e`.
pub fn pi1_map(f: &MonoidalFunctor) -> Result<MonoidMap> {
    let (dm, cm) = (&*f.domain, &*f.codomain);
    let (d, c) = (pi1(dm)?, pi1(cm)?);
    let dom_ends = dm.cat().hom(dm.unit, dm.unit);
    let cod_ends = cm.cat().hom(cm.unit, cm.unit);
    let e = f.e();
    let e_inv = cm
        .inv(e)
        .ok_or_else(|| Error::contract("unit comparison is not invertible"))?;
    let map = dom_ends
        .iter()
        .map(|&u| {
            let v = cm
                .path(&[e, f.mor(u), e_inv])
                .expect("conjugate by e is composable");
            cod_ends
                .iter()
                .position(|&w| w == v)
                .expect("conjugate is an endomorphism of the unit")
        })
        .collect();
    Ok(MonoidMap {
        domain: d,
        codomain: c,
        map,
    })
}

/// A composable pair of monoid maps `A -> B -> C`.
#[derive(Debug, Clone)]
pub struct Row {
    pub left: MonoidMap,
    pub right: MonoidMap,
}

impl Row {
    fn monoids(&self) -> [&FinMonoid; 3] {
        [&self.left.domain, &self.left.codomain, &self.right.codomain]
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.monoids();
        write!(f, "{a} → {b} → {c}")
    }
}

/// Comparison of two rows by vertical isomorphisms making both squares commute.
#[derive(Debug, Clone)]
pub struct IsoReport {
    pub title: String,
    pub top: Row,
    pub bottom: Row,
    /// Left, middle and right vertical maps, when they could be defined.
    pub verticals: Vec<MonoidMap>,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.verticals.len() == 3
    }
}

impl fmt::Display for IsoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        writeln!(f, "  top:    {}", self.top)?;
        writeln!(f, "  bottom: {}", self.bottom)?;
        for (label, v) in ["left", "middle", "right"].iter().zip(&self.verticals) {
            writeln!(f, "  {label} isomorphism: {}", v.describe())?;
        }
        if self.passed() {
            writeln!(
                f,
                "  both squares commute; all three vertical maps are isomorphisms"
            )
        } else {
            for failure in &self.failures {
                writeln!(f, "  FAILED: {failure}")?;
            }
            Ok(())
        }
    }
}

/// Given the middle vertical map, the outer ones are forced by the squares:
/// the left through injectivity of the bottom-left map and the right through
/// surjectivity of the top-right map. Both are then checked to be
/// well-defined isomorphisms.
pub fn compare_rows(
    title: impl Into<String>,
    top: Row,
    bottom: Row,
    middle: MonoidMap,
) -> IsoReport {
    let mut failures = Vec::new();
    let [a1, _, a3] = top.monoids();
    let [b1, _, b3] = bottom.monoids();

    let mut left = Vec::with_capacity(a1.len());
    for a in 0..a1.len() {
        let target = middle.apply(top.left.apply(a));
        let pre: Vec<usize> = (0..b1.len())
            .filter(|&b| bottom.left.apply(b) == target)
            .collect();
        match pre.as_slice() {
            [b] => left.push(*b),
            _ => failures.push(format!(
                "left square: {} has {} preimages",
                a1.elements[a],
                pre.len()
            )),
        }
    }
    let mut right = vec![None; a3.len()];
    for x in 0..top.left.codomain.len() {
        let c = top.right.apply(x);
        let value = bottom.right.apply(middle.apply(x));
        match right[c] {
            None => right[c] = Some(value),
            Some(v) if v != value => failures.push(format!(
                "right square is not well defined at {}",
                a3.elements[c]
            )),
            _ => {}
        }
    }
    let mut verticals = Vec::new();
    if failures.is_empty() {
        match right.into_iter().collect::<Option<Vec<_>>>() {
            Some(right) => {
                verticals.push(MonoidMap {
                    domain: a1.clone(),
                    codomain: b1.clone(),
                    map: left,
                });
                verticals.push(middle);
                verticals.push(MonoidMap {
                    domain: a3.clone(),
                    codomain: b3.clone(),
                    map: right,
                });
            }
            None => failures.push("top right map is not surjective".into()),
        }
    }
    for (label, v) in ["left", "middle", "right"].iter().zip(&verticals) {
        if !v.is_isomorphism() {
            failures.push(format!("{label} vertical map is not an isomorphism"));
        }
    }
    IsoReport {
        title: title.into(),
        top,
        bottom,
        verticals,
        failures,
    }
}

/// The classical row `U(M) → M → Pure(M)`.
pub fn monoid_row(m: &FinMonoid) -> Result<Row> {
    let (_, inclusion) = monoid_units(m);
    let (_, projection) = monoid_purify(m)?;
    Ok(Row {
        left: inclusion,
        right: projection,
    })
}

/// `K(Pic M) → K(M) → K(P(M))` against `U(K M) → K M → Pure(K M)`.
pub fn compare_k_sequences(m: &Arc<MonoidalStructure>) -> Result<IsoReport> {
    let seq = torsion::purify(m)?;
    let top = Row {
        left: k_map(&seq.inclusion)?,
        right: k_map(&seq.projection)?,
    };
    let km = k(m)?;
    let bottom = monoid_row(&km)?;
    Ok(compare_rows(
        format!("K rows of {}", m.name()),
        top,
        bottom,
        MonoidMap::identity(&km),
    ))
}

/// `π_k` applied to the canonical sequence of `i_k(M)`, against
/// `U(M) → M → Pure(M)`.
pub fn compare_pi_sequences(m: &FinMonoid, which: u8) -> Result<IsoReport> {
    let bottom = monoid_row(m)?;
    let (mk, top, middle) = match which {
        0 => {
            let mk = Arc::new(i0(m));
            let seq = torsion::purify(&mk)?;
            let top = Row {
                left: pi0_map(&seq.inclusion)?,
                right: pi0_map(&seq.projection)?,
            };
            // discrete: component of object x is the element x
            let (p, index) = pi0_indexed(&mk)?;
            let mut map = vec![0; p.len()];
            for x in 0..m.len() {
                map[index[x]] = x;
            }
            (
                mk,
                top,
                MonoidMap {
                    domain: p,
                    codomain: m.clone(),
                    map,
                },
            )
        }
        1 => {
            let mk = Arc::new(i1(m)?);
            let seq = torsion::purify(&mk)?;
            let top = Row {
                left: pi1_map(&seq.inclusion)?,
                right: pi1_map(&seq.projection)?,
            };
            // one object: endomorphism f is the element f
            let p = pi1(&mk)?;
            let map = mk.cat().hom(Obj(0), Obj(0)).iter().map(|f| f.0).collect();
            (
                mk,
                top,
                MonoidMap {
                    domain: p,
                    codomain: m.clone(),
                    map,
                },
            )
        }
        _ => return Err(Error::contract("k must be 0 or 1")),
    };
    Ok(compare_rows(
        format!("π{which} rows of {}", mk.name()),
        top,
        bottom,
        middle,
    ))
}

/// The four equivalences relating group and purity properties of a monoid
/// to those of `i0(M)` and `i1(M)`.
#[derive(Debug, Clone)]
pub struct IffReport {
    pub monoid: String,
    pub group: [bool; 3],
    pub pure: [bool; 3],
}

impl IffReport {
    pub fn passed(&self) -> bool {
        self.group.iter().all(|&b| b == self.group[0])
            && self.pure.iter().all(|&b| b == self.pure[0])
    }
}

impl fmt::Display for IffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [g, g0, g1] = self.group;
        let [p, p0, p1] = self.pure;
        writeln!(
            f,
            "{}: group {g}, i0 is a 2-group {g0}, i1 is a 2-group {g1}",
            self.monoid
        )?;
        write!(f, "{}: pure {p}, i0 pure {p0}, i1 pure {p1}", self.monoid)
    }
}

pub fn iff_checks(m: &FinMonoid) -> Result<IffReport> {
    let m0 = i0(m);
    let m1 = i1(m)?;
    Ok(IffReport {
        monoid: m.name.clone(),
        group: [
            m.is_group(),
            twogroup::is_two_group(&m0).is_two_group,
            twogroup::is_two_group(&m1).is_two_group,
        ],
        pure: [
            m.is_pure(),
            twogroup::is_pure(&m0)?.pure,
            twogroup::is_pure(&m1)?.pure,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::moncat::validate_monoidal;

    fn brute_iso_exists(a: &FinMonoid, b: &FinMonoid) -> bool {
        // independent oracle: try every permutation
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        a.len() == b.len()
            && perms(a.len()).into_iter().any(|map| {
                MonoidMap {
                    domain: a.clone(),
                    codomain: b.clone(),
                    map,
                }
                .is_isomorphism()
            })
    }

    #[test]
    fn corpus_monoids_validate() {
        for m in models::monoids() {
            assert!(validate_monoid(&m).is_valid(), "{}", m.name);
        }
    }

    #[test]
    fn iso_search_agrees_with_permutation_oracle() {
        let ms = models::monoids();
        for a in &ms {
            for b in &ms {
                assert_eq!(
                    find_monoid_iso(a, b).is_some(),
                    brute_iso_exists(a, b),
                    "{} vs {}",
                    a.name,
                    b.name
                );
            }
        }
    }

    #[test]
    fn units_and_purification() {
        let (u, _) = monoid_units(&models::ml());
        assert!(find_monoid_iso(&u, &models::cyclic_group(2)).is_some());
        assert_eq!(monoid_units(&models::l()).0.len(), 1);
        assert_eq!(monoid_units(&models::cyclic_group(2)).0.len(), 2);
        assert_eq!(monoid_purify(&models::cyclic_group(2)).unwrap().0.len(), 1);
        let (q, p) = monoid_purify(&models::ml()).unwrap();
        assert!(find_monoid_iso(&q, &models::l()).is_some());
        assert!(p.is_homomorphism());
        let (q, p) = monoid_purify(&models::l()).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(p.map, vec![0, 1]);
    }

    #[test]
    fn purify_rejects_noncommutative() {
        let m = models::transformation_monoid();
        assert!(!m.commutative);
        assert!(matches!(monoid_purify(&m), Err(Error::Contract(_))));
        assert!(matches!(i1(&m), Err(Error::Contract(_))));
        assert!(validate_monoidal(&i0(&m)).unwrap().is_valid());
    }

    #[test]
    fn embeddings_round_trip() {
        for m in models::monoids() {
            let m0 = i0(&m);
            assert!(validate_monoidal(&m0).unwrap().is_valid());
            assert!(find_monoid_iso(&k(&m0).unwrap(), &m).is_some());
            assert!(find_monoid_iso(&pi0(&m0).unwrap(), &m).is_some());
            let m1 = i1(&m).unwrap();
            assert!(validate_monoidal(&m1).unwrap().is_valid(), "{}", m1.name());
            assert!(find_monoid_iso(&pi1(&m1).unwrap(), &m).is_some());
            assert_eq!(k(&m1).unwrap().len(), 1);
            assert_eq!(pi1(&m0).unwrap().len(), 1);
        }
        assert_eq!(i0(&FinMonoid::trivial()).cat().morphism_count(), 1);
    }

    #[test]
    fn comparison_rows() {
        let ml = Arc::new(i0(&models::ml()));
        let r = compare_k_sequences(&ml).unwrap();
        assert!(r.passed(), "{r}");
        assert!(find_monoid_iso(&r.top.left.domain, &models::cyclic_group(2)).is_some());
        assert!(find_monoid_iso(&r.top.right.codomain, &models::l()).is_some());
        for m in models::monoids() {
            for which in [0, 1] {
                let r = compare_pi_sequences(&m, which).unwrap();
                assert!(r.passed(), "{r}");
            }
            assert!(iff_checks(&m).unwrap().passed());
        }
    }

    #[test]
    fn functoriality_of_invariants() {
        let a = Arc::new(i0(&models::ml()));
        let b = Arc::new(i1(&models::cyclic_group(2)).unwrap());
        for f in crate::moncat::enumerate_monoidal_functors(&a, &b, &Budget::default()).unwrap() {
            let id = MonoidalFunctor::identity(&a);
            assert_eq!(
                k_map(&id.then(&f).unwrap()).unwrap().map,
                k_map(&f).unwrap().map
            );
            assert!(pi1_map(&f).unwrap().is_homomorphism());
            assert!(pi0_map(&f).unwrap().is_homomorphism());
        }
    }
}
