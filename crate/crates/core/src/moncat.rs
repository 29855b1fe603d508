//! Monoidal and symmetric monoidal structure over finite categories, strong
//! monoidal functors with explicit coherence data, and monoidal natural
//! transformations.
//!
//! Coherence data is never strictified. Direction conventions used
//! throughout: `e_F: I_N -> F(I_M)` and `m_{X,Y}: FX ⊗ FY -> F(X ⊗ Y)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{
    functor_constraints, functor_domain, same, validate_category, validate_functor, FinCategory,
    FinFunctor, Mor, NatTransformation, Obj,
};
use crate::report::{Law, ValidationReport};
use crate::search::{Budget, Problem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalStructure {
    pub base: Arc<FinCategory>,
    /// `tensor_obj[x * n + y] = x ⊗ y`
    pub tensor_obj: Vec<Obj>,
    /// `tensor_mor[f * m + g] = f ⊗ g`
    pub tensor_mor: Vec<Mor>,
    pub unit: Obj,
    /// `assoc[(x * n + y) * n + z] = a_{x,y,z}: (x ⊗ y) ⊗ z -> x ⊗ (y ⊗ z)`
    pub assoc: Vec<Mor>,
    /// `ℓ_x: I ⊗ x -> x`
    pub left_unitor: Vec<Mor>,
    /// `r_x: x ⊗ I -> x`
    pub right_unitor: Vec<Mor>,
    /// `b_{x,y}: x ⊗ y -> y ⊗ x`, indexed like `tensor_obj`.
    pub braiding: Option<Vec<Mor>>,
    pub symmetric: bool,
}

impl MonoidalStructure {
    /// A structure whose associator, unitors and (if `symmetric`) braiding
    /// are identities. Fails if the tensor is not strictly associative,
    /// unital and (when symmetric) commutative on objects.
    pub fn strict(
        base: Arc<FinCategory>,
        tensor_obj: Vec<Obj>,
        tensor_mor: Vec<Mor>,
        unit: Obj,
        symmetric: bool,
    ) -> Result<Self> {
        let n = base.object_count();
        let t = |x: usize, y: usize| tensor_obj[x * n + y].0;
        let mut assoc = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if t(t(x, y), z) != t(x, t(y, z)) {
                        return Err(Error::contract(
                            "strict associator requires (x⊗y)⊗z = x⊗(y⊗z)",
                        ));
                    }
                    assoc.push(base.identity(Obj(t(x, t(y, z)))));
                }
            }
        }
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for x in 0..n {
            if t(unit.0, x) != x || t(x, unit.0) != x {
                return Err(Error::contract("strict unitors require I⊗x = x = x⊗I"));
            }
            left.push(base.identity(Obj(x)));
            right.push(base.identity(Obj(x)));
        }
        let braiding = if symmetric {
            let mut b = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    if t(x, y) != t(y, x) {
                        return Err(Error::contract("identity braiding requires x⊗y = y⊗x"));
                    }
                    b.push(base.identity(Obj(t(x, y))));
                }
            }
            Some(b)
        } else {
            None
        };
        Ok(MonoidalStructure {
            base,
            tensor_obj,
            tensor_mor,
            unit,
            assoc,
            left_unitor: left,
            right_unitor: right,
            braiding,
            symmetric,
        })
    }

    /// A structure on a thin category: every tensor of morphisms and every
    /// structure map is the unique arrow of the required type.
    pub fn thin(
        base: Arc<FinCategory>,
        tensor_obj: Vec<Obj>,
        unit: Obj,
        symmetric: bool,
    ) -> Result<Self> {
        let n = base.object_count();
        let arrow = |x: Obj, y: Obj| -> Result<Mor> {
            match base.hom(x, y) {
                [f] => Ok(*f),
                [] => Err(Error::contract(format!(
                    "thin structure needs an arrow {} -> {}",
                    base.object_name(x),
                    base.object_name(y)
                ))),
                _ => Err(Error::contract(format!("{} is not thin", base.name()))),
            }
        };
        let t = |x: Obj, y: Obj| tensor_obj[x.0 * n + y.0];
        let mut tensor_mor = Vec::with_capacity(base.morphism_count().pow(2));
        for f in base.morphisms() {
            for g in base.morphisms() {
                tensor_mor.push(arrow(
                    t(base.source(f), base.source(g)),
                    t(base.target(f), base.target(g)),
                )?);
            }
        }
        let objs: Vec<Obj> = base.objects().collect();
        let mut assoc = Vec::with_capacity(n * n * n);
        for &x in &objs {
            for &y in &objs {
                for &z in &objs {
                    assoc.push(arrow(t(t(x, y), z), t(x, t(y, z)))?);
                }
            }
        }
        let left_unitor = objs
            .iter()
            .map(|&x| arrow(t(unit, x), x))
            .collect::<Result<_>>()?;
        let right_unitor = objs
            .iter()
            .map(|&x| arrow(t(x, unit), x))
            .collect::<Result<_>>()?;
        let braiding = if symmetric {
            let mut b = Vec::with_capacity(n * n);
            for &x in &objs {
                for &y in &objs {
                    b.push(arrow(t(x, y), t(y, x))?);
                }
            }
            Some(b)
        } else {
            None
        };
        Ok(MonoidalStructure {
            base,
            tensor_obj,
            tensor_mor,
            unit,
            assoc,
            left_unitor,
            right_unitor,
            braiding,
            symmetric,
        })
    }

    pub fn cat(&self) -> &FinCategory {
        &self.base
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    fn n(&self) -> usize {
        self.base.object_count()
    }

    pub fn tensor(&self, x: Obj, y: Obj) -> Obj {
        self.tensor_obj[x.0 * self.n() + y.0]
    }

    pub fn tensor_mor(&self, f: Mor, g: Mor) -> Mor {
        self.tensor_mor[f.0 * self.base.morphism_count() + g.0]
    }

    pub fn assoc(&self, x: Obj, y: Obj, z: Obj) -> Mor {
        let n = self.n();
        self.assoc[(x.0 * n + y.0) * n + z.0]
    }

    pub fn left_unitor(&self, x: Obj) -> Mor {
        self.left_unitor[x.0]
    }

    pub fn right_unitor(&self, x: Obj) -> Mor {
        self.right_unitor[x.0]
    }

    pub fn braid(&self, x: Obj, y: Obj) -> Option<Mor> {
        self.braiding.as_ref().map(|b| b[x.0 * self.n() + y.0])
    }

    pub fn id(&self, x: Obj) -> Mor {
        self.base.identity(x)
    }

    /// `f ⊗ id_x`
    pub fn whisker_right(&self, f: Mor, x: Obj) -> Mor {
        self.tensor_mor(f, self.id(x))
    }

    /// `id_x ⊗ f`
    pub fn whisker_left(&self, x: Obj, f: Mor) -> Mor {
        self.tensor_mor(self.id(x), f)
    }

    pub fn inv(&self, f: Mor) -> Option<Mor> {
        self.base.inverse(f)
    }

    /// Composite of a path in application order.
    pub fn path(&self, path: &[Mor]) -> Option<Mor> {
        self.base.compose_path(path)
    }

    pub(crate) fn obj_name(&self, x: Obj) -> &str {
        self.base.object_name(x)
    }

    pub(crate) fn mor_name(&self, f: Mor) -> &str {
        self.base.morphism_name(f)
    }

    pub(crate) fn tuple(&self, xs: &[Obj]) -> String {
        let names: Vec<&str> = xs.iter().map(|&x| self.obj_name(x)).collect();
        format!("({})", names.join(", "))
    }

    /// Referential integrity of every table. Violations here are reported
    /// as errors rather than axiom violations.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.n();
        let m = self.base.morphism_count();
        let size = |what: &str, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(Error::structural(format!(
                    "{what} has {got} entries, expected {want}"
                )))
            }
        };
        size("tensor_objects", self.tensor_obj.len(), n * n)?;
        size("tensor_morphisms", self.tensor_mor.len(), m * m)?;
        size("associator", self.assoc.len(), n * n * n)?;
        size("left_unitor", self.left_unitor.len(), n)?;
        size("right_unitor", self.right_unitor.len(), n)?;
        if self.unit.0 >= n {
            return Err(Error::structural("unit is dangling"));
        }
        if let Some(x) = self.tensor_obj.iter().find(|x| x.0 >= n) {
            return Err(Error::structural(format!(
                "tensor_objects entry {x} is dangling"
            )));
        }
        let maps = [
            ("tensor_morphisms", &self.tensor_mor),
            ("associator", &self.assoc),
            ("left_unitor", &self.left_unitor),
            ("right_unitor", &self.right_unitor),
        ];
        for (what, table) in maps {
            if let Some(f) = table.iter().find(|f| f.0 >= m) {
                return Err(Error::structural(format!("{what} entry {f} is dangling")));
            }
        }
        match &self.braiding {
            Some(b) => {
                size("braiding", b.len(), n * n)?;
                if let Some(f) = b.iter().find(|f| f.0 >= m) {
                    return Err(Error::structural(format!("braiding entry {f} is dangling")));
                }
            }
            None if self.symmetric => {
                return Err(Error::structural(
                    "symmetric structure is missing its braiding",
                ))
            }
            None => {}
        }
        Ok(())
    }
}

/// Checks bifunctoriality, naturality and invertibility of the structure
/// maps, pentagon, triangle, both hexagons and the symmetry involution on
/// every object tuple.
pub fn validate_monoidal(m: &MonoidalStructure) -> Result<ValidationReport> {
    m.check_structure()?;
    let c = m.cat();
    let mut report = validate_category(c);

    for f in c.morphisms() {
        for g in c.morphisms() {
            let fg = m.tensor_mor(f, g);
            if c.source(fg) != m.tensor(c.source(f), c.source(g))
                || c.target(fg) != m.tensor(c.target(f), c.target(g))
            {
                report.push(Law::TensorTyping, c.describe_pair(f, g));
            }
        }
    }
    for x in c.objects() {
        for y in c.objects() {
            if m.tensor_mor(m.id(x), m.id(y)) != m.id(m.tensor(x, y)) {
                report.push(Law::TensorIdentity, m.tuple(&[x, y]));
            }
        }
    }
    let entries = c.composition_entries();
    for &(f2, f1, f21) in &entries {
        for &(g2, g1, g21) in &entries {
            let lhs = m.tensor_mor(f21, g21);
            let rhs = c.compose(m.tensor_mor(f2, g2), m.tensor_mor(f1, g1));
            if Some(lhs) != rhs {
                report.push(
                    Law::Interchange,
                    format!(
                        "({}∘{}) ⊗ ({}∘{})",
                        c.morphism_name(f2),
                        c.morphism_name(f1),
                        c.morphism_name(g2),
                        c.morphism_name(g1)
                    ),
                );
            }
        }
    }

    let objs: Vec<Obj> = c.objects().collect();
    let typed = |f: Mor, s: Obj, t: Obj| c.source(f) == s && c.target(f) == t;
    for &x in &objs {
        for &y in &objs {
            for &z in &objs {
                let a = m.assoc(x, y, z);
                if !typed(a, m.tensor(m.tensor(x, y), z), m.tensor(x, m.tensor(y, z))) {
                    report.push(
                        Law::StructureTyping,
                        format!("associator at {}", m.tuple(&[x, y, z])),
                    );
                } else if !c.is_iso(a) {
                    report.push(
                        Law::StructureInvertible,
                        format!("associator at {}", m.tuple(&[x, y, z])),
                    );
                }
            }
        }
        let l = m.left_unitor(x);
        if !typed(l, m.tensor(m.unit, x), x) {
            report.push(
                Law::StructureTyping,
                format!("left unitor at {}", m.obj_name(x)),
            );
        } else if !c.is_iso(l) {
            report.push(
                Law::StructureInvertible,
                format!("left unitor at {}", m.obj_name(x)),
            );
        }
        let r = m.right_unitor(x);
        if !typed(r, m.tensor(x, m.unit), x) {
            report.push(
                Law::StructureTyping,
                format!("right unitor at {}", m.obj_name(x)),
            );
        } else if !c.is_iso(r) {
            report.push(
                Law::StructureInvertible,
                format!("right unitor at {}", m.obj_name(x)),
            );
        }
        for &y in &objs {
            if let Some(b) = m.braid(x, y) {
                if !typed(b, m.tensor(x, y), m.tensor(y, x)) {
                    report.push(
                        Law::StructureTyping,
                        format!("braiding at {}", m.tuple(&[x, y])),
                    );
                } else if !c.is_iso(b) {
                    report.push(
                        Law::StructureInvertible,
                        format!("braiding at {}", m.tuple(&[x, y])),
                    );
                }
            }
        }
    }

    let morphisms: Vec<Mor> = c.morphisms().collect();
    for &f in &morphisms {
        let (x, x2) = (c.source(f), c.target(f));
        if m.path(&[m.whisker_left(m.unit, f), m.left_unitor(x2)]) != m.path(&[m.left_unitor(x), f])
        {
            report.push(Law::LeftUnitorNaturality, c.morphism_name(f).to_string());
        }
        if m.path(&[m.whisker_right(f, m.unit), m.right_unitor(x2)])
            != m.path(&[m.right_unitor(x), f])
        {
            report.push(Law::RightUnitorNaturality, c.morphism_name(f).to_string());
        }
        for &g in &morphisms {
            let (y, y2) = (c.source(g), c.target(g));
            if let (Some(b), Some(b2)) = (m.braid(x, y), m.braid(x2, y2)) {
                if m.path(&[m.tensor_mor(f, g), b2]) != m.path(&[b, m.tensor_mor(g, f)]) {
                    report.push(Law::BraidingNaturality, c.describe_pair(f, g));
                }
            }
            for &h in &morphisms {
                let (z, z2) = (c.source(h), c.target(h));
                let lhs = m.path(&[m.tensor_mor(m.tensor_mor(f, g), h), m.assoc(x2, y2, z2)]);
                let rhs = m.path(&[m.assoc(x, y, z), m.tensor_mor(f, m.tensor_mor(g, h))]);
                if lhs != rhs {
                    report.push(
                        Law::AssociatorNaturality,
                        format!(
                            "({}, {}, {})",
                            c.morphism_name(f),
                            c.morphism_name(g),
                            c.morphism_name(h)
                        ),
                    );
                }
            }
        }
    }

    for &w in &objs {
        for &x in &objs {
            for &y in &objs {
                for &z in &objs {
                    let lhs =
                        m.path(&[m.assoc(m.tensor(w, x), y, z), m.assoc(w, x, m.tensor(y, z))]);
                    let rhs = m.path(&[
                        m.whisker_right(m.assoc(w, x, y), z),
                        m.assoc(w, m.tensor(x, y), z),
                        m.whisker_left(w, m.assoc(x, y, z)),
                    ]);
                    if lhs != rhs {
                        report.push(Law::Pentagon, m.tuple(&[w, x, y, z]));
                    }
                }
            }
        }
    }
    for &x in &objs {
        for &y in &objs {
            let lhs = m.path(&[m.assoc(x, m.unit, y), m.whisker_left(x, m.left_unitor(y))]);
            if lhs != Some(m.whisker_right(m.right_unitor(x), y)) {
                report.push(Law::Triangle, m.tuple(&[x, y]));
            }
        }
    }

    if m.braiding.is_some() {
        let b = |x, y| m.braid(x, y).expect("braiding present");
        for &x in &objs {
            for &y in &objs {
                for &z in &objs {
                    let lhs = m.path(&[m.assoc(x, y, z), b(x, m.tensor(y, z)), m.assoc(y, z, x)]);
                    let rhs = m.path(&[
                        m.whisker_right(b(x, y), z),
                        m.assoc(y, x, z),
                        m.whisker_left(y, b(x, z)),
                    ]);
                    if lhs != rhs {
                        report.push(Law::Hexagon, m.tuple(&[x, y, z]));
                    }
                    let inv = |f: Mor| m.inv(f);
                    let lhs = inv(m.assoc(x, y, z))
                        .zip(inv(m.assoc(z, x, y)))
                        .and_then(|(a1, a2)| m.path(&[a1, b(m.tensor(x, y), z), a2]));
                    let rhs = inv(m.assoc(x, z, y)).and_then(|a| {
                        m.path(&[m.whisker_left(x, b(y, z)), a, m.whisker_right(b(x, z), y)])
                    });
                    if lhs != rhs || lhs.is_none() {
                        report.push(Law::InverseHexagon, m.tuple(&[x, y, z]));
                    }
                }
            }
        }
        if m.symmetric {
            for &x in &objs {
                for &y in &objs {
                    if m.path(&[b(x, y), b(y, x)]) != Some(m.id(m.tensor(x, y))) {
                        report.push(Law::Symmetry, m.tuple(&[x, y]));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalFunctor {
    pub domain: Arc<MonoidalStructure>,
    pub codomain: Arc<MonoidalStructure>,
    pub object_map: Vec<Obj>,
    pub morphism_map: Vec<Mor>,
    /// `e: I_N -> F(I_M)`
    pub unit_comparison: Mor,
    /// `m_{x,y}: Fx ⊗ Fy -> F(x ⊗ y)`, indexed `x * |obj(M)| + y`.
    pub tensor_comparison: Vec<Mor>,
}

impl MonoidalFunctor {
    pub fn identity(m: &Arc<MonoidalStructure>) -> Self {
        let n = m.cat().object_count();
        MonoidalFunctor {
            domain: m.clone(),
            codomain: m.clone(),
            object_map: m.cat().objects().collect(),
            morphism_map: m.cat().morphisms().collect(),
            unit_comparison: m.id(m.unit),
            tensor_comparison: (0..n * n)
                .map(|i| m.id(m.tensor(Obj(i / n), Obj(i % n))))
                .collect(),
        }
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.object_map[x.0]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.morphism_map[f.0]
    }

    pub fn e(&self) -> Mor {
        self.unit_comparison
    }

    pub fn m(&self, x: Obj, y: Obj) -> Mor {
        self.tensor_comparison[x.0 * self.domain.cat().object_count() + y.0]
    }

    pub fn underlying(&self) -> FinFunctor {
        FinFunctor {
            domain: self.domain.base.clone(),
            codomain: self.codomain.base.clone(),
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
        }
    }

    /// `other ∘ self`, with `e = other(e_self) ∘ e_other` and
    /// `m_{x,y} = other(m_self;x,y) ∘ m_other;Fx,Fy`.
    pub fn then(&self, other: &MonoidalFunctor) -> Result<MonoidalFunctor> {
        if !same(&self.codomain, &other.domain) {
            return Err(Error::contract(format!(
                "cannot compose monoidal functors: codomain {} differs from domain {}",
                self.codomain.name(),
                other.domain.name()
            )));
        }
        let p = &*other.codomain;
        let e = p
            .path(&[other.e(), other.mor(self.e())])
            .ok_or_else(|| Error::contract("unit comparison maps are not composable"))?;
        let n = self.domain.cat().object_count();
        let mut m = Vec::with_capacity(n * n);
        for i in 0..n * n {
            let (x, y) = (Obj(i / n), Obj(i % n));
            let mxy = p
                .path(&[other.m(self.obj(x), self.obj(y)), other.mor(self.m(x, y))])
                .ok_or_else(|| Error::contract("tensor comparison maps are not composable"))?;
            m.push(mxy);
        }
        Ok(MonoidalFunctor {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            object_map: self.object_map.iter().map(|&x| other.obj(x)).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| other.mor(f)).collect(),
            unit_comparison: e,
            tensor_comparison: m,
        })
    }

    /// Equal underlying maps and equal coherence data between equal structures.
    pub fn same_as(&self, other: &MonoidalFunctor) -> bool {
        self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
            && self.unit_comparison == other.unit_comparison
            && self.tensor_comparison == other.tensor_comparison
            && same(&self.domain, &other.domain)
            && same(&self.codomain, &other.codomain)
    }

    /// Identity coherence maps (only meaningful if F is strict on objects).
    pub fn is_strict(&self) -> bool {
        let n = &*self.codomain;
        n.cat().is_identity(self.unit_comparison)
            && self
                .tensor_comparison
                .iter()
                .all(|&f| n.cat().is_identity(f))
    }
}

pub fn compose_monoidal_functors(
    f: &MonoidalFunctor,
    g: &MonoidalFunctor,
) -> Result<MonoidalFunctor> {
    f.then(g)
}

/// All objects to `I_N`, all morphisms to its identity, `e = id` and
/// `m_{x,y} = ℓ_{I_N}`.
pub fn constant_unit_functor(
    m: &Arc<MonoidalStructure>,
    n: &Arc<MonoidalStructure>,
) -> MonoidalFunctor {
    let k = m.cat().object_count();
    MonoidalFunctor {
        domain: m.clone(),
        codomain: n.clone(),
        object_map: vec![n.unit; k],
        morphism_map: vec![n.id(n.unit); m.cat().morphism_count()],
        unit_comparison: n.id(n.unit),
        tensor_comparison: vec![n.left_unitor(n.unit); k * k],
    }
}

pub fn validate_monoidal_functor(f: &MonoidalFunctor) -> Result<ValidationReport> {
    let (dm, cm) = (&*f.domain, &*f.codomain);
    dm.check_structure()?;
    cm.check_structure()?;
    let (a, b) = (dm.cat(), cm.cat());
    let n = a.object_count();
    if f.tensor_comparison.len() != n * n || f.unit_comparison.0 >= b.morphism_count() {
        return Err(Error::structural(
            "coherence tables do not match the domain",
        ));
    }
    if f.tensor_comparison
        .iter()
        .any(|g| g.0 >= b.morphism_count())
    {
        return Err(Error::structural("tensor comparison entry is dangling"));
    }
    let mut report = validate_functor(&f.underlying());
    if !report.is_valid() {
        return Ok(report);
    }
    let typed = |g: Mor, s: Obj, t: Obj| b.source(g) == s && b.target(g) == t;
    let e = f.e();
    if !typed(e, cm.unit, f.obj(dm.unit)) {
        report.push(Law::CoherenceTyping, "e");
    } else if !b.is_iso(e) {
        report.push(Law::CoherenceInvertible, "e");
    }
    let objs: Vec<Obj> = a.objects().collect();
    for &x in &objs {
        for &y in &objs {
            let mxy = f.m(x, y);
            if !typed(mxy, cm.tensor(f.obj(x), f.obj(y)), f.obj(dm.tensor(x, y))) {
                report.push(Law::CoherenceTyping, format!("m at {}", dm.tuple(&[x, y])));
            } else if !b.is_iso(mxy) {
                report.push(
                    Law::CoherenceInvertible,
                    format!("m at {}", dm.tuple(&[x, y])),
                );
            }
        }
    }
    if !report.is_valid() {
        return Ok(report);
    }
    for g in a.morphisms() {
        for h in a.morphisms() {
            let (x, x2, y, y2) = (a.source(g), a.target(g), a.source(h), a.target(h));
            let lhs = cm.path(&[f.m(x, y), f.mor(dm.tensor_mor(g, h))]);
            let rhs = cm.path(&[cm.tensor_mor(f.mor(g), f.mor(h)), f.m(x2, y2)]);
            if lhs != rhs {
                report.push(Law::CoherenceNaturality, a.describe_pair(g, h));
            }
        }
    }
    for &x in &objs {
        for &y in &objs {
            for &z in &objs {
                let (fx, fy, fz) = (f.obj(x), f.obj(y), f.obj(z));
                let lhs = cm.path(&[
                    cm.assoc(fx, fy, fz),
                    cm.whisker_left(fx, f.m(y, z)),
                    f.m(x, dm.tensor(y, z)),
                ]);
                let rhs = cm.path(&[
                    cm.whisker_right(f.m(x, y), fz),
                    f.m(dm.tensor(x, y), z),
                    f.mor(dm.assoc(x, y, z)),
                ]);
                if lhs != rhs {
                    report.push(Law::CoherenceAssociativity, dm.tuple(&[x, y, z]));
                }
            }
        }
        let fx = f.obj(x);
        let lhs = cm.path(&[
            cm.whisker_right(e, fx),
            f.m(dm.unit, x),
            f.mor(dm.left_unitor(x)),
        ]);
        if lhs != Some(cm.left_unitor(fx)) {
            report.push(Law::CoherenceLeftUnit, dm.obj_name(x).to_string());
        }
        let lhs = cm.path(&[
            cm.whisker_left(fx, e),
            f.m(x, dm.unit),
            f.mor(dm.right_unitor(x)),
        ]);
        if lhs != Some(cm.right_unitor(fx)) {
            report.push(Law::CoherenceRightUnit, dm.obj_name(x).to_string());
        }
    }
    if dm.braiding.is_some() && cm.braiding.is_some() {
        for &x in &objs {
            for &y in &objs {
                let bm = dm.braid(x, y).expect("domain braided");
                let bn = cm.braid(f.obj(x), f.obj(y)).expect("codomain braided");
                if cm.path(&[f.m(x, y), f.mor(bm)]) != cm.path(&[bn, f.m(y, x)]) {
                    report.push(Law::CoherenceBraiding, dm.tuple(&[x, y]));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalNatTransformation {
    pub source: MonoidalFunctor,
    pub target: MonoidalFunctor,
    pub components: Vec<Mor>,
}

impl MonoidalNatTransformation {
    pub fn underlying(&self) -> NatTransformation {
        NatTransformation {
            source: self.source.underlying(),
            target: self.target.underlying(),
            components: self.components.clone(),
        }
    }
}

/// Naturality plus `φ_{x⊗y} ∘ m^F = m^G ∘ (φ_x ⊗ φ_y)` and `φ_I ∘ e_F = e_G`.
pub fn validate_monoidal_nat(t: &MonoidalNatTransformation) -> Result<ValidationReport> {
    if !same(&t.source.domain, &t.target.domain) || !same(&t.source.codomain, &t.target.codomain) {
        return Err(Error::contract(
            "monoidal natural transformations need parallel functors",
        ));
    }
    let (dm, cm) = (&*t.source.domain, &*t.source.codomain);
    if t.components.len() != dm.cat().object_count()
        || t.components
            .iter()
            .any(|c| c.0 >= cm.cat().morphism_count())
    {
        return Err(Error::structural(
            "component table does not match the domain",
        ));
    }
    let mut report = crate::fincat::validate_natural(&t.underlying())?;
    if !report.is_valid() {
        return Ok(report);
    }
    let phi = |x: Obj| t.components[x.0];
    for x in dm.cat().objects() {
        for y in dm.cat().objects() {
            let lhs = cm.path(&[t.source.m(x, y), phi(dm.tensor(x, y))]);
            let rhs = cm.path(&[cm.tensor_mor(phi(x), phi(y)), t.target.m(x, y)]);
            if lhs != rhs {
                report.push(Law::TensorMonoidality, dm.tuple(&[x, y]));
            }
        }
    }
    if cm.path(&[t.source.e(), phi(dm.unit)]) != Some(t.target.e()) {
        report.push(Law::UnitMonoidality, dm.obj_name(dm.unit).to_string());
    }
    Ok(report)
}

pub(crate) fn require_valid_monoidal(m: &MonoidalStructure) -> Result<()> {
    let report = validate_monoidal(m)?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::contract(format!(
            "{} is not a valid monoidal category: {}",
            m.name(),
            report.violations[0]
        )))
    }
}

/// Every strong monoidal functor `m -> n` (symmetric when both sides are
/// braided), including every admissible choice of coherence data.
/// Ordered lexicographically by (object map, morphism map, e, m).
pub fn enumerate_monoidal_functors(
    m: &Arc<MonoidalStructure>,
    n: &Arc<MonoidalStructure>,
    budget: &Budget,
) -> Result<Vec<MonoidalFunctor>> {
    require_valid_monoidal(m)?;
    require_valid_monoidal(n)?;
    let (dm, cm) = (&**m, &**n);
    let (a, b) = (dm.cat(), cm.cat());
    let k = a.object_count();
    let fvars = k + a.morphism_count();
    let e_var = fvars;
    let m_var = |x: Obj, y: Obj| fvars + 1 + x.0 * k + y.0;
    let vars = fvars + 1 + k * k;

    let domain = move |var: usize, v: &[usize]| -> Vec<usize> {
        if var < fvars {
            return functor_domain(a, b, var, v, 0);
        }
        let fo = |x: Obj| Obj(v[x.0]);
        if var == e_var {
            return b
                .isos(cm.unit, fo(dm.unit))
                .into_iter()
                .map(|f| f.0)
                .collect();
        }
        let i = var - fvars - 1;
        let (x, y) = (Obj(i / k), Obj(i % k));
        b.isos(cm.tensor(fo(x), fo(y)), fo(dm.tensor(x, y)))
            .into_iter()
            .map(|f| f.0)
            .collect()
    };
    let mut problem = Problem::new(vars, domain);
    functor_constraints(&mut problem, a, b, 0);

    let fm = move |v: &[usize], f: Mor| Mor(v[k + f.0]);
    let fo = move |v: &[usize], x: Obj| Obj(v[x.0]);
    let mv = move |v: &[usize], x: Obj, y: Obj| Mor(v[m_var(x, y)]);

    for g in a.morphisms() {
        for h in a.morphisms() {
            let (x, x2, y, y2) = (a.source(g), a.target(g), a.source(h), a.target(h));
            let gh = dm.tensor_mor(g, h);
            problem.check(m_var(x, y).max(m_var(x2, y2)), move |v| {
                cm.path(&[mv(v, x, y), fm(v, gh)])
                    == cm.path(&[cm.tensor_mor(fm(v, g), fm(v, h)), mv(v, x2, y2)])
            });
        }
    }
    for x in a.objects() {
        for y in a.objects() {
            for z in a.objects() {
                let (xy, yz) = (dm.tensor(x, y), dm.tensor(y, z));
                let last = [m_var(x, y), m_var(y, z), m_var(x, yz), m_var(xy, z)]
                    .into_iter()
                    .max()
                    .unwrap();
                let axyz = dm.assoc(x, y, z);
                problem.check(last, move |v| {
                    let (fx, fy, fz) = (fo(v, x), fo(v, y), fo(v, z));
                    cm.path(&[
                        cm.assoc(fx, fy, fz),
                        cm.whisker_left(fx, mv(v, y, z)),
                        mv(v, x, yz),
                    ]) == cm.path(&[cm.whisker_right(mv(v, x, y), fz), mv(v, xy, z), fm(v, axyz)])
                });
            }
        }
        let (l, r) = (dm.left_unitor(x), dm.right_unitor(x));
        let i = dm.unit;
        problem.check(m_var(i, x), move |v| {
            let fx = fo(v, x);
            cm.path(&[cm.whisker_right(Mor(v[e_var]), fx), mv(v, i, x), fm(v, l)])
                == Some(cm.left_unitor(fx))
        });
        problem.check(m_var(x, i), move |v| {
            let fx = fo(v, x);
            cm.path(&[cm.whisker_left(fx, Mor(v[e_var])), mv(v, x, i), fm(v, r)])
                == Some(cm.right_unitor(fx))
        });
    }
    if dm.braiding.is_some() && cm.braiding.is_some() {
        for x in a.objects() {
            for y in a.objects() {
                let bm = dm.braid(x, y).expect("domain braided");
                problem.check(m_var(x, y).max(m_var(y, x)), move |v| {
                    let bn = cm.braid(fo(v, x), fo(v, y)).expect("codomain braided");
                    cm.path(&[mv(v, x, y), fm(v, bm)]) == cm.path(&[bn, mv(v, y, x)])
                });
            }
        }
    }

    let solutions = problem.solve(budget)?;
    Ok(solutions
        .into_iter()
        .map(|v| MonoidalFunctor {
            domain: m.clone(),
            codomain: n.clone(),
            object_map: v[..k].iter().map(|&x| Obj(x)).collect(),
            morphism_map: v[k..fvars].iter().map(|&f| Mor(f)).collect(),
            unit_comparison: Mor(v[e_var]),
            tensor_comparison: v[fvars + 1..].iter().map(|&f| Mor(f)).collect(),
        })
        .collect())
}

/// The monoidal subcategory on `objects` (which must be closed under the
/// tensor and contain the unit) with the morphisms accepted by `keep`,
/// together with its inclusion. Objects and morphisms keep their names and
/// relative order.
pub fn substructure(
    m: &Arc<MonoidalStructure>,
    name: impl Into<String>,
    objects: &[Obj],
    keep: impl Fn(Mor) -> bool,
) -> Result<(Arc<MonoidalStructure>, MonoidalFunctor)> {
    let c = m.cat();
    let mut obj_index = vec![None; c.object_count()];
    for (i, &x) in objects.iter().enumerate() {
        obj_index[x.0] = Some(Obj(i));
    }
    let kept: Vec<Mor> = c
        .morphisms()
        .filter(|&f| {
            obj_index[c.source(f).0].is_some()
                && obj_index[c.target(f).0].is_some()
                && (c.is_identity(f) || keep(f))
        })
        .collect();
    let mut mor_index = vec![None; c.morphism_count()];
    for (i, &f) in kept.iter().enumerate() {
        mor_index[f.0] = Some(Mor(i));
    }
    let not_closed =
        |what: &str| Error::contract(format!("substructure is not closed under {what}"));
    let oi = |x: Obj| obj_index[x.0].ok_or_else(|| not_closed("the tensor"));
    let mi = |f: Mor| mor_index[f.0].ok_or_else(|| not_closed("the structure maps"));

    let morphisms = kept
        .iter()
        .map(|&f| {
            Ok((
                c.morphism_name(f).to_string(),
                oi(c.source(f))?,
                oi(c.target(f))?,
            ))
        })
        .collect::<Result<_>>()?;
    let identity = objects
        .iter()
        .map(|&x| mi(c.identity(x)))
        .collect::<Result<_>>()?;
    let mut compose = Vec::new();
    for &g in &kept {
        for &f in &kept {
            if let Some(h) = c.compose(g, f) {
                compose.push((
                    mi(g)?,
                    mi(f)?,
                    mi(h).map_err(|_| not_closed("composition"))?,
                ));
            }
        }
    }
    let names = objects
        .iter()
        .map(|&x| c.object_name(x).to_string())
        .collect();
    let base = Arc::new(FinCategory::new(name, names, morphisms, identity, compose)?);

    let mut tensor_obj = Vec::new();
    let mut assoc = Vec::new();
    let mut braiding = m.braiding.as_ref().map(|_| Vec::new());
    for &x in objects {
        for &y in objects {
            tensor_obj.push(oi(m.tensor(x, y))?);
            if let (Some(b), Some(bxy)) = (braiding.as_mut(), m.braid(x, y)) {
                b.push(mi(bxy)?);
            }
            for &z in objects {
                assoc.push(mi(m.assoc(x, y, z))?);
            }
        }
    }
    let mut tensor_mor = Vec::new();
    for &f in &kept {
        for &g in &kept {
            tensor_mor.push(mi(m.tensor_mor(f, g))?);
        }
    }
    let sub = Arc::new(MonoidalStructure {
        base,
        tensor_obj,
        tensor_mor,
        unit: oi(m.unit)?,
        assoc,
        left_unitor: objects
            .iter()
            .map(|&x| mi(m.left_unitor(x)))
            .collect::<Result<_>>()?,
        right_unitor: objects
            .iter()
            .map(|&x| mi(m.right_unitor(x)))
            .collect::<Result<_>>()?,
        braiding,
        symmetric: m.symmetric,
    });
    let k = objects.len();
    let inclusion = MonoidalFunctor {
        domain: sub.clone(),
        codomain: m.clone(),
        object_map: objects.to_vec(),
        morphism_map: kept.clone(),
        unit_comparison: m.id(m.unit),
        tensor_comparison: (0..k * k)
            .map(|i| m.id(m.tensor(objects[i / k], objects[i % k])))
            .collect(),
    };
    Ok((sub, inclusion))
}

/// Lifts `f` along an inclusion `j` (injective on objects and morphisms,
/// identity coherence maps) when every object, morphism and coherence map
/// of `f` lies in the image of `j`.
pub fn lift_through(f: &MonoidalFunctor, j: &MonoidalFunctor) -> Option<MonoidalFunctor> {
    if !same(&f.codomain, &j.codomain) {
        return None;
    }
    let n = j.codomain.cat();
    let mut obj_pre = vec![None; n.object_count()];
    for (i, &x) in j.object_map.iter().enumerate() {
        obj_pre[x.0] = Some(Obj(i));
    }
    let mut mor_pre = vec![None; n.morphism_count()];
    for (i, &g) in j.morphism_map.iter().enumerate() {
        mor_pre[g.0] = Some(Mor(i));
    }
    let object_map = f
        .object_map
        .iter()
        .map(|x| obj_pre[x.0])
        .collect::<Option<Vec<_>>>()?;
    let morphism_map = f
        .morphism_map
        .iter()
        .map(|g| mor_pre[g.0])
        .collect::<Option<Vec<_>>>()?;
    let tensor_comparison = f
        .tensor_comparison
        .iter()
        .map(|g| mor_pre[g.0])
        .collect::<Option<Vec<_>>>()?;
    Some(MonoidalFunctor {
        domain: f.domain.clone(),
        codomain: j.domain.clone(),
        object_map,
        morphism_map,
        unit_comparison: mor_pre[f.unit_comparison.0]?,
        tensor_comparison,
    })
}

/// Distinct underlying functors among `functors`, first occurrence order.
pub fn distinct_underlying(functors: &[MonoidalFunctor]) -> Vec<MonoidalFunctor> {
    let mut out: Vec<MonoidalFunctor> = Vec::new();
    for f in functors {
        if !out
            .iter()
            .any(|g| g.object_map == f.object_map && g.morphism_map == f.morphism_map)
        {
            out.push(f.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn c2() -> crate::invariants::FinMonoid {
        models::cyclic_group(2)
    }

    #[test]
    fn corpus_structures_validate() {
        for m in [
            models::i0(&c2()),
            models::i1(&c2()).unwrap(),
            models::poset2(),
            models::terminal(),
            models::i0(&models::ml()),
        ] {
            let report = validate_monoidal(&m).unwrap();
            assert!(report.is_valid(), "{}: {report}", m.name());
        }
    }

    #[test]
    fn incoherent_braiding_is_reported() {
        // i0(C2) has only identities, so enlarge it to i1(C2) where a
        // non-identity braiding component exists
        let mut m = models::i1(&c2()).unwrap();
        let minus = m.cat().find_morphism("-1").unwrap();
        m.braiding.as_mut().unwrap()[0] = minus;
        let report = validate_monoidal(&m).unwrap();
        assert!(
            report.has(Law::Hexagon) || report.has(Law::Symmetry),
            "{report}"
        );
    }

    #[test]
    fn missing_braiding_is_structural() {
        let mut m = models::i0(&c2());
        m.braiding = None;
        assert!(matches!(validate_monoidal(&m), Err(Error::Structural(_))));
    }

    #[test]
    fn identity_and_constant_functors_are_monoidal() {
        let m = Arc::new(models::i0(&c2()));
        let n = Arc::new(models::i0(&models::ml()));
        assert!(validate_monoidal_functor(&MonoidalFunctor::identity(&m))
            .unwrap()
            .is_valid());
        let k = constant_unit_functor(&m, &n);
        assert!(validate_monoidal_functor(&k).unwrap().is_valid());
        let t = Arc::new(models::terminal());
        let to_terminal = constant_unit_functor(&n, &t);
        let all = enumerate_monoidal_functors(&n, &t, &Budget::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].same_as(&to_terminal));
        let i1 = Arc::new(models::i1(&c2()).unwrap());
        let k = constant_unit_functor(&m, &i1);
        assert!(k.morphism_map.iter().all(|&f| i1.cat().is_identity(f)));
        assert!(validate_monoidal_functor(&k).unwrap().is_valid());
    }

    #[test]
    fn composition_is_unital_and_associative() {
        let m = Arc::new(models::i0(&models::ml()));
        let i1 = Arc::new(models::i1(&c2()).unwrap());
        let fs = enumerate_monoidal_functors(&m, &m, &Budget::default()).unwrap();
        let gs = enumerate_monoidal_functors(&m, &i1, &Budget::default()).unwrap();
        let hs = enumerate_monoidal_functors(&i1, &i1, &Budget::default()).unwrap();
        assert!(!fs.is_empty() && !gs.is_empty() && !hs.is_empty());
        for f in &fs {
            assert!(f.then(&MonoidalFunctor::identity(&m)).unwrap().same_as(f));
            assert!(MonoidalFunctor::identity(&m).then(f).unwrap().same_as(f));
            for g in &gs {
                let fg = f.then(g).unwrap();
                assert!(validate_monoidal_functor(&fg).unwrap().is_valid());
                for h in &hs {
                    let left = fg.then(h).unwrap();
                    let right = f.then(&g.then(h).unwrap()).unwrap();
                    assert!(left.same_as(&right));
                }
            }
        }
    }

    #[test]
    fn composing_mismatched_functors_is_a_contract_error() {
        let m = Arc::new(models::i0(&c2()));
        let n = Arc::new(models::poset2());
        let f = MonoidalFunctor::identity(&m);
        let g = MonoidalFunctor::identity(&n);
        assert!(matches!(f.then(&g), Err(Error::Contract(_))));
    }

    #[test]
    fn enumerated_functors_all_validate() {
        let corpus = [
            models::i0(&c2()),
            models::i1(&c2()).unwrap(),
            models::poset2(),
            models::i0(&models::cyclic_group(3)),
        ];
        for a in &corpus {
            for b in &corpus {
                let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
                for f in enumerate_monoidal_functors(&a, &b, &Budget::default()).unwrap() {
                    let r = validate_monoidal_functor(&f).unwrap();
                    assert!(r.is_valid(), "{} -> {}: {r}", a.name(), b.name());
                }
            }
        }
    }

    #[test]
    fn monoidal_nat_identity_and_swap() {
        let m = Arc::new(models::i1(&c2()).unwrap());
        let id = MonoidalFunctor::identity(&m);
        let t = MonoidalNatTransformation {
            source: id.clone(),
            target: id.clone(),
            components: vec![m.id(m.unit)],
        };
        assert!(validate_monoidal_nat(&t).unwrap().is_valid());
        // -1 is natural (C2 is commutative) but not monoidal: (-1)(-1) ≠ -1
        let minus = m.cat().find_morphism("-1").unwrap();
        let t = MonoidalNatTransformation {
            source: id.clone(),
            target: id,
            components: vec![minus],
        };
        let r = validate_monoidal_nat(&t).unwrap();
        assert!(
            r.has(Law::TensorMonoidality) || r.has(Law::UnitMonoidality),
            "{r}"
        );
        assert!(!r.has(Law::Naturality));
    }

    /// `C2 × BC2`: objects ±1, each with automorphisms ±1.
    fn c2_times_bc2() -> Arc<MonoidalStructure> {
        // morphism 2x + s lives on object x with sign s
        let morphisms = (0..4)
            .map(|i| {
                (
                    format!("{}{}", ["1", "-1"][i / 2], ["", "·-1"][i % 2]),
                    Obj(i / 2),
                    Obj(i / 2),
                )
            })
            .collect();
        let base = FinCategory::from_fn(
            "C2×BC2",
            vec!["1".into(), "-1".into()],
            morphisms,
            vec![Mor(0), Mor(2)],
            |g, f| Mor(2 * (g.0 / 2) + (g.0 % 2 ^ f.0 % 2)),
        )
        .unwrap();
        let tensor_obj = (0..4).map(|i| Obj((i / 2) ^ (i % 2))).collect();
        let tensor_mor = (0..16)
            .map(|i| {
                let (f, g) = (i / 4, i % 4);
                Mor(2 * ((f / 2) ^ (g / 2)) + ((f % 2) ^ (g % 2)))
            })
            .collect();
        Arc::new(
            MonoidalStructure::strict(Arc::new(base), tensor_obj, tensor_mor, Obj(0), true)
                .unwrap(),
        )
    }

    #[test]
    fn component_swap_on_two_objects_is_not_monoidal() {
        let m = c2_times_bc2();
        assert!(validate_monoidal(&m).unwrap().is_valid());
        let id = MonoidalFunctor::identity(&m);
        // identity components swapped for the non-trivial automorphism at the unit
        let t = MonoidalNatTransformation {
            source: id.clone(),
            target: id,
            components: vec![Mor(1), Mor(2)],
        };
        let report = validate_monoidal_nat(&t).unwrap();
        assert!(!report.has(Law::Naturality));
        assert!(report.has(Law::UnitMonoidality), "{report}");
    }

    #[test]
    fn indiscrete_transformations_are_always_monoidal() {
        let r = Arc::new(models::indiscrete_of(&models::i0(&c2())));
        let fs = enumerate_monoidal_functors(&r, &r, &Budget::default()).unwrap();
        let id = MonoidalFunctor::identity(&r);
        let swap = fs
            .iter()
            .find(|f| f.object_map == vec![Obj(1), Obj(0)])
            .expect("swap functor exists")
            .clone();
        let c = r.cat();
        let comps = vec![
            c.indiscrete_arrow(Obj(0), Obj(1)),
            c.indiscrete_arrow(Obj(1), Obj(0)),
        ];
        let t = MonoidalNatTransformation {
            source: id,
            target: swap,
            components: comps,
        };
        assert!(validate_monoidal_nat(&t).unwrap().is_valid());
    }
}
