//! The built-in example corpus: small monoids and the monoidal categories
//! built from them.

use std::sync::Arc;

use crate::fincat::{FinCategory, Mor, Obj};
use crate::invariants::FinMonoid;
use crate::moncat::MonoidalStructure;

pub use crate::invariants::{i0, i1};

/// `Z/n` written multiplicatively. Order 2 uses the elements `1, -1`;
/// larger orders use `1, g, g^2, ...`.
pub fn cyclic_group(n: usize) -> FinMonoid {
    assert!(n > 0, "cyclic group of order 0");
    let elements = match n {
        2 => vec!["1".into(), "-1".into()],
        _ => (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect(),
    };
    let name = match n {
        2 => "C2".to_string(),
        _ => format!("Z{n}"),
    };
    FinMonoid::from_fn(name, elements, 0, |a, b| (a + b) % n)
        .expect("cyclic group tables are in range")
}

/// The two-element semilattice `{1, z}` with `z·z = z`.
pub fn l() -> FinMonoid {
    FinMonoid::from_fn("L", vec!["1".into(), "z".into()], 0, |a, b| a.max(b))
        .expect("semilattice tables are in range")
}

/// `C2 × L`, elements `(1,1), (-1,1), (1,z), (-1,z)`.
pub fn ml() -> FinMonoid {
    let elements = vec![
        "(1,1)".into(),
        "(-1,1)".into(),
        "(1,z)".into(),
        "(-1,z)".into(),
    ];
    // index = sign + 2·level
    FinMonoid::from_fn("ML", elements, 0, |a, b| {
        ((a % 2) ^ (b % 2)) + 2 * ((a / 2) | (b / 2))
    })
    .expect("product tables are in range")
}

/// All maps of a two-element set under composition; not commutative.
pub fn transformation_monoid() -> FinMonoid {
    // maps encoded as (f(0), f(1)): id, swap, const0, const1
    let maps = [(0, 1), (1, 0), (0, 0), (1, 1)];
    let names = vec!["id".into(), "swap".into(), "c0".into(), "c1".into()];
    FinMonoid::from_fn("T2", names, 0, |g, f| {
        // g ∘ f
        let (f0, f1) = maps[f];
        let apply = |x: usize| if x == 0 { maps[g].0 } else { maps[g].1 };
        let h = (apply(f0), apply(f1));
        maps.iter()
            .position(|&m| m == h)
            .expect("closed under composition")
    })
    .expect("transformation monoid tables are in range")
}

/// Commutative corpus monoids.
pub fn monoids() -> Vec<FinMonoid> {
    vec![
        FinMonoid::trivial(),
        cyclic_group(2),
        cyclic_group(3),
        l(),
        ml(),
    ]
}

pub fn terminal() -> MonoidalStructure {
    let base = Arc::new(FinCategory::terminal());
    MonoidalStructure::strict(base, vec![Obj(0)], vec![Mor(0)], Obj(0), true)
        .expect("terminal structure")
}

/// Objects `0 ≤ 1` with meet as tensor and unit `1`.
pub fn poset2() -> MonoidalStructure {
    let morphisms = vec![
        ("id_0".into(), Obj(0), Obj(0)),
        ("id_1".into(), Obj(1), Obj(1)),
        ("0<=1".into(), Obj(0), Obj(1)),
    ];
    let base = FinCategory::from_fn(
        "Poset2",
        vec!["0".into(), "1".into()],
        morphisms,
        vec![Mor(0), Mor(1)],
        |g, f| {
            if g.0 < 2 {
                f
            } else {
                g
            }
        },
    )
    .expect("Poset2 tables are well formed");
    let meet = vec![Obj(0), Obj(0), Obj(0), Obj(1)];
    MonoidalStructure::thin(Arc::new(base), meet, Obj(1), true)
        .expect("meet is a thin symmetric structure")
}

/// The indiscrete category on the objects of `m` with the same tensor on
/// objects and the same unit.
pub fn indiscrete_of(m: &MonoidalStructure) -> MonoidalStructure {
    let base = FinCategory::indiscrete(format!("R({})", m.name()), m.cat().object_names().to_vec());
    MonoidalStructure::thin(Arc::new(base), m.tensor_obj.clone(), m.unit, true)
        .expect("indiscrete categories carry a thin structure")
}

/// The symmetric monoidal corpus used by the acceptance criteria.
pub fn corpus() -> Vec<MonoidalStructure> {
    let c2 = cyclic_group(2);
    vec![
        terminal(),
        i0(&c2),
        i1(&c2).expect("C2 is commutative"),
        i0(&cyclic_group(3)),
        i0(&ml()),
        i1(&l()).expect("L is commutative"),
        i1(&ml()).expect("ML is commutative"),
        poset2(),
        indiscrete_of(&i0(&c2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::validate_monoid;
    use crate::moncat::validate_monoidal;

    #[test]
    fn every_model_validates() {
        for m in corpus() {
            let r = validate_monoidal(&m).unwrap();
            assert!(r.is_valid(), "{}: {r}", m.name());
            assert!(m.symmetric);
        }
        for m in monoids().into_iter().chain([transformation_monoid()]) {
            assert!(validate_monoid(&m).is_valid(), "{}", m.name);
        }
    }

    #[test]
    fn ml_is_the_product() {
        let m = ml();
        let (c2, l) = (cyclic_group(2), l());
        for a in 0..4 {
            for b in 0..4 {
                let (sa, la, sb, lb) = (a % 2, a / 2, b % 2, b / 2);
                let p = m.op(a, b);
                assert_eq!(p % 2, c2.op(sa, sb));
                assert_eq!(p / 2, l.op(la, lb));
            }
        }
    }
}
