use std::fmt;

/// The axiom or typing rule an instance violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    // categories
    IdentityTyping,
    Composability,
    LeftIdentity,
    RightIdentity,
    Associativity,
    // functors and natural transformations
    FunctorTyping,
    PreservesIdentity,
    PreservesComposition,
    ComponentTyping,
    Naturality,
    // monoidal structure
    TensorTyping,
    TensorIdentity,
    Interchange,
    StructureTyping,
    StructureInvertible,
    AssociatorNaturality,
    LeftUnitorNaturality,
    RightUnitorNaturality,
    BraidingNaturality,
    Pentagon,
    Triangle,
    Hexagon,
    InverseHexagon,
    Symmetry,
    // monoidal functors
    CoherenceTyping,
    CoherenceInvertible,
    CoherenceNaturality,
    CoherenceAssociativity,
    CoherenceLeftUnit,
    CoherenceRightUnit,
    CoherenceBraiding,
    // monoidal natural transformations
    UnitMonoidality,
    TensorMonoidality,
    // monoids
    MonoidAssociativity,
    MonoidUnit,
    Commutativity,
    // nullhomotopy composition
    NullhomotopyIdentity,
    NullhomotopyAssociativity,
    // quotients by invertible objects
    ClassCongruence,
    PureIso,
    ReflectsIsos,
    ClassFactorisation,
    TorsionTransfer,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::IdentityTyping => "identity typing",
            Law::Composability => "composability",
            Law::LeftIdentity => "left identity law",
            Law::RightIdentity => "right identity law",
            Law::Associativity => "associativity",
            Law::FunctorTyping => "functor typing",
            Law::PreservesIdentity => "preservation of identities",
            Law::PreservesComposition => "preservation of composition",
            Law::ComponentTyping => "component typing",
            Law::Naturality => "naturality",
            Law::TensorTyping => "tensor typing",
            Law::TensorIdentity => "tensor of identities",
            Law::Interchange => "interchange law",
            Law::StructureTyping => "structure map typing",
            Law::StructureInvertible => "structure map invertibility",
            Law::AssociatorNaturality => "associator naturality",
            Law::LeftUnitorNaturality => "left unitor naturality",
            Law::RightUnitorNaturality => "right unitor naturality",
            Law::BraidingNaturality => "braiding naturality",
            Law::Pentagon => "pentagon",
            Law::Triangle => "triangle",
            Law::Hexagon => "hexagon",
            Law::InverseHexagon => "inverse hexagon",
            Law::Symmetry => "symmetry involution",
            Law::CoherenceTyping => "coherence map typing",
            Law::CoherenceInvertible => "coherence map invertibility",
            Law::CoherenceNaturality => "naturality of m",
            Law::CoherenceAssociativity => "associativity coherence",
            Law::CoherenceLeftUnit => "left unit coherence",
            Law::CoherenceRightUnit => "right unit coherence",
            Law::CoherenceBraiding => "braiding compatibility",
            Law::UnitMonoidality => "unit monoidality",
            Law::TensorMonoidality => "tensor monoidality",
            Law::MonoidAssociativity => "monoid associativity",
            Law::MonoidUnit => "monoid unit law",
            Law::Commutativity => "commutativity",
            Law::NullhomotopyIdentity => "identity padding of nullhomotopies",
            Law::NullhomotopyAssociativity => "associativity of nullhomotopy composition",
            Law::ClassCongruence => "arrow class congruence",
            Law::PureIso => "class invertible iff representative invertible",
            Law::ReflectsIsos => "projection reflects isomorphisms",
            Law::ClassFactorisation => "arrow class factorisation through the unit",
            Law::TorsionTransfer => "image of a torsion object is torsion",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    /// Human-readable location, e.g. the object tuple or morphism pair.
    pub at: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}", self.law, self.at)
    }
}

/// Every violated axiom instance found by a validator; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: Law, at: impl Into<String>) {
        self.violations.push(Violation { law, at: at.into() });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid: no violations");
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}
