//! Validation reports.
//!
//! Every validator in this crate returns an exhaustive list of violated
//! axiom instances rather than stopping at the first failure. Each
//! violation carries the coordinates of the offending instance so that
//! mutation tests can pinpoint exactly which entry broke which law.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A single violated axiom instance, with coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// A table refers to an index outside the declared range, or has the
    /// wrong shape. Reported distinctly from axiom violations.
    Malformed { detail: String },
    /// Composite of `fst` then `snd` is missing or has wrong endpoints.
    CompositeEndpoints { fst: usize, snd: usize },
    /// Associativity fails on the composable triple (fst, mid, lst).
    Associativity { fst: usize, mid: usize, lst: usize },
    /// The designated identity of `object` is not a unit against `arrow`.
    UnitFailure { object: usize, arrow: usize },
    /// `arrow` has no two-sided inverse.
    MissingInverse { arrow: usize },
    /// Functor does not preserve source/target of `arrow`.
    FunctorEndpoints { arrow: usize },
    /// Functor does not preserve the identity of `object`.
    FunctorIdentity { object: usize },
    /// Functor does not preserve the composite of (fst, snd).
    FunctorComposition { fst: usize, snd: usize },
    /// Natural transformation component at `object` has wrong endpoints.
    ComponentEndpoints { object: usize },
    /// Naturality square fails at `arrow`.
    Naturality { arrow: usize },
    /// Action coherence `a(g,hk) . g.a(h,k) = a(gh,k) . a(g,h)@k.x` fails.
    Coherence { g: usize, h: usize, k: usize, x: usize },
    /// Action unit identity `1.u(x) = a(1,1)@x` fails at `x`.
    UnitCoherence { x: usize },
    /// Equivariance family component at (g, x) has wrong endpoints.
    SigmaEndpoints { g: usize, x: usize },
    /// Naturality of the equivariance family sigma_g fails at `arrow`.
    SigmaNaturality { g: usize, arrow: usize },
    /// G-morphism compatibility with the coherence data fails at (g, h, x).
    SigmaCocycle { g: usize, h: usize, x: usize },
    /// G-morphism unit compatibility fails at `x`.
    SigmaUnit { x: usize },
    /// 2-G-morphism compatibility with the two sigma families fails at (g, x).
    TauCompatibility { g: usize, x: usize },
    /// Linearization cocycle fails at (g, h) on a fixed object.
    LinearizationCocycle { g: usize, h: usize },
    /// Torsor axiom (action law, freeness, or transitivity) fails at
    /// (g, e) on the carrier.
    TorsorLaw { g: usize, e: usize },
    /// Equivariant-morphism triangle fails at (g, e) on the carrier.
    EquivariantCompatibility { g: usize, e: usize },
    /// Generic named failure with coordinates rendered into the message.
    Other { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Malformed { detail } => write!(f, "malformed: {detail}"),
            Violation::CompositeEndpoints { fst, snd } => {
                write!(f, "composite of ({fst}, {snd}) missing or mistyped")
            }
            Violation::Associativity { fst, mid, lst } => {
                write!(f, "associativity fails on triple ({fst}, {mid}, {lst})")
            }
            Violation::UnitFailure { object, arrow } => {
                write!(f, "identity of object {object} is not a unit against arrow {arrow}")
            }
            Violation::MissingInverse { arrow } => {
                write!(f, "arrow {arrow} has no two-sided inverse")
            }
            Violation::FunctorEndpoints { arrow } => {
                write!(f, "functor breaks endpoints of arrow {arrow}")
            }
            Violation::FunctorIdentity { object } => {
                write!(f, "functor breaks identity of object {object}")
            }
            Violation::FunctorComposition { fst, snd } => {
                write!(f, "functor breaks composite of ({fst}, {snd})")
            }
            Violation::ComponentEndpoints { object } => {
                write!(f, "component at object {object} has wrong endpoints")
            }
            Violation::Naturality { arrow } => {
                write!(f, "naturality square fails at arrow {arrow}")
            }
            Violation::Coherence { g, h, k, x } => {
                write!(f, "coherence fails at (g={g}, h={h}, k={k}, x={x})")
            }
            Violation::UnitCoherence { x } => {
                write!(f, "unit identity fails at object {x}")
            }
            Violation::SigmaEndpoints { g, x } => {
                write!(f, "sigma component at (g={g}, x={x}) has wrong endpoints")
            }
            Violation::SigmaNaturality { g, arrow } => {
                write!(f, "naturality of sigma_{g} fails at arrow {arrow}")
            }
            Violation::SigmaCocycle { g, h, x } => {
                write!(f, "sigma compatibility fails at (g={g}, h={h}, x={x})")
            }
            Violation::SigmaUnit { x } => {
                write!(f, "sigma unit compatibility fails at object {x}")
            }
            Violation::TauCompatibility { g, x } => {
                write!(f, "2-morphism compatibility fails at (g={g}, x={x})")
            }
            Violation::LinearizationCocycle { g, h } => {
                write!(f, "linearization cocycle fails at (g={g}, h={h})")
            }
            Violation::TorsorLaw { g, e } => {
                write!(f, "torsor axiom fails at (g={g}, e={e})")
            }
            Violation::EquivariantCompatibility { g, e } => {
                write!(f, "equivariant triangle fails at (g={g}, e={e})")
            }
            Violation::Other { detail } => write!(f, "{detail}"),
        }
    }
}

/// Exhaustive validation report: empty iff the validated value is lawful.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report { violations: Vec::new() }
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when the only problems are shape problems, not axiom failures.
    pub fn only_malformed(&self) -> bool {
        !self.violations.is_empty()
            && self
                .violations
                .iter()
                .all(|v| matches!(v, Violation::Malformed { .. }))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}
