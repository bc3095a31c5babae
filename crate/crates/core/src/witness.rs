//! Certificates for negative verdicts. Each one names the group it lives in
//! and carries enough data to be re-checked from the generators alone.

use crate::congruence::CongruenceData;
use crate::group::{Slp, Word};
use crate::linalg::Subspace;
use crate::splitting::JordanPair;

/// Group in which a witness is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Domain {
    /// The input group itself.
    Source,
    /// ψ(G_s): images of the semisimple parts under a congruence map.
    SemisimpleImage { pairs: Vec<JordanPair>, congruence: CongruenceData },
    /// adj(G) acting on the enveloping algebra.
    Adjoint,
}

/// Non-nilpotency certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// [u_i, s_j] ≠ 1 for the Jordan parts of generators i and j.
    JordanCommutator { pairs: Vec<JordanPair>, u: usize, s: usize },
    /// The u-parts leave `w` invariant but fix no nonzero vector of V/w.
    NonUnipotentFlag { pairs: Vec<JordanPair>, w: Subspace },
    /// [start, m_1, …, m_bound] ≠ 1 with `bound` at least the class bound.
    LongCommutator { domain: Domain, slp: Slp, start: usize, multipliers: Vec<usize>, bound: usize },
    /// Two elements of finite coprime orders that do not commute.
    NonCommutingPrimeParts { domain: Domain, slp: Slp, x: usize, y: usize },
    /// A word in p-elements whose order is not a power of p.
    NonPrimePowerElement { domain: Domain, slp: Slp, component: Vec<usize>, word: Word, prime: u64 },
    /// A kernel normal generator w(s_1, …, s_r) outside the centre of G_s.
    KernelNotCentral {
        pairs: Vec<JordanPair>,
        congruence: CongruenceData,
        relator: Word,
        generator: usize,
    },
    /// An element whose adjoint image has infinite order (generators semisimple).
    AdjointInfiniteOrder { slp: Slp, element: usize },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::JordanCommutator { .. } => "jordan_commutator",
            Witness::NonUnipotentFlag { .. } => "non_unipotent_flag",
            Witness::LongCommutator { .. } => "long_commutator",
            Witness::NonCommutingPrimeParts { .. } => "non_commuting_prime_parts",
            Witness::NonPrimePowerElement { .. } => "non_prime_power_element",
            Witness::KernelNotCentral { .. } => "kernel_not_central",
            Witness::AdjointInfiniteOrder { .. } => "adjoint_infinite_order",
        }
    }
}

/// Infinite-order certificate for a nilpotent group.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum InfiniteWitness {
    /// A nontrivial unipotent part in characteristic 0.
    UnipotentPart { pairs: Vec<JordanPair>, generator: usize },
    /// w(s_1, …, s_r) ≠ 1 lies in the congruence kernel.
    KernelNontrivial { pairs: Vec<JordanPair>, congruence: CongruenceData, relator: Word },
    /// An element of the group with infinite order.
    InfiniteOrder { slp: Slp, element: usize },
}

impl InfiniteWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            InfiniteWitness::UnipotentPart { .. } => "unipotent_part",
            InfiniteWitness::KernelNontrivial { .. } => "kernel_nontrivial",
            InfiniteWitness::InfiniteOrder { .. } => "infinite_order",
        }
    }
}
