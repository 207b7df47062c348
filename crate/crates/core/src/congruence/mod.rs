//! Congruence subgroups of SL(2,Z) and GL(2,Z), their coset tables and
//! fundamental domains on the upper half plane.

pub mod cosets;
pub mod domain;
pub mod h2;
pub mod subgroup;
pub mod svg;

pub use cosets::{coset_enumerate, relative_index, CosetTable, Letter, Word, DEFAULT_COSET_BUDGET};
pub use domain::{
    build_domain, domain_for, find_side_pairings, is_edge_pairing, orbifold_invariants, Base, ExactPoint, FundamentalDomain,
    OrbifoldInvariants, SurfaceClass, DEFAULT_PAIRING_WORD_LENGTH,
};
pub use h2::{gl2_to_h2, mobius, reduce_to_domain, Reduction, DEFAULT_TOLERANCE};
pub use subgroup::{membership, CongruenceSubgroup, M2, SUBGROUP_NAMES};
pub use svg::{domain_json, domain_svg, DEFAULT_YMAX};

/// Coset table for `name`, using the listed representatives
/// `Id, S, ST, T, TS, TST⁻¹` for `Γ(2)⁺` so that the domain has the usual layout.
pub fn standard_table(g: &CongruenceSubgroup, budget: usize) -> crate::Result<CosetTable> {
    if g.positive().name() == "Gamma(2)+" {
        return CosetTable::from_words(g, &["Id", "S", "ST", "T", "TS", "TST^-1"]);
    }
    coset_enumerate(g, budget)
}
