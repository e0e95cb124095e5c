//! Integral lattices, discriminant forms and even overlattices.

mod discriminant;
pub mod fixtures;
mod glue;
mod gram;

pub use discriminant::{
    discriminant_group, order4_rotation_fixed_part, rotation_weak_candidates, DiscriminantGroup,
    TorsionForm,
};
pub use glue::{
    dual_grid, even_overlattice_candidates, glue_candidates, glue_feasibility, overlattice_form,
    GlueFeasibility, GlueGroup, OverlatticeForm,
};
pub use gram::{lattice_basis, overlattice, sublattice_index, DualVector, GramLattice, Overlattice};
