//! The two families of H-simple algebras and their isomorphism theory.

pub mod automorphism;
pub mod nilpotent;
pub mod semisimple;

pub use automorphism::{sample_aut_pairs, AutPair};
pub use nilpotent::{
    build_nilpotent_extension, elementary_grading, is_graded_isomorphism, recover_structure, NilpotentExtensionSpec,
    RecoveredExtension,
};
pub use semisimple::{
    apply_c, apply_v, build_semisimple, build_semisimple_unchecked, iso_map, iso_semisimple, v_power_closed_form, verify_iso_witness, SemisimpleIso, SemisimpleSpec,
};
