//! Semiabelian membership, wreath length with certificates, and surveys.

pub mod conductor;
pub mod epi;
pub mod semiabelian;
pub mod survey;
pub mod wl;

pub use conductor::{cyclic_conductor, ConductorRecord};
pub use epi::{epi_exists, epi_exists_brute, Certification, TowerWitness};
pub use semiabelian::{is_semiabelian, validate_chain, SemiabelianCertificate, Verdict};
pub use survey::{survey, survey_catalog, to_tsv, SurveyRow};
pub use wl::{
    check_wl_eq_dg_characterization, dl_tower_check, nilpotent_tower, wl_bounds,
    CharacterizationReport, WlCertificate,
};
