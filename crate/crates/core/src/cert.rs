//! JSON certificates, schema `wreathlab-cert/1`.

use serde::Serialize;

use crate::hom::Homomorphism;
use crate::perm::Perm;

pub const SCHEMA: &str = "wreathlab-cert/1";

/// Every certificate is wrapped with the schema tag, its kind and the seed
/// used by any sampled check.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T> {
    pub schema: &'static str,
    pub kind: &'static str,
    pub seed: u64,
    pub body: T,
}

pub fn envelope<T: Serialize>(kind: &'static str, seed: u64, body: T) -> Envelope<T> {
    Envelope {
        schema: SCHEMA,
        kind,
        seed,
        body,
    }
}

/// Pretty JSON with a trailing newline; field order is fixed by the types.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("certificates serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCertificate {
    pub domain: String,
    pub domain_order: usize,
    pub codomain: String,
    pub codomain_order: usize,
    /// Point images of each domain generator, then of its image.
    pub domain_generators: Vec<Perm>,
    pub generator_images: Vec<Perm>,
    pub verified: bool,
    pub surjective: bool,
    pub image_order: usize,
    pub kernel_order: Option<usize>,
    pub anchor: Option<String>,
    /// Composites apply their first factor first.
    pub application_order: &'static str,
}

impl From<&Homomorphism> for HomCertificate {
    fn from(h: &Homomorphism) -> Self {
        HomCertificate {
            domain: h.domain().label().to_string(),
            domain_order: h.domain().order(),
            codomain: h.codomain().label().to_string(),
            codomain_order: h.codomain().order(),
            domain_generators: h.domain().generators().to_vec(),
            generator_images: h.gen_images().to_vec(),
            verified: h.is_verified(),
            surjective: h.is_surjective(),
            image_order: h.image_order(),
            kernel_order: h.kernel_order(),
            anchor: h.anchor().map(str::to_string),
            application_order: "left-to-right",
        }
    }
}
