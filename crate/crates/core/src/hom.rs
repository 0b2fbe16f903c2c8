//! Homomorphisms given by generator images, certified by the graph criterion.
//!
//! An assignment `gᵢ ↦ tᵢ` extends to a homomorphism exactly when the
//! subgroup of `domain × codomain` generated by the pairs `(gᵢ, tᵢ)` has the
//! same order as the domain: that subgroup is then the graph of the map.
//! When verification succeeds the graph is kept as a lookup table, so the
//! map can be evaluated on arbitrary domain elements.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{closure_within, FiniteGroup, Limits};
use crate::perm::{Perm, MAX_DEGREE};

#[derive(Clone)]
pub struct Homomorphism {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    gen_images: Vec<Perm>,
    verified: bool,
    surjective: bool,
    image_order: usize,
    kernel_order: Option<usize>,
    anchor: Option<String>,
    // codomain index of the image of each domain element
    table: Option<Arc<Vec<u32>>>,
}

/// Checks the assignment `domain.generators()[i] ↦ gen_images[i]`.
///
/// A failed check is not an error: the result carries `verified = false`.
pub fn verify_homomorphism(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    gen_images: Vec<Perm>,
    limits: &Limits,
) -> Result<Homomorphism> {
    if gen_images.len() != domain.generators().len() {
        return Err(Error::Invalid(format!(
            "{} generator images supplied for {} generators of {}",
            gen_images.len(),
            domain.generators().len(),
            domain.label()
        )));
    }
    if let Some(bad) = gen_images.iter().find(|t| !codomain.contains(t)) {
        return Err(Error::Invalid(format!(
            "image {bad} is not an element of {}",
            codomain.label()
        )));
    }
    let (d1, d2) = (domain.degree(), codomain.degree());
    if d1 + d2 > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree: d1 + d2,
            cap: MAX_DEGREE,
        });
    }
    let paired: Vec<Perm> = domain
        .generators()
        .iter()
        .zip(&gen_images)
        .map(|(g, t)| pair(g, t))
        .collect();
    let graph = closure_within(d1 + d2, &paired, domain.order(), limits)?;

    let mut hom = Homomorphism {
        domain: domain.clone(),
        codomain: codomain.clone(),
        gen_images,
        verified: false,
        surjective: false,
        image_order: 0,
        kernel_order: None,
        anchor: None,
        table: None,
    };
    match graph {
        Some(graph) if graph.len() == domain.order() => {
            let mut table = vec![u32::MAX; domain.order()];
            let mut hit = FixedBitSet::with_capacity(codomain.order());
            for p in graph.iter() {
                let x = domain
                    .elements()
                    .index_of(&p[..d1])
                    .expect("graph projects into the domain");
                let y = codomain
                    .elements()
                    .index_of(&shift_down(&p[d1..], d1))
                    .expect("graph projects into the codomain");
                table[x] = y as u32;
                hit.insert(y);
            }
            hom.verified = true;
            hom.image_order = hit.count_ones(..);
            hom.surjective = hom.image_order == codomain.order();
            hom.kernel_order = Some(domain.order() / hom.image_order);
            hom.table = Some(Arc::new(table));
        }
        _ => {
            let image = FiniteGroup::generate_with(
                d2,
                hom.gen_images.clone(),
                "",
                &Limits {
                    element_cap: codomain.order(),
                    ..limits.clone()
                },
            )?;
            hom.image_order = image.order();
        }
    }
    Ok(hom)
}

fn pair(g: &Perm, t: &Perm) -> Perm {
    let (d1, d2) = (g.degree(), t.degree());
    let mut images = Vec::with_capacity(d1 + d2);
    images.extend(g.as_bytes().iter().map(|&x| x as usize));
    images.extend(t.as_bytes().iter().map(|&x| x as usize + d1));
    Perm::from_images(&images).expect("paired permutation")
}

fn shift_down(p: &[u8], by: usize) -> Vec<u8> {
    p.iter().map(|&x| x - by as u8).collect()
}

impl Homomorphism {
    pub fn identity(group: &FiniteGroup) -> Homomorphism {
        verify_homomorphism(
            group,
            group,
            group.generators().to_vec(),
            &Limits::default(),
        )
        .expect("identity map")
        .with_anchor("identity")
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_order == Some(1)
    }

    pub fn image_order(&self) -> usize {
        self.image_order
    }

    pub fn kernel_order(&self) -> Option<usize> {
        self.kernel_order
    }

    pub fn anchor(&self) -> Option<&str> {
        self.anchor.as_deref()
    }

    pub fn with_anchor(mut self, anchor: impl Into<String>) -> Self {
        self.anchor = Some(anchor.into());
        self
    }

    /// Fails with a construction defect unless the map is a verified epimorphism.
    pub fn expect_epimorphism(self, anchor: &str) -> Result<Self> {
        if !self.verified {
            return Err(Error::defect(
                anchor,
                format!(
                    "generator images {:?} do not define a homomorphism {} -> {}",
                    self.gen_images,
                    self.domain.label(),
                    self.codomain.label()
                ),
            ));
        }
        if !self.surjective {
            return Err(Error::defect(
                anchor,
                format!(
                    "image has order {} but {} has order {}",
                    self.image_order,
                    self.codomain.label(),
                    self.codomain.order()
                ),
            ));
        }
        Ok(self.with_anchor(anchor))
    }

    fn require_verified(&self) -> Result<&[u32]> {
        self.table.as_deref().map(Vec::as_slice).ok_or_else(|| {
            Error::Invalid(format!(
                "map {} -> {} is not a verified homomorphism",
                self.domain.label(),
                self.codomain.label()
            ))
        })
    }

    /// Image of the domain element with the given index.
    pub fn apply_index(&self, index: usize) -> Result<usize> {
        Ok(self.require_verified()?[index] as usize)
    }

    pub fn apply(&self, x: &Perm) -> Result<Perm> {
        let table = self.require_verified()?;
        let i = self.domain.index_of(x).ok_or_else(|| {
            Error::Invalid(format!("{x} is not an element of {}", self.domain.label()))
        })?;
        Ok(self.codomain.element(table[i] as usize))
    }

    pub fn kernel(&self) -> Result<FiniteGroup> {
        let table = self.require_verified()?;
        let mut bits = FixedBitSet::with_capacity(self.domain.order());
        for (i, &y) in table.iter().enumerate() {
            if y == 0 {
                bits.insert(i);
            }
        }
        self.domain
            .subgroup_from_bits(&bits, format!("ker({})", self.anchor().unwrap_or("map")))
    }

    /// Indices of kernel elements inside the domain.
    pub fn kernel_bits(&self) -> Result<FixedBitSet> {
        let table = self.require_verified()?;
        let mut bits = FixedBitSet::with_capacity(self.domain.order());
        for (i, &y) in table.iter().enumerate() {
            if y == 0 {
                bits.insert(i);
            }
        }
        Ok(bits)
    }

    pub fn image(&self) -> Result<FiniteGroup> {
        self.codomain.subgroup(
            self.gen_images.clone(),
            format!("im({})", self.anchor().unwrap_or("map")),
        )
    }
}

/// `first` then `second`, re-verified on the composite generator images.
pub fn compose_homs(
    first: &Homomorphism,
    second: &Homomorphism,
    limits: &Limits,
) -> Result<Homomorphism> {
    if !first.codomain.same_elements(&second.domain) {
        return Err(Error::Invalid(format!(
            "cannot compose: codomain {} differs from domain {}",
            first.codomain.label(),
            second.domain.label()
        )));
    }
    let images = first
        .gen_images
        .iter()
        .map(|t| second.apply(t))
        .collect::<Result<Vec<_>>>()?;
    verify_homomorphism(&first.domain, &second.codomain, images, limits)
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Homomorphism({} -> {}, verified={}, surjective={}, kernel={:?})",
            self.domain.label(),
            self.codomain.label(),
            self.verified,
            self.surjective,
            self.kernel_order
        )
    }
}
