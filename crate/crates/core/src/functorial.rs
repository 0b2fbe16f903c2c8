//! Homomorphisms between wreath products induced by maps of their arguments.
//!
//! Every map here is first written down on the generators of its domain,
//! then certified by the graph criterion. A map that should be an
//! epimorphism but fails the check is reported as a construction defect.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{abelian_invariants, abelianization, AbelianInvariants};
use crate::catalog::{abelian, group_tower};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::hom::{compose_homs, verify_homomorphism, Homomorphism};
use crate::perm::Perm;
use crate::subgroup::{commutator_subgroup, direct_product, is_normal};
use crate::wreath::{
    build_tower, permutational_wreath, GroupAction, Tower, TowerSpec, WreathElement, WreathGroup,
};

/// Largest wreath order for which the G-map laws are checked exhaustively.
pub const EXHAUSTIVE_LAW_ORDER: u128 = 4096;

/// An equivariant map between two right `G`-sets.
#[derive(Clone, Debug)]
pub struct GMap {
    source: GroupAction,
    target: GroupAction,
    map: Vec<usize>,
}

impl GMap {
    /// Checks `φ(x·g) = φ(x)·g` for every point and every generator.
    pub fn new(source: GroupAction, target: GroupAction, map: Vec<usize>) -> Result<Self> {
        if !source.group().same_elements(target.group()) {
            return Err(Error::Invalid(
                "G-map between actions of different groups".into(),
            ));
        }
        if map.len() != source.degree() || map.iter().any(|&y| y >= target.degree()) {
            return Err(Error::Invalid(
                "G-map table does not fit the point sets".into(),
            ));
        }
        for g in source.group().generators() {
            for x in 0..source.degree() {
                if map[source.act(x, g)] != target.act(map[x], g) {
                    return Err(Error::Invalid(format!(
                        "map is not equivariant at point {x} and generator {g}"
                    )));
                }
            }
        }
        Ok(GMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(action: &GroupAction) -> Self {
        GMap {
            source: action.clone(),
            target: action.clone(),
            map: (0..action.degree()).collect(),
        }
    }

    pub fn source(&self) -> &GroupAction {
        &self.source
    }

    pub fn target(&self) -> &GroupAction {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == y).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.degree()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// `φ̂(f)(y) = ∏_{x ∈ φ⁻¹(y)} f(x)`; empty fibers give the identity.
    pub fn push_forward(&self, f: &[Perm]) -> Vec<Perm> {
        let id = Perm::identity(f[0].degree());
        let mut out = vec![id; self.target.degree()];
        for (x, &y) in self.map.iter().enumerate() {
            out[y] = out[y].mul(&f[x]);
        }
        out
    }
}

/// A homomorphism between wreath products together with both products.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: WreathGroup,
    pub target: WreathGroup,
    pub hom: Homomorphism,
}

fn require_abelian(a: &FiniteGroup) -> Result<()> {
    if a.is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian(a.label().to_string()))
    }
}

/// Images of the source generators under a structured map.
fn map_generators(
    source: &WreathGroup,
    target: &WreathGroup,
    f: impl Fn(WreathElement) -> Result<WreathElement>,
) -> Result<Vec<Perm>> {
    source
        .carrier()
        .generators()
        .iter()
        .map(|p| target.encode(&f(source.decode(p)?)?))
        .collect()
}

fn certify(hom: Homomorphism, epi: bool, anchor: &str) -> Result<Homomorphism> {
    if epi {
        return hom.expect_epimorphism(anchor);
    }
    if !hom.is_verified() {
        return Err(Error::defect(
            anchor,
            format!(
                "generator images {:?} do not define a homomorphism",
                hom.gen_images()
            ),
        ));
    }
    Ok(hom.with_anchor(anchor))
}

/// `(f, g) ↦ (φ̂(f), g)` from `A ≀_X G` to `A ≀_Y G`, for abelian `A`.
pub fn induced_from_gmap(a: &FiniteGroup, phi: &GMap, limits: &Limits) -> Result<InducedMap> {
    require_abelian(a)?;
    let source = permutational_wreath(GroupAction::natural(a), phi.source.clone(), limits)?;
    let target = permutational_wreath(GroupAction::natural(a), phi.target.clone(), limits)?;
    let images = map_generators(&source, &target, |w| {
        Ok(WreathElement {
            table: phi.push_forward(&w.table),
            top: w.top,
        })
    })?;
    let hom = verify_homomorphism(source.carrier(), target.carrier(), images, limits)?;
    let hom = certify(hom, phi.is_surjective(), "induced map of a G-map")?;
    Ok(InducedMap {
        source,
        target,
        hom,
    })
}

/// Outcome of checking `φ̂(f₁f₂) = φ̂(f₁)φ̂(f₂)` and `φ̂(f^g) = φ̂(f)^g`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub exhaustive: bool,
    pub checks: u64,
    pub failures: u64,
    pub seed: u64,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

/// `f^g(x) = f(x·g⁻¹)`.
fn twist(f: &[Perm], g: &Perm, action: &GroupAction) -> Vec<Perm> {
    let ginv = g.inverse();
    (0..f.len())
        .map(|x| f[action.act(x, &ginv)].clone())
        .collect()
}

fn pointwise(f1: &[Perm], f2: &[Perm]) -> Vec<Perm> {
    f1.iter().zip(f2).map(|(a, b)| a.mul(b)).collect()
}

/// Checks the two laws behind [`induced_from_gmap`]: exhaustively when
/// `|A|^|X|·|G| ≤ 4096`, otherwise on `samples` seeded random cases of each.
pub fn check_gmap_laws(a: &FiniteGroup, phi: &GMap, seed: u64, samples: u64) -> Result<LawReport> {
    require_abelian(a)?;
    let g = phi.source.group();
    let nx = phi.source.degree();
    let functions = (a.order() as u128).checked_pow(nx as u32);
    let order = functions.and_then(|n| n.checked_mul(g.order() as u128));
    let mut report = LawReport {
        seed,
        ..LawReport::default()
    };
    let mut check = |f1: &[Perm], f2: &[Perm], x: &Perm| {
        report.checks += 2;
        let mult = phi.push_forward(&pointwise(f1, f2))
            == pointwise(&phi.push_forward(f1), &phi.push_forward(f2));
        let equi = phi.push_forward(&twist(f1, x, &phi.source))
            == twist(&phi.push_forward(f1), x, &phi.target);
        report.failures += u64::from(!mult) + u64::from(!equi);
    };
    let function = |mut k: u128| -> Vec<Perm> {
        (0..nx)
            .map(|_| {
                let e = a.element((k % a.order() as u128) as usize);
                k /= a.order() as u128;
                e
            })
            .collect()
    };
    match (functions, order) {
        (Some(nf), Some(o)) if o <= EXHAUSTIVE_LAW_ORDER => {
            let all: Vec<Vec<Perm>> = (0..nf).map(function).collect();
            for (i, f1) in all.iter().enumerate() {
                for f2 in &all {
                    check(f1, f2, &g.element(i % g.order()));
                }
                for k in 0..g.order() {
                    check(f1, &all[0], &g.element(k));
                }
            }
            report.exhaustive = true;
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let random_function = |rng: &mut ChaCha8Rng| -> Vec<Perm> {
                (0..nx)
                    .map(|_| a.element(rng.random_range(0..a.order())))
                    .collect()
            };
            for _ in 0..samples {
                let f1 = random_function(&mut rng);
                let f2 = random_function(&mut rng);
                let x = g.element(rng.random_range(0..g.order()));
                check(&f1, &f2, &x);
            }
        }
    }
    Ok(report)
}

/// The `B≀C`-map `B≀C → B×C`, `(f, c) ↦ (f(1), c)`, from the regular action
/// to the action on `B × C` points.
///
/// In point terms this is `k ↦ 0·w_k`: the image of the base point `(1, 1)`
/// under the `k`-th element.
pub fn canonical_gmap_to_product(
    b: &FiniteGroup,
    c: &FiniteGroup,
    limits: &Limits,
) -> Result<(WreathGroup, GMap)> {
    let bc = crate::wreath::regular_wreath(b, c, limits)?;
    let g = bc.carrier();
    let map = (0..g.order()).map(|k| g.element(k).apply(0)).collect();
    let phi = GMap::new(GroupAction::regular(g), GroupAction::natural(g), map)?;
    if !phi.is_surjective() {
        return Err(Error::defect(
            "canonical map to the product",
            "some point of B×C is not hit",
        ));
    }
    Ok((bc, phi))
}

/// `h_*: A ≀ G → B ≀ G`, `(f, g) ↦ (h∘f, g)`, for any top action of `G`.
pub fn map_first_argument(
    h: &Homomorphism,
    top: &GroupAction,
    limits: &Limits,
) -> Result<InducedMap> {
    let source = permutational_wreath(GroupAction::natural(h.domain()), top.clone(), limits)?;
    map_first_argument_from(h, source, limits)
}

fn map_first_argument_from(
    h: &Homomorphism,
    source: WreathGroup,
    limits: &Limits,
) -> Result<InducedMap> {
    let target = permutational_wreath(
        GroupAction::natural(h.codomain()),
        source.top().clone(),
        limits,
    )?;
    let images = map_generators(&source, &target, |w| {
        Ok(WreathElement {
            table: w.table.iter().map(|x| h.apply(x)).collect::<Result<_>>()?,
            top: w.top,
        })
    })?;
    let hom = verify_homomorphism(source.carrier(), target.carrier(), images, limits)?;
    let hom = certify(hom, h.is_surjective(), "first-argument functoriality")?;
    Ok(InducedMap {
        source,
        target,
        hom,
    })
}

/// `ψ̃: A ≀ G → A ≀ H`, `(f, g) ↦ (ψ̂(f), ψ(g))` with
/// `ψ̂(f)(h) = ∏_{k ∈ ψ⁻¹(h)} f(k)`, for abelian `A`.
pub fn map_second_argument(
    a: &FiniteGroup,
    psi: &Homomorphism,
    limits: &Limits,
) -> Result<InducedMap> {
    require_abelian(a)?;
    let source = permutational_wreath(
        GroupAction::natural(a),
        GroupAction::regular(psi.domain()),
        limits,
    )?;
    let target = permutational_wreath(
        GroupAction::natural(a),
        GroupAction::regular(psi.codomain()),
        limits,
    )?;
    let images = map_generators(&source, &target, |w| {
        let mut table = vec![a.identity(); psi.codomain().order()];
        for (k, f) in w.table.iter().enumerate() {
            let h = psi.apply_index(k)?;
            table[h] = table[h].mul(f);
        }
        Ok(WreathElement {
            table,
            top: psi.apply(&w.top)?,
        })
    })?;
    let hom = verify_homomorphism(source.carrier(), target.carrier(), images, limits)?;
    let hom = certify(hom, psi.is_surjective(), "second-argument functoriality")?;
    Ok(InducedMap {
        source,
        target,
        hom,
    })
}

/// `A ≀ B → A × B`, `(f, b) ↦ (∏_x f(x), b)`, for abelian `A`.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub source: WreathGroup,
    pub target: FiniteGroup,
    pub hom: Homomorphism,
}

pub fn collapse_to_product(a: &FiniteGroup, b: &FiniteGroup, limits: &Limits) -> Result<Collapse> {
    require_abelian(a)?;
    let source = permutational_wreath(GroupAction::natural(a), GroupAction::regular(b), limits)?;
    let target = direct_product(a, b, limits)?;
    let total = target.degree();
    let images = source
        .carrier()
        .generators()
        .iter()
        .map(|p| {
            let w = source.decode(p)?;
            let prod = w.table.iter().fold(a.identity(), |acc, x| acc.mul(x));
            Ok(prod
                .shifted(0, total)
                .mul(&w.top.shifted(a.degree(), total)))
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = verify_homomorphism(source.carrier(), &target, images, limits)?
        .expect_epimorphism("collapse to the direct product")?;
    Ok(Collapse {
        source,
        target,
        hom,
    })
}

/// The chain `A≀(B≀C) → (A≀B)≀C → (A×B)≀C` for abelian `A`.
#[derive(Clone, Debug)]
pub struct InductionStep {
    /// `A ≀ (B ≀ C)`.
    pub domain: WreathGroup,
    /// `(A ≀ B) ≀ C`.
    pub middle: WreathGroup,
    /// `(A × B) ≀ C`.
    pub target: WreathGroup,
    /// The identification `A ≀_{B×C} (B≀C) = (A≀B) ≀ C`, an isomorphism.
    pub associativity: Homomorphism,
    pub first: Homomorphism,
    pub second: Homomorphism,
}

impl InductionStep {
    /// `second ∘ first`, applied left to right.
    pub fn composite(&self, limits: &Limits) -> Result<Homomorphism> {
        compose_homs(&self.first, &self.second, limits)?
            .expect_epimorphism("composite of the induction step")
    }
}

/// Builds both epimorphisms of the induction step.
///
/// The first is the map induced by the canonical `B≀C`-map `B≀C → B×C`,
/// followed by the identification of `A ≀_{B×C} (B≀C)` with `(A≀B)≀C`: both
/// act on `A × B × C` with the same row-major indexing, so they are the same
/// permutation group, which is checked rather than assumed. The second is
/// `h_*` for the collapse `h: A≀B → A×B`.
pub fn induction_step_epis(
    a: &FiniteGroup,
    b: &FiniteGroup,
    c: &FiniteGroup,
    limits: &Limits,
) -> Result<InductionStep> {
    require_abelian(a)?;
    let (_, phi) = canonical_gmap_to_product(b, c, limits)?;
    let induced = induced_from_gmap(a, &phi, limits)?;

    let collapse = collapse_to_product(a, b, limits)?;
    let ab = collapse.source.carrier().clone();
    let middle = permutational_wreath(GroupAction::natural(&ab), GroupAction::regular(c), limits)?;
    let mid = induced.target.carrier();
    if !(mid.degree() == middle.degree() && mid.same_elements(middle.carrier())) {
        return Err(Error::defect(
            "associativity identification",
            format!(
                "A wr_(BxC) (B wr C) of order {} differs from (A wr B) wr C of order {}",
                mid.order(),
                middle.order()
            ),
        ));
    }
    let associativity =
        verify_homomorphism(mid, middle.carrier(), mid.generators().to_vec(), limits)?
            .expect_epimorphism("associativity identification")?;
    if !associativity.is_injective() {
        return Err(Error::defect(
            "associativity identification",
            "kernel is nontrivial",
        ));
    }
    let first = compose_homs(&induced.hom, &associativity, limits)?
        .expect_epimorphism("induction step, first map")?;
    let second = map_first_argument_from(&collapse.hom, middle.clone(), limits)?;
    Ok(InductionStep {
        domain: induced.source,
        middle,
        target: second.target,
        associativity,
        first,
        second: second.hom.with_anchor("induction step, second map"),
    })
}

/// Epimorphism from the descending to the ascending tower over abelian factors.
///
/// Trivial factors are dropped. With at most two remaining factors the two
/// bracketings coincide and the map is the identity; with three it is the
/// first map of the induction step. Four nontrivial factors already exceed
/// any feasible element cap in the descending bracketing.
pub fn descending_to_ascending(factors: &[FiniteGroup], limits: &Limits) -> Result<Homomorphism> {
    for a in factors {
        require_abelian(a)?;
    }
    let fs: Vec<FiniteGroup> = factors
        .iter()
        .filter(|g| !g.is_trivial())
        .cloned()
        .collect();
    match fs.len() {
        0 => Ok(Homomorphism::identity(&crate::catalog::trivial())),
        1 | 2 => Ok(Homomorphism::identity(&group_tower(&fs, true, limits)?)
            .with_anchor("descending to ascending")),
        3 => Ok(induction_step_epis(&fs[0], &fs[1], &fs[2], limits)?
            .first
            .with_anchor("descending to ascending")),
        _ => {
            let orders: Vec<u64> = fs.iter().map(|g| g.order() as u64).collect();
            let projected = TowerSpec::descending(&orders).projected_order();
            Err(Error::ElementCap {
                cap: limits.element_cap,
                projected: projected.map_or("more than 2^128".into(), |n| n.to_string()),
            })
        }
    }
}

/// `π: H≀G → H_ab × G_ab`, `(f, g) ↦ (∏_x f(x)[H,H], g[G,G])`.
#[derive(Clone, Debug)]
pub struct AbelianizationProjection {
    pub wreath: WreathGroup,
    pub target: FiniteGroup,
    pub hom: Homomorphism,
    pub image_invariants: AbelianInvariants,
    /// Whether the kernel is exactly the commutator subgroup of `H≀G`.
    pub kernel_is_commutator: bool,
}

pub fn abelianization_projection(
    h: &FiniteGroup,
    g: &FiniteGroup,
    limits: &Limits,
) -> Result<AbelianizationProjection> {
    let wreath = permutational_wreath(GroupAction::natural(h), GroupAction::regular(g), limits)?;
    let (qh, _) = abelianization(h, limits)?;
    let (qg, _) = abelianization(g, limits)?;
    let target = direct_product(qh.quotient(), qg.quotient(), limits)?;
    let (dh, total) = (qh.quotient().degree(), target.degree());
    let images = wreath
        .carrier()
        .generators()
        .iter()
        .map(|p| {
            let w = wreath.decode(p)?;
            let prod = w.table.iter().fold(h.identity(), |acc, x| acc.mul(x));
            Ok(qh
                .image_of(&prod)?
                .shifted(0, total)
                .mul(&qg.image_of(&w.top)?.shifted(dh, total)))
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = verify_homomorphism(wreath.carrier(), &target, images, limits)?
        .expect_epimorphism("abelianization of a wreath product")?;
    let commutator = commutator_subgroup(wreath.carrier(), limits)?;
    let kernel_is_commutator = hom.kernel_bits()? == wreath.carrier().bits_of(&commutator);
    let image_invariants = abelian_invariants(&target)?;
    Ok(AbelianizationProjection {
        wreath,
        target,
        hom,
        image_invariants,
        kernel_is_commutator,
    })
}

/// A descending cyclic tower mapping onto `A₁ ≀ (A₂ ≀ … ≀ A_r)`.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub spec: TowerSpec,
    pub tower: Tower,
    pub target: FiniteGroup,
    pub hom: Homomorphism,
}

/// Replaces each abelian `A_i` by its invariant factors `C_{i,1}, …, C_{i,l_i}`
/// and maps the refined descending tower onto `A₁ ≀ (… ≀ A_r)`.
///
/// Each `A_i` is modelled as `C_{i,1} × … × C_{i,l_i}`; the generator of layer
/// `C_{i,j}` goes to the generator of `C_{i,j}` in layer `i`.
pub fn cyclic_refinement(factors: &[FiniteGroup], limits: &Limits) -> Result<Refinement> {
    let mut orders = Vec::new();
    let mut models = Vec::new();
    for a in factors {
        let inv = abelian_invariants(a)?;
        if inv.is_trivial() {
            continue;
        }
        orders.extend_from_slice(inv.factors());
        models.push(abelian(inv.factors(), limits)?);
    }
    if models.is_empty() {
        return Err(Error::Invalid(
            "refinement needs a nontrivial factor".into(),
        ));
    }
    let spec = TowerSpec::descending(&orders);
    let tower = build_tower(&spec, limits)?;
    let target = if models.len() == 1 {
        models.pop().unwrap()
    } else {
        group_tower(&models, true, limits)?
    };
    let images = target.generators().to_vec();
    let hom = verify_homomorphism(tower.carrier(), &target, images, limits)?
        .expect_epimorphism("cyclic refinement")?;
    Ok(Refinement {
        spec,
        tower,
        target,
        hom,
    })
}

/// `A ≀ H → G = AH`, `(f, h₀) ↦ (∏_{k ∈ H} f(k)^k) · h₀` with `x^k = k⁻¹xk`.
pub fn semidirect_quotient(
    g: &FiniteGroup,
    a: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<InducedQuotient> {
    require_abelian(a)?;
    if !a.is_subgroup_of(g) || !is_normal(g, a) {
        return Err(Error::NotNormal(format!("{} in {}", a.label(), g.label())));
    }
    if !h.is_subgroup_of(g) {
        return Err(Error::Invalid(format!(
            "{} is not a subgroup of {}",
            h.label(),
            g.label()
        )));
    }
    let meet = (0..h.order())
        .filter(|&i| a.contains(&h.element(i)))
        .count();
    if a.order() * h.order() != g.order() * meet {
        return Err(Error::Invalid(format!(
            "|A||H|/|A∩H| = {} but |G| = {}",
            a.order() * h.order() / meet,
            g.order()
        )));
    }
    let wreath = permutational_wreath(GroupAction::natural(a), GroupAction::regular(h), limits)?;
    let images = wreath
        .carrier()
        .generators()
        .iter()
        .map(|p| {
            let w = wreath.decode(p)?;
            let prod = w
                .table
                .iter()
                .enumerate()
                .fold(g.identity(), |acc, (k, f)| {
                    acc.mul(&f.conjugate_by(&h.element(k)))
                });
            Ok(prod.mul(&w.top))
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = verify_homomorphism(wreath.carrier(), g, images, limits)?
        .expect_epimorphism("semidirect quotient")?;
    Ok(InducedQuotient { wreath, hom })
}

#[derive(Clone, Debug)]
pub struct InducedQuotient {
    pub wreath: WreathGroup,
    pub hom: Homomorphism,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::dg_p;
    use crate::catalog::{cyclic, dihedral, symmetric3};

    fn limits() -> Limits {
        Limits::default()
    }

    fn c(n: u64) -> FiniteGroup {
        cyclic(n).unwrap()
    }

    fn quotient_map(n: u64, m: u64) -> Homomorphism {
        let (cn, cm) = (c(n), c(m));
        verify_homomorphism(&cn, &cm, cm.generators().to_vec(), &limits()).unwrap()
    }

    #[test]
    fn identity_gmap_induces_identity() {
        let action = GroupAction::regular(&c(3));
        let phi = GMap::identity(&action);
        let ind = induced_from_gmap(&c(2), &phi, &limits()).unwrap();
        assert!(ind.hom.is_injective() && ind.hom.is_surjective());
        assert_eq!(ind.hom.gen_images(), ind.source.carrier().generators());
    }

    #[test]
    fn canonical_gmap_fibers() {
        let (bc, phi) = canonical_gmap_to_product(&c(2), &c(2), &limits()).unwrap();
        assert_eq!((phi.source().degree(), phi.target().degree()), (8, 4));
        for y in 0..4 {
            assert_eq!(phi.fiber(y).len(), 2);
        }
        // (f, c) with f trivial goes to (1, c)
        for cc in c(2).elements().iter() {
            let top = Perm::from_bytes(cc);
            let w = bc.top_element(&top);
            let k = bc.carrier().index_of(&bc.encode(&w).unwrap()).unwrap();
            assert_eq!(phi.apply(k) % 2, 0);
        }
    }

    #[test]
    fn induced_epimorphism_over_the_canonical_gmap() {
        let (_, phi) = canonical_gmap_to_product(&c(2), &c(2), &limits()).unwrap();
        let ind = induced_from_gmap(&c(2), &phi, &limits()).unwrap();
        assert_eq!(ind.source.order(), 256 * 8);
        assert_eq!(ind.target.order(), 16 * 8);
        assert!(ind.hom.is_surjective());
        assert_eq!(ind.hom.kernel_order(), Some(16));
        let report = check_gmap_laws(&c(2), &phi, 0, 1000).unwrap();
        assert!(report.exhaustive && report.passed(), "{report:?}");
    }

    #[test]
    fn empty_fibers_give_the_identity() {
        // C2 acting on {0, 1} by swapping, mapped into {0, 1, 2, 3} = two copies
        let g = c(2);
        let four = FiniteGroup::generate(
            4,
            vec![Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()],
            "C2",
        )
        .unwrap();
        let iso = verify_homomorphism(&g, &four, four.generators().to_vec(), &limits()).unwrap();
        assert!(iso.is_injective());
        let action = GroupAction::regular(&g);
        let phi = GMap::identity(&action);
        let f = vec![g.generators()[0].clone(), g.identity()];
        assert_eq!(phi.push_forward(&f), f);
        assert_eq!(phi.fiber(1), vec![1]);
    }

    #[test]
    fn first_argument() {
        let top = GroupAction::regular(&c(2));
        let id = map_first_argument(&Homomorphism::identity(&c(3)), &top, &limits()).unwrap();
        assert!(id.hom.is_injective());
        let m = map_first_argument(&quotient_map(4, 2), &top, &limits()).unwrap();
        assert_eq!((m.source.order(), m.target.order()), (32, 8));
        assert!(m.hom.is_surjective());
        assert_eq!(m.hom.kernel_order(), Some(4));
        let trivial = verify_homomorphism(&c(3), &c(2), vec![c(2).identity()], &limits()).unwrap();
        let t = map_first_argument(&trivial, &top, &limits()).unwrap();
        assert_eq!(t.hom.image_order(), 2);
    }

    #[test]
    fn second_argument() {
        let id = map_second_argument(&c(2), &Homomorphism::identity(&c(3)), &limits()).unwrap();
        assert!(id.hom.is_injective() && id.hom.is_surjective());
        let m = map_second_argument(&c(2), &quotient_map(4, 2), &limits()).unwrap();
        assert_eq!((m.source.order(), m.target.order()), (64, 8));
        assert!(m.hom.is_surjective());
        assert_eq!(m.hom.kernel_order(), Some(8));
        // non-surjective ψ: C2 → C4 hits only half of C4
        let (c2, c4) = (c(2), c(4));
        let psi =
            verify_homomorphism(&c2, &c4, vec![c4.generators()[0].pow(2)], &limits()).unwrap();
        let m = map_second_argument(&c(2), &psi, &limits()).unwrap();
        assert!(m.hom.is_verified() && !m.hom.is_surjective());
        assert!(matches!(
            map_second_argument(&symmetric3(), &psi, &limits()),
            Err(Error::NotAbelian(_))
        ));
    }

    #[test]
    fn induction_step_for_c2_c2_c2() {
        let step = induction_step_epis(&c(2), &c(2), &c(2), &limits()).unwrap();
        assert_eq!(step.domain.order(), 2048);
        assert_eq!(step.middle.order(), 128);
        assert_eq!(step.target.order(), 32);
        assert!(step.first.is_surjective() && step.second.is_surjective());
        let comp = step.composite(&limits()).unwrap();
        assert_eq!(comp.kernel_order(), Some(64));
        for g in [
            step.domain.carrier(),
            step.middle.carrier(),
            step.target.carrier(),
        ] {
            assert_eq!(dg_p(g, 2, &limits()).unwrap(), 3);
        }
    }

    #[test]
    fn induction_step_with_trivial_c() {
        let e = FiniteGroup::trivial(1);
        let step = induction_step_epis(&c(2), &c(3), &e, &limits()).unwrap();
        assert_eq!(step.domain.order(), 8 * 3);
        assert_eq!(step.target.order(), 6);
    }

    #[test]
    fn descending_to_ascending_c2_cubed() {
        let hom = descending_to_ascending(&[c(2), c(2), c(2)], &limits()).unwrap();
        assert_eq!((hom.domain().order(), hom.codomain().order()), (2048, 128));
        assert!(hom.is_surjective());
        let tower = build_tower(&TowerSpec::descending(&[2, 2, 2]), &limits()).unwrap();
        assert!(hom.domain().same_elements(tower.carrier()));
        let asc = build_tower(&TowerSpec::ascending(&[2, 2, 2]), &limits()).unwrap();
        assert!(hom.codomain().same_elements(asc.carrier()));
        let id = descending_to_ascending(&[c(2), c(3)], &limits()).unwrap();
        assert!(id.is_injective());
        assert!(matches!(
            descending_to_ascending(&[c(2), c(2), c(2), c(2)], &limits()),
            Err(Error::ElementCap { .. })
        ));
    }

    #[test]
    fn abelianization_projections() {
        for (h, g, inv, kernel) in [
            (c(2), c(2), vec![2, 2], 2),
            (c(3), c(2), vec![6], 3),
            (symmetric3(), c(2), vec![2, 2], 18),
            (c(4), c(2), vec![2, 4], 4),
        ] {
            let p = abelianization_projection(&h, &g, &limits()).unwrap();
            assert_eq!(p.image_invariants.factors(), inv.as_slice());
            assert_eq!(p.hom.kernel_order(), Some(kernel));
            assert!(p.kernel_is_commutator);
        }
    }

    #[test]
    fn refinements() {
        let r = cyclic_refinement(&[c(2), c(3)], &limits()).unwrap();
        assert!(r.hom.is_injective());
        let v4 = abelian(&[2, 2], &limits()).unwrap();
        let r = cyclic_refinement(&[v4], &limits()).unwrap();
        assert_eq!(r.spec.orders, vec![2, 2]);
        assert_eq!((r.tower.carrier().order(), r.target.order()), (8, 4));
        assert_eq!(
            dg_p(r.tower.carrier(), 2, &limits()).unwrap(),
            dg_p(&r.target, 2, &limits()).unwrap()
        );
    }

    #[test]
    fn semidirect_quotients() {
        let s3 = symmetric3();
        let a = s3.subgroup(vec![s3.generators()[0].clone()], "C3").unwrap();
        let h = s3.subgroup(vec![s3.generators()[1].clone()], "C2").unwrap();
        let q = semidirect_quotient(&s3, &a, &h, &limits()).unwrap();
        assert_eq!(q.wreath.order(), 18);
        assert_eq!(q.hom.kernel_order(), Some(3));

        let d4 = dihedral(4).unwrap();
        let a = d4.subgroup(vec![d4.generators()[0].clone()], "C4").unwrap();
        let h = d4.subgroup(vec![d4.generators()[1].clone()], "C2").unwrap();
        let q = semidirect_quotient(&d4, &a, &h, &limits()).unwrap();
        assert_eq!((q.wreath.order(), q.hom.kernel_order()), (32, Some(4)));

        let e = FiniteGroup::trivial(3);
        let c3 = s3.subgroup(vec![s3.generators()[0].clone()], "C3").unwrap();
        let q = semidirect_quotient(&c3, &c3, &e, &limits()).unwrap();
        assert!(q.hom.is_injective());
    }

    #[test]
    fn conjugation_convention_is_right_action() {
        // f(k)^k = k⁻¹ f(k) k: with k = (0 1) and f(k) = (0 1 2), (0 1)(0 1 2)(0 1) = (0 2 1)
        let k = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let x = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(
            x.conjugate_by(&k),
            Perm::from_cycles(3, &[&[0, 2, 1]]).unwrap()
        );
    }
}
