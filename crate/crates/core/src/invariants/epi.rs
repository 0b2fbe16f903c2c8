//! Existence of epimorphisms from descending cyclic towers onto a group.
//!
//! Images `a₁, …, a_r` of the tower generators define a homomorphism from
//! `C₁ ≀ (C₂ ≀ … ≀ C_r)` exactly when each `a_i^{n_i} = 1` and `a_i` commutes
//! with all of its conjugates under `K_i = ⟨a_{i+1}, …, a_r⟩`: the tower is
//! `C₁ ≀ W` with base the direct sum of the `W`-conjugates of the first
//! generator, and those relations present it. The condition at layer `i`
//! depends on the later images only through `K_i`, so the search runs from
//! the last layer to the first over the subgroup `K`, remembering the
//! subgroups from which no completion exists.

use fixedbitset::FixedBitSet;
use hashbrown::HashSet;
use serde::Serialize;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup, Limits};
use crate::hom::{verify_homomorphism, Homomorphism};
use crate::perm::Perm;
use crate::wreath::{build_tower, TowerSpec};

/// Towers up to this order are certified by the graph criterion as well.
pub const GRAPH_CERT_ORDER: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// The graph subgroup of tower × group was closed and has the tower's order.
    Graph,
    /// Orders and conjugate commutation checked on the images; tower too large to close.
    Structural,
}

/// An epimorphism from a descending cyclic tower onto a group.
#[derive(Clone, Debug, Serialize)]
pub struct TowerWitness {
    pub spec: TowerSpec,
    /// Image of each tower generator, in layer order.
    pub images: Vec<Perm>,
    pub certification: Certification,
    #[serde(skip)]
    pub hom: Option<Homomorphism>,
}

/// Whether `images` satisfy the tower relations for `orders` and generate `G`.
pub fn satisfies_tower_relations(g: &FiniteGroup, orders: &[u64], images: &[Perm]) -> Result<bool> {
    let t = g.require_table()?;
    if orders.len() != images.len() {
        return Ok(false);
    }
    let idx: Vec<usize> = match images.iter().map(|x| g.index_of(x)).collect() {
        Some(v) => v,
        None => return Ok(false),
    };
    let mut k_gens: Vec<usize> = Vec::new();
    for i in (0..idx.len()).rev() {
        let a = idx[i];
        if t.power(a, orders[i]) != 0 || !commutes_with_orbit(t, a, &k_gens) {
            return Ok(false);
        }
        k_gens.push(a);
    }
    Ok(t.closure(k_gens).count_ones(..) == g.order())
}

fn commutes_with_orbit(t: &CayleyTable, a: usize, by: &[usize]) -> bool {
    a == 0
        || t.conjugation_orbit(a, by)
            .into_iter()
            .all(|c| t.commute(a, c))
}

struct Search<'a> {
    t: &'a CayleyTable,
    n: usize,
    orders: Vec<u64>,
    // per layer: elements whose order divides the layer's cyclic order
    pools: Vec<Vec<usize>>,
    dead: Vec<HashSet<FixedBitSet>>,
    budget: u64,
    limit: u64,
    limits: &'a Limits,
}

impl Search<'_> {
    /// Images for layers `0..=layer`, given `K` generated by `k_gens`.
    fn run(
        &mut self,
        layer: usize,
        k: &FixedBitSet,
        k_gens: &[usize],
    ) -> Result<Option<Vec<usize>>> {
        if self.dead[layer].contains(k) {
            return Ok(None);
        }
        // a layer of order n over K gives a group of order at most n^|K|·|K|
        let mut reach = k.count_ones(..) as u128;
        for &n in self.orders[..=layer].iter().rev() {
            if reach >= self.n as u128 {
                break;
            }
            let m = u32::try_from(reach).unwrap_or(u32::MAX);
            reach = (n as u128).saturating_pow(m).saturating_mul(reach);
        }
        if reach < self.n as u128 {
            self.dead[layer].insert(k.clone());
            return Ok(None);
        }
        let mut tried: HashSet<FixedBitSet> = HashSet::new();
        for i in 0..self.pools[layer].len() {
            let a = self.pools[layer][i];
            if self.budget == 0 {
                return Err(Error::BudgetExceeded {
                    budget: self.limit,
                    context: "tower epimorphism search".into(),
                });
            }
            self.budget -= 1;
            if self.budget.is_multiple_of(1024) {
                self.limits.cancel.check()?;
            }
            if !commutes_with_orbit(self.t, a, k_gens) {
                continue;
            }
            let mut gens = k_gens.to_vec();
            let next = if k.contains(a) {
                k.clone()
            } else {
                gens.push(a);
                self.t.join(k, &gens)
            };
            if layer == 0 {
                if next.count_ones(..) == self.n {
                    return Ok(Some(vec![a]));
                }
                continue;
            }
            // the earlier layers only see K
            if !tried.insert(next.clone()) {
                continue;
            }
            if let Some(mut rest) = self.run(layer - 1, &next, &gens)? {
                rest.push(a);
                return Ok(Some(rest));
            }
        }
        self.dead[layer].insert(k.clone());
        Ok(None)
    }
}

/// Images of the tower generators for a surjection, or `None` when none exists.
///
/// Exhaustive: `None` is a refutation. Each candidate image tried counts
/// against `limits.tuple_budget`.
pub fn tower_images(g: &FiniteGroup, orders: &[u64], limits: &Limits) -> Result<Option<Vec<Perm>>> {
    if orders.is_empty() {
        return Ok(g.is_trivial().then(Vec::new));
    }
    // Lagrange: the image has order at most |tower|
    let projected = TowerSpec::descending(orders).projected_order();
    if projected.is_some_and(|n| n < g.order() as u128) {
        return Ok(None);
    }
    let t = g.require_table()?;
    let el_orders = g.element_orders();
    let pools = orders
        .iter()
        .map(|&n| {
            (0..g.order())
                .filter(|&x| n % el_orders[x] as u64 == 0)
                .collect()
        })
        .collect();
    let mut search = Search {
        t,
        n: g.order(),
        orders: orders.to_vec(),
        pools,
        dead: vec![HashSet::new(); orders.len()],
        budget: limits.tuple_budget,
        limit: limits.tuple_budget,
        limits,
    };
    let mut trivial = FixedBitSet::with_capacity(g.order());
    trivial.insert(0);
    let found = search.run(orders.len() - 1, &trivial, &[])?;
    Ok(found.map(|idx| idx.into_iter().map(|i| g.element(i)).collect()))
}

/// Certifies `images` as an epimorphism from the tower of `spec` onto `G`.
pub fn certify_witness(
    spec: &TowerSpec,
    g: &FiniteGroup,
    images: Vec<Perm>,
    limits: &Limits,
) -> Result<TowerWitness> {
    if !satisfies_tower_relations(g, &spec.orders, &images)? {
        return Err(Error::defect(
            "tower epimorphism",
            format!("images {images:?} violate the relations of {spec}"),
        ));
    }
    let small = spec
        .projected_order()
        .is_some_and(|n| n <= GRAPH_CERT_ORDER);
    if !small {
        return Ok(TowerWitness {
            spec: spec.clone(),
            images,
            certification: Certification::Structural,
            hom: None,
        });
    }
    let tower = build_tower(spec, limits)?;
    let hom = verify_homomorphism(tower.carrier(), g, images.clone(), limits)?
        .expect_epimorphism("epimorphism from a cyclic tower")?;
    Ok(TowerWitness {
        spec: spec.clone(),
        images,
        certification: Certification::Graph,
        hom: Some(hom),
    })
}

/// An epimorphism from the descending tower of `spec` onto `G`, if any.
///
/// `spec` must be descending; `None` is an exhaustive refutation.
pub fn epi_exists(
    spec: &TowerSpec,
    g: &FiniteGroup,
    limits: &Limits,
) -> Result<Option<TowerWitness>> {
    if spec.bracketing != crate::wreath::Bracketing::Descending {
        return Err(Error::Invalid(
            "tower searches use descending towers".into(),
        ));
    }
    match tower_images(g, &spec.orders, limits)? {
        Some(images) => certify_witness(spec, g, images, limits).map(Some),
        None => Ok(None),
    }
}

/// Cyclic orders that can occur in a witness: divisors of `exp(G)` that are at least 2.
pub fn candidate_orders(g: &FiniteGroup) -> Vec<u64> {
    divisors(g.exponent())
        .into_iter()
        .filter(|&d| d >= 2)
        .collect()
}

/// The lexicographically first length-`r` spec over `orders` admitting an
/// epimorphism onto `G`, or `None` if no length-`r` tower maps onto `G`.
///
/// If any tower works then so does `[m, …, m]` with `m` the largest
/// candidate divisible by all image orders, so that spec decides existence
/// before the lexicographic scan begins.
pub fn first_witness(
    g: &FiniteGroup,
    r: usize,
    orders: &[u64],
    limits: &Limits,
) -> Result<Option<TowerWitness>> {
    let Some(&top) = orders.last() else {
        return Ok(None);
    };
    if g.is_trivial() {
        let spec = TowerSpec::descending(&vec![top; r]);
        return certify_witness(&spec, g, vec![g.identity(); r], limits).map(Some);
    }
    if tower_images(g, &vec![top; r], limits)?.is_none() {
        return Ok(None);
    }
    let mut spec = vec![0usize; r];
    loop {
        let factors: Vec<u64> = spec.iter().map(|&i| orders[i]).collect();
        if let Some(images) = tower_images(g, &factors, limits)? {
            return certify_witness(&TowerSpec::descending(&factors), g, images, limits).map(Some);
        }
        // next spec in lexicographic order
        let mut pos = r;
        loop {
            if pos == 0 {
                return Err(Error::defect(
                    "tower epimorphism search",
                    format!(
                        "[{top}; {r}] maps onto {} but no spec over {orders:?} does",
                        g.label()
                    ),
                ));
            }
            pos -= 1;
            spec[pos] += 1;
            if spec[pos] < orders.len() {
                break;
            }
            spec[pos] = 0;
        }
    }
}

/// Exhaustive oracle: all image tuples, each checked by the graph criterion.
pub fn epi_exists_brute(spec: &TowerSpec, g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    let tower = build_tower(spec, limits)?;
    let r = spec.orders.len();
    let tuples = (g.order() as u128).checked_pow(r as u32);
    if tuples.is_none_or(|n| n > limits.tuple_budget as u128) {
        return Err(Error::BudgetExceeded {
            budget: limits.tuple_budget,
            context: "brute-force tower epimorphism search".into(),
        });
    }
    let mut idx = vec![0usize; r];
    loop {
        let images: Vec<Perm> = idx.iter().map(|&i| g.element(i)).collect();
        let hom = verify_homomorphism(tower.carrier(), g, images, limits)?;
        if hom.is_verified() && hom.is_surjective() {
            return Ok(true);
        }
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < g.order() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, cyclic, dihedral, quaternion8, symmetric3};
    use crate::functorial::semidirect_quotient;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn cyclic_quotients() {
        let spec = TowerSpec::descending(&[6]);
        for d in [2, 3, 6] {
            let w = epi_exists(&spec, &cyclic(d).unwrap(), &limits())
                .unwrap()
                .unwrap();
            assert_eq!(w.certification, Certification::Graph);
            assert!(w.hom.unwrap().is_surjective());
        }
        assert!(epi_exists(&spec, &cyclic(4).unwrap(), &limits())
            .unwrap()
            .is_none());
    }

    #[test]
    fn s3_is_an_image_of_c3_wr_c2() {
        let s3 = symmetric3();
        let w = epi_exists(&TowerSpec::descending(&[3, 2]), &s3, &limits())
            .unwrap()
            .expect("witness");
        assert_eq!(w.hom.unwrap().kernel_order(), Some(3));
        let a = s3.subgroup(vec![s3.generators()[0].clone()], "C3").unwrap();
        let h = s3.subgroup(vec![s3.generators()[1].clone()], "C2").unwrap();
        assert!(semidirect_quotient(&s3, &a, &h, &limits()).is_ok());
        assert!(epi_exists(&TowerSpec::descending(&[2, 2]), &s3, &limits())
            .unwrap()
            .is_none());
        assert!(epi_exists(&TowerSpec::descending(&[2, 3]), &s3, &limits())
            .unwrap()
            .is_none());
    }

    #[test]
    fn agrees_with_brute_force() {
        let groups = [
            symmetric3(),
            dihedral(4).unwrap(),
            quaternion8(),
            abelian(&[2, 2], &limits()).unwrap(),
            cyclic(4).unwrap(),
            dihedral(3).unwrap(),
        ];
        let specs: &[&[u64]] = &[
            &[2],
            &[4],
            &[2, 2],
            &[2, 3],
            &[3, 2],
            &[4, 2],
            &[2, 4],
            &[6, 2],
            &[4, 4],
        ];
        for g in &groups {
            for s in specs {
                let spec = TowerSpec::descending(s);
                if spec.projected_order().unwrap() > 1 << 12 {
                    continue;
                }
                let fast = epi_exists(&spec, g, &limits()).unwrap().is_some();
                let slow = epi_exists_brute(&spec, g, &limits()).unwrap();
                assert_eq!(fast, slow, "{} from {spec}", g.label());
            }
        }
    }

    #[test]
    fn large_towers_are_certified_structurally() {
        let q8 = quaternion8();
        let w = epi_exists(&TowerSpec::descending(&[4, 4]), &q8, &limits())
            .unwrap()
            .unwrap();
        assert_eq!(w.certification, Certification::Graph);
        let w = epi_exists(&TowerSpec::descending(&[4, 4, 4]), &q8, &limits())
            .unwrap()
            .unwrap();
        assert_eq!(w.certification, Certification::Structural);
        assert!(satisfies_tower_relations(&q8, &[4, 4, 4], &w.images).unwrap());
    }

    #[test]
    fn lexicographic_first_witness() {
        let s3 = symmetric3();
        let orders = candidate_orders(&s3);
        assert_eq!(orders, vec![2, 3, 6]);
        assert!(first_witness(&s3, 1, &orders, &limits()).unwrap().is_none());
        let w = first_witness(&s3, 2, &orders, &limits()).unwrap().unwrap();
        assert_eq!(w.spec.orders, vec![3, 2]);
        let d4 = dihedral(4).unwrap();
        let w = first_witness(&d4, 2, &candidate_orders(&d4), &limits())
            .unwrap()
            .unwrap();
        assert_eq!(w.spec.orders, vec![2, 2]);
    }

    #[test]
    fn budget_exhaustion_is_not_refutation() {
        let tight = Limits {
            tuple_budget: 3,
            ..limits()
        };
        assert!(matches!(
            epi_exists(&TowerSpec::descending(&[3, 2]), &symmetric3(), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
