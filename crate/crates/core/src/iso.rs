//! Isomorphism testing by generator-image search.

use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup, Limits};
use crate::hom::{verify_homomorphism, Homomorphism};
use crate::subgroup::conjugacy_classes;

/// Extends `gens[i] ↦ images[i]` along the Cayley graph of the subgroup the
/// generators span. Returns the partial map, or `None` on a conflict or a
/// nontrivial kernel element.
fn extend_injective(
    tg: &CayleyTable,
    th: &CayleyTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; tg.len()];
    map[0] = 0;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = tg.mul(x, g);
            let v = th.mul(map[x] as usize, h) as u32;
            if map[y] == u32::MAX {
                if v == 0 && y != 0 {
                    return None;
                }
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

fn order_census(g: &FiniteGroup) -> Vec<u32> {
    let mut v = g.element_orders().to_vec();
    v.sort_unstable();
    v
}

/// An isomorphism `G → H`, or `None` if there is none.
///
/// Searches images for an irredundant generating set of `G` among elements of
/// matching order, the first image up to conjugacy in `H`. Each partial
/// assignment is checked on the subgroup it generates before going deeper.
pub fn is_isomorphic(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<Option<Homomorphism>> {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    limits.check_brute(g.order())?;
    if order_census(g) != order_census(h) {
        return Ok(None);
    }
    let (tg, th) = (g.require_table()?, h.require_table()?);
    let all = {
        let mut b = fixedbitset::FixedBitSet::with_capacity(g.order());
        b.insert_range(..);
        b
    };
    let gens = tg.generating_subset(&all);
    if gens.is_empty() {
        let hom = verify_homomorphism(g, h, vec![h.identity(); g.generators().len()], limits)?;
        return Ok(Some(hom.with_anchor("isomorphism")));
    }
    let h_orders = h.element_orders();
    let g_orders = g.element_orders();
    let class_reps: Vec<usize> = conjugacy_classes(h)?.iter().map(|c| c[0]).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let pool: Vec<usize> = if i == 0 {
                class_reps.clone()
            } else {
                (0..h.order()).collect()
            };
            pool.into_iter()
                .filter(|&y| h_orders[y] == g_orders[x])
                .collect()
        })
        .collect();

    let mut budget = limits.tuple_budget;
    let mut images = Vec::with_capacity(gens.len());
    let found = search(tg, th, &gens, &candidates, &mut images, &mut budget, limits)?;
    let Some(map) = found else {
        return Ok(None);
    };
    let gen_images = g
        .generators()
        .iter()
        .map(|x| h.element(map[g.index_of(x).expect("generator")] as usize))
        .collect();
    let hom = verify_homomorphism(g, h, gen_images, limits)?;
    if !(hom.is_verified() && hom.is_surjective()) {
        return Err(Error::defect(
            "isomorphism search",
            format!("{} -> {} failed the graph check", g.label(), h.label()),
        ));
    }
    Ok(Some(hom.with_anchor("isomorphism")))
}

fn search(
    tg: &CayleyTable,
    th: &CayleyTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    budget: &mut u64,
    limits: &Limits,
) -> Result<Option<Vec<u32>>> {
    let depth = images.len();
    for &y in &candidates[depth] {
        if *budget == 0 {
            return Err(Error::BudgetExceeded {
                budget: limits.tuple_budget,
                context: "isomorphism search".into(),
            });
        }
        *budget -= 1;
        if (*budget).is_multiple_of(4096) {
            limits.cancel.check()?;
        }
        images.push(y);
        if let Some(map) = extend_injective(tg, th, &gens[..=depth], images) {
            if depth + 1 == gens.len() {
                return Ok(Some(map));
            }
            if let Some(done) = search(tg, th, gens, candidates, images, budget, limits)? {
                return Ok(Some(done));
            }
        }
        images.pop();
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, cyclic, dihedral, quaternion8, symmetric3};
    use crate::wreath::regular_wreath;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn c2_wr_c2_is_d4() {
        let c2 = cyclic(2).unwrap();
        let w = regular_wreath(&c2, &c2, &limits()).unwrap();
        let iso = is_isomorphic(w.carrier(), &dihedral(4).unwrap(), &limits())
            .unwrap()
            .expect("witness");
        assert!(iso.is_injective() && iso.is_surjective());
    }

    #[test]
    fn non_isomorphic_pairs() {
        assert!(
            is_isomorphic(&dihedral(4).unwrap(), &quaternion8(), &limits())
                .unwrap()
                .is_none()
        );
        assert!(is_isomorphic(&cyclic(6).unwrap(), &symmetric3(), &limits())
            .unwrap()
            .is_none());
        let c2c2 = abelian(&[2, 2], &limits()).unwrap();
        assert!(is_isomorphic(&c2c2, &cyclic(4).unwrap(), &limits())
            .unwrap()
            .is_none());
    }

    #[test]
    fn coprime_product_is_cyclic() {
        let c2c3 = abelian(&[2, 3], &limits()).unwrap();
        assert!(is_isomorphic(&c2c3, &cyclic(6).unwrap(), &limits())
            .unwrap()
            .is_some());
        assert!(
            is_isomorphic(&dihedral(3).unwrap(), &symmetric3(), &limits())
                .unwrap()
                .is_some()
        );
    }
}
