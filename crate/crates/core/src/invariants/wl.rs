//! Wreath length: bounds, exact values, the `wl = dg` characterization and
//! the nilpotent construction.

use serde::Serialize;

use super::epi::{
    candidate_orders, certify_witness, first_witness, satisfies_tower_relations, tower_images,
    TowerWitness, GRAPH_CERT_ORDER,
};
use crate::abelian::{abelianization_invariants, dg};
use crate::arith::{prime_divisors, valuation};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::Perm;
use crate::subgroup::{derived_length, is_nilpotent, sylow_subgroup};
use crate::wreath::{build_tower, TowerSpec};

/// Tower lengths searched beyond the lower bound before giving up.
pub const EXTRA_LENGTHS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperSource {
    Cyclic,
    /// The group's own generators satisfy the tower relations.
    Generators,
    NilpotentTower,
    Search,
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct WlCertificate {
    pub group: String,
    pub order: usize,
    pub dg: Option<usize>,
    pub dl: Option<usize>,
    pub lower: usize,
    /// Which of `dg`, `dl` and positivity attain the lower bound.
    pub lower_reasons: Vec<String>,
    pub upper: Option<TowerWitness>,
    pub upper_source: Option<UpperSource>,
    pub exact: Option<usize>,
    /// Lengths at which no descending cyclic tower maps onto the group.
    pub refuted_lengths: Vec<usize>,
    pub tuple_budget: u64,
    /// True when the search stopped on its budget rather than by an answer.
    pub budget_exhausted: bool,
    pub notes: Vec<String>,
}

impl WlCertificate {
    pub fn upper_length(&self) -> Option<usize> {
        self.upper.as_ref().map(|w| w.spec.len())
    }
}

fn is_cyclic(g: &FiniteGroup) -> bool {
    g.element_orders().iter().any(|&o| o as usize == g.order())
}

/// Lower bound `max(dg, dl, 1)`, an upper bound from a witness tower, and
/// the exact value when the two meet or every shorter length is refuted.
pub fn wl_bounds(g: &FiniteGroup, limits: &Limits) -> Result<WlCertificate> {
    let mut cert = WlCertificate {
        group: g.label().to_string(),
        order: g.order(),
        dg: None,
        dl: None,
        lower: 1,
        lower_reasons: Vec::new(),
        upper: None,
        upper_source: None,
        exact: None,
        refuted_lengths: Vec::new(),
        tuple_budget: limits.tuple_budget,
        budget_exhausted: false,
        notes: Vec::new(),
    };
    if g.is_trivial() {
        cert.dg = Some(0);
        cert.dl = Some(0);
        cert.lower_reasons.push("positive".into());
        let spec = TowerSpec::descending(&[1]);
        cert.upper = Some(certify_witness(&spec, g, vec![g.identity()], limits)?);
        cert.upper_source = Some(UpperSource::Trivial);
        cert.exact = Some(1);
        return Ok(cert);
    }
    match derived_length(g, limits) {
        Ok(d) => cert.dl = Some(d),
        Err(Error::NotSolvable { order }) => {
            cert.notes.push(format!(
                "not solvable (derived series stalls at order {order}); no cyclic tower maps onto it"
            ));
        }
        Err(e) => return Err(e),
    }
    match dg(g, limits) {
        Ok(d) => cert.dg = Some(d),
        Err(Error::PerfectGroup(_)) => cert.notes.push("perfect group: dg undefined".into()),
        Err(e) => return Err(e),
    }
    let dgv = cert.dg.unwrap_or(0);
    let dlv = cert.dl.unwrap_or(0);
    cert.lower = dgv.max(dlv).max(1);
    for (name, v) in [("dg", dgv), ("dl", dlv), ("positive", 1)] {
        if v == cert.lower {
            cert.lower_reasons.push(name.into());
        }
    }
    if cert.dl.is_none() {
        return Ok(cert);
    }
    if g.table().is_none() {
        cert.notes.push(format!(
            "order {} too large for the tower search",
            g.order()
        ));
        return Ok(cert);
    }

    if is_cyclic(g) {
        let spec = TowerSpec::descending(&[g.order() as u64]);
        let gen = (0..g.order())
            .find(|&i| g.element_orders()[i] as usize == g.order())
            .map(|i| g.element(i))
            .expect("cyclic");
        cert.upper = Some(certify_witness(&spec, g, vec![gen], limits)?);
        cert.upper_source = Some(UpperSource::Cyclic);
        cert.exact = Some(1);
        return Ok(cert);
    }
    if is_nilpotent(g) {
        match nilpotent_tower(g, limits) {
            Ok(Some(nt)) => {
                if cert
                    .upper_length()
                    .is_none_or(|u| nt.witness.spec.len() < u)
                {
                    cert.upper = Some(nt.witness);
                    cert.upper_source = Some(UpperSource::NilpotentTower);
                }
                if cert.upper_length() == Some(cert.lower) {
                    cert.exact = Some(cert.lower);
                    return Ok(cert);
                }
            }
            Ok(None) => cert
                .notes
                .push("some Sylow subgroup has no tower of length equal to its dg".into()),
            Err(e) if e.is_resource_limit() => {
                cert.budget_exhausted |= matches!(e, Error::BudgetExceeded { .. });
                cert.notes.push(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(w) = generator_witness(g, limits)? {
        if cert.upper_length().is_none_or(|u| w.spec.len() < u) {
            cert.upper = Some(w);
            cert.upper_source = Some(UpperSource::Generators);
        }
        if cert.upper_length() == Some(cert.lower) {
            cert.exact = Some(cert.lower);
            return Ok(cert);
        }
    }
    let orders = candidate_orders(g);
    for r in cert.lower..=cert.lower + EXTRA_LENGTHS {
        match first_witness(g, r, &orders, limits) {
            Ok(Some(w)) => {
                if cert.upper_length().is_none_or(|u| r < u) {
                    cert.upper = Some(w);
                    cert.upper_source = Some(UpperSource::Search);
                }
                cert.exact = Some(r);
                return Ok(cert);
            }
            Ok(None) => cert.refuted_lengths.push(r),
            Err(e) if e.is_resource_limit() => {
                cert.budget_exhausted |= matches!(e, Error::BudgetExceeded { .. });
                cert.notes.push(format!("length {r}: {e}"));
                return Ok(cert);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(cert)
}

/// A witness built from the generators of `g` taken as tower images, when
/// their orders and commutation pattern satisfy the tower relations.
fn generator_witness(g: &FiniteGroup, limits: &Limits) -> Result<Option<TowerWitness>> {
    let gens = g.generators();
    let orders: Vec<u64> = gens.iter().map(|x| x.order()).collect();
    if gens.is_empty() || orders.iter().any(|&n| n < 2) {
        return Ok(None);
    }
    if !satisfies_tower_relations(g, &orders, gens)? {
        return Ok(None);
    }
    certify_witness(&TowerSpec::descending(&orders), g, gens.to_vec(), limits).map(Some)
}

/// `dg` of a descending tower whose factors have the given orders:
/// the largest number of factors divisible by a common prime.
pub fn tower_dg(orders: &[u64]) -> usize {
    let mut primes: Vec<u64> = orders.iter().flat_map(|&n| prime_divisors(n)).collect();
    primes.sort_unstable();
    primes.dedup();
    primes
        .iter()
        .map(|&p| orders.iter().filter(|&&n| n % p == 0).count())
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationWitness {
    pub prime: u64,
    pub tower: TowerWitness,
    pub tower_dg: usize,
    pub group_dg: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationReport {
    pub group: String,
    pub dg: Option<usize>,
    pub wl: Option<usize>,
    pub wl_equals_dg: Option<bool>,
    pub witness: Option<CharacterizationWitness>,
    /// No prime and tower of length `dg` with that prime dividing every factor maps onto `G`.
    pub refuted_at_dg: bool,
    /// The witness exists exactly when `wl = dg`.
    pub consistent: Option<bool>,
}

/// Looks for a prime `p` and a length-`dg` descending tower with `p`
/// dividing every factor that maps onto `G`; such a map is automatically
/// dg-preserving, since the tower then has `dg_p = dg`.
pub fn check_wl_eq_dg_characterization(
    g: &FiniteGroup,
    cert: &WlCertificate,
    limits: &Limits,
) -> Result<CharacterizationReport> {
    let mut report = CharacterizationReport {
        group: g.label().to_string(),
        dg: cert.dg,
        wl: cert.exact,
        wl_equals_dg: cert.exact.zip(cert.dg).map(|(w, d)| w == d),
        witness: None,
        refuted_at_dg: false,
        consistent: None,
    };
    let Some(r) = cert.dg else {
        return Ok(report);
    };
    if r == 0 {
        // no tower has length zero
        report.refuted_at_dg = true;
    } else {
        let orders = candidate_orders(g);
        // a certified upper witness of length dg with a common prime settles it
        let known = cert
            .upper
            .as_ref()
            .filter(|w| w.spec.len() == r)
            .and_then(|w| {
                prime_divisors(g.exponent())
                    .into_iter()
                    .find(|p| w.spec.orders.iter().all(|n| n % p == 0))
                    .map(|p| (p, w.clone()))
            });
        let searched = prime_divisors(g.exponent()).into_iter().map(|p| {
            let divisible: Vec<u64> = orders.iter().copied().filter(|n| n % p == 0).collect();
            first_witness(g, r, &divisible, limits).map(|t| t.map(|t| (p, t)))
        });
        for found in known.map(|k| Ok(Some(k))).into_iter().chain(searched) {
            if let Some((p, tower)) = found? {
                let mut tdg = tower_dg(&tower.spec.orders);
                if tower
                    .spec
                    .projected_order()
                    .is_some_and(|n| n <= GRAPH_CERT_ORDER)
                {
                    let carrier = build_tower(&tower.spec, limits)?;
                    let direct = dg(carrier.carrier(), limits)?;
                    if direct != tdg {
                        return Err(Error::defect(
                            "dg of a cyclic tower",
                            format!("{}: formula {tdg}, computed {direct}", tower.spec),
                        ));
                    }
                    tdg = direct;
                }
                report.witness = Some(CharacterizationWitness {
                    prime: p,
                    tower,
                    tower_dg: tdg,
                    group_dg: r,
                });
                break;
            }
        }
        report.refuted_at_dg = report.witness.is_none();
    }
    report.consistent = report.wl_equals_dg.map(|eq| eq == report.witness.is_some());
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SylowTower {
    pub prime: u64,
    pub order: usize,
    pub dg: usize,
    pub orders: Vec<u64>,
    pub images: Vec<Perm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentTower {
    pub sylow: Vec<SylowTower>,
    pub witness: TowerWitness,
}

/// A length-`dg(G)` cyclic tower onto a nilpotent `G`.
///
/// Each Sylow subgroup `P_i` gets a tower of length `dg(P_i)` by search,
/// padded with trivial factors to length `dg(G)`. Layer `j` of the result
/// is `C_j = ∏_i C_{i,j}` with image the product of the Sylow images, which
/// commute. `None` means some Sylow subgroup has no such tower, so `G` is
/// not semiabelian.
pub fn nilpotent_tower(g: &FiniteGroup, limits: &Limits) -> Result<Option<NilpotentTower>> {
    if !is_nilpotent(g) {
        return Err(Error::NotNilpotent(g.label().to_string()));
    }
    if g.is_trivial() {
        return Ok(None);
    }
    let r = dg(g, limits)?;
    let mut layers = vec![1u64; r];
    let mut images = vec![g.identity(); r];
    let mut sylow = Vec::new();
    for p in prime_divisors(g.order() as u64) {
        let sp = sylow_subgroup(g, p, limits)?;
        let d = dg(&sp, limits)?;
        let e = sp.exponent();
        let Some(a) = tower_images(&sp, &vec![e; d], limits)? else {
            return Ok(None);
        };
        for j in 0..d {
            layers[j] *= e;
            images[j] = images[j].mul(&a[j]);
        }
        sylow.push(SylowTower {
            prime: p,
            order: sp.order(),
            dg: d,
            orders: vec![e; d],
            images: a,
        });
    }
    debug_assert!(sylow.iter().all(|s| valuation(s.order as u64, s.prime) > 0));
    let spec = TowerSpec::descending(&layers);
    let witness = certify_witness(&spec, g, images, limits)?;
    Ok(Some(NilpotentTower { sylow, witness }))
}

#[derive(Clone, Debug, Serialize)]
pub struct DlTowerCheck {
    pub orders: Vec<u64>,
    /// Derived length of each bracketing, absent when the tower exceeds the caps.
    pub descending: Option<usize>,
    pub ascending: Option<usize>,
    pub passed: bool,
}

/// Derived length of both bracketings of a cyclic tower with factors `≥ 2`.
pub fn dl_tower_check(orders: &[u64], limits: &Limits) -> Result<DlTowerCheck> {
    if orders.is_empty() || orders.iter().any(|&n| n < 2) {
        return Err(Error::Invalid(
            "derived length check needs factors of order at least 2".into(),
        ));
    }
    let dl_of = |spec: TowerSpec| -> Result<Option<usize>> {
        match build_tower(&spec, limits) {
            Ok(t) => derived_length(t.carrier(), limits).map(Some),
            Err(Error::ElementCap { .. } | Error::DegreeCap { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let descending = dl_of(TowerSpec::descending(orders))?;
    let ascending = if orders.len() <= 2 {
        // the bracketings coincide
        descending
    } else {
        dl_of(TowerSpec::ascending(orders))?
    };
    let r = orders.len();
    let computed: Vec<usize> = [descending, ascending].into_iter().flatten().collect();
    Ok(DlTowerCheck {
        orders: orders.to_vec(),
        descending,
        ascending,
        passed: !computed.is_empty() && computed.iter().all(|&d| d == r),
    })
}

/// Invariants of the abelianization, for reporting.
pub fn abelianization_factors(g: &FiniteGroup, limits: &Limits) -> Result<Vec<u64>> {
    Ok(abelianization_invariants(g, limits)?.factors().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, cyclic, dihedral, quaternion8, symmetric3};
    use crate::expr::parse_group;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn s3_has_wl_two_and_dg_one() {
        let c = wl_bounds(&symmetric3(), &limits()).unwrap();
        assert_eq!((c.dg, c.dl, c.exact), (Some(1), Some(2), Some(2)));
        assert_eq!(c.upper.as_ref().unwrap().spec.orders, vec![3, 2]);
        let ch = check_wl_eq_dg_characterization(&symmetric3(), &c, &limits()).unwrap();
        assert!(ch.witness.is_none() && ch.refuted_at_dg);
        assert_eq!(ch.consistent, Some(true));
    }

    #[test]
    fn d4_has_wl_equal_to_dg() {
        let d4 = dihedral(4).unwrap();
        let c = wl_bounds(&d4, &limits()).unwrap();
        assert_eq!((c.dg, c.exact), (Some(2), Some(2)));
        let ch = check_wl_eq_dg_characterization(&d4, &c, &limits()).unwrap();
        let w = ch.witness.unwrap();
        assert_eq!(w.prime, 2);
        assert!(w.tower.spec.orders.iter().all(|n| n % 2 == 0));
        assert_eq!(w.tower_dg, w.group_dg);
    }

    #[test]
    fn cyclic_groups_have_wl_one() {
        for n in 2..=12 {
            let c = wl_bounds(&cyclic(n).unwrap(), &limits()).unwrap();
            assert_eq!(c.exact, Some(1));
            assert_eq!(c.upper_source, Some(UpperSource::Cyclic));
        }
        assert_eq!(
            wl_bounds(&FiniteGroup::trivial(1), &limits())
                .unwrap()
                .exact,
            Some(1)
        );
    }

    #[test]
    fn q8_through_the_nilpotent_tower() {
        let q8 = quaternion8();
        let c = wl_bounds(&q8, &limits()).unwrap();
        assert_eq!(c.exact, Some(2));
        assert_eq!(c.upper_source, Some(UpperSource::NilpotentTower));
    }

    #[test]
    fn nilpotent_towers_combine_sylow_layers() {
        let c6 = abelian(&[2, 3], &limits()).unwrap();
        let nt = nilpotent_tower(&c6, &limits()).unwrap().unwrap();
        assert_eq!(nt.witness.spec.orders, vec![6]);
        let g = abelian(&[2, 2, 9], &limits()).unwrap();
        let nt = nilpotent_tower(&g, &limits()).unwrap().unwrap();
        assert_eq!(nt.witness.spec.orders, vec![18, 2]);
        let g = parse_group("Q8 * C3", &limits()).unwrap();
        let nt = nilpotent_tower(&g, &limits()).unwrap().unwrap();
        assert_eq!(nt.witness.spec.orders, vec![12, 4]);
        assert!(matches!(
            nilpotent_tower(&symmetric3(), &limits()),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn towers_have_wl_equal_to_length() {
        for s in [&[2u64, 2][..], &[3, 2], &[2, 3], &[4, 2]] {
            let t = build_tower(&TowerSpec::descending(s), &limits()).unwrap();
            let c = wl_bounds(t.carrier(), &limits()).unwrap();
            assert_eq!(c.exact, Some(s.len()), "{s:?}");
            assert_eq!(c.dg, Some(tower_dg(s)));
        }
    }

    #[test]
    fn derived_length_of_towers() {
        for s in [&[2u64][..], &[2, 2], &[3, 2], &[2, 3], &[4, 2], &[2, 2, 2]] {
            let c = dl_tower_check(s, &limits()).unwrap();
            assert!(c.passed, "{c:?}");
        }
        let c = dl_tower_check(&[2, 2, 2], &limits()).unwrap();
        assert_eq!((c.descending, c.ascending), (Some(3), Some(3)));
    }

    #[test]
    fn tower_dg_formula() {
        assert_eq!(tower_dg(&[2, 4]), 2);
        assert_eq!(tower_dg(&[3, 2]), 1);
        assert_eq!(tower_dg(&[6, 2, 3]), 2);
    }
}
