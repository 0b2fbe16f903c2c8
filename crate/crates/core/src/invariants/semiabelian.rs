//! Membership in the semiabelian family.
//!
//! A nonabelian `G` is semiabelian iff `G = AH` with `A` an abelian normal
//! subgroup and `H` a proper semiabelian subgroup. Enlarging `A` keeps
//! `AH = G`, so only maximal abelian normal subgroups are tried. Supplements
//! generated by one lift of each generator of `G/A` are tried first; the
//! full subgroup lattice is the fallback.

use fixedbitset::FixedBitSet;
use hashbrown::{HashMap, HashSet};
use serde::Serialize;

use crate::abelian::{abelian_invariants, AbelianInvariants};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup, Limits};
use crate::perm::Perm;
use crate::subgroup::is_normal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

/// One factorization `current = A·H`; the next stage is `H`.
#[derive(Clone, Debug, Serialize)]
pub struct SemiabelianStep {
    pub group_order: usize,
    pub a_order: usize,
    pub a_invariants: AbelianInvariants,
    pub a_generators: Vec<Perm>,
    pub h_order: usize,
    pub h_generators: Vec<Perm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiabelianCertificate {
    pub group: String,
    pub order: usize,
    pub verdict: Verdict,
    /// Empty for abelian groups; otherwise ends at the trivial group.
    pub chain: Vec<SemiabelianStep>,
    pub note: Option<String>,
}

impl SemiabelianCertificate {
    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

type Factorization = Option<(FixedBitSet, FixedBitSet)>;

struct Classifier<'a> {
    t: &'a CayleyTable,
    n: usize,
    memo: HashMap<FixedBitSet, Factorization>,
    budget: u64,
    limit: u64,
    limits: &'a Limits,
}

impl Classifier<'_> {
    fn spend(&mut self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::BudgetExceeded {
                budget: self.limit,
                context: "semiabelian factorization search".into(),
            });
        }
        self.budget -= 1;
        if self.budget.is_multiple_of(256) {
            self.limits.cancel.check()?;
        }
        Ok(())
    }

    fn trivial(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.n);
        b.insert(0);
        b
    }

    fn is_abelian(&self, gens: &[usize]) -> bool {
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.t.commute(a, b)))
    }

    /// Conjugacy classes of the subgroup `s` under itself.
    fn classes(&self, s: &FixedBitSet, gens: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for x in s.ones() {
            if x == 0 || seen.contains(x) {
                continue;
            }
            let orbit = self.t.conjugation_orbit(x, gens);
            for &y in &orbit {
                seen.insert(y);
            }
            out.push(orbit);
        }
        out
    }

    /// Maximal abelian normal subgroups of `s`, with generators.
    fn maximal_abelian_normal(
        &mut self,
        s: &FixedBitSet,
        gens: &[usize],
    ) -> Result<Vec<(FixedBitSet, Vec<usize>)>> {
        let classes = self.classes(s, gens);
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut stack = vec![(self.trivial(), Vec::<usize>::new())];
        let mut maximal = Vec::new();
        while let Some((a, agens)) = stack.pop() {
            let mut extended = false;
            for c in &classes {
                if a.contains(c[0]) {
                    continue;
                }
                self.spend()?;
                let mut g2 = agens.clone();
                g2.extend(c);
                if !self.is_abelian(&g2) {
                    continue;
                }
                extended = true;
                let joined = self.t.join(&a, &g2);
                if seen.insert(joined.clone()) {
                    let reduced = self.t.generating_subset(&joined);
                    stack.push((joined, reduced));
                }
            }
            if !extended && a.count_ones(..) > 1 {
                maximal.push((a, agens));
            }
        }
        maximal.sort_by_key(|(a, _)| {
            (
                std::cmp::Reverse(a.count_ones(..)),
                a.ones().collect::<Vec<_>>(),
            )
        });
        Ok(maximal)
    }

    fn is_supplement(&self, a: &FixedBitSet, h: &FixedBitSet, order: usize) -> bool {
        let (na, nh) = (a.count_ones(..), h.count_ones(..));
        let meet = a.intersection(h).count();
        nh < order && na * nh == order * meet
    }

    /// Subgroups `⟨g₁a₁, …, g_k a_k⟩` for generators `g_i ∉ A`, smallest first.
    fn lift_supplements(
        &mut self,
        s: &FixedBitSet,
        gens: &[usize],
        a: &FixedBitSet,
    ) -> Result<Vec<FixedBitSet>> {
        let order = s.count_ones(..);
        let outside: Vec<usize> = gens.iter().copied().filter(|&g| !a.contains(g)).collect();
        let a_elems: Vec<usize> = a.ones().collect();
        let mut found: HashSet<FixedBitSet> = HashSet::new();
        let mut out = Vec::new();
        let mut idx = vec![0usize; outside.len()];
        loop {
            self.spend()?;
            let lifts: Vec<usize> = outside
                .iter()
                .zip(&idx)
                .map(|(&g, &i)| self.t.mul(g, a_elems[i]))
                .collect();
            let h = self.t.closure(lifts);
            if self.is_supplement(a, &h, order) && found.insert(h.clone()) {
                out.push(h);
            }
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    out.sort_by_key(|h| h.count_ones(..));
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < a_elems.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Every proper supplement of `a` in `s`, smallest first.
    fn all_supplements(&mut self, s: &FixedBitSet, a: &FixedBitSet) -> Result<Vec<FixedBitSet>> {
        let order = s.count_ones(..);
        let mut seen: HashSet<FixedBitSet> = HashSet::from([self.trivial()]);
        let mut queue = vec![self.trivial()];
        let mut out = Vec::new();
        while let Some(h) = queue.pop() {
            if self.is_supplement(a, &h, order) {
                out.push(h.clone());
            }
            for x in s.ones() {
                if h.contains(x) {
                    continue;
                }
                self.spend()?;
                let next = self.t.extend(&h, &[x]);
                if next.count_ones(..) < order && seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        out.sort_by_key(|h| (h.count_ones(..), h.ones().collect::<Vec<_>>()));
        Ok(out)
    }

    fn decide(&mut self, s: &FixedBitSet) -> Result<bool> {
        if let Some(f) = self.memo.get(s) {
            return Ok(f.is_some());
        }
        let gens = self.t.generating_subset(s);
        if self.is_abelian(&gens) {
            self.memo
                .insert(s.clone(), Some((s.clone(), self.trivial())));
            return Ok(true);
        }
        let maximal = self.maximal_abelian_normal(s, &gens)?;
        for (a, _) in &maximal {
            for h in self.lift_supplements(s, &gens, a)? {
                if self.decide(&h)? {
                    self.memo.insert(s.clone(), Some((a.clone(), h)));
                    return Ok(true);
                }
            }
        }
        for (a, _) in &maximal {
            for h in self.all_supplements(s, a)? {
                if self.decide(&h)? {
                    self.memo.insert(s.clone(), Some((a.clone(), h)));
                    return Ok(true);
                }
            }
        }
        self.memo.insert(s.clone(), None);
        Ok(false)
    }
}

fn elements_of(g: &FiniteGroup, t: &CayleyTable, bits: &FixedBitSet) -> Vec<Perm> {
    t.generating_subset(bits)
        .into_iter()
        .map(|i| g.element(i))
        .collect()
}

/// Decides semiabelian membership with a factorization chain as evidence.
///
/// Requires `|G| ≤ limits.brute_cap`. The search is exhaustive, so `No` is a
/// proof of non-membership; running out of `limits.tuple_budget` is an error.
pub fn is_semiabelian(g: &FiniteGroup, limits: &Limits) -> Result<SemiabelianCertificate> {
    limits.check_brute(g.order())?;
    let t = g.require_table()?;
    let mut c = Classifier {
        t,
        n: g.order(),
        memo: HashMap::new(),
        budget: limits.tuple_budget,
        limit: limits.tuple_budget,
        limits,
    };
    let mut all = FixedBitSet::with_capacity(g.order());
    all.insert_range(..);
    let mut cert = SemiabelianCertificate {
        group: g.label().to_string(),
        order: g.order(),
        verdict: Verdict::No,
        chain: Vec::new(),
        note: None,
    };
    if !c.decide(&all)? {
        cert.note = Some(format!(
            "no abelian normal A and proper semiabelian H with AH = G exist for {}",
            g.label()
        ));
        return Ok(cert);
    }
    cert.verdict = Verdict::Yes;
    if g.is_abelian() {
        return Ok(cert);
    }
    let mut current = all;
    while current.count_ones(..) > 1 {
        let (a, h) = c.memo[&current].clone().expect("decided yes");
        let a_generators = elements_of(g, t, &a);
        let a_group = g.subgroup(a_generators.clone(), "A")?;
        cert.chain.push(SemiabelianStep {
            group_order: current.count_ones(..),
            a_order: a.count_ones(..),
            a_invariants: abelian_invariants(&a_group)?,
            a_generators,
            h_order: h.count_ones(..),
            h_generators: elements_of(g, t, &h),
        });
        if !c.memo.contains_key(&h) {
            c.decide(&h)?;
        }
        current = h;
    }
    Ok(cert)
}

/// Re-checks every step: `A` abelian and normal in the current group, `H`
/// proper, `|A||H| = |current||A ∩ H|`, and the chain ends at the trivial group.
pub fn validate_chain(g: &FiniteGroup, cert: &SemiabelianCertificate) -> Result<()> {
    let fail = |i: usize, what: &str| Err(Error::Invalid(format!("step {i}: {what}")));
    if cert.verdict == Verdict::No {
        return if cert.chain.is_empty() {
            Ok(())
        } else {
            fail(0, "a negative verdict carries no chain")
        };
    }
    if cert.chain.is_empty() {
        return if g.is_abelian() {
            Ok(())
        } else {
            fail(0, "empty chain for a nonabelian group")
        };
    }
    let mut current = g.clone();
    for (i, step) in cert.chain.iter().enumerate() {
        let a = current.subgroup(step.a_generators.clone(), "A")?;
        let h = current.subgroup(step.h_generators.clone(), "H")?;
        if a.order() != step.a_order
            || h.order() != step.h_order
            || current.order() != step.group_order
        {
            return fail(i, "recorded orders do not match");
        }
        if !a.is_abelian() {
            return fail(i, "A is not abelian");
        }
        if !is_normal(&current, &a) {
            return fail(i, "A is not normal");
        }
        if h.order() >= current.order() {
            return fail(i, "H is not proper");
        }
        let meet = (0..h.order())
            .filter(|&k| a.contains(&h.element(k)))
            .count();
        if a.order() * h.order() != current.order() * meet {
            return fail(i, "AH is not the whole group");
        }
        current = h;
    }
    if !current.is_trivial() {
        return fail(cert.chain.len(), "chain does not end at the trivial group");
    }
    Ok(())
}
