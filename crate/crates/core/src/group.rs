//! Finite permutation groups with an enumerated element set.
//!
//! A [`FiniteGroup`] is built from generators and enumerated eagerly by a
//! breadth-first closure; the element order is therefore a deterministic
//! function of the generator list, with the identity at index 0. Groups are
//! cheap to clone and safe to share between threads.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::perm::{compose_into, Perm, MAX_DEGREE};

/// Largest order for which a full multiplication table is kept.
pub const TABLE_CAP: usize = 2048;

/// Cooperative cancellation shared between a driver and long computations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken {
    flag: Arc<AtomicBool>,
    deadline: Option<Instant>,
}

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        CancelToken {
            flag: Arc::default(),
            deadline: Some(Instant::now() + timeout),
        }
    }

    pub fn cancel(&self) {
        self.flag.store(true, Ordering::Relaxed);
    }

    pub fn check(&self) -> Result<()> {
        if self.flag.load(Ordering::Relaxed) {
            return Err(Error::Cancelled);
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.flag.store(true, Ordering::Relaxed);
                return Err(Error::Cancelled);
            }
        }
        Ok(())
    }
}

/// Size limits and budgets threaded through every construction and search.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest enumerated group order.
    pub element_cap: usize,
    /// Largest permutation degree of a constructed group.
    pub degree_cap: usize,
    /// Largest order accepted by exhaustive subset and subgroup searches.
    pub brute_cap: usize,
    /// Work budget for homomorphism searches, counted in candidate checks.
    pub tuple_budget: u64,
    pub cancel: CancelToken,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 1 << 20,
            degree_cap: 64,
            brute_cap: 512,
            tuple_budget: 1_000_000,
            cancel: CancelToken::default(),
        }
    }
}

impl Limits {
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_cap || degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree,
                cap: self.degree_cap.min(MAX_DEGREE),
            });
        }
        Ok(())
    }

    pub fn check_brute(&self, order: usize) -> Result<()> {
        if order > self.brute_cap {
            return Err(Error::BruteCap {
                order,
                cap: self.brute_cap,
            });
        }
        Ok(())
    }
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// Fails once more than `limits.element_cap` elements have been produced.
pub fn closure(degree: usize, gens: &[Perm], limits: &Limits) -> Result<ElementSet> {
    match closure_within(degree, gens, limits.element_cap, limits)? {
        Some(set) => Ok(set),
        None => Err(Error::ElementCap {
            cap: limits.element_cap,
            projected: format!("> {}", limits.element_cap),
        }),
    }
}

/// Like [`closure`], but returns `None` as soon as the group exceeds `max` elements.
pub fn closure_within(
    degree: usize,
    gens: &[Perm],
    max: usize,
    limits: &Limits,
) -> Result<Option<ElementSet>> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::InvalidPerm(format!("degree {degree} out of range")));
    }
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let gens: Vec<&[u8]> = gens
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| g.as_bytes())
        .collect();
    let mut set = ElementSet::new(degree);
    set.insert(Perm::identity(degree).as_bytes());
    let mut current = vec![0u8; degree];
    let mut product = vec![0u8; degree];
    let mut i = 0;
    while i < set.len() {
        if i % 1024 == 0 {
            limits.cancel.check()?;
        }
        current.copy_from_slice(set.get(i));
        for g in &gens {
            compose_into(&current, g, &mut product);
            let (_, fresh) = set.insert(&product);
            if fresh && set.len() > max {
                return Ok(None);
            }
        }
        i += 1;
    }
    Ok(Some(set))
}

struct GroupData {
    degree: usize,
    generators: Vec<Perm>,
    label: String,
    elements: Arc<ElementSet>,
    orders: OnceLock<Vec<u32>>,
    table: OnceLock<Option<Arc<CayleyTable>>>,
}

#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl FiniteGroup {
    pub fn generate(
        degree: usize,
        generators: Vec<Perm>,
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::generate_with(degree, generators, label, &Limits::default())
    }

    pub fn generate_with(
        degree: usize,
        generators: Vec<Perm>,
        label: impl Into<String>,
        limits: &Limits,
    ) -> Result<Self> {
        let generators = if generators.is_empty() {
            vec![Perm::identity(degree)]
        } else {
            generators
        };
        let elements = closure(degree, &generators, limits)?;
        Ok(Self::from_parts(
            degree,
            generators,
            label.into(),
            Arc::new(elements),
        ))
    }

    pub(crate) fn from_parts(
        degree: usize,
        generators: Vec<Perm>,
        label: String,
        elements: Arc<ElementSet>,
    ) -> Self {
        FiniteGroup(Arc::new(GroupData {
            degree,
            generators,
            label,
            elements,
            orders: OnceLock::new(),
            table: OnceLock::new(),
        }))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, vec![Perm::identity(degree)], "E").expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.0.generators
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        FiniteGroup::from_parts(
            self.0.degree,
            self.0.generators.clone(),
            label.into(),
            self.0.elements.clone(),
        )
    }

    /// Same element set, different generator list. `generators` must generate
    /// exactly this group; identity entries are allowed.
    pub(crate) fn with_generators(&self, generators: Vec<Perm>) -> Self {
        debug_assert!(generators.iter().all(|g| self.contains(g)));
        FiniteGroup::from_parts(
            self.0.degree,
            generators,
            self.0.label.clone(),
            self.0.elements.clone(),
        )
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn elements(&self) -> &ElementSet {
        &self.0.elements
    }

    pub fn element(&self, index: usize) -> Perm {
        self.0.elements.perm(index)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.0.degree)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        if p.degree() != self.degree() {
            return None;
        }
        self.0.elements.index_of(p.as_bytes())
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index_of(p).is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.0.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// True when both groups have the same degree and the same element set.
    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0.elements, &other.0.elements)
            || (self.degree() == other.degree()
                && self.order() == other.order()
                && other.generators().iter().all(|g| self.contains(g)))
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree() == other.degree()
            && other.order().is_multiple_of(self.order())
            && self.generators().iter().all(|g| other.contains(g))
    }

    /// Order of every element, indexed like [`elements`](Self::elements).
    pub fn element_orders(&self) -> &[u32] {
        self.0.orders.get_or_init(|| {
            self.0
                .elements
                .iter()
                .map(|p| crate::perm::order_of(p) as u32)
                .collect()
        })
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders()
            .iter()
            .fold(1u64, |acc, &o| crate::perm::lcm(acc, o as u64))
    }

    /// Subgroup generated by `generators`, which must lie in `self`.
    pub fn subgroup(&self, generators: Vec<Perm>, label: impl Into<String>) -> Result<Self> {
        for g in &generators {
            if !self.contains(g) {
                return Err(Error::Invalid(format!(
                    "{g} is not an element of {}",
                    self.label()
                )));
            }
        }
        let limits = Limits {
            element_cap: self.order(),
            ..Limits::default()
        };
        Self::generate_with(self.degree(), generators, label, &limits)
    }

    /// Multiplication table, available for orders up to [`TABLE_CAP`].
    pub fn table(&self) -> Option<&CayleyTable> {
        self.0
            .table
            .get_or_init(|| (self.order() <= TABLE_CAP).then(|| Arc::new(CayleyTable::build(self))))
            .as_deref()
    }

    pub(crate) fn require_table(&self) -> Result<&CayleyTable> {
        self.table().ok_or(Error::BruteCap {
            order: self.order(),
            cap: TABLE_CAP,
        })
    }

    /// Indices of the elements of `sub` inside `self`.
    pub fn bits_of(&self, sub: &FiniteGroup) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for p in sub.elements().iter() {
            if let Some(i) = self.0.elements.index_of(p) {
                bits.insert(i);
            }
        }
        bits
    }

    /// Subgroup with the given element indices; `bits` must be a subgroup.
    pub fn subgroup_from_bits(&self, bits: &FixedBitSet, label: impl Into<String>) -> Result<Self> {
        let generators = match self.table() {
            Some(t) => {
                let gens = t.generating_subset(bits);
                gens.into_iter().map(|i| self.element(i)).collect()
            }
            None => {
                let mut gens: Vec<Perm> = Vec::new();
                let mut current = FiniteGroup::trivial(self.degree());
                for i in bits.ones() {
                    let p = self.element(i);
                    if !current.contains(&p) {
                        gens.push(p);
                        current = FiniteGroup::generate(self.degree(), gens.clone(), "")?;
                    }
                }
                gens
            }
        };
        let sub = self.subgroup(generators, label)?;
        if sub.order() != bits.count_ones(..) {
            return Err(Error::Invalid("index set is not a subgroup".into()));
        }
        Ok(sub)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup({}, order {}, degree {})",
            self.label(),
            self.order(),
            self.degree()
        )
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Multiplication table over element indices.
pub struct CayleyTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<u16>,
}

impl CayleyTable {
    fn build(g: &FiniteGroup) -> Self {
        let n = g.order();
        let els = g.elements();
        let mut mul = vec![0u16; n * n];
        let mut buf = vec![0u8; g.degree()];
        for a in 0..n {
            for b in 0..n {
                compose_into(els.get(a), els.get(b), &mut buf);
                mul[a * n + b] = els.index_of(&buf).expect("closed") as u16;
            }
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        let gens = g
            .generators()
            .iter()
            .map(|p| els.index_of(p.as_bytes()).expect("generator") as u16)
            .collect();
        CayleyTable { n, mul, inv, gens }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn power(&self, a: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut sq = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            k >>= 1;
        }
        acc
    }

    pub fn generators(&self) -> &[u16] {
        &self.gens
    }

    /// Subgroup generated by the given indices.
    pub fn closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> FixedBitSet {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut bits = FixedBitSet::with_capacity(self.n);
        bits.insert(0);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !bits.put(y) {
                    queue.push(y);
                }
            }
        }
        bits
    }

    /// Subgroup generated by `bits ∪ {extra}`, starting from a subgroup `bits`.
    pub fn extend(&self, bits: &FixedBitSet, extra: &[usize]) -> FixedBitSet {
        let mut out = bits.clone();
        let mut gens: Vec<usize> = extra.to_vec();
        gens.extend(self.generating_subset(bits));
        let mut queue: Vec<usize> = out.ones().collect();
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !out.put(y) {
                    queue.push(y);
                }
            }
        }
        out
    }

    /// Subgroup generated by `bits` and `gens`, where `gens` must include a
    /// generating set of `bits`.
    pub fn join(&self, bits: &FixedBitSet, gens: &[usize]) -> FixedBitSet {
        let mut out = bits.clone();
        let mut queue: Vec<usize> = out.ones().collect();
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !out.put(y) {
                    queue.push(y);
                }
            }
        }
        out
    }

    /// Greedy irredundant generating set of the subgroup `bits`.
    pub fn generating_subset(&self, bits: &FixedBitSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = FixedBitSet::with_capacity(self.n);
        current.insert(0);
        // Prefer high-order elements: they cover more of the subgroup at once.
        let mut candidates: Vec<usize> = bits.ones().filter(|&i| i != 0).collect();
        candidates.sort_by_key(|&i| std::cmp::Reverse(self.order_of(i)));
        for i in candidates {
            if !current.contains(i) {
                gens.push(i);
                current = self.closure(gens.iter().copied());
                if current.count_ones(..) == bits.count_ones(..) {
                    break;
                }
            }
        }
        gens
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Orbit of `x` under conjugation by the subgroup generated by `by`.
    pub fn conjugation_orbit(&self, x: usize, by: &[usize]) -> Vec<usize> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        seen.insert(x);
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &g in by {
                let z = self.conj(y, g);
                if !seen.put(z) {
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit
    }
}
