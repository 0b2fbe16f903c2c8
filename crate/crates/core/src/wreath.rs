//! Permutational and standard wreath products, and iterated towers of cyclic
//! groups in either bracketing.
//!
//! An element of `H ≀_X G` is a pair `(f, g)` with `f: X → H` and `g ∈ G`;
//! the product is `(f₁,g₁)(f₂,g₂) = (f₁·f₂^{g₁⁻¹}, g₁g₂)` where
//! `f₂^{g₁⁻¹}(x) = f₂(x·g₁)`. The carrier permutation group acts on `Y × X`
//! by `(y,x)·(f,g) = (y·f(x), x·g)`, with the point `(y,x)` stored at index
//! `y + |Y|·x`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::catalog::cyclic;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::Perm;
use crate::subgroup::right_multiplication;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    /// The group's own permutation action on `0..degree`.
    Natural,
    /// Right multiplication on the group's elements, indexed as enumerated.
    Regular,
}

/// A right action of a finite group on `0..degree()`.
///
/// For the regular action, point `k` is element `k` of the group, so point 0
/// is the identity.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    kind: ActionKind,
}

impl GroupAction {
    pub fn natural(group: &FiniteGroup) -> Self {
        GroupAction {
            group: group.clone(),
            kind: ActionKind::Natural,
        }
    }

    pub fn regular(group: &FiniteGroup) -> Self {
        GroupAction {
            group: group.clone(),
            kind: ActionKind::Regular,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        match self.kind {
            ActionKind::Natural => self.group.degree(),
            ActionKind::Regular => self.group.order(),
        }
    }

    /// `x·g`.
    pub fn act(&self, x: usize, g: &Perm) -> usize {
        match self.kind {
            ActionKind::Natural => g.apply(x),
            ActionKind::Regular => self
                .group
                .index_of(&self.group.element(x).mul(g))
                .expect("element of the acting group"),
        }
    }

    /// The permutation of the points induced by `g`.
    pub fn perm_of(&self, g: &Perm) -> Perm {
        match self.kind {
            ActionKind::Natural => g.clone(),
            ActionKind::Regular => right_multiplication(&self.group, g),
        }
    }

    /// The unique group element inducing the given point images, if any.
    pub fn element_of(&self, images: &[usize]) -> Option<Perm> {
        match self.kind {
            ActionKind::Natural => {
                let p = Perm::from_images(images).ok()?;
                self.group.contains(&p).then_some(p)
            }
            ActionKind::Regular => {
                let g = self.group.element(*images.first()?);
                (self.perm_of(&g).images() == images).then_some(g)
            }
        }
    }

    /// `x·1 = x` and `x·(gh) = (x·g)·h` for all generators `g, h` and all points.
    pub fn check_right_action(&self) -> bool {
        let gens = self.group.generators();
        let id = self.group.identity();
        (0..self.degree()).all(|x| {
            self.act(x, &id) == x
                && gens.iter().all(|g| {
                    gens.iter()
                        .all(|h| self.act(x, &g.mul(h)) == self.act(self.act(x, g), h))
                })
        })
    }
}

/// `(f, g)` with `f` given as its table of values over `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub table: Vec<Perm>,
    pub top: Perm,
}

#[derive(Clone, Debug)]
pub struct WreathGroup {
    base: GroupAction,
    top: GroupAction,
    carrier: FiniteGroup,
}

/// `|H|^|X| · |G|`, or `None` on overflow.
fn wreath_order(base_order: u128, points: usize, top_order: u128) -> Option<u128> {
    let points = u32::try_from(points).ok()?;
    base_order.checked_pow(points)?.checked_mul(top_order)
}

fn element_cap_error(limits: &Limits, projected: Option<u128>, what: &str) -> Error {
    Error::ElementCap {
        cap: limits.element_cap,
        projected: match projected {
            Some(n) => format!("{n} for {what}"),
            None => format!("more than 2^128 for {what}"),
        },
    }
}

/// `H ≀_X G` for a base action of `H` on `Y` and a top action of `G` on `X`.
///
/// The carrier is generated by `(δ_a, 1)` for each generator `a` of `H`
/// placed at point 0 of `X`, followed by `(1, g)` for each generator `g` of `G`.
pub fn permutational_wreath(
    base: GroupAction,
    top: GroupAction,
    limits: &Limits,
) -> Result<WreathGroup> {
    let label = format!("wr({},{})", base.group.label(), top.group.label());
    let degree = base.degree() * top.degree();
    limits.check_degree(degree)?;
    let projected = wreath_order(
        base.group.order() as u128,
        top.degree(),
        top.group.order() as u128,
    );
    match projected {
        Some(n) if n <= limits.element_cap as u128 => {}
        _ => return Err(element_cap_error(limits, projected, &label)),
    }
    for action in [&base, &top] {
        if !action.check_right_action() {
            return Err(Error::defect(
                "wreath product",
                format!(
                    "{:?} action of {} is not a right action",
                    action.kind, action.group
                ),
            ));
        }
    }
    let mut w = WreathGroup {
        carrier: FiniteGroup::trivial(degree),
        base,
        top,
    };
    let mut gens = Vec::new();
    for a in w.base.group.generators() {
        gens.push(w.encode(&w.base_element_at(0, a))?);
    }
    for g in w.top.group.generators() {
        gens.push(w.encode(&w.top_element(g))?);
    }
    w.carrier = FiniteGroup::generate_with(degree, gens, label, limits)?;
    if Some(w.carrier.order() as u128) != projected {
        return Err(Error::defect(
            "wreath product order formula",
            format!(
                "carrier has order {} but |H|^|X|·|G| = {}",
                w.carrier.order(),
                projected.unwrap_or_default()
            ),
        ));
    }
    Ok(w)
}

/// The standard wreath product: both actions regular.
pub fn regular_wreath(h: &FiniteGroup, g: &FiniteGroup, limits: &Limits) -> Result<WreathGroup> {
    permutational_wreath(GroupAction::regular(h), GroupAction::regular(g), limits)
}

impl WreathGroup {
    pub fn base(&self) -> &GroupAction {
        &self.base
    }

    pub fn top(&self) -> &GroupAction {
        &self.top
    }

    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    pub fn label(&self) -> &str {
        self.carrier.label()
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn degree(&self) -> usize {
        self.carrier.degree()
    }

    pub fn base_group(&self) -> &FiniteGroup {
        &self.base.group
    }

    pub fn top_group(&self) -> &FiniteGroup {
        &self.top.group
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.carrier = self.carrier.with_label(label);
        self
    }

    pub fn identity_element(&self) -> WreathElement {
        WreathElement {
            table: vec![self.base.group.identity(); self.top.degree()],
            top: self.top.group.identity(),
        }
    }

    /// `(δ_a, 1)` where `δ_a` takes the value `a` at `position` and 1 elsewhere.
    pub fn base_element_at(&self, position: usize, a: &Perm) -> WreathElement {
        let mut w = self.identity_element();
        w.table[position] = a.clone();
        w
    }

    /// `(1, g)`.
    pub fn top_element(&self, g: &Perm) -> WreathElement {
        let mut w = self.identity_element();
        w.top = g.clone();
        w
    }

    pub fn multiply(&self, w1: &WreathElement, w2: &WreathElement) -> WreathElement {
        let table = (0..self.top.degree())
            .map(|x| w1.table[x].mul(&w2.table[self.top.act(x, &w1.top)]))
            .collect();
        WreathElement {
            table,
            top: w1.top.mul(&w2.top),
        }
    }

    pub fn encode(&self, w: &WreathElement) -> Result<Perm> {
        let (ny, nx) = (self.base.degree(), self.top.degree());
        if w.table.len() != nx {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected {nx}",
                w.table.len()
            )));
        }
        if let Some(bad) = w.table.iter().find(|a| !self.base.group.contains(a)) {
            return Err(Error::Invalid(format!(
                "{bad} is not an element of {}",
                self.base.group.label()
            )));
        }
        if !self.top.group.contains(&w.top) {
            return Err(Error::Invalid(format!(
                "{} is not an element of {}",
                w.top,
                self.top.group.label()
            )));
        }
        let g = self.top.perm_of(&w.top);
        let mut images = vec![0usize; ny * nx];
        for x in 0..nx {
            let f = self.base.perm_of(&w.table[x]);
            let xg = g.apply(x);
            for y in 0..ny {
                images[y + ny * x] = f.apply(y) + ny * xg;
            }
        }
        Perm::from_images(&images)
    }

    pub fn decode(&self, p: &Perm) -> Result<WreathElement> {
        let (ny, nx) = (self.base.degree(), self.top.degree());
        if p.degree() != ny * nx {
            return Err(Error::DegreeMismatch {
                left: ny * nx,
                right: p.degree(),
            });
        }
        let not_in = || Error::Invalid(format!("{p} is not an element of {}", self.label()));
        let mut top_images = Vec::with_capacity(nx);
        let mut table = Vec::with_capacity(nx);
        for x in 0..nx {
            let block = p.apply(ny * x) / ny;
            let mut f = Vec::with_capacity(ny);
            for y in 0..ny {
                let q = p.apply(y + ny * x);
                if q / ny != block {
                    return Err(not_in());
                }
                f.push(q % ny);
            }
            top_images.push(block);
            table.push(self.base.element_of(&f).ok_or_else(not_in)?);
        }
        let top = self.top.element_of(&top_images).ok_or_else(not_in)?;
        Ok(WreathElement { table, top })
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> WreathElement {
        let h = &self.base.group;
        let g = &self.top.group;
        WreathElement {
            table: (0..self.top.degree())
                .map(|_| h.element(rng.random_range(0..h.order())))
                .collect(),
            top: g.element(rng.random_range(0..g.order())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bracketing {
    /// `C₁ ≀ (C₂ ≀ (… ≀ C_r))`.
    Descending,
    /// `((C₁ ≀ C₂) ≀ …) ≀ C_r`.
    Ascending,
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bracketing::Descending => "desc",
            Bracketing::Ascending => "asc",
        })
    }
}

/// Orders of the cyclic factors of an iterated standard wreath product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TowerSpec {
    pub orders: Vec<u64>,
    pub bracketing: Bracketing,
}

impl TowerSpec {
    pub fn descending(orders: &[u64]) -> Self {
        TowerSpec {
            orders: orders.to_vec(),
            bracketing: Bracketing::Descending,
        }
    }

    pub fn ascending(orders: &[u64]) -> Self {
        TowerSpec {
            orders: orders.to_vec(),
            bracketing: Bracketing::Ascending,
        }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    fn nontrivial(&self) -> Vec<u64> {
        self.orders.iter().copied().filter(|&n| n > 1).collect()
    }

    /// Order of the tower, or `None` if it does not fit in 128 bits.
    pub fn projected_order(&self) -> Option<u128> {
        let ns = self.nontrivial();
        if ns.is_empty() {
            return Some(1);
        }
        match self.bracketing {
            Bracketing::Descending => {
                let mut order = *ns.last().unwrap() as u128;
                for &n in ns.iter().rev().skip(1) {
                    order = wreath_order(n as u128, usize::try_from(order).ok()?, order)?;
                }
                Some(order)
            }
            Bracketing::Ascending => {
                let mut order = ns[0] as u128;
                for &n in &ns[1..] {
                    order = wreath_order(order, n as usize, n as u128)?;
                }
                Some(order)
            }
        }
    }

    /// Degree of the carrier built by [`build_tower`].
    pub fn projected_degree(&self) -> Option<u128> {
        let ns = self.nontrivial();
        if ns.is_empty() {
            return Some(1);
        }
        match self.bracketing {
            Bracketing::Descending if ns.len() > 1 => {
                let tail = TowerSpec::descending(&ns[1..]).projected_order()?;
                tail.checked_mul(ns[0] as u128)
            }
            _ => ns
                .iter()
                .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128)),
        }
    }

    pub fn label(&self) -> String {
        let ns: Vec<String> = self.orders.iter().map(|n| format!("C{n}")).collect();
        if self.orders.len() == 1 {
            return ns[0].clone();
        }
        format!("wr({};{})", ns.join(","), self.bracketing)
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An iterated wreath product of cyclic groups.
///
/// The carrier's generators are the tower generators, one per factor: the
/// generator of layer `i` is the cyclic generator of `C_i` at the identity
/// position of layer `i`, trivial in every other layer. Trivial factors get
/// the identity.
#[derive(Clone, Debug)]
pub struct Tower {
    spec: TowerSpec,
    carrier: FiniteGroup,
    outer: Option<WreathGroup>,
}

impl Tower {
    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    /// The outermost wreath product, absent when fewer than two factors are nontrivial.
    pub fn outer(&self) -> Option<&WreathGroup> {
        self.outer.as_ref()
    }

    pub fn generators(&self) -> &[Perm] {
        self.carrier.generators()
    }

    /// The tower generators as structured elements of the outermost product.
    pub fn generator_elements(&self) -> Option<Vec<WreathElement>> {
        let w = self.outer.as_ref()?;
        self.generators().iter().map(|g| w.decode(g).ok()).collect()
    }
}

/// Builds the tower, refusing before any allocation if the projected order
/// or degree exceeds the caps.
///
/// A descending tower `C₁ ≀ W` with `W = C₂ ≀ (… ≀ C_r)` is realized as
/// `C₁` acting naturally on its `|C₁|` points, wreathed with `W` acting
/// regularly. For cyclic groups the natural and regular actions coincide, so
/// this is the standard wreath product on `|C₁|·|W|` points. Ascending towers
/// take the previous stage in its natural action, giving degree `∏|C_i|`.
pub fn build_tower(spec: &TowerSpec, limits: &Limits) -> Result<Tower> {
    if spec.orders.is_empty() {
        return Err(Error::Invalid("tower needs at least one factor".into()));
    }
    if spec.orders.contains(&0) {
        return Err(Error::Invalid(
            "cyclic factors must have order at least 1".into(),
        ));
    }
    let projected = spec.projected_order();
    match projected {
        Some(n) if n <= limits.element_cap as u128 => {}
        _ => return Err(element_cap_error(limits, projected, &spec.label())),
    }
    let degree = spec.projected_degree().unwrap_or(u128::MAX);
    if degree > limits.degree_cap as u128 {
        return Err(Error::DegreeCap {
            degree: usize::try_from(degree).unwrap_or(usize::MAX),
            cap: limits.degree_cap,
        });
    }
    let ns = spec.nontrivial();
    let (group, outer) = match ns.len() {
        0 => (FiniteGroup::trivial(1), None),
        1 => (cyclic(ns[0])?, None),
        _ => {
            let mut stage: Option<WreathGroup> = None;
            match spec.bracketing {
                Bracketing::Descending => {
                    let mut tail = cyclic(*ns.last().unwrap())?;
                    for &n in ns.iter().rev().skip(1) {
                        let w = permutational_wreath(
                            GroupAction::natural(&cyclic(n)?),
                            GroupAction::regular(&tail),
                            limits,
                        )?;
                        tail = w.carrier().clone();
                        stage = Some(w);
                    }
                }
                Bracketing::Ascending => {
                    let mut acc = cyclic(ns[0])?;
                    for &n in &ns[1..] {
                        let w = permutational_wreath(
                            GroupAction::natural(&acc),
                            GroupAction::regular(&cyclic(n)?),
                            limits,
                        )?;
                        acc = w.carrier().clone();
                        stage = Some(w);
                    }
                }
            }
            let w = stage.expect("at least two factors");
            (w.carrier().clone(), Some(w))
        }
    };
    let mut nontrivial_gens = group.generators().iter();
    let gens: Vec<Perm> = spec
        .orders
        .iter()
        .map(|&n| {
            if n > 1 {
                nontrivial_gens
                    .next()
                    .expect("one generator per factor")
                    .clone()
            } else {
                group.identity()
            }
        })
        .collect();
    let label = spec.label();
    let carrier = group.with_generators(gens).with_label(label.clone());
    let outer = outer.map(|w| w.with_label(label));
    Ok(Tower {
        spec: spec.clone(),
        carrier,
        outer,
    })
}

/// The tower generators of `spec` as structured elements.
pub fn tower_generators(spec: &TowerSpec, limits: &Limits) -> Result<Vec<WreathElement>> {
    let tower = build_tower(spec, limits)?;
    tower
        .generator_elements()
        .ok_or_else(|| Error::Invalid(format!("{spec} has fewer than two nontrivial factors")))
}
