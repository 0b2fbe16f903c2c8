//! Named small groups and the curated catalog used by surveys and tests.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::{Perm, MAX_DEGREE};
use crate::subgroup::direct_product;
use crate::wreath::{permutational_wreath, GroupAction};

/// `C_n` generated by the `n`-cycle `(0 1 … n-1)`; `C_1` is the trivial group on one point.
pub fn cyclic(n: u64) -> Result<FiniteGroup> {
    if n == 0 || n as usize > MAX_DEGREE {
        return Err(Error::Invalid(format!("cyclic order {n} out of range")));
    }
    let n = n as usize;
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let label = if n == 1 {
        "E".to_string()
    } else {
        format!("C{n}")
    };
    FiniteGroup::generate(n, vec![Perm::from_images(&images)?], label)
}

/// Dihedral group of order `2n` acting on the `n`-gon; `D2` is the Klein group.
pub fn dihedral(n: u64) -> Result<FiniteGroup> {
    if n == 2 {
        return FiniteGroup::generate(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1]])?,
                Perm::from_cycles(4, &[&[2, 3]])?,
            ],
            "D2",
        );
    }
    if n < 2 || n as usize > MAX_DEGREE {
        return Err(Error::Invalid(format!("dihedral index {n} out of range")));
    }
    let n = n as usize;
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::generate(
        n,
        vec![
            Perm::from_images(&rotation)?,
            Perm::from_images(&reflection)?,
        ],
        format!("D{n}"),
    )
}

/// The quaternion group in its regular representation on 8 points.
pub fn quaternion8() -> FiniteGroup {
    let i = Perm::from_cycles(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]]).expect("valid cycles");
    let j = Perm::from_cycles(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]]).expect("valid cycles");
    FiniteGroup::generate(8, vec![i, j], "Q8").expect("Q8")
}

pub fn symmetric3() -> FiniteGroup {
    FiniteGroup::generate(
        3,
        vec![
            Perm::from_cycles(3, &[&[0, 1, 2]]).expect("valid cycle"),
            Perm::from_cycles(3, &[&[0, 1]]).expect("valid cycle"),
        ],
        "S3",
    )
    .expect("S3")
}

pub fn alternating4() -> FiniteGroup {
    FiniteGroup::generate(
        4,
        vec![
            Perm::from_cycles(4, &[&[0, 1, 2]]).expect("valid cycle"),
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).expect("valid cycles"),
        ],
        "A4",
    )
    .expect("A4")
}

pub fn trivial() -> FiniteGroup {
    FiniteGroup::trivial(1)
}

/// Direct product of cyclic groups with the given orders, labelled `C2 * C4 * …`.
pub fn abelian(orders: &[u64], limits: &Limits) -> Result<FiniteGroup> {
    let mut factors = orders.iter().filter(|&&n| n > 1);
    let Some(&first) = factors.next() else {
        return Ok(trivial());
    };
    let mut g = cyclic(first)?;
    for &n in factors {
        g = direct_product(&g, &cyclic(n)?, limits)?;
    }
    Ok(g)
}

/// Invariant-factor lists `d₁ | d₂ | … | d_k` with all `d_i ≥ 2` and product `n`.
pub fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in crate::arith::divisors(rest) {
            if d >= 2 && d % min == 0 {
                // remaining factors are multiples of d, so their product is a power-of-d multiple
                let tail = rest / d;
                if tail.is_multiple_of(d) || tail == 1 {
                    prefix.push(d);
                    go(tail, d, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

struct Entry {
    label: &'static str,
    order: usize,
}

/// Groups beyond the cyclic, abelian and dihedral families, written in the
/// expression language, with their orders.
const EXTRA: &[Entry] = &[
    Entry {
        label: "Q8",
        order: 8,
    },
    Entry {
        label: "wr(C2,C2)",
        order: 8,
    },
    Entry {
        label: "A4",
        order: 12,
    },
    Entry {
        label: "Q8 * C2",
        order: 16,
    },
    Entry {
        label: "D4 * C2",
        order: 16,
    },
    Entry {
        label: "S3 * C3",
        order: 18,
    },
    Entry {
        label: "wr(C3,C2)",
        order: 18,
    },
    Entry {
        label: "Q8 * C3",
        order: 24,
    },
    Entry {
        label: "A4 * C2",
        order: 24,
    },
    Entry {
        label: "S3 * C4",
        order: 24,
    },
    Entry {
        label: "D4 * C3",
        order: 24,
    },
    Entry {
        label: "wr(C2,C3)",
        order: 24,
    },
    Entry {
        label: "S3 * S3",
        order: 36,
    },
    Entry {
        label: "A4 * C3",
        order: 36,
    },
    Entry {
        label: "Q8 * C2 * C2",
        order: 32,
    },
    Entry {
        label: "Q8 * C4",
        order: 32,
    },
    Entry {
        label: "D4 * C4",
        order: 32,
    },
    Entry {
        label: "wr(C4,C2)",
        order: 32,
    },
    Entry {
        label: "Q8 * S3",
        order: 48,
    },
    Entry {
        label: "A4 * C4",
        order: 48,
    },
    Entry {
        label: "A4 * C2 * C2",
        order: 48,
    },
    Entry {
        label: "D4 * S3",
        order: 48,
    },
    Entry {
        label: "wr(C2,C4)",
        order: 64,
    },
    Entry {
        label: "D4 * D4",
        order: 64,
    },
    Entry {
        label: "Q8 * Q8",
        order: 64,
    },
    Entry {
        label: "Q8 * D4",
        order: 64,
    },
    Entry {
        label: "wr(S3,C2)",
        order: 72,
    },
    Entry {
        label: "wr(C3,C3)",
        order: 81,
    },
    Entry {
        label: "wr(C2,C2,C2;asc)",
        order: 128,
    },
    Entry {
        label: "wr(C4,C3)",
        order: 192,
    },
    Entry {
        label: "wr(C2,C3,C2;asc)",
        order: 1152,
    },
    Entry {
        label: "wr(A4,C2)",
        order: 288,
    },
    Entry {
        label: "wr(C2,S3)",
        order: 384,
    },
    Entry {
        label: "wr(C5,C2)",
        order: 50,
    },
    Entry {
        label: "wr(C6,C2)",
        order: 72,
    },
    Entry {
        label: "wr(C2,C2,C2;desc)",
        order: 2048,
    },
];

/// The curated catalog of groups of order at most `max_order`, sorted by
/// `(order, label)`.
///
/// Contains the trivial group, `C_n`, every abelian group up to order 64
/// given by its invariant factors, `S3` and `D_n` up to order 64, and a list
/// of products and wreath products of the named atoms.
pub fn catalog(max_order: usize, limits: &Limits) -> Result<Vec<FiniteGroup>> {
    let mut out = vec![trivial()];
    let cap = max_order.min(64) as u64;
    for n in 2..=cap {
        for t in abelian_types(n) {
            out.push(abelian(&t, limits)?);
        }
    }
    out.push(symmetric3());
    for n in 4..=(max_order / 2).min(32) as u64 {
        out.push(dihedral(n)?);
    }
    for e in EXTRA {
        if e.order <= max_order {
            out.push(crate::expr::parse_group(e.label, limits)?);
        }
    }
    out.retain(|g| g.order() <= max_order);
    out.sort_by(|a, b| (a.order(), a.label()).cmp(&(b.order(), b.label())));
    out.dedup_by(|a, b| a.label() == b.label());
    Ok(out)
}

/// Descending or ascending tower over arbitrary groups, each later factor
/// acting regularly: `G₁ ≀ (G₂ ≀ …)` or `((G₁ ≀ G₂) ≀ …)`.
pub(crate) fn group_tower(
    factors: &[FiniteGroup],
    descending: bool,
    limits: &Limits,
) -> Result<FiniteGroup> {
    let wrap = |a: &FiniteGroup, b: &FiniteGroup| {
        permutational_wreath(GroupAction::natural(a), GroupAction::regular(b), limits)
            .map(|w| w.carrier().clone())
    };
    if descending {
        let mut tail = factors.last().expect("nonempty").clone();
        for g in factors.iter().rev().skip(1) {
            tail = wrap(g, &tail)?;
        }
        Ok(tail)
    } else {
        let mut acc = factors[0].clone();
        for g in &factors[1..] {
            acc = wrap(&acc, g)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms() {
        assert_eq!(cyclic(7).unwrap().order(), 7);
        assert_eq!(dihedral(5).unwrap().order(), 10);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        let q8 = quaternion8();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        // Q8 has a unique involution
        assert_eq!(q8.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(symmetric3().order(), 6);
        assert_eq!(alternating4().order(), 12);
        assert!(cyclic(0).is_err());
    }

    #[test]
    fn abelian_types_by_partition_count() {
        assert_eq!(abelian_types(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_types(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(abelian_types(7), vec![vec![7]]);
        // p(6) = 11 abelian groups of order 64
        assert_eq!(abelian_types(64).len(), 11);
    }

    #[test]
    fn catalog_is_sorted_and_bounded() {
        let cat = catalog(24, &Limits::default()).unwrap();
        assert!(cat
            .windows(2)
            .all(|w| (w[0].order(), w[0].label()) < (w[1].order(), w[1].label())));
        assert!(cat.iter().all(|g| g.order() <= 24));
        let labels: Vec<&str> = cat.iter().map(|g| g.label()).collect();
        for l in [
            "E",
            "C2",
            "C2 * C2",
            "S3",
            "D4",
            "Q8",
            "A4",
            "wr(C2,C2;desc)",
        ] {
            assert!(labels.contains(&l), "{l} missing");
        }
    }
}
