//! One row of invariants per catalog group, computed in parallel and
//! reported in `(order, label)` order.

use rayon::prelude::*;
use serde::Serialize;

use super::semiabelian::{is_semiabelian, validate_chain, Verdict};
use super::wl::{abelianization_factors, check_wl_eq_dg_characterization, wl_bounds};
use crate::catalog::catalog;
use crate::error::Result;
use crate::group::{FiniteGroup, Limits};
use crate::iso::is_isomorphic;
use crate::subgroup::is_nilpotent;

/// Rows up to this order are compared for isomorphism with earlier rows.
pub const ISO_NOTE_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub label: String,
    pub order: usize,
    pub degree: usize,
    pub abelianization: Vec<u64>,
    pub dg: Option<usize>,
    pub dl: Option<usize>,
    pub nilpotent: bool,
    pub semiabelian: Option<Verdict>,
    pub wl_lower: usize,
    pub wl_upper: Option<usize>,
    pub wl_exact: Option<usize>,
    pub wl_eq_dg: Option<bool>,
    pub witness_prime: Option<u64>,
    pub witness_spec: Option<Vec<u64>>,
    pub isomorphic_to: Option<String>,
    pub notes: Vec<String>,
}

/// Computes one row; failures of individual invariants become notes.
pub fn survey_row(g: &FiniteGroup, limits: &Limits) -> SurveyRow {
    let mut notes = Vec::new();
    let abelianization = abelianization_factors(g, limits).unwrap_or_else(|e| {
        notes.push(format!("abelianization: {e}"));
        Vec::new()
    });
    let semiabelian = match is_semiabelian(g, limits) {
        Ok(cert) => match validate_chain(g, &cert) {
            Ok(()) => Some(cert.verdict),
            Err(e) => {
                notes.push(format!("semiabelian chain rejected: {e}"));
                None
            }
        },
        Err(e) => {
            notes.push(format!("semiabelian: {e}"));
            None
        }
    };
    let mut row = SurveyRow {
        label: g.label().to_string(),
        order: g.order(),
        degree: g.degree(),
        abelianization,
        dg: None,
        dl: None,
        nilpotent: is_nilpotent(g),
        semiabelian,
        wl_lower: 1,
        wl_upper: None,
        wl_exact: None,
        wl_eq_dg: None,
        witness_prime: None,
        witness_spec: None,
        isomorphic_to: None,
        notes,
    };
    match wl_bounds(g, limits) {
        Ok(cert) => {
            row.dg = cert.dg;
            row.dl = cert.dl;
            row.wl_lower = cert.lower;
            row.wl_upper = cert.upper_length();
            row.wl_exact = cert.exact;
            row.notes.extend(cert.notes.iter().cloned());
            match check_wl_eq_dg_characterization(g, &cert, limits) {
                Ok(ch) => {
                    row.wl_eq_dg = ch.wl_equals_dg;
                    if let Some(w) = ch.witness {
                        row.witness_prime = Some(w.prime);
                        row.witness_spec = Some(w.tower.spec.orders);
                    }
                    if ch.consistent == Some(false) {
                        row.notes
                            .push("witness at r = dg disagrees with wl = dg".into());
                    }
                }
                Err(e) => row.notes.push(format!("characterization: {e}")),
            }
        }
        Err(e) => row.notes.push(format!("wl: {e}")),
    }
    row
}

/// Rows for `groups`, in the given order.
pub fn survey(groups: &[FiniteGroup], limits: &Limits) -> Vec<SurveyRow> {
    let mut rows: Vec<SurveyRow> = groups.par_iter().map(|g| survey_row(g, limits)).collect();
    for i in 0..rows.len() {
        if groups[i].order() > ISO_NOTE_ORDER {
            continue;
        }
        for j in 0..i {
            let same = |a: &SurveyRow, b: &SurveyRow| {
                (a.order, &a.abelianization, a.dg, a.dl, a.nilpotent)
                    == (b.order, &b.abelianization, b.dg, b.dl, b.nilpotent)
            };
            if rows[j].isomorphic_to.is_none()
                && same(&rows[i], &rows[j])
                && matches!(is_isomorphic(&groups[i], &groups[j], limits), Ok(Some(_)))
            {
                rows[i].isomorphic_to = Some(rows[j].label.clone());
                break;
            }
        }
    }
    rows
}

/// Survey of the catalog up to `max_order`.
pub fn survey_catalog(max_order: usize, limits: &Limits) -> Result<Vec<SurveyRow>> {
    Ok(survey(&catalog(max_order, limits)?, limits))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), |v| v.to_string())
}

fn list(xs: &[u64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub const TSV_HEADER: &str = "label\torder\tdegree\tabelianization\tdg\tdl\tnilpotent\tsemiabelian\twl_lower\twl_upper\twl_exact\twl_eq_dg\twitness_prime\twitness_spec\tisomorphic_to\tnotes";

pub fn to_tsv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in rows {
        let semi = r.semiabelian.map(|v| match v {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        });
        let fields = [
            r.label.clone(),
            r.order.to_string(),
            r.degree.to_string(),
            list(&r.abelianization),
            opt(&r.dg),
            opt(&r.dl),
            r.nilpotent.to_string(),
            opt(&semi),
            r.wl_lower.to_string(),
            opt(&r.wl_upper),
            opt(&r.wl_exact),
            opt(&r.wl_eq_dg),
            opt(&r.witness_prime),
            r.witness_spec.as_deref().map_or("-".into(), list),
            opt(&r.isomorphic_to),
            r.notes.join("; "),
        ];
        out.push_str(&fields.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_six_rows() {
        let rows = survey_catalog(6, &Limits::default()).unwrap();
        let s3 = rows.iter().find(|r| r.label == "S3").unwrap();
        assert_eq!(
            (s3.dg, s3.dl, s3.semiabelian, s3.wl_exact, s3.wl_eq_dg),
            (Some(1), Some(2), Some(Verdict::Yes), Some(2), Some(false))
        );
        assert_eq!(s3.abelianization, vec![2]);
        let c2 = rows.iter().find(|r| r.label == "C2").unwrap();
        assert_eq!((c2.dg, c2.dl, c2.wl_exact), (Some(1), Some(1), Some(1)));
        // S3 is the only row of order at most 6 with wl ≠ dg
        let flagged: Vec<&str> = rows
            .iter()
            .filter(|r| r.wl_eq_dg == Some(false) && r.order > 1)
            .map(|r| r.label.as_str())
            .collect();
        assert_eq!(flagged, vec!["S3"]);
    }

    #[test]
    fn order_eight_notes_isomorphisms() {
        let rows = survey_catalog(8, &Limits::default()).unwrap();
        let w = rows.iter().find(|r| r.label == "wr(C2,C2;desc)").unwrap();
        assert_eq!(w.isomorphic_to.as_deref(), Some("D4"));
        let d4 = rows.iter().find(|r| r.label == "D4").unwrap();
        assert_eq!(
            (d4.wl_exact, d4.wl_eq_dg, d4.witness_prime),
            (Some(2), Some(true), Some(2))
        );
        let tsv = to_tsv(&rows);
        assert_eq!(tsv.lines().count(), rows.len() + 1);
    }

    #[test]
    fn empty_selection() {
        assert!(survey(&[], &Limits::default()).is_empty());
        assert_eq!(to_tsv(&[]).lines().count(), 1);
    }
}
