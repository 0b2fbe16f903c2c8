//! Command-line surface: `info`, `verify`, `wl`, `survey`, `realize-cyclic`.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 cap, budget or
//! timeout exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::abelian::{abelianization_invariants, dg, dg_p};
use crate::arith::prime_divisors;
use crate::cert::{envelope, to_json};
use crate::error::{Error, Result};
use crate::expr::parse_group;
use crate::group::{CancelToken, Limits};
use crate::invariants::conductor::cyclic_conductor;
use crate::invariants::semiabelian::{is_semiabelian, validate_chain, Verdict};
use crate::invariants::survey::{survey_catalog, to_tsv, SurveyRow};
use crate::invariants::wl::{check_wl_eq_dg_characterization, wl_bounds};
use crate::subgroup::{derived_length, is_nilpotent};
use crate::verify::{run_suite, Status, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "wreathlab",
    version,
    about = "Wreath products, dg, derived length and wreath length of small permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest catalog order included by `survey`.
    #[arg(long, global = true, default_value_t = 24)]
    pub max_order: usize,
    /// Candidate checks allowed per homomorphism search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub tuple_budget: Option<u64>,
    /// Largest group order that may be enumerated.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub element_cap: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Abort the computation after this many seconds.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_secs: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, degree, abelianization, dg, dg_p, derived length, nilpotency and semiabelian verdict.
    Info {
        /// Group expression, e.g. `S3`, `C2 * C4`, `wr(C3,C2;desc)`.
        expr: String,
    },
    /// Run a property suite: functorial, towers, invariants or all.
    Verify { suite: String },
    /// Bounds and certificate for the wreath length.
    Wl { expr: String },
    /// One row of invariants per catalog group up to --max-order.
    Survey,
    /// Smallest prime p = 1 mod N, realizing C_N inside the p-th cyclotomic field.
    RealizeCyclic { n: u64 },
}

impl Cli {
    pub fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(b) = self.tuple_budget {
            limits.tuple_budget = b;
        }
        if let Some(c) = self.element_cap {
            limits.element_cap = c as usize;
        }
        if let Some(t) = self.timeout_secs {
            limits.cancel = CancelToken::with_timeout(Duration::from_secs(t));
        }
        limits
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_resource_limit() => EXIT_LIMIT,
        Error::ConstructionDefect { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = cli.limits();
    let text = match &cli.command {
        Command::Info { expr } => {
            let r = info(expr, &limits)?;
            match cli.format {
                Format::Json => to_json(&envelope("info", cli.seed, &r)),
                f => render_pairs(&r.pairs(), f),
            }
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let rep = run_suite(suite, &limits, cli.seed);
            let s = match cli.format {
                Format::Json => to_json(&envelope("verify", cli.seed, &rep)),
                Format::Tsv => {
                    let mut s = String::from("suite\tcheck\tstatus\tdetail\n");
                    for c in &rep.checks {
                        s += &format!(
                            "{}\t{}\t{}\t{}\n",
                            c.suite,
                            c.name,
                            status(c.status),
                            c.detail
                        );
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("seed {}\n", rep.seed);
                    for c in &rep.checks {
                        s += &format!(
                            "{:<4} [{}] {}: {}\n",
                            status(c.status),
                            c.suite,
                            c.name,
                            c.detail
                        );
                    }
                    s + &format!(
                        "{}: {} passed, {} failed, {} skipped\n",
                        rep.suite, rep.passed, rep.failed, rep.skipped
                    )
                }
            };
            out.write_all(s.as_bytes()).map_err(io)?;
            return Ok(if rep.ok() { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::Wl { expr } => {
            let g = parse_group(expr, &limits)?;
            let mut cert = wl_bounds(&g, &limits)?;
            let ch = match check_wl_eq_dg_characterization(&g, &cert, &limits) {
                Ok(ch) => Some(ch),
                Err(e) if e.is_resource_limit() => {
                    cert.notes.push(format!("characterization: {e}"));
                    None
                }
                Err(e) => return Err(e),
            };
            let s = match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Body<'a> {
                        certificate: &'a crate::invariants::wl::WlCertificate,
                        characterization: Option<&'a crate::invariants::wl::CharacterizationReport>,
                    }
                    let body = Body {
                        certificate: &cert,
                        characterization: ch.as_ref(),
                    };
                    to_json(&envelope("wreath-length", cli.seed, &body))
                }
                f => {
                    let witness = cert.upper.as_ref().map(|w| {
                        format!(
                            "{} ({} certified)",
                            w.spec,
                            format!("{:?}", w.certification).to_lowercase()
                        )
                    });
                    let mut pairs = vec![
                        ("group", cert.group.clone()),
                        ("order", cert.order.to_string()),
                        ("dg", opt(&cert.dg)),
                        ("dl", opt(&cert.dl)),
                        (
                            "lower",
                            format!("{} ({})", cert.lower, cert.lower_reasons.join(", ")),
                        ),
                        ("upper", opt(&cert.upper_length())),
                        ("exact", opt(&cert.exact)),
                        ("witness", opt(&witness)),
                        ("refuted_lengths", format!("{:?}", cert.refuted_lengths)),
                        (
                            "wl_eq_dg",
                            opt(&cert.exact.zip(cert.dg).map(|(w, d)| w == d)),
                        ),
                        (
                            "dg_witness",
                            opt(&ch
                                .as_ref()
                                .and_then(|c| c.witness.as_ref())
                                .map(|w| format!("p={} {}", w.prime, w.tower.spec))),
                        ),
                        ("budget_exhausted", cert.budget_exhausted.to_string()),
                    ];
                    if cert.exact.zip(cert.dg).is_some_and(|(w, d)| w != d) {
                        pairs.push(("flag", "wl != dg".into()));
                    }
                    for n in &cert.notes {
                        pairs.push(("note", n.clone()));
                    }
                    render_pairs(&pairs, f)
                }
            };
            out.write_all(s.as_bytes()).map_err(io)?;
            return Ok(if cert.exact.is_none() && cert.budget_exhausted {
                EXIT_LIMIT
            } else {
                EXIT_OK
            });
        }
        Command::Survey => {
            let rows = survey_catalog(cli.max_order, &limits)?;
            limits.cancel.check()?;
            match cli.format {
                Format::Json => to_json(&envelope("survey", cli.seed, &rows)),
                Format::Tsv => to_tsv(&rows),
                Format::Text => survey_text(&rows),
            }
        }
        Command::RealizeCyclic { n } => {
            let rec = cyclic_conductor(*n)?;
            match cli.format {
                Format::Json => to_json(&envelope("cyclic-realization", cli.seed, &rec)),
                f => render_pairs(
                    &[
                        ("group", rec.group.clone()),
                        ("prime", rec.prime.to_string()),
                        ("ramified_primes", rec.ramified_primes.to_string()),
                        ("rejected_candidates", rec.rejected.to_string()),
                        (
                            "summary",
                            format!(
                                "{} realized tamely with {} ramified prime inside Q(zeta_{})",
                                rec.group, rec.ramified_primes, rec.prime
                            ),
                        ),
                    ],
                    f,
                ),
            }
        }
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(format!("write failed: {e}"))
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), |v| v.to_string())
}

fn render_pairs(pairs: &[(&str, String)], f: Format) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        match f {
            Format::Tsv => s += &format!("{k}\t{v}\n"),
            _ => s += &format!("{k}: {v}\n"),
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeDg {
    pub prime: u64,
    pub dg: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfoReport {
    pub group: String,
    pub order: usize,
    pub degree: usize,
    pub abelianization: Vec<u64>,
    pub dg: usize,
    pub dg_p: Vec<PrimeDg>,
    /// `None` for groups that are not solvable.
    pub dl: Option<usize>,
    pub nilpotent: bool,
    pub semiabelian: Option<Verdict>,
    pub notes: Vec<String>,
}

impl InfoReport {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        let dgp: Vec<String> = self
            .dg_p
            .iter()
            .map(|d| format!("{}:{}", d.prime, d.dg))
            .collect();
        let mut v = vec![
            ("group", self.group.clone()),
            ("order", self.order.to_string()),
            ("degree", self.degree.to_string()),
            ("abelianization", format!("{:?}", self.abelianization)),
            ("dg", self.dg.to_string()),
            ("dg_p", dgp.join(" ")),
            (
                "dl",
                self.dl.map_or("not solvable".into(), |d| d.to_string()),
            ),
            ("nilpotent", self.nilpotent.to_string()),
            (
                "semiabelian",
                self.semiabelian.map_or("-".into(), |v| match v {
                    Verdict::Yes => "yes".into(),
                    Verdict::No => "no".into(),
                }),
            ),
        ];
        for n in &self.notes {
            v.push(("note", n.clone()));
        }
        v
    }
}

pub fn info(expr: &str, limits: &Limits) -> Result<InfoReport> {
    let g = parse_group(expr, limits)?;
    let ab = abelianization_invariants(&g, limits)?;
    let mut dg_p_list = Vec::new();
    for p in prime_divisors(g.order() as u64) {
        dg_p_list.push(PrimeDg {
            prime: p,
            dg: dg_p(&g, p, limits)?,
        });
    }
    let dl = match derived_length(&g, limits) {
        Ok(d) => Some(d),
        Err(Error::NotSolvable { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut notes = Vec::new();
    let semiabelian = match is_semiabelian(&g, limits) {
        Ok(cert) => {
            validate_chain(&g, &cert)?;
            Some(cert.verdict)
        }
        Err(e) if e.is_resource_limit() && !matches!(e, Error::Cancelled) => {
            notes.push(format!("semiabelian: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(InfoReport {
        group: g.label().to_string(),
        order: g.order(),
        degree: g.degree(),
        abelianization: ab.factors().to_vec(),
        dg: dg(&g, limits)?,
        dg_p: dg_p_list,
        dl,
        nilpotent: is_nilpotent(&g),
        semiabelian,
        notes,
    })
}

fn survey_text(rows: &[SurveyRow]) -> String {
    let mut s = format!(
        "{:<24} {:>6} {:<14} {:>3} {:>3} {:>4} {:>5} {:>5} {:>6} {:<12} {}\n",
        "group", "order", "abelian", "dg", "dl", "nil", "semi", "wl", "wl=dg", "witness", "notes"
    );
    for r in rows {
        let semi = match r.semiabelian {
            Some(Verdict::Yes) => "yes",
            Some(Verdict::No) => "no",
            None => "-",
        };
        let wl = match (r.wl_exact, r.wl_upper) {
            (Some(e), _) => e.to_string(),
            (None, Some(u)) => format!("{}..{}", r.wl_lower, u),
            (None, None) => format!("{}..", r.wl_lower),
        };
        let witness = r.witness_spec.as_ref().map_or("-".into(), |w| {
            format!("p={} {:?}", r.witness_prime.unwrap_or(0), w)
        });
        let mut notes = r.notes.clone();
        if let Some(iso) = &r.isomorphic_to {
            notes.insert(0, format!("isomorphic to {iso}"));
        }
        s += &format!(
            "{:<24} {:>6} {:<14} {:>3} {:>3} {:>4} {:>5} {:>5} {:>6} {:<12} {}\n",
            r.label,
            r.order,
            format!("{:?}", r.abelianization),
            opt(&r.dg),
            opt(&r.dl),
            if r.nilpotent { "yes" } else { "no" },
            semi,
            wl,
            opt(&r.wl_eq_dg),
            witness,
            notes.join("; ")
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["wreathlab"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn info_s3() {
        let (code, out, _) = call(&["info", "S3"]);
        assert_eq!(code, 0);
        assert!(out.contains("order: 6") && out.contains("dg: 1") && out.contains("dl: 2"));
        assert!(out.contains("semiabelian: yes"));
    }

    #[test]
    fn info_wreath_json() {
        let (code, out, _) = call(&["info", "wr(C2,C2;desc)", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], "wreathlab-cert/1");
        assert_eq!(
            (v["body"]["order"].as_u64(), v["body"]["dg"].as_u64()),
            (Some(8), Some(2))
        );
        assert_eq!(v["body"]["dl"], 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["info", "C1"]).0, EXIT_USAGE);
        assert_eq!(call(&["info", "C2 *"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "lemmas"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["realize-cyclic", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn caps_exit_three() {
        let (code, _, err) = call(&["info", "wr(C2,C2,C2)", "--element-cap", "100"]);
        assert_eq!(code, EXIT_LIMIT, "{err}");
    }

    #[test]
    fn realize_cyclic() {
        let (code, out, _) = call(&["realize-cyclic", "4"]);
        assert_eq!(code, 0);
        assert!(
            out.contains("prime: 5") && out.contains("C4 realized tamely with 1 ramified prime")
        );
        let (_, out, _) = call(&["realize-cyclic", "3", "--format", "tsv"]);
        assert!(out.contains("prime\t7"));
    }

    #[test]
    fn wl_s3_flags() {
        let (code, out, _) = call(&["wl", "S3"]);
        assert_eq!(code, 0);
        assert!(out.contains("exact: 2") && out.contains("dg: 1") && out.contains("wl != dg"));
    }

    #[test]
    fn survey_empty_and_small() {
        let (code, out, _) = call(&["survey", "--max-order", "0", "--format", "tsv"]);
        assert_eq!((code, out.lines().count()), (0, 1));
        let (code, out, _) = call(&["survey", "--max-order", "6"]);
        assert_eq!(code, 0);
        assert!(out
            .lines()
            .any(|l| l.starts_with("S3 ") && l.contains("false")));
    }
}
