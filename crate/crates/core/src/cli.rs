//! Command-line interface: argument parsing and the per-command output.
//!
//! Every command renders to a `String`, so output is deterministic and can
//! be tested without spawning a process.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chars::{
    build_all, build_family, descriptors, midafi, ClassCache, ClassFunction, FamilyId, FamilyReport,
};
use crate::classes::conjugacy_classes;
use crate::rootsys::{self, RootSet};
use crate::ugroup::{GroupElement, QuotientContext, UnipotentGroup};
use crate::verify::{cmd_verify, Format, RunConfig, VerifyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Characteristic of the field.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Degree of the field over its prime field.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Field order; factored into p^n.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Monic irreducible modulus, constant term first, e.g. `1,1,1`.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Permit computations above the default size guard.
    #[arg(long, global = true)]
    pub allow_large: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// The positive roots with hooks, arms and legs.
    Roots,
    /// Product of two elements given as `d1,...,d12`.
    Mul {
        a: String,
        b: String,
        /// Roots to factor out, e.g. `11,12`.
        #[arg(long)]
        quotient: Option<String>,
    },
    /// `h^-1 g h`.
    Conj {
        g: String,
        h: String,
        #[arg(long)]
        quotient: Option<String>,
    },
    /// Conjugacy classes of U or of a quotient.
    Classes {
        #[arg(long)]
        quotient: Option<String>,
    },
    /// The midafi for root `alpha` and parameter `s` (a field index).
    Midafi {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        s: u32,
    },
    /// One family of irreducible characters.
    Family {
        #[arg(long)]
        name: String,
    },
    /// The complete character table.
    Chartable,
    /// Runs the consistency checks; exit status reflects the result.
    Verify,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "d4u",
    version,
    about = "Classes and characters of the unipotent radical of D4(q)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

impl GlobalArgs {
    /// Resolves the field flags; with none given, q = 2.
    pub fn run_config(&self) -> Result<RunConfig, VerifyError> {
        let mut cfg = match (self.q, self.p) {
            (Some(q), _) => {
                let c = RunConfig::with_order(q)?;
                if self.p.is_some_and(|p| p != c.p) || self.n.is_some_and(|n| n != c.n) {
                    return Err(VerifyError::Config(format!(
                        "--q {q} conflicts with --p/--n"
                    )));
                }
                c
            }
            (None, Some(p)) => RunConfig::new(p, self.n.unwrap_or(1)),
            (None, None) => match self.n {
                Some(_) => return Err(VerifyError::Config("--n needs --p".into())),
                None => RunConfig::new(2, 1),
            },
        };
        if let Some(m) = &self.modulus {
            let coeffs = m
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| VerifyError::Config(format!("bad modulus {m:?}")))?;
            cfg.modulus = Some(coeffs);
        }
        cfg.format = match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Tsv => Format::Tsv,
        };
        cfg.allow_large = self.allow_large;
        cfg.threads = self.threads;
        // validate the field now so errors surface as configuration errors
        cfg.field()?;
        Ok(cfg)
    }
}

/// Rendered output and whether the command's checks passed.
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn quotient(spec: &Option<String>) -> Result<Option<QuotientContext>, VerifyError> {
    match spec {
        None => Ok(None),
        Some(s) => {
            let roots =
                rootsys::parse_root_list(s).map_err(|e| VerifyError::Config(e.to_string()))?;
            Ok(Some(QuotientContext::new(roots)?))
        }
    }
}

#[derive(Serialize)]
struct RootRow {
    index: usize,
    coeffs: [u8; 4],
    height: u32,
    hook: RootSet,
    arm: RootSet,
    leg: RootSet,
}

fn cmd_roots(cfg: &RunConfig) -> String {
    let rows: Vec<RootRow> = rootsys::roots()
        .into_iter()
        .map(|r| RootRow {
            index: r.index,
            coeffs: r.coeffs,
            height: r.height,
            hook: rootsys::hook(r.index).expect("valid"),
            arm: rootsys::arm(r.index).expect("valid"),
            leg: rootsys::leg(r.index).expect("valid"),
        })
        .collect();
    match cfg.format {
        Format::Json => json(&rows),
        Format::Tsv => {
            let list = |s: RootSet| {
                s.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let mut out = String::from("index\tcoeffs\theight\thook\tarm\tleg\n");
            for r in rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.index,
                    r.coeffs.map(|c| c.to_string()).join(""),
                    r.height,
                    list(r.hook),
                    list(r.arm),
                    list(r.leg)
                ));
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ElementOut {
    q: u64,
    element: String,
    d: Vec<Vec<u32>>,
}

fn element_output(cfg: &RunConfig, group: &UnipotentGroup, g: &GroupElement) -> String {
    let text = group.format_element(g);
    match cfg.format {
        Format::Json => json(&ElementOut {
            q: cfg.q(),
            element: text,
            d: group.to_json(g).d,
        }),
        Format::Tsv => format!("{text}\n"),
    }
}

#[derive(Serialize)]
struct CharRecord {
    family: String,
    degree: String,
    values: Vec<Vec<String>>,
    kernel_roots: RootSet,
}

impl CharRecord {
    fn of(chi: &ClassFunction) -> Self {
        let w = chi.raw_values().len() / chi.ambient().count();
        CharRecord {
            family: chi.label().unwrap_or("").to_string(),
            degree: chi.degree().to_string(),
            values: chi
                .raw_values()
                .chunks(w)
                .map(|c| c.iter().map(|v| v.to_string()).collect())
                .collect(),
            kernel_roots: chi.kernel_roots(),
        }
    }
}

#[derive(Serialize)]
struct CharTableOut {
    q: u64,
    characters: Vec<CharRecord>,
}

fn characters_json(q: u64, chars: &[ClassFunction]) -> String {
    json(&CharTableOut {
        q,
        characters: chars.iter().map(CharRecord::of).collect(),
    })
}

fn family_tsv(reports: &[FamilyReport]) -> String {
    let mut out = String::from("family\tdegree\tvalue\tcount\texpected\tresult\n");
    for f in reports {
        for p in &f.parts {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                f.family,
                p.degree,
                p.degree_value,
                p.found,
                p.expected,
                if p.passed() { "pass" } else { "FAIL" }
            ));
        }
    }
    out
}

fn cmd_midafi(cfg: &RunConfig, alpha: usize, s: u32) -> Result<String, VerifyError> {
    let group = cfg.group()?;
    let s = group.field().element(s)?;
    let cd = Arc::new(conjugacy_classes(&group, None, cfg.allow_large)?);
    let mu = midafi(alpha, s, &cd)?;
    Ok(match cfg.format {
        Format::Json => characters_json(cfg.q(), &[mu]),
        Format::Tsv => {
            let k = mu
                .kernel_roots()
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!(
                "alpha\ts\tdegree\tirreducible\tkernel_roots\n{alpha}\t{}\t{}\t{}\t{k}\n",
                s.index(),
                mu.degree(),
                mu.is_irreducible()
            )
        }
    })
}

fn cmd_family(cfg: &RunConfig, name: &str) -> Result<Output, VerifyError> {
    let q = cfg.q();
    let bare: String = name.chars().filter(|c| c.is_ascii_digit()).collect();
    // a bare F8,9,10 picks the variant matching the parity of q
    let id = if bare == "8910" && !name.contains("odd") && !name.contains("even") {
        if q.is_multiple_of(2) {
            FamilyId::F8910Even
        } else {
            FamilyId::F8910Odd
        }
    } else {
        FamilyId::parse(name)
            .ok_or_else(|| VerifyError::Config(format!("unknown family {name:?}")))?
    };
    let desc = descriptors()
        .into_iter()
        .find(|d| d.id == id)
        .expect("every id has a descriptor");
    let cache = ClassCache::new(cfg.group()?, cfg.allow_large);
    let report = build_family(&desc, &cache)?;
    let passed = report.passed();
    let text = match cfg.format {
        Format::Json => characters_json(q, &report.characters),
        Format::Tsv => family_tsv(std::slice::from_ref(&report)),
    };
    Ok(Output { text, passed })
}

fn cmd_chartable(cfg: &RunConfig) -> Result<Output, VerifyError> {
    let cache = ClassCache::new(cfg.group()?, cfg.allow_large);
    let table = build_all(&cache)?;
    let passed = table.checks.passed();
    let text = match cfg.format {
        Format::Json => characters_json(cfg.q(), &table.characters),
        Format::Tsv => {
            let mut out = family_tsv(&table.families);
            out.push_str("\ndegree\tcount\texpected\n");
            for (d, c) in &table.checks.multiplicities {
                let e = table
                    .checks
                    .expected_multiplicities
                    .get(d)
                    .copied()
                    .unwrap_or(0);
                out.push_str(&format!("{d}\t{c}\t{e}\n"));
            }
            out.push_str(&format!(
                "total\t{}\t{}\n",
                table.checks.character_count, table.checks.class_count
            ));
            out
        }
    };
    Ok(Output { text, passed })
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Output, VerifyError> {
    let cfg = cli.global.run_config()?;
    match &cli.command {
        Command::Roots => Ok(Output::ok(cmd_roots(&cfg))),
        Command::Mul { a, b, quotient: qs } => {
            let group = cfg.group()?;
            let ctx = quotient(qs)?;
            let (a, b) = (group.parse_element(a)?, group.parse_element(b)?);
            Ok(Output::ok(element_output(
                &cfg,
                &group,
                &group.mul(&a, &b, ctx.as_ref()),
            )))
        }
        Command::Conj { g, h, quotient: qs } => {
            let group = cfg.group()?;
            let ctx = quotient(qs)?;
            let (g, h) = (group.parse_element(g)?, group.parse_element(h)?);
            Ok(Output::ok(element_output(
                &cfg,
                &group,
                &group.conj(&g, &h, ctx.as_ref()),
            )))
        }
        Command::Classes { quotient: qs } => {
            let group = cfg.group()?;
            let ctx = quotient(qs)?;
            let cd = conjugacy_classes(&group, ctx.as_ref(), cfg.allow_large)?;
            Ok(Output::ok(match cfg.format {
                Format::Json => json(&cd.listing()),
                Format::Tsv => cd.to_tsv(),
            }))
        }
        Command::Midafi { alpha, s } => Ok(Output::ok(cmd_midafi(&cfg, *alpha, *s)?)),
        Command::Family { name } => cmd_family(&cfg, name),
        Command::Chartable => cmd_chartable(&cfg),
        Command::Verify => {
            let r = cmd_verify(&cfg)?;
            let text = match cfg.format {
                Format::Json => json(&r),
                Format::Tsv => r.to_tsv(),
            };
            Ok(Output {
                text,
                passed: r.passed,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Output {
        let mut v = vec!["d4u"];
        v.extend_from_slice(args);
        run(&Cli::try_parse_from(v).unwrap()).unwrap()
    }

    #[test]
    fn roots_tsv_has_twelve_rows() {
        let out = go(&["roots", "--format", "tsv"]).text;
        assert_eq!(out.lines().count(), 13);
        assert!(out.lines().nth(12).unwrap().starts_with("12\t1121\t5\t"));
    }

    #[test]
    fn mul_and_conj() {
        let out = go(&[
            "mul",
            "1,0,0,0,0,0,0,0,0,0,0,0",
            "0,0,1,0,0,0,0,0,0,0,0,0",
            "--format",
            "tsv",
        ])
        .text;
        assert_eq!(out, "1,0,1,0,0,0,0,0,0,0,0,0\n");
        let out = go(&[
            "--q",
            "3",
            "conj",
            "0,0,1,0,0,0,0,0,0,0,0,0",
            "2,0,0,0,0,0,0,0,0,0,0,0",
            "--format",
            "tsv",
        ])
        .text;
        assert_eq!(out, "0,0,1,0,1,0,0,0,0,0,0,0\n");
    }

    #[test]
    fn classes_json() {
        let out = go(&["classes", "--q", "2"]).text;
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], 103);
        assert_eq!(v["classes"].as_array().unwrap().len(), 103);
        assert_eq!(v["q"], 2);
    }

    #[test]
    fn field_flags() {
        let c = Cli::try_parse_from(["d4u", "roots", "--p", "2", "--n", "2", "--modulus", "1,1,1"])
            .unwrap();
        assert_eq!(c.global.run_config().unwrap().q(), 4);
        let c = Cli::try_parse_from(["d4u", "roots", "--q", "4", "--p", "3"]).unwrap();
        assert!(c.global.run_config().is_err());
        let c = Cli::try_parse_from(["d4u", "roots", "--p", "2", "--n", "2", "--modulus", "1,0,1"])
            .unwrap();
        assert!(c.global.run_config().is_err());
    }

    #[test]
    fn family_and_midafi() {
        let out = go(&["family", "--name", "F8,9", "--format", "tsv"]);
        assert!(out.passed);
        assert!(out.text.contains("F8,9\tq^2\t4\t4\t4\tpass"));
        let out = go(&["family", "--name", "F8,9,10"]);
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["characters"].as_array().unwrap().len(), 5);
        let out = go(&["midafi", "--alpha", "12", "--s", "1"]).text;
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["characters"][0]["degree"], "16");
        assert_eq!(v["characters"][0]["values"].as_array().unwrap().len(), 103);
    }

    #[test]
    fn chartable_output_is_deterministic() {
        let a = go(&["chartable"]).text;
        let b = go(&["chartable"]).text;
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["characters"].as_array().unwrap().len(), 103);
    }
}
