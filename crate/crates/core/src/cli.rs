//! Command-line front end. The binary only parses arguments and calls [`run`].
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails, 2 for
//! usage errors.

use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::automorphism::automorphism_order;
use crate::cap::{
    base_preimage, build_cap_psi, build_cap_theorem1, build_dual_cap, disjointness_check, missing_primes,
    parametrize_cap,
};
use crate::coset::{CosetExplorer, Quadruple, RReport, ScanRow, SetClass};
use crate::design::{blocks, dual_design, verify_witt, WittReport};
use crate::error::Error;
use crate::golay::{generator_matrix, is_self_dual, minimum_distance, weight6_supports, weight_distribution};
use crate::pg::{Hyperplane, ProjPoint};
use crate::veronese::{chordal_cubic_contains, veronese_map, VeroneseModel};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn parse_preimage(s: &str) -> Result<ProjPoint, String> {
    let p = ProjPoint::parse_with(s, ',').map_err(|e| e.to_string())?;
    if p.dim() != 2 {
        return Err(format!("preimage needs three coordinates, got {}", p.dim() + 1));
    }
    Ok(p)
}

fn parse_target(s: &str) -> Result<Hyperplane, String> {
    let h: Hyperplane = s.parse().map_err(|e: Error| e.to_string())?;
    if h.dim() != 5 {
        return Err("target prime needs six coordinates".into());
    }
    Ok(h)
}

#[derive(Clone, Debug, Parser)]
#[command(name = "veronese-witt", version, about = "Veronese surface, Witt cap and Golay code over GF(3)")]
pub struct RunConfig {
    /// Preimage in PG(2,3) of the base point P, as x0,x1,x2.
    #[arg(long, global = true, default_value = "1,0,0", value_parser = parse_preimage)]
    pub preimage: ProjPoint,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Print the twelve cap points in parametrization order.
    BuildCap,
    /// Check the 5-(12,6,1) axioms of the hyperplane-section design.
    VerifyDesign,
    /// Print the twelve primes missing the cap.
    Todd,
    /// Order of the automorphism group of the design.
    AutOrder,
    /// Ternary Golay code from the cap columns.
    Golay {
        #[arg(long)]
        emit_matrix: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Class and hyperplane profile of one replaced-conic twelve-set.
    Classify {
        #[arg(long)]
        quadruple: Quadruple,
    },
    /// Table of all 81 replaced-conic twelve-sets.
    ScanCosets,
    /// Six-point primes and projection of a sum-2 twelve-set.
    AnalyzeR {
        #[arg(long)]
        quadruple: Quadruple,
        #[arg(long, value_parser = parse_target)]
        target: Option<Hyperplane>,
    },
    /// One line per conic of the surface.
    DumpVeronese,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapEntry {
    pub domain: ProjPoint,
    pub point: ProjPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildCapReport {
    pub claim: String,
    pub base_point: ProjPoint,
    pub points: Vec<CapEntry>,
    pub constructions_agree: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDesignReport {
    pub claim: String,
    pub base_point: ProjPoint,
    pub witt: WittReport,
    pub blocks: usize,
    pub empty_primes: usize,
    pub dual_cap_disjoint: bool,
    pub aut: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToddReport {
    pub claim: String,
    pub base_point: ProjPoint,
    pub missing_primes: Vec<Hyperplane>,
    pub matches_dual_cap: bool,
    pub dual_design_is_witt: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutReport {
    pub claim: String,
    pub order: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GolayReport {
    pub claim: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub self_dual: bool,
    pub weights: BTreeMap<usize, usize>,
    pub supports_are_blocks: bool,
    pub matrix: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub claim: String,
    pub quadruple: Quadruple,
    pub class: SetClass,
    pub six_point_primes: usize,
    pub profile: BTreeMap<usize, usize>,
    pub chordal: bool,
    pub points: Vec<ProjPoint>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub claim: String,
    pub rows: Vec<ScanRow>,
    pub per_class: BTreeMap<SetClass, usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRReport {
    pub claim: String,
    pub report: RReport,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicLine {
    pub line: Hyperplane,
    pub points: Vec<ProjPoint>,
    pub prime: Hyperplane,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpReport {
    pub conics: Vec<ConicLine>,
    pub pass: bool,
}

enum Failure {
    Usage(String),
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e)
    }
}

struct Output {
    text: String,
    json: String,
    pass: bool,
}

fn output<T: Serialize>(report: &T, text: String, pass: bool) -> Output {
    Output { text, json: serde_json::to_string_pretty(report).expect("serializable") + "\n", pass }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn join_profile(p: &BTreeMap<usize, usize>) -> String {
    p.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string() + "\n").collect()
}

fn explorer(model: &VeroneseModel, p: &ProjPoint) -> Result<CosetExplorer, Failure> {
    Ok(CosetExplorer::new(model, p)?)
}

fn dispatch(config: &RunConfig) -> Result<Output, Failure> {
    let model = VeroneseModel::build();
    let p = veronese_map(&config.preimage)?;
    match &config.command {
        Command::BuildCap => {
            let pairs = parametrize_cap(&model, &p)?;
            let geometric = build_cap_theorem1(&model, &p)?;
            let mut listed: Vec<ProjPoint> = pairs.iter().map(|(_, y)| y.clone()).collect();
            listed.sort();
            let report = BuildCapReport {
                claim: "union of internal points of the four conics through P equals the parametrized cap".into(),
                base_point: p,
                points: pairs.into_iter().map(|(domain, point)| CapEntry { domain, point }).collect(),
                constructions_agree: listed == geometric.points,
                pass: false,
            };
            let pass = report.constructions_agree && report.points.len() == 12;
            let report = BuildCapReport { pass, ..report };
            let text = report.points.iter().map(|e| format!("{}\n", e.point)).collect();
            Ok(output(&report, text, pass))
        }
        Command::VerifyDesign => {
            let cap = build_cap_theorem1(&model, &p)?;
            let design = blocks(&cap.points);
            let witt = verify_witt(&design);
            let dual = build_dual_cap(&model, &p)?;
            let empty = missing_primes(&cap.points).len();
            let aut = automorphism_order(&design);
            let dual_cap_disjoint = disjointness_check(&cap, &dual);
            let pass = witt.pass && design.blocks.len() == 132 && empty == 12 && aut == 95040 && dual_cap_disjoint;
            let report = VerifyDesignReport {
                claim: "hyperplane sections of size six form the 5-(12,6,1) design".into(),
                base_point: p,
                blocks: design.blocks.len(),
                empty_primes: empty,
                dual_cap_disjoint,
                aut,
                pass,
                witt,
            };
            let mut text = format!(
                "{} blocks={} empty_primes={} aut={} five_subsets={} lambda4={} dual_disjoint={}\n",
                verdict(pass),
                report.blocks,
                report.empty_primes,
                report.aut,
                report.witt.five_subsets_checked,
                report.witt.four_subset_covering.map_or("none".to_string(), |c| c.to_string()),
                report.dual_cap_disjoint,
            );
            if let Some(v) = &report.witt.violation {
                text.push_str(&format!(
                    "violation subset={} covering_blocks={}\n",
                    v.subset.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
                    v.covering_blocks
                ));
            }
            Ok(output(&report, text, pass))
        }
        Command::Todd => {
            let cap = build_cap_theorem1(&model, &p)?;
            let missing = missing_primes(&cap.points);
            let dual = build_dual_cap(&model, &p)?;
            let matches = missing == dual.primes();
            let dual_witt = verify_witt(&dual_design(&missing)).pass;
            let pass = missing.len() == 12 && matches && dual_witt;
            let report = ToddReport {
                claim: "exactly twelve primes miss the cap and they form the dual cap".into(),
                base_point: p,
                missing_primes: missing,
                matches_dual_cap: matches,
                dual_design_is_witt: dual_witt,
                pass,
            };
            let text = lines(&report.missing_primes);
            Ok(output(&report, text, pass))
        }
        Command::AutOrder => {
            let cap = build_cap_theorem1(&model, &p)?;
            let order = automorphism_order(&blocks(&cap.points));
            let report = AutReport {
                claim: "automorphism group of the design has order 95040".into(),
                order,
                pass: order == 95040,
            };
            Ok(output(&report, format!("{order}\n"), report.pass))
        }
        Command::Golay { emit_matrix, verify } => {
            if config.preimage != base_preimage() {
                return Err(Failure::Usage("golay columns are defined for the default base point only".into()));
            }
            let code = generator_matrix(&build_cap_psi())?;
            let weights = weight_distribution(&code);
            let design = blocks(&code.column_order);
            let supports_are_blocks = weight6_supports(&code) == design.block_masks().into_iter().collect();
            let report = GolayReport {
                claim: "cap columns generate the extended ternary Golay code".into(),
                n: code.length(),
                k: code.dimension(),
                d: minimum_distance(&code).unwrap_or(0),
                self_dual: is_self_dual(&code),
                weights,
                supports_are_blocks,
                matrix: code.emit_matrix().lines().map(String::from).collect(),
                pass: false,
            };
            let pass =
                report.n == 12 && report.k == 6 && report.d == 6 && report.self_dual && report.supports_are_blocks;
            let report = GolayReport { pass, ..report };
            let show_matrix = *emit_matrix;
            let show_verify = *verify || !*emit_matrix;
            let mut text = String::new();
            if show_matrix {
                text.push_str(&lines(&report.matrix));
            }
            if show_verify {
                text.push_str(&format!(
                    "n={} k={} d={} self_dual={}\nweights {}\n",
                    report.n,
                    report.k,
                    report.d,
                    report.self_dual,
                    join_profile(&report.weights)
                ));
            }
            Ok(output(&report, text, pass))
        }
        Command::Classify { quadruple } => {
            let e = explorer(&model, &p)?;
            let s = e.twelve_set(*quadruple);
            let class = e.classify(&s)?;
            let profile = e.hyperplane_profile(&s);
            let six = profile.get(&6).copied().unwrap_or(0);
            let chordal = s.points.iter().all(chordal_cubic_contains);
            let report = ClassifyReport {
                claim: "quadruple sum mod 3 determines the projective class".into(),
                quadruple: *quadruple,
                class,
                six_point_primes: six,
                profile,
                chordal,
                points: s.points,
                pass: chordal,
            };
            let text = format!(
                "class={} six_point_primes={}\nprofile {}\n",
                report.class,
                report.six_point_primes,
                join_profile(&report.profile)
            );
            let pass = report.pass;
            Ok(output(&report, text, pass))
        }
        Command::ScanCosets => {
            let e = explorer(&model, &p)?;
            let rows = e.scan()?;
            let mut per_class = BTreeMap::new();
            for r in &rows {
                *per_class.entry(r.class).or_insert(0) += 1;
            }
            let pass = rows.len() == 81 && per_class.values().all(|&c| c == 27) && rows.iter().all(|r| r.chordal);
            let mut text = String::from("# quadruple class profile0 profile6 chordal\n");
            for r in &rows {
                text.push_str(&format!(
                    "{} {} {} {} chordal={}\n",
                    r.quadruple,
                    r.class,
                    r.profile.get(&0).copied().unwrap_or(0),
                    r.profile.get(&6).copied().unwrap_or(0),
                    if r.chordal { "yes" } else { "no" }
                ));
            }
            let report = ScanReport {
                claim: "81 replaced-conic sets split 27/27/27 by quadruple sum".into(),
                rows,
                per_class,
                pass,
            };
            Ok(output(&report, text, pass))
        }
        Command::AnalyzeR { quadruple, target } => {
            let e = explorer(&model, &p)?;
            let s = e.twelve_set(*quadruple);
            if quadruple.class() != SetClass::R {
                return Err(Failure::Usage(format!("quadruple {quadruple} has sum {}, expected 2", quadruple.sum())));
            }
            if let Some(t) = target {
                if t.contains(&p) {
                    return Err(Failure::Usage(format!("target {t} contains the base point {p}")));
                }
            }
            let r = e.analyze_r(&s, target.as_ref())?;
            let pass = r.pass;
            let mut text = String::new();
            for h in &r.six_point_primes {
                text.push_str(&format!("prime {h}\n"));
            }
            text.push_str(&format!(
                "six_point_primes={}\ncommon_point={}\n",
                r.six_point_primes.len(),
                r.common_point.as_ref().map_or("none".to_string(), ToString::to_string)
            ));
            let proj = &r.projection;
            text.push_str(&format!("target={}\n", proj.target));
            for (l, pts) in proj.lines.iter().enumerate() {
                text.push_str(&format!("line{l}={}\n", join_points(pts)));
            }
            text.push_str(&format!("transversal={}\n", join_points(&proj.transversal)));
            text.push_str(&format!("image={}\n", join_points(&proj.image_points)));
            text.push_str(&format!(
                "skew={} transversals={} {}\n",
                proj.lines_pairwise_disjoint,
                proj.transversal_count,
                verdict(pass)
            ));
            let report = AnalyzeRReport {
                claim: "sum-2 sets have 42 six-point primes meeting only in P".into(),
                report: r,
                pass,
            };
            Ok(output(&report, text, pass))
        }
        Command::DumpVeronese => {
            let conics: Vec<ConicLine> = model
                .conics()
                .iter()
                .zip(model.osculating_primes())
                .map(|(c, h)| ConicLine { line: c.preimage_line.clone(), points: c.points.clone(), prime: h.clone() })
                .collect();
            let report = DumpReport { conics, pass: true };
            Ok(output(&report, model.dump(), true))
        }
    }
}

fn join_points(pts: &[ProjPoint]) -> String {
    pts.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Runs one subcommand, writing the report to `out` and diagnostics to
/// `err`; returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(config) {
        Ok(o) => {
            let body = match config.format {
                Format::Text => o.text,
                Format::Json => o.json,
            };
            if out.write_all(body.as_bytes()).is_err() {
                return EXIT_FAIL;
            }
            if o.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(e)) => {
            let record = serde_json::json!({ "pass": false, "error": e.to_string() });
            let _ = writeln!(err, "{record}");
            EXIT_FAIL
        }
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            }
        }
    }
}

pub fn main_with_stdio() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
