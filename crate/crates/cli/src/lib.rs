//! The `flatmod` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use flatmod::bieberbach::{holonomy, HolonomyGroup};
use flatmod::catalog::{all_entries, expected_results, export_json, load_group, CatalogEntry};
use flatmod::cone::symmetric_commutant;
use flatmod::congruence::{
    build_domain, domain_json, domain_svg, find_side_pairings, orbifold_invariants, reduce_to_domain, standard_table,
    CongruenceSubgroup, FundamentalDomain,
};
use flatmod::exactmath::Mat;
use flatmod::moduli::{ambient_members, analyze, verify_entry, VerificationReport};
use flatmod::normalizer::{enumerate_members_with_budget, normalizer_membership, DEFAULT_ENUMERATION_BUDGET};
use flatmod::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub entry_bound: i64,
    pub coset_budget: usize,
    pub pairing_word_length: usize,
    pub float_tolerance: f64,
    pub svg_ymax: f64,
    pub output_format: OutputFormat,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            entry_bound: 2,
            coset_budget: 256,
            pairing_word_length: 8,
            float_tolerance: 1e-9,
            svg_ymax: 2.5,
            output_format: OutputFormat::Text,
        }
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.entry_bound <= 0 || self.coset_budget == 0 || self.pairing_word_length == 0 {
            return Err("entry_bound, coset_budget and pairing_word_length must be positive".into());
        }
        if !(self.float_tolerance > 0.0 && self.svg_ymax > 0.0) {
            return Err("float_tolerance and svg_ymax must be positive".into());
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let c: CliConfig = serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))?;
        c.validate()?;
        Ok(c)
    }

    /// The file named by `FLATMOD_CONFIG`, or the defaults.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os("FLATMOD_CONFIG") {
            Some(p) if !p.is_empty() => CliConfig::load(Path::new(&p)),
            _ => Ok(CliConfig::default()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "flatmod", version, about = "Moduli spaces of flat metrics on closed flat 3- and 4-manifolds")]
struct Cli {
    /// Output format; overrides the configured one.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Browse the group catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Check an entry (or `all`) against its published results.
    Verify { name: String },
    /// Symmetric commutant of the holonomy.
    Cone { name: String },
    /// Matrix normalizer: bounded enumeration, or a membership test.
    Normalizer(NormalizerArgs),
    /// Congruence subgroups of SL(2,Z) and GL(2,Z).
    #[command(subcommand)]
    Congruence(CongruenceCmd),
    /// Moduli space description with premise checks.
    Moduli { name: String },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Show {
        name: String,
    },
    /// The whole catalog as JSON.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct NormalizerArgs {
    name: String,
    #[arg(long)]
    bound: Option<i64>,
    /// Matrix as JSON rows, e.g. `[[1,1,0],[0,1,0],[0,0,1]]`.
    #[arg(long)]
    test: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CongruenceCmd {
    Index {
        subgroup: String,
    },
    Domain {
        subgroup: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Moves `x + iy` into the fundamental domain.
    Reduce {
        subgroup: String,
        x: f64,
        y: f64,
    },
}

/// Outcome of a command: text to print and the exit status.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownName(_) | Error::Parse(_) | Error::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Runs the command line `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let mut config = match CliConfig::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(f) = cli.format {
        config.output_format = f;
    }
    match execute(cli.command, &config) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            EXIT_FAILURE
        }
    }
}

fn execute(cmd: Command, config: &CliConfig) -> CmdResult {
    match cmd {
        Command::Catalog(c) => catalog(c, config),
        Command::Verify { name } => verify(&name, config),
        Command::Cone { name } => cone(&name, config),
        Command::Normalizer(a) => normalizer(a, config),
        Command::Congruence(c) => congruence(c, config),
        Command::Moduli { name } => moduli(&name, config),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// `Z_k` for cyclic groups, `Z_2 × ... × Z_2` for elementary abelian 2-groups.
pub fn holonomy_label(h: &HolonomyGroup) -> String {
    let n = h.order();
    if (0..n).any(|i| h.element_order(i) == n) {
        return format!("Z_{n}");
    }
    if (0..n).all(|i| h.element_order(i) <= 2) {
        let rank = n.trailing_zeros() as usize;
        return vec!["Z_2"; rank].join(" × ");
    }
    format!("order {n}")
}

fn catalog(c: CatalogCmd, config: &CliConfig) -> CmdResult {
    match c {
        CatalogCmd::List => {
            let entries = all_entries();
            if config.output_format == OutputFormat::Json {
                let rows: Vec<_> = entries
                    .iter()
                    .map(|g| json!({"name": g.name, "dimension": g.dimension, "holonomy_order": g.holonomy_order, "orientable": g.orientable}))
                    .collect();
                return Ok(Outcome::ok(to_json(&rows)));
            }
            let mut s = String::new();
            for g in &entries {
                let orient = if g.orientable { "orientable" } else { "non-orientable" };
                writeln!(s, "{:<6} dim {}  |H| = {:<2} {orient}", g.name, g.dimension, g.holonomy_order).unwrap();
            }
            Ok(Outcome::ok(s))
        }
        CatalogCmd::Show { name } => {
            let g = load_group(&name)?;
            let h = holonomy(&g)?;
            let label = holonomy_label(&h);
            if config.output_format == OutputFormat::Json {
                return Ok(Outcome::ok(to_json(&json!({"entry": g, "holonomy": label}))));
            }
            Ok(Outcome::ok(show_entry(&g, &label)))
        }
        CatalogCmd::Export { out } => {
            let text = export_json() + "\n";
            match out {
                Some(p) => {
                    write_file(&p, &text)?;
                    Ok(Outcome::ok(format!("wrote {}\n", p.display())))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
    }
}

fn show_entry(g: &CatalogEntry, label: &str) -> String {
    let mut s = String::new();
    writeln!(s, "{} (dimension {}, {})", g.name, g.dimension, if g.orientable { "orientable" } else { "non-orientable" }).unwrap();
    writeln!(s, "holonomy: {label}").unwrap();
    writeln!(s, "generators:").unwrap();
    for f in &g.generators {
        let t: Vec<String> = f.translation.iter().map(ToString::to_string).collect();
        writeln!(s, "  ({}, [{}])", f.linear, t.join(", ")).unwrap();
    }
    writeln!(s, "lattice basis (columns): {}", g.lattice.basis()).unwrap();
    if let Some(rep) = &g.integral_rep {
        writeln!(s, "integral representation via P = {}", rep.conjugator).unwrap();
    }
    s
}

fn verify(name: &str, config: &CliConfig) -> CmdResult {
    let entries = if name.eq_ignore_ascii_case("all") { all_entries() } else { vec![load_group(name)?] };
    let reports: Vec<VerificationReport> = entries.iter().map(verify_entry).collect();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let code = if passed == reports.len() { EXIT_OK } else { EXIT_FAILURE };
    let stdout = if config.output_format == OutputFormat::Json {
        if reports.len() == 1 {
            to_json(&reports[0])
        } else {
            to_json(&reports)
        }
    } else {
        let mut s: String = reports.iter().map(ToString::to_string).collect();
        if reports.len() > 1 {
            writeln!(s, "{passed}/{} entries pass", reports.len()).unwrap();
        }
        s
    };
    Ok(Outcome { stdout, code })
}

fn cone(name: &str, config: &CliConfig) -> CmdResult {
    let g = load_group(name)?;
    let c = symmetric_commutant(&holonomy(&g)?);
    if config.output_format == OutputFormat::Json {
        return Ok(Outcome::ok(to_json(&json!({"entry": g.name, "dimension": c.dimension, "basis": c.basis}))));
    }
    let mut s = format!("{}: symmetric commutant of dimension {}\n", g.name, c.dimension);
    for b in &c.basis {
        writeln!(s, "  {b}").unwrap();
    }
    Ok(Outcome::ok(s))
}

fn normalizer(a: NormalizerArgs, config: &CliConfig) -> CmdResult {
    let g = load_group(&a.name)?;
    let json_out = config.output_format == OutputFormat::Json;
    if let Some(m) = a.test {
        let x: Mat = serde_json::from_str(&m).map_err(|e| Failure::Usage(format!("invalid matrix `{m}`: {e}")))?;
        let v = match normalizer_membership(&x, &g) {
            Ok(v) => v,
            Err(e @ (Error::DoesNotPreserveLattice | Error::CandidateDoesNotNormalize | Error::NotUnimodular(_) | Error::SingularMatrix)) => {
                let stdout = if json_out {
                    to_json(&json!({"entry": g.name, "member": false, "reason": e.to_string()}))
                } else {
                    format!("{}: not a member: {e}\n", g.name)
                };
                return Ok(Outcome { stdout, code: EXIT_FAILURE });
            }
            Err(e) => return Err(e.into()),
        };
        let code = if v.member { EXIT_OK } else { EXIT_FAILURE };
        let stdout = if json_out {
            to_json(&v)
        } else if v.member {
            let w: Vec<String> = v.witness_translation.iter().flatten().map(ToString::to_string).collect();
            format!(
                "{}: member; witness translation [{}]; zero translation {}\n",
                g.name,
                w.join(", "),
                if v.zero_translation_works { "works" } else { "does not work" }
            )
        } else {
            format!("{}: not a member: the translation congruences have no solution\n", g.name)
        };
        return Ok(Outcome { stdout, code });
    }
    let bound = a.bound.unwrap_or(config.entry_bound);
    if bound <= 0 {
        return Err(Failure::Usage("--bound must be positive".into()));
    }
    let members = enumerate_members_with_budget(&g, bound, DEFAULT_ENUMERATION_BUDGET)?;
    let ambient = members
        .iter()
        .map(|m| g.lattice.from_lattice_coords(&m.matrix))
        .collect::<flatmod::Result<Vec<_>>>()?;
    let obstruction = members.iter().zip(&ambient).find(|(m, _)| !m.zero_translation_works).map(|(_, x)| x);
    let semidirect = g.holonomy_generators().is_empty() || obstruction.is_none();
    if json_out {
        return Ok(Outcome::ok(to_json(&json!({
            "entry": g.name,
            "bound": bound,
            "count": members.len(),
            "semidirect": semidirect,
            "obstruction": obstruction,
            "members": ambient,
        }))));
    }
    let mut s = format!("{}: {} members with lattice-coordinate entries in [-{bound}, {bound}]\n", g.name, members.len());
    match obstruction {
        Some(x) => writeln!(s, "not semidirect: {x} needs a nonzero translation").unwrap(),
        None => writeln!(s, "semidirect: every member lifts with zero translation").unwrap(),
    }
    const SHOWN: usize = 20;
    for x in ambient.iter().take(SHOWN) {
        writeln!(s, "  {x}").unwrap();
    }
    if ambient.len() > SHOWN {
        writeln!(s, "  ... {} more (use --format json for all)", ambient.len() - SHOWN).unwrap();
    }
    Ok(Outcome::ok(s))
}

fn subgroup_domain(name: &str, config: &CliConfig) -> Result<FundamentalDomain, Failure> {
    let g = CongruenceSubgroup::named(name)?;
    let table = standard_table(&g, config.coset_budget)?;
    Ok(find_side_pairings(&build_domain(&table), config.pairing_word_length)?)
}

fn congruence(c: CongruenceCmd, config: &CliConfig) -> CmdResult {
    let json_out = config.output_format == OutputFormat::Json;
    match c {
        CongruenceCmd::Index { subgroup } => {
            let g = CongruenceSubgroup::named(&subgroup)?;
            let table = standard_table(&g, config.coset_budget)?;
            let words: Vec<String> = table.representatives.iter().map(ToString::to_string).collect();
            if json_out {
                return Ok(Outcome::ok(to_json(&json!({"subgroup": g.positive().name(), "index": table.index, "representatives": words}))));
            }
            Ok(Outcome::ok(format!("{}: index {} in SL(2,Z); representatives {}\n", g.positive().name(), table.index, words.join(", "))))
        }
        CongruenceCmd::Domain { subgroup, svg, json } => {
            let d = subgroup_domain(&subgroup, config)?;
            let inv = orbifold_invariants(&d)?;
            let svg_text = domain_svg(&d, config.svg_ymax);
            let json_text = domain_json(&d) + "\n";
            if let Some(p) = &svg {
                write_file(p, &svg_text)?;
            }
            if let Some(p) = &json {
                write_file(p, &json_text)?;
            }
            let stdout = match config.output_format {
                OutputFormat::Json => json_text,
                OutputFormat::Svg => svg_text,
                OutputFormat::Text => {
                    let mut s = format!("{}: {} cells\n", d.subgroup.name(), d.cells.len());
                    for p in &d.pairings {
                        writeln!(s, "  pairing {} : edge {} -> edge {}  {:?}", p.word, p.source, p.target, p.matrix).unwrap();
                    }
                    writeln!(
                        s,
                        "quotient: genus {}, {} cusps, cone orders {:?}, {}",
                        inv.genus, inv.cusps, inv.cone_points, inv.classification
                    )
                    .unwrap();
                    s
                }
            };
            Ok(Outcome::ok(stdout))
        }
        CongruenceCmd::Reduce { subgroup, x, y } => {
            if y <= 0.0 {
                return Err(Failure::Usage("the point must lie in the upper half plane (y > 0)".into()));
            }
            let d = subgroup_domain(&subgroup, config)?;
            let r = reduce_to_domain(num_complex::Complex64::new(x, y), &d, config.float_tolerance)?;
            if json_out {
                return Ok(Outcome::ok(to_json(&r)));
            }
            Ok(Outcome::ok(format!(
                "gamma = {:?}; image {} + {}i in cell {}{}\n",
                r.gamma,
                r.point.0,
                r.point.1,
                r.cell,
                if r.ambiguous { " (on a cell boundary)" } else { "" }
            )))
        }
    }
}

fn moduli(name: &str, config: &CliConfig) -> CmdResult {
    let g = load_group(name)?;
    let expected = expected_results(&g.name)?;
    let members = ambient_members(&g, config.entry_bound)?;
    let mats: Option<Vec<Mat>> = members.map(|ms| ms.into_iter().map(|m| m.matrix).collect());
    let a = analyze(&g, &expected, mats.as_deref())?;
    let holds = a.premises.iter().all(|p| p.holds);
    let code = if holds { EXIT_OK } else { EXIT_FAILURE };
    if config.output_format == OutputFormat::Json {
        return Ok(Outcome { stdout: to_json(&a), code });
    }
    let mut s = String::new();
    if holds {
        writeln!(s, "{}: {}", g.name, a.expression).unwrap();
    } else {
        writeln!(s, "{}: premises fail; unfactored: O({n})\\C/N", g.name, n = g.dimension).unwrap();
    }
    writeln!(s, "teichmuller dimension {}", a.expression.teichmuller_dim).unwrap();
    if let Some(t) = &a.expression.topology {
        writeln!(s, "topology: {}", t.tag()).unwrap();
    }
    for p in &a.premises {
        writeln!(s, "  [{}] {}: {}", if p.holds { "pass" } else { "FAIL" }, p.id, p.detail).unwrap();
    }
    Ok(Outcome { stdout: s, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        CliConfig::default().validate().unwrap();
    }

    #[test]
    fn partial_config_keeps_defaults() {
        let c: CliConfig = serde_json::from_str(r#"{"entry_bound": 3}"#).unwrap();
        assert_eq!(c.entry_bound, 3);
        assert_eq!(c.coset_budget, CliConfig::default().coset_budget);
    }

    #[test]
    fn nonpositive_tolerance_is_rejected() {
        let c = CliConfig { float_tolerance: 0.0, ..CliConfig::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn holonomy_labels() {
        let label = |n: &str| holonomy_label(&holonomy(&load_group(n).unwrap()).unwrap());
        assert_eq!(label("G1"), "Z_1");
        assert_eq!(label("G4"), "Z_4");
        assert_eq!(label("G6"), "Z_2 × Z_2");
    }

    #[test]
    fn help_exits_zero_and_bad_flags_exit_two() {
        assert_eq!(run(["flatmod", "--help"]), EXIT_OK);
        assert_eq!(run(["flatmod", "catalog", "--nope"]), EXIT_USAGE);
    }
}
