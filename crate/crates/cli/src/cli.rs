//! Command-line interface.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _};
use clap::{Parser, Subcommand, ValueEnum};
use nilvar_core::bstable::{fuzz, Borel, BStableSet, S2Reading, SetId};
use nilvar_core::degeneration::verify_degeneration;
use nilvar_core::extensions::{central_extension, perp_center_condition};
use nilvar_core::format::render_algebra;
use nilvar_core::invariants::profile;
use nilvar_core::obstructions::{obstruction_matrix, open_dominators, profile_violations, undominated};
use nilvar_core::catalog::TABLE_ORDER;
use nilvar_core::poset::DegenerationGraph;
use nilvar_core::LieAlgebra;

use crate::checks::{self, Context};
use crate::data::{self, DataPaths};
use crate::report::{csv_field, Format, ProfileRow, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Literal,
    Corrected,
}

impl From<ReadingArg> for S2Reading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::Literal => S2Reading::Literal,
            ReadingArg::Corrected => S2Reading::Corrected,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BorelArg {
    Upper,
    Lower,
    Diagonal,
}

impl From<BorelArg> for Borel {
    fn from(b: BorelArg) -> Self {
        match b {
            BorelArg::Upper => Borel::Upper,
            BorelArg::Lower => Borel::Lower,
            BorelArg::Diagonal => Borel::Diagonal,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nilvar", version, about = "Invariants and degenerations of 8-dimensional 2-step nilpotent Lie algebras")]
pub struct Cli {
    /// Root of the data directory; the options below override single parts.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Directory of `*.alg` catalog files.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Directory of `*.wit` degeneration witnesses.
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    /// File of cited non-degenerations.
    #[arg(long, global = true)]
    pub external: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = checks::DEFAULT_SEED)]
    pub seed: u64,
    /// Which reading of the second B-stable set to use.
    #[arg(long = "s2-reading", global = true, value_enum, default_value = "literal")]
    pub s2_reading: ReadingArg,
    /// Triangular matrices drawn by the stability test.
    #[arg(long, global = true, value_enum, default_value = "upper")]
    pub borel: BorelArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the catalog with orbit dimensions.
    Catalog,
    /// Invariant profiles of the named algebras, or of the whole catalog.
    Profile { names: Vec<String> },
    /// Verify degeneration witness files.
    CheckWitness {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// How many limit brackets to print for a failing witness.
        #[arg(long, default_value_t = 8)]
        emit_limit: usize,
    },
    /// Computed obstructions for one pair or for all pairs.
    Obstructions {
        #[arg(long, num_args = 2, value_names = ["SOURCE", "TARGET"], conflicts_with = "matrix")]
        pair: Option<Vec<String>>,
        #[arg(long)]
        matrix: bool,
    },
    /// Entries no larger orbit can reach, with the dominators left open.
    Rigidity,
    /// Membership in a B-stable set and seeded stability fuzzing.
    Bstable {
        /// S1, S2, S3 or S4.
        set: String,
        algebra: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Central extension of an algebra by a cocycle file.
    Extend {
        /// Base algebra; defaults to the `base` line of the cocycle file.
        #[arg(long)]
        base: Option<String>,
        cocycle: PathBuf,
        #[arg(long)]
        check_perp: bool,
    },
    /// Hasse diagram of the verified witnesses.
    Hasse {
        /// Write Graphviz output to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Maximal elements of the verified order, next to the computed rigid set.
    Components,
    /// Run every regression check.
    VerifyAll,
}

/// Output text and whether the command succeeded.
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, success: true }
    }
}

impl Cli {
    pub fn paths(&self) -> DataPaths {
        let mut p = self.data.as_deref().map(DataPaths::under).unwrap_or_default();
        if let Some(c) = &self.catalog {
            p.catalog = c.clone();
        }
        if let Some(c) = &self.corpus {
            p.corpus = c.clone();
        }
        if let Some(e) = &self.external {
            p.external = e.clone();
        }
        p
    }

    pub fn run(&self) -> anyhow::Result<Outcome> {
        let ctx = Context::load(self.paths(), self.seed)?;
        match &self.command {
            Command::Catalog => Ok(Outcome::ok(self.catalog_listing(&ctx))),
            Command::Profile { names } => self.profiles(&ctx, names).map(Outcome::ok),
            Command::CheckWitness { files, emit_limit } => self.check_witness(&ctx, files, *emit_limit),
            Command::Obstructions { pair, matrix } => self.obstructions(&ctx, pair.as_deref(), *matrix),
            Command::Rigidity => self.rigidity(&ctx).map(Outcome::ok),
            Command::Bstable { set, algebra, trials } => self.bstable(&ctx, set, algebra, *trials),
            Command::Extend { base, cocycle, check_perp } => self.extend(&ctx, base.as_deref(), cocycle, *check_perp),
            Command::Hasse { dot } => self.hasse(&ctx, dot.as_deref()),
            Command::Components => self.components(&ctx),
            Command::VerifyAll => {
                let report = Report { seed: self.seed, checks: checks::acceptance(&ctx)? };
                Ok(Outcome { text: report.render(self.format), success: report.passed() })
            }
        }
    }

    fn catalog_listing(&self, ctx: &Context) -> String {
        let rows: Vec<(String, usize, String)> =
            ctx.catalog.entries().map(|e| (e.name().to_string(), e.orbit_dim, e.label.clone())).collect();
        match self.format {
            Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
            Format::Csv => {
                let mut out = String::from("name,orbit,label\n");
                for (n, o, l) in rows {
                    writeln!(out, "{},{o},{}", csv_field(&n), csv_field(&l)).unwrap();
                }
                out
            }
            _ => rows.iter().map(|(n, o, l)| format!("{n:<12} {o:>2}  {l}\n")).collect(),
        }
    }

    fn profile_rows(&self, ctx: &Context, names: &[String]) -> anyhow::Result<Vec<ProfileRow>> {
        if names.is_empty() {
            return Ok(ctx.profiles.iter().map(|(n, p)| ProfileRow::new(n, p)).collect());
        }
        names
            .iter()
            .map(|n| match ctx.profiles.get(n) {
                Some(p) => Ok(ProfileRow::new(n, p)),
                None => Ok(ProfileRow::new(n, &profile(&ctx.algebra(n)?)?)),
            })
            .collect()
    }

    fn profiles(&self, ctx: &Context, names: &[String]) -> anyhow::Result<String> {
        let rows = self.profile_rows(ctx, names)?;
        Ok(match self.format {
            Format::Json => serde_json::to_string_pretty(&rows)?,
            Format::Csv => {
                let mut out = format!("{}\n", ProfileRow::CSV_HEADER);
                for r in &rows {
                    writeln!(out, "{}", r.csv())?;
                }
                out
            }
            _ => rows.iter().map(|r| r.text() + "\n").collect(),
        })
    }

    fn check_witness(&self, ctx: &Context, files: &[PathBuf], emit_limit: usize) -> anyhow::Result<Outcome> {
        let mut out = String::new();
        let mut success = true;
        let mut json = Vec::new();
        for f in files {
            let w = data::load_witness(f)?;
            let r = verify_degeneration(&w, &ctx.catalog, &ctx.profiles).with_context(|| f.display().to_string())?;
            success &= r.passed();
            let verdict = checks::describe_outcome(&r);
            writeln!(out, "{}: {} -> {}: {} {verdict}", f.display(), r.source, r.target, if r.passed() { "PASS" } else { "FAIL" })?;
            for s in &r.sanity {
                writeln!(out, "    inconsistent with computed invariants: {s}")?;
            }
            if !r.passed() {
                if let Some(lim) = r.aligned.as_ref().or(r.limit.as_ref()) {
                    writeln!(out, "    limit brackets:")?;
                    for line in render_algebra(lim, None, None).lines().filter(|l| l.starts_with('[')).take(emit_limit) {
                        writeln!(out, "    {line}")?;
                    }
                }
            }
            json.push(serde_json::json!({
                "file": f.display().to_string(),
                "source": r.source,
                "target": r.target,
                "passed": r.passed(),
                "outcome": verdict,
            }));
        }
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(&json)?,
            _ => out,
        };
        Ok(Outcome { text, success })
    }

    fn obstructions(&self, ctx: &Context, pair: Option<&[String]>, matrix: bool) -> anyhow::Result<Outcome> {
        if let Some([g, h]) = pair {
            let pg = ctx.profiles.get(g).with_context(|| format!("unknown catalog entry `{g}`"))?;
            let ph = ctx.profiles.get(h).with_context(|| format!("unknown catalog entry `{h}`"))?;
            let mut reasons: Vec<String> = profile_violations(pg, ph).iter().map(ToString::to_string).collect();
            reasons.extend(ctx.external.iter().filter(|f| &f.source == g && &f.target == h).map(|f| format!("External: {}", f.citation)));
            let text = match self.format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({"source": g, "target": h, "reasons": reasons}))?,
                _ if reasons.is_empty() => format!("{g} -> {h}: no obstruction\n"),
                _ => reasons.iter().map(|r| format!("{g} -/-> {h}: {r}\n")).collect(),
            };
            return Ok(Outcome::ok(text));
        }
        if !matrix {
            bail!("give --pair SOURCE TARGET or --matrix");
        }
        let m = obstruction_matrix(&ctx.profiles).with_external(&ctx.external);
        let text = match self.format {
            Format::Json => {
                let cells: BTreeMap<String, String> = m.cells.iter().map(|((g, h), r)| (format!("{g} -> {h}"), r.to_string())).collect();
                serde_json::to_string_pretty(&cells)?
            }
            Format::Csv => {
                let mut out = String::from("source,target,code,reason\n");
                for ((g, h), r) in &m.cells {
                    writeln!(out, "{},{},{},{}", csv_field(g), csv_field(h), r.kind.code(), csv_field(&r.to_string()))?;
                }
                out
            }
            _ => {
                let w = m.names.iter().map(String::len).max().unwrap_or(0);
                let mut out = format!("{:w$} ", "");
                for h in &m.names {
                    write!(out, "{:>4}", &h[..h.len().min(4)])?;
                }
                out.push('\n');
                for g in &m.names {
                    write!(out, "{g:w$} ")?;
                    for h in &m.names {
                        let cell = if g == h { "=".into() } else { m.get(g, h).map_or("?".into(), |r| r.kind.code()) };
                        write!(out, "{cell:>4}")?;
                    }
                    out.push('\n');
                }
                out
            }
        };
        Ok(Outcome::ok(text))
    }

    fn rigidity(&self, ctx: &Context) -> anyhow::Result<String> {
        let computed = undominated(&ctx.profiles, &[]);
        let cited = undominated(&ctx.profiles, &ctx.external);
        let mut open = BTreeMap::new();
        for h in ctx.profiles.keys() {
            if !cited.contains(h) {
                open.insert(h.clone(), open_dominators(&ctx.profiles, &ctx.external, h)?);
            }
        }
        Ok(match self.format {
            Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                "undominated": table_order(&computed),
                "undominated_with_external": table_order(&cited),
                "open_dominators": open,
            }))?,
            _ => {
                let mut out = format!("components: {}\n", table_order(&computed).join(", "));
                writeln!(out, "with external facts: {}", table_order(&cited).join(", "))?;
                for (h, gs) in &open {
                    writeln!(out, "{h:<12} open dominators: {}", gs.join(", "))?;
                }
                out
            }
        })
    }

    fn bstable(&self, ctx: &Context, set: &str, algebra: &str, trials: usize) -> anyhow::Result<Outcome> {
        let id = SetId::parse(set).with_context(|| format!("unknown set `{set}`, expected S1 to S4"))?;
        let set = BStableSet::new(id, self.s2_reading.into());
        let a = ctx.algebra(algebra)?;
        let m = set.membership(&a);
        let report = fuzz(&set, &a, trials, self.seed, self.borel.into());
        let mut out = String::new();
        for line in set.describe() {
            writeln!(out, "{line}")?;
        }
        match &m {
            Some(v) => {
                let vals: Vec<String> = set.params.iter().zip(v).map(|(p, x)| format!("{p} = {x}")).collect();
                writeln!(out, "{algebra} is a member: {}", vals.join(", "))?;
            }
            None => writeln!(out, "{algebra} is not a member")?,
        }
        writeln!(
            out,
            "{}/{} {:?} triangular transforms stay inside (seed {:#x})",
            report.trials - report.counterexamples.len(),
            report.trials,
            report.borel,
            report.seed
        )?;
        if let Some(c) = report.counterexamples.first() {
            writeln!(out, "first counterexample: trial {} with seed {:#x}", c.trial, c.trial_seed)?;
            for r in 0..c.matrix.rows() {
                let row: Vec<String> = (0..c.matrix.cols()).map(|k| c.matrix[(r, k)].to_string()).collect();
                writeln!(out, "    [{}]", row.join(", "))?;
            }
        }
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                "set": id.to_string(),
                "algebra": algebra,
                "member": m.is_some(),
                "trials": report.trials,
                "counterexamples": report.counterexamples.iter().map(|c| (c.trial, c.trial_seed)).collect::<Vec<_>>(),
            }))?,
            _ => out,
        };
        Ok(Outcome { text, success: m.is_some() && report.passed() })
    }

    fn extend(&self, ctx: &Context, base: Option<&str>, cocycle: &Path, check_perp: bool) -> anyhow::Result<Outcome> {
        let file = data::load_cocycle(cocycle)?;
        let base_name = base.map(String::from).or(file.base.clone()).context("no base algebra: pass --base or add a `base` line")?;
        let g: LieAlgebra = ctx.algebra(&base_name)?;
        let ext = central_extension(&g, &file.cocycle).with_context(|| cocycle.display().to_string())?;
        let ext = ext.with_name(format!("{base_name}({})", file.name));
        let mut out = render_algebra(&ext, None, None);
        let mut success = true;
        if check_perp {
            let p = perp_center_condition(&g, &file.cocycle)?;
            success = p.holds;
            let basis: Vec<String> = p.intersection.basis().iter().map(|v| vector(v)).collect();
            writeln!(
                out,
                "# perp of the cocycle meets the center in dimension {}{}",
                p.intersection.dim(),
                if basis.is_empty() { String::new() } else { format!(": {}", basis.join(", ")) }
            )?;
        }
        let prof = ProfileRow::new("", &profile(&ext)?);
        let matches: Vec<&String> = ctx.profiles.iter().filter(|(n, p)| ProfileRow::new("", p) == prof && !n.is_empty()).map(|(n, _)| n).collect();
        writeln!(out, "# catalog entries with the same invariant profile: {}", if matches.is_empty() { "none".into() } else { matches.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ") })?;
        Ok(Outcome { text: out, success })
    }

    fn graph(&self, ctx: &Context) -> anyhow::Result<DegenerationGraph> {
        let (g, reports) = checks::corpus_graph(ctx, &ctx.paths.corpus)?;
        for (file, r) in &reports {
            if !r.passed() {
                eprintln!("warning: {file} does not verify: {}", checks::describe_outcome(r));
            }
        }
        Ok(g)
    }

    fn hasse(&self, ctx: &Context, dot: Option<&Path>) -> anyhow::Result<Outcome> {
        let g = self.graph(ctx)?;
        let hasse = g.hasse().map_err(|e| anyhow::anyhow!("{e:?}"))?;
        if let Some(path) = dot {
            std::fs::write(path, dot_graph(&g, &hasse)).with_context(|| path.display().to_string())?;
        }
        let report = g.consistency_check(&obstruction_matrix(&ctx.profiles));
        let text = match self.format {
            Format::Dot => dot_graph(&g, &hasse),
            Format::Json => {
                let edges: Vec<&(String, String)> = hasse.iter().collect();
                let forbidden: Vec<&(String, String)> = g.forbidden().keys().collect();
                serde_json::to_string_pretty(&serde_json::json!({
                    "edges": edges,
                    "forbidden": forbidden,
                    "open": report.open_pairs,
                }))?
            }
            _ => {
                let mut out: String = hasse.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect();
                writeln!(out, "# {} ordered pairs neither verified nor obstructed", report.open_pairs.len())?;
                out
            }
        };
        Ok(Outcome { text, success: report.is_consistent() })
    }

    fn components(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let g = self.graph(ctx)?;
        let maxima = g.maximal_elements();
        let rigid = undominated(&ctx.profiles, &ctx.external);
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(&serde_json::json!({"maximal": maxima, "undominated": rigid}))?,
            _ => format!(
                "maximal in the verified order: {}\nundominated by computed and cited obstructions: {}\n",
                table_order(&maxima).join(", "),
                table_order(&rigid).join(", ")
            ),
        };
        Ok(Outcome::ok(text))
    }
}

/// Names in catalog table order; unknown names go last, sorted.
pub fn table_order(s: &BTreeSet<String>) -> Vec<String> {
    let mut v: Vec<String> = s.iter().cloned().collect();
    v.sort_by_key(|n| TABLE_ORDER.iter().position(|t| t == n).unwrap_or(usize::MAX));
    v
}

/// `v` as a combination of `e1, e2, ...`.
pub fn vector(v: &[nilvar_core::Rational]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !nilvar_core::Zero::is_zero(*c))
        .map(|(k, c)| if *c == nilvar_core::scalar::int(1) { format!("e{}", k + 1) } else { format!("({c})*e{}", k + 1) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Graphviz rendering with one rank per orbit dimension.
pub fn dot_graph(g: &DegenerationGraph, edges: &BTreeSet<(String, String)>) -> String {
    let label = |n: &str| match g.orbit_dim(n) {
        Some(d) => format!("{n} ({d})"),
        None => n.to_string(),
    };
    let mut out = String::from("digraph degenerations {\n    rankdir=TB;\n");
    let mut ranks: BTreeMap<Option<usize>, Vec<&String>> = BTreeMap::new();
    for (n, d) in g.nodes() {
        ranks.entry(*d).or_default().push(n);
        writeln!(out, "    \"{n}\" [label=\"{}\"];", label(n)).unwrap();
    }
    for (d, ns) in ranks.iter().rev() {
        if d.is_some() {
            let list: Vec<String> = ns.iter().map(|n| format!("\"{n}\"")).collect();
            writeln!(out, "    {{ rank=same; {} }}", list.join("; ")).unwrap();
        }
    }
    for (a, b) in edges {
        writeln!(out, "    \"{a}\" -> \"{b}\";").unwrap();
    }
    out.push_str("}\n");
    out
}
