//! `gencover`: build, verify and bound general covering designs from the command line.
//!
//! Exit status is 0 on success, 1 when a design fails verification and 2 for usage and
//! other errors. Failures print one `gencover: <kind>: <message>` line on stderr first.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gencover::bounds::{
    evaluate_bound_with, thm54_constants, thm54_table, BoundFormula, CoverNumbers, FormulaId, NoCovers,
};
use gencover::catalog::{
    catalog_table, import_design, parse_design_file, render_table_text, render_table_tsv,
    write_design_file, Catalog, DesignFile, InsertOutcome, Provenance, SpecPattern,
};
use gencover::constructions::{
    auto_construct_546, auto_splice_coverings, auto_trap_quads_45, auto_trap_quads_46,
    auto_trap_triples, resolve_cover, splice_445, splice_446, splice_general, splice_parts,
    trapping_triples_sqs, Construction, DesignSource, NoDesigns,
};
use gencover::ingredients::{build_ingredient, Ingredient, IngredientKind, IngredientRequest};
use gencover::{verify_general_cover_with, CoverSpec, Design, Error, SpliceVariant, VerifyOptions};

#[derive(Parser)]
#[command(name = "gencover", version, about = "Build, verify and bound general covering designs")]
struct Cli {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Lift the verifier's subset-count ceiling.
    #[arg(long, global = true)]
    force: bool,
    /// Read input design files without re-verifying them.
    #[arg(long, global = true)]
    trust: bool,
    /// Verifier worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Catalog root (default: $GENCOVER_CATALOG).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a construction with automatically resolved ingredients.
    Build {
        construction: BuildKind,
        /// Block size.
        #[arg(long)]
        k: Option<u32>,
        /// Blocks per parallel class.
        #[arg(long)]
        q: Option<u32>,
        /// Point count (part size for trap-triples-sqs).
        #[arg(long)]
        v: Option<u32>,
        /// Subset size.
        #[arg(long)]
        m: Option<u32>,
        /// Use (n,k,4) half covers even when the class size is below 4.
        #[arg(long)]
        unimproved: bool,
        #[arg(short, long)]
        output: PathBuf,
        /// Also store the result in the catalog.
        #[arg(long)]
        save: bool,
    },
    /// Check a design file exhaustively.
    Verify {
        file: PathBuf,
        /// Spec to check against (default: the file's header).
        #[arg(long)]
        spec: Option<CoverSpec>,
        /// Store the design in the catalog when it passes.
        #[arg(long)]
        save: bool,
    },
    /// Evaluate a bound formula, e.g. `bound thm54 --case 3 --k 3`.
    Bound {
        formula: String,
        /// `--name value` pairs; `--cover v,k,t,m[,l]=N` supplies a cover number.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Run an ingredient factory.
    Ingredient {
        kind: IngredientKind,
        params: Vec<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare catalog entries with the applicable bounds.
    Table {
        /// Pattern such as `12,*,*,*,1`.
        #[arg(long)]
        filter: Option<SpecPattern>,
        /// Tab-separated output.
        #[arg(long)]
        tsv: bool,
    },
    /// Splice new points into a base design file.
    Splice {
        variant: SpliceKind,
        #[arg(long)]
        base: PathBuf,
        /// New point count (general).
        #[arg(long)]
        n: Option<u32>,
        /// Auxiliary design file (general); resolved automatically when absent.
        #[arg(long)]
        aux: Option<PathBuf>,
        /// Part sizes (446: six, 445: four).
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<u32>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        save: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    #[value(name = "trap-quads-45")]
    TrapQuads45,
    #[value(name = "trap-quads-46")]
    TrapQuads46,
    TrapTriplesSqs,
    TrapTriples,
    #[value(name = "construct-546")]
    Construct546,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpliceKind {
    General,
    #[value(name = "446")]
    Six,
    #[value(name = "445")]
    Five,
}

enum Failure {
    Usage(String),
    Verification(String),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed { .. } => Failure::Verification(e.to_string()),
            Error::MissingParameter(_) => Failure::Usage(e.to_string()),
            e => Failure::Other(e),
        }
    }
}

type Outcome = Result<(), Failure>;

/// `println!` that stops quietly when stdout is closed.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("gencover: usage: {first}");
            for line in text.lines().skip(1) {
                eprintln!("{line}");
            }
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("gencover: verification-failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("gencover: usage: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("gencover: {}: {e}", error_kind(&e));
            ExitCode::from(2)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse-error",
        Error::Io(_) => "io-error",
        Error::TooLarge { .. } => "too-large",
        Error::BudgetExhausted { .. } => "budget-exhausted",
        Error::UnknownCoverNumber(_) => "unknown-cover-number",
        _ => "invalid",
    }
}

struct Ctx {
    seed: u64,
    trust: bool,
    opts: VerifyOptions,
    catalog: Option<Catalog>,
}

impl Ctx {
    fn source(&self) -> &dyn DesignSource {
        match &self.catalog {
            Some(c) => c,
            None => &NoDesigns,
        }
    }

    fn numbers(&self) -> &dyn CoverNumbers {
        match &self.catalog {
            Some(c) => c,
            None => &NoCovers,
        }
    }

    fn save(&self, file: &DesignFile) -> Outcome {
        let Some(c) = &self.catalog else {
            return Err(Failure::Usage("--save needs --catalog or $GENCOVER_CATALOG".into()));
        };
        match c.insert(file)? {
            InsertOutcome::Inserted => out!("catalog: inserted {}", file.spec),
            InsertOutcome::Replaced(old) => out!("catalog: replaced {old}-block entry for {}", file.spec),
            InsertOutcome::Kept(old) => out!("catalog: kept existing {old}-block entry for {}", file.spec),
        }
        Ok(())
    }

    fn read(&self, path: &Path) -> Result<DesignFile, Failure> {
        Ok(import_design(path, self.trust, &self.opts)?)
    }
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        seed: cli.seed,
        trust: cli.trust,
        opts: VerifyOptions {
            threads: cli.threads,
            force: cli.force,
        },
        catalog: Catalog::locate(cli.catalog.as_deref())?,
    };
    match cli.cmd {
        Command::Build {
            construction,
            k,
            q,
            v,
            m,
            unimproved,
            output,
            save,
        } => {
            let need = |x: Option<u32>, flag: &str| {
                x.ok_or_else(|| Failure::Usage(format!("build {} needs --{flag}", name_of(construction))))
            };
            let (c, report) = match construction {
                BuildKind::TrapQuads45 => auto_trap_quads_45(need(k, "k")?, ctx.source(), ctx.seed, &ctx.opts)?,
                BuildKind::TrapQuads46 => auto_trap_quads_46(
                    need(k, "k")?,
                    need(q, "q")?,
                    unimproved,
                    ctx.source(),
                    ctx.seed,
                    &ctx.opts,
                )?,
                BuildKind::TrapTriplesSqs => {
                    let c = trapping_triples_sqs(need(v, "v")?, need(m, "m")?, &ctx.opts)?;
                    (c, vec!["quad families: 2-partitioned Boolean SQS".to_string()])
                }
                BuildKind::TrapTriples => auto_trap_triples(need(v, "v")?, need(m, "m")?, ctx.seed, &ctx.opts)?,
                BuildKind::Construct546 => auto_construct_546(need(v, "v")?, ctx.source(), ctx.seed, &ctx.opts)?,
            };
            emit(&ctx, c, &report, &output, save)
        }
        Command::Verify { file, spec, save } => {
            let text = fs::read_to_string(&file).map_err(Error::from)?;
            let f = parse_design_file(&text)?;
            let spec = spec.unwrap_or(f.spec);
            if f.design.v() != spec.v || f.design.k() != spec.k {
                return Err(Failure::Usage(format!(
                    "{} holds v = {}, k = {}; cannot check against {spec}",
                    file.display(),
                    f.design.v(),
                    f.design.k()
                )));
            }
            let verdict = verify_general_cover_with(&f.design, &spec, &ctx.opts)?;
            if !verdict.is_pass() {
                out!("fail {spec} {} blocks {verdict}", f.design.len());
                return Err(Failure::Verification(format!("{} {spec} {verdict}", file.display())));
            }
            out!("pass {spec} {} blocks", f.design.len());
            if save {
                let provenance = f.provenance.clone();
                ctx.save(&DesignFile::verified(f.design, spec, provenance, &ctx.opts)?)?;
            }
            Ok(())
        }
        Command::Bound { formula, args } => bound(&ctx, &formula, &args),
        Command::Ingredient { kind, params, output } => {
            let mut req = IngredientRequest::new(kind, params.clone());
            req.seed = Some(ctx.seed);
            let ing = build_ingredient(&req)?;
            let label = format!(
                "{kind}({})",
                params.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            );
            let text = render_ingredient(&ing, kind, &params, &label, &ctx.opts)?;
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(Error::from)?;
                    out!("wrote {} ({label}, size {})", path.display(), ing.size());
                }
                None => out!("{}", text.trim_end()),
            }
            Ok(())
        }
        Command::Table { filter, tsv } => {
            let Some(c) = &ctx.catalog else {
                return Err(Failure::Usage("table needs --catalog or $GENCOVER_CATALOG".into()));
            };
            let rows = catalog_table(&c.entries()?, filter.as_ref(), c);
            let text = if tsv { render_table_tsv(&rows) } else { render_table_text(&rows) };
            out!("{}", text.trim_end());
            Ok(())
        }
        Command::Splice {
            variant,
            base,
            n,
            aux,
            sizes,
            output,
            save,
        } => {
            let b = ctx.read(&base)?;
            let (c, report) = match variant {
                SpliceKind::General => {
                    let n = n.ok_or_else(|| Failure::Usage("splice general needs --n".into()))?;
                    let s = b.spec;
                    if s.t <= 2 || n == 0 || n + s.t > s.k + 1 {
                        return Err(Failure::Other(Error::InvalidParameter(format!(
                            "need t > 2 and 1 <= n <= k - t + 1 for base {s}"
                        ))));
                    }
                    let aux_spec = CoverSpec::new(s.v - 1, s.k - n - 1, s.t - 2, s.m - 2, s.lambda)?;
                    let (aux, path) = match aux {
                        Some(p) => (ctx.read(&p)?.design, format!("{aux_spec}: file {}", p.display())),
                        None => {
                            let r = resolve_cover(&aux_spec, ctx.source(), ctx.seed)?;
                            (r.value, r.path)
                        }
                    };
                    (splice_general(&b.design, &s, &aux, n, None, &ctx.opts)?, vec![path])
                }
                SpliceKind::Six | SpliceKind::Five => {
                    let v = if matches!(variant, SpliceKind::Six) {
                        SpliceVariant::Six
                    } else {
                        SpliceVariant::Five
                    };
                    let parts = splice_parts(&b.design, v, &sizes)?;
                    let cov = auto_splice_coverings(v, b.design.k(), &parts, ctx.source(), ctx.seed)?;
                    let c = match v {
                        SpliceVariant::Six => splice_446(&b.design, &parts, &cov.value, &ctx.opts)?,
                        SpliceVariant::Five => splice_445(&b.design, &parts, &cov.value, &ctx.opts)?,
                    };
                    (c, vec![cov.path])
                }
            };
            emit(&ctx, c, &report, &output, save)
        }
    }
}

fn name_of(k: BuildKind) -> String {
    k.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn emit(ctx: &Ctx, c: Construction, report: &[String], output: &Path, save: bool) -> Outcome {
    for line in report.iter().filter(|l| !l.is_empty()) {
        out!("ingredient {line}");
    }
    out!("provenance {}", c.provenance);
    let file = DesignFile::verified(c.design, c.spec, Provenance::Built(c.provenance), &ctx.opts)?;
    write_design_file(&file, output)?;
    out!("wrote {} {} {} blocks", output.display(), file.spec, file.len());
    if save {
        ctx.save(&file)?;
    }
    Ok(())
}

fn bound(ctx: &Ctx, formula: &str, args: &[String]) -> Outcome {
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let Some(flag) = a.strip_prefix("--") else {
            return Err(Failure::Usage(format!("unexpected argument `{a}`")));
        };
        let (name, value) = match flag.split_once('=') {
            Some((n, v)) if n != "cover" => (n.to_string(), v.to_string()),
            _ => {
                let v = it
                    .next()
                    .ok_or_else(|| Failure::Usage(format!("flag --{flag} needs a value")))?;
                (flag.to_string(), v.clone())
            }
        };
        pairs.push((name.replace('-', "_"), value));
    }
    let is_thm54 = formula.eq_ignore_ascii_case("thm54");
    let case = pairs.iter().position(|(n, _)| n == "case");
    let id = match (is_thm54, case) {
        (true, None) => {
            if !pairs.is_empty() {
                return Err(Failure::Usage("bound thm54 takes --case and --k, or nothing".into()));
            }
            for row in thm54_table() {
                out!("{}\t{}\t{}\t{}\t{}", row.case, row.cover, row.condition, row.value, row.derivation);
            }
            for (what, value) in thm54_constants() {
                out!("uses {what} = {value}");
            }
            return Ok(());
        }
        (true, Some(i)) => {
            let (_, c) = pairs.remove(i);
            let c: u32 = c.parse().map_err(|_| Failure::Usage(format!("bad --case `{c}`")))?;
            FormulaId::thm54(c).map_err(|e| Failure::Usage(e.to_string()))?
        }
        (false, _) => formula.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?,
    };
    let mut f = BoundFormula::new(id);
    for (name, value) in pairs {
        if name == "cover" {
            let (spec, n) = value
                .rsplit_once('=')
                .ok_or_else(|| Failure::Usage(format!("--cover expects SPEC=N, got `{value}`")))?;
            let spec: CoverSpec = spec.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let n = n.parse().map_err(|_| Failure::Usage(format!("bad cover number `{n}`")))?;
            f.covers.insert(spec, n);
        } else {
            let x = value
                .parse()
                .map_err(|_| Failure::Usage(format!("--{name} expects an integer, got `{value}`")))?;
            f.params.insert(name, x);
        }
    }
    let value = evaluate_bound_with(&f, ctx.numbers()).map_err(|e| match e {
        Error::InvalidParameter(m) if m.contains("takes no parameter") => Failure::Usage(m),
        e => e.into(),
    })?;
    out!("{value}");
    Ok(())
}

fn render_ingredient(
    ing: &Ingredient,
    kind: IngredientKind,
    params: &[u32],
    label: &str,
    opts: &VerifyOptions,
) -> Result<String, Failure> {
    let blocks = |bs: &[gencover::Block]| -> String {
        bs.iter()
            .map(|b| b.points().map(|p| p.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" | ")
    };
    Ok(match ing {
        Ingredient::Design(d) => {
            let spec = design_spec(kind, params, d)?;
            let f = DesignFile::verified(d.clone(), spec, Provenance::Ingredient(label.to_string()), opts)?;
            gencover::catalog::render_design_file(&f)
        }
        Ingredient::Classes(r) => {
            let mut out = format!("# ingredient {label}\nclasses {} {} {}\n", r.v(), r.p(), r.q());
            for c in r.classes() {
                out.push_str(&blocks(c));
                out.push('\n');
            }
            out
        }
        Ingredient::Family(f) => {
            let mut out = format!("# ingredient {label}\nfamily {} {}\n", f.v(), f.len());
            for m in f.members() {
                out.push_str(&blocks(m));
                out.push('\n');
            }
            out
        }
        Ingredient::Parts { v, parts } => {
            let mut out = format!("# ingredient {label}\nparts {v} {}\n", parts.len());
            for p in parts {
                out.push_str(&blocks(p));
                out.push('\n');
            }
            out
        }
        Ingredient::Count(n) => format!("{n}\n"),
    })
}

/// The spec a design-valued factory guarantees.
fn design_spec(kind: IngredientKind, params: &[u32], d: &Design) -> Result<CoverSpec, Failure> {
    let (v, k) = (d.v(), d.k());
    Ok(match kind {
        IngredientKind::Sts => CoverSpec::covering(v, 3, 2)?,
        IngredientKind::BooleanSqs => CoverSpec::covering(v, 4, 3)?,
        IngredientKind::PartComplement => CoverSpec::lotto(v, k, 4, 5)?,
        IngredientKind::GreedyCover => {
            CoverSpec::new(params[0], params[1], params[2], params[3], params.get(4).copied().unwrap_or(1))?
        }
        _ => CoverSpec::covering(v, k, k.min(2))?,
    })
}
