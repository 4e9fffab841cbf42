//! Command-line surface: state-set I/O, pipeline invocation, certificate
//! emission, tiling rendering, and the claims regression table.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decider::{
    bound_check, decide_one_way, find_indistinguishable_subset, min_product_bound,
    op_operator_space, Certificate, DecideConfig, SearchLimits, SidePolicy, VerdictStatus,
};
use crate::numerics::CVector;
use crate::protocol::{protocol_from_basis, simulate};
use crate::states::{
    globally_distinguishable, make_named, make_tiling, random_orthogonal_products,
    state_set_from_json, state_set_to_json, NamedSet, State, StateSet, TilingParams,
};
use crate::{Side, DEFAULT_MAX_SUBSET, DEFAULT_RESTARTS, DEFAULT_SEED, DEFAULT_TOL};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT_ERROR: u8 = 2;
pub const EXIT_INDISTINGUISHABLE: u8 = 3;
pub const EXIT_UNDETERMINED: u8 = 4;

/// One-way LOCC distinguishability toolkit.
#[derive(Debug, Parser)]
#[command(name = "locclab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Alice,
    Bob,
    Both,
}

impl SideArg {
    fn policy(self) -> SidePolicy {
        match self {
            SideArg::Alice => SidePolicy::AliceFirst,
            SideArg::Bob => SidePolicy::BobFirst,
            SideArg::Both => SidePolicy::EitherFirst,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CommonOpts {
    /// Tolerance for "equals zero" decisions.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for the optimizer restarts (LOCCLAB_SEED overrides the default).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of optimizer restarts.
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
}

impl CommonOpts {
    fn resolved_seed(&self) -> u64 {
        self.seed
            .or_else(|| {
                std::env::var("LOCCLAB_SEED")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(DEFAULT_SEED)
    }

    fn decide_config(&self) -> DecideConfig {
        DecideConfig {
            tol: self.tol,
            seed: self.resolved_seed(),
            restarts: self.restarts,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a state set and write it as JSON.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Decide one-way distinguishability of a state-set file.
    Analyze {
        input: PathBuf,
        /// Which side moves first.
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Certificate path (default: `<input stem>.cert.json`).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Draw the tile structure of a product state set as an ASCII grid.
    Render { input: PathBuf },
    /// Re-check every built-in claim and print a pass/fail table.
    Regress {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Counting bound on product members.
    Bound {
        /// State-set file to check (omit to evaluate the bare bound).
        input: Option<PathBuf>,
        #[arg(long, required_unless_present = "input")]
        da: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        db: Option<usize>,
        #[arg(short, required_unless_present = "input")]
        n: Option<usize>,
    },
    /// Find the smallest certified-indistinguishable subset.
    Subset {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Alice)]
        side: SideArg,
        /// Largest subset size to examine.
        #[arg(long, default_value_t = DEFAULT_MAX_SUBSET)]
        max_subset: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// The orthogonal tile family on C^(3lA+1) x C^(3lB+1).
    Tiling {
        #[arg(long)]
        la: usize,
        #[arg(long)]
        lb: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A named reference set.
    Named {
        /// One of: bell3, quad_3x2, groisman_2x2, penta_3x3, hex_3x2.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Flags echoed into every certificate for reproducibility.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub side: Option<String>,
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub max_subset: Option<usize>,
    pub out: Option<String>,
}

#[derive(Serialize)]
struct CertificateEnvelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    set_summary: SetSummary,
    payload: &'a T,
}

#[derive(Serialize)]
struct SetSummary {
    d_a: usize,
    d_b: usize,
    n: usize,
    max_overlap: f64,
}

fn summarize(set: &StateSet, tol: f64) -> SetSummary {
    let g = globally_distinguishable(set, tol);
    SetSummary {
        d_a: set.d_a,
        d_b: set.d_b,
        n: set.len(),
        max_overlap: g.max_overlap,
    }
}

fn write_certificate<T: Serialize>(
    path: &Path,
    config: &RunConfig,
    set: &StateSet,
    payload: &T,
) -> std::io::Result<()> {
    let envelope = CertificateEnvelope {
        tool: "locclab",
        version: env!("CARGO_PKG_VERSION"),
        config,
        set_summary: summarize(set, config.tol),
        payload,
    };
    let text = serde_json::to_string_pretty(&envelope).expect("certificates serialize");
    std::fs::write(path, text + "\n")
}

fn load_set(path: &Path) -> Result<StateSet, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    state_set_from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit_set(set: &StateSet, out: Option<&Path>) -> std::io::Result<()> {
    let text = state_set_to_json(set);
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Run a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Generate { kind } => cmd_generate(kind),
        Command::Analyze {
            input,
            side,
            out,
            common,
        } => cmd_analyze(&input, side, out.as_deref(), &common),
        Command::Render { input } => cmd_render(&input),
        Command::Regress { common } => cmd_regress(&common),
        Command::Bound { input, da, db, n } => cmd_bound(input.as_deref(), da, db, n),
        Command::Subset {
            input,
            side,
            max_subset,
            out,
            common,
        } => cmd_subset(&input, side, max_subset, out.as_deref(), &common),
    }
}

fn cmd_generate(kind: GenerateKind) -> u8 {
    let (set, out) = match kind {
        GenerateKind::Tiling { la, lb, out } => match make_tiling(TilingParams { l_a: la, l_b: lb }) {
            Ok(set) => (set, out),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT_ERROR;
            }
        },
        GenerateKind::Named { name, out } => match name.parse::<NamedSet>() {
            Ok(named) => (make_named(named), out),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT_ERROR;
            }
        },
    };
    let g = globally_distinguishable(&set, DEFAULT_TOL);
    eprintln!(
        "{} states on C^{} x C^{}; max pairwise overlap {:.3e}",
        set.len(),
        set.d_a,
        set.d_b,
        g.max_overlap
    );
    if let Err(e) = emit_set(&set, out.as_deref()) {
        eprintln!("error: {e}");
        return EXIT_INPUT_ERROR;
    }
    EXIT_OK
}

fn cmd_analyze(input: &Path, side: SideArg, out: Option<&Path>, common: &CommonOpts) -> u8 {
    let set = match load_set(input) {
        Ok(set) => set,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let config = common.decide_config();
    let verdict = match decide_one_way(&set, side.policy(), &config) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let run_config = RunConfig {
        command: "analyze".into(),
        input: Some(input.display().to_string()),
        side: Some(format!("{side:?}").to_lowercase()),
        tol: common.tol,
        seed: config.seed,
        restarts: common.restarts,
        max_subset: None,
        out: out.map(|p| p.display().to_string()),
    };
    let cert_path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| input.with_extension("cert.json"));
    if let Err(e) = write_certificate(&cert_path, &run_config, &set, &verdict) {
        eprintln!("error: cannot write certificate: {e}");
        return EXIT_INPUT_ERROR;
    }

    println!("verdict: {:?}", verdict.status);
    for analysis in &verdict.analyses {
        let stage = analysis
            .stage
            .map(|s| format!("{s:?}"))
            .unwrap_or_else(|| "none".into());
        println!(
            "  {} first: {:?} (stage {stage})",
            analysis.side, analysis.status
        );
        if let Certificate::Cover(cert) = &analysis.certificate {
            println!(
                "    {} conflict pairs, {} minimal covers, soundness {:?}",
                cert.conflict_pairs.len(),
                cert.covers.len(),
                cert.soundness
            );
        }
        if let Certificate::OperatorSpace(report) = &analysis.certificate {
            println!(
                "    operator space dimension {}, identity residual {:.3e}",
                report.dimension, report.identity_residual
            );
        }
    }
    for w in &verdict.warnings {
        println!("  warning: {w}");
    }
    println!("certificate: {}", cert_path.display());
    match verdict.status {
        VerdictStatus::Distinguishable => EXIT_OK,
        VerdictStatus::Indistinguishable => EXIT_INDISTINGUISHABLE,
        VerdictStatus::Undetermined => EXIT_UNDETERMINED,
    }
}

fn support_interval(v: &CVector, tol: f64) -> Option<(usize, usize)> {
    let mut lo = None;
    let mut hi = None;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > tol {
            if lo.is_none() {
                lo = Some(i);
            }
            hi = Some(i);
        }
    }
    let (lo, hi) = (lo?, hi?);
    for i in lo..=hi {
        if v[i].norm() <= tol {
            return None; // support has a gap
        }
    }
    Some((lo, hi))
}

#[allow(clippy::needless_range_loop)] // painting grid[row][col] cells by coordinates
fn cmd_render(input: &Path) -> u8 {
    let set = match load_set(input) {
        Ok(set) => set,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    // Group states by their support rectangle.
    use std::collections::BTreeMap;
    let mut tiles: BTreeMap<(usize, usize, usize, usize), Vec<usize>> = BTreeMap::new();
    let mut unrenderable: Vec<usize> = Vec::new();
    for (idx, state) in set.states().iter().enumerate() {
        let rect = match state {
            State::Product(p) => {
                match (support_interval(&p.a, 1e-9), support_interval(&p.b, 1e-9)) {
                    (Some((a0, a1)), Some((b0, b1))) => Some((a0, a1, b0, b1)),
                    _ => None,
                }
            }
            _ => None,
        };
        match rect {
            Some(r) => tiles.entry(r).or_default().push(idx),
            None => unrenderable.push(idx),
        }
    }

    let glyphs: Vec<String> = (0..tiles.len())
        .map(|i| {
            let c = (b'a' + (i % 26) as u8) as char;
            if i < 26 {
                c.to_string()
            } else {
                format!("{c}{}", i / 26)
            }
        })
        .collect();

    let width = 4;
    let mut grid = vec![vec![" ".repeat(width); set.d_a]; set.d_b];
    for (tile_idx, (&(a0, a1, b0, b1), _)) in tiles.iter().enumerate() {
        for col in a0..=a1 {
            for row in b0..=b1 {
                let first = col == a0 && row == b0;
                let last = col == a1 && row == b1;
                let open = if first { "[" } else { " " };
                let close = if last { "]" } else { " " };
                let cell = format!("{open}{:^w$}{close}", glyphs[tile_idx], w = width - 2);
                grid[row][col] = cell;
            }
        }
    }

    println!("grid: {} columns (Alice) x {} rows (Bob)", set.d_a, set.d_b);
    let header: String = (0..set.d_a).map(|c| format!("{c:^w$}", w = width)).collect();
    println!("    {header}");
    for (row_idx, row) in grid.iter().enumerate() {
        let line: String = row.concat();
        println!("{row_idx:>3} {line}");
    }
    for (tile_idx, (&(a0, a1, b0, b1), members)) in tiles.iter().enumerate() {
        let labels: Vec<&str> = members.iter().map(|&i| set.labels()[i].as_str()).collect();
        println!(
            "{}: cols {a0}-{a1}, rows {b0}-{b1}: {}",
            glyphs[tile_idx],
            labels.join(", ")
        );
    }
    for &idx in &unrenderable {
        println!("?: {} (no product-interval support)", set.labels()[idx]);
        eprintln!(
            "warning: state {idx} ({}) has no interval support and is not drawn",
            set.labels()[idx]
        );
    }
    EXIT_OK
}

fn cmd_bound(input: Option<&Path>, da: Option<usize>, db: Option<usize>, n: Option<usize>) -> u8 {
    match input {
        Some(path) => {
            let set = match load_set(path) {
                Ok(set) => set,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INPUT_ERROR;
                }
            };
            let report = bound_check(&set, DEFAULT_TOL);
            println!(
                "n = {}, product members = {}, required minimum = {}, violated = {}",
                report.n, report.product_count, report.bound, report.violated
            );
            EXIT_OK
        }
        None => {
            let (Some(da), Some(db), Some(n)) = (da, db, n) else {
                eprintln!("error: provide an input file or all of --da, --db, -n");
                return EXIT_INPUT_ERROR;
            };
            println!("{}", min_product_bound(da, db, n));
            EXIT_OK
        }
    }
}

fn cmd_subset(
    input: &Path,
    side: SideArg,
    max_subset: usize,
    out: Option<&Path>,
    common: &CommonOpts,
) -> u8 {
    let set = match load_set(input) {
        Ok(set) => set,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let side = match side {
        SideArg::Alice => Side::Alice,
        SideArg::Bob => Side::Bob,
        SideArg::Both => {
            eprintln!("error: subset search runs one side at a time (--side alice|bob)");
            return EXIT_INPUT_ERROR;
        }
    };
    let search = match find_indistinguishable_subset(
        &set,
        side,
        max_subset,
        &SearchLimits::default(),
        common.tol,
        1_000_000,
    ) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let run_config = RunConfig {
        command: "subset".into(),
        input: Some(input.display().to_string()),
        side: Some(side.to_string().to_lowercase()),
        tol: common.tol,
        seed: common.resolved_seed(),
        restarts: common.restarts,
        max_subset: Some(max_subset),
        out: out.map(|p| p.display().to_string()),
    };
    if let Some(path) = out {
        if let Err(e) = write_certificate(path, &run_config, &set, &search) {
            eprintln!("error: cannot write certificate: {e}");
            return EXIT_INPUT_ERROR;
        }
    }
    match &search.found {
        Some(found) => {
            println!(
                "indistinguishable subset ({} first): indices {:?} ({})",
                found.side,
                found.indices,
                found.labels.join(", ")
            );
            EXIT_OK
        }
        None => {
            println!(
                "no certified subset up to size {max_subset} ({} subsets examined, exhausted: {})",
                search.subsets_examined, search.exhausted
            );
            EXIT_UNDETERMINED
        }
    }
}

struct RegressRow {
    name: String,
    expected: String,
    computed: String,
    pass: bool,
    seconds: f64,
    budget: f64,
}

fn row(
    rows: &mut Vec<RegressRow>,
    name: &str,
    expected: &str,
    budget: f64,
    f: impl FnOnce() -> (String, bool),
) {
    let start = Instant::now();
    let (computed, pass) = f();
    let seconds = start.elapsed().as_secs_f64();
    rows.push(RegressRow {
        name: name.to_string(),
        expected: expected.to_string(),
        computed,
        pass: pass && seconds <= budget,
        seconds,
        budget,
    });
}

/// Re-run every built-in claim; returns nonzero when any row fails.
fn cmd_regress(common: &CommonOpts) -> u8 {
    let config = common.decide_config();
    let mut rows: Vec<RegressRow> = Vec::new();

    row(&mut rows, "tiling counts lA<=lB<=4", "closed form", 1.0, || {
        let mut all = true;
        for l_a in 1..=4 {
            for l_b in l_a..=4 {
                let p = TilingParams { l_a, l_b };
                let n = make_tiling(p).map(|s| s.len()).unwrap_or(0);
                all &= n == p.expected_count();
            }
        }
        (if all { "match".into() } else { "mismatch".into() }, all)
    });

    row(&mut rows, "tiling orthogonality l<=3", "< 1e-10", 5.0, || {
        let mut worst = 0.0_f64;
        for l_a in 1..=3 {
            for l_b in l_a..=3 {
                let set = make_tiling(TilingParams { l_a, l_b }).unwrap();
                worst = worst.max(globally_distinguishable(&set, 1e-10).max_overlap);
            }
        }
        (format!("{worst:.3e}"), worst < 1e-10)
    });

    row(
        &mut rows,
        "tiling (1,1),(1,2) one-way verdict",
        "indistinguishable (cover route); operator dims 2,2,2,3",
        30.0,
        || {
            // The pairwise constraint system leaves the diagonal second
            // differences free, so its solution space is never
            // one-dimensional here; indistinguishability is certified by
            // the cover route (no admissible rank-one direction).
            let mut ok = true;
            let mut dims = Vec::new();
            for (l_a, l_b) in [(1, 1), (1, 2)] {
                let set = make_tiling(TilingParams { l_a, l_b }).unwrap();
                let verdict = decide_one_way(&set, SidePolicy::EitherFirst, &config).unwrap();
                ok &= verdict.status == VerdictStatus::Indistinguishable;
                for side in [Side::Alice, Side::Bob] {
                    let report = op_operator_space(&set, side, config.tol).unwrap();
                    // Identity always solves the system; the dimension is
                    // pinned to the independently verified values.
                    ok &= report.identity_projection_residual < 1e-8;
                    dims.push(report.dimension);
                }
            }
            ok &= dims == vec![2, 2, 2, 3];
            (format!("dims {dims:?}"), ok)
        },
    );

    row(
        &mut rows,
        "three Bell states",
        "indistinguishable; optimizer floor > 0.05",
        10.0,
        || {
            let set = make_named(NamedSet::Bell3);
            let verdict = decide_one_way(&set, SidePolicy::EitherFirst, &config).unwrap();
            let mut ok = verdict.status == VerdictStatus::Indistinguishable;
            let grid_floor = bell3_grid_floor(60);
            let opt = crate::decider::optimizer_search(
                &set,
                Side::Alice,
                config.restarts,
                config.seed,
                config.tol,
            )
            .unwrap();
            let best = match opt {
                crate::decider::OptimizerOutcome::Undetermined { best_value } => best_value,
                crate::decider::OptimizerOutcome::Distinguishable { .. } => 0.0,
            };
            ok &= best > 0.05 && grid_floor > 0.05;
            (format!("floor {best:.4} (grid {grid_floor:.4})"), ok)
        },
    );

    row(
        &mut rows,
        "500 random orthogonal triples",
        "100% distinguishable, success 1",
        60.0,
        || {
            let (ok, worst) = random_suite(3, 500, config.seed, &config);
            (format!("min success {worst:.12}"), ok)
        },
    );

    row(
        &mut rows,
        "500 random orthogonal quadruples",
        "100% distinguishable either-first",
        120.0,
        || {
            let (ok, worst) = random_suite(4, 500, config.seed.wrapping_add(1), &config);
            (format!("min success {worst:.12}"), ok)
        },
    );

    row(
        &mut rows,
        "quad_3x2 / groisman_2x2 asymmetry",
        "Alice-first no, Bob-first yes (quad)",
        5.0,
        || {
            let quad = make_named(NamedSet::Quad3x2);
            let alice = decide_one_way(&quad, SidePolicy::AliceFirst, &config).unwrap();
            let bob = decide_one_way(&quad, SidePolicy::BobFirst, &config).unwrap();
            let mut ok = alice.status == VerdictStatus::Indistinguishable
                && bob.status == VerdictStatus::Distinguishable;
            let mut success = 0.0;
            if let Some(protocol) = bob.protocol() {
                success = simulate(protocol, &quad).unwrap().min_success;
                ok &= success > 1.0 - 1e-9;
            }
            if let Certificate::Cover(cert) = &alice.analyses[0].certificate {
                ok &= cert.covers.len() == 4;
            } else {
                ok = false;
            }
            let groisman = make_named(NamedSet::Groisman2x2);
            let ga = decide_one_way(&groisman, SidePolicy::AliceFirst, &config).unwrap();
            ok &= ga.status == VerdictStatus::Indistinguishable;
            (format!("bob success {success:.10}"), ok)
        },
    );

    row(
        &mut rows,
        "five-state pentagon",
        "indistinguishable both sides, covers rank 3",
        5.0,
        || {
            let set = make_named(NamedSet::Penta3x3);
            let verdict = decide_one_way(&set, SidePolicy::EitherFirst, &config).unwrap();
            let mut ok = verdict.status == VerdictStatus::Indistinguishable;
            for analysis in &verdict.analyses {
                if let Certificate::Cover(cert) = &analysis.certificate {
                    ok &= cert.covers.iter().all(|e| e.w_dim == 0);
                } else {
                    ok = false;
                }
            }
            ("all covers span".into(), ok)
        },
    );

    row(
        &mut rows,
        "six-state 3x2 family",
        "indistinguishable both sides",
        5.0,
        || {
            let set = make_named(NamedSet::Hex3x2);
            let verdict = decide_one_way(&set, SidePolicy::EitherFirst, &config).unwrap();
            let ok = verdict.status == VerdictStatus::Indistinguishable
                && verdict
                    .analyses
                    .iter()
                    .all(|a| matches!(a.certificate, Certificate::Cover(_)));
            ("cover route".into(), ok)
        },
    );

    row(
        &mut rows,
        "counting bounds",
        "(2,2,3)->2 (3,3,5)->1 (2,2,4)->4; bell3 violates",
        1.0,
        || {
            let ok = min_product_bound(2, 2, 3) == 2
                && min_product_bound(3, 3, 5) == 1
                && min_product_bound(2, 2, 4) == 4
                && bound_check(&make_named(NamedSet::Bell3), config.tol).violated;
            ("exact".into(), ok)
        },
    );

    row(
        &mut rows,
        "indistinguishable subset of tiling (1,1)",
        "subset of size <= 6",
        60.0,
        || {
            let set = make_tiling(TilingParams { l_a: 1, l_b: 1 }).unwrap();
            let search = find_indistinguishable_subset(
                &set,
                Side::Alice,
                6,
                &config.limits,
                config.tol,
                1_000_000,
            )
            .unwrap();
            match search.found {
                Some(found) => (format!("size {}", found.indices.len()), found.indices.len() <= 6),
                None => ("none".into(), false),
            }
        },
    );

    row(
        &mut rows,
        "rank-one pair test equivalence",
        "1000 random C^3 bases agree",
        10.0,
        || {
            let ok = c3_equivalence_suite(1000, config.seed);
            (if ok { "agree".into() } else { "disagree".into() }, ok)
        },
    );

    // Harness negative control: the fixture knob injects a failing row so
    // tests can confirm that failures surface as FAIL and a nonzero exit.
    if std::env::var_os("LOCCLAB_REGRESS_NEGATIVE_CONTROL").is_some() {
        row(&mut rows, "negative control (fixture)", "pass", 1.0, || {
            ("injected failure".into(), false)
        });
    }

    let mut all_pass = true;
    println!(
        "{:<44} {:<42} {:<28} {:>8}  result",
        "claim", "expected", "computed", "time"
    );
    for r in &rows {
        all_pass &= r.pass;
        println!(
            "{:<44} {:<42} {:<28} {:>7.2}s  {}",
            r.name,
            r.expected,
            r.computed,
            r.seconds,
            if r.pass {
                "PASS"
            } else if r.seconds > r.budget {
                "FAIL (over budget)"
            } else {
                "FAIL"
            }
        );
    }
    println!("{}", if all_pass { "all rows PASS" } else { "FAILURES present" });
    if all_pass {
        EXIT_OK
    } else {
        1
    }
}

/// Dense grid scan of the two-parameter qubit basis family for the three
/// Bell states; the returned minimum is the floor of the residual objective.
pub fn bell3_grid_floor(steps: usize) -> f64 {
    use crate::decider::residual_objective;
    use crate::numerics::{c, cr, CMatrix};
    let set = make_named(NamedSet::Bell3);
    let coeffs = set.coeffs().unwrap();
    let mut floor = f64::INFINITY;
    for i in 0..steps {
        for j in 0..steps {
            let theta = i as f64 * std::f64::consts::TAU / steps as f64;
            let delta = j as f64 * std::f64::consts::TAU / steps as f64;
            let mut u = CMatrix::zeros(2, 2);
            u[(0, 0)] = cr(theta.cos());
            u[(1, 0)] = c(delta.cos(), delta.sin()) * cr(theta.sin());
            u[(0, 1)] = c(-delta.cos(), delta.sin()) * cr(theta.sin());
            u[(1, 1)] = cr(theta.cos());
            floor = floor.min(residual_objective(&coeffs, Side::Alice, &u));
        }
    }
    floor
}

fn random_suite(size: usize, count: usize, seed: u64, config: &DecideConfig) -> (bool, f64) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let dims = [2usize, 3, 4];
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for trial in 0..count {
        let d_a = dims[trial % 3];
        let d_b = dims[(trial / 3) % 3];
        let set = match random_orthogonal_products(d_a, d_b, size, &mut rng) {
            Ok(set) => set,
            Err(_) => {
                ok = false;
                continue;
            }
        };
        let policy = if size == 3 {
            SidePolicy::AliceFirst
        } else {
            SidePolicy::EitherFirst
        };
        match decide_one_way(&set, policy, config) {
            Ok(verdict) if verdict.status == VerdictStatus::Distinguishable => {
                // Executable sufficiency: rebuild the protocol from the bare
                // basis and simulate it.
                let basis = verdict.basis().unwrap();
                match protocol_from_basis(&set, basis, config.tol)
                    .and_then(|p| simulate(&p, &set))
                {
                    Ok(report) => {
                        worst = worst.min(report.min_success);
                        ok &= report.min_success >= 1.0 - 1e-9;
                    }
                    Err(_) => ok = false,
                }
            }
            _ => ok = false,
        }
    }
    (ok, worst)
}

fn c3_equivalence_suite(count: usize, seed: u64) -> bool {
    use crate::decider::{c3_pair_rank1, MeasurementBasis};
    use crate::numerics::{c, cr, gram_schmidt};
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(13));
    let random_ket = |rng: &mut rand_chacha::ChaCha8Rng| {
        CVector::from_iterator(
            3,
            (0..3).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))),
        )
    };
    let mut done = 0usize;
    while done < count {
        let psi_raw = random_ket(&mut rng);
        let psi = &psi_raw / cr(psi_raw.norm());
        let Ok(ortho) = gram_schmidt(&[psi.clone(), random_ket(&mut rng)], 1e-9) else {
            return false;
        };
        if ortho.len() < 2 {
            continue;
        }
        let phi = ortho[1].clone();
        let seeds = if done.is_multiple_of(7) {
            vec![psi.clone(), random_ket(&mut rng), random_ket(&mut rng)]
        } else {
            vec![
                random_ket(&mut rng),
                random_ket(&mut rng),
                random_ket(&mut rng),
            ]
        };
        let Ok(vectors) = gram_schmidt(&seeds, 1e-9) else {
            return false;
        };
        if vectors.len() < 3 {
            continue;
        }
        let Ok(basis) = MeasurementBasis::new(Side::Alice, vectors) else {
            continue;
        };
        // Equivalence is checked inside; an internal error is a failure.
        if c3_pair_rank1(&basis, &psi, &phi, 1e-9).is_err() {
            return false;
        }
        done += 1;
    }
    true
}
