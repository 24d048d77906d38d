//! Argument definitions and the subcommand implementations.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use olgf_core::img::{phi_j, Case, ImgGroupSpec, SubsetJ};
use olgf_core::nonrational::{
    b_orbit_length, check_orbit_lengths, check_power_fixes, check_sections, phi_b_closed,
    psi_b_closed, psi_wrp_closed, psi_wrp_series, WrpSpec,
};
use olgf_core::olgf::{
    classify, descendant_graph, orbit_counts, rational_phi, series_phi, series_psi,
};
use olgf_core::poly_series::BivariatePoly;
use olgf_core::tree_group::{b_system, Engine};
use serde::Serialize;

use crate::input::{load_builtin, load_system_file, Builtin, Loaded};
use crate::render::*;
use crate::sweeps::{self, bits, is_constant, param_pairs, with_threads};
use crate::tables::{product_text, PaperTable};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "olgf",
    version,
    about = "Orbit length generating functions of binary tree automorphisms"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Recursion system file, one rule per line: `name = (left, right) sigma`.
    #[arg(long, conflicts_with = "builtin")]
    pub system: Option<PathBuf>,
    /// Builtin group. Without `--system` or `--builtin` the odometer is used.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    /// `(x_2, ..., x_r)` as a bit string such as `0101`.
    #[arg(long)]
    pub x: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Loaded, CliError> {
        match (&self.system, self.builtin) {
            (Some(p), _) => Ok(Loaded {
                system: load_system_file(p)?,
                img: None,
            }),
            (None, Some(b)) => load_builtin(b, self.r, self.s, self.x.as_deref()),
            (None, None) => load_builtin(Builtin::Odometer, None, None, None),
        }
    }
}

#[derive(Debug, Args)]
pub struct Limits {
    /// Truncation level.
    #[arg(long = "N", default_value_t = 12)]
    pub n: u32,
    /// Largest level for explicit permutations.
    #[arg(long, default_value_t = 20)]
    pub depth_cap: u32,
    /// Largest descendant graph.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit counts of a word as a truncated series.
    Expand {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "")]
        word: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Phi and Psi as rational functions from the descendant graph.
    Rational {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "")]
        word: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// The descendant graph of a word.
    Desc {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "")]
        word: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Phi-irreducible, Phi-finite, or not Phi-finite within the budget.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "")]
        word: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Middle products of the class denominators over tuples x.
    ImgTable {
        #[command(flatten)]
        source: Source,
        /// Print the transcribed exception table.
        #[arg(long)]
        paper_table: bool,
        /// Compare the enumeration with the transcribed table; exit 5 on differences.
        #[arg(long)]
        diff_paper: bool,
    },
    /// Irreducible elements for every admissible J (or one J).
    Irreducibles {
        #[command(flatten)]
        source: Source,
        /// Subset such as `1,3`.
        #[arg(long = "J")]
        j: Option<String>,
    },
    /// Level-n conjugacy of irreducible elements to the split products.
    ConjugacyCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long, default_value_t = 8)]
        level: u32,
    },
    /// Checks for b = (b, b sigma) sigma; CSV output is the orbit-count triangle.
    NonrationalChecks {
        #[arg(long = "N", default_value_t = 14)]
        n: u32,
    },
}

/// Runs one command; returns the exit code. Results go to `out`, diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Expand {
            source,
            word,
            limits,
        } => cmd_expand(out, f, source, word, limits),
        Command::Rational {
            source,
            word,
            limits,
        } => cmd_rational(out, f, source, word, limits),
        Command::Desc {
            source,
            word,
            limits,
        } => cmd_desc(out, f, source, word, limits),
        Command::Classify {
            source,
            word,
            limits,
        } => cmd_classify(out, f, source, word, limits),
        Command::ImgTable {
            source,
            paper_table,
            diff_paper,
        } => pooled(out, cli.threads, |buf| {
            cmd_img_table(buf, f, source, *paper_table, *diff_paper)
        }),
        Command::Irreducibles { source, j } => cmd_irreducibles(out, f, source, j.as_deref()),
        Command::ConjugacyCheck { source, j, level } => pooled(out, cli.threads, |buf| {
            cmd_conjugacy(buf, f, source, j.as_deref(), *level)
        }),
        Command::NonrationalChecks { n } => cmd_nonrational(out, f, *n),
    }
}

/// Runs `f` on the sweep pool, buffering its output.
fn pooled(
    out: &mut dyn Write,
    threads: usize,
    f: impl FnOnce(&mut Vec<u8>) -> Result<(), CliError> + Send,
) -> Result<(), CliError> {
    let mut buf = Vec::new();
    let res = with_threads(threads, || f(&mut buf));
    out.write_all(&buf)?;
    res
}

fn engine<'s>(loaded: &'s Loaded, limits: &Limits) -> Engine<'s> {
    let mut eng = Engine::new(&loaded.system);
    eng.depth_cap = limits.depth_cap;
    eng
}

pub fn cmd_expand(
    out: &mut dyn Write,
    f: Format,
    src: &Source,
    word: &str,
    lim: &Limits,
) -> Result<(), CliError> {
    let loaded = src.load()?;
    let w = loaded.word(word)?;
    let mut eng = engine(&loaded, lim);
    let s = series_phi(&mut eng, &w, lim.n)?;
    let dto = SeriesDto::new(word, &s);
    emit(
        out,
        f,
        &dto,
        || dto.text.clone(),
        || {
            term_rows("phi", &PolyDto::new(s.as_poly()))
                .map(owned)
                .collect()
        },
    )
}

#[derive(Serialize)]
struct OwnedTermRow {
    label: String,
    x: u32,
    y: u32,
    c: String,
}

fn owned(t: TermRow<'_>) -> OwnedTermRow {
    OwnedTermRow {
        label: t.label.into(),
        x: t.x,
        y: t.y,
        c: t.c.into(),
    }
}

pub fn cmd_rational(
    out: &mut dyn Write,
    f: Format,
    src: &Source,
    word: &str,
    lim: &Limits,
) -> Result<(), CliError> {
    let loaded = src.load()?;
    let w = loaded.word(word)?;
    let mut eng = engine(&loaded, lim);
    let res = rational_phi(&mut eng, &w, lim.budget as usize)?;
    let dto = RationalOut::new(&loaded.system, word, &res);
    let text = || {
        let mut t = String::new();
        let _ = writeln!(t, "phi = {}", rational_text(&res.phi));
        let _ = writeln!(t, "psi = {}", rational_text(&res.psi));
        let _ = writeln!(t, "determinant = {}", res.determinant);
        let _ = writeln!(t, "classification = {}", dto.graph.classification);
        let _ = write!(t, "nodes = {}", res.graph.len());
        if res.unreliable {
            t.push_str("\nwarning: some node merges were undecided");
        }
        t
    };
    let rows = || {
        [
            ("phi_num", &dto.phi.num),
            ("phi_den", &dto.phi.den),
            ("psi_num", &dto.psi.num),
            ("psi_den", &dto.psi.den),
            ("determinant", &dto.determinant),
        ]
        .into_iter()
        .flat_map(|(l, p)| term_rows(l, p).map(owned).collect::<Vec<_>>())
        .collect()
    };
    emit(out, f, &dto, text, rows)
}

#[derive(Serialize)]
struct NodeRow {
    index: usize,
    word: String,
    edge: String,
}

fn edge_text(e: &Option<EdgeDto>) -> String {
    match e {
        None => "unexpanded".into(),
        Some(EdgeDto::Pair { left, right }) => format!("({left}, {right})"),
        Some(EdgeDto::Product { child }) => format!("({child}) sigma"),
    }
}

pub fn cmd_desc(
    out: &mut dyn Write,
    f: Format,
    src: &Source,
    word: &str,
    lim: &Limits,
) -> Result<(), CliError> {
    let loaded = src.load()?;
    let w = loaded.word(word)?;
    let mut eng = engine(&loaded, lim);
    let g = descendant_graph(&mut eng, &w, lim.budget as usize);
    let dto = GraphDto::new(&loaded.system, word, &g, classify(&g));
    let text = || {
        let mut t = format!(
            "complete = {}\nclassification = {}\n",
            dto.complete, dto.classification
        );
        for (i, (n, e)) in dto.nodes.iter().zip(&dto.edges).enumerate() {
            let name = if n.is_empty() { "1" } else { n };
            let _ = writeln!(t, "{i}: {name} -> {}", edge_text(e));
        }
        t
    };
    let rows = || {
        dto.nodes
            .iter()
            .zip(&dto.edges)
            .enumerate()
            .map(|(index, (n, e))| NodeRow {
                index,
                word: n.clone(),
                edge: edge_text(e),
            })
            .collect()
    };
    emit(out, f, &dto, text, rows)?;
    if !g.complete {
        return Err(CliError::Budget(format!(
            "descendant graph incomplete after {} nodes",
            g.len()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyRow<'a> {
    word: &'a str,
    classification: &'a str,
    nodes: usize,
}

pub fn cmd_classify(
    out: &mut dyn Write,
    f: Format,
    src: &Source,
    word: &str,
    lim: &Limits,
) -> Result<(), CliError> {
    let loaded = src.load()?;
    let w = loaded.word(word)?;
    let mut eng = engine(&loaded, lim);
    let g = descendant_graph(&mut eng, &w, lim.budget as usize);
    let c = classification_name(classify(&g));
    let row = ClassifyRow {
        word,
        classification: c,
        nodes: g.len(),
    };
    emit(
        out,
        f,
        &CheckDto {
            name: word.into(),
            pass: g.complete,
            detail: c.into(),
        },
        || c.into(),
        || vec![row],
    )
}

fn img_case(src: &Source) -> Result<Case, CliError> {
    match src.builtin {
        Some(Builtin::Periodic) => Ok(Case::Periodic),
        Some(Builtin::PrePeriodic) => Ok(Case::PrePeriodic),
        _ => Err(CliError::Parse(
            "use --builtin periodic or --builtin pre-periodic".into(),
        )),
    }
}

fn case_name(c: Case) -> &'static str {
    match c {
        Case::Periodic => "periodic",
        Case::PrePeriodic => "pre-periodic",
    }
}

fn dx_text(d: &BivariatePoly) -> String {
    let two = BivariatePoly::one_minus(2, 0, 1);
    match d.exact_div(&two) {
        Ok(q) if q.is_one() => "(1 - 2*Y)".into(),
        Ok(q) => format!("(1 - 2*Y){}", product_text(&q)),
        Err(_) => d.to_string(),
    }
}

fn table_row(rep: &olgf_core::img::DenominatorReport) -> TableRowDto {
    TableRowDto {
        case: case_name(rep.case).into(),
        r: rep.r,
        s: rep.s,
        x: bits(&rep.x),
        product: PolyDto::new(&rep.product_middle),
        d_x: PolyDto::new(&rep.d_x),
        classes: rep
            .per_class
            .iter()
            .map(|c| ClassDto {
                index: c.index,
                closed: PolyDto::new(&c.closed),
                enumerated: PolyDto::new(&c.enumerated),
                witnesses: c.witnesses.iter().map(|j| j.to_string()).collect(),
                divides: c.divides,
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct TableCsvRow {
    case: String,
    r: usize,
    s: usize,
    x: String,
    product: String,
    d_x: String,
}

pub fn cmd_img_table(
    out: &mut dyn Write,
    f: Format,
    src: &Source,
    paper: bool,
    diff: bool,
) -> Result<(), CliError> {
    let case = img_case(src)?;
    if paper {
        return print_paper_table(out, f, case, src);
    }
    if diff {
        return diff_paper(out, f, case, src);
    }
    let r = src
        .r
        .ok_or_else(|| CliError::Parse("--r is required".into()))?;
    let s = match case {
        Case::Periodic => 0,
        Case::PrePeriodic => src
            .s
            .ok_or_else(|| CliError::Parse("--s is required".into()))?,
    };
    let tuples = match &src.x {
        Some(x) => vec![crate::input::parse_x(x)?],
        None => sweeps::all_tuples(r),
    };
    let single = src.x.is_some();
    let reports = sweeps::table_sweep(case, r, s, &tuples)?;
    let rows: Vec<TableRowDto> = reports
        .iter()
        .filter(|rep| single || (!is_constant(&rep.x) && !rep.product_middle.is_one()))
        .map(table_row)
        .collect();
    let text = || {
        let mut t = String::new();
        for (row, rep) in rows.iter().zip(
            reports
                .iter()
                .filter(|rep| single || (!is_constant(&rep.x) && !rep.product_middle.is_one())),
        ) {
            let _ = writeln!(
                t,
                "x={}  product={}  D_x={}",
                row.x,
                product_text(&rep.product_middle),
                dx_text(&rep.d_x)
            );
        }
        if rows.is_empty() {
            t.push_str("no tuple with a nontrivial product\n");
        }
        t
    };
    let csv_rows = || {
        rows.iter()
            .map(|row| TableCsvRow {
                case: row.case.clone(),
                r: row.r,
                s: row.s,
                x: row.x.clone(),
                product: row.product.text.clone(),
                d_x: row.d_x.text.clone(),
            })
            .collect()
    };
    emit(out, f, &rows, text, csv_rows)
}

#[derive(Serialize)]
struct PaperRowDto {
    r: usize,
    s: usize,
    product: String,
    condition: String,
    source: String,
}

fn print_paper_table(
    out: &mut dyn Write,
    f: Format,
    case: Case,
    src: &Source,
) -> Result<(), CliError> {
    let table = PaperTable::builtin(case);
    let rows: Vec<PaperRowDto> = table
        .rows
        .iter()
        .filter(|row| src.r.is_none_or(|r| r == row.r) && src.s.is_none_or(|s| s == row.s))
        .map(|row| PaperRowDto {
            r: row.r,
            s: row.s,
            product: product_text(&row.product),
            condition: row.line.rsplit('|').next().unwrap_or("").trim().into(),
            source: row.source.clone(),
        })
        .collect();
    let text = || {
        rows.iter()
            .map(|row| match case {
                Case::Periodic => format!("{}  {}  {}\n", row.r, row.product, row.condition),
                Case::PrePeriodic => format!(
                    "({},{})  {}  {}\n",
                    row.r, row.s, row.product, row.condition
                ),
            })
            .collect()
    };
    let csv = || {
        rows.iter()
            .map(|r| (r.r, r.s, r.product.clone(), r.condition.clone()))
            .collect::<Vec<_>>()
    };
    emit(out, f, &rows, text, csv)
}

fn diff_paper(out: &mut dyn Write, f: Format, case: Case, src: &Source) -> Result<(), CliError> {
    let table = PaperTable::builtin(case);
    let params: Vec<(usize, usize)> = param_pairs(case, 2, table.max_r())
        .into_iter()
        .filter(|&(r, s)| src.r.is_none_or(|x| x == r) && src.s.is_none_or(|x| x == s))
        .collect();
    if params.is_empty() {
        return Err(CliError::Parse(format!(
            "no tabulated parameters match (table covers r <= {})",
            table.max_r()
        )));
    }
    let (checked, diffs) = sweeps::diff_sweep(&table, &params)?;
    let rows: Vec<DiffDto> = diffs
        .iter()
        .map(|d| DiffDto {
            case: case_name(case).into(),
            r: d.r,
            s: d.s,
            x: bits(&d.x),
            expected: PolyDto::new(&d.expected),
            computed: PolyDto::new(&d.computed),
            matched: d.matched.clone(),
        })
        .collect();
    let text = || {
        let mut t = format!("{checked} tuples compared, {} differences\n", rows.len());
        for (d, row) in diffs.iter().zip(&rows) {
            let _ = writeln!(
                t,
                "r={} s={} x={}: table {} ({} matching rows), enumeration {}",
                d.r,
                d.s,
                row.x,
                if d.matched.len() > 1 {
                    "ambiguous".into()
                } else {
                    product_text(&d.expected)
                },
                d.matched.len(),
                product_text(&d.computed)
            );
            for m in &d.matched {
                let _ = writeln!(t, "    matched: {m}");
            }
        }
        t
    };
    let csv = || {
        rows.iter()
            .map(|d| {
                (
                    d.r,
                    d.s,
                    d.x.clone(),
                    d.expected.text.clone(),
                    d.computed.text.clone(),
                    d.matched.join(" ; "),
                )
            })
            .collect::<Vec<_>>()
    };
    emit(out, f, &rows, text, csv)?;
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(CliError::Diff(diffs.len()))
    }
}

fn parse_j(text: &str, r: usize) -> Result<SubsetJ, CliError> {
    let mut j = SubsetJ::empty();
    for t in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let t = t.trim_matches(|c| c == '{' || c == '}');
        if t.is_empty() {
            continue;
        }
        let i: usize = t
            .parse()
            .map_err(|_| CliError::Parse(format!("bad member `{t}` in J")))?;
        if i == 0 || i > r {
            return Err(CliError::Parse(format!("J member {i} outside 1..={r}")));
        }
        j.insert(i);
    }
    Ok(j)
}

fn subsets(spec: &ImgGroupSpec, j: Option<&str>) -> Result<Vec<SubsetJ>, CliError> {
    match j {
        Some(t) => Ok(vec![parse_j(t, spec.r)?]),
        None => Ok(sweeps::admissible_subsets(spec)),
    }
}

pub fn cmd_irreducibles(
    out: &mut dyn Write,
    f: Format,
    src: &Source,
    j: Option<&str>,
) -> Result<(), CliError> {
    let loaded = src.load()?;
    let spec = loaded.img()?;
    let mut rows = Vec::new();
    for jj in subsets(spec, j)? {
        let w = sweeps::irreducible_word(spec, jj)?;
        let mut eng = Engine::new(&spec.system);
        let res = rational_phi(&mut eng, &w, olgf_core::olgf::DEFAULT_NODE_BUDGET)?;
        let expect = phi_j(spec, jj);
        rows.push(IrreducibleDto {
            j: jj.to_string(),
            word: spec.system.display_word(&w),
            phi_j: RationalDto::new(&expect),
            phi_w: RationalDto::new(&res.phi),
            agrees: expect == res.phi,
        });
    }
    let text = || {
        rows.iter()
            .map(|r| {
                let w = if r.word.is_empty() { "1" } else { &r.word };
                format!(
                    "J={}  w={}  phi={}  {}\n",
                    r.j,
                    w,
                    r.phi_w.text,
                    if r.agrees { "ok" } else { "MISMATCH" }
                )
            })
            .collect()
    };
    let csv = || {
        rows.iter()
            .map(|r| (r.j.clone(), r.word.clone(), r.phi_w.text.clone(), r.agrees))
            .collect::<Vec<_>>()
    };
    emit(out, f, &rows, text, csv)?;
    let bad = rows.iter().filter(|r| !r.agrees).count();
    if bad > 0 {
        return Err(CliError::Diff(bad));
    }
    Ok(())
}

pub fn cmd_conjugacy(
    out: &mut dyn Write,
    f: Format,
    src: &Source,
    j: Option<&str>,
    level: u32,
) -> Result<(), CliError> {
    use rayon::prelude::*;
    let loaded = src.load()?;
    let spec = loaded.img()?;
    let js = subsets(spec, j)?;
    let results: Vec<Result<ConjugacyDto, CliError>> = js
        .par_iter()
        .map(|&jj| {
            let conjugate = olgf_core::img::conjugacy_crosscheck(spec, jj, level)?;
            Ok(ConjugacyDto {
                j: jj.to_string(),
                level,
                conjugate,
            })
        })
        .collect();
    let rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let text = || {
        rows.iter()
            .map(|r| {
                format!(
                    "J={}  level {}: {}\n",
                    r.j,
                    r.level,
                    if r.conjugate {
                        "conjugate"
                    } else {
                        "NOT conjugate"
                    }
                )
            })
            .collect()
    };
    emit(out, f, &rows, text, || rows.clone())?;
    let bad = rows.iter().filter(|r| !r.conjugate).count();
    if bad > 0 {
        return Err(CliError::Diff(bad));
    }
    Ok(())
}

#[derive(Serialize, serde::Deserialize, PartialEq, Debug)]
pub struct NonrationalOut {
    pub checks: Vec<CheckDto>,
    pub triangle: Vec<OrbitCountDto>,
}

/// Every check of the `b` machinery; the triangle covers levels `0..=n`.
pub fn nonrational_report(n: u32) -> Result<NonrationalOut, CliError> {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    let b = sys.generator("b").expect("builtin");
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| {
        checks.push(CheckDto {
            name: name.into(),
            pass,
            detail,
        })
    };

    let phi = series_phi(&mut eng, &b, n)?;
    check(
        "phi_b closed form",
        phi == phi_b_closed(n),
        format!("N = {n}"),
    );
    let psi = series_psi(&mut eng, &b, n)?;
    check(
        "psi_b closed form",
        psi == psi_b_closed(n),
        format!("N = {n}"),
    );
    let lv = n.min(12);
    let lengths = (0..=lv)
        .map(|k| check_orbit_lengths(&mut eng, k))
        .collect::<Result<Vec<_>, _>>()?;
    check(
        "orbit length is the least power of 2 above n",
        lengths.iter().all(|&v| v),
        format!(
            "n <= {lv}: lengths {:?}",
            (0..=lv).map(b_orbit_length).collect::<Vec<_>>()
        ),
    );
    let fixes = (0..=3)
        .map(|m| check_power_fixes(&mut eng, m))
        .collect::<Result<Vec<_>, _>>()?;
    check(
        "b^(2^m) fixes level 2^m - 1 and moves all of level 2^m",
        fixes.iter().all(|&v| v),
        "m <= 3".into(),
    );
    let mut sec_ok = true;
    let mut sec_n = 0;
    let mut psi_ok = true;
    let mut psi_n = 0;
    for r in 1..=2 {
        for spec in WrpSpec::all(r) {
            sec_ok &= check_sections(&mut eng, &spec, 10)?.holds();
            sec_n += 1;
            if let Ok(closed) = psi_wrp_closed(&spec, 10) {
                psi_ok &= psi_wrp_series(&mut eng, &spec, 10)? == closed;
                psi_n += 1;
            }
        }
    }
    check(
        "sections of w_{r,P} are (w_{r,Q}, w_{r,R}) sigma^P(1)",
        sec_ok,
        format!("{sec_n} pairs (r, P), depth 10"),
    );
    check(
        "Psi of w_{r,P} is 2^d Y^(d+1) Omega_r",
        psi_ok,
        format!("{psi_n} pairs (r, P), N = 10"),
    );

    let table = orbit_counts(&mut eng, &b, n)?;
    let mut triangle = Vec::new();
    for lvl in 0..=n {
        for m in 0..=lvl {
            let c = table.get(m, lvl);
            if c != 0.into() {
                triangle.push(OrbitCountDto {
                    m,
                    n: lvl,
                    count: c.to_string(),
                });
            }
        }
    }
    Ok(NonrationalOut { checks, triangle })
}

pub fn cmd_nonrational(out: &mut dyn Write, f: Format, n: u32) -> Result<(), CliError> {
    let rep = nonrational_report(n)?;
    let text = || {
        rep.checks
            .iter()
            .map(|c| {
                format!(
                    "{}: {} ({})\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect()
    };
    emit(out, f, &rep, text, || rep.triangle.clone())?;
    let bad = rep.checks.iter().filter(|c| !c.pass).count();
    if bad > 0 {
        return Err(CliError::Diff(bad));
    }
    Ok(())
}
