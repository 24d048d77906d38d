//! Transcribed exception tables for the middle denominator products, and the
//! comparison against enumerated values.
//!
//! A row reads `r | product | condition` (periodic) or `(r,s) | product | condition`.
//! The condition is a conjunction of clauses joined by `&`:
//! - a chain such as `x2=x4=x6!=x3=x5`: equal within `=` runs, adjacent runs differ;
//! - `notall(x3,x5,x7)` or `notall(*)`: the listed entries are not all equal;
//! - `(x5,x7)!=(0,0)` or `(x5,x7)=(0,1)`: tuple comparison with constants.

use olgf_core::img::{closed_form_d_ell, closed_form_d_k, middle_range, Case};
use olgf_core::poly_series::BivariatePoly;

use crate::CliError;

pub const PERIODIC_TABLE: &str = include_str!("../data/periodic_table.txt");
pub const PREPERIODIC_TABLE: &str = include_str!("../data/preperiodic_table.txt");

/// Largest `r` covered by the periodic and pre-periodic tables.
pub const PERIODIC_MAX_R: usize = 10;
pub const PREPERIODIC_MAX_R: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    /// Runs of indices; equal within a run, adjacent runs different.
    Chain(Vec<Vec<usize>>),
    /// `None` stands for every index.
    NotAll(Option<Vec<usize>>),
    Tuple {
        idx: Vec<usize>,
        vals: Vec<u8>,
        equal: bool,
    },
}

impl Clause {
    pub fn holds(&self, x: &[u8]) -> bool {
        let at = |i: usize| x[i - 2];
        match self {
            Clause::Chain(runs) => {
                runs.iter()
                    .all(|run| run.iter().all(|&i| at(i) == at(run[0])))
                    && runs.windows(2).all(|w| at(w[0][0]) != at(w[1][0]))
            }
            Clause::NotAll(None) => x.iter().any(|&v| v != x[0]),
            Clause::NotAll(Some(idx)) => idx.iter().any(|&i| at(i) != at(idx[0])),
            Clause::Tuple { idx, vals, equal } => {
                let same = idx.iter().zip(vals).all(|(&i, &v)| at(i) == v);
                same == *equal
            }
        }
    }

    fn max_index(&self) -> usize {
        match self {
            Clause::Chain(runs) => runs.iter().flatten().copied().max().unwrap_or(0),
            Clause::NotAll(None) => 0,
            Clause::NotAll(Some(idx)) | Clause::Tuple { idx, .. } => {
                idx.iter().copied().max().unwrap_or(0)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub r: usize,
    /// 0 for the periodic table.
    pub s: usize,
    pub product: BivariatePoly,
    pub clauses: Vec<Clause>,
    /// The row as written in the data file.
    pub line: String,
    /// The source line recorded just above the row.
    pub source: String,
}

impl TableRow {
    pub fn holds(&self, x: &[u8]) -> bool {
        self.clauses.iter().all(|c| c.holds(x))
    }
}

#[derive(Clone, Debug)]
pub struct PaperTable {
    pub case: Case,
    pub rows: Vec<TableRow>,
}

fn perr(line_no: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("table line {line_no}: {msg}"))
}

fn parse_index(tok: &str, line_no: usize) -> Result<usize, CliError> {
    let t = tok.trim();
    t.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 2)
        .ok_or_else(|| perr(line_no, format!("expected x<i> with i >= 2, got `{t}`")))
}

fn parse_list(text: &str, line_no: usize) -> Result<Vec<usize>, CliError> {
    text.split(',').map(|t| parse_index(t, line_no)).collect()
}

fn parse_clause(text: &str, line_no: usize) -> Result<Clause, CliError> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("notall(").and_then(|u| u.strip_suffix(')')) {
        if inner.trim() == "*" {
            return Ok(Clause::NotAll(None));
        }
        return Ok(Clause::NotAll(Some(parse_list(inner, line_no)?)));
    }
    if let Some(rest) = t.strip_prefix('(') {
        let (lhs, rest) = rest
            .split_once(')')
            .ok_or_else(|| perr(line_no, "unclosed tuple"))?;
        let (equal, rhs) = if let Some(r) = rest.trim().strip_prefix("!=") {
            (false, r)
        } else if let Some(r) = rest.trim().strip_prefix('=') {
            (true, r)
        } else {
            return Err(perr(line_no, "tuple needs = or !="));
        };
        let rhs = rhs
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| perr(line_no, "tuple constant must be parenthesized"))?;
        let idx = parse_list(lhs, line_no)?;
        let vals = rhs
            .split(',')
            .map(|v| match v.trim() {
                "0" => Ok(0),
                "1" => Ok(1),
                o => Err(perr(line_no, format!("bad constant `{o}`"))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if idx.len() != vals.len() {
            return Err(perr(line_no, "tuple lengths differ"));
        }
        return Ok(Clause::Tuple { idx, vals, equal });
    }
    let mut runs = Vec::new();
    for part in t.split("!=") {
        runs.push(
            part.split('=')
                .map(|tok| parse_index(tok, line_no))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(Clause::Chain(runs))
}

/// `(1-X^aY^b)(1-...)...` or `1`.
pub fn parse_product(text: &str) -> Result<BivariatePoly, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "1" {
        return Ok(BivariatePoly::one());
    }
    let mut p = BivariatePoly::one();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let inner;
        (inner, rest) = rest
            .strip_prefix("(1-")
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| format!("expected a factor (1-X^aY^b) in `{text}`"))?;
        let (a, b) = parse_monomial(inner).ok_or_else(|| format!("bad monomial `{inner}`"))?;
        p = &p * &BivariatePoly::one_minus(1, a, b);
    }
    Ok(p)
}

fn parse_monomial(m: &str) -> Option<(u32, u32)> {
    let mut a = 0;
    let mut b = 0;
    let mut rest = m;
    while let Some(c) = rest.chars().next() {
        rest = &rest[1..];
        let digits: String = if let Some(r) = rest.strip_prefix('^') {
            let d: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
            rest = &r[d.len()..];
            d
        } else {
            "1".into()
        };
        let e: u32 = digits.parse().ok()?;
        match c {
            'X' => a += e,
            'Y' => b += e,
            _ => return None,
        }
    }
    (a + b > 0).then_some((a, b))
}

impl PaperTable {
    pub fn parse(case: Case, text: &str) -> Result<Self, CliError> {
        let mut rows = Vec::new();
        let mut last_comment = String::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                last_comment = c.trim().to_string();
                continue;
            }
            let parts: Vec<&str> = line.split('|').collect();
            if parts.len() != 3 {
                return Err(perr(line_no, "expected `params | product | condition`"));
            }
            let (r, s) = parse_params(case, parts[0].trim())
                .ok_or_else(|| perr(line_no, "bad parameters"))?;
            let product = parse_product(parts[1]).map_err(|m| perr(line_no, m))?;
            let clauses = parts[2]
                .split('&')
                .map(|c| parse_clause(c, line_no))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(c) = clauses.iter().find(|c| c.max_index() > r) {
                return Err(perr(line_no, format!("{c:?} refers past x_{r}")));
            }
            rows.push(TableRow {
                r,
                s,
                product,
                clauses,
                line: line.to_string(),
                source: last_comment.clone(),
            });
        }
        Ok(PaperTable { case, rows })
    }

    pub fn builtin(case: Case) -> Self {
        let text = match case {
            Case::Periodic => PERIODIC_TABLE,
            Case::PrePeriodic => PREPERIODIC_TABLE,
        };
        Self::parse(case, text).expect("embedded table parses")
    }

    pub fn max_r(&self) -> usize {
        match self.case {
            Case::Periodic => PERIODIC_MAX_R,
            Case::PrePeriodic => PREPERIODIC_MAX_R,
        }
    }

    pub fn rows_for(&self, r: usize, s: usize) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(move |row| row.r == r && row.s == s)
    }

    /// The product the table predicts for `x`, with the rows that matched.
    pub fn expected(&self, r: usize, s: usize, x: &[u8]) -> (BivariatePoly, Vec<&TableRow>) {
        if x.iter().all(|&v| v == x.first().copied().unwrap_or(0)) {
            return (closed_form_middle(self.case, r, s), Vec::new());
        }
        let matched: Vec<&TableRow> = self.rows_for(r, s).filter(|row| row.holds(x)).collect();
        let product = match matched.as_slice() {
            [] => BivariatePoly::one(),
            [one] => one.product.clone(),
            // conflicting rows; the caller reports the diff
            _ => BivariatePoly::zero(),
        };
        (product, matched)
    }
}

fn parse_params(case: Case, t: &str) -> Option<(usize, usize)> {
    match case {
        Case::Periodic => Some((t.parse().ok()?, 0)),
        Case::PrePeriodic => {
            let (r, s) = t.strip_prefix('(')?.strip_suffix(')')?.split_once(',')?;
            Some((r.trim().parse().ok()?, s.trim().parse().ok()?))
        }
    }
}

/// Product of the closed-form class denominators over the middle range; this is
/// the value for the constant tuples.
pub fn closed_form_middle(case: Case, r: usize, s: usize) -> BivariatePoly {
    middle_range(case, r, s).fold(BivariatePoly::one(), |p, c| {
        let d = match case {
            Case::Periodic => closed_form_d_k(r, c),
            Case::PrePeriodic => closed_form_d_ell(r, s, c),
        };
        &p * &d
    })
}

/// Text form used in table output: a product of factors `(1 - X^a Y^b)`, the
/// largest dividing factor taken first, or the expanded polynomial.
pub fn product_text(p: &BivariatePoly) -> String {
    if p.is_one() {
        return "1".into();
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    'outer: while !rest.is_one() {
        for b in (1..=rest.degree_y()).rev() {
            for a in (0..=rest.degree_x()).rev() {
                if let Ok(q) = rest.exact_div(&BivariatePoly::one_minus(1, a, b)) {
                    factors.push((b, a));
                    rest = q;
                    continue 'outer;
                }
            }
        }
        return p.to_string();
    }
    factors.sort();
    factors
        .iter()
        .map(|&(b, a)| format!("(1 - {})", mono_text(a, b)))
        .collect()
}

fn mono_text(a: u32, b: u32) -> String {
    let x = match a {
        0 => String::new(),
        1 => "X".into(),
        e => format!("X^{e}"),
    };
    let y = match b {
        0 => String::new(),
        1 => "Y".into(),
        e => format!("Y^{e}"),
    };
    match (x.is_empty(), y.is_empty()) {
        (false, false) => format!("{x}*{y}"),
        (true, _) => y,
        (_, true) => x,
    }
}
