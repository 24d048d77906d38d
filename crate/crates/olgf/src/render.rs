//! Serializable views of results, and the text/JSON/CSV writers.

use std::io::Write;

use num_bigint::BigInt;
use olgf_core::olgf::{Classification, DescendantGraph, Edge, OlgfResult};
use olgf_core::poly_series::{BivariatePoly, Monomial, RationalFunction, TruncatedSeries};
use olgf_core::tree_group::RecursionSystem;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// One term `c X^x Y^y`; `c` is a decimal string so big integers survive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub x: u32,
    pub y: u32,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDto {
    pub text: String,
    pub terms: Vec<TermDto>,
}

impl PolyDto {
    pub fn new(p: &BivariatePoly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| TermDto {
                x: m.x,
                y: m.y,
                c: c.to_string(),
            })
            .collect();
        PolyDto {
            text: p.to_string(),
            terms,
        }
    }

    pub fn to_poly(&self) -> Result<BivariatePoly, CliError> {
        let mut p = BivariatePoly::zero();
        for t in &self.terms {
            let c: BigInt =
                t.c.parse()
                    .map_err(|_| CliError::Parse(format!("bad coefficient `{}`", t.c)))?;
            p.add_term(Monomial::new(t.x, t.y), c);
        }
        Ok(p)
    }
}

/// `num / den`, parenthesizing only multi-term parts.
pub fn rational_text(f: &RationalFunction) -> String {
    let wrap = |p: &BivariatePoly| {
        if p.num_terms() > 1 {
            format!("({p})")
        } else {
            p.to_string()
        }
    };
    if f.den().is_one() {
        f.num().to_string()
    } else {
        format!("{} / {}", wrap(f.num()), wrap(f.den()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDto {
    pub text: String,
    pub num: PolyDto,
    pub den: PolyDto,
}

impl RationalDto {
    pub fn new(f: &RationalFunction) -> Self {
        RationalDto {
            text: rational_text(f),
            num: PolyDto::new(f.num()),
            den: PolyDto::new(f.den()),
        }
    }

    pub fn to_rational(&self) -> Result<RationalFunction, CliError> {
        Ok(RationalFunction::new(
            self.num.to_poly()?,
            self.den.to_poly()?,
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDto {
    pub word: String,
    pub n_max: u32,
    pub text: String,
    pub terms: Vec<TermDto>,
}

impl SeriesDto {
    pub fn new(word: &str, s: &TruncatedSeries) -> Self {
        let p = PolyDto::new(s.as_poly());
        SeriesDto {
            word: word.into(),
            n_max: s.n_max(),
            text: p.text,
            terms: p.terms,
        }
    }

    pub fn to_series(&self) -> Result<TruncatedSeries, CliError> {
        let p = PolyDto {
            text: String::new(),
            terms: self.terms.clone(),
        }
        .to_poly()?;
        Ok(TruncatedSeries::from_poly(&p, self.n_max))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeDto {
    Pair { left: usize, right: usize },
    Product { child: usize },
}

impl From<Edge> for EdgeDto {
    fn from(e: Edge) -> Self {
        match e {
            Edge::Pair(left, right) => EdgeDto::Pair { left, right },
            Edge::Product(child) => EdgeDto::Product { child },
        }
    }
}

pub fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::PhiFinite { irreducible: true } => "phi-irreducible",
        Classification::PhiFinite { irreducible: false } => "phi-finite",
        Classification::NotPhiFiniteWithinBudget => "not-phi-finite-within-budget",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDto {
    pub word: String,
    pub complete: bool,
    pub unknown_merges: bool,
    pub classification: String,
    pub nodes: Vec<String>,
    /// `None` for nodes left unexpanded.
    pub edges: Vec<Option<EdgeDto>>,
}

impl GraphDto {
    pub fn new(sys: &RecursionSystem, word: &str, g: &DescendantGraph, c: Classification) -> Self {
        GraphDto {
            word: word.into(),
            complete: g.complete,
            unknown_merges: g.unknown_merges,
            classification: classification_name(c).into(),
            nodes: g.nodes.iter().map(|w| sys.display_word(w)).collect(),
            edges: g.edges.iter().map(|e| e.map(EdgeDto::from)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalOut {
    pub word: String,
    pub phi: RationalDto,
    pub psi: RationalDto,
    pub determinant: PolyDto,
    pub unreliable: bool,
    pub graph: GraphDto,
}

impl RationalOut {
    pub fn new(sys: &RecursionSystem, word: &str, r: &OlgfResult) -> Self {
        RationalOut {
            word: word.into(),
            phi: RationalDto::new(&r.phi),
            psi: RationalDto::new(&r.psi),
            determinant: PolyDto::new(&r.determinant),
            unreliable: r.unreliable,
            graph: GraphDto::new(sys, word, &r.graph, r.classification),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDto {
    pub index: usize,
    pub closed: PolyDto,
    pub enumerated: PolyDto,
    pub witnesses: Vec<String>,
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowDto {
    pub case: String,
    pub r: usize,
    pub s: usize,
    pub x: String,
    pub product: PolyDto,
    pub d_x: PolyDto,
    pub classes: Vec<ClassDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffDto {
    pub case: String,
    pub r: usize,
    pub s: usize,
    pub x: String,
    pub expected: PolyDto,
    pub computed: PolyDto,
    /// Table lines whose condition holds for `x`.
    pub matched: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleDto {
    pub j: String,
    pub word: String,
    pub phi_j: RationalDto,
    pub phi_w: RationalDto,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyDto {
    pub j: String,
    pub level: u32,
    pub conjugate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCountDto {
    pub m: u32,
    pub n: u32,
    pub count: String,
}

/// Writes `value` in the requested format; `text` and `rows` give the other two views.
pub fn emit<T: Serialize, R: Serialize>(
    out: &mut dyn Write,
    format: Format,
    value: &T,
    text: impl FnOnce() -> String,
    rows: impl FnOnce() -> Vec<R>,
) -> Result<(), CliError> {
    match format {
        Format::Text => {
            let t = text();
            out.write_all(t.as_bytes())?;
            if !t.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, value)?;
            out.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows() {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Flat CSV record for a polynomial term.
#[derive(Serialize)]
pub struct TermRow<'a> {
    pub label: &'a str,
    pub x: u32,
    pub y: u32,
    pub c: &'a str,
}

pub fn term_rows<'a>(label: &'a str, p: &'a PolyDto) -> impl Iterator<Item = TermRow<'a>> + 'a {
    p.terms.iter().map(move |t| TermRow {
        label,
        x: t.x,
        y: t.y,
        c: &t.c,
    })
}
