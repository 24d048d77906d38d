use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::portrait::{self, MAX_FIN_DEPTH};
use super::word::{GenId, Letter, Word};
use super::{Engine, Equality, EqualityBudget, TreeError};

/// Right-hand side of `g = (left, right) sigma^flip`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub left: Vec<(GenId, bool)>,
    pub right: Vec<(GenId, bool)>,
    pub flip: bool,
}

/// Wreath recursion `w = (left, right) sigma^flip`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Section {
    pub left: Word,
    pub right: Word,
    pub flip: bool,
}

/// Finite set of named generators with their wreath recursions.
///
/// `sigma` is always generator 0 and denotes the swap of the two subtrees.
#[derive(Clone, Debug)]
pub struct RecursionSystem {
    label: String,
    names: Vec<String>,
    rules: Vec<Rule>,
    index: BTreeMap<String, GenId>,
    fin_depth: u32,
    portraits: Vec<Option<u128>>,
    involution: Vec<bool>,
    gen_sections: Vec<[Section; 2]>,
}

pub const SIGMA: GenId = 0;

/// Incremental construction of a [`RecursionSystem`].
#[derive(Clone, Debug)]
pub struct SystemBuilder {
    label: String,
    names: Vec<String>,
    rules: Vec<Option<Rule>>,
    index: BTreeMap<String, GenId>,
}

impl SystemBuilder {
    pub fn new(label: impl Into<String>) -> Self {
        let mut b = SystemBuilder {
            label: label.into(),
            names: Vec::new(),
            rules: Vec::new(),
            index: BTreeMap::new(),
        };
        let s = b.declare("sigma").expect("fresh builder");
        b.rules[s as usize] = Some(Rule {
            left: vec![],
            right: vec![],
            flip: true,
        });
        b
    }

    pub fn declare(&mut self, name: &str) -> Result<GenId, TreeError> {
        if self.index.contains_key(name) {
            return Err(TreeError::DuplicateGenerator(name.to_string()));
        }
        let id = self.names.len() as GenId;
        self.names.push(name.to_string());
        self.rules.push(None);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn set_rule(&mut self, id: GenId, rule: Rule) {
        self.rules[id as usize] = Some(rule);
    }

    pub fn build(self) -> Result<RecursionSystem, TreeError> {
        let mut rules = Vec::with_capacity(self.rules.len());
        for (i, r) in self.rules.into_iter().enumerate() {
            rules.push(r.ok_or_else(|| TreeError::MissingRule(self.names[i].clone()))?);
        }
        RecursionSystem::assemble(self.label, self.names, rules, self.index)
    }
}

impl RecursionSystem {
    fn assemble(
        label: String,
        names: Vec<String>,
        rules: Vec<Rule>,
        index: BTreeMap<String, GenId>,
    ) -> Result<Self, TreeError> {
        let n = names.len();
        for r in &rules {
            for (g, _) in r.left.iter().chain(r.right.iter()) {
                if *g as usize >= n {
                    return Err(TreeError::UnknownGenerator {
                        name: format!("#{g}"),
                        line: 0,
                        col: 0,
                    });
                }
            }
        }
        // depth of finitary generators by fixpoint iteration
        let mut depth: Vec<Option<u32>> = vec![None; n];
        loop {
            let mut changed = false;
            for g in 0..n {
                if depth[g].is_some() {
                    continue;
                }
                let r = &rules[g];
                let mut sub = 0u32;
                let mut known = true;
                for (h, _) in r.left.iter().chain(r.right.iter()) {
                    match depth[*h as usize] {
                        Some(d) => sub = sub.max(d),
                        None => {
                            known = false;
                            break;
                        }
                    }
                }
                if known {
                    let d = if sub == 0 && !r.flip { 0 } else { sub + 1 };
                    depth[g] = Some(d);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let finitary: Vec<Option<u32>> = depth
            .iter()
            .map(|d| d.filter(|&d| d <= MAX_FIN_DEPTH))
            .collect();
        let fin_depth = finitary.iter().flatten().copied().max().unwrap_or(1).max(1);

        // portraits in order of increasing depth; children of a generator within
        // the cap are themselves within the cap
        let mut portraits: Vec<Option<u128>> = vec![None; n];
        let mut order: Vec<usize> = (0..n).filter(|&g| finitary[g].is_some()).collect();
        order.sort_by_key(|&g| finitary[g]);
        for g in order {
            let r = &rules[g];
            let word_portrait = |side: &[(GenId, bool)], ps: &[Option<u128>]| {
                side.iter().fold(0u128, |acc, (h, inv)| {
                    let p = ps[*h as usize].expect("child portrait computed first");
                    let p = if *inv {
                        portrait::invert(p, fin_depth)
                    } else {
                        p
                    };
                    portrait::compose(acc, p, fin_depth)
                })
            };
            let l = word_portrait(&r.left, &portraits);
            let rr = word_portrait(&r.right, &portraits);
            portraits[g] = Some(portrait::join(r.flip, l, rr, fin_depth));
        }

        let mut sys = RecursionSystem {
            label,
            names,
            rules,
            index,
            fin_depth,
            portraits,
            involution: vec![false; n],
            gen_sections: Vec::new(),
        };
        sys.gen_sections = sys.compute_gen_sections();
        let budget = EqualityBudget {
            max_pairs: 512,
            max_depth: 10,
        };
        let mut flags = vec![false; n];
        {
            let mut eng = Engine::new(&sys);
            eng.budget = budget;
            for (g, flag) in flags.iter_mut().enumerate() {
                if sys.portraits[g].is_some() {
                    continue;
                }
                let w = Word(vec![Letter::gen(g as GenId), Letter::gen(g as GenId)]);
                *flag = eng.elements_equal(&w, &Word::identity()) == Equality::Equal;
            }
        }
        sys.involution = flags;
        sys.gen_sections = sys.compute_gen_sections();
        Ok(sys)
    }

    fn compute_gen_sections(&self) -> Vec<[Section; 2]> {
        let side = |s: &[(GenId, bool)]| {
            self.normalize_letters(s.iter().map(|&(id, inv)| Letter::Gen { id, inv }))
        };
        self.rules
            .iter()
            .map(|r| {
                let fwd = Section {
                    left: side(&r.left),
                    right: side(&r.right),
                    flip: r.flip,
                };
                let (li, ri) = (self.inverse(&fwd.left), self.inverse(&fwd.right));
                let back = if r.flip {
                    Section {
                        left: ri,
                        right: li,
                        flip: true,
                    }
                } else {
                    Section {
                        left: li,
                        right: ri,
                        flip: false,
                    }
                };
                [fwd, back]
            })
            .collect()
    }

    /// Parse the text format: one `name = (word, word) [sigma]` or `name = sigma`
    /// per line, `#` starts a comment, `1` is the empty word, `g^-1` an inverse.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        Self::parse_labeled(text, "")
    }

    pub fn parse_labeled(text: &str, label: &str) -> Result<Self, TreeError> {
        let mut b = SystemBuilder::new(label);
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(syntax(
                    i + 1,
                    first_non_space(line),
                    "expected `name = ...`",
                ));
            };
            let name = line[..eq].trim();
            if !is_ident(name) {
                return Err(syntax(
                    i + 1,
                    first_non_space(line),
                    "invalid generator name",
                ));
            }
            if name == "sigma" {
                return Err(syntax(i + 1, first_non_space(line), "`sigma` is reserved"));
            }
            let id = b.declare(name).map_err(|_| TreeError::Syntax {
                line: i + 1,
                col: first_non_space(line),
                msg: format!("generator `{name}` declared twice"),
            })?;
            lines.push((i + 1, id, line, eq + 1));
        }
        for (lineno, id, line, start) in lines {
            let rule = parse_rhs(&b, line, start, lineno)?;
            b.set_rule(id, rule);
        }
        b.build()
    }

    /// Parse a word such as `b1 b2^-1 sigma`; `1` or an empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, TreeError> {
        let letters = parse_word_tokens(&self.index, text, 1, 1)?;
        Ok(self.normalize_letters(letters.into_iter().map(|(id, inv)| Letter::Gen { id, inv })))
    }

    /// Parse without normalizing.
    pub fn parse_raw_word(&self, text: &str) -> Result<Word, TreeError> {
        let letters = parse_word_tokens(&self.index, text, 1, 1)?;
        Ok(Word(
            letters
                .into_iter()
                .map(|(id, inv)| Letter::Gen { id, inv })
                .collect(),
        ))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn rule(&self, id: GenId) -> &Rule {
        &self.rules[id as usize]
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn generator(&self, name: &str) -> Option<Word> {
        self.id(name)
            .map(|id| self.normalize_letters([Letter::gen(id)]))
    }

    pub fn is_finitary(&self, id: GenId) -> bool {
        self.portraits[id as usize].is_some()
    }

    pub fn is_involution(&self, id: GenId) -> bool {
        self.involution[id as usize]
            || self.portraits[id as usize]
                .is_some_and(|p| portrait::compose(p, p, self.fin_depth) == 0)
    }

    /// Letters that are neither finitary tokens nor finitary generators.
    pub fn long_letters(&self, w: &Word) -> usize {
        w.0.iter()
            .filter(|l| matches!(l, Letter::Gen { id, .. } if !self.is_finitary(*id)))
            .count()
    }

    pub fn fin_depth(&self) -> u32 {
        self.fin_depth
    }

    fn canon(&self, l: Letter) -> Letter {
        match l {
            Letter::Gen { id, inv } => match self.portraits[id as usize] {
                Some(p) => Letter::Fin(if inv {
                    portrait::invert(p, self.fin_depth)
                } else {
                    p
                }),
                None if self.involution[id as usize] => Letter::Gen { id, inv: false },
                None => l,
            },
            f => f,
        }
    }

    /// Append a letter to a normalized word, keeping it normalized.
    pub fn push_letter(&self, out: &mut Vec<Letter>, l: Letter) {
        match self.canon(l) {
            Letter::Fin(0) => {}
            Letter::Fin(p) => {
                if let Some(Letter::Fin(q)) = out.last() {
                    let c = portrait::compose(*q, p, self.fin_depth);
                    out.pop();
                    if c != 0 {
                        out.push(Letter::Fin(c));
                    }
                } else {
                    out.push(Letter::Fin(p));
                }
            }
            Letter::Gen { id, inv } => {
                if let Some(Letter::Gen { id: i2, inv: v2 }) = out.last() {
                    if *i2 == id && (*v2 != inv || self.involution[id as usize]) {
                        out.pop();
                        return;
                    }
                }
                out.push(Letter::Gen { id, inv });
            }
        }
    }

    pub fn normalize_letters(&self, letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out = Vec::new();
        for l in letters {
            self.push_letter(&mut out, l);
        }
        Word(out)
    }

    /// Free reduction, involution cancellation and merging of finitary runs.
    pub fn normalize(&self, w: &Word) -> Word {
        self.normalize_letters(w.0.iter().copied())
    }

    /// Merge maximal runs of finitary letters into single tokens and leave the
    /// other letters untouched.
    pub fn delta_compress(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        let mut acc: Option<u128> = None;
        for &l in &w.0 {
            match self.canon(l) {
                Letter::Fin(p) => {
                    acc = Some(portrait::compose(acc.unwrap_or(0), p, self.fin_depth));
                }
                _ => {
                    if let Some(p) = acc.take() {
                        if p != 0 {
                            out.push(Letter::Fin(p));
                        }
                    }
                    out.push(l);
                }
            }
        }
        if let Some(p) = acc {
            if p != 0 {
                out.push(Letter::Fin(p));
            }
        }
        Word(out)
    }

    pub fn product(&self, a: &Word, b: &Word) -> Word {
        let mut out = a.0.clone();
        for &l in &b.0 {
            self.push_letter(&mut out, l);
        }
        Word(out)
    }

    pub fn power(&self, w: &Word, k: u32) -> Word {
        let mut out = Vec::new();
        for _ in 0..k {
            for &l in &w.0 {
                self.push_letter(&mut out, l);
            }
        }
        Word(out)
    }

    fn invert_letter(&self, l: Letter) -> Letter {
        match l {
            Letter::Fin(p) => Letter::Fin(portrait::invert(p, self.fin_depth)),
            Letter::Gen { id, inv } => {
                if self.involution[id as usize] {
                    Letter::Gen { id, inv: false }
                } else {
                    Letter::Gen { id, inv: !inv }
                }
            }
        }
    }

    pub fn inverse(&self, w: &Word) -> Word {
        self.normalize_letters(w.0.iter().rev().map(|&l| self.invert_letter(l)))
    }

    /// Section of a single letter.
    pub fn letter_section(&self, l: Letter) -> Section {
        match self.canon(l) {
            Letter::Fin(p) => {
                let (f, a, b) = portrait::split(p, self.fin_depth);
                let tok = |q: u128| {
                    if q == 0 {
                        Word::identity()
                    } else {
                        Word(vec![Letter::Fin(q)])
                    }
                };
                Section {
                    left: tok(a),
                    right: tok(b),
                    flip: f,
                }
            }
            Letter::Gen { id, inv } => self.gen_sections[id as usize][inv as usize].clone(),
        }
    }

    /// `w = (left, right) sigma^flip` with both sides normalized.
    pub fn section_of(&self, w: &Word) -> Section {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut flip = false;
        for &l in &w.0 {
            let (sl, sr, sf);
            let owned;
            match self.canon(l) {
                Letter::Gen { id, inv } => {
                    let s = &self.gen_sections[id as usize][inv as usize];
                    sl = &s.left;
                    sr = &s.right;
                    sf = s.flip;
                }
                f => {
                    owned = self.letter_section(f);
                    sl = &owned.left;
                    sr = &owned.right;
                    sf = owned.flip;
                }
            }
            let (a, b) = if flip { (sr, sl) } else { (sl, sr) };
            for &x in &a.0 {
                self.push_letter(&mut left, x);
            }
            for &x in &b.0 {
                self.push_letter(&mut right, x);
            }
            flip ^= sf;
        }
        Section {
            left: Word(left),
            right: Word(right),
            flip,
        }
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for &l in &w.0 {
            match l {
                Letter::Gen { id, inv } => {
                    let n = &self.names[id as usize];
                    parts.push(if inv { format!("{n}^-1") } else { n.clone() });
                }
                Letter::Fin(p) => parts.push(self.display_portrait(p)),
            }
        }
        parts.join(" ")
    }

    fn display_portrait(&self, p: u128) -> String {
        for (g, q) in self.portraits.iter().enumerate() {
            if *q == Some(p) {
                return self.names[g].clone();
            }
        }
        for (g, q) in self.portraits.iter().enumerate() {
            if let Some(q) = q {
                if portrait::invert(*q, self.fin_depth) == p {
                    return format!("{}^-1", self.names[g]);
                }
            }
        }
        format!("[{p:#x}]")
    }

    /// The system in the text format accepted by [`RecursionSystem::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let side = |s: &[(GenId, bool)]| {
            if s.is_empty() {
                return "1".to_string();
            }
            s.iter()
                .map(|(g, inv)| {
                    let n = &self.names[*g as usize];
                    if *inv {
                        format!("{n}^-1")
                    } else {
                        n.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        for (g, r) in self.rules.iter().enumerate().skip(1) {
            let rhs = if r.left.is_empty() && r.right.is_empty() && r.flip {
                "sigma".to_string()
            } else {
                format!(
                    "({}, {}){}",
                    side(&r.left),
                    side(&r.right),
                    if r.flip { " sigma" } else { "" }
                )
            };
            out.push_str(&format!("{} = {}\n", self.names[g], rhs));
        }
        out
    }
}

fn syntax(line: usize, col: usize, msg: &str) -> TreeError {
    TreeError::Syntax {
        line,
        col,
        msg: msg.to_string(),
    }
}

fn first_non_space(s: &str) -> usize {
    s.chars().position(|c| !c.is_whitespace()).unwrap_or(0) + 1
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_rhs(
    b: &SystemBuilder,
    line: &str,
    start: usize,
    lineno: usize,
) -> Result<Rule, TreeError> {
    let rest = &line[start..];
    let col0 = start + 1;
    let trimmed = rest.trim();
    if trimmed == "sigma" {
        return Ok(Rule {
            left: vec![],
            right: vec![],
            flip: true,
        });
    }
    let open = rest.find('(').ok_or_else(|| {
        syntax(
            lineno,
            col0 + first_non_space(rest) - 1,
            "expected `(` or `sigma`",
        )
    })?;
    if !rest[..open].trim().is_empty() {
        return Err(syntax(
            lineno,
            col0 + first_non_space(rest) - 1,
            "expected `(` or `sigma`",
        ));
    }
    let close = rest
        .rfind(')')
        .ok_or_else(|| syntax(lineno, col0 + rest.len(), "missing `)`"))?;
    let inner = &rest[open + 1..close];
    let comma = inner
        .find(',')
        .ok_or_else(|| syntax(lineno, col0 + close, "expected `,`"))?;
    if inner[comma + 1..].contains(',') {
        let c = comma + 1 + inner[comma + 1..].find(',').unwrap();
        return Err(syntax(lineno, col0 + open + 1 + c, "unexpected `,`"));
    }
    let lcol = col0 + open + 1;
    let left = parse_word_tokens(&b.index, &inner[..comma], lineno, lcol)?;
    let right = parse_word_tokens(&b.index, &inner[comma + 1..], lineno, lcol + comma + 1)?;
    let tail = &rest[close + 1..];
    let flip = match tail.trim() {
        "" => false,
        "sigma" => true,
        t if is_ident(t) => {
            return Err(TreeError::UnknownGenerator {
                name: t.to_string(),
                line: lineno,
                col: col0 + close + 1 + first_non_space(tail) - 1,
            })
        }
        _ => {
            return Err(syntax(
                lineno,
                col0 + close + 1 + first_non_space(tail) - 1,
                "expected `sigma` or end of line",
            ))
        }
    };
    Ok(Rule { left, right, flip })
}

fn parse_word_tokens(
    index: &BTreeMap<String, GenId>,
    text: &str,
    lineno: usize,
    col0: usize,
) -> Result<Vec<(GenId, bool)>, TreeError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || c == b'*' {
            i += 1;
            continue;
        }
        let start = i;
        if c == b'1' {
            i += 1;
            if i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                return Err(syntax(lineno, col0 + start, "invalid token"));
            }
            continue;
        }
        if !(c.is_ascii_alphabetic() || c == b'_') {
            return Err(syntax(
                lineno,
                col0 + start,
                &format!("unexpected `{}`", c as char),
            ));
        }
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
            i += 1;
        }
        let name = &text[start..i];
        let id = *index.get(name).ok_or_else(|| TreeError::UnknownGenerator {
            name: name.to_string(),
            line: lineno,
            col: col0 + start,
        })?;
        let mut exp: i64 = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let es = i;
            if i < bytes.len() && bytes[i] == b'-' {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            exp = text[es..i]
                .parse()
                .map_err(|_| syntax(lineno, col0 + es, "expected integer exponent"))?;
        }
        for _ in 0..exp.unsigned_abs() {
            out.push((id, exp < 0));
        }
    }
    Ok(out)
}
