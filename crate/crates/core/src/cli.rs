//! Parameter files, rational-function expressions, and the command line.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BiPoly, Field, GaussianRational};
use crate::classify::{classify, ClassificationReport, ClassifyConfig, ClassifyError, GrowthKind, ParamsEcho};
use crate::fibration::{
    first_integral_affine, first_integral_power, smallest_root_order, verify_eigen_fibration, Equivariance,
    FibrationError, FibrationMode, RationalFunction2,
};
use crate::map::{build_map, MapError, MapParams};

type G = GaussianRational;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {key} needs 3 entries, found {found}")]
    Arity { line: usize, key: String, found: usize },
    #[error("missing {0}")]
    Missing(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFile {
    pub alpha: [G; 3],
    pub beta: [G; 3],
    pub gamma: [G; 3],
}

impl ParamFile {
    pub fn params(&self) -> MapParams<G> {
        MapParams { alpha: self.alpha.clone(), beta: self.beta.clone(), gamma: self.gamma.clone() }
    }

    pub fn from_params(p: &MapParams<G>) -> Self {
        ParamFile { alpha: p.alpha.clone(), beta: p.beta.clone(), gamma: p.gamma.clone() }
    }

    pub fn render(&self) -> String {
        let row = |k: &str, v: &[G; 3]| format!("{} = [{}, {}, {}]\n", k, v[0], v[1], v[2]);
        format!("{}{}{}", row("alpha", &self.alpha), row("beta", &self.beta), row("gamma", &self.gamma))
    }

    pub fn echo(&self) -> ParamsEcho {
        let s = |v: &[G; 3]| -> [String; 3] { std::array::from_fn(|i| v[i].to_string()) };
        ParamsEcho { alpha: s(&self.alpha), beta: s(&self.beta), gamma: s(&self.gamma) }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    /// ["-"] DIGITS ["/" DIGITS]
    fn rat(&mut self) -> Result<BigRational, (usize, String)> {
        let neg = self.eat(b'-');
        let n = self.digits().ok_or((self.pos, "expected digits".to_string()))?;
        let d = if self.eat(b'/') {
            let at = self.pos;
            let d = self.digits().ok_or((self.pos, "expected denominator digits".to_string()))?;
            if d.is_zero() {
                return Err((at, "zero denominator".into()));
            }
            d
        } else {
            BigInt::from(1)
        };
        let q = BigRational::new(n, d);
        Ok(if neg { -q } else { q })
    }
}

/// RAT | RAT ("+"|"-") RAT "i" | RAT "i". Errors carry a 0-based offset.
pub fn parse_scalar(text: &str) -> Result<G, (usize, String)> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let re = c.rat()?;
    let out = if c.peek().is_none() {
        G::new(re, BigRational::zero())
    } else if c.eat(b'i') {
        G::new(BigRational::zero(), re)
    } else if matches!(c.peek(), Some(b'+') | Some(b'-')) {
        let neg = c.peek() == Some(b'-');
        c.pos += 1;
        let im = c.rat()?;
        if !c.eat(b'i') {
            return Err((c.pos, "expected 'i'".into()));
        }
        G::new(re, if neg { -im } else { im })
    } else {
        return Err((c.pos, "unexpected character".into()));
    };
    if c.peek().is_some() {
        return Err((c.pos, "trailing characters".into()));
    }
    Ok(out)
}

/// Three lines `alpha = [s, s, s]`, `beta = …`, `gamma = …` in any order;
/// `#` starts a comment.
pub fn parse_params(text: &str) -> Result<ParamFile, ParseError> {
    let mut rows: BTreeMap<&str, [G; 3]> = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |col: usize, msg: &str| ParseError::Syntax { line, col: col + 1, msg: msg.to_string() };
        let eq = content.find('=').ok_or_else(|| err(0, "expected 'key = [..]'"))?;
        let key = content[..eq].trim();
        let key = match key {
            "alpha" | "beta" | "gamma" => key,
            _ => return Err(err(content.find(|c: char| !c.is_whitespace()).unwrap_or(0), "unknown key")),
        };
        if rows.contains_key(key) {
            return Err(err(0, &format!("duplicate {}", key)));
        }
        let rhs_start = eq + 1;
        let rhs = &content[rhs_start..];
        let open = rhs.find('[').ok_or_else(|| err(rhs_start, "expected '['"))?;
        if !rhs[..open].trim().is_empty() {
            return Err(err(rhs_start, "expected '['"));
        }
        let close = rhs.rfind(']').ok_or_else(|| err(content.len(), "expected ']'"))?;
        if close < open {
            return Err(err(rhs_start + close, "unbalanced brackets"));
        }
        if !rhs[close + 1..].trim().is_empty() {
            return Err(err(rhs_start + close + 1, "trailing characters"));
        }
        let inner_start = rhs_start + open + 1;
        let inner = &rhs[open + 1..close];
        let mut vals = Vec::new();
        if !inner.trim().is_empty() {
            let mut offset = inner_start;
            for part in inner.split(',') {
                let lead = part.len() - part.trim_start().len();
                let item = part.trim();
                if item.is_empty() {
                    return Err(err(offset + lead, "empty entry"));
                }
                let v = parse_scalar(item).map_err(|(at, msg)| err(offset + lead + at, &msg))?;
                vals.push(v);
                offset += part.len() + 1;
            }
        }
        let found = vals.len();
        let arr: [G; 3] = vals.try_into().map_err(|_| ParseError::Arity { line, key: key.to_string(), found })?;
        rows.insert(key, arr);
    }
    let mut take = |k: &str| rows.remove(k).ok_or_else(|| ParseError::Missing(k.to_string()));
    Ok(ParamFile { alpha: take("alpha")?, beta: take("beta")?, gamma: take("gamma")? })
}

/// Recursive-descent parser for rational functions in x, y.
struct ExprParser<'a> {
    c: Cursor<'a>,
}

type RF = RationalFunction2<G>;

impl<'a> ExprParser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax { line: 1, col: self.c.pos + 1, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.c.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.c.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<RF, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.c.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.c.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RF, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.c.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.c.eat(b'/') {
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| ParseError::ZeroDenominator)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RF, ParseError> {
        self.skip_ws();
        if self.c.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.c.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RF, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.c.eat(b'^') {
            self.skip_ws();
            let e = self.c.digits().ok_or_else(|| self.err("expected a non-negative integer exponent"))?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            if e > 256 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RF, ParseError> {
        self.skip_ws();
        let one = G::one();
        match self.c.peek() {
            Some(b'(') => {
                self.c.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if !self.c.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'x') => {
                self.c.pos += 1;
                Ok(RF::polynomial(BiPoly::x(&one), &one))
            }
            Some(b'y') => {
                self.c.pos += 1;
                Ok(RF::polynomial(BiPoly::y(&one), &one))
            }
            Some(b'i') => {
                self.c.pos += 1;
                Ok(RF::constant(G::i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.c.digits().unwrap();
                let v = G::new(BigRational::from_integer(n), BigRational::zero());
                let v = if self.c.eat(b'i') { v.mul(&G::i()) } else { v };
                Ok(RF::constant(v))
            }
            _ => Err(self.err("expected a number, x, y, i or '('")),
        }
    }
}

/// Parse and reduce an expression such as `(1+2*x)*(2+2*x+y)/x`.
pub fn parse_ratfun(text: &str) -> Result<RF, ParseError> {
    let mut p = ExprParser { c: Cursor { s: text.as_bytes(), pos: 0 } };
    let e = p.expr()?;
    p.skip_ws();
    if p.c.peek().is_some() {
        return Err(p.err("unexpected character"));
    }
    Ok(e)
}

#[derive(Parser, Debug)]
#[command(name = "biratlab", about = "Degree growth of quadratic birational maps of the plane", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Mult,
    Affine,
}

#[derive(clap::Args, Debug, Clone)]
struct Budgets {
    /// Orbit budget per exceptional point.
    #[arg(long)]
    max_orbit: Option<usize>,
    /// Oracle depth (both regimes).
    #[arg(long)]
    oracle_depth: Option<usize>,
    /// Largest iterate degree the oracle computes.
    #[arg(long)]
    degree_cap: Option<u64>,
}

impl Budgets {
    fn config(&self) -> ClassifyConfig {
        let mut c = ClassifyConfig::default();
        if let Some(n) = self.max_orbit {
            c.orbit_budget = n;
        }
        if let Some(d) = self.oracle_depth {
            c.depth_exponential = d;
            c.depth_zero_entropy = d;
        }
        if let Some(m) = self.degree_cap {
            c.degree_cap = m;
        }
        c
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the map in a parameter file.
    Classify {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Check an invariant fibration V∘f = λV or V∘f = a + bV.
    Fibration {
        #[arg(long)]
        input: String,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "mult")]
        mode: ModeArg,
    },
    /// Classify random integer parameter sets and count growth classes.
    Sample {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long)]
        json: bool,
    },
    /// Print the version.
    Version,
}

/// Report for inputs that do not reach classification.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct RejectionDocument {
    pub schema_version: &'static str,
    pub input: ParamsEcho,
    pub validity: &'static str,
    pub witness: String,
}

/// Outcome of one map through the pipeline: exit code and canonical JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub json: String,
    pub report: Option<ClassificationReport>,
    pub validity: &'static str,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/// Run validation and classification; timings are dropped unless requested.
pub fn classify_params(pf: &ParamFile, cfg: &ClassifyConfig, timings: bool) -> Outcome {
    let reject = |validity: &'static str, witness: String, exit_code: i32| {
        let doc = RejectionDocument { schema_version: SCHEMA_VERSION, input: pf.echo(), validity, witness };
        Outcome { exit_code, json: to_json(&doc), report: None, validity }
    };
    let map = match build_map(pf.params()) {
        Ok(m) => m,
        Err(MapError::NotBirational(w)) => return reject("not_birational", w, 2),
        Err(MapError::DegreeDrop(d)) => return reject("degree_drop", format!("common factor of degree {}", d), 2),
        Err(e) => return reject("inconsistent", e.to_string(), 4),
    };
    if let Some(w) = &map.degeneracy_witness {
        return reject("degenerate", w.clone(), 3);
    }
    match classify(&map, cfg) {
        Ok(mut r) => {
            if !timings {
                r.timings = None;
            }
            Outcome { exit_code: r.exit_code(), json: to_json(&r), validity: "valid", report: Some(r) }
        }
        Err(ClassifyError::DegenerateMap(w)) => reject("degenerate", w, 3),
        Err(e) => reject("unresolved", e.to_string(), 4),
    }
}

fn text_report(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let b = &r.branch;
    s += &format!("branch: {} (p={:?}, q={:?}, k={:?})\n", b.tag, b.p, b.q, b.k);
    s += &format!("characteristic polynomial: {}\n", r.char_poly.text);
    if let Some(f) = &r.family {
        s += &format!("family: {} (matches: {})\n", f.family, f.matches_char_poly);
    }
    s += &format!("dynamical degree: {}\n", r.dynamical_degree.decimal);
    let g = &r.growth.class;
    let detail = match &g.kind {
        GrowthKind::Periodic { period } => format!(" period {}", period),
        GrowthKind::Exponential { delta, .. } => format!(" rate {}", delta),
        GrowthKind::Unresolved { diagnostic } => format!(" ({})", diagnostic),
        _ => String::new(),
    };
    s += &format!("growth: {}{} [{:?}]\n", g.kind.label(), detail, g.certainty);
    s += &format!("zero entropy: {}\n", r.zero_entropy);
    let degs: Vec<String> = r.oracle.degrees.iter().map(|d| d.to_string()).collect();
    s += &format!("degrees: {}\n", degs.join(" "));
    for n in &r.notes {
        s += &format!("note: {}\n", n);
    }
    s
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct FibrationDocument {
    pub schema_version: &'static str,
    pub input: ParamsEcho,
    pub v: String,
    pub mode: &'static str,
    pub equivariant: bool,
    pub factor: Option<String>,
    pub witness: Option<[String; 2]>,
    pub first_integral: Option<String>,
    pub first_integral_verified: Option<bool>,
}

fn fibration_doc(pf: &ParamFile, expr: &str, mode: FibrationMode) -> Result<FibrationDocument, (i32, String)> {
    let map = match build_map(pf.params()) {
        Ok(m) => m,
        Err(e @ (MapError::NotBirational(_) | MapError::DegreeDrop(_))) => return Err((2, e.to_string())),
        Err(e) => return Err((4, e.to_string())),
    };
    let v = parse_ratfun(expr).map_err(|e| (1, e.to_string()))?;
    let mut doc = FibrationDocument {
        schema_version: SCHEMA_VERSION,
        input: pf.echo(),
        v: v.to_string(),
        mode: if mode == FibrationMode::Multiplicative { "mult" } else { "affine" },
        equivariant: false,
        factor: None,
        witness: None,
        first_integral: None,
        first_integral_verified: None,
    };
    match verify_eigen_fibration(&map, &v, mode) {
        Ok(eq) => {
            doc.equivariant = true;
            let fi = match &eq {
                Equivariance::Multiplicative { lambda } => {
                    doc.factor = Some(lambda.to_string());
                    smallest_root_order(lambda, 12).and_then(|n| first_integral_power(&map, &v, lambda, n).ok())
                }
                Equivariance::Affine { a, b } => {
                    doc.factor = Some(format!("{} + ({})*V", a, b));
                    let n = if b.is_one() { Some(1) } else { smallest_root_order(b, 12) };
                    n.and_then(|n| first_integral_affine(&map, &v, a, b, n).ok())
                }
            };
            doc.first_integral = fi.as_ref().map(|f| f.w.to_string());
            doc.first_integral_verified = fi.map(|f| f.verified);
        }
        Err(FibrationError::NotEquivariant { x, y }) => doc.witness = Some([x, y]),
        Err(e) => return Err((1, e.to_string())),
    }
    Ok(doc)
}

fn draw(rng: &mut ChaCha8Rng) -> MapParams<G> {
    let v: [i64; 9] = std::array::from_fn(|_| rng.gen_range(-5..=5));
    MapParams::from_ints([v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]])
}

/// Raw integer parameter draws with entries in [-5, 5], reproducible from `seed`.
pub fn sample_params(count: usize, seed: u64) -> Vec<MapParams<G>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| draw(&mut rng)).collect()
}

/// Why a parameter set is turned away before classification, if it is.
pub fn rejection(p: &MapParams<G>) -> Option<&'static str> {
    match build_map(p.clone()) {
        Err(MapError::NotBirational(_)) => Some("not_birational"),
        Err(MapError::DegreeDrop(_)) => Some("degree_drop"),
        Err(_) => Some("inconsistent"),
        Ok(m) if m.degeneracy_witness.is_some() => Some("degenerate"),
        Ok(_) => None,
    }
}

/// Draw until `count` parameter sets pass validation; rejected draws are
/// counted by reason.
pub fn sample_valid(count: usize, seed: u64) -> (Vec<MapParams<G>>, BTreeMap<String, usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut valid = Vec::with_capacity(count);
    let mut rejected = BTreeMap::new();
    while valid.len() < count {
        let p = draw(&mut rng);
        match rejection(&p) {
            Some(why) => *rejected.entry(why.to_string()).or_default() += 1,
            None => valid.push(p),
        }
    }
    (valid, rejected)
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq, Default)]
pub struct SampleSummary {
    pub schema_version: &'static str,
    pub count: usize,
    pub seed: u64,
    /// Draws turned away before classification, by reason.
    pub rejected: BTreeMap<String, usize>,
    pub classified: usize,
    pub unresolved: usize,
    pub by_growth: BTreeMap<String, usize>,
    pub by_branch: BTreeMap<String, usize>,
    pub by_family: BTreeMap<String, usize>,
}

fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("BIRATLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        b = b.num_threads(n.max(1));
    }
    b.build().expect("thread pool")
}

/// Classify every draw; results are in draw order.
pub fn classify_sample(params: &[MapParams<G>], cfg: &ClassifyConfig) -> Vec<Outcome> {
    thread_pool().install(|| params.par_iter().map(|p| classify_params(&ParamFile::from_params(p), cfg, false)).collect())
}

pub fn summarize(count: usize, seed: u64, rejected: BTreeMap<String, usize>, outcomes: &[Outcome]) -> SampleSummary {
    let mut s = SampleSummary { schema_version: SCHEMA_VERSION, count, seed, rejected, ..Default::default() };
    for o in outcomes {
        match &o.report {
            Some(r) => {
                s.classified += 1;
                if r.unresolved {
                    s.unresolved += 1;
                }
                *s.by_growth.entry(r.growth.class.kind.label().to_string()).or_default() += 1;
                *s.by_branch.entry(r.branch.tag.to_string()).or_default() += 1;
                if let Some(f) = &r.family {
                    *s.by_family.entry(f.family.clone()).or_default() += 1;
                }
            }
            None => *s.rejected.entry(o.validity.to_string()).or_default() += 1,
        }
    }
    s
}

fn read_params(path: &str) -> Result<ParamFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
    parse_params(&text).map_err(|e| format!("{}: {}", path, e))
}

/// Entry point; returns the process exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match cli.cmd {
        Command::Version => {
            let _ = writeln!(out, "biratlab {}", env!("CARGO_PKG_VERSION"));
            0
        }
        Command::Classify { input, budgets, json: _, text, timings } => {
            let pf = match read_params(&input) {
                Ok(p) => p,
                Err(e) => {
                    let _ = writeln!(err, "error: {}", e);
                    return 1;
                }
            };
            let o = classify_params(&pf, &budgets.config(), timings);
            match (&o.report, text) {
                (Some(r), true) => {
                    let _ = write!(out, "{}", text_report(r));
                }
                (None, true) => {
                    let _ = writeln!(out, "{}", o.json);
                    let _ = writeln!(err, "map rejected: {}", o.validity);
                }
                _ => {
                    let _ = writeln!(out, "{}", o.json);
                }
            }
            o.exit_code
        }
        Command::Fibration { input, expr, mode } => {
            let pf = match read_params(&input) {
                Ok(p) => p,
                Err(e) => {
                    let _ = writeln!(err, "error: {}", e);
                    return 1;
                }
            };
            let mode = match mode {
                ModeArg::Mult => FibrationMode::Multiplicative,
                ModeArg::Affine => FibrationMode::Affine,
            };
            match fibration_doc(&pf, &expr, mode) {
                Ok(doc) => {
                    let _ = writeln!(out, "{}", to_json(&doc));
                    0
                }
                Err((code, msg)) => {
                    let _ = writeln!(err, "error: {}", msg);
                    code
                }
            }
        }
        Command::Sample { count, seed, budgets, json } => {
            let (params, rejected) = sample_valid(count, seed);
            let outcomes = classify_sample(&params, &budgets.config());
            let s = summarize(count, seed, rejected, &outcomes);
            if json {
                let _ = writeln!(out, "{}", to_json(&s));
            } else {
                let _ = writeln!(out, "valid draws: {}  classified: {}  unresolved: {}", s.count, s.classified, s.unresolved);
                for (k, v) in &s.rejected {
                    let _ = writeln!(out, "rejected {}: {}", k, v);
                }
                for (k, v) in &s.by_growth {
                    let _ = writeln!(out, "growth {}: {}", k, v);
                }
            }
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyness_file() {
        let pf = parse_params("alpha = [0, 0, 1]\nbeta = [1, 0, 1]\ngamma = [0, 1, 0]").unwrap();
        assert_eq!(pf.params(), MapParams::from_ints([0, 0, 1], [1, 0, 1], [0, 1, 0]));
    }

    #[test]
    fn gaussian_literals_and_comments() {
        let pf = parse_params("# test\ngamma = [0, 1, 0]\nalpha = [1/2+1i, -3i, 1]  # trailing\n\nbeta = [1-2/3i, 0, -7/4]").unwrap();
        assert_eq!(pf.alpha[0], G::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(1.into())));
        assert_eq!(pf.alpha[1], G::new(BigRational::zero(), BigRational::from_integer((-3).into())));
        assert_eq!(pf.beta[0], G::new(BigRational::from_integer(1.into()), BigRational::new((-2).into(), 3.into())));
    }

    #[test]
    fn arity_and_syntax_errors() {
        assert!(matches!(parse_params("alpha = [0, 1]"), Err(ParseError::Arity { line: 1, found: 2, .. })));
        match parse_params("alpha = [0, 1, 1]\nbeta = [1, x, 1]\ngamma = [0, 1, 0]") {
            Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 12)),
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse_params("alpha = [0, 1, 1]"), Err(ParseError::Missing(_))));
        assert!(parse_params("alpha = [1/0, 1, 1]\nbeta = [1, 0, 1]\ngamma = [0, 1, 0]").is_err());
    }

    #[test]
    fn render_round_trip() {
        let text = "alpha = [1/2+1i, 0, 1]\nbeta = [-3i, 2-1/5i, 1]\ngamma = [0, 1, 0]\n";
        let pf = parse_params(text).unwrap();
        assert_eq!(pf.render(), text);
        assert_eq!(parse_params(&pf.render()).unwrap(), pf);
    }

    #[test]
    fn ratfun_examples() {
        let v = parse_ratfun("(1+2*x)*(2+2*x+y)/x").unwrap();
        let one = G::one();
        assert_eq!(v.den, BiPoly::x(&one));
        // (1+2x)(2+2x+y) = 2 + 6x + y + 4x^2 + 2xy
        let num = BiPoly::from_terms([
            ((0, 0), G::from_int(2)),
            ((1, 0), G::from_int(6)),
            ((0, 1), G::from_int(1)),
            ((2, 0), G::from_int(4)),
            ((1, 1), G::from_int(2)),
        ]);
        assert_eq!(v.num, num);
        let x = parse_ratfun("x").unwrap();
        assert_eq!((x.num, x.den), (BiPoly::x(&one), BiPoly::constant(one.clone())));
        assert_eq!(parse_ratfun("1/(x-x)"), Err(ParseError::ZeroDenominator));
        assert_eq!(parse_ratfun("(x^2-y^2)/(x-y)").unwrap(), parse_ratfun("x+y").unwrap());
        assert!(parse_ratfun("x^-1").is_err());
        assert!(parse_ratfun("(x").is_err());
    }

    #[test]
    fn exit_codes() {
        let run = |args: &[&str]| {
            let (mut o, mut e) = (Vec::new(), Vec::new());
            run_cli(args.iter().map(|s| s.to_string()), &mut o, &mut e)
        };
        assert_eq!(run(&["biratlab", "version"]), 0);
        assert_eq!(run(&["biratlab", "bogus"]), 1);
        assert_eq!(run(&["biratlab", "classify", "--input", "/nonexistent/file"]), 1);
    }
}
