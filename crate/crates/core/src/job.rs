//! Job files and reports.
//!
//! A job file is a sequence of `keyword value;` statements; `#` starts a
//! comment. See `docs/format.md` for the full grammar and the JSON schema.

use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::border_basis::{BorderScheme, NeighbourPair, OrderIdeal};
use crate::cotangent::{cotangent_classes, enumerate_ltgfan_binomial, is_binomial, sigma_leading_s};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rational};
use crate::groebner::{
    buchberger, check_permutable_regular_sequence, check_z_separating_with, GbOptions, PairStrategy,
    Separation, Verdict, DEFAULT_BUDGET, REGULAR_MAX_DEGREE, REGULAR_MAX_VARS,
};
use crate::linear_gfan::gfan_linear;
use crate::poly::{linear_part_of_ideal, rref_forms, Poly, Ring, Term, TermOrdering};
use crate::reembed::{
    certify_affine_cell, certify_optimal, find_all_via_gfan, find_reembedding_via_cotangent,
    find_reembedding_via_gfan, reembed_with, Attempt, Reembedding, SearchOptions, SearchOutcome,
    Verified,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Prime moduli accepted by `field GF(p)`.
pub const SUPPORTED_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 101, 32003, 65521, 2147483647];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gb,
    GfanLinear,
    Cotangent,
    Reembed,
    Bbs,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::GfanLinear => "gfan-linear",
            Command::Cotangent => "cotangent",
            Command::Reembed => "reembed",
            Command::Bbs => "bbs",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Command::Gb,
            Command::GfanLinear,
            Command::Cotangent,
            Command::Reembed,
            Command::Bbs,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FieldSpec {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim();
        if t == "QQ" || t == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("unknown field `{t}`, expected QQ or GF(p)"))?;
        let p: u64 = inner.trim().parse().map_err(|_| format!("bad modulus `{inner}`"))?;
        if SUPPORTED_PRIMES.contains(&p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(format!("unsupported modulus {p}; supported: {SUPPORTED_PRIMES:?}"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderingSpec {
    DegRevLex,
    Lex,
    Elim(Vec<String>),
    Matrix(Vec<Vec<i64>>),
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingSpec::DegRevLex => write!(f, "degrevlex"),
            OrderingSpec::Lex => write!(f, "lex"),
            OrderingSpec::Elim(z) => write!(f, "elim({})", z.join(", ")),
            OrderingSpec::Matrix(m) => write!(f, "{}", serde_json::to_string(m).expect("serialisable")),
        }
    }
}

impl OrderingSpec {
    /// `degrevlex`, `lex`, `elim(x, y)` or a JSON weight matrix such as
    /// `[[1,1],[0,-1]]`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim();
        match t {
            "degrevlex" => return Ok(OrderingSpec::DegRevLex),
            "lex" => return Ok(OrderingSpec::Lex),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("elim(").and_then(|r| r.strip_suffix(')')) {
            let names = split_names(inner);
            if names.is_empty() {
                return Err("elim() needs at least one indeterminate".into());
            }
            return Ok(OrderingSpec::Elim(names));
        }
        if t.starts_with('[') {
            return serde_json::from_str(t)
                .map(OrderingSpec::Matrix)
                .map_err(|e| format!("bad weight matrix: {e}"));
        }
        Err(format!("unknown ordering `{t}`"))
    }

    pub fn build(&self, ring: &Ring) -> Result<TermOrdering> {
        let n = ring.arity();
        match self {
            OrderingSpec::DegRevLex => Ok(TermOrdering::degrevlex(n)),
            OrderingSpec::Lex => Ok(TermOrdering::lex(n)),
            OrderingSpec::Elim(z) => TermOrdering::elimination(&ring.indices_of(z)?, n),
            OrderingSpec::Matrix(m) => {
                if let Some(bad) = m.iter().find(|r| r.len() != n) {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        found: bad.len(),
                    });
                }
                TermOrdering::from_matrix(m.clone())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Gfan,
    Cotangent,
}

impl Algorithm {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "gfan" => Ok(Algorithm::Gfan),
            "cotangent" => Ok(Algorithm::Cotangent),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// A statement value together with where it starts in the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub field: FieldSpec,
    pub ring: Vec<String>,
    /// Generators or linear forms.
    pub polys: Option<Located>,
    /// Maximal terms of an order ideal (`bbs`).
    pub terms: Option<Located>,
    pub ordering: OrderingSpec,
    pub budget: Option<u64>,
    pub strategy: PairStrategy,
    pub size: Option<usize>,
    pub z: Option<Vec<String>>,
    pub alg: Algorithm,
    pub optimal_only: bool,
    pub all: bool,
    /// Chain a `bbs` job into the cotangent search.
    pub reembed: bool,
    /// Wall-clock limit for candidate searches.
    pub wall: Option<Duration>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            field: FieldSpec::Rational,
            ring: Vec::new(),
            polys: None,
            terms: None,
            ordering: OrderingSpec::DegRevLex,
            budget: None,
            strategy: PairStrategy::Normal,
            size: None,
            z: None,
            alg: Algorithm::Gfan,
            optimal_only: false,
            all: false,
            reembed: false,
            wall: None,
        }
    }

    pub fn ring(&self) -> Result<Ring> {
        Ring::new(&self.ring)
    }

    /// Number of polynomials in the `polys` statement.
    pub fn poly_count(&self) -> Result<usize> {
        Ok(self.parsed_polys::<Rational>(&self.ring()?)?.len())
    }

    fn parsed_polys<F: Field>(&self, ring: &Ring) -> Result<Vec<Poly<F>>> {
        match &self.polys {
            Some(l) => ring.parse_polys_at(&l.text, l.line, l.column),
            None => Ok(Vec::new()),
        }
    }

    fn gb_options(&self) -> GbOptions {
        GbOptions {
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            strategy: self.strategy,
        }
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            gb: self.gb_options(),
            wall: self.wall,
        }
    }
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',')
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

struct Statement {
    keyword: String,
    kw_line: usize,
    kw_col: usize,
    value: Located,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits the text into statements, tracking positions (1-based, columns
/// counted in characters). Comments are blanked first so that positions
/// after them stay correct.
fn statements(text: &str) -> Vec<Statement> {
    let mut clean = String::with_capacity(text.len());
    let mut in_comment = false;
    for ch in text.chars() {
        match ch {
            '\n' => {
                in_comment = false;
                clean.push('\n');
            }
            '#' => {
                in_comment = true;
                clean.push(' ');
            }
            _ if in_comment => clean.push(' '),
            _ => clean.push(ch),
        }
    }
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut cur: Option<(usize, usize, String)> = None;
    for ch in clean.chars() {
        if ch == ';' {
            if let Some((l, c, body)) = cur.take() {
                out.push(split_statement(l, c, &body));
            }
        } else if let Some((_, _, body)) = cur.as_mut() {
            body.push(ch);
        } else if !ch.is_whitespace() {
            cur = Some((line, col, ch.to_string()));
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    if let Some((l, c, body)) = cur.take() {
        out.push(split_statement(l, c, &body));
    }
    out
}

fn split_statement(line: usize, col: usize, body: &str) -> Statement {
    let kw_len = body.find(char::is_whitespace).unwrap_or(body.len());
    let keyword = body[..kw_len].to_string();
    let rest = &body[kw_len..];
    let (mut vl, mut vc) = (line, col + keyword.chars().count());
    let mut skipped = 0;
    for ch in rest.chars().take_while(|c| c.is_whitespace()) {
        skipped += ch.len_utf8();
        if ch == '\n' {
            vl += 1;
            vc = 1;
        } else {
            vc += 1;
        }
    }
    Statement {
        keyword,
        kw_line: line,
        kw_col: col,
        value: Located {
            text: rest[skipped..].trim_end().to_string(),
            line: vl,
            column: vc,
        },
    }
}

/// Parses and validates a job file.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    parse_job_for(text, None)
}

/// Parses a job file for the given command; the `job` statement may then
/// be omitted but must agree if present.
pub fn parse_job_for(text: &str, command: Option<Command>) -> Result<JobSpec> {
    let stmts = statements(text);
    let mut spec: Option<JobSpec> = None;
    let mut pending: Vec<Statement> = Vec::new();
    for st in stmts {
        if st.keyword == "job" {
            if spec.is_some() {
                return Err(parse_error(st.kw_line, st.kw_col, "duplicate `job` statement"));
            }
            let c = Command::from_name(st.value.text.trim()).ok_or_else(|| {
                parse_error(
                    st.value.line,
                    st.value.column,
                    format!("unknown command `{}`", st.value.text),
                )
            })?;
            if let Some(want) = command {
                if want != c {
                    return Err(parse_error(
                        st.value.line,
                        st.value.column,
                        format!("job file is for `{}`, not `{}`", c.name(), want.name()),
                    ));
                }
            }
            spec = Some(JobSpec::new(c));
        } else {
            pending.push(st);
        }
    }
    let mut spec = match (spec, command) {
        (Some(s), _) => s,
        (None, Some(c)) => JobSpec::new(c),
        (None, None) => {
            let (l, c) = pending.first().map_or((1, 1), |s| (s.kw_line, s.kw_col));
            return Err(parse_error(l, c, "missing `job` statement"));
        }
    };
    let mut seen: Vec<String> = Vec::new();
    for st in pending {
        if seen.contains(&st.keyword) {
            return Err(parse_error(st.kw_line, st.kw_col, format!("duplicate `{}` statement", st.keyword)));
        }
        seen.push(st.keyword.clone());
        let v = &st.value;
        let at = |m: String| parse_error(v.line, v.column, m);
        match st.keyword.as_str() {
            "field" => spec.field = FieldSpec::parse(&v.text).map_err(at)?,
            "ring" => {
                spec.ring = split_names(&v.text);
                Ring::new(&spec.ring).map_err(|e| at(e.to_string()))?;
            }
            "polys" => spec.polys = Some(v.clone()),
            "terms" => spec.terms = Some(v.clone()),
            "ordering" => spec.ordering = OrderingSpec::parse(&v.text).map_err(at)?,
            "budget" => spec.budget = Some(v.text.trim().parse().map_err(|_| at("budget must be a non-negative integer".into()))?),
            "size" => spec.size = Some(v.text.trim().parse().map_err(|_| at("size must be a non-negative integer".into()))?),
            "z" => spec.z = Some(split_names(&v.text)),
            "alg" => spec.alg = Algorithm::parse(&v.text).map_err(at)?,
            "strategy" => {
                spec.strategy = match v.text.trim() {
                    "normal" => PairStrategy::Normal,
                    "sugar" => PairStrategy::Sugar,
                    other => return Err(at(format!("unknown strategy `{other}`"))),
                }
            }
            "options" => {
                for o in split_names(&v.text) {
                    match o.as_str() {
                        "optimal-only" => spec.optimal_only = true,
                        "all" => spec.all = true,
                        "reembed" => spec.reembed = true,
                        other => return Err(at(format!("unknown option `{other}`"))),
                    }
                }
            }
            other => {
                return Err(parse_error(st.kw_line, st.kw_col, format!("unknown statement `{other}`")));
            }
        }
    }
    validate(&spec)?;
    Ok(spec)
}

/// Checks command-specific requirements and that everything parses in the
/// declared ring.
pub fn validate(spec: &JobSpec) -> Result<()> {
    if spec.ring.is_empty() {
        return Err(Error::InvalidJob("missing `ring` statement".into()));
    }
    let ring = spec.ring()?;
    match spec.command {
        Command::Bbs => {
            if spec.terms.is_none() {
                return Err(Error::InvalidJob("`bbs` needs a `terms` statement".into()));
            }
            order_ideal_terms(spec, &ring)?;
        }
        _ => {
            if spec.polys.is_none() {
                return Err(Error::InvalidJob(format!("`{}` needs a `polys` statement", spec.command.name())));
            }
            spec.parsed_polys::<Rational>(&ring)?;
        }
    }
    spec.ordering.build(&ring)?;
    if let Some(z) = &spec.z {
        ring.indices_of(z)?;
    }
    Ok(())
}

fn order_ideal_terms(spec: &JobSpec, ring: &Ring) -> Result<Vec<Term>> {
    let l = spec.terms.as_ref().ok_or_else(|| Error::InvalidJob("missing terms".into()))?;
    let ps: Vec<Poly<Rational>> = ring.parse_polys_at(&l.text, l.line, l.column)?;
    if ps.is_empty() {
        return Err(parse_error(l.line, l.column, "expected at least one term"));
    }
    ps.iter()
        .map(|p| {
            let mut it = p.iter();
            match (it.next(), it.next()) {
                (Some((t, c)), None) if *c == Rational::from_i64(1) => Ok(t.clone()),
                _ => Err(parse_error(l.line, l.column, "order ideal generators must be terms")),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Inconclusive,
}

impl RunStatus {
    /// Process exit code: 0 for success, 2 for an inconclusive run.
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok => 0,
            RunStatus::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub status: RunStatus,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("serialisable");
        s.push('\n');
        s
    }
}

macro_rules! dispatch_prime {
    ($spec:expr, $p:expr, $($q:literal),*) => {
        match $p {
            $($q => run_in::<Fp<$q>>($spec),)*
            other => Err(Error::InvalidJob(format!("unsupported modulus {other}"))),
        }
    };
}

/// Runs a validated job.
pub fn run_job(spec: &JobSpec) -> Result<Report> {
    validate(spec)?;
    match spec.field {
        FieldSpec::Rational => run_in::<Rational>(spec),
        FieldSpec::Prime(p) => dispatch_prime!(spec, p, 2, 3, 5, 7, 11, 13, 101, 32003, 65521, 2147483647),
    }
}

struct Out {
    status: RunStatus,
    json: Value,
    text: String,
}

fn run_in<F: Field>(spec: &JobSpec) -> Result<Report> {
    let ring = spec.ring()?;
    let out = match spec.command {
        Command::Gb => run_gb::<F>(spec, &ring)?,
        Command::GfanLinear => run_gfan::<F>(spec, &ring)?,
        Command::Cotangent => run_cotangent::<F>(spec, &ring)?,
        Command::Reembed => run_reembed::<F>(spec, &ring)?,
        Command::Bbs => run_bbs::<F>(spec, &ring)?,
    };
    let mut json = json!({
        "schema": SCHEMA_VERSION,
        "command": spec.command.name(),
        "field": spec.field.to_string(),
        "status": out.status,
    });
    if let (Value::Object(head), Value::Object(body)) = (&mut json, out.json) {
        head.extend(body);
    }
    Ok(Report {
        status: out.status,
        json,
        text: out.text,
    })
}

fn names(ring: &Ring, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| ring.name(i).to_string()).collect()
}

fn tuple(ring: &Ring, idx: &[usize]) -> String {
    format!("({})", names(ring, idx).join(", "))
}

fn fmt_polys<F: Field>(ring: &Ring, ps: &[Poly<F>]) -> Vec<String> {
    ps.iter().map(|p| ring.fmt_poly(p)).collect()
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn run_gb<F: Field>(spec: &JobSpec, ring: &Ring) -> Result<Out> {
    let gens = spec.parsed_polys::<F>(ring)?;
    let o = spec.ordering.build(ring)?;
    let gb = buchberger(&gens, &o, spec.gb_options())?;
    let mut status = if gb.is_complete() {
        RunStatus::Ok
    } else {
        RunStatus::Inconclusive
    };
    let basis: Vec<String> = gb.basis.iter().map(|p| ring.fmt_poly_ordered(p, &o)).collect();
    let lts: Vec<String> = gb
        .basis
        .iter()
        .map(|p| p.leading_term(&o).map(|(t, _)| ring.fmt_term(&t)))
        .collect::<Result<_>>()?;
    let state = if gb.is_complete() { "complete" } else { "aborted" };
    let mut text = format!(
        "Reduced Groebner basis w.r.t. {} ({}, {} reductions):\n",
        spec.ordering, state, gb.reductions
    );
    for b in &basis {
        let _ = writeln!(text, "  {b}");
    }
    let mut json = json!({
        "ordering": spec.ordering.to_string(),
        "gb_status": state,
        "reductions": gb.reductions,
        "basis": basis,
        "leading_terms": lts,
    });
    if let Some(zn) = &spec.z {
        let z = ring.indices_of(zn)?;
        let eo = TermOrdering::elimination(&z, ring.arity())?;
        let sep = check_z_separating_with(&gens, &z, &eo, spec.gb_options())?;
        let lead = match &sep {
            Separation::No { linear_leading, .. } => linear_leading.clone(),
            other => crate::groebner::linear_leading_terms(other.gb()),
        };
        if sep.verdict() == Verdict::Inconclusive {
            status = RunStatus::Inconclusive;
        }
        let _ = writeln!(
            text,
            "Z = {} separating: {} (linear leading terms {})",
            tuple(ring, &z),
            verdict_name(sep.verdict()),
            tuple(ring, &lead)
        );
        json["separating"] = json!({
            "z": names(ring, &z),
            "verdict": sep.verdict(),
            "linear_leading": names(ring, &lead),
        });
    }
    Ok(Out { status, json, text })
}

fn run_gfan<F: Field>(spec: &JobSpec, ring: &Ring) -> Result<Out> {
    let forms = spec.parsed_polys::<F>(ring)?;
    if forms.iter().any(|f| !f.is_linear_form()) {
        return Err(Error::NotLinear);
    }
    let fan = gfan_linear(&forms, ring.arity())?;
    let nonzero = fan.gbs.iter().any(|g| !g.pairs.is_empty());
    let gbs: Vec<Value> = if nonzero {
        fan.gbs
            .iter()
            .map(|g| {
                Value::Array(
                    g.pairs
                        .iter()
                        .map(|(m, p)| json!({"marker": ring.name(*m), "poly": ring.fmt_marked(&Term::var(ring.arity(), *m), p)}))
                        .collect(),
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut text = format!("Groebner fan: {} marked reduced bases\n", gbs.len());
    if nonzero {
        for g in &fan.gbs {
            let _ = writeln!(text, "  {}", g.display(ring));
        }
    }
    Ok(Out {
        status: RunStatus::Ok,
        json: json!({ "fan_size": gbs.len(), "fan": gbs }),
        text,
    })
}

fn count_value(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

fn run_cotangent<F: Field>(spec: &JobSpec, ring: &Ring) -> Result<Out> {
    let gens = spec.parsed_polys::<F>(ring)?;
    let n = ring.arity();
    let lin = linear_part_of_ideal(&gens, n)?;
    let classes = cotangent_classes(&lin, n)?;
    let binomial = is_binomial(&lin);
    let proper: Vec<Vec<String>> = classes.proper.iter().map(|c| names(ring, c)).collect();
    let mut text = format!("dim Lin = {}\n", lin.len());
    let _ = writeln!(text, "E0 = {{{}}}", names(ring, &classes.trivial).join(", "));
    for (i, c) in proper.iter().enumerate() {
        let _ = writeln!(text, "E{} = {{{}}}", i + 1, c.join(", "));
    }
    let _ = writeln!(text, "basic = {{{}}}", names(ring, &classes.basic).join(", "));
    let mut json = json!({
        "dim_lin": lin.len(),
        "binomial": binomial,
        "trivial": names(ring, &classes.trivial),
        "basic": names(ring, &classes.basic),
        "proper": proper,
    });
    if binomial {
        // the product formula counts the fan only in the binomial case
        json["fan_size"] = count_value(classes.fan_size());
        let o = spec.ordering.build(ring)?;
        let s = sigma_leading_s(&classes, &o);
        let _ = writeln!(text, "S_sigma ({}) = {{{}}}", spec.ordering, names(ring, &s).join(", "));
        json["s_sigma"] = json!(names(ring, &s));
        if classes.fan_size() <= 10_000 {
            let lt: Vec<Vec<String>> = enumerate_ltgfan_binomial(&classes)
                .iter()
                .map(|z| names(ring, z))
                .collect();
            let _ = writeln!(text, "leading-term sets: {}", lt.len());
            json["ltgfan"] = json!(lt);
        }
    } else {
        let _ = writeln!(text, "linear part is not binomial; class theorems not applied");
    }
    Ok(Out {
        status: RunStatus::Ok,
        json,
        text,
    })
}

fn attempts_json(ring: &Ring, trace: &[Attempt]) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|a| {
                json!({
                    "z": names(ring, &a.z),
                    "verdict": a.verdict,
                    "linear_leading": names(ring, &a.linear_leading),
                })
            })
            .collect(),
    )
}

fn reembedding_json<F: Field>(ring: &Ring, res: &Reembedding<F>, gens: &[Poly<F>]) -> Result<(Value, String)> {
    let optimal = certify_optimal(res, gens)?;
    let cell = certify_affine_cell(res, gens)?;
    let subst: Vec<Value> = res
        .substitution
        .iter()
        .map(|(z, h)| json!([ring.name(*z), ring.fmt_poly(h)]))
        .collect();
    let mut text = format!("Z = {}, Y = {}\n", tuple(ring, &res.z), tuple(ring, &res.y));
    for (z, h) in &res.substitution {
        let _ = writeln!(text, "  {} |-> {}", ring.name(*z), ring.fmt_poly(h));
    }
    let ys = names(ring, &res.y).join(", ");
    if res.elimination_gens.is_empty() {
        let _ = writeln!(text, "  P/I = K[{ys}]");
    } else {
        let _ = writeln!(
            text,
            "  P/I = K[{ys}]/<{}>",
            fmt_polys(ring, &res.elimination_gens).join(", ")
        );
    }
    let _ = writeln!(text, "  optimal: {optimal}, affine cell: {}", verdict_name(cell));
    let v = json!({
        "z": names(ring, &res.z),
        "y": names(ring, &res.y),
        "substitution": subst,
        "elimination_gens": fmt_polys(ring, &res.elimination_gens),
        "optimal": optimal,
        "affine_cell": cell,
        "certificate": {
            "ordering": format!("elim({})", names(ring, &res.z).join(", ")),
            "basis_size": res.certificate.basis.len(),
            "reductions": res.certificate.reductions,
        },
    });
    Ok((v, text))
}

fn verified_json<F: Field>(ring: &Ring, v: &Verified<F>, gens: &[Poly<F>]) -> Result<(Value, String, RunStatus)> {
    let mut text = format!(
        "{} candidates, {} verified (dim Lin = {})\n",
        v.candidates,
        v.results.len(),
        v.dim_lin
    );
    let mut results = Vec::new();
    for r in &v.results {
        let (j, t) = reembedding_json(ring, r, gens)?;
        results.push(j);
        text.push_str(&t);
    }
    let status = if v.unverified.is_empty() {
        RunStatus::Ok
    } else {
        let _ = writeln!(text, "{} candidates unverified", v.unverified.len());
        RunStatus::Inconclusive
    };
    let unverified: Vec<Vec<String>> = v.unverified.iter().map(|z| names(ring, z)).collect();
    let j = json!({
        "dim_lin": v.dim_lin,
        "candidates": v.candidates,
        "trace": attempts_json(ring, &v.trace),
        "results": results,
        "unverified": unverified,
    });
    Ok((j, text, status))
}

fn run_reembed<F: Field>(spec: &JobSpec, ring: &Ring) -> Result<Out> {
    let gens = spec.parsed_polys::<F>(ring)?;
    let n = ring.arity();
    if let Some(zn) = &spec.z {
        let z = ring.indices_of(zn)?;
        let (att, res) = reembed_with(&gens, &z, spec.gb_options())?;
        let mut text = format!("Z = {} separating: {}\n", tuple(ring, &z), verdict_name(att.verdict));
        let mut json = json!({
            "mode": "given",
            "trace": attempts_json(ring, std::slice::from_ref(&att)),
            "results": [],
        });
        if let Some(res) = res {
            let (j, t) = reembedding_json(ring, &res, &gens)?;
            text.push_str(&t);
            json["results"] = json!([j]);
            let tuple_polys: Vec<Poly<F>> = res
                .substitution
                .iter()
                .map(|(z, h)| &Poly::var(n, *z) - h)
                .collect();
            let small = n <= REGULAR_MAX_VARS
                && tuple_polys
                    .iter()
                    .all(|p| p.total_degree().unwrap_or(0) <= REGULAR_MAX_DEGREE);
            let reg = if small {
                Some(check_permutable_regular_sequence(&tuple_polys, spec.gb_options())?)
            } else {
                None
            };
            let _ = writeln!(
                text,
                "  separating tuple is a permutable regular sequence: {}",
                reg.map_or("not checked (too large)", verdict_name)
            );
            json["regular_sequence"] = reg.map_or(Value::Null, |v| json!(v));
        }
        let status = if att.verdict == Verdict::Inconclusive {
            RunStatus::Inconclusive
        } else {
            RunStatus::Ok
        };
        return Ok(Out { status, json, text });
    }
    match spec.alg {
        Algorithm::Gfan => {
            let dim = linear_part_of_ideal(&gens, n)?.len();
            let s = spec.size.unwrap_or(dim);
            if spec.all {
                let v = find_all_via_gfan(&gens, s, spec.search_options())?;
                let (mut j, t, status) = verified_json(ring, &v, &gens)?;
                j["mode"] = json!("gfan-all");
                j["size"] = json!(s);
                return Ok(Out { status, json: j, text: t });
            }
            let search = find_reembedding_via_gfan(&gens, s, spec.search_options())?;
            let mut text = format!(
                "{} candidates of size {} (dim Lin = {})\n",
                search.candidates, s, search.dim_lin
            );
            for a in &search.trace {
                let _ = writeln!(text, "  try {}: {}", tuple(ring, &a.z), verdict_name(a.verdict));
            }
            let mut json = json!({
                "mode": "gfan",
                "size": s,
                "dim_lin": search.dim_lin,
                "candidates": search.candidates,
                "trace": attempts_json(ring, &search.trace),
            });
            let status = match &search.outcome {
                SearchOutcome::Found(res) => {
                    let (j, t) = reembedding_json(ring, res, &gens)?;
                    text.push_str(&t);
                    json["outcome"] = json!("found");
                    json["results"] = json!([j]);
                    RunStatus::Ok
                }
                SearchOutcome::NotFound => {
                    text.push_str("No Z-separating re-embedding of this size found.\n");
                    json["outcome"] = json!("not_found");
                    json["results"] = json!([]);
                    RunStatus::Ok
                }
                SearchOutcome::Inconclusive { unverified } => {
                    let _ = writeln!(text, "Inconclusive: {} candidates unverified.", unverified.len());
                    json["outcome"] = json!("inconclusive");
                    json["results"] = json!([]);
                    json["unverified"] =
                        json!(unverified.iter().map(|z| names(ring, z)).collect::<Vec<_>>());
                    RunStatus::Inconclusive
                }
            };
            Ok(Out { status, json, text })
        }
        Algorithm::Cotangent => {
            let optimal_only = spec.optimal_only || !spec.all;
            let search = find_reembedding_via_cotangent(&gens, optimal_only, spec.search_options())?;
            let (mut j, t, status) = verified_json(ring, &search.verified, &gens)?;
            j["mode"] = json!("cotangent");
            j["optimal_only"] = json!(optimal_only);
            j["closed_form"] = json!(search.closed_form);
            Ok(Out { status, json: j, text: t })
        }
    }
}

fn pair_label(p: &NeighbourPair) -> String {
    match *p {
        NeighbourPair::NextDoor { j, jp, .. } => format!("ND({},{})", j + 1, jp + 1),
        NeighbourPair::AcrossRim { j, jp, .. } => format!("AR({},{})", j + 1, jp + 1),
    }
}

fn run_bbs<F: Field>(spec: &JobSpec, ring: &Ring) -> Result<Out> {
    let maximal = order_ideal_terms(spec, ring)?;
    let scheme = BorderScheme::new(OrderIdeal::from_maximal(&maximal)?);
    let oi = scheme.order_ideal();
    let cring = scheme.ring();
    let gens = scheme.neighbour_generators::<F>();
    let ideal: Vec<Poly<F>> = gens.iter().map(|g| g.poly.clone()).collect();
    let nc = cring.arity();
    let lin: Vec<Poly<F>> = ideal.iter().map(|g| g.homogeneous_component(1)).collect();
    let lin_basis = rref_forms(&lin, nc)?;
    let comm: Vec<Poly<F>> = scheme
        .commutator_entries::<F>()
        .iter()
        .map(|g| g.homogeneous_component(1))
        .collect();
    let commutator_agrees = rref_forms(&comm, nc)? == lin_basis;
    let report = scheme.verify_structure::<F>();
    let terms = |ts: &[Term]| ts.iter().map(|t| ring.fmt_term(t)).collect::<Vec<_>>();
    let rim: Vec<Term> = oi.rim().iter().map(|&i| oi.terms()[i].clone()).collect();
    let interior: Vec<Term> = oi.interior().iter().map(|&i| oi.terms()[i].clone()).collect();
    let arrow: Vec<Value> = (0..nc)
        .map(|k| {
            let (i, j) = scheme.c_position(k);
            json!([cring.name(k), scheme.arrow_degree(i, j)])
        })
        .collect();
    let generators: Vec<Value> = gens
        .iter()
        .map(|g| json!({"pair": pair_label(&g.pair), "entry": g.entry + 1, "poly": cring.fmt_poly(&g.poly)}))
        .collect();
    let mut text = format!(
        "O = {{{}}} (mu = {})\nborder = {{{}}} (nu = {})\n",
        terms(oi.terms()).join(", "),
        scheme.mu(),
        terms(scheme.border()).join(", "),
        scheme.nu()
    );
    let _ = writeln!(text, "rim = {{{}}}", terms(&rim).join(", "));
    let _ = writeln!(text, "{} indeterminates, {} neighbour generators", nc, gens.len());
    let _ = writeln!(text, "dim Lin = {}, expected dimension mu*n = {}", lin_basis.len(), scheme.expected_dimension());
    let _ = writeln!(
        text,
        "structure: arrow-homogeneous {}, linear parts {}, quadratic parts {}, basic in rim {}, proper classes meet rim {}",
        report.arrow_homogeneous, report.linear_parts, report.quadratic_parts, report.basic_are_rim, report.proper_classes_meet_rim
    );
    let _ = writeln!(text, "commutator linear parts agree: {commutator_agrees}");
    let mut json = json!({
        "mu": scheme.mu(),
        "nu": scheme.nu(),
        "n": scheme.n(),
        "indeterminates": nc,
        "expected_dimension": scheme.expected_dimension(),
        "order_ideal": terms(oi.terms()),
        "border": terms(scheme.border()),
        "rim": terms(&rim),
        "interior": terms(&interior),
        "rim_indeterminates": names(cring, &scheme.rim_indeterminates()),
        "arrow_degrees": arrow,
        "generators": generators,
        "dim_lin": lin_basis.len(),
        "linear_part_basis": fmt_polys(cring, &lin_basis),
        "structure": report,
        "commutator_agrees": commutator_agrees,
    });
    let mut status = RunStatus::Ok;
    if spec.reembed {
        let optimal_only = spec.optimal_only || !spec.all;
        let search = find_reembedding_via_cotangent(&ideal, optimal_only, spec.search_options())?;
        let classes = &search.classes;
        let _ = writeln!(text, "E0 = {{{}}}", names(cring, &classes.trivial).join(", "));
        for (i, c) in classes.proper.iter().enumerate() {
            let _ = writeln!(text, "E{} = {{{}}}", i + 1, names(cring, c).join(", "));
        }
        let _ = writeln!(text, "basic = {{{}}}", names(cring, &classes.basic).join(", "));
        let (j, t, st) = verified_json(cring, &search.verified, &ideal)?;
        text.push_str(&t);
        status = st;
        json["classes"] = json!({
            "trivial": names(cring, &classes.trivial),
            "basic": names(cring, &classes.basic),
            "proper": classes.proper.iter().map(|c| names(cring, c)).collect::<Vec<_>>(),
        });
        json["reembed"] = j;
    }
    Ok(Out { status, json, text })
}
