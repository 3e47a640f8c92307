use std::io::{self, Write};

use serde::Serialize;
use tmcf::analysis::{
    complexity as complexity_profile, find_pattern, find_period, palindromic_prefixes,
    predicted_011_positions, verify_complexity_surjection,
};
use tmcf::cf::{evaluate, AlphabetMap, ConvergentStream, Rounding};
use tmcf::store::PrefixCache;
use tmcf::tm::{Construction, DigitSumStream, TmSequence};
use tmcf::{FiniteWord, Symbol};

use crate::args::{
    CfArgs, ComplexityArgs, ConstructionArg, GenArgs, PatternArgs, PeriodArgs, PrefixArgs,
    RoundingArg, RunConfig, SurjectionArgs,
};
use crate::error::{Failure, Outcome};
use crate::output::{Emitter, Record};

/// Cache directory for materialized prefixes; unset means no caching.
pub const CACHE_ENV: &str = "TMCF_CACHE_DIR";

pub fn open(run: &RunConfig) -> Outcome<Emitter> {
    Ok(Emitter::open(run.format, run.out.as_deref())?)
}

fn len_usize(len: u64) -> Outcome<usize> {
    usize::try_from(len).map_err(|_| Failure::Usage(format!("--len {len} is too large")))
}

/// The first `len` terms of the morphic construction, through the cache
/// when one is configured.
pub fn load_prefix(m: u32, construction: Construction, len: usize) -> Outcome<Vec<Symbol>> {
    let seq = TmSequence::new(m, construction)?;
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => Ok(PrefixCache::new(dir).prefix(&seq, len)?),
        _ => Ok(seq.prefix(len).into_symbols()),
    }
}

fn construction(arg: ConstructionArg) -> Construction {
    match arg {
        ConstructionArg::DigitSum => Construction::DigitSum,
        ConstructionArg::Morphic => Construction::Morphic,
    }
}

#[derive(Serialize)]
pub struct TermRecord {
    pub index: u64,
    pub symbol: Symbol,
    pub quotient: Option<u64>,
}

impl Record for TermRecord {
    const KIND: &'static str = "term";
    const FIELDS: &'static [&'static str] = &["index", "symbol", "quotient"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.quotient.unwrap_or(u64::from(self.symbol)))
    }
}

/// Plain output is the terms separated by spaces on one line (the mapped
/// quotients when `--map` is given); the other formats give one record per
/// term.
pub fn gen(args: &GenArgs) -> Outcome {
    let m = args.run.m;
    let map = args.map.as_deref().map(|s| AlphabetMap::parse(m, s)).transpose()?;
    let mut out = open(&args.run)?;
    let cached = std::env::var_os(CACHE_ENV).is_some_and(|d| !d.is_empty());
    let seq = TmSequence::new(m, construction(args.construction))?;
    let terms: Box<dyn Iterator<Item = Symbol> + '_> = if cached {
        let prefix = load_prefix(m, construction(args.construction), len_usize(args.len)?)?;
        Box::new(prefix.into_iter())
    } else {
        match args.construction {
            ConstructionArg::DigitSum => Box::new(DigitSumStream::starting_at(0, m).take(len_usize(args.len)?)),
            ConstructionArg::Morphic => Box::new(seq.word().iter().take(len_usize(args.len)?)),
        }
    };

    if let Some(w) = out.plain_writer() {
        for (i, s) in terms.enumerate() {
            if i > 0 {
                w.write_all(b" ")?;
            }
            match &map {
                Some(f) => write!(w, "{}", f.apply(s))?,
                None => write!(w, "{s}")?,
            }
        }
        w.write_all(b"\n")?;
    } else {
        for (i, s) in terms.enumerate() {
            out.emit(&TermRecord {
                index: i as u64,
                symbol: s,
                quotient: map.as_ref().map(|f| f.apply(s)),
            })?;
        }
    }
    Ok(out.finish()?)
}

#[derive(Serialize)]
pub struct ConvergentRecord {
    pub n: usize,
    pub a: u64,
    pub p: String,
    pub q: String,
}

impl Record for ConvergentRecord {
    const KIND: &'static str = "convergent";
    const FIELDS: &'static [&'static str] = &["n", "a", "p", "q"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{} {} {}/{}", self.n, self.a, self.p, self.q)
    }
}

#[derive(Serialize)]
pub struct DecimalRecord {
    pub digits: usize,
    pub rounding: &'static str,
    pub decimal: String,
    pub convergents_used: usize,
    /// Width of the certified enclosure, as an exact fraction.
    pub error_bound: String,
}

impl Record for DecimalRecord {
    const KIND: &'static str = "decimal";
    const FIELDS: &'static [&'static str] =
        &["digits", "rounding", "decimal", "convergents_used", "error_bound"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.decimal)
    }
}

/// With neither `--convergents` nor `--digits`, prints 30 digits.
pub fn cf(args: &CfArgs) -> Outcome {
    let m = args.run.m;
    let map = AlphabetMap::parse(m, &args.map)?;
    let quotients = move || {
        let map = map.clone();
        DigitSumStream::starting_at(0, m).map(move |s| map.apply(s))
    };
    let mut out = open(&args.run)?;

    if let Some(n) = args.convergents {
        let mut stream = ConvergentStream::new();
        for (k, a) in quotients().take(n).enumerate() {
            let pair = stream.push(a)?;
            out.emit(&ConvergentRecord {
                n: k + 1,
                a,
                p: pair.p.to_string(),
                q: pair.q.to_string(),
            })?;
        }
    }
    let digits = match (args.digits, args.convergents) {
        (Some(d), _) => Some(d),
        (None, None) => Some(30),
        (None, Some(_)) => None,
    };
    if let Some(d) = digits {
        let (rounding, name) = match args.rounding {
            RoundingArg::Truncate => (Rounding::Truncate, "truncate"),
            RoundingArg::HalfEven => (Rounding::HalfEven, "half-even"),
        };
        let e = evaluate(quotients(), d, rounding)?;
        out.emit(&DecimalRecord {
            digits: d,
            rounding: name,
            decimal: e.decimal.clone(),
            convergents_used: e.convergents_used,
            error_bound: e.error_bound().to_string(),
        })?;
    }
    Ok(out.finish()?)
}

#[derive(Serialize)]
pub struct ComplexityRecord {
    pub n: usize,
    pub p: u64,
    pub bound: u64,
}

impl Record for ComplexityRecord {
    const KIND: &'static str = "complexity";
    const FIELDS: &'static [&'static str] = &["n", "p", "bound"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{} {} {}", self.n, self.p, self.bound)
    }
}

#[derive(Serialize)]
pub struct RatioRecord {
    pub n: usize,
    pub p: u64,
    pub ratio: f64,
    pub bound_factor: u64,
    pub within_bound: bool,
}

impl Record for RatioRecord {
    const KIND: &'static str = "ratio";
    const FIELDS: &'static [&'static str] = &["n", "p", "ratio", "bound_factor", "within_bound"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(
            out,
            "max p(n)/n = {:.6} at n = {} (bound factor {}, {})",
            self.ratio,
            self.n,
            self.bound_factor,
            if self.within_bound { "within bound" } else { "exceeds bound" }
        )
    }
}

pub fn complexity(args: &ComplexityArgs) -> Outcome {
    let m = args.run.m;
    let len = len_usize(args.len)?;
    let word = FiniteWord::from_symbols(m, load_prefix(m, Construction::Morphic, len)?)?;
    let profile = complexity_profile(&word, args.n_max)?;
    let mut out = open(&args.run)?;
    for n in 1..=profile.n_max() {
        out.emit(&ComplexityRecord {
            n,
            p: profile.p(n),
            bound: profile.bound_factor.saturating_mul(n as u64),
        })?;
    }
    let d = profile.ratio_diagnostic();
    out.emit(&RatioRecord {
        n: d.n,
        p: d.p,
        ratio: d.ratio,
        bound_factor: d.bound_factor,
        within_bound: d.within_bound,
    })?;
    Ok(out.finish()?)
}

#[derive(Serialize)]
pub struct PeriodRecord {
    pub prefix_length: usize,
    pub a_max: usize,
    pub b_max: usize,
    pub found: bool,
    pub a: Option<usize>,
    pub b: Option<usize>,
}

impl Record for PeriodRecord {
    const KIND: &'static str = "period";
    const FIELDS: &'static [&'static str] = &["prefix_length", "a_max", "b_max", "found", "a", "b"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        match (self.a, self.b) {
            (Some(a), Some(b)) => writeln!(out, "period {b} from index {a} on the first {} terms", self.prefix_length),
            _ => writeln!(
                out,
                "no period with a <= {}, b <= {} on the first {} terms",
                self.a_max, self.b_max, self.prefix_length
            ),
        }
    }
}

pub fn period(args: &PeriodArgs) -> Outcome {
    let m = args.run.m;
    let len = len_usize(args.len)?;
    let word = FiniteWord::from_symbols(m, load_prefix(m, Construction::Morphic, len)?)?;
    let witness = find_period(&word, args.a_max, args.b_max)?;
    let mut out = open(&args.run)?;
    out.emit(&PeriodRecord {
        prefix_length: len,
        a_max: args.a_max,
        b_max: args.b_max,
        found: witness.is_some(),
        a: witness.map(|w| w.a),
        b: witness.map(|w| w.b),
    })?;
    Ok(out.finish()?)
}

#[derive(Serialize)]
pub struct PalindromeRecord {
    pub index: usize,
    pub length: usize,
}

impl Record for PalindromeRecord {
    const KIND: &'static str = "palindrome";
    const FIELDS: &'static [&'static str] = &["index", "length"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.index)
    }
}

pub fn palindrome(args: &PrefixArgs) -> Outcome {
    let m = args.run.m;
    let len = len_usize(args.len)?;
    let word = FiniteWord::from_symbols(m, load_prefix(m, Construction::Morphic, len)?)?;
    let ladder = palindromic_prefixes(&word);
    let mut out = open(&args.run)?;
    for &index in &ladder.indices {
        out.emit(&PalindromeRecord { index, length: index + 1 })?;
    }
    Ok(out.finish()?)
}

#[derive(Serialize)]
pub struct OccurrenceRecord {
    pub position: usize,
}

impl Record for OccurrenceRecord {
    const KIND: &'static str = "occurrence";
    const FIELDS: &'static [&'static str] = &["position"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.position)
    }
}

#[derive(Serialize)]
pub struct PredictionRecord {
    /// `None` for the base position `m^{m−1} − 2`.
    pub k: Option<u32>,
    pub position: u64,
    pub valid: bool,
    /// Whether the prefix shows 011 there; `None` past its end.
    pub observed: Option<bool>,
}

impl Record for PredictionRecord {
    const KIND: &'static str = "prediction";
    const FIELDS: &'static [&'static str] = &["k", "position", "valid", "observed"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        let k = self.k.map_or("base".to_string(), |k| format!("k={k}"));
        let observed = match self.observed {
            Some(true) => "seen in prefix",
            Some(false) => "NOT seen in prefix",
            None => "beyond prefix",
        };
        writeln!(
            out,
            "predicted 011 at {} ({k}): {}, {observed}",
            self.position,
            if self.valid { "valid" } else { "INVALID" }
        )
    }
}

pub fn parse_pattern(m: u32, s: &str) -> Outcome<Vec<Symbol>> {
    let pattern = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<Symbol>()
                .ok()
                .filter(|&v| v < m)
                .ok_or_else(|| Failure::Usage(format!("pattern entry {x:?} is not a symbol below {m}")))
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(pattern)
}

/// Occurrences of `--pattern`, then for `m ≥ 3` the predicted positions of
/// 011.
pub fn patterns(args: &PatternArgs) -> Outcome {
    let m = args.run.m;
    let len = len_usize(args.len)?;
    let pattern = parse_pattern(m, &args.pattern)?;
    let word = FiniteWord::from_symbols(m, load_prefix(m, Construction::Morphic, len)?)?;
    let mut out = open(&args.run)?;
    for position in find_pattern(&word, &pattern) {
        out.emit(&OccurrenceRecord { position })?;
    }
    if m >= 3 {
        let k_max = args.k_max.unwrap_or(m + 4);
        for p in predicted_011_positions(m, k_max)? {
            let observed = usize::try_from(p.position)
                .ok()
                .filter(|&i| i + 3 <= len)
                .map(|i| word.symbols()[i..i + 3] == [0, 1, 1]);
            out.emit(&PredictionRecord {
                k: p.k,
                position: p.position,
                valid: p.is_valid(),
                observed,
            })?;
        }
    }
    Ok(out.finish()?)
}

#[derive(Serialize)]
pub struct SurjectionRecord {
    pub m: u32,
    pub r: u32,
    pub n: usize,
    pub prefix_length: usize,
    pub factor_count: usize,
    pub checked: usize,
    pub uncovered: usize,
    pub onto: bool,
}

impl Record for SurjectionRecord {
    const KIND: &'static str = "surjection";
    const FIELDS: &'static [&'static str] =
        &["m", "r", "n", "prefix_length", "factor_count", "checked", "uncovered", "onto"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(
            out,
            "m={} r={} n={}: {} of {} factors checked, {} uncovered",
            self.m, self.r, self.n, self.checked, self.factor_count, self.uncovered
        )
    }
}

pub fn surjection(args: &SurjectionArgs) -> Outcome {
    let m = args.run.m;
    let n = usize::try_from(args.n).map_err(|_| Failure::Usage("--n is too large".into()))?;
    let r = (1..=64u32)
        .find(|&r| u64::from(m).checked_pow(r).is_none_or(|b| args.n < b))
        .expect("m^64 exceeds any u64");
    let report = verify_complexity_surjection(m, r, n, args.sample, args.seed)?;
    let mut out = open(&args.run)?;
    out.emit(&SurjectionRecord {
        m,
        r,
        n,
        prefix_length: report.prefix_length,
        factor_count: report.factor_count,
        checked: report.checked,
        uncovered: report.uncovered.len(),
        onto: report.is_onto(),
    })?;
    out.finish()?;
    if report.is_onto() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "factor {:?} has no preimage",
            report.uncovered[0]
        )))
    }
}
