use std::io::{self, Write};

use serde::Serialize;
use tmcf::analysis::{complexity, find_pattern, find_period, palindromic_prefixes, predicted_011_positions};
use tmcf::cf::{check_convergents, convergents, AlphabetMap};
use tmcf::tm::{
    check_congruences_on, check_lemma_exhaustive, find_triple_repeat, tm_digit_sum,
    verify_equivalence_against, Construction,
};
use tmcf::{Error, FiniteWord, Symbol};

use crate::args::VerifyArgs;
use crate::commands::{load_prefix, open};
use crate::error::{Failure, Outcome};
use crate::output::Record;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRecord {
    pub suite: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl Record for SuiteRecord {
    const KIND: &'static str = "suite";
    const FIELDS: &'static [&'static str] = &["suite", "passed", "checked", "detail", "counterexample"];
    fn plain(&self, out: &mut dyn Write) -> io::Result<()> {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(out, "{status} {}: {}", self.suite, self.detail)?;
        if let Some(c) = &self.counterexample {
            write!(out, "; counterexample: {c}")?;
        }
        writeln!(out)
    }
}

fn suite(name: &'static str, checked: u64, detail: String, counterexample: Option<String>) -> SuiteRecord {
    SuiteRecord {
        suite: name,
        passed: counterexample.is_none(),
        checked,
        detail,
        counterexample,
    }
}

/// Largest digit-word length (2..=5) whose exhaustive lemma pass stays small.
fn lemma_length(m: u32) -> Option<usize> {
    (2..=5usize)
        .rev()
        .find(|&l| u64::from(m).checked_pow(l as u32).is_some_and(|n| n <= 1 << 21))
}

struct Input<'a> {
    m: u32,
    args: &'a VerifyArgs,
    word: FiniteWord,
}

fn equivalence(input: &Input) -> Result<SuiteRecord, Error> {
    let t = input.word.symbols();
    let report = verify_equivalence_against(input.m, t)?;
    let counterexample = match report.first_mismatch {
        Some(i) => Some(format!(
            "index {i}: morphic term {}, digit sum {}",
            t[i as usize],
            tm_digit_sum(i, input.m)?
        )),
        None => None,
    };
    Ok(suite(
        "definition equivalence (digit sum = morphic fixed point)",
        report.checked_length,
        format!("{} terms, {} lemma samples", report.checked_length, report.lemma_samples),
        counterexample,
    ))
}

fn congruences(input: &Input) -> Result<SuiteRecord, Error> {
    let t = input.word.symbols();
    let report = check_congruences_on(input.m, t)?;
    let counterexample = [
        ("t_n = t_{nm}", report.scaling.first_violation),
        ("t_{n+1} - t_n != 1 only for n = m-1 mod m", report.step.first_violation),
        ("t_{nm+r} = t_{nm} + r", report.block.first_violation),
    ]
    .iter()
    .find_map(|(law, v)| v.map(|n| format!("{law} fails at n = {n}")))
    .or_else(|| find_triple_repeat(t).map(|i| format!("t_{i} = t_{} = t_{}", i + 1, i + 2)));
    Ok(suite(
        "congruences and no triple repeat",
        report.length,
        format!("indices below {}", report.length),
        counterexample,
    ))
}

fn lemma(input: &Input) -> Result<SuiteRecord, Error> {
    let Some(max_len) = lemma_length(input.m) else {
        return Ok(suite("lemma recursion", 0, "skipped: m^2 too large to enumerate".into(), None));
    };
    let report = check_lemma_exhaustive(input.m, max_len)?;
    Ok(suite(
        "lemma recursion (phi^{n+1}(c_{n+1}) at [c_0..c_n] = sum of digits)",
        report.checked,
        format!("all {} digit words of length 2..={max_len}", report.checked),
        report.failures.first().map(|c| format!("digits {c:?}")),
    ))
}

fn aperiodicity(input: &Input) -> Result<SuiteRecord, Error> {
    let len = input.word.len();
    let a_max = input.args.a_max.min(len / 4);
    let b_max = input.args.b_max.min((len - 1 - a_max) / 2).max(1);
    let witness = find_period(&input.word, a_max, b_max)?;
    Ok(suite(
        "not eventually periodic",
        len as u64,
        format!("no period with a <= {a_max}, b <= {b_max}"),
        witness.map(|w| format!("period {} from index {}", w.b, w.a)),
    ))
}

fn palindromes(input: &Input) -> Result<SuiteRecord, Error> {
    let (m, t) = (input.m, input.word.symbols());
    let ladder = palindromic_prefixes(&input.word);
    if !ladder.recheck(t) {
        return Ok(suite("palindromes", 0, String::new(), Some("ladder fails its recheck".into())));
    }
    if m == 2 {
        let got: Vec<usize> = ladder.indices.iter().copied().filter(|&i| i >= 3).collect();
        let expected: Vec<usize> = (1..)
            .map(|j| 4usize.pow(j))
            .take_while(|&p| p <= t.len())
            .map(|p| p - 1)
            .collect();
        let counterexample = (got != expected).then(|| format!("ladder {got:?}, expected {expected:?}"));
        return Ok(suite(
            "palindromic prefixes end at 4^j - 1",
            t.len() as u64,
            format!("ladder {got:?}"),
            counterexample,
        ));
    }

    // A palindromic prefix covering an occurrence of 011 would contain 110.
    let forbidden = find_pattern(&input.word, &[1, 1, 0]);
    let first_011 = find_pattern(&input.word, &[0, 1, 1]).first().copied();
    let mut counterexample = forbidden.first().map(|i| format!("110 at {i}"));
    if let (None, Some(j)) = (&counterexample, first_011) {
        counterexample = ladder
            .indices
            .iter()
            .find(|&&i| i >= j + 2)
            .map(|i| format!("palindromic prefix ending at {i} covers 011 at {j}"));
    }
    let mut k_max = m + 4;
    let predicted = loop {
        match predicted_011_positions(m, k_max) {
            Ok(p) => break p,
            Err(Error::Overflow(_)) if k_max > m => k_max -= 1,
            Err(Error::Overflow(_)) => break predicted_011_positions(m, 0)?,
            Err(e) => return Err(e),
        }
    };
    if counterexample.is_none() {
        counterexample = predicted
            .iter()
            .find(|p| {
                let seen = usize::try_from(p.position)
                    .ok()
                    .filter(|&i| i + 3 <= t.len())
                    .map(|i| t[i..i + 3] == [0, 1, 1]);
                !p.is_valid() || seen == Some(false)
            })
            .map(|p| format!("predicted 011 at {} does not hold", p.position));
    }
    Ok(suite(
        "not eventually palindromic (no 110, 011 at predicted positions)",
        t.len() as u64,
        format!(
            "palindromic prefixes end at {:?}; {} predicted 011 positions",
            ladder.indices,
            predicted.len()
        ),
        counterexample,
    ))
}

fn complexity_bound(input: &Input) -> Result<SuiteRecord, Error> {
    let n_max = input.args.n_max.clamp(1, input.word.len());
    let profile = complexity(&input.word, n_max)?;
    let d = profile.ratio_diagnostic();
    Ok(suite(
        "subword complexity p(n) <= m^3 n",
        n_max as u64,
        format!("n <= {n_max}, max p(n)/n = {:.4} at n = {} (bound {})", d.ratio, d.n, d.bound_factor),
        profile
            .violations
            .first()
            .map(|&n| format!("p({n}) = {} > {}", profile.p(n), profile.bound_factor * n as u64)),
    ))
}

fn convergent_invariants(input: &Input) -> Result<SuiteRecord, Error> {
    let map = AlphabetMap::shifted(input.m)?;
    let n = input.args.convergents.clamp(1, input.word.len());
    let quotients = input.word.symbols().iter().map(|&s| map.apply(s));
    let pairs = convergents(quotients, n)?;
    let check = check_convergents(&pairs);
    let counterexample = [
        ("determinant", check.determinant),
        ("coprimality", check.coprime),
        ("increasing denominators", check.increasing_denominators),
        ("Fibonacci growth", check.fibonacci_growth),
        ("bracketing", check.bracketing),
    ]
    .iter()
    .find_map(|(name, v)| v.map(|i| format!("{name} fails at convergent {i}")));
    Ok(suite(
        "convergent invariants (canonical map j -> j+1)",
        check.checked as u64,
        format!("{} convergents", check.checked),
        counterexample,
    ))
}

type Suite = fn(&Input) -> Result<SuiteRecord, Error>;

const SUITES: [Suite; 7] = [
    equivalence,
    congruences,
    lemma,
    aperiodicity,
    palindromes,
    complexity_bound,
    convergent_invariants,
];

pub fn verify_all(args: &VerifyArgs) -> Outcome {
    let m = args.run.m;
    let len = usize::try_from(args.len).map_err(|_| Failure::Usage("--len is too large".into()))?;
    let mut terms: Vec<Symbol> = load_prefix(m, Construction::Morphic, len)?;
    if let Some(i) = args.inject_fault {
        let t = terms
            .get_mut(i)
            .ok_or_else(|| Failure::Usage(format!("fault index {i} is past --len {len}")))?;
        *t = (*t + 1) % m;
    }
    let input = Input {
        m,
        args,
        word: FiniteWord::from_symbols(m, terms)?,
    };

    let results: Vec<Result<SuiteRecord, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|run| {
                let input = &input;
                scope.spawn(move || run(input))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });

    let mut out = open(&args.run)?;
    let mut first_failure = None;
    for result in results {
        let record = result?;
        if first_failure.is_none() {
            if let Some(c) = &record.counterexample {
                first_failure = Some(format!("{}: {c}", record.suite));
            }
        }
        out.emit(&record)?;
    }
    out.finish()?;
    match first_failure {
        Some(f) => Err(Failure::Verification(f)),
        None => Ok(()),
    }
}
