//! The acceptance suite. Every criterion prints one `PASS`/`FAIL` line to
//! standard error.

mod common;

use std::io::Write;
use std::time::Instant;

use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tmcf::analysis::{
    complexity, find_pattern, find_period, palindromic_prefixes, predicted_011_positions,
    verify_complexity_surjection,
};
use tmcf::cf::{
    check_tail_interval, convergents, evaluate, map_alphabet, tail_transform, AlphabetMap,
    Rounding,
};
use tmcf::tm::{
    check_congruences, check_lemma_exhaustive, find_triple_repeat, verify_equivalence, TmSequence,
};
use tmcf::FiniteWord;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_equivalence() -> Outcome {
    const LEN: usize = 1_000_000;
    for m in 2..=8u32 {
        let report = verify_equivalence(m, LEN as u64).map_err(|e| e.to_string())?;
        ensure(report.is_equivalent() && report.checked_length == LEN as u64, || {
            format!("m={m}: constructions differ at {:?}", report.first_mismatch)
        })?;
        let morphic = TmSequence::morphic(m).unwrap().prefix(LEN);
        let oracle = digit_sum_prefix(LEN, u64::from(m));
        if let Some(i) = morphic.symbols().iter().zip(&oracle).position(|(a, b)| a != b) {
            return Err(format!("m={m}: morphic prefix differs from digit sums at {i}"));
        }
    }
    Ok(format!("m=2..8, {LEN} terms each"))
}

fn c2_congruences() -> Outcome {
    const LEN: usize = 100_000;
    for m in 2..=8u32 {
        let report = check_congruences(m, LEN as u64).map_err(|e| e.to_string())?;
        ensure(report.all_hold(), || format!("m={m}: {report:?}"))?;

        let t = digit_sum_prefix(LEN, u64::from(m));
        let mm = m as usize;
        for n in 0..LEN / mm {
            ensure(t[n] == t[n * mm], || format!("m={m}: t_{n} != t_{}", n * mm))?;
            for r in 1..mm {
                ensure(t[n * mm + r] == (t[n * mm] + r as u32) % m, || {
                    format!("m={m}: block law fails at {}", n * mm + r)
                })?;
            }
        }
        for n in 0..LEN - 1 {
            if (t[n + 1] + m - t[n]) % m != 1 {
                ensure(n % mm == mm - 1, || format!("m={m}: step law fails at {n}"))?;
            }
        }
        let long = TmSequence::morphic(m).unwrap().prefix(1_000_000);
        ensure(find_triple_repeat(long.symbols()).is_none(), || {
            format!("m={m}: triple repeat in the first 10^6 terms")
        })?;
    }
    Ok(format!("m=2..8, indices < {LEN}; no triple repeat in 10^6 terms"))
}

/// `φ^k(j)` by direct iteration of `i ↦ i, i+1, …, i+m−1`.
fn image_power(j: u32, k: usize, m: u32) -> Vec<u32> {
    let mut w = vec![j];
    for _ in 0..k {
        w = w.iter().flat_map(|&i| (0..m).map(move |r| (i + r) % m)).collect();
    }
    w
}

fn c3_lemma() -> Outcome {
    let mut total = 0;
    for m in 2..=5u32 {
        let report = check_lemma_exhaustive(m, 5).map_err(|e| e.to_string())?;
        let expected: u64 = (2..=5).map(|l| u64::from(m).pow(l)).sum();
        ensure(report.failures.is_empty(), || format!("m={m}: failures {:?}", report.failures))?;
        ensure(report.checked == expected, || {
            format!("m={m}: checked {} words, expected {expected}", report.checked)
        })?;
        total += report.checked;

        for len in 2..=5usize {
            let images: Vec<Vec<u32>> = (0..m).map(|j| image_power(j, len - 1, m)).collect();
            for code in 0..u64::from(m).pow(len as u32) {
                let c: Vec<u32> = (0..len)
                    .scan(code, |x, _| {
                        let d = (*x % u64::from(m)) as u32;
                        *x /= u64::from(m);
                        Some(d)
                    })
                    .collect();
                let position = c[..len - 1].iter().rev().fold(0usize, |acc, &d| acc * m as usize + d as usize);
                let sum = c.iter().sum::<u32>() % m;
                ensure(images[c[len - 1] as usize][position] == sum, || format!("m={m}: {c:?}"))?;
            }
        }
    }
    Ok(format!("m=2..5, {total} digit words of length 2..=5"))
}

fn c4_complexity() -> Outcome {
    const LEN: usize = 100_000;
    const N_MAX: usize = 1000;
    let mut worst = 0.0f64;
    for m in 2..=5u32 {
        let word = TmSequence::morphic(m).unwrap().prefix(LEN);
        let profile = complexity(&word, N_MAX).map_err(|e| e.to_string())?;
        ensure(profile.table.len() == N_MAX, || format!("m={m}: short table"))?;
        let bound = u64::from(m).pow(3);
        for n in 1..=N_MAX {
            ensure(profile.p(n) <= bound * n as u64, || {
                format!("m={m}: p({n}) = {} > {bound}·{n}", profile.p(n))
            })?;
        }
        ensure(profile.violations.is_empty(), || format!("m={m}: {:?}", profile.violations))?;
        worst = worst.max(profile.ratio_diagnostic().ratio / bound as f64);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = 0;
    for len in [1usize, 2, 7, 50, 333, 1000, 1999, 2000] {
        for m in 2..=5u32 {
            let mut words = vec![TmSequence::digit_sum(m).unwrap().prefix(len).into_symbols()];
            words.push((0..len).map(|_| rng.gen_range(0..m)).collect());
            words.push((0..len).map(|i| if rng.gen_bool(0.9) { (i % 3) as u32 % m } else { 0 }).collect());
            for w in words {
                let n_max = len.min(50);
                let word = FiniteWord::from_symbols(m, w.clone()).unwrap();
                let profile = complexity(&word, n_max).map_err(|e| e.to_string())?;
                for n in 1..=n_max {
                    let naive = naive_complexity(&w, n);
                    ensure(profile.p(n) == naive, || {
                        format!("m={m}, L={len}, n={n}: fast {} vs naive {naive}", profile.p(n))
                    })?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!(
        "m=2..5, L={LEN}, n<={N_MAX}, zero violations (max p(n)/(m³n) = {worst:.4}); {cases} oracle cases"
    ))
}

fn c5_low_order() -> Outcome {
    let expected = [2u64, 4, 6, 10, 12];
    let tm = TmSequence::morphic(2).unwrap();
    let mut len = 1 << 10;
    let mut previous: Option<Vec<u64>> = None;
    loop {
        let word = tm.prefix(len);
        let fast = complexity(&word, 5).map_err(|e| e.to_string())?.table;
        let naive: Vec<u64> = (1..=5).map(|n| naive_complexity(word.symbols(), n)).collect();
        ensure(fast == naive, || format!("L={len}: fast {fast:?} vs naive {naive:?}"))?;
        if previous.as_ref() == Some(&fast) {
            ensure(fast == expected, || format!("stable at {fast:?}"))?;
            return Ok(format!("p(1..5) = {fast:?}, stable from L={} to L={len}", len / 2));
        }
        previous = Some(fast);
        len *= 2;
        ensure(len <= 1 << 20, || "no stable table by L=2^20".into())?;
    }
}

fn c6_aperiodicity() -> Outcome {
    const LEN: usize = 100_000;
    for m in 2..=8u32 {
        let word = TmSequence::morphic(m).unwrap().prefix(LEN);
        if let Some(w) = find_period(&word, 100, 1000).map_err(|e| e.to_string())? {
            return Err(format!("m={m}: spurious period {w:?}"));
        }
        // Planted: make the tail from a = 37 repeat with period 17.
        let (a, b) = (37usize, 17usize);
        let mut planted = word.symbols().to_vec();
        for i in a + b..LEN {
            planted[i] = planted[i - b];
        }
        let planted_word = FiniteWord::from_symbols(m, planted.clone()).unwrap();
        let found = find_period(&planted_word, 100, 1000).map_err(|e| e.to_string())?;
        let found = found.ok_or_else(|| format!("m={m}: planted period missed"))?;
        ensure(found.b <= b && found.a <= a && found.is_valid_on(&planted), || {
            format!("m={m}: bad witness {found:?}")
        })?;
        let naive_ok = (found.a..LEN - found.b).all(|i| planted[i] == planted[i + found.b]);
        ensure(naive_ok, || format!("m={m}: witness {found:?} fails the direct check"))?;
    }
    Ok(format!("m=2..8, prefix {LEN}, a<=100, b<=1000; planted period found"))
}

fn c7_palindromes_patterns() -> Outcome {
    const L: usize = 100_000;
    let tm2 = TmSequence::morphic(2).unwrap().prefix(L);
    let ladder = palindromic_prefixes(&tm2);
    let got: Vec<usize> = ladder.indices.iter().copied().filter(|&i| i >= 3).collect();
    let expected: Vec<usize> = (1..)
        .map(|j| 4usize.pow(j))
        .take_while(|&p| p <= L)
        .map(|p| p - 1)
        .collect();
    ensure(got == expected, || format!("ladder {got:?}, expected {expected:?}"))?;
    let s = tm2.symbols();
    for &i in &got {
        ensure(s[..=i].iter().eq(s[..=i].iter().rev()), || format!("prefix to {i} not a palindrome"))?;
    }

    let mut validated = 0;
    for m in 3..=5u32 {
        let word = TmSequence::morphic(m).unwrap().prefix(1_000_000);
        let hits = find_pattern(&word, &[1, 1, 0]);
        ensure(hits.is_empty(), || format!("m={m}: 110 at {:?}", &hits[..hits.len().min(5)]))?;
        let direct = word.symbols().windows(3).position(|w| w == [1, 1, 0]);
        ensure(direct.is_none(), || format!("m={m}: 110 at {direct:?}"))?;

        let predicted = predicted_011_positions(m, m + 4).map_err(|e| e.to_string())?;
        ensure(predicted.len() == 6, || format!("m={m}: {} predictions", predicted.len()))?;
        for p in &predicted {
            let terms = [0, 1, 2].map(|d| digit_sum_term(p.position + d, u64::from(m)));
            ensure(terms == [0, 1, 1] && p.is_valid(), || format!("m={m}: {p:?} gives {terms:?}"))?;
            validated += 1;
        }
    }
    Ok(format!("TM_2 ladder {expected:?}; no 110 for m=3..5; {validated} predicted 011 positions"))
}

fn c8_surjection() -> Outcome {
    let cases = [(2u32, 1..=3usize), (3, 2..=8)];
    let mut summary = Vec::new();
    for (m, ns) in cases {
        for n in ns {
            let r = (1..).find(|&r| (n as u64) < u64::from(m).pow(r)).unwrap();
            let report = verify_complexity_surjection(m, r, n, None, 0).map_err(|e| e.to_string())?;
            ensure(report.is_onto() && report.checked == report.factor_count, || {
                format!("m={m}, n={n}: uncovered {:?}", report.uncovered)
            })?;
            let oracle = naive_complexity(&digit_sum_prefix(report.prefix_length, u64::from(m)), n);
            ensure(report.factor_count as u64 == oracle, || {
                format!("m={m}, n={n}: {} factors, oracle {oracle}", report.factor_count)
            })?;
            summary.push(format!("({m},{n})"));
        }
    }
    Ok(format!("onto for {}", summary.join(" ")))
}

fn c9_continued_fractions() -> Outcome {
    for m in [2u32, 3] {
        let tm = TmSequence::morphic(m).unwrap();
        let map = AlphabetMap::shifted(m).map_err(|e| e.to_string())?;
        let pairs = convergents(map_alphabet(&tm, &map).unwrap(), 1000).map_err(|e| e.to_string())?;
        ensure(pairs.len() == 1000, || format!("m={m}: {} convergents", pairs.len()))?;
        for pair in &pairs {
            let n = pair.index as i64;
            let det = &pair.p * &pair.q_prev - &pair.p_prev * &pair.q;
            let sign = if (n - 1).rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
            ensure(det == sign, || format!("m={m}: determinant {det} at n={n}"))?;
            ensure(pair.p.gcd(&pair.q).is_one(), || format!("m={m}: gcd ≠ 1 at n={n}"))?;
        }
        for pair in pairs.iter().take(200) {
            let f = fibonacci(pair.index);
            ensure(pair.q >= f, || format!("m={m}: q_{} = {} < F = {f}", pair.index, pair.q))?;
        }
    }
    let golden_pairs = convergents(std::iter::repeat(1), 200).unwrap();
    for pair in &golden_pairs {
        ensure(pair.q >= fibonacci(pair.index), || format!("golden q_{}", pair.index))?;
    }

    let golden = evaluate(std::iter::repeat(1), 10, Rounding::Truncate).map_err(|e| e.to_string())?;
    ensure(golden.decimal == "0.6180339887", || format!("golden ratio gave {}", golden.decimal))?;
    ensure(golden.decimal == golden_conjugate_digits(10), || "oracle disagrees".into())?;

    let tm2 = TmSequence::morphic(2).unwrap();
    let f = AlphabetMap::new(vec![1, 2]).unwrap();
    let d12 = evaluate(map_alphabet(&tm2, &f).unwrap(), 12, Rounding::Truncate).map_err(|e| e.to_string())?;
    let d24 = evaluate(map_alphabet(&tm2, &f).unwrap(), 24, Rounding::Truncate).map_err(|e| e.to_string())?;
    ensure(d24.decimal.starts_with(&d12.decimal), || {
        format!("D=12 {} is not a prefix of D=24 {}", d12.decimal, d24.decimal)
    })?;
    ensure(d24.enclosure.width().abs() < num_rational::BigRational::new(BigInt::one(), BigInt::from(10).pow(24)), || {
        "D=24 enclosure too wide".into()
    })?;
    Ok(format!(
        "1000 convergents for m=2,3; golden {}; TM_2 over {{1,2}}: {} ⊑ {}",
        golden.decimal, d12.decimal, d24.decimal
    ))
}

fn c10_tail_transforms() -> Outcome {
    let tm2 = TmSequence::morphic(2).unwrap();
    let f = AlphabetMap::new(vec![1, 2]).unwrap();
    let quotients: Vec<u64> = map_alphabet(&tm2, &f).unwrap().take(200).collect();
    let pairs = convergents(quotients.iter().copied(), 60).unwrap();
    for n in 2..=50usize {
        let (t, s) = tail_transform(&pairs[n - 2]).map_err(|e| e.to_string())?;
        ensure(t.compose(&s).is_identity() && s.compose(&t).is_identity(), || {
            format!("n={n}: T∘S = {}", t.compose(&s))
        })?;
        let check = check_tail_interval(&quotients, n, n + 40).map_err(|e| e.to_string())?;
        ensure(check.is_consistent(), || format!("n={n}: {check:?}"))?;
        // T applied to a tail convergent is a convergent of α itself.
        let tail = fold_continued_fraction(&quotients[n - 1..n + 10]).recip();
        let folded = t.apply(&tail).ok_or_else(|| format!("n={n}: pole"))?;
        ensure(folded == fold_continued_fraction(&quotients[..n + 10]), || {
            format!("n={n}: T(α_n) does not fold back")
        })?;
    }
    Ok("T∘S = S∘T = id and α_n enclosures consistent for n = 2..=50".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("definition equivalence", c1_equivalence),
        ("congruence suite", c2_congruences),
        ("lemma recursion", c3_lemma),
        ("complexity bound", c4_complexity),
        ("TM_2 low-order complexity", c5_low_order),
        ("aperiodicity refutation", c6_aperiodicity),
        ("palindromes and patterns", c7_palindromes_patterns),
        ("surjection", c8_surjection),
        ("continued fractions", c9_continued_fractions),
        ("tail transforms", c10_tail_transforms),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, run)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let outcome = std::panic::catch_unwind(run)
                        .unwrap_or_else(|_| Err("panicked".into()));
                    (outcome, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    // Written to stderr directly so the lines survive libtest's capture.
    let mut log = std::io::stderr().lock();
    let mut failed = Vec::new();
    for (i, ((name, _), (outcome, secs))) in criteria.iter().zip(&results).enumerate() {
        match outcome {
            Ok(detail) => writeln!(log, "criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1).unwrap(),
            Err(why) => {
                writeln!(log, "criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
