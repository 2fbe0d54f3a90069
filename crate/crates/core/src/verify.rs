//! Self-check suites printing one `key=value` line per check.

use std::fmt;

use crate::bounds::{exact_formula, f1_exact, upper_bound_d};
use crate::constructions::{cross_grid, parity_grid, quad_grid, stripe_grid};
use crate::error::Result;
use crate::grid::{cell_count, Grid};
use crate::lines::{count_lines, count_segments, enumerate_lines, enumerate_segments};
use crate::occurrence::{count_word_set, is_diagonal_latin};
use crate::solver::{solve, solve_set, SolveConfig};
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub expected: String,
    pub got: String,
}

impl Check {
    fn new(id: impl Into<String>, expected: impl ToString, got: impl ToString) -> Self {
        Self {
            id: id.into(),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        write!(
            f,
            "check={} expected={} got={} status={status}",
            self.id, self.expected, self.got
        )
    }
}

fn word(s: &str) -> Word {
    Word::parse(s).expect("suite words are valid")
}

fn solved(w: &str, d: usize, workers: usize) -> Result<String> {
    let w = word(w);
    let r = solve(
        &w,
        w.len(),
        d,
        &SolveConfig {
            workers,
            ..SolveConfig::default()
        },
    )?;
    Ok(if r.complete {
        r.optimum.to_string()
    } else {
        format!("[{},{}]", r.optimum, r.upper)
    })
}

fn binary_words(n: usize) -> impl Iterator<Item = Word> {
    (0..1u32 << n).filter_map(move |m| {
        let s: String = (0..n)
            .map(|i| if m >> (n - 1 - i) & 1 == 0 { 'A' } else { 'M' })
            .collect();
        let w = word(&s);
        w.stats().binary.then_some(w)
    })
}

fn line_identities(out: &mut Vec<Check>) -> Result<()> {
    for n in 2..=6 {
        for d in 1..=5 {
            let counts = count_lines(n, d)?;
            let mut tally = vec![0u128; d];
            for l in enumerate_lines(n, d)? {
                tally[l.weight() - 1] += 1;
            }
            out.push(Check::new(
                format!("lines(n={n},d={d})"),
                format!("{:?}", counts.per_weight),
                format!("{tally:?}"),
            ));
        }
    }
    for n in 2..=6 {
        for d in 1..=3 {
            for k in 2..=n {
                let closed = count_segments(n, d, k)?;
                let got = enumerate_segments(n, d, k)?.count();
                out.push(Check::new(format!("segments(n={n},d={d},k={k})"), closed, got));
            }
        }
    }
    Ok(())
}

fn fast(out: &mut Vec<Check>, workers: usize) -> Result<()> {
    line_identities(out)?;
    out.push(Check::new("f(AMM,3,2)", 5, solved("AMM", 2, workers)?));
    for (w, v) in [("AMM", 5), ("AAMMM", 8), ("AMAM", 8), ("AMA", 6)] {
        let got = exact_formula(&word(w)).map_or("none".to_string(), |e| e.value.to_string());
        out.push(Check::new(format!("exact({w})"), v, got));
    }
    let a = |c: &str| c.chars().next().unwrap();
    out.push(Check::new(
        "cross(BAACA)>=7",
        true,
        cross_grid(&word("BAACA"), a("A"))?.achieved >= 7,
    ));
    out.push(Check::new(
        "cross(ABACA)>=8",
        true,
        cross_grid(&word("ABACA"), a("A"))?.achieved >= 8,
    ));
    out.push(Check::new(
        "quad(AMAAM)>=8",
        true,
        quad_grid(&word("AMAAM"), 'A', 'M')?.achieved >= 8,
    ));
    out.push(Check::new(
        "stripe(AMAAM)>=7",
        true,
        stripe_grid(&word("AMAAM"))?.achieved >= 7,
    ));
    for d in 1..=6 {
        let w = word("AM");
        out.push(Check::new(
            format!("parity(AM,d={d})"),
            upper_bound_d(&w, d)?.value,
            parity_grid(&w, d)?.achieved,
        ));
    }
    let f1 = f1_exact(&word("ABCD"), 7)?;
    out.push(Check::new(
        "f1(ABCD,7)",
        "2:ABCDCBA",
        format!("{}:{}", f1.value, f1.witness),
    ));
    let latin = Grid::from_rows(Alphabet::parse("1234")?, &["1234", "3412", "4321", "2143"])?;
    let perms = permutation_words("1234");
    out.push(Check::new("diagonal-latin(4)", true, is_diagonal_latin(&latin)?));
    out.push(Check::new("f(perm4,latin)", 10, count_word_set(&perms, &latin)?.total));
    for n in 2..=5 {
        for k in 1..=n / 2 {
            let s = format!("{}{}", "A".repeat(k), "M".repeat(n - k));
            let expected = (2 * (n - k) + 1).max(4 * k);
            out.push(Check::new(format!("f({s},{n},2)"), expected, solved(&s, 2, workers)?));
        }
    }
    Ok(())
}

fn permutation_words(letters: &str) -> Vec<Word> {
    let chars: Vec<char> = letters.chars().collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..chars.len()).collect();
    loop {
        out.push(word(&idx.iter().map(|&i| chars[i]).collect::<String>()));
        let Some(i) = (0..idx.len() - 1).rev().find(|&i| idx[i] < idx[i + 1]) else {
            break;
        };
        let j = (i + 1..idx.len()).rev().find(|&j| idx[j] > idx[i]).unwrap();
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
    out
}

fn full(out: &mut Vec<Check>, workers: usize) -> Result<()> {
    let amm = word("AMM");
    let r = solve(
        &amm,
        3,
        3,
        &SolveConfig {
            all_optima: true,
            workers,
            ..SolveConfig::default()
        },
    )?;
    out.push(Check::new("f(AMM,3,3)", 28, r.optimum));
    out.push(Check::new("classes(AMM,3,3)", 3, r.classes.map_or(0, |c| c)));
    for n in 2..=5 {
        for w in binary_words(n) {
            let st = w.stats();
            if st.palindrome {
                let expected = n.max(2 * st.kmax) + 2;
                out.push(Check::new(
                    format!("f({w},{n},2)"),
                    expected,
                    solved(&w.to_string(), 2, workers)?,
                ));
            } else if st.antisymmetric {
                out.push(Check::new(
                    format!("f({w},{n},2)"),
                    2 * n,
                    solved(&w.to_string(), 2, workers)?,
                ));
            }
        }
    }
    for n in [2, 4, 6] {
        for w in binary_words(n).filter(|w| w.stats().antisymmetric && w.symbols()[0] == 0) {
            for d in 1.. {
                if cell_count(n, d).map_or(true, |c| c > 1_000_000) {
                    break;
                }
                out.push(Check::new(
                    format!("parity({w},d={d})"),
                    upper_bound_d(&w, d)?.value,
                    parity_grid(&w, d)?.achieved,
                ));
            }
        }
    }
    let perms = permutation_words("ABCD");
    let r = solve_set(
        &perms,
        4,
        2,
        &SolveConfig {
            workers,
            ..SolveConfig::default()
        },
    )?;
    out.push(Check::new("f(perm4,4,2)", 10, r.optimum));
    Ok(())
}

/// Runs a suite; the full suite includes the fast one.
pub fn run_suite(suite: Suite, workers: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    fast(&mut out, workers)?;
    if suite == Suite::Full {
        full(&mut out, workers)?;
    }
    Ok(out)
}
