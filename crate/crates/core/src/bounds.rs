//! Closed-form upper bounds, exact formulas, the one-dimensional optimum
//! and the two-sided bracket combining them with constructions.

use std::fmt;

use crate::constructions::best_construction;
use crate::error::{Error, Result};
use crate::lines::count_lines;
use crate::word::Word;

/// One evaluated bound rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedBound {
    pub rule: String,
    pub value: u128,
}

impl AppliedBound {
    fn new(rule: impl Into<String>, value: u128) -> Self {
        Self {
            rule: rule.into(),
            value,
        }
    }
}

/// All planar upper bounds that apply to `w`, plus their minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBound {
    pub value: u128,
    pub applied: Vec<AppliedBound>,
}

/// Evaluates every planar upper-bound rule:
///
/// * `total-lines`: `2n + 2`;
/// * `asymmetric-pair`: `2n`, when some `w_i ≠ w_{n-i+1}`;
/// * `max-letter`: `max{4k, n} + 2` with `k` the largest letter count;
/// * `mirror-fixed`: `max{n + 2k - s, n} + 2` with `s` mirror-fixed positions;
/// * `count-prefix(i)`: `max{4k_i, n + k_1 + ... + k_{i-1}} + 2` over counts
///   sorted in descending order.
pub fn upper_bound_2d(w: &Word) -> UpperBound {
    let st = w.stats();
    let n = st.n as u128;
    let k = st.kmax as u128;
    let s = st.s as u128;
    let mut applied = vec![AppliedBound::new("total-lines", 2 * n + 2)];
    if !st.palindrome {
        applied.push(AppliedBound::new("asymmetric-pair", 2 * n));
    }
    applied.push(AppliedBound::new("max-letter", (4 * k).max(n) + 2));
    applied.push(AppliedBound::new("mirror-fixed", (n + 2 * k - s).max(n) + 2));
    let mut prefix = 0u128;
    for (i, &ki) in st.sorted_counts().iter().enumerate() {
        let ki = ki as u128;
        applied.push(AppliedBound::new(
            format!("count-prefix({})", i + 1),
            (4 * ki).max(n + prefix) + 2,
        ));
        prefix += ki;
    }
    let value = applied.iter().map(|b| b.value).min().unwrap();
    UpperBound { value, applied }
}

/// `((n+2)^d - (n-2)^d) / 4` when `w` differs from its reverse, else the
/// total number of lines.
pub fn upper_bound_d(w: &Word, d: usize) -> Result<AppliedBound> {
    let n = w.len();
    let counts = count_lines(n, d)?;
    if w.stats().palindrome {
        Ok(AppliedBound::new("total-lines", counts.total))
    } else {
        let odd: u128 = counts.per_weight.iter().step_by(2).sum();
        Ok(AppliedBound::new("odd-weight-lines", odd))
    }
}

/// Closed forms that pin the optimum exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExactRule {
    /// `A^k M^(n-k)` up to reversal and renaming, `k ≤ n/2`:
    /// `max{2(n-k)+1, 4k}`.
    TwoBlock,
    /// Palindromes: `max{n, 2k} + 2`.
    Palindrome,
    /// Two letters, never equal to the mirrored letter: `2n`.
    BinaryAntisymmetric,
    /// Every letter at most `n/4` times: `n + 2`.
    FewLetters,
    /// Binary antisymmetric in dimension `d`: `((n+2)^d - (n-2)^d) / 4`.
    BinaryAntisymmetricD,
}

impl fmt::Display for ExactRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactRule::TwoBlock => "two-block",
            ExactRule::Palindrome => "palindrome",
            ExactRule::BinaryAntisymmetric => "binary-antisymmetric",
            ExactRule::FewLetters => "few-letters",
            ExactRule::BinaryAntisymmetricD => "binary-antisymmetric-d",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactValue {
    pub value: u128,
    pub rule: ExactRule,
}

/// Length of the shorter block if `w` is `X^a Y^b` with `X ≠ Y`.
fn two_block(w: &Word) -> Option<usize> {
    let sym = w.symbols();
    let cut = sym.iter().position(|&c| c != sym[0])?;
    if sym[cut..].iter().all(|&c| c == sym[cut]) {
        Some(cut.min(sym.len() - cut))
    } else {
        None
    }
}

/// Every planar closed form that applies, in resolution order.
pub fn applicable_exact_formulas(w: &Word) -> Vec<ExactValue> {
    let st = w.stats();
    let n = st.n as u128;
    let k = st.kmax as u128;
    let mut out = Vec::new();
    if let Some(b) = two_block(w) {
        let b = b as u128;
        out.push(ExactValue {
            value: (2 * (n - b) + 1).max(4 * b),
            rule: ExactRule::TwoBlock,
        });
    }
    if st.palindrome {
        out.push(ExactValue {
            value: n.max(2 * k) + 2,
            rule: ExactRule::Palindrome,
        });
    }
    if st.binary && st.antisymmetric {
        out.push(ExactValue {
            value: 2 * n,
            rule: ExactRule::BinaryAntisymmetric,
        });
    }
    if 4 * k <= n {
        out.push(ExactValue {
            value: n + 2,
            rule: ExactRule::FewLetters,
        });
    }
    out
}

/// First applicable planar closed form.
pub fn exact_formula(w: &Word) -> Option<ExactValue> {
    applicable_exact_formulas(w).into_iter().next()
}

/// Like [`exact_formula`], but fails when co-applying formulas disagree.
pub fn exact_formula_checked(w: &Word) -> Result<Option<ExactValue>> {
    let all = applicable_exact_formulas(w);
    if let Some(first) = all.first() {
        if let Some(other) = all.iter().find(|e| e.value != first.value) {
            return Err(Error::Inconsistent(format!(
                "{w}: {} gives {} but {} gives {}",
                first.rule, first.value, other.rule, other.value
            )));
        }
    }
    Ok(all.first().copied())
}

/// Exact value in dimension `d`, present for binary antisymmetric words.
pub fn exact_formula_d(w: &Word, d: usize) -> Result<Option<ExactValue>> {
    let st = w.stats();
    if !(st.binary && st.antisymmetric) {
        return Ok(None);
    }
    let odd: u128 = count_lines(st.n, d)?.per_weight.iter().step_by(2).sum();
    Ok(Some(ExactValue {
        value: odd,
        rule: ExactRule::BinaryAntisymmetricD,
    }))
}

/// Cap on `|letters|^(k-1)` states of the one-dimensional DP.
pub const F1_STATE_CAP: usize = 1 << 22;
/// Cap on DP table entries kept for witness reconstruction.
pub const F1_TABLE_CAP: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F1 {
    pub value: u64,
    /// Lexicographically smallest optimal string.
    pub witness: String,
}

/// Maximum number of length-`k` windows equal to `w` or its reverse over
/// all strings of length `n` in the letters of `w`.
pub fn f1_exact(w: &Word, n: usize) -> Result<F1> {
    let k = w.len();
    if n < k {
        return Err(Error::Parameters(format!("n={n} is shorter than the word length {k}")));
    }
    let mut letters = w.used_letters();
    letters.sort_unstable();
    let q = letters.len();
    let digit = |c: char| letters.iter().position(|&l| l == c).unwrap();
    let states = q
        .checked_pow(k as u32 - 1)
        .filter(|&s| s <= F1_STATE_CAP)
        .ok_or_else(|| Error::Infeasible(format!("{q}^{} DP states exceed the cap", k - 1)))?;
    let steps = n - k + 1;
    if (steps + 1).saturating_mul(states) > F1_TABLE_CAP {
        return Err(Error::Infeasible(format!(
            "DP table of {} x {states} exceeds the cap",
            steps + 1
        )));
    }
    let code = |chars: &mut dyn Iterator<Item = char>| chars.fold(0usize, |acc, c| acc * q + digit(c));
    let fwd = code(&mut w.chars());
    let rev = code(&mut w.reversed().chars());
    let hit = |s: usize, c: usize| {
        let window = s * q + c;
        u32::from(window == fwd || window == rev)
    };
    let shift = |s: usize, c: usize| (s * q + c) % states;

    // value[t][s]: best score for steps t.. given the last k-1 letters s
    let mut value = vec![0u32; (steps + 1) * states];
    for t in (0..steps).rev() {
        let (now, next) = value.split_at_mut((t + 1) * states);
        let now = &mut now[t * states..];
        for s in 0..states {
            now[s] = (0..q).map(|c| hit(s, c) + next[shift(s, c)]).max().unwrap();
        }
    }
    let (start, best) = value[..states]
        .iter()
        .enumerate()
        .fold((0, 0), |acc, (s, &v)| if v > acc.1 { (s, v) } else { acc });

    let mut out: Vec<usize> = (0..k - 1).rev().map(|j| start / q.pow(j as u32) % q).collect();
    let mut s = start;
    for t in 0..steps {
        let target = value[t * states + s];
        let next = &value[(t + 1) * states..];
        let c = (0..q).find(|&c| hit(s, c) + next[shift(s, c)] == target).unwrap();
        out.push(c);
        s = shift(s, c);
    }
    Ok(F1 {
        value: best as u64,
        witness: out.into_iter().map(|c| letters[c]).collect(),
    })
}

/// `f1(w, n + k - 1) ≤ f1(w, n) + 1` for words with distinct letters.
pub fn f1_subadditivity_check(w: &Word, n: usize) -> Result<bool> {
    if w.stats().kmax > 1 {
        return Err(Error::NotApplicable(format!("{w} repeats a letter")));
    }
    let small = f1_exact(w, n)?.value;
    let large = f1_exact(w, n + w.len() - 1)?.value;
    Ok(large <= small + 1)
}

/// Bounds on the planar segment count from one-dimensional optima:
/// `f1(n)(3n - 4k)` clamped at zero, and `2n f1(n) + 4 Σ_{i=k..n} f1(i)`.
pub fn sandwich_2d(w: &Word, n: usize) -> Result<(u128, u128)> {
    let k = w.len();
    let f1n = f1_exact(w, n)?.value as i128;
    let lower = (f1n * (3 * n as i128 - 4 * k as i128)).max(0) as u128;
    let mut tail = 0u128;
    for i in k..=n {
        tail += f1_exact(w, i)?.value as u128;
    }
    Ok((lower, f1n as u128 * 2 * n as u128 + 4 * tail))
}

/// Certified interval for the optimum in dimension `d`.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub lower: u128,
    pub lower_provenance: String,
    pub upper: u128,
    pub exact: Option<ExactValue>,
    pub applied: Vec<AppliedBound>,
}

pub fn bracket(w: &Word, d: usize) -> Result<BoundReport> {
    let construction = best_construction(w, d)?;
    let (upper, applied) = if d == 2 {
        let ub = upper_bound_2d(w);
        (ub.value, ub.applied)
    } else {
        let b = upper_bound_d(w, d)?;
        (b.value, vec![b])
    };
    let exact = if d == 2 {
        exact_formula_checked(w)?
    } else {
        exact_formula_d(w, d)?
    };
    let lower = construction.achieved;
    if lower > upper {
        return Err(Error::Inconsistent(format!(
            "{w}, d={d}: construction {} reaches {lower} above the upper bound {upper}",
            construction.provenance
        )));
    }
    if let Some(e) = exact {
        if e.value < lower || e.value > upper {
            return Err(Error::Inconsistent(format!(
                "{w}, d={d}: {} value {} outside [{lower}, {upper}]",
                e.rule, e.value
            )));
        }
    }
    Ok(BoundReport {
        lower,
        lower_provenance: construction.provenance.to_string(),
        upper,
        exact,
        applied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn rule(ub: &UpperBound, name: &str) -> Option<u128> {
        ub.applied.iter().find(|b| b.rule == name).map(|b| b.value)
    }

    #[test]
    fn planar_upper_examples() {
        let amm = upper_bound_2d(&w("AMM"));
        assert_eq!(rule(&amm, "total-lines"), Some(8));
        assert_eq!(rule(&amm, "asymmetric-pair"), Some(6));
        assert_eq!(rule(&amm, "max-letter"), Some(10));
        assert_eq!(rule(&amm, "mirror-fixed"), Some(8));
        assert_eq!(amm.value, 6);
        let a5 = upper_bound_2d(&w("AAAAA"));
        assert_eq!(a5.value, 12);
        assert_eq!(rule(&a5, "asymmetric-pair"), None);
        let ama = upper_bound_2d(&w("AMA"));
        assert_eq!(rule(&ama, "mirror-fixed"), Some(6));
        assert_eq!(ama.value, 6);
    }

    #[test]
    fn count_prefix_rule() {
        // counts 2,1,1 for ABAC: max{8,4}+2, max{4,6}+2, max{4,7}+2
        let ub = upper_bound_2d(&w("ABAC"));
        assert_eq!(rule(&ub, "count-prefix(1)"), Some(10));
        assert_eq!(rule(&ub, "count-prefix(2)"), Some(8));
        assert_eq!(rule(&ub, "count-prefix(3)"), Some(9));
    }

    #[test]
    fn high_dimensional_upper_examples() {
        assert_eq!(upper_bound_d(&w("AM"), 3).unwrap().value, 16);
        assert_eq!(upper_bound_d(&w("AA"), 2).unwrap().value, 6);
        assert_eq!(upper_bound_d(&w("AMM"), 3).unwrap().value, 31);
        assert!(upper_bound_d(&w("AM"), 200).is_err());
    }

    #[test]
    fn exact_examples() {
        let e = exact_formula(&w("AMM")).unwrap();
        assert_eq!((e.value, e.rule), (5, ExactRule::TwoBlock));
        assert_eq!(exact_formula(&w("AAMMM")).unwrap().value, 8);
        assert_eq!(exact_formula(&w("MMMAA")).unwrap().value, 8);
        assert_eq!(exact_formula(&w("XXYYY")).unwrap().value, 8);
        let amam = exact_formula(&w("AMAM")).unwrap();
        assert_eq!((amam.value, amam.rule), (8, ExactRule::BinaryAntisymmetric));
        let ama = exact_formula(&w("AMA")).unwrap();
        assert_eq!((ama.value, ama.rule), (6, ExactRule::Palindrome));
        assert_eq!(exact_formula(&w("ABC")), None);
        let few = exact_formula(&w("ABCDEFGH")).unwrap();
        assert_eq!((few.value, few.rule), (10, ExactRule::FewLetters));
    }

    #[test]
    fn co_applying_formulas_agree() {
        assert_eq!(applicable_exact_formulas(&w("AM")).len(), 2);
        for s in ["AM", "AAMM", "AAAMMM", "ABCCBA", "ABCDDCBA", "AMAMAMA", "AAMAA"] {
            assert!(exact_formula_checked(&w(s)).unwrap().is_some(), "{s}");
        }
    }

    #[test]
    fn exact_in_higher_dimensions() {
        assert_eq!(exact_formula_d(&w("AM"), 5).unwrap().unwrap().value, 256);
        assert_eq!(exact_formula_d(&w("AAMM"), 3).unwrap().unwrap().value, 52);
        assert_eq!(exact_formula_d(&w("AMA"), 3).unwrap(), None);
    }

    fn brute_f1(w: &Word, n: usize) -> (u64, String) {
        let mut letters = w.used_letters();
        letters.sort_unstable();
        let q = letters.len();
        let fwd: Vec<char> = w.chars().collect();
        let rev: Vec<char> = fwd.iter().rev().copied().collect();
        let mut best = (0u64, String::new());
        let mut first = true;
        for mut code in 0..q.pow(n as u32) {
            let mut s = vec![' '; n];
            for slot in s.iter_mut().rev() {
                *slot = letters[code % q];
                code /= q;
            }
            let hits = s.windows(fwd.len()).filter(|win| *win == fwd || *win == rev).count() as u64;
            if first || hits > best.0 {
                best = (hits, s.iter().collect());
                first = false;
            }
        }
        best
    }

    #[test]
    fn f1_examples() {
        assert_eq!(f1_exact(&w("ABCD"), 4).unwrap().value, 1);
        let seven = f1_exact(&w("ABCD"), 7).unwrap();
        assert_eq!(seven.value, 2);
        assert_eq!(seven.witness, "ABCDCBA");
        assert!(f1_exact(&w("ABCD"), 3).is_err());
    }

    #[test]
    fn f1_matches_exhaustive_search() {
        for s in ["AB", "AA", "ABA", "ABC", "AAB", "ABCA", "ABB", "ABAB", "CAB", "ACBB"] {
            let word = w(s);
            for n in word.len()..=9 {
                let f = f1_exact(&word, n).unwrap();
                let (v, wit) = brute_f1(&word, n);
                assert_eq!((f.value, &f.witness), (v, &wit), "{s} n={n}");
            }
        }
    }

    #[test]
    fn f1_trend_for_distinct_letters() {
        let word = w("ABCD");
        let r = f1_exact(&word, 301).unwrap().value as f64 / 301.0;
        assert!((r - 1.0 / 3.0).abs() < 0.01, "{r}");
    }

    #[test]
    fn subadditivity_examples() {
        assert!(f1_subadditivity_check(&w("ABCD"), 4).unwrap());
        assert!(f1_subadditivity_check(&w("ABC"), 5).unwrap());
        assert!(f1_subadditivity_check(&w("AB"), 3).unwrap());
        assert!(f1_subadditivity_check(&w("ABA"), 3).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let (lo, hi) = sandwich_2d(&w("AB"), 4).unwrap();
        assert_eq!(lo, 12);
        assert_eq!(hi, 3 * 8 + 4 * (1 + 2 + 3));
        let (lo, _) = sandwich_2d(&w("ABC"), 3).unwrap();
        assert_eq!(lo, 0);
    }

    #[test]
    fn bracket_examples() {
        let amm = bracket(&w("AMM"), 2).unwrap();
        assert_eq!((amm.lower, amm.upper), (5, 6));
        assert_eq!(amm.exact.unwrap().value, 5);
        let am = bracket(&w("AM"), 7).unwrap();
        assert_eq!(am.exact.unwrap().value, 4u128.pow(7) / 4);
        assert_eq!(am.lower, am.exact.unwrap().value);
        let abc = bracket(&w("ABC"), 2).unwrap();
        assert_eq!((abc.lower, abc.upper, abc.exact), (5, 6, None));
    }
}
