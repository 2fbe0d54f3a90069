//! Explicit grids certifying lower bounds on the number of lines containing
//! a word. Every constructor counts its own grid and refuses to return a
//! result that misses the promised value.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::Rng;

use crate::bounds::f1_exact;
use crate::error::{Error, Result};
use crate::grid::{cell_count, CellRule, Grid, Point};
use crate::lines::{canonicalize, count_lines, line_points, CanonicalLine, Direction};
use crate::occurrence::count_word;
use crate::word::{Alphabet, Word};

/// Cells above which constructions are not materialized and counted.
pub const DENSE_CAP: usize = 1 << 22;

/// Which construction produced a grid. Variant order is the tie-break
/// order used by [`best_construction`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// One row per letter class copied into the crossing rows.
    Cross { letter: char },
    /// Rows and columns indexed by mirrored `a`/`m` positions.
    Quad { a: char, m: char },
    /// Binary word written forwards or backwards on every row.
    Stripe,
    /// Sign grid from the parity of coordinates in the first letter's positions.
    Parity,
    /// The word along the last axis.
    Rows,
    /// Procedural high-dimensional grid, materialized.
    Counterpoint,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cross { letter } => write!(f, "cross({letter})"),
            Provenance::Quad { a, m } => write!(f, "quad({a},{m})"),
            Provenance::Stripe => write!(f, "stripe"),
            Provenance::Parity => write!(f, "parity"),
            Provenance::Rows => write!(f, "rows"),
            Provenance::Counterpoint => write!(f, "counterpoint"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub grid: Grid,
    /// Value promised by the construction.
    pub guaranteed: u128,
    /// Exact count on the produced grid.
    pub achieved: u128,
    pub provenance: Provenance,
}

fn certify(w: &Word, grid: Grid, guaranteed: u128, provenance: Provenance) -> Result<ConstructionResult> {
    let achieved = count_word(w, &grid)?.total;
    if achieved < guaranteed {
        return Err(Error::Inconsistent(format!(
            "{provenance} grid for {w} reaches {achieved}, below its guarantee {guaranteed}"
        )));
    }
    Ok(ConstructionResult {
        grid,
        guaranteed,
        achieved,
        provenance,
    })
}

fn letter_index(w: &Word, c: char) -> Result<u8> {
    w.alphabet()
        .index_of(c)
        .filter(|&i| w.symbols().contains(&i))
        .ok_or_else(|| Error::NotApplicable(format!("letter {c:?} does not occur in {w}")))
}

fn square(w: &Word, f: impl Fn(usize, usize) -> u8) -> Result<Grid> {
    let n = w.len();
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(f(i, j));
        }
    }
    Grid::dense(n, 2, w.alphabet().clone(), cells)
}

/// `G(p) = w_{p_d}`: every line moving along the last axis reads `w`, which
/// is `(n+2)^(d-1)` lines (rows and both diagonals when `d = 2`).
pub fn rows_grid(w: &Word, d: usize) -> Result<ConstructionResult> {
    let n = w.len();
    let total = cell_count(n, d)?;
    if total > DENSE_CAP {
        return Err(Error::Infeasible(format!("{total} cells")));
    }
    let cells = (0..total).map(|i| w.symbols()[i % n]).collect();
    let grid = Grid::dense(n, d, w.alphabet().clone(), cells)?;
    let guaranteed = (n as u128 + 2)
        .checked_pow(d as u32 - 1)
        .ok_or_else(|| Error::Overflow("rows guarantee".into()))?;
    certify(w, grid, guaranteed, Provenance::Rows)
}

/// Rows indexed by the positions of `letter` carry `w`; every other row is
/// constant `w_i`. Guarantees `2k + 1`, or `2k + 2` when every position of
/// `letter` is mirrored by the same letter.
pub fn cross_grid(w: &Word, letter: char) -> Result<ConstructionResult> {
    let a = letter_index(w, letter)?;
    let sym = w.symbols();
    let n = w.len();
    let in_i: Vec<bool> = sym.iter().map(|&s| s == a).collect();
    let k = in_i.iter().filter(|&&x| x).count() as u128;
    let grid = square(w, |i, j| if in_i[i] { sym[j] } else { sym[i] })?;
    let symmetric_on_i = (0..n).all(|i| !in_i[i] || sym[i] == sym[n - 1 - i]);
    let guaranteed = 2 * k + if symmetric_on_i { 2 } else { 1 };
    certify(w, grid, guaranteed, Provenance::Cross { letter })
}

/// Four-case grid over `T = {i : w_i = a, w_{n-i+1} = m}` and its mirror
/// `S`; every row and column indexed by `T ∪ S` contains `w`, so `4t`.
/// Cells outside those rows and columns get `w_1`.
pub fn quad_grid(w: &Word, a: char, m: char) -> Result<ConstructionResult> {
    if a == m {
        return Err(Error::NotApplicable(
            "quad construction needs two distinct letters".into(),
        ));
    }
    let ai = letter_index(w, a)?;
    let mi = letter_index(w, m)?;
    let sym = w.symbols();
    let n = w.len();
    let stats = w.stats();
    let t_set = stats.t_set(ai, mi);
    if t_set.is_empty() {
        return Err(Error::NotApplicable(format!(
            "no position of {w} pairs {a} with mirrored {m}"
        )));
    }
    let mut in_t = vec![false; n];
    let mut in_s = vec![false; n];
    for &i in &t_set {
        in_t[i - 1] = true;
        in_s[n - i] = true;
    }
    let filler = sym[0];
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut value: Option<u8> = None;
            let cases = [
                (in_t[i], sym[j]),
                (in_t[j], sym[i]),
                (in_s[i], sym[n - 1 - j]),
                (in_s[j], sym[n - 1 - i]),
            ];
            for (applies, v) in cases {
                if !applies {
                    continue;
                }
                match value {
                    Some(prev) if prev != v => {
                        return Err(Error::Inconsistent(format!(
                            "quad grid for {w} is ill-defined at ({}, {})",
                            i + 1,
                            j + 1
                        )))
                    }
                    _ => value = Some(v),
                }
            }
            cells.push(value.unwrap_or(filler));
        }
    }
    let grid = Grid::dense(n, 2, w.alphabet().clone(), cells)?;
    certify(w, grid, 4 * t_set.len() as u128, Provenance::Quad { a, m })
}

/// Binary words: row `i` is `w` when `w_i` is the first letter, else
/// `reverse(w)`. Guarantees `n + t`.
pub fn stripe_grid(w: &Word) -> Result<ConstructionResult> {
    let stats = w.stats();
    if !stats.binary {
        return Err(Error::NotApplicable(format!("{w} does not use exactly two letters")));
    }
    let sym = w.symbols();
    let n = w.len();
    let a = sym[0];
    let m = *sym.iter().find(|&&s| s != a).unwrap();
    let t = stats.t(a, m) as u128;
    let grid = square(w, |i, j| if sym[i] == a { sym[j] } else { sym[n - 1 - j] })?;
    certify(w, grid, n as u128 + t, Provenance::Stripe)
}

/// `((n+2)^d - (n-2)^d) / 4`, the number of odd-weight lines.
pub fn odd_weight_lines(n: usize, d: usize) -> Result<u128> {
    let counts = count_lines(n, d)?;
    Ok(counts.per_weight.iter().step_by(2).sum())
}

fn binary_antisymmetric(w: &Word) -> Result<()> {
    let st = w.stats();
    if !(st.binary && st.antisymmetric) {
        return Err(Error::NotApplicable(format!("{w} is not a binary antisymmetric word")));
    }
    Ok(())
}

/// Binary antisymmetric words: `G(p) = w_1` iff an even number of
/// coordinates of `p` lie in `I = {i : w_i = w_1}`. Every odd-weight line
/// contains `w`.
pub fn parity_grid(w: &Word, d: usize) -> Result<ConstructionResult> {
    binary_antisymmetric(w)?;
    let n = w.len();
    let total = cell_count(n, d)?;
    if total > DENSE_CAP {
        return Err(Error::Infeasible(format!("{total} cells")));
    }
    let grid = Grid::procedural(n, d, w.alphabet().clone(), Arc::new(ParityRule::new(w))).to_dense(DENSE_CAP)?;
    certify(w, grid, odd_weight_lines(n, d)?, Provenance::Parity)
}

/// Procedural form of [`parity_grid`].
#[derive(Debug, Clone)]
pub struct ParityRule {
    in_first: Vec<bool>,
    first: u8,
    other: u8,
}

impl ParityRule {
    pub fn new(w: &Word) -> Self {
        let sym = w.symbols();
        let first = sym[0];
        let other = sym.iter().copied().find(|&s| s != first).unwrap_or(first);
        Self {
            in_first: sym.iter().map(|&s| s == first).collect(),
            first,
            other,
        }
    }
}

impl CellRule for ParityRule {
    fn letter_at(&self, coords: &[usize]) -> u8 {
        let odd = coords.iter().filter(|&&c| self.in_first[c - 1]).count() % 2 == 1;
        if odd {
            self.other
        } else {
            self.first
        }
    }
}

/// Coordinate-value statistics of a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointProfile {
    n: usize,
    /// `pi[i - 1]` = number of coordinates equal to `i`.
    pi: Vec<usize>,
}

impl PointProfile {
    pub fn of(coords: &[usize], n: usize) -> Self {
        let mut pi = vec![0; n];
        for &c in coords {
            pi[c - 1] += 1;
        }
        Self { n, pi }
    }

    pub fn pi(&self, i: usize) -> usize {
        self.pi[i - 1]
    }

    /// `π_i + π_{n-i+1}`.
    pub fn tau(&self, i: usize) -> usize {
        self.pi(i) + self.pi(self.n - i + 1)
    }

    /// Sum of `π_i` over `i ≤ ⌊n/2⌋`.
    pub fn sigma(&self) -> usize {
        self.pi[..self.n / 2].iter().sum()
    }
}

/// Thresholds of the counter-point grid, as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterpointParams {
    /// `3.9 d / (n + 2)`.
    pub c: Ratio<i64>,
    /// `2.3 d / (n + 2)`.
    pub k: Ratio<i64>,
    pub band_top: Ratio<i64>,
    pub spread_low: Ratio<i64>,
    pub spread_high: Ratio<i64>,
}

impl CounterpointParams {
    pub fn new(n: usize, d: usize) -> Self {
        let (n, d) = (n as i64, d as i64);
        Self {
            c: Ratio::new(39 * d, 10 * (n + 2)),
            k: Ratio::new(23 * d, 10 * (n + 2)),
            band_top: Ratio::new(11, 10),
            spread_low: Ratio::new(99, 100),
            spread_high: Ratio::new(101, 100),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// Near-uniform point with `c < τ_1 < 1.1c`; takes an end letter.
    Counterpoint,
    /// `τ_1 ≤ c` and `i` is the unique index in `(1, ⌈n/2⌉]` with `τ_i ≥ k`.
    Inner(usize),
    Other,
}

#[derive(Debug, Clone)]
pub struct CounterpointRule {
    n: usize,
    d: usize,
    symbols: Vec<u8>,
    params: CounterpointParams,
}

impl CounterpointRule {
    pub fn new(w: &Word, d: usize) -> Result<Self> {
        let n = w.len();
        if n < 3 {
            return Err(Error::NotApplicable(format!(
                "counter-point grid needs a word of length >= 3, got {n}"
            )));
        }
        if d < 1 {
            return Err(Error::Parameters("d must be positive".into()));
        }
        Ok(Self {
            n,
            d,
            symbols: w.symbols().to_vec(),
            params: CounterpointParams::new(n, d),
        })
    }

    pub fn params(&self) -> &CounterpointParams {
        &self.params
    }

    pub fn classify(&self, profile: &PointProfile) -> PointClass {
        let n = self.n;
        let p = &self.params;
        let r = |x: usize| Ratio::from_integer(x as i64);
        let tau1 = r(profile.tau(1));
        if p.c < tau1 && tau1 < p.band_top * p.c {
            let rest = r(self.d) - tau1;
            let denom = r(n - 2);
            let lo = p.spread_low * rest / denom;
            let hi = p.spread_high * rest / denom;
            if (2..n).all(|i| {
                let x = r(profile.pi(i));
                lo <= x && x <= hi
            }) {
                return PointClass::Counterpoint;
            }
            return PointClass::Other;
        }
        if tau1 <= p.c {
            let mut found = None;
            for i in 2..=n.div_ceil(2) {
                if r(profile.tau(i)) >= p.k {
                    if found.is_some() {
                        return PointClass::Other;
                    }
                    found = Some(i);
                }
            }
            if let Some(i) = found {
                return PointClass::Inner(i);
            }
        }
        PointClass::Other
    }

    /// 1-based letter position assigned to a point.
    pub fn position(&self, coords: &[usize]) -> usize {
        let profile = PointProfile::of(coords, self.n);
        let odd = profile.sigma() % 2 == 1;
        let n = self.n;
        match (self.classify(&profile), odd) {
            (PointClass::Inner(i), true) => i,
            (PointClass::Inner(i), false) => n - i + 1,
            (_, true) => 1,
            (_, false) => n,
        }
    }
}

impl CellRule for CounterpointRule {
    fn letter_at(&self, coords: &[usize]) -> u8 {
        self.symbols[self.position(coords) - 1]
    }
}

/// The procedural counter-point grid `G_w` in dimension `d`.
pub fn counterpoint_grid(w: &Word, d: usize) -> Result<Grid> {
    let rule = CounterpointRule::new(w, d)?;
    Ok(Grid::procedural(w.len(), d, w.alphabet().clone(), Arc::new(rule)))
}

/// Draws a point with `τ_1 = r` for a uniform integer `r` in `(c, 1.1c)`,
/// retrying until it classifies as a counter-point.
pub fn sample_counterpoint<R: Rng + ?Sized>(rule: &CounterpointRule, rng: &mut R, max_tries: usize) -> Result<Point> {
    let (n, d) = (rule.n, rule.d);
    let p = &rule.params;
    let candidates: Vec<usize> = (0..=d)
        .filter(|&r| {
            let x = Ratio::from_integer(r as i64);
            p.c < x && x < p.band_top * p.c
        })
        .collect();
    if candidates.is_empty() {
        return Err(Error::NotApplicable(format!(
            "no integer τ_1 in the counter-point band for n={n} d={d}"
        )));
    }
    for _ in 0..max_tries {
        let r = candidates[rng.gen_range(0..candidates.len())];
        let mut coords: Vec<usize> = (0..d).map(|_| rng.gen_range(2..n)).collect();
        for j in sample(rng, d, r) {
            coords[j] = if rng.gen_bool(0.5) { 1 } else { n };
        }
        if rule.classify(&PointProfile::of(&coords, n)) == PointClass::Counterpoint {
            return Ok(Point(coords));
        }
    }
    Err(Error::SamplingExhausted(max_tries as u64))
}

/// Line starting at `p` that moves exactly on the coordinates in `moving`
/// (each must sit at 1 or n), inward.
pub fn line_from_boundary(p: &Point, moving: &[usize], n: usize) -> Result<CanonicalLine> {
    let mut v = vec![0i8; p.dim()];
    for &j in moving {
        v[j] = match p.0[j] {
            1 => 1,
            x if x == n => -1,
            x => {
                return Err(Error::Line(format!(
                    "coordinate {} = {x} is not on the boundary",
                    j + 1
                )))
            }
        };
    }
    canonicalize(p, &Direction::new(v)?, n)
}

/// For an odd-weight line: `σ(ℓ_i) ≡ σ(ℓ_1)` for `i ≤ ⌊n/2⌋` and the
/// parity flips for `i > ⌈n/2⌉`.
pub fn sigma_parity_check(line: &CanonicalLine, n: usize) -> Result<bool> {
    if line.weight() % 2 == 0 {
        return Err(Error::Line(format!("line {line} has even weight {}", line.weight())));
    }
    let pts = line_points(line, n);
    let parity = |p: &Point| PointProfile::of(p.coords(), n).sigma() % 2;
    let base = parity(&pts[0]);
    Ok((1..=n).all(|i| {
        let here = parity(&pts[i - 1]);
        if i <= n / 2 {
            here == base
        } else if i > n.div_ceil(2) {
            here != base
        } else {
            true
        }
    }))
}

/// `A^(k+1)`, then `2k - 2` distinct fresh letters, then `M^(k+1)`; length
/// `4k`, every letter at most `k + 1` times.
pub fn few_letter_word(k: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::Parameters("k must be at least 1".into()));
    }
    let fresh: Vec<char> = ('A'..='Z').filter(|&c| c != 'A' && c != 'M').collect();
    if 2 * k - 2 > fresh.len() {
        return Err(Error::Alphabet(format!("k={k} needs {} fresh letters", 2 * k - 2)));
    }
    let mut s = "A".repeat(k + 1);
    s.extend(&fresh[..2 * k - 2]);
    s.push_str(&"M".repeat(k + 1));
    Word::parse(&s)
}

/// Two-dimensional `n`-grid with an optimal one-dimensional arrangement of
/// the length-`k` word `w` repeated on every row.
pub fn product_grid(w: &Word, n: usize) -> Result<Grid> {
    let k = w.len();
    if k > n {
        return Err(Error::Parameters(format!("word length {k} exceeds side {n}")));
    }
    let best = f1_exact(w, n)?;
    let row: Vec<u8> = best
        .witness
        .chars()
        .map(|c| w.alphabet().index_of(c).expect("witness uses letters of w"))
        .collect();
    let cells = (0..n * n).map(|i| row[i % n]).collect();
    Grid::dense(n, 2, w.alphabet().clone(), cells)
}

/// Every construction that applies to `w` in dimension `d`, certified.
pub fn all_constructions(w: &Word, d: usize) -> Vec<ConstructionResult> {
    let mut out = Vec::new();
    let used = w.used_letters();
    if d == 2 {
        for &a in &used {
            out.extend(cross_grid(w, a));
        }
        for &a in &used {
            for &m in &used {
                if a != m {
                    out.extend(quad_grid(w, a, m));
                }
            }
        }
        out.extend(stripe_grid(w));
    }
    out.extend(parity_grid(w, d));
    out.extend(rows_grid(w, d));
    out.extend(counterpoint_dense(w, d, DENSE_CAP));
    out
}

/// [`counterpoint_grid`] materialized and counted; it carries no guarantee.
pub fn counterpoint_dense(w: &Word, d: usize, cap: usize) -> Result<ConstructionResult> {
    let grid = counterpoint_grid(w, d)?.to_dense(cap)?;
    certify(w, grid, 0, Provenance::Counterpoint)
}

/// The applicable construction with the largest count; ties go to the
/// earlier [`Provenance`] variant.
pub fn best_construction(w: &Word, d: usize) -> Result<ConstructionResult> {
    let mut best: Option<ConstructionResult> = None;
    for c in all_constructions(w, d) {
        let better = match &best {
            None => true,
            Some(b) => c.achieved > b.achieved || (c.achieved == b.achieved && c.provenance < b.provenance),
        };
        if better {
            best = Some(c);
        }
    }
    best.ok_or_else(|| Error::Infeasible(format!("no construction for {w} fits in dimension {d}")))
}

/// Alphabet of `w` extended by one letter not in it.
pub fn alphabet_with_fresh(w: &Word) -> Result<Alphabet> {
    let fresh = w
        .alphabet()
        .fresh_letter()
        .ok_or_else(|| Error::Alphabet("no fresh letter available".into()))?;
    let mut letters = w.alphabet().letters().to_vec();
    letters.push(fresh);
    Alphabet::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::{enumerate_lines, sample_line};
    use crate::occurrence::{count_segments_word, line_contains};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn rows_examples() {
        assert_eq!(rows_grid(&w("ABC"), 2).unwrap().achieved, 5);
        assert_eq!(rows_grid(&w("AAAA"), 2).unwrap().achieved, 10);
        let amm = rows_grid(&w("AMM"), 2).unwrap();
        assert!(amm.achieved >= 5);
        assert_eq!(amm.guaranteed, 5);
        assert_eq!(rows_grid(&w("AMM"), 3).unwrap().guaranteed, 25);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross_grid(&w("BAACA"), 'A').unwrap().guaranteed, 7);
        assert_eq!(cross_grid(&w("ABACA"), 'A').unwrap().guaranteed, 8);
        let amm = cross_grid(&w("AMM"), 'M').unwrap();
        assert_eq!(amm.grid.rows().unwrap(), vec!["AAA", "AMM", "AMM"]);
        assert_eq!(amm.achieved, 5);
        let ama = cross_grid(&w("AMA"), 'A').unwrap();
        assert_eq!(ama.grid.rows().unwrap(), vec!["AMA", "MMM", "AMA"]);
        assert_eq!((ama.guaranteed, ama.achieved), (6, 6));
        assert!(cross_grid(&w("AMM"), 'Q').is_err());
    }

    #[test]
    fn quad_examples() {
        let r = quad_grid(&w("AMAAM"), 'A', 'M').unwrap();
        assert_eq!(r.guaranteed, 8);
        assert!(r.achieved >= 8);
        assert_eq!(quad_grid(&w("AMM"), 'A', 'M').unwrap().guaranteed, 4);
        assert!(matches!(quad_grid(&w("AMA"), 'A', 'M'), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn stripe_examples() {
        let r = stripe_grid(&w("AMAAM")).unwrap();
        assert_eq!(r.guaranteed, 7);
        assert!(r.achieved >= 7);
        let am = stripe_grid(&w("AM")).unwrap();
        assert_eq!((am.guaranteed, am.achieved), (3, 4));
        for k in 1..=3 {
            let word = format!("{}{}", "A".repeat(k), "M".repeat(7 - k));
            let r = stripe_grid(&w(&word)).unwrap();
            assert_eq!(r.guaranteed, 7 + k as u128);
        }
        assert!(stripe_grid(&w("ABC")).is_err());
        assert!(stripe_grid(&w("AAA")).is_err());
    }

    #[test]
    fn parity_examples() {
        let am = parity_grid(&w("AM"), 2).unwrap();
        assert_eq!(am.grid.rows().unwrap(), vec!["AM", "MA"]);
        assert_eq!(am.achieved, 4);
        assert_eq!(parity_grid(&w("AAMM"), 2).unwrap().achieved, 8);
        assert_eq!(parity_grid(&w("AM"), 3).unwrap().achieved, 16);
        assert!(parity_grid(&w("AMM"), 2).is_err());
        assert!(parity_grid(&w("ABBA"), 2).is_err());
    }

    #[test]
    fn parity_matches_odd_weight_sum() {
        for word in ["AM", "AAMM", "AMAM", "AMAMAM", "AAAMMM"] {
            let word = w(word);
            let n = word.len();
            for d in 1..=4 {
                if cell_count(n, d).unwrap() > 200_000 {
                    continue;
                }
                let r = parity_grid(&word, d).unwrap();
                let closed = ((n as u128 + 2).pow(d as u32) - (n as u128 - 2).pow(d as u32)) / 4;
                assert_eq!(r.achieved, closed, "{word} d={d}");
                assert_eq!(r.achieved, odd_weight_lines(n, d).unwrap());
            }
        }
    }

    #[test]
    fn parity_contains_every_odd_line() {
        let word = w("AAMM");
        let r = parity_grid(&word, 3).unwrap();
        for l in enumerate_lines(4, 3).unwrap() {
            if l.weight() % 2 == 1 {
                assert!(line_contains(&word, &r.grid, &l).unwrap(), "{l}");
            }
        }
    }

    #[test]
    fn few_letter_words() {
        let one = few_letter_word(1).unwrap();
        assert_eq!(one.to_string(), "AAMM");
        assert_eq!(quad_grid(&one, 'A', 'M').unwrap().guaranteed, 8);
        let two = few_letter_word(2).unwrap();
        assert_eq!(two.to_string(), "AAABCMMM");
        assert_eq!(quad_grid(&two, 'A', 'M').unwrap().guaranteed, 12);
        for k in 1..=6 {
            let word = few_letter_word(k).unwrap();
            let n = word.len();
            assert_eq!(n, 4 * k);
            assert!(word.stats().kmax <= 1 + n / 4);
            assert!(quad_grid(&word, 'A', 'M').unwrap().achieved > n as u128 + 2);
        }
        assert!(few_letter_word(0).is_err());
        assert!(few_letter_word(14).is_err());
    }

    #[test]
    fn best_construction_examples() {
        let amm = best_construction(&w("AMM"), 2).unwrap();
        assert_eq!(amm.achieved, 5);
        assert_eq!(amm.provenance, Provenance::Cross { letter: 'M' });
        assert_eq!(best_construction(&w("AAMM"), 2).unwrap().achieved, 8);
        let ama = best_construction(&w("AMA"), 2).unwrap();
        assert_eq!(ama.achieved, 6);
        assert_eq!(ama.provenance, Provenance::Cross { letter: 'A' });
        assert_eq!(best_construction(&w("AM"), 5).unwrap().achieved, 256);
    }

    #[test]
    fn profile_identities() {
        let p = PointProfile::of(&[1, 5, 2, 4, 4, 3], 5);
        assert_eq!(p.pi(4), 2);
        assert_eq!(p.tau(1), 2);
        assert_eq!(p.tau(2), p.tau(4));
        assert_eq!(p.tau(2), 3);
        assert_eq!(p.sigma(), 2);
        assert_eq!((1..=5).map(|i| p.pi(i)).sum::<usize>(), 6);
    }

    #[test]
    fn counterpoint_params_are_ordered() {
        for n in 3..8 {
            for d in 1..50 {
                let p = CounterpointParams::new(n, d);
                assert!(p.c > p.k && p.k > Ratio::from_integer(0));
            }
        }
    }

    #[test]
    fn counterpoint_classification() {
        // n = 3, d = 40: c = 31.2, band (31.2, 34.32)
        let rule = CounterpointRule::new(&w("AMM"), 40).unwrap();
        let mut coords = vec![2usize; 40];
        for c in coords.iter_mut().take(33) {
            *c = 1;
        }
        let profile = PointProfile::of(&coords, 3);
        assert_eq!(rule.classify(&profile), PointClass::Counterpoint);
        // σ = π_1 = 33 is odd, so the point takes w_1
        assert_eq!(rule.letter_at(&coords), 0);
        coords[0] = 3;
        // σ = 32 is even: w_n
        assert_eq!(rule.letter_at(&coords), 1);
        // τ_1 = 31 ≤ c with τ_2 = 18 < k = 18.4: no inner index
        let mut low = vec![2usize; 40];
        for c in low.iter_mut().take(31) {
            *c = 1;
        }
        assert_eq!(rule.classify(&PointProfile::of(&low, 3)), PointClass::Other);
        // τ_1 = 22, τ_2 = 36 ≥ k: the middle index is the unique inner one
        for c in low.iter_mut().skip(22).take(9) {
            *c = 2;
        }
        assert_eq!(rule.classify(&PointProfile::of(&low, 3)), PointClass::Inner(2));
        assert_eq!(rule.position(&low), 2);
        assert!(CounterpointRule::new(&w("AM"), 4).is_err());
    }

    #[test]
    fn counterpoint_band_is_exact() {
        // n = 3, d = 10: c = 7.8 exactly representable only as a rational
        let rule = CounterpointRule::new(&w("ABC"), 10).unwrap();
        let mk = |ones: usize| {
            let mut v = vec![2usize; 10];
            for c in v.iter_mut().take(ones) {
                *c = 1;
            }
            rule.classify(&PointProfile::of(&v, 3))
        };
        assert_eq!(mk(8), PointClass::Counterpoint);
        // 1.1c = 8.58: τ_1 = 9 is outside the band
        assert_eq!(mk(9), PointClass::Other);
        assert_ne!(mk(7), PointClass::Counterpoint);
    }

    #[test]
    fn counterpoint_grid_is_total_and_deterministic() {
        let g = counterpoint_grid(&w("AMMA"), 6).unwrap();
        let a = g.to_dense(DENSE_CAP).unwrap();
        let b = g.to_dense(DENSE_CAP).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sigma_parity_on_random_odd_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 2000 {
            let n = rng.gen_range(3..=5);
            let d = rng.gen_range(3..=8);
            let l = sample_line(n, d, &mut rng).unwrap();
            if l.weight() % 2 == 0 {
                assert!(sigma_parity_check(&l, n).is_err());
                continue;
            }
            assert!(sigma_parity_check(&l, n).unwrap(), "{l}");
            checked += 1;
        }
        let row = canonicalize(&Point(vec![2, 1, 3]), &Direction::new(vec![0, 1, 0]).unwrap(), 3).unwrap();
        assert!(sigma_parity_check(&row, 3).unwrap());
    }

    #[test]
    fn many_lines_from_counterpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for word in ["AMM", "ABC", "AMA"] {
            let word = w(word);
            let rule = CounterpointRule::new(&word, 40).unwrap();
            let grid = counterpoint_grid(&word, 40).unwrap();
            for _ in 0..50 {
                let p = sample_counterpoint(&rule, &mut rng, 1000).unwrap();
                let boundary: Vec<usize> = (0..40).filter(|&j| p.0[j] == 1 || p.0[j] == 3).collect();
                let r = boundary.len();
                let s_min = (49 * r).div_ceil(100);
                let mut s = rng.gen_range(s_min..=r);
                if s % 2 == 0 {
                    s = if s + 1 <= r { s + 1 } else { s - 1 };
                }
                let chosen: Vec<usize> = sample(&mut rng, r, s).into_iter().map(|i| boundary[i]).collect();
                let l = line_from_boundary(&p, &chosen, 3).unwrap();
                assert!(line_contains(&word, &grid, &l).unwrap(), "{word} {l}");
            }
        }
    }

    #[test]
    fn product_grid_examples() {
        let g = product_grid(&w("AB"), 4).unwrap();
        assert_eq!(g.rows().unwrap()[0], "ABAB");
        assert!(count_segments_word(&w("AB"), &g).unwrap() >= 12);
        let full = product_grid(&w("ABC"), 3).unwrap();
        assert_eq!(full.rows().unwrap(), vec!["ABC", "ABC", "ABC"]);
        assert!(product_grid(&w("ABCD"), 3).is_err());
    }
}
