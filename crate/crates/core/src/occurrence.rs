//! Counting the lines (and segments) of a grid that spell a word.
//!
//! A line contains a word when its forward or its backward reading equals
//! the word. Each line counts at most once.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{cell_count, Grid, Point};
use crate::lines::{count_lines, enumerate_lines, flat_run_chunks, line_points, sample_line, CanonicalLine, FlatLine};
use crate::word::Word;

const ABSENT: u8 = u8::MAX;

/// Procedural grids up to this many cells are materialized before counting.
pub const PROCEDURAL_DENSE_CAP: usize = 1 << 24;
/// Largest line stream walked cell-by-cell on a procedural grid.
pub const PROCEDURAL_LINE_CAP: u128 = 50_000_000;

/// Result of counting one word (or word set) over all lines of a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceReport {
    pub total: u128,
    /// Index `r - 1` holds matches among lines of weight `r`.
    pub per_weight: Vec<u128>,
    pub matches: Option<Vec<CanonicalLine>>,
}

impl OccurrenceReport {
    fn empty(d: usize) -> Self {
        Self {
            total: 0,
            per_weight: vec![0; d],
            matches: None,
        }
    }

    fn merge(mut self, other: OccurrenceReport) -> Self {
        self.total += other.total;
        for (a, b) in self.per_weight.iter_mut().zip(other.per_weight) {
            *a += b;
        }
        self
    }
}

/// Word patterns translated to a grid's letter indices.
#[derive(Debug, Clone)]
struct Matcher {
    /// Forward readings that count as a match (each word and its reversal).
    patterns: Vec<Vec<u8>>,
}

impl Matcher {
    fn new(words: &[Word], grid: &Grid, len: usize) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::Parameters("word set is empty".into()));
        }
        let mut patterns = Vec::with_capacity(2 * words.len());
        for w in words {
            if w.len() != len {
                return Err(Error::LengthMismatch {
                    word: w.len(),
                    side: len,
                });
            }
            let fwd: Vec<u8> = w
                .chars()
                .map(|c| grid.alphabet().index_of(c).unwrap_or(ABSENT))
                .collect();
            if fwd.contains(&ABSENT) {
                continue;
            }
            let mut rev = fwd.clone();
            rev.reverse();
            patterns.push(fwd);
            patterns.push(rev);
        }
        patterns.sort();
        patterns.dedup();
        Ok(Self { patterns })
    }

    #[inline]
    fn matches(&self, reading: &[u8]) -> bool {
        self.patterns.iter().any(|p| p.as_slice() == reading)
    }

    fn matches_flat(&self, cells: &[u8], fl: FlatLine, buf: &mut [u8]) -> bool {
        for (t, slot) in buf.iter_mut().enumerate() {
            *slot = cells[fl.cell(t)];
        }
        self.matches(buf)
    }
}

fn read_points(grid: &Grid, points: &[Point]) -> Vec<u8> {
    points.iter().map(|p| grid.get_unchecked(p.coords())).collect()
}

/// True iff the line reads `w` forwards or backwards.
pub fn line_contains(w: &Word, grid: &Grid, line: &CanonicalLine) -> Result<bool> {
    if w.len() != grid.n() {
        return Err(Error::LengthMismatch {
            word: w.len(),
            side: grid.n(),
        });
    }
    if line.dim() != grid.d() {
        return Err(Error::DimensionMismatch {
            expected: grid.d(),
            got: line.dim(),
        });
    }
    line.p().validate(grid.n(), grid.d())?;
    let m = Matcher::new(std::slice::from_ref(w), grid, grid.n())?;
    Ok(m.matches(&read_points(grid, &line_points(line, grid.n()))))
}

/// Chooses a dense view of `grid`, materializing small procedural grids.
fn dense_view(grid: &Grid) -> Result<Option<Grid>> {
    if grid.is_dense() {
        return Ok(Some(grid.clone()));
    }
    if cell_count(grid.n(), grid.d()).is_ok_and(|c| c <= PROCEDURAL_DENSE_CAP) {
        return Ok(Some(grid.to_dense(PROCEDURAL_DENSE_CAP)?));
    }
    Ok(None)
}

fn count_dense(m: &Matcher, grid: &Grid, k: usize, list: bool) -> Result<OccurrenceReport> {
    let cells = grid.cells().ok_or(Error::NotDense)?;
    let d = grid.d();
    let chunks = flat_run_chunks(grid.n(), d, k, 256)?;
    let parts: Vec<(OccurrenceReport, Vec<FlatLine>)> = chunks
        .par_iter()
        .map(|chunk| {
            let mut rep = OccurrenceReport::empty(d);
            let mut hits = Vec::new();
            let mut buf = vec![0u8; k];
            chunk.for_each(|fl| {
                if m.matches_flat(cells, fl, &mut buf) {
                    rep.total += 1;
                    rep.per_weight[fl.weight as usize - 1] += 1;
                    if list {
                        hits.push(fl);
                    }
                }
            });
            (rep, hits)
        })
        .collect();
    let mut total = OccurrenceReport::empty(d);
    let mut flat_hits = Vec::new();
    for (rep, hits) in parts {
        total = total.merge(rep);
        flat_hits.extend(hits);
    }
    if list {
        let n = grid.n();
        let mut lines = Vec::with_capacity(flat_hits.len());
        for fl in flat_hits {
            let a = crate::grid::index_point(fl.cell(0), n, d)?;
            let b = crate::grid::index_point(fl.cell(1), n, d)?;
            let v: Vec<i8> =
                a.0.iter()
                    .zip(&b.0)
                    .map(|(&x, &y)| (y as isize - x as isize) as i8)
                    .collect();
            lines.push(crate::lines::canonicalize(&a, &crate::lines::Direction::new(v)?, n)?);
        }
        total.matches = Some(lines);
    }
    Ok(total)
}

/// Exact count for `n = 2` through the Walsh-Hadamard transform: every pair
/// of distinct cells is a line whose weight is their Hamming distance.
fn count_pairs_n2(m: &Matcher, grid: &Grid) -> Result<OccurrenceReport> {
    let cells = grid.cells().ok_or(Error::NotDense)?;
    let d = grid.d();
    let size = cells.len();
    let mut per_distance = vec![0i128; d + 1];
    let letters = grid.alphabet().len() as u8;
    let mut wanted = Vec::new();
    for a in 0..letters {
        for b in a..letters {
            if m.matches(&[a, b]) {
                wanted.push((a, b));
            }
        }
    }
    let transform = |letter: u8| -> Vec<i128> {
        let mut v: Vec<i128> = cells.iter().map(|&c| (c == letter) as i128).collect();
        fwht(&mut v);
        v
    };
    for (a, b) in wanted {
        let ta = transform(a);
        let tb = if a == b { ta.clone() } else { transform(b) };
        let mut conv: Vec<i128> = ta.iter().zip(&tb).map(|(x, y)| x * y).collect();
        fwht(&mut conv);
        // ordered pairs inside a single letter class appear twice
        let ordered = if a == b { 2 } else { 1 };
        for (z, c) in conv.into_iter().enumerate().skip(1) {
            per_distance[z.count_ones() as usize] += c / (size as i128 * ordered);
        }
    }
    let mut rep = OccurrenceReport::empty(d);
    for r in 1..=d {
        rep.per_weight[r - 1] = per_distance[r] as u128;
        rep.total += per_distance[r] as u128;
    }
    Ok(rep)
}

fn fwht(v: &mut [i128]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (v[j], v[j + h]);
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// Above this dimension, `n = 2` grids are counted through the transform.
const PAIR_TRANSFORM_MIN_D: usize = 12;

fn count_with(m: &Matcher, grid: &Grid, list: bool) -> Result<OccurrenceReport> {
    if let Some(dense) = dense_view(grid)? {
        if grid.n() == 2 && grid.d() >= PAIR_TRANSFORM_MIN_D && !list {
            return count_pairs_n2(m, &dense);
        }
        return count_dense(m, &dense, grid.n(), list);
    }
    let total = count_lines(grid.n(), grid.d())?.total;
    if total > PROCEDURAL_LINE_CAP {
        return Err(Error::Infeasible(format!(
            "{total} lines on a procedural grid; sample with estimate_fraction instead"
        )));
    }
    count_stream(m, grid, enumerate_lines(grid.n(), grid.d())?, list)
}

fn count_stream(
    m: &Matcher,
    grid: &Grid,
    lines: impl IntoIterator<Item = CanonicalLine>,
    list: bool,
) -> Result<OccurrenceReport> {
    let mut rep = OccurrenceReport::empty(grid.d());
    let mut hits = Vec::new();
    for line in lines {
        if m.matches(&read_points(grid, &line_points(&line, grid.n()))) {
            rep.total += 1;
            rep.per_weight[line.weight() - 1] += 1;
            if list {
                hits.push(line);
            }
        }
    }
    if list {
        rep.matches = Some(hits);
    }
    Ok(rep)
}

/// f(w, G): number of lines of `grid` containing `w`.
pub fn count_word(w: &Word, grid: &Grid) -> Result<OccurrenceReport> {
    let m = Matcher::new(std::slice::from_ref(w), grid, grid.n())?;
    count_with(&m, grid, false)
}

/// Like [`count_word`], also listing the matching lines in enumeration order.
pub fn count_word_with_matches(w: &Word, grid: &Grid) -> Result<OccurrenceReport> {
    let m = Matcher::new(std::slice::from_ref(w), grid, grid.n())?;
    count_with(&m, grid, true)
}

/// Counts over an explicit line stream, e.g. a subset of a procedural grid's lines.
pub fn count_word_in_lines(
    w: &Word,
    grid: &Grid,
    lines: impl IntoIterator<Item = CanonicalLine>,
) -> Result<OccurrenceReport> {
    let m = Matcher::new(std::slice::from_ref(w), grid, grid.n())?;
    count_stream(&m, grid, lines, false)
}

/// f(W, G): lines containing at least one member of `words`.
pub fn count_word_set(words: &[Word], grid: &Grid) -> Result<OccurrenceReport> {
    let m = Matcher::new(words, grid, grid.n())?;
    count_with(&m, grid, false)
}

/// Every row, column and both diagonals hold each of the `n` letters once.
pub fn is_diagonal_latin(grid: &Grid) -> Result<bool> {
    if grid.d() != 2 {
        return Err(Error::Parameters(format!(
            "diagonal Latin check needs d=2, got d={}",
            grid.d()
        )));
    }
    let n = grid.n();
    if grid.alphabet().len() != n {
        return Err(Error::Parameters(format!(
            "diagonal Latin check needs {n} letters, alphabet has {}",
            grid.alphabet().len()
        )));
    }
    let dense = dense_view(grid)?.ok_or(Error::NotDense)?;
    let cells = dense.cells().ok_or(Error::NotDense)?;
    if n < 2 {
        return Ok(true);
    }
    let mut ok = true;
    for chunk in flat_run_chunks(n, 2, n, 1)? {
        chunk.for_each(|fl| {
            let mut seen = vec![false; n];
            for t in 0..n {
                seen[cells[fl.cell(t)] as usize] = true;
            }
            ok &= seen.iter().all(|&s| s);
        });
    }
    Ok(ok)
}

/// Number of length-`k` segments reading `w` forwards or backwards
/// (`k = |w|`).
pub fn count_segments_word(w: &Word, grid: &Grid) -> Result<u128> {
    let k = w.len();
    if k > grid.n() {
        return Err(Error::Parameters(format!(
            "word length {k} exceeds grid side {}",
            grid.n()
        )));
    }
    let m = Matcher::new(std::slice::from_ref(w), grid, k)?;
    let dense =
        dense_view(grid)?.ok_or_else(|| Error::Infeasible("segment count on a large procedural grid".into()))?;
    Ok(count_dense(&m, &dense, k, false)?.total)
}

/// Empirical containment fraction over uniformly sampled lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub samples: u64,
    pub hits: u64,
    pub fraction: f64,
    /// Two-sided 99% Hoeffding radius `sqrt(ln(2/0.01) / (2m))`.
    pub radius: f64,
}

pub fn hoeffding_radius(samples: u64) -> f64 {
    ((2.0f64 / 0.01).ln() / (2.0 * samples as f64)).sqrt()
}

pub fn estimate_fraction<R: Rng + ?Sized>(w: &Word, grid: &Grid, samples: u64, rng: &mut R) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::Parameters("need at least one sample".into()));
    }
    let m = Matcher::new(std::slice::from_ref(w), grid, grid.n())?;
    let mut hits = 0u64;
    for _ in 0..samples {
        let line = sample_line(grid.n(), grid.d(), rng)?;
        if m.matches(&read_points(grid, &line_points(&line, grid.n()))) {
            hits += 1;
        }
    }
    Ok(Estimate {
        samples,
        hits,
        fraction: hits as f64 / samples as f64,
        radius: hoeffding_radius(samples),
    })
}
