//! Lines and segments of `[n]^d`.
//!
//! A line is stored by its canonical pair `(p; v)`: the first nonzero entry
//! of `v` is `+1`. Enumeration walks the per-coordinate encoding
//! `{1..n, +, -}^d` in lexicographic order (coordinate 1 most significant,
//! fixed values before `+` before `-`) and keeps the sequences whose first
//! moving coordinate is `+`. Segments of length `k` use the same walk with
//! `+`/`-` refined by the start value along that axis.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{cell_count, Point};

/// Entries in `{-1, 0, +1}`, not all zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(Vec<i8>);

impl Direction {
    pub fn new(v: Vec<i8>) -> Result<Self> {
        if v.iter().any(|&x| !(-1..=1).contains(&x)) {
            return Err(Error::Line(format!("direction {v:?} has entries outside {{-1,0,1}}")));
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::Line("direction is the zero vector".into()));
        }
        Ok(Direction(v))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    fn first_nonzero(&self) -> i8 {
        self.0.iter().copied().find(|&x| x != 0).unwrap_or(0)
    }

    fn negated(&self) -> Direction {
        Direction(self.0.iter().map(|&x| -x).collect())
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn step_point(p: &[usize], v: &[i8], t: usize) -> Vec<isize> {
    p.iter()
        .zip(v)
        .map(|(&c, &dv)| c as isize + t as isize * dv as isize)
        .collect()
}

fn in_range(coords: &[isize], n: usize) -> bool {
    coords.iter().all(|&c| c >= 1 && c <= n as isize)
}

fn to_point(coords: Vec<isize>) -> Point {
    Point(coords.into_iter().map(|c| c as usize).collect())
}

fn canonical_run(p: &Point, v: &Direction, n: usize, len: usize) -> Result<(Point, Direction)> {
    if p.dim() != v.0.len() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: v.0.len(),
        });
    }
    p.validate(n, p.dim())?;
    let end = step_point(p.coords(), v.entries(), len - 1);
    if !in_range(&end, n) {
        return Err(Error::Line(format!(
            "run of length {len} from {p} in direction ({v}) leaves [1,{n}]^{}",
            p.dim()
        )));
    }
    if v.first_nonzero() > 0 {
        Ok((p.clone(), v.clone()))
    } else {
        Ok((to_point(end), v.negated()))
    }
}

/// A line in canonical form. Invariant: the first nonzero entry of `v` is
/// `+1`, `v_j = +1` forces `p_j = 1` and `v_j = -1` forces `p_j = n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLine {
    p: Point,
    v: Direction,
}

impl CanonicalLine {
    pub fn p(&self) -> &Point {
        &self.p
    }

    pub fn v(&self) -> &Direction {
        &self.v
    }

    pub fn weight(&self) -> usize {
        self.v.weight()
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// 1-based `i`: `p + (i - 1) v`.
    pub fn point(&self, i: usize) -> Point {
        to_point(step_point(self.p.coords(), self.v.entries(), i - 1))
    }
}

impl fmt::Display for CanonicalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.p.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{} ; {}", p.join(","), self.v)
    }
}

pub fn canonicalize(p: &Point, v: &Direction, n: usize) -> Result<CanonicalLine> {
    if n < 2 {
        return Err(Error::Line(format!("lines need n >= 2, got {n}")));
    }
    let (p, v) = canonical_run(p, v, n, n)?;
    Ok(CanonicalLine { p, v })
}

pub fn line_points(line: &CanonicalLine, n: usize) -> Vec<Point> {
    (1..=n).map(|i| line.point(i)).collect()
}

/// A length-`k` run of points, canonicalized with the same orientation rule
/// as lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    p: Point,
    v: Direction,
    k: usize,
}

impl Segment {
    pub fn new(p: &Point, v: &Direction, n: usize, k: usize) -> Result<Segment> {
        if k < 2 || k > n {
            return Err(Error::Parameters(format!("segment length {k} outside [2, {n}]")));
        }
        let (p, v) = canonical_run(p, v, n, k)?;
        Ok(Segment { p, v, k })
    }

    pub fn p(&self) -> &Point {
        &self.p
    }

    pub fn v(&self) -> &Direction {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weight(&self) -> usize {
        self.v.weight()
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.k)
            .map(|t| to_point(step_point(self.p.coords(), self.v.entries(), t)))
            .collect()
    }

    /// The full line, when `k == n`.
    pub fn as_line(&self, n: usize) -> Option<CanonicalLine> {
        (self.k == n).then(|| CanonicalLine {
            p: self.p.clone(),
            v: self.v.clone(),
        })
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.p.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{} ; {} ; k={}", p.join(","), self.v, self.k)
    }
}

/// Per-coordinate symbol of the line encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Fixed(usize),
    Plus,
    Minus,
}

/// Decodes a `{1..n, +, -}^d` sequence into a line, mirroring it first when
/// its first moving coordinate is `-`.
pub fn decode_line(symbols: &[Symbol], n: usize) -> Result<CanonicalLine> {
    if n < 2 {
        return Err(Error::Line(format!("lines need n >= 2, got {n}")));
    }
    let mirror = match symbols.iter().find(|s| !matches!(s, Symbol::Fixed(_))) {
        Some(Symbol::Minus) => true,
        Some(_) => false,
        None => return Err(Error::Line("encoding has no moving coordinate".into())),
    };
    let mut p = Vec::with_capacity(symbols.len());
    let mut v = Vec::with_capacity(symbols.len());
    for &s in symbols {
        let s = match (s, mirror) {
            (Symbol::Plus, true) => Symbol::Minus,
            (Symbol::Minus, true) => Symbol::Plus,
            (s, _) => s,
        };
        match s {
            Symbol::Fixed(c) => {
                if c < 1 || c > n {
                    return Err(Error::Line(format!("fixed coordinate {c} outside [1,{n}]")));
                }
                p.push(c);
                v.push(0);
            }
            Symbol::Plus => {
                p.push(1);
                v.push(1);
            }
            Symbol::Minus => {
                p.push(n);
                v.push(-1);
            }
        }
    }
    Ok(CanonicalLine {
        p: Point(p),
        v: Direction(v),
    })
}

/// Symbol layout for length-`k` runs: `n` fixed values, then `n-k+1` `+`
/// starts, then `n-k+1` `-` starts.
#[derive(Debug, Clone, Copy)]
struct Coding {
    n: usize,
    k: usize,
}

enum Decoded {
    Fixed(usize),
    Plus(usize),
    Minus(usize),
}

impl Coding {
    fn starts(&self) -> usize {
        self.n - self.k + 1
    }

    fn radix(&self) -> usize {
        self.n + 2 * self.starts()
    }

    fn decode(&self, sym: usize) -> Decoded {
        let l = self.starts();
        if sym < self.n {
            Decoded::Fixed(sym + 1)
        } else if sym < self.n + l {
            Decoded::Plus(sym - self.n + 1)
        } else {
            Decoded::Minus(self.k + sym - self.n - l)
        }
    }

    fn is_fixed(&self, sym: usize) -> bool {
        sym < self.n
    }

    fn is_plus(&self, sym: usize) -> bool {
        sym >= self.n && sym < self.n + self.starts()
    }

    /// Canonical iff the first moving symbol is a `+`.
    fn canonical(&self, digits: &[usize]) -> bool {
        digits
            .iter()
            .find(|&&s| !self.is_fixed(s))
            .is_some_and(|&s| self.is_plus(s))
    }

    fn segment(&self, digits: &[usize]) -> Segment {
        let mut p = Vec::with_capacity(digits.len());
        let mut v = Vec::with_capacity(digits.len());
        for &s in digits {
            match self.decode(s) {
                Decoded::Fixed(c) => {
                    p.push(c);
                    v.push(0);
                }
                Decoded::Plus(c) => {
                    p.push(c);
                    v.push(1);
                }
                Decoded::Minus(c) => {
                    p.push(c);
                    v.push(-1);
                }
            }
        }
        Segment {
            p: Point(p),
            v: Direction(v),
            k: self.k,
        }
    }

    /// First flat index, flat step and weight of the run.
    fn flat(&self, digits: &[usize], strides: &[usize]) -> FlatLine {
        let mut start = 0usize;
        let mut step = 0isize;
        let mut weight = 0u32;
        for (&s, &stride) in digits.iter().zip(strides) {
            match self.decode(s) {
                Decoded::Fixed(c) => start += (c - 1) * stride,
                Decoded::Plus(c) => {
                    start += (c - 1) * stride;
                    step += stride as isize;
                    weight += 1;
                }
                Decoded::Minus(c) => {
                    start += (c - 1) * stride;
                    step -= stride as isize;
                    weight += 1;
                }
            }
        }
        FlatLine { start, step, weight }
    }
}

/// A run expressed on flat cell indices: cell `t` (0-based) is
/// `start + t * step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatLine {
    pub start: usize,
    pub step: isize,
    pub weight: u32,
}

impl FlatLine {
    #[inline]
    pub fn cell(&self, t: usize) -> usize {
        (self.start as isize + t as isize * self.step) as usize
    }
}

fn strides(n: usize, d: usize) -> Vec<usize> {
    let mut s = vec![1usize; d];
    for j in (0..d.saturating_sub(1)).rev() {
        s[j] = s[j + 1] * n;
    }
    s
}

/// Streams canonical digit vectors in lexicographic order.
struct CanonicalDigits {
    coding: Coding,
    digits: Vec<usize>,
    prefix: usize,
    done: bool,
}

impl CanonicalDigits {
    fn new(coding: Coding, d: usize, prefix: &[usize]) -> Self {
        let mut digits = prefix.to_vec();
        digits.resize(d, 0);
        Self {
            coding,
            digits,
            prefix: prefix.len(),
            done: false,
        }
    }

    fn advance(&mut self) {
        let radix = self.coding.radix();
        for i in (self.prefix..self.digits.len()).rev() {
            if self.digits[i] + 1 < radix {
                self.digits[i] += 1;
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }

    /// Calls `f` on every remaining canonical vector.
    fn for_each(mut self, mut f: impl FnMut(&[usize])) {
        while !self.done {
            if self.coding.canonical(&self.digits) {
                f(&self.digits);
            }
            self.advance();
        }
    }
}

impl Iterator for CanonicalDigits {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while !self.done {
            let hit = self.coding.canonical(&self.digits).then(|| self.digits.clone());
            self.advance();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n < 2 || d < 1 {
        return Err(Error::Parameters(format!(
            "lines need n >= 2 and d >= 1, got n={n} d={d}"
        )));
    }
    Ok(())
}

fn check_segment(n: usize, d: usize, k: usize) -> Result<()> {
    check_nd(n, d)?;
    if k < 2 || k > n {
        return Err(Error::Parameters(format!("segment length {k} outside [2, {n}]")));
    }
    Ok(())
}

/// Every line of `[n]^d` exactly once, in deterministic order.
pub fn enumerate_lines(n: usize, d: usize) -> Result<impl Iterator<Item = CanonicalLine>> {
    check_nd(n, d)?;
    let coding = Coding { n, k: n };
    Ok(CanonicalDigits::new(coding, d, &[]).map(move |digits| {
        let s = coding.segment(&digits);
        CanonicalLine { p: s.p, v: s.v }
    }))
}

/// Every length-`k` segment exactly once. For `k == n` the order matches
/// [`enumerate_lines`].
pub fn enumerate_segments(n: usize, d: usize, k: usize) -> Result<impl Iterator<Item = Segment>> {
    check_segment(n, d, k)?;
    let coding = Coding { n, k };
    Ok(CanonicalDigits::new(coding, d, &[]).map(move |digits| coding.segment(&digits)))
}

/// Prefixes splitting the run stream into roughly `min_parts` disjoint,
/// ordered pieces.
fn partition_prefixes(coding: Coding, d: usize, min_parts: usize) -> Vec<Vec<usize>> {
    let radix = coding.radix();
    let mut depth = 0;
    let mut parts = 1usize;
    while depth < d && parts < min_parts {
        depth += 1;
        parts = parts.saturating_mul(radix);
    }
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..radix).map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    out
}

/// Flat-index runs of length `k`, split into ordered chunks that can be
/// consumed independently. Concatenating the chunks reproduces the
/// sequential enumeration order.
pub fn flat_run_chunks(n: usize, d: usize, k: usize, min_parts: usize) -> Result<Vec<FlatChunk>> {
    check_segment(n, d, k)?;
    cell_count(n, d)?;
    let coding = Coding { n, k };
    Ok(partition_prefixes(coding, d, min_parts)
        .into_iter()
        .map(|prefix| FlatChunk { coding, d, prefix })
        .collect())
}

/// One piece of a partitioned run stream.
#[derive(Debug, Clone)]
pub struct FlatChunk {
    coding: Coding,
    d: usize,
    prefix: Vec<usize>,
}

impl FlatChunk {
    pub fn for_each(&self, mut f: impl FnMut(FlatLine)) {
        let st = strides(self.coding.n, self.d);
        let coding = self.coding;
        CanonicalDigits::new(coding, self.d, &self.prefix).for_each(|digits| f(coding.flat(digits, &st)));
    }

    pub fn for_each_segment(&self, mut f: impl FnMut(Segment)) {
        let coding = self.coding;
        CanonicalDigits::new(coding, self.d, &self.prefix).for_each(|digits| f(coding.segment(digits)));
    }
}

fn binomial(d: usize, r: usize) -> Option<u128> {
    if r > d {
        return Some(0);
    }
    let r = r.min(d - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((d - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn pow_u128(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Closed-form line tallies: `per_weight[r - 1]` lines of weight `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCounts {
    pub per_weight: Vec<u128>,
    pub total: u128,
}

/// `|L_r| = C(d, r) 2^(r-1) n^(d-r)` and `|L| = ((n+2)^d - n^d) / 2`.
pub fn count_lines(n: usize, d: usize) -> Result<LineCounts> {
    check_nd(n, d)?;
    let overflow = || Error::Overflow(format!("line count for n={n} d={d}"));
    let mut per_weight = Vec::with_capacity(d);
    let mut sum: u128 = 0;
    for r in 1..=d {
        let c = binomial(d, r)
            .and_then(|b| b.checked_mul(pow_u128(2, r - 1)?))
            .and_then(|b| b.checked_mul(pow_u128(n as u128, d - r)?))
            .ok_or_else(overflow)?;
        sum = sum.checked_add(c).ok_or_else(overflow)?;
        per_weight.push(c);
    }
    let total = pow_u128(n as u128 + 2, d)
        .and_then(|a| a.checked_sub(pow_u128(n as u128, d)?))
        .ok_or_else(overflow)?
        / 2;
    debug_assert_eq!(sum, total);
    Ok(LineCounts { per_weight, total })
}

/// `((3n - 2k + 2)^d - n^d) / 2`.
pub fn count_segments(n: usize, d: usize, k: usize) -> Result<u128> {
    check_segment(n, d, k)?;
    let base = (3 * n + 2 - 2 * k) as u128;
    pow_u128(base, d)
        .and_then(|a| a.checked_sub(pow_u128(n as u128, d)?))
        .map(|x| x / 2)
        .ok_or_else(|| Error::Overflow(format!("segment count for n={n} d={d} k={k}")))
}

pub const SAMPLE_REJECTION_CAP: u64 = 1_000_000;

/// Uniform random line: draw `{1..n, +, -}^d`, reject sequences without a
/// moving coordinate and mirror so the first moving symbol is `+`. Every
/// line has exactly two preimages.
pub fn sample_line<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<CanonicalLine> {
    check_nd(n, d)?;
    let mut symbols = vec![Symbol::Plus; d];
    for _ in 0..SAMPLE_REJECTION_CAP {
        let mut moving = false;
        for s in symbols.iter_mut() {
            let x = rng.gen_range(0..n + 2);
            *s = if x < n {
                Symbol::Fixed(x + 1)
            } else if x == n {
                moving = true;
                Symbol::Plus
            } else {
                moving = true;
                Symbol::Minus
            };
        }
        if moving {
            return decode_line(&symbols, n);
        }
    }
    Err(Error::SamplingExhausted(SAMPLE_REJECTION_CAP))
}

/// All lines of `[n]^d` as flat cell indices, `n` per line, in enumeration
/// order.
#[derive(Debug)]
pub struct LineTable {
    pub n: usize,
    pub d: usize,
    cells: Vec<u32>,
    weights: Vec<u8>,
}

/// Largest table (total stored cell indices) the cache will build.
pub const LINE_TABLE_CAP: usize = 1 << 26;

impl LineTable {
    fn build(n: usize, d: usize) -> Result<LineTable> {
        let total = count_lines(n, d)?.total;
        let size = total.saturating_mul(n as u128);
        if size > LINE_TABLE_CAP as u128 || cell_count(n, d)? > u32::MAX as usize {
            return Err(Error::Infeasible(format!("line table for n={n} d={d}")));
        }
        let mut cells = Vec::with_capacity(size as usize);
        let mut weights = Vec::with_capacity(total as usize);
        for chunk in flat_run_chunks(n, d, n, 1)? {
            chunk.for_each(|fl| {
                for t in 0..n {
                    cells.push(fl.cell(t) as u32);
                }
                weights.push(fl.weight as u8);
            });
        }
        Ok(LineTable { n, d, cells, weights })
    }

    /// Shared, lazily built table for `(n, d)`.
    pub fn get(n: usize, d: usize) -> Result<Arc<LineTable>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<LineTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&(n, d)) {
            return Ok(t.clone());
        }
        check_nd(n, d)?;
        let table = Arc::new(LineTable::build(n, d)?);
        cache.lock().unwrap().insert((n, d), table.clone());
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn line(&self, i: usize) -> &[u32] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    pub fn weight(&self, i: usize) -> usize {
        self.weights[i] as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.n)
    }
}
