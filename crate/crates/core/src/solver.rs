//! Exact maximization of the number of lines containing a word, by
//! branch-and-bound over cell assignments with symmetry pruning.
//!
//! A line stays *alive* while its assigned cells agree with at least one
//! orientation of some target word; the number of alive lines bounds every
//! completion of a partial grid and equals the count at a leaf. Symmetric
//! copies are cut with a partial lex-leader test: a partial assignment is
//! dropped once some grid symmetry provably maps it to a smaller one.
//!
//! The search space is split into prefix tasks that run in parallel and
//! share only the incumbent value. Optimum, witnesses and class count are
//! assembled after all tasks finish, so they do not depend on the worker
//! count. Search statistics do.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bounds::{upper_bound_2d, upper_bound_d};
use crate::constructions::best_construction;
use crate::error::{Error, Result};
use crate::grid::{cell_count, Grid};
use crate::lines::{count_lines, enumerate_lines, LineTable};
use crate::occurrence::count_word_set;
use crate::symmetry::{canonical_cells, GridSymmetry};
use crate::word::{Alphabet, Word};

/// Largest grid the solver accepts.
pub const MAX_CELLS: usize = 64;
/// Largest number of grids [`solve_oracle`] enumerates.
pub const ORACLE_CAP: u128 = 1 << 28;
/// Prefix tasks are split until at least this many exist.
const TARGET_TASKS: usize = 512;

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub symmetry: bool,
    /// Collect every optimal grid up to symmetry instead of one witness.
    pub all_optima: bool,
    pub workers: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            node_budget: None,
            time_budget: None,
            symmetry: true,
            all_optima: false,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SolveConfig {
    fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Parameters("worker count must be at least 1".into()));
        }
        if self.node_budget == Some(0) || self.time_budget == Some(Duration::ZERO) {
            return Err(Error::Parameters("budgets must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub bound_prunes: u64,
    pub symmetry_prunes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Exact optimum when `complete`, otherwise the best value found.
    pub optimum: u64,
    /// Equals `optimum` when `complete`.
    pub upper: u64,
    pub complete: bool,
    /// Lexicographically minimal representative of each optimal class
    /// found, sorted; a single witness unless `all_optima` was set.
    pub witnesses: Vec<Grid>,
    /// Number of optimal symmetry classes, with `all_optima` only.
    pub classes: Option<usize>,
    pub stats: SolveStats,
}

struct Problem {
    n: usize,
    d: usize,
    alphabet: Alphabet,
    /// Grid letter index of each search letter, ascending.
    letters: Vec<u8>,
    words: Vec<Word>,
    cells: usize,
    lines: usize,
    /// Cell visited at each search depth.
    order: Vec<usize>,
    /// `(line, offset)` pairs through the cell at each depth.
    incident: Vec<Vec<(u32, u8)>>,
    /// `compat[t][c]`: patterns whose letter at offset `t` is search letter `c`.
    compat: Vec<Vec<u64>>,
    full_mask: u64,
    /// For each non-identity symmetry, depth of the image of each depth's cell.
    sym_perms: Vec<Vec<usize>>,
    /// Flat cell maps of the whole group, for canonical witnesses.
    group_maps: Vec<Vec<usize>>,
}

impl Problem {
    fn new(words: &[Word], n: usize, d: usize, symmetry: bool) -> Result<Problem> {
        if words.is_empty() {
            return Err(Error::Word("no target words".into()));
        }
        let mut alphabet = words[0].alphabet().clone();
        for w in &words[1..] {
            alphabet = alphabet.union(w.alphabet())?;
        }
        let words: Vec<Word> = words.iter().map(|w| w.over(&alphabet)).collect::<Result<_>>()?;
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch { word: w.len(), side: n });
        }
        let cells = cell_count(n, d)?;
        if cells > MAX_CELLS {
            return Err(Error::Infeasible(format!(
                "{cells} cells exceed the solver cap of {MAX_CELLS}"
            )));
        }
        let letters: Vec<u8> = words
            .iter()
            .flat_map(|w| w.symbols().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut patterns: Vec<Vec<u8>> = Vec::new();
        for w in &words {
            for p in [w.symbols().to_vec(), w.reversed().symbols().to_vec()] {
                if !patterns.contains(&p) {
                    patterns.push(p);
                }
            }
        }
        if patterns.len() > 64 {
            return Err(Error::Infeasible(format!(
                "{} distinct patterns exceed 64",
                patterns.len()
            )));
        }
        let full_mask = if patterns.len() == 64 {
            u64::MAX
        } else {
            (1u64 << patterns.len()) - 1
        };
        let compat: Vec<Vec<u64>> = (0..n)
            .map(|t| {
                letters
                    .iter()
                    .map(|&l| {
                        patterns
                            .iter()
                            .enumerate()
                            .filter(|(_, p)| p[t] == l)
                            .fold(0u64, |m, (i, _)| m | 1 << i)
                    })
                    .collect()
            })
            .collect();

        let table = LineTable::get(n, d)?;
        let mut by_cell: Vec<Vec<(u32, u8)>> = vec![Vec::new(); cells];
        for (li, line) in table.iter().enumerate() {
            for (t, &c) in line.iter().enumerate() {
                by_cell[c as usize].push((li as u32, t as u8));
            }
        }
        let mut order: Vec<usize> = (0..cells).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(by_cell[c].len()), c));
        let mut depth_of = vec![0; cells];
        for (pos, &c) in order.iter().enumerate() {
            depth_of[c] = pos;
        }
        let incident = order.iter().map(|&c| by_cell[c].clone()).collect();

        let group = GridSymmetry::all(d);
        let group_maps: Vec<Vec<usize>> = group.iter().map(|g| g.cell_map(n)).collect::<Result<_>>()?;
        let sym_perms = if symmetry {
            group
                .iter()
                .zip(&group_maps)
                .filter(|(g, _)| !g.is_identity())
                .map(|(_, map)| order.iter().map(|&c| depth_of[map[c]]).collect())
                .collect()
        } else {
            Vec::new()
        };
        Ok(Problem {
            n,
            d,
            alphabet,
            letters,
            words,
            cells,
            lines: table.len(),
            order,
            incident,
            compat,
            full_mask,
            sym_perms,
            group_maps,
        })
    }

    fn grid_cells(&self, x: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.cells];
        for (pos, &c) in x.iter().enumerate() {
            out[self.order[pos]] = self.letters[c as usize];
        }
        out
    }
}

/// Shared across workers.
struct Shared {
    best: AtomicU64,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
    target: Option<u64>,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
}

impl Shared {
    fn raise(&self, v: u64) {
        self.best.fetch_max(v, Ordering::Relaxed);
        if self.target.is_some_and(|t| v >= t) {
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    fn charge(&self, nodes: u64) {
        let total = self.nodes.fetch_add(nodes, Ordering::Relaxed) + nodes;
        let over_nodes = self.node_budget.is_some_and(|b| total > b);
        let over_time = self.deadline.is_some_and(|t| Instant::now() >= t);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Prune subtrees that cannot beat the incumbent.
    Improve,
    /// Keep subtrees that can tie the incumbent; record such leaves.
    Collect,
    /// Stop at the first leaf reaching a known value.
    Locate(u64),
}

struct Worker<'a> {
    pb: &'a Problem,
    x: Vec<u8>,
    masks: Vec<u64>,
    alive: u64,
    undo: Vec<(u32, u64)>,
    stats: SolveStats,
    pending_nodes: u64,
    leaves: Vec<(u64, Vec<u8>)>,
    found: Option<Vec<u8>>,
}

impl<'a> Worker<'a> {
    fn new(pb: &'a Problem) -> Self {
        Self {
            pb,
            x: Vec::with_capacity(pb.cells),
            masks: vec![pb.full_mask; pb.lines],
            alive: pb.lines as u64,
            undo: Vec::new(),
            stats: SolveStats::default(),
            pending_nodes: 0,
            leaves: Vec::new(),
            found: None,
        }
    }

    fn push(&mut self, c: u8) {
        let depth = self.x.len();
        self.x.push(c);
        for &(line, t) in &self.pb.incident[depth] {
            let old = self.masks[line as usize];
            let new = old & self.pb.compat[t as usize][c as usize];
            if new != old {
                self.undo.push((line, old));
                self.masks[line as usize] = new;
                if new == 0 {
                    self.alive -= 1;
                }
            }
        }
        self.undo.push((u32::MAX, 0));
    }

    fn pop(&mut self) {
        self.x.pop();
        self.undo.pop();
        while let Some(&(line, old)) = self.undo.last() {
            if line == u32::MAX {
                break;
            }
            self.undo.pop();
            if self.masks[line as usize] == 0 {
                self.alive += 1;
            }
            self.masks[line as usize] = old;
        }
    }

    /// Some symmetry maps the assigned prefix to a smaller one.
    fn dominated(&self) -> bool {
        let x = &self.x;
        let len = x.len();
        'sym: for perm in &self.pb.sym_perms {
            for i in 0..len {
                let j = perm[i];
                if j >= len {
                    continue 'sym;
                }
                match x[j].cmp(&x[i]) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => continue 'sym,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        false
    }

    fn cut(&self, mode: Mode, best: u64) -> bool {
        match mode {
            Mode::Improve => self.alive <= best,
            Mode::Collect => self.alive < best,
            Mode::Locate(v) => self.alive < v,
        }
    }

    /// Applies `prefix`; false if it is pruned on the way.
    fn enter(&mut self, prefix: &[u8], mode: Mode, best: u64) -> bool {
        for &c in prefix {
            self.push(c);
            if self.cut(mode, best) || self.dominated() {
                return false;
            }
        }
        true
    }

    fn reset(&mut self) {
        while !self.x.is_empty() {
            self.pop();
        }
    }

    fn dfs(&mut self, shared: &Shared, mode: Mode) {
        if shared.stop.load(Ordering::Relaxed) || self.found.is_some() {
            return;
        }
        self.stats.nodes += 1;
        self.pending_nodes += 1;
        if self.pending_nodes >= 4096 {
            shared.charge(self.pending_nodes);
            self.pending_nodes = 0;
        }
        if self.x.len() == self.pb.cells {
            let v = self.alive;
            match mode {
                Mode::Improve => {
                    if v > shared.best.load(Ordering::Relaxed) {
                        shared.raise(v);
                        self.leaves.push((v, self.x.clone()));
                    }
                }
                Mode::Collect => {
                    if v >= shared.best.load(Ordering::Relaxed) {
                        shared.raise(v);
                        self.leaves.push((v, self.x.clone()));
                    }
                }
                Mode::Locate(target) => {
                    if v == target {
                        self.found = Some(self.x.clone());
                    }
                }
            }
            return;
        }
        for c in 0..self.pb.letters.len() as u8 {
            self.push(c);
            let best = shared.best.load(Ordering::Relaxed);
            if self.cut(mode, best) {
                self.stats.bound_prunes += 1;
            } else if self.dominated() {
                self.stats.symmetry_prunes += 1;
            } else {
                self.dfs(shared, mode);
            }
            self.pop();
            if self.found.is_some() {
                return;
            }
        }
    }

    fn flush(&mut self, shared: &Shared) {
        shared.charge(self.pending_nodes);
        self.pending_nodes = 0;
    }
}

/// Prefixes surviving symmetry pruning, each with the alive count at its end.
fn prefix_tasks(pb: &Problem) -> Vec<(Vec<u8>, u64)> {
    let q = pb.letters.len();
    let mut depth = 0;
    let mut width = 1usize;
    while width < TARGET_TASKS && depth < pb.cells {
        width = width.saturating_mul(q);
        depth += 1;
    }
    let mut out = Vec::new();
    let mut w = Worker::new(pb);
    fn rec(w: &mut Worker, depth: usize, out: &mut Vec<(Vec<u8>, u64)>) {
        if w.x.len() == depth {
            out.push((w.x.clone(), w.alive));
            return;
        }
        for c in 0..w.pb.letters.len() as u8 {
            w.push(c);
            if !w.dominated() {
                rec(w, depth, out);
            }
            w.pop();
        }
    }
    rec(&mut w, depth, &mut out);
    out
}

struct TaskOutcome {
    finished: bool,
    root_alive: u64,
    leaves: Vec<(u64, Vec<u8>)>,
    stats: SolveStats,
}

/// `fallback` is a known grid and its count, reported when a budget stops
/// the search before anything better is found.
fn run(
    pb: &Problem,
    cfg: &SolveConfig,
    seed: u64,
    target: Option<u64>,
    fallback: Option<(u64, Grid)>,
) -> Result<SolveResult> {
    let start = Instant::now();
    let shared = Shared {
        best: AtomicU64::new(seed),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
        target: if cfg.all_optima { None } else { target },
        node_budget: cfg.node_budget,
        deadline: cfg.time_budget.map(|t| start + t),
    };
    if shared.target.is_some_and(|t| seed >= t) {
        shared.stop.store(true, Ordering::Relaxed);
    }
    let mode = if cfg.all_optima { Mode::Collect } else { Mode::Improve };
    let tasks = prefix_tasks(pb);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Parameters(format!("thread pool: {e}")))?;
    let outcomes: Vec<TaskOutcome> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(prefix, root_alive)| {
                let mut w = Worker::new(pb);
                let mut finished = true;
                if shared.exhausted.load(Ordering::Relaxed) {
                    finished = false;
                } else if w.enter(prefix, mode, shared.best.load(Ordering::Relaxed)) {
                    w.dfs(&shared, mode);
                    finished = !shared.exhausted.load(Ordering::Relaxed);
                }
                w.flush(&shared);
                TaskOutcome {
                    finished,
                    root_alive: *root_alive,
                    leaves: std::mem::take(&mut w.leaves),
                    stats: w.stats,
                }
            })
            .collect()
    });

    let mut stats = SolveStats::default();
    for o in &outcomes {
        stats.nodes += o.stats.nodes;
        stats.bound_prunes += o.stats.bound_prunes;
        stats.symmetry_prunes += o.stats.symmetry_prunes;
    }
    let exhausted = shared.exhausted.load(Ordering::Relaxed);
    let reached_target = shared.target.is_some_and(|t| shared.best.load(Ordering::Relaxed) >= t);
    let mut optimum = shared.best.load(Ordering::Relaxed);
    let open = outcomes
        .iter()
        .filter(|o| !o.finished)
        .map(|o| o.root_alive)
        .max()
        .unwrap_or(0);
    let complete = reached_target || !exhausted || open <= optimum;
    let upper = if complete { optimum } else { open.max(optimum) };

    let mut witnesses = Vec::new();
    let mut classes = None;
    if cfg.all_optima {
        let mut reps = BTreeSet::new();
        for o in &outcomes {
            for (v, x) in &o.leaves {
                if *v == optimum {
                    reps.insert(canonical_cells(&pb.grid_cells(x), &pb.group_maps));
                }
            }
        }
        if complete {
            classes = Some(reps.len());
        }
        for cells in reps {
            witnesses.push(Grid::dense(pb.n, pb.d, pb.alphabet.clone(), cells)?);
        }
    }
    if witnesses.is_empty() && !complete {
        let leaf = outcomes.iter().flat_map(|o| &o.leaves).find(|(v, _)| *v == optimum);
        if let Some((_, x)) = leaf {
            let cells = canonical_cells(&pb.grid_cells(x), &pb.group_maps);
            witnesses.push(Grid::dense(pb.n, pb.d, pb.alphabet.clone(), cells)?);
        }
    }
    if witnesses.is_empty() && complete {
        if let Some(x) = locate(pb, &tasks, optimum) {
            let cells = canonical_cells(&pb.grid_cells(&x), &pb.group_maps);
            witnesses.push(Grid::dense(pb.n, pb.d, pb.alphabet.clone(), cells)?);
        }
    }
    if let Some((value, grid)) = fallback {
        if witnesses.is_empty() && value >= optimum {
            optimum = value;
            witnesses.push(grid);
        }
    }
    for g in &witnesses {
        let got = count_word_set(&pb.words, g)?.total as u64;
        if got != optimum {
            return Err(Error::Inconsistent(format!(
                "witness recounts to {got}, search reported {optimum}"
            )));
        }
    }
    stats.elapsed = start.elapsed();
    Ok(SolveResult {
        optimum,
        upper,
        complete,
        witnesses,
        classes,
        stats,
    })
}

/// First leaf in task order reaching `value`, searched sequentially.
fn locate(pb: &Problem, tasks: &[(Vec<u8>, u64)], value: u64) -> Option<Vec<u8>> {
    let shared = Shared {
        best: AtomicU64::new(0),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
        target: None,
        node_budget: None,
        deadline: None,
    };
    let mode = Mode::Locate(value);
    let mut w = Worker::new(pb);
    for (prefix, alive) in tasks {
        if *alive < value {
            continue;
        }
        if w.enter(prefix, mode, 0) {
            w.dfs(&shared, mode);
            if let Some(x) = w.found.take() {
                return Some(x);
            }
        }
        w.reset();
    }
    None
}

fn static_upper(w: &Word, d: usize) -> Result<u64> {
    let v = if d == 2 {
        upper_bound_2d(w).value
    } else {
        upper_bound_d(w, d)?.value
    };
    Ok(v as u64)
}

/// Maximum of the number of lines containing `w` over all `n`-grids in
/// dimension `d`, searching only grids over the letters of `w`.
pub fn solve(w: &Word, n: usize, d: usize, cfg: &SolveConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let pb = Problem::new(std::slice::from_ref(w), n, d, cfg.symmetry)?;
    let fallback = best_construction(w, d).ok().map(|c| (c.achieved as u64, c.grid));
    let seed = fallback.as_ref().map_or(0, |(v, _)| v.saturating_sub(1));
    let target = static_upper(w, d).ok();
    run(&pb, cfg, seed, target, fallback)
}

/// Like [`solve`] for the number of lines containing any word of `words`,
/// over the union of their letters.
pub fn solve_set(words: &[Word], n: usize, d: usize, cfg: &SolveConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let pb = Problem::new(words, n, d, cfg.symmetry)?;
    let total = count_lines(n, d)?.total as u64;
    run(&pb, cfg, 0, Some(total), None)
}

/// Plain enumeration of every grid over the letters of `w`.
pub fn solve_oracle(w: &Word, n: usize, d: usize) -> Result<u64> {
    if w.len() != n {
        return Err(Error::LengthMismatch { word: w.len(), side: n });
    }
    let letters: Vec<u8> = w
        .symbols()
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cells = cell_count(n, d)?;
    let q = letters.len() as u128;
    let grids = q
        .checked_pow(cells as u32)
        .filter(|&g| g <= ORACLE_CAP)
        .ok_or_else(|| Error::Infeasible(format!("{q}^{cells} grids exceed the oracle cap")))?;
    let lines: Vec<Vec<usize>> = enumerate_lines(n, d)?
        .map(|l| {
            (1..=n)
                .map(|i| l.point(i).coords().iter().fold(0, |acc, &c| acc * n + c - 1))
                .collect()
        })
        .collect();
    let fwd = w.symbols().to_vec();
    let rev = w.reversed().symbols().to_vec();
    let best = (0..grids as u64)
        .into_par_iter()
        .map_init(
            || vec![0u8; cells],
            |grid, mut code| {
                for slot in grid.iter_mut() {
                    *slot = letters[(code % q as u64) as usize];
                    code /= q as u64;
                }
                lines
                    .iter()
                    .filter(|line| {
                        let read = line.iter().map(|&c| grid[c]);
                        read.clone().eq(fwd.iter().copied()) || read.eq(rev.iter().copied())
                    })
                    .count() as u64
            },
        )
        .max()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn cfg(workers: usize) -> SolveConfig {
        SolveConfig {
            workers,
            ..SolveConfig::default()
        }
    }

    #[test]
    fn small_optima() {
        let r = solve(&w("AMM"), 3, 2, &cfg(2)).unwrap();
        assert!(r.complete);
        assert_eq!(r.optimum, 5);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(solve(&w("AAA"), 3, 2, &cfg(2)).unwrap().optimum, 8);
        assert_eq!(solve(&w("AMA"), 3, 2, &cfg(2)).unwrap().optimum, 6);
        assert_eq!(solve(&w("AM"), 2, 3, &cfg(2)).unwrap().optimum, 16);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(solve_oracle(&w("AMA"), 3, 2).unwrap(), 6);
        assert_eq!(solve_oracle(&w("AMM"), 3, 2).unwrap(), 5);
        assert!(solve_oracle(&w("ABCD"), 4, 2).is_err());
    }

    #[test]
    fn symmetry_pruning_keeps_optimum() {
        for s in ["AMM", "ABC", "AMA", "ABB"] {
            let on = solve(&w(s), 3, 2, &cfg(2)).unwrap();
            let off = solve(
                &w(s),
                3,
                2,
                &SolveConfig {
                    symmetry: false,
                    ..cfg(2)
                },
            )
            .unwrap();
            assert_eq!(on.optimum, off.optimum, "{s}");
        }
    }

    #[test]
    fn all_optima_classes_agree_with_and_without_symmetry() {
        for s in ["AMM", "ABC", "AMA"] {
            let mk = |symmetry| SolveConfig {
                symmetry,
                all_optima: true,
                ..cfg(4)
            };
            let on = solve(&w(s), 3, 2, &mk(true)).unwrap();
            let off = solve(&w(s), 3, 2, &mk(false)).unwrap();
            assert_eq!(on.classes, off.classes, "{s}");
            let a: Vec<_> = on.witnesses.iter().map(|g| g.cells().unwrap().to_vec()).collect();
            let b: Vec<_> = off.witnesses.iter().map(|g| g.cells().unwrap().to_vec()).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn set_examples() {
        let r = solve_set(&[w("AA"), w("MM")], 2, 2, &cfg(2)).unwrap();
        assert_eq!(r.optimum, 6);
        let single = solve_set(&[w("AMM")], 3, 2, &cfg(2)).unwrap();
        assert_eq!(single.optimum, 5);
    }

    #[test]
    fn budget_yields_interval() {
        let r = solve(
            &w("ABC"),
            3,
            2,
            &SolveConfig {
                node_budget: Some(1),
                symmetry: false,
                ..cfg(1)
            },
        )
        .unwrap();
        assert!(r.optimum <= r.upper);
        if !r.complete {
            assert!(r.upper >= 5);
        }
        assert!(solve(&w("AMM"), 3, 2, &SolveConfig { workers: 0, ..cfg(1) }).is_err());
        assert!(solve(&w("AMM"), 4, 2, &cfg(1)).is_err());
    }
}
