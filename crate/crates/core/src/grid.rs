//! Points of `[n]^d`, mixed-radix indexing and the grid type.
//!
//! Coordinates are 1-based in every public signature. Flat indices put
//! coordinate 1 most significant and coordinate `d` fastest.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::Alphabet;

/// A point of `[n]^d` with 1-based coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<usize>);

impl Point {
    pub fn new(coords: Vec<usize>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn validate(&self, n: usize, d: usize) -> Result<()> {
        if self.0.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: self.0.len(),
            });
        }
        for (axis, &value) in self.0.iter().enumerate() {
            if value < 1 || value > n {
                return Err(Error::CoordinateOutOfRange {
                    axis: axis + 1,
                    value,
                    n,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `n^d`, or an error when it does not fit in `usize`.
pub fn cell_count(n: usize, d: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..d {
        total = total
            .checked_mul(n)
            .ok_or_else(|| Error::Overflow(format!("{n}^{d} cells")))?;
    }
    Ok(total)
}

pub fn point_index(p: &Point, n: usize, d: usize) -> Result<usize> {
    p.validate(n, d)?;
    cell_count(n, d)?;
    Ok(p.0.iter().fold(0, |acc, &c| acc * n + (c - 1)))
}

pub fn index_point(index: usize, n: usize, d: usize) -> Result<Point> {
    let total = cell_count(n, d)?;
    if index >= total {
        return Err(Error::Parameters(format!("index {index} outside [0, {total})")));
    }
    let mut coords = vec![0; d];
    let mut rest = index;
    for slot in coords.iter_mut().rev() {
        *slot = rest % n + 1;
        rest /= n;
    }
    Ok(Point(coords))
}

/// A deterministic rule assigning a letter index to every point.
pub trait CellRule: Send + Sync + fmt::Debug {
    /// `coords` are 1-based and already validated.
    fn letter_at(&self, coords: &[usize]) -> u8;
}

#[derive(Clone, Debug)]
pub enum Storage {
    Dense(Vec<u8>),
    Procedural(Arc<dyn CellRule>),
}

/// A function from `[n]^d` to letters.
#[derive(Clone, Debug)]
pub struct Grid {
    n: usize,
    d: usize,
    alphabet: Alphabet,
    storage: Storage,
}

impl PartialEq for Grid {
    /// Only dense grids compare equal; procedural rules are opaque.
    fn eq(&self, other: &Self) -> bool {
        match (&self.storage, &other.storage) {
            (Storage::Dense(a), Storage::Dense(b)) => {
                self.n == other.n && self.d == other.d && self.alphabet == other.alphabet && a == b
            }
            _ => false,
        }
    }
}

impl Grid {
    pub fn dense(n: usize, d: usize, alphabet: Alphabet, cells: Vec<u8>) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::Parameters(format!(
                "grid needs n >= 1 and d >= 1, got n={n} d={d}"
            )));
        }
        let expected = cell_count(n, d)?;
        if cells.len() != expected {
            return Err(Error::Parameters(format!(
                "expected {expected} cells, got {}",
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c as usize >= alphabet.len()) {
            return Err(Error::Parameters(format!("cell letter index {bad} outside alphabet")));
        }
        Ok(Self {
            n,
            d,
            alphabet,
            storage: Storage::Dense(cells),
        })
    }

    pub fn filled(n: usize, d: usize, alphabet: Alphabet, letter: u8) -> Result<Self> {
        let cells = vec![letter; cell_count(n, d)?];
        Self::dense(n, d, alphabet, cells)
    }

    /// Dense 2-D grid from row strings.
    pub fn from_rows(alphabet: Alphabet, rows: &[&str]) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.chars().count() != n {
                return Err(Error::Parameters(format!("row {row:?} is not of length {n}")));
            }
            for c in row.chars() {
                cells.push(
                    alphabet
                        .index_of(c)
                        .ok_or_else(|| Error::Parameters(format!("letter {c:?} not in alphabet")))?,
                );
            }
        }
        Self::dense(n, 2, alphabet, cells)
    }

    pub fn procedural(n: usize, d: usize, alphabet: Alphabet, rule: Arc<dyn CellRule>) -> Self {
        Self {
            n,
            d,
            alphabet,
            storage: Storage::Procedural(rule),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn storage(&self) -> &Storage {
        &self.storage
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn cells(&self) -> Option<&[u8]> {
        match &self.storage {
            Storage::Dense(c) => Some(c),
            Storage::Procedural(_) => None,
        }
    }

    pub fn get(&self, p: &Point) -> Result<u8> {
        p.validate(self.n, self.d)?;
        Ok(self.get_unchecked(p.coords()))
    }

    /// Reads a cell from already-validated 1-based coordinates.
    pub fn get_unchecked(&self, coords: &[usize]) -> u8 {
        match &self.storage {
            Storage::Dense(cells) => {
                let idx = coords.iter().fold(0, |acc, &c| acc * self.n + (c - 1));
                cells[idx]
            }
            Storage::Procedural(rule) => rule.letter_at(coords),
        }
    }

    pub fn get_char(&self, p: &Point) -> Result<char> {
        Ok(self.alphabet.letter(self.get(p)?))
    }

    /// Evaluates every cell; fails when `n^d` exceeds `cap`.
    pub fn to_dense(&self, cap: usize) -> Result<Grid> {
        match &self.storage {
            Storage::Dense(_) => Ok(self.clone()),
            Storage::Procedural(rule) => {
                let total = cell_count(self.n, self.d)?;
                if total > cap {
                    return Err(Error::Infeasible(format!("{total} cells (cap {cap})")));
                }
                let mut coords = vec![1; self.d];
                let mut cells = Vec::with_capacity(total);
                for _ in 0..total {
                    cells.push(rule.letter_at(&coords));
                    for slot in coords.iter_mut().rev() {
                        if *slot < self.n {
                            *slot += 1;
                            break;
                        }
                        *slot = 1;
                    }
                }
                Grid::dense(self.n, self.d, self.alphabet.clone(), cells)
            }
        }
    }

    /// Same cells expressed over a larger alphabet containing this one's letters.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Grid> {
        let cells = self.cells().ok_or(Error::NotDense)?;
        let map: Vec<u8> = self
            .alphabet
            .letters()
            .iter()
            .map(|&c| {
                alphabet
                    .index_of(c)
                    .ok_or_else(|| Error::Alphabet(format!("letter {c:?} missing from {alphabet}")))
            })
            .collect::<Result<_>>()?;
        let cells = cells.iter().map(|&c| map[c as usize]).collect();
        Grid::dense(self.n, self.d, alphabet.clone(), cells)
    }

    /// Row strings of a dense 2-D grid.
    pub fn rows(&self) -> Option<Vec<String>> {
        let cells = self.cells()?;
        if self.d != 2 {
            return None;
        }
        Some(
            cells
                .chunks(self.n)
                .map(|r| r.iter().map(|&c| self.alphabet.letter(c)).collect())
                .collect(),
        )
    }
}
