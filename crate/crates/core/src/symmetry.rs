//! The hyperoctahedral group acting on `[n]^d`: axis permutations combined
//! with per-axis reflections `x -> n - x + 1`.

use crate::error::{Error, Result};
use crate::grid::{cell_count, Grid};

/// `g(p)[perm[j]] = if reflect[j] { n + 1 - p[j] } else { p[j] }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridSymmetry {
    perm: Vec<usize>,
    reflect: Vec<bool>,
}

impl GridSymmetry {
    pub fn new(perm: Vec<usize>, reflect: Vec<bool>) -> Result<Self> {
        let d = perm.len();
        if reflect.len() != d {
            return Err(Error::Parameters("permutation and reflection lengths differ".into()));
        }
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d || seen[p] {
                return Err(Error::Parameters(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Self { perm, reflect })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            perm: (0..d).collect(),
            reflect: vec![false; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.reflect.iter().all(|r| !r)
    }

    /// Image of a 1-based point.
    pub fn apply_point(&self, coords: &[usize], n: usize, out: &mut [usize]) {
        for (j, &c) in coords.iter().enumerate() {
            out[self.perm[j]] = if self.reflect[j] { n + 1 - c } else { c };
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &GridSymmetry) -> GridSymmetry {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut reflect = vec![false; d];
        for j in 0..d {
            let mid = first.perm[j];
            perm[j] = self.perm[mid];
            reflect[j] = first.reflect[j] ^ self.reflect[mid];
        }
        GridSymmetry { perm, reflect }
    }

    pub fn inverse(&self) -> GridSymmetry {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut reflect = vec![false; d];
        for j in 0..d {
            perm[self.perm[j]] = j;
            reflect[self.perm[j]] = self.reflect[j];
        }
        GridSymmetry { perm, reflect }
    }

    /// All `2^d · d!` elements, identity first.
    pub fn all(d: usize) -> Vec<GridSymmetry> {
        let mut perms = Vec::new();
        permutations(&mut (0..d).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        let mut out = Vec::with_capacity(perms.len() << d);
        for perm in perms {
            for mask in 0..(1u32 << d) {
                let reflect = (0..d).map(|j| mask >> j & 1 == 1).collect();
                out.push(GridSymmetry {
                    perm: perm.clone(),
                    reflect,
                });
            }
        }
        out
    }

    /// Flat-index permutation: entry `i` is the index of `g(point i)`.
    pub fn cell_map(&self, n: usize) -> Result<Vec<usize>> {
        let d = self.dim();
        let total = cell_count(n, d)?;
        let mut coords = vec![1usize; d];
        let mut image = vec![0usize; d];
        let mut map = Vec::with_capacity(total);
        for _ in 0..total {
            self.apply_point(&coords, n, &mut image);
            map.push(image.iter().fold(0, |acc, &c| acc * n + (c - 1)));
            for slot in coords.iter_mut().rev() {
                if *slot < n {
                    *slot += 1;
                    break;
                }
                *slot = 1;
            }
        }
        Ok(map)
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// The grid `H` with `H(g(p)) = G(p)`.
pub fn apply_symmetry(grid: &Grid, g: &GridSymmetry) -> Result<Grid> {
    let cells = grid.cells().ok_or(Error::NotDense)?;
    if g.dim() != grid.d() {
        return Err(Error::DimensionMismatch {
            expected: grid.d(),
            got: g.dim(),
        });
    }
    let map = g.cell_map(grid.n())?;
    let mut out = vec![0u8; cells.len()];
    for (i, &c) in cells.iter().enumerate() {
        out[map[i]] = c;
    }
    Grid::dense(grid.n(), grid.d(), grid.alphabet().clone(), out)
}

/// Lexicographically smallest cell array in the orbit of `cells`.
pub fn canonical_cells(cells: &[u8], maps: &[Vec<usize>]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut image = vec![0u8; cells.len()];
    for map in maps {
        for (i, &c) in cells.iter().enumerate() {
            image[map[i]] = c;
        }
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    }
    best.unwrap_or_else(|| cells.to_vec())
}
