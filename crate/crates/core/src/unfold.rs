//! Flat net of a 3x3x3 grid's six outer faces.
//!
//! With coordinates `(layer, row, column)`, the front face is layer 1 and
//! the net is laid out as
//!
//! ```text
//!     U
//! L F R K
//!     D
//! ```
//!
//! Every face is drawn as seen from outside the cube after folding along
//! the shared edges with `F`; `K` is the back face and is reached through
//! `R`.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::occurrence::count_word;
use crate::word::Word;

const N: usize = 3;

fn face(grid: &Grid, cell: impl Fn(usize, usize) -> [usize; 3]) -> [String; N] {
    std::array::from_fn(|r| {
        (0..N)
            .map(|c| grid.alphabet().letter(grid.get_unchecked(&cell(r, c))))
            .collect()
    })
}

/// Renders the net, the center cell and, with a word, its line count.
pub fn unfold(grid: &Grid, word: Option<&Word>) -> Result<String> {
    if grid.d() != 3 || grid.n() != N {
        return Err(Error::Parameters("unfold requires d=3 n=3".into()));
    }
    let flip = |i: usize| N - i;
    let front = face(grid, |r, c| [1, r + 1, c + 1]);
    let back = face(grid, |r, c| [N, r + 1, flip(c)]);
    let up = face(grid, |r, c| [flip(r), 1, c + 1]);
    let down = face(grid, |r, c| [r + 1, N, c + 1]);
    let left = face(grid, |r, c| [flip(c), r + 1, 1]);
    let right = face(grid, |r, c| [c + 1, r + 1, N]);

    let pad = " ".repeat(N + 1);
    let mut out = String::new();
    for row in &up {
        out.push_str(&format!("{pad}{row}\n"));
    }
    for r in 0..N {
        out.push_str(&format!("{} {} {} {}\n", left[r], front[r], right[r], back[r]));
    }
    for row in &down {
        out.push_str(&format!("{pad}{row}\n"));
    }
    let center = grid.alphabet().letter(grid.get_unchecked(&[2, 2, 2]));
    out.push_str(&format!("center = {center}\n"));
    if let Some(w) = word {
        out.push_str(&format!("f = {}\n", count_word(w, grid)?.total));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::cell_count;
    use crate::word::Alphabet;

    #[test]
    fn constant_cube() {
        let g = Grid::filled(3, 3, Alphabet::parse("A").unwrap(), 0).unwrap();
        let text = unfold(&g, None).unwrap();
        assert_eq!(
            text,
            "    AAA\n    AAA\n    AAA\nAAA AAA AAA AAA\nAAA AAA AAA AAA\nAAA AAA AAA AAA\n    AAA\n    AAA\n    AAA\ncenter = A\n"
        );
    }

    #[test]
    fn shared_edges_agree() {
        let total = cell_count(3, 3).unwrap();
        let ab = Alphabet::new(('A'..='Z').collect()).unwrap();
        let g = Grid::dense(3, 3, ab, (0..total).map(|i| (i % 26) as u8).collect()).unwrap();
        let text = unfold(&g, None).unwrap();
        let rows: Vec<Vec<char>> = text.lines().take(9).map(|l| l.chars().collect()).collect();
        let u_bottom: String = rows[2][4..7].iter().collect();
        let f_top: String = rows[3][4..7].iter().collect();
        let d_top: String = rows[6][4..7].iter().collect();
        let f_bottom: String = rows[5][4..7].iter().collect();
        assert_eq!(u_bottom, f_top);
        assert_eq!(d_top, f_bottom);
        // L|F, F|R and R|K share their touching columns
        for r in 3..6 {
            assert_eq!(rows[r][6], rows[r][8]);
            assert_eq!(rows[r][2], rows[r][4]);
            assert_eq!(rows[r][10], rows[r][12]);
        }
        assert_eq!(f_top, "ABC");
    }

    #[test]
    fn wrong_shape() {
        let g = Grid::filled(3, 2, Alphabet::parse("A").unwrap(), 0).unwrap();
        let err = unfold(&g, None).unwrap_err();
        assert!(err.to_string().contains("unfold requires d=3 n=3"));
    }
}
