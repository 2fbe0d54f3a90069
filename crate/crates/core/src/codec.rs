//! WG1 text format for dense grids.
//!
//! ```text
//! # optional comments
//! WG1 d=2 n=3 sigma=AM
//! AAA
//! AMM
//! AMM
//! ```
//!
//! After the header come exactly `n^(d-1)` lines of `n` letters each, in
//! mixed-radix order with coordinate 1 most significant and coordinate `d`
//! varying along a line.

use crate::error::{Error, Result};
use crate::grid::{cell_count, Grid};
use crate::word::Alphabet;

pub const MAGIC: &str = "WG1";

pub fn serialize_grid(grid: &Grid) -> Result<String> {
    let cells = grid.cells().ok_or(Error::NotDense)?;
    let n = grid.n();
    let mut out = format!("{MAGIC} d={} n={} sigma={}\n", grid.d(), n, grid.alphabet());
    for row in cells.chunks(n) {
        out.extend(row.iter().map(|&c| grid.alphabet().letter(c)));
        out.push('\n');
    }
    Ok(out)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize, Alphabet)> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(MAGIC) {
        return Err(parse_err(line_no, format!("expected header starting with {MAGIC}")));
    }
    let (mut d, mut n, mut sigma) = (None, None, None);
    for part in parts {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("malformed header field {part:?}")))?;
        match key {
            "d" | "n" => {
                let v: usize = value
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("{key} must be a positive integer")))?;
                if v == 0 {
                    return Err(parse_err(line_no, format!("{key} must be positive")));
                }
                if key == "d" {
                    d = Some(v);
                } else {
                    n = Some(v);
                }
            }
            "sigma" => {
                sigma = Some(Alphabet::parse(value).map_err(|e| parse_err(line_no, e.to_string()))?);
            }
            other => return Err(parse_err(line_no, format!("unknown header field {other:?}"))),
        }
    }
    match (d, n, sigma) {
        (Some(d), Some(n), Some(s)) => Ok((d, n, s)),
        _ => Err(parse_err(line_no, "header must define d, n and sigma")),
    }
}

pub fn parse_grid(text: &str) -> Result<Grid> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_no, header) = loop {
        match lines.next() {
            Some((_, l)) if l.starts_with('#') => continue,
            Some(found) => break found,
            None => return Err(parse_err(1, "missing WG1 header")),
        }
    };
    let (d, n, alphabet) = parse_header(header_no, header)?;
    let total = cell_count(n, d).map_err(|e| parse_err(header_no, e.to_string()))?;
    let rows = total / n;

    let mut cells = Vec::with_capacity(total);
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        if line.is_empty() && cells.len() == total {
            continue;
        }
        if cells.len() == total {
            return Err(parse_err(line_no, format!("expected {total} cells, found more")));
        }
        let len = line.chars().count();
        if len != n {
            return Err(parse_err(
                line_no,
                format!("expected {n} cells on this line, found {len}"),
            ));
        }
        for c in line.chars() {
            let idx = alphabet
                .index_of(c)
                .ok_or_else(|| parse_err(line_no, format!("letter {c:?} not in sigma={alphabet}")))?;
            cells.push(idx);
        }
    }
    if cells.len() != total {
        return Err(parse_err(
            last_line,
            format!("expected {total} cells, found {} ({rows} lines of {n})", cells.len()),
        ));
    }
    Grid::dense(n, d, alphabet, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_example() {
        let g = parse_grid("WG1 d=2 n=2 sigma=AM\nAM\nMA\n").unwrap();
        assert_eq!(g.rows().unwrap(), vec!["AM", "MA"]);
    }

    #[test]
    fn amm_witness_round_trip_is_byte_stable() {
        let text = "WG1 d=2 n=3 sigma=AM\nAAA\nAMM\nAMM\n";
        let g = parse_grid(text).unwrap();
        assert_eq!(serialize_grid(&g).unwrap(), text);
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_grid("# a comment\n#another\nWG1 d=1 n=3 sigma=XY\nXYX\n").unwrap();
        assert_eq!(g.cells().unwrap(), &[0, 1, 0]);
    }

    #[test]
    fn wrong_cell_count_reports_expected() {
        let err = parse_grid("WG1 d=2 n=3 sigma=AM\nAAA\nAMM\nAM\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_grid("WG1 d=2 n=3 sigma=AM\nAAA\nAMM\n").unwrap_err();
        assert!(err.to_string().contains("expected 9 cells"), "{err}");
    }

    #[test]
    fn header_and_letter_errors() {
        let err = parse_grid("WG2 d=2 n=2 sigma=AM\nAM\nMA\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_grid("WG1 d=2 sigma=AM\nAM\nMA\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_grid("# c\nWG1 d=2 n=2 sigma=AM\nAM\nMB\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        assert!(err.to_string().contains("'B'"));
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..5, d in 1usize..4, k in 1usize..5, seed in any::<u64>()) {
            let total = n.pow(d as u32);
            let letters: Vec<char> = "AMXQZ".chars().take(k).collect();
            let ab = Alphabet::new(letters).unwrap();
            let mut x = seed;
            let cells: Vec<u8> = (0..total).map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((x >> 33) % k as u64) as u8
            }).collect();
            let g = Grid::dense(n, d, ab, cells).unwrap();
            let text = serialize_grid(&g).unwrap();
            let back = parse_grid(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_grid(&back).unwrap(), text);
        }
    }
}
