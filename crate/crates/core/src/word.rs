//! Alphabets, words and the per-word statistics every bound is computed from.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_LETTERS: usize = 26;

/// Ordered set of distinct printable letters. A letter's index is its
/// position in the list and never changes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: Vec<char>) -> Result<Self> {
        if letters.is_empty() || letters.len() > MAX_LETTERS {
            return Err(Error::Alphabet(format!(
                "expected 1 to {MAX_LETTERS} letters, got {}",
                letters.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &c in &letters {
            if !c.is_ascii_graphic() || c == '#' {
                return Err(Error::Alphabet(format!("letter {c:?} is not allowed")));
            }
            if !seen.insert(c) {
                return Err(Error::Alphabet(format!("letter {c:?} repeated")));
            }
        }
        Ok(Self { letters })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.chars().collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: u8) -> char {
        self.letters[index as usize]
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.letters.iter().position(|&x| x == c).map(|i| i as u8)
    }

    /// Union preserving the order of `self`, then new letters of `other`.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut letters = self.letters.clone();
        for &c in &other.letters {
            if !letters.contains(&c) {
                letters.push(c);
            }
        }
        Alphabet::new(letters)
    }

    /// First letter (in `A..Z` order) not already present.
    pub fn fresh_letter(&self) -> Option<char> {
        ('A'..='Z').find(|c| !self.letters.contains(c))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A word over an alphabet, stored as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl Word {
    /// Parses a raw letter string; the alphabet is the distinct letters in
    /// order of first appearance.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for c in s.chars() {
            if !letters.contains(&c) {
                letters.push(c);
            }
        }
        let alphabet = Alphabet::new(letters).map_err(|e| Error::Word(e.to_string()))?;
        let symbols = s.chars().map(|c| alphabet.index_of(c).unwrap()).collect();
        Self::new(alphabet, symbols)
    }

    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        if symbols.len() < 2 {
            return Err(Error::Word(format!(
                "length {} is below the minimum of 2",
                symbols.len()
            )));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet.len()) {
            return Err(Error::Word(format!("letter index {bad} outside alphabet")));
        }
        Ok(Self { alphabet, symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.symbols.iter().map(|&s| self.alphabet.letter(s))
    }

    /// 0-based access.
    pub fn char_at(&self, i: usize) -> char {
        self.alphabet.letter(self.symbols[i])
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word {
            alphabet: self.alphabet.clone(),
            symbols,
        }
    }

    /// Letters that actually occur, in alphabet order.
    pub fn used_letters(&self) -> Vec<char> {
        let mut used = vec![false; self.alphabet.len()];
        for &s in &self.symbols {
            used[s as usize] = true;
        }
        self.alphabet
            .letters()
            .iter()
            .zip(used)
            .filter_map(|(&c, u)| u.then_some(c))
            .collect()
    }

    /// Same word re-expressed over `alphabet`, which must contain every used letter.
    pub fn over(&self, alphabet: &Alphabet) -> Result<Word> {
        let symbols = self
            .chars()
            .map(|c| {
                alphabet
                    .index_of(c)
                    .ok_or_else(|| Error::Word(format!("letter {c:?} missing from alphabet {alphabet}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(alphabet.clone(), symbols)
    }

    pub fn stats(&self) -> WordStats {
        WordStats::of(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.chars() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Derived quantities of a word that feed the bounds and constructions.
///
/// Indices reported by [`WordStats::t_set`] are 1-based, like positions in
/// the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordStats {
    pub n: usize,
    /// Occurrence count per alphabet letter.
    pub counts: Vec<usize>,
    pub kmax: usize,
    /// Number of positions i with w_i = w_{n-i+1}.
    pub s: usize,
    pub palindrome: bool,
    pub binary: bool,
    pub antisymmetric: bool,
    symbols: Vec<u8>,
}

impl WordStats {
    fn of(w: &Word) -> Self {
        let n = w.len();
        let sym = w.symbols();
        let mut counts = vec![0; w.alphabet().len()];
        for &c in sym {
            counts[c as usize] += 1;
        }
        let s = (0..n).filter(|&i| sym[i] == sym[n - 1 - i]).count();
        let used = counts.iter().filter(|&&k| k > 0).count();
        Self {
            n,
            kmax: counts.iter().copied().max().unwrap_or(0),
            counts,
            s,
            palindrome: s == n,
            binary: used == 2,
            antisymmetric: s == 0,
            symbols: sym.to_vec(),
        }
    }

    /// T(a, m) = { i : w_i = a, w_{n-i+1} = m }, 1-based.
    pub fn t_set(&self, a: u8, m: u8) -> Vec<usize> {
        let n = self.n;
        (0..n)
            .filter(|&i| self.symbols[i] == a && self.symbols[n - 1 - i] == m)
            .map(|i| i + 1)
            .collect()
    }

    pub fn t(&self, a: u8, m: u8) -> usize {
        self.t_set(a, m).len()
    }

    /// Letter counts sorted descending (zero counts dropped).
    pub fn sorted_counts(&self) -> Vec<usize> {
        let mut k: Vec<usize> = self.counts.iter().copied().filter(|&k| k > 0).collect();
        k.sort_unstable_by(|a, b| b.cmp(a));
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_infers_alphabet_by_first_appearance() {
        let w = Word::parse("MAM").unwrap();
        assert_eq!(w.alphabet().letters(), &['M', 'A']);
        assert_eq!(w.symbols(), &[0, 1, 0]);
        assert_eq!(w.to_string(), "MAM");
    }

    #[test]
    fn rejects_short_and_bad_words() {
        assert!(Word::parse("A").is_err());
        assert!(Word::parse("").is_err());
        assert!(Alphabet::parse("AA").is_err());
        assert!(Alphabet::parse("A#").is_err());
    }

    #[test]
    fn stats_of_amaam() {
        let w = Word::parse("AMAAM").unwrap();
        let st = w.stats();
        assert_eq!(st.counts, vec![3, 2]);
        assert_eq!(st.kmax, 3);
        // w_3 is the middle, w_1/w_5 = A/M, w_2/w_4 = M/A
        assert_eq!(st.s, 1);
        assert_eq!(st.t_set(0, 1), vec![1, 4]);
        assert_eq!(st.t_set(1, 0), vec![2, 5]);
        assert!(st.binary && !st.palindrome && !st.antisymmetric);
    }

    #[test]
    fn stats_flags() {
        assert!(Word::parse("AMA").unwrap().stats().palindrome);
        assert!(Word::parse("AAMM").unwrap().stats().antisymmetric);
        assert!(!Word::parse("AAAA").unwrap().stats().binary);
        assert!(!Word::parse("ABC").unwrap().stats().binary);
    }

    #[test]
    fn t_set_mirror_relation() {
        for s in ["AMAAM", "ABACA", "AABMM", "MMAMAA"] {
            let w = Word::parse(s).unwrap();
            let st = w.stats();
            let n = w.len();
            let k = w.alphabet().len() as u8;
            for a in 0..k {
                for m in 0..k {
                    let t = st.t_set(a, m);
                    let mut mirrored: Vec<usize> = st.t_set(m, a).into_iter().map(|i| n - i + 1).collect();
                    mirrored.sort_unstable();
                    assert_eq!(t, mirrored, "{s} {a} {m}");
                }
            }
            assert_eq!(st.counts.iter().sum::<usize>(), n);
        }
    }
}
