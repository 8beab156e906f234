//! Words over `{0,1,2}` addressing cells `F_w SG`, and vertex addresses
//! `F_w(q_j)` with junction canonicalization.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter of the alphabet `{0, 1, 2}`; also used for corner indices.
pub type Letter = u8;

/// Longest word any operation accepts.
pub const MAX_WORD_LEN: usize = 64;

fn check_letter(l: Letter) -> Result<Letter> {
    if l < 3 {
        Ok(l)
    } else {
        Err(Error::InvalidLetter(l))
    }
}

fn check_len(len: usize) -> Result<()> {
    if len > MAX_WORD_LEN {
        Err(Error::WordTooLong {
            len,
            max: MAX_WORD_LEN,
        })
    } else {
        Ok(())
    }
}

/// Finite word `w = w_1 ... w_m`; the empty word addresses SG itself and
/// `w.child(j)` addresses `F_w F_j SG`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        check_len(letters.len())?;
        for &l in &letters {
            check_letter(l)?;
        }
        Ok(Word(letters))
    }

    /// `letter` repeated `n` times.
    pub fn repeat(letter: Letter, n: usize) -> Result<Self> {
        Word::new(vec![letter; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// `w·j`, the address of `F_w F_j SG`.
    pub fn child(&self, j: Letter) -> Result<Word> {
        check_letter(j)?;
        check_len(self.0.len() + 1)?;
        let mut v = self.0.clone();
        v.push(j);
        Ok(Word(v))
    }

    /// `j·w`, the address of `F_j F_w SG`.
    pub fn prepend(&self, j: Letter) -> Result<Word> {
        check_letter(j)?;
        check_len(self.0.len() + 1)?;
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(j);
        v.extend_from_slice(&self.0);
        Ok(Word(v))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_len(self.0.len() + other.0.len())?;
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Ok(Word(v))
    }

    /// The word without its last letter.
    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0.contains(&letter)
    }

    /// Applies the letter permutation `j -> (j + shift) mod 3`.
    pub fn rotate_letters(&self, shift: u8) -> Word {
        Word(self.0.iter().map(|&l| (l + shift) % 3).collect())
    }

    /// All words of exactly length `m` over `alphabet`, in lexicographic order.
    pub fn all_of_length_over(alphabet: &[Letter], m: usize) -> Result<Vec<Word>> {
        check_len(m)?;
        for &l in alphabet {
            check_letter(l)?;
        }
        let mut out = vec![Word::empty()];
        for _ in 0..m {
            let mut next = Vec::with_capacity(out.len() * alphabet.len());
            for w in &out {
                for &l in alphabet {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn all_of_length(m: usize) -> Result<Vec<Word>> {
        Word::all_of_length_over(&[0, 1, 2], m)
    }

    /// All words of length `<= m`, shorter words first, lexicographic within a length.
    pub fn all_up_to_length(m: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for len in 0..=m {
            out.extend(Word::all_of_length(len)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => letters.push(0),
                '1' => letters.push(1),
                '2' => letters.push(2),
                _ => return Err(Error::parse("word", s, format!("unexpected character {c:?}"))),
            }
        }
        check_len(letters.len())?;
        Ok(Word(letters))
    }
}

/// The vertex `F_w(q_corner)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexAddress {
    pub word: Word,
    pub corner: Letter,
}

impl VertexAddress {
    pub fn new(word: Word, corner: Letter) -> Result<Self> {
        check_letter(corner)?;
        Ok(VertexAddress { word, corner })
    }

    /// The boundary vertex `q_j`.
    pub fn boundary(j: Letter) -> Result<Self> {
        VertexAddress::new(Word::empty(), j)
    }

    /// Canonical representative. Trailing letters equal to the corner are
    /// dropped (`F_j(q_j) = q_j`); of the two junction representations
    /// `F_{w·i}(q_j) = F_{w·j}(q_i)` the one with the smaller final letter is
    /// kept. A canonical address has an empty word or a final letter smaller
    /// than its corner.
    pub fn canonicalize(&self) -> VertexAddress {
        let mut letters = self.word.0.clone();
        let mut corner = self.corner;
        while letters.last() == Some(&corner) {
            letters.pop();
        }
        if let Some(&last) = letters.last() {
            if corner < last {
                letters.pop();
                letters.push(corner);
                corner = last;
            }
        }
        VertexAddress {
            word: Word(letters),
            corner,
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self.word.last() {
            None => true,
            Some(l) => l < self.corner,
        }
    }

    /// `q_0`, `q_1`, `q_2` of SG itself.
    pub fn is_boundary(&self) -> bool {
        self.canonicalize().word.is_empty()
    }

    /// Level of the point: the length of its canonical word.
    pub fn level(&self) -> usize {
        self.canonicalize().word.len()
    }

    /// For a junction point, the other cell-side representation
    /// `(w·corner, last)` of a canonical `(w·last, corner)`.
    pub fn alternate(&self) -> Option<VertexAddress> {
        let c = self.canonicalize();
        let last = c.word.last()?;
        let mut letters = c.word.0.clone();
        letters.pop();
        letters.push(c.corner);
        Some(VertexAddress {
            word: Word(letters),
            corner: last,
        })
    }

    /// Image of the point under `F_j`, canonicalized.
    pub fn apply_contraction(&self, j: Letter) -> Result<VertexAddress> {
        Ok(VertexAddress {
            word: self.word.prepend(j)?,
            corner: self.corner,
        }
        .canonicalize())
    }
}

impl fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.word, self.corner)
    }
}

impl FromStr for VertexAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (w, c) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::parse("vertex", s, "expected <word>:<corner>"))?;
        let word: Word = w.parse()?;
        let corner = match c.trim() {
            "0" => 0,
            "1" => 1,
            "2" => 2,
            other => return Err(Error::parse("vertex", s, format!("bad corner {other:?}"))),
        };
        Ok(VertexAddress { word, corner })
    }
}

/// Canonical vertices `F_w F_u (q_j)` with `|u| <= depth`, sorted and deduplicated.
pub fn cell_vertices(w: &Word, depth: usize) -> Result<Vec<VertexAddress>> {
    check_len(w.len() + depth)?;
    let mut set = std::collections::BTreeSet::new();
    for u in Word::all_up_to_length(depth)? {
        let cell = w.concat(&u)?;
        for j in 0..3 {
            set.insert(VertexAddress::new(cell.clone(), j)?.canonicalize());
        }
    }
    Ok(set.into_iter().collect())
}
