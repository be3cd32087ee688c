//! Elementary Fibonacci braids, braid words and their text format.
//!
//! Text format: `A` = σ₁, `a` = σ₁⁻¹, `B` = σ₂, `b` = σ₂⁻¹. A word is a
//! contiguous string of those letters and the empty string is the identity.
//!
//! A word evaluates to `letters[0] · letters[1] · … · letters[L−1]`, i.e. the
//! leftmost letter is the leftmost matrix factor.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::unitary::Unitary2;

/// Golden-ratio conjugate `(√5 − 1)/2`, the root of `φ² + φ = 1`.
pub fn phi() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Generator {
    Sigma1 = 0,
    Sigma1Inv = 1,
    Sigma2 = 2,
    Sigma2Inv = 3,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Sigma1,
        Generator::Sigma1Inv,
        Generator::Sigma2,
        Generator::Sigma2Inv,
    ];

    /// The generators in text-format lexicographic order (`A < B < a < b`).
    pub const LEX: [Generator; 4] = [
        Generator::Sigma1,
        Generator::Sigma2,
        Generator::Sigma1Inv,
        Generator::Sigma2Inv,
    ];

    pub fn inverse(self) -> Generator {
        match self {
            Generator::Sigma1 => Generator::Sigma1Inv,
            Generator::Sigma1Inv => Generator::Sigma1,
            Generator::Sigma2 => Generator::Sigma2Inv,
            Generator::Sigma2Inv => Generator::Sigma2,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Generator::Sigma1 => 'A',
            Generator::Sigma1Inv => 'a',
            Generator::Sigma2 => 'B',
            Generator::Sigma2Inv => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Generator> {
        match c {
            'A' => Some(Generator::Sigma1),
            'a' => Some(Generator::Sigma1Inv),
            'B' => Some(Generator::Sigma2),
            'b' => Some(Generator::Sigma2Inv),
            _ => None,
        }
    }

    /// Position in text-format lexicographic order.
    pub fn lex_rank(self) -> u8 {
        match self {
            Generator::Sigma1 => 0,
            Generator::Sigma2 => 1,
            Generator::Sigma1Inv => 2,
            Generator::Sigma2Inv => 3,
        }
    }

    /// Two-bit code used by the binary table cache.
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Generator> {
        match code {
            0 => Some(Generator::Sigma1),
            1 => Some(Generator::Sigma1Inv),
            2 => Some(Generator::Sigma2),
            3 => Some(Generator::Sigma2Inv),
            _ => None,
        }
    }

    /// The braid matrix of this generator. Inverse kinds are conjugate transposes.
    pub fn matrix(self) -> Unitary2 {
        generator_table()[self as usize]
    }
}

/// Returns the matrix of an elementary braid.
pub fn generator_matrix(g: Generator) -> Unitary2 {
    g.matrix()
}

fn generator_table() -> &'static [Unitary2; 4] {
    static TABLE: OnceLock<[Unitary2; 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let phi = phi();
        let e = |theta: f64| Complex64::from_polar(1.0, theta);
        let s1 = Unitary2::diag(e(-4.0 * PI / 5.0), e(3.0 * PI / 5.0));
        let off = e(-3.0 * PI / 5.0) * phi.sqrt();
        let s2 = Unitary2::new(e(-PI / 5.0) * -phi, off, off, Complex64::new(-phi, 0.0));
        // Indexed by `Generator as u8`.
        [s1, s1.adjoint(), s2, s2.adjoint()]
    })
}

/// A nonempty subset of the four generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    mask: u8,
}

impl Alphabet {
    /// `{σ₁⁻¹, σ₂}`, written `aB`.
    pub const DEFAULT: Alphabet = Alphabet { mask: 0b0110 };
    pub const FULL: Alphabet = Alphabet { mask: 0b1111 };

    pub fn new(gens: &[Generator]) -> Option<Alphabet> {
        let mask = gens.iter().fold(0u8, |m, g| m | (1 << *g as u8));
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: u8) -> Option<Alphabet> {
        (mask != 0 && mask & !0b1111 == 0).then_some(Alphabet { mask })
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn contains(self, g: Generator) -> bool {
        self.mask & (1 << g as u8) != 0
    }

    pub fn letters(self) -> Vec<Generator> {
        Generator::ALL
            .into_iter()
            .filter(|g| self.contains(*g))
            .collect()
    }

    /// Letters in text-format lexicographic order.
    pub fn letters_lex(self) -> Vec<Generator> {
        Generator::LEX
            .into_iter()
            .filter(|g| self.contains(*g))
            .collect()
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::DEFAULT
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters()
            .iter()
            .try_for_each(|g| write!(f, "{}", g.as_char()))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

impl FromStr for Alphabet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word: BraidWord = s.parse()?;
        Alphabet::new(word.letters()).ok_or(ParseError::EmptyAlphabet)
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordered sequence of elementary braids.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(Vec<Generator>);

impl BraidWord {
    pub fn new(letters: Vec<Generator>) -> Self {
        BraidWord(letters)
    }

    pub fn empty() -> Self {
        BraidWord(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The ordered matrix product of the letters.
    pub fn evaluate(&self) -> Unitary2 {
        evaluate_letters(&self.0)
    }

    /// Reversed word with every letter inverted; evaluates to the adjoint.
    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    /// Removes adjacent inverse pairs until none remain.
    pub fn simplify(&self) -> BraidWord {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord(out)
    }

    /// Lexicographic comparison of the text forms.
    pub fn text_cmp(&self, other: &BraidWord) -> std::cmp::Ordering {
        self.0
            .iter()
            .map(|g| g.lex_rank())
            .cmp(other.0.iter().map(|g| g.lex_rank()))
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a BraidWord>) -> BraidWord {
        BraidWord(
            parts
                .into_iter()
                .flat_map(|w| w.0.iter().copied())
                .collect(),
        )
    }
}

/// Evaluates a letter slice as a left fold of generator matrices.
#[inline]
pub fn evaluate_letters(letters: &[Generator]) -> Unitary2 {
    let table = generator_table();
    letters
        .iter()
        .fold(Unitary2::identity(), |acc, g| acc * table[*g as usize])
}

pub fn evaluate(w: &BraidWord) -> Unitary2 {
    w.evaluate()
}

pub fn simplify(w: &BraidWord) -> BraidWord {
    w.simplify()
}

impl From<Vec<Generator>> for BraidWord {
    fn from(v: Vec<Generator>) -> Self {
        BraidWord(v)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|g| write!(f, "{}", g.as_char()))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord(\"{self}\")")
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| {
                Generator::from_char(c).ok_or(ParseError::BadLetter {
                    letter: c,
                    position,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BraidWord)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
