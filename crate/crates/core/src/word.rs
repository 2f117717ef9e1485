//! The crystal of words over `[n]`.
//!
//! A word `a_1 a_2 ⋯ a_r` is identified with `a_1 ⊗ a_2 ⊗ ⋯ ⊗ a_r` using the
//! tensor rule in which `ẽ_i` acts on the *first* factor when
//! `φ_i(b_1) ≥ ε_i(b_2)` and `f̃_i` acts on the first factor when
//! `φ_i(b_1) > ε_i(b_2)`. With this convention a word is of highest weight
//! iff every prefix contains at least as many `i`'s as `(i+1)`'s, e.g. `12`
//! and `112` are highest weight while `21` is not (`ẽ_1(21) = 11`).

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Raise,
    Lower,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Raise => Direction::Lower,
            Direction::Lower => Direction::Raise,
        }
    }
}

/// A word over `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<u32>,
}

/// `wt`, `ε_i` and `φ_i` for `i = 1..n−1` (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalStats {
    pub wt: Weight,
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<u32>) -> Result<Self> {
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l as usize > n) {
            return Err(Error::LetterOutOfRange { letter, n });
        }
        Ok(Word { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        Word { n, letters: Vec::new() }
    }

    /// Digits (`"2113"`) when every letter is below 10, otherwise
    /// comma-separated.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "word",
            detail: s.to_string(),
        };
        let letters: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> Weight {
        let mut wt = Weight::zero(self.n);
        for &l in &self.letters {
            wt.0[l as usize - 1] += 1;
        }
        wt
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }

    /// `ε_i` and `φ_i` of every prefix `a_1 ⊗ ⋯ ⊗ a_k`, `k = 0..=r`.
    fn prefix_eps_phi(&self, i: usize) -> Vec<(i64, i64)> {
        let i = i as u32;
        let mut out = Vec::with_capacity(self.len() + 1);
        let (mut eps, mut phi, mut pairing) = (0i64, 0i64, 0i64);
        out.push((eps, phi));
        for &l in &self.letters {
            let (e2, p2, h2) = letter_stats(l, i);
            // ε(b1⊗b2) = max{ε1, ε2 − ⟨wt b1, h⟩},  φ(b1⊗b2) = max{φ1 + ⟨wt b2, h⟩, φ2}
            eps = eps.max(e2 - pairing);
            phi = (phi + h2).max(p2);
            pairing += h2;
            out.push((eps, phi));
        }
        out
    }

    /// Position acted on by `ẽ_i`/`f̃_i`, or `None` for the formal zero.
    fn acting_position(&self, i: usize, dir: Direction) -> Option<usize> {
        let prefixes = self.prefix_eps_phi(i);
        let i = i as u32;
        let mut k = self.len();
        while k > 0 {
            let (_, phi_prefix) = prefixes[k - 1];
            let (eps_last, _, _) = letter_stats(self.letters[k - 1], i);
            let goes_left = k > 1
                && match dir {
                    Direction::Raise => phi_prefix >= eps_last,
                    Direction::Lower => phi_prefix > eps_last,
                };
            if !goes_left {
                let l = self.letters[k - 1];
                let moves = match dir {
                    Direction::Raise => l == i + 1,
                    Direction::Lower => l == i,
                };
                return moves.then_some(k - 1);
            }
            k -= 1;
        }
        None
    }

    /// `ẽ_i` (raise) or `f̃_i` (lower); `Ok(None)` is the formal `0`.
    pub fn op(&self, i: usize, dir: Direction) -> Result<Option<Word>> {
        self.check_index(i)?;
        Ok(self.acting_position(i, dir).map(|pos| {
            let mut letters = self.letters.clone();
            letters[pos] = match dir {
                Direction::Raise => letters[pos] - 1,
                Direction::Lower => letters[pos] + 1,
            };
            Word { n: self.n, letters }
        }))
    }

    pub fn raise(&self, i: usize) -> Result<Option<Word>> {
        self.op(i, Direction::Raise)
    }

    pub fn lower(&self, i: usize) -> Result<Option<Word>> {
        self.op(i, Direction::Lower)
    }

    pub fn stats(&self) -> CrystalStats {
        let (eps, phi) = (1..self.n)
            .map(|i| *self.prefix_eps_phi(i).last().expect("nonempty"))
            .unzip();
        CrystalStats {
            wt: self.weight(),
            eps,
            phi,
        }
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.prefix_eps_phi(i).last().expect("nonempty").0
    }

    pub fn phi(&self, i: usize) -> i64 {
        self.prefix_eps_phi(i).last().expect("nonempty").1
    }

    pub fn is_highest_weight(&self) -> bool {
        (1..self.n).all(|i| self.eps(i) == 0)
    }

    /// Raises to the highest-weight word, always applying the smallest
    /// applicable `ẽ_i`. Returns the highest-weight word and the indices used,
    /// in application order.
    pub fn raise_to_highest(&self) -> (Word, Vec<usize>) {
        let mut current = self.clone();
        let mut script = Vec::new();
        while let Some(i) = (1..self.n).find(|&i| current.eps(i) > 0) {
            current = current
                .raise(i)
                .expect("index in range")
                .expect("ε_i > 0 so ẽ_i is defined");
            script.push(i);
        }
        (current, script)
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { n: self.n, letters }
    }

    /// All words of a given length over `[n]`.
    pub fn all_of_length(n: usize, len: usize) -> Box<dyn Iterator<Item = Word>> {
        if len == 0 {
            return Box::new(std::iter::once(Word::empty(n)));
        }
        Box::new(
            (0..len)
                .map(|_| 1..=n as u32)
                .multi_cartesian_product()
                .map(move |letters| Word { n, letters }),
        )
    }
}

/// `(ε_i, φ_i, ⟨wt, h_i⟩)` of a single letter.
fn letter_stats(l: u32, i: u32) -> (i64, i64, i64) {
    if l == i {
        (0, 1, 1)
    } else if l == i + 1 {
        (1, 0, -1)
    } else {
        (0, 0, 0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&l| l < 10) {
            write!(f, "{}", self.letters.iter().join(""))
        } else {
            write!(f, "{}", self.letters.iter().join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: usize) -> Word {
        Word::parse(s, n).unwrap()
    }

    #[test]
    fn operator_examples() {
        assert_eq!(w("11", 2).lower(1).unwrap(), Some(w("21", 2)));
        assert_eq!(w("112", 2).raise(1).unwrap(), None);
        assert_eq!(w("1", 2).raise(1).unwrap(), None);
        assert_eq!(w("21", 2).raise(1).unwrap(), Some(w("11", 2)));
        assert_eq!(w("2", 2).lower(1).unwrap(), None);
        assert_eq!(w("1", 3).lower(2).unwrap(), None);
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            w("12", 2).raise(2),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
        assert!(w("12", 2).lower(0).is_err());
    }

    #[test]
    fn stats_examples() {
        let s = w("112", 3).stats();
        assert_eq!(s.wt, Weight(vec![2, 1, 0]));
        assert_eq!((s.eps[0], s.phi[0]), (0, 1));
        let s = Word::empty(3).stats();
        assert_eq!(s.wt, Weight::zero(3));
        assert!(s.eps.iter().chain(&s.phi).all(|&v| v == 0));
        let s = w("21", 2).stats();
        assert_eq!((s.eps[0], s.phi[0]), (1, 1));
    }

    #[test]
    fn stats_axiom_one() {
        for len in 0..=5 {
            for a in Word::all_of_length(3, len) {
                let s = a.stats();
                for i in 1..3 {
                    assert_eq!(s.phi[i - 1], s.wt.pairing(i) + s.eps[i - 1], "{a}");
                }
            }
        }
    }

    #[test]
    fn bad_letters_rejected() {
        assert!(Word::parse("13", 2).is_err());
        assert!(Word::parse("1a", 2).is_err());
        assert_eq!(Word::parse("10,2", 10).unwrap().letters(), &[10, 2]);
    }

    #[test]
    fn highest_weight_is_lattice_word() {
        for len in 0..=5 {
            for a in Word::all_of_length(3, len) {
                let lattice = (1..=a.len()).all(|k| {
                    let c = |x| a.letters()[..k].iter().filter(|&&l| l == x).count();
                    c(1) >= c(2) && c(2) >= c(3)
                });
                assert_eq!(a.is_highest_weight(), lattice, "{a}");
            }
        }
    }
}
