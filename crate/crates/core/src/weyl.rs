//! The root datum of `gl_n`: weights, partitions and the symmetric group
//! acting as the Weyl group.
//!
//! Weights are integer vectors in the basis `ε_1, …, ε_n`. The simple
//! coroot `h_i` pairs with a weight as `μ_i − μ_{i+1}` and the simple root is
//! `α_i = ε_i − ε_{i+1}`. Operator indices are 1-based throughout.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integral weight of `gl_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The basis weight `ε_k` (1-based).
    pub fn epsilon(n: usize, k: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[k - 1] = 1;
        w
    }

    /// The simple root `α_i = ε_i − ε_{i+1}`.
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[i - 1] = 1;
        w.0[i] = -1;
        w
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `⟨μ, h_i⟩`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i - 1] - self.0[i]
    }

    /// Pairing with the coroot of the positive root `ε_a − ε_b` (`a < b`, 1-based).
    pub fn root_pairing(&self, a: usize, b: usize) -> i64 {
        self.0[a - 1] - self.0[b - 1]
    }

    /// Reflection in the root `ε_a − ε_b`: swaps two coordinates.
    pub fn reflect(&self, a: usize, b: usize) -> Self {
        let mut w = self.clone();
        w.0.swap(a - 1, b - 1);
        w
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= p[1])
    }

    /// Coordinates sorted weakly decreasing (the dominant weight of the orbit).
    pub fn sorted_decreasing(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A partition with at most `n` parts, padded with zeros to length `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<i64>,
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.parts
    }
}

impl Partition {
    /// Builds a partition; `parts.len()` is the rank `n`.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition of rank `n`, zero-padding `parts`.
    pub fn padded(mut parts: Vec<i64>, n: usize) -> Result<Self> {
        if parts.len() > n {
            // trailing zeros beyond n are harmless
            if parts[n..].iter().any(|&p| p != 0) {
                return Err(Error::Parse {
                    what: "partition",
                    detail: format!("{parts:?} has more than {n} nonzero parts"),
                });
            }
            parts.truncate(n);
        }
        parts.resize(n, 0);
        Self::new(parts)
    }

    /// Parses `"2,1,0"`; pads to `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let parts = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| Error::Parse {
                    what: "partition",
                    detail: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::padded(parts, n)
    }

    pub fn empty(n: usize) -> Self {
        Partition { parts: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn part(&self, row: usize) -> usize {
        self.parts[row] as usize
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn as_weight(&self) -> Weight {
        Weight(self.parts.clone())
    }

    pub fn scaled(&self, k: i64) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| p * k).collect(),
        }
    }

    /// Length of column `c` (0-based), i.e. the conjugate partition.
    pub fn column_height(&self, c: usize) -> usize {
        self.parts.iter().filter(|&&p| p as usize > c).count()
    }

    /// All partitions of `size` with at most `n` parts, in reverse
    /// lexicographic order.
    pub fn all_of_size(n: usize, size: i64) -> Vec<Partition> {
        fn rec(n: usize, remaining: i64, max: i64, acc: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if acc.len() == n {
                if remaining == 0 {
                    out.push(Partition { parts: acc.clone() });
                }
                return;
            }
            for p in (0..=remaining.min(max)).rev() {
                acc.push(p);
                rec(n, remaining - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, size, size, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join(","))
    }
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    window: Vec<usize>,
}

impl Permutation {
    pub fn new(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation(window));
            }
            seen[v] = true;
        }
        Ok(Permutation { window })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            window: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.window.swap(i - 1, i);
        w
    }

    /// The longest element `w_0` (order reversal).
    pub fn longest(n: usize) -> Self {
        Permutation {
            window: (1..=n).rev().collect(),
        }
    }

    /// `s_{i_1} ⋯ s_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            w = w.compose(&Self::simple(n, i));
        }
        Ok(w)
    }

    /// Parses `"e"`, one-line notation (`"231"` or `"2,3,1"`) or a product of
    /// generators (`"s1*s2"`).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let bad = |detail: String| Error::Parse {
            what: "permutation",
            detail,
        };
        if s == "e" || s == "id" {
            return Ok(Self::identity(n));
        }
        if s.starts_with('s') {
            let word = s
                .split('*')
                .map(|g| {
                    g.trim()
                        .strip_prefix('s')
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| bad(s.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_word(n, &word);
        }
        let window: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| bad(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad(s.to_string()))
                })
                .collect::<Result<_>>()?
        };
        if window.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: window.len(),
            });
        }
        Self::new(window)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// `w(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.window[k - 1]
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            window: other.window.iter().map(|&k| self.window[k - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.window.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { window: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        (0..w.len())
            .flat_map(|a| (a + 1..w.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| w[a] > w[b])
            .count()
    }

    /// Reduced word `[i_1, …, i_ℓ]` with `self = s_{i_1} ⋯ s_{i_ℓ}`, peeling
    /// off the smallest left descent at each step.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.n();
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        loop {
            let inv = w.inverse();
            // left descent at i iff i+1 appears before i in the window
            let Some(i) = (1..n).find(|&i| inv.apply(i) > inv.apply(i + 1)) else {
                break;
            };
            word.push(i);
            w = Self::simple(n, i).compose(&w);
        }
        word
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(|window| Permutation { window })
            .collect()
    }

    /// One-line notation; digits are concatenated when `n ≤ 9`.
    pub fn one_line(&self) -> String {
        if self.n() <= 9 {
            self.window.iter().join("")
        } else {
            self.window.iter().join(",")
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

/// `w·μ`: the coordinate in position `k` moves to position `w(k)`.
pub fn act(w: &Permutation, mu: &Weight) -> Weight {
    let mut out = vec![0; mu.n()];
    for (k, &c) in mu.0.iter().enumerate() {
        out[w.window[k] - 1] = c;
    }
    Weight(out)
}

/// Bruhat order via the rank-matrix (dot) criterion:
/// `u ≤ v` iff `#{a ≤ i : u(a) ≥ k} ≤ #{a ≤ i : v(a) ≥ k}` for all `i, k`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> bool {
    let n = u.n();
    assert_eq!(n, v.n(), "bruhat_leq on permutations of different sizes");
    for k in 1..=n {
        let (mut ru, mut rv) = (0, 0);
        for a in 0..n {
            ru += usize::from(u.window[a] >= k);
            rv += usize::from(v.window[a] >= k);
            if ru > rv {
                return false;
            }
        }
    }
    true
}

/// The stabilizer generators `{i : λ_i = λ_{i+1}}` and the minimal-length
/// coset representatives of `W/W_λ`, ordered by (length, window).
pub fn stabilizer_and_coset_reps(lambda: &Partition) -> (Vec<usize>, Vec<Permutation>) {
    let n = lambda.n();
    let gens: Vec<usize> = (1..n)
        .filter(|&i| lambda.parts()[i - 1] == lambda.parts()[i])
        .collect();
    let mut reps: Vec<Permutation> = Permutation::all(n)
        .into_iter()
        .filter(|w| gens.iter().all(|&i| w.apply(i) < w.apply(i + 1)))
        .collect();
    reps.sort_by_cached_key(|w| (w.length(), w.window.clone()));
    (gens, reps)
}

/// `true` iff `w` has no right descent in the stabilizer of `λ`.
pub fn is_minimal_coset_rep(w: &Permutation, lambda: &Partition) -> bool {
    (1..lambda.n())
        .filter(|&i| lambda.parts()[i - 1] == lambda.parts()[i])
        .all(|i| w.apply(i) < w.apply(i + 1))
}

/// Minimal representative of the coset `wW_λ`.
pub fn minimal_coset_rep(w: &Permutation, lambda: &Partition) -> Permutation {
    coset_rep_of(lambda, &act(w, &lambda.as_weight())).expect("wλ lies in the orbit of λ")
}

/// The minimal coset representative `w` with `wλ = μ`.
pub fn coset_rep_of(lambda: &Partition, mu: &Weight) -> Result<Permutation> {
    let n = lambda.n();
    if mu.n() != n || mu.sorted_decreasing() != lambda.parts() {
        return Err(Error::NotInOrbit(mu.0.clone(), lambda.parts().to_vec()));
    }
    // Position k of λ goes to the slot holding the same value; among equal
    // values keep the relative order so that w is minimal.
    let mut used = vec![false; n];
    let mut window = Vec::with_capacity(n);
    for &c in lambda.parts() {
        let slot = (0..n)
            .find(|&j| !used[j] && mu.0[j] == c)
            .expect("multisets agree");
        used[slot] = true;
        window.push(slot + 1);
    }
    Ok(Permutation { window })
}

/// The orbit `Wλ`.
pub fn orbit(lambda: &Partition) -> BTreeSet<Weight> {
    let (_, reps) = stabilizer_and_coset_reps(lambda);
    reps.iter().map(|w| act(w, &lambda.as_weight())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s, s.len()).unwrap()
    }

    #[test]
    fn act_examples() {
        let e = Permutation::identity(2);
        assert_eq!(act(&e, &Weight(vec![1, 0])), Weight(vec![1, 0]));
        let s1 = Permutation::simple(2, 1);
        assert_eq!(act(&s1, &Weight(vec![1, 0])), Weight(vec![0, 1]));
        let w0 = Permutation::longest(3);
        let lam = Weight(vec![2, 1, 0]);
        assert_eq!(act(&w0, &lam), Weight(vec![0, 1, 2]));
        let s121 = Permutation::from_word(3, &[1, 2, 1]).unwrap();
        assert_eq!(s121, w0);
        // s_1 s_2 s_1 acting one generator at a time
        let step = |i, mu: &Weight| act(&Permutation::simple(3, i), mu);
        assert_eq!(step(1, &step(2, &step(1, &lam))), Weight(vec![0, 1, 2]));
    }

    #[test]
    fn simple_reflection_formula() {
        // s_i(μ) = μ − ⟨μ, h_i⟩ α_i
        let mu = Weight(vec![3, -1, 2]);
        for i in 1..3 {
            let expect = &mu - &Weight::simple_root(3, i).scaled(mu.pairing(i));
            assert_eq!(act(&Permutation::simple(3, i), &mu), expect);
        }
    }

    #[test]
    fn bruhat_examples() {
        for w in Permutation::all(3) {
            assert!(bruhat_leq(&Permutation::identity(3), &w));
            assert!(bruhat_leq(&w, &Permutation::longest(3)));
        }
        assert!(bruhat_leq(&perm("213"), &perm("231")));
        assert!(!bruhat_leq(&perm("321"), &perm("312")));
        assert!(!bruhat_leq(&perm("231"), &perm("312")));
    }

    #[test]
    fn parsing() {
        assert_eq!(Permutation::parse("s1*s2", 3).unwrap(), perm("231"));
        assert_eq!(Permutation::parse("e", 2).unwrap(), Permutation::identity(2));
        assert_eq!(Permutation::parse("2,1", 2).unwrap(), perm("21"));
        assert!(Permutation::parse("221", 3).is_err());
        assert!(Permutation::parse("s3", 3).is_err());
        assert!(Permutation::parse("12", 3).is_err());
        assert_eq!(Partition::parse("2,1", 3).unwrap().parts(), &[2, 1, 0]);
        assert!(Partition::parse("1,2", 2).is_err());
        assert!(Partition::parse("1,1,1", 2).is_err());
    }

    #[test]
    fn reduced_words_are_reduced() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Permutation::from_word(n, &word).unwrap(), w);
            }
        }
    }

    #[test]
    fn coset_rep_examples() {
        let (gens, reps) = stabilizer_and_coset_reps(&Partition::new(vec![1, 1]).unwrap());
        assert_eq!(gens, vec![1]);
        assert_eq!(reps, vec![Permutation::identity(2)]);
        let (gens, reps) = stabilizer_and_coset_reps(&Partition::new(vec![1, 0]).unwrap());
        assert!(gens.is_empty());
        assert_eq!(reps, vec![Permutation::identity(2), Permutation::simple(2, 1)]);
        let lam = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(stabilizer_and_coset_reps(&lam).1.len(), 3);
        assert_eq!(orbit(&lam).len(), 3);
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(&Partition::new(vec![1, 0]).unwrap());
        assert_eq!(o.into_iter().collect::<Vec<_>>(), vec![Weight(vec![0, 1]), Weight(vec![1, 0])]);
        assert_eq!(orbit(&Partition::new(vec![1, 1]).unwrap()).len(), 1);
        // brute force: apply all of S_3
        let lam = Partition::new(vec![2, 1, 0]).unwrap();
        let brute: BTreeSet<_> = Permutation::all(3)
            .iter()
            .map(|w| act(w, &lam.as_weight()))
            .collect();
        assert_eq!(brute.len(), 6);
        assert_eq!(orbit(&lam), brute);
    }

    #[test]
    fn coset_rep_of_is_minimal() {
        for parts in [vec![2, 1, 1, 0], vec![1, 1, 0, 0], vec![3, 2, 1, 0], vec![1, 1, 1, 1]] {
            let lam = Partition::new(parts).unwrap();
            for w in Permutation::all(4) {
                let rep = minimal_coset_rep(&w, &lam);
                assert!(is_minimal_coset_rep(&rep, &lam));
                assert_eq!(act(&rep, &lam.as_weight()), act(&w, &lam.as_weight()));
                assert!(rep.length() <= w.length());
            }
        }
    }

    #[test]
    fn partitions_of_size() {
        let ps = Partition::all_of_size(3, 3);
        assert_eq!(ps.len(), 3);
        assert_eq!(Partition::all_of_size(2, 0), vec![Partition::empty(2)]);
        assert_eq!(Partition::all_of_size(2, 4).len(), 3);
    }
}
