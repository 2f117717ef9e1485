//! Semistandard tableaux as a realization of `B(λ)`.
//!
//! The crystal structure is transported from words through the reading word
//! obtained by scanning columns from right to left, each column from top to
//! bottom. Under the tensor convention of [`crate::word`] this word of the
//! row-filled tableau `v_λ` is of highest weight, and row-inserting the
//! reversed reading word rebuilds the tableau.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{Partition, Weight};
use crate::word::{Direction, Word};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr", into = "TableauRepr")]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

/// JSON form: `{"shape":[2,1,0], "rows":[[1,1],[2]]}`; empty rows may be
/// omitted.
#[derive(Serialize, Deserialize)]
struct TableauRepr {
    shape: Vec<i64>,
    rows: Vec<Vec<u32>>,
}

impl From<Tableau> for TableauRepr {
    fn from(t: Tableau) -> Self {
        TableauRepr {
            shape: t.shape.parts().to_vec(),
            rows: t.rows.into_iter().filter(|r| !r.is_empty()).collect(),
        }
    }
}

impl TryFrom<TableauRepr> for Tableau {
    type Error = Error;
    fn try_from(r: TableauRepr) -> Result<Self> {
        let shape = Partition::new(r.shape)?;
        Tableau::new(shape, r.rows)
    }
}

impl Tableau {
    /// Validates shape, entries in `[n]` and semistandardness.
    pub fn new(shape: Partition, mut rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = shape.n();
        if rows.len() > n {
            if rows[n..].iter().any(|r| !r.is_empty()) {
                return Err(Error::NotSemistandard(format!("more than {n} rows")));
            }
            rows.truncate(n);
        }
        rows.resize(n, Vec::new());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != shape.part(r) {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has {} cells, shape wants {}",
                    r + 1,
                    row.len(),
                    shape.part(r)
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x == 0 || x as usize > n) {
                return Err(Error::LetterOutOfRange { letter: bad, n });
            }
            if row.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::NotSemistandard(format!("row {} decreases", r + 1)));
            }
            if r > 0 && row.iter().zip(&rows[r - 1]).any(|(below, above)| below <= above) {
                return Err(Error::NotSemistandard(format!(
                    "column not strictly increasing below row {r}"
                )));
            }
        }
        Ok(Tableau { shape, rows })
    }

    /// The highest-weight tableau `v_λ`: row `k` filled with `k`.
    pub fn highest(shape: &Partition) -> Self {
        let rows = (0..shape.n())
            .map(|r| vec![r as u32 + 1; shape.part(r)])
            .collect();
        Tableau {
            shape: shape.clone(),
            rows,
        }
    }

    /// The lowest-weight tableau `v_{w_0 λ}`: each column of height `h`
    /// filled with `n−h+1, …, n`.
    pub fn lowest(shape: &Partition) -> Self {
        let n = shape.n();
        let mut rows: Vec<Vec<u32>> = (0..n).map(|r| Vec::with_capacity(shape.part(r))).collect();
        let ncols = if n == 0 { 0 } else { shape.part(0) };
        for c in 0..ncols {
            let h = shape.column_height(c);
            for (r, row) in rows.iter_mut().enumerate().take(h) {
                row.push((n - h + r + 1) as u32);
            }
        }
        Tableau {
            shape: shape.clone(),
            rows,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn weight(&self) -> Weight {
        let mut wt = Weight::zero(self.n());
        for &x in self.rows.iter().flatten() {
            wt.0[x as usize - 1] += 1;
        }
        wt
    }

    fn num_columns(&self) -> usize {
        if self.n() == 0 {
            0
        } else {
            self.shape.part(0)
        }
    }

    /// Columns right to left, each top to bottom.
    pub fn reading_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.shape.size() as usize);
        for c in (0..self.num_columns()).rev() {
            for r in 0..self.shape.column_height(c) {
                letters.push(self.rows[r][c]);
            }
        }
        Word::new(self.n(), letters).expect("entries are in range")
    }

    /// Inverse of [`Tableau::reading_word`] for a fixed shape.
    fn fill_from_reading_word(shape: &Partition, word: &Word) -> Tableau {
        let mut rows: Vec<Vec<u32>> = (0..shape.n()).map(|r| vec![0; shape.part(r)]).collect();
        let mut letters = word.letters().iter();
        let ncols = if shape.n() == 0 { 0 } else { shape.part(0) };
        for c in (0..ncols).rev() {
            for row in rows.iter_mut().take(shape.column_height(c)) {
                row[c] = *letters.next().expect("word length matches shape");
            }
        }
        Tableau {
            shape: shape.clone(),
            rows,
        }
    }

    /// `ẽ_i`/`f̃_i` computed on the reading word.
    pub fn op(&self, i: usize, dir: Direction) -> Result<Option<Tableau>> {
        let image = self.reading_word().op(i, dir)?;
        Ok(image.map(|w| {
            let t = Self::fill_from_reading_word(&self.shape, &w);
            debug_assert!(Tableau::new(t.shape.clone(), t.rows.clone()).is_ok());
            t
        }))
    }

    pub fn raise(&self, i: usize) -> Result<Option<Tableau>> {
        self.op(i, Direction::Raise)
    }

    pub fn lower(&self, i: usize) -> Result<Option<Tableau>> {
        self.op(i, Direction::Lower)
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.reading_word().eps(i)
    }

    pub fn phi(&self, i: usize) -> i64 {
        self.reading_word().phi(i)
    }

    /// Raises to `v_λ` with the smallest applicable index first; returns the
    /// indices in application order.
    pub fn raise_script(&self) -> Vec<usize> {
        self.reading_word().raise_to_highest().1
    }

    /// Applies `f̃_{script[k]}` for `k` from last to first, i.e. undoes a
    /// raising script that ended at `self`.
    pub fn replay_lowering(&self, script: &[usize]) -> Result<Tableau> {
        let mut t = self.clone();
        for &i in script.iter().rev() {
            t = t
                .lower(i)?
                .ok_or_else(|| Error::Internal(format!("f̃_{i} vanished while replaying")))?;
        }
        Ok(t)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", rows.join(""))
    }
}

/// The unique tableau `b_a ≡ a`: raise `a` to a highest-weight word of
/// weight `λ`, then replay the inverse script from `v_λ`.
pub fn word_to_tableau(a: &Word) -> Tableau {
    let (top, script) = a.raise_to_highest();
    let shape = Partition::new(top.weight().0).expect("highest-weight words have dominant weight");
    Tableau::highest(&shape)
        .replay_lowering(&script)
        .expect("a connected component of words is isomorphic to B(λ)")
}

/// All of `B(λ)`, generated from `v_λ` by the lowering operators.
pub fn enumerate_crystal(lambda: &Partition) -> BTreeSet<Tableau> {
    let n = lambda.n();
    let start = Tableau::highest(lambda);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for i in 1..n {
            if let Some(next) = t.lower(i).expect("index in range") {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[i64]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn tab(p: &[i64], rows: &[&[u32]]) -> Tableau {
        Tableau::new(part(p), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Row insertion, used only as a cross-check.
    fn row_insert(word: &[u32], n: usize) -> Tableau {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for &x in word {
            let mut x = x;
            let mut r = 0;
            loop {
                if r == rows.len() {
                    rows.push(vec![x]);
                    break;
                }
                match rows[r].iter().position(|&y| y > x) {
                    Some(p) => {
                        x = std::mem::replace(&mut rows[r][p], x);
                        r += 1;
                    }
                    None => {
                        rows[r].push(x);
                        break;
                    }
                }
            }
        }
        let shape = Partition::padded(rows.iter().map(|r| r.len() as i64).collect(), n).unwrap();
        Tableau::new(shape, rows).unwrap()
    }

    #[test]
    fn word_to_tableau_examples() {
        let t = word_to_tableau(&Word::parse("112", 2).unwrap());
        assert_eq!(t, tab(&[2, 1], &[&[1, 1], &[2]]));
        assert_eq!(word_to_tableau(&Word::parse("1", 1).unwrap()), tab(&[1], &[&[1]]));
        let t = word_to_tableau(&Word::parse("21", 2).unwrap());
        assert_eq!(t, tab(&[2, 0], &[&[1, 2]]));
    }

    #[test]
    fn word_to_tableau_matches_reversed_row_insertion() {
        for n in 1..=3 {
            for len in 0..=6 {
                for a in Word::all_of_length(n, len) {
                    let mut rev = a.letters().to_vec();
                    rev.reverse();
                    assert_eq!(word_to_tableau(&a), row_insert(&rev, n), "word {a}");
                }
            }
        }
    }

    #[test]
    fn tableau_op_examples() {
        let one = tab(&[1, 0], &[&[1]]);
        assert_eq!(one.lower(1).unwrap(), Some(tab(&[1, 0], &[&[2]])));
        let t = tab(&[2, 0], &[&[1, 2]]);
        assert_eq!(t.lower(1).unwrap(), Some(tab(&[2, 0], &[&[2, 2]])));
        let v = Tableau::highest(&part(&[3, 1, 0]));
        for i in 1..3 {
            assert_eq!(v.raise(i).unwrap(), None);
        }
    }

    #[test]
    fn non_semistandard_rejected() {
        assert!(Tableau::new(part(&[2, 0]), vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(part(&[1, 1]), vec![vec![1], vec![1]]).is_err());
        assert!(Tableau::new(part(&[2, 0]), vec![vec![1]]).is_err());
        assert!(Tableau::new(part(&[1, 0]), vec![vec![3]]).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let b = enumerate_crystal(&part(&[1, 0]));
        assert_eq!(b, BTreeSet::from([tab(&[1, 0], &[&[1]]), tab(&[1, 0], &[&[2]])]));
        assert_eq!(enumerate_crystal(&part(&[2, 0])).len(), 3);
        assert_eq!(enumerate_crystal(&part(&[2, 1, 0])).len(), 8);
    }

    #[test]
    fn lowest_has_antidominant_weight() {
        for p in [vec![2, 1, 0], vec![3, 3, 1], vec![2, 0, 0, 0], vec![1, 1, 1]] {
            let lam = part(&p);
            let low = Tableau::lowest(&lam);
            assert!(Tableau::new(lam.clone(), low.rows().to_vec()).is_ok());
            let mut rev = p.clone();
            rev.reverse();
            assert_eq!(low.weight(), Weight(rev));
            for i in 1..lam.n() {
                assert_eq!(low.lower(i).unwrap(), None);
            }
        }
    }

    #[test]
    fn json_shape() {
        let t = tab(&[2, 1, 0], &[&[1, 1], &[2]]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"shape":[2,1,0],"rows":[[1,1],[2]]}"#);
        let back: Tableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tableau>(r#"{"shape":[2,0],"rows":[[2,1]]}"#).is_err());
    }
}
