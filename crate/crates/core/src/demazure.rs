//! Demazure crystals, opposite Demazure crystals and their atoms inside
//! `B(λ)`, with their characters.
//!
//! `B_w(λ)` is built from `{v_λ}` by closing under `f̃_i`-strings along a
//! reduced word of `w` (rightmost letter first); `B^w(λ)` is built from
//! `{v_{w_0λ}}` by closing under `ẽ_i`-strings along a reduced word of
//! `w w_0`. Both depend only on the coset `wW_λ`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ls_path::psi;
use crate::poly::{SparsePoly, Vars};
use crate::tableau::{enumerate_crystal, Tableau};
use crate::weyl::{act, bruhat_leq, is_minimal_coset_rep, minimal_coset_rep, stabilizer_and_coset_reps, Partition, Permutation};
use crate::word::Direction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Demazure,
    Atom,
    Opposite,
    OppositeAtom,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Demazure => "demazure",
            Kind::Atom => "atom",
            Kind::Opposite => "opposite",
            Kind::OppositeAtom => "opposite_atom",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "demazure" => Ok(Kind::Demazure),
            "atom" => Ok(Kind::Atom),
            "opposite" => Ok(Kind::Opposite),
            "opposite_atom" => Ok(Kind::OppositeAtom),
            _ => Err(Error::Parse {
                what: "kind",
                detail: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemazureSet {
    pub lambda: Partition,
    /// Minimal coset representative.
    pub w: Permutation,
    pub kind: Kind,
    pub elements: BTreeSet<Tableau>,
}

/// `⋃_{m ≥ 0} x̃_i^m S`.
fn string_closure(set: &BTreeSet<Tableau>, i: usize, dir: Direction) -> BTreeSet<Tableau> {
    let mut out = set.clone();
    for t in set {
        let mut cur = t.clone();
        while let Some(next) = cur.op(i, dir).expect("index in range") {
            out.insert(next.clone());
            cur = next;
        }
    }
    out
}

fn closure_along(start: Tableau, word: &[usize], dir: Direction) -> BTreeSet<Tableau> {
    word.iter()
        .rev()
        .fold(BTreeSet::from([start]), |set, &i| string_closure(&set, i, dir))
}

/// `B_w(λ)`.
pub fn demazure_crystal(lambda: &Partition, w: &Permutation) -> DemazureSet {
    let elements = closure_along(Tableau::highest(lambda), &w.reduced_word(), Direction::Lower);
    DemazureSet {
        lambda: lambda.clone(),
        w: minimal_coset_rep(w, lambda),
        kind: Kind::Demazure,
        elements,
    }
}

/// `B^w(λ)`.
pub fn opposite_demazure_crystal(lambda: &Partition, w: &Permutation) -> DemazureSet {
    let w0 = Permutation::longest(lambda.n());
    let word = w.compose(&w0).reduced_word();
    let elements = closure_along(Tableau::lowest(lambda), &word, Direction::Raise);
    DemazureSet {
        lambda: lambda.clone(),
        w: minimal_coset_rep(w, lambda),
        kind: Kind::Opposite,
        elements,
    }
}

/// Atom by set difference over Bruhat-smaller (resp. larger) coset
/// representatives.
pub fn atom_by_difference(lambda: &Partition, w: &Permutation, kind: Kind) -> Result<BTreeSet<Tableau>> {
    if !is_minimal_coset_rep(w, lambda) {
        return Err(Error::NotMinimalRep(w.one_line()));
    }
    let (_, reps) = stabilizer_and_coset_reps(lambda);
    let wl = act(w, &lambda.as_weight());
    let distinct = |u: &Permutation| act(u, &lambda.as_weight()) != wl;
    match kind {
        Kind::Atom => {
            let mut set = demazure_crystal(lambda, w).elements;
            for u in reps.iter().filter(|u| distinct(u) && bruhat_leq(u, w)) {
                for t in demazure_crystal(lambda, u).elements {
                    set.remove(&t);
                }
            }
            Ok(set)
        }
        Kind::OppositeAtom => {
            let mut set = opposite_demazure_crystal(lambda, w).elements;
            for u in reps.iter().filter(|u| distinct(u) && bruhat_leq(w, u)) {
                for t in opposite_demazure_crystal(lambda, u).elements {
                    set.remove(&t);
                }
            }
            Ok(set)
        }
        _ => Err(Error::Parse {
            what: "atom kind",
            detail: kind.to_string(),
        }),
    }
}

/// Atom through LS paths: `ι(ψ(b)) = wλ` (resp. `τ(ψ(b)) = wλ`).
pub fn atom_by_paths(lambda: &Partition, w: &Permutation, kind: Kind) -> Result<BTreeSet<Tableau>> {
    if !is_minimal_coset_rep(w, lambda) {
        return Err(Error::NotMinimalRep(w.one_line()));
    }
    let wl = act(w, &lambda.as_weight());
    let mut out = BTreeSet::new();
    for t in enumerate_crystal(lambda) {
        let p = psi(&t, lambda)?;
        let (iota, tau) = p.iota_tau();
        let hit = match kind {
            Kind::Atom => *iota == wl,
            Kind::OppositeAtom => *tau == wl,
            _ => {
                return Err(Error::Parse {
                    what: "atom kind",
                    detail: kind.to_string(),
                })
            }
        };
        if hit {
            out.insert(t);
        }
    }
    Ok(out)
}

/// `B̂_w(λ)` or `B̂^w(λ)`, computed both ways; disagreement is reported as
/// an internal error.
pub fn atom(lambda: &Partition, w: &Permutation, kind: Kind) -> Result<DemazureSet> {
    let by_difference = atom_by_difference(lambda, w, kind)?;
    let by_paths = atom_by_paths(lambda, w, kind)?;
    if by_difference != by_paths {
        return Err(Error::Internal(format!(
            "{kind} for λ = {lambda}, w = {w}: set difference and LS characterization disagree"
        )));
    }
    Ok(DemazureSet {
        lambda: lambda.clone(),
        w: w.clone(),
        kind,
        elements: by_difference,
    })
}

/// Dispatches on `kind`.
pub fn demazure_set(lambda: &Partition, w: &Permutation, kind: Kind) -> Result<DemazureSet> {
    match kind {
        Kind::Demazure => Ok(demazure_crystal(lambda, w)),
        Kind::Opposite => Ok(opposite_demazure_crystal(lambda, w)),
        Kind::Atom | Kind::OppositeAtom => atom(lambda, w, kind),
    }
}

/// `Σ_{b} vars^{wt(b)}`.
pub fn character(ds: &DemazureSet, vars: Vars) -> SparsePoly {
    character_of(ds.lambda.n(), &ds.elements, vars)
}

pub fn character_of<'a>(n: usize, elements: impl IntoIterator<Item = &'a Tableau>, vars: Vars) -> SparsePoly {
    let mut out = SparsePoly::zero(n);
    for t in elements {
        out = &out + &SparsePoly::from_weight(n, vars, &t.weight().0);
    }
    out
}

/// Isobaric divided difference `π_i f = (x_i f − x_{i+1}·s_i f)/(x_i − x_{i+1})`.
pub fn isobaric_divided_difference(f: &SparsePoly, i: usize) -> Result<SparsePoly> {
    let n = f.n();
    let xi = SparsePoly::var(n, Vars::X, i);
    let xj = SparsePoly::var(n, Vars::X, i + 1);
    let numerator = &(&xi * f) - &(&xj * &f.swap_x(i));
    numerator.div_exact(&(&xi - &xj))
}

/// `π_{i_1} ⋯ π_{i_ℓ} x^λ` for a reduced word of `w`; an independent route
/// to the Demazure character.
pub fn demazure_operator_oracle(lambda: &Partition, w: &Permutation) -> Result<SparsePoly> {
    let n = lambda.n();
    let mut f = SparsePoly::from_weight(n, Vars::X, lambda.parts());
    for &i in w.reduced_word().iter().rev() {
        f = isobaric_divided_difference(&f, i)?;
    }
    Ok(f)
}
