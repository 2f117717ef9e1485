//! Truncated Cauchy kernels, refined characters and the non-symmetric
//! Cauchy and Littlewood identities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::demazure::{atom, character_of, demazure_crystal, opposite_demazure_crystal, Kind};
use crate::error::{Error, Result};
use crate::poly::{SparsePoly, Vars};
use crate::tableau::{enumerate_crystal, Tableau};
use crate::weyl::{act, coset_rep_of, stabilizer_and_coset_reps, Partition, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Support {
    /// `j ≤ i`
    Lower,
    /// `i ≤ j`
    Upper,
    /// `i + j ≤ n + 1`
    Staircase,
}

impl Support {
    pub fn contains(self, n: usize, i: usize, j: usize) -> bool {
        match self {
            Support::Lower => j <= i,
            Support::Upper => i <= j,
            Support::Staircase => i + j <= n + 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelSpec {
    pub n: usize,
    pub support: Support,
    pub degree: u32,
}

/// `∏_{(i,j) ∈ support} (1 − x_i y_j)^{-1}` up to total degree `D`.
pub fn kernel_series(spec: &KernelSpec) -> SparsePoly {
    let n = spec.n;
    let d = spec.degree;
    let mut out = SparsePoly::one(n);
    for i in 1..=n {
        for j in 1..=n {
            if !spec.support.contains(n, i, j) {
                continue;
            }
            let mut geometric = SparsePoly::zero(n);
            for k in 0..=(d / 2) {
                let mut exps = vec![0u16; 2 * n];
                exps[i - 1] = k as u16;
                exps[n + j - 1] = k as u16;
                geometric = &geometric + &SparsePoly::monomial(n, exps, BigInt::one());
            }
            out = out.mul_truncated(&geometric, d);
        }
    }
    out
}

/// `Σ x^{wt(P)} y^{wt(Q)}`.
pub fn refined_character<'a>(n: usize, pairs: impl IntoIterator<Item = (&'a Tableau, &'a Tableau)>) -> SparsePoly {
    let mut acc: BTreeMap<(Vec<i64>, Vec<i64>), i64> = BTreeMap::new();
    for (p, q) in pairs {
        *acc.entry((p.weight().0, q.weight().0)).or_default() += 1;
    }
    let mut out = SparsePoly::zero(n);
    for ((wp, wq), c) in acc {
        let m = &SparsePoly::from_weight(n, Vars::X, &wp) * &SparsePoly::from_weight(n, Vars::Y, &wq);
        out = &out + &(&m * &SparsePoly::monomial(n, vec![0; 2 * n], BigInt::from(c)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// `Σ K^{wλ}(x) K̂_{wλ}(y)`
    #[serde(rename = "lower_KhatK")]
    LowerKhatK,
    /// `Σ K̂^{wλ}(x) K_{wλ}(y)`
    #[serde(rename = "lower_KKhat")]
    LowerKKhat,
    /// `Σ K_{wλ}(x) K̂_{w_0wλ}(y)`
    #[serde(rename = "staircase")]
    Staircase,
    /// `y := x` in the lower kernel against `Σ s_{2λ}`
    #[serde(rename = "littlewood")]
    Littlewood,
}

impl Variant {
    pub fn support(self) -> Support {
        match self {
            Variant::Staircase => Support::Staircase,
            _ => Support::Lower,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::LowerKhatK => "lower_KhatK",
            Variant::LowerKKhat => "lower_KKhat",
            Variant::Staircase => "staircase",
            Variant::Littlewood => "littlewood",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "lower" | "lower_khatk" => Ok(Variant::LowerKhatK),
            "lower_kkhat" => Ok(Variant::LowerKKhat),
            "staircase" => Ok(Variant::Staircase),
            "littlewood" => Ok(Variant::Littlewood),
            _ => Err(Error::Parse {
                what: "variant",
                detail: s.to_string(),
            }),
        }
    }
}

/// One product `char(x_set)(x) · char(y_set)(y)` of a right-hand side.
#[derive(Clone, Debug)]
pub struct Summand {
    pub lambda: Partition,
    pub w: Permutation,
    pub x_set: BTreeSet<Tableau>,
    pub y_set: BTreeSet<Tableau>,
    /// Which factor is an atom.
    pub atom_side: Vars,
}

impl Summand {
    pub fn product(&self) -> SparsePoly {
        let n = self.lambda.n();
        &character_of(n, &self.x_set, Vars::X) * &character_of(n, &self.y_set, Vars::Y)
    }
}

fn summands_for(lambda: &Partition, variant: Variant) -> Result<Vec<Summand>> {
    let n = lambda.n();
    let (_, reps) = stabilizer_and_coset_reps(lambda);
    let w0 = Permutation::longest(n);
    reps.iter()
        .map(|w| {
            let (x_set, y_set, atom_side) = match variant {
                Variant::LowerKhatK => (
                    opposite_demazure_crystal(lambda, w).elements,
                    atom(lambda, w, Kind::Atom)?.elements,
                    Vars::Y,
                ),
                Variant::LowerKKhat => (
                    atom(lambda, w, Kind::OppositeAtom)?.elements,
                    demazure_crystal(lambda, w).elements,
                    Vars::X,
                ),
                Variant::Staircase => {
                    let target = act(&w0.compose(w), &lambda.as_weight());
                    let u = coset_rep_of(lambda, &target)?;
                    (demazure_crystal(lambda, w).elements, atom(lambda, &u, Kind::Atom)?.elements, Vars::Y)
                }
                Variant::Littlewood => {
                    return Err(Error::Internal("the Littlewood side has no summands".into()));
                }
            };
            Ok(Summand {
                lambda: lambda.clone(),
                w: w.clone(),
                x_set,
                y_set,
                atom_side,
            })
        })
        .collect()
}

/// All summands with `2|λ| ≤ D`, ordered by `(|λ|, λ descending, w)`.
pub fn rhs_summands(n: usize, degree: u32, variant: Variant) -> Result<Vec<Summand>> {
    let lambdas: Vec<Partition> = (0..=(degree / 2) as i64).flat_map(|s| Partition::all_of_size(n, s)).collect();
    let nested: Vec<Vec<Summand>> = lambdas
        .par_iter()
        .map(|l| summands_for(l, variant))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

pub fn rhs_from_summands(n: usize, summands: &[Summand]) -> SparsePoly {
    summands
        .par_iter()
        .map(Summand::product)
        .reduce(|| SparsePoly::zero(n), |a, b| &a + &b)
}

pub fn rhs_sum(n: usize, degree: u32, variant: Variant) -> Result<SparsePoly> {
    Ok(rhs_from_summands(n, &rhs_summands(n, degree, variant)?))
}

/// `s_λ(x)` as the generating function of `B(λ)`.
pub fn schur(lambda: &Partition) -> SparsePoly {
    character_of(lambda.n(), &enumerate_crystal(lambda), Vars::X)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub variant: Variant,
    pub n: usize,
    #[serde(rename = "D")]
    pub degree: u32,
    pub difference_terms: usize,
    pub ok: bool,
    #[serde(serialize_with = "serialize_poly")]
    pub difference: SparsePoly,
    pub lhs_terms_per_degree: BTreeMap<u32, usize>,
    pub rhs_terms_per_degree: BTreeMap<u32, usize>,
}

fn serialize_poly<S: serde::Serializer>(p: &SparsePoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.to_json().serialize(s)
}

impl IdentityReport {
    pub fn from_sides(variant: Variant, n: usize, degree: u32, lhs: &SparsePoly, rhs: &SparsePoly) -> Self {
        let difference = lhs - rhs;
        IdentityReport {
            variant,
            n,
            degree,
            difference_terms: difference.num_terms(),
            ok: difference.is_zero(),
            difference,
            lhs_terms_per_degree: lhs.terms_per_degree(),
            rhs_terms_per_degree: rhs.terms_per_degree(),
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{}\nvariant {}  n {}  D {}  difference_terms {}\n",
            if self.ok { "ok" } else { "FAIL" },
            self.variant,
            self.n,
            self.degree,
            self.difference_terms,
        );
        out.push_str("degree  lhs_terms  rhs_terms\n");
        let degrees: BTreeSet<u32> = self
            .lhs_terms_per_degree
            .keys()
            .chain(self.rhs_terms_per_degree.keys())
            .copied()
            .collect();
        for d in degrees {
            let l = self.lhs_terms_per_degree.get(&d).copied().unwrap_or(0);
            let r = self.rhs_terms_per_degree.get(&d).copied().unwrap_or(0);
            out.push_str(&format!("{d:>6}  {l:>9}  {r:>9}\n"));
        }
        out
    }
}

pub fn verify_identity(n: usize, degree: u32, variant: Variant) -> Result<IdentityReport> {
    if variant == Variant::Littlewood {
        return Ok(verify_littlewood(n, degree));
    }
    let lhs = kernel_series(&KernelSpec {
        n,
        support: variant.support(),
        degree,
    });
    let rhs = rhs_sum(n, degree, variant)?;
    Ok(IdentityReport::from_sides(variant, n, degree, &lhs, &rhs))
}

/// `∏_{i ≤ j}(1 − x_i x_j)^{-1} = Σ s_{2λ}` up to degree `D`.
pub fn verify_littlewood(n: usize, degree: u32) -> IdentityReport {
    let lhs = kernel_series(&KernelSpec {
        n,
        support: Support::Lower,
        degree,
    })
    .specialize_y_to_x();
    let lambdas: Vec<Partition> = (0..=(degree / 2) as i64).flat_map(|s| Partition::all_of_size(n, s)).collect();
    let rhs = lambdas
        .par_iter()
        .map(|l| schur(&l.scaled(2)))
        .reduce(|| SparsePoly::zero(n), |a, b| &a + &b);
    IdentityReport::from_sides(Variant::Littlewood, n, degree, &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{rsk, NNMatrix};

    fn poly(n: usize, terms: &[(&[u16], i64)]) -> SparsePoly {
        terms
            .iter()
            .map(|(e, c)| SparsePoly::monomial(n, e.to_vec(), BigInt::from(*c)))
            .sum()
    }

    #[test]
    fn kernel_examples() {
        let spec = |support, degree| KernelSpec { n: 2, support, degree };
        assert_eq!(kernel_series(&spec(Support::Lower, 0)), SparsePoly::one(2));
        let expected = poly(2, &[(&[0, 0, 0, 0], 1), (&[1, 0, 1, 0], 1), (&[0, 1, 1, 0], 1), (&[0, 1, 0, 1], 1)]);
        assert_eq!(kernel_series(&spec(Support::Lower, 2)), expected);
        let expected = poly(2, &[(&[0, 0, 0, 0], 1), (&[1, 0, 1, 0], 1), (&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], 1)]);
        assert_eq!(kernel_series(&spec(Support::Staircase, 2)), expected);
    }

    /// Coefficient of `x^α y^β` counts matrices with row sums `α` and column
    /// sums `β`.
    #[test]
    fn kernel_counts_matrices() {
        for support in [Support::Lower, Support::Upper, Support::Staircase] {
            for n in 1..=3 {
                let d = 6;
                let mut oracle = SparsePoly::zero(n);
                for s in 0..=(d / 2) as u64 {
                    for m in NNMatrix::enumerate(n, s, |i, j| support.contains(n, i, j)) {
                        let mut exps = vec![0u16; 2 * n];
                        for i in 1..=n {
                            for j in 1..=n {
                                exps[i - 1] += m.get(i, j) as u16;
                                exps[n + j - 1] += m.get(i, j) as u16;
                            }
                        }
                        oracle = &oracle + &SparsePoly::monomial(n, exps, BigInt::one());
                    }
                }
                assert_eq!(kernel_series(&KernelSpec { n, support, degree: d }), oracle);
            }
        }
    }

    #[test]
    fn refined_character_examples() {
        let lam = Partition::padded(vec![1], 2).unwrap();
        let one = Tableau::highest(&lam);
        assert_eq!(refined_character(2, [(&one, &one)]), poly(2, &[(&[1, 0, 1, 0], 1)]));
        assert!(refined_character(2, std::iter::empty()).is_zero());
        let bx = opposite_demazure_crystal(&lam, &Permutation::identity(2)).elements;
        let by = atom(&lam, &Permutation::identity(2), Kind::Atom).unwrap().elements;
        let pairs: Vec<_> = bx.iter().flat_map(|p| by.iter().map(move |q| (p, q))).collect();
        assert_eq!(refined_character(2, pairs), poly(2, &[(&[1, 0, 1, 0], 1), (&[0, 1, 1, 0], 1)]));
    }

    #[test]
    fn rhs_examples() {
        for v in [Variant::LowerKhatK, Variant::LowerKKhat, Variant::Staircase] {
            assert_eq!(rhs_sum(2, 0, v).unwrap(), SparsePoly::one(2));
        }
        let lower = poly(2, &[(&[0, 0, 0, 0], 1), (&[1, 0, 1, 0], 1), (&[0, 1, 1, 0], 1), (&[0, 1, 0, 1], 1)]);
        assert_eq!(rhs_sum(2, 2, Variant::LowerKhatK).unwrap(), lower);
        let stair = poly(2, &[(&[0, 0, 0, 0], 1), (&[1, 0, 1, 0], 1), (&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], 1)]);
        assert_eq!(rhs_sum(2, 2, Variant::Staircase).unwrap(), stair);
    }

    #[test]
    fn summands_are_bihomogeneous() {
        for s in rhs_summands(3, 4, Variant::LowerKhatK).unwrap() {
            let size = s.lambda.size() as u32;
            let p = s.product();
            assert!(p.is_homogeneous());
            assert_eq!(p.degree(), Some(2 * size));
        }
    }

    #[test]
    fn identity_examples() {
        for v in [Variant::LowerKhatK, Variant::LowerKKhat] {
            let r = verify_identity(2, 4, v).unwrap();
            assert!(r.ok, "{}", r.difference);
        }
        let r = verify_identity(3, 4, Variant::Staircase).unwrap();
        assert!(r.ok, "{}", r.difference);
        let r = verify_identity(1, 6, Variant::Littlewood).unwrap();
        assert!(r.ok);
        assert_eq!(r.rhs_terms_per_degree, BTreeMap::from([(0, 1), (2, 1), (4, 1), (6, 1)]));
    }

    #[test]
    fn report_json_shape() {
        let r = verify_identity(2, 2, Variant::LowerKhatK).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(&keys[..5], &["variant", "n", "D", "difference_terms", "ok"]);
        assert_eq!(json["variant"], "lower_KhatK");
        assert!(r.to_table().starts_with("ok\n"));
    }

    /// Character shadow of the bijection: RSK images of `𝓜^low` carry the
    /// lower kernel's homogeneous components.
    #[test]
    fn bijective_consistency() {
        for n in 1..=3 {
            let kernel = kernel_series(&KernelSpec { n, support: Support::Lower, degree: 8 });
            for s in 0..=4u64 {
                let images: Vec<(Tableau, Tableau)> = NNMatrix::all_lower_triangular(n, s).iter().map(rsk).collect();
                let refined = refined_character(n, images.iter().map(|(p, q)| (p, q)));
                assert_eq!(refined, kernel.homogeneous_component(2 * s as u32), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn reversal_maps_lower_to_staircase() {
        for n in 1..=3 {
            let lower = kernel_series(&KernelSpec { n, support: Support::Lower, degree: 6 });
            let stair = kernel_series(&KernelSpec { n, support: Support::Staircase, degree: 6 });
            assert_eq!(lower.reverse_x(), stair);
        }
    }

    #[test]
    fn reversed_opposite_character_is_demazure() {
        for n in 1..=3 {
            let w0 = Permutation::longest(n);
            for size in 0..=3 {
                for lambda in Partition::all_of_size(n, size) {
                    for w in stabilizer_and_coset_reps(&lambda).1 {
                        let opposite = opposite_demazure_crystal(&lambda, &w);
                        let mirrored = demazure_crystal(&lambda, &w0.compose(&w));
                        assert_eq!(
                            character_of(n, &opposite.elements, Vars::X).reverse_x(),
                            character_of(n, &mirrored.elements, Vars::X)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("lower".parse::<Variant>().unwrap(), Variant::LowerKhatK);
        assert_eq!("lower_KKhat".parse::<Variant>().unwrap(), Variant::LowerKKhat);
        assert_eq!("lower-khatk".parse::<Variant>().unwrap(), Variant::LowerKhatK);
        assert!("upper".parse::<Variant>().is_err());
    }
}
