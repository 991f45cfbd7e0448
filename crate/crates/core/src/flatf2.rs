//! Mod-2 cohomology of tori with coefficients in flat real line bundles:
//! Künneth ranks, total Stiefel–Whitney classes of sums of line bundles and
//! the deformation space of the associated flat `SO(m)` bundle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest torus dimension supported by the bitmask representation.
pub const MAX_DIM: usize = 64;

/// An element of `H^1(T^n; Z/2)`, i.e. a flat real line bundle `R_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Class {
    n: usize,
    bits: u64,
}

impl F2Class {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_DIM || (n < 64 && bits >> n != 0) {
            return Err(Error::Dimension(format!("{bits:#b} does not fit in F2^{n}")));
        }
        Ok(F2Class { n, bits })
    }

    pub fn zero(n: usize) -> Self {
        F2Class { n, bits: 0 }
    }

    /// All `2^n` classes, in bit order.
    pub fn all(n: usize) -> Vec<F2Class> {
        assert!(n < 32, "enumeration limited to n < 32");
        (0..1u64 << n).map(|bits| F2Class { n, bits }).collect()
    }

    pub fn dim(self) -> usize {
        self.n
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// The class as a degree-one exterior element.
    pub fn to_exterior(self) -> ExteriorF2Element {
        ExteriorF2Element {
            n: self.n,
            monomials: (0..self.n)
                .filter(|i| self.bits >> i & 1 == 1)
                .map(|i| 1u64 << i)
                .collect(),
        }
    }
}

impl std::ops::Add for F2Class {
    type Output = F2Class;
    fn add(self, other: F2Class) -> F2Class {
        assert_eq!(self.n, other.n, "classes on different tori");
        F2Class {
            n: self.n,
            bits: self.bits ^ other.bits,
        }
    }
}

/// Bitstrings read left to right: `"101"` is `e_1 + e_3` on `T^3`.
impl fmt::Display for F2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.n)
            .map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for F2Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_DIM {
            return Err(Error::Parse(format!("bad F2 class `{s}`")));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("bad F2 class `{s}`"))),
            }
        }
        Ok(F2Class { n: s.len(), bits })
    }
}

impl Serialize for F2Class {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for F2Class {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Element of the exterior algebra `Λ(e_1..e_n)` over `F_2`, which is the
/// cohomology ring `H^*(T^n; Z/2)`. Monomials are bitmasks of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExteriorF2Element {
    n: usize,
    monomials: BTreeSet<u64>,
}

impl ExteriorF2Element {
    pub fn zero(n: usize) -> Self {
        ExteriorF2Element {
            n,
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        ExteriorF2Element {
            n,
            monomials: BTreeSet::from([0]),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials.iter().copied()
    }

    fn toggle(&mut self, m: u64) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add(&self, other: &ExteriorF2Element) -> ExteriorF2Element {
        let mut out = self.clone();
        for &m in &other.monomials {
            out.toggle(m);
        }
        out
    }

    /// Over `F_2` signs vanish; overlapping monomials square to zero.
    pub fn mul(&self, other: &ExteriorF2Element) -> ExteriorF2Element {
        assert_eq!(self.n, other.n, "elements on different tori");
        let mut out = ExteriorF2Element::zero(self.n);
        for &a in &self.monomials {
            for &b in &other.monomials {
                if a & b == 0 {
                    out.toggle(a | b);
                }
            }
        }
        out
    }

    /// Homogeneous component of degree `k`.
    pub fn degree_part(&self, k: usize) -> ExteriorF2Element {
        ExteriorF2Element {
            n: self.n,
            monomials: self
                .monomials
                .iter()
                .copied()
                .filter(|m| m.count_ones() as usize == k)
                .collect(),
        }
    }

    /// Monomials of degree `k` as sorted 1-based index tuples.
    pub fn terms(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .degree_part(k)
            .monomials
            .iter()
            .map(|&m| (0..self.n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect())
            .collect();
        out.sort();
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.monomials.iter().map(|m| m.count_ones() as usize).max()
    }
}

impl fmt::Display for ExteriorF2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for k in 0..=self.n {
            for t in self.terms(k) {
                if t.is_empty() {
                    parts.push("1".to_string());
                } else {
                    parts.push(t.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join(""));
                }
            }
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `dim H^k(T^n, R_α)`: by Künneth this is `C(n,k)` for trivial `α` and 0 otherwise.
pub fn line_bundle_cohomology(n: usize, k: usize, alpha: F2Class) -> Result<u128> {
    if alpha.dim() != n {
        return Err(Error::Dimension(format!("class {alpha} is not on T^{n}")));
    }
    if k > n || !alpha.is_zero() {
        return Ok(0);
    }
    Ok((0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1)))
}

fn common_dim(classes: &[F2Class]) -> Result<usize> {
    let n = classes.first().map_or(0, |c| c.dim());
    if let Some(c) = classes.iter().find(|c| c.dim() != n) {
        return Err(Error::Dimension(format!("class {c} is not on T^{n}")));
    }
    Ok(n)
}

/// `w(⊕ R_α) = ∏ (1 + α)` by the Whitney product formula.
pub fn total_sw_class(classes: &[F2Class]) -> Result<ExteriorF2Element> {
    let n = common_dim(classes)?;
    let one = ExteriorF2Element::one(n);
    Ok(classes
        .iter()
        .fold(one.clone(), |acc, a| acc.mul(&one.add(&a.to_exterior()))))
}

/// `dim H^1(T^n, so(E))` for `E = ⊕ R_α`: `so(E)` splits into the line
/// bundles `R_α ⊗ R_β` over unordered pairs of summands.
pub fn so_bundle_deformation_dim(classes: &[F2Class]) -> Result<u128> {
    let n = common_dim(classes)?;
    let mut total = 0;
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            total += line_bundle_cohomology(n, 1, *a + *b)?;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatSumReport {
    pub classes: Vec<F2Class>,
    pub w1: F2Class,
    pub w2_terms: Vec<Vec<usize>>,
    pub w2: u8,
    pub total_class: String,
    pub deformation_dim: u128,
}

/// Characteristic classes and deformation dimension of `⊕ R_α`.
pub fn flat_sum_report(classes: &[F2Class]) -> Result<FlatSumReport> {
    let n = common_dim(classes)?;
    let w = total_sw_class(classes)?;
    let w1 = classes.iter().fold(F2Class::zero(n), |acc, a| acc + *a);
    let w2_terms = w.terms(2);
    Ok(FlatSumReport {
        classes: classes.to_vec(),
        w1,
        w2: u8::from(!w2_terms.is_empty()),
        w2_terms,
        total_class: w.to_string(),
        deformation_dim: so_bundle_deformation_dim(classes)?,
    })
}

/// The eight flat line bundles on `T^3` whose sum is the `SO(8)` bundle of the
/// commuting triple.
pub fn spin8_triple_classes() -> Vec<F2Class> {
    F2Class::all(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> F2Class {
        s.parse().unwrap()
    }

    /// Degree-2 part as the explicit pair sum `Σ_{i<j} α_i ∪ α_j`.
    fn w2_by_pairs(classes: &[F2Class]) -> ExteriorF2Element {
        let n = classes[0].dim();
        let mut acc = ExteriorF2Element::zero(n);
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                acc = acc.add(&a.to_exterior().mul(&b.to_exterior()));
            }
        }
        acc
    }

    #[test]
    fn kunneth_examples() {
        assert_eq!(line_bundle_cohomology(3, 1, c("000")).unwrap(), 3);
        assert_eq!(line_bundle_cohomology(3, 1, c("010")).unwrap(), 0);
        assert_eq!(line_bundle_cohomology(3, 0, c("110")).unwrap(), 0);
        assert_eq!(line_bundle_cohomology(4, 2, c("0000")).unwrap(), 6);
        assert!(line_bundle_cohomology(4, 2, c("000")).is_err());
    }

    #[test]
    fn sw_examples() {
        let a = c("101");
        let w = total_sw_class(&[a]).unwrap();
        assert_eq!(w, ExteriorF2Element::one(3).add(&a.to_exterior()));
        assert_eq!(w.to_string(), "1 + e1 + e3");
        assert_eq!(total_sw_class(&[a, a]).unwrap(), ExteriorF2Element::one(3));
        assert_eq!(total_sw_class(&[]).unwrap(), ExteriorF2Element::one(0));
        let w = total_sw_class(&[c("100"), c("010")]).unwrap();
        assert_eq!(w.terms(2), vec![vec![1, 2]]);
    }

    #[test]
    fn spin8_triple() {
        let all = spin8_triple_classes();
        assert_eq!(all.len(), 8);
        let r = flat_sum_report(&all).unwrap();
        assert_eq!(r.w2, 0);
        assert!(r.w2_terms.is_empty());
        assert!(r.w1.is_zero());
        assert_eq!(r.deformation_dim, 0);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["w1"], "000");
        assert_eq!(j["deformation_dim"], 0);
    }

    #[test]
    fn deformation_examples() {
        assert_eq!(so_bundle_deformation_dim(&[c("000"), c("000")]).unwrap(), 3);
        assert_eq!(so_bundle_deformation_dim(&[c("000"), c("100")]).unwrap(), 0);
        // one repeated class among three: exactly one trivial pair
        assert_eq!(so_bundle_deformation_dim(&[c("11"), c("11"), c("01")]).unwrap(), 2);
    }

    #[test]
    fn subgroup_w2_vanishes_unless_rank_two() {
        // every subgroup of F2^n, n ≤ 4, listed once per element
        for n in 1..=4usize {
            let all = F2Class::all(n);
            let mut seen = BTreeSet::new();
            for gens in 0u32..1 << (1 << n) {
                // candidate subset as a bitmask over all elements
                let subset: Vec<F2Class> = all.iter().copied().filter(|a| gens >> a.bits() & 1 == 1).collect();
                let closed = subset.iter().any(|a| a.is_zero())
                    && subset
                        .iter()
                        .all(|a| subset.iter().all(|b| subset.contains(&(*a + *b))));
                if !closed {
                    continue;
                }
                seen.insert(gens);
                let w = total_sw_class(&subset).unwrap();
                // each 2-plane contributes its own wedge; the sum is GL(V)-invariant,
                // hence zero unless V itself is a plane
                let rank = subset.len().trailing_zeros();
                assert_eq!(w.degree_part(2).is_zero(), rank != 2, "n={n} {subset:?}");
                assert_eq!(w.degree_part(2), w2_by_pairs(&subset).degree_part(2));
            }
            // number of subspaces of F2^n: 2, 5, 16, 67
            assert_eq!(seen.len(), [0, 2, 5, 16, 67][n]);
        }
    }

    fn class_list(n: usize) -> impl Strategy<Value = Vec<F2Class>> {
        proptest::collection::vec(0u64..1 << n, 1..7)
            .prop_map(move |v| v.into_iter().map(|b| F2Class::new(n, b).unwrap()).collect())
    }

    proptest! {
        #[test]
        fn whitney_multiplicative(a in class_list(4), b in class_list(4)) {
            let joined: Vec<F2Class> = a.iter().chain(&b).copied().collect();
            let lhs = total_sw_class(&joined).unwrap();
            prop_assert_eq!(lhs, total_sw_class(&a).unwrap().mul(&total_sw_class(&b).unwrap()));
        }

        #[test]
        fn degree_two_is_pair_sum(a in class_list(5)) {
            prop_assert_eq!(total_sw_class(&a).unwrap().degree_part(2), w2_by_pairs(&a));
        }

        #[test]
        fn deformation_zero_iff_distinct(a in class_list(3)) {
            let distinct = a.iter().collect::<BTreeSet<_>>().len() == a.len();
            prop_assert_eq!(so_bundle_deformation_dim(&a).unwrap() == 0, distinct);
        }

        #[test]
        fn bitstring_roundtrip(b in 0u64..1 << 6) {
            let a = F2Class::new(6, b).unwrap();
            prop_assert_eq!(a.to_string().parse::<F2Class>().unwrap(), a);
        }
    }
}
