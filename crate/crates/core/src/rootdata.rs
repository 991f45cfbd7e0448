//! Coroot lattices and Weyl groups for the simple types, with diagram
//! embeddings and the crepant-resolution classification.
//!
//! Conventions: Bourbaki node numbering, `cartan[i][j] = <a_i^vee, a_j>`,
//! and every group element acts on the lattice in the basis of simple coroots.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::WeylGroup;
use crate::intmat::{solve_integer, IntMatrix};

/// Default element cap for materializing a Weyl group.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Dynkin type label such as `D_4` or `G_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bad = |reason| {
            Err(Error::InvalidRank {
                ty: format!("{family:?}"),
                rank,
                reason,
            })
        };
        match family {
            Family::A if rank < 1 => bad("A_n needs n >= 1"),
            Family::B | Family::C if rank < 2 => bad("B_n and C_n need n >= 2"),
            Family::D if rank < 4 => bad("D_n needs n >= 4"),
            Family::E if !(6..=8).contains(&rank) => bad("E_n exists for n = 6, 7, 8"),
            Family::F if rank != 4 => bad("F has rank 4 only"),
            Family::G if rank != 2 => bad("G has rank 2 only"),
            _ => Ok(DynkinType { family, rank }),
        }
    }

    /// Order of the Weyl group from the product formula.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::G => 12,
            Family::F => 1152,
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// The group whose maximal torus has this coroot lattice.
    pub fn group_name(&self) -> String {
        let n = self.rank;
        match self.family {
            Family::A => format!("SU({})", n + 1),
            Family::B => format!("Spin({})", 2 * n + 1),
            Family::C => format!("Sp({n})"),
            Family::D => format!("Spin({})", 2 * n),
            Family::E => format!("E_{n}"),
            Family::F => "F_4".into(),
            Family::G => "G_2".into(),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.family, self.rank)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::InvalidType(s.into())),
        }
    }
}

impl FromStr for DynkinType {
    /// Accepts `D4`, `D_4` or `d_4`.
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam: Family = chars
            .next()
            .ok_or_else(|| Error::InvalidType(s.into()))?
            .to_string()
            .parse()?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest.parse().map_err(|_| Error::InvalidType(s.into()))?;
        DynkinType::new(fam, rank)
    }
}

/// Coroot lattice, Cartan matrix and simple reflections of a simple type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub dynkin_type: DynkinType,
    pub rank: usize,
    pub cartan: IntMatrix,
    /// Simple coroots in the ambient lattice `Z^m`, one per node.
    pub simple_coroots: Vec<Vec<i64>>,
    /// Simple reflections acting on the simple-coroot basis.
    pub weyl_generators: Vec<IntMatrix>,
}

impl RootDatum {
    pub fn label(&self) -> String {
        self.dynkin_type.to_string()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_coroots.first().map_or(0, Vec::len)
    }

    /// Matrix whose columns are the simple coroots in the ambient lattice.
    pub fn coroot_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.simple_coroots).expect("coroots have equal length")
    }

    /// Coordinates in the simple-coroot basis of an ambient vector lying in Λ.
    pub fn ambient_to_coroot(&self, v: &[i64]) -> Result<Vec<i64>> {
        let b = self.coroot_matrix();
        if v.len() != b.rows() {
            return Err(Error::Dimension(format!(
                "vector of length {} for ambient dimension {}",
                v.len(),
                b.rows()
            )));
        }
        solve_integer(&b, v)
            .ok_or_else(|| Error::Dimension(format!("{v:?} is not in the coroot lattice of {}", self.label())))
    }

    /// Squared root lengths `|a_i|^2`, scaled so the shortest is 1.
    pub fn root_lengths(&self) -> Vec<i64> {
        root_lengths(&self.cartan)
    }

    /// Weyl-invariant integral form on Λ in the simple-coroot basis.
    pub fn coroot_gram(&self) -> IntMatrix {
        let d = self.root_lengths();
        let big = d.iter().copied().fold(1, crate::intmat::lcm);
        let r = self.rank;
        let mut g = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                // (a_i^v, a_j^v) = 2 (a_i^v, a_j) / |a_j|^2 ∝ cartan[i][j] / d_j
                g[(i, j)] = self.cartan[(i, j)] * (big / d[j]);
            }
        }
        g
    }

    /// All roots in the simple-root basis.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let refl: Vec<IntMatrix> = (0..r)
            .map(|i| {
                let mut s = IntMatrix::identity(r);
                for j in 0..r {
                    s[(i, j)] -= self.cartan[(i, j)];
                }
                s
            })
            .collect();
        let mut seen = std::collections::HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(v) = queue.pop_front() {
            for s in &refl {
                let w = s.mul_vec(&v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// The highest root in the simple-root basis.
    pub fn highest_root(&self) -> Vec<i64> {
        self.roots()
            .into_iter()
            .max_by_key(|v| v.iter().sum::<i64>())
            .expect("root systems are nonempty")
    }

    /// Coefficients of the coroot of the highest root on the simple coroots,
    /// listed by node.
    pub fn highest_coroot_by_node(&self) -> Vec<i64> {
        let theta = self.highest_root();
        let d = self.root_lengths();
        let long = *d.iter().max().expect("rank >= 1");
        theta
            .iter()
            .zip(&d)
            .map(|(&c, &di)| {
                debug_assert_eq!((c * di) % long, 0);
                c * di / long
            })
            .collect()
    }

    /// The longest Weyl element, built by right-multiplying simple
    /// reflections while some simple coroot still maps to a positive one.
    pub fn longest_element(&self) -> IntMatrix {
        let r = self.rank;
        let mut w = IntMatrix::identity(r);
        while let Some(i) = (0..r).find(|&i| w.column(i).iter().all(|&c| c >= 0)) {
            w = &w * &self.weyl_generators[i];
        }
        w
    }

    /// Whether `-1 ∈ W`, i.e. the longest element is `-1`.
    pub fn contains_minus_one(&self) -> bool {
        self.longest_element() == IntMatrix::scalar(self.rank, -1)
    }

    /// Checks `(s_i s_j)^{m_ij} = 1` with the exact Coxeter exponents.
    pub fn satisfies_coxeter_relations(&self) -> bool {
        let r = self.rank;
        for i in 0..r {
            for j in 0..r {
                let m = if i == j {
                    1
                } else {
                    match self.cartan[(i, j)] * self.cartan[(j, i)] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => return false,
                    }
                };
                let prod = &self.weyl_generators[i] * &self.weyl_generators[j];
                if prod.order(12) != Some(m) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn root_lengths(cartan: &IntMatrix) -> Vec<i64> {
    // d_i a_ij = d_j a_ji along the (connected) diagram; keep d as num/den.
    let r = cartan.rows();
    let mut num = vec![0i64; r];
    let mut den = vec![1i64; r];
    num[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..r {
            if j != i && num[j] == 0 && cartan[(i, j)] != 0 {
                num[j] = num[i] * cartan[(i, j)].abs();
                den[j] = den[i] * cartan[(j, i)].abs();
                let g = crate::intmat::gcd(num[j], den[j]);
                num[j] /= g;
                den[j] /= g;
                queue.push_back(j);
            }
        }
    }
    let l = den.iter().copied().fold(1, crate::intmat::lcm);
    let scaled: Vec<i64> = (0..r).map(|i| num[i] * (l / den[i])).collect();
    let g = scaled.iter().copied().fold(0, crate::intmat::gcd);
    scaled.iter().map(|x| x / g).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = unit(n, i);
    v[j] -= 1;
    v
}

fn cartan_from_coroots(coroots: &[Vec<i64>]) -> IntMatrix {
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let r = coroots.len();
    let mut c = IntMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            c[(i, j)] = 2 * dot(&coroots[i], &coroots[j]) / dot(&coroots[j], &coroots[j]);
        }
    }
    c
}

fn simply_laced(r: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut c = IntMatrix::scalar(r, 2);
    for &(i, j) in edges {
        c[(i - 1, j - 1)] = -1;
        c[(j - 1, i - 1)] = -1;
    }
    c
}

/// Simple reflections on the coroot lattice:
/// `s_i(a_j^v) = a_j^v - <a_i, a_j^v> a_i^v`.
pub fn weyl_generators_from_cartan(cartan: &IntMatrix) -> Vec<IntMatrix> {
    let r = cartan.rows();
    (0..r)
        .map(|i| {
            let mut s = IntMatrix::identity(r);
            for j in 0..r {
                s[(i, j)] -= cartan[(j, i)];
            }
            s
        })
        .collect()
}

/// Builds the root datum of a simple type.
///
/// Realizations: `A_{n-1}` as sum-zero vectors in `Z^n`, `B_n` as the
/// even-sum sublattice of `Z^n` (coroots `e_i - e_{i+1}`, `2e_n`), `C_n` as
/// `Z^n` (coroots `e_i - e_{i+1}`, `e_n`), `D_n` as the even-sum sublattice
/// (coroots `e_i - e_{i+1}`, `e_{n-1} + e_n`), `G_2` as the sum-zero plane in
/// `Z^3`, and `F_4`, `E_n` in their own coroot basis.
pub fn build_root_datum(ty: DynkinType) -> RootDatum {
    let n = ty.rank;
    let (coroots, cartan) = match ty.family {
        Family::A => {
            let v: Vec<_> = (0..n).map(|i| diff(n + 1, i, i + 1)).collect();
            let c = cartan_from_coroots(&v);
            (v, c)
        }
        Family::B | Family::C | Family::D => {
            let mut v: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            v.push(match ty.family {
                Family::B => {
                    let mut e = vec![0; n];
                    e[n - 1] = 2;
                    e
                }
                Family::C => unit(n, n - 1),
                _ => {
                    let mut e = vec![0; n];
                    e[n - 2] = 1;
                    e[n - 1] = 1;
                    e
                }
            });
            let c = cartan_from_coroots(&v);
            (v, c)
        }
        Family::G => {
            // a_1 short (long coroot), a_2 long (short coroot)
            let v = vec![vec![-2, 1, 1], vec![1, -1, 0]];
            let c = cartan_from_coroots(&v);
            (v, c)
        }
        Family::F => {
            let c = IntMatrix::from_rows(&[
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ])
            .expect("static");
            ((0..4).map(|i| unit(4, i)).collect(), c)
        }
        Family::E => {
            let mut edges = vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
            if n >= 7 {
                edges.push((6, 7));
            }
            if n == 8 {
                edges.push((7, 8));
            }
            let c = simply_laced(n, &edges);
            ((0..n).map(|i| unit(n, i)).collect(), c)
        }
    };
    let weyl_generators = weyl_generators_from_cartan(&cartan);
    RootDatum {
        dynkin_type: ty,
        rank: n,
        cartan,
        simple_coroots: coroots,
        weyl_generators,
    }
}

/// Parses a label like `E6` and builds its datum.
pub fn root_datum(label: &str) -> Result<RootDatum> {
    Ok(build_root_datum(label.parse()?))
}

/// Coefficients of the highest coroot in the simple-coroot basis, sorted
/// ascending (the order in which the weighted projective weights are listed).
pub fn highest_coroot_coefficients(datum: &RootDatum) -> Vec<i64> {
    let mut v = datum.highest_coroot_by_node();
    v.sort();
    v
}

/// The printed weighted-projective weights `(g_1, …, g_r)`, ascending.
pub fn table1_expected(ty: DynkinType) -> Vec<i64> {
    let r = ty.rank;
    let ones_then_twos = |ones: usize| (0..r).map(|i| if i < ones { 1 } else { 2 }).collect();
    match (ty.family, r) {
        (Family::A | Family::C, _) => vec![1; r],
        (Family::D, _) => ones_then_twos(3),
        (Family::B, _) => ones_then_twos(2),
        (Family::G, _) => vec![1, 2],
        (Family::F, _) => vec![1, 2, 2, 3],
        (Family::E, 6) => vec![1, 1, 2, 2, 2, 3],
        (Family::E, 7) => vec![1, 2, 2, 2, 3, 3, 4],
        (Family::E, _) => vec![2, 2, 3, 3, 4, 4, 5, 6],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub group: String,
    pub dynkin_type: String,
    pub coefficients: Vec<i64>,
    pub expected: Vec<i64>,
    pub matches: bool,
}

pub fn table1_row(ty: DynkinType) -> Table1Row {
    let coefficients = highest_coroot_coefficients(&build_root_datum(ty));
    let expected = table1_expected(ty);
    Table1Row {
        group: ty.group_name(),
        dynkin_type: ty.to_string(),
        matches: coefficients == expected,
        coefficients,
        expected,
    }
}

/// The nine rows, with the classical families instantiated at `rank`
/// (at least 4, so that every family exists).
pub fn table1(rank: usize) -> Result<Vec<Table1Row>> {
    if rank < 4 {
        return Err(Error::InvalidRank {
            ty: "classical".into(),
            rank,
            reason: "table rows need rank >= 4 so that D_n exists",
        });
    }
    let types = [
        DynkinType::new(Family::A, rank)?,
        DynkinType::new(Family::C, rank)?,
        DynkinType::new(Family::D, rank)?,
        DynkinType::new(Family::B, rank)?,
        DynkinType::new(Family::G, 2)?,
        DynkinType::new(Family::F, 4)?,
        DynkinType::new(Family::E, 6)?,
        DynkinType::new(Family::E, 7)?,
        DynkinType::new(Family::E, 8)?,
    ];
    Ok(types.into_iter().map(table1_row).collect())
}

/// Materializes the Weyl group, refusing when its known order exceeds `cap`.
pub fn enumerate_group(datum: &RootDatum, cap: u64) -> Result<WeylGroup> {
    let expected = datum.dynkin_type.weyl_order();
    if expected > cap as u128 {
        return Err(Error::CapExceeded {
            what: format!("enumerating W({})", datum.label()),
            expected,
            cap,
        });
    }
    let g = WeylGroup::generate(datum.rank, datum.weyl_generators.clone(), cap.saturating_add(1))?;
    debug_assert_eq!(g.order() as u128, expected);
    Ok(g)
}

/// Inclusion of Dynkin diagrams and the induced map of coroot lattices.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramEmbedding {
    pub sub: RootDatum,
    pub ambient: RootDatum,
    /// `node_map[i]` is the ambient node receiving sub node `i` (0-based).
    pub node_map: Vec<usize>,
    /// `ambient.rank × sub.rank`, sending simple coroots to simple coroots.
    pub coroot_map: IntMatrix,
}

/// Builds the embedding for a node map (0-based indices). The map must be
/// injective and preserve every Cartan entry (edges, multiplicities, arrows).
pub fn embed_diagram(sub: &RootDatum, ambient: &RootDatum, node_map: &[usize]) -> Result<DiagramEmbedding> {
    let (l, big) = (sub.rank, ambient.rank);
    if node_map.len() != l {
        return Err(Error::NotDiagramMorphism(format!(
            "node map has {} entries for a rank {l} diagram",
            node_map.len()
        )));
    }
    for (i, &a) in node_map.iter().enumerate() {
        if a >= big {
            return Err(Error::NotDiagramMorphism(format!("node {a} out of range")));
        }
        if node_map[..i].contains(&a) {
            return Err(Error::NotDiagramMorphism(format!("node {a} used twice")));
        }
    }
    for i in 0..l {
        for j in 0..l {
            if sub.cartan[(i, j)] != ambient.cartan[(node_map[i], node_map[j])] {
                return Err(Error::NotDiagramMorphism(format!(
                    "Cartan entry ({},{}) = {} maps to {}",
                    i + 1,
                    j + 1,
                    sub.cartan[(i, j)],
                    ambient.cartan[(node_map[i], node_map[j])]
                )));
            }
        }
    }
    let mut map = IntMatrix::zeros(big, l);
    for (i, &a) in node_map.iter().enumerate() {
        map[(a, i)] = 1;
    }
    let emb = DiagramEmbedding {
        sub: sub.clone(),
        ambient: ambient.clone(),
        node_map: node_map.to_vec(),
        coroot_map: map,
    };
    debug_assert!(emb.cokernel_torsion_free());
    debug_assert!(emb.intertwines_generators());
    Ok(emb)
}

impl DiagramEmbedding {
    /// All invariant factors of the coroot map equal one.
    pub fn cokernel_torsion_free(&self) -> bool {
        let s = self.coroot_map.smith();
        s.rank == self.sub.rank && s.diag.iter().all(|&d| d == 1)
    }

    /// `ι ∘ s_i = s_{f(i)} ∘ ι` for every sub node, so `W ⊂ W'`.
    pub fn intertwines_generators(&self) -> bool {
        self.node_map.iter().enumerate().all(|(i, &a)| {
            &self.coroot_map * &self.sub.weyl_generators[i] == &self.ambient.weyl_generators[a] * &self.coroot_map
        })
    }

    /// Image of a sub-lattice group element acting on the ambient lattice
    /// (trivially on the orthogonal complement).
    pub fn ambient_element(&self, word: &[usize]) -> IntMatrix {
        word.iter().fold(IntMatrix::identity(self.ambient.rank), |acc, &i| {
            &acc * &self.ambient.weyl_generators[self.node_map[i]]
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrepantVerdict {
    Admits,
    DoesNotAdmit,
}

/// Whether `(A⊗Λ)/W` admits a crepant resolution: exactly for `SU(n)` and
/// `Sp(n)`, i.e. types `A_n` and `C_n` (and `B_2 = C_2`).
pub fn crepant_classification(ty: DynkinType) -> CrepantVerdict {
    match ty.family {
        Family::A | Family::C => CrepantVerdict::Admits,
        // Spin(5) = Sp(2)
        Family::B if ty.rank == 2 => CrepantVerdict::Admits,
        _ => CrepantVerdict::DoesNotAdmit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dt(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one() {
        let d = build_root_datum(dt("A1"));
        assert_eq!(d.cartan.to_rows(), vec![vec![2]]);
        assert_eq!(d.weyl_generators[0].to_rows(), vec![vec![-1]]);
    }

    #[test]
    fn invalid_labels() {
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("G3".parse::<DynkinType>().is_err());
        assert!("X2".parse::<DynkinType>().is_err());
        assert!("B".parse::<DynkinType>().is_err());
        assert_eq!(
            dt("d_4"),
            DynkinType {
                family: Family::D,
                rank: 4
            }
        );
    }

    #[test]
    fn cartan_matrices_follow_bourbaki() {
        let b3 = build_root_datum(dt("B3"));
        assert_eq!(
            b3.cartan.to_rows(),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
        );
        let c3 = build_root_datum(dt("C3"));
        assert_eq!(
            c3.cartan.to_rows(),
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );
        let g2 = build_root_datum(dt("G2"));
        assert_eq!(g2.cartan.to_rows(), vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(g2.root_lengths(), vec![1, 3]);
        assert_eq!(b3.root_lengths(), vec![2, 2, 1]);
    }

    #[test]
    fn generators_are_involutions_with_coxeter_relations() {
        for label in ["A1", "A4", "B2", "B4", "C3", "D4", "D6", "G2", "F4", "E6", "E7", "E8"] {
            let d = root_datum(label).unwrap();
            for s in &d.weyl_generators {
                assert!((s * s).is_identity(), "{label}");
            }
            assert!(d.satisfies_coxeter_relations(), "{label}");
        }
    }

    #[test]
    fn root_counts() {
        for (label, n) in [
            ("A3", 12),
            ("B3", 18),
            ("C4", 32),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            assert_eq!(root_datum(label).unwrap().roots().len(), n, "{label}");
        }
    }

    #[test]
    fn lattice_descriptions() {
        // B_n: even coordinate sum; D_4: same lattice.
        let b3 = root_datum("B3").unwrap();
        assert!(b3.ambient_to_coroot(&[1, 1, 0]).is_ok());
        assert!(b3.ambient_to_coroot(&[2, 0, 0]).is_ok());
        assert!(b3.ambient_to_coroot(&[1, 0, 0]).is_err());
        let d4 = root_datum("D4").unwrap();
        assert!(d4.ambient_to_coroot(&[1, 1, 1, 1]).is_ok());
        assert!(d4.ambient_to_coroot(&[1, 0, 0, 1]).is_ok());
        assert!(d4.ambient_to_coroot(&[1, 0, 0, 0]).is_err());
        let snf = d4.coroot_matrix().smith();
        // index 2 in Z^4
        assert_eq!(snf.diag.iter().product::<i64>(), 2);
        let g2 = root_datum("G2").unwrap();
        assert_eq!(g2.ambient_to_coroot(&[1, -1, 0]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn gram_is_invariant() {
        for label in ["B3", "G2", "F4", "C3", "E6"] {
            let d = root_datum(label).unwrap();
            let g = d.coroot_gram();
            assert_eq!(g, g.transpose(), "{label}");
            for s in &d.weyl_generators {
                assert_eq!(&(&s.transpose() * &g) * s, g, "{label}");
            }
        }
    }

    #[test]
    fn small_group_orders() {
        let a2 = enumerate_group(&root_datum("A2").unwrap(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.conjugacy_classes().len(), 3);
        let g2 = enumerate_group(&root_datum("G2").unwrap(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(g2.order(), 12);
    }

    #[test]
    fn e8_enumeration_refused() {
        let err = enumerate_group(&root_datum("E8").unwrap(), DEFAULT_ENUMERATION_CAP).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("696729600"), "{msg}");
    }

    #[test]
    fn embedding_rejects_non_morphisms() {
        let d4 = root_datum("D4").unwrap();
        let d5 = root_datum("D5").unwrap();
        // The first four D_5 nodes form an A_4 chain.
        assert!(embed_diagram(&d4, &d5, &[0, 1, 2, 3]).is_err());
        assert!(embed_diagram(&d4, &d5, &[1, 2, 3, 4]).is_ok());
        let b3 = root_datum("B3").unwrap();
        let f4 = root_datum("F4").unwrap();
        // arrow reversed: C_3 sits on nodes 4,3,2
        assert!(embed_diagram(&b3, &f4, &[3, 2, 1]).is_err());
        assert!(embed_diagram(&b3, &f4, &[0, 1, 2]).is_ok());
        assert!(embed_diagram(&b3, &f4, &[0, 0, 2]).is_err());
    }

    #[test]
    fn table1_rows() {
        for rank in 4..=9 {
            let rows = table1(rank).unwrap();
            assert_eq!(rows.len(), 9);
            assert!(rows.iter().all(|r| r.matches), "{rows:?}");
        }
        assert_eq!(table1_row(dt("E8")).coefficients, vec![2, 2, 3, 3, 4, 4, 5, 6]);
        assert_eq!(table1_row(dt("B2")).coefficients, vec![1, 1]);
        assert!(table1(3).is_err());
    }

    #[test]
    fn minus_one_via_longest_element() {
        for (label, minus) in [
            ("A1", true),
            ("A2", false),
            ("A3", false),
            ("B3", true),
            ("C4", true),
            ("D4", true),
            ("D5", false),
            ("E6", false),
            ("E7", true),
            ("E8", true),
            ("F4", true),
            ("G2", true),
        ] {
            assert_eq!(root_datum(label).unwrap().contains_minus_one(), minus, "{label}");
        }
        // agrees with enumeration where the group is small
        for label in ["A2", "B3", "D4", "D5", "G2", "F4"] {
            let d = root_datum(label).unwrap();
            let g = enumerate_group(&d, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(g.contains(&IntMatrix::scalar(d.rank, -1)), d.contains_minus_one());
        }
    }

    #[test]
    fn crepant_types() {
        assert_eq!(crepant_classification(dt("A5")), CrepantVerdict::Admits);
        assert_eq!(crepant_classification(dt("C3")), CrepantVerdict::Admits);
        assert_eq!(crepant_classification(dt("G2")), CrepantVerdict::DoesNotAdmit);
        assert_eq!(crepant_classification(dt("B3")), CrepantVerdict::DoesNotAdmit);
        assert_eq!(crepant_classification(dt("B2")), CrepantVerdict::Admits);
    }

    #[test]
    fn json_roundtrip() {
        let d = root_datum("F4").unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: RootDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
