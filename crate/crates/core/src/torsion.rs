//! Torsion points of `A ⊗ Λ`, their Weyl stabilizers, the `{±1}` scan and
//! propagation of points along Dynkin diagram inclusions.
//!
//! The abelian surface enters only through its torsion: a point is an
//! `r × 4` array of rationals mod 1, row `i` being the `A`-coefficient of the
//! `i`-th simple coroot with `A ≅ (R/Z)^4`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::MatrixGroup;
use crate::intmat::{left_inverse, IntMatrix};
use crate::rootdata::{enumerate_group, DiagramEmbedding, RootDatum};

pub const DEFAULT_ORBIT_CAP: usize = 5_000_000;
/// Largest number of 2-torsion points a scan visits (`2^{4r}`).
pub const DEFAULT_SCAN_CAP: u64 = 1 << 24;

/// A point of `(Q/Z)^4 ⊗ Λ` in the simple-coroot basis, reduced into `[0,1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorsionPoint {
    coords: Vec<[Rational64; 4]>,
}

fn frac(q: Rational64) -> Rational64 {
    q - q.floor()
}

impl TorsionPoint {
    pub fn new(coords: Vec<[Rational64; 4]>) -> Self {
        TorsionPoint {
            coords: coords.into_iter().map(|row| row.map(frac)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        TorsionPoint {
            coords: vec![[Rational64::zero(); 4]; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[[Rational64; 4]] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(Zero::is_zero)
    }

    /// Order in the group `A ⊗ Λ`: the lcm of all denominators.
    pub fn order(&self) -> i64 {
        self.coords.iter().flatten().fold(1, |l, q| l.lcm(q.denom()))
    }

    pub fn max_denominator(&self) -> i64 {
        self.coords.iter().flatten().map(|q| *q.denom()).max().unwrap_or(1)
    }

    /// Image under a lattice automorphism `w`.
    pub fn act(&self, w: &IntMatrix) -> TorsionPoint {
        let r = self.rank();
        TorsionPoint::new(
            (0..r)
                .map(|i| {
                    std::array::from_fn(|f| (0..r).fold(Rational64::zero(), |s, j| s + self.coords[j][f] * w[(i, j)]))
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &TorsionPoint) -> TorsionPoint {
        TorsionPoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| std::array::from_fn(|f| a[f] + b[f]))
                .collect(),
        )
    }

    /// Image under a lattice map `m: Z^r -> Z^s`.
    pub fn map(&self, m: &IntMatrix) -> TorsionPoint {
        TorsionPoint::new(
            (0..m.rows())
                .map(|i| {
                    std::array::from_fn(|f| {
                        (0..m.cols()).fold(Rational64::zero(), |s, j| s + self.coords[j][f] * m[(i, j)])
                    })
                })
                .collect(),
        )
    }

    /// Numerators over the common denominator `l`.
    fn scaled(&self, l: i64) -> Vec<i64> {
        self.coords
            .iter()
            .flatten()
            .map(|q| q.numer() * (l / q.denom()))
            .collect()
    }

    fn from_scaled(nums: &[i64], l: i64) -> TorsionPoint {
        TorsionPoint::new(
            nums.chunks(4)
                .map(|c| std::array::from_fn(|f| Rational64::new(c[f], l)))
                .collect(),
        )
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.coords
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let coords = rows
            .iter()
            .map(|row| {
                if row.len() != 4 {
                    return Err(Error::Point(format!("expected 4 entries per row, got {}", row.len())));
                }
                let mut out = [Rational64::zero(); 4];
                for (o, s) in out.iter_mut().zip(row) {
                    *o = Rational64::from_str(s.trim()).map_err(|_| Error::Point(format!("bad rational `{s}`")))?;
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(TorsionPoint::new(coords))
    }
}

impl fmt::Display for TorsionPoint {
    /// `(1/2,0,0,0);(0,1/2,0,0)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "({},{},{},{})", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for TorsionPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorsionPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        TorsionPoint::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// Coordinates of a point of `A ⊗ Λ` given in the ambient `A^m`, for a
/// saturated `Λ ⊂ Z^m` (e.g. the sum-zero triples for `G_2`).
pub fn from_ambient(datum: &RootDatum, x: &[[Rational64; 4]]) -> Result<TorsionPoint> {
    let b = datum.coroot_matrix();
    let l = left_inverse(&b)?;
    let ambient = TorsionPoint::new(x.to_vec());
    let p = ambient.map(&l);
    if p.map(&b) != ambient {
        return Err(Error::Point(format!(
            "{ambient} does not lie in A ⊗ Λ({})",
            datum.label()
        )));
    }
    Ok(p)
}

/// Image of `y ∈ A^n` under `A^n = A ⊗ (2Z)^n → A ⊗ Λ`, the presentation
/// used for `B_n` and `D_n` where `(2Z)^n ⊂ Λ ⊂ Z^n`.
pub fn from_doubled_coordinates(datum: &RootDatum, y: &[[Rational64; 4]]) -> Result<TorsionPoint> {
    let n = datum.ambient_dim();
    if y.len() != n {
        return Err(Error::Point(format!("expected {n} entries of A, got {}", y.len())));
    }
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 2;
        cols.push(datum.ambient_to_coroot(&v)?);
    }
    let m = IntMatrix::from_columns(&cols)?;
    Ok(TorsionPoint::new(y.to_vec()).map(&m))
}

/// Ambient image `Σ c_i ⊗ α_i^∨ ∈ A^m`.
pub fn to_ambient(datum: &RootDatum, p: &TorsionPoint) -> TorsionPoint {
    p.map(&datum.coroot_matrix())
}

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Three distinct nonzero 2-torsion points of `A` summing to zero.
pub fn standard_taus() -> [[Rational64; 4]; 3] {
    let h = q(1, 2);
    let z = Rational64::zero();
    [[h, z, z, z], [z, h, z, z], [h, h, z, z]]
}

/// Square roots `τ_i / 2` of [`standard_taus`].
pub fn standard_half_taus() -> [[Rational64; 4]; 3] {
    let f = q(1, 4);
    let z = Rational64::zero();
    [[f, z, z, z], [z, f, z, z], [f, f, z, z]]
}

/// The basic example points: `(τ_1, τ_2, τ_3)` for `G_2`,
/// `(τ_1/2, τ_2/2, τ_3/2)` for `B_3`, `(0, τ_1/2, τ_2/2, τ_3/2)` for `D_4`.
pub fn basic_example_point(datum: &RootDatum) -> Result<TorsionPoint> {
    let z = [Rational64::zero(); 4];
    match datum.label().as_str() {
        "G_2" => from_ambient(datum, &standard_taus()),
        "B_3" => from_doubled_coordinates(datum, &standard_half_taus()),
        "D_4" => {
            let [a, b, c] = standard_half_taus();
            from_doubled_coordinates(datum, &[z, a, b, c])
        }
        other => Err(Error::Point(format!("no basic example for {other}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizerClass {
    Trivial,
    MinusOneLocalModel,
    Other,
}

impl fmt::Display for StabilizerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilizerClass::Trivial => "trivial",
            StabilizerClass::MinusOneLocalModel => "minus_one_local_model",
            StabilizerClass::Other => "other",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub order: u64,
    pub generators: Vec<IntMatrix>,
    pub orbit_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u128>,
    /// `|orbit| · |stabilizer| = |W|` when `|W|` is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_stabilizer_holds: Option<bool>,
    pub full_group: bool,
    pub contains_minus_one: bool,
    pub classification: StabilizerClass,
    pub local_model_label: String,
    /// `C^{2r}/±1` with `r ≥ 2` admits no crepant resolution.
    pub crepant_obstruction: bool,
}

/// The stabilizer as a materialized group, plus its report.
#[derive(Debug)]
pub struct Stabilizer {
    pub group: MatrixGroup,
    pub report: StabilizerReport,
}

fn generator_inverse(g: &IntMatrix) -> IntMatrix {
    let k = g.order(10_000).expect("generators of a finite group have finite order");
    g.pow(k - 1)
}

/// Orbit–stabilizer with Schreier generators; only the orbit is stored.
pub fn stabilizer(
    generators: &[IntMatrix],
    group_order: Option<u128>,
    point: &TorsionPoint,
    orbit_cap: usize,
) -> Result<Stabilizer> {
    let r = point.rank();
    for g in generators {
        if g.rows() != r || g.cols() != r {
            return Err(Error::Dimension(format!(
                "generator is {}x{}, point has rank {r}",
                g.rows(),
                g.cols()
            )));
        }
    }
    let l = point.order();
    let start = point.scaled(l);
    let act = |w: &IntMatrix, v: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; v.len()];
        for i in 0..r {
            for j in 0..r {
                let c = w[(i, j)];
                if c != 0 {
                    for f in 0..4 {
                        out[i * 4 + f] += c * v[j * 4 + f];
                    }
                }
            }
        }
        out.iter_mut().for_each(|x| *x = x.rem_euclid(l));
        out
    };
    let gen_inv: Vec<IntMatrix> = generators.iter().map(generator_inverse).collect();
    let id = IntMatrix::identity(r);
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut orbit: Vec<Vec<i64>> = vec![start.clone()];
    // transversal u_x with u_x · p = x, and its inverse
    let mut trans: Vec<(IntMatrix, IntMatrix)> = vec![(id.clone(), id.clone())];
    index.insert(start, 0);
    let mut schreier: HashSet<IntMatrix> = HashSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (s, s_inv) in generators.iter().zip(&gen_inv) {
            let y = act(s, &orbit[a]);
            match index.get(&y) {
                Some(&b) => {
                    let sg = &(&trans[b].1 * s) * &trans[a].0;
                    if !sg.is_identity() {
                        schreier.insert(sg);
                    }
                }
                None => {
                    if orbit.len() >= orbit_cap {
                        return Err(Error::CapReached {
                            what: "orbit".into(),
                            cap: orbit_cap as u64,
                        });
                    }
                    let b = orbit.len();
                    let u = s * &trans[a].0;
                    let u_inv = &trans[a].1 * s_inv;
                    trans.push((u, u_inv));
                    index.insert(y.clone(), b);
                    orbit.push(y);
                    queue.push_back(b);
                }
            }
        }
    }
    // Build the stabilizer from the distinct Schreier generators, skipping
    // those already generated.
    let mut sorted: Vec<IntMatrix> = schreier.into_iter().collect();
    sorted.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    let cap = group_order.map_or(u64::MAX, |o| o as u64 + 1);
    let mut gens: Vec<IntMatrix> = Vec::new();
    let mut group = MatrixGroup::generate(r, Vec::new(), cap)?;
    for s in sorted {
        if !group.contains(&s) {
            gens.push(s);
            group = MatrixGroup::generate(r, gens.clone(), cap)?;
        }
    }
    let report = classify(&group, gens, orbit.len(), group_order, r);
    Ok(Stabilizer { group, report })
}

fn classify(
    group: &MatrixGroup,
    generators: Vec<IntMatrix>,
    orbit_size: usize,
    group_order: Option<u128>,
    r: usize,
) -> StabilizerReport {
    let order = group.order();
    let minus = group.contains(&IntMatrix::scalar(r, -1));
    let classification = match order {
        1 => StabilizerClass::Trivial,
        2 if minus => StabilizerClass::MinusOneLocalModel,
        _ => StabilizerClass::Other,
    };
    let dim = 2 * r;
    let local_model_label = match classification {
        StabilizerClass::Trivial => format!("C^{dim}"),
        StabilizerClass::MinusOneLocalModel => format!("C^{dim}/±1"),
        StabilizerClass::Other => format!("C^{dim}/W_p, |W_p| = {order}"),
    };
    StabilizerReport {
        order,
        generators,
        orbit_size,
        group_order,
        orbit_stabilizer_holds: group_order.map(|n| orbit_size as u128 * order as u128 == n),
        full_group: orbit_size == 1,
        contains_minus_one: minus,
        classification,
        local_model_label,
        crepant_obstruction: classification == StabilizerClass::MinusOneLocalModel && r >= 2,
    }
}

/// Stabilizer in the Weyl group of a root datum.
pub fn weyl_stabilizer(datum: &RootDatum, point: &TorsionPoint, orbit_cap: usize) -> Result<Stabilizer> {
    if point.rank() != datum.rank {
        return Err(Error::Dimension(format!(
            "point of rank {} for {}",
            point.rank(),
            datum.label()
        )));
    }
    stabilizer(
        &datum.weyl_generators,
        Some(datum.dynkin_type.weyl_order()),
        point,
        orbit_cap,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub point: TorsionPoint,
    pub stabilizer_order: u64,
    pub classification: StabilizerClass,
    pub local_model: String,
    pub crepant_obstruction: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub dynkin_type: String,
    pub denominator_bound: i64,
    pub weyl_order: u128,
    pub contains_minus_one: bool,
    /// Candidate points actually visited.
    pub searched_points: u64,
    /// W-orbits among the visited points.
    pub orbits: u64,
    /// True when the search space exceeded the cap and was truncated.
    pub partial: bool,
    pub points: Vec<ScanEntry>,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub search_cap: u64,
    pub group_cap: u64,
    pub orbit_cap: usize,
    pub exec: Exec,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            search_cap: DEFAULT_SCAN_CAP,
            group_cap: crate::rootdata::DEFAULT_ENUMERATION_CAP,
            orbit_cap: DEFAULT_ORBIT_CAP,
            exec: Exec::default(),
        }
    }
}

/// W-orbit representatives of points with stabilizer exactly `{±1}` and
/// denominators at most `denominator_bound`.
///
/// A point fixed by `-1` satisfies `2p = 0`, so only 2-torsion points
/// (`2^{4r}` of them) are candidates. On these `W` acts through its reduction
/// mod 2 and `-1` acts trivially, so the stabilizer is `{±1}` exactly when the
/// orbit has `|W|/2` elements; each representative is then rechecked with
/// [`weyl_stabilizer`].
pub fn find_minus_one_points(datum: &RootDatum, denominator_bound: i64, opts: ScanOptions) -> Result<ScanResult> {
    if denominator_bound < 1 {
        return Err(Error::Point("denominator bound must be positive".into()));
    }
    let r = datum.rank;
    let order = datum.dynkin_type.weyl_order();
    let minus = enumerate_group(datum, opts.group_cap)?.contains(&IntMatrix::scalar(r, -1));
    let mut result = ScanResult {
        dynkin_type: datum.label(),
        denominator_bound,
        weyl_order: order,
        contains_minus_one: minus,
        searched_points: 0,
        orbits: 0,
        partial: false,
        points: Vec::new(),
    };
    if !minus {
        return Ok(result);
    }
    let bits = 4 * r as u32;
    let total: u64 = if denominator_bound >= 2 {
        1u64.checked_shl(bits).filter(|_| bits < 64).unwrap_or(u64::MAX)
    } else {
        1
    };
    let n = total.min(opts.search_cap);
    result.partial = n < total;
    result.searched_points = n;

    // generator columns mod 2: image of e_j is a mask over the r coordinates
    let cols: Vec<Vec<u64>> = datum
        .weyl_generators
        .iter()
        .map(|w| {
            (0..r)
                .map(|j| {
                    (0..r)
                        .filter(|&i| w[(i, j)].rem_euclid(2) == 1)
                        .fold(0u64, |m, i| m | 1 << i)
                })
                .collect()
        })
        .collect();
    let mask = (1u64 << r) - 1;
    let act = |g: &[u64], code: u64| -> u64 {
        let mut out = 0u64;
        for f in 0..4 {
            let v = (code >> (f * r)) & mask;
            let mut img = 0u64;
            for (j, c) in g.iter().enumerate() {
                if v >> j & 1 == 1 {
                    img ^= c;
                }
            }
            out |= img << (f * r);
        }
        out
    };
    let mut seen = vec![0u64; (n as usize).div_ceil(64)];
    let mark = |seen: &mut Vec<u64>, c: u64| -> bool {
        let (w, b) = ((c / 64) as usize, c % 64);
        let fresh = seen[w] >> b & 1 == 0;
        seen[w] |= 1 << b;
        fresh
    };
    let mut candidates = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if !mark(&mut seen, start) {
            continue;
        }
        result.orbits += 1;
        let mut size: u128 = 1;
        stack.push(start);
        while let Some(c) = stack.pop() {
            for g in &cols {
                let y = act(g, c);
                if y < n && mark(&mut seen, y) {
                    size += 1;
                    stack.push(y);
                }
            }
        }
        if 2 * size == order {
            candidates.push(start);
        }
    }
    let to_point = |code: u64| -> TorsionPoint {
        TorsionPoint::new(
            (0..r)
                .map(|i| std::array::from_fn(|f| q(((code >> (f * r + i)) & 1) as i64, 2)))
                .collect(),
        )
    };
    let checked = opts.exec.map(&candidates, |&c| {
        let p = to_point(c);
        weyl_stabilizer(datum, &p, opts.orbit_cap).map(|s| (p, s.report))
    });
    for item in checked {
        let (p, rep) = item?;
        if rep.classification == StabilizerClass::MinusOneLocalModel {
            result.points.push(ScanEntry {
                point: p,
                stabilizer_order: rep.order,
                classification: rep.classification,
                local_model: rep.local_model_label,
                crepant_obstruction: rep.crepant_obstruction,
            });
        }
    }
    Ok(result)
}

/// CSV rows `representative,stabilizer_order,classification`.
pub fn scan_csv(scan: &ScanResult) -> String {
    let mut out = String::from("representative,stabilizer_order,classification,local_model\n");
    for e in &scan.points {
        out.push_str(&format!(
            "\"{}\",{},{},{}\n",
            e.point, e.stabilizer_order, e.classification, e.local_model
        ));
    }
    out
}

/// Basis (columns) of `N = ι(Λ)^⊥ ∩ Λ'` for the Weyl-invariant form.
pub fn orthogonal_complement(emb: &DiagramEmbedding) -> IntMatrix {
    let g = emb.ambient.coroot_gram();
    let form = &emb.coroot_map.transpose() * &g;
    form.smith().kernel_basis()
}

#[derive(Clone, Debug, Serialize)]
pub struct PropagationReport {
    pub sub: String,
    pub ambient: String,
    pub input_point: TorsionPoint,
    pub sub_stabilizer_order: u64,
    pub translation: TorsionPoint,
    pub point: TorsionPoint,
    pub stabilizer: StabilizerReport,
    /// Equal orders, `ι(Λ)` preserved and restriction lands in `W_p`.
    pub isomorphic: bool,
    pub attempts: usize,
    pub fine_denominator: i64,
    pub local_model: String,
    pub seed: u64,
}

/// `p' = ι(p) + q` with `q` a pseudo-random point of `N ⊗ (1/m)Z^4/Z^4`,
/// retried until `W'_{p'} ≅ W_p`.
pub fn propagate(
    emb: &DiagramEmbedding,
    p: &TorsionPoint,
    fine_denominator: i64,
    seed: u64,
    max_attempts: usize,
    orbit_cap: usize,
) -> Result<PropagationReport> {
    let (l, big) = (emb.sub.rank, emb.ambient.rank);
    if p.rank() != l {
        return Err(Error::Dimension(format!(
            "point of rank {} for {}",
            p.rank(),
            emb.sub.label()
        )));
    }
    if fine_denominator < 2 {
        return Err(Error::Point("fine denominator must be at least 2".into()));
    }
    let sub_stab = weyl_stabilizer(&emb.sub, p, orbit_cap)?;
    let image = p.map(&emb.coroot_map);
    let n_basis = orthogonal_complement(emb);
    let k = n_basis.cols();
    debug_assert_eq!(k, big - l);
    let iota_left = left_inverse(&emb.coroot_map)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::from("no attempts");
    for attempt in 1..=max_attempts {
        let coeffs: Vec<[Rational64; 4]> = (0..k)
            .map(|_| std::array::from_fn(|_| q(rng.gen_range(1..fine_denominator), fine_denominator)))
            .collect();
        let translation = TorsionPoint::new(coeffs).map(&n_basis);
        let candidate = image.add(&translation);
        let stab = weyl_stabilizer(&emb.ambient, &candidate, orbit_cap)?;
        if stab.report.order != sub_stab.report.order {
            last = format!(
                "stabilizer order {} instead of {}",
                stab.report.order, sub_stab.report.order
            );
            continue;
        }
        let restricts = stab.group.elements().all(|s| {
            let si = &s * &emb.coroot_map;
            let back = &iota_left * &si;
            &emb.coroot_map * &back == si && sub_stab.group.contains(&back)
        });
        if !restricts {
            last = "stabilizer does not restrict to W_p".into();
            continue;
        }
        let wp = match sub_stab.report.classification {
            StabilizerClass::MinusOneLocalModel => "±1".to_string(),
            StabilizerClass::Trivial => "1".to_string(),
            StabilizerClass::Other => format!("W_p (order {})", sub_stab.report.order),
        };
        return Ok(PropagationReport {
            sub: emb.sub.label(),
            ambient: emb.ambient.label(),
            input_point: p.clone(),
            sub_stabilizer_order: sub_stab.report.order,
            translation,
            point: candidate,
            stabilizer: stab.report,
            isomorphic: true,
            attempts: attempt,
            fine_denominator,
            local_model: format!("(C^{}/{wp}) × C^{}", 2 * l, 2 * k),
            seed,
        });
    }
    Err(Error::PropagationFailed {
        attempts: max_attempts,
        reason: last,
    })
}

impl TorsionPoint {
    /// `(1/2, …)` style helper for building points from integer numerators.
    pub fn from_numerators(nums: &[[i64; 4]], denom: i64) -> Self {
        let flat: Vec<i64> = nums.iter().flatten().copied().collect();
        TorsionPoint::from_scaled(&flat, denom)
    }

    pub fn is_two_torsion(&self) -> bool {
        self.coords.iter().flatten().all(|q| (*q * 2).is_integer())
    }

    pub fn neg(&self) -> TorsionPoint {
        TorsionPoint::new(self.coords.iter().map(|row| row.map(|x| -x)).collect())
    }
}
