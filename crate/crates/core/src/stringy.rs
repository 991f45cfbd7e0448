//! Stringy Hodge polynomials of `(A ⊗ Λ)/H` for a finite group `H` of
//! integer matrices acting on a lattice `Λ`, and the closed forms they are
//! compared against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{ElemId, MatrixGroup};
use crate::hodge::{goettsche, partitions, sym_powers_upto, BigradedPoly, HodgeEntry, StandardSurface};
use crate::intmat::IntMatrix;
use crate::rootdata::{enumerate_group, root_datum, RootDatum};

/// Default bound on `|H|` for the stringy engine.
pub const DEFAULT_ENGINE_CAP: u64 = 100_000;

/// A finite group of unimodular matrices acting on `Z^rank`.
#[derive(Debug)]
pub struct LatticeAction {
    pub label: String,
    pub rank: usize,
    pub group: MatrixGroup,
}

impl LatticeAction {
    pub fn new(label: impl Into<String>, rank: usize, generators: Vec<IntMatrix>, cap: u64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Dimension("lattice of rank 0".into()));
        }
        Ok(LatticeAction {
            label: label.into(),
            rank,
            group: MatrixGroup::generate(rank, generators, cap)?,
        })
    }

    /// The Weyl group acting on the coroot lattice.
    pub fn from_root_datum(datum: &RootDatum, cap: u64) -> Result<Self> {
        Ok(LatticeAction {
            label: format!("W({}) on coroot lattice", datum.label()),
            rank: datum.rank,
            group: enumerate_group(datum, cap)?,
        })
    }

    /// Accepts either a root datum document or a bare list of generator matrices.
    pub fn from_json(text: &str, cap: u64) -> Result<Self> {
        if let Ok(datum) = serde_json::from_str::<RootDatum>(text) {
            return Self::from_root_datum(&datum, cap);
        }
        let gens: Vec<IntMatrix> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("lattice action JSON: {e}")))?;
        let rank = gens
            .first()
            .map(IntMatrix::rows)
            .ok_or_else(|| Error::Parse("empty generator list".into()))?;
        Self::new("custom", rank, gens, cap)
    }

    /// Signed permutations of `Z^n`: `S_n ⋉ {±1}^n`, the Weyl group of `C_n`.
    pub fn hyperoctahedral(n: usize, cap: u64) -> Result<Self> {
        let mut gens = symmetric_generators(n);
        let mut neg = IntMatrix::identity(n);
        neg[(n - 1, n - 1)] = -1;
        gens.push(neg);
        Self::new(format!("S_{n} wreath ±1 on Z^{n}"), n, gens, cap)
    }

    /// Coordinate permutations of `Z^n`.
    pub fn symmetric(n: usize, cap: u64) -> Result<Self> {
        Self::new(format!("S_{n} on Z^{n}"), n, symmetric_generators(n), cap)
    }

    /// The trivial group on `Z^r`.
    pub fn trivial(r: usize) -> Result<Self> {
        Self::new(format!("trivial on Z^{r}"), r, Vec::new(), 1)
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// `(A ⊗ Λ)` has complex dimension `2r`.
    pub fn complex_dim(&self) -> usize {
        2 * self.rank
    }
}

fn symmetric_generators(n: usize) -> Vec<IntMatrix> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = IntMatrix::identity(n);
            m[(i, i)] = 0;
            m[(i + 1, i + 1)] = 0;
            m[(i, i + 1)] = 1;
            m[(i + 1, i)] = 1;
            m
        })
        .collect()
}

/// Fixed locus of `g` on `A ⊗ Λ`: a union of translates of the subtorus
/// `A ⊗ ker(g - 1)` indexed by `Γ^4`, `Γ = torsion coker(g - 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct FixedLocusData {
    pub g: IntMatrix,
    pub kernel_rank: usize,
    /// Saturated basis of `ker(g - 1)` as columns.
    pub kernel_basis: IntMatrix,
    /// Invariant factors of `Γ` (all greater than one).
    pub invariant_factors: Vec<i64>,
    /// `|Γ|^4`, the number of components.
    pub component_count: u128,
    /// Fermion shift `r - k`.
    pub shift: usize,
}

pub fn fixed_locus(g: &IntMatrix) -> FixedLocusData {
    let r = g.rows();
    let m = g - &IntMatrix::identity(r);
    let snf = m.smith();
    let t = snf.torsion_order();
    FixedLocusData {
        g: g.clone(),
        kernel_rank: r - snf.rank,
        kernel_basis: snf.kernel_basis(),
        invariant_factors: snf.torsion(),
        component_count: t.pow(4),
        shift: snf.rank,
    }
}

/// Twisted-sector data in the coordinates `y = Q^{-1} x` adapted to `g - 1`.
struct Sector {
    q: IntMatrix,
    q_inv: IntMatrix,
    rank: usize,
    /// Smith diagonal on the first `rank` coordinates (ones included).
    diag: Vec<i64>,
}

impl Sector {
    fn new(g: &IntMatrix) -> Self {
        let r = g.rows();
        let snf = (g - &IntMatrix::identity(r)).smith();
        Sector {
            q: snf.right,
            q_inv: snf.right_inv,
            rank: snf.rank,
            diag: snf.diag[..snf.rank].to_vec(),
        }
    }

    fn adapted(&self, h: &IntMatrix) -> IntMatrix {
        &(&self.q_inv * h) * &self.q
    }

    /// Restriction of `T = Q^{-1} h Q` to the kernel coordinates.
    fn kernel_block(&self, t: &IntMatrix) -> IntMatrix {
        let r = t.rows();
        let ker: Vec<usize> = (self.rank..r).collect();
        t.submatrix(&ker, &ker)
    }

    /// Number of points of `Γ = ⊕ Z/d_i` fixed by `y ↦ T y mod 1`.
    fn fixed_in_gamma(&self, t: &IntMatrix) -> u64 {
        let idx: Vec<usize> = (0..self.rank).filter(|&i| self.diag[i] > 1).collect();
        if idx.is_empty() {
            return 1;
        }
        let d: Vec<i64> = idx.iter().map(|&i| self.diag[i]).collect();
        let l = d.iter().copied().fold(1, crate::intmat::lcm);
        let mut a = vec![0i64; idx.len()];
        let mut count = 0;
        loop {
            // y_i = a_i / d_i; (T y)_j must equal y_j mod 1
            let fixed = idx.iter().enumerate().all(|(jj, &j)| {
                let num: i64 = idx
                    .iter()
                    .enumerate()
                    .map(|(ii, &i)| t[(j, i)] * a[ii] * (l / d[ii]))
                    .sum();
                (num - a[jj] * (l / d[jj])).rem_euclid(l) == 0
            });
            if fixed {
                count += 1;
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == a.len() {
                    return count;
                }
                a[pos] += 1;
                if a[pos] < d[pos] {
                    break;
                }
                a[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Contribution of one conjugacy class, before and after the shift.
#[derive(Clone, Debug, Serialize)]
pub struct SectorReport {
    pub representative: IntMatrix,
    pub class_size: usize,
    pub centralizer_order: usize,
    pub kernel_rank: usize,
    pub invariant_factors: Vec<i64>,
    pub shift: usize,
    /// `h(X^g / C(g))`
    pub quotient_hodge: BigradedPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct StringyResult {
    pub label: String,
    pub rank: usize,
    pub group_order: u64,
    pub hodge: BigradedPoly,
    pub sectors: Vec<SectorReport>,
}

/// `Σ_{[g]} (xy)^{F^g} h(X^g / C(g))`, the invariant cohomology of each
/// sector obtained by averaging over the centralizer:
/// `h(X^g/C(g)) = (1/|C|) Σ_{h ∈ C} |Γ^h|^4 det(1 + xR_h)^2 det(1 + yR_h)^2`,
/// `R_h` the linear part of `h` on `ker(g - 1)`.
pub fn stringy_hodge(action: &LatticeAction, exec: Exec) -> Result<StringyResult> {
    let group = &action.group;
    let classes = group.conjugacy_classes();
    let sectors = exec.map_range(classes.len(), |ci| sector_contribution(group, ci, exec));
    let sectors: Vec<SectorReport> = sectors.into_iter().collect::<Result<_>>()?;
    let hodge = sectors.iter().map(|s| s.quotient_hodge.shift(s.shift as u32)).sum();
    Ok(StringyResult {
        label: action.label.clone(),
        rank: action.rank,
        group_order: group.order(),
        hodge,
        sectors,
    })
}

fn sector_contribution(group: &MatrixGroup, ci: usize, exec: Exec) -> Result<SectorReport> {
    let class = &group.conjugacy_classes()[ci];
    let g = group.element(class.representative);
    let sector = Sector::new(&g);
    let r = g.rows();
    let k = r - sector.rank;
    let side = 2 * k + 1;
    let cent = group.centralizer(class.representative, exec);
    debug_assert_eq!(cent.len(), class.centralizer_order);

    let acc = exec.fold_range(
        cent.len(),
        || vec![0i128; side * side],
        |mut acc, idx| {
            let t = sector.adapted(&group.element(cent[idx]));
            let fix = sector.fixed_in_gamma(&t) as i128;
            let w = fix.pow(4);
            let a = sector.kernel_block(&t).det_one_plus();
            let a2 = poly_square(&a);
            for (p, ap) in a2.iter().enumerate() {
                for (q, aq) in a2.iter().enumerate() {
                    acc[p * side + q] += w * ap * aq;
                }
            }
            acc
        },
        |mut x, y| {
            for (a, b) in x.iter_mut().zip(y) {
                *a += b;
            }
            x
        },
    );
    let n = cent.len() as i128;
    let mut quotient = BigradedPoly::zero();
    for p in 0..side {
        for q in 0..side {
            let v = acc[p * side + q];
            if v % n != 0 {
                return Err(Error::NonIntegralAverage { sector: ci, p, q });
            }
            quotient.add_term(p as u32, q as u32, (v / n).into());
        }
    }
    Ok(SectorReport {
        representative: g,
        class_size: class.size,
        centralizer_order: cent.len(),
        kernel_rank: k,
        invariant_factors: sector.diag.iter().copied().filter(|&d| d > 1).collect(),
        shift: sector.rank,
        quotient_hodge: quotient,
    })
}

fn poly_square(a: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; 2 * a.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in a.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Closed form for the signed-permutation action on `Z^n`:
/// `Σ_{α ⊢ n} Σ_{α_i = α_i^+ + α_i^-} (xy)^{n - |α^+|} ∏_i Sym^{α_i^+} h(K) · Sym^{α_i^-} h(A_2)`.
pub fn wreath_closed_form(n: u32) -> BigradedPoly {
    let sk = sym_powers_upto(&StandardSurface::Kummer.hodge(), n);
    let s2 = sym_powers_upto(&StandardSurface::TwoTorsion.hodge(), n);
    let mut total = BigradedPoly::zero();
    for alpha in partitions(n) {
        // split each multiplicity α_i into (α_i^+, α_i^-), tracking |α^+|
        let mut terms: Vec<(u32, BigradedPoly)> = vec![(0, BigradedPoly::one())];
        for &a in &alpha.multiplicities {
            if a == 0 {
                continue;
            }
            let mut next = Vec::new();
            for (plus, poly) in &terms {
                for ap in 0..=a {
                    let f = &sk[ap as usize] * &s2[(a - ap) as usize];
                    next.push((plus + ap, poly * &f));
                }
            }
            terms = next;
        }
        for (plus, poly) in terms {
            total += &(&poly * &BigradedPoly::xy_pow(n - plus));
        }
    }
    total
}

/// `(1/|H|) Σ_{gh = hg} e(X^g ∩ X^h)`, summed literally over commuting pairs.
pub fn stringy_euler_commuting_pairs(action: &LatticeAction, exec: Exec) -> Result<i128> {
    let group = &action.group;
    let n = group.len();
    let total = exec.fold_range(
        n,
        || 0i128,
        |acc, gi| {
            let g = group.element(gi);
            let mut s = acc;
            for hi in 0..n {
                if group.commute(gi as ElemId, hi) {
                    s += joint_fixed_euler(&g, &group.element(hi));
                }
            }
            s
        },
        |a, b| a + b,
    );
    if total % n as i128 != 0 {
        return Err(Error::NonIntegralAverage { sector: 0, p: 0, q: 0 });
    }
    Ok(total / n as i128)
}

/// Euler number of `X^g ∩ X^h`: `|torsion|^4` when the joint kernel is zero,
/// zero otherwise (a positive-dimensional torus component).
fn joint_fixed_euler(g: &IntMatrix, h: &IntMatrix) -> i128 {
    let r = g.rows();
    let id = IntMatrix::identity(r);
    let stacked = (g - &id).vstack(&(h - &id));
    let snf = stacked.smith();
    if snf.rank < r {
        0
    } else {
        (snf.torsion_order() as i128).pow(4)
    }
}

/// Structural checks every engine output must pass.
#[derive(Clone, Debug, Serialize)]
pub struct EngineChecks {
    pub hodge_symmetric: bool,
    pub centrally_symmetric: bool,
    pub nonnegative: bool,
}

impl EngineChecks {
    pub fn of(result: &StringyResult) -> Self {
        EngineChecks {
            hodge_symmetric: result.hodge.is_hodge_symmetric(),
            centrally_symmetric: result.hodge.is_centrally_symmetric(result.rank as u32),
            nonnegative: result.hodge.has_nonnegative_coeffs(),
        }
    }

    pub fn all(&self) -> bool {
        self.hodge_symmetric && self.centrally_symmetric && self.nonnegative
    }
}

/// A labelled polynomial in a report.
#[derive(Clone, Debug, Serialize)]
pub struct NamedPoly {
    pub route: String,
    pub polynomial: String,
    pub diamond: Vec<HodgeEntry>,
    pub euler: String,
}

impl NamedPoly {
    pub fn new(route: &str, p: &BigradedPoly) -> Self {
        NamedPoly {
            route: route.into(),
            polynomial: p.to_string(),
            diamond: p.diamond_entries(),
            euler: p.euler().to_string(),
        }
    }
}

/// Coefficientwise differences `(p, q, left, right)`.
pub fn poly_diff(a: &BigradedPoly, b: &BigradedPoly) -> Vec<(u32, u32, String, String)> {
    let mut keys: Vec<(u32, u32)> = a.terms().map(|(p, q, _)| (p, q)).collect();
    keys.extend(b.terms().map(|(p, q, _)| (p, q)));
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|&(p, q)| a.coeff(p, q) != b.coeff(p, q))
        .map(|(p, q)| (p, q, a.coeff(p, q).to_string(), b.coeff(p, q).to_string()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub equal: bool,
    pub diff: Vec<(u32, u32, String, String)>,
}

fn compare(left: &str, a: &BigradedPoly, right: &str, b: &BigradedPoly) -> Comparison {
    let diff = poly_diff(a, b);
    Comparison {
        left: left.into(),
        right: right.into(),
        equal: diff.is_empty(),
        diff,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub n: u32,
    pub polynomials: Vec<NamedPoly>,
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_checks: Option<EngineChecks>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commuting_pairs_euler: Option<String>,
    pub verdict: bool,
}

impl VerificationReport {
    fn finish(mut self) -> Self {
        self.verdict =
            self.comparisons.iter().all(|c| c.equal) && self.engine_checks.as_ref().is_none_or(EngineChecks::all);
        self
    }
}

/// Engine on signed permutations vs. closed form vs. the Hilbert scheme of the
/// Kummer K3. The engine route runs while `2^n n! ≤ engine_cap`.
pub fn verify_sp(n: u32, engine_cap: u64, exec: Exec) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Dimension("n must be positive".into()));
    }
    let closed = wreath_closed_form(n);
    let hilb = goettsche(&StandardSurface::K3.hodge(), n);
    let mut polys = vec![
        NamedPoly::new("closed_form", &closed),
        NamedPoly::new("goettsche", &hilb),
    ];
    let mut comps = vec![compare("closed_form", &closed, "goettsche", &hilb)];
    let order = (1..=n as u128).product::<u128>() << n;
    let mut checks = None;
    if order <= engine_cap as u128 {
        let action = LatticeAction::hyperoctahedral(n as usize, engine_cap)?;
        let res = stringy_hodge(&action, exec)?;
        comps.insert(0, compare("engine", &res.hodge, "closed_form", &closed));
        comps.push(compare("engine", &res.hodge, "goettsche", &hilb));
        polys.insert(0, NamedPoly::new("engine", &res.hodge));
        checks = Some(EngineChecks::of(&res));
    }
    Ok(VerificationReport {
        check: "sp".into(),
        n,
        polynomials: polys,
        comparisons: comps,
        engine_checks: checks,
        commuting_pairs_euler: None,
        verdict: false,
    }
    .finish())
}

/// Engine on the `A_{n-1}` coroot lattice with `S_n`; the case `n = 2` is the
/// Kummer K3 and every case is checked against the commuting-pairs Euler number.
pub fn verify_su(n: u32, engine_cap: u64, exec: Exec) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::Dimension("SU(n) needs n >= 2".into()));
    }
    let datum = root_datum(&format!("A{}", n - 1))?;
    let action = LatticeAction::from_root_datum(&datum, engine_cap)?;
    let res = stringy_hodge(&action, exec)?;
    let euler = stringy_euler_commuting_pairs(&action, exec)?;
    let mut comps = Vec::new();
    let mut polys = vec![NamedPoly::new("engine", &res.hodge)];
    if n == 2 {
        let k3 = StandardSurface::K3.hodge();
        comps.push(compare("engine", &res.hodge, "kummer_k3", &k3));
        polys.push(NamedPoly::new("kummer_k3", &k3));
    }
    let e = BigradedPoly::constant(euler);
    comps.push(compare(
        "engine_euler",
        &BigradedPoly::constant(res.hodge.euler()),
        "commuting_pairs",
        &e,
    ));
    Ok(VerificationReport {
        check: "su".into(),
        n,
        polynomials: polys,
        comparisons: comps,
        engine_checks: Some(EngineChecks::of(&res)),
        commuting_pairs_euler: Some(euler.to_string()),
        verdict: false,
    }
    .finish())
}

/// Engine on `Z^n` with `S_n` against the Hilbert scheme of the abelian surface.
pub fn verify_un(n: u32, engine_cap: u64, exec: Exec) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Dimension("n must be positive".into()));
    }
    let action = LatticeAction::symmetric(n as usize, engine_cap)?;
    let res = stringy_hodge(&action, exec)?;
    let hilb = goettsche(&StandardSurface::Abelian.hodge(), n);
    Ok(VerificationReport {
        check: "un".into(),
        n,
        polynomials: vec![NamedPoly::new("engine", &res.hodge), NamedPoly::new("goettsche", &hilb)],
        comparisons: vec![compare("engine", &res.hodge, "goettsche", &hilb)],
        engine_checks: Some(EngineChecks::of(&res)),
        commuting_pairs_euler: None,
        verdict: false,
    }
    .finish())
}

/// Serializable description of an action, for reports.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionSummary {
    pub label: String,
    pub rank: usize,
    pub order: u64,
    pub classes: usize,
}

impl From<&LatticeAction> for ActionSummary {
    fn from(a: &LatticeAction) -> Self {
        ActionSummary {
            label: a.label.clone(),
            rank: a.rank,
            order: a.order(),
            classes: a.group.conjugacy_classes().len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn k3() -> BigradedPoly {
        StandardSurface::K3.hodge()
    }

    /// Orbit route: enumerate components `Γ^4` explicitly, split them into
    /// centralizer orbits, and average over each orbit stabilizer.
    fn stringy_by_orbits(action: &LatticeAction) -> BigradedPoly {
        let group = &action.group;
        let mut total = BigradedPoly::zero();
        for class in group.conjugacy_classes() {
            let g = group.element(class.representative);
            let sector = Sector::new(&g);
            let tors: Vec<usize> = (0..sector.rank).filter(|&i| sector.diag[i] > 1).collect();
            let d: Vec<i64> = tors.iter().map(|&i| sector.diag[i]).collect();
            let l = d.iter().copied().fold(1, crate::intmat::lcm);
            let cent: Vec<IntMatrix> = group
                .centralizer(class.representative, Exec::Sequential)
                .into_iter()
                .map(|h| sector.adapted(&group.element(h)))
                .collect();
            // components: 4 copies of Γ, element = vector of numerators
            let mut comps: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..4 {
                for &di in &d {
                    comps = comps
                        .into_iter()
                        .flat_map(|c| {
                            (0..di).map(move |a| {
                                let mut c = c.clone();
                                c.push(a);
                                c
                            })
                        })
                        .collect();
                }
            }
            let act = |t: &IntMatrix, c: &[i64]| -> Vec<i64> {
                let m = d.len();
                let mut out = Vec::with_capacity(c.len());
                for f in 0..4 {
                    let block = &c[f * m..(f + 1) * m];
                    for (jj, &j) in tors.iter().enumerate() {
                        let num: i64 = tors
                            .iter()
                            .enumerate()
                            .map(|(ii, &i)| t[(j, i)] * block[ii] * (l / d[ii]))
                            .sum();
                        out.push(num.rem_euclid(l) / (l / d[jj]));
                    }
                }
                out
            };
            let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
            let mut quotient = BigradedPoly::zero();
            for c in &comps {
                if seen.contains_key(c) {
                    continue;
                }
                let mut stab = Vec::new();
                for t in &cent {
                    let img = act(t, c);
                    if img == *c {
                        stab.push(t);
                    }
                    seen.insert(img, ());
                }
                let mut sum = BigradedPoly::zero();
                for t in &stab {
                    let a = sector.kernel_block(t).det_one_plus();
                    let px = BigradedPoly::from_terms(a.iter().enumerate().map(|(i, &v)| (i as u32, 0, v as i64)));
                    let py = BigradedPoly::from_terms(a.iter().enumerate().map(|(i, &v)| (0, i as u32, v as i64)));
                    sum += &(&(&px * &px) * &(&py * &py));
                }
                for (p, q, v) in sum.terms() {
                    let s = v / stab.len() as i64;
                    assert_eq!(&s * stab.len() as i64, *v, "orbit average not integral");
                    quotient.add_term(p, q, s);
                }
            }
            total += &quotient.shift(sector.rank as u32);
        }
        total
    }

    #[test]
    fn fixed_locus_examples() {
        let id = fixed_locus(&IntMatrix::identity(3));
        assert_eq!((id.kernel_rank, id.shift, id.component_count), (3, 0, 1));
        let neg = fixed_locus(&IntMatrix::scalar(1, -1));
        assert_eq!((neg.kernel_rank, neg.shift, neg.component_count), (0, 1, 16));
        assert_eq!(neg.invariant_factors, vec![2]);
        for i in 1..=5usize {
            // negative i-cycle: e_0 -> e_1 -> ... -> e_{i-1} -> -e_0
            let mut m = IntMatrix::zeros(i, i);
            for j in 0..i - 1 {
                m[(j + 1, j)] = 1;
            }
            m[(0, i - 1)] = -1;
            let f = fixed_locus(&m);
            assert_eq!((f.shift, f.component_count), (i, 16), "i = {i}");
            let pos = {
                let mut p = m.clone();
                p[(0, i - 1)] = 1;
                fixed_locus(&p)
            };
            assert_eq!((pos.shift, pos.component_count, pos.kernel_rank), (i - 1, 1, 1));
        }
    }

    #[test]
    fn kummer_from_sign_action() {
        let a = LatticeAction::hyperoctahedral(1, 10).unwrap();
        assert_eq!(stringy_hodge(&a, Exec::Sequential).unwrap().hodge, k3());
        let a1 = LatticeAction::from_root_datum(&root_datum("A1").unwrap(), 10).unwrap();
        assert_eq!(stringy_hodge(&a1, Exec::Sequential).unwrap().hodge, k3());
    }

    #[test]
    fn trivial_group_gives_torus() {
        for r in 1..=3 {
            let res = stringy_hodge(&LatticeAction::trivial(r).unwrap(), Exec::Sequential).unwrap();
            let a = StandardSurface::Abelian.hodge();
            let expect = (0..r).fold(BigradedPoly::one(), |acc, _| &acc * &a);
            assert_eq!(res.hodge, expect);
        }
    }

    #[test]
    fn wreath_closed_form_small() {
        assert_eq!(wreath_closed_form(1), k3());
        assert_eq!(wreath_closed_form(2), goettsche(&k3(), 2));
    }

    #[test]
    fn engine_matches_orbit_route() {
        let actions = vec![
            LatticeAction::hyperoctahedral(2, 1000).unwrap(),
            LatticeAction::hyperoctahedral(3, 1000).unwrap(),
            LatticeAction::symmetric(3, 1000).unwrap(),
            LatticeAction::from_root_datum(&root_datum("A2").unwrap(), 1000).unwrap(),
            LatticeAction::from_root_datum(&root_datum("G2").unwrap(), 1000).unwrap(),
            LatticeAction::from_root_datum(&root_datum("B2").unwrap(), 1000).unwrap(),
        ];
        for a in &actions {
            let engine = stringy_hodge(a, Exec::Sequential).unwrap().hodge;
            assert_eq!(engine, stringy_by_orbits(a), "{}", a.label);
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = LatticeAction::from_root_datum(&root_datum("B3").unwrap(), 1000).unwrap();
        let s = stringy_hodge(&a, Exec::Sequential).unwrap().hodge;
        let p = stringy_hodge(&a, Exec::Parallel).unwrap().hodge;
        assert_eq!(s, p);
        assert_eq!(
            stringy_euler_commuting_pairs(&a, Exec::Sequential).unwrap(),
            stringy_euler_commuting_pairs(&a, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn commuting_pairs_examples() {
        assert_eq!(
            stringy_euler_commuting_pairs(&LatticeAction::trivial(2).unwrap(), Exec::Sequential).unwrap(),
            0
        );
        let sign = LatticeAction::hyperoctahedral(1, 10).unwrap();
        assert_eq!(stringy_euler_commuting_pairs(&sign, Exec::Sequential).unwrap(), 24);
        let a2 = LatticeAction::from_root_datum(&root_datum("A2").unwrap(), 10).unwrap();
        assert_eq!(stringy_euler_commuting_pairs(&a2, Exec::Sequential).unwrap(), 108);
    }

    #[test]
    fn from_json_routes() {
        let a = LatticeAction::from_json("[[[-1]]]", 10).unwrap();
        assert_eq!(a.order(), 2);
        let d = serde_json::to_string(&root_datum("G2").unwrap()).unwrap();
        assert_eq!(LatticeAction::from_json(&d, 100).unwrap().order(), 12);
        assert!(LatticeAction::from_json("{}", 10).is_err());
    }

    #[test]
    fn verify_reports() {
        let r = verify_sp(2, DEFAULT_ENGINE_CAP, Exec::default()).unwrap();
        assert!(r.verdict, "{r:?}");
        assert_eq!(r.comparisons.len(), 3);
        let r = verify_su(2, DEFAULT_ENGINE_CAP, Exec::default()).unwrap();
        assert!(r.verdict);
        let r = verify_un(2, DEFAULT_ENGINE_CAP, Exec::default()).unwrap();
        assert!(r.verdict);
    }
}
