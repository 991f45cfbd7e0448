use std::fmt::Write as _;

use moduli_core::config::{OutputFormat, RunConfig};
use moduli_core::flatf2::{flat_sum_report, spin8_triple_classes, F2Class};
use moduli_core::hilbmatrix::{
    dual, footnote_pair, is_cyclic, module_isomorphic, negate, pair_from_ideal, parse_generators, remark_pair,
    symplectic_exists, MatrixPair,
};
use moduli_core::hodge::{generating_series, series_csv, Specialization, StandardSurface};
use moduli_core::rootdata::{
    build_root_datum, crepant_classification, embed_diagram, root_datum, table1, table1_row, CrepantVerdict,
    DynkinType, Family,
};
use moduli_core::stringy::{
    stringy_euler_commuting_pairs, stringy_hodge, verify_sp, verify_su, verify_un, EngineChecks, LatticeAction,
    VerificationReport,
};
use moduli_core::torsion::{
    basic_example_point, find_minus_one_points, propagate, scan_csv, weyl_stabilizer, ScanOptions, TorsionPoint,
    DEFAULT_ORBIT_CAP,
};
use moduli_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{ActionArg, Command, ExampleArg, MatrixArgs, PropagateArgs, SpecArg, StringyArgs, SurfaceArg};

/// A finished report in all three formats.
pub struct Outcome {
    pub report: Value,
    pub csv: String,
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn new(report: impl Serialize, csv: String, text: String, pass: bool) -> Result<Self> {
        let report = serde_json::to_value(report).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Outcome {
            report,
            csv,
            text,
            pass,
        })
    }

    pub fn render(&self, command: &str, cfg: &RunConfig) -> String {
        let verdict = if self.pass { "pass" } else { "fail" };
        match cfg.output_format {
            OutputFormat::Json => {
                let env = json!({
                    "command": command,
                    "seed": cfg.seed,
                    "config": cfg,
                    "verdict": verdict,
                    "report": self.report,
                });
                let mut s = serde_json::to_string_pretty(&env).expect("values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Csv => format!("# command={command} seed={} verdict={verdict}\n{}", cfg.seed, self.csv),
            OutputFormat::Text => {
                format!("{command} (seed {})\n{}verdict: {verdict}\n", cfg.seed, self.text)
            }
        }
    }
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::Table1 { rank } => run_table1(*rank),
        Command::Stringy(a) => run_stringy(a, cfg),
        Command::VerifySp { n } => verification(verify_sp(*n, cfg.engine_cap, cfg.exec)?),
        Command::VerifySu { n } => verification(verify_su(*n, cfg.engine_cap, cfg.exec)?),
        Command::VerifyUn { n } => verification(verify_un(*n, cfg.engine_cap, cfg.exec)?),
        Command::Series {
            n,
            surface,
            specialization,
        } => run_series(*n, *surface, *specialization),
        Command::TorsionScan { ty, denominator_bound } => run_scan(ty, *denominator_bound, cfg),
        Command::Propagate(a) => run_propagate(a, cfg),
        Command::Matrix(a) => run_matrix(a, cfg),
        Command::Spin8Check { classes } => run_spin8(classes.as_deref()),
        Command::Classify { ty } => run_classify(ty, cfg),
    }
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn run_table1(rank: usize) -> Result<Outcome> {
    let rows = table1(rank)?;
    let mut csv = String::from("group,type,coefficients,expected,matches\n");
    let mut text = String::new();
    for r in &rows {
        let c = tuple(&r.coefficients);
        let _ = writeln!(
            csv,
            "{},{},\"{c}\",\"{}\",{}",
            r.group,
            r.dynkin_type,
            tuple(&r.expected),
            r.matches
        );
        let mark = if r.matches { "ok" } else { "MISMATCH" };
        let _ = writeln!(text, "{:<10} {:<4} {:<22} {mark}", r.group, r.dynkin_type, c);
    }
    let pass = rows.iter().all(|r| r.matches);
    Outcome::new(rows, csv, text, pass)
}

fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run_stringy(a: &StringyArgs, cfg: &RunConfig) -> Result<Outcome> {
    let action = match (&a.ty, a.action, &a.input) {
        (Some(ty), _, _) => LatticeAction::from_root_datum(&root_datum(ty)?, cfg.engine_cap)?,
        (None, Some(ActionArg::Hyperoctahedral), _) => {
            LatticeAction::hyperoctahedral(a.n.expect("clap requires n"), cfg.engine_cap)?
        }
        (None, Some(ActionArg::Symmetric), _) => {
            LatticeAction::symmetric(a.n.expect("clap requires n"), cfg.engine_cap)?
        }
        (None, None, Some(path)) => LatticeAction::from_json(&read_file(path)?, cfg.engine_cap)?,
        (None, None, None) => {
            return Err(Error::Parse(
                "stringy needs --type, --action with --n, or --input".into(),
            ))
        }
    };
    let res = stringy_hodge(&action, cfg.exec)?;
    let checks = EngineChecks::of(&res);
    let euler = res.hodge.euler();
    let pairs = if action.order() <= a.pairs_cap {
        Some(stringy_euler_commuting_pairs(&action, cfg.exec)?)
    } else {
        None
    };
    let euler_ok = pairs.is_none_or(|p| euler == p.into());
    #[derive(Serialize)]
    struct Report<'a> {
        label: &'a str,
        rank: usize,
        group_order: u64,
        polynomial: String,
        hodge: &'a moduli_core::BigradedPoly,
        euler: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        commuting_pairs_euler: Option<String>,
        checks: &'a EngineChecks,
        sectors: &'a [moduli_core::stringy::SectorReport],
    }
    let report = Report {
        label: &res.label,
        rank: res.rank,
        group_order: res.group_order,
        polynomial: res.hodge.to_string(),
        hodge: &res.hodge,
        euler: euler.to_string(),
        commuting_pairs_euler: pairs.map(|p| p.to_string()),
        checks: &checks,
        sectors: &res.sectors,
    };
    let mut csv = String::from("p,q,h\n");
    for e in res.hodge.diamond_entries() {
        let _ = writeln!(csv, "{},{},{}", e.p, e.q, e.h);
    }
    let mut text = format!(
        "{} on Z^{}, |W| = {}, {} sectors\nh_st = {}\ne_st = {euler}\n",
        res.label,
        res.rank,
        res.group_order,
        res.sectors.len(),
        res.hodge
    );
    if let Some(p) = pairs {
        let _ = writeln!(text, "commuting pairs: {p}");
    }
    text.push_str(&res.hodge.text_diamond());
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Outcome::new(report, csv, text, checks.all() && euler_ok)
}

fn verification(r: VerificationReport) -> Result<Outcome> {
    let mut csv = String::from("left,right,equal,differences\n");
    let mut text = String::new();
    for p in &r.polynomials {
        let _ = writeln!(text, "{:<12} {}", p.route, p.polynomial);
    }
    for c in &r.comparisons {
        let _ = writeln!(csv, "{},{},{},{}", c.left, c.right, c.equal, c.diff.len());
        let _ = writeln!(text, "{} == {}: {}", c.left, c.right, c.equal);
    }
    if let Some(e) = &r.commuting_pairs_euler {
        let _ = writeln!(text, "commuting pairs Euler: {e}");
    }
    let pass = r.verdict;
    Outcome::new(r, csv, text, pass)
}

fn run_series(n: u32, surface: SurfaceArg, spec: SpecArg) -> Result<Outcome> {
    let s = match surface {
        SurfaceArg::Abelian => StandardSurface::Abelian,
        SurfaceArg::Kummer => StandardSurface::Kummer,
        SurfaceArg::K3 => StandardSurface::K3,
    };
    let sp = match spec {
        SpecArg::None => Specialization::None,
        SpecArg::Euler => Specialization::Euler,
        SpecArg::Signature => Specialization::Signature,
    };
    let terms = generating_series(&s.hodge(), n, sp);
    let values: Vec<String> = terms.iter().map(ToString::to_string).collect();
    let text: String = values
        .iter()
        .enumerate()
        .map(|(k, v)| format!("q^{k}: {v}\n"))
        .collect();
    let report = json!({
        "surface": s,
        "specialization": sp,
        "n_max": n,
        "coefficients": values,
    });
    Outcome::new(report, series_csv(&terms), text, true)
}

fn run_scan(ty: &str, bound: i64, cfg: &RunConfig) -> Result<Outcome> {
    let datum = root_datum(ty)?;
    let opts = ScanOptions {
        group_cap: cfg.group_order_cap,
        exec: cfg.exec,
        ..ScanOptions::default()
    };
    let res = find_minus_one_points(&datum, bound, opts)?;
    let mut text = format!(
        "{}: |W| = {}, -1 in W: {}, {} points searched, {} orbits\n",
        res.dynkin_type, res.weyl_order, res.contains_minus_one, res.searched_points, res.orbits
    );
    for e in &res.points {
        let _ = writeln!(text, "{}  |W_p| = {}  {}", e.point, e.stabilizer_order, e.local_model);
    }
    let pass = !res.partial;
    let csv = scan_csv(&res);
    Outcome::new(res, csv, text, pass)
}

/// Node maps used when `--nodes` is omitted.
fn default_nodes(sub: DynkinType, ambient: DynkinType) -> Option<Vec<usize>> {
    use Family::*;
    match ((sub.family, sub.rank), (ambient.family, ambient.rank)) {
        ((B, 3), (F, 4)) => Some(vec![0, 1, 2]),
        ((D, 4), (D, 5)) => Some(vec![1, 2, 3, 4]),
        ((D, 4), (E, 6)) => Some(vec![2, 3, 1, 4]),
        ((A, l), (A, m)) if l < m => Some((0..l).collect()),
        _ => None,
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad {what} `{x}`"))))
        .collect()
}

fn parse_point(s: &str) -> Result<TorsionPoint> {
    let rows: Vec<Vec<String>> = s
        .split(';')
        .map(|r| {
            r.trim()
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|x| x.trim().to_string())
                .collect()
        })
        .collect();
    TorsionPoint::from_strings(&rows)
}

fn run_propagate(a: &PropagateArgs, cfg: &RunConfig) -> Result<Outcome> {
    let sub = root_datum(&a.sub)?;
    let ambient = root_datum(&a.ty)?;
    let nodes = match &a.nodes {
        Some(s) => parse_list(s, "node")?,
        None => default_nodes(sub.dynkin_type, ambient.dynkin_type).ok_or_else(|| {
            Error::NotDiagramMorphism(format!(
                "no default node map {} -> {}; pass --nodes",
                sub.label(),
                ambient.label()
            ))
        })?,
    };
    let emb = embed_diagram(&sub, &ambient, &nodes)?;
    let p = match &a.point {
        Some(s) => parse_point(s)?,
        None => basic_example_point(&sub)?,
    };
    let rep = propagate(&emb, &p, a.fine_denominator, cfg.seed, a.attempts, DEFAULT_ORBIT_CAP)?;
    let text = format!(
        "{} -> {} via nodes {:?}\ninput {}  |W_p| = {}\npoint {}  |W'_p'| = {}  after {} attempt(s)\nlocal model {}\n",
        rep.sub,
        rep.ambient,
        nodes,
        rep.input_point,
        rep.sub_stabilizer_order,
        rep.point,
        rep.stabilizer.order,
        rep.attempts,
        rep.local_model
    );
    let csv = format!(
        "sub,ambient,input_point,sub_stabilizer_order,point,stabilizer_order,isomorphic,attempts,local_model\n\
         {},{},\"{}\",{},\"{}\",{},{},{},\"{}\"\n",
        rep.sub,
        rep.ambient,
        rep.input_point,
        rep.sub_stabilizer_order,
        rep.point,
        rep.stabilizer.order,
        rep.isomorphic,
        rep.attempts,
        rep.local_model
    );
    let pass = rep.isomorphic;
    Outcome::new(rep, csv, text, pass)
}

fn run_matrix(a: &MatrixArgs, cfg: &RunConfig) -> Result<Outcome> {
    let (pair, basis, source) = match (&a.example, &a.ideal, &a.input) {
        (Some(ExampleArg::Remark), _, _) => (remark_pair(), None, "example:remark".to_string()),
        (Some(ExampleArg::Footnote), _, _) => (footnote_pair(), None, "example:footnote".to_string()),
        (None, Some(ideal), _) => {
            let gens: Vec<String> = ideal.split(';').map(|g| g.trim().to_string()).collect();
            let (p, b) = pair_from_ideal(&parse_generators(&gens)?, a.truncation)?;
            (p, Some(b), format!("ideal:{ideal}"))
        }
        (None, None, Some(path)) => {
            let p: MatrixPair =
                serde_json::from_str(&read_file(path)?).map_err(|e| Error::Parse(format!("matrix pair JSON: {e}")))?;
            (p, None, format!("file:{}", path.display()))
        }
        (None, None, None) => return Err(Error::Parse("matrix needs --example, --ideal or --input".into())),
    };
    if pair.dim() == 0 {
        return Err(Error::Dimension("the subscheme is empty at the origin".into()));
    }
    let nilpotent = pair.is_nilpotent();
    let cyclic = nilpotent.then(|| is_cyclic(&pair)).transpose()?;
    let dual_cyclic = nilpotent.then(|| is_cyclic(&dual(&pair))).transpose()?;
    let symp = symplectic_exists(&pair, cfg.seed)?;
    let neg_dual = module_isomorphic(&negate(&pair), &dual(&pair), cfg.seed)?;

    // consistency: a compatible symplectic form identifies the negated and dual modules
    let mut pass = !symp.contains_invertible || neg_dual.isomorphic;
    match a.example {
        Some(ExampleArg::Remark) => pass &= !symp.contains_invertible,
        Some(ExampleArg::Footnote) => pass &= cyclic == Some(true) && dual_cyclic == Some(false),
        None => {}
    }
    if basis.is_some() {
        pass &= cyclic == Some(true);
    }
    let report = json!({
        "source": source,
        "pair": pair,
        "basis": basis,
        "nilpotent": nilpotent,
        "cyclic": cyclic,
        "dual_cyclic": dual_cyclic,
        "symplectic": symp,
        "negate_isomorphic_to_dual": neg_dual,
    });
    let show = |b: Option<bool>| b.map_or("n/a".to_string(), |v| v.to_string());
    let text = format!(
        "{source}: dim {}\ncyclic: {}\ndual cyclic: {}\nskew solution space: {}\ninvertible skew form: {}\nnegated ≅ dual: {}\n",
        pair.dim(),
        show(cyclic),
        show(dual_cyclic),
        symp.basis.len(),
        symp.contains_invertible,
        neg_dual.isomorphic
    );
    let csv = format!(
        "dim,nilpotent,cyclic,dual_cyclic,skew_space_dim,invertible_skew_form,negate_iso_dual\n{},{},{},{},{},{},{}\n",
        pair.dim(),
        nilpotent,
        show(cyclic),
        show(dual_cyclic),
        symp.basis.len(),
        symp.contains_invertible,
        neg_dual.isomorphic
    );
    Outcome::new(report, csv, text, pass)
}

fn run_spin8(classes: Option<&str>) -> Result<Outcome> {
    let classes: Vec<F2Class> = match classes {
        Some(s) => parse_list(s, "F2 class")?,
        None => spin8_triple_classes(),
    };
    if classes.is_empty() {
        return Err(Error::Parse("no classes".into()));
    }
    let r = flat_sum_report(&classes)?;
    let pass = r.w2 == 0 && r.deformation_dim == 0;
    let terms: Vec<String> = r
        .w2_terms
        .iter()
        .map(|t| t.iter().map(|i| format!("e{i}")).collect::<String>())
        .collect();
    let text = format!(
        "classes: {}\nw = {}\nw1 = {}\nw2 = {}\ndeformation dim = {}\n",
        classes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
        r.total_class,
        r.w1,
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        },
        r.deformation_dim
    );
    let csv = format!(
        "w1,w2,w2_terms,deformation_dim\n{},{},\"{}\",{}\n",
        r.w1,
        r.w2,
        terms.join(" + "),
        r.deformation_dim
    );
    Outcome::new(r, csv, text, pass)
}

fn run_classify(ty: &str, cfg: &RunConfig) -> Result<Outcome> {
    let t: DynkinType = ty.parse()?;
    let datum = build_root_datum(t);
    let row = table1_row(t);
    let mut weights = vec![1];
    weights.extend(&row.coefficients);
    let crepant = crepant_classification(t);
    let example = match basic_example_point(&datum) {
        Ok(p) if t.weyl_order() <= cfg.group_order_cap as u128 => {
            let s = weyl_stabilizer(&datum, &p, DEFAULT_ORBIT_CAP)?;
            Some(json!({
                "point": p,
                "stabilizer_order": s.report.order,
                "classification": s.report.classification,
                "local_model": s.report.local_model_label,
            }))
        }
        _ => None,
    };
    let report = json!({
        "dynkin_type": t.to_string(),
        "group": t.group_name(),
        "rank": t.rank,
        "weyl_order": t.weyl_order().to_string(),
        "contains_minus_one": datum.contains_minus_one(),
        "highest_coroot": row.coefficients,
        "elliptic_curve_moduli": format!("P{}", tuple(&weights)),
        "projective_space": row.coefficients.iter().all(|&g| g == 1),
        "crepant_resolution": crepant,
        "basic_example": example,
    });
    let crepant_text = match crepant {
        CrepantVerdict::Admits => "admits",
        CrepantVerdict::DoesNotAdmit => "does not admit",
    };
    let mut text = format!(
        "{} ({}), rank {}, |W| = {}\n-1 in W: {}\nM_G(E) = P{}\n(A⊗Λ)/W {crepant_text} a crepant resolution\n",
        t.group_name(),
        t,
        t.rank,
        t.weyl_order(),
        datum.contains_minus_one(),
        tuple(&weights)
    );
    if let Some(e) = &example {
        let _ = writeln!(
            text,
            "basic example point {}: stabilizer order {}, {}",
            e["point"], e["stabilizer_order"], e["local_model"]
        );
    }
    let csv = format!(
        "type,group,rank,weyl_order,contains_minus_one,weights,crepant\n{},{},{},{},{},\"{}\",{}\n",
        t,
        t.group_name(),
        t.rank,
        t.weyl_order(),
        datum.contains_minus_one(),
        tuple(&weights),
        crepant_text.replace(' ', "_")
    );
    // the crepant verdict must agree with the weights: smooth P^r exactly for SU and Sp
    let pass = (crepant == CrepantVerdict::Admits) == row.coefficients.iter().all(|&g| g == 1);
    Outcome::new(report, csv, text, pass)
}
