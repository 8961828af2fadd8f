use std::fmt::Write as _;

use prequant_core::levels::{table_rows, TableRow};
use prequant_core::surfcalc::random_perturbation;
use prequant_core::{
    basic_level, classify, commutator_pairing, intermediate_lattice, CenterElement,
    ClassificationReport, GammaElement, Level, QuadratureConfig, TorusMap,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group_spec::GroupSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

/// Deviation allowed between numeric and exact commutators for winding-only maps.
pub const TOL_UNPERTURBED: f64 = 1e-9;
/// Same, once random periodic perturbations are added to the maps.
pub const TOL_PERTURBED: f64 = 1e-6;
/// Perturbed variants per generator pair in `verify`.
pub const PERTURBED_VARIANTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format '{s}' (expected text, json or csv)")),
        }
    }
}

/// What a command wants printed and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            status: EXIT_OK,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            status: EXIT_USAGE,
        }
    }
}

/// 12 significant digits, then the shortest decimal that round-trips.
pub fn round_sig(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float")
}

pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_group(spec: &str) -> Result<(GroupSpec, prequant_core::RootSystem, prequant_core::CenterSubgroup), Outcome> {
    let g: GroupSpec = spec.parse().map_err(|e| Outcome::usage(format!("{e}")))?;
    let (rs, z) = g.resolve().map_err(|e| Outcome::usage(format!("{e}")))?;
    Ok((g, rs, z))
}

fn parse_level(level: Option<i64>) -> Result<Level, Outcome> {
    let l = level.ok_or_else(|| Outcome::usage("--level is required"))?;
    Level::new(l).map_err(|e| Outcome::usage(e.to_string()))
}

fn no_csv(format: Format, cmd: &str) -> Result<(), Outcome> {
    if format == Format::Csv {
        return Err(Outcome::usage(format!("csv output is only available for 'table', not '{cmd}'")));
    }
    Ok(())
}

fn internal(e: impl std::fmt::Display) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        status: EXIT_DISAGREE,
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return o,
        }
    };
}

#[derive(Serialize)]
struct TableRowOut {
    group: String,
    l0_table: u64,
    lb_lattice: u64,
    agree: bool,
}

impl From<&TableRow> for TableRowOut {
    fn from(r: &TableRow) -> Self {
        TableRowOut {
            group: r.group.to_string(),
            l0_table: r.from_table,
            lb_lattice: r.from_lattice,
            agree: r.agrees(),
        }
    }
}

pub fn cmd_table(max_rank: usize, format: Format) -> Outcome {
    if max_rank < 2 {
        return Outcome::usage(format!("--max-rank must be at least 2, got {max_rank}"));
    }
    let rows = match table_rows(max_rank) {
        Ok(r) => r,
        Err(e) => return internal(e),
    };
    let out: Vec<TableRowOut> = rows.iter().map(TableRowOut::from).collect();
    let stdout = match format {
        Format::Csv => {
            let mut s = String::from("group,l0_table,lb_lattice,agree\n");
            for r in &out {
                writeln!(s, "{},{},{},{}", r.group, r.l0_table, r.lb_lattice, r.agree).unwrap();
            }
            s
        }
        Format::Json => to_json(&out),
        Format::Text => {
            let mut s = format!("{:<12} {:>8} {:>10} {:>6}\n", "group", "l0_table", "lb_lattice", "agree");
            for r in &out {
                writeln!(s, "{:<12} {:>8} {:>10} {:>6}", r.group, r.l0_table, r.lb_lattice, r.agree).unwrap();
            }
            s
        }
    };
    let status = if out.iter().all(|r| r.agree) {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    };
    Outcome {
        stdout,
        stderr: String::new(),
        status,
    }
}

#[derive(Serialize)]
struct BasicLevelOut {
    group: String,
    lie_type: String,
    center_invariant_factors: Vec<i64>,
    center_generators: Vec<Vec<String>>,
    subgroup_order: usize,
    subgroup_generators: Vec<Vec<i64>>,
    index: String,
    basic_level: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    l0_table: Option<u64>,
    gram_on_lambda_prime: Vec<Vec<String>>,
}

pub fn cmd_basic_level(spec: &str, format: Format) -> Outcome {
    tri!(no_csv(format, "basic-level"));
    let (g, rs, z) = tri!(parse_group(spec));
    let report = match basic_level(&rs, &z) {
        Ok(r) => r,
        Err(e) => return internal(e),
    };
    let lattice = match intermediate_lattice(&rs, &z) {
        Ok(l) => l,
        Err(e) => return internal(e),
    };
    let l0_table = g
        .table_group()
        .map(|t| prequant_core::table_formula(&t).expect("validated at parse"));
    let out = BasicLevelOut {
        group: g.to_string(),
        lie_type: rs.lie_type().to_string(),
        center_invariant_factors: z.ambient().invariant_factors().to_vec(),
        center_generators: match generator_reps(&rs, z.ambient()) {
            Ok(g) => g,
            Err(e) => return internal(e),
        },
        subgroup_order: z.order(),
        subgroup_generators: z.generators().iter().map(|e| e.coeffs().to_vec()).collect(),
        index: lattice.index_over_coroot().to_string(),
        basic_level: report.basic_level,
        l0_table,
        gram_on_lambda_prime: report
            .gram_on_lambda_prime
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_string()).collect())
            .collect(),
    };
    let stdout = match format {
        Format::Json => to_json(&out),
        _ => {
            let mut s = String::new();
            writeln!(s, "group: {}", out.group).unwrap();
            writeln!(s, "type: {}", out.lie_type).unwrap();
            writeln!(s, "center: {:?}", out.center_invariant_factors).unwrap();
            for (i, gen) in out.center_generators.iter().enumerate() {
                writeln!(s, "  generator {i}: ({})", gen.join(", ")).unwrap();
            }
            writeln!(s, "subgroup order: {}", out.subgroup_order).unwrap();
            writeln!(s, "index [L':L]: {}", out.index).unwrap();
            writeln!(s, "basic level: {}", out.basic_level).unwrap();
            if let Some(t) = out.l0_table {
                writeln!(s, "closed form: {t}").unwrap();
            }
            writeln!(s, "gram on L':").unwrap();
            for row in &out.gram_on_lambda_prime {
                writeln!(s, "  [{}]", row.join(", ")).unwrap();
            }
            s
        }
    };
    let status = match out.l0_table {
        Some(t) if t != out.basic_level => EXIT_DISAGREE,
        _ => EXIT_OK,
    };
    Outcome {
        stdout,
        stderr: String::new(),
        status,
    }
}

/// Minimal dominant coweight for each canonical center generator.
fn generator_reps(
    rs: &prequant_core::RootSystem,
    cg: &prequant_core::CenterGroup,
) -> prequant_core::Result<Vec<Vec<String>>> {
    (0..cg.invariant_factors().len())
        .map(|i| {
            let mut c = vec![0; cg.invariant_factors().len()];
            c[i] = 1;
            let rep = prequant_core::minimal_dominant_rep(rs, cg, &cg.element(c)?)?;
            Ok(rep.iter().map(|x| x.to_string()).collect())
        })
        .collect()
}

fn gamma_json(g: &GammaElement) -> [Vec<i64>; 2] {
    [g.first.coeffs().to_vec(), g.second.coeffs().to_vec()]
}

fn coeffs_label(e: &CenterElement) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct PairingEntryOut {
    z: [Vec<i64>; 2],
    w: [Vec<i64>; 2],
    phase: String,
}

#[derive(Serialize)]
struct PairingOut {
    group: String,
    level: u64,
    gamma: Vec<[Vec<i64>; 2]>,
    entries: Vec<PairingEntryOut>,
    trivial: bool,
}

pub fn cmd_pairing(spec: &str, level: Option<i64>, format: Format) -> Outcome {
    tri!(no_csv(format, "pairing"));
    let (g, rs, z) = tri!(parse_group(spec));
    let level = tri!(parse_level(level));
    let p = match commutator_pairing(&rs, &z, level) {
        Ok(p) => p,
        Err(e) => return internal(e),
    };
    let trivial = prequant_core::pairing_is_trivial(&p).0;
    let stdout = match format {
        Format::Json => to_json(&PairingOut {
            group: g.to_string(),
            level: level.get(),
            gamma: p.gamma().iter().map(gamma_json).collect(),
            entries: p
                .entries()
                .map(|(a, b, ph)| PairingEntryOut {
                    z: gamma_json(a),
                    w: gamma_json(b),
                    phase: ph.to_string(),
                })
                .collect(),
            trivial,
        }),
        _ => {
            let labels: Vec<String> = p
                .gamma()
                .iter()
                .map(|x| format!("{};{}", coeffs_label(&x.first), coeffs_label(&x.second)))
                .collect();
            let width = labels.iter().map(String::len).max().unwrap_or(1).max(5);
            let mut s = format!("# {} level {}: q(z, w) as a fraction of a turn\n", g, level.get());
            write!(s, "{:>width$}", "z\\w").unwrap();
            for l in &labels {
                write!(s, " {l:>width$}").unwrap();
            }
            s.push('\n');
            let n = labels.len();
            for i in 0..n {
                write!(s, "{:>width$}", labels[i]).unwrap();
                for j in 0..n {
                    write!(s, " {:>width$}", p.at(i, j).to_string()).unwrap();
                }
                s.push('\n');
            }
            writeln!(s, "trivial: {trivial}").unwrap();
            s
        }
    };
    Outcome::ok(stdout)
}

#[derive(Serialize)]
struct ClassifyOut {
    group: String,
    level: u64,
    basic_level: u64,
    splits: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[[Vec<i64>; 2]; 2]>,
    line_bundle_count: u64,
}

impl From<&ClassificationReport> for ClassifyOut {
    fn from(r: &ClassificationReport) -> Self {
        ClassifyOut {
            group: r.group.clone(),
            level: r.level,
            basic_level: r.basic_level,
            splits: r.splits,
            witness: r.witness.as_ref().map(|(a, b)| [gamma_json(a), gamma_json(b)]),
            line_bundle_count: r.line_bundle_count,
        }
    }
}

pub fn cmd_classify(spec: &str, level: Option<i64>, format: Format) -> Outcome {
    tri!(no_csv(format, "classify"));
    let (g, rs, z) = tri!(parse_group(spec));
    let level = tri!(parse_level(level));
    let report = match classify(&rs, &z, level, g.to_string()) {
        Ok(r) => r,
        Err(e) => return internal(e),
    };
    let out = ClassifyOut::from(&report);
    let stdout = match format {
        Format::Json => to_json(&out),
        _ => {
            let mut s = String::new();
            writeln!(s, "group: {}", out.group).unwrap();
            writeln!(s, "level: {}", out.level).unwrap();
            writeln!(s, "basic level: {}", out.basic_level).unwrap();
            writeln!(s, "splits: {}", out.splits).unwrap();
            if let Some((a, b)) = &report.witness {
                writeln!(s, "witness: q({a}, {b}) != 0").unwrap();
            }
            writeln!(s, "pre-quantum line bundles: {}", out.line_bundle_count).unwrap();
            s
        }
    };
    Outcome::ok(stdout)
}

#[derive(Serialize)]
struct VerifyRowOut {
    z: [Vec<i64>; 2],
    w: [Vec<i64>; 2],
    exact_phase: String,
    numeric_re: f64,
    numeric_im: f64,
    deviation: f64,
    max_perturbed_deviation: f64,
}

#[derive(Serialize)]
struct VerifyOut {
    group: String,
    level: u64,
    grid: usize,
    seed: u64,
    pairs: usize,
    perturbed_variants: usize,
    max_deviation: f64,
    max_deviation_perturbed: f64,
    tolerance: f64,
    tolerance_perturbed: f64,
    pass: bool,
    rows: Vec<VerifyRowOut>,
}

/// Generators of `Γ = Z × Z`: `(g, 0)` and `(0, g)` for each generator of `Z`.
fn gamma_generators(z: &prequant_core::CenterSubgroup) -> Vec<GammaElement> {
    let id = z.ambient().identity();
    let mut out = Vec::new();
    for g in z.generators() {
        out.push(GammaElement {
            first: g.clone(),
            second: id.clone(),
        });
        out.push(GammaElement {
            first: id.clone(),
            second: g.clone(),
        });
    }
    if out.is_empty() {
        out.push(GammaElement {
            first: id.clone(),
            second: id,
        });
    }
    out
}

pub fn cmd_verify(spec: &str, level: Option<i64>, grid: usize, seed: u64, format: Format) -> Outcome {
    tri!(no_csv(format, "verify"));
    let cfg = match QuadratureConfig::new(grid, TOL_UNPERTURBED) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let (g, rs, z) = tri!(parse_group(spec));
    let level = tri!(parse_level(level));
    let run = || -> prequant_core::Result<VerifyOut> {
        let lattice = intermediate_lattice(&rs, &z)?;
        let exact = commutator_pairing(&rs, &z, level)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = gamma_generators(&z);
        let mut rows = Vec::new();
        for a in &gens {
            for b in &gens {
                let phase = exact.get(a, b).expect("generators lie in Γ");
                let target = phase.to_unit_complex();
                let ga = prequant_core::build_torus_map(&rs, z.ambient(), &lattice, a)?;
                let gb = prequant_core::build_torus_map(&rs, z.ambient(), &lattice, b)?;
                let c = prequant_core::numeric_commutator(&ga, &gb, level, &cfg)?;
                let mut worst_perturbed: f64 = 0.0;
                for _ in 0..PERTURBED_VARIANTS {
                    let pa: TorusMap = ga
                        .clone()
                        .with_perturbation(random_perturbation(&mut rng, rs.rank(), 3, 3, 0.3));
                    let pb: TorusMap = gb
                        .clone()
                        .with_perturbation(random_perturbation(&mut rng, rs.rank(), 3, 3, 0.3));
                    let cp = prequant_core::numeric_commutator(&pa, &pb, level, &cfg)?;
                    worst_perturbed = worst_perturbed.max((cp - target).norm());
                }
                rows.push(VerifyRowOut {
                    z: gamma_json(a),
                    w: gamma_json(b),
                    exact_phase: phase.to_string(),
                    numeric_re: round_sig(c.re),
                    numeric_im: round_sig(c.im),
                    deviation: round_sig((c - target).norm()),
                    max_perturbed_deviation: round_sig(worst_perturbed),
                });
            }
        }
        let max_dev = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
        let max_pert = rows.iter().map(|r| r.max_perturbed_deviation).fold(0.0, f64::max);
        Ok(VerifyOut {
            group: g.to_string(),
            level: level.get(),
            grid,
            seed,
            pairs: rows.len(),
            perturbed_variants: PERTURBED_VARIANTS,
            max_deviation: max_dev,
            max_deviation_perturbed: max_pert,
            tolerance: TOL_UNPERTURBED,
            tolerance_perturbed: TOL_PERTURBED,
            pass: max_dev < TOL_UNPERTURBED && max_pert < TOL_PERTURBED,
            rows,
        })
    };
    let out = match run() {
        Ok(o) => o,
        Err(e) => return internal(e),
    };
    let stdout = match format {
        Format::Json => to_json(&out),
        _ => {
            let mut s = String::new();
            writeln!(s, "group: {}  level: {}  grid: {}  seed: {}", out.group, out.level, out.grid, out.seed).unwrap();
            for r in &out.rows {
                writeln!(
                    s,
                    "  q({:?}, {:?}) = {:>6}  numeric = ({}, {})  deviation = {}  perturbed = {}",
                    r.z,
                    r.w,
                    r.exact_phase,
                    fmt_sig(r.numeric_re),
                    fmt_sig(r.numeric_im),
                    fmt_sig(r.deviation),
                    fmt_sig(r.max_perturbed_deviation)
                )
                .unwrap();
            }
            writeln!(s, "max deviation: {} (tolerance {})", fmt_sig(out.max_deviation), fmt_sig(out.tolerance)).unwrap();
            writeln!(
                s,
                "max perturbed deviation: {} (tolerance {})",
                fmt_sig(out.max_deviation_perturbed),
                fmt_sig(out.tolerance_perturbed)
            )
            .unwrap();
            writeln!(s, "{}", if out.pass { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        status: if out.pass { EXIT_OK } else { EXIT_DISAGREE },
    }
}
