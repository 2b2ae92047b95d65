//! Command line front end: analysis reports for single semigroups, simple
//! gluings, named families and exhaustive searches.
//!
//! Every command writes either a text report or JSON (`--json`). JSON
//! reports carry [`SCHEMA_VERSION`]; the layout is described in
//! `docs/report-schema.md`. Output never depends on timing unless
//! `--timings` is given.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use koszulsg::families::{BresinskyParams, FamilySpec, KomedaParams};
use koszulsg::field::DEFAULT_PRIME;
use koszulsg::gluing::{delorme_decompose, quadratic_gluing_chain, ChainFailure, GluingData, GluingTree};
use koszulsg::homology::{koszul_verdict_for, KoszulOptions, KoszulStatus, KoszulVerdict, DEFAULT_BAND, DEFAULT_MAX_I};
use koszulsg::tangent_cone::{
    quadratic_prefilter, BoundReport, CiClass, QuadraticEvidence, TangentCone, PERMUTATION_LIMIT,
};
use koszulsg::{Error, NumericalSemigroup, PrimeField};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "koszulsg", version, about = "Quadratic and Koszul tangent cones of numerical semigroup rings")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME as u64)]
    pub field: u64,
    /// Largest homological degree for the Betti table of the residue field.
    #[arg(long = "max-i", global = true, default_value_t = DEFAULT_MAX_I)]
    pub max_i: usize,
    /// Number of strands above the diagonal kept in the Betti table.
    #[arg(long, global = true, default_value_t = DEFAULT_BAND)]
    pub band: u32,
    /// Largest embedding dimension for the search over term orders.
    #[arg(long = "perm-limit", global = true, default_value_t = PERMUTATION_LIMIT)]
    pub perm_limit: usize,
    /// Worker threads for `search` (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl Default for GlobalOpts {
    fn default() -> Self {
        GlobalOpts {
            json: false,
            field: DEFAULT_PRIME as u64,
            max_i: DEFAULT_MAX_I,
            band: DEFAULT_BAND,
            perm_limit: PERMUTATION_LIMIT,
            jobs: None,
            timings: false,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report for the semigroup generated by the given integers.
    Analyze {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        generators: Vec<i64>,
    },
    /// Report for the simple gluing ⟨cL, ℓ⟩ of L = ⟨generators⟩.
    Glue {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        generators: Vec<i64>,
        #[arg(long)]
        c: u64,
        #[arg(long = "l")]
        ell: u64,
    },
    /// Build a member of a named family and check its closed forms.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Enumerate semigroups with bounded generators.
    Search(SearchArgs),
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// ⟨a1, a1 + d, ..., a1 + (n-1)d⟩.
    Arithmetic {
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: usize,
    },
    /// Compound sequence with q_i = b_1⋯b_{i-1} a_i⋯a_n.
    Compound {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
    },
    /// W_n(a) = ⟨2^n, 2^n + a, ..., 2^n + 2^{n-1} a⟩.
    Watanabe {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u64,
    },
    /// ⟨P/a_1, ..., P/a_n⟩ for pairwise coprime a_i.
    Coprime {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
    },
    /// Symmetric non-CI semigroup from α21,α31,α32,α42,α13,α43,α14,α24.
    Bresinsky {
        #[arg(long, value_delimiter = ',', num_args = 8, required = true)]
        alpha: Vec<u64>,
    },
    /// Pseudo-symmetric semigroup from c1,c2,c3,c4 and α21.
    Komeda {
        #[arg(long, value_delimiter = ',', num_args = 4, required = true)]
        c: Vec<u64>,
        #[arg(long)]
        a21: u64,
    },
    /// ⟨4, 2c, 2a + c⟩.
    Three {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        c: u64,
    },
    /// ⟨5, 4a + b, 2a + 3b, 3a + 2b⟩.
    Symmetric {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// ⟨5, 3a + b + 1, 3b - a - 2, a + 2b + 2⟩.
    PseudoSymmetric {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// A family given as JSON, e.g. '{"family":"watanabe","n":3,"a":3}'.
    Spec {
        #[arg(value_name = "JSON")]
        spec_json: String,
    },
}

impl FamilyCommand {
    pub fn spec(&self) -> Result<FamilySpec, CliError> {
        Ok(match self {
            FamilyCommand::Arithmetic { a1, d, n } => FamilySpec::Arithmetic { a1: *a1, d: *d, n: *n },
            FamilyCommand::Compound { a, b } => FamilySpec::Compound { a: a.clone(), b: b.clone() },
            FamilyCommand::Watanabe { n, a } => FamilySpec::Watanabe { n: *n, a: *a },
            FamilyCommand::Coprime { a } => FamilySpec::CoprimeProduct { a: a.clone() },
            FamilyCommand::Bresinsky { alpha } => {
                let [a21, a31, a32, a42, a13, a43, a14, a24] = alpha[..] else {
                    return Err(CliError::Usage("--alpha takes eight values".into()));
                };
                FamilySpec::Bresinsky(BresinskyParams { a21, a31, a32, a42, a13, a43, a14, a24 })
            }
            FamilyCommand::Komeda { c, a21 } => {
                let [c1, c2, c3, c4] = c[..] else {
                    return Err(CliError::Usage("--c takes four values".into()));
                };
                FamilySpec::Komeda(KomedaParams { c1, c2, c3, c4, a21: *a21 })
            }
            FamilyCommand::Three { a, c } => FamilySpec::ThreeSemigroupQuadratic { a: *a, c: *c },
            FamilyCommand::Symmetric { a, b } => FamilySpec::SymmetricFourParam { a: *a, b: *b },
            FamilyCommand::PseudoSymmetric { a, b } => FamilySpec::PseudoSymFourParam { a: *a, b: *b },
            FamilyCommand::Spec { spec_json } => {
                serde_json::from_str(spec_json).map_err(|e| CliError::Usage(format!("bad family spec: {e}")))?
            }
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Embedding dimensions to enumerate (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    pub embdim: Vec<usize>,
    /// Upper bound for every generator.
    #[arg(long = "max-gen")]
    pub max_gen: u64,
    /// Only report quadratic semigroups.
    #[arg(long)]
    pub quadratic: bool,
    /// Compute Koszul verdicts for quadratic semigroups.
    #[arg(long)]
    pub koszul: bool,
    /// Only report candidates for an unresolved question.
    #[arg(long, value_enum)]
    pub experiment: Option<Experiment>,
}

/// Filters for questions that are open, so the search only logs candidates.
#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    /// `I_H` is a complete intersection but `I_H*` is not.
    CiStar,
    /// Quadratic, `I*` not CI, with `2^{n-1} - 2^{n-3} < e < 2^{n-1}`
    /// (possible only if the tangent cone is not Cohen–Macaulay).
    ForbiddenAci,
    /// Quadratic, 4-generated, `e = 5`, neither symmetric nor pseudo-symmetric.
    NeitherSymmetric,
}

impl Experiment {
    fn keeps(self, h: &NumericalSemigroup, quadratic: bool, field: PrimeField) -> Result<bool, CliError> {
        let n = h.embedding_dimension();
        let e = h.multiplicity();
        Ok(match self {
            Experiment::CiStar => {
                let tc = TangentCone::with_field(h, field)?;
                tc.is_complete_intersection() && tc.classify_ci_star() != CiClass::CompleteIntersection
            }
            Experiment::ForbiddenAci => {
                n >= 3 && quadratic && {
                    let top = 1u64 << (n - 1);
                    e > top - (1u64 << (n - 3))
                        && e < top
                        && TangentCone::with_field(h, field)?.classify_ci_star() != CiClass::CompleteIntersection
                }
            }
            Experiment::NeitherSymmetric => {
                quadratic && n == 4 && e == 5 && !h.is_symmetric() && !h.is_pseudo_symmetric()
            }
        })
    }
}

/// Failure of a command, mapped to the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Invalid input (exit code 2).
    Usage(String),
    /// An internal consistency check failed (exit code 3).
    Internal(String),
    /// The reader of the output went away (exit code 0, nothing printed).
    OutputClosed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
            CliError::OutputClosed => 0,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal consistency failure: {m}"),
            CliError::OutputClosed => write!(f, "output closed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleMismatch(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::OutputClosed;
        }
        CliError::Internal(format!("write failed: {e}"))
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Invariants {
    pub multiplicity: u64,
    pub embedding_dimension: usize,
    pub frobenius_number: i64,
    pub genus: usize,
    pub pseudo_frobenius: Vec<i64>,
    pub symmetric: bool,
    pub pseudo_symmetric: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadraticReport {
    pub value: bool,
    pub evidence: QuadraticEvidence,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GQuadraticReport {
    /// A term order with a quadratic Gröbner basis.
    pub witness: Option<String>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CiReport {
    pub toric: CiClass,
    pub tangent_cone: CiClass,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KoszulReport {
    #[serde(flatten)]
    pub verdict: KoszulVerdict,
    pub max_i: usize,
    pub band: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GluingReport {
    /// `ℓ_1, ..., ℓ_{n-1}` with `H_i = ⟨2H_{i-1}, ℓ_i⟩` from `ℕ`.
    pub quadratic_chain: Option<Vec<u64>>,
    pub chain_failure: Option<ChainFailure>,
    /// Delorme decomposition when `H` is a complete intersection.
    pub delorme: Option<GluingTree>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timings {
    pub tangent_cone_ms: f64,
    pub koszul_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub generators: Vec<u64>,
    pub invariants: Invariants,
    pub toric_ideal: Vec<String>,
    pub tangent_cone_ideal: Vec<String>,
    pub tangent_cone_degrees: Vec<u32>,
    pub quadratic: QuadraticReport,
    pub g_quadratic: GQuadraticReport,
    pub complete_intersection: CiReport,
    pub cohen_macaulay: bool,
    pub bounds: BoundReport,
    pub koszul: KoszulReport,
    pub gluing: GluingReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlueReport {
    pub schema_version: u32,
    pub inner: Vec<u64>,
    pub c: u64,
    pub ell: u64,
    pub glued: Vec<u64>,
    /// `f = x_ℓ^c - ∏ x^λ` in the glued toric ring.
    pub gluing_relation: String,
    pub order_of_ell: u32,
    /// Whether `I_H* = (I_L* S, f*)` applies (`c ≤ ord_L(ℓ)`).
    pub formula_applies: bool,
    pub inner_quadratic: bool,
    pub analysis: AnalysisReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyReport {
    pub schema_version: u32,
    pub spec: FamilySpec,
    pub predicted_quadratic: bool,
    /// All closed-form predictions matched the computation.
    pub verified: bool,
    pub analysis: AnalysisReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub generators: Vec<u64>,
    pub multiplicity: u64,
    pub embedding_dimension: usize,
    pub quadratic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koszul: Option<KoszulStatus>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub schema_version: u32,
    pub examined: usize,
    pub reported: usize,
    /// Counts of reported rows by embedding dimension and multiplicity,
    /// sorted by both.
    pub multiplicities: Vec<HistogramCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramCell {
    pub embedding_dimension: usize,
    pub multiplicity: u64,
    pub count: usize,
}

impl SearchSummary {
    /// The histogram row for one embedding dimension as `(e, count)` pairs.
    pub fn histogram(&self, embdim: usize) -> Vec<(u64, usize)> {
        self.multiplicities
            .iter()
            .filter(|c| c.embedding_dimension == embdim)
            .map(|c| (c.multiplicity, c.count))
            .collect()
    }
}

/// One line of `search --json` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum SearchEvent {
    Row(SearchRow),
    Summary(SearchSummary),
}

fn koszul_options(opts: &GlobalOpts) -> Result<KoszulOptions, CliError> {
    Ok(KoszulOptions {
        max_i: opts.max_i,
        band: opts.band,
        permutation_limit: opts.perm_limit,
        field: PrimeField::new(opts.field)?,
    })
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs the whole pipeline on `h`.
pub fn analyze(h: &NumericalSemigroup, opts: &GlobalOpts) -> Result<AnalysisReport, CliError> {
    let start = Instant::now();
    let kopts = koszul_options(opts)?;
    let tc = TangentCone::with_field(h, kopts.field)?;
    tc.check_mu_agreement()?;
    let cone_ms = millis(start);
    let quadratic = tc.is_quadratic();
    let n = tc.embedding_dimension();
    let g_quadratic = if !quadratic {
        GQuadraticReport {
            witness: None,
            note: "I* is not generated by quadrics".into(),
        }
    } else if n > opts.perm_limit {
        GQuadraticReport {
            witness: None,
            note: format!("embedding dimension {n} exceeds the permutation limit {}", opts.perm_limit),
        }
    } else {
        match tc.g_quadratic_witness(opts.perm_limit)? {
            Some(w) => GQuadraticReport {
                witness: Some(w.order.to_string()),
                note: "reduced Gröbner basis consists of quadrics".into(),
            },
            None => GQuadraticReport {
                witness: None,
                note: "no degrevlex or lex order over any variable ranking gives a quadratic basis; \
                       linear coordinate changes were not tried"
                    .into(),
            },
        }
    };
    let koszul_start = Instant::now();
    let verdict = koszul_verdict_for(&tc, &kopts)?;
    let koszul_ms = millis(koszul_start);
    let (chain, failure) = match quadratic_gluing_chain(h) {
        Ok(c) => (Some(c), None),
        Err(ChainFailure::Inconsistent(m)) => return Err(CliError::Internal(m)),
        Err(f) => (None, Some(f)),
    };
    let bounds = tc.bound_report()?;
    if !bounds.violations().is_empty() {
        return Err(CliError::Internal(format!("{h} violates {:?}", bounds.violations())));
    }
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        generators: h.generators().to_vec(),
        invariants: Invariants {
            multiplicity: h.multiplicity(),
            embedding_dimension: n,
            frobenius_number: h.frobenius_number(),
            genus: h.gaps().len(),
            pseudo_frobenius: h.pseudo_frobenius(),
            symmetric: h.is_symmetric(),
            pseudo_symmetric: h.is_pseudo_symmetric(),
        },
        toric_ideal: tc.toric_ideal().render_generators(),
        tangent_cone_ideal: tc.minimal_generators().iter().map(|g| tc.ideal().ring().render(g)).collect(),
        tangent_cone_degrees: tc.minimal_generator_degrees(),
        quadratic: QuadraticReport {
            value: quadratic,
            evidence: tc.quadratic_evidence(),
        },
        g_quadratic,
        complete_intersection: CiReport {
            toric: tc.toric_class(),
            tangent_cone: tc.classify_ci_star(),
        },
        cohen_macaulay: tc.is_cohen_macaulay(),
        bounds,
        koszul: KoszulReport {
            verdict,
            max_i: opts.max_i,
            band: opts.band,
        },
        gluing: GluingReport {
            quadratic_chain: chain,
            chain_failure: failure,
            delorme: delorme_decompose(h),
        },
        timings: opts.timings.then(|| Timings {
            tangent_cone_ms: cone_ms,
            koszul_ms,
            total_ms: millis(start),
        }),
    })
}

fn semigroup_from(gens: &[i64]) -> Result<NumericalSemigroup, CliError> {
    Ok(NumericalSemigroup::from_generators(gens)?)
}

pub fn glue(gens: &[i64], c: u64, ell: u64, opts: &GlobalOpts) -> Result<GlueReport, CliError> {
    let l = semigroup_from(gens)?;
    let data = GluingData::new(&l, c, ell)?;
    let analysis = analyze(&data.glued, opts)?;
    let toric = koszulsg::toric::toric_ideal(&data.glued);
    let ord = data.order_of_ell();
    let formula_applies = c as u32 <= ord;
    if formula_applies {
        // raises OracleMismatch when the formula and the direct computation differ
        koszulsg::gluing::tangent_cone_of_gluing(&l, c, ell)?;
    }
    Ok(GlueReport {
        schema_version: SCHEMA_VERSION,
        inner: l.generators().to_vec(),
        c,
        ell,
        glued: data.glued.generators().to_vec(),
        gluing_relation: toric.ring().render(&data.relation(toric.ring())),
        order_of_ell: ord,
        formula_applies,
        inner_quadratic: koszulsg::tangent_cone::is_quadratic(&l)?,
        analysis,
    })
}

pub fn family(spec: &FamilySpec, opts: &GlobalOpts) -> Result<FamilyReport, CliError> {
    let member = spec.build()?;
    let h = member.semigroup().clone();
    let tc = TangentCone::with_field(&h, PrimeField::default())?;
    member.verify(&tc)?;
    let predicted = spec.predicted_quadratic()?;
    if predicted != tc.is_quadratic() {
        return Err(CliError::Internal(format!(
            "{h}: closed form predicts quadratic = {predicted}, computation gives {}",
            tc.is_quadratic()
        )));
    }
    Ok(FamilyReport {
        schema_version: SCHEMA_VERSION,
        spec: spec.clone(),
        predicted_quadratic: predicted,
        verified: true,
        analysis: analyze(&h, opts)?,
    })
}

/// All semigroups of embedding dimension `embdim` whose minimal generators
/// are at most `max_gen`, in lexicographic order of generator lists.
pub fn enumerate(embdim: usize, max_gen: u64) -> Vec<NumericalSemigroup> {
    if embdim == 1 {
        return vec![NumericalSemigroup::natural()];
    }
    (2..=max_gen)
        .combinations(embdim)
        .filter_map(|c| {
            let h = NumericalSemigroup::new(&c).ok()?;
            (h.generators() == c.as_slice()).then_some(h)
        })
        .collect()
}

const SEARCH_CHUNK: usize = 512;

fn search_row(h: &NumericalSemigroup, args: &SearchArgs, kopts: &KoszulOptions) -> Result<Option<SearchRow>, CliError> {
    let quadratic = if quadratic_prefilter(h).is_some() {
        false
    } else {
        TangentCone::with_field(h, kopts.field)?.is_quadratic()
    };
    if args.quadratic && !quadratic {
        return Ok(None);
    }
    if let Some(x) = args.experiment {
        if !x.keeps(h, quadratic, kopts.field)? {
            return Ok(None);
        }
    }
    let koszul = if args.koszul && quadratic {
        let tc = TangentCone::with_field(h, kopts.field)?;
        Some(koszul_verdict_for(&tc, kopts)?.status)
    } else {
        None
    };
    Ok(Some(SearchRow {
        generators: h.generators().to_vec(),
        multiplicity: h.multiplicity(),
        embedding_dimension: h.embedding_dimension(),
        quadratic,
        koszul,
    }))
}

/// Runs a search, handing rows to `emit` in deterministic order as chunks
/// complete.
pub fn search(
    args: &SearchArgs,
    opts: &GlobalOpts,
    mut emit: impl FnMut(&SearchRow) -> Result<(), CliError>,
) -> Result<SearchSummary, CliError> {
    let kopts = koszul_options(opts)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    let mut examined = 0;
    let mut reported = 0;
    let mut hist: BTreeMap<(usize, u64), usize> = BTreeMap::new();
    let mut dims = args.embdim.clone();
    dims.sort_unstable();
    dims.dedup();
    for n in dims {
        let all = enumerate(n, args.max_gen);
        examined += all.len();
        for chunk in all.chunks(SEARCH_CHUNK) {
            let rows: Vec<Result<Option<SearchRow>, CliError>> =
                pool.install(|| chunk.par_iter().map(|h| search_row(h, args, &kopts)).collect());
            for row in rows {
                let Some(row) = row? else { continue };
                reported += 1;
                *hist.entry((row.embedding_dimension, row.multiplicity)).or_default() += 1;
                emit(&row)?;
            }
        }
    }
    Ok(SearchSummary {
        schema_version: SCHEMA_VERSION,
        examined,
        reported,
        multiplicities: hist
            .into_iter()
            .map(|((embedding_dimension, multiplicity), count)| HistogramCell {
                embedding_dimension,
                multiplicity,
                count,
            })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// text rendering

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn evidence_text(e: &QuadraticEvidence) -> String {
    match e {
        QuadraticEvidence::Natural => "H = ℕ, I* = 0".into(),
        QuadraticEvidence::AllQuadrics { count } => format!("all {count} minimal generators of I* are quadrics"),
        QuadraticEvidence::NoDivisibleSum => "no a_1 | a_k + a_l with k, l ≥ 2".into(),
        QuadraticEvidence::DoubleNotInOthers { index } => {
            format!("2a_{index} is not in the semigroup of the other generators")
        }
        QuadraticEvidence::HigherDegree { degree, generator } => {
            format!("minimal generator {generator} of degree {degree}")
        }
    }
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let inv = &r.invariants;
    let gens = r.generators.iter().join(",");
    let _ = writeln!(s, "H = <{gens}>");
    let _ = writeln!(
        s,
        "  multiplicity {}, embedding dimension {}, Frobenius number {}, genus {}",
        inv.multiplicity, inv.embedding_dimension, inv.frobenius_number, inv.genus
    );
    let _ = writeln!(
        s,
        "  pseudo-Frobenius {:?}, symmetric: {}, pseudo-symmetric: {}",
        inv.pseudo_frobenius,
        yes(inv.symmetric),
        yes(inv.pseudo_symmetric)
    );
    let _ = writeln!(s, "I_H ({} generators):", r.toric_ideal.len());
    for g in &r.toric_ideal {
        let _ = writeln!(s, "  {g}");
    }
    let _ = writeln!(s, "I_H* ({} generators, degrees {:?}):", r.tangent_cone_ideal.len(), r.tangent_cone_degrees);
    for g in &r.tangent_cone_ideal {
        let _ = writeln!(s, "  {g}");
    }
    let _ = writeln!(s, "quadratic: {} ({})", yes(r.quadratic.value), evidence_text(&r.quadratic.evidence));
    match &r.g_quadratic.witness {
        Some(order) => {
            let _ = writeln!(s, "G-quadratic: yes, {order} ({})", r.g_quadratic.note);
        }
        None => {
            let _ = writeln!(s, "G-quadratic witness: none ({})", r.g_quadratic.note);
        }
    }
    let _ = writeln!(
        s,
        "complete intersection: I_H {}, I_H* {}",
        r.complete_intersection.toric, r.complete_intersection.tangent_cone
    );
    let _ = writeln!(s, "Cohen-Macaulay tangent cone: {}", yes(r.cohen_macaulay));
    let _ = writeln!(s, "bounds: {}", r.bounds.branch);
    let k = &r.koszul;
    let _ = writeln!(
        s,
        "Koszul: {} [field {}, max_i {}, band {}]",
        k.verdict, k.verdict.field, k.max_i, k.band
    );
    match (&r.gluing.quadratic_chain, &r.gluing.chain_failure) {
        (Some(chain), _) => {
            let _ = writeln!(s, "quadratic gluing chain from ℕ: {chain:?}");
        }
        (None, Some(f)) => {
            let why = match f {
                ChainFailure::NotCompleteIntersection => "not a complete intersection",
                ChainFailure::NotQuadratic => "complete intersection but not quadratic",
                ChainFailure::Inconsistent(m) => m,
            };
            let _ = writeln!(s, "quadratic gluing chain: none ({why})");
        }
        (None, None) => {}
    }
    if let Some(tree) = &r.gluing.delorme {
        let _ = writeln!(s, "Delorme decomposition: {}", tree_text(tree));
    }
    if let Some(t) = &r.timings {
        let _ = writeln!(
            s,
            "timings: tangent cone {:.1} ms, Koszul {:.1} ms, total {:.1} ms",
            t.tangent_cone_ms, t.koszul_ms, t.total_ms
        );
    }
    s
}

fn tree_text(t: &GluingTree) -> String {
    match t {
        GluingTree::Natural => "ℕ".into(),
        GluingTree::Atomic { generators } => format!("<{}>", generators.iter().join(",")),
        GluingTree::Simple { child, c, ell, .. } => format!("<{c}·{}, {ell}>", tree_text(child)),
        GluingTree::Pair { left, right, c1, c2, .. } => {
            format!("<{c1}·{}, {c2}·{}>", tree_text(left), tree_text(right))
        }
    }
}

fn render_glue(r: &GlueReport) -> String {
    let mut s = String::new();
    let inner = r.inner.iter().join(",");
    let _ = writeln!(s, "L = <{inner}>, c = {}, ℓ = {}", r.c, r.ell);
    let _ = writeln!(s, "gluing relation: {}", r.gluing_relation);
    let _ = writeln!(s, "ord_L(ℓ) = {}, formula I* = (I_L* S, f*) applies: {}", r.order_of_ell, yes(r.formula_applies));
    let _ = writeln!(s, "L quadratic: {}", yes(r.inner_quadratic));
    s.push_str(&render_analysis(&r.analysis));
    s
}

fn render_family(r: &FamilyReport) -> String {
    let mut s = String::new();
    let spec = serde_json::to_string(&r.spec).expect("family specs serialize");
    let _ = writeln!(s, "family {spec}");
    let _ = writeln!(
        s,
        "closed form: quadratic = {}; predictions verified: {}",
        yes(r.predicted_quadratic),
        yes(r.verified)
    );
    s.push_str(&render_analysis(&r.analysis));
    s
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn json_pretty<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Executes `cli`, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Analyze { generators } => {
            let report = analyze(&semigroup_from(generators)?, opts)?;
            if opts.json {
                json_pretty(out, &report)?;
            } else {
                write!(out, "{}", render_analysis(&report))?;
            }
        }
        Command::Glue { generators, c, ell } => {
            let report = glue(generators, *c, *ell, opts)?;
            if opts.json {
                json_pretty(out, &report)?;
            } else {
                write!(out, "{}", render_glue(&report))?;
            }
        }
        Command::Family { family: cmd } => {
            let report = family(&cmd.spec()?, opts)?;
            if opts.json {
                json_pretty(out, &report)?;
            } else {
                write!(out, "{}", render_family(&report))?;
            }
        }
        Command::Search(args) => {
            if args.embdim.contains(&0) {
                return Err(CliError::Usage("embedding dimension must be positive".into()));
            }
            let summary = search(args, opts, |row| {
                if opts.json {
                    json_line(out, &SearchEvent::Row(row.clone()))
                } else {
                    let koszul = match &row.koszul {
                        Some(KoszulStatus::KoszulCertified) => " koszul",
                        Some(KoszulStatus::NotKoszul { .. }) => " not-koszul",
                        Some(KoszulStatus::UndecidedUpTo { .. }) => " koszul-undecided",
                        None => "",
                    };
                    writeln!(
                        out,
                        "<{}> e={} quadratic={}{koszul}",
                        row.generators.iter().join(","),
                        row.multiplicity,
                        yes(row.quadratic)
                    )?;
                    Ok(())
                }
            })?;
            if opts.json {
                json_line(out, &SearchEvent::Summary(summary))?;
            } else {
                writeln!(out, "examined {}, reported {}", summary.examined, summary.reported)?;
                for (n, cells) in &summary.multiplicities.iter().chunk_by(|c| c.embedding_dimension) {
                    let cells = cells.map(|c| format!("e={}: {}", c.multiplicity, c.count)).join(", ");
                    writeln!(out, "embdim {n}: {cells}")?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("koszulsg").chain(args.iter().copied())).unwrap()
    }

    fn output(args: &[&str]) -> Result<String, CliError> {
        let mut buf = Vec::new();
        run(&parse(args), &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn analyze_natural() {
        let text = output(&["analyze", "1"]).unwrap();
        assert!(text.contains("H = <1>"));
        assert!(text.contains("Koszul: Koszul (zero ideal)"));
    }

    #[test]
    fn analyze_json_round_trip() {
        let text = output(&["analyze", "6", "10", "15", "--json"]).unwrap();
        let report: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert!(!report.quadratic.value);
        assert_eq!(report.complete_intersection.toric, CiClass::CompleteIntersection);
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(again.trim_end(), text.trim_end());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(output(&["analyze", "4", "6"]).unwrap_err().exit_code(), 2);
        assert_eq!(output(&["analyze", "0", "3"]).unwrap_err().exit_code(), 2);
        assert_eq!(output(&["glue", "3", "4", "5", "--c", "2", "--l", "4"]).unwrap_err().exit_code(), 2);
        assert_eq!(output(&["analyze", "3", "5", "--field", "10"]).unwrap_err().exit_code(), 2);
        assert_eq!(output(&["family", "watanabe", "--n", "2", "--a", "2"]).unwrap_err().exit_code(), 2);
        assert_eq!(output(&["family", "spec", "{\"family\":\"nope\"}"]).unwrap_err().exit_code(), 2);
        assert!(Cli::try_parse_from(["koszulsg", "analyze"]).is_err());
    }

    #[test]
    fn internal_errors_map_to_three() {
        let e: CliError = Error::OracleMismatch("x".into()).into();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn family_compound() {
        let text = output(&["family", "compound", "--a", "2,2,2", "--b", "3,5,7", "--json"]).unwrap();
        let r: FamilyReport = serde_json::from_str(&text).unwrap();
        assert!(r.predicted_quadratic && r.verified && r.analysis.quadratic.value);
        assert_eq!(r.analysis.invariants.multiplicity, 8);
        assert_eq!(r.analysis.complete_intersection.tangent_cone, CiClass::CompleteIntersection);
    }

    #[test]
    fn family_json_spec() {
        let text = output(&["family", "spec", r#"{"family":"watanabe","n":3,"a":3}"#, "--json"]).unwrap();
        let r: FamilyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r.analysis.generators, vec![8, 11, 14, 20]);
        assert_eq!(r.analysis.koszul.verdict.status, KoszulStatus::KoszulCertified);
    }

    #[test]
    fn glue_reproduces_non_quadratic_example() {
        let text = output(&["glue", "4", "6", "7", "9", "--c", "3", "--l", "10", "--json"]).unwrap();
        let r: GlueReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r.glued, vec![10, 12, 18, 21, 27]);
        assert!(r.inner_quadratic);
        assert!(!r.analysis.quadratic.value);
        assert_eq!(r.analysis.tangent_cone_degrees.iter().filter(|&&d| d == 4).count(), 2);
    }

    #[test]
    fn search_rows_and_histogram() {
        let mut buf = Vec::new();
        run(&parse(&["search", "--embdim", "3", "--max-gen", "12", "--quadratic", "--json", "--jobs", "2"]), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let events: Vec<SearchEvent> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        let Some(SearchEvent::Summary(summary)) = events.last() else { panic!("no summary") };
        let rows = events.len() - 1;
        assert_eq!(summary.reported, rows);
        for ev in &events[..rows] {
            let SearchEvent::Row(r) = ev else { panic!("summary before rows") };
            assert!(r.quadratic && (3..=4).contains(&r.multiplicity));
        }
        assert_eq!(summary.histogram(3).iter().map(|c| c.0).collect::<Vec<_>>(), vec![3, 4]);
    }

    #[test]
    fn experiments_run() {
        for x in ["ci-star", "forbidden-aci", "neither-symmetric"] {
            let text = output(&["search", "--embdim", "4", "--max-gen", "14", "--experiment", x]).unwrap();
            assert!(text.contains("examined"), "{x}");
        }
        // ⟨5,6,7,8⟩ is symmetric, so the e = 5 experiment skips it
        let text = output(&["search", "--embdim", "4", "--max-gen", "8", "--experiment", "neither-symmetric"]).unwrap();
        assert!(!text.contains("<5,6,7,8>"));
        assert!(Cli::try_parse_from(["koszulsg", "search", "--embdim", "4", "--max-gen", "9", "--experiment", "bogus"]).is_err());
    }
}
