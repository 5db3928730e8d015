//! Literal-count analysis: recurrences predicting the complexity of
//! generated expressions, exact closed forms at powers of two, table
//! emission, and generator-vs-prediction cross-checks.
//!
//! All counts refer to the full square rhomboid. For a decomposition step
//! the literal count of a shape at size `n` is the sum over its component
//! subexpressions plus the step's own literals: one (`b_i`) for a
//! two-vertex split, four crossing edges for a one-vertex split. The
//! one-vertex recurrences mirror the generator's factoring policy exactly:
//! of the two subexpression pairs that would appear twice, the pair with
//! the smaller predicted total is the one duplicated.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::expr;
use crate::graph;
use crate::vdm::{self, Method, RhomboidFamily, ShapeClass, SubgraphSpec};

/// Largest size the prediction tables cover; counts stay far below 2^63
/// throughout this range.
pub const MAX_PREDICT_SIZE: u32 = 4096;

/// Predicted literal counts for the three shape classes at one size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityTriple {
    pub core: u64,
    pub leaf: u64,
    pub dipterous: u64,
}

impl ComplexityTriple {
    pub fn get(&self, class: ShapeClass) -> u64 {
        match class {
            ShapeClass::Core => self.core,
            ShapeClass::Leaf => self.leaf,
            ShapeClass::Dipterous => self.dipterous,
        }
    }
}

/// Errors from the analysis operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    /// Size outside `1..=MAX_PREDICT_SIZE`.
    InvalidSize(u32),
    /// Closed-form exponent outside the supported range.
    InvalidExponent(u32),
    /// A closed-form numerator was not divisible by 45; cannot happen for
    /// in-range exponents and exists only to avoid silent truncation.
    NonIntegralClosedForm(u32),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::InvalidSize(n) => {
                write!(f, "invalid size {n} (supported range 1..={MAX_PREDICT_SIZE})")
            }
            AnalysisError::InvalidExponent(k) => write!(f, "invalid exponent {k}"),
            AnalysisError::NonIntegralClosedForm(k) => {
                write!(f, "closed form at k={k} is not an integer")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AnalysisError {}

const CORE: usize = 0;
const LEAF: usize = 1;
const DIP: usize = 2;

/// Whether `method` generates a subgraph of this class and size by a
/// one-vertex split. Shared by the prediction table and the generator.
fn one_vertex_sizes(method: Method, class: usize, n: u32) -> bool {
    match method {
        Method::TwoVdm => false,
        Method::OneVdm => n >= 3,
        Method::Combined => n == 3 || (n == 5 && class == DIP),
    }
}

fn two_vertex_value(t: &[[u64; 3]], class: usize, n: u32) -> u64 {
    let hi = (n as usize).div_ceil(2);
    let lo = n as usize / 2;
    match class {
        CORE => t[hi][CORE] + t[lo][CORE] + 2 * t[hi][LEAF] + 2 * t[lo][LEAF] + 1,
        LEAF => t[hi][CORE] + t[lo][LEAF] + 2 * t[hi][LEAF] + 2 * t[lo][DIP] + 1,
        _ => t[hi][LEAF] + t[lo][LEAF] + 2 * t[hi][DIP] + 2 * t[lo][DIP] + 1,
    }
}

fn one_vertex_value(t: &[[u64; 3]], class: usize, n: u32) -> u64 {
    let lo = n as usize / 2;
    let hi = n as usize - lo;
    // `big` are the two through-the-vertex parts; `pair_*` the totals of
    // the source-side and sink-side crossing pairs.
    let (big, pair_src, pair_snk) = match class {
        CORE => (
            t[lo + 1][CORE] + t[hi][CORE],
            2 * t[lo][LEAF],
            2 * t[hi - 1][LEAF],
        ),
        LEAF => (
            t[lo + 1][CORE] + t[hi][LEAF],
            2 * t[lo][LEAF],
            2 * t[hi - 1][DIP],
        ),
        _ => (
            t[lo + 1][LEAF] + t[hi][LEAF],
            2 * t[lo][DIP],
            2 * t[hi - 1][DIP],
        ),
    };
    big + pair_src + pair_snk + pair_src.min(pair_snk) + 4
}

fn build_table(method: Method, n: u32) -> Result<Vec<[u64; 3]>, AnalysisError> {
    if n == 0 || n > MAX_PREDICT_SIZE {
        return Err(AnalysisError::InvalidSize(n));
    }
    let mut t = vec![[0u64; 3]; n as usize + 1];
    t[1] = [0, 1, 3];
    for m in 2..=n {
        for class in [CORE, LEAF, DIP] {
            t[m as usize][class] = if one_vertex_sizes(method, class, m) {
                one_vertex_value(&t, class, m)
            } else {
                two_vertex_value(&t, class, m)
            };
        }
    }
    Ok(t)
}

/// Predicted literal count for one shape class.
pub fn predict_shape(method: Method, class: ShapeClass, n: u32) -> Result<u64, AnalysisError> {
    let t = build_table(method, n)?;
    let idx = match class {
        ShapeClass::Core => CORE,
        ShapeClass::Leaf => LEAF,
        ShapeClass::Dipterous => DIP,
    };
    Ok(t[n as usize][idx])
}

/// Predicted literal counts for all three shape classes at size `n`.
pub fn predict(method: Method, n: u32) -> Result<ComplexityTriple, AnalysisError> {
    let t = build_table(method, n)?;
    let row = t[n as usize];
    Ok(ComplexityTriple { core: row[CORE], leaf: row[LEAF], dipterous: row[DIP] })
}

/// Exact closed forms of the two-vertex counts at `n = 2^k`:
///
/// ```text
/// T(n)  = 89/45 n^(log2 6) - 20/9 n^(log2 3) - 1/5
/// T^(n) = 89/45 n^(log2 6) -  5/9 n^(log2 3) - 1/5
/// T^^(n)= 89/45 n^(log2 6) + 10/9 n^(log2 3) - 1/5
/// ```
///
/// Evaluated exactly: `n^(log2 6) = 6^k`, `n^(log2 3) = 3^k`, all three as
/// rationals over the common denominator 45, with an integrality check.
pub fn closed_form_2vdm(k: u32) -> Result<ComplexityTriple, AnalysisError> {
    if k == 0 || k > 20 {
        return Err(AnalysisError::InvalidExponent(k));
    }
    let p6 = 6u128.pow(k);
    let p3 = 3u128.pow(k);
    let core_num = 89 * p6 - 100 * p3 - 9;
    let leaf_num = 89 * p6 - 25 * p3 - 9;
    let dip_num = 89 * p6 + 50 * p3 - 9;
    for num in [core_num, leaf_num, dip_num] {
        if num % 45 != 0 {
            return Err(AnalysisError::NonIntegralClosedForm(k));
        }
    }
    Ok(ComplexityTriple {
        core: (core_num / 45) as u64,
        leaf: (leaf_num / 45) as u64,
        dipterous: (dip_num / 45) as u64,
    })
}

/// A complexity table: one row per requested size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodTable {
    pub method: Method,
    pub rows: Vec<(u32, ComplexityTriple)>,
}

/// Predicts every requested size, in the given order.
pub fn emit_table(method: Method, sizes: &[u32]) -> Result<MethodTable, AnalysisError> {
    let rows = sizes
        .iter()
        .map(|&n| Ok((n, predict(method, n)?)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MethodTable { method, rows })
}

/// How a crosscheck row's equivalence was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceKind {
    Exact,
    Randomized,
    Skipped,
}

impl fmt::Display for EquivalenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivalenceKind::Exact => "exact",
            EquivalenceKind::Randomized => "randomized",
            EquivalenceKind::Skipped => "skipped",
        })
    }
}

/// One generator-vs-prediction comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckRow {
    pub method: Method,
    pub n: u32,
    pub shape: ShapeClass,
    pub predicted: u64,
    pub generated: u64,
    pub equivalence: EquivalenceKind,
    pub pass: bool,
}

/// A full crosscheck report. Failures are rows with `pass == false`, never
/// errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub method: Method,
    pub rows: Vec<CrosscheckRow>,
}

impl CrosscheckReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Knobs for [`crosscheck`] and [`verify_spec`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub expansion_bound: u64,
    pub trials: u32,
    pub seed: u64,
    pub modulus: u64,
    /// When false, crosscheck rows compare counts only.
    pub check_equivalence: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            expansion_bound: expr::DEFAULT_EXPANSION_BOUND,
            trials: expr::DEFAULT_TRIALS,
            seed: 0,
            modulus: expr::DEFAULT_MODULUS,
            check_equivalence: true,
        }
    }
}

/// Outcome of verifying one generated expression against the path oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub mode: EquivalenceKind,
    pub pass: bool,
    /// Filled in only when the exact check fails: the commutative-image
    /// verdict. A `true` here means the monomials were reordered, not
    /// miscounted.
    pub commutative_pass: Option<bool>,
}

fn randomized_check(
    g: &graph::StDag,
    src: crate::graph::VertexRef,
    dst: crate::graph::VertexRef,
    candidate: &expr::Expr,
    cfg: &VerifyConfig,
) -> Result<bool, graph::GraphError> {
    let mut labels = candidate.labels();
    labels.extend(graph::labels_between(g, src, dst)?);
    for t in 0..cfg.trials {
        let asg = expr::generate_assignment(
            labels.iter().copied(),
            cfg.modulus,
            cfg.seed.wrapping_add(t as u64),
        );
        let via_graph = graph::eval_paths_mod(g, src, dst, &asg)?;
        let via_expr = match expr::eval_mod(candidate, &asg) {
            Ok(v) => v,
            Err(_) => return Ok(false),
        };
        if via_graph != via_expr {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks a candidate expression against the canonical expression of the
/// subgraph. Exact monomial-multiset comparison when the canonical
/// expansion fits the bound, randomized modular comparison otherwise.
/// An exact failure also runs the randomized check so both verdicts can
/// be reported when they disagree.
pub fn verify_expression(
    spec: &SubgraphSpec,
    candidate: &expr::Expr,
    cfg: &VerifyConfig,
) -> Result<VerifyOutcome, graph::GraphError> {
    let g = spec.ambient_graph()?;
    let (src, dst) = (spec.src(), spec.dst());
    let oracle_symbols = graph::path_symbols(&g, src, dst)?;
    let oracle_monomials = graph::count_paths(&g, src, dst)?;

    if oracle_symbols + oracle_monomials <= cfg.expansion_bound as u128 {
        let paths = graph::enumerate_paths(&g, src, dst)?;
        let want = expr::MonomialMultiset::from_paths(paths.into_iter().map(|p| p.0));
        // A candidate that overflows the bound cannot expand to `want`,
        // which fits it.
        let pass = match expr::expand(candidate, cfg.expansion_bound) {
            Ok(got) => got == want,
            Err(expr::ExprError::ExpansionOverflow { .. }) => false,
            Err(expr::ExprError::AssignmentIncomplete(_)) => unreachable!(),
        };
        let commutative_pass = if pass {
            None
        } else {
            Some(randomized_check(&g, src, dst, candidate, cfg)?)
        };
        return Ok(VerifyOutcome { mode: EquivalenceKind::Exact, pass, commutative_pass });
    }

    let pass = randomized_check(&g, src, dst, candidate, cfg)?;
    Ok(VerifyOutcome { mode: EquivalenceKind::Randomized, pass, commutative_pass: None })
}

/// Verifies the generated expression for a spec/method pair.
pub fn verify_spec(
    spec: &SubgraphSpec,
    method: Method,
    cfg: &VerifyConfig,
) -> Result<VerifyOutcome, graph::GraphError> {
    let e = vdm::generate(spec, method).expect("validated spec generates");
    verify_expression(spec, &e, cfg)
}

/// For each size and shape class: generated literal count, predicted
/// count, and an oracle-equivalence verdict on the canonical
/// representative subgraph.
pub fn crosscheck(
    method: Method,
    sizes: &[u32],
    cfg: &VerifyConfig,
) -> Result<CrosscheckReport, AnalysisError> {
    let mut rows = Vec::new();
    for &n in sizes {
        let triple = predict(method, n)?;
        for class in [ShapeClass::Core, ShapeClass::Leaf, ShapeClass::Dipterous] {
            let spec = SubgraphSpec::canonical(RhomboidFamily::Fsr, class, n)
                .expect("canonical specs are valid");
            let e = vdm::generate(&spec, method).expect("validated spec generates");
            let generated = e.complexity();
            let predicted = triple.get(class);
            let (equivalence, equiv_pass) = if cfg.check_equivalence {
                let outcome = verify_expression(&spec, &e, cfg)
                    .expect("ambient graphs cover their spec");
                (outcome.mode, outcome.pass)
            } else {
                (EquivalenceKind::Skipped, true)
            };
            rows.push(CrosscheckRow {
                method,
                n,
                shape: class,
                predicted,
                generated,
                equivalence,
                pass: generated == predicted && equiv_pass,
            });
        }
    }
    Ok(CrosscheckReport { method, rows })
}
