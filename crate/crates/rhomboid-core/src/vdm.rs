//! Factored expression generation for square-rhomboid subgraphs by vertex
//! decomposition.
//!
//! Both methods split a subgraph so that every source-to-sink path passes
//! through exactly one of a small set of "gates", and recurse on the pieces:
//!
//! * **Two-vertex decomposition** splits through the upper and lower
//!   vertices of one column. Paths go through the upper vertex, the lower
//!   vertex, or the basic edge `b_i` between them: three gates, six
//!   subgraphs, one extra literal.
//! * **One-vertex decomposition** splits through one basic vertex `i`.
//!   Paths go through `i` or through one of the crossing edges `c_{i-1}`,
//!   `a_{i-1}` (plus `g_{i-1}`, `f_{i-1}` in the full family), and the
//!   subexpressions that would appear twice are factored out.
//! * The **combined** method runs the two-vertex scheme but generates every
//!   size-3 subgraph, and size-5 dipterous subgraphs, by the one-vertex
//!   scheme; those sizes are where the one-vertex expressions are shorter.
//!
//! Subgraph shapes: a *core* runs between two basic vertices; a
//! *single-leaf* shape has one endpoint on the upper or lower tier (four
//! orientations); a *dipterous* shape has both endpoints on tiers, either
//! the same one (parallelogram) or opposite ones (trapezoid).

use alloc::vec;
use core::fmt;

use crate::analysis;
use crate::expr::Expr;
use crate::graph::{self, label, GraphError, Series, StDag, Tier, VertexRef};

/// The rhomboid family a subgraph is cut from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhomboidFamily {
    Fsr,
    Sr,
}

impl RhomboidFamily {
    pub fn graph_family(self) -> graph::Family {
        match self {
            RhomboidFamily::Fsr => graph::Family::Fsr,
            RhomboidFamily::Sr => graph::Family::Sr,
        }
    }
}

impl fmt::Display for RhomboidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RhomboidFamily::Fsr => "fsr",
            RhomboidFamily::Sr => "sr",
        })
    }
}

/// Expression generation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    TwoVdm,
    OneVdm,
    Combined,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::TwoVdm => "2vdm",
            Method::OneVdm => "1vdm",
            Method::Combined => "combined",
        })
    }
}

/// Subgraph shape, orientation included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Core,
    LeafRightUp,
    LeafRightDown,
    LeafLeftUp,
    LeafLeftDown,
    DhatParallelogram,
    DhatTrapezoid,
}

impl Shape {
    pub fn class(self) -> ShapeClass {
        match self {
            Shape::Core => ShapeClass::Core,
            Shape::LeafRightUp
            | Shape::LeafRightDown
            | Shape::LeafLeftUp
            | Shape::LeafLeftDown => ShapeClass::Leaf,
            Shape::DhatParallelogram | Shape::DhatTrapezoid => ShapeClass::Dipterous,
        }
    }
}

/// Shape with orientation forgotten; the unit of complexity analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeClass {
    Core,
    Leaf,
    Dipterous,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeClass::Core => "core",
            ShapeClass::Leaf => "leaf",
            ShapeClass::Dipterous => "dipterous",
        })
    }
}

/// Errors from subgraph specification and generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VdmError {
    /// The (source, sink) pair does not name a rhomboid subgraph.
    InvalidSpec { src: VertexRef, dst: VertexRef, reason: &'static str },
    /// The subgraph is too small for the method to split.
    NoSplit { size: u32, method: Method },
    /// `base_expression` was asked for a multi-cell subgraph.
    NotABaseCase { size: u32 },
}

impl fmt::Display for VdmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VdmError::InvalidSpec { src, dst, reason } => {
                write!(f, "invalid subgraph {src}..{dst}: {reason}")
            }
            VdmError::NoSplit { size, method } => {
                write!(f, "size-{size} subgraphs are not split by {method}")
            }
            VdmError::NotABaseCase { size } => {
                write!(f, "size-{size} subgraph is not a single cell")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for VdmError {}

/// Names one subgraph of a (sufficiently large) rhomboid: the family plus
/// the source and sink vertices it runs between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubgraphSpec {
    family: RhomboidFamily,
    src: VertexRef,
    dst: VertexRef,
}

impl SubgraphSpec {
    pub fn new(
        family: RhomboidFamily,
        src: VertexRef,
        dst: VertexRef,
    ) -> Result<Self, VdmError> {
        let bad = |reason| Err(VdmError::InvalidSpec { src, dst, reason });
        if src.index < 1 || dst.index < 1 {
            return bad("vertex indices are 1-based");
        }
        let min_dst = match (src.tier, dst.tier) {
            (Tier::Basic, _) => src.index,
            (_, Tier::Basic) => src.index + 1,
            (_, _) => src.index + 1,
        };
        if dst.index < min_dst {
            return bad("sink precedes source");
        }
        Ok(SubgraphSpec { family, src, dst })
    }

    /// The canonical representative of a shape class at size `n`:
    /// `core(basic 1 .. basic n)`, `leaf(basic 1 .. upper n)`, or
    /// `dipterous(upper 1 .. upper n+1)`.
    pub fn canonical(family: RhomboidFamily, class: ShapeClass, n: u32) -> Result<Self, VdmError> {
        if n < 1 {
            return Err(VdmError::InvalidSpec {
                src: VertexRef::basic(1),
                dst: VertexRef::basic(n),
                reason: "size must be at least 1",
            });
        }
        let (src, dst) = match class {
            ShapeClass::Core => (VertexRef::basic(1), VertexRef::basic(n)),
            ShapeClass::Leaf => (VertexRef::basic(1), VertexRef::upper(n)),
            ShapeClass::Dipterous => (VertexRef::upper(1), VertexRef::upper(n + 1)),
        };
        SubgraphSpec::new(family, src, dst)
    }

    pub fn family(&self) -> RhomboidFamily {
        self.family
    }

    pub fn src(&self) -> VertexRef {
        self.src
    }

    pub fn dst(&self) -> VertexRef {
        self.dst
    }

    /// Number of basic vertices spanned.
    pub fn size(&self) -> u32 {
        span_size(self.src, self.dst)
    }

    pub fn shape(&self) -> Shape {
        match (self.src.tier, self.dst.tier) {
            (Tier::Basic, Tier::Basic) => Shape::Core,
            (Tier::Basic, Tier::Upper) => Shape::LeafRightUp,
            (Tier::Basic, Tier::Lower) => Shape::LeafRightDown,
            (Tier::Upper, Tier::Basic) => Shape::LeafLeftUp,
            (Tier::Lower, Tier::Basic) => Shape::LeafLeftDown,
            (Tier::Upper, Tier::Upper) | (Tier::Lower, Tier::Lower) => Shape::DhatParallelogram,
            (Tier::Upper, Tier::Lower) | (Tier::Lower, Tier::Upper) => Shape::DhatTrapezoid,
        }
    }

    /// The smallest rhomboid of the right family containing this subgraph.
    pub fn ambient_graph(&self) -> Result<StDag, GraphError> {
        let mut n = self.dst.index;
        if self.dst.tier != Tier::Basic {
            n += 1;
        }
        match self.family {
            RhomboidFamily::Fsr => graph::build_fsr(n),
            RhomboidFamily::Sr => graph::build_sr(n),
        }
    }
}

impl fmt::Display for SubgraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}..{}]", self.family, self.src, self.dst)
    }
}

/// Classification of a (source, sink) pair; see [`SubgraphSpec::shape`].
pub fn shape_of(spec: &SubgraphSpec) -> Shape {
    spec.shape()
}

fn span_size(src: VertexRef, dst: VertexRef) -> u32 {
    match (src.tier, dst.tier) {
        // Core and source-basic leaves span basic src..dst inclusive.
        (Tier::Basic, _) => dst.index - src.index + 1,
        // Tier sources span basic src+1..dst.
        (_, _) => dst.index - src.index,
    }
}

/// The decomposition vertex (or vertex pair) a method splits through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    /// Two-vertex method: the upper and lower vertices of one column.
    TwoVertex { upper: VertexRef, lower: VertexRef },
    /// One-vertex method: one basic vertex.
    OneVertex(VertexRef),
}

fn two_vdm_index(src: VertexRef, dst: VertexRef) -> u32 {
    let (p, q) = (src.index, dst.index);
    match (src.tier, dst.tier) {
        (Tier::Basic, Tier::Basic) => (p + q - 1) / 2,
        _ => (p + q) / 2,
    }
}

fn one_vdm_index(src: VertexRef, dst: VertexRef) -> u32 {
    let n = span_size(src, dst);
    match (src.tier, dst.tier) {
        (Tier::Basic, Tier::Basic) => src.index + n / 2,
        // Leaves: the core part sits at the leafless (basic) end.
        (Tier::Basic, _) => src.index + n / 2,
        (_, Tier::Basic) => dst.index - n / 2,
        // Dipterous: both big parts are leaves.
        (_, _) => src.index + n / 2 + 1,
    }
}

/// Where the named method would split this subgraph.
pub fn split_vertex(spec: &SubgraphSpec, method: Method) -> Result<Split, VdmError> {
    let n = spec.size();
    let no_split = || Err(VdmError::NoSplit { size: n, method });
    match method {
        Method::TwoVdm => {
            if n < 2 {
                return no_split();
            }
            let i = two_vdm_index(spec.src, spec.dst);
            Ok(Split::TwoVertex { upper: VertexRef::upper(i), lower: VertexRef::lower(i) })
        }
        Method::OneVdm => {
            if n < 3 {
                return no_split();
            }
            Ok(Split::OneVertex(VertexRef::basic(one_vdm_index(spec.src, spec.dst))))
        }
        Method::Combined => {
            if one_vdm_triggers(Method::Combined, spec.src, spec.dst) {
                Ok(Split::OneVertex(VertexRef::basic(one_vdm_index(spec.src, spec.dst))))
            } else {
                split_vertex(spec, Method::TwoVdm)
            }
        }
    }
}

/// Direct template for a size-1 (single-cell) subgraph: a single diagonal
/// for the leaves, the two-path cell for the dipterous shapes, the empty
/// product for a one-vertex core. In the plain square rhomboid the
/// trapezoid cells lose their crossing-edge term.
pub fn base_expression(spec: &SubgraphSpec) -> Result<Expr, VdmError> {
    if spec.size() > 1 {
        return Err(VdmError::NotABaseCase { size: spec.size() });
    }
    Ok(base_cell(spec.family, spec.src, spec.dst))
}

fn base_cell(family: RhomboidFamily, src: VertexRef, dst: VertexRef) -> Expr {
    let p = src.index;
    let fsr = family == RhomboidFamily::Fsr;
    match (src.tier, dst.tier) {
        (Tier::Basic, Tier::Basic) => Expr::One,
        (Tier::Basic, Tier::Upper) => Expr::lit(label(Series::E, 2 * p - 1)),
        (Tier::Basic, Tier::Lower) => Expr::lit(label(Series::D, 2 * p - 1)),
        (Tier::Upper, Tier::Basic) => Expr::lit(label(Series::E, 2 * p)),
        (Tier::Lower, Tier::Basic) => Expr::lit(label(Series::D, 2 * p)),
        (Tier::Upper, Tier::Upper) => Expr::sum(vec![
            Expr::lit(label(Series::C, p)),
            Expr::prod(vec![
                Expr::lit(label(Series::E, 2 * p)),
                Expr::lit(label(Series::E, 2 * p + 1)),
            ]),
        ]),
        (Tier::Lower, Tier::Lower) => Expr::sum(vec![
            Expr::lit(label(Series::A, p)),
            Expr::prod(vec![
                Expr::lit(label(Series::D, 2 * p)),
                Expr::lit(label(Series::D, 2 * p + 1)),
            ]),
        ]),
        (Tier::Upper, Tier::Lower) => {
            let through = Expr::prod(vec![
                Expr::lit(label(Series::E, 2 * p)),
                Expr::lit(label(Series::D, 2 * p + 1)),
            ]);
            if fsr {
                Expr::sum(vec![through, Expr::lit(label(Series::G, p))])
            } else {
                through
            }
        }
        (Tier::Lower, Tier::Upper) => {
            let through = Expr::prod(vec![
                Expr::lit(label(Series::D, 2 * p)),
                Expr::lit(label(Series::E, 2 * p + 1)),
            ]);
            if fsr {
                Expr::sum(vec![through, Expr::lit(label(Series::F, p))])
            } else {
                through
            }
        }
    }
}

/// Generates the factored expression for a subgraph by the given method.
///
/// The result is normalized, algebraically equivalent to the canonical
/// expression of the subgraph, and its literal count agrees with the
/// complexity recurrences in [`crate::analysis`].
pub fn generate(spec: &SubgraphSpec, method: Method) -> Result<Expr, VdmError> {
    Ok(gen(spec.family, spec.src, spec.dst, method))
}

fn one_vdm_triggers(method: Method, src: VertexRef, dst: VertexRef) -> bool {
    let n = span_size(src, dst);
    match method {
        Method::TwoVdm => false,
        Method::OneVdm => n >= 3,
        Method::Combined => {
            let dipterous = src.tier != Tier::Basic && dst.tier != Tier::Basic;
            n == 3 || (n == 5 && dipterous)
        }
    }
}

fn gen(family: RhomboidFamily, src: VertexRef, dst: VertexRef, method: Method) -> Expr {
    if one_vdm_triggers(method, src, dst) {
        one_vertex_step(family, src, dst, method)
    } else {
        two_vertex_step(family, src, dst, method)
    }
}

/// One two-vertex split: through the basic edge `b_i`, the upper vertex
/// `i`, or the lower vertex `i`. Single-cell spans are emitted directly.
fn two_vertex_step(family: RhomboidFamily, src: VertexRef, dst: VertexRef, method: Method) -> Expr {
    let single_cell = match (src.tier, dst.tier) {
        (Tier::Basic, _) => dst.index == src.index,
        (_, _) => dst.index == src.index + 1,
    };
    if single_cell {
        return base_cell(family, src, dst);
    }
    let i = two_vdm_index(src, dst);
    let through_basic = Expr::prod(vec![
        gen(family, src, VertexRef::basic(i), method),
        Expr::lit(label(Series::B, i)),
        gen(family, VertexRef::basic(i + 1), dst, method),
    ]);
    let through_upper = Expr::prod(vec![
        gen(family, src, VertexRef::upper(i), method),
        gen(family, VertexRef::upper(i), dst, method),
    ]);
    let through_lower = Expr::prod(vec![
        gen(family, src, VertexRef::lower(i), method),
        gen(family, VertexRef::lower(i), dst, method),
    ]);
    Expr::sum(vec![through_basic, through_upper, through_lower])
}

/// One one-vertex split through basic vertex `i`. In the full family the
/// four crossing edges produce pairs of subexpressions that appear twice;
/// the cheaper pair (by predicted complexity) is the one left duplicated,
/// with ties going to the sink side.
fn one_vertex_step(family: RhomboidFamily, src: VertexRef, dst: VertexRef, method: Method) -> Expr {
    let i = one_vdm_index(src, dst);
    let through = Expr::prod(vec![
        gen(family, src, VertexRef::basic(i), method),
        gen(family, VertexRef::basic(i), dst, method),
    ]);
    let left_up = gen(family, src, VertexRef::upper(i - 1), method);
    let left_low = gen(family, src, VertexRef::lower(i - 1), method);
    let right_up = gen(family, VertexRef::upper(i), dst, method);
    let right_low = gen(family, VertexRef::lower(i), dst, method);
    let c = Expr::lit(label(Series::C, i - 1));
    let a = Expr::lit(label(Series::A, i - 1));

    if family == RhomboidFamily::Sr {
        return Expr::sum(vec![
            through,
            Expr::prod(vec![left_up, c, right_up]),
            Expr::prod(vec![left_low, a, right_low]),
        ]);
    }

    let g = Expr::lit(label(Series::G, i - 1));
    let f = Expr::lit(label(Series::F, i - 1));
    let left_class = pair_class(src.tier);
    let right_class = pair_class(dst.tier);
    let left_total = 2 * predict_pair(method, left_class, span_size(src, VertexRef::upper(i - 1)));
    let right_total = 2 * predict_pair(method, right_class, span_size(VertexRef::upper(i), dst));

    if left_total < right_total {
        // Duplicate the source-side pair; right subexpressions factored out.
        Expr::sum(vec![
            through,
            Expr::prod(vec![
                Expr::sum(vec![
                    Expr::prod(vec![left_up.clone(), c]),
                    Expr::prod(vec![left_low.clone(), f]),
                ]),
                right_up,
            ]),
            Expr::prod(vec![
                Expr::sum(vec![Expr::prod(vec![left_up, g]), Expr::prod(vec![left_low, a])]),
                right_low,
            ]),
        ])
    } else {
        // Duplicate the sink-side pair; left subexpressions factored out.
        Expr::sum(vec![
            through,
            Expr::prod(vec![
                left_up,
                Expr::sum(vec![
                    Expr::prod(vec![c, right_up.clone()]),
                    Expr::prod(vec![g, right_low.clone()]),
                ]),
            ]),
            Expr::prod(vec![
                left_low,
                Expr::sum(vec![Expr::prod(vec![a, right_low]), Expr::prod(vec![f, right_up])]),
            ]),
        ])
    }
}

fn pair_class(endpoint: Tier) -> ShapeClass {
    if endpoint == Tier::Basic {
        ShapeClass::Leaf
    } else {
        ShapeClass::Dipterous
    }
}

/// Predicted complexity of one member of a crossing pair; both members of
/// a pair share a class and size (parallelogram and trapezoid complexities
/// are equal), so the pair total is twice this.
fn predict_pair(method: Method, class: ShapeClass, size: u32) -> u64 {
    analysis::predict_shape(method, class, size)
        .expect("pair sizes stay within the prediction range")
}
