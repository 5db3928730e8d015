//! Expression trees over edge labels: sums, products, the multiplicative
//! identity, and literals.
//!
//! The *complexity* of an expression is its literal-leaf count. Two
//! expressions are equivalent when they expand to the same multiset of
//! ordered monomials; products do not commute here because a monomial is a
//! walk of consecutive edge labels. The randomized check works in the
//! commutative image instead, evaluating both sides at seeded residues
//! modulo a large prime.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeLabel, Series};

/// Default modulus for randomized equivalence: the Mersenne prime 2^61 - 1.
pub const DEFAULT_MODULUS: u64 = (1 << 61) - 1;

/// Default ceiling on expansion work, in monomial symbols.
pub const DEFAULT_EXPANSION_BOUND: u64 = 10_000_000;

/// Default trial count for randomized equivalence.
pub const DEFAULT_TRIALS: u32 = 3;

/// An expression tree node.
///
/// Normalized form: no `Sum` directly inside `Sum`, no `Prod` directly
/// inside `Prod`, no `One` inside a `Prod`, and no single-child `Sum` or
/// `Prod`. The [`Expr::sum`] / [`Expr::prod`] constructors maintain these
/// invariants when their inputs are normalized; [`normalize`] repairs
/// arbitrary trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    One,
    Lit(EdgeLabel),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
}

impl Expr {
    pub fn lit(label: EdgeLabel) -> Expr {
        Expr::Lit(label)
    }

    /// Sum of terms, flattening nested sums and collapsing singletons.
    ///
    /// Panics on an empty term list: the algebra has no zero element.
    pub fn sum(terms: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(terms.len());
        for t in terms {
            match t {
                Expr::Sum(children) => flat.extend(children),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => panic!("sum of zero terms has no expression representation"),
            1 => flat.pop().unwrap(),
            _ => Expr::Sum(flat),
        }
    }

    /// Product of factors in order, flattening nested products and dropping
    /// identity factors. The empty product is [`Expr::One`].
    pub fn prod(factors: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(factors.len());
        for f in factors {
            match f {
                Expr::One => {}
                Expr::Prod(children) => flat.extend(children),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Expr::One,
            1 => flat.pop().unwrap(),
            _ => Expr::Prod(flat),
        }
    }

    /// Number of literal leaves. `One` contributes nothing.
    pub fn complexity(&self) -> u64 {
        let mut count = 0u64;
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                Expr::One => {}
                Expr::Lit(_) => count += 1,
                Expr::Sum(xs) | Expr::Prod(xs) => stack.extend(xs.iter()),
            }
        }
        count
    }

    /// Whether the normalized-form invariants hold.
    pub fn is_normalized(&self) -> bool {
        match self {
            Expr::One | Expr::Lit(_) => true,
            Expr::Sum(xs) => {
                xs.len() >= 2
                    && xs.iter().all(|x| !matches!(x, Expr::Sum(_)))
                    && xs.iter().all(Expr::is_normalized)
            }
            Expr::Prod(xs) => {
                xs.len() >= 2
                    && xs.iter().all(|x| !matches!(x, Expr::Prod(_) | Expr::One))
                    && xs.iter().all(Expr::is_normalized)
            }
        }
    }

    /// All labels occurring in the expression.
    pub fn labels(&self) -> BTreeSet<EdgeLabel> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                Expr::One => {}
                Expr::Lit(l) => {
                    out.insert(*l);
                }
                Expr::Sum(xs) | Expr::Prod(xs) => stack.extend(xs.iter()),
            }
        }
        out
    }
}

/// Rebuilds an arbitrary tree in normalized form. Literal order inside
/// products is preserved and complexity is unchanged.
pub fn normalize(e: &Expr) -> Expr {
    match e {
        Expr::One => Expr::One,
        Expr::Lit(l) => Expr::Lit(*l),
        Expr::Sum(xs) => Expr::sum(xs.iter().map(normalize).collect()),
        Expr::Prod(xs) => Expr::prod(xs.iter().map(normalize).collect()),
    }
}

/// Errors from expansion, evaluation and equivalence checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    /// Full distribution would exceed the configured symbol bound.
    ExpansionOverflow { bound: u64 },
    /// A literal of the expression has no residue in the assignment.
    AssignmentIncomplete(EdgeLabel),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::ExpansionOverflow { bound } => {
                write!(f, "expansion exceeds the bound of {bound} monomial symbols")
            }
            ExprError::AssignmentIncomplete(l) => {
                write!(f, "label {l} is missing from the assignment")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExprError {}

/// A multiset of ordered monomials (label sequences with multiplicities).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialMultiset {
    map: BTreeMap<Vec<EdgeLabel>, u64>,
}

impl MonomialMultiset {
    pub fn insert(&mut self, monomial: Vec<EdgeLabel>, multiplicity: u64) {
        if multiplicity > 0 {
            *self.map.entry(monomial).or_insert(0) += multiplicity;
        }
    }

    /// Number of distinct monomials.
    pub fn distinct_count(&self) -> usize {
        self.map.len()
    }

    /// Total monomial count, multiplicities included.
    pub fn total_count(&self) -> u128 {
        self.map.values().map(|&m| m as u128).sum()
    }

    pub fn multiplicity(&self, monomial: &[EdgeLabel]) -> u64 {
        self.map.get(monomial).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<EdgeLabel>, u64)> {
        self.map.iter().map(|(k, &v)| (k, v))
    }

    /// Cost in "monomial symbols": one per monomial plus one per label,
    /// multiplicities included. This is the unit of the expansion bound.
    pub fn symbol_cost(&self) -> u128 {
        self.map
            .iter()
            .map(|(k, &v)| (k.len() as u128 + 1) * v as u128)
            .sum()
    }

    /// Collects path label sequences into a multiset (the oracle side of
    /// exact equivalence checks).
    pub fn from_paths<I: IntoIterator<Item = Vec<EdgeLabel>>>(paths: I) -> Self {
        let mut out = MonomialMultiset::default();
        for p in paths {
            out.insert(p, 1);
        }
        out
    }

    /// Evaluates the multiset as a polynomial in the commutative image.
    pub fn eval_mod(&self, asg: &LabelAssignment) -> Result<u64, ExprError> {
        let m = asg.modulus() as u128;
        let mut acc: u128 = 0;
        for (mono, mult) in self.iter() {
            let mut term: u128 = mult as u128 % m;
            for l in mono {
                let r = asg.residue(*l).ok_or(ExprError::AssignmentIncomplete(*l))?;
                term = term * r as u128 % m;
            }
            acc = (acc + term) % m;
        }
        Ok(acc as u64)
    }
}

/// Distributes products over sums, preserving factor order. Fails once the
/// result would exceed `bound` monomial symbols.
pub fn expand(e: &Expr, bound: u64) -> Result<MonomialMultiset, ExprError> {
    let overflow = || ExprError::ExpansionOverflow { bound };
    match e {
        Expr::One => {
            let mut out = MonomialMultiset::default();
            out.insert(Vec::new(), 1);
            Ok(out)
        }
        Expr::Lit(l) => {
            let mut out = MonomialMultiset::default();
            out.insert(vec![*l], 1);
            Ok(out)
        }
        Expr::Sum(xs) => {
            let mut out = MonomialMultiset::default();
            let mut cost: u128 = 0;
            for x in xs {
                let part = expand(x, bound)?;
                cost += part.symbol_cost();
                if cost > bound as u128 {
                    return Err(overflow());
                }
                for (mono, mult) in part.map {
                    out.insert(mono, mult);
                }
            }
            Ok(out)
        }
        Expr::Prod(xs) => {
            let mut acc = MonomialMultiset::default();
            acc.insert(Vec::new(), 1);
            for x in xs {
                let part = expand(x, bound)?;
                // Size of the product, computed before materializing it:
                // every pair contributes len(a) + len(b) labels plus one.
                let combos = acc.total_count() * part.total_count();
                let labels = acc
                    .symbol_cost()
                    .saturating_sub(acc.total_count())
                    .saturating_mul(part.total_count())
                    + part
                        .symbol_cost()
                        .saturating_sub(part.total_count())
                        .saturating_mul(acc.total_count());
                if combos + labels > bound as u128 {
                    return Err(overflow());
                }
                let mut next = MonomialMultiset::default();
                for (m1, c1) in acc.iter() {
                    for (m2, c2) in part.iter() {
                        let mut mono = Vec::with_capacity(m1.len() + m2.len());
                        mono.extend_from_slice(m1);
                        mono.extend_from_slice(m2);
                        next.insert(mono, c1 * c2);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
    }
}

/// A deterministic seeded RNG (splitmix64). Used wherever reproducible
/// pseudo-random values are needed; all state comes from the seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `[1, modulus - 1]`; never zero.
    pub fn next_residue(&mut self, modulus: u64) -> u64 {
        debug_assert!(modulus >= 2);
        1 + self.next_u64() % (modulus - 1)
    }
}

/// A mapping from edge labels to nonzero residues modulo `modulus`.
#[derive(Debug, Clone)]
pub struct LabelAssignment {
    residues: BTreeMap<EdgeLabel, u64>,
    modulus: u64,
}

impl LabelAssignment {
    pub fn new(residues: BTreeMap<EdgeLabel, u64>, modulus: u64) -> Self {
        LabelAssignment { residues, modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self, label: EdgeLabel) -> Option<u64> {
        self.residues.get(&label).copied()
    }
}

/// Assigns every label a residue in `[1, modulus - 1]`, deterministically
/// from the seed. Labels are processed in their canonical `(series,
/// ordinal)` order, so equal label sets and seeds give equal assignments.
pub fn generate_assignment<I>(labels: I, modulus: u64, seed: u64) -> LabelAssignment
where
    I: IntoIterator<Item = EdgeLabel>,
{
    let sorted: BTreeSet<EdgeLabel> = labels.into_iter().collect();
    let mut rng = SplitMix64::new(seed);
    let residues = sorted
        .into_iter()
        .map(|l| (l, rng.next_residue(modulus)))
        .collect();
    LabelAssignment::new(residues, modulus)
}

/// Homomorphic evaluation: literals map to their residues, `One` to 1,
/// sums and products to modular sums and products.
pub fn eval_mod(e: &Expr, asg: &LabelAssignment) -> Result<u64, ExprError> {
    let m = asg.modulus() as u128;
    Ok(match e {
        Expr::One => (1 % m) as u64,
        Expr::Lit(l) => asg.residue(*l).ok_or(ExprError::AssignmentIncomplete(*l))?,
        Expr::Sum(xs) => {
            let mut acc: u128 = 0;
            for x in xs {
                acc = (acc + eval_mod(x, asg)? as u128) % m;
            }
            acc as u64
        }
        Expr::Prod(xs) => {
            let mut acc: u128 = 1 % m;
            for x in xs {
                acc = acc * eval_mod(x, asg)? as u128 % m;
            }
            acc as u64
        }
    })
}

/// How to decide equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivMode {
    /// Compare full expansions as multisets of ordered monomials.
    Exact { bound: u64 },
    /// Compare modular evaluations under `trials` assignments seeded
    /// `seed, seed+1, ...` (one-sided error, commutative image).
    Randomized { trials: u32, seed: u64, modulus: u64 },
}

/// Tests algebraic equivalence of two expressions.
pub fn equivalent(e1: &Expr, e2: &Expr, mode: EquivMode) -> Result<bool, ExprError> {
    match mode {
        EquivMode::Exact { bound } => Ok(expand(e1, bound)? == expand(e2, bound)?),
        EquivMode::Randomized { trials, seed, modulus } => {
            let mut labels = e1.labels();
            labels.extend(e2.labels());
            for t in 0..trials {
                let asg =
                    generate_assignment(labels.iter().copied(), modulus, seed.wrapping_add(t as u64));
                if eval_mod(e1, &asg)? != eval_mod(e2, &asg)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// Text round-trip
// ---------------------------------------------------------------------------

/// Renders an expression in the grammar accepted by [`parse`]. Products are
/// written with explicit `*`, sums inside products are parenthesized, and
/// ordinals are always written out (`b1`, never bare `b`).
pub fn render(e: &Expr) -> String {
    fn go(e: &Expr, out: &mut String, in_prod: bool) {
        use core::fmt::Write;
        match e {
            Expr::One => out.push('1'),
            Expr::Lit(l) => {
                let _ = write!(out, "{l}");
            }
            Expr::Sum(ts) => {
                if in_prod {
                    out.push('(');
                }
                for (k, t) in ts.iter().enumerate() {
                    if k > 0 {
                        out.push('+');
                    }
                    go(t, out, false);
                }
                if in_prod {
                    out.push(')');
                }
            }
            Expr::Prod(fs) => {
                for (k, f) in fs.iter().enumerate() {
                    if k > 0 {
                        out.push('*');
                    }
                    go(f, out, true);
                }
            }
        }
    }
    let mut out = String::new();
    go(e, &mut out, false);
    out
}

/// Parse failure kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    UnknownSeries(char),
    ZeroOrdinal,
    OrdinalOverflow,
    TrailingInput,
}

/// A syntax error with its byte position in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: ", self.position)?;
        match self.kind {
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnknownSeries(c) => {
                write!(f, "unknown label series '{c}' (expected a-g)")
            }
            ParseErrorKind::ZeroOrdinal => f.write_str("label ordinals start at 1"),
            ParseErrorKind::OrdinalOverflow => f.write_str("label ordinal too large"),
            ParseErrorKind::TrailingInput => f.write_str("trailing input after expression"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParseError {}

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }
}

/// Parses the grammar
///
/// ```text
/// sum     := product ('+' product)*
/// product := atom ('*' atom)*
/// atom    := label | '1' | '(' sum ')'
/// label   := [a-g] digits?        -- a bare letter means ordinal 1
/// ```
///
/// Juxtaposition is not multiplication; `*` is mandatory. Whitespace
/// between tokens is ignored. The result is normalized.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut c = Cursor { input, pos: 0 };
    let e = parse_sum(&mut c)?;
    c.skip_ws();
    if c.pos < input.len() {
        return Err(c.err(ParseErrorKind::TrailingInput));
    }
    Ok(e)
}

fn parse_sum(c: &mut Cursor<'_>) -> Result<Expr, ParseError> {
    let mut terms = vec![parse_product(c)?];
    loop {
        c.skip_ws();
        if c.peek() == Some('+') {
            c.bump();
            terms.push(parse_product(c)?);
        } else {
            return Ok(Expr::sum(terms));
        }
    }
}

fn parse_product(c: &mut Cursor<'_>) -> Result<Expr, ParseError> {
    let mut factors = vec![parse_atom(c)?];
    loop {
        c.skip_ws();
        if c.peek() == Some('*') {
            c.bump();
            factors.push(parse_atom(c)?);
        } else {
            return Ok(Expr::prod(factors));
        }
    }
}

fn parse_atom(c: &mut Cursor<'_>) -> Result<Expr, ParseError> {
    c.skip_ws();
    match c.peek() {
        None => Err(c.err(ParseErrorKind::UnexpectedEnd)),
        Some('(') => {
            c.bump();
            let e = parse_sum(c)?;
            c.skip_ws();
            match c.peek() {
                Some(')') => {
                    c.bump();
                    Ok(e)
                }
                Some(other) => Err(c.err(ParseErrorKind::UnexpectedChar(other))),
                None => Err(c.err(ParseErrorKind::UnexpectedEnd)),
            }
        }
        Some('1') => {
            c.bump();
            Ok(Expr::One)
        }
        Some(ch) if ch.is_ascii_alphabetic() => {
            let series = Series::from_letter(ch).ok_or(c.err(ParseErrorKind::UnknownSeries(ch)))?;
            c.bump();
            let digits_start = c.pos;
            let mut ordinal: u64 = 0;
            let mut have_digits = false;
            while let Some(d) = c.peek().and_then(|x| x.to_digit(10)) {
                have_digits = true;
                ordinal = ordinal * 10 + d as u64;
                if ordinal > u32::MAX as u64 {
                    return Err(ParseError {
                        position: digits_start,
                        kind: ParseErrorKind::OrdinalOverflow,
                    });
                }
                c.bump();
            }
            if !have_digits {
                ordinal = 1;
            } else if ordinal == 0 {
                return Err(ParseError {
                    position: digits_start,
                    kind: ParseErrorKind::ZeroOrdinal,
                });
            }
            Ok(Expr::lit(EdgeLabel::new(series, ordinal as u32)))
        }
        Some(ch) => Err(c.err(ParseErrorKind::UnexpectedChar(ch))),
    }
}
