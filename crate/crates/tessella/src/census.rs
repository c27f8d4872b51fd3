//! Tile counts and areas of tiling splittings, as exact linear forms.
//!
//! A splitting cuts a `{p,q}` tiling into finitely many sectors spanned by
//! substitution trees, so its tile total is a small linear combination of
//! the observable totals `W = U_η` and `W1 = U_{η−1}` (and, for the
//! r-augmented split, of the sector totals `BR`/`WR` at depth `η−r`).  This
//! module builds those combinations symbolically over [`LinearForm`] and
//! evaluates them exactly at a budget, emits the JSON census report, and
//! carries the cross-tiling area relations and the ball/ring bookkeeping.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::grossone::Budget;
use crate::sequences::{defect_area, Family, RecurrenceSpec, SequenceError};
use crate::Mode;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("{{{p},{q}}} is not a hyperbolic tiling: (p-2)(q-2) must exceed 4")]
    NotHyperbolic { p: u32, q: u32 },
    #[error("radius {r} exceeds the observable height {eta}")]
    RadiusExceedsHeight { r: u64, eta: u64 },
    #[error("invalid splitting scheme: {0}")]
    InvalidScheme(String),
    #[error("concrete mode requires a budget")]
    MissingBudget,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Symbols a census form may mention.  `Unit` is the constant term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    W,
    W1,
    Br,
    Wr,
    Unit,
}

impl Symbol {
    fn name(self) -> &'static str {
        match self {
            Symbol::W => "W",
            Symbol::W1 => "W1",
            Symbol::Br => "BR",
            Symbol::Wr => "WR",
            Symbol::Unit => "",
        }
    }
}

/// What a form measures: tiles, or area in units of the right angle `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormUnit {
    Count,
    AreaD,
}

/// An exact linear combination of census symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    unit: FormUnit,
    coeffs: BTreeMap<Symbol, BigRational>,
}

impl LinearForm {
    pub fn zero(unit: FormUnit) -> Self {
        LinearForm {
            unit,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(unit: FormUnit, value: BigRational) -> Self {
        LinearForm::term(unit, Symbol::Unit, value)
    }

    pub fn term(unit: FormUnit, symbol: Symbol, coefficient: BigRational) -> Self {
        let mut out = LinearForm::zero(unit);
        out.put(symbol, coefficient);
        out
    }

    fn put(&mut self, symbol: Symbol, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(symbol).or_insert_with(BigRational::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.coeffs.remove(&symbol);
        }
    }

    pub fn unit(&self) -> FormUnit {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, symbol: Symbol) -> BigRational {
        self.coeffs.get(&symbol).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        assert_eq!(self.unit, other.unit, "cannot add forms of different units");
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.put(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> LinearForm {
        if factor.is_zero() {
            return LinearForm::zero(self.unit);
        }
        LinearForm {
            unit: self.unit,
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, c * factor)).collect(),
        }
    }

    /// Turns a tile count into an area by the per-tile area in units of `d`.
    pub fn scale_to_area(&self, per_tile: &BigRational) -> LinearForm {
        assert_eq!(self.unit, FormUnit::Count, "only counts scale to areas");
        let mut out = self.scale(per_tile);
        out.unit = FormUnit::AreaD;
        out
    }

    /// Exact value under a symbol assignment.
    pub fn evaluate(&self, bindings: &SymbolBindings) -> BigRational {
        let mut total = BigRational::zero();
        for (symbol, coefficient) in &self.coeffs {
            let value = match symbol {
                Symbol::W => &bindings.w,
                Symbol::W1 => &bindings.w1,
                Symbol::Br => &bindings.br,
                Symbol::Wr => &bindings.wr,
                Symbol::Unit => {
                    total += coefficient;
                    continue;
                }
            };
            total += coefficient * value;
        }
        total
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (symbol, coefficient)) in self.coeffs.iter().enumerate() {
            if i == 0 {
                if coefficient.is_negative() {
                    write!(f, "-")?;
                }
            } else if coefficient.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coefficient.abs();
            if *symbol == Symbol::Unit {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", symbol.name())?;
            } else {
                write!(f, "{magnitude}*{}", symbol.name())?;
            }
        }
        Ok(())
    }
}

/// Exact values for the census symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolBindings {
    pub w: BigRational,
    pub w1: BigRational,
    pub br: BigRational,
    pub wr: BigRational,
}

impl Default for SymbolBindings {
    fn default() -> Self {
        SymbolBindings {
            w: BigRational::zero(),
            w1: BigRational::zero(),
            br: BigRational::zero(),
            wr: BigRational::zero(),
        }
    }
}

/// Exact area of the regular `{p,q}` cell, in units of the right angle `d`:
/// the angle defect `2(p−2) − 4p/q`.
pub fn polygon_area(p: u32, q: u32) -> Result<BigRational, CensusError> {
    if p < 3 || q < 3 || (p as u64 - 2) * (q as u64 - 2) <= 4 {
        return Err(CensusError::NotHyperbolic { p, q });
    }
    Ok(defect_area(p, q))
}

/// Which tiling a splitting lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TilingFamily {
    /// `{5,4}`.
    Penta,
    /// `{7,3}`.
    Hepta,
    /// `{p,4}`, `p ≥ 5`.
    P4,
    /// `{p+2,3}` paired with `{p,4}`; stores the pair's `p`.
    P23,
    /// `{p,q}` with even `q`.
    PqEven,
    /// `{p,q}` with odd `q`, first variant.
    PqOddV1,
    /// `{p,q}` with odd `q`, second variant.
    PqOddV2,
}

impl TilingFamily {
    pub fn tag(self) -> &'static str {
        match self {
            TilingFamily::Penta => "penta",
            TilingFamily::Hepta => "hepta",
            TilingFamily::P4 => "p4",
            TilingFamily::P23 => "p23",
            TilingFamily::PqEven => "pq_even",
            TilingFamily::PqOddV1 => "pq_odd_v1",
            TilingFamily::PqOddV2 => "pq_odd_v2",
        }
    }
}

/// How the tiling is split into tree-spanned sectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    Even,
    Odd,
    /// Odd splitting re-centered on the ball of radius `r`.
    OddR(u64),
}

impl Splitting {
    pub fn tag(self) -> &'static str {
        match self {
            Splitting::Even => "even",
            Splitting::Odd => "odd",
            Splitting::OddR(_) => "odd_r",
        }
    }
}

/// A validated splitting of one tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplittingScheme {
    family: TilingFamily,
    p: u32,
    q: u32,
    splitting: Splitting,
}

impl SplittingScheme {
    pub fn new(
        family: TilingFamily,
        p: u32,
        q: u32,
        splitting: Splitting,
    ) -> Result<Self, CensusError> {
        let invalid = |msg: String| Err(CensusError::InvalidScheme(msg));
        if matches!(splitting, Splitting::OddR(_))
            && !matches!(family, TilingFamily::Penta | TilingFamily::Hepta)
        {
            return invalid("the r-augmented splitting is defined on penta and hepta only".into());
        }
        match family {
            TilingFamily::Penta => {
                if (p, q) != (5, 4) {
                    return invalid(format!("penta is {{5,4}}, got {{{p},{q}}}"));
                }
            }
            TilingFamily::Hepta => {
                if (p, q) != (7, 3) {
                    return invalid(format!("hepta is {{7,3}}, got {{{p},{q}}}"));
                }
            }
            TilingFamily::P4 => {
                if q != 4 || p < 5 {
                    return invalid(format!("p4 needs p ≥ 5 on q = 4, got {{{p},{q}}}"));
                }
            }
            TilingFamily::P23 => {
                if q != 3 || p < 5 {
                    return invalid(format!(
                        "p23 stores the paired p ≥ 5 and q = 3, got {{{p},{q}}}"
                    ));
                }
            }
            TilingFamily::PqEven => {
                RecurrenceSpec::new(Family::PqEven, p, q)?;
            }
            TilingFamily::PqOddV1 => {
                RecurrenceSpec::new(Family::PqOddV1, p, q)?;
            }
            TilingFamily::PqOddV2 => {
                RecurrenceSpec::new(Family::PqOddV2, p, q)?;
            }
        }
        Ok(SplittingScheme {
            family,
            p,
            q,
            splitting,
        })
    }

    pub fn penta(splitting: Splitting) -> Self {
        Self::new(TilingFamily::Penta, 5, 4, splitting).expect("penta schemes are valid")
    }

    pub fn hepta(splitting: Splitting) -> Self {
        Self::new(TilingFamily::Hepta, 7, 3, splitting).expect("hepta schemes are valid")
    }

    pub fn p4(p: u32, splitting: Splitting) -> Result<Self, CensusError> {
        Self::new(TilingFamily::P4, p, 4, splitting)
    }

    pub fn p23(p: u32, splitting: Splitting) -> Result<Self, CensusError> {
        Self::new(TilingFamily::P23, p, 3, splitting)
    }

    pub fn family(&self) -> TilingFamily {
        self.family
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn splitting(&self) -> Splitting {
        self.splitting
    }

    /// The `{p,q}` actually tiled (P23 tiles `{p+2,3}`).
    pub fn tiling(&self) -> (u32, u32) {
        match self.family {
            TilingFamily::P23 => (self.p + 2, 3),
            _ => (self.p, self.q),
        }
    }

    /// Per-tile area in units of `d`.
    pub fn polygon_area(&self) -> BigRational {
        let (p, q) = self.tiling();
        polygon_area(p, q).expect("validated schemes are hyperbolic")
    }

    /// `h = ⌊q/2⌋` of the scheme's `q`.
    fn h(&self) -> i64 {
        (self.q / 2) as i64
    }

    /// The recurrence whose cumulative totals drive this scheme's counts.
    pub fn recurrence(&self) -> RecurrenceSpec {
        let spec = match self.family {
            TilingFamily::Penta | TilingFamily::Hepta => {
                RecurrenceSpec::new(Family::P4Standard, 5, 4)
            }
            TilingFamily::P4 | TilingFamily::P23 => {
                RecurrenceSpec::new(Family::P4Standard, self.p, 4)
            }
            TilingFamily::PqEven => RecurrenceSpec::new(Family::PqEven, self.p, self.q),
            TilingFamily::PqOddV1 => RecurrenceSpec::new(Family::PqOddV1, self.p, self.q),
            TilingFamily::PqOddV2 => RecurrenceSpec::new(Family::PqOddV2, self.p, self.q),
        };
        spec.expect("validated schemes have valid recurrences")
    }

    /// True when the counts consume `W1` as well as `W`.
    pub fn uses_w1(&self) -> bool {
        self.family == TilingFamily::PqOddV2
    }
}

/// `f_n` with `f_0 = f_1 = 1` and `f_{−1} = 0`.
fn fib(n: i64) -> BigInt {
    RecurrenceSpec::new(Family::Fib, 5, 4)
        .expect("the Fibonacci family is fixed")
        .term(n)
}

/// The tile count of a splitting, over the census symbols.
pub fn tile_count_symbolic(scheme: &SplittingScheme) -> LinearForm {
    use TilingFamily::*;
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let w = |v: i64| LinearForm::term(FormUnit::Count, Symbol::W, int(v));
    let unit = |v: i64| LinearForm::constant(FormUnit::Count, int(v));
    match (scheme.family, scheme.splitting) {
        (Penta | Hepta, Splitting::OddR(r)) => {
            r_augmented_form(BallFamily::of(scheme.family), r)
        }
        (_, Splitting::OddR(_)) => {
            unreachable!("constructor rejects r-augmented outside penta/hepta")
        }
        (Penta, Splitting::Even) => w(4),
        (Penta, Splitting::Odd) => w(5).add(&unit(1)),
        (Hepta, _) => w(7).add(&unit(1)),
        (P4, Splitting::Even) => w(4),
        (P4, Splitting::Odd) => w(scheme.p as i64).add(&unit(1)),
        (P23, _) => w(scheme.p as i64 + 2).add(&unit(1)),
        (PqEven | PqOddV1, Splitting::Even) => w(scheme.q as i64),
        (PqEven | PqOddV1, Splitting::Odd) => {
            w(scheme.p as i64 * (scheme.h() - 1)).add(&unit(1))
        }
        (PqOddV2, Splitting::Even) => {
            let c = int(scheme.q as i64);
            LinearForm::term(FormUnit::Count, Symbol::W, c.clone())
                .add(&LinearForm::term(FormUnit::Count, Symbol::W1, c))
        }
        (PqOddV2, Splitting::Odd) => {
            let c = int(scheme.p as i64 * (scheme.h() - 1));
            LinearForm::term(FormUnit::Count, Symbol::W, c.clone())
                .add(&LinearForm::term(FormUnit::Count, Symbol::W1, c))
                .add(&unit(1))
        }
    }
}

/// The total area of a splitting, in units of `d`.
pub fn area_total_symbolic(scheme: &SplittingScheme) -> LinearForm {
    tile_count_symbolic(scheme).scale_to_area(&scheme.polygon_area())
}

/// Observable height and totals of a scheme's recurrence at a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub eta: u64,
    pub w: BigInt,
    pub w1: BigInt,
    /// Set when `η = 0`, where `W1` degenerates to the empty total 0.
    pub w1_degenerate: bool,
}

pub fn height_report(
    scheme: &SplittingScheme,
    budget: &Budget,
) -> Result<HeightReport, CensusError> {
    let (eta, w, w1) = scheme.recurrence().height_scan(budget)?;
    Ok(HeightReport {
        eta,
        w,
        w1,
        w1_degenerate: eta == 0,
    })
}

/// The exact tile count of a splitting at a budget, by direct integer
/// arithmetic (no symbolic detour — the coherence of the two routes is a
/// test target).
pub fn tile_count_concrete(
    scheme: &SplittingScheme,
    budget: &Budget,
) -> Result<BigInt, CensusError> {
    use TilingFamily::*;
    if let Splitting::OddR(r) = scheme.splitting {
        return Ok(r_augmented(BallFamily::of(scheme.family), r, budget)?.tiles);
    }
    let heights = height_report(scheme, budget)?;
    let w = heights.w;
    Ok(match (scheme.family, scheme.splitting) {
        (Penta, Splitting::Even) => 4 * w,
        (Penta, Splitting::Odd) => 5 * w + 1,
        (Hepta, _) => 7 * w + 1,
        (P4, Splitting::Even) => 4 * w,
        (P4, Splitting::Odd) => scheme.p as i64 * w + 1,
        (P23, _) => (scheme.p as i64 + 2) * w + 1,
        (PqEven | PqOddV1, Splitting::Even) => scheme.q as i64 * w,
        (PqEven | PqOddV1, Splitting::Odd) => scheme.p as i64 * (scheme.h() - 1) * w + 1,
        (PqOddV2, Splitting::Even) => scheme.q as i64 * (w + heights.w1),
        (PqOddV2, Splitting::Odd) => {
            scheme.p as i64 * (scheme.h() - 1) * (w + heights.w1) + 1
        }
        (_, Splitting::OddR(_)) => unreachable!("handled above"),
    })
}

pub fn area_total_concrete(
    scheme: &SplittingScheme,
    budget: &Budget,
) -> Result<BigRational, CensusError> {
    Ok(BigRational::from_integer(tile_count_concrete(scheme, budget)?) * scheme.polygon_area())
}

/// Symbol values realizing a scheme at a budget, for evaluating forms.
pub fn bindings_at(
    scheme: &SplittingScheme,
    budget: &Budget,
) -> Result<SymbolBindings, CensusError> {
    let heights = height_report(scheme, budget)?;
    let mut bindings = SymbolBindings {
        w: BigRational::from_integer(heights.w),
        w1: BigRational::from_integer(heights.w1),
        ..SymbolBindings::default()
    };
    if let Splitting::OddR(r) = scheme.splitting {
        let sectors = r_augmented(BallFamily::of(scheme.family), r, budget)?;
        bindings.br = BigRational::from_integer(sectors.br);
        bindings.wr = BigRational::from_integer(sectors.wr);
    }
    Ok(bindings)
}

/// The two tilings with ball formulas: `{5,4}` and `{7,3}`.  Both are
/// spanned by the pentagonal trees; they differ in the first-ring size `n₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BallFamily {
    Penta,
    Hepta,
}

impl BallFamily {
    fn of(family: TilingFamily) -> Self {
        match family {
            TilingFamily::Penta => BallFamily::Penta,
            TilingFamily::Hepta => BallFamily::Hepta,
            other => unreachable!("no ball family for {other:?}"),
        }
    }

    pub fn n0(self) -> i64 {
        match self {
            BallFamily::Penta => 5,
            BallFamily::Hepta => 7,
        }
    }

    pub fn tiling(self) -> (u32, u32) {
        match self {
            BallFamily::Penta => (5, 4),
            BallFamily::Hepta => (7, 3),
        }
    }

    pub fn scheme(self, splitting: Splitting) -> SplittingScheme {
        match self {
            BallFamily::Penta => SplittingScheme::penta(splitting),
            BallFamily::Hepta => SplittingScheme::hepta(splitting),
        }
    }
}

/// Tiles within distance `r` of the central tile: `n₀(f_{2r} − 1) + 1`.
pub fn ball(family: BallFamily, r: u64) -> BigInt {
    family.n0() * (fib(2 * r as i64) - 1) + 1
}

/// The variant ball count `n₀·f_{2r−1} + 1` that circulates alongside the
/// adopted one; they agree up to `r = 1` and split at `r = 2`.  Kept for
/// comparison — the disk oracle adjudicates.
pub fn ball_text_variant(family: BallFamily, r: u64) -> BigInt {
    family.n0() * fib(2 * r as i64 - 1) + 1
}

/// `(ring, border)` at distance `r ≥ 1`: the tiles at exactly distance `r`,
/// and the tiles fencing the ball from outside (`= ring(r+1)`).
pub fn ring_and_border(family: BallFamily, r: u64) -> (BigInt, BigInt) {
    assert!(r >= 1, "rings start at r = 1");
    (
        family.n0() * fib(2 * r as i64 - 1),
        family.n0() * fib(2 * r as i64 + 1),
    )
}

/// The r-augmented census at a budget: sector totals at depth `η − r` and
/// the assembled count/area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RAugmentedCensus {
    pub family: BallFamily,
    pub r: u64,
    pub eta: u64,
    /// Total of one black-rooted sector tree of height `η − r`.
    pub br: BigInt,
    /// Total of one white-rooted sector tree of height `η − r`.
    pub wr: BigInt,
    pub tiles: BigInt,
    pub area_d: BigRational,
}

/// Count form of the r-augmented splitting:
/// `n₀f_{2r−1}·BR + n₀f_{2r}·WR + n₀(f_{2r} − 1) + 1`.
pub fn r_augmented_form(family: BallFamily, r: u64) -> LinearForm {
    let n0 = BigRational::from_integer(BigInt::from(family.n0()));
    let r = r as i64;
    let f_prev = BigRational::from_integer(fib(2 * r - 1));
    let f_cur = BigRational::from_integer(fib(2 * r));
    LinearForm::term(FormUnit::Count, Symbol::Br, &n0 * f_prev)
        .add(&LinearForm::term(FormUnit::Count, Symbol::Wr, &n0 * &f_cur))
        .add(&LinearForm::constant(
            FormUnit::Count,
            &n0 * (f_cur - BigRational::one()) + BigRational::one(),
        ))
}

pub fn r_augmented(
    family: BallFamily,
    r: u64,
    budget: &Budget,
) -> Result<RAugmentedCensus, CensusError> {
    let standard = RecurrenceSpec::new(Family::P4Standard, 5, 4)?;
    let smaller = RecurrenceSpec::new(Family::P4Smaller, 5, 4)?;
    let eta = standard.eta(budget)?;
    if r > eta {
        return Err(CensusError::RadiusExceedsHeight { r, eta });
    }
    let depth = (eta - r) as i64;
    let br = smaller.cumulative(depth);
    let wr = standard.cumulative(depth);
    let n0 = BigInt::from(family.n0());
    let r_i = r as i64;
    let one = BigInt::one();
    let f_prev = fib(2 * r_i - 1);
    let f_cur = fib(2 * r_i);
    let tiles = &n0 * &f_prev * &br + &n0 * &f_cur * &wr + &n0 * (&f_cur - &one) + &one;
    let (p, q) = family.tiling();
    let area_d = BigRational::from_integer(tiles.clone())
        * polygon_area(p, q).expect("ball tilings are hyperbolic");
    Ok(RAugmentedCensus {
        family,
        r,
        eta,
        br,
        wr,
        tiles,
        area_d,
    })
}

/// The paired tilings whose areas satisfy `H − P_e = 2(P_o − H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationPair {
    /// `{5,4}` against `{7,3}`.
    PentaHepta,
    /// `{p,4}` against `{p+2,3}`.
    P4P23 { p: u32 },
}

impl RelationPair {
    fn schemes(
        self,
    ) -> Result<(SplittingScheme, SplittingScheme, SplittingScheme), CensusError> {
        match self {
            RelationPair::PentaHepta => Ok((
                SplittingScheme::penta(Splitting::Even),
                SplittingScheme::penta(Splitting::Odd),
                SplittingScheme::hepta(Splitting::Odd),
            )),
            RelationPair::P4P23 { p } => Ok((
                SplittingScheme::p4(p, Splitting::Even)?,
                SplittingScheme::p4(p, Splitting::Odd)?,
                SplittingScheme::p23(p, Splitting::Odd)?,
            )),
        }
    }
}

/// The three areas of a relation pair and their differences, symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationForms {
    pub even_area: LinearForm,
    pub odd_area: LinearForm,
    pub paired_area: LinearForm,
    pub paired_minus_even: LinearForm,
    pub odd_minus_paired: LinearForm,
    /// `(paired − even) − 2(odd − paired)`; identically zero when the
    /// relation holds.
    pub residual: LinearForm,
}

pub fn relation_residual(pair: RelationPair) -> Result<RelationForms, CensusError> {
    let (even, odd, paired) = pair.schemes()?;
    let even_area = area_total_symbolic(&even);
    let odd_area = area_total_symbolic(&odd);
    let paired_area = area_total_symbolic(&paired);
    let paired_minus_even = paired_area.sub(&even_area);
    let odd_minus_paired = odd_area.sub(&paired_area);
    let residual = paired_minus_even.sub(&odd_minus_paired.scale(&BigRational::from_integer(
        BigInt::from(2),
    )));
    Ok(RelationForms {
        even_area,
        odd_area,
        paired_area,
        paired_minus_even,
        odd_minus_paired,
        residual,
    })
}

/// The same relation evaluated exactly at a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationValues {
    pub even_area: BigRational,
    pub odd_area: BigRational,
    pub paired_area: BigRational,
    pub paired_minus_even: BigRational,
    pub odd_minus_paired: BigRational,
    pub residual: BigRational,
}

pub fn relation_concrete(
    pair: RelationPair,
    budget: &Budget,
) -> Result<RelationValues, CensusError> {
    let (even, odd, paired) = pair.schemes()?;
    let even_area = area_total_concrete(&even, budget)?;
    let odd_area = area_total_concrete(&odd, budget)?;
    let paired_area = area_total_concrete(&paired, budget)?;
    let paired_minus_even = &paired_area - &even_area;
    let odd_minus_paired = &odd_area - &paired_area;
    let residual = &paired_minus_even - BigRational::from_integer(BigInt::from(2)) * &odd_minus_paired;
    Ok(RelationValues {
        even_area,
        odd_area,
        paired_area,
        paired_minus_even,
        odd_minus_paired,
        residual,
    })
}

/// The JSON census report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub scheme: SchemeDescriptor,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<u64>,
    #[serde(rename = "W", skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(rename = "W1", skip_serializing_if = "Option::is_none")]
    pub w1: Option<String>,
    pub tiles: ReportedValue,
    pub area_d: ReportedValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeDescriptor {
    pub family: String,
    pub p: u32,
    pub q: u32,
    pub splitting: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportedValue {
    pub symbolic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concrete: Option<String>,
}

pub fn census_report(
    scheme: &SplittingScheme,
    mode: Mode,
    budget: Option<&Budget>,
) -> Result<CensusReport, CensusError> {
    let descriptor = SchemeDescriptor {
        family: scheme.family().tag().into(),
        p: scheme.p(),
        q: scheme.q(),
        splitting: scheme.splitting().tag().into(),
        r: match scheme.splitting() {
            Splitting::OddR(r) => Some(r),
            _ => None,
        },
    };
    let tiles_form = tile_count_symbolic(scheme);
    let area_form = area_total_symbolic(scheme);
    let mut report = CensusReport {
        scheme: descriptor,
        mode: mode.to_string(),
        budget: None,
        eta: None,
        w: None,
        w1: None,
        tiles: ReportedValue {
            symbolic: tiles_form.to_string(),
            concrete: None,
        },
        area_d: ReportedValue {
            symbolic: area_form.to_string(),
            concrete: None,
        },
    };
    if mode == Mode::Concrete {
        let budget = budget.ok_or(CensusError::MissingBudget)?;
        let heights = height_report(scheme, budget)?;
        report.budget = Some(budget.to_string());
        report.eta = Some(heights.eta);
        report.w = Some(heights.w.to_string());
        if scheme.uses_w1() {
            report.w1 = Some(heights.w1.to_string());
        }
        report.tiles.concrete = Some(tile_count_concrete(scheme, budget)?.to_string());
        report.area_d.concrete = Some(area_total_concrete(scheme, budget)?.to_string());
    }
    Ok(report)
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
