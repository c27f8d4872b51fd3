//! Grossone-style numerals: finite sums `Σ cᵢ·G^eᵢ` with rational
//! coefficients `cᵢ` and rational exponents `eᵢ`, where `G` is the unit of
//! infinity — the count of steps an idealized observer could take.  Every
//! finite number embeds as the exponent-zero term, `G` itself compares
//! greater than every finite number, and pinning `G` to a concrete
//! [`Budget`] turns any integer-exponent numeral back into an exact
//! rational.

mod text;

pub use text::parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Mode;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrossoneError {
    /// Budget evaluation is defined for integer exponents only.
    #[error("cannot evaluate exponent {0} at a finite budget")]
    EvaluationUnsupported(String),
    /// Progressions are indexed by residues 1..=n.
    #[error("residue class {k} is not in 1..={n}")]
    InvalidResidue { k: u64, n: u64 },
    /// Budgets are positive integers.
    #[error("budget must be a positive integer, got {0:?}")]
    InvalidBudget(String),
    /// Concrete-mode questions need a budget to evaluate against.
    #[error("concrete mode requires a budget")]
    MissingBudget,
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    /// Division is supported by a single nonzero term only.
    #[error("divisor must be a single term, got {0}")]
    NonMonomialDivisor(String),
    /// The power fragment covers bases 0 and 1, finite integer exponents,
    /// and single-term bases; anything else has no canonical value here.
    #[error("{base}^{exponent} is outside the supported power fragment")]
    UnsupportedPower { base: String, exponent: String },
}

/// A finite stand-in for `G`: the concrete number of steps the observer is
/// granted.  Always at least one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(BigUint);

impl Budget {
    pub fn new(value: BigUint) -> Result<Self, GrossoneError> {
        if value.is_zero() {
            return Err(GrossoneError::InvalidBudget("0".into()));
        }
        Ok(Budget(value))
    }

    pub fn from_u64(value: u64) -> Result<Self, GrossoneError> {
        Self::new(BigUint::from(value))
    }

    /// Parses a plain decimal string of arbitrary length.
    pub fn parse_decimal(text: &str) -> Result<Self, GrossoneError> {
        let trimmed = text.trim();
        if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
            return Err(GrossoneError::InvalidBudget(trimmed.into()));
        }
        let value = trimmed
            .parse::<BigUint>()
            .map_err(|_| GrossoneError::InvalidBudget(trimmed.into()))?;
        Self::new(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }
}

impl std::str::FromStr for Budget {
    type Err = GrossoneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Budget::parse_decimal(s)
    }
}

impl std::fmt::Display for Budget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The integer `κ = ⌊√G⌋` at a finite budget: the largest step count whose
/// square is still observable.
pub fn kappa(budget: &Budget) -> BigUint {
    budget.value().sqrt()
}

/// A grossone numeral in canonical form: exponent → coefficient, no zero
/// coefficients stored.  The empty map is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrossNumber {
    terms: BTreeMap<BigRational, BigRational>,
}

impl GrossNumber {
    pub fn zero() -> Self {
        GrossNumber::default()
    }

    pub fn one() -> Self {
        GrossNumber::from_rational(BigRational::one())
    }

    /// The numeral `G` itself.
    pub fn grossone() -> Self {
        GrossNumber::term(BigRational::one(), BigRational::one())
    }

    /// `G^e` for a rational exponent `e`.
    pub fn grossone_pow(exponent: BigRational) -> Self {
        GrossNumber::term(BigRational::one(), exponent)
    }

    pub fn from_rational(value: BigRational) -> Self {
        GrossNumber::term(value, BigRational::zero())
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        GrossNumber::from_rational(BigRational::from_integer(value.into()))
    }

    /// The single term `coefficient·G^exponent`.
    pub fn term(coefficient: BigRational, exponent: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        GrossNumber { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the numeral is an ordinary finite number (support ⊆ {0}).
    pub fn is_finite(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// Terms in decreasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The term with the largest exponent, if any.
    pub fn leading(&self) -> Option<(&BigRational, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exponent: &BigRational) -> BigRational {
        self.terms.get(exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    fn insert(&mut self, exponent: BigRational, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponent) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GrossNumber) -> GrossNumber {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GrossNumber {
        GrossNumber {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GrossNumber) -> GrossNumber {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GrossNumber) -> GrossNumber {
        let mut out = GrossNumber::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> GrossNumber {
        if factor.is_zero() {
            return GrossNumber::zero();
        }
        GrossNumber {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    /// Inverse of a single-term numeral: `(c·G^e)⁻¹ = c⁻¹·G^(−e)`.
    pub fn monomial_inverse(&self) -> Result<GrossNumber, GrossoneError> {
        if self.is_zero() {
            return Err(GrossoneError::DivisionByZero);
        }
        if self.terms.len() != 1 {
            return Err(GrossoneError::NonMonomialDivisor(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        Ok(GrossNumber::term(c.recip(), -e))
    }

    /// Division by a single nonzero term.
    pub fn div(&self, divisor: &GrossNumber) -> Result<GrossNumber, GrossoneError> {
        Ok(self.mul(&divisor.monomial_inverse()?))
    }

    /// The partial power function.  Defined exactly where the numeral system
    /// gives it one value: base 0 (positive exponents), base 1 (any
    /// exponent), exponent 0 (nonzero base), finite integer exponents of
    /// arbitrary numerals, and integer exponents of single terms.
    pub fn pow(&self, exponent: &GrossNumber) -> Result<GrossNumber, GrossoneError> {
        let unsupported = || GrossoneError::UnsupportedPower {
            base: self.to_string(),
            exponent: exponent.to_string(),
        };
        if self == &GrossNumber::one() {
            return Ok(GrossNumber::one());
        }
        if exponent.is_zero() {
            if self.is_zero() {
                return Err(unsupported());
            }
            return Ok(GrossNumber::one());
        }
        if self.is_zero() {
            return match compare(exponent, &GrossNumber::zero()) {
                Ordering::Greater => Ok(GrossNumber::zero()),
                _ => Err(unsupported()),
            };
        }
        // From here on the exponent must be a finite integer.
        if !exponent.is_finite() {
            return Err(unsupported());
        }
        let e = exponent.coefficient(&BigRational::zero());
        if !e.is_integer() {
            return Err(unsupported());
        }
        let e = e.to_integer();
        let magnitude = e.magnitude().to_u32().ok_or_else(unsupported)?;
        if self.terms.len() == 1 {
            let (be, bc) = self.terms.iter().next().expect("one term");
            let coeff = Pow::pow(bc, &BigInt::from(e.clone()));
            return Ok(GrossNumber::term(coeff, be * BigRational::from_integer(e)));
        }
        if e.is_negative() {
            return Err(GrossoneError::NonMonomialDivisor(self.to_string()));
        }
        let mut out = GrossNumber::one();
        for _ in 0..magnitude {
            out = out.mul(self);
        }
        Ok(out)
    }

    /// Evaluates the numeral at a finite budget.  Only integer exponents
    /// have a defined value there.
    pub fn evaluate(&self, budget: &Budget) -> Result<BigRational, GrossoneError> {
        let g = budget.to_bigint();
        let mut total = BigRational::zero();
        for (exponent, coefficient) in &self.terms {
            if !exponent.is_integer() {
                return Err(GrossoneError::EvaluationUnsupported(exponent.to_string()));
            }
            let e = exponent.to_integer();
            let magnitude = e
                .magnitude()
                .to_u64()
                .ok_or_else(|| GrossoneError::EvaluationUnsupported(exponent.to_string()))?;
            let power = BigRational::from_integer(Pow::pow(&g, magnitude));
            total += if e.is_negative() {
                coefficient / power
            } else {
                coefficient * power
            };
        }
        Ok(total)
    }
}

/// Total order: the sign of the difference's leading coefficient.
pub fn compare(a: &GrossNumber, b: &GrossNumber) -> Ordering {
    let diff = a.sub(b);
    match diff.leading() {
        None => Ordering::Equal,
        Some((_, c)) => {
            if c.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
    }
}

impl PartialOrd for GrossNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrossNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl std::ops::Add for &GrossNumber {
    type Output = GrossNumber;
    fn add(self, rhs: &GrossNumber) -> GrossNumber {
        GrossNumber::add(self, rhs)
    }
}

impl std::ops::Sub for &GrossNumber {
    type Output = GrossNumber;
    fn sub(self, rhs: &GrossNumber) -> GrossNumber {
        GrossNumber::sub(self, rhs)
    }
}

impl std::ops::Mul for &GrossNumber {
    type Output = GrossNumber;
    fn mul(self, rhs: &GrossNumber) -> GrossNumber {
        GrossNumber::mul(self, rhs)
    }
}

impl std::ops::Neg for &GrossNumber {
    type Output = GrossNumber;
    fn neg(self) -> GrossNumber {
        GrossNumber::neg(self)
    }
}

/// Cardinality of an arithmetic progression `k, k+n, k+2n, …`, either
/// symbolic or at a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Symbolic(GrossNumber),
    Concrete(BigUint),
}

/// How many of the numbers `1..=G` lie in the residue class `k (mod n)`:
/// exactly `G/n` symbolically, and `⌊(g−k)/n⌋+1` (or zero) at a budget `g`.
pub fn progression_cardinality(
    k: u64,
    n: u64,
    mode: Mode,
    budget: Option<&Budget>,
) -> Result<Cardinality, GrossoneError> {
    match mode {
        Mode::Symbolic => Ok(Cardinality::Symbolic(progression_symbolic(k, n)?)),
        Mode::Concrete => {
            let budget = budget.ok_or(GrossoneError::MissingBudget)?;
            Ok(Cardinality::Concrete(progression_concrete(k, n, budget)?))
        }
    }
}

pub fn progression_symbolic(k: u64, n: u64) -> Result<GrossNumber, GrossoneError> {
    check_residue(k, n)?;
    Ok(GrossNumber::term(
        BigRational::new(BigInt::one(), BigInt::from(n)),
        BigRational::one(),
    ))
}

pub fn progression_concrete(k: u64, n: u64, budget: &Budget) -> Result<BigUint, GrossoneError> {
    check_residue(k, n)?;
    let g = budget.value();
    let k = BigUint::from(k);
    if g < &k {
        return Ok(BigUint::zero());
    }
    Ok((g - k) / BigUint::from(n) + BigUint::one())
}

fn check_residue(k: u64, n: u64) -> Result<(), GrossoneError> {
    if n == 0 || k == 0 || k > n {
        return Err(GrossoneError::InvalidResidue { k, n });
    }
    Ok(())
}
