//! Linear recurrences counting spanning-tree levels of the `{p,q}` tilings.
//!
//! Each family fixes an order-2 or order-3 recurrence `u` together with the
//! initial window it starts from; `U` denotes the cumulative sums
//! `U_n = u_0 + … + u_n`.  Against a finite observer budget `g`, the
//! observable height is `η = max{n : U_n ≤ g}` and the observable total is
//! `W = U_η`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::grossone::Budget;

/// Recurrence families.  The `P4*` triple lives on `{p,4}`; the `Pq*`
/// families cover general `q` (even, and the two odd variants).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `f_{n+2} = f_{n+1} + f_n` with `f_0 = f_1 = 1` (and `f_{-1} = 0`).
    Fib,
    /// Standard tree on `{p,4}`: `u_{n+2} = (p−2)u_{n+1} − u_n`, `u_0 = 1`.
    P4Standard,
    /// Smaller (black-rooted) tree on `{p,4}`: same recurrence, `u_{-1} = u_0 = 1`.
    P4Smaller,
    /// Sibling count sequence `v` on `{p,4}`: `v_0 = 1`, `v_1 = u_1 − 1`.
    P4SiblingV,
    /// Even `q = 2h`.
    PqEven,
    /// Odd `q = 2h+1`, first (order-3) variant.
    PqOddV1,
    /// Odd `q`, second (order-2) variant.
    PqOddV2,
}

impl Family {
    pub fn order(self) -> usize {
        match self {
            Family::PqOddV1 => 3,
            _ => 2,
        }
    }
}

/// Where the recurrence coefficients are read from.  The two conventions
/// disagree on the trailing coefficient's sign for two families; the
/// polynomial reading reproduces the `{p,4}` recurrence at `q = 4` and is
/// the default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoefficientSource {
    #[default]
    Polynomial,
    TextVariant,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("invalid parameters for {family:?} with p={p}, q={q}: {reason}")]
    InvalidFamilyParams {
        family: Family,
        p: u32,
        q: u32,
        reason: String,
    },
    #[error("budget {budget} is below the root count U_0 = {u0}")]
    BudgetTooSmall { budget: String, u0: String },
    #[error("no closed form for family {0:?}")]
    ClosedFormUnavailable(Family),
    #[error("cumulative counts stayed within the budget after {0} levels; refusing to scan further")]
    HeightIterationCap(u64),
}

/// Levels to scan before giving up on `η`; every growing family reaches any
/// decimal budget of practical size long before this.
const ETA_ITERATION_CAP: u64 = 4_000_000;

/// An anchored recurrence: coefficients `c_1..c_k` of
/// `u_{n+k} = c_1 u_{n+k−1} + … + c_k u_n`, read off the characteristic
/// polynomial `X^k − c_1 X^{k−1} − … − c_k`, plus the initial window
/// `u_{−(k−1)}, …, u_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    family: Family,
    p: u32,
    q: u32,
    coefficients: Vec<i64>,
    initials: Vec<BigInt>,
}

impl RecurrenceSpec {
    pub fn new(family: Family, p: u32, q: u32) -> Result<Self, SequenceError> {
        Self::with_source(family, p, q, CoefficientSource::default())
    }

    pub fn with_source(
        family: Family,
        p: u32,
        q: u32,
        source: CoefficientSource,
    ) -> Result<Self, SequenceError> {
        let invalid = |reason: &str| SequenceError::InvalidFamilyParams {
            family,
            p,
            q,
            reason: reason.into(),
        };
        let hyperbolic = (p as u64 - 2) * (q as u64 - 2) > 4;
        let coefficients;
        let initials: Vec<i64>;
        match family {
            Family::Fib => {
                if (p, q) != (5, 4) {
                    return Err(invalid("the Fibonacci family is the {5,4} case"));
                }
                coefficients = vec![1, 1];
                initials = vec![0, 1];
            }
            Family::P4Standard | Family::P4Smaller | Family::P4SiblingV => {
                if q != 4 {
                    return Err(invalid("the P4 families live on q = 4"));
                }
                if p < 5 {
                    return Err(invalid("p must be at least 5"));
                }
                coefficients = vec![p as i64 - 2, -1];
                initials = match family {
                    Family::P4Standard => vec![0, 1],
                    _ => vec![1, 1],
                };
            }
            Family::PqEven => {
                if q < 4 || q % 2 != 0 {
                    return Err(invalid("q must be even and at least 4"));
                }
                if p < 3 || !hyperbolic {
                    return Err(invalid("{p,q} must be hyperbolic: (p-2)(q-2) > 4"));
                }
                let h = (q / 2) as i64;
                let c2 = match source {
                    CoefficientSource::Polynomial => h - 3,
                    CoefficientSource::TextVariant => -(h + 3),
                };
                coefficients = vec![(p as i64 - 3) * (h - 1) + 1, c2];
                initials = vec![0, 1];
            }
            Family::PqOddV1 => {
                if q < 5 || q % 2 == 0 {
                    return Err(invalid("q must be odd and at least 5"));
                }
                if p < 3 || !hyperbolic {
                    return Err(invalid("{p,q} must be hyperbolic: (p-2)(q-2) > 4"));
                }
                let h = (q / 2) as i64;
                let c3 = match source {
                    CoefficientSource::Polynomial => h - 3,
                    CoefficientSource::TextVariant => 3 - h,
                };
                coefficients = vec![
                    (p as i64 - 3) * (h - 1) + 1,
                    (p as i64 - 2) * (h - 1) - 2,
                    c3,
                ];
                initials = vec![0, 0, 1];
            }
            Family::PqOddV2 => {
                if q < 5 || q % 2 == 0 {
                    return Err(invalid("q must be odd and at least 5"));
                }
                if p < 3 || !hyperbolic {
                    return Err(invalid("{p,q} must be hyperbolic: (p-2)(q-2) > 4"));
                }
                coefficients = vec![(p as i64 - 3) * (q as i64 - 3) + 1, q as i64 - 7];
                initials = vec![0, 1];
            }
        }
        Ok(RecurrenceSpec {
            family,
            p,
            q,
            coefficients,
            initials: initials.into_iter().map(BigInt::from).collect(),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// The initial window `u_{−(k−1)}, …, u_0`.
    pub fn initials(&self) -> &[BigInt] {
        &self.initials
    }

    /// `u_n` for `n ≥ −(order−1)`.
    pub fn term(&self, n: i64) -> BigInt {
        let k = self.order() as i64;
        assert!(n >= 1 - k, "term index {n} below the initial window");
        if n <= 0 {
            return self.initials[(n + k - 1) as usize].clone();
        }
        let mut window = self.initials.clone();
        for _ in 0..n {
            self.advance(&mut window);
        }
        window.last().expect("nonempty window").clone()
    }

    /// Pushes the window `u_{m−k+1}..u_m` one step to `u_{m−k+2}..u_{m+1}`.
    fn advance(&self, window: &mut Vec<BigInt>) {
        let k = self.order();
        let mut next = BigInt::zero();
        for (i, c) in self.coefficients.iter().enumerate() {
            next += c * &window[k - 1 - i];
        }
        window.remove(0);
        window.push(next);
    }

    /// `U_n = u_0 + … + u_n` for `n ≥ −1` (empty sum at `−1`).
    pub fn cumulative(&self, n: i64) -> BigInt {
        assert!(n >= -1, "cumulative index {n} below -1");
        let mut total = BigInt::zero();
        let mut window = self.initials.clone();
        for m in 0..=n {
            if m > 0 {
                self.advance(&mut window);
            }
            total += window.last().expect("nonempty window");
        }
        total
    }

    /// The observable height at `budget`: `max{n : U_n ≤ g}`.
    pub fn eta(&self, budget: &Budget) -> Result<u64, SequenceError> {
        Ok(self.height_scan(budget)?.0)
    }

    /// The observable total `W = U_η`.
    pub fn observable_w(&self, budget: &Budget) -> Result<BigInt, SequenceError> {
        Ok(self.height_scan(budget)?.1)
    }

    /// `(η, U_η, U_{η−1})` in one scan.
    pub fn height_scan(&self, budget: &Budget) -> Result<(u64, BigInt, BigInt), SequenceError> {
        let g = budget.to_bigint();
        let mut window = self.initials.clone();
        let mut total = window.last().expect("nonempty window").clone();
        if total > g {
            return Err(SequenceError::BudgetTooSmall {
                budget: budget.to_string(),
                u0: total.to_string(),
            });
        }
        let mut previous = BigInt::zero();
        let mut n = 0u64;
        loop {
            self.advance(&mut window);
            let candidate = &total + window.last().expect("nonempty window");
            if candidate > g {
                return Ok((n, total, previous));
            }
            previous = std::mem::replace(&mut total, candidate);
            n += 1;
            if n > ETA_ITERATION_CAP {
                return Err(SequenceError::HeightIterationCap(ETA_ITERATION_CAP));
            }
        }
    }

    /// The dominant root of the characteristic polynomial, to absolute
    /// error below 1e−12.
    pub fn growth_root(&self) -> f64 {
        match self.coefficients[..] {
            [c1, c2] => {
                let c1 = c1 as f64;
                let c2 = c2 as f64;
                (c1 + (c1 * c1 + 4.0 * c2).sqrt()) / 2.0
            }
            [c1, c2, c3] => largest_real_root_cubic(c1 as f64, c2 as f64, c3 as f64),
            _ => unreachable!("orders are 2 or 3"),
        }
    }

    /// Closed form for `u_n`, where one exists (Fib and P4Standard).
    pub fn closed_form(&self, n: i64) -> Result<f64, SequenceError> {
        match self.family {
            Family::Fib => {
                let s5 = 5f64.sqrt();
                let phi = (1.0 + s5) / 2.0;
                let psi = (1.0 - s5) / 2.0;
                let e = (n + 1) as i32;
                Ok((phi.powi(e) - psi.powi(e)) / s5)
            }
            Family::P4Standard => {
                let p = self.p as f64;
                let beta = (p - 2.0 + (p * (p - 4.0)).sqrt()) / 2.0;
                let e = (n + 1) as i32;
                Ok(beta / (beta * beta - 1.0) * (beta.powi(e) - beta.powi(-e)))
            }
            other => Err(SequenceError::ClosedFormUnavailable(other)),
        }
    }

    pub fn table(&self, max_level: u64) -> CumulativeTable {
        CumulativeTable::build(self, max_level)
    }
}

/// Largest real root of `x³ − c1x² − c2x − c3` by bisection.
fn largest_real_root_cubic(c1: f64, c2: f64, c3: f64) -> f64 {
    let p = |x: f64| ((x - c1) * x - c2) * x - c3;
    let mut hi = 1.0 + c1.abs().max(c2.abs()).max(c3.abs());
    debug_assert!(p(hi) > 0.0, "Cauchy bound must clear every root");
    // Critical points of the cubic: roots of 3x² − 2c1x − c2.
    let disc = c1 * c1 + 3.0 * c2;
    let mut lo = if disc >= 0.0 {
        let upper_critical = (c1 + disc.sqrt()) / 3.0;
        if p(upper_critical) <= 0.0 {
            upper_critical
        } else {
            // Local minimum is positive: the only real root sits left of the
            // local maximum.  Walk down until the sign flips.
            let mut x = (c1 - disc.sqrt()) / 3.0;
            let mut step = 1.0;
            while p(x) > 0.0 {
                x -= step;
                step *= 2.0;
            }
            x
        }
    } else {
        // Monotone cubic: walk down from the bound.
        let mut x = hi - 1.0;
        let mut step = 1.0;
        while p(x) > 0.0 {
            x -= step;
            step *= 2.0;
        }
        x
    };
    for _ in 0..200 {
        if hi - lo <= 1e-13 {
            break;
        }
        let mid = (lo + hi) / 2.0;
        if p(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / 2.0
}

/// The first `N+1` terms of `u` and `U` for one recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulativeTable {
    spec: RecurrenceSpec,
    terms: Vec<BigInt>,
    cumulative: Vec<BigInt>,
}

impl CumulativeTable {
    pub fn build(spec: &RecurrenceSpec, max_level: u64) -> Self {
        let mut terms = Vec::with_capacity(max_level as usize + 1);
        let mut cumulative = Vec::with_capacity(max_level as usize + 1);
        let mut window = spec.initials.clone();
        let mut total = BigInt::zero();
        for n in 0..=max_level {
            if n > 0 {
                spec.advance(&mut window);
            }
            let u = window.last().expect("nonempty window").clone();
            total += &u;
            terms.push(u);
            cumulative.push(total.clone());
        }
        CumulativeTable {
            spec: spec.clone(),
            terms,
            cumulative,
        }
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn max_level(&self) -> u64 {
        self.terms.len() as u64 - 1
    }

    pub fn term(&self, n: u64) -> &BigInt {
        &self.terms[n as usize]
    }

    pub fn cumulative(&self, n: u64) -> &BigInt {
        &self.cumulative[n as usize]
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn cumulatives(&self) -> &[BigInt] {
        &self.cumulative
    }

    /// Writes the `(n, u_n, U_n)` table as CSV (CRLF line endings, plain
    /// decimal integers).
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        write!(out, "n,u_n,U_n\r\n")?;
        for (n, (u, c)) in self.terms.iter().zip(&self.cumulative).enumerate() {
            write!(out, "{n},{u},{c}\r\n")?;
        }
        Ok(())
    }
}

/// Exact value of the closed-form expression for comparison at full
/// precision is not available; this helper reports the relative error of a
/// float against an exact integer instead.
pub fn relative_error(approx: f64, exact: &BigInt) -> f64 {
    let exact = exact.to_f64().unwrap_or(f64::MAX);
    if exact == 0.0 {
        approx.abs()
    } else {
        ((approx - exact) / exact).abs()
    }
}

/// Exact rational `s/q` with `s = 2(pq − 2(p+q))`: the angle-defect area of
/// the `{p,q}` cell in units of a right angle.  Shared with the census
/// module; kept here so tables and areas agree on one definition.
pub fn defect_numerator(p: u32, q: u32) -> BigInt {
    BigInt::from(2) * (BigInt::from(p) * BigInt::from(q) - BigInt::from(2) * (p + q))
}

/// The same defect as a rational multiple of the right angle `d`.
pub fn defect_area(p: u32, q: u32) -> BigRational {
    BigRational::new(defect_numerator(p, q), BigInt::from(q))
}
