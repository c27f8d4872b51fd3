//! Named verification suites behind the `verify` subcommand.
//!
//! Each suite bundles related properties into checks that either pass or
//! carry a concrete counterexample in their detail line.  Suites report
//! rather than panic; the command turns failures into exit codes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::{
    area_total_concrete, ball, ball_text_variant, polygon_area, r_augmented, relation_concrete,
    relation_residual, ring_and_border, tile_count_concrete, tile_count_symbolic, BallFamily,
    FormUnit, LinearForm, RelationPair, Splitting, SplittingScheme, Symbol, TilingFamily,
};
use crate::geometry::{self, circumradius, edge_length, expand_with_cap, DiskPoint};
use crate::geometry::mobius::{geodesic_through, Mobius};
use crate::grossone::{
    kappa, progression_concrete, progression_symbolic, Budget, GrossNumber,
};
use crate::sequences::{relative_error, Family, RecurrenceSpec};
use crate::trees::{self, build_tree_with_cap, numbering_range, TreeKind};

/// One verified property.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// All checks of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {}/{}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    self.suite,
                    c.name,
                    c.detail
                )
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteName {
    Axioms,
    Identities,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    GeometryOracle,
}

impl SuiteName {
    pub fn all() -> [SuiteName; 7] {
        [
            SuiteName::Axioms,
            SuiteName::Identities,
            SuiteName::Thm1,
            SuiteName::Thm2,
            SuiteName::Thm3,
            SuiteName::Thm4,
            SuiteName::GeometryOracle,
        ]
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteName::Axioms => "axioms",
            SuiteName::Identities => "identities",
            SuiteName::Thm1 => "thm1",
            SuiteName::Thm2 => "thm2",
            SuiteName::Thm3 => "thm3",
            SuiteName::Thm4 => "thm4",
            SuiteName::GeometryOracle => "geometry-oracle",
        })
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "axioms" => Ok(SuiteName::Axioms),
            "identities" => Ok(SuiteName::Identities),
            "thm1" => Ok(SuiteName::Thm1),
            "thm2" => Ok(SuiteName::Thm2),
            "thm3" => Ok(SuiteName::Thm3),
            "thm4" => Ok(SuiteName::Thm4),
            "geometry-oracle" => Ok(SuiteName::GeometryOracle),
            other => Err(format!(
                "unknown suite '{other}' (expected axioms | identities | thm1 | thm2 | thm3 | thm4 | geometry-oracle)"
            )),
        }
    }
}

/// Resource ceilings a suite run must respect.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub node_cap: u64,
    pub tile_cap: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            node_cap: trees::DEFAULT_NODE_CAP,
            tile_cap: geometry::DEFAULT_TILE_CAP,
        }
    }
}

pub fn run_suite(suite: SuiteName, cfg: &SuiteConfig) -> SuiteReport {
    let checks = match suite {
        SuiteName::Axioms => axioms(),
        SuiteName::Identities => identities(cfg),
        SuiteName::Thm1 => thm1(),
        SuiteName::Thm2 => thm2(),
        SuiteName::Thm3 => thm3(),
        SuiteName::Thm4 => thm4(),
        SuiteName::GeometryOracle => geometry_oracle(cfg),
    };
    SuiteReport { suite, checks }
}

fn push(checks: &mut Vec<Check>, name: &'static str, passed: bool, detail: impl Into<String>) {
    checks.push(Check::new(name, passed, detail));
}

fn budget(value: u64) -> Budget {
    Budget::from_u64(value).expect("positive literal budget")
}

fn big(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// `f_0 = f_1 = 1` Fibonacci (with `f_{-1} = 0`), via the sequence engine.
fn fib(n: i64) -> BigInt {
    RecurrenceSpec::new(Family::Fib, 5, 4)
        .expect("Fib spec")
        .term(n)
}

// ---------------------------------------------------------------------------
// axioms
// ---------------------------------------------------------------------------

fn axioms() -> Vec<Check> {
    let mut checks = Vec::new();
    let g = GrossNumber::grossone();
    let zero = GrossNumber::zero();
    let one = GrossNumber::one();

    let big_n = BigInt::from(10).pow(30);
    let below = [1i64, 2, 1905, 1_000_000]
        .iter()
        .all(|&n| GrossNumber::from_integer(n) < g)
        && GrossNumber::from_integer(big_n) < g;
    push(
        &mut checks,
        "finite-below-infinite",
        below,
        "every sampled finite n (up to 10^30) compares below G",
    );

    let identities_hold = zero.mul(&g).is_zero()
        && g.sub(&g).is_zero()
        && g.div(&g).map(|r| r == one).unwrap_or(false)
        && g.pow(&zero).map(|r| r == one).unwrap_or(false)
        && one.pow(&g).map(|r| r == one).unwrap_or(false)
        && zero.pow(&g).map(|r| r.is_zero()).unwrap_or(false);
    push(
        &mut checks,
        "unit-identities",
        identities_hold,
        "0*G = 0, G - G = 0, G/G = 1, G^0 = 1, 1^G = 1, 0^G = 0",
    );

    let mut partition_fail = None;
    for n in 1..=12u64 {
        let mut total = GrossNumber::zero();
        for k in 1..=n {
            total = total.add(&progression_symbolic(k, n).expect("valid residue"));
        }
        if total != g {
            partition_fail = Some(n);
            break;
        }
    }
    push(
        &mut checks,
        "progression-partition",
        partition_fail.is_none(),
        match partition_fail {
            None => "the n residue progressions each hold G/n elements and sum to G, n <= 12".to_string(),
            Some(n) => format!("residue progressions mod {n} do not sum to G"),
        },
    );

    let mut concrete_fail = None;
    'outer: for &g_val in &[97u64, 100] {
        let b = budget(g_val);
        for n in 1..=10u64 {
            let total: u64 = (1..=n)
                .map(|k| {
                    u64::try_from(progression_concrete(k, n, &b).expect("valid residue"))
                        .expect("small budget")
                })
                .sum();
            let brute = (1..=n)
                .map(|k| (k..=g_val).step_by(n as usize).count() as u64)
                .sum::<u64>();
            if total != g_val || brute != g_val {
                concrete_fail = Some((g_val, n, total));
                break 'outer;
            }
        }
    }
    push(
        &mut checks,
        "progression-budget",
        concrete_fail.is_none(),
        match concrete_fail {
            None => "finite residue progressions partition budgets 97 and 100 exactly".to_string(),
            Some((g_val, n, total)) => {
                format!("classes mod {n} cover {total} of budget {g_val}")
            }
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(8128);
    let mut kappa_fail = None;
    for _ in 0..1000 {
        let value = rng.gen_range(1..=1_000_000_000_000_000_000u64);
        let b = budget(value);
        let k = kappa(&b);
        let ok = &k * &k <= *b.value() && *b.value() < (&k + 1u32) * (&k + 1u32);
        if !ok {
            kappa_fail = Some((value, k));
            break;
        }
    }
    push(
        &mut checks,
        "kappa-bracket",
        kappa_fail.is_none(),
        match kappa_fail {
            None => "kappa(g)^2 <= g < (kappa(g)+1)^2 for 1000 random g".to_string(),
            Some((value, k)) => format!("kappa({value}) = {k} misses its bracket"),
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let mut algebra_fail = None;
    for case in 0..1000 {
        let a = random_gross(&mut rng);
        let b = random_gross(&mut rng);
        let c = random_gross(&mut rng);
        let laws = a.add(&b) == b.add(&a)
            && a.mul(&b) == b.mul(&a)
            && a.add(&b).add(&c) == a.add(&b.add(&c))
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && a.sub(&a).is_zero()
            && (a <= b) != (b < a)
            && a.to_string().parse::<GrossNumber>().map(|p| p == a).unwrap_or(false);
        if !laws {
            algebra_fail = Some((case, a));
            break;
        }
    }
    push(
        &mut checks,
        "algebra-properties",
        algebra_fail.is_none(),
        match algebra_fail {
            None => "ring laws, order laws, and text round-trips hold on 1000 random cases".to_string(),
            Some((case, a)) => format!("case {case} breaks an algebra law (witness {a})"),
        },
    );

    checks
}

fn random_gross(rng: &mut ChaCha8Rng) -> GrossNumber {
    let mut value = GrossNumber::zero();
    for _ in 0..rng.gen_range(0..=3) {
        let coefficient = loop {
            let c = rng.gen_range(-9i64..=9);
            if c != 0 {
                break c;
            }
        };
        let numerator = rng.gen_range(-4i64..=6);
        let denominator = if rng.gen_bool(0.3) { 2 } else { 1 };
        value = value.add(&GrossNumber::term(
            big(coefficient),
            BigRational::new(BigInt::from(numerator), BigInt::from(denominator)),
        ));
    }
    value
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

fn identities(cfg: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();

    let standard = RecurrenceSpec::new(Family::P4Standard, 5, 4).expect("pentagonal spec");
    let smaller = RecurrenceSpec::new(Family::P4Smaller, 5, 4).expect("pentagonal spec");
    let mut fib_fail = None;
    for n in 0..=20i64 {
        let ok = standard.term(n) == fib(2 * n + 1)
            && smaller.term(n) == fib(2 * n)
            && standard.cumulative(n) == fib(2 * n + 2) - 1
            && smaller.cumulative(n) == fib(2 * n + 1);
        if !ok {
            fib_fail = Some(n);
            break;
        }
    }
    push(
        &mut checks,
        "pentagonal-fibonacci",
        fib_fail.is_none(),
        match fib_fail {
            None => "u_n = f_{2n+1}, b_n = f_{2n}, U_n = f_{2n+2}-1, B_n = f_{2n+1} for n <= 20"
                .to_string(),
            Some(n) => format!("Fibonacci identities break at level {n}"),
        },
    );

    let mut q4_fail = None;
    'q4: for p in 5..=12u32 {
        let general = RecurrenceSpec::new(Family::PqEven, p, 4).expect("hyperbolic");
        let p4 = RecurrenceSpec::new(Family::P4Standard, p, 4).expect("hyperbolic");
        for n in 0..=30i64 {
            if general.term(n) != p4.term(n) {
                q4_fail = Some((p, n));
                break 'q4;
            }
        }
    }
    push(
        &mut checks,
        "q4-reduction",
        q4_fail.is_none(),
        match q4_fail {
            None => "the even-q family at q = 4 reproduces the {p,4} terms for p <= 12, n <= 30"
                .to_string(),
            Some((p, n)) => format!("q = 4 reduction fails at p = {p}, n = {n}"),
        },
    );

    let mut tree_fail = None;
    let mut trees_built = 0u32;
    'tree: for p in 5..=9u32 {
        for kind in [TreeKind::Standard, TreeKind::Smaller] {
            let spec = RecurrenceSpec::new(kind.family(), p, 4).expect("hyperbolic");
            let mut height = 0u64;
            while height < 12 && spec.cumulative(height as i64 + 1) <= BigInt::from(cfg.node_cap) {
                height += 1;
            }
            let tree = match build_tree_with_cap(p, kind, height, cfg.node_cap) {
                Ok(tree) => tree,
                Err(err) => {
                    tree_fail = Some(format!("p = {p} {kind:?} h = {height}: {err}"));
                    break 'tree;
                }
            };
            trees_built += 1;
            for (n, count) in tree.level_counts().iter().enumerate() {
                if BigInt::from(*count) != spec.term(n as i64) {
                    tree_fail = Some(format!(
                        "p = {p} {kind:?} level {n}: tree {count} vs term {}",
                        spec.term(n as i64)
                    ));
                    break 'tree;
                }
            }
        }
    }
    push(
        &mut checks,
        "tree-levels",
        tree_fail.is_none(),
        match tree_fail {
            None => format!(
                "{trees_built} substitution trees (p = 5..9, both kinds, h <= 12 within the node cap) match their recurrences level by level"
            ),
            Some(witness) => witness,
        },
    );

    let mut numbering_fail = None;
    for n in 0..=12u64 {
        let (lo, hi) = numbering_range(5, n);
        let n_i = n as i64;
        if lo != fib(2 * n_i) || hi != fib(2 * n_i + 2) - 1 {
            numbering_fail = Some(n);
            break;
        }
    }
    let (lo1, hi1) = numbering_range(5, 1);
    push(
        &mut checks,
        "numbering-ranges",
        numbering_fail.is_none() && lo1 == BigInt::from(2) && hi1 == BigInt::from(4),
        match numbering_fail {
            None => format!(
                "pentagonal level n spans numbers f_2n..f_2n+2 - 1 for n <= 12; level 1 is {lo1}..{hi1}"
            ),
            Some(n) => format!("numbering range breaks at level {n}"),
        },
    );

    let mut closed_fail = None;
    'closed: for (family, ps) in [(Family::Fib, 5..=5u32), (Family::P4Standard, 5..=9u32)] {
        for p in ps {
            let spec = RecurrenceSpec::new(family, p, 4).expect("hyperbolic");
            for n in 0..=60i64 {
                let approx = spec.closed_form(n).expect("closed form available");
                let error = relative_error(approx, &spec.term(n));
                if error >= 1e-9 {
                    closed_fail = Some((family, p, n, error));
                    break 'closed;
                }
            }
        }
    }
    push(
        &mut checks,
        "closed-forms",
        closed_fail.is_none(),
        match closed_fail {
            None => "closed forms match exact terms to relative error < 1e-9 for n <= 60".to_string(),
            Some((family, p, n, error)) => {
                format!("{family:?} p = {p} n = {n}: relative error {error:.3e}")
            }
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1905);
    let specs = [
        RecurrenceSpec::new(Family::P4Standard, 5, 4).expect("hyperbolic"),
        RecurrenceSpec::new(Family::P4Standard, 7, 4).expect("hyperbolic"),
        RecurrenceSpec::new(Family::P4Smaller, 5, 4).expect("hyperbolic"),
        RecurrenceSpec::new(Family::PqEven, 5, 6).expect("hyperbolic"),
        RecurrenceSpec::new(Family::PqOddV1, 5, 5).expect("hyperbolic"),
        RecurrenceSpec::new(Family::PqOddV2, 5, 5).expect("hyperbolic"),
    ];
    let mut eta_fail = None;
    'eta: for spec in &specs {
        for _ in 0..100 {
            let g = rng.gen_range(1..=1_000_000_000_000u64);
            let b = budget(g);
            let eta = spec.eta(&b).expect("budget above U_0") as i64;
            let ok = spec.cumulative(eta) <= BigInt::from(g)
                && BigInt::from(g) < spec.cumulative(eta + 1);
            if !ok {
                eta_fail = Some((spec.family(), g, eta));
                break 'eta;
            }
        }
    }
    push(
        &mut checks,
        "eta-contract",
        eta_fail.is_none(),
        match eta_fail {
            None => "U_eta <= g < U_eta+1 for 600 random budgets <= 10^12 across six families"
                .to_string(),
            Some((family, g, eta)) => format!("{family:?} misplaces eta = {eta} at g = {g}"),
        },
    );

    let mut sibling_fail = None;
    'sibling: for p in 5..=9u32 {
        let sibling = RecurrenceSpec::new(Family::P4SiblingV, p, 4).expect("hyperbolic");
        let smaller = RecurrenceSpec::new(Family::P4Smaller, p, 4).expect("hyperbolic");
        for n in 0..=25i64 {
            if sibling.term(n) != smaller.term(n) {
                sibling_fail = Some((p, n));
                break 'sibling;
            }
        }
    }
    push(
        &mut checks,
        "sibling-alias",
        sibling_fail.is_none(),
        match sibling_fail {
            None => "the sibling-count sequence coincides with the smaller tree for p <= 9, n <= 25"
                .to_string(),
            Some((p, n)) => format!("sibling sequence diverges at p = {p}, n = {n}"),
        },
    );

    let mut split_fail = None;
    'split: for p in 5..=9u32 {
        let standard = RecurrenceSpec::new(Family::P4Standard, p, 4).expect("hyperbolic");
        let smaller = RecurrenceSpec::new(Family::P4Smaller, p, 4).expect("hyperbolic");
        // W = W1 + B: a standard tree is its own top level short of one
        // height plus a full-height black-rooted tree.
        for n in 0..=15i64 {
            if standard.cumulative(n) != standard.cumulative(n - 1) + smaller.cumulative(n) {
                split_fail = Some((p, n));
                break 'split;
            }
        }
    }
    push(
        &mut checks,
        "w-decomposition",
        split_fail.is_none(),
        match split_fail {
            None => "W = W1 + B at every height (p <= 9, n <= 15)".to_string(),
            Some((p, n)) => format!("W != W1 + B at p = {p}, height {n}"),
        },
    );

    let b = budget(100);
    let (eta, w, _) = standard.height_scan(&b).expect("budget above U_0");
    push(
        &mut checks,
        "budget-slack",
        w <= BigInt::from(100),
        format!(
            "g = 100 on the pentagonal tree: eta = {eta}, W = {w}, slack = {}",
            BigInt::from(100) - &w
        ),
    );

    checks
}

// ---------------------------------------------------------------------------
// thm1
// ---------------------------------------------------------------------------

fn thm1() -> Vec<Check> {
    let mut checks = Vec::new();
    let forms = relation_residual(RelationPair::PentaHepta).expect("reference pair");

    push(
        &mut checks,
        "symbolic",
        forms.residual.is_zero(),
        if forms.residual.is_zero() {
            "residual = 0".to_string()
        } else {
            format!("residual = {}", forms.residual)
        },
    );

    push(
        &mut checks,
        "paired-difference",
        forms.paired_minus_even == forms.odd_minus_paired.scale(&big(2)),
        format!(
            "H - P_e = {} = 2*(P_o - H), P_o - H = {}",
            forms.paired_minus_even, forms.odd_minus_paired
        ),
    );

    let mut exact_fail = None;
    for &g in &[10u64, 1_000, 1_000_000, 1_000_000_000_000] {
        let values = relation_concrete(RelationPair::PentaHepta, &budget(g)).expect("valid budget");
        if !values.residual.is_zero() {
            exact_fail = Some((g, values.residual));
            break;
        }
    }
    push(
        &mut checks,
        "exact-budgets",
        exact_fail.is_none(),
        match exact_fail {
            None => "residual = 0 exactly at g in {10, 10^3, 10^6, 10^12}".to_string(),
            Some((g, residual)) => format!("residual = {residual} at g = {g}"),
        },
    );

    let values = relation_concrete(RelationPair::PentaHepta, &budget(100)).expect("valid budget");
    let expected = values.even_area == big(352)
        && values.odd_area == big(441)
        && values.paired_area == BigRational::new(BigInt::from(1234), BigInt::from(3))
        && values.paired_minus_even == BigRational::new(BigInt::from(178), BigInt::from(3))
        && values.odd_minus_paired == BigRational::new(BigInt::from(89), BigInt::from(3));
    push(
        &mut checks,
        "reference-budget-100",
        expected,
        format!(
            "g = 100: P_e = {} d, P_o = {} d, H = {} d, H - P_e = {} d = 2*({} d)",
            values.even_area,
            values.odd_area,
            values.paired_area,
            values.paired_minus_even,
            values.odd_minus_paired
        ),
    );

    checks
}

// ---------------------------------------------------------------------------
// thm2
// ---------------------------------------------------------------------------

fn thm2() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(417);

    let mut invariance_fail = None;
    let mut cases = 0u32;
    'invariance: for _ in 0..50 {
        let g = rng.gen_range(2..=1_000_000_000u64);
        let b = budget(g);
        for family in [BallFamily::Penta, BallFamily::Hepta] {
            let scheme = family.scheme(Splitting::Odd);
            let odd_total = tile_count_concrete(&scheme, &b).expect("valid budget");
            let eta = scheme.recurrence().eta(&b).expect("valid budget");
            for r in 0..=eta.min(6) {
                let sectors = r_augmented(family, r, &b).expect("r <= eta");
                cases += 1;
                if sectors.tiles != odd_total {
                    invariance_fail = Some((family, g, r, sectors.tiles, odd_total));
                    break 'invariance;
                }
            }
        }
    }
    push(
        &mut checks,
        "r-invariance",
        invariance_fail.is_none(),
        match invariance_fail {
            None => format!(
                "r-augmented totals equal 1 + n0*W in {cases} cases (50 budgets <= 10^9, r <= min(eta,6), both tilings)"
            ),
            Some((family, g, r, got, want)) => {
                format!("{family:?} g = {g} r = {r}: {got} vs odd total {want}")
            }
        },
    );

    let b = budget(100);
    let reduced = r_augmented(BallFamily::Penta, 0, &b).expect("r = 0");
    let odd = tile_count_concrete(&SplittingScheme::penta(Splitting::Odd), &b)
        .expect("valid budget");
    // At r = 0 the form degrades to n0*f_-1*BR + n0*f_0*WR + 1 = 5*W + 1.
    let collapses = fib(-1).is_zero()
        && fib(0).is_one()
        && reduced.tiles == 5 * &reduced.wr + 1
        && reduced.tiles == odd;
    push(
        &mut checks,
        "r0-reduction",
        collapses,
        format!(
            "r = 0 collapses to the odd splitting via f_-1 = 0: 5*{} + 1 = {}",
            reduced.wr, reduced.tiles
        ),
    );

    let shallow = r_augmented(BallFamily::Penta, 2, &budget(10));
    push(
        &mut checks,
        "radius-guard",
        shallow.is_err(),
        match shallow {
            Err(err) => format!("r beyond eta is rejected: {err}"),
            Ok(_) => "r = 2 at g = 10 unexpectedly succeeded".to_string(),
        },
    );

    checks
}

// ---------------------------------------------------------------------------
// thm3
// ---------------------------------------------------------------------------

fn thm3() -> Vec<Check> {
    let mut checks = Vec::new();

    let mut residual_fail = None;
    for p in 5..=50u32 {
        let forms = relation_residual(RelationPair::P4P23 { p }).expect("hyperbolic pair");
        if !forms.residual.is_zero() {
            residual_fail = Some((p, forms.residual));
            break;
        }
    }
    push(
        &mut checks,
        "symbolic",
        residual_fail.is_none(),
        match residual_fail {
            None => "residual = 0 for every p in 5..50".to_string(),
            Some((p, residual)) => format!("residual = {residual} at p = {p}"),
        },
    );

    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let mut forms_fail = None;
    for p in 5..=50u32 {
        let forms = relation_residual(RelationPair::P4P23 { p }).expect("hyperbolic pair");
        let pm4 = big(p as i64 - 4);
        let lead = &third * &pm4 * &pm4;
        let expected_even = LinearForm::term(FormUnit::AreaD, Symbol::W, &lead * big(2))
            .add(&LinearForm::constant(FormUnit::AreaD, &third * &pm4 * big(2)));
        let expected_odd = LinearForm::term(FormUnit::AreaD, Symbol::W, lead.clone())
            .add(&LinearForm::constant(FormUnit::AreaD, &third * &pm4));
        if forms.paired_minus_even != expected_even || forms.odd_minus_paired != expected_odd {
            forms_fail = Some(p);
            break;
        }
    }
    push(
        &mut checks,
        "difference-forms",
        forms_fail.is_none(),
        match forms_fail {
            None => {
                "differences equal (2/3)(p-4)^2 W + (2/3)(p-4) and (1/3)(p-4)^2 W + (1/3)(p-4) d"
                    .to_string()
            }
            Some(p) => format!("difference forms break at p = {p}"),
        },
    );

    let forms = relation_residual(RelationPair::P4P23 { p: 9 }).expect("hyperbolic pair");
    push(
        &mut checks,
        "reference-p9",
        forms.paired_minus_even.to_string() == "50/3*W + 10/3"
            && forms.odd_minus_paired.to_string() == "25/3*W + 5/3",
        format!(
            "p = 9: H - P_e = {} d, P_o - H = {} d",
            forms.paired_minus_even, forms.odd_minus_paired
        ),
    );

    checks
}

// ---------------------------------------------------------------------------
// thm4
// ---------------------------------------------------------------------------

fn thm4() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(74);

    let mut q4_fail = None;
    'q4: for p in 5..=12u32 {
        for splitting in [Splitting::Even, Splitting::Odd] {
            let general = SplittingScheme::new(TilingFamily::PqEven, p, 4, splitting)
                .expect("hyperbolic");
            let reduced = SplittingScheme::p4(p, splitting).expect("hyperbolic");
            for _ in 0..5 {
                let b = budget(rng.gen_range(2..=1_000_000_000u64));
                let lhs = tile_count_concrete(&general, &b).expect("valid budget");
                let rhs = tile_count_concrete(&reduced, &b).expect("valid budget");
                if lhs != rhs {
                    q4_fail = Some((p, splitting, lhs, rhs));
                    break 'q4;
                }
            }
        }
    }
    push(
        &mut checks,
        "q4-counts",
        q4_fail.is_none(),
        match q4_fail {
            None => "even-q censuses at q = 4 equal the {p,4} censuses (p <= 12, 5 budgets each)"
                .to_string(),
            Some((p, splitting, lhs, rhs)) => {
                format!("p = {p} {splitting:?}: {lhs} vs {rhs}")
            }
        },
    );

    let mut v2_fail = None;
    for (p, q) in [(5u32, 5u32), (6, 5), (7, 5), (5, 7)] {
        let h = (q / 2) as i64;
        let even = SplittingScheme::new(TilingFamily::PqOddV2, p, q, Splitting::Even)
            .expect("hyperbolic");
        let odd = SplittingScheme::new(TilingFamily::PqOddV2, p, q, Splitting::Odd)
            .expect("hyperbolic");
        let w_plus_w1 = |scale: i64| {
            LinearForm::term(FormUnit::Count, Symbol::W, big(scale))
                .add(&LinearForm::term(FormUnit::Count, Symbol::W1, big(scale)))
        };
        let expected_even = w_plus_w1(q as i64);
        let expected_odd =
            w_plus_w1(p as i64 * (h - 1)).add(&LinearForm::constant(FormUnit::Count, big(1)));
        if tile_count_symbolic(&even) != expected_even
            || tile_count_symbolic(&odd) != expected_odd
        {
            v2_fail = Some((p, q));
            break;
        }
    }
    push(
        &mut checks,
        "v2-forms",
        v2_fail.is_none(),
        match v2_fail {
            None => "second odd-q variant counts are q(W + W1) and p(h-1)(W + W1) + 1".to_string(),
            Some((p, q)) => format!("V2 forms break at {{{p},{q}}}"),
        },
    );

    let v2 = SplittingScheme::new(TilingFamily::PqOddV2, 5, 5, Splitting::Even)
        .expect("hyperbolic");
    let (eta, w, w1) = v2.recurrence().height_scan(&budget(1000)).expect("valid budget");
    push(
        &mut checks,
        "w1-observable",
        eta == 4 && w == BigInt::from(613) && w1 == BigInt::from(134),
        format!("{{5,5}} V2 at g = 1000: eta = {eta}, W = {w}, W1 = {w1}"),
    );

    let mut order_fail = None;
    let mut order_cases = 0u32;
    'order: for p in 5..=13u32 {
        for q in 4..=13u32 {
            if (p as u64 - 2) * (q as u64 - 2) <= 4 {
                continue;
            }
            let families: &[TilingFamily] = if q % 2 == 0 {
                &[TilingFamily::PqEven]
            } else {
                &[TilingFamily::PqOddV1, TilingFamily::PqOddV2]
            };
            for &family in families {
                let even = SplittingScheme::new(family, p, q, Splitting::Even)
                    .expect("hyperbolic");
                let odd = SplittingScheme::new(family, p, q, Splitting::Odd)
                    .expect("hyperbolic");
                for _ in 0..3 {
                    let b = budget(rng.gen_range(2..=1_000_000_000u64));
                    let even_area = area_total_concrete(&even, &b).expect("valid budget");
                    let odd_area = area_total_concrete(&odd, &b).expect("valid budget");
                    order_cases += 1;
                    if odd_area <= even_area {
                        order_fail = Some((family, p, q, even_area, odd_area));
                        break 'order;
                    }
                }
            }
        }
    }
    push(
        &mut checks,
        "area-ordering",
        order_fail.is_none(),
        match order_fail {
            None => format!(
                "odd-splitting area strictly exceeds even-splitting area in {order_cases} cases (p, q <= 13)"
            ),
            Some((family, p, q, even_area, odd_area)) => format!(
                "{family:?} {{{p},{q}}}: odd {odd_area} d <= even {even_area} d"
            ),
        },
    );

    checks
}

// ---------------------------------------------------------------------------
// geometry-oracle
// ---------------------------------------------------------------------------

fn geometry_oracle(cfg: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();

    let r54 = circumradius(5, 4).expect("hyperbolic");
    let r73 = circumradius(7, 3).expect("hyperbolic");
    let identity = |r: f64, p: f64, q: f64| {
        (r.cosh() - (std::f64::consts::PI / q).cos() / (std::f64::consts::PI / p).sin()).abs()
            < 1e-12
    };
    push(
        &mut checks,
        "radius-examples",
        identity(r54, 5.0, 4.0)
            && identity(r73, 7.0, 3.0)
            && (r54 - 0.6269).abs() < 5e-5
            && (r73 - 0.5453).abs() < 5e-5,
        format!("{{5,4}} circumradius {r54:.4}, {{7,3}} circumradius {r73:.4}"),
    );

    let mut census_fail = None;
    for (family, expected) in [
        (BallFamily::Penta, vec![1u64, 5, 15, 40]),
        (BallFamily::Hepta, vec![1u64, 7, 21, 56]),
    ] {
        let (p, q) = family.tiling();
        let patch = expand_with_cap(p, q, 4, cfg.tile_cap).expect("small patch");
        let census = patch.distance_census();
        let formula: Vec<u64> = (0..4)
            .map(|r| {
                if r == 0 {
                    1
                } else {
                    u64::try_from(ring_and_border(family, r).0).expect("small ring")
                }
            })
            .collect();
        if census != expected || formula != expected {
            census_fail = Some((family, census, formula));
            break;
        }
    }
    push(
        &mut checks,
        "ring-censuses",
        census_fail.is_none(),
        match census_fail {
            None => "constructed distance censuses are 1,5,15,40 and 1,7,21,56, matching ring(r) = n0*f_2r-1".to_string(),
            Some((family, census, formula)) => {
                format!("{family:?}: constructed {census:?} vs formula {formula:?}")
            }
        },
    );

    let mut ball_fail = None;
    for (family, expected) in [
        (BallFamily::Penta, [1i64, 6, 21, 61]),
        (BallFamily::Hepta, [1, 8, 29, 85]),
    ] {
        for (r, want) in expected.iter().enumerate() {
            if ball(family, r as u64) != BigInt::from(*want) {
                ball_fail = Some((family, r));
            }
        }
    }
    push(
        &mut checks,
        "ball-values",
        ball_fail.is_none(),
        match ball_fail {
            None => "ball(r) = n0(f_2r - 1) + 1 gives 1,6,21,61 and 1,8,29,85".to_string(),
            Some((family, r)) => format!("{family:?} ball({r}) is off"),
        },
    );

    let geometric_ball_2: u64 = expand_with_cap(5, 4, 3, cfg.tile_cap)
        .expect("small patch")
        .distance_census()
        .iter()
        .sum();
    let adopted = ball(BallFamily::Penta, 2);
    let variant = ball_text_variant(BallFamily::Penta, 2);
    push(
        &mut checks,
        "ball-adjudication",
        geometric_ball_2 == 21
            && adopted == BigInt::from(21)
            && variant == BigInt::from(16)
            && ball_text_variant(BallFamily::Penta, 1) == ball(BallFamily::Penta, 1),
        format!(
            "the two ball readings agree through r = 1 and split at r = 2 ({variant} vs {adopted}); construction counts {geometric_ball_2}"
        ),
    );

    let mut border_fail = None;
    for family in [BallFamily::Penta, BallFamily::Hepta] {
        let (p, q) = family.tiling();
        let patch = expand_with_cap(p, q, 4, cfg.tile_cap).expect("small patch");
        let outermost = patch.distance_census()[3];
        let (_, border) = ring_and_border(family, 2);
        let (ring3, _) = ring_and_border(family, 3);
        if BigInt::from(outermost) != border || border != ring3 {
            border_fail = Some((family, outermost, border));
            break;
        }
    }
    push(
        &mut checks,
        "border-is-next-ring",
        border_fail.is_none(),
        match border_fail {
            None => "border(r) = ring(r+1): edge-contact neighbors of ball(2) form ring(3)".to_string(),
            Some((family, outermost, border)) => {
                format!("{family:?}: constructed border {outermost} vs formula {border}")
            }
        },
    );

    let mut degree_fail = None;
    for family in [BallFamily::Penta, BallFamily::Hepta] {
        let (p, q) = family.tiling();
        let patch = expand_with_cap(p, q, 3, cfg.tile_cap).expect("small patch");
        for (point, tiles) in patch.vertex_clusters() {
            let innermost = tiles
                .iter()
                .map(|&t| patch.tiles()[t].distance)
                .min()
                .expect("cluster not empty");
            if innermost < 2 && tiles.len() != q as usize {
                degree_fail = Some((family, point, tiles.len()));
                break;
            }
        }
    }
    push(
        &mut checks,
        "vertex-degrees",
        degree_fail.is_none(),
        match degree_fail {
            None => "every interior vertex gathers exactly q tiles".to_string(),
            Some((family, point, len)) => format!(
                "{family:?}: vertex near ({:.4}, {:.4}) gathers {len} tiles",
                point.x(),
                point.y()
            ),
        },
    );

    let patch = expand_with_cap(5, 4, 0, cfg.tile_cap).expect("single cell");
    let vertices = &patch.tiles()[0].vertices;
    let probes = [
        DiskPoint::new(0.3, 0.1).expect("inside"),
        DiskPoint::new(-0.2, 0.45).expect("inside"),
        DiskPoint::new(0.0, -0.8).expect("inside"),
    ];
    let mut involution_fail = None;
    'involution: for i in 0..vertices.len() {
        let v1 = vertices[i].to_complex();
        let v2 = vertices[(i + 1) % vertices.len()].to_complex();
        let reflection = Mobius::reflection(&geodesic_through(v1, v2));
        if (reflection.apply(v1) - v1).norm() > 1e-10 {
            involution_fail = Some(format!("edge {i} moves its own endpoint"));
            break;
        }
        for (a, b) in [(probes[0], probes[1]), (probes[1], probes[2])] {
            let ra = DiskPoint::from_complex(reflection.apply(a.to_complex()))
                .expect("reflection stays in the disk");
            let rb = DiskPoint::from_complex(reflection.apply(b.to_complex()))
                .expect("reflection stays in the disk");
            if (ra.distance(rb) - a.distance(b)).abs() > 1e-10 {
                involution_fail = Some(format!("edge {i} distorts the metric"));
                break 'involution;
            }
        }
        for probe in probes {
            let twice = reflection.apply(reflection.apply(probe.to_complex()));
            if (twice - probe.to_complex()).norm() > 1e-10 {
                involution_fail = Some(format!("edge {i} reflection is not an involution"));
                break 'involution;
            }
        }
    }
    push(
        &mut checks,
        "reflection-involution",
        involution_fail.is_none(),
        match involution_fail {
            None => "edge reflections fix their geodesic, preserve the metric, and square to the identity".to_string(),
            Some(witness) => witness,
        },
    );

    let mut step_fail = None;
    'step: for (p, q) in [(5u32, 4u32), (7, 3)] {
        let patch = expand_with_cap(p, q, 2, cfg.tile_cap).expect("small patch");
        let step = 2.0 * circumradius(p, q).expect("hyperbolic");
        let edge = edge_length(p, q).expect("hyperbolic");
        for &(a, b) in patch.adjacency() {
            let d = patch.tiles()[a].center.distance(patch.tiles()[b].center);
            if (d - step).abs() > geometry::METRIC_TOLERANCE {
                step_fail = Some(format!("{{{p},{q}}} centers {a},{b} sit {d:.6} apart"));
                break 'step;
            }
        }
        for tile in patch.tiles() {
            for (i, v) in tile.vertices.iter().enumerate() {
                let w = tile.vertices[(i + 1) % tile.vertices.len()];
                if (v.distance(w) - edge).abs() > geometry::METRIC_TOLERANCE {
                    step_fail = Some(format!("{{{p},{q}}} tile {} edge {i} drifts", tile.id));
                    break 'step;
                }
            }
        }
    }
    push(
        &mut checks,
        "edge-transitivity",
        step_fail.is_none(),
        match step_fail {
            None => "all edges share the tiling edge length; adjacent centers sit 2R apart".to_string(),
            Some(witness) => witness,
        },
    );

    let area_sanity = polygon_area(5, 4).expect("hyperbolic") == big(1)
        && polygon_area(7, 3).expect("hyperbolic")
            == BigRational::new(BigInt::from(2), BigInt::from(3));
    push(
        &mut checks,
        "cell-areas",
        area_sanity,
        "cell areas: {5,4} = 1 d, {7,3} = 2/3 d",
    );

    checks
}
