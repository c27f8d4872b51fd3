//! Exact census machinery for the regular tilings `{p,q}` of the hyperbolic
//! plane.
//!
//! The library counts tiles and areas of infinite tilings two ways at once:
//! symbolically, over a grossone-style numeral `G` that stands for the number
//! of unit steps an idealized observer can take, and concretely, by pinning
//! `G` to a finite budget and evaluating every formula in exact integer or
//! rational arithmetic.  The pieces:
//!
//! * [`grossone`] — the numeral itself: finite sums of rational multiples of
//!   rational powers of `G`, with total order, ring operations, and budget
//!   evaluation;
//! * [`sequences`] — the linear recurrences that count spanning-tree levels
//!   of the tilings, with cumulative tables, observable heights, and growth
//!   roots;
//! * [`trees`] — explicit black/white substitution trees whose levels realize
//!   those sequences node by node;
//! * [`census`] — tile counts and areas of the even, odd, and r-augmented
//!   splittings as exact linear forms, plus the cross-tiling relations that
//!   tie them together;
//! * [`geometry`] — an independent Poincaré-disk construction of finite
//!   patches, used as a floating-point oracle against the combinatorics, with
//!   SVG output;
//! * [`suites`] — the named verification suites behind `tessella verify`.

pub mod census;
pub mod geometry;
pub mod grossone;
pub mod sequences;
pub mod suites;
pub mod trees;

/// How a counting question is to be answered: over the symbolic numeral `G`,
/// or evaluated at a finite [`grossone::Budget`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Symbolic,
    Concrete,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Symbolic => write!(f, "symbolic"),
            Mode::Concrete => write!(f, "concrete"),
        }
    }
}
