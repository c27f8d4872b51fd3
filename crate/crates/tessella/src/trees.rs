//! Explicit black/white substitution trees for the `{p,4}` tilings.
//!
//! A white node spawns one black child followed by `p−3` white ones; a black
//! node spawns one black child followed by `p−4` white ones.  The standard
//! tree is rooted white, the smaller tree black.  Levels realize, node by
//! node, the counting sequences of [`crate::sequences`]; consecutive
//! numbering of the nodes level by level gives each level a contiguous
//! range.

use num_bigint::BigInt;
use thiserror::Error;

use crate::sequences::{Family, RecurrenceSpec};

/// Default ceiling on materialized nodes (the CLI can override it through
/// the environment).
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum NodeColor {
    Black,
    White,
}

impl NodeColor {
    pub fn as_char(self) -> char {
        match self {
            NodeColor::Black => 'B',
            NodeColor::White => 'W',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    /// Rooted at a white node.
    Standard,
    /// Rooted at a black node.
    Smaller,
}

impl TreeKind {
    pub fn root(self) -> NodeColor {
        match self {
            TreeKind::Standard => NodeColor::White,
            TreeKind::Smaller => NodeColor::Black,
        }
    }

    pub fn family(self) -> Family {
        match self {
            TreeKind::Standard => Family::P4Standard,
            TreeKind::Smaller => Family::P4Smaller,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree would reach {nodes} nodes at level {level}, over the cap of {cap}")]
    TreeTooLarge { nodes: u64, level: u64, cap: u64 },
}

/// The branching rule for one side count `p ≥ 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstitutionRules {
    p: u32,
}

impl SubstitutionRules {
    pub fn new(p: u32) -> Self {
        assert!(p >= 5, "substitution rules need p ≥ 5, got {p}");
        SubstitutionRules { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Children of a white node: `B W^(p−3)`.
    pub fn white_children(&self) -> u32 {
        self.p - 2
    }

    /// Children of a black node: `B W^(p−4)`.
    pub fn black_children(&self) -> u32 {
        self.p - 3
    }

    pub fn children(&self, color: NodeColor) -> impl Iterator<Item = NodeColor> {
        let whites = match color {
            NodeColor::White => self.p - 3,
            NodeColor::Black => self.p - 4,
        };
        std::iter::once(NodeColor::Black)
            .chain(std::iter::repeat(NodeColor::White).take(whites as usize))
    }
}

/// A fully materialized tree: every level's colors in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionTree {
    rules: SubstitutionRules,
    kind: TreeKind,
    levels: Vec<Vec<NodeColor>>,
}

pub fn build_tree(p: u32, kind: TreeKind, height: u64) -> Result<SubstitutionTree, TreeError> {
    build_tree_with_cap(p, kind, height, DEFAULT_NODE_CAP)
}

pub fn build_tree_with_cap(
    p: u32,
    kind: TreeKind,
    height: u64,
    cap: u64,
) -> Result<SubstitutionTree, TreeError> {
    let rules = SubstitutionRules::new(p);
    let mut levels = vec![vec![kind.root()]];
    let mut total = 1u64;
    if total > cap {
        return Err(TreeError::TreeTooLarge {
            nodes: total,
            level: 0,
            cap,
        });
    }
    for level in 1..=height {
        let current = levels.last().expect("at least the root level");
        let blacks = current.iter().filter(|c| **c == NodeColor::Black).count() as u64;
        let whites = current.len() as u64 - blacks;
        let next_size = blacks * (p as u64 - 3) + whites * (p as u64 - 2);
        if total + next_size > cap {
            return Err(TreeError::TreeTooLarge {
                nodes: total + next_size,
                level,
                cap,
            });
        }
        let mut next = Vec::with_capacity(next_size as usize);
        for &color in current {
            next.extend(rules.children(color));
        }
        debug_assert_eq!(next.len() as u64, next_size);
        total += next_size;
        levels.push(next);
    }
    Ok(SubstitutionTree { rules, kind, levels })
}

impl SubstitutionTree {
    pub fn p(&self) -> u32 {
        self.rules.p
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn height(&self) -> u64 {
        self.levels.len() as u64 - 1
    }

    pub fn level(&self, n: u64) -> &[NodeColor] {
        &self.levels[n as usize]
    }

    pub fn node_count(&self) -> u64 {
        self.levels.iter().map(|l| l.len() as u64).sum()
    }

    pub fn level_counts(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.len() as u64).collect()
    }

    /// `(blacks, whites)` at one level.
    pub fn color_census(&self, level: u64) -> (u64, u64) {
        let nodes = self.level(level);
        let blacks = nodes.iter().filter(|c| **c == NodeColor::Black).count() as u64;
        (blacks, nodes.len() as u64 - blacks)
    }

    /// Per-level counts, one line per level: `n: <blacks> <whites>`.
    pub fn dump_counts(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.height() {
            let (b, w) = self.color_census(n);
            out.push_str(&format!("{n}: {b} {w}\n"));
        }
        out
    }

    /// Full color strings, only for small trees (height ≤ 8).
    pub fn dump_colors(&self) -> Option<String> {
        if self.height() > 8 {
            return None;
        }
        let mut out = String::new();
        for (n, level) in self.levels.iter().enumerate() {
            out.push_str(&format!("{n}: "));
            out.extend(level.iter().map(|c| c.as_char()));
            out.push('\n');
        }
        Some(out)
    }
}

/// The contiguous numbering range `[first, last]` occupied by one level of
/// the standard tree when nodes are numbered 1, 2, … across levels.
pub fn numbering_range(p: u32, level: u64) -> (BigInt, BigInt) {
    let spec = RecurrenceSpec::new(Family::P4Standard, p, 4).expect("p ≥ 5 on q = 4");
    let first = spec.cumulative(level as i64 - 1) + 1;
    let last = spec.cumulative(level as i64);
    (first, last)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colors(tree: &SubstitutionTree, level: u64) -> String {
        tree.level(level).iter().map(|c| c.as_char()).collect()
    }

    #[test]
    fn pentagonal_standard_tree_first_levels() {
        let tree = build_tree(5, TreeKind::Standard, 3).unwrap();
        assert_eq!(colors(&tree, 0), "W");
        assert_eq!(colors(&tree, 1), "BWW");
        assert_eq!(colors(&tree, 2), "BWBWWBWW");
        assert_eq!(tree.level_counts(), vec![1, 3, 8, 21]);
    }

    #[test]
    fn pentagonal_smaller_tree_first_levels() {
        let tree = build_tree(5, TreeKind::Smaller, 3).unwrap();
        assert_eq!(colors(&tree, 0), "B");
        assert_eq!(colors(&tree, 1), "BW");
        assert_eq!(colors(&tree, 2), "BWBWW");
        assert_eq!(tree.level_counts(), vec![1, 2, 5, 13]);
    }

    #[test]
    fn hand_expanded_levels_for_larger_p() {
        let t6 = build_tree(6, TreeKind::Standard, 2).unwrap();
        assert_eq!(colors(&t6, 1), "BWWW");
        // B → BWW, three W → BWWW each
        assert_eq!(colors(&t6, 2), "BWWBWWWBWWWBWWW");
        assert_eq!(t6.level_counts(), vec![1, 4, 15]);
        let t7 = build_tree(7, TreeKind::Standard, 2).unwrap();
        assert_eq!(t7.level_counts(), vec![1, 5, 24]);
    }

    #[test]
    fn levels_match_the_recurrences() {
        for p in 5..=9u32 {
            for kind in [TreeKind::Standard, TreeKind::Smaller] {
                let spec = RecurrenceSpec::new(kind.family(), p, 4).unwrap();
                // deepest height within the node cap, at most 9
                let mut height = 0u64;
                while height < 9
                    && spec.cumulative(height as i64 + 1) <= BigInt::from(DEFAULT_NODE_CAP)
                {
                    height += 1;
                }
                let tree = build_tree(p, kind, height).unwrap();
                let counts = tree.level_counts();
                assert_eq!(counts.len() as u64, height + 1);
                for (n, count) in counts.iter().enumerate() {
                    assert_eq!(
                        BigInt::from(*count),
                        spec.term(n as i64),
                        "level {n} of the {kind:?} tree at p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn every_node_contributes_exactly_one_black_child() {
        for p in 5..=8u32 {
            for kind in [TreeKind::Standard, TreeKind::Smaller] {
                let tree = build_tree(p, kind, 7).unwrap();
                for n in 1..=tree.height() {
                    let (blacks, _) = tree.color_census(n);
                    assert_eq!(
                        blacks,
                        tree.level(n - 1).len() as u64,
                        "blacks at level {n} equal the parent level size (p={p}, {kind:?})"
                    );
                }
            }
        }
    }

    #[test]
    fn pentagonal_color_census_interleaves_fibonacci() {
        let fib = RecurrenceSpec::new(Family::Fib, 5, 4).unwrap();
        let tree = build_tree(5, TreeKind::Standard, 8).unwrap();
        for n in 1..=8u64 {
            let (blacks, whites) = tree.color_census(n);
            assert_eq!(BigInt::from(blacks), fib.term(2 * n as i64 - 1));
            assert_eq!(BigInt::from(whites), fib.term(2 * n as i64));
        }
    }

    #[test]
    fn numbering_ranges_tile_the_integers() {
        for p in 5..=9u32 {
            let mut expected_first = BigInt::from(1);
            for level in 0..=10u64 {
                let (first, last) = numbering_range(p, level);
                assert_eq!(first, expected_first, "ranges must be contiguous at p={p}");
                assert!(last >= first);
                expected_first = &last + 1;
            }
        }
    }

    #[test]
    fn pentagonal_numbering_range_in_fibonacci_terms() {
        let fib = RecurrenceSpec::new(Family::Fib, 5, 4).unwrap();
        for level in 0..=12u64 {
            let (first, last) = numbering_range(5, level);
            assert_eq!(first, fib.term(2 * level as i64), "first number is f_{{2n}}");
            assert_eq!(
                last,
                fib.term(2 * level as i64 + 2) - 1,
                "last number is f_{{2n+2}} − 1"
            );
        }
    }

    #[test]
    fn node_cap_stops_construction_before_materializing() {
        let err = build_tree_with_cap(5, TreeKind::Standard, 10, 100).unwrap_err();
        match err {
            TreeError::TreeTooLarge { nodes, level, cap } => {
                assert_eq!(cap, 100);
                // U: 1, 4, 12, 33, 88, 232 — the level-5 extension breaks 100
                assert_eq!((nodes, level), (232, 5));
            }
        }
        // exactly at the cap is fine
        let tree = build_tree_with_cap(5, TreeKind::Standard, 4, 88).unwrap();
        assert_eq!(tree.node_count(), 88);
        assert!(build_tree_with_cap(5, TreeKind::Standard, 5, 231).is_err());
    }

    #[test]
    fn dumps_are_stable() {
        let tree = build_tree(5, TreeKind::Standard, 2).unwrap();
        assert_eq!(tree.dump_counts(), "0: 0 1\n1: 1 2\n2: 3 5\n");
        assert_eq!(tree.dump_colors().unwrap(), "0: W\n1: BWW\n2: BWBWWBWW\n");
        let tall = build_tree(5, TreeKind::Standard, 9).unwrap();
        assert_eq!(tall.dump_colors(), None, "no color dump above height 8");
        assert_eq!(tall.dump_counts().lines().count(), 10);
    }

    #[test]
    fn smaller_tree_never_outgrows_the_standard_tree() {
        for p in 5..=9u32 {
            let standard = build_tree(p, TreeKind::Standard, 8).unwrap();
            let smaller = build_tree(p, TreeKind::Smaller, 8).unwrap();
            for (n, (s, m)) in standard
                .level_counts()
                .iter()
                .zip(smaller.level_counts())
                .enumerate()
            {
                assert!(m <= *s, "smaller ≤ standard at level {n}, p={p}");
            }
        }
    }
}
