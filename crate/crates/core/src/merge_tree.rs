//! The 3-uniform class hypergraph and its nearly spanning tree, which
//! fixes the order in which necklaces are merged into chains.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{check_n, ClassLabel};

/// Hyperedge `<x,y,z>` joining the classes `[x,y]`, `[y,z]` and `[z,x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HyperEdge {
    pub x: u8,
    pub y: u8,
    pub z: u8,
}

impl HyperEdge {
    pub const fn new(x: u8, y: u8, z: u8) -> Self {
        Self { x, y, z }
    }

    pub fn classes(&self) -> [ClassLabel; 3] {
        [
            ClassLabel::new(self.x, self.y),
            ClassLabel::new(self.y, self.z),
            ClassLabel::new(self.z, self.x),
        ]
    }

    /// The edge and its two cyclic rotations, in the order tried when
    /// looking for the already constructed class.
    pub fn rotations(&self) -> [HyperEdge; 3] {
        [
            *self,
            HyperEdge::new(self.y, self.z, self.x),
            HyperEdge::new(self.z, self.x, self.y),
        ]
    }
}

impl fmt::Display for HyperEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.x, self.y, self.z)
    }
}

const BASE_EDGES: [HyperEdge; 9] = [
    HyperEdge::new(1, 2, 3),
    HyperEdge::new(1, 2, 4),
    HyperEdge::new(1, 2, 5),
    HyperEdge::new(1, 5, 3),
    HyperEdge::new(2, 3, 5),
    HyperEdge::new(1, 3, 4),
    HyperEdge::new(2, 4, 3),
    HyperEdge::new(1, 4, 5),
    HyperEdge::new(2, 5, 4),
];

/// An ordered nearly spanning tree: covers every class except `[2,1]`.
/// The edge order is part of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeTree {
    n: usize,
    edges: Vec<HyperEdge>,
}

impl MergeTree {
    pub fn from_edges(n: usize, edges: Vec<HyperEdge>) -> Self {
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    /// One edge per line as `x y z`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.x, e.y, e.z));
        }
        out
    }
}

pub fn build_merge_tree(n: usize) -> Result<MergeTree> {
    check_n(n, 2)?;
    let mut edges = BASE_EDGES.to_vec();
    for m in 3..=n {
        let (a, b) = ((2 * m) as u8, (2 * m + 1) as u8);
        for x in 2..=a - 2 {
            edges.push(HyperEdge::new(x, x + 1, a));
        }
        for x in 2..=a - 2 {
            edges.push(HyperEdge::new(x, x + 1, b));
        }
        edges.extend([
            HyperEdge::new(1, 2, a),
            HyperEdge::new(1, a, a - 1),
            HyperEdge::new(1, b, a - 1),
            HyperEdge::new(1, a, b),
            HyperEdge::new(2, b, a),
        ]);
    }
    Ok(MergeTree { n, edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    /// Elements repeat or fall outside `[2n+1]`.
    MalformedEdge { index: usize, edge: HyperEdge },
    /// The edge contains the excluded class `[2,1]`.
    TouchesExcluded { index: usize, edge: HyperEdge },
    /// Processed in order, the edge meets no connected class.
    Disconnected { index: usize, edge: HyperEdge },
    /// Processed in order, the edge meets two or three connected classes.
    Cycle { index: usize, edge: HyperEdge, present: usize },
    Uncovered(ClassLabel),
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MalformedEdge { index, edge } => write!(f, "edge #{index} {edge} is malformed"),
            Self::TouchesExcluded { index, edge } => {
                write!(f, "edge #{index} {edge} contains the class [2,1]")
            }
            Self::Disconnected { index, edge } => {
                write!(f, "edge #{index} {edge} is not attached to the tree built so far")
            }
            Self::Cycle { index, edge, present } => {
                write!(f, "edge #{index} {edge} closes a cycle ({present} classes already present)")
            }
            Self::Uncovered(c) => write!(f, "class {c} is not covered"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TreeReport {
    pub violations: Vec<TreeViolation>,
}

impl TreeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&TreeViolation> {
        self.violations.first()
    }
}

/// Checks that processing the edges in order from `[1,2]` attaches each
/// edge by exactly one class and ends up covering all classes but `[2,1]`.
pub fn validate_tree(tree: &MergeTree) -> TreeReport {
    let len = 2 * tree.n + 1;
    let excluded = ClassLabel::new(2, 1);
    let mut report = TreeReport::default();
    let mut covered: HashSet<ClassLabel> = HashSet::from([ClassLabel::new(1, 2)]);
    for (index, edge) in tree.edges.iter().copied().enumerate() {
        let elems = [edge.x, edge.y, edge.z];
        let in_range = elems.iter().all(|&v| v >= 1 && v as usize <= len);
        if !in_range || edge.x == edge.y || edge.y == edge.z || edge.z == edge.x {
            report.violations.push(TreeViolation::MalformedEdge { index, edge });
            continue;
        }
        let classes = edge.classes();
        if classes.contains(&excluded) {
            report.violations.push(TreeViolation::TouchesExcluded { index, edge });
            continue;
        }
        let present = classes.iter().filter(|c| covered.contains(c)).count();
        match present {
            1 => covered.extend(classes),
            0 => report.violations.push(TreeViolation::Disconnected { index, edge }),
            _ => report.violations.push(TreeViolation::Cycle { index, edge, present }),
        }
    }
    for x in 1..=len as u8 {
        for y in 1..=len as u8 {
            let c = ClassLabel::new(x, y);
            if x != y && c != excluded && !covered.contains(&c) {
                report.violations.push(TreeViolation::Uncovered(c));
            }
        }
    }
    report
}

/// Parses the `x y z` dump format.
pub fn parse_tree_dump(n: usize, text: &str) -> Result<MergeTree> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let nums: Vec<u8> = line
            .split_whitespace()
            .map(|s| s.parse::<u8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        let [x, y, z] = nums[..] else {
            return Err(Error::Parse { line: i + 1, msg: "expected three integers".into() });
        };
        edges.push(HyperEdge::new(x, y, z));
    }
    Ok(MergeTree { n, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_tree_is_listed_edges() {
        let t = build_merge_tree(2).unwrap();
        assert_eq!(t.edges(), &BASE_EDGES);
        assert!(validate_tree(&t).is_valid());
    }

    #[test]
    fn edge_counts() {
        for n in 2..=6 {
            assert_eq!(build_merge_tree(n).unwrap().edges().len(), n * (2 * n + 1) - 1);
        }
        assert!(build_merge_tree(1).is_err());
    }

    #[test]
    fn s7_recursive_step_order() {
        let t = build_merge_tree(3).unwrap();
        let added: Vec<String> = t.edges()[9..].iter().map(|e| e.to_string()).collect();
        assert_eq!(
            added,
            [
                "<2,3,6>", "<3,4,6>", "<4,5,6>", "<2,3,7>", "<3,4,7>", "<4,5,7>", "<1,2,6>",
                "<1,6,5>", "<1,7,5>", "<1,6,7>", "<2,7,6>"
            ]
        );
    }

    #[test]
    fn trees_validate_up_to_n5() {
        for n in 2..=5 {
            let t = build_merge_tree(n).unwrap();
            let report = validate_tree(&t);
            assert!(report.is_valid(), "n={n}: {:?}", report.first_violation());
            for e in t.edges() {
                assert!(!e.classes().contains(&ClassLabel::new(2, 1)));
            }
        }
    }

    #[test]
    fn removing_first_edge_breaks_coverage() {
        let mut edges = BASE_EDGES.to_vec();
        edges.remove(0);
        let report = validate_tree(&MergeTree::from_edges(2, edges));
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(v, TreeViolation::Uncovered(_))));
    }

    #[test]
    fn appending_edge_closes_cycle() {
        let mut edges = BASE_EDGES.to_vec();
        edges.push(HyperEdge::new(3, 4, 5));
        let report = validate_tree(&MergeTree::from_edges(2, edges));
        assert!(matches!(
            report.first_violation(),
            Some(TreeViolation::Cycle { index: 9, present: 3, .. })
        ));
    }

    #[test]
    fn excluded_and_malformed_edges() {
        let report = validate_tree(&MergeTree::from_edges(
            2,
            vec![HyperEdge::new(2, 1, 3), HyperEdge::new(1, 1, 3), HyperEdge::new(1, 2, 9)],
        ));
        assert!(matches!(report.violations[0], TreeViolation::TouchesExcluded { .. }));
        assert!(matches!(report.violations[1], TreeViolation::MalformedEdge { .. }));
        assert!(matches!(report.violations[2], TreeViolation::MalformedEdge { .. }));
    }

    #[test]
    fn dump_round_trip() {
        let t = build_merge_tree(3).unwrap();
        let text = t.dump();
        assert!(text.starts_with("1 2 3\n1 2 4\n"));
        assert_eq!(parse_tree_dump(3, &text).unwrap(), t);
        assert!(parse_tree_dump(3, "1 2\n").is_err());
    }
}
