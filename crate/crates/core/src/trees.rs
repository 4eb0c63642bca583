//! Full binary trees and their statistics.
//!
//! A tree is either a leaf, written `.`, or an internal node `[L,R]`. The four
//! statistics are defined by structural recursion:
//!
//! | stat | leaf | `[L,R]` |
//! |------|------|---------|
//! | `v`  | 0    | `v(L) + v(R) + 1` |
//! | `j`  | 0    | `j(R)` if `L` is a leaf, else `j(L) + j(R) + 1` |
//! | `d`  | 0    | `d(R) + 1` |
//! | `jd` | 0    | `jd(L) + jd(R) + d(L)` |
//!
//! Every traversal here uses an explicit stack so that degenerate combs with
//! hundreds of thousands of nodes are safe.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::algebra::{ExactRational, Poly2, Series};
use crate::error::Error;

/// Enumeration refuses sizes above this unless the caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// A full binary tree. Cloning is shallow: subtrees are shared.
#[derive(Clone, Default)]
pub struct BinaryTree(Option<Arc<Node>>);

struct Node {
    left: BinaryTree,
    right: BinaryTree,
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree(None)
    }

    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree(Some(Arc::new(Node { left, right })))
    }

    pub fn is_leaf(&self) -> bool {
        self.0.is_none()
    }

    pub fn children(&self) -> Option<(&BinaryTree, &BinaryTree)> {
        self.0.as_deref().map(|n| (&n.left, &n.right))
    }

    /// `[.,[.,[ ... ]]]` with `n` internal nodes.
    pub fn right_comb(n: usize) -> Self {
        (0..n).fold(Self::leaf(), |acc, _| Self::node(Self::leaf(), acc))
    }

    /// `[[[ ... ],.],.]` with `n` internal nodes.
    pub fn left_comb(n: usize) -> Self {
        (0..n).fold(Self::leaf(), |acc, _| Self::node(acc, Self::leaf()))
    }

    /// Parses the bracket notation, refusing nesting deeper than `max_depth`.
    /// Whitespace is ignored.
    pub fn parse_with_limit(text: &str, max_depth: usize) -> Result<Self, Error> {
        enum Frame {
            Open,
            AfterLeft(BinaryTree),
            NeedRight(BinaryTree),
            HaveBoth(BinaryTree, BinaryTree),
        }
        let err = |position, message| Error::Parse { position, message };
        let mut stack: Vec<Frame> = Vec::new();
        let mut done: Option<BinaryTree> = None;

        for (pos, ch) in text.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            if done.is_some() {
                return Err(err(pos, "trailing input after complete tree"));
            }
            let expecting_tree =
                matches!(stack.last(), None | Some(Frame::Open | Frame::NeedRight(_)));
            let mut finished = None;
            match ch {
                '[' | '.' if !expecting_tree => return Err(err(pos, "expected ',' or ']'")),
                '[' => {
                    if stack.len() >= max_depth {
                        return Err(Error::TooDeep {
                            depth: stack.len() + 1,
                            limit: max_depth,
                        });
                    }
                    stack.push(Frame::Open);
                }
                '.' => finished = Some(BinaryTree::leaf()),
                ',' => match stack.pop() {
                    Some(Frame::AfterLeft(l)) => stack.push(Frame::NeedRight(l)),
                    _ => return Err(err(pos, "unexpected ','")),
                },
                ']' => match stack.pop() {
                    Some(Frame::HaveBoth(l, r)) => finished = Some(BinaryTree::node(l, r)),
                    _ => return Err(err(pos, "unexpected ']'")),
                },
                _ => return Err(err(pos, "unexpected character")),
            }
            if let Some(tree) = finished {
                match stack.pop() {
                    None => done = Some(tree),
                    Some(Frame::Open) => stack.push(Frame::AfterLeft(tree)),
                    Some(Frame::NeedRight(l)) => stack.push(Frame::HaveBoth(l, tree)),
                    Some(_) => unreachable!("tree accepted only where one is expected"),
                }
            }
        }
        done.ok_or(err(text.len(), "unexpected end of input"))
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse_with_limit(s, usize::MAX)
    }
}

impl Drop for BinaryTree {
    // Iterative so that dropping a deep comb cannot exhaust the call stack.
    fn drop(&mut self) {
        let Some(root) = self.0.take() else { return };
        let mut stack = Vec::new();
        stack.push(root);
        while let Some(arc) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(arc) {
                stack.extend(node.left.0.take());
                stack.extend(node.right.0.take());
            }
        }
    }
}

impl PartialEq for BinaryTree {
    fn eq(&self, other: &Self) -> bool {
        let mut stack = alloc::vec![(self, other)];
        while let Some((a, b)) = stack.pop() {
            match (&a.0, &b.0) {
                (None, None) => {}
                (Some(x), Some(y)) => {
                    if !Arc::ptr_eq(x, y) {
                        stack.push((&x.left, &y.left));
                        stack.push((&x.right, &y.right));
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for BinaryTree {}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Item<'a> {
            Tree(&'a BinaryTree),
            Text(&'static str),
        }
        let mut stack = alloc::vec![Item::Tree(self)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Text(s) => f.write_str(s)?,
                Item::Tree(t) => match t.children() {
                    None => f.write_str(".")?,
                    Some((l, r)) => {
                        f.write_str("[")?;
                        stack.push(Item::Text("]"));
                        stack.push(Item::Tree(r));
                        stack.push(Item::Text(","));
                        stack.push(Item::Tree(l));
                    }
                },
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryTree({self})")
    }
}

/// The four statistics of one tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TreeStats {
    /// Internal vertices.
    pub v: u64,
    /// Number of jumps.
    pub j: u64,
    /// Depth of the rightmost leaf.
    pub d: u64,
    /// Sum of jump distances.
    pub jd: u64,
}

/// Evaluates the four recursions with an explicit post-order work stack.
pub fn compute_stats(tree: &BinaryTree) -> TreeStats {
    let mut work: Vec<(&BinaryTree, bool)> = alloc::vec![(tree, false)];
    let mut done: Vec<TreeStats> = Vec::new();
    while let Some((t, children_done)) = work.pop() {
        match t.children() {
            None => done.push(TreeStats::default()),
            Some((l, r)) if !children_done => {
                work.push((t, true));
                work.push((r, false));
                work.push((l, false));
            }
            Some((l, _)) => {
                let rs = done.pop().expect("right stats");
                let ls = done.pop().expect("left stats");
                done.push(TreeStats {
                    v: ls.v + rs.v + 1,
                    j: if l.is_leaf() { rs.j } else { ls.j + rs.j + 1 },
                    d: rs.d + 1,
                    jd: ls.jd + rs.jd + ls.d,
                });
            }
        }
    }
    done.pop().expect("root stats")
}

/// Lazy stream of every tree with exactly `n` internal vertices.
pub type TreeStream = Box<dyn Iterator<Item = BinaryTree> + Send>;

/// Every tree with `n` internal vertices, each exactly once, ordered by left
/// subtree size ascending and then recursively. Refuses `n` above
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_trees(n: usize) -> Result<TreeStream, Error> {
    enumerate_trees_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_capped(n: usize, cap: usize) -> Result<TreeStream, Error> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(trees_of_size(n))
}

fn trees_of_size(n: usize) -> TreeStream {
    if n == 0 {
        return Box::new(core::iter::once(BinaryTree::leaf()));
    }
    Box::new((0..n).flat_map(move |k| {
        trees_of_size(k).flat_map(move |left| {
            trees_of_size(n - 1 - k).map(move |right| BinaryTree::node(left.clone(), right))
        })
    }))
}

/// `(2n)! / (n! (n+1)!)`.
pub fn catalan(n: usize) -> BigUint {
    // C_{k+1} = C_k * 2(2k+1) / (k+2), exact at every step.
    let mut c = BigUint::from(1u32);
    for k in 0..n as u64 {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

/// Truncated weight enumerator `sum_T x^V t^D q^J` over all trees with at
/// most `n_max` internal vertices, by direct enumeration.
pub fn brute_force_enumerator(n_max: usize) -> Result<Series, Error> {
    brute_force_enumerator_capped(n_max, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_enumerator_capped(n_max: usize, cap: usize) -> Result<Series, Error> {
    weight_enumerator(n_max, cap, |s| (s.d as u32, s.j as u32))
}

/// Brute-force enumerator with a caller-chosen weight: each tree contributes
/// `x^V t^a q^b` where `(a, b) = weight(stats)`.
pub fn weight_enumerator(
    n_max: usize,
    cap: usize,
    weight: impl Fn(&TreeStats) -> (u32, u32),
) -> Result<Series, Error> {
    if n_max > cap {
        return Err(Error::CapExceeded { n: n_max, cap });
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for tree in trees_of_size(n) {
            *counts.entry(weight(&compute_stats(&tree))).or_default() += 1;
        }
        let mut p = Poly2::zero();
        for ((a, b), c) in counts {
            p.add_term(a, b, ExactRational::from_integer(c.into()));
        }
        coeffs.push(p);
    }
    Ok(Series::new(coeffs))
}

/// Renders a tree; convenience for callers without `Display` in scope.
pub fn to_text(tree: &BinaryTree) -> String {
    alloc::format!("{tree}")
}
