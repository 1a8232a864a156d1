//! Even plane trees (every vertex has an even number of children), the
//! r-index, and the shift/lift generation of even trees along lattice paths.
//!
//! A vertex with `2k` children has `k` left children followed by `k` right
//! children. The r-index is half the total degree of all right children.
//!
//! Trees generated at odd x-coordinates carry a marked ("dotted") pair of
//! outer root edges; the root's first child is then always a leaf.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GridPosition, LatticePath, Step};
use crate::poly::Poly;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TreeNode {
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn leaf() -> Self {
        TreeNode::default()
    }

    pub fn with_children(children: Vec<TreeNode>) -> Self {
        TreeNode { children }
    }

    pub fn degree(&self) -> usize {
        self.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of edges in the subtree.
    pub fn edges(&self) -> usize {
        self.children.iter().map(|c| 1 + c.edges()).sum()
    }

    fn is_even(&self) -> bool {
        self.degree().is_multiple_of(2) && self.children.iter().all(TreeNode::is_even)
    }

    // sum of degrees of right children over the whole subtree
    fn right_degree_sum(&self) -> usize {
        let half = self.degree() / 2;
        let own: usize = self.children[half..].iter().map(TreeNode::degree).sum();
        own + self.children.iter().map(TreeNode::right_degree_sum).sum::<usize>()
    }

    fn write_parens(&self, out: &mut String) {
        for c in &self.children {
            out.push('(');
            c.write_parens(out);
            out.push(')');
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct EvenTree {
    dotted: bool,
    root: TreeNode,
}

impl EvenTree {
    pub fn empty() -> Self {
        EvenTree::default()
    }

    pub fn new(root: TreeNode, dotted: bool) -> Result<Self> {
        if !root.is_even() {
            return Err(Error::InvalidTree("a vertex has an odd number of children".into()));
        }
        if dotted && (root.degree() < 2 || !root.children[0].is_leaf()) {
            return Err(Error::InvalidTree("a dotted root needs at least two children and a leaf first child".into()));
        }
        Ok(EvenTree { dotted, root })
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn is_dotted(&self) -> bool {
        self.dotted
    }

    /// Edge count, including a dotted pair.
    pub fn edges(&self) -> usize {
        self.root.edges()
    }

    pub fn r_index(&self) -> u32 {
        let sum = self.root.right_degree_sum();
        assert!(sum.is_multiple_of(2), "right-child degree sum {sum} of an even tree is odd");
        (sum / 2) as u32
    }

    /// Parenthesis encoding of the root's children, prefixed by `*` when dotted.
    pub fn to_parens(&self) -> String {
        let mut s = String::with_capacity(2 * self.edges() + 1);
        if self.dotted {
            s.push('*');
        }
        self.root.write_parens(&mut s);
        s
    }
}

impl fmt::Display for EvenTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

impl FromStr for EvenTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (dotted, body) = match s.strip_prefix('*') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        // stack of partially built nodes; bottom is the root
        let mut stack = vec![TreeNode::leaf()];
        for (idx, c) in body.chars().enumerate() {
            match c {
                '(' => stack.push(TreeNode::leaf()),
                ')' if stack.len() > 1 => {
                    let node = stack.pop().unwrap();
                    stack.last_mut().unwrap().children.push(node);
                }
                ')' => return Err(Error::InvalidTree(format!("unbalanced ')' at index {idx}"))),
                other => return Err(Error::InvalidTree(format!("unexpected {other:?} at index {idx}"))),
            }
        }
        if stack.len() != 1 {
            return Err(Error::InvalidTree("unbalanced '('".into()));
        }
        EvenTree::new(stack.pop().unwrap(), dotted)
    }
}

#[derive(Deserialize)]
struct TreeJson {
    dotted: bool,
    root: TreeNode,
}

impl<'de> Deserialize<'de> for EvenTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TreeJson::deserialize(d)?;
        EvenTree::new(raw.root, raw.dotted).map_err(serde::de::Error::custom)
    }
}

/// All subtrees with exactly `edges` edges, indexed by size.
fn subtrees_by_size(max_edges: usize) -> Vec<Vec<TreeNode>> {
    let mut by_size: Vec<Vec<TreeNode>> = vec![Vec::new(); max_edges + 1];
    by_size[0].push(TreeNode::leaf());
    for e in (2..=max_edges).step_by(2) {
        let mut out = Vec::new();
        for kids in (2..=e).step_by(2) {
            // distribute the remaining edges over `kids` ordered children
            let mut forest = Vec::new();
            forests(&by_size, kids, e - kids, &mut Vec::new(), &mut forest);
            out.extend(forest.into_iter().map(TreeNode::with_children));
        }
        by_size[e] = out;
    }
    by_size
}

fn forests(by_size: &[Vec<TreeNode>], slots: usize, edges: usize, acc: &mut Vec<TreeNode>, out: &mut Vec<Vec<TreeNode>>) {
    if slots == 0 {
        if edges == 0 {
            out.push(acc.clone());
        }
        return;
    }
    for size in (0..=edges).step_by(2) {
        for t in &by_size[size] {
            acc.push(t.clone());
            forests(by_size, slots - 1, edges - size, acc, out);
            acc.pop();
        }
    }
}

/// Every undotted even tree with `edges` edges, sorted by parenthesis encoding.
/// Empty for odd `edges`.
pub fn enumerate_even_trees(edges: usize) -> Vec<EvenTree> {
    if edges % 2 == 1 {
        return Vec::new();
    }
    let mut trees: Vec<(String, EvenTree)> = subtrees_by_size(edges)
        .swap_remove(edges)
        .into_iter()
        .map(|root| {
            let t = EvenTree { dotted: false, root };
            (t.to_parens(), t)
        })
        .collect();
    trees.sort_by(|a, b| a.0.cmp(&b.0));
    trees.into_iter().map(|(_, t)| t).collect()
}

/// `R_n(x)`: even trees with `2n` edges counted by r-index.
pub fn r_poly(n: u32) -> Result<Poly> {
    let mut p = Poly::zero();
    for t in enumerate_even_trees(2 * n as usize) {
        p.add_term(1, t.r_index() as usize)?;
    }
    Ok(p)
}

/// East step: a dotted pair becomes ordinary edges; otherwise two new leaves
/// are attached as the root's outermost children and marked dotted.
pub fn tree_shift(t: &EvenTree) -> EvenTree {
    let mut out = t.clone();
    if out.dotted {
        out.dotted = false;
    } else {
        out.root.children.insert(0, TreeNode::leaf());
        out.root.children.push(TreeNode::leaf());
        out.dotted = true;
    }
    out
}

/// North step from `pos`.
///
/// Root children `c1..c2t`:
/// * odd `i` (dotted): `c2` and `c(2t-1)` become the first and last children
///   of `c2t`; the r-index grows by one.
/// * even `i`, `j <= i/2 - 2`: `c1` and `c2t` become the first and last
///   children of `c2`; the r-index is unchanged.
/// * even `i`, `j = i/2 - 1`: identity.
pub fn tree_lift(t: &EvenTree, pos: GridPosition) -> Result<EvenTree> {
    let GridPosition { i, j } = pos;
    if u64::from(i) < 2 * (u64::from(j) + 1) {
        return Err(Error::LiftUnavailable(format!("{} lies above the line", GridPosition::new(i, j + 1))));
    }
    if t.dotted != (i % 2 == 1) {
        return Err(Error::LiftUnavailable(format!(
            "tree is {}dotted at {pos}",
            if t.dotted { "" } else { "not " }
        )));
    }
    if i % 2 == 0 && j == i / 2 - 1 {
        return Ok(t.clone());
    }
    let deg = t.root.degree();
    if deg < 4 {
        return Err(Error::LiftUnavailable(format!("root has {deg} children at {pos}")));
    }
    let mut out = t.clone();
    let kids = &mut out.root.children;
    if i % 2 == 1 {
        let inner_right = kids.remove(deg - 2);
        let inner_left = kids.remove(1);
        let host = kids.last_mut().unwrap();
        host.children.insert(0, inner_left);
        host.children.push(inner_right);
    } else {
        let last = kids.pop().unwrap();
        let first = kids.remove(0);
        let host = &mut kids[0];
        host.children.insert(0, first);
        host.children.push(last);
    }
    Ok(out)
}

/// Trees visited while walking `path`, starting with the empty tree at the
/// origin (`len() + 1` entries).
pub fn path_to_tree_states(path: &LatticePath) -> Vec<(GridPosition, EvenTree)> {
    let mut pos = GridPosition::ORIGIN;
    let mut tree = EvenTree::empty();
    let mut states = Vec::with_capacity(path.len() + 1);
    states.push((pos, tree.clone()));
    for s in path.steps() {
        match s {
            Step::E => {
                tree = tree_shift(&tree);
                pos.i += 1;
            }
            Step::N => {
                tree = tree_lift(&tree, pos).expect("valid path keeps tree lift available");
                pos.j += 1;
            }
        }
        states.push((pos, tree.clone()));
    }
    states
}

pub fn path_to_tree(path: &LatticePath) -> EvenTree {
    path_to_tree_states(path).pop().unwrap().1
}

/// Inverse of [`path_to_tree`] for a tree generated at `endpoint`.
pub fn tree_to_path(t: &EvenTree, endpoint: GridPosition) -> Result<LatticePath> {
    if !endpoint.is_valid() {
        return Err(Error::Precondition(format!("{endpoint} lies above the line")));
    }
    let expected_edges = endpoint.i as usize + (endpoint.i as usize % 2);
    if t.edges() != expected_edges || t.dotted != (endpoint.i % 2 == 1) {
        return Err(Error::NotInImage(format!(
            "a tree at {endpoint} has {expected_edges} edges and is {}dotted",
            if endpoint.i % 2 == 1 { "" } else { "not " }
        )));
    }
    let mut pos = endpoint;
    let mut cur = t.clone();
    let mut steps = Vec::with_capacity((endpoint.i + endpoint.j) as usize);
    let stuck = |pos: GridPosition, why: &str| Error::NotInImage(format!("at {pos}: {why}"));

    while pos != GridPosition::ORIGIN {
        if pos.j > 0 && pos.i == 2 * pos.j {
            steps.push(Step::N);
            pos.j -= 1;
            continue;
        }
        let kids = &mut cur.root.children;
        let deg = kids.len();
        if deg < 2 {
            return Err(stuck(pos, "root has fewer than two children"));
        }
        if pos.i % 2 == 1 {
            if kids[deg - 1].is_leaf() {
                kids.pop();
                kids.remove(0);
                cur.dotted = false;
                pos.i -= 1;
                steps.push(Step::E);
            } else {
                if pos.j == 0 {
                    return Err(stuck(pos, "internal last child with no lift to undo"));
                }
                let host = &mut kids[deg - 1].children;
                if host.len() < 2 {
                    return Err(stuck(pos, "last child has fewer than two children"));
                }
                let right = host.pop().unwrap();
                let left = host.remove(0);
                kids.insert(1, left);
                kids.insert(deg, right);
                pos.j -= 1;
                steps.push(Step::N);
            }
        } else if kids[0].is_leaf() {
            cur.dotted = true;
            pos.i -= 1;
            steps.push(Step::E);
        } else {
            if pos.j == 0 {
                return Err(stuck(pos, "internal first child with no lift to undo"));
            }
            let host = &mut kids[0].children;
            if host.len() < 2 {
                return Err(stuck(pos, "first child has fewer than two children"));
            }
            let right = host.pop().unwrap();
            let left = host.remove(0);
            kids.insert(0, left);
            kids.push(right);
            pos.j -= 1;
            steps.push(Step::N);
        }
    }
    if cur != EvenTree::empty() {
        return Err(Error::NotInImage("edges left over at the origin".into()));
    }
    steps.reverse();
    let path = LatticePath::from_steps(steps).map_err(|e| Error::NotInImage(e.to_string()))?;
    if path_to_tree(&path) != *t {
        return Err(Error::NotInImage(format!("{t} does not regenerate from {path}")));
    }
    Ok(path)
}
