//! Partial matchings on `1..=m`, their canonical sequential forms,
//! order-isomorphic pattern containment, and the bijection between lattice
//! paths and the 12312-avoiding members of the class `Q`.
//!
//! Crossings are counted in the generalized sense: two interleaving edges
//! `a < a' < b < b'` form one crossing, and so does an edge `(a, b)` with an
//! isolated point strictly between `a` and `b`. Both kinds are ordinary
//! crossings once every isolated point is read as an edge that closes beyond
//! the last point, the isolated points closing in nested order. Pattern
//! avoidance for a partial matching uses the same closure, see
//! [`PartialMatching::closed_sequence`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GridPosition, LatticePath, Step};
use crate::poly::Poly;

/// Disjoint edges `(a, b)`, `a < b`, on the points `1..=m`. Edges are kept
/// sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartialMatching {
    m: u32,
    edges: Vec<(u32, u32)>,
}

impl PartialMatching {
    pub fn empty(m: u32) -> Self {
        PartialMatching { m, edges: Vec::new() }
    }

    pub fn new(m: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut edges: Vec<(u32, u32)> = edges.into_iter().collect();
        let mut used = vec![false; m as usize + 1];
        for &(a, b) in &edges {
            if a == 0 || b > m || a >= b {
                return Err(Error::InvalidMatching(format!("edge ({a}, {b}) is not a pair 1 <= a < b <= {m}")));
            }
            for p in [a, b] {
                if std::mem::replace(&mut used[p as usize], true) {
                    return Err(Error::InvalidMatching(format!("point {p} is used by two edges")));
                }
            }
        }
        edges.sort_unstable();
        Ok(PartialMatching { m, edges })
    }

    pub fn points(&self) -> u32 {
        self.m
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.len() as u32
    }

    /// Position in the lattice: `(points, edges)`.
    pub fn position(&self) -> GridPosition {
        GridPosition::new(self.m, self.edge_count())
    }

    fn covered(&self) -> Vec<bool> {
        let mut used = vec![false; self.m as usize + 1];
        for &(a, b) in &self.edges {
            used[a as usize] = true;
            used[b as usize] = true;
        }
        used
    }

    /// Isolated points in increasing order.
    pub fn isolated(&self) -> Vec<u32> {
        let used = self.covered();
        (1..=self.m).filter(|&p| !used[p as usize]).collect()
    }

    /// For each edge: (isolated points left of `a`, covered by the edge, right of `b`).
    fn isolated_profile(&self) -> Vec<(u32, u32, u32)> {
        let used = self.covered();
        // before[p] = number of isolated points < p
        let mut before = vec![0u32; self.m as usize + 2];
        for p in 1..=self.m as usize {
            before[p + 1] = before[p] + u32::from(!used[p]);
        }
        let total = before[self.m as usize + 1];
        self.edges
            .iter()
            .map(|&(a, b)| {
                let left = before[a as usize];
                let upto_b = before[b as usize + 1];
                (left, upto_b - left, total - upto_b)
            })
            .collect()
    }

    /// Generalized crossing number.
    pub fn crossings(&self) -> u32 {
        let mut cr = 0;
        for (x, &(_, b)) in self.edges.iter().enumerate() {
            for &(c, d) in &self.edges[x + 1..] {
                // edges are sorted by left endpoint, so a < c
                if c < b && b < d {
                    cr += 1;
                }
            }
        }
        cr + self.isolated_profile().iter().map(|&(_, inside, _)| inside).sum::<u32>()
    }

    /// Describes the first class-`Q` condition this matching breaks.
    pub fn class_q_violation(&self) -> Option<String> {
        self.edges
            .iter()
            .zip(self.isolated_profile())
            .find_map(|(&(a, b), (left, inside, right))| {
                if inside > 1 {
                    Some(format!("edge ({a}, {b}) covers {inside} isolated points"))
                } else if left > right {
                    Some(format!(
                        "edge ({a}, {b}) has {left} isolated points on its left but {right} on its right"
                    ))
                } else {
                    None
                }
            })
    }

    /// Every edge covers at most one isolated point and has no more isolated
    /// points strictly to its left than strictly to its right.
    pub fn in_class_q(&self) -> bool {
        self.class_q_violation().is_none()
    }

    pub fn sequential_form(&self) -> SequentialForm {
        let mut partner = vec![0u32; self.m as usize + 1];
        for &(a, b) in &self.edges {
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        let mut labels = vec![0u32; self.m as usize];
        let mut next = 0;
        for p in 1..=self.m as usize {
            let q = partner[p] as usize;
            if q != 0 && q < p {
                labels[p - 1] = labels[q - 1];
            } else {
                next += 1;
                labels[p - 1] = next;
            }
        }
        SequentialForm { labels }
    }

    /// The sequential form followed by the labels of the isolated points in
    /// decreasing position, i.e. each isolated point closed as an edge past
    /// the last point, nested with the other isolated points.
    pub fn closed_sequence(&self) -> Vec<u32> {
        let form = self.sequential_form();
        let mut seq = form.labels.clone();
        seq.extend(self.isolated().iter().rev().map(|&p| form.labels[p as usize - 1]));
        seq
    }

    /// Pattern containment on [`closed_sequence`](Self::closed_sequence).
    pub fn contains_pattern(&self, pattern: &Pattern) -> bool {
        contains_pattern(&self.closed_sequence(), pattern.symbols())
    }

    /// Member of `Q_m(12312)`.
    pub fn is_admissible(&self) -> bool {
        self.admissibility_violation().is_none()
    }

    fn admissibility_violation(&self) -> Option<Error> {
        if let Some(why) = self.class_q_violation() {
            return Some(Error::NotInClassQ(why));
        }
        let pat = Pattern::p12312();
        if self.contains_pattern(&pat) {
            return Some(Error::ContainsPattern(pat.to_string()));
        }
        None
    }
}

impl fmt::Display for PartialMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sequential_form().fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    m: u32,
    edges: Vec<[u32; 2]>,
}

impl Serialize for PartialMatching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatchingJson { m: self.m, edges: self.edges.iter().map(|&(a, b)| [a, b]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialMatching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatchingJson::deserialize(d)?;
        PartialMatching::new(raw.m, raw.edges.into_iter().map(|[a, b]| (a, b))).map_err(serde::de::Error::custom)
    }
}

/// An integer sequence used as a containment pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    symbols: Vec<u32>,
}

impl Pattern {
    pub fn new(symbols: Vec<u32>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Parse("empty pattern".into()));
        }
        Ok(Pattern { symbols })
    }

    pub fn p12312() -> Self {
        Pattern { symbols: vec![1, 2, 3, 1, 2] }
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_labels(f, &self.symbols, "")
    }
}

fn write_labels(f: &mut fmt::Formatter<'_>, labels: &[u32], sep: &str) -> fmt::Result {
    for (k, l) in labels.iter().enumerate() {
        if k > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// One label per point; labels are numbered in order of first occurrence and
/// each occurs once (isolated point) or twice (edge endpoints).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequentialForm {
    labels: Vec<u32>,
}

impl SequentialForm {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        let mut seen = Vec::<u8>::new();
        for (pos, &l) in labels.iter().enumerate() {
            let idx = l as usize;
            if l == 0 || idx > seen.len() + 1 {
                return Err(Error::Parse(format!(
                    "label {l} at position {} breaks first-occurrence order",
                    pos + 1
                )));
            }
            if idx == seen.len() + 1 {
                seen.push(0);
            }
            seen[idx - 1] += 1;
            if seen[idx - 1] > 2 {
                return Err(Error::Parse(format!("label {l} occurs more than twice")));
            }
        }
        Ok(SequentialForm { labels })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn contains(&self, pattern: &Pattern) -> bool {
        contains_pattern(&self.labels, pattern.symbols())
    }

    pub fn to_matching(&self) -> PartialMatching {
        let mut first = vec![0u32; self.labels.len() + 1];
        let mut edges = Vec::new();
        for (pos, &l) in self.labels.iter().enumerate() {
            let p = pos as u32 + 1;
            match first[l as usize] {
                0 => first[l as usize] = p,
                a => edges.push((a, p)),
            }
        }
        PartialMatching::new(self.labels.len() as u32, edges).expect("validated sequential form")
    }
}

impl fmt::Display for SequentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_labels(f, &self.labels, ",")
    }
}

impl FromStr for SequentialForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return SequentialForm::new(Vec::new());
        }
        let labels = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad label {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        SequentialForm::new(labels)
    }
}

/// Whether some subsequence of `seq` is order-isomorphic to `pattern`, i.e.
/// compares pairwise (`<`, `=`, `>`) exactly as the pattern does.
pub fn contains_pattern(seq: &[u32], pattern: &[u32]) -> bool {
    fn extend(seq: &[u32], pattern: &[u32], chosen: &mut Vec<usize>) -> bool {
        let t = chosen.len();
        if t == pattern.len() {
            return true;
        }
        let start = chosen.last().map_or(0, |&p| p + 1);
        // leave room for the rest of the pattern
        let end = seq.len() + t + 1 - pattern.len();
        for pos in start..end {
            let ok = chosen
                .iter()
                .zip(pattern)
                .all(|(&c, &ps)| seq[c].cmp(&seq[pos]) == ps.cmp(&pattern[t]));
            if ok {
                chosen.push(pos);
                if extend(seq, pattern, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    if pattern.len() > seq.len() {
        return false;
    }
    extend(seq, pattern, &mut Vec::with_capacity(pattern.len()))
}

/// Appends an isolated point after the last point.
pub fn shift(m: &PartialMatching) -> PartialMatching {
    PartialMatching { m: m.m + 1, edges: m.edges.clone() }
}

/// Joins the two middle isolated points: ranks `k, k+1` of `2k`, or ranks
/// `k, k+2` of `2k+1` (1-indexed), which covers the middle point.
pub fn lift(m: &PartialMatching) -> Result<PartialMatching> {
    let iso = m.isolated();
    let c = iso.len();
    let (lo, hi) = match c {
        c if c >= 2 && c % 2 == 0 => (c / 2 - 1, c / 2),
        c if c >= 3 => ((c - 1) / 2 - 1, (c - 1) / 2 + 1),
        _ => return Err(Error::LiftUnavailable(format!("{c} isolated points"))),
    };
    let mut edges = m.edges.clone();
    let edge = (iso[lo], iso[hi]);
    let at = edges.partition_point(|e| *e < edge);
    edges.insert(at, edge);
    Ok(PartialMatching { m: m.m, edges })
}

/// Folds `shift` over east steps and `lift` over north steps, starting from
/// the empty matching.
pub fn path_to_matching(path: &LatticePath) -> PartialMatching {
    path.steps().iter().fold(PartialMatching::empty(0), |acc, s| match s {
        Step::E => shift(&acc),
        // a valid path always has at least two isolated points before a north step
        Step::N => lift(&acc).expect("valid path keeps lift available"),
    })
}

/// Inverse of [`path_to_matching`]. Rejects matchings outside `Q_m(12312)`.
pub fn matching_to_path(m: &PartialMatching) -> Result<LatticePath> {
    if let Some(err) = m.admissibility_violation() {
        return Err(err);
    }
    let mut cur = m.clone();
    let mut steps = Vec::with_capacity((m.m + m.edge_count()) as usize);
    while cur.m > 0 || !cur.edges.is_empty() {
        let profile = cur.isolated_profile();
        if profile.iter().all(|&(l, _, r)| l < r) {
            if cur.edges.iter().any(|&(_, b)| b == cur.m) {
                return Err(Error::NotInImage(format!("last point {} is not isolated", cur.m)));
            }
            cur.m -= 1;
            steps.push(Step::E);
        } else {
            let (idx, _) = cur
                .edges
                .iter()
                .zip(&profile)
                .enumerate()
                .filter(|(_, (_, &(l, _, r)))| l == r)
                .max_by_key(|(_, (&(_, b), _))| b)
                .ok_or_else(|| Error::NotInImage("no balanced edge to unlink".into()))?;
            let mut prev = cur.clone();
            prev.edges.remove(idx);
            if lift(&prev).as_ref() != Ok(&cur) {
                return Err(Error::NotInImage(format!(
                    "edge ({}, {}) is not the middle edge of its predecessor",
                    cur.edges[idx].0, cur.edges[idx].1
                )));
            }
            cur = prev;
            steps.push(Step::N);
        }
    }
    steps.reverse();
    LatticePath::from_steps(steps).map_err(|e| Error::NotInImage(e.to_string()))
}

/// All pairings of `points` (even length), smallest point first.
fn pairings(points: &[u32], acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
    let Some((&first, rest)) = points.split_first() else {
        out.push(acc.clone());
        return;
    };
    for k in 0..rest.len() {
        let mut remaining = rest.to_vec();
        let partner = remaining.remove(k);
        acc.push((first, partner));
        pairings(&remaining, acc, out);
        acc.pop();
    }
}

fn combinations(n: u32, k: usize, start: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if acc.len() == k {
        out.push(acc.clone());
        return;
    }
    for p in start..=n {
        if (n - p + 1) as usize + acc.len() < k {
            break;
        }
        acc.push(p);
        combinations(n, k, p + 1, acc, out);
        acc.pop();
    }
}

/// Brute force: every partial matching on `points` points with `edges`
/// edges that lies in `Q` and avoids 12312, ordered by sorted edge list.
pub fn enumerate_q(points: u32, edges: u32) -> Vec<PartialMatching> {
    if 2 * u64::from(edges) > u64::from(points) {
        return Vec::new();
    }
    let mut supports = Vec::new();
    combinations(points, 2 * edges as usize, 1, &mut Vec::new(), &mut supports);
    let pattern = Pattern::p12312();
    let mut out: Vec<PartialMatching> = supports
        .iter()
        .flat_map(|support| {
            let mut all = Vec::new();
            pairings(support, &mut Vec::new(), &mut all);
            all
        })
        .map(|e| PartialMatching::new(points, e).expect("pairing of distinct points"))
        .filter(|m| m.in_class_q() && !m.contains_pattern(&pattern))
        .collect();
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    out
}

/// `Q(i, j)(x)`: the members of [`enumerate_q`] counted by crossings.
pub fn q_poly(points: u32, edges: u32) -> Result<Poly> {
    let mut p = Poly::zero();
    for m in enumerate_q(points, edges) {
        p.add_term(1, m.crossings() as usize)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> SequentialForm {
        s.parse().unwrap()
    }

    fn pm(m: u32, e: &[(u32, u32)]) -> PartialMatching {
        PartialMatching::new(m, e.iter().copied()).unwrap()
    }

    #[test]
    fn sequential_form_examples() {
        let fig = pm(8, &[(1, 7), (2, 4), (3, 8), (5, 6)]);
        assert_eq!(fig.sequential_form().to_string(), "1,2,3,2,4,4,1,3");
        assert_eq!(pm(5, &[(1, 4), (3, 5)]).sequential_form().to_string(), "1,2,3,1,3");
        assert_eq!(pm(1, &[]).sequential_form().labels(), &[1]);
        assert_eq!(seq("1,2,3,2,4,4,1,3").to_matching(), fig);
    }

    #[test]
    fn sequential_form_parse_errors() {
        assert!("1,3".parse::<SequentialForm>().is_err());
        assert!("1,1,1".parse::<SequentialForm>().is_err());
        assert!("1,x".parse::<SequentialForm>().is_err());
        assert!("0".parse::<SequentialForm>().is_err());
        assert_eq!(seq("").labels(), &[] as &[u32]);
    }

    #[test]
    fn invalid_matchings() {
        assert!(PartialMatching::new(4, [(1, 3), (3, 4)]).is_err());
        assert!(PartialMatching::new(4, [(2, 2)]).is_err());
        assert!(PartialMatching::new(4, [(3, 5)]).is_err());
        assert!(PartialMatching::new(4, [(0, 2)]).is_err());
    }

    #[test]
    fn pattern_examples() {
        let p = Pattern::p12312();
        assert!(seq("1,2,3,2,4,4,1,3").contains(&p));
        assert!(!seq("1,2,3,1,3").contains(&p));
        assert!(seq("1,2,3,1,2").contains(&p));
        let one = Pattern::new(vec![1]).unwrap();
        assert!(seq("1").contains(&one));
        assert!(!seq("").contains(&one));
        assert!(Pattern::new(vec![]).is_err());
    }

    #[test]
    fn closed_sequence_nests_isolated_points() {
        assert_eq!(seq("1,2,3,1,3,4").to_matching().closed_sequence(), [1, 2, 3, 1, 3, 4, 4, 2]);
        assert_eq!(pm(3, &[]).closed_sequence(), [1, 2, 3, 3, 2, 1]);
        assert_eq!(pm(2, &[(1, 2)]).closed_sequence(), [1, 1]);
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(seq("1,2,3,1,2").to_matching().crossings(), 3);
        assert_eq!(seq("1,2,3,1,3").to_matching().crossings(), 2);
        assert_eq!(seq("1,2,3,3,1").to_matching().crossings(), 1);
        assert_eq!(pm(4, &[(1, 3), (2, 4)]).crossings(), 1);
    }

    #[test]
    fn class_q_examples() {
        assert!(pm(4, &[(1, 3)]).in_class_q());
        assert!(!pm(4, &[(1, 4)]).in_class_q());
        assert!(!pm(4, &[(2, 4)]).in_class_q());
        assert!(pm(4, &[(2, 4)]).class_q_violation().unwrap().contains("left"));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_q(2, 1), vec![pm(2, &[(1, 2)])]);
        assert_eq!(enumerate_q(1, 0), vec![pm(1, &[])]);
        assert_eq!(
            enumerate_q(4, 1),
            vec![pm(4, &[(1, 2)]), pm(4, &[(1, 3)]), pm(4, &[(2, 3)])]
        );
        assert_eq!(enumerate_q(4, 2).len(), 3);
        assert!(enumerate_q(3, 2).is_empty());
        assert_eq!(q_poly(4, 1).unwrap(), Poly::from_coeffs(vec![2, 1]));
        assert_eq!(q_poly(4, 2).unwrap(), Poly::from_coeffs(vec![2, 1]));
        assert_eq!(q_poly(6, 3).unwrap(), Poly::from_coeffs(vec![5, 5, 2]));
        for i in 0..7 {
            assert_eq!(q_poly(i, 0).unwrap(), Poly::one());
        }
    }

    #[test]
    fn shift_and_lift() {
        assert_eq!(shift(&PartialMatching::empty(0)), pm(1, &[]));
        assert_eq!(shift(&pm(2, &[(1, 2)])), pm(3, &[(1, 2)]));
        assert_eq!(lift(&pm(2, &[])).unwrap(), pm(2, &[(1, 2)]));
        let even = lift(&pm(4, &[])).unwrap();
        assert_eq!(even, pm(4, &[(2, 3)]));
        assert_eq!(even.crossings(), 0);
        let odd = lift(&pm(3, &[])).unwrap();
        assert_eq!(odd, pm(3, &[(1, 3)]));
        assert_eq!(odd.crossings(), 1);
        assert!(matches!(lift(&pm(1, &[])), Err(Error::LiftUnavailable(_))));
        assert!(matches!(lift(&pm(2, &[(1, 2)])), Err(Error::LiftUnavailable(_))));
    }

    #[test]
    fn bijection_examples() {
        let p: LatticePath = "EEENEN".parse().unwrap();
        let m = path_to_matching(&p);
        assert_eq!(m, pm(4, &[(1, 3), (2, 4)]));
        assert_eq!(m.crossings(), 1);
        assert_eq!(matching_to_path(&m).unwrap(), p);

        let p: LatticePath = "EEN".parse().unwrap();
        assert_eq!(path_to_matching(&p), pm(2, &[(1, 2)]));
        assert_eq!(matching_to_path(&pm(2, &[(1, 2)])).unwrap(), p);

        assert_eq!(path_to_matching(&LatticePath::empty()), PartialMatching::empty(0));
        assert_eq!(matching_to_path(&PartialMatching::empty(0)).unwrap(), LatticePath::empty());
    }

    #[test]
    fn reverse_rejects_outsiders() {
        assert!(matches!(matching_to_path(&pm(4, &[(1, 4)])), Err(Error::NotInClassQ(_))));
        assert!(matches!(matching_to_path(&seq("1,2,3,1,2").to_matching()), Err(Error::ContainsPattern(_))));
        // in Q; the isolated point 2 closes past point 6 and completes 12312
        let m = seq("1,2,3,1,3,4").to_matching();
        assert!(m.in_class_q());
        assert!(!m.sequential_form().contains(&Pattern::p12312()));
        assert!(m.contains_pattern(&Pattern::p12312()));
        assert!(matches!(matching_to_path(&m), Err(Error::ContainsPattern(_))));
    }

    #[test]
    fn json_shape() {
        let m = pm(4, &[(2, 4), (1, 3)]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"m":4,"edges":[[1,3],[2,4]]}"#);
        let back: PartialMatching = serde_json::from_str(r#"{"m":4,"edges":[[2,4],[1,3]]}"#).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<PartialMatching>(r#"{"m":3,"edges":[[2,4]]}"#).is_err());
    }
}
