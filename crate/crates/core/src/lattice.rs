//! Lattice paths from the origin that never rise above the line `x = 2y`,
//! the weighted counts `L(i, j)(x)` and the closed formulas for the diagonal
//! `L(2n, n)(x)`.
//!
//! A north step taken at an odd x-coordinate carries weight `x`; every other
//! step has weight 1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// `(1, 0)`
    E,
    /// `(0, 1)`
    N,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct GridPosition {
    pub i: u32,
    pub j: u32,
}

impl GridPosition {
    pub const ORIGIN: GridPosition = GridPosition { i: 0, j: 0 };

    pub fn new(i: u32, j: u32) -> Self {
        GridPosition { i, j }
    }

    /// `i >= 2j`.
    pub fn is_valid(self) -> bool {
        u64::from(self.i) >= 2 * u64::from(self.j)
    }

    /// Position after taking `step`, if it stays weakly below the line.
    pub fn step(self, step: Step) -> Option<GridPosition> {
        let next = match step {
            Step::E => GridPosition::new(self.i.checked_add(1)?, self.j),
            Step::N => GridPosition::new(self.i, self.j.checked_add(1)?),
        };
        next.is_valid().then_some(next)
    }
}

impl fmt::Display for GridPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A step sequence whose every prefix ends at a point `(x, y)` with `x >= 2y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn empty() -> Self {
        LatticePath::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let mut pos = GridPosition::ORIGIN;
        for (index, &s) in steps.iter().enumerate() {
            pos = match pos.step(s) {
                Some(p) => p,
                None => {
                    return Err(Error::AboveLine {
                        index,
                        x: pos.i + u32::from(s == Step::E),
                        y: pos.j + u32::from(s == Step::N),
                    })
                }
            };
        }
        Ok(LatticePath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn endpoint(&self) -> GridPosition {
        let e = self.steps.iter().filter(|s| **s == Step::E).count() as u32;
        GridPosition::new(e, self.steps.len() as u32 - e)
    }

    /// The positions visited, starting at the origin (`len() + 1` entries).
    pub fn positions(&self) -> impl Iterator<Item = GridPosition> + '_ {
        std::iter::once(GridPosition::ORIGIN).chain(self.steps.iter().scan(GridPosition::ORIGIN, |pos, s| {
            *pos = match s {
                Step::E => GridPosition::new(pos.i + 1, pos.j),
                Step::N => GridPosition::new(pos.i, pos.j + 1),
            };
            Some(*pos)
        }))
    }

    /// Number of north steps taken at an odd x-coordinate; the path's weight is
    /// `x` to this power.
    pub fn weight_exponent(&self) -> u32 {
        let mut x = 0u32;
        let mut w = 0;
        for s in &self.steps {
            match s {
                Step::E => x += 1,
                Step::N if x % 2 == 1 => w += 1,
                Step::N => {}
            }
        }
        w
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .enumerate()
            .map(|(index, c)| match c {
                'E' => Ok(Step::E),
                'N' => Ok(Step::N),
                found => Err(Error::BadStepChar { index, found }),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::from_steps(steps)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Memoized table of `L(i, j)(x)` for all `i <= max_i`.
#[derive(Debug, Clone)]
pub struct LatticeTable {
    max_i: u32,
    // rows[i][j] for 0 <= j <= i / 2
    rows: Vec<Vec<Poly>>,
}

impl LatticeTable {
    /// Fills the table row by row:
    /// `L(i, j) = L(i-1, j) + w * L(i, j-1)` with `w = x` for odd `i`.
    pub fn new(max_i: u32) -> Result<Self> {
        let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(max_i as usize + 1);
        for i in 0..=max_i {
            let mut row = Vec::with_capacity(i as usize / 2 + 1);
            for j in 0..=i / 2 {
                let west = if i > 0 && j <= (i - 1) / 2 {
                    rows[i as usize - 1][j as usize].clone()
                } else {
                    Poly::zero()
                };
                let poly = if i == 0 && j == 0 {
                    Poly::one()
                } else if j == 0 {
                    west
                } else {
                    let south: &Poly = &row[j as usize - 1];
                    let weighted = if i % 2 == 1 { south.shift_mul_x() } else { south.clone() };
                    west.checked_add(&weighted).map_err(|_| {
                        Error::Overflow(format!("L({i}, {j})"))
                    })?
                };
                row.push(poly);
            }
            rows.push(row);
        }
        Ok(LatticeTable { max_i, rows })
    }

    pub fn max_i(&self) -> u32 {
        self.max_i
    }

    /// `L(i, j)`; zero above the line. Panics if `i > max_i`.
    pub fn get(&self, pos: GridPosition) -> Poly {
        assert!(pos.i <= self.max_i, "position {pos} outside table (max_i = {})", self.max_i);
        if !pos.is_valid() {
            return Poly::zero();
        }
        self.rows[pos.i as usize][pos.j as usize].clone()
    }

    /// All valid positions with their polynomials, ordered by `i` then `j`.
    pub fn entries(&self) -> impl Iterator<Item = (GridPosition, &Poly)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(j, p)| (GridPosition::new(i as u32, j as u32), p))
        })
    }
}

/// `L(i, j)(x)`, the zero polynomial above the line `x = 2y`.
pub fn lattice_poly(pos: GridPosition) -> Result<Poly> {
    if !pos.is_valid() {
        return Ok(Poly::zero());
    }
    Ok(LatticeTable::new(pos.i)?.get(pos))
}

/// Every valid path to `pos` in lexicographic order (`E < N`). Empty when
/// `pos` lies above the line.
pub fn enumerate_paths(pos: GridPosition) -> Vec<LatticePath> {
    fn walk(at: GridPosition, target: GridPosition, prefix: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if at == target {
            out.push(LatticePath { steps: prefix.clone() });
            return;
        }
        for s in [Step::E, Step::N] {
            let Some(next) = at.step(s) else { continue };
            if next.i > target.i || next.j > target.j {
                continue;
            }
            prefix.push(s);
            walk(next, target, prefix, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    if pos.is_valid() {
        walk(GridPosition::ORIGIN, pos, &mut Vec::new(), &mut out);
    }
    out
}

/// Binomial coefficient with checked arithmetic; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<i64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 1..=k {
        // acc * (n - k + t) is divisible by t at every step
        acc = acc
            .checked_mul(u128::from(n - k + t))
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / u128::from(t);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow(format!("C({n}, {k})")))
}

fn exact_div(num: i64, den: i64, what: impl FnOnce() -> String) -> Result<i64> {
    if num % den != 0 {
        // the closed formulas always divide exactly
        return Err(Error::Precondition(format!("{} is not an integer", what())));
    }
    Ok(num / den)
}

fn checked_mul(a: i64, b: i64, what: impl FnOnce() -> String) -> Result<i64> {
    a.checked_mul(b).ok_or_else(|| Error::Overflow(what()))
}

/// `T(n, k) = (1/n) C(n-1+k, n-1) C(2n-k, n+1)` for `n >= 1`, `0 <= k <= n-1`:
/// the coefficient of `x^k` in `L(2n, n)`.
pub fn t_coeff(n: u32, k: u32) -> Result<i64> {
    if n == 0 || k >= n {
        return Err(Error::Precondition(format!("T(n, k) needs 1 <= n and k <= n-1, got n={n}, k={k}")));
    }
    let (n, k) = (u64::from(n), u64::from(k));
    let prod = checked_mul(binomial(n - 1 + k, n - 1)?, binomial(2 * n - k, n + 1)?, || {
        format!("T({n}, {k})")
    })?;
    exact_div(prod, n as i64, || format!("T({n}, {k})"))
}

/// `T_n(x) = sum_k T(n, k) x^k`.
pub fn t_poly(n: u32) -> Result<Poly> {
    let mut p = Poly::zero();
    for k in 0..n {
        p.add_term(t_coeff(n, k)?, k as usize)?;
    }
    Ok(p)
}

/// The 3-Catalan number `C(3n, n) / (2n + 1)`.
pub fn catalan3(n: u32) -> Result<i64> {
    let n = u64::from(n);
    exact_div(binomial(3 * n, n)?, 2 * n as i64 + 1, || format!("T_{n}"))
}

/// `sum_{k=0}^{n-2} (1/(n-1)) C(n-2+k, n-2) C(2n-2-k, n) x^k`, the
/// specialization `y = 1` of the noncrossing-tree descent polynomial.
/// Requires `n >= 2`.
pub fn descent_formula(n: u32) -> Result<Poly> {
    if n < 2 {
        return Err(Error::Precondition(format!("descent formula needs n >= 2, got {n}")));
    }
    let n64 = u64::from(n);
    let mut p = Poly::zero();
    for k in 0..=n64 - 2 {
        let prod = checked_mul(binomial(n64 - 2 + k, n64 - 2)?, binomial(2 * n64 - 2 - k, n64)?, || {
            format!("D_{n}(x, 1) at x^{k}")
        })?;
        let c = exact_div(prod, n64 as i64 - 1, || format!("D_{n}(x, 1) at x^{k}"))?;
        p.add_term(c, k as usize)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    fn l(i: u32, j: u32) -> Poly {
        lattice_poly(GridPosition::new(i, j)).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(path("EENEEN").weight_exponent(), 0);
        assert_eq!(path("EEENEN").weight_exponent(), 1);
        assert_eq!(LatticePath::empty().weight_exponent(), 0);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!("EEX".parse::<LatticePath>().unwrap_err(), Error::BadStepChar { index: 2, found: 'X' });
        assert_eq!("EN".parse::<LatticePath>().unwrap_err(), Error::AboveLine { index: 1, x: 1, y: 1 });
        assert_eq!("EENN".parse::<LatticePath>().unwrap_err(), Error::AboveLine { index: 3, x: 2, y: 2 });
        assert_eq!(path("EEENEN").to_string(), "EEENEN");
        assert_eq!(path("EEENEN").endpoint(), GridPosition::new(4, 2));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(l(2, 1), p(&[1]));
        assert_eq!(l(3, 1), p(&[1, 1]));
        assert_eq!(l(6, 3), p(&[5, 5, 2]));
        assert_eq!(l(8, 4), p(&[14, 21, 15, 5]));
        for i in 0..10 {
            assert_eq!(l(i, 0), Poly::one());
        }
        assert_eq!(l(1, 1), Poly::zero());
        assert_eq!(l(7, 3), p(&[5, 10, 10, 5]));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_paths(GridPosition::new(2, 1)), vec![path("EEN")]);
        assert_eq!(enumerate_paths(GridPosition::ORIGIN), vec![LatticePath::empty()]);
        assert_eq!(enumerate_paths(GridPosition::new(6, 3)).len(), 12);
        assert!(enumerate_paths(GridPosition::new(1, 1)).is_empty());
        let paths = enumerate_paths(GridPosition::new(7, 3));
        assert!(paths.windows(2).all(|w| w[0].to_string() < w[1].to_string()));
    }

    #[test]
    fn closed_formula_examples() {
        assert_eq!(t_coeff(4, 0).unwrap(), 14);
        assert_eq!(t_coeff(3, 1).unwrap(), 5);
        assert_eq!(t_coeff(4, 3).unwrap(), 5);
        assert!(t_coeff(0, 0).is_err());
        assert!(t_coeff(3, 3).is_err());
        assert_eq!(catalan3(0).unwrap(), 1);
        assert_eq!(catalan3(1).unwrap(), 1);
        assert_eq!(catalan3(2).unwrap(), 3);
        assert_eq!(catalan3(4).unwrap(), 55);
        assert_eq!(descent_formula(2).unwrap(), p(&[1]));
        assert_eq!(descent_formula(3).unwrap(), p(&[2, 1]));
        assert_eq!(descent_formula(4).unwrap(), p(&[5, 5, 2]));
        assert!(descent_formula(1).is_err());
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(60, 30).unwrap(), 118264581564861424);
        assert!(binomial(200, 100).is_err());
    }

    #[test]
    fn on_line_collapse() {
        let t = LatticeTable::new(24).unwrap();
        for n in 1..=12 {
            assert_eq!(t.get(GridPosition::new(2 * n, n)), t.get(GridPosition::new(2 * n, n - 1)));
        }
    }
}
