//! Maximum `{a,b}`-multiplicative sets.
//!
//! A set `S` is `{a,b}`-multiplicative when `a·x != b·y` for all `x, y` in
//! `S`. Writing `g = gcd(a, b)`, the condition only depends on the reduced
//! pair `(a/g, b/g)`. Within `[n]` the relation `b·x = a·y` splits the
//! integers into disjoint increasing paths whose sources are the integers not
//! divisible by `b/g`; the vertex at distance `i` from its source is exactly
//! an `i`-th subpower of `b/g`. Taking every even subpower therefore picks
//! the even-distance vertices of every path, which is a maximum independent
//! set, and its density is `b / (b + g)`.

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{floor_log, int, ratio};

/// A validated pair `1 <= a < b` together with its gcd reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairParams {
    a: u64,
    b: u64,
    g: u64,
    a_red: u64,
    b_red: u64,
}

impl PairParams {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a < 1 {
            return Err(Error::InvalidParams(format!(
                "a must be at least 1, got {a}"
            )));
        }
        if a >= b {
            return Err(Error::InvalidParams(format!(
                "need a < b, got a = {a}, b = {b}"
            )));
        }
        let g = a.gcd(&b);
        Ok(PairParams {
            a,
            b,
            g,
            a_red: a / g,
            b_red: b / g,
        })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn a_red(&self) -> u64 {
        self.a_red
    }

    pub fn b_red(&self) -> u64 {
        self.b_red
    }

    /// The coprime pair `(a/g, b/g)` as parameters in its own right.
    pub fn reduced(&self) -> PairParams {
        PairParams {
            a: self.a_red,
            b: self.b_red,
            g: 1,
            a_red: self.a_red,
            b_red: self.b_red,
        }
    }
}

/// Alias for [`PairParams::new`].
pub fn reduce_pair(a: u64, b: u64) -> Result<PairParams> {
    PairParams::new(a, b)
}

/// `value = base^index * cofactor` with `cofactor` not divisible by `base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubpowerDecomposition {
    pub base: u64,
    pub index: u32,
    pub cofactor: u64,
}

impl SubpowerDecomposition {
    pub fn value(&self) -> u64 {
        self.base.pow(self.index) * self.cofactor
    }

    pub fn is_even(&self) -> bool {
        self.index.is_multiple_of(2)
    }
}

/// Panics if `x == 0` or `base < 2`.
pub fn subpower_index(x: u64, base: u64) -> SubpowerDecomposition {
    assert!(x >= 1, "subpower_index needs x >= 1");
    assert!(base >= 2, "subpower_index needs base >= 2");
    let mut index = 0;
    let mut cofactor = x;
    while cofactor.is_multiple_of(base) {
        cofactor /= base;
        index += 1;
    }
    SubpowerDecomposition {
        base,
        index,
        cofactor,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalPairSet {
    pub n: u64,
    pub members: Vec<u64>,
}

impl ExtremalPairSet {
    pub fn cardinality(&self) -> u64 {
        self.members.len() as u64
    }
}

/// All even subpowers of `b/g` in `[n]`, ascending.
///
/// Sieves the multiples `(b/g)^i * y` for even `i` and `y` not divisible by
/// `b/g`; total work is at most `n * b²/(b²-1)` marks.
pub fn construct_extremal_set(p: &PairParams, n: u64) -> ExtremalPairSet {
    let base = p.b_red;
    let len = usize::try_from(n).expect("n exceeds addressable memory");
    let mut marked = vec![false; len + 1];
    let mut power = 1u64;
    while power <= n {
        for y in (1..=n / power).filter(|&y| !y.is_multiple_of(base)) {
            marked[(power * y) as usize] = true;
        }
        power = match power.checked_mul(base).and_then(|v| v.checked_mul(base)) {
            Some(next) => next,
            None => break,
        };
    }
    let members = marked
        .iter()
        .enumerate()
        .filter_map(|(x, &m)| m.then_some(x as u64))
        .collect();
    ExtremalPairSet { n, members }
}

/// First ordered pair `(x, y)` from `s` with `a·x = b·y`, if any.
pub fn pair_violation(s: &[u64], a: u64, b: u64) -> Option<(u64, u64)> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.iter().find_map(|&x| {
        let ax = u128::from(a) * u128::from(x);
        if ax % u128::from(b) != 0 {
            return None;
        }
        let y = u64::try_from(ax / u128::from(b)).ok()?;
        sorted.binary_search(&y).ok().map(|_| (x, y))
    })
}

pub fn is_pair_multiplicative(s: &[u64], a: u64, b: u64) -> bool {
    pair_violation(s, a, b).is_none()
}

/// `[n]` split into the maximal directed paths `x -> x·b/a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub n: u64,
    pub paths: Vec<Vec<u64>>,
}

impl PathDecomposition {
    pub fn alpha(&self) -> u64 {
        path_alpha(self)
    }

    /// Distance of every vertex from the source of its path, indexed by
    /// vertex value (index 0 unused).
    pub fn distances(&self) -> Vec<u32> {
        let mut dist = vec![0; self.n as usize + 1];
        for path in &self.paths {
            for (i, &v) in path.iter().enumerate() {
                dist[v as usize] = i as u32;
            }
        }
        dist
    }
}

pub fn build_path_decomposition(p: &PairParams, n: u64) -> PathDecomposition {
    let (a, b) = (p.a_red, p.b_red);
    let mut paths = Vec::new();
    for source in (1..=n).filter(|&x| !x.is_multiple_of(b)) {
        let mut path = vec![source];
        let mut cur = source;
        while cur.is_multiple_of(a) {
            match (cur / a).checked_mul(b) {
                Some(next) if next <= n => {
                    path.push(next);
                    cur = next;
                }
                _ => break,
            }
        }
        paths.push(path);
    }
    PathDecomposition { n, paths }
}

/// Vertices at even distance from each source: `sum of ceil(len / 2)`.
pub fn path_alpha(d: &PathDecomposition) -> u64 {
    d.paths
        .iter()
        .map(|path| path.len().div_ceil(2) as u64)
        .sum()
}

pub fn pair_density(p: &PairParams) -> BigRational {
    ratio(p.b, p.b + p.g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityBounds {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl CardinalityBounds {
    pub fn contains(&self, k: u64) -> bool {
        let k = int(k);
        self.lower <= k && k <= self.upper
    }
}

/// `b n/(b+1) - (L+1)/2 <= |T_n| <= 1 + L/2 + b n/(b+1)` with `b = b/g` and
/// `L = floor(log_b n)`.
pub fn cardinality_bounds(p: &PairParams, n: u64) -> CardinalityBounds {
    let b = p.b_red;
    let log = floor_log(n, b);
    let main = ratio(u128::from(b) * u128::from(n), b + 1);
    CardinalityBounds {
        lower: &main - ratio(log + 1, 2),
        upper: int(1) + ratio(log, 2) + main,
    }
}

/// Density `b/(b+1)` for `B = {b}` when `b` is coprime to every element of
/// `A` and some element of `A` is smaller than `b`.
pub fn coprime_singleton_density(a_set: &[u64], b: u64) -> Result<BigRational> {
    if a_set.is_empty() {
        return Err(Error::NotCovered("A is empty".into()));
    }
    if b < 2 {
        return Err(Error::NotCovered(format!(
            "b = {b} admits no smaller element of A"
        )));
    }
    if let Some(&bad) = a_set.iter().find(|&&a| a.gcd(&b) != 1) {
        return Err(Error::NotCovered(format!(
            "gcd({bad}, {b}) = {} is not 1",
            bad.gcd(&b)
        )));
    }
    if !a_set.iter().any(|&a| a >= 1 && a < b) {
        return Err(Error::NotCovered(format!(
            "no element of A is below b = {b}"
        )));
    }
    Ok(ratio(b, b + 1))
}
