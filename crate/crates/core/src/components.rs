//! Components of the graph on `N` with edges `b·x = a·y` and `c·x = a·y`.
//!
//! For pairwise coprime `1 < a < b < c` every integer factors uniquely as
//! `a^(p-x-y) · b^x · c^y · q` with `q` divisible by none of `a, b, c`. The
//! integers sharing `(p, q)` form the component `C_{p,q}`, and `(x, y)` embeds
//! it into the quarter grid with adjacency exactly one grid step. Cutting a
//! component at any cap keeps a downward-closed ("staircase") coordinate set,
//! so one of the two parity classes of `x + y` is a maximum independent set.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Pow;

use crate::error::{Error, Result};

/// Pairwise coprime `1 < a < b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleParams {
    a: u64,
    b: u64,
    c: u64,
}

impl TripleParams {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if !(1 < a && a < b && b < c) {
            return Err(Error::InvalidParams(format!(
                "need 1 < a < b < c, got ({a}, {b}, {c})"
            )));
        }
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let g = x.gcd(&y);
            if g != 1 {
                return Err(Error::InvalidParams(format!(
                    "need pairwise coprime, gcd({x}, {y}) = {g}"
                )));
            }
        }
        Ok(TripleParams { a, b, c })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// `q` may serve as a component multiplier.
    pub fn admissible(&self, q: u64) -> bool {
        q >= 1
            && !q.is_multiple_of(self.a)
            && !q.is_multiple_of(self.b)
            && !q.is_multiple_of(self.c)
    }

    /// `a^(p-x-y) b^x c^y`.
    pub fn unit_value(&self, height: u32, x: u32, y: u32) -> BigUint {
        debug_assert!(x + y <= height);
        BigUint::from(self.a).pow(height - x - y)
            * BigUint::from(self.b).pow(x)
            * BigUint::from(self.c).pow(y)
    }
}

/// `m = a^(height-x-y) · b^x · c^y · multiplier`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub height: u32,
    pub x: u32,
    pub y: u32,
    pub multiplier: u64,
}

fn strip(mut m: u64, base: u64) -> (u32, u64) {
    let mut e = 0;
    while m.is_multiple_of(base) {
        m /= base;
        e += 1;
    }
    (e, m)
}

/// Panics if `m == 0`.
pub fn decompose(m: u64, t: &TripleParams) -> Decomposition {
    assert!(m >= 1, "decompose needs m >= 1");
    let (ea, m) = strip(m, t.a);
    let (x, m) = strip(m, t.b);
    let (y, q) = strip(m, t.c);
    Decomposition {
        height: ea + x + y,
        x,
        y,
        multiplier: q,
    }
}

/// Coordinates `(x, y)` with `x + y <= height`, bottom row first.
pub fn triangle_coords(height: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=height).flat_map(move |row| (0..=row).rev().map(move |y| (row - y, y)))
}

pub fn grid_adjacent(u: (u32, u32), v: (u32, u32)) -> bool {
    u.0.abs_diff(v.0) + u.1.abs_diff(v.1) == 1
}

/// The component `C_{p,q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridComponent {
    pub params: TripleParams,
    pub height: u32,
    pub multiplier: u64,
}

impl GridComponent {
    pub fn new(params: TripleParams, height: u32, multiplier: u64) -> Result<Self> {
        if !params.admissible(multiplier) {
            return Err(Error::InvalidParams(format!(
                "multiplier {multiplier} is divisible by one of ({}, {}, {})",
                params.a, params.b, params.c
            )));
        }
        Ok(GridComponent {
            params,
            height,
            multiplier,
        })
    }

    pub fn unit(params: TripleParams, height: u32) -> Self {
        GridComponent {
            params,
            height,
            multiplier: 1,
        }
    }

    pub fn value(&self, x: u32, y: u32) -> BigUint {
        self.params.unit_value(self.height, x, y) * self.multiplier
    }

    pub fn vertex_count(&self) -> u64 {
        let p = u64::from(self.height);
        (p + 1) * (p + 2) / 2
    }

    pub fn min_value(&self) -> BigUint {
        self.value(0, 0)
    }

    pub fn max_value(&self) -> BigUint {
        self.value(0, self.height)
    }

    pub fn vertices(&self) -> Vec<((u32, u32), BigUint)> {
        triangle_coords(self.height)
            .map(|(x, y)| ((x, y), self.value(x, y)))
            .collect()
    }

    /// Row `k` holds the coordinates with `x + y = k`.
    pub fn rows(&self) -> Vec<Vec<BigUint>> {
        (0..=self.height)
            .map(|k| (0..=k).map(|x| self.value(x, k - x)).collect())
            .collect()
    }

    /// Plain-text dump, top row first, each row centred.
    pub fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        let cell = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        let width = (cell + 1) * (self.height as usize + 1);
        let mut out = String::new();
        for row in rows.iter().rev() {
            let line = row
                .iter()
                .map(|v| format!("{v:>cell$}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "{:^width$}", line);
        }
        out
    }
}

/// `C_{p,1}` restricted to vertices with value at most `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedComponent {
    pub base: GridComponent,
    pub cap: BigUint,
    pub active: Vec<(u32, u32)>,
}

impl TruncatedComponent {
    pub fn new(params: TripleParams, height: u32, cap: BigUint) -> Self {
        let base = GridComponent::unit(params, height);
        let active = triangle_coords(height)
            .filter(|&(x, y)| base.value(x, y) <= cap)
            .collect();
        TruncatedComponent { base, cap, active }
    }

    /// First active cell whose lower or left neighbour is missing.
    pub fn staircase_defect(&self) -> Option<(u32, u32)> {
        staircase_defect(&self.active)
    }
}

pub fn staircase_defect(cells: &[(u32, u32)]) -> Option<(u32, u32)> {
    let set: HashSet<(u32, u32)> = cells.iter().copied().collect();
    cells.iter().copied().find(|&(x, y)| {
        (x > 0 && !set.contains(&(x - 1, y))) || (y > 0 && !set.contains(&(x, y - 1)))
    })
}

/// `(even, odd)` sizes of the `x + y` parity classes.
pub fn parity_counts(cells: &[(u32, u32)]) -> (u64, u64) {
    let even = cells.iter().filter(|(x, y)| (x + y) % 2 == 0).count() as u64;
    (even, cells.len() as u64 - even)
}

/// Larger parity class of a staircase; errors if the set is not one.
pub fn parity_alpha(tc: &TruncatedComponent) -> Result<u64> {
    if let Some((x, y)) = tc.staircase_defect() {
        return Err(Error::NotStaircase { x, y });
    }
    let (even, odd) = parity_counts(&tc.active);
    Ok(even.max(odd))
}

/// Independence number of the full component of height `p`.
pub fn alpha_complete(p: u32) -> u64 {
    let p = u64::from(p);
    if p % 2 == 1 {
        let i = p.div_ceil(2);
        i * (i + 1)
    } else {
        let i = p / 2;
        (i + 1) * (i + 1)
    }
}

/// `f(p, r)` as a step function: `f(p, r) = plateaus[k]` for
/// `breakpoints[k] <= r < breakpoints[k + 1]`, zero below `a^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    pub height: u32,
    pub breakpoints: Vec<BigUint>,
    pub plateaus: Vec<u64>,
}

/// Sorts the vertex values of `C_{p,1}` and sweeps them in increasing order,
/// updating both parity counts, so every truncation is evaluated in one pass.
pub fn f_table(t: &TripleParams, p: u32) -> FTable {
    let mut cells: Vec<(BigUint, bool)> = triangle_coords(p)
        .map(|(x, y)| (t.unit_value(p, x, y), (x + y) % 2 == 0))
        .collect();
    cells.sort_unstable();
    let (mut even, mut odd) = (0u64, 0u64);
    let mut breakpoints = Vec::with_capacity(cells.len());
    let mut plateaus = Vec::with_capacity(cells.len());
    for (value, is_even) in cells {
        if is_even {
            even += 1;
        } else {
            odd += 1;
        }
        breakpoints.push(value);
        plateaus.push(even.max(odd));
    }
    FTable {
        height: p,
        breakpoints,
        plateaus,
    }
}

impl FTable {
    /// Number of breakpoints at or below `r`, i.e. active vertices at cap `r`.
    pub fn active_count(&self, r: &BigUint) -> usize {
        self.breakpoints.partition_point(|v| v <= r)
    }

    pub fn value_at(&self, r: &BigUint) -> u64 {
        match self.active_count(r) {
            0 => 0,
            k => self.plateaus[k - 1],
        }
    }

    pub fn value_at_u64(&self, r: u64) -> u64 {
        self.value_at(&BigUint::from(r))
    }

    /// `f(p, floor(n/q))` for the `q`-copy of `C_{p,1}` cut at `n`.
    pub fn q_copy_alpha(&self, q: u64, n: u64) -> Result<u64> {
        let r = n / q;
        if BigUint::from(r) < self.breakpoints[0] {
            return Err(Error::OutsideRange {
                height: self.height,
                multiplier: q,
                n,
            });
        }
        Ok(self.value_at_u64(r))
    }

    pub fn complete_value(&self) -> u64 {
        *self.plateaus.last().expect("table is never empty")
    }
}

pub fn q_copy_alpha(t: &TripleParams, p: u32, q: u64, n: u64) -> Result<u64> {
    if !t.admissible(q) {
        return Err(Error::InvalidParams(format!(
            "multiplier {q} is not admissible"
        )));
    }
    f_table(t, p).q_copy_alpha(q, n)
}

/// Number of `q` in `[1, limit]` divisible by none of `a, b, c`.
pub fn admissible_count(t: &TripleParams, limit: u64) -> u64 {
    let n = u128::from(limit);
    let (a, b, c) = (u128::from(t.a), u128::from(t.b), u128::from(t.c));
    let count =
        n + n / (a * b) + n / (a * c) + n / (b * c) - n / a - n / b - n / c - n / (a * b * c);
    count as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Complete,
    Small,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ComponentId {
    pub height: u32,
    pub multiplier: u64,
    pub kind: ComponentKind,
}

/// `base^exp * factor` saturated at `u128::MAX`.
fn scaled_power(base: u64, exp: u32, factor: u64) -> u128 {
    let mut v = u128::from(factor);
    for _ in 0..exp {
        v = v.saturating_mul(u128::from(base));
    }
    v
}

/// Kind of `C_{p,q}` relative to `n` and cutoff `d`, or `None` when the
/// component does not meet `[n]`. A component is complete when all of it
/// fits, i.e. `c^p q <= n`.
pub fn classify(
    t: &TripleParams,
    height: u32,
    multiplier: u64,
    n: u64,
    cutoff: u32,
) -> Option<ComponentId> {
    let n128 = u128::from(n);
    if scaled_power(t.a, height, multiplier) > n128 {
        return None;
    }
    let kind = if scaled_power(t.c, height, multiplier) <= n128 {
        ComponentKind::Complete
    } else if height <= cutoff {
        ComponentKind::Small
    } else {
        ComponentKind::Large
    };
    Some(ComponentId {
        height,
        multiplier,
        kind,
    })
}

/// `a^p <= n`, the largest height meeting `[n]` with `q = 1`.
pub fn max_height(t: &TripleParams, n: u64) -> u32 {
    crate::exact::floor_log(n, t.a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t235() -> TripleParams {
        TripleParams::new(2, 3, 5).unwrap()
    }

    #[test]
    fn triple_validation() {
        assert!(TripleParams::new(2, 3, 5).is_ok());
        assert!(TripleParams::new(3, 4, 5).is_ok());
        assert!(TripleParams::new(2, 4, 5).is_err());
        assert!(TripleParams::new(1, 3, 5).is_err());
        assert!(TripleParams::new(3, 2, 5).is_err());
        assert!(TripleParams::new(2, 3, 9).is_err());
        assert!(TripleParams::new(2, 5, 5).is_err());
    }

    #[test]
    fn decompose_examples() {
        let t = t235();
        assert_eq!(
            decompose(12, &t),
            Decomposition {
                height: 3,
                x: 1,
                y: 0,
                multiplier: 1
            }
        );
        assert_eq!(
            decompose(7, &t),
            Decomposition {
                height: 0,
                x: 0,
                y: 0,
                multiplier: 7
            }
        );
        assert_eq!(
            decompose(90, &t),
            Decomposition {
                height: 4,
                x: 2,
                y: 1,
                multiplier: 1
            }
        );
    }

    #[test]
    fn decompose_composite_base() {
        let t = TripleParams::new(3, 4, 5).unwrap();
        assert_eq!(
            decompose(8, &t),
            Decomposition {
                height: 1,
                x: 1,
                y: 0,
                multiplier: 2
            }
        );
        assert_eq!(
            decompose(32, &t),
            Decomposition {
                height: 2,
                x: 2,
                y: 0,
                multiplier: 2
            }
        );
    }

    #[test]
    fn parity_alpha_examples() {
        let t = t235();
        let tc = TruncatedComponent::new(t, 2, BigUint::from(10u32));
        let mut values: Vec<BigUint> = tc
            .active
            .iter()
            .map(|&(x, y)| tc.base.value(x, y))
            .collect();
        values.sort();
        assert_eq!(values, [4u32, 6, 9, 10].map(BigUint::from));
        assert_eq!(parity_alpha(&tc).unwrap(), 2);

        let tc = TruncatedComponent::new(t, 1, BigUint::from(5u32));
        assert_eq!(tc.active.len(), 3);
        assert_eq!(parity_alpha(&tc).unwrap(), 2);

        for p in 0..8 {
            let tc = TruncatedComponent::new(t, p, BigUint::from(2u32).pow(p));
            assert_eq!(parity_alpha(&tc).unwrap(), 1);
        }
    }

    #[test]
    fn parity_alpha_rejects_non_staircase() {
        let mut tc = TruncatedComponent::new(t235(), 2, BigUint::from(10u32));
        tc.active.retain(|&c| c != (0, 0));
        assert!(matches!(parity_alpha(&tc), Err(Error::NotStaircase { .. })));
    }

    #[test]
    fn alpha_complete_values() {
        assert_eq!(alpha_complete(0), 1);
        assert_eq!(alpha_complete(1), 2);
        assert_eq!(alpha_complete(2), 4);
        assert_eq!(alpha_complete(3), 6);
        assert_eq!(alpha_complete(4), 9);
        for p in 0..=50 {
            let cells: Vec<_> = triangle_coords(p).collect();
            let (e, o) = parity_counts(&cells);
            assert_eq!(alpha_complete(p), e.max(o));
        }
    }

    #[test]
    fn f_table_examples() {
        let t = t235();
        let f = f_table(&t, 1);
        assert_eq!(f.breakpoints, [2u32, 3, 5].map(BigUint::from));
        assert_eq!(f.plateaus, vec![1, 1, 2]);

        let f = f_table(&t, 0);
        assert_eq!(f.breakpoints, vec![BigUint::from(1u32)]);
        assert_eq!(f.plateaus, vec![1]);

        let f = f_table(&t, 2);
        assert_eq!(f.breakpoints, [4u32, 6, 9, 10, 15, 25].map(BigUint::from));
        assert_eq!(f.complete_value(), 4);
        assert_eq!(f.value_at_u64(10), 2);
        assert_eq!(f.value_at_u64(3), 0);
    }

    #[test]
    fn f_table_shape() {
        for t in [
            t235(),
            TripleParams::new(3, 4, 5).unwrap(),
            TripleParams::new(2, 7, 9).unwrap(),
        ] {
            for p in 0..=30 {
                let f = f_table(&t, p);
                assert_eq!(f.plateaus[0], 1);
                assert!(f.plateaus.windows(2).all(|w| w[0] <= w[1]));
                assert!(
                    f.breakpoints.windows(2).all(|w| w[0] < w[1]),
                    "values must be distinct"
                );
                assert_eq!(f.breakpoints[0], GridComponent::unit(t, p).min_value());
                assert_eq!(
                    *f.breakpoints.last().unwrap(),
                    GridComponent::unit(t, p).max_value()
                );
                assert_eq!(f.complete_value(), alpha_complete(p));
            }
        }
    }

    #[test]
    fn incomplete_alpha_at_most_height_squared() {
        // Soundness of the large-component tail: any cut below c^p keeps at
        // most p² independent vertices.
        for t in [
            t235(),
            TripleParams::new(3, 4, 5).unwrap(),
            TripleParams::new(2, 7, 9).unwrap(),
        ] {
            for p in 1..=30u32 {
                let f = f_table(&t, p);
                let below_top = f.plateaus[f.plateaus.len() - 2];
                assert!(below_top <= u64::from(p * p), "p = {p}");
            }
        }
    }

    #[test]
    fn q_copy_examples() {
        let t = t235();
        assert_eq!(q_copy_alpha(&t, 1, 7, 25).unwrap(), 1);
        assert_eq!(q_copy_alpha(&t, 2, 1, 10).unwrap(), 2);
        for p in 0..6 {
            assert_eq!(
                q_copy_alpha(&t, p, 1, 5u64.pow(p)).unwrap(),
                alpha_complete(p)
            );
        }
        assert!(matches!(
            q_copy_alpha(&t, 2, 7, 27),
            Err(Error::OutsideRange { .. })
        ));
        assert!(q_copy_alpha(&t, 1, 6, 100).is_err());
    }

    #[test]
    fn admissible_count_examples() {
        let t = t235();
        assert_eq!(admissible_count(&t, 30), 8);
        assert_eq!(admissible_count(&t, 0), 0);
        assert_eq!(admissible_count(&t, 1), 1);
    }

    #[test]
    fn classify_kinds() {
        let t = t235();
        assert_eq!(
            classify(&t, 1, 1, 5, 3).unwrap().kind,
            ComponentKind::Complete
        );
        assert_eq!(classify(&t, 1, 1, 4, 3).unwrap().kind, ComponentKind::Small);
        assert_eq!(classify(&t, 1, 1, 4, 0).unwrap().kind, ComponentKind::Large);
        assert_eq!(classify(&t, 1, 1, 1, 3), None);
        assert_eq!(
            classify(&t, 0, 7, 7, 0).unwrap().kind,
            ComponentKind::Complete
        );
    }

    #[test]
    fn render_layout() {
        let s = GridComponent::unit(t235(), 1).render();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains('3') && lines[0].contains('5'));
        assert_eq!(lines[1].trim(), "2");
    }

    #[test]
    fn injective_values() {
        for t in [
            t235(),
            TripleParams::new(3, 4, 5).unwrap(),
            TripleParams::new(3, 7, 8).unwrap(),
        ] {
            for p in 0..=50 {
                let values: HashSet<BigUint> = GridComponent::unit(t, p)
                    .vertices()
                    .into_iter()
                    .map(|(_, v)| v)
                    .collect();
                assert_eq!(
                    values.len() as u64,
                    GridComponent::unit(t, p).vertex_count()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn decompose_round_trips(m in 1u64..5_000_000) {
            for t in [t235(), TripleParams::new(3, 4, 5).unwrap()] {
                let d = decompose(m, &t);
                prop_assert!(t.admissible(d.multiplier));
                let back = t.unit_value(d.height, d.x, d.y) * d.multiplier;
                prop_assert_eq!(back, BigUint::from(m));
            }
        }

        #[test]
        fn truncations_are_staircases(p in 0u32..12, cap in 1u64..10_000_000) {
            let tc = TruncatedComponent::new(t235(), p, BigUint::from(cap));
            prop_assert_eq!(tc.staircase_defect(), None);
            prop_assert_eq!(tc.active.is_empty(), BigUint::from(cap) < BigUint::from(2u32).pow(p));
        }

        #[test]
        fn admissible_count_matches_scan(limit in 0u64..3000) {
            for t in [t235(), TripleParams::new(3, 4, 5).unwrap()] {
                let scan = (1..=limit).filter(|&q| t.admissible(q)).count() as u64;
                prop_assert_eq!(admissible_count(&t, limit), scan);
            }
        }
    }
}
