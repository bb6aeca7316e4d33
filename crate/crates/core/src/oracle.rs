//! Independent checks that do not rely on the parity argument: explicit
//! graphs on `[n]` built from the defining equations, maximum independent
//! sets via bipartite matching and via exhaustive search, union-find
//! partitions, and literal (untelescoped) sums.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::components::{
    classify, decompose, f_table, grid_adjacent, max_height, staircase_defect, ComponentId,
    ComponentKind, TripleParams,
};
use crate::error::{Error, Result};
use crate::exact::{int, ratio};
use crate::pair_sidon::PairParams;

/// Largest graph accepted by [`exact_alpha_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Default `n` up to which every component is checked by all oracles.
pub const DEFAULT_VERIFY_LIMIT: u64 = 5000;

/// Seed for the random staircase suite.
pub const STAIRCASE_SEED: u64 = 0x5EED_1E44A;

/// Undirected graph on labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SmallGraph {
    pub labels: Vec<u64>,
    pub adjacency: Vec<Vec<usize>>,
}

impl SmallGraph {
    pub fn from_edges(labels: Vec<u64>, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); labels.len()];
        for &(u, v) in edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        SmallGraph { labels, adjacency }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as label pairs `(smaller, larger)`.
    pub fn labelled_edges(&self) -> Vec<(u64, u64)> {
        let mut edges: Vec<(u64, u64)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .map(|(u, v)| {
                let (x, y) = (self.labels[u], self.labels[v]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// BFS 2-colouring; `Err(NotBipartite)` on an odd cycle.
pub fn two_coloring(g: &SmallGraph) -> Result<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.len()];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..g.len() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &v in &g.adjacency[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return Err(Error::NotBipartite),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(Option::unwrap).collect())
}

fn augment(u: usize, g: &SmallGraph, matched: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &v in &g.adjacency[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if matched[v].is_none_or(|w| augment(w, g, matched, seen)) {
            matched[v] = Some(u);
            return true;
        }
    }
    false
}

pub fn maximum_matching_size(g: &SmallGraph) -> Result<usize> {
    let color = two_coloring(g)?;
    let mut matched = vec![None; g.len()];
    let mut size = 0;
    for u in (0..g.len()).filter(|&u| !color[u]) {
        let mut seen = vec![false; g.len()];
        if augment(u, g, &mut matched, &mut seen) {
            size += 1;
        }
    }
    Ok(size)
}

/// `|V| - ν(G)`, valid for bipartite graphs by König's theorem.
pub fn exact_alpha_matching(g: &SmallGraph) -> Result<u64> {
    Ok((g.len() - maximum_matching_size(g)?) as u64)
}

fn mis_search(adj: &[u32], cand: u32, size: u32, best: &mut u32) {
    if size + cand.count_ones() <= *best {
        return;
    }
    if cand == 0 {
        *best = size;
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let bit = 1u32 << v;
    let nbrs = adj[v] & cand;
    mis_search(adj, cand & !bit & !nbrs, size + 1, best);
    // an isolated vertex always belongs to some maximum set
    if nbrs != 0 {
        mis_search(adj, cand & !bit, size, best);
    }
}

/// Branch and bound over subsets, at most [`EXHAUSTIVE_LIMIT`] vertices.
pub fn exact_alpha_exhaustive(g: &SmallGraph) -> Result<u64> {
    if g.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            vertices: g.len(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let adj: Vec<u32> = g
        .adjacency
        .iter()
        .map(|nbrs| nbrs.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let all = if g.is_empty() {
        0
    } else {
        u32::MAX >> (32 - g.len())
    };
    let mut best = 0;
    mis_search(&adj, all, 0, &mut best);
    Ok(u64::from(best))
}

/// A component of `G_n` with its grid coordinates and induced graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGraph {
    pub id: ComponentId,
    pub coords: Vec<(u32, u32)>,
    pub graph: SmallGraph,
}

type CellsByComponent = BTreeMap<(u32, u64), Vec<((u32, u32), u64)>>;

/// Groups `[n]` by `(height, multiplier)` and joins vertices one grid step
/// apart. Components come out ordered by `(height, multiplier)`.
pub fn build_gn(t: &TripleParams, n: u64, cutoff: u32) -> Vec<ComponentGraph> {
    let mut groups: CellsByComponent = BTreeMap::new();
    for m in 1..=n {
        let d = decompose(m, t);
        groups
            .entry((d.height, d.multiplier))
            .or_default()
            .push(((d.x, d.y), m));
    }
    groups
        .into_iter()
        .map(|((height, multiplier), members)| {
            let id = classify(t, height, multiplier, n, cutoff).expect("member lies in [n]");
            let mut edges = Vec::new();
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    if grid_adjacent(members[i].0, members[j].0) {
                        edges.push((i, j));
                    }
                }
            }
            let (coords, labels): (Vec<_>, Vec<_>) = members.into_iter().unzip();
            ComponentGraph {
                id,
                coords,
                graph: SmallGraph::from_edges(labels, &edges),
            }
        })
        .collect()
}

/// All pairs `x < y <= n` with `b·x = a·y` or `c·x = a·y`.
pub fn arithmetic_edges(t: &TripleParams, n: u64) -> Vec<(u64, u64)> {
    let mut edges = Vec::new();
    for x in (1..=n).filter(|x| x % t.a() == 0) {
        for m in [t.b(), t.c()] {
            let y = x / t.a() * m;
            if y <= n {
                edges.push((x, y));
            }
        }
    }
    edges.sort_unstable();
    edges
}

pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Connected components of the arithmetic edge relation on `[n]`, each
/// sorted, ordered by smallest member.
pub fn arithmetic_components(t: &TripleParams, n: u64) -> Vec<Vec<u64>> {
    let mut uf = UnionFind::new(n as usize + 1);
    for (x, y) in arithmetic_edges(t, n) {
        uf.union(x as usize, y as usize);
    }
    let mut groups: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for v in 1..=n {
        groups.entry(uf.find(v as usize)).or_default().push(v);
    }
    let mut out: Vec<Vec<u64>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub id: ComponentId,
    pub vertices: u64,
    pub alpha: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraphReport {
    pub n: u64,
    pub components: Vec<ComponentSummary>,
    pub total_alpha: u64,
    pub ratio: BigRational,
}

impl FiniteGraphReport {
    pub fn alpha_of_kind(&self, kind: ComponentKind) -> u64 {
        self.components
            .iter()
            .filter(|c| c.id.kind == kind)
            .map(|c| c.alpha)
            .sum()
    }
}

/// Walks every `(p, q)` meeting `[n]` and reads `f(p, floor(n/q))` from the
/// step tables, without materialising any graph.
fn for_each_component(t: &TripleParams, n: u64, mut visit: impl FnMut(u32, u64, u64, u64)) {
    for p in 0..=max_height(t, n) {
        let table = f_table(t, p);
        let lowest = t.a().pow(p);
        for q in (1..=n / lowest).filter(|&q| t.admissible(q)) {
            let r = num_bigint::BigUint::from(n / q);
            visit(p, q, table.active_count(&r) as u64, table.value_at(&r));
        }
    }
}

pub fn graph_report(t: &TripleParams, n: u64, cutoff: u32) -> FiniteGraphReport {
    let mut components = Vec::new();
    for_each_component(t, n, |p, q, vertices, alpha| {
        let id = classify(t, p, q, n, cutoff).expect("q ranges over components meeting [n]");
        components.push(ComponentSummary {
            id,
            vertices,
            alpha,
        });
    });
    let total_alpha = components.iter().map(|c| c.alpha).sum();
    FiniteGraphReport {
        n,
        components,
        total_alpha,
        ratio: ratio(total_alpha, n),
    }
}

/// `α(G_n)` via the step tables.
pub fn empirical_alpha(t: &TripleParams, n: u64) -> u64 {
    let mut total = 0;
    for_each_component(t, n, |_, _, _, alpha| total += alpha);
    total
}

pub fn empirical_density(t: &TripleParams, n: u64) -> BigRational {
    ratio(empirical_alpha(t, n), n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub id: ComponentId,
    pub parity: u64,
    pub matching: u64,
    pub exhaustive: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub n: u64,
    pub components: usize,
    pub exhaustive_checked: usize,
    pub total_parity: u64,
    pub total_matching: u64,
    pub total_exhaustive_where_checked: u64,
    pub disagreements: Vec<Disagreement>,
}

impl Triangulation {
    pub fn is_consistent(&self) -> bool {
        self.disagreements.is_empty() && self.total_parity == self.total_matching
    }
}

/// Compares, per component of `G_n`, the step-table value against matching
/// and (up to [`EXHAUSTIVE_LIMIT`] vertices) exhaustive search.
pub fn triangulate(t: &TripleParams, n: u64) -> Result<Triangulation> {
    let mut out = Triangulation {
        n,
        components: 0,
        exhaustive_checked: 0,
        total_parity: 0,
        total_matching: 0,
        total_exhaustive_where_checked: 0,
        disagreements: Vec::new(),
    };
    let mut tables = Vec::new();
    for comp in build_gn(t, n, 0) {
        let p = comp.id.height as usize;
        while tables.len() <= p {
            tables.push(f_table(t, tables.len() as u32));
        }
        let parity = tables[p].q_copy_alpha(comp.id.multiplier, n)?;
        let matching = exact_alpha_matching(&comp.graph)?;
        let exhaustive = if comp.graph.len() <= EXHAUSTIVE_LIMIT {
            Some(exact_alpha_exhaustive(&comp.graph)?)
        } else {
            None
        };
        out.components += 1;
        out.total_parity += parity;
        out.total_matching += matching;
        if let Some(e) = exhaustive {
            out.exhaustive_checked += 1;
            out.total_exhaustive_where_checked += e;
        }
        if parity != matching || exhaustive.is_some_and(|e| e != parity) {
            out.disagreements.push(Disagreement {
                id: comp.id,
                parity,
                matching,
                exhaustive,
            });
        }
    }
    Ok(out)
}

/// The pair graph on `[n]`: `x ~ y` when `b·x = a·y`.
pub fn pair_graph(p: &PairParams, n: u64) -> SmallGraph {
    let mut edges = Vec::new();
    for x in 1..=n {
        let bx = u128::from(p.b()) * u128::from(x);
        if bx % u128::from(p.a()) == 0 {
            let y = bx / u128::from(p.a());
            if y <= u128::from(n) {
                edges.push((x as usize - 1, y as usize - 1));
            }
        }
    }
    SmallGraph::from_edges((1..=n).collect(), &edges)
}

/// `a·x = b·y` with `a ∈ A`, `b ∈ B`, `x, y ∈ S`, but not `a = b ∧ x = y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: u64,
    pub b: u64,
    pub x: u64,
    pub y: u64,
}

pub fn general_violation(s: &[u64], a_set: &[u64], b_set: &[u64]) -> Option<Witness> {
    let members: HashSet<u64> = s.iter().copied().collect();
    let mut sorted: Vec<u64> = members.iter().copied().collect();
    sorted.sort_unstable();
    for &a in a_set {
        for &x in &sorted {
            let ax = u128::from(a) * u128::from(x);
            for &b in b_set {
                if b == 0 || ax % u128::from(b) != 0 {
                    continue;
                }
                let Ok(y) = u64::try_from(ax / u128::from(b)) else {
                    continue;
                };
                if members.contains(&y) && !(a == b && x == y) {
                    return Some(Witness { a, b, x, y });
                }
            }
        }
    }
    None
}

pub fn is_general_multiplicative(s: &[u64], a_set: &[u64], b_set: &[u64]) -> bool {
    general_violation(s, a_set, b_set).is_none()
}

/// Downward-closed cell set given by non-increasing column heights; column
/// `x` holds the cells `(x, 0..height)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    pub columns: Vec<u32>,
}

impl Staircase {
    pub fn new(columns: Vec<u32>) -> Self {
        Staircase { columns }
    }

    /// Column heights drawn one at a time, each uniform in `[0, previous]`
    /// and capped by the cells left; stops at the first zero.
    pub fn random<R: Rng>(rng: &mut R, max_cells: u32) -> Self {
        let mut columns = Vec::new();
        let mut remaining = max_cells;
        let mut previous = max_cells;
        loop {
            let h = rng.gen_range(0..=previous.min(remaining));
            if h == 0 {
                break;
            }
            columns.push(h);
            remaining -= h;
            previous = h;
        }
        if columns.is_empty() {
            columns.push(1);
        }
        Staircase { columns }
    }

    pub fn cells(&self) -> Vec<(u32, u32)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(x, &h)| (0..h).map(move |y| (x as u32, y)))
            .collect()
    }
}

pub fn grid_graph(cells: &[(u32, u32)]) -> SmallGraph {
    let mut edges = Vec::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if grid_adjacent(cells[i], cells[j]) {
                edges.push((i, j));
            }
        }
    }
    SmallGraph::from_edges((0..cells.len() as u64).collect(), &edges)
}

/// Larger parity class equals the exhaustive independence number.
pub fn staircase_lemma_check(cells: &[(u32, u32)]) -> Result<bool> {
    if let Some((x, y)) = staircase_defect(cells) {
        return Err(Error::NotStaircase { x, y });
    }
    let even = cells.iter().filter(|(x, y)| (x + y) % 2 == 0).count() as u64;
    let parity = even.max(cells.len() as u64 - even);
    Ok(parity == exact_alpha_exhaustive(&grid_graph(cells))?)
}

/// Largest `c^d` [`literal_small_sum`] will enumerate.
pub const LITERAL_SUM_LIMIT: u64 = 10_000_000;

/// `K · Σ_{p<=d} Σ_{r=a^p}^{c^p-1} f(p,r)/(r(r+1))` term by term, with
/// `f(p,r)` from exhaustive search over the arithmetic graph on the members
/// of `C_{p,1}` that are at most `r`.
pub fn literal_small_sum(t: &TripleParams, cutoff: u32) -> Result<BigRational> {
    let top = t
        .c()
        .checked_pow(cutoff)
        .filter(|&v| v <= LITERAL_SUM_LIMIT)
        .ok_or_else(|| Error::InvalidParams(format!("c^{cutoff} too large to enumerate")))?;
    let mut total = BigRational::zero();
    for p in 0..=cutoff {
        let high = t.c().pow(p);
        let members: Vec<u64> = (t.a().pow(p)..=high)
            .filter(|&m| {
                let d = decompose(m, t);
                d.height == p && d.multiplier == 1
            })
            .collect();
        debug_assert!(high <= top);
        let mut cache: BTreeMap<usize, u64> = BTreeMap::new();
        for r in t.a().pow(p)..high {
            let active = members.partition_point(|&m| m <= r);
            let f = match cache.get(&active) {
                Some(&f) => f,
                None => {
                    let labels = members[..active].to_vec();
                    let mut edges = Vec::new();
                    for (i, &x) in labels.iter().enumerate() {
                        for (j, &y) in labels.iter().enumerate() {
                            if x % t.a() == 0 && (x / t.a() * t.b() == y || x / t.a() * t.c() == y)
                            {
                                edges.push((i, j));
                            }
                        }
                    }
                    let f = exact_alpha_exhaustive(&SmallGraph::from_edges(labels, &edges))?;
                    cache.insert(active, f);
                    f
                }
            };
            total += ratio(f, u128::from(r) * u128::from(r + 1));
        }
    }
    Ok(crate::density::admissible_fraction(t) * total)
}

/// `K · Σ_{i=0}^{terms} [i(i+1)/c^(2i-1) + (i+1)²/c^(2i)]`.
pub fn complete_series_partial_sum(t: &TripleParams, terms: u32) -> BigRational {
    let c = int(t.c());
    let mut sum = BigRational::zero();
    for i in 0..=terms {
        let i_big = u64::from(i);
        let even = int((i_big + 1) * (i_big + 1)) / crate::exact::pow_rational(t.c(), 2 * i);
        let odd = if i == 0 {
            BigRational::zero()
        } else {
            int(i_big * (i_big + 1)) * &c / crate::exact::pow_rational(t.c(), 2 * i)
        };
        sum += even + odd;
    }
    crate::density::admissible_fraction(t) * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::{alpha_complete, triangle_coords};
    use crate::density::delta_small;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t235() -> TripleParams {
        TripleParams::new(2, 3, 5).unwrap()
    }

    fn path3() -> SmallGraph {
        // 3 - 2 - 5
        SmallGraph::from_edges(vec![2, 3, 5], &[(0, 1), (0, 2)])
    }

    #[test]
    fn matching_examples() {
        assert_eq!(exact_alpha_matching(&path3()).unwrap(), 2);
        let g = SmallGraph::from_edges(vec![4, 6, 9, 10], &[(0, 1), (0, 3), (1, 2)]);
        assert_eq!(maximum_matching_size(&g).unwrap(), 2);
        assert_eq!(exact_alpha_matching(&g).unwrap(), 2);
        assert_eq!(
            exact_alpha_matching(&SmallGraph::from_edges(vec![1], &[])).unwrap(),
            1
        );
    }

    #[test]
    fn matching_rejects_odd_cycle() {
        let triangle = SmallGraph::from_edges(vec![1, 2, 3], &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(exact_alpha_matching(&triangle), Err(Error::NotBipartite));
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(
            exact_alpha_exhaustive(&SmallGraph::from_edges(vec![1, 2, 3], &[])).unwrap(),
            3
        );
        let g = SmallGraph::from_edges(vec![4, 6, 9, 10], &[(0, 1), (0, 3), (1, 2)]);
        assert_eq!(exact_alpha_exhaustive(&g).unwrap(), 2);
        let full = &build_gn(&t235(), 25, 0)
            .into_iter()
            .find(|c| c.id.height == 2 && c.id.multiplier == 1)
            .unwrap()
            .graph;
        assert_eq!(full.len(), 6);
        assert_eq!(exact_alpha_exhaustive(full).unwrap(), 4);
        assert_eq!(exact_alpha_exhaustive(&SmallGraph::default()).unwrap(), 0);
        let big = SmallGraph::from_edges((0..25).collect(), &[]);
        assert!(matches!(
            exact_alpha_exhaustive(&big),
            Err(Error::TooLarge { .. })
        ));
        let triangle = SmallGraph::from_edges(vec![1, 2, 3], &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(exact_alpha_exhaustive(&triangle).unwrap(), 1);
    }

    #[test]
    fn build_gn_examples() {
        let comps = build_gn(&t235(), 10, 0);
        let find = |v: u64| comps.iter().find(|c| c.graph.labels.contains(&v)).unwrap();
        let c2 = find(2);
        let mut labels = c2.graph.labels.clone();
        labels.sort();
        assert_eq!(labels, vec![2, 3, 5]);
        assert_eq!(c2.graph.labelled_edges(), vec![(2, 3), (2, 5)]);
        let mut labels = find(4).graph.labels.clone();
        labels.sort();
        assert_eq!(labels, vec![4, 6, 9, 10]);

        let one = build_gn(&t235(), 1, 0);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].graph.labels, vec![1]);
        assert_eq!(one[0].graph.edge_count(), 0);
    }

    #[test]
    fn build_gn_edges_match_arithmetic_scan() {
        for t in [
            t235(),
            TripleParams::new(2, 3, 7).unwrap(),
            TripleParams::new(3, 4, 5).unwrap(),
        ] {
            let mut grid: Vec<(u64, u64)> = build_gn(&t, 3000, 0)
                .iter()
                .flat_map(|c| c.graph.labelled_edges())
                .collect();
            grid.sort_unstable();
            assert_eq!(grid, arithmetic_edges(&t, 3000));
        }
    }

    #[test]
    fn union_find_matches_decomposition() {
        for t in [
            t235(),
            TripleParams::new(3, 4, 5).unwrap(),
            TripleParams::new(3, 5, 8).unwrap(),
        ] {
            let n = 100_000;
            let by_uf = arithmetic_components(&t, n);
            let mut by_decompose: BTreeMap<(u32, u64), Vec<u64>> = BTreeMap::new();
            for m in 1..=n {
                let d = decompose(m, &t);
                by_decompose
                    .entry((d.height, d.multiplier))
                    .or_default()
                    .push(m);
            }
            let mut expected: Vec<Vec<u64>> = by_decompose.into_values().collect();
            expected.sort_by_key(|c| c[0]);
            assert_eq!(by_uf, expected);
        }
    }

    #[test]
    fn triple_oracle_small_n() {
        let t = t235();
        let tri = triangulate(&t, 10).unwrap();
        assert!(tri.is_consistent());
        assert_eq!(tri.exhaustive_checked, tri.components);
        assert_eq!(tri.total_parity, empirical_alpha(&t, 10));
        assert_eq!(empirical_density(&t, 1), int(1));
    }

    #[test]
    fn report_sums() {
        let t = t235();
        let report = graph_report(&t, 2000, 3);
        assert_eq!(
            report.components.iter().map(|c| c.vertices).sum::<u64>(),
            2000
        );
        assert_eq!(
            report.total_alpha,
            report.components.iter().map(|c| c.alpha).sum::<u64>()
        );
        assert_eq!(report.total_alpha, empirical_alpha(&t, 2000));
        let split: u64 = [
            ComponentKind::Complete,
            ComponentKind::Small,
            ComponentKind::Large,
        ]
        .iter()
        .map(|&k| report.alpha_of_kind(k))
        .sum();
        assert_eq!(split, report.total_alpha);
        assert!(report.alpha_of_kind(ComponentKind::Large) > 0);
    }

    #[test]
    fn pair_graph_agrees_with_path_alpha() {
        use crate::pair_sidon::{build_path_decomposition, path_alpha};
        for (a, b) in [(1, 2), (2, 3), (2, 4), (3, 5), (4, 6)] {
            let p = PairParams::new(a, b).unwrap();
            for n in [1, 2, 10, 97, 500] {
                assert_eq!(
                    exact_alpha_matching(&pair_graph(&p, n)).unwrap(),
                    path_alpha(&build_path_decomposition(&p, n))
                );
            }
        }
    }

    #[test]
    fn general_multiplicative_examples() {
        assert!(is_general_multiplicative(&[1], &[2], &[3, 5]));
        assert_eq!(
            general_violation(&[3, 2], &[2], &[3, 5]),
            Some(Witness {
                a: 2,
                b: 3,
                x: 3,
                y: 2
            })
        );
        assert!(is_general_multiplicative(&[1, 4, 9], &[2], &[3, 5]));
        assert!(is_general_multiplicative(&[], &[2], &[3]));
        // a = b and x = y is allowed
        assert!(is_general_multiplicative(&[7], &[3], &[3]));
    }

    #[test]
    fn parity_selected_set_is_multiplicative() {
        // The larger parity class of every component cut at 100.
        let t = t235();
        let mut chosen = Vec::new();
        for comp in build_gn(&t, 100, 0) {
            let (even, odd): (Vec<_>, Vec<_>) = comp
                .coords
                .iter()
                .zip(&comp.graph.labels)
                .partition(|((x, y), _)| (x + y) % 2 == 0);
            let pick = if even.len() >= odd.len() { even } else { odd };
            chosen.extend(pick.into_iter().map(|(_, &v)| v));
        }
        assert_eq!(chosen.len() as u64, empirical_alpha(&t, 100));
        assert!(is_general_multiplicative(&chosen, &[2], &[3, 5]));
    }

    #[test]
    fn staircase_examples() {
        assert!(staircase_lemma_check(&[(0, 0)]).unwrap());
        assert!(staircase_lemma_check(&Staircase::new(vec![2, 2]).cells()).unwrap());
        assert!(staircase_lemma_check(&[(1, 0)]).is_err());
    }

    #[test]
    fn random_staircases() {
        let mut rng = ChaCha8Rng::seed_from_u64(STAIRCASE_SEED);
        for _ in 0..200 {
            let s = Staircase::random(&mut rng, 24);
            let cells = s.cells();
            assert!(!cells.is_empty() && cells.len() <= 24);
            assert!(s.columns.windows(2).all(|w| w[0] >= w[1]));
            assert!(staircase_lemma_check(&cells).unwrap(), "{:?}", s.columns);
        }
    }

    #[test]
    fn literal_sum_matches_telescoped_small() {
        let t = t235();
        for d in 0..=3 {
            assert_eq!(literal_small_sum(&t, d).unwrap(), delta_small(&t, d));
        }
    }

    #[test]
    fn exhaustive_agrees_with_closed_form_on_full_triangles() {
        for p in 0..=5 {
            let cells: Vec<_> = triangle_coords(p).collect();
            assert_eq!(
                exact_alpha_exhaustive(&grid_graph(&cells)).unwrap(),
                alpha_complete(p)
            );
        }
    }
}
