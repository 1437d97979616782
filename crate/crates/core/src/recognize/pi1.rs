//! Fundamental group of the 2-skeleton: an edge-path presentation,
//! Tietze simplification, abelianization and a finite-quotient search.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::budget::Budgets;
use crate::complex::{edge_key, MetricComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Pi1 {
    Trivial,
    /// `loop_vertices` is an edge loop mapping nontrivially to `quotient`.
    Nontrivial { loop_vertices: Vec<String>, quotient: String },
    Unknown { generators: usize, relators: usize },
}

impl Pi1 {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Pi1::Trivial)
    }
}

/// Letters are `±(g + 1)`.
type Word = Vec<i32>;

const MAX_RELATOR: usize = 96;
const MAX_SNF_GENERATORS: usize = 400;

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    *w = out;
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

struct Presentation {
    alive: Vec<bool>,
    rels: Vec<Word>,
}

impl Presentation {
    fn generators(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&g| self.alive[g]).collect()
    }

    fn normalize(&mut self) {
        for r in &mut self.rels {
            free_reduce(r);
        }
        self.rels.retain(|r| !r.is_empty());
        self.rels.sort();
        self.rels.dedup();
    }

    /// Replaces generator `g` by `image` everywhere.
    fn substitute(&mut self, g: usize, image: &[i32]) {
        let inv = inverse(image);
        let letter = g as i32 + 1;
        for r in &mut self.rels {
            if !r.iter().any(|x| x.abs() == letter) {
                continue;
            }
            let mut out = Vec::with_capacity(r.len() + image.len());
            for &x in r.iter() {
                if x == letter {
                    out.extend_from_slice(image);
                } else if x == -letter {
                    out.extend_from_slice(&inv);
                } else {
                    out.push(x);
                }
            }
            *r = out;
        }
        self.alive[g] = false;
    }

    /// Tietze moves until no generator can be eliminated or the budget runs
    /// out.
    fn simplify(&mut self, budget: usize) {
        let mut steps = 0;
        loop {
            self.normalize();
            steps += 1;
            if steps > budget {
                return;
            }
            if let Some(r) = self.rels.iter().find(|r| r.len() == 1) {
                let g = (r[0].unsigned_abs() - 1) as usize;
                self.substitute(g, &[]);
                continue;
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, r) in self.rels.iter().enumerate() {
                if best.is_some_and(|(_, _, len)| len <= r.len()) {
                    continue;
                }
                let mut count: BTreeMap<i32, usize> = BTreeMap::new();
                for &x in r {
                    *count.entry(x.abs()).or_default() += 1;
                }
                if let Some((&g, _)) = count.iter().find(|(_, &k)| k == 1) {
                    best = Some((i, (g - 1) as usize, r.len()));
                }
            }
            let Some((i, g, len)) = best else { return };
            if len > MAX_RELATOR {
                return;
            }
            let mut r = self.rels.swap_remove(i);
            let pos = r.iter().position(|x| x.unsigned_abs() as usize == g + 1).expect("occurs");
            r.rotate_left(pos);
            let rest = r[1..].to_vec();
            let image = if r[0] > 0 { inverse(&rest) } else { rest };
            self.substitute(g, &image);
            if self.rels.iter().any(|r| r.len() > 4 * MAX_RELATOR) {
                return;
            }
        }
    }
}

/// Spanning tree of the 1-skeleton from vertex 0.
struct Tree {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl Tree {
    fn bfs(c: &MetricComplex) -> Tree {
        let n = c.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        if n > 0 {
            depth[0] = 0;
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            for w in c.neighbors(v) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        Tree { parent, depth }
    }

    fn is_tree_edge(&self, a: usize, b: usize) -> bool {
        self.parent[a] == Some(b) || self.parent[b] == Some(a)
    }

    /// Closed edge loop through the non-tree edge `{a, b}`.
    fn fundamental_cycle(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let (mut left, mut right) = (vec![x], vec![y]);
        while x != y {
            if self.depth[x] >= self.depth[y] {
                x = self.parent[x].expect("connected");
                left.push(x);
            } else {
                y = self.parent[y].expect("connected");
                right.push(y);
            }
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }
}

/// Decides whether the 2-skeleton of a connected complex is simply
/// connected. Non-triviality always comes with a loop and a quotient it
/// maps onto nontrivially.
pub fn simple_connectivity(c: &MetricComplex, budgets: &Budgets) -> Pi1 {
    let tree = Tree::bfs(c);
    let mut gen_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges = vec![];
    for ((a, b), _) in c.edges() {
        if tree.depth[a] == usize::MAX || tree.is_tree_edge(a, b) {
            continue;
        }
        gen_of.insert((a, b), edges.len());
        edges.push((a, b));
    }
    let letter = |a: usize, b: usize| -> Option<i32> {
        let g = *gen_of.get(&edge_key(a, b))? as i32 + 1;
        Some(if a < b { g } else { -g })
    };
    let mut rels = vec![];
    if c.dimension() >= 2 {
        for t in c.faces(2) {
            let (a, b, x) = (t[0], t[1], t[2]);
            if tree.depth[a] == usize::MAX {
                continue;
            }
            let w: Word = [letter(a, b), letter(b, x), letter(x, a)].into_iter().flatten().collect();
            rels.push(w);
        }
    }
    let mut p = Presentation { alive: vec![true; edges.len()], rels };
    p.simplify(budgets.pi1_search);
    let gens = p.generators();
    if gens.is_empty() {
        return Pi1::Trivial;
    }
    let witness = |g: usize, quotient: String| {
        let (a, b) = edges[g];
        Pi1::Nontrivial {
            loop_vertices: tree.fundamental_cycle(a, b).iter().map(|&v| c.name(v).to_string()).collect(),
            quotient,
        }
    };
    if p.rels.is_empty() {
        return witness(gens[0], "Z".into());
    }
    if gens.len() <= MAX_SNF_GENERATORS {
        if let Some((g, q)) = abelian_witness(&p, &gens) {
            return witness(g, q);
        }
    }
    if let Some(g) = alternating_quotient(&p, &gens, budgets.pi1_search) {
        return witness(g, "A5".into());
    }
    Pi1::Unknown { generators: gens.len(), relators: p.rels.len() }
}

/// A generator with nonzero image in the abelianization, via a diagonal
/// form `D = U·A·V` tracking `V⁻¹`.
fn abelian_witness(p: &Presentation, gens: &[usize]) -> Option<(usize, String)> {
    let n = gens.len();
    let col: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut a: Vec<Vec<i128>> = p
        .rels
        .iter()
        .map(|r| {
            let mut row = vec![0i128; n];
            for &x in r {
                row[col[&((x.unsigned_abs() - 1) as usize)]] += x.signum() as i128;
            }
            row
        })
        .collect();
    let m = a.len();
    let mut vinv: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest(&a, t..m, t..n) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        vinv.swap(t, pj);
        loop {
            let piv = a[t][t];
            for i in t + 1..m {
                let q = a[i][t] / piv;
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
            }
            for j in t + 1..n {
                let q = a[t][j] / piv;
                if q != 0 {
                    for row in a.iter_mut().take(m).skip(t) {
                        row[j] -= q * row[t];
                    }
                    for k in 0..n {
                        vinv[t][k] += q * vinv[j][k];
                    }
                }
            }
            let clean = (t + 1..m).all(|i| a[i][t] == 0) && (t + 1..n).all(|j| a[t][j] == 0);
            if clean {
                break;
            }
            // move a smaller remainder into the pivot position
            let (pi, pj) = (t + 1..m)
                .filter(|&i| a[i][t] != 0)
                .map(|i| (i, t))
                .chain((t + 1..n).filter(|&j| a[t][j] != 0).map(|j| (t, j)))
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("not clean");
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            vinv.swap(t, pj);
        }
        t += 1;
    }
    let d: Vec<i128> = (0..n).map(|i| if i < m { a[i][i].abs() } else { 0 }).collect();
    for (j, &g) in gens.iter().enumerate() {
        for i in 0..n {
            let x = vinv[i][j];
            if d[i] == 0 && x != 0 {
                return Some((g, "Z".into()));
            }
            if d[i] > 1 && x.rem_euclid(d[i]) != 0 {
                return Some((g, format!("Z/{}", d[i])));
            }
        }
    }
    None
}

fn smallest(
    a: &[Vec<i128>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    rows.flat_map(|i| cols.clone().map(move |j| (i, j)))
        .filter(|&(i, j)| a[i][j] != 0)
        .min_by_key(|&(i, j)| a[i][j].abs())
}

fn swap_cols(a: &mut [Vec<i128>], x: usize, y: usize) {
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

type Perm = [u8; 5];

fn compose(p: &Perm, q: &Perm) -> Perm {
    let mut r = [0; 5];
    for i in 0..5 {
        r[i] = p[q[i] as usize];
    }
    r
}

fn invert(p: &Perm) -> Perm {
    let mut r = [0; 5];
    for i in 0..5 {
        r[p[i] as usize] = i as u8;
    }
    r
}

fn alternating_group() -> Vec<Perm> {
    let mut out = vec![];
    for a in 0..5u8 {
        for b in 0..5u8 {
            for c in 0..5u8 {
                for d in 0..5u8 {
                    for e in 0..5u8 {
                        let p = [a, b, c, d, e];
                        let mut seen = [false; 5];
                        if !p.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true)) {
                            continue;
                        }
                        let inversions = (0..5)
                            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        if inversions % 2 == 0 {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Backtracking search for a nontrivial homomorphism to `A5`, the only
/// perfect nontrivial subgroup of `S_k` for `k ≤ 5`. Returns a generator
/// with nontrivial image.
fn alternating_quotient(p: &Presentation, gens: &[usize], budget: usize) -> Option<usize> {
    const ID: Perm = [0, 1, 2, 3, 4];
    let group = alternating_group();
    let pos: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let rel_pos: Vec<Vec<(usize, bool)>> = p
        .rels
        .iter()
        .map(|r| r.iter().map(|&x| (pos[&((x.unsigned_abs() - 1) as usize)], x > 0)).collect())
        .collect();
    let mut by_last: Vec<Vec<usize>> = vec![vec![]; gens.len()];
    for (i, r) in rel_pos.iter().enumerate() {
        let last = r.iter().map(|&(g, _)| g).max().expect("nonempty relator");
        by_last[last].push(i);
    }
    // first nontrivial image only up to conjugacy
    let reps: Vec<Perm> = vec![[1, 0, 3, 2, 4], [1, 2, 0, 3, 4], [1, 2, 3, 4, 0], [1, 2, 4, 0, 3]];

    struct S<'a> {
        group: &'a [Perm],
        reps: &'a [Perm],
        rel_pos: &'a [Vec<(usize, bool)>],
        by_last: &'a [Vec<usize>],
        assign: Vec<Perm>,
        steps: usize,
        budget: usize,
    }
    fn ok(s: &S, k: usize) -> bool {
        s.by_last[k].iter().all(|&r| {
            let mut acc = [0, 1, 2, 3, 4];
            for &(g, pos) in &s.rel_pos[r] {
                let x = if pos { s.assign[g] } else { invert(&s.assign[g]) };
                acc = compose(&acc, &x);
            }
            acc == [0, 1, 2, 3, 4]
        })
    }
    fn go(s: &mut S, k: usize, nontrivial: bool) -> Option<bool> {
        if k == s.assign.len() {
            return Some(nontrivial);
        }
        s.steps += 1;
        if s.steps > s.budget {
            return None;
        }
        let cands: Vec<Perm> = if nontrivial {
            s.group.to_vec()
        } else {
            std::iter::once(ID).chain(s.reps.iter().copied()).collect()
        };
        for x in cands {
            s.assign[k] = x;
            if ok(s, k) && go(s, k + 1, nontrivial || x != ID)? {
                return Some(true);
            }
        }
        Some(false)
    }
    let mut s = S {
        group: &group,
        reps: &reps,
        rel_pos: &rel_pos,
        by_last: &by_last,
        assign: vec![ID; gens.len()],
        steps: 0,
        budget,
    };
    if go(&mut s, 0, false)? {
        let k = s.assign.iter().position(|x| *x != ID)?;
        return Some(gens[k]);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::complex::{ComplexBuilder, Geometry};

    fn octahedron() -> MetricComplex {
        let s = MetricComplex::sphere0;
        s("x+", "x-").join(&s("y+", "y-")).unwrap().join(&s("z+", "z-")).unwrap()
    }

    /// Minimal 6-vertex triangulation of the projective plane.
    fn rp2() -> MetricComplex {
        let tris = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
        ];
        let mut b = ComplexBuilder::new(Geometry::Euclidean, 2);
        for t in tris {
            let n: Vec<String> = t.iter().map(|i| format!("v{i}")).collect();
            let r: Vec<&str> = n.iter().map(|s| s.as_str()).collect();
            b.cell_with(&r, |_, _| Angle::Approx(1.0)).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn sphere_is_simply_connected() {
        assert_eq!(simple_connectivity(&octahedron(), &Budgets::default()), Pi1::Trivial);
    }

    #[test]
    fn projective_plane_has_order_two() {
        match simple_connectivity(&rp2(), &Budgets::default()) {
            Pi1::Nontrivial { loop_vertices, quotient } => {
                assert_eq!(quotient, "Z/2");
                assert!(loop_vertices.len() >= 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn circle_has_infinite_cycle() {
        let mut b = ComplexBuilder::new(Geometry::Spherical, 1);
        for (x, y) in [("a", "b"), ("b", "c"), ("c", "a")] {
            b.cell_with(&[x, y], |_, _| Angle::pi_frac(1, 2)).unwrap();
        }
        match simple_connectivity(&b.build().unwrap(), &Budgets::default()) {
            Pi1::Nontrivial { loop_vertices, quotient } => {
                assert_eq!(quotient, "Z");
                assert_eq!(loop_vertices.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn snf_detects_torsion() {
        // ⟨a, b | a³, b a b⁻¹ a⁻¹⟩ ≅ Z/3 × Z
        let p = Presentation { alive: vec![true, true], rels: vec![vec![1, 1, 1], vec![2, 1, -2, -1]] };
        let (g, q) = abelian_witness(&p, &[0, 1]).unwrap();
        assert!(q == "Z" || q == "Z/3", "{g} {q}");
        let p = Presentation { alive: vec![true], rels: vec![vec![1, 1, 1, 1, 1]] };
        assert_eq!(abelian_witness(&p, &[0]).unwrap().1, "Z/5");
    }

    #[test]
    fn finds_icosahedral_quotient() {
        // ⟨a, b | a², b³, (ab)⁵⟩ ≅ A5
        let p = Presentation {
            alive: vec![true, true],
            rels: vec![vec![1, 1], vec![2, 2, 2], [1, 2].repeat(5)],
        };
        assert!(abelian_witness(&p, &[0, 1]).is_none());
        assert!(alternating_quotient(&p, &[0, 1], 100_000).is_some());
    }
}
