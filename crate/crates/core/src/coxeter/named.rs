use super::{CoxeterMatrix, FormType};
use crate::error::{Error, Result};

fn diagram(name: &str) -> Result<(usize, Vec<(usize, usize, u32)>)> {
    let bad = || Error::Coxeter(format!("unknown Coxeter type {name:?}"));
    let path = |n: usize| -> Vec<(usize, usize, u32)> { (1..n).map(|i| (i - 1, i, 3)).collect() };
    if let Some(rest) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = if rest == "inf" { 0 } else { rest.parse().map_err(|_| bad())? };
        if m == 1 {
            return Err(bad());
        }
        return Ok((2, vec![(0, 1, m)]));
    }
    if let Some(rest) = name.strip_prefix('~') {
        let mut chars = rest.chars();
        let fam = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        return match (fam, n) {
            ('A', 1) => Ok((2, vec![(0, 1, 0)])),
            ('A', n) if n >= 2 => {
                let mut e = path(n + 1);
                e.push((n, 0, 3));
                Ok((n + 1, e))
            }
            ('B', n) if n >= 3 => {
                let mut e = vec![(0, 2, 3), (1, 2, 3)];
                e.extend((3..=n).map(|i| (i - 1, i, if i == n { 4 } else { 3 })));
                Ok((n + 1, e))
            }
            ('C', n) if n >= 2 => {
                let e = (1..=n)
                    .map(|i| (i - 1, i, if i == 1 || i == n { 4 } else { 3 }))
                    .collect();
                Ok((n + 1, e))
            }
            ('D', n) if n >= 4 => {
                let mut e = vec![(0, 2, 3), (1, 2, 3)];
                e.extend((3..n).map(|i| (i - 1, i, 3)));
                e.push((n - 2, n, 3));
                Ok((n + 1, e))
            }
            ('G', 2) => Ok((3, vec![(0, 1, 3), (1, 2, 6)])),
            _ => Err(bad()),
        };
    }
    let mut chars = name.chars();
    let fam = chars.next().ok_or_else(bad)?;
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    match (fam, n) {
        ('A', n) if n >= 1 => Ok((n, path(n))),
        ('B' | 'C', n) if n >= 2 => {
            let mut e = path(n);
            e.last_mut().expect("n >= 2").2 = 4;
            Ok((n, e))
        }
        ('D', n) if n >= 4 => {
            let mut e = path(n - 1);
            e.push((n - 3, n - 1, 3));
            Ok((n, e))
        }
        ('E', n) if (6..=8).contains(&n) => {
            let mut e = path(n - 1);
            e.push((2, n - 1, 3));
            Ok((n, e))
        }
        ('F', 4) => Ok((4, vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)])),
        ('G', 2) => Ok((2, vec![(0, 1, 6)])),
        ('H', 3) => Ok((3, vec![(0, 1, 5), (1, 2, 3)])),
        ('H', 4) => Ok((4, vec![(0, 1, 5), (1, 2, 3), (2, 3, 3)])),
        _ => Err(bad()),
    }
}

impl CoxeterMatrix {
    /// Standard types: `A3`, `B2`, `D4`, `E6`, `F4`, `G2`, `H3`, `I2(5)`,
    /// `~A2`, `~C2`, `~G2`, and products such as `A1xA1xA1`. Generators are
    /// `s0, s1, …` numbered across factors.
    pub fn named(name: &str) -> Result<CoxeterMatrix> {
        let mut rank = 0;
        let mut edges = vec![];
        for part in name.split('x') {
            let (r, es) = diagram(part.trim())?;
            edges.extend(es.into_iter().map(|(i, j, m)| (i + rank, j + rank, m)));
            rank += r;
        }
        CoxeterMatrix::from_edges(rank, &edges)
    }

    /// Human-readable type, e.g. `A1xA2`. Unrecognized components are
    /// rendered as `?<rank>`.
    pub fn type_name(&self) -> String {
        let mut parts: Vec<String> = self
            .irreducible_components()
            .iter()
            .map(|c| self.restrict(c).irreducible_name())
            .collect();
        parts.sort();
        parts.join("x")
    }

    fn irreducible_name(&self) -> String {
        let r = self.rank();
        if r == 1 {
            return "A1".into();
        }
        if r == 2 {
            return match self.m(0, 1) {
                0 => "~A1".into(),
                3 => "A2".into(),
                4 => "B2".into(),
                6 => "G2".into(),
                m => format!("I2({m})"),
            };
        }
        let spherical = self.form_type().0 == FormType::Spherical;
        let candidates: Vec<String> = if spherical {
            let mut c = vec![format!("A{r}"), format!("B{r}"), format!("D{r}"), format!("E{r}")];
            c.extend(["F4", "H3", "H4"].map(String::from));
            c
        } else {
            let n = r - 1;
            vec![
                format!("~A{n}"),
                format!("~B{n}"),
                format!("~C{n}"),
                format!("~D{n}"),
                "~G2".into(),
            ]
        };
        for c in candidates {
            if let Ok(t) = CoxeterMatrix::named(&c) {
                if t.rank() == r && self.isomorphic(&t) {
                    return c;
                }
            }
        }
        format!("?{r}")
    }

    /// Diagram isomorphism by backtracking over generator bijections.
    pub fn isomorphic(&self, other: &CoxeterMatrix) -> bool {
        self.isomorphism(other).is_some()
    }

    /// A bijection `p` with `m(i,j) = other.m(p[i],p[j])`.
    pub fn isomorphism(&self, other: &CoxeterMatrix) -> Option<Vec<usize>> {
        let r = self.rank();
        if r != other.rank() {
            return None;
        }
        let profile = |c: &CoxeterMatrix, i: usize| {
            let mut p: Vec<u32> = (0..r).map(|j| c.m(i, j)).collect();
            p.sort_unstable();
            p
        };
        let mine: Vec<Vec<u32>> = (0..r).map(|i| profile(self, i)).collect();
        let theirs: Vec<Vec<u32>> = (0..r).map(|i| profile(other, i)).collect();
        let mut map = vec![usize::MAX; r];
        let mut used = vec![false; r];
        fn go(
            i: usize,
            a: &CoxeterMatrix,
            b: &CoxeterMatrix,
            mine: &[Vec<u32>],
            theirs: &[Vec<u32>],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == map.len() {
                return true;
            }
            for j in 0..map.len() {
                if used[j] || mine[i] != theirs[j] {
                    continue;
                }
                if (0..i).any(|k| a.m(i, k) != b.m(j, map[k])) {
                    continue;
                }
                map[i] = j;
                used[j] = true;
                if go(i + 1, a, b, mine, theirs, map, used) {
                    return true;
                }
                used[j] = false;
            }
            false
        }
        go(0, self, other, &mine, &theirs, &mut map, &mut used).then_some(map)
    }
}
