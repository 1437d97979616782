use std::collections::{BTreeMap, BTreeSet};

use super::apartments::check_pairs;
use super::dim1::pi_over;
use super::pi1::{simple_connectivity, Pi1};
use super::{
    names, recognize_dim1, recognize_discrete, Apartment, ApartmentSummary, AxiomReport,
    BuildingCertificate, Condition, Diagnosis, Recognition, SuspensionInfo, Verdict, Witness,
    FLAG_GLOBAL_UNVERIFIED, FLAG_SAMPLED,
};
use crate::angle::Angle;
use crate::budget::Budgets;
use crate::complex::{for_each_subset, Geometry, MetricComplex};
use crate::coxeter::{CoxeterMatrix, ReflectionGroup};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Dihedral angle of top cell `cell` along its codimension-2 face `face`.
pub fn dihedral_angle(c: &MetricComplex, cell: usize, face: &[usize]) -> Result<Angle> {
    let single = c.subcomplex(&[cell])?;
    let lk = single.cell_link(&names(c, face))?;
    let (_, len) = lk
        .edges()
        .next()
        .ok_or_else(|| Error::Precondition("face is not of codimension 2".into()))?;
    Ok(len)
}

/// Recognizes a link or factor of any dimension.
pub(crate) fn recognize_any(c: &MetricComplex, budgets: &Budgets) -> Result<Recognition> {
    match c.dimension() {
        0 => Ok(recognize_discrete(c)),
        1 => Ok(recognize_dim1(&MetricGraph::from_complex(c)?, budgets)),
        _ => check_spherical(c, budgets),
    }
}

/// Certifies the link of every vertex not in `exempt`. Returns the flags
/// that the link certificates carry.
pub(crate) fn check_vertex_links(
    c: &MetricComplex,
    exempt: &BTreeSet<usize>,
    budgets: &Budgets,
) -> Result<std::result::Result<Vec<String>, Diagnosis>> {
    let mut flags = BTreeSet::new();
    for v in (0..c.vertex_count()).filter(|v| !exempt.contains(v)) {
        let lk = c.vertex_link(c.name(v))?;
        let report = lk.validate();
        if !report.is_valid() {
            return Ok(Err(Diagnosis::link_failure(
                vec![c.name(v).to_string()],
                Diagnosis::new(
                    Condition::EdgeLengthNonuniform,
                    Witness::Text { detail: format!("link is not a valid complex: {:?}", report.issues) },
                ),
            )));
        }
        match recognize_any(&lk, budgets)? {
            Ok(cert) => flags.extend(cert.flags),
            Err(d) => return Ok(Err(Diagnosis::link_failure(vec![c.name(v).to_string()], d))),
        }
    }
    Ok(Ok(flags.into_iter().collect()))
}

/// Panels (codimension-1 faces) outside `exempt` lying in fewer than two
/// top cells.
pub(crate) fn check_codim1(c: &MetricComplex, exempt: &BTreeSet<usize>) -> Option<Diagnosis> {
    let n = c.dimension();
    if n == 0 {
        return None;
    }
    for f in c.faces(n - 1) {
        if f.iter().any(|v| exempt.contains(v)) {
            continue;
        }
        let k = c.coface_count(&f);
        if k < 2 {
            return Some(Diagnosis::new(
                Condition::Codim1CellCount,
                Witness::Cell { cell: names(c, &f), cofaces: k },
            ));
        }
    }
    None
}

/// Chambers, their typed vertices and panel adjacency.
pub(crate) struct ChamberSystem {
    pub types: Vec<usize>,
    /// `typed[ch][t]` is the vertex of type `t` in chamber `ch`.
    pub typed: Vec<Vec<usize>>,
    pub panels: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl ChamberSystem {
    /// Propagates a type function from chamber 0 across panels.
    pub fn build(c: &MetricComplex) -> std::result::Result<ChamberSystem, Diagnosis> {
        let cells = c.top_cells();
        let n = c.dimension();
        let mut panels: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, cell) in cells.iter().enumerate() {
            for_each_subset(cell, n, &mut |p| panels.entry(p.to_vec()).or_default().push(i));
        }
        let mut types = vec![usize::MAX; c.vertex_count()];
        let mut reached = vec![false; cells.len()];
        for (t, &v) in cells[0].iter().enumerate() {
            types[v] = t;
        }
        reached[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(ch) = queue.pop_front() {
            for &x in &cells[ch] {
                let panel: Vec<usize> = cells[ch].iter().copied().filter(|&v| v != x).collect();
                for &d in &panels[&panel] {
                    if d == ch {
                        continue;
                    }
                    let y = *cells[d].iter().find(|v| !panel.contains(v)).expect("one vertex");
                    if types[y] == usize::MAX {
                        types[y] = types[x];
                    } else if types[y] != types[x] {
                        return Err(Diagnosis::new(
                            Condition::EdgeLengthNonuniform,
                            Witness::Text {
                                detail: format!(
                                    "no type function: vertex {} would get types {} and {}",
                                    c.name(y),
                                    types[y],
                                    types[x]
                                ),
                            },
                        ));
                    }
                    if !reached[d] {
                        reached[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        if let Some(ch) = reached.iter().position(|r| !r) {
            return Err(Diagnosis::new(
                Condition::NotConnected,
                Witness::Text {
                    detail: format!("chamber {:?} is not gallery connected to chamber 0", names(c, &cells[ch])),
                },
            ));
        }
        let typed = cells
            .iter()
            .map(|cell| {
                let mut row = vec![0; n + 1];
                for &v in cell {
                    row[types[v]] = v;
                }
                row
            })
            .collect();
        Ok(ChamberSystem { types, typed, panels })
    }

    /// Chambers other than `ch` sharing its panel of cotype `t`.
    pub fn adjacent(&self, ch: usize, t: usize) -> impl Iterator<Item = usize> + '_ {
        let mut panel: Vec<usize> = self.typed[ch]
            .iter()
            .enumerate()
            .filter(|&(s, _)| s != t)
            .map(|(_, &v)| v)
            .collect();
        panel.sort_unstable();
        self.panels
            .get(&panel)
            .into_iter()
            .flatten()
            .copied()
            .filter(move |&d| d != ch)
    }

    pub fn is_adjacent(&self, a: usize, b: usize, t: usize) -> bool {
        a != b && (0..self.typed[a].len()).all(|s| s == t || self.typed[a][s] == self.typed[b][s])
    }
}

/// Coxeter matrix from the dihedral angles `π/m(s,t)` of the chambers,
/// required to agree across chambers.
pub(crate) fn assemble_coxeter(
    c: &MetricComplex,
    sys: &ChamberSystem,
) -> std::result::Result<CoxeterMatrix, Diagnosis> {
    let r = c.dimension() + 1;
    let mut m = vec![vec![1u32; r]; r];
    let mut set = vec![vec![false; r]; r];
    for (ch, typed) in sys.typed.iter().enumerate() {
        for s in 0..r {
            for t in s + 1..r {
                let mut face: Vec<usize> = (0..r)
                    .filter(|&u| u != s && u != t)
                    .map(|u| typed[u])
                    .collect();
                face.sort_unstable();
                let angle = dihedral_angle(c, ch, &face).map_err(|e| {
                    Diagnosis::new(Condition::EdgeLengthNonuniform, Witness::Text { detail: e.to_string() })
                })?;
                let Some(mst) = pi_over(angle).filter(|&x| x >= 2) else {
                    return Err(Diagnosis::new(
                        Condition::EdgeLengthNonuniform,
                        Witness::Text {
                            detail: format!(
                                "dihedral angle {angle} of chamber {:?} is not pi/m",
                                names(c, &c.top_cells()[ch])
                            ),
                        },
                    ));
                };
                if set[s][t] && m[s][t] != mst {
                    return Err(Diagnosis::new(
                        Condition::EdgeLengthNonuniform,
                        Witness::Text {
                            detail: format!(
                                "types {s},{t}: dihedral parameter {} elsewhere but {mst} in chamber {:?}",
                                m[s][t],
                                names(c, &c.top_cells()[ch])
                            ),
                        },
                    ));
                }
                set[s][t] = true;
                m[s][t] = mst;
                m[t][s] = mst;
            }
        }
    }
    CoxeterMatrix::new((0..r).map(|i| format!("s{i}")).collect(), m).map_err(|e| {
        Diagnosis::new(Condition::EdgeLengthNonuniform, Witness::Text { detail: e.to_string() })
    })
}

/// Result of the W-indexed gallery search.
pub(crate) struct GalleryApartments {
    /// `maps[a][w]` is the chamber indexed by group element `w`.
    pub maps: Vec<Vec<usize>>,
    pub exhaustive: bool,
}

/// Enumerates apartments as type-preserving maps `φ: W → chambers` with
/// `φ(ws)` `s`-adjacent to `φ(w)`, rooted at every chamber in turn.
pub(crate) fn gallery_apartments(
    sys: &ChamberSystem,
    group: &ReflectionGroup,
    n_chambers: usize,
    budget: usize,
) -> GalleryApartments {
    let order = group.order();
    let r = group.system().rank();
    let parent: Vec<(usize, usize)> = group
        .elements()
        .iter()
        .map(|el| match el.word.split_last() {
            Some((&s, rest)) => (group.element_of(rest), s),
            None => (0, 0),
        })
        .collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut maps = vec![];
    let mut steps = 0usize;
    let mut exhaustive = true;

    struct Ctx<'a> {
        sys: &'a ChamberSystem,
        group: &'a ReflectionGroup,
        parent: &'a [(usize, usize)],
        r: usize,
        order: usize,
        phi: Vec<usize>,
        used: Vec<bool>,
        steps: &'a mut usize,
        budget: usize,
        found: Vec<Vec<usize>>,
    }
    fn go(ctx: &mut Ctx, w: usize) -> bool {
        if w == ctx.order {
            ctx.found.push(ctx.phi.clone());
            return true;
        }
        *ctx.steps += 1;
        if *ctx.steps > ctx.budget {
            return false;
        }
        let (p, s) = ctx.parent[w];
        let cands: Vec<usize> = ctx.sys.adjacent(ctx.phi[p], s).collect();
        for x in cands {
            if ctx.used[x] {
                continue;
            }
            let consistent = (0..ctx.r).all(|t| {
                let wt = ctx.group.mul_gen(w, t);
                wt >= w || ctx.sys.is_adjacent(ctx.phi[wt], x, t)
            });
            if !consistent {
                continue;
            }
            ctx.phi[w] = x;
            ctx.used[x] = true;
            let ok = go(ctx, w + 1);
            ctx.used[x] = false;
            if !ok {
                return false;
            }
        }
        true
    }

    for root in 0..n_chambers {
        let mut ctx = Ctx {
            sys,
            group,
            parent: &parent,
            r,
            order,
            phi: vec![usize::MAX; order],
            used: vec![false; n_chambers],
            steps: &mut steps,
            budget,
            found: vec![],
        };
        ctx.phi[0] = root;
        ctx.used[root] = true;
        let ok = go(&mut ctx, 1);
        for phi in ctx.found {
            let mut key = phi.clone();
            key.sort_unstable();
            if seen.insert(key) {
                maps.push(phi);
            }
        }
        if !ok {
            exhaustive = false;
            break;
        }
    }
    GalleryApartments { maps, exhaustive }
}

/// Axiom (3): for apartments sharing a chamber, the type-preserving
/// isomorphism fixing that chamber fixes the whole intersection.
fn gallery_axiom3(sys: &ChamberSystem, group: &ReflectionGroup, maps: &[Vec<usize>]) -> bool {
    let order = group.order();
    let left = |a: usize, b: usize| {
        group.elements()[b].word.iter().fold(a, |w, &s| group.mul_gen(w, s))
    };
    let positions: Vec<BTreeMap<usize, usize>> = maps
        .iter()
        .map(|phi| phi.iter().enumerate().map(|(w, &ch)| (ch, w)).collect())
        .collect();
    let vertex_sets: Vec<BTreeSet<usize>> = maps
        .iter()
        .map(|phi| phi.iter().flat_map(|&ch| sys.typed[ch].iter().copied()).collect())
        .collect();
    for a in 0..maps.len() {
        for b in a + 1..maps.len() {
            let Some((&ch, &wa)) = positions[a].iter().find(|(ch, _)| positions[b].contains_key(ch))
            else {
                continue;
            };
            let wb = positions[b][&ch];
            for w in 0..order {
                let ca = maps[a][left(wa, w)];
                let cb = maps[b][left(wb, w)];
                for (t, &x) in sys.typed[ca].iter().enumerate() {
                    if vertex_sets[b].contains(&x) && sys.typed[cb][t] != x {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn all_faces(c: &MetricComplex) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    for k in 0..=c.dimension() {
        for f in c.faces(k) {
            let id = out.len();
            out.insert(f, id);
        }
    }
    out
}

/// Spherical recognition for `n ≥ 2` (delegating to the one-dimensional
/// case below that): panel counts, recursive vertex-link certificates, a
/// type function, the Coxeter matrix from dihedral angles, then apartments
/// by gallery search and the building axioms.
pub fn check_spherical(c: &MetricComplex, budgets: &Budgets) -> Result<Recognition> {
    if c.geometry() != Geometry::Spherical {
        return Err(Error::Geometry("check_spherical needs a spherical complex".into()));
    }
    c.ensure_valid()?;
    if c.dimension() < 2 {
        return recognize_any(c, budgets);
    }
    let n = c.dimension();
    if !c.is_connected() {
        return Ok(Err(Diagnosis::new(
            Condition::NotConnected,
            Witness::Components {
                components: c.components().iter().map(|comp| names(c, comp)).collect(),
            },
        )));
    }
    let none = BTreeSet::new();
    if let Some(d) = check_codim1(c, &none) {
        return Ok(Err(d));
    }
    let link_flags = match check_vertex_links(c, &none, budgets)? {
        Ok(f) => f,
        Err(d) => return Ok(Err(d)),
    };
    let sys = match ChamberSystem::build(c) {
        Ok(s) => s,
        Err(d) => return Ok(Err(d)),
    };
    let coxeter = match assemble_coxeter(c, &sys) {
        Ok(m) => m,
        Err(d) => return Ok(Err(d)),
    };
    if !coxeter.is_spherical() {
        return Ok(Err(Diagnosis::new(
            Condition::EdgeLengthNonuniform,
            Witness::Text { detail: format!("assembled Coxeter matrix {} is not spherical", coxeter.type_name()) },
        )));
    }

    let mut cert = BuildingCertificate::new(Geometry::Spherical, n, Verdict::Building);
    cert.flags.extend(link_flags.iter().filter(|f| *f == FLAG_GLOBAL_UNVERIFIED).cloned());
    let group = ReflectionGroup::generate(&coxeter, budgets.group).ok();
    if let Some(g) = &group {
        // chamber shape must be the fundamental chamber of the group
        let w = g.chamber_vertices();
        for typed in &sys.typed {
            for s in 0..=n {
                for t in s + 1..=n {
                    let want = Angle::rationalize(w[s].dot(&w[t]).clamp(-1.0, 1.0).acos());
                    let have = c.length(typed[s], typed[t]).expect("edge");
                    if !have.approx_eq(&want) {
                        return Ok(Err(Diagnosis::new(
                            Condition::EdgeLengthNonuniform,
                            Witness::Edges {
                                first: (c.name(typed[s]).into(), c.name(typed[t]).into(), have),
                                second: (format!("type s{s}"), format!("type s{t}"), want),
                            },
                        )));
                    }
                }
            }
        }
    }

    let n_ch = c.top_cells().len();
    let (maps, exhaustive) = match &group {
        Some(g) => {
            let ga = gallery_apartments(&sys, g, n_ch, budgets.apartments);
            (ga.maps, ga.exhaustive)
        }
        None => (vec![], false),
    };
    let faces = all_faces(c);
    let simplex_sets: Vec<Vec<usize>> = maps
        .iter()
        .map(|phi| {
            let mut s = BTreeSet::new();
            for &ch in phi {
                for k in 1..=n + 1 {
                    for_each_subset(&c.top_cells()[ch], k, &mut |f| {
                        s.insert(faces[f]);
                    });
                }
            }
            s.into_iter().collect()
        })
        .collect();
    let pairs = check_pairs(faces.len(), &simplex_sets, exhaustive, budgets);
    let axiom3 = group.as_ref().is_none_or(|g| gallery_axiom3(&sys, g, &maps));
    let axioms_ok = pairs.ok && axiom3;
    let list: Vec<Apartment> = maps
        .iter()
        .map(|phi| {
            let mut chambers = phi.clone();
            chambers.sort_unstable();
            let vertices: BTreeSet<usize> =
                phi.iter().flat_map(|&ch| sys.typed[ch].iter().copied()).collect();
            Apartment { chambers, vertices: vertices.into_iter().collect() }
        })
        .collect();
    cert.apartments = ApartmentSummary { count: list.len(), exhaustive, list };
    cert.axioms = Some(AxiomReport {
        axiom2: pairs.ok,
        axiom3,
        pairs_checked: pairs.checked,
        sampled: pairs.sampled,
    });

    if exhaustive && !axioms_ok {
        let pi1 = simple_connectivity(c, budgets);
        if let Pi1::Nontrivial { loop_vertices, .. } = &pi1 {
            return Ok(Err(Diagnosis::new(
                Condition::NotSimplyConnected,
                Witness::Loop { vertices: loop_vertices.clone() },
            )));
        }
        let id_to_face: BTreeMap<usize, &Vec<usize>> = faces.iter().map(|(f, &i)| (i, f)).collect();
        let witness = match pairs.failing {
            Some((x, y)) => Witness::Simplices {
                first: names(c, id_to_face[&x]),
                second: names(c, id_to_face[&y]),
            },
            None => Witness::Text { detail: "overlapping apartments are not compatible".into() },
        };
        return Ok(Err(Diagnosis::new(Condition::ApartmentAxiom, witness)));
    }
    if !exhaustive {
        cert.flags.push(FLAG_SAMPLED.into());
        let pi1 = simple_connectivity(c, budgets);
        match (&pi1, n) {
            (Pi1::Nontrivial { loop_vertices, .. }, _) => {
                return Ok(Err(Diagnosis::new(
                    Condition::NotSimplyConnected,
                    Witness::Loop { vertices: loop_vertices.clone() },
                )))
            }
            (Pi1::Unknown { .. }, 3..) => {
                return Ok(Err(Diagnosis::new(
                    Condition::UnknownPi1,
                    Witness::Text { detail: "presentation did not simplify".into() },
                )))
            }
            (Pi1::Trivial, 3..) => {}
            _ => cert.flags.push(FLAG_GLOBAL_UNVERIFIED.into()),
        }
        cert.pi1 = Some(pi1);
    }

    let thickness = c
        .faces(n - 1)
        .iter()
        .map(|f| c.coface_count(f))
        .min()
        .unwrap_or(0);
    cert.thickness = Some(thickness);
    cert.verdict = if thickness >= 3 {
        Verdict::ThickBuilding
    } else if exhaustive && cert.apartments.count == 1 && cert.apartments.list[0].chambers.len() == n_ch {
        Verdict::ThinBuilding
    } else if let Some(s) = crate::decompose::suspension_factor(c) {
        cert.suspension = Some(SuspensionInfo {
            poles: vec![s.poles.0.clone(), s.poles.1.clone()],
            base: s.base.vertex_names().to_vec(),
        });
        Verdict::Suspension
    } else {
        Verdict::Building
    };
    cert.set_coxeter(coxeter);
    cert.vertex_types = Some(sys.types);
    Ok(Ok(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;

    fn octahedron() -> MetricComplex {
        let s = MetricComplex::sphere0;
        s("x+", "x-").join(&s("y+", "y-")).unwrap().join(&s("z+", "z-")).unwrap()
    }

    fn heawood() -> MetricComplex {
        let mut b = ComplexBuilder::new(Geometry::Spherical, 1);
        for l in 0..7 {
            for d in [0, 1, 3] {
                let (p, q) = (format!("p{}", (l + d) % 7), format!("l{l}"));
                b.cell_with(&[&p, &q], |_, _| Angle::pi_frac(1, 3)).unwrap();
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn octahedron_is_thin() {
        let c = check_spherical(&octahedron(), &Budgets::default()).unwrap().unwrap();
        assert_eq!(c.verdict, Verdict::ThinBuilding);
        assert_eq!(c.coxeter_type.as_deref(), Some("A1xA1xA1"));
        assert_eq!(c.apartments.count, 1);
        assert_eq!(c.thickness, Some(2));
        assert!(c.flags.is_empty());
    }

    #[test]
    fn suspended_heawood_has_28_apartments() {
        let x = heawood().suspension().unwrap();
        let c = check_spherical(&x, &Budgets::default()).unwrap().unwrap();
        assert_eq!(c.verdict, Verdict::Suspension);
        assert_eq!(c.coxeter_type.as_deref(), Some("A1xA2"));
        assert_eq!(c.apartments.count, 28);
        assert!(c.apartments.exhaustive);
        let ax = c.axioms.unwrap();
        assert!(ax.axiom2 && ax.axiom3);
        assert!(c.flags.is_empty());
    }

    #[test]
    fn punctured_octahedron_fails_codim1() {
        let o = octahedron();
        let keep: Vec<usize> = (1..o.top_cells().len()).collect();
        let p = o.subcomplex(&keep).unwrap();
        let d = check_spherical(&p, &Budgets::default()).unwrap().unwrap_err();
        assert_eq!(d.condition, Condition::Codim1CellCount);
    }

    #[test]
    fn coxeter_complexes_are_thin() {
        for name in ["A3", "B3", "A1xA2", "H3"] {
            let m = CoxeterMatrix::named(name).unwrap().coxeter_complex().unwrap();
            let c = check_spherical(&m.complex, &Budgets::default()).unwrap().unwrap();
            assert_eq!(c.verdict, Verdict::ThinBuilding, "{name}");
            assert_eq!(c.apartments.count, 1, "{name}");
            assert!(c.coxeter.unwrap().isomorphic(&CoxeterMatrix::named(name).unwrap()));
        }
    }

    #[test]
    fn dihedral_angle_of_right_triangle() {
        let o = octahedron();
        let face = vec![o.top_cells()[0][0]];
        let a = dihedral_angle(&o, 0, &face).unwrap();
        assert_eq!(a.as_pi_frac(), Some((1, 2)));
    }
}
