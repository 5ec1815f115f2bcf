//! Facets and exact vertex enumeration of a Voronoi cell.

use std::collections::VecDeque;

use hashbrown::HashMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::{solve_linear, QMatrix, QVector, Rational, SolveResult};
use crate::lattice::RelevantVectorSet;
use crate::symmetry::{GroupSpec, SignedPerm};

use super::cone::extreme_rays;
use super::lp::{maximize, Constraint};

/// The half-space `x·m ≤ m·m/2` of one relevant vector `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetSpec {
    /// Integer coordinates of `m` in the generating basis.
    pub coeffs: Vec<i64>,
    pub normal: QVector,
    pub rhs: Rational,
}

impl Constraint for FacetSpec {
    fn normal(&self) -> &QVector {
        &self.normal
    }
    fn bound(&self) -> &Rational {
        &self.rhs
    }
}

pub fn facets_from_relevant(rv: &RelevantVectorSet) -> Vec<FacetSpec> {
    rv.vectors
        .iter()
        .map(|v| FacetSpec {
            coeffs: v.coeffs.clone(),
            normal: v.vector.clone(),
            rhs: v.rhs(),
        })
        .collect()
}

/// Permutations of facet indices induced by the group generators.
#[derive(Clone, Debug)]
pub struct FacetAction {
    pub perms: Vec<Vec<u32>>,
}

impl FacetAction {
    pub fn new(facets: &[FacetSpec], group: &GroupSpec) -> Result<Self> {
        let index: HashMap<&QVector, u32> = facets.iter().enumerate().map(|(i, f)| (&f.normal, i as u32)).collect();
        let mut perms = Vec::new();
        for g in &group.generators {
            let p = facets
                .iter()
                .map(|f| {
                    index.get(&g.apply(&f.normal)).copied().ok_or_else(|| {
                        LamiqError::InvalidInput(format!("generator [{g}] does not permute the relevant vectors"))
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            perms.push(p);
        }
        Ok(FacetAction { perms })
    }

    /// Index of `g·facet` for an arbitrary group element, by lookup.
    pub fn map_by(facets: &[FacetSpec], index: &HashMap<QVector, u32>, g: &SignedPerm, j: u32) -> Option<u32> {
        index.get(&g.apply(&facets[j as usize].normal)).copied()
    }
}

/// Result of intersecting a set of facet planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexSolve {
    Vertex(QVector),
    /// The planes meet in a flat of positive dimension.
    Underdetermined { rank: usize },
    /// The planes have no common point.
    Inconsistent,
    /// The unique intersection point violates this facet.
    Infeasible { facet: usize },
}

/// Solves `x·mⱼ = mⱼ·mⱼ/2` over `active` and checks all other facets.
pub fn solve_vertex(facets: &[FacetSpec], active: &[usize]) -> VertexSolve {
    let Some(n) = facets.first().map(|f| f.normal.len()) else {
        return VertexSolve::Underdetermined { rank: 0 };
    };
    let a = QMatrix::from_rows(&active.iter().map(|&j| facets[j].normal.clone()).collect::<Vec<_>>());
    let b = QVector(active.iter().map(|&j| facets[j].rhs.clone()).collect());
    let a = if active.is_empty() { QMatrix::zeros(0, n) } else { a };
    match solve_linear(&a, &b) {
        SolveResult::Unique(x) => {
            for (j, f) in facets.iter().enumerate() {
                if f.normal.dot(&x) > f.rhs {
                    return VertexSolve::Infeasible { facet: j };
                }
            }
            VertexSolve::Vertex(x)
        }
        SolveResult::Underdetermined { rank } => VertexSolve::Underdetermined { rank },
        SolveResult::Inconsistent { .. } => VertexSolve::Inconsistent,
    }
}

/// Indices of the facets tight at `x`.
pub fn active_facets(facets: &[FacetSpec], x: &QVector) -> Vec<u32> {
    facets
        .iter()
        .enumerate()
        .filter(|(_, f)| f.normal.dot(x) == f.rhs)
        .map(|(j, _)| j as u32)
        .collect()
}

/// Indices of the vertices lying on `facet`.
pub fn facet_vertex_set(facet: &FacetSpec, vertices: &[QVector]) -> Vec<u32> {
    vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| facet.normal.dot(v) == facet.rhs)
        .map(|(i, _)| i as u32)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexOrbit {
    /// Index of the lexicographically smallest member.
    pub rep: u32,
    pub size: usize,
}

/// All vertices, sorted lexicographically, grouped into orbits.
#[derive(Clone, Debug, Serialize)]
pub struct VertexSet {
    pub coords: Vec<QVector>,
    /// Sorted indices of the tight facets of each vertex.
    pub active: Vec<Vec<u32>>,
    pub orbit_of: Vec<u32>,
    /// `coords[i] = transform[i]·coords[rep of orbit_of[i]]`.
    pub transform: Vec<SignedPerm>,
    /// Ordered by representative.
    pub orbits: Vec<VertexOrbit>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Builds the per-facet vertex lists from the active sets.
    pub fn facet_vertex_sets(&self, facet_count: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); facet_count];
        for (i, act) in self.active.iter().enumerate() {
            for &j in act {
                out[j as usize].push(i as u32);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationConfig {
    pub seed: u64,
    /// Consecutive draws without a new orbit before the random phase stops.
    pub saturation: usize,
    pub max_draws: usize,
    pub orbit_cap: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            seed: 0,
            saturation: 200,
            max_draws: 100_000,
            orbit_cap: crate::symmetry::DEFAULT_ORBIT_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EnumerationStats {
    pub draws: usize,
    /// Orbits first found by the random linear programs.
    pub lp_orbits: usize,
    /// Orbits first found by walking edges from known vertices.
    pub closure_orbits: usize,
}

struct Builder<'a> {
    facets: &'a [FacetSpec],
    group: &'a GroupSpec,
    action: FacetAction,
    cap: usize,
    index: HashMap<QVector, u32>,
    coords: Vec<QVector>,
    active: Vec<Vec<u32>>,
    orbit_of: Vec<u32>,
    transform: Vec<SignedPerm>,
    seeds: Vec<u32>,
}

impl Builder<'_> {
    fn add_orbit(&mut self, v: QVector) -> Result<()> {
        let n = v.len();
        let orbit_id = self.seeds.len() as u32;
        let first = self.coords.len() as u32;
        let act = active_facets(self.facets, &v);
        if act.len() < n {
            return Err(LamiqError::Geometry(format!("vertex {v:?} has only {} tight facets", act.len())));
        }
        self.push(v, act, orbit_id, SignedPerm::identity(n));
        self.seeds.push(first);
        let mut queue = VecDeque::from([first]);
        let mut size = 1usize;
        while let Some(k) = queue.pop_front() {
            for (gi, g) in self.group.generators.iter().enumerate() {
                let img = g.apply(&self.coords[k as usize]);
                if self.index.contains_key(&img) {
                    continue;
                }
                size += 1;
                if size > self.cap {
                    return Err(LamiqError::Resource(format!("vertex orbit exceeds the cap of {}", self.cap)));
                }
                let mut act: Vec<u32> = self.active[k as usize].iter().map(|&j| self.action.perms[gi][j as usize]).collect();
                act.sort_unstable();
                let t = g.compose(&self.transform[k as usize]);
                let id = self.push(img, act, orbit_id, t);
                queue.push_back(id);
            }
        }
        Ok(())
    }

    fn push(&mut self, v: QVector, act: Vec<u32>, orbit: u32, t: SignedPerm) -> u32 {
        let id = self.coords.len() as u32;
        self.index.insert(v.clone(), id);
        self.coords.push(v);
        self.active.push(act);
        self.orbit_of.push(orbit);
        self.transform.push(t);
        id
    }

    /// Neighbours of vertex `k` along every edge of the cell.
    fn neighbours(&self, k: u32) -> Vec<QVector> {
        let v = &self.coords[k as usize];
        let act = &self.active[k as usize];
        let rows: Vec<QVector> = act.iter().map(|&j| self.facets[j as usize].normal.clone()).collect();
        let mut out = Vec::new();
        for d in extreme_rays(&rows) {
            let mut best: Option<Rational> = None;
            for (j, f) in self.facets.iter().enumerate() {
                if act.binary_search(&(j as u32)).is_ok() {
                    continue;
                }
                let ad = f.normal.dot(&d);
                if ad.is_positive() {
                    let t = (&f.rhs - f.normal.dot(v)) / ad;
                    if best.as_ref().is_none_or(|b| t < *b) {
                        best = Some(t);
                    }
                }
            }
            if let Some(t) = best {
                let mut w = v.clone();
                w.axpy(&t, &d);
                out.push(w);
            }
        }
        out
    }
}

/// Enumerates all vertices of `{x : x·m ≤ m·m/2}`.
///
/// Random integer objectives are maximized until `saturation` consecutive
/// draws add no new orbit. Every orbit representative is then expanded along
/// all edges of the cell, which reaches any vertex missed by the random phase
/// because the edge graph of a polytope is connected.
pub fn enumerate_vertices(
    facets: &[FacetSpec],
    group: &GroupSpec,
    cfg: &EnumerationConfig,
) -> Result<(VertexSet, EnumerationStats)> {
    let n = group.dim();
    let mut b = Builder {
        facets,
        group,
        action: FacetAction::new(facets, group)?,
        cap: cfg.orbit_cap,
        index: HashMap::new(),
        coords: Vec::new(),
        active: Vec::new(),
        orbit_of: Vec::new(),
        transform: Vec::new(),
        seeds: Vec::new(),
    };
    let mut stats = EnumerationStats::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut quiet = 0usize;
    while quiet < cfg.saturation {
        if stats.draws >= cfg.max_draws {
            return Err(LamiqError::Resource(format!(
                "vertex set did not saturate within {} draws",
                cfg.max_draws
            )));
        }
        stats.draws += 1;
        let c = QVector((0..n).map(|_| Rational::from_int(rng.gen_range(-1_000_000..=1_000_000))).collect());
        let x = maximize(facets, &c)?.x;
        if b.index.contains_key(&x) {
            quiet += 1;
        } else {
            b.add_orbit(x)?;
            stats.lp_orbits += 1;
            quiet = 0;
        }
    }
    let mut next = 0;
    while next < b.seeds.len() {
        let seed = b.seeds[next];
        for w in b.neighbours(seed) {
            if !b.index.contains_key(&w) {
                b.add_orbit(w)?;
                stats.closure_orbits += 1;
            }
        }
        next += 1;
    }
    Ok((finish(b), stats))
}

/// Sorts vertices, picks lexicographically minimal representatives and
/// re-expresses every transform relative to them.
fn finish(b: Builder<'_>) -> VertexSet {
    let mut order: Vec<u32> = (0..b.coords.len() as u32).collect();
    order.sort_by(|&i, &j| b.coords[i as usize].cmp(&b.coords[j as usize]));
    let mut new_orbit = vec![u32::MAX; b.seeds.len()];
    let mut orbits: Vec<VertexOrbit> = Vec::new();
    let mut rep_old: Vec<u32> = Vec::new();
    for (pos, &old) in order.iter().enumerate() {
        let o = b.orbit_of[old as usize] as usize;
        if new_orbit[o] == u32::MAX {
            new_orbit[o] = orbits.len() as u32;
            orbits.push(VertexOrbit { rep: pos as u32, size: 0 });
            rep_old.push(old);
        }
        orbits[new_orbit[o] as usize].size += 1;
    }
    let mut coords = Vec::with_capacity(order.len());
    let mut active = Vec::with_capacity(order.len());
    let mut orbit_of = Vec::with_capacity(order.len());
    let mut transform = Vec::with_capacity(order.len());
    for &old in &order {
        let o = new_orbit[b.orbit_of[old as usize] as usize];
        let rep_t = &b.transform[rep_old[o as usize] as usize];
        coords.push(b.coords[old as usize].clone());
        active.push(b.active[old as usize].clone());
        orbit_of.push(o);
        transform.push(b.transform[old as usize].compose(&rep_t.inverse()));
    }
    VertexSet {
        coords,
        active,
        orbit_of,
        transform,
        orbits,
    }
}
