//! Face lattice of a Voronoi cell, built top-down with orbit reduction.
//!
//! Faces are sorted vertex-index sets. Only one representative per group
//! orbit is expanded; each child set is looked up in a hash table holding the
//! complete level below, and a child not yet seen has its whole orbit
//! generated from the induced action on vertex indices.

use std::hash::{BuildHasher, Hash, Hasher};

use hashbrown::HashTable;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::factor::is_probable_prime;
use crate::exactnum::QVector;
use crate::symmetry::{GroupSpec, SignedPerm, VertexAction};

use super::vertices::VertexSet;

/// One instance of a child face of an orbit representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChildLink {
    /// Orbit index in the level below.
    pub orbit: u32,
    /// Carries the child orbit's representative onto this instance.
    pub transform: SignedPerm,
}

/// A group orbit of faces of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceOrbit {
    pub dim: usize,
    /// Vertex indices of the lexicographically smallest member.
    pub vertices: Vec<u32>,
    pub size: usize,
    /// All facets of the representative, ordered by vertex set.
    pub children: Vec<ChildLink>,
}

/// Orbit representatives per dimension, `levels[d]` for `d = 0..=n`.
#[derive(Clone, Debug, Serialize)]
pub struct FaceLattice {
    pub dim: usize,
    pub levels: Vec<Vec<FaceOrbit>>,
}

impl FaceLattice {
    /// Number of faces of each dimension.
    pub fn totals(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.iter().map(|o| o.size).sum()).collect()
    }

    pub fn orbit_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// `Σ_{d<n} (−1)^d N_d`, which equals `1 − (−1)^n` for a polytope.
    pub fn euler_sum(&self) -> i64 {
        self.totals()[..self.dim]
            .iter()
            .enumerate()
            .map(|(d, &t)| if d % 2 == 0 { t as i64 } else { -(t as i64) })
            .sum()
    }
}

/// Exact affine rank of vertex subsets by multi-modular elimination.
///
/// Coordinates are scaled to integers and reduced modulo enough 61-bit primes
/// that their product exceeds the Hadamard bound on every minor; the largest
/// rank over these primes is then the rank over the rationals.
pub struct RankOracle {
    n: usize,
    primes: Vec<u64>,
    /// `residues[k][v * n + i]` is coordinate `i` of vertex `v` modulo `primes[k]`.
    residues: Vec<Vec<u64>>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

impl RankOracle {
    pub fn new(coords: &[QVector]) -> Self {
        let n = coords.first().map_or(0, |v| v.len());
        let mut lcm = BigInt::one();
        for v in coords {
            for x in v.iter() {
                lcm = lcm.lcm(&x.denom());
            }
        }
        let ints: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|v| v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
            .collect();
        let max_bits = ints.iter().flatten().map(|x| x.bits()).max().unwrap_or(0) as f64;
        // Rows are differences of two vertices, so entries have at most max_bits + 1 bits.
        let row_bits = max_bits + 1.0 + 0.5 * (n.max(1) as f64).log2();
        let bound_bits = n as f64 * row_bits + 1.0;
        let count = ((bound_bits / 60.0).ceil() as usize).max(1);
        let mut primes = Vec::with_capacity(count);
        let mut c: u64 = (1 << 61) - 1;
        while primes.len() < count {
            if is_probable_prime(&BigUint::from(c)) {
                primes.push(c);
            }
            c -= 2;
        }
        let residues = primes
            .iter()
            .map(|&p| {
                let pb = BigInt::from(p);
                ints.iter()
                    .flatten()
                    .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits"))
                    .collect()
            })
            .collect();
        RankOracle { n, primes, residues }
    }

    fn rank_mod(&self, k: usize, set: &[u32]) -> usize {
        let p = self.primes[k];
        let res = &self.residues[k];
        let n = self.n;
        let base = &res[set[0] as usize * n..set[0] as usize * n + n];
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut row = vec![0u64; n];
        for &v in &set[1..] {
            let r = &res[v as usize * n..v as usize * n + n];
            for i in 0..n {
                row[i] = (r[i] + p - base[i]) % p;
            }
            for (col, pr) in &pivots {
                let f = row[*col];
                if f != 0 {
                    for i in 0..n {
                        row[i] = (row[i] + p - mulmod(f, pr[i], p)) % p;
                    }
                }
            }
            if let Some(col) = row.iter().position(|&x| x != 0) {
                let inv = powmod(row[col], p - 2, p);
                let pr: Vec<u64> = row.iter().map(|&x| mulmod(x, inv, p)).collect();
                pivots.push((col, pr));
                if pivots.len() == n {
                    break;
                }
            }
        }
        pivots.len()
    }

    /// Affine rank of the vertices in `set` (nonempty).
    pub fn affine_rank(&self, set: &[u32]) -> usize {
        let mut r = self.rank_mod(0, set);
        for k in 1..self.primes.len() {
            if r == self.n || r + 1 >= set.len() {
                break;
            }
            r = r.max(self.rank_mod(k, set));
        }
        r
    }

    /// Whether the rank is at least `target`, stopping at the first prime that shows it.
    pub fn rank_at_least(&self, set: &[u32], target: usize) -> (bool, usize) {
        let mut best = 0;
        for k in 0..self.primes.len() {
            let r = self.rank_mod(k, set);
            best = best.max(r);
            if best >= target {
                return (true, best);
            }
        }
        (false, best)
    }
}

/// Every face of one dimension, with orbit membership.
struct Store {
    data: Vec<u32>,
    offs: Vec<usize>,
    orbit: Vec<u32>,
    transform: Vec<SignedPerm>,
    table: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl Store {
    fn new() -> Self {
        Store {
            data: Vec::new(),
            offs: vec![0],
            orbit: Vec::new(),
            transform: Vec::new(),
            table: HashTable::new(),
            hasher: FxBuildHasher,
        }
    }

    fn len(&self) -> usize {
        self.orbit.len()
    }

    fn get(&self, id: u32) -> &[u32] {
        &self.data[self.offs[id as usize]..self.offs[id as usize + 1]]
    }

    fn hash(&self, set: &[u32]) -> u64 {
        let mut h = self.hasher.build_hasher();
        set.hash(&mut h);
        h.finish()
    }

    fn find(&self, set: &[u32]) -> Option<u32> {
        let h = self.hash(set);
        self.table.find(h, |&id| self.get(id) == set).copied()
    }

    fn insert(&mut self, set: &[u32], orbit: u32, t: SignedPerm) -> u32 {
        let id = self.len() as u32;
        self.data.extend_from_slice(set);
        self.offs.push(self.data.len());
        self.orbit.push(orbit);
        self.transform.push(t);
        let h = self.hash(set);
        let Store {
            table,
            data,
            offs,
            hasher,
            ..
        } = self;
        table.insert_unique(h, id, |&k| {
            let mut hh = hasher.build_hasher();
            data[offs[k as usize]..offs[k as usize + 1]].hash(&mut hh);
            hh.finish()
        });
        id
    }
}

/// Facet vertex sets of a representative: group its vertices by tight
/// facet, keep the groups of affine rank `d − 1`.
fn children_of(
    rep: &[u32],
    d: usize,
    vs: &VertexSet,
    facet_count: usize,
    oracle: &RankOracle,
) -> Result<Vec<Vec<u32>>> {
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); facet_count];
    for &v in rep {
        for &j in &vs.active[v as usize] {
            buckets[j as usize].push(v);
        }
    }
    let mut cands: Vec<Vec<u32>> = buckets
        .into_iter()
        .filter(|b| b.len() >= d && b.len() < rep.len())
        .collect();
    cands.sort_unstable();
    cands.dedup();
    let mut out = Vec::new();
    for c in cands {
        let (ok, r) = oracle.rank_at_least(&c, d - 1);
        if ok {
            if r > d - 1 {
                return Err(LamiqError::Geometry(format!(
                    "a facet intersection of a {d}-face has affine rank {r}"
                )));
            }
            out.push(c);
        }
    }
    Ok(out)
}

/// Generates the orbit of `seed`, inserting every member into `store`.
/// Returns the id of the lexicographically smallest member and the orbit size.
fn expand_orbit(
    store: &mut Store,
    seed: &[u32],
    orbit_id: u32,
    action: &VertexAction,
    gens: &[SignedPerm],
    cap: usize,
) -> Result<(u32, usize)> {
    let n = gens[0].dim();
    let first = store.insert(seed, orbit_id, SignedPerm::identity(n));
    let mut min_id = first;
    let mut queue = vec![first];
    let mut head = 0;
    let mut img = Vec::new();
    let mut cur = Vec::new();
    while head < queue.len() {
        let k = queue[head];
        head += 1;
        cur.clear();
        cur.extend_from_slice(store.get(k));
        for gi in 0..action.perms.len() {
            action.apply_set(gi, &cur, &mut img);
            if store.find(&img).is_some() {
                continue;
            }
            if queue.len() >= cap {
                return Err(LamiqError::Resource(format!("face orbit exceeds the cap of {cap}")));
            }
            let t = gens[gi].compose(&store.transform[k as usize]);
            let id = store.insert(&img, orbit_id, t);
            if img.as_slice() < store.get(min_id) {
                min_id = id;
            }
            queue.push(id);
        }
    }
    Ok((min_id, queue.len()))
}

/// Builds the face lattice from a complete vertex set.
pub fn build_face_lattice(vs: &VertexSet, facet_count: usize, group: &GroupSpec, cap: usize) -> Result<FaceLattice> {
    let n = group.dim();
    let action = VertexAction::new(&vs.coords, group)?;
    let oracle = RankOracle::new(&vs.coords);
    let mut levels: Vec<Vec<FaceOrbit>> = vec![Vec::new(); n + 1];
    levels[n] = vec![FaceOrbit {
        dim: n,
        vertices: (0..vs.len() as u32).collect(),
        size: 1,
        children: Vec::new(),
    }];
    for d in (2..=n).rev() {
        let reps: Vec<Vec<u32>> = levels[d].iter().map(|o| o.vertices.clone()).collect();
        let kids: Vec<Vec<Vec<u32>>> = reps
            .par_iter()
            .map(|r| children_of(r, d, vs, facet_count, &oracle))
            .collect::<Result<_>>()?;
        let mut store = Store::new();
        let mut found: Vec<(u32, usize)> = Vec::new();
        let mut links: Vec<Vec<(u32, SignedPerm)>> = Vec::with_capacity(reps.len());
        for ks in &kids {
            let mut l = Vec::with_capacity(ks.len());
            for c in ks {
                let id = match store.find(c) {
                    Some(id) => id,
                    None => {
                        let orbit_id = found.len() as u32;
                        found.push(expand_orbit(&mut store, c, orbit_id, &action, &group.generators, cap)?);
                        store.find(c).expect("just inserted")
                    }
                };
                l.push((store.orbit[id as usize], store.transform[id as usize]));
            }
            links.push(l);
        }
        // Canonical order: orbits sorted by their smallest member.
        let mut order: Vec<u32> = (0..found.len() as u32).collect();
        order.sort_by(|&x, &y| store.get(found[x as usize].0).cmp(store.get(found[y as usize].0)));
        let mut new_id = vec![0u32; found.len()];
        for (k, &o) in order.iter().enumerate() {
            new_id[o as usize] = k as u32;
        }
        let rebase: Vec<SignedPerm> = found.iter().map(|&(m, _)| store.transform[m as usize].inverse()).collect();
        for (o, l) in levels[d].iter_mut().zip(links) {
            o.children = l
                .into_iter()
                .map(|(orb, t)| ChildLink {
                    orbit: new_id[orb as usize],
                    transform: t.compose(&rebase[orb as usize]),
                })
                .collect();
        }
        levels[d - 1] = order
            .iter()
            .map(|&o| FaceOrbit {
                dim: d - 1,
                vertices: store.get(found[o as usize].0).to_vec(),
                size: found[o as usize].1,
                children: Vec::new(),
            })
            .collect();
    }
    // Edges have their two endpoints as children; vertices come from the vertex orbits.
    for o in levels[1].iter_mut() {
        o.children = o
            .vertices
            .iter()
            .map(|&v| ChildLink {
                orbit: vs.orbit_of[v as usize],
                transform: vs.transform[v as usize],
            })
            .collect();
    }
    levels[0] = vs
        .orbits
        .iter()
        .map(|o| FaceOrbit {
            dim: 0,
            vertices: vec![o.rep],
            size: o.size,
            children: Vec::new(),
        })
        .collect();
    Ok(FaceLattice { dim: n, levels })
}
