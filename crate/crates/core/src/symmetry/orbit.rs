//! Orbits, canonical forms and induced actions on vertex indices.

use std::collections::VecDeque;

use hashbrown::HashMap;

use crate::error::{LamiqError, Result};
use crate::exactnum::{QVector, Rational};

use super::group::GroupSpec;
use super::signed_perm::SignedPerm;

/// Default cap on orbit sizes.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// An orbit in breadth-first discovery order, with the group element
/// carrying the seed to each member.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub elements: Vec<QVector>,
    pub transforms: Vec<SignedPerm>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The lexicographically smallest member.
    pub fn canonical(&self) -> &QVector {
        self.elements.iter().min().expect("orbits are nonempty")
    }
}

/// Breadth-first closure of `seed` under the generators.
pub fn orbit(seed: &QVector, group: &GroupSpec, cap: usize) -> Result<Orbit> {
    let mut index: HashMap<QVector, usize> = HashMap::new();
    let mut elements = vec![seed.clone()];
    let mut transforms = vec![SignedPerm::identity(seed.len())];
    index.insert(seed.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in &group.generators {
            let img = g.apply(&elements[k]);
            if index.contains_key(&img) {
                continue;
            }
            if elements.len() >= cap {
                return Err(LamiqError::Resource(format!("orbit exceeds the cap of {cap} elements")));
            }
            index.insert(img.clone(), elements.len());
            transforms.push(g.compose(&transforms[k]));
            elements.push(img);
            queue.push_back(elements.len() - 1);
        }
    }
    Ok(Orbit { elements, transforms })
}

/// The lexicographically minimal member of the orbit of `v`.
pub fn canonical_form(v: &QVector, group: &GroupSpec, cap: usize) -> Result<QVector> {
    Ok(orbit(v, group, cap)?.canonical().clone())
}

/// Partitions `vectors` (a union of orbits) into orbits. Each entry is the
/// lexicographically smallest member and the member indices in input order;
/// entries are sorted by that representative.
pub fn partition_orbits(vectors: &[QVector], group: &GroupSpec, cap: usize) -> Result<Vec<(QVector, Vec<usize>)>> {
    let index: HashMap<&QVector, usize> = vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut seen = vec![false; vectors.len()];
    let mut out = Vec::new();
    for i in 0..vectors.len() {
        if seen[i] {
            continue;
        }
        let o = orbit(&vectors[i], group, cap)?;
        let mut members = Vec::with_capacity(o.len());
        for e in &o.elements {
            let j = *index.get(e).ok_or_else(|| {
                LamiqError::Geometry(format!("the image {e:?} of a listed vector is not listed"))
            })?;
            seen[j] = true;
            members.push(j);
        }
        members.sort_unstable();
        out.push((o.canonical().clone(), members));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Closed-form orbit size under the generic AE₉ group.
///
/// With `m₁…m_p` the multiplicities of the distinct absolute values among the
/// first eight coordinates, `m = min(7, #nonzero among them)` and `z = 1`
/// exactly when the ninth coordinate is nonzero, the size is
/// `2^{m+z}·8!/(m₁!…m_p!)`.
pub fn orbit_size_formula(v: &QVector) -> Result<u64> {
    if v.len() != 9 {
        return Err(LamiqError::InvalidInput(format!("expected a 9-vector, got dimension {}", v.len())));
    }
    let mut abs: Vec<Rational> = v[..8].iter().map(|x| x.abs()).collect();
    abs.sort();
    let mut denom: u64 = 1;
    let mut run = 1u64;
    for i in 1..=abs.len() {
        if i < abs.len() && abs[i] == abs[i - 1] {
            run += 1;
        } else {
            denom *= (1..=run).product::<u64>();
            run = 1;
        }
    }
    let nonzero = abs.iter().filter(|x| !x.is_zero()).count() as u32;
    let m = nonzero.min(7);
    let z = u32::from(!v[8].is_zero());
    Ok((1u64 << (m + z)) * 40_320 / denom)
}

/// Permutations of a fixed vertex list induced by each group generator.
#[derive(Clone, Debug)]
pub struct VertexAction {
    pub perms: Vec<Vec<u32>>,
}

impl VertexAction {
    /// Fails if some generator maps a vertex outside the list.
    pub fn new(vertices: &[QVector], group: &GroupSpec) -> Result<Self> {
        let index: HashMap<&QVector, u32> = vertices.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        let mut perms = Vec::with_capacity(group.generators.len());
        for g in &group.generators {
            let mut p = Vec::with_capacity(vertices.len());
            for v in vertices {
                let img = g.apply(v);
                let &j = index.get(&img).ok_or_else(|| {
                    LamiqError::Geometry(format!("generator [{g}] maps vertex {v:?} outside the vertex set"))
                })?;
                p.push(j);
            }
            perms.push(p);
        }
        Ok(VertexAction { perms })
    }

    /// Image of a sorted index set under generator `k`, sorted.
    pub fn apply_set(&self, k: usize, set: &[u32], out: &mut Vec<u32>) {
        out.clear();
        out.extend(set.iter().map(|&i| self.perms[k][i as usize]));
        out.sort_unstable();
    }
}
