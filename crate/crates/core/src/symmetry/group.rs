//! Groups of signed permutations preserving a lattice.

use serde::{Deserialize, Serialize};

use crate::error::{LamiqError, Result};
use crate::lattice::GeneratorMatrix;

use super::signed_perm::SignedPerm;

/// Generators of an origin-preserving symmetry group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub generators: Vec<SignedPerm>,
    pub claimed_order: Option<u64>,
}

impl GroupSpec {
    pub fn new(generators: Vec<SignedPerm>, claimed_order: Option<u64>) -> Result<Self> {
        if generators.is_empty() {
            return Err(LamiqError::InvalidInput("a group needs at least one generator".into()));
        }
        let n = generators[0].dim();
        if generators.iter().any(|g| g.dim() != n) {
            return Err(LamiqError::InvalidInput("generators act on different dimensions".into()));
        }
        Ok(GroupSpec {
            generators,
            claimed_order,
        })
    }

    /// The trivial group.
    pub fn trivial(n: usize) -> Self {
        GroupSpec {
            generators: vec![SignedPerm::identity(n)],
            claimed_order: Some(1),
        }
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// Checks that every generator maps each basis row to a lattice point.
    pub fn validate_for(&self, basis: &GeneratorMatrix) -> Result<()> {
        if self.dim() != basis.dim() {
            return Err(LamiqError::InvalidInput(format!(
                "group acts in dimension {} but the lattice has dimension {}",
                self.dim(),
                basis.dim()
            )));
        }
        let inv = basis
            .matrix()
            .inverse()
            .ok_or_else(|| LamiqError::InvalidInput("singular generator".into()))?;
        for g in &self.generators {
            for i in 0..basis.dim() {
                let img = g.apply(&basis.row(i));
                if !inv.vec_mul(&img).iter().all(|x| x.is_integer()) {
                    return Err(LamiqError::InvalidInput(format!(
                        "generator [{g}] does not preserve the lattice (row {} maps off it)",
                        i + 1
                    )));
                }
            }
        }
        if let Some(claimed) = self.claimed_order {
            let order = self.order();
            if order != claimed as u128 {
                return Err(LamiqError::InvalidInput(format!(
                    "generators give a group of order {order}, not the claimed {claimed}"
                )));
            }
        }
        Ok(())
    }

    /// Exact group order by Schreier–Sims on the `2n` signed unit vectors.
    pub fn order(&self) -> u128 {
        let gens: Vec<Vec<u16>> = self.generators.iter().map(|g| g.signed_point_action()).collect();
        schreier_sims_order(2 * self.dim(), &gens)
    }
}

/// The generic AE₉ group `R × P ⋉ S` of order 10 321 920: negate `x₉`; swap
/// `x₁, x₂`; the 8-cycle on `x₁…x₈`; negate `x₁, x₂`.
pub fn ae9_group() -> GroupSpec {
    GroupSpec {
        generators: vec![
            SignedPerm::negation(9, &[8]),
            SignedPerm::transposition(9, 0, 1),
            SignedPerm::cycle(9, &[0, 1, 2, 3, 4, 5, 6, 7]),
            SignedPerm::negation(9, &[0, 1]),
        ],
        claimed_order: Some(10_321_920),
    }
}

type Perm = Vec<u16>;

fn compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn invert(a: &[u16]) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

fn is_identity(a: &[u16]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x as usize)
}

struct Level {
    beta: usize,
    gens: Vec<Perm>,
    /// `trans[p]` maps `beta` to `p`.
    trans: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(beta: usize, degree: usize) -> Self {
        let mut trans = vec![None; degree];
        trans[beta] = Some((0..degree as u16).collect());
        Level {
            beta,
            gens: Vec::new(),
            trans,
            orbit: vec![beta],
        }
    }
}

/// Extends the transversal of level `i` under all generators of levels `≥ i`.
fn extend_orbit(levels: &mut [Level], i: usize) {
    let gens: Vec<Perm> = levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect();
    let lvl = &mut levels[i];
    let mut k = 0;
    while k < lvl.orbit.len() {
        let p = lvl.orbit[k];
        let up = lvl.trans[p].clone().expect("orbit point has a transversal");
        for g in &gens {
            let q = g[p] as usize;
            if lvl.trans[q].is_none() {
                lvl.trans[q] = Some(compose(g, &up));
                lvl.orbit.push(q);
            }
        }
        k += 1;
    }
}

fn sift(levels: &[Level], from: usize, mut g: Perm) -> (Perm, usize) {
    for (j, lvl) in levels.iter().enumerate().skip(from) {
        let b = g[lvl.beta] as usize;
        match &lvl.trans[b] {
            None => return (g, j),
            Some(u) => g = compose(&invert(u), &g),
        }
    }
    (g, levels.len())
}

fn schreier_sims_order(degree: usize, gens: &[Perm]) -> u128 {
    let mut levels: Vec<Level> = Vec::new();
    for g in gens {
        if is_identity(g) {
            continue;
        }
        let (h, j) = sift(&levels, 0, g.clone());
        if !is_identity(&h) {
            add_residue(&mut levels, j, h, degree);
        }
    }
    'restart: loop {
        for i in (0..levels.len()).rev() {
            extend_orbit(&mut levels, i);
            let gens: Vec<Perm> = levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect();
            let orbit = levels[i].orbit.clone();
            for &p in &orbit {
                let up = levels[i].trans[p].clone().expect("orbit point");
                for s in &gens {
                    let q = s[p] as usize;
                    let uq = levels[i].trans[q].clone().expect("orbit closed");
                    let schreier = compose(&invert(&uq), &compose(s, &up));
                    let (h, j) = sift(&levels, i + 1, schreier);
                    if !is_identity(&h) {
                        add_residue(&mut levels, j, h, degree);
                        continue 'restart;
                    }
                }
            }
        }
        break;
    }
    levels.iter().map(|l| l.orbit.len() as u128).product()
}

fn add_residue(levels: &mut Vec<Level>, j: usize, h: Perm, degree: usize) {
    if j == levels.len() {
        let moved = h
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
            .expect("nonidentity permutation moves a point");
        levels.push(Level::new(moved, degree));
    }
    levels[j].gens.push(h);
    for i in (0..=j).rev() {
        extend_orbit(levels, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::lattice::ae9;

    #[test]
    fn ae9_group_order_and_validity() {
        let g = ae9_group();
        assert_eq!(g.order(), 10_321_920);
        for a in [Rational::new(4, 7), Rational::new(1, 3), Rational::new(3, 2)] {
            g.validate_for(&ae9(&a).unwrap()).unwrap();
        }
    }

    #[test]
    fn hyperoctahedral_orders() {
        for n in 1..=6usize {
            let mut gens = vec![SignedPerm::negation(n, &[0])];
            if n > 1 {
                gens.push(SignedPerm::transposition(n, 0, 1));
                gens.push(SignedPerm::cycle(n, &(0..n).collect::<Vec<_>>()));
            }
            let expect: u128 = (1..=n as u128).product::<u128>() << n;
            assert_eq!(GroupSpec::new(gens, None).unwrap().order(), expect);
        }
    }

    #[test]
    fn rejects_non_symmetry() {
        // Swapping x₁ and x₉ does not preserve AE₉.
        let bad = GroupSpec::new(vec![SignedPerm::transposition(9, 0, 8)], None).unwrap();
        assert!(bad.validate_for(&ae9(&Rational::new(4, 7)).unwrap()).is_err());
        // A single sign flip of x₁ does not preserve D₈ layers.
        let bad = GroupSpec::new(vec![SignedPerm::negation(9, &[0])], None).unwrap();
        assert!(bad.validate_for(&ae9(&Rational::new(4, 7)).unwrap()).is_err());
    }
}
