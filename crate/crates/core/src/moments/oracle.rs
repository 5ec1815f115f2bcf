//! Independent moment oracle for small cells: full face enumeration by
//! closing the facet vertex sets under intersection, then triangulation into
//! flag simplices with a vertex at the origin.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{LamiqError, Result};
use crate::exactnum::{QMatrix, QVector, Rational};

/// Volume and second-moment tensor about the barycenter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMoments {
    pub volume: Rational,
    pub tensor: QMatrix,
}

fn affine_rank(coords: &[QVector], set: &[usize]) -> usize {
    if set.len() < 2 {
        return 0;
    }
    let base = &coords[set[0]];
    QMatrix::from_rows(&set[1..].iter().map(|&i| coords[i].sub(base)).collect::<Vec<_>>()).rank()
}

fn factorial(k: usize) -> Rational {
    Rational::from_int((1..=k as i64).product())
}

/// Exact `(V, U^{μν})` of the cell `{x : x·m ≤ m·m/2}` with the given
/// vertices, containing the origin in its interior.
pub fn simplex_moment_oracle(vertices: &[QVector], normals: &[QVector]) -> Result<OracleMoments> {
    let n = vertices.first().map(|v| v.len()).ok_or_else(|| LamiqError::InvalidInput("no vertices".into()))?;
    if n > 5 {
        return Err(LamiqError::InvalidInput(format!("oracle limited to dimension 5, got {n}")));
    }
    // Faces keyed by vertex set, grouped by dimension.
    let mut faces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut frontier: BTreeSet<Vec<usize>> = BTreeSet::new();
    for m in normals {
        let rhs = &m.norm2() * &Rational::new(1, 2);
        let set: Vec<usize> = (0..vertices.len()).filter(|&i| m.dot(&vertices[i]) == rhs).collect();
        if affine_rank(vertices, &set) == n - 1 {
            frontier.insert(set);
        }
    }
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for f in &frontier {
            faces.insert(f.clone(), affine_rank(vertices, f));
        }
        let all: Vec<&Vec<usize>> = faces.keys().collect();
        for f in &frontier {
            for g in &all {
                let inter: Vec<usize> = f.iter().filter(|x| g.binary_search(x).is_ok()).copied().collect();
                if !inter.is_empty() && !faces.contains_key(&inter) {
                    next.insert(inter);
                }
            }
        }
        frontier = next;
    }
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for (f, d) in faces {
        by_dim[d].push(f);
    }
    let centroid = |f: &[usize]| {
        let mut c = QVector::zeros(n);
        for &i in f {
            c = c.add(&vertices[i]);
        }
        c.scale(&Rational::from_int(f.len() as i64).recip())
    };
    // Enumerate flags F_{n−1} ⊃ … ⊃ F_0 depth first.
    let mut volume = Rational::zero();
    let mut first = QVector::zeros(n);
    let mut second = QMatrix::zeros(n, n);
    let mut stack: Vec<(usize, Vec<usize>, Vec<QVector>)> =
        by_dim[n - 1].iter().map(|f| (n - 1, f.clone(), vec![centroid(f)])).collect();
    while let Some((d, f, pts)) = stack.pop() {
        if d == 0 {
            let m = QMatrix::from_rows(&pts);
            let vol = &m.determinant().abs() / &factorial(n);
            let mut sum = QVector::zeros(n);
            for p in &pts {
                sum = sum.add(p);
            }
            let k = &vol / &Rational::from_int(((n + 1) * (n + 2)) as i64);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = &sum[i] * &sum[j];
                    for p in &pts {
                        acc = &acc + &(&p[i] * &p[j]);
                    }
                    second[(i, j)] = &second[(i, j)] + &(&k * &acc);
                }
            }
            first.axpy(&(&vol / &Rational::from_int(n as i64 + 1)), &sum);
            volume = &volume + &vol;
            continue;
        }
        for g in &by_dim[d - 1] {
            if g.iter().all(|x| f.binary_search(x).is_ok()) {
                let mut p = pts.clone();
                p.push(centroid(g));
                stack.push((d - 1, g.clone(), p));
            }
        }
    }
    let b = first.scale(&volume.recip());
    let mut tensor = second;
    for i in 0..n {
        for j in 0..n {
            tensor[(i, j)] = &tensor[(i, j)] - &(&volume * &(&b[i] * &b[j]));
        }
    }
    Ok(OracleMoments { volume, tensor })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square() {
        let h = Rational::new(1, 2);
        let v: Vec<QVector> = [(-1, -1), (-1, 1), (1, -1), (1, 1)]
            .iter()
            .map(|&(a, b)| QVector(vec![&h * &Rational::from_int(a), &h * &Rational::from_int(b)]))
            .collect();
        let normals: Vec<QVector> = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|r| QVector::from_ints(r)).collect();
        let o = simplex_moment_oracle(&v, &normals).unwrap();
        assert_eq!(o.volume, Rational::one());
        assert_eq!(o.tensor, QMatrix::identity(2).scale(&Rational::new(1, 12)));
    }
}
