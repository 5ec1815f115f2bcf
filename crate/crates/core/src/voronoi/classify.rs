//! Congruence classes of faces.
//!
//! Orbits are merged into classes by the key (dimension, vertex count,
//! multiset of child classes, squared volume). Within a class the traces
//! `tr U` and `tr U²` must agree as well; a disagreement means the key is too
//! coarse for this lattice and is reported as an error.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::Rational;
use crate::moments::MomentRecord;

use super::faces::FaceLattice;

/// One congruence class of faces of a fixed dimension.
#[derive(Clone, Debug, Serialize)]
pub struct FaceClass {
    pub dim: usize,
    /// 1-based label in order of decreasing face count.
    pub label: usize,
    pub orbits: Vec<u32>,
    pub total: usize,
    pub vertex_count: usize,
    /// `(child class label, multiplicity)` sorted by label.
    pub children: Vec<(usize, usize)>,
    pub volume_squared: Rational,
}

impl FaceClass {
    /// Display name such as `F_3^2`.
    pub fn name(&self) -> String {
        format!("F_{}^{}", self.dim, self.label)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// `classes[d]` ordered by label.
    pub classes: Vec<Vec<FaceClass>>,
    /// `class_of[d][orbit]` is the index into `classes[d]`.
    pub class_of: Vec<Vec<usize>>,
}

impl Classification {
    pub fn class_counts(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn total_classes(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}

type Key = (usize, Vec<(usize, usize)>, Rational);

/// Assigns classes bottom-up so that child labels are final when used.
pub fn classify_faces(lattice: &FaceLattice, records: &[Vec<MomentRecord>]) -> Result<Classification> {
    let mut classes: Vec<Vec<FaceClass>> = Vec::with_capacity(lattice.dim + 1);
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(lattice.dim + 1);
    for (d, level) in lattice.levels.iter().enumerate() {
        let mut groups: BTreeMap<Key, Vec<u32>> = BTreeMap::new();
        for (i, o) in level.iter().enumerate() {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            if d > 0 {
                for c in &o.children {
                    let cls = &classes[d - 1][class_of[d - 1][c.orbit as usize]];
                    *counts.entry(cls.label).or_default() += 1;
                }
            }
            let key = (o.vertices.len(), counts.into_iter().collect(), records[d][i].volume_squared());
            groups.entry(key).or_default().push(i as u32);
        }
        let mut list: Vec<FaceClass> = groups
            .into_iter()
            .map(|((vertex_count, children, volume_squared), orbits)| {
                let first = &records[d][orbits[0] as usize];
                for &o in &orbits[1..] {
                    let r = &records[d][o as usize];
                    if r.trace_squared() != first.trace_squared() || r.trace_of_square() != first.trace_of_square() {
                        return Err(LamiqError::Classification(format!(
                            "{d}-faces with equal keys have different second moments (orbits {} and {o})",
                            orbits[0]
                        )));
                    }
                }
                Ok(FaceClass {
                    dim: d,
                    label: 0,
                    total: orbits.iter().map(|&o| level[o as usize].size).sum(),
                    orbits,
                    vertex_count,
                    children,
                    volume_squared,
                })
            })
            .collect::<Result<_>>()?;
        // Stable sort keeps the key order among classes of equal size.
        list.sort_by(|a, b| b.total.cmp(&a.total));
        let mut of = vec![0usize; level.len()];
        for (k, c) in list.iter_mut().enumerate() {
            c.label = k + 1;
            for &o in &c.orbits {
                of[o as usize] = k;
            }
        }
        classes.push(list);
        class_of.push(of);
    }
    Ok(Classification { classes, class_of })
}
