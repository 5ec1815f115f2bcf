use lamiq::exactnum::{QVector, Rational};
use lamiq::lattice::{ae9, closest_points, relevant_vectors, ClosestPointSearcher, GeneratorMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Closest points of the AE₉ lattice by brute force over layers.
///
/// Layer `k` is `D₈ + k(½,…,½)` at height `k·a`. Within a layer the
/// coordinates are scanned one at a time in ordinary coordinates, pruning a
/// prefix once its squared distance exceeds the best total found so far.
fn ae9_brute_force(a: &Rational, x: &QVector) -> (Rational, Vec<QVector>) {
    let mut st = Brute { x: x.clone(), best: None, pts: Vec::new() };
    let r = 4i64;
    let kmin = ((x[8].to_f64() - r as f64) / a.to_f64()).floor() as i64 - 1;
    let kmax = ((x[8].to_f64() + r as f64) / a.to_f64()).ceil() as i64 + 1;
    for k in kmin..=kmax {
        let h = Rational::from_int(k) * a;
        let dz = (&h - &x[8]).square();
        let mut p = QVector::zeros(9);
        p[8] = h;
        st.scan(&mut p, 0, dz, &q(k, 2), 0);
    }
    let mut pts = st.pts;
    pts.sort();
    pts.dedup();
    (st.best.unwrap(), pts)
}

struct Brute {
    x: QVector,
    best: Option<Rational>,
    pts: Vec<QVector>,
}

impl Brute {
    fn scan(&mut self, p: &mut QVector, i: usize, partial: Rational, shift: &Rational, parity: i64) {
        if self.best.as_ref().is_some_and(|b| &partial > b) {
            return;
        }
        if i == 8 {
            if parity.rem_euclid(2) != 0 {
                return;
            }
            match &self.best {
                Some(b) if *b == partial => self.pts.push(p.clone()),
                _ => {
                    self.best = Some(partial);
                    self.pts = vec![p.clone()];
                }
            }
            return;
        }
        let c = (&self.x[i] - shift).to_f64();
        for z in (c.floor() as i64 - 4)..=(c.ceil() as i64 + 4) {
            p[i] = Rational::from_int(z) + shift;
            let d = &partial + (&p[i] - &self.x[i]).square();
            self.scan(p, i + 1, d, shift, parity + z);
        }
    }
}

#[test]
fn closest_points_agree_with_brute_force() {
    let a = q(4, 7);
    let b = ae9(&a).unwrap();
    let searcher = ClosestPointSearcher::new(&b);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..50 {
        // Half the targets are on a coarse grid so that ties actually occur.
        let den = if case % 2 == 0 { 4 } else { 1000 };
        let x = QVector((0..9).map(|_| q(rng.gen_range(-2 * den..=2 * den), den)).collect());
        let got = searcher.closest(&x);
        let (d, pts) = ae9_brute_force(&a, &x);
        assert_eq!(got.dist2, d, "distance at {x:?}");
        let mut got_pts: Vec<QVector> = got.coords.iter().map(|u| b.point(u)).collect();
        got_pts.sort();
        assert_eq!(got_pts, pts, "minimizers at {x:?}");
    }
}

#[test]
fn lattice_points_are_their_own_closest() {
    let b = ae9(&q(4, 7)).unwrap();
    let searcher = ClosestPointSearcher::new(&b);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let u: Vec<i64> = (0..9).map(|_| rng.gen_range(-3..=3)).collect();
        let got = searcher.closest(&b.point(&u));
        assert_eq!(got.coords, vec![u]);
        assert!(got.dist2.is_zero());
    }
}

#[test]
fn integer_lattice_rounding() {
    let z = GeneratorMatrix::identity(9);
    let x = QVector(vec![q(1, 5), q(-3, 10), q(0, 1), q(2, 5), q(-1, 5), q(1, 10), q(0, 1), q(1, 3), q(-2, 5)]);
    assert_eq!(closest_points(&z, &x).coords, vec![vec![0; 9]]);
}

fn norms(a: &Rational) -> [Rational; 3] {
    [a.square() + q(2, 1), q(2, 1), a.square() * q(4, 1)]
}

#[test]
fn ae9_relevant_vectors_phase_a() {
    for a in [q(1, 3), q(4, 7)] {
        let rv = relevant_vectors(&ae9(&a).unwrap());
        assert_eq!(rv.len(), 370);
        let [n1, n2, n3] = norms(&a);
        let count = |n: &Rational| rv.vectors.iter().filter(|v| &v.norm2 == n).count();
        assert_eq!((count(&n1), count(&n2), count(&n3)), (256, 112, 2));
        let mut n1v = QVector(vec![q(1, 2); 9]);
        n1v[8] = a.clone();
        let mut n2v = QVector::zeros(9);
        n2v[0] = q(1, 1);
        n2v[1] = q(1, 1);
        let mut n3v = QVector::zeros(9);
        n3v[8] = &a * q(2, 1);
        for v in [n1v, n2v, n3v] {
            assert!(rv.vectors.iter().any(|r| r.vector == v), "{v:?} missing");
        }
        // Closed under negation.
        for r in &rv.vectors {
            let neg = r.vector.neg();
            assert!(rv.vectors.iter().any(|s| s.vector == neg));
        }
    }
}

#[test]
fn ae9_relevant_vectors_phase_d() {
    assert_eq!(relevant_vectors(&ae9(&q(3, 2)).unwrap()).len(), 368);
}

/// The 370 relevant vectors are the 370 shortest nonzero vectors iff a² ≥ 2/15.
#[test]
fn relevant_versus_shortest() {
    for (a, expect_shortest) in [(q(4, 7), true), (q(1, 3), false)] {
        let b = ae9(&a).unwrap();
        let rv = relevant_vectors(&b);
        let max_rel = rv.vectors.iter().map(|v| v.norm2.clone()).max().unwrap();
        // Count all nonzero lattice vectors with norm at most max_rel by enumeration.
        let mut shorter = 0usize;
        let bound = max_rel.to_f64().sqrt();
        let kmax = (bound / a.to_f64()).floor() as i64;
        for k in -kmax..=kmax {
            let h2 = (Rational::from_int(k) * &a).square();
            let rest = &max_rel - &h2;
            let r = rest.to_f64().sqrt().ceil() as i64 + 1;
            let shift = q(k, 2);
            let mut z = [0i64; 8];
            count_layer(&mut z, 0, r, &shift, &rest, &mut shorter, k == 0);
        }
        let is_shortest = shorter == 370;
        assert_eq!(is_shortest, expect_shortest, "a = {a}: {shorter} vectors within the relevant radius");
    }
}

fn count_layer(z: &mut [i64; 8], i: usize, r: i64, shift: &Rational, rest: &Rational, out: &mut usize, origin_layer: bool) {
    count_prefix(z, i, r, shift, rest, Rational::zero(), out, origin_layer);
}

#[allow(clippy::too_many_arguments)]
fn count_prefix(
    z: &mut [i64; 8],
    i: usize,
    r: i64,
    shift: &Rational,
    rest: &Rational,
    partial: Rational,
    out: &mut usize,
    origin_layer: bool,
) {
    if &partial > rest {
        return;
    }
    if i == 8 {
        if z.iter().sum::<i64>().rem_euclid(2) == 0 && !(origin_layer && z.iter().all(|&v| v == 0)) {
            *out += 1;
        }
        return;
    }
    for v in -r..=r {
        z[i] = v;
        let d = &partial + (Rational::from_int(v) + shift).square();
        count_prefix(z, i + 1, r, shift, rest, d, out, origin_layer);
    }
}
