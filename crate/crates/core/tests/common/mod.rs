//! Reference data shared by the integration tests and the acceptance run:
//! the AE₉ vertex table, the published closed forms, and small oracles.

#![allow(dead_code)]

use lamiq::cell::{CellConfig, CellVertices};
use lamiq::exactnum::{radq_sqrt, QVector, RadQ, Rational};
use lamiq::family::PolyNu;
use lamiq::lattice::ae9;
use lamiq::symmetry::{ae9_group, orbit, DEFAULT_ORBIT_CAP};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn vertices_at(a: &Rational) -> CellVertices {
    CellVertices::build(&ae9(a).unwrap(), &ae9_group(), &CellConfig::default()).unwrap()
}

/// Builds a representative from runs of `(value, count)`.
pub fn rep(parts: &[(Rational, usize)]) -> QVector {
    QVector(parts.iter().flat_map(|(v, k)| std::iter::repeat_n(v.clone(), *k)).collect())
}

/// Vertex classes at `a`: representative, orbit size and (F8¹, F8², F8³) incidences.
pub fn vertex_classes_at(a: &Rational) -> Vec<(QVector, usize, [usize; 3])> {
    let nu = a.square();
    let one = Rational::from_int(1);
    let zero = Rational::from_int(0);
    let half = q(1, 2);
    let w = |c: i64, s: i64, d: i64| &(&Rational::from_int(c) + &(&nu * &Rational::from_int(s))) / &Rational::from_int(d);
    let neg = |x: &Rational| -x;
    let h2 = w(1, -1, 4);
    let h3 = w(1, 1, 4);
    let h4 = w(1, -1, 6);
    let h5 = w(2, 1, 6);
    let h6 = &(&one + &(&nu * &Rational::from_int(2))) / &Rational::from_int(6);
    let h7 = w(1, -1, 3);
    let h8 = w(1, -1, 2);
    let h9 = nu.clone();
    let h10 = &(&one - &(&nu * &Rational::from_int(2))) / &Rational::from_int(2);
    let h11 = &nu / &Rational::from_int(2);
    let h12 = &(&one - &(&nu * &Rational::from_int(2))) / &Rational::from_int(6);
    let h13 = w(1, 1, 3);
    let h15 = w(1, 1, 6);
    let h16 = w(2, -1, 6);
    vec![
        (rep(&[(zero.clone(), 7), (one.clone(), 1), (a.clone(), 1)]), 32, [0, 14, 1]),
        (rep(&[(neg(&h2), 1), (h2.clone(), 6), (&one - &h2, 1), (a.clone(), 1)]), 2048, [7, 7, 1]),
        (rep(&[(neg(&h3), 1), (h3.clone(), 6), (&one - &h3, 1), (zero.clone(), 1)]), 1024, [14, 7, 0]),
        (rep(&[(h4.clone(), 7), (&one - &h4, 1), (a.clone(), 1)]), 2048, [1, 7, 1]),
        (rep(&[(neg(&h5), 1), (h5.clone(), 7), (zero.clone(), 1)]), 128, [16, 0, 0]),
        (rep(&[(neg(&h6), 1), (h6.clone(), 4), (half.clone(), 3), (zero.clone(), 1)]), 7168, [10, 3, 0]),
        (rep(&[(zero.clone(), 3), (h7.clone(), 4), (&one - &h7, 1), (a.clone(), 1)]), 17920, [4, 4, 1]),
        (rep(&[(zero.clone(), 4), (h8.clone(), 3), (&one - &h8, 1), (a.clone(), 1)]), 8960, [8, 3, 1]),
        (rep(&[(zero.clone(), 3), (h9.clone(), 1), (half.clone(), 4), (zero.clone(), 1)]), 8960, [8, 6, 0]),
        (rep(&[(zero.clone(), 4), (h10.clone(), 1), (half.clone(), 3), (a.clone(), 1)]), 8960, [8, 3, 1]),
        (rep(&[(neg(&h11), 1), (h11.clone(), 3), (half.clone(), 4), (zero.clone(), 1)]), 8960, [8, 6, 0]),
        (rep(&[(neg(&h12), 1), (h12.clone(), 4), (half.clone(), 3), (a.clone(), 1)]), 14336, [5, 3, 1]),
        (rep(&[(zero.clone(), 3), (h13.clone(), 4), (&one - &h13, 1), (zero.clone(), 1)]), 8960, [8, 4, 0]),
        (rep(&[(zero.clone(), 4), (half.clone(), 4), (a / &Rational::from_int(2), 1)]), 2240, [8, 6, 0]),
        (rep(&[(h15.clone(), 7), (&one - &h15, 1), (zero.clone(), 1)]), 1024, [2, 7, 0]),
        (rep(&[(neg(&h16), 1), (h16.clone(), 7), (a.clone(), 1)]), 256, [8, 0, 1]),
    ]
}

/// Position of some orbit member of `x` among the vertices.
pub fn locate(cv: &CellVertices, x: &QVector) -> Option<usize> {
    let index: std::collections::HashMap<&QVector, usize> = cv.vertices.coords.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let o = orbit(x, &ae9_group(), DEFAULT_ORBIT_CAP).unwrap();
    o.elements.iter().find_map(|p| index.get(p).copied())
}

pub fn incidence(cv: &CellVertices, i: usize, a: &Rational) -> [usize; 3] {
    let n1 = &q(2, 1) + &a.square();
    let n3 = &a.square() * &Rational::from_int(4);
    let mut t = [0; 3];
    for &j in &cv.vertices.active[i] {
        let m = &cv.facets[j as usize].normal.norm2();
        let k = if *m == n1 {
            0
        } else if *m == n3 {
            2
        } else {
            1
        };
        t[k] += 1;
    }
    t
}

/// The four phase-B representatives that replace H9, H10, H12 and H13, with
/// their orbit sizes. H10 has nine coordinates: `(1−w, w, w, 0, …, 0, a)`.
pub fn phase_b_reps(a: &Rational) -> Vec<(QVector, usize)> {
    let nu = a.square();
    let half = q(1, 2);
    let zero = int(0);
    let one = int(1);
    let w9 = &nu - &half;
    let w10 = &one - &nu;
    let w12 = &(a / &int(2)) + &(a * &int(4)).recip();
    let w13 = &(a / &int(2)) - &(a * &int(4)).recip();
    vec![
        (rep(&[(-&w9, 1), (w9.clone(), 2), (half.clone(), 5), (zero.clone(), 1)]), 7168),
        // Printed with ten coordinates; the vertex has one fewer `w`.
        (rep(&[(&one - &w10, 1), (w10.clone(), 2), (zero.clone(), 5), (a.clone(), 1)]), 2688),
        (rep(&[(zero.clone(), 5), (half.clone(), 3), (w12, 1)]), 896),
        (rep(&[(zero.clone(), 3), (half.clone(), 5), (w13, 1)]), 3584),
    ]
}

/// Face class totals at `a² < 1/2`: class totals per dimension, largest first.
pub fn face_class_totals() -> Vec<Vec<usize>> {
    vec![
        vec![93024],
        vec![218112, 134656, 107520, 88064, 62720, 53760, 53760, 32256, 17920, 2304, 2048, 16],
        vec![584192, 358400, 197120, 179200, 143360, 125440, 114688, 98560, 71680, 40320, 35840, 28672, 16384, 1024, 1024],
        vec![645120, 501760, 369152, 250880, 215040, 150528, 89600, 71680, 67200, 50176, 50176, 11200, 7168],
        vec![430080, 322560, 286720, 250880, 107520, 98560, 86016, 53760, 20160, 16128, 10752, 10752],
        vec![358400, 89600, 80640, 50176, 35840, 17920, 8960, 8960, 1120, 896],
        vec![57344, 53760, 8960, 7168, 4480, 2688, 448],
        vec![10752, 1344, 384, 224],
        vec![256, 112, 2],
        vec![1],
    ]
}

pub const FACE_TOTALS: [usize; 10] = [93024, 773136, 1995904, 2479680, 1693888, 652512, 134848, 12704, 370, 1];

/// `a³·Σ c·a^k` as a polynomial in `ν = a²`; every `k + 3` must be even.
pub fn a3_times(terms: &[(i64, Rational)]) -> PolyNu {
    let mut coeffs = vec![int(0); 12];
    for (k, c) in terms {
        let e = k + 3;
        assert!(e >= 0 && e % 2 == 0);
        coeffs[(e / 2) as usize] = &coeffs[(e / 2) as usize] + c;
    }
    PolyNu::new(coeffs)
}

/// Phase A second moment `U(a)`.
pub fn u_phase_a() -> PolyNu {
    a3_times(&[
        (19, q(-1, 90)),
        (17, q(4, 135)),
        (13, q(-8, 135)),
        (9, q(28, 225)),
        (5, q(-16, 45)),
        (3, q(2, 3)),
        (1, q(929, 810)),
    ])
}

pub fn alpha_phase_a() -> PolyNu {
    a3_times(&[
        (19, q(1, 90)),
        (17, q(-7, 270)),
        (13, q(1, 27)),
        (9, q(-7, 150)),
        (5, q(2, 45)),
        (1, q(929, 6480)),
    ])
}

pub fn beta_phase_a() -> PolyNu {
    a3_times(&[
        (19, q(-1, 9)),
        (17, q(71, 270)),
        (13, q(-53, 135)),
        (9, q(49, 90)),
        (5, q(-34, 45)),
        (3, q(2, 3)),
        (1, q(-929, 6480)),
    ])
}

/// Phase B second moment, including its `a⁻¹` term.
pub fn u_phase_b() -> PolyNu {
    a3_times(&[
        (19, q(121, 12150)),
        (17, q(-92, 1215)),
        (15, q(32, 135)),
        (13, q(-152, 405)),
        (11, q(112, 405)),
        (9, q(-28, 675)),
        (7, q(28, 405)),
        (5, q(-152, 405)),
        (3, q(181, 270)),
        (1, q(1393, 1215)),
        (-1, q(1, 48600)),
    ])
}

/// The published extremum polynomial in `ν`.
pub fn extremum_e() -> PolyNu {
    PolyNu::from_ints(&[929, -4320, 4896, 0, -3528, 0, 2544, 0, -1704, 720])
}

fn lin(c0: i64, c1: i64) -> PolyNu {
    PolyNu::from_ints(&[c0, c1])
}

/// `a³·X(ν)·V/a²` with `V = 2a`, i.e. `2ν·X(ν)`.
fn times_v_over_a2(x: PolyNu) -> PolyNu {
    PolyNu::from_ints(&[0, 2]).mul(&x)
}

/// Published differences across the three boundaries as
/// `(boundary index, is_beta, a³·ΔX)`, with the expected multiplicity at ν₀.
pub fn published_differences() -> Vec<(usize, bool, PolyNu, usize)> {
    let s = |p: PolyNu, d: i64| p.scale(&q(1, d));
    vec![
        (0, false, times_v_over_a2(s(lin(-1, 2).pow(10), 97200)), 10),
        (1, false, times_v_over_a2(s(lin(1, -1).pow(9).mul(&lin(3, 2)), 405)), 9),
        (2, false, times_v_over_a2(s(lin(-2, 1).pow(10), -24300)), 10),
        (0, true, times_v_over_a2(s(lin(-1, 2).pow(9).mul(&lin(1, 16)), 77760)), 9),
        (1, true, times_v_over_a2(s(lin(1, -1).pow(8).mul(&PolyNu::from_ints(&[6, 43, 32])), -648)), 8),
        (2, true, times_v_over_a2(s(lin(-2, 1).pow(9).mul(&lin(1, 4)), -9720)), 9),
    ]
}

/// Facet volumes in phase A, keyed by squared facet height
/// `((a²+2)/4, 1/2, a²)`.
pub fn facet_formulas(a: &Rational) -> Vec<(Rational, RadQ)> {
    let ev = |terms: &[(u32, Rational)]| terms.iter().fold(int(0), |acc, (k, c)| &acc + &(c * &a.pow(*k)));
    let nu = a.square();
    let v1 = ev(&[(15, q(1, 64)), (13, q(-1, 30)), (9, q(7, 180)), (5, q(-7, 180)), (1, q(1, 30))]);
    let v2 = ev(&[(15, q(-1, 28)), (13, q(8, 105)), (9, q(-4, 45)), (5, q(4, 45)), (1, q(1, 15))]);
    let v3 = ev(&[(16, int(-1)), (14, q(32, 15)), (10, q(-112, 45)), (6, q(112, 45)), (2, q(-32, 15)), (0, int(1))]);
    vec![
        (&(&nu + &int(2)) / &int(4), radq_sqrt(&(&nu + &int(2))).unwrap().scale(&v1)),
        (q(1, 2), radq_sqrt(&int(2)).unwrap().scale(&v2)),
        (nu, RadQ::rational(v3)),
    ]
}

/// Squared volume of the 3-face classes F₃² and F₃⁴.
pub fn f3_volume_squared(a: &Rational) -> Rational {
    let nu = a.square();
    let c = &(&int(3) - &(&nu.square() * &int(2))) / &int(72);
    &(&nu * &(&(&nu * &int(12)) + &int(7))) * &c.square()
}

/// Polar moment of a convex polygon (vertices counterclockwise) by the
/// shoelace form of `∫ x² + y²`.
pub fn polygon_u(p: &[(Rational, Rational)]) -> Rational {
    let mut acc = int(0);
    for i in 0..p.len() {
        let (x0, y0) = &p[i];
        let (x1, y1) = &p[(i + 1) % p.len()];
        let cross = &(x0 * y1) - &(x1 * y0);
        let xx = &(&(x0 * x0) + &(x0 * x1)) + &(x1 * x1);
        let yy = &(&(y0 * y0) + &(y0 * y1)) + &(y1 * y1);
        acc = &acc + &(&cross * &(&xx + &yy));
    }
    &acc / &int(12)
}

/// Cell of the stacked lattice with rows `(1, 0)` and `(½, a)`, written down
/// by hand: vertical sides when `a² > 1/4`, horizontal sides otherwise.
pub fn stacked_line_u(a: &Rational) -> Rational {
    let nu = a.square();
    let two_a = a * &int(2);
    let verts = if nu > q(1, 4) {
        let k = &(&nu + &q(1, 4)) / &two_a;
        let h = &(&nu - &q(1, 4)) / &two_a;
        vec![(q(1, 2), -&h), (q(1, 2), h.clone()), (int(0), k.clone()), (q(-1, 2), h.clone()), (q(-1, 2), -&h), (int(0), -&k)]
    } else {
        let w = &q(1, 4) - &nu;
        let m = &q(1, 4) + &nu;
        vec![(m.clone(), int(0)), (w.clone(), a.clone()), (-&w, a.clone()), (-&m, int(0)), (-&w, -a), (w.clone(), -a)]
    };
    polygon_u(&verts)
}
