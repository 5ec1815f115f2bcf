use lamiq::cell::{CellConfig, VoronoiCell};
use lamiq::exactnum::{QVector, Rational};
use lamiq::lattice::{laminate, GeneratorMatrix};
use lamiq::moments::{monte_carlo_g, simplex_moment_oracle};
use lamiq::symmetry::{GroupSpec, SignedPerm};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Hyperoctahedral group on the first `k` coordinates times the sign of the last.
fn bk_z2(n: usize) -> GroupSpec {
    let k = n - 1;
    let mut gens = vec![SignedPerm::negation(n, &[0]), SignedPerm::negation(n, &[n - 1])];
    for i in 0..k.saturating_sub(1) {
        gens.push(SignedPerm::transposition(n, i, i + 1));
    }
    GroupSpec::new(gens, None).unwrap()
}

fn half_stack(k: usize, a: Rational) -> GeneratorMatrix {
    laminate(&GeneratorMatrix::identity(k), &QVector(vec![q(1, 2); k]), &a).unwrap()
}

fn assert_oracle_agrees(basis: &GeneratorMatrix, group: &GroupSpec) -> VoronoiCell {
    let cell = VoronoiCell::build(basis, group, &CellConfig::default()).unwrap();
    let normals: Vec<QVector> = cell.base.relevant.vectors.iter().map(|v| v.vector.clone()).collect();
    let oracle = simplex_moment_oracle(&cell.base.vertices.coords, &normals).unwrap();
    assert_eq!(oracle.volume, cell.summary.volume);
    assert_eq!(oracle.tensor, cell.summary.tensor);
    assert_eq!(cell.summary.volume, basis.determinant().abs());
    assert_eq!(cell.lattice.euler_sum(), if basis.dim() % 2 == 0 { 0 } else { 2 });
    cell
}

#[test]
fn integer_lattices() {
    for n in 2..=4 {
        let cell = assert_oracle_agrees(&GeneratorMatrix::identity(n), &bk_z2(n));
        assert_eq!(cell.summary.g_exact, Some(q(1, 12)));
        assert_eq!(cell.summary.second_moment, q(n as i64, 12));
    }
}

#[test]
fn stacked_plane_members() {
    for a in [q(1, 3), q(3, 4), q(2, 1)] {
        assert_oracle_agrees(&half_stack(1, a), &bk_z2(2));
    }
}

#[test]
fn body_centred_cubic() {
    let cell = assert_oracle_agrees(&half_stack(2, q(1, 2)), &bk_z2(3));
    // Truncated octahedron: 24 vertices, 36 edges, 14 facets.
    assert_eq!(cell.lattice.totals(), vec![24, 36, 14, 1]);
    // G = 19/(192·2^{1/3}) with V = 1/2 gives U = 3·G·V^{5/3}.
    assert_eq!(cell.summary.volume, q(1, 2));
    assert_eq!(cell.summary.second_moment, q(19, 256));
}

#[test]
fn four_dimensional_member() {
    let cell = assert_oracle_agrees(&half_stack(3, q(2, 3)), &bk_z2(4));
    assert!(cell.summary.alpha.is_some());
}

#[test]
fn group_choice_does_not_change_moments() {
    let b = half_stack(2, q(3, 5));
    let with = VoronoiCell::build(&b, &bk_z2(3), &CellConfig::default()).unwrap();
    let without = VoronoiCell::build(&b, &GroupSpec::trivial(3), &CellConfig::default()).unwrap();
    assert_eq!(with.summary.tensor, without.summary.tensor);
    assert_eq!(with.lattice.totals(), without.lattice.totals());
    assert!(with.lattice.orbit_counts().iter().sum::<usize>() < without.lattice.orbit_counts().iter().sum::<usize>());
}

#[test]
fn monte_carlo_agrees_with_exact() {
    for (b, g) in [
        (GeneratorMatrix::identity(3), 1.0 / 12.0),
        (half_stack(2, q(1, 2)), 19.0 / (192.0 * 2f64.cbrt())),
    ] {
        let est = monte_carlo_g(&b, 200_000, 7);
        assert!((est.g - g).abs() < 5.0 * est.stderr, "{} vs {g} ± {}", est.g, est.stderr);
    }
}

#[test]
fn monte_carlo_is_seeded() {
    let b = half_stack(3, q(2, 3));
    let x = monte_carlo_g(&b, 50_000, 11);
    let y = monte_carlo_g(&b, 50_000, 11);
    assert_eq!(x.g.to_bits(), y.g.to_bits());
    assert_ne!(x.g.to_bits(), monte_carlo_g(&b, 50_000, 12).g.to_bits());
}
