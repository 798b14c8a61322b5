use hdgeom::centroids::{
    centroid_coefficient, coincident_pairs, skeleton_centroid_oracle,
    skeleton_centroid_vector_oracle, triangle_centroids, CentroidRecord,
};
use hdgeom::diophantine::{duplicate_dimensions, enumerate_coincidences, q_form, verify_theorem10};
use hdgeom::QuadraticNumber;

fn is_square(x: u64) -> bool {
    let r = (x as f64).sqrt().round() as u64;
    r * r == x
}

#[test]
fn closed_form_agrees_with_face_enumeration() {
    for n in 1..=10 {
        for k in 0..=n {
            let fast = centroid_coefficient(n, k).unwrap();
            let slow = skeleton_centroid_oracle(n, k).unwrap();
            assert_eq!(fast, slow, "N={n} k={k}");
        }
    }
}

#[test]
fn oracle_vector_is_symmetric() {
    let v = skeleton_centroid_vector_oracle(7, 3).unwrap();
    assert_eq!(v.len(), 7);
    assert!(v.iter().all(|c| *c == v[0]));
    assert_eq!(CentroidRecord::new(7, 3, 10).unwrap().vector(), v);
}

#[test]
fn endpoint_skeletons() {
    for n in 1..=200u64 {
        assert_eq!(centroid_coefficient(n, n).unwrap(), QuadraticNumber::fraction(1, n + 1).unwrap());
        let vertex = centroid_coefficient(n, 0).unwrap();
        let expected = QuadraticNumber::fraction(1, n + 1).unwrap();
        // vertex skeleton: the origin and N unit vectors averaged
        assert_eq!(vertex, expected, "N={n}");
    }
}

#[test]
fn rational_exactly_when_face_size_is_square() {
    for n in 1..=50 {
        for k in 1..n {
            let c = centroid_coefficient(n, k).unwrap();
            assert_eq!(c.is_rational(), is_square(k + 1), "N={n} k={k}: {c}");
        }
    }
}

#[test]
fn coordinates_are_between_zero_and_one() {
    for n in 1..=60 {
        for k in 0..=n {
            let c = centroid_coefficient(n, k).unwrap().to_f64();
            assert!(c > 0.0 && c * n as f64 <= 1.0 + 1e-15, "N={n} k={k}");
        }
    }
}

#[test]
fn parametrisation_is_sound_and_complete_to_one_hundred() {
    let report = verify_theorem10(100).unwrap();
    assert!(report.is_consistent(), "{:?}", report.discrepancies);
    for row in enumerate_coincidences(100).unwrap() {
        assert_eq!(row.n as u128, q_form(row.a, row.b));
        assert!(coincident_pairs(row.n).unwrap().contains(&(row.k1, row.k2)));
        assert_eq!(centroid_coefficient(row.n, row.k2).unwrap(), row.coordinate);
    }
}

#[test]
fn form_is_strictly_increasing_in_each_argument() {
    for a in 1..=100u64 {
        for b in a..200 {
            assert!(q_form(a, b + 1) > q_form(a, b));
            assert!(q_form(a + 1, b) > q_form(a, b));
        }
    }
}

#[test]
fn coincidence_dimensions_outnumber_primes_at_desk_scale() {
    let dims: std::collections::BTreeSet<u64> =
        enumerate_coincidences(10_000).unwrap().into_iter().map(|r| r.n).collect();
    let primes = (2..=10_000u64).filter(|&p| (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)).count();
    // counted independently; values of a binary quadratic form are denser than primes
    assert_eq!(primes, 1229);
    assert_eq!(dims.len(), 2464);
}

#[test]
fn shared_dimensions_are_reported() {
    let dups = duplicate_dimensions(1000).unwrap();
    assert!(!dups.is_empty());
    for (n, params) in &dups {
        assert!(params.len() >= 2);
        for &(a, b) in params {
            assert_eq!(q_form(a, b), *n as u128);
        }
    }
}

#[test]
fn triangle_centroids_separate_for_scalene_triangles() {
    let t = triangle_centroids([0.0, 0.0], [4.0, 0.0], [0.0, 3.0]).unwrap();
    assert_eq!(t.vertex, t.solid);
    // perimeter 12; edge midpoints weighted by 5, 3, 4
    let edge = [(5.0 * 2.0 + 3.0 * 0.0 + 4.0 * 2.0) / 12.0, (5.0 * 1.5 + 3.0 * 1.5 + 4.0 * 0.0) / 12.0];
    assert!((t.edge[0] - edge[0]).abs() < 1e-15 && (t.edge[1] - edge[1]).abs() < 1e-15);
    assert_ne!(t.edge, t.vertex);

    let eq = triangle_centroids([0.0, 0.0], [2.0, 0.0], [1.0, 3f64.sqrt()]).unwrap();
    for p in [eq.edge, eq.solid] {
        assert!((p[0] - eq.vertex[0]).abs() < 1e-15 && (p[1] - eq.vertex[1]).abs() < 1e-15);
    }
    assert!(triangle_centroids([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]).is_err());
}
