mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sixj::geometry::{exterior_dihedral_angles, quadratic_coefficients};
use sixj::{sixj_exact, SpinSextet};

#[test]
fn three_j_contraction_matches_known_values() {
    assert!((six_j_from_three_j([2; 6]) - 1.0 / 6.0).abs() < 1e-14);
    assert!((six_j_from_three_j([2, 2, 2, 0, 2, 2]) + 1.0 / 3.0).abs() < 1e-14);
    assert!((six_j_from_three_j([0; 6]) - 1.0).abs() < 1e-14);
}

#[test]
fn exact_agrees_with_three_j_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let s = random_admissible(&mut rng, 6);
        let exact = sixj_exact(&s).to_f64();
        let oracle = six_j_from_three_j(s.doubled());
        assert!((exact - oracle).abs() < 1e-12, "{s}: {exact} vs {oracle}");
    }
}

#[test]
fn float_racah_oracle_agrees_with_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let s = random_admissible(&mut rng, 6);
        let a = six_j_float(s.doubled());
        let b = six_j_from_three_j(s.doubled());
        assert!((a - b).abs() < 1e-12, "{s}: {a} vs {b}");
    }
}

#[test]
fn closed_form_angles_match_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let s = random_euclidean(&mut rng, 30);
        let closed = exterior_dihedral_angles(&s).unwrap();
        let embedded = embedding_dihedral_angles(s.to_f64());
        for i in 0..6 {
            assert!((closed[i] - embedded[i]).abs() < 1e-9, "{s} edge {i}: {closed:?} vs {embedded:?}");
        }
    }
}

#[test]
fn regular_tetrahedron_embedding() {
    let theta = std::f64::consts::PI - (1.0f64 / 3.0).acos();
    for t in embedding_dihedral_angles([1.0; 6]) {
        assert!((t - theta).abs() < 1e-15);
    }
}

#[test]
fn coefficient_examples() {
    let c = quadratic_coefficients(&SpinSextet::from_ints([1; 6])).unwrap();
    assert_eq!((c.a.to_string(), c.b.to_string(), c.c.to_string()), ("6".into(), "44".into(), "81".into()));
}
