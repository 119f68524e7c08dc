use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_PI_2;

use floerkit::corners::*;
use floerkit::scalar::{q, qf};
use floerkit::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let fact = |m: usize| (1..=m).product::<usize>();
    fact(n) / (fact(k) * fact(n - k))
}

#[test]
fn corner_counts() {
    for n in 0..=6 {
        for k in 0..=n + 1 {
            let cs = normalized_corner(n, k);
            assert_eq!(cs.len(), choose(n, k) << k, "n={n} k={k}");
            let distinct: BTreeSet<_> = cs.iter().collect();
            assert_eq!(distinct.len(), cs.len());
            assert!(cs.iter().all(|c| c.codim() == k && c.free_coords(n).len() == n - k));
        }
    }
    let square: BTreeSet<String> = normalized_corner(2, 2).iter().map(|c| c.to_string()).collect();
    let want: BTreeSet<String> = ["{t1=0,t2=0}", "{t1=0,t2=1}", "{t1=1,t2=0}", "{t1=1,t2=1}"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(square, want);
    assert_eq!(normalized_corner(2, 1).len(), 4);
    assert_eq!(normalized_corner(3, 0).len(), 1);
}

/// Number of ways to split a `(k+l)`-set into a `k`-set and an `l`-set, by
/// counting bitmasks.
fn splittings(k: usize, l: usize) -> usize {
    (0u32..1 << (k + l)).filter(|m| m.count_ones() as usize == k).count()
}

#[test]
fn covering_fibers() {
    let m = covering_map(2, 1, 1);
    assert_eq!(m.table.len(), 8);
    assert_eq!(m.fiber_histogram, BTreeMap::from([(2, 4)]));
    assert!(m.fibers_ok());
    for n in 0..=5 {
        for k in 0..=n {
            for l in 0..=n - k {
                let m = covering_map(n, l, k);
                assert!(m.surjective);
                let targets = normalized_corner(n, k + l).len();
                assert_eq!(m.fiber_histogram, BTreeMap::from([(splittings(k, l), targets)]), "n={n} k={k} l={l}");
                assert!(m.fibers_ok());
                for (src, img) in &m.table {
                    assert_eq!(src.layers[0].codim(), k);
                    assert_eq!(src.layers[1].codim(), l);
                    assert_eq!(img.codim(), k + l);
                }
            }
        }
    }
    // l = 0 is a bijection
    let m = covering_map(4, 0, 2);
    assert_eq!(m.fiber_histogram, BTreeMap::from([(1, normalized_corner(4, 2).len())]));
}

#[test]
fn covering_square_commutes() {
    assert!(covering_square_check(3, 1, 1, 1));
    assert_eq!(nested_corners(3, &[1, 1, 1]).len(), 6 * 4 * 2);
    for n in 0..=5 {
        for k1 in 0..=n {
            for k2 in 0..=n - k1 {
                for k3 in 0..=n - k1 - k2 {
                    assert!(covering_square_check(n, k1, k2, k3));
                }
            }
        }
    }
}

#[test]
fn nested_merge() {
    let nc = &nested_corners(3, &[1, 1, 1])[0];
    assert_eq!(nc.merge(0).layers.len(), 2);
    assert_eq!(nc.merge(1).merge(0), nc.merge(0).merge(0));
    assert_eq!(nc.merge(0).merge(0).layers[0], nc.flatten());
}

#[test]
fn classify_examples() {
    let tau = qf(1, 2);
    let c = CollaredCube::new(2, tau.clone()).unwrap();
    assert_eq!(c.classify_point(&[qf(1, 3), qf(1, 2)]).unwrap().0, 0);
    let (k, comp) = c.classify_point(&[-tau.clone() / q(2), qf(1, 2)]).unwrap();
    assert_eq!(k, 1);
    assert_eq!(comp.sigma, BTreeMap::from([(1, 0)]));
    let (k, comp) = c.classify_point(&[-tau.clone(), q(1) + tau.clone()]).unwrap();
    assert_eq!(k, 2);
    assert_eq!(comp.sigma, BTreeMap::from([(1, 0), (2, 1)]));
    assert!(matches!(c.classify_point(&[q(2), q(0)]), Err(Error::OutOfDomain(_))));
    assert!(matches!(c.classify_point(&[q(0)]), Err(Error::OutOfDomain(_))));
    assert!(CollaredCube::new(2, q(0)).is_err());
}

fn pow(x: &Rational, n: usize) -> Rational {
    (0..n).fold(q(1), |a, _| a * x.clone())
}

#[test]
fn strata_partition_the_collared_cube() {
    for tau in [qf(1, 3), q(1), qf(5, 2)] {
        for n in 0..=4 {
            let c = CollaredCube::new(n, tau.clone()).unwrap();
            let p = c.partition_check();
            assert!(p.disjoint);
            let want = pow(&(q(1) + q(2) * tau.clone()), n);
            assert_eq!(p.volume, floerkit::scalar::format_rational(&want));
            assert_eq!(p.strata, 3usize.pow(n as u32));
            assert!(p.passed());
        }
    }
}

#[test]
fn random_points_land_in_their_stratum() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tau = qf(1, 4);
    let c = CollaredCube::new(3, tau.clone()).unwrap();
    for _ in 0..300 {
        // multiples of 1/16 over [-1/4, 5/4], so the breakpoints get hit
        let x: Vec<Rational> = (0..3).map(|_| qf(rng.gen_range(-4..=20), 16)).collect();
        let (k, comp) = c.classify_point(&x).unwrap();
        let outside: Vec<usize> = (0..3).filter(|&i| x[i] < q(0) || x[i] > q(1)).collect();
        assert_eq!(k, outside.len());
        let boxes: Vec<_> = c
            .strata()
            .into_iter()
            .filter(|(_, b)| b.iter().zip(&x).all(|(iv, v)| iv.contains(v)))
            .collect();
        assert_eq!(boxes.len(), 1);
        assert_eq!(boxes[0].0, comp);
        let r = c.retract(&x).unwrap();
        assert_eq!(c.retract(&r).unwrap(), r);
        for i in 0..3 {
            if !outside.contains(&i) {
                assert_eq!(r[i], x[i]);
            }
        }
    }
}

#[test]
fn retraction_is_a_retraction() {
    for n in 0..=3 {
        assert!(CollaredCube::new(n, qf(2, 3)).unwrap().retraction_check());
    }
}

fn face(coord: usize, side: u8) -> Face {
    Face { coord, side }
}

#[test]
fn partial_collar_examples() {
    let tau = qf(1, 5);
    let a = BTreeSet::from([face(1, 0)]);
    let b = BTreeSet::from([face(2, 0)]);
    assert!(partial_collar_commute(2, &a, &BTreeSet::new(), &tau).unwrap());
    assert!(partial_collar_commute(2, &a, &b, &tau).unwrap());
    assert!(partial_collar_commute(2, &b, &a, &tau).unwrap());
    assert!(matches!(partial_collar_commute(2, &a, &a, &tau), Err(Error::InvalidPartition(_))));
    assert!(matches!(
        partial_collar_commute(2, &BTreeSet::from([face(3, 0)]), &b, &tau),
        Err(Error::OutOfDomain(_))
    ));

    // region algebra by hand: [-τ, 1] × [-τ, 1]
    let x = PartialCollaring::cube(2).collar(&a, &tau).unwrap().collar(&b, &tau).unwrap();
    assert_eq!(x.region(), &[(-tau.clone(), q(1)), (-tau.clone(), q(1))]);
    assert_eq!(x.retract(&[-tau.clone(), qf(1, 2)]), vec![q(0), qf(1, 2)]);
}

/// Every way of splitting the `2n` faces into `c1`, `c2` and neither.
fn all_face_pairs(n: usize) -> Vec<(BTreeSet<Face>, BTreeSet<Face>)> {
    let faces: Vec<Face> = (1..=n).flat_map(|i| [face(i, 0), face(i, 1)]).collect();
    let total = 3usize.pow(faces.len() as u32);
    (0..total)
        .map(|mut code| {
            let (mut c1, mut c2) = (BTreeSet::new(), BTreeSet::new());
            for f in &faces {
                match code % 3 {
                    1 => {
                        c1.insert(*f);
                    }
                    2 => {
                        c2.insert(*f);
                    }
                    _ => {}
                }
                code /= 3;
            }
            (c1, c2)
        })
        .collect()
}

#[test]
fn partial_collars_commute_exhaustively() {
    let tau = qf(1, 3);
    for n in 0..=4 {
        for (c1, c2) in all_face_pairs(n) {
            assert!(partial_collar_commute(n, &c1, &c2, &tau).unwrap());
        }
    }
}

/// The fixed `k = 2` formula: `θ ↦ φ = 2θ − π/2`, `(r sin φ, r cos φ)`.
fn phi2_oracle(t1: f64, t2: f64) -> (f64, f64) {
    let r = t1.hypot(t2);
    let theta = t2.atan2(t1);
    let phi = 2.0 * theta - FRAC_PI_2;
    (r * phi.sin(), r * phi.cos())
}

#[test]
fn phi2_values() {
    let p = SmoothingMap::new(2).unwrap();
    let (x, s) = p.eval(&[1.0, 1.0]).unwrap();
    assert!(x[0].abs() < 1e-15 && (s - 2f64.sqrt()).abs() < 1e-15);
    let (x, s) = p.eval(&[1.0, 0.0]).unwrap();
    assert!((x[0] + 1.0).abs() < 1e-15 && s == 0.0);
    assert_eq!(p.eval(&[0.0, 0.0]).unwrap(), (vec![0.0], 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let t1: f64 = rng.gen_range(0.0..3.0);
        let t2: f64 = rng.gen_range(0.0..3.0);
        let (x, s) = p.eval(&[t1, t2]).unwrap();
        let (ox, os) = phi2_oracle(t1, t2);
        assert!((x[0] - ox).abs() < 1e-12 && (s - os).abs() < 1e-12, "({t1}, {t2})");
    }
    // the transposition acts on ℝ¹ by negation
    assert!((p.act(&[1, 0], &[0.7])[0] + 0.7).abs() < 1e-15);
}

#[test]
fn phi1_is_the_identity() {
    let p = SmoothingMap::new(1).unwrap();
    assert_eq!(p.eval(&[2.5]).unwrap(), (vec![], 2.5));
    let rep = smoothing_property_check(1, 200, 1e-300, 0).unwrap();
    assert_eq!(rep.max_violation(), 0.0);
}

#[test]
fn smoothing_properties() {
    let r2 = smoothing_property_check(2, 10_000, 1e-12, 0).unwrap();
    assert!(r2.passed(), "{r2:?}");
    let r3 = smoothing_property_check(3, 10_000, 1e-9, 0).unwrap();
    assert!(r3.passed(), "{r3:?}");
    assert!(matches!(SmoothingMap::new(4), Err(Error::Unsupported(_))));
    assert!(matches!(smoothing_property_check(4, 10, 1e-9, 0), Err(Error::Unsupported(_))));
}

#[test]
fn phi3_structure() {
    let p = SmoothingMap::new(3).unwrap();
    // diagonal goes to the pole, boundary to the equator
    let (x, s) = p.eval(&[1.0, 1.0, 1.0]).unwrap();
    assert!(x.iter().all(|v| v.abs() < 1e-15) && (s - 3f64.sqrt()).abs() < 1e-15);
    let (_, s) = p.eval(&[0.0, 2.0, 1.0]).unwrap();
    assert_eq!(s, 0.0);
    // norms are preserved
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let t: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..2.0)).collect();
        let (x, s) = p.eval(&t).unwrap();
        let rt = t.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ro = (x.iter().map(|v| v * v).sum::<f64>() + s * s).sqrt();
        assert!((rt - ro).abs() < 1e-12);
        // continuity towards the boundary
        let mut near = t.clone();
        near[0] = 1e-9;
        let mut on = t.clone();
        on[0] = 0.0;
        let (xn, sn) = p.eval(&near).unwrap();
        let (xo, so) = p.eval(&on).unwrap();
        assert!((sn - so).abs() < 1e-6);
        assert!(xn.iter().zip(&xo).all(|(a, b)| (a - b).abs() < 1e-6));
    }
    assert!(p.eval(&[-1.0, 0.0, 0.0]).is_err());
}

#[test]
fn admissible_identity_is_exactly_zero() {
    let rep = admissible_coord_check(&CoordChange::Identity, &AdmissibleOptions::default());
    assert!(rep.all_zero());
    assert_eq!(rep.second_derivative_at_zero, Some(0.0));
    assert_eq!(rep.fitted_rate, None);
}

#[test]
fn shift_reproduces_minus_two() {
    let rep = admissible_coord_check(&CoordChange::Shift(q(1)), &AdmissibleOptions::default());
    let d2 = rep.second_derivative_at_zero.unwrap();
    assert!((d2 + 2.0).abs() < 1e-6, "{d2}");
    // s′ = s/(1 + cs) has second derivative −2c at 0
    let rep = admissible_coord_check(&CoordChange::Shift(qf(3, 2)), &AdmissibleOptions::default());
    assert!((rep.second_derivative_at_zero.unwrap() + 3.0).abs() < 1e-6);
    // in the S coordinate a shift is still admissible, with rate about −1
    assert!(rep.decays());
    let rate = rep.fitted_rate.unwrap();
    assert!((-1.3..-0.9).contains(&rate), "{rate}");
}

#[test]
fn exponential_change_decays() {
    let change = CoordChange::ExpDecay { coeff: q(1), rate: q(1) };
    let rep = admissible_coord_check(&change, &AdmissibleOptions::default());
    assert!(rep.decays(), "{rep:?}");
    assert_eq!(rep.orders.len(), 5);
    assert!(rep.fitted_rate.unwrap() < -10.0);
    assert_eq!(rep.second_derivative_at_zero, None);
    // a direct look at t′ − t at S = 5
    let s: f64 = 5.0;
    let tp = 1.0 / (s.exp() + (-s.exp()).exp()).ln();
    assert!((change.residual(s) - (tp - 1.0 / s)).abs() < 1e-15);
}
