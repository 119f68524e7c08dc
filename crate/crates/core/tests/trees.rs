use std::collections::BTreeSet;

use floerkit::novikov::{DiscreteSubmonoid, MonoidElement};
use floerkit::scalar::q;
use floerkit::trees::{
    boundary_sign_eps, boundary_terms, corner_strata, corner_tower_check, enumerate_trees, graft, tree_dimension,
    Child, DecoratedTree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit() -> MonoidElement {
    MonoidElement::unit()
}

fn el(e: i64, mu: i64) -> MonoidElement {
    MonoidElement::new(q(e), mu)
}

/// Plane trees as preorder out-degree sequences, every node count up to `max_nodes`.
fn plane_sequences(max_nodes: usize) -> Vec<Vec<usize>> {
    fn go(seq: &mut Vec<usize>, need: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if need == 0 {
            out.push(seq.clone());
            return;
        }
        if need > left {
            return;
        }
        for d in 0..left {
            if need - 1 + d > left - 1 {
                break;
            }
            seq.push(d);
            go(seq, need - 1 + d, left - 1, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_nodes, &mut out);
    out
}

/// Independent generator: plane shapes, then leaf/vertex choice, then decorations, then stability.
fn brute_force(g: &DiscreteSubmonoid, k: usize, beta: &MonoidElement) -> BTreeSet<String> {
    let e_min = g.e_min();
    let extra = (beta.energy.clone() / e_min).floor().to_integer();
    let extra: usize = extra.try_into().unwrap();
    // unit vertices have >= 2 children, so there are at most k - 1 + 2 * extra interior vertices
    let max_nodes = k + (k + 2 * extra).saturating_sub(1);
    let decorations = g.below(&beta.energy);
    let mut out = BTreeSet::new();
    for seq in plane_sequences(max_nodes) {
        let zeros: Vec<usize> = (0..seq.len()).filter(|&i| seq[i] == 0).collect();
        if zeros.len() < k || zeros.len() > k + extra {
            continue;
        }
        for mask in 0u32..(1 << zeros.len()) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let leaf: Vec<bool> = (0..seq.len())
                .map(|i| zeros.iter().position(|&z| z == i).is_some_and(|p| mask & (1 << p) != 0))
                .collect();
            if leaf[0] {
                continue;
            }
            let interior: Vec<usize> = (0..seq.len()).filter(|&i| !leaf[i]).collect();
            // stability filter, applied vertex by vertex
            let allowed: Vec<Vec<bool>> = interior
                .iter()
                .map(|&v| decorations.iter().map(|d| d.energy > q(0) || seq[v] >= 2).collect())
                .collect();
            let mut choice = Vec::new();
            assign(&allowed, &decorations, &unit(), beta, &mut choice, &mut |choice: &[usize]| {
                let (mut pos, mut ci) = (0, 0);
                out.insert(render(&seq, &leaf, &decorations, choice, &mut pos, &mut ci));
            });
        }
    }
    out
}

/// All decoration tuples summing to `target`, pruning partial sums that overshoot its energy.
fn assign(
    allowed: &[Vec<bool>],
    dec: &[MonoidElement],
    acc: &MonoidElement,
    target: &MonoidElement,
    choice: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if choice.len() == allowed.len() {
        if acc == target {
            f(choice);
        }
        return;
    }
    for (c, d) in dec.iter().enumerate() {
        if !allowed[choice.len()][c] {
            continue;
        }
        let next = acc + d;
        if next.energy > target.energy {
            continue;
        }
        choice.push(c);
        assign(allowed, dec, &next, target, choice, f);
        choice.pop();
    }
}

fn render(
    seq: &[usize],
    leaf: &[bool],
    dec: &[MonoidElement],
    choice: &[usize],
    pos: &mut usize,
    ci: &mut usize,
) -> String {
    let me = *pos;
    *pos += 1;
    if leaf[me] {
        return "x".into();
    }
    let b = &dec[choice[*ci]];
    *ci += 1;
    let mut s = String::from("[");
    if !b.is_unit() {
        s += &format!("{b}|");
    }
    let kids: Vec<String> = (0..seq[me]).map(|_| render(seq, leaf, dec, choice, pos, ci)).collect();
    s += &kids.join(",");
    s + "]"
}

fn codes(v: &[DecoratedTree]) -> BTreeSet<String> {
    v.iter().map(|t| t.code()).collect()
}

#[test]
fn unit_counts_match_associahedron_faces_and_oracle() {
    let g = DiscreteSubmonoid::trivial();
    let expected = [1usize, 3, 11, 45, 197];
    for (k, &n) in (2..=6).zip(&expected) {
        let t = enumerate_trees(&g, k, &unit());
        assert_eq!(t.len(), n, "k = {k}");
        assert_eq!(codes(&t).len(), n, "duplicates at k = {k}");
        assert_eq!(codes(&t), brute_force(&g, k, &unit()), "k = {k}");
    }
}

#[test]
fn binary_counts_are_catalan() {
    let g = DiscreteSubmonoid::trivial();
    let catalan = [1usize, 2, 5, 14, 42];
    for (k, &c) in (2..=6).zip(&catalan) {
        let n = enumerate_trees(&g, k, &unit())
            .iter()
            .filter(|t| t.vertices().iter().all(|v| v.inputs == 2))
            .count();
        assert_eq!(n, c);
    }
}

#[test]
fn decorated_enumeration_matches_oracle() {
    let g = DiscreteSubmonoid::new(vec![el(1, 0)]).unwrap();
    for e in 0..=3 {
        let kmax = if e <= 1 { 4 } else if e == 2 { 3 } else { 2 };
        for k in 0..=kmax {
            let b = el(e, 0);
            let t = enumerate_trees(&g, k, &b);
            assert_eq!(codes(&t).len(), t.len());
            assert_eq!(codes(&t), brute_force(&g, k, &b), "E = {e}, k = {k}");
        }
    }
    let g2 = DiscreteSubmonoid::new(vec![el(1, 2), el(2, 0)]).unwrap();
    for (e, mu) in [(2, 0), (2, 4), (3, 2)] {
        for k in 0..=2 {
            let b = el(e, mu);
            assert_eq!(codes(&enumerate_trees(&g2, k, &b)), brute_force(&g2, k, &b));
        }
    }
}

#[test]
fn enumeration_is_sorted_by_code() {
    let g = DiscreteSubmonoid::new(vec![el(1, 0)]).unwrap();
    let t = enumerate_trees(&g, 3, &el(1, 0));
    let c: Vec<String> = t.iter().map(|t| t.code()).collect();
    let mut s = c.clone();
    s.sort();
    assert_eq!(c, s);
    assert!(t.iter().all(|t| t.is_stable() && t.leaves() == 3 && t.total_beta() == el(1, 0)));
}

#[test]
fn corner_codims() {
    let g = DiscreteSubmonoid::trivial();
    let c = DecoratedTree::corolla(unit(), 3);
    assert_eq!(c.corner_codim(), 0);
    let two = DecoratedTree::corolla(unit(), 2);
    assert_eq!(graft(&two, &two, 1).unwrap().corner_codim(), 1);
    let comb = graft(&two, &graft(&two, &two, 1).unwrap(), 1).unwrap();
    assert_eq!(comb.code(), "[[[x,x],x],x]");
    assert_eq!(comb.corner_codim(), 2);
    assert_eq!(corner_strata(&g, 4, &unit(), 0).len(), 1);
    assert_eq!(corner_strata(&g, 4, &unit(), 1).len(), 5);
    assert_eq!(corner_strata(&g, 4, &unit(), 2).len(), 5);
}

fn random_tree(rng: &mut ChaCha8Rng, pool: &[DecoratedTree]) -> DecoratedTree {
    pool[rng.gen_range(0..pool.len())].clone()
}

#[test]
fn graft_is_codim_additive_and_associative() {
    let g = DiscreteSubmonoid::new(vec![el(1, 0)]).unwrap();
    let mut pool = Vec::new();
    for k in 0..=3 {
        for e in 0..=1 {
            pool.extend(enumerate_trees(&g, k, &el(e, 0)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let a = random_tree(&mut rng, &pool);
        let b = random_tree(&mut rng, &pool);
        let c = random_tree(&mut rng, &pool);
        if a.leaves() == 0 {
            continue;
        }
        let i = rng.gen_range(1..=a.leaves());
        let ab = graft(&b, &a, i).unwrap();
        assert_eq!(ab.leaves(), a.leaves() + b.leaves() - 1);
        assert_eq!(ab.corner_codim(), a.corner_codim() + b.corner_codim() + 1);
        assert_eq!(ab.total_beta(), &a.total_beta() + &b.total_beta());
        if b.leaves() == 0 {
            continue;
        }
        let j = rng.gen_range(i..i + b.leaves());
        let left = graft(&c, &ab, j).unwrap();
        let right = graft(&graft(&c, &b, j - i + 1).unwrap(), &a, i).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn every_tree_splits_once_per_interior_edge() {
    let g = DiscreteSubmonoid::new(vec![el(1, 0)]).unwrap();
    for k in 0..=4 {
        for e in 0..=1 {
            for t in enumerate_trees(&g, k, &el(e, 0)) {
                let s = t.splits();
                assert_eq!(s.len(), t.corner_codim());
                for (t1, t2, i) in s {
                    assert!(t1.is_stable() && t2.is_stable());
                    assert_eq!(graft(&t1, &t2, i).unwrap(), t);
                }
            }
        }
    }
}

#[test]
fn boundary_terms_match_codim_one_trees() {
    let g = DiscreteSubmonoid::new(vec![el(1, 0), el(1, 2)]).unwrap();
    let cases = [(3, unit()), (4, unit()), (5, unit()), (1, el(1, 0)), (2, el(1, 2)), (0, el(2, 2)), (2, el(2, 0))];
    for (k, b) in cases {
        let terms = boundary_terms(&g, k, &b, 2);
        let grafted: BTreeSet<String> = terms
            .iter()
            .map(|t| {
                let host = DecoratedTree::corolla(t.beta1.clone(), t.k1);
                let sub = DecoratedTree::corolla(t.beta2.clone(), t.k2);
                graft(&sub, &host, t.i).unwrap().code()
            })
            .collect();
        assert_eq!(grafted.len(), terms.len());
        assert_eq!(grafted, codes(&corner_strata(&g, k, &b, 1)), "k = {k}, beta = {b}");
    }
    let g0 = DiscreteSubmonoid::trivial();
    assert_eq!(boundary_terms(&g0, 3, &unit(), 2).len(), 2);
}

#[test]
fn boundary_sign_values() {
    assert_eq!(boundary_sign_eps(2, 1, 1, 0, 2), 4);
    for (k1, k2, mu2) in [(2, 2, 0), (3, 1, 2), (0, 4, -2)] {
        for dl in 0..4 {
            // with i - 1 even the dimension enters once
            let a = boundary_sign_eps(k1, k2, 1, mu2, dl);
            let b = boundary_sign_eps(k1, k2, 1, mu2, dl + 1);
            assert_eq!((b - a).rem_euclid(2), 1);
            let a3 = boundary_sign_eps(k1, k2, 3, mu2, dl);
            let b3 = boundary_sign_eps(k1, k2, 3, mu2, dl + 1);
            assert_eq!((b3 - a3).rem_euclid(2), 1);
        }
    }
    let g = DiscreteSubmonoid::trivial();
    for t in boundary_terms(&g, 2 + 1, &unit(), 3) {
        let e = boundary_sign_eps(t.k1 as i64, t.k2 as i64, t.i as i64, t.beta2.mu, 3);
        assert_eq!(t.sign, if e % 2 == 0 { 1 } else { -1 });
    }
}

#[test]
fn corner_tower_counts_are_binomial() {
    let g = DiscreteSubmonoid::trivial();
    let c = corner_tower_check(&g, 4, &unit(), 1, 1);
    assert_eq!((c.flagged, c.expected), (10, 10));
    assert!(c.ok);
    for k in 2..=6 {
        for m in 0..=4 {
            for l in 0..=4 - m {
                let c = corner_tower_check(&g, k, &unit(), m, l);
                assert!(c.ok, "k={k} m={m} l={l} {c:?}");
                let binom = (0..l).fold(1, |a, j| a * (m + l - j) / (j + 1));
                assert_eq!(c.flagged, binom * c.top_strata);
            }
        }
    }
    let gd = DiscreteSubmonoid::new(vec![el(1, 0)]).unwrap();
    let c = corner_tower_check(&gd, 3, &el(1, 0), 2, 1);
    assert!(c.ok && c.top_strata > 0);
    assert_eq!(c.flagged, 3 * c.top_strata);
}

#[test]
fn dimension_identity_holds_exhaustively() {
    let two = DecoratedTree::corolla(unit(), 2);
    assert_eq!(tree_dimension(&two, 2), 2);
    assert_eq!(tree_dimension(&graft(&two, &two, 1).unwrap(), 2), 2);
    let g = DiscreteSubmonoid::new(vec![el(1, 2)]).unwrap();
    for k in 0..=6 {
        for e in 0..=1 {
            let b = el(e, 2 * e);
            for t in enumerate_trees(&g, k, &b) {
                for dl in 0..4 {
                    assert_eq!(
                        tree_dimension(&t, dl),
                        b.mu + dl + k as i64 - 2 - t.corner_codim() as i64
                    );
                }
            }
        }
    }
}

#[test]
fn children_render_in_order() {
    let t = DecoratedTree {
        beta: el(1, 2),
        children: vec![Child::Leaf, Child::Node(Box::new(DecoratedTree::corolla(unit(), 2)))],
    };
    assert_eq!(t.code(), "[E:1,mu:2|x,[x,x]]");
    assert_eq!(t.to_string(), t.code());
}
