use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use surflap_core::invariants::{rank, symplectic_rank};
use surflap_core::laplacian::{
    crsf_enumerate, determinant, forman_sum, laplacian_matrix, skein_eval,
};
use surflap_core::random::{random_graph, RandomGraphParams};
use surflap_core::{
    module_invariants, smith_normal_form, EdgeId, IntMatrix, LaurentPoly, Monomial, Sign,
    SignedGraph, VariableSet, VertexId,
};

fn monomial(genus: usize, bound: i32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-bound..=bound, 2 * genus).prop_map(Monomial::from_exponents)
}

fn poly(genus: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, monomial(genus, 3)), 0..6)
        .prop_map(move |terms| LaurentPoly::from_terms(VariableSet::new(genus), terms))
}

fn poly_triple() -> impl Strategy<Value = (LaurentPoly, LaurentPoly, LaurentPoly)> {
    (1usize..=2).prop_flat_map(|g| (poly(g), poly(g), poly(g)))
}

fn small_graph() -> impl Strategy<Value = SignedGraph> {
    (any::<u64>(), 1u32..=5, 0u32..=7, 1usize..=2).prop_map(|(seed, n, m, genus)| {
        random_graph(
            seed,
            RandomGraphParams {
                vertices: n,
                edges: m,
                genus,
                max_exponent: 2,
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_string_round_trips(p in (1usize..=4).prop_flat_map(poly)) {
        let text = p.canonical_string();
        prop_assert_eq!(LaurentPoly::parse(p.vars(), &text).unwrap(), p);
    }
}

proptest! {
    #[test]
    fn ring_axioms((p, q, r) in poly_triple()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn bar_is_an_involutive_homomorphism((p, q, _r) in poly_triple()) {
        prop_assert_eq!(p.bar().bar(), p.clone());
        prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
        prop_assert_eq!((&p + &q).bar(), &p.bar() + &q.bar());
    }

    #[test]
    fn augmentation_is_a_homomorphism((p, q, _r) in poly_triple()) {
        prop_assert_eq!((&p * &q).augment(), p.augment() * q.augment());
        prop_assert_eq!((&p + &q).augment(), p.augment() + q.augment());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        (p, q, f, h) in (1usize..=2).prop_flat_map(|g| (
            poly(g),
            poly(g),
            prop::collection::vec(monomial(g, 2), 2 * g),
            prop::collection::vec(monomial(g, 2), 2 * g),
        ))
    ) {
        let vars = p.vars();
        let sub = |x: &LaurentPoly, images: &[Monomial]| x.substitute(images, vars).unwrap();
        prop_assert_eq!(sub(&(&p * &q), &f), &sub(&p, &f) * &sub(&q, &f));
        prop_assert_eq!(sub(&(&p + &q), &f), &sub(&p, &f) + &sub(&q, &f));
        // Substituting f then h equals substituting the composite (x_i -> f_i evaluated under h).
        let composite: Vec<Monomial> = f
            .iter()
            .map(|m| {
                let as_poly = LaurentPoly::monomial(vars, m.clone());
                sub(&as_poly, &h).leading().unwrap().0.clone()
            })
            .collect();
        prop_assert_eq!(sub(&sub(&p, &f), &h), sub(&p, &composite));
    }

    #[test]
    fn symplectic_rank_symmetries(p in (1usize..=2).prop_flat_map(poly)) {
        let r = symplectic_rank(&p).rank;
        prop_assert_eq!(symplectic_rank(&p.bar()).rank, r);
        prop_assert_eq!(symplectic_rank(&-&p).rank, r);
        prop_assert!(r <= p.vars().len());
    }

    #[test]
    fn triple_agreement(g in small_graph()) {
        let det = determinant(&laplacian_matrix(&g));
        prop_assert_eq!(&skein_eval(&g), &det);
        prop_assert_eq!(&forman_sum(&g).unwrap(), &det);
    }

    #[test]
    fn laplacian_shape(g in small_graph()) {
        let m = laplacian_matrix(&g);
        prop_assert!(m.is_bar_hermitian());
        let delta = determinant(&m);
        prop_assert_eq!(delta.bar(), delta.clone());
        prop_assert!(delta.augment().is_zero());
    }

    #[test]
    fn gauge_invariance(g in small_graph(), v in 0u32..5, u in monomial(2, 2)) {
        let vars = g.vars();
        let u = Monomial::from_exponents(u.exponents()[..vars.len()].to_vec());
        let v = VertexId(v % g.num_vertices() as u32);
        let h = g.gauge(v, &u).unwrap();
        prop_assert_eq!(determinant(&laplacian_matrix(&h)), determinant(&laplacian_matrix(&g)));
        let cycles = |x: &SignedGraph| {
            let mut all: Vec<Vec<Monomial>> = crsf_enumerate(x).unwrap().into_iter().map(|f| f.cycles).collect();
            all.sort();
            all
        };
        prop_assert_eq!(cycles(&h), cycles(&g));
    }

    #[test]
    fn contraction_preserves_forests(g in small_graph()) {
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            let c = g.contract_edge(e.id).unwrap();
            prop_assert_eq!(c.num_vertices() + 1, g.num_vertices());
            prop_assert_eq!(c.num_edges() + 1, g.num_edges());
            // CRSFs through e correspond to CRSFs of G/e with the same cycle connections.
            let after: BTreeMap<Vec<EdgeId>, Vec<Monomial>> = crsf_enumerate(&c)
                .unwrap()
                .into_iter()
                .map(|f| (sorted(f.edges), sorted(f.cycles)))
                .collect();
            let mut through_e = 0;
            for f in crsf_enumerate(&g).unwrap().into_iter().filter(|f| f.edges.contains(&e.id)) {
                through_e += 1;
                let rest: Vec<EdgeId> = f.edges.iter().copied().filter(|&id| id != e.id).collect();
                prop_assert_eq!(after.get(&sorted(rest)), Some(&sorted(f.cycles)));
            }
            prop_assert_eq!(through_e, after.len());
        }
    }

    #[test]
    fn union_is_multiplicative(a in small_graph(), b in small_graph()) {
        prop_assume!(a.vars() == b.vars());
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(
            determinant(&laplacian_matrix(&u)),
            &determinant(&laplacian_matrix(&a)) * &determinant(&laplacian_matrix(&b))
        );
        prop_assert_eq!(u.components().len(), a.components().len() + b.components().len());
    }

    #[test]
    fn connected_graphs_have_free_part(g in small_graph()) {
        for comp in g.components() {
            let sub = g.induced(&comp);
            prop_assert!(module_invariants(&sub).free_rank >= 1);
        }
    }

    #[test]
    fn snf_matches_determinantal_divisors(
        rows in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
    ) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        let (free_rank, torsion) = divisor_oracle(&rows);
        prop_assert_eq!(snf.free_rank, free_rank);
        prop_assert_eq!(snf.torsion, torsion);
    }

    #[test]
    fn rank_matches_minors(
        rows in (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    ) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let expected = (1..=rows.len().min(rows[0].len()))
            .rev()
            .find(|&k| !minors_gcd(&rows, k).is_zero())
            .unwrap_or(0);
        prop_assert_eq!(rank(&big), expected);
    }
}

#[test]
fn rg_moves_preserve_invariants() {
    for seed in 0..40u64 {
        let g = random_graph(
            seed,
            RandomGraphParams {
                vertices: 4,
                edges: 5,
                genus: 1,
                max_exponent: 2,
            },
        );
        let vars = g.vars();
        let delta = determinant(&laplacian_matrix(&g));
        let module = module_invariants(&g);
        let phi = Monomial::from_exponents(vec![(seed % 3) as i32 - 1, 1]);

        let sign = if seed % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let grown = g
            .rg1_add(VertexId(0), VertexId(9), EdgeId(99), sign, phi.clone())
            .unwrap();
        let d1 = determinant(&laplacian_matrix(&grown));
        assert!(d1 == delta || d1 == -&delta, "seed {seed}");
        assert_eq!(module_invariants(&grown), module);
        assert_eq!(grown.rg1_remove(VertexId(9)).unwrap(), g);

        let paired = g
            .rg2_add(
                VertexId(1),
                VertexId(2),
                (EdgeId(98), EdgeId(99)),
                phi.clone(),
            )
            .unwrap();
        assert_eq!(laplacian_matrix(&paired), laplacian_matrix(&g));

        let star = build_star(&g, vars, seed);
        let tri = star.rg3(VertexId(20)).unwrap();
        let ds = determinant(&laplacian_matrix(&star));
        let dt = determinant(&laplacian_matrix(&tri));
        assert!(ds == -&dt, "seed {seed}: star {ds} triangle {dt}");
        assert_eq!(module_invariants(&star), module_invariants(&tri));
    }
}

fn build_star(g: &SignedGraph, vars: VariableSet, seed: u64) -> SignedGraph {
    let mut vertices = g.vertices().to_vec();
    vertices.push(VertexId(20));
    let mut edges = g.edges().to_vec();
    let arms = [(0u32, Sign::Plus), (1, Sign::Minus), (3, Sign::Minus)];
    for (k, (w, s)) in arms.into_iter().enumerate() {
        let exps = vec![((seed as i32 + k as i32) % 3) - 1; vars.len()];
        edges.push(surflap_core::Edge {
            id: EdgeId(100 + k as u32),
            tail: VertexId(20),
            head: VertexId(w),
            sign: s,
            connection: Monomial::from_exponents(exps),
        });
    }
    SignedGraph::new(vars, vertices, edges).unwrap()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// Leibniz-formula determinant; independent of the library's elimination code.
fn leibniz(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut total = BigInt::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = BigInt::one();
        for (i, &j) in p.iter().enumerate() {
            term *= m[i][j];
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        total += term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s & (1 << i) != 0).collect())
        .collect()
}

/// gcd of all k x k minors.
fn minors_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(m.len(), k) {
        for cs in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i64>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                .collect();
            g = g.gcd(&leibniz(&sub));
        }
    }
    g
}

/// Cokernel invariants from determinantal divisors `d_k`: the invariant
/// factors are `d_k / d_{k-1}` and the free rank is `cols - rank`.
fn divisor_oracle(m: &[Vec<i64>]) -> (usize, Vec<BigInt>) {
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut torsion = Vec::new();
    let mut r = 0;
    for k in 1..=m.len().min(cols) {
        let d = minors_gcd(m, k);
        if d.is_zero() {
            break;
        }
        r = k;
        let factor = &d / &prev;
        if !factor.is_one() {
            torsion.push(factor);
        }
        prev = d;
    }
    (cols - r, torsion)
}
