mod common;

use proptest::prelude::*;

use hochlie_core::derlie::{
    bracket, delta_coordinates, derivation_matrix, derivation_space, hh1, inner_space, leibniz_failure, loop_criterion,
    radical_filter,
};
use hochlie_core::dsl::{parse_presentation, render, render_json};
use hochlie_core::kronecker::{
    all_maximal_chains, chain_report, is_surjective_chain, standard_relations_literal, verify_chain,
};
use hochlie_core::oracle::{
    bar_hh1_dim, delta_on_table, derivations_from_table, is_derivation, restrict_derivation, CochainProblem,
};
use hochlie_core::{build_algebra, AlgebraTable, FieldDescriptor, Presentation, Quiver, Relation, Scalar};

/// Raw material for a random bound quiver algebra: vertices, forward edges
/// with multiplicity 1 or 2, nilpotent loops, and one choice per length-2 path.
#[derive(Clone, Debug)]
struct Seed {
    n: usize,
    edges: Vec<(usize, usize, bool)>,
    loops: Vec<(usize, usize)>,
    choices: Vec<(u8, i64, i64)>,
    prime: bool,
}

fn seed() -> impl Strategy<Value = Seed> {
    (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((0..n, 0..n, any::<bool>()), 0..=4),
            prop::collection::vec((0..n, 2usize..=3), 0..=2),
            prop::collection::vec((0u8..4, -3i64..=3, -3i64..=3), 12),
            prop::bool::weighted(0.2),
        )
            .prop_map(|(n, edges, loops, choices, prime)| Seed { n, edges, loops, choices, prime })
    })
}

fn presentation(s: &Seed) -> Presentation {
    let field = if s.prime { FieldDescriptor::prime(3).unwrap() } else { FieldDescriptor::Rationals };
    let vs: Vec<String> = (1..=s.n).map(|i| i.to_string()).collect();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    for &(x, y, double) in &s.edges {
        let (u, v) = (x.min(y), x.max(y));
        if u == v || !used.insert((u, v)) {
            continue;
        }
        for _ in 0..if double { 2 } else { 1 } {
            arrows.push((format!("a{}", arrows.len()), u, v));
        }
    }
    let mut relations = Vec::new();
    let mut looped = std::collections::BTreeSet::new();
    for &(v, k) in &s.loops {
        if looped.insert(v) {
            let l = format!("x{v}");
            arrows.push((l.clone(), v, v));
            relations.push(Relation::new([(field.one(), vec![l; k])]));
        }
    }
    let q = Quiver::new(
        &vs,
        &arrows.iter().map(|(l, u, v)| (l.clone(), vs[*u].clone(), vs[*v].clone())).collect::<Vec<_>>(),
    )
    .unwrap();
    // length-2 paths through distinct vertices
    let mut paths: Vec<(usize, usize)> = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        for (j, b) in q.arrows().iter().enumerate() {
            if a.target == b.source && a.source != a.target && b.source != b.target {
                paths.push((i, j));
            }
        }
    }
    let label = |(i, j): (usize, usize)| vec![q.arrow(i).label.clone(), q.arrow(j).label.clone()];
    for (k, &p) in paths.iter().enumerate() {
        let (choice, c1, c2) = s.choices[k % s.choices.len()];
        match choice {
            1 => relations.push(Relation::new([(field.one(), label(p))])),
            2 => {
                let end = |(i, j): (usize, usize)| (q.arrow(i).source, q.arrow(j).target);
                if let Some(&other) = paths.iter().skip(k + 1).find(|&&o| end(o) == end(p)) {
                    let (c1, c2) = (field.from_i64(c1), field.from_i64(c2));
                    if !c1.is_zero() && !c2.is_zero() {
                        relations.push(Relation::new([(c1, label(p)), (c2, label(other))]));
                    }
                }
            }
            _ => {}
        }
    }
    Presentation::new(q, relations, field)
}

fn algebra(s: &Seed) -> AlgebraTable {
    build_algebra(&presentation(s)).unwrap()
}

fn zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn shuffled(n: usize, key: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (key[i % key.len()], i));
    order
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_is_associative_and_unital(s in seed()) {
        let a = algebra(&s);
        let t = a.table();
        prop_assert_eq!(t.associativity_failure(), None);
        let one = t.unit().expect("unit");
        for i in 0..a.dim() {
            let x = t.basis_vector(i);
            prop_assert_eq!(t.mul(&one, &x), x.clone());
            prop_assert_eq!(t.mul(&x, &one), x);
        }
        for i in 0..a.vertex_count() {
            for j in 0..a.vertex_count() {
                let p = t.dense_product(i, j);
                let want = if i == j { t.basis_vector(i) } else { t.zero() };
                prop_assert_eq!(p, want);
            }
        }
    }

    #[test]
    fn relations_vanish_and_arrows_are_normal(s in seed()) {
        let a = algebra(&s);
        for p in a.relation_polys() {
            prop_assert!(zero(&a.normal_form_poly(p)));
        }
        for i in 0..a.quiver().arrow_count() {
            let label = a.quiver().arrow(i).label.clone();
            prop_assert_eq!(a.normal_form_labels(&[label.as_str()]).unwrap(), a.basis_vector(a.arrow_index(i)));
        }
    }

    #[test]
    fn radical_filtration(s in seed()) {
        let a = algebra(&s);
        let dims = a.rad_dims();
        prop_assert_eq!(dims[0], a.dim());
        prop_assert_eq!(*dims.last().unwrap(), 0);
        prop_assert!(dims.windows(2).all(|w| w[0] > w[1]));
        let r1 = a.radical_power_basis(1);
        for k in 1..dims.len() {
            let next = a.radical_power(k + 1);
            for x in &r1 {
                for y in a.radical_power_basis(k) {
                    prop_assert!(next.contains(&a.mul(x, &y)));
                }
            }
        }
    }

    #[test]
    fn arrow_permutation_preserves_invariants(s in seed(), key in prop::collection::vec(0usize..100, 8)) {
        let p = presentation(&s);
        let a = build_algebra(&p).unwrap();
        let b = build_algebra(&p.with_arrow_order(&shuffled(p.quiver.arrow_count(), &key))).unwrap();
        prop_assert_eq!(a.dim(), b.dim());
        prop_assert_eq!(a.rad_dims(), b.rad_dims());
        prop_assert_eq!(hh1(&a, false).dim(), hh1(&b, false).dim());
        prop_assert_eq!(hh1(&a, true).dim(), hh1(&b, true).dim());
        if a.field().characteristic() != 2 {
            let (ra, rb) = (chain_report(&a, &hh1(&a, true), false), chain_report(&b, &hh1(&b, true), false));
            prop_assert_eq!(ra.m, rb.m);
        }
    }

    #[test]
    fn relation_rescaling_preserves_invariants(s in seed(), scale in prop::collection::vec(1i64..=5, 12)) {
        let p = presentation(&s);
        let f = p.field;
        let mut q = p.clone();
        for (i, r) in q.relations.iter_mut().enumerate() {
            let c = f.from_i64(scale[i % scale.len()]);
            if !c.is_zero() {
                *r = r.scaled(&c);
            }
        }
        let (a, b) = (build_algebra(&p).unwrap(), build_algebra(&q).unwrap());
        prop_assert_eq!(a.rad_dims(), b.rad_dims());
        prop_assert_eq!(hh1(&a, false).dim(), hh1(&b, false).dim());
        let (ra, rb) = (chain_report(&a, &hh1(&a, true), false), chain_report(&b, &hh1(&b, true), false));
        prop_assert_eq!(ra.m, rb.m);
    }

    #[test]
    fn derivations_satisfy_leibniz(s in seed()) {
        let a = algebra(&s);
        let der = derivation_space(&a);
        for d in der.basis.iter() {
            prop_assert_eq!(leibniz_failure(&a, &derivation_matrix(&a, &der.slots, d)), None);
        }
        let inner = inner_space(&a);
        prop_assert!(inner.is_subspace_of(&der));
        let rad = radical_filter(&der, &a);
        prop_assert!(rad.is_subspace_of(&der));
        prop_assert!(inner.is_subspace_of(&rad));
    }

    #[test]
    fn hh1_is_a_lie_algebra(s in seed()) {
        let a = algebra(&s);
        for rad in [false, true] {
            let h = hh1(&a, rad);
            prop_assert!(h.lie.is_antisymmetric());
            prop_assert_eq!(h.lie.jacobi_failure(), None);
            prop_assert_eq!(h.dim(), h.der.dim() - h.inner.dim());
        }
        let lc = loop_criterion(&a);
        if lc.holds {
            prop_assert_eq!(hh1(&a, false).dim(), hh1(&a, true).dim());
        }
    }

    #[test]
    fn solvability_passes_down_from_radical_square_zero(s in seed()) {
        let a = algebra(&s);
        let top = build_algebra(&a.presentation().radical_square_zero()).unwrap();
        if hh1(&top, true).lie.derived_series().solvable {
            prop_assert!(hh1(&a, true).lie.derived_series().solvable);
        }
    }

    #[test]
    fn delta_is_a_homomorphism_killing_inner(s in seed()) {
        let a = algebra(&s);
        prop_assume!(a.field().characteristic() != 2);
        let h = hh1(&a, true);
        let slots = h.slots();
        let report = chain_report(&a, &h, false);
        for p in report.pairs.iter().filter(|p| p.delta_defined) {
            for u in &h.inner.basis {
                prop_assert!(delta_coordinates(&a, slots, p.a, p.b, u).is_zero());
            }
            let reps: Vec<_> = h.reps.iter().chain(&h.inner.basis).collect();
            for x in &reps {
                for y in &reps {
                    let lhs = delta_coordinates(&a, slots, p.a, p.b, &bracket(&a, slots, x, y));
                    let dx = delta_coordinates(&a, slots, p.a, p.b, x);
                    let dy = delta_coordinates(&a, slots, p.a, p.b, y);
                    prop_assert_eq!(lhs, dx.bracket(&dy));
                }
            }
        }
    }

    #[test]
    fn chains_are_maximal_and_standard_ones_surjective(s in seed()) {
        let a = algebra(&s);
        prop_assume!(a.field().characteristic() != 2);
        let h = hh1(&a, true);
        for c in all_maximal_chains(&a) {
            prop_assert!(verify_chain(&a, &c));
            let sur = is_surjective_chain(&a, &h, &c).unwrap();
            let defined = sur.per_pair.iter().any(|p| p.image.is_some());
            if defined && standard_relations_literal(&a, &c).holds() {
                prop_assert!(sur.surjective);
            }
            if sur.surjective {
                prop_assert!(sur.kernels_coincide);
                prop_assert!(sur.per_pair.iter().filter(|p| p.image.is_some()).all(|p| p.surjective));
            }
        }
    }

    #[test]
    fn oracle_agrees_with_derivations(s in seed()) {
        let a = algebra(&s);
        prop_assume!(a.dim() <= 24);
        let problem = CochainProblem::new(a.table()).unwrap();
        prop_assert!(problem.composite_vanishes());
        prop_assert_eq!(bar_hh1_dim(&a).unwrap(), hh1(&a, false).dim());
        prop_assert_eq!(derivations_from_table(a.table(), true).unwrap().len(), derivation_space(&a).dim());
    }

    #[test]
    fn restriction_to_corners(s in seed(), mask in 1u8..16) {
        let a = algebra(&s);
        let vertices: Vec<usize> = (0..a.vertex_count()).filter(|v| mask >> v & 1 == 1).collect();
        prop_assume!(!vertices.is_empty());
        let sub = a.idempotent_subalgebra(&vertices);
        let keep = a.corner_indices(&vertices);
        let der = derivation_space(&a);
        let pairs = if a.field().characteristic() != 2 {
            chain_report(&a, &hh1(&a, true), false).pairs
        } else {
            Vec::new()
        };
        for d in &der.basis {
            let f = restrict_derivation(&a, &der.slots, d, &vertices);
            prop_assert!(f.is_some());
            let f = f.unwrap();
            prop_assert!(is_derivation(&sub, &f));
            for p in &pairs {
                let pos = |arrow: usize| keep.iter().position(|&k| k == a.arrow_index(arrow));
                if let (Some(ia), Some(ib)) = (pos(p.a), pos(p.b)) {
                    prop_assert_eq!(delta_on_table(&sub, &f, ia, ib), delta_coordinates(&a, &der.slots, p.a, p.b, d));
                }
            }
        }
    }

    #[test]
    fn presentations_round_trip(s in seed()) {
        let p = presentation(&s);
        prop_assert_eq!(parse_presentation(&render(&p), None).unwrap(), p.clone());
        prop_assert_eq!(parse_presentation(&render_json(&p), None).unwrap(), p);
    }
}

#[test]
fn corpus_round_trips() {
    for name in common::corpus_names() {
        let p = common::presentation(&name);
        assert_eq!(parse_presentation(&render(&p), None).unwrap(), p, "{name}");
        assert_eq!(parse_presentation(&render_json(&p), None).unwrap(), p, "{name}");
    }
}

#[test]
fn corpus_solvability_cascade() {
    for (name, a) in common::corpus() {
        let top = build_algebra(&a.presentation().radical_square_zero()).unwrap();
        if hh1(&top, true).lie.derived_series().solvable {
            assert!(hh1(&a, true).lie.derived_series().solvable, "{name}");
        }
    }
}
