//! Randomized property suites for the algebraic invariants: ring axioms,
//! Leibniz rules, canonical-form round trips, word expansion and
//! rearrangement identities, primality consequences, and kernel soundness.

use folia::parse::parse_polynomial;
use folia::*;
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

fn ctx3() -> Arc<VariableContext> {
    VariableContext::new(vec!["x", "y", "z"], vec![]).unwrap()
}

fn ctx2() -> Arc<VariableContext> {
    VariableContext::new(vec!["x", "y"], vec![]).unwrap()
}

fn random_poly(
    ctx: &Arc<VariableContext>,
    rng: &mut ChaCha8Rng,
    max_degree: u32,
    coeff_bound: i64,
) -> Polynomial {
    let monos = monomials_up_to(ctx.nvars(), max_degree);
    let terms = monos.into_iter().filter_map(|m| {
        let c = rng.gen_range(-coeff_bound..=coeff_bound);
        (c != 0 && rng.gen_bool(0.5)).then(|| (m, Scalar::from_integer(c)))
    });
    Polynomial::from_terms(ctx, terms)
}

#[test]
fn ring_axioms_hold_exactly() {
    let ctx = ctx3();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let a = random_poly(&ctx, &mut rng, 4, 3);
        let b = random_poly(&ctx, &mut rng, 4, 3);
        let c = random_poly(&ctx, &mut rng, 4, 3);
        // additive and multiplicative associativity
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // distributivity and commutativity
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a + &b, &b + &a);
    }
}

#[test]
fn derivative_satisfies_leibniz() {
    let ctx = ctx3();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let f = random_poly(&ctx, &mut rng, 3, 3);
        let g = random_poly(&ctx, &mut rng, 3, 3);
        for v in 0..3 {
            let left = f.try_mul(&g).unwrap().partial_derivative(v).unwrap();
            let right = f
                .try_mul(&g.partial_derivative(v).unwrap())
                .unwrap()
                .try_add(&f.partial_derivative(v).unwrap().try_mul(&g).unwrap())
                .unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn evaluation_is_a_ring_homomorphism() {
    let ctx = ctx3();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let f = random_poly(&ctx, &mut rng, 3, 3);
        let g = random_poly(&ctx, &mut rng, 3, 3);
        let point: Vec<Scalar> = (0..3)
            .map(|_| Scalar::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
            .collect();
        let ef = f.evaluate(&point).unwrap();
        let eg = g.evaluate(&point).unwrap();
        assert_eq!(f.try_mul(&g).unwrap().evaluate(&point).unwrap(), ef.mul(&eg));
        assert_eq!(f.try_add(&g).unwrap().evaluate(&point).unwrap(), ef.add(&eg));
    }
}

#[test]
fn rendering_round_trips_through_the_parser() {
    let ctx = ctx3();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let p = random_poly(&ctx, &mut rng, 4, 5);
        let reparsed = parse_polynomial(&ctx, &p.render()).unwrap();
        assert_eq!(reparsed, p, "round trip failed for {}", p.render());
    }
    // parameter-bearing coefficients
    let ctx = VariableContext::new(vec!["x", "y"], vec!["t1", "t2"]).unwrap();
    let t1 = Scalar::parameter(2, 0);
    let t2 = Scalar::parameter(2, 1);
    for _ in 0..50 {
        let monos = monomials_up_to(2, 3);
        let terms = monos.into_iter().filter_map(|m| {
            if !rng.gen_bool(0.4) {
                return None;
            }
            let base = Scalar::from_integer(rng.gen_range(-3..=3i64));
            let coeff = match rng.gen_range(0..4) {
                0 => base,
                1 => base.mul(&t1),
                2 => base.add(&t2.mul(&Scalar::from_integer(rng.gen_range(1..=3)))),
                _ => base
                    .add(&t1)
                    .div(&t2.add(&Scalar::from_integer(rng.gen_range(1..=3))))
                    .unwrap(),
            };
            (!coeff.is_zero()).then_some((m, coeff))
        });
        let p = Polynomial::from_terms(&ctx, terms);
        let reparsed = parse_polynomial(&ctx, &p.render()).unwrap();
        assert_eq!(reparsed, p, "round trip failed for {}", p.render());
    }
}

#[test]
fn normal_form_is_idempotent_on_random_ideals() {
    let ctx = ctx2();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..50 {
        let g1 = random_poly(&ctx, &mut rng, 2, 2);
        let g2 = random_poly(&ctx, &mut rng, 2, 2);
        let ideal = Ideal::new(&ctx, vec![g1, g2])
            .unwrap()
            .groebner_basis(MonomialOrder::Grevlex)
            .unwrap();
        let p = random_poly(&ctx, &mut rng, 3, 3);
        let nf = ideal.normal_form(&p).unwrap();
        assert_eq!(ideal.normal_form(&nf).unwrap(), nf);
    }
}

#[test]
fn hilbert_counts_are_non_decreasing() {
    let ctx = ctx2();
    let x = Polynomial::var(&ctx, 0).unwrap();
    let y = Polynomial::var(&ctx, 1).unwrap();
    let ideals = vec![
        Ideal::new(&ctx, vec![]).unwrap(),
        Ideal::new(&ctx, vec![x.clone()]).unwrap(),
        Ideal::new(&ctx, vec![&x.try_mul(&x).unwrap() - &y]).unwrap(),
    ];
    for ideal in &ideals {
        let values: Vec<u64> = (0..=10).map(|n| ideal.hilbert_h(n).unwrap()).collect();
        for w in values.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }
}

/// Independent recursive Leibniz splitting of an iterated derivative of a
/// product: a map from complementary ordered subword pairs to integer
/// multiplicities, built one letter at a time.
fn leibniz_expansion(word: &[usize]) -> BTreeMap<(Vec<usize>, Vec<usize>), i64> {
    let mut acc: BTreeMap<(Vec<usize>, Vec<usize>), i64> = BTreeMap::new();
    acc.insert((vec![], vec![]), 1);
    for &letter in word.iter().rev() {
        let mut next: BTreeMap<(Vec<usize>, Vec<usize>), i64> = BTreeMap::new();
        for ((left, right), mult) in &acc {
            let mut l = left.clone();
            l.insert(0, letter);
            *next.entry((l, right.clone())).or_insert(0) += mult;
            let mut r = right.clone();
            r.insert(0, letter);
            *next.entry((left.clone(), r)).or_insert(0) += mult;
        }
        acc = next;
    }
    acc
}

#[test]
fn word_leibniz_expansion_matches() {
    let ctx = ctx2();
    let x = Polynomial::var(&ctx, 0).unwrap();
    let y = Polynomial::var(&ctx, 1).unwrap();
    let d1 = Derivation::new(
        &ctx,
        vec![x.clone(), y.scale(&Scalar::from_integer(2))],
    )
    .unwrap();
    let d2 = Derivation::new(&ctx, vec![y.clone(), Polynomial::zero(&ctx)]).unwrap();
    let spec = FoliationSpec::from_named(
        vec![("A".into(), d1), ("B".into(), d2)],
        true,
        4,
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut words: Vec<Vec<usize>> = Vec::new();
    for len in 1..=3usize {
        for bits in 0..(1usize << len) {
            words.push((0..len).map(|i| (bits >> i) & 1).collect());
        }
    }
    for _ in 0..5 {
        let f = random_poly(&ctx, &mut rng, 2, 2);
        let g = random_poly(&ctx, &mut rng, 2, 2);
        let fg = f.try_mul(&g).unwrap();
        for word in &words {
            let direct = foliation::apply_word(&spec, word, &fg).unwrap();
            let mut expansion = Polynomial::zero(&ctx);
            for ((wl, wr), mult) in leibniz_expansion(word) {
                let lhs = foliation::apply_word(&spec, &wl, &f).unwrap();
                let rhs = foliation::apply_word(&spec, &wr, &g).unwrap();
                expansion = expansion
                    .try_add(
                        &lhs.try_mul(&rhs)
                            .unwrap()
                            .scale(&Scalar::from_integer(mult)),
                    )
                    .unwrap();
            }
            assert_eq!(direct, expansion, "expansion differs for word {word:?}");
        }
    }
}

fn permutations(word: &[usize]) -> Vec<Vec<usize>> {
    if word.len() <= 1 {
        return vec![word.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..word.len() {
        let mut rest = word.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            if !out.contains(&tail) {
                out.push(tail);
            }
        }
    }
    out
}

#[test]
fn rearrangements_agree_on_the_site() {
    // bracket-closed set {d/dx, x d/dy, d/dy}
    let ctx = ctx2();
    let x = Polynomial::var(&ctx, 0).unwrap();
    let ddx = Derivation::new(&ctx, vec![Polynomial::one(&ctx), Polynomial::zero(&ctx)])
        .unwrap();
    let xddy = Derivation::new(&ctx, vec![Polynomial::zero(&ctx), x.clone()]).unwrap();
    let spec = close_under_brackets(vec![("A".into(), ddx), ("B".into(), xddy)], 4, 16).unwrap();
    assert!(spec.bracket_closed);
    assert_eq!(spec.len(), 3);
    let origin = vec![Scalar::zero(), Scalar::zero()];
    // ord(x^4) at the origin is 4, so every |I| <= 4 qualifies
    let f = x.pow(4);
    let r = contact_order(
        &f,
        &spec,
        &Site::Point(origin.clone()),
        12,
        64,
    )
    .unwrap();
    assert_eq!(r.finite_order(), Some(4));
    let mut words: Vec<Vec<usize>> = Vec::new();
    for len in 1..=4usize {
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..len {
            stack = stack
                .into_iter()
                .flat_map(|w| {
                    (0..3usize).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        words.extend(stack);
    }
    for word in &words {
        let base = foliation::apply_word(&spec, word, &f).unwrap();
        for perm in permutations(word) {
            let other = foliation::apply_word(&spec, &perm, &f).unwrap();
            let diff = other.try_sub(&base).unwrap();
            assert!(
                diff.evaluate(&origin).unwrap().is_zero(),
                "rearrangement {perm:?} of {word:?} changed the value on the site"
            );
        }
    }
}

#[test]
fn certified_products_have_no_two_finite_factors() {
    let ctx = ctx2();
    let x = Polynomial::var(&ctx, 0).unwrap();
    let y = Polynomial::var(&ctx, 1).unwrap();
    let d = Derivation::new(
        &ctx,
        vec![x.clone(), y.scale(&Scalar::from_integer(2))],
    )
    .unwrap();
    let spec = FoliationSpec::from_named(vec![("D".into(), d)], true, 4).unwrap();
    let site = Site::Point(vec![Scalar::from_integer(1), Scalar::from_integer(1)]);
    let invariant_factor = &x.try_mul(&x).unwrap() - &y;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut certified = 0usize;
    for _ in 0..30 {
        let h = {
            let mut p = random_poly(&ctx, &mut rng, 2, 2);
            while p.is_zero() {
                p = random_poly(&ctx, &mut rng, 2, 2);
            }
            p
        };
        let g = random_poly(&ctx, &mut rng, 2, 2);
        let f = invariant_factor.try_mul(&h).unwrap();
        let product = f.try_mul(&g).unwrap();
        let fg = contact_order(&product, &spec, &site, 12, 64).unwrap();
        if !fg.is_infinite() {
            continue;
        }
        certified += 1;
        let rf = contact_order(&f, &spec, &site, 12, 64).unwrap();
        let rg = contact_order(&g, &spec, &site, 12, 64).unwrap();
        assert!(
            !(rf.finite_order().is_some() && rg.finite_order().is_some()),
            "both factors finite while the product is certified invariant: f={}, g={}",
            f.render(),
            g.render()
        );
    }
    assert!(certified > 0, "no certified products generated");
}

#[test]
fn truncated_kernels_are_sound_and_tangent() {
    let ctx = VariableContext::new(vec!["u", "v", "x", "y"], vec!["t1", "t2"]).unwrap();
    let u = Polynomial::var(&ctx, 0).unwrap();
    let v = Polynomial::var(&ctx, 1).unwrap();
    let x = Polynomial::var(&ctx, 2).unwrap();
    let y = Polynomial::var(&ctx, 3).unwrap();
    let d = Derivation::new(
        &ctx,
        vec![
            Polynomial::zero(&ctx),
            Polynomial::zero(&ctx),
            u.try_mul(&x).unwrap(),
            v.try_mul(&y).unwrap(),
        ],
    )
    .unwrap();
    let spec = FoliationSpec::from_named(vec![("D".into(), d)], true, 4).unwrap();
    let coords = vec![
        Scalar::from_integer(1),
        Scalar::from_integer(2),
        Scalar::one(),
        Scalar::one(),
    ];
    let point = EvalPoint::new(&ctx, coords.clone()).unwrap();
    let site = Site::Point(coords.clone());
    let kernel = truncated_invariant_ideal(&point, &spec, 3).unwrap();
    assert!(!kernel.is_empty());
    for k in &kernel {
        // containment: the variety passes through the point
        assert!(k.evaluate(&coords).unwrap().is_zero());
        // soundness: word checking up to the cap finds no witness
        let r = contact_order(k, &spec, &site, 12, 64).unwrap();
        assert!(
            r.finite_order().is_none(),
            "kernel element {} has finite order",
            k.render()
        );
        // tangency: derivatives of kernel elements stay annihilated
        for gen in spec.generators() {
            let dk = gen.apply(k).unwrap();
            if dk.is_zero() {
                continue;
            }
            let r = contact_order(&dk, &spec, &site, 11, 64).unwrap();
            assert!(
                r.finite_order().is_none(),
                "derivative {} of kernel element {} has finite order",
                dk.render(),
                k.render()
            );
        }
    }
}

#[test]
fn specialization_commutes_with_evaluation() {
    // evaluating after substituting parameters agrees with specializing the
    // symbolic value
    let ctx = VariableContext::new(vec!["x", "y"], vec!["t1", "t2"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let t1 = Scalar::parameter(2, 0);
    let t2 = Scalar::parameter(2, 1);
    for _ in 0..30 {
        let base = random_poly(&ctx, &mut rng, 3, 3);
        let p = base
            .scale(&t1)
            .try_add(&random_poly(&ctx, &mut rng, 2, 2).scale(&t2))
            .unwrap();
        let mut assign = BTreeMap::new();
        let a = BigRational::from_integer(rng.gen_range(-3..=3).into());
        let b = BigRational::from_integer(rng.gen_range(-3..=3).into());
        assign.insert("t1".to_string(), a.clone());
        assign.insert("t2".to_string(), b.clone());
        let specialized = p.specialize_params(&assign).unwrap();
        let point = vec![Scalar::from_integer(2), Scalar::from_ratio(1, 3)];
        let direct = specialized.evaluate(&point).unwrap();
        let symbolic = p.evaluate(&point).unwrap();
        let names = vec!["t1".to_string(), "t2".to_string()];
        let substituted = symbolic.specialize(&[a, b], &names).unwrap();
        assert_eq!(direct, substituted);
    }
}
