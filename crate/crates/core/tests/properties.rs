use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use crossprod::circuits::{coordinatize, eval_circuit, pit_random, sos, InputId, PitConfig, PitVerdict};
use crossprod::exactfield::{rational_rotation, Mat3, ProjPoint, Scalar, Vec3};
use crossprod::problems::{
    nonequiv_to_nontriv, projective_to_affine_xsat, verify_witness, xuvec_from_nontriv, Kind,
    ProblemInstance,
};
use crossprod::ringterms::{eval_poly, expand_dense, random_ring_term, CoeffMode, RingTerm};
use crossprod::search::{brute_search, SearchConfig};
use crossprod::terms::{
    eval_affine, eval_projective, parse_term, AffineAssignment, Assignment, CrossTerm, Mode,
    ProjAssignment,
};
use crossprod::vonstaudt::{
    gadget_mul, gadget_sub, random_frame, theta_encode, FrameRefs, Witness,
};

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn vec3() -> impl Strategy<Value = Vec3> {
    (scalar(), scalar(), scalar()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn nonzero_vec3() -> impl Strategy<Value = Vec3> {
    vec3().prop_filter("nonzero", |v| !v.is_zero())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rotation() -> impl Strategy<Value = Mat3> {
    ((-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4))
        .prop_map(|(p, q, r)| rational_rotation(&rat(p.0, p.1), &rat(q.0, q.1), &rat(r.0, r.1)))
}

const VARS: [&str; 3] = ["U", "V", "W"];

fn term() -> impl Strategy<Value = CrossTerm> {
    let leaf = prop_oneof![
        4 => (0usize..3).prop_map(|i| CrossTerm::var(VARS[i])),
        1 => (-2i64..=2, -2i64..=2, 1i64..=2).prop_map(|(a, b, c)| CrossTerm::affine(Vec3::from_ints(a, b, c))),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| CrossTerm::cross(&l, &r)))
}

fn var_term() -> impl Strategy<Value = CrossTerm> {
    let leaf = (0usize..3).prop_map(|i| CrossTerm::var(VARS[i]));
    leaf.prop_recursive(4, 12, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| CrossTerm::cross(&l, &r)))
}

fn assignment() -> impl Strategy<Value = AffineAssignment> {
    (nonzero_vec3(), nonzero_vec3(), nonzero_vec3()).prop_map(|(a, b, c)| {
        BTreeMap::from([("U".to_string(), a), ("V".to_string(), b), ("W".to_string(), c)])
    })
}

fn small_int_assignment() -> impl Strategy<Value = AffineAssignment> {
    let v = (-2i64..=2, -2i64..=2, -2i64..=2)
        .prop_filter("nonzero", |t| *t != (0, 0, 0))
        .prop_map(|(a, b, c)| Vec3::from_ints(a, b, c));
    (v.clone(), v.clone(), v).prop_map(|(a, b, c)| {
        BTreeMap::from([("U".to_string(), a), ("V".to_string(), b), ("W".to_string(), c)])
    })
}

fn to_proj(a: &AffineAssignment) -> ProjAssignment {
    a.iter().map(|(k, v)| (k.clone(), ProjPoint::new(v.clone()).unwrap())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    // exact vector arithmetic

    #[test]
    fn cross_anticommutes(v in vec3(), w in vec3()) {
        prop_assert_eq!(v.cross(&w), -&w.cross(&v));
    }

    #[test]
    fn cross_is_bilinear(u in vec3(), v in vec3(), w in vec3(), a in scalar(), b in scalar()) {
        let lin = &u.scale(&a) + &v.scale(&b);
        prop_assert_eq!(lin.cross(&w), &u.cross(&w).scale(&a) + &v.cross(&w).scale(&b));
        prop_assert_eq!(w.cross(&lin), &w.cross(&u).scale(&a) + &w.cross(&v).scale(&b));
    }

    #[test]
    fn cross_is_orthogonal(v in vec3(), w in vec3(), l in scalar()) {
        let c = v.cross(&w);
        prop_assert!(c.dot(&v).is_zero());
        prop_assert!(c.dot(&w).is_zero());
        prop_assert!(v.cross(&v.scale(&l)).is_zero());
    }

    #[test]
    fn cross_is_rotation_equivariant(o in rotation(), v in vec3(), w in vec3()) {
        prop_assert!(o.is_rotation());
        prop_assert_eq!(o.mul_vec(&v).cross(&o.mul_vec(&w)), o.mul_vec(&v.cross(&w)));
    }

    #[test]
    fn projective_canonical_form(v in nonzero_vec3(), w in nonzero_vec3(), l in scalar()) {
        let p = ProjPoint::new(v.clone()).unwrap();
        prop_assert_eq!(ProjPoint::new(p.vec().clone()).unwrap(), p.clone());
        if !l.is_zero() {
            prop_assert_eq!(ProjPoint::new(v.scale(&l)).unwrap(), p.clone());
        }
        let r = ProjPoint::new(w).unwrap();
        prop_assert_eq!(p.cross(&r), r.cross(&p));
    }

    #[test]
    fn quadratic_extension_arithmetic(a1 in scalar(), b1 in scalar(), a2 in scalar(), b2 in scalar(),
                                      d in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let d = Scalar::from_int(d);
        let x = Scalar::quad(&a1, &b1, &d).unwrap();
        let y = Scalar::quad(&a2, &b2, &d).unwrap();
        let sum = Scalar::quad(&(&a1 + &a2), &(&b1 + &b2), &d).unwrap();
        let prod = Scalar::quad(
            &(&(&a1 * &a2) + &(&(&b1 * &b2) * &d)),
            &(&(&a1 * &b2) + &(&a2 * &b1)),
            &d,
        ).unwrap();
        prop_assert_eq!(&x + &y, sum);
        prop_assert_eq!(&x * &y, prod);
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
        // rational inputs embed unchanged
        prop_assert_eq!(Scalar::quad(&a1, &Scalar::zero(), &d).unwrap(), a1.clone());
    }

    // terms

    #[test]
    fn term_round_trip(t in term()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn term_homogeneity(t in term(), a in assignment(), l in scalar(), j in 0usize..3) {
        let base = eval_affine(&t, &a).unwrap();
        let mut b = a.clone();
        let name = VARS[j].to_string();
        b.insert(name.clone(), a[&name].scale(&l));
        let d = t.multidegree().get(&name).copied().unwrap_or(0) as u32;
        prop_assert_eq!(eval_affine(&t, &b).unwrap(), base.scale(&l.pow(d)));
    }

    #[test]
    fn projective_matches_affine(t in var_term(), a in assignment()) {
        let affine = eval_affine(&t, &a).unwrap();
        let proj = eval_projective(&t, &to_proj(&a)).unwrap();
        match proj {
            Some(p) => prop_assert_eq!(ProjPoint::new(affine).unwrap(), p),
            None => prop_assert!(affine.is_zero()),
        }
    }

    #[test]
    fn terms_are_rotation_equivariant(t in var_term(), a in assignment(), o in rotation()) {
        let ra: AffineAssignment = a.iter().map(|(k, v)| (k.clone(), o.mul_vec(v))).collect();
        prop_assert_eq!(eval_affine(&t, &ra).unwrap(), o.mul_vec(&eval_affine(&t, &a).unwrap()));
    }

    // ring terms

    #[test]
    fn dense_expansion_is_a_homomorphism(s1 in 1usize..12, s2 in 1usize..12, seed in any::<u64>()) {
        let p = random_ring_term(s1, 2, seed, CoeffMode::Rational);
        let r = random_ring_term(s2, 2, seed ^ 0x9e37, CoeffMode::Rational);
        let (ep, er) = (expand_dense(&p).unwrap(), expand_dense(&r).unwrap());
        prop_assert_eq!(expand_dense(&RingTerm::add(p.clone(), r.clone())).unwrap(), ep.add(&er));
        prop_assert_eq!(expand_dense(&RingTerm::mul(p.clone(), r.clone())).unwrap(), ep.mul(&er));
        prop_assert_eq!(expand_dense(&RingTerm::sub(p, r)).unwrap(), ep.sub(&er));
    }

    #[test]
    fn dense_expansion_evaluates_alike(size in 1usize..20, seed in any::<u64>(), x in scalar(), y in scalar()) {
        let p = random_ring_term(size, 2, seed, CoeffMode::Rational);
        let at = BTreeMap::from([("X1".to_string(), x), ("X2".to_string(), y)]);
        prop_assert_eq!(expand_dense(&p).unwrap().eval(&at).unwrap(), eval_poly(&p, &at).unwrap());
    }

    // gadgets

    #[test]
    fn gadgets_compose(seed in any::<u64>(), r in scalar(), s in scalar()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let f = random_frame(&mut rng);
        let refs = FrameRefs::constants(&f);
        let th = |x: &Scalar| CrossTerm::proj(theta_encode(x, &f));
        // Θ(r·s − 1) = ⊖(⊗(Θr, Θs), Θ(1))
        let t = gadget_sub(&gadget_mul(&th(&r), &th(&s), &refs), &th(&Scalar::one()), &refs);
        let v = eval_projective(&t, &BTreeMap::new()).unwrap();
        prop_assert_eq!(v, Some(theta_encode(&(&(&r * &s) - &Scalar::one()), &f)));
    }

    // circuits

    #[test]
    fn nonzero_verdicts_verify(t in var_term(), seed in any::<u64>()) {
        let c = sos(&coordinatize(&t).unwrap()).unwrap();
        let v = pit_random(&c, &PitConfig { k: 2, trials: 2, seed }).unwrap();
        if let PitVerdict::NonZero { point, value } = v {
            let p: BTreeMap<InputId, Scalar> = point.into_iter().map(|(k, x)| (k, Scalar::from_bigint(x))).collect();
            let out = eval_circuit(&c, &p).unwrap();
            prop_assert!(!out[0].is_zero());
            prop_assert_eq!(&out[0], &value);
        }
    }

    #[test]
    fn node_count_is_linear(t in term()) {
        let c = coordinatize(&t).unwrap();
        prop_assert!(c.node_count() as u64 <= 12 * t.leaf_count() + 9);
    }

    // problems

    #[test]
    fn nonequiv_transport(s in var_term(), t in var_term(), a in small_int_assignment()) {
        let src = ProblemInstance::new(Kind::XNonequiv, Mode::Projective, vec![s.clone(), t.clone()]).unwrap();
        let dst = nonequiv_to_nontriv(&s, &t).unwrap();
        let w = Witness::new(Assignment::Projective(to_proj(&a)));
        prop_assert_eq!(verify_witness(&src, &w).is_accept(), verify_witness(&dst, &w).is_accept());
    }

    #[test]
    fn nontriv_is_mode_independent(t in var_term(), a in small_int_assignment()) {
        let aff = ProblemInstance::new(Kind::XNontriv, Mode::Affine, vec![t.clone()]).unwrap();
        let proj = ProblemInstance::new(Kind::XNontriv, Mode::Projective, vec![t]).unwrap();
        let wa = Witness::new(Assignment::Affine(a.clone()));
        let wp = Witness::new(Assignment::Projective(to_proj(&a)));
        prop_assert_eq!(verify_witness(&aff, &wa).is_accept(), verify_witness(&proj, &wp).is_accept());
    }

    #[test]
    fn xuvec_transport_hits_e3(t in var_term(), a in small_int_assignment()) {
        let u = eval_affine(&t, &a).unwrap();
        prop_assume!(!u.is_zero());
        match xuvec_from_nontriv(&t, &Witness::new(Assignment::Affine(a))) {
            Ok(x) => {
                let inst = ProblemInstance::new(Kind::XUvec, Mode::Affine, vec![t]).unwrap();
                prop_assert!(verify_witness(&inst, &x.witness).is_accept());
                prop_assert!(x.rotation.is_rotation());
            }
            Err(crossprod::problems::ProblemError::NotConstructible(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn projective_xsat_transport(s in var_term(), a in small_int_assignment()) {
        // designate the value's own point as a fresh variable D
        let proj = to_proj(&a);
        let Some(value) = eval_projective(&s, &proj).unwrap() else { return Ok(()) };
        let inst = ProblemInstance::xsat(s.clone(), Mode::Projective, Some("D".into()));
        let mut asg = proj.clone();
        asg.insert("D".into(), value);
        let inst = ProblemInstance { terms: vec![s], ..inst.unwrap_or_else(|_| unreachable!()) };
        let w = Witness::new(Assignment::Projective(asg));
        prop_assert!(verify_witness(&inst, &w).is_accept());
        let t = projective_to_affine_xsat(&inst).unwrap();
        match t.forward(&w) {
            Ok(f) => {
                prop_assert!(verify_witness(&t.instance, &f).is_accept());
                let back = t.backward(&f).unwrap();
                prop_assert!(verify_witness(&inst, &back).is_accept());
            }
            Err(crossprod::problems::ProblemError::NotConstructible(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn search_finds_planted_witnesses(t in var_term(), a in small_int_assignment()) {
        let aff = ProblemInstance::new(Kind::XNontriv, Mode::Affine, vec![t.clone()]).unwrap();
        let planted = !eval_affine(&t, &a).unwrap().is_zero();
        let cfg = SearchConfig { bound: 2, budget: 5_000_000, ..SearchConfig::default() };
        let r = brute_search(&aff, &cfg).unwrap();
        if let Some(w) = r.witness() {
            prop_assert!(verify_witness(&aff, w).is_accept());
        }
        if planted {
            prop_assert!(r.witness().is_some());
        }
        prop_assert_eq!(r.clone(), brute_search(&aff, &cfg).unwrap());
    }
}

#[test]
fn search_and_expansion_agree_on_small_terms() {
    // a term is nontrivial iff its coordinate polynomials are not all zero
    for leaves in 1..=4 {
        for t in crossprod::terms::enumerate_terms(leaves, &["V", "W"]) {
            let zero = sos(&coordinatize(&t).unwrap()).unwrap().expand_outputs()[0].is_zero();
            let inst = ProblemInstance::new(Kind::XNontriv, Mode::Affine, vec![t.clone()]).unwrap();
            let r = brute_search(&inst, &SearchConfig { bound: 2, ..SearchConfig::default() }).unwrap();
            assert_eq!(r.witness().is_none(), zero, "{t}");
        }
    }
}
