use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactfield::{orthogonal_basis, ProjPoint, Scalar, Vec3};
use crate::ringterms::{eval_poly, random_ring_term, CoeffMode, RingTerm};
use crate::terms::eval_projective;

use super::{compile_with_constants, frame_from_basis, theta_encode, Frame};

fn pt(v: Vec3) -> Option<ProjPoint> {
    ProjPoint::new(v).ok()
}

fn x(a: &ProjPoint, b: &ProjPoint) -> Option<ProjPoint> {
    a.cross(b)
}

/// Evaluates each frame identity directly on points for one `(r, s)`; `s`
/// must be nonzero for the general case of the normalizer.
pub fn check_identities(f: &Frame, r: &Scalar, s: &Scalar) -> Vec<(&'static str, bool)> {
    let [b1, b2, b3] = &f.basis;
    let th = |t: &Scalar| theta_encode(t, f);
    let v13 = f.v13();
    let slope_v3 = |t: &Scalar| pt(b1 - &b3.scale(t)).expect("independent");
    let slope_v2 = |t: &Scalar| pt(b3 - &b2.scale(t)).expect("independent");

    let frame = x(&f.v1, &f.v2).as_ref() == Some(&f.v3)
        && x(&f.v2, &f.v3).as_ref() == Some(&f.v1)
        && x(&f.v3, &f.v1).as_ref() == Some(&f.v2);

    let a = x(&slope_v2(r), &slope_v3(s)).and_then(|w| x(&f.v3, &w)) == Some(th(&(r * s)));
    let b = x(&f.v23, &th(s)).and_then(|w| x(&f.v2, &w)) == Some(slope_v3(s));
    let c = x(&v13, &th(r)).and_then(|w| x(&f.v1, &w)) == Some(slope_v2(r));
    let d = (|| {
        let left = x(&f.v23, &th(r))?;
        let right = x(&f.v2, &slope_v3(s))?;
        x(&f.v3, &x(&x(&left, &right)?, &f.v3)?)
    })() == Some(th(&(r - s)));
    let e = x(&f.v12, &f.v23).and_then(|w| x(&f.v2, &w)) == Some(v13.clone());

    let iota = |w: &ProjPoint| -> Option<ProjPoint> {
        let p = x(w, &f.v3)?;
        x(&p, &x(&x(&p, &f.v3)?, &f.v2)?)
    };
    let general = pt(&(b1 - &b2.scale(r)) + &b3.scale(s)).expect("independent");
    let f_general = !s.is_zero() && iota(&general) == Some(th(r));
    let f_fixed = iota(&th(r)) == Some(th(r));
    let plane = pt(b2 + &b3.scale(s)).expect("independent");
    let f_plane = iota(&plane).is_none() && iota(&f.v3).is_none();

    vec![
        ("frame", frame),
        ("a", a),
        ("b", b),
        ("c", c),
        ("d", d),
        ("e", e),
        ("f-general", f_general),
        ("f-fixed", f_fixed),
        ("f-plane", f_plane),
    ]
}

/// Outcome of comparing `t_p(Θ(x))` with `Θ(p(x))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Commutation {
    Agree,
    Undefined,
    Disagree,
}

pub fn check_commutation(p: &RingTerm, f: &Frame, point: &BTreeMap<String, Scalar>) -> Commutation {
    let t = compile_with_constants(p, f);
    let enc = point.iter().map(|(k, v)| (k.clone(), theta_encode(v, f))).collect();
    let expected = theta_encode(&eval_poly(p, point).expect("point binds all variables"), f);
    match eval_projective(&t, &enc).expect("constants are projective") {
        None => Commutation::Undefined,
        Some(v) if v == expected => Commutation::Agree,
        Some(_) => Commutation::Disagree,
    }
}

/// Small random rational with numerator in `[-n, n]` and denominator in `[1, d]`.
pub fn random_rational(rng: &mut impl Rng, n: i64, d: i64) -> Scalar {
    Scalar::from(BigRational::new(rng.gen_range(-n..=n).into(), rng.gen_range(1..=d).into()))
}

/// Rotated and rescaled copy of the standard basis with rational entries.
pub fn random_frame(rng: &mut impl Rng) -> Frame {
    let q = |rng: &mut _| {
        random_rational(rng, 9, 7).as_rational().cloned().expect("rational")
    };
    let skew = [q(rng), q(rng), q(rng)];
    let scales = [0; 3].map(|_| loop {
        let s = q(rng);
        if !num_traits::Zero::is_zero(&s) {
            break s;
        }
    });
    let (a, b, c) = orthogonal_basis(
        [&skew[0], &skew[1], &skew[2]],
        [&scales[0], &scales[1], &scales[2]],
    )
    .expect("nonzero scales");
    frame_from_basis([a, b, c]).expect("orthogonal")
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub frames: usize,
    pub identity_failures: Vec<String>,
    pub polys: usize,
    pub points: usize,
    pub agree: usize,
    pub undefined: usize,
    pub disagree: Vec<String>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.identity_failures.is_empty() && self.disagree.is_empty()
    }
}

/// Frame identities over `frames` random frames, then commutation of the
/// compiler with the encoding over `polys` random terms at `points` points each.
pub fn selftest(seed: u64, frames: usize, polys: usize, points: usize) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SelftestReport { seed, frames, polys, points, ..Default::default() };
    for i in 0..frames {
        let f = random_frame(&mut rng);
        let r = random_rational(&mut rng, 20, 10);
        let s = loop {
            let s = random_rational(&mut rng, 20, 10);
            if !s.is_zero() {
                break s;
            }
        };
        for (name, ok) in check_identities(&f, &r, &s) {
            if !ok {
                rep.identity_failures.push(format!("frame {i} ({f}), r={r}, s={s}: {name}"));
            }
        }
    }
    for i in 0..polys {
        let size = rng.gen_range(1..=30);
        let n_vars = rng.gen_range(1..=4);
        let p = random_ring_term(size, n_vars, rng.gen(), CoeffMode::Rational);
        let f = random_frame(&mut rng);
        for _ in 0..points {
            let pt: BTreeMap<String, Scalar> = p
                .variables()
                .into_iter()
                .map(|v| (v, random_rational(&mut rng, 10, 5)))
                .collect();
            match check_commutation(&p, &f, &pt) {
                Commutation::Agree => rep.agree += 1,
                Commutation::Undefined => rep.undefined += 1,
                Commutation::Disagree => rep.disagree.push(format!("poly {i}: {p} at {pt:?}")),
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringterms::parse_poly;
    use crate::vonstaudt::standard_frame;

    #[test]
    fn identities_on_standard_frame() {
        let f = standard_frame();
        for (r, s) in [(0, 1), (2, 3), (-5, 7), (1, -1)] {
            for (name, ok) in check_identities(&f, &Scalar::from_int(r), &Scalar::from_int(s)) {
                assert!(ok, "{name} at r={r}, s={s}");
            }
        }
    }

    #[test]
    fn commutation_example() {
        let p = parse_poly("(X1 + X2) * X1 - 1").unwrap();
        let pt = BTreeMap::from([("X1".to_string(), Scalar::from_int(2)), ("X2".to_string(), Scalar::from_int(3))]);
        assert_eq!(eval_poly(&p, &pt).unwrap(), Scalar::from_int(9));
        assert_eq!(check_commutation(&p, &standard_frame(), &pt), Commutation::Agree);
    }

    #[test]
    fn small_selftest() {
        let rep = selftest(7, 20, 10, 3);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.agree + rep.undefined, 30);
    }
}
