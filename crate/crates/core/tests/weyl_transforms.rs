mod common;

use poissonlie::poisson::{Derivation, LocalElement};
use poissonlie::weyl::{ChiContext, DEFAULT_NILPOTENCY_CAP};
use poissonlie::Poly;
use rand::Rng;

#[test]
fn partial_formula_matches_leibniz_bracket() {
    let (w, a) = common::b2t();
    let mut r = common::rng(21);
    for _ in 0..200 {
        let p = common::random_poly(&mut r, a.vars(), 5, 6);
        for i in 0..2 {
            let (bx, by) = w.bracket_via_partials(&p, i);
            assert_eq!(bx, a.bracket_poly(&Poly::var(w.x(i)), &p));
            assert_eq!(by, a.bracket_poly(&Poly::var(w.y(i)), &p));
        }
    }
}

#[test]
fn chi_and_theta_are_inverse() {
    let (a, d) = common::alpha_b1();
    let ctx = ChiContext::new(a.clone(), d, &Poly::var(0), DEFAULT_NILPOTENCY_CAP).unwrap();
    let mut r = common::rng(5);
    for _ in 0..60 {
        let p = common::random_poly(&mut r, a.vars(), 5, 5);
        let img = ctx.chi(&p).unwrap();
        assert_eq!(ctx.theta(&img).unwrap(), p);
        let q = ctx.target.nf(&common::random_poly(&mut r, ctx.target.vars(), 5, 5));
        assert_eq!(ctx.chi(&ctx.theta(&q).unwrap()).unwrap(), q);
    }
}

#[test]
fn split_recovers_secret_potential() {
    let (w, a) = common::b2t();
    let mut r = common::rng(9);
    let pair_vars: Vec<_> = a.vars()[..4].to_vec();
    for _ in 0..20 {
        let secret = common::random_poly(&mut r, &pair_vars, 4, 5);
        let inner = a.inner_derivation(&LocalElement::poly(secret.clone()));
        let mut images: Vec<Poly> = inner.poly_images().unwrap();
        let tpart = Poly::var(4).pow(r.gen_range(0..3)).scale(&common::small_rational(&mut r));
        images[4] = &images[4] + &tpart;
        let (b, rest) = w.split_derivation(&Derivation::from_polys(images)).unwrap();
        for v in 0..4 {
            assert_eq!(a.bracket_poly(&b, &Poly::var(v)), a.bracket_poly(&secret, &Poly::var(v)));
        }
        let rest = rest.poly_images().unwrap();
        assert!(rest[..4].iter().all(Poly::is_zero));
        assert_eq!(rest[4], tpart);
    }
}
