mod common;

use poissonlie::decompose::{check_84, decompose};
use poissonlie::invariants::semi_invariants;
use poissonlie::lie::in_nat_span;

#[test]
fn fixtures_decompose() {
    for (name, g, q) in common::decompose_fixtures() {
        let r = decompose(&g, &q, 6, None).unwrap_or_else(|e| panic!("{name}: {e}"));
        r.verify(&g).unwrap();
        let book = r.bookkeeping(4);
        assert!(book.holds(), "{name}: {book:?}");
    }
}

#[test]
fn decomposition_is_deterministic() {
    for (_, g, q) in common::decompose_fixtures() {
        let a = decompose(&g, &q, 5, None).unwrap();
        let b = decompose(&g, &q, 5, None).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.pairs, b.pairs);
    }
}

#[test]
fn center_triviality_matches_weyl_shape() {
    for (name, g, q) in common::decompose_fixtures() {
        let c = check_84(&g, &q, 4).unwrap();
        assert!(c.agree(), "{name}");
    }
}

#[test]
fn weights_lie_in_the_jordan_holder_cone() {
    let mut algebras: Vec<_> = common::decompose_fixtures().into_iter().map(|(_, g, q)| (g, q)).collect();
    algebras.push((poissonlie::lie::LieAlgebra::aff2(), Default::default()));
    for (g, q) in algebras {
        let jh = g.jordan_holder().unwrap();
        let report = semi_invariants(&g, &q, 4).unwrap();
        for w in report.weights() {
            assert!(in_nat_span(&w, &jh.weights, 4));
        }
    }
}
