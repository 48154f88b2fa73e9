use std::sync::Arc;

use super::*;
use crate::graded::{rational, Generator};
use crate::varieties::{grassmannian, projective_space};

fn plane_bundle_n() -> Bundle {
    let p2 = projective_space(2);
    Bundle::new(2, p2.ring().parse_class("1 + h + h^2").unwrap()).unwrap()
}

fn free_sigma_ring() -> Arc<ChowRing> {
    ChowRing::free(
        "free",
        vec![Generator::new("s1", 1), Generator::new("s2", 2)],
        4,
    )
    .unwrap()
}

#[test]
fn bundle_validation() {
    let p2 = projective_space(2);
    let r = p2.ring();
    assert!(Bundle::new(1, r.parse_class("1 + h + h^2").unwrap()).is_err());
    assert!(Bundle::new(2, r.parse_class("2 + h").unwrap()).is_err());
    assert!(Bundle::line(&r.parse_class("h^2").unwrap()).is_err());
}

#[test]
fn segre_of_plane_bundle() {
    let n = plane_bundle_n();
    let s = n.segre_total();
    assert_eq!(s, n.ring().parse_class("1 - h").unwrap());
    assert_eq!(n.segre_class(1), n.ring().parse_class("-h").unwrap());
    assert!(n.segre_class(2).is_zero());
    let trivial = Bundle::trivial(n.ring(), 3);
    assert_eq!(trivial.segre_total(), GradedClass::one(n.ring()));
}

#[test]
fn segre_of_quotient_is_chern_of_kernel() {
    let g = grassmannian(4, 2).unwrap();
    assert_eq!(g.quotient().segre_total(), *g.kernel().chern());
    // in the free ring the expansion matches the printed c(K)
    let q = Bundle::new(2, free_sigma_ring().parse_class("1 + s1 + s2").unwrap()).unwrap();
    assert_eq!(
        q.segre_total(),
        q.ring()
            .parse_class("1 - s1 + s1^2 - s2 + 2*s1*s2 - s1^3 + s2^2 - 3*s1^2*s2 + s1^4")
            .unwrap()
    );
}

#[test]
fn dual_examples() {
    let p2 = projective_space(2);
    let o1 = p2.line_bundle(1);
    assert_eq!(o1.dual(), p2.line_bundle(-1));
    let n = plane_bundle_n();
    assert_eq!(n.dual().dual(), n);
    let nd = n.dual();
    for k in 0..=2 {
        let sign = if k % 2 == 0 {
            rational(1)
        } else {
            rational(-1)
        };
        assert_eq!(nd.segre_class(k), n.segre_class(k).scale(&sign));
    }
}

#[test]
fn whitney_examples() {
    let p2 = projective_space(2);
    let n = plane_bundle_n();
    let sum = n.whitney_sum(&Bundle::trivial(p2.ring(), 1)).unwrap();
    assert_eq!(sum.rank(), 3);
    assert_eq!(sum.chern(), n.chern());
    let ab = p2.line_bundle(2).whitney_sum(&p2.line_bundle(-3)).unwrap();
    assert_eq!(*ab.chern(), p2.ring().parse_class("1 - h - 6*h^2").unwrap());

    let g = grassmannian(4, 2).unwrap();
    let kq = g.kernel().whitney_sum(g.quotient()).unwrap();
    assert_eq!(*kq.chern(), GradedClass::one(g.ring()));
}

#[test]
fn symmetric_powers_of_plane_bundle() {
    let n = plane_bundle_n();
    let s3 = n.sym_power(3).unwrap();
    assert_eq!(s3.rank(), 4);
    assert_eq!(
        *s3.chern(),
        n.ring().parse_class("1 + 6*h + 21*h^2").unwrap()
    );
    let s5 = n.sym_power(5).unwrap();
    assert_eq!(s5.rank(), 6);
    assert_eq!(
        *s5.chern(),
        n.ring().parse_class("1 + 15*h + 120*h^2").unwrap()
    );
    assert_eq!(n.sym_power(1).unwrap(), n);
}

#[test]
fn sym5_of_universal_quotient_symbol_for_symbol() {
    let q = Bundle::new(2, free_sigma_ring().parse_class("1 + s1 + s2").unwrap()).unwrap();
    let expected = q
        .ring()
        .parse_class(
            "1 + 15*s1 + 85*s1^2 + 35*s2 + 225*s1^3 + 350*s1*s2 \
             + 274*s1^4 + 1183*s1^2*s2 + 259*s2^2",
        )
        .unwrap();
    assert_eq!(*q.sym_power(5).unwrap().chern(), expected);
}

#[test]
fn sym_square_of_split_bundle() {
    let p2 = projective_space(2);
    let (a, b) = (2, -1);
    let e = p2.line_bundle(a).whitney_sum(&p2.line_bundle(b)).unwrap();
    let expected = p2
        .line_bundle(2 * a)
        .whitney_sum(&p2.line_bundle(a + b))
        .unwrap()
        .whitney_sum(&p2.line_bundle(2 * b))
        .unwrap();
    assert_eq!(e.sym_power(2).unwrap(), expected);
}

#[test]
fn tensor_examples() {
    let p3 = projective_space(3);
    let n = Bundle::new(2, p3.ring().parse_class("1 + 2*h - h^2").unwrap()).unwrap();
    assert_eq!(n.tensor(&p3.line_bundle(0)).unwrap(), n);
    assert_eq!(
        p3.line_bundle(2).tensor(&p3.line_bundle(3)).unwrap(),
        p3.line_bundle(5)
    );
    let split = p3.line_bundle(1).whitney_sum(&p3.line_bundle(-2)).unwrap();
    let expected = p3.line_bundle(4).whitney_sum(&p3.line_bundle(1)).unwrap();
    assert_eq!(split.tensor(&p3.line_bundle(3)).unwrap(), expected);
}

#[test]
fn degenerate_ranks() {
    let p2 = projective_space(2);
    let zero = Bundle::trivial(p2.ring(), 0);
    assert_eq!(zero.sym_power(3).unwrap().rank(), 0);
    assert_eq!(zero.sym_power(0).unwrap().rank(), 1);
    assert_eq!(
        plane_bundle_n().sym_power(0).unwrap(),
        Bundle::trivial(p2.ring(), 1)
    );
    assert_eq!(zero.tensor(&plane_bundle_n()).unwrap().rank(), 0);
}

#[test]
fn multi_segre_examples() {
    let n = plane_bundle_n();
    let r = n.ring().clone();
    assert_eq!(
        multi_segre(std::slice::from_ref(&n), 2).unwrap(),
        n.segre_total()
    );
    assert_eq!(
        multi_segre(&[n.clone(), n.clone()], 2).unwrap(),
        r.parse_class("6 - 20*h + 20*h^2").unwrap()
    );
    assert_eq!(
        multi_segre_pushforward(&[n.clone(), n.clone()], 2).unwrap(),
        r.parse_class("6 - 20*h + 20*h^2").unwrap()
    );
    assert_eq!(
        multi_segre_pushforward(std::slice::from_ref(&n), 2).unwrap(),
        n.segre_total()
    );

    let pt = crate::graded::ChowRing::point();
    let rank2 = Bundle::trivial(&pt, 2);
    let three = vec![rank2.clone(), rank2.clone(), rank2];
    assert_eq!(
        multi_segre(&three, 0).unwrap().constant_term(),
        rational(90)
    );
    assert_eq!(
        multi_segre_pushforward(&three, 0).unwrap().constant_term(),
        rational(90)
    );
}

#[test]
fn multi_segre_rejects_mixed_rings() {
    let a = plane_bundle_n();
    let b = Bundle::trivial(&crate::graded::ChowRing::point(), 1);
    assert!(matches!(
        multi_segre(&[a.clone(), b.clone()], 2),
        Err(crate::Error::RingMismatch { .. })
    ));
    assert!(matches!(
        multi_segre_pushforward(&[a, b], 2),
        Err(crate::Error::RingMismatch { .. })
    ));
    assert!(multi_segre(&[], 2).is_err());
}

#[test]
fn first_chern_class_of_symmetric_powers() {
    // c1(Sym^d E) = binom(r+d-1, d) * d / r * c1(E)
    let p4 = projective_space(4);
    for r in 1..=3u32 {
        let mut e = Bundle::trivial(p4.ring(), 0);
        for i in 0..r {
            e = e.whitney_sum(&p4.line_bundle(i as i64 + 1)).unwrap();
        }
        for d in 1..=4u32 {
            let s = e.sym_power(d).unwrap();
            let factor = crate::graded::binomial((r + d - 1) as u64, d as u64) * d / r;
            assert_eq!(
                s.chern_class(1),
                e.chern_class(1).scale(&Rational::from_integer(factor))
            );
        }
    }
}
