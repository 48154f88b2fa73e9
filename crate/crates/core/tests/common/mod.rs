//! Strategies, oracles and property checks shared by the property suite and
//! the acceptance run.

#![allow(dead_code)]

use std::sync::Arc;

use chowcalc::bundle::{multi_segre, multi_segre_pushforward};
use chowcalc::cli::{parse, Expr, Func};
use chowcalc::graded::{binomial, multinomial, rational, Generator};
use chowcalc::residual::{contribution, Normal};
use chowcalc::varieties::{grassmannian, schubert_integral_oracle, ProjectiveSpace};
use chowcalc::{Bundle, ChowRing, GradedClass, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Check = Result<(), TestCaseError>;

pub fn p4() -> Arc<ChowRing> {
    ProjectiveSpace::new(4).ring().clone()
}

pub fn g52() -> Arc<ChowRing> {
    grassmannian(5, 2).unwrap().ring().clone()
}

fn basis_len(ring: &Arc<ChowRing>) -> usize {
    ring.basis().iter().map(Vec::len).sum()
}

/// Class with the given coefficients on the normal monomials, in degree order.
fn class_from(ring: &Arc<ChowRing>, coeffs: &[i64]) -> GradedClass {
    let monomials = ring.basis().into_iter().flatten();
    let mut acc = GradedClass::zero(ring);
    for (m, &c) in monomials.zip(coeffs) {
        acc = acc
            .add(&GradedClass::monomial(ring, m, rational(c)))
            .unwrap();
    }
    acc
}

pub fn classes(ring: Arc<ChowRing>) -> impl Strategy<Value = GradedClass> {
    let n = basis_len(&ring);
    prop::collection::vec(-5i64..=5, n).prop_map(move |c| class_from(&ring, &c))
}

/// A bundle of the given rank with random Chern classes `c_1..c_rank`.
fn bundle_from(ring: &Arc<ChowRing>, rank: u32, coeffs: &[i64]) -> Bundle {
    let mut chern = GradedClass::one(ring);
    let mut it = coeffs.iter();
    for d in 1..=rank.min(ring.dimension()) {
        for m in ring.basis()[d as usize].iter() {
            let c = *it.next().unwrap_or(&0);
            chern = chern
                .add(&GradedClass::monomial(ring, m.clone(), rational(c)))
                .unwrap();
        }
    }
    Bundle::new(rank, chern).unwrap()
}

pub fn bundles(
    ring: Arc<ChowRing>,
    ranks: std::ops::RangeInclusive<u32>,
) -> impl Strategy<Value = Bundle> {
    let n = basis_len(&ring);
    (ranks, prop::collection::vec(-4i64..=4, n)).prop_map(move |(r, c)| bundle_from(&ring, r, &c))
}

/// Direct sum of line bundles `O(a_i)` on P4.
pub fn split(a: &[i64]) -> Bundle {
    let p = ProjectiveSpace::new(4);
    a.iter()
        .map(|&d| p.line_bundle(d))
        .fold(Bundle::trivial(p.ring(), 0), |acc, l| {
            acc.whitney_sum(&l).unwrap()
        })
}

/// `Π (1 + w h)` over the given weights, on P4.
pub fn product_of_lines(weights: impl IntoIterator<Item = i64>) -> GradedClass {
    let p = ProjectiveSpace::new(4);
    let h = p.hyperplane();
    weights
        .into_iter()
        .fold(GradedClass::one(p.ring()), |acc, w| {
            let factor = GradedClass::one(p.ring())
                .add(&h.scale(&rational(w)))
                .unwrap();
            acc.mul(&factor).unwrap()
        })
}

pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|a| {
            compositions(total - a, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
        })
        .collect()
}

/// `Σ multinomial(Σ(l_i + r_i); l_i + r_i) Π s_{l_i}(E_i)`, straight from the definition.
pub fn contribution_oracle(bs: &[Bundle], max_degree: u32) -> GradedClass {
    let ring = bs[0].ring();
    let mut acc = GradedClass::zero(ring);
    for total in 0..=max_degree {
        for ls in compositions(total, bs.len()) {
            let parts: Vec<u64> = ls
                .iter()
                .zip(bs)
                .map(|(&l, b)| (l + b.rank()) as u64)
                .collect();
            let coeff = Rational::from_integer(multinomial(parts.iter().sum(), &parts).unwrap());
            let mut term = GradedClass::constant(ring, coeff);
            for (&l, b) in ls.iter().zip(bs) {
                term = term.mul(&b.segre_class(l)).unwrap();
            }
            acc = acc.add(&term).unwrap();
        }
    }
    acc
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

pub fn check_ring_axioms(a: GradedClass, b: GradedClass, c: GradedClass) -> Check {
    let one = GradedClass::one(a.ring());
    prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    prop_assert_eq!(
        a.mul(&b).unwrap().mul(&c).unwrap(),
        a.mul(&b.mul(&c).unwrap()).unwrap()
    );
    prop_assert_eq!(
        a.mul(&b.add(&c).unwrap()).unwrap(),
        a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
    );
    prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    prop_assert!(a.sub(&a).unwrap().is_zero());
    prop_assert_eq!(
        a.add(&b).unwrap().integrate().unwrap(),
        a.integrate().unwrap() + b.integrate().unwrap()
    );
    Ok(())
}

pub fn check_truncation(a: GradedClass, b: GradedClass, k: u32) -> Check {
    prop_assert_eq!(
        a.mul(&b).unwrap().truncate(k),
        a.truncate(k).mul(&b.truncate(k)).unwrap().truncate(k)
    );
    Ok(())
}

pub fn check_chern_times_segre(e: Bundle) -> Check {
    prop_assert_eq!(
        e.chern().mul(&e.segre_total()).unwrap(),
        GradedClass::one(e.ring())
    );
    Ok(())
}

pub fn check_contribution_routes(bs: Vec<Bundle>, max_degree: u32) -> Check {
    let direct = multi_segre(&bs, max_degree).unwrap();
    prop_assert_eq!(&direct, &multi_segre_pushforward(&bs, max_degree).unwrap());
    prop_assert_eq!(&direct, &contribution_oracle(&bs, max_degree));
    let normals: Vec<Normal> = bs
        .iter()
        .map(|b| Normal::new(b.clone(), b.rank()).unwrap())
        .collect();
    prop_assert_eq!(&direct, &contribution(&normals, max_degree).unwrap());

    let mut reversed = normals.clone();
    reversed.reverse();
    prop_assert_eq!(&direct, &contribution(&reversed, max_degree).unwrap());
    if let [single] = &normals[..] {
        prop_assert_eq!(
            contribution(&normals, 4).unwrap(),
            single.bundle.segre_total()
        );
    }
    Ok(())
}

pub fn check_sym_of_split(a: Vec<i64>, d: u32) -> Check {
    let e = split(&a);
    let weights = compositions(d, a.len())
        .into_iter()
        .map(|alpha| alpha.iter().zip(&a).map(|(&k, &w)| k as i64 * w).sum());
    let sym = e.sym_power(d).unwrap();
    prop_assert_eq!(sym.chern(), &product_of_lines(weights));
    let rank = binomial(a.len() as u64 + d as u64 - 1, d as u64);
    prop_assert_eq!(BigInt::from(sym.rank()), rank);
    Ok(())
}

pub fn check_tensor_of_split(a: Vec<i64>, b: Vec<i64>) -> Check {
    let t = split(&a).tensor(&split(&b)).unwrap();
    let weights = a.iter().flat_map(|&x| b.iter().map(move |&y| x + y));
    prop_assert_eq!(t.chern(), &product_of_lines(weights));
    prop_assert_eq!(t.rank() as usize, a.len() * b.len());
    let dual = split(&a).dual();
    prop_assert_eq!(dual.chern(), &product_of_lines(a.iter().map(|&x| -x)));
    let hom = split(&a).hom(&split(&b)).unwrap();
    prop_assert_eq!(
        hom.chern(),
        &product_of_lines(a.iter().flat_map(|&x| b.iter().map(move |&y| y - x)))
    );
    Ok(())
}

/// Parts summing to between 1 and 12.
pub fn multinomial_parts() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..=4, 1..=4).prop_filter("total in 1..=12", |p| {
        let d: u64 = p.iter().sum();
        (1..=12).contains(&d)
    })
}

pub fn check_multinomial_pascal(parts: Vec<u64>) -> Check {
    let d: u64 = parts.iter().sum();
    let mut sum = BigInt::zero();
    for i in 0..parts.len() {
        if parts[i] > 0 {
            let mut smaller = parts.clone();
            smaller[i] -= 1;
            sum += multinomial(d - 1, &smaller).unwrap();
        }
    }
    prop_assert_eq!(multinomial(d, &parts).unwrap(), sum);
    Ok(())
}

pub fn unreduced_terms() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..=6, 0u32..=3, -5i64..=5), 1..8)
}

pub fn check_confluence(raw: Vec<(u32, u32, i64)>, choices: Vec<usize>) -> Check {
    let ring = g52();
    let terms: Vec<_> = raw
        .iter()
        .filter(|(a, b, _)| a + 2 * b <= 6)
        .map(|&(a, b, c)| (ring.monomial(&[a, b]).unwrap(), rational(c)))
        .collect();
    let canonical = GradedClass::from_exponents(
        &ring,
        terms
            .iter()
            .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
    )
    .unwrap();
    let mut i = 0;
    let fuzzed = ring.normal_form_with(terms, |n| {
        i += 1;
        choices[i % choices.len()] % n
    });
    prop_assert_eq!(fuzzed, canonical);
    Ok(())
}

/// Integrals on `Grass(m,2)`, `m ≤ 7`, computed by rewriting in a ring that
/// knows only `∫ s2^(m-2) = 1`, compared with the Pieri oracle; plus the
/// Catalan count of `∫ s1^dim`.
pub fn check_pieri_agreement() -> Result<(), String> {
    for m in 2..=7u32 {
        let g = grassmannian(m, 2).unwrap();
        let dim = g.dimension();
        let gens = vec![Generator::new("s1", 1), Generator::new("s2", 2)];
        let sparse = ChowRing::from_relations(
            "sparse",
            gens,
            dim,
            g.relations(),
            vec![(vec![0, m - 2], Rational::one())],
        )
        .map_err(|e| e.to_string())?;
        for b in 0..=dim / 2 {
            let exps = [dim - 2 * b, b];
            let oracle = schubert_integral_oracle(m, 2, &exps).map_err(|e| e.to_string())?;
            for ring in [&sparse, g.ring()] {
                let value = GradedClass::from_exponents(ring, [(exps.to_vec(), Rational::one())])
                    .and_then(|c| c.integrate())
                    .map_err(|e| e.to_string())?;
                if value != oracle {
                    return Err(format!(
                        "Grass({m},2): s1^{}*s2^{b} integrates to {value}, Pieri gives {oracle}",
                        exps[0]
                    ));
                }
            }
        }
        let top = g.sigma(1).unwrap().pow(dim).integrate().unwrap();
        if top != Rational::from_integer(catalan((m - 2) as u64)) {
            return Err(format!("Grass({m},2): s1^{dim} integrates to {top}"));
        }
    }
    Ok(())
}

fn numbers() -> impl Strategy<Value = Expr> {
    (0i64..1000, 1i64..40).prop_map(|(n, d)| Expr::Number(Rational::new(n.into(), d.into())))
}

/// Random well-formed expression trees.
pub fn exprs() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        numbers(),
        "[a-zA-Z_][a-zA-Z0-9_]{0,3}".prop_map(Expr::Symbol)
    ];
    leaf.prop_recursive(5, 48, 4, |inner| {
        let call = (
            prop::sample::select(Func::ALL.to_vec()),
            prop::collection::vec(inner.clone(), 1..=4),
        )
            .prop_filter_map("arity", |(f, mut args)| {
                let (lo, hi) = f.arity();
                args.truncate(hi.unwrap_or(args.len()));
                (args.len() >= lo).then_some(Expr::Call(f, args))
            });
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..12).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            call,
        ]
    })
}

pub fn check_round_trip(e: Expr) -> Check {
    let printed = e.to_string();
    prop_assert_eq!(parse(&printed).map_err(|err| err.render(&printed)), Ok(e));
    Ok(())
}

/// Runs `check` on `cases` values drawn from a fixed-seed generator.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Check,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, check).map_err(|e| e.to_string())
}
