use std::collections::BTreeMap;

use proptest::prelude::*;

use super::parse::parse_poly;
use super::*;

fn pp(text: &str) -> MultiPoly {
    parse_poly(text, &VarSet::plucker()).unwrap()
}

fn q() -> MultiPoly {
    pp("p01*p23 - p02*p13 + p03*p12")
}

#[test]
fn additive_inverse_cancels() {
    let a = pp("p01");
    assert!(a.checked_add(&a.neg()).unwrap().is_zero());
}

#[test]
fn klein_quadric_built_from_monomials() {
    let sum = pp("p01*p23")
        .checked_add(&pp("-p02*p13 + p03*p12"))
        .unwrap();
    assert_eq!(sum, q());
}

#[test]
fn quadric_tangential_form_termwise() {
    // (p01 + p23)^2 + 4*p03*p12 assembled from raw pieces
    let s = pp("p01 + p23");
    let f = s
        .checked_mul(&s)
        .unwrap()
        .checked_add(&pp("4*p03*p12"))
        .unwrap();
    assert_eq!(f, pp("(p01+p23)^2 + 4*p03*p12"));
    assert_eq!(f, pp("p01^2 + 2*p01*p23 + p23^2 + 4*p03*p12"));
}

#[test]
fn one_is_multiplicative_identity() {
    let f = pp("(p01+p23)^2 + 4*p03*p12");
    assert_eq!(MultiPoly::one(f.vars()).checked_mul(&f).unwrap(), f);
}

#[test]
fn chain_form_product() {
    let f = pp("p01").checked_mul(&pp("p02")).unwrap();
    let f = f.checked_mul(&pp("p23")).unwrap();
    assert_eq!(f, pp("p01*p02*p23"));
}

#[test]
fn square_of_quadric_has_twelve_terms() {
    // brute-force convolution oracle: collect products of all term pairs
    let q = q();
    let mut expected: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (ma, ca) in q.terms() {
        for (mb, cb) in q.terms() {
            let key = mono_mul(ma, mb);
            *expected.entry(key).or_insert_with(Scalar::zero) += ca * cb;
        }
    }
    expected.retain(|_, c| !c.is_zero());
    let q2 = q.checked_mul(&q).unwrap();
    let got: BTreeMap<Monomial, Scalar> = q2.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    assert_eq!(got, expected);
    // 3 squares + C(3,2) distinct cross products
    assert_eq!(q2.num_terms(), 6);
    assert_eq!(q2.total_degree(), Some(4));
}

#[test]
fn partial_of_quadric() {
    assert_eq!(q().partial("p01").unwrap(), pp("p23"));
    assert_eq!(
        pp("(p01+p23)^2").partial("p01").unwrap(),
        pp("2*p01 + 2*p23")
    );
    assert!(pp("p02^2 + 4*p01*p12").partial("p03").unwrap().is_zero());
}

#[test]
fn partial_unknown_variable() {
    assert_eq!(q().partial("x0"), Err(Error::UnknownVariable("x0".into())));
}

#[test]
fn substitute_identity_map() {
    let q = q();
    assert_eq!(q.substitute(&BTreeMap::new()).unwrap(), q);
}

/// The polarity coordinate map as a substitution.
pub(crate) fn polarity_map() -> BTreeMap<String, MultiPoly> {
    let images = [
        ("p01", "p23"),
        ("p02", "-p13"),
        ("p03", "p12"),
        ("p12", "p03"),
        ("p13", "-p02"),
        ("p23", "p01"),
    ];
    images
        .iter()
        .map(|(v, img)| (v.to_string(), pp(img)))
        .collect()
}

#[test]
fn quadric_is_polarity_invariant() {
    assert_eq!(q().substitute(&polarity_map()).unwrap(), q());
}

#[test]
fn exact_division_examples() {
    let f = pp("(p01+p23)^2 + 4*p03*p12");
    let eight_f = f.scale(&int(8));
    assert_eq!(eight_f.exact_div(&f).unwrap(), pp("8"));
    assert_eq!(
        pp("2*p01*p02^2*p23").exact_div(&pp("p01*p02*p23")).unwrap(),
        pp("2*p02")
    );
    assert_eq!(pp("p01").exact_div(&pp("p02")), Err(Error::NotDivisible));
    assert_eq!(
        pp("p01").exact_div(&MultiPoly::zero(&VarSet::plucker())),
        Err(Error::DivisionByZero)
    );
}

#[test]
fn canonical_printing() {
    assert_eq!(MultiPoly::zero(&VarSet::plucker()).to_string(), "0");
    assert_eq!(q().to_string(), "p01*p23 - p02*p13 + p03*p12");
    let f = pp("p01*p23") // skew-lines form minus a third of the quadric
        .checked_sub(&q().scale(&rat(1, 3)))
        .unwrap();
    assert_eq!(f.to_string(), "2/3*p01*p23 + 1/3*p02*p13 - 1/3*p03*p12");
    assert_eq!(pp("-1/3*p02").to_string(), "-1/3*p02");
    assert_eq!(pp("3").to_string(), "3");
}

#[test]
fn grevlex_order_basics() {
    let ord = VarSet::plucker().order();
    let m = |s: &str| {
        let p = pp(s);
        let mono = p.terms().next().unwrap().0.clone();
        mono
    };
    // graded first
    assert_eq!(
        ord.cmp(&m("p23^3"), &m("p01*p02")),
        std::cmp::Ordering::Greater
    );
    // within degree 2: p03*p12 > p02*p13 > p01*p23
    assert_eq!(
        ord.cmp(&m("p03*p12"), &m("p02*p13")),
        std::cmp::Ordering::Greater
    );
    assert_eq!(
        ord.cmp(&m("p02*p13"), &m("p01*p23")),
        std::cmp::Ordering::Greater
    );
}

#[test]
fn varset_rejects_misordered_plucker_names() {
    assert_eq!(
        VarSet::new(vec!["p02", "p01"], 0),
        Err(Error::ReservedOrder)
    );
    assert!(VarSet::new(vec!["p01", "x0", "p23"], 0).is_ok());
}

#[test]
fn varset_mismatch_is_reported() {
    let a = pp("p01");
    let b = MultiPoly::variable(&VarSet::points(), "x0").unwrap();
    assert_eq!(a.checked_add(&b), Err(Error::VarSetMismatch));
}

#[test]
fn parse_error_positions() {
    let vs = VarSet::plucker();
    match parse_poly("p01 + $", &vs) {
        Err(Error::Parse { line, column, .. }) => {
            assert_eq!((line, column), (1, 7));
        }
        other => panic!("expected parse error, got {other:?}"),
    }
    assert!(matches!(parse_poly("p01 +", &vs), Err(Error::Parse { .. })));
    assert!(matches!(parse_poly("q01", &vs), Err(Error::Parse { .. })));
    assert!(matches!(
        parse_poly("p01/p02", &vs),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn parse_zero_and_fractions() {
    assert!(pp("0").is_zero());
    assert_eq!(pp("4/9*p02^2"), pp("p02^2").scale(&rat(4, 9)));
    assert_eq!(
        pp("p12 + p03 - 4/3*p02").coeff(&{
            let mut m = vec![0; 6];
            m[1] = 1;
            m
        }),
        rat(-4, 3)
    );
}

// ------------------------------------------------------------------
// randomized ring laws
// ------------------------------------------------------------------

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    let term = (proptest::collection::vec(0u32..3, 6), -4i64..=4);
    proptest::collection::vec(term, 0..5).prop_map(|terms| {
        let vs = VarSet::plucker();
        MultiPoly::from_terms(&vs, terms.into_iter().map(|(m, c)| (m, int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let ab = a.checked_add(&b).unwrap();
        let ba = b.checked_add(&a).unwrap();
        prop_assert_eq!(&ab, &ba);
        let left = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let dist = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let expand = a
            .checked_mul(&b)
            .unwrap()
            .checked_add(&a.checked_mul(&c).unwrap())
            .unwrap();
        prop_assert_eq!(&dist, &expand);
    }

    #[test]
    fn partials_commute(a in arb_poly(), i in 0usize..6, j in 0usize..6) {
        let vs = VarSet::plucker();
        let (u, v) = (vs.names()[i].clone(), vs.names()[j].clone());
        let uv = a.partial(&u).unwrap().partial(&v).unwrap();
        let vu = a.partial(&v).unwrap().partial(&u).unwrap();
        prop_assert_eq!(uv, vu);
    }

    #[test]
    fn leibniz_rule(a in arb_poly(), b in arb_poly(), i in 0usize..6) {
        let v = VarSet::plucker().names()[i].clone();
        let lhs = a.checked_mul(&b).unwrap().partial(&v).unwrap();
        let rhs = a
            .partial(&v)
            .unwrap()
            .checked_mul(&b)
            .unwrap()
            .checked_add(&a.checked_mul(&b.partial(&v).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(a in arb_poly()) {
        let text = a.to_string();
        let back = parse_poly(&text, &VarSet::plucker()).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn division_reconstructs(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let order = a.vars().order();
        let (quots, rem) = a.div_rem(&[&b], order).unwrap();
        let back = quots[0].checked_mul(&b).unwrap().checked_add(&rem).unwrap();
        prop_assert_eq!(a, back);
    }
}
