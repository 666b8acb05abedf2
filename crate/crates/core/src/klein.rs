//! Plücker-coordinate algebra on the Klein quadric: the quadric itself, the
//! wedge pairing, polarity-twisted gradients, the Cayley bracket, the
//! Laplace operator and Hessian forms.
//!
//! Conventions. A point of the Grassmannian is a 6-vector in the fixed slot
//! order `(p01, p02, p03, p12, p13, p23)`. The pairing is
//! `⟨a,b⟩ = a01·b23 − a02·b13 + a03·b12 + a12·b03 − a13·b02 + a23·b01`,
//! so `⟨p,p⟩ = 2Q(p)`. The gradient of a form is stored polarity-twisted,
//! `∇F = (F_p23, −F_p13, F_p12, F_p03, −F_p02, F_p01)`, which makes
//! `{F,G} = ⟨∇F,∇G⟩` and Euler's identity `{F,Q} = deg(F)·F` hold literally.

use crate::error::{Error, Result};
use crate::polyring::{int, MultiPoly, Scalar, VarSet, PLUECKER_NAMES};

/// Signs of the pairing against the complementary slot: slot k pairs with
/// slot 5−k, with sign +,−,+,+,−,+.
const PAIR_SIGN: [i64; 6] = [1, -1, 1, 1, -1, 1];

/// The Klein quadric `Q = p01*p23 - p02*p13 + p03*p12` over `vars`.
pub fn klein_quadric(vars: &VarSet) -> Result<MultiPoly> {
    let v = |n: &str| MultiPoly::variable(vars, n);
    let t = |a: &str, b: &str, s: i64| -> Result<MultiPoly> {
        Ok(v(a)?.checked_mul(&v(b)?)?.scale(&int(s)))
    };
    let mut q = t("p01", "p23", 1)?;
    q = q.checked_add(&t("p02", "p13", -1)?)?;
    q = q.checked_add(&t("p03", "p12", 1)?)?;
    Ok(q)
}

/// A 6-tuple of polynomials in the fixed slot order; entries may be scalars
/// (an actual line) or symbolic (a moving point or gradient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    entries: [MultiPoly; 6],
}

impl PlueckerVector {
    pub fn new(entries: [MultiPoly; 6]) -> Result<Self> {
        let vars = entries[0].vars().clone();
        if entries.iter().any(|e| *e.vars() != vars) {
            return Err(Error::VarSetMismatch);
        }
        Ok(PlueckerVector { entries })
    }

    /// The generic symbolic vector: entry k is the variable of slot k.
    pub fn symbolic(vars: &VarSet) -> Result<Self> {
        let mut es = Vec::with_capacity(6);
        for n in PLUECKER_NAMES {
            es.push(MultiPoly::variable(vars, n)?);
        }
        Ok(PlueckerVector {
            entries: es.try_into().unwrap(),
        })
    }

    pub fn from_scalars(vars: &VarSet, coords: [Scalar; 6]) -> Self {
        PlueckerVector {
            entries: coords.map(|c| MultiPoly::constant(vars, c)),
        }
    }

    /// Plücker vector of the line joining two points of P^3:
    /// `p_ij = x_i*y_j - x_j*y_i`.
    pub fn wedge_points(vars: &VarSet, x: &[Scalar; 4], y: &[Scalar; 4]) -> Self {
        let mut coords = Vec::with_capacity(6);
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            coords.push(&x[i] * &y[j] - &x[j] * &y[i]);
        }
        PlueckerVector::from_scalars(vars, coords.try_into().unwrap())
    }

    pub fn entries(&self) -> &[MultiPoly; 6] {
        &self.entries
    }

    pub fn vars(&self) -> &VarSet {
        self.entries[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PlueckerVector {
            entries: self.entries.clone().map(|e| e.scale(c)),
        }
    }

    /// Evaluate the Klein quadric on this vector.
    pub fn quadric_value(&self) -> Result<MultiPoly> {
        let h = pairing(self, self)?;
        Ok(h.scale(&crate::polyring::rat(1, 2)))
    }
}

/// The wedge pairing `⟨a,b⟩`; symmetric, with `⟨p,p⟩ = 2Q(p)`.
pub fn pairing(a: &PlueckerVector, b: &PlueckerVector) -> Result<MultiPoly> {
    if a.vars() != b.vars() {
        return Err(Error::VarSetMismatch);
    }
    let mut acc = MultiPoly::zero(a.vars());
    for (k, sign) in PAIR_SIGN.iter().enumerate() {
        let prod = a.entries[k].checked_mul(&b.entries[5 - k])?;
        acc = acc.checked_add(&prod.scale(&int(*sign)))?;
    }
    Ok(acc)
}

/// Polarity-twisted gradient `∇F`, so that `pairing(∇F, v) = Σ F_pij·v_ij`.
pub fn gradient(f: &MultiPoly) -> Result<PlueckerVector> {
    let d = |n: &str| f.partial(n);
    let entries = [
        d("p23")?,
        d("p13")?.neg(),
        d("p12")?,
        d("p03")?,
        d("p02")?.neg(),
        d("p01")?,
    ];
    PlueckerVector::new(entries)
}

/// Cayley bracket `{F,G} = ⟨∇F,∇G⟩`; symmetric and bilinear.
pub fn bracket(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    pairing(&gradient(f)?, &gradient(g)?)
}

/// Euler self-test: returns `{F,Q} − deg(F)·F`, which is zero for every
/// homogeneous `F`.
pub fn euler_check(f: &MultiPoly) -> Result<MultiPoly> {
    let m = f
        .homogeneous_degree()
        .map_err(|_| Error::NotHomogeneous(" for the Euler identity"))?;
    let q = klein_quadric(f.vars())?;
    bracket(f, &q)?.checked_sub(&f.scale(&int(m as i64)))
}

/// The Plücker Laplacian `Δ = ∂01∂23 − ∂02∂13 + ∂03∂12`.
pub fn laplacian(f: &MultiPoly) -> Result<MultiPoly> {
    let dd = |a: &str, b: &str| -> Result<MultiPoly> { f.partial(a)?.partial(b) };
    let mut acc = dd("p01", "p23")?;
    acc = acc.checked_sub(&dd("p02", "p13")?)?;
    acc = acc.checked_add(&dd("p03", "p12")?)?;
    Ok(acc)
}

/// Product-rule self-test: returns `Δ(AB) − ΔA·B − A·ΔB − {A,B}`, which is
/// identically zero.
pub fn product_rule_check(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    let mut acc = laplacian(&a.checked_mul(b)?)?;
    acc = acc.checked_sub(&laplacian(a)?.checked_mul(b)?)?;
    acc = acc.checked_sub(&a.checked_mul(&laplacian(b)?)?)?;
    acc.checked_sub(&bracket(a, b)?)
}

/// The polarity involution on vectors:
/// `(a01,…,a23) ↦ (a23, −a13, a12, a03, −a02, a01)`.
pub fn polarity(v: &PlueckerVector) -> PlueckerVector {
    let e = &v.entries;
    PlueckerVector {
        entries: [
            e[5].clone(),
            e[4].neg(),
            e[3].clone(),
            e[2].clone(),
            e[1].neg(),
            e[0].clone(),
        ],
    }
}

/// Symmetric matrix of second partials of a form.
#[derive(Debug, Clone)]
pub struct HessianForm {
    base: MultiPoly,
    entries: Vec<Vec<MultiPoly>>,
}

impl HessianForm {
    pub fn base(&self) -> &MultiPoly {
        &self.base
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }
}

/// The Hessian of `F` with respect to the raw slot variables (no twist).
pub fn hessian(f: &MultiPoly) -> Result<HessianForm> {
    let firsts: Vec<MultiPoly> = PLUECKER_NAMES
        .iter()
        .map(|n| f.partial(n))
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(6);
    for fi in &firsts {
        let row: Vec<MultiPoly> = PLUECKER_NAMES
            .iter()
            .map(|n| fi.partial(n))
            .collect::<Result<_>>()?;
        entries.push(row);
    }
    Ok(HessianForm {
        base: f.clone(),
        entries,
    })
}

/// The bilinear form `D²F(u,v) = Σ uᵢ·Hᵢⱼ·vⱼ`; symmetric in `u, v`.
pub fn hessian_apply(h: &HessianForm, u: &PlueckerVector, v: &PlueckerVector) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(h.base.vars());
    for i in 0..6 {
        for j in 0..6 {
            if h.entries[i][j].is_zero() {
                continue;
            }
            let t = u.entries[i]
                .checked_mul(&h.entries[i][j])?
                .checked_mul(&v.entries[j])?;
            acc = acc.checked_add(&t)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse::parse_poly;
    use crate::polyring::rat;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn pp(s: &str) -> MultiPoly {
        parse_poly(s, &VarSet::plucker()).unwrap()
    }

    fn sc(coords: [i64; 6]) -> PlueckerVector {
        PlueckerVector::from_scalars(&VarSet::plucker(), coords.map(int))
    }

    #[test]
    fn quadric_evaluations() {
        let q = klein_quadric(&VarSet::plucker()).unwrap();
        let eval = |coords: [i64; 6]| {
            let point: BTreeMap<String, Scalar> = PLUECKER_NAMES
                .iter()
                .zip(coords)
                .map(|(n, c)| (n.to_string(), int(c)))
                .collect();
            q.evaluate(&point).unwrap()
        };
        assert_eq!(eval([1, 0, 0, 0, 0, 0]), int(0));
        assert_eq!(eval([1, 0, 0, 0, 0, 1]), int(1));
        assert_eq!(eval([1, 1, 0, 0, 1, 1]), int(0));
    }

    #[test]
    fn pairing_of_symbolic_vector_is_twice_quadric() {
        let vs = VarSet::plucker();
        let p = PlueckerVector::symbolic(&vs).unwrap();
        let q = klein_quadric(&vs).unwrap();
        assert_eq!(pairing(&p, &p).unwrap(), q.scale(&int(2)));
        assert_eq!(p.quadric_value().unwrap(), q);
    }

    #[test]
    fn pairing_detects_skew_and_incident_lines() {
        let e01 = sc([1, 0, 0, 0, 0, 0]);
        let e23 = sc([0, 0, 0, 0, 0, 1]);
        let e02 = sc([0, 1, 0, 0, 0, 0]);
        assert_eq!(pairing(&e01, &e23).unwrap(), pp("1"));
        assert!(pairing(&e01, &e02).unwrap().is_zero());
    }

    #[test]
    fn gradient_of_quadric_is_identity() {
        let vs = VarSet::plucker();
        let q = klein_quadric(&vs).unwrap();
        assert_eq!(
            gradient(&q).unwrap(),
            PlueckerVector::symbolic(&vs).unwrap()
        );
    }

    #[test]
    fn gradient_of_skew_form_and_constants() {
        let g = gradient(&pp("p01*p23")).unwrap();
        let e = g.entries();
        assert_eq!(e[0], pp("p01"));
        assert!(e[1].is_zero() && e[2].is_zero() && e[3].is_zero() && e[4].is_zero());
        assert_eq!(e[5], pp("p23"));
        assert!(gradient(&pp("7")).unwrap().is_zero());
    }

    #[test]
    fn bracket_fixture_identities() {
        let f = pp("(p01+p23)^2 + 4*p03*p12");
        assert_eq!(bracket(&f, &f).unwrap(), f.scale(&int(8)));
        let skew = pp("p01*p23");
        assert_eq!(bracket(&skew, &skew).unwrap(), skew.scale(&int(2)));
        let conic = pp("p02^2 + 4*p01*p12");
        assert!(bracket(&conic, &conic).unwrap().is_zero());
    }

    #[test]
    fn bracket_of_diagonal_quadric_form() {
        // F = Σ_{i<j} a_i a_j p_ij^2. Oracle: expand Q(∇F) from the raw
        // partials; each complementary product contributes
        // 4·a0a1a2a3·(that monomial of Q), so {F,F} = 8·a0a1a2a3·Q.
        let a = [int(1), int(2), int(3), int(5)];
        let f = diagonal_form(&a);
        let d = |n: &str| f.partial(n).unwrap();
        let half = d("p01")
            .checked_mul(&d("p23"))
            .unwrap()
            .checked_sub(&d("p02").checked_mul(&d("p13")).unwrap())
            .unwrap()
            .checked_add(&d("p03").checked_mul(&d("p12")).unwrap())
            .unwrap();
        let br = bracket(&f, &f).unwrap();
        assert_eq!(br, half.scale(&int(2)));
        let q = klein_quadric(&VarSet::plucker()).unwrap();
        assert_eq!(br, q.scale(&int(8 * 30)));
    }

    fn diagonal_form(a: &[Scalar; 4]) -> MultiPoly {
        let vs = VarSet::plucker();
        let mut f = MultiPoly::zero(&vs);
        for (k, (i, j)) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            .into_iter()
            .enumerate()
        {
            let sq = MultiPoly::variable(&vs, PLUECKER_NAMES[k]).unwrap().pow(2);
            f = f.checked_add(&sq.scale(&(&a[i] * &a[j]))).unwrap();
        }
        f
    }

    #[test]
    fn euler_identity_fixtures() {
        let q = klein_quadric(&VarSet::plucker()).unwrap();
        assert!(euler_check(&q).unwrap().is_zero());
        assert!(euler_check(&pp("p01*p02*p23")).unwrap().is_zero());
        assert!(euler_check(&pp("1")).unwrap().is_zero());
        assert_eq!(bracket(&q, &q).unwrap(), q.scale(&int(2)), "{{Q,Q}} = 2Q");
        assert_eq!(
            euler_check(&pp("p01 + p02^2")),
            Err(Error::NotHomogeneous(" for the Euler identity"))
        );
    }

    #[test]
    fn laplacian_values() {
        let q = klein_quadric(&VarSet::plucker()).unwrap();
        assert_eq!(laplacian(&q).unwrap(), pp("3"));
        assert_eq!(laplacian(&pp("p01*p23")).unwrap(), pp("1"));
        // chain form and its degree-3 canonical representative
        let chain = pp("p01*p02*p23");
        assert_eq!(laplacian(&chain).unwrap(), pp("p02"));
        let f2 = chain
            .checked_sub(&pp("p02").checked_mul(&q).unwrap().scale(&rat(1, 3)))
            .unwrap();
        assert_eq!(laplacian(&f2).unwrap(), pp("-1/3*p02"));
    }

    #[test]
    fn product_rule_fixtures() {
        let p01 = pp("p01");
        assert!(product_rule_check(&p01, &p01).unwrap().is_zero());
        let q = klein_quadric(&VarSet::plucker()).unwrap();
        let g = pp("p02*p13 + p03^2");
        assert!(product_rule_check(&q, &g).unwrap().is_zero());
        // product rule against Q: Δ(GQ) = (deg G + 3)·G + Q·ΔG
        let gq = g.checked_mul(&q).unwrap();
        let rhs = g
            .scale(&int(2 + 3))
            .checked_add(&q.checked_mul(&laplacian(&g).unwrap()).unwrap())
            .unwrap();
        assert_eq!(laplacian(&gq).unwrap(), rhs);
        assert!(product_rule_check(&pp("p01*p23"), &pp("p02*p13"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn polarity_involution_and_invariance() {
        let vs = VarSet::plucker();
        let p = PlueckerVector::symbolic(&vs).unwrap();
        assert_eq!(polarity(&polarity(&p)), p);
        let e01 = sc([1, 0, 0, 0, 0, 0]);
        assert_eq!(polarity(&e01), sc([0, 0, 0, 0, 0, 1]));
        // Q(polarity(p)) = Q(p) and the pairing is preserved
        let q = klein_quadric(&vs).unwrap();
        assert_eq!(polarity(&p).quadric_value().unwrap(), q);
        let g = gradient(&pp("p01*p02*p23")).unwrap();
        assert_eq!(
            pairing(&polarity(&p), &polarity(&g)).unwrap(),
            pairing(&p, &g).unwrap()
        );
    }

    #[test]
    fn hessian_euler_identity_for_chain_form() {
        let vs = VarSet::plucker();
        let f = pp("p01*p02*p23");
        let h = hessian(&f).unwrap();
        let p = PlueckerVector::symbolic(&vs).unwrap();
        let app = hessian_apply(&h, &p, &p).unwrap();
        assert_eq!(app, f.scale(&int(3 * 2)));
    }

    #[test]
    fn hessian_chain_form_third_line_values() {
        // L'' = e0 ∧ y with the mod-Q representative
        // y = (p01*p12, -p02*p12, -(p01*p23 + p02*p13)).
        let vs = VarSet::plucker();
        let zero = MultiPoly::zero(&vs);
        let l2 = PlueckerVector::new([
            pp("p01*p12"),
            pp("-p02*p12"),
            pp("-(p01*p23 + p02*p13)"),
            zero.clone(),
            zero.clone(),
            zero,
        ])
        .unwrap();
        let f = pp("p01*p02*p23");
        let h = hessian(&f).unwrap();
        let p = PlueckerVector::symbolic(&vs).unwrap();
        let half = rat(1, 2);
        // ½·D²F(L'', L) = 0 exactly
        assert!(hessian_apply(&h, &l2, &p).unwrap().scale(&half).is_zero());
        // ½·D²F(L'', L'') = -p12²·F exactly
        let w = hessian_apply(&h, &l2, &l2).unwrap().scale(&half);
        assert_eq!(w, pp("-p12^2 * p01*p02*p23"));
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let term = (proptest::collection::vec(0u32..3, 6), -4i64..=4);
        proptest::collection::vec(term, 0..5).prop_map(|terms| {
            MultiPoly::from_terms(
                &VarSet::plucker(),
                terms.into_iter().map(|(m, c)| (m, int(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bracket_is_symmetric_bilinear(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let ab = bracket(&a, &b).unwrap();
            prop_assert_eq!(&ab, &bracket(&b, &a).unwrap());
            let bc_sum = b.checked_add(&c).unwrap();
            let lhs = bracket(&a, &bc_sum).unwrap();
            let rhs = ab.checked_add(&bracket(&a, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn laplacian_product_rule_randomized(a in arb_poly(), b in arb_poly()) {
            prop_assert!(product_rule_check(&a, &b).unwrap().is_zero());
        }

        #[test]
        fn bracket_of_product_expansion(f1 in arb_poly(), f2 in arb_poly()) {
            let f = f1.checked_mul(&f2).unwrap();
            let lhs = bracket(&f, &f).unwrap();
            let t1 = f1.pow(2).checked_mul(&bracket(&f2, &f2).unwrap()).unwrap();
            let t2 = f1
                .checked_mul(&f2)
                .unwrap()
                .checked_mul(&bracket(&f1, &f2).unwrap())
                .unwrap()
                .scale(&int(2));
            let t3 = f2.pow(2).checked_mul(&bracket(&f1, &f1).unwrap()).unwrap();
            let rhs = t1.checked_add(&t2).unwrap().checked_add(&t3).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn euler_identity_randomized_homogeneous(deg in 1u32..5, seed in proptest::collection::vec((proptest::collection::vec(0u32..4, 6), -4i64..=4), 1..5)) {
            // force homogeneity by filtering monomials to the target degree
            let vs = VarSet::plucker();
            let terms: Vec<_> = seed
                .into_iter()
                .map(|(mut m, c)| {
                    let d: u32 = m.iter().sum();
                    if d > 0 && d != deg {
                        // rescale one slot to land on the target degree
                        m = vec![0; 6];
                        m[0] = deg;
                    } else if d == 0 {
                        m = vec![0; 6];
                        m[5] = deg;
                    }
                    (m, int(c))
                })
                .collect();
            let f = MultiPoly::from_terms(&vs, terms);
            prop_assert!(euler_check(&f).unwrap().is_zero());
        }
    }
}
