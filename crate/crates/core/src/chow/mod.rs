//! Chow forms of space curves and their classification.
//!
//! Constructors for the standard Cayley forms (single lines, tangential
//! quadrics, the rational normal cubic, elimination-based Chow forms of
//! arbitrary curve ideals), the weak Cayley membership test, the
//! second-derivative honesty test with its Schubert third line, polarity
//! dualization, and Segre associated curves.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::IdealBasis;
use crate::harmonic::{canonical_rep, CanonicalCayleyRep};
use crate::klein::{
    bracket, gradient, hessian, hessian_apply, klein_quadric, pairing, PlueckerVector,
};
use crate::polyring::{MultiPoly, Scalar, VarSet, PLUECKER_NAMES};

/// A space curve given by homogeneous generators in `x0..x3`, with an
/// optional rational parametrization.
#[derive(Debug, Clone)]
pub struct CurveIdeal {
    generators: Vec<MultiPoly>,
    param: Option<[MultiPoly; 4]>,
}

impl CurveIdeal {
    /// Build and validate: generators homogeneous in the point variables;
    /// a parametrization, when present, must satisfy every generator.
    pub fn new(generators: Vec<MultiPoly>, param: Option<[MultiPoly; 4]>) -> Result<Self> {
        let xs = VarSet::points();
        let generators: Vec<MultiPoly> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.map_to(&xs))
            .collect::<Result<_>>()?;
        for g in &generators {
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(" curve generators"));
            }
        }
        if let Some(p) = &param {
            let tvars = p[0].vars().clone();
            let assignment: BTreeMap<String, MultiPoly> =
                xs.names().iter().cloned().zip(p.iter().cloned()).collect();
            let _ = tvars;
            for g in &generators {
                if !g.substitute(&assignment)?.is_zero() {
                    return Err(Error::DegenerateCurve);
                }
            }
        }
        Ok(CurveIdeal { generators, param })
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn param(&self) -> Option<&[MultiPoly; 4]> {
        self.param.as_ref()
    }
}

/// Wedge of two polynomial 4-vectors: the Plücker vector of the joining
/// line, `p_ij = x_i·y_j − x_j·y_i`.
pub fn wedge(x: &[MultiPoly; 4], y: &[MultiPoly; 4]) -> Result<PlueckerVector> {
    let mut entries = Vec::with_capacity(6);
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        entries.push(
            x[i].checked_mul(&y[j])?
                .checked_sub(&x[j].checked_mul(&y[i])?)?,
        );
    }
    PlueckerVector::new(entries.try_into().unwrap())
}

/// Degree-1 Chow form of a single line: vanishes exactly on the lines
/// meeting `l0`.
pub fn line_form(l0: &PlueckerVector) -> Result<MultiPoly> {
    if !l0.quadric_value()?.is_zero() {
        return Err(Error::NotALine);
    }
    let p = PlueckerVector::symbolic(l0.vars())?;
    pairing(&p, l0)
}

/// Tangential Cayley form of the smooth diagonal quadric `Σ aᵢxᵢ² = 0`:
/// `F = Σ_{i<j} aᵢaⱼ·pᵢⱼ²`, a harmonic degree-2 form.
pub fn tangential_quadric_form(a: &[Scalar; 4], vars: &VarSet) -> Result<MultiPoly> {
    if a.iter().any(|c| c.is_zero()) {
        return Err(Error::DegenerateQuadric);
    }
    let mut f = MultiPoly::zero(vars);
    for (k, (i, j)) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .into_iter()
        .enumerate()
    {
        let sq = MultiPoly::variable(vars, PLUECKER_NAMES[k])?.pow(2);
        f = f.checked_add(&sq.scale(&(&a[i] * &a[j])))?;
    }
    Ok(f)
}

/// Honest Chow form of the rational normal cubic `(1, t, t², t³)`:
/// vanishes exactly on the lines meeting the curve. The representative is
/// normalized so that its Laplacian is `p12 + p03`.
pub fn twisted_cubic_form(vars: &VarSet) -> Result<MultiPoly> {
    let v = |n: &str| MultiPoly::variable(vars, n);
    let m = [
        [v("p01")?, v("p02")?, v("p12")?],
        [v("p02")?, v("p12")?.checked_add(&v("p03")?)?, v("p13")?],
        [v("p12")?, v("p13")?, v("p23")?],
    ];
    let det = det3(&m)?;
    let q = klein_quadric(vars)?;
    det.checked_add(&q.checked_mul(&v("p12")?)?)
}

fn det3(m: &[[MultiPoly; 3]; 3]) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(m[0][0].vars());
    for (c, sign) in [(0usize, 1i64), (1, -1), (2, 1)] {
        let (c1, c2) = match c {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let minor = m[1][c1]
            .checked_mul(&m[2][c2])?
            .checked_sub(&m[1][c2].checked_mul(&m[2][c1])?)?;
        let term = m[0][c]
            .checked_mul(&minor)?
            .scale(&crate::polyring::int(sign));
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// The four bilinear incidence forms: the coordinates of `x ∧ p` in Λ³,
/// which vanish exactly when the point `x` lies on the line `p`.
pub fn incidence_forms(vars: &VarSet) -> Result<[MultiPoly; 4]> {
    let v = |n: &str| MultiPoly::variable(vars, n);
    let term = |a: &str, b: &str| -> Result<MultiPoly> { v(a)?.checked_mul(&v(b)?) };
    let c012 = term("x0", "p12")?
        .checked_sub(&term("x1", "p02")?)?
        .checked_add(&term("x2", "p01")?)?;
    let c013 = term("x0", "p13")?
        .checked_sub(&term("x1", "p03")?)?
        .checked_add(&term("x3", "p01")?)?;
    let c023 = term("x0", "p23")?
        .checked_sub(&term("x2", "p03")?)?
        .checked_add(&term("x3", "p02")?)?;
    let c123 = term("x1", "p23")?
        .checked_sub(&term("x2", "p13")?)?
        .checked_add(&term("x3", "p12")?)?;
    Ok([c012, c013, c023, c123])
}

/// Chow form of a curve by elimination.
///
/// The incidence ideal (curve generators plus the four incidence forms) is
/// saturated by the irrelevant maximal ideal in the point variables —
/// computed as the intersection of the four single-variable saturations —
/// and the point block is eliminated. The output is the minimal-degree
/// generator of the elimination ideal that survives reduction modulo `(Q)`,
/// made monic; for a degree-d curve it has degree d.
pub fn chow_form_of_curve(curve: &CurveIdeal) -> Result<MultiPoly> {
    chow_form_with_budget(curve, None)
}

pub fn chow_form_with_budget(curve: &CurveIdeal, budget: Option<u32>) -> Result<MultiPoly> {
    if curve.generators.is_empty() {
        return Err(Error::NotACurve);
    }
    let xp = VarSet::points_and_plucker();
    let mut gens: Vec<MultiPoly> = curve
        .generators
        .iter()
        .map(|g| g.map_to(&xp))
        .collect::<Result<_>>()?;
    if gens.iter().any(|g| g.is_constant()) {
        return Err(Error::EmptyCurve);
    }
    gens.extend(incidence_forms(&xp)?);
    let incidence = IdealBasis::with_default_order(gens)?.with_max_degree(budget);

    let x_names = ["x0", "x1", "x2", "x3"];
    let mut eliminated: Vec<IdealBasis> = Vec::new();
    for name in x_names {
        let sat = incidence.saturate_variable(name)?;
        let e = sat.eliminate(&x_names)?;
        let is_dup = eliminated
            .iter()
            .any(|prev| prev.groebner_basis().ok() == e.groebner_basis().ok());
        if !is_dup {
            eliminated.push(e);
        }
    }

    let mut iter = eliminated.into_iter();
    let mut combined = iter.next().ok_or(Error::NotACurve)?;
    for e in iter {
        if combined.is_unit_ideal()? {
            combined = e;
            continue;
        }
        if e.is_unit_ideal()? {
            continue;
        }
        combined = combined.intersect(&e)?;
    }
    if combined.is_unit_ideal()? {
        return Err(Error::EmptyCurve);
    }

    let plucker = VarSet::plucker();
    let q = klein_quadric(&plucker)?;
    let q_ideal = IdealBasis::with_default_order(vec![q.clone()])?;
    let mut candidates: Vec<MultiPoly> = Vec::new();
    for g in combined.groebner_basis()? {
        let r = q_ideal.normal_form(g)?.remainder;
        if !r.is_zero() {
            candidates.push(r);
        }
    }
    let min_deg = candidates
        .iter()
        .filter_map(|c| c.total_degree())
        .min()
        .ok_or(Error::NotACurve)?;
    let form = candidates
        .into_iter()
        .find(|c| c.total_degree() == Some(min_deg))
        .unwrap()
        .monic(plucker.order());

    // every generator of the eliminated ideal must lie in (Q, form),
    // otherwise the input did not define a curve with a hypersurface
    // Chow form
    let check = IdealBasis::with_default_order(vec![q, form.clone()])?;
    for g in combined.groebner_basis()? {
        if !check.member(g)? {
            return Err(Error::NotACurve);
        }
    }
    Ok(form)
}

/// Weak Cayley test: `{F,F} ∈ (Q, F)`. For reduced `Z = Q ∩ F` this holds
/// exactly when `Z` is a Cayley 3-fold, equivalently when `Z` is self-dual.
pub fn weak_cayley_test(f: &MultiPoly) -> Result<bool> {
    f.homogeneous_degree()
        .map_err(|_| Error::NotHomogeneous(" for the weak Cayley test"))?;
    let q = klein_quadric(f.vars())?;
    if f.is_zero() || f.exact_div(&q).is_ok() {
        return Err(Error::MultipleOfQ);
    }
    let ideal = IdealBasis::with_default_order(vec![q, f.clone()])?;
    ideal.member(&bracket(f, f)?)
}

/// The third basis line of the pencil plane: solves the two incidence
/// conditions `⟨e_b ∧ y, L⟩ = ⟨e_b ∧ y, L′⟩ = 0` by the cross product of
/// their coefficient rows; the base point `e_b` is the first of `e0..e3`
/// giving a nonzero solution.
pub fn schubert_third_line(l: &PlueckerVector, lp: &PlueckerVector) -> Result<PlueckerVector> {
    if l.vars() != lp.vars() {
        return Err(Error::VarSetMismatch);
    }
    let vars = l.vars().clone();
    for base in 0..4usize {
        let r = incidence_row(l, base)?;
        let rp = incidence_row(lp, base)?;
        let y = cross(&r, &rp)?;
        if y.iter().all(|c| c.is_zero()) {
            continue;
        }
        return third_line_from(base, &y, &vars);
    }
    Err(Error::DegenerateSpan)
}

/// Coefficient row of `⟨e_b ∧ y, L⟩ = 0` in the three unknowns of `y`
/// (the coordinates other than `b`).
fn incidence_row(l: &PlueckerVector, base: usize) -> Result<[MultiPoly; 3]> {
    let e = l.entries();
    // slots: 0:p01 1:p02 2:p03 3:p12 4:p13 5:p23
    let row = match base {
        0 => [e[5].clone(), e[4].neg(), e[3].clone()],
        1 => [e[5].neg(), e[2].clone(), e[1].neg()],
        2 => [e[4].clone(), e[2].neg(), e[0].clone()],
        _ => [e[3].neg(), e[1].clone(), e[0].neg()],
    };
    Ok(row)
}

fn cross(a: &[MultiPoly; 3], b: &[MultiPoly; 3]) -> Result<[MultiPoly; 3]> {
    Ok([
        a[1].checked_mul(&b[2])?
            .checked_sub(&a[2].checked_mul(&b[1])?)?,
        a[2].checked_mul(&b[0])?
            .checked_sub(&a[0].checked_mul(&b[2])?)?,
        a[0].checked_mul(&b[1])?
            .checked_sub(&a[1].checked_mul(&b[0])?)?,
    ])
}

/// Embed the solution `y` (coordinates indexed by `{0..3} \ {base}`) as
/// the Plücker vector of `e_base ∧ y`.
fn third_line_from(base: usize, y: &[MultiPoly; 3], vars: &VarSet) -> Result<PlueckerVector> {
    let zero = MultiPoly::zero(vars);
    let mut entries = [
        zero.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
        zero,
    ];
    match base {
        // e0 ∧ (y1·e1 + y2·e2 + y3·e3)
        0 => {
            entries[0] = y[0].clone();
            entries[1] = y[1].clone();
            entries[2] = y[2].clone();
        }
        // e1 ∧ (y0·e0 + y2·e2 + y3·e3)
        1 => {
            entries[0] = y[0].neg();
            entries[3] = y[1].clone();
            entries[4] = y[2].clone();
        }
        // e2 ∧ (y0·e0 + y1·e1 + y3·e3)
        2 => {
            entries[1] = y[0].neg();
            entries[3] = y[1].neg();
            entries[5] = y[2].clone();
        }
        // e3 ∧ (y0·e0 + y1·e1 + y2·e2)
        _ => {
            entries[2] = y[0].neg();
            entries[4] = y[1].neg();
            entries[5] = y[2].neg();
        }
    }
    PlueckerVector::new(entries)
}

/// One ideal-membership certificate of the honesty test.
#[derive(Debug, Clone)]
pub struct MembershipWitness {
    pub polynomial: MultiPoly,
    pub remainder: MultiPoly,
    pub cofactors: Vec<MultiPoly>,
    pub member: bool,
}

/// Result of the second-derivative honesty test.
#[derive(Debug, Clone)]
pub struct HonestTestResult {
    pub honest: bool,
    /// Reduced basis of `(Q, F)`, the reference for the cofactors.
    pub ideal_basis: Vec<MultiPoly>,
    /// The three Hessian polynomials `D²F(L″,L)`, `D²F(L″,L′)`,
    /// `D²F(L″,L″)` and their normal forms.
    pub witnesses: Vec<MembershipWitness>,
}

/// Honesty test: a Cayley form is the Chow form of a curve iff the three
/// second-derivative polynomials against the Schubert third line lie in
/// `(Q, F)`. Uses `L = p`, `L′ = ∇F₂` with `F₂` the canonical
/// representative, and the Hessian of the input form.
pub fn honest_test(f: &MultiPoly) -> Result<HonestTestResult> {
    if !weak_cayley_test(f)? {
        return Err(Error::NotWeaklyCayley);
    }
    let rep = canonical_rep(f)?;
    honest_test_with_rep(f, &rep)
}

fn honest_test_with_rep(f: &MultiPoly, rep: &CanonicalCayleyRep) -> Result<HonestTestResult> {
    let vars = f.vars();
    let l = PlueckerVector::symbolic(vars)?;
    let lp = gradient(&rep.f2)?;
    let l2 = schubert_third_line(&l, &lp)?;
    let h = hessian(f)?;
    let polys = [
        hessian_apply(&h, &l2, &l)?,
        hessian_apply(&h, &l2, &lp)?,
        hessian_apply(&h, &l2, &l2)?,
    ];
    let q = klein_quadric(vars)?;
    let ideal = IdealBasis::with_default_order(vec![q, f.clone()])?;
    let mut witnesses = Vec::with_capacity(3);
    let mut honest = true;
    for w in polys {
        let nf = ideal.normal_form(&w)?;
        let member = nf.remainder.is_zero();
        honest &= member;
        witnesses.push(MembershipWitness {
            polynomial: w,
            remainder: nf.remainder,
            cofactors: nf.cofactors,
            member,
        });
    }
    Ok(HonestTestResult {
        honest,
        ideal_basis: ideal.groebner_basis()?.to_vec(),
        witnesses,
    })
}

/// Apply the polarity involution to a form:
/// `p01↔p23, p02↦−p13, p13↦−p02, p03↔p12`.
pub fn dualize(f: &MultiPoly) -> Result<MultiPoly> {
    let vars = f.vars();
    let images = [
        ("p01", "p23", 1i64),
        ("p02", "p13", -1),
        ("p03", "p12", 1),
        ("p12", "p03", 1),
        ("p13", "p02", -1),
        ("p23", "p01", 1),
    ];
    let mut assignment = BTreeMap::new();
    for (v, img, sign) in images {
        if vars.index_of(v).is_some() {
            let p = MultiPoly::variable(vars, img)?.scale(&crate::polyring::int(sign));
            assignment.insert(v.to_string(), p);
        }
    }
    f.substitute(&assignment)
}

/// Honesty of the polarity-dual form: detects Chow forms of developable
/// surfaces (duals of curves).
pub fn dual_honest_test(f: &MultiPoly) -> Result<HonestTestResult> {
    honest_test(&dualize(f)?)
}

/// The k-th associated curve of a parametrized curve:
/// `γ[k](t) = γ(t) ∧ γ′(t) ∧ … ∧ γ⁽ᵏ⁾(t)`.
///
/// Returns the 4 coordinates (k = 0), the 6 Plücker coordinates of the
/// tangent line family (k = 1), or the 4 dual coordinates of the
/// osculating plane family (k = 2).
pub fn associated_curve(gamma: &[MultiPoly; 4], k: u32) -> Result<Vec<MultiPoly>> {
    if k > 2 {
        return Err(Error::DegreeMismatch(
            "associated curve index must be 0, 1 or 2",
        ));
    }
    let tvars = gamma[0].vars().clone();
    if tvars.len() != 1 || gamma.iter().any(|g| *g.vars() != tvars) {
        return Err(Error::VarSetMismatch);
    }
    let t = tvars.names()[0].clone();
    let d1: Vec<MultiPoly> = gamma.iter().map(|g| g.partial(&t)).collect::<Result<_>>()?;
    let d2: Vec<MultiPoly> = d1.iter().map(|g| g.partial(&t)).collect::<Result<_>>()?;
    let d3: Vec<MultiPoly> = d2.iter().map(|g| g.partial(&t)).collect::<Result<_>>()?;

    // non-degeneracy: the Wronskian determinant is not the zero polynomial
    let rows: [&[MultiPoly]; 4] = [gamma, &d1, &d2, &d3];
    if det4(&rows)?.is_zero() {
        return Err(Error::DegenerateCurve);
    }

    match k {
        0 => Ok(gamma.to_vec()),
        1 => {
            let d1arr: [MultiPoly; 4] = d1.clone().try_into().unwrap();
            let w = wedge(gamma, &d1arr)?;
            Ok(w.entries().to_vec())
        }
        _ => {
            // dual coordinates u with u·x = det[γ; γ′; γ″; x]
            let mut out = Vec::with_capacity(4);
            for col in 0..4 {
                let minor = minor3(&[gamma, &d1, &d2], col)?;
                let sign = if col % 2 == 0 { -1 } else { 1 };
                out.push(minor.scale(&crate::polyring::int(sign)));
            }
            Ok(out)
        }
    }
}

fn minor3(rows: &[&[MultiPoly]; 3], drop_col: usize) -> Result<MultiPoly> {
    let cols: Vec<usize> = (0..4).filter(|&c| c != drop_col).collect();
    let m = |r: usize, c: usize| &rows[r][cols[c]];
    let t1 = m(0, 0).checked_mul(
        &m(1, 1)
            .checked_mul(m(2, 2))?
            .checked_sub(&m(1, 2).checked_mul(m(2, 1))?)?,
    )?;
    let t2 = m(0, 1).checked_mul(
        &m(1, 0)
            .checked_mul(m(2, 2))?
            .checked_sub(&m(1, 2).checked_mul(m(2, 0))?)?,
    )?;
    let t3 = m(0, 2).checked_mul(
        &m(1, 0)
            .checked_mul(m(2, 1))?
            .checked_sub(&m(1, 1).checked_mul(m(2, 0))?)?,
    )?;
    t1.checked_sub(&t2)?.checked_add(&t3)
}

fn det4(rows: &[&[MultiPoly]; 4]) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(rows[0][0].vars());
    for col in 0..4 {
        let sub: [&[MultiPoly]; 3] = [rows[1], rows[2], rows[3]];
        let minor = minor3(&sub, col)?;
        let signed = if col % 2 == 0 {
            rows[0][col].checked_mul(&minor)?
        } else {
            rows[0][col].checked_mul(&minor)?.neg()
        };
        acc = acc.checked_add(&signed)?;
    }
    Ok(acc)
}

/// Full classification of a form on the Klein quadric.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub weak_cayley: bool,
    pub honest: bool,
    pub dual_honest: bool,
    pub canonical: Option<CanonicalCayleyRep>,
    pub honest_result: Option<HonestTestResult>,
    pub dual_result: Option<HonestTestResult>,
}

/// Run the classification pipeline: weak Cayley membership, canonical
/// representative, honesty and dual honesty.
pub fn classify(f: &MultiPoly) -> Result<ClassificationReport> {
    if !weak_cayley_test(f)? {
        return Ok(ClassificationReport {
            weak_cayley: false,
            honest: false,
            dual_honest: false,
            canonical: None,
            honest_result: None,
            dual_result: None,
        });
    }
    let rep = canonical_rep(f)?;
    let honest_result = honest_test_with_rep(f, &rep)?;
    let dual = dualize(f)?;
    let dual_rep = canonical_rep(&dual)?;
    let dual_result = honest_test_with_rep(&dual, &dual_rep)?;
    Ok(ClassificationReport {
        weak_cayley: true,
        honest: honest_result.honest,
        dual_honest: dual_result.honest,
        canonical: Some(rep),
        honest_result: Some(honest_result),
        dual_result: Some(dual_result),
    })
}
