//! Harmonic decomposition on the Klein quadric and canonical Cayley
//! representatives.
//!
//! Every homogeneous degree-m form splits uniquely as `F = Σᵢ Qⁱ·hᵢ` with
//! each `hᵢ` harmonic (`Δhᵢ = 0`). The split is computed by peeling with
//! the scaling identity `Δ(G·Qⁱ) = i(m+2−i)·G·Qⁱ⁻¹` for harmonic `G` of
//! degree `m−2i`, so no linear algebra over a monomial basis is needed.
//! On top of the decomposition sits the canonical representative `F₂` of a
//! weakly Cayley form: the unique `F₀ + Q·F₁` (both parts harmonic) that
//! defines the same 3-fold and whose self-bracket lies in `(Q)`.

use crate::error::{Error, Result};
use crate::groebner::IdealBasis;
use crate::klein::{bracket, klein_quadric, laplacian};
use crate::polyring::{int, MultiPoly, Scalar};

/// The components of `F = Σᵢ Qⁱ·hᵢ` with `hᵢ` harmonic of degree `m − 2i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicDecomposition {
    pub degree: u32,
    pub components: Vec<MultiPoly>,
}

impl HarmonicDecomposition {
    /// Reassemble `Σᵢ Qⁱ·hᵢ` exactly.
    pub fn reconstruct(&self) -> Result<MultiPoly> {
        let vars = self.components[0].vars();
        let q = klein_quadric(vars)?;
        let mut acc = MultiPoly::zero(vars);
        let mut qpow = MultiPoly::one(vars);
        for h in &self.components {
            acc = acc.checked_add(&qpow.checked_mul(h)?)?;
            qpow = qpow.checked_mul(&q)?;
        }
        Ok(acc)
    }
}

/// Harmonic decomposition of a homogeneous polynomial.
pub fn decompose(f: &MultiPoly) -> Result<HarmonicDecomposition> {
    let m = f
        .homogeneous_degree()
        .map_err(|_| Error::NotHomogeneous(" for harmonic decomposition"))?;
    let mut components = peel(f, m)?;
    components.resize(m as usize / 2 + 1, MultiPoly::zero(f.vars()));
    Ok(HarmonicDecomposition {
        degree: m,
        components,
    })
}

/// Recursive peeling: decompose ΔF one level down, divide by the scaling
/// constants `(j+1)(m+1−j)` to recover `h_{j+1}`, then solve for `h₀`.
fn peel(f: &MultiPoly, m: u32) -> Result<Vec<MultiPoly>> {
    if f.is_zero() || m < 2 {
        return Ok(vec![f.clone()]);
    }
    let lap = laplacian(f)?;
    let lower = peel(&lap, m - 2)?;
    let q = klein_quadric(f.vars())?;
    let mut components = Vec::with_capacity(lower.len() + 1);
    components.push(MultiPoly::zero(f.vars())); // placeholder for h0
    let mut rest = MultiPoly::zero(f.vars());
    let mut qpow = q.clone();
    for (j, g) in lower.iter().enumerate() {
        let c = int(((j as i64) + 1) * ((m as i64) + 1 - j as i64));
        let h = g.scale(&(Scalar::from_integer(1.into()) / c));
        rest = rest.checked_add(&qpow.checked_mul(&h)?)?;
        components.push(h);
        qpow = qpow.checked_mul(&q)?;
    }
    components[0] = f.checked_sub(&rest)?;
    Ok(components)
}

/// The harmonic projector `h_m`: the top harmonic component of `F`.
pub fn harmonic_project(f: &MultiPoly) -> Result<MultiPoly> {
    Ok(decompose(f)?.components.remove(0))
}

/// Canonical representative of a weakly Cayley form, together with the
/// cofactor certificate `{F,F} = A·Q + B·F` for the input `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCayleyRep {
    pub f2: MultiPoly,
    pub f0: MultiPoly,
    pub f1: MultiPoly,
    pub cofactor_a: MultiPoly,
    pub cofactor_b: MultiPoly,
}

/// Compute the canonical representative `F₂ = F₀ + Q·F₁` of a weakly
/// Cayley form `F`.
///
/// The cofactor pair is fixed deterministically: `{F,F}` is first divided
/// against the ordered list `[F, Q]`; any leftover is expressed over the
/// generators through the Gröbner basis of `(Q, F)` (a nonzero normal form
/// there means the input was not weakly Cayley). Then `F₂` is
/// `F − Q·B/(2m)` projected onto its harmonic part plus `Q` times the next
/// one, which erases the non-uniqueness of the cofactors.
pub fn canonical_rep(f: &MultiPoly) -> Result<CanonicalCayleyRep> {
    let m = f
        .homogeneous_degree()
        .map_err(|_| Error::NotHomogeneous(" for the canonical representative"))?;
    if m == 0 || f.is_zero() {
        return Err(Error::NotHomogeneous(" of positive degree"));
    }
    let vars = f.vars();
    let q = klein_quadric(vars)?;
    let br = bracket(f, f)?;

    // direct division against [F, Q], quotient on F is the B candidate
    let order = vars.order();
    let (quots, rest) = br.div_rem(&[f, &q], order)?;
    let (mut cof_b, mut cof_a) = (quots[0].clone(), quots[1].clone());

    let ideal = IdealBasis::with_default_order(vec![q.clone(), f.clone()])?;
    if !rest.is_zero() {
        match ideal.express_over_generators(&rest)? {
            Some(cofs) => {
                cof_a = cof_a.checked_add(&cofs[0])?;
                cof_b = cof_b.checked_add(&cofs[1])?;
            }
            None => return Err(Error::NotWeaklyCayley),
        }
    }

    // self-check for small degrees, where the cofactor pair is unique:
    // an independent, purely Gröbner-based route must agree
    if m <= 3 {
        if let Some(cofs) = ideal.express_over_generators(&br)? {
            assert_eq!(cofs[1], cof_b, "cofactor B must be unique in degree ≤ 3");
        } else {
            return Err(Error::NotWeaklyCayley);
        }
    }

    let g = cof_b.scale(&crate::polyring::rat(-1, 2 * m as i64));
    let f2_raw = f.checked_add(&q.checked_mul(&g)?)?;
    let dec = decompose(&f2_raw)?;
    let f0 = dec.components[0].clone();
    let f1 = if dec.components.len() > 1 {
        dec.components[1].clone()
    } else {
        MultiPoly::zero(vars)
    };
    let f2 = f0.checked_add(&q.checked_mul(&f1)?)?;

    // the defining property of F₂
    let br2 = bracket(&f2, &f2)?;
    if !br2.is_zero() && br2.exact_div(&q).is_err() {
        return Err(Error::NotWeaklyCayley);
    }

    Ok(CanonicalCayleyRep {
        f2,
        f0,
        f1,
        cofactor_a: cof_a,
        cofactor_b: cof_b,
    })
}

/// The quadratic equation for a Cayley candidate `F₀ + Q·F₁`:
/// returns `h_{2m−2}({F₀+QF₁, F₀+QF₁})`, which vanishes exactly on the
/// candidate locus.
pub fn quadratic_equation_check(f0: &MultiPoly, f1: &MultiPoly) -> Result<MultiPoly> {
    if !laplacian(f0)?.is_zero() || !laplacian(f1)?.is_zero() {
        return Err(Error::NotHarmonic);
    }
    let m0 = f0.homogeneous_degree()?;
    let m1 = f1.homogeneous_degree()?;
    if !f0.is_zero() && !f1.is_zero() && m0 != m1 + 2 {
        return Err(Error::DegreeMismatch(
            "second argument must be harmonic of degree two less",
        ));
    }
    let q = klein_quadric(f0.vars())?;
    let w = f0.checked_add(&q.checked_mul(f1)?)?;
    let br = bracket(&w, &w)?;
    if br.is_zero() {
        return Ok(br);
    }
    harmonic_project(&br)
}
