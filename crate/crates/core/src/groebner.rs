//! Exact Gröbner-basis engine over the rationals.
//!
//! Buchberger's algorithm with the two classical pair-pruning criteria,
//! normal forms with cofactor tracking (every reduction is a checkable
//! certificate), ideal membership, block-order elimination, saturation and
//! ideal intersection. Basis elements are kept monic; reduced bases are
//! unique per (ideal, order).

use std::sync::OnceLock;

use num_traits::One;

use crate::error::{Error, Result};
use crate::polyring::{
    mono_deg, mono_div, mono_lcm, mono_mul, Monomial, MonomialOrder, MultiPoly, Scalar, VarSet,
};

/// An ideal given by generators, with a lazily computed reduced Gröbner
/// basis. Completed values are immutable and safe to share across threads.
#[derive(Debug)]
pub struct IdealBasis {
    vars: VarSet,
    generators: Vec<MultiPoly>,
    order: MonomialOrder,
    max_degree: Option<u32>,
    groebner: OnceLock<GroebnerData>,
}

#[derive(Debug, Clone)]
struct GroebnerData {
    basis: Vec<MultiPoly>,
    /// `basis[k] = Σ_j expr[k][j] · generators[j]`
    expr: Vec<Vec<MultiPoly>>,
}

/// Remainder and cofactors of a normal-form computation:
/// `input = Σ cofactors[i]·basis[i] + remainder`.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub remainder: MultiPoly,
    pub cofactors: Vec<MultiPoly>,
}

impl IdealBasis {
    pub fn new(generators: Vec<MultiPoly>, order: MonomialOrder) -> Result<Self> {
        let gens: Vec<MultiPoly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let vars = match gens.first() {
            Some(g) => g.vars().clone(),
            None => return Err(Error::DivisionByZero),
        };
        if gens.iter().any(|g| *g.vars() != vars) {
            return Err(Error::VarSetMismatch);
        }
        Ok(IdealBasis {
            vars,
            generators: gens,
            order,
            max_degree: None,
            groebner: OnceLock::new(),
        })
    }

    /// Same, with the order taken from the variable set's block structure.
    pub fn with_default_order(generators: Vec<MultiPoly>) -> Result<Self> {
        let order = generators
            .first()
            .map(|g| g.vars().order())
            .unwrap_or(MonomialOrder::GrevLex);
        IdealBasis::new(generators, order)
    }

    /// Cap the total degree of S-pairs processed by Buchberger; exceeding
    /// the cap aborts with `BudgetExceeded`.
    pub fn with_max_degree(mut self, cap: Option<u32>) -> Self {
        self.max_degree = cap;
        self
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    fn data(&self) -> Result<&GroebnerData> {
        if let Some(d) = self.groebner.get() {
            return Ok(d);
        }
        let d = buchberger_tracked(&self.generators, self.order, self.max_degree)?;
        Ok(self.groebner.get_or_init(|| d))
    }

    /// The reduced Gröbner basis (computed on first use, then cached).
    pub fn groebner_basis(&self) -> Result<&[MultiPoly]> {
        Ok(&self.data()?.basis)
    }

    /// Expression of basis element `k` over the original generators.
    pub fn basis_expression(&self, k: usize) -> Result<&[MultiPoly]> {
        Ok(&self.data()?.expr[k])
    }

    /// Deterministic normal form of `f` against the reduced basis, with
    /// cofactors on the basis elements.
    pub fn normal_form(&self, f: &MultiPoly) -> Result<NormalForm> {
        let data = self.data()?;
        let refs: Vec<&MultiPoly> = data.basis.iter().collect();
        let (cofactors, remainder) = f.div_rem(&refs, self.order)?;
        #[cfg(debug_assertions)]
        {
            let mut acc = remainder.clone();
            for (c, b) in cofactors.iter().zip(&data.basis) {
                acc = acc.checked_add(&c.checked_mul(b)?)?;
            }
            debug_assert_eq!(&acc, f, "normal form certificate failed to reconstruct");
        }
        Ok(NormalForm {
            remainder,
            cofactors,
        })
    }

    /// Cofactors of `f` over the *original generators*, provided the
    /// normal form is zero: `f = Σ out[j]·generators[j]`.
    pub fn express_over_generators(&self, f: &MultiPoly) -> Result<Option<Vec<MultiPoly>>> {
        let nf = self.normal_form(f)?;
        if !nf.remainder.is_zero() {
            return Ok(None);
        }
        let data = self.data()?;
        let mut out = vec![MultiPoly::zero(&self.vars); self.generators.len()];
        for (k, c) in nf.cofactors.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, e) in data.expr[k].iter().enumerate() {
                out[j] = out[j].checked_add(&c.checked_mul(e)?)?;
            }
        }
        #[cfg(debug_assertions)]
        {
            let mut acc = MultiPoly::zero(&self.vars);
            for (c, g) in out.iter().zip(&self.generators) {
                acc = acc.checked_add(&c.checked_mul(g)?)?;
            }
            debug_assert_eq!(&acc, f, "generator cofactor expansion failed");
        }
        Ok(Some(out))
    }

    /// Ideal membership: true iff the normal form remainder vanishes.
    pub fn member(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.remainder.is_zero())
    }

    /// True iff the ideal is the whole ring (basis contains a constant).
    pub fn is_unit_ideal(&self) -> Result<bool> {
        Ok(self
            .groebner_basis()?
            .iter()
            .any(|g| g.is_constant() && !g.is_zero()))
    }

    /// Eliminate the named variables, which must form a leading prefix of
    /// the variable set. Returns the elimination ideal over the retained
    /// variables, with its reduced basis already in place.
    pub fn eliminate(&self, drop: &[&str]) -> Result<IdealBasis> {
        let names = self.vars.names();
        if drop.len() > names.len() || !drop.iter().zip(names).all(|(d, n)| d == n) {
            return Err(Error::VarSetMismatch);
        }
        let split = drop.len();
        let block = MonomialOrder::Block { split };
        // an independent basis in the elimination order
        let work =
            IdealBasis::new(self.generators.clone(), block)?.with_max_degree(self.max_degree);
        let data = work.data()?;
        let retained = VarSet::new(
            names[split..].to_vec(),
            self.vars.elim_len().saturating_sub(split),
        )?;
        let mut kept = Vec::new();
        for g in &data.basis {
            let uses_dropped = g.terms().any(|(m, _)| m[..split].iter().any(|&e| e > 0));
            if !uses_dropped {
                kept.push(g.map_to(&retained)?);
            }
        }
        let out = IdealBasis {
            vars: retained,
            generators: kept.clone(),
            order: MonomialOrder::GrevLex,
            max_degree: self.max_degree,
            groebner: OnceLock::new(),
        };
        // the filtered elements are already a reduced basis of the
        // elimination ideal in the induced order
        let expr = (0..kept.len())
            .map(|k| {
                (0..kept.len())
                    .map(|j| {
                        if j == k {
                            MultiPoly::one(out.vars())
                        } else {
                            MultiPoly::zero(out.vars())
                        }
                    })
                    .collect()
            })
            .collect();
        let _ = out.groebner.set(GroebnerData { basis: kept, expr });
        Ok(out)
    }

    /// Saturation `I : g^∞` via the auxiliary-variable construction:
    /// adjoin `t`, add `1 − t·g`, eliminate `t`.
    pub fn saturate(&self, g: &MultiPoly) -> Result<IdealBasis> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut aux = String::from("t");
        while self.vars.index_of(&aux).is_some() {
            aux.push('_');
        }
        let mut names: Vec<String> = vec![aux.clone()];
        names.extend(self.vars.names().iter().cloned());
        let extended = VarSet::new(names, 1 + self.vars.elim_len())?;
        let mut gens: Vec<MultiPoly> = self
            .generators
            .iter()
            .map(|p| p.map_to(&extended))
            .collect::<Result<_>>()?;
        let one_minus_tg = MultiPoly::one(&extended).checked_sub(
            &MultiPoly::variable(&extended, &aux)?.checked_mul(&g.map_to(&extended)?)?,
        )?;
        gens.push(one_minus_tg);
        let lifted = IdealBasis::new(gens, MonomialOrder::Block { split: 1 })?
            .with_max_degree(self.max_degree);
        let eliminated = lifted.eliminate(&[&aux])?;
        // re-seat over the original variable set (names match)
        let gens_back: Vec<MultiPoly> = eliminated
            .generators
            .iter()
            .map(|p| p.map_to(&self.vars))
            .collect::<Result<_>>()?;
        if gens_back.is_empty() {
            // saturation of the zero-ish ideal; keep an empty basis marker
            return Err(Error::NotACurve);
        }
        IdealBasis::new(gens_back, self.order).map(|i| i.with_max_degree(self.max_degree))
    }

    /// Saturation by a single variable. For homogeneous ideals this uses
    /// the grevlex divide-out: with the variable placed last, dividing each
    /// reduced-basis element by its largest power of that variable
    /// generates `I : v^∞`. Falls back to the auxiliary-variable
    /// construction when the shortcut does not apply.
    pub fn saturate_variable(&self, name: &str) -> Result<IdealBasis> {
        let var = MultiPoly::variable(&self.vars, name)?;
        if self.generators.iter().any(|g| !g.is_homogeneous()) {
            return self.saturate(&var);
        }
        let mut names: Vec<String> = self
            .vars
            .names()
            .iter()
            .filter(|n| n.as_str() != name)
            .cloned()
            .collect();
        names.push(name.to_string());
        let Ok(perm) = VarSet::new(names, 0) else {
            return self.saturate(&var);
        };
        let gens: Vec<MultiPoly> = self
            .generators
            .iter()
            .map(|g| g.map_to(&perm))
            .collect::<Result<_>>()?;
        let work = IdealBasis::new(gens, MonomialOrder::GrevLex)?.with_max_degree(self.max_degree);
        let last = perm.len() - 1;
        let divided: Vec<MultiPoly> = work
            .groebner_basis()?
            .iter()
            .map(|g| {
                let shift = g.terms().map(|(m, _)| m[last]).min().unwrap_or(0);
                if shift == 0 {
                    return g.map_to(&self.vars);
                }
                let terms: Vec<(Monomial, Scalar)> = g
                    .terms()
                    .map(|(m, c)| {
                        let mut m2 = m.clone();
                        m2[last] -= shift;
                        (m2, c.clone())
                    })
                    .collect();
                MultiPoly::from_terms(&perm, terms).map_to(&self.vars)
            })
            .collect::<Result<_>>()?;
        IdealBasis::new(divided, self.order).map(|i| i.with_max_degree(self.max_degree))
    }

    /// Intersection of two ideals over the same variable set, via
    /// `(t·I + (1−t)·J) ∩ k[vars]`.
    pub fn intersect(&self, other: &IdealBasis) -> Result<IdealBasis> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch);
        }
        let mut aux = String::from("t");
        while self.vars.index_of(&aux).is_some() {
            aux.push('_');
        }
        let mut names: Vec<String> = vec![aux.clone()];
        names.extend(self.vars.names().iter().cloned());
        let extended = VarSet::new(names, 1 + self.vars.elim_len())?;
        let t = MultiPoly::variable(&extended, &aux)?;
        let one_minus_t = MultiPoly::one(&extended).checked_sub(&t)?;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(t.checked_mul(&g.map_to(&extended)?)?);
        }
        for g in &other.generators {
            gens.push(one_minus_t.checked_mul(&g.map_to(&extended)?)?);
        }
        let lifted = IdealBasis::new(gens, MonomialOrder::Block { split: 1 })?
            .with_max_degree(self.max_degree);
        let eliminated = lifted.eliminate(&[&aux])?;
        let gens_back: Vec<MultiPoly> = eliminated
            .generators
            .iter()
            .map(|p| p.map_to(&self.vars))
            .collect::<Result<_>>()?;
        if gens_back.is_empty() {
            return Err(Error::NotACurve);
        }
        IdealBasis::new(gens_back, self.order).map(|i| i.with_max_degree(self.max_degree))
    }
}

/// Convenience front end matching the classical entry point.
pub fn buchberger(generators: Vec<MultiPoly>, order: MonomialOrder) -> Result<IdealBasis> {
    let ideal = IdealBasis::new(generators, order)?;
    ideal.groebner_basis()?;
    Ok(ideal)
}

struct Elem {
    poly: MultiPoly,
    lt: (Monomial, Scalar),
    expr: Vec<MultiPoly>,
}

fn buchberger_tracked(
    generators: &[MultiPoly],
    order: MonomialOrder,
    max_degree: Option<u32>,
) -> Result<GroebnerData> {
    let vars = generators[0].vars().clone();
    let zero = MultiPoly::zero(&vars);
    let mut basis: Vec<Elem> = Vec::new();

    let push = |basis: &mut Vec<Elem>, poly: MultiPoly, expr: Vec<MultiPoly>| {
        let (ltm, ltc) = poly.leading_term(order).unwrap();
        let inv = Scalar::one() / &ltc;
        let poly = poly.scale(&inv);
        let expr = expr.into_iter().map(|e| e.scale(&inv)).collect();
        basis.push(Elem {
            lt: (ltm, Scalar::one()),
            poly,
            expr,
        });
    };

    for (j, g) in generators.iter().enumerate() {
        let mut expr = vec![zero.clone(); generators.len()];
        expr[j] = MultiPoly::one(&vars);
        push(&mut basis, g.clone(), expr);
    }

    // pair queue ordered by (lcm degree, i, j): the normal strategy
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    let mut done: std::collections::BTreeSet<(usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let lcm = mono_lcm(&basis[i].lt.0, &basis[j].lt.0);
            pairs.push((mono_deg(&lcm), i, j));
        }
    }

    while !pairs.is_empty() {
        pairs.sort_unstable();
        let (deg, i, j) = pairs.remove(0);
        if let Some(cap) = max_degree {
            if deg > cap {
                return Err(Error::BudgetExceeded(cap));
            }
        }
        done.insert((i, j));

        let lcm = mono_lcm(&basis[i].lt.0, &basis[j].lt.0);
        // product criterion: coprime leading monomials
        if lcm == mono_mul(&basis[i].lt.0, &basis[j].lt.0) {
            continue;
        }
        // chain criterion
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && mono_div(&lcm, &basis[k].lt.0).is_some()
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        // S-polynomial with expression tracking
        let ti = mono_div(&lcm, &basis[i].lt.0).unwrap();
        let tj = mono_div(&lcm, &basis[j].lt.0).unwrap();
        let mi = MultiPoly::from_terms(&vars, [(ti, Scalar::one())]);
        let mj = MultiPoly::from_terms(&vars, [(tj, Scalar::one())]);
        let spoly = mi
            .checked_mul(&basis[i].poly)?
            .checked_sub(&mj.checked_mul(&basis[j].poly)?)?;
        let sexpr: Vec<MultiPoly> = basis[i]
            .expr
            .iter()
            .zip(&basis[j].expr)
            .map(|(a, b)| {
                mi.checked_mul(a)
                    .and_then(|x| x.checked_sub(&mj.checked_mul(b)?))
            })
            .collect::<Result<_>>()?;

        let (rem, rexpr) = reduce_tracked(&spoly, &sexpr, &basis, order)?;
        if rem.is_zero() {
            continue;
        }
        let new_index = basis.len();
        push(&mut basis, rem, rexpr);
        for k in 0..new_index {
            let lcm = mono_lcm(&basis[k].lt.0, &basis[new_index].lt.0);
            pairs.push((mono_deg(&lcm), k, new_index));
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another retained one
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && mono_div(&basis[i].lt.0, &basis[j].lt.0).is_some()
                && (basis[i].lt.0 != basis[j].lt.0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut reduced: Vec<Elem> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();

    // tail-reduce each element against the others until stable
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<&MultiPoly> = reduced
                .iter()
                .enumerate()
                .filter_map(|(j, e)| (j != i).then_some(&e.poly))
                .collect();
            if others.is_empty() {
                break;
            }
            let (cofs, rem) = reduced[i].poly.div_rem(&others, order)?;
            if rem != reduced[i].poly {
                changed = true;
                let mut expr = reduced[i].expr.clone();
                let mut c_iter = cofs.into_iter();
                for (j, other) in reduced
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(j, e)| (j, e.expr.clone()))
                    .collect::<Vec<_>>()
                {
                    let c = c_iter.next().unwrap();
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, e) in expr.iter_mut().zip(&other) {
                        *slot = slot.checked_sub(&c.checked_mul(e)?)?;
                    }
                    let _ = j;
                }
                let lt = rem.leading_term(order).unwrap();
                reduced[i] = Elem {
                    poly: rem,
                    lt,
                    expr,
                };
            }
        }
        if !changed {
            break;
        }
    }

    // deterministic presentation: sort by leading monomial, descending
    reduced.sort_by(|a, b| order.cmp(&b.lt.0, &a.lt.0));

    Ok(GroebnerData {
        basis: reduced.iter().map(|e| e.poly.clone()).collect(),
        expr: reduced.into_iter().map(|e| e.expr).collect(),
    })
}

/// Fully reduce `f` against the basis, updating its expression alongside.
fn reduce_tracked(
    f: &MultiPoly,
    fexpr: &[MultiPoly],
    basis: &[Elem],
    order: MonomialOrder,
) -> Result<(MultiPoly, Vec<MultiPoly>)> {
    let divisors: Vec<&MultiPoly> = basis.iter().map(|e| &e.poly).collect();
    let (cofs, rem) = f.div_rem(&divisors, order)?;
    let mut expr = fexpr.to_vec();
    for (c, e) in cofs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (slot, ge) in expr.iter_mut().zip(&e.expr) {
            *slot = slot.checked_sub(&c.checked_mul(ge)?)?;
        }
    }
    Ok((rem, expr))
}
