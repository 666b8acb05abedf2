//! Sparse multivariate polynomial arithmetic over the rationals.
//!
//! Every coefficient is an exact `BigRational`; there is no floating point
//! anywhere in the crate. Polynomials are canonical by construction: the
//! term map never stores a zero coefficient, so two polynomials are equal
//! iff their term maps are equal.

pub mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every coefficient in the crate.
pub type Scalar = BigRational;

/// The six Plücker coordinate names in their reserved order.
pub const PLUECKER_NAMES: [&str; 6] = ["p01", "p02", "p03", "p12", "p13", "p23"];

/// Convenience constructor for an integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

/// Convenience constructor for the fraction `n/d`.
pub fn rat(n: i64, d: i64) -> Scalar {
    BigRational::new(n.into(), d.into())
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct VarData {
    names: Vec<String>,
    /// Number of leading variables forming the elimination block.
    elim: usize,
}

/// An ordered set of variable names with an optional elimination block.
///
/// The block structure drives the monomial order: variables in the leading
/// block are eliminated ahead of the retained ones. The six Plücker names
/// are reserved and, when present, must appear in their fixed relative
/// order `p01, p02, p03, p12, p13, p23`.
#[derive(Debug, Clone)]
pub struct VarSet(Arc<VarData>);

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for VarSet {}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>, elim: usize) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if elim > names.len() {
            return Err(Error::VarSetMismatch);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        // Reserved relative order of the Plücker block.
        let positions: Vec<usize> = PLUECKER_NAMES
            .iter()
            .filter_map(|p| names.iter().position(|n| n == p))
            .collect();
        if positions.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::ReservedOrder);
        }
        Ok(VarSet(Arc::new(VarData { names, elim })))
    }

    /// The standard six Plücker variables, no elimination block.
    pub fn plucker() -> Self {
        VarSet::new(PLUECKER_NAMES.to_vec(), 0).unwrap()
    }

    /// Point variables `x0..x3` (elimination block) followed by the Plücker block.
    pub fn points_and_plucker() -> Self {
        let mut names = vec!["x0", "x1", "x2", "x3"];
        names.extend(PLUECKER_NAMES);
        VarSet::new(names, 4).unwrap()
    }

    /// The four point variables alone.
    pub fn points() -> Self {
        VarSet::new(vec!["x0", "x1", "x2", "x3"], 0).unwrap()
    }

    /// One-variable set, used for curve parametrizations.
    pub fn univariate(name: &str) -> Self {
        VarSet::new(vec![name], 0).unwrap()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn elim_len(&self) -> usize {
        self.0.elim
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// The monomial order induced by the block structure.
    pub fn order(&self) -> MonomialOrder {
        if self.0.elim == 0 {
            MonomialOrder::GrevLex
        } else {
            MonomialOrder::Block { split: self.0.elim }
        }
    }

    /// Positions of the six Plücker variables, if all are present.
    pub fn plucker_indices(&self) -> Option<[usize; 6]> {
        let mut idx = [0usize; 6];
        for (k, name) in PLUECKER_NAMES.iter().enumerate() {
            idx[k] = self.index_of(name)?;
        }
        Some(idx)
    }
}

/// A total order on exponent vectors, compatible with multiplication.
///
/// `GrevLex` is graded reverse lexicographic with the leftmost variable
/// largest; `Block` compares the leading `split` variables first (grevlex
/// within each block), which is an elimination order for that block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    Block { split: usize },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller trailing exponent wins
            return if a[i] < b[i] {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block { split } => match grevlex(&a[..split], &b[..split]) {
                Ordering::Equal => grevlex(&a[split..], &b[split..]),
                o => o,
            },
        }
    }
}

/// Dense exponent vector, aligned with the owning `VarSet`.
pub type Monomial = Vec<u32>;

pub(crate) fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn mono_div(a: &[u32], b: &[u32]) -> Option<Monomial> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y))
        .collect::<Option<Vec<u32>>>()
}

pub(crate) fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn mono_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        MultiPoly::constant(vars, Scalar::one())
    }

    pub fn variable(vars: &VarSet, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Scalar::one());
        Ok(MultiPoly {
            vars: vars.clone(),
            terms,
        })
    }

    pub fn from_terms<I>(vars: &VarSet, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in iter {
            debug_assert_eq!(m.len(), vars.len());
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_deg(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| mono_deg(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree of a homogeneous polynomial; the zero polynomial reports 0.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(""));
        }
        Ok(self.total_degree().unwrap_or(0))
    }

    pub fn coeff(&self, m: &[u32]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = MultiPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).unwrap();
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `name`.
    pub fn partial(&self, name: &str) -> Result<Self> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * int(m[i] as i64));
        }
        Ok(out)
    }

    /// Exact composition: every assigned variable is replaced by its image.
    ///
    /// Unassigned variables must exist in the common target variable set of
    /// the images; with an empty assignment the target is the original set.
    pub fn substitute(&self, assignment: &BTreeMap<String, MultiPoly>) -> Result<Self> {
        let target = match assignment.values().next() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        for (name, image) in assignment {
            if self.vars.index_of(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
            if image.vars != target {
                return Err(Error::VarSetMismatch);
            }
        }
        let mut images: Vec<MultiPoly> = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            match assignment.get(name) {
                Some(p) => images.push(p.clone()),
                None => images.push(MultiPoly::variable(&target, name)?),
            }
        }
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(&images[i].pow(e))?;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Evaluate at a full rational point.
    pub fn evaluate(&self, point: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let mut vals: Vec<Scalar> = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            vals.push(
                point
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::UnknownVariable(name.clone()))?,
            );
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Map into another variable set by name. Fails if a used variable is
    /// missing from the target.
    pub fn map_to(&self, target: &VarSet) -> Result<Self> {
        let mut index: Vec<Option<usize>> = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            index.push(target.index_of(name));
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = vec![0u32; target.len()];
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    match index[i] {
                        Some(j) => m2[j] = e,
                        None => return Err(Error::UnknownVariable(self.vars.names()[i].clone())),
                    }
                }
            }
            out.add_term(m2, c.clone());
        }
        Ok(out)
    }

    /// Terms sorted by the given monomial order, ascending.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, Scalar)> {
        let mut v: Vec<(Monomial, Scalar)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| order.cmp(&a.0, &b.0));
        v
    }

    /// Leading (largest) term in the given order.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Scalar::one() / c)),
        }
    }

    /// Multivariate division with cofactors: `self = Σ qᵢ·dᵢ + r`, with no
    /// remainder term divisible by any divisor's leading term. Deterministic:
    /// at each step the first divisor whose leading term divides is used.
    pub fn div_rem(
        &self,
        divisors: &[&MultiPoly],
        order: MonomialOrder,
    ) -> Result<(Vec<MultiPoly>, MultiPoly)> {
        for d in divisors {
            self.check_same_vars(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        let lts: Vec<(Monomial, Scalar)> = divisors
            .iter()
            .map(|d| d.leading_term(order).unwrap())
            .collect();
        let divisor_terms: Vec<Vec<(Monomial, Scalar)>> = divisors
            .iter()
            .map(|d| {
                let mut v = d.sorted_terms(order);
                v.reverse();
                v
            })
            .collect();

        // working vector kept sorted descending in `order`
        let mut work = self.sorted_terms(order);
        work.reverse();
        let mut quots: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); divisors.len()];
        let mut rem: Vec<(Monomial, Scalar)> = Vec::new();

        'outer: while let Some((m, c)) = work.first().cloned() {
            for (k, (ltm, ltc)) in lts.iter().enumerate() {
                if let Some(t) = mono_div(&m, ltm) {
                    let tc = &c / ltc;
                    // work -= tc * x^t * divisor_k  (merge of two sorted lists)
                    let shifted: Vec<(Monomial, Scalar)> = divisor_terms[k]
                        .iter()
                        .map(|(dm, dc)| (mono_mul(dm, &t), dc * &tc))
                        .collect();
                    work = merge_sub(&work, &shifted, order);
                    quots[k].push((t, tc));
                    continue 'outer;
                }
            }
            rem.push((m, c));
            work.remove(0);
        }

        let quotients = quots
            .into_iter()
            .map(|v| MultiPoly::from_terms(&self.vars, v))
            .collect();
        Ok((quotients, MultiPoly::from_terms(&self.vars, rem)))
    }

    /// Exact division: returns `q` with `self = q·g`, or `NotDivisible`.
    pub fn exact_div(&self, g: &MultiPoly) -> Result<MultiPoly> {
        let order = self.vars.order();
        let (mut quots, rem) = self.div_rem(&[g], order)?;
        if rem.is_zero() {
            Ok(quots.remove(0))
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Canonical text form; `parse::parse_poly` inverts it.
    pub fn to_canonical_string(&self) -> String {
        format!("{self}")
    }
}

/// Subtract the sorted-descending term list `b` from `a`.
fn merge_sub(
    a: &[(Monomial, Scalar)],
    b: &[(Monomial, Scalar)],
    order: MonomialOrder,
) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), -b[j].1.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 - &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), -c.clone())));
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self.sorted_terms(self.vars.order());
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mono_str = monomial_string(&self.vars, m);
            if mono_str.is_empty() {
                write!(f, "{}", scalar_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono_str}")?;
            } else {
                write!(f, "{}*{}", scalar_string(&mag), mono_str)?;
            }
        }
        Ok(())
    }
}

fn scalar_string(c: &Scalar) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn monomial_string(vars: &VarSet, m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        if e == 1 {
            parts.push(vars.names()[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars.names()[i], e));
        }
    }
    parts.join("*")
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("variable set mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests;
