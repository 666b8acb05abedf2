//! Shared fixtures for the benchmark targets.

use cayley_core::chow::{twisted_cubic_form, CurveIdeal};
use cayley_core::{parse_poly, MultiPoly, VarSet};

pub fn quadric_form() -> MultiPoly {
    parse_poly("(p01+p23)^2 + 4*p03*p12", &VarSet::plucker()).unwrap()
}

pub fn cubic_form() -> MultiPoly {
    twisted_cubic_form(&VarSet::plucker()).unwrap()
}

pub fn dense_degree_five() -> MultiPoly {
    // a fixed, fairly dense degree-5 form
    let vs = VarSet::plucker();
    let q = cayley_core::klein_quadric(&vs).unwrap();
    let f = cubic_form();
    f.checked_mul(&q).unwrap()
}

pub fn twisted_cubic_curve() -> CurveIdeal {
    let xs = VarSet::points();
    let px = |s: &str| parse_poly(s, &xs).unwrap();
    CurveIdeal::new(
        vec![px("x0*x2 - x1^2"), px("x0*x3 - x1*x2"), px("x1*x3 - x2^2")],
        None,
    )
    .unwrap()
}
