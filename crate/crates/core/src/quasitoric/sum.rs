//! Connected sums at initial vertices, box sums through an intermediate cube,
//! and the resulting addition of cobordism classes.

use super::builders::s_product;
use super::{assemble_refined, CharMatrix, OmniQT};
use crate::error::{Error, Result};
use crate::polytope::{realize_polygon, CombPolytope, Sign};

/// Connected sum before re-refinement: facets `0..n` merged, then the
/// remaining facets of the first summand, then those of the second.
struct RawSum {
    polytope: CombPolytope,
    lambda: CharMatrix,
    signs: Vec<Sign>,
    /// Whether each vertex comes from the second summand.
    from_second: Vec<bool>,
}

fn raw_connected_sum(a: &OmniQT, b: &OmniQT) -> Result<RawSum> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::WrongDimension { expected: n, found: b.dim() });
    }
    if n < 2 {
        return Err(Error::DimensionTooLow(n));
    }
    if a.initial_sign() == b.initial_sign() {
        return Err(Error::SignClash);
    }
    let (m1, m2) = (a.num_facets(), b.num_facets());
    let m = m1 + m2 - n;
    let relabel = |k: usize| if k < n { k } else { k + m1 - n };

    let mut vertices: Vec<(Vec<usize>, Sign, bool)> = Vec::with_capacity(a.num_vertices() + b.num_vertices() - 2);
    for (w, &s) in a.polytope().vertex_sets().iter().zip(a.signs()).skip(1) {
        vertices.push((w.clone(), s, false));
    }
    for (w, &s) in b.polytope().vertex_sets().iter().zip(b.signs()).skip(1) {
        let mut image: Vec<usize> = w.iter().map(|&k| relabel(k)).collect();
        image.sort_unstable();
        vertices.push((image, s, true));
    }
    vertices.sort();
    let polytope = CombPolytope::new(n, m, vertices.iter().map(|v| v.0.clone()).collect())?;

    let (sa, sb) = (a.lambda_star(), b.lambda_star());
    let lambda_star: Vec<Vec<i64>> = (0..n).map(|i| sa[i].iter().chain(&sb[i]).copied().collect()).collect();
    Ok(RawSum {
        polytope,
        lambda: CharMatrix::from_refined(&lambda_star)?,
        signs: vertices.iter().map(|v| v.1).collect(),
        from_second: vertices.iter().map(|v| v.2).collect(),
    })
}

/// Connected sum at the initial vertices, re-refined at the second vertex of
/// the first summand. Signs of surviving vertices are inherited. For polygons
/// a rational geometric realization is attached.
pub fn connected_sum(a: &OmniQT, b: &OmniQT) -> Result<OmniQT> {
    let raw = raw_connected_sum(a, b)?;
    let second = a.polytope().vertex_sets()[1].clone();
    let sum = assemble_refined(raw.polytope, raw.lambda, raw.signs, None, &second)?;
    attach_polygon(sum)
}

fn attach_polygon(m: OmniQT) -> Result<OmniQT> {
    if m.dim() != 2 {
        return Ok(m);
    }
    let geometry = realize_polygon(m.polytope())?.normal_form()?;
    OmniQT::new(m.polytope().clone(), m.lambda().clone(), m.signs().to_vec(), Some(geometry))
}

/// The cube `±S = (Iⁿ, I_n)` oriented so that its initial sign is `initial`.
fn oriented_cube(n: usize, initial: Sign) -> Result<OmniQT> {
    let s = s_product(n)?.without_geometry();
    Ok(if s.initial_sign() == initial { s } else { s.reverse_orientation() })
}

/// `M1 # (±S) # M2`, with the cube oriented against `M1` and re-refined at
/// the lexicographically first cube vertex whose sign is opposite to the
/// initial sign of `M2`.
pub fn box_sum(a: &OmniQT, b: &OmniQT) -> Result<OmniQT> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::WrongDimension { expected: n, found: b.dim() });
    }
    if n < 2 {
        return Err(Error::DimensionTooLow(n));
    }
    let cube = oriented_cube(n, -a.initial_sign())?;
    let raw = raw_connected_sum(&a.without_geometry(), &cube)?;
    let target = -b.initial_sign();
    let pick = (0..raw.signs.len())
        .find(|&i| raw.from_second[i] && raw.signs[i] == target)
        .expect("the cube keeps vertices of both signs for n >= 2");
    let v = raw.polytope.vertex_sets()[pick].clone();
    let middle = assemble_refined(raw.polytope, raw.lambda, raw.signs, None, &v)?;
    connected_sum(&middle, b)
}

/// `(±S) # M`: the same cobordism class over `Iⁿ # P`, with vertices of both
/// signs.
pub fn difsi_normalize(m: &OmniQT) -> Result<OmniQT> {
    if m.dim() < 2 {
        return Err(Error::DimensionTooLow(m.dim()));
    }
    connected_sum(&oriented_cube(m.dim(), -m.initial_sign())?, m)
}

/// A representative of `[M1] + [M2]`, built as the box sum.
pub fn add_cobordism(a: &OmniQT, b: &OmniQT) -> Result<OmniQT> {
    let sum = box_sum(a, b)?;
    debug_assert_eq!(sum.sign_sum(), a.sign_sum() + b.sign_sum());
    Ok(sum)
}
