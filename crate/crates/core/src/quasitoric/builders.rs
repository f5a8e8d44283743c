//! Standard families: projective spaces, Bott towers, products of 2-spheres
//! and the bundles `B_{r,s}`. All carry geometry and standard orientation.

use super::OmniQT;
use crate::error::{Error, Result};
use crate::integer::IntMatrix;
use crate::polytope::{HPolytope, Sign};

/// `ℂPⁿ` over `Δ(n)` with `Λ⋆ = (-1, …, -1)ᵀ`.
pub fn cp(n: usize) -> Result<OmniQT> {
    cp_eps(n, &vec![-1; n])
}

/// `Δ(n)` with refined submatrix the column `ε` (entries ±1).
pub fn cp_eps(n: usize, eps: &[i64]) -> Result<OmniQT> {
    if n == 0 || eps.len() != n || eps.iter().any(|e| e.abs() != 1) {
        return Err(Error::BadParameters(format!("need n >= 1 and {n} entries equal to ±1")));
    }
    let star: IntMatrix = eps.iter().map(|&e| vec![e]).collect();
    OmniQT::from_geometry(HPolytope::simplex(n), &star, Sign::Positive)
}

/// Bott tower `Q_n` over `Iⁿ`. `d[j]` lists `d(0, j), …, d(j-1, j)`, so
/// `d[0]` is empty; the refined submatrix has `-1` on the diagonal and
/// `d(i, j)` in row `j`, column `i`.
pub fn bott_tower(n: usize, d: &[Vec<i64>]) -> Result<OmniQT> {
    if n == 0 || d.len() != n || d.iter().enumerate().any(|(j, row)| row.len() != j) {
        return Err(Error::BadParameters(format!("bott tower data must have rows of lengths 0, 1, …, {}", n.saturating_sub(1))));
    }
    let star: IntMatrix = (0..n).map(|j| (0..n).map(|i| if i < j { d[j][i] } else if i == j { -1 } else { 0 }).collect()).collect();
    OmniQT::from_geometry(HPolytope::cube(n), &star, Sign::Positive)
}

/// `(S²)ⁿ` with its standard complex structure: the Bott tower with `d = 0`.
pub fn cube(n: usize) -> Result<OmniQT> {
    bott_tower(n, &(0..n).map(|j| vec![0; j]).collect::<Vec<_>>())
}

/// Bounded flag manifold: `d(j-1, j) = 1`, all other `d(i, j) = 0`.
pub fn bounded_flag(n: usize) -> Result<OmniQT> {
    let d: Vec<Vec<i64>> = (0..n).map(|j| (0..j).map(|i| i64::from(i + 1 == j)).collect()).collect();
    bott_tower(n, &d)
}

/// `(Iⁿ, I_n)`: the bounding omniorientation of `(S²)ⁿ`.
pub fn s_product(n: usize) -> Result<OmniQT> {
    if n == 0 {
        return Err(Error::BadParameters("need n >= 1".into()));
    }
    let star: IntMatrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    OmniQT::from_geometry(HPolytope::cube(n), &star, Sign::Positive)
}

/// The polytope `Iʳ × Δ(s-1)`.
pub fn r_polytope(r: usize, s: usize) -> Result<HPolytope> {
    if r == 0 || s < 2 {
        return Err(Error::BadParameters(format!("need r >= 1 and s >= 2, got r = {r}, s = {s}")));
    }
    HPolytope::cube(r).product(&HPolytope::simplex(s - 1))
}

/// The refined submatrix of `B_{r,s}`: rows `J_r | 0`, `J_r | -1`, `0 | -1`,
/// where `J_r` has `-1` on the diagonal and `1` on the subdiagonal.
pub fn b_rs_matrix(r: usize, s: usize) -> IntMatrix {
    let j_row = |i: usize| -> Vec<i64> { (0..r).map(|c| if c == i { -1 } else if c + 1 == i { 1 } else { 0 }).collect() };
    let mut rows = Vec::with_capacity(r + s - 1);
    for i in 0..r {
        rows.push(j_row(i).into_iter().chain([0]).collect());
    }
    for i in 0..r {
        rows.push(j_row(i).into_iter().chain([-1]).collect());
    }
    for _ in 2 * r..r + s - 1 {
        rows.push(std::iter::repeat_n(0, r).chain([-1]).collect());
    }
    rows
}

/// The `ℂP^{s-1}`-bundle `B_{r,s}` over `B_r`, for `1 <= r < s`.
pub fn b_rs(r: usize, s: usize) -> Result<OmniQT> {
    if r == 0 || r >= s {
        return Err(Error::BadParameters(format!("need 1 <= r < s, got r = {r}, s = {s}")));
    }
    OmniQT::from_geometry(r_polytope(r, s)?, &b_rs_matrix(r, s), Sign::Positive)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_signs_alternate() {
        for n in 1..=4 {
            let s = s_product(n).unwrap();
            let g = s.geometry().unwrap();
            for (v, &sign) in g.vertices().iter().zip(s.signs()) {
                let ones = v.point.iter().filter(|x| **x == crate::rational::int(1)).count();
                assert_eq!(sign.value(), if ones % 2 == 0 { 1 } else { -1 });
            }
            assert_eq!(s.sign_sum(), 0);
        }
    }

    #[test]
    fn toric_examples_have_positive_signs() {
        let all_positive = |m: OmniQT| m.signs().iter().all(|&s| s == Sign::Positive);
        assert!(all_positive(cp(3).unwrap()));
        assert!(all_positive(cube(3).unwrap()));
        assert!(all_positive(bounded_flag(3).unwrap()));
        assert!(all_positive(bott_tower(2, &[vec![], vec![5]]).unwrap()));
        assert!(all_positive(b_rs(1, 2).unwrap()));
        assert!(all_positive(b_rs(2, 3).unwrap()));
    }

    #[test]
    fn b_rs_shape() {
        assert_eq!(b_rs_matrix(1, 2), vec![vec![-1, 0], vec![-1, -1]]);
        assert_eq!(b_rs_matrix(1, 3), vec![vec![-1, 0], vec![-1, -1], vec![0, -1]]);
        let b = b_rs(1, 2).unwrap();
        assert_eq!((b.dim(), b.num_facets()), (2, 4));
        assert!(b_rs(2, 2).is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(cp_eps(2, &[1, 2]).is_err());
        assert!(bott_tower(2, &[vec![], vec![]]).is_err());
        assert!(s_product(0).is_err());
    }
}
