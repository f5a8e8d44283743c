//! Polynomials with rational coefficients and exact linear algebra on
//! homogeneous components of ideals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Exponents = Vec<u32>;

/// Sparse polynomial: exponent vector ↦ nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, coeff: Rational) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    /// `Σ coeffs[i] · x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut p = Poly::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; coeffs.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Product truncated to total degree at most `max_degree`.
    pub fn mul_truncated(&self, other: &Poly, max_degree: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() <= max_degree {
                    out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
                }
            }
        }
        out
    }

    /// Homogeneous of degree `d` (the zero polynomial counts as homogeneous).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }
}

/// All exponent vectors in `nvars` variables of total degree `d`, in
/// lexicographic order.
pub fn monomials(nvars: usize, d: u32) -> Vec<Exponents> {
    fn rec(i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

type SparseRow = BTreeMap<usize, Rational>;

/// The degree-`d` component of a homogeneous ideal, kept as a row-echelon
/// basis indexed by its leading (lexicographically largest) monomial.
#[derive(Clone, Debug)]
pub struct IdealComponent {
    degree: u32,
    monomials: Vec<Exponents>,
    index: BTreeMap<Exponents, usize>,
    pivots: BTreeMap<usize, SparseRow>,
}

impl IdealComponent {
    /// Spans `g · x^a` over generators `g` and monomials `x^a` of the
    /// complementary degree.
    pub fn new(nvars: usize, degree: u32, generators: &[Poly]) -> Self {
        let monomials = monomials(nvars, degree);
        let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut comp = IdealComponent { degree, monomials, index, pivots: BTreeMap::new() };
        for g in generators {
            let Some(gd) = g.terms.keys().next().map(|e| e.iter().sum::<u32>()) else {
                continue;
            };
            if gd > degree {
                continue;
            }
            for m in crate::cohomology::poly::monomials(nvars, degree - gd) {
                let product = g.mul(&Poly::monomial(m, Rational::one()));
                comp.insert(&product);
            }
        }
        comp
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn to_row(&self, p: &Poly) -> SparseRow {
        p.terms.iter().map(|(e, c)| (self.index[e], c.clone())).collect()
    }

    fn reduce_row(&self, mut row: SparseRow) -> SparseRow {
        // eliminate pivot monomials from the largest downwards; each step only
        // introduces smaller monomials
        let mut cursor = usize::MAX;
        loop {
            let next = row.range(..cursor).next_back().map(|(&k, _)| k);
            let Some(k) = next else {
                break;
            };
            if let Some(pivot_row) = self.pivots.get(&k) {
                let f = row[&k].clone();
                for (j, c) in pivot_row {
                    let slot = row.entry(*j).or_insert_with(Rational::zero);
                    *slot -= &f * c;
                    if slot.is_zero() {
                        row.remove(j);
                    }
                }
            }
            cursor = k;
        }
        row
    }

    fn insert(&mut self, p: &Poly) {
        let row = self.reduce_row(self.to_row(p));
        if let Some((&lead, c)) = row.iter().next_back() {
            let inv = c.recip();
            let row = row.into_iter().map(|(j, x)| (j, x * &inv)).collect();
            self.pivots.insert(lead, row);
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Monomials not occurring as leading monomials: a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<Exponents> {
        (0..self.monomials.len()).filter(|i| !self.pivots.contains_key(i)).map(|i| self.monomials[i].clone()).collect()
    }

    /// Normal form modulo the component, expressed in quotient-basis monomials.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let row = self.reduce_row(self.to_row(p));
        let nvars = self.monomials.first().map_or(0, Vec::len);
        let mut out = Poly::zero(nvars);
        for (j, c) in row {
            out.add_term(self.monomials[j].clone(), c);
        }
        out
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(1, 4), vec![vec![4]]);
        assert_eq!(monomials(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.pow(2);
        assert_eq!(sq.coeff(&[1, 1]), int(2));
        assert_eq!(sq.terms().len(), 3);
        let diff = x.add(&y.scale(&int(-1)));
        assert!(s.mul(&diff).add(&x.pow(2).scale(&int(-1))).add(&y.pow(2)).is_zero());
        assert_eq!(s.mul_truncated(&s, 1), Poly::zero(2));
    }

    #[test]
    fn component_of_monomial_ideal() {
        // (x², xy) in degree 2 leaves y²
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let comp = IdealComponent::new(2, 2, &[x.pow(2), x.mul(&y)]);
        assert_eq!(comp.rank(), 2);
        assert_eq!(comp.quotient_basis(), vec![vec![0, 2]]);
        assert!(comp.contains(&x.mul(&x.add(&y))));
        assert!(!comp.contains(&y.pow(2)));
    }

    #[test]
    fn normal_form_is_linear() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let comp = IdealComponent::new(2, 2, &[x.pow(2).add(&y.pow(2).scale(&int(-1)))]);
        let nf = comp.normal_form(&x.pow(2));
        assert_eq!(nf, y.pow(2));
    }
}
