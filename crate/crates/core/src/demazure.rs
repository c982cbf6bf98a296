//! Degree-`d` polynomials in `n` variables under Demazure operators
//! `pi_i(f) = del_i(x_i f)`, assembled into module sequences with
//! variable-inclusion transitions.

use crate::category::HModuleSequence;
use crate::field::Field;
use crate::linalg::Mat;
use crate::repn::FiniteModule;
use std::collections::BTreeMap;

/// Exact polynomial as a map from exponent vectors to coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<F: Field> {
    pub field: F,
    pub terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero(field: F) -> Self {
        Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: F, exponents: Vec<u32>) -> Self {
        let mut p = Poly::zero(field);
        p.add_term(exponents, field.one());
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: F::Elem) {
        if self.field.is_zero(&coeff) {
            return;
        }
        let f = self.field;
        let e = self.terms.entry(exponents).or_insert_with(|| f.zero());
        *e = f.add(e, &coeff);
        if f.is_zero(e) {
            self.terms.retain(|_, c| !f.is_zero(c));
        }
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

/// `pi_i` on a monomial `x^a`: with `a = a_i`, `b = a_{i+1}`, the telescoped
/// divided difference is `sum_{t=0..a-b} x_i^{a-t} x_{i+1}^{b+t}` when
/// `a >= b` and `-sum_{t=a+1..b-1} x_i^t x_{i+1}^{a+b-t}` when `a < b`,
/// which avoids any rational-function layer.
pub fn demazure_monomial<F: Field>(field: F, i: usize, exponents: &[u32]) -> Poly<F> {
    assert!(1 <= i && i < exponents.len(), "generator index out of range");
    let a = exponents[i - 1];
    let b = exponents[i];
    let mut out = Poly::zero(field);
    if a >= b {
        for t in 0..=a - b {
            let mut e = exponents.to_vec();
            e[i - 1] = a - t;
            e[i] = b + t;
            out.add_term(e, field.one());
        }
    } else {
        for t in a + 1..b {
            let mut e = exponents.to_vec();
            e[i - 1] = t;
            e[i] = a + b - t;
            out.add_term(e, field.from_int(-1));
        }
    }
    out
}

pub fn demazure_pi<F: Field>(i: usize, f: &Poly<F>) -> Poly<F> {
    let field = f.field;
    let mut out = Poly::zero(field);
    for (e, c) in &f.terms {
        for (e2, c2) in demazure_monomial(field, i, e).terms {
            out.add_term(e2, field.mul(&c2, c));
        }
    }
    out
}

/// Degree-`d` monomials in `n` variables, sorted.
pub fn monomial_basis(n: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(left: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[slot] = v;
            rec(left - v, slot + 1, cur, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d as u32, 0, &mut cur, &mut out);
    out.sort();
    out
}

/// The rank-`n` module `k[x_1..x_n]_d` with Demazure generators.
pub fn polynomial_module<F: Field>(field: F, n: usize, d: usize) -> FiniteModule<F> {
    let basis = monomial_basis(n, d);
    let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let dim = basis.len();
    let mut gens = Vec::new();
    for i in 1..n {
        let mut m = Mat::zero(field, dim, dim);
        for (col, e) in basis.iter().enumerate() {
            for (e2, c) in demazure_monomial(field, i, e).terms {
                let row = index[&e2];
                let v = field.add(m.get(row, col), &c);
                m.set(row, col, v);
            }
        }
        gens.push(m);
    }
    FiniteModule::new(n, dim, gens)
}

/// The sequence `n -> k[x_1..x_n]_d` over ranks `1..=max_rank`, transitions
/// including variables.
pub fn polynomial_sequence<F: Field>(field: F, d: usize, max_rank: usize) -> HModuleSequence<F> {
    assert!(max_rank >= 1);
    let mut modules = Vec::new();
    let mut transitions = Vec::new();
    for n in 1..=max_rank {
        modules.push(polynomial_module(field, n, d));
        if n < max_rank {
            let src = monomial_basis(n, d);
            let dst = monomial_basis(n + 1, d);
            let index: BTreeMap<&Vec<u32>, usize> =
                dst.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut t = Mat::zero(field, dst.len(), src.len());
            for (col, e) in src.iter().enumerate() {
                let mut lifted = e.clone();
                lifted.push(0);
                t.set(index[&lifted], col, field.one());
            }
            transitions.push(t);
        }
    }
    HModuleSequence::new(1, modules, transitions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::verify_h_module;
    use crate::comps::Composition;
    use crate::field::{Field, Rationals};
    use crate::grothendieck::decompose;
    use crate::induced::{binomial, generation_degrees};
    use crate::repn::{check_relations, composition_factors_total, GrothendieckClass};

    fn q() -> Rationals {
        Rationals
    }

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn poly_from(field: Rationals, terms: &[(&[u32], i64)]) -> Poly<Rationals> {
        let mut p = Poly::zero(field);
        for (e, coeff) in terms {
            p.add_term(e.to_vec(), field.from_int(*coeff));
        }
        p
    }

    #[test]
    fn demazure_examples() {
        // pi_1(x_1) = x_1 + x_2
        let x1 = Poly::monomial(q(), vec![1, 0]);
        assert_eq!(
            demazure_pi(1, &x1),
            poly_from(q(), &[(&[1, 0], 1), (&[0, 1], 1)])
        );
        // pi_1(x_2 x_3) = 0
        let x2x3 = Poly::monomial(q(), vec![0, 1, 1]);
        assert!(demazure_pi(1, &x2x3).terms.is_empty());
        // pi_2(x_2^2) = x_2^2 + x_2 x_3 + x_3^2
        let x2sq = Poly::monomial(q(), vec![0, 2, 0]);
        assert_eq!(
            demazure_pi(2, &x2sq),
            poly_from(q(), &[(&[0, 2, 0], 1), (&[0, 1, 1], 1), (&[0, 0, 2], 1)])
        );
    }

    #[test]
    fn demazure_satisfies_relations() {
        for n in 2..=5 {
            for d in 0..=3 {
                let m = polynomial_module(q(), n, d);
                assert!(check_relations(&m).is_empty(), "n={n} d={d}");
                assert_eq!(m.dim as u64, binomial((n + d - 1) as u64, d as u64));
            }
        }
    }

    #[test]
    fn sequences_are_h_modules() {
        for d in 1..=3 {
            let seq = polynomial_sequence(q(), d, 5);
            assert!(verify_h_module(&seq).is_empty(), "d={d}");
        }
    }

    #[test]
    fn degree_two_factors_match_paper_tables() {
        let seq = polynomial_sequence(q(), 2, 4);
        let f4 = composition_factors_total(seq.module(4));
        let mut want = GrothendieckClass::new();
        want.add(&c(&[3, 1]), 2);
        want.add(&c(&[2, 2]), 3);
        want.add(&c(&[1, 3]), 2);
        want.add(&c(&[4]), 2);
        want.add(&c(&[1, 2, 1]), 1);
        assert_eq!(f4, want);

        let f3 = composition_factors_total(seq.module(3));
        let mut want = GrothendieckClass::new();
        want.add(&c(&[2, 1]), 2);
        want.add(&c(&[1, 2]), 2);
        want.add(&c(&[3]), 2);
        assert_eq!(f3, want);
    }

    #[test]
    fn degree_one_and_two_decompositions() {
        for (d, expected) in [
            (1usize, vec![(c(&[1]), 1i64, 1i64)]),
            (2, vec![(c(&[2]), 2, 1), (c(&[1]), 1, 1)]),
        ] {
            let seq = polynomial_sequence(q(), d, 6);
            let mut classes = std::collections::BTreeMap::new();
            for n in 1..=6usize {
                classes.insert(n, composition_factors_total(seq.module(n)));
            }
            let got = decompose(&classes, d).unwrap();
            assert!(got.stabilized);
            assert_eq!(got.terms.len(), expected.len(), "d={d}");
            for (alpha, k, coeff) in expected {
                assert_eq!(got.coeff(&alpha, k), coeff, "d={d}");
            }
        }
    }

    #[test]
    fn generation_degrees_bounded_by_polynomial_degree() {
        for d in 1..=2 {
            let seq = polynomial_sequence(q(), d, 5);
            let gen = generation_degrees(&seq);
            assert!(gen.iter().all(|&(n, _)| n <= d), "d={d} gen={gen:?}");
        }
    }
}
