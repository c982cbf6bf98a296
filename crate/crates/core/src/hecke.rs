//! Exact arithmetic in `H_n(0)` on the basis `{pi_w}`.
//!
//! Left multiplication convention: `pi_i . pi_w = pi_{s_i w}` when
//! `l(s_i w) > l(w)`, which happens exactly when `w^{-1}(i) < w^{-1}(i+1)`,
//! and `pi_i . pi_w = pi_w` otherwise.

use crate::comps::Composition;
use crate::field::Field;
use crate::linalg::Mat;
use crate::repn::FiniteModule;
use std::collections::BTreeMap;
use std::fmt;

/// Permutation of `[n]` in one-line notation, 1-based values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    line: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            line: (1..=n as u8).collect(),
        }
    }

    pub fn from_line(line: Vec<u8>) -> Self {
        let n = line.len();
        let mut seen = vec![false; n + 1];
        for &v in &line {
            assert!(1 <= v as usize && v as usize <= n && !seen[v as usize]);
            seen[v as usize] = true;
        }
        Perm { line }
    }

    /// Adjacent transposition `s_i`, 1-based.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(1 <= i && i < n);
        let mut p = Perm::identity(n);
        p.line.swap(i - 1, i);
        p
    }

    pub fn n(&self) -> usize {
        self.line.len()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.line[j - 1] as usize
    }

    pub fn line(&self) -> &[u8] {
        &self.line
    }

    pub fn inverse(&self) -> Perm {
        let mut line = vec![0u8; self.line.len()];
        for (pos, &v) in self.line.iter().enumerate() {
            line[v as usize - 1] = pos as u8 + 1;
        }
        Perm { line }
    }

    /// Position of value `v` (i.e. `w^{-1}(v)`), 1-based.
    pub fn position_of(&self, v: usize) -> usize {
        self.line.iter().position(|&x| x as usize == v).unwrap() + 1
    }

    /// Composition of functions: `(self * other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            line: other.line.iter().map(|&v| self.line[v as usize - 1]).collect(),
        }
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.line.len() {
            for j in i + 1..self.line.len() {
                if self.line[i] > self.line[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.line.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Left multiplication by `s_i` (swaps the values `i` and `i+1`).
    pub fn left_mul_s(&self, i: usize) -> Perm {
        let mut line = self.line.clone();
        for v in line.iter_mut() {
            if *v as usize == i {
                *v = i as u8 + 1;
            } else if *v as usize == i + 1 {
                *v = i as u8;
            }
        }
        Perm { line }
    }

    /// A reduced word `(i_1, ..., i_k)` with `w = s_{i_1} ... s_{i_k}`,
    /// extracting the largest left descent first.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        'outer: loop {
            for i in (1..w.n()).rev() {
                if w.position_of(i) > w.position_of(i + 1) {
                    word.push(i);
                    w = w.left_mul_s(i);
                    continue 'outer;
                }
            }
            break;
        }
        debug_assert!(w.is_identity());
        word
    }

    /// Embed into `S_m`, fixing the new points.
    pub fn embed(&self, m: usize) -> Perm {
        assert!(m >= self.n());
        let mut line = self.line.clone();
        line.extend(self.n() as u8 + 1..=m as u8);
        Perm { line }
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = vec![Perm::identity(n)];
        for _ in 0..n {
            // Heap-free incremental approach: permutations in lex order.
            break;
        }
        out.clear();
        let mut line: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Perm { line: line.clone() });
            // next_permutation in lex order
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| line[i] < line[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| line[j] > line[i]).unwrap();
            line.swap(i, j);
            line[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.line.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// `pi_i . pi_w`, always a single basis element.
pub fn generator_product(i: usize, w: &Perm) -> Perm {
    assert!(1 <= i && i < w.n(), "generator index out of range");
    if w.position_of(i) < w.position_of(i + 1) {
        w.left_mul_s(i)
    } else {
        w.clone()
    }
}

/// Exact linear combination of basis elements `pi_w` at a fixed rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement<F: Field> {
    pub field: F,
    pub rank: usize,
    terms: BTreeMap<Perm, F::Elem>,
}

impl<F: Field> HeckeElement<F> {
    pub fn zero(field: F, rank: usize) -> Self {
        HeckeElement {
            field,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: F, rank: usize) -> Self {
        Self::basis(field, Perm::identity(rank))
    }

    pub fn basis(field: F, w: Perm) -> Self {
        let rank = w.n();
        let mut terms = BTreeMap::new();
        terms.insert(w, field.one());
        HeckeElement { field, rank, terms }
    }

    /// `pi_i` as an element.
    pub fn generator(field: F, rank: usize, i: usize) -> Self {
        Self::basis(field, Perm::transposition(rank, i))
    }

    /// `pibar_i = pi_i - 1`.
    pub fn generator_bar(field: F, rank: usize, i: usize) -> Self {
        let mut e = Self::generator(field, rank, i);
        e.add_term(Perm::identity(rank), field.from_int(-1));
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Perm, coeff: F::Elem) {
        let f = self.field;
        assert_eq!(w.n(), self.rank);
        let entry = self.terms.entry(w).or_insert_with(|| f.zero());
        *entry = f.add(entry, &coeff);
        // prune zero coefficients
        self.terms.retain(|_, c| !f.is_zero(c));
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        let mut out = Self::zero(f, self.rank);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), f.mul(a, c));
        }
        out
    }

    /// Left multiplication by the generator `pi_i`.
    pub fn generator_mul(&self, i: usize) -> Self {
        let mut out = Self::zero(self.field, self.rank);
        for (w, c) in &self.terms {
            out.add_term(generator_product(i, w), c.clone());
        }
        out
    }

    /// Algebra product, bilinear extension of the basis rule via reduced
    /// words of the left factor.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let f = self.field;
        let mut out = Self::zero(f, self.rank);
        for (w, c) in &self.terms {
            let mut acc = other.scale(c);
            for &i in w.reduced_word().iter().rev() {
                acc = acc.generator_mul(i);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Image under the principal injection `H_n(0) -> H_m(0)`.
    pub fn embed(&self, m: usize) -> Self {
        let mut out = Self::zero(self.field, m);
        for (w, c) in &self.terms {
            out.add_term(w.embed(m), c.clone());
        }
        out
    }
}

/// Eigenvalue of `pi_i` on the simple module `C_alpha`: 0 on descents of
/// `alpha`, 1 elsewhere.
pub fn simple_action(alpha: &Composition, i: usize) -> u8 {
    assert!(1 <= i && i + 1 <= alpha.size(), "generator index out of range");
    if alpha.has_descent(i) {
        0
    } else {
        1
    }
}

/// Value of `pi_w` on `C_alpha`: the product of `simple_action` along any
/// reduced word.
pub fn simple_action_word(alpha: &Composition, w: &Perm) -> u8 {
    w.reduced_word()
        .iter()
        .map(|&i| simple_action(alpha, i))
        .fold(1, |a, b| a * b)
}

/// Left regular representation on the `pi_w` basis, `n!`-dimensional.
pub fn regular_representation<F: Field>(field: F, n: usize) -> FiniteModule<F> {
    let basis = Perm::all(n);
    let index: BTreeMap<&Perm, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = basis.len();
    let mut gens = Vec::new();
    for i in 1..n {
        let mut mat = Mat::zero(field, dim, dim);
        for (col, w) in basis.iter().enumerate() {
            let img = generator_product(i, w);
            mat.set(index[&img], col, field.one());
        }
        gens.push(mat);
    }
    FiniteModule::new(n, dim, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comps::compositions_of;
    use crate::field::Rationals;
    use crate::repn::check_relations;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn generator_product_examples() {
        let id2 = Perm::identity(2);
        assert_eq!(generator_product(1, &id2), Perm::from_line(vec![2, 1]));
        let s1 = Perm::transposition(2, 1);
        assert_eq!(generator_product(1, &s1), s1);

        // pi_1 . pi_{s_2 s_1} = pi_{s_1 s_2 s_1} in H_3(0)
        let s2s1 = Perm::transposition(3, 2).compose(&Perm::transposition(3, 1));
        let got = generator_product(1, &s2s1);
        let w0 = Perm::from_line(vec![3, 2, 1]);
        assert_eq!(got, w0);
        assert_eq!(got.length(), 3);
    }

    #[test]
    fn reduced_words_are_reduced() {
        for w in Perm::all(5) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut rebuilt = Perm::identity(5);
            for &i in word.iter().rev() {
                rebuilt = rebuilt.left_mul_s(i);
            }
            assert_eq!(rebuilt, w);
        }
    }

    #[test]
    fn product_examples() {
        // pi_1 pi_2 = pi_{s_1 s_2} in H_3(0)
        let p1 = HeckeElement::generator(q(), 3, 1);
        let p2 = HeckeElement::generator(q(), 3, 2);
        let got = p1.product(&p2);
        let s1s2 = Perm::transposition(3, 1).compose(&Perm::transposition(3, 2));
        assert_eq!(got, HeckeElement::basis(q(), s1s2));

        // pibar_1^2 = -pibar_1
        let b1 = HeckeElement::generator_bar(q(), 2, 1);
        let minus_b1 = b1.scale(&q().from_int(-1));
        assert_eq!(b1.product(&b1), minus_b1);

        // (pi_1 pi_3)(pi_1 pi_2) = pi_3 pi_1 pi_2 in H_4(0)
        let p = |i| HeckeElement::generator(q(), 4, i);
        let lhs = p(1).product(&p(3)).product(&p(1).product(&p(2)));
        let rhs = p(3).product(&p(1)).product(&p(2));
        assert_eq!(lhs, rhs);
        assert_eq!(rhs.num_terms(), 1);
    }

    #[test]
    fn presentation_relations_exhaustive() {
        for n in 2..=5 {
            for w in Perm::all(n) {
                for i in 1..n {
                    // skein
                    let once = generator_product(i, &w);
                    assert_eq!(generator_product(i, &once), once);
                    // braid
                    if i + 1 < n {
                        let lhs = generator_product(
                            i,
                            &generator_product(i + 1, &generator_product(i, &w)),
                        );
                        let rhs = generator_product(
                            i + 1,
                            &generator_product(i, &generator_product(i + 1, &w)),
                        );
                        assert_eq!(lhs, rhs);
                    }
                    // distant commutation
                    for j in i + 2..n {
                        let lhs = generator_product(i, &generator_product(j, &w));
                        let rhs = generator_product(j, &generator_product(i, &w));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn basis_count_and_closure() {
        for n in 1..=5 {
            let all = Perm::all(n);
            let expected: usize = (1..=n).product();
            assert_eq!(all.len(), expected);
            for w in &all {
                for i in 1..n {
                    let img = generator_product(i, w);
                    assert_eq!(img.n(), n);
                }
            }
        }
    }

    #[test]
    fn associativity_random_triples() {
        // Deterministic pseudo-random walk over basis triples.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move |m: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % m as u64) as usize
        };
        for n in 2..=5 {
            let all = Perm::all(n);
            let trials = if n == 5 { 400 } else { 200 };
            for _ in 0..trials {
                let a = HeckeElement::basis(q(), all[next(all.len())].clone());
                let b = HeckeElement::basis(q(), all[next(all.len())].clone());
                let c = HeckeElement::basis(q(), all[next(all.len())].clone());
                assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
            }
        }
    }

    #[test]
    fn simple_action_examples() {
        let alpha = Composition::new(vec![4]);
        for i in 1..4 {
            assert_eq!(simple_action(&alpha, i), 1);
        }
        let ones = Composition::new(vec![1, 1, 1, 1]);
        for i in 1..4 {
            assert_eq!(simple_action(&ones, i), 0);
        }
        let alpha = Composition::new(vec![2, 1, 3]);
        assert_eq!(simple_action(&alpha, 2), 0);
        assert_eq!(simple_action(&alpha, 1), 1);
    }

    #[test]
    fn simple_action_satisfies_relations() {
        for n in 2..=8 {
            for alpha in compositions_of(n) {
                for i in 1..n {
                    let e = simple_action(&alpha, i);
                    assert_eq!(e * e, e);
                    if i + 1 < n {
                        let a = simple_action(&alpha, i);
                        let b = simple_action(&alpha, i + 1);
                        assert_eq!(a * b * a, b * a * b);
                    }
                }
            }
        }
    }

    #[test]
    fn regular_representation_valid() {
        for n in 1..=4 {
            let m = regular_representation(q(), n);
            assert_eq!(m.dim, (1..=n).product::<usize>());
            assert!(check_relations(&m).is_empty());
        }
    }
}
