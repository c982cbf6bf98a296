//! Graded pieces of the Stanley-Reisner ring of the Boolean algebra:
//! multichains encoded by first-appearance words, the sorting action on
//! them, fixed-multigrading module sequences, and the transfer map to
//! monomials.

use crate::category::HModuleSequence;
use crate::field::Field;
use crate::linalg::Mat;
use crate::repn::FiniteModule;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A length-`k` multichain `A_1 <= ... <= A_k` in the Boolean algebra on
/// `[n]`, stored as the word `p` with `p_i` the first chain position
/// containing `i` (`k+1` when `i` first appears in the conventional top
/// set `A_{k+1} = [n]`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MultichainWord {
    pub k: usize,
    pub word: Vec<usize>,
}

impl MultichainWord {
    pub fn new(k: usize, word: Vec<usize>) -> Result<Self, String> {
        if let Some(bad) = word.iter().find(|&&p| p == 0 || p > k + 1) {
            return Err(format!("letter {bad} outside [k+1]=[{}]", k + 1));
        }
        Ok(MultichainWord { k, word })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// Chain sets `A_1..A_k` as sorted element lists.
    pub fn chain_sets(&self) -> Vec<Vec<usize>> {
        (1..=self.k)
            .map(|j| {
                (1..=self.n())
                    .filter(|&i| self.word[i - 1] <= j)
                    .collect()
            })
            .collect()
    }

    /// Rank multiset `(|A_1|, ..., |A_k|)`.
    pub fn rank_multiset(&self) -> Vec<usize> {
        self.chain_sets().iter().map(|a| a.len()).collect()
    }

    fn swap(&self, i: usize) -> MultichainWord {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        MultichainWord { k: self.k, word }
    }
}

/// Signed result of one generator application on a multichain word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HuangResult {
    pub terms: Vec<(MultichainWord, i64)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HuangFlavor {
    Bar,
    Pi,
}

/// The sorting action on first-appearance words: comparing `p_i` with
/// `p_{i+1}`, `pibar_i` gives `-w` / `0` / `s_i(w)` for `>` / `=` / `<`.
pub fn huang_act(i: usize, w: &MultichainWord, flavor: HuangFlavor) -> HuangResult {
    assert!(1 <= i && i < w.n(), "generator index out of range");
    let a = w.word[i - 1];
    let b = w.word[i];
    let terms = match flavor {
        HuangFlavor::Bar => {
            if a > b {
                vec![(w.clone(), -1)]
            } else if a == b {
                vec![]
            } else {
                vec![(w.swap(i), 1)]
            }
        }
        HuangFlavor::Pi => {
            if a > b {
                vec![]
            } else if a == b {
                vec![(w.clone(), 1)]
            } else {
                vec![(w.swap(i), 1), (w.clone(), 1)]
            }
        }
    };
    HuangResult { terms }
}

/// Exponent vector of the transfer map: `x_j` appears once for each of
/// `A_1..A_k` containing `j`; the conventional `A_{k+1}` is excluded.
pub fn transfer_monomial(w: &MultichainWord) -> Vec<usize> {
    w.word
        .iter()
        .map(|&p| if p <= w.k { w.k + 1 - p } else { 0 })
        .collect()
}

/// All words on `[k+1]^n` with the given size profile `g = (r_1..r_k)`.
pub fn graded_basis(g: &[usize], n: usize) -> Vec<MultichainWord> {
    let k = g.len();
    let mut out = Vec::new();
    let mut word = vec![0usize; n];
    fn rec(
        g: &[usize],
        k: usize,
        n: usize,
        pos: usize,
        word: &mut Vec<usize>,
        out: &mut Vec<MultichainWord>,
    ) {
        if pos == n {
            let w = MultichainWord {
                k,
                word: word.clone(),
            };
            if w.rank_multiset() == g {
                out.push(w);
            }
            return;
        }
        for p in 1..=k + 1 {
            word[pos] = p;
            rec(g, k, n, pos + 1, word, out);
        }
    }
    rec(g, k, n, 0, &mut word, &mut out);
    out.sort();
    out
}

/// Action matrices on an explicit multichain basis.
pub fn multichain_module<F: Field>(
    field: F,
    basis: &[MultichainWord],
    n: usize,
) -> FiniteModule<F> {
    let index: BTreeMap<&MultichainWord, usize> =
        basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = basis.len();
    let mut gens = Vec::new();
    for i in 1..n {
        let mut m = Mat::zero(field, dim, dim);
        for (col, w) in basis.iter().enumerate() {
            for (img, coeff) in huang_act(i, w, HuangFlavor::Pi).terms {
                let row = *index
                    .get(&img)
                    .expect("sorting action preserves the multigrading");
                let v = field.add(m.get(row, col), &field.from_int(coeff));
                m.set(row, col, v);
            }
        }
        gens.push(m);
    }
    FiniteModule::new(n, dim, gens)
}

/// The fixed-multigrading sequence `n -> F[B_n]_g` over `start..=max_rank`,
/// transitions appending the letter `k+1` (the new point first appears in
/// the conventional top set).
pub fn boolean_graded_sequence<F: Field>(
    field: F,
    g: &[usize],
    start: usize,
    max_rank: usize,
) -> Result<HModuleSequence<F>, String> {
    if g.windows(2).any(|w| w[0] > w[1]) {
        return Err("multigrading sizes must weakly increase".into());
    }
    if start > max_rank {
        return Err("empty rank window".into());
    }
    let mut modules = Vec::new();
    let mut transitions = Vec::new();
    for n in start..=max_rank {
        let basis = graded_basis(g, n);
        modules.push(multichain_module(field, &basis, n));
        if n < max_rank {
            let next = graded_basis(g, n + 1);
            let index: BTreeMap<&MultichainWord, usize> =
                next.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut t = Mat::zero(field, next.len(), basis.len());
            for (col, w) in basis.iter().enumerate() {
                let mut word = w.word.clone();
                word.push(g.len() + 1);
                let lifted = MultichainWord { k: g.len(), word };
                t.set(index[&lifted], col, field.one());
            }
            transitions.push(t);
        }
    }
    Ok(HModuleSequence::new(start, modules, transitions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::verify_h_module;
    use crate::field::Rationals;
    use crate::induced::generation_degrees;
    use crate::repn::check_relations;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn paper_rank_multiset_example() {
        // {2} <= {2} < {1,2,4} < [5] encoded on n = 5 with k = 4.
        let w = MultichainWord::new(4, vec![3, 1, 4, 3, 4]).unwrap();
        assert_eq!(
            w.chain_sets(),
            vec![vec![2], vec![2], vec![1, 2, 4], vec![1, 2, 3, 4, 5]]
        );
        assert_eq!(w.rank_multiset(), vec![1, 1, 3, 5]);
    }

    #[test]
    fn transfer_examples() {
        // Same displayed multichain read with k = 3 and A_4 = [5] by
        // convention: x_1 once, x_2 three times, x_4 once.
        let w = MultichainWord::new(3, vec![3, 1, 4, 3, 4]).unwrap();
        assert_eq!(transfer_monomial(&w), vec![1, 3, 0, 1, 0]);
        // Empty chain sets throughout.
        let w = MultichainWord::new(2, vec![3, 3, 3]).unwrap();
        assert_eq!(transfer_monomial(&w), vec![0, 0, 0]);
        // Product formula: exponent of x_j = #{i <= k : j in A_i}.
        for k in 0..=2usize {
            for n in 1..=4usize {
                for w in all_words(k, n) {
                    let direct = transfer_monomial(&w);
                    let mut from_sets = vec![0usize; n];
                    for a in w.chain_sets() {
                        for j in a {
                            from_sets[j - 1] += 1;
                        }
                    }
                    assert_eq!(direct, from_sets);
                }
            }
        }
        // Generator multichains have weakly decreasing exponent vectors.
        let w = MultichainWord::new(3, vec![1, 2, 2, 3]).unwrap();
        let exps = transfer_monomial(&w);
        assert!(exps.windows(2).all(|p| p[0] >= p[1]));
    }

    fn all_words(k: usize, n: usize) -> Vec<MultichainWord> {
        let mut out = Vec::new();
        let total = (k + 1).pow(n as u32);
        for code in 0..total {
            let mut word = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                word.push(c % (k + 1) + 1);
                c /= k + 1;
            }
            out.push(MultichainWord::new(k, word).unwrap());
        }
        out
    }

    #[test]
    fn huang_action_cases() {
        let w = MultichainWord::new(2, vec![2, 1, 3]).unwrap();
        assert_eq!(
            huang_act(1, &w, HuangFlavor::Bar).terms,
            vec![(w.clone(), -1)]
        );
        let w = MultichainWord::new(2, vec![1, 1, 2]).unwrap();
        assert!(huang_act(1, &w, HuangFlavor::Bar).terms.is_empty());
        let w = MultichainWord::new(2, vec![1, 2, 3]).unwrap();
        assert_eq!(
            huang_act(1, &w, HuangFlavor::Bar).terms,
            vec![(MultichainWord::new(2, vec![2, 1, 3]).unwrap(), 1)]
        );
    }

    #[test]
    fn huang_relations_exhaustive() {
        // Full word modules (all multigradings together) for n <= 5, k <= 2.
        for k in 0..=2usize {
            for n in 2..=5usize {
                let basis = all_words(k, n);
                let m = multichain_module(q(), &basis, n);
                assert!(check_relations(&m).is_empty(), "k={k} n={n}");
                // Bar relations follow from pi = bar + 1; spot-check squares.
                for w in &basis {
                    for i in 1..n {
                        let mut sq: BTreeMap<MultichainWord, i64> = BTreeMap::new();
                        for (t, c) in huang_act(i, w, HuangFlavor::Bar).terms {
                            for (t2, c2) in huang_act(i, &t, HuangFlavor::Bar).terms {
                                *sq.entry(t2).or_insert(0) += c * c2;
                            }
                        }
                        sq.retain(|_, v| *v != 0);
                        let mut want: BTreeMap<MultichainWord, i64> = BTreeMap::new();
                        for (t, c) in huang_act(i, w, HuangFlavor::Bar).terms {
                            *want.entry(t).or_insert(0) += -c;
                        }
                        want.retain(|_, v| *v != 0);
                        assert_eq!(sq, want);
                    }
                }
            }
        }
    }

    #[test]
    fn graded_dimension_examples() {
        for n in 1..=5 {
            assert_eq!(graded_basis(&[1], n).len(), n);
        }
        // Rank below max(g) carries nothing.
        assert!(graded_basis(&[2], 1).is_empty());
        assert!(graded_basis(&[1, 3], 2).is_empty());
    }

    #[test]
    fn graded_sequences_are_h_modules() {
        for g in [vec![1], vec![2], vec![1, 2], vec![1, 1], vec![2, 2]] {
            let max_g = *g.iter().max().unwrap();
            let seq = boolean_graded_sequence(q(), &g, max_g, max_g + 3).unwrap();
            assert!(verify_h_module(&seq).is_empty(), "g={g:?}");
            let gen = generation_degrees(&seq);
            assert!(
                gen.iter().all(|&(n, _)| n <= max_g),
                "g={g:?} gen={gen:?}"
            );
        }
        assert!(boolean_graded_sequence(q(), &[2, 1], 2, 4).is_err());
    }
}
