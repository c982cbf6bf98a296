//! Hom-spaces of the 0-Hecke category in canonical form, padded composition,
//! and the promotion criterion for sequences of `H_n(0)`-modules.
//!
//! A morphism `[n] -> [m]` is stored as a rank-`m` Hecke element acting on
//! the principal injection. Canonical support: each `pi_w` has `w` the
//! minimal-length representative of its coset modulo the parabolic generated
//! by `s_{n+1}..s_{m-1}`, i.e. `w` increasing on positions `n+1..m`. The
//! paper writes the stabilizer with generators up to index `m`; only
//! `n+1..m-1` exist in `H_m(0)`.

use crate::field::Field;
use crate::hecke::{HeckeElement, Perm};
use crate::linalg::Mat;
use crate::repn::{check_equivariant, FiniteModule};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism<F: Field> {
    pub source: usize,
    pub target: usize,
    hecke: HeckeElement<F>,
}

/// Minimal-length representative of `w` modulo the parabolic permuting the
/// last `m - n` points: sort the values at positions `n+1..m`.
fn min_coset_rep(n: usize, w: &Perm) -> Perm {
    let m = w.n();
    let mut line = w.line().to_vec();
    line[n..m].sort_unstable();
    Perm::from_line(line)
}

/// Rewrite a rank-`m` Hecke element on minimal coset representatives.
pub fn canonicalize<F: Field>(n: usize, m: usize, h: &HeckeElement<F>) -> Morphism<F> {
    assert!(n <= m, "rank mismatch: {n} > {m}");
    assert_eq!(h.rank, m, "element lives in the wrong algebra");
    let mut canon = HeckeElement::zero(h.field, m);
    for (w, c) in h.terms() {
        canon.add_term(min_coset_rep(n, w), c.clone());
    }
    Morphism {
        source: n,
        target: m,
        hecke: canon,
    }
}

impl<F: Field> Morphism<F> {
    /// The principal injection `iota_{n,m}`.
    pub fn injection(field: F, n: usize, m: usize) -> Self {
        assert!(n <= m);
        Morphism {
            source: n,
            target: m,
            hecke: HeckeElement::one(field, m),
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        Self::injection(field, n, n)
    }

    /// The crossing `pi_i` viewed as `[m] -> [m]`.
    pub fn crossing(field: F, m: usize, i: usize) -> Self {
        Morphism {
            source: m,
            target: m,
            hecke: HeckeElement::generator(field, m, i),
        }
    }

    /// Basis morphism determined by an injection `[n] -> [m]` (the strand
    /// starting at `i` ends at `inj[i-1]`).
    pub fn from_injection(field: F, m: usize, inj: &[usize]) -> Self {
        let n = inj.len();
        assert!(n <= m);
        let mut line: Vec<u8> = inj.iter().map(|&v| v as u8).collect();
        let used: BTreeSet<usize> = inj.iter().copied().collect();
        assert_eq!(used.len(), n, "not injective");
        for v in 1..=m {
            if !used.contains(&v) {
                line.push(v as u8);
            }
        }
        let w = Perm::from_line(line);
        Morphism {
            source: n,
            target: m,
            hecke: HeckeElement::basis(field, w),
        }
    }

    pub fn hecke(&self) -> &HeckeElement<F> {
        &self.hecke
    }

    /// For a basis morphism, the image points of the strands.
    pub fn injection_image(&self) -> Option<Vec<usize>> {
        if self.hecke.num_terms() != 1 {
            return None;
        }
        let (w, _) = self.hecke.terms().next().unwrap();
        Some((1..=self.source).map(|i| w.apply(i)).collect())
    }

    pub fn is_order_preserving_basis(&self) -> bool {
        match self.injection_image() {
            Some(img) => img.windows(2).all(|w| w[0] < w[1]),
            None => false,
        }
    }
}

impl<F: Field> fmt::Display for Morphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]: ", self.source, self.target)?;
        let mut first = true;
        for (w, c) in self.hecke.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*pi_{w}", self.hecke.field.render(c))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Padded composition `g o f`: embed `f` into the top algebra, multiply, and
/// canonicalize.
pub fn compose<F: Field>(g: &Morphism<F>, f: &Morphism<F>) -> Morphism<F> {
    assert_eq!(f.target, g.source, "boundary mismatch");
    let embedded = f.hecke.embed(g.target);
    let product = g.hecke.product(&embedded);
    canonicalize(f.source, g.target, &product)
}

/// `m!/(m-n)!`, the dimension of `hom([n],[m])`; zero when `n > m`.
pub fn hom_dimension(n: usize, m: usize) -> u64 {
    if n > m {
        return 0;
    }
    ((m - n + 1)..=m).map(|v| v as u64).product()
}

/// All basis morphisms `[n] -> [m]`, i.e. minimal coset representatives.
pub fn basis_morphisms<F: Field>(field: F, n: usize, m: usize) -> Vec<Morphism<F>> {
    let mut out = Vec::new();
    for w in Perm::all(m) {
        if (n + 1..m).all(|j| w.apply(j) < w.apply(j + 1)) {
            out.push(Morphism {
                source: n,
                target: m,
                hecke: HeckeElement::basis(field, w),
            });
        }
    }
    out
}

/// Closure of the principal injection under post-composition by crossings;
/// its size must equal [`hom_dimension`].
pub fn hom_closure_size<F: Field>(field: F, n: usize, m: usize) -> u64 {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![Morphism::injection(field, n, m)];
    seen.insert(queue[0].injection_image().unwrap());
    while let Some(mor) = queue.pop() {
        for i in 1..m {
            let next = compose(&Morphism::crossing(field, m, i), &mor);
            let img = next.injection_image().expect("crossing keeps basis");
            if seen.insert(img) {
                queue.push(next);
            }
        }
    }
    seen.len() as u64
}

/// A finite window of a sequence of `H_n(0)`-modules with transition maps.
#[derive(Clone, Debug)]
pub struct HModuleSequence<F: Field> {
    /// Rank of the first module.
    pub start: usize,
    pub modules: Vec<FiniteModule<F>>,
    /// `transitions[i]` maps `modules[i]` into `modules[i+1]`.
    pub transitions: Vec<Mat<F>>,
}

impl<F: Field> HModuleSequence<F> {
    pub fn new(start: usize, modules: Vec<FiniteModule<F>>, transitions: Vec<Mat<F>>) -> Self {
        assert_eq!(transitions.len() + 1, modules.len());
        for (i, t) in transitions.iter().enumerate() {
            assert_eq!(t.cols, modules[i].dim, "transition domain mismatch");
            assert_eq!(t.rows, modules[i + 1].dim, "transition codomain mismatch");
            assert_eq!(modules[i].rank, start + i, "rank must grow by one");
        }
        HModuleSequence {
            start,
            modules,
            transitions,
        }
    }

    pub fn end(&self) -> usize {
        self.start + self.modules.len() - 1
    }

    pub fn module(&self, n: usize) -> &FiniteModule<F> {
        &self.modules[n - self.start]
    }

    /// Composite transition `Phi_{n,m}`.
    pub fn composite(&self, n: usize, m: usize) -> Mat<F> {
        assert!(self.start <= n && n <= m && m <= self.end());
        let f = self.transitions[0].field;
        let mut acc = Mat::identity(f, self.module(n).dim);
        for d in n..m {
            acc = self.transitions[d - self.start].mul(&acc);
        }
        acc
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CriterionFailure {
    /// `phi_n` is not equivariant for generator `i`.
    Equivariance { degree: usize, generator: usize },
    /// `pi_j` does not fix the image of `Phi_{n,m}`.
    StabilizerAction { from: usize, to: usize, generator: usize },
}

impl fmt::Display for CriterionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionFailure::Equivariance { degree, generator } => {
                write!(f, "phi_{degree} not pi_{generator}-equivariant")
            }
            CriterionFailure::StabilizerAction {
                from,
                to,
                generator,
            } => write!(f, "pi_{generator} moves im(Phi_{{{from},{to}}})"),
        }
    }
}

/// The promotion criterion: every transition equivariant, and every
/// stabilizer generator `pi_j`, `n+1 <= j <= m-1`, acting as the identity on
/// the image of `Phi_{n,m}`. The second family only exists for `m >= n+2`.
pub fn verify_h_module<F: Field>(seq: &HModuleSequence<F>) -> Vec<CriterionFailure> {
    let mut report = Vec::new();
    for n in seq.start..seq.end() {
        let idx = n - seq.start;
        let bad = check_equivariant(&seq.transitions[idx], &seq.modules[idx], &seq.modules[idx + 1]);
        for generator in bad {
            report.push(CriterionFailure::Equivariance { degree: n, generator });
        }
    }
    for n in seq.start..seq.end() {
        for m in n + 2..=seq.end() {
            let phi = seq.composite(n, m);
            for j in n + 1..m {
                if seq.module(m).generator(j).mul(&phi) != phi {
                    report.push(CriterionFailure::StabilizerAction {
                        from: n,
                        to: m,
                        generator: j,
                    });
                }
            }
        }
    }
    report
}
